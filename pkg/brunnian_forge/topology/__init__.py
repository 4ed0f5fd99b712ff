"""Link diagrams, moves, families and certificate engines"""
