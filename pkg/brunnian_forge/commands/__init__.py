"""Command implementations for brunnian_forge CLI"""
