#!/usr/bin/env python3
"""
Main entry point for brunnian_forge package.
"""

from brunnian_forge.cli import app

if __name__ == "__main__":
    app()
