#!/usr/bin/env python3
"""
Star-register tomography CLI

Entry point for the startomo command line (see app/cli.py).
"""

import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from app.cli import app

if __name__ == "__main__":
    app()
