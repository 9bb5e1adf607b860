#!/usr/bin/env python3
"""
Celery Worker Script

Starts a worker for the design and tomography queues, e.g.
``python worker.py worker -Q default,design,tomography``.
"""

import logging
import sys
from pathlib import Path

from dotenv import load_dotenv

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

# Import the Celery app
from app.celery_app.celery import celery_app

if __name__ == "__main__":
    load_dotenv()
    logging.basicConfig(level=logging.INFO)

    # Start the worker
    celery_app.start()
