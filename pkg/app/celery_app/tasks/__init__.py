"""
Celery tasks initialization
"""

from . import design
from . import tomography

__all__ = ["design", "tomography"]
