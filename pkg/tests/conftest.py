"""
Test configuration and fixtures for the star register tomography tests.

This module provides common fixtures shared by every component: small
register structures, the FastAPI test client and a mocked task service.
"""

import os
from typing import Generator
from unittest.mock import Mock

import pytest

os.environ.setdefault("TESTING", "true")

from fastapi.testclient import TestClient

from app.main import create_app
from app.registers.structure import RegisterSpec, build_block_structure
from app.services.task_service import get_task_service


@pytest.fixture
def structure3():
    """Block structure of a 3-spin register (sectors j = 1, 0)."""
    return build_block_structure(RegisterSpec(n_total=3))


@pytest.fixture
def structure4():
    """Block structure of a 4-spin register (sectors j = 3/2, 1/2)."""
    return build_block_structure(RegisterSpec(n_total=4))


@pytest.fixture
def structure10():
    """Block structure of the 10-spin register used for acceptance numbers."""
    return build_block_structure(RegisterSpec(n_total=10))


@pytest.fixture
def output_dir(tmp_path):
    """Scratch output directory for artifacts."""
    path = tmp_path / "results"
    path.mkdir()
    return path


@pytest.fixture
def mock_task_service():
    """Mock TaskService for testing async endpoints."""
    mock_service = Mock()
    mock_service.submit_design.return_value = "mock-design-task-123"
    mock_service.submit_design_fanout.return_value = "mock-design-chord-456"
    mock_service.submit_campaign.return_value = "mock-campaign-task-789"
    mock_service.submit_sweep.return_value = "mock-sweep-task-abc"

    mock_service.get_task_status.return_value = {
        "task_id": "mock-task-id",
        "status": "SUCCESS",
        "result": {"f_final": 0.5},
        "progress": None,
        "error": None,
        "traceback": None,
        "successful": True,
        "failed": False,
    }
    mock_service.get_task_result.return_value = {"f_final": 0.5}
    mock_service.cancel_task.return_value = True
    mock_service.get_active_tasks.return_value = {
        "active": {"worker@host": []},
        "scheduled": None,
        "reserved": {},
    }
    mock_service.get_worker_stats.return_value = {
        "stats": {"worker@host": {"pool": {}}},
        "ping": {"worker@host": {"ok": "pong"}},
        "registered": {"worker@host": ["design.run_design"]},
    }
    return mock_service


@pytest.fixture
def app_instance():
    """Fresh application instance."""
    return create_app()


@pytest.fixture
def client(app_instance, mock_task_service) -> Generator[TestClient, None, None]:
    """Test client with the task service replaced by a mock."""
    app_instance.dependency_overrides[get_task_service] = lambda: mock_task_service
    with TestClient(app_instance) as test_client:
        yield test_client
    app_instance.dependency_overrides.clear()
