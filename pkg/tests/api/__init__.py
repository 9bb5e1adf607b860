"""
Tests for the HTTP API routers.
"""
