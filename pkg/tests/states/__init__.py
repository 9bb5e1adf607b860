"""
Tests for the state library and reconstruction metrics.
"""
