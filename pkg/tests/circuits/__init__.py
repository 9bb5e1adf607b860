"""
Tests for readout circuit parameters, layers and synthesis.
"""
