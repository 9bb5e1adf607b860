"""
Tests for the readout design problem and optimizer.
"""
