"""
Tests for DOF counting, the transfer matrix, linear inversion and the design cost.
"""
