"""
Tests for the register structure, block matrices and Schur basis.
"""
