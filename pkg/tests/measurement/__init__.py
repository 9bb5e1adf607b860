"""
Tests for spectral observables, the operator basis, noise and FID simulation.
"""
