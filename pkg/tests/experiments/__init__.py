"""
Tests for run configuration, persistence, campaigns, sweeps, the oracle and the CLI.
"""
