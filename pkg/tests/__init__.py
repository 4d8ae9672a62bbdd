"""
Test suite for tilinglab.
Contains library unit tests, CLI and JobSpec tests, and deployment readiness checks.
"""
