"""Tests for the geometry submodules."""
