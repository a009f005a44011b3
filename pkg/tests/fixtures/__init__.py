"""Test fixtures and sample files."""
