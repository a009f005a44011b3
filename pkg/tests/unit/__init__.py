"""Unit tests for seqmc modules."""
