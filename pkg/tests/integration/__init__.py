"""Integration tests for the seqmc CLI and runners."""
