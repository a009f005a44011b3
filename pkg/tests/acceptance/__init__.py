"""Acceptance tests: desk-scale simulations of the headline properties."""
