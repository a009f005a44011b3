"""seqmc test suite.

Test structure:
- unit/: Unit tests for individual modules
- integration/: CLI and reproducibility tests
- acceptance/: Desk-scale audits and experiments
- fixtures/: Golden output files
"""
