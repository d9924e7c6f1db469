"""Symbolic workbench for Kähler–Poisson algebras."""
