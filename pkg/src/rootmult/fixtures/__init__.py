"""Fixture problems and generators."""
