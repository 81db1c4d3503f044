"""Numerical toolkit: enclosures, machines and estimators."""
