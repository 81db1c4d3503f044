"""Serialisation of results."""

from .formats import OutputFormat, render, atomic_write, write_rows, write_trajectories

__all__ = ["OutputFormat", "render", "atomic_write", "write_rows", "write_trajectories"]
