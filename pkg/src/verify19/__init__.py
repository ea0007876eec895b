"""Exact verification toolkit for the arithmetic behind semistable abelian
varieties over Q with good reduction outside 19."""

__version__ = "0.1.0"
