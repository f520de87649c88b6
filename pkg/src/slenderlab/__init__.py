"""Executable checks for length functions, Cayley graphs, graph products,
diagram groups and BS(1,n)."""

__version__ = "0.1.0"
