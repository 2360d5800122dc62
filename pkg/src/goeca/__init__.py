"""Garden of Eden analysis for algebraic cellular automata."""

__version__ = "0.1.0"
