"""gradedsk: exact workbench for graded crossed products, twisted Tate
cohomology, and reduced Whitehead group formulas on desk-scale instances."""

__version__ = "0.1.0"
