"""Boolean function complexity laboratory.

Computes block sensitivity, certificate complexity, sensitivity and
decision-tree depth on explicit truth tables, and certified lower bounds
on conflict complexity via an exact random-walk dynamic program.
"""

__version__ = "0.1.0"
