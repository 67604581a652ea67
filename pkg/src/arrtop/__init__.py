"""Exact computations on the topology of complex line arrangements.

The package carries a line combinatorics from its incidence data through
cyclotomic realizations, braided wiring diagrams, group presentations and
truncated Alexander invariants, down to the integer linear systems that
decide whether two presented groups can be isomorphic over a given
homology map.
"""

__version__ = "0.1.0"
