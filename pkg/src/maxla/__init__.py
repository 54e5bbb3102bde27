"""Maximum linear arrangement of free trees.

Exact and constructive solvers, a brute-force oracle for small inputs,
enumeration and uniform sampling of unlabeled trees, and the experiments
that classify trees by the kind of arrangement that maximises them.
"""
from .arrangement import *  # noqa: F401,F403
from .bnb import BnBOptions, BnBState, LinearSet, bnb_solve
from .graph import *  # noqa: F401,F403
from .graph import centroids, cycle_graph, path_tree, star_tree, bistar_tree, spider_tree, \
    kquasistar_tree, two_linear_tree, tree_from_parents
from .oracle import (
    MaximizabilityClass, arrangement_table, brute_maxla, brute_restricted,
    classify_maximizability, permutation_table,
)
from .result import Infeasible, SolveResult
from .solvers import *  # noqa: F401,F403
from .treegen import *  # noqa: F401,F403

__version__ = "0.1.0"
