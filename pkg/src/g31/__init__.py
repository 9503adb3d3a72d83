"""Induced-edge minimisation on the graph G(n,3,1).

Vertices are the 3-subsets of {1..n}; two are adjacent when they share exactly
one element. r(l) is the fewest edges induced by any l vertices.
"""

from .bounds import (BoundEstimate, classify_regime, crossover, eval_envelope, eval_T1, eval_T2, eval_T3,
                     RegimeThresholds)
from .combinat import binomial, c_fraction, rank_triple, unrank_triple
from .construction import ConstructionPlan, build_construction, predicted_upper_bound, select_block_width
from .graph import (EdgeCountReport, GraphParams, TripleVertex, VertexSubset, adjacent, complement_accounting,
                    count_induced_edges, graph_stats)
from .independence import (Decomposition, FamilyType, decompose_claim1, generate_family, independence_number,
                           is_independent)
from .kernels import BACKEND
from .solver import SearchConfig, SolveResult, branch_and_bound_r, brute_force_r, local_search_r

__version__ = "0.1.0"
