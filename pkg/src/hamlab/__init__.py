"""Extremal families, spectral radii, and exact Hamiltonicity deciders.

The package answers three kinds of question at desk scale: what the
extremal graphs for k-(edge-)Hamiltonicity under a minimum-degree floor
look like, where their adjacency and signless Laplacian radii sit relative
to the decision thresholds, and whether a concrete graph is
k-(edge-)Hamiltonian. The verifier module turns each supporting statement
into a replayable check over exhaustive or seeded corpora.
"""

from ._kernels import backend, backends
from .closure import (ClosureDiagnostic, ClosureEquivalence, classify_closure,
                      closure, closure_equiv_check)
from .errors import (CapacityError, DomainError, HamlabError, NumericalError,
                     ParameterError, PreconditionError)
from .families import (FamilyInstance, FamilyParams, build_family, build_h,
                       build_l, deletion_budget, edge_count_h, edge_count_l,
                       embeds_into_family, in_deletion_family, recognize,
                       sample_deletions, sample_member, test_vector)
from .graphs import (Graph, clique_number, complete_graph, dense_from_graph6,
                     dense_to_graph6, disjoint_union, from_edges, from_graph6,
                     graph_stats, independent_graph, induced_delete,
                     is_isomorphic, iter_graph6_lines, join, subgraph_on,
                     to_graph6)
from .hamiltonicity import (LinearForest, enumerate_linear_forests,
                            hamilton_cycle, hamilton_cycle_through,
                            has_hamilton_cycle, has_hamilton_cycle_through,
                            has_hamilton_path, is_k_edge_hamiltonian,
                            is_k_hamiltonian)
from .spectral import (PerronPair, adjacency_matrix, adjacency_radius,
                       feng_yu_bound, hong_bound, hong_zhang_rotate, kelmans,
                       q_matrix, q_radius, rayleigh_q)
from .verifier import (TAGS, VerificationReport, Violation, cell_error,
                       edge_lower_bound_adj, edge_lower_bound_q,
                       enumerate_graphs, lemma42_claims_check, perturb_family,
                       sample_min_degree, verify)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
