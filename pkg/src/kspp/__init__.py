"""Exact laboratory for the k-strong parity property of graphs."""
from ._accel import backend
from .graph import (BudgetError, ComponentPartition, Graph, GraphError, PartitionSpec, VertexSet,
                    build_extremal_gstar, build_graph, build_join_clique_union,
                    components_after_removal, cross_edges, enumerate_connected_labeled)
from .graph6 import Graph6Error, parse_graph6, write_graph6
from .parity import (Budget, ConditionVerdict, DefinitionVerdict, FactorWitness, Outcome,
                     kspp_condition, kspp_cross_validate, kspp_definition, odd_even_factor)
from .spectral import SpectralEstimate, a_spectral_radius, das_bound, q_spectral_radius
from .thresholds import (AuditOutcome, TheoremReport, audit_size_theorem, audit_spectral_theorem,
                         gstar_edge_count, q_threshold, recognize_gstar, size_premise,
                         spectral_premise)

__version__ = "0.1.0"
