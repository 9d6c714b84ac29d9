"""Write-efficient graph connectivity and biconnectivity oracles.

A library plus CLI for building connectivity and biconnectivity oracles
under an asymmetric read/write cost model: every access to the simulated
large memory is metered, so the sublinear-write bounds of the underlying
algorithms are testable assertions rather than asymptotic claims.
"""
from .bcc import (BCCOracle, LocalGraph, build_bcc_oracle, build_local_graph,
                  root_biconnectivity)
from .bclabel import (BCForest, BCLabeling, DisconnectedGraphError, EulerData,
                      build_bc_labeling, critical_edges, euler_low_high)
from .bounded import BoundedView
from .clustergraph import (ClusterGraphView, ClusterTree, DisjointCentersError,
                           build_cluster_tree, center_neighbors, explore_cluster)
from .connectivity import (CCOracle, ConnectivityResult, LDDResult,
                           build_cc_oracle, connectivity_linear, ldd)
from .decomposition import (Decomposition, DecompositionInvariantError,
                            NoCenterError, build_decomposition, cluster_of,
                            cluster_tree_of, partition_vertex, priority_bfs,
                            rho, rho0, rho_with_members)
from .graph import (Graph, EdgeListParseError, VertexRangeError, disjoint_union,
                    dump_edge_list, gen_random_bounded, gen_with_hubs,
                    load_edge_list)
from .groundtruth import GroundTruth, brute_biconn, union_find_cc
from .meter import CostMeter, LocalBudgetExceeded, local_scope

__version__ = "0.1.0"


def neighbors(structure, v: int, meter: CostMeter | None = None) -> list[int]:
    """Sorted neighbor list of a node, metered against the structure."""
    return structure.neighbors(v, meter)
