"""qmix: continuous quantum walks on weighted graphs - uniform-mixing search
and sound spectral/combinatorial certificates that rule mixing out."""

__version__ = "0.1.0"

from .graphs import (Bipartition, CycleFlags, DegreeStats, GraphFormatError, MatrixKind,
                     PendantPair, TwinKind, TwinSubgraphWitness, WeightClass, WeightedGraph,
                     attach_pendants, bipartition, common_neighbors, cycle_flags,
                     cyclomatic_index, degree_stats, find_twin_pairs, is_caterpillar,
                     is_connected, is_tree, matrix_of, parse_graph6, parse_weighted_edgelist,
                     pendant_pairs_with_common_neighbor, search_twin_subgraphs, subdivide,
                     verify_twin_subgraphs)
from .spectral import (EigenvalueSupport, SignedKernelVector, SpectralDecomposition,
                       SpectralError, SpectrumClassification, SpectrumKind, classify_spectrum,
                       decompose, decompose_graph, exact_kernel, jacobi_eigh,
                       signed_kernel_vectors, support, vertex_support)
from .walk import (FeasibilityReport, HadamardClass, HadamardKind, TargetStateCandidate,
                   bipartite_block_check, hadamard_classify, matrix_uniform_deviation,
                   mixing_deviation, regular_equivalence_check, states_proportional,
                   transition_matrix, verify_target_state)
from .search import (Detection, MixingReport, empirical_inf, golden_section, scan_local,
                     scan_uniform)
from .periodicity import (PeriodicityStatus, PeriodicityVerdict, RatioConditionResult,
                          RatioMode, check_real_target_period, classify_periodic_support,
                          is_periodic_vertex, ratio_condition)
from .certificates import (CertificateReport, CertificateVerdict, CertifyOptions, Tier,
                           Verdict, cert_bipartite_global, cert_bipartite_parity,
                           cert_connectivity, cert_degree_A_c4free, cert_degree_LQ,
                           cert_eigenvector_inequality, cert_kernel_vector,
                           cert_pendant_pair, cert_planar_family, cert_tree_suite,
                           cert_twin_subgraphs, cert_twins, certify_graph, certify_vertex)
from .tolerances import DEFAULT_TOLERANCES, Tolerances
