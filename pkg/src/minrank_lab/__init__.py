"""Exact-arithmetic toolkit for minrank bounds of Kneser-type graphs.

Layers, bottom up: exact linear algebra over F_p and Q (ff_linalg), the
graph families (graphs), binomial-basis polynomials and inclusion matrices
(inclusion), explicit bi-representations (polyrep), rational vector
chromatic certificates (certificates), brute-force ground truth (oracle),
and the reproduction runners (experiments).
"""

from .errors import IntegrityError, ParameterError
from .ff_linalg import (FpMatrix, IntMatrix, PrimeModulus, RationalMatrix,
                        as_modulus, dump_matrix_text, is_prime, matmul_fp,
                        matmul_int, mod_reduce, parse_matrix_text, rank_fp,
                        rank_rational)
from .graphs import (DiGraph, Graph, SubsetVertex, complement,
                     directed_ternary, g1, g2, graph_from_json, graph_to_json,
                     induced_subgraph, is_acyclic, is_independent_set, kneser,
                     kneser_mod)
from .inclusion import (BinomialPoly, InclusionMatrix, binom_int,
                        binomial_basis_of_roots, binomial_basis_shifted,
                        inclusion_matrix, lucas_divisibility, m_matrix,
                        rank_bound_combination, rep_matrix_kneser,
                        rep_matrix_kneser_mod, triple_product_identity)
from .polyrep import (BiRepresentation, birep_directed_ternary,
                      birep_g2_complement, birep_gp, birep_kneser,
                      matrix_represents, minrank_upper_from_birep,
                      verify_birep)
from .certificates import (MODE_EQUALITY, MODE_INEQUALITY,
                           KneserVectorCertificate,
                           achievable_intersection_classes,
                           adjacent_intersection_classes, class_inner_product,
                           class_norm_squared, make_certificate,
                           theta_upper_bound, verify_certificate,
                           worst_normalized_inner_product)
from .oracle import (DEFAULT_BUDGET, Bounds, SandwichReport, SearchBudget,
                     check_sandwich, clique_cover_number, independence_number,
                     max_acyclic_induced, minrank_bruteforce)
from .entropy import (binary_entropy_interval, interval_one_minus_ratio,
                      log2_interval)
from .experiments import (SCHEMA, SeparationReport, exponent_context,
                          report_to_json, run_sidequests, run_theorem1,
                          run_theorem2, run_theorem3)

__version__ = "0.1.0"
