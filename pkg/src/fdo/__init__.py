"""Fault-tolerant diameter oracles.

Preprocess a graph once, then answer diam(G-F) for failure sets F of up to
f edges, exactly or within a proven stretch.  See README for the oracle
family, file formats, and the CLI.
"""

from .graph import (Graph, GraphError, INF, ShortestPathTree, apsp,
                    build_graph, diameter, distances, eccentricity,
                    extract_path, in_tree, is_connected, load_graph,
                    parse_graph, save_graph, sssp, strong_bridges)
from .dso import (SampledFDSO, SingleDSO, build_sampled_fdso,
                  sampled_fdso_query, single_dso_query)
from .single import (ApproxFDO, EccFDO, ExactFDO, SpannerFDO,
                     build_approx_fdo, build_ecc_fdo, build_exact_fdo,
                     build_spanner_fdo, deterministic_pivots,
                     greedy_hitting_set, random_pivots)
from .multi import MultiFDO, build_multi_fdo
from .lowdiam import LowDiamFDO, build_lowdiam_fdo
from .verify import (AuditReport, audit, brute_diam, brute_replacement,
                     enumerate_failures)
from .instances import (GadgetInstance, gen_dense_lb, gen_multi_lb,
                        gen_multi_lb_f1, gen_random, gen_sparse_lb,
                        gen_weighted_lb, random_payload)
from .serialize import (dumps_oracle, load_oracle, loads_oracle, save_oracle)

__version__ = "0.1.0"
