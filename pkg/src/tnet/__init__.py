"""Construction, verification and measurement of eps-t-nets for finite hypergraphs."""

from ._accel import backend, set_backend
from .applications import (PairColoring, TuranResult, check_turan_identity,
                           min_net_complete, rainbow_pair_coloring, turan_exact,
                           verify_rainbow)
from .dims import (DimensionReport, dual_shatter_fit, is_t_shattered,
                   t_vc_dimension, vc_dimension)
from .entropy import entropy, entropy_inverse, gamma
from .errors import *  # noqa: F401,F403
from .geometry import (GeometricInstance, PointSet, RangeFamily, canonical_ranges,
                       compile, frames_eps2net, grid, rectangles_eps2net, staircase)
from .hypergraph import (Hypergraph, dual, induced, is_shattered, shatter_function,
                         trace)
from .nets import (NetReport, TSubsetFamily, det_eps_net, direct_eps_t_net,
                   lc_eps_t_net, min_net_exact, random_net, trivial_eps_t_net,
                   vc1_eps_t_net, verify_net)
from .tuples import (SpanningCycle, TupleHypergraph, build_Ht, build_Ht_lc,
                     build_spanning_cycle)

__version__ = "0.1.0"
