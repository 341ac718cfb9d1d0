"""Restricted sumsets h^A over Z_n and exhaustive checks of results about them."""

from .exp_sums import (
    Spectrum,
    alpha0,
    cubic_condition,
    cutoff_N,
    lemma1_max,
    lemma1_vertex_bruteforce,
    r1_lower_bound,
    spectrum,
    spectrum_max_offdc,
)
from .rep_counts import (
    RepProfile,
    cyclic_convolve,
    distinct_subset_counts,
    min_R1,
    pushforward,
    rep_profile,
)
from .sampling import SplitMix64
from .sumset import (
    restricted_sumset,
    restricted_sumset_naive,
    sumset_layers,
    unrestricted_sumset,
)
from .zn_core import (
    CountVector,
    ResidueSet,
    Witness,
    dilate,
    enumerate_subsets,
    parity_split,
    translate,
)

__version__ = "0.1.0"
