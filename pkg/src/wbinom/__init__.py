"""Weight-dependent noncommutative binomial coefficients and identity checks."""

from .binomial import binom_for, closed_form, elliptic_binom_closed, vwbinom, wbinom
from .coeffs import SymPoly, a, q_sym, v, w
from .ncalgebra import NCElement, binomial_power, commute_yx, multiply, normalize, parse_word
from .paths import enumerate_paths, generating_function, path_weight
from .weights import (Family, WeightSpec, big_weight, complete_sym, elementary_sym, elliptic,
                      generic, generic_double, q_weights, shift_spec, small_weight, small_weight_v)

__version__ = "0.1.0"

__all__ = [
    "NCElement", "SymPoly", "Family", "WeightSpec",
    "a", "q_sym", "v", "w",
    "big_weight", "small_weight", "small_weight_v", "shift_spec",
    "generic", "generic_double", "q_weights", "complete_sym", "elementary_sym", "elliptic",
    "binomial_power", "commute_yx", "multiply", "normalize", "parse_word",
    "wbinom", "vwbinom", "binom_for", "closed_form", "elliptic_binom_closed",
    "enumerate_paths", "generating_function", "path_weight",
]
