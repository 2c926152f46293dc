"""Jorgensen numbers of two-generator Kleinian groups.

Closed forms for explicit families, Markoff-map upper bounds on the
diagonal slice, pleating-ray endpoints and their normalized parabolic
pairs, and raster output for slice heat maps and limit sets.
"""

from .errors import (DegenerateError, DegenerateLineError, DomainError, InconsistentRootError,
                     JorgensenError, NoConvergenceError, NoSeedError)
from .families import (GeneratorPair, Kissing, Maskit, SST, Theta, a_to_x, kissing_jorgensen,
                       realize, sst_jorgensen, theta_jorgensen, verify_sst_relations, x_to_a)
from .markoff import (BaseTriple, Bowditch, SearchBudget, Slope, bowditch_test, psi, psi_inf,
                      primitive_word)
from .mobius import UnitMatrix, classify, jorgensen_pair, line_matrix
from .pleating import LOSParams, endpoint, endpoint_pair, los_normalize
from .render import GridSpec, RasterImage, color_map, render_limit_set, render_slice

__version__ = "0.1.0"
