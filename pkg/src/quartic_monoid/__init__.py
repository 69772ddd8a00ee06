"""Exact toolkit for quartic monoid surfaces carrying 31 lines."""

__version__ = "1.0.0"

from .classify import (CoincidenceCondition, EPSILON_GENERATORS, GroupReport,
                       STABILIZER_GENERATORS, StabilizerScan, build_group,
                       equivalent, group_identify, j_invariant, orbit,
                       stabilizer, surfaces_coincide)
from .configuration import (COINCIDENT_VALUES, DEGENERATE_VALUES,
                            EXTRA_COLLINEAR_VALUES, TRIPLES, Configuration,
                            DegenerateParameterError, admissible_triplets,
                            build_points, check_parameter, cubic_through_points,
                            quartic_minor_analysis, quartic_system,
                            triple_through_pair, verify_collinearities)
from .monoid import (DegenerateSurfaceError, MonoidSurface, SurfaceLine,
                     build_surface, f3_poly, f4_poly, qprime_poly,
                     smoothness_certificate)
from .mpoly import MultiPoly, NonDivisibleError, parse_poly
from .projective import (GeneralPositionError, GeometryError, ProjLine,
                         ProjPlane, ProjPoint, Projectivity, collinear,
                         line_intersect, line_restrict,
                         projectivity_from_five_points)
from .scalars import (EPS, QuadExt, RatFun, UPoly, as_fraction, parse_scalar,
                      poly_gcd, scalar_str, squarefree_part)
from .sextuple import (BASE_SEXTUPLE, AuxFrame, ConvergenceReport, Sextuple,
                       SextupleError, admissible_triplet,
                       aux_collinearity_check, is_convergent,
                       sextuple_projectivity, standard_sextuple)
