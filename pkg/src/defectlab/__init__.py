"""Exact and numerical checks for truncated defect relations of curves and hypersurfaces."""
from .errors import DefectLabError, InvalidInput
from .exact_algebra import QI, Subspace, parse_rational, format_rational
from .polyring import HomPoly, MPoly, projective_locus
from .position import HypersurfaceFamily, check_subgeneral, replace_hypersurfaces
from .filtration import build_filtration, verify_cz
from .bounds import theorem_parameters, verify_lemma_new
from .wronskian import SymbolicTuple, admissible_search, wronskian_eval
from .nevanlinna import MeromorphicCurve, RGrid, fmt_report, profile
from .gaussmap import PolyImmersion, gauss_map

__version__ = "0.1.0"
