"""Finite symplectic abelian groups, transvections and Pauli gradings of sl(n, C)."""
from .errors import SympGradeError
from .sympcore import GroupElement, HyperbolicPair, Shape, make_shape, pair, parse_shape, shapes_of
from .isom import Isometry, Transvection, TransvectionWord
from .factor import factor_isometry, sl2_factor
from .pauli import MonomialMatrix, k_lift
from .grading import grading_table, star
from .realize import induced_k_map, realize_pure_q_transvection

__version__ = "0.1.0"

__all__ = [
    "GroupElement", "HyperbolicPair", "Isometry", "MonomialMatrix", "Shape", "SympGradeError",
    "Transvection", "TransvectionWord", "factor_isometry", "grading_table", "induced_k_map",
    "k_lift", "make_shape", "pair", "parse_shape", "realize_pure_q_transvection", "shapes_of",
    "sl2_factor", "star",
]
