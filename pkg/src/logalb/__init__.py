"""Exact computations with truncated unit groups, zero-cycles with modulus,
bar complexes and rank tables of derived log Albanese sheaves."""

from .field import QQ, FieldElem, cyclotomic_field, parse_elem, primitive_root, rth_root
from .units import TruncUnit, UnitTuple, gen, gen_r, pic_gen, fil_level, graded_piece
from .cycles import Cycle, ModulusFunction, albanese, bar_differential, chow_reduce, parse_cycle
from .bar import delta, delta_on_generators, graded_delta, gr_boundary_lift, gr1_homology, verify_claim
from .picard import Divisor, PicClass, class_of_function, check_exactness
from .ranks import CurveData, RankTable, jacobian_ranks, lalb_table

__all__ = [
    "QQ",
    "FieldElem",
    "cyclotomic_field",
    "parse_elem",
    "primitive_root",
    "rth_root",
    "TruncUnit",
    "UnitTuple",
    "gen",
    "gen_r",
    "pic_gen",
    "fil_level",
    "graded_piece",
    "Cycle",
    "ModulusFunction",
    "albanese",
    "bar_differential",
    "chow_reduce",
    "parse_cycle",
    "delta",
    "delta_on_generators",
    "graded_delta",
    "gr_boundary_lift",
    "gr1_homology",
    "verify_claim",
    "Divisor",
    "PicClass",
    "class_of_function",
    "check_exactness",
    "CurveData",
    "RankTable",
    "jacobian_ranks",
    "lalb_table",
]

__version__ = "0.1.0"
