"""Flag vectors, ab/cd-indices and their extensions for graded posets and
order-ideal sheaves, with homological oracles and a verification CLI."""

from .constructions import (
    barycentric,
    builtin_corpus,
    cross_polytope,
    cube,
    gorenstein_generator,
    ngon,
    polytope,
    pyramid_with_flap,
    simplex_boundary,
    suspend,
    szero,
    unzip,
    with_top,
)
from .flags import FlagVector, ab_index, flag_f, flag_h
from .linalg import QQ, Field
from .ncpoly import AbPoly, CdPoly, a_expression, ab, b_expression, cd, extended_cd_index, to_cd
from .poset import GradedPoset, SimplicialComplex, dump_poset, order_complex, parse_poset, validate_poset
from .verify import VerifyConfig, compute, verify

__all__ = [
    "AbPoly", "CdPoly", "Field", "FlagVector", "GradedPoset", "QQ", "SimplicialComplex", "VerifyConfig",
    "a_expression", "ab", "ab_index", "b_expression", "barycentric", "builtin_corpus", "cd", "compute",
    "cross_polytope", "cube", "dump_poset", "extended_cd_index", "flag_f", "flag_h", "gorenstein_generator",
    "ngon", "order_complex", "parse_poset", "polytope", "pyramid_with_flap", "simplex_boundary", "suspend",
    "szero", "to_cd", "unzip", "validate_poset", "verify", "with_top",
]
