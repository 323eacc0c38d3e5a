"""Exact computer algebra for the pinhole-camera atlas ideals."""

from .atlas_model import (AtlasShape, CameraArrangement, Correspondence,
                          ProjectivePoint, ScalarCamera, universe_for)
from .polyring import (GRevLex, Lex, Monomial, Polynomial, ProductBlock,
                       ReductionLimits, TermOrder, Universe, divide,
                       leading_term, s_polynomial, verify_groebner)

__all__ = [
    "AtlasShape", "CameraArrangement", "Correspondence", "ProjectivePoint",
    "ScalarCamera", "universe_for", "GRevLex", "Lex", "Monomial",
    "Polynomial", "ProductBlock", "ReductionLimits", "TermOrder", "Universe",
    "divide", "leading_term", "s_polynomial", "verify_groebner",
]
