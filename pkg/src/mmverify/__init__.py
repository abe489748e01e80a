"""Exact Groebner-basis tools for building Mayr-Meyer ideals and checking their primes and components."""

__version__ = "0.1.0"

from .ring import GF, QQ, Field, Polynomial, RingContext, make_mm_ring, parse_poly, render_poly  # noqa: E402
from .groebner import Certificate, GroebnerBasis, buchberger, groebner, reduce  # noqa: E402
from .idealops import Ideal  # noqa: E402
from .mayr_meyer import MMParams, PrimeLabel, build_J, build_J_long  # noqa: E402

__all__ = [
    "GF", "QQ", "Field", "Polynomial", "RingContext", "make_mm_ring", "parse_poly", "render_poly",
    "Certificate", "GroebnerBasis", "buchberger", "groebner", "reduce", "Ideal",
    "MMParams", "PrimeLabel", "build_J", "build_J_long",
]
