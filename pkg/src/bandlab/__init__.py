"""Exact arithmetic for (G,c)-bands, the Steinberg cross-section, the discrete
Miura map, q-characters of Kirillov-Reshetikhin modules and cluster seeds."""
from .errors import BandlabError
from .exact import LaurentPoly, VarSym, exact_div, sym
from .matrix import RingMatrix
from .rootdata import CartanType, CoxeterData, coxeter

__all__ = [
    "BandlabError",
    "CartanType",
    "CoxeterData",
    "LaurentPoly",
    "RingMatrix",
    "VarSym",
    "coxeter",
    "exact_div",
    "sym",
]

__version__ = "0.1.0"
