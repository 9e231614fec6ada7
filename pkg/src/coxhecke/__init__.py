"""Exact computations around Coxeter homomorphisms, pseudocharacters and Iwahori-Hecke algebras."""
from .kernels import BACKEND
from .rootdata import RootDatum, build_root_datum
from .weyl import WeylGroup, coxeter_element, weyl_group

__version__ = "0.1.0"
__all__ = ["BACKEND", "RootDatum", "WeylGroup", "build_root_datum", "coxeter_element", "weyl_group"]
