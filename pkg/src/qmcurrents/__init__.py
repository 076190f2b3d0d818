"""Exact Laurent expansions of ``lam -> int |s|^{2 lam} omega ^ xi`` on the unit polydisc."""
from .exact import ExactValue, GaussianRational, LaurentWindow, RationalFunctionLambda
from .algebra import ConjForm, ConjPolynomial, LogPolynomial, conj, dbar, del_, wedge
from .model import PoleData, QMIntegrand, Section, ValidationError, assemble, kappa, order_factor, p_of

__version__ = "0.1.0"
