"""Exact toolkit for 2,3-integrable GL(2)-structures in dimension five.

Modules
-------
binform      binary forms V_n, Clebsch-Gordan pairings, GL(2) action, discriminant
exteriorsym  exterior calculus over a symbolic coframe
structeq     structure equations, the matrix J(T), closure and absorption checks
roottype     root types of octics, exact and numeric classification, degeneration order
leafcheck    rank law and leaf tangency for J(v), det J versus the discriminant
csp3         CSp(3) action on Hessians, PDE reconstruction, symbols and cone sections
reduction    the integrated coframe for torsion x^8
cli          ``gl2struct`` command line
"""

from .binform import BinaryForm, GL2Element, discriminant, gl2_act, pair, sl2_act
from .roottype import FactoredOctic, RootType, classify_exact, classify_numeric, enumerate_types
from .structeq import jmatrix, structure_rules, verify_closure

__all__ = [
    "BinaryForm",
    "GL2Element",
    "discriminant",
    "gl2_act",
    "pair",
    "sl2_act",
    "FactoredOctic",
    "RootType",
    "classify_exact",
    "classify_numeric",
    "enumerate_types",
    "jmatrix",
    "structure_rules",
    "verify_closure",
]

__version__ = "0.1.0"
