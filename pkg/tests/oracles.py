"""Independent reference computations used only by the tests."""

from __future__ import annotations

import sympy

from tubular.representation import indec_projective


def cartan(A) -> sympy.Matrix:
    """Columns are the dimension vectors of the indecomposable projectives."""
    vs = A.quiver.vertices
    cols = [[indec_projective(A, v).dim(u) for u in vs] for v in vs]
    return sympy.Matrix(cols).T


def coxeter(A) -> sympy.Matrix:
    """Φ = −Cᵀ C⁻¹: dim τM = Φ dim M for non-projective indecomposables over a hereditary algebra."""
    C = cartan(A)
    return -C.T * C.inv()


def coxeter_translate(A, dimvec) -> list[int]:
    v = coxeter(A) * sympy.Matrix(list(dimvec))
    return [int(x) for x in v]
