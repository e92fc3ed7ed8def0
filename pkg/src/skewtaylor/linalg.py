"""Exact dense linear algebra over the scalar backends.

Prime fields go through ``rref_modp`` from the compiled ``_kernels``
extension when it is importable, otherwise through the pure-Python
``_kernels_py`` fallback.  Set ``SKEWTAYLOR_PURE=1`` to force the fallback.
Rational matrices are reduced with ``Fraction`` arithmetic.
"""
from __future__ import annotations

import os

import numpy as np

from .scalars import Field, PrimeField

if os.environ.get("SKEWTAYLOR_PURE"):
    from ._kernels_py import rref_modp
    BACKEND = "python"
else:
    try:
        from ._kernels import rref_modp
        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._kernels_py import rref_modp
        BACKEND = "python"


def _rref_generic(rows, ncols, F: Field):
    rows = [list(r) for r in rows]
    m = len(rows)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if not F.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        prow = rows[r] = [F.mul(v, inv) for v in rows[r]]
        nz = [j for j in range(c, ncols) if not F.is_zero(prow[j])]
        for i in range(m):
            if i == r:
                continue
            f = rows[i][c]
            if not F.is_zero(f):
                row = rows[i]
                for j in nz:
                    row[j] = F.sub(row[j], F.mul(f, prow[j]))
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(rows, ncols: int, F: Field):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    if not rows or ncols == 0:
        return [list(r) for r in rows], []
    if isinstance(F, PrimeField):
        A = np.array([[v % F.p for v in r] for r in rows], dtype=np.int64).reshape(len(rows), ncols)
        A = np.ascontiguousarray(A)
        _, pivots = rref_modp(A, F.p)
        return A.tolist(), list(pivots)
    return _rref_generic(rows, ncols, F)


def rank(rows, ncols: int, F: Field) -> int:
    if not rows or ncols == 0:
        return 0
    return len(rref(rows, ncols, F)[1])


def nullspace(rows, ncols: int, F: Field):
    """Basis of ``{v : M v = 0}`` for the matrix with the given rows."""
    if ncols == 0:
        return []
    if not rows:
        return [[F.one if j == i else F.zero for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(rows, ncols, F)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(F.coerce(R[i][free]))
        basis.append(v)
    return basis


def extend_basis(span, candidates, ncols: int, F: Field):
    """Indices of ``candidates`` that greedily extend ``span`` to a basis of
    ``span + candidates`` (vectors as rows)."""
    if not candidates:
        return []
    vecs = list(span) + list(candidates)
    cols = [[vecs[k][j] for k in range(len(vecs))] for j in range(ncols)]
    _, pivots = rref(cols, len(vecs), F)
    k0 = len(span)
    return [c - k0 for c in pivots if c >= k0]
