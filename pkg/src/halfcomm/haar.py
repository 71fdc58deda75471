"""Exact Haar integration over the unitary group, and Monte Carlo backup.

The integral of a balanced monomial in matrix entries over U(n) is a sum of
Weingarten values indexed by pairs of permutations matching up the plain and
conjugate factors.  The Weingarten function is obtained by exactly inverting
the Gram matrix G[s, t] = n^(number of cycles of s t^-1) over the symmetric
group.  For n >= p the Gram matrix is invertible; below that it is singular
and the Moore-Penrose pseudo-inverse (still a rational matrix, computed
exactly) gives the correct integrals.

The induced state on the crossed product integrates the even component; the
odd component has weight zero.  Since the state is faithful on polynomial
functions, a vanishing norm decides equality exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .crossed import CrossedElement, FunElement, crossed_mul, crossed_star
from .errors import DegreeCapError, DimensionMismatchError
from .groups import GroupModel, evaluate_fun_batch, sample_batch
from .scalars import ZERO, GaussianRational

PMAX_DEFAULT = 5


def _compose(s, t):
    # (s o t)(a) = s[t[a]]
    return tuple(s[t[a]] for a in range(len(s)))


def _inverse(s):
    out = [0] * len(s)
    for a, b in enumerate(s):
        out[b] = a
    return tuple(out)


def _cycle_count(s):
    seen = [False] * len(s)
    cycles = 0
    for a in range(len(s)):
        if seen[a]:
            continue
        cycles += 1
        b = a
        while not seen[b]:
            seen[b] = True
            b = s[b]
    return cycles


def _identity(p):
    return tuple(range(p))


# -- exact linear algebra over Fraction ------------------------------------


def _rat_invert(mat):
    size = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(mat)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col]), None)
        if pivot is None:
            raise ArithmeticError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def _pivot_columns(mat):
    rows = [list(r) for r in mat]
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _rat_matmul(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def _rat_pseudo_invert(mat):
    """Moore-Penrose inverse of a symmetric rational matrix, exactly.

    With B a column-space basis (pivot columns of the matrix itself), the
    pseudo-inverse is B (B^T M B)^-1 B^T.
    """
    pivots = _pivot_columns(mat)
    b = [[row[c] for c in pivots] for row in mat]
    bt = [list(col) for col in zip(*b)]
    core = _rat_invert(_rat_matmul(bt, _rat_matmul(mat, b)))
    return _rat_matmul(b, _rat_matmul(core, bt))


@dataclass
class WeingartenTable:
    p: int
    n: int
    values: dict
    pseudo: bool
    perms: tuple

    def wg(self, perm) -> Fraction:
        return self.values[perm]


_TABLE_CACHE: dict = {}  # idempotent fills; a torn value is impossible in CPython


def weingarten_table(p: int, n: int, p_max: int = PMAX_DEFAULT) -> WeingartenTable:
    """Weingarten values for degree p over U(n), all exact rationals.

    For n < p the Gram matrix is singular and the exact pseudo-inverse is used;
    the integration formula is unchanged and the table is flagged ``pseudo``.
    """
    if p < 1:
        raise ValueError("degree must be >= 1")
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if p > p_max:
        raise DegreeCapError(f"degree {p} exceeds p_max={p_max}")
    key = (p, n)
    cached = _TABLE_CACHE.get(key)
    if cached is not None:
        return cached

    perms = tuple(itertools.permutations(range(p)))
    index = {s: a for a, s in enumerate(perms)}
    gram = [
        [Fraction(n ** _cycle_count(_compose(s, _inverse(t)))) for t in perms] for s in perms
    ]
    if n >= p:
        ginv = _rat_invert(gram)
        pseudo = False
    else:
        ginv = _rat_pseudo_invert(gram)
        pseudo = True
    col = index[_identity(p)]
    values = {s: ginv[index[s]][col] for s in perms}
    table = WeingartenTable(p, n, values, pseudo, perms)
    _TABLE_CACHE[key] = table
    return table


def _monomial_integral(mono, n, p_max) -> Fraction:
    us = mono.u_pairs()
    ubars = mono.ubar_pairs()
    if len(us) != len(ubars):
        return Fraction(0)
    p = len(us)
    if p == 0:
        return Fraction(1)
    if p > p_max:
        raise DegreeCapError(f"monomial of degree {mono.degree} exceeds p_max={p_max}")
    table = weingarten_table(p, n, p_max)
    sigmas = [
        s for s in table.perms if all(us[a][0] == ubars[s[a]][0] for a in range(p))
    ]
    if not sigmas:
        return Fraction(0)
    taus = [
        t for t in table.perms if all(us[a][1] == ubars[t[a]][1] for a in range(p))
    ]
    if not taus:
        return Fraction(0)
    total = Fraction(0)
    for s in sigmas:
        sinv = _inverse(s)
        for t in taus:
            total += table.wg(_compose(t, sinv))
    return total


def haar_integral(f: FunElement, n: int | None = None, p_max: int = PMAX_DEFAULT) -> GaussianRational:
    """Exact Haar integral of a coordinate polynomial over U(n)."""
    if n is None:
        n = f.n
    elif n != f.n:
        raise DimensionMismatchError(f"element over n={f.n}, integral requested over n={n}")
    total = ZERO
    for mono, coeff in f.terms.items():
        val = _monomial_integral(mono, n, p_max)
        if val:
            total = total + coeff * val
    return total


def haar_state(x: CrossedElement, p_max: int = PMAX_DEFAULT) -> GaussianRational:
    """The state on the crossed product: integrate the even component.

    The odd component has weight zero because the group-algebra side of the
    state is the indicator of the identity.
    """
    return haar_integral(x.f0, p_max=p_max)


def norm_squared(x: CrossedElement, p_max: int = PMAX_DEFAULT) -> Fraction:
    """h(x* x), a nonnegative rational; zero exactly when x vanishes on U(n)."""
    val = haar_state(crossed_mul(crossed_star(x), x), p_max=p_max)
    if val.im != 0 or val.re < 0:
        raise ArithmeticError(f"norm came out as {val}; this is a bug")
    return val.re


def fun_norm_squared(f: FunElement, p_max: int = PMAX_DEFAULT) -> Fraction:
    """Integral of |f|^2 over U(n), exact."""
    return norm_squared(CrossedElement.even(f), p_max=p_max)


def norm_equal(x: CrossedElement, y: CrossedElement, p_max: int = PMAX_DEFAULT) -> bool:
    """Exact equality of crossed elements as functions on the unitary group.

    Decides equality in the half-commutative algebra attached to U(n), since
    the Haar state is faithful on polynomial functions.
    """
    return norm_squared(x - y, p_max=p_max) == 0


@dataclass
class MCEstimate:
    mean: complex
    stderr: float
    samples: int
    seed: int


def mc_integral(
    x,
    model: GroupModel,
    samples: int,
    seed: int,
    chunk_size: int = 4096,
) -> MCEstimate:
    """Monte Carlo estimate of the Haar integral over any shipped model.

    For a crossed element only the even component contributes (matching
    ``haar_state``).  Deterministic given the seed and chunk size; chunk sums
    are accumulated separately from the running total so the reduction order
    is fixed.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    f = x.f0 if isinstance(x, CrossedElement) else x
    if f.n != model.ambient_dim:
        raise DimensionMismatchError(
            f"element over n={f.n} cannot be integrated over {model} (ambient {model.ambient_dim})"
        )
    rng = np.random.default_rng(seed)
    total = 0j
    total_sq = 0.0
    done = 0
    while done < samples:
        count = min(chunk_size, samples - done)
        gs = sample_batch(model, rng, count)
        vals = evaluate_fun_batch(f, gs)
        total += complex(vals.sum())
        total_sq += float(np.sum(np.abs(vals) ** 2))
        done += count
    mean = total / samples
    var = max(0.0, (total_sq - abs(total) ** 2 / samples) / (samples - 1))
    stderr = math.sqrt(var / samples)
    return MCEstimate(mean=mean, stderr=stderr, samples=samples, seed=seed)
