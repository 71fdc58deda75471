"""Concrete compact matrix groups: Haar samplers, membership, predicates.

Shipped models: the full unitary and orthogonal groups, the special unitary
group, the diagonal torus, the group of unitary monomial matrices (one
non-zero entry per row and column), and the group of 2n x 2n unitaries with
block pattern [[A, B], [-B, A]].  The last one is sampled through its
isomorphism with U(n) x U(n): P = A + iB and Q = A - iB are independent Haar
unitaries, so drawing (P, Q) and assembling A = (P+Q)/2, B = (P-Q)/(2i)
pushes Haar x Haar forward to Haar on the block group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .crossed import CrossedElement, FunElement
from .errors import DimensionMismatchError

KIND_UN = "un"
KIND_ON = "on"
KIND_SUN = "sun"
KIND_TORUS = "torus"
KIND_KN = "kn"
KIND_U2N = "u2n"

ALL_KINDS = (KIND_UN, KIND_ON, KIND_SUN, KIND_TORUS, KIND_KN, KIND_U2N)

DEFAULT_TOL = 1e-8

PREDICATES = ("self_transpose", "non_real", "doubly_non_real")


@dataclass(frozen=True)
class GroupModel:
    kind: str
    n: int
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")

    @property
    def ambient_dim(self) -> int:
        return 2 * self.n if self.kind == KIND_U2N else self.n

    def __str__(self):
        return f"{self.kind}:{self.n}"


def parse_model(text: str, tol: float = DEFAULT_TOL) -> GroupModel:
    try:
        kind, n = text.split(":")
        return GroupModel(kind, int(n), tol)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bad group model {text!r}; expected e.g. un:2, kn:3") from exc


def _haar_unitary(rng, count, n):
    z = (rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n)))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[:, None, :]


def _haar_orthogonal(rng, count, n):
    z = rng.standard_normal((count, n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return (q * np.sign(d)[:, None, :]).astype(complex)


def sample_batch(model: GroupModel, rng, count: int) -> np.ndarray:
    """Stack of ``count`` Haar samples, shape (count, d, d) complex."""
    n = model.n
    if model.kind == KIND_UN:
        return _haar_unitary(rng, count, n)
    if model.kind == KIND_ON:
        return _haar_orthogonal(rng, count, n)
    if model.kind == KIND_SUN:
        g = _haar_unitary(rng, count, n)
        det = np.linalg.det(g)
        root = np.exp(np.log(det) / n)  # principal branch
        return g / root[:, None, None]
    if model.kind == KIND_TORUS:
        phases = np.exp(2j * np.pi * rng.random((count, n)))
        out = np.zeros((count, n, n), dtype=complex)
        idx = np.arange(n)
        out[:, idx, idx] = phases
        return out
    if model.kind == KIND_KN:
        perms = np.argsort(rng.random((count, n)), axis=1)
        phases = np.exp(2j * np.pi * rng.random((count, n)))
        out = np.zeros((count, n, n), dtype=complex)
        out[np.arange(count)[:, None], perms, np.arange(n)[None, :]] = phases
        return out
    if model.kind == KIND_U2N:
        p = _haar_unitary(rng, count, n)
        q = _haar_unitary(rng, count, n)
        a = (p + q) / 2
        b = (p - q) / 2j
        top = np.concatenate([a, b], axis=2)
        bottom = np.concatenate([-b, a], axis=2)
        return np.concatenate([top, bottom], axis=1)
    raise AssertionError(model.kind)


def sample_haar(model: GroupModel, rng_seed: int) -> np.ndarray:
    """One Haar sample, deterministic in the seed."""
    return sample_batch(model, np.random.default_rng(rng_seed), 1)[0]


def _is_unitary(g, tol):
    d = g.shape[0]
    return float(np.max(np.abs(g @ g.conj().T - np.eye(d)))) < tol


def contains(model: GroupModel, g: np.ndarray) -> bool:
    """Membership within the model tolerance: unitarity plus the shape pattern."""
    d = model.ambient_dim
    g = np.asarray(g, dtype=complex)
    if g.shape != (d, d):
        raise DimensionMismatchError(f"expected a {d}x{d} matrix, got {g.shape}")
    tol = model.tol
    if not _is_unitary(g, tol):
        return False
    if model.kind == KIND_UN:
        return True
    if model.kind == KIND_ON:
        return float(np.max(np.abs(g.imag))) < tol
    if model.kind == KIND_SUN:
        return abs(np.linalg.det(g) - 1.0) < tol
    if model.kind == KIND_TORUS:
        off = g - np.diag(np.diagonal(g))
        return float(np.max(np.abs(off))) < tol
    if model.kind == KIND_KN:
        mask = np.abs(g) > 0.5
        if not (np.all(mask.sum(axis=0) == 1) and np.all(mask.sum(axis=1) == 1)):
            return False
        if float(np.max(np.abs(np.abs(g[mask]) - 1.0))) >= tol:
            return False
        return float(np.max(np.abs(g[~mask]), initial=0.0)) < tol
    if model.kind == KIND_U2N:
        n = model.n
        a, b = g[:n, :n], g[:n, n:]
        c, dd = g[n:, :n], g[n:, n:]
        return (
            float(np.max(np.abs(a - dd))) < tol
            and float(np.max(np.abs(b + c))) < tol
        )
    raise AssertionError(model.kind)


@dataclass
class PredicateResult:
    value: bool
    witness: dict | None

    def __bool__(self):
        return self.value


def predicate(
    model: GroupModel,
    which: str,
    trials: int = 100,
    rng_seed: int = 0,
    witness_tol: float = 1e-6,
) -> PredicateResult:
    """Sampling-based tests of the transpose/reality structure of the model.

    ``self_transpose`` holds structurally for every shipped model; sampling is
    a soundness check and a counterexample would be returned as witness.  The
    two non-reality predicates are existential and one-sided: a True answer
    carries a concrete witness, a False answer only means no witness was found
    in ``trials`` samples (except for the orthogonal group, whose entries are
    real by construction).
    """
    if which not in PREDICATES:
        raise ValueError(f"unknown predicate {which!r}; choose from {PREDICATES}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if model.kind == KIND_ON and which in ("non_real", "doubly_non_real"):
        return PredicateResult(False, None)

    rng = np.random.default_rng(rng_seed)
    d = model.ambient_dim
    for t in range(trials):
        g = sample_batch(model, rng, 1)[0]
        if which == "self_transpose":
            if not contains(model, g.T):
                return PredicateResult(False, {"sample_index": t, "matrix": g})
        elif which == "non_real":
            im = np.abs(g.imag)
            if im.max() > witness_tol:
                i, j = np.unravel_index(int(np.argmax(im)), im.shape)
                return PredicateResult(
                    True,
                    {
                        "sample_index": t,
                        "indices": (int(i) + 1, int(j) + 1),
                        "value": complex(g[i, j]),
                        "matrix": g,
                    },
                )
        else:  # doubly_non_real
            flat = g.reshape(d * d)
            prods = flat[:, None] * flat.conj()[None, :]
            im = np.abs(prods.imag)
            if im.max() > witness_tol:
                a, b = np.unravel_index(int(np.argmax(im)), im.shape)
                i, j = divmod(int(a), d)
                k, l = divmod(int(b), d)
                return PredicateResult(
                    True,
                    {
                        "sample_index": t,
                        "indices": (i + 1, j + 1, k + 1, l + 1),
                        "value": complex(prods[a, b]),
                        "matrix": g,
                    },
                )
    return PredicateResult(which == "self_transpose", None)


def evaluate_fun(f: FunElement, g: np.ndarray) -> complex:
    """Value of the polynomial at the matrix point g."""
    g = np.asarray(g, dtype=complex)
    if g.shape != (f.n, f.n):
        raise DimensionMismatchError(f"matrix {g.shape} does not match symbols over n={f.n}")
    total = 0j
    for mono, coeff in f.terms.items():
        val = coeff.to_complex()
        for (i, j, bar), e in mono.exps:
            entry = g[i - 1, j - 1]
            if bar:
                entry = entry.conjugate()
            val *= entry**e
        total += val
    return total


def evaluate_fun_batch(f: FunElement, gs: np.ndarray) -> np.ndarray:
    """Vectorized evaluation over a stack of matrices, shape (count, n, n)."""
    gs = np.asarray(gs, dtype=complex)
    if gs.shape[1:] != (f.n, f.n):
        raise DimensionMismatchError(f"batch {gs.shape} does not match symbols over n={f.n}")
    total = np.zeros(gs.shape[0], dtype=complex)
    for mono, coeff in f.terms.items():
        vals = np.full(gs.shape[0], coeff.to_complex())
        for (i, j, bar), e in mono.exps:
            entry = gs[:, i - 1, j - 1]
            if bar:
                entry = entry.conj()
            vals = vals * entry**e
        total += vals
    return total


def matrix_model_eval(x: CrossedElement, g: np.ndarray) -> np.ndarray:
    """Evaluate through the faithful two-dimensional matrix model.

    The even part goes to diag(f(g), f(conj g)) and the odd part to the
    off-diagonal pair, making the map a pointwise *-homomorphism.
    """
    g = np.asarray(g, dtype=complex)
    if g.shape != (x.n, x.n):
        raise DimensionMismatchError(f"matrix {g.shape} does not match element over n={x.n}")
    gc = g.conj()
    return np.array(
        [
            [evaluate_fun(x.f0, g), evaluate_fun(x.f1, g)],
            [evaluate_fun(x.f1, gc), evaluate_fun(x.f0, gc)],
        ],
        dtype=complex,
    )
