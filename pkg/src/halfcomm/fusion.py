"""Fusion semirings: tensor decomposition data and the parity-graded rules.

Abstract fusion data for a compact group consists of labels with exact
dimensions, a tensor oracle, duality, the twist sigma induced by entrywise
conjugation, and an integer grading with grade(fundamental) = 1.  Shipped
instances: the unitary group (Littlewood-Richardson on weakly decreasing
integer weights), SU(2) (spins), and tori (characters).

On top of that sit the crossed-product rules for labels carrying an extra
flag, with the twist applied when an odd factor passes a tensorand:

    V (x) Ws = (V (x) W)s,   Vs (x) W = (V (x) W^sigma)s,
    Vs (x) Ws = V (x) W^sigma

and their restriction to flag = grade mod 2, which describes the simple
comodules of the half-commutative algebra attached to the group.
"""

from __future__ import annotations

import abc
from fractions import Fraction

from .crossed import CrossedElement
from .errors import DegreeCapError
from .haar import PMAX_DEFAULT, haar_state
from .scalars import GaussianRational


class FusionData(abc.ABC):
    """Fusion datum: labels, dimensions, tensor oracle, dual, sigma, grading."""

    unit = None
    fundamental = None

    @abc.abstractmethod
    def validate_label(self, a):
        ...

    @abc.abstractmethod
    def dim(self, a) -> int:
        ...

    @abc.abstractmethod
    def tensor(self, a, b) -> dict:
        ...

    @abc.abstractmethod
    def dual(self, a):
        ...

    @abc.abstractmethod
    def sigma(self, a):
        ...

    @abc.abstractmethod
    def grade(self, a) -> int:
        ...


def _validate_weight(lam, n):
    lam = tuple(int(x) for x in lam)
    if len(lam) != n:
        raise ValueError(f"weight {lam} should have length {n}")
    if any(lam[i] < lam[i + 1] for i in range(n - 1)):
        raise ValueError(f"weight {lam} is not weakly decreasing")
    return lam


def un_dim(lam, n: int) -> int:
    """Dimension of the irreducible with highest weight lam, by the Weyl
    product formula prod_(i<j) (lam_i - lam_j + j - i) / (j - i)."""
    lam = _validate_weight(lam, n)
    out = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            out *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert out.denominator == 1 and out > 0
    return int(out)


def _supersets(lam, add, max_rows):
    """Partitions nu containing lam with |nu| = |lam| + add and at most
    max_rows rows, as length-max_rows tuples."""

    def rec(i, prev, remaining, acc):
        if i == max_rows:
            if remaining == 0:
                yield tuple(acc)
            return
        lo = lam[i]
        hi = min(prev, lam[i] + remaining)
        for v in range(hi, lo - 1, -1):
            acc.append(v)
            yield from rec(i + 1, v, remaining - (v - lo), acc)
            acc.pop()

    yield from rec(0, lam[0] + add, add, [])


def _lr_count(nu, lam, mu):
    """Number of column-strict lattice fillings of nu/lam with content mu.

    Cells are visited in reading-word order (rows top to bottom, right to left
    within each row) so the lattice prefix condition prunes immediately.
    """
    rows = len(nu)
    cells = []
    for r in range(rows):
        for c in range(nu[r] - 1, lam[r] - 1, -1):
            cells.append((r, c))
    m = len(mu)
    counts = [0] * m
    filling = {}

    def rec(idx):
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        total = 0
        for v in range(m):
            if counts[v] >= mu[v]:
                continue
            if v > 0 and counts[v] + 1 > counts[v - 1]:
                continue
            right = filling.get((r, c + 1))
            if right is not None and v + 1 > right:
                continue
            if r > 0 and c >= lam[r - 1]:
                if filling[(r - 1, c)] >= v + 1:
                    continue
            counts[v] += 1
            filling[(r, c)] = v + 1
            total += rec(idx + 1)
            counts[v] -= 1
            del filling[(r, c)]
        return total

    return rec(0)


def lr_tensor(lam, mu, n: int) -> dict:
    """Decomposition of the tensor product of two highest weights over U(n).

    Weights may have negative entries; both are shifted by multiples of
    (1,...,1) into partitions, the Littlewood-Richardson multiplicities are
    enumerated, and the total shift is subtracted again.
    """
    lam = _validate_weight(lam, n)
    mu = _validate_weight(mu, n)
    sl = max(0, -lam[-1])
    sm = max(0, -mu[-1])
    lp = tuple(x + sl for x in lam)
    mp = tuple(x + sm for x in mu)
    add = sum(mp)
    out = {}
    for nu in _supersets(lp, add, n):
        mult = _lr_count(nu, lp, mp)
        if mult:
            out[tuple(x - sl - sm for x in nu)] = mult
    return out


class UnFusion(FusionData):
    """Irreducibles of the unitary group, labeled by weakly decreasing
    integer weights of length n."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        self.n = n
        self.unit = (0,) * n
        self.fundamental = (1,) + (0,) * (n - 1)
        self._memo = {}

    def validate_label(self, a):
        _validate_weight(a, self.n)

    def dim(self, a):
        return un_dim(a, self.n)

    def tensor(self, a, b):
        key = (tuple(a), tuple(b))
        hit = self._memo.get(key)
        if hit is None:
            hit = lr_tensor(a, b, self.n)
            self._memo[key] = hit
        return dict(hit)

    def dual(self, a):
        return tuple(-x for x in reversed(a))

    def sigma(self, a):
        # entrywise conjugation induces the dual for the unitary group
        return self.dual(a)

    def grade(self, a):
        return sum(a)

    def __str__(self):
        return f"un:{self.n}"


class SU2Fusion(FusionData):
    """Spins j in (1/2) N with the Clebsch-Gordan ladder."""

    def __init__(self):
        self.unit = Fraction(0)
        self.fundamental = Fraction(1, 2)

    def validate_label(self, a):
        j = Fraction(a)
        if j < 0 or (2 * j).denominator != 1:
            raise ValueError(f"spin {a} is not a nonnegative half-integer")

    def dim(self, a):
        return int(2 * Fraction(a)) + 1

    def tensor(self, a, b):
        a, b = Fraction(a), Fraction(b)
        lo, hi = abs(a - b), a + b
        out = {}
        j = lo
        while j <= hi:
            out[j] = 1
            j += 1
        return out

    def dual(self, a):
        return Fraction(a)

    def sigma(self, a):
        return Fraction(a)

    def grade(self, a):
        return int(2 * Fraction(a)) % 2

    def __str__(self):
        return "su2"


class TorusFusion(FusionData):
    """Characters of the n-torus: integer vectors under addition."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        self.n = n
        self.unit = (0,) * n
        self.fundamental = (1,) + (0,) * (n - 1)

    def validate_label(self, a):
        if len(tuple(a)) != self.n:
            raise ValueError(f"character {a} should have length {self.n}")

    def dim(self, a):
        return 1

    def tensor(self, a, b):
        return {tuple(x + y for x, y in zip(a, b)): 1}

    def dual(self, a):
        return tuple(-x for x in a)

    def sigma(self, a):
        return self.dual(a)

    def grade(self, a):
        return sum(a)

    def __str__(self):
        return f"torus:{self.n}"


def structure_maps(a, data: FusionData):
    """(dual, sigma, grade) of a label."""
    data.validate_label(a)
    return (data.dual(a), data.sigma(a), data.grade(a))


def crossed_tensor(data: FusionData, x, y) -> dict:
    """Tensor product of flagged labels in the full crossed product.

    No parity constraint on the flags; the result flag is the XOR and the
    twist hits the right factor whenever the left flag is odd.
    """
    (va, fa), (vb, fb) = x, y
    if fa not in (0, 1) or fb not in (0, 1):
        raise ValueError("flags must be 0 or 1")
    data.validate_label(va)
    data.validate_label(vb)
    right = data.sigma(vb) if fa == 1 else vb
    flag = (fa + fb) % 2
    return {(lbl, flag): mult for lbl, mult in data.tensor(va, right).items()}


def _check_astar_label(data: FusionData, x):
    label, flag = x
    data.validate_label(label)
    if flag not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    if data.grade(label) % 2 != flag:
        raise ValueError(f"label {x} violates the parity invariant grade = flag (mod 2)")


def astar_tensor(data: FusionData, x, y) -> dict:
    """Tensor product of graded labels; inputs and outputs must satisfy
    grade = parity (mod 2)."""
    _check_astar_label(data, x)
    _check_astar_label(data, y)
    out = crossed_tensor(data, x, y)
    for lbl in out:
        _check_astar_label(data, lbl)
    return out


def astar_dual(data: FusionData, x):
    """Conjugate of a graded label; odd labels pick up the sigma twist."""
    _check_astar_label(data, x)
    label, flag = x
    if flag == 0:
        return (data.dual(label), 0)
    return (data.sigma(data.dual(label)), 1)


def moment_crosscheck(n: int, k: int, p_max: int = PMAX_DEFAULT):
    """Multiplicity of the unit in the 2k-th power of the fundamental, twice.

    Once through the graded fusion rules, once as the exact Haar state of the
    2k-th power of the character of the fundamental.  The two engines are
    independent and must agree.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if 2 * k > 2 * p_max:
        raise DegreeCapError(f"k={k} exceeds the degree cap p_max={p_max}")
    data = UnFusion(n)
    fund = (data.fundamental, 1)

    acc = {fund: 1}
    for _ in range(2 * k - 1):
        nxt: dict = {}
        for lbl, mult in acc.items():
            for lbl2, m2 in astar_tensor(data, lbl, fund).items():
                nxt[lbl2] = nxt.get(lbl2, 0) + mult * m2
        acc = nxt
    fusion_count = acc.get((data.unit, 0), 0)

    char = CrossedElement.zero(n)
    for i in range(1, n + 1):
        char = char + CrossedElement.generator(n, i, i)
    power = CrossedElement.one(n)
    for _ in range(2 * k):
        power = power * char
    haar_value: GaussianRational = haar_state(power, p_max=p_max)
    return fusion_count, haar_value
