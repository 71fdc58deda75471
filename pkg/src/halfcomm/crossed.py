"""Crossed product of coordinate polynomials by the order-two conjugation flip.

Elements are pairs (f0, f1) standing for f0 + f1*s, where f0, f1 are
commutative *-polynomials in coordinate symbols u_ij and their conjugates
ubar_ij, and s is the flip that exchanges the two symbol families.  The
product twists the right factor of the odd part:

    (f + g s)(f' + g' s) = (f f' + g bar(g')) + (f g' + g bar(f')) s

The symbols are kept free: unitarity (and any subgroup relations) are not
quotiented here.  Equality modulo them is decided analytically, exactly via
the Weingarten state in ``haar`` for the full unitary group, or by sampling
through ``groups`` for the other models.
"""

from __future__ import annotations

import itertools

from .errors import DegreeCapError, DimensionMismatchError, IndexRangeError
from .scalars import ZERO, GaussianRational, I
from .words import (
    AU_STAR_STAR,
    DEFAULT_DEGREE_CAP,
    WordElement,
    ao_star,
    letter,
)

# A symbol is (row, col, bar); bar=True marks the conjugate coordinate.


class FunMonomial:
    """Commutative monomial in coordinate symbols, as a sorted exponent vector."""

    __slots__ = ("exps",)

    def __init__(self, exps=()):
        items = exps.items() if isinstance(exps, dict) else exps
        cleaned = []
        for sym, e in items:
            if e < 0:
                raise ValueError(f"negative exponent on {sym}")
            if e:
                cleaned.append((sym, int(e)))
        self.exps = tuple(sorted(cleaned))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def symbols(self):
        """Symbols with multiplicity, as a flat list."""
        out = []
        for sym, e in self.exps:
            out.extend([sym] * e)
        return out

    def mul(self, other: "FunMonomial") -> "FunMonomial":
        merged = dict(self.exps)
        for sym, e in other.exps:
            merged[sym] = merged.get(sym, 0) + e
        return FunMonomial(merged)

    def bar(self) -> "FunMonomial":
        return FunMonomial({(i, j, not b): e for (i, j, b), e in self.exps})

    def transpose(self) -> "FunMonomial":
        return FunMonomial({(j, i, b): e for (i, j, b), e in self.exps})

    def u_pairs(self):
        return [(i, j) for (i, j, b) in self.symbols() if not b]

    def ubar_pairs(self):
        return [(i, j) for (i, j, b) in self.symbols() if b]

    def is_diagonal(self) -> bool:
        return all(i == j for (i, j, _b), _e in self.exps)

    def __eq__(self, other):
        return isinstance(other, FunMonomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __repr__(self):
        return f"FunMonomial({self.exps!r})"


MONO_ONE = FunMonomial()


def format_monomial(mono: FunMonomial) -> str:
    if not mono.exps:
        return "1"
    parts = []
    for (i, j, b) in mono.symbols():
        name = "u*" if b else "u"
        parts.append(f"{name}[{i},{j}]")
    return " ".join(parts)


class FunElement:
    """Polynomial in the coordinate symbols over dimension n; always reduced."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        acc = {}
        for mono, coeff in (terms or {}).items():
            c = GaussianRational.coerce(coeff)
            if not c:
                continue
            for (i, j, _b), _e in mono.exps:
                if not (1 <= i <= n and 1 <= j <= n):
                    raise IndexRangeError(f"symbol index ({i},{j}) outside 1..{n}")
            prev = acc.get(mono)
            acc[mono] = c if prev is None else prev + c
        self.terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def one(cls, n):
        return cls(n, {MONO_ONE: 1})

    @classmethod
    def coordinate(cls, n, i, j, bar=False):
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexRangeError(f"coordinate index ({i},{j}) outside 1..{n}")
        return cls(n, {FunMonomial({(i, j, bar): 1}): 1})

    @property
    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatchError(f"dimensions {self.n} and {other.n} differ")

    def __add__(self, other):
        if not isinstance(other, FunElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, ZERO) + c
        return FunElement(self.n, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FunElement(self.n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FunElement):
            self._check(other)
            terms = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    key = m1.mul(m2)
                    prod = c1 * c2
                    prev = terms.get(key)
                    terms[key] = prod if prev is None else prev + prod
            return FunElement(self.n, terms)
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return FunElement(self.n, {m: c0 * c for m, c0 in self.terms.items()})

    def __rmul__(self, other):
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * c

    def __eq__(self, other):
        if not isinstance(other, FunElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def bar(self) -> "FunElement":
        return FunElement(self.n, {m.bar(): c for m, c in self.terms.items()})

    def star(self) -> "FunElement":
        return FunElement(self.n, {m.bar(): c.conjugate() for m, c in self.terms.items()})

    def counit(self) -> GaussianRational:
        total = ZERO
        for mono, coeff in self.terms.items():
            if mono.is_diagonal():
                total = total + coeff
        return total

    def __repr__(self):
        return f"<fun n={self.n}| {format_fun_element(self)}>"


def bar_automorphism(f: FunElement) -> FunElement:
    """The flip s: exchange u and ubar symbols, coefficients untouched."""
    return f.bar()


class CrossedElement:
    """Pair (f0, f1) representing f0 + f1*s; the grading is structural."""

    __slots__ = ("f0", "f1", "n")

    def __init__(self, f0: FunElement, f1: FunElement):
        if f0.n != f1.n:
            raise DimensionMismatchError(f"components over n={f0.n} and n={f1.n}")
        self.f0 = f0
        self.f1 = f1
        self.n = f0.n

    @classmethod
    def zero(cls, n):
        return cls(FunElement.zero(n), FunElement.zero(n))

    @classmethod
    def one(cls, n):
        return cls(FunElement.one(n), FunElement.zero(n))

    @classmethod
    def even(cls, f: FunElement):
        return cls(f, FunElement.zero(f.n))

    @classmethod
    def odd(cls, f: FunElement):
        return cls(FunElement.zero(f.n), f)

    @classmethod
    def flip(cls, n):
        """The group-like element s itself."""
        return cls.odd(FunElement.one(n))

    @classmethod
    def generator(cls, n, i, j):
        """The self-adjoint generator u_ij * s."""
        return cls.odd(FunElement.coordinate(n, i, j))

    @property
    def is_zero(self):
        return self.f0.is_zero and self.f1.is_zero

    @property
    def is_even(self):
        return self.f1.is_zero

    def __add__(self, other):
        if not isinstance(other, CrossedElement):
            return NotImplemented
        return CrossedElement(self.f0 + other.f0, self.f1 + other.f1)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CrossedElement(-self.f0, -self.f1)

    def __mul__(self, other):
        if isinstance(other, CrossedElement):
            return crossed_mul(self, other)
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return CrossedElement(self.f0 * c, self.f1 * c)

    def __rmul__(self, other):
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * c

    def __eq__(self, other):
        if not isinstance(other, CrossedElement):
            return NotImplemented
        return self.n == other.n and self.f0 == other.f0 and self.f1 == other.f1

    def star(self):
        return crossed_star(self)

    def __repr__(self):
        return f"<crossed n={self.n}| {format_crossed_element(self)}>"


def crossed_mul(x: CrossedElement, y: CrossedElement) -> CrossedElement:
    if x.n != y.n:
        raise DimensionMismatchError(f"dimensions {x.n} and {y.n} differ")
    return CrossedElement(
        x.f0 * y.f0 + x.f1 * y.f1.bar(),
        x.f0 * y.f1 + x.f1 * y.f0.bar(),
    )


def crossed_star(x: CrossedElement) -> CrossedElement:
    # (f + g s)^* = f^* + s g^* = f^* + bar(g)^* s
    return CrossedElement(x.f0.star(), x.f1.bar().star())


def crossed_antipode(x: CrossedElement) -> CrossedElement:
    # On the even part S transposes and bars every symbol; on the odd part the
    # extra flip cancels the bar, leaving the plain transpose.
    f0 = FunElement(x.n, {m.transpose().bar(): c for m, c in x.f0.terms.items()})
    f1 = FunElement(x.n, {m.transpose(): c for m, c in x.f1.terms.items()})
    return CrossedElement(f0, f1)


def crossed_counit(x: CrossedElement) -> GaussianRational:
    return x.f0.counit() + x.f1.counit()


def _monomial_coproduct(mono: FunMonomial, n: int):
    """Yield (left, right) monomial pairs of the coproduct expansion."""
    occ = mono.symbols()
    for ks in itertools.product(range(1, n + 1), repeat=len(occ)):
        left, right = {}, {}
        for (i, j, b), k in zip(occ, ks):
            ls = (i, k, b)
            rs = (k, j, b)
            left[ls] = left.get(ls, 0) + 1
            right[rs] = right.get(rs, 0) + 1
        yield FunMonomial(left), FunMonomial(right)


def crossed_coproduct(x: CrossedElement, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Coproduct as a dict {((mono, parity), (mono, parity)): coefficient}.

    Both tensor legs inherit the parity of the term they came from.  The
    expansion has n^degree terms per monomial, hence the loud cap.
    """
    out = {}
    for parity, f in ((0, x.f0), (1, x.f1)):
        for mono, coeff in f.terms.items():
            if mono.degree > degree_cap:
                raise DegreeCapError(
                    f"coproduct of a degree-{mono.degree} monomial exceeds cap {degree_cap}"
                )
            for lm, rm in _monomial_coproduct(mono, x.n):
                key = ((lm, parity), (rm, parity))
                prev = out.get(key)
                out[key] = coeff if prev is None else prev + coeff
    return {k: c for k, c in out.items() if c}


def coinvariant_test(x: CrossedElement, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """True iff x lies in the even part.

    Computed twice: structurally (f1 = 0) and by pushing the coproduct through
    the quotient map that keeps only the flip grading.  The two answers are
    compared and must agree.
    """
    structural = x.f1.is_zero

    # (id (x) q) applied to the coproduct: q kills polynomial content by the
    # counit and keeps the s-grading, so the result is a pair of crossed
    # elements indexed by the group coordinate (1, s).
    at_unit = CrossedElement.zero(x.n)
    at_flip = CrossedElement.zero(x.n)
    for ((lm, lp), (rm, rp)), coeff in crossed_coproduct(x, degree_cap).items():
        if not rm.is_diagonal():
            continue
        piece = FunElement(x.n, {lm: coeff})
        part = CrossedElement.even(piece) if lp == 0 else CrossedElement.odd(piece)
        if rp == 0:
            at_unit = at_unit + part
        else:
            at_flip = at_flip + part
    # equality with x (x) 1 means the unit coordinate reproduces x and the
    # flip coordinate vanishes
    coalgebraic = at_unit == x and at_flip.is_zero

    if coalgebraic != structural:
        raise AssertionError("coinvariant characterizations disagree; internal error")
    return structural


def pun_generator(n: int, i: int, j: int, k: int, l: int) -> FunElement:
    """The even-part generator w_[ij,kl] = u_ik * ubar_jl."""
    for idx in (i, j, k, l):
        if not (1 <= idx <= n):
            raise IndexRangeError(f"index {idx} outside 1..{n}")
    return FunElement.coordinate(n, i, k) * FunElement.coordinate(n, j, l, bar=True)


def _au_to_ao(x: WordElement) -> WordElement:
    """Rewrite a unitary-presentation element over the doubled orthogonal one.

    u_ij expands to x_ij + i*x_(n+i)j and its star to x_ij - i*x_(n+i)j, with
    x ranging over the 2n-dimensional self-adjoint generators.
    """
    n = x.presentation.n
    target = ao_star(2 * n)
    out = WordElement.zero(target)
    for word, coeff in x.terms.items():
        elem = coeff * WordElement.one(target)
        for l in word:
            real = WordElement.from_word(target, (letter(target, l.row, l.col),))
            imag = WordElement.from_word(target, (letter(target, l.row + n, l.col),))
            phase = -I if l.starred else I
            elem = elem * (real + phase * imag)
        out = out + elem
    return out


def embed_pi(x: WordElement) -> CrossedElement:
    """The *-homomorphism sending the generator v_ij to u_ij * s.

    Unitary-presentation elements are first rewritten over the doubled
    orthogonal presentation, so their image lives over dimension 2n.
    """
    if x.presentation.kind == AU_STAR_STAR:
        x = _au_to_ao(x)
    n = x.presentation.n
    out = CrossedElement.zero(n)
    for word, coeff in x.terms.items():
        elem = CrossedElement.one(n)
        for l in word:
            elem = crossed_mul(elem, CrossedElement.generator(n, l.row, l.col))
        out = out + coeff * elem
    return out


def format_fun_element(f: FunElement) -> str:
    from .words import _term_strings

    items = []
    for mono in sorted(f.terms, key=lambda m: (m.degree, m.exps)):
        body = format_monomial(mono) if mono.exps else None
        items.append((f.terms[mono], body))
    return _term_strings(items)


def format_crossed_element(x: CrossedElement) -> str:
    from .words import _term_strings

    items = []
    for mono in sorted(x.f0.terms, key=lambda m: (m.degree, m.exps)):
        body = format_monomial(mono) if mono.exps else None
        items.append((x.f0.terms[mono], body))
    for mono in sorted(x.f1.terms, key=lambda m: (m.degree, m.exps)):
        body = format_monomial(mono) if mono.exps else "1"
        items.append((x.f1.terms[mono], f"{body} s" if body != "1" else "s"))
    return _term_strings(items)
