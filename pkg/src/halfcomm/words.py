"""Words in matrix-entry generators modulo half-commutation.

Three presentations are supported: self-adjoint generators v_ij subject to
half-commutation abc = cba (``ao-star``), the hyperoctahedral quotient where
additionally v_ij v_ik = 0 = v_ki v_ji for k != j (``ah-star``), and the
unitary flavor on generators u_ij together with their stars (``au-star-star``).

The rewrite abc -> cba exchanges the letters two positions apart and fixes the
middle one, so a congruence class is determined by the word length together
with the multisets of letters sitting in odd and in even positions.  The
canonical representative sorts each parity class ascending and interleaves
them.  ``rewrite_closure_oracle`` is the brute-force check of that fact and of
everything built on it.

Orthogonality relations are deliberately not rewrite rules here; equality
modulo them is decided through the crossed-product embedding and the exact
Haar state (see ``crossed`` and ``haar``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    ClosureSizeError,
    DegreeCapError,
    DimensionMismatchError,
    IndexRangeError,
    PresentationError,
)
from .scalars import ZERO, GaussianRational

AO_STAR = "ao-star"
AH_STAR = "ah-star"
AU_STAR_STAR = "au-star-star"

_KINDS = (AO_STAR, AH_STAR, AU_STAR_STAR)

DEFAULT_DEGREE_CAP = 8


@dataclass(frozen=True)
class Presentation:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise PresentationError(f"unknown presentation kind {self.kind!r}")
        if self.n < 1:
            raise PresentationError(f"dimension must be >= 1, got {self.n}")

    @property
    def orthogonal(self) -> bool:
        return self.kind in (AO_STAR, AH_STAR)

    def __str__(self):
        return f"{self.kind}:{self.n}"


def ao_star(n: int) -> Presentation:
    return Presentation(AO_STAR, n)


def ah_star(n: int) -> Presentation:
    return Presentation(AH_STAR, n)


def au_star_star(n: int) -> Presentation:
    return Presentation(AU_STAR_STAR, n)


class Letter(NamedTuple):
    row: int
    col: int
    starred: bool
    n: int

    def key(self):
        return (self.row, self.col, self.starred)


def letter(presentation: Presentation, row: int, col: int, starred: bool = False) -> Letter:
    n = presentation.n
    if not (1 <= row <= n and 1 <= col <= n):
        raise IndexRangeError(f"index ({row},{col}) outside 1..{n}")
    if starred and presentation.orthogonal:
        raise PresentationError("orthogonal generators are self-adjoint; no starred letters")
    return Letter(row, col, starred, n)


# A Word is a tuple of Letters; the empty tuple is the unit.


def hc_normal_form(word):
    """Canonical representative of the half-commutation class of ``word``.

    Sorts the odd-position and even-position letters separately and
    interleaves. Words shorter than three letters admit no rewrite and are
    returned unchanged (sorting a one-element class is a no-op anyway).
    """
    if len(word) < 3:
        return tuple(word)
    odd = sorted(word[0::2], key=Letter.key)
    even = sorted(word[1::2], key=Letter.key)
    out = []
    for pos in range(len(word)):
        half = odd if pos % 2 == 0 else even
        out.append(half[pos // 2])
    return tuple(out)


def _forbidden(a: Letter, b: Letter) -> bool:
    # vanishing adjacency in the hyperoctahedral quotient; symmetric in (a, b)
    return (a.row == b.row and a.col != b.col) or (a.col == b.col and a.row != b.row)


def word_has_forbidden_pair(word) -> bool:
    return any(_forbidden(a, b) for a, b in zip(word, word[1:]))


def ah_zero_test(word, presentation: Presentation) -> bool:
    """True iff some word in the half-commutation class of ``word`` contains a
    vanishing adjacent pair.

    Adjacent positions always have opposite parity, and any cross-parity pair
    of letters can be brought adjacent by resorting within its parity class,
    so it suffices to scan the two letter multisets against each other.
    """
    if presentation.kind != AH_STAR:
        raise PresentationError(f"ah_zero_test needs an {AH_STAR} presentation, got {presentation}")
    odd, even = word[0::2], word[1::2]
    return any(_forbidden(a, b) for a in odd for b in even)


def rewrite_closure_oracle(word, presentation: Presentation, max_size: int = 10000):
    """Breadth-first closure of ``word`` under single rewrites abc <-> cba.

    Test oracle only: exponential in principle, guarded by ``max_size``.
    """
    del presentation  # the rewrite rule is the same for every presentation
    word = tuple(word)
    seen = {word}
    frontier = [word]
    while frontier:
        fresh = []
        for w in frontier:
            for k in range(len(w) - 2):
                u = w[:k] + (w[k + 2], w[k + 1], w[k]) + w[k + 3 :]
                if u not in seen:
                    if len(seen) >= max_size:
                        raise ClosureSizeError(
                            f"rewrite closure exceeded max_size={max_size}"
                        )
                    seen.add(u)
                    fresh.append(u)
        frontier = fresh
    return seen


def _dead_word(word, presentation: Presentation) -> bool:
    return presentation.kind == AH_STAR and ah_zero_test(word, presentation)


class WordElement:
    """Linear combination of words with Gaussian-rational coefficients.

    Instances are always normalized: every word is in canonical form, words
    that vanish in the ah-star quotient are dropped, like terms are merged and
    zero coefficients removed.
    """

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: Presentation, terms=None):
        self.presentation = presentation
        merged = {}
        for word, coeff in (terms or {}).items():
            c = GaussianRational.coerce(coeff)
            if not c:
                continue
            word = tuple(word)
            for l in word:
                if l.n != presentation.n:
                    raise DimensionMismatchError(
                        f"letter over n={l.n} in an element over n={presentation.n}"
                    )
            if _dead_word(word, presentation):
                continue
            nf = hc_normal_form(word)
            acc = merged.get(nf)
            merged[nf] = c if acc is None else acc + c
        self.terms = {w: c for w, c in merged.items() if c}

    @classmethod
    def zero(cls, presentation):
        return cls(presentation, {})

    @classmethod
    def one(cls, presentation):
        return cls(presentation, {(): 1})

    @classmethod
    def from_word(cls, presentation, word, coeff=1):
        return cls(presentation, {tuple(word): coeff})

    @classmethod
    def generator(cls, presentation, row, col, starred=False):
        return cls.from_word(presentation, (letter(presentation, row, col, starred),))

    @property
    def is_zero(self):
        return not self.terms

    def _check_compatible(self, other):
        if self.presentation != other.presentation:
            raise PresentationError(
                f"mixed presentations {self.presentation} and {other.presentation}"
            )

    def __add__(self, other):
        if not isinstance(other, WordElement):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, ZERO) + c
        return WordElement(self.presentation, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return WordElement(self.presentation, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WordElement):
            self._check_compatible(other)
            terms = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    key = w1 + w2
                    prod = c1 * c2
                    acc = terms.get(key)
                    terms[key] = prod if acc is None else acc + prod
            return WordElement(self.presentation, terms)
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return WordElement(self.presentation, {w: c0 * c for w, c0 in self.terms.items()})

    def __rmul__(self, other):
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * c

    def __eq__(self, other):
        if not isinstance(other, WordElement):
            return NotImplemented
        return self.presentation == other.presentation and self.terms == other.terms

    def __repr__(self):
        return f"<{self.presentation}| {format_word_element(self)}>"


def normalize_element(x: WordElement) -> WordElement:
    """Rebuild ``x`` in canonical form (a fixed point of itself)."""
    return WordElement(x.presentation, dict(x.terms))


def _star_letter(l: Letter, presentation: Presentation) -> Letter:
    if presentation.orthogonal:
        return l
    return l._replace(starred=not l.starred)


def star_element(x: WordElement) -> WordElement:
    """Antilinear involution: reverse words, conjugate coefficients, star letters."""
    terms = {}
    for word, coeff in x.terms.items():
        sw = tuple(_star_letter(l, x.presentation) for l in reversed(word))
        terms[sw] = coeff.conjugate()
    return WordElement(x.presentation, terms)


def _antipode_letter(l: Letter, presentation: Presentation) -> Letter:
    starred = l.starred if presentation.orthogonal else not l.starred
    return Letter(l.col, l.row, starred, l.n)


def antipode_element(x: WordElement) -> WordElement:
    """Antipode: anti-multiplicative, transposes indices, linear on coefficients."""
    terms = {}
    for word, coeff in x.terms.items():
        sw = tuple(_antipode_letter(l, x.presentation) for l in reversed(word))
        terms[sw] = coeff
    return WordElement(x.presentation, terms)


def counit_element(x: WordElement) -> GaussianRational:
    total = ZERO
    for word, coeff in x.terms.items():
        if all(l.row == l.col for l in word):
            total = total + coeff
    return total


def _leg(word, presentation):
    # normal form of a coproduct leg, or None if it dies in the quotient
    if _dead_word(word, presentation):
        return None
    return hc_normal_form(word)


def coproduct_element(x: WordElement, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Coproduct as a dict {(left word, right word): coefficient}.

    Generator rule: the letter with indices (i, j) goes to the sum over k of
    (i, k) tensor (k, j), stars preserved; extended multiplicatively.  Both
    legs are normalized; terms whose legs die in the quotient are dropped.
    """
    n = x.presentation.n
    out = {}
    for word, coeff in x.terms.items():
        if len(word) > degree_cap:
            raise DegreeCapError(
                f"coproduct of a length-{len(word)} word exceeds degree cap {degree_cap}"
            )
        for ks in itertools.product(range(1, n + 1), repeat=len(word)):
            left = tuple(Letter(l.row, k, l.starred, l.n) for l, k in zip(word, ks))
            right = tuple(Letter(k, l.col, l.starred, l.n) for l, k in zip(word, ks))
            nl = _leg(left, x.presentation)
            if nl is None:
                continue
            nr = _leg(right, x.presentation)
            if nr is None:
                continue
            key = (nl, nr)
            acc = out.get(key)
            out[key] = coeff if acc is None else acc + coeff
    return {k: c for k, c in out.items() if c}


def format_word(word, symbol: str = "v") -> str:
    if not word:
        return "1"
    parts = []
    for l in word:
        name = f"{symbol}*" if l.starred else symbol
        parts.append(f"{name}[{l.row},{l.col}]")
    return " ".join(parts)


def _term_strings(items):
    """Render a list of (coefficient, body-or-None) pairs as a signed sum."""
    rendered = []
    for coeff, body in items:
        if coeff.im == 0:
            negative = coeff.re < 0
            mag = abs(coeff.re)
            coeff_text = None if mag == 1 else str(mag)
        elif coeff.re == 0:
            negative = coeff.im < 0
            mag = abs(coeff.im)
            coeff_text = "i" if mag == 1 else f"{mag} i"
        else:
            negative = False
            coeff_text = f"({coeff})"
        text = " ".join(p for p in (coeff_text, body) if p) or "1"
        rendered.append((negative, text))
    if not rendered:
        return "0"
    first_neg, first = rendered[0]
    out = ("-" if first_neg else "") + first
    for negative, text in rendered[1:]:
        out += (" - " if negative else " + ") + text
    return out


def format_word_element(x: WordElement) -> str:
    symbol = "v" if x.presentation.orthogonal else "u"
    items = []
    for word in sorted(x.terms, key=lambda w: (len(w), [l.key() for l in w])):
        body = format_word(word, symbol) if word else None
        items.append((x.terms[word], body))
    return _term_strings(items)
