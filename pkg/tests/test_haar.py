import itertools
import math
import random
from fractions import Fraction

import pytest

from halfcomm.crossed import (
    CrossedElement,
    FunElement,
    FunMonomial,
    crossed_coproduct,
    crossed_mul,
    crossed_star,
    embed_pi,
)
from halfcomm.errors import DegreeCapError, DimensionMismatchError
from halfcomm.groups import parse_model
from halfcomm.haar import (
    haar_integral,
    haar_state,
    mc_integral,
    norm_equal,
    norm_squared,
    weingarten_table,
    _compose,
    _cycle_count,
    _inverse,
)
from halfcomm.scalars import GaussianRational
from halfcomm.words import WordElement, ao_star, hc_normal_form, letter
from tests_helpers import random_crossed


def u(n, i, j):
    return FunElement.coordinate(n, i, j)


def ub(n, i, j):
    return FunElement.coordinate(n, i, j, bar=True)


def mono(n, us, ubars):
    exps = {}
    for i, j in us:
        exps[(i, j, False)] = exps.get((i, j, False), 0) + 1
    for i, j in ubars:
        exps[(i, j, True)] = exps.get((i, j, True), 0) + 1
    return FunElement(n, {FunMonomial(exps): 1})


# -- the Weingarten table -----------------------------------------------------


def test_table_p1():
    for n in (1, 2, 5):
        t = weingarten_table(1, n)
        assert t.values[(0,)] == Fraction(1, n)
        assert not t.pseudo


def test_table_p2_frozen():
    # invert [[n^2, n], [n, n^2]] by hand
    for n in (2, 3):
        t = weingarten_table(2, n)
        assert t.wg((0, 1)) == Fraction(1, n * n - 1)
        assert t.wg((1, 0)) == Fraction(-1, n * (n * n - 1))


def test_table_row_sums():
    # sum_s Wg(s) n^cycles(s) = 1, the identity column of the inverse; only
    # meaningful in the invertible regime (below it G G+ is a projection)
    for p, n in ((2, 2), (3, 3), (2, 4)):
        t = weingarten_table(p, n)
        total = sum(t.wg(s) * Fraction(n ** _cycle_count(s)) for s in t.perms)
        assert total == 1


def test_table_class_function_and_inversion_symmetry():
    for p, n in ((3, 3), (3, 2), (4, 3)):
        t = weingarten_table(p, n)
        by_type = {}
        for s in t.perms:
            key = tuple(sorted(_cycle_lengths(s)))
            by_type.setdefault(key, set()).add(t.wg(s))
        assert all(len(vals) == 1 for vals in by_type.values())
        for s in t.perms:
            assert t.wg(s) == t.wg(_inverse(s))


def _cycle_lengths(s):
    seen = [False] * len(s)
    out = []
    for a in range(len(s)):
        if seen[a]:
            continue
        length = 0
        b = a
        while not seen[b]:
            seen[b] = True
            b = s[b]
            length += 1
        out.append(length)
    return out


def test_table_inverse_identity():
    for p in (1, 2, 3):
        for n in (3, 4):
            t = weingarten_table(p, n)
            for s in t.perms:
                for r in t.perms:
                    total = sum(
                        Fraction(n ** _cycle_count(_compose(s, _inverse(tt)))) * t.wg(_compose(tt, _inverse(r)))
                        for tt in t.perms
                    )
                    assert total == (1 if s == r else 0)


def test_table_pseudo_regime_flag():
    assert weingarten_table(3, 2).pseudo
    assert weingarten_table(4, 3).pseudo
    assert not weingarten_table(3, 3).pseudo


def test_table_degree_cap():
    with pytest.raises(DegreeCapError):
        weingarten_table(6, 6)


# -- exact integrals ------------------------------------------------------------


def test_integral_frozen_examples():
    assert haar_integral(u(2, 1, 1) * ub(2, 1, 1)) == GaussianRational(Fraction(1, 2))
    assert haar_integral(u(2, 1, 1)) == GaussianRational(0)
    for n in (2, 3):
        total = FunElement.zero(n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                total = total + mono(n, [(i, i)], [(j, j)])
        assert haar_integral(total) == GaussianRational(1)


def test_integral_degree_two_frozen():
    # |u11|^2 |u12|^2 integrates to 1/(n(n+1)); |u11 u22|^2 to Wg(e) = 1/(n^2-1)
    val = haar_integral(mono(2, [(1, 1), (1, 2)], [(1, 1), (1, 2)]))
    assert val == GaussianRational(Fraction(1, 6))
    val = haar_integral(mono(2, [(1, 1), (2, 2)], [(1, 1), (2, 2)]))
    assert val == GaussianRational(Fraction(1, 3))
    val = haar_integral(mono(3, [(1, 1), (1, 2)], [(1, 1), (1, 2)]))
    assert val == GaussianRational(Fraction(1, 12))


def test_entry_moments_closed_form():
    # E|u11|^(2k) = 1/C(n-1+k, k); k=3 at n=2 and k=4 at n in {2,3} exercise
    # the singular-regime pseudo-inverse
    for n in (2, 3):
        for k in (1, 2, 3, 4):
            f = mono(n, [(1, 1)] * k, [(1, 1)] * k)
            expect = Fraction(1, math.comb(n - 1 + k, k))
            assert haar_integral(f) == GaussianRational(expect), (n, k)


def test_full_entry_product_moment():
    # int |u11 u12 u21 u22|^2 over U(2) = E[t^2 (1-t)^2] with t uniform on
    # [0,1] (the squared moduli of a 2x2 unitary are t, 1-t, 1-t, t), which is
    # the Beta integral B(3,3) = 1/30; exercises the p=4 singular-regime table
    exps = {}
    for i, j in ((1, 1), (1, 2), (2, 1), (2, 2)):
        exps[(i, j, False)] = 1
        exps[(i, j, True)] = 1
    f = FunElement(2, {FunMonomial(exps): 1})
    assert haar_integral(f) == GaussianRational(Fraction(1, 30))


def test_unbalanced_monomials_vanish():
    assert haar_integral(mono(2, [(1, 1), (1, 2)], [(2, 1)])) == GaussianRational(0)
    assert haar_integral(mono(3, [], [(2, 1)])) == GaussianRational(0)


def test_integral_dimension_check():
    with pytest.raises(DimensionMismatchError):
        haar_integral(u(2, 1, 1), n=3)


def test_integral_degree_cap():
    f = mono(2, [(1, 1)] * 6, [(1, 1)] * 6)
    with pytest.raises(DegreeCapError):
        haar_integral(f)


# -- the state and the norm -------------------------------------------------------


def test_state_examples():
    assert haar_state(CrossedElement.one(2)) == GaussianRational(1)
    assert haar_state(CrossedElement.odd(u(2, 1, 1) * ub(2, 1, 1))) == GaussianRational(0)
    pres = ao_star(2)
    w = WordElement.from_word(pres, (letter(pres, 1, 1), letter(pres, 1, 1)))
    assert haar_state(embed_pi(w)) == GaussianRational(Fraction(1, 2))


def test_state_positivity():
    rng = random.Random(19)
    for n in (2, 3):
        for _ in range(50):
            x = random_crossed(rng, n, max_degree=2)
            val = haar_state(crossed_mul(crossed_star(x), x))
            assert val.im == 0 and val.re >= 0


def test_norm_equal_examples():
    pres = ao_star(2)

    def img(*pairs):
        return embed_pi(WordElement.from_word(pres, tuple(letter(pres, r, c) for r, c in pairs)))

    assert norm_equal(img((1, 1), (2, 2), (1, 2)), img((1, 2), (2, 2), (1, 1)))
    assert not norm_equal(img((1, 1), (2, 2)), img((2, 2), (1, 1)))
    assert norm_squared(img((1, 1), (2, 2)) - img((2, 2), (1, 1))) == Fraction(2, 3)
    total = CrossedElement.zero(2)
    for k in (1, 2):
        total = total + img((1, k), (2, k))
    assert norm_equal(total, CrossedElement.zero(2))


def test_faithfulness_small_battery():
    # the exact norm decides function equality on the group.  Distinct normal
    # forms can coincide as functions: 2x2 unitarity forces |u11| = |u22| and
    # |u12| = |u21|, giving exactly two coinciding pairs at length <= 2.
    from halfcomm.verify import pointwise_equal

    pres = ao_star(2)
    letters = [letter(pres, r, c) for r in (1, 2) for c in (1, 2)]
    forms = {()}
    for length in (1, 2):
        for word in itertools.product(letters, repeat=length):
            forms.add(hc_normal_form(word))
    forms = sorted(forms, key=lambda w: (len(w), w))
    images = [embed_pi(WordElement.from_word(pres, w)) for w in forms]
    coinciding = []
    for a in range(len(forms)):
        for b in range(a, len(forms)):
            got = norm_equal(images[a], images[b])
            assert got == pointwise_equal(images[a], images[b])
            if a == b:
                assert got
            elif got:
                coinciding.append((forms[a], forms[b]))

    def w(*pairs):
        return tuple(letter(pres, r, c) for r, c in pairs)

    assert coinciding == [
        (w((1, 1), (1, 1)), w((2, 2), (2, 2))),
        (w((1, 2), (1, 2)), w((2, 1), (2, 1))),
    ]


def test_bi_invariance_through_norm():
    # (id (x) h) Delta x = h(x) 1 and (h (x) id) Delta x = h(x) 1 as functions
    n = 2
    samples = [
        CrossedElement.even(u(n, 1, 1) * ub(n, 1, 1)),
        CrossedElement.even(u(n, 1, 2) * ub(n, 1, 1)),
        CrossedElement.even(u(n, 1, 1) * ub(n, 2, 2)),
        CrossedElement.odd(u(n, 1, 1)),
    ]
    for x in samples:
        target = CrossedElement.one(n) * haar_state(x)
        left = CrossedElement.zero(n)
        right = CrossedElement.zero(n)
        for ((lm, lp), (rm, rp)), c in crossed_coproduct(x).items():
            lelem = CrossedElement.even(FunElement(n, {lm: 1})) if lp == 0 else CrossedElement.odd(FunElement(n, {lm: 1}))
            relem = CrossedElement.even(FunElement(n, {rm: 1})) if rp == 0 else CrossedElement.odd(FunElement(n, {rm: 1}))
            left = left + c * haar_state(relem) * lelem
            right = right + c * haar_state(lelem) * relem
        assert norm_equal(left, target)
        assert norm_equal(right, target)


# -- Monte Carlo -------------------------------------------------------------------


def test_mc_against_exact():
    f = u(2, 1, 1) * ub(2, 1, 1)
    est = mc_integral(f, parse_model("un:2"), 20000, seed=7)
    assert abs(est.mean - 0.5) < 5 * est.stderr
    assert est.samples == 20000


def test_mc_deterministic():
    f = u(2, 1, 1) * ub(2, 1, 1)
    a = mc_integral(f, parse_model("un:2"), 5000, seed=3)
    b = mc_integral(f, parse_model("un:2"), 5000, seed=3)
    assert a.mean == b.mean and a.stderr == b.stderr


def test_mc_constant():
    one = CrossedElement.one(2)
    est = mc_integral(one, parse_model("un:2"), 100, seed=1)
    assert est.mean == 1.0 and est.stderr == 0.0


def test_mc_kn_exact_zero():
    f = u(2, 1, 1) * u(2, 1, 2)
    est = mc_integral(f, parse_model("kn:2"), 2000, seed=5)
    assert est.mean == 0.0 and est.stderr == 0.0


def test_mc_crossed_even_component():
    x = CrossedElement(u(2, 1, 1) * ub(2, 1, 1), u(2, 1, 2))
    est = mc_integral(x, parse_model("un:2"), 20000, seed=9)
    assert abs(est.mean - 0.5) < 5 * est.stderr


def test_mc_validation():
    with pytest.raises(ValueError):
        mc_integral(u(2, 1, 1), parse_model("un:2"), 1, seed=0)
    with pytest.raises(DimensionMismatchError):
        mc_integral(u(3, 1, 1), parse_model("un:2"), 10, seed=0)


def test_mc_special_unitary_degree_zero_agrees():
    # degree-zero monomials factor through the common central quotient, so the
    # special unitary moments match the full unitary Weingarten values
    for f in (u(2, 1, 1) * ub(2, 1, 1), u(2, 1, 2) * ub(2, 1, 2)):
        exact = haar_integral(f).to_complex()
        est = mc_integral(f, parse_model("sun:2"), 30000, seed=21)
        assert abs(est.mean - exact) < 5 * est.stderr
