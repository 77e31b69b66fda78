import random
from fractions import Fraction

import pytest

from dmlab import (
    Field,
    MonomialOrder,
    MultiPoly,
    PointSet,
    ReducedGroebnerBasis,
    buchberger,
    ideal_dimension,
    ideal_equal,
    ideal_sum,
    normal_form,
    parse_polynomial,
    s_polynomial,
    vanishing_ideal,
)

QQ = Field.rationals()
F7 = Field.prime(7)
F2T = Field.rational_functions(2)

XY = ("x", "y")


def P(src, field=QQ, names=XY):
    return parse_polynomial(src, names, field)


def pt(field, *coords):
    return tuple(field.from_int(c) for c in coords)


# -- buchberger -------------------------------------------------------------


def test_linear_pair_lex():
    o = MonomialOrder.lex(2, (1, 0))  # y > x
    gb = buchberger([P("x+y-1"), P("x-y")], o)
    assert gb.render(XY) == ("y - 1/2", "x - 1/2")


def test_coprime_leading_terms_skip():
    o = MonomialOrder.lex(2)
    gb = buchberger([P("x-1"), P("y-2")], o)
    assert gb.render(XY) == ("x - 1", "y - 2")


def test_unit_ideal():
    o = MonomialOrder.lex(2)
    gb = buchberger([P("x"), P("x+1")], o)
    assert gb.is_unit_ideal
    assert gb.render(XY) == ("1",)
    assert normal_form(P("x^3*y - 5"), gb).is_zero()


def test_zero_ideal():
    o = MonomialOrder.lex(2)
    gb = buchberger([MultiPoly.zero(QQ, 2)], o)
    assert gb.is_zero_ideal
    f = P("x^2 - y")
    assert normal_form(f, gb) == f


def test_empty_generators_rejected():
    with pytest.raises(ValueError):
        buchberger([], MonomialOrder.lex(2))


def test_textbook_grevlex():
    # Cox-Little-O'Shea staple: x^3 - 2xy, x^2y - 2y^2 + x
    o = MonomialOrder.grevlex(2)
    inputs = [P("x^3 - 2*x*y"), P("x^2*y - 2*y^2 + x")]
    gb = buchberger(inputs, o)
    assert gb.render(XY) == ("x^2", "x*y", "y^2 - 1/2*x")
    # cross-membership: inputs lie in the output ideal
    for f in inputs:
        assert normal_form(f, gb).is_zero()


def test_normal_form_example():
    o = MonomialOrder.lex(2)
    gb = buchberger([P("x+y-1", F2T)], o)
    f = P("t*x + (1-t)*y - 1", F2T)
    nf = normal_form(f, gb)
    assert nf.render(XY, o) == "y + t + 1"
    assert nf == P("y + t + 1", F2T)


def _random_poly(rng, field, num_vars=2, max_terms=4, max_exp=3):
    items = []
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(rng.randint(0, max_exp) for _ in range(num_vars))
        if field is QQ:
            c = field.from_fraction(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
        else:
            c = field.from_int(rng.randrange(field.characteristic))
        items.append((mono, c))
    return MultiPoly.from_terms(field, num_vars, items)


def _random_system(rng, field):
    while True:
        gens = [_random_poly(rng, field) for _ in range(rng.randint(1, 3))]
        if any(not g.is_zero() for g in gens):
            return gens


def _random_order(rng, num_vars=2):
    priority = list(range(num_vars))
    rng.shuffle(priority)
    kind = rng.choice([MonomialOrder.lex, MonomialOrder.grevlex])
    return kind(num_vars, tuple(priority))


def test_groebner_property_s_polynomials_reduce():
    rng = random.Random(0x6B01)
    for _ in range(40):
        field = rng.choice([QQ, F7])
        order = _random_order(rng)
        gb = buchberger(_random_system(rng, field), order)
        gens = gb.generators
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                s = s_polynomial(gens[i], gens[j], order)
                assert normal_form(s, gb).is_zero()


def test_groebner_permutation_invariance():
    rng = random.Random(0x6B02)
    for _ in range(30):
        field = rng.choice([QQ, F7])
        order = _random_order(rng)
        gens = _random_system(rng, field)
        base = buchberger(gens, order)
        for _ in range(3):
            shuffled = gens[:]
            rng.shuffle(shuffled)
            scaled = [
                g.scale(field.from_int(rng.choice([1, 2, 3, -1])))
                for g in shuffled
            ]
            scaled = [g for g in scaled if not g.is_zero()] or shuffled
            again = buchberger(scaled, order)
            assert ideal_equal(base, again)
            assert base.generators == again.generators


def test_reduced_basis_shape():
    # monic, pairwise irreducible tails, descending leading terms
    rng = random.Random(0x6B03)
    for _ in range(25):
        field = rng.choice([QQ, F7])
        order = _random_order(rng)
        gb = buchberger(_random_system(rng, field), order)
        leads = gb.leading_monomials()
        keys = [order.key(m) for m in leads]
        assert keys == sorted(keys, reverse=True)
        for i, g in enumerate(gb.generators):
            assert g.leading_term(order)[1].is_one()
            for mono in g.terms:
                for j, lm in enumerate(leads):
                    if j != i:
                        assert not all(a <= b for a, b in zip(lm, mono))


def test_normal_form_idempotent_and_linear():
    rng = random.Random(0x6B04)
    for _ in range(30):
        field = rng.choice([QQ, F7])
        order = _random_order(rng)
        gb = buchberger(_random_system(rng, field), order)
        for _ in range(5):
            f = _random_poly(rng, field)
            g = _random_poly(rng, field)
            nf = normal_form(f, gb)
            assert normal_form(nf, gb) == nf
            assert normal_form(f + g, gb) == normal_form(nf + normal_form(g, gb), gb)
        # ideal members reduce to zero
        combo = MultiPoly.zero(field, 2)
        for gen in gb.generators:
            combo = combo + gen * _random_poly(rng, field, max_terms=2, max_exp=2)
        assert normal_form(combo, gb).is_zero()


def test_ideal_equal_validation():
    a = buchberger([P("x")], MonomialOrder.lex(2))
    b = buchberger([P("x")], MonomialOrder.grevlex(2))
    with pytest.raises(ValueError):
        ideal_equal(a, b)


def test_ideal_sum():
    o = MonomialOrder.lex(2)
    a = buchberger([P("x-1")], o)
    b = buchberger([P("y-2")], o)
    s = ideal_sum(a, b)
    assert s.render(XY) == ("x - 1", "y - 2")
    z = ReducedGroebnerBasis(o, (), 2, QQ)
    assert ideal_sum(a, z) is a


# -- dimension ---------------------------------------------------------------


def test_dimension_cases():
    o = MonomialOrder.lex(2)
    assert ideal_dimension(buchberger([P("x+y-1")], o)) == 1
    assert ideal_dimension(buchberger([P("x-1"), P("y-2")], o)) == 0
    assert ideal_dimension(buchberger([P("1")], o)) == -1
    assert ideal_dimension(ReducedGroebnerBasis(o, (), 2, QQ)) == 2
    assert ideal_dimension(buchberger([P("x^2")], o)) == 1
    o3 = MonomialOrder.lex(3)
    xyz = ("x", "y", "z")
    f = parse_polynomial("x*y", xyz, QQ)
    assert ideal_dimension(buchberger([f], o3)) == 2


# -- vanishing ideals ---------------------------------------------------------


def test_single_point():
    o = MonomialOrder.lex(2)
    gb = vanishing_ideal([pt(QQ, 1, 2)], o)
    assert gb.render(XY) == ("x - 1", "y - 2")


def test_parabola_points():
    o = MonomialOrder.lex(2, (1, 0))  # y > x
    pts = [pt(QQ, 1, 1), pt(QQ, 2, 4), pt(QQ, 3, 9)]
    gb = vanishing_ideal(pts, o)
    assert gb.render(XY) == ("y - x^2", "x^3 - 6*x^2 + 11*x - 6")


def test_duplicate_points_collapse():
    o = MonomialOrder.lex(2)
    gb1 = vanishing_ideal([pt(QQ, 1, 2), pt(QQ, 1, 2)], o)
    gb2 = vanishing_ideal([pt(QQ, 1, 2)], o)
    assert ideal_equal(gb1, gb2)


def test_empty_point_set_rejected():
    with pytest.raises(ValueError):
        PointSet.of([])


def _staircase_count(gb):
    # independent oracle: count monomials outside the leading-term
    # staircase by breadth-first walk (finite for zero-dimensional ideals)
    leads = gb.leading_monomials()
    n = gb.num_vars
    seen = set()
    frontier = [(0,) * n]
    count = 0
    while frontier:
        mono = frontier.pop()
        if mono in seen:
            continue
        seen.add(mono)
        if any(all(a <= b for a, b in zip(lm, mono)) for lm in leads):
            continue
        count += 1
        assert count <= 10_000, "staircase walk exploded"
        for i in range(n):
            step = tuple(e + (1 if k == i else 0) for k, e in enumerate(mono))
            frontier.append(step)
    return count


def test_vanishing_ideal_random():
    rng = random.Random(0xB40C)
    for trial in range(60):
        field = F7 if trial % 2 else QQ
        npts = rng.randint(1, 12)
        if field is QQ:
            pts = [pt(QQ, rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(npts)]
        else:
            pts = [pt(F7, rng.randrange(7), rng.randrange(7)) for _ in range(npts)]
        order = _random_order(rng)
        gb = vanishing_ideal(pts, order)
        distinct = len(set(pts))
        for g in gb.generators:
            for point in pts:
                assert g.evaluate(point).is_zero()
        assert _staircase_count(gb) == distinct
        # the output is already the reduced basis: rerunning buchberger
        # on the generators is the identity
        again = buchberger(gb.generators, order)
        assert again.generators == gb.generators


def test_vanishing_ideal_membership_split():
    rng = random.Random(0xB40D)
    o = MonomialOrder.grevlex(2)
    pts = [pt(QQ, 0, 0), pt(QQ, 1, 1), pt(QQ, 2, 3)]
    gb = vanishing_ideal(pts, o)
    for _ in range(20):
        f = _random_poly(rng, QQ)
        vanishes = all(f.evaluate(p).is_zero() for p in pts)
        assert normal_form(f, gb).is_zero() == vanishes
