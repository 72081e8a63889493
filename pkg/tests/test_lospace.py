import random
from fractions import Fraction

import pytest

from ordspace.groups import FreeAbelian2, Sol, Tararin, WreathElt, WreathZZ, ball, multiply
from ordspace.lospace import (
    Distance,
    affine_conjugate_sequence,
    agreement,
    convergence_check,
    dist,
    is_biinvariant_on_ball,
    is_conradian_on_ball,
    recheck,
    tararin_conjugation_orbits,
    wreath_orbit_sequence,
)
from ordspace.orders import (
    SolAffine,
    SolConrad,
    TararinSigns,
    Tie,
    WreathLexTop,
    WreathOrbit,
    Z2Line,
    conjugate_order,
    enumerate_tararin,
    sign_of,
    sol_biorders,
)
from ordspace.sampling import random_sol_spec

T2 = ((2, 1), (1, 1))
G2 = Sol(T2)


def brute_agreement(G, O1, O2, r_max):
    # oracle: scan sphere by sphere
    B = ball(G, r_max)
    for r in range(r_max + 1):
        if any(sign_of(G, O1, g) != sign_of(G, O2, g) for g in B.layer(r)):
            return r - 1
    return None


def test_tararin_distance_example():
    G = Tararin(2)
    O1, O2 = TararinSigns((1, 1)), TararinSigns((-1, 1))
    rep = agreement(G, O1, O2, 5)
    assert rep.exact and rep.agreement_radius == 0
    assert dist(G, O1, O2, 5) == Distance(Fraction(1, 2))
    assert str(dist(G, O1, O2, 5)) == "2^-1"
    assert rep.first_disagreement.element in ball(G, 1)


def test_identical_specs_truncated():
    d = dist(G2, sol_biorders(T2)[0], sol_biorders(T2)[0], 6)
    assert not d.exact and d.value == Fraction(1, 64)
    assert str(d) == "<= 2^-6"


@pytest.mark.parametrize("r", [3, 4, 5])
def test_wreath_distance_small_once_base_is_far(r):
    W = WreathZZ()
    d = dist(W, WreathLexTop(1), WreathOrbit(((-(r + 2), 1),), 1), r)
    assert d.value <= Fraction(1, 2**r)


def test_agreement_matches_brute_force_and_is_symmetric():
    rng = random.Random(2)
    for _ in range(20):
        O1, O2 = random_sol_spec(rng, G2), random_sol_spec(rng, G2)
        rep = agreement(G2, O1, O2, 4)
        expect = brute_agreement(G2, O1, O2, 4)
        assert (rep.agreement_radius if rep.exact else None) == expect
        assert agreement(G2, O2, O1, 4).agreement_radius == rep.agreement_radius
        if rep.first_disagreement:
            w = rep.first_disagreement
            assert (sign_of(G2, O1, w.element), sign_of(G2, O2, w.element)) == (w.expected, w.actual)


def test_ultrametric_on_tararin_census():
    G = Tararin(3)
    specs = enumerate_tararin(3)
    for a in specs:
        for b in specs:
            for c in specs:
                dab, dbc, dac = dist(G, a, b, 5), dist(G, b, c, 5), dist(G, a, c, 5)
                if dab.exact and dbc.exact and dac.exact:
                    assert dac.value <= max(dab.value, dbc.value)


def test_conjugation_moves_disagreement_by_at_most_2g():
    rng = random.Random(9)
    B1 = ball(G2, 1)
    for _ in range(10):
        O1, O2 = random_sol_spec(rng, G2), random_sol_spec(rng, G2)
        rep = agreement(G2, O1, O2, 4)
        if not rep.exact:
            continue
        n = rep.agreement_radius + 1
        for g in B1:
            c = agreement(G2, conjugate_order(G2, O1, g), conjugate_order(G2, O2, g), n + 2)
            assert c.exact and c.agreement_radius + 1 <= n + 2


def test_conradian_examples():
    for m in range(1, 5):
        G = Tararin(m)
        assert all(is_conradian_on_ball(G, O, 4) for O in enumerate_tararin(m))
    res = is_conradian_on_ball(G2, SolAffine("expanding", 1, 0, 1), 6)
    assert not res
    f, g = res.witness.element
    assert sign_of(G2, SolAffine("expanding", 1, 0, 1), f) == 1
    assert sign_of(G2, SolAffine("expanding", 1, 0, 1), g) == 1
    assert recheck(G2, SolAffine("expanding", 1, 0, 1), res.witness) == (1, -1)


def test_conradian_witness_reproducible():
    O = SolAffine("contracting", -1, Fraction(1, 2), 1)
    assert is_conradian_on_ball(G2, O, 5) == is_conradian_on_ball(G2, O, 5)


def test_biinvariance_examples():
    for O in sol_biorders(T2):
        assert is_biinvariant_on_ball(G2, O, 3)
    O = SolConrad(Z2Line((1, 0), Tie((0, 1), 1)), 1)
    res = is_biinvariant_on_ball(G2, O, 3)
    assert not res
    s_f, s_c = recheck(G2, O, res.witness)
    assert s_f != s_c
    Z = FreeAbelian2()
    assert is_biinvariant_on_ball(Z, Z2Line((3, 7), Tie((7, -3), 1)), 5)


@pytest.mark.parametrize("m", range(1, 11))
def test_tararin_two_orbits(m):
    orbits = tararin_conjugation_orbits(m)
    assert len(orbits) == 2
    assert sum(len(o) for o in orbits) == 2**m
    for orb in orbits:
        assert len({O.eps[-1] for O in orb}) == 1
    assert {orb[0].eps[-1] for orb in orbits} == {1, -1}


def test_tararin_m2_orbits():
    orbits = tararin_conjugation_orbits(2)
    assert sorted(map(set, orbits), key=len) == sorted(
        [{TararinSigns((1, 1)), TararinSigns((-1, 1))}, {TararinSigns((1, -1)), TararinSigns((-1, -1))}],
        key=len,
    )


def test_wreath_convergence_schedule():
    ms = list(range(3, 9))
    rep = convergence_check(WreathZZ(), WreathLexTop(1), wreath_orbit_sequence(ms), [m - 2 for m in ms])
    assert rep.agreement_ok and rep.all_distinct
    for m, term in zip(ms, rep.terms):
        w = term.distinct_witness.element
        assert w.n > 0 and w.f == ((w.n - m - 1, -1),)


def test_wreath_orbit_agreement_is_sharp():
    # sharper than the m - 2 schedule: agreement on Ball(m + 1), first
    # disagreement at t^-(m+1) delta_0 (word length m + 2)
    W = WreathZZ()
    for m in range(1, 6):
        rep = agreement(W, WreathLexTop(1), WreathOrbit(((-m, 1),), 1), m + 2)
        assert rep.exact and rep.agreement_radius == m + 1
        assert rep.first_disagreement.element == WreathElt(((-(m + 1), 1),), -(m + 1))


def test_constant_sequence_reports_missing_distinctness():
    O = SolAffine("expanding", 1, 0, 1)
    rep = convergence_check(G2, O, [O, O], [3, 3])
    assert rep.agreement_ok and not rep.all_distinct and rep.passed


def test_affine_sequence_converges():
    for target in [SolAffine("expanding", 1, 0, 1), SolAffine("contracting", -1, Fraction(1, 3), -1)]:
        seq = affine_conjugate_sequence(G2, target, range(1, 7))
        dists = [abs(O.basepoint - target.basepoint) for O in seq]
        assert all(a > b for a, b in zip(dists, dists[1:]))
        rep = convergence_check(G2, target, seq, [k - 1 for k in range(1, 7)])
        assert rep.agreement_ok and rep.all_distinct
        assert agreement(G2, target, seq[-1], 6).agreement_radius >= 5
        for O, term in zip(seq, rep.terms):
            w = term.distinct_witness
            assert sign_of(G2, target, w.element) == w.expected != w.actual == sign_of(G2, O, w.element)


@pytest.mark.parametrize("m", [2, 3])
def test_tararin_profile_path_matches_direct_pair_scan(m):
    G = Tararin(m)
    B = ball(G, 3)
    from ordspace.groups import inverse

    for O in enumerate_tararin(m):
        pos = [g for g in B if sign_of(G, O, g) == 1]
        direct = all(
            sign_of(G, O, multiply(G, multiply(G, inverse(G, g), f), multiply(G, g, g))) == 1
            for f in pos
            for g in pos
        )
        res = is_conradian_on_ball(G, O, 3)
        assert res.passed == direct
        assert res.pairs_checked == len(pos) ** 2
