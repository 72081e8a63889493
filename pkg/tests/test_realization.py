import random
from fractions import Fraction

import pytest

from ordspace.groups import Sol, SolElt, Tararin, WreathElt, WreathZZ, ball, identity, inverse, multiply
from ordspace.orders import (
    SolAffine,
    TararinSigns,
    WreathLexTop,
    WreathOrbit,
    conjugate_order,
    sol_biorders,
)
from ordspace.qfield import QuadExt, hyperbolic_eigendata
from ordspace.realization import (
    CROSSED,
    DILATION,
    DISJOINT,
    FIXED,
    AffineAction,
    ConvexJumpAction,
    Interval,
    LinePoint,
    NoDomainError,
    WreathCosetAction,
    action_trace_csv,
    classify_intervals,
    induced_order,
    is_crossing,
    realization_for,
    translation_number,
    trichotomy,
    wreath_nesting_tree,
)

T2 = ((2, 1), (1, 1))
T3 = ((3, 1), (2, 1))
G2 = Sol(T2)


@pytest.mark.parametrize("choice", ["expanding", "contracting"])
def test_affine_homomorphism_on_ball4(choice):
    A = AffineAction(G2, choice)
    B = ball(G2, 4)
    maps = {g: A.map(g) for g in B}
    for g in B:
        mg = maps[g]
        for h in B:
            assert A.map(multiply(G2, g, h)) == mg.compose(maps[h])
    # faithful on the ball: distinct elements act differently
    assert len(set(maps.values())) == len(B)


@pytest.mark.parametrize("T", [T2, T3])
def test_translation_number_identities(T):
    lam, _ = hyperbolic_eigendata(T)
    rng = random.Random(3)
    (a, b), (c, d) = T
    for _ in range(100):
        v = (rng.randint(-50, 50), rng.randint(-50, 50))
        w = (rng.randint(-50, 50), rng.randint(-50, 50))
        s = (v[0] + w[0], v[1] + w[1])
        assert translation_number(T, s) == translation_number(T, v) + translation_number(T, w)
        Tv = (a * v[0] + b * v[1], c * v[0] + d * v[1])
        assert translation_number(T, Tv) == lam * translation_number(T, v)


def test_translation_number_examples():
    assert translation_number(T2, (0, 0)) == 0
    assert translation_number(T2, (1, 0)) == 1
    assert translation_number(T2, (2, 1)) == 2 + QuadExt(Fraction(-1, 2), Fraction(1, 2), 5)


def test_induced_order_examples():
    A = AffineAction(G2, "expanding")
    P = induced_order(G2, A, [0])
    assert P.pseudo and P.basepoint == 0
    O = induced_order(G2, A, [0, 1])
    assert O == SolAffine("expanding", 1, 0, 1)
    W = WreathZZ()
    assert induced_order(W, WreathCosetAction(), [()], stab_sign=1) == WreathLexTop(1)
    with pytest.raises(ValueError):
        induced_order(W, WreathCosetAction(), [()])


def test_induced_order_wreath_second_coset_resolves():
    W = WreathZZ()
    # h = (a - shift a, t) fixes a; a second coset decides its sign
    O = induced_order(W, WreathCosetAction(), [((0, 1),), ((5, 1),)])
    assert isinstance(O, WreathOrbit) and O.t_sign in (1, -1)


def _random_point(rng):
    return Fraction(rng.randint(-6, 6), rng.randint(1, 3))


def test_affine_equivariance_30_cases():
    rng = random.Random(5)
    A = AffineAction(G2, "expanding")
    B = ball(G2, 2)
    for _ in range(30):
        seq = [A.point(_random_point(rng)) for _ in range(2)]
        if seq[0].value == seq[1].value:
            continue
        g = rng.choice(B.elements)
        moved = [A.apply(g, p) for p in seq]
        O = induced_order(G2, A, seq)
        assert conjugate_order(G2, induced_order(G2, A, moved), g) == O


def test_wreath_equivariance_30_cases():
    rng = random.Random(6)
    W = WreathZZ()
    A = WreathCosetAction()
    B = ball(W, 3)
    for _ in range(30):
        base = tuple((i, rng.choice((-1, 1))) for i in sorted(rng.sample(range(-3, 4), 2)))
        seq = [A.point(base), A.point(())]
        g = rng.choice(B.elements)
        moved = [A.apply(g, p) for p in seq]
        O = induced_order(W, A, seq, stab_sign=1)
        assert conjugate_order(W, induced_order(W, A, moved, stab_sign=1), g) == O


def test_trichotomy_sol_examples():
    A = AffineAction(G2, "expanding")
    t, e1 = SolElt((0, 0), 1), SolElt((1, 0), 0)
    assert trichotomy(G2, A, t, e1) == DILATION
    assert trichotomy(G2, A, t, identity(G2)) == FIXED
    assert trichotomy(G2, A, t, multiply(G2, t, t)) == FIXED
    with pytest.raises(NoDomainError):
        trichotomy(G2, A, e1, t)


def test_interval_verdicts():
    assert classify_intervals(Interval(0, 1), Interval(0, 1)) == FIXED
    assert classify_intervals(Interval(0, 1), Interval(1, 2)) == DISJOINT
    assert classify_intervals(Interval(0, 1), Interval(-1, 2)) == DILATION
    assert classify_intervals(Interval(0, 2), Interval(1, 3)) == CROSSED
    assert classify_intervals(Interval(0, 2), Interval(0, 3)) == CROSSED  # shared endpoint
    assert classify_intervals(Interval(None, 0), Interval(None, 1)) == DILATION
    assert is_crossing(DILATION) and is_crossing(CROSSED) and not is_crossing(DISJOINT)


def test_trichotomy_wreath_examples():
    W = WreathZZ()
    A = WreathCosetAction()
    d0, d5 = WreathElt(((0, 1),), 0), WreathElt(((5, 1),), 0)
    assert trichotomy(W, A, d0, d5) == DISJOINT
    assert trichotomy(W, A, d0, identity(W)) == FIXED
    assert trichotomy(W, A, d5, d0) == FIXED
    assert trichotomy(W, A, d0, WreathElt((), 1)) == DILATION
    with pytest.raises(NoDomainError):
        trichotomy(W, A, WreathElt((), 1), d0)


def _crossings(G, action, r=3):
    B = ball(G, r)
    found = []
    for g in B:
        try:
            action.domains(g)
        except NoDomainError:
            continue
        for f in B:
            if is_crossing(trichotomy(G, action, g, f)):
                found.append((g, f))
                break
    return found


@pytest.mark.parametrize("O", [TararinSigns((1, -1, 1)), TararinSigns((-1, -1, -1))])
def test_no_crossings_for_tararin(O):
    G = Tararin(3)
    assert not _crossings(G, ConvexJumpAction(G, O))


def test_no_crossings_for_sol_biorder():
    O = sol_biorders(T2)[0]
    assert not _crossings(G2, realization_for(G2, O))


def test_crossing_for_sol_affine():
    O = SolAffine("contracting", -1, Fraction(1, 2), 1)
    assert _crossings(G2, realization_for(G2, O), r=2)


def test_wreath_domain_is_invariant_under_conjugates():
    # verdicts transform covariantly: g, f and their conjugates by t give equal verdicts
    W = WreathZZ()
    A = WreathCosetAction()
    t = WreathElt((), 1)
    B = ball(W, 2)
    for g in B:
        if g.n or not g.f:
            continue
        for f in B:
            v = trichotomy(W, A, g, f)
            tg = multiply(W, multiply(W, t, g), inverse(W, t))
            tf = multiply(W, multiply(W, t, f), inverse(W, t))
            assert trichotomy(W, A, tg, tf) == v


def test_action_trace_csv():
    A = AffineAction(G2, "expanding")
    text = action_trace_csv(A, [SolElt((1, 0), 0), SolElt((0, 0), 1)])
    lines = text.splitlines()
    assert lines[0] == "element,scale,offset"
    assert lines[2].endswith(",3/2 + 1/2√5,0")


def test_wreath_nesting_tree_depth4():
    tree = wreath_nesting_tree(4)
    assert tree["schema"] == 1 and tree["depth"] == 4
    levels = []
    node = tree["tree"]
    while node:
        levels.append(node["block"]["fixed_above"])
        node = node["child"]
    assert levels == [3, 2, 1, 0]


def test_line_points_compare_within_kind_only():
    assert LinePoint.exact(Fraction(1, 2)) < LinePoint.exact(1)
    assert LinePoint.coset(((0, -1),)) < LinePoint.coset(())
    with pytest.raises(TypeError):
        LinePoint.exact(0) < LinePoint.coset(())
