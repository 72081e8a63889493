"""Seeded random specs for property checks and the CLI census."""

from __future__ import annotations

import random
from fractions import Fraction

from .affine import LAMBDA_CHOICES
from .groups import Sol
from .orders import SolAffine, SolConrad, Tie, Z2Line, sol_biorders
from .qfield import QuadExt, hyperbolic_eigendata


def _rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def random_rational(rng: random.Random, bound: int = 2, max_den: int = 6) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * q, bound * q), q)


def random_z2_line(rng, d: int) -> Z2Line:
    """Half-plane ordering with a rational or Q(sqrt d) covector."""
    rng = _rng(rng)
    while True:
        if rng.random() < 0.5:
            u = (rng.randint(-6, 6), rng.randint(-6, 6))
            if u == (0, 0):
                continue
            kernel = _kernel(u)
            return Z2Line(u, Tie(kernel, rng.choice((1, -1))))
        b = random_rational(rng, 2, 4)
        if b == 0:
            continue
        y = QuadExt(random_rational(rng, 2, 4), b, d)
        return Z2Line((rng.choice((1, -1)), y))


def _kernel(u) -> tuple[int, int]:
    from math import gcd

    c = (-u[1], u[0])
    g = gcd(*c)
    return (c[0] // g, c[1] // g)


def random_sol_conrad(rng, G: Sol, eigen: bool = False) -> SolConrad:
    """A Conradian SOL ordering; ``eigen=False`` avoids the eight bi-orders."""
    rng = _rng(rng)
    if eigen:
        return rng.choice(sol_biorders(G.T))
    _, u = hyperbolic_eigendata(G.T)
    d = u[1].d
    bi = {O.z2 for O in sol_biorders(G.T)}
    while True:
        L = random_z2_line(rng, d)
        if L not in bi:
            return SolConrad(L, rng.choice((1, -1)))


def random_basepoint(rng, d: int, bound: int = 2):
    """Rational with probability 1/2, else a + b sqrt d with |value| small."""
    rng = _rng(rng)
    if rng.random() < 0.5:
        return random_rational(rng, bound)
    while True:
        x = QuadExt(random_rational(rng, bound, 3), Fraction(rng.choice((1, -1)), rng.randint(1, 3)), d)
        if abs(x) <= bound:
            return x


def random_sol_affine(rng, G: Sol, bound: int = 2) -> SolAffine:
    rng = _rng(rng)
    _, u = hyperbolic_eigendata(G.T)
    return SolAffine(
        rng.choice(LAMBDA_CHOICES),
        rng.choice((1, -1)),
        random_basepoint(rng, u[1].d, bound),
        rng.choice((1, -1)),
    )


def random_sol_spec(rng, G: Sol):
    rng = _rng(rng)
    r = rng.random()
    if r < 0.4:
        return random_sol_affine(rng, G)
    return random_sol_conrad(rng, G, eigen=r > 0.8)
