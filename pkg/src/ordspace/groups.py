"""Normal-form elements and word-length balls for four solvable groups.

Supported families:

* ``FreeAbelian2``: Z^2 with generators e1, e2.
* ``Sol(T)``: Z^2 semidirect Z with t acting on Z^2 by the hyperbolic matrix T.
  Elements are ``(v, t^n)``; generators e1, e2, t.
* ``Tararin(m)``: the polycyclic group ``<a_1..a_m | a_j a_i a_j^-1 = a_i^-1, i<j>``
  with normal forms ``a_1^k_1 ... a_m^k_m``; generators a_1..a_m.
* ``WreathZZ``: Z wr Z = (sum over Z of Z) semidirect Z, t shifting indices by +1.
  Elements are ``(f, t^n)``; generators delta_0 and t.

All elements are immutable and hashable, so balls and caches can key on them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Union

from .qfield import NotHyperbolicError, hyperbolic_eigendata

__all__ = [
    "FreeAbelian2",
    "Sol",
    "Tararin",
    "WreathZZ",
    "GroupSpec",
    "Z2",
    "SolElt",
    "TararinElt",
    "WreathElt",
    "GroupElement",
    "FamilyMismatchError",
    "BallTooLargeError",
    "Ball",
    "DEFAULT_BALL_CAP",
    "identity",
    "generators",
    "multiply",
    "inverse",
    "conjugate",
    "power",
    "ball",
    "word_to_element",
    "element_to_json",
    "element_from_json",
    "group_to_json",
    "group_from_json",
    "mat_pow",
    "mat_vec",
]

DEFAULT_BALL_CAP = 10


class FamilyMismatchError(TypeError):
    """An element or ordering was used with a group of another family."""


class BallTooLargeError(MemoryError):
    """Requested ball radius exceeds the configured safety cap."""

    def __init__(self, group, radius, cap, estimate):
        self.group, self.radius, self.cap, self.estimate = group, radius, cap, estimate
        super().__init__(
            f"ball radius {radius} exceeds cap {cap} for {group.name}; "
            f"size estimate up to {estimate} elements"
        )


# ---------------------------------------------------------------------------
# integer 2x2 matrices

Matrix = tuple[tuple[int, int], tuple[int, int]]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def mat_vec(A: Matrix, v: tuple[int, int]) -> tuple[int, int]:
    return (A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1])


@lru_cache(maxsize=4096)
def mat_pow(A: Matrix, n: int) -> Matrix:
    """``A**n`` for a unimodular integer matrix (negative n allowed)."""
    if n < 0:
        (a, b), (c, d) = A
        return mat_pow(((d, -b), (-c, a)), -n)
    if n == 0:
        return ((1, 0), (0, 1))
    if n == 1:
        return A
    half = mat_pow(A, n // 2)
    sq = mat_mul(half, half)
    return mat_mul(sq, A) if n % 2 else sq


# ---------------------------------------------------------------------------
# group specs


@dataclass(frozen=True)
class FreeAbelian2:
    name = "z2"


@dataclass(frozen=True)
class Sol:
    T: Matrix

    name = "sol"

    def __post_init__(self):
        (a, b), (c, d) = self.T
        T = ((int(a), int(b)), (int(c), int(d)))
        object.__setattr__(self, "T", T)
        hyperbolic_eigendata(T)  # validates det and trace
        if a + d < 3:
            raise NotHyperbolicError(f"SOL needs trace > 2 (positive eigenvalues), got {T}")


@dataclass(frozen=True)
class Tararin:
    m: int

    name = "tararin"

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"Tararin rank must be a positive integer, got {self.m!r}")


@dataclass(frozen=True)
class WreathZZ:
    name = "wreath"


GroupSpec = Union[FreeAbelian2, Sol, Tararin, WreathZZ]


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class Z2:
    v: tuple[int, int] = (0, 0)

    def key(self):
        return self.v


@dataclass(frozen=True)
class SolElt:
    """``(v, t^n)``; multiplication ``(v,n)(w,m) = (v + T^n w, n+m)``."""

    v: tuple[int, int] = (0, 0)
    n: int = 0

    def key(self):
        return (self.n, self.v)


@dataclass(frozen=True)
class TararinElt:
    """Normal form ``a_1^k[0] ... a_m^k[m-1]``."""

    k: tuple[int, ...]

    def key(self):
        return self.k


@dataclass(frozen=True)
class WreathElt:
    """``(f, t^n)`` with f stored as sorted ``((index, value), ...)``, values nonzero."""

    f: tuple[tuple[int, int], ...] = ()
    n: int = 0

    @classmethod
    def from_map(cls, f: dict, n: int = 0) -> "WreathElt":
        return cls(tuple(sorted((i, v) for i, v in f.items() if v)), n)

    def as_map(self) -> dict[int, int]:
        return dict(self.f)

    def top(self) -> tuple[int, int] | None:
        """``(index, value)`` at the maximal support index, or None if f = 0."""
        return self.f[-1] if self.f else None

    def key(self):
        return (self.n, self.f)


GroupElement = Union[Z2, SolElt, TararinElt, WreathElt]

_ELEMENT_TYPE = {FreeAbelian2: Z2, Sol: SolElt, Tararin: TararinElt, WreathZZ: WreathElt}


def _check(G, *elts):
    cls = _ELEMENT_TYPE.get(type(G))
    if cls is None:
        raise FamilyMismatchError(f"unsupported group spec {G!r}")
    for g in elts:
        if type(g) is not cls:
            raise FamilyMismatchError(f"{type(g).__name__} is not an element of {G.name}")
        if cls is TararinElt and len(g.k) != G.m:
            raise FamilyMismatchError(f"Tararin element of rank {len(g.k)} used in rank {G.m} group")


def _add_maps(f, g, shift=0):
    # f + sigma^shift g, both as sorted pair tuples
    out = dict(f)
    for i, v in g:
        j = i + shift
        w = out.get(j, 0) + v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return tuple(sorted(out.items()))


def identity(G: GroupSpec) -> GroupElement:
    if isinstance(G, FreeAbelian2):
        return Z2()
    if isinstance(G, Sol):
        return SolElt()
    if isinstance(G, Tararin):
        return TararinElt((0,) * G.m)
    if isinstance(G, WreathZZ):
        return WreathElt()
    raise FamilyMismatchError(f"unsupported group spec {G!r}")


@lru_cache(maxsize=None)
def generators(G: GroupSpec) -> tuple[GroupElement, ...]:
    """The fixed generating set (without inverses), in a fixed order."""
    if isinstance(G, FreeAbelian2):
        return (Z2((1, 0)), Z2((0, 1)))
    if isinstance(G, Sol):
        return (SolElt((1, 0), 0), SolElt((0, 1), 0), SolElt((0, 0), 1))
    if isinstance(G, Tararin):
        return tuple(TararinElt(tuple(int(i == j) for i in range(G.m))) for j in range(G.m))
    if isinstance(G, WreathZZ):
        return (WreathElt(((0, 1),), 0), WreathElt((), 1))
    raise FamilyMismatchError(f"unsupported group spec {G!r}")


@lru_cache(maxsize=None)
def symmetric_generators(G: GroupSpec) -> tuple[GroupElement, ...]:
    gens = generators(G)
    return gens + tuple(inverse(G, s) for s in gens)


def multiply(G: GroupSpec, g: GroupElement, h: GroupElement) -> GroupElement:
    """Exact product ``g*h`` in normal form."""
    _check(G, g, h)
    if isinstance(G, FreeAbelian2):
        return Z2((g.v[0] + h.v[0], g.v[1] + h.v[1]))
    if isinstance(G, Sol):
        w = mat_vec(mat_pow(G.T, g.n), h.v) if g.n else h.v
        return SolElt((g.v[0] + w[0], g.v[1] + w[1]), g.n + h.n)
    if isinstance(G, Tararin):
        # a_j^k a_i^l = a_i^((-1)^k l) a_j^k for i < j
        out = [0] * G.m
        parity = 0
        for i in range(G.m - 1, -1, -1):
            out[i] = g.k[i] + (-h.k[i] if parity else h.k[i])
            parity ^= g.k[i] & 1
        return TararinElt(tuple(out))
    return WreathElt(_add_maps(g.f, h.f, g.n), g.n + h.n)


def inverse(G: GroupSpec, g: GroupElement) -> GroupElement:
    _check(G, g)
    if isinstance(G, FreeAbelian2):
        return Z2((-g.v[0], -g.v[1]))
    if isinstance(G, Sol):
        w = mat_vec(mat_pow(G.T, -g.n), g.v)
        return SolElt((-w[0], -w[1]), -g.n)
    if isinstance(G, Tararin):
        out = [0] * G.m
        parity = 0
        for i in range(G.m - 1, -1, -1):
            out[i] = g.k[i] if parity else -g.k[i]
            parity ^= g.k[i] & 1
        return TararinElt(tuple(out))
    return WreathElt(tuple((i - g.n, -v) for i, v in g.f), -g.n)


def conjugate(G: GroupSpec, g: GroupElement, h: GroupElement) -> GroupElement:
    """``g h g^-1``."""
    return multiply(G, multiply(G, g, h), inverse(G, g))


def power(G: GroupSpec, g: GroupElement, n: int) -> GroupElement:
    if n < 0:
        g, n = inverse(G, g), -n
    result = identity(G)
    base = g
    while n:
        if n & 1:
            result = multiply(G, result, base)
        base = multiply(G, base, base)
        n >>= 1
    return result


def word_to_element(G: GroupSpec, word: Iterable[int]) -> GroupElement:
    """Evaluate a word of signed 1-based generator indices (``-2`` = inverse of the 2nd)."""
    gens = generators(G)
    g = identity(G)
    for letter in word:
        s = gens[abs(letter) - 1]
        g = multiply(G, g, s if letter > 0 else inverse(G, s))
    return g


# ---------------------------------------------------------------------------
# balls


@dataclass(frozen=True)
class Ball:
    """All elements of word length <= radius, in BFS order.

    Within a layer, elements are sorted by their normal-form key, so the
    enumeration is a pure function of ``(group, radius)``.
    """

    group: GroupSpec
    radius: int
    elements: tuple[GroupElement, ...]
    lengths: dict = field(compare=False, repr=False)
    layer_ends: tuple[int, ...] = field(compare=False, repr=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.lengths

    def layer(self, r: int) -> tuple[GroupElement, ...]:
        """Elements of word length exactly r."""
        start = self.layer_ends[r - 1] if r > 0 else 0
        return self.elements[start : self.layer_ends[r]]

    def sphere_sizes(self) -> list[int]:
        return [len(self.layer(r)) for r in range(self.radius + 1)]


def _size_estimate(G, r):
    k = len(symmetric_generators(G))
    return 1 + sum(k * (k - 1) ** (i - 1) for i in range(1, r + 1))


@lru_cache(maxsize=64)
def _layers(G: GroupSpec, r: int) -> tuple[tuple[GroupElement, ...], ...]:
    if r == 0:
        return ((identity(G),),)
    prev = _layers(G, r - 1)
    seen = set(itertools.chain.from_iterable(prev[-2:]))
    gens = symmetric_generators(G)
    new = set()
    for g in prev[-1]:
        for s in gens:
            h = multiply(G, g, s)
            if h not in seen:
                new.add(h)
    return prev + (tuple(sorted(new, key=lambda x: x.key())),)


def ball(G: GroupSpec, r: int, cap: int = DEFAULT_BALL_CAP) -> Ball:
    """Deterministic word-length ball of radius r over the fixed generators."""
    if not isinstance(r, int) or r < 0:
        raise ValueError(f"radius must be a nonnegative integer, got {r!r}")
    if r > cap:
        raise BallTooLargeError(G, r, cap, _size_estimate(G, r))
    layers = _layers(G, r)
    elements = tuple(itertools.chain.from_iterable(layers))
    lengths = {}
    ends = []
    for i, layer in enumerate(layers):
        for g in layer:
            lengths[g] = i
        ends.append((ends[-1] if ends else 0) + len(layer))
    return Ball(G, r, elements, lengths, tuple(ends))


# ---------------------------------------------------------------------------
# JSON


def element_to_json(g: GroupElement) -> dict:
    if isinstance(g, Z2):
        return {"family": "z2", "v": list(g.v)}
    if isinstance(g, SolElt):
        return {"family": "sol", "v": list(g.v), "n": g.n}
    if isinstance(g, TararinElt):
        return {"family": "tararin", "k": list(g.k)}
    if isinstance(g, WreathElt):
        return {"family": "wreath", "f": [list(p) for p in g.f], "n": g.n}
    raise TypeError(f"not a group element: {g!r}")


def element_from_json(data: dict, G: GroupSpec | None = None) -> GroupElement:
    """Parse an element; ``family`` may be omitted when G is given."""
    family = data.get("family", G.name if G is not None else None)
    if G is not None and family != G.name:
        raise FamilyMismatchError(f"element family {family!r} does not match group {G.name!r}")
    if family == "z2":
        v = tuple(int(x) for x in data["v"])
        g = Z2(v)
    elif family == "sol":
        g = SolElt(tuple(int(x) for x in data["v"]), int(data.get("n", 0)))
    elif family == "tararin":
        g = TararinElt(tuple(int(x) for x in data["k"]))
    elif family == "wreath":
        f = {}
        for i, v in data.get("f", []):
            f[int(i)] = f.get(int(i), 0) + int(v)
        g = WreathElt.from_map(f, int(data.get("n", 0)))
    else:
        raise ValueError(f"unknown element family {family!r}")
    if isinstance(g, (Z2, SolElt)) and len(g.v) != 2:
        raise ValueError(f"expected an integer pair, got {data['v']!r}")
    if G is not None:
        _check(G, g)
    return g


def group_to_json(G: GroupSpec) -> dict:
    if isinstance(G, Sol):
        return {"family": "sol", "T": [list(r) for r in G.T]}
    if isinstance(G, Tararin):
        return {"family": "tararin", "m": G.m}
    return {"family": G.name}


def group_from_json(data: dict) -> GroupSpec:
    family = data.get("family")
    if family == "z2":
        return FreeAbelian2()
    if family == "sol":
        return Sol(tuple(tuple(int(x) for x in row) for row in data["T"]))
    if family == "tararin":
        return Tararin(int(data["m"]))
    if family == "wreath":
        return WreathZZ()
    raise ValueError(f"unknown group family {family!r}")
