"""Finite descriptions of left-orderings (and pseudo-orderings) with a sign oracle.

Every ``OrderSpec`` is an immutable description; ``sign_of(G, O, g)`` returns
+1, -1 or 0 according to whether ``g`` is positive, negative or (only for the
identity, or for the incomparable subgroup of a pseudo-ordering) neither.

Conventions fixed here:

* ``Z2Line(u, tie)``: g = v is positive iff <v, u> > 0; on the line <v,u> = 0
  (only when u has rational slope) the sign is ``tie.sign * sign(k)`` for
  ``v = k * tie.convex_generator``.
* ``SolConrad(z2, t_sign)``: lexicographic with H = Z^2 convex: elements
  outside H are signed by ``t_sign * sign(n)``, elements of H by ``z2``.
* ``SolAffine``: induced from the affine action (see :mod:`ordspace.affine`)
  at ``basepoint``; ``orientation`` reverses the line.  The stabilizer of the
  basepoint is cyclic and signed by ``stab_sign * sign(n)``.
* ``TararinSigns(eps)``: ``eps[i] * sign(k[i])`` at the top nonzero level.
* ``WreathLexTop`` / ``WreathOrbit``: G acts on cosets of <t>, identified with
  finitely supported maps a, by ``(f, n) . a = f + shift^n a``; cosets are
  ordered by the sign of the top (largest index) coefficient.  The orbit
  ordering compares ``g.a`` with ``a``; ties (g in the stabilizer of a, a
  conjugate of <t>) are signed by ``t_sign * sign(n)``.

The four "affine branches" are labelled by ``(lambda_choice, orientation)``
in lexicographic order: (contracting, -1), (contracting, +1),
(expanding, -1), (expanding, +1).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from . import affine
from .affine import CONTRACTING, EXPANDING, LAMBDA_CHOICES, as_field, sol_affine_data
from .groups import (
    FamilyMismatchError,
    FreeAbelian2,
    Sol,
    SolElt,
    Tararin,
    TararinElt,
    WreathElt,
    WreathZZ,
    Z2,
    mat_pow,
    mat_vec,
    _add_maps,
)
from .qfield import QuadExt, hyperbolic_eigendata, parse_rational, sign as qsign

__all__ = [
    "Tie",
    "Z2Line",
    "SolConrad",
    "SolAffine",
    "TararinSigns",
    "WreathLexTop",
    "WreathOrbit",
    "OrderSpec",
    "InvalidOrderError",
    "MissingStabSignError",
    "AFFINE_BRANCHES",
    "sign_of",
    "flip",
    "conjugate_order",
    "canonical",
    "enumerate_tararin",
    "sol_biorders",
    "solve_stabilizer",
    "stabilizer_search_bound",
    "validate_order",
    "is_pseudo",
    "order_to_json",
    "order_from_json",
    "canonical_json",
    "coset_act",
    "coset_act_inverse",
    "lextop_sign",
]

AFFINE_BRANCHES = tuple(itertools.product((CONTRACTING, EXPANDING), (-1, 1)))


class InvalidOrderError(ValueError):
    """An OrderSpec is malformed or does not fit the group."""


class MissingStabSignError(InvalidOrderError):
    """A SolAffine spec met a stabilizer element but carries no stab_sign."""


def _pm(x, what):
    if x not in (1, -1):
        raise InvalidOrderError(f"{what} must be +1 or -1, got {x!r}")
    return int(x)


def _num(x):
    # canonical scalar: Fraction for rationals, QuadExt otherwise
    if isinstance(x, QuadExt):
        return x.a if x.is_rational() else x
    return parse_rational(x)


# ---------------------------------------------------------------------------
# Z^2 lines


@dataclass(frozen=True)
class Tie:
    convex_generator: tuple[int, int]
    sign: int


@dataclass(frozen=True)
class Z2Line:
    """Half-plane ordering of Z^2 with normal covector ``u``.

    ``u`` is rescaled by a positive factor so its first nonzero coordinate is
    +-1.  A rational slope requires ``tie`` (the ordering on the line itself);
    an irrational slope forbids it.
    """

    u: tuple
    tie: Optional[Tie] = None

    def __post_init__(self):
        u1, u2 = (_num(c) for c in self.u)
        if not u1 and not u2:
            raise InvalidOrderError("covector must be nonzero")
        lead = u1 if u1 else u2
        scale = abs(lead)
        u1, u2 = _num(u1 / scale), _num(u2 / scale)
        object.__setattr__(self, "u", (u1, u2))
        kernel = self.kernel_generator()
        tie = self.tie
        if kernel is None:
            if tie is not None:
                raise InvalidOrderError("irrational slope: tie data must be absent")
            return
        if tie is None:
            raise InvalidOrderError(f"rational slope: tie required on the line spanned by {kernel}")
        c = tuple(int(x) for x in tie.convex_generator)
        s = _pm(tie.sign, "tie sign")
        if c == kernel:
            pass
        elif c == (-kernel[0], -kernel[1]):
            s = -s
        else:
            raise InvalidOrderError(f"tie generator {c} is not a primitive vector on the line {kernel}")
        object.__setattr__(self, "tie", Tie(kernel, s))

    def kernel_generator(self) -> Optional[tuple[int, int]]:
        """Primitive integer c with <c, u> = 0 (first nonzero coord > 0), or None."""
        u1, u2 = self.u
        if not u1:
            return (1, 0)
        r = u2 / u1
        if isinstance(r, QuadExt):
            if not r.is_rational():
                return None
            r = r.a
        # v1 + v2 r = 0  ->  v = (-r, 1) scaled
        v1, v2 = -r.numerator, r.denominator
        g = gcd(v1, v2)
        v1, v2 = v1 // g, v2 // g
        if v1 < 0 or (v1 == 0 and v2 < 0):
            v1, v2 = -v1, -v2
        return (v1, v2)

    def has_rational_slope(self) -> bool:
        return self.tie is not None

    def sign(self, v) -> int:
        ip = self.u[0] * v[0] + self.u[1] * v[1]
        s = qsign(ip)
        if s or self.tie is None:
            return s
        c = self.tie.convex_generator
        k = v[0] * c[0] + v[1] * c[1]
        return self.tie.sign * ((k > 0) - (k < 0))

    def transformed(self, A) -> "Z2Line":
        """Line of the ordering ``v -> sign(A v)``: covector A^T u, tie generator A^-1 c."""
        (a, b), (c, d) = A
        u1, u2 = self.u
        u = (u1 * a + u2 * c, u1 * b + u2 * d)
        tie = None
        if self.tie is not None:
            inv = ((d, -b), (-c, a))
            tie = Tie(mat_vec(inv, self.tie.convex_generator), self.tie.sign)
        return Z2Line(u, tie)


@dataclass(frozen=True)
class SolConrad:
    z2: Z2Line
    t_sign: int

    def __post_init__(self):
        _pm(self.t_sign, "t_sign")


@dataclass(frozen=True)
class SolAffine:
    lambda_choice: str
    orientation: int
    basepoint: object
    stab_sign: Optional[int] = None
    pseudo: bool = False

    def __post_init__(self):
        if self.lambda_choice not in LAMBDA_CHOICES:
            raise InvalidOrderError(f"lambda_choice must be one of {LAMBDA_CHOICES}")
        _pm(self.orientation, "orientation")
        object.__setattr__(self, "basepoint", _num(self.basepoint))
        if self.pseudo and self.stab_sign is not None:
            raise InvalidOrderError("a pseudo-ordering carries no stab_sign")
        if self.stab_sign is not None:
            _pm(self.stab_sign, "stab_sign")

    @property
    def branch(self) -> int:
        """Index 0..3 of the affine branch (see module docstring)."""
        return AFFINE_BRANCHES.index((self.lambda_choice, self.orientation))


@dataclass(frozen=True)
class TararinSigns:
    eps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "eps", tuple(_pm(e, "eps entry") for e in self.eps))
        if not self.eps:
            raise InvalidOrderError("eps must be nonempty")


@dataclass(frozen=True)
class WreathLexTop:
    t_sign: int
    orientation: int = 1

    def __post_init__(self):
        _pm(self.t_sign, "t_sign")
        _pm(self.orientation, "orientation")


@dataclass(frozen=True)
class WreathOrbit:
    base: tuple[tuple[int, int], ...]
    t_sign: int
    orientation: int = 1

    def __post_init__(self):
        if isinstance(self.base, dict):
            items = self.base.items()
        else:
            items = self.base
        acc = {}
        for i, v in items:
            acc[int(i)] = acc.get(int(i), 0) + int(v)
        object.__setattr__(self, "base", tuple(sorted((i, v) for i, v in acc.items() if v)))
        _pm(self.t_sign, "t_sign")
        _pm(self.orientation, "orientation")


OrderSpec = Union[Z2Line, SolConrad, SolAffine, TararinSigns, WreathLexTop, WreathOrbit]

_FAMILY_GROUP = {
    Z2Line: FreeAbelian2,
    SolConrad: Sol,
    SolAffine: Sol,
    TararinSigns: Tararin,
    WreathLexTop: WreathZZ,
    WreathOrbit: WreathZZ,
}


def _check_fit(G, O):
    expected = _FAMILY_GROUP.get(type(O))
    if expected is None:
        raise InvalidOrderError(f"not an OrderSpec: {O!r}")
    if not isinstance(G, expected):
        raise FamilyMismatchError(f"{type(O).__name__} does not order {G.name}")
    if isinstance(O, TararinSigns) and len(O.eps) != G.m:
        raise FamilyMismatchError(f"eps has length {len(O.eps)}, group has rank {G.m}")


# ---------------------------------------------------------------------------
# wreath coset model


def lextop_sign(f) -> int:
    """Sign of the coefficient at the maximal support index (0 for f = 0)."""
    if not f:
        return 0
    v = f[-1][1]
    return 1 if v > 0 else -1


def coset_act(g: WreathElt, a):
    """``g . a = f + shift^n a`` on cosets of <t>."""
    return _add_maps(g.f, a, g.n)


def coset_act_inverse(g: WreathElt, a):
    """``g^-1 . a = shift^-n (a - f)``."""
    neg = tuple((i, -v) for i, v in g.f)
    return tuple((i - g.n, v) for i, v in _add_maps(a, neg))


# ---------------------------------------------------------------------------
# sign oracle


def sign_of(G, O: OrderSpec, g) -> int:
    """Exact sign of g under the (pseudo-)ordering O."""
    _check_fit(G, O)
    if isinstance(O, Z2Line):
        if type(g) is not Z2:
            raise FamilyMismatchError(f"{type(g).__name__} is not an element of z2")
        return O.sign(g.v)
    if isinstance(G, Sol) and type(g) is not SolElt:
        raise FamilyMismatchError(f"{type(g).__name__} is not an element of sol")
    if isinstance(O, SolConrad):
        if g.n:
            return O.t_sign if g.n > 0 else -O.t_sign
        return O.z2.sign(g.v)
    if isinstance(O, SolAffine):
        data = sol_affine_data(G.T, O.lambda_choice)
        x = as_field(O.basepoint, data.d)
        s = affine.displacement(data, g.v, g.n, x).sign()
        if s:
            return O.orientation * s
        if g.n == 0:  # tau is injective on Z^2
            return 0
        if O.stab_sign is None:
            if O.pseudo:
                return 0
            raise MissingStabSignError(
                f"{g} fixes the basepoint {O.basepoint} but the spec has no stab_sign"
            )
        return O.stab_sign if g.n > 0 else -O.stab_sign
    if isinstance(O, TararinSigns):
        if type(g) is not TararinElt or len(g.k) != len(O.eps):
            raise FamilyMismatchError(f"{g!r} is not an element of Tararin({len(O.eps)})")
        for i in range(len(g.k) - 1, -1, -1):
            if g.k[i]:
                return O.eps[i] if g.k[i] > 0 else -O.eps[i]
        return 0
    if type(g) is not WreathElt:
        raise FamilyMismatchError(f"{type(g).__name__} is not an element of wreath")
    if isinstance(O, WreathLexTop):
        diff = g.f
    else:
        diff = _add_maps(coset_act(g, O.base), tuple((i, -v) for i, v in O.base))
    if diff:
        return O.orientation * lextop_sign(diff)
    if g.n:
        return O.t_sign if g.n > 0 else -O.t_sign
    return 0


def is_pseudo(O: OrderSpec) -> bool:
    return isinstance(O, SolAffine) and O.pseudo


# ---------------------------------------------------------------------------
# flips, conjugation, canonical form


def canonical(O: OrderSpec) -> OrderSpec:
    """Canonical representative; WreathOrbit at the zero coset becomes WreathLexTop."""
    if isinstance(O, WreathOrbit) and not O.base:
        return WreathLexTop(O.t_sign, O.orientation)
    return O


def flip(O: OrderSpec) -> OrderSpec:
    """The opposite ordering: every sign negated."""
    if isinstance(O, Z2Line):
        tie = None if O.tie is None else Tie(O.tie.convex_generator, -O.tie.sign)
        return Z2Line((-O.u[0], -O.u[1]), tie)
    if isinstance(O, SolConrad):
        return SolConrad(flip(O.z2), -O.t_sign)
    if isinstance(O, SolAffine):
        return replace(
            O,
            orientation=-O.orientation,
            stab_sign=None if O.stab_sign is None else -O.stab_sign,
        )
    if isinstance(O, TararinSigns):
        return TararinSigns(tuple(-e for e in O.eps))
    if isinstance(O, WreathLexTop):
        return WreathLexTop(-O.t_sign, -O.orientation)
    if isinstance(O, WreathOrbit):
        return canonical(WreathOrbit(O.base, -O.t_sign, -O.orientation))
    raise InvalidOrderError(f"not an OrderSpec: {O!r}")


def conjugate_order(G, O: OrderSpec, g) -> OrderSpec:
    """The spec O' with ``sign_of(O', f) == sign_of(O, g f g^-1)`` for all f."""
    _check_fit(G, O)
    if isinstance(O, Z2Line):
        return O
    if isinstance(O, SolConrad):
        if not g.n:
            return O
        return SolConrad(O.z2.transformed(mat_pow(G.T, g.n)), O.t_sign)
    if isinstance(O, SolAffine):
        data = sol_affine_data(G.T, O.lambda_choice)
        x = as_field(O.basepoint, data.d)
        new_x = affine.sol_affine_map(data, g.v, g.n).inverse_apply(x)
        return replace(O, basepoint=new_x)
    if isinstance(O, TararinSigns):
        eps = list(O.eps)
        parity = 0
        for i in range(len(eps) - 1, -1, -1):
            if parity:
                eps[i] = -eps[i]
            parity ^= g.k[i] & 1
        return TararinSigns(tuple(eps))
    base = () if isinstance(O, WreathLexTop) else O.base
    return canonical(WreathOrbit(coset_act_inverse(g, base), O.t_sign, O.orientation))


# ---------------------------------------------------------------------------
# constructors


def enumerate_tararin(m: int) -> list[TararinSigns]:
    """All 2^m orderings of Tararin(m); eps vectors in lexicographic order, + before -."""
    if not isinstance(m, int) or not 1 <= m <= 10:
        raise ValueError(f"m must be in 1..10, got {m!r}")
    return [TararinSigns(eps) for eps in itertools.product((1, -1), repeat=m)]


def sol_biorders(T) -> list[SolConrad]:
    """The eight bi-orderings of SOL: eigen-covector x line side x sign of t."""
    lam, u = hyperbolic_eigendata(T)
    covectors = (u, (u[0].conjugate(), u[1].conjugate()))
    out = []
    for cov in covectors:
        for side in (1, -1):
            for t_sign in (1, -1):
                out.append(SolConrad(Z2Line((side * cov[0], side * cov[1])), t_sign))
    return out


def affine_branch_endpoints(T, lambda_choice: str, orientation: int) -> tuple[SolConrad, SolConrad]:
    """Bi-orders approached by ``SolAffine(lambda_choice, orientation, x)`` as x -> -inf and x -> +inf.

    For large |x| the t-power dominates ``(s^n - 1) x``, so the limit is
    lexicographic with covector ``orientation * u`` on Z^2.
    """
    _, u = hyperbolic_eigendata(T)
    if lambda_choice == CONTRACTING:
        u = (u[0].conjugate(), u[1].conjugate())
    L = Z2Line((orientation * u[0], orientation * u[1]))
    up = 1 if lambda_choice == EXPANDING else -1
    return SolConrad(L, -orientation * up), SolConrad(L, orientation * up)


def solve_stabilizer(T, x, search_bound: int, lambda_choice: str = EXPANDING) -> Optional[SolElt]:
    """Nontrivial ``(v, t^n)`` with ``0 < n <= search_bound`` fixing x, or None.

    For each n, ``lambda^n x + tau(v) = x`` is solved exactly for v over
    Q(sqrt d); the first integral solution is returned (it generates the
    stabilizer when the search starts from n = 1).  None means only that no
    stabilizer element exists with ``|n| <= search_bound``.
    """
    if search_bound < 1:
        raise ValueError("search_bound must be >= 1")
    data = sol_affine_data(Sol(T).T, lambda_choice)
    x = as_field(x, data.d)
    y = data.u[1]
    for n in range(1, search_bound + 1):
        target = (1 - data.scale_pow(n)) * x  # = tau(v) = v1 + v2 * y
        v2 = target.b / y.b
        v1 = target.a - v2 * y.a
        if v1.denominator == 1 and v2.denominator == 1:
            return SolElt((int(v1), int(v2)), n)
    return None


def stabilizer_search_bound(T, x, lambda_choice: str = EXPANDING) -> int:
    """A bound that makes :func:`solve_stabilizer` a complete decision for x.

    Writing ``x = c1 + c2*y`` (rational c), multiplication by the scale acts on
    c through T, and ``(v, n)`` fixes x iff ``T^n c = c mod Z^2``.  If k is
    the common denominator of c, the orbit of c mod Z^2 has at most k^2
    points, so the minimal n is at most k^2.
    """
    data = sol_affine_data(Sol(T).T, lambda_choice)
    c1, c2 = data.coordinates(x)
    k = c1.denominator * c2.denominator // gcd(c1.denominator, c2.denominator)
    return max(1, k * k)


@dataclass(frozen=True)
class Validation:
    ok: bool
    message: str
    search_bound: Optional[int] = None
    stabilizer: object = None


def validate_order(G, O: OrderSpec) -> Validation:
    """Full consistency check of O against G; SolAffine records the search bound used."""
    try:
        _check_fit(G, O)
    except (FamilyMismatchError, InvalidOrderError) as exc:
        return Validation(False, str(exc))
    if not isinstance(O, SolAffine):
        return Validation(True, "ok")
    try:
        bound = stabilizer_search_bound(G.T, O.basepoint, O.lambda_choice)
        stab = solve_stabilizer(G.T, O.basepoint, bound, O.lambda_choice)
    except ValueError as exc:
        return Validation(False, str(exc))
    if stab is None and O.stab_sign is not None:
        return Validation(False, "stab_sign given but the basepoint has trivial stabilizer", bound)
    if stab is not None and O.stab_sign is None and not O.pseudo:
        return Validation(False, f"basepoint is fixed by {stab}; stab_sign required", bound, stab)
    return Validation(True, "ok", bound, stab)


# ---------------------------------------------------------------------------
# JSON


def _scalar_json(x):
    if isinstance(x, QuadExt):
        return x.to_json()
    return {"a": str(Fraction(x)), "b": "0"}


def _scalar_from_json(data):
    if isinstance(data, dict):
        if data.get("d") is None or parse_rational(data.get("b", "0")) == 0:
            return parse_rational(data["a"])
        return QuadExt.from_json(data)
    return parse_rational(data)


def _line_json(L: Z2Line) -> dict:
    out = {"family": "z2_line", "u": [_scalar_json(c) for c in L.u]}
    if L.tie is not None:
        out["tie"] = {"convex_generator": list(L.tie.convex_generator), "sign": L.tie.sign}
    return out


def _line_from_json(data) -> Z2Line:
    tie = data.get("tie")
    if tie is not None:
        tie = Tie(tuple(int(c) for c in tie["convex_generator"]), int(tie["sign"]))
    return Z2Line(tuple(_scalar_from_json(c) for c in data["u"]), tie)


def order_to_json(O: OrderSpec) -> dict:
    O = canonical(O)
    if isinstance(O, Z2Line):
        return _line_json(O)
    if isinstance(O, SolConrad):
        return {"family": "sol_conrad", "z2": _line_json(O.z2), "t_sign": O.t_sign}
    if isinstance(O, SolAffine):
        out = {
            "family": "sol_affine",
            "lambda_choice": O.lambda_choice,
            "orientation": O.orientation,
            "basepoint": _scalar_json(O.basepoint),
            "stab_sign": O.stab_sign,
        }
        if O.pseudo:
            out["pseudo"] = True
        return out
    if isinstance(O, TararinSigns):
        return {"family": "tararin_signs", "eps": list(O.eps)}
    if isinstance(O, WreathLexTop):
        return {"family": "wreath_lextop", "t_sign": O.t_sign, "orientation": O.orientation}
    if isinstance(O, WreathOrbit):
        return {
            "family": "wreath_orbit",
            "base": [list(p) for p in O.base],
            "t_sign": O.t_sign,
            "orientation": O.orientation,
        }
    raise InvalidOrderError(f"not an OrderSpec: {O!r}")


def order_from_json(data: dict) -> OrderSpec:
    family = data.get("family")
    try:
        if family == "z2_line":
            return _line_from_json(data)
        if family == "sol_conrad":
            return SolConrad(_line_from_json(data["z2"]), int(data["t_sign"]))
        if family == "sol_affine":
            stab = data.get("stab_sign")
            return SolAffine(
                data["lambda_choice"],
                int(data["orientation"]),
                _scalar_from_json(data["basepoint"]),
                None if stab is None else int(stab),
                bool(data.get("pseudo", False)),
            )
        if family == "tararin_signs":
            return TararinSigns(tuple(int(e) for e in data["eps"]))
        if family == "wreath_lextop":
            return WreathLexTop(int(data["t_sign"]), int(data.get("orientation", 1)))
        if family == "wreath_orbit":
            return canonical(
                WreathOrbit(
                    tuple((int(i), int(v)) for i, v in data["base"]),
                    int(data["t_sign"]),
                    int(data.get("orientation", 1)),
                )
            )
    except (KeyError, TypeError) as exc:
        raise InvalidOrderError(f"malformed {family} spec: {exc}") from exc
    raise InvalidOrderError(f"unknown order family {family!r}")


def canonical_json(O: OrderSpec) -> str:
    """Byte-stable serialization; equal specs give equal strings."""
    return json.dumps(order_to_json(O), sort_keys=True, separators=(",", ":"))
