"""Exact actions on ordered lines: the SOL affine action, the wreath coset
model, and the convex-jump model of lexicographic (Conradian) orderings.

Each action exposes ``apply(g, point)``, ``domains(g)`` and ``image(f, I)``,
so :func:`trichotomy` can classify the position of ``f(I)`` against a domain
``I`` of ``g``.

Verdicts:

``fixed``     f(I) == I
``disjoint``  f(I) and I do not meet
``dilation``  closure(I) inside f(I), or closure(f(I)) inside I
``crossed``   none of the above (overlap without nesting, or nesting that
              shares an endpoint)

Two elements are crossed in the wider sense used for Conradian orderings when
the verdict is anything other than ``fixed`` or ``disjoint``; see
:func:`is_crossing`.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional, Union

from .affine import EXPANDING, AffineMap, as_field, sol_affine_data, sol_affine_map
from .groups import (
    Sol,
    SolElt,
    WreathElt,
    WreathZZ,
    element_to_json,
    identity,
)
from .orders import (
    SolAffine,
    SolConrad,
    TararinSigns,
    WreathLexTop,
    WreathOrbit,
    Z2Line,
    canonical,
    coset_act,
    coset_act_inverse,
    lextop_sign,
    solve_stabilizer,
    stabilizer_search_bound,
)
from .groups import _add_maps
from .qfield import QuadExt

__all__ = [
    "FIXED",
    "DISJOINT",
    "DILATION",
    "CROSSED",
    "NoDomainError",
    "LinePoint",
    "Interval",
    "AffineAction",
    "WreathCosetAction",
    "ConvexJumpAction",
    "induced_order",
    "trichotomy",
    "domain_verdicts",
    "is_crossing",
    "translation_number",
    "action_trace_csv",
    "wreath_nesting_tree",
    "realization_for",
]

FIXED, DISJOINT, DILATION, CROSSED = "fixed", "disjoint", "dilation", "crossed"
_SEVERITY = {FIXED: 0, DISJOINT: 1, DILATION: 2, CROSSED: 3}


class NoDomainError(ValueError):
    """The element has no domain of the kind the model supports."""


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class LinePoint:
    """A point of one of the model lines: an exact real or a coset of <t>."""

    kind: str  # "exact" | "coset"
    value: object

    @classmethod
    def exact(cls, x) -> "LinePoint":
        return cls("exact", x)

    @classmethod
    def coset(cls, f) -> "LinePoint":
        if isinstance(f, dict):
            f = tuple(sorted((i, v) for i, v in f.items() if v))
        return cls("coset", tuple(f))

    def _cmp(self, other: "LinePoint") -> int:
        if not isinstance(other, LinePoint) or other.kind != self.kind:
            raise TypeError(f"cannot compare {self.kind} point with {other!r}")
        if self.kind == "exact":
            diff = self.value - other.value
            return diff.sign() if isinstance(diff, QuadExt) else (diff > 0) - (diff < 0)
        return lextop_sign(_add_maps(self.value, tuple((i, -v) for i, v in other.value)))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi) of an exact line; None encodes an infinite end."""

    lo: object = None
    hi: object = None

    def contains_closure_of(self, other: "Interval") -> bool:
        """closure(other) is a subset of self (closure taken in R)."""
        if self.lo is not None and (other.lo is None or not self.lo < other.lo):
            return False
        if self.hi is not None and (other.hi is None or not other.hi < self.hi):
            return False
        return True

    def disjoint_from(self, other: "Interval") -> bool:
        if self.hi is not None and other.lo is not None and self.hi <= other.lo:
            return True
        if other.hi is not None and self.lo is not None and other.hi <= self.lo:
            return True
        return False


def classify_intervals(I: Interval, J: Interval) -> str:
    if I == J:
        return FIXED
    if I.disjoint_from(J):
        return DISJOINT
    if J.contains_closure_of(I) or I.contains_closure_of(J):
        return DILATION
    return CROSSED


# ---------------------------------------------------------------------------
# SOL affine action


@dataclass(frozen=True)
class AffineAction:
    """``(v, t^n) . x = s^n x + <v, u>`` on Q(sqrt d), s the chosen eigenvalue."""

    group: Sol
    lambda_choice: str = EXPANDING

    @property
    def data(self):
        return sol_affine_data(self.group.T, self.lambda_choice)

    def map(self, g: SolElt) -> AffineMap:
        return sol_affine_map(self.data, g.v, g.n)

    def point(self, x) -> LinePoint:
        return LinePoint.exact(as_field(x, self.data.d))

    def apply(self, g: SolElt, p: LinePoint) -> LinePoint:
        return LinePoint.exact(self.map(g)(p.value))

    def apply_inverse(self, g: SolElt, p: LinePoint) -> LinePoint:
        return LinePoint.exact(self.map(g).inverse_apply(p.value))

    def domains(self, g: SolElt) -> list[Interval]:
        """The two half-lines of a homothety; translations have no bounded domain."""
        if g.n == 0:
            raise NoDomainError(f"{g} acts as a translation: no bounded domain")
        p = self.map(g).fixed_point()
        return [Interval(None, p), Interval(p, None)]

    def image(self, f: SolElt, I: Interval) -> Interval:
        m = self.map(f)
        return Interval(None if I.lo is None else m(I.lo), None if I.hi is None else m(I.hi))

    def classify(self, I, J) -> str:
        return classify_intervals(I, J)


# ---------------------------------------------------------------------------
# wreath coset model


@dataclass(frozen=True)
class CosetBlock:
    """The convex set ``{a : a_j == center_j for all j > level}`` of cosets."""

    center: tuple
    level: int

    @classmethod
    def make(cls, center, level):
        return cls(tuple((i, v) for i, v in center if i > level), level)

    def contains_block(self, other: "CosetBlock") -> bool:
        if other.level > self.level:
            return False
        trimmed = tuple((i, v) for i, v in other.center if i > self.level)
        return trimmed == self.center


@dataclass(frozen=True)
class WreathCosetAction:
    """Z wr Z acting on cosets of <t> (finitely supported maps) by ``f + shift^n a``.

    An element ``(f, 0)`` of H with top support index M preserves the block
    ``{a : a_j = 0 for j > M}`` around the base coset and translates inside
    it; that block is its domain.  Blocks are nested like the intervals of a
    Plante-type action, and t maps the block of level M to level M+1.
    """

    group: WreathZZ = WreathZZ()

    def point(self, a) -> LinePoint:
        return LinePoint.coset(a)

    def apply(self, g: WreathElt, p: LinePoint) -> LinePoint:
        return LinePoint.coset(coset_act(g, p.value))

    def apply_inverse(self, g: WreathElt, p: LinePoint) -> LinePoint:
        return LinePoint.coset(coset_act_inverse(g, p.value))

    def domains(self, g: WreathElt) -> list[CosetBlock]:
        if g.n != 0 or not g.f:
            raise NoDomainError(f"{g} is not a nontrivial element of the base group H")
        return [CosetBlock((), g.f[-1][0])]

    def image(self, f: WreathElt, B: CosetBlock) -> CosetBlock:
        return CosetBlock.make(coset_act(f, B.center), B.level + f.n)

    def classify(self, I: CosetBlock, J: CosetBlock) -> str:
        if I == J:
            return FIXED
        if J.contains_block(I) or I.contains_block(J):
            # a strictly smaller block has cosets of the bigger one on both sides
            return DILATION
        return DISJOINT


# ---------------------------------------------------------------------------
# convex-jump model for lexicographic orderings


@dataclass(frozen=True)
class ConvexJumpAction:
    """Realization of a lexicographic ordering through its convex series.

    For TararinSigns, SolConrad and Z2Line orderings the convex subgroups form
    a finite chain ``C_0 < C_1 < ...``.  The domain of g containing the base
    point is the convex hull of ``C^g``, the smallest convex subgroup holding
    g; ``f`` maps it onto the coset ``f C^g``, which equals ``C^g`` when f lies
    in it and is disjoint from it otherwise.
    """

    group: object
    order: object

    def level(self, g) -> int:
        O = self.order
        if isinstance(O, TararinSigns):
            for i in range(len(g.k) - 1, -1, -1):
                if g.k[i]:
                    return i + 1
            return 0
        if isinstance(O, SolConrad):
            if g.n:
                return 3
            return self._line_level(O.z2, g.v)
        if isinstance(O, Z2Line):
            return self._line_level(O, g.v)
        raise TypeError(f"no convex-jump model for {type(O).__name__}")

    @staticmethod
    def _line_level(L: Z2Line, v) -> int:
        if v == (0, 0):
            return 0
        if L.tie is not None and L.u[0] * v[0] + L.u[1] * v[1] == 0:
            return 1
        return 2

    def domains(self, g) -> list[tuple]:
        lvl = self.level(g)
        if lvl == 0:
            raise NoDomainError("the identity has no domain")
        return [("coset", lvl, True)]

    def image(self, f, D):
        _, lvl, _ = D
        return ("coset", lvl, self.level(f) <= lvl)

    def classify(self, I, J) -> str:
        return FIXED if J[2] else DISJOINT


Action = Union[AffineAction, WreathCosetAction, ConvexJumpAction]


def domain_verdicts(G, action: Action, g, f) -> list[str]:
    """Verdict for each domain of g under f."""
    return [action.classify(I, action.image(f, I)) for I in action.domains(g)]


def trichotomy(G, action: Action, g, f) -> str:
    """Position of f(I) against the domains I of g; the most severe verdict wins."""
    if f == identity(G):
        action.domains(g)  # still validates g
        return FIXED
    return max(domain_verdicts(G, action, g, f), key=_SEVERITY.__getitem__)


def is_crossing(verdict: str) -> bool:
    """True when f(I) is neither I nor disjoint from I."""
    return verdict in (DILATION, CROSSED)


# ---------------------------------------------------------------------------
# induced orderings


def _first_move(action, h, points, orientation):
    for p in points:
        s = action.apply(h, p)._cmp(p)
        if s:
            return orientation * s
    return None


def induced_order(G, action: Action, seq, stab_sign: Optional[int] = None, orientation: int = 1):
    """Ordering induced by a sequence of points: compare g(x_i) with x_i at the
    first point that g moves.

    The first point gives the basepoint; later points resolve the sign of its
    (cyclic) stabilizer.  When nothing resolves it, a supplied ``stab_sign``
    is used, else the result is the pseudo-ordering whose incomparable
    subgroup is that stabilizer.
    """
    points = [p if isinstance(p, LinePoint) else action.point(p) for p in seq]
    if not points:
        raise ValueError("seq must be nonempty")
    x0 = points[0]
    if isinstance(action, AffineAction):
        T, choice = G.T, action.lambda_choice
        bound = stabilizer_search_bound(T, x0.value, choice)
        h = solve_stabilizer(T, x0.value, bound, choice)
        if h is None:
            return SolAffine(choice, orientation, x0.value)
        resolved = _first_move(action, h, points[1:], orientation)
        if resolved is None:
            resolved = stab_sign
        if resolved is None:
            return SolAffine(choice, orientation, x0.value, None, pseudo=True)
        return SolAffine(choice, orientation, x0.value, resolved)
    if isinstance(action, WreathCosetAction):
        base = x0.value
        # the stabilizer of the coset a is generated by (a - shift(a), t)
        h = WreathElt(_add_maps(base, tuple((i + 1, -v) for i, v in base)), 1)
        resolved = _first_move(action, h, points[1:], orientation)
        if resolved is None:
            resolved = stab_sign
        if resolved is None:
            raise ValueError(
                "unresolved tie: the stabilizer of the base coset is incomparable; "
                "pass stab_sign or a second coset"
            )
        return canonical(WreathOrbit(base, resolved, orientation))
    raise TypeError(f"induced orderings are not defined for {type(action).__name__}")


# ---------------------------------------------------------------------------
# translation numbers and exports


def translation_number(T, v) -> QuadExt:
    """``<v, u>`` for the expanding left eigenvector u of T (first coordinate 1)."""
    return sol_affine_data(Sol(T).T, EXPANDING).tau(v)


def action_trace_csv(action: AffineAction, elements) -> str:
    """CSV with columns ``element,scale,offset`` (element as compact JSON)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["element", "scale", "offset"])
    for g in elements:
        m = action.map(g)
        writer.writerow([json.dumps(element_to_json(g), separators=(",", ":")), str(m.scale), str(m.offset)])
    return buf.getvalue()


def wreath_nesting_tree(depth: int) -> dict:
    """Nested domains of ``h_k = t^k delta_0 t^-k = delta_k`` for k < depth.

    The root is the outermost block (k = depth-1); each child is the domain of
    the previous conjugate, strictly inside its parent.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    action = WreathCosetAction()
    node = None
    for k in range(depth):
        h = WreathElt(((k, 1),), 0)
        (block,) = action.domains(h)
        if node is not None:
            inner = CosetBlock(tuple(map(tuple, node["block"]["center"])), node["block"]["fixed_above"])
            assert block.contains_block(inner) and block != inner
        node = {
            "element": element_to_json(h),
            "conjugator_power": k,
            "max_index": h.f[-1][0],
            "block": {"fixed_above": block.level, "center": [list(p) for p in block.center]},
            "child": node,
        }
    return {"schema": 1, "depth": depth, "tree": node}


def realization_for(G, O) -> Action:
    """The exact model in which the ordering O is induced."""
    if isinstance(O, SolAffine):
        return AffineAction(G, O.lambda_choice)
    if isinstance(O, (WreathLexTop, WreathOrbit)):
        return WreathCosetAction(G)
    return ConvexJumpAction(G, O)
