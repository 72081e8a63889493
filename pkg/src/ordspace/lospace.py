"""The space of orderings at finite scale.

Metric convention: if two orderings agree on Ball(n) but not on Ball(n+1),
their distance is ``2^-(n+1)``.  A search up to ``r_max`` that finds no
disagreement only certifies ``dist <= 2^-r_max``.

Pair checks (Conradian, bi-invariance) run over a ball, but every sign is
evaluated exactly on the full product, so no truncation is involved.  Pairs
are scanned in order of ``max(|f|, |g|)`` and then by ball position; the
first violation in that order is the reported witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .affine import CONTRACTING
from .groups import (
    Ball,
    DEFAULT_BALL_CAP,
    Sol,
    SolElt,
    Tararin,
    WreathElt,
    WreathZZ,
    ball,
    element_to_json,
    generators,
    identity,
    inverse,
    mat_pow,
    mat_vec,
    multiply,
)
from .orders import (
    SolAffine,
    TararinSigns,
    WreathOrbit,
    conjugate_order,
    enumerate_tararin,
    sign_of,
    solve_stabilizer,
    stabilizer_search_bound,
)

__all__ = [
    "Witness",
    "AgreementReport",
    "Distance",
    "CheckResult",
    "ConvergenceTerm",
    "ConvergenceReport",
    "agreement",
    "dist",
    "is_conradian_on_ball",
    "is_biinvariant_on_ball",
    "tararin_conjugation_orbits",
    "convergence_check",
    "constructed_witnesses",
    "affine_conjugate_sequence",
    "wreath_orbit_sequence",
]

# pair tables above this many entries are computed on the fly instead of cached
_PAIR_TABLE_LIMIT = 400_000


@dataclass(frozen=True)
class Witness:
    """An element (or pair) certifying a failure or a difference.

    ``expected`` and ``actual`` are the two signs that disagree; re-evaluating
    ``sign_of`` reproduces them (see :func:`recheck`).
    """

    element: object
    expected: int
    actual: int
    context: str

    def to_json(self) -> dict:
        if isinstance(self.element, tuple):
            elt = [element_to_json(x) for x in self.element]
        else:
            elt = element_to_json(self.element)
        return {"element": elt, "expected": self.expected, "actual": self.actual, "context": self.context}


@dataclass(frozen=True)
class AgreementReport:
    radius_checked: int
    agreement_radius: int
    exact: bool  # False: no disagreement found, agreement_radius is a lower bound
    first_disagreement: Optional[Witness] = None

    def describe(self) -> str:
        if self.exact:
            return f"agree on Ball({self.agreement_radius}), differ on Ball({self.agreement_radius + 1})"
        return f"agree on Ball({self.radius_checked}) (>= {self.radius_checked})"

    def to_json(self) -> dict:
        return {
            "radius_checked": self.radius_checked,
            "agreement_radius": self.agreement_radius if self.exact else f">={self.radius_checked}",
            "first_disagreement": None if self.first_disagreement is None else self.first_disagreement.to_json(),
        }


@dataclass(frozen=True, order=True)
class Distance:
    """A dyadic distance; ``exact=False`` means the value is only an upper bound."""

    value: Fraction
    exact: bool = field(default=True, compare=False)

    def __str__(self):
        k = self.value.denominator.bit_length() - 1
        return f"2^-{k}" if self.exact else f"<= 2^-{k}"


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    radius: int
    witness: Optional[Witness] = None
    pairs_checked: int = 0

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "radius": self.radius,
            "pairs_checked": self.pairs_checked,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


# ---------------------------------------------------------------------------
# agreement and distance


def agreement(G, O1, O2, r_max: int, cap: int = DEFAULT_BALL_CAP) -> AgreementReport:
    B = ball(G, r_max, cap)
    for g in B:
        s1, s2 = sign_of(G, O1, g), sign_of(G, O2, g)
        if s1 != s2:
            n = B.lengths[g] - 1
            return AgreementReport(r_max, n, True, Witness(g, s1, s2, f"first disagreement, |g| = {n + 1}"))
    return AgreementReport(r_max, r_max, False)


def dist(G, O1, O2, r_max: int, cap: int = DEFAULT_BALL_CAP) -> Distance:
    rep = agreement(G, O1, O2, r_max, cap)
    if rep.exact:
        return Distance(Fraction(1, 2 ** (rep.agreement_radius + 1)))
    return Distance(Fraction(1, 2**r_max), exact=False)


# ---------------------------------------------------------------------------
# pair checks


def _ordered_pairs(B: Ball):
    """Every ordered index pair once, by max word length, then by position."""
    for r in range(B.radius + 1):
        hi = B.layer_ends[r]
        lo = B.layer_ends[r - 1] if r else 0
        for i in range(hi):
            for j in range(max(i, lo), hi):
                yield i, j
                if i != j:
                    yield j, i


@lru_cache(maxsize=16)
def _conradian_table(G, r: int):
    # for each g: (g^-1, g^2); products are formed per pair
    B = ball(G, r)
    return B, [(inverse(G, g), multiply(G, g, g)) for g in B]


@lru_cache(maxsize=8)
def _conjugation_table(G, r: int):
    B = ball(G, r)
    invs = [inverse(G, g) for g in B]
    if len(B) ** 2 > _PAIR_TABLE_LIMIT:
        return B, invs, None
    els = B.elements
    table = {(i, j): multiply(G, multiply(G, els[j], els[i]), invs[j]) for i, j in _ordered_pairs(B)}
    return B, invs, table


def _sign_cache(G, O):
    cache = {}

    def s(g):
        v = cache.get(g)
        if v is None:
            v = cache[g] = sign_of(G, O, g)
        return v

    return s


def _tararin_profile(k):
    for i in range(len(k) - 1, -1, -1):
        if k[i]:
            return (i, 1 if k[i] > 0 else -1)
    return None


@lru_cache(maxsize=8)
def _tararin_conradian_profiles(m: int, r: int) -> dict:
    """Count pairs (f, g) of Ball(r) by the profiles of f, g and g^-1 f g^2.

    A TararinSigns sign depends only on the profile (top level, sign of the
    top exponent), so these counts decide the Conradian check for all 2^m
    orderings at once.
    """
    G = Tararin(m)
    B = ball(G, r)
    ks = [g.k for g in B]
    prof = [_tararin_profile(k) for k in ks]
    table = [(inverse(G, g).k, multiply(G, g, g).k) for g in B]
    levels = range(m - 1, -1, -1)
    counts = {}
    for i, j in _ordered_pairs(B):
        pf, pg = prof[i], prof[j]
        if pf is None or pg is None:
            continue
        f = ks[i]
        ginv, gsq = table[j]
        # c = (g^-1 f) g^2, scanned from the top level down
        pc = None
        par_g = par_x = 0
        for lvl in levels:
            x = ginv[lvl] + (-f[lvl] if par_g else f[lvl])
            c = x + (-gsq[lvl] if par_x else gsq[lvl])
            if c:
                pc = (lvl, 1 if c > 0 else -1)
                break
            par_g ^= ginv[lvl] & 1
            par_x ^= x & 1
        key = (pf, pg, pc)
        counts[key] = counts.get(key, 0) + 1
    return counts


def _tararin_conradian_fast(G, O, r: int) -> Optional[CheckResult]:
    """Pass result from the profile counts, or None if some pair fails."""
    eps = O.eps
    count = 0
    for (pf, pg, pc), n in _tararin_conradian_profiles(G.m, r).items():
        if eps[pf[0]] * pf[1] > 0 and eps[pg[0]] * pg[1] > 0:
            if pc is None or eps[pc[0]] * pc[1] < 0:
                return None
            count += n
    return CheckResult(True, r, None, count)


def is_conradian_on_ball(G, O, r: int) -> CheckResult:
    """Check ``f, g > id  =>  f g^2 > g`` (i.e. ``g^-1 f g^2 > id``) on Ball(r).

    Pairs are scanned in :func:`_ordered_pairs` order; the first failing pair
    is the witness.
    """
    if isinstance(O, TararinSigns) and isinstance(G, Tararin):
        sign_of(G, O, identity(G))  # family / rank validation
        fast = _tararin_conradian_fast(G, O, r)
        if fast is not None:
            return fast
    B, table = _conradian_table(G, r)
    sign = _sign_cache(G, O)
    positive = [sign(g) > 0 for g in B]
    els = B.elements
    count = 0
    for i, j in _ordered_pairs(B):
        if not (positive[i] and positive[j]):
            continue
        g_inv, g_sq = table[j]
        count += 1
        s = sign(multiply(G, multiply(G, g_inv, els[i]), g_sq))
        if s != 1:
            return CheckResult(
                False,
                r,
                Witness((els[i], els[j]), 1, s, "Conradian failure: sign(g^-1 f g^2) for (f, g)"),
                count,
            )
    return CheckResult(True, r, None, count)


def is_biinvariant_on_ball(G, O, r: int) -> CheckResult:
    """Check ``sign(g f g^-1) == sign(f)`` for all f, g in Ball(r)."""
    B, invs, table = _conjugation_table(G, r)
    sign = _sign_cache(G, O)
    els = B.elements
    count = 0
    for i, j in _ordered_pairs(B):
        f, g = els[i], els[j]
        c = table[i, j] if table is not None else multiply(G, multiply(G, g, f), invs[j])
        count += 1
        s_f, s_c = sign(f), sign(c)
        if s_f != s_c:
            return CheckResult(
                False, r, Witness((f, g), s_f, s_c, "bi-invariance failure: sign(f) vs sign(g f g^-1)"), count
            )
    return CheckResult(True, r, None, count)


def recheck(G, O, w: Witness) -> tuple[int, int]:
    """Recompute the signs a witness records (for pair witnesses as produced above)."""
    if w.context.startswith("Conradian"):
        f, g = w.element
        return 1, sign_of(G, O, multiply(G, multiply(G, inverse(G, g), f), multiply(G, g, g)))
    if w.context.startswith("bi-invariance"):
        f, g = w.element
        return sign_of(G, O, f), sign_of(G, O, multiply(G, multiply(G, g, f), inverse(G, g)))
    raise ValueError(f"cannot recheck witness with context {w.context!r}")


# ---------------------------------------------------------------------------
# Tararin orbits


def tararin_conjugation_orbits(m: int) -> list[list]:
    """Orbits of the conjugation action on the 2^m orderings of Tararin(m)."""
    G = Tararin(m)
    specs = enumerate_tararin(m)
    gens = generators(G)
    seen = set()
    orbits = []
    for O in specs:
        if O in seen:
            continue
        orbit = [O]
        seen.add(O)
        frontier = [O]
        while frontier:
            nxt = []
            for P in frontier:
                for a in gens:
                    Q = conjugate_order(G, P, a)
                    if Q not in seen:
                        seen.add(Q)
                        orbit.append(Q)
                        nxt.append(Q)
            frontier = nxt
        orbit.sort(key=lambda P: tuple(-e for e in P.eps))
        orbits.append(orbit)
    return orbits


# ---------------------------------------------------------------------------
# convergence


@dataclass(frozen=True)
class ConvergenceTerm:
    index: int
    required_radius: int
    agreement: AgreementReport
    agreement_ok: bool
    distinct_witness: Optional[Witness]

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "required_radius": self.required_radius,
            "agreement": self.agreement.to_json(),
            "agreement_ok": self.agreement_ok,
            "distinct_witness": None if self.distinct_witness is None else self.distinct_witness.to_json(),
        }


@dataclass(frozen=True)
class ConvergenceReport:
    terms: tuple[ConvergenceTerm, ...]

    @property
    def agreement_ok(self) -> bool:
        return all(t.agreement_ok for t in self.terms)

    @property
    def all_distinct(self) -> bool:
        return all(t.distinct_witness is not None for t in self.terms)

    @property
    def passed(self) -> bool:
        """Agreement radii met; missing distinctness witnesses are reported, not fatal."""
        return self.agreement_ok

    def to_json(self) -> dict:
        return {
            "agreement_ok": self.agreement_ok,
            "all_distinct": self.all_distinct,
            "terms": [t.to_json() for t in self.terms],
        }


def constructed_witnesses(G, target, term) -> list:
    """Family-specific candidates likely to separate ``term`` from ``target``.

    Wreath: elements ``(-delta_{n-m-1}, t^n)`` for a term based at ``delta_-m``.
    SOL affine: a generator of the stabilizer of the term's basepoint.
    Candidates are only suggestions; callers verify them with ``sign_of``.
    """
    out = []
    if isinstance(G, WreathZZ) and isinstance(term, WreathOrbit) and len(term.base) == 1:
        idx = term.base[0][0]
        m = -idx
        for n in range(1, 4):
            out.append(WreathElt(((n - m - 1, -1),), n))
    if isinstance(G, Sol) and isinstance(term, SolAffine):
        bound = stabilizer_search_bound(G.T, term.basepoint, term.lambda_choice)
        h = solve_stabilizer(G.T, term.basepoint, bound, term.lambda_choice)
        if h is not None:
            out.append(h)
    return out


def convergence_check(
    G,
    target,
    sequence: Sequence,
    r_schedule: Sequence[int],
    search_extra: int = 4,
    cap: int = DEFAULT_BALL_CAP,
) -> ConvergenceReport:
    """Check that ``sequence[n]`` agrees with ``target`` on Ball(r_schedule[n])
    and find an element on which the two differ.

    Distinctness is searched among constructed candidates first, then in
    Ball(r_schedule[n] + search_extra) (clipped to ``cap``).
    """
    if len(sequence) != len(r_schedule):
        raise ValueError("sequence and r_schedule must have equal length")
    terms = []
    for idx, (O, r) in enumerate(zip(sequence, r_schedule)):
        rep = agreement(G, target, O, r, cap)
        ok = not rep.exact
        witness = rep.first_disagreement
        if witness is None:
            for g in constructed_witnesses(G, target, O):
                s1, s2 = sign_of(G, target, g), sign_of(G, O, g)
                if s1 != s2:
                    witness = Witness(g, s1, s2, "constructed distinctness witness")
                    break
        if witness is None:
            search_r = min(r + search_extra, cap)
            if search_r > r:
                far = agreement(G, target, O, search_r, cap)
                witness = far.first_disagreement
        terms.append(ConvergenceTerm(idx, r, rep, ok, witness))
    return ConvergenceReport(tuple(terms))


def affine_conjugate_sequence(G: Sol, target: SolAffine, ks: Sequence[int]) -> list[SolAffine]:
    """Conjugates of ``target`` by translations whose basepoints approach it.

    The k-th term moves the basepoint by ``scale^-k`` (a translation number of
    an element of Z^2) towards the side on which the stabilizer's positive
    elements push points up, so the stabilizer signs are kept.
    """
    direction = 1 if target.lambda_choice != CONTRACTING else -1
    sigma = target.stab_sign if target.stab_sign is not None else 1
    side = sigma * target.orientation * direction
    out = []
    for k in ks:
        # tau(T^-k e1) = s^-k for the expanding choice, tau(T^k e1) = s^-k otherwise
        w = mat_vec(mat_pow(G.T, -k * direction), (1, 0))
        g = SolElt((-side * w[0], -side * w[1]), 0)
        out.append(conjugate_order(G, target, g))
    return out


def wreath_orbit_sequence(ms: Sequence[int], t_sign: int = 1) -> list[WreathOrbit]:
    """``WreathOrbit(delta_-m, t_sign)`` for each m."""
    return [WreathOrbit(((-m, 1),), t_sign) for m in ms]
