# The orderings of SOL = Z^2 x|_T Z for T = [[2,1],[1,1]].
#
# Two kinds: lexicographic ones with Z^2 convex (Conradian), and orderings
# induced by the affine action (v, t^n) . x = lam^n x + <v, u>.

from fractions import Fraction

from ordspace.groups import Sol, SolElt, ball
from ordspace.lospace import agreement, is_biinvariant_on_ball, is_conradian_on_ball
from ordspace.orders import (
    AFFINE_BRANCHES,
    SolAffine,
    SolConrad,
    Tie,
    Z2Line,
    affine_branch_endpoints,
    sign_of,
    sol_biorders,
    solve_stabilizer,
    stabilizer_search_bound,
)
from ordspace.qfield import hyperbolic_eigendata
from ordspace.realization import AffineAction, realization_for, trichotomy, is_crossing

T = ((2, 1), (1, 1))
G = Sol(T)
lam, u = hyperbolic_eigendata(T)
print("lambda =", lam, "~", lam.to_decimal(20))
print("left eigenvector u =", tuple(map(str, u)))

# -- bi-orderings: eigen-covector x side x sign of t
bi = sol_biorders(T)
print(len(bi), "bi-orderings; all bi-invariant on Ball(4):", all(is_biinvariant_on_ball(G, O, 4) for O in bi))

# a rational covector is moved by T, so conjugation changes the ordering
O = SolConrad(Z2Line((1, 0), Tie((0, 1), 1)), 1)
res = is_biinvariant_on_ball(G, O, 4)
print("covector (1,0): bi-invariant?", res.passed, " witness (f, g):", res.witness.element)
print("  ...but Conradian:", is_conradian_on_ball(G, O, 4).passed)

# -- affine orderings
A = AffineAction(G, "expanding")
print("phi(t) =", A.map(SolElt((0, 0), 1)).to_json())
x = Fraction(1, 3)
h = solve_stabilizer(T, x, stabilizer_search_bound(T, x))
print("stabilizer of 1/3:", h, " (phi(h) fixes 1/3:", A.map(h)(x) == x, ")")

O = SolAffine("expanding", 1, 0, 1)
res = is_conradian_on_ball(G, O, 6)
print("affine order at 0 Conradian?", res.passed, " witness:", res.witness.element)

# crossings: t fixes 0 and the translation e1 pushes (0, inf) into itself
print("trichotomy(t, e1):", trichotomy(G, realization_for(G, O), SolElt((0, 0), 1), SolElt((1, 0), 0)))
print("is a crossing:", is_crossing(trichotomy(G, A, SolElt((0, 0), 1), SolElt((1, 0), 0))))

# -- each affine line is compactified by two bi-orderings
for choice, o in AFFINE_BRANCHES:
    lo, hi = affine_branch_endpoints(T, choice, o)
    r_lo = agreement(G, SolAffine(choice, o, -1000, 1), lo, 5).agreement_radius
    r_hi = agreement(G, SolAffine(choice, o, 1000, 1), hi, 5).agreement_radius
    print(f"branch {choice:11s} {o:+d}: x=-1000 agrees with its endpoint on Ball({r_lo}), x=+1000 on Ball({r_hi})")

print("signs of the generators under the affine order at 0:",
      [sign_of(G, O, g) for g in ball(G, 1).layer(1)])
