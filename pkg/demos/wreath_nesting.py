# Z wr Z acting on the cosets of <t>.
#
# Cosets are finitely supported maps a: Z -> Z, ordered by the sign of the
# top coefficient.  The base group element delta_k preserves the block of
# cosets that vanish above level k; conjugating by t moves level k to k+1,
# so the blocks nest like intervals I_0 < I_1 < I_2 < ...

import json

from ordspace.groups import WreathElt, WreathZZ, ball
from ordspace.lospace import agreement, convergence_check, wreath_orbit_sequence
from ordspace.orders import WreathLexTop, WreathOrbit, sign_of
from ordspace.realization import WreathCosetAction, trichotomy, wreath_nesting_tree

W = WreathZZ()
lex = WreathLexTop(1)
print("sphere sizes:", ball(W, 6).sphere_sizes())
print("sign of t:", sign_of(W, lex, WreathElt((), 1)), "  sign of delta_0^-1 t^5:",
      sign_of(W, lex, WreathElt(((0, -1),), 5)))

A = WreathCosetAction()
d0, d5, t = WreathElt(((0, 1),), 0), WreathElt(((5, 1),), 0), WreathElt((), 1)
print("delta_5 against the block of delta_0:", trichotomy(W, A, d0, d5))
print("t against the block of delta_0:      ", trichotomy(W, A, d0, t))

print(json.dumps(wreath_nesting_tree(3), indent=1))

# orbit orderings based at delta_-m converge to the lex-top ordering
for m in range(1, 6):
    rep = agreement(W, lex, WreathOrbit(((-m, 1),), 1), m + 2)
    print(f"m={m}: {rep.describe()}, first disagreement {rep.first_disagreement.element}")

ms = list(range(4, 9))
rep = convergence_check(W, lex, wreath_orbit_sequence(ms), [m - 2 for m in ms])
print("m-2 schedule met:", rep.agreement_ok, " distinct:", rep.all_distinct)
