# An affine ordering of SOL is a limit of its own conjugates.
#
# Conjugating by a translation g = (w, 0) moves the basepoint to x - tau(w).
# Choosing tau(w) = -lam^-k gives basepoints closing in on x from one side;
# the conjugates agree with the target on larger and larger balls but are
# never equal to it (a stabilizer element separates them).

from ordspace.groups import Sol
from ordspace.lospace import affine_conjugate_sequence, agreement, convergence_check, dist
from ordspace.orders import SolAffine

G = Sol(((2, 1), (1, 1)))
target = SolAffine("expanding", 1, 0, 1)
ks = list(range(1, 8))
seq = affine_conjugate_sequence(G, target, ks)

for k, O in zip(ks, seq):
    rep = agreement(G, target, O, 7)
    print(f"k={k}  basepoint {str(O.basepoint):>22s} ~ {O.basepoint.to_decimal(12):>15s}"
          f"  {rep.describe():32s} dist {dist(G, target, O, 7)}")

rep = convergence_check(G, target, seq, [max(0, k - 3) for k in ks])
print("agreement schedule met:", rep.agreement_ok)
for term in rep.terms:
    w = term.distinct_witness
    print(f"  term {term.index}: {w.element} has sign {w.expected:+d} for the target, {w.actual:+d} for the term")
