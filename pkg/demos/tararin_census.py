# Tararin groups: finitely many orderings, all of them Conradian.
#
# Tararin(m) = <a_1..a_m | a_j a_i a_j^-1 = a_i^-1 for i < j>.  An ordering is
# a choice of sign per level; an element is signed at its top nonzero level.

from ordspace.groups import Tararin, TararinElt, ball
from ordspace.lospace import dist, is_conradian_on_ball, tararin_conjugation_orbits
from ordspace.orders import TararinSigns, conjugate_order, enumerate_tararin, sign_of

m = 3
G = Tararin(m)
specs = enumerate_tararin(m)
print(f"Tararin({m}) has {len(specs)} orderings")

g = TararinElt((5, -2, 1))  # a_1^5 a_2^-2 a_3
for O in specs[:4]:
    print("  eps =", O.eps, " sign of a1^5 a2^-2 a3 =", sign_of(G, O, g))

# conjugating by a_3 flips the signs of every level below it
O = TararinSigns((1, 1, 1))
print("conjugate of (+,+,+) by a_3:", conjugate_order(G, O, TararinElt((0, 0, 1))).eps)
print("conjugate of (+,+,+) by a_2:", conjugate_order(G, O, TararinElt((0, 1, 0))).eps)

# only the top sign survives conjugation, so there are two orbits
for i, orbit in enumerate(tararin_conjugation_orbits(m)):
    print(f"orbit {i}:", [o.eps for o in orbit])

# every ordering passes the Conradian test f, g > 1 => f g^2 > g on Ball(4)
print("Ball(4) size:", len(ball(G, 4)))
print("all Conradian at r=4:", all(is_conradian_on_ball(G, O, 4) for O in specs))

# distances: orderings differing at a generator are 1/2 apart
print("dist((+,+,+), (-,+,+)) =", dist(G, specs[0], specs[4], 5))
print("dist((+,+,+), (+,+,+)) =", dist(G, specs[0], specs[0], 5))
