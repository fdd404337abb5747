"""A tour of exact arithmetic in the noncommutative torus algebra.

Run with: python demos/algebra_walkthrough.py
"""

from fractions import Fraction

from nctorus import TorusAlgebra, parse_element, render_element

alg = TorusAlgebra(3)
U1, U2, U3 = alg.gen(1), alg.gen(2), alg.gen(3)

print("== commutation relations ==")
print("U1*U2           =", U1 * U2)
print("U2*U1           =", U2 * U1, "   (reordering picks up q[1,2]^-1)")
print("U2*U1*U2^-1*U1^-1 =", U2 * U1 * U2.invert() * U1.invert())

print()
print("== star structure ==")
x = alg.scalar(0, 2) * U1 * U3.invert()
print("x               =", x)
print("x*              =", x.star())
print("(x*)*== x       :", x.star().star() == x)
print("x * x^-1        =", x * x.invert())

print()
print("== standard derivations ==")
y = U1 * U2 ** 3 + alg.scalar(Fraction(1, 2))
print("y               =", y)
print("d_1 y           =", y.derive(1))
print("d_2 y           =", y.derive(2))
print("d_2 respects *  :", y.star().derive(2) == y.derive(2).star())

print()
print("== parsing and canonical rendering ==")
text = "adj(U2*U1) + 1/2*i*q[1,3]^-1*U3^2"
parsed = parse_element(alg, text)
print("input           =", text)
print("normal form     =", render_element(parsed))
print("round trip      :", parse_element(alg, render_element(parsed)) == parsed)

print()
print("== commutative limit ==")
cl = TorusAlgebra(3, commutative=True)
V1, V2 = cl.gen(1), cl.gen(2)
print("V2*V1           =", V2 * V1, "   (phases collapse to 1)")
print("V1*V2 == V2*V1  :", V1 * V2 == V2 * V1)
