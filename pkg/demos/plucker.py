"""Ramification of a plane of polynomials and the weight dictionary.

The plane spanned by x - 1/2 and x^2 comes from the critical point t = 1/2
of the sl_2 problem with two defining representations at 0 and 1.
"""
from fractions import Fraction

from bethenorm import PolynomialPlane, RootSystemA, alpha_of, fundamental_weight, ramification_at, weights_to_ramification
from bethenorm.schubert import plucker_report

plane = PolynomialPlane([[Fraction(-1, 2), 1], [0, 0, 1]], d=2)
rep = plucker_report(plane)
print("Wronskian coefficients:", [str(c) for c in rep["wronskian"]])
for row in rep["finite"]:
    print(f"  z = {row['point']}: a = {row['a']}")
print(f"  z = inf: a = {rep['infinity']}")
print(f"sum = {rep['total']}, dim Gr = {rep['dim_grassmannian']}")

sl2 = RootSystemA(1)
w1 = fundamental_weight(sl2, 1)
data = weights_to_ramification(sl2, [w1, w1], [0, 1], 2 * w1 - alpha_of(sl2, (1,)), 2)
for z, a in data.points:
    print(f"from weights at {z}: {a}  (plane: {ramification_at(plane, z)})")
