"""Classifying weights through the series and integral criteria.

The same three line weights are pushed through both classifiers: the series
sum log+ w(nx)/n^2 (with certified growth bounds, never sampling) and the
integral of log+ w(t)/(1+t^2).  A character twist e^t shows how equivalent
algebras can land on different sides of the raw criterion.
"""

from fractions import Fraction as F

import convalg as ca

names = ("poly2", "poly2-exp", "poly2-exp-log")
print("weight families at x = 1:")
for name in names:
    w = ca.builtin_weight(name)
    partials = ca.domar_partial(w, F(1), 12)
    label, cert = ca.domar_classify(w, F(1))
    res = ca.beurling_integral(w, cutoff=50.0)
    print(f"  {name:<14} S_12 = {float(partials[-1]):8.4f}  series: {label:<12} "
          f"integral: {res.classification}")

print("\nexact harmonic partial sums for w = e^|t| (log+ w(n) = n):")
partials = ca.domar_partial(ca.builtin_weight("exp-abs"), F(1), 3)
print(f"  S_1, S_2, S_3 = {[str(p) for p in partials]}   (S_3 = 11/6)")

print("\nsubmultiplicativity is exact for these families:")
cert = ca.check_submultiplicative(ca.builtin_weight("exp-abs"),
                                  window=ca.line_grid_window(-3, 3, F(1, 2)))
print(f"  e^|t| on a 13-point grid, all pairs: {cert.verdict}")

print("\na real character e^t preserves the algebra but breaks the criterion:")
w1 = ca.builtin_weight("poly2")
w2 = ca.builtin_weight("poly2-exp-signed")
cert = ca.weight_equivalence(w1, w2, ca.line_grid_window(-5, 5, F(1, 2)))
print(f"  pinch on [-5,5]: C1 = {cert.payload['c1']:.3e}, C2 = {cert.payload['c2']:.3e}")
for x in (F(1), F(-1)):
    label, _ = ca.domar_classify(w2, x)
    print(f"  twisted weight at x = {x}: {label}")

print("\nalgebra weights built from the layer constructions stay polynomial:")
u = ca.pruefer_weight(2)
alg = ca.algebra_weight(ca.scale_for_b(u, 2), 2)
label, cert = ca.domar_classify(alg, ca.PrueferGroup(2).element(1, 1))
print(f"  layer algebra weight at x = 1/2: {label} "
      f"(cap {cert.payload['series_cap']:.3f})")
