"""The quarter-power circle weight: an algebra whose criterion series diverges.

w(t) = t^(1/4) on [0,1) is not submultiplicative, and along the orbit of a
number alpha with very good rational approximations the criterion series has
infinitely many terms above 1/4.  The certificates below make the first two
terms rigorous with exact interval arithmetic; the convolution-ratio
enclosure shows the p=2 space is nevertheless an algebra (for an equivalent
weight).
"""

from fractions import Fraction as F

import convalg as ca

seq = ca.build_q_sequence(2)
print(f"denominators: q_1 = {seq.terms[0]}, q_2 = {seq.terms[1]}, "
      f"next term > 2^{seq.next_lower.bit_length() - 1} (growth witness)")

for n in (1, 2):
    cert = ca.check_q_fractional_bound(seq, n)
    iv = ca.q_fractional_interval(seq, n)
    print(f"  {{q_{n} alpha}}: lo = {iv.lo}, certified < 2 q_{n}/q_{n+1} "
          f"and < e^-{seq.terms[n-1] ** 2}  ({cert.payload['mode']})")

div = ca.countex_divergence_lower_bound(seq)
print(f"\neach certified series term is at least 1/4; "
      f"verified partial sum >= {div.payload['verified_partial_sum_lower']}")

print("\nthe weight fails submultiplicativity (exact 4th-power comparison):")
cert = ca.check_submultiplicative(ca.builtin_weight("circle-quarter"),
                                  pairs=[(F(1, 10), F(1, 10))])
print(f"  s = t = 1/10: {cert.verdict}  (w(1/5)^4 = 1/5 > 1/100 = (w(1/10)^2)^4)")

print("\nand its infimum vanishes at the origin:")
cert = ca.ess_inf_check(ca.builtin_weight("circle-quarter"), ca.circle_grid_window(64))
print(f"  ess-inf: {cert.verdict}  (window min {cert.payload['window_min']:.4f}, "
      f"infimum 0 as t -> 0+)")

print("\nyet u = w^-2 = t^(-1/2) has a finite convolution ratio:")
res = ca.circle_conv_ratio()
print(f"  sup (u*u)/u in [{res.sup.lo:.6f}, {res.sup.hi:.6f}]  "
      f"(grid max at t = {res.argmax:.4f})")
print(f"  so u/M is subconvolutive and the p=2 circle space is an algebra")

import math
worst = max(abs(ca.beta_segment_quadrature(k / 21.0) - math.pi) for k in range(1, 21))
print(f"\nquadrature oracle: the singular inner segment equals pi for every t;")
print(f"  largest deviation over 20 grid values: {worst:.2e}")
