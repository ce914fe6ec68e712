"""The weight on the additive rationals and its certified convolution bound.

u(q) = phi_n sigma(floor|q|) on the n-th shell of the chain (1/n!)Z, with
sigma(k) = 1/max(1,|k|)^2.  The engine certifies u*u <= 2*(8*C2)*mass * u on
a window, where C2 is a rigorous constant for the subconvolutivity of sigma.
"""

from fractions import Fraction as F

import convalg as ca

u = ca.rationals_weight()
q = u.group

print("sample values (exact rationals):")
for v in (F(0), F(1, 2), F(5, 2), F(-5, 2), F(17, 6)):
    x = q.element(v)
    print(f"  u({str(v):>5}) = {u.eval(x)}   (shell {ca.layer_of(x)}, "
          f"sigma({ca.even_floor(v)}) = {ca.sigma(ca.even_floor(v))})")

print("\nsubconvolutivity constant of sigma (sup over m of the kernel ratio):")
c2 = ca.sigma_subconvolutive_constant(200)
r0 = ca.sigma_conv_ratio(0, 200)
print(f"  ratio at m=0 in [{float(r0.lo):.9f}, {float(r0.hi):.9f}]  (= 1 + pi^4/45)")
print(f"  C2 in [{float(c2.lo):.6f}, {float(c2.hi):.6f}]")

bound = 2 * u.sub_constant * u.mass()
print(f"\ncertified bound form: u*u <= {float(bound):.3f} * u")
window = ca.rationals_ball_window(q, 3, 3)
cert = ca.check_b(u, window, ca.TruncationSpec(layer=5, ball=12), bound=bound)
print(f"  check_b on {window.name} ({len(window)} points): {cert.verdict}"
      f"  (max ratio {float(F(*map(int, cert.payload['max_ratio'].split('/')))):.3e})")

print("\npolynomial decay along an orbit, with provenance constants:")
cert = ca.check_poly_decay(u, q.element(F(1, 2)), 20)
print(f"  1/u(n/2) <= {cert.payload['constant']} * n^{cert.payload['degree']}"
      f"  verified for n = 1..20: {cert.verdict}")

w = ca.scale_for_b(u, bound)
print(f"\nafter dividing by the bound, u' is subconvolutive (scale {w.scale});")
cert = ca.check_b(w, window, ca.TruncationSpec(layer=5, ball=12))
print(f"  literal u'*u' <= u' on {window.name}: {cert.verdict}")
