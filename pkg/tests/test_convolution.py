import concurrent.futures
from fractions import Fraction as F

import pytest

import convalg as ca
from convalg import groups as G
from convalg.convolution import TailUnavailableError

P2 = G.PrueferGroup(2)
P3 = G.PrueferGroup(3)


def brute_layer_conv(p, x, cutoff):
    """Independent oracle: exact sum over the cutoff subgroup plus the exact
    geometric remainder (every omitted pair sits in a common shell j>cutoff,
    contributing |U_j| phi_j^2 = ((p-1)/p)(4p)^-j, summed in closed form)."""
    g = G.PrueferGroup(p)
    phi = lambda n: F(1, (2 * p) ** n)
    total = F(0)
    for y in g.subgroup_elements(cutoff):
        total += phi(G.layer_of(y)) * phi(G.layer_of(G.sub(x, y)))
    tail = F(p - 1, p) * F(1, (4 * p) ** (cutoff + 1)) / (1 - F(1, 4 * p))
    return total, tail


def test_pruefer_conv_zero_exact():
    u = ca.pruefer_weight(2)
    assert ca.conv_exact(u, P2.identity()) == F(15, 112)
    partial, tail = brute_layer_conv(2, P2.identity(), 9)
    assert partial + tail == F(15, 112)


def test_pruefer_conv_truncated_interval():
    u = ca.pruefer_weight(2)
    iv = ca.conv_at(u, P2.identity(), ca.TruncationSpec(layer=3))
    assert iv.lo == F(137, 1024)
    assert iv.hi - iv.lo == F(1, 7168)
    assert iv.hi == F(15, 112)


@pytest.mark.parametrize("p,k,n", [(2, 0, 0), (2, 1, 1), (2, 1, 2), (2, 3, 3), (3, 0, 0), (3, 1, 1), (3, 2, 2)])
def test_pruefer_conv_matches_brute_oracle(p, k, n):
    g = G.PrueferGroup(p)
    u = ca.pruefer_weight(p)
    x = g.element(k, n)
    partial, tail = brute_layer_conv(p, x, 8)
    exact = ca.conv_exact(u, x)
    assert exact == partial + tail
    iv = ca.conv_at(u, x, ca.TruncationSpec(layer=6))
    assert iv.hi == exact
    assert iv.lo <= exact


def test_pruefer_conv_frozen_values():
    u2, u3 = ca.pruefer_weight(2), ca.pruefer_weight(3)
    assert ca.conv_exact(u2, P2.element(1, 2)) == F(57, 896)
    assert ca.conv_exact(u2, P2.element(1, 1)) == F(15, 112)
    assert ca.conv_exact(u3, P3.identity()) == F(35, 396)


def test_conv_scaling_is_quadratic():
    u = ca.pruefer_weight(2)
    w = ca.scale_for_b(u, 2)
    assert ca.conv_exact(w, P2.identity()) == ca.conv_exact(u, P2.identity()) / 4


def test_conv_requires_reachable_cutoff():
    u = ca.pruefer_weight(2)
    with pytest.raises(ValueError):
        ca.conv_at(u, P2.element(1, 5), ca.TruncationSpec(layer=3))


def test_conv_tail_unavailable_for_broken_weight():
    w = ca.nested_finite_weight(P2, ca.broken_increasing_phi(), unchecked=True)
    with pytest.raises(TailUnavailableError):
        ca.conv_at(w, P2.identity(), ca.TruncationSpec(layer=4))
    iv = ca.conv_at(w, P2.identity(), ca.TruncationSpec(layer=4), require_tail=False)
    assert iv.hi is None
    assert iv.lo >= 8  # already far above u(0) = 2


def test_conv_rejects_algebra_weights():
    u = ca.pruefer_weight(2)
    w = ca.algebra_weight(ca.scale_for_b(u, 2), 2)
    with pytest.raises(TailUnavailableError):
        ca.conv_at(w, P2.identity(), ca.TruncationSpec(layer=4))


def brute_rationals_conv(u, q, layer, radius):
    total = F(0)
    for r in u.group.ball_elements(layer, radius):
        total += u.eval(r) * u.eval(G.sub(q, r))
    return total


def test_rationals_conv_interval_contains_refinements():
    u = ca.rationals_weight()
    g = u.group
    for value in (F(0), F(1, 2), F(5, 2)):
        q = g.element(value)
        iv = ca.conv_at(u, q, ca.TruncationSpec(layer=4, ball=8))
        bigger = brute_rationals_conv(u, q, 5, 16)
        assert iv.lo <= bigger <= iv.hi


def test_rationals_conv_refinement_is_monotone():
    u = ca.rationals_weight()
    q = u.group.element(F(1, 2))
    coarse = ca.conv_at(u, q, ca.TruncationSpec(layer=4, ball=8))
    fine = ca.conv_at(u, q, ca.TruncationSpec(layer=5, ball=12))
    assert coarse.lo <= fine.lo
    assert fine.hi <= coarse.hi


def scaled(p):
    u = ca.pruefer_weight(p)
    return ca.scale_for_b(u, 2 * u.mass())


def test_sum_conv_matches_brute_force():
    w = ca.direct_sum_weight((scaled(2), scaled(3)))
    g = w.group
    x = g.point({1: P2.element(1, 2)})
    exact = ca.conv_exact(w, x)
    partials = []
    for cap in (2, 3, 4):
        total = F(0)
        for a in P2.subgroup_elements(cap):
            for b in P3.subgroup_elements(cap):
                y = g.point({1: a, 2: b})
                total += w.eval(y) * w.eval(G.sub(x, y))
        partials.append(total)
    assert partials == sorted(partials)  # monotone in the truncation box
    assert all(p <= exact for p in partials)
    # the remainder after the cap-4 box is tiny: every omitted point has a
    # coordinate beyond shell 4, and the per-shell masses are geometric
    assert exact - partials[-1] < F(1, 10 ** 6)
    iv = ca.conv_at(w, x, ca.TruncationSpec(per_summand=(6, 6)))
    assert iv.hi == exact


def test_sum_conv_identity_and_trivial_group():
    w0 = ca.direct_sum_weight(())
    g0 = w0.group
    assert ca.conv_exact(w0, g0.identity()) == w0.eval(g0.identity()) ** 2
    w = ca.direct_sum_weight((scaled(2),))
    assert ca.conv_exact(w, w.group.identity()) is not None


def test_euclidean_conv_closed_form():
    import math
    u = ca.euclidean_weight(1)
    R1 = G.RealGroup(1)
    assert ca.euclidean_conv_value(u, R1.element([0.0])) == pytest.approx(math.pi / 2)
    t = 3.0
    assert ca.euclidean_conv_value(u, R1.element([t])) == pytest.approx(2 * math.pi / (4 + t * t))


def test_conv_concurrent_calls_are_deterministic():
    u = ca.rationals_weight()
    window = u.group.ball_elements(2, 3)
    trunc = ca.TruncationSpec(layer=4, ball=8)
    sequential = [ca.conv_at(u, x, trunc) for x in window]
    with concurrent.futures.ThreadPoolExecutor(max_workers=4) as pool:
        concurrent_r = list(pool.map(lambda x: ca.conv_at(u, x, trunc), window))
    assert sequential == concurrent_r
