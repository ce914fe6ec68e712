"""Certificate suite over finite windows.

Checks: positivity and evenness (exact over negation-closed windows),
subconvolutivity u*u <= bound*u with truncation-tail enclosures, polynomial
decay with provenance-backed constants, submultiplicativity of algebra
weights (exact where an order transform exists), two-sided weight
equivalence, and essential-infimum reports.

Every verdict is decided pointwise against exact values or certified
enclosures; a coarse tail yields "inconclusive", never a silent pass, and a
"fails" verdict always names an exact witness.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from . import groups as G
from .certificates import (
    Certificate,
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    TruncationSpec,
    Window,
    window_info,
    worst_verdict,
)
from .convolution import conv_at
from .formulas import FormulaWeight, as_number
from .rational import format_rational
from .weights import AlgebraWeight, DirectSumWeight, LayerWeight, RationalsLayerWeight, WeightFn


def _num(x):
    """Payload scalar: rationals to "num/den" strings, floats unchanged."""
    if isinstance(x, Fraction):
        return format_rational(x)
    return x


def _point_repr(x):
    from .serialize import point_to_json
    return point_to_json(x)


# --------------------------------------------------------------------------
# Window constructors
# --------------------------------------------------------------------------

def pruefer_ball_window(group: G.PrueferGroup, layer: int) -> Window:
    points = sorted(group.subgroup_elements(layer), key=G.sort_key)
    return Window(name=f"G{layer}", points=tuple(points))

def rationals_ball_window(group: G.RationalsGroup, layer: int, radius: int) -> Window:
    points = sorted(group.ball_elements(layer, radius), key=G.sort_key)
    return Window(name=f"Q{layer}:[-{radius},{radius}]", points=tuple(points))

def circle_grid_window(resolution: int, include_zero: bool = False) -> Window:
    pts = [Fraction(k, resolution) for k in range(resolution)]
    excluded = ()
    if not include_zero:
        pts = pts[1:]
        excluded = (Fraction(0),)
    return Window(name=f"circle:1/{resolution}", points=tuple(pts), ae_excluded=excluded)

def line_grid_window(lo, hi, step) -> Window:
    lo, hi, step = Fraction(lo), Fraction(hi), Fraction(step)
    pts = []
    t = lo
    while t <= hi:
        pts.append(t)
        t += step
    return Window(name=f"line:[{lo},{hi}]:{step}", points=tuple(pts))

def sum_sample_window(group: G.SumGroup, size: int, seed: int = 0,
                      layer_cap: int = 4) -> Window:
    """Seeded sample of exactly `size` points, closed under negation.

    Points are drawn as {x, -x} pairs (order-2 points are skipped so the
    count always lands exactly); an odd size additionally holds the identity.
    """
    rng = random.Random(seed)
    chosen: dict = {}
    if size % 2 == 1:
        chosen[group.identity()] = None

    def random_point() -> G.SumPoint:
        count = len(group.summands)
        support = [j for j in range(1, count + 1) if rng.random() < 0.6]
        if not support:
            support = [rng.randrange(1, count + 1)]
        coords = {}
        for j in support:
            summand = group.summand(j)
            k = rng.randrange(1, summand.p ** layer_cap)
            coords[j] = summand.element(k, layer_cap)
        return group.point(coords)

    guard = 0
    while len(chosen) < size:
        guard += 1
        if guard > 100_000:
            raise RuntimeError("window sampling did not converge")
        x = random_point()
        nx = G.neg(x)
        if x == nx or x in chosen:
            continue
        chosen[x] = None
        chosen[nx] = None
    points = sorted(chosen, key=G.sort_key)
    return Window(name=f"sum-sample:{size}:seed{seed}", points=tuple(points))


# --------------------------------------------------------------------------
# Checks
# --------------------------------------------------------------------------

def check_b(u: WeightFn, window: Window, trunc: TruncationSpec,
            bound=Fraction(1)) -> Certificate:
    """Certify (u*u)(x) <= bound * u(x) for every x in the window.

    Literal subconvolutivity is bound=1; the raw layer constructions are
    checked against their provenance bound (2*mass, or 2*8*C2*mass).
    """
    memo: dict = {}
    inconclusive = []
    max_ratio = None
    for x in window.points:
        iv = conv_at(u, x, trunc, memo=memo, require_tail=False)
        rhs = bound * u.eval(x)
        if iv.hi is not None and iv.hi <= rhs:
            ratio = iv.hi / rhs
            if max_ratio is None or ratio > max_ratio:
                max_ratio = ratio
            continue
        if iv.lo > rhs:
            payload = {
                "bound": _num(bound),
                "conv_lower": _num(iv.lo),
                "conv_upper": _num(iv.hi) if iv.hi is not None else None,
                "rhs": _num(rhs),
            }
            return Certificate(prop="subconvolutive", verdict=FAILS, payload=payload,
                               window=window_info(window), truncation=trunc.describe(),
                               witness=_point_repr(x))
        inconclusive.append(x)
    if inconclusive:
        payload = {
            "bound": _num(bound),
            "undecided_points": [_point_repr(x) for x in inconclusive[:8]],
            "undecided_count": len(inconclusive),
            "note": "tail bound too coarse at the listed points; refine the truncation",
        }
        return Certificate(prop="subconvolutive", verdict=INCONCLUSIVE, payload=payload,
                           window=window_info(window), truncation=trunc.describe())
    payload = {"bound": _num(bound), "max_ratio": _num(max_ratio)}
    return Certificate(prop="subconvolutive", verdict=HOLDS, payload=payload,
                       window=window_info(window), truncation=trunc.describe())


def check_positivity(u: WeightFn, window: Window) -> Certificate:
    excluded = set(window.ae_excluded)
    payload: dict = {}
    if excluded:
        payload["ae_excluded"] = [_num(p) for p in window.ae_excluded]
        payload["note"] = "listed points excluded under almost-everywhere semantics"
    for x in window.points:
        if x in excluded:
            continue
        if u.eval(x) <= 0:
            payload["value"] = _num(u.eval(x))
            if isinstance(u, FormulaWeight) and as_number(x) in u.zero_points():
                payload["ae_exclusion_available"] = True
            return Certificate(prop="positivity", verdict=FAILS, payload=payload,
                               window=window_info(window), witness=_point_repr(x))
    return Certificate(prop="positivity", verdict=HOLDS, payload=payload,
                       window=window_info(window))


def check_evenness(u: WeightFn, window: Window) -> Certificate:
    for x in window.points:
        if u.eval(x) != u.eval(u.point_neg(x)):
            payload = {"value": _num(u.eval(x)), "value_at_neg": _num(u.eval(u.point_neg(x)))}
            return Certificate(prop="evenness", verdict=FAILS, payload=payload,
                               window=window_info(window), witness=_point_repr(x))
    return Certificate(prop="evenness", verdict=HOLDS, payload={},
                       window=window_info(window))


def check_parity_positivity(u: WeightFn, window: Window) -> Certificate:
    pos = check_positivity(u, window)
    even = check_evenness(u, window)
    verdict = worst_verdict([pos.verdict, even.verdict])
    witness = pos.witness if pos.verdict == FAILS else even.witness
    payload = {"positivity": pos.verdict, "evenness": even.verdict}
    payload.update({k: v for k, v in pos.payload.items() if k != "note"})
    return Certificate(prop="parity-positivity", verdict=verdict, payload=payload,
                       window=window_info(window), witness=witness)


def check_poly_decay(u: WeightFn, x, n_max: int = 12) -> Certificate:
    """Produce (C, d) with 1/u(nx) <= C n^d, provenance-backed, and verify it
    for n = 1..n_max.  Without provenance only sampled bounds are reported and
    the verdict stays inconclusive (non-rigorous)."""
    if n_max < 10:
        raise ValueError("n_max must be at least 10")
    cert = u.decay_certificate(x)
    values = []
    for n in range(1, n_max + 1):
        values.append(Fraction(1) / Fraction(u.eval(G.nmul(n, x))) if u.exact
                      else 1.0 / float(u.eval(G.nmul(n, x))))
    if cert is None:
        payload = {
            "rigorous": False,
            "sampled_max": _num(max(values)),
            "note": "no provenance decay formula; sampled bound only",
        }
        return Certificate(prop="poly-decay", verdict=INCONCLUSIVE, payload=payload,
                           witness=_point_repr(x))
    c, d = cert
    for n, v in enumerate(values, start=1):
        cap = c * Fraction(n) ** d if isinstance(c, Fraction) else float(c) * n ** d
        if v > cap:
            payload = {"constant": _num(c), "degree": d, "value": _num(v), "n": n}
            return Certificate(prop="poly-decay", verdict=FAILS, payload=payload,
                               witness=_point_repr(x))
    payload = {"constant": _num(c), "degree": d, "rigorous": True,
               "checked_up_to": n_max}
    return Certificate(prop="poly-decay", verdict=HOLDS, payload=payload,
                       witness=None, window={"name": f"orbit:{n_max}", "size": n_max})


def _submult_once(w: WeightFn, s, t) -> tuple[bool, bool]:
    """(holds, exact_mode) for one pair."""
    hook = getattr(w, "submult_exact", None)
    if hook is not None:
        verdict = hook(s, t)
        if verdict is not None:
            return verdict, True
    lhs = w.eval(w.point_add(s, t))
    rhs = w.eval(s) * w.eval(t)
    if w.exact:
        return lhs <= rhs, True
    return float(lhs) <= float(rhs), False


def check_submultiplicative(w: WeightFn, window: Optional[Window] = None,
                            pairs: Optional[Sequence[tuple]] = None,
                            mode: str = "exact", max_pairs: int = 4096,
                            seed: int = 0) -> Certificate:
    """Exact mode: verdict of w(s+t) <= w(s) w(t) per pair, witness on failure.
    Invariance mode: per s, the window maximum of w(s+t)/w(t) (a finite-sample
    stand-in for the translation norm; no essential-sup claim is made)."""
    if window is None and pairs is None:
        raise ValueError("need a window or explicit pairs")
    if pairs is None:
        pts = list(window.points)
        all_pairs = [(s, t) for s in pts for t in pts]
        if len(all_pairs) > max_pairs:
            rng = random.Random(seed)
            all_pairs = rng.sample(all_pairs, max_pairs)
        pairs = all_pairs
    info = window_info(window) if window is not None else {"name": "pairs", "size": len(pairs)}
    if mode == "invariance":
        table = []
        for s in window.points:
            best = None
            for t in window.points:
                ratio = float(w.eval(w.point_add(s, t))) / float(w.eval(t))
                best = ratio if best is None else max(best, ratio)
            table.append({"s": _point_repr(s), "max_ratio": best})
        payload = {"mode": "invariance", "per_translation_max": table,
                   "note": "finite-sample maxima; no essential-supremum claim"}
        return Certificate(prop="invariance-report", verdict=HOLDS, payload=payload,
                           window=info)
    exact_all = True
    for s, t in pairs:
        ok, exact = _submult_once(w, s, t)
        exact_all = exact_all and exact
        if not ok:
            payload = {
                "lhs": _num(w.eval(w.point_add(s, t))),
                "rhs": _num(w.eval(s) * w.eval(t)),
                "pair": [_num(as_number(s)) if not isinstance(s, G.GroupPoint) else _point_repr(s),
                         _num(as_number(t)) if not isinstance(t, G.GroupPoint) else _point_repr(t)],
                "exact_comparison": exact,
            }
            return Certificate(prop="submultiplicative", verdict=FAILS, payload=payload,
                               window=info, witness=payload["pair"])
    payload = {"pairs_checked": len(pairs), "exact_comparison": exact_all, "seed": seed}
    return Certificate(prop="submultiplicative", verdict=HOLDS, payload=payload, window=info)


def weight_equivalence(w1: WeightFn, w2: WeightFn, window: Window) -> Certificate:
    """Exact two-sided pinch C1 <= w1/w2 <= C2 over the window."""
    c1 = c2 = None
    arg1 = arg2 = None
    for x in window.points:
        ratio = w1.eval(x) / w2.eval(x) if (w1.exact and w2.exact) \
            else float(w1.eval(x)) / float(w2.eval(x))
        if c1 is None or ratio < c1:
            c1, arg1 = ratio, x
        if c2 is None or ratio > c2:
            c2, arg2 = ratio, x
    payload = {"c1": _num(c1), "c2": _num(c2),
               "argmin": _point_repr(arg1), "argmax": _point_repr(arg2)}
    return Certificate(prop="equivalence", verdict=HOLDS, payload=payload,
                       window=window_info(window))


def ess_inf_check(w: WeightFn, window: Window) -> Certificate:
    """Window minimum plus a provenance-based global verdict where available."""
    excluded = set(window.ae_excluded)
    window_min = None
    argmin = None
    for x in window.points:
        if x in excluded:
            continue
        v = w.eval(x)
        if window_min is None or v < window_min:
            window_min, argmin = v, x
    payload = {"window_min": _num(window_min), "argmin": _point_repr(argmin)}
    if isinstance(w, AlgebraWeight):
        glb = w.global_lower_bound()
        if glb is not None and glb > 0:
            payload["global_lower_bound"] = glb
            payload["source"] = "algebra weight of a bounded base"
            return Certificate(prop="ess-inf", verdict=HOLDS, payload=payload,
                               window=window_info(window))
    if isinstance(w, FormulaWeight):
        gm = w.global_min()
        if gm is not None and gm > 0:
            payload["global_lower_bound"] = gm
            return Certificate(prop="ess-inf", verdict=HOLDS, payload=payload,
                               window=window_info(window))
        if gm == 0.0:
            payload["essential_infimum"] = 0.0
            payload["note"] = "infimum approached near the origin"
            return Certificate(prop="ess-inf", verdict=FAILS, payload=payload,
                               window=window_info(window), witness="t->0+")
    if isinstance(w, (LayerWeight, RationalsLayerWeight, DirectSumWeight)):
        payload["note"] = "shell values tend to 0 along deep shells; infimum is 0"
        return Certificate(prop="ess-inf", verdict=FAILS, payload=payload,
                           window=window_info(window), witness="deep shells")
    payload["note"] = "no provenance bound; window minimum only"
    return Certificate(prop="ess-inf", verdict=INCONCLUSIVE, payload=payload,
                       window=window_info(window))
