"""Command-line front end.

Subcommands: construct, verify, domar, beurling, countex, equivalence, report.
Outputs are versioned JSON (weight provenance, certificate bundles) and CSV
series tables.  Exit codes: 0 all certificates hold, 1 a certificate fails,
2 invalid parameters, 3 inconclusive results.  All sampling is seeded and the
seed is recorded; rerunning a command reproduces byte-identical files apart
from the optional timestamp field (suppress it with --no-timestamp).

The environment variable CONVALG_PRECISION (decimal digits, default 9) sets
the default quadrature tolerance.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import groups as G
from .certificates import FAILS, HOLDS, INCONCLUSIVE, TruncationSpec, Window
from .certify import (
    check_b,
    check_evenness,
    check_poly_decay,
    check_positivity,
    ess_inf_check,
    check_submultiplicative,
    line_grid_window,
    pruefer_ball_window,
    rationals_ball_window,
    sum_sample_window,
    weight_equivalence,
)
from .domar import domar_classify, domar_partial
from .formulas import BUILTIN_NAMES, builtin_weight
from .quadrature import QuadratureSpec, beurling_integral, circle_conv_ratio, line_conv_ratio
from .rational import format_rational, parse_rational
from .sequences import (
    build_q_sequence,
    check_q_fractional_bound,
    countex_divergence_lower_bound,
    q_fractional_interval,
)
from .serialize import (
    BUNDLE_SCHEMA,
    canonical_dumps,
    certificate_to_json,
    weight_from_provenance,
    weight_to_provenance,
)
from .weights import (
    AlgebraWeight,
    DirectSumWeight,
    LayerWeight,
    RationalsLayerWeight,
    algebra_weight,
    broken_increasing_phi,
    nested_finite_weight,
    pruefer_weight,
    rationals_weight,
    scale_for_b,
)

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _default_spec() -> QuadratureSpec:
    digits = int(os.environ.get("CONVALG_PRECISION", "9"))
    return QuadratureSpec(tol=10.0 ** -digits)


def _exit_for(verdicts: list[str]) -> int:
    if FAILS in verdicts:
        return EXIT_FAILS
    if INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _print_table(certs) -> None:
    width = max(len(c.prop) for c in certs) + 2
    for c in certs:
        note = ""
        if c.verdict == FAILS and c.witness is not None:
            note = f"witness={c.witness}"
        elif c.verdict == INCONCLUSIVE:
            note = c.payload.get("note", "")
        print(f"  {c.prop:<{width}} {c.verdict:<14} {note}")


def _write_bundle(path: Path, weight_prov: dict | None, certs, timestamp: bool) -> None:
    bundle = {
        "schema": BUNDLE_SCHEMA,
        "certificates": [certificate_to_json(c) for c in certs],
    }
    if weight_prov is not None:
        bundle["weight"] = weight_prov
    if timestamp:
        bundle["generated_at"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_dumps(bundle))


# --------------------------------------------------------------------------
# construct
# --------------------------------------------------------------------------

def _build_weight(args) -> tuple:
    """Returns (weight, mass_note)."""
    spec = args.group
    if spec.startswith("pruefer:"):
        p = int(spec.split(":", 1)[1])
        if args.phi == "broken":
            w = nested_finite_weight(G.PrueferGroup(p), broken_increasing_phi(), unchecked=True)
            return w, "uncertified (negative control)"
        u = pruefer_weight(p)
        mass = u.mass()
        w = u if args.raw else scale_for_b(u, 2 * mass)
        return w, format_rational(mass)
    if spec == "rationals":
        u = rationals_weight(G.RationalsGroup(args.chain))
        mass = u.mass()
        w = u if args.raw else scale_for_b(u, 2 * u.sub_constant * mass)
        return w, format_rational(mass)
    if spec == "sum":
        if not args.summands:
            raise ValueError("--summands is required for --group sum")
        summands = []
        for part in args.summands.split(","):
            if not part.startswith("pruefer:"):
                raise ValueError(f"unsupported summand {part!r}")
            p = int(part.split(":", 1)[1])
            u = pruefer_weight(p)
            summands.append(scale_for_b(u, 2 * u.mass()))
        from .weights import direct_sum_weight
        w = direct_sum_weight(tuple(summands))
        return w, "1 (per-summand, after rescale)"
    raise ValueError(f"unknown group spec {spec!r}")


def cmd_construct(args) -> int:
    try:
        w, mass_note = _build_weight(args)
        if args.p is not None:
            w = algebra_weight(w, Fraction(args.p))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    prov = weight_to_provenance(w)
    out = Path(args.out) if args.out else Path("weight.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(canonical_dumps(prov))
    print(f"construction: {w.construction}")
    print(f"mass:         {mass_note}")
    print(f"scale:        {prov['scale']}")
    print(f"exact:        {w.exact}")
    print(f"wrote {out}")
    return EXIT_OK


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------

def _default_window_trunc(w) -> tuple[Window, TruncationSpec, object]:
    if isinstance(w, AlgebraWeight):
        window, trunc, decay_x = _default_window_trunc(w.base)
        return window, trunc, decay_x
    if isinstance(w, LayerWeight):
        window = pruefer_ball_window(w.group, 4)
        trunc = TruncationSpec(layer=8)
        decay_x = w.group.element(1, 1)
    elif isinstance(w, RationalsLayerWeight):
        window = rationals_ball_window(w.group, 3, 3)
        trunc = TruncationSpec(layer=5, ball=12)
        decay_x = w.group.element(Fraction(1, 2))
    elif isinstance(w, DirectSumWeight):
        window = sum_sample_window(w.group, 200, seed=0)
        trunc = TruncationSpec(per_summand=(6,) * len(w.summands))
        decay_x = w.group.point({1: w.group.summand(1).element(1, 1)})
    else:
        raise ValueError("verify supports the layer, rationals, direct-sum and "
                         "algebra constructions")
    return window, trunc, decay_x


def _parse_window(w, spec: str) -> Window:
    if spec.startswith("G"):
        return pruefer_ball_window(w.group, int(spec[1:]))
    if spec.startswith("Q"):
        layer, radius = spec[1:].split(":")
        return rationals_ball_window(w.group, int(layer), int(radius))
    if spec.startswith("sample:"):
        parts = spec.split(":")
        size = int(parts[1])
        seed = int(parts[2]) if len(parts) > 2 else 0
        cap = int(parts[3]) if len(parts) > 3 else 4
        return sum_sample_window(w.group, size, seed=seed, layer_cap=cap)
    raise ValueError(f"cannot parse window spec {spec!r}")


def _parse_trunc(spec: str) -> TruncationSpec:
    layer = ball = None
    per = None
    for part in spec.split(","):
        part = part.strip()
        if part.startswith("N"):
            layer = int(part[1:])
        elif part.startswith("B"):
            ball = int(part[1:])
        elif part.startswith("L"):
            per = tuple(int(v) for v in part[1:].split("/"))
        else:
            raise ValueError(f"cannot parse truncation part {part!r}")
    return TruncationSpec(layer=layer, ball=ball, per_summand=per)


def cmd_verify(args) -> int:
    try:
        prov = json.loads(Path(args.weight).read_text())
        w = weight_from_provenance(prov)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot load weight: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        window, trunc, decay_x = _default_window_trunc(w)
        if args.window:
            window = _parse_window(w, args.window)
        if args.trunc:
            trunc = _parse_trunc(args.trunc)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    suites = ["a", "b", "c", "d"] if args.suite == "all" else args.suite.split(",")
    certs = []
    if args.bound is not None:
        bound = parse_rational(args.bound)
    else:
        b = w.b_bound
        bound = Fraction(1) if (b is not None and b <= 1) else (b if b is not None else Fraction(1))
    algebra = isinstance(w, AlgebraWeight)
    try:
        for letter in suites:
            letter = letter.strip()
            if letter == "a":
                certs.append(check_positivity(w, window).with_id("a:positivity"))
            elif letter == "b":
                # for algebra weights w = u^(-1/q) the product condition is
                # submultiplicativity, checked exactly through the base weight
                if algebra:
                    certs.append(check_submultiplicative(w, window=window)
                                 .with_id("b:submultiplicative"))
                else:
                    certs.append(check_b(w, window, trunc, bound=bound)
                                 .with_id("b:subconvolutive"))
            elif letter == "c":
                certs.append(check_evenness(w, window).with_id("c:evenness"))
            elif letter == "d":
                if algebra:
                    certs.append(ess_inf_check(w, window).with_id("d:ess-inf"))
                else:
                    certs.append(check_poly_decay(w, decay_x, 12).with_id("d:poly-decay"))
            else:
                print(f"error: unknown suite {letter!r}", file=sys.stderr)
                return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"verified {w.construction} weight on window {window.name} ({len(window)} points)")
    _print_table(certs)
    if args.out:
        _write_bundle(Path(args.out), prov, certs, timestamp=not args.no_timestamp)
        print(f"wrote {args.out}")
    return _exit_for([c.verdict for c in certs])


# --------------------------------------------------------------------------
# domar / beurling
# --------------------------------------------------------------------------

def _load_builtin(spec: str):
    if not spec.startswith("builtin:"):
        raise ValueError("expected --weight builtin:NAME")
    name = spec.split(":", 1)[1]
    if name not in BUILTIN_NAMES:
        raise ValueError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return builtin_weight(name)


def cmd_domar(args) -> int:
    try:
        w = _load_builtin(args.weight)
        x = parse_rational(args.x)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    partials = domar_partial(w, x, args.N)
    label, cert = domar_classify(w, x)
    rows = []
    for n, s in enumerate(partials, start=1):
        value = format_rational(s) if isinstance(s, Fraction) else repr(float(s))
        rows.append({"n": n, "partial_sum": value,
                     "partial_sum_float": float(s)})
    if args.csv:
        path = Path(args.csv)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=["n", "partial_sum", "partial_sum_float"])
            writer.writeheader()
            writer.writerows(rows)
        print(f"wrote {path}")
    else:
        print("n,partial_sum,partial_sum_float")
        for row in rows:
            print(f"{row['n']},{row['partial_sum']},{row['partial_sum_float']}")
    print(f"classification: {label.capitalize()}")
    return EXIT_OK


def cmd_beurling(args) -> int:
    try:
        w = _load_builtin(args.weight)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    spec = _default_spec()
    rows = []
    for cutoff in (args.T / 4, args.T / 2, args.T):
        res = beurling_integral(w, cutoff=cutoff, spec=spec)
        rows.append({"cutoff": cutoff, "integral_lo": res.integral.lo,
                     "integral_hi": res.integral.hi})
    result = beurling_integral(w, cutoff=args.T, spec=spec)
    if args.csv:
        path = Path(args.csv)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=["cutoff", "integral_lo", "integral_hi"])
            writer.writeheader()
            writer.writerows(rows)
        print(f"wrote {path}")
    else:
        print("cutoff,integral_lo,integral_hi")
        for row in rows:
            print(f"{row['cutoff']},{row['integral_lo']},{row['integral_hi']}")
    print(f"classification: {result.classification}")
    return EXIT_OK


# --------------------------------------------------------------------------
# countex / equivalence / report
# --------------------------------------------------------------------------

def cmd_countex(args) -> int:
    try:
        seq = build_q_sequence(args.depth)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"q sequence (depth {args.depth}): {list(seq.terms)}"
          f" + next term > 2^{seq.next_lower.bit_length() - 1}")
    certs = []
    for n in range(1, len(seq.terms) + 1):
        cert = check_q_fractional_bound(seq, n)
        certs.append(cert)
        iv = q_fractional_interval(seq, n)
        lo = format_rational(iv.lo)
        print(f"  {{q_{n} alpha}}: lo {lo}, certified < 2q_{n}/q_{n+1} and < e^-{seq.terms[n-1]**2} "
              f"({cert.payload['mode']})")
    div = countex_divergence_lower_bound(seq)
    certs.append(div)
    print(f"  per-term divergence bounds >= 1/4; verified partial sum >= "
          f"{div.payload['verified_partial_sum_lower']}")
    ratio = circle_conv_ratio(_default_spec())
    certs.append(ratio.certificate)
    print(f"  circle conv ratio sup M in [{ratio.sup.lo:.6f}, {ratio.sup.hi:.6f}] (finite)")
    if args.out:
        _write_bundle(Path(args.out), None, certs, timestamp=not args.no_timestamp)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_equivalence(args) -> int:
    try:
        w1 = _load_builtin(args.weight1)
        w2 = _load_builtin(args.weight2)
        lo, hi, step = (parse_rational(v) for v in args.grid.split(":"))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    window = line_grid_window(lo, hi, step)
    cert = weight_equivalence(w1, w2, window)
    print(f"window {window.name}: C1 = {cert.payload['c1']}, C2 = {cert.payload['c2']}")
    if args.out:
        _write_bundle(Path(args.out), None, [cert], timestamp=not args.no_timestamp)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_report(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    certs = []

    u2 = pruefer_weight(2)
    w2 = scale_for_b(u2, 2 * u2.mass())
    window = pruefer_ball_window(u2.group, 4)
    trunc = TruncationSpec(layer=8)
    certs.append(check_positivity(w2, window).with_id("pruefer2:a"))
    certs.append(check_b(w2, window, trunc).with_id("pruefer2:b"))
    certs.append(check_evenness(w2, window).with_id("pruefer2:c"))
    certs.append(check_poly_decay(w2, u2.group.element(1, 1), 12).with_id("pruefer2:d"))
    certs.append(ess_inf_check(algebra_weight(w2, 2), window).with_id("pruefer2:essinf"))

    uq = rationals_weight()
    wq = scale_for_b(uq, 2 * uq.sub_constant * uq.mass())
    qwindow = rationals_ball_window(uq.group, 3, 3)
    qtrunc = TruncationSpec(layer=5, ball=12)
    certs.append(check_positivity(wq, qwindow).with_id("rationals:a"))
    certs.append(check_b(wq, qwindow, qtrunc).with_id("rationals:b"))
    certs.append(check_evenness(wq, qwindow).with_id("rationals:c"))
    certs.append(check_poly_decay(wq, uq.group.element(Fraction(1, 2)), 12).with_id("rationals:d"))

    from .weights import direct_sum_weight
    summands = []
    for p in (2, 3, 2):
        u = pruefer_weight(p)
        summands.append(scale_for_b(u, 2 * u.mass()))
    ws = direct_sum_weight(tuple(summands))
    swindow = sum_sample_window(ws.group, 200, seed=args.seed)
    strunc = TruncationSpec(per_summand=(6, 6, 6))
    certs.append(check_positivity(ws, swindow).with_id("sum:a"))
    certs.append(check_b(ws, swindow, strunc).with_id("sum:b"))
    certs.append(check_evenness(ws, swindow).with_id("sum:c"))

    domar_rows = []
    for name in ("poly2", "poly2-exp", "poly2-exp-log"):
        w = builtin_weight(name)
        label, cert = domar_classify(w, Fraction(1))
        certs.append(cert.with_id(f"domar:{name}"))
        partials = domar_partial(w, Fraction(1), 12)
        domar_rows.append({"weight": name, "classification": label,
                           "partial_12": float(partials[-1])})
        res = beurling_integral(w, cutoff=50.0, spec=_default_spec())
        certs.append(res.certificate.with_id(f"beurling:{name}"))

    seq = build_q_sequence(2)
    for n in (1, 2):
        certs.append(check_q_fractional_bound(seq, n).with_id(f"countex:frac{n}"))
    certs.append(countex_divergence_lower_bound(seq).with_id("countex:divergence"))
    ratio = circle_conv_ratio(_default_spec())
    certs.append(ratio.certificate.with_id("countex:conv-ratio"))
    line = line_conv_ratio(_default_spec())
    certs.append(line.certificate.with_id("euclidean:conv-ratio"))

    _write_bundle(out_dir / "certificates.json", None, certs, timestamp=not args.no_timestamp)
    with (out_dir / "summary.csv").open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["id", "property", "verdict"])
        writer.writeheader()
        for c in certs:
            writer.writerow({"id": c.cert_id, "property": c.prop, "verdict": c.verdict})
    with (out_dir / "domar.csv").open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["weight", "classification", "partial_12"])
        writer.writeheader()
        writer.writerows(domar_rows)
    print(f"wrote {out_dir}/certificates.json, summary.csv, domar.csv (seed {args.seed})")
    _print_table(certs)
    # domar/beurling certificates are classifications (a "fails" there records a
    # certified divergent example, not a broken construction); they do not gate exit
    gating = [c.verdict for c in certs if c.prop not in ("domar", "beurling")]
    return _exit_for(gating)


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convalg",
        description="Construct subconvolutive weights on abelian groups and "
                    "emit machine-checkable certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a weight and write its provenance JSON")
    c.add_argument("--group", required=True, help="pruefer:P | rationals | sum")
    c.add_argument("--chain", default="factorial", help="subgroup chain for the rationals")
    c.add_argument("--summands", default=None, help="comma list, e.g. pruefer:2,pruefer:3")
    c.add_argument("--phi", default="default", choices=["default", "broken"],
                   help="'broken' builds the increasing-shell negative control")
    c.add_argument("--raw", action="store_true", help="skip the subconvolutivity rescale")
    c.add_argument("--p", default=None, help="also raise to the algebra weight u^(-1/q)")
    c.add_argument("--out", default="weight.json")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="run certificate suites against a weight file")
    v.add_argument("weight", help="weight provenance JSON")
    v.add_argument("--suite", default="all",
                   help="comma list from a,b,c,d or 'all' (a positivity, b "
                        "subconvolutivity -- submultiplicativity for algebra "
                        "weights, c evenness, d decay -- ess-inf for algebra weights)")
    v.add_argument("--window", default=None, help="G4 | Q3:3 | sample:200:SEED:CAP")
    v.add_argument("--trunc", default=None, help="N8 | N5,B12 | L6/6/6")
    v.add_argument("--bound", default=None,
                   help="rational bound for the b-suite (default: the weight's certificate)")
    v.add_argument("--out", default=None, help="certificate bundle JSON path")
    v.add_argument("--no-timestamp", action="store_true")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("domar", help="partial sums and classification of the criterion series")
    d.add_argument("--weight", required=True, help="builtin:NAME")
    d.add_argument("--x", default="1", help="orbit generator (rational)")
    d.add_argument("--N", type=int, default=20)
    d.add_argument("--csv", default=None)
    d.set_defaults(func=cmd_domar)

    b = sub.add_parser("beurling", help="the log+ w / (1+t^2) integral and classification")
    b.add_argument("--weight", required=True, help="builtin:NAME")
    b.add_argument("--T", type=float, default=50.0)
    b.add_argument("--csv", default=None)
    b.set_defaults(func=cmd_beurling)

    x = sub.add_parser("countex", help="the quarter-power circle counterexample report")
    x.add_argument("--depth", type=int, default=2)
    x.add_argument("--out", default=None)
    x.add_argument("--no-timestamp", action="store_true")
    x.set_defaults(func=cmd_countex)

    e = sub.add_parser("equivalence", help="two-sided pinch of two builtin weights on a grid")
    e.add_argument("--weight1", required=True)
    e.add_argument("--weight2", required=True)
    e.add_argument("--grid", default="-5:5:1/2",
                   help="lo:hi:step (rationals); use --grid=-5:5:1/2 for negative lows")
    e.add_argument("--out", default=None)
    e.add_argument("--no-timestamp", action="store_true")
    e.set_defaults(func=cmd_equivalence)

    r = sub.add_parser("report", help="run the standard suites and emit JSON + CSV")
    r.add_argument("--out", required=True, help="output directory")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--no-timestamp", action="store_true")
    r.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
