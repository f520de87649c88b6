"""Command-line front end.

Every subcommand prints a JSON report and exits 0 when all records pass,
1 when some record fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import diagrams as dg
from . import divisible as dv
from . import graphprod as gp
from .heg import HypothesisError, LetterAssignment, NestedSpec, higman_chain_verify, nested_levels
from .hyperbolic import (Presentation, ResourceCapError, StrategyError, WordMetric, ball, bs_presentation,
                         c16_check, delta_estimate, free_presentation, min_power_exponent, ngon_check,
                         periodic_distortion_check, surface_presentation)
from .lengths import free_length, free_um_witness
from .report import Report, guarded, record
from .reproduce import DEFAULT_SEED, run_all
from .words import FreeWord, parse_tokens, power_word


class UsageError(Exception):
    pass


# parser ------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")
    p.add_argument("--out", metavar="FILE", help="also write the JSON report to FILE")
    p.add_argument("--config", metavar="FILE", help="key=value lines supplying defaults for flags")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="slenderlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("heg", parents=[common], help="nested-word descent in a free target")
    p.add_argument("--spec", metavar="FILE", help="nested spec, lines 'W=<tokens> k=<int>'")
    p.add_argument("--images", help="letter images 'i:tokens;j:tokens' in F2 (default a_i -> a b^i)")
    p.add_argument("--recompute", action="store_true", help="replace k_p by the witness exponent")

    p = sub.add_parser("hyperbolic", parents=[common], help="Cayley-ball checks")
    p.add_argument("--presentation", metavar="FILE", help="'gens: k' then 'rel: tokens' lines")
    p.add_argument("--group", default="surface2", help="F<k>, surface<g> or BS<n> when no file is given")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--check", choices=["delta", "power", "distortion", "ngon"], default="delta")
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--theta", type=Fraction, default=Fraction(1, 2), help="distortion tolerance")
    p.add_argument("--word", help="word W for distortion / ngon (tokens)")
    p.add_argument("--s", type=int, default=2, help="power of W for distortion")
    p.add_argument("--K", type=Fraction, default=Fraction(1))
    p.add_argument("--K1", type=Fraction, default=Fraction(1))

    p = sub.add_parser("graphprod", parents=[common], help="square growth on kernel samples")
    p.add_argument("--graph", metavar="FILE", help="'vertex <id> <group>' / 'edge <id> <id>' lines")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--graphs", type=int, default=10, help="random graphs when no file is given")

    p = sub.add_parser("diagram", parents=[common], help="diagram-group counts in F")
    p.add_argument("--counterexample", type=int, metavar="N")
    p.add_argument("--power", type=int, metavar="J", help="report l(Delta^J)")
    p.add_argument("--emit", metavar="FILE", help="write Delta (or Delta^J) in diagram format")
    p.add_argument("--theta", metavar="FILE", help="replacement theta diagram")
    p.add_argument("--psi", choices=["offset", "left"], default="offset")

    p = sub.add_parser("bs", parents=[common], help="BS(1,n) arithmetic")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--word", help="word over a, b, A, B")
    p.add_argument("--roots", type=int, metavar="K", help="check (b^-K a b^K)^(n^K) = a")
    p.add_argument("--criterion", metavar="DESC", help='abelian descriptor such as "Z+Z/4"')

    p = sub.add_parser("reproduce", parents=[common], help="run every reproduction check")
    p.add_argument("--theta", metavar="FILE", help="replacement theta diagram (negative control)")

    sub.add_parser("selftest", parents=[common], help="reproduction checks with small samples")
    return parser


def _config_args(argv: list[str]) -> list[str]:
    """Splice ``--config`` key=value lines in front of the explicit flags."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        return argv
    path = Path(argv[i + 1])
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"--config: {exc}") from None
    extra = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"--config: bad line {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        flag = "--" + key.replace("_", "-") if not key.startswith("--") else key
        if value.lower() == "true":
            extra.append(flag)
        elif value.lower() != "false":
            extra += [flag, value]
    rest = argv[:i] + argv[i + 2:]
    return rest[:1] + extra + rest[1:]


# commands ----------------------------------------------------------------

def _load(flag: str, loader, path: str):
    try:
        return loader(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _group(args) -> Presentation:
    if args.presentation:
        return _load("--presentation", Presentation.load, args.presentation)
    name = args.group
    try:
        if name.startswith("F"):
            return free_presentation(int(name[1:]))
        if name.startswith("surface"):
            return surface_presentation(int(name[7:]))
        if name.startswith("BS"):
            return bs_presentation(int(name[2:]))
    except ValueError:
        pass
    raise UsageError(f"--group: unknown group {name!r}")


def cmd_hyperbolic(args, report: Report) -> None:
    P = _group(args)
    report.parameters.update(group=P.name, radius=args.radius, check=args.check)
    wit = c16_check(P)
    report.add(record("c16", "holds or no relators", {"holds": wit.holds, "max_piece": wit.max_piece,
                                                      "min_relator": wit.min_relator}, wit.holds))
    if not wit.holds:
        return
    metric = WordMetric(P)
    if args.check == "delta":
        rep = delta_estimate(ball(metric, args.radius), seed=args.seed)
        report.add(record("delta", "finite (recorded)", {"delta": rep.delta, "exhaustive": rep.exhaustive,
                                                         "witness": [str(FreeWord(w)) for w in rep.witness]}, True))
        if not P.relators:
            report.add(record("free_delta", 0, rep.delta))
    elif args.check == "power":
        N = min_power_exponent(ball(metric, args.radius), args.nmax)
        report.add(record("min_power_exponent", f"<= {args.nmax}", N, N is not None))
    else:
        default = "a0 a1" if not P.relators else "a0 a2"
        W = FreeWord(parse_tokens(args.word or default))
        report.parameters["word"] = str(W)
        if args.check == "distortion":
            rep = periodic_distortion_check(metric, W, args.s, args.theta)
            report.parameters.update(s=args.s, theta=args.theta)
            report.add(record("min_ratio", f">= {1 - args.theta}", rep.min_ratio, rep.passed),
                       record("cyclically_minimal", True, rep.cyclically_minimal))
        else:
            pts = [power_word(W, i) for i in range(4)]
            rep = ngon_check(metric, pts, args.K, args.K1)
            report.parameters.update(K=args.K, K1=args.K1)
            report.add(record("hypothesis", "recorded", {"geometric": rep.geometric_hypothesis,
                                                         "constant_margins": list(rep.constant_margins)}, True),
                       record("line_to_side", f"<= {2 * rep.K}", rep.line_to_side, rep.line_to_side <= 2 * rep.K),
                       record("side_to_line", f"<= {14 * rep.delta}", rep.side_to_line,
                              rep.side_to_line <= 14 * rep.delta))


def _parse_images(text: str | None, indices) -> dict[int, FreeWord]:
    if not text:
        return {i: FreeWord((1,) + (2,) * i) for i in indices}
    out = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        i, _, w = part.partition(":")
        out[int(i)] = FreeWord(parse_tokens(w))
    return out


def cmd_heg(args, report: Report) -> None:
    if args.spec:
        spec = _load("--spec", NestedSpec.load, args.spec)
    else:
        spec = NestedSpec.parse("W=a1 k=1\nW=a2 k=1\nW=a3 k=1\n")
        args.recompute = True
    indices = sorted({abs(c) - 1 for w, _ in spec.entries for c in w.letters})
    phi = LetterAssignment(_parse_images(args.images, indices), free_length(), free_um_witness())
    report.parameters.update(depth=spec.depth, recompute=args.recompute,
                             images={i: str(phi.images[i]) for i in indices if i in phi.images})
    try:
        rep = higman_chain_verify(spec, phi, recompute=args.recompute)
    except HypothesisError as exc:
        report.add(record("hypothesis", "phi(W_p) != 1", str(exc), False))
        return
    report.add(record("exponents", "K_(r_p+1)" if rep.exponents_match_witness else "as given",
                      list(rep.exponents), True),
               record("lengths", "l(U_(p-1)) >= l(U_p) + 1", list(rep.lengths), rep.passed),
               record("forced_trivial_index", "recorded", rep.forced_trivial_index, True))
    if not args.recompute:
        report.add(record("exponents_match_witness", True, rep.exponents_match_witness))
    report.add(record("word_length_U0", "recorded", len(nested_levels(spec)[0]), True))


def cmd_graphprod(args, report: Report) -> None:
    rng = random.Random(args.seed)
    if args.graph:
        graphs = [_load("--graph", gp.GraphProduct.load, args.graph)]
    else:
        graphs = []
        while len(graphs) < args.graphs:
            G = gp.random_graph_product(rng)
            n = len(G.groups)
            if len(G.edges) < n * (n - 1) // 2:
                graphs.append(G)
    report.parameters.update(samples=args.samples, graphs=len(graphs))
    total = growth = identity = errors = 0
    for G in graphs:
        for s in gp.sample_kernel(G, rng.randrange(2 ** 31), args.samples):
            if not s.nontrivial:
                continue
            total += 1
            try:
                res = gp.square_growth_check(G, s.word)
            except gp.DecompositionError:
                errors += 1
                continue
            growth += not res.grows
            identity += not res.identity_holds
    report.add(record("nontrivial_kernel_samples", "recorded", total, True),
               record("no_square_growth", 0, growth),
               record("identity_failures", 0, identity),
               record("decomposition_errors", 0, errors))


def _theta(path: str | None) -> dg.Diagram | None:
    if not path:
        return None
    return _load("--theta", dg.load, path)


def cmd_diagram(args, report: Report) -> None:
    th = _theta(args.theta)
    if args.counterexample is None:
        from .reproduce import family_counts
        report.add(*guarded("family_counts", lambda: family_counts(th)))
        return
    n = args.counterexample
    if n < 2:
        raise UsageError("--counterexample: n must be at least 2")
    report.parameters.update(n=n, psi=args.psi)
    p, delta, rep = dg.make_counterexample(n, th, args.psi)
    report.parameters.update(k=p.k, k1=p.k1, k2=p.k2, m=p.m)
    report.add(
        record("length", p.closed_form_length, rep.reduced_length),
        record("built_delta_reduced", rep.length, rep.reduced_length),
        record("power_shorter", f"< {rep.reduced_length}", rep.power_length, rep.power_length < rep.reduced_length),
        record("power_within_stated_bound", f"<= {p.claimed_bound}", rep.power_length,
               rep.power_length <= p.claimed_bound),
        record("chi_power_cells", 2 * n * n, rep.chi_power_cells),
        record("chi_power_cells_recount", 2 * n * n + 4 * n - 4, rep.chi_power_cells),
    )
    out = delta
    if args.power is not None:
        out = dg.d_power(delta, args.power)
        report.parameters["power"] = args.power
        report.add(record("power_length", "recorded", out.cells, True))
    if args.emit:
        dg.save(out, args.emit)
        report.parameters["emit"] = args.emit


def cmd_bs(args, report: Report) -> None:
    n = args.base
    if n < 2:
        raise UsageError("--base: must be at least 2")
    report.parameters["base"] = n
    a, b = dv.bs_a(n), dv.bs_b(n)
    report.add(record("defining_relation", str(dv.bs_power(a, n)),
                      str(dv.bs_mul(dv.bs_mul(b, a), dv.bs_inverse(b)))))
    if args.word:
        try:
            g = dv.parse_bs_word(args.word, n)
        except ValueError as exc:
            raise UsageError(f"--word: {exc}") from None
        report.parameters["word"] = args.word
        report.add(record("element", "recorded", {"t": g.t, "r": str(g.r), "q": dv.retraction_q(g)}, True))
    if args.roots is not None:
        x, ok = dv.root_witness(n, args.roots)
        report.parameters["roots"] = args.roots
        report.add(record(f"root_{n}^{args.roots}", f"x^{n ** args.roots} = a", f"x = {x}", ok))
    if args.criterion:
        try:
            A = dv.AbelianDescriptor.parse(args.criterion)
        except ValueError as exc:
            raise UsageError(f"--criterion: {exc}") from None
        v = dv.slender_criterion(A)
        report.parameters["criterion"] = str(A)
        report.add(record("slender", "recorded", {"slender": v.slender, "torsion_free": v.torsion_free,
                                                  "reduced": v.reduced, "reasons": list(v.reasons)}, True))


COMMANDS = {
    "heg": cmd_heg,
    "hyperbolic": cmd_hyperbolic,
    "graphprod": cmd_graphprod,
    "diagram": cmd_diagram,
    "bs": cmd_bs,
}


def run(argv: list[str] | None = None) -> tuple[Report | None, int]:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_config_args(argv))
    except UsageError as exc:
        print(f"slenderlab: error: {exc}", file=sys.stderr)
        return None, 2
    except SystemExit as exc:  # argparse already printed the message
        return None, int(exc.code or 0)
    try:
        if args.command == "reproduce":
            report = run_all(args.seed, _theta(args.theta))
        elif args.command == "selftest":
            report = run_all(args.seed, quick=True)
        else:
            report = Report(args.command, {"seed": args.seed})
            COMMANDS[args.command](args, report)
    except (UsageError, OSError) as exc:
        print(f"slenderlab: error: {exc}", file=sys.stderr)
        return None, 2
    except (ValueError, StrategyError, ResourceCapError, dg.DiagramError) as exc:
        report = Report(args.command, {"seed": args.seed})
        report.add(record("error", "no error", f"{type(exc).__name__}: {exc}", False))
    text = report.to_json()
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    return report, 0 if report.passed else 1


def main(argv: list[str] | None = None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
