"""The numbered reproduction checks, each returning report records.

``reproduce`` runs all of them; ``selftest`` runs the same checks with
smaller random samples.
"""

from __future__ import annotations

import random

from . import diagrams as dg
from . import divisible as dv
from . import graphprod as gp
from .heg import LetterAssignment, NestedSpec, higman_chain_verify
from .hyperbolic import (ball, c16_check, dehn_reduce, delta_estimate, free_presentation,
                         min_power_exponent, power_grows, surface_presentation)
from .lengths import free_length, free_um_witness, um_check
from .report import Record, Report, guarded, record
from .words import FreeWord, letter

DEFAULT_SEED = 20240917


def family_counts(theta: dg.Diagram | None = None, mmax: int = 10) -> list[Record]:
    th = dg.theta() if theta is None else theta
    out = [record("theta_cells", 4, th.cells)]
    expected = [2 + 2 * m for m in range(1, mmax + 1)]

    def powers():
        return [record("theta_power_cells", expected, [dg.d_power(th, m).cells for m in range(1, mmax + 1)])]

    return out + guarded("theta_power_cells", powers)


def counterexample_records(n: int, theta: dg.Diagram | None = None) -> list[Record]:
    p, delta, rep = dg.make_counterexample(n, theta)
    expected = dg.CounterexampleParams.smallest(n)
    bound = p.claimed_bound
    return [
        record("params", {"k": expected.k, "k1": expected.k1, "k2": expected.k2, "m": expected.m},
               {"k": p.k, "k1": p.k1, "k2": p.k2, "m": p.m}),
        record("length", p.closed_form_length, rep.reduced_length),
        record("built_delta_reduced", rep.length, rep.reduced_length),
        record("power_shorter", f"< {rep.reduced_length}", rep.power_length,
               rep.power_length < rep.reduced_length),
        record("power_within_stated_bound", f"<= {bound}", rep.power_length, rep.power_length <= bound),
        record("chi_power_cells", 2 * n * n, rep.chi_power_cells),
        record("chi_power_cells_recount", 2 * n * n + 4 * n - 4, rep.chi_power_cells),
        record("power_length_any_psi", True, dg.psi_independent(n, theta)),
    ]


def confluence(seed: int, count: int = 1000, orders: int = 10, max_cells: int = 40) -> list[Record]:
    rng = random.Random(seed)
    bad_counts = bad_serial = 0
    sizes = []
    for i in range(count):
        if i % 2:
            d = dg.random_diagram(rng, rng.randint(1, max_cells), rng.randint(1, 4))
        else:
            d = dg.epsilon("x")
            while True:
                (g, e), = dg.random_f_word(rng, 1)
                step = dg.word_diagram([(g, e)])
                if d.cells + step.cells > max_cells:
                    break
                d = dg.d_compose(d, step)
        sizes.append(d.cells)
        results = [dg.d_reduce(d, random.Random(rng.random())) for _ in range(orders)]
        if len({r.cells for r in results}) != 1:
            bad_counts += 1
        if len({dg.dumps(r) for r in results}) != 1:
            bad_serial += 1
    return [
        record("diagrams", count, len(sizes)),
        record("max_cells", f"<= {max_cells}", max(sizes), max(sizes) <= max_cells),
        record("cell_count_disagreements", 0, bad_counts),
        record("serialization_disagreements", 0, bad_serial),
    ]


def oracle_equivalence(seed: int, count: int = 200, max_len: int = 6) -> list[Record]:
    rng = random.Random(seed)
    count_bad = mul_bad = 0
    for _ in range(count):
        w = dg.random_f_word(rng, rng.randint(0, max_len))
        v = dg.random_f_word(rng, rng.randint(0, max_len))
        tw = dg.f_treepair(w)
        if dg.d_reduce(dg.word_diagram(w)).cells != tw.carets:
            count_bad += 1
        tv = dg.f_treepair(v)
        prod = dg.treepair_mul(tw, tv)
        via_diagrams = dg.d_mul(dg.f_element(w), dg.f_element(v))
        if via_diagrams != dg.f_element(w + v) or prod != dg.f_treepair(w + v):
            mul_bad += 1
        elif via_diagrams.cells != prod.carets:
            mul_bad += 1
    return [
        record("words", count, count),
        record("caret_count_mismatches", 0, count_bad),
        record("product_mismatches", 0, mul_bad),
    ]


def square_growth(seed: int, graphs: int = 10, per_graph: int = 100) -> list[Record]:
    rng = random.Random(seed)
    total = no_growth = identity_bad = word_bad = decomp_err = 0
    for gi in range(graphs):
        G = gp.random_graph_product(rng)
        n = len(G.groups)
        while len(G.edges) == n * (n - 1) // 2:  # complete graph: abelian, trivial kernel
            G = gp.random_graph_product(rng)
            n = len(G.groups)
        got, batch = 0, 0
        while got < per_graph:
            for s in gp.sample_kernel(G, rng.randrange(2 ** 31), 50):
                if not s.nontrivial or got >= per_graph:
                    continue
                got += 1
                total += 1
                g = s.word
                if not gp.gp_length(G, g + g) > len(g):
                    no_growth += 1
                try:
                    res = gp.square_growth_check(G, g)
                except gp.DecompositionError:
                    decomp_err += 1
                    continue
                identity_bad += not res.identity_holds
                word_bad += not res.square_word_matches
            batch += 1
            if batch > 100:
                break
    return [
        record("graphs", ">= 10", graphs, graphs >= 10),
        record("kernel_samples", graphs * per_graph, total),
        record("no_square_growth", 0, no_growth),
        record("identity_failures", 0, identity_bad),
        record("square_word_mismatches", 0, word_bad),
        record("decomposition_errors", 0, decomp_err),
    ]


def hyperbolic_lab() -> list[Record]:
    F2 = free_presentation(2)
    b5 = ball(F2, 5)
    grows = all(power_grows(b5, g, 2) for g in b5.elements if g)
    b3 = ball(F2, 3)
    rep = delta_estimate(b3)
    S = surface_presentation(2)
    wit = c16_check(S)
    return [
        record("free_ball_size", 485, len(b5)),
        record("square_grows_everywhere", True, grows),
        record("min_power_exponent", 2, min_power_exponent(b5, 10)),
        record("free_delta", 0, rep.delta, rep.delta == 0 and rep.exhaustive),
        record("surface_c16", True, wit.holds),
        record("surface_max_piece", 1, wit.max_piece),
        record("surface_relator_dehn", "", str(dehn_reduce(S, S.relators[0]))),
    ]


def higman_descent(depth: int = 8) -> list[Record]:
    l, w = free_length(), free_um_witness()
    spec = NestedSpec(tuple((letter(p), 1) for p in range(1, depth + 1)))
    phi = LetterAssignment({i: FreeWord((1,) + (2,) * i) for i in range(depth + 1)}, l, w)
    rep = higman_chain_verify(spec, phi, recompute=True)
    radii = [int(r) for r in rep.word_lengths]
    out = [
        record("depth", depth, len(rep.steps)),
        record("exponents", [r + 2 for r in radii], list(rep.exponents)),
        record("every_step_gains", True, rep.passed),
        record("lengths", "strictly increasing", list(rep.lengths),
               all(a < b for a, b in zip(rep.lengths, rep.lengths[1:]))),
    ]
    sample = [FreeWord(g) for g in ball(free_presentation(2), 4).elements if g]
    fails = [r for r in range(7) if not um_check(l, w, sample, r).passed]
    out.append(record("um_witness_radius4", [], fails))
    return out


def bs_witnesses() -> list[Record]:
    rel = []
    for n in range(2, 8):
        a, b = dv.bs_a(n), dv.bs_b(n)
        rel.append(dv.bs_mul(dv.bs_mul(b, a), dv.bs_inverse(b)) == dv.bs_power(a, n))
    roots = [dv.root_witness(n, k)[1] for n in (2, 3) for k in range(0, 9)]
    div = dv.zn_divisible(dv.NAdicRational(1, 0, 2), 3, 8)
    return [
        record("defining_relation_n2_7", [True] * 6, rel),
        record("root_witnesses", True, all(roots)),
        record("z_half_not_3_divisible", 1, div.first_failure),
        record("slender_Z[1/2]", True, dv.slender_criterion("Z[1/2]").slender),
        record("slender_Q", False, dv.slender_criterion("Q").slender),
        record("slender_Z+Z/4", False, dv.slender_criterion("Z+Z/4").slender),
    ]


def _prefixed(prefix: str, recs: list[Record]) -> list[Record]:
    for r in recs:
        r.name = f"{prefix}.{r.name}"
    return recs


def run_all(seed: int = DEFAULT_SEED, theta: dg.Diagram | None = None, quick: bool = False) -> Report:
    scale = 10 if quick else 1
    report = Report("selftest" if quick else "reproduce",
                    {"seed": seed, "theta": "x0" if theta is None else dg.dumps(theta).strip(), "quick": quick})
    steps = [
        ("1", lambda: family_counts(theta)),
        ("2", lambda: counterexample_records(2, theta)),
        ("3", lambda: counterexample_records(3, theta)),
        ("4", lambda: confluence(seed, 1000 // scale)),
        ("5", lambda: oracle_equivalence(seed + 1, 200 // scale)),
        ("6", lambda: square_growth(seed + 2, 10, 100 // scale)),
        ("7", hyperbolic_lab),
        ("8", lambda: higman_descent(8 if not quick else 5)),
        ("9", bs_witnesses),
    ]
    for prefix, fn in steps:
        report.add(*_prefixed(prefix, guarded("run", fn)))
    return report
