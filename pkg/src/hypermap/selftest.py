"""Self-test harness: every oracle-equivalence suite and golden-table
comparison behind one entry point.

``run_selftest("quick")`` finishes in well under a minute;
``run_selftest("full")`` adds the heavyweight enumerations (the 107-graph
family, the deep genus-2 columns, the complete oracle triangle) and stays
within desk-scale minutes.  Each check prints one PASS/FAIL line with its
wall-clock time.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from math import factorial

from . import genus, goldens, graphs, moments, polys, treeseries, wright
from .flows import (
    canonical_digraph,
    edet_count,
    enumerate_balanced,
    euler_tour_bruteforce,
    oriented_spanning_tree_count,
    realize_digraph,
)
from .graphs import Multigraph, aut_orders
from .series import FallingPoly, MonomialPoly, Series

K4 = Multigraph.make(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def _series_matches_golden(series: Series, table: dict) -> tuple:
    for power, value in table.items():
        p = int(power)
        if series[p] != Fraction(value):
            return False, f"x^{p}: got {series[p]}, want {value}"
    return True, f"{len(table)} coefficients"


# -- individual checks ---------------------------------------------------


def check_series_axioms() -> tuple:
    rng = random.Random(20240214)
    for _ in range(25):
        order = rng.randint(3, 9)
        mk = lambda: Series([rng.randint(-4, 4) for _ in range(order)], order)
        a, b, c = mk(), mk(), mk()
        if (a * b) * c != a * (b * c):
            return False, "associativity"
        if a * (b + c) != a * b + a * c:
            return False, "distributivity"
        if b.coeffs[0]:
            if (a / b) * b != a:
                return False, "div/mul round trip"
    return True, "25 randomized instances"


def check_basis_roundtrip() -> tuple:
    rng = random.Random(7)
    for _ in range(20):
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(13)]
        f = FallingPoly(coeffs)
        if f.to_monomial().to_falling() != f:
            return False, "falling -> monomial -> falling"
        g = MonomialPoly(coeffs)
        if g.to_falling().to_monomial() != g:
            return False, "monomial -> falling -> monomial"
    return True, "degree <= 12 round trips"


def check_best_vs_bruteforce(max_r: int = 2, max_m: int = 2) -> tuple:
    tested = 0
    for r in range(1, max_r + 1):
        for g, _aut, _aut_v in graphs.enumerate_gamma_r(r):
            for m in range(1, max_m + 1):
                for gamma in enumerate_balanced(g, m):
                    d = realize_digraph(gamma)
                    if d.arc_total() > 12:
                        continue
                    brute = euler_tour_bruteforce(d)
                    sigma = oriented_spanning_tree_count(d, d.arcs[0][0])
                    best = sigma
                    for out in d.out_degrees():
                        best *= factorial(out - 1)
                    if brute != best:
                        return False, f"{g.edges} m={m} params={gamma.params}"
                    tested += 1
    return True, f"{tested} digraphs"


def check_moment_dp_vs_bruteforce(limit: int = 10, max_m: int = 2) -> tuple:
    tested = 0
    for m in range(1, max_m + 1):
        for a in range(limit + 1):
            for b in range(limit + 1 - a):
                if moments.nonloop_complex_moment(
                    m, a, b
                ) != moments.complex_moment_bruteforce(m, a, b):
                    return False, f"(m,a,b)=({m},{a},{b})"
                tested += 1
    return True, f"{tested} triples"


def check_mod4_vanishing() -> tuple:
    for m in (1, 2, 3):
        for a in range(9):
            for b in range(9):
                if (a - b) % 4 and moments.nonloop_complex_moment(m, a, b):
                    return False, f"(m,a,b)=({m},{a},{b})"
    return True, "all (a-b) % 4 != 0 vanish"


def check_moment_polynomials(pairs) -> tuple:
    table = goldens.golden_tables()["moment_polynomials"]
    for m, r in pairs:
        want = MonomialPoly([Fraction(c) for c in table[f"{m},{r}"]])
        got = polys.moment_polynomial(m, r).to_monomial()
        if got != want:
            return False, f"(m,r)=({m},{r}): {got} != {want}"
        if not got.is_integral():
            return False, f"(m,r)=({m},{r}) not integral"
    return True, f"{len(pairs)} polynomials"


def check_oracle_triangle() -> tuple:
    for m, r in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)]:
        poly = polys.moment_polynomial(m, r).to_monomial()
        samples = [(n, polys.trace_word_oracle(m, r, n)) for n in range(1, r + 3)]
        interp = polys.interpolate_polynomial(samples, r + 1)
        if interp != poly:
            return False, f"trace mismatch at (m,r)=({m},{r})"
        if m == 1 and polys.pairing_oracle_gue(r) != poly:
            return False, f"pairing mismatch at r={r}"
    return True, "pipeline = trace words = pairings"


def check_tree_series() -> tuple:
    tables = goldens.golden_tables()
    for s in (1, 2, 3, 4):
        got = treeseries.tree_series(2, s, 8)
        ok, msg = _series_matches_golden(got, tables["tree_series_m2"][str(s)])
        if not ok:
            return False, f"s={s}: {msg}"
    ok, msg = _series_matches_golden(
        treeseries.tree_series(1, 1, 11), tables["catalan"]["series"]
    )
    return ok, "four m=2 columns + Catalan" if ok else msg


def check_g0(ms, order: int) -> tuple:
    table = goldens.golden_tables()["genus0"]
    for m in ms:
        got = genus.g0_series(m, order)
        sub = {p: v for p, v in table[str(m)].items() if int(p) < order}
        ok, msg = _series_matches_golden(got, sub)
        if not ok:
            return False, f"m={m}: {msg}"
    return True, f"m in {list(ms)} through x^{order - 1}"


def check_g1(ms, order: int) -> tuple:
    table = goldens.golden_tables()["genus1"]
    for m in ms:
        got = genus.g1_series(m, order)
        sub = {p: v for p, v in table[str(m)].items() if int(p) < order}
        ok, msg = _series_matches_golden(got, sub)
        if not ok:
            return False, f"m={m}: {msg}"
    return True, f"m in {list(ms)} through x^{order - 1}"


def check_g2(specs) -> tuple:
    table = goldens.golden_tables()["genus2"]
    for m, order in specs:
        got = genus.gg_series(m, 2, order)
        sub = {p: v for p, v in table[str(m)].items() if int(p) < order}
        ok, msg = _series_matches_golden(got, sub)
        if not ok:
            return False, f"m={m}: {msg}"
        if got[1] != genus.leading_coefficient(m, 2):
            return False, f"m={m}: leading coefficient"
    return True, f"{len(specs)} columns + leading coefficients"


def check_per_graph(order: int = 7) -> tuple:
    table = goldens.golden_tables()["genus2_per_graph_m2"]
    hosts = {
        "triple_edge": Multigraph.make(2, [(0, 1)] * 3),
        "double_loop": Multigraph.make(1, [(0, 0), (0, 0)]),
        "dumbbell": Multigraph.make(2, [(0, 1), (0, 0), (1, 1)]),
    }
    for name, host in hosts.items():
        got = genus.graph_contribution(host, 2, order)
        sub = {p: v for p, v in table[name].items() if int(p) < order}
        ok, msg = _series_matches_golden(got, sub)
        if not ok:
            return False, f"{name}: {msg}"
    return True, "three genus-2 hosts"


def check_k4(order: int = 7) -> tuple:
    table = goldens.golden_tables()["genus2_per_graph_m2"]["k4"]
    got = genus.graph_contribution(K4, 2, order)
    sub = {p: v for p, v in table.items() if int(p) < order}
    return _series_matches_golden(got, sub)


def check_family_counts(include_g4: bool) -> tuple:
    tables = goldens.golden_tables()["counts"]
    fam2 = graphs.enumerate_min_degree3(2)
    if sorted(aut for _g, aut in fam2) != tables["min_degree3_aut_orders_g2"]:
        return False, "Betti-2 automorphism orders"
    if len(graphs.enumerate_min_degree3(3)) != tables["min_degree3"]["3"]:
        return False, "Betti-3 family size"
    if include_g4 and len(graphs.enumerate_min_degree3(4)) != tables["min_degree3"]["4"]:
        return False, "Betti-4 family size"
    for r, want in tables["gamma_r"].items():
        if len(graphs.enumerate_gamma_r(int(r))) != want:
            return False, f"edge-count family r={r}"
    for m, want in enumerate(tables["k4_nonzero_digraphs"], start=1):
        if len(enumerate_balanced(K4, m, nonzero_only=True)) != want:
            return False, f"K4 digraph count m={m}"
    if len(graphs.spanning_tree_reps(K4)) != tables["k4_spanning_tree_reps"]:
        return False, "K4 spanning trees"
    return True, "families, digraph counts, tree count"


def check_gg_vs_oracle() -> tuple:
    for m, g in [(1, 2), (2, 2)]:
        formula = genus.gg_series(m, g, 4)
        direct = genus.gg_series_oracle(m, g, 3)
        if not formula.agrees_with(direct, 3):
            return False, f"(m,g)=({m},{g})"
    for m in (1, 2):
        if not genus.g1_series(m, 4).agrees_with(genus.gg_series_oracle(m, 1, 3), 3):
            return False, f"genus-1 direct sum m={m}"
    return True, "closed forms = direct summation"


def check_hypergraph_catalan_totals() -> tuple:
    # Weighted tree EDET totals against the tree-series coefficients.
    for m in (1, 2):
        f1 = treeseries.tree_series(m, 1, 6)
        for v in range(1, 5):
            total = Fraction(0)
            for tree in graphs.connected_multigraphs(v + 1, v):
                gamma = canonical_digraph(tree, m)
                total += Fraction(edet_count(gamma), aut_orders(tree)[0])
            if total != f1[v + 1]:
                return False, f"m={m} v={v}: {total} != {f1[v + 1]}"
    return True, "tree totals match series coefficients"


def check_mu_phi_ksum(order: int = 8) -> tuple:
    for m in (1, 2, 3, 4):
        f = genus._F(m, order)
        for a in range(2 * m + 1):
            b = 2 * m - a
            for big_k in (0, 1, 2, 3):
                want = Series.zero(order)
                if (a - b) % 4 == 0:
                    fk = f**big_k
                    for k in range(big_k, order):
                        t = moments.tau(k + 1, a, b)
                        want = want + fk * Fraction(
                            t * factorial(2 * m - 1) ** k,
                            (factorial(a) * factorial(b)) ** (k + 1),
                        )
                        fk = fk * f
                if genus.phi_series(m, a, b, big_k, order) != want:
                    return False, f"phi m={m} (a,b)=({a},{b}) K={big_k}"
                for c in {a, b}:
                    want_mu = Series.zero(order)
                    if (a - b) % 4 == 0:
                        fk = f**big_k
                        for k in range(big_k, order):
                            want_mu = want_mu + fk * Fraction(
                                c ** (k + 1) * factorial(2 * m - 1) ** k,
                                (factorial(a) * factorial(b)) ** (k + 1),
                            )
                            fk = fk * f
                    if genus.mu_series(m, a, b, big_k, c, order) != want_mu:
                        return False, f"mu m={m} (a,b)=({a},{b}) K={big_k} c={c}"
    return True, "mu and phi equal their tau-weighted tail sums"


def check_wright() -> tuple:
    tables = goldens.golden_tables()["wright"]
    ok, msg = _series_matches_golden(wright.tree_function(6), tables["tree_function"])
    if not ok:
        return False, f"tree function: {msg}"
    for g, key in [(0, "w0"), (1, "w1"), (2, "w2")]:
        ok, msg = _series_matches_golden(wright.w_series(g, 8), tables[key])
        if not ok:
            return False, f"Betti {g}: {msg}"
    w5 = wright.wg_from_bivariate(goldens.g5_autsum(), 9)
    ok, msg = _series_matches_golden(w5, tables["w5"])
    if not ok:
        return False, f"Betti 5: {msg}"
    return True, "tree function + four table columns"


def check_scheme_series() -> tuple:
    table = goldens.golden_tables()["scheme_genus1"]["series"]
    got = wright.genus1_scheme_series(7)
    ok, msg = _series_matches_golden(got, table)
    if not ok:
        return False, msg
    # monomial-basis genus-1 coefficients of the normalized polynomials
    for r in (2, 3, 4, 5):
        poly = polys.pairing_oracle_gue(r).scale(Fraction(1, 2 * r))
        if poly.coeffs[r - 1] != got[r - 1]:
            return False, f"subleading coefficient r={r}"
    return True, "series + subleading coefficients r=2..5"


def check_reconciliation() -> tuple:
    table = goldens.golden_tables()["normalized_m1"]
    for r in (1, 2, 3, 4):
        alpha = polys.alpha_coeffs(1, r)
        falling = FallingPoly([Fraction(c) for c in table[str(r)]["falling"]])
        monomial = MonomialPoly([Fraction(c) for c in table[str(r)]["monomial"]])
        got = FallingPoly(
            [alpha.alpha[r + 1 - k] for k in range(r + 2)]
        )
        if got != falling:
            return False, f"falling r={r}"
        if got.to_monomial() != monomial:
            return False, f"monomial r={r}"
    return True, "both bases, r = 1..4"


def check_g3_m1() -> tuple:
    table = goldens.golden_tables()["genus3_m1"]["series"]
    got = genus.gg_series(1, 3, 6)
    return _series_matches_golden(got, table)


CHECKS = [
    ("series-axioms", "quick", check_series_axioms),
    ("basis-round-trip", "quick", check_basis_roundtrip),
    ("best-vs-bruteforce", "quick", check_best_vs_bruteforce),
    ("moment-dp-vs-bruteforce", "quick", lambda: check_moment_dp_vs_bruteforce(8, 2)),
    ("mod4-vanishing", "quick", check_mod4_vanishing),
    ("moment-polynomials-small", "quick", lambda: check_moment_polynomials([(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)])),
    ("tree-series-tables", "quick", check_tree_series),
    ("genus0-small", "quick", lambda: check_g0((1, 2, 3), 7)),
    ("genus1-small", "quick", lambda: check_g1((1, 2), 5)),
    ("genus2-leading", "quick", lambda: check_g2([(1, 5), (2, 4)])),
    ("family-counts", "quick", lambda: check_family_counts(False)),
    ("wright-tables", "quick", check_wright),
    ("scheme-series", "quick", check_scheme_series),
    ("moment-polynomials-all", "full", lambda: check_moment_polynomials([(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (2, 4)])),
    ("oracle-triangle", "full", check_oracle_triangle),
    ("moment-dp-vs-bruteforce-wide", "full", lambda: check_moment_dp_vs_bruteforce(12, 3)),
    ("genus0-deep", "full", lambda: check_g0((1, 2, 3, 4, 5, 6), 11)),
    ("genus1-deep", "full", lambda: check_g1((1, 2, 3, 4), 6)),
    ("genus2-deep", "full", lambda: check_g2([(1, 8), (2, 6), (3, 3)])),
    ("genus2-per-graph", "full", check_per_graph),
    ("k4-contribution", "full", check_k4),
    ("genus3-m1", "full", check_g3_m1),
    ("family-counts-large", "full", lambda: check_family_counts(True)),
    ("gg-vs-direct-oracle", "full", check_gg_vs_oracle),
    ("hypergraph-catalan-totals", "full", check_hypergraph_catalan_totals),
    ("mu-phi-ksum", "full", check_mu_phi_ksum),
    ("reconciliation-m1", "full", check_reconciliation),
]


def run_selftest(level: str = "quick", out=None) -> bool:
    """Run all checks for the level; print one line per check.  Returns
    True when everything passed."""
    import sys

    out = out or sys.stdout
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    wanted = ("quick",) if level == "quick" else ("quick", "full")
    all_ok = True
    t_total = time.perf_counter()
    for name, lvl, fn in CHECKS:
        if lvl not in wanted:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"exception: {exc!r}"
        dt = time.perf_counter() - t0
        status = "PASS" if ok else "FAIL"
        print(f"[{status}] {name}: {detail} ({dt:.2f}s)", file=out)
        all_ok = all_ok and ok
    print(
        f"selftest {level}: {'ok' if all_ok else 'FAILED'} "
        f"({time.perf_counter() - t_total:.2f}s total)",
        file=out,
    )
    return all_ok
