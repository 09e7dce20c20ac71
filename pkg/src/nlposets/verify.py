"""Self-check suites behind the `verify` CLI subcommand.

Each suite returns (name, ok, detail) triples; the CLI prints one line
per check and exits nonzero if any failed. The suites re-derive results
along independent routes (enumeration vs closed form, compiled vs
python, semantic predicate vs pattern matching) rather than trusting a
single implementation.
"""

from __future__ import annotations

import itertools
import math
from collections import namedtuple

from . import analysis, config, counting, kernels, oeis
from .bijections import (
    WILF_CLASS,
    Permutation,
    bicoloured_to_word,
    contains_pattern,
    decode_word,
    decorated_decode,
    decorated_encode,
    encode_word,
    enumerate_bicoloured,
    lambda_full_inverse,
    lambda_map,
    poset_from_stanley,
    psi_map,
    stanley_from_poset,
    word_to_bicoloured,
)
from .counting import EqId, GFId
from .posets import FamilyId, Poset, count_family_by_minima, enumerate_family

CheckResult = namedtuple("CheckResult", "name ok detail")

HIERARCHY_ROWS = {
    FamilyId.NL: [1, 2, 7, 40, 357],
    FamilyId.NL_22FREE: [1, 2, 7, 37, 272],
    FamilyId.NL_3FREE: [1, 2, 6, 26, 158],
    FamilyId.NL_3_22FREE: [1, 2, 6, 23, 107],
}
INTERVAL_ROW = [1, 2, 5, 15, 53]


def _check(name, ok, detail=""):
    return CheckResult(name, bool(ok), detail)


def suite_matrices(max_n):
    out = []
    n = min(max_n, 7)
    res = kernels.characterization_sweep(n)
    out.append(_check(
        f"pattern-vs-semantic sweep, all matrices of size {n}",
        res["mismatches"] == 0,
        f"{res['total']} matrices, {res['transitive']} transitive, "
        f"{res['mismatches']} mismatches"))
    rt_n = min(max_n, 5)
    bad = 0
    total = 0
    for m in range(1, rt_n + 1):
        for p in enumerate_family(FamilyId.NL, m):
            total += 1
            if Poset.from_matrix(p.to_matrix()) != p:
                bad += 1
    out.append(_check(
        f"matrix round trip, every poset of size <= {rt_n}",
        bad == 0, f"{total} posets, {bad} failures"))
    return out


def _stream(family, n):
    return enumerate_family(family, n)


def suite_bijections(max_n):
    out = []
    n_small = min(max_n, 7)

    total = bad = 0
    for n in range(n_small + 1):
        for p in _stream(FamilyId.NL_3_22FREE, n):
            total += 1
            if decode_word(encode_word(p)) != p:
                bad += 1
    out.append(_check(f"word encoding round trip, n <= {n_small}",
                      bad == 0, f"{total} posets, {bad} failures"))

    total = bad = 0
    for n in range(n_small + 1):
        for p in _stream(FamilyId.NL_3_22FREE, n):
            total += 1
            w = encode_word(p)
            if bicoloured_to_word(word_to_bicoloured(w)) != w:
                bad += 1
    out.append(_check(f"bicoloured round trip, n <= {n_small}",
                      bad == 0, f"{total} words, {bad} failures"))

    total = bad = 0
    for n in range(n_small + 1):
        for p in _stream(FamilyId.NL_3FREE, n):
            total += 1
            if poset_from_stanley(stanley_from_poset(p)) != p:
                bad += 1
    out.append(_check(f"graph round trip, n <= {n_small}",
                      bad == 0, f"{total} posets, {bad} failures"))

    total = bad = 0
    for n in range(n_small + 1):
        for p in _stream(FamilyId.NL_3FREE, n):
            total += 1
            if decorated_decode(decorated_encode(p)) != p:
                bad += 1
    out.append(_check(f"decorated round trip, n <= {n_small}",
                      bad == 0, f"{total} posets, {bad} failures"))

    n_lam = min(max_n, 8)
    pat = WILF_CLASS[3]  # 43-12
    ok = True
    detail = []
    for n in range(1, n_lam + 1):
        images = set()
        bad = 0
        objs = enumerate_bicoloured(n)
        for b in objs:
            s = lambda_map(b)
            images.add(s.values)
            if contains_pattern(s, pat):
                bad += 1
            if lambda_full_inverse(s) != b:
                bad += 1
        avoiders = sum(
            1 for p in itertools.permutations(range(1, n + 1))
            if not contains_pattern(Permutation(p), pat))
        if bad or len(images) != len(objs) or len(objs) != avoiders:
            ok = False
        detail.append(f"n={n}: {len(objs)} objects")
    out.append(_check(
        f"coloured-to-avoider bijection with inverse, n <= {n_lam}",
        ok, detail[-1]))

    ok = True
    checked = 0
    for n in range(1, min(max_n, 7) + 1):
        for p in itertools.permutations(range(1, n + 1)):
            s = Permutation(p)
            if contains_pattern(s, pat):
                continue
            checked += 1
            b = lambda_full_inverse(s)
            if lambda_map(b) != s:
                ok = False
    out.append(_check(
        f"avoider-to-coloured inverse is a right inverse, n <= {min(max_n, 7)}",
        ok, f"{checked} avoiders"))

    w = psi_map(Permutation((3, 1, 2)))
    out.append(_check("splitter example psi(312)",
                      w.to_text() == "1b 2r 3b", w.to_text()))
    return out


def suite_counting(max_n):
    out = []
    for fam, row in HIERARCHY_ROWS.items():
        got = [len(list(enumerate_family(fam, n))) for n in range(1, 6)]
        out.append(_check(f"hierarchy row {fam.value}", got == row,
                          f"{got}"))
    io = counting.series_from_gf(GFId.INTERVAL_ORDERS, 5)
    out.append(_check("hierarchy row interval-orders",
                      list(io.terms[1:]) == INTERVAL_ROW,
                      f"{list(io.terms[1:])}"))

    n_dp = min(max_n, 10)
    dp = counting.generating_tree_counts(n_dp).terms
    brute = [counting.brute_force_avoider_count(WILF_CLASS[0], n,
                                                limit=n_dp)
             for n in range(n_dp + 1)]
    out.append(_check(f"tree DP equals brute scan, n <= {n_dp}",
                      list(dp) == brute, f"{list(dp)}"))

    n_wilf = min(max_n, 9)
    ok = True
    for n in range(n_wilf + 1):
        counts = {kernels.count_avoiders(pid, n) for pid in range(4)}
        if len(counts) != 1:
            ok = False
    out.append(_check(f"four patterns count alike, n <= {n_wilf}", ok,
                      f"common value at n={n_wilf}: "
                      f"{kernels.count_avoiders(0, n_wilf)}"))

    r3 = counting.check_functional_equation(EqId.EQ3, 15)
    out.append(_check("series self-consistency (plain), order 15",
                      r3.is_zero(), f"nonzero orders {r3.nonzero_orders()}"))
    r5 = counting.check_functional_equation(EqId.EQ5, 12)
    out.append(_check("series self-consistency (no-isolated), order 12",
                      r5.is_zero(), f"nonzero orders {r5.nonzero_orders()}"))
    rc = counting.change_of_variables_residual(12)
    out.append(_check("series change of variables, order 12",
                      rc.is_zero(), f"nonzero orders {rc.nonzero_orders()}"))

    n_gf = min(max_n, 7)
    f = counting.series_from_gf(GFId.EQ4_3FREE, n_gf)
    g = counting.series_from_gf(GFId.EQ6_NOISO, n_gf)
    ok = True
    for n in range(n_gf + 1):
        if f[n] != len(list(enumerate_family(FamilyId.NL_3FREE, n))):
            ok = False
        if g[n] != len(list(enumerate_family(FamilyId.NL_3FREE_NOISO, n))):
            ok = False
    out.append(_check(f"closed forms equal enumeration, n <= {n_gf}", ok,
                      f"terms {list(f.terms)}"))

    n_tri = min(max_n, 6)
    tri = counting.series_from_gf(GFId.EQ4_3FREE, n_tri, by_minima=True)
    ok = all(list(tri.rows[n]) == count_family_by_minima(FamilyId.NL_3FREE, n)
             for n in range(n_tri + 1))
    out.append(_check(f"minima triangle equals enumeration, n <= {n_tri}",
                      ok, f"row {n_tri}: {list(tri.rows[n_tri])}"))

    qs = counting.q_stirling_table(n_gf)
    out.append(_check("recurrence table row sums equal closed form",
                      qs.row_sums() == [f[n] for n in range(n_gf + 1)],
                      f"{qs.row_sums()}"))

    bf = oeis.oeis_fetch("A113226")
    series = counting.generating_tree_counts(min(max_n + 20, 60))
    rep = oeis.oeis_compare(series, bf)
    out.append(_check("tree DP prefix equals packaged A113226",
                      rep.ok, rep.summary()))
    return out


SYN_CONSTANTS = (0.0328, 1 / math.log(4), 37.9, -0.826)


def suite_series(max_n):
    out = []
    ok = (analysis.log_of_count(1) == 0.0
          and abs(analysis.log_of_count(2**64) - 64 * math.log(2))
          <= 1e-12 * 64 * math.log(2)
          and abs(analysis.log_of_count(10**500) - 500 * math.log(10))
          <= 1e-9)
    out.append(_check("big-integer log accuracy", ok, ""))

    A, g, mu, beta = SYN_CONSTANTS
    syn = analysis.make_model_series(A, g, mu, beta, 18, 40)
    worst = 0.0
    for f in analysis.direct_fit(syn, g):
        worst = max(worst,
                    abs(f.logA - math.log(A)) / abs(math.log(A)),
                    abs(f.logMu - math.log(mu)) / abs(math.log(mu)),
                    abs(f.beta - beta) / abs(beta))
    out.append(_check("three-point fit closes on synthetic model",
                      worst <= 1e-9, f"worst relative error {worst:.2e}"))
    fo = analysis.ols_fit(syn, gamma=g)
    worst_o = max(abs(fo.logA - math.log(A)) / abs(math.log(A)),
                  abs(fo.logMu - math.log(mu)) / abs(math.log(mu)),
                  abs(fo.beta - beta) / abs(beta))
    fg = analysis.ols_fit(syn, gamma=analysis.FREE)
    worst_o = max(worst_o, abs(fg.gamma - g) / g)
    out.append(_check("least-squares fit closes on synthetic model",
                      worst_o <= 1e-9, f"worst relative error {worst_o:.2e}"))

    series = oeis.oeis_fetch("A113226").to_series()
    rs = analysis.ratios(series)
    r555 = rs.value_at(555)
    dev = abs(r555 / 0.72134752 - 1)
    out.append(_check("late ratio near the conjectured growth rate",
                      dev <= 0.03, f"r_555 = {r555:.8f}, deviation {dev:.2%}"))

    c_good = analysis.transformed_curvature(rs, g, last=150)
    c_lo = analysis.transformed_curvature(rs, 0.70, last=150)
    c_hi = analysis.transformed_curvature(rs, 0.74, last=150)
    out.append(_check(
        "conjectured rate minimizes transform curvature (5x margin)",
        c_lo / c_good >= 5 and c_hi / c_good >= 5,
        f"ratios {c_lo / c_good:.1f}x, {c_hi / c_good:.1f}x"))

    tail = rs.pairs[-100:]
    ns = [n for n, _ in tail]
    vals = [r for _, r in tail]
    s1, cons = analysis.plot_curvature([1.0 / n for n in ns], vals)
    s2, _ = analysis.plot_curvature([n ** (-2 / 3) for n in ns], vals)
    out.append(_check(
        "ratio plot straighter against n^(-2/3) than n^(-1)",
        s1 / s2 >= 5 and cons == 1.0,
        f"curvature ratio {s1 / s2:.1f}x, sign consistency {cons:.2f}"))

    f1 = analysis.ols_fit(series, (458, 557), gamma=g)
    f2 = analysis.ols_fit(series, (58, 557), gamma=g)
    ok1 = (abs(f1.A - 0.03280) <= 0.002 and abs(f1.mu - 37.928) <= 0.5
           and abs(f1.beta + 0.82557) <= 0.02)
    ok2 = (abs(f2.A - 0.03351) <= 0.002 and abs(f2.mu - 38.050) <= 0.5
           and abs(f2.beta + 0.83314) <= 0.02)
    free = analysis.ols_fit(series, (58, 557), gamma=analysis.FREE)
    out.append(_check(
        "reference fit table reproduced (fixed rate)",
        ok1 and ok2,
        f"100-term row A={f1.A:.5f} mu={f1.mu:.3f} beta={f1.beta:.5f}; "
        f"500-term row A={f2.A:.5f} mu={f2.mu:.3f} beta={f2.beta:.5f}; "
        f"free-rate fit gives gamma={free.gamma:.8f}"))
    return out


SUITES = {
    "matrices": suite_matrices,
    "bijections": suite_bijections,
    "counting": suite_counting,
    "series": suite_series,
}


def run_suites(which, max_n):
    names = list(SUITES) if which == "all" else [which]
    results = []
    for name in names:
        for check in SUITES[name](max_n):
            results.append((name, check))
    return results
