"""Command-line front end.

Exit codes: 0 success, 1 verification or comparison failure, 2 usage
problems, 3 resource-guard refusal, 4 OEIS data unavailable offline.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import analysis, config, counting, oeis, verify
from .bijections import (
    BicolouredPermutation,
    BijectionError,
    DecoratedPoset,
    LabelledBinaryWord,
    PatternParseError,
    Permutation,
    StanleyGraph,
    bicoloured_to_word,
    decode_word,
    decorated_decode,
    decorated_encode,
    encode_word,
    lambda_full_inverse,
    lambda_map,
    poset_from_stanley,
    psi_map,
    stanley_from_poset,
    word_to_bicoloured,
)
from .config import ResourceGuardError
from .counting import GFId
from .oeis import OeisUnavailableError
from .posets import (
    FamilyId,
    Poset,
    PosetError,
    count_family,
    count_family_by_minima,
    enumerate_family,
)

POSET_FAMILIES = {f.value: f for f in FamilyId}
EXTRA_FAMILIES = ("av12-34", "interval-orders")
# printed index ranges start where the matching OEIS listing starts
DISPLAY_OFFSET = {"nl-3-22free": 1}


class UsageError(ValueError):
    pass


def _family_counts(family, max_n, limits):
    if family == "av12-34" or family == "nl-3-22free":
        return counting.generating_tree_counts(
            max_n, max_terms=limits["dp_max_terms"]).terms
    if family == "interval-orders":
        return counting.series_from_gf(GFId.INTERVAL_ORDERS, max_n).terms
    if family in ("nl-3free", "stanley-graph"):
        return counting.series_from_gf(GFId.EQ4_3FREE, max_n).terms
    if family == "nl-3free-noiso":
        return counting.series_from_gf(GFId.EQ6_NOISO, max_n).terms
    fam = POSET_FAMILIES[family]
    return [count_family(fam, n, limit=limits["brute_force_limit"])
            for n in range(max_n + 1)]


def _family_minima_rows(family, max_n, limits):
    if family == "nl-3free":
        return counting.series_from_gf(GFId.EQ4_3FREE, max_n,
                                       by_minima=True).rows
    if family == "nl-3free-noiso":
        return counting.series_from_gf(GFId.EQ6_NOISO, max_n,
                                       by_minima=True).rows
    if family in POSET_FAMILIES:
        fam = POSET_FAMILIES[family]
        return [count_family_by_minima(fam, n,
                                       limit=limits["brute_force_limit"])
                for n in range(max_n + 1)]
    raise UsageError(f"--by-minima is not defined for family {family}")


def cmd_count(args, limits, out):
    family = args.family
    if family not in POSET_FAMILIES and family not in EXTRA_FAMILIES:
        raise UsageError(f"unknown family {family!r}")
    if args.by_minima:
        rows = _family_minima_rows(family, args.max_n, limits)
        out.write(f"# {family}: members of size n with k minimal "
                  f"elements, k = 0..n\n")
        for row in rows:
            out.write(" ".join(str(v) for v in row) + "\n")
        return 0
    terms = _family_counts(family, args.max_n, limits)
    start = DISPLAY_OFFSET.get(family, 0)
    for n in range(start, args.max_n + 1):
        out.write(f"{n} {terms[n]}\n")
    return 0


def cmd_enumerate(args, limits, out):
    family = args.family
    if args.by_minima:
        raise UsageError("--by-minima applies to count, not enumerate")
    if family not in POSET_FAMILIES:
        raise UsageError(f"family {family!r} has no object stream")
    fam = POSET_FAMILIES[family]
    for obj in enumerate_family(fam, args.max_n,
                                limit=limits["brute_force_limit"]):
        out.write(obj.to_text() + "\n")
    return 0


_MAPS = {
    ("word", False): (Poset.from_text, lambda p: encode_word(p)),
    ("word", True): (LabelledBinaryWord.from_text, decode_word),
    ("bicoloured", False): (LabelledBinaryWord.from_text,
                            word_to_bicoloured),
    ("bicoloured", True): (BicolouredPermutation.from_text,
                           bicoloured_to_word),
    ("lambda", False): (BicolouredPermutation.from_text, lambda_map),
    ("lambda", True): (Permutation.from_text, lambda_full_inverse),
    ("psi", False): (Permutation.from_text, psi_map),
    ("psi", True): (BicolouredPermutation.from_text, lambda_map),
    ("stanley", False): (Poset.from_text, stanley_from_poset),
    ("stanley", True): (StanleyGraph.from_text, poset_from_stanley),
    ("decorated", False): (Poset.from_text, decorated_encode),
    ("decorated", True): (DecoratedPoset.from_text, decorated_decode),
}


def _read_input(path):
    "File contents, with '-' meaning stdin and I/O failures as usage errors."
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_biject(args, limits, out):
    try:
        parse, apply = _MAPS[(args.map, args.inverse)]
    except KeyError:
        raise UsageError(f"unknown map {args.map!r}") from None
    text = _read_input(args.infile)
    results = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            obj = parse(line)
        except ValueError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
        try:
            results.append(apply(obj).to_text())
        except (BijectionError, PosetError) as exc:
            print(f"line {lineno}: {exc}", file=sys.stderr)
            return 1
    payload = "\n".join(results) + ("\n" if results else "")
    if args.outfile == "-":
        out.write(payload)
    else:
        Path(args.outfile).write_text(payload)
    return 0


def cmd_verify(args, limits, out):
    results = verify.run_suites(args.suite, args.max_n)
    failed = 0
    for suite, check in results:
        status = "ok" if check.ok else "FAIL"
        detail = f" ({check.detail})" if check.detail else ""
        out.write(f"[{suite}] {status}: {check.name}{detail}\n")
        failed += 0 if check.ok else 1
    out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return 1 if failed else 0


def _parse_gamma(text):
    if text == "log4inv":
        return analysis.GAMMA_DEFAULT
    if text == "free":
        return analysis.FREE
    try:
        v = float(text)
    except ValueError:
        raise UsageError(f"--gamma must be a number, 'log4inv' or "
                         f"'free', got {text!r}") from None
    if v <= 0:
        raise UsageError("--gamma must be positive")
    return v


def _parse_range(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"--range must look like A..B, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"--range bounds must be integers: {text!r}") \
            from None


def _slice_series(series, rng):
    if rng is None:
        return series
    lo, hi = rng
    if lo < series.offset or hi >= series.offset + len(series) or lo > hi:
        raise UsageError(f"--range {lo}..{hi} outside terms "
                         f"{series.offset}.."
                         f"{series.offset + len(series) - 1}")
    return counting.CountSeries(
        series.family, lo,
        [series[n] for n in range(lo, hi + 1)])


def cmd_analyze(args, limits, out):
    gamma = _parse_gamma(args.gamma)
    rng = _parse_range(args.range) if args.range else None
    text = _read_input(args.terms)
    name = "stdin" if args.terms == "-" else Path(args.terms).name
    series = oeis.parse_b_file(text, name).to_series()
    series = _slice_series(series, rng)
    if args.op == "ratios":
        rs = analysis.ratios(series)
        lines = ["# n ratio"] + [f"{n} {r!r}" for n, r in rs.pairs]
        payload = "\n".join(lines) + "\n"
    elif args.op == "transforms":
        rs = analysis.ratios(series)
        payload = analysis.ratio_transforms(rs, gamma, args.alpha).to_text()
    elif args.op == "directfit":
        if gamma == analysis.FREE:
            raise UsageError("directfit requires a fixed gamma")
        payload = analysis.fits_to_text(analysis.direct_fit(series, gamma))
    else:
        payload = analysis.fits_to_text(ols_fit_checked(series, gamma))
    if args.out == "-":
        out.write(payload)
    else:
        Path(args.out).write_text(payload)
    return 0


def ols_fit_checked(series, gamma):
    try:
        return analysis.ols_fit(series, gamma=gamma)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_oeis(args, limits, out):
    bf = oeis.oeis_fetch(args.seq_id, cache_dir=args.cache,
                         offline=args.offline)
    if args.action == "fetch":
        lo, hi = bf.entries[0][0], bf.entries[-1][0]
        out.write(f"{bf.seq_id} source={bf.source} entries={len(bf)} "
                  f"range={lo}..{hi}\n")
        return 0
    local = _reference_series(args.seq_id, limits)
    report = oeis.oeis_compare(local, bf)
    out.write(report.summary() + "\n")
    return 0 if report.ok else 1


def _reference_series(seq_id, limits):
    "Locally recomputed values for the packaged cross-check sequences."
    if seq_id == "A006455":
        return counting.CountSeries(
            seq_id, 0,
            [count_family(FamilyId.NL, n) for n in range(8)])
    if seq_id == "A135922":
        return counting.series_from_gf(GFId.EQ4_3FREE, 30)
    if seq_id == "A323842":
        return counting.series_from_gf(GFId.EQ6_NOISO, 30)
    if seq_id == "A022493":
        return counting.series_from_gf(GFId.INTERVAL_ORDERS, 30)
    if seq_id == "A139382":
        tri = counting.q_stirling_table(12)
        flat = [tri.entry(n, k) for n in range(1, 13)
                for k in range(1, n + 1)]
        return counting.CountSeries(seq_id, 1, flat)
    if seq_id == "A113226":
        series = counting.generating_tree_counts(
            557, max_terms=max(600, limits["dp_max_terms"]))
        return counting.CountSeries(seq_id, 1, series.terms[1:])
    raise UsageError(f"no local reference for {seq_id}; "
                     f"use fetch instead")


def _load_config(path):
    opts = {}
    for lineno, raw in enumerate(_read_input(path).splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path} line {lineno}: expected key=value")
        opts[key.strip().replace("-", "_")] = value.strip()
    return opts


def build_parser():
    p = argparse.ArgumentParser(
        prog="nlposets",
        description="Counting, bijections and series analysis for "
                    "naturally labelled posets and 12-34 avoiders.")
    p.add_argument("--config", help="key=value settings file")
    p.add_argument("--backend", choices=["numba", "numpy"],
                   help="compute backend (default: numba when available)")
    sub = p.add_subparsers(dest="command", required=True)

    for name in ("count", "enumerate"):
        q = sub.add_parser(name)
        q.add_argument("--family", required=True)
        q.add_argument("--max-n", type=int, required=True, dest="max_n")
        q.add_argument("--by-minima", action="store_true",
                       dest="by_minima")

    q = sub.add_parser("biject")
    q.add_argument("--map", required=True,
                   choices=["word", "bicoloured", "lambda", "psi",
                            "stanley", "decorated"])
    q.add_argument("--inverse", action="store_true")
    q.add_argument("--in", required=True, dest="infile")
    q.add_argument("--out", required=True, dest="outfile")

    q = sub.add_parser("verify")
    q.add_argument("--suite", default="all",
                   choices=["all", "matrices", "bijections", "counting",
                            "series"])
    q.add_argument("--max-n", type=int, default=6, dest="max_n")

    q = sub.add_parser("analyze")
    q.add_argument("op", choices=["ratios", "transforms", "directfit",
                                  "olsfit"])
    q.add_argument("--terms", required=True)
    q.add_argument("--gamma", default="log4inv")
    q.add_argument("--alpha", type=float, default=1.0 / 3.0)
    q.add_argument("--range", default=None)
    q.add_argument("--out", default="-")

    q = sub.add_parser("oeis")
    q.add_argument("action", choices=["fetch", "compare"])
    q.add_argument("seq_id", metavar="Annnnnn")
    q.add_argument("--cache", default=None)
    q.add_argument("--offline", action="store_true")
    return p


_COMMANDS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "biject": cmd_biject,
    "verify": cmd_verify,
    "analyze": cmd_analyze,
    "oeis": cmd_oeis,
}


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    limits = {
        "brute_force_limit": config.DEFAULT_BRUTE_FORCE_LIMIT,
        "dp_max_terms": config.DEFAULT_DP_MAX_TERMS,
    }
    try:
        if args.config:
            opts = _load_config(args.config)
            if "backend" in opts:
                config.set_backend(opts["backend"])
            for key in ("brute_force_limit", "dp_max_terms"):
                if key in opts:
                    limits[key] = int(opts[key])
        if args.backend:
            config.set_backend(args.backend)
        return _COMMANDS[args.command](args, limits, out)
    except OeisUnavailableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ResourceGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except PatternParseError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (BijectionError, PosetError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
