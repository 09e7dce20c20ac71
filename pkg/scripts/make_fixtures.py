"""Regenerate the packaged b-files in src/nlposets/data/.

Every file is produced by the library's own exact procedures; the long
Av(12-34) run takes about a minute with the compiled backend. Run from
the repository root:

    python3 scripts/make_fixtures.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from nlposets.counting import (GFId, generating_tree_counts,  # noqa: E402
                               q_stirling_table, series_from_gf)
from nlposets.posets import FamilyId, count_family  # noqa: E402

DATA = pathlib.Path(__file__).resolve().parents[1] / "src/nlposets/data"


def emit(name, comment, pairs):
    DATA.mkdir(parents=True, exist_ok=True)
    lines = [f"# {comment}"] + [f"{n} {v}" for n, v in pairs]
    (DATA / f"{name}.b").write_text("\n".join(lines) + "\n")
    print(f"{name}: {len(pairs)} entries")


def main():
    nl = [count_family(FamilyId.NL, n) for n in range(8)]
    emit("A006455", "naturally labelled posets on [n], n >= 0",
         list(enumerate(nl)))

    s = series_from_gf(GFId.EQ4_3FREE, 30)
    emit("A135922", "chain-free naturally labelled posets on [n], n >= 0",
         [(n, s[n]) for n in s.indices()])

    tri = q_stirling_table(12)
    flat = []
    idx = 1
    for n in range(1, 13):
        for k in range(1, n + 1):
            flat.append((idx, tri.entry(n, k)))
            idx += 1
    emit("A139382", "triangle rows n >= 1, k = 1..n, read by rows",
         flat)

    g = series_from_gf(GFId.EQ6_NOISO, 30)
    emit("A323842", "chain-free posets with no isolated points, n >= 0",
         [(n, g[n]) for n in g.indices()])

    io = series_from_gf(GFId.INTERVAL_ORDERS, 30)
    emit("A022493", "interval orders (Fishburn numbers), n >= 0",
         [(n, io[n]) for n in io.indices()])

    av = generating_tree_counts(557, engine="kernel")
    emit("A113226", "permutations of [n] avoiding 12-34, n >= 1",
         [(n, av[n]) for n in range(1, 558)])


if __name__ == "__main__":
    main()
