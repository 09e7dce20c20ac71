"""OEIS b-file handling: parse, write, fetch-with-cache, and comparison
against locally computed series.

Remote access is a single polite request per id and entirely optional:
the b-files for every referenced sequence ship with the package, so the
test suite and the default workflows run without a network.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .counting import CountSeries

_A_NUMBER = re.compile(r"\AA\d{6,7}\Z")
REMOTE_URL = "https://oeis.org/{id}/b{digits}.txt"


class OeisUnavailableError(RuntimeError):
    "No cached or packaged copy, and the network may not be used."


def check_a_number(seq_id):
    if not _A_NUMBER.match(seq_id):
        raise ValueError(f"not an OEIS A-number: {seq_id!r}")
    return seq_id


@dataclass(frozen=True)
class BFile:
    seq_id: str
    entries: tuple
    source: str

    def __post_init__(self):
        object.__setattr__(self, "entries",
                           tuple((int(n), int(v)) for n, v in self.entries))
        last = None
        for n, _ in self.entries:
            if last is not None and n <= last:
                raise ValueError(f"{self.seq_id}: indices not increasing "
                                 f"at {n}")
            last = n

    def __len__(self):
        return len(self.entries)

    @property
    def offset(self):
        return self.entries[0][0]

    def to_series(self):
        "Entries as a CountSeries; requires a contiguous index range."
        ns = [n for n, _ in self.entries]
        if ns != list(range(ns[0], ns[0] + len(ns))):
            raise ValueError(f"{self.seq_id}: indices are not contiguous")
        return CountSeries(self.seq_id, ns[0], [v for _, v in self.entries])

    def to_text(self, comment=None):
        lines = []
        if comment:
            lines.append(f"# {comment}")
        lines += [f"{n} {v}" for n, v in self.entries]
        return "\n".join(lines) + "\n"


def parse_b_file(text, seq_id, source="local"):
    """Parse `index value` lines; `#` comments and blanks are skipped.

    Malformed input raises ValueError naming the offending line number.
    """
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{seq_id} line {lineno}: expected "
                             f"'index value', got {raw!r}")
        try:
            n, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"{seq_id} line {lineno}: non-integer field "
                             f"in {raw!r}") from None
        if entries and n <= entries[-1][0]:
            raise ValueError(f"{seq_id} line {lineno}: index {n} does not "
                             f"increase")
        entries.append((n, v))
    if not entries:
        raise ValueError(f"{seq_id}: no entries found")
    return BFile(seq_id, tuple(entries), source)


def write_b_file(bfile, path, comment=None):
    Path(path).write_text(bfile.to_text(comment))


def _packaged_text(seq_id):
    ref = resources.files("nlposets.data").joinpath(f"{seq_id}.b")
    if ref.is_file():
        return ref.read_text()
    return None


def _remote_text(seq_id, timeout=30.0):
    from urllib.request import urlopen

    url = REMOTE_URL.format(id=seq_id, digits=seq_id[1:])
    with urlopen(url, timeout=timeout) as resp:
        return resp.read().decode("utf-8")


def oeis_fetch(seq_id, cache_dir=None, offline=False, fetcher=None):
    """B-file for seq_id: cache copy, else packaged copy, else one remote
    fetch (stored verbatim in the cache when one is configured).

    offline=True forbids the remote step; with no local copy either this
    raises OeisUnavailableError.
    """
    check_a_number(seq_id)
    cache_path = Path(cache_dir) / f"{seq_id}.b" if cache_dir else None
    if cache_path and cache_path.is_file():
        return parse_b_file(cache_path.read_text(), seq_id, "cache")
    packaged = _packaged_text(seq_id)
    if packaged is not None:
        return parse_b_file(packaged, seq_id, "local")
    if offline:
        raise OeisUnavailableError(
            f"{seq_id}: offline and no cached or packaged b-file")
    get = fetcher if fetcher is not None else _remote_text
    try:
        text = get(seq_id)
    except Exception as exc:
        raise OeisUnavailableError(f"{seq_id}: remote fetch failed "
                                   f"({exc})") from exc
    bf = parse_b_file(text, seq_id, "remote")
    if cache_path:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        cache_path.write_text(text)
    return bf


@dataclass(frozen=True)
class CompareReport:
    seq_id: str
    overlap: tuple
    agreement_length: int
    first_mismatch: tuple | None

    @property
    def ok(self):
        return self.first_mismatch is None

    def summary(self):
        lo, hi = self.overlap
        if self.ok:
            return (f"{self.seq_id}: agreement on full overlap "
                    f"{lo}..{hi} ({self.agreement_length} terms)")
        n, mine, theirs = self.first_mismatch
        return (f"{self.seq_id}: MISMATCH at index {n}: "
                f"computed {mine} != listed {theirs}")


def oeis_compare(local, bfile, shift=0):
    """Compare a computed CountSeries with a b-file.

    Local index n is matched against b-file index n + shift. The overlap
    must be nonempty.
    """
    remote = dict(bfile.entries)
    lo = max(local.offset, min(remote) - shift)
    hi = min(local.offset + len(local) - 1, max(remote) - shift)
    if lo > hi:
        raise ValueError(f"{bfile.seq_id}: no index overlap after "
                         f"shift {shift}")
    first_bad = None
    agreed = 0
    for n in range(lo, hi + 1):
        if n + shift not in remote:
            continue
        if local[n] == remote[n + shift]:
            agreed += 1
        elif first_bad is None:
            first_bad = (n, local[n], remote[n + shift])
            break
    return CompareReport(bfile.seq_id, (lo, hi), agreed, first_bad)
