"""Exact counting: recurrence tables, truncated bivariate series, and the
generating-tree dynamic program behind the long Av(12-34) sequence.

Everything in this module is integer arithmetic; nothing rounds.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import comb

from . import config
from .bijections import WILF_CLASS, Permutation, contains_pattern
from .config import ResourceGuardError


@dataclass(frozen=True)
class CountSeries:
    "Contiguous run of exact terms of a counting sequence."

    family: str
    offset: int
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, n):
        "Term by sequence index (not list position)."
        i = n - self.offset
        if not 0 <= i < len(self.terms):
            raise IndexError(f"index {n} outside [{self.offset}, "
                             f"{self.offset + len(self.terms) - 1}]")
        return self.terms[i]

    def indices(self):
        return range(self.offset, self.offset + len(self.terms))

    def to_b_file_text(self, comment=None):
        lines = []
        if comment:
            lines.append(f"# {comment}")
        lines += [f"{n} {self[n]}" for n in self.indices()]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MinimaTable:
    "Triangle p(n, k): members of size n with k minimal elements."

    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows",
                           tuple(tuple(r) for r in self.rows))

    @property
    def size(self):
        return len(self.rows) - 1

    def entry(self, n, k):
        if k > n:
            return 0
        return self.rows[n][k]

    def row_sums(self):
        return [sum(r) for r in self.rows]

    def to_text(self):
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows)


def q_stirling_table(N):
    """Triangle from p(n,k) = p(n-1,k-1) + (2^k - 1) p(n-1,k), p(0,0) = 1.

    Row sums are the 3-free NL poset counts; column k counts members with
    k minimal elements.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    rows = [[1]]
    for n in range(1, N + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = prev[k - 1] + ((2 ** k - 1) * prev[k]
                                    if k <= n - 1 else 0)
        rows.append(row)
    return MinimaTable(rows)


# ---------------------------------------------------------------------------
# truncated bivariate series

class BivariateSeries:
    """Series in z truncated at a fixed order, with integer y-polynomial
    coefficients (y-degree capped at the same order)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=None):
        if order < 0:
            raise ValueError("order must be non-negative")
        self.order = order
        if coeffs is None:
            coeffs = [[0] * (order + 1) for _ in range(order + 1)]
        self.coeffs = coeffs

    @classmethod
    def from_terms(cls, order, terms):
        s = cls(order)
        for (n, k), v in terms.items():
            if n <= order and k <= order:
                s.coeffs[n][k] = v
        return s

    def coeff(self, n, k):
        return self.coeffs[n][k]

    def _check(self, other):
        if self.order != other.order:
            raise ValueError("mixed truncation orders")

    def add(self, other):
        self._check(other)
        N = self.order
        return BivariateSeries(N, [
            [self.coeffs[n][k] + other.coeffs[n][k] for k in range(N + 1)]
            for n in range(N + 1)])

    def sub(self, other):
        self._check(other)
        N = self.order
        return BivariateSeries(N, [
            [self.coeffs[n][k] - other.coeffs[n][k] for k in range(N + 1)]
            for n in range(N + 1)])

    def mul(self, other):
        self._check(other)
        N = self.order
        out = BivariateSeries(N)
        c = out.coeffs
        for n1 in range(N + 1):
            row = self.coeffs[n1]
            for k1 in range(N + 1):
                v = row[k1]
                if not v:
                    continue
                for n2 in range(N + 1 - n1):
                    brow = other.coeffs[n2]
                    tgt = c[n1 + n2]
                    for k2 in range(N + 1 - k1):
                        w = brow[k2]
                        if w:
                            tgt[k1 + k2] += v * w
        return out

    def scale_y(self, m):
        "y -> m*y."
        N = self.order
        return BivariateSeries(N, [
            [self.coeffs[n][k] * m ** k for k in range(N + 1)]
            for n in range(N + 1)])

    def subst_z_geom(self, sign=1):
        """z -> z/(1 - sign*z*y), truncated.

        Each monomial z^m y^j expands to sum over t of
        C(m-1+t, t) * sign^t * z^(m+t) y^(j+t).
        """
        N = self.order
        out = BivariateSeries(N)
        c = out.coeffs
        for m in range(N + 1):
            for j in range(N + 1):
                v = self.coeffs[m][j]
                if not v:
                    continue
                if m == 0:
                    c[0][j] += v
                    continue
                for t in range(N + 1 - m):
                    if j + t > N:
                        break
                    c[m + t][j + t] += v * comb(m - 1 + t, t) * sign ** t
        return out

    def inverse(self):
        "Multiplicative inverse; requires constant term 1."
        N = self.order
        if self.coeffs[0] != [1] + [0] * N:
            raise ValueError("inverse needs constant coefficient exactly 1")
        out = BivariateSeries(N)
        out.coeffs[0][0] = 1
        for n in range(1, N + 1):
            acc = [0] * (N + 1)
            for m in range(1, n + 1):
                am, dn = self.coeffs[m], out.coeffs[n - m]
                for k1 in range(N + 1):
                    if not am[k1]:
                        continue
                    for k2 in range(N + 1 - k1):
                        if dn[k2]:
                            acc[k1 + k2] += am[k1] * dn[k2]
            out.coeffs[n] = [-x for x in acc]
        return out

    def at_y_one(self):
        "Coefficient list of z^0..z^N with y evaluated at 1."
        return [sum(row) for row in self.coeffs]

    def is_zero(self):
        return all(v == 0 for row in self.coeffs for v in row)

    def nonzero_orders(self):
        return [n for n, row in enumerate(self.coeffs) if any(row)]

    def triangle(self):
        return MinimaTable([self.coeffs[n][:n + 1]
                            for n in range(self.order + 1)])

    def __eq__(self, other):
        return (isinstance(other, BivariateSeries)
                and self.order == other.order and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"BivariateSeries(order={self.order})"


class GFId(enum.Enum):
    EQ4_3FREE = "3free"
    EQ6_NOISO = "3free-noiso"
    INTERVAL_ORDERS = "interval-orders"


class EqId(enum.Enum):
    EQ3 = "plain"
    EQ5 = "noiso"


def _series_3free(N):
    "Sum over k of z^k y^k / prod_{i<=k} (1 - (2^i - 1) z)."
    F = BivariateSeries(N)
    term = BivariateSeries.from_terms(N, {(0, 0): 1})
    zy = BivariateSeries.from_terms(N, {(1, 1): 1})
    for k in range(N + 1):
        if k:
            den = BivariateSeries.from_terms(
                N, {(0, 0): 1, (1, 0): -(2 ** k - 1)})
            term = term.mul(zy).mul(den.inverse())
        F = F.add(term)
    return F


def _series_noiso(N):
    "1/(1+zy) times the sum of z^k y^k / prod_{i<=k} (1 - (2^i - 1 - y) z)."
    S = BivariateSeries(N)
    term = BivariateSeries.from_terms(N, {(0, 0): 1})
    zy = BivariateSeries.from_terms(N, {(1, 1): 1})
    for k in range(N + 1):
        if k:
            den = BivariateSeries.from_terms(
                N, {(0, 0): 1, (1, 0): -(2 ** k - 1), (1, 1): 1})
            term = term.mul(zy).mul(den.inverse())
        S = S.add(term)
    pre = BivariateSeries.from_terms(N, {(0, 0): 1, (1, 1): 1}).inverse()
    return pre.mul(S)


def _series_interval_orders(N):
    "Sum over n of prod_{i<=n} (1 - (1-z)^i), univariate."
    total = [1] + [0] * N
    pw = [1] + [0] * N
    term = [1] + [0] * N

    def umul(a, b):
        c = [0] * (N + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(N + 1 - i):
                    if b[j]:
                        c[i + j] += x * b[j]
        return c

    one_minus_z = [1, -1] + [0] * (N - 1) if N else [1]
    for _ in range(1, N + 1):
        pw = umul(pw, one_minus_z)
        fac = [1 - pw[0]] + [-p for p in pw[1:]]
        term = umul(term, fac)
        total = [t + s for t, s in zip(total, term)]
    return total


def master_series(gf, N):
    "The raw BivariateSeries for EQ4_3FREE or EQ6_NOISO."
    if gf is GFId.EQ4_3FREE:
        return _series_3free(N)
    if gf is GFId.EQ6_NOISO:
        return _series_noiso(N)
    raise ValueError(f"{gf} has no bivariate form")


def series_from_gf(gf, N, by_minima=False):
    """Exact coefficients of a closed-form series, to order N.

    With by_minima the y-marked triangle is returned (counts split by
    number of minimal elements); only the bivariate forms support it.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if gf is GFId.INTERVAL_ORDERS:
        if by_minima:
            raise ValueError("interval-order series carries no y marking")
        return CountSeries(gf.value, 0, _series_interval_orders(N))
    s = master_series(gf, N)
    if by_minima:
        return s.triangle()
    return CountSeries(gf.value, 0, s.at_y_one())


def check_functional_equation(eq, N, series=None):
    """Residual (left minus right side) of a self-consistency identity.

    EQ3 relates the 3-free series F to itself under y -> 2y; EQ5 relates
    the no-isolated series G to itself under (z, y) -> (z/(1-zy), 2y).
    A nonzero residual is returned, never raised. `series` substitutes a
    caller-supplied candidate for the closed form (negative controls).
    """
    if eq is EqId.EQ3:
        F = _series_3free(N) if series is None else series
        z = BivariateSeries.from_terms(N, {(1, 0): 1})
        one = BivariateSeries.from_terms(N, {(0, 0): 1})
        one_m_y = BivariateSeries.from_terms(N, {(0, 0): 1, (0, 1): -1})
        rhs = one.add(z.mul(F.scale_y(2).sub(one_m_y.mul(F))))
        return F.sub(rhs)
    if eq is EqId.EQ5:
        G = _series_noiso(N) if series is None else series
        one = BivariateSeries.from_terms(N, {(0, 0): 1})
        z = BivariateSeries.from_terms(N, {(1, 0): 1})
        zy = BivariateSeries.from_terms(N, {(1, 1): 1})
        one_m_y = BivariateSeries.from_terms(N, {(0, 0): 1, (0, 1): -1})
        one_m_zy = one.sub(zy)
        # substitute z first with the outer y, then rescale y: the inner
        # z/(1-zy) uses the pre-scaling y variable
        Gsub = G.scale_y(2).subst_z_geom(+1)
        inv = BivariateSeries.from_terms(
            N, {(0, 0): 1, (2, 2): -1}).inverse()
        rhs = inv.mul(
            one.sub(zy).add(
                z.mul(Gsub.sub(one_m_y.mul(one_m_zy).mul(G)))))
        return G.sub(rhs)
    raise ValueError(f"unknown equation {eq!r}")


def change_of_variables_residual(N):
    "F(z,y) minus (1/(1-zy)) G(z/(1-zy), y); zero when both series agree."
    F = _series_3free(N)
    G = _series_noiso(N)
    one_m_zy = BivariateSeries.from_terms(N, {(0, 0): 1, (1, 1): -1})
    return F.sub(one_m_zy.inverse().mul(G.subst_z_geom(+1)))


# ---------------------------------------------------------------------------
# generating-tree dynamic program for Av(12-34)

@dataclass
class TreeStateTable:
    """Exact state counts at one length: key (k, l) with k the lowest
    ascent top (length+1 when the prefix is decreasing) and l the last
    entry."""

    n: int
    counts: dict = field(default_factory=dict)

    def total(self):
        return sum(self.counts.values())

    def split_totals(self):
        "(sum over l <= k, sum over l > k)."
        h1 = sum(c for (k, l), c in self.counts.items() if l <= k)
        h2 = sum(c for (k, l), c in self.counts.items() if l > k)
        return h1, h2


def _dp_python(N, snapshot_at=()):
    """Reference prefix-sum DP over exact Python integers.

    Each length step costs O(n^2) bigint additions. Returns the term list
    and any requested state snapshots.
    """
    snapshot_at = set(snapshot_at)
    terms = [1]
    snaps = {}
    if N == 0:
        return terms, snaps
    # C[k][l], valid k in 2..m+1, l in 1..m for current length m
    C = [[0, 0], [0, 0], [0, 1]]
    terms.append(1)
    if 1 in snapshot_at:
        snaps[1] = TreeStateTable(1, {(2, 1): 1})
    for m in range(1, N):
        K, L = m + 1, m
        S = [[0] * (L + 1) for _ in range(K + 1)]
        for k in range(2, K + 1):
            row = C[k]
            s = 0
            for l in range(1, L + 1):
                s += row[l]
                S[k][l] = s
        T = [S[k][L] for k in range(K + 1)]
        New = [[0] * (m + 2) for _ in range(m + 3)]
        # children with new lowest ascent top k+1 (rules for j <= old l or k)
        for kp in range(3, m + 3):
            src = kp - 1
            for j in range(1, min(kp, m + 2)):
                New[kp][j] += T[src] - S[src][j - 1]
        # children landing on the diagonal (j, j)
        for j in range(2, m + 2):
            acc = 0
            for k in range(j, K + 1):
                acc += S[k][j - 1]
            New[j][j] += acc
        # children keeping the ascent top, j above it
        for kp in range(2, K + 1):
            base = S[kp][min(kp, L)] + T[kp]
            for j in range(kp + 1, m + 2):
                New[kp][j] += base - S[kp][j - 1]
        C = New
        terms.append(sum(sum(r) for r in New))
        if m + 1 in snapshot_at:
            snaps[m + 1] = TreeStateTable(
                m + 1,
                {(k, l): C[k][l] for k in range(len(C))
                 for l in range(len(C[k])) if C[k][l]})
    return terms, snaps


def generating_tree_counts(N, snapshot_at=None, engine="auto",
                           max_terms=None):
    """Exact counts of Av(12-34) for lengths 0..N.

    engine "python" runs the exact-int reference, "kernel" the limb-array
    backend, "auto" picks by size. Snapshots force the python engine.
    Returns a CountSeries, or (CountSeries, {n: TreeStateTable}) when
    snapshot lengths are requested.
    """
    limit = (config.DEFAULT_DP_MAX_TERMS if max_terms is None else max_terms)
    if N > limit:
        raise ResourceGuardError(
            f"generating_tree_counts: N={N} exceeds term budget {limit}")
    want_snaps = snapshot_at is not None
    if want_snaps or engine == "python" or (engine == "auto" and N <= 80):
        terms, snaps = _dp_python(N, snapshot_at or ())
    elif engine in ("auto", "kernel"):
        from . import kernels
        terms, snaps = kernels.dp_terms(N), {}
    else:
        raise ValueError(f"unknown engine {engine!r}")
    series = CountSeries("av12-34", 0, terms)
    return (series, snaps) if want_snaps else series


def brute_force_avoider_count(pat, n, limit=None):
    """Count permutations of [n] avoiding the pattern, by full scan.

    The four patterns of the Wilf class run on the array backend; anything
    else goes through the generic matcher (fine up to n of about 8).
    """
    limit = config.PERM_SCAN_LIMIT if limit is None else limit
    if n > limit:
        raise ResourceGuardError(
            f"brute_force_avoider_count: n={n} exceeds scan limit {limit}")
    if n <= 1:
        return 1
    for pid, known in enumerate(WILF_CLASS):
        if pat == known:
            from . import kernels
            return kernels.count_avoiders(pid, n)
    count = 0
    for q in itertools.permutations(range(1, n + 1)):
        if not contains_pattern(Permutation(q), pat):
            count += 1
    return count
