"""Posets on [n], their incidence matrices, and partial-submatrix patterns.

Elements are 1-based everywhere in the public interface; the bitmask
representation underneath is 0-based. Row masks store the strict relation:
bit b of rows[a] means a+1 comes strictly below b+1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

from .config import DEFAULT_BRUTE_FORCE_LIMIT, ResourceGuardError


class PosetError(ValueError):
    """Input does not describe a strict partial order; .witness says why."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Poset:
    "A strict partial order on {1..n}."

    __slots__ = ("n", "_rows")

    def __init__(self, n, relations=()):
        if n < 0:
            raise ValueError("n must be non-negative")
        rows = [0] * n
        for a, b in relations:
            if not (1 <= a <= n and 1 <= b <= n):
                raise PosetError(f"relation ({a},{b}) out of range for n={n}")
            if a == b:
                raise PosetError(f"reflexive pair ({a},{b})", witness=a)
            rows[a - 1] |= 1 << (b - 1)
        # Warshall closure; a cycle shows up as a diagonal bit afterwards
        for k in range(n):
            rk = rows[k]
            bit = 1 << k
            for i in range(n):
                if rows[i] & bit:
                    rows[i] |= rk
        for i in range(n):
            if rows[i] >> i & 1:
                raise PosetError(
                    f"relation contains a cycle through element {i + 1}",
                    witness=i + 1)
        self.n = n
        self._rows = tuple(rows)

    @classmethod
    def _from_rows(cls, n, rows):
        "Trusted constructor: rows already closed, irreflexive, acyclic."
        self = object.__new__(cls)
        self.n = n
        self._rows = tuple(rows)
        return self

    # -- relation queries --------------------------------------------------

    def strict(self, a, b):
        "True iff a comes strictly below b."
        return bool(self._rows[a - 1] >> (b - 1) & 1)

    def leq(self, a, b):
        return a == b or self.strict(a, b)

    def downset(self, x):
        "All t with t strictly below x, ascending."
        return tuple(a + 1 for a in range(self.n) if self._rows[a] >> (x - 1) & 1)

    def upset(self, x):
        return tuple(b + 1 for b in range(self.n) if self._rows[x - 1] >> b & 1)

    def relations(self):
        "All strict pairs (a, b), sorted."
        out = []
        for a in range(self.n):
            m = self._rows[a]
            while m:
                b = (m & -m).bit_length() - 1
                m &= m - 1
                out.append((a + 1, b + 1))
        out.sort()
        return out

    def covers(self):
        "Covering pairs (a, b): a below b with nothing in between."
        col = self._column_masks()
        out = []
        for a in range(self.n):
            m = self._rows[a]
            while m:
                b = (m & -m).bit_length() - 1
                m &= m - 1
                if not (self._rows[a] & col[b]):
                    out.append((a + 1, b + 1))
        out.sort(key=lambda e: (e[1], e[0]))
        return out

    def minima(self):
        col = self._column_masks()
        return tuple(x + 1 for x in range(self.n) if not col[x])

    def maxima(self):
        return tuple(x + 1 for x in range(self.n) if not self._rows[x])

    def isolated(self):
        col = self._column_masks()
        return tuple(x + 1 for x in range(self.n)
                     if not col[x] and not self._rows[x])

    def _column_masks(self):
        "col[x] = bitmask of elements strictly below x+1."
        col = [0] * self.n
        for a in range(self.n):
            m = self._rows[a]
            while m:
                b = (m & -m).bit_length() - 1
                m &= m - 1
                col[b] |= 1 << a
        return col

    # -- matrix view ---------------------------------------------------------

    def to_matrix(self):
        "Incidence matrix: bits(i,j) = 1 iff i = j or i strictly below j."
        return IncidenceMatrix(
            self.n,
            tuple(r | (1 << i) for i, r in enumerate(self._rows)))

    @classmethod
    def from_matrix(cls, m):
        """Invert to_matrix, rejecting grids that are not poset matrices.

        Diagnostics name the witness: a missing diagonal entry i, an
        antisymmetry pair (i, j), or a transitivity triple (i, j, k).
        """
        n = m.n
        for i in range(n):
            if not m.rows[i] >> i & 1:
                raise PosetError(f"diagonal entry ({i+1},{i+1}) is 0",
                                 witness=i + 1)
        strict = [m.rows[i] & ~(1 << i) for i in range(n)]
        for i in range(n):
            mm = strict[i]
            while mm:
                j = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                if strict[j] >> i & 1:
                    raise PosetError(
                        f"antisymmetry violated by ({i+1},{j+1})",
                        witness=(i + 1, j + 1))
                missing = strict[j] & ~strict[i]
                if missing:
                    k = (missing & -missing).bit_length() - 1
                    raise PosetError(
                        f"transitivity violated by ({i+1},{j+1},{k+1})",
                        witness=(i + 1, j + 1, k + 1))
        return cls._from_rows(n, strict)

    # -- plumbing ------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Poset)
                and self.n == other.n and self._rows == other._rows)

    def __hash__(self):
        return hash((self.n, self._rows))

    def __repr__(self):
        return f"Poset({self.n}, {self.relations()!r})"

    def to_text(self):
        "One-line form `n; a<b,a<b,...` listing covering pairs."
        covers = ",".join(f"{a}<{b}" for a, b in self.covers())
        return f"{self.n}; {covers}" if covers else f"{self.n};"

    @classmethod
    def from_text(cls, line):
        head, _, tail = line.partition(";")
        try:
            n = int(head.strip())
        except ValueError:
            raise PosetError(f"bad size field in poset line: {head.strip()!r}")
        pairs = []
        for tok in tail.split(","):
            tok = tok.strip()
            if not tok:
                continue
            a, _, b = tok.partition("<")
            try:
                pairs.append((int(a), int(b)))
            except ValueError:
                raise PosetError(f"bad cover token {tok!r}")
        return cls(n, pairs)


class IncidenceMatrix:
    """A 0/1 grid bits(i,j), stored as row bitmasks including the diagonal.

    The grid of a poset has unit diagonal and encodes a transitive,
    antisymmetric relation; construction does not enforce that, so that
    Poset.from_matrix can reject bad grids with real diagnostics.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n, rows):
        rows = tuple(rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        if any(r >> n for r in rows):
            raise ValueError("row mask wider than n")
        self.n = n
        self.rows = rows

    def entry(self, i, j):
        return self.rows[i - 1] >> (j - 1) & 1

    def is_upper_triangular(self):
        return all(self.rows[i] & ((1 << i) - 1) == 0 for i in range(self.n))

    def to_text(self):
        return "\n".join(
            "".join(str(self.rows[i] >> j & 1) for j in range(self.n))
            for i in range(self.n))

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        n = len(lines)
        rows = []
        for i, ln in enumerate(lines):
            if len(ln) != n or set(ln) - {"0", "1"}:
                raise ValueError(f"matrix line {i + 1} is not {n} 0/1 chars")
            rows.append(sum(1 << j for j, ch in enumerate(ln) if ch == "1"))
        return cls(n, rows)

    def __eq__(self, other):
        return (isinstance(other, IncidenceMatrix)
                and self.n == other.n and self.rows == other.rows)

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"IncidenceMatrix({self.n}, {self.rows!r})"


# ---------------------------------------------------------------------------
# partial submatrix patterns

BLANK = None

@dataclass(frozen=True)
class MatrixPattern:
    """Partial submatrix: cells over {0, 1, BLANK}, plus diagonal anchors.

    An anchor (r, c) forces the host row chosen for pattern row r to equal
    the host column chosen for pattern column c, pinning that cell to the
    host's main diagonal. Anchor cells must carry constraint 1.
    """

    name: str
    cells: tuple
    anchors: frozenset

    def __post_init__(self):
        for (r, c) in self.anchors:
            if self.cells[r][c] != 1:
                raise ValueError(f"anchor ({r},{c}) of {self.name} is not a 1")

    @property
    def prows(self):
        return len(self.cells)

    @property
    def pcols(self):
        return len(self.cells[0])


M0_CORNER = MatrixPattern(
    "M0_CORNER",
    ((1, 0),
     (1, 1)),
    frozenset({(1, 0)}))

M0 = MatrixPattern(
    "M0",
    ((1, BLANK),
     (1, 1)),
    frozenset({(1, 0)}))

M1 = MatrixPattern(
    "M1",
    ((1, 0, 0),
     (1, 0, 0),
     (BLANK, 1, 1)),
    frozenset({(1, 0), (2, 1)}))

M2 = MatrixPattern(
    "M2",
    ((0, 1, 0),
     (1, 0, 1),
     (BLANK, 1, 0)),
    frozenset({(1, 0), (2, 1)}))

M3 = MatrixPattern(
    "M3",
    ((0, 0, 1),
     (1, 1, 0),
     (BLANK, 1, 0)),
    frozenset({(1, 0), (2, 1)}))

FORBIDDEN_PATTERNS = (M0, M1, M2, M3)


def pattern_assignments(n, pat):
    """Yield all (row_indices, col_indices) placements of pat in an n-host.

    Rows strictly increasing, columns strictly increasing, each anchor
    (r, c) forcing rowindex(r) == colindex(c). 0-based.
    """
    for rows in combinations(range(n), pat.prows):
        forced = {c: rows[r] for r, c in pat.anchors}
        for cols in combinations(range(n), pat.pcols):
            if all(cols[c] == v for c, v in forced.items()):
                yield rows, cols


def matches_pattern(m, pat, witness=False):
    """Does the partial submatrix pattern occur in incidence matrix m?

    With witness=True, return the first (rows, cols) placement (1-based)
    or None instead of a boolean.
    """
    if pat.prows > m.n or pat.pcols > m.n:
        return None if witness else False
    for rows, cols in pattern_assignments(m.n, pat):
        ok = True
        for r in range(pat.prows):
            hr = m.rows[rows[r]]
            for c in range(pat.pcols):
                want = pat.cells[r][c]
                if want is not BLANK and (hr >> cols[c] & 1) != want:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            if witness:
                return (tuple(x + 1 for x in rows),
                        tuple(x + 1 for x in cols))
            return True
    return None if witness else False


# ---------------------------------------------------------------------------
# families

class FamilyId(enum.Enum):
    NL = "nl"
    NL_3FREE = "nl-3free"
    NL_3FREE_NOISO = "nl-3free-noiso"
    NL_22FREE = "nl-22free"
    NL_3_22FREE = "nl-3-22free"
    STANLEY_GRAPH = "stanley-graph"


def is_natural(p):
    "Every strict pair (a, b) has a < b."
    return all(p._rows[a] & ((1 << (a + 1)) - 1) == 0 for a in range(p.n))


def is_three_free(p):
    "No chain x below y below z."
    for x in range(p.n):
        m = p._rows[x]
        while m:
            y = (m & -m).bit_length() - 1
            m &= m - 1
            if p._rows[y]:
                return False
    return True


def is_two_plus_two_free(p):
    """No induced pair of disjoint 2-chains.

    Definitional quadratic check over related pairs; the enumerator prunes
    via nested downsets instead, and a property test holds the two routes
    equal.
    """
    rel = []
    for a in range(p.n):
        m = p._rows[a]
        while m:
            b = (m & -m).bit_length() - 1
            m &= m - 1
            rel.append((a, b))
    for i in range(len(rel)):
        a, b = rel[i]
        for j in range(i + 1, len(rel)):
            c, d = rel[j]
            if len({a, b, c, d}) != 4:
                continue
            if any(p._rows[x] >> y & 1 or p._rows[y] >> x & 1
                   for x in (a, b) for y in (c, d)):
                continue
            return False
    return True


def has_isolated(p):
    return bool(p.isolated())


def _hasse_is_stanley(p):
    # no vertex of the cover graph with both smaller and larger neighbours
    nbr_lo = [False] * p.n
    nbr_hi = [False] * p.n
    for a, b in p.covers():
        nbr_hi[a - 1] = True
        nbr_lo[b - 1] = True
    return not any(lo and hi for lo, hi in zip(nbr_lo, nbr_hi))


def is_in_family(p, family):
    "Semantic membership test straight from the definitions."
    if family is FamilyId.NL:
        return is_natural(p)
    if family is FamilyId.NL_3FREE:
        return is_natural(p) and is_three_free(p)
    if family is FamilyId.NL_3FREE_NOISO:
        return is_natural(p) and is_three_free(p) and not has_isolated(p)
    if family is FamilyId.NL_22FREE:
        return is_natural(p) and is_two_plus_two_free(p)
    if family is FamilyId.NL_3_22FREE:
        return (is_natural(p) and is_three_free(p)
                and is_two_plus_two_free(p))
    if family is FamilyId.STANLEY_GRAPH:
        # independent route to NL_3FREE (cover graph view)
        return is_natural(p) and _hasse_is_stanley(p)
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# exhaustive generation
#
# Rows are chosen top-down (element 1 first). When row a is being chosen,
# every earlier row p with a in it constrains row a to a subset of row p;
# for naturally labelled posets that is the whole of transitivity, since
# any chain p < a < b has its lowest row fixed first. Candidate masks are
# emitted with column a+2 as the most significant bit, so the stream comes
# out in row-major lexicographic order without sorting.

def _iter_row_masks(n, three_free=False, tt_free=False, noiso=False):
    if n == 0:
        yield ()
        return
    rows = [0] * n
    col = [0] * n       # col[x] = downset mask of x, final once rows 0..x-1 are

    def rec(a):
        if noiso and a >= 1 and rows[a - 1] == 0 and col[a - 1] == 0:
            return
        if a == n:
            yield tuple(rows)
            return
        if three_free and col[a]:
            allowed = 0
        else:
            allowed = ((1 << n) - 1) & ~((1 << (a + 1)) - 1)
            m = col[a]
            while m:
                pr = (m & -m).bit_length() - 1
                m &= m - 1
                allowed &= rows[pr]
        # candidates are subsets of allowed, emitted in ascending order of
        # the reversed-bit key so the full stream is row-major lexicographic
        # (column a+2 most significant)
        w = n - 1 - a
        amask = 0
        for t in range(w):
            if allowed >> (a + 1 + t) & 1:
                amask |= 1 << (w - 1 - t)
        v = 0
        while True:
            S = 0
            vv = v
            while vv:
                t = (vv & -vv).bit_length() - 1
                vv &= vv - 1
                S |= 1 << (a + 1 + (w - 1 - t))
            rows[a] = S
            touched = []
            bb = S
            while bb:
                b = (bb & -bb).bit_length() - 1
                bb &= bb - 1
                col[b] |= 1 << a
                touched.append(b)
            if not tt_free or _downset_nests(col, a, n):
                yield from rec(a + 1)
            for b in touched:
                col[b] &= ~(1 << a)
            if v == amask:
                break
            v = (v - amask) & amask
        rows[a] = 0

    yield from rec(0)


def _downset_nests(col, a, n):
    # choosing row a finalizes the downset of element a+1; it must nest
    # with every earlier final downset for the poset to stay (2+2)-free
    if a + 1 >= n:
        return True
    d = col[a + 1]
    for x in range(a + 1):
        u = d | col[x]
        if u != d and u != col[x]:
            return False
    return True


def _family_flags(family):
    if family is FamilyId.NL:
        return {}
    if family is FamilyId.NL_3FREE:
        return {"three_free": True}
    if family is FamilyId.NL_3FREE_NOISO:
        return {"three_free": True, "noiso": True}
    if family is FamilyId.NL_22FREE:
        return {"tt_free": True}
    if family is FamilyId.NL_3_22FREE:
        return {"three_free": True, "tt_free": True}
    raise ValueError(f"family {family!r} is not enumerated over posets")


def enumerate_family(family, n, limit=None):
    """Yield every member of the family on [n] exactly once.

    Canonical order: lexicographic on the row-major incidence-matrix bits.
    Refuses n beyond the brute-force limit (default 8).
    """
    limit = DEFAULT_BRUTE_FORCE_LIMIT if limit is None else limit
    if n > limit:
        raise ResourceGuardError(
            f"enumerate_family: n={n} exceeds brute-force limit {limit}")
    if family is FamilyId.STANLEY_GRAPH:
        from .bijections import stanley_from_poset
        for rows in _iter_row_masks(n, three_free=True):
            yield stanley_from_poset(Poset._from_rows(n, rows))
        return
    flags = _family_flags(family)
    for rows in _iter_row_masks(n, **flags):
        p = Poset._from_rows(n, rows)
        if flags.get("three_free"):
            # every element of a 3-free poset is minimal or maximal
            assert all(not p.downset(x) or not p.upset(x)
                       for x in range(1, n + 1))
        yield p


def count_family(family, n, limit=None):
    "Stream length of enumerate_family, without building objects."
    limit = DEFAULT_BRUTE_FORCE_LIMIT if limit is None else limit
    if n > limit:
        raise ResourceGuardError(
            f"count_family: n={n} exceeds brute-force limit {limit}")
    if family is FamilyId.STANLEY_GRAPH:
        flags = {"three_free": True}
    else:
        flags = _family_flags(family)
    return sum(1 for _ in _iter_row_masks(n, **flags))


def count_family_by_minima(family, n, limit=None):
    "Counts split by number of minimal elements; index k of the result."
    limit = DEFAULT_BRUTE_FORCE_LIMIT if limit is None else limit
    if n > limit:
        raise ResourceGuardError(
            f"count_family_by_minima: n={n} exceeds limit {limit}")
    if family is FamilyId.STANLEY_GRAPH:
        flags = {"three_free": True}
    else:
        flags = _family_flags(family)
    out = [0] * (n + 1)
    for rmask in _iter_row_masks(n, **flags):
        have_pred = 0
        for a in range(n):
            have_pred |= rmask[a]
        k = n - bin(have_pred).count("1")
        out[k] += 1
    return out
