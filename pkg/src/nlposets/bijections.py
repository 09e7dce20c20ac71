"""Bijections between poset families, words, and coloured permutations.

The chain runs: {3,2+2}-free NL posets <-> labelled binary words <->
bicoloured permutations <-> permutations avoiding 43-12. Side bijections
link 3-free NL posets to Stanley graphs and to ring-decorated posets.
Vincular pattern containment lives here too, since the permutation end of
the chain is classified by the anchored pattern [3-12.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .posets import FamilyId, Poset, PosetError, is_in_family

BLUE = "b"
RED = "r"


class BijectionError(ValueError):
    "Input outside a map's domain; .witness pins the violated condition."

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PatternParseError(ValueError):
    "Malformed pattern text; .position is the offending 1-based character."

    def __init__(self, message, position):
        super().__init__(f"{message} (character {position})")
        self.position = position


# ---------------------------------------------------------------------------
# permutations

class Permutation:
    "A permutation of [n], 1-based values."

    __slots__ = ("values",)

    def __init__(self, values):
        values = tuple(values)
        n = len(values)
        if sorted(values) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of [{n}]: {values!r}")
        self.values = values

    @property
    def n(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"Permutation({self.values!r})"

    def to_text(self):
        return " ".join(str(v) for v in self.values)

    @classmethod
    def from_text(cls, text):
        "Space-separated values, or contiguous digits when n <= 9."
        text = text.strip()
        if not text:
            return cls(())
        if any(ch.isspace() for ch in text):
            return cls(int(tok) for tok in text.split())
        if text.isdigit():
            return cls(int(ch) for ch in text)
        raise ValueError(f"cannot read permutation from {text!r}")


# ---------------------------------------------------------------------------
# vincular patterns

@dataclass(frozen=True)
class VincularPattern:
    """A permutation pattern whose blocks must sit on adjacent positions.

    blocks: tuple of tuples of values; positions within a block are
    adjacent in the host, gaps between blocks are arbitrary (possibly
    empty). anchored: the first block must start at host position 1.
    fishburn: the one bivalue-adjacency pattern used for cross-checks,
    handled specially by the matcher.
    """

    blocks: tuple
    anchored: bool = False
    fishburn: bool = False

    def __post_init__(self):
        flat = [v for blk in self.blocks for v in blk]
        if not self.fishburn and sorted(flat) != list(range(1, len(flat) + 1)):
            raise ValueError(f"pattern values must form a permutation: {flat}")

    @property
    def size(self):
        return sum(len(b) for b in self.blocks)

    def to_text(self):
        if self.fishburn:
            return "fishburn"
        body = "-".join("".join(str(v) for v in blk) for blk in self.blocks)
        return ("[" if self.anchored else "") + body

    @classmethod
    def parse(cls, text):
        """Parse `[ optional, then digit blocks separated by - or --`.

        A run of three or more dashes, a stray character, or a dangling
        separator is reported with its character position.
        """
        if text == "fishburn":
            return FISHBURN
        pos = 0
        anchored = False
        if pos < len(text) and text[pos] == "[":
            anchored = True
            pos += 1
        blocks = []
        cur = []
        expect_digit = True
        while pos < len(text):
            ch = text[pos]
            if ch.isdigit():
                if ch == "0":
                    raise PatternParseError("pattern values start at 1",
                                            pos + 1)
                cur.append(int(ch))
                expect_digit = False
                pos += 1
            elif ch == "-":
                if expect_digit:
                    raise PatternParseError("separator not allowed here",
                                            pos + 1)
                dashes = 1
                while pos + dashes < len(text) and text[pos + dashes] == "-":
                    dashes += 1
                if dashes > 2:
                    raise PatternParseError("too many dashes", pos + 3)
                blocks.append(tuple(cur))
                cur = []
                expect_digit = True
                pos += dashes
            else:
                raise PatternParseError(f"unexpected character {ch!r}",
                                        pos + 1)
        if expect_digit:
            raise PatternParseError("pattern ends without a value", pos + 1)
        blocks.append(tuple(cur))
        return cls(tuple(blocks), anchored=anchored)


FISHBURN = VincularPattern(((2, 1), (3,)), fishburn=True)

P_12_34 = VincularPattern.parse("12-34")
P_12_43 = VincularPattern.parse("12-43")
P_21_43 = VincularPattern.parse("21-43")
P_43_12 = VincularPattern.parse("43-12")
P_3_12 = VincularPattern.parse("3-12")
P_ANCHORED_3_12 = VincularPattern.parse("[3-12")

WILF_CLASS = (P_12_34, P_12_43, P_21_43, P_43_12)


def _fishburn_occurrences(values, first_only):
    # adjacent ascent sigma(i) < sigma(i+1) whose bottom is one more than
    # a later value: sigma(j) + 1 = sigma(i), i < j
    out = []
    n = len(values)
    posn = {v: i for i, v in enumerate(values)}
    for i in range(n - 1):
        if values[i] < values[i + 1]:
            j = posn.get(values[i] - 1)
            if j is not None and j > i:
                out.append((i + 1, i + 2, j + 1))
                if first_only:
                    return out
    return out


def contains_pattern(p, pat, occurrences=False):
    """Does the vincular pattern occur in permutation p?

    With occurrences=True, return the list of all occurrences instead,
    each a tuple of 1-based host positions in pattern-position order
    (lexicographically sorted).
    """
    values = tuple(p)
    if pat.fishburn:
        occ = _fishburn_occurrences(values, first_only=not occurrences)
        return sorted(occ) if occurrences else bool(occ)
    n = len(values)
    k = pat.size
    flat = [v for blk in pat.blocks for v in blk]
    # starts[t] = index into the flattened pattern of block t's first value
    found = []
    chosen = []

    def ok_so_far():
        m = len(chosen)
        for i in range(m - 1):
            for j in range(i + 1, m):
                if (flat[i] < flat[j]) != (values[chosen[i]] < values[chosen[j]]):
                    return False
        return True

    def place_block(t, start_at):
        if t == len(pat.blocks):
            found.append(tuple(i + 1 for i in chosen))
            return not occurrences
        blk = pat.blocks[t]
        lo = 0 if (t == 0 and pat.anchored) else start_at
        hi = 1 if (t == 0 and pat.anchored) else n - len(blk) + 1
        for s in range(lo, hi):
            if s + len(blk) > n:
                break
            chosen.extend(range(s, s + len(blk)))
            if ok_so_far() and place_block(t + 1, s + len(blk)):
                return True
            del chosen[len(chosen) - len(blk):]
        return False

    if k > n:
        return [] if occurrences else False
    stop = place_block(0, 0)
    if occurrences:
        return sorted(found)
    return stop or bool(found)


# ---------------------------------------------------------------------------
# labelled binary words

class LabelledBinaryWord:
    """A word of letters in {0,1}, each carrying a label; labels form [n].

    Validity (checked by validate / required by decode_word):
      1. the first letter is 0
      2. labels on adjacent 0s strictly decrease
      3. labels on adjacent 1s strictly increase
      4. every 1's label exceeds all labels on earlier 0s
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple((int(c), int(l)) for c, l in entries)
        for c, _ in entries:
            if c not in (0, 1):
                raise ValueError(f"letters must be 0 or 1, got {c}")
        labels = sorted(l for _, l in entries)
        if labels != list(range(1, len(entries) + 1)):
            raise ValueError("labels must form a permutation of [n]")
        self.entries = entries

    @property
    def n(self):
        return len(self.entries)

    def validate(self):
        "Return None if valid, else (condition_id, position) 1-based."
        e = self.entries
        if e and e[0][0] != 0:
            return (1, 1)
        seen0max = 0
        for t, (c, l) in enumerate(e):
            if t:
                pc, pl = e[t - 1]
                if c == 0 and pc == 0 and pl <= l:
                    return (2, t + 1)
                if c == 1 and pc == 1 and pl >= l:
                    return (3, t + 1)
            if c == 1 and l < seen0max:
                return (4, t + 1)
            if c == 0:
                seen0max = max(seen0max, l)
        return None

    def is_valid(self):
        return self.validate() is None

    def to_text(self):
        return " ".join(f"{c}:{l}" for c, l in self.entries)

    @classmethod
    def from_text(cls, text):
        entries = []
        for tok in text.split():
            c, sep, l = tok.partition(":")
            if not sep:
                raise ValueError(f"bad word token {tok!r}")
            entries.append((int(c), int(l)))
        return cls(entries)

    def __eq__(self, other):
        return (isinstance(other, LabelledBinaryWord)
                and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"LabelledBinaryWord({self.entries!r})"


def encode_word(p):
    """Encode a {3,2+2}-free NL poset as a labelled binary word.

    The distinct downsets of non-minimal elements are nested; each is
    written as its new minimal labels (descending, letter 0) followed by
    the labels of maxima sitting exactly on it (ascending, letter 1).
    Isolated elements trail in descending order.
    """
    if not is_in_family(p, FamilyId.NL_3_22FREE):
        raise BijectionError("poset is not a {3,2+2}-free NL poset",
                             witness=p.to_text())
    n = p.n
    down = [0] * n
    for a in range(n):
        m = p._rows[a]
        while m:
            b = (m & -m).bit_length() - 1
            m &= m - 1
            down[b] |= 1 << a
    tops = [x for x in range(n) if down[x]]
    dsets = sorted({down[x] for x in tops}, key=lambda d: bin(d).count("1"))
    entries = []
    prev = 0
    for d in dsets:
        fresh = d & ~prev
        entries += [(0, x + 1) for x in range(n - 1, -1, -1)
                    if fresh >> x & 1]
        entries += [(1, x + 1) for x in tops if down[x] == d]
        prev = d
    entries += [(0, x + 1) for x in range(n - 1, -1, -1)
                if down[x] == 0 and p._rows[x] == 0]
    return LabelledBinaryWord(entries)


def decode_word(w):
    """Rebuild the poset: 0-labels add minimal elements, each 1-label adds
    a maximum covering all minima added so far."""
    bad = w.validate()
    if bad is not None:
        raise BijectionError(
            f"word violates condition {bad[0]} at position {bad[1]}",
            witness=bad)
    n = w.n
    rows = [0] * n
    minima = 0
    for c, l in w.entries:
        x = l - 1
        if c == 0:
            minima |= 1 << x
        else:
            m = minima
            while m:
                a = (m & -m).bit_length() - 1
                m &= m - 1
                rows[a] |= 1 << x
    return Poset._from_rows(n, rows)


# ---------------------------------------------------------------------------
# bicoloured permutations

class BicolouredPermutation:
    "A permutation with a blue/red colour on every position."

    __slots__ = ("perm", "colours")

    def __init__(self, perm, colours):
        if not isinstance(perm, Permutation):
            perm = Permutation(perm)
        colours = tuple(colours)
        if len(colours) != perm.n:
            raise ValueError("one colour per position required")
        if set(colours) - {BLUE, RED}:
            raise ValueError(f"colours must be {BLUE!r}/{RED!r}")
        self.perm = perm
        self.colours = colours

    @property
    def n(self):
        return self.perm.n

    def pairs(self):
        return tuple(zip(self.perm.values, self.colours))

    def validate(self):
        """Membership check for the coloured class; None if ok, else a
        (condition_id, positions) witness.

        1 first entry not blue; 2 blue-blue ascent; 3 red-red descent;
        4 blue entry before a smaller red entry.
        """
        vals, cols = self.perm.values, self.colours
        n = self.n
        if n and cols[0] != BLUE:
            return (1, (1,))
        maxblue = 0
        maxblue_at = 0
        for t in range(n):
            v, c = vals[t], cols[t]
            if t:
                pv, pc = vals[t - 1], cols[t - 1]
                if c == BLUE and pc == BLUE and pv < v:
                    return (2, (t, t + 1))
                if c == RED and pc == RED and pv > v:
                    return (3, (t, t + 1))
            if c == RED and v < maxblue:
                return (4, (maxblue_at, t + 1))
            if c == BLUE and v > maxblue:
                maxblue, maxblue_at = v, t + 1
        return None

    def is_valid(self):
        return self.validate() is None

    def to_text(self):
        return " ".join(f"{v}{c}" for v, c in self.pairs())

    @classmethod
    def from_text(cls, text):
        vals, cols = [], []
        for tok in text.split():
            if not tok[:-1].isdigit() or tok[-1] not in (BLUE, RED):
                raise ValueError(f"bad coloured token {tok!r}")
            vals.append(int(tok[:-1]))
            cols.append(tok[-1])
        return cls(vals, cols)

    def __eq__(self, other):
        return (isinstance(other, BicolouredPermutation)
                and self.perm == other.perm and self.colours == other.colours)

    def __hash__(self):
        return hash((self.perm, self.colours))

    def __repr__(self):
        return f"BicolouredPermutation({self.perm.values!r}, {self.colours!r})"


def enumerate_bicoloured(n):
    "All valid bicoloured permutations of [n], DFS order by (value, colour)."
    out = []
    seq_v, seq_c = [], []
    used = [False] * (n + 1)

    def rec(maxblue):
        if len(seq_v) == n:
            out.append(BicolouredPermutation(tuple(seq_v), tuple(seq_c)))
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            for c in (BLUE, RED):
                if not seq_v and c != BLUE:
                    continue
                if c == RED and v < maxblue:
                    continue
                if seq_v:
                    pv, pc = seq_v[-1], seq_c[-1]
                    if c == BLUE and pc == BLUE and pv < v:
                        continue
                    if c == RED and pc == RED and pv > v:
                        continue
                used[v] = True
                seq_v.append(v)
                seq_c.append(c)
                rec(max(maxblue, v) if c == BLUE else maxblue)
                seq_v.pop()
                seq_c.pop()
                used[v] = False

    rec(0)
    return out


def word_to_bicoloured(w):
    "Letter 0 becomes a blue entry, 1 a red entry; labels become values."
    bad = w.validate()
    if bad is not None:
        raise BijectionError(
            f"word violates condition {bad[0]} at position {bad[1]}",
            witness=bad)
    vals = [l for _, l in w.entries]
    cols = [BLUE if c == 0 else RED for c, _ in w.entries]
    return BicolouredPermutation(vals, cols)


def bicoloured_to_word(b):
    bad = b.validate()
    if bad is not None:
        raise BijectionError(
            f"colouring violates condition {bad[0]} at {bad[1]}",
            witness=bad)
    return LabelledBinaryWord(
        [(0 if c == BLUE else 1, v) for v, c in b.pairs()])


# ---------------------------------------------------------------------------
# the move-to-front map and its inverse

def _require_member(b):
    bad = b.validate()
    if bad is not None:
        raise BijectionError(
            f"colouring violates condition {bad[0]} at {bad[1]}",
            witness=bad)


def lambda_map(b):
    """Move marked points to the front, in increasing order.

    For every red-blue adjacent ascent with bottom P, the points of the
    descending run starting just after it that exceed P are marked. With
    no red-blue ascent the map just strips colours.
    """
    _require_member(b)
    vals, cols = b.perm.values, b.colours
    n = b.n
    marked = set()
    for i in range(n - 1):
        if cols[i] == RED and cols[i + 1] == BLUE and vals[i] < vals[i + 1]:
            P = vals[i]
            j = i + 1
            run = [j]
            while j + 1 < n and vals[j + 1] < vals[j]:
                j += 1
                run.append(j)
            newly = {t for t in run if vals[t] > P}
            if marked & newly:
                warnings.warn(
                    "marked runs of two ascents overlap; construction "
                    f"assumes disjointness: {b.to_text()}")
            marked |= newly
    front = sorted(vals[t] for t in marked)
    rest = [vals[t] for t in range(n) if t not in marked]
    return Permutation(front + rest)


def psi_map(s):
    """Inverse of lambda_map on inputs with an anchored 3-12 occurrence.

    Each initial-run point P is sent back after the rightmost adjacent
    ascent QR of the remainder with Q < R < P; reinserted groups are laid
    down in decreasing order. Moved points and descent bottoms turn blue,
    the remaining ascent tops red.
    """
    if not isinstance(s, Permutation):
        s = Permutation(s)
    if contains_pattern(s, P_43_12):
        raise BijectionError("input contains 43-12",
                             witness=contains_pattern(s, P_43_12, True)[0])
    if not contains_pattern(s, P_ANCHORED_3_12):
        raise BijectionError("input has no anchored 3-12 occurrence")
    vals = s.values
    n = s.n
    m = 1
    while m < n and vals[m] > vals[m - 1]:
        m += 1
    run, rest = vals[:m], vals[m:]
    groups = {}
    for P in run:
        rj = None
        for j in range(len(rest) - 1):
            if rest[j] < rest[j + 1] < P:
                rj = j
        if rj is None:
            # cannot happen: the rightmost remainder ascent under the
            # first value serves every initial-run point
            raise BijectionError("initial-run point has no landing ascent",
                                 witness=P)
        groups.setdefault(rj, []).append(P)
    out_v, out_c = [], []
    for j, v in enumerate(rest):
        out_v.append(v)
        out_c.append(BLUE if (j == 0 or v < rest[j - 1]) else RED)
        if j >= 1 and (j - 1) in groups:
            for P in sorted(groups[j - 1], reverse=True):
                out_v.append(P)
                out_c.append(BLUE)
    return BicolouredPermutation(out_v, out_c)


def lambda_full_inverse(s):
    """Recolour any 43-12 avoider into the unique coloured preimage.

    Avoiders without an anchored 3-12 get the forced colouring (first
    entry and descent bottoms blue, ascent tops red); the rest go through
    psi_map.
    """
    if not isinstance(s, Permutation):
        s = Permutation(s)
    if contains_pattern(s, P_43_12):
        raise BijectionError("input contains 43-12",
                             witness=contains_pattern(s, P_43_12, True)[0])
    if contains_pattern(s, P_ANCHORED_3_12):
        return psi_map(s)
    vals = s.values
    cols = [BLUE if (j == 0 or vals[j] < vals[j - 1]) else RED
            for j in range(s.n)]
    return BicolouredPermutation(vals, cols)


# ---------------------------------------------------------------------------
# Stanley graphs

class StanleyGraph:
    "A labelled graph; valid when no vertex has both smaller and larger neighbours."

    __slots__ = ("n", "edges")

    def __init__(self, n, edges):
        norm = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise ValueError(f"bad edge ({u},{v}) for n={n}")
            norm.add((min(u, v), max(u, v)))
        self.n = n
        self.edges = frozenset(norm)

    def bad_vertex(self):
        "A vertex with both smaller and larger neighbours, or None."
        lo = [False] * (self.n + 1)
        hi = [False] * (self.n + 1)
        for u, v in self.edges:
            hi[u] = True
            lo[v] = True
        for x in range(1, self.n + 1):
            if lo[x] and hi[x]:
                return x
        return None

    def is_valid(self):
        return self.bad_vertex() is None

    def to_text(self):
        body = ",".join(f"{u}-{v}" for u, v in sorted(self.edges))
        return f"{self.n}; {body}" if body else f"{self.n};"

    @classmethod
    def from_text(cls, line):
        head, _, tail = line.partition(";")
        n = int(head.strip())
        edges = []
        for tok in tail.split(","):
            tok = tok.strip()
            if not tok:
                continue
            u, _, v = tok.partition("-")
            edges.append((int(u), int(v)))
        return cls(n, edges)

    def __eq__(self, other):
        return (isinstance(other, StanleyGraph)
                and self.n == other.n and self.edges == other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"StanleyGraph({self.n}, {sorted(self.edges)!r})"


def stanley_from_poset(p):
    "Cover graph of a 3-free NL poset (covers are all strict pairs)."
    if not is_in_family(p, FamilyId.NL_3FREE):
        raise BijectionError("poset is not a 3-free NL poset",
                             witness=p.to_text())
    return StanleyGraph(p.n, p.relations())


def poset_from_stanley(g):
    bad = g.bad_vertex()
    if bad is not None:
        raise BijectionError(
            f"vertex {bad} has both smaller and larger neighbours",
            witness=bad)
    return Poset(g.n, sorted(g.edges))


# ---------------------------------------------------------------------------
# decorated posets

class DecoratedPoset:
    """A 3-free NL poset with no isolated elements, plus ring counts.

    rings[q] counts rings on base element q; index 0 is the invisible
    element preceding everything.
    """

    __slots__ = ("base", "rings")

    def __init__(self, base, rings):
        rings = tuple(int(r) for r in rings)
        if len(rings) != base.n + 1:
            raise ValueError("need one ring count per element plus slot 0")
        if any(r < 0 for r in rings):
            raise ValueError("ring counts are non-negative")
        if not is_in_family(base, FamilyId.NL_3FREE_NOISO):
            raise ValueError("base must be 3-free NL with no isolated element")
        self.base = base
        self.rings = rings

    @property
    def size(self):
        return self.base.n + sum(self.rings)

    def to_text(self):
        ring_part = ",".join(f"{q}:{r}" for q, r in enumerate(self.rings) if r)
        return f"{self.base.to_text()} | {ring_part}"

    @classmethod
    def from_text(cls, line):
        base_part, _, ring_part = line.partition("|")
        base = Poset.from_text(base_part.strip())
        rings = [0] * (base.n + 1)
        for tok in ring_part.split(","):
            tok = tok.strip()
            if not tok:
                continue
            q, _, r = tok.partition(":")
            rings[int(q)] = int(r)
        return cls(base, rings)

    def __eq__(self, other):
        return (isinstance(other, DecoratedPoset)
                and self.base == other.base and self.rings == other.rings)

    def __hash__(self):
        return hash((self.base, self.rings))

    def __repr__(self):
        return f"DecoratedPoset({self.base!r}, {self.rings!r})"


def decorated_encode(p):
    """Strip isolated elements into rings on the previously kept element.

    Elements are scanned in label order; non-isolated ones are appended to
    the base with relabelled relations.
    """
    if not is_in_family(p, FamilyId.NL_3FREE):
        raise BijectionError("poset is not a 3-free NL poset",
                             witness=p.to_text())
    iso = set(p.isolated())
    newlab = {}
    rings = [0]
    for x in range(1, p.n + 1):
        if x in iso:
            rings[-1] += 1
        else:
            newlab[x] = len(newlab) + 1
            rings.append(0)
    base = Poset(len(newlab),
                 [(newlab[a], newlab[b]) for a, b in p.relations()])
    return DecoratedPoset(base, rings)


def decorated_decode(d):
    "Reinsert rings[q] isolated elements directly after base element q."
    shift = [0] * (d.base.n + 1)
    acc = 0
    for q in range(d.base.n + 1):
        acc += d.rings[q]
        shift[q] = acc
    def orig(q):
        return q + shift[q - 1]
    rels = [(orig(a), orig(b)) for a, b in d.base.relations()]
    return Poset(d.size, rels)
