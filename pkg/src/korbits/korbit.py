"""The k-orbit engine: left/right actions on tuples and tuple sets,
orbit computation on ordered k-tuples of distinct points, projections,
coordinate-set analysis, k-blocks, coherence classification,
stabilizers, tuple-set automorphism groups, coset partitions and
automorphic numbers.

k-tuples are plain Python tuples of 1-based points; a KSet is a
canonically sorted collection of them (the "matrix" view: one row per
tuple)."""

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DomainError, ParseError, ResourceLimitError
from .group import (PermGroup, group_from_images, is_subgroup, is_transitive,
                    perm_to_row)
from .partition import Partition, SetFamily, smash
from .perm import Permutation
from .subgroups import DEFAULT_SUBGROUP_CAP, subgroup_classes

DEFAULT_TUPLE_CAP = 10 ** 7
DEFAULT_AUT_POINT_CAP = 8


def check_ktuple(t):
    t = tuple(int(v) for v in t)
    if not t:
        raise DomainError("empty tuple")
    if any(v < 1 for v in t):
        raise DomainError(f"points must be 1-based: {t}")
    if len(set(t)) != len(t):
        raise DomainError(f"coordinates must be distinct: {t}")
    return t


class KSet:
    """A finite set of k-tuples of distinct points, canonically sorted."""

    __slots__ = ("arity", "tuples", "tag")

    def __init__(self, tuples, tag=None):
        tuples = sorted({check_ktuple(t) for t in tuples})
        if not tuples:
            raise DomainError("empty k-set")
        arity = len(tuples[0])
        if any(len(t) != arity for t in tuples):
            raise DomainError("mixed arities in k-set")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "tuples", tuple(tuples))
        object.__setattr__(self, "tag", tag)

    def __setattr__(self, *a):
        raise AttributeError("KSet is immutable")

    def __len__(self):
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    def __contains__(self, t):
        return tuple(t) in set(self.tuples)

    def __eq__(self, other):
        return isinstance(other, KSet) and self.tuples == other.tuples

    def __hash__(self):
        return hash(self.tuples)

    def union_of_points(self):
        return frozenset(v for t in self.tuples for v in t)

    def as_rows(self):
        """0-based numpy matrix view, one row per tuple."""
        return np.array(self.tuples, dtype=np.int64) - 1

    def render_matrix(self):
        return "\n".join(" ".join(str(v) for v in t) for t in self.tuples)

    def __repr__(self):
        inner = ", ".join("".join(map(str, t)) if max(t) <= 9
                          else str(t) for t in self.tuples[:6])
        if len(self.tuples) > 6:
            inner += ", ..."
        return f"KSet(k={self.arity}, {{{inner}}})"


def initial_tuple(n):
    return tuple(range(1, n + 1))


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

def left_act(g, s):
    """Coordinate-wise application g<v1..vk> = <g(v1)..g(vk)>."""
    if isinstance(s, KSet):
        if max(max(t) for t in s.tuples) > g.degree:
            raise DomainError("point out of range for this permutation")
        return KSet((left_act(g, t) for t in s.tuples), tag=s.tag)
    t = tuple(s)
    if max(t) > g.degree:
        raise DomainError("point out of range for this permutation")
    return tuple(g(v) for v in t)


def right_act(t, g):
    """Coordinate permutation <v_{g1}..v_{gn}>; defined only at full
    arity (arity equal to the permutation's degree)."""
    if isinstance(t, KSet):
        if t.arity != g.degree:
            raise DomainError("right action needs arity equal to the degree")
        return KSet((right_act(x, g) for x in t.tuples), tag=t.tag)
    t = tuple(t)
    if len(t) != g.degree:
        raise DomainError("right action needs arity equal to the degree")
    return tuple(t[g(i) - 1] for i in range(1, g.degree + 1))


@functools.lru_cache(maxsize=65536)
def orbit_of_tuple(G, t):
    """The G-orbit of one k-tuple."""
    t = check_ktuple(t)
    if max(t) > G.degree:
        raise DomainError("point out of range for this group")
    cols = np.array(t, dtype=np.int64) - 1
    rows = G.images[:, cols] + 1
    return KSet(map(tuple, {tuple(r) for r in rows.tolist()}))


def n_orbit(G):
    """The n-orbit of G: all rows g<1..n>, g in G."""
    return KSet(map(tuple, (G.images + 1).tolist()))


@functools.lru_cache(maxsize=4096)
def k_orbits(G, k, max_tuples=DEFAULT_TUPLE_CAP):
    """All G-orbits on non-diagonal k-tuples, ordered by least tuple."""
    n = G.degree
    if not 1 <= k <= n:
        raise DomainError(f"k must be in 1..{n}, got {k}")
    tuples, orbit_ids = _backend.tuple_orbits(G.images, k, max_tuples)
    n_orbits = int(orbit_ids.max()) + 1 if orbit_ids.size else 0
    buckets = [[] for _ in range(n_orbits)]
    tl = (tuples + 1).tolist()
    for row, oid in zip(tl, orbit_ids.tolist()):
        buckets[oid].append(tuple(row))
    return [KSet(b) for b in buckets]


def project(X, I):
    """Project each tuple of X onto the coordinate positions named by I
    (positions via the initial tuple), in I's order; deduplicated."""
    I = check_ktuple(I)
    if max(I) > X.arity:
        raise DomainError(f"position {max(I)} out of range for arity {X.arity}")
    idx = [i - 1 for i in I]
    return KSet(tuple(t[i] for i in idx) for t in X.tuples)


# ---------------------------------------------------------------------------
# coordinate sets, blocks, coherence
# ---------------------------------------------------------------------------

def co_analysis(X):
    """The family of coordinate sets of X and its smash: the merged
    partition of the union plus whether the family was already disjoint
    (a partition) or overlapping (a covering)."""
    fam = SetFamily(frozenset(t) for t in X.tuples)
    part, disjoint = smash(fam)
    return fam, part, disjoint


@dataclass(frozen=True)
class KBlock:
    """One k-block: the tuples sharing a coordinate set, with the
    automorphism group of the block and its transitivity on the k
    points (reported, not assumed)."""

    kset: "KSet"
    points: frozenset
    aut: "PermGroup"
    aut_transitive: bool


def k_blocks(X, max_aut_points=DEFAULT_AUT_POINT_CAP):
    """Group X's tuples by identical coordinate set.

    Returns (partition of X's tuples, list of KBlock in canonical
    order)."""
    by_co = {}
    for t in X.tuples:
        by_co.setdefault(frozenset(t), []).append(t)
    part = Partition(set(v) for v in by_co.values())
    blocks = []
    for co in sorted(by_co, key=lambda c: sorted(c)):
        ks = KSet(by_co[co])
        aut = aut_of_kset(ks, max_points=max_aut_points)
        blocks.append(KBlock(kset=ks, points=co, aut=aut,
                             aut_transitive=acts_transitively_on(aut, co)))
    return part, blocks


def acts_transitively_on(G, points):
    """Whether G acts transitively on the given point subset."""
    points = sorted(points)
    if not points:
        return True
    start = points[0] - 1
    seen = {start}
    queue = [start]
    gen_rows = [perm_to_row(g) for g in G.generators]
    while queue:
        v = queue.pop()
        for g in gen_rows:
            w = int(g[v])
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return set(p - 1 for p in points) <= seen


@dataclass(frozen=True)
class CoherenceVerdict:
    """Classification of a k-orbit.

    kind: "incoherent", "coherent" or "elementary-coherent".
    trivial: boundary cases (k = 1, or a single coordinate set).
    witness: incoherent -> the merged coordinate-set partition;
    coherent-but-not-elementary -> (U, suborbit) with U a proper point
    subset supporting the offending k-suborbit.
    """

    kind: str
    trivial: bool = False
    witness: object = None

    @property
    def is_coherent(self):
        return self.kind in ("coherent", "elementary-coherent")


@functools.lru_cache(maxsize=2048)
def classify_coherence(G, X, max_subgroup_order=DEFAULT_SUBGROUP_CAP):
    """Coherence classification of a k-orbit X of G."""
    first = X.tuples[0]
    if orbit_of_tuple(G, first) != X:
        raise DomainError("X is not a k-orbit of G")
    if X.arity == 1:
        return CoherenceVerdict(kind="coherent", trivial=True)
    fam, part, disjoint = co_analysis(X)
    if len(part) > 1:
        return CoherenceVerdict(kind="incoherent", witness=part)
    if len(fam) == 1:
        return CoherenceVerdict(kind="coherent", trivial=True)
    v_points = part.domain
    for cls in subgroup_classes(G, max_order=max_subgroup_order):
        if cls.order == 1:
            continue
        sub = orbits_on_kset(cls.rep, X)
        for yc in sub.classes:
            if len(yc) < 2:
                continue
            u = frozenset(v for t in yc for v in t)
            if u < v_points:
                return CoherenceVerdict(kind="coherent",
                                        witness=(u, KSet(yc)))
    return CoherenceVerdict(kind="elementary-coherent")


# ---------------------------------------------------------------------------
# stabilizers and automorphism groups
# ---------------------------------------------------------------------------

def _kset_keys(X, n):
    return np.sort(_backend.encode_rows(X.as_rows(), n))


def _elements_fixing_kset(G, Y):
    """Mask over G.images rows of elements g with gY = Y."""
    rows = Y.as_rows()
    imgs = G.images[:, rows]               # (|G|, |Y|, k)
    pw = _backend.powers_for(G.degree, Y.arity)
    keys = imgs @ pw                        # (|G|, |Y|)
    keys.sort(axis=1)
    target = _kset_keys(Y, G.degree)
    return np.all(keys == target[None, :], axis=1)


@functools.lru_cache(maxsize=32768)
def stab_of_ksuborbit(G, Y):
    """Setwise stabilizer {g in G : gY = Y} and whether it acts
    transitively on Y's tuples."""
    if len(Y) == 0:
        raise DomainError("empty k-suborbit")
    if max(Y.union_of_points()) > G.degree:
        raise DomainError("point out of range for this group")
    mask = _elements_fixing_kset(G, Y)
    stab = group_from_images(G.degree, G.images[mask])
    transitive = orbit_of_tuple(stab, Y.tuples[0]) == Y
    return stab, transitive


def pointwise_tuple_stabilizer(G, t):
    """{g in G : g fixes every coordinate of t}."""
    t = check_ktuple(t)
    cols = np.array(t, dtype=np.int64) - 1
    mask = np.all(G.images[:, cols] == cols[None, :], axis=1)
    return group_from_images(G.degree, G.images[mask])


def setwise_point_stabilizer(G, points):
    """{g in G : g maps the point set onto itself}."""
    pts = np.array(sorted(p - 1 for p in points), dtype=np.int64)
    imgs = np.sort(G.images[:, pts], axis=1)
    mask = np.all(imgs == pts[None, :], axis=1)
    return group_from_images(G.degree, G.images[mask])


def sym_on_points(points, degree):
    """Sym(points) embedded at the given degree, fixing other points."""
    pts = sorted(points)
    rows = []
    base = np.arange(degree, dtype=np.int64)
    for perm in itertools.permutations(pts):
        row = base.copy()
        for src, dst in zip(pts, perm):
            row[src - 1] = dst - 1
        rows.append(row)
    return np.stack(rows)


@functools.lru_cache(maxsize=4096)
def aut_of_kset(X, degree=None, max_points=DEFAULT_AUT_POINT_CAP):
    """{s in Sym(union of coordinate sets) : sX = X}, embedded at the
    ambient degree (default: the largest point of X)."""
    u = sorted(X.union_of_points())
    if len(u) > max_points:
        raise ResourceLimitError("max-aut-points", max_points, len(u),
                                 flag="--max-degree")
    if degree is None:
        degree = max(u)
    rows = X.as_rows()
    pw = _backend.powers_for(degree, X.arity)
    target = np.sort(rows @ pw)
    t0 = X.tuples[0]
    rest0 = [p for p in u if p not in t0]
    base = np.arange(degree, dtype=np.int64)
    out = []
    for t1 in X.tuples:
        rest1 = [p for p in u if p not in t1]
        for perm in itertools.permutations(rest1):
            cand = base.copy()
            for src, dst in zip(t0, t1):
                cand[src - 1] = dst - 1
            for src, dst in zip(rest0, perm):
                cand[src - 1] = dst - 1
            keys = np.sort(cand[rows] @ pw)
            if np.array_equal(keys, target):
                out.append(cand)
    return group_from_images(degree, np.stack(out))


# ---------------------------------------------------------------------------
# suborbits and coset partitions
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=32768)
def orbits_on_kset(A, X):
    """Partition of X's tuples into A-orbits (X must be A-invariant)."""
    index = {t: i for i, t in enumerate(X.tuples)}
    parent = list(range(len(X.tuples)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in A.generators:
        for t, i in index.items():
            img = left_act(g, t)
            j = index.get(img)
            if j is None:
                raise DomainError("k-set is not invariant under the subgroup")
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups = {}
    for t, i in index.items():
        groups.setdefault(find(i), set()).add(t)
    return Partition(groups.values())


@functools.lru_cache(maxsize=32768)
def translates_of_kset(G, Y):
    """Deduplicated left translates {gY : g in G}, ordered by least
    tuple, plus whether they form a partition of their union."""
    rows = Y.as_rows()
    pw = _backend.powers_for(G.degree, Y.arity)
    imgs = G.images[:, rows]                    # (|G|, |Y|, k)
    keys = np.sort(imgs @ pw, axis=1)           # (|G|, |Y|)
    _, first = np.unique(keys, axis=0, return_index=True)
    classes = [KSet(map(tuple, (imgs[i] + 1).tolist())) for i in sorted(first)]
    classes.sort(key=lambda ks: ks.tuples[0])
    total = sum(len(c) for c in classes)
    union = {t for c in classes for t in c.tuples}
    return classes, total == len(union)


@dataclass(frozen=True)
class CosetKPartitions:
    """Left translates L_k = GY_k (partition or covering of X_k) and
    the partition R_k of X_k into A-orbits."""

    x_orbit: "KSet"
    y_orbit: "KSet"
    left_classes: tuple
    left_is_partition: bool
    right: "Partition"


def coset_k_partitions(G, A, I):
    if not is_subgroup(A, G):
        raise DomainError("A is not a subgroup of G")
    I = check_ktuple(I)
    X = orbit_of_tuple(G, I)
    Y = orbit_of_tuple(A, I)
    left, is_part = translates_of_kset(G, Y)
    right = orbits_on_kset(A, X)
    return CosetKPartitions(x_orbit=X, y_orbit=Y, left_classes=tuple(left),
                            left_is_partition=is_part, right=right)


# ---------------------------------------------------------------------------
# automorphic numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AutomorphicReport:
    """Which k admit a k-element point suborbit, for k ranging over the
    divisors of |G| and, separately, of the degree."""

    order_divisors: tuple     # (k, bool) pairs, k | |G|
    degree_divisors: tuple    # (k, bool) pairs, k | n
    subsets: tuple            # all automorphic subsets, sorted

    def max_automorphic_degree_divisor(self):
        hits = [k for k, ok in self.degree_divisors if ok]
        return max(hits) if hits else None

    def max_automorphic_order_divisor(self):
        hits = [k for k, ok in self.order_divisors if ok]
        return max(hits) if hits else None


def _divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


@functools.lru_cache(maxsize=128)
def automorphic_analysis(G, max_subgroup_order=DEFAULT_SUBGROUP_CAP):
    from .group import orbits_on_points

    classes = subgroup_classes(G, max_order=max_subgroup_order)
    sizes = set()
    subsets = set()
    for cls in classes:
        orbs = orbits_on_points(cls.rep)
        for c in orbs.classes:
            sizes.add(len(c))
            for r in range(G.order):
                img = frozenset(int(G.images[r][p - 1]) + 1 for p in c)
                subsets.add(img)
    order_div = tuple((k, k in sizes) for k in _divisors(G.order))
    degree_div = tuple((k, k in sizes) for k in _divisors(G.degree))
    return AutomorphicReport(order_divisors=order_div,
                             degree_divisors=degree_div,
                             subsets=tuple(sorted(subsets, key=sorted)))


# ---------------------------------------------------------------------------
# k-set files
# ---------------------------------------------------------------------------

def render_kset(X):
    """Exchange form: "arity k" header, one space-separated tuple per
    line, canonical order."""
    lines = [f"arity {X.arity}"]
    lines += [" ".join(str(v) for v in t) for t in X.tuples]
    return "\n".join(lines) + "\n"


def parse_kset(text):
    arity = None
    tuples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if arity is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "arity":
                raise ParseError(f"line {lineno}: expected 'arity k', got {raw!r}")
            try:
                arity = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad arity {parts[1]!r}") from None
            if arity < 1:
                raise ParseError(f"line {lineno}: arity must be positive")
            continue
        try:
            t = tuple(int(p) for p in line.split())
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer point in {raw!r}") from None
        if len(t) != arity:
            raise ParseError(f"line {lineno}: expected {arity} points, got {len(t)}")
        tuples.append(t)
    if arity is None:
        raise ParseError("missing 'arity k' header")
    if not tuples:
        raise ParseError("k-set file lists no tuples")
    return KSet(tuples)


def save_kset(X, path):
    with open(path, "w") as fh:
        fh.write(render_kset(X))


def load_kset(path):
    with open(path) as fh:
        return parse_kset(fh.read())


# ---------------------------------------------------------------------------
# matrix rendering
# ---------------------------------------------------------------------------

def render_norbit(G, chain):
    """Plain-text bordered matrix of the n-orbit of G, rows grouped into
    cells by the left-coset partitions of the nested chain subgroups,
    columns grouped by the finest chain subgroup's point orbits."""
    from .group import orbits_on_points

    if not chain or chain[-1] != G:
        raise DomainError("chain must end at the group itself")
    for a, b in zip(chain, chain[1:]):
        if not is_subgroup(a, b):
            raise DomainError("chain is not nested by inclusion")
    n = G.degree
    ident = initial_tuple(n)
    if len(chain) == 1:
        col_groups = [tuple(range(1, n + 1))]
    else:
        col_groups = [tuple(sorted(c)) for c in orbits_on_points(chain[0]).classes]

    def fmt_row(t):
        sep = "" if n <= 9 else ","
        return " ".join(sep.join(str(t[p - 1]) for p in grp) for grp in col_groups)

    rows_all = sorted(orbit_of_tuple(G, ident).tuples)
    width = len(fmt_row(rows_all[0]))
    sep_chars = "-=~*"

    def render_level(level, tuples):
        if level < 0:
            return [fmt_row(t) for t in tuples]
        sub = chain[level]
        y = orbit_of_tuple(sub, tuples[0])
        classes, _ = translates_of_kset(G, y)
        wanted = set(tuples)
        cells = sorted((sorted(set(c.tuples) & wanted)
                        for c in classes if set(c.tuples) & wanted),
                       key=lambda c: c[0])
        sep = sep_chars[min(level, len(sep_chars) - 1)] * width
        lines = []
        for i, c in enumerate(cells):
            if i:
                lines.append(sep)
            lines.extend(render_level(level - 1, c))
        return lines

    return "\n".join(render_level(len(chain) - 2, rows_all)) + "\n"
