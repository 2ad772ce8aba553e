"""Permutation groups by full element enumeration: closure, orbits,
block systems, quotient actions, primitivity, and normalizers in the
symmetric group.

Desk scale by design: groups are closed into explicit element arrays
(cap configurable, default 10^6) so cosets and set-level operations have
exact, simple semantics.
"""

import functools
import itertools

import numpy as np

from . import _backend
from .errors import DomainError, ParseError, ResourceLimitError
from .partition import Partition
from .perm import Permutation, parse_permutation

DEFAULT_ELEMENT_CAP = 10 ** 6
DEFAULT_NORMALIZER_DEGREE_CAP = 8


def perm_to_row(p):
    return np.array([v - 1 for v in p.images], dtype=np.int64)


def row_to_perm(row):
    return Permutation(int(v) + 1 for v in row)


class PermGroup:
    """A fully enumerated permutation group of some degree.

    `images` holds every element as a 0-based image row, sorted
    lexicographically (the canonical element order); `keys` the matching
    encoded keys. Equality is by degree and element set.
    """

    __slots__ = ("degree", "generators", "images", "keys", "key_set", "order",
                 "_elements", "_inv_images", "_key_index")

    def __init__(self, degree, generators, images):
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "generators", tuple(generators))
        images = np.asarray(images, dtype=np.int64)
        keys = _backend.encode_rows(images, degree)
        if not np.all(np.diff(keys) > 0):
            order = np.argsort(keys)
            images = images[order]
            keys = keys[order]
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "keys", keys)
        object.__setattr__(self, "key_set", frozenset(int(k) for k in keys))
        object.__setattr__(self, "order", int(images.shape[0]))
        object.__setattr__(self, "_elements", None)
        object.__setattr__(self, "_inv_images", None)
        object.__setattr__(self, "_key_index", None)

    def __setattr__(self, *a):
        raise AttributeError("PermGroup is immutable")

    @property
    def elements(self):
        if self._elements is None:
            elems = tuple(row_to_perm(r) for r in self.images)
            object.__setattr__(self, "_elements", elems)
        return self._elements

    @property
    def inv_images(self):
        if self._inv_images is None:
            object.__setattr__(self, "_inv_images", np.argsort(self.images, axis=1))
        return self._inv_images

    def identity(self):
        return Permutation.identity(self.degree)

    def __contains__(self, p):
        if isinstance(p, Permutation):
            if p.degree != self.degree:
                return False
            key = int(_backend.encode_rows(perm_to_row(p)[None, :], self.degree)[0])
            return key in self.key_set
        return int(p) in self.key_set

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return (isinstance(other, PermGroup)
                and self.degree == other.degree
                and self.key_set == other.key_set)

    def __hash__(self):
        return hash((self.degree, self.key_set))

    def __repr__(self):
        gens = ", ".join(g.cycle_string() for g in self.generators) or "()"
        return f"PermGroup(degree={self.degree}, order={self.order}, <{gens}>)"


def close_group(generators, degree=None, max_elements=DEFAULT_ELEMENT_CAP):
    """Breadth-first closure of a generator list under composition."""
    generators = list(generators)
    if degree is None:
        if not generators:
            raise DomainError("empty generator list needs an explicit degree")
        degree = generators[0].degree
    if degree < 1:
        raise DomainError("degree must be positive")
    if degree > _backend.MAX_KEY_DEGREE:
        raise ResourceLimitError("max-degree", _backend.MAX_KEY_DEGREE, degree,
                                 flag="--max-degree")
    for g in generators:
        if g.degree != degree:
            raise DomainError(f"generator degree {g.degree} != {degree}")
    rows = np.array([perm_to_row(g) for g in generators], dtype=np.int64).reshape(-1, degree)
    images = _backend.closure_images(rows, degree, max_elements)
    return PermGroup(degree, generators, images)


def group_from_images(degree, images, generators=None):
    """Wrap an already-closed element array (trusted, not re-closed)."""
    images = np.asarray(images, dtype=np.int64)
    if generators is None:
        generators = reduce_generators(degree, images)
    return PermGroup(degree, generators, images)


def reduce_generators(degree, images):
    """Greedy small generating set for a closed element array."""
    images = np.asarray(images, dtype=np.int64)
    keys = _backend.encode_rows(images, degree)
    order = np.argsort(keys)
    gens = []
    have = close_group([], degree=degree)
    for idx in order:
        if images.shape[0] == have.order:
            break
        if int(keys[idx]) in have.key_set:
            continue
        gens.append(row_to_perm(images[idx]))
        have = close_group(gens, degree=degree)
    return tuple(gens)


def subgroup_from_rows(G, rows, generators=None):
    """Subgroup of G given its full (closed) element rows."""
    return group_from_images(G.degree, rows, generators=generators)


def is_subgroup(A, G):
    return A.degree == G.degree and A.key_set <= G.key_set


def conjugate_elementwise(G, h):
    """Keys of x*h*x^-1 for every x in G, aligned with G.images rows."""
    h0 = perm_to_row(h)
    t = h0[G.inv_images]
    conj = np.take_along_axis(G.images, t, axis=1)
    return _backend.encode_rows(conj, G.degree)


def conjugate_rows_by(rows, g, g_inv):
    """Rows of g*h*g^-1 for every row h in rows (0-based image rows)."""
    g0 = perm_to_row(g)
    ginv0 = perm_to_row(g_inv)
    return g0[rows[:, ginv0]]


# ---------------------------------------------------------------------------
# standard groups
# ---------------------------------------------------------------------------

def symmetric_group(n, max_elements=DEFAULT_ELEMENT_CAP):
    if n == 1:
        return close_group([], degree=1)
    gens = [parse_permutation("(1 2)", n)]
    if n > 2:
        gens.append(Permutation(list(range(2, n + 1)) + [1]))
    return close_group(gens, degree=n, max_elements=max_elements)


def alternating_group(n, max_elements=DEFAULT_ELEMENT_CAP):
    if n <= 2:
        return close_group([], degree=n)
    gens = [parse_permutation(f"(1 2 {k})", n) for k in range(3, n + 1)]
    return close_group(gens, degree=n, max_elements=max_elements)


def cyclic_group(n):
    return close_group([Permutation(list(range(2, n + 1)) + [1])], degree=n)


def dihedral_group(n):
    rot = Permutation(list(range(2, n + 1)) + [1])
    refl = Permutation([1 + (n + 1 - i) % n for i in range(1, n + 1)])
    return close_group([rot, refl], degree=n)


def klein_four_group():
    return close_group([parse_permutation("(1 2)(3 4)", 4),
                        parse_permutation("(1 3)(2 4)", 4)])


# ---------------------------------------------------------------------------
# orbits, blocks, quotients
# ---------------------------------------------------------------------------

def orbits_on_points(G):
    """Partition of 1..n into G-orbits."""
    n = G.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G.generators:
        for v in range(n):
            a, b = find(v), find(g(v + 1) - 1)
            if a != b:
                parent[a] = b
    groups = {}
    for v in range(n):
        groups.setdefault(find(v), set()).add(v + 1)
    return Partition(groups.values())


def is_transitive(G):
    return len(orbits_on_points(G)) == 1


def is_abelian(G):
    gens = G.generators
    return all(a * b == b * a for a in gens for b in gens)


def _pair_closure(G, beta):
    """Finest G-invariant partition of 1..n with 1 and beta together."""
    n = G.degree
    classes = Partition.discrete(range(1, n + 1))
    current = [set(c) for c in classes.classes]

    def merge_into(target_idx, src_idx, idx_of):
        current[target_idx] |= current[src_idx]
        for x in current[src_idx]:
            idx_of[x] = target_idx
        current[src_idx] = set()

    idx_of = {x: i for i, c in enumerate(current) for x in c}
    if idx_of[1] != idx_of[beta]:
        merge_into(idx_of[1], idx_of[beta], idx_of)
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            for c in [c for c in current if len(c) > 1]:
                imgs = {idx_of[g(x)] for x in c}
                if len(imgs) > 1:
                    it = iter(imgs)
                    tgt = next(it)
                    for other in it:
                        merge_into(tgt, other, idx_of)
                    changed = True
    return Partition(c for c in current if c)


def block_systems(G):
    """All minimal non-trivial G-invariant partitions of the point set.

    Empty list iff G is primitive in the classical sense.
    """
    if not is_transitive(G):
        raise DomainError("block_systems requires a transitive group")
    n = G.degree
    found = []
    for beta in range(2, n + 1):
        p = _pair_closure(G, beta)
        if not p.is_trivial and p not in found:
            found.append(p)
    minimal = [p for p in found
               if not any(q != p and q.refines(p) for q in found)]
    minimal.sort(key=lambda p: tuple(tuple(sorted(c)) for c in p.classes))
    return minimal


def invariant_partitions_bruteforce(G):
    """All non-trivial G-invariant partitions, by exhaustive search.

    Oracle-grade: exponential in the degree, for cross-checks only.
    """
    n = G.degree
    points = list(range(1, n + 1))
    out = []
    for p in _all_partitions(points):
        if len(p) in (1, n):
            continue
        part = Partition(p)
        if _is_invariant(G, part):
            out.append(part)
    return out


def _all_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _all_partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [p[i] | {first}] + p[i + 1:]
        yield p + [{first}]


def _is_invariant(G, part):
    for g in G.generators:
        for c in part.classes:
            img = frozenset(g(x) for x in c)
            if img not in part.classes:
                return False
    return True


def quotient_action(G, Q):
    """Induced group on the classes of a G-invariant partition Q,
    plus the element-to-element reduction map.

    Classes are numbered 1..|Q| in canonical order.
    """
    if Q.domain != frozenset(range(1, G.degree + 1)):
        raise DomainError("partition domain must be the full point set")
    if not _is_invariant(G, Q):
        raise DomainError("partition is not G-invariant")
    classes = Q.classes
    class_idx = {c: i + 1 for i, c in enumerate(classes)}

    def induced(g):
        imgs = []
        for c in classes:
            img = frozenset(g(x) for x in c)
            imgs.append(class_idx[img])
        return Permutation(imgs)

    mapping = {g: induced(g) for g in G.elements}
    image_rows = np.array(sorted({tuple(v - 1 for v in p.images) for p in mapping.values()}),
                          dtype=np.int64)
    quot = group_from_images(len(classes), image_rows,
                             generators=tuple(mapping[g] for g in G.generators))
    return quot, mapping


def is_primitive(G, convention="paper"):
    """Classical: transitive with no non-trivial block system.
    Paper convention: classical and non-Abelian."""
    if convention not in ("classical", "paper"):
        raise DomainError(f"unknown primitivity convention {convention!r}")
    if not is_transitive(G):
        raise DomainError("primitivity requires a transitive group")
    classical = not block_systems(G)
    if convention == "classical":
        return classical
    return classical and not is_abelian(G)


# ---------------------------------------------------------------------------
# normalizers
# ---------------------------------------------------------------------------

def _sym_images(n):
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


@functools.lru_cache(maxsize=256)
def normalizer_in_sym(G, max_degree=DEFAULT_NORMALIZER_DEGREE_CAP):
    """N_{S_n}(G) by filtering all n! permutations."""
    n = G.degree
    if n > max_degree:
        raise ResourceLimitError("max-degree", max_degree, n, flag="--max-degree")
    sym = group_from_images(n, _sym_images(n))
    return normalizer_in(sym, G)


def normalizer_in(W, G):
    """N_W(G) = {x in W : x G x^-1 = G}."""
    if G.degree != W.degree:
        raise DomainError("degree mismatch")
    gens = G.generators if G.generators else ()
    mask = np.ones(W.order, dtype=bool)
    for h in gens:
        keys = conjugate_elementwise(W, h)
        mask &= np.isin(keys, G.keys)
    rows = W.images[mask]
    return group_from_images(W.degree, rows)


# ---------------------------------------------------------------------------
# group files
# ---------------------------------------------------------------------------

def render_group(G):
    """Canonical text form: "degree n" then one generator per line in
    cycle notation with 1-based points."""
    lines = [f"degree {G.degree}"]
    lines += [g.cycle_string() for g in G.generators]
    return "\n".join(lines) + "\n"


def parse_group(text, max_elements=DEFAULT_ELEMENT_CAP):
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree":
                raise ParseError(f"line {lineno}: expected 'degree n', got {raw!r}")
            try:
                degree = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad degree {parts[1]!r}") from None
            if degree < 1:
                raise ParseError(f"line {lineno}: degree must be positive")
            continue
        gens.append(parse_permutation(line, degree))
    if degree is None:
        raise ParseError("missing 'degree n' header")
    return close_group(gens, degree=degree, max_elements=max_elements)


def save_group(G, path):
    with open(path, "w") as fh:
        fh.write(render_group(G))


def load_group(path, max_elements=DEFAULT_ELEMENT_CAP):
    with open(path) as fh:
        return parse_group(fh.read(), max_elements=max_elements)
