"""Partitions of finite index sets with the join, meet and smash
(overlap-merging) operators, plus set families that may overlap.

Index elements only need to be hashable and mutually comparable; both
plain points (ints) and k-tuples are used as domains.
"""

from .errors import DomainError


def _canonical(classes):
    classes = [frozenset(c) for c in classes]
    if any(not c for c in classes):
        raise DomainError("empty class in partition")
    return tuple(sorted(classes, key=lambda c: min(c)))


class Partition:
    """Disjoint non-empty classes covering a finite domain.

    Canonical form: classes ordered by least element; rendering sorts
    elements within classes.
    """

    __slots__ = ("domain", "classes", "_index")

    def __init__(self, classes):
        classes = _canonical(classes)
        seen = set()
        for c in classes:
            if not c:
                raise DomainError("empty class in partition")
            if seen & c:
                raise DomainError(f"overlapping classes: {sorted(seen & c)}")
            seen |= c
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "domain", frozenset(seen))
        idx = {}
        for i, c in enumerate(classes):
            for x in c:
                idx[x] = i
        object.__setattr__(self, "_index", idx)

    def __setattr__(self, *a):
        raise AttributeError("Partition is immutable")

    @classmethod
    def discrete(cls, domain):
        return cls([{x} for x in domain])

    @classmethod
    def single(cls, domain):
        return cls([set(domain)])

    def class_of(self, x):
        return self.classes[self._index[x]]

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    @property
    def is_discrete(self):
        return len(self.classes) == len(self.domain)

    @property
    def is_single(self):
        return len(self.classes) == 1

    @property
    def is_trivial(self):
        return self.is_discrete or self.is_single

    def refines(self, other):
        """True when every class of self lies inside a class of other."""
        if self.domain != other.domain:
            raise DomainError("domain mismatch")
        return all(c <= other.class_of(min(c)) for c in self.classes)

    def render(self):
        return " | ".join(" ".join(str(x) for x in sorted(c)) for c in self.classes)

    def __repr__(self):
        return f"Partition({self.render()!r})"


def meet(p, r):
    """Coarsest common refinement: non-empty pairwise class intersections."""
    if p.domain != r.domain:
        raise DomainError("domain mismatch in meet")
    out = []
    for a in p.classes:
        for b in r.classes:
            c = a & b
            if c:
                out.append(c)
    return Partition(out)


def join(p, r):
    """Finest partition coarser than both: transitive closure of overlap."""
    if p.domain != r.domain:
        raise DomainError("domain mismatch in join")
    return _merge_overlapping(list(p.classes) + list(r.classes))[0]


def _merge_overlapping(sets):
    """Union-find merge of overlapping sets; returns (partition, was_disjoint)."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    disjoint = True
    seen_member = {}
    distinct = set()
    for s in sets:
        s = frozenset(s)
        if s in distinct:
            continue
        for x in s:
            if x in seen_member:
                disjoint = False
            seen_member[x] = True
        distinct.add(s)
        it = iter(s)
        first = next(it)
        if first not in parent:
            parent[first] = first
        root = find(first)
        for x in it:
            if x not in parent:
                parent[x] = root
            else:
                parent[find(x)] = root
                root = find(first)
    groups = {}
    for x in parent:
        groups.setdefault(find(x), set()).add(x)
    return Partition(groups.values()), disjoint


class SetFamily:
    """A set of non-empty subsets of a universe; members may overlap."""

    __slots__ = ("universe", "members")

    def __init__(self, members, universe=None):
        members = frozenset(frozenset(m) for m in members)
        if any(not m for m in members):
            raise DomainError("empty member in set family")
        union = frozenset().union(*members) if members else frozenset()
        if universe is None:
            universe = union
        else:
            universe = frozenset(universe)
            if not union <= universe:
                raise DomainError("member outside universe")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "universe", universe)

    def __setattr__(self, *a):
        raise AttributeError("SetFamily is immutable")

    def union(self):
        return frozenset().union(*self.members) if self.members else frozenset()

    def __eq__(self, other):
        return isinstance(other, SetFamily) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members, key=lambda c: min(c)))


def smash(family):
    """Merge overlapping members until disjoint.

    Returns (partition of the union, was_disjoint): was_disjoint is True
    when the distinct members were already pairwise disjoint (the family
    was a partition of its union rather than a proper covering).
    """
    if isinstance(family, SetFamily):
        members = family.members
    else:
        members = [frozenset(m) for m in family]
    if not members:
        return Partition([]), True
    return _merge_overlapping(list(members))
