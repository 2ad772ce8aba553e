"""Catalogs of transitive groups of small degree, generated by
exhaustive subgroup enumeration of S_n, plus line-oriented persistence.

Generation is supported for degree <= 7 (|S_7| = 5040); larger degrees
enter via imported generator files and are flagged as such."""

import functools
from dataclasses import dataclass

from .errors import DomainError, ParseError
from .group import (close_group, is_abelian, is_primitive, is_transitive,
                    symmetric_group)
from .perm import parse_permutation
from .subgroups import DEFAULT_SUBGROUP_CAP, subgroup_classes

MAX_GENERATED_DEGREE = 7
MAX_IMPORT_DEGREE = 10


def enumerate_subgroups(G, max_order=DEFAULT_SUBGROUP_CAP):
    """Subgroup representatives of G up to G-conjugacy, canonically
    ordered (cyclic extension method; complete)."""
    return [cls.rep for cls in subgroup_classes(G, max_order=max_order)]


@dataclass(frozen=True)
class CatalogEntry:
    entry_id: str
    generators: tuple
    order: int
    transitive: bool
    primitive: bool   # classical convention
    abelian: bool

    def group(self):
        degree = self.generators[0].degree if self.generators else 1
        return close_group(self.generators, degree=degree)


@dataclass(frozen=True)
class GroupCatalog:
    degree: int
    entries: tuple
    provenance: str   # "generated" or "imported"

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def entry(self, entry_id):
        for e in self.entries:
            if e.entry_id == entry_id:
                return e
        raise KeyError(entry_id)


def _entry_from_group(entry_id, G):
    return CatalogEntry(
        entry_id=entry_id,
        generators=tuple(G.generators),
        order=G.order,
        transitive=is_transitive(G),
        primitive=is_transitive(G) and is_primitive(G, "classical"),
        abelian=is_abelian(G),
    )


@functools.lru_cache(maxsize=None)
def transitive_catalog(n, max_subgroup_order=DEFAULT_SUBGROUP_CAP):
    """All transitive subgroups of S_n up to conjugacy, degree <= 7."""
    if n < 1:
        raise DomainError("degree must be positive")
    if n > MAX_GENERATED_DEGREE:
        raise DomainError(
            f"catalog generation capped at degree {MAX_GENERATED_DEGREE}; "
            f"import a generator file for degree {n}")
    if n == 1:
        groups = [close_group([], degree=1)]
    else:
        classes = subgroup_classes(symmetric_group(n), max_order=max_subgroup_order)
        groups = [cls.rep for cls in classes if is_transitive(cls.rep)]
    entries = tuple(_entry_from_group(f"t{n}.{i + 1}", g)
                    for i, g in enumerate(groups))
    return GroupCatalog(degree=n, entries=entries, provenance="generated")


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------

def render_catalog(cat):
    lines = [f"# provenance: {cat.provenance}", f"degree {cat.degree}"]
    for e in cat.entries:
        gens = ", ".join(g.cycle_string() for g in e.generators)
        lines.append(f"{e.entry_id} | {e.order} | transitive:{int(e.transitive)} | {gens}")
    return "\n".join(lines) + "\n"


def parse_catalog(text):
    degree = None
    provenance = "imported"
    entries = []
    ids = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.startswith("provenance:"):
                provenance = body.split(":", 1)[1].strip()
            continue
        if not stripped:
            continue
        if degree is None:
            parts = stripped.split()
            if len(parts) != 2 or parts[0] != "degree":
                raise ParseError(f"line {lineno}: expected 'degree n'")
            degree = int(parts[1])
            continue
        fields = [f.strip() for f in stripped.split("|")]
        if len(fields) != 4:
            raise ParseError(f"line {lineno}: expected 4 '|'-separated fields")
        entry_id, order_s, trans_s, gens_s = fields
        if entry_id in ids:
            raise ParseError(f"line {lineno}: duplicate id {entry_id!r}")
        ids.add(entry_id)
        if not trans_s.startswith("transitive:") or trans_s[11:] not in ("0", "1"):
            raise ParseError(f"line {lineno}: bad transitive flag {trans_s!r}")
        gens = tuple(parse_permutation(s.strip(), degree)
                     for s in gens_s.split(",") if s.strip()) if gens_s else ()
        G = close_group(gens, degree=degree)
        if G.order != int(order_s):
            raise ParseError(
                f"line {lineno}: stated order {order_s} but closure has {G.order}")
        if is_transitive(G) != (trans_s[11:] == "1"):
            raise ParseError(f"line {lineno}: transitive flag does not match group")
        entries.append(_entry_from_group(entry_id, G))
    if degree is None:
        raise ParseError("missing 'degree n' header")
    if any(e.generators and e.generators[0].degree != degree for e in entries):
        raise ParseError("degree mismatch between header and generators")
    return GroupCatalog(degree=degree, entries=tuple(entries), provenance=provenance)


def save_catalog(cat, path):
    with open(path, "w") as fh:
        fh.write(render_catalog(cat))


def load_catalog(path):
    with open(path) as fh:
        return parse_catalog(fh.read())
