"""Transitive-group catalogs: counts, flags, persistence."""

import pytest

from korbits.catalog import (enumerate_subgroups, load_catalog, parse_catalog,
                             render_catalog, save_catalog, transitive_catalog)
from korbits.errors import DomainError, ParseError
from korbits.group import is_primitive, is_transitive, symmetric_group

# number of transitive groups of degree n up to conjugacy
EXPECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 5, 5: 5, 6: 16, 7: 7}


class TestGeneration:
    @pytest.mark.parametrize("n,count", sorted(EXPECTED_COUNTS.items()))
    def test_counts(self, n, count):
        assert len(transitive_catalog(n)) == count

    def test_entries_are_transitive_with_correct_flags(self):
        for e in transitive_catalog(6):
            G = e.group()
            assert e.transitive and is_transitive(G)
            assert e.order == G.order
            assert e.primitive == is_primitive(G, "classical")

    def test_ids_sequential(self):
        ids = [e.entry_id for e in transitive_catalog(5)]
        assert ids == [f"t5.{i}" for i in range(1, 6)]

    def test_entry_lookup(self):
        cat = transitive_catalog(4)
        assert cat.entry("t4.1").order >= 4
        with pytest.raises(KeyError):
            cat.entry("t4.99")

    def test_degree_cap(self):
        with pytest.raises(DomainError):
            transitive_catalog(8)
        with pytest.raises(DomainError):
            transitive_catalog(0)

    def test_largest_entry_is_symmetric(self):
        cat = transitive_catalog(5)
        assert max(e.order for e in cat) == 120

    def test_enumerate_subgroups_complete(self):
        reps = enumerate_subgroups(symmetric_group(4))
        assert len(reps) == 11


class TestPersistence:
    def test_roundtrip(self, tmp_path):
        cat = transitive_catalog(5)
        path = tmp_path / "deg5.cat"
        save_catalog(cat, path)
        loaded = load_catalog(path)
        assert loaded.degree == 5 and len(loaded) == len(cat)
        for a, b in zip(cat, loaded):
            assert a.entry_id == b.entry_id and a.order == b.order
            assert a.group() == b.group()

    def test_render_deterministic(self):
        cat = transitive_catalog(4)
        assert render_catalog(cat) == render_catalog(transitive_catalog(4))

    def test_provenance_preserved(self):
        text = render_catalog(transitive_catalog(3))
        assert parse_catalog(text).provenance == "generated"
        assert parse_catalog("degree 2\na | 2 | transitive:1 | (1 2)\n"
                             ).provenance == "imported"

    @pytest.mark.parametrize("bad", [
        "",                                              # no header
        "t2.1 | 2 | transitive:1 | (1 2)\n",             # entry before header
        "degree 2\nt2.1 | 2 | transitive:1\n",           # missing field
        "degree 2\nt2.1 | 3 | transitive:1 | (1 2)\n",   # wrong order
        "degree 2\nt2.1 | 2 | transitive:0 | (1 2)\n",   # wrong flag
        "degree 2\nt2.1 | 2 | trans:1 | (1 2)\n",        # bad flag field
        "degree 2\nt2.1 | 2 | transitive:1 | (1 2)\n"
        "t2.1 | 2 | transitive:1 | (1 2)\n",             # duplicate id
        "degree 2\nt2.1 | 2 | transitive:1 | (1 3)\n",   # point out of range
    ])
    def test_parse_errors(self, bad):
        with pytest.raises(ParseError):
            parse_catalog(bad)
