"""Fixed-point-free prime-power elements: direct search, quotient
lifting, the reduction pipeline, trace persistence, the terminal audit."""

import pytest

from korbits.catalog import transitive_catalog
from korbits.errors import DomainError, ParseError
from korbits.fks import (find_fpf_prime_power, fks_pipeline, iso_partitions,
                         lift_fpf, load_trace, parse_trace, preimages_of,
                         proof_audit, render_trace, replay_trace, save_trace,
                         trace_from_dict, trace_to_dict)
from korbits.group import (close_group, cyclic_group, dihedral_group,
                           klein_four_group, normalizer_in_sym,
                           symmetric_group)
from korbits.partition import Partition
from korbits.perm import analyze_element, parse_permutation


class TestDirectSearch:
    def test_s3(self):
        g = find_fpf_prime_power(symmetric_group(3))
        assert g == parse_permutation("(1 2 3)", 3)

    def test_c2(self):
        assert find_fpf_prime_power(cyclic_group(2)) == \
            parse_permutation("(1 2)", 2)

    def test_intransitive_may_have_none(self):
        G = close_group([parse_permutation("(1 2)", 3)])
        assert find_fpf_prime_power(G) is None

    def test_canonically_least(self):
        G = symmetric_group(4)
        g = find_fpf_prime_power(G)
        cands = [h for h in G.elements
                 if analyze_element(h).is_fpf_prime_power]
        assert g == min(cands, key=lambda h: h.images)

    @pytest.mark.parametrize("n", range(2, 8))
    def test_every_transitive_group_has_one(self, n):
        for entry in transitive_catalog(n):
            g = find_fpf_prime_power(entry.group())
            assert g is not None
            assert analyze_element(g).is_fpf_prime_power


class TestLift:
    def test_c6_lift(self):
        G = cyclic_group(6)
        Q = Partition([{1, 4}, {2, 5}, {3, 6}])
        g_quot = parse_permutation("(1 2 3)", 3)
        lifted = lift_fpf(G, Q, g_quot)
        assert lifted == parse_permutation("(1 3 5)(2 4 6)", 6)

    def test_every_preimage_lifts(self):
        G = dihedral_group(4)
        Q = Partition([{1, 3}, {2, 4}])
        g_quot = parse_permutation("(1 2)", 2)
        pre = preimages_of(G, Q, g_quot)
        assert len(pre) == 4
        for p in pre:
            lifted = lift_fpf(G, Q, g_quot, preimage=p)
            assert analyze_element(lifted).is_fpf_prime_power

    def test_rejects_non_fpf_quotient_element(self):
        G = dihedral_group(4)
        Q = Partition([{1, 3}, {2, 4}])
        with pytest.raises(DomainError):
            lift_fpf(G, Q, parse_permutation("()", 2))

    def test_rejects_non_prime_power_quotient_element(self):
        G = cyclic_group(12)
        Q = Partition([{1, 7}, {2, 8}, {3, 9}, {4, 10}, {5, 11}, {6, 12}])
        with pytest.raises(DomainError):
            lift_fpf(G, Q, parse_permutation("(1 2 3 4 5 6)", 6))

    def test_rejects_wrong_preimage(self):
        G = cyclic_group(6)
        Q = Partition([{1, 4}, {2, 5}, {3, 6}])
        with pytest.raises(DomainError):
            lift_fpf(G, Q, parse_permutation("(1 2 3)", 3),
                     preimage=parse_permutation("()", 6))

    def test_rejects_element_outside_quotient(self):
        G = cyclic_group(6)
        Q = Partition([{1, 4}, {2, 5}, {3, 6}])
        with pytest.raises(DomainError):
            preimages_of(G, Q, parse_permutation("(1 2)", 3))


class TestPipeline:
    def test_c6_quotients_to_degree_3(self):
        trace = fks_pipeline(cyclic_group(6))
        assert trace.steps[0]["kind"] == "quotient"
        assert trace.steps[0]["quotient_degree"] == 3
        assert trace.result["element"] == "(1 3 5)(2 4 6)"
        assert trace.result["prime"] == 3 and trace.result["power"] == 1

    def test_s3_descends(self):
        trace = fks_pipeline(symmetric_group(3))
        assert trace.steps[0]["kind"] == "descend-to-transitive-subgroup"
        assert trace.result["element"] == "(1 2 3)"

    def test_c5_terminal(self):
        trace = fks_pipeline(cyclic_group(5))
        assert trace.steps[0]["kind"] == "primitive-terminal"
        assert trace.steps[0]["audit"] is None
        assert "Abelian" in trace.steps[0]["audit_error"]
        assert trace.result["agrees"]

    def test_requires_transitive(self):
        with pytest.raises(DomainError):
            fks_pipeline(close_group([parse_permutation("(1 2)", 3)]))

    def test_result_always_verified(self):
        for n in range(2, 7):
            for entry in transitive_catalog(n):
                trace = fks_pipeline(entry.group())
                a = trace.analysis()
                assert a.is_fpf_prime_power
                assert a.order == trace.result["order"]
                assert trace.result["prime"] ** trace.result["power"] == \
                    trace.result["order"]

    def test_search_element_recorded(self):
        trace = fks_pipeline(klein_four_group())
        G = klein_four_group()
        assert trace.result["search_element"] == \
            find_fpf_prime_power(G).cycle_string()


class TestTracePersistence:
    def test_roundtrip_file(self, tmp_path):
        trace = fks_pipeline(dihedral_group(4))
        path = tmp_path / "d4.trace"
        save_trace(trace, path)
        assert load_trace(path) == trace

    def test_render_parse_roundtrip(self):
        trace = fks_pipeline(cyclic_group(6))
        assert parse_trace(render_trace(trace)) == trace

    def test_dict_roundtrip(self):
        trace = fks_pipeline(symmetric_group(4))
        assert trace_from_dict(trace_to_dict(trace)) == trace

    def test_replay(self):
        trace = fks_pipeline(cyclic_group(6))
        assert replay_trace(trace)

    def test_replay_detects_tampering(self):
        trace = fks_pipeline(cyclic_group(6))
        d = trace_to_dict(trace)
        d["result"]["element"] = "(1 4)(2 5)(3 6)"
        assert not replay_trace(trace_from_dict(d))

    @pytest.mark.parametrize("bad", [
        "not json\n",
        '{"record": "mystery"}\n',
        '{"record": "group", "degree": 3, "generators": ["(1 2 3)"]}\n',
        '{"record": "result", "element": "(1 2 3)"}\n',
        "",
    ])
    def test_parse_errors(self, bad):
        with pytest.raises(ParseError):
            parse_trace(bad)


class TestAudit:
    def test_rejects_intransitive(self):
        with pytest.raises(DomainError, match="intransitive"):
            proof_audit(close_group([parse_permutation("(1 2)", 3)]))

    def test_rejects_abelian_primitive(self):
        with pytest.raises(DomainError, match="not primitive"):
            proof_audit(cyclic_group(5))

    def test_rejects_imprimitive(self):
        with pytest.raises(DomainError, match="not primitive"):
            proof_audit(cyclic_group(4))

    def test_rejects_group_with_proper_transitive_subgroup(self):
        with pytest.raises(DomainError, match="proper transitive subgroup"):
            proof_audit(symmetric_group(4))

    def test_no_terminal_instance_at_small_degree(self):
        """Every paper-primitive group of degree <= 6 has a proper
        transitive subgroup, so the terminal case never fires there."""
        for n in range(2, 7):
            for entry in transitive_catalog(n):
                G = entry.group()
                with pytest.raises(DomainError):
                    proof_audit(G)


class TestIsoPartitions:
    def test_degree_must_divide(self):
        G = symmetric_group(4)
        assert iso_partitions(G, normalizer_in_sym(G), 3) == []

    def test_klein_pairs(self):
        G = klein_four_group()
        N = normalizer_in_sym(G)
        found = iso_partitions(G, N, 2)
        assert found
        for part, projs in found:
            assert all(len(c) == 2 for c in part.classes)
            assert len(projs) == len(part.classes)
