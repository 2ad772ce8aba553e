"""Fixed-point-free prime-power elements in transitive groups.

Every finite transitive permutation group contains a non-trivial
fixed-point-free element of prime-power order.  This module makes that
statement executable: direct element search, the quotient-lift lemma
(an fpf prime-power element of a quotient action lifts to one of the
full group via a coprime power of any preimage), a reduction pipeline
that runs the argument as far as it goes (imprimitive -> quotient and
lift; primitive with a proper transitive subgroup -> descend; terminal
primitive case -> audit), and the audit record for the terminal case.

Traces are line-delimited JSON with embedded generators, replayable and
roundtrip-stable.
"""

import json
from dataclasses import dataclass

from .errors import DomainError, ParseError
from .group import (block_systems, is_primitive, is_transitive,
                    normalizer_in_sym, quotient_action)
from .korbit import (automorphic_analysis, classify_coherence, orbit_of_tuple,
                     setwise_point_stabilizer, translates_of_kset)
from .partition import Partition
from .perm import Permutation, analyze_element, parse_permutation
from .subgroups import DEFAULT_SUBGROUP_CAP, subgroup_classes


def find_fpf_prime_power(G):
    """Canonically least element of G that moves every point and has
    prime-power order; None when no such element exists."""
    for g in G.elements:           # canonical (lexicographic) order
        if analyze_element(g).is_fpf_prime_power:
            return g
    return None


# ---------------------------------------------------------------------------
# quotient lift
# ---------------------------------------------------------------------------

def _perm_power(g, e):
    out = Permutation.identity(g.degree)
    base = g
    while e:
        if e & 1:
            out = out * base
        base = base * base
        e >>= 1
    return out


def preimages_of(G, Q, g_quot):
    """All g in G whose induced action on the classes of Q is g_quot,
    in canonical element order."""
    quot, mapping = quotient_action(G, Q)
    if g_quot.degree != quot.degree or g_quot not in quot:
        raise DomainError("element is not in the quotient image")
    return [g for g in G.elements if mapping[g] == g_quot]


def lift_fpf(G, Q, g_quot, preimage=None):
    """Lift an fpf prime-power element of the quotient action on Q to
    an fpf prime-power element of G.

    With |preimage| = p^m * d (gcd(d, p) = 1), the lift is preimage^d.
    The preimage defaults to the canonically least one; any preimage
    works and the postcondition is verified either way.
    """
    a_quot = analyze_element(g_quot)
    if not a_quot.is_fpf:
        raise DomainError("quotient element fixes a class (or is trivial)")
    if not a_quot.is_prime_power:
        raise DomainError(
            f"quotient element order {a_quot.order} is not a prime power")
    pre = preimages_of(G, Q, g_quot)
    if preimage is None:
        preimage = pre[0]
    elif preimage not in pre:
        raise DomainError("given preimage does not reduce to the quotient element")
    p = a_quot.prime_power_split[0][0]
    order = preimage.order()
    d = order
    while d % p == 0:
        d //= p
    lifted = _perm_power(preimage, d)
    a = analyze_element(lifted)
    if not a.is_fpf_prime_power:
        raise DomainError(
            f"lift postcondition failed: {lifted.cycle_string()} "
            f"has order {a.order} and fixes {sorted(a.fixed_points)}")
    return lifted


# ---------------------------------------------------------------------------
# terminal-case audit
# ---------------------------------------------------------------------------

def iso_partitions(G, N, k):
    """Partitions of the point set into k-element automorphic subsets of
    G that are pairwise N-isomorphic and whose n-orbit projections are
    pairwise N-isomorphic k-orbits.  Deterministic order."""
    n = G.degree
    if k < 1 or n % k != 0:
        return []
    report = automorphic_analysis(G)
    cands = sorted((s for s in report.subsets if len(s) == k), key=sorted)
    out = []

    def extend(chosen, covered):
        if len(covered) == n:
            out.append(tuple(chosen))
            return
        least = min(p for p in range(1, n + 1) if p not in covered)
        for s in cands:
            if least in s and not (s & covered):
                extend(chosen + [s], covered | s)

    extend([], frozenset())
    n_elems = [x for x in N.elements]
    qualified = []
    for classes in out:
        first = classes[0]
        class_orbit = {frozenset(x(v) for v in first) for x in n_elems}
        if not all(c in class_orbit for c in classes[1:]):
            continue
        projs = [orbit_of_tuple(G, tuple(sorted(c))) for c in classes]
        proj_orbit = {frozenset(x_proj.tuples)
                      for x_proj in translates_of_kset(N, projs[0])[0]}
        if not all(frozenset(p.tuples) in proj_orbit for p in projs[1:]):
            continue
        qualified.append((Partition(set(c) for c in classes), tuple(projs)))
    return qualified


def _transitive_proper_subgroups(G, max_order=DEFAULT_SUBGROUP_CAP):
    return [c.rep for c in subgroup_classes(G, max_order=max_order)
            if c.order < G.order and is_transitive(c.rep)]


def _restriction_order(A, points):
    pts = sorted(points)
    return len({tuple(g(v) for v in pts) for g in A.elements})


@dataclass(frozen=True)
class AuditRecord:
    """Findings for the terminal case: a primitive (non-Abelian) group
    with no proper transitive subgroup.

    Each boolean is recomputable from the embedded objects; `closed`
    states whether every object the reduction argument requires was
    actually found.
    """

    degree: int
    group_order: int
    normalizer_proper: bool
    normalizer_order: int
    chosen_k: int            # maximal automorphic divisor of the degree
    chosen_k_variant: int    # maximal automorphic divisor of the order
    partitions: tuple        # per-partition finding dicts
    closed: bool

    def as_dict(self):
        return {
            "degree": self.degree,
            "group_order": self.group_order,
            "normalizer_proper": self.normalizer_proper,
            "normalizer_order": self.normalizer_order,
            "chosen_k": self.chosen_k,
            "chosen_k_variant": self.chosen_k_variant,
            "partitions": [dict(p) for p in self.partitions],
            "closed": self.closed,
        }


def proof_audit(G, max_subgroup_order=DEFAULT_SUBGROUP_CAP):
    """Audit the reduction argument for the terminal case on G.

    Preconditions are checked and violations named: G must be
    transitive, primitive in the non-Abelian sense, and have no proper
    transitive subgroup.  Findings are reported even when they
    contradict the claims the audit is probing (e.g. no qualifying
    partition exists)."""
    if not is_transitive(G):
        raise DomainError("audit hypothesis violated: group is intransitive")
    if not is_primitive(G, "paper"):
        raise DomainError(
            "audit hypothesis violated: group is not primitive "
            "(non-Abelian convention)")
    trans = _transitive_proper_subgroups(G, max_order=max_subgroup_order)
    if trans:
        raise DomainError(
            "audit hypothesis violated: proper transitive subgroup "
            f"<{', '.join(g.cycle_string() for g in trans[0].generators)}> "
            f"of order {trans[0].order}")
    N = normalizer_in_sym(G)
    report = automorphic_analysis(G)
    k = report.max_automorphic_degree_divisor() or 1
    k_var = report.max_automorphic_order_divisor() or 1
    findings = []
    any_closed = False
    for part, projs in iso_partitions(G, N, k):
        el_coh = [classify_coherence(G, X).kind == "elementary-coherent"
                  for X in projs]
        sizes_ok = [len(X) == G.order for X in projs]
        A = setwise_point_stabilizer(G, min(part.classes, key=min))
        inv = [c for c in part.classes
               if {A_g(v) for A_g in A.generators for v in c} <= set(c)]
        iso = bool(inv) and all(_restriction_order(A, c) == A.order for c in inv)
        finding = {
            "classes": [sorted(c) for c in part.classes],
            "projections_elementary_coherent": el_coh,
            "orbit_size_equals_group_order": sizes_ok,
            "stabilizer_projection_isomorphic": iso,
        }
        findings.append(finding)
        any_closed = any_closed or (all(el_coh) and all(sizes_ok) and iso)
    return AuditRecord(
        degree=G.degree,
        group_order=G.order,
        normalizer_proper=N.order > G.order,
        normalizer_order=N.order,
        chosen_k=k,
        chosen_k_variant=k_var,
        partitions=tuple(findings),
        closed=(N.order > G.order) and any_closed,
    )


# ---------------------------------------------------------------------------
# reduction pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionTrace:
    """Ordered record of one pipeline run.

    steps are JSON-ready dicts of kind "quotient",
    "descend-to-transitive-subgroup" or "primitive-terminal"; result
    holds the reduction element, the independent direct-search element
    and whether they agree.  The result element always satisfies the
    fpf prime-power predicate.
    """

    degree: int
    generators: tuple      # cycle strings
    steps: tuple           # JSON-ready dicts
    result: dict

    def element(self):
        return parse_permutation(self.result["element"], self.degree)

    def analysis(self):
        return analyze_element(self.element())


def trace_to_dict(trace):
    return {"degree": trace.degree,
            "generators": list(trace.generators),
            "steps": [dict(s) for s in trace.steps],
            "result": dict(trace.result)}


def trace_from_dict(d):
    return ReductionTrace(degree=int(d["degree"]),
                          generators=tuple(d["generators"]),
                          steps=tuple(d["steps"]),
                          result=dict(d["result"]))


def fks_pipeline(G, max_subgroup_order=DEFAULT_SUBGROUP_CAP):
    """Run the reduction argument on a transitive group G and return a
    ReductionTrace ending in a verified fpf prime-power element.

    Imprimitive groups quotient by a minimal block system and lift;
    primitive non-Abelian groups descend to the canonically least
    proper transitive subgroup when one exists, and otherwise run
    proof_audit; Abelian groups with no block system (prime degree) go
    straight to direct search.  A direct search always runs last and
    disagreements with the reduction are recorded."""
    if not is_transitive(G):
        raise DomainError("the pipeline requires a transitive group")
    steps = []
    reduced = None
    # smallest imprimitivity blocks first (deepest quotient), canonically
    systems = sorted(block_systems(G),
                     key=lambda p: (max(len(c) for c in p.classes),
                                    tuple(tuple(sorted(c)) for c in p.classes)))
    if systems:
        for Q in systems:
            quot, _ = quotient_action(G, Q)
            sub = fks_pipeline(quot, max_subgroup_order=max_subgroup_order)
            g_quot = sub.element()
            try:
                lifted = lift_fpf(G, Q, g_quot)
            except DomainError as exc:
                steps.append({"kind": "quotient",
                              "blocks": [sorted(c) for c in Q.classes],
                              "quotient_degree": quot.degree,
                              "quotient_trace": trace_to_dict(sub),
                              "quotient_element": g_quot.cycle_string(),
                              "failed": str(exc)})
                continue
            steps.append({"kind": "quotient",
                          "blocks": [sorted(c) for c in Q.classes],
                          "quotient_degree": quot.degree,
                          "quotient_trace": trace_to_dict(sub),
                          "quotient_element": g_quot.cycle_string(),
                          "lifted": lifted.cycle_string()})
            reduced = lifted
            break
    elif is_primitive(G, "paper"):
        trans = _transitive_proper_subgroups(G, max_order=max_subgroup_order)
        if trans:
            A = trans[0]
            sub = fks_pipeline(A, max_subgroup_order=max_subgroup_order)
            reduced = sub.element()
            steps.append({"kind": "descend-to-transitive-subgroup",
                          "subgroup_generators": [g.cycle_string()
                                                  for g in A.generators],
                          "subgroup_order": A.order,
                          "subgroup_trace": trace_to_dict(sub),
                          "element": reduced.cycle_string()})
        else:
            try:
                audit = proof_audit(G, max_subgroup_order=max_subgroup_order).as_dict()
                audit_error = None
            except Exception as exc:   # caps; recorded, never fatal
                audit = None
                audit_error = str(exc)
            steps.append({"kind": "primitive-terminal",
                          "audit": audit, "audit_error": audit_error})
    else:
        steps.append({"kind": "primitive-terminal", "audit": None,
                      "audit_error": "Abelian group with no block system; "
                                     "direct search only"})
    search = find_fpf_prime_power(G)
    if search is None:
        raise DomainError("no fixed-point-free prime-power element exists "
                          "(contradicts the theorem for a transitive group)")
    element = reduced if reduced is not None else search
    a = analyze_element(element)
    if not a.is_fpf_prime_power:
        raise DomainError(f"pipeline produced an invalid element "
                          f"{element.cycle_string()}")
    p, m, _ = a.prime_power_split[0]
    return ReductionTrace(
        degree=G.degree,
        generators=tuple(g.cycle_string() for g in G.generators),
        steps=tuple(steps),
        result={"element": element.cycle_string(), "order": a.order,
                "prime": p, "power": m,
                "search_element": search.cycle_string(),
                "agrees": element == search})


def replay_trace(trace, max_subgroup_order=DEFAULT_SUBGROUP_CAP):
    """Re-run the pipeline on the trace's group; True when the rerun
    reproduces the trace exactly."""
    from .group import close_group

    gens = [parse_permutation(s, trace.degree) for s in trace.generators]
    G = close_group(gens, degree=trace.degree)
    return fks_pipeline(G, max_subgroup_order=max_subgroup_order) == trace


# ---------------------------------------------------------------------------
# trace files
# ---------------------------------------------------------------------------

def render_trace(trace):
    lines = [json.dumps({"record": "group", "degree": trace.degree,
                         "generators": list(trace.generators)},
                        sort_keys=True)]
    for s in trace.steps:
        lines.append(json.dumps({"record": "step", **s}, sort_keys=True))
    lines.append(json.dumps({"record": "result", **trace.result},
                            sort_keys=True))
    return "\n".join(lines) + "\n"


def parse_trace(text):
    degree = None
    generators = ()
    steps = []
    result = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            rec = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: bad JSON ({exc})") from None
        kind = rec.pop("record", None)
        if kind == "group":
            degree = int(rec["degree"])
            generators = tuple(rec["generators"])
        elif kind == "step":
            steps.append(rec)
        elif kind == "result":
            result = rec
        else:
            raise ParseError(f"line {lineno}: unknown record type {kind!r}")
    if degree is None or result is None:
        raise ParseError("trace file must contain group and result records")
    return ReductionTrace(degree=degree, generators=generators,
                          steps=tuple(steps), result=result)


def save_trace(trace, path):
    with open(path, "w") as fh:
        fh.write(render_trace(trace))


def load_trace(path):
    with open(path) as fh:
        return parse_trace(fh.read())
