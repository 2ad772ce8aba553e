"""A registry of machine checks for the structural claims relating
k-orbits, suborbits, stabilizers, automorphism groups and normal
subgroups, runnable one at a time or as a suite over a group catalog.

Each check evaluates a hypothesis on a concrete context (a group plus,
as needed, subgroups, an arity k, a tuple or explicit suborbits) and
returns pass, fail-with-witness, or inapplicable when the hypothesis
does not hold.  A failing check is a finding about the claim, not an
error; its witness is self-contained and replayable.  Contexts are
plain JSON dictionaries so reports and witnesses serialize directly.
"""

import functools
import json
from dataclasses import dataclass

from .errors import DomainError, ResourceLimitError
from .group import (alternating_group, close_group, is_abelian, is_primitive,
                    is_transitive, normalizer_in, normalizer_in_sym)
from .korbit import (KSet, aut_of_kset, automorphic_analysis,
                     classify_coherence, k_blocks, k_orbits, orbit_of_tuple,
                     orbits_on_kset, pointwise_tuple_stabilizer,
                     setwise_point_stabilizer, stab_of_ksuborbit,
                     translates_of_kset)
from .partition import Partition, join, meet
from .perm import parse_permutation
from .subgroups import DEFAULT_SUBGROUP_CAP, subgroup_classes

DEFAULT_PAIR_CAP = 200


# ---------------------------------------------------------------------------
# results and context plumbing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check on one context.

    verdict is "pass", "fail", "inapplicable" or (suite only) "skipped";
    a fail always carries a witness dict whose "context" key replays to
    fail through run_check alone; an inapplicable result records the
    hypothesis failure in reason; notes hold auxiliary recorded facts
    that are not part of the verdict."""

    check_id: str
    context: dict
    verdict: str
    reason: str = None
    witness: dict = None
    notes: dict = None

    def to_record(self):
        return {"check": self.check_id, "context": self.context,
                "verdict": self.verdict, "reason": self.reason,
                "witness": self.witness, "notes": self.notes}


def _pass(check_id, ctx, notes=None):
    return CheckResult(check_id, ctx, "pass", notes=notes)


def _fail(check_id, ctx, detail, witness_ctx=None, notes=None):
    return CheckResult(check_id, ctx, "fail",
                       witness={"context": witness_ctx or ctx,
                                "detail": detail},
                       notes=notes)


def _na(check_id, ctx, reason):
    return CheckResult(check_id, ctx, "inapplicable", reason=reason)


def _ser_group(G):
    return [g.cycle_string() for g in G.generators]


@functools.lru_cache(maxsize=4096)
def _deser_group(degree, gen_strings):
    gens = [parse_permutation(s, degree) for s in gen_strings]
    return close_group(gens, degree=degree)


def _ctx_group(ctx, key="group"):
    return _deser_group(int(ctx["degree"]), tuple(ctx[key]))


def _ser_kset(Y):
    return [list(t) for t in Y.tuples]


def _base_ctx(G, group_id=None):
    ctx = {"degree": G.degree, "group": _ser_group(G)}
    if group_id is not None:
        ctx["group_id"] = group_id
    return ctx


# ---------------------------------------------------------------------------
# shared group predicates
# ---------------------------------------------------------------------------

def _is_normal(H, G):
    return all(h.conjugate(g) in H
               for g in G.generators for h in H.generators)


def _group_intersection(A, B):
    from .group import group_from_images
    import numpy as np

    keys = sorted(A.key_set & B.key_set)
    idx = {int(k): i for i, k in enumerate(A.keys)}
    rows = np.stack([A.images[idx[k]] for k in keys])
    return group_from_images(A.degree, rows)


@functools.lru_cache(maxsize=16384)
def _join_groups(A, B, degree):
    return close_group(list(A.generators) + list(B.generators), degree=degree)


def _normal_proper_nontrivial(G, max_order):
    out = []
    for cls in subgroup_classes(G, max_order=max_order):
        if len(cls.conjugates) == 1 and 1 < cls.order < G.order:
            out.append(cls.rep)
    return out


def _has_proper_transitive_subgroup(G, max_order):
    for cls in subgroup_classes(G, max_order=max_order):
        if cls.order < G.order and is_transitive(cls.rep):
            return cls.rep
    return None


def _aut(X, degree):
    return aut_of_kset(X, degree=degree)


def _suborbit_pool(G, X, max_order):
    """Canonical suborbits of X: the orbit of X's least tuple under each
    subgroup conjugacy-class representative, deduplicated."""
    t0 = X.tuples[0]
    seen = []
    for cls in subgroup_classes(G, max_order=max_order):
        Y = orbit_of_tuple(cls.rep, t0)
        if Y not in seen:
            seen.append(Y)
    seen.sort(key=lambda Y: (len(Y), Y.tuples))
    return seen


@functools.lru_cache(maxsize=4096)
def _aut_suborbit_partition_failure(Gaut, X, max_order):
    """First suborbit Y of X (orbit of a subgroup of Aut) whose Aut
    translate set is not a partition; None when all are partitions."""
    for cls in subgroup_classes(Gaut, max_order=max_order):
        part = orbits_on_kset(cls.rep, X)
        for c in part.classes:
            Y = KSet(c)
            if not translates_of_kset(Gaut, Y)[1]:
                return Y
    return None


def _orbit_from_ctx(G, ctx):
    t0 = tuple(int(v) for v in ctx["orbit_rep"])
    return orbit_of_tuple(G, t0)


# ---------------------------------------------------------------------------
# evaluators
# ---------------------------------------------------------------------------

def _eval_P_stab_co(ctx, caps):
    W = _ctx_group(ctx)
    alpha = tuple(int(v) for v in ctx["tuple"])
    co = frozenset(alpha)
    report = automorphic_analysis(W, max_subgroup_order=caps.max_subgroup_order)
    if co not in set(report.subsets):
        return _na("P_stab_co", ctx, "tuple is not automorphic: its "
                                     "coordinate set is no suborbit")
    G = setwise_point_stabilizer(W, co)
    H = pointwise_tuple_stabilizer(G, alpha)
    X = orbit_of_tuple(G, alpha)
    aut = _aut(X, W.degree)
    if not _is_normal(H, G):
        return _fail("P_stab_co", ctx,
                     {"reason": "tuple stabilizer not normal in the "
                                "coordinate-set stabilizer",
                      "stab_order": G.order, "tuple_stab_order": H.order})
    if aut.order * H.order != G.order:
        return _fail("P_stab_co", ctx,
                     {"reason": "|Aut(X)| != |G|/|H|",
                      "aut_order": aut.order, "stab_order": G.order,
                      "tuple_stab_order": H.order})
    if orbit_of_tuple(aut, alpha) != X:
        return _fail("P_stab_co", ctx,
                     {"reason": "Aut(X) not transitive on X",
                      "aut_order": aut.order, "orbit_size": len(X)})
    return _pass("P_stab_co", ctx)


def _eval_P_LkRk(ctx, caps):
    G = _ctx_group(ctx)
    Y = KSet(tuple(t) for t in ctx["suborbit"])
    X = orbit_of_tuple(G, Y.tuples[0])
    if not set(Y.tuples) <= set(X.tuples):
        return _na("P_LkRk", ctx, "suborbit is not contained in a k-orbit")
    H, h_trans = stab_of_ksuborbit(G, Y)
    if not h_trans:
        return _na("P_LkRk", ctx, "stabilizer is not transitive on the "
                                  "k-set: not a suborbit")
    L, l_part = translates_of_kset(G, Y)
    R = orbits_on_kset(H, X)
    same = l_part and ({frozenset(c.tuples) for c in L}
                       == set(R.classes))
    if not same:
        return _na("P_LkRk", ctx, "L_k != R_k")
    if not _is_normal(H, G):
        return _fail("P_LkRk", ctx,
                     {"reason": "L_k = R_k but Stab(Y_k) is not normal",
                      "stab_generators": _ser_group(H)})
    return _pass("P_LkRk", ctx)


def _eval_P_prim_normal(ctx, caps):
    G = _ctx_group(ctx)
    if not is_transitive(G) or not is_primitive(G, "paper"):
        return _na("P_prim_normal", ctx,
                   "group is not primitive (non-Abelian convention)")
    if "subgroup" not in ctx:
        return _na("P_prim_normal", ctx,
                   "no proper non-trivial normal subgroup")
    H = _ctx_group(ctx, "subgroup")
    if H.order <= 1 or not _is_normal(H, G):
        return _na("P_prim_normal", ctx,
                   "subgroup is trivial or not normal")
    if not is_transitive(H):
        return _fail("P_prim_normal", ctx,
                     {"reason": "normal subgroup of a primitive group is "
                                "intransitive",
                      "subgroup_order": H.order})
    return _pass("P_prim_normal", ctx)


def _eval_C_simple(ctx, caps):
    G = _ctx_group(ctx)
    if not is_transitive(G) or not is_primitive(G, "paper"):
        return _na("C_simple", ctx,
                   "group is not primitive (non-Abelian convention)")
    tr = _has_proper_transitive_subgroup(G, caps.max_subgroup_order)
    if tr is not None:
        return _na("C_simple", ctx,
                   f"proper transitive subgroup of order {tr.order} exists")
    for H in _normal_proper_nontrivial(G, caps.max_subgroup_order):
        return _fail("C_simple", ctx,
                     {"reason": "proper non-trivial normal subgroup found",
                      "subgroup_generators": _ser_group(H),
                      "subgroup_order": H.order})
    return _pass("C_simple", ctx)


def _index_hypothesis(ctx, caps):
    G = _ctx_group(ctx)
    if "subgroup" not in ctx or "subgroup2" not in ctx:
        return G, None, None, "no (A < H normal-in G, N_H(A) = A) instance"
    H = _ctx_group(ctx, "subgroup")
    A = _ctx_group(ctx, "subgroup2")
    if not (A.key_set < H.key_set and A.order > 1):
        return G, H, A, "A is not a proper non-trivial subgroup of H"
    if not (_is_normal(H, G) and H.order < G.order):
        return G, H, A, "H is not a proper normal subgroup of G"
    if normalizer_in(H, A) != A:
        return G, H, A, "N_H(A) != A"
    return G, H, A, None


def _eval_P_index(ctx, caps):
    G, H, A, why = _index_hypothesis(ctx, caps)
    if why:
        return _na("P_index", ctx, why)
    NG = normalizer_in(G, A)
    if NG == A:
        return _fail("P_index", ctx, {"reason": "N_G(A) = A",
                                      "normalizer_order": NG.order})
    if G.order * A.order != NG.order * H.order:
        return _fail("P_index", ctx,
                     {"reason": "|G|/|H| != |N_G(A)|/|A|",
                      "group_order": G.order, "normal_order": H.order,
                      "normalizer_order": NG.order, "a_order": A.order})
    return _pass("P_index", ctx)


def _eval_P_giso(ctx, caps):
    G, H, A, why = _index_hypothesis(ctx, caps)
    if why:
        return _na("P_giso", ctx, why)
    for k in range(1, G.degree + 1):
        a_orbits = {frozenset(X.tuples) for X in k_orbits(A, k)}
        for Z_f in sorted(a_orbits, key=lambda s: sorted(s)):
            Z = KSet(Z_f)
            for T in translates_of_kset(G, Z)[0]:
                if T != Z and frozenset(T.tuples) in a_orbits:
                    return _pass("P_giso", ctx,
                                 notes={"k": k,
                                        "orbit": _ser_kset(Z),
                                        "translate": _ser_kset(T)})
    return _fail("P_giso", ctx,
                 {"reason": "no pair of distinct G-isomorphic k-orbits of A "
                            "for any k"})


def _eval_L_alt_norm(ctx, caps):
    G = _ctx_group(ctx)
    n = G.degree
    if n < 3:
        return _na("L_alt_norm", ctx, "alternating group is trivial below "
                                      "degree 3")
    alt = alternating_group(n)
    if not (G.key_set < alt.key_set):
        return _na("L_alt_norm", ctx,
                   "group is not a proper subgroup of the alternating group")
    N = normalizer_in_sym(G, max_degree=caps.max_degree)
    if N == G:
        return _fail("L_alt_norm", ctx,
                     {"reason": "group is self-normalizing in the symmetric "
                                "group", "normalizer_order": N.order})
    return _pass("L_alt_norm", ctx)


def _eval_C_no_tr(ctx, caps):
    G = _ctx_group(ctx)
    if not is_transitive(G) or not is_primitive(G, "paper"):
        return _na("C_no_tr", ctx,
                   "group is not primitive (non-Abelian convention)")
    tr = _has_proper_transitive_subgroup(G, caps.max_subgroup_order)
    if tr is not None:
        return _na("C_no_tr", ctx,
                   f"proper transitive subgroup of order {tr.order} exists")
    N = normalizer_in_sym(G, max_degree=caps.max_degree)
    if N == G:
        return _fail("C_no_tr", ctx,
                     {"reason": "group is self-normalizing in the symmetric "
                                "group", "normalizer_order": N.order})
    return _pass("C_no_tr", ctx)


def _eval_P_equal_classes(ctx, caps):
    G = _ctx_group(ctx)
    X = _orbit_from_ctx(G, ctx)
    aut = _aut(X, G.degree)
    for cls in subgroup_classes(aut, max_order=caps.max_subgroup_order):
        sizes = {len(c) for c in orbits_on_kset(cls.rep, X).classes}
        if len(sizes) > 1:
            return _na("P_equal_classes", ctx,
                       "a subgroup of Aut(X) has unequal class sizes on X")
    if aut.order != len(X):
        return _fail("P_equal_classes", ctx,
                     {"reason": "|Aut(X)| != |X| although every subgroup "
                                "partitions X into equal classes",
                      "aut_order": aut.order, "orbit_size": len(X)})
    return _pass("P_equal_classes", ctx)


def _regular_aut_suborbits(aut, t0, max_order):
    """Subgroup class reps of Aut whose orbit of t0 has size equal to the
    subgroup order (a regular suborbit)."""
    out = []
    for cls in subgroup_classes(aut, max_order=max_order):
        Y = orbit_of_tuple(cls.rep, t0)
        if len(Y) == cls.order:
            out.append((cls.rep, Y))
    return out


def _eval_L_grAB(ctx, caps):
    G = _ctx_group(ctx)
    if "subgroup" in ctx:    # pinned witness form
        A = _ctx_group(ctx, "subgroup")
        B = _ctx_group(ctx, "subgroup2")
        alpha = tuple(int(v) for v in ctx["tuple"])
        pairs = [(A, B, alpha)]
    else:
        X = _orbit_from_ctx(G, ctx)
        aut = _aut(X, G.degree)
        t0 = X.tuples[0]
        regs = _regular_aut_suborbits(aut, t0, caps.max_subgroup_order)
        pairs = [(A, B, t0) for A, _ in regs for B, _ in regs][:caps.max_pairs]
    checked = 0
    for A, B, alpha in pairs:
        Y = orbit_of_tuple(A, alpha)
        Z = orbit_of_tuple(B, alpha)
        if len(Y) != A.order or len(Z) != B.order:
            continue
        checked += 1
        J = _join_groups(A, B, A.degree)
        T = orbit_of_tuple(J, alpha)
        if len(T) != J.order:
            return _fail("L_grAB", ctx,
                         {"reason": "|T_k| != |gr(A, B)|",
                          "t_size": len(T), "join_order": J.order},
                         witness_ctx={"degree": ctx["degree"],
                                      "group": ctx["group"],
                                      "subgroup": _ser_group(A),
                                      "subgroup2": _ser_group(B),
                                      "tuple": list(alpha)})
    if not checked:
        return _na("L_grAB", ctx,
                   "no pair of regular suborbits through a common tuple")
    return _pass("L_grAB", ctx, notes={"pairs_checked": checked})


@functools.lru_cache(maxsize=32768)
def _translate_classes(G, Y):
    """G-translate classes of Y as frozensets of tuples, plus the
    partition flag."""
    classes, is_part = translates_of_kset(G, Y)
    return frozenset(frozenset(c.tuples) for c in classes), is_part


def _translate_partition_matches(G, Y, target_classes):
    """Whether the G-translates of Y form a partition whose class set is
    exactly target_classes (a set of frozensets of tuples)."""
    classes, is_part = _translate_classes(G, Y)
    return is_part and classes == target_classes


@functools.lru_cache(maxsize=32768)
def _translate_partition(G, Y):
    classes, _ = translates_of_kset(G, Y)
    return Partition(frozenset(c.tuples) for c in classes)


def _eval_P_capcup(ctx, caps):
    G = _ctx_group(ctx)
    if "suborbit" in ctx:    # pinned witness form
        pairs = [(KSet(tuple(t) for t in ctx["suborbit"]),
                  KSet(tuple(t) for t in ctx["suborbit2"]))]
    else:
        X = _orbit_from_ctx(G, ctx)
        pool = [Y for Y in _suborbit_pool(G, X, caps.max_subgroup_order)
                if translates_of_kset(G, Y)[1]]
        pairs = [(pool[i], pool[j])
                 for i in range(len(pool)) for j in range(i + 1, len(pool))]
        pairs = pairs[:caps.max_pairs]
    if not pairs:
        return _na("P_capcup", ctx, "no pair of distinct suborbits with "
                                    "partition translate sets")
    checked = 0
    for Y, Z in pairs:
        wctx = {"degree": ctx["degree"], "group": ctx["group"],
                "k": Y.arity, "suborbit": _ser_kset(Y),
                "suborbit2": _ser_kset(Z)}

        def fail(detail):
            return _fail("P_capcup", ctx, detail, witness_ctx=wctx)

        _, py = _translate_classes(G, Y)
        _, pz = _translate_classes(G, Z)
        _, ty = stab_of_ksuborbit(G, Y)
        _, tz = stab_of_ksuborbit(G, Z)
        if Y == Z or not (py and pz and ty and tz):
            continue
        checked += 1
        M = meet(_translate_partition(G, Y), _translate_partition(G, Z))
        J = join(_translate_partition(G, Y), _translate_partition(G, Z))
        m_classes = frozenset(M.classes)
        j_classes = frozenset(J.classes)
        t0 = Y.tuples[0]
        CM = KSet(M.class_of(t0))
        CJ = KSet(J.class_of(t0))
        if not _translate_partition_matches(G, CM, m_classes):
            return fail({"reason": "meet is not a G-translate partition"})
        if not _translate_partition_matches(G, CJ, j_classes):
            return fail({"reason": "join is not a G-translate partition"})
        common = set(Y.tuples) & set(Z.tuples)
        if common:
            T = KSet(common)
            U = CJ
            if not _translate_partition_matches(G, T, m_classes):
                return fail({"reason": "meet != G(Y ∩ Z)"})
            if not _translate_partition_matches(G, U, j_classes):
                return fail({"reason": "join != GU for the class U "
                                       "containing Y and Z"})
            SY, _ = stab_of_ksuborbit(G, Y)
            SZ, _ = stab_of_ksuborbit(G, Z)
            ST, _ = stab_of_ksuborbit(G, T)
            SU, _ = stab_of_ksuborbit(G, U)
            if ST != _group_intersection(SY, SZ):
                return fail({"reason": "Stab(T) != Stab(Y) ∩ Stab(Z)"})
            if SU != _join_groups(SY, SZ, G.degree):
                return fail({"reason": "Stab(U) != gr(Stab(Y), Stab(Z))"})
    if not checked:
        return _na("P_capcup", ctx, "no pair of distinct suborbits with "
                                    "partition translate sets")
    return _pass("P_capcup", ctx, notes={"pairs_checked": checked})


def _eval_L_H_order(ctx, caps):
    G = _ctx_group(ctx)
    X = _orbit_from_ctx(G, ctx)
    aut = _aut(X, G.degree)
    bad = _aut_suborbit_partition_failure(aut, X, caps.max_subgroup_order)
    if bad is not None:
        return _na("L_H_order", ctx,
                   "some suborbit's Aut-translate set is not a partition")
    for cls in subgroup_classes(aut, max_order=caps.max_subgroup_order):
        if (len(cls.conjugates) == 1 and cls.order == len(X)
                and orbit_of_tuple(cls.rep, X.tuples[0]) == X):
            return _pass("L_H_order", ctx)
    return _fail("L_H_order", ctx,
                 {"reason": "no transitive normal subgroup of Aut(X) of "
                            "order |X|",
                  "aut_order": aut.order, "orbit_size": len(X)})


def _eval_P_incoherent(ctx, caps):
    G = _ctx_group(ctx)
    X = _orbit_from_ctx(G, ctx)
    verdict = classify_coherence(G, X,
                                 max_subgroup_order=caps.max_subgroup_order)
    if verdict.kind != "incoherent":
        return _na("P_incoherent", ctx, f"k-orbit is {verdict.kind}"
                                        + (" (trivial)" if verdict.trivial else ""))
    aut = _aut(X, G.degree)
    notes = None
    _, blocks = k_blocks(X, max_aut_points=caps.max_aut_points)
    if len(blocks) == 2:
        Y = blocks[0].kset
        SY, _ = stab_of_ksuborbit(aut, Y)
        notes = {"two_block_stab_identity": SY.order == len(Y) ** 2,
                 "block_size": len(Y), "block_stab_order": SY.order}
    if aut.order == len(X):
        return _fail("P_incoherent", ctx,
                     {"reason": "incoherent k-orbit with |Aut(X)| = |X|",
                      "aut_order": aut.order},
                     notes=notes)
    return _pass("P_incoherent", ctx, notes=notes)


def _eval_P_triv_norm(ctx, caps):
    G = _ctx_group(ctx)
    X = _orbit_from_ctx(G, ctx)
    aut = _aut(X, G.degree)
    bad = _aut_suborbit_partition_failure(aut, X, caps.max_subgroup_order)
    if bad is not None:
        return _na("P_triv_norm", ctx,
                   "some suborbit's Aut-translate set is not a partition")
    self_norm = None
    for cls in subgroup_classes(aut, max_order=caps.max_subgroup_order):
        if 1 < cls.order < aut.order and normalizer_in(aut, cls.rep) == cls.rep:
            self_norm = cls.rep
            break
    if self_norm is None:
        return _na("P_triv_norm", ctx,
                   "Aut(X) has no proper subgroup with trivial normalizer")
    if aut.order != len(X):
        return _fail("P_triv_norm", ctx,
                     {"reason": "|Aut(X)| != |X| despite a self-normalizing "
                                "subgroup",
                      "aut_order": aut.order, "orbit_size": len(X),
                      "subgroup_generators": _ser_group(self_norm)})
    return _pass("P_triv_norm", ctx)


def _eval_T_coherent(ctx, caps):
    G = _ctx_group(ctx)
    X = _orbit_from_ctx(G, ctx)
    verdict = classify_coherence(G, X,
                                 max_subgroup_order=caps.max_subgroup_order)
    if not verdict.is_coherent or verdict.trivial:
        return _na("T_coherent", ctx, "k-orbit is not (non-trivially) coherent")
    aut = _aut(X, G.degree)
    bad = _aut_suborbit_partition_failure(aut, X, caps.max_subgroup_order)
    if bad is not None:
        return _na("T_coherent", ctx,
                   "some suborbit's Aut-translate set is not a partition")
    if aut.order != len(X):
        return _fail("T_coherent", ctx,
                     {"reason": "coherent k-orbit under the partition "
                                "hypothesis with |Aut(X)| != |X|",
                      "aut_order": aut.order, "orbit_size": len(X)})
    return _pass("T_coherent", ctx)


def _eval_L_elcoh_part(ctx, caps):
    G = _ctx_group(ctx)
    X = _orbit_from_ctx(G, ctx)
    verdict = classify_coherence(G, X,
                                 max_subgroup_order=caps.max_subgroup_order)
    if verdict.kind != "elementary-coherent":
        return _na("L_elcoh_part", ctx, "k-orbit is not elementary coherent")
    aut = _aut(X, G.degree)
    bad = _aut_suborbit_partition_failure(aut, X, caps.max_subgroup_order)
    if bad is not None:
        return _fail("L_elcoh_part", ctx,
                     {"reason": "Aut(X)-translates of a suborbit are not a "
                                "partition",
                      "suborbit": _ser_kset(bad)})
    return _pass("L_elcoh_part", ctx)


def _eval_T_elcoh(ctx, caps):
    G = _ctx_group(ctx)
    X = _orbit_from_ctx(G, ctx)
    verdict = classify_coherence(G, X,
                                 max_subgroup_order=caps.max_subgroup_order)
    if verdict.kind != "elementary-coherent":
        return _na("T_elcoh", ctx, "k-orbit is not elementary coherent")
    aut = _aut(X, G.degree)
    if aut.order != len(X):
        return _fail("T_elcoh", ctx,
                     {"reason": "elementary coherent k-orbit with "
                                "|Aut(X)| != |X|",
                      "aut_order": aut.order, "orbit_size": len(X)})
    return _pass("T_elcoh", ctx)


def _eval_L_block_aut(ctx, caps):
    G = _ctx_group(ctx)
    X = _orbit_from_ctx(G, ctx)
    report = automorphic_analysis(G, max_subgroup_order=caps.max_subgroup_order)
    if frozenset(X.tuples[0]) not in set(report.subsets):
        return _na("L_block_aut", ctx,
                   "not a right-automorphic k-orbit: no automorphic tuple")
    _, blocks = k_blocks(X, max_aut_points=caps.max_aut_points)
    for b in blocks:
        if not b.aut_transitive:
            return _fail("L_block_aut", ctx,
                         {"reason": "k-block automorphism group is not "
                                    "transitive on the coordinate set",
                          "block": _ser_kset(b.kset),
                          "aut_order": b.aut.order})
    return _pass("L_block_aut", ctx, notes={"blocks": len(blocks)})


def _eval_L_proof_elcoh(ctx, caps):
    from .fks import iso_partitions

    G = _ctx_group(ctx)
    if not is_transitive(G) or not is_primitive(G, "paper"):
        return _na("L_proof_elcoh", ctx,
                   "group is not primitive (non-Abelian convention)")
    tr = _has_proper_transitive_subgroup(G, caps.max_subgroup_order)
    if tr is not None:
        return _na("L_proof_elcoh", ctx,
                   f"proper transitive subgroup of order {tr.order} exists")
    N = normalizer_in_sym(G, max_degree=caps.max_degree)
    report = automorphic_analysis(G, max_subgroup_order=caps.max_subgroup_order)
    k = report.max_automorphic_degree_divisor() or 1
    found = iso_partitions(G, N, k)
    if not found:
        return _na("L_proof_elcoh", ctx,
                   f"no qualifying partition into {k}-element isomorphic "
                   f"suborbits exists")
    for part, projs in found:
        for X in projs:
            verdict = classify_coherence(
                G, X, max_subgroup_order=caps.max_subgroup_order)
            if verdict.kind != "elementary-coherent":
                return _fail("L_proof_elcoh", ctx,
                             {"reason": "projection is not elementary "
                                        "coherent",
                              "classes": [sorted(c) for c in part.classes],
                              "orbit_rep": list(X.tuples[0]),
                              "kind": verdict.kind})
    return _pass("L_proof_elcoh", ctx, notes={"partitions": len(found)})


# ---------------------------------------------------------------------------
# context generators
# ---------------------------------------------------------------------------

def _ctx_P_stab_co(G, gid, ks, caps):
    report = automorphic_analysis(G, max_subgroup_order=caps.max_subgroup_order)
    for k in ks:
        for s in report.subsets:
            if len(s) == k:
                yield {**_base_ctx(G, gid), "tuple": sorted(s)}


def _ctx_P_LkRk(G, gid, ks, caps):
    count = 0
    for k in ks:
        for X in k_orbits(G, k):
            for Y in _suborbit_pool(G, X, caps.max_subgroup_order):
                if count >= caps.max_contexts:
                    return
                count += 1
                yield {**_base_ctx(G, gid), "k": k,
                       "suborbit": _ser_kset(Y)}


def _ctx_P_prim_normal(G, gid, ks, caps):
    base = _base_ctx(G, gid)
    if not is_primitive(G, "paper"):
        yield base
        return
    normals = _normal_proper_nontrivial(G, caps.max_subgroup_order)
    if not normals:
        yield base
        return
    for H in normals:
        yield {**base, "subgroup": _ser_group(H)}


def _ctx_bare(G, gid, ks, caps):
    yield _base_ctx(G, gid)


def _ctx_index_like(G, gid, ks, caps):
    base = _base_ctx(G, gid)
    found = False
    for H in _normal_proper_nontrivial(G, caps.max_subgroup_order):
        for cls in subgroup_classes(H, max_order=caps.max_subgroup_order):
            A = cls.rep
            if not 1 < A.order < H.order:
                continue
            if normalizer_in(H, A) != A:
                continue
            found = True
            yield {**base, "subgroup": _ser_group(H),
                   "subgroup2": _ser_group(A)}
    if not found:
        yield base


def _ctx_per_orbit(G, gid, ks, caps):
    for k in ks:
        for X in k_orbits(G, k):
            yield {**_base_ctx(G, gid), "k": k,
                   "orbit_rep": list(X.tuples[0])}


@dataclass(frozen=True)
class _Check:
    check_id: str
    evaluate: object
    contexts: object
    summary: str


_REGISTRY = [
    _Check("P_stab_co", _eval_P_stab_co, _ctx_P_stab_co,
           "coordinate-set stabilizer modulo tuple stabilizer is Aut(X_k)"),
    _Check("P_LkRk", _eval_P_LkRk, _ctx_P_LkRk,
           "L_k = R_k forces a normal suborbit stabilizer"),
    _Check("P_prim_normal", _eval_P_prim_normal, _ctx_P_prim_normal,
           "normal subgroups of primitive groups are transitive"),
    _Check("C_simple", _eval_C_simple, _ctx_bare,
           "primitive with no transitive subgroup implies simple"),
    _Check("P_index", _eval_P_index, _ctx_index_like,
           "self-normalizing A in normal H: |G|/|H| = |N_G(A)|/|A|"),
    _Check("P_giso", _eval_P_giso, _ctx_index_like,
           "self-normalizing A in normal H has G-isomorphic k-orbits"),
    _Check("L_alt_norm", _eval_L_alt_norm, _ctx_bare,
           "proper subgroups of the alternating group are not "
           "self-normalizing in the symmetric group"),
    _Check("C_no_tr", _eval_C_no_tr, _ctx_bare,
           "primitive, no transitive subgroup: normalizer exceeds G"),
    _Check("P_equal_classes", _eval_P_equal_classes, _ctx_per_orbit,
           "equal class sizes for all Aut subgroups force |Aut(X_k)| = |X_k|"),
    _Check("L_grAB", _eval_L_grAB, _ctx_per_orbit,
           "regular overlapping suborbits generate a regular orbit"),
    _Check("P_capcup", _eval_P_capcup, _ctx_per_orbit,
           "meet and join of coset partitions are coset partitions"),
    _Check("L_H_order", _eval_L_H_order, _ctx_per_orbit,
           "all-partition hypothesis yields a transitive normal subgroup "
           "of order |X_k|"),
    _Check("P_incoherent", _eval_P_incoherent, _ctx_per_orbit,
           "incoherent k-orbits have |Aut(X_k)| != |X_k|"),
    _Check("P_triv_norm", _eval_P_triv_norm, _ctx_per_orbit,
           "a self-normalizing subgroup forces |Aut(X_k)| = |X_k|"),
    _Check("T_coherent", _eval_T_coherent, _ctx_per_orbit,
           "coherent under the all-partition hypothesis: |Aut(X_k)| = |X_k|"),
    _Check("L_elcoh_part", _eval_L_elcoh_part, _ctx_per_orbit,
           "elementary coherent: every Aut-translate set is a partition"),
    _Check("T_elcoh", _eval_T_elcoh, _ctx_per_orbit,
           "elementary coherent implies |Aut(X_k)| = |X_k|"),
    _Check("L_block_aut", _eval_L_block_aut, _ctx_per_orbit,
           "k-block automorphism groups are transitive of degree k"),
    _Check("L_proof_elcoh", _eval_L_proof_elcoh, _ctx_bare,
           "terminal-case projections are elementary coherent"),
]

_BY_ID = {c.check_id: c for c in _REGISTRY}


def check_ids():
    return [c.check_id for c in _REGISTRY]


@dataclass(frozen=True)
class SuiteCaps:
    max_subgroup_order: int = DEFAULT_SUBGROUP_CAP
    max_aut_points: int = 8
    max_degree: int = 8
    max_contexts: int = 200
    max_pairs: int = DEFAULT_PAIR_CAP


def run_check(check_id, context, caps=None):
    """Evaluate one check on one context dict; deterministic."""
    if check_id not in _BY_ID:
        raise DomainError(f"unknown check id {check_id!r}")
    caps = caps or SuiteCaps()
    return _BY_ID[check_id].evaluate(dict(context), caps)


def replay_witness(witness, check_id, caps=None):
    """Re-run a check on a fail witness's embedded context alone."""
    return run_check(check_id, witness["context"], caps=caps)


# ---------------------------------------------------------------------------
# the suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteReport:
    results: tuple          # CheckResult, canonical order
    tallies: dict           # check_id -> {verdict: count}

    def failures(self):
        return [r for r in self.results if r.verdict == "fail"]


def run_suite(catalog, k_range=None, check_ids=None, caps=None):
    """Evaluate checks over every catalog entry; deterministic order.

    k_range is an iterable of arities (default 1..degree per group);
    check_ids filters the registry; cap violations are recorded as
    skipped results, never raised."""
    caps = caps or SuiteCaps()
    selected = [c for c in _REGISTRY
                if check_ids is None or c.check_id in set(check_ids)]
    unknown = set(check_ids or []) - {c.check_id for c in _REGISTRY}
    if unknown:
        raise DomainError(f"unknown check ids: {sorted(unknown)}")
    results = []
    tallies = {c.check_id: {"pass": 0, "fail": 0, "inapplicable": 0,
                            "skipped": 0} for c in selected}
    for entry in catalog:
        G = entry.group()
        ks = list(k_range) if k_range is not None \
            else list(range(1, G.degree + 1))
        ks = [k for k in ks if 1 <= k <= G.degree]
        for check in selected:
            try:
                contexts = list(check.contexts(G, entry.entry_id, ks, caps))
            except ResourceLimitError as exc:
                res = CheckResult(check.check_id, _base_ctx(G, entry.entry_id),
                                  "skipped", reason=str(exc))
                results.append(res)
                tallies[check.check_id]["skipped"] += 1
                continue
            for ctx in contexts:
                try:
                    res = check.evaluate(dict(ctx), caps)
                except ResourceLimitError as exc:
                    res = CheckResult(check.check_id, ctx, "skipped",
                                      reason=str(exc))
                results.append(res)
                tallies[check.check_id][res.verdict] += 1
    return SuiteReport(results=tuple(results), tallies=tallies)


def render_report(report):
    """Machine-readable form: one JSON record per result."""
    lines = [json.dumps(r.to_record(), sort_keys=True)
             for r in report.results]
    return "\n".join(lines) + "\n" if lines else ""


def render_summary(report):
    """Human-readable tally table."""
    header = f"{'check':16} {'pass':>6} {'fail':>6} {'n/a':>6} {'skip':>6}"
    lines = [header, "-" * len(header)]
    for cid, t in report.tallies.items():
        lines.append(f"{cid:16} {t['pass']:>6} {t['fail']:>6} "
                     f"{t['inapplicable']:>6} {t['skipped']:>6}")
    total = {v: sum(t[v] for t in report.tallies.values())
             for v in ("pass", "fail", "inapplicable", "skipped")}
    lines.append("-" * len(header))
    lines.append(f"{'total':16} {total['pass']:>6} {total['fail']:>6} "
                 f"{total['inapplicable']:>6} {total['skipped']:>6}")
    return "\n".join(lines) + "\n"
