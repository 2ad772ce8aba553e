"""k-orbit analysis of finite permutation groups.

Fully enumerated permutation groups, orbits on ordered k-tuples of
distinct points, coherence classification, subgroup-lattice and coset
partition structure, a registry of machine checks for the structural
claims connecting them, and an executable reduction showing each
transitive group's fixed-point-free prime-power element.
"""

from .errors import DomainError, KorbitsError, ParseError, ResourceLimitError
from .perm import ElementAnalysis, Permutation, analyze_element, parse_permutation
from .partition import Partition, SetFamily, join, meet, smash
from .group import (PermGroup, alternating_group, block_systems, close_group,
                    cyclic_group, dihedral_group, is_primitive, is_transitive,
                    klein_four_group, load_group, normalizer_in,
                    normalizer_in_sym, orbits_on_points, parse_group,
                    quotient_action, render_group, save_group, symmetric_group)
from .subgroups import SubgroupClass, all_subgroups, subgroup_classes
from .korbit import (CoherenceVerdict, KBlock, KSet, aut_of_kset,
                     automorphic_analysis, classify_coherence, co_analysis,
                     coset_k_partitions, k_blocks, k_orbits, left_act,
                     load_kset, orbit_of_tuple, parse_kset, project,
                     render_kset, render_norbit, right_act, save_kset,
                     stab_of_ksuborbit, translates_of_kset)
from .catalog import (CatalogEntry, GroupCatalog, load_catalog, parse_catalog,
                      render_catalog, save_catalog, transitive_catalog)
from .propcheck import (CheckResult, SuiteReport, check_ids, render_report,
                        render_summary, replay_witness, run_check, run_suite)
from .fks import (AuditRecord, ReductionTrace, find_fpf_prime_power,
                  fks_pipeline, lift_fpf, load_trace, parse_trace, proof_audit,
                  render_trace, replay_trace, save_trace)

__version__ = "0.1.0"
