"""Secondary intersection invariants of immersed 2-spheres in 4-manifolds.

Computes tau(f), lambda(f1, f2, f3) and tau(f1, ..., fn) from combinatorial
Whitney-disk diagrams, with canonical forms modulo the local relations and
lattice reduction modulo the intersections with pi_2 classes.
"""
from .group import GroupError, GroupSpec, Word, enumerate_ball, group_multiply, is_order_two, normalize_word, parse_word
from .ring import (Component, Pair, RingElement, Single, Triple, delta_canonicalize, left_translate,
                   pair_to_triple, parse_element, permute_triple, ring_combine, triple_to_pair)
from .lattice import IntegerLattice, hermite_normal_form, lattice_reduce
from .relations import (COLLAPSED, Pi2ClassDatum, QuotientElement, build_relation_instances, canonicalize,
                        reduce_modulo, reduce_to_km, signed_class_closure)
from .diagram import (BoundaryCrossing, DiagramError, DoublePoint, InteriorPoint, WhitneyDiagram, WhitneyDisk,
                      compute_tau, crossing_contribution_J, disk_contribution_I, raw_tau, self_intersection_mu,
                      validate_diagram)
from .moves import (MOVES, MoveError, cancel_pair, finger_move, push_across_double_point, reframe, repair_swap,
                    resolve_crossing, same_tau, sheet_change, trade_intersection, tube_into_class, whitney_move)
from .multi import (BasedDisk, MultiDiagram, MultiDoublePoint, SheetPoint, compute_tau_n, compute_triple_lambda,
                    from_single, parallel_copies, permute_spheres, select_action_convention, translate_sphere)
from .manifest import ManifestError, emit_manifest, load_manifest, parse_manifest
from .cli import run_cli

__version__ = "0.1.0"
