"""Monroe and Chamberlin-Courant winner determination on (nearly) single-peaked
and single-crossing profiles, with a brute-force oracle for cross-checking."""

from .profile import (Kind, Model, Objective, Profile, ProfileError, Rule, Solution, Violation,
                      dump_profile, format_solution, load_profile, misrep, monroe_bounds,
                      parse_profile, reduce_max_to_approval, score_of, solve_max_via_reduction,
                      validate_solution)
from .recognition import (DeletionCertificate, DeletionKind, Structure, StructureOrder,
                          brute_force_detect, check, check_sc, check_sp, detect, detect_sc, detect_sp,
                          find_deletion_set, load_certificate, parse_certificate, validate_certificate)
from .structure import (IntervalCollection, PartialSolution, StructureIndex, build_index,
                        check_interval_lemmas, inbet, inbet_hat, is_good_collection, maximally_good,
                        mnt_transform, top_usable, usable_set, verify_mnt)
from .monroe_sc import solve_monroe_sc_max, solve_monroe_sc_sum
from .cc_solvers import (solve_cc_near_max, solve_cc_nearsc_approval, solve_cc_nearsc_linear,
                         solve_cc_nearsp_approval, solve_cc_nearsp_linear, solve_cc_sc, solve_cc_sp)
from .monroe_nearly import (solve_monroe_nearsc, solve_monroe_nearsp, solve_monroe_sp,
                            solve_monroe_xp_alts)
from .oracle import OracleBudgetError, oracle, oracle_cc, oracle_monroe
from .generators import generate

__version__ = "0.1.0"
