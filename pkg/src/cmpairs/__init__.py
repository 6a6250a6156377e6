"""Depth, cohomological dimension and Cohen-Macaulay tests for pairs of graded modules."""
from .errors import CmPairsError
from .ring import Ring, make_ring
from .groebner import Ideal
from .module import GradedModule, make_module
from .homological import (ExtendedNat, Resolution, e_sup, ext, free_resolution, hom_module, pd,
                          tor, tor_sup)
from .local_cohomology import (cd_support, cech_cohomology, deficiency, depth_support,
                               grade_via_ext, koszul_grade, lc_dims)
from .pairs import (Verdict, ar_certificate, ass_monomial, cd_pair, depth_pair, glc_truncated,
                    huneke_check, is_cci, is_cm_pair, is_semidualizing, is_totally_C_reflexive)
from .dsl import load, parse
from .verifier import run_suite, search_gap

__version__ = "0.1.0"
