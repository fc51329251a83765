"""Exact λ-ring computations and the K-theory of the genus of BS^3."""

from .classifier import (IsoCandidateK, IsoCandidateKO, compare, homotopy_equivalent,
                         ko_equivalent, ko_intertwine_residue, kp_intertwine_check, kp_scan,
                         theorem_reproduction)
from .genus import (GenusPoint, KModel, KOModel, bs3, canonicalize, orientation_flip, psi2_KO,
                    psi_p_K, rector_pair, representative_shift)
from .lambda_ring import (BinomialZ, LambdaRing, LineSumRing, adams, check_adams_properties,
                          check_axioms, newton_adams_formula)
from .poly import MultiPoly, parse
from .symfun import (LambdaExpr, UniversalPoly, elementary, express_in_elementaries,
                     splitting_oracle_check, universal_compose, universal_product)

__version__ = "0.1.0"
