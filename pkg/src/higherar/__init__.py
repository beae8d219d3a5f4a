"""Exact-arithmetic toolkit for higher Auslander-Reiten theory.

Builds bound quiver algebras over the rationals, computes higher translates
and their closures, decides the completeness conditions, extracts cone
algebra presentations, generates predicted mesh families over Dynkin
quivers, and cross-checks predictions against computation, including a
windowed check inside the bounded homotopy category.
"""

from .algebras import (BoundQuiverAlgebra, DimensionCapExceeded, NotAdmissible,
                       build_algebra)
from .derived import (Complex, NotTauFinite, ShiftedModuleObject,
                      SplitHypothesisViolated, hom_homotopy,
                      homotopy_isomorphic, injective_replacement,
                      proj_resolution_complex, projective_replacement,
                      serre_shift, stalk_complex, u_closure, verify_ct_window)
from .dynkin import (NotDynkin, build_family, ell_values, is_dynkin,
                     linear_a_quiver, simplex, tower_algebra)
from .homology import (ResolutionChain, approximation, dominant_dimension,
                       ext_dim, ext_dim_via_injective, ext_dims,
                       global_dimension, homological_dimensions, inj_dimension,
                       is_tilting, min_resolution, perp_membership,
                       proj_dimension)
from .linalg import (ExactMatrix, kernel_basis, minimal_polynomial, rank,
                     rref, solve, split_spectrum)
from .quivers import (InconsistentRelation, Path, Presentation, Quiver,
                      Relation, WeakTranslationQuiver, cone, cylinder,
                      enumerate_paths)
from .reps import (NonSplitEndomorphismRing, NotInjective, NotProjective,
                   RepMorphism, Representation, StdSum, cover_envelope,
                   decompose, decompose_flat, direct_sum, dualize, hom_basis,
                   hom_dim, indec_isomorphic, injective, injective_envelope,
                   is_isomorphic, ker_coker_im, modules_isomorphic, nakayama,
                   projective, projective_cover, simple, std_modules,
                   top_rad_soc, zero_rep)
from .taucluster import (CategoryPresentation, CompletenessReport,
                         GlobalDimensionTooLarge, LayerCapExceeded,
                         NoIsomorphismFound, TauClosure, ar_quiver,
                         cone_algebra, is_n_rigid, presentation_isomorphic,
                         tau, tau_closure, verify_n_complete)

__version__ = "0.1.0"
