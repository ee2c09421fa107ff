"""zzstab: a symbolic engine for complexes over zigzag walk categories.

Braid-group functors, exact minimal models, Grothendieck-group
specializations, stability data on braid-twisted hearts, and the
wall/chamber geometry of central charges with braid-word path lifting.
All values are immutable after construction and all operations are pure,
so concurrent use needs no synchronization.
"""

from .braid import BraidWord, apply_word, identity_word, twist, untwist
from .chambers import (
    ChargePath,
    RegionReport,
    WallEvent,
    chamber_identify,
    detect_crossings,
    emit_chart,
    lift_path,
    locate,
    monodromy,
    render_chart,
)
from .complexes import (
    ChainMap,
    ComplexKG,
    Homotopy,
    cone,
    cone_inclusion,
    direct_sum,
    gaussian_eliminate_once,
    generator_complex,
    hom_dim_K,
    homotopy_equivalent,
    is_linear,
    iso_minimal,
    linear_weight_filtration,
    minimal_model,
    normalize_linear_shift,
    translate,
    zero_complex,
)
from .coxeter import (
    CoxeterGraph,
    RootVector,
    WeylElement,
    bilinear_form,
    contragredient_apply,
    is_finite_type,
    positive_roots,
    reflect_simple,
)
from .errors import ZZStabError
from .k0 import K0Class, LaurentPoly, class_of, class_vector, induced_matrix, specialize, specialize_matrix
from .stability import (
    Catalogue,
    CentralCharge,
    HeartDescriptor,
    HNFiltration,
    StabilityData,
    act_on_stability,
    deformation_ok,
    heart_indecomposables,
    hn_filtration,
    is_heart_member,
    is_semistable,
    is_stability_function,
    phase,
    phi_bounds,
    slicing_distance_lb,
    subobject_test,
)
from .walks import (
    AlgebraElement,
    GradedObject,
    MatrixMorphism,
    Walk,
    compose_matrices,
    compose_walks,
    hom_basis,
)

__version__ = "0.1.0"
