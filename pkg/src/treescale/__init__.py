"""treescale: exact scale functions and scale-multiplicative semigroups
for automorphisms of locally finite biregular trees."""

from .errors import (
    AddressError,
    DegenerateAxisError,
    InconclusiveError,
    InternalConsistencyError,
    NotHyperbolicError,
    OracleBudgetError,
    RepresentationError,
    TreeScaleError,
)
from .tree_core import (
    End,
    OrientedEdge,
    ROOT,
    Segment,
    SPINE_NEG,
    SPINE_POS,
    TreeParams,
    Vertex,
)
from .automorphism import (
    Automorphism,
    AutType,
    AxisTranslationAut,
    CompositeAut,
    Elliptic,
    Hyperbolic,
    IdentityAut,
    Inversion,
    InversionAut,
    MinSetWindow,
    PortraitAut,
    RigidMapAut,
    SpineShiftAut,
    apply,
    aut_from_json,
    aut_to_json,
    axis_window,
    build_translation,
    classify,
    compose,
    compose_all,
    equal_on_ball,
    identity,
    invert,
    inversion,
    min_set_in_ball,
    motion_profile,
    portrait,
    power,
    rigid_map,
    spine_shift,
    translates_along,
    translation_length,
)
from .scale import (
    BallFixatorSpec,
    DEFAULT_BUDGET,
    OracleBudget,
    is_minimizing,
    modular,
    scale,
    scale_bruteforce_index,
)
from .semigroups import (
    DirectedVertex,
    EdgeMidpointFixator,
    EndMinus,
    EndPlus,
    MultiplicativityReport,
    SemigroupSpec,
    VertexFixator,
    classify_family,
    classify_family_all,
    contains,
    end_through,
    intersection_hyperbolic_witness,
    invert_spec,
    pairwise_multiplicative,
    spec_from_json,
    spec_to_json,
    u_basis_contains,
)
from .hnn import (
    HnnAut,
    HnnElement,
    hnn_identity,
    hnn_index_count,
    hnn_invert,
    hnn_maximal_membership,
    hnn_multiply,
    hnn_scale,
    hnn_to_tree,
    hnn_tree_scale,
)
from .harness import (
    CAMPAIGN_IDS,
    CampaignConfig,
    CampaignReport,
    replay_failure,
    run_campaign,
    trial_rng,
)
from .dot import export_dot

__all__ = [name for name in dir() if not name.startswith("_")]
