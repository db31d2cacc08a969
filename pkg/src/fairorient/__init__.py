"""Fair orientations of graphs and relevance-constrained instances, computed
and checked over exact rationals."""
from .fairness import (
    CheckReport,
    Notion,
    Violation,
    check,
    check_ef,
    check_ef1,
    check_eq,
    check_eq1,
    check_eqx,
    check_fpo,
    check_mms,
    check_non_malicious,
    check_prop,
    check_prop1,
    check_propx,
    check_sprop1,
    prop_share,
    sprop1_threshold,
)
from .model import (
    FractionalOrientation,
    GraphClass,
    Instance,
    InstanceError,
    Orientation,
    build_instance,
    graph_instance,
    make_instance,
    to_rational,
)
from .oracle import (
    OrientationSpace,
    SpaceTooLarge,
    check_po_exhaustive,
    enumerate_orientations,
    exists_propx_witness_family,
    find_orientation,
    mms_share,
)
from .solvers import (
    PipelineTrace,
    greedy_sprop1,
    solve_ef1_chores_simple,
    solve_prop1_fpo,
    solve_prop_binary,
)

__version__ = "0.1.0"
