"""Proper labelings of polygon families, their closed-surface gluings, and
least-area constructions for triangle-tiled hyperbolic surfaces."""

from .labeling import (
    EdgePair,
    EdgeRecord,
    EdgeRef,
    Labeling,
    LabelingError,
    NotProperError,
    PairingTable,
    StructureError,
    VerificationReport,
    canonicalize,
    edges,
    oriented,
    pairing,
    verify,
)
from .rewrite import PairSite, TriangleSite, apply_a, apply_b, apply_c, pair_sites, triangle_sites
from .surface import (
    DualTiling,
    FoldObstructionError,
    GluedSurface,
    double_cover,
    dual,
    genus,
    glue,
    orientability,
)
from .builders import build, build_oriented, case_of, cover_equivalent, n_min
from .geom import minimal_area, predicted_chi, eek_admissible, triangle_geometry
from .search import (
    CubicGraph,
    DoubleWalk,
    SearchResult,
    double_hamiltonian,
    labeling_to_walk,
    search_labelings,
    walk_to_labeling,
)

__version__ = "0.1.0"
