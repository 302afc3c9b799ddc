"""Discrete line fields and vector fields on CW decompositions of surfaces."""

from .dynamics import (
    ClosedCorridor,
    Corridor,
    Crossing,
    DecompositionReport,
    LPath,
    Separatrix,
    TopologicalGraph,
    closed_l_path,
    corridors_from,
    is_acyclic,
    l_paths,
    ms_decomposition,
    scan_closed_corridors,
    topological_graph,
)
from .errors import (
    CancellationError,
    CyclicFieldError,
    DegenerateOperationError,
    InvalidComplexError,
    NotInImageError,
    OperationError,
    ParseError,
)
from .formats import (
    Document,
    emit_complex,
    emit_line_field,
    emit_vector_field,
    graph_dot,
    parse_complex,
    parse_document,
    parse_graph_json,
    parse_line_field,
    parse_off,
    parse_vector_field,
    report_json,
)
from .isomorphism import (
    complexes_isomorphic,
    isomorphisms,
    line_fields_isomorphic,
    vector_fields_isomorphic,
)
from .linefield import (
    LineField,
    critical_cells,
    euler_sum,
    unmatched_boundary_count,
    validate_line_field,
)
from .radial import (
    RadialComplex,
    dlf_to_dvf,
    dvf_to_dlf,
    is_radial,
    radial_decomposition,
)
from .simplify import (
    CellCorrespondence,
    CoreResult,
    cancel_vertex_face,
    collapse_noncritical_face,
    contract_matched_pair,
    homotopy_core,
    merge_critical_faces,
)
from .surface import (
    HasseDiagram,
    SurfaceComplex,
    delete_edge_merge_faces,
    fresh_id,
    occ_reversed,
    occ_text,
    reversed_walk,
    split_face,
    subdivide_edge,
)
from .vectorfield import (
    VectorField,
    XPath,
    cancel_dvf,
    closed_x_path,
    count_x_paths,
    critical_cells_dvf,
    dualize,
    euler_sum_dvf,
    is_acyclic_dvf,
    topological_graph_dvf,
    validate_vector_field,
    x_paths,
)

__version__ = "0.1.0"

__all__ = [
    "CancellationError",
    "CellCorrespondence",
    "ClosedCorridor",
    "CoreResult",
    "Corridor",
    "Crossing",
    "CyclicFieldError",
    "DecompositionReport",
    "DegenerateOperationError",
    "Document",
    "HasseDiagram",
    "InvalidComplexError",
    "LPath",
    "LineField",
    "NotInImageError",
    "OperationError",
    "ParseError",
    "RadialComplex",
    "Separatrix",
    "SurfaceComplex",
    "TopologicalGraph",
    "VectorField",
    "XPath",
    "cancel_dvf",
    "cancel_vertex_face",
    "closed_l_path",
    "closed_x_path",
    "collapse_noncritical_face",
    "complexes_isomorphic",
    "contract_matched_pair",
    "corridors_from",
    "count_x_paths",
    "critical_cells",
    "critical_cells_dvf",
    "delete_edge_merge_faces",
    "dlf_to_dvf",
    "dualize",
    "dvf_to_dlf",
    "emit_complex",
    "emit_line_field",
    "emit_vector_field",
    "euler_sum",
    "euler_sum_dvf",
    "fresh_id",
    "graph_dot",
    "homotopy_core",
    "is_acyclic",
    "is_acyclic_dvf",
    "is_radial",
    "isomorphisms",
    "l_paths",
    "line_fields_isomorphic",
    "merge_critical_faces",
    "ms_decomposition",
    "occ_reversed",
    "occ_text",
    "parse_complex",
    "parse_document",
    "parse_graph_json",
    "parse_line_field",
    "parse_off",
    "parse_vector_field",
    "radial_decomposition",
    "report_json",
    "reversed_walk",
    "scan_closed_corridors",
    "split_face",
    "subdivide_edge",
    "topological_graph",
    "topological_graph_dvf",
    "unmatched_boundary_count",
    "validate_line_field",
    "vector_fields_isomorphic",
    "x_paths",
]
