"""panelplan: two-stage panel layout planning.

Stage one tiles a polygon region with whole rectangular stock panels on
a grid anchored at a shared origin and collects the irregular off-cut
pieces left over. Stage two nests those pieces into as few extra panels
as possible, either greedily or by searching over a cluster-assignment
bit-string encoding with Monte Carlo or genetic-algorithm solvers.
"""

from __future__ import annotations

from .encoding import Chromosome, Evaluator, block_width_for, decode, evaluate, random_chromosome
from .errors import (
    ConfigurationError,
    DegenerateGeometryError,
    InfeasiblePieceError,
    PanelPlanError,
    ScenarioParseError,
    ScenarioValidationError,
)
from .geometry import (
    Point,
    PolygonRegion,
    Rect,
    RectDim,
    Ring,
    Rotation,
    Transform,
    apply_transform,
    clip_rect,
    pieces_overlap,
    rect_fully_inside,
    region_area,
    ring_area,
    shared_edge_length,
)
from .nesting import (
    ContainerState,
    NestingPlan,
    Piece,
    Placement,
    PlacementStrategy,
    PlanMetrics,
    RotationMode,
    TransformPolicy,
    candidate_anchors,
    greedy_nest,
    plan_metrics,
    try_place,
    verify_plan,
)
from .optimizers import (
    GaConfig,
    McConfig,
    OptimizationResult,
    solve_ga,
    solve_greedy,
    solve_mc,
)
from .overlay import OverlayPlan, StockPanel, WholePanelPlacement, compute_overlay, select_stock_panel
from .pipeline import (
    Algorithm,
    NamedRegion,
    RunReport,
    Scenario,
    bundled_scenario_dir,
    emit_report,
    load_report_json,
    load_scenario,
    run_pipeline,
    save_scenario,
    write_report_json,
)
from .render import render_bench_chart, render_convergence, render_layout

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Algorithm",
    "Chromosome",
    "ConfigurationError",
    "ContainerState",
    "DegenerateGeometryError",
    "Evaluator",
    "GaConfig",
    "InfeasiblePieceError",
    "McConfig",
    "NamedRegion",
    "NestingPlan",
    "OptimizationResult",
    "OverlayPlan",
    "PanelPlanError",
    "Piece",
    "Placement",
    "PlacementStrategy",
    "PlanMetrics",
    "Point",
    "PolygonRegion",
    "Rect",
    "RectDim",
    "Ring",
    "Rotation",
    "RotationMode",
    "RunReport",
    "Scenario",
    "ScenarioParseError",
    "ScenarioValidationError",
    "StockPanel",
    "Transform",
    "TransformPolicy",
    "WholePanelPlacement",
    "apply_transform",
    "block_width_for",
    "bundled_scenario_dir",
    "candidate_anchors",
    "clip_rect",
    "compute_overlay",
    "decode",
    "emit_report",
    "evaluate",
    "greedy_nest",
    "load_report_json",
    "load_scenario",
    "pieces_overlap",
    "plan_metrics",
    "random_chromosome",
    "rect_fully_inside",
    "region_area",
    "render_bench_chart",
    "render_convergence",
    "render_layout",
    "ring_area",
    "run_pipeline",
    "save_scenario",
    "select_stock_panel",
    "shared_edge_length",
    "solve_ga",
    "solve_greedy",
    "solve_mc",
    "try_place",
    "verify_plan",
    "write_report_json",
]
