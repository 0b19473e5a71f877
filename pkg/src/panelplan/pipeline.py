"""Scenario files, end-to-end runs, and report emission.

A scenario is a JSON document naming the regions to clad, the candidate
stock panels, the shared grid origin, the orientation policy for
off-cut nesting, and the solver to use. Running it overlays every
region (stage one), nests the collected off-cuts (stage two) and
returns a report that serialises losslessly to JSON, one CSV row, or a
human-readable summary.
"""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Any, Sequence

from shapely import contains_properly
from shapely.geometry import Polygon as ShapelyPolygon

from .errors import (
    ConfigurationError,
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
    region_area,
    ring_area,
)
from .nesting import (
    ContainerState,
    NestingPlan,
    Piece,
    Placement,
    PlacementStrategy,
    RotationMode,
    TransformPolicy,
    plan_metrics,
)
from .optimizers import (
    GaConfig,
    McConfig,
    OptimizationResult,
    solve_ga,
    solve_greedy,
    solve_mc,
)
from .overlay import StockPanel, WholePanelPlacement, select_stock_panel

__all__ = [
    "Algorithm",
    "NamedRegion",
    "Scenario",
    "RunReport",
    "load_scenario",
    "save_scenario",
    "run_pipeline",
    "emit_report",
    "write_report_json",
    "load_report_json",
    "csv_header",
    "csv_row",
    "write_reports_csv",
    "bundled_scenario_dir",
]

REPORT_VERSION = 1


class Algorithm(str, Enum):
    GREEDY = "greedy"
    MC = "mc"
    GA = "ga"


@dataclass(frozen=True)
class NamedRegion:
    name: str
    region: PolygonRegion


@dataclass(frozen=True)
class Scenario:
    """Everything needed to reproduce one planning run."""

    name: str
    geometry: str
    origin: Point
    panels: tuple[StockPanel, ...]
    panel_rotation: bool
    regions: tuple[NamedRegion, ...]
    policy: TransformPolicy
    strategy: PlacementStrategy
    algorithm: Algorithm
    mc: McConfig = McConfig()
    ga: GaConfig = GaConfig()

    @property
    def seed(self) -> int | None:
        if self.algorithm is Algorithm.MC:
            return self.mc.seed
        if self.algorithm is Algorithm.GA:
            return self.ga.seed
        return None

    def with_seed(self, seed: int) -> "Scenario":
        return replace(
            self,
            mc=replace(self.mc, seed=seed),
            ga=replace(self.ga, seed=seed),
        )


def bundled_scenario_dir() -> Path:
    return Path(__file__).parent / "scenarios"


# --- scenario parsing ----------------------------------------------------

def _require(mapping: dict, key: str, where: str) -> Any:
    if key not in mapping:
        raise ScenarioValidationError(f"{where}: missing required key '{key}'")
    return mapping[key]


def _as_number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioValidationError(f"{where}: expected a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise ScenarioValidationError(f"{where}: value must be finite, got {value!r}")
    return out


def _parse_point(value: Any, where: str) -> Point:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ScenarioValidationError(f"{where}: expected [x, y], got {value!r}")
    return (_as_number(value[0], where), _as_number(value[1], where))


def _parse_ring(value: Any, where: str) -> Ring:
    if not isinstance(value, list) or len(value) < 3:
        raise ScenarioValidationError(
            f"{where}: expected a list of at least 3 [x, y] vertices"
        )
    points = [_parse_point(v, f"{where} vertex {i}") for i, v in enumerate(value)]
    if len(points) > 3 and points[0] == points[-1]:
        points.pop()
    if len(points) != len(set(points)):
        raise ScenarioValidationError(f"{where}: repeated vertex")
    ring = tuple(points)
    if not ShapelyPolygon(ring).is_valid:
        raise ScenarioValidationError(f"{where}: ring is self-intersecting or degenerate")
    return ring


def _orient(ring: Ring, clockwise: bool) -> Ring:
    area = ring_area(ring)
    if (area < 0) != clockwise:
        return tuple(reversed(ring))
    return ring


def _parse_region(value: Any, index: int) -> NamedRegion:
    where = f"region {index}"
    if not isinstance(value, dict):
        raise ScenarioValidationError(f"{where}: expected an object")
    name = value.get("name", f"r{index}")
    if not isinstance(name, str) or not name:
        raise ScenarioValidationError(f"{where}: 'name' must be a non-empty string")
    where = f"region '{name}'"
    outer = _orient(_parse_ring(_require(value, "outer", where), f"{where} outer"), False)
    holes: list[Ring] = []
    outer_poly = ShapelyPolygon(outer)
    hole_polys: list[ShapelyPolygon] = []
    for hi, hole_value in enumerate(value.get("holes", [])):
        hole = _orient(_parse_ring(hole_value, f"{where} hole {hi}"), True)
        hole_poly = ShapelyPolygon(hole)
        if not contains_properly(outer_poly, hole_poly):
            raise ScenarioValidationError(
                f"{where} hole {hi}: must lie strictly inside the outer ring"
            )
        for hj, other in enumerate(hole_polys):
            if hole_poly.intersects(other):
                raise ScenarioValidationError(
                    f"{where}: holes {hj} and {hi} are not disjoint"
                )
        hole_polys.append(hole_poly)
        holes.append(hole)
    region = PolygonRegion(outer=outer, holes=tuple(holes))
    if region_area(region) <= 0:
        raise ScenarioValidationError(f"{where}: net area is not positive")
    if not ShapelyPolygon(outer, [list(h) for h in holes]).is_valid:
        raise ScenarioValidationError(f"{where}: region geometry is invalid")
    return NamedRegion(name=name, region=region)


def _parse_panel(value: Any, index: int) -> StockPanel:
    where = f"panel {index}"
    if not isinstance(value, dict):
        raise ScenarioValidationError(f"{where}: expected an object")
    panel_id = _require(value, "id", where)
    if not isinstance(panel_id, str) or not panel_id:
        raise ScenarioValidationError(f"{where}: 'id' must be a non-empty string")
    width = _as_number(_require(value, "width", where), f"{where} width")
    height = _as_number(_require(value, "height", where), f"{where} height")
    if width <= 0 or height <= 0:
        raise ScenarioValidationError(
            f"panel '{panel_id}': dimensions must be positive, got {width} x {height}"
        )
    return StockPanel(id=panel_id, dims=RectDim(width, height))


def _parse_enum(enum_cls, value: Any, where: str):
    try:
        return enum_cls(value)
    except ValueError:
        choices = ", ".join(e.value for e in enum_cls)
        raise ScenarioValidationError(
            f"{where}: expected one of {choices}, got {value!r}"
        ) from None


def _parse_algorithm(value: Any) -> tuple[Algorithm, McConfig, GaConfig]:
    mc = McConfig()
    ga = GaConfig()
    if value is None:
        return Algorithm.GREEDY, mc, ga
    if not isinstance(value, dict):
        raise ScenarioValidationError("algorithm: expected an object with a 'kind'")
    kind = _parse_enum(Algorithm, _require(value, "kind", "algorithm"), "algorithm kind")
    extras = {k: v for k, v in value.items() if k != "kind"}
    try:
        if kind is Algorithm.MC:
            mc = McConfig(**extras)
            mc.validate()
        elif kind is Algorithm.GA:
            ga = GaConfig(**extras)
            ga.validate()
        elif extras:
            raise ScenarioValidationError(
                f"algorithm: greedy takes no options, got {sorted(extras)}"
            )
    except TypeError as exc:
        raise ScenarioValidationError(f"algorithm: {exc}") from None
    except ConfigurationError as exc:
        raise ScenarioValidationError(f"algorithm: {exc}") from None
    return kind, mc, ga


def load_scenario(path: str | Path) -> Scenario:
    """Read and validate a scenario file.

    Raises ScenarioParseError when the file cannot be read or is not
    JSON, ScenarioValidationError when the content is malformed; both
    messages name the offending element.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioParseError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ScenarioValidationError(f"{path}: top level must be an object")
    name = _require(raw, "name", "scenario")
    if not isinstance(name, str) or not name:
        raise ScenarioValidationError("scenario: 'name' must be a non-empty string")
    geometry = raw.get("geometry", "exact")
    if geometry not in ("exact", "reconstructed"):
        raise ScenarioValidationError(
            f"scenario: 'geometry' must be 'exact' or 'reconstructed', got {geometry!r}"
        )
    origin = _parse_point(raw.get("origin", [0.0, 0.0]), "origin")
    panels_raw = _require(raw, "panels", "scenario")
    if not isinstance(panels_raw, list) or not panels_raw:
        raise ScenarioValidationError("scenario: 'panels' must be a non-empty list")
    panels = tuple(_parse_panel(p, i) for i, p in enumerate(panels_raw))
    ids = [p.id for p in panels]
    if len(set(ids)) != len(ids):
        raise ScenarioValidationError(f"scenario: duplicate panel ids {ids}")
    panel_rotation = raw.get("panel_rotation", True)
    if not isinstance(panel_rotation, bool):
        raise ScenarioValidationError("scenario: 'panel_rotation' must be a boolean")
    regions_raw = _require(raw, "regions", "scenario")
    if not isinstance(regions_raw, list) or not regions_raw:
        raise ScenarioValidationError("scenario: 'regions' must be a non-empty list")
    regions = tuple(_parse_region(r, i) for i, r in enumerate(regions_raw))
    names = [r.name for r in regions]
    if len(set(names)) != len(names):
        raise ScenarioValidationError(f"scenario: duplicate region names {names}")
    policy_raw = raw.get("policy", {})
    if not isinstance(policy_raw, dict):
        raise ScenarioValidationError("scenario: 'policy' must be an object")
    rotation = _parse_enum(
        RotationMode, policy_raw.get("rotation", "r90"), "policy rotation"
    )
    allow_flip = policy_raw.get("flip", True)
    if not isinstance(allow_flip, bool):
        raise ScenarioValidationError("policy: 'flip' must be a boolean")
    strategy = _parse_enum(
        PlacementStrategy, raw.get("strategy", "first-fit"), "strategy"
    )
    algorithm, mc, ga = _parse_algorithm(raw.get("algorithm"))
    return Scenario(
        name=name,
        geometry=geometry,
        origin=origin,
        panels=panels,
        panel_rotation=panel_rotation,
        regions=regions,
        policy=TransformPolicy(rotation=rotation, allow_flip=allow_flip),
        strategy=strategy,
        algorithm=algorithm,
        mc=mc,
        ga=ga,
    )


def save_scenario(scenario: Scenario, path: str | Path) -> None:
    """Write a scenario back out; load_scenario(save_scenario(s)) == s."""
    algorithm: dict[str, Any] = {"kind": scenario.algorithm.value}
    if scenario.algorithm is Algorithm.MC:
        algorithm.update(
            iterations=scenario.mc.iterations,
            max_flips=scenario.mc.max_flips,
            flip_probability=scenario.mc.flip_probability,
            seed=scenario.mc.seed,
        )
    elif scenario.algorithm is Algorithm.GA:
        algorithm.update(
            population=scenario.ga.population,
            generations=scenario.ga.generations,
            crossover_probability=scenario.ga.crossover_probability,
            mutation_probability=scenario.ga.mutation_probability,
            elitism=scenario.ga.elitism,
            seed=scenario.ga.seed,
        )
    doc = {
        "name": scenario.name,
        "geometry": scenario.geometry,
        "origin": list(scenario.origin),
        "panels": [
            {"id": p.id, "width": p.dims.width, "height": p.dims.height}
            for p in scenario.panels
        ],
        "panel_rotation": scenario.panel_rotation,
        "regions": [
            {
                "name": r.name,
                "outer": [list(p) for p in r.region.outer],
                **(
                    {"holes": [[list(p) for p in h] for h in r.region.holes]}
                    if r.region.holes
                    else {}
                ),
            }
            for r in scenario.regions
        ],
        "policy": {
            "rotation": scenario.policy.rotation.value,
            "flip": scenario.policy.allow_flip,
        },
        "strategy": scenario.strategy.value,
        "algorithm": algorithm,
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


# --- run reports ---------------------------------------------------------

@dataclass(frozen=True)
class RegionReport:
    name: str
    outer: Ring
    holes: tuple[Ring, ...]
    whole: tuple[WholePanelPlacement, ...]
    piece_ids: tuple[int, ...]


@dataclass(frozen=True)
class PieceReport:
    id: int
    region: str
    outline: Ring
    shape: Ring
    area: float


@dataclass(frozen=True)
class RunReport:
    """Full record of one pipeline run."""

    scenario_name: str
    geometry: str
    algorithm: Algorithm
    strategy: PlacementStrategy
    policy: TransformPolicy
    seed: int | None
    origin: Point
    panel: StockPanel
    panel_rotated: bool
    regions: tuple[RegionReport, ...]
    pieces: tuple[PieceReport, ...]
    nesting: tuple[tuple[Placement, ...], ...]
    whole_panels: int
    total_panels: int
    material_usage: float
    shared_edge_length: float
    fitness: float
    evaluations: int
    trace: tuple[tuple[int, float], ...]
    duration_ms: float

    @property
    def irregular_pieces(self) -> int:
        return len(self.pieces)

    @property
    def cell_dims(self) -> RectDim:
        return self.panel.oriented(self.panel_rotated)


def _solve(scenario: Scenario, pieces: list[Piece], cell: RectDim) -> OptimizationResult:
    if scenario.algorithm is Algorithm.GREEDY:
        return solve_greedy(pieces, cell, scenario.policy, scenario.strategy)
    if scenario.algorithm is Algorithm.MC:
        return solve_mc(pieces, cell, scenario.policy, scenario.strategy, scenario.mc)
    return solve_ga(pieces, cell, scenario.policy, scenario.strategy, scenario.ga)


def run_pipeline(scenario: Scenario) -> RunReport:
    """Overlay every region, nest the off-cuts, and collect the report."""
    started = time.perf_counter()
    panel, rotated, plans = select_stock_panel(
        [r.region for r in scenario.regions],
        scenario.panels,
        scenario.origin,
        scenario.panel_rotation,
    )
    cell = panel.oriented(rotated)
    pieces: list[Piece] = []
    piece_reports: list[PieceReport] = []
    region_reports: list[RegionReport] = []
    for named, plan in zip(scenario.regions, plans):
        ids: list[int] = []
        for outline in plan.offcuts:
            piece = Piece.from_ring(len(pieces), outline)
            pieces.append(piece)
            ids.append(piece.id)
            piece_reports.append(
                PieceReport(
                    id=piece.id,
                    region=named.name,
                    outline=outline,
                    shape=piece.shape,
                    area=piece.area,
                )
            )
        region_reports.append(
            RegionReport(
                name=named.name,
                outer=named.region.outer,
                holes=named.region.holes,
                whole=plan.whole,
                piece_ids=tuple(ids),
            )
        )
    if pieces:
        result = _solve(scenario, pieces, cell)
        nest_plan = result.best_plan
        fitness = result.best_fitness
        trace = result.trace
        evaluations = result.evaluations
    else:
        nest_plan = NestingPlan(panel=cell, containers=())
        fitness = 0.0
        trace = ()
        evaluations = 0
    metrics = plan_metrics(nest_plan)
    whole_panels = sum(len(r.whole) for r in region_reports)
    total_panels = whole_panels + metrics.panel_count
    total_region_area = sum(region_area(r.region) for r in scenario.regions)
    usage = (
        total_region_area / (total_panels * cell.area) if total_panels else 1.0
    )
    duration_ms = (time.perf_counter() - started) * 1000.0
    return RunReport(
        scenario_name=scenario.name,
        geometry=scenario.geometry,
        algorithm=scenario.algorithm,
        strategy=scenario.strategy,
        policy=scenario.policy,
        seed=scenario.seed,
        origin=scenario.origin,
        panel=panel,
        panel_rotated=rotated,
        regions=tuple(region_reports),
        pieces=tuple(piece_reports),
        nesting=tuple(tuple(c.placements) for c in nest_plan.containers),
        whole_panels=whole_panels,
        total_panels=total_panels,
        material_usage=usage,
        shared_edge_length=metrics.shared_edge_total,
        fitness=fitness,
        evaluations=evaluations,
        trace=trace,
        duration_ms=duration_ms,
    )


def report_nesting_plan(report: RunReport) -> NestingPlan:
    """Rebuild the NestingPlan recorded in a report."""
    cell = report.cell_dims
    containers = []
    for placements in report.nesting:
        container = ContainerState(cell)
        for placement in placements:
            piece = Piece.from_ring(placement.piece_id, report.pieces[placement.piece_id].shape)
            container.place(piece, placement.transform)
        containers.append(container)
    return NestingPlan(panel=cell, containers=tuple(containers))


# --- serialisation -------------------------------------------------------

def _ring_to_json(ring: Ring) -> list[list[float]]:
    return [[x, y] for x, y in ring]


def _ring_from_json(value) -> Ring:
    return tuple((float(x), float(y)) for x, y in value)


def _placement_to_json(p: Placement) -> dict[str, Any]:
    return {
        "piece": p.piece_id,
        "rotation": p.transform.rotation.value,
        "flipped": p.transform.flipped,
        "translation": list(p.transform.translation),
        "polygon": _ring_to_json(p.polygon),
    }


def _placement_from_json(value) -> Placement:
    return Placement(
        piece_id=int(value["piece"]),
        transform=Transform(
            rotation=Rotation(int(value["rotation"])),
            flipped=bool(value["flipped"]),
            translation=(
                float(value["translation"][0]),
                float(value["translation"][1]),
            ),
        ),
        polygon=_ring_from_json(value["polygon"]),
    )


def report_to_dict(report: RunReport) -> dict[str, Any]:
    return {
        "version": REPORT_VERSION,
        "scenario": report.scenario_name,
        "geometry": report.geometry,
        "algorithm": report.algorithm.value,
        "strategy": report.strategy.value,
        "policy": {
            "rotation": report.policy.rotation.value,
            "flip": report.policy.allow_flip,
        },
        "seed": report.seed,
        "origin": list(report.origin),
        "panel": {
            "id": report.panel.id,
            "width": report.panel.dims.width,
            "height": report.panel.dims.height,
            "rotated": report.panel_rotated,
        },
        "regions": [
            {
                "name": r.name,
                "outer": _ring_to_json(r.outer),
                "holes": [_ring_to_json(h) for h in r.holes],
                "whole": [
                    {
                        "panel": w.panel_id,
                        "x": w.cell.x,
                        "y": w.cell.y,
                        "width": w.cell.width,
                        "height": w.cell.height,
                    }
                    for w in r.whole
                ],
                "pieces": list(r.piece_ids),
            }
            for r in report.regions
        ],
        "pieces": [
            {
                "id": p.id,
                "region": p.region,
                "outline": _ring_to_json(p.outline),
                "shape": _ring_to_json(p.shape),
                "area": p.area,
            }
            for p in report.pieces
        ],
        "nesting": [
            [_placement_to_json(p) for p in container] for container in report.nesting
        ],
        "summary": {
            "whole_panels": report.whole_panels,
            "irregular_pieces": report.irregular_pieces,
            "total_panels": report.total_panels,
            "material_usage": report.material_usage,
            "shared_edge_length": report.shared_edge_length,
            "fitness": report.fitness,
            "evaluations": report.evaluations,
            "duration_ms": report.duration_ms,
        },
        "trace": [[i, f] for i, f in report.trace],
    }


def report_from_dict(raw: dict[str, Any]) -> RunReport:
    panel = StockPanel(
        id=raw["panel"]["id"],
        dims=RectDim(float(raw["panel"]["width"]), float(raw["panel"]["height"])),
    )
    regions = tuple(
        RegionReport(
            name=r["name"],
            outer=_ring_from_json(r["outer"]),
            holes=tuple(_ring_from_json(h) for h in r["holes"]),
            whole=tuple(
                WholePanelPlacement(
                    panel_id=w["panel"],
                    cell=Rect(
                        float(w["x"]), float(w["y"]),
                        float(w["width"]), float(w["height"]),
                    ),
                )
                for w in r["whole"]
            ),
            piece_ids=tuple(int(i) for i in r["pieces"]),
        )
        for r in raw["regions"]
    )
    pieces = tuple(
        PieceReport(
            id=int(p["id"]),
            region=p["region"],
            outline=_ring_from_json(p["outline"]),
            shape=_ring_from_json(p["shape"]),
            area=float(p["area"]),
        )
        for p in raw["pieces"]
    )
    summary = raw["summary"]
    return RunReport(
        scenario_name=raw["scenario"],
        geometry=raw["geometry"],
        algorithm=Algorithm(raw["algorithm"]),
        strategy=PlacementStrategy(raw["strategy"]),
        policy=TransformPolicy(
            rotation=RotationMode(raw["policy"]["rotation"]),
            allow_flip=bool(raw["policy"]["flip"]),
        ),
        seed=raw["seed"],
        origin=(float(raw["origin"][0]), float(raw["origin"][1])),
        panel=panel,
        panel_rotated=bool(raw["panel"]["rotated"]),
        regions=regions,
        pieces=pieces,
        nesting=tuple(
            tuple(_placement_from_json(p) for p in container)
            for container in raw["nesting"]
        ),
        whole_panels=int(summary["whole_panels"]),
        total_panels=int(summary["total_panels"]),
        material_usage=float(summary["material_usage"]),
        shared_edge_length=float(summary["shared_edge_length"]),
        fitness=float(summary["fitness"]),
        evaluations=int(summary["evaluations"]),
        trace=tuple((int(i), float(f)) for i, f in raw["trace"]),
        duration_ms=float(summary["duration_ms"]),
    )


def write_report_json(report: RunReport, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(report_to_dict(report), indent=2) + "\n", encoding="utf-8"
    )


def load_report_json(path: str | Path) -> RunReport:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ScenarioParseError(f"cannot read report file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"{path} is not valid JSON: {exc}") from exc
    try:
        return report_from_dict(raw)
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioValidationError(f"{path} is not a valid report: {exc}") from None


CSV_COLUMNS = [
    "scenario",
    "algorithm",
    "irregular_pieces",
    "total_panels",
    "material_usage_pct",
    "shared_edge_length",
    "seed",
    "duration_ms",
]


def csv_header() -> list[str]:
    return list(CSV_COLUMNS)


def csv_row(report: RunReport) -> list[str]:
    return [
        report.scenario_name,
        report.algorithm.value,
        str(report.irregular_pieces),
        str(report.total_panels),
        f"{report.material_usage * 100.0:.2f}",
        f"{report.shared_edge_length:.2f}",
        "" if report.seed is None else str(report.seed),
        f"{report.duration_ms:.2f}",
    ]


def write_reports_csv(reports: Sequence[RunReport], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(csv_header())
        for report in reports:
            writer.writerow(csv_row(report))


def _human_summary(report: RunReport) -> str:
    cell = report.cell_dims
    lines = [
        f"scenario:        {report.scenario_name} ({report.geometry})",
        f"algorithm:       {report.algorithm.value}"
        + (f" (seed {report.seed})" if report.seed is not None else ""),
        f"strategy:        {report.strategy.value}",
        f"policy:          rotation={report.policy.rotation.value} "
        f"flip={'yes' if report.policy.allow_flip else 'no'}",
        f"stock panel:     {report.panel.id} "
        f"{report.panel.dims.width:g} x {report.panel.dims.height:g}"
        + (" (rotated)" if report.panel_rotated else ""),
        f"grid origin:     ({report.origin[0]:g}, {report.origin[1]:g})",
        f"whole panels:    {report.whole_panels}",
        f"irregular:       {report.irregular_pieces} pieces "
        f"on {report.total_panels - report.whole_panels} panels",
        f"total panels:    {report.total_panels}",
        f"material usage:  {report.material_usage * 100.0:.2f}%",
        f"shared edges:    {report.shared_edge_length:.2f}",
        f"fitness:         {report.fitness:.2f} vacant",
        f"evaluations:     {report.evaluations}",
        f"duration:        {report.duration_ms:.2f} ms",
    ]
    for i, placements in enumerate(report.nesting):
        used = sum(report.pieces[p.piece_id].area for p in placements)
        lines.append(
            f"  container {i}: pieces "
            + ", ".join(str(p.piece_id) for p in placements)
            + f" ({used / cell.area * 100.0:.1f}% full)"
        )
    return "\n".join(lines) + "\n"


def emit_report(report: RunReport, path: str | Path, fmt: str = "csv") -> None:
    """Write the report as a one-row CSV or a human-readable summary."""
    if fmt == "csv":
        write_reports_csv([report], path)
    elif fmt == "human":
        Path(path).write_text(_human_summary(report), encoding="utf-8")
    else:
        raise ConfigurationError(f"unknown report format {fmt!r}")
