"""Command-line front end.

Usage:
    python scripts/run_cli.py entropy page.png --out entropy.grid --out entropy.png
    python scripts/run_cli.py heatmap mouse.csv --width 1349 --height 1165 --out mouse.grid
    python scripts/run_cli.py correct --heatmap mouse.grid --entropy entropy.grid --out corrected.grid
    python scripts/run_cli.py compare corrected.grid gaze.grid --json metrics.json
    python scripts/run_cli.py render --map corrected.grid --background page.png --out corrected.png
    python scripts/run_cli.py pipeline page.png mouse.csv --gaze gaze.csv --out results/run1

Exit codes: 0 ok, 2 bad input, 3 bad parameter, 4 dimension mismatch,
5 degenerate data (constant or empty map).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

import numpy as np

from entropytrack.analysis.correction import CorrectedMap, apply_correction, correct, downsample_entropy
from entropytrack.analysis.metrics import (
    CenterOfGravity,
    center_of_gravity,
    compare,
    format_centers_table,
    format_distance_table,
    format_report,
)
from entropytrack.config import PipelineConfig
from entropytrack.errors import (
    DimensionMismatch,
    EntropyTrackError,
    InvalidParameter,
    ZeroMass,
)
from entropytrack.formats.gridfile import GridFile, read_grid, write_grid
from entropytrack.formats.report import ReportParams, write_centers, write_report
from entropytrack.perception.entropy_map import EntropyMap, check_window, local_entropy, max_bits_for, normalize_255
from entropytrack.perception.images import RasterImage, load_png, save_png, to_grayscale
from entropytrack.render.heatmap import RenderOptions, colorize_levels, render_map
from entropytrack.trace.logger import TraceLogger
from entropytrack.tracking.dwell import DwellMap, build_dwell_map, merge_dwell_maps
from entropytrack.tracking.events import Source, TrackingEvent, read_events

logger = logging.getLogger("entropytrack")

DEFAULTS = PipelineConfig()


def _warn(msg: str) -> None:
    sys.stderr.write(f"warning: {msg}\n")
    sys.stderr.flush()


def _render_options(cfg: PipelineConfig) -> RenderOptions:
    return RenderOptions(
        blur_sigma=cfg.blur_sigma,
        overlay_alpha=cfg.overlay_alpha,
        zero_transparent=cfg.zero_transparent,
    )


def _params(cfg: PipelineConfig) -> ReportParams:
    return ReportParams(window=cfg.window, cell_size=cfg.cell_size, idle_cap=cfg.idle_cap_ms, epsilon=cfg.epsilon)


def _centers_of(values: np.ndarray, cell_size: int, label: str) -> list[CenterOfGravity]:
    try:
        return [center_of_gravity(values, cell_size)]
    except ZeroMass:
        logger.warning("%s has no mass; not marking its center of gravity", label)
        return []


def _entropy_png(em: EntropyMap) -> np.ndarray:
    return colorize_levels(normalize_255(em))


def _dwell_from_files(
    paths: Sequence[Path], width: int, height: int, cfg: PipelineConfig, source: Source | None,
    events_by_path: dict[Path, list[TrackingEvent]] | None = None,
) -> DwellMap:
    maps = []
    for path in paths:
        events = events_by_path[path] if events_by_path else read_events(path, has_header=cfg.has_header)
        maps.append(build_dwell_map(events, width, height, cfg.cell_size, cfg.idle_cap_ms, source=source))
    return merge_dwell_maps(maps)


# ── commands ─────────────────────────────────────────────────────

def cmd_entropy(args: argparse.Namespace) -> int:
    cfg = replace(DEFAULTS, window=args.window, epsilon=args.epsilon).validate()
    img = load_png(args.screenshot)
    em = local_entropy(to_grayscale(img), cfg.window, cfg.epsilon)
    for out in args.out:
        out = Path(out)
        if out.suffix.lower() == ".png":
            save_png(out, _entropy_png(em))
        else:
            write_grid(out, em.bits, cell_size=1)
        logger.info("Wrote %s", out)
    return 0


def cmd_heatmap(args: argparse.Namespace) -> int:
    cfg = replace(
        DEFAULTS, cell_size=args.cell, idle_cap_ms=args.idle_cap, has_header=args.header,
    ).validate()
    if args.width < 1 or args.height < 1:
        raise InvalidParameter(f"page size must be at least 1x1, got {args.width}x{args.height}")
    source = Source(args.source) if args.source else None
    dwell = _dwell_from_files([Path(p) for p in args.events], args.width, args.height, cfg, source)
    if dwell.empty_session:
        _warn("no events inside the page; writing an all-zero heat map")
    write_grid(args.out, dwell.dwell, cell_size=dwell.cell_size)
    logger.info("Wrote %s (%.0f ms total dwell)", args.out, dwell.total())
    return 0


def _correct_grids(heat: GridFile, entropy: GridFile, window: int, epsilon: float) -> CorrectedMap:
    if entropy.cell_size != 1:
        raise InvalidParameter(f"entropy grid must be per-pixel (cell size 1), got cell size {entropy.cell_size}")
    limit = max_bits_for(window)
    if float(entropy.values.max()) > limit + 1e-9:
        raise InvalidParameter(
            f"entropy grid holds {entropy.values.max():.4f} bits, above the {limit:.4f} bit maximum "
            f"of a {window}x{window} window; pass the window the grid was computed with"
        )
    bits = entropy.values.copy()
    if epsilon > 0:
        bits[bits < epsilon] = 0.0
    return correct(DwellMap(dwell=heat.values, cell_size=heat.cell_size), EntropyMap(bits=bits, window=window))


def cmd_correct(args: argparse.Namespace) -> int:
    cfg = replace(DEFAULTS, window=args.window, epsilon=args.epsilon).validate()
    heat = read_grid(args.heatmap)
    entropy = read_grid(args.entropy)
    corrected = _correct_grids(heat, entropy, cfg.window, cfg.epsilon)
    write_grid(args.out, corrected.values, cell_size=corrected.cell_size)
    logger.info("Wrote %s", args.out)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    a = read_grid(args.a)
    b = read_grid(args.b)
    if a.cell_size != b.cell_size:
        raise DimensionMismatch(
            (a.height, a.width, a.cell_size), (b.height, b.width, b.cell_size), what="grids (rows, cols, cell size)",
        )
    report = compare(a.values, b.values, cell_size=a.cell_size)
    print(format_report(report, args.label_a, args.label_b))
    if args.json:
        write_report(args.json, report, ReportParams(cell_size=a.cell_size))
        logger.info("Wrote %s", args.json)
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    cfg = replace(
        DEFAULTS, blur_sigma=args.blur, overlay_alpha=args.alpha,
        zero_transparent=not args.no_zero_transparent, mark_centers=args.mark_center,
    ).validate()
    grid = read_grid(args.map)
    background = load_png(args.background).pixels if args.background else None
    centers = _centers_of(grid.values, grid.cell_size, str(args.map)) if cfg.mark_centers else []
    image = render_map(grid.values, grid.cell_size, _render_options(cfg), background, centers)
    save_png(args.out, image)
    logger.info("Wrote %s", args.out)
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    cfg = replace(
        DEFAULTS, window=args.window, epsilon=args.epsilon, cell_size=args.cell, idle_cap_ms=args.idle_cap,
        has_header=args.header, blur_sigma=args.blur, overlay_alpha=args.alpha, mark_centers=args.mark_center,
    ).validate()

    # Load every input before anything is written.
    page: RasterImage = load_png(args.screenshot)
    mouse_paths = [Path(p) for p in args.mouse]
    gaze_paths = [Path(p) for p in (args.gaze or [])]
    events = {p: read_events(p, has_header=cfg.has_header) for p in mouse_paths + gaze_paths}
    check_window(cfg.window, page.width, page.height)

    out = Path(args.out)
    options = _render_options(cfg)
    params = _params(cfg)
    background = page.pixels

    def render(name: str, values: np.ndarray) -> None:
        centers = _centers_of(values, cfg.cell_size, name) if cfg.mark_centers else []
        save_png(out / f"{name}.png", render_map(values, cfg.cell_size, options, background, centers))

    with TraceLogger(out) as trace:
        trace.log("pipeline_start", screenshot=str(args.screenshot), mouse=[str(p) for p in mouse_paths],
                  gaze=[str(p) for p in gaze_paths], width=page.width, height=page.height, **vars(params))

        with trace.stage("entropy", window=cfg.window) as rec:
            em = local_entropy(to_grayscale(page), cfg.window, cfg.epsilon)
            write_grid(out / "entropy.grid", em.bits, cell_size=1)
            save_png(out / "entropy.png", _entropy_png(em))
            rec["zero_fraction"] = float(np.mean(em.bits == 0))
        weights = downsample_entropy(em, cfg.cell_size)

        with trace.stage("mouse") as rec:
            mouse = _dwell_from_files(mouse_paths, page.width, page.height, cfg, None, events)
            if mouse.empty_session:
                _warn("no mouse events inside the page")
            mouse_corrected = apply_correction(mouse, weights)
            write_grid(out / "mouse_raw.grid", mouse.dwell, cfg.cell_size)
            write_grid(out / "mouse_corrected.grid", mouse_corrected.values, cfg.cell_size)
            render("mouse_raw", mouse.dwell)
            render("mouse_corrected", mouse_corrected.values)
            rec.update(raw_ms=mouse.total(), corrected_ms=mouse_corrected.total())

        if not gaze_paths:
            trace.log("pipeline_done", metrics=False)
            return 0

        with trace.stage("gaze") as rec:
            gaze = _dwell_from_files(gaze_paths, page.width, page.height, cfg, None, events)
            if gaze.empty_session:
                _warn("no gaze events inside the page")
            gaze_corrected = apply_correction(gaze, weights)
            write_grid(out / "gaze.grid", gaze.dwell, cfg.cell_size)
            write_grid(out / "gaze_corrected.grid", gaze_corrected.values, cfg.cell_size)
            render("gaze", gaze.dwell)
            render("gaze_corrected", gaze_corrected.values)
            rec.update(raw_ms=gaze.total(), corrected_ms=gaze_corrected.total())

        with trace.stage("metrics") as rec:
            pairs = {
                "mt_et": (mouse.dwell, "MT"),
                "enmt_et": (mouse_corrected.values, "ENxMT"),
                "enet_et": (gaze_corrected.values, "ENxET"),
            }
            for key, (values, label) in pairs.items():
                report = compare(values, gaze.dwell, cell_size=cfg.cell_size)
                write_report(out / f"metrics_{key}.json", report, params)
                print(f"== {label} vs ET ==")
                print(format_report(report, label, "ET"))
                print()
                rec[key] = {"correlation": report.correlation, "distance": report.distance}

            centers = {
                "MT": center_of_gravity(mouse.dwell, cfg.cell_size),
                "ET": center_of_gravity(gaze.dwell, cfg.cell_size),
                "EN": center_of_gravity(weights, cfg.cell_size),
                "ENxMT": center_of_gravity(mouse_corrected.values, cfg.cell_size),
                "ENxET": center_of_gravity(gaze_corrected.values, cfg.cell_size),
            }
            write_centers(out / "centers.json", centers, params)
            table = "Centers of gravity\n\n" + format_centers_table(centers) + \
                "\n\nDistances between centers of gravity\n\n" + format_distance_table(centers) + "\n"
            (out / "centers.txt").write_text(table, encoding="utf-8")
            print(table)

        trace.log("pipeline_done", metrics=True)
    return 0


# ── argument parsing ─────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropytrack",
        description="Entropy-based correction and comparison of mouse/gaze heat maps",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Exit codes: 0 ok, 2 bad input, 3 bad parameter, 4 dimension mismatch, 5 degenerate data",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="Local entropy map of a PNG screenshot")
    p.add_argument("screenshot", type=Path)
    p.add_argument("--window", type=int, default=DEFAULTS.window, help="Odd window side in pixels (default: 3)")
    p.add_argument("--epsilon", type=float, default=DEFAULTS.epsilon, help="Zero out entropy below this many bits")
    p.add_argument("--out", action="append", required=True,
                   help="Output path; .png renders the 0-255 map, anything else writes a grid. Repeatable.")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("heatmap", help="Dwell-time heat map from event CSVs")
    p.add_argument("events", nargs="+", type=Path, help="Event CSV(s); several sessions are summed")
    p.add_argument("--width", type=int, required=True, help="Page width in pixels")
    p.add_argument("--height", type=int, required=True, help="Page height in pixels")
    p.add_argument("--cell", type=int, default=DEFAULTS.cell_size, help="Cell size in pixels (default: 1)")
    p.add_argument("--idle-cap", type=float, default=DEFAULTS.idle_cap_ms, help="Longest credited gap in ms (default: 1000)")
    p.add_argument("--source", choices=[s.value for s in Source], default=None, help="Keep only this event source")
    p.add_argument("--header", action="store_true", help="Skip the first line of each CSV")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("correct", help="Weight a heat map by entropy")
    p.add_argument("--heatmap", type=Path, required=True)
    p.add_argument("--entropy", type=Path, required=True, help="Per-pixel entropy grid (raw bits)")
    p.add_argument("--window", type=int, default=DEFAULTS.window, help="Window the entropy grid was computed with")
    p.add_argument("--epsilon", type=float, default=DEFAULTS.epsilon)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("compare", help="Correlation and center-of-gravity distance of two grids")
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    p.add_argument("--json", type=Path, default=None, help="Write the metrics report here")
    p.add_argument("--label-a", default="A")
    p.add_argument("--label-b", default="B")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("render", help="Render a grid as a false-color PNG")
    p.add_argument("--map", type=Path, required=True)
    p.add_argument("--background", type=Path, default=None, help="Screenshot to composite over")
    p.add_argument("--blur", type=float, default=DEFAULTS.blur_sigma, help="Gaussian sigma in pixels (default: 8)")
    p.add_argument("--alpha", type=float, default=DEFAULTS.overlay_alpha, help="Heat layer opacity (default: 0.6)")
    p.add_argument("--no-zero-transparent", action="store_true", help="Paint zero cells with the ramp's first color")
    p.add_argument("--mark-center", action="store_true", help="Mark the center of gravity")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("pipeline", help="Entropy, heat maps, correction, renders and metrics in one go")
    p.add_argument("screenshot", type=Path)
    p.add_argument("mouse", nargs="+", type=Path, help="Mouse event CSV(s)")
    p.add_argument("--gaze", action="append", type=Path, default=None, help="Gaze event CSV (repeatable)")
    p.add_argument("--out", type=Path, required=True, help="Output directory")
    p.add_argument("--window", type=int, default=DEFAULTS.window)
    p.add_argument("--cell", type=int, default=DEFAULTS.cell_size)
    p.add_argument("--idle-cap", type=float, default=DEFAULTS.idle_cap_ms)
    p.add_argument("--epsilon", type=float, default=DEFAULTS.epsilon)
    p.add_argument("--blur", type=float, default=DEFAULTS.blur_sigma)
    p.add_argument("--alpha", type=float, default=DEFAULTS.overlay_alpha)
    p.add_argument("--header", action="store_true")
    p.add_argument("--mark-center", action="store_true")
    p.set_defaults(func=cmd_pipeline)

    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        return args.func(args)
    except EntropyTrackError as e:
        sys.stderr.write(f"error: {e}\n")
        sys.stderr.flush()
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
