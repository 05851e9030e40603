"""Side-by-side comparison harness: retargeting vs. RT and NNR baselines.

Each method gets a motor sequence driven by the same blendshape clip, and
an EDR score computed from its (externally annotated) valence/arousal
trajectory.  Artifacts land in one output directory: per-method motor
CSVs, a markdown table, and the hull overlay SVG.
"""

import dataclasses
from pathlib import Path

from . import csvio
from .baselines import PairedDataset, nnr_baseline, random_baseline
from .edr import DEFAULT_TRIM_FRACTION, edr
from .errors import ParseError
from .hullplot import emit_hull_geometry
from .profile import RetargetProfile, SmoothingConfig
from .retarget import retarget_sequence, smooth_sequence

MOTOR_METHODS = ("ours", "rt", "nnr")


@dataclasses.dataclass(frozen=True)
class ComparisonReport:
    edr_values: dict
    motor_paths: dict
    table_path: Path
    svg_path: Path

    def table_markdown(self) -> str:
        lines = ["| method | EDR |", "| --- | --- |"]
        for name, value in self.edr_values.items():
            lines.append(f"| {name} | {value:.4f} |")
        return "\n".join(lines) + "\n"


def _parse_inputs(blendshape_path, va_paths, dataset_path, lenient, fps):
    errors = []
    frames = trajectories = dataset = None
    try:
        frames = csvio.parse_blendshape_csv(
            Path(blendshape_path).read_text(), lenient=lenient, fps=fps
        )
    except (OSError, ParseError) as exc:
        errors.append(f"{blendshape_path}: {exc}")
    trajectories = {}
    for name, path in va_paths.items():
        try:
            trajectories[name] = csvio.parse_va_csv(Path(path).read_text())
        except (OSError, ParseError) as exc:
            errors.append(f"{path}: {exc}")
    try:
        dataset = csvio.parse_paired_csv(Path(dataset_path).read_text())
    except (OSError, ParseError) as exc:
        errors.append(f"{dataset_path}: {exc}")
    if errors:
        raise ParseError("; ".join(errors))
    return frames, trajectories, dataset


def run_compare(
    blendshape_path,
    va_paths: dict,
    profile: RetargetProfile,
    dataset_path,
    output_dir,
    seed: int = 0,
    sigma: float = 1.0,
    fps: float = 25.0,
    trim_fraction: float = DEFAULT_TRIM_FRACTION,
    lenient: bool = False,
    smooth_nnr: bool = True,
) -> ComparisonReport:
    """Drive one clip through all three methods and score the trajectories.

    ``va_paths`` maps method name to a valence/arousal CSV; every method
    named there gets an EDR entry and a hull in the SVG.  Parse failures
    across all inputs are aggregated into a single error.  NNR queries go
    through the same smoothing as the main method unless ``smooth_nnr``
    is off.
    """
    frames, trajectories, dataset = _parse_inputs(
        blendshape_path, va_paths, dataset_path, lenient, fps
    )
    if isinstance(dataset, PairedDataset) and dataset.dof != profile.dof:
        raise ParseError(
            f"dataset has {dataset.dof} actuators, profile expects {profile.dof}"
        )

    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)

    cfg = SmoothingConfig(sigma=sigma)
    nnr_frames = smooth_sequence(frames, cfg) if smooth_nnr else frames
    motors = {
        "ours": retarget_sequence(profile, frames, cfg),
        "rt": random_baseline(dataset, len(frames), seed),
        "nnr": nnr_baseline(dataset, nnr_frames),
    }
    motor_paths = {}
    for name, matrix in motors.items():
        path = out / f"{name}_motors.csv"
        path.write_text(csvio.motor_csv(matrix))
        motor_paths[name] = path

    edr_values = {
        name: edr(points, fraction=trim_fraction)
        for name, points in trajectories.items()
    }

    svg_path = out / "hulls.svg"
    svg_path.write_text(emit_hull_geometry(trajectories, fraction=trim_fraction))

    report = ComparisonReport(
        edr_values=edr_values,
        motor_paths=motor_paths,
        table_path=out / "edr_table.md",
        svg_path=svg_path,
    )
    report.table_path.write_text(report.table_markdown())
    return report
