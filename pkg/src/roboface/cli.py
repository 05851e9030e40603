"""Command-line entry points.

Global flags configure the shared pieces (profile, frame rate, smoothing,
seed, trim fraction, validation strictness); subcommands cover the
pipeline stages: retarget, baseline rt|nnr, edr, compare, stream, and the
calibrate service.
"""

import functools
from importlib import resources
from pathlib import Path

import click

from . import csvio, wire
from .baselines import nnr_baseline, random_baseline
from .calibration import CalibrationSession, create_app
from .compare import run_compare
from .edr import DEFAULT_TRIM_FRACTION
from .edr import edr as compute_edr
from .errors import RobofaceError
from .hullplot import emit_hull_geometry
from .profile import SmoothingConfig, load_profile, load_profile_file
from .retarget import retarget_sequence, smooth_sequence
from .streaming import stream_sequence


def bundled_profile_text() -> str:
    return (
        resources.files("roboface").joinpath("data/default_profile.yaml").read_text()
    )


class CliConfig:
    """Lazily-loaded shared state behind the global flags."""

    def __init__(self, profile_path, fps, sigma, seed, trim_fraction, strict):
        self.profile_path = profile_path
        self._fps = fps
        self.sigma = sigma
        self.seed = seed
        self.trim_fraction = trim_fraction
        self.strict = strict
        self._profile = None

    @property
    def profile(self):
        if self._profile is None:
            if self.profile_path:
                self._profile = load_profile_file(self.profile_path)
            else:
                self._profile = load_profile(bundled_profile_text())
        return self._profile

    @property
    def fps(self) -> float:
        return self._fps if self._fps is not None else self.profile.fps

    def smoothing(self) -> SmoothingConfig:
        return SmoothingConfig(sigma=self.sigma)


def friendly(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except RobofaceError as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


@click.group()
@click.option(
    "--profile",
    "profile_path",
    type=click.Path(exists=True, dir_okay=False),
    envvar="SINGINGBOT_PROFILE",
    default=None,
    help="Robot mapping profile (YAML/JSON). Falls back to the "
    "SINGINGBOT_PROFILE environment variable, then the bundled profile.",
)
@click.option("--fps", type=float, default=None, help="Frame rate; defaults to the profile's fps.")
@click.option("--sigma", type=float, default=1.0, show_default=True, help="Gaussian smoothing sigma in frames; 0 disables smoothing.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for the random baseline.")
@click.option("--trim-fraction", type=float, default=DEFAULT_TRIM_FRACTION, show_default=True, help="Fraction of outlier points trimmed before hull area.")
@click.option("--strict/--lenient", "strict", default=True, help="Reject out-of-range coefficients, or clamp them with a warning.")
@click.pass_context
def main(ctx, profile_path, fps, sigma, seed, trim_fraction, strict):
    """Retarget avatar blendshapes onto robot actuators."""
    ctx.obj = CliConfig(profile_path, fps, sigma, seed, trim_fraction, strict)


def _write_motors(matrix, output):
    if output is None:
        click.echo(csvio.motor_csv(matrix), nl=False)
        return
    path = Path(output)
    if path.suffix == ".bin":
        path.write_bytes(wire.encode_stream(wire.motor_frames(matrix)))
    else:
        path.write_text(csvio.motor_csv(matrix))
    click.echo(f"wrote {path}")


@main.command()
@click.argument("input_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Motor CSV, or a binary frame stream when the name ends in .bin; stdout when omitted.")
@click.pass_obj
@friendly
def retarget(cfg, input_csv, output):
    """Map a blendshape CSV to actuator commands."""
    frames = csvio.parse_blendshape_csv(
        Path(input_csv).read_text(), lenient=not cfg.strict, fps=cfg.fps
    )
    matrix = retarget_sequence(cfg.profile, frames, cfg.smoothing())
    _write_motors(matrix, output)


@main.group()
def baseline():
    """Comparison baselines over a paired blendshape/actuator dataset."""


@baseline.command("rt")
@click.argument("dataset_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--frames", "n_frames", type=int, required=True, help="Number of frames to draw.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@friendly
def baseline_rt(cfg, dataset_csv, n_frames, output):
    """Uniformly sample stored actuator vectors (seeded)."""
    dataset = csvio.parse_paired_csv(Path(dataset_csv).read_text())
    _write_motors(random_baseline(dataset, n_frames, cfg.seed), output)


@baseline.command("nnr")
@click.argument("dataset_csv", type=click.Path(exists=True, dir_okay=False))
@click.argument("input_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--smoothed/--raw", "smoothed", default=True, show_default=True, help="Smooth queries the same way the retarget path does.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@friendly
def baseline_nnr(cfg, dataset_csv, input_csv, smoothed, output):
    """Replay the nearest stored sample for every input frame."""
    dataset = csvio.parse_paired_csv(Path(dataset_csv).read_text())
    frames = csvio.parse_blendshape_csv(
        Path(input_csv).read_text(), lenient=not cfg.strict, fps=cfg.fps
    )
    if smoothed:
        frames = smooth_sequence(frames, cfg.smoothing())
    _write_motors(nnr_baseline(dataset, frames), output)


@main.command()
@click.argument("va_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--svg", type=click.Path(dir_okay=False), default=None, help="Also write a hull plot SVG.")
@click.option("--name", default="trajectory", show_default=True, help="Label used in the SVG.")
@click.pass_obj
@friendly
def edr(cfg, va_csv, svg, name):
    """Emotion dynamic range of a valence/arousal trajectory."""
    points = csvio.parse_va_csv(Path(va_csv).read_text())
    click.echo(f"{compute_edr(points, cfg.trim_fraction):.6f}")
    if svg:
        Path(svg).write_text(
            emit_hull_geometry({name: points}, fraction=cfg.trim_fraction)
        )
        click.echo(f"wrote {svg}")


@main.command()
@click.argument("blendshape_csv", type=click.Path(exists=True, dir_okay=False))
@click.argument("dataset_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--va", "va_specs", multiple=True, required=True, metavar="NAME=PATH", help="Valence/arousal CSV per method; repeatable.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default="compare_out", show_default=True)
@click.option("--smoothed/--raw", "smooth_nnr", default=True, show_default=True, help="Smooth NNR queries like the main path.")
@click.pass_obj
@friendly
def compare(cfg, blendshape_csv, dataset_csv, va_specs, out_dir, smooth_nnr):
    """Run all methods on one clip and produce the EDR table and hull plot."""
    va_paths = {}
    for spec in va_specs:
        name, sep, path = spec.partition("=")
        if not sep or not name or not path:
            raise click.BadParameter(f"expected NAME=PATH, got {spec!r}", param_hint="--va")
        va_paths[name] = path
    report = run_compare(
        blendshape_csv,
        va_paths,
        cfg.profile,
        dataset_csv,
        out_dir,
        seed=cfg.seed,
        sigma=cfg.sigma,
        fps=cfg.fps,
        trim_fraction=cfg.trim_fraction,
        lenient=not cfg.strict,
        smooth_nnr=smooth_nnr,
    )
    click.echo(report.table_markdown(), nl=False)
    click.echo(f"wrote {report.table_path} and {report.svg_path}")


@main.command()
@click.argument("motor_input", type=click.Path(exists=True, dir_okay=False))
@click.option("--dest", required=True, help="udp://HOST:PORT for paced sending, or a file path to dump frames.")
@click.pass_obj
@friendly
def stream(cfg, motor_input, dest):
    """Send an actuator sequence as paced binary motor frames."""
    path = Path(motor_input)
    if path.suffix == ".bin":
        frames = wire.decode_stream(path.read_bytes())
    else:
        frames = wire.motor_frames(csvio.parse_motor_csv(path.read_text()))
    report = stream_sequence(frames, cfg.fps, dest)
    click.echo(
        f"sent {report.frames_sent} frames in {report.wall_time_s:.3f} s "
        f"(mean |jitter| {report.mean_abs_jitter_s * 1000.0:.2f} ms, "
        f"max {report.max_abs_jitter_s * 1000.0:.2f} ms)"
    )


def _default_ui_dir():
    here = Path(__file__).resolve()
    candidates = [
        Path.cwd() / "frontend" / "dist",
        here.parents[2] / "frontend" / "dist" if len(here.parents) > 2 else None,
        here.parents[3] / "frontend" / "dist" if len(here.parents) > 3 else None,
    ]
    for cand in candidates:
        if cand is not None and cand.is_dir():
            return cand
    return None


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8731, show_default=True, type=int)
@click.option("--ui", "ui_dir", type=click.Path(file_okay=False, exists=True), default=None, help="Static UI bundle to serve at /; auto-detected when omitted.")
@click.pass_obj
@friendly
def calibrate(cfg, host, port, ui_dir):
    """Serve the anchor-authoring API (and web UI, when built)."""
    import uvicorn

    session = CalibrationSession(cfg.profile)
    static = Path(ui_dir) if ui_dir else _default_ui_dir()
    app = create_app(session, static_dir=static)
    if static is not None:
        click.echo(f"serving UI from {static}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
