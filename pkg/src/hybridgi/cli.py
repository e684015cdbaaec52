"""Config-driven experiment runner.

Subcommands: gen-object, acquire, reconstruct, metrics, run, sweep,
footprint, demo-stripes. Exit codes: 0 success, 1 config error, 2 I/O
error, 3 numeric/domain error.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

from . import fileio, scenes
from .config import ExperimentConfig, parse_config, with_overrides
from .errors import ConfigError, HybridGIError, ImageParseError
from .measurement import HybridSpec, footprint_report
from .metrics import count_significant, quality_report
from .reconstruct import reconstruct_chain
from .simulator import NoiseModel, SceneImage, acquire, acquire_ideal

EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_NUMERIC = 3


def _load_config(args) -> tuple[ExperimentConfig, Path]:
    if not args.config:
        raise ConfigError("--config", "a config file is required for this command")
    config_path = Path(args.config)
    try:
        data = json.loads(config_path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(str(config_path), f"invalid JSON: {exc}") from exc
    data = with_overrides(data, sigma=args.sigma, seed=args.seed)
    return parse_config(data), config_path.parent


def _out_dir(args) -> Path:
    out = Path(args.out) if args.out else Path.cwd()
    out.mkdir(parents=True, exist_ok=True)
    return out


def _acquire(config: ExperimentConfig, scene: SceneImage):
    if config.uses_dft:
        return acquire_ideal(config.hybrid, scene)
    return acquire(config.hybrid, scene, config.noise)


def _summary_line(label: str, rate: float, report) -> str:
    return (
        f"{label} rate={rate:.3f} psnr={report.psnr_db:.2f} "
        f"ssim={report.ssim:.4f} significant={report.significant_count}"
    )


def run_experiment(config: ExperimentConfig, out_dir: Path, base_dir: Path,
                   write_files: bool = True):
    """Full pipeline: object -> acquire -> reconstruct -> score -> export."""
    scene = config.object_spec.build(base_dir)
    buckets = _acquire(config, scene)
    result = reconstruct_chain(config.hybrid, buckets, range_tag=scene.range_tag)
    report = quality_report(
        scene,
        result.image,
        peak=config.metric_options.peak,
        roi=config.metric_options.roi,
        buckets=buckets,
        rel_tol=config.metric_options.rel_tol,
    )
    if write_files:
        paths = config.outputs.resolved(out_dir)
        fileio.write_buckets(paths.buckets, buckets)
        image_path = Path(paths.image)
        scenes.save_image(result.image, image_path)
        fileio.write_csv_matrix(image_path.with_suffix(".csv"), result.image.values)
        fileio.write_json(
            paths.report,
            {
                "set": config.hybrid.label,
                "sampling_rate": config.hybrid.sampling_rate,
                "quality": report.to_dict(),
                "residual_norm": result.residual_norm,
                "config": config.raw,
            },
        )
    return scene, buckets, result, report


def cmd_run(args) -> int:
    config, base_dir = _load_config(args)
    out_dir = _out_dir(args)
    _, _, _, report = run_experiment(config, out_dir, base_dir)
    if not args.quiet:
        print(_summary_line(config.hybrid.label, config.hybrid.sampling_rate, report))
    return 0


def cmd_gen_object(args) -> int:
    config, base_dir = _load_config(args)
    scene = config.object_spec.build(base_dir)
    paths = config.outputs.resolved(_out_dir(args))
    scenes.save_image(scene, paths.object_path)
    if not args.quiet:
        print(f"object {scene.height}x{scene.width} -> {paths.object_path}")
    return 0


def cmd_acquire(args) -> int:
    config, base_dir = _load_config(args)
    scene = config.object_spec.build(base_dir)
    buckets = _acquire(config, scene)
    paths = config.outputs.resolved(_out_dir(args))
    fileio.write_buckets(paths.buckets, buckets)
    if not args.quiet:
        print(
            f"{config.hybrid.label} buckets {buckets.values.shape[0]}x"
            f"{buckets.values.shape[1]} -> {paths.buckets}"
        )
    return 0


def cmd_reconstruct(args) -> int:
    config, _ = _load_config(args)
    paths = config.outputs.resolved(_out_dir(args))
    buckets = fileio.read_buckets(paths.buckets)
    result = reconstruct_chain(buckets.spec, buckets)
    image_path = Path(paths.image)
    scenes.save_image(result.image, image_path)
    fileio.write_csv_matrix(image_path.with_suffix(".csv"), result.image.values)
    if not args.quiet:
        print(f"reconstruction residual={result.residual_norm:.3e} -> {paths.image}")
    return 0


def cmd_metrics(args) -> int:
    config, base_dir = _load_config(args)
    scene = config.object_spec.build(base_dir)
    paths = config.outputs.resolved(_out_dir(args))
    recon = fileio.read_csv_matrix(Path(paths.image).with_suffix(".csv"))
    buckets = fileio.read_buckets(paths.buckets)
    report = quality_report(
        scene,
        recon,
        peak=config.metric_options.peak,
        roi=config.metric_options.roi,
        buckets=buckets,
        rel_tol=config.metric_options.rel_tol,
    )
    fileio.write_json(
        paths.report,
        {
            "set": config.hybrid.label,
            "sampling_rate": config.hybrid.sampling_rate,
            "quality": report.to_dict(),
            "config": config.raw,
        },
    )
    if not args.quiet:
        print(_summary_line(config.hybrid.label, config.hybrid.sampling_rate, report))
    return 0


def cmd_sweep(args) -> int:
    if not args.config:
        raise ConfigError("--config", "a sweep config file is required")
    sweep_path = Path(args.config)
    try:
        data = json.loads(sweep_path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(str(sweep_path), f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "base" not in data:
        raise ConfigError("base", "sweep config needs a base experiment config")
    vary = data.get("vary", {})
    hybrid_sets = vary.get("hybrid_sets") or [None]
    sigmas = vary.get("sigmas") or [None]
    seeds = vary.get("seeds") or [None]

    out_dir = _out_dir(args)
    table_path = out_dir / str(data.get("table", "sweep.csv"))
    rows = []
    index = 0
    for hybrid in hybrid_sets:
        for sigma in sigmas:
            for seed in seeds:
                raw = dict(data["base"])
                if hybrid is not None:
                    raw["hybrid"] = hybrid
                raw = with_overrides(raw, sigma=sigma, seed=seed)
                raw = with_overrides(raw, sigma=args.sigma, seed=args.seed)
                row = {"index": index}
                try:
                    config = parse_config(raw)
                    row["set"] = config.hybrid.label
                    row["sampling_rate"] = f"{config.hybrid.sampling_rate:.6g}"
                    row["sigma"] = config.noise.sigma
                    row["seed"] = config.noise.seed
                    _, _, _, report = run_experiment(
                        config, out_dir, sweep_path.parent, write_files=False
                    )
                    row.update(
                        status="ok",
                        psnr_db=f"{report.psnr_db:.6g}",
                        ssim=f"{report.ssim:.6g}",
                        mse=f"{report.mse:.6g}",
                        significant_count=report.significant_count,
                        message="",
                    )
                except (HybridGIError, OSError) as exc:
                    row.setdefault("set", "")
                    row.setdefault("sampling_rate", "")
                    row.setdefault("sigma", "")
                    row.setdefault("seed", "")
                    row.update(
                        status="error",
                        psnr_db="",
                        ssim="",
                        mse="",
                        significant_count="",
                        message=str(exc),
                    )
                rows.append(row)
                index += 1

    fields = [
        "index", "set", "sampling_rate", "sigma", "seed",
        "status", "psnr_db", "ssim", "mse", "significant_count", "message",
    ]
    with open(table_path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    if not args.quiet:
        print(f"{len(rows)} runs -> {table_path}")
    return 0


def cmd_footprint(args) -> int:
    report = footprint_report(args.height, args.width)
    print(
        f"{report.one_d_matrix_entries:,} / {report.two_d_left_entries:,} "
        f"/ {report.two_d_right_entries:,}"
    )
    return 0


def cmd_demo_stripes(args) -> int:
    """Stripe-compression demo: bucket sparsity per hybridization set."""
    height, width = args.height, args.width
    target_sets = [("hadamard", "dct"), ("haar", "hadamard"), ("haar", "dct")]
    found = scenes.single_peak_stripe_search(height, width, target_sets)
    if not found:
        print("no stripe configuration compresses to a single bucket", file=sys.stderr)
        return EXIT_NUMERIC
    spec = found[0]
    scene = scenes.staggered_stripes(spec)
    print(
        f"object: {height}x{width} stripes period={spec.stripe_period} "
        f"orientation={spec.orientation.value} offset={spec.stagger_offset} "
        f"band={spec.band_size}"
    )
    all_sets = [
        ("hadamard", "dct"), ("hadamard", "haar"), ("dct", "hadamard"),
        ("dct", "haar"), ("haar", "hadamard"), ("haar", "dct"),
    ]
    for left_kind, right_kind in all_sets:
        spec2 = HybridSpec.pair(left_kind, height, right_kind, width)
        buckets = acquire(spec2, scene, NoiseModel(0.0, 0))
        count, positions = count_significant(buckets, 1e-6)
        where = f" at {positions[0]}" if count == 1 else ""
        print(f"{spec2.label}: significant={count}{where}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hybridgi",
        description="Hybrid-transform computational ghost imaging toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="experiment config JSON")
        p.add_argument("--out", help="output directory (default: cwd)")
        p.add_argument("--seed", type=int, help="override noise seed")
        p.add_argument("--sigma", type=float, help="override noise sigma")
        p.add_argument("--quiet", action="store_true", help="suppress summary output")

    for name, handler in (
        ("run", cmd_run),
        ("gen-object", cmd_gen_object),
        ("acquire", cmd_acquire),
        ("reconstruct", cmd_reconstruct),
        ("metrics", cmd_metrics),
        ("sweep", cmd_sweep),
    ):
        p = sub.add_parser(name)
        add_common(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("footprint")
    p.add_argument("height", type=int)
    p.add_argument("width", type=int)
    p.set_defaults(handler=cmd_footprint)

    p = sub.add_parser("demo-stripes")
    p.add_argument("--height", type=int, default=32)
    p.add_argument("--width", type=int, default=16)
    p.set_defaults(handler=cmd_demo_stripes)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ImageParseError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HybridGIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
