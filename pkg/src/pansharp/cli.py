"""``pansharp`` command-line interface.

Exit codes: 0 success, 1 I/O failure, 2 usage or validation failure.
Data goes to stdout or files; progress and diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from pansharp import __version__
from pansharp.bench import run_bench
from pansharp.errors import PansharpError, RasterFormatError
from pansharp.fusion import FusionJob, ihs_fuse
from pansharp.interpolation import InterpolatorKind, upscale
from pansharp.io import RasterFile, read_raster, stack_bands, write_raster
from pansharp.qa import reduced_reference_qa
from pansharp.raster import ImageGrid, MultibandImage
from pansharp.synth import GmrfParams, SceneParams, gen_gmrf, make_scene_pair

EXIT_OK, EXIT_IO, EXIT_USAGE = 0, 1, 2
INTERP_CHOICES = [k.value for k in InterpolatorKind]


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"pansharp: {msg}", file=sys.stderr)


def _load_ms(args) -> MultibandImage:
    band_flags = (args.ms_r, args.ms_g, args.ms_b)
    if args.ms and any(band_flags):
        raise UsageError("give either --ms or --ms-r/--ms-g/--ms-b, not both")
    if args.ms:
        img, _ = read_raster(args.ms, args.bit_depth)
        if not isinstance(img, MultibandImage):
            raise UsageError(f"{args.ms} is single-band; --ms needs an RGB raster")
        return img
    if not all(band_flags):
        missing = [f for f, v in zip(("--ms-r", "--ms-g", "--ms-b"), band_flags) if not v]
        raise UsageError(f"missing band flag(s): {', '.join(missing)}")
    return stack_bands(band_flags, ("Red", "Green", "Blue"), args.bit_depth)


def _load_grid(path, bit_depth) -> tuple[ImageGrid, RasterFile]:
    img, spec = read_raster(path, bit_depth)
    if not isinstance(img, ImageGrid):
        raise UsageError(f"{path} must be a single-band raster")
    return img, spec


def _parse_size(text: str) -> tuple[int, int]:
    try:
        h, w = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"--size must look like HxW, got {text!r}") from None
    if h < 32 or w < 32 or h % 2 or w % 2:
        raise UsageError(f"--size must be even and at least 32x32, got {h}x{w}")
    return h, w


def cmd_fuse(args) -> int:
    ms = _load_ms(args)
    pan, pan_spec = _load_grid(args.pan, args.bit_depth)
    job = FusionJob(ms, pan, InterpolatorKind.parse(args.interp), pan_match=args.pan_match)
    fused = ihs_fuse(job)
    out = RasterFile.for_path(args.out, bit_depth=args.out_bits, bands=3)
    if out.format == "TIFF":
        out = RasterFile(out.path, "TIFF", args.out_bits, 3, pan_spec.opaque_geo_metadata, pan_spec.byteorder)
    write_raster(fused, out)
    prov = fused.provenance
    print(f"interpolator={prov['interpolator']}")
    print(f"pan_match={str(prov['pan_match']).lower()}")
    print(f"ms_size={ms.shape[0]}x{ms.shape[1]}")
    print(f"output_size={fused.shape[0]}x{fused.shape[1]}")
    print(f"output={args.out}")
    return EXIT_OK


def cmd_qa(args) -> int:
    ms = _load_ms(args)
    fused, _ = read_raster(args.fused, args.bit_depth)
    if not isinstance(fused, MultibandImage):
        raise UsageError(f"{args.fused} must be an RGB raster")
    report = reduced_reference_qa(fused, ms)
    print(report.to_kv() if args.format == "kv" else report.to_table())
    return EXIT_OK


def cmd_interpolate(args) -> int:
    img, _ = read_raster(args.input, args.bit_depth)
    kind = InterpolatorKind.parse(args.interp)
    if isinstance(img, ImageGrid):
        result = upscale(img, kind, args.factor)
    else:
        result = MultibandImage(tuple((s, upscale(g, kind, args.factor)) for s, g in img))
    out = RasterFile.for_path(args.out, bit_depth=args.out_bits)
    write_raster(result, out)
    print(f"interpolator={kind.value}")
    print(f"output_size={args.factor * img.shape[0]}x{args.factor * img.shape[1]}")
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.params:
        params = SceneParams.from_text(Path(args.params).read_text())
    else:
        params = SceneParams(
            args.height, args.width, args.rho, args.sigma, args.edge_mix, args.n_edges, args.seed
        )
    if args.kind == "gmrf":
        grid = gen_gmrf(GmrfParams(params.height, params.width, params.rho, params.sigma, params.seed))
        write_raster(grid, RasterFile.for_path(args.out, bit_depth=args.out_bits))
        print(f"wrote {args.out}")
        return EXIT_OK
    out_dir = Path(args.out)
    if not out_dir.is_dir():
        raise FileNotFoundError(f"output directory {out_dir} does not exist")
    pair = make_scene_pair(params)
    files = {
        "reference.tif": pair.reference_rgb,
        "ms.tif": pair.ms_rgb,
        "pan.tif": pair.pan,
    }
    for name, image in files.items():
        write_raster(image, RasterFile(out_dir / name, "TIFF", args.out_bits))
    (out_dir / "scene.txt").write_text(params.to_text())
    for name in (*files, "scene.txt"):
        print(f"wrote {out_dir / name}")
    return EXIT_OK


def cmd_bench(args) -> int:
    h, w = _parse_size(args.size)
    if args.scenes < 1:
        raise UsageError(f"--scenes must be >= 1, got {args.scenes}")
    kinds = [InterpolatorKind.parse(k) for k in args.interps.split(",") if k.strip()]
    if not kinds:
        raise UsageError("--interps needs at least one interpolator")

    def progress(done, total):
        print(f"scene {done}/{total}", file=sys.stderr)

    result = run_bench(args.scenes, h, w, args.seed, kinds, args.edge_mix, args.n_edges, progress=progress)
    text = result.to_csv()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(result.summary(), file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def _add_ms_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ms", help="3-band RGB multispectral raster")
    p.add_argument("--ms-r", help="red band file (OLI B4)")
    p.add_argument("--ms-g", help="green band file (OLI B3)")
    p.add_argument("--ms-b", help="blue band file (OLI B2)")


def _add_depth_flags(p: argparse.ArgumentParser, inputs: bool = True) -> None:
    if inputs:
        p.add_argument("--bit-depth", type=int, choices=[8, 12, 16], help="radiometric depth of the inputs (default: container depth)")
    p.add_argument("--out-bits", type=int, choices=[8, 16], default=16, help="output sample depth (default 16)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pansharp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"pansharp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fuse", help="IHS pan-sharpen an MS triplet with a PAN band")
    _add_ms_flags(p)
    p.add_argument("--pan", required=True)
    p.add_argument("--interp", choices=INTERP_CHOICES, default="lmmse")
    p.add_argument("--pan-match", action="store_true", help="match PAN mean/std to the MS intensity")
    p.add_argument("--out", required=True)
    _add_depth_flags(p)
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("qa", help="reduced-reference SSIM of a fused image against its MS bands")
    p.add_argument("--fused", required=True)
    _add_ms_flags(p)
    p.add_argument("--format", choices=["table", "kv"], default="table")
    p.add_argument("--bit-depth", type=int, choices=[8, 12, 16])
    p.set_defaults(func=cmd_qa)

    p = sub.add_parser("interpolate", help="upsample a raster")
    p.add_argument("--input", required=True)
    p.add_argument("--interp", choices=INTERP_CHOICES, default="lmmse")
    p.add_argument("--factor", type=int, default=2)
    p.add_argument("--out", required=True)
    _add_depth_flags(p)
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("synth", help="write a synthetic GMRF field or MS/PAN scene")
    p.add_argument("--kind", choices=["gmrf", "scene"], default="gmrf")
    p.add_argument("--params", help="key=value scene file (overrides the flags below)")
    p.add_argument("--height", type=int, default=128)
    p.add_argument("--width", type=int, default=128)
    p.add_argument("--rho", type=float, default=0.9)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--edge-mix", type=float, default=0.5)
    p.add_argument("--n-edges", type=int, default=SceneParams.n_edges)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="file for gmrf, existing directory for scene")
    _add_depth_flags(p, inputs=False)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("bench", help="compare interpolators on seeded synthetic scenes")
    p.add_argument("--scenes", type=int, default=20)
    p.add_argument("--size", default="128x128", help="PAN size HxW (even, >= 32x32)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--interps", default="bilinear,cc,lmmse", help="comma-separated list of " + "|".join(INTERP_CHOICES))
    p.add_argument("--edge-mix", type=float, default=0.5)
    p.add_argument("--n-edges", type=int, default=SceneParams.n_edges)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        _err(str(exc))
        return EXIT_USAGE
    except RasterFormatError as exc:
        _err(str(exc))
        return EXIT_IO
    except PansharpError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _err(str(exc))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
