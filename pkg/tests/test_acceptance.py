"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (lines appear in the terminal even with capture on), or
directly with ``python3 tests/test_acceptance.py`` for just the summary.
"""

import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest
import tifffile

sys.path.insert(0, str(Path(__file__).parent))

from oracles import naive_lmmse_2x  # noqa: E402
from pansharp.bench import run_bench  # noqa: E402
from pansharp.cli import main as cli_main  # noqa: E402
from pansharp.colorspace import hsv_to_rgb_planes, rgb_to_hsv_planes  # noqa: E402
from pansharp.fusion import FusionJob, ihs_fuse  # noqa: E402
from pansharp.interpolation import (  # noqa: E402
    InterpolatorKind,
    available_backends,
    cc_kernel,
    diagonal_variances,
    lmmse_weights,
    upscale2x_lmmse,
)
from pansharp.io import geo_tag_bytes, read_codes, read_raster, write_raster  # noqa: E402
from pansharp.qa import global_ssim, reduced_reference_qa, similarity_percent  # noqa: E402
from pansharp.raster import MultibandImage  # noqa: E402


def c1_similarity_mapping():
    a, b = similarity_percent(0.6948), similarity_percent(0.5755)
    return abs(a - 84.74) <= 0.01 and abs(b - 78.77) <= 0.01, f"{a:.4f}, {b:.4f}"


def c2_lmmse_oracle():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(100):
        h, w = rng.integers(4, 17, size=2)
        g = rng.random((h, w))
        ref = np.array(naive_lmmse_2x(g.tolist()))
        for backend in available_backends():
            worst = max(worst, float(np.max(np.abs(upscale2x_lmmse(g, backend=backend).data - ref))))
    return worst <= 1e-12, f"max |d| = {worst:.3g} over backends {', '.join(available_backends())}"


def c3_weight_law():
    rng = np.random.default_rng(3)
    pairs = rng.exponential(0.05, size=(10_000, 2))
    pairs[::7, 0] = 0.0
    pairs[3::11, 1] = 0.0
    worst = max(abs(sum(lmmse_weights(a, b)) - 1.0) for a, b in pairs)
    zero_ok = all(
        lmmse_weights(0.0, v) == (1.0, 0.0) and lmmse_weights(v, 0.0) == (0.0, 1.0)
        for v in pairs[:, 1]
        if v > 1e-12
    )
    equal_ok = all(lmmse_weights(v, v) == (0.5, 0.5) for v in pairs[:, 0])
    mid_ok = diagonal_variances(0.0, 1.0, 1.0, 0.0).value == 0.5
    ok = worst <= 1e-12 and zero_ok and equal_ok and mid_ok
    return ok, f"sum error {worst:.1e}, zero={zero_ok}, equal={equal_ok}, midpoint={mid_ok}"


def c4_ssim_axioms():
    rng = np.random.default_rng(4)
    worst_self = worst_sym = 0.0
    in_range = True
    for k in range(1000):
        shape = tuple(rng.integers(2, 12, size=2))
        x, y = rng.random(shape), rng.random(shape)
        if k % 10 == 0:
            x = np.full(shape, rng.random())
        if k % 15 == 0:
            y = np.full(shape, rng.random())
        worst_self = max(worst_self, abs(global_ssim(x, x) - 1.0))
        s, t = global_ssim(x, y), global_ssim(y, x)
        worst_sym = max(worst_sym, abs(s - t))
        in_range &= -1.0 <= s <= 1.0
    ok = worst_self <= 1e-12 and worst_sym <= 1e-12 and in_range
    return ok, f"self {worst_self:.1e}, symmetry {worst_sym:.1e}, in range {in_range}"


def c5_comparative():
    kinds = [InterpolatorKind.BILINEAR, InterpolatorKind.CUBIC_CONVOLUTION, InterpolatorKind.LMMSE]
    agg = run_bench(20, 128, 128, seed=0, interps=kinds, edge_mix=0.5).aggregate
    bil, cc, lm = (agg[k] for k in kinds)
    ok = lm > cc > bil
    detail = (
        f"bilinear {bil:.6f}, cc {cc:.6f}, lmmse {lm:.6f}; "
        f"lmmse-cc {lm - cc:+.2e}, cc-bilinear {cc - bil:+.2e}"
    )
    return ok, detail


def c6_pipeline_consistency():
    rng = np.random.default_rng(6)
    ms = rng.uniform(0.05, 0.95, size=(3, 32, 32))
    _, _, intensity = rgb_to_hsv_planes(*ms)
    pan = rng.random((64, 64))
    pan[0::2, 0::2] = intensity
    ms_img = MultibandImage.rgb(*ms)
    report = reduced_reference_qa(ihs_fuse(FusionJob(ms_img, pan, InterpolatorKind.LMMSE)), ms_img)
    worst = min(report.per_band.values())
    return worst >= 0.999, f"min per-band SSIM {worst:.12f}"


def c7_colour_round_trip():
    rgb = np.random.default_rng(7).random((3, 100_000))
    back = np.stack(hsv_to_rgb_planes(*rgb_to_hsv_planes(*rgb)))
    worst = float(np.max(np.abs(back - rgb)))
    return worst <= 1e-9, f"max |d| = {worst:.2e}"


def c8_io_lossless():
    codes = np.random.default_rng(8).integers(0, 65536, size=(40, 30)).astype(np.uint16)
    geo = [
        (33550, "d", 3, (15.0, 15.0, 0.0), True),
        (33922, "d", 6, (0.0, 0.0, 0.0, 399000.0, 4400000.0, 0.0), True),
        (34735, "H", 8, (1, 1, 0, 1, 1024, 0, 1, 1), True),
    ]
    with tempfile.TemporaryDirectory() as tmp:
        src, dst = Path(tmp) / "src.tif", Path(tmp) / "dst.tif"
        tifffile.imwrite(src, codes, extratags=geo, photometric="minisblack")
        img, spec = read_raster(src)
        write_raster(img, type(spec)(dst, "TIFF", 16, 1, spec.opaque_geo_metadata, spec.byteorder))
        back, spec2 = read_codes(dst)
    codes_ok = np.array_equal(back, codes)
    before, after = geo_tag_bytes(spec.opaque_geo_metadata), geo_tag_bytes(spec2.opaque_geo_metadata)
    geo_ok = before == after and len(before) == 3
    return codes_ok and geo_ok, f"codes exact {codes_ok}, geo tags identical {geo_ok}"


def c9_kernel_spots():
    vals = (cc_kernel(0.0), cc_kernel(1.0), cc_kernel(0.5, -0.5))
    return vals == (1.0, 0.0, 0.5625), f"{vals}"


def c10_bench_determinism():
    with tempfile.TemporaryDirectory() as tmp:
        outs = [Path(tmp) / f"run{k}.csv" for k in (1, 2)]
        codes = [
            cli_main(["bench", "--scenes", "20", "--seed", "0", "--out", str(out)]) for out in outs
        ]
        same = outs[0].read_bytes() == outs[1].read_bytes()
        rows = len(outs[0].read_text().splitlines()) - 1
    return codes == [0, 0] and same, f"exit codes {codes}, {rows} rows, identical {same}"


CRITERIA = [
    (1, "similarity mapping", c1_similarity_mapping),
    (2, "LMMSE oracle equivalence", c2_lmmse_oracle),
    (3, "weight law", c3_weight_law),
    (4, "SSIM axioms", c4_ssim_axioms),
    (5, "LMMSE > CC > bilinear on edge-rich scenes", c5_comparative),
    (6, "pipeline consistency", c6_pipeline_consistency),
    (7, "colour round trip", c7_colour_round_trip),
    (8, "I/O losslessness", c8_io_lossless),
    (9, "kernel spot values", c9_kernel_spots),
    (10, "bench determinism", c10_bench_determinism),
]


def run_one(number, name, check):
    t0 = time.perf_counter()
    ok, detail = check()
    status = "PASS" if ok else "FAIL"
    return ok, f"[{status}] criterion {number:>2} {name}: {detail} ({time.perf_counter() - t0:.2f}s)"


@pytest.mark.parametrize("number, name, check", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(number, name, check, capsys):
    ok, line = run_one(number, name, check)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_one(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
