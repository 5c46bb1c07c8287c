"""Batch front end: walk an image corpus, augment or run diagnostics per file,
write PNG outputs plus a replayable newline-delimited JSON manifest.

Per-image seeds are derived from (global seed, relative path), so results are
byte-identical regardless of worker count or traversal order; `verify`
re-runs every manifest record and flags outputs whose bytes drifted.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import logging
import os
import struct
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image

from .augment import (
    AugmentConfig,
    RasterImage,
    hsda_augment,
    pick_channel,
    reconstruct_band,
    spectrum_visual,
)

__all__ = [
    "JobSpec",
    "JobSummary",
    "VerifyReport",
    "run_job",
    "verify_manifest",
    "derive_image_seed",
    "load_image",
    "encode_png",
    "main",
]

log = logging.getLogger("hsda.cli")

MODES = ("augment", "band-low", "band-high", "spectrum")
SUPPORTED_SUFFIXES = {".png", ".jpg", ".jpeg"}

_MASK64 = (1 << 64) - 1
_CHANNEL_FLAGS = {"random": None, "r": 0, "g": 1, "b": 2}


@dataclass(frozen=True)
class JobSpec:
    input_dir: Path
    output_dir: Path
    mode: str
    cfg: AugmentConfig = field(default_factory=AugmentConfig)
    workers: int = 1
    manifest_path: Path | None = None
    overwrite: bool = False
    resume: bool = False


@dataclass
class JobSummary:
    processed: int = 0
    skipped: int = 0
    failed: int = 0


def derive_image_seed(global_seed: int, rel_path: str) -> int:
    """Stable 64-bit per-image seed from the job seed and relative source path."""
    digest = hashlib.blake2b(digest_size=8)
    digest.update(struct.pack("<Q", global_seed & _MASK64))
    digest.update(rel_path.encode("utf-8"))
    return int.from_bytes(digest.digest(), "little")


def load_image(path: str | Path) -> RasterImage:
    """Decode a PNG/JPEG file; only 3-channel RGB content is accepted."""
    with Image.open(path) as img:
        if img.mode != "RGB":
            raise ValueError(f"{path}: expected RGB content, got mode {img.mode!r}")
        return RasterImage(np.asarray(img))


def encode_png(pixels: np.ndarray) -> bytes:
    """PNG bytes for an (H, W, 3) RGB or (H, W) grayscale uint8 array."""
    mode = "RGB" if pixels.ndim == 3 else "L"
    buf = io.BytesIO()
    Image.fromarray(pixels, mode).save(buf, format="PNG")
    return buf.getvalue()


def _render_bytes(image, mode, k, d_param, channel_policy, seed):
    """Produce the output PNG bytes and chosen channel for one source image."""
    if mode == "augment":
        cfg = AugmentConfig(k=k, d_param=d_param, channel_policy=channel_policy)
        out, record = hsda_augment(image, cfg, seed)
        return encode_png(out.pixels), record.channel
    if mode == "band-low":
        return encode_png(reconstruct_band(image, d_param, "low").pixels), None
    if mode == "band-high":
        return encode_png(reconstruct_band(image, d_param, "high").pixels), None
    if mode == "spectrum":
        channel = pick_channel(channel_policy, seed)
        return encode_png(spectrum_visual(image, channel)), channel
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class _Task:
    src_abs: str
    dst_abs: str
    rel_src: str
    rel_dst: str
    mode: str
    k: int
    d_param: float
    channel_policy: int | None
    seed_effective: int


def _process_task(task: _Task) -> dict:
    """Worker body: decode, render, write atomically. Failures are returned,
    not raised, so the pool keeps draining."""
    try:
        image = load_image(task.src_abs)
        payload, channel = _render_bytes(
            image, task.mode, task.k, task.d_param, task.channel_policy, task.seed_effective
        )
        dst = Path(task.dst_abs)
        dst.parent.mkdir(parents=True, exist_ok=True)
        tmp = dst.with_name(dst.name + ".tmp")
        tmp.write_bytes(payload)
        os.replace(tmp, dst)
        return {
            "ok": True,
            "src": task.rel_src,
            "dst": task.rel_dst,
            "channel": channel,
            "seed_effective": task.seed_effective,
            "sha256_dst": hashlib.sha256(payload).hexdigest(),
        }
    except Exception as exc:
        return {"ok": False, "src": task.rel_src, "error": f"{type(exc).__name__}: {exc}"}


def _manifest_line(record: dict) -> str:
    ordered = {key: record[key] for key in ("src", "dst", "mode", "channel", "k", "d", "seed_effective", "sha256_dst")}
    return json.dumps(ordered, ensure_ascii=False)


def run_job(job: JobSpec) -> JobSummary:
    """Process every supported image under the input root with the job's mode.

    Outputs mirror the input layout under the output root (always PNG); one
    manifest line is written per output, sorted by source path. Unreadable
    files are counted as failed, unsupported ones as skipped, and the job
    continues either way.
    """
    if job.mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {job.mode!r}")
    if job.workers < 1:
        raise ValueError(f"worker count must be at least 1, got {job.workers}")
    input_root = Path(job.input_dir)
    output_root = Path(job.output_dir)
    if not input_root.is_dir():
        raise ValueError(f"input directory does not exist: {input_root}")
    output_root.mkdir(parents=True, exist_ok=True)
    manifest_path = Path(job.manifest_path) if job.manifest_path else output_root / "manifest.ndjson"

    channel_needed = job.mode in ("augment", "spectrum")
    summary = JobSummary()
    tasks: list[_Task] = []
    reused: list[tuple[str, str, int]] = []
    dst_owner: dict[str, str] = {}

    rel_paths = sorted(
        p.relative_to(input_root).as_posix() for p in input_root.rglob("*") if p.is_file()
    )
    for rel_src in rel_paths:
        src_abs = input_root / rel_src
        if src_abs.suffix.lower() not in SUPPORTED_SUFFIXES:
            log.warning("skipping unsupported file: %s", rel_src)
            summary.skipped += 1
            continue
        rel_dst = str(Path(rel_src).with_suffix(".png").as_posix())
        if rel_dst in dst_owner:
            log.error("output collision: %s and %s both map to %s", dst_owner[rel_dst], rel_src, rel_dst)
            summary.failed += 1
            continue
        dst_owner[rel_dst] = rel_src
        seed_effective = derive_image_seed(job.cfg.seed, rel_src)
        dst_abs = output_root / rel_dst
        if dst_abs.exists() and not job.overwrite:
            if job.resume:
                reused.append((rel_src, rel_dst, seed_effective))
            else:
                log.error("output already exists (use --overwrite or --resume): %s", rel_dst)
                summary.failed += 1
            continue
        tasks.append(
            _Task(
                src_abs=str(src_abs),
                dst_abs=str(dst_abs),
                rel_src=rel_src,
                rel_dst=rel_dst,
                mode=job.mode,
                k=job.cfg.k,
                d_param=job.cfg.d_param,
                channel_policy=job.cfg.channel_policy,
                seed_effective=seed_effective,
            )
        )

    if job.workers == 1 or len(tasks) <= 1:
        results = [_process_task(task) for task in tasks]
    else:
        chunksize = max(1, len(tasks) // (job.workers * 8))
        with ProcessPoolExecutor(max_workers=job.workers) as pool:
            results = list(pool.map(_process_task, tasks, chunksize=chunksize))

    records: list[dict] = []
    for result in results:
        if not result["ok"]:
            log.error("failed: %s (%s)", result["src"], result["error"])
            summary.failed += 1
            continue
        summary.processed += 1
        records.append(
            {
                "src": result["src"],
                "dst": result["dst"],
                "mode": job.mode,
                "channel": result["channel"],
                "k": job.cfg.k,
                "d": job.cfg.d_param,
                "seed_effective": result["seed_effective"],
                "sha256_dst": result["sha256_dst"],
            }
        )
    for rel_src, rel_dst, seed_effective in reused:
        payload = (output_root / rel_dst).read_bytes()
        log.info("reusing existing output: %s", rel_dst)
        summary.processed += 1
        records.append(
            {
                "src": rel_src,
                "dst": rel_dst,
                "mode": job.mode,
                "channel": pick_channel(job.cfg.channel_policy, seed_effective) if channel_needed else None,
                "k": job.cfg.k,
                "d": job.cfg.d_param,
                "seed_effective": seed_effective,
                "sha256_dst": hashlib.sha256(payload).hexdigest(),
            }
        )

    records.sort(key=lambda r: (r["src"], r["dst"]))
    manifest_path.parent.mkdir(parents=True, exist_ok=True)
    with open(manifest_path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(_manifest_line(record) + "\n")

    log.info(
        "%s: processed=%d skipped=%d failed=%d (manifest: %s)",
        job.mode, summary.processed, summary.skipped, summary.failed, manifest_path,
    )
    return summary


@dataclass(frozen=True)
class VerifyResult:
    src: str
    dst: str
    status: str  # ok | mismatch | missing-source | missing-output | error
    detail: str = ""


@dataclass
class VerifyReport:
    results: list[VerifyResult]

    @property
    def passed(self) -> bool:
        return all(r.status == "ok" for r in self.results)


def verify_manifest(manifest_path: str | Path, input_root: str | Path, output_root: str | Path) -> VerifyReport:
    """Re-run every manifest record from its source and effective seed and
    report any output whose bytes differ. Missing files are reported
    per-record, never fatal."""
    input_root = Path(input_root)
    output_root = Path(output_root)
    results: list[VerifyResult] = []
    with open(manifest_path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                src = input_root / record["src"]
                dst = output_root / record["dst"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                results.append(VerifyResult("", "", "error", f"line {line_no}: unreadable record ({exc})"))
                continue
            if not src.is_file():
                results.append(VerifyResult(record["src"], record["dst"], "missing-source"))
                continue
            if not dst.is_file():
                results.append(VerifyResult(record["src"], record["dst"], "missing-output"))
                continue
            try:
                policy = record["channel"] if record["mode"] in ("augment", "spectrum") else None
                payload, _ = _render_bytes(
                    load_image(src), record["mode"], record["k"], record["d"], policy, record["seed_effective"]
                )
                replay_sha = hashlib.sha256(payload).hexdigest()
                disk_sha = hashlib.sha256(dst.read_bytes()).hexdigest()
            except Exception as exc:
                results.append(VerifyResult(record["src"], record["dst"], "error", f"{type(exc).__name__}: {exc}"))
                continue
            if replay_sha == disk_sha == record["sha256_dst"]:
                results.append(VerifyResult(record["src"], record["dst"], "ok"))
            else:
                results.append(
                    VerifyResult(
                        record["src"],
                        record["dst"],
                        "mismatch",
                        f"replay={replay_sha[:12]} disk={disk_sha[:12]} manifest={record['sha256_dst'][:12]}",
                    )
                )
    return VerifyReport(results)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hsda",
        description="High-frequency shuffle augmentation and frequency-band diagnostics for image corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="MODE")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input_dir", required=True, metavar="DIR", help="input image root")
    common.add_argument("--out", dest="output_dir", required=True, metavar="DIR", help="output root (created if absent)")
    common.add_argument("--k", type=int, default=2000, help="number of dominant high-band coefficients to shuffle")
    common.add_argument("--d", type=float, default=10.0, help="Gaussian cutoff parameter")
    common.add_argument("--seed", type=int, default=None, help="global seed (falls back to HSDA_SEED, then 0)")
    common.add_argument("--channel", choices=list(_CHANNEL_FLAGS), default="random", help="channel policy")
    common.add_argument("--workers", type=int, default=1, help="parallel worker count")
    common.add_argument("--manifest", type=Path, default=None, help="manifest path (default: OUT/manifest.ndjson)")
    common.add_argument("--overwrite", action="store_true", help="replace existing outputs")
    common.add_argument("--resume", action="store_true", help="keep existing outputs and fill in the rest")

    helps = {
        "augment": "shuffle the dominant high-band coefficients of one channel per image",
        "band-low": "keep only the Gaussian low band of every channel",
        "band-high": "keep only the Gaussian high band of every channel",
        "spectrum": "write a log-magnitude view of one channel's spectrum",
    }
    for mode in MODES:
        sub.add_parser(mode, parents=[common], help=helps[mode])

    verify = sub.add_parser("verify", help="replay a manifest and flag outputs whose bytes differ")
    verify.add_argument("--manifest", type=Path, required=True, help="manifest to verify")
    verify.add_argument("--in", dest="input_dir", required=True, metavar="DIR", help="input image root")
    verify.add_argument("--out", dest="output_dir", required=True, metavar="DIR", help="output root")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "verify":
            report = verify_manifest(args.manifest, args.input_dir, args.output_dir)
            for result in report.results:
                if result.status != "ok":
                    print(f"{result.status}: {result.src} -> {result.dst} {result.detail}".rstrip())
            bad = sum(1 for r in report.results if r.status != "ok")
            print(f"verify: {len(report.results) - bad}/{len(report.results)} records ok")
            return 0 if report.passed else 1

        seed = args.seed
        if seed is None:
            env = os.environ.get("HSDA_SEED")
            seed = int(env) if env is not None else 0
        cfg = AugmentConfig(
            k=args.k,
            d_param=args.d,
            channel_policy=_CHANNEL_FLAGS[args.channel],
            seed=seed,
        )
        job = JobSpec(
            input_dir=Path(args.input_dir),
            output_dir=Path(args.output_dir),
            mode=args.command,
            cfg=cfg,
            workers=args.workers,
            manifest_path=args.manifest,
            overwrite=args.overwrite,
            resume=args.resume,
        )
        summary = run_job(job)
        return 0 if summary.failed == 0 else 1
    except (ValueError, OSError) as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
