"""
Flags whose `dest` is a dotted settings key ("train.steps") become config
overrides; everything else is a plain argument of the subcommand.
"""

from argparse import Namespace
from contextlib import nullcontext
from pathlib import Path
from typing import Any, Mapping, Sequence

from std2.argparse import ArgParser
from std2.configparser import hydrate

from ..shared.settings import HoldoutCrop

def _common(parser: ArgParser) -> None:
    parser.add_argument("--config", type=Path)
    parser.add_argument("--seed", type=int)


def _file_or_dir(parser: ArgParser) -> None:
    parser.add_argument("--image", type=Path)
    parser.add_argument("--mask", type=Path)
    parser.add_argument("--out", type=Path)
    parser.add_argument("--image-dir", type=Path)
    parser.add_argument("--mask-dir", type=Path)
    parser.add_argument("--out-dir", type=Path)


def parse_args(argv: Sequence[str]) -> Namespace:
    parser = ArgParser(prog="matteforge")
    sub_parsers = parser.add_subparsers(dest="command", required=True)

    with nullcontext(sub_parsers.add_parser("synth")) as p:
        _common(p)
        p.add_argument("--fg-dir", type=Path)
        p.add_argument("--bg-dir", type=Path)
        p.add_argument("--out", type=Path)
        p.add_argument("--procedural", type=int, metavar="N")
        p.add_argument("--procedural-size", type=int, default=512)
        p.add_argument("--workers", dest="synth.workers", type=int)
        p.add_argument(
            "--no-reject", dest="synth.reject", action="store_const", const=False
        )
        p.add_argument(
            "--test-crop",
            dest="synth.test_crop",
            choices=tuple(crop.name for crop in HoldoutCrop),
        )
        p.add_argument("--trimap-kernel", dest="synth.trimap_kernel", type=int)
        p.add_argument("--trimap-repeats", dest="synth.trimap_repeats", type=int)

    with nullcontext(sub_parsers.add_parser("train")) as p:
        _common(p)
        p.add_argument("--dataset", type=Path)
        p.add_argument("--out", type=Path)
        p.add_argument("--resume", type=Path)
        p.add_argument("--steps", dest="train.steps", type=int)
        p.add_argument("--batch-size", dest="train.batch_size", type=int)
        p.add_argument("--checkpoint-every", dest="train.checkpoint_every", type=int)
        p.add_argument("--device", dest="train.device")

    with nullcontext(sub_parsers.add_parser("infer")) as p:
        _common(p)
        _file_or_dir(p)
        p.add_argument("--checkpoint", type=Path)
        p.add_argument("--device", dest="train.device")

    with nullcontext(sub_parsers.add_parser("gf")) as p:
        _common(p)
        _file_or_dir(p)
        p.add_argument("--radius", dest="guided_filter.radius", type=int)
        p.add_argument("--eps", dest="guided_filter.eps", type=float)
        p.add_argument("--subsample", dest="guided_filter.subsample", type=int)

    with nullcontext(sub_parsers.add_parser("eval")) as p:
        _common(p)
        p.add_argument("--pred-dir", type=Path, required=True)
        p.add_argument("--gt-dir", type=Path, required=True)
        p.add_argument("--trimap-dir", type=Path, required=True)
        p.add_argument("--out", type=Path)
        p.add_argument("--workers", dest="eval.workers", type=int)

    with nullcontext(sub_parsers.add_parser("gabor-dump")) as p:
        _common(p)
        p.add_argument("--out", type=Path)

    with nullcontext(sub_parsers.add_parser("bench")) as p:
        _common(p)
        p.add_argument("--checkpoint", type=Path)
        p.add_argument("--out", type=Path)
        p.add_argument("--batch-sizes", dest="bench.batch_sizes", type=int, nargs="+")
        p.add_argument("--repeats", dest="bench.repeats", type=int)
        p.add_argument("--warmup", dest="bench.warmup", type=int)
        p.add_argument("--device", dest="bench.device")

    return parser.parse_args(argv)


def overrides(ns: Namespace) -> Mapping[str, Any]:
    flags = {k: v for k, v in vars(ns).items() if "." in k and v is not None}
    seed = {"seed": ns.seed} if ns.seed is not None else {}
    return {**hydrate(flags), **seed}
