"""Command-line front end.

Exit codes: 0 success, 2 usage or I/O error, 3 chaotic divergence.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bitplane, imageio, metrics, pipeline, randomness
from .errors import DivergenceError, MpcsError

EXIT_USAGE = 2
EXIT_DIVERGENCE = 3


def _read_key(path):
    with open(path, encoding="utf-8") as f:
        return pipeline.load_key(f.read())


def _rgb_row(name, values, fmt="{:.4f}"):
    return name + " " + " ".join(f"{c}={fmt.format(v)}" for c, v in zip("RGB", values))


def cmd_encrypt(args):
    img = imageio.load(args.input)
    key = _read_key(args.key)
    ct = pipeline.encrypt(img, key)
    with open(args.output, "wb") as f:
        f.write(pipeline.serialize(ct))
    if args.cipher_ppm:
        imageio.save(args.cipher_ppm, ct.image())
    counts = bitplane.transient_counts(ct.delta)
    print(
        f"delta={ct.delta} N_H={counts.henon} N_L={counts.lorenz} N_C={counts.chua} N_R={counts.rossler}",
        file=sys.stderr,
    )


def cmd_decrypt(args):
    with open(args.input, "rb") as f:
        ct = pipeline.parse(f.read())
    img = pipeline.decrypt(ct, _read_key(args.key))
    imageio.save(args.output, img)


def cmd_analyze(args):
    img = imageio.load(args.input)
    ref = imageio.load(args.ref) if args.ref else None
    sys.stdout.write(metrics.analyze(img, ref).format())


def cmd_avalanche(args):
    p1 = imageio.load(args.input)
    key = _read_key(args.key)
    m, n = p1.shape[:2]
    if args.pixel:
        try:
            x, y = (int(v) for v in args.pixel.split(","))
        except ValueError:
            raise MpcsError(f"--pixel expects 'x,y', got {args.pixel!r}") from None
    else:
        x, y = n // 2, m // 2
    if not (0 <= x < n and 0 <= y < m):
        raise MpcsError(f"pixel ({x}, {y}) outside the {n}x{m} image")
    p2 = p1.copy()
    p2[y, x] = 0
    c1 = pipeline.encrypt(p1, key).image()
    c2 = pipeline.encrypt(p2, key).image()
    lines = [f"pixel x={x} y={y}"]
    if np.array_equal(p1, p2):
        lines.append("note pixel already zero, plaintexts identical")
    lines += [
        _rgb_row("npcr(C1,C2)", metrics.npcr(c1, c2)),
        _rgb_row("uaci(C1,C2)", metrics.uaci(c1, c2)),
        _rgb_row("npcr(P1,C1)", metrics.npcr(p1, c1)),
        _rgb_row("uaci(P1,C1)", metrics.uaci(p1, c1)),
    ]
    print("\n".join(lines))


def cmd_nist(args):
    img = imageio.load(args.input)
    seqs = pipeline.binarized_sequences(img, _read_key(args.key))
    report = randomness.run_battery(seqs)
    sys.stdout.write(report.format())


def cmd_keygen(args):
    key = pipeline.KeyConfig() if args.default else pipeline.generate_key(args.seed)
    with open(args.output, "w", encoding="utf-8") as f:
        f.write(pipeline.dump_key(key))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mpcs", description="Multi-chaotic color image cipher toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encrypt", help="encrypt a PPM image into a container")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--cipher-ppm", help="also write the cipher image as PPM")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a container into a PPM image")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("analyze", help="statistical metrics of an image")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--ref", help="second image for NPCR/UACI")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("avalanche", help="one-pixel plaintext sensitivity experiment")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--pixel", help="x,y of the pixel to zero (default: image center)")
    p.set_defaults(func=cmd_avalanche)

    p = sub.add_parser("nist", help="randomness battery on the twelve keystream sequences")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--key", required=True)
    p.set_defaults(func=cmd_nist)

    p = sub.add_parser("keygen", help="write a key file")
    p.add_argument("--out", dest="output", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--seed", type=int, help="deterministic perturbation of the default key")
    group.add_argument("--default", action="store_true", help="write the built-in default key")
    p.set_defaults(func=cmd_keygen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except (MpcsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
