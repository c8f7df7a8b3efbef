"""Instance generation under five value distributions, plus file I/O.

Coalition values are drawn per coalition as a function of its cardinality:

    U    v(C) ~ U(0, 1)
    US   v(C) ~ |C| * U(0, 1)
    N    v(C) ~ Normal(1, 0.1^2)
    NS   v(C) ~ |C| * Normal(1, 0.1^2)
    ND   v(C) ~ Normal(|C|, |C|)

Negative draws (possible for the normal families) are clamped to zero,
which keeps tables non-negative without disturbing the stream position.
Tables are filled in ascending coalition-index order from one SplitMix64
stream, so (n, kind, seed) reproduces an instance bit-for-bit.
"""

from __future__ import annotations

import math
from typing import IO, Iterator

from .core import Instance
from .prng import SplitMix64

__all__ = [
    "DISTRIBUTIONS",
    "MAX_AGENTS",
    "InstanceFormatError",
    "sample_value",
    "generate_instance",
    "write_instance",
    "read_instance",
]

DISTRIBUTIONS = ("U", "US", "N", "NS", "ND")

# the dense table is 2**n - 1 doubles; past ~26 agents it no longer fits RAM
MAX_AGENTS = 26

MAGIC = "CSG1"


class InstanceFormatError(ValueError):
    """Malformed instance file; the message carries the offending line number."""


def sample_value(kind: str, size: int, rng: SplitMix64) -> float:
    """One coalition value for a coalition of the given cardinality."""
    if size < 1:
        raise ValueError("coalition cardinality must be >= 1")
    if kind == "U":
        draw = rng.uniform()
    elif kind == "US":
        draw = size * rng.uniform()
    elif kind == "N":
        draw = rng.normal(1.0, 0.1)
    elif kind == "NS":
        draw = size * rng.normal(1.0, 0.1)
    elif kind == "ND":
        draw = rng.normal(float(size), math.sqrt(size))
    else:
        raise ValueError(f"unknown distribution kind {kind!r}")
    return draw if draw > 0.0 else 0.0


def generate_instance(n: int, kind: str, seed: int) -> Instance:
    """Deterministic instance of n agents under the given distribution."""
    if not 1 <= n <= MAX_AGENTS:
        raise ValueError(f"n={n} out of supported range 1..{MAX_AGENTS}")
    if kind not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution kind {kind!r}")
    rng = SplitMix64(seed)
    values = [
        sample_value(kind, idx.bit_count(), rng) for idx in range(1, 1 << n)
    ]
    return Instance(n, values, dist=kind, seed=seed)


def write_instance(inst: Instance, sink) -> None:
    """Write the line-oriented text format; sink is a path or a text file."""
    if hasattr(sink, "write"):
        _write(inst, sink)
    else:
        with open(sink, "w", encoding="ascii") as fh:
            _write(inst, fh)


def _write(inst: Instance, fh: IO[str]) -> None:
    fh.write(f"{MAGIC}\n")
    fh.write(f"n {inst.n}\n")
    fh.write(f"dist {inst.dist}\n")
    fh.write(f"seed {inst.seed if inst.seed is not None else 'none'}\n")
    cf = inst.cf
    for idx in range(1, 1 << inst.n):
        # 17 significant digits round-trips any double exactly
        fh.write(f"{idx} {cf[idx]:.17g}\n")


def read_instance(source) -> Instance:
    """Parse an instance file, validating header, count, order and sign."""
    if hasattr(source, "read"):
        return _read(source)
    with open(source, "r", encoding="ascii") as fh:
        return _read(fh)


class _Cursor:
    """Non-blank lines of a text stream, tracking 1-based line numbers."""

    def __init__(self, fh: IO[str]):
        self._it: Iterator[tuple[int, str]] = (
            (no, line)
            for no, raw in enumerate(fh, start=1)
            if (line := raw.strip())
        )
        self.line_no = 0

    def take(self, what: str) -> tuple[int, str]:
        try:
            no, line = next(self._it)
        except StopIteration:
            raise InstanceFormatError(
                f"line {self.line_no + 1}: missing {what}"
            ) from None
        self.line_no = no
        return no, line

    def at_end(self) -> bool:
        try:
            no, line = next(self._it)
        except StopIteration:
            return True
        raise InstanceFormatError(f"line {no}: trailing content {line!r}")


def _read(fh: IO[str]) -> Instance:
    cur = _Cursor(fh)

    no, line = cur.take("magic header")
    if line != MAGIC:
        raise InstanceFormatError(f"line {no}: expected magic {MAGIC!r}, got {line!r}")

    no, line = cur.take("agent count")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n":
        raise InstanceFormatError(f"line {no}: expected 'n <int>', got {line!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise InstanceFormatError(f"line {no}: bad agent count {parts[1]!r}") from None
    if not 1 <= n <= MAX_AGENTS:
        raise InstanceFormatError(f"line {no}: n={n} out of range 1..{MAX_AGENTS}")

    no, line = cur.take("distribution tag")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "dist":
        raise InstanceFormatError(f"line {no}: expected 'dist <tag>', got {line!r}")
    dist = parts[1]
    if dist != "custom" and dist not in DISTRIBUTIONS:
        raise InstanceFormatError(f"line {no}: unknown distribution tag {dist!r}")

    no, line = cur.take("seed")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "seed":
        raise InstanceFormatError(f"line {no}: expected 'seed <uint64|none>', got {line!r}")
    if parts[1] == "none":
        seed = None
    else:
        try:
            seed = int(parts[1])
        except ValueError:
            raise InstanceFormatError(f"line {no}: bad seed {parts[1]!r}") from None

    count = (1 << n) - 1
    values = [0.0] * count
    for expected in range(1, count + 1):
        no, line = cur.take(
            f"value line: wrong value count ({count} expected, found {expected - 1})"
        )
        parts = line.split()
        if len(parts) != 2:
            raise InstanceFormatError(f"line {no}: expected '<index> <value>', got {line!r}")
        try:
            idx = int(parts[0])
            val = float(parts[1])
        except ValueError:
            raise InstanceFormatError(f"line {no}: cannot parse {line!r}") from None
        if idx != expected:
            raise InstanceFormatError(
                f"line {no}: coalition index {idx} out of order, expected {expected}"
            )
        if not math.isfinite(val):
            raise InstanceFormatError(f"line {no}: non-finite value {parts[1]!r}")
        if val < 0.0:
            raise InstanceFormatError(
                f"line {no}: negative value {val}; normalize before writing"
            )
        values[expected - 1] = val

    cur.at_end()
    return Instance(n, values, dist=dist, seed=seed)
