"""Request-sequence generators and the plain-text sequence file format.

File format: ASCII, whitespace-separated 1-based vertex ids (one per line
when written), with an optional header line ``# k=<k> n=<n>``.  Other lines
starting with ``#`` are comments.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import IO, Iterable

from ..core.bits import RandomSource
from ..core.errors import InvalidInputError

HEADER = re.compile(r"^#\s*k\s*=\s*(\d+)\s+n\s*=\s*(\d+)\s*$")

KINDS = ("uniform", "cyclic", "altpairs", "complement")


def uniform(n: int, length: int, seed: int = 0) -> list[int]:
    rng = RandomSource(seed)
    return [1 + rng.randbelow(n) for _ in range(length)]


def cyclic(n: int, length: int, start: int = 1) -> list[int]:
    """``1..n`` repeating, entered at vertex ``start``."""
    return [1 + (start - 1 + i) % n for i in range(length)]


def complement(k: int, length: int) -> list[int]:
    """Alternate blocks ``k+1..2k`` and ``1..k``; every marking phase is all-clean."""
    block = list(range(k + 1, 2 * k + 1)) + list(range(1, k + 1))
    return [block[i % len(block)] for i in range(length)]


ALTPAIRS_BLOCK = (3, 4, 1, 2, 4, 3, 2, 1)


def altpairs(length: int) -> list[int]:
    """The k=2, n=4 instance: 3, 4, 1, 2, 4, 3, 2, 1 repeating.

    Every marking phase is all-clean (cost 2), and each phase opens on the
    vertex that closed the phase two back, so an off-line server pair can
    shadow it at cost 1 per phase.  Plain ``3, 4, 1, 2`` repetition would let
    the optimum pay about 4/3 per phase instead.
    """
    return [ALTPAIRS_BLOCK[i % 8] for i in range(length)]


def generate(kind: str, k: int, n: int, length: int, seed: int = 0, param: int | None = None) -> list[int]:
    if length < 0:
        raise ValueError("length must be >= 0")
    if kind == "uniform":
        return uniform(n, length, seed)
    if kind == "cyclic":
        period = n if param is None else param
        if not 1 <= period <= n:
            raise ValueError(f"cycle length {period} outside 1..{n}")
        # enter the cycle at the first vertex the default cache {1..k} misses,
        # so with period k+1 every request faults for LRU and FIFO
        return cyclic(period, length, start=k + 1 if period > k else 1)
    if kind == "altpairs":
        if (k, n) != (2, 4):
            raise ValueError("altpairs is the k=2, n=4 instance; use 'complement' for other k")
        return altpairs(length)
    if kind == "complement":
        if n < 2 * k:
            raise ValueError(f"complement needs n >= 2k, got k={k}, n={n}")
        return complement(k, length)
    raise ValueError(f"unknown generator kind {kind!r}; choose from {', '.join(KINDS)}")


def parse_sequence(text: str) -> tuple[list[int], tuple[int, int] | None]:
    header = None
    out: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line.startswith("#"):
            m = HEADER.match(line)
            if m:
                header = (int(m.group(1)), int(m.group(2)))
            continue
        for tok in line.split():
            try:
                out.append(int(tok))
            except ValueError:
                raise InvalidInputError(f"line {lineno}: {tok!r} is not a vertex id") from None
    if header is not None:
        k, n = header
        for i, r in enumerate(out):
            if not 1 <= r <= n:
                raise InvalidInputError(f"request #{i + 1} = {r} outside [1, {n}] declared by header")
    return out, header


def read_sequence(path: str | Path) -> tuple[list[int], tuple[int, int] | None]:
    return parse_sequence(Path(path).read_text())


def write_sequence(fh: IO[str], requests: Iterable[int], k: int | None = None, n: int | None = None) -> None:
    if k is not None and n is not None:
        fh.write(f"# k={k} n={n}\n")
    for r in requests:
        fh.write(f"{r}\n")
