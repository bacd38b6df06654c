"""Exhaustive search for Euler bricks and perfect cuboids with bounded edges.

Only primitive edge triples ``w1 < w2 < w3`` (gcd 1) are reported. Sums of
two squares are filtered by their residues mod 16 and mod 9 before the exact
integer square-root test.
"""
from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

__all__ = [
    "CuboidCandidate",
    "SearchConfig",
    "RationalBoxPoint",
    "CSV_HEADER",
    "is_perfect_square",
    "passes_residue_filter",
    "search",
    "search_list",
    "brute_force",
    "write_csv",
    "candidates_to_csv",
    "run_search",
    "classify",
]

CSV_HEADER = ("w1", "w2", "w3", "d12", "d13", "d23", "space_diag", "mode")
MODES = ("euler", "perfect")

_SQUARES_MOD16 = frozenset({0, 1, 4, 9})
_SQUARES_MOD9 = frozenset({0, 1, 4, 7})
_OK16 = tuple(r in _SQUARES_MOD16 for r in range(16))
_OK9 = tuple(r in _SQUARES_MOD9 for r in range(9))


def is_perfect_square(n: int) -> int | None:
    """Integer square root of ``n`` if ``n`` is a perfect square, else None."""
    if n < 0:
        raise ValueError("negative input")
    r = math.isqrt(n)
    return r if r * r == n else None


def passes_residue_filter(n: int) -> bool:
    return _OK16[n & 15] and _OK9[n % 9]


def _root(n: int, prune: bool) -> int | None:
    if prune and not passes_residue_filter(n):
        return None
    return is_perfect_square(n)


@dataclass(frozen=True, order=True)
class CuboidCandidate:
    w1: int
    w2: int
    w3: int
    d12: int | None = None
    d13: int | None = None
    d23: int | None = None
    space_diag: int | None = None

    def __post_init__(self):
        if not 1 <= self.w1 <= self.w2 <= self.w3:
            raise ValueError(f"edges must satisfy 1 <= w1 <= w2 <= w3, got {self.edges}")
        checks = (
            (self.d12, self.w1**2 + self.w2**2),
            (self.d13, self.w1**2 + self.w3**2),
            (self.d23, self.w2**2 + self.w3**2),
            (self.space_diag, self.w1**2 + self.w2**2 + self.w3**2),
        )
        for diag, total in checks:
            if diag is not None and (diag <= 0 or diag * diag != total):
                raise ValueError(f"diagonal {diag} does not match {total} for edges {self.edges}")

    @property
    def edges(self) -> tuple[int, int, int]:
        return (self.w1, self.w2, self.w3)

    @property
    def is_euler_brick(self) -> bool:
        return None not in (self.d12, self.d13, self.d23)

    @property
    def is_perfect(self) -> bool:
        return self.is_euler_brick and self.space_diag is not None

    def csv_row(self, mode: str) -> list[str]:
        cells = (self.w1, self.w2, self.w3, self.d12, self.d13, self.d23, self.space_diag)
        return ["" if c is None else str(c) for c in cells] + [mode]


@dataclass(frozen=True)
class SearchConfig:
    max_edge: int
    mode: str = "euler"
    worker_count: int = 1
    output_path: str | None = None

    def __post_init__(self):
        if self.max_edge < 1:
            raise ValueError("max_edge must be at least 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.worker_count < 1:
            raise ValueError("worker_count must be at least 1")


def _search_w1(w1: int, max_edge: int, mode: str, prune: bool = True) -> list[CuboidCandidate]:
    sq1 = w1 * w1
    partners = []
    for b in range(w1 + 1, max_edge + 1):
        d = _root(sq1 + b * b, prune)
        if d is not None:
            partners.append((b, d))
    found = []
    for i, (w2, d12) in enumerate(partners):
        sq2 = w2 * w2
        for w3, d13 in partners[i + 1 :]:
            if math.gcd(w1, w2, w3) != 1:
                continue
            d23 = _root(sq2 + w3 * w3, prune)
            if d23 is None:
                continue
            total = sq1 + sq2 + w3 * w3
            space = _root(total, prune) if mode == "perfect" else is_perfect_square(total)
            if mode == "perfect" and space is None:
                continue
            found.append(CuboidCandidate(w1, w2, w3, d12, d13, d23, space))
    return found


def _search_chunk(args: tuple[int, int, int, str]) -> list[CuboidCandidate]:
    lo, hi, max_edge, mode = args
    out = []
    for w1 in range(lo, hi):
        out.extend(_search_w1(w1, max_edge, mode))
    return out


def _chunks(max_edge: int, size: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + size, max_edge + 1)) for lo in range(1, max_edge + 1, size)]


def search(cfg: SearchConfig) -> Iterator[CuboidCandidate]:
    """Yield primitive candidates in lexicographic ``(w1, w2, w3)`` order.

    With several workers the ``w1`` range is cut into small chunks handed out
    on demand (small ``w1`` carry most of the work); chunk results are merged
    back in order, so the output does not depend on ``worker_count``.
    """
    size = max(1, min(16, cfg.max_edge // (8 * cfg.worker_count) or 1))
    jobs = [(lo, hi, cfg.max_edge, cfg.mode) for lo, hi in _chunks(cfg.max_edge, size)]
    if cfg.worker_count == 1:
        for job in jobs:
            yield from sorted(_search_chunk(job))
        return
    with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
        for batch in pool.map(_search_chunk, jobs):
            yield from sorted(batch)


def search_list(max_edge: int, mode: str = "euler", workers: int = 1) -> list[CuboidCandidate]:
    return list(search(SearchConfig(max_edge, mode, workers)))


def brute_force(max_edge: int, mode: str = "euler") -> list[CuboidCandidate]:
    """Unfiltered reference search: every ordered triple, exact square tests only."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    out = []
    for w1 in range(1, max_edge + 1):
        for w2 in range(w1, max_edge + 1):
            d12 = is_perfect_square(w1 * w1 + w2 * w2)
            if d12 is None:
                continue
            for w3 in range(w2, max_edge + 1):
                d13 = is_perfect_square(w1 * w1 + w3 * w3)
                d23 = is_perfect_square(w2 * w2 + w3 * w3)
                if d13 is None or d23 is None or math.gcd(w1, w2, w3) != 1:
                    continue
                space = is_perfect_square(w1 * w1 + w2 * w2 + w3 * w3)
                if mode == "perfect" and space is None:
                    continue
                out.append(CuboidCandidate(w1, w2, w3, d12, d13, d23, space))
    return out


def candidates_to_csv(candidates: Iterable[CuboidCandidate], mode: str) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for cand in candidates:
        writer.writerow(cand.csv_row(mode))
    return buf.getvalue()


def write_csv(candidates: Iterable[CuboidCandidate], path: str, mode: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(candidates_to_csv(candidates, mode))


def run_search(cfg: SearchConfig, timing: bool = True) -> tuple[list[CuboidCandidate], dict]:
    """Run the search, write the CSV if requested, and return the JSON summary."""
    start = time.perf_counter()
    found = list(search(cfg))
    if cfg.output_path:
        write_csv(found, cfg.output_path, cfg.mode)
    summary = {"max_edge": cfg.max_edge, "mode": cfg.mode, "primitive_count": len(found)}
    if timing:
        summary["elapsed_ms"] = int((time.perf_counter() - start) * 1000)
    return found, summary


@dataclass(frozen=True)
class RationalBoxPoint:
    """Rational point of the box variety in the order ``Z1, Z2, Z3, W1, W2, W3, C``."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != 7:
            raise ValueError("a box point has seven coordinates")
        if not any(coords):
            raise ValueError("all coordinates vanish")
        z1, z2, z3, w1, w2, w3, c = coords
        if (
            w1 * w1 + w2 * w2 != z3 * z3
            or w1 * w1 + w3 * w3 != z2 * z2
            or w2 * w2 + w3 * w3 != z1 * z1
            or w1 * w1 + w2 * w2 + w3 * w3 != c * c
        ):
            raise ValueError(f"{coords} does not satisfy the box relations")

    @classmethod
    def from_cuboid(cls, w1: int, w2: int, w3: int) -> "RationalBoxPoint":
        """Edges ``W_i``; fails unless all face diagonals and the space diagonal are integral."""
        roots = [is_perfect_square(n) for n in (w2 * w2 + w3 * w3, w1 * w1 + w3 * w3, w1 * w1 + w2 * w2, w1 * w1 + w2 * w2 + w3 * w3)]
        if None in roots:
            raise ValueError(f"({w1}, {w2}, {w3}) has an irrational diagonal")
        z1, z2, z3, c = roots
        return cls((z1, z2, z3, w1, w2, w3, c))


def classify(p: RationalBoxPoint) -> str:
    """``trivial`` when some coordinate vanishes, ``nontrivial`` otherwise."""
    return "trivial" if any(c == 0 for c in p.coords) else "nontrivial"
