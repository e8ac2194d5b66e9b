"""Verdicts and the exhaustive table-identity sweep engine.

Every axiom/relation check in the library is phrased as "evaluate two integer
arrays over a full index grid and compare".  ``law_failures`` does that with
chunking (so worst-case grids never materialise more than ``chunk_cells``
elements at once), optional multithreading over the leading axis, and
lexicographically-first witness extraction.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = ["Failure", "Verdict", "open_grid", "law_failures", "run_laws"]

Law = Callable[..., tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class Failure:
    """One violated law: the label, the lexicographically-first witness tuple
    (indices in the law's own quantifier order), and the two values."""

    law: str
    witness: tuple[int, ...]
    detail: str = ""

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return f"{self.law} at {self.witness}: {self.detail}"


@dataclass(frozen=True)
class Verdict:
    passed: bool
    failures: tuple[Failure, ...] = ()
    checked: tuple[str, ...] = field(default_factory=tuple)

    @staticmethod
    def from_failures(failures: Sequence[Failure], checked: Sequence[str]) -> "Verdict":
        return Verdict(not failures, tuple(failures), tuple(checked))

    def merge(self, other: "Verdict") -> "Verdict":
        return Verdict(
            self.passed and other.passed,
            self.failures + other.failures,
            self.checked + other.checked,
        )

    def failed_laws(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for f in self.failures:
            seen.setdefault(f.law, None)
        return tuple(seen)

    def __bool__(self) -> bool:
        return self.passed


def open_grid(dims: Sequence[int]) -> tuple[np.ndarray, ...]:
    """Index arrays shaped for mutual broadcasting over the given dims."""
    k = len(dims)
    return tuple(
        np.arange(d).reshape((1,) * i + (-1,) + (1,) * (k - i - 1))
        for i, d in enumerate(dims)
    )


def _scan(
    label: str,
    law: Law,
    axis0: np.ndarray,
    tail: tuple[np.ndarray, ...],
    dims: tuple[int, ...],
    all_witnesses: bool,
) -> list[Failure]:
    lhs, rhs = law(axis0, *tail)
    sub = (axis0.size,) + dims[1:]
    neq = np.broadcast_to(np.asarray(lhs) != np.asarray(rhs), sub)
    if not neq.any():
        return []
    bad = np.argwhere(neq)  # C order == lexicographic
    if not all_witnesses:
        bad = bad[:1]
    lhs_b = np.broadcast_to(np.asarray(lhs), sub)
    rhs_b = np.broadcast_to(np.asarray(rhs), sub)
    out = []
    for b in bad:
        here = tuple(int(v) for v in b)
        witness = (int(axis0.ravel()[b[0]]),) + here[1:]
        out.append(
            Failure(label, witness, f"lhs={int(lhs_b[here])} rhs={int(rhs_b[here])}")
        )
    return out


def law_failures(
    label: str,
    dims: Sequence[int],
    law: Law,
    *,
    all_witnesses: bool = False,
    chunk_cells: int = 1 << 22,
    stride: int = 1,
    jobs: int = 1,
) -> list[Failure]:
    """Evaluate ``law`` over the full grid, return [] or the violations.

    ``stride > 1`` checks only every stride-th index of the leading axis
    (deterministic sampling for release-profile secondary routes).
    """
    dims = tuple(int(d) for d in dims)
    if prod(dims) == 0:
        return []
    if not dims:
        lhs, rhs = law()
        if int(lhs) != int(rhs):
            return [Failure(label, (), f"lhs={int(lhs)} rhs={int(rhs)}")]
        return []
    tail = open_grid(dims)[1:]
    d0 = dims[0]
    rest = prod(dims[1:])
    step = d0 if d0 * rest <= chunk_cells else max(1, chunk_cells // rest)
    shape0 = (-1,) + (1,) * (len(dims) - 1)
    starts = list(range(0, d0, step))

    def scan_range(start: int) -> list[Failure]:
        idx = np.arange(start, min(d0, start + step))
        if stride > 1:
            idx = idx[(idx % stride) == 0]
            if idx.size == 0:
                return []
        return _scan(label, law, idx.reshape(shape0), tail, dims, all_witnesses)

    if jobs > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_chunk = list(pool.map(scan_range, starts))
    else:
        per_chunk = []
        for s in starts:
            found = scan_range(s)
            per_chunk.append(found)
            if found and not all_witnesses:
                break
    failures = [f for chunk in per_chunk for f in chunk]
    if failures and not all_witnesses:
        failures = [min(failures, key=lambda f: f.witness)]
    return failures


def run_laws(
    laws: Iterable[tuple[str, Sequence[int], Law]],
    *,
    all_witnesses: bool = False,
    stride: int = 1,
    jobs: int = 1,
) -> Verdict:
    """Run a batch of laws and fold the results into one Verdict."""
    failures: list[Failure] = []
    checked: list[str] = []
    for label, dims, law in laws:
        checked.append(label)
        failures.extend(
            law_failures(
                label, dims, law, all_witnesses=all_witnesses, stride=stride, jobs=jobs
            )
        )
    return Verdict.from_failures(failures, checked)
