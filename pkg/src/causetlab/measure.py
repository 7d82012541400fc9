"""Exact-rational probability over a history space.

Weights are `fractions.Fraction` values, one per history, summing to exactly
1. Every comparison in the laboratory is an exact rational identity; there
is no tolerance anywhere, because the screening-off checks ARE equalities
and a tolerance would manufacture or mask violations.

Besides evaluation this module holds the Reichenbachian common cause
verdicts: the single-event common cause (screening on C and its complement
plus two statistical relevance inequalities) and common cause systems
(partitions whose cells all screen off, with cross-cell relevance).

Zero-probability conditioning: a screening condition whose conditioning
event has measure zero is vacuously satisfied; `zero_mode="strict"` reports
such cells in the verdict instead of passing them silently. Relevance
comparisons involving a zero-probability cell are skipped (the conditionals
are undefined).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .causet import _bits
from .errors import CapExceededError, NotAPartitionError, ZeroConditionError
from .histories import DomMap, Event, HistorySpace, full_specifications

ZERO = Fraction(0)


class MeasureTable:
    """Immutable exact-rational weight table over the histories of a space."""

    def __init__(self, space: HistorySpace, weights: Sequence[Fraction]):
        if len(weights) != space.size:
            raise ValueError("one weight per history required")
        weights = tuple(Fraction(w) for w in weights)
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        if sum(weights) != 1:
            raise ValueError(f"weights sum to {sum(weights)}, not 1")
        self.space = space
        self.weights = weights

    # -- constructors ------------------------------------------------------

    @classmethod
    def uniform(cls, space: HistorySpace) -> "MeasureTable":
        return cls(space, [Fraction(1, space.size)] * space.size)

    @classmethod
    def from_weights(cls, space: HistorySpace, table: Mapping[str, Fraction | str]) -> "MeasureTable":
        """Weights keyed by history value-strings; omitted histories get 0."""
        weights = [ZERO] * space.size
        for key, value in table.items():
            weights[space.history_from_key(key)] = Fraction(value)
        return cls(space, weights)

    @classmethod
    def random(cls, space: HistorySpace, seed: int | str, denominator_bound: int = 100) -> "MeasureTable":
        """Pseudo-random weights k_h / sum(k), k_h uniform on 0..bound; exact
        normalization, deterministic in the seed."""
        rng = random.Random(f"measure:{seed}")
        nums = [rng.randint(0, denominator_bound) for _ in range(space.size)]
        if not any(nums):
            nums[0] = 1
        total = sum(nums)
        return cls(space, [Fraction(k, total) for k in nums])

    @classmethod
    def perfectly_correlated(cls, space: HistorySpace) -> "MeasureTable":
        """Uniform over the constant histories: every element shows the same
        value, so spacelike-separated values are perfectly correlated."""
        weights = [ZERO] * space.size
        for v in range(space.q):
            h = sum(v * space.q ** i for i in range(space.causet.n))
            weights[h] = Fraction(1, space.q)
        return cls(space, weights)

    # -- evaluation ----------------------------------------------------------

    def prob(self, e: Event) -> Fraction:
        total = ZERO
        for h in _bits(e):
            total += self.weights[h]
        return total

    def cond_prob(self, e: Event, given: Event) -> Fraction:
        pg = self.prob(given)
        if pg == 0:
            raise ZeroConditionError("conditioning event has probability zero")
        return self.prob(e & given) / pg

    def support(self) -> Event:
        mask = 0
        for h, w in enumerate(self.weights):
            if w:
                mask |= 1 << h
        return mask

    def weight_strings(self) -> dict[str, str]:
        """Nonzero weights as "p/q" strings keyed by history string (for
        fingerprints and model files)."""
        return {
            self.space.history_key(h): str(w)
            for h, w in enumerate(self.weights)
            if w
        }


def is_correlated(m: MeasureTable, a: Event, b: Event) -> bool:
    """Strictly positively correlated: mu(A & B) > mu(A) mu(B), exactly."""
    return m.prob(a & b) > m.prob(a) * m.prob(b)


def screens_off(m: MeasureTable, a: Event, b: Event, c: Event) -> bool:
    """mu(A & B | C) = mu(A | C) mu(B | C), cross-multiplied so only products
    of plain measures are compared; vacuously true when mu(C) = 0."""
    pc = m.prob(c)
    if pc == 0:
        return True
    return m.prob(a & b & c) * pc == m.prob(a & c) * m.prob(b & c)


@dataclass(frozen=True)
class CommonCauseVerdict:
    qualifies: bool
    failed_conditions: tuple[str, ...]
    sides: dict[str, tuple[Fraction, Fraction]] = field(default_factory=dict)
    zero_screeners: tuple[str, ...] = ()

    def to_json(self, space: HistorySpace | None = None) -> dict:
        return {
            "qualifies": self.qualifies,
            "failed_conditions": list(self.failed_conditions),
            "sides": {k: [str(l), str(r)] for k, (l, r) in sorted(self.sides.items())},
            "zero_screeners": list(self.zero_screeners),
        }


def is_common_cause(
    m: MeasureTable,
    a: Event,
    b: Event,
    c: Event,
    relevance: str = "printed",
    zero_mode: str = "vacuous",
) -> CommonCauseVerdict:
    """Reichenbachian common cause verdict for a correlated pair.

    Conditions checked exactly: screening on C, screening on C^c, and the two
    relevance inequalities. `relevance="printed"` uses the intersection form
    mu(A & C) > mu(A & C^c); `relevance="conditional"` uses
    mu(A | C) > mu(A | C^c) (undefined sides fail). Both are exposed because
    the two readings genuinely differ and neither is privileged here.
    """
    failed: list[str] = []
    sides: dict[str, tuple[Fraction, Fraction]] = {}
    zero: list[str] = []
    pab, pa_pb = m.prob(a & b), m.prob(a) * m.prob(b)
    if not pab > pa_pb:
        failed.append("not-correlated")
        sides["not-correlated"] = (pab, pa_pb)
    comp = m.space.complement(c)
    for name, cell in (("screen-on-C", c), ("screen-on-C^c", comp)):
        pc = m.prob(cell)
        if pc == 0:
            if zero_mode == "strict":
                zero.append(name)
            continue
        lhs = m.prob(a & b & cell) / pc
        rhs = (m.prob(a & cell) / pc) * (m.prob(b & cell) / pc)
        if lhs != rhs:
            failed.append(name)
            sides[name] = (lhs, rhs)
    for name, ev in (("relevance-A", a), ("relevance-B", b)):
        if relevance == "printed":
            lhs, rhs = m.prob(ev & c), m.prob(ev & comp)
        else:
            pc, pcc = m.prob(c), m.prob(comp)
            if pc == 0 or pcc == 0:
                failed.append(name)
                sides[name] = (ZERO, ZERO)
                continue
            lhs, rhs = m.prob(ev & c) / pc, m.prob(ev & comp) / pcc
        if not lhs > rhs:
            failed.append(name)
            sides[name] = (lhs, rhs)
    return CommonCauseVerdict(not failed, tuple(failed), sides, tuple(zero))


@dataclass(frozen=True)
class CcsVerdict:
    qualifies: bool
    failure: dict | None = None
    zero_cells: tuple[int, ...] = ()

    def to_json(self) -> dict:
        failure = None
        if self.failure is not None:
            failure = {
                k: (str(v) if isinstance(v, Fraction) else v)
                for k, v in self.failure.items()
            }
        return {
            "qualifies": self.qualifies,
            "failure": failure,
            "zero_cells": list(self.zero_cells),
        }


def is_ccs(
    m: MeasureTable,
    a: Event,
    b: Event,
    partition: Sequence[Event],
    zero_mode: str = "vacuous",
) -> CcsVerdict:
    """Common-cause-system verdict: every cell screens off, and every ordered
    pair of positive cells satisfies the cross relevance inequality
    (mu(A|Ci) - mu(A|Cj)) (mu(B|Ci) - mu(B|Cj)) > 0.

    The partition must cover Omega with pairwise disjoint nonempty cells.
    Returns the first failing cell or pair as witness. Pairs with a
    zero-probability cell are skipped; screening over them is vacuous.
    """
    union = 0
    for cell in partition:
        if cell == 0:
            raise NotAPartitionError("partition cells must be nonempty")
        if union & cell:
            raise NotAPartitionError("partition cells overlap")
        union |= cell
    if union != m.space.omega:
        raise NotAPartitionError("partition does not cover the history space")

    pab, pa_pb = m.prob(a & b), m.prob(a) * m.prob(b)
    if not pab > pa_pb:
        return CcsVerdict(False, {"kind": "not-correlated", "lhs": pab, "rhs": pa_pb})

    probs = [m.prob(cell) for cell in partition]
    zero = tuple(i for i, p in enumerate(probs) if p == 0) if zero_mode == "strict" else ()
    for i, cell in enumerate(partition):
        if probs[i] == 0:
            continue
        lhs = m.prob(a & b & cell) * probs[i]
        rhs = m.prob(a & cell) * m.prob(b & cell)
        if lhs != rhs:
            return CcsVerdict(False, {
                "kind": "screening",
                "cell": i,
                "lhs": m.prob(a & b & cell) / probs[i],
                "rhs": m.prob(a & cell) * m.prob(b & cell) / probs[i] ** 2,
            }, zero)
    positive = [i for i, p in enumerate(probs) if p > 0]
    for i in positive:
        for j in positive:
            if i == j:
                continue
            da = m.prob(a & partition[i]) / probs[i] - m.prob(a & partition[j]) / probs[j]
            db = m.prob(b & partition[i]) / probs[i] - m.prob(b & partition[j]) / probs[j]
            if not da * db > 0:
                return CcsVerdict(False, {
                    "kind": "relevance",
                    "cells": (i, j),
                    "lhs": da * db,
                    "rhs": ZERO,
                }, zero)
    return CcsVerdict(True, None, zero)


def _set_partitions(size: int) -> Iterator[list[Event]]:
    """All set partitions of histories 0..size-1 as cell-mask lists, in
    restricted-growth-string order (deterministic; cells ordered by least
    member)."""
    rgs = [0] * size

    def rec(i: int, blocks: int) -> Iterator[list[Event]]:
        if i == size:
            cells = [0] * blocks
            for h, blk in enumerate(rgs):
                cells[blk] |= 1 << h
            yield cells
            return
        for blk in range(blocks + 1):
            rgs[i] = blk
            yield from rec(i + 1, max(blocks, blk + 1))

    if size:
        yield from rec(1, 1)


def find_ccs(
    m: MeasureTable,
    a: Event,
    b: Event,
    max_size: int,
    mode: str = "all",
    cap: int = 8,
    dom: DomMap | None = None,
    zero_mode: str = "vacuous",
) -> list[tuple[Event, ...]]:
    """All qualifying common cause systems with at most max_size cells.

    mode="all" enumerates every set partition of the histories and needs
    |Omega| <= cap (Bell numbers explode); beyond the cap it raises and
    directs the caller to mode="regions", which only tries the partitions
    Phi(R) over regions R of the causet. Deterministic output order.
    """
    space = m.space
    out: list[tuple[Event, ...]] = []
    if mode == "all":
        if space.size > cap:
            raise CapExceededError(
                f"history space has {space.size} > {cap} histories; "
                "use mode='regions' to search full-specification partitions"
            )
        candidates: Iterator[Sequence[Event]] = _set_partitions(space.size)
    elif mode == "regions":
        dom = dom or DomMap.canonical()
        candidates = (
            full_specifications(space, dom, r) for r in space.causet.regions()
        )
    else:
        raise ValueError(f"unknown find_ccs mode {mode!r}")
    for cells in candidates:
        if len(cells) > max_size:
            continue
        try:
            verdict = is_ccs(m, a, b, cells, zero_mode)
        except NotAPartitionError:
            continue  # degenerate Phi from a user dom map
        if verdict.qualifies:
            out.append(tuple(cells))
    return out
