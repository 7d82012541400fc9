"""Finite causal sets and their region algebra.

A causet is a finite set of elements with a strict causal order (irreflexive,
transitive, hence acyclic). Regions are arbitrary subsets of the element set,
held as int bitmasks over element indices for fast set algebra.

The operations here are the spatiotemporal half of the laboratory: causal
pasts J^-, mutual and truncated joint pasts, spacelike separation, causal
complement/closure, causal finiteness, and the flank regions used by the
equivalence argument between the screening-off principles.

Point-level spacelike relation: two distinct elements are spacelike iff
neither precedes the other. The causal complement O' of a region is the set
of points spacelike from every point of the region (vacuously, the whole
element set for the empty region); the causal closure is (O')'. This is the
standard causal-set transcription of the order-theoretic complement; only
this definition is implemented and tested.

All values are immutable after construction and every operation is a pure
function, so concurrent reads and transfer between workers are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    CycleError,
    DuplicateElementError,
    ForeignRegionError,
    LimitError,
    NotSpacelikeError,
)

# Regions are plain int bitmasks over element indices.
Region = int


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Causet:
    """A finite set with a strict causal partial order, stored transitively closed."""

    def __init__(self, elements: Sequence[str], closed_above: Sequence[int]):
        """Internal constructor; use :func:`validate_causet` or :meth:`from_relations`."""
        self.elements: tuple[str, ...] = tuple(elements)
        self._index: dict[str, int] = {e: i for i, e in enumerate(self.elements)}
        # _above[i] = mask of j with i < j; _below[i] = mask of j with j < i.
        self._above: tuple[int, ...] = tuple(closed_above)
        n = len(self.elements)
        below = [0] * n
        for i in range(n):
            for j in _bits(self._above[i]):
                below[j] |= 1 << i
        self._below: tuple[int, ...] = tuple(below)
        self.full: Region = (1 << n) - 1

    # -- construction ---------------------------------------------------

    @classmethod
    def from_relations(cls, elements: Sequence[str], relations: Iterable[tuple[str, str]]) -> "Causet":
        return validate_causet(elements, relations)

    @property
    def n(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        rels = [f"{a}<{b}" for a, b in self.relation_pairs()]
        return f"Causet({list(self.elements)}, [{', '.join(rels)}])"

    def relation_pairs(self) -> list[tuple[str, str]]:
        """The transitively closed strict order as label pairs, in index order."""
        out = []
        for i, e in enumerate(self.elements):
            for j in _bits(self._above[i]):
                out.append((e, self.elements[j]))
        return out

    # -- region plumbing ------------------------------------------------

    def region(self, members: Iterable[str] | str) -> Region:
        """Build a region mask from element labels; rejects unknown labels."""
        if isinstance(members, str):
            members = [p for p in members.split(",") if p]
        mask = 0
        for label in members:
            i = self._index.get(label)
            if i is None:
                raise ForeignRegionError(f"unknown element {label!r}")
            mask |= 1 << i
        return mask

    def labels(self, r: Region) -> tuple[str, ...]:
        self._check(r)
        return tuple(self.elements[i] for i in _bits(r))

    def _check(self, r: Region) -> None:
        if r & ~self.full:
            raise ForeignRegionError(f"region mask {r:#x} has bits outside the causet")

    def precedes(self, a: str, b: str) -> bool:
        return bool(self._above[self._index[a]] >> self._index[b] & 1)

    # -- the region algebra ----------------------------------------------

    def past(self, r: Region) -> Region:
        """Causal past J^-(r): everything strictly before some point of r, plus r."""
        self._check(r)
        out = r
        for i in _bits(r):
            out |= self._below[i]
        return out

    def is_spacelike(self, r1: Region, r2: Region) -> bool:
        """True iff J^-(r1) misses r2 and r1 misses J^-(r2).

        Overlapping regions are never spacelike since each point lies in its
        own past.
        """
        return not (self.past(r1) & r2) and not (r1 & self.past(r2))

    def mutual_past(self, r1: Region, r2: Region) -> Region:
        """P1(r1, r2) = J^-(r1) & J^-(r2); defined for any two regions."""
        return self.past(r1) & self.past(r2)

    def truncated_joint_past(self, r1: Region, r2: Region) -> Region:
        """P2(r1, r2) = (J^-(r1) | J^-(r2)) minus the regions themselves."""
        return (self.past(r1) | self.past(r2)) & ~(r1 | r2) & self.full

    @cached_property
    def _point_complement(self) -> tuple[int, ...]:
        # mask of points spacelike from element i (incomparable and distinct)
        return tuple(
            self.full & ~(self._above[i] | self._below[i] | (1 << i))
            for i in range(self.n)
        )

    def causal_complement(self, r: Region) -> Region:
        """All points spacelike from every point of r; the full set for r = 0."""
        self._check(r)
        out = self.full
        for i in _bits(r):
            out &= self._point_complement[i]
        return out

    def causal_closure(self, r: Region) -> Region:
        """(r')'; always contains r."""
        return self.causal_complement(self.causal_complement(r))

    def is_causally_finite(self, r: Region) -> bool:
        """True iff the past of the causal closure strictly exceeds the closure.

        Literal evaluation of the definition; in particular the empty region
        and the full element set are causally infinite (their closures gain
        nothing from taking pasts).
        """
        closure = self.causal_closure(r)
        return bool(self.past(closure) & ~closure)

    def flank_regions(self, ra: Region, rb: Region) -> tuple[Region, Region]:
        """The strips (J^-(A)\\A)\\J^-(B) and (J^-(B)\\B)\\J^-(A)."""
        pa, pb = self.past(ra), self.past(rb)
        x = (pa & ~ra) & ~pb
        y = (pb & ~rb) & ~pa
        return x, y

    def verify_crucial_identity(self, ra: Region, rb: Region) -> "CrucialIdentityReport":
        """Check the enlarged-pair identity behind the SO2 => SO1 step.

        For spacelike ra, rb with flanks X, Y this verifies that (i) ra|X and
        rb|Y are again spacelike and (ii) the truncated joint past of the
        enlarged pair equals the mutual past of the original pair. Returns all
        computed regions for inspection.
        """
        if not self.is_spacelike(ra, rb):
            raise NotSpacelikeError(
                f"regions {self.labels(ra)} and {self.labels(rb)} are not spacelike separated"
            )
        x, y = self.flank_regions(ra, rb)
        ea, eb = ra | x, rb | y
        spacelike_ok = self.is_spacelike(ea, eb)
        p1 = self.mutual_past(ra, rb)
        p2_enlarged = self.truncated_joint_past(ea, eb)
        return CrucialIdentityReport(
            region_a=ra,
            region_b=rb,
            flank_x=x,
            flank_y=y,
            enlarged_a=ea,
            enlarged_b=eb,
            mutual_past=p1,
            truncated_joint_past_enlarged=p2_enlarged,
            enlarged_spacelike=spacelike_ok,
            identity_holds=(p2_enlarged == p1),
        )

    def decomposes_truncated_past(self, ra: Region, rb: Region) -> bool:
        """True iff P2 = X | Y | P1 with the three parts pairwise disjoint."""
        x, y = self.flank_regions(ra, rb)
        p1 = self.mutual_past(ra, rb)
        p2 = self.truncated_joint_past(ra, rb)
        disjoint = not (x & y) and not (x & p1) and not (y & p1)
        return disjoint and (x | y | p1) == p2

    # -- sweeps -----------------------------------------------------------

    def spacelike_pairs(self, max_size: int | None = None) -> Iterator[tuple[Region, Region]]:
        """All unordered spacelike region pairs (ra <= rb as masks), ascending.

        Region-level spacelike separation is equivalent to pointwise spacelike
        separation of every cross pair, so the partners of ra are exactly the
        submasks of its causal complement. Cost is O(3^n), not O(4^n).
        """
        if self.n > 16:
            raise LimitError("spacelike pair sweeps are exponential; causet too large")
        for ra in range(self.full + 1):
            if max_size is not None and _popcount(ra) > max_size:
                continue
            allowed = self.causal_complement(ra)
            subs = []
            rb = allowed
            while True:
                if rb >= ra and (max_size is None or _popcount(rb) <= max_size):
                    subs.append(rb)
                if rb == 0:
                    break
                rb = (rb - 1) & allowed
            for rb in sorted(subs):
                yield ra, rb

    def regions(self) -> Iterator[Region]:
        if self.n > 16:
            raise LimitError("region sweeps are exponential; causet too large")
        return iter(range(self.full + 1))


@dataclass(frozen=True)
class CrucialIdentityReport:
    region_a: Region
    region_b: Region
    flank_x: Region
    flank_y: Region
    enlarged_a: Region
    enlarged_b: Region
    mutual_past: Region
    truncated_joint_past_enlarged: Region
    enlarged_spacelike: bool
    identity_holds: bool

    @property
    def holds(self) -> bool:
        return self.enlarged_spacelike and self.identity_holds

    def to_json(self, causet: Causet) -> dict:
        return {
            "region_a": list(causet.labels(self.region_a)),
            "region_b": list(causet.labels(self.region_b)),
            "flank_x": list(causet.labels(self.flank_x)),
            "flank_y": list(causet.labels(self.flank_y)),
            "enlarged_a": list(causet.labels(self.enlarged_a)),
            "enlarged_b": list(causet.labels(self.enlarged_b)),
            "mutual_past": list(causet.labels(self.mutual_past)),
            "truncated_joint_past_enlarged": list(
                causet.labels(self.truncated_joint_past_enlarged)
            ),
            "enlarged_spacelike": self.enlarged_spacelike,
            "identity_holds": self.identity_holds,
            "holds": self.holds,
        }


def _popcount(mask: int) -> int:
    return mask.bit_count()


def validate_causet(
    elements: Sequence[str], relations: Iterable[tuple[str, str] | Sequence[str]]
) -> Causet:
    """Build a causet from a generating relation, computing the transitive closure.

    The input may be any generating set (e.g. a Hasse diagram); duplicates are
    fine. Rejects repeated element labels and cyclic input, naming a
    witnessing cycle.
    """
    elements = list(elements)
    if len(set(elements)) != len(elements):
        dupes = sorted({e for e in elements if elements.count(e) > 1})
        raise DuplicateElementError(f"repeated element labels: {dupes}")
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    above = [0] * n
    raw_edges: list[tuple[int, int]] = []
    for pair in relations:
        a, b = pair
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise ForeignRegionError(f"relation references unknown element {missing!r}")
        i, j = index[a], index[b]
        if i == j:
            raise CycleError([a])
        above[i] |= 1 << j
        raw_edges.append((i, j))
    # Warshall closure on bit rows.
    for k in range(n):
        bit_k = 1 << k
        for i in range(n):
            if above[i] & bit_k:
                above[i] |= above[k]
    for i in range(n):
        if above[i] >> i & 1:
            raise CycleError(_find_cycle(elements, raw_edges, i))
    return Causet(elements, above)


def _find_cycle(elements: Sequence[str], edges: list[tuple[int, int]], start: int) -> list[str]:
    # BFS from start over raw edges back to start; a cycle is guaranteed.
    succ: dict[int, list[int]] = {}
    for i, j in edges:
        succ.setdefault(i, []).append(j)
    parent: dict[int, int] = {start: -1}
    queue = [start]
    while queue:
        u = queue.pop(0)
        for v in succ.get(u, ()):
            if v == start:
                path = [u]
                while parent[path[-1]] != -1:
                    path.append(parent[path[-1]])
                return [elements[i] for i in reversed(path)]
            if v not in parent:
                parent[v] = u
                queue.append(v)
    raise AssertionError("no cycle found from a node known to reach itself")
