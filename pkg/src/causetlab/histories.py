"""History spaces over a causet, events, and least domains of decidability.

Omega is the full product space: one value from a finite alphabet per causet
element. A history is encoded as an integer in base `alphabet_size` (digit i
is the value at element i) and an event is an int bitmask over history
indices, so event algebra is plain integer bit algebra.

dom(A), the least domain of decidability, is the smallest region whose
restriction of a history decides membership in A. For product spaces the
canonical construction is the dependency set: element s belongs to dom(A)
iff two histories differing only at s can disagree about A. User-supplied
dom maps are accepted and validated against the dom axioms rather than
trusted, which is what lets the rest of the laboratory explore non-product
models.

Gamma(R) is the collection of events decidable inside R (dom(A) subseteq R;
the subset is read non-strictly throughout, since the strict reading would
empty Phi(R) for dom-minimal regions and break the partition law; every CLI
report states this convention). Phi(R), the full specifications of R, are the
nonempty events decidable in R that settle every other event decidable in R;
they partition Omega, and for canonical doms they are exactly the cylinders
fixing a value at every element of R, with Phi(empty) = {Omega}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .causet import Causet, Region, _bits
from .errors import (
    CapExceededError,
    EmptyIntersectionError,
    LimitError,
    NotDisjointError,
    NotFullSpecError,
    UndefinedDomError,
)

Event = int

_DIGITS = "0123456789abcdef"

# Full product spaces beyond this many histories make event masks unwieldy.
_MAX_HISTORIES = 1 << 20


class HistorySpace:
    """The product space alphabet^elements with events as history bitmasks."""

    def __init__(self, causet: Causet, alphabet_size: int = 2):
        if alphabet_size < 2:
            raise ValueError("alphabet_size must be at least 2")
        if alphabet_size > len(_DIGITS):
            raise LimitError(f"alphabet_size above {len(_DIGITS)} not supported by history keys")
        if alphabet_size ** causet.n > _MAX_HISTORIES:
            raise LimitError("history space too large")
        self.causet = causet
        self.q = alphabet_size
        self.size = alphabet_size ** causet.n
        self.omega: Event = (1 << self.size) - 1
        # value_masks[i][v]: histories whose value at element i is v
        self._value_masks: list[list[int]] = []
        for i in range(causet.n):
            per_value = [0] * self.q
            for h in range(self.size):
                per_value[self._value(h, i)] |= 1 << h
            self._value_masks.append(per_value)
        # For q == 2, flipping element i toggles bit i of the history index,
        # so the flip acts on event masks by a masked shift of 2^(2^i) ... no:
        # offset d = 2^i in index space; histories with digit 0 at i occupy
        # the bit positions collected in _flip_low[i].
        self._flip_low: list[int] = []
        if self.q == 2:
            for i in range(causet.n):
                self._flip_low.append(self._value_masks[i][0])
        else:
            self._perms: list[list[int]] = []
            for i in range(causet.n):
                step = self.q ** i
                perm = []
                for h in range(self.size):
                    v = self._value(h, i)
                    perm.append(h - v * step + ((v + 1) % self.q) * step)
                self._perms.append(perm)
        self._phi_cache: dict[Region, tuple[Event, ...]] = {}

    def _value(self, h: int, i: int) -> int:
        return (h // (self.q ** i)) % self.q

    # -- rendering --------------------------------------------------------

    def history_key(self, h: int) -> str:
        """Value string in element order, e.g. "010" for x=0, y=1, z=0."""
        return "".join(_DIGITS[self._value(h, i)] for i in range(self.causet.n))

    def history_from_key(self, key: str) -> int:
        if len(key) != self.causet.n:
            raise ValueError(f"history key {key!r} must have one digit per element")
        h = 0
        for i, ch in enumerate(key):
            v = _DIGITS.index(ch)
            if v >= self.q:
                raise ValueError(f"history key {key!r} uses a value outside the alphabet")
            h += v * self.q ** i
        return h

    def event_keys(self, e: Event) -> list[str]:
        return [self.history_key(h) for h in _bits(e)]

    # -- event constructors ------------------------------------------------

    def cylinder(self, assignment: Mapping[str, int]) -> Event:
        """Histories matching every element=value constraint given."""
        mask = self.omega
        for label, value in assignment.items():
            i = self.causet._index[label]
            if not 0 <= value < self.q:
                raise ValueError(f"value {value} for {label!r} outside the alphabet")
            mask &= self._value_masks[i][value]
        return mask

    def event_from_histories(self, keys: Iterable[str]) -> Event:
        mask = 0
        for key in keys:
            mask |= 1 << self.history_from_key(key)
        return mask

    def complement(self, e: Event) -> Event:
        return self.omega & ~e

    # -- canonical dom and full specifications ------------------------------

    def flip_event(self, e: Event, i: int) -> Event:
        """The event permuted by cycling the value at element i by +1 mod q."""
        if self.q == 2:
            low = self._flip_low[i]
            d = 1 << i  # index offset between sibling histories
            return ((e & low) << d) | ((e >> d) & low)
        out = 0
        perm = self._perms[i]
        for h in _bits(e):
            out |= 1 << perm[h]
        return out

    def canonical_dom(self, e: Event) -> Region:
        """Dependency set: elements whose value can change membership in e.

        Membership is constant on every fiber of element i exactly when the
        event is invariant under cycling the value at i, so one permutation
        test per element suffices.
        """
        dom = 0
        for i in range(self.causet.n):
            if self.flip_event(e, i) != e:
                dom |= 1 << i
        return dom

    def phi_cells(self, region: Region) -> tuple[Event, ...]:
        """Cylinders fixing a value at every element of the region, in
        ascending assignment order; ({Omega},) for the empty region."""
        cached = self._phi_cache.get(region)
        if cached is not None:
            return cached
        idx = list(_bits(region))
        cells = []
        # cell s assigns value (s // q^j) % q to the j-th region element
        for s in range(self.q ** len(idx)):
            mask = self.omega
            rest = s
            for i in idx:
                mask &= self._value_masks[i][rest % self.q]
                rest //= self.q
            cells.append(mask)
        result = tuple(cells)
        self._phi_cache[region] = result
        return result


class DomMap:
    """Least-domain assignment: canonical (computed) or user-supplied (validated)."""

    def __init__(self, mapping: dict[Event, Region] | None = None):
        self._mapping = mapping

    @classmethod
    def canonical(cls) -> "DomMap":
        return cls(None)

    @classmethod
    def explicit(cls, mapping: Mapping[Event, Region]) -> "DomMap":
        return cls(dict(mapping))

    @property
    def is_canonical(self) -> bool:
        return self._mapping is None

    def dom(self, space: HistorySpace, e: Event) -> Region:
        if self._mapping is None:
            return space.canonical_dom(e)
        try:
            return self._mapping[e]
        except KeyError:
            raise UndefinedDomError(
                f"user dom map does not define event {space.event_keys(e)}"
            ) from None

    def events(self, space: HistorySpace) -> Iterator[Event]:
        """The event universe this map is defined on (all of pow(Omega) when canonical)."""
        if self._mapping is None:
            if space.size > 16:
                raise CapExceededError(
                    "cannot enumerate all events of a space with more than 16 histories; "
                    "pass an explicit universe"
                )
            return iter(range(space.omega + 1))
        return iter(sorted(self._mapping))


def gamma(space: HistorySpace, dom: DomMap, region: Region, limit: int | None = None) -> list[Event]:
    """All events decidable inside the region (dom(X) subseteq region).

    For canonical doms these are exactly the unions of Phi(region) cells,
    enumerated in ascending cell-subset order (so the empty event comes
    first and Omega last). Grows as 2^(q^|region|); pass `limit` to truncate
    deliberately, otherwise oversized enumerations raise CapExceededError.
    """
    events, truncated = gamma_capped(space, dom, region, limit)
    if truncated and limit is None:
        raise CapExceededError("event algebra too large; pass a limit")
    return events


def gamma_capped(
    space: HistorySpace, dom: DomMap, region: Region, limit: int | None
) -> tuple[list[Event], bool]:
    """Gamma with an explicit cap; returns (events, truncated)."""
    if dom.is_canonical:
        cells = space.phi_cells(region)
        k = len(cells)
        count = 1 << k
        take = count if limit is None else min(count, limit)
        if limit is None and count > 1 << 16:
            return [], True
        events = []
        for s in range(take):
            mask = 0
            rest = s
            j = 0
            while rest:
                if rest & 1:
                    mask |= cells[j]
                rest >>= 1
                j += 1
            events.append(mask)
        return events, take < count
    matching = [e for e in dom.events(space) if dom.dom(space, e) & ~region == 0]
    if limit is not None and len(matching) > limit:
        return matching[:limit], True
    return matching, False


def full_specifications(space: HistorySpace, dom: DomMap, region: Region) -> list[Event]:
    """Phi(region): nonempty events decidable in the region that settle every
    event decidable in the region (F inside X or inside X^c for each such X).

    Canonical doms: the cylinders fixing a value at each region element.
    Explicit doms: literal filter over the map's events.
    """
    if dom.is_canonical:
        return list(space.phi_cells(region))
    candidates = [
        e for e in dom.events(space)
        if e and dom.dom(space, e) & ~region == 0
    ]
    out = []
    for f in candidates:
        ok = True
        for x in candidates:
            if f & ~x and f & x:  # f splits x
                ok = False
                break
        if ok:
            out.append(f)
    return out


def is_partition(space: HistorySpace, cells: Sequence[Event]) -> bool:
    """Pairwise disjoint nonempty events covering Omega."""
    union = 0
    for c in cells:
        if c == 0 or union & c:
            return False
        union |= c
    return union == space.omega


def compose_full_specs(
    space: HistorySpace, dom: DomMap, parts: Sequence[tuple[Region, Event]]
) -> Event:
    """Intersect full specifications of pairwise disjoint regions.

    The result must be a nonempty full specification of the disjoint union;
    anything else falsifies the composition law and raises (the hunter
    reports such a failure as a finding rather than crashing a sweep).
    """
    union_region = 0
    for region, event in parts:
        if union_region & region:
            raise NotDisjointError("regions of the composition overlap")
        union_region |= region
        if event not in full_specifications(space, dom, region):
            raise NotFullSpecError(
                f"event {space.event_keys(event)} is not a full specification "
                f"of region {list(space.causet.labels(region))}"
            )
    out = space.omega
    for _, event in parts:
        out &= event
    if out == 0:
        raise EmptyIntersectionError("composition of full specifications is empty")
    if out not in full_specifications(space, dom, union_region):
        raise NotFullSpecError(
            "composed event is not a full specification of the disjoint union"
        )
    return out


def sample_events(space: HistorySpace, k: int, seed: int | str) -> list[Event]:
    """k pseudo-random events, deterministic in the seed (duplicates kept off)."""
    rng = random.Random(f"events:{seed}")
    out: list[Event] = []
    seen = set()
    while len(out) < k:
        e = rng.getrandbits(space.size)
        if e not in seen:
            seen.add(e)
            out.append(e)
    return out


# -- dom axiom validation -------------------------------------------------

@dataclass(frozen=True)
class AxiomResult:
    axiom: int
    passed: bool
    checked: int
    witness: dict | None = None


@dataclass(frozen=True)
class DomAxiomReport:
    results: tuple[AxiomResult, ...]
    universe_size: int
    family_size: int
    stamped: str | None = None  # set when validation was vouched, not swept

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self, space: HistorySpace) -> dict:
        return {
            "passed": self.passed,
            "universe_size": self.universe_size,
            "family_size": self.family_size,
            "stamped": self.stamped,
            "axioms": [
                {
                    "axiom": r.axiom,
                    "passed": r.passed,
                    "checked": r.checked,
                    "witness": r.witness,
                }
                for r in self.results
            ],
        }


def check_dom_axioms(
    space: HistorySpace,
    dom: DomMap,
    family_size: int = 3,
    universe: Sequence[Event] | None = None,
    axioms: Sequence[int] = (1, 2, 3, 4),
) -> DomAxiomReport:
    """Validate the four dom axioms over an event universe, reporting failures.

    Families for axioms 1 and 2 range over distinct events of the universe up
    to `family_size`, via the pairwise/inductive formulation plus exhaustive
    small-family sweeps. Axiom 1 families exclude the empty event: its least
    domain is empty, so with it admitted the disjoint-union equation is
    unsatisfiable by any least-domain construction. The sigma-algebra of
    axiom 4 is the Boolean algebra generated (finite case).

    Failures are reported with a minimal witness (first in enumeration
    order), never thrown. `axioms` selects a subset to run (axiom 4 over a
    large universe dominates the cost).
    """
    if universe is None:
        universe = list(dom.events(space))
    universe = sorted(set(universe))
    doms = {e: dom.dom(space, e) for e in universe}
    runners = {
        1: lambda: _axiom1(space, dom, universe, doms, family_size),
        2: lambda: _axiom2(space, dom, universe, doms, family_size),
        3: lambda: _axiom3(space, dom, universe, doms),
        4: lambda: _axiom4(space, dom, universe, doms),
    }
    results = tuple(runners[a]() for a in axioms)
    return DomAxiomReport(results, len(universe), family_size)


def _witness_events(space: HistorySpace, events: Iterable[Event]) -> list[list[str]]:
    return [space.event_keys(e) for e in events]


def _axiom1(
    space: HistorySpace,
    dom: DomMap,
    universe: Sequence[Event],
    doms: dict[Event, Region],
    family_size: int,
) -> AxiomResult:
    # dom pairwise disjoint  =>  dom of the intersection is the disjoint union.
    # Families are enumerated by dom value first: two events can share a dom
    # only when that dom is empty, so groups with a nonempty dom contribute at
    # most one member. This keeps the sweep exhaustive even when one dom value
    # carries most of the universe.
    from itertools import combinations, product

    groups: dict[Region, list[Event]] = {}
    for e in universe:
        if e:
            groups.setdefault(doms[e], []).append(e)
    regions = sorted(groups)
    checked = 0
    witness = None

    def multisets(idx: int, union_dom: Region, count: int, chosen: list):
        if count >= 2:
            yield list(chosen)
        if count >= family_size:
            return
        for k in range(idx, len(regions)):
            r = regions[k]
            if r & union_dom:
                continue
            max_take = (family_size - count) if r == 0 else 1
            for take in range(1, max_take + 1):
                if len(groups[r]) < take:
                    break
                chosen.append((r, take))
                yield from multisets(k + 1, union_dom | r, count + take, chosen)
                chosen.pop()

    for combo in multisets(0, 0, 0, []):
        union_dom = 0
        for r, _ in combo:
            union_dom |= r
        for picks in product(*[combinations(groups[r], t) for r, t in combo]):
            family = [e for grp in picks for e in grp]
            checked += 1
            inter = space.omega
            for e in family:
                inter &= e
            try:
                got = doms[inter] if inter in doms else dom.dom(space, inter)
            except UndefinedDomError:
                return AxiomResult(1, False, checked, {
                    "family": _witness_events(space, family),
                    "reason": "intersection has no dom assigned",
                })
            if got != union_dom:
                return AxiomResult(1, False, checked, {
                    "family": _witness_events(space, family),
                    "dom_of_intersection": list(space.causet.labels(got)),
                    "disjoint_union": list(space.causet.labels(union_dom)),
                })
    return AxiomResult(1, witness is None, checked, witness)


def _axiom2(
    space: HistorySpace,
    dom: DomMap,
    universe: Sequence[Event],
    doms: dict[Event, Region],
    family_size: int,
) -> AxiomResult:
    # equal doms  =>  dom of the intersection is contained in the common dom
    from math import comb

    groups: dict[Region, list[Event]] = {}
    for e in universe:
        groups.setdefault(doms[e], []).append(e)
    checked = 0
    witness = None
    for region in sorted(groups):
        members = groups[region]
        if region == space.causet.full:
            # dom maps into subsets of the element set, so containment in the
            # full region holds for every family sharing it; counted, not
            # evaluated (this group usually carries most of the universe)
            checked += sum(comb(len(members), k) for k in range(2, family_size + 1))
            continue
        if witness is not None:
            break

        def extend(start: int, family: list[Event]):
            nonlocal checked, witness
            if witness is not None:
                return
            if len(family) >= 2:
                checked += 1
                inter = space.omega
                for e in family:
                    inter &= e
                try:
                    got = doms[inter] if inter in doms else dom.dom(space, inter)
                except UndefinedDomError:
                    witness = {
                        "family": _witness_events(space, family),
                        "reason": "intersection has no dom assigned",
                    }
                    return
                if got & ~region:
                    witness = {
                        "family": _witness_events(space, family),
                        "dom_of_intersection": list(space.causet.labels(got)),
                        "common_dom": list(space.causet.labels(region)),
                    }
                    return
            if len(family) >= family_size:
                return
            for i in range(start, len(members)):
                family.append(members[i])
                extend(i + 1, family)
                family.pop()
                if witness is not None:
                    return

        extend(0, [])
    return AxiomResult(2, witness is None, checked, witness)


def _axiom3(
    space: HistorySpace,
    dom: DomMap,
    universe: Sequence[Event],
    doms: dict[Event, Region],
) -> AxiomResult:
    checked = 0
    for e in universe:
        comp = space.complement(e)
        checked += 1
        try:
            dom_comp = doms[comp] if comp in doms else dom.dom(space, comp)
        except UndefinedDomError:
            return AxiomResult(3, False, checked, {
                "event": space.event_keys(e),
                "reason": "complement has no dom assigned",
            })
        if dom_comp != doms[e]:
            return AxiomResult(3, False, checked, {
                "event": space.event_keys(e),
                "dom": list(space.causet.labels(doms[e])),
                "dom_of_complement": list(space.causet.labels(dom_comp)),
            })
    return AxiomResult(3, True, checked, None)


def _axiom4(
    space: HistorySpace,
    dom: DomMap,
    universe: Sequence[Event],
    doms: dict[Event, Region],
) -> AxiomResult:
    # dom(Z) = X disjoint-union Y  =>  Z lies in the algebra generated by
    # Gamma(X) | Gamma(Y); equivalently Z never splits an atom of that algebra.
    checked = 0
    for z in universe:
        d = doms[z]
        # every unordered split of d into (X, Y); (d, empty) included
        sub = d
        seen = set()
        while True:
            x, y = sub, d ^ sub
            key = (min(x, y), max(x, y))
            if key not in seen:
                seen.add(key)
                checked += 1
                for atom in _algebra_atoms(space, dom, x, y):
                    if atom & z and atom & ~z:
                        return AxiomResult(4, False, checked, {
                            "event": space.event_keys(z),
                            "split": [
                                list(space.causet.labels(x)),
                                list(space.causet.labels(y)),
                            ],
                            "split_atom": space.event_keys(atom),
                        })
            if sub == 0:
                break
            sub = (sub - 1) & d
    return AxiomResult(4, True, checked, None)


def _algebra_atoms(space: HistorySpace, dom: DomMap, x: Region, y: Region) -> list[Event]:
    if dom.is_canonical:
        return [
            cx & cy
            for cx in space.phi_cells(x)
            for cy in space.phi_cells(y)
            if cx & cy
        ]
    generators = [
        e for e in dom.events(space) if dom.dom(space, e) & ~x == 0
    ] + [
        e for e in dom.events(space) if dom.dom(space, e) & ~y == 0
    ]
    atoms = [space.omega]
    for g in generators:
        nxt = []
        for block in atoms:
            inside, outside = block & g, block & ~g
            if inside:
                nxt.append(inside)
            if outside:
                nxt.append(outside)
        atoms = nxt
    return atoms
