"""Checkers for the four screening-off causality principles.

SO1: for every unordered pair of spacelike separated regions (A, B) and all
events A in Gamma(A), B in Gamma(B), every full specification C of the
mutual past P1(A, B) screens off: mu(A & B | C) = mu(A | C) mu(B | C).
SO2: the same with full specifications of the truncated joint past P2(A, B).
The FIN variants quantify only over causally finite region pairs; since
their sweep is a subset of the infinite sweep, SOk satisfied must imply
FIN-SOk satisfied, and the matrix checker aborts if it ever does not (that
would be an implementation bug, not physics).

No implication between SO1 and SO2 is ever asserted: both directions are
treated as per-model empirical data, and `replicate_so1_to_so2` plus
`gap_closure_check` re-verify, step by step, every provable piece of the
textbook derivation of SO2 from SO1, including the final set-coverage
comparison that the derivation itself leaves open.

Verdicts are deterministic: identical model and caps give byte-identical
reports, and every emitted witness re-evaluates to its recorded exact sides.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .causet import Causet, Region, _popcount
from .errors import (
    AxiomViolationWarning,
    DomAxiomError,
    InternalConsistencyError,
    NotSpacelikeError,
)
from .histories import (
    DomMap,
    DomAxiomReport,
    Event,
    HistorySpace,
    check_dom_axioms,
    full_specifications,
    gamma_capped,
)
from .measure import MeasureTable, screens_off

PRINCIPLES = ("so1", "so2", "fin-so1", "fin-so2")

# Which screener family a principle draws from, and whether it restricts the
# sweep to causally finite region pairs.
_FAMILY = {"so1": "p1", "so2": "p2", "fin-so1": "p1", "fin-so2": "p2"}
_FINITE_ONLY = {"so1": False, "so2": False, "fin-so1": True, "fin-so2": True}


@dataclass(frozen=True)
class Caps:
    """Sweep limits: max region size per side, max events per region algebra."""

    region_size: int = 3
    algebra: int = 256

    @classmethod
    def parse(cls, text: str) -> "Caps":
        kwargs = {}
        for part in text.split(","):
            if not part:
                continue
            key, _, value = part.partition("=")
            key = {"region": "region_size", "algebra": "algebra"}.get(key.strip())
            if key is None:
                raise ValueError(f"unknown cap {part!r} (expected region=K,algebra=M)")
            kwargs[key] = int(value)
        return cls(**kwargs)

    def to_json(self) -> dict:
        return {"region_size": self.region_size, "algebra": self.algebra}


class Model:
    """A causet, its history space, a dom map and a measure, checked together."""

    def __init__(
        self,
        space: HistorySpace,
        measure: MeasureTable,
        dom: DomMap,
        axiom_report: DomAxiomReport,
        forced: bool = False,
    ):
        if measure.space is not space:
            raise ValueError("measure belongs to a different history space")
        self.space = space
        self.measure = measure
        self.dom = dom
        self.axiom_report = axiom_report
        self.forced = forced

    @property
    def causet(self) -> Causet:
        return self.space.causet

    @property
    def axiom_ok(self) -> bool:
        return self.axiom_report.passed

    @classmethod
    def build(
        cls,
        space: HistorySpace,
        measure: MeasureTable,
        dom: DomMap | None = None,
        axiom_policy: str = "auto",
        force: bool = False,
    ) -> "Model":
        """Assemble a model, validating the dom axioms on construction.

        auto policy: explicit dom maps get the full exhaustive check over
        their event universe; canonical doms get the exhaustive pairwise
        check when the space is small enough to enumerate (<= 8 histories)
        and otherwise carry an "assumed-canonical" stamp (the axiom
        theorems for the canonical construction are exercised separately by
        the dom-axioms suite). A failing report raises unless force=True, in
        which case verdicts carry an AxiomViolationWarning.
        """
        dom = dom or DomMap.canonical()
        if axiom_policy == "skip":
            report = DomAxiomReport((), 0, 0, stamped="unchecked")
        elif dom.is_canonical and axiom_policy == "auto" and space.size > 8:
            report = DomAxiomReport((), 0, 0, stamped="assumed-canonical")
        else:
            family = 2 if dom.is_canonical and axiom_policy == "auto" else 3
            cache = getattr(space, "_axiom_reports", None)
            if cache is None:
                cache = space._axiom_reports = {}
            key = ("canonical" if dom.is_canonical else id(dom), family)
            report = cache.get(key)
            if report is None:
                report = check_dom_axioms(space, dom, family_size=family)
                cache[key] = report
        if not report.passed:
            if not force:
                raise DomAxiomError(
                    "dom map violates the dom axioms; pass force=True to check anyway"
                )
            warnings.warn("dom axioms violated; verdicts are annotated", AxiomViolationWarning)
        return cls(space, measure, dom, report, forced=force)


@dataclass(frozen=True)
class Witness:
    """One recorded screening failure, re-evaluable from its masks alone."""

    principle: str
    region_a: Region
    region_b: Region
    event_a: Event
    event_b: Event
    screener: Event
    lhs: Fraction
    rhs: Fraction

    def to_json(self, model: Model) -> dict:
        c, s = model.causet, model.space
        return {
            "region_a": list(c.labels(self.region_a)),
            "region_b": list(c.labels(self.region_b)),
            "event_a": s.event_keys(self.event_a),
            "event_b": s.event_keys(self.event_b),
            "screener": s.event_keys(self.screener),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


def replay_witness(model: Model, w: Witness) -> tuple[Fraction, Fraction]:
    """Recompute both sides of a witness directly from the measure."""
    m = model.measure
    lhs = m.cond_prob(w.event_a & w.event_b, w.screener)
    rhs = m.cond_prob(w.event_a, w.screener) * m.cond_prob(w.event_b, w.screener)
    return lhs, rhs


@dataclass(frozen=True)
class Verdict:
    principle: str
    satisfied: bool
    capped: bool
    counts: dict[str, int]
    witnesses: tuple[Witness, ...]
    zero_screeners: tuple[tuple[Region, Region, Event], ...] = ()
    axiom_warning: str | None = None

    def to_json(self, model: Model) -> dict:
        c, s = model.causet, model.space
        return {
            "principle": self.principle,
            "satisfied": self.satisfied,
            "capped": self.capped,
            "counts": dict(sorted(self.counts.items())),
            "witnesses": [w.to_json(model) for w in self.witnesses],
            "zero_screeners": [
                {
                    "region_a": list(c.labels(ra)),
                    "region_b": list(c.labels(rb)),
                    "screener": s.event_keys(cell),
                }
                for ra, rb, cell in self.zero_screeners
            ],
            "axiom_warning": self.axiom_warning,
        }


# -- the sweep engine -------------------------------------------------------


@dataclass
class _FamilyOutcome:
    failures: list[tuple[Event, Event, Event, Fraction, Fraction]] = field(default_factory=list)
    screeners: int = 0
    zero_screeners: list[Event] = field(default_factory=list)
    event_pairs: int = 0
    tests: int = 0
    truncated: bool = False


@dataclass
class _PairOutcome:
    ra: Region
    rb: Region
    finite: bool
    trivial: bool
    skipped: bool
    families: dict[str, _FamilyOutcome] = field(default_factory=dict)


def _union_of(cells: Sequence[Event], subset: int) -> Event:
    mask = 0
    j = 0
    while subset:
        if subset & 1:
            mask |= cells[j]
        subset >>= 1
        j += 1
    return mask


def _algebra_size(space: HistorySpace, region: Region, cap: int) -> int:
    k = space.q ** _popcount(region)
    if k > 1000:  # 2^k certainly beyond any sane cap
        return cap
    return min(1 << k, cap)


def _eval_family_canonical(
    model: Model, ra: Region, rb: Region, screener_region: Region, cap: int
) -> _FamilyOutcome:
    """Screening sweep over Gamma(ra) x Gamma(rb) x Phi(screener_region).

    Exploits the cell structure of canonical algebras: every event of
    Gamma(R) is a union of Phi(R) cells, so all conditional products reduce
    to subset sums over a |Phi(ra)| x |Phi(rb)| table of atom weights per
    screener. Equalities are tested cross-multiplied; no divisions happen
    until a witness is actually reported.
    """
    space, measure = model.space, model.measure
    out = _FamilyOutcome()
    cells_a = space.phi_cells(ra)
    cells_b = space.phi_cells(rb)
    ka, kb = len(cells_a), len(cells_b)
    take_a = min(1 << ka, cap)
    take_b = min(1 << kb, cap)
    out.truncated = take_a < (1 << ka) or take_b < (1 << kb)
    out.event_pairs = take_a * take_b
    screeners = space.phi_cells(screener_region)
    prob = measure.prob
    zero = Fraction(0)
    for cell_c in screeners:
        out.screeners += 1
        pc = prob(cell_c)
        if pc == 0:
            out.zero_screeners.append(cell_c)
            continue
        atom = [[prob(cells_a[j] & cells_b[l] & cell_c) for l in range(kb)] for j in range(ka)]
        row = [sum(atom[j], zero) for j in range(ka)]
        col = [sum((atom[j][l] for j in range(ka)), zero) for l in range(kb)]
        # subset sums over event encodings (event = union of its cells)
        ras = [zero] * take_a
        for s in range(1, take_a):
            low = s & -s
            ras[s] = ras[s ^ low] + row[low.bit_length() - 1]
        rbs = [zero] * take_b
        for s in range(1, take_b):
            low = s & -s
            rbs[s] = rbs[s ^ low] + col[low.bit_length() - 1]
        vecs: list[list[Fraction]] = [[zero] * kb]
        for sa in range(1, take_a):
            low = sa & -sa
            base = vecs[sa ^ low]
            arow = atom[low.bit_length() - 1]
            vecs.append([base[l] + arow[l] for l in range(kb)])
        for sa in range(take_a):
            vec = vecs[sa]
            pa = ras[sa]
            ab = [zero] * take_b
            for sb in range(1, take_b):
                low = sb & -sb
                ab[sb] = ab[sb ^ low] + vec[low.bit_length() - 1]
                out.tests += 1
                if ab[sb] * pc != pa * rbs[sb]:
                    out.failures.append((
                        _union_of(cells_a, sa),
                        _union_of(cells_b, sb),
                        cell_c,
                        ab[sb] / pc,
                        (pa / pc) * (rbs[sb] / pc),
                    ))
            # sb = 0 (empty event B) screens identically; counted, not evaluated
            out.tests += 1
    return out


def _eval_family_generic(
    model: Model, ra: Region, rb: Region, screener_region: Region, cap: int
) -> _FamilyOutcome:
    """Direct triple loop for user-supplied dom maps (small universes)."""
    space, measure, dom = model.space, model.measure, model.dom
    out = _FamilyOutcome()
    gam_a, trunc_a = gamma_capped(space, dom, ra, cap)
    gam_b, trunc_b = gamma_capped(space, dom, rb, cap)
    out.truncated = trunc_a or trunc_b
    out.event_pairs = len(gam_a) * len(gam_b)
    prob = measure.prob
    for cell_c in full_specifications(space, dom, screener_region):
        out.screeners += 1
        pc = prob(cell_c)
        if pc == 0:
            out.zero_screeners.append(cell_c)
            continue
        for a in gam_a:
            pa = prob(a & cell_c)
            for b in gam_b:
                out.tests += 1
                pb = prob(b & cell_c)
                pab = prob(a & b & cell_c)
                if pab * pc != pa * pb:
                    out.failures.append((a, b, cell_c, pab / pc, (pa / pc) * (pb / pc)))
    return out


def _eval_family(model: Model, ra: Region, rb: Region, screener_region: Region, cap: int) -> _FamilyOutcome:
    if model.dom.is_canonical:
        return _eval_family_canonical(model, ra, rb, screener_region, cap)
    return _eval_family_generic(model, ra, rb, screener_region, cap)


def _trivial_outcome(model: Model, ra: Region, rb: Region, screener_region: Region, cap: int) -> _FamilyOutcome:
    # A pair with an empty side only ranges over events in {empty, Omega},
    # and mu(A&B|C) = mu(A|C)mu(B|C) holds identically for those, for every
    # measure: nothing to evaluate, but the coverage is real and counted.
    out = _FamilyOutcome()
    size_a = _algebra_size(model.space, ra, cap)
    size_b = _algebra_size(model.space, rb, cap)
    n_screeners = model.space.q ** _popcount(screener_region)
    out.screeners = n_screeners
    out.event_pairs = size_a * size_b
    out.tests = size_a * size_b * n_screeners
    return out


def _sweep(model: Model, caps: Caps, families: tuple[str, ...]) -> list[_PairOutcome]:
    causet = model.causet
    finite_cache: dict[Region, bool] = {}

    def finite(r: Region) -> bool:
        got = finite_cache.get(r)
        if got is None:
            got = finite_cache[r] = causet.is_causally_finite(r)
        return got

    outcomes: list[_PairOutcome] = []
    for ra, rb in causet.spacelike_pairs():
        both_finite = finite(ra) and finite(rb)
        trivial = ra == 0 or rb == 0
        skipped = (
            not trivial
            and (_popcount(ra) > caps.region_size or _popcount(rb) > caps.region_size)
        )
        pair = _PairOutcome(ra, rb, both_finite, trivial, skipped)
        if not skipped:
            for fam in families:
                region = (
                    causet.mutual_past(ra, rb)
                    if fam == "p1"
                    else causet.truncated_joint_past(ra, rb)
                )
                if trivial:
                    pair.families[fam] = _trivial_outcome(model, ra, rb, region, caps.algebra)
                else:
                    pair.families[fam] = _eval_family(model, ra, rb, region, caps.algebra)
        outcomes.append(pair)
    return outcomes


def _assemble(
    model: Model,
    principle: str,
    outcomes: list[_PairOutcome],
    zero_mode: str,
) -> Verdict:
    fam = _FAMILY[principle]
    finite_only = _FINITE_ONLY[principle]
    counts = {
        "region_pairs": 0,
        "region_pairs_nonempty": 0,
        "region_pairs_skipped": 0,
        "event_pairs": 0,
        "screeners": 0,
        "screening_tests": 0,
        "zero_screeners": 0,
    }
    witnesses: list[Witness] = []
    zero_cells: list[tuple[Region, Region, Event]] = []
    capped = False
    for pair in outcomes:
        if finite_only and not pair.finite:
            continue
        if pair.skipped:
            counts["region_pairs_skipped"] += 1
            capped = True
            continue
        result = pair.families[fam]
        counts["region_pairs"] += 1
        if not pair.trivial:
            counts["region_pairs_nonempty"] += 1
        counts["event_pairs"] += result.event_pairs
        counts["screeners"] += result.screeners
        counts["screening_tests"] += result.tests
        counts["zero_screeners"] += len(result.zero_screeners)
        capped = capped or result.truncated
        for a, b, c, lhs, rhs in result.failures:
            witnesses.append(Witness(principle, pair.ra, pair.rb, a, b, c, lhs, rhs))
        if zero_mode == "strict":
            zero_cells.extend((pair.ra, pair.rb, c) for c in result.zero_screeners)
    warning = None
    if not model.axiom_ok:
        warning = "dom axioms violated on this model; verdict computed under force"
    return Verdict(
        principle=principle,
        satisfied=not witnesses,
        capped=capped,
        counts=counts,
        witnesses=tuple(witnesses),
        zero_screeners=tuple(zero_cells),
        axiom_warning=warning,
    )


def check_principle(
    model: Model,
    which: str,
    caps: Caps | None = None,
    zero_mode: str = "vacuous",
) -> Verdict:
    """Exhaustively check one principle on a model within the given caps.

    Quantifies over all unordered spacelike region pairs (restricted to
    causally finite pairs for the FIN variants), then over the event
    algebras of the two regions, then over all full specifications of the
    mutual (SO1) or truncated joint (SO2) past. Pairs with an empty side
    cannot fail for any measure and are counted without evaluation. The
    verdict is marked capped whenever limits truncated the sweep.
    """
    which = which.lower()
    if which not in PRINCIPLES:
        raise ValueError(f"unknown principle {which!r}")
    caps = caps or Caps()
    outcomes = _sweep(model, caps, (_FAMILY[which],))
    return _assemble(model, which, outcomes, zero_mode)


@dataclass(frozen=True)
class ImplicationMatrix:
    verdicts: dict[str, Verdict]
    implications: dict[str, bool]

    @property
    def bits(self) -> str:
        return "".join(
            "1" if self.verdicts[p].satisfied else "0" for p in PRINCIPLES
        )

    def satisfied(self, principle: str) -> bool:
        return self.verdicts[principle].satisfied

    def to_json(self, model: Model) -> dict:
        return {
            "bits": self.bits,
            "satisfied": {p: self.verdicts[p].satisfied for p in PRINCIPLES},
            "implications": dict(sorted(self.implications.items())),
            "verdicts": {p: self.verdicts[p].to_json(model) for p in PRINCIPLES},
        }


def implication_matrix(
    model: Model, caps: Caps | None = None, zero_mode: str = "vacuous"
) -> ImplicationMatrix:
    """Run all four checks off a single sweep and derive the material
    implication table.

    The two subset implications (SOk => FIN-SOk) are asserted as internal
    consistency; their failure is an implementation bug and aborts. Every
    witness is replayed against the measure before the matrix is returned.
    """
    caps = caps or Caps()
    outcomes = _sweep(model, caps, ("p1", "p2"))
    verdicts = {p: _assemble(model, p, outcomes, zero_mode) for p in PRINCIPLES}
    for strong, weak in (("so1", "fin-so1"), ("so2", "fin-so2")):
        if verdicts[strong].satisfied and not verdicts[weak].satisfied:
            raise InternalConsistencyError(
                f"{strong} satisfied but {weak} violated: the finite sweep "
                "is a subset of the infinite sweep, so this cannot happen"
            )
    for verdict in verdicts.values():
        for w in verdict.witnesses:
            lhs, rhs = replay_witness(model, w)
            if lhs == rhs or lhs != w.lhs or rhs != w.rhs:
                raise InternalConsistencyError(
                    f"witness does not replay: recorded {w.lhs}!={w.rhs}, got {lhs} vs {rhs}"
                )
    implications = {}
    for p in PRINCIPLES:
        for q in PRINCIPLES:
            if p != q:
                implications[f"{p}=>{q}"] = (
                    not verdicts[p].satisfied or verdicts[q].satisfied
                )
    return ImplicationMatrix(verdicts, implications)


# -- replication of the SO1 => SO2 derivation --------------------------------


@dataclass(frozen=True)
class StepResult:
    step: int
    passed: bool
    checked: int
    failures: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [_render_failure(f) for f in self.failures],
        }


def _render_failure(f: dict) -> dict:
    return {
        k: (str(v) if isinstance(v, Fraction) else v)
        for k, v in f.items()
    }


@dataclass(frozen=True)
class ReplicationReport:
    region_a: Region
    region_b: Region
    applicable: bool
    precheck_failures: int
    steps: tuple[StepResult, ...]

    @property
    def passed(self) -> bool:
        return self.applicable and all(s.passed for s in self.steps)

    def to_json(self, model: Model) -> dict:
        c = model.causet
        return {
            "region_a": list(c.labels(self.region_a)),
            "region_b": list(c.labels(self.region_b)),
            "applicable": self.applicable,
            "precheck_failures": self.precheck_failures,
            "passed": self.passed,
            "steps": [s.to_json() for s in self.steps]
            if self.applicable
            else "not-applicable",
        }


def replicate_so1_to_so2(
    model: Model,
    ra: Region,
    rb: Region,
    caps: Caps | None = None,
) -> ReplicationReport:
    """Re-run, on one spacelike pair, every checkable step of the derivation
    that screening by mutual-past specifications extends to truncated-joint-
    past specifications.

    Precheck: the model must satisfy SO1 on the relevant regions, namely the
    given pair and its flank-enlarged pair (whose mutual past coincides with
    the original). If not, the steps are reported not-applicable.

    Step 1: every C in Phi(P1) screens the four event pairs built from
    A in Gamma(ra), B in Gamma(rb) and full specifications X of the flank of
    ra, Y of the flank of rb: (A&X, B&Y), (A&X, B), (A, B&Y), (X, Y).
    Step 2: whenever mu(X&Y&C) > 0, conditioning on X&Y&C factorizes A and B.
    Step 3: C&X&Y is a (nonempty) full specification of P2(ra, rb).
    """
    caps = caps or Caps()
    space, measure, dom, causet = model.space, model.measure, model.dom, model.causet
    if not causet.is_spacelike(ra, rb):
        raise NotSpacelikeError("replication needs a spacelike pair")
    x, y = causet.flank_regions(ra, rb)
    ea, eb = ra | x, rb | y
    p1 = causet.mutual_past(ra, rb)

    precheck_failures = 0
    for pa, pb in ((ra, rb), (ea, eb)):
        fam = _eval_family(model, pa, pb, causet.mutual_past(pa, pb), caps.algebra)
        precheck_failures += len(fam.failures)
    if precheck_failures:
        return ReplicationReport(ra, rb, False, precheck_failures, ())

    gam_a, _ = gamma_capped(space, dom, ra, caps.algebra)
    gam_b, _ = gamma_capped(space, dom, rb, caps.algebra)
    phi_x = full_specifications(space, dom, x)
    phi_y = full_specifications(space, dom, y)
    phi_p1 = full_specifications(space, dom, p1)
    phi_p2 = set(full_specifications(space, dom, causet.truncated_joint_past(ra, rb)))

    step1_failures: list[dict] = []
    step2_failures: list[dict] = []
    step3_failures: list[dict] = []
    checked1 = checked2 = checked3 = 0
    keys = space.event_keys
    for cell_x in phi_x:
        for cell_y in phi_y:
            for cell_c in phi_p1:
                checked3 += 1
                k = cell_c & cell_x & cell_y
                if k == 0 or k not in phi_p2:
                    step3_failures.append({
                        "x": keys(cell_x), "y": keys(cell_y), "c": keys(cell_c),
                        "reason": "C&X&Y is not a full specification of the truncated joint past",
                    })
                if measure.prob(cell_c) > 0:
                    checked1 += 1
                    if not screens_off(measure, cell_x, cell_y, cell_c):
                        step1_failures.append({
                            "pair": "X,Y", "x": keys(cell_x), "y": keys(cell_y),
                            "screener": keys(cell_c),
                        })
                pk = measure.prob(k)
                for a in gam_a:
                    for b in gam_b:
                        if measure.prob(cell_c) > 0:
                            checked1 += 3
                            for name, e1, e2 in (
                                ("A&X,B&Y", a & cell_x, b & cell_y),
                                ("A&X,B", a & cell_x, b),
                                ("A,B&Y", a, b & cell_y),
                            ):
                                if not screens_off(measure, e1, e2, cell_c):
                                    step1_failures.append({
                                        "pair": name,
                                        "event_1": keys(e1), "event_2": keys(e2),
                                        "screener": keys(cell_c),
                                    })
                        if pk > 0:
                            checked2 += 1
                            lhs = measure.prob(a & k) * measure.prob(b & k)
                            rhs = measure.prob(a & b & k) * pk
                            if lhs != rhs:
                                step2_failures.append({
                                    "a": keys(a), "b": keys(b), "k": keys(k),
                                    "lhs": measure.prob(a & k) / pk * (measure.prob(b & k) / pk),
                                    "rhs": measure.prob(a & b & k) / pk,
                                })
    steps = (
        StepResult(1, not step1_failures, checked1, tuple(step1_failures)),
        StepResult(2, not step2_failures, checked2, tuple(step2_failures)),
        StepResult(3, not step3_failures, checked3, tuple(step3_failures)),
    )
    return ReplicationReport(ra, rb, True, 0, steps)


@dataclass(frozen=True)
class GapReport:
    """Comparison of {C&X&Y} against Phi(P2): the coverage question the
    SO1 => SO2 derivation leaves open. A mismatch is a research finding."""

    region_a: Region
    region_b: Region
    equal: bool
    composed: tuple[Event, ...]
    phi_p2: tuple[Event, ...]
    missing: tuple[Event, ...]
    extra: tuple[Event, ...]

    def to_json(self, model: Model) -> dict:
        c, s = model.causet, model.space
        return {
            "region_a": list(c.labels(self.region_a)),
            "region_b": list(c.labels(self.region_b)),
            "equal": self.equal,
            "composed_count": len(self.composed),
            "phi_p2_count": len(self.phi_p2),
            "missing": [s.event_keys(e) for e in self.missing],
            "extra": [s.event_keys(e) for e in self.extra],
        }


def gap_closure_check(model: Model, ra: Region, rb: Region) -> GapReport:
    """Does {C&X&Y : C in Phi(P1), X in Phi(flank a), Y in Phi(flank b)},
    dropping empties, exhaust Phi(P2)? Reports equality or the differences."""
    space, dom, causet = model.space, model.dom, model.causet
    x, y = causet.flank_regions(ra, rb)
    composed = set()
    for cell_c in full_specifications(space, dom, causet.mutual_past(ra, rb)):
        for cell_x in full_specifications(space, dom, x):
            for cell_y in full_specifications(space, dom, y):
                k = cell_c & cell_x & cell_y
                if k:
                    composed.add(k)
    phi_p2 = set(full_specifications(space, dom, causet.truncated_joint_past(ra, rb)))
    return GapReport(
        region_a=ra,
        region_b=rb,
        equal=composed == phi_p2,
        composed=tuple(sorted(composed)),
        phi_p2=tuple(sorted(phi_p2)),
        missing=tuple(sorted(phi_p2 - composed)),
        extra=tuple(sorted(composed - phi_p2)),
    )
