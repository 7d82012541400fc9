"""Exhaustive search over small models for principle separations.

Enumerates causets up to order-isomorphism, samples exact-rational measures,
runs the four-principle implication matrix on every (causet, measure) model,
and aggregates which combinations actually occur. Models that separate
principles (the open cells of the implication diagram) come back as
findings with replayable fingerprints.

Canonical form: the lexicographically minimal relation matrix over all
relabelings, compared in expanding-submatrix block order and computed by
branch and bound (only candidates realizing the minimal next block are
explored; the next block is the very next key component, so nothing else can
realize the overall minimum). Enumeration extends each (n-1)-element
representative by one new maximal element over every order ideal; every
finite poset has a maximal element, so this reaches every isomorphism class.

Determinism: work is partitioned by canonical causet index, per-causet
measure seeds are derived from (seed, index), and results are merged in
index order, so the report is a pure function of the config, whatever the
worker count.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .causet import Causet, _bits
from .errors import LimitError
from .histories import HistorySpace
from .measure import MeasureTable
from .principles import (
    PRINCIPLES,
    Caps,
    ImplicationMatrix,
    Model,
    gap_closure_check,
    implication_matrix,
)

HARD_ENUMERATION_LIMIT = 7

FILTERS = ("nonempty-flanks", "finite-pair")

_reps_cache: dict[int, list[tuple[int, ...]]] = {}


# -- canonical form and enumeration ----------------------------------------


def canonical_form(lt: Sequence[int]) -> tuple[int, ...]:
    """Relabel a closed strict-order matrix (row i = mask of successors of i)
    to its minimal lexicographic form."""
    n = len(lt)
    used = [False] * n
    perm: list[int] = []

    def block_for(o: int, depth: int) -> tuple[int, ...]:
        # matrix entries newly determined by putting element o at position depth:
        # row (depth, j) then column (j, depth), j < depth
        row = tuple(lt[o] >> perm[j] & 1 for j in range(depth))
        col = tuple(lt[perm[j]] >> o & 1 for j in range(depth))
        return row + col

    def rec(depth: int) -> tuple[tuple, tuple[int, ...]]:
        """Minimal (block sequence, permutation suffix) extending perm."""
        if depth == n:
            return (), ()
        cands = [(block_for(o, depth), o) for o in range(n) if not used[o]]
        floor = min(b for b, _ in cands)
        best_tail: tuple | None = None
        best_perm: tuple[int, ...] = ()
        for block, o in cands:
            if block != floor:
                continue
            used[o] = True
            perm.append(o)
            tail, tail_perm = rec(depth + 1)
            perm.pop()
            used[o] = False
            if best_tail is None or tail < best_tail:
                best_tail, best_perm = tail, (o,) + tail_perm
        return ((floor,) + best_tail, best_perm)

    _, best = rec(0)
    out = []
    for a in range(n):
        row = 0
        src = lt[best[a]]
        for b in range(n):
            row |= (src >> best[b] & 1) << b
        out.append(row)
    return tuple(out)


def _order_ideals(lt: Sequence[int]) -> Iterator[int]:
    """Down-closed subsets of a closed strict order, as masks, ascending."""
    n = len(lt)
    below = [0] * n
    for j in range(n):
        for i in _bits(lt[j]):
            below[i] |= 1 << j
    for m in range((1 << n)):
        if all(below[i] & ~m == 0 for i in _bits(m)):
            yield m


def _representatives(n: int) -> list[tuple[int, ...]]:
    """Canonical closed strict-order matrices of all n-element posets."""
    cached = _reps_cache.get(n)
    if cached is not None:
        return cached
    if n == 0:
        reps: list[tuple[int, ...]] = [()]
    elif n == 1:
        reps = [(0,)]
    else:
        seen: set[tuple[int, ...]] = set()
        for base in _representatives(n - 1):
            for ideal in _order_ideals(base):
                new_bit = 1 << (n - 1)
                candidate = tuple(
                    row | (new_bit if ideal >> i & 1 else 0)
                    for i, row in enumerate(base)
                ) + (0,)
                seen.add(canonical_form(candidate))
        reps = sorted(seen)
    _reps_cache[n] = reps
    return reps


def enumerate_causets(n: int, hard_limit: int = HARD_ENUMERATION_LIMIT) -> Iterator[Causet]:
    """All causets on exactly n elements up to order-isomorphism, canonical
    labels e0..e{n-1}, deterministic order."""
    if n < 1 or n > hard_limit:
        raise LimitError(f"enumeration supports 1 <= n <= {hard_limit}, got {n}")
    for lt in _representatives(n):
        yield _causet_from_rows(lt)


def _causet_from_rows(lt: Sequence[int]) -> Causet:
    labels = [f"e{i}" for i in range(len(lt))]
    return Causet(labels, tuple(lt))


def count_causets(n: int, hard_limit: int = HARD_ENUMERATION_LIMIT) -> int:
    if n < 1 or n > hard_limit:
        raise LimitError(f"enumeration supports 1 <= n <= {hard_limit}, got {n}")
    return len(_representatives(n))


# -- measures ----------------------------------------------------------------


def sample_measures(
    space: HistorySpace, k: int, seed: int | str, denominator_bound: int = 100
) -> list[MeasureTable]:
    """k measures: uniform first, then seeded pseudo-random exact-rational
    tables. Running twice with one seed gives identical lists."""
    if k < 1:
        raise ValueError("k must be at least 1")
    out = [MeasureTable.uniform(space)]
    for i in range(1, k):
        out.append(MeasureTable.random(space, f"{seed}:{i}", denominator_bound))
    return out


# -- search configuration and findings ---------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    max_elements: int
    alphabet_size: int = 2
    measures_per_model: int = 1
    seed: int = 0
    denominator_bound: int = 100
    caps: Caps = field(default_factory=Caps)
    workers: int = 1
    filters: tuple[str, ...] = ()
    include_perfect: bool = False
    zero_mode: str = "vacuous"
    hard_limit: int = HARD_ENUMERATION_LIMIT

    def __post_init__(self):
        if self.max_elements < 1:
            raise ValueError("max_elements must be at least 1")
        if self.measures_per_model < 1:
            raise ValueError("measures_per_model must be at least 1")
        for f in self.filters:
            if f not in FILTERS:
                raise ValueError(f"unknown filter {f!r}; known: {', '.join(FILTERS)}")

    def to_json(self) -> dict:
        # workers deliberately omitted: it only affects scheduling, and the
        # report must be byte-identical whatever the worker count
        return {
            "max_elements": self.max_elements,
            "alphabet_size": self.alphabet_size,
            "measures_per_model": self.measures_per_model,
            "seed": self.seed,
            "denominator_bound": self.denominator_bound,
            "caps": self.caps.to_json(),
            "filters": list(self.filters),
            "include_perfect": self.include_perfect,
            "zero_mode": self.zero_mode,
        }


def _digest(payload: dict) -> str:
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


@dataclass(frozen=True)
class Finding:
    index: int
    fingerprint: dict
    digest: str
    bits: str
    tags: tuple[str, ...]
    witness_samples: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "digest": self.digest,
            "bits": self.bits,
            "tags": list(self.tags),
            "fingerprint": self.fingerprint,
            "witness_samples": list(self.witness_samples),
        }


def _classify(matrix: ImplicationMatrix, gap_mismatch: bool) -> tuple[str, ...]:
    so1, so2 = matrix.satisfied("so1"), matrix.satisfied("so2")
    f1, f2 = matrix.satisfied("fin-so1"), matrix.satisfied("fin-so2")
    tags = []
    if (f1 and not so1) or (f2 and not so2):
        tags.append("separates finite/infinite")
    if so2 and not so1:
        tags.append("per-model SO2 and not SO1")
    if so1 and not so2:
        tags.append("per-model SO1 and not SO2")
    if f2 and not f1:
        tags.append("FIN-SO2 and not FIN-SO1 candidate")
    if f1 and not f2:
        tags.append("FIN-SO1 and not FIN-SO2 candidate")
    if gap_mismatch:
        tags.append("gap-closure mismatch")
    return tuple(tags)


def _passes_filters(causet: Causet, filters: tuple[str, ...]) -> bool:
    if not filters:
        return True
    want_flanks = "nonempty-flanks" in filters
    want_finite = "finite-pair" in filters
    have_flanks = have_finite = False
    finite_cache: dict[int, bool] = {}

    def finite(r: int) -> bool:
        got = finite_cache.get(r)
        if got is None:
            got = finite_cache[r] = causet.is_causally_finite(r)
        return got

    for ra, rb in causet.spacelike_pairs():
        if want_flanks and not have_flanks:
            x, y = causet.flank_regions(ra, rb)
            if x | y:
                have_flanks = True
        if want_finite and not have_finite:
            if finite(ra) and finite(rb):
                have_finite = True
        if (not want_flanks or have_flanks) and (not want_finite or have_finite):
            return True
    return (not want_flanks or have_flanks) and (not want_finite or have_finite)


def _hunt_causet(task: tuple[int, tuple[int, ...], SearchConfig]) -> dict:
    """Check every sampled measure on one causet; pure function of the task."""
    index, rows, config = task
    causet = _causet_from_rows(rows)
    if not _passes_filters(causet, config.filters):
        return {"index": index, "skipped": True, "findings": [], "truth": {}, "models": 0}
    space = HistorySpace(causet, config.alphabet_size)
    # gap closure is measure-independent, so it is checked once per causet
    probe = Model.build(space, MeasureTable.uniform(space))
    gap_mismatch = False
    for ra, rb in causet.spacelike_pairs(max_size=config.caps.region_size):
        if not gap_closure_check(probe, ra, rb).equal:
            gap_mismatch = True
            break
    measures = sample_measures(
        space, config.measures_per_model, f"{config.seed}:{index}", config.denominator_bound
    )
    kinds = ["uniform"] + [f"random:{i}" for i in range(1, config.measures_per_model)]
    if config.include_perfect:
        measures.append(MeasureTable.perfectly_correlated(space))
        kinds.append("perfect")
    findings = []
    truth: dict[str, int] = {}
    for kind, measure in zip(kinds, measures):
        model = Model.build(space, measure)
        matrix = implication_matrix(model, config.caps, config.zero_mode)
        bits = matrix.bits
        truth[bits] = truth.get(bits, 0) + 1
        tags = _classify(matrix, gap_mismatch)
        if not tags:
            continue
        fingerprint = {
            "causet": {
                "elements": list(causet.elements),
                "relations": [list(p) for p in causet.relation_pairs()],
            },
            "alphabet": config.alphabet_size,
            "measure": {"weights": measure.weight_strings()},
            "measure_kind": kind,
            "caps": config.caps.to_json(),
            "zero_mode": config.zero_mode,
        }
        samples = []
        for principle in PRINCIPLES:
            verdict = matrix.verdicts[principle]
            if verdict.witnesses:
                sample = verdict.witnesses[0].to_json(model)
                sample["principle"] = principle
                samples.append(sample)
        findings.append(
            Finding(
                index=index,
                fingerprint=fingerprint,
                digest=_digest(fingerprint),
                bits=bits,
                tags=tags,
                witness_samples=tuple(samples),
            ).to_json()
        )
    return {
        "index": index,
        "skipped": False,
        "findings": findings,
        "truth": truth,
        "models": len(measures),
    }


@dataclass
class HuntReport:
    config: SearchConfig
    findings: list[dict]
    truth_table: dict[str, int]
    causets: int
    models: int
    skipped_causets: int
    consistency_failures: tuple = ()

    def summary_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "causets": self.causets,
            "models": self.models,
            "skipped_causets": self.skipped_causets,
            "findings": len(self.findings),
            "truth_table": dict(sorted(self.truth_table.items())),
            "consistency_failures": list(self.consistency_failures),
            "tags_histogram": self._tags_histogram(),
        }

    def _tags_histogram(self) -> dict[str, int]:
        hist: dict[str, int] = {}
        for f in self.findings:
            for tag in f["tags"]:
                hist[tag] = hist.get(tag, 0) + 1
        return dict(sorted(hist.items()))

    def to_json(self) -> dict:
        return {"findings": self.findings, "summary": self.summary_json()}


def hunt(
    config: SearchConfig,
    checkpoint_path: str | None = None,
    resume: bool = False,
) -> HuntReport:
    """Sweep all causets up to config.max_elements across sampled measures.

    Emits every finding, the aggregate truth table of observed principle
    combinations, and (necessarily empty, since violations abort) the list of
    internal-consistency failures. Deterministic in the seed regardless of
    the worker count. A checkpoint file records the last completed causet
    index; resume=True skips causets at or below it and merges the recorded
    totals (previously emitted findings are not re-emitted).
    """
    if config.max_elements > config.hard_limit:
        raise LimitError(f"max_elements exceeds the hard limit {config.hard_limit}")
    tasks = []
    index = 0
    for n in range(1, config.max_elements + 1):
        for rows in _representatives(n):
            tasks.append((index, rows, config))
            index += 1

    start_after = -1
    truth_table: dict[str, int] = {}
    findings: list[dict] = []
    models = skipped = 0
    if resume:
        state = _read_checkpoint(checkpoint_path, config)
        start_after = state["last_completed_index"]
        truth_table = dict(state["truth_table"])
        models = state["models"]
        skipped = state["skipped_causets"]
    pending = [t for t in tasks if t[0] > start_after]

    if config.workers > 1 and len(pending) > 1:
        with multiprocessing.Pool(config.workers) as pool:
            results: Iterator[dict] = pool.imap(_hunt_causet, pending, chunksize=1)
            done = _merge(results, findings, truth_table, checkpoint_path, config)
    else:
        done = _merge(map(_hunt_causet, pending), findings, truth_table, checkpoint_path, config)
    models += done["models"]
    skipped += done["skipped"]

    return HuntReport(
        config=config,
        findings=findings,
        truth_table=truth_table,
        causets=len(tasks),
        models=models,
        skipped_causets=skipped,
    )


def _merge(
    results: Iterator[dict],
    findings: list[dict],
    truth_table: dict[str, int],
    checkpoint_path: str | None,
    config: SearchConfig,
) -> dict:
    models = skipped = 0
    for result in results:
        if result["skipped"]:
            skipped += 1
        models += result["models"]
        findings.extend(result["findings"])
        for bits, count in result["truth"].items():
            truth_table[bits] = truth_table.get(bits, 0) + count
        if checkpoint_path:
            _write_checkpoint(checkpoint_path, config, result["index"], truth_table, models, skipped)
    return {"models": models, "skipped": skipped}


def _checkpoint_digest(config: SearchConfig) -> str:
    return _digest(config.to_json())


def _write_checkpoint(
    path: str,
    config: SearchConfig,
    last_index: int,
    truth_table: dict[str, int],
    models: int,
    skipped: int,
) -> None:
    state = {
        "config_digest": _checkpoint_digest(config),
        "last_completed_index": last_index,
        "truth_table": truth_table,
        "models": models,
        "skipped_causets": skipped,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state, fh, sort_keys=True)


def _read_checkpoint(path: str | None, config: SearchConfig) -> dict:
    if not path:
        raise ValueError("resume requested without a checkpoint path")
    with open(path, encoding="utf-8") as fh:
        state = json.load(fh)
    if state.get("config_digest") != _checkpoint_digest(config):
        raise ValueError("checkpoint belongs to a different hunt configuration")
    return state


def replay_finding(finding: dict | Finding) -> str:
    """Rebuild the fingerprinted model and re-run the matrix; returns bits."""
    data = finding.to_json() if isinstance(finding, Finding) else finding
    fp = data["fingerprint"]
    causet = Causet.from_relations(
        fp["causet"]["elements"], [tuple(p) for p in fp["causet"]["relations"]]
    )
    space = HistorySpace(causet, fp["alphabet"])
    measure = MeasureTable.from_weights(space, fp["measure"]["weights"])
    model = Model.build(space, measure)
    caps = Caps(fp["caps"]["region_size"], fp["caps"]["algebra"])
    return implication_matrix(model, caps, fp["zero_mode"]).bits
