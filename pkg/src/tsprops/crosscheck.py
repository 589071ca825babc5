"""Structural-versus-oracle agreement sweeps.

The package's central claim is that every structural checker returns the same
verdict as brute-force evaluation over the enumerated element table.  This
module generates instance streams (exhaustive and seeded-random), runs both
engines on each instance, and aggregates any disagreement into a
deterministic, JSON-ready summary.  The two routes stay fully independent:
the structural side never sees the element table, the oracle side never sees
the structural verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from . import fo_checks, identity_engine, nl_checks
from .core import GeneratorSet
from .formats import instance_digest, render_generators
from .identities_enum import left_identities, right_identities
from .oracle import (
    DEFAULT_CAP,
    ElementTable,
    definitional_check,
    enumerate_semigroup,
    left_identity_indices,
    right_identity_indices,
)
from .report import PropertyReport

# (cli name, structural checker, oracle branch) — the paired dual routes.
PROPERTY_PAIRS: tuple[tuple[str, Callable[[GeneratorSet], PropertyReport], str], ...] = (
    ("commutative", fo_checks.is_commutative, "commutative"),
    ("semilattice", fo_checks.is_semilattice, "semilattice"),
    ("group", fo_checks.is_group, "group"),
    ("left-zero", nl_checks.has_left_zero, "left_zero_exists"),
    ("right-zero", nl_checks.has_right_zero, "right_zero_exists"),
    ("zero", nl_checks.has_zero, "zero_exists"),
    ("nilpotent", nl_checks.is_nilpotent, "nilpotent"),
    ("r-trivial", nl_checks.is_r_trivial, "r_trivial"),
    ("band", identity_engine.is_band, "band"),
    ("idempotents-commute", identity_engine.idempotents_commute,
     "idempotents_commute"),
    ("idempotents-central", identity_engine.idempotents_central,
     "idempotents_central"),
    ("orthodox", identity_engine.is_orthodox, "orthodox"),
    ("completely-regular", nl_checks.is_completely_regular,
     "completely_regular"),
    ("clifford", nl_checks.is_clifford, "clifford"),
)

PAIRED_PROPERTIES = tuple(name for name, _, _ in PROPERTY_PAIRS) + (
    "left-identities", "right-identities")


@dataclass
class InstanceResult:
    gens: GeneratorSet
    digest: str
    element_count: int
    verdicts: dict[str, dict[str, str]]
    mismatches: list[str] = field(default_factory=list)
    reports: list[PropertyReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def all_maps(n: int) -> list[tuple[int, ...]]:
    """Every transformation of degree n as an image tuple, lexicographic."""
    maps = [()]
    for _ in range(n):
        maps = [m + (q,) for m in maps for q in range(1, n + 1)]
    return maps


def exhaustive_generator_sets(n: int, k_max: int) -> Iterator[GeneratorSet]:
    """All generator tuples of degree n with 1..k_max generators, in order."""
    maps = all_maps(n)
    for k in range(1, k_max + 1):
        for combo in _tuples(maps, k):
            yield GeneratorSet.from_maps(list(combo))


def _tuples(pool, k):
    if k == 1:
        for m in pool:
            yield (m,)
        return
    for rest in _tuples(pool, k - 1):
        for m in pool:
            yield rest + (m,)


def seeded_instances(seed: int, samples: int, n_max: int,
                     k_max: int) -> Iterator[GeneratorSet]:
    """Reproducible random stream of generator sets."""
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(1, n_max)
        k = rng.randint(1, k_max)
        maps = [tuple(rng.randint(1, n) for _ in range(n)) for _ in range(k)]
        yield GeneratorSet.from_maps(maps)


def check_instance(gens: GeneratorSet,
                   table: ElementTable | None = None,
                   properties: Iterable[str] | None = None,
                   cap: int = DEFAULT_CAP,
                   collect_reports: bool = False) -> InstanceResult:
    """Run both engines on one instance and record any disagreement."""
    if table is None:
        table = enumerate_semigroup(gens, cap)
    wanted = set(properties) if properties is not None else None
    result = InstanceResult(gens=gens, digest=instance_digest(gens),
                            element_count=len(table), verdicts={})

    for name, structural, oracle_key in PROPERTY_PAIRS:
        if wanted is not None and name not in wanted:
            continue
        s_report = structural(gens)
        o_report = definitional_check(table, oracle_key)
        result.verdicts[name] = {
            "structural": s_report.verdict.value,
            "oracle": o_report.verdict.value,
        }
        if s_report.verdict.value != o_report.verdict.value:
            result.mismatches.append(name)
        if collect_reports:
            result.reports.extend((s_report, o_report))

    for name, structural_list, oracle_list in (
            ("left-identities", left_identities, left_identity_indices),
            ("right-identities", right_identities, right_identity_indices)):
        if wanted is not None and name not in wanted:
            continue
        ours = {t.map for t, _ in structural_list(gens)}
        theirs = {tuple(table.element(i).map) for i in oracle_list(table)}
        result.verdicts[name] = {
            "structural": "TRUE" if ours else "FALSE",
            "oracle": "TRUE" if theirs else "FALSE",
        }
        if ours != theirs:
            result.mismatches.append(name)

    return result


def run_sweep(instances: Iterable[GeneratorSet],
              properties: Iterable[str] | None = None,
              cap: int = DEFAULT_CAP) -> dict:
    """Check a stream of instances; summary is JSON-ready and timing-free."""
    totals: dict[str, dict[str, int]] = {}
    mismatch_records = []
    count = 0
    largest = 0
    for gens in instances:
        count += 1
        res = check_instance(gens, properties=properties, cap=cap)
        largest = max(largest, res.element_count)
        for name, pair in res.verdicts.items():
            bucket = totals.setdefault(name, {})
            key = pair["oracle"]
            bucket[key] = bucket.get(key, 0) + 1
        for name in res.mismatches:
            mismatch_records.append({
                "digest": res.digest,
                "generators": render_generators(gens),
                "property": name,
                "structural": res.verdicts[name]["structural"],
                "oracle": res.verdicts[name]["oracle"],
            })
    return {
        "instances": count,
        "largest_semigroup": largest,
        "verdict_counts": totals,
        "disagreements": len(mismatch_records),
        "mismatches": mismatch_records,
    }
