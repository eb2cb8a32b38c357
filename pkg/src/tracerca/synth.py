"""Synthetic trace corpora for benchmarks and linking experiments.

Generates groups of noise traces with configurable size, median length, and
vocabulary, then plants signal patterns (in-order event subsequences) into a
fraction of the traces. Planted patterns are what analysis should surface,
so a corpus with known signal doubles as a ground-truth fixture.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

PlantedPattern = tuple[tuple[str, ...], float]


@dataclass(frozen=True, slots=True)
class CorpusSpec:
    """Shape of one synthetic group pair."""

    name: str
    traces_per_group: int
    median_len: int
    vocab_size: int
    min_support: float
    max_len: int = 5
    test_planted: tuple[PlantedPattern, ...] = ()
    shared_planted: tuple[PlantedPattern, ...] = ()


def _signal(tag: str, length: int = 3) -> tuple[str, ...]:
    return tuple(f"sig-{tag}-{chr(ord('a') + i)}" for i in range(length))


# Difficulty presets mirror the benchmark grid the miner has to sustain:
# easy 3000 traces / median length 20 / support 5%, medium 10000 / 40 /
# 2.75%, hard 20000 / 70 / 1%. Each plants a few distinctive patterns into
# the test group and one background pattern into both groups.
PRESETS: dict[str, CorpusSpec] = {
    name: CorpusSpec(
        name=name,
        traces_per_group=traces,
        median_len=length,
        vocab_size=200,
        min_support=support,
        test_planted=(
            (_signal(f"{name}1"), 0.5),
            (_signal(f"{name}2"), 0.3),
            (_signal(f"{name}3", 2), 0.15),
        ),
        shared_planted=((_signal(f"{name}bg", 2), 0.2),),
    )
    for name, traces, length, support in (
        ("easy", 3000, 20, 0.05),
        ("medium", 10_000, 40, 0.0275),
        ("hard", 20_000, 70, 0.01),
    )
}


def _noise_trace(rng: random.Random, median_len: int, vocab_size: int) -> list[str]:
    length = max(1, round(rng.gauss(median_len, median_len / 5)))
    return [f"ev{rng.randrange(vocab_size):03d}" for _ in range(length)]


def _plant(rng: random.Random, events: list[str], pattern: tuple[str, ...]) -> list[str]:
    """Insert pattern events in order at random slots of the final trace."""
    total = len(events) + len(pattern)
    slots = set(rng.sample(range(total), len(pattern)))
    out: list[str] = []
    noise = iter(events)
    planted = iter(pattern)
    for position in range(total):
        out.append(next(planted) if position in slots else next(noise))
    return out


def generate_group_records(
    rng: random.Random,
    n_traces: int,
    median_len: int,
    vocab_size: int,
    planted: tuple[PlantedPattern, ...] = (),
    id_prefix: str = "t",
) -> list[dict]:
    records = []
    for i in range(n_traces):
        events = _noise_trace(rng, median_len, vocab_size)
        for pattern, probability in planted:
            if rng.random() < probability:
                events = _plant(rng, events, pattern)
        records.append({"id": f"{id_prefix}{i:06d}", "events": events})
    return records


def generate_corpus(spec: CorpusSpec, seed: int) -> tuple[list[dict], list[dict]]:
    """Test and control record lists for one corpus spec, reproducibly."""
    rng = random.Random(seed)
    test = generate_group_records(
        rng,
        spec.traces_per_group,
        spec.median_len,
        spec.vocab_size,
        spec.test_planted + spec.shared_planted,
        id_prefix="test-",
    )
    control = generate_group_records(
        rng,
        spec.traces_per_group,
        spec.median_len,
        spec.vocab_size,
        spec.shared_planted,
        id_prefix="ctrl-",
    )
    return test, control


@dataclass(frozen=True, slots=True)
class LinkingRegression:
    regression_id: str
    cause: int
    test_records: list[dict] = field(hash=False)
    control_records: list[dict] = field(hash=False)


def generate_linking_suite(
    n_causes: int = 10,
    per_cause: int = 3,
    traces_per_group: int = 150,
    median_len: int = 12,
    vocab_size: int = 60,
    planted_probability: float = 0.9,
    seed: int = 7,
) -> list[LinkingRegression]:
    """Regressions in groups that share a planted dominant pattern.

    Every regression gets its own independent noise; regressions of the same
    cause share one dominant three-event pattern planted into most test
    traces. The ground-truth partition is the ``cause`` field.
    """
    rng = random.Random(seed)
    suite = []
    for cause in range(n_causes):
        pattern = _signal(f"cause{cause:02d}")
        for k in range(per_cause):
            rid = f"reg-{cause:02d}-{k}"
            test = generate_group_records(
                rng, traces_per_group, median_len, vocab_size,
                ((pattern, planted_probability),), id_prefix=f"{rid}-t",
            )
            control = generate_group_records(
                rng, traces_per_group, median_len, vocab_size,
                (), id_prefix=f"{rid}-c",
            )
            suite.append(LinkingRegression(rid, cause, test, control))
    return suite
