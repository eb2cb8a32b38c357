import random

import pytest

from tracerca.traces import GroupRole, Trace, TraceGroup, Vocabulary

# The worked two-group example used across the suite: five test traces where
# the problem occurred and five control traces where it did not, over eight
# events. Expected mining and ranking results for it are frozen in the tests.
WORKED_TEST = {
    "t1": ("e1", "e2", "e3", "e4"),
    "t2": ("e1", "e2", "e3"),
    "t3": ("e2", "e3"),
    "t4": ("e5", "e6", "e7", "e8"),
    "t5": ("e5", "e7"),
}
WORKED_CONTROL = {
    "t6": ("e1", "e2", "e4"),
    "t7": ("e1", "e3", "e4"),
    "t8": ("e1", "e3"),
    "t9": ("e6", "e7"),
    "t10": ("e5", "e6", "e8"),
}


def make_group(vocab: Vocabulary, role: GroupRole, sequences: dict) -> TraceGroup:
    traces = [
        Trace(trace_id, tuple(vocab.intern(label).id for label in labels))
        for trace_id, labels in sequences.items()
    ]
    return TraceGroup(role=role, traces=traces, vocab=vocab)


@pytest.fixture
def worked_groups() -> tuple[TraceGroup, TraceGroup]:
    vocab = Vocabulary(f"e{i}" for i in range(1, 9))
    test = make_group(vocab, GroupRole.TEST, WORKED_TEST)
    control = make_group(vocab, GroupRole.CONTROL, WORKED_CONTROL)
    return test, control


def worked_records(sequences: dict) -> list[dict]:
    return [{"id": tid, "events": list(evs)} for tid, evs in sequences.items()]


def random_group(
    rng: random.Random,
    vocab: Vocabulary,
    role: GroupRole,
    id_prefix: str,
    max_traces: int = 20,
    max_trace_len: int = 10,
) -> TraceGroup:
    n_events = len(vocab)
    traces = []
    for i in range(rng.randint(1, max_traces)):
        length = rng.randint(1, max_trace_len)
        traces.append(
            Trace(
                f"{id_prefix}{i}",
                tuple(rng.randrange(n_events) for _ in range(length)),
            )
        )
    return TraceGroup(role=role, traces=traces, vocab=vocab)
