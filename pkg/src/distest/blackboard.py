"""Blackboard communication model with exact bit accounting, plus an
exhaustive enumerator for small discrete protocols.

A protocol's schedule maps each public transcript prefix to the machine that
writes the next bit (or to nothing: the transcript halts). The speaker order
therefore depends only on public information, which is what makes the
transcript distribution factor per machine:

    Pr[Pi = pi | X = x] = p_{1,pi}(x_1) ... p_{m,pi}(x_m)

and consequently gives the cut-paste identity
Pi_a(pi) Pi_b(pi) = Pi_c(pi) Pi_d(pi) whenever {a_i,b_i} = {c_i,d_i} per
coordinate. The enumerator computes transcript distributions exactly by
summing path products over all input tuples, which is what the checkers in
this module verify against.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .distributions import (
    ChannelPair,
    DiscreteDistribution,
    JointDistribution,
    hellinger_sq_arrays,
    mutual_information,
)
from .errors import (
    DomainError,
    EnumerationBudgetError,
    ProtocolViolationError,
)
from .rng import RngStream

ENUMERATION_BUDGET = 10_000_000
RATIO_DENOMINATOR_FLOOR = 1e-15


# ---------------------------------------------------------------------------
# Executable model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BitTranscript:
    bits: str
    authorship: tuple[tuple[int, int], ...]  # (machine index, bit index)

    def __post_init__(self) -> None:
        if len(self.authorship) != len(self.bits):
            raise DomainError("authorship must cover every bit exactly once")

    def __len__(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class Machine:
    """behavior(local_input, transcript_so_far, private_rng, public_rng) -> bits.

    The runner passes nothing else, so a behavior can only read its own input
    and the public blackboard.
    """

    index: int
    behavior: Callable[[Any, str, RngStream, RngStream], str]


def run_protocol(
    machines: Sequence[Machine],
    inputs: Sequence[Any],
    schedule: Callable[[str], int | None],
    rng: RngStream,
    max_bits: int = 1_000_000,
) -> tuple[BitTranscript, int]:
    """Execute a blackboard protocol; returns the transcript and its exact
    bit count. Machines draw private randomness from per-machine substreams
    and share a public substream, per the master seeding scheme."""
    if len(inputs) != len(machines):
        raise DomainError("one input per machine required")
    m = len(machines)
    private = [rng.substream(i) for i in range(m)]
    public = rng.substream(m)
    transcript = ""
    authorship: list[tuple[int, int]] = []
    while True:
        speaker = schedule(transcript)
        if speaker is None:
            break
        if not 0 <= speaker < m:
            raise ProtocolViolationError(f"schedule names machine {speaker} of {m}")
        msg = machines[speaker].behavior(
            inputs[speaker], transcript, private[speaker], public
        )
        if not msg:
            raise ProtocolViolationError(
                f"machine {speaker} was scheduled but wrote nothing"
            )
        for bit in msg:
            if bit not in "01":
                raise ProtocolViolationError(f"non-bit message {msg!r}")
            due = schedule(transcript)
            if due != speaker:
                raise ProtocolViolationError(
                    f"machine {speaker} wrote while machine {due} was scheduled"
                )
            transcript += bit
            authorship.append((speaker, len(transcript) - 1))
            if len(transcript) > max_bits:
                raise ProtocolViolationError("transcript exceeded max_bits")
    t = BitTranscript(transcript, tuple(authorship))
    return t, len(t)


# ---------------------------------------------------------------------------
# Enumerable protocols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnumerableProtocol:
    """Finite blackboard protocol over small input alphabets.

    schedule maps a transcript prefix to the speaking machine; prefixes absent
    from the map are halted leaves. message_law[(prefix, letter)] is the
    probability that the scheduled machine emits bit 1 given its own input
    letter.
    """

    m: int
    alphabet_sizes: tuple[int, ...]
    schedule: dict[str, int]
    message_law: dict[tuple[str, int], float]
    _leaves: tuple[str, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.alphabet_sizes) != self.m:
            raise DomainError("alphabet_sizes must have one entry per machine")
        for prefix, speaker in self.schedule.items():
            if not 0 <= speaker < self.m:
                raise DomainError(f"speaker {speaker} out of range at {prefix!r}")
            for cut in range(len(prefix)):
                if prefix[:cut] not in self.schedule:
                    raise DomainError(f"schedule is not prefix-closed at {prefix!r}")
            for letter in range(self.alphabet_sizes[speaker]):
                p1 = self.message_law.get((prefix, letter))
                if p1 is None or not 0.0 <= p1 <= 1.0:
                    raise DomainError(
                        f"message law missing/invalid at ({prefix!r}, {letter})"
                    )
        object.__setattr__(self, "_leaves", tuple(self._find_leaves()))

    def _find_leaves(self) -> list[str]:
        leaves: list[str] = []
        stack = [""]
        while stack:
            node = stack.pop()
            if node in self.schedule:
                stack.append(node + "1")
                stack.append(node + "0")
            else:
                leaves.append(node)
        return sorted(leaves)

    @property
    def leaves(self) -> tuple[str, ...]:
        return self._leaves

    @property
    def depth(self) -> int:
        return max((len(p) for p in self.leaves), default=0)

    def emit_probability(self, prefix: str, letter: int, bit: str) -> float:
        p1 = self.message_law[(prefix, letter)]
        return p1 if bit == "1" else 1.0 - p1

    def path_product(self, leaf: str, machine: int, letter: int) -> float:
        """p_{machine, leaf}(letter): probability of machine's own bits along
        the leaf given its input letter."""
        prod = 1.0
        for cut in range(len(leaf)):
            prefix = leaf[:cut]
            if self.schedule[prefix] == machine:
                prod *= self.emit_probability(prefix, letter, leaf[cut])
        return prod

    def to_json(self) -> str:
        return json.dumps(
            {
                "m": self.m,
                "alphabet_sizes": list(self.alphabet_sizes),
                "schedule": {k: v for k, v in sorted(self.schedule.items())},
                "message_law": {
                    f"{prefix}:{letter}": p
                    for (prefix, letter), p in sorted(self.message_law.items())
                },
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "EnumerableProtocol":
        obj = json.loads(text)
        law = {}
        for key, p in obj["message_law"].items():
            prefix, _, letter = key.rpartition(":")
            law[(prefix, int(letter))] = float(p)
        return cls(
            int(obj["m"]),
            tuple(obj["alphabet_sizes"]),
            {k: int(v) for k, v in obj["schedule"].items()},
            law,
        )


@dataclass(frozen=True)
class TranscriptDistribution:
    entries: dict[str, float]
    input_vector_label: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        total = math.fsum(self.entries.values())
        if abs(total - 1.0) > 1e-12:
            raise DomainError(f"transcript probabilities sum to {total!r}")

    def as_array(self, leaves: Sequence[str]) -> np.ndarray:
        return np.array([self.entries.get(leaf, 0.0) for leaf in leaves])


def _check_input_laws(
    protocol: EnumerableProtocol, mus: Sequence[DiscreteDistribution]
) -> None:
    if len(mus) != protocol.m:
        raise DomainError("one input law per machine required")
    for i, mu in enumerate(mus):
        if mu.size != protocol.alphabet_sizes[i]:
            raise DomainError(
                f"input law {i} has {mu.size} letters, machine expects "
                f"{protocol.alphabet_sizes[i]}"
            )


def transcript_distribution(
    protocol: EnumerableProtocol,
    mus: Sequence[DiscreteDistribution],
    input_vector_label: tuple[int, ...] | None = None,
) -> TranscriptDistribution:
    """Exact transcript law under independent per-machine inputs, by summing
    path products over all input tuples."""
    _check_input_laws(protocol, mus)
    leaves = protocol.leaves
    n_tuples = 1
    for a in protocol.alphabet_sizes:
        n_tuples *= a
    if len(leaves) * n_tuples > ENUMERATION_BUDGET:
        raise EnumerationBudgetError(
            f"{len(leaves)} leaves x {n_tuples} input tuples exceeds the budget"
        )
    tuples = list(itertools.product(*[range(a) for a in protocol.alphabet_sizes]))
    tuple_w = np.array(
        [math.prod(mus[i].probs[x[i]] for i in range(protocol.m)) for x in tuples]
    )
    entries: dict[str, float] = {}
    # DFS carrying, per input tuple, the path probability of the prefix.
    stack: list[tuple[str, np.ndarray]] = [("", np.ones(len(tuples)))]
    while stack:
        prefix, w = stack.pop()
        if prefix not in protocol.schedule:
            entries[prefix] = float(np.dot(tuple_w, w))
            continue
        speaker = protocol.schedule[prefix]
        p1 = np.array([protocol.message_law[(prefix, x[speaker])] for x in tuples])
        stack.append((prefix + "1", w * p1))
        stack.append((prefix + "0", w * (1.0 - p1)))
    return TranscriptDistribution(entries, input_vector_label)


def transcript_distribution_factored(
    protocol: EnumerableProtocol, mus: Sequence[DiscreteDistribution]
) -> TranscriptDistribution:
    """Same law via the per-machine product form: for each leaf,
    prod_i q_{i,leaf} with q_{i,leaf} = sum_x mu_i(x) p_{i,leaf}(x).
    Cross-checks the tuple-sum enumerator."""
    _check_input_laws(protocol, mus)
    entries: dict[str, float] = {}
    for leaf in protocol.leaves:
        prob = 1.0
        for i in range(protocol.m):
            q = sum(
                mus[i].probs[x] * protocol.path_product(leaf, i, x)
                for x in range(protocol.alphabet_sizes[i])
            )
            prob *= q
        entries[leaf] = prob
    return TranscriptDistribution(entries)


def laws_for_vector(
    cp: ChannelPair, bvec: Sequence[int]
) -> list[DiscreteDistribution]:
    """Per-machine input laws mu_{b_i} for a 0/1 vector b."""
    return [cp.mu1 if b else cp.mu0 for b in bvec]


def cut_paste_check(
    protocol: EnumerableProtocol,
    mu0: DiscreteDistribution,
    mu1: DiscreteDistribution,
    a: Sequence[int],
    b: Sequence[int],
    c: Sequence[int],
    d: Sequence[int],
) -> float:
    """Max over transcripts of |Pi_a Pi_b - Pi_c Pi_d| for an admissible
    4-tuple ({a_i, b_i} = {c_i, d_i} per coordinate)."""
    m = protocol.m
    for vec in (a, b, c, d):
        if len(vec) != m or any(v not in (0, 1) for v in vec):
            raise DomainError("input vectors must be 0/1 of length m")
    for i in range(m):
        if sorted((a[i], b[i])) != sorted((c[i], d[i])):
            raise DomainError(f"multiset condition violated at coordinate {i}")
    cp = ChannelPair(mu0, mu1)
    leaves = protocol.leaves
    arrays = {}
    for vec in {tuple(a), tuple(b), tuple(c), tuple(d)}:
        dist = transcript_distribution(protocol, laws_for_vector(cp, vec), vec)
        arrays[vec] = dist.as_array(leaves)
    lhs = arrays[tuple(a)] * arrays[tuple(b)]
    rhs = arrays[tuple(c)] * arrays[tuple(d)]
    return float(np.max(np.abs(lhs - rhs)))


def _machine_leaf_products(
    protocol: EnumerableProtocol,
) -> dict[str, np.ndarray]:
    """For each leaf, the (m, max_alphabet) table of p_{i,leaf}(letter)."""
    out = {}
    for leaf in protocol.leaves:
        table = np.ones((protocol.m, max(protocol.alphabet_sizes)))
        for i in range(protocol.m):
            for letter in range(protocol.alphabet_sizes[i]):
                table[i, letter] = protocol.path_product(leaf, i, letter)
        out[leaf] = table
    return out


def input_transcript_joint(
    protocol: EnumerableProtocol,
    mus: Sequence[DiscreteDistribution],
    i: int,
) -> JointDistribution:
    """Exact joint law of (X_i, Pi) under independent inputs mus."""
    _check_input_laws(protocol, mus)
    if not 0 <= i < protocol.m:
        raise DomainError(f"machine index {i} out of range")
    leaves = protocol.leaves
    tables = _machine_leaf_products(protocol)
    a_i = protocol.alphabet_sizes[i]
    probs = np.zeros((a_i, len(leaves)))
    for col, leaf in enumerate(leaves):
        table = tables[leaf]
        rest = 1.0
        for j in range(protocol.m):
            if j == i:
                continue
            rest *= float(np.dot(mus[j].probs, table[j, : protocol.alphabet_sizes[j]]))
        probs[:, col] = mus[i].probs * table[i, :a_i] * rest
    return JointDistribution(tuple(range(a_i)), tuple(leaves), probs)


def conditional_mutual_info_input(
    protocol: EnumerableProtocol,
    mus: Sequence[DiscreteDistribution],
    i: int,
) -> float:
    """I(X_i; Pi) in nats under the product input law mus (exact)."""
    return mutual_information(input_transcript_joint(protocol, mus, i))


def full_input_transcript_mi(
    protocol: EnumerableProtocol, mus: Sequence[DiscreteDistribution]
) -> float:
    """I(X_1..X_m; Pi) in nats, exact, via the joint over input tuples."""
    _check_input_laws(protocol, mus)
    leaves = protocol.leaves
    tuples = list(itertools.product(*[range(a) for a in protocol.alphabet_sizes]))
    if len(leaves) * len(tuples) > ENUMERATION_BUDGET:
        raise EnumerationBudgetError("joint enumeration exceeds the budget")
    tables = _machine_leaf_products(protocol)
    probs = np.zeros((len(tuples), len(leaves)))
    tuple_w = np.array(
        [math.prod(mus[i].probs[x[i]] for i in range(protocol.m)) for x in tuples]
    )
    for col, leaf in enumerate(leaves):
        table = tables[leaf]
        cond = np.array(
            [
                math.prod(table[j, x[j]] for j in range(protocol.m))
                for x in tuples
            ]
        )
        probs[:, col] = tuple_w * cond
    joint = JointDistribution(tuple(range(len(tuples))), tuple(leaves), probs)
    return mutual_information(joint)


@dataclass(frozen=True)
class HellingerDecomposition:
    """Exact single-flip Hellinger terms against the end-to-end distance."""

    per_machine: tuple[float, ...]  # h^2(Pi_0, Pi_e_i)
    total: float  # h^2(Pi_0, Pi_1)
    ratio: float  # sum(per_machine) / total, +inf when total ~ 0
    ratio_defined: bool


def hellinger_decomposition_report(
    protocol: EnumerableProtocol,
    mu0: DiscreteDistribution,
    mu1: DiscreteDistribution,
) -> HellingerDecomposition:
    cp = ChannelPair(mu0, mu1)
    m = protocol.m
    leaves = protocol.leaves
    zero = tuple([0] * m)
    one = tuple([1] * m)
    pi0 = transcript_distribution(protocol, laws_for_vector(cp, zero), zero).as_array(leaves)
    pi1 = transcript_distribution(protocol, laws_for_vector(cp, one), one).as_array(leaves)
    per = []
    for i in range(m):
        e_i = tuple(1 if j == i else 0 for j in range(m))
        pie = transcript_distribution(protocol, laws_for_vector(cp, e_i), e_i).as_array(leaves)
        per.append(hellinger_sq_arrays(pi0, pie))
    total = hellinger_sq_arrays(pi0, pi1)
    if total < RATIO_DENOMINATOR_FLOOR:
        return HellingerDecomposition(tuple(per), total, math.inf, False)
    return HellingerDecomposition(tuple(per), total, sum(per) / total, True)


def symmetric_binary_beta_bound(cp: ChannelPair) -> float | None:
    """Exact SDPI constant 4 eps^2 for a symmetric binary pair
    (B_{1/2-eps}, B_{1/2+eps}); None if the pair is not of that form."""
    if cp.mu0.size != 2:
        return None
    p0 = float(cp.mu0.probs[1])
    p1 = float(cp.mu1.probs[1])
    if abs((p0 + p1) - 1.0) > 1e-12:
        return None
    eps = abs(p1 - 0.5)
    return 4.0 * eps * eps


def lemma_info_hellinger_slack(
    protocol: EnumerableProtocol,
    cp: ChannelPair,
    i: int,
    beta: float | None = None,
) -> float:
    """Slack of h^2(Pi_e_i, Pi_0) <= ((c+1) beta / 2) I(X_i; Pi | V=0).

    beta defaults to the exact closed form for symmetric binary pairs and to
    1.05x the numeric lower-bound estimate otherwise (the estimate certifies
    only a lower bound, so a safety factor stands in for the upper bound).
    """
    from .infotheory import sdpi_constant

    m = protocol.m
    if beta is None:
        beta = symmetric_binary_beta_bound(cp)
        if beta is None:
            beta = sdpi_constant(cp).beta_lower * 1.05
    c = cp.domination_ratio
    mus0 = [cp.mu0] * m
    info = conditional_mutual_info_input(protocol, mus0, i)
    leaves = protocol.leaves
    zero = tuple([0] * m)
    e_i = tuple(1 if j == i else 0 for j in range(m))
    pi0 = transcript_distribution(protocol, laws_for_vector(cp, zero), zero).as_array(leaves)
    pie = transcript_distribution(protocol, laws_for_vector(cp, e_i), e_i).as_array(leaves)
    h2 = hellinger_sq_arrays(pi0, pie)
    return ((c + 1.0) * beta / 2.0) * info - h2


def random_enumerable_protocol(
    m: int,
    max_depth: int,
    rng: RngStream,
    alphabet_size: int = 2,
    continue_prob: float = 0.6,
) -> EnumerableProtocol:
    """Random prefix-closed schedule with uniform message probabilities;
    deterministic given the stream."""
    if not 1 <= m <= 5:
        raise DomainError(f"m must be in [1, 5], got {m!r}")
    if not 0 <= max_depth <= 8:
        raise DomainError(f"max_depth must be in [0, 8], got {max_depth!r}")
    schedule: dict[str, int] = {}
    law: dict[tuple[str, int], float] = {}
    stack = [("", True)]
    while stack:
        prefix, force = stack.pop()
        if len(prefix) >= max_depth:
            continue
        if not force and rng.random() >= continue_prob:
            continue
        speaker = int(rng.integers(0, m))
        schedule[prefix] = speaker
        for letter in range(alphabet_size):
            law[(prefix, letter)] = float(rng.random())
        stack.append((prefix + "0", False))
        stack.append((prefix + "1", False))
    return EnumerableProtocol(m, tuple([alphabet_size] * m), schedule, law)
