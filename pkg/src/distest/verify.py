"""Named verification suites: each runs a property set against its stated
bounds and returns a VerificationReport (nonzero CLI exit iff any row fails).

Suites: toolbox, cutpaste, sdpi, distributed-sdpi, transport, sawtooth,
gapmajority.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .blackboard import (
    EnumerableProtocol,
    conditional_mutual_info_input,
    cut_paste_check,
    full_input_transcript_mi,
    hellinger_decomposition_report,
    laws_for_vector,
    lemma_info_hellinger_slack,
    random_enumerable_protocol,
    transcript_distribution,
    transcript_distribution_factored,
)
from .distributions import (
    ChannelPair,
    DiscreteDistribution,
    JointDistribution,
    bernoulli,
    binary_entropy_nats,
    chi_squared,
    hellinger_sq,
    kl_divergence,
    mutual_information,
    total_variation,
)
from .errors import ConfigurationError
from .gapmajority import gap_majority_bias, gap_majority_broadcast, gap_majority_make
from .infotheory import (
    discretize_truncated_gaussian,
    log_concavity_margin,
    posterior_lipschitz_scan,
    sdpi_constant,
    sdpi_ratio,
    transportation_slack,
    truncated_gaussian_mixture_neg_log_density,
    wasserstein1_grid,
)
from .reports import CheckRow, VerificationReport
from .rng import RngStream
from .sawtooth import frac_vec, hprime_restricted_scan, sawtooth_h, sawtooth_h_vec
from .sawtooth_protocol import protocol3_condition_select

#: Corpus minimum of sum_i h^2(Pi_0, Pi_e_i) / h^2(Pi_0, Pi_1) over the frozen
#: 100-protocol corpus (seed 20260801, m in {2,3,4}); regression value measured
#: by the enumerator itself, not a theorem constant.
HELLINGER_RATIO_FLOOR = 0.97
#: Exclusion radius pairs for the smoothed-sawtooth derivative scan: the
#: coordinator's condition region (3/100) carries the 3e-9 floor; the wider
#: 1/50 region's honestly measured floor is frozen as a regression value.
HPRIME_FLOOR_CONDITION_REGION = 3e-9
HPRIME_FLOOR_WIDE_REGION = 2.10e-9

_CORPUS_SEED_DEFAULT = 20260801


def _protocol_corpus(
    seed: int, count: int, ms: tuple[int, ...] = (2, 3, 4), max_depth: int = 5
) -> list[EnumerableProtocol]:
    rng = RngStream(seed)
    out = []
    for i in range(count):
        m = ms[i % len(ms)]
        out.append(random_enumerable_protocol(m, max_depth, rng.substream(i)))
    return out


def _random_distribution(rng: RngStream, size: int) -> DiscreteDistribution:
    w = rng.generator.dirichlet(np.ones(size))
    # Dirichlet mass is positive a.s.; renormalize defensively.
    return DiscreteDistribution(tuple(range(size)), w / w.sum())


# ---------------------------------------------------------------------------
# toolbox
# ---------------------------------------------------------------------------


def _suite_toolbox(seed: int, budget: int) -> list[CheckRow]:
    rng = RngStream(seed)
    n_inst = max(10, budget)
    tol = 1e-10

    hell_tv_lo = math.inf
    hell_tv_hi = math.inf
    kl_chi = math.inf
    r1 = rng.substream(0)
    for _ in range(n_inst):
        s = int(r1.integers(2, 7))
        p = _random_distribution(r1, s)
        q = _random_distribution(r1, s)
        h2 = hellinger_sq(p, q)
        tv = total_variation(p, q)
        hell_tv_lo = min(hell_tv_lo, tv - h2)
        hell_tv_hi = min(hell_tv_hi, math.sqrt(2.0) * math.sqrt(h2) - tv)
        kl_chi = min(kl_chi, chi_squared(p, q) - kl_divergence(p, q))

    info_lower = math.inf
    info_upper = math.inf
    r2 = rng.substream(1)
    for _ in range(n_inst):
        s = int(r2.integers(2, 7))
        phi1 = _random_distribution(r2, s)
        phi2 = _random_distribution(r2, s)
        joint = JointDistribution(
            (0, 1), tuple(range(s)), np.vstack([phi1.probs, phi2.probs]) / 2.0
        )
        info = mutual_information(joint)
        h2 = hellinger_sq(phi1, phi2)
        info_lower = min(info_lower, info - h2)
        info_upper = min(info_upper, 2.0 * h2 - info)

    continuity = math.inf
    r3 = rng.substream(2)
    for _ in range(n_inst):
        s = int(r3.integers(2, 6))
        t = int(r3.integers(2, 6))
        mu_prime = _random_distribution(r3, s)
        rho = _random_distribution(r3, s)
        c = float(r3.uniform(0.05, 1.0))
        mu = DiscreteDistribution(
            tuple(range(s)), c * mu_prime.probs + (1.0 - c) * rho.probs
        )
        channel = r3.generator.dirichlet(np.ones(t), size=s)
        i_mu = mutual_information(
            JointDistribution(tuple(range(s)), tuple(range(t)), mu.probs[:, None] * channel)
        )
        i_mu_prime = mutual_information(
            JointDistribution(
                tuple(range(s)), tuple(range(t)), mu_prime.probs[:, None] * channel
            )
        )
        continuity = min(continuity, i_mu - c * i_mu_prime)

    additivity = math.inf
    r4 = rng.substream(3)
    for j in range(max(10, budget // 5)):
        m = 2 + (j % 2)
        protocol = random_enumerable_protocol(m, 4, r4.substream(j))
        mus = [_random_distribution(r4, 2) for _ in range(m)]
        total = full_input_transcript_mi(protocol, mus)
        parts = sum(conditional_mutual_info_input(protocol, mus, i) for i in range(m))
        additivity = min(additivity, total - parts)

    return [
        CheckRow.from_slack("hellinger-le-tv", hell_tv_lo, 0.0, hell_tv_lo, tol,
                            "tv - h^2 over random pairs"),
        CheckRow.from_slack("tv-le-sqrt2-hellinger", hell_tv_hi, 0.0, hell_tv_hi, tol,
                            "sqrt(2) h - tv over random pairs"),
        CheckRow.from_slack("kl-le-chi2", kl_chi, 0.0, kl_chi, tol,
                            "chi^2 - kl over random pairs"),
        CheckRow.from_slack("info-ge-hellinger", info_lower, 0.0, info_lower, tol,
                            "I - h^2 over random binary-hidden joints"),
        CheckRow.from_slack("info-le-2hellinger", info_upper, 0.0, info_upper, tol,
                            "2 h^2 - I over random binary-hidden joints"),
        CheckRow.from_slack("mi-continuity", continuity, 0.0, continuity, tol,
                            "I_mu - c I_mu' for mu >= c mu'"),
        CheckRow.from_slack("mi-additivity", additivity, 0.0, additivity, tol,
                            "I(X;Pi) - sum_i I(X_i;Pi), product inputs"),
    ]


# ---------------------------------------------------------------------------
# cutpaste
# ---------------------------------------------------------------------------


def _all_admissible_tuples(m: int):
    vectors = [tuple((j >> i) & 1 for i in range(m)) for j in range(1 << m)]
    for a in vectors:
        for b in vectors:
            for mask in range(1 << m):
                c = tuple(b[i] if (mask >> i) & 1 else a[i] for i in range(m))
                d = tuple(a[i] if (mask >> i) & 1 else b[i] for i in range(m))
                yield a, b, c, d


def _suite_cutpaste(seed: int, budget: int) -> list[CheckRow]:
    rng = RngStream(seed)
    n_protocols = max(5, budget)
    worst_dev = 0.0
    worst_sum = 0.0
    for idx in range(n_protocols):
        m = (2, 3, 4)[idx % 3]
        protocol = random_enumerable_protocol(m, 5, rng.substream(idx))
        p0 = float(rng.uniform(0.05, 0.95))
        p1 = float(rng.uniform(0.05, 0.95))
        cp = ChannelPair(bernoulli(p0), bernoulli(p1))
        leaves = protocol.leaves
        arrays = {}
        for j in range(1 << m):
            vec = tuple((j >> i) & 1 for i in range(m))
            dist = transcript_distribution(protocol, laws_for_vector(cp, vec), vec)
            arrays[vec] = dist.as_array(leaves)
            worst_sum = max(worst_sum, abs(math.fsum(dist.entries.values()) - 1.0))
        for a, b, c, d in _all_admissible_tuples(m):
            dev = float(np.max(np.abs(arrays[a] * arrays[b] - arrays[c] * arrays[d])))
            worst_dev = max(worst_dev, dev)

    worst_fact = 0.0
    r2 = rng.substream(10**6)
    for j in range(min(20, n_protocols)):
        m = (2, 3)[j % 2]
        protocol = random_enumerable_protocol(m, 5, r2.substream(j))
        mus = [_random_distribution(r2, 2) for _ in range(m)]
        brute = transcript_distribution(protocol, mus)
        fact = transcript_distribution_factored(protocol, mus)
        for leaf in protocol.leaves:
            worst_fact = max(
                worst_fact, abs(brute.entries[leaf] - fact.entries[leaf])
            )

    return [
        CheckRow.from_slack("cut-paste-max-deviation", worst_dev, 1e-12,
                            1e-12 - worst_dev, 0.0, "max |Pi_a Pi_b - Pi_c Pi_d|"),
        CheckRow.from_slack("transcript-prob-sums", worst_sum, 1e-12,
                            1e-12 - worst_sum, 0.0, "max |sum Pi_b - 1|"),
        CheckRow.from_slack("per-machine-factorization", worst_fact, 1e-12,
                            1e-12 - worst_fact, 0.0,
                            "tuple-sum vs product-form transcript laws"),
    ]


# ---------------------------------------------------------------------------
# sdpi
# ---------------------------------------------------------------------------


def _suite_sdpi(seed: int, budget: int) -> list[CheckRow]:
    del seed  # deterministic suite
    rows = []
    eps = 0.1
    bsc = ChannelPair(bernoulli(0.5 - eps), bernoulli(0.5 + eps))
    est = sdpi_constant(bsc, grid_points=max(256, budget), refine_iters=16)
    rows.append(CheckRow.from_slack(
        "bsc-beta-lower-edge", est.beta_lower, 0.036, est.beta_lower - 0.036, 0.0,
        "dense scan lower bound vs 0.9 * 4 eps^2"))
    rows.append(CheckRow.from_slack(
        "bsc-beta-upper-edge", est.beta_lower, 0.0401, 0.0401 - est.beta_lower, 0.0,
        "lower bound stays under 4 eps^2"))
    rows.append(CheckRow.from_slack(
        "bsc-argmax-reproduces", abs(sdpi_ratio(bsc, est.argmax_nu) - est.beta_lower),
        1e-10, 1e-10 - abs(sdpi_ratio(bsc, est.argmax_nu) - est.beta_lower), 0.0,
        "ratio at argmax_nu vs beta_lower"))

    mono_ok = math.inf
    prev = -1.0
    for grid in (8, 16, 64, 256):
        b = sdpi_constant(bsc, grid_points=grid, refine_iters=8).beta_lower
        mono_ok = min(mono_ok, b - prev)
        prev = b
    rows.append(CheckRow.from_slack(
        "beta-monotone-in-grid", mono_ok, 0.0, mono_ok, 0.0,
        "beta_lower nondecreasing in grid_points"))

    delta, sigma, tau = 0.1, 1.0, 20.0
    pair = discretize_truncated_gaussian(delta, sigma, tau, 2000)
    est_g = sdpi_constant(pair, grid_points=64, refine_iters=16)
    bound = delta**2 / sigma**2
    rows.append(CheckRow.from_slack(
        "truncated-gaussian-beta-upper", est_g.beta_lower, bound,
        bound - est_g.beta_lower, 0.0, "beta_lower <= delta^2/sigma^2"))
    rows.append(CheckRow.from_slack(
        "truncated-gaussian-beta-positive", est_g.beta_lower, 1e-8,
        est_g.beta_lower - 1e-8, 0.0, "nondegenerate pair has positive beta"))
    rows.append(CheckRow.from_slack(
        "domination-ratio-finite", pair.domination_ratio,
        math.exp((2 * tau * delta + delta**2) / (2 * sigma**2)),
        math.exp((2 * tau * delta + delta**2) / (2 * sigma**2)) - pair.domination_ratio,
        1e-9, "c <= exp((2 tau delta + delta^2)/(2 sigma^2)) * norm ratio"))
    lip = posterior_lipschitz_scan(pair)
    lip_bound = delta / (4.0 * sigma**2) * 1.01
    rows.append(CheckRow.from_slack(
        "posterior-lipschitz", lip, lip_bound, lip_bound - lip, 0.0,
        "max posterior slope vs delta/(4 sigma^2) * 1.01"))
    return rows


# ---------------------------------------------------------------------------
# distributed-sdpi
# ---------------------------------------------------------------------------


def _suite_distributed_sdpi(seed: int, budget: int) -> list[CheckRow]:
    eps = 0.1
    cp = ChannelPair(bernoulli(0.5 - eps), bernoulli(0.5 + eps))
    beta = 4.0 * eps * eps
    c = cp.domination_ratio
    corpus = _protocol_corpus(seed, max(10, budget))

    min_slack = math.inf
    min_ratio = math.inf
    implied_k = 0.0
    for protocol in corpus:
        m = protocol.m
        for i in range(m):
            min_slack = min(
                min_slack, lemma_info_hellinger_slack(protocol, cp, i, beta=beta)
            )
        rep = hellinger_decomposition_report(protocol, cp.mu0, cp.mu1)
        if rep.ratio_defined:
            min_ratio = min(min_ratio, rep.ratio)
            mus0 = [cp.mu0] * m
            info = full_input_transcript_mi(protocol, mus0)
            if info > 1e-12:
                implied_k = max(implied_k, rep.total / ((c + 1.0) * beta * info))

    return [
        CheckRow.from_slack(
            "single-flip-info-bound", min_slack, 0.0, min_slack, 1e-9,
            "min slack of h^2(Pi_ei,Pi_0) <= (c+1)beta/2 I(X_i;Pi|V=0)"),
        CheckRow.from_slack(
            "hellinger-decomposition-floor", min_ratio, HELLINGER_RATIO_FLOOR,
            min_ratio - HELLINGER_RATIO_FLOOR, 1e-12,
            "corpus min of sum_i h^2(Pi_0,Pi_ei)/h^2(Pi_0,Pi_1)"),
        CheckRow.from_slack(
            "hellinger-decomposition-positive", min_ratio, 0.0,
            min_ratio - 1e-15, 0.0, "sum of single-flip terms bounds end-to-end"),
        CheckRow.from_slack(
            "implied-distributed-constant", implied_k, implied_k, 0.0, 0.0,
            "reported, not asserted: h^2 / ((c+1) beta I)"),
    ]


# ---------------------------------------------------------------------------
# transport
# ---------------------------------------------------------------------------


def _random_transport_nus(mu: DiscreteDistribution, rng: RngStream, count: int):
    x = mu.positions
    n = mu.size
    for j in range(count):
        kind = j % 4
        if kind == 0:
            s = float(rng.uniform(-3.0, 3.0))
            w = mu.probs * np.exp(s * x)
        elif kind == 1:
            w = mu.probs * (1.0 + 0.5 * rng.uniform(-1.0, 1.0, n))
        elif kind == 2:
            w = np.zeros(n)
            w[int(rng.integers(0, n))] = 1.0
        else:
            shift = float(rng.uniform(-2.0, 2.0))
            w = np.exp(-((x - shift) ** 2) / 2.0)
        yield DiscreteDistribution(mu.support, w / w.sum(), x)


def _suite_transport(seed: int, budget: int) -> list[CheckRow]:
    rng = RngStream(seed)
    sigma, tau, grid = 1.0, 20.0, 2000
    pair = discretize_truncated_gaussian(0.0, sigma, tau, grid)
    mu = pair.mu0
    c = 1.0 / sigma**2

    min_slack = math.inf
    for nu in _random_transport_nus(mu, rng, max(20, budget)):
        min_slack = min(min_slack, transportation_slack(nu, mu, c))
    edge = np.zeros(mu.size)
    edge[-1] = 1.0
    nu_edge = DiscreteDistribution(mu.support, edge, mu.positions)
    edge_slack = transportation_slack(nu_edge, mu, c)
    self_slack = transportation_slack(mu, mu, c)

    u_mix, dx = truncated_gaussian_mixture_neg_log_density(0.1, sigma, tau, grid)
    margin = log_concavity_margin(u_mix, dx)
    margin_bound = 0.5 / sigma**2 - 0.01

    u_pure = (mu.positions**2) / (2.0 * sigma**2)
    pure_margin = log_concavity_margin(u_pure, float(mu.positions[1] - mu.positions[0]))

    return [
        CheckRow.from_slack("transport-random-nus", min_slack, 0.0, min_slack, 1e-6,
                            "(2/c) KL - w1^2 over random nus"),
        CheckRow.from_slack("transport-edge-point-mass", edge_slack, 0.0, edge_slack,
                            1e-6, "point mass at the grid edge"),
        CheckRow.from_slack("transport-self", abs(self_slack), 0.0, -abs(self_slack),
                            1e-12, "nu = mu gives zero slack"),
        CheckRow.from_slack("mixture-log-concavity-margin", margin, margin_bound,
                            margin - margin_bound, 0.0,
                            "curvature of the delta=0.1 mixture vs c/2 - 0.01"),
        CheckRow.from_slack("quadratic-curvature", abs(pure_margin - 1.0 / sigma**2),
                            1e-6, 1e-6 - abs(pure_margin - 1.0 / sigma**2), 0.0,
                            "exact quadratic recovers 1/sigma^2"),
    ]


# ---------------------------------------------------------------------------
# sawtooth
# ---------------------------------------------------------------------------


def _suite_sawtooth(seed: int, budget: int) -> list[CheckRow]:
    rng = RngStream(seed)
    n_grid = max(1000, budget)
    lo_cond, hi_cond = hprime_restricted_scan(n_grid, 3.0 / 100.0)
    lo_wide, hi_wide = hprime_restricted_scan(n_grid, 1.0 / 50.0)

    # Dyadic grid so x+1 is exactly representable and periodicity is exact.
    k = np.arange(10_000, dtype=np.float64)
    xs = k / 16384.0
    period_dev = float(np.max(np.abs(sawtooth_h_vec(xs + 1.0) - sawtooth_h_vec(xs))))

    sweep = rng.uniform(0.0, 10.0, 100_000)
    cases_ok = True
    try:
        for g in sweep:
            protocol3_condition_select(float(g))
    except Exception:
        cases_ok = False

    draws = rng.normal(0.5, 1.0, 1_000_000)
    emp = float(np.mean(frac_vec(draws)))
    pred = 0.5 - sawtooth_h(0.5) / math.pi
    se = float(np.std(frac_vec(draws), ddof=1) / math.sqrt(draws.size))

    return [
        CheckRow.from_slack("hprime-floor-condition-region", lo_cond,
                            HPRIME_FLOOR_CONDITION_REGION,
                            lo_cond - HPRIME_FLOOR_CONDITION_REGION, 0.0,
                            "min |h'| where |frac-1/4|,|frac-3/4| >= 3/100"),
        CheckRow.from_slack("hprime-floor-wide-region", lo_wide,
                            HPRIME_FLOOR_WIDE_REGION,
                            lo_wide - HPRIME_FLOOR_WIDE_REGION, 0.0,
                            "min |h'| where |frac-1/4|,|frac-3/4| >= 1/50 (regression)"),
        CheckRow.from_slack("hprime-upper", max(hi_cond, hi_wide), 1.0,
                            1.0 - max(hi_cond, hi_wide), 0.0, "max |h'| <= 1"),
        CheckRow.from_slack("h-periodicity", period_dev, 1e-30, 1e-30 - period_dev,
                            0.0, "h(x+1) = h(x) on a dyadic grid"),
        CheckRow.from_slack("condition-selection-total", 1.0 if cases_ok else 0.0,
                            1.0, 0.0 if cases_ok else -1.0, 0.0,
                            "a decoding case exists for 1e5 gammas in [0,10)"),
        CheckRow.from_slack("gaussian-frac-identity", abs(emp - pred), 4.0 * se,
                            4.0 * se - abs(emp - pred), 0.0,
                            "E[frac(X)] = 1/2 - h(theta)/pi within 4 SE"),
    ]


# ---------------------------------------------------------------------------
# gapmajority
# ---------------------------------------------------------------------------


def _suite_gapmajority(seed: int, budget: int) -> list[CheckRow]:
    rng = RngStream(seed)
    k = 400
    trials = max(100, budget)
    errors = 0
    info = None
    for t in range(trials):
        hidden = t % 2
        inst = gap_majority_make(k, hidden, rng.substream(t))
        decision, bits, info_cost = gap_majority_broadcast(inst)
        if bits != k:
            errors = trials
            break
        if decision != hidden:
            errors += 1
        info = info_cost
    eps = gap_majority_bias(k)
    p = 0.5 - eps
    closed = k * binary_entropy_nats(p)
    err_rate = errors / trials
    return [
        CheckRow.from_slack("decision-error-rate", err_rate, 0.25, 0.25 - err_rate,
                            0.0, f"broadcast majority at k={k}"),
        CheckRow.from_slack("info-cost-closed-form", abs(info - closed), 1e-12,
                            1e-12 - abs(info - closed), 0.0,
                            "k * H(B_{1/2 - 10/sqrt(k)})"),
    ]


_SUITES: dict[str, tuple[Callable[[int, int], list[CheckRow]], int]] = {
    "toolbox": (_suite_toolbox, 1000),
    "cutpaste": (_suite_cutpaste, 100),
    "sdpi": (_suite_sdpi, 256),
    "distributed-sdpi": (_suite_distributed_sdpi, 50),
    "transport": (_suite_transport, 200),
    "sawtooth": (_suite_sawtooth, 1_000_000),
    "gapmajority": (_suite_gapmajority, 1000),
}


def suite_names() -> list[str]:
    return sorted(_SUITES)


def verify_suite(name: str, seed: int = 1, budget: int | None = None) -> VerificationReport:
    """Run one named suite; budget scales the instance counts."""
    if name not in _SUITES:
        raise ConfigurationError(
            f"unknown suite {name!r}; choose from {', '.join(suite_names())}"
        )
    fn, default_budget = _SUITES[name]
    b = default_budget if budget is None else budget
    rows = fn(seed, b)
    return VerificationReport(name, rows, {"seed": seed, "budget": b})
