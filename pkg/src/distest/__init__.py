"""distest: simulator and verification library for communication-bounded
distributed statistical estimation."""

from ._backend import backend_name
from .blackboard import (
    BitTranscript,
    EnumerableProtocol,
    HellingerDecomposition,
    Machine,
    TranscriptDistribution,
    conditional_mutual_info_input,
    cut_paste_check,
    full_input_transcript_mi,
    hellinger_decomposition_report,
    lemma_info_hellinger_slack,
    random_enumerable_protocol,
    run_protocol,
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
from .fixedpoint import FixedPointCode, decode_fixed_point, encode_fixed_point
from .gapmajority import (
    GapMajorityInstance,
    gap_majority_broadcast,
    gap_majority_make,
)
from .gme import (
    GaussianModel,
    run_gme_average,
    run_gme_dense,
    sign_decode,
    sign_encode,
)
from .infotheory import (
    SdpiEstimate,
    discretize_truncated_gaussian,
    log_concavity_margin,
    posterior_lipschitz_scan,
    reverse_channel,
    sdpi_constant,
    transportation_slack,
    truncated_gaussian_mixture_neg_log_density,
    wasserstein1_grid,
)
from .montecarlo import MseResult, mse_monte_carlo, tradeoff_sweep
from .reports import RunReport, TradeoffCurve, VerificationReport, emit
from .rng import RngStream
from .sampling import sample_gaussian, sample_truncated_gaussian
from .sawtooth import frac, sawtooth_h, sawtooth_h_prime
from .sawtooth_protocol import (
    Protocol3Params,
    protocol3_condition_select,
    protocol3_decode,
    protocol3_machine,
    protocol3_params,
    run_gme_sawtooth,
)
from .slr import sigma0_for_design, slr_reduce, spectral_lambda
from .sparse import (
    SparseDetectionConfig,
    delta_for_target_risk,
    sparse_reduction_protocol1,
)
from .special import erf, erf_inv, median, normal_cdf, normal_quantile
from .verify import verify_suite

__version__ = "0.1.0"
