"""oscusec: exact osculating-space dimensions for secant varieties.

Fat-point interpolation over a large prime field, the generalized Terracini
identity as a triple cross-check, and constructive degree-descent
certificates for triple/double points in 3-space.
"""

from .algebra import ExactMatrix, field_inverse, matrix_rank_mod, random_affine_point, rank, rng_stream
from .config import get_prime, get_seed, set_prime, set_seed
from .interpolation import (
    CERTIFIED_NON_SPECIAL,
    GENERIC,
    OBSERVED_SPECIAL,
    ON_HYPERPLANE,
    UNDETERMINED,
    FatPoint,
    FatPointScheme,
    Hirzebruch,
    LinearSystemSpec,
    Projective,
    RankReport,
    SpecialityVerdict,
    basis_size,
    build_matrix,
    condition_rows,
    conditions,
    monomial_basis,
    scheme_from_json,
    scheme_to_json,
    speciality,
    system_dimension,
)
from .terracini import (
    JoinSpec,
    LaplaceCount,
    OsculatingFrame,
    interpolation_osculating_dim,
    join_osculating_dim,
    laplace_count,
    osc_bound_check,
    osculating_frame,
    secant_osculating_dim,
    terracini_triple,
)
from .horace import (
    CERTIFIED_BY_A,
    CERTIFIED_BY_B,
    NOT_CERTIFIED,
    ConditionVerdict,
    HoraceCertificate,
    SplitPair,
    build_certificate,
    check_A,
    check_B,
    corollary1_verdict,
    hirzebruch_exceptional,
    p2_exceptional,
    split,
    theorem2_verdict,
    verify_certificate,
)

__version__ = "0.1.0"
