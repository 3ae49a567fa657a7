"""Construction and self-testing certification of ROCN correlation Bell inequalities."""

__version__ = "0.1.0"

from rocnbell.errors import (  # noqa: E402
    DimensionError,
    NotRocnError,
    OddDimensionError,
    RocnError,
    SizeLimitError,
    VerificationError,
)
from rocnbell.rocn import (  # noqa: E402
    RocnMatrix,
    ValidationOutcome,
    bell_value,
    classical_bound,
    quantum_bound,
    validate_rocn,
)
from rocnbell.symspan import (  # noqa: E402
    SymCoefficients,
    VectorFamily,
    closed_form_coefficients,
    gram_schmidt_family,
    is_symmetric_spanning,
    spanning_family,
    spanning_rank,
    symmetrize,
)
from rocnbell.selftest import (  # noqa: E402
    MomentMatrix,
    SelfTestVerdict,
    build_moment_matrix,
    kernel_witness_check,
    rank_criterion,
    spanning_criterion,
)
from rocnbell.construct import BlockPlan, build_self_testing_matrix, preset  # noqa: E402
from rocnbell.strategy import (  # noqa: E402
    CorrelationTable,
    ObservableSet,
    QuantumStrategy,
    canonical_strategy,
    clifford_generators,
    correlations,
    probabilities,
    verify_quantum_bound,
)
from rocnbell.report import CertificationReport, certify  # noqa: E402
