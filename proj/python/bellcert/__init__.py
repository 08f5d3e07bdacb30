"""Bell-inequality nondegeneracy certification and semi-device-independent
entanglement bounds.

The heavy lifting lives in the compiled extension ``bellcert._core``; this
package re-exports its public surface.
"""

from bellcert._core import (  # noqa: F401
    Assemblage,
    Correlation,
    EntanglementCertificate,
    Expression,
    InvalidInputError,
    NondegeneracyCertificate,
    Scenario,
    SeesawConfig,
    TsirelsonEstimate,
    ViolationAnalysis,
    __version__,
    bell_operator,
    born_correlation,
    builtin_expression,
    certificate_from_json,
    certify_entanglement,
    certify_nondegeneracy,
    classical_bound,
    correlation_from_json,
    epsilon2_for,
    evaluate_bell,
    expression_from_json,
    ky_fan_value,
    kron,
    marginal_purity_upper_bound,
    max_entropy_for_purity,
    min_entropy_for_purity,
    optimal_cglmp_state,
    partial_trace,
    reference_coherent_info,
    sample_density_matrix,
    sample_haar_unitary,
    sample_projective_povm,
    sample_pure_state,
    schmidt_number,
    schmidt_reduce,
    seesaw,
    simulate_correlation,
    violation_analysis,
)
