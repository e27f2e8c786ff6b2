from .base import FirstMessage, RoundProtocol, RoundSpec, XiProtocolSpec
from .coloring import coloring_protocol
from .hamiltonicity import ham_protocol
from .sumcheck import (
    partial_sum_eval,
    prover_round,
    run_interactive_sumcheck,
    sumcheck_claim,
    sumcheck_protocol,
    sumcheck_soundness_bound,
    verifier_round_check,
)

__all__ = [
    "FirstMessage",
    "RoundProtocol",
    "RoundSpec",
    "XiProtocolSpec",
    "coloring_protocol",
    "ham_protocol",
    "partial_sum_eval",
    "prover_round",
    "run_interactive_sumcheck",
    "sumcheck_claim",
    "sumcheck_protocol",
    "sumcheck_soundness_bound",
    "verifier_round_check",
]
