"""
Attention Benchmark Service.

Measures FAVOR++/FAVOR+ approximation error against exact softmax
attention on random Gaussian inputs.
"""

from typing import Iterable, Sequence, Union

from ..core.exceptions import RFKError
from ..core.logging_config import get_logger
from ..core.results import Result
from ..core.rng import RngState
from ..kernel_ops.attention import AttentionInputs, AttentionMode, AttentionReport, attention_error_report
from ..validators.array_validator import ensure_count

logger = get_logger(__name__)


def random_attention_inputs(rng: RngState, L: int, d: int) -> AttentionInputs:
    """Q, K, V with i.i.d. standard normal entries."""
    L = ensure_count(L, 'L')
    d = ensure_count(d, 'd')
    generator = rng.generator
    return AttentionInputs(
        Q=generator.standard_normal((L, d)),
        K=generator.standard_normal((L, d)),
        V=generator.standard_normal((L, d)),
    )


class AttentionBenchmarkService:
    """
    Service running attention error benchmarks.
    """

    def run(
        self,
        L: int,
        d: int,
        modes: Sequence[Union[AttentionMode, str]],
        Ms: Sequence[int],
        seeds: Union[int, Iterable[int]],
        seed: int = 0
    ) -> Result[AttentionReport]:
        """
        Draw inputs from seed and report errors for every (mode, M).

        Args:
            L: Sequence length
            d: Head dimension
            modes: Attention modes
            Ms: Feature counts
            seeds: Projection seeds (count or list)
            seed: Seed of the input draw

        Returns:
            Result holding an AttentionReport
        """
        try:
            inputs = random_attention_inputs(RngState(seed), L, d)
            logger.info(f"Attention benchmark: L={L}, d={d}, modes={list(modes)}, Ms={list(Ms)}")
            return Result.success_result(attention_error_report(inputs, modes, Ms, seeds))
        except RFKError as e:
            logger.error(f"Attention benchmark failed: {e}")
            return Result.from_exception(e)
