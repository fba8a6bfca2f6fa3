"""Client API for CRLab."""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from crlab.algebra.gaussian import I
from crlab.closedform import (
    ClosedFormSolution,
    ConventionFinding,
    determine_convention,
    make_solution,
    pointwise_decay_check,
    solution_check,
)
from crlab.config import Config, get_config
from crlab.models import (
    CoefficientBoundsReport,
    EvalReport,
    GrowthReport,
    PsdReport,
    PsiCheckReport,
    SolutionCheckReport,
    TensorTestReport,
    VerificationReport,
)
from crlab.numeric import (
    cr_jets_from_taylor,
    cr_tensors,
    fd_crosscheck,
    jet_table,
    taylor_eval,
    yamabe_residual,
)
from crlab.parsing import parse_expression
from crlab.quadrature import check_th2_hypotheses, growth_exponent
from crlab.quantities import (
    IdentityId,
    coefficient_bounds_check,
    psd_check_psi,
    psi_squares_check,
    tensor_identity_tests,
    verify_identity,
    verify_many,
)

Rational = Union[int, Fraction]

# asserted tolerances of the eval checks
COMMUTATOR_TOLERANCE = 1e-9
FD_TOLERANCE = 1e-6


def standard_solution(n: int) -> ClosedFormSolution:
    """The family member with ``μ = 0`` and ``λ = i``."""
    return make_solution(n, [0] * n, I)


class LabClient:
    """Client API for CRLab.

    Each method runs one kind of check with defaults from the configuration
    and returns its report model.
    """

    def __init__(self, settings: Optional[Config] = None, show_progress: bool = False) -> None:
        """Initialize the client.

        Args:
            settings: Configuration to take defaults from. If None, the global
                configuration is used.
            show_progress: Show progress bars on long sampling loops.
        """
        self.config = settings or get_config()
        self.show_progress = show_progress

    # symbolic identities

    def verify(
        self,
        identity: str,
        n: int,
        m: Optional[Rational] = None,
        mutation: Optional[str] = None,
        record_timing: bool = False,
    ) -> VerificationReport:
        """Verify one identity.

        Raises:
            ValueError: For an unknown identity or an unsupported mutation.
        """
        return verify_identity(identity, n, m, mutation, record_timing)

    def verify_all(
        self, n: int, m: Optional[Rational] = None, record_timing: bool = False
    ) -> List[VerificationReport]:
        """Verify every identity, in parallel over the configured workers."""
        return verify_many(list(IdentityId), n, m, self.config.workers, record_timing)

    # closed-form family

    def find_convention(self, n: int = 2) -> ConventionFinding:
        return determine_convention(n=max(n, 1), seed=self.config.seed)

    def solution_check(
        self, sol: ClosedFormSolution, points: int = 100, seed: Optional[int] = None
    ) -> SolutionCheckReport:
        finding = self.find_convention(sol.n)
        return solution_check(
            sol,
            points,
            self.config.seed if seed is None else seed,
            finding=finding,
            show_progress=self.show_progress,
        )

    def growth(
        self,
        sol: ClosedFormSolution,
        q: float,
        r: float,
        radii: Optional[Sequence[float]] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> GrowthReport:
        return growth_exponent(
            sol,
            q,
            r,
            radii or self.config.radii,
            samples or self.config.quadrature_samples,
            self.config.seed if seed is None else seed,
            self.config.workers,
            self.config.tolerance,
            self.show_progress,
        )

    def th2_check(
        self,
        sol: ClosedFormSolution,
        q: float,
        radii: Optional[Sequence[float]] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> Tuple[GrowthReport, float]:
        """Integral growth of ``u^q`` and the pointwise decay constant."""
        seed_value = self.config.seed if seed is None else seed
        report = check_th2_hypotheses(
            sol,
            q,
            radii or self.config.radii,
            samples or self.config.quadrature_samples,
            seed_value,
            self.config.workers,
            self.config.tolerance,
            self.show_progress,
        )
        return report, pointwise_decay_check(sol, self.config.samples, seed_value)

    # coefficients, ψ and tensors

    def coefficient_bounds(
        self, samples: Optional[int] = None, seed: Optional[int] = None
    ) -> CoefficientBoundsReport:
        return coefficient_bounds_check(
            samples or self.config.samples,
            self.config.seed if seed is None else seed,
            show_progress=self.show_progress,
        )

    def psi(
        self,
        mode: str = "symbolic",
        length: int = 1,
        m: Optional[Rational] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> PsiCheckReport:
        return psi_squares_check(
            mode,
            length,
            m,
            self.config.seed if seed is None else seed,
            samples or self.config.samples,
            show_progress=self.show_progress,
        )

    def psd(self, m: Rational, samples: int = 1000, seed: Optional[int] = None) -> PsdReport:
        return psd_check_psi(m, samples, self.config.seed if seed is None else seed)

    def tensors(
        self, n: int = 2, samples: Optional[int] = None, seed: Optional[int] = None
    ) -> TensorTestReport:
        return tensor_identity_tests(
            n,
            samples or self.config.samples,
            self.config.seed if seed is None else seed,
            self.show_progress,
        )

    # user-supplied functions

    def evaluate(self, text: str, at: Sequence[float]) -> EvalReport:
        """Jets, residual, tensors and cross-checks of ``f`` given as an expression.

        Args:
            text: Expression for ``f`` in ``x1 … xn, y1 … yn, t``.
            at: Point as ``x1 … xn, y1 … yn, t`` (odd length ``2n + 1``).

        Raises:
            ValueError: If the point has even length or the expression is invalid.
        """
        if len(at) % 2 == 0:
            raise ValueError("the point needs 2n + 1 coordinates: x1..xn, y1..yn, t")
        n = len(at) // 2
        z = [complex(at[a], at[n + a]) for a in range(n)]
        t = float(at[2 * n])
        expr = parse_expression(text, n)
        tv = taylor_eval(expr, z, t, order=3)
        jets = cr_jets_from_taylor(tv, max_length=3)
        literal = cr_jets_from_taylor(taylor_eval(expr, z, t, order=2), 2, canonical_only=False)
        scale = max([1.0] + [abs(complex(v)) for v in literal.jets.values()])
        return EvalReport(
            expression=text,
            n=n,
            point=[float(v) for v in at],
            value=_pair(tv.value),
            residual=_pair(complex(yamabe_residual(jets))),
            max_tensor=cr_tensors(jets).max_abs(),
            commutator_defect=literal.commutator_defect() / scale,
            commutator_tolerance=COMMUTATOR_TOLERANCE,
            fd_deviation=fd_crosscheck(expr, z, t),
            fd_tolerance=FD_TOLERANCE,
            jets={name: _pair(value) for name, value in jet_table(jets).items()},
        )


def _pair(value: complex) -> List[float]:
    return [value.real, value.imag]
