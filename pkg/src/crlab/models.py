"""Data models for crlab reports."""

from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

Scalar = Union[str, int, float, bool, None]


class CheckResult(BaseModel):
    """One asserted check inside a run report."""

    name: str
    status: str  # "pass" | "fail" | "note"
    witness: Optional[str] = None
    value: Optional[float] = None
    tolerance: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"


class VerificationReport(BaseModel):
    """Outcome of normalizing ``LHS - RHS`` for one identity."""

    identity: str
    n: int
    mode: str  # "formal" or "m=<rational>"
    status: str  # "zero" | "nonzero" | "error"
    witness: Optional[str] = None
    lhs_terms: int = 0
    rhs_terms: int = 0
    residual_terms: int = 0
    mutation: Optional[str] = None
    note: Optional[str] = None
    elapsed: Optional[float] = None

    @property
    def is_zero(self) -> bool:
        return self.status == "zero"

    def to_check(self) -> CheckResult:
        """Passes only when the residual normalizes to zero, mutated or not."""
        passed = self.is_zero
        name = f"{self.identity}[n={self.n},{self.mode}]"
        if self.mutation:
            name += f"[{self.mutation}]"
        return CheckResult(name=name, status="pass" if passed else "fail", witness=self.witness)


class QuadratureEstimate(BaseModel):
    """A Monte Carlo integral over a Korányi ball."""

    radius: float
    value: float
    stderr: float
    samples: int
    seed: int
    workers: int = 1
    excluded_radius: Optional[float] = None


class GrowthReport(BaseModel):
    """Fitted growth exponent of ``R ↦ ∫_{B_R} integrand``."""

    quantity: str
    n: int
    parameters: Dict[str, float] = Field(default_factory=dict)
    estimates: List[QuadratureEstimate] = Field(default_factory=list)
    slope: float
    bound: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.slope <= self.bound + self.tolerance

    def to_check(self) -> CheckResult:
        return CheckResult(
            name=f"growth:{self.quantity}",
            status="pass" if self.passed else "fail",
            value=self.slope,
            tolerance=self.tolerance,
            witness=None if self.passed else f"slope {self.slope:.4f} > bound {self.bound:.4f}",
        )


class SolutionCheckReport(BaseModel):
    """Exact checks of one member of the extremal family."""

    n: int
    convention: str
    points: int
    residual_failures: List[str] = Field(default_factory=list)
    tensor_failures: List[str] = Field(default_factory=list)
    decay_constant: Optional[float] = None
    convention_finding: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.residual_failures and not self.tensor_failures


class CoefficientBoundsReport(BaseModel):
    """Lower bounds of c1, c4, c6 and empirical maxima of |c2| + |c3| + |c5|."""

    samples: int
    seed: int
    violations: Dict[str, int] = Field(default_factory=dict)
    first_violation: Optional[str] = None
    max_abs_sum: Dict[str, float] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(self.violations.values())


class TensorTestReport(BaseModel):
    """Exact expansion and inequality for the torsion/Einstein contraction chain."""

    n: int
    samples: int
    seed: int
    equality_failures: int = 0
    inequality_failures: int = 0
    first_failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.equality_failures and not self.inequality_failures


class PsdReport(BaseModel):
    """Smallest eigenvalue of ψ's coefficient matrix over sampled (f0, s)."""

    m: float
    samples: int
    seed: int
    min_eigenvalue: float
    worst_point: Optional[Dict[str, float]] = None

    @property
    def passed(self) -> bool:
        return self.min_eigenvalue > 0


class PsiCheckReport(BaseModel):
    """Symbolic and numeric comparison of ψ's forms."""

    length: int
    mode: str
    symbolic: Optional[VerificationReport] = None
    samples: int = 0
    seed: Optional[int] = None
    max_relative_error: Optional[float] = None
    tolerance: float = 1e-10

    @property
    def passed(self) -> bool:
        symbolic_ok = self.symbolic is None or self.symbolic.is_zero
        numeric_ok = self.max_relative_error is None or self.max_relative_error <= self.tolerance
        return symbolic_ok and numeric_ok


class RunReport(BaseModel):
    """Top-level JSON report of one CLI run."""

    command: str
    inputs: Dict[str, Scalar] = Field(default_factory=dict)
    seed: Optional[int] = None
    results: List[CheckResult] = Field(default_factory=list)
    details: List[Dict[str, Any]] = Field(default_factory=list)
    elapsed: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)


class EvalReport(BaseModel):
    """CR jets and checks of a user-supplied ``f`` at one point; complex values are ``[re, im]``."""

    expression: str
    n: int
    point: List[float]
    value: List[float]
    residual: List[float]
    max_tensor: float
    commutator_defect: float
    commutator_tolerance: float
    fd_deviation: float
    fd_tolerance: float
    jets: Dict[str, List[float]] = Field(default_factory=dict)

    def checks(self) -> List[CheckResult]:
        """Commutator and finite-difference checks are asserted; residual and tensors are notes."""
        commutator_ok = self.commutator_defect <= self.commutator_tolerance
        fd_ok = self.fd_deviation <= self.fd_tolerance
        return [
            CheckResult(
                name="commutator",
                status="pass" if commutator_ok else "fail",
                value=self.commutator_defect,
                tolerance=self.commutator_tolerance,
            ),
            CheckResult(
                name="finite-differences",
                status="pass" if fd_ok else "fail",
                value=self.fd_deviation,
                tolerance=self.fd_tolerance,
            ),
            CheckResult(name="residual", status="note", value=abs(complex(*self.residual))),
            CheckResult(name="max-tensor", status="note", value=self.max_tensor),
        ]


class RunConfig(BaseModel):
    """Validated settings of one CLI run."""

    command: str
    n: Optional[int] = Field(default=None, ge=1)
    m: Optional[str] = None  # "formal" or a rational
    identities: List[str] = Field(default_factory=list)
    mutation: Optional[str] = None
    params: Optional[str] = None
    seed: int = 0
    samples: int = Field(default=10_000, ge=1)
    quadrature_samples: int = Field(default=1_000_000, ge=1)
    r_grid: List[int] = Field(default_factory=lambda: list(range(7)))
    tolerance: float = Field(default=0.3, gt=0)
    workers: int = Field(default=1, ge=1)
    output: Optional[str] = None

    def inputs(self) -> Dict[str, Scalar]:
        """Flat report inputs; the output path is left out so reports stay byte-identical."""
        data = self.model_dump(exclude={"command", "output", "seed"}, exclude_none=True)
        return {k: ",".join(map(str, v)) if isinstance(v, list) else v for k, v in data.items()}
