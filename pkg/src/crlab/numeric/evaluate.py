"""Forward-mode evaluation of parsed expressions, CR jets and numeric residuals."""

import cmath
import itertools
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple, Union

from crlab.numeric.cr import (
    CoordinateSeries,
    CRJets,
    CRTensors,
    cr_jets,
    cr_tensors,
    yamabe_residual,
)
from crlab.numeric.taylor import Taylor
from crlab.parsing.ast import Binary, Call, ExprAST, Imag, Neg, Number, Power, Var, dimension

if TYPE_CHECKING:
    from crlab.closedform.solution import ClosedFormSolution

# relative size of an imaginary part tolerated in log and sqrt arguments
REAL_TOLERANCE = 1e-12


class DomainViolationError(ValueError):
    """A function was applied outside its domain; ``subexpression`` names where."""

    def __init__(self, message: str, subexpression: str) -> None:
        super().__init__(f"{message} in {subexpression}")
        self.subexpression = subexpression


@dataclass
class TaylorValue3:
    """Value and real partial derivatives of an expression at a point."""

    n: int
    z: Tuple[complex, ...]
    t: float
    series: Taylor
    coords: CoordinateSeries

    @property
    def value(self) -> complex:
        return complex(self.series.value)

    def variable_index(self, name: str) -> int:
        if name == "t":
            return 2 * self.n
        kind, index = name[0], int(name[1:])
        if kind not in "xy" or not 1 <= index <= self.n:
            raise ValueError(f"unknown coordinate {name!r}")
        return index - 1 if kind == "x" else self.n + index - 1

    def derivative(self, *names: str) -> complex:
        """``∂_{names} f``, e.g. ``derivative("x1", "x1", "y1")``."""
        index = [0] * (2 * self.n + 1)
        for name in names:
            index[self.variable_index(name)] += 1
        return complex(self.series.partial(tuple(index)))


def _real_positive(value: complex) -> bool:
    return value.real > 0 and abs(value.imag) <= REAL_TOLERANCE * max(1.0, abs(value))


def _evaluate(node: ExprAST, coords: CoordinateSeries) -> Taylor:
    if isinstance(node, Number):
        return Taylor.constant(node.value, coords.nvars, coords.order, False)
    if isinstance(node, Imag):
        return Taylor.constant(1j, coords.nvars, coords.order, False)
    if isinstance(node, Var):
        if node.kind == "t":
            return coords.t
        if node.index > coords.n:
            raise ValueError(f"{node} is outside dimension n={coords.n}")
        return (coords.x if node.kind == "x" else coords.y)[node.index - 1]
    if isinstance(node, Neg):
        return -_evaluate(node.operand, coords)
    if isinstance(node, Binary):
        left = _evaluate(node.left, coords)
        right = _evaluate(node.right, coords)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if complex(right.value) == 0:
            raise DomainViolationError("division by a vanishing value", str(node.right))
        return left / right
    if isinstance(node, Power):
        base = _evaluate(node.base, coords)
        if node.exponent < 0 and complex(base.value) == 0:
            raise DomainViolationError("negative power of a vanishing value", str(node.base))
        return base**node.exponent
    if isinstance(node, Call):
        arg = _evaluate(node.arg, coords)
        value = complex(arg.value)
        if node.func == "exp":
            return arg.exp()
        if node.func == "abs2":
            return arg * arg.conjugate()
        if not _real_positive(value):
            raise DomainViolationError(f"{node.func} of nonpositive value {value}", str(node.arg))
        return arg.log() if node.func == "log" else arg.sqrt()
    raise TypeError(f"unknown expression node {node!r}")


def taylor_eval(
    expr: ExprAST, z: Sequence[complex], t: float, order: int = 3
) -> TaylorValue3:
    """Forward-mode Taylor data of ``expr`` at ``(z, t)`` up to ``order``.

    Raises:
        DomainViolationError: If ``log`` or ``sqrt`` meets a value that is not
            real and positive, or a denominator vanishes.
        ValueError: If the expression uses coordinates beyond ``len(z)``.
    """
    n = len(z)
    if dimension(expr) > n:
        raise ValueError(f"expression uses coordinates beyond n={n}")
    coords = CoordinateSeries([complex(v) for v in z], float(t), order, exact=False)
    series = _evaluate(expr, coords)
    return TaylorValue3(n, tuple(complex(v) for v in z), float(t), series, coords)


def cr_jets_from_taylor(
    tv: TaylorValue3, max_length: int = 3, canonical_only: bool = True
) -> CRJets:
    """CR jets of the evaluated function, with ``e^{2f}`` taken from its value.

    Args:
        tv: Taylor data valid at least to ``max_length``.
        max_length: Longest word.
        canonical_only: When false every word is applied literally, which
            :meth:`CRJets.commutator_defect` needs.
    """
    jets = cr_jets(tv.series, tv.coords, max_length, canonical_only)
    jets.e2f = cmath.exp(2 * tv.value)
    return jets


def _coordinates(z: Sequence[complex], t: float) -> List[float]:
    return [v.real for v in z] + [v.imag for v in z] + [t]


def _value_at(expr: ExprAST, point: Sequence[float], n: int) -> complex:
    z = [complex(point[a], point[n + a]) for a in range(n)]
    return taylor_eval(expr, z, point[2 * n], order=0).value


def fd_crosscheck(
    expr: ExprAST,
    z: Sequence[complex],
    t: float,
    steps: Tuple[float, float] = (1e-6, 1e-4),
) -> float:
    """Worst relative deviation of central differences from forward-mode partials.

    First partials use the step ``steps[0]``, second partials (pure and mixed)
    ``steps[1]``. Deviations are relative to ``max(1, |exact|)``.
    """
    n = len(z)
    tv = taylor_eval(expr, z, t, order=2)
    base = _coordinates([complex(v) for v in z], float(t))
    nvars = 2 * n + 1

    def shifted(*moves: Tuple[int, float]) -> complex:
        point = list(base)
        for index, delta in moves:
            point[index] += delta
        return _value_at(expr, point, n)

    worst = 0.0
    h1, h2 = steps
    for i in range(nvars):
        unit = tuple(1 if k == i else 0 for k in range(nvars))
        exact = complex(tv.series.partial(unit))
        estimate = (shifted((i, h1)) - shifted((i, -h1))) / (2 * h1)
        worst = max(worst, abs(estimate - exact) / max(1.0, abs(exact)))
    center = tv.value
    for i, j in itertools.combinations_with_replacement(range(nvars), 2):
        index = [0] * nvars
        index[i] += 1
        index[j] += 1
        exact = complex(tv.series.partial(tuple(index)))
        if i == j:
            estimate = (shifted((i, h2)) - 2 * center + shifted((i, -h2))) / (h2 * h2)
        else:
            estimate = (
                shifted((i, h2), (j, h2))
                - shifted((i, h2), (j, -h2))
                - shifted((i, -h2), (j, h2))
                + shifted((i, -h2), (j, -h2))
            ) / (4 * h2 * h2)
        worst = max(worst, abs(estimate - exact) / max(1.0, abs(exact)))
    return worst


@dataclass
class NumericResidual:
    """Floating residual ``Δ_b f - n|∂f|² - n e^{2f}`` and ``D, E, G`` at one point."""

    residual: complex
    tensors: CRTensors
    jets: CRJets = field(repr=False)

    def max_tensor(self) -> float:
        return self.tensors.max_abs()


def numeric_residual(
    target: Union[ExprAST, "ClosedFormSolution"],
    z: Sequence[complex],
    t: float,
    e2f_coefficient: Optional[int] = None,
) -> NumericResidual:
    """Evaluate the equation and the tensors for ``f`` given as an expression or a solution.

    Raises:
        DomainViolationError: If the expression leaves the domain of a function.
    """
    from crlab.closedform.solution import ClosedFormSolution, f_series

    if isinstance(target, ClosedFormSolution):
        coords = CoordinateSeries([complex(v) for v in z], float(t), 2, exact=False)
        series = f_series(target, coords)
        jets = cr_jets(series, coords, 2)
        jets.e2f = cmath.exp(2 * complex(series.value))
    else:
        jets = cr_jets_from_taylor(taylor_eval(target, z, t, order=2), max_length=2)
    return NumericResidual(
        residual=complex(yamabe_residual(jets, e2f_coefficient)),
        tensors=cr_tensors(jets),
        jets=jets,
    )


def jet_table(jets: CRJets) -> Dict[str, complex]:
    """Printable ``{"f_{1,1b}": value}`` map of the stored jets."""
    return {name: complex(value) for name, value in jets.names().items()}
