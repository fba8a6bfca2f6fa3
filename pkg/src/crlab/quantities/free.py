"""A free algebra in which D_α, E_α, G_α are independent complex symbols."""

from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from crlab.algebra.params import AffineExponent, ParamPoly
from crlab.algebra.polynomial import Polynomial, SymbolTable
from crlab.quantities.forms import QuadraticData

VECTOR_NAMES = ("D", "E", "G")


class FreeQuadraticAlgebra:
    """Symbols ``D_k, Db_k, E_k, Eb_k, G_k, Gb_k`` with reals ``s, f0`` and weight ``h``.

    The index ``k`` runs over ``1..length``.
    ``Xb_k`` stands for the conjugate of ``X_k``; ``h = s² + f0²`` is applied
    by :meth:`reduce`.
    """

    def __init__(self, length: int = 1, m: Optional[Union[int, Fraction]] = None) -> None:
        if length < 1:
            raise ValueError("vector length must be positive")
        self.length = length
        self.m_value = None if m is None else Fraction(m)
        self.table = SymbolTable()
        self._partner: Dict[int, int] = {}
        for k in range(1, length + 1):
            for name in VECTOR_NAMES:
                plain = self.table.register(f"{name}_{k}")
                barred = self.table.register(f"{name}b_{k}")
                self._partner[plain] = barred
                self._partner[barred] = plain
        self.table.register("s")
        self.table.register("f0")
        self.table.register_weight("h")
        self.table.freeze()

    @property
    def m(self) -> ParamPoly:
        if self.m_value is None:
            return ParamPoly.variable("m")
        return ParamPoly.constant(self.m_value)

    def symbol(self, name: str) -> Polynomial:
        return Polynomial.symbol(self.table, name)

    def h(self, power: int = 1) -> Polynomial:
        return Polynomial.weight(self.table, "h", AffineExponent.of(power))

    def vector(self, name: str, barred: bool = False) -> Tuple[Polynomial, ...]:
        suffix = "b" if barred else ""
        return tuple(self.symbol(f"{name}{suffix}_{k}") for k in range(1, self.length + 1))

    def data(self) -> QuadraticData:
        return QuadraticData(
            table=self.table,
            m=self.m,
            f0=self.symbol("f0"),
            s=self.symbol("s"),
            h=self.h(1),
            h_inv=self.h(-1),
            D=self.vector("D"),
            E=self.vector("E"),
            G=self.vector("G"),
            D_bar=self.vector("D", barred=True),
            E_bar=self.vector("E", barred=True),
            G_bar=self.vector("G", barred=True),
        )

    def conjugate(self, e: Polynomial) -> Polynomial:
        barred = e.map_coefficients(ParamPoly.conjugate)
        def partner(sid: int) -> Optional[Polynomial]:
            if sid not in self._partner:
                return None
            return Polynomial.symbol(self.table, self._partner[sid])

        return barred.substitute_symbols(partner)

    def reduce(self, e: Polynomial) -> Polynomial:
        """Normal form modulo ``f0² = h - s²``."""
        s = self.symbol("s")
        return e.reduce_power("f0", 2, self.h(1) - s * s)

    def is_zero(self, e: Polynomial) -> bool:
        return self.reduce(e).is_zero()

    def substitute(self, e: Polynomial, values: Dict[str, Polynomial]) -> Polynomial:
        """Replace named symbols by polynomials of this algebra."""
        ids = {self.table.symbol_id(name): value for name, value in values.items()}
        return e.substitute_symbols(ids.get)
