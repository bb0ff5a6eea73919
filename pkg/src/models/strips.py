import math
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

import numpy as np
from pydantic import BaseModel, root_validator, validator

from ..config.constants import (
    ANCHO_IRRACIONAL_ETIQUETA, EPS_WINDOW_IRRATIONAL, EPS_WINDOW_RATIONAL,
    ROUND_COEF_IRRATIONAL, ROUND_COEF_RATIONAL, SQRT3_2, STRIP_TOLERANCE, VarianteAncho
)
from ..exceptions import ParameterRangeError, PointOutsideStripError
from .point import PointSet


def xi_decimal(digitos: int = 40) -> Decimal:
    """xi = 1 + 2/sqrt(3) evaluado con `digitos` cifras significativas."""
    with localcontext() as ctx:
        ctx.prec = digitos + 5
        valor = 1 + Decimal(2) / Decimal(3).sqrt()
        ctx.prec = digitos
        return +valor


class Convergent(BaseModel):
    """Convergente p_t/q_t de la fracción continua de xi = [2; 6, 2, 6, ...]."""

    t: int
    p: int
    q: int

    @validator("t")
    def validar_indice(cls, v):
        if v < 0:
            raise ValueError("El índice del convergente debe ser >= 0")
        return v

    @root_validator(skip_on_failure=True)
    def validar_coprimos(cls, values):
        """Validar que p y q sean coprimos y positivos."""
        p, q = values["p"], values["q"]
        if q <= 0 or p <= 0:
            raise ValueError("p y q deben ser positivos")
        if math.gcd(p, q) != 1:
            raise ValueError(f"p={p} y q={q} no son coprimos")
        return values

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def error(self, digitos: int = 40) -> Decimal:
        """|p/q - xi| evaluado en precisión extendida."""
        with localcontext() as ctx:
            ctx.prec = digitos
            return abs(Decimal(self.p) / Decimal(self.q) - xi_decimal(digitos))

    class Config:
        allow_mutation = False


class RationalWidth(BaseModel):
    """
    Ancho racional d = q/(p - q) derivado de un convergente impar; cumple
    1 + 1/d = p/q exactamente y d < sqrt(3)/2.
    """

    t: int
    p: int
    q: int
    d: Fraction

    @root_validator(skip_on_failure=True)
    def validar_ancho(cls, values):
        """Validar d = q/(p-q)."""
        p, q, d = values["p"], values["q"], values["d"]
        if p <= q:
            raise ValueError("Se requiere p > q para un ancho positivo")
        if Fraction(d) != Fraction(q, p - q):
            raise ValueError(f"d={d} no coincide con q/(p-q)={Fraction(q, p - q)}")
        values["d"] = Fraction(d)
        return values

    @classmethod
    def from_convergent(cls, conv: Convergent) -> "RationalWidth":
        return cls(t=conv.t, p=conv.p, q=conv.q, d=Fraction(conv.q, conv.p - conv.q))

    @classmethod
    def from_fraction(cls, d: Fraction) -> "RationalWidth":
        """Ancho racional arbitrario (p/q = 1 + 1/d); t = -1 indica que no proviene de un convergente."""
        d = Fraction(d)
        razon = 1 + 1 / d
        return cls(t=-1, p=razon.numerator, q=razon.denominator, d=d)

    def label(self) -> str:
        return f"{self.d.numerator}/{self.d.denominator}"

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True


class StripInstance(BaseModel):
    """Puntos contenidos en la franja horizontal [y_base, y_base + width)."""

    points: PointSet
    width: float
    y_base: float = 0.0

    @validator("width")
    def validar_ancho(cls, v):
        if not v > 0:
            raise ValueError("El ancho de la franja debe ser positivo")
        return v

    def __init__(self, **data):
        super().__init__(**data)
        for p in self.points.points:
            rel = p.y - self.y_base
            if rel < -STRIP_TOLERANCE or rel >= self.width:
                raise PointOutsideStripError(
                    f"El punto {p.id} ({p.x}, {p.y}) está fuera de la franja "
                    f"[{self.y_base}, {self.y_base + self.width})"
                )

    class Config:
        allow_mutation = False


class StripSystem(BaseModel):
    """
    Sistema de franjas horizontales desplazadas.

    El índice de franja es m(y) = floor((y - shift) / width). Con ancho racional
    el cálculo se hace en aritmética exacta sobre el valor binario de y.
    """

    width: float
    shift: float = 0.0
    rational: Optional[RationalWidth] = None

    @root_validator(skip_on_failure=True)
    def validar_desplazamiento(cls, values):
        """Validar 0 <= shift < width y la coherencia del ancho racional."""
        width, shift, rational = values["width"], values["shift"], values.get("rational")
        if not width > 0:
            raise ValueError("El ancho de la franja debe ser positivo")
        if rational is not None and float(rational.d) != width:
            raise ValueError("El ancho no coincide con el ancho racional")
        if not 0.0 <= shift < width:
            raise ValueError(f"El desplazamiento {shift} debe estar en [0, {width})")
        return values

    @classmethod
    def irrational(cls, shift: float = 0.0) -> "StripSystem":
        return cls(width=SQRT3_2, shift=shift)

    @classmethod
    def with_rational(cls, rw: RationalWidth, shift: float = 0.0) -> "StripSystem":
        return cls(width=float(rw.d), shift=shift, rational=rw)

    @property
    def is_idealized(self) -> bool:
        """El ancho irracional solo se representa por el double más cercano a sqrt(3)/2."""
        return self.rational is None

    def width_label(self) -> str:
        return ANCHO_IRRACIONAL_ETIQUETA if self.rational is None else self.rational.label()

    def strip_index(self, y: float) -> int:
        if self.rational is not None:
            return math.floor((Fraction(y) - Fraction(self.shift)) / self.rational.d)
        return math.floor((y - self.shift) / self.width)

    def strip_indices(self, ys: np.ndarray) -> np.ndarray:
        """Índices de franja para un arreglo de ordenadas."""
        if self.rational is not None:
            return np.array([self.strip_index(float(y)) for y in ys], dtype=np.int64)
        return np.floor((np.asarray(ys, dtype=float) - self.shift) / self.width).astype(np.int64)

    def strip_base(self, m: int) -> float:
        if self.rational is not None:
            return float(Fraction(self.shift) + m * self.rational.d)
        return self.shift + m * self.width

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True


class RoundPlan(BaseModel):
    """Número de rondas independientes para alcanzar (xi + eps) con probabilidad >= 1 - delta."""

    j: int
    eps: float
    delta: float
    variant: VarianteAncho

    @validator("j")
    def validar_rondas(cls, v):
        if v < 1:
            raise ValueError("Se requiere al menos una ronda")
        return v

    @classmethod
    def build(cls, eps: float, delta: float, variant: VarianteAncho = VarianteAncho.IRRATIONAL) -> "RoundPlan":
        """
        Calcular j a partir de eps y delta.

        Dentro de la ventana de validez de ln(1+x) >= 0.9x se usa la forma
        lineal; fuera de ella, la forma exacta ln(1/delta)/ln(1 + eps/c).

        Args:
            eps: Exceso objetivo en (0, 1)
            delta: Probabilidad de fallo en (0, 1)
            variant: Variante del ancho

        Returns:
            Plan de rondas

        Raises:
            ParameterRangeError: Si eps o delta están fuera de (0, 1)
        """
        if not 0.0 < eps < 1.0:
            raise ParameterRangeError(f"eps debe estar en (0, 1): {eps}")
        if not 0.0 < delta < 1.0:
            raise ParameterRangeError(f"delta debe estar en (0, 1): {delta}")
        variant = VarianteAncho(variant)
        if variant == VarianteAncho.IRRATIONAL:
            coef, ventana, divisor = ROUND_COEF_IRRATIONAL, EPS_WINDOW_IRRATIONAL, 3.0
        else:
            coef, ventana, divisor = ROUND_COEF_RATIONAL, EPS_WINDOW_RATIONAL, 4.0
        log_inv = math.log(1.0 / delta)
        if eps <= ventana:
            j = math.ceil(log_inv / (coef * eps))
        else:
            j = math.ceil(log_inv / math.log1p(eps / divisor))
        return cls(j=max(1, j), eps=eps, delta=delta, variant=variant)

    def failure_bound(self) -> float:
        """Cota (1/(1 + eps/3))^j (o eps/4 en la variante racional) de la probabilidad de fallo."""
        divisor = 3.0 if self.variant == VarianteAncho.IRRATIONAL else 4.0
        return (1.0 / (1.0 + self.eps / divisor)) ** self.j

    class Config:
        allow_mutation = False
        use_enum_values = False


