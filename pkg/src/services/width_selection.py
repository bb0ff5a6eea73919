import math
from fractions import Fraction
from typing import Any, Dict, List, Union

from loguru import logger

from ..config.constants import XI_ODD_RECURRENCE, XI_PARTIAL_QUOTIENTS
from ..exceptions import ParameterRangeError
from ..models import Convergent, RationalWidth

Numero = Union[float, int, str, Fraction]


def _as_fraction(valor: Numero) -> Fraction:
    """Valor decimal exacto; los float se leen por su representación más corta."""
    if isinstance(valor, float):
        return Fraction(repr(valor))
    return Fraction(valor)


class WidthSelection:
    """Convergentes de xi = 1 + 2/sqrt(3) y selección del ancho racional de franja."""

    @staticmethod
    def partial_quotient(i: int) -> int:
        """Cociente parcial a_i de [2; 6, 2, 6, ...]."""
        if i == 0:
            return XI_PARTIAL_QUOTIENTS[0]
        return XI_PARTIAL_QUOTIENTS[1] if i % 2 else XI_PARTIAL_QUOTIENTS[0]

    @staticmethod
    def xi_convergent(t: int) -> Convergent:
        """
        t-ésimo convergente por la recurrencia p_i = a_i p_(i-1) + p_(i-2).

        Args:
            t: Índice (>= 0)

        Returns:
            Convergente p_t/q_t

        Raises:
            ParameterRangeError: Si t es negativo
        """
        if t < 0:
            raise ParameterRangeError(f"El índice del convergente debe ser >= 0: {t}")
        p_prev, p = 1, XI_PARTIAL_QUOTIENTS[0]
        q_prev, q = 0, 1
        for i in range(1, t + 1):
            a = WidthSelection.partial_quotient(i)
            p_prev, p = p, a * p + p_prev
            q_prev, q = q, a * q + q_prev
        return Convergent(t=t, p=p, q=q)

    @staticmethod
    def odd_step(conv: Convergent) -> Convergent:
        """Convergente t + 2 a partir del t-ésimo impar: (p, q) -> (13p + 2q, 6p + q)."""
        if conv.t % 2 == 0:
            raise ParameterRangeError(f"La recurrencia impar requiere t impar: {conv.t}")
        (a, b), (c, d) = XI_ODD_RECURRENCE
        return Convergent(t=conv.t + 2, p=a * conv.p + b * conv.q, q=c * conv.p + d * conv.q)

    @staticmethod
    def convergents(t_max: int) -> List[Convergent]:
        return [WidthSelection.xi_convergent(t) for t in range(t_max + 1)]

    @staticmethod
    def select_width(eps: Numero) -> RationalWidth:
        """
        Menor t impar con q_t^2 >= ceil(3/eps) y su ancho d = q/(p - q).

        Args:
            eps: Exceso objetivo en (0, 1)

        Returns:
            Ancho racional; cumple p/q <= xi + eps/3

        Raises:
            ParameterRangeError: Si eps está fuera de (0, 1)
        """
        e = _as_fraction(eps)
        if not 0 < e < 1:
            raise ParameterRangeError(f"eps debe estar en (0, 1): {eps}")
        umbral = math.ceil(Fraction(3) / e)
        conv = WidthSelection.xi_convergent(1)
        while conv.q * conv.q < umbral:
            conv = WidthSelection.odd_step(conv)
        ancho = RationalWidth.from_convergent(conv)
        logger.debug(f"Ancho seleccionado para eps={eps}: t={conv.t}, d={ancho.label()}")
        return ancho

    @staticmethod
    def convergent_report(conv: Convergent, digitos: int = 40) -> Dict[str, Any]:
        """Fila (t, p, q, d, error) con d exacto y |p/q - xi| a `digitos` cifras."""
        fila: Dict[str, Any] = {"t": conv.t, "p": conv.p, "q": conv.q, "d": None}
        if conv.p > conv.q:
            d = Fraction(conv.q, conv.p - conv.q)
            fila["d"] = f"{d.numerator}/{d.denominator}"
        fila["error"] = f"{conv.error(digitos):.6E}"
        return fila


def xi_convergent(t: int) -> Convergent:
    return WidthSelection.xi_convergent(t)


def select_width(eps: Numero) -> RationalWidth:
    return WidthSelection.select_width(eps)
