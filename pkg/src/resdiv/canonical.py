"""Relative canonical divisor, discrepancies, and multiplier-ideal divisors.

The discrepancy vector b solves the adjunction system
``sum_j b_j (E_j . E_i) = 2 g_i - 2 - E_i^2`` exactly; the model is log
terminal iff every b_i > -1.  Ideals are represented throughout by
integral antinef divisors on the fixed model, and the multiplier ideal of
(G, lambda) is represented by the antinef closure of floor(lambda G - K_f).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .antinef import NonIntegralInput, antinef_closure
from .divisor import Divisor
from .lattice import SingularLattice
from .model import ResolutionModel


class NotAntinef(Exception):
    """The given divisor has a positive product with some curve."""


class NotEffective(Exception):
    """The given divisor has a negative coefficient."""


class NonPositiveLambda(Exception):
    """Multiplier coefficients must be positive rationals."""


class NotLogTerminal(Exception):
    """Some discrepancy b_i <= -1."""

    def __init__(self, offenders, b):
        self.offenders = tuple(offenders)
        self.b = tuple(b)
        super().__init__("not log terminal: b <= -1 along curve indices %s"
                         % (list(self.offenders),))


@dataclass(frozen=True)
class DiscrepancyReport:
    b: tuple              # Fraction per exceptional curve
    log_terminal: bool
    offenders: tuple      # indices with b_i <= -1


def discrepancies(model: ResolutionModel) -> DiscrepancyReport:
    """Solve the adjunction system for the discrepancy vector."""
    if model._discrepancies is None:
        rhs = [Fraction(2 * c.genus - 2 - c.self_int) for c in model.curves]
        try:
            b = linalg.solve(model.matrix, rhs)
        except linalg.SingularMatrixError as exc:
            raise SingularLattice(str(exc)) from exc
        offenders = tuple(i for i, v in enumerate(b) if v <= -1)
        model._discrepancies = DiscrepancyReport(
            b=tuple(b), log_terminal=not offenders, offenders=offenders)
    return model._discrepancies


def relative_canonical(model: ResolutionModel) -> Divisor:
    """The rational divisor sum_i b_i E_i."""
    report = discrepancies(model)
    zeros = (Fraction(0),) * len(model.strict_curves)
    return Divisor(model, report.b, zeros)


def multiplier_divisor(model: ResolutionModel, g: Divisor, lam) -> Divisor:
    """Antinef divisor representing the multiplier ideal of (G, lambda).

    G must be integral, effective and antinef (it represents an integrally
    closed ideal); lambda must be a positive rational.  The result is the
    antinef closure of floor(lambda G - K_f).
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise NonPositiveLambda("lambda must be > 0, got %s" % (lam,))
    if not g.is_integral():
        raise NonIntegralInput("G must be integral")
    if not g.is_effective():
        raise NotEffective("G must be effective")
    prods = g.products()
    if any(p > 0 for p in prods):
        raise NotAntinef("G.E_i > 0 at index %d"
                         % next(i for i, p in enumerate(prods) if p > 0))
    k_f = relative_canonical(model)
    candidate = (g.scale(lam) - k_f).floor()
    closed, _ = antinef_closure(candidate)
    return closed
