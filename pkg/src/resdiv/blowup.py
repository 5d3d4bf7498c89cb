"""Combinatorial blowups at free points and generic chains.

A free point of an exceptional curve lies on that curve alone: off every
other exceptional curve and off every strict curve.  Blowing one up is a
purely combinatorial update: a new (-1)-curve meeting only the center
curve, whose self-intersection drops by one.  "Generic" chains iterate
this, each new center on the most recent chain curve only, so no
randomness or coordinates are involved.

GenericConfiguration builds a whole family of chains (the e_i points with
n_i blowups each used by the realization pipeline) in one pass, together
with the composite pullback, the relative canonical divisor of the
composition, and closed-form dual-basis vectors.  The one-pass build is
equality-tested against the step-by-step route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .antinef import is_antinef
from .divisor import Divisor
from .lattice import dual_basis
from .model import ExcCurve, ResolutionModel, StrictCurve

_ZERO = Fraction(0)


class PreconditionViolated(Exception):
    """The divisor or model does not satisfy the chain-lemma hypotheses."""


@dataclass(frozen=True)
class PullbackMap:
    """Integral linear map sending divisors on ``source`` to ``target``.

    ``columns[j]`` holds the target exceptional coefficients of the
    pullback of the j-th source curve.  Strict coefficients pass through
    unchanged (centers always avoid strict curves).
    """

    source: ResolutionModel
    target: ResolutionModel
    columns: tuple  # per source curve, tuple of ints over target curves

    def apply(self, d: Divisor) -> Divisor:
        if d.model is not self.source and d.model != self.source:
            raise PreconditionViolated("divisor does not live on the source model")
        out = [_ZERO] * self.target.u
        for j, c in enumerate(d.exc):
            if c:
                for k, v in enumerate(self.columns[j]):
                    if v:
                        out[k] += c * v
        return Divisor(self.target, tuple(out), d.strict)

    def then(self, other: "PullbackMap") -> "PullbackMap":
        """Composite map: first self, then other."""
        cols = []
        for col in self.columns:
            out = [0] * other.target.u
            for m, v in enumerate(col):
                if v:
                    for k, w in enumerate(other.columns[m]):
                        if w:
                            out[k] += v * w
            cols.append(tuple(out))
        return PullbackMap(self.source, other.target, tuple(cols))

    @staticmethod
    def identity(model: ResolutionModel) -> "PullbackMap":
        cols = tuple(tuple(int(i == j) for i in range(model.u))
                     for j in range(model.u))
        return PullbackMap(model, model, cols)


@dataclass(frozen=True)
class BlowupResult:
    new_model: ResolutionModel
    sigma_pullback: PullbackMap
    K_sigma: Divisor            # relative canonical divisor of the map
    base_curve: int             # index of the curve carrying the center(s)
    chain_curves: tuple         # indices of the new curves, in creation order


def _next_point_tag(model: ResolutionModel, base_label: str) -> int:
    used = [c.chain[1] for c in model.curves
            if c.chain is not None and c.chain[0] == base_label]
    return max(used, default=0) + 1


def blow_up_free_point(model: ResolutionModel, i: int,
                       point_tag=None) -> BlowupResult:
    """Blow up one free point of curve i.

    The new curve C has self-intersection -1 and meets only (the strict
    transform of) curve i, whose self-intersection drops by one.  The
    pullback sends E_i to E_i' + C and fixes every other curve; the
    relative canonical divisor of the blowup is C.
    """
    old = model.curves[i]
    if old.chain is not None:
        base_label, point, step = old.chain
        chain = (base_label, point, step + 1)
    else:
        point = point_tag if point_tag is not None else _next_point_tag(model, old.label)
        chain = (old.label, point, 1)
    new_label = "%s(%d,%d)" % (chain[0], chain[1], chain[2])

    u = model.u
    mat = [list(row) + [0] for row in model.matrix]
    mat.append([0] * (u + 1))
    mat[i][i] -= 1
    mat[i][u] = mat[u][i] = 1
    mat[u][u] = -1

    curves = []
    for j, c in enumerate(model.curves):
        curves.append(ExcCurve(label=c.label, genus=c.genus,
                               self_int=mat[j][j], row=tuple(mat[j]),
                               chain=c.chain))
    curves.append(ExcCurve(label=new_label, genus=0, self_int=-1,
                           row=tuple(mat[u]), chain=chain))
    strict = tuple(StrictCurve(label=s.label, incidence=s.incidence + (0,))
                   for s in model.strict_curves)
    new_model = ResolutionModel(curves, strict, parent=(model, i))

    cols = []
    for j in range(u):
        col = [int(j == k) for k in range(u + 1)]
        if j == i:
            col[u] = 1
        cols.append(tuple(col))
    pullback = PullbackMap(model, new_model, tuple(cols))
    k_sigma = Divisor.curve(new_model, u)
    return BlowupResult(new_model, pullback, k_sigma,
                        base_curve=i, chain_curves=(u,))


def generic_chain(model: ResolutionModel, i: int, n: int,
                  point_tag=None) -> BlowupResult:
    """Compose n free-point blowups, each centered on the newest curve.

    n = 0 returns the identity result.  The relative canonical divisor of
    the composite has coefficient k along the k-th chain curve.
    """
    if n < 0:
        raise ValueError("chain length must be >= 0")
    if n == 0:
        return BlowupResult(model, PullbackMap.identity(model),
                            Divisor.zero(model), base_curve=i, chain_curves=())

    step = blow_up_free_point(model, i, point_tag=point_tag)
    pullback = step.sigma_pullback
    k_total = step.K_sigma
    current = step.new_model
    chain = list(step.chain_curves)
    for _ in range(n - 1):
        step = blow_up_free_point(current, chain[-1])
        pullback = pullback.then(step.sigma_pullback)
        k_total = step.sigma_pullback.apply(k_total) + step.K_sigma
        current = step.new_model
        chain.extend(step.chain_curves)
    return BlowupResult(current, pullback, k_total,
                        base_curve=i, chain_curves=tuple(chain))


# ---------------------------------------------------------------------------
# whole configurations of chains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainInfo:
    base: int    # base-curve index the chain hangs off
    point: int   # 1-based point number on that curve
    start: int   # index of the first chain curve in the blown model
    length: int


class GenericConfiguration:
    """All chains of a realization step: e[i] chains of length n[i] per curve.

    Carries the blown model, the composite pullback, the relative
    canonical divisor of the composition, and cheap closed-form access to
    the dual basis of the blown model:

        dual(E(l))       = g* dual(E_l)
        dual(E(i,j,k))   = g* dual(E_i) + sum_m min(m, k) E(i,j,m)

    which avoids re-solving the (possibly large) intersection form.
    """

    def __init__(self, base_model, model, chains, e, n, pullback, K_sigma):
        self.base_model = base_model
        self.model = model
        self.chains = tuple(chains)
        self.e = tuple(e)
        self.n = tuple(n)
        self.pullback = pullback
        self.K_sigma = K_sigma
        self._pulled_duals = {}

    @classmethod
    def build(cls, base_model: ResolutionModel, e, n) -> "GenericConfiguration":
        """Construct the blown model directly, without iterating blowups."""
        u = base_model.u
        if len(e) != u or len(n) != u:
            raise ValueError("e and n must have one entry per curve")
        chains = []
        cursor = u
        for i in range(u):
            if e[i] > 0 and n[i] > 0:
                for j in range(1, e[i] + 1):
                    chains.append(ChainInfo(base=i, point=j,
                                            start=cursor, length=n[i]))
                    cursor += n[i]
        total = cursor

        mat = [[0] * total for _ in range(total)]
        for i in range(u):
            for j in range(u):
                mat[i][j] = base_model.matrix[i][j]
        roots = [0] * u
        for info in chains:
            roots[info.base] += 1
        for i in range(u):
            mat[i][i] -= roots[i]
        for info in chains:
            s, L, b = info.start, info.length, info.base
            mat[b][s] = mat[s][b] = 1
            for m in range(L):
                mat[s + m][s + m] = -1 if m == L - 1 else -2
                if m + 1 < L:
                    mat[s + m][s + m + 1] = mat[s + m + 1][s + m] = 1

        curves = []
        for i, c in enumerate(base_model.curves):
            curves.append(ExcCurve(label=c.label, genus=c.genus,
                                   self_int=mat[i][i], row=tuple(mat[i]),
                                   chain=c.chain))
        for info in chains:
            base_label = base_model.curves[info.base].label
            for m in range(1, info.length + 1):
                idx = info.start + m - 1
                curves.append(ExcCurve(
                    label="%s(%d,%d)" % (base_label, info.point, m),
                    genus=0, self_int=mat[idx][idx], row=tuple(mat[idx]),
                    chain=(base_label, info.point, m)))
        strict = tuple(StrictCurve(label=s.label,
                                   incidence=s.incidence + (0,) * (total - u))
                       for s in base_model.strict_curves)
        model = ResolutionModel(curves, strict)

        cols = []
        for l in range(u):
            col = [0] * total
            col[l] = 1
            for info in chains:
                if info.base == l:
                    for m in range(info.length):
                        col[info.start + m] = 1
            cols.append(tuple(col))
        pullback = PullbackMap(base_model, model, tuple(cols))

        k_exc = [_ZERO] * total
        for info in chains:
            for m in range(1, info.length + 1):
                k_exc[info.start + m - 1] = Fraction(m)
        k_sigma = Divisor(model, tuple(k_exc),
                          (_ZERO,) * len(model.strict_curves))
        return cls(base_model, model, chains, e, n, pullback, k_sigma)

    # -- index helpers ---------------------------------------------------

    def chains_over(self, i: int):
        return [info for info in self.chains if info.base == i]

    def chain_of(self, idx: int):
        """The ChainInfo containing blown-model curve idx, or None."""
        for info in self.chains:
            if info.start <= idx < info.start + info.length:
                return info
        return None

    # -- closed-form dual basis -------------------------------------------

    def _pulled_dual(self, l: int) -> Divisor:
        if l not in self._pulled_duals:
            self._pulled_duals[l] = self.pullback.apply(
                dual_basis(self.base_model)[l])
        return self._pulled_duals[l]

    def dual_vector(self, idx: int) -> Divisor:
        """Dual-basis divisor of the blown model for curve idx."""
        if idx < self.base_model.u:
            return self._pulled_dual(idx)
        info = self.chain_of(idx)
        k = idx - info.start + 1
        vec = list(self._pulled_dual(info.base).exc)
        for m in range(1, info.length + 1):
            vec[info.start + m - 1] += min(m, k)
        return Divisor(self.model, tuple(vec),
                       (_ZERO,) * len(self.model.strict_curves))

    def sum_duals(self) -> Divisor:
        """Sum of all dual-basis divisors of the blown model."""
        base_weights = [Fraction(1)] * self.base_model.u
        for info in self.chains:
            base_weights[info.base] += info.length
        combo = Divisor.zero(self.base_model)
        for l, w in enumerate(base_weights):
            combo = combo + dual_basis(self.base_model)[l].scale(w)
        total = self.pullback.apply(combo)
        vec = list(total.exc)
        for info in self.chains:
            L = info.length
            for m in range(1, L + 1):
                # sum_{k=1..L} min(m, k)
                vec[info.start + m - 1] += Fraction(m * (m - 1) // 2 + (L - m + 1) * m)
        return Divisor(self.model, tuple(vec), total.strict)

    def weighted_dual_sum(self, weights) -> Divisor:
        """Exact value of sum_E weights[E] * dual(E) over all curves."""
        weights = list(weights)
        base_weights = [weights[l] for l in range(self.base_model.u)]
        for info in self.chains:
            for m in range(info.length):
                base_weights[info.base] += weights[info.start + m]
        duals = dual_basis(self.base_model)
        combo = Divisor.zero(self.base_model)
        for l, w in enumerate(base_weights):
            if w:
                combo = combo + duals[l].scale(w)
        total = self.pullback.apply(combo)
        vec = list(total.exc)
        for info in self.chains:
            L = info.length
            t = [weights[info.start + m] for m in range(L)]
            # coefficient at chain position m is sum_k t_k * min(m, k)
            prefix = _ZERO      # sum_{k<=m} k t_k
            suffix = sum(t, _ZERO)
            for m in range(1, L + 1):
                prefix += m * t[m - 1]
                suffix -= t[m - 1]
                vec[info.start + m - 1] += prefix + m * suffix
        return Divisor(self.model, tuple(vec), total.strict)


def iterated_configuration(base_model: ResolutionModel, e, n) -> GenericConfiguration:
    """Build the same configuration chain by chain via generic_chain.

    Used to cross-check GenericConfiguration.build; the realization
    pipeline uses the one-pass builder.
    """
    current = base_model
    pullback = PullbackMap.identity(base_model)
    k_total = Divisor.zero(base_model)
    chains = []
    for i in range(base_model.u):
        if e[i] > 0 and n[i] > 0:
            for j in range(1, e[i] + 1):
                start = current.u
                step = generic_chain(current, i, n[i], point_tag=j)
                pullback = pullback.then(step.sigma_pullback)
                k_total = step.sigma_pullback.apply(k_total) + step.K_sigma
                current = step.new_model
                chains.append(ChainInfo(base=i, point=j, start=start,
                                        length=n[i]))
    return GenericConfiguration(base_model, current, chains, tuple(e),
                                tuple(n), pullback, k_total)


# ---------------------------------------------------------------------------
# chain lemma verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaGenReport:
    duals_monotone: bool       # dual(E(i)) <= dual(E(i,x,1)) <= ...
    coeffs_monotone: bool      # a_0 <= a_1 <= ... <= a_n
    coeffs: tuple              # (a_0, ..., a_n)
    strict_increase: bool      # a_0 < a_n
    chain_duals_dominate: bool  # sum_k (-D.E_k) dual_k >= dual(E(i))
    equivalence_holds: bool    # strict_increase <=> chain_duals_dominate

    @property
    def all_hold(self):
        return self.duals_monotone and self.coeffs_monotone and self.equivalence_holds


def verify_lemma_gen(chain: BlowupResult, d: Divisor) -> LemmaGenReport:
    """Check the chain monotonicity statements for one generic chain.

    ``chain`` must come from generic_chain with n >= 1 and ``d`` must be
    an integral antinef divisor on the chain model.  (In this
    combinatorial setting the chain root automatically meets only the
    base curve, so the free-point hypothesis needs no further check.)
    """
    if not chain.chain_curves:
        raise PreconditionViolated("chain has no blown-up curves")
    if d.model is not chain.new_model and d.model != chain.new_model:
        raise PreconditionViolated("divisor does not live on the chain model")
    if not d.is_integral():
        raise PreconditionViolated("divisor must be integral")
    if not is_antinef(d):
        raise PreconditionViolated("divisor must be antinef")

    duals = dual_basis(chain.new_model)
    i = chain.base_curve
    seq = [duals[i]] + [duals[k] for k in chain.chain_curves]
    duals_monotone = all(seq[t].less_equal(seq[t + 1]) for t in range(len(seq) - 1))

    coeffs = (d.exc[i],) + tuple(d.exc[k] for k in chain.chain_curves)
    coeffs_monotone = all(coeffs[t] <= coeffs[t + 1]
                          for t in range(len(coeffs) - 1))
    strict_increase = coeffs[0] < coeffs[-1]

    combo = Divisor.zero(chain.new_model)
    for k in chain.chain_curves:
        combo = combo + duals[k].scale(-d.intersect(k))
    chain_duals_dominate = duals[i].less_equal(combo)

    return LemmaGenReport(
        duals_monotone=duals_monotone,
        coeffs_monotone=coeffs_monotone,
        coeffs=coeffs,
        strict_increase=strict_increase,
        chain_duals_dominate=chain_duals_dominate,
        equivalence_holds=(strict_increase == chain_duals_dominate),
    )
