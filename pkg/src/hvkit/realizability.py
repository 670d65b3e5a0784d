"""Local realizability: exact membership in the deterministic-strategy polytope.

An empirical model admits a local, setting-independent hidden-variable
realization exactly when its conditional behavior at positive-probability
contexts is a convex mixture of deterministic strategy behaviors.  This
module decides that membership with an exact rational LP and returns a
verifiable certificate either way: mixture weights when feasible, or a
Bell functional that separates the behavior from the polytope when not.

Separating functionals for two-setting/two-outcome models are drawn from
the sign-variant family of the standard correlator inequality whenever
one of them is violated (for no-signaling behaviors that family is
complete); otherwise the LP dual is emitted, scaled to primitive integer
coefficients.  Either way the certificate's bound is recomputed by full
strategy enumeration and the strict inequality is re-verified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import gcd

from .errors import DomainError, InternalCheckError, ResourceLimitError
from .measure import (
    Atom,
    FiniteMeasure,
    FiniteSpace,
    ProductLayout,
    conditional,
    marginal,
)
from .models import EmpiricalModel, HVModel, LAM, XA, XB, YA, YB, realizes
from .properties import (
    check_lambda_independence,
    check_locality,
    check_strong_determinism,
)
from .rationals import ONE, ZERO
from .simplex import solve_feasibility

DEFAULT_STRATEGY_CAP = 10**6


@dataclass(frozen=True)
class DeterministicStrategy:
    """A pair of response functions, one outcome per setting per party.

    Outcomes are listed in the canonical order of each party's setting
    atoms.
    """

    outcomes_a: tuple[str, ...]
    outcomes_b: tuple[str, ...]

    def describe(self, settings_a, settings_b) -> str:
        a = ",".join(f"{s}->{o}" for s, o in zip(settings_a, self.outcomes_a))
        b = ",".join(f"{s}->{o}" for s, o in zip(settings_b, self.outcomes_b))
        return f"a[{a}] b[{b}]"


@dataclass(frozen=True)
class LocalityCertificate:
    """Either mixture weights over strategies, or a separating functional.

    Feasible: ``weights`` are nonnegative, sum to one, and reproduce the
    behavior exactly at every positive-probability context.  Infeasible:
    ``bell_functional`` maps outcome/setting atoms to coefficients with
    ``achieved_value`` strictly above ``classical_bound``, the exact
    maximum over all deterministic strategies.
    """

    feasible: bool
    weights: dict[DeterministicStrategy, Fraction] | None = None
    bell_functional: dict[Atom, Fraction] | None = None
    classical_bound: Fraction | None = None
    achieved_value: Fraction | None = None


def enumerate_strategies(
    ya: FiniteSpace,
    yb: FiniteSpace,
    xa: FiniteSpace,
    xb: FiniteSpace,
    cap: int = DEFAULT_STRATEGY_CAP,
) -> list[DeterministicStrategy]:
    """All deterministic strategy pairs, in canonical order."""
    count = len(xa) ** len(ya) * len(xb) ** len(yb)
    if count > cap:
        raise ResourceLimitError(f"{count} strategies exceed the cap of {cap}")
    return [
        DeterministicStrategy(fa, fb)
        for fa in cartesian(xa.atoms, repeat=len(ya))
        for fb in cartesian(xb.atoms, repeat=len(yb))
    ]


def _sign(space: FiniteSpace, label: str) -> int:
    # first atom maps to +1, second to -1
    return 1 if space.index(label) == 0 else -1


def _context_kernel(e: EmpiricalModel):
    """Positive contexts (canonical order) and the conditional behavior there."""
    settings = marginal(e.measure, (YA, YB))
    kernel = conditional(e.measure, (XA, XB), (YA, YB))
    contexts = list(kernel.given_atoms())
    return settings, kernel, contexts


def chsh_value(e: EmpiricalModel) -> Fraction:
    """The standard correlator combination for 2x2-setting, 2-outcome models.

    E(i, j) is the expectation of the product of the two +/-1-mapped
    outcomes given the context pairing Alice's i-th with Bob's j-th
    setting; the returned value is E(0,0) + E(0,1) + E(1,0) - E(1,1),
    signed.  Every context must have positive probability.
    """
    xa, xb = e.space(XA), e.space(XB)
    ya, yb = e.space(YA), e.space(YB)
    if not (len(ya) == len(yb) == len(xa) == len(xb) == 2):
        raise DomainError("requires exactly 2 settings and 2 outcomes per party")
    _, kernel, _ = _context_kernel(e)

    def correlator(i: int, j: int) -> Fraction:
        context = (ya.atoms[i], yb.atoms[j])
        if not kernel.defined_at(context):
            raise DomainError(f"context {context!r} has zero probability")
        return sum(
            (
                _sign(xa, oa) * _sign(xb, ob) * kernel.value(context, (oa, ob))
                for oa in xa.atoms
                for ob in xb.atoms
            ),
            ZERO,
        )

    return correlator(0, 0) + correlator(0, 1) + correlator(1, 0) - correlator(1, 1)


def _strategy_behavior(strategy, ya, yb, context, outcome) -> Fraction:
    i, j = ya.index(context[0]), yb.index(context[1])
    hit = strategy.outcomes_a[i] == outcome[0] and strategy.outcomes_b[j] == outcome[1]
    return ONE if hit else ZERO


def _evaluate_functional(functional, kernel, contexts) -> Fraction:
    total = ZERO
    for context in contexts:
        for outcome, value in kernel.row(context).items():
            coefficient = functional.get(outcome + context)
            if coefficient is not None:
                total += coefficient * value
    return total


def _evaluate_functional_on_strategy(functional, strategy, ya, yb, contexts) -> Fraction:
    total = ZERO
    for context in contexts:
        i, j = ya.index(context[0]), yb.index(context[1])
        outcome = (strategy.outcomes_a[i], strategy.outcomes_b[j])
        coefficient = functional.get(outcome + context)
        if coefficient is not None:
            total += coefficient
    return total


def _correlator_variants(e: EmpiricalModel, kernel, contexts):
    """Sign variants of the correlator functional, canonical order first."""
    xa, xb = e.space(XA), e.space(XB)
    ya, yb = e.space(YA), e.space(YB)
    if not (len(ya) == len(yb) == len(xa) == len(xb) == 2) or len(contexts) != 4:
        return
    for signs in cartesian((1, -1), repeat=4):
        if signs[0] * signs[1] * signs[2] * signs[3] != -1:
            continue
        functional = {}
        for (i, j), sign in zip(cartesian(range(2), range(2)), signs):
            context = (ya.atoms[i], yb.atoms[j])
            for oa in xa.atoms:
                for ob in xb.atoms:
                    functional[(oa, ob) + context] = Fraction(
                        sign * _sign(xa, oa) * _sign(xb, ob)
                    )
        yield functional


def _primitive_integer_scaling(functional: dict) -> dict:
    """Scale a rational functional to integer coefficients with gcd one."""
    denominators = [v.denominator for v in functional.values() if v != 0]
    if not denominators:
        return functional
    lcm = 1
    for d in denominators:
        lcm = lcm * d // gcd(lcm, d)
    scaled = {k: v * lcm for k, v in functional.items()}
    common = 0
    for v in scaled.values():
        common = gcd(common, abs(v.numerator))
    if common > 1:
        scaled = {k: v / common for k, v in scaled.items()}
    return scaled


def _infeasible_certificate(e, kernel, contexts, strategies, dual) -> LocalityCertificate:
    ya, yb = e.space(YA), e.space(YB)
    xa, xb = e.space(XA), e.space(XB)

    functional = None
    for candidate in _correlator_variants(e, kernel, contexts):
        value = _evaluate_functional(candidate, kernel, contexts)
        if value > 2:
            functional = candidate
            break
    if functional is None:
        # generic dual certificate from the LP, one coefficient per
        # behavior constraint row
        functional = {}
        index = 0
        for context in contexts:
            for oa in xa.atoms:
                for ob in xb.atoms:
                    functional[(oa, ob) + context] = dual[index]
                    index += 1
        functional = _primitive_integer_scaling(functional)

    bound = max(
        _evaluate_functional_on_strategy(functional, s, ya, yb, contexts)
        for s in strategies
    )
    achieved = _evaluate_functional(functional, kernel, contexts)
    if achieved <= bound:
        raise InternalCheckError("separating functional does not separate")
    return LocalityCertificate(
        feasible=False,
        bell_functional=functional,
        classical_bound=bound,
        achieved_value=achieved,
    )


def strategy_hv_model(
    e: EmpiricalModel, strategies, weights: dict[DeterministicStrategy, Fraction]
) -> HVModel:
    """The hidden-variable model induced by a strategy mixture.

    The hidden space enumerates all strategies; settings keep their
    original distribution and are independent of the strategy choice.
    """
    ya, yb = e.space(YA), e.space(YB)
    labels = tuple(f"s{i}" for i in range(len(strategies)))
    lam = FiniteSpace(LAM, labels)
    settings = marginal(e.measure, (YA, YB))

    atom_weights = {}
    for label, strategy in zip(labels, strategies):
        w = weights.get(strategy, ZERO)
        if w == 0:
            continue
        for (sa, sb), mass in settings.weights.items():
            oa = strategy.outcomes_a[ya.index(sa)]
            ob = strategy.outcomes_b[yb.index(sb)]
            key = (oa, ob, sa, sb, label)
            atom_weights[key] = atom_weights.get(key, ZERO) + w * mass
    layout = ProductLayout((e.space(XA), e.space(XB), ya, yb, lam))
    return HVModel(FiniteMeasure(layout, atom_weights))


def local_hvm_exists(
    e: EmpiricalModel, cap: int = DEFAULT_STRATEGY_CAP
) -> tuple[bool, LocalityCertificate]:
    """Decide local realizability of e, with a verified exact certificate.

    Zero-probability contexts impose no constraints.  In the feasible
    case the witnessing hidden-variable model is reconstructed and must
    pass realization, locality, setting independence and strong
    determinism before the certificate is returned.
    """
    strategies = enumerate_strategies(e.space(YA), e.space(YB), e.space(XA), e.space(XB), cap)
    settings, kernel, contexts = _context_kernel(e)
    ya, yb = e.space(YA), e.space(YB)
    xa, xb = e.space(XA), e.space(XB)

    rhs = []
    row_keys = []
    for context in contexts:
        for oa in xa.atoms:
            for ob in xb.atoms:
                row_keys.append(((oa, ob), context))
                rhs.append(kernel.value(context, (oa, ob)))
    columns = [
        [_strategy_behavior(s, ya, yb, context, outcome) for outcome, context in row_keys]
        for s in strategies
    ]

    result = solve_feasibility(columns, rhs)
    if result.feasible:
        weights = {
            s: w for s, w in zip(strategies, result.solution) if w != 0
        }
        total = sum(weights.values(), ZERO)
        if total != ONE:
            raise InternalCheckError(f"mixture weights sum to {total}")
        for (outcome, context), target in zip(row_keys, rhs):
            reproduced = sum(
                (w * _strategy_behavior(s, ya, yb, context, outcome) for s, w in weights.items()),
                ZERO,
            )
            if reproduced != target:
                raise InternalCheckError("mixture does not reproduce the behavior")

        model = strategy_hv_model(e, strategies, weights)
        if not realizes(model, e):
            raise InternalCheckError("reconstructed model does not realize the input")
        if not check_locality(model).holds:
            raise InternalCheckError("reconstructed model is not local")
        if not check_lambda_independence(model).holds:
            raise InternalCheckError("reconstructed model is not setting-independent")
        if not check_strong_determinism(model).holds:
            raise InternalCheckError("reconstructed model is not strongly deterministic")
        return True, LocalityCertificate(feasible=True, weights=weights)

    certificate = _infeasible_certificate(e, kernel, contexts, strategies, result.dual)
    return False, certificate
