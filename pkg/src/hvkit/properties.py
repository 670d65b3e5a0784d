"""Decision procedures for the six hidden-variable properties.

Each checker evaluates its defining equation exactly, quantified over
positive-probability conditioning atoms only, and returns a report with
an exact witness on failure.  Where an equivalent fiber-product
characterization exists, the checker also evaluates it and insists the
two verdicts agree; a disagreement is an internal bug, not a property of
the input, and raises.

Witness selection is deterministic: the first failing atom in canonical
order, so failing checks are reproducible golden values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalCheckError
from .fiber import is_fiber_product
from .measure import conditional, measures_equal, product
from .models import HVModel, LAM, XA, XB, YA, YB, named_marginals


class HVProperty(enum.Enum):
    """The six properties, valued by their CLI selector names."""

    LOCALITY = "locality"
    PARAMETER_INDEPENDENCE = "pi"
    OUTCOME_INDEPENDENCE = "oi"
    LAMBDA_INDEPENDENCE = "lambda"
    WEAK_DETERMINISM = "weakdet"
    STRONG_DETERMINISM = "strongdet"


@dataclass(frozen=True)
class Witness:
    """A concrete violation: coordinate assignment plus both sides of the equation."""

    assignment: tuple[tuple[str, str], ...]
    lhs: Fraction
    rhs: Fraction

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignment)


@dataclass(frozen=True)
class PropertyReport:
    property: HVProperty
    holds: bool
    witness: Witness | None = None


def _witness(coords, labels, lhs, rhs) -> Witness:
    return Witness(tuple(zip(coords, labels)), lhs, rhs)


def _assert_agreement(prop: HVProperty, primary: bool, characterization: bool) -> None:
    if primary != characterization:
        raise InternalCheckError(
            f"{prop.value}: defining-equation verdict {primary} disagrees with "
            f"fiber-product characterization {characterization}"
        )


def check_locality(p: HVModel) -> PropertyReport:
    """Joint outcome conditional factors into per-party own-setting conditionals."""
    m = p.measure
    k_joint = conditional(m, (XA, XB), (YA, YB, LAM))
    k_a = conditional(m, (XA,), (YA, LAM))
    k_b = conditional(m, (XB,), (YB, LAM))
    xa_atoms = m.layout.space(XA).atoms
    xb_atoms = m.layout.space(XB).atoms

    witness = None
    for ya, yb, lam in k_joint.given_atoms():
        for xa in xa_atoms:
            for xb in xb_atoms:
                lhs = k_joint.value((ya, yb, lam), (xa, xb))
                rhs = k_a.value((ya, lam), (xa,)) * k_b.value((yb, lam), (xb,))
                if lhs != rhs:
                    witness = _witness((XA, XB, YA, YB, LAM), (xa, xb, ya, yb, lam), lhs, rhs)
                    break
            if witness:
                break
        if witness:
            break

    fam = named_marginals(p)
    via_fiber = (
        is_fiber_product(m, fam.p_a, fam.p_b, (YA, YB, LAM))
        and is_fiber_product(fam.p_a, fam.q_a, fam.r, (YA, LAM))
        and is_fiber_product(fam.p_b, fam.q_b, fam.r, (YB, LAM))
    )
    _assert_agreement(HVProperty.LOCALITY, witness is None, via_fiber)
    return PropertyReport(HVProperty.LOCALITY, witness is None, witness)


def check_parameter_independence(p: HVModel) -> PropertyReport:
    """Each party's outcome conditional ignores the other party's setting."""
    m = p.measure
    k_a_both = conditional(m, (XA,), (YA, YB, LAM))
    k_a_own = conditional(m, (XA,), (YA, LAM))
    k_b_both = conditional(m, (XB,), (YA, YB, LAM))
    k_b_own = conditional(m, (XB,), (YB, LAM))
    xa_atoms = m.layout.space(XA).atoms
    xb_atoms = m.layout.space(XB).atoms

    witness = None
    for ya, yb, lam in k_a_both.given_atoms():
        for xa in xa_atoms:
            lhs = k_a_both.value((ya, yb, lam), (xa,))
            rhs = k_a_own.value((ya, lam), (xa,))
            if lhs != rhs:
                witness = _witness((XA, YA, YB, LAM), (xa, ya, yb, lam), lhs, rhs)
                break
        if witness:
            break
    if witness is None:
        for ya, yb, lam in k_b_both.given_atoms():
            for xb in xb_atoms:
                lhs = k_b_both.value((ya, yb, lam), (xb,))
                rhs = k_b_own.value((yb, lam), (xb,))
                if lhs != rhs:
                    witness = _witness((XB, YA, YB, LAM), (xb, ya, yb, lam), lhs, rhs)
                    break
            if witness:
                break

    fam = named_marginals(p)
    via_fiber = is_fiber_product(fam.p_a, fam.q_a, fam.r, (YA, LAM)) and is_fiber_product(
        fam.p_b, fam.q_b, fam.r, (YB, LAM)
    )
    _assert_agreement(HVProperty.PARAMETER_INDEPENDENCE, witness is None, via_fiber)
    return PropertyReport(HVProperty.PARAMETER_INDEPENDENCE, witness is None, witness)


def check_outcome_independence(p: HVModel) -> PropertyReport:
    """Given both settings and lam, the two parties' outcomes are independent."""
    m = p.measure
    k_joint = conditional(m, (XA, XB), (YA, YB, LAM))
    k_a = conditional(m, (XA,), (YA, YB, LAM))
    k_b = conditional(m, (XB,), (YA, YB, LAM))
    xa_atoms = m.layout.space(XA).atoms
    xb_atoms = m.layout.space(XB).atoms

    witness = None
    for given in k_joint.given_atoms():
        for xa in xa_atoms:
            for xb in xb_atoms:
                lhs = k_joint.value(given, (xa, xb))
                rhs = k_a.value(given, (xa,)) * k_b.value(given, (xb,))
                if lhs != rhs:
                    witness = _witness((XA, XB, YA, YB, LAM), (xa, xb) + given, lhs, rhs)
                    break
            if witness:
                break
        if witness:
            break

    fam = named_marginals(p)
    via_fiber = is_fiber_product(m, fam.p_a, fam.p_b, (YA, YB, LAM))
    _assert_agreement(HVProperty.OUTCOME_INDEPENDENCE, witness is None, via_fiber)
    return PropertyReport(HVProperty.OUTCOME_INDEPENDENCE, witness is None, witness)


def check_lambda_independence(p: HVModel) -> PropertyReport:
    """Settings and hidden variable are statistically independent.

    The verdict depends only on the settings-plus-hidden marginal r:
    holds iff r is the product of its two marginals.  All three
    equivalent readings (conditional-of-lam constancy, product equality,
    atomwise factorization) are evaluated and must agree.
    """
    fam = named_marginals(p)
    r, p_y, p_lam = fam.r, fam.p_y, fam.p_lam

    # atomwise factorization; positive atoms suffice for the verdict
    # (matching on the support forces the zero atoms to match by mass),
    # but a failing witness is searched in full canonical layout order.
    factorizes = all(
        w == p_y.weight((ya, yb)) * p_lam.weight((lam,))
        for (ya, yb, lam), w in r.weights.items()
    )
    witness = None
    if not factorizes:
        for ya, yb, lam in r.layout.atoms():
            lhs = r.weight((ya, yb, lam))
            rhs = p_y.weight((ya, yb)) * p_lam.weight((lam,))
            if lhs != rhs:
                witness = _witness((YA, YB, LAM), (ya, yb, lam), lhs, rhs)
                break

    via_product = measures_equal(r, product(p_y, p_lam))

    k = conditional(p.measure, (LAM,), (YA, YB))
    via_constancy = all(
        k.value(y, (lam,)) == p_lam.weight((lam,))
        for y in k.given_atoms()
        for lam in p.space(LAM).atoms
    )

    if not (factorizes == via_product == via_constancy):
        raise InternalCheckError(
            f"lambda-independence readings disagree: atomwise={factorizes} "
            f"product={via_product} constancy={via_constancy}"
        )
    return PropertyReport(HVProperty.LAMBDA_INDEPENDENCE, factorizes, witness)


def _zero_one_witness(kernel, coords, prepend=()):
    """First strictly interior conditional, if any.

    A value v is in {0, 1} exactly when v equals its own square, so the
    witness reports (v, v*v).  Absent table entries are zero and pass.
    """
    for given in kernel.given_atoms():
        for target, value in kernel.row(given).items():
            if value * value != value:
                return _witness(coords, prepend + target + given, value, value * value)
    return None


def check_weak_determinism(p: HVModel) -> PropertyReport:
    """Both settings plus lam almost surely pin down the joint outcome."""
    m = p.measure
    k_joint = conditional(m, (XA, XB), (YA, YB, LAM))
    witness = _zero_one_witness(k_joint, (XA, XB, YA, YB, LAM))

    # equivalent per-party reading: each single outcome conditional is 0/1
    k_a = conditional(m, (XA,), (YA, YB, LAM))
    k_b = conditional(m, (XB,), (YA, YB, LAM))
    per_party = (
        _zero_one_witness(k_a, (XA, YA, YB, LAM)) is None
        and _zero_one_witness(k_b, (XB, YA, YB, LAM)) is None
    )
    if (witness is None) != per_party:
        raise InternalCheckError(
            f"weak-determinism readings disagree: joint={witness is None} per-party={per_party}"
        )
    return PropertyReport(HVProperty.WEAK_DETERMINISM, witness is None, witness)


def check_strong_determinism(p: HVModel) -> PropertyReport:
    """Each party's own setting plus lam almost surely pins down its outcome."""
    m = p.measure
    k_a = conditional(m, (XA,), (YA, LAM))
    witness = _zero_one_witness(k_a, (XA, YA, LAM))
    if witness is None:
        k_b = conditional(m, (XB,), (YB, LAM))
        witness = _zero_one_witness(k_b, (XB, YB, LAM))
    return PropertyReport(HVProperty.STRONG_DETERMINISM, witness is None, witness)


_CHECKERS = {
    HVProperty.LOCALITY: check_locality,
    HVProperty.PARAMETER_INDEPENDENCE: check_parameter_independence,
    HVProperty.OUTCOME_INDEPENDENCE: check_outcome_independence,
    HVProperty.LAMBDA_INDEPENDENCE: check_lambda_independence,
    HVProperty.WEAK_DETERMINISM: check_weak_determinism,
    HVProperty.STRONG_DETERMINISM: check_strong_determinism,
}


def check_property(p: HVModel, prop: HVProperty) -> PropertyReport:
    return _CHECKERS[prop](p)


def check_all(p: HVModel) -> tuple[PropertyReport, ...]:
    """All six reports, in declaration order of HVProperty."""
    return tuple(_CHECKERS[prop](p) for prop in HVProperty)
