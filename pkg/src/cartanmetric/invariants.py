"""The nine scalar invariants of an (alpha, beta)-metric and their identities."""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields

import numpy as np

from .hfunction import DomainError, Jet3, get_family, h_jet_oracle

# homogeneity degree of each invariant in (alpha, beta)
DEGREES: dict[str, int] = {
    "rho1": 1,
    "rho": 0,
    "rho0": 0,
    "rho_m1": -1,
    "rho_m2": -2,
    "r_m1": -1,
    "r_m2": -2,
    "r_m3": -3,
    "r_m4": -4,
}


@dataclass(frozen=True)
class InvariantSet:
    rho1: float
    rho: float
    rho0: float
    rho_m1: float
    rho_m2: float
    r_m1: float
    r_m2: float
    r_m3: float
    r_m4: float

    @classmethod
    def names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names(), self.as_tuple()))


@dataclass(frozen=True)
class Residual:
    """One identity residual; ``scale`` is the largest magnitude among its terms."""

    abs: float
    scale: float

    @property
    def rel(self) -> float:
        return abs(self.abs) / max(self.scale, 1e-30)


def residual(lhs_terms, rhs: float = 0.0) -> Residual:
    terms = list(lhs_terms)
    value = float(sum(terms)) - rhs
    scale = max([abs(t) for t in terms] + [abs(rhs)])
    return Residual(value, scale)


def invariants_from_jet(jet: Jet3, alpha: float) -> InvariantSet:
    a = alpha
    return InvariantSet(
        rho1=0.5 * jet.H_b,
        rho=jet.H_a / (2 * a),
        rho0=0.5 * jet.H_bb,
        rho_m1=jet.H_ab / (2 * a),
        rho_m2=(jet.H_aa - jet.H_a / a) / (2 * a**2),
        r_m1=0.5 * jet.H_bbb,
        r_m2=jet.H_abb / (2 * a),
        r_m3=(jet.H_aab - jet.H_ab / a) / (2 * a**2),
        r_m4=(jet.H_aaa - 3 * jet.H_aa / a + 3 * jet.H_a / a**2) / (2 * a**3),
    )


def invariant_scales(jet: Jet3, alpha: float) -> InvariantSet:
    """Sum of term magnitudes behind each invariant; the rounding yardstick."""
    j = Jet3(*(abs(v) for v in jet.as_tuple()))
    a = abs(alpha)
    return InvariantSet(
        rho1=0.5 * j.H_b,
        rho=j.H_a / (2 * a),
        rho0=0.5 * j.H_bb,
        rho_m1=j.H_ab / (2 * a),
        rho_m2=(j.H_aa + j.H_a / a) / (2 * a**2),
        r_m1=0.5 * j.H_bbb,
        r_m2=j.H_abb / (2 * a),
        r_m3=(j.H_aab + j.H_ab / a) / (2 * a**2),
        r_m4=(j.H_aaa + 3 * j.H_aa / a + 3 * j.H_a / a**2) / (2 * a**3),
    )


def invariant_deviation(inv: InvariantSet, reference: InvariantSet, scales: InvariantSet) -> float:
    """Largest |inv - reference| relative to max(|reference|, term scale)."""
    x, r, s = (np.asarray(v.as_tuple()) for v in (inv, reference, scales))
    return float(np.max(np.abs(x - r) / np.maximum(np.maximum(np.abs(r), s), 1e-30)))


def contraction_residuals(inv: InvariantSet, alpha: float, beta: float,
                          scales: "InvariantSet | None" = None) -> tuple[Residual, ...]:
    """y_i d^i applied to rho1, rho, rho0, rho_m1, rho_m2 via Euler.

    ``scales`` (see :func:`invariant_scales`) widens each residual's scale to
    the rounding size of the invariants it combines.
    """
    a2 = alpha * alpha
    rows = (
        ([a2 * inv.rho_m1, beta * inv.rho0], inv.rho1, ("rho_m1", "rho0", "rho1"), 1.0),
        ([a2 * inv.rho_m2, beta * inv.rho_m1], 0.0, ("rho_m2", "rho_m1"), 0.0),
        ([a2 * inv.r_m2, beta * inv.r_m1], 0.0, ("r_m2", "r_m1"), 0.0),
        ([a2 * inv.r_m3, beta * inv.r_m2, inv.rho_m1], 0.0, ("r_m3", "r_m2", "rho_m1"), 1.0),
        ([a2 * inv.r_m4, beta * inv.r_m3, 2 * inv.rho_m2], 0.0, ("r_m4", "r_m3", "rho_m2"), 2.0),
    )
    out = []
    for terms, rhs, names, w3 in rows:
        r = residual(terms, rhs)
        if scales is not None:
            s = scales.as_dict()
            weights = (a2, abs(beta), w3)
            r = Residual(r.abs, max(r.scale, max(w * s[k] for w, k in zip(weights, names))))
        out.append(r)
    return tuple(out)


def euler_residuals(jet: Jet3, alpha: float, beta: float) -> tuple[Residual, ...]:
    a, b = alpha, beta
    return (
        residual([a * jet.H_a, b * jet.H_b], 2 * jet.H),
        residual([a * jet.H_aa, b * jet.H_ab], jet.H_a),
        residual([a * jet.H_ab, b * jet.H_bb], jet.H_b),
        residual([a * jet.H_aaa, b * jet.H_aab]),
        residual([a * jet.H_aab, b * jet.H_abb]),
        residual([a * jet.H_abb, b * jet.H_bbb]),
    )


def oracle_invariants(family, alpha: float, beta: float) -> InvariantSet:
    return invariants_from_jet(h_jet_oracle(family, alpha, beta), alpha)


def homogeneity_degree_check(family, alpha: float, beta: float, t: float) -> tuple[Residual, ...]:
    if t <= 0:
        raise ValueError("t must be positive")
    fam = get_family(family)
    if not fam.admissible(t * alpha, t * beta):
        raise DomainError(f"scaled point (tα, tβ) is inadmissible for {fam.id}")
    jet0 = h_jet_oracle(fam, alpha, beta)
    jet1 = h_jet_oracle(fam, t * alpha, t * beta)
    base = invariants_from_jet(jet0, alpha).as_tuple()
    scaled = invariants_from_jet(jet1, t * alpha).as_tuple()
    scales = invariant_scales(jet1, t * alpha).as_tuple()
    out = []
    for name, s, v, sc in zip(InvariantSet.names(), scaled, base, scales):
        expected = (t ** DEGREES[name]) * v
        out.append(Residual(s - expected, max(abs(s), abs(expected), sc)))
    return tuple(out)


# -- corrected closed forms of the infinite-series invariants ---------------


def _iseries_common(a, b):
    d = b - a
    return dict(
        rho=b**3 / (2 * a * d**2),
        rho_m1=(b**3 - 3 * a * b**2) / (2 * a * d**3),
        rho_m2=b**3 * (3 * a - b) / (2 * a**3 * d**3),
        r_m1=-3 * a**3 / d**4,
        r_m2=3 * a * b / d**4,
        r_m3=(4 * a * b**3 - b**4 - 9 * a**2 * b**2) / (2 * a**3 * d**4),
        r_m4=(15 * a**2 * b**3 + 3 * b**5 - 12 * a * b**4) / (2 * a**5 * d**4),
    )


def _closed_iseries1(a, b):
    d = b - a
    return InvariantSet(rho1=(a * b**2 - 2 * a**2 * b) / (2 * d**2), rho0=a**3 / d**3, **_iseries_common(a, b))


def _closed_iseries2(a, b):
    d = b - a
    return InvariantSet(
        rho1=(2 * b**3 - 3 * a * b**2) / (2 * d**2),
        rho0=(b**3 - 3 * a * b**2 + 3 * a**2 * b) / d**3,
        **_iseries_common(a, b),
    )


def _closed_riemannian(a, b):
    return InvariantSet(0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def _closed_randers(a, b):
    s = a + b
    return InvariantSet(s, s / a, 1.0, 1 / a, -b / a**3, 0.0, 0.0, -1 / a**3, 3 * b / a**5)


def _closed_kropina(a, b):
    return InvariantSet(
        rho1=-(a**4) / b**3,
        rho=2 * a**2 / b**2,
        rho0=3 * a**4 / b**4,
        rho_m1=-4 * a**2 / b**3,
        rho_m2=4 / b**2,
        r_m1=-12 * a**4 / b**5,
        r_m2=12 * a**2 / b**4,
        r_m3=-8 / b**3,
        r_m4=0.0,
    )


CLOSED_INVARIANTS = {
    "riemannian": _closed_riemannian,
    "randers": _closed_randers,
    "kropina": _closed_kropina,
    "iseries1": _closed_iseries1,
    "iseries2": _closed_iseries2,
}


def closed_invariants(family, alpha: float, beta: float) -> InvariantSet:
    """Hand-simplified invariant formulas, independent of any Jet3."""
    fam = get_family(family)
    if not fam.admissible(alpha, beta):
        raise DomainError(f"{fam.id} {fam.constraint}")
    return CLOSED_INVARIANTS[fam.id](float(alpha), float(beta))


def max_rel_deviation(a, b) -> float:
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-30)))
