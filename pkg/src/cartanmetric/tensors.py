"""Fundamental tensor, its reciprocal, and the Cartan tensor at a point.

The closed routes assemble everything from the invariants; the oracle routes
differentiate y -> H(alpha(y), beta(y)) directly with Taylor jets seeded in
momentum directions, never touching the invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg

from .hfunction import DomainError, get_family, h_jet_closed
from .invariants import InvariantSet, invariants_from_jet
from .metric_space import Momentum, PointSample, contract_alpha_beta
from .taylor import TaylorScalar2


class SingularTensorError(ArithmeticError):
    pass


class FormulaUndefinedError(ArithmeticError):
    pass


def _cyclic(t: np.ndarray) -> np.ndarray:
    # T^ijk + T^jki + T^kij
    return t + np.transpose(t, (2, 0, 1)) + np.transpose(t, (1, 2, 0))


def liouville_vector(inv: InvariantSet, sample: PointSample, Y_upper: np.ndarray) -> np.ndarray:
    return inv.rho1 * sample.b_upper + inv.rho * Y_upper


def fundamental_tensor(inv: InvariantSet, sample: PointSample, Y_upper: np.ndarray) -> np.ndarray:
    b, Y = sample.b_upper, Y_upper
    bY = np.outer(b, Y)
    return (
        inv.rho * sample.a_upper
        + inv.rho0 * np.outer(b, b)
        + inv.rho_m1 * (bY + bY.T)
        + inv.rho_m2 * np.outer(Y, Y)
    )


def fundamental_tensor_scale(inv: InvariantSet, sample: PointSample, Y_upper: np.ndarray) -> np.ndarray:
    """Entrywise sum of |terms| in :func:`fundamental_tensor`."""
    b, Y = np.abs(sample.b_upper), np.abs(Y_upper)
    bY = np.outer(b, Y)
    return (
        abs(inv.rho) * np.abs(sample.a_upper)
        + abs(inv.rho0) * np.outer(b, b)
        + abs(inv.rho_m1) * (bY + bY.T)
        + abs(inv.rho_m2) * np.outer(Y, Y)
    )


def cartan_tensor_closed(inv: InvariantSet, sample: PointSample, Y_upper: np.ndarray) -> np.ndarray:
    a, b, Y = sample.a_upper, sample.b_upper, Y_upper
    bracket = (
        inv.rho_m1 * np.einsum("ij,k->ijk", a, b)
        + inv.rho_m2 * np.einsum("ij,k->ijk", a, Y)
        + inv.r_m2 * np.einsum("i,j,k->ijk", b, b, Y)
        + inv.r_m3 * np.einsum("i,j,k->ijk", b, Y, Y)
    )
    total = (
        inv.r_m1 * np.einsum("i,j,k->ijk", b, b, b)
        + _cyclic(bracket)
        + inv.r_m4 * np.einsum("i,j,k->ijk", Y, Y, Y)
    )
    return -0.5 * total


# -- jet oracles --------------------------------------------------------------


def _h_over_jets(family, sample: PointSample, y: np.ndarray, d1: np.ndarray, d2: np.ndarray) -> TaylorScalar2:
    """H along y + e1*d1 + e2*d2; d1, d2 have shape batch + (n,)."""
    fam = get_family(family)
    alpha, beta, _ = contract_alpha_beta(sample, Momentum(y))
    if not fam.admissible(alpha, beta):
        raise DomainError(f"{fam.id} {fam.constraint}; got α={alpha!r}, β={beta!r}")
    n = len(y)
    comps = [TaylorScalar2.seed(np.full(d1.shape[:-1], y[k]), d1[..., k], d2[..., k]) for k in range(n)]
    a = sample.a_upper
    alpha2 = None
    for k in range(n):
        Yk = comps[0] * a[k, 0]
        for l in range(1, n):
            Yk = Yk + comps[l] * a[k, l]
        term = comps[k] * Yk
        alpha2 = term if alpha2 is None else alpha2 + term
    beta_j = comps[0] * sample.b_upper[0]
    for k in range(1, n):
        beta_j = beta_j + comps[k] * sample.b_upper[k]
    try:
        return fam.recipe(alpha2.sqrt(), beta_j)
    except ZeroDivisionError as exc:
        raise DomainError(f"{fam.id}: {exc}") from exc


def hessian_oracle(family, sample: PointSample, y: Momentum) -> np.ndarray:
    """1/2 d^2 H / dy_i dy_j from mixed jet coefficients."""
    n = sample.dim
    eye = np.eye(n)
    d1 = np.broadcast_to(eye[:, None, :], (n, n, n))
    d2 = np.broadcast_to(eye[None, :, :], (n, n, n))
    h = _h_over_jets(family, sample, y.y, d1, d2)
    g = 0.5 * h.derivative(1, 1)
    return 0.5 * (g + g.T)


def cartan_tensor_oracle(family, sample: PointSample, y: Momentum) -> np.ndarray:
    """-1/2 d^k g^ij = -1/4 d^3 H / dy_i dy_j dy_k.

    Third mixed partials come from polarization of D^3 H[u, u, v]:
    D^3 H[e_i, e_j, e_k] = (D^3 H[e_i+e_j, e_i+e_j, e_k] - D^3 H[e_i-e_j, e_i-e_j, e_k]) / 4.
    """
    n = sample.dim
    eye = np.eye(n)
    plus = eye[:, None, :] + eye[None, :, :]
    minus = eye[:, None, :] - eye[None, :, :]
    u = np.stack([plus, minus])[:, :, :, None, :]  # (2, i, j, 1, n)
    v = eye[None, None, None, :, :]  # (1, 1, 1, k, n)
    u, v = np.broadcast_arrays(u, v)
    h = _h_over_jets(family, sample, y.y, u, v)
    d3 = h.derivative(2, 1)  # D^3 H[u, u, v]
    return -0.25 * (d3[0] - d3[1]) / 4.0


# -- reciprocal tensor and determinant diagnostics ------------------------------


def covariant_via_inversion(g_upper: np.ndarray) -> np.ndarray:
    n = g_upper.shape[0]
    scale = float(np.abs(g_upper).max())
    det = float(np.linalg.det(g_upper))
    if scale == 0.0 or abs(det) < 1e-12 * scale**n:
        raise SingularTensorError(f"fundamental tensor is singular (det={det!r})")
    g_low = scipy.linalg.solve(g_upper, np.eye(n), assume_a="sym")
    return 0.5 * (g_low + g_low.T)


class CovariantFormula(NamedTuple):
    matrix: np.ndarray
    deviation: float  # max |g_ij g^jk - delta| against the closed g^ij


def covariant_via_paper(inv: InvariantSet, sample: PointSample, y: Momentum, tau: float) -> CovariantFormula:
    """Reciprocal tensor by the rank-one (Sherman-Morrison) formula.

    Exact only where rho0 rho_m2 = rho_m1^2; elsewhere ``deviation`` measures
    how far it is from the true inverse.
    """
    if abs(tau) < 1e-300 or abs(inv.rho) < 1e-300:
        raise FormulaUndefinedError("rho*tau vanishes; the rank-one reciprocal formula is undefined")
    yl, B = y.y, sample.B_lower
    By = np.outer(B, yl)
    correction = inv.rho0 * np.outer(B, B) + inv.rho_m1 * (By + By.T) + inv.rho_m2 * np.outer(yl, yl)
    g_low = sample.a_lower / inv.rho - correction / (inv.rho * tau)
    _, _, Y = contract_alpha_beta(sample, y)
    g_up = fundamental_tensor(inv, sample, Y)
    deviation = float(np.abs(g_low @ g_up - np.eye(sample.dim)).max())
    return CovariantFormula(g_low, deviation)


def tau_value(inv: InvariantSet, sample: PointSample, beta: float) -> float:
    return inv.rho + inv.rho0 * sample.B2 + inv.rho_m1 * beta


def rank1_residual(inv: InvariantSet) -> float:
    return inv.rho0 * inv.rho_m2 - inv.rho_m1**2


class TauDet(NamedTuple):
    tau: float
    det_g: float
    det_identity_residual: float
    rank1_residual: float


def tau_and_det(inv: InvariantSet, sample: PointSample, beta: float, g_upper: np.ndarray) -> TauDet:
    n = sample.dim
    tau = tau_value(inv, sample, beta)
    det_g = float(np.linalg.det(g_upper))
    predicted = inv.rho ** (n - 1) * tau * sample.det_a_upper
    return TauDet(tau, det_g, det_g - predicted, rank1_residual(inv))


@dataclass(frozen=True)
class Rank1Decomposition:
    residual: float
    q0: Optional[float] = None
    q_m1: Optional[float] = None
    C2: Optional[float] = None
    degenerate: bool = False

    @property
    def present(self) -> bool:
        return self.q0 is not None


def rank1_decomposition(inv: InvariantSet, sample: Optional[PointSample] = None, beta: Optional[float] = None) -> Rank1Decomposition:
    """Split rho0 b b + rho_m1 (bY + Yb) + rho_m2 Y Y as C C with C = q0 b + q_m1 Y."""
    res = rank1_residual(inv)
    scale = max(abs(inv.rho0 * inv.rho_m2), inv.rho_m1**2, 1.0)
    if inv.rho0 == 0.0:
        degenerate = inv.rho_m1 == 0.0 and inv.rho_m2 == 0.0
        return Rank1Decomposition(res, degenerate=degenerate)
    if inv.rho0 < 0.0 or abs(res) > 1e-10 * scale:
        return Rank1Decomposition(res)
    q0 = float(np.sqrt(inv.rho0))
    C2 = None
    if sample is not None and beta is not None:
        C2 = (inv.rho0 * sample.B2 + inv.rho_m1 * beta) / inv.rho
    return Rank1Decomposition(res, q0, inv.rho_m1 / q0, C2)


def signature(g_upper: np.ndarray, rtol: float = 1e-12) -> tuple[int, int, int]:
    eig = np.linalg.eigvalsh(g_upper)
    cut = rtol * max(float(np.abs(eig).max()), 1e-300)
    return int((eig > cut).sum()), int((np.abs(eig) <= cut).sum()), int((eig < -cut).sum())


@dataclass(frozen=True)
class TensorBundle:
    alpha: float
    beta: float
    H: float
    invariants: InvariantSet
    y_upper: np.ndarray
    g_upper: np.ndarray
    g_lower: np.ndarray
    cartan: np.ndarray
    tau: float
    det_g_upper: float
    det_identity_residual: float
    rank1_residual: float
    C2: Optional[float]
    signature: tuple[int, int, int]


def tensor_bundle(family, sample: PointSample, y: Momentum) -> TensorBundle:
    alpha, beta, Y = contract_alpha_beta(sample, y)
    jet = h_jet_closed(family, alpha, beta)
    inv = invariants_from_jet(jet, alpha)
    g_up = fundamental_tensor(inv, sample, Y)
    td = tau_and_det(inv, sample, beta, g_up)
    return TensorBundle(
        alpha=alpha,
        beta=beta,
        H=jet.H,
        invariants=inv,
        y_upper=liouville_vector(inv, sample, Y),
        g_upper=g_up,
        g_lower=covariant_via_inversion(g_up),
        cartan=cartan_tensor_closed(inv, sample, Y),
        tau=td.tau,
        det_g_upper=td.det_g,
        det_identity_residual=td.det_identity_residual,
        rank1_residual=td.rank1_residual,
        C2=rank1_decomposition(inv, sample, beta).C2,
        signature=signature(g_up),
    )
