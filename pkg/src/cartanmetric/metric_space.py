"""Base-manifold data: the cometric a^ij(x) and the one-form b^i(x)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Union

import numpy as np

from .hfunction import get_family


class SpecError(ValueError):
    """Invalid manifold-spec document; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class EvaluationError(ValueError):
    pass


class SamplingError(RuntimeError):
    """No admissible point found within the retry budget."""


@dataclass(frozen=True)
class ConstantCometric:
    matrix: np.ndarray

    def at(self, x: np.ndarray) -> np.ndarray:
        return self.matrix

    def to_dict(self) -> dict:
        return {"kind": "constant", "matrix": self.matrix.tolist()}


@dataclass(frozen=True)
class ConformalCometric:
    """a^ij(x) = exp(-2 kappa.x) delta^ij."""

    kappa: np.ndarray

    def at(self, x: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore", under="ignore"):
            factor = np.exp(-2.0 * float(self.kappa @ x))
        return factor * np.eye(len(self.kappa))

    def to_dict(self) -> dict:
        return {"kind": "conformal", "kappa": self.kappa.tolist()}


@dataclass(frozen=True)
class ConstantOneForm:
    b: np.ndarray

    def at(self, x: np.ndarray) -> np.ndarray:
        return self.b

    def to_dict(self) -> dict:
        return {"kind": "constant", "b": self.b.tolist()}


@dataclass(frozen=True)
class AffineOneForm:
    """b^i(x) = c^i + M^i_j x^j."""

    c: np.ndarray
    M: np.ndarray

    def at(self, x: np.ndarray) -> np.ndarray:
        return self.c + self.M @ x

    def to_dict(self) -> dict:
        return {"kind": "affine", "c": self.c.tolist(), "M": self.M.tolist()}


Cometric = Union[ConstantCometric, ConformalCometric]
OneForm = Union[ConstantOneForm, AffineOneForm]


@dataclass(frozen=True)
class ManifoldSpec:
    dim: int
    cometric: Cometric
    oneform: OneForm

    def to_dict(self) -> dict:
        return {"dim": self.dim, "cometric": self.cometric.to_dict(), "oneform": self.oneform.to_dict()}

    def digest(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class PointSample:
    x: np.ndarray
    a_upper: np.ndarray
    a_lower: np.ndarray
    b_upper: np.ndarray
    B_lower: np.ndarray
    B2: float
    det_a_upper: float

    @property
    def dim(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class Momentum:
    y: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float)
        if y.ndim != 1 or not np.any(y != 0.0):
            raise ValueError("momentum y must be a nonzero vector")
        object.__setattr__(self, "y", y)


# -- parsing ----------------------------------------------------------------


def _vector(raw, n: int, path: str) -> np.ndarray:
    try:
        v = np.asarray(raw, dtype=float)
    except (TypeError, ValueError):
        raise SpecError(path, "expected a list of numbers") from None
    if v.shape != (n,):
        raise SpecError(path, f"expected length {n}, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise SpecError(path, "entries must be finite")
    return v


def _matrix(raw, n: int, path: str) -> np.ndarray:
    try:
        m = np.asarray(raw, dtype=float)
    except (TypeError, ValueError):
        raise SpecError(path, "expected a nested list of numbers") from None
    if m.shape != (n, n):
        raise SpecError(path, f"expected shape ({n}, {n}), got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise SpecError(path, "entries must be finite")
    return m


def _check_spd(m: np.ndarray, path: str) -> None:
    if not np.allclose(m, m.T, rtol=0.0, atol=1e-13 * max(1.0, np.abs(m).max())):
        raise SpecError(path, "matrix is not symmetric")
    try:
        np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        eig = np.linalg.eigvalsh(m)
        raise SpecError(path, f"matrix is not positive definite (eigenvalues {eig.tolist()})") from None


def _kind(raw, path: str, allowed: tuple[str, ...]) -> str:
    if not isinstance(raw, dict):
        raise SpecError(path, "expected an object")
    kind = raw.get("kind")
    if kind not in allowed:
        raise SpecError(f"{path}.kind", f"expected one of {allowed}, got {kind!r}")
    return kind


def parse_manifold_spec(doc: dict) -> ManifoldSpec:
    if not isinstance(doc, dict):
        raise SpecError("$", "expected a JSON object")
    n = doc.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise SpecError("dim", f"expected an integer >= 2, got {n!r}")

    raw = doc.get("cometric")
    if _kind(raw, "cometric", ("constant", "conformal")) == "constant":
        m = _matrix(raw.get("matrix"), n, "cometric.matrix")
        _check_spd(m, "cometric.matrix")
        cometric: Cometric = ConstantCometric(m)
    else:
        cometric = ConformalCometric(_vector(raw.get("kappa"), n, "cometric.kappa"))

    raw = doc.get("oneform")
    if _kind(raw, "oneform", ("constant", "affine")) == "constant":
        b = _vector(raw.get("b"), n, "oneform.b")
        if not np.any(b != 0.0):
            raise SpecError("oneform.b", "one-form must not be the zero vector")
        oneform: OneForm = ConstantOneForm(b)
    else:
        c = _vector(raw.get("c"), n, "oneform.c")
        M = _matrix(raw.get("M"), n, "oneform.M")
        if not np.any(c != 0.0) and not np.any(M != 0.0):
            raise SpecError("oneform", "one-form must not be identically zero")
        oneform = AffineOneForm(c, M)

    return ManifoldSpec(n, cometric, oneform)


def load_manifold_spec(text: str) -> ManifoldSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("$", f"not valid JSON ({exc})") from None
    return parse_manifold_spec(doc)


def euclidean_spec(b) -> ManifoldSpec:
    b = np.asarray(b, dtype=float)
    return ManifoldSpec(len(b), ConstantCometric(np.eye(len(b))), ConstantOneForm(b))


# -- pointwise evaluation ---------------------------------------------------


def evaluate_point(spec: ManifoldSpec, x) -> PointSample:
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.dim,):
        raise EvaluationError(f"x must have length {spec.dim}")
    a_up = np.array(spec.cometric.at(x), dtype=float)
    if not np.all(np.isfinite(a_up)) or not np.any(a_up != 0.0):
        raise EvaluationError(f"cometric is singular or overflows at x={x.tolist()}")
    try:
        chol = np.linalg.cholesky(a_up)
    except np.linalg.LinAlgError:
        raise EvaluationError(f"cometric is not positive definite at x={x.tolist()}") from None
    eye = np.eye(spec.dim)
    a_low = np.linalg.solve(a_up, eye)
    a_low = 0.5 * (a_low + a_low.T)
    det_a = float(np.prod(np.diag(chol)) ** 2)
    if det_a == 0.0 or not np.isfinite(det_a):
        raise EvaluationError(f"det a^ij is not a usable nonzero number at x={x.tolist()}")

    b = np.array(spec.oneform.at(x), dtype=float)
    if not np.any(b != 0.0):
        raise EvaluationError(f"one-form vanishes at x={x.tolist()}")
    B_low = a_low @ b
    return PointSample(x, a_up, a_low, b, B_low, float(b @ B_low), det_a)


def contract_alpha_beta(sample: PointSample, y: Momentum) -> tuple[float, float, np.ndarray]:
    yv = y.y
    Y = sample.a_upper @ yv
    alpha = float(np.sqrt(yv @ Y))
    beta = float(sample.b_upper @ yv)
    return alpha, beta, Y


def sample_admissible(spec: ManifoldSpec, family, count: int, seed: int) -> list[tuple[np.ndarray, Momentum]]:
    """Seeded rejection sampling of base points and momenta.

    Index ``k`` draws from its own stream ``default_rng([seed, k])``, so the
    k-th pair does not depend on how many pairs precede it.  Each draw puts
    y uniformly in [-1, 1]^n and rescales it to a log-uniform alpha in
    [1/2, 2]; base points are uniform in [-1, 1]^n.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    fam = get_family(family)
    budget = 10_000
    out = []
    for k in range(count):
        rng = np.random.default_rng([seed, k])
        for _ in range(budget):
            x = rng.uniform(-1.0, 1.0, spec.dim)
            y = rng.uniform(-1.0, 1.0, spec.dim)
            radius = 2.0 ** rng.uniform(-1.0, 1.0)
            if not np.any(y != 0.0):
                continue
            try:
                sample = evaluate_point(spec, x)
            except EvaluationError:
                continue
            alpha, _, _ = contract_alpha_beta(sample, Momentum(y))
            y = y * (radius / alpha)
            alpha, beta, _ = contract_alpha_beta(sample, Momentum(y))
            if fam.admissible(alpha, beta):
                out.append((x, Momentum(y)))
                break
        else:
            raise SamplingError(
                f"admissible region not found for {fam.id} ({fam.constraint}) "
                f"after {budget} draws for sample {k}"
            )
    return out
