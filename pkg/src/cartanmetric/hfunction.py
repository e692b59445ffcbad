"""Catalog of (alpha, beta)-metric families and their derivative jets.

Each family carries two independent routes to the partial derivatives of
H(alpha, beta) up to order three:

* ``closed``: hand-derived closed forms;
* ``recipe``: the bare algebraic definition of H, evaluated over
  :class:`~cartanmetric.taylor.TaylorScalar2` by :func:`h_jet_oracle`.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields
from typing import Callable

from .taylor import TaylorScalar2


class DomainError(ValueError):
    """(alpha, beta) outside the region where a family is defined."""


@dataclass(frozen=True)
class Jet3:
    H: float
    H_a: float
    H_b: float
    H_aa: float
    H_ab: float
    H_bb: float
    H_aaa: float
    H_aab: float
    H_abb: float
    H_bbb: float

    @classmethod
    def names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names(), self.as_tuple()))


# derivative order (in alpha, beta) of every Jet3 field
JET_ORDERS: dict[str, tuple[int, int]] = {
    "H": (0, 0),
    "H_a": (1, 0),
    "H_b": (0, 1),
    "H_aa": (2, 0),
    "H_ab": (1, 1),
    "H_bb": (0, 2),
    "H_aaa": (3, 0),
    "H_aab": (2, 1),
    "H_abb": (1, 2),
    "H_bbb": (0, 3),
}


@dataclass(frozen=True)
class MetricFamily:
    id: str
    label: str
    recipe: Callable  # H(alpha, beta) over floats or jets
    closed: Callable[[float, float], Jet3]
    admissible: Callable[[float, float], bool]
    constraint: str

    def __str__(self) -> str:
        return self.id


# -- closed forms -----------------------------------------------------------


def _riemannian_closed(a, b):
    z = 0.0 * a
    return Jet3(a * a, 2 * a, z, 2.0 + z, z, z, z, z, z, z)


def _randers_closed(a, b):
    s = a + b
    two = 2.0 + 0.0 * s
    z = 0.0 * s
    return Jet3(s * s, 2 * s, 2 * s, two, two, two, z, z, z, z)


def _kropina_closed(a, b):
    # H = alpha**4 / beta**2
    return Jet3(
        a**4 / b**2,
        4 * a**3 / b**2,
        -2 * a**4 / b**3,
        12 * a**2 / b**2,
        -8 * a**3 / b**3,
        6 * a**4 / b**4,
        24 * a / b**2,
        -24 * a**2 / b**3,
        24 * a**3 / b**4,
        -24 * a**4 / b**5,
    )


def _iseries1_closed(a, b):
    # H = alpha beta^2 / (beta - alpha)
    d = b - a
    return Jet3(
        a * b**2 / d,
        b**3 / d**2,
        (a * b**2 - 2 * a**2 * b) / d**2,
        2 * b**3 / d**3,
        (b**3 - 3 * a * b**2) / d**3,
        2 * a**3 / d**3,
        6 * b**3 / d**4,
        -6 * a * b**2 / d**4,
        6 * a**2 * b / d**4,
        -6 * a**3 / d**4,
    )


def _iseries2_closed(a, b):
    # H = beta^3 / (beta - alpha); equals case I plus beta^2
    d = b - a
    return Jet3(
        b**3 / d,
        b**3 / d**2,
        (2 * b**3 - 3 * a * b**2) / d**2,
        2 * b**3 / d**3,
        (b**3 - 3 * a * b**2) / d**3,
        (2 * b**3 - 6 * a * b**2 + 6 * a**2 * b) / d**3,
        6 * b**3 / d**4,
        -6 * a * b**2 / d**4,
        6 * a**2 * b / d**4,
        -6 * a**3 / d**4,
    )


FAMILIES: dict[str, MetricFamily] = {
    f.id: f
    for f in (
        MetricFamily(
            "riemannian",
            "H = alpha^2",
            lambda a, b: a * a,
            _riemannian_closed,
            lambda a, b: a > 0,
            "requires α>0",
        ),
        MetricFamily(
            "randers",
            "H = (alpha + beta)^2",
            lambda a, b: (a + b) * (a + b),
            _randers_closed,
            lambda a, b: a > 0 and a + b > 0,
            "requires α>0 and α+β>0",
        ),
        MetricFamily(
            "kropina",
            "H = (alpha^2 / beta)^2",
            lambda a, b: (a * a) * (a * a) / (b * b),
            _kropina_closed,
            lambda a, b: a > 0 and b != 0,
            "requires α>0 and β≠0",
        ),
        MetricFamily(
            "iseries1",
            "H = alpha beta^2 / (beta - alpha)",
            lambda a, b: a * b * b / (b - a),
            _iseries1_closed,
            lambda a, b: b > a > 0,
            "requires β>α>0",
        ),
        MetricFamily(
            "iseries2",
            "H = beta^3 / (beta - alpha)",
            lambda a, b: b * b * b / (b - a),
            _iseries2_closed,
            lambda a, b: b > a > 0,
            "requires β>α>0",
        ),
    )
}

_ALIASES = {
    "randers-type": "randers",
    "kropina-type": "kropina",
    "infinite-series-I": "iseries1",
    "infinite-series-II": "iseries2",
}


def get_family(family: "str | MetricFamily") -> MetricFamily:
    if isinstance(family, MetricFamily):
        return family
    key = _ALIASES.get(family, family)
    try:
        return FAMILIES[key]
    except KeyError:
        raise KeyError(f"unknown metric family {family!r}; choose from {sorted(FAMILIES)}") from None


def admissible(family, alpha: float, beta: float) -> bool:
    return bool(get_family(family).admissible(alpha, beta))


def _require(fam: MetricFamily, alpha: float, beta: float) -> None:
    if not fam.admissible(alpha, beta):
        raise DomainError(f"{fam.id} {fam.constraint}; got α={alpha!r}, β={beta!r}")


def h_value(family, alpha: float, beta: float) -> float:
    fam = get_family(family)
    _require(fam, alpha, beta)
    return float(fam.recipe(float(alpha), float(beta)))


def h_jet_closed(family, alpha: float, beta: float) -> Jet3:
    fam = get_family(family)
    _require(fam, alpha, beta)
    return Jet3(*(float(v) for v in fam.closed(float(alpha), float(beta)).as_tuple()))


def h_jet_oracle(family, alpha: float, beta: float) -> Jet3:
    """Derivatives read off a Taylor expansion of the family recipe."""
    fam = get_family(family)
    _require(fam, alpha, beta)
    a = TaylorScalar2.seed(alpha, 1.0, 0.0)
    b = TaylorScalar2.seed(beta, 0.0, 1.0)
    try:
        h = fam.recipe(a, b)
    except ZeroDivisionError as exc:
        raise DomainError(f"{fam.id}: {exc}") from exc
    return Jet3(*(float(h.derivative(p, q)) for p, q in JET_ORDERS.values()))


def h_pair_difference(alpha: float, beta: float) -> float:
    """H_II - H_I, which is beta^2 in closed form."""
    return h_value("iseries2", alpha, beta) - h_value("iseries1", alpha, beta)
