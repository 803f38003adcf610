"""Hidden-variable models under audit.

Two families live here:

* A trivector model where the hidden state of a particle is mu = +-I (the
  unit pseudoscalar, effectively a Z_2 label) and a meter along the unit
  vector n reads the bivector value  def_sign * (mu . n) = def_sign * mu * I n.
  An interpretation map turns that bivector into a +-1 leg: the natural
  choice reads I n as "up" for meter axes with a positive leading component.
* Bell's scalar toy model (Eq. (9) of Bell, Physics 1, 195 (1964)): the
  hidden state is a unit vector lambda and the outcome is sign(a . lambda),
  optionally combined with a post-measurement redraw of lambda from the
  hemisphere centred on the measured direction.

All functions are pure; the randomized ones take an explicit numpy
Generator so runs stay reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .clifford import Multivector, I_BLADE, dot, geometric_product, unit_vector, Vec3

NATURAL = 1
FLIPPED = -1

DIRECTION_TAGS = ("z", "x")


@dataclass(frozen=True)
class HiddenState:
    """Trivector hidden variable mu = mu_sign * I with mu_sign in {-1, +1}."""

    mu_sign: int

    def __post_init__(self):
        if self.mu_sign not in (1, -1):
            raise ValueError("mu_sign must be +1 or -1")

    def as_multivector(self) -> Multivector:
        return Multivector.pseudoscalar(float(self.mu_sign))


MU_PLUS = HiddenState(1)
MU_MINUS = HiddenState(-1)
MU_STATES = (MU_PLUS, MU_MINUS)


@dataclass(frozen=True)
class MeterModel:
    """One spin meter: a sign in the observable definition and a leg map.

    def_sign=+1 reads mu . n, def_sign=-1 reads -(mu . n).  interp=NATURAL
    maps the +I n bivector orientation to the "up" leg; FLIPPED swaps legs.
    """

    def_sign: int = 1
    interp: int = NATURAL

    def __post_init__(self):
        if self.def_sign not in (1, -1):
            raise ValueError("def_sign must be +1 or -1")
        if self.interp not in (NATURAL, FLIPPED):
            raise ValueError("interp must be NATURAL (+1) or FLIPPED (-1)")


def observable_value(meter: MeterModel, n: Vec3, mu: HiddenState) -> Multivector:
    """Bivector reading def_sign * (mu . n); always unit coefficient norm."""
    n = unit_vector(n)
    reading = dot(mu.as_multivector(), Multivector.from_vector(n))
    return meter.def_sign * reading


def _leading_sign(n: Vec3) -> int:
    for component in n:
        if component != 0.0:
            return 1 if component > 0.0 else -1
    raise ValueError("direction has no nonzero component")


def meter_outcome(meter: MeterModel, n: Vec3, mu: HiddenState) -> int:
    """Interpreted +-1 leg of the bivector reading.

    The orientation is read against I a, where a is the meter axis oriented
    to have a positive leading component, so meters pointed along -n report
    inverted legs, matching the scalar shortcut below.
    """
    unit_vector(n)
    return meter.interp * meter.def_sign * mu.mu_sign * _leading_sign(n)


def effective_outcome(n: Vec3, mu: HiddenState) -> int:
    """Scalar shortcut mu I^-1 sgn(n*): mu_sign times the sign of the first
    nonzero component of n.  Agrees with the natural reading of the
    bivector observable for every direction."""
    return mu.mu_sign * _leading_sign(n)


def pair_product(meter_a: MeterModel, meter_b: MeterModel,
                 a: Vec3, b: Vec3, mu: HiddenState) -> Multivector:
    """Geometric product of the two meter readings; a scalar plus bivector.

    Both factors carry mu, so the result is independent of mu_sign."""
    return geometric_product(observable_value(meter_a, a, mu),
                             observable_value(meter_b, b, mu))


def expectation_over_mu(f: Callable[[HiddenState], Multivector]) -> Multivector:
    """Exact average of f over the two hidden states, uniformly weighted."""
    return (f(MU_PLUS) + f(MU_MINUS)) / 2.0


def expectation_over_mu_scalar(f: Callable[[HiddenState], float]) -> float:
    return (f(MU_PLUS) + f(MU_MINUS)) / 2.0


@dataclass(frozen=True)
class ConstraintAverages:
    """Averages a viable local model must satisfy: the commutator average
    should vanish for all direction pairs and the squared observable should
    average to +1.  Violations are data for the caller, not errors."""

    commutator_avg: Multivector
    square_avg: Multivector


def constraint_check(meter_a: MeterModel, meter_b: MeterModel,
                     a: Vec3, b: Vec3) -> ConstraintAverages:
    def commutator(mu: HiddenState) -> Multivector:
        av = observable_value(meter_a, a, mu)
        bv = observable_value(meter_b, b, mu)
        return geometric_product(av, bv) - geometric_product(bv, av)

    def square(mu: HiddenState) -> Multivector:
        av = observable_value(meter_a, a, mu)
        return geometric_product(av, av)

    return ConstraintAverages(commutator_avg=expectation_over_mu(commutator),
                              square_avg=expectation_over_mu(square))


# -- Bell's scalar toy model -------------------------------------------------


def bell_observable(a: Vec3, lam: Vec3) -> int:
    """sign(a . lambda); the measure-zero tie a . lambda = 0 resolves to +1
    so that runs are reproducible."""
    a = unit_vector(a)
    lam = unit_vector(lam)
    value = a[0] * lam[0] + a[1] * lam[1] + a[2] * lam[2]
    return 1 if value >= 0.0 else -1


def random_unit_vectors(rng: np.random.Generator, size: int) -> np.ndarray:
    """(size, 3) array of directions uniform on the sphere."""
    draws = rng.normal(size=(size, 3))
    norms = np.linalg.norm(draws, axis=1)
    while np.any(norms < 1e-12):
        bad = norms < 1e-12
        draws[bad] = rng.normal(size=(int(bad.sum()), 3))
        norms = np.linalg.norm(draws, axis=1)
    return draws / norms[:, None]


def hemisphere_samples(n: Vec3, outcome: int, rng: np.random.Generator,
                       size: int) -> np.ndarray:
    """(size, 3) lambdas uniform on the hemisphere {outcome * (n.lam) > 0}."""
    n = unit_vector(n)
    if outcome not in (1, -1):
        raise ValueError("outcome must be +1 or -1")
    lams = random_unit_vectors(rng, size)
    axis = np.asarray(n)
    wrong_side = (lams @ axis) * outcome < 0.0
    lams[wrong_side] = -lams[wrong_side]
    return lams


def hemisphere_update(n: Vec3, outcome: int, rng: np.random.Generator) -> Vec3:
    """Redraw lambda uniformly from the hemisphere with pole outcome * n.
    The marginal of n . lambda then has mean outcome * 1/2."""
    lam = hemisphere_samples(n, outcome, rng, 1)[0]
    return (float(lam[0]), float(lam[1]), float(lam[2]))


# -- post-measurement update rules -------------------------------------------


@dataclass(frozen=True)
class UpdateRule:
    """Stochastic transition on the trivector hidden state: after measuring
    along `tag`, mu_sign is negated with probability flip_probs[(mu_sign, tag)].
    """

    flip_probs: Mapping[tuple[int, str], float] = field(default_factory=dict)

    def __post_init__(self):
        for key, p in self.flip_probs.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"flip probability {p!r} for {key!r} not in [0, 1]")

    def prob(self, mu_sign: int, tag: str) -> float:
        key = (mu_sign, tag)
        if key not in self.flip_probs:
            raise ValueError(f"update rule not defined for {key!r}")
        return self.flip_probs[key]

    @classmethod
    def identity(cls) -> "UpdateRule":
        return cls.uniform(0.0)

    @classmethod
    def uniform(cls, p: float) -> "UpdateRule":
        return cls({(sign, tag): p for sign in (1, -1) for tag in DIRECTION_TAGS})

    @classmethod
    def post_z(cls, p: float) -> "UpdateRule":
        """Flip with probability p after a z measurement, never after x."""
        probs = {(sign, "z"): p for sign in (1, -1)}
        probs.update({(sign, "x"): 0.0 for sign in (1, -1)})
        return cls(probs)


def apply_update(rule: UpdateRule, mu: HiddenState, direction_tag: str,
                 rng: np.random.Generator) -> HiddenState:
    p = rule.prob(mu.mu_sign, direction_tag)
    if rng.random() < p:
        return HiddenState(-mu.mu_sign)
    return mu
