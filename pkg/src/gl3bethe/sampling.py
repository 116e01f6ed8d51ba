"""Seeded sampling of chains and spectral parameters.

The generator is Python's ``random.Random`` (MT19937) seeded with an integer.
A random rational has numerator and denominator drawn uniformly from the
nonzero integers in [-BOUND, BOUND].  Float runs draw the very same rationals
and convert them, so a float report shadows the exact one.  Draws that hit a
collision guard are rejected and redrawn; the rejection loop is part of the
stream, so the seed alone fixes every value.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .bethe import check_parameters
from .errors import Gl3BetheError, ParameterCollision
from .field import RATIONAL, scalar
from .rmatrix import ChainSpec

BOUND = 50
MAX_ATTEMPTS = 1000

_NONZERO = [k for k in range(-BOUND, BOUND + 1) if k]


class Sampler:
    """Seeded source of backend scalars."""

    def __init__(self, seed: int, backend: str = RATIONAL):
        self.seed = seed
        self.backend = backend
        self._rng = random.Random(seed)

    def rational(self) -> Fraction:
        return Fraction(self._rng.choice(_NONZERO), self._rng.choice(_NONZERO))

    def value(self):
        return scalar(self.rational(), self.backend)

    def values(self, n: int) -> list:
        return [self.value() for _ in range(n)]

    def permutation(self, n: int) -> list[int]:
        p = list(range(n))
        self._rng.shuffle(p)
        return p

    def chain(self, n_sites: int) -> ChainSpec:
        for _ in range(MAX_ATTEMPTS):
            try:
                return ChainSpec(self.value(), self.values(n_sites))
            except Gl3BetheError:
                continue
        raise ParameterCollision("no admissible chain after repeated draws")


@dataclass(frozen=True)
class ScalarCase:
    chain: ChainSpec
    tau: tuple
    sigma: tuple
    t: tuple
    s: tuple

    def to_json(self) -> dict:
        from .field import to_json

        return {
            "q": to_json(self.chain.q),
            "xi": [to_json(x) for x in self.chain.xi],
            "tau": [to_json(x) for x in self.tau],
            "sigma": [to_json(x) for x in self.sigma],
            "t": [to_json(x) for x in self.t],
            "s": [to_json(x) for x in self.s],
        }


def sample_scalar_case(sampler: Sampler, a: int, b: int, n_sites: int, left: tuple | None = None) -> ScalarCase:
    """Chain plus right family (a, b) and left family ``left`` (default (a, b)), all admissible."""
    la, lb = left if left is not None else (a, b)
    for _ in range(MAX_ATTEMPTS):
        chain = sampler.chain(n_sites)
        tau, sigma = sampler.values(la), sampler.values(lb)
        t, s = sampler.values(a), sampler.values(b)
        try:
            check_parameters(chain, tau + sigma + t + s)
        except ParameterCollision:
            continue
        return ScalarCase(chain, tuple(tau), tuple(sigma), tuple(t), tuple(s))
    raise ParameterCollision("no admissible parameter set after repeated draws")
