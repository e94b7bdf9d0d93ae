"""Torus-invariant Cartier divisors on smooth complete toric varieties.

A divisor ``D = sum a_i D_i`` is stored as its coefficient tuple in the ray
order of the fan.  On each max cone ``sigma`` the support function is the
linear form ``m_sigma`` determined by ``<m_sigma, u_i> = -a_i`` for the rays
of ``sigma``.  Nefness (equivalently basepoint-freeness, equivalently upper
convexity of the support function) holds iff every ``m_sigma`` lies in

    P_D = {m : <m, u_i> >= -a_i for every ray i},

and ampleness iff in addition the inequalities for rays outside ``sigma``
are strict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import lattice as lat
from .errors import InputError
from .fan import Fan, require_smooth_complete
from .lattice import LatticeVector
from .polytope import Halfspace, HPolytope


@dataclass(frozen=True)
class ToricDivisor:
    coefficients: Tuple[int, ...]

    def __init__(self, coefficients: Sequence[int]):
        for a in coefficients:
            if isinstance(a, bool) or not isinstance(a, int):
                raise InputError(f"divisor coefficients must be integers, got {a!r}")
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def prime(cls, fan: Fan, i: int) -> "ToricDivisor":
        """The invariant prime divisor ``D_i`` of ray ``i``."""
        if not 0 <= i < len(fan.rays):
            raise InputError(f"ray index {i} out of range")
        return cls([int(j == i) for j in range(len(fan.rays))])

    def __add__(self, other: "ToricDivisor") -> "ToricDivisor":
        return ToricDivisor([a + b for a, b in zip(self.coefficients, other.coefficients)])


@dataclass(frozen=True)
class SupportFunction:
    """``per_cone[k]`` is the linear datum ``m_sigma`` on max cone ``k``."""

    per_cone: Tuple[LatticeVector, ...]

    def on_cone(self, k: int, u: Sequence[int]) -> int:
        return lat.pairing(self.per_cone[k], u)


@dataclass(frozen=True)
class NefCertificate:
    """Outcome of a nef or ampleness test.

    On failure ``witness = (cone, ray)`` names the first max cone and ray, in
    the fan's order, whose inequality ``<m_cone, u_ray> >= -a_ray`` fails (or,
    for ampleness, holds with equality although the ray is off the cone).
    """

    verdict: bool
    witness: Optional[Tuple[int, int]] = None
    value: Optional[int] = None
    bound: Optional[int] = None

    def __bool__(self):
        return self.verdict


def _check_divisor(fan: Fan, D: ToricDivisor) -> None:
    if len(D.coefficients) != len(fan.rays):
        raise InputError(f"divisor has {len(D.coefficients)} coefficients but the fan has {len(fan.rays)} rays")


def support_function(fan: Fan, D: ToricDivisor) -> SupportFunction:
    require_smooth_complete(fan)
    _check_divisor(fan, D)
    a = D.coefficients
    per_cone = []
    for k, cone in enumerate(fan.max_cones):
        m = lat.integral_solve(fan.cone_rays(k), [-a[i] for i in cone])
        assert all(lat.pairing(m, fan.rays[i]) == -a[i] for i in cone)
        per_cone.append(m)
    return SupportFunction(tuple(per_cone))


def divisor_polytope(fan: Fan, D: ToricDivisor) -> HPolytope:
    """``P_D``, one inequality per ray, in ray order."""
    _check_divisor(fan, D)
    return HPolytope(
        (Halfspace(u, Fraction(-a)) for u, a in zip(fan.rays, D.coefficients)),
        fan.dim,
    )


def _convexity_check(fan: Fan, D: ToricDivisor, strict: bool) -> NefCertificate:
    phi = support_function(fan, D)
    a = D.coefficients
    for k, cone in enumerate(fan.max_cones):
        for j, u in enumerate(fan.rays):
            value = phi.on_cone(k, u)
            if value < -a[j] or (strict and j not in cone and value == -a[j]):
                return NefCertificate(False, (k, j), value, -a[j])
    return NefCertificate(True)


def is_nef(fan: Fan, D: ToricDivisor) -> NefCertificate:
    """Decide nefness; the same verdict decides basepoint-freeness."""
    return _convexity_check(fan, D, strict=False)


def is_ample(fan: Fan, D: ToricDivisor) -> NefCertificate:
    """Decide ampleness via strict convexity of the support function."""
    return _convexity_check(fan, D, strict=True)


def anticanonical(fan: Fan) -> ToricDivisor:
    return ToricDivisor([1] * len(fan.rays))


def is_fano(fan: Fan) -> bool:
    return bool(is_ample(fan, anticanonical(fan)))


def divisor_to_json(D: ToricDivisor) -> dict:
    return {"coefficients": list(D.coefficients)}


def divisor_from_json(data) -> ToricDivisor:
    if not isinstance(data, dict) or not isinstance(data.get("coefficients"), list):
        raise InputError("divisor JSON must be an object with a 'coefficients' list")
    return ToricDivisor(data["coefficients"])
