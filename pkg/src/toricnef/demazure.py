"""Demazure roots of smooth complete toric varieties.

A root is a lattice point ``m`` of M with ``<u_t, m> = -1`` for exactly one
ray ``t`` (its distinguished ray) and ``<u_s, m> >= 0`` for all other rays.
The semisimple roots are those whose negative is also a root; the
automorphism group is reductive iff every root is semisimple.  A complete
toric manifold of dimension ``d`` is a product of projective spaces iff it
has ``d`` linearly independent semisimple roots; :func:`detect_product`
finds such a product structure directly from the rays.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import lattice as lat
from .divisor import ToricDivisor, is_nef, support_function
from .errors import NotNef, PreconditionError, UnboundedError
from .fan import Fan, require_smooth_complete
from .lattice import LatticeVector
from .polytope import Halfspace, HPolytope, lattice_points

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Root:
    m: LatticeVector
    ray: int


@dataclass(frozen=True)
class RootSystem:
    roots: Tuple[Root, ...]
    semisimple: Tuple[Root, ...]

    def vectors(self) -> Tuple[LatticeVector, ...]:
        return tuple(r.m for r in self.roots)

    def by_ray(self, i: int) -> Tuple[LatticeVector, ...]:
        return tuple(r.m for r in self.roots if r.ray == i)

    def to_json(self) -> dict:
        return {
            "roots": [{"m": list(r.m), "ray": r.ray} for r in self.roots],
            "semisimple_count": len(self.semisimple),
            "reductive": is_reductive(self),
            "rank": semisimple_rank(self),
        }


@dataclass(frozen=True)
class ProductDecomposition:
    """Rays grouped into factors; factor ``j`` is a copy of P^{factor_dims[j]}."""

    factors: Tuple[Tuple[int, ...], ...]
    factor_dims: Tuple[int, ...]


def root_violation(fan: Fan, m: Sequence[int]) -> Optional[Tuple[int, int, int]]:
    """Why ``m`` fails to be a root, or ``None`` if it is one.

    Returns ``(candidate, ray, value)``: ``candidate`` is the first ray with
    ``<u, m> = -1`` (or -1 if there is none), and ``ray`` is the first other
    ray whose inequality fails, with ``value = <u_ray, m>``.  Without a
    candidate, ``ray`` is the first ray pairing negatively, or -1.
    """
    values = [lat.pairing(u, m) for u in fan.rays]
    cand = next((i for i, v in enumerate(values) if v == -1), -1)
    for j, v in enumerate(values):
        if j != cand and v < 0:
            return cand, j, v
    if cand == -1:
        return -1, -1, 0
    return None


def distinguished_ray(fan: Fan, m: Sequence[int]) -> Optional[int]:
    if root_violation(fan, m) is not None:
        return None
    rays = [i for i, u in enumerate(fan.rays) if lat.pairing(u, m) == -1]
    assert len(rays) == 1
    return rays[0]


def root_slice(fan: Fan, i: int) -> HPolytope:
    """``Q_i = {m : <u_i, m> = -1, <u_j, m> >= 0 for j != i}``."""
    u = fan.rays[i]
    hs = [Halfspace(u, Fraction(-1)), Halfspace(lat.neg(u), Fraction(1))]
    hs += [Halfspace(v, Fraction(0)) for j, v in enumerate(fan.rays) if j != i]
    return HPolytope(hs, fan.dim)


def demazure_roots(fan: Fan) -> RootSystem:
    require_smooth_complete(fan)
    roots = []
    for i in range(len(fan.rays)):
        try:
            pts = lattice_points(root_slice(fan, i))
        except UnboundedError as exc:
            raise PreconditionError(f"root slice of ray {i} is unbounded; the fan is not complete") from exc
        roots.extend(Root(m, i) for m in pts)
    roots.sort()
    vectors = {r.m for r in roots}
    assert len(vectors) == len(roots), "a root with two distinguished rays"
    for r in roots:
        assert root_violation(fan, r.m) is None
    semisimple = tuple(r for r in roots if lat.neg(r.m) in vectors)
    return RootSystem(tuple(roots), semisimple)


def is_reductive(rs: RootSystem) -> bool:
    return len(rs.semisimple) == len(rs.roots)


def semisimple_rank(rs: RootSystem) -> int:
    return lat.rank([r.m for r in rs.semisimple])


def nef_divisor_roots(fan: Fan, i: int) -> Tuple[LatticeVector, ...]:
    """The support values ``{m_sigma}`` of the nef divisor ``D_i``, sorted.

    Raises :class:`NotNef` if ``D_i`` is not nef.  Every value with
    ``<u_i, m> = -1`` is checked to be a root with distinguished ray ``i``;
    the remaining values (zero, from cones far from ray ``i``) are logged.
    """
    D = ToricDivisor.prime(fan, i)
    cert = is_nef(fan, D)
    if not cert:
        raise NotNef(cert, f"divisor D_{i} not nef: witness (cone, ray) = {cert.witness}")
    values = sorted(set(support_function(fan, D).per_cone))
    for m in values:
        if lat.pairing(fan.rays[i], m) == -1:
            assert distinguished_ray(fan, m) == i, f"{m} is not a root with distinguished ray {i}"
        else:
            log.debug("support value %s of D_%d does not pair to -1 with its ray", m, i)
    return tuple(values)


def _circuits(fan: Fan) -> List[Tuple[int, ...]]:
    """Ray subsets summing to zero whose proper subsets are independent."""
    n, d = len(fan.rays), fan.dim
    out = []
    for size in range(2, d + 2):
        for sub in itertools.combinations(range(n), size):
            vecs = [fan.rays[i] for i in sub]
            if any(sum(col) for col in zip(*vecs)):
                continue
            if lat.rank(vecs) == size - 1:
                out.append(sub)
    return out


def _matches_product_cones(fan: Fan, groups: Sequence[Sequence[int]]) -> bool:
    expected = {
        tuple(sorted(i for g, drop in zip(groups, omit) for i in g if i != drop))
        for omit in itertools.product(*groups)
    }
    return expected == set(fan.max_cones)


def detect_product(fan: Fan) -> Optional[ProductDecomposition]:
    """Partition the rays as a product of projective spaces, or ``None``.

    Each group must sum to zero, have rank one less than its size, and the
    groups' spans must form a direct sum decomposition of the lattice.  The
    max cones must then be exactly the product cones: drop one ray from
    every group.
    """
    require_smooth_complete(fan)
    n, d = len(fan.rays), fan.dim
    circuits = _circuits(fan)

    def covers(uncovered, chosen, budget):
        if not uncovered:
            yield list(chosen)
            return
        first = min(uncovered)
        for c in circuits:
            if c[0] == first and len(c) - 1 <= budget and set(c) <= uncovered:
                chosen.append(c)
                yield from covers(uncovered - set(c), chosen, budget - len(c) + 1)
                chosen.pop()

    for groups in covers(frozenset(range(n)), [], d):
        if sum(len(g) - 1 for g in groups) != d:
            continue
        basis = [fan.rays[i] for g in groups for i in g[:-1]]
        if abs(lat.det(basis)) != 1:
            continue
        if _matches_product_cones(fan, groups):
            return ProductDecomposition(tuple(groups), tuple(len(g) - 1 for g in groups))
    return None
