"""Built-in fans and polytopes with known answers.

Besides the named entries this module carries two brute-force
enumerations used as ground truth: smooth complete Fano fans in the plane
with small rays, and reflexive polygons up to lattice isomorphism.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Dict, List, Sequence, Tuple

from . import lattice as lat
from .divisor import is_fano
from .errors import InputError
from .fan import Fan, check_valid, product
from .polytope import VPolytope, canonical_form, is_reflexive


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    fan: Fan
    expected: Dict[str, object] = field(default_factory=dict)


def projective_space_fan(n: int) -> Fan:
    if n < 1:
        raise InputError("projective space needs n >= 1")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    cones = [tuple(j for j in range(n + 1) if j != omit) for omit in range(n + 1)]
    return Fan(n, rays, cones)


def hirzebruch(a: int) -> Fan:
    """F_a with rays (1,0), (0,1), (-1,a), (0,-1) and consecutive cones."""
    if a < 0:
        raise InputError("Hirzebruch surfaces need a >= 0")
    return Fan(2, [(1, 0), (0, 1), (-1, a), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def star_subdivision(fan: Fan, cone: Sequence[int]) -> Fan:
    """Insert the ray ``sum of u_i for i in cone`` and split every max cone
    containing ``cone``.  For a 2-cone of a smooth surface this is the
    blowup of the corresponding torus-fixed point; smoothness is kept.
    """
    cone = tuple(sorted(cone))
    if len(cone) < 2:
        raise InputError("star subdivision needs a cone with at least two rays")
    if not any(set(cone) <= set(c) for c in fan.max_cones):
        raise InputError(f"{list(cone)} is not a cone of the fan")
    new = lat.primitive(reduce(lat.add, (fan.rays[i] for i in cone)))
    k = len(fan.rays)
    cones = []
    for c in fan.max_cones:
        if set(cone) <= set(c):
            cones.extend(tuple(new_c) for new_c in
                         (sorted([j for j in c if j != i] + [k]) for i in cone))
        else:
            cones.append(c)
    return Fan(fan.dim, fan.rays + (new,), cones)


def _cyclic_surface(rays: Sequence[Tuple[int, int]]) -> Fan:
    """Complete surface fan from rays listed counterclockwise."""
    n = len(rays)
    return Fan(2, rays, [tuple(sorted((i, (i + 1) % n))) for i in range(n)])


def blowup_surface(fan: Fan, i: int, j: int) -> Fan:
    """Blow up the fixed point of the 2-cone ``{i, j}``, keeping rays in
    counterclockwise order when the input is listed that way."""
    if fan.dim != 2:
        raise InputError("blowup_surface is for surfaces")
    sub = star_subdivision(fan, (i, j))
    order = sorted(sub.rays, key=_angle_key)
    return _cyclic_surface(order) if len(order) > 2 else sub


def _angle_key(v):
    # exact angular order starting at the positive x-axis
    x, y = v
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    return (half, _Cross(v))


class _Cross:
    """Sort key comparing directions within a half plane by cross product."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v[0] * other.v[1] - self.v[1] * other.v[0] > 0

    def __eq__(self, other):
        return self.v[0] * other.v[1] - self.v[1] * other.v[0] == 0


def sort_by_angle(vectors: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
    return sorted(vectors, key=_angle_key)


def p2() -> Fan:
    return projective_space_fan(2)


def p1xp1() -> Fan:
    return _cyclic_surface([(1, 0), (0, 1), (-1, 0), (0, -1)])


def bl1_p2() -> Fan:
    return _cyclic_surface([(1, 0), (1, 1), (0, 1), (-1, -1)])


def bl2_p2() -> Fan:
    return _cyclic_surface([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1)])


def hexagon() -> Fan:
    """Blowup of P^2 in its three fixed points (del Pezzo surface of degree 6)."""
    return _cyclic_surface([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])


def products(*fans: Fan) -> Fan:
    return reduce(product, fans)


P = projective_space_fan

_BUILDERS: Dict[str, Tuple[Callable[[], Fan], Dict[str, object]]] = {
    "P1": (lambda: P(1), {"fano": True, "all_nef": True, "product_dims": [1]}),
    "P2": (p2, {"fano": True, "all_nef": True, "product_dims": [2], "root_count": 6}),
    "P3": (lambda: P(3), {"fano": True, "all_nef": True, "product_dims": [3]}),
    "P1xP1": (p1xp1, {"fano": True, "all_nef": True, "product_dims": [1, 1]}),
    "Bl1P2": (bl1_p2, {"fano": True, "all_nef": False, "product_dims": None}),
    "Bl2P2": (bl2_p2, {"fano": True, "all_nef": False, "product_dims": None}),
    "Bl3P2": (hexagon, {"fano": True, "all_nef": False, "product_dims": None, "root_count": 0}),
    "F0": (lambda: hirzebruch(0), {"fano": True, "all_nef": True, "product_dims": [1, 1]}),
    "F1": (lambda: hirzebruch(1), {"fano": True, "all_nef": False, "product_dims": None}),
    "F2": (lambda: hirzebruch(2), {"fano": False, "all_nef": False, "product_dims": None}),
    "F3": (lambda: hirzebruch(3), {"fano": False, "all_nef": False, "product_dims": None}),
    "P1xP2": (lambda: products(P(1), P(2)), {"fano": True, "all_nef": True, "product_dims": [1, 2]}),
    "P1xP1xP1": (lambda: products(P(1), P(1), P(1)), {"fano": True, "all_nef": True, "product_dims": [1, 1, 1]}),
    "F1xP1": (lambda: products(hirzebruch(1), P(1)), {"fano": True, "all_nef": False, "product_dims": None}),
    "F2xP1": (lambda: products(hirzebruch(2), P(1)), {"fano": False, "all_nef": False, "product_dims": None}),
}

SELECTIONS: Dict[str, Tuple[str, ...]] = {
    "dim2": ("P2", "P1xP1", "Bl1P2", "Bl2P2", "Bl3P2"),
    "products": ("P1xP2", "P3", "P1xP1xP1", "F1xP1"),
}
SELECTIONS["all"] = tuple(_BUILDERS)


def names() -> Tuple[str, ...]:
    return tuple(_BUILDERS)


def entry(name: str) -> CatalogEntry:
    try:
        build, expected = _BUILDERS[name]
    except KeyError:
        raise InputError(f"unknown catalog entry {name!r}; choose from {', '.join(_BUILDERS)}") from None
    return CatalogEntry(name, check_valid(build()), dict(expected))


def selection(which: str) -> List[CatalogEntry]:
    try:
        return [entry(n) for n in SELECTIONS[which]]
    except KeyError:
        raise InputError(f"unknown catalog selection {which!r}; choose from {', '.join(SELECTIONS)}") from None


def smooth_fano_surfaces() -> List[CatalogEntry]:
    return selection("dim2")


def fan_class(fan: Fan):
    """Lattice-isomorphism class of a Fano fan: the canonical form of the
    convex hull of its rays (a Fano fan is the fan over the faces of that
    polytope)."""
    return canonical_form(VPolytope(fan.rays))


def enumerate_smooth_fano_surfaces(bound: int = 2) -> List[Fan]:
    """All smooth complete Fano fans in the plane whose rays have coordinates
    in ``[-bound, bound]``, one per lattice-isomorphism class.

    A smooth complete surface fan is a cyclic sequence of primitive rays with
    every consecutive pair of determinant 1, so we enumerate subsets of the
    primitive vectors in angular order.
    """
    prims = sort_by_angle(
        [v for v in itertools.product(range(-bound, bound + 1), repeat=2)
         if any(v) and math.gcd(*v) == 1]
    )
    classes = {}
    n = len(prims)

    def extend(chain):
        last = chain[-1]
        for j in range(chain[-1] + 1, n):
            u, v = prims[last], prims[j]
            if u[0] * v[1] - u[1] * v[0] == 1:
                yield from extend(chain + [j])
        if len(chain) >= 3:
            u, v = prims[last], prims[chain[0]]
            if u[0] * v[1] - u[1] * v[0] == 1:
                yield chain

    for start in range(n):
        for chain in extend([start]):
            # count each cyclic sequence once: from its first ray in angular order
            if chain[0] != min(chain):
                continue
            fan = _cyclic_surface([prims[i] for i in chain])
            if is_fano(fan):
                classes.setdefault(fan_class(fan), fan)
    return [classes[k] for k in sorted(classes)]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _strictly_inside(poly, p):
    k = len(poly)
    return all(_cross(poly[i], poly[(i + 1) % k], p) > 0 for i in range(k))


def _interior_points_ok(poly, box):
    for p in box:
        if p != (0, 0) and _strictly_inside(poly, p):
            return False
    return True


def enumerate_reflexive_polygons(bound: int = 4) -> List[VPolytope]:
    """Reflexive polygons up to lattice isomorphism.

    Every reflexive polygon has an edge at height one; a unimodular map
    puts that edge on ``y = -1`` starting at ``(0, -1)`` with the polygon in
    ``y >= -1``.  We enumerate counterclockwise convex vertex chains from
    there with coordinates bounded by ``bound``, pruning any chain whose
    hull already has an interior lattice point other than the origin (a
    reflexive polygon has none).  Survivors are tested for reflexivity and
    deduplicated by :func:`canonical_form`.
    """
    box = [p for p in itertools.product(range(-bound, bound + 1), range(-1, bound + 1))]
    upper = [p for p in box if p[1] >= 0]
    classes = {}

    def grow(chain):
        # chain is a strictly convex counterclockwise vertex sequence
        if len(chain) >= 3 and _closes(chain):
            poly = VPolytope(chain)
            if _strictly_inside(chain, (0, 0)) and is_reflexive(poly):
                classes.setdefault(canonical_form(poly), poly)
        for p in upper:
            if _cross(chain[-2], chain[-1], p) <= 0:
                continue
            if _cross(chain[-1], p, chain[0]) <= 0 or _cross(p, chain[0], chain[1]) <= 0:
                continue
            new = chain + [p]
            if _interior_points_ok(new, box):
                grow(new)

    for b in range(1, bound + 1):
        grow([(0, -1), (b, -1)])
    return [classes[k] for k in sorted(classes)]


def _closes(chain):
    k = len(chain)
    return all(_cross(chain[i], chain[(i + 1) % k], chain[(i + 2) % k]) > 0 for i in range(k))


def reflexive_polygons() -> List[VPolytope]:
    return enumerate_reflexive_polygons()
