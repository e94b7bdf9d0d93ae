"""Complete simplicial fans and the operations on them that the rest of the
package needs: validation, completeness, smoothness, normal fans of
polytopes and products.

A :class:`Fan` keeps its rays in the order they were given.  Divisor
coefficients and certificates index into that order; :func:`canonical`
produces the lexicographically sorted relabeling used for reports.
"""

from __future__ import annotations

import functools
import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import lattice as lat
from .errors import InputError, InvalidFan, NoSolution, NotComplete, NotSmooth, PreconditionError, Underdetermined
from .lattice import LatticeVector
from .polytope import Halfspace, VPolytope, facets_from_vertices, in_convex_hull


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: Tuple[LatticeVector, ...]
    max_cones: Tuple[Tuple[int, ...], ...]

    def __init__(self, dim: int, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]]):
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in rays))
        object.__setattr__(self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in max_cones))

    def cone_rays(self, k: int) -> Tuple[LatticeVector, ...]:
        return tuple(self.rays[i] for i in self.max_cones[k])

    def cone_sets(self) -> frozenset:
        """Max cones as sets of ray vectors; independent of labeling."""
        return frozenset(frozenset(self.cone_rays(k)) for k in range(len(self.max_cones)))

    def __str__(self):
        return f"Fan(dim={self.dim}, rays={[list(r) for r in self.rays]}, max_cones={[list(c) for c in self.max_cones]})"


@dataclass(frozen=True)
class Cone:
    """Cone positively generated by ``generators``."""

    generators: Tuple[LatticeVector, ...]

    def __init__(self, generators: Sequence[Sequence[int]]):
        object.__setattr__(self, "generators", tuple(lat.primitive(g) for g in generators))

    def is_strongly_convex(self) -> bool:
        # A line sits inside the cone iff some nonnegative combination of the
        # generators vanishes, i.e. iff 0 is in their convex hull.
        d = len(self.generators[0])
        return not in_convex_hull((0,) * d, self.generators)

    def contains(self, x: Sequence) -> bool:
        d = len(x)
        gens = self.generators
        for k in range(min(d, len(gens)) + 1):
            for sub in itertools.combinations(gens, k):
                if k == 0:
                    if not any(x):
                        return True
                    continue
                try:
                    lam = lat.solve_exact(lat.transpose(sub), x)
                except (NoSolution, Underdetermined):
                    continue
                if all(c >= 0 for c in lam):
                    return True
        return False


def _simplicial_halfspaces(rays: Sequence[LatticeVector]) -> List[Halfspace]:
    """Facet inequalities ``<x, w> >= 0`` of a full-dimensional simplicial cone."""
    d = len(rays)
    out = []
    for i in range(d):
        # w_i pairs to zero with the other rays and positively with ray i
        others = [r for j, r in enumerate(rays) if j != i]
        w = lat.kernel(others)[0] if others else (1,)
        if lat.pairing(w, rays[i]) < 0:
            w = lat.neg(w)
        out.append(Halfspace(w, Fraction(0)))
    return out


def _intersection_is_face(fan: Fan, k: int, l: int) -> bool:
    common = set(fan.max_cones[k]) & set(fan.max_cones[l])
    hs = _simplicial_halfspaces(fan.cone_rays(k)) + _simplicial_halfspaces(fan.cone_rays(l))
    normals = [h.normal for h in hs]
    d = fan.dim
    # Extreme rays of the (pointed) intersection cone.
    if d == 1:
        candidates = [(1,), (-1,)]
    else:
        candidates = []
        for sub in itertools.combinations(normals, d - 1):
            ker = lat.kernel(sub)
            if len(ker) == 1:
                candidates += [ker[0], lat.neg(ker[0])]
    common_rays = {fan.rays[i] for i in common}
    for c in candidates:
        if all(lat.pairing(c, n) >= 0 for n in normals) and lat.primitive(c) not in common_rays:
            return False
    return True


def validate(fan: Fan, strict: bool = False) -> List[str]:
    """Structural diagnostics; an empty list means the fan is valid.

    With ``strict`` also checks that any two max cones meet in a common face.
    """
    diags: List[str] = []
    d = fan.dim
    if d < 1:
        return [f"dimension must be >= 1, got {d}"]
    seen: Dict[LatticeVector, int] = {}
    for i, r in enumerate(fan.rays):
        if len(r) != d:
            diags.append(f"ray {i}: expected {d} coordinates, got {len(r)}")
            continue
        if not any(r):
            diags.append(f"ray {i}: zero vector")
            continue
        if lat.primitive(r) != r:
            diags.append(f"ray {i}: not primitive")
        if r in seen:
            diags.append(f"rays {seen[r]} and {i}: duplicate ray")
        else:
            seen[r] = i
    if diags:
        return diags
    if not fan.max_cones:
        diags.append("fan has no max cones")
    used = set()
    cone_seen = {}
    for k, cone in enumerate(fan.max_cones):
        if any(not 0 <= i < len(fan.rays) for i in cone):
            diags.append(f"cone {k}: ray index out of range")
            continue
        if len(set(cone)) != len(cone):
            diags.append(f"cone {k}: repeated ray index")
            continue
        if len(cone) != d:
            diags.append(f"cone {k}: expected {d} rays (simplicial, full-dimensional), got {len(cone)}")
            continue
        if lat.det(fan.cone_rays(k)) == 0:
            diags.append(f"cone {k}: degenerate max cone (singular ray matrix)")
            continue
        if cone in cone_seen:
            diags.append(f"cones {cone_seen[cone]} and {k}: duplicate max cone")
        cone_seen.setdefault(cone, k)
        used.update(cone)
    for i in range(len(fan.rays)):
        if i not in used:
            diags.append(f"ray {i}: not contained in any max cone")
    if strict and not diags:
        for k, l in itertools.combinations(range(len(fan.max_cones)), 2):
            if not _intersection_is_face(fan, k, l):
                diags.append(f"cones {k} and {l}: intersection is not a common face")
    return diags


def check_valid(fan: Fan, strict: bool = False) -> Fan:
    diags = validate(fan, strict)
    if diags:
        raise InvalidFan(diags)
    return fan


def _walls(fan: Fan) -> Dict[Tuple[int, ...], List[int]]:
    """(d-1)-subsets of max cones -> the ray completing each containing cone."""
    walls: Dict[Tuple[int, ...], List[int]] = defaultdict(list)
    for cone in fan.max_cones:
        for j in cone:
            walls[tuple(i for i in cone if i != j)].append(j)
    return walls


def is_complete(fan: Fan) -> bool:
    """Wall criterion: every wall lies in exactly two max cones, on opposite sides."""
    check_valid(fan)
    for wall, apexes in _walls(fan).items():
        if len(apexes) != 2:
            return False
        rays = [fan.rays[i] for i in wall]
        normal = lat.kernel(rays)[0] if rays else (1,)
        a, b = (lat.pairing(normal, fan.rays[j]) for j in apexes)
        if a * b >= 0:
            return False
    return True


def is_smooth(fan: Fan) -> bool:
    check_valid(fan)
    return all(abs(lat.det(fan.cone_rays(k))) == 1 for k in range(len(fan.max_cones)))


@functools.lru_cache(maxsize=256)
def require_smooth_complete(fan: Fan) -> Fan:
    """Raise unless the fan is valid, smooth and complete."""
    if not is_smooth(fan):
        bad = next(k for k in range(len(fan.max_cones)) if abs(lat.det(fan.cone_rays(k))) != 1)
        raise NotSmooth(f"not smooth: cone {bad} has determinant {lat.det(fan.cone_rays(bad))}")
    if not is_complete(fan):
        raise NotComplete("not complete: the max cones do not cover the whole space")
    return fan


def locate(fan: Fan, x: Sequence) -> Optional[int]:
    """Index of the first max cone containing ``x``, or ``None``."""
    for k in range(len(fan.max_cones)):
        lam = lat.solve_exact(lat.transpose(fan.cone_rays(k)), x)
        if all(c >= 0 for c in lam):
            return k
    return None


def normal_fan(P: VPolytope) -> Fan:
    """Inner normal fan of a full-dimensional polytope.

    Rays are the primitive inner facet normals; each vertex contributes the
    max cone spanned by the normals of the facets through it.  When the
    origin is interior this is the fan over the faces of ``P*``: facet
    normals are positive multiples of the vertices of ``P*``.  Only
    simple polytopes (simplicial fans) are accepted.
    """
    H = facets_from_vertices(P)
    normals = sorted(h.normal for h in H.halfspaces)
    index = {n: i for i, n in enumerate(normals)}
    cones = []
    for v in P.vertices:
        active = [index[h.normal] for h in H.halfspaces if h.is_tight(v)]
        if len(active) != P.dim_ambient:
            raise PreconditionError(
                f"vertex {[str(x) for x in v]} lies on {len(active)} facets; "
                "the normal fan is not simplicial"
            )
        cones.append(sorted(active))
    return Fan(P.dim_ambient, normals, sorted(cones))


def product(f1: Fan, f2: Fan) -> Fan:
    d1, d2 = f1.dim, f2.dim
    rays = [r + (0,) * d2 for r in f1.rays] + [(0,) * d1 + r for r in f2.rays]
    n1 = len(f1.rays)
    cones = [c1 + tuple(n1 + j for j in c2) for c1 in f1.max_cones for c2 in f2.max_cones]
    return Fan(d1 + d2, rays, cones)


def canonical(fan: Fan) -> Tuple[Fan, Tuple[int, ...]]:
    """Relabel rays lexicographically and sort the max cones.

    Returns the new fan and ``perm`` with ``perm[new_index] = old_index``.
    """
    perm = tuple(sorted(range(len(fan.rays)), key=lambda i: fan.rays[i]))
    new_of_old = {old: new for new, old in enumerate(perm)}
    cones = sorted(tuple(sorted(new_of_old[i] for i in c)) for c in fan.max_cones)
    return Fan(fan.dim, [fan.rays[i] for i in perm], cones), perm


def same_fan(f: Fan, g: Fan) -> bool:
    """Equality up to relabeling of rays and cones (not up to GL(d, Z))."""
    return f.dim == g.dim and set(f.rays) == set(g.rays) and f.cone_sets() == g.cone_sets()


def picard_number(fan: Fan) -> int:
    return len(fan.rays) - fan.dim


def fan_to_json(fan: Fan) -> dict:
    return {"dim": fan.dim, "rays": [list(r) for r in fan.rays], "max_cones": [list(c) for c in fan.max_cones]}


def fan_from_json(data) -> Fan:
    if not isinstance(data, dict):
        raise InputError("fan JSON must be an object")
    try:
        d, rays, cones = data["dim"], data["rays"], data["max_cones"]
    except KeyError as exc:
        raise InputError(f"fan JSON is missing key {exc}") from None

    def ints(xs, what):
        if not isinstance(xs, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in xs):
            raise InputError(f"{what} must be a list of integers, got {xs!r}")
        return xs

    if not isinstance(d, int) or isinstance(d, bool):
        raise InputError("'dim' must be an integer")
    if not isinstance(rays, list) or not isinstance(cones, list):
        raise InputError("'rays' and 'max_cones' must be lists")
    return Fan(d, [ints(r, "ray") for r in rays], [ints(c, "max cone") for c in cones])
