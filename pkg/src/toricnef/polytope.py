"""Rational polytopes in vertex and half-space representation.

Everything is exact.  Conversions between the two representations use
exhaustive ``d``-subset enumeration, which is plenty for the desk-scale
inputs this package deals with (at most a few dozen facets, ``d <= 4``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from . import lattice as lat
from .errors import (
    DimensionMismatch,
    InputError,
    NoSolution,
    NotFullDimensional,
    OriginNotInterior,
    UnboundedError,
    Underdetermined,
)
from .lattice import IntMatrix, LatticeVector, RationalVector


@dataclass(frozen=True, order=True)
class Halfspace:
    """The closed half-space ``{x : <x, normal> >= rhs}``.

    Use :meth:`make` to build one from arbitrary rational data; it rescales
    so that ``normal`` is a primitive integer vector.
    """

    normal: LatticeVector
    rhs: Fraction

    @classmethod
    def make(cls, normal: Sequence, rhs) -> "Halfspace":
        fr = [Fraction(x) for x in normal]
        if not any(fr):
            raise InputError("half-space normal must be nonzero")
        prim = lat.primitive(fr)
        nz = next(i for i, x in enumerate(fr) if x)
        factor = Fraction(prim[nz]) / fr[nz]  # positive
        return cls(prim, Fraction(rhs) * factor)

    def value(self, x: Sequence) -> Fraction:
        return lat.pairing(x, self.normal)

    def contains(self, x: Sequence) -> bool:
        return lat.pairing(x, self.normal) >= self.rhs

    def is_tight(self, x: Sequence) -> bool:
        return lat.pairing(x, self.normal) == self.rhs


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of ``vertices``.

    The constructor sorts and deduplicates but trusts the caller that the
    points are in convex position; :meth:`from_points` prunes redundant
    points of a full-dimensional point set.
    """

    vertices: Tuple[RationalVector, ...]
    dim_ambient: int

    def __init__(self, vertices: Iterable[Sequence], dim_ambient: Optional[int] = None):
        verts = sorted({lat.rational_vector(v) for v in vertices})
        if dim_ambient is None:
            if not verts:
                raise InputError("cannot infer dimension of an empty polytope")
            dim_ambient = len(verts[0])
        if any(len(v) != dim_ambient for v in verts):
            raise DimensionMismatch("vertex of wrong dimension")
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "dim_ambient", dim_ambient)

    @classmethod
    def from_points(cls, points: Iterable[Sequence]) -> "VPolytope":
        pts = sorted({lat.rational_vector(p) for p in points})
        d = len(pts[0])
        facets = _facets(pts, d)
        keep = []
        for p in pts:
            active = [h.normal for h in facets if h.is_tight(p)]
            if lat.rank(active) == d:
                keep.append(p)
        return cls(keep, d)

    def is_lattice(self) -> bool:
        return all(lat.is_integral(v) for v in self.vertices)

    def integral_vertices(self) -> Tuple[LatticeVector, ...]:
        if not self.is_lattice():
            raise InputError("polytope has non-integral vertices")
        return tuple(tuple(int(x) for x in v) for v in self.vertices)

    def dimension(self) -> int:
        if not self.vertices:
            return -1
        v0 = self.vertices[0]
        return lat.rank([lat.sub(v, v0) for v in self.vertices[1:]]) if len(self.vertices) > 1 else 0


@dataclass(frozen=True)
class HPolytope:
    """Intersection of ``halfspaces``; order is preserved (callers index it)."""

    halfspaces: Tuple[Halfspace, ...]
    dim_ambient: int

    def __init__(self, halfspaces: Iterable[Halfspace], dim_ambient: int):
        hs = tuple(halfspaces)
        if any(len(h.normal) != dim_ambient for h in hs):
            raise DimensionMismatch("half-space of wrong dimension")
        object.__setattr__(self, "halfspaces", hs)
        object.__setattr__(self, "dim_ambient", dim_ambient)

    @classmethod
    def from_inequalities(cls, rows: Iterable[Tuple[Sequence, object]], dim_ambient: int) -> "HPolytope":
        return cls((Halfspace.make(n, r) for n, r in rows), dim_ambient)

    def contains(self, x: Sequence) -> bool:
        return all(h.contains(x) for h in self.halfspaces)

    def intersect(self, other: "HPolytope") -> "HPolytope":
        if other.dim_ambient != self.dim_ambient:
            raise DimensionMismatch("ambient dimensions differ")
        return HPolytope(self.halfspaces + other.halfspaces, self.dim_ambient)

    def recession_direction(self) -> Optional[LatticeVector]:
        return recession_direction([h.normal for h in self.halfspaces], self.dim_ambient)

    def is_bounded(self) -> bool:
        return self.recession_direction() is None

    def normalized(self) -> "HPolytope":
        """Irredundant facet description (requires full dimension)."""
        return facets_from_vertices(vertices_from_facets(self))


def recession_direction(normals: Sequence[Sequence[int]], d: int) -> Optional[LatticeVector]:
    """A nonzero ``x`` with ``<x, n> >= 0`` for every normal, or ``None``.

    Such an ``x`` exists iff the polyhedron cut out by these normals is
    unbounded.  Either the system has a nonzero kernel vector, or the
    recession cone is pointed and nonzero and then has an extreme ray cut
    out by ``d - 1`` independent tight constraints.
    """
    normals = [tuple(n) for n in normals]
    if not normals:
        return tuple(int(i == 0) for i in range(d))
    ker = lat.kernel(normals)
    if ker:
        return ker[0]
    if d == 1:
        candidates = [(1,), (-1,)]
    else:
        candidates = []
        for sub in itertools.combinations(normals, d - 1):
            k = lat.kernel(sub)
            if len(k) == 1:
                candidates.extend([k[0], lat.neg(k[0])])
    for x in candidates:
        if all(lat.pairing(x, n) >= 0 for n in normals):
            return x
    return None


def _hyperplane_through(points: Sequence[RationalVector], d: int) -> Optional[LatticeVector]:
    """Primitive normal of the affine hyperplane through ``d`` points, if unique."""
    if d == 1:
        return (1,)
    diffs = [lat.sub(p, points[0]) for p in points[1:]]
    k = lat.kernel(diffs)
    return k[0] if len(k) == 1 else None


def _facets(points: Sequence[RationalVector], d: int) -> Tuple[Halfspace, ...]:
    v0 = points[0]
    if lat.rank([lat.sub(p, v0) for p in points[1:]] or [[0] * d]) < d:
        raise NotFullDimensional("point set is not full-dimensional")
    found = set()
    for sub in itertools.combinations(points, d):
        normal = _hyperplane_through(sub, d)
        if normal is None:
            continue
        c = lat.pairing(sub[0], normal)
        vals = [lat.pairing(p, normal) for p in points]
        if all(v >= c for v in vals):
            found.add(Halfspace(normal, Fraction(c)))
        elif all(v <= c for v in vals):
            found.add(Halfspace(lat.neg(normal), Fraction(-c)))
    return tuple(sorted(found))


def facets_from_vertices(P: VPolytope) -> HPolytope:
    """Irredundant facet inequalities of a full-dimensional polytope."""
    if not P.vertices:
        raise NotFullDimensional("empty polytope")
    return HPolytope(_facets(list(P.vertices), P.dim_ambient), P.dim_ambient)


def vertices_from_facets(P: HPolytope) -> VPolytope:
    """Exact vertex set of a bounded H-polytope (possibly empty or lower-dimensional)."""
    d = P.dim_ambient
    ray = P.recession_direction()
    if ray is not None:
        raise UnboundedError(ray)
    hs = P.halfspaces
    found = set()
    for sub in itertools.combinations(range(len(hs)), d):
        A = [hs[i].normal for i in sub]
        try:
            x = lat.solve_exact(A, [hs[i].rhs for i in sub])
        except (NoSolution, Underdetermined):
            continue
        if x not in found and P.contains(x):
            found.add(x)
    return VPolytope(found, d)


def _as_hpolytope(P) -> HPolytope:
    return P if isinstance(P, HPolytope) else facets_from_vertices(P)


def bounding_box(vertices: Sequence[RationalVector]) -> Tuple[Tuple[int, int], ...]:
    """Integer ranges ``[lo, hi]`` per coordinate, rounded inward."""
    d = len(vertices[0])
    return tuple(
        (math.ceil(min(v[i] for v in vertices)), math.floor(max(v[i] for v in vertices)))
        for i in range(d)
    )


def lattice_points(P) -> Tuple[LatticeVector, ...]:
    """All integral points of a bounded polytope, sorted lexicographically."""
    if isinstance(P, HPolytope):
        verts = vertices_from_facets(P).vertices
        H = P
    else:
        verts = P.vertices
        H = facets_from_vertices(P) if P.dimension() == P.dim_ambient else None
    if not verts:
        return ()
    box = bounding_box(verts)
    if any(lo > hi for lo, hi in box):
        return ()
    out = []
    for x in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        if H is not None:
            if H.contains(x):
                out.append(x)
        elif in_convex_hull(x, verts):
            out.append(x)
    return tuple(out)


def in_convex_hull(point: Sequence, points: Sequence[Sequence]) -> bool:
    """Exact membership test via Caratheodory: try affinely independent subsets."""
    d = len(point)
    pts = [lat.rational_vector(p) for p in points]
    target = lat.rational_vector(point) + (Fraction(1),)
    for k in range(1, min(d + 1, len(pts)) + 1):
        for sub in itertools.combinations(pts, k):
            A = [[p[i] for p in sub] for i in range(d)] + [[Fraction(1)] * k]
            try:
                lam = lat.solve_exact(A, target)
            except (NoSolution, Underdetermined):
                continue
            if all(x >= 0 for x in lam):
                return True
    return False


def dual_polytope(P: VPolytope) -> VPolytope:
    """``P* = {y : <x, y> >= -1 for all x in P}``.

    Each facet ``<x, n> >= r`` of ``P`` (with ``r < 0`` since the origin is
    interior) contributes the vertex ``n / (-r)``.
    """
    H = facets_from_vertices(P)
    if any(h.rhs >= 0 for h in H.halfspaces):
        raise OriginNotInterior("the origin is not in the interior of the polytope")
    return VPolytope((tuple(Fraction(c) / -h.rhs for c in h.normal) for h in H.halfspaces), P.dim_ambient)


def is_reflexive(P: VPolytope) -> bool:
    return P.is_lattice() and dual_polytope(P).is_lattice()


def _hnf_key(columns: Sequence[LatticeVector]) -> tuple:
    """Column-major flattening of the row HNF of the matrix with these columns."""
    H, _ = lat.hermite_normal_form(lat.transpose(columns))
    return tuple(x for col in zip(*H) for x in col)


def canonical_form(P: VPolytope) -> IntMatrix:
    """Normal form of a full-dimensional lattice polytope under GL(d, Z).

    For a fixed ordering of the vertices, the row HNF of the ``d x n``
    matrix whose columns are the vertices is unchanged by ``V -> g V`` for
    unimodular ``g``, and two full-rank matrices share it iff they differ by
    such a ``g``.  The canonical form is the minimum over orderings,
    compared column by column.  The first ``k`` columns of the HNF are the
    HNF of the first ``k`` vertices, so prefixes bound the search.
    Exponential in the worst case; intended for at most ~8 vertices.
    """
    verts = P.integral_vertices()
    d, n = P.dim_ambient, len(verts)
    if P.dimension() != d:
        raise NotFullDimensional("canonical_form needs a full-dimensional polytope")
    best: list = [None]

    def search(prefix, remaining):
        key = _hnf_key([verts[i] for i in prefix])
        if best[0] is not None:
            head = best[0][: len(key)]
            if key > head:
                return
            if key < head:
                best[0] = None
        if not remaining:
            best[0] = key
            return
        for i in sorted(remaining):
            search(prefix + [i], remaining - {i})

    for i in range(n):
        search([i], frozenset(range(n)) - {i})
    flat = best[0]
    cols = [flat[j * d:(j + 1) * d] for j in range(n)]
    return tuple(tuple(col[r] for col in cols) for r in range(d))


def _format_rational(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_rational(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"expected an integer or a 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {x!r}: {exc}") from None


def polytope_to_json(P: VPolytope) -> dict:
    return {"dim": P.dim_ambient, "vertices": [[_format_rational(x) for x in v] for v in P.vertices]}


def polytope_from_json(data: dict) -> VPolytope:
    try:
        d = data["dim"]
        rows = data["vertices"]
    except (KeyError, TypeError):
        raise InputError("polytope JSON needs 'dim' and 'vertices'") from None
    if not isinstance(d, int) or d < 1:
        raise InputError("'dim' must be a positive integer")
    verts = [[_parse_rational(x) for x in row] for row in rows]
    if not verts:
        raise InputError("polytope has no vertices")
    return VPolytope(verts, d)
