import random

import pytest

from toricnef import catalog
from toricnef.divisor import (
    ToricDivisor,
    anticanonical,
    divisor_from_json,
    divisor_polytope,
    divisor_to_json,
    is_ample,
    is_fano,
    is_nef,
    support_function,
)
from toricnef.errors import InputError
from toricnef.fan import normal_fan, same_fan
from toricnef.polytope import vertices_from_facets

from oracles import dot, surface_intersection_matrix, surface_nef
from suites import divisor_suite, min_formula_holds

P1 = catalog.projective_space_fan(1)
P2 = catalog.p2()
F1 = catalog.hirzebruch(1)
SUITE = divisor_suite()


def test_support_function_examples():
    m = dict(zip(P1.max_cones, support_function(P1, anticanonical(P1)).per_cone))
    assert (m[(0,)], m[(1,)]) == ((-1,), (1,))
    # cones {01}, {12}, {23}, {03} of F_1
    assert support_function(F1, anticanonical(F1)).per_cone == ((-1, -1), (0, -1), (2, 1), (-1, 1))


def test_p2_cone_order_matches_hand_listing():
    # the listing {01},{12},{20} is the fan's {01},{12},{02} reordered
    m = dict(zip(P2.max_cones, support_function(P2, ToricDivisor.prime(P2, 0)).per_cone))
    assert (m[(0, 1)], m[(1, 2)], m[(0, 2)]) == ((-1, 0), (0, 0), (-1, 1))


def test_divisor_polytope_examples():
    assert vertices_from_facets(divisor_polytope(P1, anticanonical(P1))).vertices == ((-1,), (1,))
    assert set(vertices_from_facets(divisor_polytope(P2, ToricDivisor.prime(P2, 0))).vertices) == {
        (-1, 0), (-1, 1), (0, 0)}
    assert set(vertices_from_facets(divisor_polytope(P2, anticanonical(P2))).vertices) == {
        (-1, -1), (2, -1), (-1, 2)}


def test_nef_examples():
    assert is_nef(P2, ToricDivisor.prime(P2, 0))
    cert = is_nef(F1, ToricDivisor.prime(F1, 1))
    assert not cert
    assert cert.witness == (0, 2)
    assert support_function(F1, ToricDivisor.prime(F1, 1)).per_cone[0] == (0, -1)
    assert (cert.value, cert.bound) == (-1, 0)
    for e in catalog.selection("all"):
        assert is_nef(e.fan, ToricDivisor([0] * len(e.fan.rays)))


def test_witness_is_recheckable():
    for _, f, D in SUITE:
        cert = is_nef(f, D)
        if not cert:
            k, j = cert.witness
            m = support_function(f, D).per_cone[k]
            assert dot(m, f.rays[j]) == cert.value < -D.coefficients[j] == cert.bound


def test_ample_examples():
    assert is_ample(P2, anticanonical(P2))
    assert is_ample(F1, anticanonical(F1))
    ruling = ToricDivisor.prime(catalog.p1xp1(), 0)
    assert is_nef(catalog.p1xp1(), ruling)
    assert not is_ample(catalog.p1xp1(), ruling)


def test_anticanonical():
    assert anticanonical(P1).coefficients == (1, 1)
    assert anticanonical(P2).coefficients == (1, 1, 1)
    assert anticanonical(catalog.hexagon()).coefficients == (1,) * 6


def test_fano():
    for n in (1, 2, 3):
        assert is_fano(catalog.projective_space_fan(n))
    assert is_fano(F1)
    F2 = catalog.hirzebruch(2)
    assert not is_fano(F2)
    cert = is_ample(F2, anticanonical(F2))
    assert cert.value == cert.bound == -1


def test_coefficients_must_be_integers():
    with pytest.raises(InputError):
        ToricDivisor([1, 0.5, 0])
    with pytest.raises(InputError):
        is_nef(P2, ToricDivisor([1, 1]))


def test_json_round_trip():
    D = ToricDivisor([1, -2, 3])
    assert divisor_from_json(divisor_to_json(D)) == D
    with pytest.raises(InputError):
        divisor_from_json({"coefficients": ["1/2", 0, 0]})


def test_suite_size():
    assert len(SUITE) >= 30


def test_substitution_property():
    for _, f, D in SUITE:
        phi = support_function(f, D)
        for k, cone in enumerate(f.max_cones):
            assert all(dot(phi.per_cone[k], f.rays[i]) == -D.coefficients[i] for i in cone)


def test_surface_oracle_self_intersections():
    M = surface_intersection_matrix(list(F1.rays))
    assert (M[1][1], M[3][3]) == (-1, 1)
    assert surface_intersection_matrix(list(P2.rays)) == [[1] * 3] * 3


@pytest.mark.parametrize("label, f, D", [s for s in SUITE if s[1].dim == 2], ids=lambda x: x if isinstance(x, str) else "")
def test_nef_agrees_with_surface_oracle(label, f, D):
    assert bool(is_nef(f, D)) == surface_nef(list(f.rays), list(D.coefficients))


def test_min_formula():
    rng = random.Random(11)
    for label, f, D in SUITE:
        assert min_formula_holds(f, D, rng, count=100) == bool(is_nef(f, D)), label


def test_ample_implies_nef():
    for _, f, D in SUITE:
        if is_ample(f, D):
            assert is_nef(f, D)


def test_ample_polytope_normal_fan():
    for label, f, D in SUITE:
        if is_ample(f, D):
            assert same_fan(normal_fan(vertices_from_facets(divisor_polytope(f, D))), f), label


def test_prime_polytopes_meet_in_origin_and_sit_in_anticanonical():
    for e in catalog.selection("all"):
        f = e.fan
        if not e.expected["all_nef"]:
            continue
        PK = divisor_polytope(f, anticanonical(f))
        polys = [divisor_polytope(f, ToricDivisor.prime(f, i)) for i in range(len(f.rays))]
        for P in polys:
            assert all(PK.contains(v) for v in vertices_from_facets(P).vertices)
        for P, Q in zip(polys, polys[1:]):
            assert vertices_from_facets(P.intersect(Q)).vertices == ((0,) * f.dim,)
