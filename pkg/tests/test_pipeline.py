import os
import random
from pathlib import Path

import pytest

from toricnef import catalog
from toricnef.errors import InvalidFan, NotSmooth
from toricnef.fan import Fan
from toricnef.pipeline import analyze, theorem_sweep

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("TORICNEF_REGEN_GOLDEN") == "1"


def test_p2_report():
    r = analyze(catalog.p2())
    assert (r.fano, r.all_nef, r.root_count, r.semisimple_rank, r.product_dims, r.theorem_consistent) == (
        True, True, 6, 2, [2], True)
    assert r.picard_number == r.ray_count - r.dim == 1


def test_f1_report():
    r = analyze(catalog.hirzebruch(1))
    assert (r.fano, r.all_nef, r.reductive, r.product, r.theorem_consistent) == (True, False, False, None, True)
    assert r.witnesses["reductive"]["value"] == -1
    assert r.witnesses["nef"]


def test_hexagon_report():
    r = analyze(catalog.hexagon())
    assert (r.fano, r.all_nef, r.root_count, r.semisimple_rank, r.product, r.theorem_consistent) == (
        True, False, 0, 0, None, True)


def test_non_fano_report():
    r = analyze(catalog.hirzebruch(2))
    assert not r.fano and r.theorem_consistent
    assert r.witnesses["fano"]["value"] == r.witnesses["fano"]["bound"]


def test_errors_propagate():
    with pytest.raises(InvalidFan):
        analyze(Fan(2, [(1, 0), (1, 0)], [(0, 1)]))
    with pytest.raises(NotSmooth):
        analyze(Fan(2, [(1, 0), (1, 2), (-1, -1)], [(0, 1), (1, 2), (0, 2)]))


def shuffled(fan, rng):
    perm = list(range(len(fan.rays)))
    rng.shuffle(perm)
    new_of_old = {old: new for new, old in enumerate(perm)}
    return Fan(fan.dim, [fan.rays[i] for i in perm], [[new_of_old[i] for i in c] for c in reversed(fan.max_cones)])


@pytest.mark.parametrize("name", catalog.names())
def test_relabeling_invariance(name, rng):
    f = catalog.entry(name).fan
    base = analyze(f).dumps()
    for _ in range(3):
        assert analyze(shuffled(f, rng)).dumps() == base


@pytest.mark.parametrize("name", catalog.names())
def test_golden_reports(name):
    path = GOLDEN / f"{name}.json"
    text = analyze(catalog.entry(name).fan).dumps()
    if REGEN:
        path.write_text(text)
    assert path.read_text() == text


@pytest.mark.parametrize("name", catalog.names())
def test_expected_flags(name):
    summary = theorem_sweep([catalog.entry(name)])
    assert summary["ok"] and summary["expected_mismatches"] == []


def random_subdivision(rng, fan, steps):
    for _ in range(steps):
        cone = rng.choice(fan.max_cones)
        fan = catalog.star_subdivision(fan, rng.sample(cone, 2))
    return fan


def test_random_subdivisions_consistent():
    rng = random.Random(5)
    seen_fano = seen_non_fano = 0
    bases = [catalog.entry(n).fan for n in ("P2", "P1xP1", "F1", "P3", "P1xP2")]
    for trial in range(40):
        f = random_subdivision(rng, rng.choice(bases), rng.randint(1, 3))
        r = analyze(f)
        assert r.smooth and r.complete
        assert r.theorem_consistent, (f, r.problems)
        seen_fano += r.fano
        seen_non_fano += not r.fano
    assert seen_fano and seen_non_fano


def test_sweep_dim2():
    s = theorem_sweep(catalog.selection("dim2"))
    assert s["ok"] and len(s["entries"]) == 5
    assert [e["name"] for e in s["entries"] if e["all_nef"] and e["product_dims"]] == ["P2", "P1xP1"]
    assert s["cells"] == {
        "fano=True all_nef=False product=False": 3,
        "fano=True all_nef=True product=True": 2,
    }


def test_sweep_products():
    rows = {e["name"]: e for e in theorem_sweep(catalog.selection("products"))["entries"]}
    for n in ("P1xP2", "P3", "P1xP1xP1"):
        assert rows[n]["fano"] and rows[n]["all_nef"] and rows[n]["product_dims"]
    assert rows["F1xP1"]["fano"] and not rows["F1xP1"]["all_nef"] and rows["F1xP1"]["product_dims"] is None


def test_report_schema():
    data = analyze(catalog.p2()).to_json()
    assert data["schema"] == 1
    assert data["rays"] == sorted(data["rays"])
