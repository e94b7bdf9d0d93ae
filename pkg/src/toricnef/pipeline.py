"""End-to-end analysis of a fan and the theorem check built on it.

For a smooth complete fan the report records Fano-ness, nefness of every
invariant prime divisor (nef tangent bundle is represented by "all D_i nef"),
the Demazure root data and any product-of-projective-spaces structure.  It
then checks, at runtime, that a Fano fan has all D_i nef exactly when it is
a product of projective spaces, with the root-theoretic consequences.
A ``False`` in ``theorem_consistent`` is a bug in this package, never a
mathematical outcome.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import lattice as lat
from .catalog import CatalogEntry
from .demazure import (
    ProductDecomposition,
    demazure_roots,
    detect_product,
    is_reductive,
    root_violation,
    semisimple_rank,
)
from .divisor import ToricDivisor, anticanonical, is_ample, is_nef, support_function
from .fan import Fan, canonical, check_valid, is_complete, is_smooth, picard_number, require_smooth_complete

SCHEMA = 1


@dataclass
class AnalysisReport:
    dim: int
    rays: Tuple[Tuple[int, ...], ...]
    ray_count: int
    picard_number: int
    smooth: bool
    complete: bool
    fano: bool
    nef_flags: Tuple[bool, ...]
    all_nef: bool
    root_count: int
    semisimple_count: int
    reductive: bool
    semisimple_rank: int
    product: Optional[ProductDecomposition]
    theorem_consistent: bool
    witnesses: Dict[str, object] = field(default_factory=dict)
    problems: List[str] = field(default_factory=list)

    @property
    def product_dims(self) -> Optional[List[int]]:
        return None if self.product is None else list(self.product.factor_dims)

    def to_json(self) -> dict:
        prod = None
        if self.product is not None:
            prod = {
                "factor_dims": list(self.product.factor_dims),
                "factors": [list(g) for g in self.product.factors],
            }
        return {
            "schema": SCHEMA,
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "ray_count": self.ray_count,
            "picard_number": self.picard_number,
            "smooth": self.smooth,
            "complete": self.complete,
            "fano": self.fano,
            "nef_flags": list(self.nef_flags),
            "all_nef": self.all_nef,
            "root_count": self.root_count,
            "semisimple_count": self.semisimple_count,
            "reductive": self.reductive,
            "semisimple_rank": self.semisimple_rank,
            "product": prod,
            "theorem_consistent": self.theorem_consistent,
            "witnesses": self.witnesses,
            "problems": list(self.problems),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def _canonical_product(fan: Fan) -> Optional[ProductDecomposition]:
    prod = detect_product(fan)
    if prod is None:
        return None
    groups = sorted((tuple(sorted(g)) for g in prod.factors), key=lambda g: (len(g), g))
    return ProductDecomposition(tuple(groups), tuple(len(g) - 1 for g in groups))


def analyze(fan: Fan, strict: bool = False) -> AnalysisReport:
    """Run every check on ``fan``; rays are relabeled lexicographically first,
    so the report only depends on the fan, not on how it was listed."""
    check_valid(fan, strict)
    require_smooth_complete(fan)
    fan, _ = canonical(fan)
    d = fan.dim
    witnesses: Dict[str, object] = {}
    problems: List[str] = []

    fano_cert = is_ample(fan, anticanonical(fan))
    fano = bool(fano_cert)
    if not fano:
        k, j = fano_cert.witness
        witnesses["fano"] = {"cone": k, "ray": j, "value": fano_cert.value, "bound": fano_cert.bound}

    nef_flags = []
    nef_witnesses = []
    for i in range(len(fan.rays)):
        cert = is_nef(fan, ToricDivisor.prime(fan, i))
        nef_flags.append(bool(cert))
        if not cert:
            k, j = cert.witness
            nef_witnesses.append({"divisor_ray": i, "cone": k, "ray": j, "value": cert.value, "bound": cert.bound})
    if nef_witnesses:
        witnesses["nef"] = nef_witnesses
    all_nef = all(nef_flags)

    rs = demazure_roots(fan)
    reductive = is_reductive(rs)
    rank = semisimple_rank(rs)
    if not reductive:
        semis = {r.m for r in rs.semisimple}
        bad = next(r for r in rs.roots if r.m not in semis)
        cand, ray, value = root_violation(fan, lat.neg(bad.m))
        witnesses["reductive"] = {
            "root": list(bad.m),
            "negative_candidate_ray": cand,
            "negative_fails_at_ray": ray,
            "value": value,
        }

    prod = _canonical_product(fan)

    if prod is not None and not (fano and all_nef):
        problems.append("product of projective spaces that is not Fano with all D_i nef")
    if fano and all_nef:
        if not reductive:
            problems.append("Fano with all D_i nef but automorphism group not reductive")
        if rank != d:
            problems.append(f"Fano with all D_i nef but semisimple rank {rank} != {d}")
        if prod is None:
            problems.append("Fano with all D_i nef but no product decomposition found")
        semis = {r.m for r in rs.semisimple}
        for i in range(len(fan.rays)):
            for m in support_function(fan, ToricDivisor.prime(fan, i)).per_cone:
                if any(m) and m not in semis:
                    problems.append(f"support value {list(m)} of D_{i} is not a semisimple root")
    if fano and (prod is not None) != (rank == d):
        problems.append("product decomposition disagrees with the semisimple-rank criterion")

    return AnalysisReport(
        dim=d,
        rays=fan.rays,
        ray_count=len(fan.rays),
        picard_number=picard_number(fan),
        smooth=is_smooth(fan),
        complete=is_complete(fan),
        fano=fano,
        nef_flags=tuple(nef_flags),
        all_nef=all_nef,
        root_count=len(rs.roots),
        semisimple_count=len(rs.semisimple),
        reductive=reductive,
        semisimple_rank=rank,
        product=prod,
        theorem_consistent=not problems,
        witnesses=witnesses,
        problems=problems,
    )


def cell(report: AnalysisReport) -> str:
    return f"fano={report.fano} all_nef={report.all_nef} product={report.product is not None}"


def expected_mismatches(entry: CatalogEntry, report: AnalysisReport) -> List[str]:
    out = []
    for key, want in entry.expected.items():
        got = report.product_dims if key == "product_dims" else getattr(report, key)
        if key == "product_dims" and got is not None and want is not None:
            got, want = sorted(got), sorted(want)
        if got != want:
            out.append(f"{entry.name}: expected {key}={want!r}, got {got!r}")
    return out


def theorem_sweep(entries: Sequence[CatalogEntry]) -> dict:
    """Analyze each entry and tally the (fano, all_nef, product) cells."""
    rows = []
    cells: Counter = Counter()
    inconsistent = []
    mismatches = []
    for e in entries:
        rep = analyze(e.fan)
        cells[cell(rep)] += 1
        if not rep.theorem_consistent:
            inconsistent.append(e.name)
        mismatches += expected_mismatches(e, rep)
        rows.append({
            "name": e.name,
            "fano": rep.fano,
            "all_nef": rep.all_nef,
            "product_dims": rep.product_dims,
            "semisimple_rank": rep.semisimple_rank,
            "theorem_consistent": rep.theorem_consistent,
        })
    return {
        "entries": rows,
        "cells": dict(sorted(cells.items())),
        "inconsistent": inconsistent,
        "expected_mismatches": mismatches,
        "ok": not inconsistent,
    }
