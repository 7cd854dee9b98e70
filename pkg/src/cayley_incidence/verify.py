"""Invariant suites run over every enumerated graph up to a given group order."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .canon import automorphism_group
from .cells import stabilizer, stabilizer_bruteforce
from .constructions import dihedral_certificate
from .enumeration import (
    DEFAULT_BUDGET, EnumerationReport, GoldenEntry, compare_with_golden, enumerate_group,
    load_golden, naive_enumerate,
)
from .graphs import biadjacency_identity_check, build_bcay, build_cayley, girth
from .groups import catalog
from .spectrum import spectrum_direct, spectrum_via_underlying
from .symmetry import regular_subgroup_search

NAIVE_MAX_ORDER = 10


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **witness) -> None:
        self.failures.append(witness)

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "checked": self.checked,
                "failures": self.failures}


def _records(reports: Iterable[EnumerationReport]):
    for r in reports:
        yield from r.records


def suite_identity(reports) -> SuiteResult:
    res = SuiteResult("identity")
    for rec in _records(reports):
        res.checked += 1
        if not biadjacency_identity_check(build_bcay(rec.family), rec.family):
            res.fail(group=rec.group, cells=[list(c) for c in rec.family.cells])
    return res


def suite_girth(reports) -> SuiteResult:
    res = SuiteResult("girth")
    for rec in _records(reports):
        res.checked += 1
        g = girth(build_bcay(rec.family))
        if g != rec.girth or g < 6:
            res.fail(group=rec.group, girth=g, cells=[list(c) for c in rec.family.cells])
        elif rec.family.group.abelian and rec.beta_transitive and rec.ell >= 3 and g != 6:
            res.fail(group=rec.group, girth=g, rule="abelian beta-transitive ell>=3 needs girth 6")
    return res


def suite_spectrum(reports) -> SuiteResult:
    res = SuiteResult("spectrum")
    for rec in _records(reports):
        res.checked += 1
        direct = spectrum_direct(build_bcay(rec.family))
        formula = spectrum_via_underlying(rec.family)
        if not direct.matches(formula) or not direct.is_symmetric():
            res.fail(group=rec.group, direct=direct.format(), formula=formula.format())
    return res


def suite_certificates(reports) -> SuiteResult:
    """Dihedral certificates on abelian β-regular records, re-checked by the generic search."""
    res = SuiteResult("certificates")
    for rec in _records(reports):
        if not (rec.family.group.abelian and rec.beta_regular):
            continue
        res.checked += 1
        cert = dihedral_certificate(rec.family)
        Y = build_cayley(cert.group, cert.connection_set)
        found = regular_subgroup_search(Y.adjacency, automorphism_group(Y))
        if not cert.verified or found is None or not rec.is_cayley:
            res.fail(group=rec.group, cells=[list(c) for c in rec.family.cells],
                     verified=cert.verified, search=found is not None)
    return res


def suite_stabilizers(reports) -> SuiteResult:
    res = SuiteResult("stabilizers")
    for rec in _records(reports):
        G = rec.family.group
        for C in rec.family.cells:
            res.checked += 1
            if stabilizer(G, C) != stabilizer_bruteforce(G, C):
                res.fail(group=rec.group, cell=list(C))
    return res


def suite_oracle(reports) -> SuiteResult:
    res = SuiteResult("oracle")
    for r in reports:
        if r.order > NAIVE_MAX_ORDER:
            continue
        res.checked += 1
        naive = naive_enumerate(r.group)
        fast = {rec.certificate.data for rec in r.records}
        if naive != fast:
            res.fail(group=r.group, naive=len(naive), enumerated=len(fast))
    return res


def suite_golden(reports, golden: dict[str, GoldenEntry]) -> SuiteResult:
    res = SuiteResult("golden")
    by_name = {r.group: r for r in reports}
    diffs = compare_with_golden(by_name, golden)
    res.checked = sum(1 for n in by_name if n in golden)
    for d in diffs:
        if d.blocking:
            res.fail(**d.to_json(), text=d.format())
    return res


SUITES: dict[str, Callable] = {
    "identity": suite_identity,
    "girth": suite_girth,
    "spectrum": suite_spectrum,
    "certificates": suite_certificates,
    "stabilizers": suite_stabilizers,
    "oracle": suite_oracle,
    "golden": suite_golden,
}


def run_suites(max_order: int = 12, only: Iterable[str] | None = None,
               golden: dict[str, GoldenEntry] | None = None,
               budget_seconds: float | None = DEFAULT_BUDGET, workers: int = 1) -> list[SuiteResult]:
    names = list(SUITES) if only is None else list(only)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    reports = [enumerate_group(G, budget_seconds, workers) for G in catalog() if G.order <= max_order]
    out = []
    for n in names:
        if n == "golden":
            out.append(suite_golden(reports, load_golden() if golden is None else golden))
        else:
            out.append(SUITES[n](reports))
    if any(r.partial for r in reports):
        res = SuiteResult("budget", checked=len(reports))
        for r in reports:
            if r.partial:
                res.fail(group=r.group, reason="time budget exhausted")
        out.append(res)
    return out
