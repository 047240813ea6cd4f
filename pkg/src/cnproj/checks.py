"""The invariant battery behind the check command (the CI entry point)."""

from __future__ import annotations

from dataclasses import dataclass

from .arquiver import (
    build_ar_quiver,
    check_window_stability,
    classify_irreducible_components,
    gamma_bar,
)
from .complexes import compose, mat_is_zero, mat_mul, strip_contractible
from .errors import EtaZero, NoAnchorFound, ShapeViolation
from .sgldim import compute_sgldim
from .universe import brute_force_indecomposables, enumerate_indecomposables


@dataclass
class CheckEntry:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class CheckReport:
    entries: list

    def ok(self) -> bool:
        return all(e.ok for e in self.entries)


def d_squared_entry(universe) -> CheckEntry:
    """Re-verify d^2 = 0 on every representative (guards against corruption)."""
    bad = []
    for rep in universe.representatives:
        for i in range(rep.window - 2):
            prod = mat_mul(rep.alg, rep.diffs[i + 1], rep.diffs[i],
                           rep.cells[i + 2], rep.cells[i + 1], rep.cells[i])
            if not mat_is_zero(prod):
                bad.append(rep.label())
                break
    return CheckEntry("d^2 = 0 on all classes", not bad, ", ".join(bad[:4]))


def run_check_battery(alg, n: int, oracle: str | None = None, bound: int = 2,
                      config=None, universe_override=None) -> CheckReport:
    entries: list[CheckEntry] = []
    report = compute_sgldim(alg, config=config)
    if not report.terminated:
        entries.append(CheckEntry("sgldim terminates", False, report.cap_note or ""))
        return CheckReport(entries)
    eta = report.sgldim
    entries.append(CheckEntry("sgldim terminates", True, f"eta = {eta}, m0 = {report.m0}"))

    universe = universe_override or enumerate_indecomposables(alg, n, config)
    entries.append(CheckEntry("universe closed", universe.closed,
                              f"{len(universe.representatives)} classes at n = {n}"))
    entries.append(d_squared_entry(universe))

    # strip-stability: non-J classes are their own minimal form
    unstable = [rep.label() for rep, is_j in zip(universe.representatives, universe.j_flags)
                if not is_j and strip_contractible(rep).total_summands() != rep.total_summands()]
    entries.append(CheckEntry("non-contractible classes are strip-stable",
                              not unstable, ", ".join(unstable[:4])))

    if eta >= 1 and n >= eta + 2:
        quivers = {}
        thm = check_window_stability(alg, n, eta, config, quivers)
        entries.append(CheckEntry(
            "cross-window stability (conflations, boundary cells)",
            thm.ok(), f"checked {thm.checked}, violations {thm.violations[:4]}"))
        q = quivers[n]
    else:
        entries.append(CheckEntry("cross-window stability (conflations, boundary cells)", True,
                                  "skipped: EtaZero (semisimple case, eta = 0)"))
        q = build_ar_quiver(alg, n, config, universe=universe)

    # component shapes on every arrow representative
    bad_arrows = []
    for (i, j), f_map in q.arrow_reps.items():
        if f_map is None:
            continue
        try:
            classify_irreducible_components(f_map)
        except ShapeViolation as exc:
            bad_arrows.append(f"{q.label(i)} -> {q.label(j)}: {exc}")
    entries.append(CheckEntry("irreducible component shapes",
                              not bad_arrows, "; ".join(bad_arrows[:3])))

    # conflation soundness: certified, ends indecomposable (certification did),
    # middle multiset matches arrow multiplicities on both sides, uniqueness per end
    problems = []
    for z_idx, conf in q.conflations.items():
        if not conf.certified:
            problems.append(f"uncertified conflation at {q.label(z_idx)}")
            continue
        outgoing = []
        for (i, j), m in q.arrows.items():
            if i == conf.x_idx:
                outgoing.extend([j] * m)
        if sorted(outgoing) != sorted(conf.y_summands):
            problems.append(f"middle/arrow mismatch out of {q.label(conf.x_idx)}")
        incoming = []
        for (i, j), m in q.arrows.items():
            if j == z_idx:
                incoming.extend([i] * m)
        if sorted(incoming) != sorted(conf.y_summands):
            problems.append(f"middle/arrow mismatch into {q.label(z_idx)}")
        # degreewise split rows by construction; re-verify d . i = 0
        if not compose(conf.d, conf.i).is_zero():
            problems.append(f"d . i != 0 at {q.label(z_idx)}")
    entries.append(CheckEntry("conflation soundness", not problems, "; ".join(problems[:3])))

    # gamma-bar extraction (only meaningful when eta >= 1)
    if eta >= 1:
        try:
            gb = gamma_bar(build_ar_quiver(alg, eta + 1, config))
            entries.append(CheckEntry("gamma-bar anchor",
                                      True, f"{gb.vertex_count()} vertices"))
        except (NoAnchorFound, EtaZero) as exc:
            entries.append(CheckEntry("gamma-bar anchor", False, str(exc)))

    if oracle:
        p = int(oracle[2:])
        b = brute_force_indecomposables(alg, n, bound, p)
        same = (len(b.representatives) == len(universe.representatives)
                and b.signatures() == universe.signatures())
        entries.append(CheckEntry(
            f"oracle equivalence over GF({p}), bound {bound}",
            same,
            f"engine {len(universe.representatives)} vs oracle {len(b.representatives)}"))
    return CheckReport(entries)
