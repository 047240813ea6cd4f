"""Enumeration of the indecomposable objects of C_n(proj Lambda).

The main path is a cone-closure engine: seed with the stalk and contractible
complexes, then repeatedly apply the three growth rules

  (a) one-cell support extensions by an indecomposable projective, over a
      basis of the admissible extension morphisms;
  (b) cones of basis homs f: A -> B between known classes whenever
      Hom_{K^b}(B, A[1]) vanishes, which guarantees the cone stays
      indecomposable, re-windowed at every fitting shift;
  (c) indecomposable summands of assembled degree-1 extensions of known
      pairs;

until a full pass adds nothing.  Closure is certified only in that fixpoint
sense; completeness is checked against the brute-force finite-field oracle
at small scale, never assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import MonomialAlgebra, build_algebra
from .complexes import (
    Complex,
    canonical_sort,
    cone,
    make_J,
    make_stalk,
    mat_is_zero,
    mat_mul,
    strip_contractible,
    shift_window,
    length,
)
from .errors import NotClosed, SearchSpaceTooLarge
from .homspaces import (
    assemble_extension,
    decompose_with_maps,
    ext_classes,
    hom_basis,
    is_indecomposable,
    is_null_homotopic,
    null_homotopy_span,
    _iso_indecomposable,
)
from .linalg import nullspace


@dataclass
class EnumConfig:
    max_rounds: int = 50
    max_total_summands: int = 24
    verify: bool = True
    oracle_space_cap: int = 4_000_000
    idempotent_cap: int = 1 << 16


class _Registry:
    """Iso-class registry with signature buckets and deterministic insertion."""

    def __init__(self):
        self.representatives: list[Complex] = []
        self.buckets: dict[tuple, list[int]] = {}

    def find(self, x: Complex) -> int | None:
        x = canonical_sort(x)
        sig = x.signature()
        for idx in self.buckets.get(sig, []):
            rep = self.representatives[idx]
            if rep.serial_key() == x.serial_key() or _iso_indecomposable(rep, x):
                return idx
        return None

    def add(self, x: Complex) -> tuple[int, bool]:
        x = canonical_sort(x)
        sig = x.signature()
        for idx in self.buckets.get(sig, []):
            rep = self.representatives[idx]
            if rep.serial_key() == x.serial_key() or _iso_indecomposable(rep, x):
                return idx, False
        idx = len(self.representatives)
        self.representatives.append(x)
        self.buckets.setdefault(sig, []).append(idx)
        return idx, True


@dataclass
class Universe:
    """Iso classes of indecomposables in C_n, with a closure certificate."""

    alg: MonomialAlgebra
    window: int
    representatives: list[Complex]
    closed: bool
    stats: dict
    j_flags: list[bool]
    _registry: _Registry = field(repr=False, default=None)

    def find(self, x: Complex) -> int | None:
        return self._registry.find(x)

    def signatures(self):
        return sorted(rep.signature() for rep in self.representatives)

    def __repr__(self):
        return (f"Universe(n={self.window}, classes={len(self.representatives)}, "
                f"closed={self.closed})")


def _seeds(alg: MonomialAlgebra, n: int):
    out = []
    for pos in range(1, n + 1):
        for v in sorted(alg.quiver.vertices):
            out.append(make_stalk(alg, v, pos, n))
    for k in range(1, n):
        for v in sorted(alg.quiver.vertices):
            out.append(make_J(alg, v, k, n))
    return out


def _support_extensions(alg: MonomialAlgebra, x: Complex):
    """Rule (a): grow the support by one cell on either side, inside the window."""
    out = []
    sup = x.support()
    if sup is None:
        return out
    lo, hi = sup
    n = x.window
    f = alg.field
    # left: new summand P_v at position lo-1, column u with d^(lo) . u = 0
    if lo >= 2:
        tgt = x.cells[lo - 1]
        for v in sorted(alg.quiver.vertices):
            paths = [(r, p) for r in range(len(tgt))
                     for p in alg.paths_between(tgt[r], v)]
            if not paths:
                continue
            rows = []
            if lo < n and x.cells[lo]:
                nxt = x.cells[lo]
                eq_paths = {(r2, q): i for i, (r2, q) in enumerate(
                    (r2, q) for r2 in range(len(nxt))
                    for q in alg.paths_between(nxt[r2], v))}
                rows = [[f.zero] * len(paths) for _ in eq_paths]
                for k, (r, p) in enumerate(paths):
                    for r2 in range(len(nxt)):
                        for dp, dc in x.diffs[lo - 1][r2][r].coeffs.items():
                            comp = alg.mult_path(dp, p)
                            if comp is None:
                                continue
                            rows[eq_paths[(r2, comp)]][k] = \
                                rows[eq_paths[(r2, comp)]][k] + dc
            vecs = nullspace(f, [r for r in rows if any(r)], len(paths)) if rows else \
                [[f.one if i == k else f.zero for i in range(len(paths))]
                 for k in range(len(paths))]
            for vec in vecs:
                col = [alg.zero_element(tv, v) for tv in tgt]
                ok = False
                for k, (r, p) in enumerate(paths):
                    if vec[k]:
                        col[r] = col[r] + alg.element(tgt[r], v, {p: 1}).scale(vec[k])
                        ok = True
                if not ok:
                    continue
                cells = list(x.cells)
                cells[lo - 2] = (v,)
                diffs = [list(map(list, m)) for m in x.diffs]
                diffs[lo - 2] = [[e] for e in col]
                if lo - 3 >= 0:
                    diffs[lo - 3] = [[]]  # one empty row into the new single summand
                out.append(Complex(alg, cells, diffs))
    # right: new summand P_v at position hi+1, row u with u . d^(hi-1) = 0
    if hi <= n - 1:
        src = x.cells[hi - 1]
        for v in sorted(alg.quiver.vertices):
            paths = [(c, p) for c in range(len(src))
                     for p in alg.paths_between(v, src[c])]
            if not paths:
                continue
            rows = []
            if hi >= 2 and x.cells[hi - 2]:
                prv = x.cells[hi - 2]
                eq_paths = {(c2, q): i for i, (c2, q) in enumerate(
                    (c2, q) for c2 in range(len(prv))
                    for q in alg.paths_between(v, prv[c2]))}
                rows = [[f.zero] * len(paths) for _ in eq_paths]
                for k, (c, p) in enumerate(paths):
                    for c2 in range(len(prv)):
                        for dp, dc in x.diffs[hi - 2][c][c2].coeffs.items():
                            comp = alg.mult_path(p, dp)
                            if comp is None:
                                continue
                            rows[eq_paths[(c2, comp)]][k] = \
                                rows[eq_paths[(c2, comp)]][k] + dc
            vecs = nullspace(f, [r for r in rows if any(r)], len(paths)) if rows else \
                [[f.one if i == k else f.zero for i in range(len(paths))]
                 for k in range(len(paths))]
            for vec in vecs:
                row = [alg.zero_element(v, sv) for sv in src]
                ok = False
                for k, (c, p) in enumerate(paths):
                    if vec[k]:
                        row[c] = row[c] + alg.element(v, src[c], {p: 1}).scale(vec[k])
                        ok = True
                if not ok:
                    continue
                cells = list(x.cells)
                cells[hi] = (v,)
                diffs = [list(map(list, m)) for m in x.diffs]
                diffs[hi - 1] = [row]
                out.append(Complex(alg, cells, diffs))
    return out


def enumerate_indecomposables(alg: MonomialAlgebra, n: int,
                              config: EnumConfig | None = None) -> Universe:
    """Closure enumeration of ind C_n(proj Lambda); see the module docstring."""
    config = config or EnumConfig()
    reg = _Registry()
    stats = {"rounds": 0, "candidates": 0, "cap_skips": 0,
             "added_by_rule": {"seed": 0, "ext": 0, "cone": 0, "summand": 0}}
    j_idx: set[int] = set()

    def admit(x: Complex, rule: str) -> list[int]:
        """Strip, re-window at every fitting shift, dedup; returns new indices."""
        stats["candidates"] += 1
        if rule != "seed":
            x = strip_contractible(x)
        if x.is_zero():
            return []
        if x.total_summands() > config.max_total_summands:
            stats["cap_skips"] += 1
            return []
        sup = x.support()
        width = sup[1] - sup[0] + 1
        if width > n:
            return []
        new = []
        for start in range(1, n - width + 2):
            shifted = shift_window(x, start - sup[0], n)
            if config.verify and rule != "seed":
                if not is_indecomposable(shifted, config.idempotent_cap):
                    raise AssertionError(
                        f"rule {rule} produced a decomposable candidate {shifted!r}")
            idx, added = reg.add(shifted)
            if added:
                stats["added_by_rule"][rule] += 1
                new.append(idx)
        return new

    for s in _seeds(alg, n):
        idxs = reg.add(s)
        if idxs[1]:
            stats["added_by_rule"]["seed"] += 1
            if strip_contractible(s).is_zero():
                j_idx.add(idxs[0])

    hom_cache: dict[tuple[int, int], object] = {}
    ext_cache: dict[tuple[int, int], object] = {}

    def hom(i, j):
        if (i, j) not in hom_cache:
            hom_cache[(i, j)] = hom_basis(reg.representatives[i], reg.representatives[j])
        return hom_cache[(i, j)]

    def ext(i, j):
        # classes of conflations rep[j] -> Y -> rep[i]
        if (i, j) not in ext_cache:
            ext_cache[(i, j)] = ext_classes(reg.representatives[i], reg.representatives[j])
        return ext_cache[(i, j)]

    new_idxs = list(range(len(reg.representatives)))
    closed = False
    while stats["rounds"] < config.max_rounds:
        stats["rounds"] += 1
        added: list[int] = []
        new_set = set(new_idxs)
        # rule (a): one-cell support extensions of the new representatives
        for i in sorted(new_set):
            for cand in _support_extensions(alg, reg.representatives[i]):
                added.extend(admit(cand, "ext"))
        # rules (b) and (c) over pairs touching a new representative
        count = len(reg.representatives)
        for i in range(count):
            for j in range(count):
                if i not in new_set and j not in new_set:
                    continue
                a, b = reg.representatives[i], reg.representatives[j]
                if i in j_idx or j in j_idx:
                    continue
                # rule (b): cones of basis maps f: a -> b that are nonzero and
                # non-invertible in the homotopy category, gated on ext(b, a) = 0
                hspace = hom(i, j)
                if hspace.dimension and ext(j, i).dimension == 0:
                    h_span = None
                    for f_ in hspace.basis:
                        if f_.is_zero() or f_.is_isomorphism():
                            continue
                        if h_span is None:
                            h_span = null_homotopy_span(hspace)
                        if is_null_homotopic(hspace, f_, h_span):
                            continue
                        added.extend(admit(cone(f_), "cone"))
                # rule (c): summands of assembled extensions of (z=a, x=b)
                espace = ext(i, j)
                if espace.dimension:
                    for sigma in espace.basis:
                        y, _, _ = assemble_extension(a, b, sigma)
                        y = strip_contractible(y)
                        if y.is_zero():
                            continue
                        if alg.field.char == 0:
                            for w, _, _ in decompose_with_maps(y):
                                added.extend(admit(w, "summand"))
                        else:
                            # no exact splitting over GF(p); keep indecomposables only
                            if not y.is_zero() and is_indecomposable(y, config.idempotent_cap):
                                added.extend(admit(y, "summand"))
        if not added:
            closed = stats["cap_skips"] == 0
            break
        new_idxs = added
    reps = reg.representatives
    flags = [strip_contractible(r).is_zero() for r in reps]
    stats["classes"] = len(reps)
    return Universe(alg, n, reps, closed, stats, flags, _registry=reg)


def max_length(universe: Universe) -> tuple[int, Complex]:
    """Maximum length over the representatives, with a deterministic witness."""
    if not universe.closed:
        raise NotClosed("max_length needs a closed universe")
    best = -1
    witness = None
    for rep in sorted(universe.representatives, key=lambda r: r.serial_key()):
        ell = length(rep)
        if ell > best:
            best = ell
            witness = rep
    return best, witness


# -- brute-force oracle over a prime field ------------------------------------


def brute_force_indecomposables(alg: MonomialAlgebra, n: int, bound: int, p: int,
                                config: EnumConfig | None = None) -> Universe:
    """Exhaustive enumeration over GF(p) with per-cell multiplicity <= bound.

    Complete within the bound by construction: every cell-multiset vector and
    every differential entry over the full finite Hom spaces is visited,
    candidates are filtered by d^2 = 0 and indecomposability and deduplicated
    up to isomorphism.  This is the independent oracle for the closure engine.
    """
    config = config or EnumConfig()
    gf = build_algebra(alg.quiver, alg.relations, f"gf{p}")
    f = gf.field
    verts = sorted(gf.quiver.vertices)
    cell_choices = []
    for size in range(bound + 1):
        cell_choices.extend(itertools.combinations_with_replacement(verts, size))
    # estimate the search space before running
    total = 0
    shapes = [s for s in itertools.product(cell_choices, repeat=n) if any(s)]
    for shape in shapes:
        nvars = 0
        for i in range(n - 1):
            for tv in shape[i + 1]:
                for sv in shape[i]:
                    nvars += len(gf.paths_between(tv, sv))
        total += p ** nvars
    if total > config.oracle_space_cap:
        raise SearchSpaceTooLarge(total)
    reg = _Registry()
    stats = {"shapes": len(shapes), "space": total, "checked": 0, "d2_ok": 0}
    elements = f.elements()
    for shape in shapes:
        entry_paths = []
        for i in range(n - 1):
            for r, tv in enumerate(shape[i + 1]):
                for c, sv in enumerate(shape[i]):
                    for path in gf.paths_between(tv, sv):
                        entry_paths.append((i, r, c, path))
        for assignment in itertools.product(elements, repeat=len(entry_paths)):
            stats["checked"] += 1
            diffs = [[[gf.zero_element(tv, sv) for sv in shape[i]]
                      for tv in shape[i + 1]] for i in range(n - 1)]
            for (i, r, c, path), coeff in zip(entry_paths, assignment):
                if coeff:
                    diffs[i][r][c] = diffs[i][r][c] + \
                        gf.element(shape[i + 1][r], shape[i][c], {path: 1}).scale(coeff)
            ok = True
            for i in range(n - 2):
                prod = mat_mul(gf, diffs[i + 1], diffs[i],
                               shape[i + 2], shape[i + 1], shape[i])
                if not mat_is_zero(prod):
                    ok = False
                    break
            if not ok:
                continue
            stats["d2_ok"] += 1
            x = Complex(gf, shape, diffs, check=False)
            if _obviously_decomposable(x):
                continue
            if not is_indecomposable(x, config.idempotent_cap):
                continue
            reg.add(x)
    reps = reg.representatives
    flags = [strip_contractible(r).is_zero() for r in reps]
    stats["classes"] = len(reps)
    return Universe(gf, n, reps, True, stats, flags, _registry=reg)


def _obviously_decomposable(x: Complex) -> bool:
    """Summand graph disconnected => decomposable (cheap pre-filter)."""
    nodes = [(i, j) for i in range(x.window) for j in range(len(x.cells[i]))]
    if len(nodes) <= 1:
        return False
    index = {nd: k for k, nd in enumerate(nodes)}
    parent = list(range(len(nodes)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i in range(x.window - 1):
        for r in range(len(x.cells[i + 1])):
            for c in range(len(x.cells[i])):
                if not x.diffs[i][r][c].is_zero():
                    union(index[(i, c)], index[(i + 1, r)])
    root = find(0)
    return any(find(k) != root for k in range(len(nodes)))
