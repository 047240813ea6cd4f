"""The Auslander-Reiten quiver of C_n(proj Lambda) and its derived shadow.

Arrows come from rad/rad^2 dimensions over a closed universe.  Almost split
conflations ending at a non-projective class Z are found by a linear
criterion: a nonzero extension class sigma in Ext(Z, X) gives an almost
split conflation iff every pullback along a radical map W -> Z splits, i.e.
sigma . g is a boundary for every g in rad(W, Z) and every universe class W.
Candidates are then certified independently (left/right almost split tests,
right minimality, indecomposable ends).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .complexes import (
    ChainMap,
    Complex,
    can_extend_left,
    can_extend_right,
    compose,
    drop_first,
    drop_last,
    embed_left,
    embed_right,
    shift_window,
)
from .errors import (
    AmbiguousAnchor,
    CertificationFailure,
    EtaZero,
    MultipleCertified,
    NoAnchorFound,
    NoCandidateFound,
    NotClosed,
    ShapeViolation,
)
from .homspaces import (
    DegreeOneMap,
    HomSpace,
    assemble_extension,
    decompose_with_maps,
    end_radical_coords,
    ext_classes,
    hom_basis,
    is_indecomposable,
    rad2_basis,
    _combine,
    _iso_indecomposable,
)
from .linalg import SpanBasis, nullspace, rank
from .universe import EnumConfig, Universe, enumerate_indecomposables


@dataclass
class Conflation:
    """An E_n-conflation X -> Y -> Z with degreewise split rows."""

    x: Complex
    y: Complex
    z: Complex
    i: ChainMap
    d: ChainMap
    certified: bool = False
    x_idx: int = -1
    z_idx: int = -1
    y_summands: list = field(default_factory=list)  # universe indices, repeated per multiplicity


@dataclass
class ARQuiver:
    alg: object
    window: int
    universe: Universe
    en_projective: list[bool]
    en_injective: list[bool]
    proj_injective: list[bool]
    arrows: dict          # (i, j) -> multiplicity = dim rad/rad^2
    arrow_reps: dict      # (i, j) -> a radical chain map not in rad^2
    conflations: dict     # z_idx -> Conflation
    tau: dict             # z_idx -> x_idx

    def class_count(self) -> int:
        return len(self.universe.representatives)

    def label(self, idx: int) -> str:
        return self.universe.representatives[idx].label()


class _Ctx:
    """Shared caches over one universe."""

    def __init__(self, universe: Universe):
        if not universe.closed:
            raise NotClosed("AR constructions need a closed universe")
        self.universe = universe
        self.reps = universe.representatives
        self._hom: dict[tuple[int, int], HomSpace] = {}
        self._ext: dict[tuple[int, int], object] = {}
        self._rad: dict[tuple[int, int], HomSpace] = {}

    def hom(self, i, j) -> HomSpace:
        if (i, j) not in self._hom:
            self._hom[(i, j)] = hom_basis(self.reps[i], self.reps[j])
        return self._hom[(i, j)]

    def ext(self, z, x):
        if (z, x) not in self._ext:
            self._ext[(z, x)] = ext_classes(self.reps[z], self.reps[x])
        return self._ext[(z, x)]

    def rad(self, i, j) -> HomSpace:
        if (i, j) not in self._rad:
            if i == j:
                end = self.hom(i, i)
                vecs = end_radical_coords(self.reps[i], end)
                basis = [_combine(end.basis, v) for v in vecs]
                self._rad[(i, j)] = HomSpace(self.reps[i], self.reps[j], basis,
                                             len(basis), end._layout, end._free)
            else:
                self._rad[(i, j)] = self.hom(i, j)
        return self._rad[(i, j)]


def build_ar_quiver(alg, n: int, config: EnumConfig | None = None,
                    universe: Universe | None = None) -> ARQuiver:
    """Enumerate, compute arrows from rad/rad^2, attach certified conflations."""
    if universe is None:
        universe = enumerate_indecomposables(alg, n, config)
    ctx = _Ctx(universe)
    reps = ctx.reps
    en_proj, en_inj, proj_inj = [], [], []
    for rep, is_j in zip(reps, universe.j_flags):
        sup = rep.support()
        stalk = rep.total_summands() == 1
        en_proj.append(is_j or (stalk and sup == (n, n)))
        en_inj.append(is_j or (stalk and sup == (1, 1)))
        proj_inj.append(is_j)
    arrows = {}
    arrow_reps = {}
    for i in range(len(reps)):
        for j in range(len(reps)):
            r1 = ctx.rad(i, j)
            if r1.dimension == 0:
                continue
            r2 = rad2_basis(reps[i], reps[j], universe)
            mult = r1.dimension - r2.dimension
            if mult <= 0:
                continue
            arrows[(i, j)] = mult
            span = SpanBasis(alg.field, len(r1._free))
            hs = ctx.hom(i, j)
            for g in r2.basis:
                span.add(hs.coordinates(g))
            rep_map = None
            for g in r1.basis:
                if not span.contains(hs.coordinates(g)):
                    rep_map = g
                    break
            arrow_reps[(i, j)] = rep_map
    conflations = {}
    tau = {}
    for z_idx in range(len(reps)):
        if en_proj[z_idx]:
            continue
        conf = almost_split_ending_at(ctx, z_idx)
        conflations[z_idx] = conf
        tau[z_idx] = conf.x_idx
    return ARQuiver(alg, n, universe, en_proj, en_inj, proj_inj,
                    arrows, arrow_reps, conflations, tau)


def almost_split_ending_at(ctx: _Ctx, z_idx: int) -> Conflation:
    """The unique certified almost split conflation ending at a non-projective class."""
    reps = ctx.reps
    z = reps[z_idx]
    field_ = z.alg.field
    certified = []
    for x_idx in range(len(reps)):
        espace = ctx.ext(z_idx, x_idx)
        if espace.dimension == 0:
            continue
        # sigma almost split <=> [sigma . g] = 0 for all radical g: W -> Z
        rows = []
        for w_idx in range(len(reps)):
            gs = ctx.rad(w_idx, z_idx)
            if gs.dimension == 0:
                continue
            target_ext = ctx.ext(w_idx, x_idx)
            for g in gs.basis:
                cols = [target_ext.reduce(sigma.compose_right(g)) for sigma in espace.basis]
                for r in range(target_ext.dimension):
                    row = [cols[k][r] for k in range(espace.dimension)]
                    if any(row):
                        rows.append(row)
        sol = nullspace(field_, rows, espace.dimension) if rows else \
            [[field_.one if i == k else field_.zero for i in range(espace.dimension)]
             for k in range(espace.dimension)]
        if not sol:
            continue
        coeffs = sol[0]
        comps = None
        for c, sigma in zip(coeffs, espace.basis):
            if not c:
                continue
            scaled = [[[e.scale(c) for e in row] for row in m] for m in sigma.comps]
            if comps is None:
                comps = scaled
            else:
                comps = [[[a + b for a, b in zip(ra, rb)] for ra, rb in zip(ma, mb)]
                         for ma, mb in zip(comps, scaled)]
        sigma_star = DegreeOneMap(z, reps[x_idx], comps)
        y, i_map, d_map = assemble_extension(z, reps[x_idx], sigma_star)
        conf = Conflation(reps[x_idx], y, z, i_map, d_map, x_idx=x_idx, z_idx=z_idx)
        _certify(ctx, conf)
        certified.append(conf)
    if not certified:
        table = {x: ctx.ext(z_idx, x).dimension for x in range(len(reps))
                 if ctx.ext(z_idx, x).dimension}
        raise NoCandidateFound(
            f"no almost split conflation ends at class {z_idx} ({z.label()}); "
            f"nonzero Ext dimensions: {table}")
    if len(certified) > 1:
        first = certified[0]
        for other in certified[1:]:
            if other.x_idx != first.x_idx or not _iso_indecomposable(other.y, first.y):
                raise MultipleCertified(
                    f"classes {first.x_idx} and {other.x_idx} both start certified "
                    f"conflations ending at {z_idx}")
    return certified[0]


def _certify(ctx: _Ctx, conf: Conflation):
    """Full almost-split verification; raises CertificationFailure on any miss."""
    if not is_indecomposable(conf.x) or not is_indecomposable(conf.z):
        raise CertificationFailure("conflation end terms must be indecomposable")
    if not is_right_almost_split(ctx.universe, conf.d, _ctx=ctx):
        raise CertificationFailure("right map is not right almost split")
    if not is_left_almost_split(ctx.universe, conf.i, _ctx=ctx):
        raise CertificationFailure("left map is not left almost split")
    summands = decompose_with_maps(conf.y)
    conf.y_summands = []
    for w, _, _ in summands:
        idx = ctx.universe.find(w)
        if idx is None:
            raise CertificationFailure("middle summand escapes the universe")
        conf.y_summands.append(idx)
    if not is_right_minimal(ctx.universe, conf.d, summands, _ctx=ctx):
        raise CertificationFailure("right map is not right minimal")
    conf.certified = True


def is_right_almost_split(universe: Universe, d: ChainMap, _ctx: _Ctx | None = None) -> bool:
    """Every radical map W -> Z from the universe factors through d, and d is
    not a retraction."""
    if not universe.closed:
        raise NotClosed("the factorisation quantifier needs a closed universe")
    ctx = _ctx or _Ctx(universe)
    z = d.target
    y = d.source
    z_idx = universe.find(z)
    # not a retraction: the identity of Z must not factor through d
    hz = hom_basis(z, z)
    img = SpanBasis(z.alg.field, len(hz._free))
    for s in hom_basis(z, y).basis:
        img.add(hz.coordinates(compose(d, s)))
    if img.contains(hz.coordinates(ChainMap.identity(z))):
        return False
    exact = z_idx is not None and ctx.reps[z_idx] == z
    for w_idx in range(len(ctx.reps)):
        w = ctx.reps[w_idx]
        gs = ctx.rad(w_idx, z_idx) if exact else _rad_generic(ctx, w, z)
        if gs.dimension == 0:
            continue
        hw = hom_basis(w, z)
        span = SpanBasis(z.alg.field, len(hw._free))
        for s in hom_basis(w, y).basis:
            span.add(hw.coordinates(compose(d, s)))
        for g in gs.basis:
            if not span.contains(hw.coordinates(g)):
                return False
    return True


def is_left_almost_split(universe: Universe, i_map: ChainMap, _ctx: _Ctx | None = None) -> bool:
    """Every radical map X -> W into the universe factors through i, and i is
    not a section."""
    if not universe.closed:
        raise NotClosed("the factorisation quantifier needs a closed universe")
    ctx = _ctx or _Ctx(universe)
    x = i_map.source
    y = i_map.target
    x_idx = universe.find(x)
    hx = hom_basis(x, x)
    img = SpanBasis(x.alg.field, len(hx._free))
    for s in hom_basis(y, x).basis:
        img.add(hx.coordinates(compose(s, i_map)))
    if img.contains(hx.coordinates(ChainMap.identity(x))):
        return False
    exact = x_idx is not None and ctx.reps[x_idx] == x
    for w_idx in range(len(ctx.reps)):
        w = ctx.reps[w_idx]
        gs = ctx.rad(x_idx, w_idx) if exact else _rad_generic(ctx, x, w)
        if gs.dimension == 0:
            continue
        hw = hom_basis(x, w)
        span = SpanBasis(x.alg.field, len(hw._free))
        for s in hom_basis(y, w).basis:
            span.add(hw.coordinates(compose(s, i_map)))
        for g in gs.basis:
            if not span.contains(hw.coordinates(g)):
                return False
    return True


def _rad_generic(ctx: _Ctx, w: Complex, z: Complex) -> HomSpace:
    # for w not isomorphic to z every morphism is radical; the isomorphic
    # non-representative case has no canonical coordinates, so fail loudly
    if not z.is_zero() and not w.is_zero() and _iso_indecomposable(w, z):
        raise NotClosed("radical between isomorphic non-representative objects")
    return hom_basis(w, z)


def is_right_minimal(universe: Universe, d: ChainMap, summands=None,
                     _ctx: _Ctx | None = None) -> bool:
    """No proper direct summand restriction of the source stays right almost split."""
    ctx = _ctx or _Ctx(universe)
    if summands is None:
        summands = decompose_with_maps(d.source)
    if len(summands) <= 1:
        return True
    for size in range(1, len(summands)):
        for subset in itertools.combinations(range(len(summands)), size):
            parts = [summands[k] for k in subset]
            sub, incl = _sum_with_inclusion(d.source, parts)
            restricted = compose(d, incl)
            if is_right_almost_split(universe, restricted, _ctx=ctx):
                return False
    return True


def is_left_minimal(universe: Universe, i_map: ChainMap, summands=None,
                    _ctx: _Ctx | None = None) -> bool:
    """No proper summand projection of the target stays left almost split."""
    ctx = _ctx or _Ctx(universe)
    if summands is None:
        summands = decompose_with_maps(i_map.target)
    if len(summands) <= 1:
        return True
    for size in range(1, len(summands)):
        for subset in itertools.combinations(range(len(summands)), size):
            parts = [summands[k] for k in subset]
            sub, proj = _sum_with_projection(i_map.target, parts)
            restricted = compose(proj, i_map)
            if is_left_almost_split(universe, restricted, _ctx=ctx):
                return False
    return True


def is_minimal(universe: Universe, m: ChainMap, side: str) -> bool:
    """Minimality of an almost split map on the named side."""
    if side == "right":
        return is_right_minimal(universe, m)
    if side == "left":
        return is_left_minimal(universe, m)
    raise ValueError("side must be 'left' or 'right'")


def _sum_with_projection(whole: Complex, parts):
    from .complexes import direct_sum_many

    alg = whole.alg
    pieces = [w for (w, _, _) in parts]
    sub = direct_sum_many(pieces)
    comps = []
    for i in range(whole.window):
        m = [[alg.zero_element(tv, sv) for sv in whole.cells[i]] for tv in sub.cells[i]]
        off = 0
        for (w, _, proj) in parts:
            for r in range(len(w.cells[i])):
                for c in range(len(whole.cells[i])):
                    m[off + r][c] = proj.comps[i][r][c]
            off += len(w.cells[i])
        comps.append(m)
    return sub, ChainMap(whole, sub, comps, check=False)


def _sum_with_inclusion(whole: Complex, parts):
    from .complexes import direct_sum_many

    alg = whole.alg
    pieces = [w for (w, _, _) in parts]
    sub = direct_sum_many(pieces)
    comps = []
    for i in range(whole.window):
        m = [[alg.zero_element(tv, sv) for sv in sub.cells[i]] for tv in whole.cells[i]]
        off = 0
        for (w, incl, _) in parts:
            for c in range(len(w.cells[i])):
                for r in range(len(whole.cells[i])):
                    m[r][off + c] = incl.comps[i][r][c]
            off += len(w.cells[i])
        comps.append(m)
    return sub, ChainMap(sub, whole, comps, check=False)


# -- component shapes of irreducible morphisms -----------------------------------


@dataclass
class ComponentShape:
    kind: str                 # all-sections | all-retractions | split-at
    split_index: int | None = None


def classify_irreducible_components(f: ChainMap) -> ComponentShape:
    """Check the section/retraction component shape of an irreducible morphism.

    Raises ShapeViolation when no admissible shape fits (which would signal a
    bug in upstream irreducibility detection), or when the input is split.
    """
    alg = f.source.alg
    n = f.source.window
    if f.is_isomorphism():
        raise ShapeViolation("identity-like input: split morphisms are not irreducible")
    sec, ret = [], []
    for i in range(n):
        src, tgt = f.source.cells[i], f.target.cells[i]
        sec.append(_is_section_component(alg, f.comps[i], tgt, src))
        ret.append(_is_retraction_component(alg, f.comps[i], tgt, src))
    if all(sec):
        return ComponentShape("all-sections")
    if all(ret):
        return ComponentShape("all-retractions")
    neither = [i for i in range(n) if not sec[i] and not ret[i]]
    if len(neither) != 1:
        raise ShapeViolation(f"components neither section nor retraction at {neither}")
    i0 = neither[0]
    if not all(sec[j] for j in range(i0 + 1, n)):
        raise ShapeViolation("a component after the split index is not a section")
    if not all(ret[j] for j in range(i0)):
        raise ShapeViolation("a component before the split index is not a retraction")
    if _in_rad_square(f.comps[i0]):
        raise ShapeViolation("the split component is not irreducible in proj")
    return ComponentShape("split-at", i0 + 1)


def _is_section_component(alg, mat, tgt_cell, src_cell) -> bool:
    f = alg.field
    for v in set(src_cell):
        cols_i = [j for j, w in enumerate(src_cell) if w == v]
        rows_i = [i for i, w in enumerate(tgt_cell) if w == v]
        blk = [[mat[i][j].unit_coeff() for j in cols_i] for i in rows_i]
        if rank(f, blk, len(cols_i)) != len(cols_i):
            return False
    return True


def _is_retraction_component(alg, mat, tgt_cell, src_cell) -> bool:
    f = alg.field
    for v in set(tgt_cell):
        cols_i = [j for j, w in enumerate(src_cell) if w == v]
        rows_i = [i for i, w in enumerate(tgt_cell) if w == v]
        blk = [[mat[j][i].unit_coeff() for j in rows_i] for i in cols_i]
        if rank(f, blk, len(rows_i)) != len(rows_i):
            return False
    return True


def _in_rad_square(mat) -> bool:
    """All entries supported on paths of length >= 2."""
    for row in mat:
        for e in row:
            for p in e.coeffs:
                if len(p) <= 1:
                    return False
    return True


# -- the derived subquiver and its translate windows ------------------------------


@dataclass
class GammaBar:
    quiver: ARQuiver
    vertices: list[int]          # universe indices kept
    arrows: dict                 # (i, j) -> multiplicity, within kept vertices
    anchors: list[int]
    tau: dict

    def vertex_count(self) -> int:
        return len(self.vertices)


def gamma_bar(q: ARQuiver) -> GammaBar:
    """Remove classes that are both E_n-projective and E_n-injective, then take
    the component of a doubly non-extendable class.

    For windows n >= 2 the removed classes are exactly the contractible
    J-types; at window 1 every stalk is both, which is the semisimple
    degenerate case.
    """
    kept = [i for i in range(q.class_count())
            if not (q.en_projective[i] and q.en_injective[i])]
    if not kept:
        raise EtaZero("every class is projective-injective; "
                      "the subquiver construction needs eta >= 1")
    kept_set = set(kept)
    arrows = {(i, j): m for (i, j), m in q.arrows.items()
              if i in kept_set and j in kept_set}
    anchors = [i for i in kept
               if not can_extend_left(q.universe.representatives[i])
               and not can_extend_right(q.universe.representatives[i])]
    if not anchors:
        raise NoAnchorFound("no class extends in neither direction")
    adj: dict[int, set[int]] = {i: set() for i in kept}
    for (i, j) in arrows:
        adj[i].add(j)
        adj[j].add(i)
    comp_of = {}
    for root in kept:
        if root in comp_of:
            continue
        stack = [root]
        comp_of[root] = root
        while stack:
            u = stack.pop()
            for v2 in adj[u]:
                if v2 not in comp_of:
                    comp_of[v2] = root
                    stack.append(v2)
    anchor_comps = {comp_of[a] for a in anchors}
    if len(anchor_comps) > 1:
        raise AmbiguousAnchor(
            f"non-extendable classes sit in {len(anchor_comps)} components: "
            f"{sorted(anchor_comps)}")
    root = anchor_comps.pop()
    vertices = sorted(i for i in kept if comp_of[i] == root)
    vset = set(vertices)
    arrows = {(i, j): m for (i, j), m in arrows.items() if i in vset and j in vset}
    tau = {z: x for z, x in q.tau.items() if z in vset and x in vset}
    return GammaBar(q, vertices, arrows, anchors, tau)


@dataclass
class DerivedWindow:
    gb: GammaBar
    t_min: int
    t_max: int
    vertices: list            # (universe idx, t)
    arrows: list              # ((idx, t), (idx2, t2), multiplicity)
    shift_pairs: list         # (idx, idx2) with rep[idx2] = rep[idx] shifted by +1
    notes: list


def derived_window(gb: GammaBar, t_min: int, t_max: int) -> DerivedWindow:
    """Translates of Gamma-bar with connecting arrows between consecutive copies.

    The object identified with (c, t) in the next copy is c shifted one cell
    to the right; for each such pair (c, c') in Gamma-bar, every arrow
    c' -> V contributes a connecting arrow (c, t) -> (V, t+1).  Boundaries
    with no derivable connecting arrow are flagged in notes, never invented.
    """
    q = gb.quiver
    reps = q.universe.representatives
    n = q.window
    vertices = [(i, t) for t in range(t_min, t_max + 1) for i in gb.vertices]
    arrows = []
    for t in range(t_min, t_max + 1):
        for (i, j), m in gb.arrows.items():
            arrows.append(((i, t), (j, t), m))
    shift_pairs = []
    for i in gb.vertices:
        rep = reps[i]
        sup = rep.support()
        if sup is None or sup[1] >= n:
            continue
        shifted = shift_window(rep, 1, n)
        j = q.universe.find(shifted)
        if j is not None and j in set(gb.vertices):
            shift_pairs.append((i, j))
    notes = []
    connecting = 0
    for t in range(t_min, t_max):
        for (c, cp) in shift_pairs:
            for (i, j), m in gb.arrows.items():
                if i == cp:
                    arrows.append(((c, t), (j, t + 1), m))
                    connecting += 1
    if t_max > t_min and not connecting:
        notes.append("no derivable connecting arrows between consecutive translates")
    return DerivedWindow(gb, t_min, t_max, vertices, arrows, shift_pairs, notes)


# -- cross-window stability checkers ----------------------------------------------


@dataclass
class WindowStabilityReport:
    window_high: int
    window_low: int
    violations: list
    checked: dict

    def ok(self) -> bool:
        return not self.violations


def _conflation_triple_key(universe: Universe, conf: Conflation):
    return (universe.find(conf.x), tuple(sorted(conf.y_summands)), universe.find(conf.z))


def check_window_stability(alg, n: int, eta: int, config: EnumConfig | None = None,
                           quivers: dict | None = None) -> WindowStabilityReport:
    """Cross-window almost-split comparison between windows n and eta+1.

    (1) every certified conflation at window n drops (first or last) to the
        certified conflation list at eta+1; (2) every conflation at eta+1
        embeds, per extendability, to a certified conflation at window n;
    (3) no class at a window past eta+1 has both boundary cells nonzero.
    """
    if eta < 1:
        raise EtaZero("cross-window stability assumes eta >= 1")
    if n < eta + 2:
        raise ValueError("check needs n >= eta + 2")
    quivers = quivers if quivers is not None else {}
    if n not in quivers:
        quivers[n] = build_ar_quiver(alg, n, config)
    if eta + 1 not in quivers:
        quivers[eta + 1] = build_ar_quiver(alg, eta + 1, config)
    q_hi, q_lo = quivers[n], quivers[eta + 1]
    violations = []
    checked = {"boundary": 0, "drop": 0, "embed": 0}
    # (3) boundary-cell vanishing at every window between eta+2 and n
    for m in range(eta + 2, n + 1):
        qm = quivers.get(m)
        uni = qm.universe if qm else enumerate_indecomposables(alg, m, config)
        for rep, is_j in zip(uni.representatives, uni.j_flags):
            checked["boundary"] += 1
            if not is_j and rep.cells[0] and rep.cells[-1]:
                violations.append(("boundary", m, rep.label()))
    # (1) drop every window-n conflation down to eta+1
    lo_keys = {_conflation_triple_key(q_lo.universe, c): z
               for z, c in q_lo.conflations.items()}
    for z_idx, conf in q_hi.conflations.items():
        checked["drop"] += 1
        triple = (conf.x, conf.y, conf.z)
        ok = True
        for step in range(n - (eta + 1)):
            if all(not t.cells[0] for t in triple):
                triple = tuple(drop_first(t) for t in triple)
            elif all(not t.cells[-1] for t in triple):
                triple = tuple(drop_last(t) for t in triple)
            else:
                violations.append(("drop-stuck", n - step, conf.z.label()))
                ok = False
                break
        if not ok:
            continue
        key = (q_lo.universe.find(triple[0]),
               tuple(sorted(q_lo.universe.find(w)
                            for (w, _, _) in decompose_with_maps(triple[1]))),
               q_lo.universe.find(triple[2]))
        if None in (key[0], key[2]) or None in key[1] or key not in lo_keys:
            violations.append(("drop-unmatched", z_idx, conf.z.label()))
    # (2) embed every eta+1 conflation up to window n
    hi_keys = {_conflation_triple_key(q_hi.universe, c): z
               for z, c in q_hi.conflations.items()}
    for z_idx, conf in q_lo.conflations.items():
        checked["embed"] += 1
        triple = (conf.x, conf.y, conf.z)
        for step in range(n - (eta + 1)):
            if not can_extend_left(triple[0]):
                triple = tuple(embed_left(t) for t in triple)
            else:
                triple = tuple(embed_right(t) for t in triple)
        key = (q_hi.universe.find(triple[0]),
               tuple(sorted(q_hi.universe.find(w)
                            for (w, _, _) in decompose_with_maps(triple[1]))),
               q_hi.universe.find(triple[2]))
        if None in (key[0], key[2]) or None in key[1] or key not in hi_keys:
            violations.append(("embed-unmatched", z_idx, conf.z.label()))
    return WindowStabilityReport(n, eta + 1, violations, checked)
