"""Windowed complexes of projectives and the functors between windows.

A ``Complex`` in window n keeps, per position 1..n, the list of vertices of
its indecomposable projective summands, and per adjacent pair a matrix of
``AlgElement`` differential entries.  Positions are 1-based in the public
vocabulary and 0-based in the stored tuples.

The differential entry in row r, column c of ``diffs[i]`` is an element of
``Hom(P_{cells[i][c]}, P_{cells[i+1][r]})``, i.e. a path combination from
``cells[i+1][r]`` to ``cells[i][c]``.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import AlgElement, FinModule, MonomialAlgebra, ModuleMap, hom_module, \
    _cokernel_pair
from .errors import (
    NotAChainMap,
    NotAnExtension,
    PositionOutOfRange,
    ShapeMismatch,
    SupportOverflow,
    WindowMismatch,
)
from .linalg import rank


# -- AlgElement matrices -------------------------------------------------


def mat_zero(alg, tgt_cell, src_cell):
    return [[alg.zero_element(tv, sv) for sv in src_cell] for tv in tgt_cell]


def mat_identity(alg, cell):
    return [[alg.unit(v) if i == j else alg.zero_element(v, w)
             for j, w in enumerate(cell)] for i, v in enumerate(cell)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_mul(alg, a, b, tgt_cell, mid_cell, src_cell):
    """Composite a . b with explicit cells, so empty matrices keep their type."""
    out = []
    for r, tv in enumerate(tgt_cell):
        out_row = []
        for c, sv in enumerate(src_cell):
            acc = alg.zero_element(tv, sv)
            for k in range(len(mid_cell)):
                acc = acc + alg.multiply(a[r][k], b[k][c])
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def _freeze(mat):
    return tuple(tuple(row) for row in mat)


class Complex:
    """An object of C_n(proj Lambda)."""

    __slots__ = ("alg", "cells", "diffs")

    def __init__(self, alg: MonomialAlgebra, cells, diffs, check: bool = True):
        self.alg = alg
        self.cells = tuple(tuple(c) for c in cells)
        self.diffs = tuple(_freeze(m) for m in diffs)
        if check:
            self._validate()

    def _validate(self):
        n = len(self.cells)
        if n < 1:
            raise ShapeMismatch("window must be >= 1")
        if len(self.diffs) != n - 1:
            raise ShapeMismatch("diffs length must be window - 1")
        vs = set(self.alg.quiver.vertices)
        for c in self.cells:
            for v in c:
                if v not in vs:
                    raise ShapeMismatch(f"unknown vertex {v} in a cell")
        for i, m in enumerate(self.diffs):
            tgt, src = self.cells[i + 1], self.cells[i]
            if len(m) != len(tgt) or any(len(row) != len(src) for row in m):
                raise ShapeMismatch(f"diff {i + 1}: matrix shape mismatch")
            for r, row in enumerate(m):
                for c, entry in enumerate(row):
                    if (entry.start, entry.end) != (tgt[r], src[c]):
                        raise ShapeMismatch(
                            f"diff {i + 1} entry ({r},{c}) typed {entry.start}->{entry.end}, "
                            f"expected {tgt[r]}->{src[c]}")
        for i in range(len(self.diffs) - 1):
            prod = mat_mul(self.alg, self.diffs[i + 1], self.diffs[i],
                           self.cells[i + 2], self.cells[i + 1], self.cells[i])
            if not mat_is_zero(prod):
                raise ShapeMismatch(f"d^{i + 2} d^{i + 1} != 0")

    @property
    def window(self) -> int:
        return len(self.cells)

    def support(self):
        """1-based (first, last) nonzero positions, or None for the zero complex."""
        nz = [i + 1 for i, c in enumerate(self.cells) if c]
        return (nz[0], nz[-1]) if nz else None

    def is_zero(self) -> bool:
        return self.support() is None

    def total_summands(self) -> int:
        return sum(len(c) for c in self.cells)

    def signature(self):
        return tuple(tuple(sorted(c)) for c in self.cells)

    def label(self) -> str:
        return "->".join("0" if not c else "+".join(f"P{v}" for v in sorted(c))
                         for c in self.cells)

    def witness_label(self) -> str:
        """Support cells only, spelled `P6 -> P5 -> ...`."""
        sup = self.support()
        if sup is None:
            return "0"
        return " -> ".join("+".join(f"P{v}" for v in sorted(c))
                           for c in self.cells[sup[0] - 1:sup[1]])

    def serial_key(self):
        return (self.window, self.signature(),
                tuple(tuple(e.key() for row in m for e in row) for m in self.diffs))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Complex) and self.alg is other.alg
                and self.cells == other.cells and self.diffs == other.diffs)

    def __repr__(self):
        return f"Complex[{self.label()}]"


class ChainMap:
    """A morphism of complexes with equal window."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source: Complex, target: Complex, comps, check: bool = True):
        if source.window != target.window:
            raise WindowMismatch("chain map between different windows")
        self.source = source
        self.target = target
        self.comps = tuple(_freeze(m) for m in comps)
        if check:
            self._validate()

    def _validate(self):
        alg = self.source.alg
        n = self.source.window
        if len(self.comps) != n:
            raise ShapeMismatch("one component per position required")
        for i, m in enumerate(self.comps):
            tgt, src = self.target.cells[i], self.source.cells[i]
            if len(m) != len(tgt) or any(len(row) != len(src) for row in m):
                raise ShapeMismatch(f"component {i + 1}: shape mismatch")
            for r, row in enumerate(m):
                for c, entry in enumerate(row):
                    if (entry.start, entry.end) != (tgt[r], src[c]):
                        raise ShapeMismatch(f"component {i + 1}: entry typing mismatch")
        for i in range(n - 1):
            lhs = mat_mul(alg, self.target.diffs[i], self.comps[i],
                          self.target.cells[i + 1], self.target.cells[i], self.source.cells[i])
            rhs = mat_mul(alg, self.comps[i + 1], self.source.diffs[i],
                          self.target.cells[i + 1], self.source.cells[i + 1], self.source.cells[i])
            if not mat_is_zero(mat_add(lhs, mat_neg(rhs))):
                raise NotAChainMap(f"d f != f d at position {i + 1}")

    @staticmethod
    def identity(x: Complex) -> "ChainMap":
        return ChainMap(x, x, [mat_identity(x.alg, c) for c in x.cells], check=False)

    def is_zero(self) -> bool:
        return all(e.is_zero() for m in self.comps for row in m for e in row)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        assert self.source is other.source and self.target is other.target
        return ChainMap(self.source, self.target,
                        [mat_add([list(r) for r in a], [list(r) for r in b])
                         for a, b in zip(self.comps, other.comps)], check=False)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target,
                        [[[e.scale(c) for e in row] for row in m] for m in self.comps],
                        check=False)

    def is_isomorphism(self) -> bool:
        """All components invertible: square scalar blocks per vertex, all regular.

        A map of projective sums is invertible iff it is invertible modulo the
        radical, i.e. the per-vertex matrices of trivial-path coefficients are
        square and regular.
        """
        for i in range(self.source.window):
            src, tgt = self.source.cells[i], self.target.cells[i]
            if sorted(src) != sorted(tgt):
                return False
            if not _scalar_blocks_invertible(self.source.alg, self.comps[i], tgt, src):
                return False
        return True

    def __repr__(self):
        return f"ChainMap[{self.source.label()} -> {self.target.label()}]"


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """g after f."""
    if f.target.cells != g.source.cells or f.target.diffs != g.source.diffs:
        raise ShapeMismatch("composition: middle complexes differ")
    alg = f.source.alg
    comps = [mat_mul(alg, g.comps[i], f.comps[i],
                     g.target.cells[i], g.source.cells[i], f.source.cells[i])
             for i in range(f.source.window)]
    return ChainMap(f.source, g.target, comps, check=False)


def _scalar_blocks_invertible(alg, mat, tgt_cell, src_cell) -> bool:
    f = alg.field
    for v in set(tgt_cell) | set(src_cell):
        rows_i = [i for i, w in enumerate(tgt_cell) if w == v]
        cols_i = [j for j, w in enumerate(src_cell) if w == v]
        if len(rows_i) != len(cols_i):
            return False
        blk = [[mat[i][j].unit_coeff() for j in cols_i] for i in rows_i]
        if rank(f, blk, len(cols_i)) != len(cols_i):
            return False
    return True


# -- constructors ----------------------------------------------------------


def zero_complex(alg: MonomialAlgebra, n: int) -> Complex:
    return Complex(alg, [() for _ in range(n)],
                   [[] for _ in range(n - 1)], check=False)


def make_stalk(alg: MonomialAlgebra, v: int, pos: int, n: int) -> Complex:
    """Stalk P_v at a position: pos 1 is S(P), pos n is T(P)."""
    if not 1 <= pos <= n:
        raise PositionOutOfRange(f"position {pos} not in 1..{n}")
    cells = [(v,) if i + 1 == pos else () for i in range(n)]
    diffs = [mat_zero(alg, cells[i + 1], cells[i]) for i in range(n - 1)]
    return Complex(alg, cells, diffs, check=False)


def make_J(alg: MonomialAlgebra, v: int, k: int, n: int) -> Complex:
    """The contractible two-cell complex P_v --id--> P_v at positions k, k+1."""
    if not 1 <= k <= n - 1:
        raise PositionOutOfRange(f"J position {k} not in 1..{n - 1}")
    cells = [(v,) if i + 1 in (k, k + 1) else () for i in range(n)]
    diffs = []
    for i in range(n - 1):
        if i + 1 == k:
            diffs.append([[alg.unit(v)]])
        else:
            diffs.append(mat_zero(alg, cells[i + 1], cells[i]))
    return Complex(alg, cells, diffs, check=False)


# -- the four window functors ------------------------------------------------


def embed_left(x: Complex) -> Complex:
    """Window n -> n+1, inserting an empty first cell."""
    cells = [()] + list(x.cells)
    diffs = [mat_zero(x.alg, cells[1], cells[0])] + [list(map(list, m)) for m in x.diffs]
    return Complex(x.alg, cells, diffs, check=False)


def embed_right(x: Complex) -> Complex:
    """Window n -> n+1, appending an empty last cell."""
    cells = list(x.cells) + [()]
    diffs = [list(map(list, m)) for m in x.diffs] + [mat_zero(x.alg, (), x.cells[-1])]
    return Complex(x.alg, cells, diffs, check=False)


def drop_first(x: Complex) -> Complex:
    """Window n+1 -> n, truncating the first cell (total)."""
    if x.window < 2:
        raise WindowMismatch("cannot drop below window 1")
    return Complex(x.alg, x.cells[1:], [list(map(list, m)) for m in x.diffs[1:]], check=False)


def drop_last(x: Complex) -> Complex:
    """Window n+1 -> n, truncating the last cell (total)."""
    if x.window < 2:
        raise WindowMismatch("cannot drop below window 1")
    return Complex(x.alg, x.cells[:-1], [list(map(list, m)) for m in x.diffs[:-1]], check=False)


def embed_left_map(f: ChainMap) -> ChainMap:
    return ChainMap(embed_left(f.source), embed_left(f.target),
                    [mat_zero(f.source.alg, (), ())] + [list(map(list, m)) for m in f.comps],
                    check=False)


def embed_right_map(f: ChainMap) -> ChainMap:
    return ChainMap(embed_right(f.source), embed_right(f.target),
                    [list(map(list, m)) for m in f.comps] + [mat_zero(f.source.alg, (), ())],
                    check=False)


def drop_first_map(f: ChainMap) -> ChainMap:
    return ChainMap(drop_first(f.source), drop_first(f.target),
                    [list(map(list, m)) for m in f.comps[1:]], check=False)


def drop_last_map(f: ChainMap) -> ChainMap:
    return ChainMap(drop_last(f.source), drop_last(f.target),
                    [list(map(list, m)) for m in f.comps[:-1]], check=False)


def shift_window(x: Complex, p: int, new_window: int) -> Complex:
    """Relocate the support by +p inside a window of size new_window.

    A pure relocation: differentials are copied unchanged (the sign-free
    convention; any global sign yields an isomorphic complex).
    """
    sup = x.support()
    if sup is None:
        return zero_complex(x.alg, new_window)
    lo, hi = sup
    if lo + p < 1 or hi + p > new_window:
        raise SupportOverflow(f"support {sup} shifted by {p} leaves 1..{new_window}")
    cells = [() for _ in range(new_window)]
    for i, c in enumerate(x.cells):
        if c:
            cells[i + p] = c
    diffs = [mat_zero(x.alg, cells[i + 1], cells[i]) for i in range(new_window - 1)]
    for i in range(x.window - 1):
        if x.cells[i] and x.cells[i + 1]:
            diffs[i + p] = [list(r) for r in x.diffs[i]]
    return Complex(x.alg, cells, diffs, check=False)


def direct_sum(x: Complex, y: Complex) -> Complex:
    """Cellwise concatenation with block-diagonal differentials."""
    if x.window != y.window:
        raise WindowMismatch("direct sum needs equal windows")
    alg = x.alg
    cells = [x.cells[i] + y.cells[i] for i in range(x.window)]
    diffs = []
    for i in range(x.window - 1):
        m = mat_zero(alg, cells[i + 1], cells[i])
        for r in range(len(x.cells[i + 1])):
            for c in range(len(x.cells[i])):
                m[r][c] = x.diffs[i][r][c]
        ro, co = len(x.cells[i + 1]), len(x.cells[i])
        for r in range(len(y.cells[i + 1])):
            for c in range(len(y.cells[i])):
                m[ro + r][co + c] = y.diffs[i][r][c]
        diffs.append(m)
    return Complex(alg, cells, diffs, check=False)


def direct_sum_many(parts: Sequence[Complex]) -> Complex:
    acc = parts[0]
    for p in parts[1:]:
        acc = direct_sum(acc, p)
    return acc


def cone(f: ChainMap) -> Complex:
    """Mapping cone in window n+1: cell j = X^j (+) Y^{j-1}, d = [[-dX, 0], [f, dY]]."""
    x, y = f.source, f.target
    alg = x.alg
    n = x.window
    cells = []
    for j in range(n + 1):
        xs = x.cells[j] if j < n else ()
        ys = y.cells[j - 1] if j >= 1 else ()
        cells.append(xs + ys)
    diffs = []
    for j in range(n):
        m = mat_zero(alg, cells[j + 1], cells[j])
        x_src = len(x.cells[j]) if j < n else 0
        x_tgt = len(x.cells[j + 1]) if j + 1 < n else 0
        # -d_X block
        if j + 1 < n:
            for r in range(x_tgt):
                for c in range(x_src):
                    m[r][c] = -x.diffs[j][r][c]
        # f block: X^j -> Y^j
        for r in range(len(y.cells[j])):
            for c in range(x_src):
                m[x_tgt + r][c] = f.comps[j][r][c]
        # d_Y block: Y^{j-1} -> Y^j
        if j >= 1:
            for r in range(len(y.cells[j])):
                for c in range(len(y.cells[j - 1])):
                    m[x_tgt + r][x_src + c] = y.diffs[j - 1][r][c]
        diffs.append(m)
    return Complex(alg, cells, diffs)


def canonical_sort(x: Complex) -> Complex:
    """Stable-sort every cell by vertex id, permuting differentials to match."""
    perms = [sorted(range(len(c)), key=lambda i: (c[i], i)) for c in x.cells]
    cells = [tuple(c[i] for i in perm) for c, perm in zip(x.cells, perms)]
    diffs = []
    for i in range(x.window - 1):
        pr, pc = perms[i + 1], perms[i]
        diffs.append([[x.diffs[i][r][c] for c in pc] for r in pr])
    return Complex(x.alg, cells, diffs, check=False)


# -- homotopy-minimal stripping ------------------------------------------------


def strip_contractible(x: Complex) -> Complex:
    """Remove all contractible (J-type) direct summands.

    Repeatedly locates a differential entry that is a unit of some
    ``e_v Lambda e_v``, clears its row and column by a base change, and
    deletes the matched pair of summands.  The result is the homotopy-minimal
    representative, unique up to isomorphism.
    """
    alg = x.alg
    cells = [list(c) for c in x.cells]
    diffs = [[list(row) for row in m] for m in x.diffs]

    def find_unit():
        for i, m in enumerate(diffs):
            for r, row in enumerate(m):
                for c, e in enumerate(row):
                    if e.start == e.end and e.unit_coeff():
                        return i, r, c
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        i, r, c = hit
        u = diffs[i][r][c]
        uinv = alg.invert_local(u)
        m = diffs[i]
        # row operations on cell i+1: clear column c below/above the pivot
        for r2 in range(len(m)):
            if r2 == r or m[r2][c].is_zero():
                continue
            w = alg.multiply(m[r2][c], uinv)
            for c2 in range(len(m[0])):
                m[r2][c2] = m[r2][c2] - alg.multiply(w, m[r][c2])
            if i + 1 < len(diffs):
                nxt = diffs[i + 1]
                for s in range(len(nxt)):
                    nxt[s][r] = nxt[s][r] + alg.multiply(nxt[s][r2], w)
        # column operations on cell i: clear row r
        for c2 in range(len(m[0])):
            if c2 == c or m[r][c2].is_zero():
                continue
            w = alg.multiply(uinv, m[r][c2])
            for r2 in range(len(m)):
                m[r2][c2] = m[r2][c2] - alg.multiply(m[r2][c], w)
            if i - 1 >= 0:
                prv = diffs[i - 1]
                for t in range(len(prv[0]) if prv else 0):
                    prv[c][t] = prv[c][t] + alg.multiply(w, prv[c2][t])
        # delete summand c of cell i and summand r of cell i+1
        del cells[i][c]
        for row in diffs[i]:
            del row[c]
        if i - 1 >= 0:
            del diffs[i - 1][c]
        del cells[i + 1][r]
        del diffs[i][r]
        if i + 1 < len(diffs):
            for row in diffs[i + 1]:
                del row[r]
    return Complex(alg, cells, diffs)


def length(x: Complex) -> int:
    """Support width of the homotopy-minimal representative; 0 for zero."""
    sup = strip_contractible(x).support()
    if sup is None:
        return 0
    return sup[1] - sup[0]


# -- module realisations --------------------------------------------------------


def cell_module(x: Complex, pos: int) -> FinModule:
    """The cell at a 1-based position as a FinModule (direct sum of projectives)."""
    alg = x.alg
    parts = [alg.projective_as_module(v) for v in x.cells[pos - 1]]
    if not parts:
        return FinModule(alg, {}, {aid: [] for aid, _, _ in alg.quiver.arrows},
                         note="0", check=False)
    return FinModule.direct_sum(alg, parts)


def realize_entry_blocks(alg, mat, tgt_cell, src_cell, w):
    """Scalar matrix of an AlgElement matrix at vertex w, in the path bases."""
    f = alg.field
    src_dims = [len(alg.paths_between(v, w)) for v in src_cell]
    tgt_dims = [len(alg.paths_between(v, w)) for v in tgt_cell]
    rows = sum(tgt_dims)
    cols = sum(src_dims)
    out = [[f.zero] * cols for _ in range(rows)]
    r_off = 0
    for r, tv in enumerate(tgt_cell):
        c_off = 0
        for c, sv in enumerate(src_cell):
            blk = alg.lmul_block(mat[r][c], w)
            for i in range(tgt_dims[r]):
                for j in range(src_dims[c]):
                    if blk[i][j]:
                        out[r_off + i][c_off + j] = blk[i][j]
            c_off += src_dims[c]
        r_off += tgt_dims[r]
    return out


def realize_diff(x: Complex, i: int) -> ModuleMap:
    """The differential out of 1-based position i as a map of FinModules."""
    src = cell_module(x, i)
    tgt = cell_module(x, i + 1)
    mats = {w: realize_entry_blocks(x.alg, x.diffs[i - 1], x.cells[i], x.cells[i - 1], w)
            for w in x.alg.quiver.vertices}
    return ModuleMap(src, tgt, mats, check=False)


# -- extendability of a complex past its window ---------------------------------


def can_extend_left(x: Complex) -> bool:
    """True iff the first differential is not a monomorphism of modules.

    A complex with empty first cell cannot be extended (the new differential
    would have to be a nonzero map into the zero module).
    """
    if not x.cells[0]:
        return False
    alg = x.alg
    f = alg.field
    if x.window == 1:
        return True  # d^1 is the map to 0; mono only if the cell were zero
    for w in alg.quiver.vertices:
        m = realize_entry_blocks(alg, x.diffs[0], x.cells[1], x.cells[0], w)
        cols = sum(len(alg.paths_between(v, w)) for v in x.cells[0])
        if cols and rank(f, m, cols) != cols:
            return True
    return False


def can_extend_right(x: Complex) -> bool:
    """True iff Hom(coker d^{n-1}, Lambda) is nonzero."""
    if not x.cells[-1]:
        return False
    alg = x.alg
    if x.window == 1:
        coker = cell_module(x, 1)
    else:
        _, proj = _cokernel_pair(realize_diff(x, x.window - 1))
        coker = proj.target
    if coker.is_zero():
        return False
    return hom_module(coker, alg.regular_module()) > 0


def extend_left(x: Complex, v: int, d0: Sequence[AlgElement] | AlgElement) -> Complex:
    """Left extension: window grows by one, with new first cell P_v."""
    col = [d0] if isinstance(d0, AlgElement) else list(d0)
    if len(col) != len(x.cells[0]):
        raise NotAnExtension("d0 must have one entry per first-cell summand")
    for r, e in enumerate(col):
        if (e.start, e.end) != (x.cells[0][r], v):
            raise NotAnExtension(f"entry {r} typed {e.start}->{e.end}, "
                                 f"expected {x.cells[0][r]}->{v}")
    if all(e.is_zero() for e in col):
        raise NotAnExtension("extension morphism must be nonzero")
    mat = [[e] for e in col]
    if x.window >= 2:
        comp = mat_mul(x.alg, x.diffs[0], mat, x.cells[1], x.cells[0], (v,))
        if not mat_is_zero(comp):
            raise NotAnExtension("d^1 . d^0 != 0")
    cells = [(v,)] + list(x.cells)
    diffs = [mat] + [list(map(list, m)) for m in x.diffs]
    return Complex(x.alg, cells, diffs)


def extend_right(x: Complex, v: int, dm: Sequence[AlgElement] | AlgElement) -> Complex:
    """Right extension: window grows by one, with new last cell P_v."""
    row = [dm] if isinstance(dm, AlgElement) else list(dm)
    if len(row) != len(x.cells[-1]):
        raise NotAnExtension("dm must have one entry per last-cell summand")
    for c, e in enumerate(row):
        if (e.start, e.end) != (v, x.cells[-1][c]):
            raise NotAnExtension(f"entry {c} typed {e.start}->{e.end}, "
                                 f"expected {v}->{x.cells[-1][c]}")
    if all(e.is_zero() for e in row):
        raise NotAnExtension("extension morphism must be nonzero")
    mat = [row]
    if x.window >= 2:
        comp = mat_mul(x.alg, mat, x.diffs[-1], (v,), x.cells[-1], x.cells[-2])
        if not mat_is_zero(comp):
            raise NotAnExtension("d^m . d^{n-1} != 0")
    cells = list(x.cells) + [(v,)]
    diffs = [list(map(list, m)) for m in x.diffs] + [mat]
    return Complex(x.alg, cells, diffs)
