"""Linear algebra on morphism spaces of windowed complexes.

Chain-map spaces are solved exactly in path coordinates: one scalar unknown
per admissible path per matrix entry, with the chain equations
``d_Y f = f d_X`` expanded path by path.  Everything downstream
(endomorphism radicals, isomorphism tests, Krull-Schmidt splitting, degree-1
extension classes) reduces to these coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgElement
from .complexes import (
    ChainMap,
    Complex,
    canonical_sort,
    compose,
    mat_zero,
)
from .errors import (
    DecompositionFailure,
    IncompleteUniverse,
    InvalidClass,
    SearchSpaceTooLarge,
    ShapeMismatch,
    WindowMismatch,
    ZeroComplex,
)
from .linalg import (
    SpanBasis,
    minimal_polynomial,
    nullspace,
    poly_divmod,
    poly_mul,
    poly_trim,
    poly_xgcd,
    rational_roots,
    rref,
    solve,
)


class _VarLayout:
    """Scalar coordinates for a family of AlgElement matrices.

    ``slots[k] = (i, r, c, paths)`` describes the entry matrices: component i,
    row r, column c, with one unknown per admissible path.
    """

    def __init__(self, alg, shapes):
        # shapes: list of (tgt_cell, src_cell) per component
        self.alg = alg
        self.shapes = shapes
        self.slots = []
        self.offset = {}
        n = 0
        for i, (tgt, src) in enumerate(shapes):
            for r, tv in enumerate(tgt):
                for c, sv in enumerate(src):
                    paths = alg.paths_between(tv, sv)
                    if paths:
                        self.offset[(i, r, c)] = n
                        self.slots.append((i, r, c, paths))
                        n += len(paths)
        self.nvars = n
        self._path_index = {}
        for i, r, c, paths in self.slots:
            for k, p in enumerate(paths):
                self._path_index[(i, r, c, p)] = self.offset[(i, r, c)] + k

    def var(self, i, r, c, path):
        return self._path_index.get((i, r, c, path))

    def vectorize(self, mats) -> list:
        f = self.alg.field
        vec = [f.zero] * self.nvars
        for i, (tgt, src) in enumerate(self.shapes):
            for r in range(len(tgt)):
                for c in range(len(src)):
                    for p, coeff in mats[i][r][c].coeffs.items():
                        idx = self.var(i, r, c, p)
                        if idx is None:
                            raise ShapeMismatch("entry outside the layout")
                        vec[idx] = vec[idx] + coeff
        return vec

    def materialize(self, vec):
        alg = self.alg
        mats = []
        for i, (tgt, src) in enumerate(self.shapes):
            mats.append([[alg.zero_element(tv, sv) for sv in src] for tv in tgt])
        for (i, r, c, paths) in self.slots:
            off = self.offset[(i, r, c)]
            coeffs = {p: vec[off + k] for k, p in enumerate(paths) if vec[off + k]}
            if coeffs:
                mats[i][r][c] = AlgElement(alg, self.shapes[i][0][r], self.shapes[i][1][c],
                                           coeffs, _checked=True)
        return mats


def _left_mul_rows(alg, known: AlgElement, slot_paths, out_paths_index, out_rows, var_off, sign):
    """Accumulate coefficients of known . (unknown slot) into equation rows."""
    for p, cp in known.coeffs.items():
        for k, q in enumerate(slot_paths):
            pq = alg.mult_path(p, q)
            if pq is None:
                continue
            row = out_rows[out_paths_index[pq]]
            row[var_off + k] = row[var_off + k] + (cp if sign > 0 else -cp)


def _right_mul_rows(alg, slot_paths, known: AlgElement, out_paths_index, out_rows, var_off, sign):
    for k, q in enumerate(slot_paths):
        for p, cp in known.coeffs.items():
            qp = alg.mult_path(q, p)
            if qp is None:
                continue
            row = out_rows[out_paths_index[qp]]
            row[var_off + k] = row[var_off + k] + (cp if sign > 0 else -cp)


@dataclass
class HomSpace:
    """Basis of the chain maps X -> Y, in deterministic echelon order."""

    source: Complex
    target: Complex
    basis: list[ChainMap]
    dimension: int
    _layout: _VarLayout = field(repr=False, default=None)
    _free: list[int] = field(repr=False, default=None)

    def coordinates(self, f: ChainMap) -> list:
        """Coordinates of a chain map in this basis (free-column convention)."""
        vec = self._layout.vectorize(f.comps)
        return [vec[j] for j in self._free]


def hom_basis(x: Complex, y: Complex) -> HomSpace:
    """Solve the chain equations d_Y f = f d_X for all maps x -> y."""
    if x.window != y.window:
        raise WindowMismatch("hom between different windows")
    alg = x.alg
    f = alg.field
    n = x.window
    layout = _VarLayout(alg, [(y.cells[i], x.cells[i]) for i in range(n)])
    if layout.nvars == 0:
        return HomSpace(x, y, [], 0, layout, [])
    rows_by_slot = {}

    def eq_rows(i, r, c):
        # equations live in paths y.cells[i+1][r] -> x.cells[i][c]
        key = (i, r, c)
        if key not in rows_by_slot:
            paths = alg.paths_between(y.cells[i + 1][r], x.cells[i][c])
            idx = {p: k for k, p in enumerate(paths)}
            rows_by_slot[key] = (idx, [[f.zero] * layout.nvars for _ in paths])
        return rows_by_slot[key]

    for i in range(n - 1):
        for r in range(len(y.cells[i + 1])):
            for c in range(len(x.cells[i])):
                idx, rows = eq_rows(i, r, c)
                if not rows:
                    continue
                # + d_Y^i[r][w] * f^i[w][c]
                for w in range(len(y.cells[i])):
                    off = layout.offset.get((i, w, c))
                    if off is None:
                        continue
                    slot_paths = alg.paths_between(y.cells[i][w], x.cells[i][c])
                    _left_mul_rows(alg, y.diffs[i][r][w], slot_paths, idx, rows, off, +1)
                # - f^{i+1}[r][v] * d_X^i[v][c]
                for v in range(len(x.cells[i + 1])):
                    off = layout.offset.get((i + 1, r, v))
                    if off is None:
                        continue
                    slot_paths = alg.paths_between(y.cells[i + 1][r], x.cells[i + 1][v])
                    _right_mul_rows(alg, slot_paths, x.diffs[i][v][c], idx, rows, off, -1)
    all_rows = [row for _, (_, rows) in sorted(rows_by_slot.items()) for row in rows
                if any(row)]
    vecs = nullspace(f, all_rows, layout.nvars) if all_rows else \
        [[f.one if j == k else f.zero for j in range(layout.nvars)]
         for k in range(layout.nvars)]
    free = _free_columns(f, all_rows, layout.nvars)
    maps = [ChainMap(x, y, layout.materialize(v), check=False) for v in vecs]
    return HomSpace(x, y, maps, len(maps), layout, free)


def _free_columns(f, rows, ncols):
    work = [list(r) for r in rows]
    pivots = set(rref(f, work, ncols))
    return [c for c in range(ncols) if c not in pivots]


# -- endomorphism rings, radicals, indecomposability ---------------------------


def _end_data(x: Complex):
    end = hom_basis(x, x)
    coords = end.coordinates
    return end, coords


def end_radical_coords(x: Complex, end: HomSpace | None = None) -> list[list]:
    """Coordinates (in End basis) of a basis of rad End(X).

    Characteristic zero only: the radical is the kernel of the trace form
    ``(a, b) -> tr(L_{ab})`` of the regular representation.
    """
    alg = x.alg
    f = alg.field
    if f.char != 0:
        raise ShapeMismatch("trace-form radical needs characteristic zero")
    if end is None:
        end = hom_basis(x, x)
    m = end.dimension
    if m == 0:
        return []
    basis = end.basis
    # L_c in the End basis, one column per basis element
    def l_trace(c_map):
        tr = f.zero
        for k in range(m):
            col = end.coordinates(compose(c_map, basis[k]))
            tr = tr + col[k]
        return tr

    gram = [[f.zero] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            t = l_trace(compose(basis[i], basis[j]))
            gram[i][j] = t
            gram[j][i] = t
    return nullspace(f, gram, m)


def is_indecomposable(x: Complex, idempotent_cap: int = 1 << 16) -> bool:
    """End(X) local?  Trace-form radical in char 0; idempotent scan over GF(p)."""
    if x.is_zero():
        raise ZeroComplex("the zero complex is not indecomposable")
    end = hom_basis(x, x)
    f = x.alg.field
    if f.char == 0:
        rad = end_radical_coords(x, end)
        return end.dimension - len(rad) == 1
    # finite field: exhaust End(X) for nontrivial idempotents
    m = end.dimension
    if f.char ** m > idempotent_cap:
        raise SearchSpaceTooLarge(f.char ** m)
    if m == 1:
        return True
    ident = ChainMap.identity(x)
    elems = f.elements()
    import itertools
    for combo in itertools.product(elems, repeat=m):
        if not any(combo):
            continue
        e = None
        for c, b in zip(combo, end.basis):
            t = b.scale(c)
            e = t if e is None else e + t
        if e.comps == ident.comps:
            continue
        if compose(e, e).comps == e.comps:
            return False
    return True


def is_isomorphic(x: Complex, y: Complex) -> bool:
    """Exact isomorphism test.

    Fast paths: equal structure, mismatched signatures.  For indecomposable
    inputs the pairing criterion decides: X and Y are isomorphic iff some
    composite of basis homs X -> Y -> X is an automorphism.  Decomposable
    inputs are split and matched summand by summand.
    """
    if x.alg is not y.alg or x.window != y.window:
        return False
    if x.signature() != y.signature():
        return False
    if canonical_sort(x).serial_key() == canonical_sort(y).serial_key():
        return True
    if x.is_zero():
        return True
    xi = is_indecomposable(x)
    yi = is_indecomposable(y)
    if xi != yi:
        return False
    if xi:
        return _iso_indecomposable(x, y)
    dx = decompose(x)
    dy = decompose(y)
    return _multisets_match(dx, dy)


def _iso_indecomposable(x: Complex, y: Complex) -> bool:
    fwd = hom_basis(x, y)
    if fwd.dimension == 0:
        return False
    bwd = hom_basis(y, x)
    if bwd.dimension == 0:
        return False
    for g in bwd.basis:
        for f_ in fwd.basis:
            if compose(g, f_).is_isomorphism():
                return True
    return False


def _multisets_match(dx, dy) -> bool:
    if sum(m for _, m in dx) != sum(m for _, m in dy):
        return False
    remaining = [[w, m] for w, m in dy]
    for w, m in dx:
        hit = False
        for slot in remaining:
            if slot[1] and _iso_indecomposable(w, slot[0]):
                if slot[1] < m:
                    return False
                slot[1] -= m
                hit = True
                break
        if not hit:
            return False
    return all(slot[1] == 0 for slot in remaining)


# -- Krull-Schmidt splitting -----------------------------------------------------


def decompose(x: Complex):
    """Indecomposable summands with multiplicities (Krull-Schmidt)."""
    parts = [w for (w, _, _) in decompose_with_maps(x)]
    out: list[list] = []
    for w in parts:
        for slot in out:
            if _iso_indecomposable(slot[0], w):
                slot[1] += 1
                break
        else:
            out.append([w, 1])
    return [(w, m) for w, m in out]


def decompose_with_maps(x: Complex):
    """List of (summand, inclusion, projection); empty for the zero complex."""
    if x.is_zero():
        return []
    ident = ChainMap.identity(x)
    stack = [(x, ident, ident)]
    out = []
    while stack:
        w, incl, proj = stack.pop()
        e = _splitting_idempotent(w)
        if e is None:
            out.append((w, incl, proj))
            continue
        (w1, i1, p1), (w2, i2, p2) = _split_by_idempotent(w, e)
        stack.append((w1, compose(incl, i1), compose(p1, proj)))
        stack.append((w2, compose(incl, i2), compose(p2, proj)))
    out.sort(key=lambda t: t[0].serial_key())
    return out


def _splitting_idempotent(x: Complex):
    """A nontrivial idempotent of End(X), or None when End(X) is local."""
    alg = x.alg
    f = alg.field
    end = hom_basis(x, x)
    m = end.dimension
    if m <= 1:
        return None
    if f.char == 0:
        rad = end_radical_coords(x, end)
        if m - len(rad) == 1:
            return None
        return _idempotent_char0(x, end)
    # finite field fallback: exhaustive scan
    import itertools
    ident = ChainMap.identity(x)
    if f.char ** m > (1 << 16):
        raise SearchSpaceTooLarge(f.char ** m)
    for combo in itertools.product(f.elements(), repeat=m):
        if not any(combo):
            continue
        e = None
        for c, b in zip(combo, end.basis):
            t = b.scale(c)
            e = t if e is None else e + t
        if e.comps == ident.comps:
            continue
        if compose(e, e).comps == e.comps:
            return e
    return None


def _idempotent_char0(x: Complex, end: HomSpace):
    """Find a nontrivial idempotent via minimal polynomials of candidates."""
    f = x.alg.field
    basis = end.basis
    candidates = list(basis)
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            candidates.append(basis[i] + basis[j])
            candidates.append(compose(basis[i], basis[j]))
    ident = ChainMap.identity(x)
    for b in candidates:
        e = _idempotent_from_element(x, b, ident)
        if e is not None:
            return e
    raise DecompositionFailure(
        "End(X) is not local but no candidate element produced a rational "
        "spectral split; an irrational field extension is involved")


def _idempotent_from_element(x: Complex, b: ChainMap, ident: ChainMap):
    f = x.alg.field
    mat, dim = _total_matrix(x, b)
    if dim == 0:
        return None
    mp = minimal_polynomial(f, mat, dim)
    if len(mp) <= 2:
        return None
    roots = rational_roots(mp)
    if not roots:
        return None
    for root in roots:
        # g = (t - root)^mult, h = mp / g, coprime by construction
        g = [f.one]
        rest = list(mp)
        while True:
            q, r = poly_divmod(f, rest, [-f.of(root), f.one])
            if r:
                break
            rest = q
            g = poly_mul(f, g, [-f.of(root), f.one])
        h = rest
        if len(g) <= 1 or len(h) <= 1:
            continue
        _, u, v = poly_xgcd(f, g, h)
        # e = (u g)(b) is idempotent: 1 on the h-primary part, 0 on the g-part
        e = _poly_apply(x, poly_trim(f, poly_mul(f, u, g)), b, ident)
        if e.is_zero() or e.comps == ident.comps:
            continue
        assert compose(e, e).comps == e.comps
        return e
    return None


def _poly_apply(x: Complex, poly, b: ChainMap, ident: ChainMap) -> ChainMap:
    acc = None
    power = ident
    for k, c in enumerate(poly):
        if k > 0:
            power = compose(power, b)
        if c:
            term = power.scale(c)
            acc = term if acc is None else acc + term
    if acc is None:
        acc = ident.scale(x.alg.field.zero)
    return acc


def _total_matrix(x: Complex, b: ChainMap):
    """Scalar matrix of an endomorphism on the total path-coordinate space."""
    from .complexes import realize_entry_blocks

    alg = x.alg
    f = alg.field
    blocks = []
    for i in range(x.window):
        for w in alg.quiver.vertices:
            blocks.append(realize_entry_blocks(alg, b.comps[i], x.cells[i], x.cells[i], w))
    dim = sum(len(blk) for blk in blocks)
    mat = [[f.zero] * dim for _ in range(dim)]
    off = 0
    for blk in blocks:
        for r, row in enumerate(blk):
            for c, v in enumerate(row):
                mat[off + r][off + c] = v
        off += len(blk)
    return mat, dim


def _split_by_idempotent(x: Complex, e: ChainMap):
    """Conjugate e to a 0/1 diagonal and split the complex along the pattern."""
    alg = x.alg
    f = alg.field
    n = x.window
    e_mats = [[list(row) for row in m] for m in e.comps]
    g_mats = []
    ginv_mats = []
    patterns = []
    for i in range(n):
        cell = x.cells[i]
        k = len(cell)
        # scalar part per vertex group, diagonalised by [im basis | ker basis]
        a = [[alg.zero_element(tv, sv) for sv in cell] for tv in cell]
        ainv = [[alg.zero_element(tv, sv) for sv in cell] for tv in cell]
        pattern = [0] * k
        for v in sorted(set(cell)):
            idxs = [j for j, w in enumerate(cell) if w == v]
            s = [[e_mats[i][r][c].unit_coeff() for c in idxs] for r in idxs]
            d = len(idxs)
            cols = []
            span = SpanBasis(f, d)
            for j in range(d):
                col = [s[r][j] for r in range(d)]
                if span.add(col):
                    cols.append(col)
            rank_im = len(cols)
            ker = nullspace(f, s, d)
            basis_cols = cols + ker
            assert len(basis_cols) == d
            # C^{-1} has basis_cols as columns; C = inverse
            cinv = [[basis_cols[j][r] for j in range(d)] for r in range(d)]
            cmat = _invert_scalar(f, cinv, d)
            for bi, gi in enumerate(idxs):
                pattern[gi] = 1 if bi < rank_im else 0
                for bj, gj in enumerate(idxs):
                    if cmat[bi][bj]:
                        a[gi][gj] = alg.unit(v).scale(cmat[bi][bj])
                    if cinv[bi][bj]:
                        ainv[gi][gj] = alg.unit(v).scale(cinv[bi][bj])
        g_mats.append(a)
        ginv_mats.append(ainv)
        patterns.append(pattern)
    # conjugate e by the scalar change, then correct by u = ef + (1-e)(1-f)
    from .complexes import mat_add, mat_identity, mat_mul, mat_neg

    def conj(mats, g, ginv):
        return [mat_mul(alg, mat_mul(alg, g[i], mats[i], x.cells[i], x.cells[i], x.cells[i]),
                        ginv[i], x.cells[i], x.cells[i], x.cells[i]) for i in range(n)]

    e1 = conj(e_mats, g_mats, ginv_mats)
    total_g = list(g_mats)
    f_mats = []
    for i in range(n):
        cell = x.cells[i]
        fm = [[alg.unit(cell[r]) if r == c and patterns[i][r] else alg.zero_element(cell[r], cell[c])
               for c in range(len(cell))] for r in range(len(cell))]
        f_mats.append(fm)
    for i in range(n):
        cell = x.cells[i]
        one = mat_identity(alg, cell)
        ef = mat_mul(alg, e1[i], f_mats[i], cell, cell, cell)
        one_e = mat_add(one, mat_neg(e1[i]))
        one_f = mat_add(one, mat_neg(f_mats[i]))
        u = mat_add(ef, mat_mul(alg, one_e, one_f, cell, cell, cell))
        uinv = _invert_unipotent(alg, u, cell)
        # total change of basis: u^{-1} . g
        total_g[i] = mat_mul(alg, uinv, total_g[i], cell, cell, cell)
    total_ginv = [_invert_unit_matrix(alg, total_g[i], x.cells[i]) for i in range(n)]
    new_diffs = [mat_mul(alg, mat_mul(alg, total_g[i + 1], [list(r) for r in x.diffs[i]],
                                      x.cells[i + 1], x.cells[i + 1], x.cells[i]),
                         total_ginv[i], x.cells[i + 1], x.cells[i], x.cells[i])
                 for i in range(n - 1)]
    # verify the conjugated idempotent is the exact 0/1 diagonal
    e2 = [mat_mul(alg, mat_mul(alg, total_g[i], e.comps[i], x.cells[i], x.cells[i], x.cells[i]),
                  total_ginv[i], x.cells[i], x.cells[i], x.cells[i]) for i in range(n)]
    for i in range(n):
        if e2[i] != f_mats[i]:
            raise DecompositionFailure("idempotent failed to diagonalise")
    parts = []
    for keep in (1, 0):
        cells = []
        sel = []
        for i in range(n):
            idxs = [j for j in range(len(x.cells[i])) if patterns[i][j] == keep]
            sel.append(idxs)
            cells.append(tuple(x.cells[i][j] for j in idxs))
        diffs = []
        for i in range(n - 1):
            diffs.append([[new_diffs[i][r][c] for c in sel[i]] for r in sel[i + 1]])
            for r in sel[i + 1]:
                for c in range(len(x.cells[i])):
                    if patterns[i][c] != keep and not new_diffs[i][r][c].is_zero():
                        raise DecompositionFailure("differential not block diagonal")
        w = Complex(alg, cells, diffs)
        # inclusion: columns of g^{-1} at kept indices; projection: rows of g
        incl = [ [[total_ginv[i][r][c] for c in sel[i]] for r in range(len(x.cells[i]))]
                 for i in range(n)]
        proj = [ [[total_g[i][r][c] for c in range(len(x.cells[i]))] for r in sel[i]]
                 for i in range(n)]
        parts.append((w, ChainMap(w, x, incl, check=False),
                      ChainMap(x, w, proj, check=False)))
    return parts[0], parts[1]


def _invert_scalar(f, mat, n):
    work = [list(row) + [f.one if i == j else f.zero for j in range(n)]
            for i, row in enumerate(mat)]
    pivots = rref(f, work, 2 * n)
    assert pivots[:n] == list(range(n)), "scalar matrix not invertible"
    return [row[n:] for row in work[:n]]


def _invert_unipotent(alg, u, cell):
    """Inverse of a matrix whose scalar part is the identity: 1 + nilpotent."""
    from .complexes import mat_add, mat_identity, mat_mul, mat_neg

    one = mat_identity(alg, cell)
    nu = mat_add(u, mat_neg(one))
    acc = one
    term = one
    for _ in range(len(cell) * (alg._max_path_len + 1) + 1):
        term = mat_mul(alg, mat_neg(nu), term, cell, cell, cell)
        if all(x.is_zero() for row in term for x in row):
            break
        acc = mat_add(acc, term)
    else:
        if not all(x.is_zero() for row in term for x in row):
            raise DecompositionFailure("unipotent inversion did not terminate")
    return acc


def _invert_unit_matrix(alg, mat, cell):
    """Inverse of an invertible AlgElement matrix (scalar part regular)."""
    from .complexes import mat_mul

    f = alg.field
    n = len(cell)
    if n == 0:
        return []
    # invert the scalar part per vertex, then correct unipotently
    sinv_scalar = {}
    for v in sorted(set(cell)):
        idxs = [j for j, w in enumerate(cell) if w == v]
        s = [[mat[r][c].unit_coeff() for c in idxs] for r in idxs]
        sinv_scalar[v] = (idxs, _invert_scalar(f, s, len(idxs)))
    sinv = [[alg.zero_element(cell[r], cell[c]) for c in range(n)] for r in range(n)]
    for v, (idxs, inv) in sinv_scalar.items():
        for bi, gi in enumerate(idxs):
            for bj, gj in enumerate(idxs):
                if inv[bi][bj]:
                    sinv[gi][gj] = alg.unit(v).scale(inv[bi][bj])
    u = mat_mul(alg, sinv, mat, cell, cell, cell)  # unipotent
    uinv = _invert_unipotent(alg, u, cell)
    return mat_mul(alg, uinv, sinv, cell, cell, cell)


# -- category radical -----------------------------------------------------------


def rad_basis(x: Complex, y: Complex, universe) -> HomSpace:
    """Radical morphisms X -> Y for universe representatives.

    Distinct representatives are non-isomorphic, so rad = Hom; on an object
    against itself rad = rad End(X).
    """
    if not universe.closed:
        raise IncompleteUniverse("radical quantifies over a closed universe")
    if x is y or x == y:
        end = hom_basis(x, x)
        rad_vecs = end_radical_coords(x, end)
        basis = [_combine(end.basis, v) for v in rad_vecs]
        return HomSpace(x, y, basis, len(basis), end._layout, end._free)
    return hom_basis(x, y)


def rad2_basis(x: Complex, y: Complex, universe) -> HomSpace:
    """Span of composites of two radical morphisms through the universe."""
    if not universe.closed:
        raise IncompleteUniverse("rad^2 quantifies over a closed universe")
    hs = hom_basis(x, y)
    span = SpanBasis(x.alg.field, len(hs._free))
    picked = []
    for w in universe.representatives:
        first = rad_basis(x, w, universe)
        if first.dimension == 0:
            continue
        second = rad_basis(w, y, universe)
        if second.dimension == 0:
            continue
        for f_ in first.basis:
            for g in second.basis:
                comp = compose(g, f_)
                coords = hs.coordinates(comp)
                if span.add(coords):
                    picked.append(comp)
    return HomSpace(x, y, picked, len(picked), hs._layout, hs._free)


def _combine(basis, coeffs):
    acc = None
    for c, b in zip(coeffs, basis):
        if not c:
            continue
        t = b.scale(c)
        acc = t if acc is None else acc + t
    assert acc is not None
    return acc


def null_homotopy_span(hs: HomSpace) -> SpanBasis:
    """Span (in the hom layout coordinates) of the null-homotopic maps X -> Y.

    Generated by f = d_Y h + h d_X over degree -1 families h; used to decide
    whether a chain map vanishes in the homotopy category.
    """
    from .complexes import mat_add, mat_mul

    x, y = hs.source, hs.target
    alg = x.alg
    f = alg.field
    n = x.window
    layout = hs._layout
    span = SpanBasis(f, layout.nvars)
    h_layout = _VarLayout(alg, [(y.cells[i - 1], x.cells[i]) for i in range(1, n)])
    for hv in range(h_layout.nvars):
        hvec = [f.zero] * h_layout.nvars
        hvec[hv] = f.one
        h_mats = h_layout.materialize(hvec)  # h_mats[i-1]: X^i -> Y^{i-1}, 0-based i in 1..n-1
        comps = []
        for i in range(n):
            m = [[alg.zero_element(tv, sv) for sv in x.cells[i]] for tv in y.cells[i]]
            if i >= 1:
                m = mat_add(m, mat_mul(alg, y.diffs[i - 1], h_mats[i - 1],
                                       y.cells[i], y.cells[i - 1], x.cells[i]))
            if i + 1 < n:
                m = mat_add(m, mat_mul(alg, h_mats[i], x.diffs[i],
                                       y.cells[i], x.cells[i + 1], x.cells[i]))
            comps.append(m)
        span.add(layout.vectorize(comps))
    return span


def is_null_homotopic(hs: HomSpace, f_map: ChainMap, span: SpanBasis | None = None) -> bool:
    if span is None:
        span = null_homotopy_span(hs)
    return span.contains(hs._layout.vectorize(f_map.comps))


# -- degree-1 extension classes ---------------------------------------------------


class DegreeOneMap:
    """A degree-1 family sigma^i : Z^i -> X^{i+1}, i = 1..n-1."""

    __slots__ = ("z", "x", "comps")

    def __init__(self, z: Complex, x: Complex, comps):
        self.z = z
        self.x = x
        self.comps = tuple(tuple(tuple(row) for row in m) for m in comps)

    def compose_right(self, g: ChainMap) -> "DegreeOneMap":
        """sigma . g for a chain map g: W -> Z."""
        from .complexes import mat_mul

        alg = self.z.alg
        w = g.source
        comps = [mat_mul(alg, self.comps[i], g.comps[i],
                         self.x.cells[i + 1], self.z.cells[i], w.cells[i])
                 for i in range(self.z.window - 1)]
        return DegreeOneMap(w, self.x, comps)


@dataclass
class ExtClassSpace:
    """Degree-1 maps with d_X sigma + sigma d_Z = 0, modulo h d_Z - d_X h."""

    source: Complex  # Z, the quotient term
    target: Complex  # X, the sub term
    basis: list[DegreeOneMap]
    dimension: int
    _layout: _VarLayout = field(repr=False, default=None)
    _boundary: SpanBasis = field(repr=False, default=None)
    _qrep_vecs: list = field(repr=False, default=None)

    def reduce(self, sigma: DegreeOneMap) -> list:
        """Quotient coordinates of a cocycle; zero list iff it is a boundary."""
        vec = self._layout.vectorize(sigma.comps)
        f = self.source.alg.field
        if self.dimension == 0:
            res = self._boundary._reduce(vec)
            if any(res):
                raise InvalidClass("not a cocycle-boundary combination")
            return []
        cols = self._qrep_vecs + self._boundary.rows
        rows = [[cols[j][i] for j in range(len(cols))] for i in range(self._layout.nvars)]
        sol = solve(f, rows, len(cols), vec)
        if sol is None:
            raise InvalidClass("vector outside cocycle span")
        return sol[:self.dimension]

    def is_boundary(self, sigma: DegreeOneMap) -> bool:
        return not any(self.reduce(sigma))


def ext_classes(z: Complex, x: Complex) -> ExtClassSpace:
    """Extension classes of conflations X -> Y -> Z within the window.

    Coincides with Hom_{K^b}(Z, X[1]) for complexes supported in the window.
    """
    if z.window != x.window:
        raise WindowMismatch("ext between different windows")
    alg = z.alg
    f = alg.field
    n = z.window
    layout = _VarLayout(alg, [(x.cells[i + 1], z.cells[i]) for i in range(n - 1)])
    empty_span = SpanBasis(f, layout.nvars)
    if layout.nvars == 0:
        return ExtClassSpace(z, x, [], 0, layout, empty_span, [])
    # cocycle equations: d_X^{i+1} sigma^i + sigma^{i+1} d_Z^i = 0
    rows_by_slot = {}

    def eq_rows(i, r, c):
        key = (i, r, c)
        if key not in rows_by_slot:
            paths = alg.paths_between(x.cells[i + 2][r], z.cells[i][c])
            idx = {p: k for k, p in enumerate(paths)}
            rows_by_slot[key] = (idx, [[f.zero] * layout.nvars for _ in paths])
        return rows_by_slot[key]

    for i in range(n - 2):
        for r in range(len(x.cells[i + 2])):
            for c in range(len(z.cells[i])):
                idx, rows = eq_rows(i, r, c)
                if not rows:
                    continue
                for w in range(len(x.cells[i + 1])):
                    off = layout.offset.get((i, w, c))
                    if off is None:
                        continue
                    slot_paths = alg.paths_between(x.cells[i + 1][w], z.cells[i][c])
                    _left_mul_rows(alg, x.diffs[i + 1][r][w], slot_paths, idx, rows, off, +1)
                for v in range(len(z.cells[i + 1])):
                    off = layout.offset.get((i + 1, r, v))
                    if off is None:
                        continue
                    slot_paths = alg.paths_between(x.cells[i + 2][r], z.cells[i + 1][v])
                    _right_mul_rows(alg, slot_paths, z.diffs[i][v][c], idx, rows, off, +1)
    all_rows = [row for _, (_, rows) in sorted(rows_by_slot.items()) for row in rows
                if any(row)]
    cocycles = nullspace(f, all_rows, layout.nvars) if all_rows else \
        [[f.one if j == k else f.zero for j in range(layout.nvars)]
         for k in range(layout.nvars)]
    # boundaries: h^{i+1} d_Z^i - d_X^i h^i for degree-0 families h
    h_layout = _VarLayout(alg, [(x.cells[i], z.cells[i]) for i in range(n)])
    boundary = SpanBasis(f, layout.nvars)
    for hv in range(h_layout.nvars):
        hvec = [f.zero] * h_layout.nvars
        hvec[hv] = f.one
        h_mats = h_layout.materialize(hvec)
        from .complexes import mat_add, mat_mul, mat_neg
        comps = []
        for i in range(n - 1):
            t1 = mat_mul(alg, h_mats[i + 1], z.diffs[i],
                         x.cells[i + 1], z.cells[i + 1], z.cells[i])
            t2 = mat_mul(alg, [list(r) for r in x.diffs[i]], h_mats[i],
                         x.cells[i + 1], x.cells[i], z.cells[i])
            comps.append(mat_add(t1, mat_neg(t2)))
        boundary.add(layout.vectorize(comps))
    qreps = []
    basis = []
    probe = SpanBasis(f, layout.nvars)
    for row in boundary.rows:
        probe.add(row)
    for v in cocycles:
        if probe.add(v):
            qreps.append(v)
            basis.append(DegreeOneMap(z, x, layout.materialize(v)))
    return ExtClassSpace(z, x, basis, len(basis), layout, boundary, qreps)


def assemble_extension(z: Complex, x: Complex, sigma: DegreeOneMap):
    """Conflation X -> Y -> Z with Y^i = X^i (+) Z^i and d = [[d_X, sigma], [0, d_Z]]."""
    alg = z.alg
    n = z.window
    if sigma.z is not z or sigma.x is not x:
        if sigma.z.cells != z.cells or sigma.x.cells != x.cells:
            raise InvalidClass("class does not match the given pair")
    cells = [x.cells[i] + z.cells[i] for i in range(n)]
    diffs = []
    for i in range(n - 1):
        m = mat_zero(alg, cells[i + 1], cells[i])
        nx_t, nx_s = len(x.cells[i + 1]), len(x.cells[i])
        for r in range(nx_t):
            for c in range(nx_s):
                m[r][c] = x.diffs[i][r][c]
            for c in range(len(z.cells[i])):
                m[r][nx_s + c] = sigma.comps[i][r][c]
        for r in range(len(z.cells[i + 1])):
            for c in range(len(z.cells[i])):
                m[nx_t + r][nx_s + c] = z.diffs[i][r][c]
        diffs.append(m)
    try:
        y = Complex(alg, cells, diffs)
    except ShapeMismatch as exc:
        raise InvalidClass(f"cocycle equations fail: {exc}") from exc
    incl = [ [[alg.unit(x.cells[i][r]) if r == c else alg.zero_element(cells[i][r], x.cells[i][c])
               for c in range(len(x.cells[i]))] for r in range(len(cells[i]))]
             for i in range(n)]
    proj = [ [[alg.unit(z.cells[i][r]) if c == len(x.cells[i]) + r
               else alg.zero_element(z.cells[i][r], cells[i][c])
               for c in range(len(cells[i]))] for r in range(len(z.cells[i]))]
             for i in range(n)]
    i_map = ChainMap(x, y, incl, check=False)
    d_map = ChainMap(y, z, proj, check=False)
    return y, i_map, d_map
