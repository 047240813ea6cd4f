from cnproj.complexes import Complex, length
from cnproj.homspaces import is_isomorphic
from cnproj.sgldim import compute_sgldim, sgldim_fast


def test_point(point_alg):
    r = compute_sgldim(point_alg)
    assert r.terminated and r.m0 == 2 and r.sgldim == 0
    assert length(r.witness) == 0
    rf = sgldim_fast(point_alg)
    assert rf.sgldim == 0


def test_a2(a2_alg):
    r = compute_sgldim(a2_alg)
    assert (r.m0, r.sgldim) == (3, 1)
    assert r.witness_line() == "P2 -> P1"
    assert sgldim_fast(a2_alg).sgldim == 1


def test_a3(a3_alg):
    r = compute_sgldim(a3_alg)
    assert (r.m0, r.sgldim) == (4, 2)
    assert [row[0] for row in r.per_window] == [2, 3, 4]
    assert r.per_window[-1][2] == 0
    assert all(row[2] > 0 for row in r.per_window[:-1])
    b = a3_alg.hom_proj_basis(3, 2)[0]
    a = a3_alg.hom_proj_basis(2, 1)[0]
    target = Complex(a3_alg, [(3,), (2,), (1,)], [[[b]], [[a]]])
    assert is_isomorphic(r.witness, target)
    assert length(r.witness) == r.sgldim
    assert sgldim_fast(a3_alg).sgldim == 2


def test_m0_identity(point_alg, a2_alg, a3_alg):
    for alg in (point_alg, a2_alg, a3_alg):
        r = compute_sgldim(alg)
        assert r.m0 == r.sgldim + 2
        rf = sgldim_fast(alg)
        assert rf.sgldim == r.sgldim and rf.m0 == r.m0


def test_monotone_max_length(a3_alg):
    from cnproj.universe import enumerate_indecomposables, max_length

    prev = -1
    for n in (2, 3, 4):
        uni = enumerate_indecomposables(a3_alg, n)
        ell, _ = max_length(uni)
        assert ell >= prev
        prev = ell


def test_cap(a3_alg):
    r = compute_sgldim(a3_alg, max_n=3)
    assert not r.terminated
    assert "indistinguishable" in r.cap_note
