import pytest

from cnproj.arquiver import (
    build_ar_quiver,
    check_window_stability,
    classify_irreducible_components,
    derived_window,
    gamma_bar,
    is_left_almost_split,
    is_right_almost_split,
    is_right_minimal,
)
from cnproj.complexes import ChainMap, make_J, make_stalk, mat_zero
from cnproj.errors import EtaZero, ShapeViolation
from cnproj.homspaces import decompose


@pytest.fixture(scope="module")
def point_quiver(point_alg):
    return build_ar_quiver(point_alg, 2)


@pytest.fixture(scope="module")
def a2_quiver(a2_alg):
    return build_ar_quiver(a2_alg, 2)


def test_point_quiver_shape(point_quiver):
    q = point_quiver
    labels = {i: q.label(i) for i in range(q.class_count())}
    arrows = sorted((labels[i], labels[j]) for (i, j) in q.arrows)
    assert arrows == [("0->P1", "P1->P1"), ("P1->P1", "P1->0")]
    assert len(q.conflations) == 1
    conf = next(iter(q.conflations.values()))
    assert conf.certified
    assert (conf.x.label(), conf.y.label(), conf.z.label()) == \
        ("0->P1", "P1->P1", "P1->0")
    assert {labels[z]: labels[x] for z, x in q.tau.items()} == {"P1->0": "0->P1"}


def test_point_quiver_flags(point_quiver):
    q = point_quiver
    for i in range(q.class_count()):
        lab = q.label(i)
        if lab == "P1->P1":
            assert q.proj_injective[i] and q.en_projective[i] and q.en_injective[i]
        elif lab == "0->P1":
            assert q.en_projective[i] and not q.en_injective[i]
        else:
            assert q.en_injective[i] and not q.en_projective[i]


def test_a2_quiver_arrows(a2_quiver):
    q = a2_quiver
    labels = {i: q.label(i) for i in range(q.class_count())}
    arrows = sorted((labels[i], labels[j]) for (i, j) in q.arrows)
    assert arrows == [
        ("0->P1", "P2->P1"), ("0->P2", "0->P1"), ("0->P2", "P2->P2"),
        ("P1->P1", "P1->0"), ("P2->0", "P1->0"), ("P2->P1", "P1->P1"),
        ("P2->P1", "P2->0"), ("P2->P2", "P2->P1"),
    ]
    assert all(m == 1 for m in q.arrows.values())


def test_a2_quiver_conflations(a2_quiver):
    q = a2_quiver
    triples = sorted(
        (c.x.label(), tuple(sorted(q.label(s) for s in c.y_summands)), c.z.label())
        for c in q.conflations.values())
    assert triples == [
        ("0->P1", ("P2->P1",), "P2->0"),
        ("0->P2", ("0->P1", "P2->P2"), "P2->P1"),
        ("P2->P1", ("P1->P1", "P2->0"), "P1->0"),
    ]
    assert all(c.certified for c in q.conflations.values())


def test_middle_matches_arrows(a2_quiver):
    q = a2_quiver
    for z_idx, conf in q.conflations.items():
        outgoing = sorted(j for (i, j), m in q.arrows.items()
                          for _ in range(m) if i == conf.x_idx)
        incoming = sorted(i for (i, j), m in q.arrows.items()
                          for _ in range(m) if j == z_idx)
        assert outgoing == sorted(conf.y_summands) == incoming


def test_conflation_uniqueness_and_decomposition(a2_quiver):
    q = a2_quiver
    zs = [c.z_idx for c in q.conflations.values()]
    assert len(zs) == len(set(zs))
    for conf in q.conflations.values():
        got = sorted(q.universe.find(w) for w, _ in decompose(conf.y)
                     for _ in range(1))
        assert got == sorted(set(conf.y_summands)) or got == sorted(conf.y_summands)


def test_right_almost_split_examples(point_quiver, point_alg):
    q = point_quiver
    conf = next(iter(q.conflations.values()))
    assert is_right_almost_split(q.universe, conf.d)
    assert is_left_almost_split(q.universe, conf.i)
    assert is_right_minimal(q.universe, conf.d)
    # a retraction is never right almost split
    s = make_stalk(point_alg, 1, 1, 2)
    assert not is_right_almost_split(q.universe, ChainMap.identity(s))
    # the zero map into a class with radical maps fails too
    j = make_J(point_alg, 1, 1, 2)
    zero = ChainMap(j, s, [mat_zero(point_alg, (1,), (1,)),
                           mat_zero(point_alg, (), (1,))])
    assert not is_right_almost_split(q.universe, zero)


def test_classify_components(a2_quiver):
    q = a2_quiver
    kinds = {}
    for (i, j), f in q.arrow_reps.items():
        shape = classify_irreducible_components(f)
        kinds[(q.label(i), q.label(j))] = (shape.kind, shape.split_index)
    assert kinds[("P2->P2", "P2->P1")] == ("split-at", 2)
    assert kinds[("P2->P1", "P2->0")][0] == "all-retractions"
    assert kinds[("0->P1", "P2->P1")][0] == "all-sections"


def test_classify_rejects_identity(a2_quiver):
    rep = a2_quiver.universe.representatives[0]
    with pytest.raises(ShapeViolation):
        classify_irreducible_components(ChainMap.identity(rep))


def test_gamma_bar_a2(a2_quiver):
    gb = gamma_bar(a2_quiver)
    labels = sorted(a2_quiver.label(i) for i in gb.vertices)
    assert labels == ["0->P1", "0->P2", "P1->0", "P2->0", "P2->P1"]
    assert [a2_quiver.label(a) for a in gb.anchors] == ["P2->P1"]
    assert not any(a2_quiver.proj_injective[i] for i in gb.vertices)


def test_gamma_bar_a3(a3_alg):
    q3 = build_ar_quiver(a3_alg, 3)
    gb = gamma_bar(q3)
    witness_idx = [i for i in gb.vertices
                   if q3.label(i) == "P3->P2->P1"]
    assert witness_idx
    assert witness_idx[0] in gb.anchors


def test_derived_window_counts(a2_quiver):
    gb = gamma_bar(a2_quiver)
    dw0 = derived_window(gb, 0, 0)
    assert len(dw0.vertices) == gb.vertex_count()
    assert all(a[1] == b[1] for a, b, _ in dw0.arrows)
    dw = derived_window(gb, -1, 1)
    assert len(dw.vertices) == 3 * gb.vertex_count()


def test_window_stability_a2(a2_alg):
    rep = check_window_stability(a2_alg, 3, 1)
    assert rep.ok()
    assert rep.checked["drop"] > 0 and rep.checked["embed"] > 0


def test_window_stability_eta_zero(point_alg):
    with pytest.raises(EtaZero):
        check_window_stability(point_alg, 2, 0)


def test_arrow_endpoints_share_an_empty_boundary(a3_alg):
    # arrows at window eta+2 = 4 live entirely away from one boundary
    q4 = build_ar_quiver(a3_alg, 4)
    for (i, j) in q4.arrows:
        x = q4.universe.representatives[i]
        y = q4.universe.representatives[j]
        assert (not x.cells[0] and not y.cells[0]) or \
            (not x.cells[-1] and not y.cells[-1])


def test_top_window_conflation_is_new(a3_alg):
    # the conflation ending at the full-support witness in C_3 cannot drop to C_2
    q3 = build_ar_quiver(a3_alg, 3)
    witness_confs = [c for c in q3.conflations.values()
                     if c.z.cells[0] and c.z.cells[-1]]
    assert len(witness_confs) == 1
    conf = witness_confs[0]
    assert conf.certified
    triple = (conf.x, conf.y, conf.z)
    assert not all(not t.cells[0] for t in triple)
    assert not all(not t.cells[-1] for t in triple)


def test_is_minimal_sides(a2_quiver):
    from cnproj.arquiver import is_minimal

    conf = next(iter(a2_quiver.conflations.values()))
    assert is_minimal(a2_quiver.universe, conf.d, "right")
    assert is_minimal(a2_quiver.universe, conf.i, "left")
    with pytest.raises(ValueError):
        is_minimal(a2_quiver.universe, conf.d, "sideways")


def test_gamma_bar_window_one_is_eta_zero(point_alg):
    q1 = build_ar_quiver(point_alg, 1)
    with pytest.raises(EtaZero):
        gamma_bar(q1)


def test_a2_flags_match_classification(a2_quiver):
    q = a2_quiver
    for i in range(q.class_count()):
        lab = q.label(i)
        rep = q.universe.representatives[i]
        is_j = q.universe.j_flags[i]
        is_t = rep.total_summands() == 1 and rep.support() == (q.window, q.window)
        is_s = rep.total_summands() == 1 and rep.support() == (1, 1)
        assert q.en_projective[i] == (is_j or is_t), lab
        assert q.en_injective[i] == (is_j or is_s), lab
        assert q.proj_injective[i] == is_j, lab


def test_classification_stable_under_embedding(a2_quiver):
    from cnproj.complexes import embed_left_map, embed_right_map

    for (i, j), f in a2_quiver.arrow_reps.items():
        base = classify_irreducible_components(f)
        left = classify_irreducible_components(embed_left_map(f))
        right = classify_irreducible_components(embed_right_map(f))
        assert left.kind == base.kind == right.kind
        if base.kind == "split-at":
            assert left.split_index == base.split_index + 1
            assert right.split_index == base.split_index


def test_six_vertex_derived_pipeline(a6_alg):
    # the full pipeline at the window where the length-4 witness lives:
    # 100 classes, all conflations certified, one anchor component
    q5 = build_ar_quiver(a6_alg, 5)
    assert q5.class_count() == 100
    assert len(q5.conflations) == 70
    assert all(c.certified for c in q5.conflations.values())
    for z_idx, conf in q5.conflations.items():
        outgoing = sorted(j for (i, j), m in q5.arrows.items()
                          for _ in range(m) if i == conf.x_idx)
        incoming = sorted(i for (i, j), m in q5.arrows.items()
                          for _ in range(m) if j == z_idx)
        assert outgoing == sorted(conf.y_summands) == incoming
    gb = gamma_bar(q5)
    assert gb.vertex_count() == 76
    witness = [i for i in gb.anchors if q5.label(i) == "P6->P5->P3->P2->P1"]
    assert witness
    dw = derived_window(gb, -1, 1)
    assert len(dw.vertices) == 3 * gb.vertex_count()
    assert not dw.notes
