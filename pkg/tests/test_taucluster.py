import pytest

from higherar.algebras import build_algebra
from higherar.dynkin import build_family, linear_a_quiver
from higherar.homology import ext_dim, global_dimension
from higherar.instances import (auslander_a3_alternating,
                                auslander_a3_linear, linear_a_presentation)
from higherar.quivers import Presentation, Quiver
from higherar.reps import (direct_sum, hom_dim, injective, modules_isomorphic,
                           projective, simple, std_modules)
from higherar.taucluster import (GlobalDimensionTooLarge, NoIsomorphismFound,
                                 ar_quiver, cone_algebra, is_n_rigid,
                                 presentation_isomorphic, tau, tau_closure,
                                 verify_n_complete)


@pytest.fixture(scope="module")
def ka2():
    return build_algebra(linear_a_presentation(2))


@pytest.fixture(scope="module")
def golden():
    return auslander_a3_linear()


def test_tau_classical_example(ka2):
    P, I, S = std_modules(ka2)
    assert tau(S[0], 1).dim_vector() == S[1].dim_vector()
    assert tau(P[0], 1).is_zero()
    assert tau(P[1], 1).is_zero()
    assert tau(S[1], 1, "inverse").dim_vector() == S[0].dim_vector()
    assert tau(I[0], 1, "inverse").is_zero()


def test_tau_respects_pd_bound(golden):
    # pd < n translates to zero
    for v in golden.vertices:
        assert tau(projective(golden, v), 2).is_zero()


def test_golden_tau_layers(golden):
    closure = tau_closure(golden, 2)
    assert closure.layer_sizes() == [6, 3, 1]
    assert closure.is_tau_finite and closure.layers_disjoint
    alt = auslander_a3_alternating()
    closure2 = tau_closure(alt, 2)
    assert closure2.layer_sizes() == [6, 3]


def test_ka4_closure_count():
    alg = build_algebra(linear_a_presentation(4))
    closure = tau_closure(alg, 1)
    assert closure.layer_sizes() == [4, 3, 2, 1]
    assert len(closure.objects) == 10


def test_closure_checks_global_dimension(golden):
    with pytest.raises(GlobalDimensionTooLarge):
        tau_closure(golden, 1)  # gl.dim 2 > 1


def test_rigidity(ka2, golden):
    P, I, S = std_modules(ka2)
    ok, _ = is_n_rigid([S[0], S[1]], 1)
    assert ok  # vacuous
    ok2, violations = is_n_rigid([S[0], S[1]], 2)
    assert not ok2
    assert any(deg == 1 for _, _, deg, _ in violations)
    closure = tau_closure(golden, 2)
    ok3, _ = is_n_rigid(closure.objects, 2)
    assert ok3


def test_hom_vanishes_between_later_layers(golden):
    # no morphisms from earlier translate layers to strictly later ones
    closure = tau_closure(golden, 2)
    for i, layer_i in enumerate(closure.layers):
        for j, layer_j in enumerate(closure.layers):
            if i >= j:
                continue
            for a in layer_i:
                for b in layer_j:
                    assert hom_dim(closure.objects[a], closure.objects[b]) == 0


def test_verify_reports(golden):
    report, closure, _ = verify_n_complete(golden, 2)
    assert report.verdict and report.absolute
    assert report.gl_dim == 2 and report.cone_gl_dim == 3
    alt = auslander_a3_alternating()
    report2, _, _ = verify_n_complete(alt, 2)
    assert report2.verdict and not report2.absolute
    # failure mode: gl.dim too large is a verdict, not an exception
    report3, _, _ = verify_n_complete(golden, 1)
    assert not report3.verdict and not report3.gl_dim_ok


def test_ar_quiver_single_simple():
    semi = build_algebra(linear_a_presentation(1))
    closure = tau_closure(semi, 3)
    cat = ar_quiver(closure)
    assert len(cat.presentation.quiver.vertices) == 1
    assert not cat.presentation.quiver.arrows
    assert not cat.presentation.relations


def test_ar_quiver_of_ka4():
    alg = build_algebra(linear_a_presentation(4))
    closure = tau_closure(alg, 1)
    cat = ar_quiver(closure)
    q = cat.presentation.quiver
    assert len(q.vertices) == 10
    assert len(q.arrows) == 12
    assert len(cat.presentation.translation.tau) == 6
    # matches the predicted mesh family
    fam = build_family(linear_a_quiver(4), 1)
    ok, _ = presentation_isomorphic(cat.presentation, fam)
    assert ok


def test_cone_of_ka2_is_three_simple_auslander():
    alg = build_algebra(linear_a_presentation(2))
    gamma, cat, closure = cone_algebra(alg, 1)
    assert len(gamma.vertices) == 3
    assert global_dimension(gamma) == 2
    assert gamma.dimension == 5


def test_presentation_isomorphic_self_and_counts():
    fam = build_family(linear_a_quiver(3), 1)
    ok, bij = presentation_isomorphic(fam, fam)
    assert ok and all(bij[v] == v or True for v in bij)
    d4 = Quiver(["1", "2", "3", "4"],
                [("a", "2", "1"), ("b", "3", "1"), ("c", "4", "1")])
    fam_d4 = build_family(d4, 1)
    with pytest.raises(NoIsomorphismFound):
        presentation_isomorphic(fam, fam_d4)


def test_presentation_isomorphic_detects_relation_mismatch():
    # same quiver, different ideal: commutative square vs zero relations
    from higherar.linalg import ONE
    from higherar.quivers import Path, Relation
    q = Quiver(["1", "2", "3", "4"],
               [("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"),
                ("d", "3", "4")])
    comm = Presentation(q, [Relation([(ONE, Path("1", ("a", "c"), "4")),
                                      (-ONE, Path("1", ("b", "d"), "4"))])])
    zero = Presentation(q, [Relation([(ONE, Path("1", ("a", "c"), "4"))]),
                            Relation([(ONE, Path("1", ("b", "d"), "4"))])])
    with pytest.raises(NoIsomorphismFound):
        presentation_isomorphic(comm, zero)


def test_translation_finiteness_is_left_right_symmetric(golden):
    for alg, n in [(golden, 2), (auslander_a3_alternating(), 2),
                   (build_algebra(linear_a_presentation(3)), 1)]:
        closure = tau_closure(alg, n)
        closure_op = tau_closure(alg.opposite(), n)
        assert closure.is_tau_finite and closure_op.is_tau_finite


def test_cone_closure_indecomposables_count_by_pairs(golden):
    # closure objects of the cone biject with pairs (object, extra steps)
    report, closure, cat = verify_n_complete(golden, 2, want_cone=True)
    gamma = build_algebra(cat.presentation.opposite())
    closure2 = tau_closure(gamma, 3)
    expected = sum(closure.ell[i] + 1 for i in range(len(closure.objects)))
    assert len(closure2.objects) == expected
