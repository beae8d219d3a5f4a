import random

import pytest

from higherar.algebras import build_algebra
from higherar.homology import (approximation, dominant_dimension, ext_dim,
                               ext_dim_via_injective, ext_dims,
                               global_dimension, homological_dimensions,
                               is_tilting, min_resolution, perp_membership,
                               proj_dimension)
from higherar.instances import (auslander_a3_alternating,
                                auslander_a3_linear, linear_a_presentation)
from higherar.quivers import Presentation, Quiver
from higherar.reps import (direct_sum, hom_basis, injective, projective,
                           simple, std_modules, top_rad_soc)
from higherar.taucluster import tau_closure


@pytest.fixture(scope="module")
def ka2():
    return build_algebra(linear_a_presentation(2))


@pytest.fixture(scope="module")
def golden():
    return auslander_a3_linear()


def test_resolution_of_projective_is_length_zero(ka2):
    chain = min_resolution(projective(ka2, "1"), "projective", 4)
    assert chain.length() == 0 and chain.complete
    assert chain.terms[0].summands == ["1"]


def test_resolution_of_simple(ka2):
    s1 = simple(ka2, "1")
    chain = min_resolution(s1, "projective", 4)
    assert [t.summands for t in chain.terms] == [["1"], ["2"]]
    assert chain.complete
    # exactness at the interior and minimality of the differential
    d = chain.diffs[0]
    from higherar.reps import ker_coker_im, radical_columns
    (ker, _), (img, _, _), _ = ker_coker_im(d)
    assert ker.is_zero()
    (kaug, _), _, _ = ker_coker_im(chain.aug)
    assert kaug.dim_vector() == img.dim_vector()


def test_ext_examples(ka2):
    P, I, S = std_modules(ka2)
    assert ext_dim(S[0], S[1], 0) == 0
    assert ext_dim(S[0], S[1], 1) == 1
    assert ext_dim(S[0], S[1], 2) == 0
    assert ext_dim(P[0], S[1], 1) == 0
    # Ext^0 is Hom
    from higherar.reps import hom_dim
    for x in P + S:
        for y in P + S:
            assert ext_dim(x, y, 0) == hom_dim(x, y)


def test_ext_dual_route_agrees_on_all_pairs(golden):
    mods = [simple(golden, v) for v in golden.vertices]
    mods += [projective(golden, "2"), injective(golden, "6")]
    for x in mods:
        for y in mods:
            for i in range(0, 4):
                assert ext_dim(x, y, i) == ext_dim_via_injective(x, y, i)


def test_pd_equals_top_nonvanishing_ext(golden):
    total, _, _ = direct_sum(golden,
                             [simple(golden, v) for v in golden.vertices])
    for v in golden.vertices:
        s = simple(golden, v)
        pd = proj_dimension(s)
        top = max((i for i in range(0, 5) if ext_dims(s, total, 4)[i]),
                  default=0)
        assert pd == top


def test_ext_cocycles_span_and_cycle(ka2):
    from higherar.homology import ext_cocycles
    from higherar.reps import ker_coker_im
    P, I, S = std_modules(ka2)
    cocycles = ext_cocycles(S[0], S[1], 1)
    assert len(cocycles) >= ext_dim(S[0], S[1], 1) == 1
    chain = min_resolution(S[0], "projective", 2)
    for f in cocycles:
        f.check_intertwines()
        # killed by the next differential (there is none here: pd = 1)
        assert chain.length() == 1
    # degree 0 cocycles are honest morphisms P_0 -> y lifting Hom(x, y)
    z0 = ext_cocycles(P[0], S[0], 0)
    assert len(z0) == 1 and not z0[0].is_zero()


def test_decomposition_report():
    from higherar.serialize import decomposition_report
    alg = auslander_a3_linear()
    total, _, _ = direct_sum(alg, [injective(alg, "5"), injective(alg, "5"),
                                   injective(alg, "6")])
    rep = decomposition_report(total)
    assert sorted(e["multiplicity"] for e in rep["summands"]) == [1, 2]
    for e in rep["summands"]:
        assert sum(e["top"]) >= 1 and sum(e["socle"]) >= 1


def test_global_and_dominant_dimensions(golden):
    assert global_dimension(build_algebra(linear_a_presentation(4))) == 1
    gl, dom, per = homological_dimensions(golden)
    assert gl == 2
    assert dom is None or dom >= 2
    alt = auslander_a3_alternating()
    gl2, dom2, _ = homological_dimensions(alt)
    assert gl2 == 2 and (dom2 is None or dom2 >= 2)


def test_dominant_dimension_semisimple_flag():
    semi = build_algebra(linear_a_presentation(1))
    assert dominant_dimension(semi) is None  # whole coresolution projective


def test_approximation_split_when_in_add(ka2):
    P, I, S = std_modules(ka2)
    f, used = approximation(P[0], [P[0], P[1]], "right")
    # a split epimorphism: the identity component survives minimization
    assert f.source.dim_vector() == P[0].dim_vector()
    from higherar.reps import ker_coker_im
    _, _, (cok, _) = ker_coker_im(f)
    assert cok.is_zero()


def test_right_regular_approximation_is_cover(ka2):
    from higherar.reps import ker_coker_im
    P, I, S = std_modules(ka2)
    f, _ = approximation(S[0], [P[0], P[1]], "right")
    assert f.source.dim_vector() == P[0].dim_vector()
    _, _, (cok, _) = ker_coker_im(f)
    assert cok.is_zero()


def test_is_tilting_examples(ka2):
    P, I, S = std_modules(ka2)
    reg, _, _ = direct_sum(ka2, [P[0], P[1]])
    ok, pd, witness = is_tilting(reg, ka2)
    assert ok and pd == 0
    dl, _, _ = direct_sum(ka2, [I[0], I[1]])
    ok2, pd2, _ = is_tilting(dl, ka2)
    assert ok2 and pd2 == 1
    bad, _, _ = direct_sum(ka2, [S[0], S[0]])
    ok3, _, _ = is_tilting(bad, ka2)
    assert not ok3


def test_golden_alternating_tilting_module():
    alg = auslander_a3_alternating()
    closure = tau_closure(alg, 2)
    parts = [closure.objects[i] for i in closure.projective_part()]
    t, _, _ = direct_sum(alg, parts)
    ok, pd, _ = is_tilting(t, alg, gens=parts)
    assert ok and pd == 1
    # every closure object lies in the right perpendicular category
    for x in closure.objects:
        assert perp_membership(t, x)


def test_perp_membership_basics(ka2):
    P, I, S = std_modules(ka2)
    reg, _, _ = direct_sum(ka2, [P[0], P[1]])
    dl, _, _ = direct_sum(ka2, [I[0], I[1]])
    for x in P + I + S:
        assert perp_membership(reg, x)       # t projective: everything
    assert perp_membership(dl, I[0])         # x injective: member
    assert not perp_membership(dl, S[1])     # Ext^1(DL, S2) != 0 over kA2


def test_left_approximation_starts_tilting_coresolution():
    alg = auslander_a3_alternating()
    closure = tau_closure(alg, 2)
    parts = [closure.objects[i] for i in closure.projective_part()]
    reg, _, _ = direct_sum(alg, [projective(alg, v) for v in alg.vertices])
    f, used = approximation(reg, parts, "left")
    from higherar.reps import ker_coker_im
    (ker, _), _, _ = ker_coker_im(f)
    assert ker.is_zero()
    assert used  # at least one tilting summand participates
