from fractions import Fraction

import pytest

from looptrans.cochain import Cochain
from looptrans.groupoid import (EVEN, ODD_LOOP, PAIRED, GroupoidError,
                                action_groupoid, build_graded_group, components,
                                double_cover, integrate, kernel_inclusion,
                                loop_cover_functor, loop_deck_functor,
                                loop_groupoid, quotient_loop_groupoid,
                                unoriented_quotient_loop_groupoid)
from looptrans.phase import HALF, Phase, PhaseSum, ZERO


def bz(n, grading=None):
    spec = {"family": "cyclic", "n": n}
    if grading:
        spec["grading"] = grading
    return build_graded_group(spec).classifying_groupoid()


def conjugacy_classes(group):
    # brute-force oracle
    left = set(range(group.n))
    classes = []
    while left:
        g = min(left)
        orb = {group.mul[group.mul[h][g]][group.inv[h]] for h in range(group.n)}
        classes.append(sorted(orb))
        left -= orb
    return classes


def test_builtin_families():
    z4 = build_graded_group({"family": "cyclic", "n": 4, "grading": "mod2"})
    assert z4.kernel == [0, 2]
    assert z4.grading == [1, -1, 1, -1]
    s3z2 = build_graded_group({"family": "product_Z2",
                               "base": {"family": "symmetric", "n": 3}})
    assert s3z2.n == 12 and len(s3z2.kernel) == 6
    d4 = build_graded_group({"family": "dihedral", "n": 4})
    assert d4.n == 8 and len(d4.kernel) == 4
    with pytest.raises(GroupoidError):
        build_graded_group({"family": "cyclic", "n": 3, "grading": "mod2"})


def test_classifying_groupoid_axioms(suite_groups):
    for grp in suite_groups.values():
        g = grp.classifying_groupoid()
        g.validate()
        assert g.strongly_nontrivial


def test_action_groupoid_examples():
    z2 = build_graded_group({"family": "cyclic", "n": 2})
    b = action_groupoid(z2, ["pt"], lambda g, x: x)
    b.validate()
    assert b.n_objects == 1 and b.n_morphisms == 2
    torsor = action_groupoid(z2, [0, 1], lambda g, x: (g + x) % 2)
    torsor.validate()
    assert torsor.n_objects == 2 and torsor.n_morphisms == 4
    assert all(len(torsor.automorphisms(x)) == 1 for x in range(2))
    z4 = build_graded_group({"family": "cyclic", "n": 4, "grading": "mod2"})
    b4 = action_groupoid(z4, ["pt"], lambda g, x: x)
    assert sum(1 for m in range(4) if b4.grading[m] == -1) == 2
    with pytest.raises(GroupoidError):
        action_groupoid(z2, [0, 1], lambda g, x: 0)


def test_double_cover_models():
    # identity grading on Z2: the cover is contractible
    g = bz(2, "mod2")
    cover, proj, deck = double_cover(g)
    cover.validate()
    assert cover.n_objects == 2 and cover.n_morphisms == 4
    assert len(cover.component_partition()) == 1
    # Z4 with mod2 grading: connected, automorphism groups of order 2
    g4 = bz(4, "mod2")
    cover4, proj4, deck4 = double_cover(g4)
    cover4.validate()
    assert cover4.n_objects == 2 and cover4.n_morphisms == 8
    assert len(cover4.component_partition()) == 1
    assert all(len(cover4.automorphisms(x)) == 2 for x in range(2))
    # trivial grading: two disjoint copies, deck swaps them
    gt = bz(3)
    covt, _, deckt = double_cover(gt)
    assert len(covt.component_partition()) == 2
    assert all(deckt.obj_map[x] != x for x in range(covt.n_objects))


def test_double_cover_properties(suite_groups):
    for grp in suite_groups.values():
        ghat = grp.classifying_groupoid()
        cover, proj, deck = double_cover(ghat)
        deck.validate()
        proj.validate()
        # deck is an involution without fixed objects
        assert all(deck.obj_map[deck.obj_map[x]] == x for x in range(cover.n_objects))
        assert all(deck.mor_map[deck.mor_map[m]] == m for m in range(cover.n_morphisms))
        # proj o deck = proj, fibers have exactly two elements
        assert [proj.obj_map[deck.obj_map[x]] for x in range(cover.n_objects)] == proj.obj_map
        for y in range(ghat.n_objects):
            assert sum(1 for x in proj.obj_map if x == y) == 2


def test_loop_groupoid_examples():
    lam = loop_groupoid(bz(2))
    lam.validate()
    assert lam.n_objects == 2 and lam.n_morphisms == 4
    s3 = build_graded_group({"family": "symmetric", "n": 3})
    lam3 = loop_groupoid(s3.classifying_groupoid())
    lam3.validate()
    comps = components(lam3)
    assert len(comps) == len(conjugacy_classes(s3)) == 3
    assert sorted(len(c.aut) for c in comps) == [2, 3, 6]
    # contractible groupoid: loops are only identities
    z2 = build_graded_group({"family": "cyclic", "n": 2})
    torsor = action_groupoid(z2, [0, 1], lambda g, x: (g + x) % 2)
    lamt = loop_groupoid(torsor)
    assert lamt.n_objects == 2
    assert len(lamt.component_partition()) == 1
    assert all(len(lamt.automorphisms(x)) == 1 for x in range(2))
    # object count equals the sum of automorphism group sizes
    for g in (bz(2), bz(4), s3.classifying_groupoid()):
        assert loop_groupoid(g).n_objects == sum(
            len(g.automorphisms(x)) for x in range(g.n_objects))


def test_quotient_loop_groupoid_examples(suite_groups):
    lq = quotient_loop_groupoid(bz(4, "mod2"))
    lq.validate()
    assert lq.n_objects == 2 and lq.n_morphisms == 8
    assert all(len(lq.automorphisms(x)) == 4 for x in range(2))
    s3z2 = suite_groups["s3xz2"].classifying_groupoid()
    assert len(components(quotient_loop_groupoid(s3z2))) == 3
    # trivially graded: same as the plain loop groupoid
    gt = bz(3, None)
    gt.grading = [1, 1, 1]
    lqt = quotient_loop_groupoid(gt)
    assert lqt.n_objects == loop_groupoid(gt).n_objects
    assert all(s == 1 for s in lqt.grading)


def test_unoriented_quotient_examples(suite_groups):
    lr = unoriented_quotient_loop_groupoid(bz(4, "mod2"))
    lr.validate()
    assert lr.n_objects == 2 and lr.n_morphisms == 8
    z3z2 = suite_groups["z3xz2"].classifying_groupoid()
    comps = components(unoriented_quotient_loop_groupoid(z3z2))
    assert len(comps) == 2
    sizes = sorted(len(c.objects) for c in comps)
    assert sizes == [1, 2]  # {0} and {1,2}: odd conjugators invert


def test_component_classification(suite_groups):
    assert components(bz(4, "mod2"))[0].classification == ODD_LOOP
    cover, _, _ = double_cover(bz(4, "mod2"))
    cover.grading = [1] * cover.n_morphisms
    assert components(cover)[0].classification == EVEN
    z3z2 = suite_groups["z3xz2"].classifying_groupoid()
    comps = components(unoriented_quotient_loop_groupoid(z3z2))
    by_size = {len(c.objects): c.classification for c in comps}
    assert by_size == {1: ODD_LOOP, 2: PAIRED}


def test_loop_cover_and_deck(suite_groups):
    for name in ("z4_mod2", "z3xz2", "d4_ref"):
        ghat = suite_groups[name].classifying_groupoid()
        cover, proj, deck = double_cover(ghat)
        lam = loop_groupoid(cover)
        for quotient, reflect in ((quotient_loop_groupoid(ghat), False),
                                  (unoriented_quotient_loop_groupoid(ghat), True)):
            p = loop_cover_functor(lam, quotient)
            p.validate()
            sigma = loop_deck_functor(lam, reflect)
            sigma.validate()
            # deck is an involution and covers the identity
            assert all(sigma.obj_map[sigma.obj_map[x]] == x
                       for x in range(lam.n_objects))
            assert p.compose(sigma).obj_map == p.obj_map
            assert p.compose(sigma).mor_map == p.mor_map
            # 2:1 on every fiber
            for y in range(quotient.n_objects):
                fiber = [x for x in range(lam.n_objects) if p.obj_map[x] == y]
                assert len(fiber) == 2
                assert sigma.obj_map[fiber[0]] == fiber[1]


def test_integrate_examples():
    b2 = bz(2)
    one = Cochain(b2, 0, "none", {0: ZERO})
    assert integrate(b2, one) == PhaseSum.of(ZERO, Fraction(1, 2))
    lam = loop_groupoid(b2)
    onel = Cochain(lam, 0, "none", {x: ZERO for x in range(lam.n_objects)})
    assert integrate(lam, onel) == PhaseSum.of(ZERO, 1)
    halfc = Cochain(b2, 0, "none", {0: HALF})
    assert integrate(b2, halfc) == PhaseSum.of(HALF, Fraction(1, 2))
    z2 = build_graded_group({"family": "cyclic", "n": 2})
    torsor = action_groupoid(z2, [0, 1], lambda g, x: (g + x) % 2)
    with pytest.raises(GroupoidError):
        integrate(torsor, Cochain(torsor, 0, "none", {0: HALF}))


def test_integrate_component_formula_and_invariance():
    # object-sum formula agrees with sum over components of 1/|Aut|,
    # and the integral only depends on the equivalence class of the groupoid
    z2 = build_graded_group({"family": "cyclic", "n": 2})
    b = action_groupoid(z2, ["pt"], lambda g, x: x)
    t = action_groupoid(z2, [0, 1], lambda g, x: (g + x) % 2)
    for g in (b, t, loop_groupoid(b)):
        one = Cochain(g, 0, "none", {x: ZERO for x in range(g.n_objects)})
        total = PhaseSum.zero()
        for comp in components(g):
            total = total + PhaseSum.of(ZERO, Fraction(1, len(comp.aut)))
        assert integrate(g, one) == total
    # S3 on 3 points has point stabilizer Z2, so the quotient is B(Z2)
    s3 = build_graded_group({"family": "symmetric", "n": 3})
    pts = [0, 1, 2]
    perms = [tuple(map(int, s3.names[g])) for g in range(s3.n)]
    cosets = action_groupoid(s3, pts, lambda g, x: perms[g][x])
    one_c = Cochain(cosets, 0, "none", {x: ZERO for x in pts})
    b2 = bz(2)
    assert integrate(cosets, one_c) == integrate(
        b2, Cochain(b2, 0, "none", {0: ZERO})) == PhaseSum.of(ZERO, Fraction(1, 2))
    # a free transitive action is equivalent to a point
    one_t = Cochain(t, 0, "none", {0: ZERO, 1: ZERO})
    assert integrate(t, one_t) == PhaseSum.of(ZERO, 1)


def test_kernel_inclusion(suite_groups):
    ghat = suite_groups["z4_mod2"].classifying_groupoid()
    sub, incl = kernel_inclusion(ghat)
    sub.validate()
    incl.validate()
    assert sub.n_morphisms == 2
