from itertools import product

import numpy as np
import pytest

from looptrans.cochain import (Cochain, builtin_cocycle, composable_tuples,
                               differential, is_cocycle)
from looptrans.groupoid import build_graded_group
from looptrans.phase import Phase
from looptrans.solver import cocycle_basis, is_exact, smith_normal_form


def bz(n, grading=None):
    spec = {"family": "cyclic", "n": n}
    if grading:
        spec["grading"] = grading
    return build_graded_group(spec).classifying_groupoid()


def reconstruct(diag, u, uinv, v, a):
    s = np.array(u, dtype=object) @ np.array(a, dtype=object) @ np.array(v, dtype=object)
    out = []
    for i in range(min(s.shape)):
        out.append(int(s[i, i]))
    assert all(s[i, j] == 0 for i in range(s.shape[0]) for j in range(s.shape[1])
               if i != j)
    return [x for x in out if x]


def test_snf_basics():
    a = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    diag, u, uinv, v = smith_normal_form(a, want_u=True, want_uinv=True, want_v=True)
    assert diag == [2, 2, 156]
    assert reconstruct(diag, u, uinv, v, a) == diag
    # u and uinv really are mutually inverse
    assert (np.array(u, dtype=object) @ np.array(uinv, dtype=object)
            == np.eye(3, dtype=object)).all()
    # divisibility chain
    for x, y in zip(diag, diag[1:]):
        assert y % x == 0


def test_snf_rectangular_and_zero():
    diag, _, _, _ = smith_normal_form([[0, 0], [0, 0], [0, 0]])
    assert diag == []
    a = [[1, 0, -1], [0, 2, 2]]
    diag, u, uinv, v = smith_normal_form(a, want_u=True, want_uinv=True, want_v=True)
    assert diag == [1, 2]
    assert reconstruct(diag, u, uinv, v, a) == diag


def brute_cocycle_count(g, degree, twist, k):
    cells = list(composable_tuples(g, degree, nondegenerate=True))
    count = 0
    for values in product(range(k), repeat=len(cells)):
        table = {c: Phase(a, k) for c, a in zip(cells, values) if a}
        f = Cochain(g, degree, twist, table)
        if is_cocycle(f)[0]:
            count += 1
    return count


def solver_cocycle_count(space):
    n = 1
    for o in space.cocycle_orders:
        n *= o
    return n


@pytest.mark.parametrize("twist,degree,k", [
    ("none", 1, 2), ("none", 2, 2), ("pi", 1, 2), ("pi", 2, 2),
    ("none", 1, 4), ("pi", 2, 4),
])
def test_solver_vs_bruteforce_bz2(twist, degree, k):
    g = bz(2, "mod2")
    space = cocycle_basis(g, degree, twist, k)
    assert solver_cocycle_count(space) == brute_cocycle_count(g, degree, twist, k)


def test_solver_vs_bruteforce_bz4():
    g = bz(4, "mod2")
    for twist in ("none", "pi"):
        space = cocycle_basis(g, 1, twist, 4)
        assert solver_cocycle_count(space) == brute_cocycle_count(g, 1, twist, 4)


def test_generators_are_cocycles_with_witnessed_coboundaries(suite_groups):
    for name in ("z4_mod2", "z2xz2_proj", "z3xz2"):
        g = suite_groups[name].classifying_groupoid()
        for degree, twist in ((1, "pi"), (2, "pi"), (2, "none"), (3, "pi")):
            space = cocycle_basis(g, degree, twist, 4)
            for f in space.cocycles:
                assert is_cocycle(f)[0]
            for b, w in zip(space.coboundaries, space.coboundary_witnesses):
                assert differential(w) == b


def test_cohomology_invariant_factors():
    # H^3(Z2; U(1)) = Z2 and H^1(Z2; U(1)) = Z2
    g2 = bz(2)
    assert cocycle_basis(g2, 3, "none", 2).invariant_factors == [2]
    sp1 = cocycle_basis(g2, 1, "none", 2)
    assert sp1.invariant_factors == [2]
    assert solver_cocycle_count(sp1) == 2 and not sp1.coboundaries
    # H^1(Z4; U(1)) = Z4
    assert cocycle_basis(bz(4), 1, "none", 4).invariant_factors == [4]
    # degree 0: locally constant functions, one full-order generator per component
    g = bz(4, "mod2")
    sp0 = cocycle_basis(g, 0, "none", 4)
    assert sp0.cocycle_orders == [4]


def test_cyclic3_is_nontrivial_class():
    g = bz(2)
    eta = builtin_cocycle("cyclic3", g)
    assert is_cocycle(eta)[0]
    assert not is_exact(eta)
    # but twice it (the zero cochain) is exact, and so is any d-image
    lam = Cochain(g, 2, "none", {})
    assert is_exact(differential(Cochain(g, 1, "none", {(1,): Phase(1, 4)})))


def test_is_exact_detects_coboundaries(suite_groups):
    g = suite_groups["z4_mod2"].classifying_groupoid()
    space = cocycle_basis(g, 2, "pi", 4)
    for b in space.coboundaries:
        assert is_exact(b)
    # quaternionic trivializes on Z4 mod2 (d of 1/2 on morphisms 1 and 2) ...
    q = builtin_cocycle("quaternionic", g)
    assert is_exact(q)
    mu = Cochain(g, 1, "pi", {(1,): Phase(1, 2), (2,): Phase(1, 2)})
    assert differential(mu) == q
    # ... but is a nontrivial twisted class on the split extension of Z2
    g2 = suite_groups["z2xz2_proj"].classifying_groupoid()
    assert not is_exact(builtin_cocycle("quaternionic", g2))
