"""Normalized twisted simplicial cochains on finite groupoids.

A degree-n cochain assigns a phase to every composable n-tuple
(m_n, ..., m_1) of morphisms, m_1 applied first, and vanishes on tuples
containing an identity (normalization).  The twist is either trivial
("none") or the inversion action through the grading ("pi"); only these
two arise.  The differential, written additively, is

    (d f)(m_n, ..., m_1) = s(m_n) * f(m_{n-1}, ..., m_1)
        + sum_{j=1}^{n-1} (-1)^(n-j) * f(..., m_{j+1} m_j, ...)
        + (-1)^n * f(m_n, ..., m_2)

where s(m) = -1 exactly when the twist is "pi" and m has odd degree.
Degree-0 cochains are functions on objects and d f (m) = s(m) f(src) -
f(tgt).

Tables store only nonzero entries; lookups of omitted composable tuples
return the zero phase, which also implements normalization.
"""

from __future__ import annotations

import random
from math import gcd
from typing import Iterator

from .groupoid import BudgetExceeded, FiniteGroupoid, Functor, GroupoidError
from .phase import Phase, ZERO

TWISTS = ("none", "pi")


class CochainError(ValueError):
    pass


class Cochain:
    __slots__ = ("groupoid", "degree", "twist", "table")

    def __init__(self, groupoid: FiniteGroupoid, degree: int, twist: str, table=None):
        if twist not in TWISTS:
            raise CochainError(f"unknown twist {twist!r}")
        if twist == "pi" and not groupoid.is_graded:
            raise CochainError("pi twist needs a graded groupoid")
        if degree < 0:
            raise CochainError("degree must be >= 0")
        self.groupoid = groupoid
        self.degree = degree
        self.twist = twist
        clean = {}
        for key, val in (table or {}).items():
            if val.is_zero:
                continue
            if degree == 0:
                clean[key] = val
                continue
            if any(groupoid.is_identity(m) for m in key):
                raise CochainError(f"nonzero value on degenerate tuple {key}")
            clean[key] = val
        self.table = clean

    def value(self, key: tuple) -> Phase:
        return self.table.get(key, ZERO)

    def object_value(self, x: int) -> Phase:
        if self.degree != 0:
            raise CochainError("object_value is for degree-0 cochains")
        return self.table.get(x, ZERO)

    def sign(self, m: int) -> int:
        """The twist sign s(m) applied to the leading face."""
        if self.twist == "pi" and self.groupoid.grading[m] == -1:
            return -1
        return 1

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compat(other)
        keys = set(self.table) | set(other.table)
        if self.degree == 0:
            return Cochain(self.groupoid, 0, self.twist,
                           {k: self.object_value(k) + other.object_value(k) for k in keys})
        return Cochain(self.groupoid, self.degree, self.twist,
                       {k: self.value(k) + other.value(k) for k in keys})

    def __neg__(self) -> "Cochain":
        return Cochain(self.groupoid, self.degree, self.twist,
                       {k: -v for k, v in self.table.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and self.groupoid is other.groupoid
                and self.degree == other.degree and self.twist == other.twist
                and self.table == other.table)

    def __hash__(self):
        raise TypeError("unhashable")

    @property
    def is_zero(self) -> bool:
        return not self.table

    def __repr__(self):
        return (f"Cochain(degree={self.degree}, twist={self.twist}, "
                f"support={len(self.table)})")

    def _compat(self, other: "Cochain"):
        if (self.groupoid is not other.groupoid or self.degree != other.degree
                or self.twist != other.twist):
            raise CochainError("cochain mismatch")


def zero_cochain(g: FiniteGroupoid, degree: int, twist: str = "none") -> Cochain:
    return Cochain(g, degree, twist, {})


def composable_tuples(g: FiniteGroupoid, n: int, nondegenerate: bool = False,
                      budget: int | None = None) -> Iterator[tuple]:
    """All composable n-tuples (m_n, ..., m_1), m_1 first, in a fixed order."""
    if n == 0:
        yield from range(g.n_objects)
        return
    count = 0

    def extend(path, end, depth):
        nonlocal count
        if depth == n:
            count += 1
            if budget is not None and count > budget:
                raise BudgetExceeded(f"tuple enumeration exceeds budget {budget}")
            yield tuple(reversed(path))
            return
        for m in g.out[end]:
            if nondegenerate and g.is_identity(m):
                continue
            yield from extend(path + [m], g.tgt[m], depth + 1)
    for x in range(g.n_objects):
        yield from extend([], x, 0)


def boundary_faces(g: FiniteGroupoid, key: tuple, twist: str):
    """Signed faces of a composable tuple, as used by the differential.

    Yields (sign, face) where a face is a shorter tuple, or an object id
    when len(key) == 1.  The leading face carries the twist sign of the
    outermost morphism.
    """
    n = len(key)
    s = -1 if (twist == "pi" and g.grading[key[0]] == -1) else 1
    if n == 1:
        yield s, g.src[key[0]]
        yield -1, g.tgt[key[0]]
        return
    yield s, key[1:]
    for j in range(1, n):
        # merge m_{j+1} o m_j; positions count from the right (m_1 last)
        i = n - j - 1
        merged = key[:i] + (g.comp[(key[i], key[i + 1])],) + key[i + 2:]
        yield (-1) ** (n - j), merged
    yield (-1) ** n, key[:-1]


def differential_value(f: Cochain, key: tuple) -> Phase:
    """(d f) evaluated on one composable tuple of length degree+1."""
    g = f.groupoid
    assert len(key) == f.degree + 1
    total = ZERO
    for sign, face in boundary_faces(g, key, f.twist):
        v = f.object_value(face) if f.degree == 0 else f.value(face)
        total = total + v if sign == 1 else total - v
    return total


def differential(f: Cochain, budget: int | None = None) -> Cochain:
    """Materialized d f; normalization is preserved (tested invariant)."""
    g = f.groupoid
    table = {}
    for key in composable_tuples(g, f.degree + 1, nondegenerate=True, budget=budget):
        v = differential_value(f, key)
        if not v.is_zero:
            table[key] = v
    return Cochain(g, f.degree + 1, f.twist, table)


def is_cocycle(f: Cochain, budget: int | None = None):
    """Exhaustive check d f = 0; returns (ok, witness tuple or None, value)."""
    for key in composable_tuples(f.groupoid, f.degree + 1, nondegenerate=True,
                                 budget=budget):
        v = differential_value(f, key)
        if not v.is_zero:
            return False, key, v
    return True, None, None


def assert_cocycle(f: Cochain, what: str = "cochain") -> Cochain:
    ok, witness, val = is_cocycle(f)
    if not ok:
        names = tuple(f.groupoid.mor_names[m] for m in witness)
        raise CochainError(f"{what} is not closed: d{names} = {val}")
    return f


def pullback(func: Functor, f: Cochain) -> Cochain:
    """f composed with a functor.  For a pi-twisted f the domain must carry
    the pulled-back grading (degree-preserving functor)."""
    dom, cod = func.dom, func.cod
    if f.groupoid is not cod:
        raise CochainError("cochain does not live on the functor codomain")
    twist = f.twist
    if f.twist == "pi":
        if dom.is_graded and func.is_degree_preserving():
            twist = "pi"
        elif all(cod.grading[func.mor_map[m]] == 1 for m in range(dom.n_morphisms)):
            twist = "none"  # all images even: the twist trivializes
        else:
            raise CochainError("pullback of a twisted cochain needs a graded domain")
    table = {}
    if f.degree == 0:
        for x in range(dom.n_objects):
            v = f.object_value(func.obj_map[x])
            if not v.is_zero:
                table[x] = v
        return Cochain(dom, 0, twist, table)
    for key in composable_tuples(dom, f.degree, nondegenerate=True):
        v = f.value(tuple(func.mor_map[m] for m in key))
        if not v.is_zero:
            table[key] = v
    return Cochain(dom, f.degree, twist, table)


def restrict_to_cover(f: Cochain, proj: Functor, sheet: list[int]) -> Cochain:
    """Restriction of a pi-twisted cochain to a double cover, with the
    equivariance sign: value on a chain is the downstairs value raised to
    the sheet sign of the chain's end object.  This is the cochain-level
    inverse of descending along the cover and intertwines the twisted
    differential upstairs-untwisted one (tested)."""
    if f.twist != "pi":
        return pullback(proj, f)
    dom = proj.dom
    table = {}
    if f.degree == 0:
        for x in range(dom.n_objects):
            v = f.object_value(proj.obj_map[x]).act(sheet[x])
            if not v.is_zero:
                table[x] = v
        return Cochain(dom, 0, "none", table)
    for key in composable_tuples(dom, f.degree, nondegenerate=True):
        v = f.value(tuple(proj.mor_map[m] for m in key))
        if not v.is_zero:
            table[key] = v.act(sheet[dom.tgt[key[0]]])
    return Cochain(dom, f.degree, "none", table)


def random_cochain(g: FiniteGroupoid, degree: int, twist: str, order: int,
                   seed: int) -> Cochain:
    """Uniform normalized cochain with values in (1/order)Z/Z, reproducible."""
    rng = random.Random(seed)
    table = {}
    if degree == 0:
        for x in range(g.n_objects):
            table[x] = Phase(rng.randrange(order), order)
        return Cochain(g, 0, twist, table)
    for key in composable_tuples(g, degree, nondegenerate=True):
        table[key] = Phase(rng.randrange(order), order)
    return Cochain(g, degree, twist, table)


# ---------------------------------------------------------------------------
# builtin cocycle library


def builtin_cocycle(name: str, g: FiniteGroupoid, **params) -> Cochain:
    """Verified builtin cocycles; construction fails loudly when not closed.

    trivial          -- zero cochain (params: degree, twist)
    quaternionic     -- twisted 2-cocycle, 1/2 exactly on odd-odd pairs
    cyclic3          -- degree-3 generator on a cyclic group viewed additively
    cyclic3_pulled   -- 1/2 on all-odd triples (cyclic3 through the grading)
    cyclic2_pulled   -- cup product of two order-k characters
                        (params: order, char1, char2, twist)
    """
    if name == "trivial":
        return zero_cochain(g, params.get("degree", 2), params.get("twist", "pi"
                            if g.is_graded else "none"))
    if name == "quaternionic":
        if not g.is_graded:
            raise CochainError("quaternionic cocycle needs a graded groupoid")
        table = {}
        for key in composable_tuples(g, 2, nondegenerate=True):
            if g.grading[key[0]] == -1 and g.grading[key[1]] == -1:
                table[key] = Phase(1, 2)
        return assert_cocycle(Cochain(g, 2, "pi", table), "quaternionic")
    if name == "cyclic3":
        group = getattr(g, "group", None)
        if group is None or any(group.names[i] != str(i) for i in range(group.n)):
            raise CochainError("cyclic3 lives on the classifying groupoid of a cyclic group")
        k = group.n
        table = {}
        for key in composable_tuples(g, 3, nondegenerate=True):
            a, b, c = (int(g.mor_names[m]) for m in key)
            table[key] = Phase(a * ((b + c) // k), k)
        return assert_cocycle(Cochain(g, 3, "none", table), "cyclic3")
    if name == "cyclic3_pulled":
        if not g.is_graded:
            raise CochainError("cyclic3_pulled needs a graded groupoid")
        twist = params.get("twist", "pi")
        table = {}
        for key in composable_tuples(g, 3, nondegenerate=True):
            if all(g.grading[m] == -1 for m in key):
                table[key] = Phase(1, 2)
        return assert_cocycle(Cochain(g, 3, twist, table), "cyclic3_pulled")
    if name == "cyclic2_pulled":
        k = int(params["order"])
        c1, c2 = list(params["char1"]), list(params["char2"])
        for c in (c1, c2):
            if len(c) != g.n_morphisms:
                raise CochainError("character length must match the morphism count")
            for (m2, m1), m in g.comp.items():
                if (c[m2] + c[m1] - c[m]) % k:
                    raise CochainError("character is not a homomorphism")
        twist = params.get("twist", "none")
        table = {}
        for key in composable_tuples(g, 2, nondegenerate=True):
            table[key] = Phase(c1[key[0]] * c2[key[1]], k)
        return assert_cocycle(Cochain(g, 2, twist, table), "cyclic2_pulled")
    raise CochainError(f"unknown builtin cocycle {name!r}")


# ---------------------------------------------------------------------------
# file format


def dump_cocycle(f: Cochain, order: int | None = None) -> dict:
    g = f.groupoid
    if f.degree == 0:
        values = [{"object": g.obj_names[x], "phase": str(v)}
                  for x, v in sorted(f.table.items())]
    else:
        values = [{"tuple": [g.mor_names[m] for m in key], "phase": str(v)}
                  for key, v in sorted(f.table.items())]
    if order is None:
        order = 1
        for v in f.table.values():
            order = order * v.den // gcd(order, v.den)
    return {"degree": f.degree, "twist": f.twist, "order": order, "values": values}


def load_cochain(g: FiniteGroupoid, data: dict) -> Cochain:
    degree = int(data["degree"])
    twist = data.get("twist", "none")
    table = {}
    for entry in data.get("values", []):
        phase = Phase.parse(entry["phase"])
        if degree == 0:
            x = g.obj_names.index(entry["object"])
            table[x] = phase
            continue
        key = tuple(g.morphism_by_name(nm) for nm in entry["tuple"])
        if len(key) != degree:
            raise CochainError(f"tuple {entry['tuple']} has wrong length")
        for a, b in zip(key[:-1], key[1:]):
            if g.tgt[b] != g.src[a]:
                raise CochainError(f"tuple {entry['tuple']} is not composable")
        if any(g.is_identity(m) for m in key) and not phase.is_zero:
            raise CochainError(f"tuple {entry['tuple']} breaks normalization")
        table[key] = phase
    return Cochain(g, degree, twist, table)
