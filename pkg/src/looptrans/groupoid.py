"""Finite groupoids, Z2-gradings, and the loop-space constructions.

Objects and morphisms carry dense integer ids; composition is a flat
dict keyed by morphism pairs, since transgression evaluation enumerates
tuples of morphisms and lookup cost dominates.  The convention for
``compose(m2, m1)`` is "m1 first": it is defined iff tgt(m1) == src(m2).

Constructions provided here:

* ``double_cover``      -- the explicit model with objects Obj x {+1,-1},
  together with the projection functor and the deck involution;
* ``loop_groupoid``     -- objects are loops (x, gamma), morphisms are
  conjugations gamma2 = g gamma1 g^-1;
* ``quotient_loop_groupoid``   -- even loops, all of the graded groupoid
  conjugating ordinarily, graded by the degree of the conjugator;
* ``unoriented_quotient_loop_groupoid`` -- even loops with the reflection
  action gamma2 = w gamma1^pi(w) w^-1 (odd conjugators also invert);
* ``components``        -- connected components with the odd-loop /
  paired / even classification;
* ``integrate``         -- exact groupoid integral of a closed 0-cochain.

Everything is immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .phase import Phase, PhaseSum


class GroupoidError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A construction would materialize more entries than the budget allows."""


class FiniteGroupoid:
    """A finite groupoid on dense integer ids, optionally Z2-graded.

    grading[m] is +1/-1 per morphism; ``grading is None`` means ungraded.
    obj_data / mor_data carry construction provenance (e.g. loop pairs)
    and obj_names / mor_names the printable labels used in file formats.
    """

    def __init__(self, n_objects, src, tgt, comp, ident, inv, grading=None,
                 obj_names=None, mor_names=None, obj_data=None, mor_data=None):
        self.n_objects = n_objects
        self.src = list(src)
        self.tgt = list(tgt)
        self.comp = dict(comp)
        self.ident = list(ident)
        self.inv = list(inv)
        self.grading = None if grading is None else list(grading)
        self.obj_names = list(obj_names) if obj_names else [f"x{i}" for i in range(n_objects)]
        self.mor_names = list(mor_names) if mor_names else [f"m{i}" for i in range(len(self.src))]
        self.obj_data = list(obj_data) if obj_data else [None] * n_objects
        self.mor_data = list(mor_data) if mor_data else [None] * len(self.src)
        self.out = [[] for _ in range(n_objects)]
        for m, s in enumerate(self.src):
            self.out[s].append(m)
        self._mor_index = {name: m for m, name in enumerate(self.mor_names)}

    # -- basic queries ----------------------------------------------------

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    @property
    def is_graded(self) -> bool:
        return self.grading is not None

    def degree(self, m: int) -> int:
        return 1 if self.grading is None else self.grading[m]

    def compose(self, m2: int, m1: int) -> int:
        """m2 after m1; raises KeyError if tgt(m1) != src(m2)."""
        return self.comp[(m2, m1)]

    def compose_many(self, *ms: int) -> int:
        """Compose ms[-1] first (paper order: leftmost applied last)."""
        acc = ms[-1]
        for m in reversed(ms[:-1]):
            acc = self.comp[(m, acc)]
        return acc

    def conjugate(self, w: int, g: int) -> int:
        """w g w^-1 (requires src(g) = tgt(g) = src(w))."""
        return self.comp[(self.comp[(w, g)], self.inv[w])]

    def power(self, g: int, e: int) -> int:
        if e == 1:
            return g
        if e == -1:
            return self.inv[g]
        raise ValueError("only exponents +1/-1 occur")

    def automorphisms(self, x: int) -> list[int]:
        return [m for m in self.out[x] if self.tgt[m] == x]

    def morphism_by_name(self, name: str) -> int:
        return self._mor_index[name]

    def is_identity(self, m: int) -> bool:
        return self.ident[self.src[m]] == m

    # -- validation --------------------------------------------------------

    def validate(self, assoc_cap: int = 200) -> None:
        """Check the category axioms; associativity exhaustively when small."""
        n = self.n_morphisms
        for x in range(self.n_objects):
            e = self.ident[x]
            if self.src[e] != x or self.tgt[e] != x:
                raise GroupoidError(f"identity of object {x} is not an endomorphism")
        for m in range(n):
            e_s, e_t = self.ident[self.src[m]], self.ident[self.tgt[m]]
            if self.comp[(m, e_s)] != m or self.comp[(e_t, m)] != m:
                raise GroupoidError(f"identity not neutral at morphism {m}")
            i = self.inv[m]
            if self.comp[(i, m)] != self.ident[self.src[m]]:
                raise GroupoidError(f"inverse fails at morphism {m}")
        for (m2, m1), m in self.comp.items():
            if self.tgt[m1] != self.src[m2]:
                raise GroupoidError("composition table has a non-composable pair")
            if self.src[m] != self.src[m1] or self.tgt[m] != self.tgt[m2]:
                raise GroupoidError("composite has wrong endpoints")
        if self.grading is not None:
            for (m2, m1), m in self.comp.items():
                if self.grading[m] != self.grading[m2] * self.grading[m1]:
                    raise GroupoidError("grading is not functorial")
            for x in range(self.n_objects):
                if self.grading[self.ident[x]] != 1:
                    raise GroupoidError("identity has odd degree")
        if n <= assoc_cap:
            for m1 in range(n):
                for m2 in self.out[self.tgt[m1]]:
                    m21 = self.comp[(m2, m1)]
                    for m3 in self.out[self.tgt[m2]]:
                        if self.comp[(m3, m21)] != self.comp[(self.comp[(m3, m2)], m1)]:
                            raise GroupoidError("associativity fails")

    @property
    def strongly_nontrivial(self) -> bool:
        """Every object is the source of some odd morphism."""
        if self.grading is None:
            return False
        return all(any(self.grading[m] == -1 for m in self.out[x])
                   for x in range(self.n_objects))

    # -- components ---------------------------------------------------------

    def component_partition(self) -> list[list[int]]:
        parent = list(range(self.n_objects))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for m in range(self.n_morphisms):
            ra, rb = find(self.src[m]), find(self.tgt[m])
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, list[int]] = {}
        for x in range(self.n_objects):
            groups.setdefault(find(x), []).append(x)
        return [groups[r] for r in sorted(groups)]


ODD_LOOP = "ODD_LOOP"
PAIRED = "PAIRED"
EVEN = "EVEN"


@dataclass
class Component:
    objects: list[int]
    base: int
    aut: list[int] = field(repr=False)
    classification: str | None = None


def components(g: FiniteGroupoid) -> list[Component]:
    """Connected components with base object, automorphism group and, for
    graded input, the odd-loop / paired / even classification."""
    result = []
    for objs in g.component_partition():
        base = objs[0]
        cls = None
        if g.is_graded:
            has_odd_loop = any(
                g.grading[m] == -1 for x in objs for m in g.automorphisms(x))
            has_odd = any(g.grading[m] == -1 for x in objs for m in g.out[x])
            cls = ODD_LOOP if has_odd_loop else (PAIRED if has_odd else EVEN)
        result.append(Component(objs, base, g.automorphisms(base), cls))
    return result


def integrate(g: FiniteGroupoid, beta) -> PhaseSum:
    """Exact integral of a closed 0-cochain: sum over objects of
    beta(x) / #(morphisms out of x).

    Closedness (beta constant along morphisms, up to the inversion action
    when beta is twisted) is checked and a GroupoidError raised otherwise.
    Equality with the component formula sum beta(base)/|Aut(base)| is a
    tested invariant.
    """
    if beta.degree != 0 or beta.groupoid is not g:
        raise GroupoidError("integrate wants a degree-0 cochain on this groupoid")
    for m in range(g.n_morphisms):
        v_src = beta.object_value(g.src[m])
        v_tgt = beta.object_value(g.tgt[m])
        want = v_src.act(g.degree(m)) if beta.twist == "pi" else v_src
        if v_tgt != want:
            raise GroupoidError(
                f"0-cochain is not closed along morphism {g.mor_names[m]}")
    total = PhaseSum.zero()
    for x in range(g.n_objects):
        total = total + PhaseSum.of(beta.object_value(x), Fraction(1, len(g.out[x])))
    return total


# ---------------------------------------------------------------------------
# functors


class Functor:
    def __init__(self, dom: FiniteGroupoid, cod: FiniteGroupoid,
                 obj_map: list[int], mor_map: list[int], check: bool = True):
        self.dom, self.cod = dom, cod
        self.obj_map = list(obj_map)
        self.mor_map = list(mor_map)
        if check:
            self.validate()

    def validate(self) -> None:
        d, c = self.dom, self.cod
        for m in range(d.n_morphisms):
            fm = self.mor_map[m]
            if c.src[fm] != self.obj_map[d.src[m]] or c.tgt[fm] != self.obj_map[d.tgt[m]]:
                raise GroupoidError("functor breaks sources/targets")
        for x in range(d.n_objects):
            if self.mor_map[d.ident[x]] != c.ident[self.obj_map[x]]:
                raise GroupoidError("functor breaks identities")
        for (m2, m1), m in d.comp.items():
            if c.comp[(self.mor_map[m2], self.mor_map[m1])] != self.mor_map[m]:
                raise GroupoidError("functor breaks composition")

    def __call__(self, m: int) -> int:
        return self.mor_map[m]

    def compose(self, other: "Functor") -> "Functor":
        """self after other."""
        return Functor(other.dom, self.cod,
                       [self.obj_map[x] for x in other.obj_map],
                       [self.mor_map[m] for m in other.mor_map], check=False)

    def is_degree_preserving(self) -> bool:
        return (self.dom.is_graded and self.cod.is_graded and
                all(self.dom.grading[m] == self.cod.grading[self.mor_map[m]]
                    for m in range(self.dom.n_morphisms)))


# ---------------------------------------------------------------------------
# graded groups and their classifying groupoids


class GradedGroup:
    """A finite group with a +/-1 grading homomorphism.

    Elements are 0..n-1 with 0 the identity; mul is the full table."""

    def __init__(self, mul: list[list[int]], grading: list[int],
                 names: list[str] | None = None, label: str = "G"):
        n = len(mul)
        self.n = n
        self.mul = [list(row) for row in mul]
        self.grading = list(grading)
        self.names = list(names) if names else [f"g{i}" for i in range(n)]
        self.label = label
        if any(self.mul[0][j] != j or self.mul[j][0] != j for j in range(n)):
            raise GroupoidError("element 0 is not an identity")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                        raise GroupoidError("multiplication table is not associative")
        self.inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.mul[a][b] == 0:
                    self.inv[a] = b
        if any(i is None for i in self.inv):
            raise GroupoidError("table has a non-invertible element")
        if self.grading[0] != 1 or any(
                self.grading[self.mul[a][b]] != self.grading[a] * self.grading[b]
                for a in range(n) for b in range(n)):
            raise GroupoidError("grading is not a homomorphism to {+1,-1}")

    @property
    def kernel(self) -> list[int]:
        return [a for a in range(self.n) if self.grading[a] == 1]

    def classifying_groupoid(self) -> FiniteGroupoid:
        """B(G): one object, morphisms the group elements."""
        n = self.n
        comp = {(a, b): self.mul[a][b] for a in range(n) for b in range(n)}
        g = FiniteGroupoid(1, [0] * n, [0] * n, comp, [0], list(self.inv),
                           grading=list(self.grading),
                           obj_names=["pt"], mor_names=list(self.names))
        g.group = self
        return g


def _mul_from_pairs(elements, op):
    index = {e: i for i, e in enumerate(elements)}
    return [[index[op(a, b)] for b in elements] for a in elements]


def build_graded_group(spec: dict) -> GradedGroup:
    """Constructors for the builtin families.

    spec: {"family": "cyclic"|"dihedral"|"symmetric"|"product_Z2"|
           "abelian"|"explicit", ...params, "grading": "mod2"|"sign"|
           "projection"|"trivial"|[signs]}
    """
    family = spec.get("family")
    grading_kind = spec.get("grading")
    if family == "cyclic":
        n = int(spec["n"])
        mul = [[(a + b) % n for b in range(n)] for a in range(n)]
        names = [str(a) for a in range(n)]
        if grading_kind == "mod2":
            if n % 2:
                raise GroupoidError("mod2 grading needs even order: no surjection to Z2")
            grading = [(-1) ** a for a in range(n)]
        elif grading_kind in (None, "trivial"):
            grading = [1] * n
        else:
            raise GroupoidError(f"unsupported grading {grading_kind!r} for cyclic")
        return GradedGroup(mul, grading, names, label=f"Z{n}")
    if family == "abelian":
        factors = [int(k) for k in spec["factors"]]
        elems = [()]
        for k in factors:
            elems = [e + (a,) for e in elems for a in range(k)]
        elems.sort()
        mul = _mul_from_pairs(
            elems, lambda a, b: tuple((x + y) % k for x, y, k in zip(a, b, factors)))
        names = ["".join(map(str, e)) for e in elems]
        grading = [1] * len(elems)
        if isinstance(grading_kind, list):
            grading = list(grading_kind)
        elif grading_kind not in (None, "trivial"):
            raise GroupoidError("abelian family takes trivial or explicit grading")
        return GradedGroup(mul, grading, names,
                           label="Z" + "xZ".join(map(str, factors)))
    if family == "dihedral":
        n = int(spec["n"])
        elems = [(r, s) for s in (0, 1) for r in range(n)]
        elems.sort(key=lambda e: (e[1], e[0]))

        def op(a, b):
            r1, s1 = a
            r2, s2 = b
            # (r1, s1) * (r2, s2): reflections conjugate rotations to inverses
            return ((r1 + (r2 if s1 == 0 else -r2)) % n, s1 ^ s2)

        mul = _mul_from_pairs(elems, op)
        names = [("r%d" % r) + ("s" if s else "") for r, s in elems]
        if grading_kind == "sign" or grading_kind is None:
            grading = [(-1) ** s for _, s in elems]
        elif grading_kind == "trivial":
            grading = [1] * len(elems)
        else:
            raise GroupoidError(f"unsupported grading {grading_kind!r} for dihedral")
        return GradedGroup(mul, grading, names, label=f"D{n}")
    if family == "symmetric":
        n = int(spec["n"])
        perms = _all_perms(tuple(range(n)))
        perms.sort(key=lambda p: (_perm_sign(p) == -1, p))

        def op(a, b):
            return tuple(a[b[i]] for i in range(n))  # a after b

        mul = _mul_from_pairs(perms, op)
        names = ["".join(map(str, p)) for p in perms]
        if grading_kind == "sign":
            grading = [_perm_sign(p) for p in perms]
        elif grading_kind in (None, "trivial"):
            grading = [1] * len(perms)
        else:
            raise GroupoidError(f"unsupported grading {grading_kind!r} for symmetric")
        return GradedGroup(mul, grading, names, label=f"S{n}")
    if family == "product_Z2":
        base = spec["base"]
        if isinstance(base, dict):
            basegrp = build_graded_group({**base, "grading": "trivial"})
        else:
            basegrp = base
        n = basegrp.n
        mul = [[0] * (2 * n) for _ in range(2 * n)]
        for a in range(n):
            for ea in (0, 1):
                for b in range(n):
                    for eb in (0, 1):
                        mul[a + n * ea][b + n * eb] = basegrp.mul[a][b] + n * (ea ^ eb)
        names = [basegrp.names[a] + ("+" if e == 0 else "-")
                 for e in (0, 1) for a in range(n)]
        grading = [1] * n + [-1] * n
        return GradedGroup(mul, grading, names, label=basegrp.label + "xZ2")
    if family == "explicit":
        return GradedGroup(spec["table"], spec["grading"],
                           spec.get("names"), label=spec.get("label", "G"))
    raise GroupoidError(f"unknown group family {family!r}")


def _all_perms(base):
    if len(base) <= 1:
        return [tuple(base)]
    out = []
    for i in range(len(base)):
        for rest in _all_perms(base[:i] + base[i + 1:]):
            out.append((base[i],) + rest)
    return out


def _perm_sign(p):
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def action_groupoid(group: GradedGroup, x_set: list, action) -> FiniteGroupoid:
    """X//G for a left action; grading inherited from the group.

    ``action(g_index, x)`` must return an element of x_set; the identity
    must act trivially and the action respect multiplication.
    """
    index = {x: i for i, x in enumerate(x_set)}
    for x in x_set:
        if action(0, x) != x:
            raise GroupoidError("identity does not act trivially")
    for a in range(group.n):
        for b in range(group.n):
            for x in x_set:
                if action(group.mul[a][b], x) != action(a, action(b, x)):
                    raise GroupoidError("action table incompatible with multiplication")
    src, tgt, grading, names, mor_data = [], [], [], [], []
    mid = {}
    for i, x in enumerate(x_set):
        for g in range(group.n):
            m = len(src)
            mid[(g, i)] = m
            src.append(i)
            tgt.append(index[action(g, x)])
            grading.append(group.grading[g])
            names.append(f"{group.names[g]}@{x}")
            mor_data.append(g)
    comp = {}
    for (g1, i1), m1 in mid.items():
        j = tgt[m1]
        for g2 in range(group.n):
            comp[(mid[(g2, j)], m1)] = mid[(group.mul[g2][g1], i1)]
    ident = [mid[(0, i)] for i in range(len(x_set))]
    # the inverse of (g acting at x) is g^-1 based at g.x
    inv = [mid[(group.inv[mor_data[m]], tgt[m])] for m in range(len(src))]
    return FiniteGroupoid(len(x_set), src, tgt, comp, ident, inv,
                          grading=grading, obj_names=[str(x) for x in x_set],
                          mor_names=names, mor_data=mor_data)


# ---------------------------------------------------------------------------
# double cover


def double_cover(ghat: FiniteGroupoid):
    """Explicit model of the double cover classified by the grading.

    Returns (cover, proj, deck): objects are (x, eps), a morphism w lifts
    from (x1, eps1) to (x2, pi(w) * eps1); deck flips eps and fixes w.
    """
    if not ghat.is_graded:
        raise GroupoidError("double cover needs a graded groupoid")
    objs = [(x, e) for x in range(ghat.n_objects) for e in (1, -1)]
    oindex = {o: i for i, o in enumerate(objs)}
    src, tgt, names, mor_data = [], [], [], []
    mid = {}
    for i, (x, e) in enumerate(objs):
        for w in ghat.out[x]:
            m = len(src)
            mid[(w, i)] = m
            src.append(i)
            tgt.append(oindex[(ghat.tgt[w], ghat.grading[w] * e)])
            names.append(f"{ghat.mor_names[w]}^{'+' if e == 1 else '-'}")
            mor_data.append(w)
    comp = {}
    for (w1, i1), m1 in mid.items():
        j = tgt[m1]
        for w2 in ghat.out[objs[j][0]]:
            comp[(mid[(w2, j)], m1)] = mid[(ghat.comp[(w2, w1)], i1)]
    ident = [mid[(ghat.ident[x], i)] for i, (x, e) in enumerate(objs)]
    inv = [mid[(ghat.inv[mor_data[m]], tgt[m])] for m in range(len(src))]
    cover = FiniteGroupoid(len(objs), src, tgt, comp, ident, inv, grading=None,
                           obj_names=[f"{ghat.obj_names[x]}^{'+' if e == 1 else '-'}"
                                      for x, e in objs],
                           mor_names=names, obj_data=objs, mor_data=mor_data)
    proj = Functor(cover, ghat, [x for x, _ in objs], mor_data, check=False)
    deck_obj = [oindex[(x, -e)] for x, e in objs]
    deck_mor = [mid[(mor_data[m], deck_obj[src[m]])] for m in range(len(src))]
    deck = Functor(cover, cover, deck_obj, deck_mor, check=False)
    return cover, proj, deck


# ---------------------------------------------------------------------------
# loop groupoids


def _loop_build(parent: FiniteGroupoid, even_only: bool, reflect: bool,
                graded_output: bool, budget: int | None = None):
    loops = [(x, g) for x in range(parent.n_objects)
             for g in parent.automorphisms(x)
             if not even_only or parent.degree(g) == 1]
    lindex = {l: i for i, l in enumerate(loops)}
    src, tgt, grading, names, mor_data = [], [], [], [], []
    mid = {}
    n_expected = sum(len(parent.out[x]) for x, _ in loops)
    if budget is not None and n_expected > budget:
        raise BudgetExceeded(
            f"loop groupoid needs {n_expected} morphisms, budget is {budget}")
    for i, (x, gam) in enumerate(loops):
        for w in parent.out[x]:
            gam_w = gam if not reflect else parent.power(gam, parent.degree(w))
            target_loop = (parent.tgt[w], parent.conjugate(w, gam_w))
            m = len(src)
            mid[(w, i)] = m
            src.append(i)
            tgt.append(lindex[target_loop])
            grading.append(parent.degree(w))
            names.append(f"{parent.mor_names[w]}@{parent.mor_names[gam]}")
            mor_data.append(w)
    comp = {}
    for (w1, i1), m1 in mid.items():
        j = tgt[m1]
        jx = loops[j][0]
        for w2 in parent.out[jx]:
            comp[(mid[(w2, j)], m1)] = mid[(parent.comp[(w2, w1)], i1)]
    ident = [mid[(parent.ident[x], i)] for i, (x, _) in enumerate(loops)]
    inv = [mid[(parent.inv[mor_data[m]], tgt[m])] for m in range(len(src))]
    g = FiniteGroupoid(len(loops), src, tgt, comp, ident, inv,
                       grading=grading if graded_output else None,
                       obj_names=[f"({parent.obj_names[x]},{parent.mor_names[gm]})"
                                  for x, gm in loops],
                       mor_names=names, obj_data=loops, mor_data=mor_data)
    g.parent = parent
    return g


def loop_groupoid(g: FiniteGroupoid, budget: int | None = None) -> FiniteGroupoid:
    """Objects are all loops (x, gamma); morphisms conjugate ordinarily."""
    out = _loop_build(g, even_only=False, reflect=False,
                      graded_output=g.is_graded, budget=budget)
    out.kind = "loop"
    return out


def quotient_loop_groupoid(ghat: FiniteGroupoid, budget: int | None = None) -> FiniteGroupoid:
    """Even loops, conjugated ordinarily by all of the graded groupoid."""
    if not ghat.is_graded:
        raise GroupoidError("quotient loop groupoid needs a graded groupoid")
    out = _loop_build(ghat, even_only=True, reflect=False,
                      graded_output=True, budget=budget)
    out.kind = "loop_quotient"
    return out


def unoriented_quotient_loop_groupoid(ghat: FiniteGroupoid,
                                      budget: int | None = None) -> FiniteGroupoid:
    """Even loops with the reflection action: odd conjugators invert the loop."""
    if not ghat.is_graded:
        raise GroupoidError("unoriented quotient loop groupoid needs a graded groupoid")
    out = _loop_build(ghat, even_only=True, reflect=True,
                      graded_output=True, budget=budget)
    out.kind = "loop_reflect"
    return out


def loop_cover_functor(lam_g: FiniteGroupoid, quotient: FiniteGroupoid) -> Functor:
    """The canonical 2:1 functor from the loop groupoid of the double cover
    onto a (unoriented) quotient loop groupoid.

    ``lam_g`` must be loop_groupoid(double_cover(ghat)) and ``quotient`` one
    of the two quotients of the same ghat; on a loop ((x, eps), gamma) the
    unoriented functor sends the loop to gamma^eps, the oriented one to gamma.
    """
    cover, parent = lam_g.parent, quotient.parent
    reflect = quotient.kind == "loop_reflect"
    lindex = {l: i for i, l in enumerate(quotient.obj_data)}
    obj_map = []
    for (cx, gam) in lam_g.obj_data:
        x, eps = cover.obj_data[cx]
        gam_hat = cover.mor_data[gam]
        if reflect and eps == -1:
            gam_hat = parent.inv[gam_hat]
        obj_map.append(lindex[(x, gam_hat)])
    qmid = {(quotient.mor_data[m], quotient.src[m]): m
            for m in range(quotient.n_morphisms)}
    mor_map = [qmid[(cover.mor_data[lam_g.mor_data[m]], obj_map[lam_g.src[m]])]
               for m in range(lam_g.n_morphisms)]
    return Functor(lam_g, quotient, obj_map, mor_map)


def loop_deck_functor(lam_g: FiniteGroupoid, reflect: bool) -> Functor:
    """Deck transformation of Lambda(double cover): flips the sheet, and for
    the unoriented quotient also inverts the loop."""
    cover = lam_g.parent
    lindex = {l: i for i, l in enumerate(lam_g.obj_data)}
    cover_oindex = {o: i for i, o in enumerate(cover.obj_data)}
    cover_mid = {(cover.mor_data[m], cover.src[m]): m
                 for m in range(cover.n_morphisms)}
    deck_obj = []
    for (cx, gam) in lam_g.obj_data:
        x, eps = cover.obj_data[cx]
        new_cx = cover_oindex[(x, -eps)]
        w_hat = cover.mor_data[gam if not reflect else cover.inv[gam]]
        deck_obj.append(lindex[(new_cx, cover_mid[(w_hat, new_cx)])])
    mid = {(lam_g.mor_data[m], lam_g.src[m]): m for m in range(lam_g.n_morphisms)}
    deck_mor = []
    for m in range(lam_g.n_morphisms):
        w = lam_g.mor_data[m]  # a cover morphism; keep its underlying arrow
        new_src = deck_obj[lam_g.src[m]]
        new_cx = lam_g.obj_data[new_src][0]
        deck_mor.append(mid[(cover_mid[(cover.mor_data[w], new_cx)], new_src)])
    return Functor(lam_g, lam_g, deck_obj, deck_mor)


def kernel_inclusion(ghat: FiniteGroupoid) -> tuple[FiniteGroupoid, Functor]:
    """The even (degree +1) subgroupoid and its inclusion."""
    keep = [m for m in range(ghat.n_morphisms) if ghat.degree(m) == 1]
    remap = {m: i for i, m in enumerate(keep)}
    comp = {(remap[m2], remap[m1]): remap[m]
            for (m2, m1), m in ghat.comp.items() if m2 in remap and m1 in remap}
    sub = FiniteGroupoid(ghat.n_objects,
                         [ghat.src[m] for m in keep], [ghat.tgt[m] for m in keep],
                         comp, [remap[ghat.ident[x]] for x in range(ghat.n_objects)],
                         [remap[ghat.inv[m]] for m in keep],
                         grading=None,
                         obj_names=list(ghat.obj_names),
                         mor_names=[ghat.mor_names[m] for m in keep],
                         mor_data=keep)
    incl = Functor(sub, ghat, list(range(ghat.n_objects)), keep, check=False)
    return sub, incl
