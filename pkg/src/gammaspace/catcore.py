"""Finite categories with total composition tables, functors, equivalence
checking, subgroupoids, and (co)slices."""

from __future__ import annotations

import itertools

from .verdicts import Budget, BudgetExceededError, Verdict, FAILS, HOLDS, INCONCLUSIVE


class FinCat:
    """A finite category: objects, arrows with src/dst, identities, and a
    dense composition table (associativity and units checked exhaustively)."""

    def __init__(self, objects, arrows, identities, compose):
        self.objects = tuple(sorted(objects))
        self.arrows = dict(sorted(arrows.items()))  # id -> (src, dst)
        self.identities = dict(identities)          # obj -> arrow id
        self.compose_table = dict(compose)          # (g, f) -> g o f
        self._homs = {}

    def src(self, f):
        return self.arrows[f][0]

    def dst(self, f):
        return self.arrows[f][1]

    def compose(self, g, f):
        """g o f (f first)."""
        return self.compose_table[(g, f)]

    def hom(self, a, b):
        key = (a, b)
        if key not in self._homs:
            self._homs[key] = tuple(
                f for f, (s, d) in self.arrows.items() if s == a and d == b
            )
        return self._homs[key]

    def arrow_ids(self):
        return tuple(self.arrows.keys())

    def is_identity(self, f):
        return self.identities.get(self.src(f)) == f

    def validate(self):
        for obj, e in self.identities.items():
            if self.arrows[e] != (obj, obj):
                raise ValueError(f"identity of {obj!r} has wrong endpoints")
        for g, (gs, gd) in self.arrows.items():
            for f, (fs, fd) in self.arrows.items():
                if fd == gs:
                    if (g, f) not in self.compose_table:
                        raise ValueError(f"composite {g!r} o {f!r} missing")
                    h = self.compose_table[(g, f)]
                    if self.arrows[h] != (fs, gd):
                        raise ValueError(f"composite {g!r} o {f!r} has wrong endpoints")
        for f, (fs, fd) in self.arrows.items():
            if self.compose(f, self.identities[fs]) != f:
                raise ValueError(f"right unit law fails at {f!r}")
            if self.compose(self.identities[fd], f) != f:
                raise ValueError(f"left unit law fails at {f!r}")
        for h in self.arrow_ids():
            for g in self.arrow_ids():
                if self.dst(g) != self.src(h):
                    continue
                for f in self.arrow_ids():
                    if self.dst(f) != self.src(g):
                        continue
                    if self.compose(self.compose(h, g), f) != self.compose(
                        h, self.compose(g, f)
                    ):
                        raise ValueError(f"associativity fails at {h!r},{g!r},{f!r}")
        return self

    def is_iso_arrow(self, f):
        a, b = self.arrows[f]
        for g in self.hom(b, a):
            if (
                self.compose(g, f) == self.identities[a]
                and self.compose(f, g) == self.identities[b]
            ):
                return True
        return False

    def iso_objects(self, a, b):
        return any(self.is_iso_arrow(f) for f in self.hom(a, b))

    def iso_classes(self):
        classes = []
        placed = set()
        for a in self.objects:
            if a in placed:
                continue
            cls = [b for b in self.objects if self.iso_objects(a, b) and self.iso_objects(b, a)]
            cls = sorted(set(cls) | {a})
            placed.update(cls)
            classes.append(tuple(cls))
        return classes

    def __repr__(self):
        return f"FinCat({len(self.objects)} objects, {len(self.arrows)} arrows)"


class CatFunctor:
    def __init__(self, source: FinCat, target: FinCat, on_objects, on_arrows):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self.on_arrows = dict(on_arrows)

    def obj(self, a):
        return self.on_objects[a]

    def arr(self, f):
        return self.on_arrows[f]

    def validate(self):
        for f, (a, b) in self.source.arrows.items():
            img = self.arr(f)
            if self.target.arrows[img] != (self.obj(a), self.obj(b)):
                raise ValueError(f"functor breaks endpoints at {f!r}")
        for a in self.source.objects:
            if self.arr(self.source.identities[a]) != self.target.identities[self.obj(a)]:
                raise ValueError(f"functor breaks identity at {a!r}")
        for g in self.source.arrow_ids():
            for f in self.source.arrow_ids():
                if self.source.dst(f) != self.source.src(g):
                    continue
                if self.arr(self.source.compose(g, f)) != self.target.compose(
                    self.arr(g), self.arr(f)
                ):
                    raise ValueError(f"functor breaks composition at {g!r} o {f!r}")
        return self

    def then(self, other: "CatFunctor") -> "CatFunctor":
        assert other.source is self.target
        return CatFunctor(
            self.source,
            other.target,
            {a: other.obj(v) for a, v in self.on_objects.items()},
            {f: other.arr(v) for f, v in self.on_arrows.items()},
        )

    def is_full_faithful_ess_surjective(self):
        c, d = self.source, self.target
        for a in c.objects:
            for b in c.objects:
                images = [self.arr(f) for f in c.hom(a, b)]
                if len(set(images)) != len(images):
                    return False, f"not faithful on hom({a!r},{b!r})"
                if set(images) != set(d.hom(self.obj(a), self.obj(b))):
                    return False, f"not full on hom({a!r},{b!r})"
        hit = set(self.on_objects.values())
        for y in d.objects:
            if not any(d.iso_objects(y, x) for x in hit):
                return False, f"not essentially surjective at {y!r}"
        return True, None

    def key(self):
        return (tuple(sorted(self.on_objects.items())), tuple(sorted(self.on_arrows.items())))

    def __eq__(self, other):
        return isinstance(other, CatFunctor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def identity_functor(c: FinCat) -> CatFunctor:
    return CatFunctor(c, c, {a: a for a in c.objects}, {f: f for f in c.arrow_ids()})


# ---------------------------------------------------------------------------
# small standard categories


def terminal_category() -> FinCat:
    return FinCat(["*"], {"id*": ("*", "*")}, {"*": "id*"}, {("id*", "id*"): "id*"}).validate()


def poset_category(n) -> FinCat:
    """The poset 0 < 1 < ... < n as a category."""
    objects = [str(i) for i in range(n + 1)]
    arrows = {}
    identities = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            name = f"le{i}{j}"
            arrows[name] = (str(i), str(j))
            if i == j:
                identities[str(i)] = name
    compose = {}
    for (g, (gs, gd)) in arrows.items():
        for (f, (fs, fd)) in arrows.items():
            if fd == gs:
                compose[(g, f)] = f"le{fs}{gd}"
    return FinCat(objects, arrows, identities, compose).validate()


def walking_iso_category() -> FinCat:
    """Two objects, one isomorphism each way."""
    arrows = {
        "id0": ("0", "0"), "id1": ("1", "1"), "u": ("0", "1"), "v": ("1", "0"),
    }
    compose = {
        ("id0", "id0"): "id0", ("id1", "id1"): "id1",
        ("u", "id0"): "u", ("id1", "u"): "u",
        ("v", "id1"): "v", ("id0", "v"): "v",
        ("v", "u"): "id0", ("u", "v"): "id1",
    }
    return FinCat(["0", "1"], arrows, {"0": "id0", "1": "id1"}, compose).validate()


def discrete_category(names) -> FinCat:
    arrows = {f"id{a}": (a, a) for a in names}
    compose = {(f"id{a}", f"id{a}"): f"id{a}" for a in names}
    return FinCat(list(names), arrows, {a: f"id{a}" for a in names}, compose).validate()


def cyclic_group_category(n) -> FinCat:
    """Z/n as a one-object groupoid."""
    arrows = {f"g{i}": ("*", "*") for i in range(n)}
    compose = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    return FinCat(["*"], arrows, {"*": "g0"}, compose).validate()


def monoid_category(elements, op, unit) -> FinCat:
    """A finite monoid as a one-object category."""
    arrows = {f"m{e}": ("*", "*") for e in elements}
    compose = {
        (f"m{a}", f"m{b}"): f"m{op(a, b)}" for a in elements for b in elements
    }
    return FinCat(["*"], arrows, {"*": f"m{unit}"}, compose).validate()


# ---------------------------------------------------------------------------
# constructions


def max_subgroupoid(c: FinCat):
    """Largest subgroupoid: same objects, only the isomorphisms."""
    arrows = {f: c.arrows[f] for f in c.arrow_ids() if c.is_iso_arrow(f)}
    compose = {
        (g, f): c.compose(g, f)
        for g in arrows
        for f in arrows
        if c.dst(f) == c.src(g)
    }
    sub = FinCat(c.objects, arrows, dict(c.identities), compose).validate()
    incl = CatFunctor(sub, c, {a: a for a in sub.objects}, {f: f for f in arrows})
    return sub, incl.validate()


def product_category(c: FinCat, d: FinCat) -> FinCat:
    objects = [f"{a},{b}" for a in c.objects for b in d.objects]
    arrows = {}
    identities = {}
    for f, (fs, fd) in c.arrows.items():
        for g, (gs, gd) in d.arrows.items():
            name = f"{f},{g}"
            arrows[name] = (f"{fs},{gs}", f"{fd},{gd}")
    for a in c.objects:
        for b in d.objects:
            identities[f"{a},{b}"] = f"{c.identities[a]},{d.identities[b]}"
    compose = {}
    for (f2, g2) in [(f, g) for f in c.arrow_ids() for g in d.arrow_ids()]:
        for (f1, g1) in [(f, g) for f in c.arrow_ids() for g in d.arrow_ids()]:
            if c.dst(f1) == c.src(f2) and d.dst(g1) == d.src(g2):
                compose[(f"{f2},{g2}", f"{f1},{g1}")] = (
                    f"{c.compose(f2, f1)},{d.compose(g2, g1)}"
                )
    return FinCat(objects, arrows, identities, compose).validate()


def full_subcategory(c: FinCat, keep_objects) -> FinCat:
    keep = set(keep_objects)
    arrows = {f: e for f, e in c.arrows.items() if e[0] in keep and e[1] in keep}
    compose = {
        (g, f): c.compose(g, f)
        for g in arrows
        for f in arrows
        if c.dst(f) == c.src(g)
    }
    return FinCat(
        sorted(keep), arrows, {a: c.identities[a] for a in keep}, compose
    ).validate()


def all_functors(c: FinCat, d: FinCat, budget=None):
    """Every functor c -> d, by backtracking over object then arrow maps."""
    budget = budget or Budget()
    results = []
    non_id = [f for f in c.arrow_ids() if not c.is_identity(f)]

    def arrows_extend(on_objects, idx, on_arrows):
        if idx == len(non_id):
            fun = CatFunctor(c, d, on_objects, dict(on_arrows))
            try:
                fun.validate()
            except ValueError:
                return
            results.append(fun)
            return
        f = non_id[idx]
        a, b = c.arrows[f]
        for img in d.hom(on_objects[a], on_objects[b]):
            budget.spend()
            on_arrows[f] = img
            arrows_extend(on_objects, idx + 1, on_arrows)
            del on_arrows[f]

    for combo in itertools.product(d.objects, repeat=len(c.objects)):
        budget.spend()
        on_objects = dict(zip(c.objects, combo))
        on_arrows = {c.identities[a]: d.identities[on_objects[a]] for a in c.objects}
        arrows_extend(on_objects, 0, on_arrows)
    return results


def natural_transformations(f: CatFunctor, g: CatFunctor):
    """All natural transformations f => g between parallel functors."""
    c, d = f.source, f.target
    objs = list(c.objects)
    results = []

    def extend(idx, comp):
        if idx == len(objs):
            results.append(dict(comp))
            return
        a = objs[idx]
        for t in d.hom(f.obj(a), g.obj(a)):
            comp[a] = t
            if all(
                d.compose(comp[c.dst(h)], f.arr(h)) == d.compose(g.arr(h), comp[c.src(h)])
                for h in c.arrow_ids()
                if c.src(h) in comp and c.dst(h) in comp
            ):
                extend(idx + 1, comp)
            del comp[a]

    extend(0, {})
    return results


def functor_category(d: FinCat, c: FinCat) -> tuple[FinCat, dict, dict]:
    """The category of functors d -> c and natural transformations.

    Returns (category, object names -> functors, arrow names -> transforms).
    """
    functors = all_functors(d, c)
    functors.sort(key=lambda fn: fn.key())
    obj_names = {f"F{i}": fn for i, fn in enumerate(functors)}
    arrows = {}
    arrow_data = {}
    identities = {}
    for (na, fa) in obj_names.items():
        for (nb, fb) in obj_names.items():
            for k, comp in enumerate(natural_transformations(fa, fb)):
                name = f"n{na}_{nb}_{k}"
                arrows[name] = (na, nb)
                arrow_data[name] = comp
                if na == nb and all(
                    comp[a] == c.identities[fa.obj(a)] for a in d.objects
                ):
                    identities[na] = name
    compose = {}
    index = {
        (s, t, tuple(sorted(comp.items()))): name
        for name, comp in arrow_data.items()
        for (s, t) in [arrows[name]]
    }
    for g, (gs, gd) in arrows.items():
        for f, (fs, fd) in arrows.items():
            if fd != gs:
                continue
            comp = {
                a: c.compose(arrow_data[g][a], arrow_data[f][a]) for a in d.objects
            }
            compose[(g, f)] = index[(fs, gd, tuple(sorted(comp.items())))]
    cat = FinCat(obj_names.keys(), arrows, identities, compose).validate()
    return cat, obj_names, arrow_data


def coslice_category(c: FinCat, base_obj):
    """base_obj / c: objects are arrows out of base_obj, morphisms are
    commuting triangles.

    Returns (category, projection functor, triangle legs) where the legs
    table sends each triangle arrow name to its underlying arrow of c.
    """
    objects = [f for f in c.arrow_ids() if c.src(f) == base_obj]
    arrows = {}
    legs = {}
    identities = {}
    for f in objects:
        for g in objects:
            for h in c.hom(c.dst(f), c.dst(g)):
                if c.compose(h, f) == g:
                    name = f"t{f}_{g}_{h}"
                    arrows[name] = (f, g)
                    legs[name] = h
    for f in objects:
        identities[f] = f"t{f}_{f}_{c.identities[c.dst(f)]}"
    compose = {}
    index = {(fg + (legs[name],)): name for name, fg in arrows.items()}
    for n2, (f2, g2) in arrows.items():
        for n1, (f1, g1) in arrows.items():
            if g1 != f2:
                continue
            compose[(n2, n1)] = index[(f1, g2, c.compose(legs[n2], legs[n1]))]
    cat = FinCat(objects, arrows, identities, compose).validate()
    proj = CatFunctor(
        cat, c, {f: c.dst(f) for f in objects}, dict(legs)
    ).validate()
    return cat, proj, legs


def slice_category(c: FinCat, base_obj):
    """c / base_obj, dual to coslice_category."""
    objects = [f for f in c.arrow_ids() if c.dst(f) == base_obj]
    arrows = {}
    legs = {}
    identities = {}
    for f in objects:
        for g in objects:
            for h in c.hom(c.src(f), c.src(g)):
                if c.compose(g, h) == f:
                    name = f"t{f}_{g}_{h}"
                    arrows[name] = (f, g)
                    legs[name] = h
    for f in objects:
        identities[f] = f"t{f}_{f}_{c.identities[c.src(f)]}"
    compose = {}
    index = {(fg + (legs[name],)): name for name, fg in arrows.items()}
    for n2, (f2, g2) in arrows.items():
        for n1, (f1, g1) in arrows.items():
            if g1 != f2:
                continue
            compose[(n2, n1)] = index[(f1, g2, c.compose(legs[n2], legs[n1]))]
    cat = FinCat(objects, arrows, identities, compose).validate()
    proj = CatFunctor(
        cat, c, {f: c.src(f) for f in objects}, dict(legs)
    ).validate()
    return cat, proj, legs


# ---------------------------------------------------------------------------
# equivalence checking


def skeleton(c: FinCat):
    """Collapse isomorphic objects: returns (skeletal category, retraction
    functor, inclusion functor)."""
    classes = c.iso_classes()
    rep = {}
    for cls in classes:
        for a in cls:
            rep[a] = cls[0]
    reps = sorted({rep[a] for a in c.objects})
    # chosen isomorphisms a -> rep(a)
    to_rep = {}
    from_rep = {}
    for a in c.objects:
        r = rep[a]
        if a == r:
            to_rep[a] = c.identities[a]
            from_rep[a] = c.identities[a]
            continue
        for f in c.hom(a, r):
            if c.is_iso_arrow(f):
                to_rep[a] = f
                for g in c.hom(r, a):
                    if (
                        c.compose(g, f) == c.identities[a]
                        and c.compose(f, g) == c.identities[r]
                    ):
                        from_rep[a] = g
                        break
                break
    skel = full_subcategory(c, reps)
    retraction = CatFunctor(
        c,
        skel,
        {a: rep[a] for a in c.objects},
        {
            f: c.compose(to_rep[c.dst(f)], c.compose(f, from_rep[c.src(f)]))
            for f in c.arrow_ids()
        },
    ).validate()
    inclusion = CatFunctor(
        skel, c, {a: a for a in skel.objects}, {f: f for f in skel.arrow_ids()}
    ).validate()
    return skel, retraction, inclusion


def cat_iso_search(c: FinCat, d: FinCat, budget=None):
    """An isomorphism of categories c -> d, or None (exhaustive)."""
    budget = budget or Budget()
    if len(c.objects) != len(d.objects) or len(c.arrows) != len(d.arrows):
        return None
    for perm in itertools.permutations(d.objects):
        budget.spend()
        on_objects = dict(zip(c.objects, perm))
        if any(
            len(c.hom(a, b)) != len(d.hom(on_objects[a], on_objects[b]))
            for a in c.objects
            for b in c.objects
        ):
            continue
        non_id = [f for f in c.arrow_ids() if not c.is_identity(f)]

        def extend(idx, on_arrows, used):
            if idx == len(non_id):
                fun = CatFunctor(c, d, on_objects, dict(on_arrows))
                try:
                    fun.validate()
                except ValueError:
                    return None
                return fun
            f = non_id[idx]
            a, b = c.arrows[f]
            for img in d.hom(on_objects[a], on_objects[b]):
                budget.spend()
                if img in used or d.is_identity(img):
                    continue
                on_arrows[f] = img
                used.add(img)
                got = extend(idx + 1, on_arrows, used)
                if got is not None:
                    return got
                used.remove(img)
                del on_arrows[f]
            return None

        start = {c.identities[a]: d.identities[on_objects[a]] for a in c.objects}
        got = extend(0, start, set())
        if got is not None:
            return got
    return None


def equivalence_check(c: FinCat, d: FinCat, budget=None) -> Verdict:
    """Equivalence of finite categories, via skeletal quotient followed by
    isomorphism search; witness is a full, faithful, essentially surjective
    functor c -> d."""
    budget = budget or Budget()
    checked = "skeletal quotient + exhaustive isomorphism search"
    if len(c.iso_classes()) != len(d.iso_classes()):
        return Verdict(FAILS, checked,
                       witness={"iso_classes": [len(c.iso_classes()), len(d.iso_classes())]})
    skel_c, retract_c, _ = skeleton(c)
    skel_d, _, include_d = skeleton(d)
    try:
        iso = cat_iso_search(skel_c, skel_d, budget=budget)
    except BudgetExceededError as e:
        return Verdict(INCONCLUSIVE, checked, witness=str(e))
    if iso is None:
        return Verdict(FAILS, checked, witness="skeletons are not isomorphic")
    witness = retract_c.then(iso).then(include_d)
    ok, why = witness.is_full_faithful_ess_surjective()
    if not ok:
        raise AssertionError(f"equivalence witness failed check: {why}")
    return Verdict(HOLDS, checked, witness=witness)


def functor_is_equivalence(f: CatFunctor) -> Verdict:
    """Is this specific functor full, faithful, and essentially surjective?"""
    ok, why = f.is_full_faithful_ess_surjective()
    if ok:
        return Verdict(HOLDS, "full+faithful+ess-surjective", witness=f)
    return Verdict(FAILS, "full+faithful+ess-surjective", witness=why)
