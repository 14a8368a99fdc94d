"""Standard complexes, lifting-property checks, and the pushout-product."""

from __future__ import annotations

import itertools

from .simplicial import (
    FinSimpSet,
    SimplexRef,
    SimpMap,
    Colimit,
    delta_tuple,
    from_elements,
    hom_set,
    identity_map,
    inclusion_map,
    pairing,
    product,
    product_map,
    sigma_tuple,
    surj_to_word,
)
from .verdicts import Budget, BudgetExceededError, Verdict, FAILS, HOLDS, INCONCLUSIVE


def _tuple_name(t):
    return "".join(str(v) for v in t)


def standard_simplex(n, bound=None) -> FinSimpSet:
    """Delta[n]: nondegenerate m-cells are the (m+1)-subsets of 0..n."""
    bound = n if bound is None else bound
    cells = {}
    for m in range(min(n, bound) + 1):
        cells[m] = {}
        for verts in itertools.combinations(range(n + 1), m + 1):
            name = _tuple_name(verts)
            faces = tuple(
                SimplexRef(_tuple_name(verts[:i] + verts[i + 1 :]))
                for i in range(m + 1)
            ) if m else ()
            cells[m][name] = faces
    return FinSimpSet(bound, cells, cosk=2).validate()


def standard_point(bound=0) -> FinSimpSet:
    return standard_simplex(0, bound=bound)


def pointed_point(bound=0) -> FinSimpSet:
    return FinSimpSet(bound, {0: {"0": ()}}, pointed="0")


def boundary(n, bound=None) -> FinSimpSet:
    """The boundary of Delta[n]: drop the top cell.  Stored with bound n so
    the missing filler stays missing under the coskeletal reading."""
    bound = n if bound is None else bound
    full = standard_simplex(n, bound=bound)
    cells = {m: {c: full.faces_of(m, c) for c in full.cell_ids(m)} for m in range(bound + 1)}
    if n <= bound:
        del cells[n][_tuple_name(tuple(range(n + 1)))]
    return FinSimpSet(bound, cells).validate()


def horn(n, k, bound=None) -> FinSimpSet:
    """Lambda^k[n]: the boundary minus the k-th face."""
    if not (0 <= k <= n and n >= 1):
        raise ValueError(f"horn index k={k} out of range for n={n}")
    bound = n if bound is None else bound
    part = boundary(n, bound=bound)
    cells = {m: {c: part.faces_of(m, c) for c in part.cell_ids(m)} for m in range(bound + 1)}
    missing = _tuple_name(tuple(v for v in range(n + 1) if v != k))
    if n - 1 <= bound:
        del cells[n - 1][missing]
    return FinSimpSet(bound, cells).validate()


def sphere_zero(bound=1) -> FinSimpSet:
    """S^0: two points, pointed at one of them."""
    s = boundary(1, bound=bound)
    return FinSimpSet(bound, {m: {c: s.faces_of(m, c) for c in s.cell_ids(m)}
                              for m in range(bound + 1)}, pointed="0").validate()


def interval_groupoid_nerve(bound=2) -> FinSimpSet:
    """Nerve of the free isomorphism 0 <-> 1, truncated.

    Nondegenerate m-cells are the two alternating vertex chains; the nerve
    of a groupoid is 2-coskeletal, so any bound >= 2 is an exact reading.
    """
    cells = {0: {"0": (), "1": ()}}

    def chain(start, m):
        return tuple((start + i) % 2 for i in range(m + 1))

    def ref_for(verts):
        # vertex chain with consecutive repeats removed = normal form
        squeezed = [verts[0]]
        word = []
        for j in range(len(verts) - 1):
            if verts[j] == verts[j + 1]:
                word.append(j)
            else:
                squeezed.append(verts[j + 1])
        name = "0" if len(squeezed) == 1 and squeezed[0] == 0 else (
            "1" if len(squeezed) == 1 else "j" + _tuple_name(squeezed))
        return SimplexRef(name, tuple(sorted(word, reverse=True)))

    for m in range(1, bound + 1):
        cells[m] = {}
        for start in (0, 1):
            verts = chain(start, m)
            faces = tuple(ref_for(verts[:i] + verts[i + 1 :]) for i in range(m + 1))
            cells[m]["j" + _tuple_name(verts)] = faces
    return FinSimpSet(bound, cells, cosk=2, complete=False).validate()


def build_standard(kind, n=0, bound=None, k=None) -> FinSimpSet:
    """Named complexes: simplex, boundary, horn(k), point, the nerve of the
    free isomorphism, and S^0."""
    if kind == "simplex":
        return standard_simplex(n, bound=bound)
    if kind == "boundary":
        return boundary(n, bound=bound)
    if kind == "horn":
        return horn(n, k, bound=bound)
    if kind == "point":
        return standard_point(bound=bound or 0)
    if kind == "interval_groupoid_nerve":
        return interval_groupoid_nerve(bound=bound or 2)
    if kind == "s0":
        return sphere_zero(bound=bound or 1)
    raise ValueError(f"unknown standard complex {kind!r}")


def simplex_inclusion(sub: FinSimpSet, n, bound=None) -> SimpMap:
    """Inclusion of a boundary or horn into Delta[n] (shared cell names)."""
    return inclusion_map(sub, standard_simplex(n, bound=bound))


def simplex_operator_map(alpha, n_src, n_dst, bound_src=None, bound_dst=None) -> SimpMap:
    """The simplicial map Delta[n_src] -> Delta[n_dst] induced by a monotone
    vertex map alpha (tuple of length n_src+1)."""
    src = standard_simplex(n_src, bound=bound_src)
    dst = standard_simplex(n_dst, bound=bound_dst)
    assignment = {}
    for m in range(src.dim_bound + 1):
        for name in src.cell_ids(m):
            verts = tuple(int(ch) for ch in name)
            image = tuple(alpha[v] for v in verts)
            uniq = tuple(sorted(set(image)))
            word = surj_to_word(tuple(uniq.index(v) for v in image))
            assignment[(m, name)] = SimplexRef(_tuple_name(uniq), word)
    return SimpMap(src, dst, assignment).validate()


# ---------------------------------------------------------------------------
# wedge / smash of pointed sets


def wedge(x: FinSimpSet, y: FinSimpSet):
    """X v Y: glue at basepoints.  Returns (space, incl_x, incl_y)."""
    if x.pointed is None or y.pointed is None:
        raise ValueError("wedge needs pointed inputs")
    b = min(x.dim_bound, y.dim_bound)
    pt = standard_point(bound=b)
    col = Colimit(
        [pt, x, y],
        [
            (0, 1, SimpMap(pt, x, {(0, "0"): SimplexRef(x.pointed)})),
            (0, 2, SimpMap(pt, y, {(0, "0"): SimplexRef(y.pointed)})),
        ],
        pointed_at=(1, x.pointed),
    )
    return col, col.coprojection(1), col.coprojection(2)


def smash(x: FinSimpSet, y: FinSimpSet):
    """X ^ Y via the pushout of X v Y -> X x Y over the point."""
    if x.pointed is None or y.pointed is None:
        raise ValueError("smash needs pointed inputs")
    wcol, wx, wy = wedge(x, y)
    w = wcol.space
    prod_data = product(x, y)
    prod = prod_data[0]
    from .simplicial import constant_map

    into_prod = wcol.mediating(
        [
            constant_map(standard_point(bound=w.dim_bound), prod, prod.pointed),
            pairing(identity_map(x), constant_map(x, y, y.pointed), prod_data),
            pairing(constant_map(y, x, x.pointed), identity_map(y), prod_data),
        ],
        prod,
    )
    b = min(w.dim_bound, prod.dim_bound)
    pt = standard_point(bound=b)
    collapse = constant_map(w, pt, "0")
    col = Colimit([w, prod, pt], [(0, 1, into_prod), (0, 2, collapse)],
                  pointed_at=(2, "0"))
    return col.space, col


# ---------------------------------------------------------------------------
# exponentials


class Exponential:
    """The function complex x^a: n-simplices are maps Delta[n] x a -> x,
    with faces and degeneracies by precomposition on the simplex factor.

    Truncated at x's bound (or dim_cap); exact when x is coskeletal at its
    bound, e.g. for nerves.  `space` is the complex; element_of and
    ref_of_map translate between cells and the underlying maps.
    """

    def __init__(self, x: FinSimpSet, a: FinSimpSet, dim_cap=None, budget=None):
        cap = x.dim_bound if dim_cap is None else dim_cap
        budget = budget or Budget()
        self.x, self.a, self.cap = x, a, cap
        self.simplices = [standard_simplex(n) for n in range(cap + 2)]
        self.products = [product(self.simplices[n], a) for n in range(cap + 1)]
        self._maps = [
            {m.key(): m for m in hom_set(self.products[n][0], x, budget=budget)}
            for n in range(cap + 1)
        ]
        face_ops, degen_ops = {}, {}
        for n in range(1, cap + 1):
            for i in range(n + 1):
                inc = self._operator(delta_tuple(i, n), n - 1, n)
                face_ops[(n, i)] = inc
        for n in range(cap):
            for i in range(n + 1):
                degen_ops[(n, i)] = self._operator(sigma_tuple(i, n), n + 1, n)

        levels = [sorted(self._maps[n].keys()) for n in range(cap + 1)]

        def face(n, key, i):
            return face_ops[(n, i)].then(self._maps[n][key]).key()

        def degen(n, key, i):
            return degen_ops[(n, i)].then(self._maps[n][key]).key()

        self.space, self._ref_of = from_elements(cap, levels, face, degen)
        self._key_of = {}
        for n in range(cap + 1):
            for key in levels[n]:
                ref = self._ref_of(n, key)
                if not ref.degs:
                    self._key_of[ref.base] = (n, key)

    def _operator(self, alpha, n_src, n_dst):
        """Delta[n_src] x a -> Delta[n_dst] x a over the vertex map alpha."""
        src = self.products[n_src]
        dst = self.products[n_dst]
        op = _simplex_map_between(self.simplices[n_src], self.simplices[n_dst], alpha)
        return product_map(op, identity_map(self.a), src, dst)

    def element_of(self, name) -> SimpMap:
        n, key = self._key_of[name]
        return self._maps[n][key]

    def ref_of_map(self, m: SimpMap, n) -> SimplexRef:
        """Normal-form ref of the element given by a map Delta[n] x a -> x."""
        return self._ref_of(n, m.key())


def exponential(x: FinSimpSet, a: FinSimpSet, dim_cap=None, budget=None):
    """Function complex as (space, element_of); see Exponential."""
    e = Exponential(x, a, dim_cap=dim_cap, budget=budget)
    return e.space, e.element_of


def _simplex_map_between(src: FinSimpSet, dst: FinSimpSet, alpha) -> SimpMap:
    """Simplex-to-simplex map over a monotone vertex map, on given copies."""
    assignment = {}
    for m in range(src.dim_bound + 1):
        for name in src.cell_ids(m):
            verts = tuple(int(ch) for ch in name)
            image = tuple(alpha[v] for v in verts)
            uniq = tuple(sorted(set(image)))
            word = surj_to_word(tuple(uniq.index(v) for v in image))
            assignment[(m, name)] = SimplexRef(_tuple_name(uniq), word)
    return SimpMap(src, dst, assignment)


def exponential_map(u: SimpMap, exp_src: Exponential, exp_dst: Exponential) -> SimpMap:
    """Precomposition x^B -> x^A along u: A -> B (exp_src = x^B over B =
    u.target, exp_dst = x^A over A = u.source)."""
    xb, xa = exp_src.space, exp_dst.space
    cap = min(exp_src.cap, exp_dst.cap)
    assignment = {}
    for n in range(cap + 1):
        carry = product_map(
            _simplex_map_between(exp_dst.simplices[n], exp_src.simplices[n],
                                 tuple(range(n + 1))),
            u,
            exp_dst.products[n],
            exp_src.products[n],
        )
        for name in xb.cell_ids(n):
            composite = carry.then(exp_src.element_of(name))
            assignment[(n, name)] = exp_dst.ref_of_map(composite, n)
    return SimpMap(xb, xa, assignment)


# ---------------------------------------------------------------------------
# lifting properties


def _commuting_squares(i: SimpMap, p: SimpMap, budget):
    """All (u, v) with v o i = p o u for i: A -> B, p: X -> Y."""
    squares = []
    for u in hom_set(i.source, p.source, budget=budget):
        for v in hom_set(i.target, p.target, budget=budget):
            if i.then(v) == u.then(p):
                squares.append((u, v))
    return squares


def _square_witness(i, p, u, v):
    return {
        "u": u.key(),
        "v": v.key(),
    }


def has_rlp(p: SimpMap, i: SimpMap, budget=None, dim_cap=None) -> Verdict:
    """Does p have the right lifting property against i?

    Searches every commuting square of i against p for a diagonal filler.
    dim_cap restricts the dimensions on which fillers are required (the
    ambient data of the square); by default the full bound of i.target.
    """
    budget = budget or Budget()
    checked = f"squares of {i.source.summary()}->{i.target.summary()} vs p"
    try:
        squares = _commuting_squares(i, p, budget)
        for (u, v) in squares:
            if _find_lift(i, p, u, v, budget, dim_cap) is None:
                return Verdict(FAILS, checked, witness=_square_witness(i, p, u, v))
    except BudgetExceededError as e:
        return Verdict(INCONCLUSIVE, checked, witness=str(e))
    return Verdict(HOLDS, checked, details={"squares": len(squares)})


def _find_lift(i: SimpMap, p: SimpMap, u: SimpMap, v: SimpMap, budget, dim_cap=None):
    """A diagonal h: B -> X with h o i = u and p o h = v, or None."""
    b, x = i.target, p.source
    fixed = {}
    for (n, name), ref in i.assignment.items():
        if ref.degs:
            continue
        want = u.assignment[(n, name)]
        prev = fixed.get((n, ref.base))
        if prev is not None and prev != want:
            return None
        fixed[(n, ref.base)] = want

    def constraint(n, name, ref):
        return p(ref, n) == v(SimplexRef(name), n)

    cap = x.dim_bound if dim_cap is None else min(dim_cap, x.dim_bound)
    b_capped = b if b.dim_bound <= cap else b.rebound(cap)
    lifts = hom_set(b_capped, x, budget=budget, fixed=fixed, constraint=constraint)
    return lifts[0] if lifts else None


def is_quasicategory_up_to(x: FinSimpSet, d, budget=None) -> Verdict:
    """Inner-horn filling for all Lambda^k[n], 0 < k < n <= d."""
    budget = budget or Budget()
    checked = f"inner horns n<={d}"
    try:
        for n in range(2, d + 1):
            for k in range(1, n):
                h = horn(n, k)
                full = standard_simplex(n)
                for u in hom_set(h, x, budget=budget):
                    ext = hom_set(full, x, budget=budget, fixed=dict(u.assignment))
                    if not ext:
                        return Verdict(
                            FAILS,
                            checked,
                            witness={"horn": [n, k], "map": u.key()},
                        )
    except BudgetExceededError as e:
        return Verdict(INCONCLUSIVE, checked, witness=str(e))
    return Verdict(HOLDS, checked)


# ---------------------------------------------------------------------------
# pushout-product


def pushout_product(f: SimpMap, g: SimpMap) -> SimpMap:
    """(V x W) u_{U x W} (U x X) -> V x X for f: U -> V, g: W -> X."""
    u, v = f.source, f.target
    w, x = g.source, g.target
    vw = product(v, w)
    uw = product(u, w)
    ux = product(u, x)
    vx = product(v, x)
    f_w = product_map(f, identity_map(w), uw, vw)
    u_g = product_map(identity_map(u), g, uw, ux)
    col = Colimit([uw[0], vw[0], ux[0]], [(0, 1, f_w), (0, 2, u_g)])
    into = col.mediating(
        [
            product_map(f, g, uw, vx),
            product_map(identity_map(v), g, vw, vx),
            product_map(f, identity_map(x), ux, vx),
        ],
        vx[0],
    )
    return into
