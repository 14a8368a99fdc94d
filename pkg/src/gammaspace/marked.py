"""Simplicial sets with marked edges, their mapping objects, and marked
families over based finite sets."""

from __future__ import annotations

from .gammaop import GammaMorphism
from .gspace import TabulatedGammaSpace, all_morphisms_upto
from .shapes import standard_simplex, _simplex_map_between
from .simplicial import (
    FinSimpSet,
    SimplexRef,
    SimpMap,
    from_elements,
    full_sub_on_edges,
    hom_set,
    identity_map,
    product,
    product_map,
    delta_tuple,
    sigma_tuple,
)
from .verdicts import Budget


class MarkedSimpSet:
    """A simplicial set with a distinguished set of marked edges; the
    degenerate edges are always marked, so only nondegenerate marked edge
    ids are stored."""

    def __init__(self, underlying: FinSimpSet, marked=()):
        self.underlying = underlying
        self.marked = frozenset(marked)
        for e in self.marked:
            if not underlying.has_cell(1, e):
                raise ValueError(f"marked edge {e!r} is not an edge")

    def is_marked(self, ref: SimplexRef) -> bool:
        return bool(ref.degs) or ref.base in self.marked

    def marking_closure_ok(self):
        return True  # degenerate edges are marked by representation

    def __repr__(self):
        return f"MarkedSimpSet({self.underlying!r}, marked={sorted(self.marked)})"


def mark(x: FinSimpSet, kind: str) -> MarkedSimpSet:
    """flat marks only the degenerate edges; sharp marks every edge."""
    if kind == "flat":
        return MarkedSimpSet(x, ())
    if kind == "sharp":
        return MarkedSimpSet(x, x.cell_ids(1))
    raise ValueError(f"unknown marking {kind!r}")


def is_marked_map(m: SimpMap, src: MarkedSimpSet, dst: MarkedSimpSet) -> bool:
    for e in src.marked:
        if not dst.is_marked(m(SimplexRef(e), 1)):
            return False
    return True


def marked_product(a: MarkedSimpSet, b: MarkedSimpSet, bound=None):
    """Product in marked sets: an edge is marked iff both coordinates are.

    Returns (MarkedSimpSet, proj1, proj2, pair_ref)."""
    prod_data = product(a.underlying, b.underlying, bound=bound)
    prod, p1, p2, pair_ref = prod_data
    marked = [
        e for e in prod.cell_ids(1)
        if a.is_marked(p1.assignment[(1, e)]) and b.is_marked(p2.assignment[(1, e)])
    ]
    return MarkedSimpSet(prod, marked), p1, p2, pair_ref


def marked_hom_set(a: MarkedSimpSet, x: MarkedSimpSet, budget=None):
    budget = budget or Budget()
    return [
        m for m in hom_set(a.underlying, x.underlying, budget=budget)
        if is_marked_map(m, a, x)
    ]


class MarkedMappingObject:
    """The internal mapping object of marked sets restricted to a simplex
    frame: dimension n holds the marked maps flat(Delta[n]) x X -> Y.

    An edge is marked exactly when the same underlying map stays marked
    after sharpening the Delta[1] coordinate; the flat part is the whole
    object, the sharp part the sub-object of thus-marked simplices.
    """

    def __init__(self, x: MarkedSimpSet, y: MarkedSimpSet, dim_cap=None,
                 budget=None, over=None):
        budget = budget or Budget()
        cap = y.underlying.dim_bound if dim_cap is None else dim_cap
        self.x, self.y, self.cap = x, y, cap
        self.over = over
        self.simplices = [standard_simplex(d) for d in range(cap + 2)]
        self.products = []
        for d in range(cap + 1):
            flat_d = mark(self.simplices[d], "flat")
            self.products.append(marked_product(flat_d, x))
        self._maps = []
        for d in range(cap + 1):
            ms, p1, p2, _ = self.products[d]
            want = None
            if over is not None:
                proj_x, proj_y = over
                want = SimpMap(ms.underlying, proj_x.target,
                               p2.then(proj_x).assignment)

            def constraint(n, name, ref, ms=ms, want=want):
                if n == 1 and ms.is_marked(SimplexRef(name)) and not y.is_marked(ref):
                    return False
                if want is not None:
                    proj_y = self.over[1]
                    if proj_y(ref, n) != want(SimplexRef(name), n):
                        return False
                return True

            candidates = hom_set(ms.underlying, y.underlying, budget=budget,
                                 constraint=constraint)
            self._maps.append({m.key(): m for m in candidates})

        levels = [sorted(self._maps[d].keys()) for d in range(cap + 1)]

        def op(d_from, d_to, alpha, key):
            carry = product_map(
                _simplex_map_between(self.simplices[d_to], self.simplices[d_from],
                                     alpha),
                identity_map(x.underlying),
                self._prod_data(d_to),
                self._prod_data(d_from),
            )
            return carry.then(self._maps[d_from][key]).key()

        def face(d, key, t):
            return op(d, d - 1, delta_tuple(t, d), key)

        def degen(d, key, t):
            return op(d, d + 1, sigma_tuple(t, d), key)

        self.flat, self._ref_of = from_elements(cap, levels, face, degen)
        self._key_of = {}
        for d in range(cap + 1):
            for key in levels[d]:
                ref = self._ref_of(d, key)
                if not ref.degs:
                    self._key_of[ref.base] = (d, key)
        marked_edges = [
            e for e in self.flat.cell_ids(1) if self._edge_sharpens(e)
        ]
        self.plus = MarkedSimpSet(self.flat, marked_edges)
        self.sharp = full_sub_on_edges(self.flat, self.plus.is_marked)

    def _prod_data(self, d):
        ms, p1, p2, pair_ref = self.products[d]
        return (ms.underlying, p1, p2, pair_ref)

    def _edge_sharpens(self, name) -> bool:
        """Marked when the map also respects the sharp Delta[1] marking."""
        d, key = self._key_of[name]
        assert d == 1
        m = self._maps[1][key]
        ms, p1, p2, _ = self.products[1]
        for e in ms.underlying.cell_ids(1):
            if not self.x.is_marked(p2.assignment[(1, e)]):
                continue
            if not self.y.is_marked(m(SimplexRef(e), 1)):
                return False
        return True

    def element_of(self, name) -> SimpMap:
        d, key = self._key_of[name]
        return self._maps[d][key]


def hom_marked(x: MarkedSimpSet, y: MarkedSimpSet, dim_cap=None, budget=None):
    """Returns (plus, flat, sharp): the marked mapping object, its
    underlying simplicial set, and the all-edges-marked sub-object."""
    mo = MarkedMappingObject(x, y, dim_cap=dim_cap, budget=budget)
    return mo.plus, mo.flat, mo.sharp


# ---------------------------------------------------------------------------
# marked families over the based-set category


class MarkedGammaSpace:
    """Level-wise marked simplicial sets with a marking-preserving action."""

    def __init__(self, level_bound, value_fn, action_fn):
        self.level_bound = level_bound
        self._value_fn = value_fn
        self._action_fn = action_fn
        self._values = {}

    def value(self, n) -> MarkedSimpSet:
        if n not in self._values:
            self._values[n] = self._value_fn(n)
        return self._values[n]

    def action(self, f: GammaMorphism) -> SimpMap:
        m = self._action_fn(f)
        return m

    def underlying(self) -> TabulatedGammaSpace:
        return TabulatedGammaSpace(
            self.level_bound,
            lambda n: self.value(n).underlying,
            self._action_fn,
        )

    def validate(self, level_cap=2):
        self.underlying().validate(level_cap=level_cap)
        for f in all_morphisms_upto(min(level_cap, self.level_bound)):
            if not is_marked_map(self.action(f), self.value(f.src), self.value(f.dst)):
                raise ValueError(f"action at {f} does not preserve markings")
        return self


def gamma_flat(x: TabulatedGammaSpace) -> MarkedGammaSpace:
    """Level-wise minimal marking; the action maps are unchanged."""
    return MarkedGammaSpace(
        x.level_bound,
        lambda n: mark(x.value(n), "flat"),
        x.action,
    )


def marked_mapping_space(x: MarkedGammaSpace, y: MarkedGammaSpace,
                         p, dim_cap=None, budget=None):
    """Mapping space of marked families out of a flat presentation: the
    same families as the unmarked mapping space, filtered by marking
    preservation level-wise (vacuous for flat sources).

    p is the presentation of x's underlying space; marked structure on x
    must be level-wise flat for the presentation to be meaningful.
    """
    from .gspace import GammaMappingSpace

    budget = budget or Budget()
    ms = GammaMappingSpace(p, y.underlying(), dim_cap=dim_cap, budget=budget)
    keep = set()
    for name in ms.space.cell_ids(0):
        fam = ms.element_of(name)
        ok = True
        for i, c in enumerate(p.cells):
            flat_cell = mark(ms.products[i][0][0], "flat")
            if not is_marked_map(fam[i], flat_cell, y.value(c.level)):
                ok = False
                break
        if ok:
            keep.add(name)
    from .simplicial import full_sub_on_vertices

    return full_sub_on_vertices(ms.space, lambda v: v in keep), ms
