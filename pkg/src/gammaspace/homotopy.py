"""Maximal sub Kan complexes, restricted exponentials, and the computable
homotopy-mapping-space model J(X^A)."""

from __future__ import annotations

from .nerve import edge_is_invertible, tau1
from .shapes import Exponential
from .simplicial import (
    FinSimpSet,
    SimplexRef,
    full_sub_on_edges,
    full_sub_on_vertices,
)


def j_qcat(x: FinSimpSet) -> FinSimpSet:
    """The largest sub Kan complex of a quasi-category: simplices all of
    whose edges become isomorphisms in the fundamental category."""
    cat, edge_to_arrow = tau1(x)
    return full_sub_on_edges(
        x, lambda e: edge_is_invertible(x, e, cat, edge_to_arrow)
    )


def restricted_exp(x: FinSimpSet, a: FinSimpSet, dim_cap=None, budget=None):
    """The full sub-simplicial set of x^a on the vertices that factor
    through the inclusion of the largest sub Kan complex of x.

    The tower of these over a = Delta[n] gives the path-space levels; the
    level-0 object is x itself.  Returns (space, exponential)."""
    exp = Exponential(x, a, dim_cap=dim_cap, budget=budget)
    cat, edge_to_arrow = tau1(x)

    def lands_in_j(vertex_name):
        m = exp.element_of(vertex_name)
        for e in a.cell_ids(1):
            img = m(_edge_in_product(exp, 0, e), 1)
            if not edge_is_invertible(x, img, cat, edge_to_arrow):
                return False
        return True

    return full_sub_on_vertices(exp.space, lands_in_j), exp


def _edge_in_product(exp: Exponential, n, edge_name):
    """The edge (degenerate simplex vertex, edge) of Delta[n] x a."""
    prod, _, _, pair_ref = exp.products[n]
    vertex_edge = SimplexRef("0", (0,))
    return pair_ref(vertex_edge, SimplexRef(edge_name), 1)


def path_space_level(x: FinSimpSet, n, budget=None):
    """Level n of the path-space tower: the restricted exponential over
    Delta[n]."""
    from .shapes import standard_simplex

    space, _ = restricted_exp(x, standard_simplex(n), budget=budget)
    return space


def h_map_space(a: FinSimpSet, x: FinSimpSet, dim_cap=None, budget=None) -> FinSimpSet:
    """Computable model of the homotopy mapping space: J(x^a)."""
    exp = Exponential(x, a, dim_cap=dim_cap, budget=budget)
    return j_qcat(exp.space)
