"""The skeletal category of finite based sets n+ = {0,...,n} (basepoint 0):
morphism calculus, the inert/active factorization, sums and smashes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class GammaMorphism:
    """A based map src+ -> dst+; table[i-1] is the image of i (1-indexed
    elements, 0 always maps to 0)."""

    src: int
    dst: int
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.src or any(
            not (0 <= v <= self.dst) for v in self.table
        ):
            raise ValueError(f"ill-formed based map {self.table} : {self.src}->{self.dst}")

    def __call__(self, i):
        return 0 if i == 0 else self.table[i - 1]

    def support(self):
        """Elements of the source not sent to the basepoint, in order."""
        return tuple(i for i in range(1, self.src + 1) if self.table[i - 1] != 0)

    def is_inert(self):
        """Every nonzero element of the target has exactly one preimage."""
        hits = [v for v in self.table if v != 0]
        return len(hits) == len(set(hits)) and set(hits) == set(range(1, self.dst + 1))

    def is_inert_ordered(self):
        """Inert and order-preserving on the support; the canonical support
        projections are exactly these, and the inert/active factorization
        is unique with this inert class (not with the plain one: a swap
        followed by a fold factors the fold a second time)."""
        hits = [v for v in self.table if v != 0]
        return self.is_inert() and hits == sorted(hits)

    def is_active(self):
        """Only the basepoint maps to the basepoint."""
        return all(v != 0 for v in self.table)

    def then(self, other: "GammaMorphism") -> "GammaMorphism":
        assert self.dst == other.src
        return GammaMorphism(self.src, other.dst, tuple(other(v) for v in self.table))

    def key(self):
        return (self.src, self.dst, self.table)

    def __repr__(self):
        return f"({self.src}+->{self.dst}+:{list(self.table)})"


def gamma_identity(n) -> GammaMorphism:
    return GammaMorphism(n, n, tuple(range(1, n + 1)))


def zero_map(n, m) -> GammaMorphism:
    return GammaMorphism(n, m, (0,) * n)


def delta_projection(k, l, which) -> GammaMorphism:
    """The projections (k+l)+ -> k+ (which='left') and (k+l)+ -> l+."""
    if which == "left":
        return GammaMorphism(k + l, k, tuple(range(1, k + 1)) + (0,) * l)
    return GammaMorphism(k + l, l, (0,) * k + tuple(range(1, l + 1)))


def sum_inclusion(k, l, which) -> GammaMorphism:
    """The inclusions k+ -> (k+l)+ and l+ -> (k+l)+."""
    if which == "left":
        return GammaMorphism(k, k + l, tuple(range(1, k + 1)))
    return GammaMorphism(l, k + l, tuple(range(k + 1, k + l + 1)))


def enumerate_homs(n, m):
    """All (m+1)^n based maps n+ -> m+, lexicographically ordered."""
    return [
        GammaMorphism(n, m, t)
        for t in itertools.product(range(m + 1), repeat=n)
    ]


def factor_inert_active(f: GammaMorphism):
    """The unique factorization of f as an active map after an inert one.

    The inert factor projects onto the support; the active factor is the
    restriction of f to it.  Returns (inert, active, support).
    """
    supp = f.support()
    pos = {i: p + 1 for p, i in enumerate(supp)}
    inert = GammaMorphism(
        f.src, len(supp), tuple(pos.get(i, 0) for i in range(1, f.src + 1))
    )
    active = GammaMorphism(len(supp), f.dst, tuple(f(i) for i in supp))
    return inert, active, supp


def smash_objects(k, l):
    return k * l


def smash_element(i, j, l):
    """Lexicographic encoding of the nonzero pair (i, j) in (k*l)+."""
    if i == 0 or j == 0:
        return 0
    return (i - 1) * l + j


def smash_gamma(f: GammaMorphism, g: GammaMorphism) -> GammaMorphism:
    """f smash g, acting coordinatewise under the lexicographic encoding
    (a basepoint coordinate collapses the pair)."""
    k, l = f.src, g.src
    table = []
    for i in range(1, k + 1):
        for j in range(1, l + 1):
            table.append(smash_element(f(i), g(j), g.dst))
    return GammaMorphism(k * l, f.dst * g.dst, tuple(table))


def smash_twist(k, l) -> GammaMorphism:
    """The symmetry isomorphism (k*l)+ -> (l*k)+ swapping coordinates."""
    table = []
    for i in range(1, k + 1):
        for j in range(1, l + 1):
            table.append(smash_element(j, i, k))
    return GammaMorphism(k * l, l * k, tuple(table))


def pointed_endo_generators(n):
    """A small generating set for the based endomorphisms of n+ (verified
    by closure in the test suite): adjacent transpositions, the fold of 1
    and 2, and the map killing n."""
    gens = []
    for i in range(1, n):
        table = list(range(1, n + 1))
        table[i - 1], table[i] = table[i], table[i - 1]
        gens.append(GammaMorphism(n, n, tuple(table)))
    if n >= 2:
        fold = list(range(1, n + 1))
        fold[1] = 1
        gens.append(GammaMorphism(n, n, tuple(fold)))
    if n >= 1:
        kill = list(range(1, n + 1))
        kill[n - 1] = 0
        gens.append(GammaMorphism(n, n, tuple(kill)))
    return gens
