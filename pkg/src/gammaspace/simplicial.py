"""Finite truncated simplicial sets with symbolic degeneracies.

Only nondegenerate simplices are stored; every simplex is addressed by a
SimplexRef = (nondegenerate base, strictly decreasing degeneracy word) in
Eilenberg-Zilber normal form.  A set carries a dimension bound and is read
coskeletally above it: a map into it in higher dimension is determined by
its truncation, so enumeration never needs cells beyond the bound.

All values are immutable after construction; operations are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .verdicts import (
    Budget,
    BudgetExceededError,
    Verdict,
    FAILS,
    HOLDS,
    INCONCLUSIVE,
)

# ---------------------------------------------------------------------------
# monotone-map arithmetic
#
# A monotone map [m] -> [n] is a tuple of length m+1 with nondecreasing
# entries in 0..n.  Degeneracy words correspond to monotone surjections,
# faces to monotone injections.


def mcompose(outer, inner):
    """outer o inner, both monotone tuples."""
    return tuple(outer[v] for v in inner)


def word_to_surj(word, m):
    """Degeneracy word (strictly decreasing) acting on dimension m-|word|,
    as the monotone surjection [m] ->> [m - len(word)]."""
    drop = set(word)
    out = []
    v = 0
    for t in range(m + 1):
        out.append(v)
        if t not in drop:
            v += 1
    return tuple(out)


def surj_to_word(surj):
    """Inverse of word_to_surj: positions where the surjection repeats."""
    word = [j for j in range(len(surj) - 1) if surj[j] == surj[j + 1]]
    word.reverse()
    return tuple(word)


def factor_monotone(alpha):
    """Factor a monotone map as injection o surjection; returns (inj, surj)."""
    image = sorted(set(alpha))
    pos = {v: i for i, v in enumerate(image)}
    surj = tuple(pos[v] for v in alpha)
    return tuple(image), surj


def delta_tuple(i, n):
    """The injection [n-1] -> [n] skipping i."""
    return tuple(t for t in range(n + 1) if t != i)


def sigma_tuple(i, n):
    """The surjection [n+1] -> [n] repeating i."""
    return tuple(t if t <= i else t - 1 for t in range(n + 2))


def monotone_maps(m, n):
    """All monotone maps [m] -> [n] (oracle-grade enumeration)."""
    return [c for c in itertools.product(range(n + 1), repeat=m + 1)
            if all(c[i] <= c[i + 1] for i in range(m))]


# ---------------------------------------------------------------------------
# refs and cells


@dataclass(frozen=True)
class SimplexRef:
    """Address of a possibly-degenerate simplex: nondegenerate base id plus
    a strictly decreasing degeneracy word (empty = the base itself)."""

    base: str
    degs: tuple = ()

    def is_degenerate(self) -> bool:
        return bool(self.degs)

    def key(self):
        return (self.base, self.degs)

    def __repr__(self):
        if not self.degs:
            return f"~{self.base}"
        return f"~{self.base}s{list(self.degs)}"


@dataclass(frozen=True)
class Simplex:
    """Construction-time record for one nondegenerate cell."""

    dim: int
    name: str
    faces: tuple  # of SimplexRef, length dim+1 (empty for dim 0)


def apply_word(ref: SimplexRef, word, ref_dim: int) -> SimplexRef:
    """Apply a degeneracy word (operator for dimension ref_dim upward) to a
    ref of dimension ref_dim; pure word arithmetic, no face data needed."""
    if not word:
        return ref
    m = ref_dim + len(word)
    outer = word_to_surj(word, m)
    base_dim = ref_dim - len(ref.degs)
    inner = word_to_surj(ref.degs, ref_dim)
    return SimplexRef(ref.base, surj_to_word(mcompose(inner, outer)))


class FinSimpSet:
    """Truncated finite simplicial set.

    cells maps each dimension 0..dim_bound to {cell id: faces tuple}.
    Face entries are SimplexRefs one dimension down.  `pointed` optionally
    names a vertex.  `cosk` records a dimension from which the object is
    known coskeletal (purely informational; the reading above dim_bound is
    always coskeletal).
    """

    def __init__(self, dim_bound, cells, pointed=None, cosk=None, complete=True):
        self.dim_bound = dim_bound
        self._cells = tuple(
            dict(sorted(cells.get(n, {}).items())) for n in range(dim_bound + 1)
        )
        self.pointed = pointed
        self.cosk = cosk
        # complete: no nondegenerate simplices exist above dim_bound, so the
        # stored complex is the whole object and bounds may be raised freely.
        self.complete = complete
        self._ref_cache = {}
        if pointed is not None and pointed not in self._cells[0]:
            raise ValueError(f"basepoint {pointed!r} is not a vertex")

    # -- structure access ---------------------------------------------------

    def cell_ids(self, n):
        if n < 0 or n > self.dim_bound:
            return ()
        return tuple(self._cells[n].keys())

    def has_cell(self, n, name):
        return 0 <= n <= self.dim_bound and name in self._cells[n]

    def faces_of(self, n, name):
        return self._cells[n][name]

    def cell_count(self, n):
        return len(self.cell_ids(n))

    def total_cells(self):
        return sum(self.cell_count(n) for n in range(self.dim_bound + 1))

    def base_dim(self, ref: SimplexRef, ref_dim: int) -> int:
        return ref_dim - len(ref.degs)

    def refs(self, n):
        """All n-simplices, as refs (nondegenerate bases with words)."""
        if n < 0:
            return ()
        if n in self._ref_cache:
            return self._ref_cache[n]
        out = []
        for k in range(min(n, self.dim_bound) + 1):
            words = list(itertools.combinations(range(n - 1, -1, -1), n - k))
            for name in self.cell_ids(k):
                for w in words:
                    out.append(SimplexRef(name, w))
        out.sort(key=lambda r: r.key())
        out = tuple(out)
        self._ref_cache[n] = out
        return out

    # -- the simplicial action ----------------------------------------------

    def act(self, ref: SimplexRef, ref_dim: int, alpha) -> SimplexRef:
        """Apply the monotone operator alpha: [m] -> [ref_dim] to ref."""
        base_dim = self.base_dim(ref, ref_dim)
        sigma = word_to_surj(ref.degs, ref_dim)
        beta = mcompose(sigma, alpha)
        inj, surj = factor_monotone(beta)
        dropped = self._apply_injection(ref.base, base_dim, inj)
        dropped_dim = len(inj) - 1
        tau = word_to_surj(dropped.degs, dropped_dim)
        return SimplexRef(dropped.base, surj_to_word(mcompose(tau, surj)))

    def _apply_injection(self, name, dim, inj) -> SimplexRef:
        if len(inj) == dim + 1:
            return SimplexRef(name, ())
        missing = max(v for v in range(dim + 1) if v not in set(inj))
        face = self._cells[dim][name][missing]
        rest = tuple(v if v < missing else v - 1 for v in inj)
        return self.act(face, dim - 1, rest)

    def face(self, ref: SimplexRef, ref_dim: int, i: int) -> SimplexRef:
        return self.act(ref, ref_dim, delta_tuple(i, ref_dim))

    def degen(self, ref: SimplexRef, ref_dim: int, i: int) -> SimplexRef:
        return apply_word(ref, (i,), ref_dim)

    def vertices_of(self, ref: SimplexRef, ref_dim: int):
        return tuple(self.act(ref, ref_dim, (t,)) for t in range(ref_dim + 1))

    def edges_of(self, ref: SimplexRef, ref_dim: int):
        """All edge refs of a simplex (one per pair of vertex positions)."""
        return tuple(
            self.act(ref, ref_dim, (a, b))
            for a, b in itertools.combinations(range(ref_dim + 1), 2)
        )

    # -- validation ----------------------------------------------------------

    def validate(self):
        """Exhaustively check face resolution and simplicial identities."""
        for n in range(self.dim_bound + 1):
            for name, faces in self._cells[n].items():
                if len(faces) != (n + 1 if n > 0 else 0):
                    raise ValueError(f"cell {name!r} in dim {n} has {len(faces)} faces")
                for ref in faces:
                    bd = n - 1 - len(ref.degs)
                    if not self.has_cell(bd, ref.base):
                        raise ValueError(f"face {ref!r} of {name!r} does not resolve")
                    for d in ref.degs:
                        if d >= n - 1:
                            raise ValueError(f"bad degeneracy word on face of {name!r}")
        for n in range(2, self.dim_bound + 1):
            for name in self.cell_ids(n):
                top = SimplexRef(name, ())
                for j in range(n + 1):
                    for i in range(j):
                        lhs = self.face(self.face(top, n, j), n - 1, i)
                        rhs = self.face(self.face(top, n, i), n - 1, j - 1)
                        if lhs != rhs:
                            raise ValueError(
                                f"simplicial identity fails on {name!r}: "
                                f"d{i}d{j} != d{j-1}d{i}"
                            )
        return self

    def top_dim(self):
        """Largest dimension carrying a nondegenerate cell."""
        for n in range(self.dim_bound, -1, -1):
            if self.cell_count(n):
                return n
        return 0

    def rebound(self, dim_bound) -> "FinSimpSet":
        """Same cells under a new bound.  Raising the bound is exact only
        for complete complexes; lowering is always a truncation (the result
        is no longer complete unless nothing was cut)."""
        if dim_bound > self.dim_bound and not self.complete:
            raise ValueError("cannot raise the bound of a coskeletal truncation")
        cells = {
            n: dict(self._cells[n])
            for n in range(min(dim_bound, self.dim_bound) + 1)
        }
        complete = self.complete and (dim_bound >= self.top_dim())
        return FinSimpSet(dim_bound, cells, pointed=self.pointed, cosk=self.cosk,
                          complete=complete)

    def is_discrete(self):
        return all(self.cell_count(n) == 0 for n in range(1, self.dim_bound + 1))

    def summary(self):
        return [self.cell_count(n) for n in range(self.dim_bound + 1)]

    def __repr__(self):
        p = f", pointed={self.pointed!r}" if self.pointed is not None else ""
        return f"FinSimpSet(D={self.dim_bound}, cells={self.summary()}{p})"


def from_simplices(dim_bound, simplices, pointed=None, cosk=None) -> FinSimpSet:
    cells = {}
    for s in simplices:
        cells.setdefault(s.dim, {})[s.name] = tuple(s.faces)
    return FinSimpSet(dim_bound, cells, pointed=pointed, cosk=cosk).validate()


def empty_set(dim_bound=0) -> FinSimpSet:
    return FinSimpSet(dim_bound, {})


def discrete_set(labels, dim_bound=0, pointed=None) -> FinSimpSet:
    """The discrete simplicial set on the given vertex labels."""
    return FinSimpSet(dim_bound, {0: {str(v): () for v in labels}}, pointed=pointed)


def labeled_copies(s: FinSimpSet, labels):
    """Disjoint union of copies of s indexed by labels.

    Returns (space, include) where include(label, ref, dim) resolves a ref
    of s inside the named copy.
    """
    labels = [str(v) for v in labels]
    cells = {}
    for n in range(s.dim_bound + 1):
        cells[n] = {}
        for lab in labels:
            for name in s.cell_ids(n):
                faces = tuple(
                    SimplexRef(f"{lab}.{f.base}", f.degs) for f in s.faces_of(n, name)
                )
                cells[n][f"{lab}.{name}"] = faces
    out = FinSimpSet(s.dim_bound, cells, complete=s.complete)

    def include(label, ref, dim=None):
        return SimplexRef(f"{label}.{ref.base}", ref.degs)

    return out, include


# ---------------------------------------------------------------------------
# simplicial maps


class SimpMap:
    """Map of truncated simplicial sets.

    assignment sends each nondegenerate source cell of dimension
    <= min(source bound, target bound) to a target ref of the same
    dimension; degenerate simplices follow by word arithmetic.
    """

    def __init__(self, source: FinSimpSet, target: FinSimpSet, assignment):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)

    @property
    def cap(self):
        # complete targets admit assignments in every source dimension;
        # truncated ones only up to their own bound
        if self.target.complete:
            return self.source.dim_bound
        return min(self.source.dim_bound, self.target.dim_bound)

    def __call__(self, ref: SimplexRef, ref_dim: int) -> SimplexRef:
        base_dim = ref_dim - len(ref.degs)
        image = self.assignment[(base_dim, ref.base)]
        return apply_word(image, ref.degs, base_dim)

    def validate(self, check_pointed=True):
        for n in range(self.cap + 1):
            for name in self.source.cell_ids(n):
                if (n, name) not in self.assignment:
                    raise ValueError(f"no assignment for cell {name!r} in dim {n}")
                img = self.assignment[(n, name)]
                if self.target.base_dim(img, n) < 0 or not self.target.has_cell(
                    self.target.base_dim(img, n), img.base
                ):
                    raise ValueError(f"image {img!r} of {name!r} does not resolve")
                for i in range(n + 1) if n > 0 else ():
                    want = self(self.source.faces_of(n, name)[i], n - 1)
                    got = self.target.face(img, n, i)
                    if want != got:
                        raise ValueError(
                            f"map does not commute with d{i} on {name!r}"
                        )
        if (
            check_pointed
            and self.source.pointed is not None
            and self.target.pointed is not None
        ):
            if self(SimplexRef(self.source.pointed), 0) != SimplexRef(self.target.pointed):
                raise ValueError("map does not preserve the basepoint")
        return self

    def then(self, other: "SimpMap") -> "SimpMap":
        assert other.source is self.target
        if other.target.complete:
            cap = self.cap
        else:
            cap = min(self.cap, self.source.dim_bound, other.target.dim_bound)
        assignment = {
            (n, name): other(ref, n)
            for (n, name), ref in self.assignment.items()
            if n <= cap
        }
        return SimpMap(self.source, other.target, assignment)

    def key(self):
        return tuple(
            (n, name, ref.base, ref.degs)
            for (n, name), ref in sorted(self.assignment.items())
        )

    def __eq__(self, other):
        return isinstance(other, SimpMap) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_mono(self, dim_cap=None):
        cap = self.cap if dim_cap is None else min(dim_cap, self.cap)
        for n in range(cap + 1):
            seen = set()
            for ref in self.source.refs(n):
                img = self(ref, n)
                if img in seen:
                    return False
                seen.add(img)
        return True

    def is_iso(self):
        if self.source.complete and self.target.complete:
            cap = max(self.source.top_dim(), self.target.top_dim())
        elif self.source.dim_bound == self.target.dim_bound:
            cap = self.cap
        else:
            return False
        for n in range(cap + 1):
            images = set()
            for name in self.source.cell_ids(n):
                img = self.assignment[(n, name)]
                if img.degs:
                    return False
                images.add(img.base)
            if len(images) != self.source.cell_count(n) or len(images) != self.target.cell_count(n):
                return False
        return True

    def inverse(self):
        assert self.is_iso()
        assignment = {}
        for n in range(self.cap + 1):
            for name in self.source.cell_ids(n):
                assignment[(n, self.assignment[(n, name)].base)] = SimplexRef(name)
        return SimpMap(self.target, self.source, assignment)

    def __repr__(self):
        return f"SimpMap({self.source!r} -> {self.target!r})"


def identity_map(x: FinSimpSet) -> SimpMap:
    return SimpMap(
        x,
        x,
        {
            (n, name): SimplexRef(name)
            for n in range(x.dim_bound + 1)
            for name in x.cell_ids(n)
        },
    )


def constant_map(x: FinSimpSet, y: FinSimpSet, vertex: str) -> SimpMap:
    """The map collapsing x to the named vertex of y."""
    assignment = {}
    cap = x.dim_bound if y.complete else min(x.dim_bound, y.dim_bound)
    for n in range(cap + 1):
        word = tuple(range(n - 1, -1, -1))
        for name in x.cell_ids(n):
            assignment[(n, name)] = SimplexRef(vertex, word)
    return SimpMap(x, y, assignment)


# ---------------------------------------------------------------------------
# building a set from an abstract dimension-wise presentation


def from_elements(bound, levels, face, degen, namer=None, pointed_key=None,
                  cosk=None, complete=False):
    """Build a FinSimpSet from per-dimension element tables.

    levels[n] lists hashable, sortable keys for ALL n-simplices (degenerate
    included); face(n, key, i) and degen(n, key, i) give the structure maps.
    Returns (set, ref_of) where ref_of maps (n, key) to the normal-form ref.
    """
    levels = [sorted(set(lv)) for lv in levels]
    degenerate = [set() for _ in range(bound + 1)]
    for n in range(1, bound + 1):
        for key in levels[n - 1]:
            for i in range(n):
                degenerate[n].add(degen(n - 1, key, i))
    names = {}
    for n in range(bound + 1):
        idx = 0
        for key in levels[n]:
            if key not in degenerate[n]:
                names[(n, key)] = namer(n, key, idx) if namer else f"c{n}_{idx}"
                idx += 1

    def normal_form(n, key):
        word = []
        while True:
            if (n, key) in names:
                return SimplexRef(names[(n, key)], tuple(word))
            for j in range(n - 1, -1, -1):
                below = face(n, key, j)
                if degen(n - 1, below, j) == key:
                    word.append(j)
                    key, n = below, n - 1
                    break
            else:
                raise AssertionError(f"element {key!r} in dim {n} has no normal form")

    cells = {}
    for n in range(bound + 1):
        cells[n] = {}
        for key in levels[n]:
            if (n, key) in names:
                faces = tuple(normal_form(n - 1, face(n, key, i)) for i in range(n + 1)) if n else ()
                cells[n][names[(n, key)]] = faces
    pointed = names[(0, pointed_key)] if pointed_key is not None else None
    out = FinSimpSet(bound, cells, pointed=pointed, cosk=cosk,
                     complete=complete).validate()

    def ref_of(n, key):
        return normal_form(n, key)

    return out, ref_of


# ---------------------------------------------------------------------------
# products


def product(x: FinSimpSet, y: FinSimpSet, bound=None):
    """Cartesian product, truncated at the joint bound.

    For complete inputs the default bound reaches the full dimension of the
    product; otherwise it stays at the joint coskeletal bound, which is the
    range on which the output is exact.

    Returns (product set, projection to x, projection to y, pair resolver)
    where the resolver sends a pair of same-dimension refs to the product
    ref in normal form.
    """
    if bound is None:
        if x.complete and y.complete:
            b = x.top_dim() + y.top_dim()
        else:
            b = min(
                x.dim_bound if not x.complete else x.top_dim() + y.top_dim(),
                y.dim_bound if not y.complete else x.top_dim() + y.top_dim(),
            )
    else:
        b = bound
    levels = [
        [(rx.key(), ry.key()) for rx in x.refs(n) for ry in y.refs(n)]
        for n in range(b + 1)
    ]

    def face(n, key, i):
        rx, ry = SimplexRef(*key[0]), SimplexRef(*key[1])
        return (x.face(rx, n, i).key(), y.face(ry, n, i).key())

    def degen(n, key, i):
        rx, ry = SimplexRef(*key[0]), SimplexRef(*key[1])
        return (x.degen(rx, n, i).key(), y.degen(ry, n, i).key())

    pointed_key = None
    if x.pointed is not None and y.pointed is not None:
        pointed_key = ((x.pointed, ()), (y.pointed, ()))
    prod, ref_of = from_elements(
        b, levels, face, degen, pointed_key=pointed_key,
        complete=x.complete and y.complete and b >= x.top_dim() + y.top_dim(),
    )

    def pair_ref(rx, ry, n):
        if n <= b:
            return ref_of(n, (rx.key(), ry.key()))
        # above the built bound every pair is degenerate: strip the common
        # degeneracy word, look up the base pair, and re-apply the word
        common = tuple(sorted(set(rx.degs) & set(ry.degs), reverse=True))
        if n - len(common) > b:
            raise ValueError(f"pair of refs in dim {n} has no cell at bound {b}")
        sigma_c = word_to_surj(common, n)

        def strip(ref):
            s = word_to_surj(ref.degs, n)
            fiber_values = {}
            for t in range(n + 1):
                fiber_values[sigma_c[t]] = s[t]
            reduced = tuple(fiber_values[t] for t in range(n - len(common) + 1))
            return SimplexRef(ref.base, surj_to_word(reduced))

        base = ref_of(n - len(common), (strip(rx).key(), strip(ry).key()))
        return apply_word(base, common, n - len(common))

    assign1, assign2 = {}, {}
    for n in range(b + 1):
        for key in levels[n]:
            ref = ref_of(n, key)
            if not ref.degs:
                assign1[(n, ref.base)] = SimplexRef(*key[0])
                assign2[(n, ref.base)] = SimplexRef(*key[1])
    proj1 = SimpMap(prod, x, assign1)
    proj2 = SimpMap(prod, y, assign2)
    return prod, proj1, proj2, pair_ref


def pairing(f: SimpMap, g: SimpMap, prod_data) -> SimpMap:
    """The map (f, g): Z -> X x Y induced into product(f.target, g.target)."""
    prod, _, _, pair_ref = prod_data
    assert f.source is g.source
    z = f.source
    cap = z.dim_bound if prod.complete else min(z.dim_bound, prod.dim_bound)
    assignment = {}
    for n in range(cap + 1):
        for name in z.cell_ids(n):
            assignment[(n, name)] = pair_ref(f(SimplexRef(name), n), g(SimplexRef(name), n), n)
    return SimpMap(z, prod, assignment)


def product_map(f: SimpMap, g: SimpMap, src_data, dst_data) -> SimpMap:
    """f x g between already-computed products."""
    src, sp1, sp2, _ = src_data
    dst, _, _, pair_ref = dst_data
    assignment = {}
    cap = src.dim_bound if dst.complete else min(src.dim_bound, dst.dim_bound)
    for n in range(cap + 1):
        for name in src.cell_ids(n):
            rx = f(sp1.assignment[(n, name)], n)
            ry = g(sp2.assignment[(n, name)], n)
            assignment[(n, name)] = pair_ref(rx, ry, n)
    return SimpMap(src, dst, assignment)


# ---------------------------------------------------------------------------
# finite colimits (disjoint unions, pushouts, general glued diagrams)


class Colimit:
    """Colimit of a finite diagram of FinSimpSets.

    objects: list of FinSimpSets; arrows: (src index, dst index, SimpMap).
    Computed dimension-wise by set-level quotient with Eilenberg-Zilber
    renormalization of the glued cells.
    """

    def __init__(self, objects, arrows, bound=None, pointed_at=None):
        self.objects = list(objects)
        self.arrows = list(arrows)
        if bound is not None:
            b = bound
        else:
            # complete objects impose no ceiling; truncations do
            ceilings = [o.dim_bound for o in objects if not o.complete]
            if ceilings:
                b = min(ceilings)
            else:
                b = max((o.top_dim() for o in objects), default=0)
        self.bound = b
        self.complete = all(o.complete for o in objects) and b >= max(
            (o.top_dim() for o in objects), default=0
        )
        self._compute(pointed_at)

    def _compute(self, pointed_at):
        b = self.bound
        parent = {}

        def find(k):
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        def union(a, bb):
            ra, rb = find(a), find(bb)
            if ra != rb:
                if rb < ra:
                    ra, rb = rb, ra
                parent[rb] = ra

        tagged = [[] for _ in range(b + 1)]
        for n in range(b + 1):
            for i, obj in enumerate(self.objects):
                for ref in obj.refs(n):
                    k = (i, ref.base, ref.degs)
                    parent[k] = k
                    tagged[n].append(k)
            for (si, di, m) in self.arrows:
                for ref in self.objects[si].refs(n):
                    img = m(ref, n)
                    union((si, ref.base, ref.degs), (di, img.base, img.degs))

        # classes per dimension, canonically ordered by minimal member
        self._nf = {}
        cells = {}
        for n in range(b + 1):
            classes = {}
            for k in tagged[n]:
                classes.setdefault(find(k), []).append(k)
            ordered = sorted(classes.values(), key=min)
            cells[n] = {}
            fresh_idx = 0
            for members in ordered:
                members.sort()
                root = find(members[0])
                deg_members = [m for m in members if m[2]]
                if deg_members:
                    # class contains a degenerate simplex: its normal form is
                    # a word over a lower-dimensional class
                    nfs = set()
                    for (i, base, word) in deg_members:
                        below = self._resolve(n - len(word), (i, base, ()), find)
                        nfs.add(apply_word(below, word, n - len(word)))
                    if len(nfs) != 1:
                        raise AssertionError("inconsistent quotient normal forms")
                    self._nf[(n, root)] = nfs.pop()
                else:
                    name = f"q{n}_{fresh_idx}"
                    fresh_idx += 1
                    self._nf[(n, root)] = SimplexRef(name, ())
                    i, base, _ = members[0]
                    faces = ()
                    if n > 0:
                        faces = tuple(
                            self._resolve(n - 1, (i, fr.base, fr.degs), find)
                            for fr in self.objects[i].faces_of(n, base)
                        )
                        for (i2, base2, _w) in members[1:]:
                            alt = tuple(
                                self._resolve(n - 1, (i2, fr.base, fr.degs), find)
                                for fr in self.objects[i2].faces_of(n, base2)
                            )
                            if alt != faces:
                                raise AssertionError("quotient faces disagree")
                    cells[n][name] = faces

        self._find = find
        pointed = None
        if pointed_at is not None:
            i, vertex = pointed_at
            pointed = self._resolve(0, (i, vertex, ()), find).base
        self.space = FinSimpSet(self.bound, cells, pointed=pointed,
                                complete=self.complete).validate()

    def _resolve(self, n, key, find):
        i, base, word = key
        if word:
            below = self._resolve(n - len(word), (i, base, ()), find)
            return apply_word(below, word, n - len(word))
        return self._nf[(n, find((i, base, ())))]

    def ref_in(self, obj_index, ref: SimplexRef, ref_dim: int) -> SimplexRef:
        return self._resolve(ref_dim, (obj_index, ref.base, ref.degs), self._find)

    def coprojection(self, obj_index) -> SimpMap:
        obj = self.objects[obj_index]
        cap = min(obj.dim_bound, self.bound)
        assignment = {
            (n, name): self.ref_in(obj_index, SimplexRef(name), n)
            for n in range(cap + 1)
            for name in obj.cell_ids(n)
        }
        return SimpMap(obj, self.space, assignment)

    def mediating(self, cocone, target: FinSimpSet) -> SimpMap:
        """Unique map out of the colimit extending the cocone; raises if the
        cocone does not commute with the gluing."""
        for (si, di, m) in self.arrows:
            if m.then(cocone[di]) != cocone[si]:
                raise ValueError("cocone does not commute with diagram arrow")
        cap = self.bound if target.complete else min(self.bound, target.dim_bound)
        assignment = {}
        for n in range(cap + 1):
            for name in self.space.cell_ids(n):
                assignment[(n, name)] = None
        for n in range(cap + 1):
            for i, obj in enumerate(self.objects):
                for cname in obj.cell_ids(n):
                    img = self.ref_in(i, SimplexRef(cname), n)
                    if img.degs:
                        continue
                    val = cocone[i](SimplexRef(cname), n)
                    prev = assignment.get((n, img.base))
                    if prev is not None and prev != val:
                        raise ValueError("cocone is not constant on a glued class")
                    assignment[(n, img.base)] = val
        if any(v is None for v in assignment.values()):
            raise AssertionError("colimit cell not covered by any coprojection")
        return SimpMap(self.space, target, assignment)


def disjoint_union(x: FinSimpSet, y: FinSimpSet):
    col = Colimit([x, y], [])
    return col.space, col.coprojection(0), col.coprojection(1)


def pushout(f: SimpMap, g: SimpMap, pointed_at=None):
    """Pushout of X <-f- A -g-> Y; returns the Colimit (space, coprojections
    via .coprojection(1) for X and .coprojection(2) for Y)."""
    assert f.source is g.source
    col = Colimit([f.source, f.target, g.target], [(0, 1, f), (0, 2, g)],
                  pointed_at=pointed_at)
    return col


# ---------------------------------------------------------------------------
# exhaustive map enumeration


def hom_set(a: FinSimpSet, x: FinSimpSet, budget=None, fixed=None,
            constraint=None, require_pointed=False):
    """All simplicial maps a -> x (x read coskeletally above its bound).

    fixed pre-assigns cells (dim, name) -> ref; constraint(n, name, ref)
    may veto candidates.  Raises BudgetExceededError rather than silently
    truncating.
    """
    budget = budget or Budget()
    # a is read literally; x coskeletally above its bound unless complete,
    # in which case its ref enumeration is valid in every dimension
    cap = a.dim_bound if x.complete else min(a.dim_bound, x.dim_bound)
    order = _constraint_order(a, cap)
    fixed = fixed or {}
    results = []
    assignment = {}

    def push(ref, ref_dim):
        base_dim = ref_dim - len(ref.degs)
        img = assignment[(base_dim, ref.base)]
        return apply_word(img, ref.degs, base_dim)

    face_index = {}

    def index_for(n):
        # bucket every target n-ref by its face tuple, so candidates with
        # prescribed boundary are a dictionary lookup rather than a scan
        if n not in face_index:
            table = {}
            for ref in x.refs(n):
                key = tuple(x.face(ref, n, i) for i in range(n + 1))
                table.setdefault(key, []).append(ref)
            face_index[n] = table
        return face_index[n]

    def candidates(n, name):
        want = None
        if n > 0:
            want = tuple(push(fr, n - 1) for fr in a.faces_of(n, name))
        if (n, name) in fixed:
            cand = [fixed[(n, name)]]
        elif n == 0:
            cand = x.refs(0)
        else:
            cand = index_for(n).get(want, ())
        out = []
        for ref in cand:
            budget.spend()
            if n > 0 and (n, name) in fixed:
                if any(x.face(ref, n, i) != want[i] for i in range(n + 1)):
                    continue
            if require_pointed and n == 0 and name == a.pointed:
                if ref != SimplexRef(x.pointed):
                    continue
            if constraint is not None and not constraint(n, name, ref):
                continue
            out.append(ref)
        return out

    # explicit-stack backtracking: stack[d] is the iterator of candidates
    # still to try at depth d
    if not order:
        return [SimpMap(a, x, {})]
    stack = [iter(candidates(*order[0]))]
    while stack:
        depth = len(stack) - 1
        cell = order[depth]
        ref = next(stack[-1], None)
        if ref is None:
            stack.pop()
            assignment.pop(cell, None)
            continue
        assignment[cell] = ref
        if depth + 1 == len(order):
            results.append(SimpMap(a, x, dict(assignment)))
            continue
        stack.append(iter(candidates(*order[depth + 1])))
    return results


def _constraint_order(a: FinSimpSet, cap):
    """Assignment order for backtracking: a cell becomes available once all
    its face bases are assigned; among available cells pick the deepest, so
    higher-dimensional compatibility constraints prune as early as possible.
    """
    remaining = {
        (n, name): {
            (n - 1 - len(f.degs), f.base) for f in (a.faces_of(n, name) if n else ())
        }
        for n in range(cap + 1)
        for name in a.cell_ids(n)
    }
    dependents = {}
    for cell, faces in remaining.items():
        for f in faces:
            dependents.setdefault(f, set()).add(cell)
    order = []
    available = sorted((c for c, fs in remaining.items() if not fs), reverse=True)
    missing = {c: set(fs) for c, fs in remaining.items()}
    done = set()
    while available:
        cell = max(available)
        available.remove(cell)
        order.append(cell)
        done.add(cell)
        for dep in dependents.get(cell, ()):
            missing[dep].discard(cell)
            if not missing[dep] and dep not in done and dep not in available:
                available.append(dep)
    assert len(order) == len(remaining)
    return order


def iso_check(x: FinSimpSet, y: FinSimpSet, budget=None) -> Verdict:
    """Explicit isomorphism or exhaustive refusal, on dimensions up to the
    joint bound."""
    budget = budget or Budget()
    if x.complete and y.complete:
        cap = max(x.top_dim(), y.top_dim())
    else:
        cap = min(x.dim_bound, y.dim_bound)
    checked = f"dims<={cap}"
    for n in range(cap + 1):
        if x.cell_count(n) != y.cell_count(n):
            return Verdict(FAILS, checked,
                           witness={"dim": n, "counts": [x.cell_count(n), y.cell_count(n)]})
    if (x.pointed is None) != (y.pointed is None):
        return Verdict(FAILS, checked, witness="pointedness differs")
    if x.is_discrete() and y.is_discrete():
        assignment = {
            (0, a): SimplexRef(b)
            for a, b in zip(x.cell_ids(0), y.cell_ids(0))
        }
        if x.pointed is not None:
            assignment[(0, x.pointed)] = SimplexRef(y.pointed)
            rest = [b for b in y.cell_ids(0) if b != y.pointed]
            others = [a for a in x.cell_ids(0) if a != x.pointed]
            for a, b in zip(others, rest):
                assignment[(0, a)] = SimplexRef(b)
        return Verdict(HOLDS, checked, witness=SimpMap(x, y, assignment))

    order = [(n, name) for n in range(cap + 1) for name in x.cell_ids(n)]
    assignment = {}
    used = [set() for _ in range(cap + 1)]

    def push(ref, ref_dim):
        base_dim = ref_dim - len(ref.degs)
        img = assignment[(base_dim, ref.base)]
        return apply_word(img, ref.degs, base_dim)

    def candidates(n, name):
        want = None
        if n > 0:
            want = tuple(push(fr, n - 1) for fr in x.faces_of(n, name))
        for cand in y.cell_ids(n):
            if cand in used[n]:
                continue
            budget.spend()
            if n > 0 and y.faces_of(n, cand) != want:
                continue
            if x.pointed is not None and n == 0 and (name == x.pointed) != (cand == y.pointed):
                continue
            yield cand

    witness = None
    try:
        if not order:
            witness = SimpMap(x, y, {})
        else:
            stack = [iter(candidates(*order[0]))]
            while stack:
                depth = len(stack) - 1
                cell = order[depth]
                prev = assignment.pop(cell, None)
                if prev is not None:
                    used[cell[0]].discard(prev.base)
                cand = next(stack[-1], None)
                if cand is None:
                    stack.pop()
                    continue
                assignment[cell] = SimplexRef(cand)
                used[cell[0]].add(cand)
                if depth + 1 == len(order):
                    witness = SimpMap(x, y, dict(assignment))
                    break
                stack.append(iter(candidates(*order[depth + 1])))
    except BudgetExceededError:
        return Verdict(INCONCLUSIVE, checked, witness="budget exceeded")
    if witness is None:
        return Verdict(FAILS, checked, witness="exhausted all assignments")
    return Verdict(HOLDS, checked, witness=witness)


# ---------------------------------------------------------------------------
# subobjects


def full_sub_on_vertices(x: FinSimpSet, keep) -> FinSimpSet:
    """Full sub-simplicial set spanned by the vertices satisfying `keep`."""
    good = {v for v in x.cell_ids(0) if keep(v)}

    def ok(n, name):
        return all(v.base in good for v in x.vertices_of(SimplexRef(name), n))

    return _subset_of(x, ok)


def full_sub_on_edges(x: FinSimpSet, edge_ok) -> FinSimpSet:
    """Sub-simplicial set of simplices all of whose edges satisfy edge_ok
    (a predicate on edge refs); vertices are all kept."""

    def ok(n, name):
        if n == 0:
            return True
        return all(edge_ok(e) for e in x.edges_of(SimplexRef(name), n))

    return _subset_of(x, ok)


def _subset_of(x: FinSimpSet, ok) -> FinSimpSet:
    cells = {}
    kept = set()
    for n in range(x.dim_bound + 1):
        cells[n] = {}
        for name in x.cell_ids(n):
            if not ok(n, name):
                continue
            faces = x.faces_of(n, name)
            if n > 0 and not all(
                (n - 1 - len(f.degs), f.base) in kept for f in faces
            ):
                continue
            cells[n][name] = faces
            kept.add((n, name))
    pointed = x.pointed if x.pointed is not None and (0, x.pointed) in kept else None
    return FinSimpSet(x.dim_bound, cells, pointed=pointed, cosk=x.cosk).validate()


def inclusion_map(sub: FinSimpSet, whole: FinSimpSet) -> SimpMap:
    assignment = {
        (n, name): SimplexRef(name)
        for n in range(min(sub.dim_bound, whole.dim_bound) + 1)
        for name in sub.cell_ids(n)
    }
    return SimpMap(sub, whole, assignment)
