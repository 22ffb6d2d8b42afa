"""Permutation groups with stabilizer chains, and the subgroup calculus on them.

Groups coming out of coset enumeration act regularly, so every subgroup of
one acts semiregularly and an element is pinned down by the image of a single
point.  Those groups carry a one-level chain based at point 0 and most
algorithms below work on point sets instead of permutations.  Everything
else goes through a deterministic Schreier-Sims.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .words import Presentation, Word
from .zlin import InvariantFactors, invariants_from_relations

ELEMENT_THRESHOLD = 200_000
QUOTIENT_BUDGET = 2_000_000


class PermGroupError(ValueError):
    pass


class ThresholdExceeded(PermGroupError):
    pass


class NotNormal(PermGroupError):
    pass


class HomomorphismError(PermGroupError):
    def __init__(self, message: str, relator: Word | None = None):
        super().__init__(message)
        self.relator = relator


class Perm:
    """A permutation of ``0..n-1`` acting on the right: ``(p * q)(i) = q(p(i))``."""

    __slots__ = ("a", "_hash")

    def __init__(self, images: Iterable[int] | np.ndarray, check: bool = True):
        a = np.array(images, dtype=np.int64)
        if check:
            if a.ndim != 1 or not np.array_equal(np.sort(a), np.arange(a.size)):
                raise PermGroupError("images do not form a bijection")
        a.setflags(write=False)
        self.a = a
        self._hash = None

    @classmethod
    def _raw(cls, a: np.ndarray) -> "Perm":
        return cls(a, check=False)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls._raw(np.arange(n, dtype=np.int64))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]], one_based: bool = True) -> "Perm":
        a = np.arange(n, dtype=np.int64)
        shift = 1 if one_based else 0
        for cyc in cycles:
            pts = [c - shift for c in cyc]
            for i, p in enumerate(pts):
                a[p] = pts[(i + 1) % len(pts)]
        return cls(a)

    @property
    def degree(self) -> int:
        return self.a.size

    def __call__(self, i: int) -> int:
        return int(self.a[i])

    def __mul__(self, other: "Perm") -> "Perm":
        if other.a.size != self.a.size:
            raise PermGroupError("permutations act on different domains")
        return Perm._raw(other.a[self.a])

    def inverse(self) -> "Perm":
        inv = np.empty_like(self.a)
        inv[self.a] = np.arange(self.a.size)
        return Perm._raw(inv)

    def __pow__(self, k: int) -> "Perm":
        result = Perm.identity(self.degree)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    def conj(self, t: "Perm") -> "Perm":
        return t.inverse() * self * t

    def comm(self, other: "Perm") -> "Perm":
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return bool((self.a == np.arange(self.a.size)).all())

    def order(self) -> int:
        k, g = 1, self
        while not g.is_identity():
            g = g * self
            k += 1
        return k

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and np.array_equal(self.a, other.a)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.a.tobytes())
        return self._hash

    def cycles(self) -> list[tuple[int, ...]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for i in range(self.degree):
            if seen[i] or self.a[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = int(self.a[i])
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = int(self.a[j])
            out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(c + 1) for c in cy) + ")" for cy in cyc)


def evaluate(word: Word, perms: Sequence[Perm], degree: int | None = None) -> Perm:
    """The permutation a word represents when generator ``i`` maps to ``perms[i]``."""
    if len(perms) != word.rank:
        raise PermGroupError(f"need {word.rank} generator images, got {len(perms)}")
    n = degree if degree is not None else perms[0].degree
    a = np.arange(n, dtype=np.int64)
    invs: dict[int, np.ndarray] = {}
    for g, s in word.letters:
        if s == 1:
            a = perms[g].a[a]
        else:
            if g not in invs:
                invs[g] = perms[g].inverse().a
            a = invs[g][a]
    return Perm._raw(a)


class _Level:
    """One level of a stabilizer chain: base point, its orbit and a Schreier vector."""

    def __init__(self, base: int, degree: int):
        self.base = base
        self.gens: list[Perm] = []
        self.back_pt = np.full(degree, -1, dtype=np.int64)
        self.back_gen = np.full(degree, -1, dtype=np.int64)
        self.back_pt[base] = base
        self.orbit = np.array([base], dtype=np.int64)
        self.tested: set[tuple[int, int]] = set()
        self._cache: dict[int, Perm] = {}

    def copy(self) -> "_Level":
        new = _Level.__new__(_Level)
        new.base = self.base
        new.gens = list(self.gens)
        new.back_pt = self.back_pt.copy()
        new.back_gen = self.back_gen.copy()
        new.orbit = self.orbit
        new.tested = set(self.tested)
        new._cache = dict(self._cache)
        return new

    def add_gens(self, gens: Sequence[Perm]) -> None:
        first = len(self.gens)
        self.gens.extend(gens)
        new_points = [self._sweep(self.orbit, range(first, len(self.gens)))]
        frontier = new_points[0]
        while frontier.size:
            frontier = self._sweep(frontier, range(len(self.gens)))
            new_points.append(frontier)
        self.orbit = np.concatenate([self.orbit] + new_points)

    def _sweep(self, frontier: np.ndarray, gen_indices) -> np.ndarray:
        found = []
        for gi in gen_indices:
            imgs = self.gens[gi].a[frontier]
            fresh = self.back_pt[imgs] == -1
            if not fresh.any():
                continue
            imgs, first = np.unique(imgs[fresh], return_index=True)
            src = frontier[fresh][first]
            self.back_pt[imgs] = src
            self.back_gen[imgs] = gi
            found.append(imgs)
        if not found:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(found)

    def contains_point(self, pt: int) -> bool:
        return self.back_pt[pt] != -1

    def path(self, pt: int) -> list[int]:
        path = []
        while pt != self.base:
            path.append(int(self.back_gen[pt]))
            pt = int(self.back_pt[pt])
        path.reverse()
        return path

    def transversal(self, pt: int) -> Perm:
        """Element of the level group mapping the base point to ``pt``."""
        if pt in self._cache:
            return self._cache[pt]
        a = np.arange(self.back_pt.size, dtype=np.int64)
        for gi in self.path(pt):
            a = self.gens[gi].a[a]
        u = Perm._raw(a)
        if self.back_pt.size * len(self._cache) < 4_000_000:
            self._cache[pt] = u
        return u


def _first_moved(g: Perm) -> int:
    moved = np.nonzero(g.a != np.arange(g.degree))[0]
    return int(moved[0])


class PermGroup:
    """A permutation group together with its stabilizer-chain certificate.

    ``parent`` is set for subgroups (the SubgroupHandle role); ``presentation``
    is kept when the generators satisfy a known defining presentation.
    """

    def __init__(self, gens: Sequence[Perm], degree: int | None = None, *,
                 parent: "PermGroup | None" = None, presentation: Presentation | None = None,
                 semiregular: bool | None = None):
        gens = tuple(gens)
        if degree is None:
            if not gens:
                raise PermGroupError("degree required for an empty generating set")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise PermGroupError("generators act on different domains")
        if presentation is not None and presentation.rank != len(gens):
            raise PermGroupError("presentation rank does not match generator count")
        self.degree = degree
        self.gens = gens
        self.parent = parent
        self.presentation = presentation
        if semiregular is None:
            semiregular = parent.semiregular if parent is not None else False
        self.semiregular = semiregular
        self.levels: list[_Level] = []
        nontrivial = [g for g in gens if not g.is_identity()]
        if semiregular:
            if nontrivial:
                lvl = _Level(0, degree)
                lvl.add_gens(nontrivial)
                self.levels = [lvl]
        else:
            self._schreier_sims(nontrivial)
        if parent is not None:
            for g in gens:
                if not parent.contains(g):
                    raise PermGroupError(f"generator {g} is not in the parent group")

    # -- construction -------------------------------------------------------

    def _schreier_sims(self, gens: list[Perm]) -> None:
        levels = self.levels
        for g in gens:
            if all(g.a[lvl.base] == lvl.base for lvl in levels):
                levels.append(_Level(_first_moved(g), self.degree))
        for g in gens:
            for lvl in levels:
                lvl.add_gens([g])
                if g.a[lvl.base] != lvl.base:
                    break
        i = len(levels) - 1
        while i >= 0:
            lvl = levels[i]
            jump = None
            for pt in lvl.orbit:
                pt = int(pt)
                for gi in range(len(lvl.gens)):
                    if (pt, gi) in lvl.tested:
                        continue
                    lvl.tested.add((pt, gi))
                    s = lvl.gens[gi]
                    h = lvl.transversal(pt) * s * lvl.transversal(int(s.a[pt])).inverse()
                    if h.is_identity():
                        continue
                    y, j = self._sift(h, i + 1)
                    if j == len(levels) and y.is_identity():
                        continue
                    if j == len(levels):
                        levels.append(_Level(_first_moved(y), self.degree))
                    for lv in levels[i + 1:j + 1]:
                        lv.add_gens([y])
                    jump = j
                    break
                if jump is not None:
                    break
            i = jump if jump is not None else i - 1

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for k in range(start, len(self.levels)):
            lvl = self.levels[k]
            pt = int(g.a[lvl.base])
            if not lvl.contains_point(pt):
                return g, k
            g = g * lvl.transversal(pt).inverse()
        return g, len(self.levels)

    def with_generators(self, extra: Sequence[Perm]) -> "PermGroup":
        """Same parent and flags, generators extended by ``extra``."""
        extra = [g for g in extra if not g.is_identity()]
        if self.semiregular and extra:
            new = PermGroup.__new__(PermGroup)
            new.degree = self.degree
            new.gens = self.gens + tuple(extra)
            new.parent = self.parent
            new.presentation = None
            new.semiregular = True
            if self.levels:
                lvl = self.levels[0].copy()
            else:
                lvl = _Level(0, self.degree)
            lvl.add_gens(extra)
            new.levels = [lvl]
            return new
        return PermGroup(self.gens + tuple(extra), self.degree, parent=self.parent,
                         semiregular=self.semiregular)

    # -- queries ------------------------------------------------------------

    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= int(lvl.orbit.size)
        return n

    def __len__(self) -> int:
        return self.order()

    @property
    def base(self) -> list[int]:
        return [lvl.base for lvl in self.levels]

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            raise PermGroupError("domain mismatch")
        residue, k = self._sift(g)
        return k == len(self.levels) and residue.is_identity()

    def __contains__(self, g: Perm) -> bool:
        return self.contains(g)

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def is_trivial(self) -> bool:
        return not self.levels

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        if self.semiregular and other.semiregular:
            return bool(other.point_mask()[self.points()].all())
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup) or other.degree != self.degree:
            return False
        return self.order() == other.order() and self.is_subgroup_of(other)

    __hash__ = object.__hash__

    def verify_certificate(self) -> bool:
        """Every generator sifts to the identity and the chain is consistent."""
        if not all(self.contains(g) for g in self.gens):
            return False
        for lvl in self.levels:
            for pt in lvl.orbit:
                if lvl.transversal(int(pt)).a[lvl.base] != pt:
                    return False
        return True

    def is_transitive(self) -> bool:
        return self.semiregular and self.order() == self.degree

    # -- semiregular helpers ------------------------------------------------

    def points(self) -> np.ndarray:
        """For semiregular groups: the orbit of point 0, one point per element."""
        if not self.semiregular:
            raise PermGroupError("points() needs a semiregular group")
        if not self.levels:
            return np.array([0], dtype=np.int64)
        return np.sort(self.levels[0].orbit)

    def point_mask(self) -> np.ndarray:
        m = np.zeros(self.degree, dtype=bool)
        m[self.points()] = True
        return m

    def element(self, pt: int) -> Perm:
        """For semiregular groups: the unique element sending 0 to ``pt``."""
        if not self.levels:
            if pt != 0:
                raise PermGroupError(f"point {pt} is not in the group")
            return self.identity()
        lvl = self.levels[0]
        if not lvl.contains_point(pt):
            raise PermGroupError(f"point {pt} is not in the group")
        return lvl.transversal(pt)

    def word_path(self, pt: int) -> list[int]:
        """Generator indices (into ``gens``) of a path 0 -> pt, semiregular groups only."""
        if not self.levels:
            return []
        lvl = self.levels[0]
        nontrivial = [i for i, g in enumerate(self.gens) if not g.is_identity()]
        return [nontrivial[k] if k < len(nontrivial) else k for k in lvl.path(pt)]

    def bfs_tree(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(order, back_pt, back_gen) of the level-0 Schreier tree, parents first."""
        if not self.levels:
            return (np.array([0]), np.array([0] + [-1] * (self.degree - 1)),
                    np.full(self.degree, -1))
        lvl = self.levels[0]
        return lvl.orbit, lvl.back_pt, lvl.back_gen

    def level_gens(self) -> list[Perm]:
        return self.levels[0].gens if self.levels else []

    def elements(self, threshold: int = ELEMENT_THRESHOLD) -> list[Perm]:
        n = self.order()
        if n > threshold:
            raise ThresholdExceeded(f"group of order {n} exceeds the element threshold {threshold}")
        if self.semiregular:
            return [self.element(int(p)) for p in self.points()]
        elems = [self.identity()]
        seen = {elems[0]}
        for g in elems:
            for s in self.gens:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    elems.append(h)
        return elems

    def subgroup(self, gens: Sequence[Perm]) -> "PermGroup":
        return PermGroup(gens, self.degree, parent=self, semiregular=self.semiregular)

    def trivial_subgroup(self) -> "PermGroup":
        return PermGroup([], self.degree, parent=self, semiregular=self.semiregular)

    def __repr__(self) -> str:
        return f"<PermGroup order={self.order()} degree={self.degree}>"


# ---------------------------------------------------------------------------
# regular views of arbitrary groups


@dataclass
class RegularView:
    """A regular copy of ``group``: point ``i`` of ``regular`` is ``elements[i]``."""

    group: PermGroup
    regular: PermGroup
    elements: list[Perm]
    index: dict[Perm, int]

    def to_points(self, perms: Iterable[Perm]) -> np.ndarray:
        return np.array([self.index[g] for g in perms], dtype=np.int64)

    def subgroup_points(self, sub: PermGroup) -> np.ndarray:
        return self.to_points(sub.elements())

    def lift(self, sub: PermGroup) -> PermGroup:
        """Subgroup of ``group`` matching a subgroup of ``regular``."""
        gens = [self.elements[int(g.a[0])] for g in sub.gens]
        return PermGroup(gens, self.group.degree, parent=self.group)


def regular_view(G: PermGroup, threshold: int = ELEMENT_THRESHOLD) -> RegularView:
    elems = G.elements(threshold)
    index = {g: i for i, g in enumerate(elems)}
    cols = []
    for s in G.gens:
        cols.append(Perm._raw(np.array([index[g * s] for g in elems], dtype=np.int64)))
    reg = PermGroup(cols, len(elems), semiregular=True, presentation=G.presentation)
    return RegularView(G, reg, elems, index)


def restrict_to_points(G: PermGroup, pts: np.ndarray, subgroups: Sequence[PermGroup] = ()):
    """Relabel a group acting on the invariant set ``pts`` (sorted) as ``0..len-1``.

    Returns the restricted group followed by the restricted ``subgroups``.
    """
    pts = np.asarray(pts, dtype=np.int64)
    relabel = np.full(G.degree, -1, dtype=np.int64)
    relabel[pts] = np.arange(pts.size)

    def cut(g: Perm) -> Perm:
        img = relabel[g.a[pts]]
        if (img < 0).any():
            raise PermGroupError("point set is not invariant")
        return Perm._raw(img)

    semireg = G.semiregular and pts.size > 0 and pts[0] == 0
    R = PermGroup([cut(g) for g in G.gens], pts.size, semiregular=semireg,
                  presentation=G.presentation)
    subs = [PermGroup([cut(g) for g in S.gens], pts.size, parent=R, semiregular=semireg)
            for S in subgroups]
    return (R, *subs)


def as_regular(G: PermGroup, subgroups: Sequence[PermGroup] = ()):
    """A transitive regular copy of G (and of the given subgroups of G)."""
    if G.semiregular:
        return restrict_to_points(G, G.points(), subgroups)
    view = regular_view(G)
    subs = [subgroup_from_points(view.regular, view.subgroup_points(S)) for S in subgroups]
    return (view.regular, *subs)


# ---------------------------------------------------------------------------
# core operations


def build_chain(gens: Sequence[Perm], degree: int | None = None) -> PermGroup:
    return PermGroup(gens, degree)


def membership(g: Perm, G: PermGroup) -> bool:
    return G.contains(g)


def _member_fast(N: PermGroup, g: Perm, mask: np.ndarray | None) -> bool:
    # g is known to lie in a semiregular group containing N, so its point decides
    if mask is not None:
        return bool(mask[g.a[0]])
    return N.contains(g)


def subgroup_from_points(G: PermGroup, pts: Iterable[int]) -> PermGroup:
    """Subgroup of a semiregular G whose elements are exactly the given points.

    The point set must be closed under multiplication; a greedy generating set
    is chosen in increasing point order.
    """
    pts = np.unique(np.asarray(list(pts) if not isinstance(pts, np.ndarray) else pts, dtype=np.int64))
    S = G.trivial_subgroup()
    mask = S.point_mask()
    for p in pts:
        if not mask[p]:
            S = S.with_generators([G.element(int(p))])
            mask = S.point_mask()
    if S.order() != pts.size:
        raise PermGroupError("point set is not a subgroup")
    return S


def normal_closure(G: PermGroup, seeds: Sequence[Perm], conjugators: Sequence[Perm] | None = None) -> PermGroup:
    """Smallest subgroup containing ``seeds`` and closed under conjugation by G."""
    for s in seeds:
        if not G.contains(s):
            raise PermGroupError(f"seed {s} is not in the group")
    conj = list(G.gens if conjugators is None else conjugators)
    N = G.trivial_subgroup()
    queue = list(seeds)
    while queue:
        g = queue.pop(0)
        if _member_fast(N, g, N.point_mask() if N.semiregular else None):
            continue
        N = N.with_generators([g])
        queue.extend(g.conj(c) for c in conj)
    return N


def subgroup_join(G: PermGroup, *subs: PermGroup) -> PermGroup:
    gens = [g for S in subs for g in S.gens]
    return PermGroup(gens, G.degree, parent=G, semiregular=G.semiregular)


def commutator_subgroup(G: PermGroup, A: PermGroup, B: PermGroup) -> PermGroup:
    """[A, B]: normal closure in <A, B> of the generator commutators."""
    for S in (A, B):
        if S is not G and not S.is_subgroup_of(G):
            raise PermGroupError("subgroup not within G")
    seeds = [a.comm(b) for a in A.gens for b in B.gens]
    seeds = [s for s in seeds if not s.is_identity()]
    return normal_closure(G, seeds, conjugators=list(A.gens) + list(B.gens))


def derived_subgroup(G: PermGroup) -> PermGroup:
    return commutator_subgroup(G, G, G)


def is_normal(N: PermGroup, G: PermGroup) -> bool:
    mask = N.point_mask() if (N.semiregular and G.semiregular) else None
    return all(_member_fast(N, n.conj(g), mask) for n in N.gens for g in G.gens)


def intersection(A: PermGroup, B: PermGroup, threshold: int = ELEMENT_THRESHOLD) -> PermGroup:
    parent = A.parent or B.parent or A
    if A.semiregular and B.semiregular:
        common = np.intersect1d(A.points(), B.points())
        return subgroup_from_points(parent if parent.semiregular else A, common)
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    if small.order() > threshold:
        raise ThresholdExceeded(f"intersection needs {small.order()} elements > {threshold}")
    S = PermGroup([], A.degree, parent=parent)
    for g in small.elements(threshold):
        if big.contains(g) and not S.contains(g):
            S = S.with_generators([g])
    return S


@dataclass
class QuotientMap:
    """Projection of G onto G/N; point_map sends G's points to quotient points."""

    source: PermGroup
    target: PermGroup
    point_map: np.ndarray
    view: RegularView | None = None

    def point_of(self, g: Perm) -> int:
        if self.view is not None:
            return int(self.point_map[self.view.index[g]])
        return int(self.point_map[g.a[0]])

    def __call__(self, g: Perm) -> Perm:
        return self.target.element(self.point_of(g))

    def image(self, S: PermGroup) -> PermGroup:
        return self.target.subgroup([self(g) for g in S.gens])


def _components(n: int, gens: Sequence[Perm], pts: np.ndarray) -> np.ndarray:
    rows = np.concatenate([pts for _ in gens]) if gens else np.empty(0, dtype=np.int64)
    cols = np.concatenate([g.a[pts] for g in gens]) if gens else np.empty(0, dtype=np.int64)
    graph = csr_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def quotient(G: PermGroup, N: PermGroup, budget: int = QUOTIENT_BUDGET) -> PermGroup:
    """Regular permutation representation of G/N on the cosets of N.

    The returned group has one generator per generator of G and carries the
    projection as ``.projection`` (a QuotientMap).
    """
    view = None
    if not G.semiregular:
        view = regular_view(G)
        Nreg = subgroup_from_points(view.regular, view.subgroup_points(N))
        Q = quotient(view.regular, Nreg, budget)
        Q.projection = QuotientMap(G, Q, Q.projection.point_map, view)
        return Q
    if not N.is_subgroup_of(G):
        raise PermGroupError("N is not a subgroup of G")
    index = G.order() // N.order()
    if index > budget:
        raise ThresholdExceeded(f"quotient index {index} exceeds budget {budget}")
    pts = G.points()
    raw = _components(G.degree, N.level_gens(), pts)
    # blocks in order of their smallest point
    _, first = np.unique(raw[pts], return_index=True)
    block_ids = np.full(raw.max() + 1, -1, dtype=np.int64)
    firsts = np.sort(pts[first])
    block_ids[raw[firsts]] = np.arange(firsts.size)
    label = np.full(G.degree, -1, dtype=np.int64)
    label[pts] = block_ids[raw[pts]]
    if firsts.size != index:
        raise PermGroupError("block count does not match the index")
    qgens = []
    for s in G.gens:
        img = label[s.a[pts]]
        induced = np.full(index, -1, dtype=np.int64)
        induced[label[firsts]] = img[np.searchsorted(pts, firsts)]
        if not np.array_equal(induced[label[pts]], img):
            raise NotNormal("N is not normal in G")
        qgens.append(Perm._raw(induced))
    # standardize: breadth-first from block 0 in generator order
    order = [0]
    new = np.full(index, -1, dtype=np.int64)
    new[0] = 0
    for c in order:
        for q in qgens:
            d = int(q.a[c])
            if new[d] < 0:
                new[d] = len(order)
                order.append(d)
    inv = np.array(order, dtype=np.int64)
    qgens = [Perm._raw(new[q.a[inv]]) for q in qgens]
    point_map = np.full(G.degree, -1, dtype=np.int64)
    point_map[pts] = new[label[pts]]
    Q = PermGroup(qgens, index, semiregular=True, presentation=G.presentation)
    Q.projection = QuotientMap(G, Q, point_map)
    return Q


def lower_central_series(G: PermGroup) -> list[PermGroup]:
    series = [G if G.parent is not None else PermGroup(G.gens, G.degree, parent=G, semiregular=G.semiregular)]
    while True:
        nxt = commutator_subgroup(G, series[-1], G)
        if nxt.order() == series[-1].order():
            return series
        series.append(nxt)


def derived_series(G: PermGroup) -> list[PermGroup]:
    series = [G]
    while True:
        nxt = commutator_subgroup(G, series[-1], series[-1])
        if nxt.order() == series[-1].order():
            return series
        series.append(nxt)


def _left_multiplication(G: PermGroup, s_point: int) -> np.ndarray:
    """For semiregular G: map 0^g -> 0^(s g) over G's points, s given by 0^s."""
    orbit, back_pt, back_gen = G.bfs_tree()
    gens = G.level_gens()
    out = np.full(G.degree, -1, dtype=np.int64)
    out[0] = s_point
    # the orbit array lists parents before children
    for p in orbit[1:]:
        out[p] = gens[back_gen[p]].a[out[back_pt[p]]]
    return out


def centralizer_points(G: PermGroup, of: Sequence[Perm]) -> np.ndarray:
    """Points of semiregular G whose elements commute with every element of ``of``."""
    pts = G.points()
    keep = np.ones(pts.size, dtype=bool)
    for s in of:
        left = _left_multiplication(G, int(s.a[0]))
        keep &= s.a[pts] == left[pts]
    return pts[keep]


def center(G: PermGroup, threshold: int = ELEMENT_THRESHOLD) -> PermGroup:
    if G.order() > threshold:
        raise ThresholdExceeded(f"group of order {G.order()} exceeds threshold {threshold}")
    parent = G.parent if G.parent is not None else G
    if G.semiregular:
        return subgroup_from_points(G, centralizer_points(G, G.gens))
    elems = [g for g in G.elements(threshold) if all(g * s == s * g for s in G.gens)]
    S = PermGroup([], G.degree, parent=parent)
    for g in elems:
        if not S.contains(g):
            S = S.with_generators([g])
    return S


def abelian_invariants(G: PermGroup) -> InvariantFactors:
    """Invariant factors of G/[G, G] from the Cayley graph of the abelianization."""
    Q = quotient(G, derived_subgroup(G))
    return cayley_abelian_invariants(Q)


def cayley_abelian_invariants(Q: PermGroup) -> InvariantFactors:
    """Invariants of Q_ab computed from the Schreier relators of Q's Cayley graph."""
    ngens = len(Q.gens)
    if ngens == 0:
        return invariants_from_relations(0, [])
    R = Q if Q.semiregular else regular_view(Q).regular
    orbit, back_pt, back_gen = R.bfs_tree()
    level_index = [i for i, g in enumerate(R.gens) if not g.is_identity()]
    expo = np.zeros((R.degree, ngens), dtype=np.int64)
    for p in orbit[1:]:
        expo[p] = expo[back_pt[p]]
        expo[p, level_index[back_gen[p]]] += 1
    pts = R.points()
    rows = []
    for i, s in enumerate(R.gens):
        r = expo[pts] - expo[s.a[pts]]
        r[:, i] += 1
        rows.append(r)
    mat = np.unique(np.concatenate(rows), axis=0)
    mat = mat[(mat != 0).any(axis=1)]
    return invariants_from_relations(ngens, mat.tolist())


@dataclass
class Homomorphism:
    """A homomorphism out of a semiregular group, stored as images of its points.

    ``images`` are the generator images in the target domain.  When the target
    group is semiregular only the image of point 0 is kept per element.
    """

    source: PermGroup
    images: tuple[Perm, ...]
    target: PermGroup | None
    point_images: np.ndarray
    image: PermGroup
    kernel: PermGroup

    def apply(self, g: Perm) -> Perm:
        p = int(g.a[0])
        if self.target is not None and self.target.semiregular:
            return self.target.element(int(self.point_images[p]))
        return Perm._raw(self.point_images[p].copy())

    def __call__(self, g: Perm) -> Perm:
        return self.apply(g)

    def image_of(self, S: PermGroup) -> PermGroup:
        parent = self.target if self.target is not None else self.image
        return parent.subgroup([self.apply(g) for g in S.gens])

    def image_points(self, S: PermGroup) -> np.ndarray:
        """Target points hit by S (semiregular target only)."""
        return np.unique(self.point_images[S.points()])


def homomorphism(G: PermGroup, images: Sequence[Perm], target: PermGroup | None = None) -> Homomorphism:
    """Extend ``G.gens[i] -> images[i]`` to a homomorphism and compute its kernel.

    G must be semiregular.  When G carries a presentation every relator is
    checked first; every Cayley-graph edge is then checked, which proves the
    assignment is a homomorphism.
    """
    if not G.semiregular:
        raise PermGroupError("homomorphism source must be semiregular; use as_regular first")
    images = tuple(images)
    if len(images) != len(G.gens):
        raise HomomorphismError(f"need {len(G.gens)} images, got {len(images)}")
    if G.presentation is not None:
        for rel in G.presentation.relators:
            if not evaluate(rel, images).is_identity():
                raise HomomorphismError(f"relator {rel} is not respected", rel)
    orbit, back_pt, back_gen = G.bfs_tree()
    nontrivial = [i for i, g in enumerate(G.gens) if not g.is_identity()]
    pts = G.points()
    track_point = target is not None and target.semiregular
    if track_point:
        img = np.full(G.degree, -1, dtype=np.int64)
        img[0] = 0
        for p in orbit[1:]:
            img[p] = images[nontrivial[back_gen[p]]].a[img[back_pt[p]]]
        for i, s in enumerate(G.gens):
            if not np.array_equal(img[s.a[pts]], images[i].a[img[pts]]):
                raise HomomorphismError(f"assignment is not a homomorphism (generator {i})")
        kernel_pts = pts[img[pts] == 0]
    else:
        d = images[0].degree if images else 1
        img = np.zeros((G.degree, d), dtype=np.int64)
        img[0] = np.arange(d)
        for p in orbit[1:]:
            img[p] = images[nontrivial[back_gen[p]]].a[img[back_pt[p]]]
        for i, s in enumerate(G.gens):
            if not np.array_equal(img[s.a[pts]], images[i].a[img[pts]]):
                raise HomomorphismError(f"assignment is not a homomorphism (generator {i})")
        kernel_pts = pts[(img[pts] == np.arange(d)).all(axis=1)]
    kernel = subgroup_from_points(G, kernel_pts)
    if target is not None:
        image = target.subgroup(list(images))
    else:
        image = PermGroup(images, images[0].degree if images else 1)
    return Homomorphism(G, images, target, img, image, kernel)


def homomorphism_image(G: PermGroup, generator_images: Sequence[Perm],
                       target: PermGroup | None = None) -> tuple[PermGroup, PermGroup]:
    hom = homomorphism(G, generator_images, target)
    if G.order() != hom.image.order() * hom.kernel.order():
        raise PermGroupError("first isomorphism theorem violated; chain certificate is broken")
    return hom.image, hom.kernel
