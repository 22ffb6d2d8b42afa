"""Todd-Coxeter coset enumeration (HLT strategy with full coincidence handling).

Column ``2*i`` of a coset table holds the action of generator ``i`` and
column ``2*i + 1`` the action of its inverse, so ``col ^ 1`` is the inverse
column.  Cosets are numbered from 0 here; coset 0 is the subgroup coset.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .words import Presentation, Word

DEFAULT_LIMIT = 2_000_000
_INITIAL_CAPACITY = 1 << 12

_OK = 0
_FULL = 1


class EnumerationLimitExceeded(RuntimeError):
    """The enumeration did not close within the coset limit."""

    def __init__(self, limit: int):
        super().__init__(f"coset enumeration did not close within {limit} cosets")
        self.limit = limit


# ---------------------------------------------------------------------------
# kernel


@njit(cache=True)
def _rep(parent, c):
    r = c
    while parent[r] != r:
        r = parent[r]
    while parent[c] != r:
        nxt = parent[c]
        parent[c] = r
        c = nxt
    return r


@njit(cache=True)
def _merge(parent, queue, qlen, a, b):
    a = _rep(parent, a)
    b = _rep(parent, b)
    if a == b:
        return qlen
    if a > b:
        a, b = b, a
    parent[b] = a
    queue[qlen] = b
    return qlen + 1


@njit(cache=True)
def _coincidence(table, parent, queue, ncols, a, b):
    qlen = _merge(parent, queue, 0, a, b)
    i = 0
    while i < qlen:
        g = queue[i]
        i += 1
        for x in range(ncols):
            d = table[g, x]
            if d < 0:
                continue
            xi = x ^ 1
            table[d, xi] = -1
            mu = _rep(parent, g)
            nu = _rep(parent, d)
            if table[mu, x] >= 0:
                qlen = _merge(parent, queue, qlen, nu, table[mu, x])
            elif table[nu, xi] >= 0:
                qlen = _merge(parent, queue, qlen, mu, table[nu, xi])
            else:
                table[mu, x] = nu
                table[nu, xi] = mu


@njit(cache=True)
def _define(table, parent, state, a, x):
    # state[0] = number of cosets ever defined, state[1] = capacity
    n = state[0]
    if n >= state[1]:
        return -1
    for y in range(table.shape[1]):
        table[n, y] = -1
    parent[n] = n
    table[a, x] = n
    table[n, x ^ 1] = a
    state[0] = n + 1
    return n


@njit(cache=True)
def _scan_and_fill(table, parent, queue, state, ncols, a, word, lo, hi):
    f = a
    b = a
    i = lo
    j = hi - 1
    while True:
        while i <= j and table[f, word[i]] >= 0:
            f = table[f, word[i]]
            i += 1
        if i > j:
            if f != a:
                _coincidence(table, parent, queue, ncols, f, a)
            return _OK
        while j >= i and table[b, word[j] ^ 1] >= 0:
            b = table[b, word[j] ^ 1]
            j -= 1
        if j < i:
            _coincidence(table, parent, queue, ncols, f, b)
            return _OK
        if i == j:
            table[f, word[i]] = b
            table[b, word[i] ^ 1] = f
            return _OK
        if _define(table, parent, state, f, word[i]) < 0:
            return _FULL


@njit(cache=True)
def _hlt(table, parent, queue, state, ncols, rel_flat, rel_off, sub_flat, sub_off):
    for x in range(ncols):
        table[0, x] = -1
    parent[0] = 0
    state[0] = 1
    for s in range(sub_off.shape[0] - 1):
        if _scan_and_fill(table, parent, queue, state, ncols, 0, sub_flat,
                          sub_off[s], sub_off[s + 1]) == _FULL:
            return _FULL
    a = 0
    while a < state[0]:
        if parent[a] == a:
            for r in range(rel_off.shape[0] - 1):
                if _scan_and_fill(table, parent, queue, state, ncols, a, rel_flat,
                                  rel_off[r], rel_off[r + 1]) == _FULL:
                    return _FULL
                if parent[a] != a:
                    break
            if parent[a] == a:
                for x in range(ncols):
                    if table[a, x] < 0:
                        if _define(table, parent, state, a, x) < 0:
                            return _FULL
        a += 1
    return _OK


@njit(cache=True)
def _standardize(table, parent, n_defined, ncols):
    """Renumber live cosets breadth-first from coset 0 in column order."""
    new = np.full(n_defined, -1, dtype=np.int64)
    order = np.empty(n_defined, dtype=np.int64)
    new[0] = 0
    order[0] = 0
    count = 1
    head = 0
    while head < count:
        c = order[head]
        head += 1
        for x in range(ncols):
            d = table[c, x]
            if new[d] < 0:
                new[d] = count
                order[count] = d
                count += 1
    out = np.empty((count, ncols), dtype=np.int64)
    for k in range(count):
        c = order[k]
        for x in range(ncols):
            out[k, x] = new[table[c, x]]
    return out


# ---------------------------------------------------------------------------
# public surface


def _encode(word: Word) -> list[int]:
    return [2 * g + (0 if s == 1 else 1) for g, s in word.letters]


def _cyclic_key(code: list[int]) -> tuple[int, ...]:
    inv = [c ^ 1 for c in reversed(code)]
    best = None
    for seq in (code, inv):
        for k in range(len(seq)):
            rot = tuple(seq[k:] + seq[:k])
            if best is None or rot < best:
                best = rot
    return best


def _cyclically_reduce(code: list[int]) -> list[int]:
    while len(code) >= 2 and code[0] == code[-1] ^ 1:
        code = code[1:-1]
    return code


def prepare_relators(relators: Sequence[Word]) -> list[list[int]]:
    """Encode, cyclically reduce, deduplicate up to rotation/inversion, sort by length.

    These operations do not change the normal closure of the relators.
    """
    seen = {}
    for r in relators:
        code = _cyclically_reduce(_encode(r))
        if not code:
            continue
        key = _cyclic_key(code)
        if key not in seen:
            seen[key] = code
    return sorted(seen.values(), key=lambda c: (len(c), c))


def _flatten(codes: list[list[int]]) -> tuple[np.ndarray, np.ndarray]:
    off = np.zeros(len(codes) + 1, dtype=np.int64)
    for i, c in enumerate(codes):
        off[i + 1] = off[i] + len(c)
    flat = np.fromiter((x for c in codes for x in c), dtype=np.int64, count=int(off[-1]))
    return flat, off


@dataclass(frozen=True, eq=False)
class CosetTable:
    presentation: Presentation
    subgroup_generators: tuple[Word, ...]
    table: np.ndarray

    @property
    def index(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.index

    def column(self, gen: int, sign: int = 1) -> np.ndarray:
        return self.table[:, 2 * gen + (0 if sign == 1 else 1)]

    def trace(self, coset: int, word: Word) -> int:
        for g, s in word.letters:
            coset = int(self.table[coset, 2 * g + (0 if s == 1 else 1)])
        return coset

    def trace_all(self, word: Word) -> np.ndarray:
        cur = np.arange(self.index)
        for g, s in word.letters:
            cur = self.table[cur, 2 * g + (0 if s == 1 else 1)]
        return cur

    def is_closed(self) -> bool:
        return bool((self.table >= 0).all())

    def is_consistent(self) -> bool:
        idx = np.arange(self.index)
        for col in range(self.table.shape[1]):
            if not np.array_equal(self.table[self.table[:, col], col ^ 1], idx):
                return False
        return True

    def check(self) -> None:
        """Raise AssertionError unless the table satisfies every defining invariant."""
        assert self.is_closed(), "table has undefined entries"
        assert self.is_consistent(), "table is not consistent with inverses"
        idx = np.arange(self.index)
        for r in self.presentation.relators:
            assert np.array_equal(self.trace_all(r), idx), f"relator {r} not closed"
        for w in self.subgroup_generators:
            assert self.trace(0, w) == 0, f"subgroup generator {w} does not fix coset 0"

    def element_words(self) -> list[Word]:
        """Breadth-first shortlex word for each coset (column order g1, g1^-1, g2, ...)."""
        names = self.presentation.names
        words: list[Word | None] = [None] * self.index
        words[0] = Word.identity(names)
        queue = [0]
        for c in queue:
            for col in range(self.table.shape[1]):
                d = int(self.table[c, col])
                if words[d] is None:
                    words[d] = Word(words[c].letters + ((col >> 1, -1 if col & 1 else 1),), names)
                    queue.append(d)
        return words

    def to_tsv(self) -> str:
        names = self.presentation.names
        header = ["coset"]
        for n in names:
            header += [n, f"{n}^-1"]
        buf = io.StringIO()
        buf.write("\t".join(header) + "\n")
        for i, row in enumerate(self.table):
            buf.write("\t".join([str(i + 1)] + [str(int(v) + 1) for v in row]) + "\n")
        return buf.getvalue()


def enumerate_cosets(p: Presentation, subgroup: Sequence[Word] = (), limit: int = DEFAULT_LIMIT) -> CosetTable:
    """Enumerate the cosets of ``<subgroup>`` in the group presented by ``p``.

    Raises EnumerationLimitExceeded when more than ``limit`` cosets would be
    defined; the table is never silently truncated.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    for w in subgroup:
        if w.names != p.names:
            raise ValueError(f"subgroup word {w} is not over the presentation's generators")
    ncols = 2 * p.rank
    rel_flat, rel_off = _flatten(prepare_relators(p.relators))
    sub_flat, sub_off = _flatten([_encode(w) for w in subgroup if w])

    if ncols == 0:
        return CosetTable(p, tuple(subgroup), np.zeros((1, 0), dtype=np.int64))

    capacity = min(limit, _INITIAL_CAPACITY)
    while True:
        table = np.empty((capacity, ncols), dtype=np.int64)
        parent = np.empty(capacity, dtype=np.int64)
        queue = np.empty(capacity, dtype=np.int64)
        state = np.array([0, capacity], dtype=np.int64)
        status = _hlt(table, parent, queue, state, ncols, rel_flat, rel_off, sub_flat, sub_off)
        if status == _OK:
            break
        if capacity >= limit:
            raise EnumerationLimitExceeded(limit)
        capacity = min(limit, capacity * 4)
    std = _standardize(table, parent, int(state[0]), ncols)
    return CosetTable(p, tuple(subgroup), std)


def regular_representation(t: CosetTable):
    """Right-multiplication action on the cosets of the trivial subgroup."""
    from .permsys import Perm, PermGroup

    if not t.is_closed():
        raise ValueError("coset table is not closed")
    if any(w for w in t.subgroup_generators):
        raise ValueError("regular representation needs a table for the trivial subgroup")
    perms = [Perm._raw(t.table[:, 2 * i].copy()) for i in range(t.presentation.rank)]
    return PermGroup(perms, t.index, presentation=t.presentation, semiregular=True)
