"""The catalog of finite groups the verification suites run over."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Any

from ..words import Presentation, parse_presentation

# how an expected value is known
CLOSED_FORM = "closed-form"  # a published formula or statement
FORCED = "forced"            # immediate from the definitions
COMPUTED = "computed"        # produced by an independent computation
LITERATURE = "literature"    # standard value from the group theory literature


@dataclass(frozen=True)
class Expected:
    value: Any
    basis: str


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    text: str
    family: str
    params: tuple[int, ...] = ()
    expected: dict[str, Expected] = field(default_factory=dict)
    description: str = ""

    @property
    def presentation(self) -> Presentation:
        return parse_presentation(self.text)

    def expect(self, name: str) -> Expected | None:
        return self.expected.get(name)


def _pres(gens: str, rels: str) -> str:
    return f"generators: {gens}\nrelators: {rels}\n"


def _is_odd_prime_power(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    p = next(d for d in range(3, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def _cyclic(n: int) -> CatalogEntry:
    exp = {"order": Expected(n, FORCED), "schur_order": Expected(1, LITERATURE)}
    if _is_odd_prime_power(n):
        exp["R_order"] = Expected(1, CLOSED_FORM)
    return CatalogEntry(f"cyc:{n}", _pres("a", f"a^{n}"), "cyclic", (n,), exp, f"cyclic group of order {n}")


def _elem2(k: int) -> CatalogEntry:
    names = "abcdefgh"[:k]
    rels = [f"{g}^2" for g in names] + [f"[{a},{b}]" for i, a in enumerate(names) for b in names[i + 1:]]
    n = 2 ** k
    exp = {
        "order": Expected(n, FORCED),
        "chi_order": Expected(2 ** (n - 1) * n, CLOSED_FORM),
        "R_order": Expected(2 ** (n - 1 - k - comb(k, 2)), CLOSED_FORM),
        "schur_order": Expected(2 ** comb(k, 2), CLOSED_FORM),
        "L_invariants": Expected([2] * (n - 1), CLOSED_FORM),
    }
    return CatalogEntry(f"elem2:{k}", _pres(" ".join(names), " ".join(rels)), "elementary abelian 2-group",
                        (k,), exp, f"elementary abelian group of order {n}")


def _entries() -> list[CatalogEntry]:
    out = [CatalogEntry("triv", _pres("a", "a"), "trivial", (), {
        "order": Expected(1, FORCED), "chi_order": Expected(1, FORCED), "R_order": Expected(1, FORCED),
        "schur_order": Expected(1, FORCED)}, "trivial group")]
    out += [_cyclic(n) for n in (2, 3, 4, 6, 9)]
    out += [_elem2(k) for k in (1, 2, 3)]
    out += [
        CatalogEntry("ab:3x3", _pres("a b", "a^3 b^3 [a,b]"), "abelian", (3, 3), {
            "order": Expected(9, FORCED), "R_order": Expected(1, CLOSED_FORM),
            "schur_order": Expected(3, LITERATURE)}, "C3 x C3"),
        CatalogEntry("ab:3x9", _pres("a b", "a^3 b^9 [a,b]"), "abelian", (3, 9), {
            "order": Expected(27, FORCED), "R_order": Expected(1, CLOSED_FORM),
            "schur_order": Expected(3, LITERATURE)}, "C3 x C9"),
        CatalogEntry("ab:2x2x4", _pres("a b c", "a^2 b^2 c^4 [a,b] [a,c] [b,c]"), "abelian", (2, 2, 4), {
            "order": Expected(16, FORCED), "R_nontrivial": Expected(True, CLOSED_FORM),
            "schur_order": Expected(8, LITERATURE)}, "C2 x C2 x C4, elementary abelian quotient of rank 3"),
        CatalogEntry("dih:3", _pres("a b", "a^3 b^2 (a*b)^2"), "metacyclic", (3,), {
            "order": Expected(6, FORCED), "R_order": Expected(1, CLOSED_FORM),
            "schur_order": Expected(1, LITERATURE)}, "S3, dihedral of order 6"),
        CatalogEntry("dih:4", _pres("a b", "a^4 b^2 (a*b)^2"), "metacyclic", (4,), {
            "order": Expected(8, FORCED), "R_order": Expected(1, CLOSED_FORM),
            "schur_order": Expected(2, LITERATURE)}, "dihedral of order 8"),
        CatalogEntry("quat:8", _pres("a b", "a^4 a^2*b^-2 b^-1*a*b*a"), "metacyclic", (8,), {
            "order": Expected(8, FORCED), "R_order": Expected(1, CLOSED_FORM),
            "schur_order": Expected(1, LITERATURE)}, "quaternion group of order 8"),
        CatalogEntry("dic:3", _pres("a b", "a^3 b^4 b^-1*a*b*a"), "metacyclic", (3,), {
            "order": Expected(12, FORCED), "R_order": Expected(1, CLOSED_FORM),
            "schur_order": Expected(1, LITERATURE)}, "C3 semidirect C4, dicyclic of order 12"),
        CatalogEntry("heis:2", _pres("a b", "a^2 b^2 [a,b]^2 [a,b,a] [a,b,b]"), "class-2 quotient", (2,), {
            "order": Expected(8, COMPUTED), "R_order": Expected(1, CLOSED_FORM),
            "schur_order": Expected(2, LITERATURE)},
            "free nilpotent class-2 group on two generators modulo 2"),
        CatalogEntry("heis:3", _pres("a b", "a^3 b^3 [a,b]^3 [a,b,a] [a,b,b]"), "class-2 quotient", (3,), {
            "order": Expected(27, COMPUTED), "R_order": Expected(1, CLOSED_FORM),
            "schur_order": Expected(9, LITERATURE)},
            "free nilpotent class-2 group on two generators modulo 3, exponent 3"),
    ]
    return out


_CATALOG = {e.key: e for e in _entries()}


def catalog() -> list[CatalogEntry]:
    return list(_CATALOG.values())


def lookup(key: str) -> CatalogEntry:
    try:
        return _CATALOG[key]
    except KeyError:
        raise KeyError(f"unknown catalog key {key!r}") from None


def keys() -> list[str]:
    return list(_CATALOG)


@dataclass(frozen=True)
class Epimorphism:
    """Generator images of an epimorphism between catalog groups, as words over the target."""

    source: str
    target: str
    images: tuple[str, ...]
    description: str


EPIMORPHISMS = [
    Epimorphism("elem2:3", "elem2:2", ("a", "b", "1"), "drop the last coordinate"),
    Epimorphism("elem2:2", "elem2:2", ("a", "b"), "identity"),
    Epimorphism("elem2:3", "elem2:3", ("b", "c", "a*b"), "automorphism of order 7"),
    Epimorphism("elem2:3", "elem2:1", ("a", "a", "1"), "onto a cyclic quotient"),
    Epimorphism("dih:4", "elem2:2", ("a", "b"), "abelianization"),
]
