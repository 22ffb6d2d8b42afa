"""Verification suites: each runs the weakcomm and groupring routines over catalog entries."""

from __future__ import annotations

import random
import re
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from ..enumerator import DEFAULT_LIMIT, EnumerationLimitExceeded
from ..groupring import build_aug_quotient, compare_L_abelianization, verify_relation_calculus
from ..permsys import ThresholdExceeded
from ..weakcomm import (
    BudgetExceeded,
    build_chi,
    build_nu,
    induced_epimorphism,
    model_group,
    schur_multiplier,
    verify_abelian_theorem,
    verify_canonical_quotients,
    verify_corollary_chimodR,
    verify_gamma_series,
    verify_lemma_chain,
    verify_R_oracle,
)
from ..weakcomm.checks import is_elementary_abelian_2, quotient_invariants
from ..weakcomm.report import CheckReport
from .catalog import EPIMORPHISMS, lookup

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
BUDGET_ERRORS = (EnumerationLimitExceeded, ThresholdExceeded, BudgetExceeded)


@dataclass
class ClaimRecord:
    suite: str
    key: str
    claim_id: str
    claim: str
    anchor: str
    status: str
    measured: Any = None
    expected: Any = None
    note: str = ""
    seconds: float | None = None


@dataclass
class VerificationReport:
    suite: str
    selection: list[str]
    budget_cosets: int
    records: list[ClaimRecord] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(r.status == status for r in self.records)

    @property
    def budget_skips(self) -> int:
        return sum(r.status == SKIPPED and r.note.startswith("budget") for r in self.records)

    @property
    def exit_status(self) -> int:
        if self.count(FAIL):
            return 1
        if self.budget_skips:
            return 3
        return 0

    def ok(self) -> bool:
        return self.exit_status == 0


class Workspace:
    """Per-run cache of built models and contexts, keyed by catalog key."""

    def __init__(self, budget: int = DEFAULT_LIMIT):
        self.budget = budget
        self._cache: dict[tuple[str, str], Any] = {}

    def _get(self, kind: str, key: str, make: Callable[[], Any]):
        slot = (kind, key)
        if slot not in self._cache:
            try:
                self._cache[slot] = make()
            except Exception as exc:  # cached so a failing build is not retried per claim
                self._cache[slot] = exc
        value = self._cache[slot]
        if isinstance(value, Exception):
            raise value
        return value

    def model(self, key: str):
        return self._get("model", key, lambda: model_group(lookup(key).presentation, self.budget, key))

    def chi(self, key: str):
        return self._get("chi", key, lambda: build_chi(self.model(key), self.budget))

    def nu(self, key: str):
        return self._get("nu", key, lambda: build_nu(self.model(key), self.budget))


# a claim is (claim text, passed, measured, expected, note)
Claim = tuple


@dataclass(frozen=True)
class Suite:
    id: str
    anchor: str
    selection: tuple[str, ...]
    run: Callable[[Workspace, str], Iterable[Claim]]
    description: str = ""


def _from_report(rep: CheckReport) -> list[Claim]:
    return [(c.claim, c.passed, c.measured, c.expected, c.note) for c in rep]


def _expected(key: str, name: str):
    e = lookup(key).expect(name)
    return (None, "") if e is None else (e.value, f"expected value: {e.basis}")


# ---------------------------------------------------------------------------
# suite bodies


def _lemma11(ws: Workspace, key: str):
    return _from_report(verify_lemma_chain(ws.chi(key)))


def _quotients(ws: Workspace, key: str):
    return _from_report(verify_canonical_quotients(ws.chi(key), ws.model(key)))


def _schur(ws: Workspace, key: str):
    c, n = ws.chi(key), ws.nu(key)
    s = schur_multiplier(c, n)
    out = [("W/R and J/Delta have equal invariants", s.agree, str(s.via_chi), str(s.via_nu), "")]
    exp, note = _expected(key, "schur_order")
    if exp is not None:
        out.append(("|M(H)| matches the expected value", s.order() == exp, s.order(), exp, note))
    out += _from_report(verify_corollary_chimodR(c, n, s))
    return out


def _prop21(ws: Workspace, key: str):
    m, c = ws.model(key), ws.chi(key)
    out = _from_report(compare_L_abelianization(m, c))
    full, reduced = build_aug_quotient(m).invariants, build_aug_quotient(m, reduced=True).invariants
    out.append(("reduced I_2 generators give the same invariants", full == reduced, str(reduced), str(full), ""))
    exp, note = _expected(key, "L_invariants")
    if exp is not None:
        got = quotient_invariants(c.L, c.Lprime)
        ok = c.Lprime.order() == 1 and got.as_list() == exp
        out.append(("L is elementary abelian of order 2^(n-1)", ok, str(got), f"(Z/2)^{len(exp)}", note))
    out += _from_report(verify_relation_calculus(m))
    return out


def _oracle(ws: Workspace, key: str):
    m, c = ws.model(key), ws.chi(key)
    return _from_report(verify_R_oracle(c, m, random.Random(key)))


def _abelian(ws: Workspace, key: str):
    m = ws.model(key)
    if not m.is_abelian():
        raise PreconditionFailed("H is not abelian")
    return _from_report(verify_abelian_theorem(ws.chi(key), m))


def _elem2(ws: Workspace, key: str):
    c = ws.chi(key)
    out = []
    exp, note = _expected(key, "chi_order")
    out.append(("|chi(H)| = 2^(n-1) n", c.order == exp, c.order, exp, note))
    exp, note = _expected(key, "R_order")
    out.append(("|R(H)| = 2^(n-1-k-C(k,2))", c.R.order() == exp, c.R.order(), exp, note))
    return out


def _gamma(ws: Workspace, key: str):
    if not is_elementary_abelian_2(ws.model(key)):
        raise PreconditionFailed("H is not an elementary abelian 2-group")
    return _from_report(verify_gamma_series(ws.chi(key)))


TRANSPORT_NOTE = ("finite image of a free nilpotent class-2 group; R-triviality passes to images "
                  "under induced epimorphisms")


def _rtrivial(ws: Workspace, key: str):
    c = ws.chi(key)
    note = TRANSPORT_NOTE if lookup(key).family == "class-2 quotient" else ""
    return [("R(H) = 1", c.R.order() == 1, c.R.order(), 1, note)]


def _rank3(ws: Workspace, key: str):
    c = ws.chi(key)
    return [("R(H) != 1", c.R.order() > 1, c.R.order(), "> 1", "")]


def _remark41(ws: Workspace, label: str):
    epi = next(e for e in EPIMORPHISMS if _epi_label(e) == label)
    rep = induced_epimorphism(ws.chi(epi.source), ws.chi(epi.target), list(epi.images))
    return [(c.claim, c.passed, c.measured, c.expected, epi.description) for c in rep]


def _epi_label(e) -> str:
    return f"{e.source}->{e.target}:{','.join(e.images)}"


class PreconditionFailed(ValueError):
    """The selected group does not satisfy the suite's hypothesis."""


# ---------------------------------------------------------------------------
# registry

_ALL_KEYS = ("triv", "cyc:2", "cyc:3", "cyc:4", "cyc:6", "cyc:9", "elem2:1", "elem2:2", "elem2:3",
             "ab:3x3", "ab:3x9", "ab:2x2x4", "dih:3", "dih:4", "quat:8", "dic:3", "heis:2", "heis:3")
_SMALL = tuple(k for k in _ALL_KEYS if k not in ("cyc:9", "ab:3x3", "ab:3x9", "ab:2x2x4", "dic:3", "heis:3"))
_UP_TO_16 = tuple(k for k in _ALL_KEYS if k not in ("ab:3x9", "heis:3"))
_ABELIAN = ("triv", "cyc:2", "cyc:3", "cyc:4", "cyc:6", "cyc:9", "elem2:1", "elem2:2", "elem2:3",
            "ab:3x3", "ab:3x9", "ab:2x2x4")
_ELEM2 = ("elem2:1", "elem2:2", "elem2:3")

SUITES: dict[str, Suite] = {s.id: s for s in [
    Suite("lemma11", "R(H) is normal and psi-invariant; [W,H] <= R <= W <= D; "
          "[h1,h2^psi]^h3 = [h1,h2^psi]^(h3^psi); D(H) centralizes L(H)", _ALL_KEYS, _lemma11,
          "basic properties of R, W, D and L"),
    Suite("quotients", "chi(H)/D = H x H, chi(H)/DL = H/H', chi(H)/W = T(H), DL/D = L/W, "
          "L'W/W = L'/(L' cap W) with L' cap W central in L", _ALL_KEYS, _quotients,
          "canonical quotients of chi(H)"),
    Suite("schur", "W(H)/R(H) and J(H)/Delta(H) are both the Schur multiplier M(H); "
          "chi(H)/R(H) = nu(H)/Delta(H) of order |H|^2 |M(H)|", _SMALL, _schur,
          "Schur multiplier two ways"),
    Suite("prop21", "L(H)/L(H)' is isomorphic to A(H)/I_2(H)", _UP_TO_16, _prop21,
          "L/L' against the augmentation quotient"),
    Suite("prop42-oracle", "R(H) is the normal closure of all element defects and is generated by "
          "generator-triple defects conjugated by any H'-transversal", _UP_TO_16, _oracle,
          "generating sets for R(H)"),
    Suite("abelian-421", "for abelian H: D = W = [L,H], R = [D,H] = [L,2H], L of class <= 2, "
          "L' = D^2 central, R^2 = 1", _ABELIAN, _abelian, "structure for abelian H"),
    Suite("elem2", "for elementary abelian H of order n = 2^k: |chi(H)| = 2^(n-1) n and "
          "|R(H)| = 2^(n-1-k-C(k,2))", _ELEM2, _elem2, "order formulas for elementary abelian 2-groups"),
    Suite("gamma", "for elementary abelian 2-groups: gamma_2(chi(H)) = D(H) and gamma_3(chi(H)) = R(H)",
          _ELEM2, _gamma, "lower central series"),
    Suite("rtrivial", "R(H) = 1 for odd abelian p-groups, metacyclic groups and free nilpotent class-2 groups",
          ("cyc:9", "ab:3x3", "ab:3x9", "dih:3", "dih:4", "quat:8", "dic:3", "heis:2", "heis:3"),
          _rtrivial, "triviality of R(H)"),
    Suite("rank3", "R(H) != 1 when H has an elementary abelian quotient of rank at least 3",
          ("elem2:3", "ab:2x2x4"), _rank3, "nontriviality of R(H)"),
    Suite("remark41", "an epimorphism H -> K induces chi(H) -> chi(K) commuting with psi, "
          "with L(H) onto L(K) and R(H) onto R(K)", tuple(_epi_label(e) for e in EPIMORPHISMS),
          _remark41, "induced epimorphisms"),
]}

SUITE_IDS = tuple(SUITES) + ("all",)


def _slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")


def _resolve_selection(suite: Suite, select: Iterable[str] | None) -> list[str]:
    if select is None:
        return list(suite.selection)
    chosen = list(dict.fromkeys(select))
    if suite.id == "remark41":
        return [label for label in suite.selection if label.split("->")[0] in chosen]
    for k in chosen:
        lookup(k)
    return chosen


def _jsonable(v):
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, float):
        return round(v, 6)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return str(v)


def run_one(suite: Suite, ws: Workspace, key: str, timings: bool = False) -> list[ClaimRecord]:
    t0 = time.perf_counter()

    def rec(claim, status, measured=None, expected=None, note=""):
        return ClaimRecord(suite.id, key, f"{suite.id}.{_slug(claim)}", claim, suite.anchor, status,
                           _jsonable(measured), _jsonable(expected), note)

    try:
        records = [rec(c, PASS if ok else FAIL, meas, exp, note) for c, ok, meas, exp, note in suite.run(ws, key)]
    except BUDGET_ERRORS as exc:
        records = [rec("entry", SKIPPED, note=f"budget: {exc}")]
    except PreconditionFailed as exc:
        records = [rec("entry", SKIPPED, note=f"precondition: {exc}")]
    except Exception as exc:  # an operation that raised can never count as a pass
        records = [rec("entry", FAIL, note=f"error: {type(exc).__name__}: {exc}")]
    if timings:
        dt = round(time.perf_counter() - t0, 3)
        for r in records:
            r.seconds = dt
    return records


def run_suite(suite_id: str, select: Iterable[str] | None = None, budget: int = DEFAULT_LIMIT,
              timings: bool = False, workspace: Workspace | None = None) -> VerificationReport:
    """Run one suite (or ``all``) and collect a report ordered by suite then selection order."""
    if suite_id != "all" and suite_id not in SUITES:
        raise KeyError(f"unknown suite {suite_id!r}; choose from {', '.join(SUITE_IDS)}")
    ws = workspace or Workspace(budget)
    ids = list(SUITES) if suite_id == "all" else [suite_id]
    sel_all: list[str] = []
    records: list[ClaimRecord] = []
    for sid in ids:
        suite = SUITES[sid]
        sel = _resolve_selection(suite, select)
        sel_all += [k for k in sel if k not in sel_all]
        for key in sel:
            records += run_one(suite, ws, key, timings)
    return VerificationReport(suite_id, sel_all, budget, records)
