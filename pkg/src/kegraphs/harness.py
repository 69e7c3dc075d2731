"""Theorem checks on single graphs, sweeps over graph streams, and catalog search."""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from functools import cached_property
from itertools import combinations
from multiprocessing import Pool
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator, Literal

from . import __version__
from .configurations import (
    DEFAULT_NODE_BUDGET,
    SearchBudgetError,
    _flower_posy_mask,
    _perfect_flower_mask,
    _Walker,
)
from .decomposition import Partition, crossing_edges
from .graph import (
    DEFAULT_ENUMERATION_CAP,
    Graph,
    GraphError,
    bits,
    emit_graph6,
    enumerate_labeled_graphs,
    induced_by_mask,
    parse_graph6,
    random_graph,
    read_graph6_stream,
)
from .matching import (
    DEFAULT_MATCHING_CAP,
    MatchingCapError,
    enumerate_maximum_matchings,
    maximum_matching,
    satisfies_alternation_lemma,
    symmetric_difference_components,
)
from .oracles import OracleCapError, alpha_bruteforce, det_bareiss, perm_ryser
from .sachs import SachsCapError, _sums, enumerate_sachs, enumerate_ssa, prk

Status = Literal["pass", "fail", "not-applicable", "error"]

CHECK_IDS = (
    "thm-sterboul-equivalence",
    "lemma-symmetric-difference",
    "lemma-ssa-no-odd-cycles",
    "cor-prk-equals-2mu",
    "thm-crossing-edge-exclusion",
    "thm-det-factorization",
    "thm-perm-factorization",
    "cor-mu-additivity",
    "sdke-det-factorization",
    "oracle-det",
    "oracle-perm",
)

OBSERVATION_IDS = ("obs-pf-matching-invariance",)

PREDICATES = (
    "unimodular-pf-full",
    "unimodular-pff-full",
    "crossing-sachs-without-pm",
    "factorization-violation-non-ke",
)

_CAP_ERRORS = (MatchingCapError, SearchBudgetError, OracleCapError, SachsCapError)


class HarnessError(ValueError):
    pass


@dataclass(frozen=True)
class Limits:
    max_matchings: int = DEFAULT_MATCHING_CAP
    budget: int = DEFAULT_NODE_BUDGET
    max_matching_pairs: int = 20_000


@dataclass
class CheckResult:
    id: str
    status: Status
    witness: dict[str, Any] | None = None
    message: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"id": self.id, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.message is not None:
            out["message"] = self.message
        return out


@dataclass
class Report:
    input: dict[str, Any]
    checks: list[dict[str, Any]]
    seed: int | None = None
    version: str = __version__
    timing_ms: float | None = None
    summary: dict[str, Any] = field(default_factory=dict)
    observations: list[dict[str, Any]] = field(default_factory=list)
    witnesses: list[dict[str, Any]] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(c["status"] == "fail" for c in self.checks) or any(
            w.get("report", {}).get("failed") for w in self.witnesses
        )

    def status_of(self, check_id: str) -> str:
        return next(c["status"] for c in self.checks if c["id"] == check_id)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "input": self.input,
            "version": self.version,
            "seed": self.seed,
            "checks": self.checks,
            "timing_ms": self.timing_ms,
            "summary": self.summary,
        }
        if self.observations:
            out["observations"] = self.observations
        if self.witnesses:
            out["witnesses"] = self.witnesses
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _sorted_list(s: Iterable[int]) -> list[int]:
    return sorted(s)


class Facts:
    """Lazily computed, cached quantities of one graph shared across checks."""

    def __init__(self, g: Graph, limits: Limits = Limits()) -> None:
        self.g = g
        self.limits = limits

    @cached_property
    def graph6(self) -> str:
        return emit_graph6(self.g)

    @cached_property
    def mu(self) -> int:
        return len(maximum_matching(self.g))

    @cached_property
    def alpha(self) -> int:
        return alpha_bruteforce(self.g)

    @cached_property
    def ke(self) -> bool:
        return self.alpha + self.mu == self.g.n

    @cached_property
    def perfect(self) -> bool:
        return 2 * self.mu == self.g.n

    @cached_property
    def matchings(self):
        return enumerate_maximum_matchings(self.g, self.limits.max_matchings)

    @cached_property
    def _walkers(self) -> list[_Walker]:
        return [_Walker(self.g, m.mates, self.limits.budget) for m in self.matchings]

    @cached_property
    def flower_posy_masks(self) -> list[int]:
        return [_flower_posy_mask(w) for w in self._walkers]

    @cached_property
    def pf_masks(self) -> list[int]:
        return [_perfect_flower_mask(w) for w in self._walkers]

    @cached_property
    def sd_mask(self) -> int:
        acc = 0
        for mask in self.flower_posy_masks:
            acc |= mask
        return acc

    @cached_property
    def pf_mask(self) -> int:
        acc = 0
        for mask in self.pf_masks:
            acc |= mask
        return acc

    @cached_property
    def pf_partition(self) -> Partition:
        return Partition.from_mask(self.g, self.pf_mask, "PFPFF")

    @cached_property
    def sums(self) -> tuple[int, int, int]:
        return _sums(self.g)

    @property
    def det(self) -> int:
        return self.sums[0]

    @property
    def perm(self) -> int:
        return self.sums[1]

    def block_sums(self, mask: int) -> tuple[int, int, int]:
        return _sums(induced_by_mask(self.g, mask))

    @cached_property
    def pf_blocks(self) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        full = self.g.vertex_mask
        return self.block_sums(self.pf_mask), self.block_sums(full & ~self.pf_mask)

    @cached_property
    def sachs(self):
        return enumerate_sachs(self.g)

    @cached_property
    def ssa(self):
        return enumerate_ssa(self.g)

    @cached_property
    def prk(self) -> int:
        return prk(self.g)

    def summary(self) -> dict[str, Any]:
        """Everything computed so far; never triggers new work beyond the basics."""
        d = self.__dict__
        out: dict[str, Any] = {"graph6": self.graph6, "n": self.g.n, "edges": len(self.g.edges)}
        for key in ("mu", "alpha", "ke", "perfect", "prk"):
            if key in d:
                out[key] = d[key]
        if "sums" in d:
            out["det"], out["perm"], out["sachs_count"] = d["sums"]
        if "matchings" in d:
            out["maximum_matchings"] = len(d["matchings"])
        if "sd_mask" in d:
            out["SD"] = _sorted_list(bits(d["sd_mask"]))
            out["KE"] = _sorted_list(bits(self.g.vertex_mask & ~d["sd_mask"]))
        if "pf_mask" in d:
            out["PF"] = _sorted_list(bits(d["pf_mask"]))
            out["PFF"] = _sorted_list(bits(self.g.vertex_mask & ~d["pf_mask"]))
        return out


def _result(check_id: str, ok: bool, facts: Facts, **details: Any) -> CheckResult:
    if ok:
        return CheckResult(check_id, "pass")
    return CheckResult(check_id, "fail", {"graph6": facts.graph6, **details})


def _na(check_id: str, reason: str) -> CheckResult:
    return CheckResult(check_id, "not-applicable", message=reason)


def check_sterboul(f: Facts) -> CheckResult:
    cid = "thm-sterboul-equivalence"
    flags = [mask != 0 for mask in f.flower_posy_masks]
    expected = not f.ke
    for m, flag in zip(f.matchings, flags):
        if flag != expected:
            return _result(cid, False, f, matching=[list(e) for e in m.pairs],
                           flower_or_posy=flag, ke=f.ke)
    return _result(cid, True, f)


def check_symmetric_difference(f: Facts) -> CheckResult:
    cid = "lemma-symmetric-difference"
    ms = f.matchings
    if len(ms) < 2:
        return _na(cid, "fewer than two maximum matchings")
    pairs = len(ms) * (len(ms) - 1) // 2
    if pairs > f.limits.max_matching_pairs:
        return CheckResult(cid, "error", message=f"{pairs} matching pairs exceed the cap")
    for m1, m2 in combinations(ms, 2):
        for comp in symmetric_difference_components(m1, m2):
            if not satisfies_alternation_lemma(comp, m1, m2):
                return _result(cid, False, f, m1=[list(e) for e in m1.pairs],
                               m2=[list(e) for e in m2.pairs], component=list(comp.vertices))
    return _result(cid, True, f)


def check_ssa_no_odd_cycles(f: Facts) -> CheckResult:
    cid = "lemma-ssa-no-odd-cycles"
    if not f.ke:
        return _na(cid, "not Konig-Egervary")
    for h in f.ssa:
        if h.has_odd_cycle():
            return _result(cid, False, f, sachs=[list(c) for c in h.components])
    return _result(cid, True, f)


def check_prk(f: Facts) -> CheckResult:
    cid = "cor-prk-equals-2mu"
    if not f.ke:
        return _na(cid, "not Konig-Egervary")
    return _result(cid, f.prk == 2 * f.mu, f, prk=f.prk, mu=f.mu)


def check_crossing(f: Facts) -> CheckResult:
    cid = "thm-crossing-edge-exclusion"
    if not (f.ke and f.perfect):
        return _na(cid, "not Konig-Egervary with a perfect matching")
    crossing = set(crossing_edges(f.pf_partition))
    if crossing:
        for h in f.sachs:
            hit = crossing.intersection(h.edges)
            if hit:
                return _result(cid, False, f, sachs=[list(c) for c in h.components],
                               crossing=[list(e) for e in sorted(hit)],
                               PF=_sorted_list(f.pf_partition.block_a))
    return _result(cid, True, f)


def _factorization(f: Facts, cid: str, index: int) -> CheckResult:
    if not f.ke:
        return _na(cid, "not Konig-Egervary")
    whole = f.sums[index]
    (a, b) = f.pf_blocks
    return _result(cid, whole == a[index] * b[index], f, whole=whole, pf_block=a[index],
                   pff_block=b[index], PF=_sorted_list(bits(f.pf_mask)))


def check_det_factorization(f: Facts) -> CheckResult:
    return _factorization(f, "thm-det-factorization", 0)


def check_perm_factorization(f: Facts) -> CheckResult:
    return _factorization(f, "thm-perm-factorization", 1)


def check_mu_additivity(f: Facts) -> CheckResult:
    cid = "cor-mu-additivity"
    if not (f.ke and f.perfect):
        return _na(cid, "not Konig-Egervary with a perfect matching")
    full = f.g.vertex_mask
    mu_a = len(maximum_matching(induced_by_mask(f.g, f.pf_mask)))
    mu_b = len(maximum_matching(induced_by_mask(f.g, full & ~f.pf_mask)))
    return _result(cid, f.mu == mu_a + mu_b, f, mu=f.mu, mu_pf=mu_a, mu_pff=mu_b)


def check_sdke(f: Facts) -> CheckResult:
    cid = "sdke-det-factorization"
    sd = f.sd_mask
    d_sd = f.block_sums(sd)[0]
    d_ke = f.block_sums(f.g.vertex_mask & ~sd)[0]
    return _result(cid, f.det == d_sd * d_ke, f, whole=f.det, sd_block=d_sd, ke_block=d_ke,
                   SD=_sorted_list(bits(sd)))


def check_oracle_det(f: Facts) -> CheckResult:
    oracle = det_bareiss(f.g.adjacency_matrix())
    return _result("oracle-det", f.det == oracle, f, sachs=f.det, bareiss=oracle)


def check_oracle_perm(f: Facts) -> CheckResult:
    oracle = perm_ryser(f.g.adjacency_matrix())
    return _result("oracle-perm", f.perm == oracle, f, sachs=f.perm, ryser=oracle)


CHECKS: dict[str, Callable[[Facts], CheckResult]] = {
    "thm-sterboul-equivalence": check_sterboul,
    "lemma-symmetric-difference": check_symmetric_difference,
    "lemma-ssa-no-odd-cycles": check_ssa_no_odd_cycles,
    "cor-prk-equals-2mu": check_prk,
    "thm-crossing-edge-exclusion": check_crossing,
    "thm-det-factorization": check_det_factorization,
    "thm-perm-factorization": check_perm_factorization,
    "cor-mu-additivity": check_mu_additivity,
    "sdke-det-factorization": check_sdke,
    "oracle-det": check_oracle_det,
    "oracle-perm": check_oracle_perm,
}


def observe_pf_matching_invariance(f: Facts) -> dict[str, Any]:
    """Does every perfect matching alone already yield the full PF(G)?"""
    oid = "obs-pf-matching-invariance"
    if not (f.ke and f.perfect):
        return {"id": oid, "status": "not-applicable"}
    for m, mask in zip(f.matchings, f.pf_masks):
        if mask != f.pf_mask:
            return {"id": oid, "status": "differs", "graph6": f.graph6,
                    "matching": [list(e) for e in m.pairs],
                    "PF_from_matching": _sorted_list(bits(mask)),
                    "PF": _sorted_list(bits(f.pf_mask))}
    return {"id": oid, "status": "holds"}


def _run_check(check_id: str, facts: Facts) -> CheckResult:
    try:
        return CHECKS[check_id](facts)
    except _CAP_ERRORS as exc:
        return CheckResult(check_id, "error", message=f"cap exceeded: {exc}")


def _resolve_checks(checks: Iterable[str] | None) -> list[str]:
    if checks is None:
        return list(CHECK_IDS)
    chosen = list(checks)
    unknown = [c for c in chosen if c not in CHECKS]
    if unknown:
        raise HarnessError(f"unknown check ids: {unknown}")
    return chosen


def verify_graph(
    g: Graph,
    checks: Iterable[str] | None = None,
    limits: Limits = Limits(),
    observations: bool = True,
    timing: bool = False,
) -> Report:
    start = time.perf_counter()
    facts = Facts(g, limits)
    results = [_run_check(cid, facts) for cid in _resolve_checks(checks)]
    obs = []
    if observations:
        try:
            obs.append(observe_pf_matching_invariance(facts))
        except _CAP_ERRORS as exc:
            obs.append({"id": OBSERVATION_IDS[0], "status": "error", "message": str(exc)})
    elapsed = round((time.perf_counter() - start) * 1000, 3) if timing else None
    return Report(
        input={"graph6": facts.graph6, "n": g.n},
        checks=[r.to_dict() for r in results],
        timing_ms=elapsed,
        summary=facts.summary(),
        observations=obs,
    )


def revalidate(check_id: str, witness: dict[str, Any], limits: Limits = Limits()) -> Status:
    """Re-run one check from the serialized witness graph alone."""
    g = parse_graph6(witness["graph6"])
    return _run_check(check_id, Facts(g, limits)).status


# -- sweeps -----------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    n: int | None = None
    mode: Literal["exhaustive", "random", "stream"] = "exhaustive"
    samples: int = 0
    p: float = 0.5
    seed: int = 0
    source: str | None = None

    def validate(self) -> None:
        if self.mode == "exhaustive":
            if self.n is None or not 0 <= self.n <= DEFAULT_ENUMERATION_CAP:
                raise HarnessError(f"exhaustive mode needs 0 <= n <= {DEFAULT_ENUMERATION_CAP}")
        elif self.mode == "random":
            if self.n is None or self.n < 0 or self.samples < 0 or not 0 <= self.p <= 1:
                raise HarnessError("random mode needs n >= 0, samples >= 0 and 0 <= p <= 1")
        elif self.mode == "stream":
            if not self.source:
                raise HarnessError("stream mode needs a graph6 source file")
        else:
            raise HarnessError(f"unknown sweep mode {self.mode!r}")

    def describe(self) -> dict[str, Any]:
        out: dict[str, Any] = {"mode": self.mode}
        if self.mode != "stream":
            out["n"] = self.n
        if self.mode == "random":
            out.update(samples=self.samples, p=self.p, seed=self.seed)
        if self.mode == "stream":
            out["source"] = Path(self.source).name if self.source else None
        return out


def instance_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(count)]


def iter_instances(spec: SweepSpec) -> Iterator[str]:
    """Graph6 strings for every instance of the sweep, in a fixed order."""
    spec.validate()
    if spec.mode == "exhaustive":
        for g in enumerate_labeled_graphs(spec.n):  # type: ignore[arg-type]
            yield emit_graph6(g)
    elif spec.mode == "random":
        for s in instance_seeds(spec.seed, spec.samples):
            yield emit_graph6(random_graph(spec.n, spec.p, s))  # type: ignore[arg-type]
    else:
        try:
            with open(spec.source, encoding="ascii") as fh:  # type: ignore[arg-type]
                for g in read_graph6_stream(fh):
                    yield emit_graph6(g)
        except (OSError, UnicodeDecodeError) as exc:
            raise HarnessError(f"cannot read graph6 stream {spec.source}: {exc}") from None


def _verify_worker(args: tuple[str, tuple[str, ...], Limits]) -> dict[str, Any]:
    g6, checks, limits = args
    report = verify_graph(parse_graph6(g6), checks, limits)
    return {"graph6": g6, "checks": report.checks, "observations": report.observations,
            "det": report.summary.get("det")}


def _mapped(func: Callable, items: Iterable, parallel: int) -> Iterator:
    if parallel <= 1:
        yield from map(func, items)
        return
    with Pool(parallel) as pool:
        yield from pool.imap(func, items, chunksize=32)


def _aggregate_status(counts: Counter) -> Status:
    if counts["fail"]:
        return "fail"
    if counts["error"]:
        return "error"
    if counts["pass"]:
        return "pass"
    return "not-applicable"


def sweep(
    spec: SweepSpec,
    checks: Iterable[str] | None = None,
    limits: Limits = Limits(),
    parallel: int = 1,
    timing: bool = False,
) -> Report:
    start = time.perf_counter()
    chosen = tuple(_resolve_checks(checks))
    counts = {cid: Counter() for cid in chosen}
    witnesses: dict[str, list[dict[str, Any]]] = {cid: [] for cid in chosen}
    errors: dict[str, list[str]] = {cid: [] for cid in chosen}
    obs_counts: Counter = Counter()
    obs_examples: list[dict[str, Any]] = []
    det_hist: Counter = Counter()
    total = 0
    jobs = ((g6, chosen, limits) for g6 in iter_instances(spec))
    for row in _mapped(_verify_worker, jobs, parallel):
        total += 1
        if row["det"] is not None:
            det_hist[row["det"]] += 1
        for c in row["checks"]:
            counts[c["id"]][c["status"]] += 1
            if c["status"] == "fail":
                witnesses[c["id"]].append(c["witness"])
            elif c["status"] == "error":
                errors[c["id"]].append(f"{row['graph6']}: {c.get('message')}")
        for o in row["observations"]:
            obs_counts[o["status"]] += 1
            if o["status"] == "differs" and len(obs_examples) < 10:
                obs_examples.append(o)
    check_rows = []
    for cid in chosen:
        entry: dict[str, Any] = {
            "id": cid,
            "status": _aggregate_status(counts[cid]),
            "counts": {s: counts[cid][s] for s in ("pass", "fail", "not-applicable", "error")},
        }
        if witnesses[cid]:
            entry["witnesses"] = witnesses[cid]
        if errors[cid]:
            entry["errors"] = errors[cid]
        check_rows.append(entry)
    observations = [{
        "id": OBSERVATION_IDS[0],
        "counts": {s: obs_counts[s] for s in ("holds", "differs", "not-applicable", "error")},
        "examples": obs_examples,
    }]
    return Report(
        input=spec.describe(),
        seed=spec.seed if spec.mode == "random" else None,
        checks=check_rows,
        timing_ms=round((time.perf_counter() - start) * 1000, 3) if timing else None,
        summary={"instances": total,
                 "det_histogram": {str(k): det_hist[k] for k in sorted(det_hist)}},
        observations=observations,
    )


# -- catalog search -----------------------------------------------------------


def _unimodular(f: Facts) -> bool:
    return f.det in (1, -1)


def _pred_pf_full(f: Facts) -> bool:
    return f.g.n > 0 and f.ke and _unimodular(f) and f.pf_mask == f.g.vertex_mask


def _pred_pff_full(f: Facts) -> bool:
    return f.g.n > 0 and f.ke and _unimodular(f) and f.pf_mask == 0


def _pred_crossing_without_pm(f: Facts) -> bool:
    if not f.ke or f.perfect:
        return False
    crossing = set(crossing_edges(f.pf_partition))
    return bool(crossing) and any(crossing.intersection(h.edges) for h in f.ssa)


def _pred_violation_non_ke(f: Facts) -> bool:
    if f.ke:
        return False
    a, b = f.pf_blocks
    return f.det != a[0] * b[0] or f.perm != a[1] * b[1]


PREDICATE_FUNCS: dict[str, Callable[[Facts], bool]] = {
    "unimodular-pf-full": _pred_pf_full,
    "unimodular-pff-full": _pred_pff_full,
    "crossing-sachs-without-pm": _pred_crossing_without_pm,
    "factorization-violation-non-ke": _pred_violation_non_ke,
}


def predicate_holds(name: str, g: Graph, limits: Limits = Limits()) -> bool:
    if name not in PREDICATE_FUNCS:
        raise HarnessError(f"unknown predicate {name!r}; choose from {', '.join(PREDICATES)}")
    return PREDICATE_FUNCS[name](Facts(g, limits))


def _search_worker(args: tuple[str, str, Limits]) -> dict[str, Any]:
    name, g6, limits = args
    g = parse_graph6(g6)
    try:
        hit = PREDICATE_FUNCS[name](Facts(g, limits))
    except _CAP_ERRORS as exc:
        return {"graph6": g6, "hit": False, "error": str(exc)}
    if not hit:
        return {"graph6": g6, "hit": False}
    report = verify_graph(g, limits=limits)
    return {"graph6": g6, "hit": True, "report": report.to_dict() | {"failed": report.failed}}


def search(
    predicate: str,
    spec: SweepSpec,
    limits: Limits = Limits(),
    parallel: int = 1,
    timing: bool = False,
) -> Report:
    if predicate not in PREDICATE_FUNCS:
        raise HarnessError(f"unknown predicate {predicate!r}; choose from {', '.join(PREDICATES)}")
    start = time.perf_counter()
    hits: list[dict[str, Any]] = []
    errors: list[str] = []
    total = 0
    jobs = ((predicate, g6, limits) for g6 in iter_instances(spec))
    for row in _mapped(_search_worker, jobs, parallel):
        total += 1
        if row.get("error"):
            errors.append(f"{row['graph6']}: {row['error']}")
        if row["hit"]:
            hits.append({"graph6": row["graph6"], "report": row["report"]})
    entry: dict[str, Any] = {
        "id": f"search:{predicate}",
        "status": "error" if errors else "pass",
        "counts": {"instances": total, "hits": len(hits), "error": len(errors)},
    }
    if errors:
        entry["errors"] = errors
    return Report(
        input={"predicate": predicate, **spec.describe()},
        seed=spec.seed if spec.mode == "random" else None,
        checks=[entry],
        timing_ms=round((time.perf_counter() - start) * 1000, 3) if timing else None,
        summary={"instances": total, "hits": len(hits)},
        witnesses=hits,
    )


def report_as_dict(report: Report) -> dict[str, Any]:
    return asdict(report)
