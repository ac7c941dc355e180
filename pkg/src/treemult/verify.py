"""Exhaustive verification harness.

Sweeps every canonical tree in a size range against every path-type
eigenvalue up to a denominator bound, computing the multiplicity with both
engines (aborting on any disagreement), the pendant bound, and the
equivalences "m = p - 1 iff GAMMA member" and "m = p - 2 iff GAMMA2 member"
under the configured base-family modes.  Emits one JSON record per
(tree, eigenvalue) pair plus a JSON summary, with byte-identical record
files for identical configs regardless of worker count.

Also provides executable property suites for the supporting facts the
family machinery rests on (Parter vertices, branch multiplicity drop,
pendant deletion inside GAMMA members, simplicity of path eigenvalues) and
an all-eigenvalue audit that looks for high-multiplicity eigenvalues not of
the path form 2*cos(i*pi/M).
"""

from __future__ import annotations

import json
import math
import os
import random
import time
from dataclasses import dataclass, field
from multiprocessing import Pool

from treemult.families import (
    BROAD,
    STRICT,
    FamilyKind,
    Gamma2Mode,
    classify,
    generate,
)
from treemult.poly import (
    LambdaSpec,
    NonDivisibleError,
    Polynomial,
    exact_div,
    path_charpoly,
    spec_orbits,
)
from treemult.spectrum import char_poly, multiplicity, rank_nullity
from treemult.tree import (
    DEFAULT_ENUMERATION_LIMIT,
    ForestDecomposition,
    Tree,
    delete_vertex,
    emit_graph6,
    enumerate_trees,
    is_path,
    major_count,
    parse_graph6,
    pendant_count,
    pendant_vertices,
)


class EngineMismatchError(Exception):
    """The two multiplicity engines disagreed; this is an implementation bug
    and poisons any dataset, so the sweep aborts instead of recording it."""


class IoFailureError(Exception):
    """Persistence of records or summary failed."""


CONSISTENT = "CONSISTENT"
VIOLATION = "VIOLATION"
NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass(frozen=True)
class LemmaChecks:
    """Toggles for the four property suites."""

    parter: bool = True
    branch: bool = True
    pendant_deletion: bool = True
    path_simplicity: bool = True


@dataclass(frozen=True)
class SweepConfig:
    n_min: int = 1
    n_max: int = 10
    M_max: int = 11
    modes: tuple[Gamma2Mode, ...] = (BROAD,)
    lemma_checks: LemmaChecks = field(default_factory=LemmaChecks)
    worker_count: int = 1
    output_path: str | None = None
    tree_limit: int = DEFAULT_ENUMERATION_LIMIT
    # property-suite ranges (the sweep fields above bound the tree suites)
    path_n_max: int = 200
    path_M_max: int = 40
    family_k_max: int = 3
    family_n_max: int = 14
    family_M_max: int = 6

    def __post_init__(self):
        if self.n_min < 1 or self.n_min > self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")
        if self.n_max > self.tree_limit:
            raise ValueError(f"n_max {self.n_max} above enumeration limit {self.tree_limit}")
        if self.M_max < 2:
            raise ValueError("M_max must be at least 2")
        if self.worker_count < 1:
            raise ValueError("worker_count must be positive")
        if not self.modes:
            raise ValueError("at least one mode required")


@dataclass
class SweepReport:
    config: SweepConfig
    tree_count: int = 0
    spec_count: int = 0
    record_count: int = 0
    bound_violations: int = 0
    eq_top_violations: int = 0  # m = p - 1 equivalence
    eq_second: dict = field(default_factory=dict)  # mode -> violation count
    strict_discrepancies: list = field(default_factory=list)
    records_path: str | None = None
    summary_path: str | None = None
    elapsed_seconds: float = 0.0

    @property
    def broad_violations(self) -> int:
        return (
            self.bound_violations
            + self.eq_top_violations
            + self.eq_second.get(BROAD.value, 0)
        )

    def summary_dict(self) -> dict:
        second = {}
        for mode in self.config.modes:
            label = "violations" if mode is BROAD else "discrepancies"
            second[mode.value] = {label: self.eq_second.get(mode.value, 0)}
        return {
            "config": {
                "n_min": self.config.n_min,
                "n_max": self.config.n_max,
                "M_max": self.config.M_max,
                "modes": [m.value for m in self.config.modes],
                "workers": self.config.worker_count,
            },
            "trees": self.tree_count,
            "specs": self.spec_count,
            "records": self.record_count,
            "engine_mismatches": 0,  # a mismatch aborts before the summary
            "bound": {"violations": self.bound_violations},
            "pendant_minus_one": {"violations": self.eq_top_violations},
            "pendant_minus_two": second,
            "strict_discrepancy_examples": self.strict_discrepancies[:20],
            "runtime_seconds": round(self.elapsed_seconds, 3),
        }


def _mult_from_charpoly(cp: Polynomial, mu: Polynomial) -> int:
    count = 0
    p = cp
    while True:
        try:
            p = exact_div(p, mu)
        except NonDivisibleError:
            return count
        count += 1


def _sweep_tree(args) -> dict:
    """Per-tree worker: all records for one canonical tree, in (M, i) order.

    Conjugate eigenvalues share a minimal polynomial, and family membership
    depends on lambda only through M, so multiplicities are computed once
    per orbit and classifications once per (M, mode).
    """
    g6, M_max, mode_values = args
    t = parse_graph6(g6)
    modes = [Gamma2Mode(v) for v in mode_values]
    cp = char_poly(t)
    p = pendant_count(t)
    gamma = major_count(t)
    path = is_path(t)
    m_by_spec: dict[tuple[int, int], int] = {}
    # classification depends on lambda only through its conjugacy orbit
    # (denominator M plus parity of i), never on the individual conjugate
    tags: dict[tuple[int, int, str], str] = {}
    is_gamma: dict[tuple[int, int], bool] = {}
    is_gamma2: dict[tuple[int, int, str], bool] = {}
    for mu, specs in spec_orbits(M_max):
        m_div = _mult_from_charpoly(cp, mu)
        m_rank = rank_nullity(t, mu)
        if m_div != m_rank:
            return {
                "mismatch": {
                    "tree": g6,
                    "lambda": [specs[0].i, specs[0].M],
                    "division_engine": m_div,
                    "rank_engine": m_rank,
                }
            }
        rep = specs[0]
        orbit = (rep.M, rep.i % 2)
        for s in specs:
            m_by_spec[(s.i, s.M)] = m_div
        for mode in modes:
            res = classify(t, rep, mode)
            tags[orbit + (mode.value,)] = res.tag
            is_gamma[orbit] = res.kind is FamilyKind.GAMMA
            is_gamma2[orbit + (mode.value,)] = res.kind is FamilyKind.GAMMA2
    records = []
    for M in range(2, M_max + 1):
        for i in range(1, M):
            if math.gcd(i, M) != 1:
                continue
            orbit = (M, i % 2)
            m = m_by_spec[(i, M)]
            bound_ok = (path and m <= 1) or (m <= p - 1)
            eq_top = CONSISTENT if (m == p - 1) == is_gamma[orbit] else VIOLATION
            second_status = {}
            classification = {}
            for mode in modes:
                classification[mode.value] = tags[orbit + (mode.value,)]
                if m == 0:
                    second_status[mode.value] = NOT_APPLICABLE
                else:
                    ok = (m == p - 2) == is_gamma2[orbit + (mode.value,)]
                    second_status[mode.value] = CONSISTENT if ok else VIOLATION
            records.append(
                {
                    "tree": g6,
                    "lambda": [i, M],
                    "p": p,
                    "gamma": gamma,
                    "m": m,
                    "bound_ok": bound_ok,
                    "thm13_status": eq_top,
                    "thm14_status": second_status,
                    "classification": classification,
                    "notes": "",
                }
            )
    return {"records": records}


def _ordered_tree_codes(config: SweepConfig) -> list[str]:
    codes = []
    for n in range(config.n_min, config.n_max + 1):
        batch = [emit_graph6(t) for t in enumerate_trees(n, config.tree_limit)]
        batch.sort()
        codes.extend(batch)
    return codes


def sweep(config: SweepConfig) -> SweepReport:
    """Run the exhaustive sweep; see the module docstring.

    Work is partitioned by tree; results are aggregated in enumeration order
    so the record file is deterministic for any worker count.  Raises
    EngineMismatchError if the two multiplicity engines ever disagree.
    """
    start = time.monotonic()
    report = SweepReport(config=config)
    codes = _ordered_tree_codes(config)
    report.tree_count = len(codes)
    report.spec_count = sum(1 for _ in _iter_specs(config.M_max))
    mode_values = tuple(m.value for m in config.modes)
    payloads = [(g6, config.M_max, mode_values) for g6 in codes]
    sink = None
    try:
        if config.output_path:
            try:
                sink = open(config.output_path, "w", encoding="utf-8")
            except OSError as exc:
                raise IoFailureError(f"cannot open {config.output_path}: {exc}") from exc
        if config.worker_count == 1:
            results = map(_sweep_tree, payloads)
            _aggregate(results, report, sink)
        else:
            with Pool(config.worker_count) as pool:
                results = pool.imap(_sweep_tree, payloads, chunksize=8)
                _aggregate(results, report, sink)
    finally:
        if sink is not None:
            sink.close()
    report.records_path = config.output_path
    report.elapsed_seconds = time.monotonic() - start
    if config.output_path:
        summary_path = config.output_path + ".summary.json"
        try:
            with open(summary_path, "w", encoding="utf-8") as f:
                json.dump(report.summary_dict(), f, indent=2, sort_keys=False)
                f.write("\n")
        except OSError as exc:
            raise IoFailureError(f"cannot write {summary_path}: {exc}") from exc
        report.summary_path = summary_path
    return report


def _iter_specs(M_max: int):
    for M in range(2, M_max + 1):
        for i in range(1, M):
            if math.gcd(i, M) == 1:
                yield (i, M)


def _aggregate(results, report: SweepReport, sink) -> None:
    for mode in report.config.modes:
        report.eq_second.setdefault(mode.value, 0)
    for result in results:
        if "mismatch" in result:
            raise EngineMismatchError(json.dumps(result["mismatch"]))
        for rec in result["records"]:
            report.record_count += 1
            if not rec["bound_ok"]:
                report.bound_violations += 1
            if rec["thm13_status"] == VIOLATION:
                report.eq_top_violations += 1
            for mode_value, status in rec["thm14_status"].items():
                if status == VIOLATION:
                    report.eq_second[mode_value] += 1
                    if mode_value == STRICT.value:
                        report.strict_discrepancies.append(
                            {
                                "tree": rec["tree"],
                                "lambda": rec["lambda"],
                                "m": rec["m"],
                                "p": rec["p"],
                                "classification": dict(rec["classification"]),
                            }
                        )
            if sink is not None:
                try:
                    sink.write(json.dumps(rec, sort_keys=False) + "\n")
                except OSError as exc:
                    raise IoFailureError(str(exc)) from exc


def summarize_records(path: str) -> dict:
    """Re-summarize an existing record file (the `report` CLI path)."""
    counts = {
        "records": 0,
        "bound": {"violations": 0},
        "pendant_minus_one": {"violations": 0},
        "pendant_minus_two": {},
        "trees": 0,
        "specs": 0,
    }
    trees = set()
    specs = set()
    second: dict[str, int] = {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            for line in f:
                if not line.strip():
                    continue
                rec = json.loads(line)
                counts["records"] += 1
                trees.add(rec["tree"])
                specs.add(tuple(rec["lambda"]))
                if not rec["bound_ok"]:
                    counts["bound"]["violations"] += 1
                if rec["thm13_status"] == VIOLATION:
                    counts["pendant_minus_one"]["violations"] += 1
                for mode_value, status in rec["thm14_status"].items():
                    second.setdefault(mode_value, 0)
                    if status == VIOLATION:
                        second[mode_value] += 1
    except OSError as exc:
        raise IoFailureError(f"cannot read {path}: {exc}") from exc
    for mode_value, count in second.items():
        label = "violations" if mode_value == BROAD.value else "discrepancies"
        counts["pendant_minus_two"][mode_value] = {label: count}
    counts["trees"] = len(trees)
    counts["specs"] = len(specs)
    return counts


# -- property suites -----------------------------------------------------------


@dataclass
class LemmaReport:
    results: dict = field(default_factory=dict)

    def add(self, name: str, checked: int, violations: list) -> None:
        self.results[name] = {"checked": checked, "violations": violations}

    @property
    def total_violations(self) -> int:
        return sum(len(r["violations"]) for r in self.results.values())


def forest_multiplicity(dec: ForestDecomposition, spec: LambdaSpec) -> int:
    """Multiplicity of lambda in T - v: the sum over components."""
    return sum(multiplicity(c.tree, spec) for c in dec.components)


def lemma_suite(config: SweepConfig) -> LemmaReport:
    """Run the enabled property suites over the configured ranges."""
    report = LemmaReport()
    checks = config.lemma_checks
    if checks.path_simplicity:
        report.add(*_check_path_simplicity(config.path_n_max, config.path_M_max))
    if checks.parter:
        name, checked, violations = _check_parter(config)
        report.add(name, checked, violations)
    if checks.branch:
        report.add(*_check_branch(config))
    if checks.pendant_deletion:
        report.add(*_check_pendant_deletion(config))
    return report


def _check_path_simplicity(n_max: int, M_max: int):
    """Every eigenvalue of a path is simple: m(P_n, lambda) <= 1, with
    equality exactly when M divides n + 1."""
    violations = []
    checked = 0
    orbits = spec_orbits(M_max)
    for n in range(1, n_max + 1):
        cp = path_charpoly(n)
        for mu, specs in orbits:
            m = _mult_from_charpoly(cp, mu)
            expected = 1 if (n + 1) % specs[0].M == 0 else 0
            checked += 1
            if m != expected:
                violations.append({"n": n, "lambda": [specs[0].i, specs[0].M], "m": m})
    return "path_simplicity", checked, violations


def _check_parter(config: SweepConfig):
    """Parter vertex existence.

    (i) If lambda is an eigenvalue of T and survives some single-vertex
    deletion at full multiplicity, some vertex w has
    m(T - w) = m(T) + 1.
    (ii) If m(T) >= 2, such a w exists with degree >= 3 and at least three
    components of T - w carrying lambda.
    """
    violations = []
    checked = 0
    orbits = spec_orbits(config.M_max)
    for n in range(max(2, config.n_min), config.n_max + 1):
        for t in enumerate_trees(n, config.tree_limit):
            decs = [delete_vertex(t, v) for v in range(t.n)]
            for mu, specs in orbits:
                spec = specs[0]
                m = multiplicity(t, spec)
                if m < 1:
                    continue
                drops = [forest_multiplicity(dec, spec) for dec in decs]
                if max(drops) < m:
                    if m >= 2:
                        # cannot happen: for m >= 2 a Parter vertex exists,
                        # so its deletion already satisfies the hypothesis
                        violations.append(
                            {
                                "tree": emit_graph6(t),
                                "lambda": [spec.i, spec.M],
                                "part": "hypothesis",
                            }
                        )
                    continue
                checked += 1
                parters = [v for v in range(t.n) if drops[v] == m + 1]
                if not parters:
                    violations.append(
                        {"tree": emit_graph6(t), "lambda": [spec.i, spec.M], "part": "i"}
                    )
                    continue
                if m >= 2:
                    good = False
                    for v in parters:
                        if t.degree(v) < 3:
                            continue
                        carrying = sum(
                            1
                            for c in decs[v].components
                            if multiplicity(c.tree, spec) >= 1
                        )
                        if carrying >= 3:
                            good = True
                            break
                    if not good:
                        violations.append(
                            {
                                "tree": emit_graph6(t),
                                "lambda": [spec.i, spec.M],
                                "part": "ii",
                            }
                        )
    return "parter_vertex", checked, violations


def _check_branch(config: SweepConfig):
    """Branch equivalence: when lambda is an eigenvalue of T - w,
    m(T - w) = m(T) + 1 holds exactly when some component H of T - w loses
    multiplicity on deleting its attach vertex."""
    violations = []
    checked = 0
    orbits = spec_orbits(config.M_max)
    for n in range(max(2, config.n_min), config.n_max + 1):
        for t in enumerate_trees(n, config.tree_limit):
            m_cache: dict[tuple[int, int], int] = {}
            for w in range(t.n):
                dec = delete_vertex(t, w)
                for mu, specs in orbits:
                    spec = specs[0]
                    m_minus = forest_multiplicity(dec, spec)
                    if m_minus < 1:
                        continue
                    checked += 1
                    key = (spec.i, spec.M)
                    if key not in m_cache:
                        m_cache[key] = multiplicity(t, spec)
                    lhs = m_minus == m_cache[key] + 1
                    rhs = any(
                        multiplicity(c.tree, spec)
                        - forest_multiplicity(delete_vertex(c.tree, c.attach), spec)
                        == 1
                        for c in dec.components
                    )
                    if lhs != rhs:
                        violations.append(
                            {
                                "tree": emit_graph6(t),
                                "vertex": w,
                                "lambda": [spec.i, spec.M],
                                "m": m_cache[key],
                                "m_minus": m_minus,
                            }
                        )
    return "branch_equivalence", checked, violations


def _check_pendant_deletion(config: SweepConfig):
    """Inside generated GAMMA members: lambda is an eigenvalue, and deleting
    any pendant vertex drops the multiplicity by exactly one."""
    violations = []
    checked = 0
    for M in range(2, config.family_M_max + 1):
        rep = LambdaSpec(1, M)
        for k in range(0, config.family_k_max + 1):
            for t in generate(FamilyKind.GAMMA, k, rep, config.family_n_max):
                for i in range(1, M):
                    if math.gcd(i, M) != 1:
                        continue
                    spec = LambdaSpec(i, M)
                    m = multiplicity(t, spec)
                    checked += 1
                    if m < 1:
                        violations.append(
                            {
                                "tree": emit_graph6(t),
                                "lambda": [i, M],
                                "part": "i",
                                "m": m,
                            }
                        )
                        continue
                    for v in pendant_vertices(t):
                        if t.n == 1:
                            continue
                        m_minus = forest_multiplicity(delete_vertex(t, v), spec)
                        if m_minus != m - 1:
                            violations.append(
                                {
                                    "tree": emit_graph6(t),
                                    "lambda": [i, M],
                                    "part": "ii",
                                    "vertex": v,
                                }
                            )
    return "family_pendant_deletion", checked, violations


# -- all-eigenvalue audit --------------------------------------------------------


@dataclass
class AuditReport:
    trees_checked: int = 0
    flags: list = field(default_factory=list)
    scope_notes: list = field(default_factory=list)


def chebyshev_completeness_audit(
    n_max: int, tree_limit: int = DEFAULT_ENUMERATION_LIMIT
) -> AuditReport:
    """Look for eigenvalues at the top multiplicity levels that are not of
    the path form 2*cos(i*pi/M).

    A nonconstant non-path residue at squarefree level k >= max(2, p - 2)
    would be a candidate the family machinery cannot label and is flagged.
    Level-1 residues on trees with exactly three pendant vertices realize
    m = 1 = p - 2 with an eigenvalue outside the path parameterization;
    those are recorded as scope notes, not flags.

    The candidate denominator bound is degree-complete (every M whose
    minimal polynomial could divide a degree-n characteristic polynomial),
    so a residue here is non-path-type absolutely, not merely up to a cap.
    """
    from treemult.poly import degree_complete_M_max
    from treemult.spectrum import eigen_support_audit

    report = AuditReport()
    for n in range(1, n_max + 1):
        M_cap = max(degree_complete_M_max(n), n + 1)
        for t in enumerate_trees(n, tree_limit):
            report.trees_checked += 1
            profile = eigen_support_audit(t, M_max=M_cap)
            p = pendant_count(t)
            for k, residue in profile.residue:
                if residue.is_constant():
                    continue
                entry = {
                    "tree": emit_graph6(t),
                    "level": k,
                    "p": p,
                    "residue": list(residue.coeffs),
                }
                if k >= max(2, p - 2):
                    report.flags.append(entry)
                elif k == 1 and p == 3:
                    report.scope_notes.append(entry)
    return report


# -- randomized engine agreement --------------------------------------------------


def _random_tree_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform labeled tree via a random Prufer sequence."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        u = min(u for u in range(n) if degree[u] == 1)
        edges.append((u, v))
        degree[u] -= 1
        degree[v] -= 1
    u, w = (x for x in range(n) if degree[x] == 1)
    edges.append((u, w))
    return edges


def _agreement_worker(args) -> dict | None:
    seed, n_max, M_max = args
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    t = Tree.from_edges(n, _random_tree_edges(n, rng))
    M = rng.randint(2, M_max)
    candidates = [i for i in range(1, M) if math.gcd(i, M) == 1]
    spec = LambdaSpec(rng.choice(candidates), M)
    mu = spec.minimal_poly
    m_div = _mult_from_charpoly(char_poly(t), mu)
    m_rank = rank_nullity(t, mu)
    if m_div != m_rank:
        return {
            "edges": t.edges,
            "lambda": [spec.i, spec.M],
            "division_engine": m_div,
            "rank_engine": m_rank,
        }
    return None


def engine_agreement_check(
    pairs: int,
    n_max: int = 25,
    M_max: int = 26,
    seed: int = 0,
    workers: int = 1,
) -> list[dict]:
    """Compare the two multiplicity engines on random (tree, lambda) pairs;
    returns the list of disagreements (empty on success)."""
    payloads = [(seed + k, n_max, M_max) for k in range(pairs)]
    if workers == 1:
        results = map(_agreement_worker, payloads)
        return [r for r in results if r is not None]
    with Pool(workers) as pool:
        return [r for r in pool.imap_unordered(_agreement_worker, payloads, chunksize=64) if r is not None]


def default_worker_count() -> int:
    return os.cpu_count() or 1
