"""Corpus-driven cross-validation: generate posets/graphs/clutters/ideals,
run every applicable check, and require the inter-theorem consistency
relations to hold.

Reports are deterministic given (corpus spec, bounds, seed): canonical JSON
carries no wall-clock data (timing appears only in the text rendering), and
instances are processed in generation order.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Any

from .guards import Deadline, ResourceGuardError
from .ideals import MonomialIdeal, edge_ideal, is_normal_up_to, is_ntf_up_to
from .packing import (
    chain_order,
    konig_certificate,
    max_matching_size,
    menger_oracle,
    mfmc_bounded,
    min_cover_size,
)
from .polyhedra import (
    IncidenceMatrix,
    covering_polyhedron,
    integer_rounding_check,
    is_integral,
)
from .structures import (
    Clutter,
    Graph,
    Poset,
    clique_clutter,
    comparability_graph,
    duplicate,
    graph_duplicate,
    parallelize_masks,
    transitive_closure,
)


@dataclass(frozen=True)
class Bounds:
    kmax: int = 3
    imax: int = 3
    wmax: int = 3

    def __post_init__(self):
        if min(self.kmax, self.imax, self.wmax) < 1:
            raise ValueError("bounds must be >= 1")

    def to_json(self) -> dict[str, int]:
        return {"kmax": self.kmax, "imax": self.imax, "wmax": self.wmax}


# ---------------------------------------------------------------------------
# Generators

def all_posets(n: int) -> list[Poset]:
    """Every labeled poset on n vertices (exhaustive scan over relations;
    n <= 4 keeps this cheap: 2^(n(n-1)) candidates)."""
    if not (0 <= n <= 4):
        raise ValueError("exhaustive poset enumeration is limited to n <= 4")
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    out = []
    for bits in range(1 << len(pairs)):
        rel = [pairs[t] for t in range(len(pairs)) if bits >> t & 1]
        try:
            out.append(Poset(n, rel))
        except ValueError:
            continue
    return out


def random_posets(n: int, count: int, seed: int) -> list[Poset]:
    """Distinct random posets: random DAG arcs, transitively closed,
    deduplicated by relation set. Reproducible bit-for-bit from the seed."""
    if n > 8:
        raise ValueError("random poset generation is limited to n <= 8")
    rng = random.Random(seed)
    seen: set[frozenset] = set()
    out: list[Poset] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200 * count + 1000:
            raise ValueError(
                f"could not generate {count} distinct posets on {n} vertices"
            )
        perm = list(range(n))
        rng.shuffle(perm)
        density = rng.choice((0.15, 0.25, 0.35, 0.5))
        arcs = [
            (perm[i], perm[j])
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < density
        ]
        rel = transitive_closure(n, arcs)
        if rel in seen:
            continue
        seen.add(rel)
        out.append(Poset(n, rel))
    return out


def poset_generator(n: int, count: int, seed: int) -> list[Poset]:
    """Spec-facing alias; exhaustive coverage is :func:`all_posets`."""
    return random_posets(n, count, seed)


def random_graphs(n: int, count: int, seed: int) -> list[Graph]:
    rng = random.Random(seed)
    seen: set[frozenset] = set()
    out: list[Graph] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200 * count + 1000:
            raise ValueError(f"could not generate {count} distinct graphs on {n} vertices")
        density = rng.choice((0.2, 0.35, 0.5, 0.7))
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < density
        ]
        key = frozenset(edges)
        if key in seen:
            continue
        seen.add(key)
        out.append(Graph(n, edges))
    return out


def random_ideals(n: int, q: int, maxexp: int, count: int, seed: int) -> list[MonomialIdeal]:
    """Random minimal generating sets; n and q are upper bounds, exponents
    uniform in [0, maxexp] with zero vectors rejected."""
    rng = random.Random(seed)
    seen: set[tuple] = set()
    out: list[MonomialIdeal] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 500 * count + 1000:
            raise ValueError("could not generate enough distinct ideals")
        nn = rng.randint(1, n)
        gens = []
        for _ in range(rng.randint(1, q)):
            v = tuple(rng.randint(0, maxexp) for _ in range(nn))
            if any(v):
                gens.append(v)
        if not gens:
            continue
        ideal = MonomialIdeal(nn, gens)
        key = (nn, ideal.generators)
        if key in seen:
            continue
        seen.add(key)
        out.append(ideal)
    return out


def random_clutters(n: int, maxedges: int, count: int, seed: int) -> list[Clutter]:
    """Random antichains of nonempty vertex subsets; n and the edge count
    are upper bounds."""
    rng = random.Random(seed)
    seen: set[tuple] = set()
    out: list[Clutter] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 500 * count + 1000:
            raise ValueError("could not generate enough distinct clutters")
        nn = rng.randint(2, n)
        subsets: set[tuple] = set()
        for _ in range(rng.randint(1, maxedges)):
            e = tuple(v for v in range(nn) if rng.random() < 0.5)
            if e:
                subsets.add(e)
        if not subsets:
            continue
        minimal = [
            e for e in subsets
            if not any(f != e and set(f) <= set(e) for f in subsets)
        ]
        c = Clutter(nn, minimal)
        key = (nn, c.edges)
        if key in seen:
            continue
        seen.add(key)
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# Corpus

_KINDS = (
    "all-posets",
    "random-posets",
    "random-graphs",
    "random-ideals",
    "random-clutters",
    "explicit",
)


@dataclass(frozen=True)
class Corpus:
    """Instance source for the theorem suite; generation is seeded and
    reproducible. ``n``/``q``/``maxedges`` act as upper bounds for the
    random kinds."""

    kind: str
    n: int | None = None
    count: int | None = None
    seed: int | None = None
    q: int | None = None
    maxexp: int | None = None
    maxedges: int | None = None
    path: str | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown corpus kind {self.kind!r}; expected one of {_KINDS}")

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind}
        for key in ("n", "count", "seed", "q", "maxexp", "maxedges", "path"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "Corpus":
        known = {k: doc[k] for k in ("n", "count", "seed", "q", "maxexp", "maxedges", "path") if k in doc}
        return cls(kind=doc["kind"], **known)

    def instances(self) -> list[tuple[str, Any]]:
        if self.kind == "all-posets":
            return [("poset", p) for p in all_posets(self._req("n"))]
        if self.kind == "random-posets":
            return [
                ("poset", p)
                for p in random_posets(self._req("n"), self._req("count"), self._req("seed"))
            ]
        if self.kind == "random-graphs":
            return [
                ("graph", g)
                for g in random_graphs(self._req("n"), self._req("count"), self._req("seed"))
            ]
        if self.kind == "random-ideals":
            return [
                ("ideal", i)
                for i in random_ideals(
                    self._req("n"), self._req("q"), self._req("maxexp"),
                    self._req("count"), self._req("seed"),
                )
            ]
        if self.kind == "random-clutters":
            return [
                ("clutter", c)
                for c in random_clutters(
                    self._req("n"), self._req("maxedges"),
                    self._req("count"), self._req("seed"),
                )
            ]
        with open(self._req("path"), encoding="utf-8") as fh:
            doc = json.load(fh)
        return load_explicit_instances(doc)

    def _req(self, key: str):
        val = getattr(self, key)
        if val is None:
            raise ValueError(f"corpus kind {self.kind!r} requires parameter {key!r}")
        return val


def load_explicit_instances(doc: dict[str, Any]) -> list[tuple[str, Any]]:
    loaders = {
        "poset": Poset.from_json,
        "graph": Graph.from_json,
        "clutter": Clutter.from_json,
        "ideal": MonomialIdeal.from_json,
    }
    out = []
    for item in doc["instances"]:
        kind = item["type"]
        if kind not in loaders:
            raise ValueError(f"unknown instance type {kind!r}")
        out.append((kind, loaders[kind](item["data"])))
    return out


def _instance_json(kind: str, obj: Any) -> dict[str, Any]:
    return {"type": kind, "data": obj.to_json()}


# ---------------------------------------------------------------------------
# Per-instance checks

def comparability_mfmc_check(
    p: Poset, wmax: int, deadline: Deadline | None = None
) -> dict[str, Any]:
    """One sweep over w in {0..wmax}^n for a poset's clique clutter:
    Koenig must hold for every parallelization and the Menger oracle must
    report the same two numbers."""
    cl = clique_clutter(comparability_graph(p))
    konig_failures: list[dict[str, Any]] = []
    menger_mismatches: list[dict[str, Any]] = []
    checked = 0
    for w in itertools.product(range(wmax + 1), repeat=p.n):
        if deadline is not None:
            deadline.check()
        masks, _, _ = parallelize_masks(cl.edge_masks, w)
        a0 = min_cover_size(masks)
        b1 = max_matching_size(masks)
        checked += 1
        if a0 != b1:
            konig_failures.append({"w": list(w), "alpha0": a0, "beta1": b1})
        cert = menger_oracle(p, w)
        if (cert.alpha0, cert.beta1) != (a0, b1):
            menger_mismatches.append(
                {"w": list(w), "konig": [a0, b1], "menger": [cert.alpha0, cert.beta1]}
            )
    return {
        "checked_w": checked,
        "konig_failures": konig_failures,
        "menger_mismatches": menger_mismatches,
        "mfmc_holds": not konig_failures,
        "menger_agrees": not menger_mismatches,
    }


def duplication_commutes(g: Graph) -> list[int]:
    """Vertices where clutter-level and graph-level duplication disagree
    (expected: none, for every graph)."""
    cl = clique_clutter(g)
    bad = []
    for v in range(g.n):
        if duplicate(cl, v) != clique_clutter(graph_duplicate(g, v)):
            bad.append(v)
    return bad


def cliques_are_chains(p: Poset) -> bool:
    cl = clique_clutter(comparability_graph(p))
    try:
        for e in cl.edges:
            chain_order(p, e)
    except ValueError:
        return False
    return True


def check_poset_instance(p: Poset, bounds: Bounds, deadline: Deadline | None = None) -> dict[str, Any]:
    sweep = comparability_mfmc_check(p, bounds.wmax, deadline)
    cl = clique_clutter(comparability_graph(p))
    dup_bad = duplication_commutes(comparability_graph(p))
    checks: dict[str, Any] = {
        "mfmc_holds": sweep["mfmc_holds"],
        "menger_agrees": sweep["menger_agrees"],
        "duplication_commutes": not dup_bad,
        "cliques_are_chains": cliques_are_chains(p),
    }
    witness: dict[str, Any] = {}
    if cl.edges:
        ntf = is_ntf_up_to(cl, bounds.imax)
        normal = is_normal_up_to(edge_ideal(cl), bounds.kmax)
        integral = is_integral(covering_polyhedron(IncidenceMatrix.from_clutter(cl)))
        checks["ntf"] = ntf.holds
        checks["normal"] = normal.holds
        checks["q_integral"] = integral
        if not ntf.holds:
            witness["ntf"] = ntf.to_json()
        if not normal.holds:
            witness["normal"] = normal.to_json()
    ok = all(checks.values())
    if sweep["konig_failures"]:
        witness["konig_failures"] = sweep["konig_failures"][:3]
    if sweep["menger_mismatches"]:
        witness["menger_mismatches"] = sweep["menger_mismatches"][:3]
    if dup_bad:
        witness["duplication_vertices"] = dup_bad
    return {"checks": checks, "pass": ok, "witness": witness or None}


def check_graph_instance(g: Graph, bounds: Bounds, deadline: Deadline | None = None) -> dict[str, Any]:
    bad = duplication_commutes(g)
    return {
        "checks": {"duplication_commutes": not bad},
        "pass": not bad,
        "witness": {"duplication_vertices": bad} if bad else None,
    }


def check_clutter_instance(c: Clutter, bounds: Bounds, deadline: Deadline | None = None) -> dict[str, Any]:
    """Three-way consistency: bounded NTF, bounded normality AND exact
    integrality of Q(A), bounded MFMC; the three signs must agree."""
    ntf = is_ntf_up_to(c, bounds.imax)
    normal = is_normal_up_to(edge_ideal(c), bounds.kmax)
    integral = is_integral(covering_polyhedron(IncidenceMatrix.from_clutter(c)))
    mfmc = mfmc_bounded(c, bounds.wmax, deadline)
    signs = {
        "ntf": ntf.holds,
        "normal_and_integral": normal.holds and integral,
        "mfmc": mfmc.holds,
    }
    disagreements = [
        f"{x} vs {y}"
        for x, y in itertools.combinations(signs, 2)
        if signs[x] != signs[y]
    ]
    witness = None
    if disagreements:
        witness = {
            "signs": signs,
            "disagreements": disagreements,
            "ntf": ntf.to_json(),
            "normal": normal.to_json(),
            "q_integral": integral,
            "mfmc": mfmc.to_json(),
        }
    return {
        "checks": {"three_way_signs_agree": not disagreements, **signs},
        "pass": not disagreements,
        "witness": witness,
    }


def check_ideal_instance(ideal: MonomialIdeal, bounds: Bounds, deadline: Deadline | None = None) -> dict[str, Any]:
    """Normality criterion cross-check: the direct verdict (its two internal
    routes are asserted equal) must match the integer-rounding verdict over
    w in {0..wmax}^n."""
    normal = is_normal_up_to(ideal, bounds.kmax)
    a = ideal.matrix()
    wset = itertools.product(range(bounds.wmax + 1), repeat=ideal.n)
    rounding = integer_rounding_check(a, wset)
    agree = normal.holds == rounding.holds
    return {
        "checks": {
            "normal": normal.holds,
            "rounding": rounding.holds,
            "normal_equals_rounding": agree,
        },
        "pass": agree,
        "witness": None
        if agree
        else {"normal": normal.to_json(), "rounding": rounding.to_json()},
    }


_CHECKERS = {
    "poset": check_poset_instance,
    "graph": check_graph_instance,
    "clutter": check_clutter_instance,
    "ideal": check_ideal_instance,
}


# ---------------------------------------------------------------------------
# Report

@dataclass
class Report:
    corpus: dict[str, Any]
    bounds: dict[str, int]
    instances: list[dict[str, Any]]
    skipped: list[dict[str, Any]]
    aggregate_pass: bool
    counterexamples: list[dict[str, Any]]
    elapsed_s: float = 0.0

    def to_doc(self) -> dict[str, Any]:
        """Deterministic JSON document (no wall-clock content)."""
        return {
            "corpus": self.corpus,
            "bounds": self.bounds,
            "aggregate": "pass" if self.aggregate_pass else "fail",
            "counts": {
                "instances": len(self.instances),
                "failed": sum(1 for r in self.instances if not r["pass"]),
                "skipped": len(self.skipped),
            },
            "instances": self.instances,
            "skipped": self.skipped,
            "counterexamples": self.counterexamples,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_doc())

    def to_text(self) -> str:
        lines = [
            f"corpus: {json.dumps(self.corpus, sort_keys=True)}",
            f"bounds: {json.dumps(self.bounds, sort_keys=True)}",
            f"instances: {len(self.instances)}  skipped: {len(self.skipped)}  "
            f"elapsed: {self.elapsed_s:.2f}s",
        ]
        for rec in self.instances:
            status = "ok " if rec["pass"] else "FAIL"
            checks = " ".join(
                f"{name}={'y' if val else 'N'}" for name, val in rec["checks"].items()
            )
            lines.append(f"[{status}] #{rec['index']} {rec['instance']['type']}: {checks}")
        for rec in self.skipped:
            lines.append(f"[skip] #{rec['index']}: {rec['reason']}")
        lines.append(f"aggregate: {'pass' if self.aggregate_pass else 'FAIL'}")
        return "\n".join(lines)


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def run_theorem_suite(
    corpus: Corpus, bounds: Bounds, deadline: Deadline | None = None
) -> Report:
    """Run every applicable consistency check on every corpus instance.

    Instances exceeding a resource guard are skipped with a logged reason
    and counted in the report header, never silently dropped. A failed
    consistency assertion localizes the disagreeing pair in the instance
    record and the counterexample gallery.
    """
    t0 = time.monotonic()
    records: list[dict[str, Any]] = []
    skipped: list[dict[str, Any]] = []
    gallery: list[dict[str, Any]] = []
    for index, (kind, obj) in enumerate(corpus.instances()):
        if deadline is not None:
            deadline.restart()
        try:
            result = _CHECKERS[kind](obj, bounds, deadline)
        except ResourceGuardError as exc:
            skipped.append(
                {"index": index, "instance": _instance_json(kind, obj), "reason": str(exc)}
            )
            continue
        record = {
            "index": index,
            "instance": _instance_json(kind, obj),
            "checks": result["checks"],
            "pass": result["pass"],
        }
        records.append(record)
        if not result["pass"]:
            gallery.append(
                {
                    "index": index,
                    "instance": _instance_json(kind, obj),
                    "witness": result["witness"],
                }
            )
    return Report(
        corpus=corpus.to_json(),
        bounds=bounds.to_json(),
        instances=records,
        skipped=skipped,
        aggregate_pass=all(r["pass"] for r in records),
        counterexamples=gallery,
        elapsed_s=time.monotonic() - t0,
    )
