"""Discrete structural causal models: graph, CPTs, factors, JSON round-trip."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from capt.errors import (
    CptValidationError,
    CyclicGraphError,
    OutOfRangeStateError,
    UnknownVariableError,
)

ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class VariableId:
    """A named discrete variable with states 0..arity-1."""

    name: str
    arity: int

    def __post_init__(self):
        if not self.name:
            raise UnknownVariableError("variable name must be non-empty")
        if self.arity < 2:
            raise CptValidationError(
                f"variable {self.name!r} needs arity >= 2, got {self.arity}"
            )


@dataclass(frozen=True)
class CausalGraph:
    """A DAG over named variables; edges are (parent, child) pairs."""

    nodes: tuple[VariableId, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        names = [v.name for v in self.nodes]
        if len(set(names)) != len(names):
            raise UnknownVariableError(f"duplicate node names in {names}")
        known = set(names)
        seen = set()
        for parent, child in self.edges:
            if parent not in known or child not in known:
                raise UnknownVariableError(f"edge ({parent}, {child}) references unknown node")
            if parent == child:
                raise CyclicGraphError(f"self-loop on {parent!r}")
            if (parent, child) in seen:
                raise UnknownVariableError(f"duplicate edge ({parent}, {child})")
            seen.add((parent, child))
        self.topological_order()

    def variable(self, name: str) -> VariableId:
        for v in self.nodes:
            if v.name == name:
                return v
        raise UnknownVariableError(f"unknown variable {name!r}")

    def parents_of(self, name: str) -> tuple[str, ...]:
        self.variable(name)
        return tuple(p for p, c in self.edges if c == name)

    def children_of(self, name: str) -> tuple[str, ...]:
        self.variable(name)
        return tuple(c for p, c in self.edges if p == name)

    def topological_order(self) -> tuple[str, ...]:
        """Kahn's algorithm; raises CyclicGraphError on a cycle."""
        indeg = {v.name: 0 for v in self.nodes}
        for _, child in self.edges:
            indeg[child] += 1
        ready = [v.name for v in self.nodes if indeg[v.name] == 0]
        order: list[str] = []
        while ready:
            node = ready.pop(0)
            order.append(node)
            for child in self.children_of(node):
                indeg[child] -= 1
                if indeg[child] == 0:
                    ready.append(child)
        if len(order) != len(self.nodes):
            raise CyclicGraphError("graph contains a directed cycle")
        return tuple(order)


@dataclass(frozen=True)
class Cpt:
    """P(child | parents) as a dense table keyed by parent state tuples."""

    child: str
    parents: tuple[str, ...]
    table: dict[tuple[int, ...], tuple[float, ...]] = field(hash=False)

    def row(self, parent_states: tuple[int, ...]) -> tuple[float, ...]:
        try:
            return self.table[parent_states]
        except KeyError:
            raise CptValidationError(
                f"cpt for {self.child!r} has no row for parent states {parent_states}"
            ) from None

    def validate(self, graph: CausalGraph) -> None:
        child_arity = graph.variable(self.child).arity
        graph_parents = set(graph.parents_of(self.child))
        if set(self.parents) != graph_parents:
            raise CptValidationError(
                f"cpt parents {sorted(self.parents)} for {self.child!r} do not match "
                f"graph parents {sorted(graph_parents)}"
            )
        if len(set(self.parents)) != len(self.parents):
            raise CptValidationError(f"duplicate parent in cpt for {self.child!r}")
        arities = [graph.variable(p).arity for p in self.parents]
        expected = set(itertools.product(*[range(a) for a in arities]))
        if set(self.table) != expected:
            raise CptValidationError(
                f"cpt for {self.child!r} covers {len(self.table)} parent combinations, "
                f"expected {len(expected)}"
            )
        for key, row in self.table.items():
            if len(row) != child_arity:
                raise CptValidationError(
                    f"cpt row {key} for {self.child!r} has {len(row)} entries, "
                    f"expected {child_arity}"
                )
            if any(p < 0.0 or p > 1.0 for p in row):
                raise CptValidationError(f"cpt row {key} for {self.child!r} leaves [0, 1]")
            if abs(sum(row) - 1.0) > ROW_SUM_TOL:
                raise CptValidationError(
                    f"cpt row {key} for {self.child!r} sums to {sum(row)!r}"
                )


@dataclass(frozen=True)
class DiscreteScm:
    """A validated graph plus one CPT per node."""

    graph: CausalGraph
    cpts: dict[str, Cpt] = field(hash=False)

    def __post_init__(self):
        names = {v.name for v in self.graph.nodes}
        if set(self.cpts) != names:
            missing = names - set(self.cpts)
            extra = set(self.cpts) - names
            raise CptValidationError(
                f"cpts do not cover the graph (missing={sorted(missing)}, extra={sorted(extra)})"
            )
        for name, cpt in self.cpts.items():
            if cpt.child != name:
                raise CptValidationError(f"cpt keyed {name!r} declares child {cpt.child!r}")
            cpt.validate(self.graph)

    def arity(self, name: str) -> int:
        return self.graph.variable(name).arity

    def check_state(self, name: str, state: int) -> None:
        arity = self.graph.variable(name).arity
        if not 0 <= state < arity:
            raise OutOfRangeStateError(f"state {state} out of range for {name!r} (arity {arity})")

    def prob(self, child: str, state: int, parent_states: tuple[int, ...]) -> float:
        """Single CPT lookup P(child=state | parents=parent_states)."""
        self.check_state(child, state)
        return self.cpts[child].row(parent_states)[state]


@dataclass
class Factor:
    """A non-negative table over a variable scope."""

    scope: tuple[str, ...]
    values: dict[tuple[int, ...], float]

    def total(self) -> float:
        return sum(self.values.values())

    def marginalize(self, keep: tuple[str, ...]) -> "Factor":
        """Sum out everything not in keep; keep order follows the argument."""
        for name in keep:
            if name not in self.scope:
                raise UnknownVariableError(f"{name!r} not in factor scope {self.scope}")
        idx = [self.scope.index(name) for name in keep]
        out: dict[tuple[int, ...], float] = {}
        for states, p in self.values.items():
            key = tuple(states[i] for i in idx)
            out[key] = out.get(key, 0.0) + p
        return Factor(tuple(keep), out)

    def prob(self, assignment: dict[str, int]) -> float:
        """Marginal probability of a (partial) assignment."""
        for name in assignment:
            if name not in self.scope:
                raise UnknownVariableError(f"{name!r} not in factor scope {self.scope}")
        total = 0.0
        for states, p in self.values.items():
            if all(states[self.scope.index(n)] == s for n, s in assignment.items()):
                total += p
        return total


# === JSON round-trip ===
# Layout: {"nodes": [{"name", "arity"}], "edges": [[parent, child]],
#          "cpts": {child: {"parents": [...], "table": {"i,j": [probs]}}}}
# Root CPTs use the single key "".


def scm_to_dict(scm: DiscreteScm) -> dict:
    cpts = {}
    for name in [v.name for v in scm.graph.nodes]:
        cpt = scm.cpts[name]
        table = {
            ",".join(str(s) for s in key): list(row)
            for key, row in sorted(cpt.table.items())
        }
        cpts[name] = {"parents": list(cpt.parents), "table": table}
    return {
        "nodes": [{"name": v.name, "arity": v.arity} for v in scm.graph.nodes],
        "edges": [[p, c] for p, c in scm.graph.edges],
        "cpts": cpts,
    }


def scm_from_dict(payload: dict) -> DiscreteScm:
    try:
        nodes = tuple(VariableId(n["name"], int(n["arity"])) for n in payload["nodes"])
        edges = tuple((str(p), str(c)) for p, c in payload["edges"])
        raw_cpts = payload["cpts"]
    except (KeyError, TypeError) as exc:
        raise CptValidationError(f"malformed scm payload: {exc}") from exc
    graph = CausalGraph(nodes, edges)
    cpts: dict[str, Cpt] = {}
    for child, entry in raw_cpts.items():
        parents = tuple(str(p) for p in entry["parents"])
        table: dict[tuple[int, ...], tuple[float, ...]] = {}
        for key, row in entry["table"].items():
            states = tuple(int(s) for s in key.split(",")) if key else ()
            table[states] = tuple(float(p) for p in row)
        cpts[child] = Cpt(child, parents, table)
    return DiscreteScm(graph, cpts)


def load_scm(path: str) -> DiscreteScm:
    with open(path, encoding="utf-8") as fh:
        return scm_from_dict(json.load(fh))


def dump_scm(scm: DiscreteScm, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scm_to_dict(scm), fh, indent=2, sort_keys=True)
        fh.write("\n")
