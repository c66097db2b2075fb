"""Causal identity checks on the three benchmark graph shapes.

Shapes (roles -> edges):
  fig1a: E->X, S->X, S->Y
  fig1b: U->E, U->Y, E->X, S->X, S->Y
  fig1d: the fig1a graph with E exogenous and uniform

Each identity is verified along two independent routes: the left side comes
from exact joint enumeration plus conditioning, the right side from explicit
nested sums over CPT entries. The two must agree everywhere on (x, y).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from capt.errors import RoleShapeMismatchError
from capt.rng import stream
from capt.scm.model import CausalGraph, Cpt, DiscreteScm, VariableId
from capt.scm.ops import conditional

UNIFORM_TOL = 1e-12

SHAPE_EDGES: dict[str, tuple[tuple[str, str], ...]] = {
    "fig1a": (("E", "X"), ("S", "X"), ("S", "Y")),
    "fig1b": (("U", "E"), ("U", "Y"), ("E", "X"), ("S", "X"), ("S", "Y")),
    "fig1d": (("E", "X"), ("S", "X"), ("S", "Y")),
}

SHAPE_ROLES: dict[str, tuple[str, ...]] = {
    "fig1a": ("E", "S", "X", "Y"),
    "fig1b": ("U", "E", "S", "X", "Y"),
    "fig1d": ("E", "S", "X", "Y"),
}


@dataclass
class IdentityReport:
    """Max |lhs - rhs| per identity, plus the naive-adjustment gap on fig1b."""

    shape: str
    discrepancies: dict[str, float] = field(default_factory=dict)
    naive_gap: float | None = None

    def max_discrepancy(self) -> float:
        return max(self.discrepancies.values()) if self.discrepancies else 0.0


def _is_uniform(cpt: Cpt, arity: int) -> bool:
    target = 1.0 / arity
    return all(
        abs(p - target) <= UNIFORM_TOL for row in cpt.table.values() for p in row
    )


def validate_roles(scm: DiscreteScm, roles: dict[str, str], shape: str) -> None:
    """Check that roles map the shape onto the SCM exactly (no extra nodes)."""
    if shape not in SHAPE_EDGES:
        raise RoleShapeMismatchError(f"unknown shape {shape!r}")
    wanted_roles = SHAPE_ROLES[shape]
    if set(roles) != set(wanted_roles):
        raise RoleShapeMismatchError(
            f"shape {shape} needs roles {wanted_roles}, got {sorted(roles)}"
        )
    names = [v.name for v in scm.graph.nodes]
    mapped = [roles[r] for r in wanted_roles]
    if len(set(mapped)) != len(mapped) or set(mapped) != set(names):
        raise RoleShapeMismatchError(
            f"roles must map one-to-one onto SCM nodes {sorted(names)}, got {sorted(mapped)}"
        )
    want_edges = {(roles[a], roles[b]) for a, b in SHAPE_EDGES[shape]}
    have_edges = set(scm.graph.edges)
    if want_edges != have_edges:
        raise RoleShapeMismatchError(
            f"edges {sorted(have_edges)} do not match shape {shape} edges {sorted(want_edges)}"
        )
    if shape == "fig1d":
        e = roles["E"]
        if not _is_uniform(scm.cpts[e], scm.arity(e)):
            raise RoleShapeMismatchError(f"shape fig1d requires a uniform CPT on {e!r}")


def infer_shape(scm: DiscreteScm, roles: dict[str, str]) -> str:
    """fig1b when a U role is present, else fig1d iff E is uniform, else fig1a."""
    if "U" in roles:
        return "fig1b"
    e = roles["E"]
    if _is_uniform(scm.cpts[e], scm.arity(e)):
        return "fig1d"
    return "fig1a"


def _lookup(scm: DiscreteScm, child: str, state: int, assignment: dict[str, int]) -> float:
    cpt = scm.cpts[child]
    key = tuple(assignment[p] for p in cpt.parents)
    return cpt.row(key)[state]


def _states(scm: DiscreteScm, role_name: str) -> range:
    return range(scm.arity(role_name))


# === right-hand sides, written as the explicit sums ===


def eq2_rhs(scm: DiscreteScm, roles: dict[str, str], x: int, y: int) -> float:
    """P(Y=y|X=x) = sum_{e,s} P(Y=y|s) P(s|x) P(e|x,s) on the fig1a graph."""
    e_n, s_n, x_n, y_n = roles["E"], roles["S"], roles["X"], roles["Y"]
    p_x = 0.0
    for e in _states(scm, e_n):
        for s in _states(scm, s_n):
            p_x += (
                _lookup(scm, e_n, e, {})
                * _lookup(scm, s_n, s, {})
                * _lookup(scm, x_n, x, {e_n: e, s_n: s})
            )
    total = 0.0
    for e in _states(scm, e_n):
        for s in _states(scm, s_n):
            p_es_x = (
                _lookup(scm, e_n, e, {})
                * _lookup(scm, s_n, s, {})
                * _lookup(scm, x_n, x, {e_n: e, s_n: s})
            )
            p_s_given_x = (
                sum(
                    _lookup(scm, e_n, e2, {})
                    * _lookup(scm, s_n, s, {})
                    * _lookup(scm, x_n, x, {e_n: e2, s_n: s})
                    for e2 in _states(scm, e_n)
                )
                / p_x
            )
            p_xs = p_s_given_x * p_x
            p_e_given_xs = p_es_x / p_xs
            total += _lookup(scm, y_n, y, {s_n: s}) * p_s_given_x * p_e_given_xs
    return total


def eq3_rhs(scm: DiscreteScm, roles: dict[str, str], x: int, y: int) -> float:
    """P(Y=y|X=x) = sum_{e,s,u} P(Y|s,u) P(u) P(e|u) P(s) P(x|s,e) / P(x)."""
    u_n, e_n, s_n = roles["U"], roles["E"], roles["S"]
    x_n, y_n = roles["X"], roles["Y"]
    p_x = 0.0
    for u in _states(scm, u_n):
        for e in _states(scm, e_n):
            for s in _states(scm, s_n):
                p_x += (
                    _lookup(scm, u_n, u, {})
                    * _lookup(scm, e_n, e, {u_n: u})
                    * _lookup(scm, s_n, s, {})
                    * _lookup(scm, x_n, x, {e_n: e, s_n: s})
                )
    total = 0.0
    for u in _states(scm, u_n):
        for e in _states(scm, e_n):
            for s in _states(scm, s_n):
                total += (
                    _lookup(scm, y_n, y, {s_n: s, u_n: u})
                    * _lookup(scm, u_n, u, {})
                    * _lookup(scm, e_n, e, {u_n: u})
                    * _lookup(scm, s_n, s, {})
                    * _lookup(scm, x_n, x, {e_n: e, s_n: s})
                ) / p_x
    return total


def eq5_rhs(scm: DiscreteScm, roles: dict[str, str], x: int, y: int) -> float:
    """P(Y=y|X=x) = sum_s P(Y=y|s) P(s|x) on the fig1d graph."""
    e_n, s_n, x_n, y_n = roles["E"], roles["S"], roles["X"], roles["Y"]
    p_x = 0.0
    for e in _states(scm, e_n):
        for s in _states(scm, s_n):
            p_x += (
                _lookup(scm, e_n, e, {})
                * _lookup(scm, s_n, s, {})
                * _lookup(scm, x_n, x, {e_n: e, s_n: s})
            )
    total = 0.0
    for s in _states(scm, s_n):
        p_sx = sum(
            _lookup(scm, e_n, e, {})
            * _lookup(scm, s_n, s, {})
            * _lookup(scm, x_n, x, {e_n: e, s_n: s})
            for e in _states(scm, e_n)
        )
        total += _lookup(scm, y_n, y, {s_n: s}) * p_sx / p_x
    return total


def naive_adjustment(scm: DiscreteScm, roles: dict[str, str], x: int, y: int) -> float:
    """sum_s P(Y=y|s) P(s|x) on the fig1b graph, marginalizing U out of Y."""
    u_n, e_n, s_n = roles["U"], roles["E"], roles["S"]
    x_n, y_n = roles["X"], roles["Y"]
    p_y_given_s = {
        s: sum(
            _lookup(scm, u_n, u, {}) * _lookup(scm, y_n, y, {s_n: s, u_n: u})
            for u in _states(scm, u_n)
        )
        for s in _states(scm, s_n)
    }
    p_x = 0.0
    p_sx = {s: 0.0 for s in _states(scm, s_n)}
    for u in _states(scm, u_n):
        for e in _states(scm, e_n):
            for s in _states(scm, s_n):
                mass = (
                    _lookup(scm, u_n, u, {})
                    * _lookup(scm, e_n, e, {u_n: u})
                    * _lookup(scm, s_n, s, {})
                    * _lookup(scm, x_n, x, {e_n: e, s_n: s})
                )
                p_x += mass
                p_sx[s] += mass
    return sum(p_y_given_s[s] * p_sx[s] / p_x for s in _states(scm, s_n))


# === verification ===


def _max_abs_gap(scm, roles, rhs_fn) -> float:
    x_n, y_n = roles["X"], roles["Y"]
    worst = 0.0
    for x in _states(scm, x_n):
        lhs = conditional(scm, y_n, {x_n: x})
        for y in _states(scm, y_n):
            worst = max(worst, abs(lhs[y] - rhs_fn(scm, roles, x, y)))
    return worst


def verify_capt_identities(scm: DiscreteScm, roles: dict[str, str]) -> IdentityReport:
    """Check every identity applicable to the SCM's shape.

    fig1a reports eq2; fig1b reports eq3 plus the naive-adjustment gap;
    fig1d reports eq5 and eq2 (its graph is fig1a-shaped as well).
    """
    shape = infer_shape(scm, roles)
    validate_roles(scm, roles, shape)
    report = IdentityReport(shape=shape)
    if shape == "fig1a":
        report.discrepancies["eq2"] = _max_abs_gap(scm, roles, eq2_rhs)
    elif shape == "fig1b":
        report.discrepancies["eq3"] = _max_abs_gap(scm, roles, eq3_rhs)
        report.naive_gap = _max_abs_gap(scm, roles, naive_adjustment)
    else:
        report.discrepancies["eq5"] = _max_abs_gap(scm, roles, eq5_rhs)
        report.discrepancies["eq2"] = _max_abs_gap(scm, roles, eq2_rhs)
    return report


# === seeded generation ===


def _random_row(rng, arity: int) -> tuple[float, ...]:
    raw = [rng.uniform(0.05, 1.0) for _ in range(arity)]
    z = sum(raw)
    return tuple(v / z for v in raw)


def _random_cpt(rng, child: str, parents: tuple[str, ...], arities: dict[str, int]) -> Cpt:
    table = {}
    for key in itertools.product(*[range(arities[p]) for p in parents]):
        table[key] = _random_row(rng, arities[child])
    return Cpt(child, parents, table)


def random_scm(shape: str, seed: int) -> tuple[DiscreteScm, dict[str, str]]:
    """A seeded random SCM of the given shape; roles map onto node names."""
    if shape not in SHAPE_EDGES:
        raise RoleShapeMismatchError(f"unknown shape {shape!r}")
    rng = stream(seed, "scm", shape)
    role_names = SHAPE_ROLES[shape]
    arities = {r: rng.choice((2, 3)) for r in role_names}
    nodes = tuple(VariableId(r, arities[r]) for r in role_names)
    graph = CausalGraph(nodes, SHAPE_EDGES[shape])
    cpts: dict[str, Cpt] = {}
    for role in role_names:
        parents = graph.parents_of(role)
        if shape == "fig1d" and role == "E":
            row = tuple(1.0 / arities["E"] for _ in range(arities["E"]))
            cpts[role] = Cpt(role, (), {(): row})
        else:
            cpts[role] = _random_cpt(rng, role, parents, arities)
    scm = DiscreteScm(graph, cpts)
    roles = {r: r for r in role_names}
    return scm, roles
