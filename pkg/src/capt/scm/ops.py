"""Exact inference primitives: joint enumeration, conditioning, do-surgery."""

from __future__ import annotations

import itertools
import math

from capt.errors import (
    StateSpaceTooLargeError,
    ZeroProbabilityEvidenceError,
)
from capt.scm.model import CausalGraph, Cpt, DiscreteScm, Factor

STATE_SPACE_CAP = 1 << 20
JOINT_MASS_TOL = 1e-10


def enumerate_joint(scm: DiscreteScm) -> Factor:
    """The full joint as a factor over all nodes, by explicit enumeration."""
    names = tuple(v.name for v in scm.graph.nodes)
    arities = [scm.arity(n) for n in names]
    size = math.prod(arities)
    if size > STATE_SPACE_CAP:
        raise StateSpaceTooLargeError(
            f"joint has {size} states, cap is {STATE_SPACE_CAP}"
        )
    parent_idx = {
        n: [names.index(p) for p in scm.cpts[n].parents] for n in names
    }
    values: dict[tuple[int, ...], float] = {}
    for states in itertools.product(*[range(a) for a in arities]):
        p = 1.0
        for i, name in enumerate(names):
            row_key = tuple(states[j] for j in parent_idx[name])
            p *= scm.cpts[name].row(row_key)[states[i]]
            if p == 0.0:
                break
        values[states] = p
    joint = Factor(names, values)
    if abs(joint.total() - 1.0) > JOINT_MASS_TOL:
        raise ZeroProbabilityEvidenceError(
            f"joint mass {joint.total()!r} deviates from 1 beyond {JOINT_MASS_TOL}"
        )
    return joint


def condition(factor: Factor, evidence: dict[str, int]) -> Factor:
    """Renormalized factor over the remaining scope given the evidence."""
    mass = factor.prob(evidence)
    if mass <= 0.0:
        raise ZeroProbabilityEvidenceError(f"evidence {evidence} has zero probability")
    keep = tuple(n for n in factor.scope if n not in evidence)
    out: dict[tuple[int, ...], float] = {}
    ev_idx = [(factor.scope.index(n), s) for n, s in evidence.items()]
    keep_idx = [factor.scope.index(n) for n in keep]
    for states, p in factor.values.items():
        if all(states[i] == s for i, s in ev_idx):
            key = tuple(states[i] for i in keep_idx)
            out[key] = out.get(key, 0.0) + p / mass
    return Factor(keep, out)


def apply_do(scm: DiscreteScm, interventions: dict[str, int]) -> DiscreteScm:
    """Graph surgery: point-mass CPTs for intervened nodes, parent edges cut."""
    for name, state in interventions.items():
        scm.check_state(name, state)
    new_edges = tuple(
        (p, c) for p, c in scm.graph.edges if c not in interventions
    )
    new_graph = CausalGraph(scm.graph.nodes, new_edges)
    new_cpts: dict[str, Cpt] = {}
    for name, cpt in scm.cpts.items():
        if name in interventions:
            arity = scm.arity(name)
            row = tuple(1.0 if s == interventions[name] else 0.0 for s in range(arity))
            new_cpts[name] = Cpt(name, (), {(): row})
        else:
            new_cpts[name] = cpt
    return DiscreteScm(new_graph, new_cpts)


def conditional(scm: DiscreteScm, target: str, given: dict[str, int]) -> tuple[float, ...]:
    """P(target | given) as a tuple over the target's states."""
    joint = enumerate_joint(scm)
    posterior = condition(joint, given)
    marginal = posterior.marginalize((target,))
    return tuple(marginal.values[(s,)] for s in range(scm.arity(target)))


def interventional(scm: DiscreteScm, target: str, do: dict[str, int]) -> tuple[float, ...]:
    """P(target | do(...)) as a tuple over the target's states."""
    surgered = apply_do(scm, do)
    joint = enumerate_joint(surgered)
    marginal = joint.marginalize((target,))
    return tuple(marginal.values[(s,)] for s in range(scm.arity(target)))
