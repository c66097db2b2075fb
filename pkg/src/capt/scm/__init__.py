"""Discrete SCM core: models, exact inference, identity verification."""

from capt.scm.identities import (
    IdentityReport,
    eq2_rhs,
    eq3_rhs,
    eq5_rhs,
    infer_shape,
    naive_adjustment,
    random_scm,
    validate_roles,
    verify_capt_identities,
)
from capt.scm.model import (
    CausalGraph,
    Cpt,
    DiscreteScm,
    Factor,
    VariableId,
    dump_scm,
    load_scm,
    scm_from_dict,
    scm_to_dict,
)
from capt.scm.ops import (
    apply_do,
    condition,
    conditional,
    enumerate_joint,
    interventional,
)

__all__ = [
    "CausalGraph",
    "Cpt",
    "DiscreteScm",
    "Factor",
    "IdentityReport",
    "VariableId",
    "apply_do",
    "condition",
    "conditional",
    "dump_scm",
    "enumerate_joint",
    "eq2_rhs",
    "eq3_rhs",
    "eq5_rhs",
    "infer_shape",
    "interventional",
    "load_scm",
    "naive_adjustment",
    "random_scm",
    "scm_from_dict",
    "scm_to_dict",
    "validate_roles",
    "verify_capt_identities",
]
