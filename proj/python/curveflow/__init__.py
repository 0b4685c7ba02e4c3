"""Constrained C1 curve evolution: bending, geodesic, and indentation flows."""

from ._curveflow import (
    HermiteCurve,
    LevelSetSurface,
    ParametricCurve,
    Partition,
    bending_energy,
    bending_matrix,
    constraint_violations,
    dof_index,
    indentation_energy,
    make_uniform_partition,
    mass_matrix,
    penetration_norm,
    project_to_admissible,
    random_periodic_admissible,
    reparametrize_arclength,
    run_experiment,
    run_flow,
    single_fold_biased_admissible,
    sphere,
    torus,
    torus_seed,
)

__all__ = [
    "HermiteCurve",
    "LevelSetSurface",
    "ParametricCurve",
    "Partition",
    "bending_energy",
    "bending_matrix",
    "constraint_violations",
    "dof_index",
    "indentation_energy",
    "make_uniform_partition",
    "mass_matrix",
    "penetration_norm",
    "project_to_admissible",
    "random_periodic_admissible",
    "reparametrize_arclength",
    "run_experiment",
    "run_flow",
    "single_fold_biased_admissible",
    "sphere",
    "torus",
    "torus_seed",
]
