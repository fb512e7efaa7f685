//! Unitriangular groups UT(n, p) and the core/shell calculus on U_{n+2}.

mod andre;
mod census;
mod equations;
mod matrix;
mod shell;
mod symmetrize;

pub use andre::{
    andre_class_check, andre_class_check_with, andre_set, andre_set_with, semidirect_check, HookValues,
    SemidirectReport,
};
pub use census::{conjugacy_census, CensusRecord, DIRECT_PAIR_LIMIT};
pub use equations::{
    equation_system, omitted_equations, shell_vector, EquationSystem, LinearEquation, ShellVar,
};
pub use matrix::{ut_commutes, ut_inv, ut_mul, UnitriangularGroup, UtMatrix};
pub use shell::{
    children_count, deg_over, descendants, from_core_and_shell, h_map, heis_to_ut, tower, u_map,
    Tower, TowerBottom, TowerNode,
};
pub use symmetrize::{
    clique_fibers, equipartition, sigma_tau, symmetrize, symmetrize_all, Block, BlockLabel,
    CliqueFibers, Equipartition, PartiteCertificate, SigmaTau,
};
