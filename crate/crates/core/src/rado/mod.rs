//! The Rado graph: bit and Legendre models, extension witnesses, and the
//! neighbor-weighted random walk with `Q(j) = 2^{-(j+1)}`.

mod mass;
mod mixing;
mod model;
mod walk;

pub use mass::{
    detailed_balance, dyadic, kernel_expr, kernel_row_sum, neighborhood_mass, pi_expr, q_measure,
    stationary_vector, tail_exact, DetailedBalance, MassExpr, NeighborhoodMass, RowSum,
    StationaryVector, EXACT_TAIL_MAX,
};
pub use mixing::{mixing_estimate, MixingCurve, TvPoint, DEFAULT_TRUNCATION, LEAK_WARNING};
pub use model::{
    direct_extension, extension_witness, legendre_adjacent, rado_adjacency, rado_adjacent,
    Adjacency, LegendrePool, RadoModel, DEFAULT_POOL_BOUND,
};
pub use walk::{
    chi_square_row, chi_square_suite, sample_neighbor, split_rng, trajectory, walk_step,
    write_trajectory, ChiSquare, WalkState, PROPOSAL_CAP,
};
