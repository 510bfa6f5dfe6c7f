//! Zhu-type associative algebras `A_n(V)`, the bimodules `A_{n,m}(V)` and
//! the dual vacuum spaces they are computed from.

pub mod identities;
pub mod omega;
pub mod products;
pub mod spans;
pub mod vacuum;

pub use identities::{convolution, kernel_difference_is_one, left_right_kernel_difference, vandermonde_collapse};
pub use omega::{omega_n, omega_n_deformed, OmegaFiltration};
pub use products::{
    bar_star_mn, bar_star_upper, bracket_star, bullet_z0, circ_m_n, circ_m_n_projected, circ_n, dot_action,
    left_right_gap, o_dagger_general, shift_relation, star_n,
};
pub use spans::{build_span, span_generators, Generator, MembershipVerdict, QuotientView, SpanKind, SpanLadder};
pub use vacuum::{regular_vectors, vacuum_space_mn, vacuum_space_with_retry, DualActions, Side, VacuumSpace};
