//! Subalgebra (SAGBI) bases for polynomial rings and their quotients over
//! the rationals.
//!
//! The crate provides exact multivariate polynomial arithmetic with global
//! monomial orders, a Buchberger engine used for quotient normal forms and
//! kernels of monomial maps, the subduction algorithm, a resumable
//! degree-by-degree sagbi completion loop with certification, membership
//! and intersection operations, and a text front end (expression parser,
//! script interpreter, durable state files).

pub mod error;
pub mod groebner;
pub mod membership;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod sagbi;
pub mod script;
pub mod session;
pub mod state;
pub mod subring;
pub mod trace;

pub use error::{Error, Result};
pub use groebner::{
    buchberger, elimination_subring, initial_ideal_gens, kernel_generators, reduce_modulo,
    s_polynomial, GroebnerBasis,
};
pub use membership::{
    groebner_membership_test, is_full_intersection, normal_form, quotient_coefficients,
    subring_intersection, IntersectedSubring,
};
pub use order::{Monomial, MonomialOrder};
pub use parse::{order_to_string, parse_polynomial};
pub use poly::{evaluate_map, select_in_subring, Polynomial, Term};
pub use ring::PolyRing;
pub use sagbi::{
    auto_subduce, is_sagbi, is_sagbi_basis, sagbi, sagbi_from_gens, sagbi_resume, sagbi_traced,
    subalgebra_basis, subduct, subduct_with_coefficients, SagbiBasis,
};
pub use script::{parse_script, parse_script_with_names, Script, Statement};
pub use session::{run_script_text, OutputFormat, Session};
pub use state::{load_state, save_state};
pub use subring::{SagbiOptions, Strategy, SubductionMethod, Subring};
pub use trace::Trace;
