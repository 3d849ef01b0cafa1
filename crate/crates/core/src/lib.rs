//! Classification machinery for split simply-connected simple groups over
//! number fields.
//!
//! The crate answers three questions for a Cartan-Killing type `t` and a
//! number field `k` (given by its degree and signature):
//!
//! * does the split `k`-group of type `t` satisfy the finite splitting
//!   principle ([`solitude::finite_splitting_principle`]),
//! * what is the kernel of the localization map on `H^2(k, Z(G))` away from
//!   the infinite places ([`brauer::ker_b`]),
//! * are the arithmetic subgroups profinitely solitary
//!   ([`solitude::solitude_verdict`]).
//!
//! Every closed-form answer is paired with an enumeration over local
//! invariants so the two can be checked against each other
//! ([`solitude::cross_validate`]).

pub mod brauer;
pub mod error;
pub mod examples;
pub mod lie_data;
pub mod number_field;
pub mod qforms;
pub mod real_forms;
pub mod report;
pub mod solitude;

pub use brauer::{is_b_injective, ker_b, validate_class, BrauerClass, KerBDescription};
pub use error::{Error, Result};
pub use lie_data::{
    cartan_matrix, center, dynkin_symmetry_order, CartanMatrix, CartanType, Family,
    FiniteAbelianGroup,
};
pub use number_field::{
    local_determinacy, parse_profile, LocalDeterminacy, NumberFieldProfile, Place,
};
pub use qforms::{DiagonalForm, LocalInvariantTriple, RationalPlace};
pub use real_forms::{h1_real_trivial, inner_real_forms, RealFormRecord};

pub use solitude::{
    archimedean_rank, cross_validate, enumerate_ker_g, finite_splitting_principle, ker_g_count,
    oracle_verdict, solitude_verdict, witness_group, Assignment, CspAssumption, CspPolicy, Outcome,
    Verdict, Witness, WitnessKind,
};
