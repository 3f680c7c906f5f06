//! Bent and vectorial bent constructions, each paired with an exhaustive
//! check of what it claims.

mod families;
mod lift;
mod report;
mod secondary;

pub use families::{
    gold_auto_u, gold_like_family, gold_omega, kasami_auto_u, kasami_family, mod_inverse,
    niho_auto_u, niho_default_u, niho_dual_one, niho_exponents, niho_family, niho_function,
    FamilyOutcome, GoldParams, KasamiParams, NihoParams, USpec,
};
pub use lift::{vec_bent_lift, vec_plateaued_lift};
pub use report::{AugmentedReport, Check, ConstructionReport, DualCheck};
pub use secondary::{
    bent_plus_cubic_trace, bent_plus_quadratic_trace, bent_plus_three_trace_polynomial,
    predicted_class, sigma_combine, trace_composition_bent, SecondaryOutcome,
};
