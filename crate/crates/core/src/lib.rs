//! Exact decision procedures for random utility models, their
//! representations by irrational choice functions, and the related bounds.
//!
//! All arithmetic is over exact rationals; no verdict depends on a
//! floating-point tolerance.

pub mod bm;
pub mod bounds;
pub mod choice;
pub mod demand;
pub mod error;
pub mod falsify;
pub mod lp;
pub mod rational;
pub mod represent;

pub use bm::{
    bm_polynomial, check_regularity, is_full_support_rum, is_rum, rum_representation, BMTable,
    RumVerdict,
};
pub use bounds::{
    agreement, agreement_matrix, correlation_bound, correlation_decomposition,
    correlation_from_distribution, frechet_lower_bound, satisfies_correlation_bounds,
    satisfies_weak_correlation_bounds, weak_correlation_value, AgreementMatrix,
    CorrelationDecomposition, CorrelationReport,
};
pub use choice::{
    aggregate, enumerate_menus, is_rational, menus_excluding_worst_pair, rational_choice_function,
    worst_two, AlternativeSet, ChoiceFunction, Menu, Preference, PreferenceDistribution,
    RandomChoiceModel, StochasticChoiceFunction, MAX_ALTERNATIVES, MAX_CHOICE_FUNCTION_N,
};
pub use demand::{
    extremal_table, irrational_share_bounds, ContingencyTable, Target, TwoBudgetData,
};
pub use error::{Error, Result};
pub use falsify::{alpha_bar, mixture, verify_monotonicity, AlphaResult, IrrationalFamily};
pub use lp::{find_representation, solve_feasibility, Feasibility, FeasibilitySystem};
pub use rational::{parse_rational, Rational};
pub use represent::{
    dual_decomposition, dual_irum_construction, irum_decision, is_irum, is_pirum,
    necessary_mass_cap, pirum_representation, rum_decompose_irum_dual, sufficient_quarter,
    DualDecomposition, IrumDualSplit, IrumVerdict, PirumVerdict,
};
