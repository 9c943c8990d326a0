//! The smallest rational share that keeps every mixture with an irrational
//! family a RUM.

use num_traits::{One, Signed, Zero};

use crate::bm::{is_full_support_rum, BMTable};
use crate::choice::{ChoiceFunction, Menu, RandomChoiceModel, StochasticChoiceFunction};
use crate::error::{Error, Result};
use crate::lp::{solve_feasibility, FeasibilitySystem};
use crate::rational::Rational;

/// A convex family of RCMs given by its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrrationalFamily {
    /// Every RCM; the vertices are the deterministic choice functions.
    AllRcms,
    /// The convex hull of the listed RCMs.
    Finite(Vec<RandomChoiceModel>),
}

impl IrrationalFamily {
    pub fn vertices(&self, rho_star: &StochasticChoiceFunction) -> Result<Vec<RandomChoiceModel>> {
        let alt = rho_star.alternatives();
        match self {
            IrrationalFamily::AllRcms => Ok(alt
                .choice_functions()?
                .into_iter()
                .map(|c| RandomChoiceModel::degenerate(alt, c))
                .collect()),
            IrrationalFamily::Finite(members) => {
                if members.is_empty() {
                    return Err(Error::Precondition("family has no members".into()));
                }
                if members.iter().any(|m| m.alternatives() != alt) {
                    return Err(Error::AlternativeSetMismatch);
                }
                Ok(members.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaResult {
    pub alpha_bar: Rational,
    /// The vertex attaining the threshold; `None` when it is zero.
    pub worst_vertex: Option<RandomChoiceModel>,
    /// `(a, A)` whose polynomial becomes zero exactly at the threshold.
    pub binding_constraint: Option<(usize, Menu)>,
}

/// `alpha * rho_star + (1 - alpha) * rho`.
pub fn mixture(
    alpha: &Rational,
    rho_star: &StochasticChoiceFunction,
    rho: &StochasticChoiceFunction,
) -> Result<StochasticChoiceFunction> {
    rho_star.mix(alpha, rho)
}

fn require_full_support(rho_star: &StochasticChoiceFunction) -> Result<()> {
    if !is_full_support_rum(rho_star) {
        return Err(Error::Precondition(
            "reference data is not a full-support RUM".into(),
        ));
    }
    Ok(())
}

/// The sharp threshold: the least `alpha` such that mixing `rho_star` with
/// any member of the family at weight `alpha` is a RUM.
///
/// For a vertex `nu` and a pair with `BM_nu(a, A) < 0` the mixture's
/// polynomial vanishes at `BM_nu / (BM_nu - BM_star)`. Polynomials are affine
/// in both the mixing weight and the family member, so the maximum over the
/// hull is attained at a vertex.
pub fn alpha_bar(
    rho_star: &StochasticChoiceFunction,
    family: &IrrationalFamily,
) -> Result<AlphaResult> {
    require_full_support(rho_star)?;
    let star = BMTable::new(rho_star);
    let mut best = AlphaResult {
        alpha_bar: Rational::zero(),
        worst_vertex: None,
        binding_constraint: None,
    };
    for vertex in family.vertices(rho_star)? {
        let table = BMTable::new(&vertex.aggregate());
        for (a, menu, v) in table.entries() {
            if !v.is_negative() {
                continue;
            }
            let s = star.get(a, menu).expect("same alternative set");
            let threshold = v / (v - s);
            if threshold > best.alpha_bar {
                best = AlphaResult {
                    alpha_bar: threshold,
                    worst_vertex: Some(vertex.clone()),
                    binding_constraint: Some((a, menu)),
                };
            }
        }
    }
    Ok(best)
}

/// `M / (beta + M)` where `-M` is the least polynomial over the family's
/// vertices (floored at zero) and `beta` the least polynomial of `rho_star`.
/// Any threshold above this value works; [`alpha_bar`] never exceeds it.
pub fn coarse_threshold(
    rho_star: &StochasticChoiceFunction,
    family: &IrrationalFamily,
) -> Result<Rational> {
    require_full_support(rho_star)?;
    let beta = BMTable::new(rho_star).min().2.clone();
    let mut m = Rational::zero();
    for vertex in family.vertices(rho_star)? {
        let low = BMTable::new(&vertex.aggregate()).min().2.clone();
        m = m.max(-low);
    }
    Ok(&m / (beta + &m))
}

fn in_hull(point: &RandomChoiceModel, generators: &[RandomChoiceModel]) -> Result<bool> {
    let mut functions: Vec<&ChoiceFunction> = point.support().iter().map(|(c, _)| c).collect();
    for g in generators {
        functions.extend(g.support().iter().map(|(c, _)| c));
    }
    functions.sort();
    functions.dedup();
    let mut sys = FeasibilitySystem::new(generators.len());
    for c in functions {
        let row = generators.iter().map(|g| g.weight_of(c)).collect();
        sys.add_equality(row, point.weight_of(c))?;
    }
    sys.add_equality(vec![Rational::one(); generators.len()], Rational::one())?;
    Ok(solve_feasibility(&sys)?.is_feasible())
}

/// Checks `alpha_bar(small) <= alpha_bar(big)` after confirming that every
/// vertex of `small` lies in the hull of `big`.
pub fn verify_monotonicity(
    rho_star: &StochasticChoiceFunction,
    small: &IrrationalFamily,
    big: &IrrationalFamily,
) -> Result<bool> {
    if *big != IrrationalFamily::AllRcms {
        let generators = big.vertices(rho_star)?;
        for v in small.vertices(rho_star)? {
            if !in_hull(&v, &generators)? {
                return Err(Error::Precondition(
                    "the smaller family is not contained in the larger one".into(),
                ));
            }
        }
    }
    Ok(alpha_bar(rho_star, small)?.alpha_bar <= alpha_bar(rho_star, big)?.alpha_bar)
}
