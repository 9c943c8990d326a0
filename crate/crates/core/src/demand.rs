//! Two budget sets, two demand segments each: bounds on the share of
//! consumers whose pair of choices is inconsistent.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `pi_i_j`: share choosing segment `i` from budget `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoBudgetData {
    pub pi_1_1: Rational,
    pub pi_2_1: Rational,
    pub pi_1_2: Rational,
    pub pi_2_2: Rational,
}

impl TwoBudgetData {
    pub fn new(
        pi_1_1: Rational,
        pi_2_1: Rational,
        pi_1_2: Rational,
        pi_2_2: Rational,
    ) -> Result<Self> {
        let data = TwoBudgetData {
            pi_1_1,
            pi_2_1,
            pi_1_2,
            pi_2_2,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<()> {
        for v in [&self.pi_1_1, &self.pi_2_1, &self.pi_1_2, &self.pi_2_2] {
            if v.is_negative() {
                return Err(Error::InvalidWeights(format!("share {v} is negative")));
            }
        }
        for (budget, total) in [
            (1, &self.pi_1_1 + &self.pi_2_1),
            (2, &self.pi_1_2 + &self.pi_2_2),
        ] {
            if !total.is_one() {
                return Err(Error::NotNormalized {
                    menu: format!("B{budget}"),
                    sum: total.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// Joint shares: `q_ij` chose segment `i` on budget 2 and segment `j` on
/// budget 1. `q11` is the inconsistent pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContingencyTable {
    pub q11: Rational,
    pub q12: Rational,
    pub q21: Rational,
    pub q22: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    MinIrrational,
    MaxIrrational,
}

/// Frechet interval for `q11`.
pub fn irrational_share_bounds(data: &TwoBudgetData) -> Result<(Rational, Rational)> {
    data.validate()?;
    let lo = (&data.pi_1_1 + &data.pi_1_2 - Rational::one()).max(Rational::zero());
    let hi = data.pi_1_1.clone().min(data.pi_1_2.clone());
    Ok((lo, hi))
}

/// The table with the given `q11`; errors if any cell would be negative.
pub fn complete_table(data: &TwoBudgetData, q11: Rational) -> Result<ContingencyTable> {
    data.validate()?;
    let table = ContingencyTable {
        q12: &data.pi_1_2 - &q11,
        q21: &data.pi_1_1 - &q11,
        q22: Rational::one() - &data.pi_1_1 - &data.pi_1_2 + &q11,
        q11,
    };
    if [&table.q11, &table.q12, &table.q21, &table.q22]
        .iter()
        .any(|v| v.is_negative())
    {
        return Err(Error::Precondition(format!(
            "q11 = {} is outside the feasible interval",
            table.q11
        )));
    }
    Ok(table)
}

pub fn extremal_table(data: &TwoBudgetData, target: Target) -> Result<ContingencyTable> {
    let (lo, hi) = irrational_share_bounds(data)?;
    complete_table(
        data,
        match target {
            Target::MinIrrational => lo,
            Target::MaxIrrational => hi,
        },
    )
}
