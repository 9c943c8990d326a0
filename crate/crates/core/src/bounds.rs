//! Frechet bounds, correlation bounds and agreement counts.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::choice::{
    menus_excluding_worst_pair, rational_choice_function, AlternativeSet, ChoiceFunction, Menu,
    Preference, PreferenceDistribution, StochasticChoiceFunction,
};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Largest alternative set for sweeps over all `n!` preferences.
pub const MAX_BOUNDS_N: usize = 6;

fn require_at_least_three(operation: &'static str, n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewAlternatives {
            operation,
            n,
            min: 3,
        });
    }
    Ok(())
}

fn require_sweep_size(operation: &'static str, n: usize) -> Result<()> {
    if n > MAX_BOUNDS_N {
        return Err(Error::TooManyAlternatives {
            operation,
            n,
            max: MAX_BOUNDS_N,
        });
    }
    Ok(())
}

fn agreement_sum(rho: &StochasticChoiceFunction, c: &ChoiceFunction, menus: &[Menu]) -> Rational {
    let alt = rho.alternatives();
    menus.iter().fold(Rational::zero(), |acc, &m| {
        acc + rho.prob_ref(c.choice(alt, m), m)
    })
}

/// `max{0, sum_{A in B} rho(c(A), A) - (|B| - 1)}`, a lower bound on the mass
/// any representing RCM puts on functions agreeing with `c` on all of `B`.
pub fn frechet_lower_bound(
    rho: &StochasticChoiceFunction,
    c: &ChoiceFunction,
    menus: &[Menu],
) -> Result<Rational> {
    if menus.is_empty() {
        return Err(Error::Precondition("menu list is empty".into()));
    }
    let alt = rho.alternatives();
    let mut seen = HashSet::new();
    for &m in menus {
        if alt.menu_position(m).is_none() {
            return Err(Error::InvalidMenu(format!(
                "{m:?} is not in the menu domain"
            )));
        }
        if !seen.insert(m) {
            return Err(Error::Precondition(format!(
                "menu {} listed twice",
                alt.menu_key(m)
            )));
        }
    }
    let bound = agreement_sum(rho, c, menus) - int(menus.len() as i64 - 1);
    Ok(bound.max(Rational::zero()))
}

/// `C_P = (1 / (K - 2)) * sum over menus except the worst pair of P of
/// rho(c_P(A), A)`.
pub fn correlation_bound(rho: &StochasticChoiceFunction, p: &Preference) -> Result<Rational> {
    let alt = rho.alternatives();
    require_at_least_three("correlation_bound", alt.n())?;
    let menus = menus_excluding_worst_pair(alt, p)?;
    let c = rational_choice_function(alt, p);
    Ok(agreement_sum(rho, &c, &menus) / int(alt.k() as i64 - 2))
}

/// Per-preference values of a bound together with its violators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationReport {
    /// One entry per preference, in enumeration order.
    pub values: Vec<(Preference, Rational)>,
    /// Preferences whose value exceeds one.
    pub violators: Vec<Preference>,
    pub max: Rational,
    /// First preference attaining `max`.
    pub argmax: Preference,
}

impl CorrelationReport {
    fn from_values(values: Vec<(Preference, Rational)>) -> Self {
        let violators = values
            .iter()
            .filter(|(_, v)| *v > Rational::one())
            .map(|(p, _)| p.clone())
            .collect();
        let (argmax, max) = values
            .iter()
            .fold(
                None::<(&Preference, &Rational)>,
                |best, (p, v)| match best {
                    Some((_, b)) if b >= v => best,
                    _ => Some((p, v)),
                },
            )
            .map(|(p, v)| (p.clone(), v.clone()))
            .expect("at least one preference");
        CorrelationReport {
            values,
            violators,
            max,
            argmax,
        }
    }

    pub fn is_satisfied(&self) -> bool {
        self.violators.is_empty()
    }

    pub fn value(&self, p: &Preference) -> Option<&Rational> {
        self.values.iter().find(|(q, _)| q == p).map(|(_, v)| v)
    }

    /// Preferences whose value equals one exactly.
    pub fn binding(&self) -> impl Iterator<Item = &Preference> {
        self.values
            .iter()
            .filter(|(_, v)| v.is_one())
            .map(|(p, _)| p)
    }
}

/// Evaluates `C_P` for every preference.
pub fn satisfies_correlation_bounds(rho: &StochasticChoiceFunction) -> Result<CorrelationReport> {
    let alt = rho.alternatives();
    require_at_least_three("satisfies_correlation_bounds", alt.n())?;
    require_sweep_size("satisfies_correlation_bounds", alt.n())?;
    let values = alt
        .preferences()
        .into_iter()
        .map(|p| {
            let v = correlation_bound(rho, &p)?;
            Ok((p, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrelationReport::from_values(values))
}

/// `n(P, Q)`: menus outside the worst pair of `P` where `c_P` and `c_Q` agree.
pub fn agreement(alt: &AlternativeSet, p: &Preference, q: &Preference) -> Result<usize> {
    let menus = menus_excluding_worst_pair(alt, p)?;
    Ok(menus
        .iter()
        .filter(|&&m| p.best_in(m) == q.best_in(m))
        .count())
}

/// `(1 / (K - 2)) * sum_Q mu(Q) n(P, Q)`, equal to [`correlation_bound`] of
/// the aggregate.
pub fn correlation_from_distribution(
    mu: &PreferenceDistribution,
    p: &Preference,
) -> Result<Rational> {
    let alt = mu.alternatives();
    require_at_least_three("correlation_from_distribution", alt.n())?;
    let mut total = Rational::zero();
    for (q, w) in mu.support() {
        total += w * int(agreement(alt, p, q)? as i64);
    }
    Ok(total / int(alt.k() as i64 - 2))
}

/// `n(P, Q)` for all ordered pairs of preferences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementMatrix {
    preferences: Vec<Preference>,
    entries: Vec<Vec<usize>>,
}

impl AgreementMatrix {
    pub fn preferences(&self) -> &[Preference] {
        &self.preferences
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn get(&self, p: &Preference, q: &Preference) -> Option<usize> {
        let i = self.preferences.binary_search(p).ok()?;
        let j = self.preferences.binary_search(q).ok()?;
        Some(self.entries[i][j])
    }
}

pub fn agreement_matrix(alt: &AlternativeSet) -> Result<AgreementMatrix> {
    require_at_least_three("agreement_matrix", alt.n())?;
    require_sweep_size("agreement_matrix", alt.n())?;
    let preferences = alt.preferences();
    let entries = preferences
        .iter()
        .map(|p| {
            preferences
                .iter()
                .map(|q| agreement(alt, p, q))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AgreementMatrix {
        preferences,
        entries,
    })
}

/// `(1 / (K - 1)) * sum over all menus of rho(c_P(A), A)`.
pub fn weak_correlation_value(rho: &StochasticChoiceFunction, p: &Preference) -> Result<Rational> {
    let alt = rho.alternatives();
    if alt.k() < 2 {
        return Err(Error::TooFewAlternatives {
            operation: "weak_correlation_value",
            n: alt.n(),
            min: 3,
        });
    }
    let c = rational_choice_function(alt, p);
    Ok(agreement_sum(rho, &c, alt.menus()) / int(alt.k() as i64 - 1))
}

pub fn satisfies_weak_correlation_bounds(
    rho: &StochasticChoiceFunction,
) -> Result<CorrelationReport> {
    let alt = rho.alternatives();
    require_sweep_size("satisfies_weak_correlation_bounds", alt.n())?;
    let values = alt
        .preferences()
        .into_iter()
        .map(|p| {
            let v = weak_correlation_value(rho, &p)?;
            Ok((p, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrelationReport::from_values(values))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationDecomposition {
    /// `(1 / (K - 1)) * sum over all menus of rho(c(A), A)`.
    pub concordant: Rational,
    /// `1 - concordant`.
    pub discordant: Rational,
    /// `concordant - discordant`.
    pub kendall: Rational,
    /// Set when `concordant > 1`, which happens for data concentrated on `c`.
    pub exceeds_one: bool,
}

pub fn correlation_decomposition(
    rho: &StochasticChoiceFunction,
    c: &ChoiceFunction,
) -> Result<CorrelationDecomposition> {
    let alt = rho.alternatives();
    if c.len() != alt.k() {
        return Err(Error::DimensionMismatch(
            "choice function does not match the alternative set".into(),
        ));
    }
    if alt.k() < 2 {
        return Err(Error::TooFewAlternatives {
            operation: "correlation_decomposition",
            n: alt.n(),
            min: 3,
        });
    }
    let concordant = agreement_sum(rho, c, alt.menus()) / int(alt.k() as i64 - 1);
    let discordant = Rational::one() - &concordant;
    Ok(CorrelationDecomposition {
        kendall: &concordant - &discordant,
        exceeds_one: concordant > Rational::one(),
        concordant,
        discordant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::RandomChoiceModel;
    use crate::rational::ratio;

    fn csf() -> AlternativeSet {
        AlternativeSet::new(["c", "s", "f"]).unwrap()
    }

    fn dual(alt: &AlternativeSet, p1: &str, p2: &str, m1: Rational) -> PreferenceDistribution {
        let m2 = Rational::one() - &m1;
        PreferenceDistribution::new(
            alt,
            vec![
                (alt.parse_preference(p1).unwrap(), m1),
                (alt.parse_preference(p2).unwrap(), m2),
            ],
        )
        .unwrap()
    }

    fn weak_bound_case() -> PreferenceDistribution {
        let alt = AlternativeSet::with_size(3).unwrap();
        PreferenceDistribution::new(
            &alt,
            vec![
                (alt.parse_preference("a>b>c").unwrap(), ratio(2, 5)),
                (alt.parse_preference("a>c>b").unwrap(), ratio(2, 5)),
                (alt.parse_preference("b>c>a").unwrap(), ratio(1, 10)),
                (alt.parse_preference("c>b>a").unwrap(), ratio(1, 10)),
            ],
        )
        .unwrap()
    }

    fn ab_violation() -> StochasticChoiceFunction {
        let alt = AlternativeSet::with_size(3).unwrap();
        let ab = alt.parse_menu("ab").unwrap();
        StochasticChoiceFunction::from_fn(&alt, |x, m| {
            if m == ab {
                return if x == 0 { ratio(2, 3) } else { ratio(1, 3) };
            }
            let winner = m.members().next().unwrap();
            if x == winner {
                int(1)
            } else {
                int(0)
            }
        })
        .unwrap()
    }

    #[test]
    fn frechet_examples() {
        let rho = ab_violation();
        let alt = rho.alternatives().clone();
        let p = alt.parse_preference("a>b>c").unwrap();
        let c = rational_choice_function(&alt, &p);
        assert_eq!(
            frechet_lower_bound(&rho, &c, alt.menus()).unwrap(),
            ratio(2, 3)
        );
        let uniform = StochasticChoiceFunction::uniform(&alt);
        assert_eq!(
            frechet_lower_bound(&uniform, &c, alt.menus()).unwrap(),
            int(0)
        );
        let ab = alt.parse_menu("ab").unwrap();
        assert_eq!(frechet_lower_bound(&rho, &c, &[ab]).unwrap(), ratio(2, 3));
        assert!(frechet_lower_bound(&rho, &c, &[]).is_err());
        assert!(frechet_lower_bound(&rho, &c, &[ab, ab]).is_err());
    }

    #[test]
    fn correlation_values() {
        let alt = csf();
        let p1 = alt.parse_preference("c>s>f").unwrap();
        for (m1, expected) in [(ratio(1, 2), int(1)), (ratio(51, 100), ratio(101, 100))] {
            let rho = dual(&alt, "c>s>f", "s>c>f", m1.clone()).aggregate();
            // (1/2)[3 m1 + m2]
            let closed = (int(3) * &m1 + (Rational::one() - &m1)) / int(2);
            assert_eq!(correlation_bound(&rho, &p1).unwrap(), closed);
            assert_eq!(closed, expected);
        }
        let rho = weak_bound_case().aggregate();
        let p = rho.alternatives().parse_preference("a>b>c").unwrap();
        assert_eq!(correlation_bound(&rho, &p).unwrap(), ratio(6, 5));
        let tiny = StochasticChoiceFunction::uniform(&AlternativeSet::with_size(2).unwrap());
        let q = tiny.alternatives().preferences()[0].clone();
        assert!(matches!(
            correlation_bound(&tiny, &q),
            Err(Error::TooFewAlternatives { .. })
        ));
    }

    #[test]
    fn reports() {
        let alt = csf();
        let p1 = alt.parse_preference("c>s>f").unwrap();
        let ok =
            satisfies_correlation_bounds(&dual(&alt, "c>s>f", "s>c>f", ratio(1, 2)).aggregate())
                .unwrap();
        assert!(ok.is_satisfied());
        assert!(ok.binding().any(|p| *p == p1));
        let bad =
            satisfies_correlation_bounds(&dual(&alt, "c>s>f", "s>c>f", ratio(51, 100)).aggregate())
                .unwrap();
        assert!(bad.violators.contains(&p1));
        assert!(bad.violators.contains(&p1.swap_worst_two()));
        assert_eq!(bad.argmax, p1);
        let rho = ab_violation();
        let report = satisfies_correlation_bounds(&rho).unwrap();
        assert!(report
            .violators
            .contains(&rho.alternatives().parse_preference("a>b>c").unwrap()));
    }

    #[test]
    fn distribution_form() {
        let alt = csf();
        let mu = dual(&alt, "c>s>f", "s>c>f", ratio(1, 2));
        let p1 = alt.parse_preference("c>s>f").unwrap();
        assert_eq!(correlation_from_distribution(&mu, &p1).unwrap(), int(1));
        let mu = dual(&alt, "c>s>f", "f>s>c", ratio(2, 3));
        assert_eq!(correlation_from_distribution(&mu, &p1).unwrap(), int(1));
        let degenerate = PreferenceDistribution::degenerate(&alt, p1.clone());
        assert_eq!(
            correlation_from_distribution(&degenerate, &p1).unwrap(),
            ratio(3, 2)
        );
    }

    #[test]
    fn agreement_counts() {
        let alt = csf();
        let m = agreement_matrix(&alt).unwrap();
        let p = |s| alt.parse_preference(s).unwrap();
        assert_eq!(m.get(&p("c>s>f"), &p("s>c>f")), Some(1));
        assert_eq!(m.get(&p("c>s>f"), &p("f>s>c")), Some(0));
        // The count is not symmetric: only the row preference's worst pair is dropped.
        assert_eq!(m.get(&p("f>s>c"), &p("s>c>f")), Some(0));
        assert_eq!(m.get(&p("s>c>f"), &p("f>s>c")), Some(1));
        for q in alt.preferences() {
            assert_eq!(m.get(&q, &q), Some(alt.k() - 1));
            assert_eq!(m.get(&q, &q.swap_worst_two()), Some(alt.k() - 1));
        }
        let alt4 = AlternativeSet::with_size(4).unwrap();
        let p = alt4.parse_preference("a>b>c>d").unwrap();
        assert_eq!(agreement(&alt4, &p, &p.swap_worst_two()).unwrap(), 10);
        assert!(agreement_matrix(&AlternativeSet::with_size(7).unwrap()).is_err());
    }

    #[test]
    fn weak_bounds() {
        let rho = weak_bound_case().aggregate();
        let alt = rho.alternatives().clone();
        let p1 = alt.parse_preference("a>b>c").unwrap();
        assert_eq!(weak_correlation_value(&rho, &p1).unwrap(), ratio(29, 30));
        assert!(satisfies_weak_correlation_bounds(&rho)
            .unwrap()
            .is_satisfied());
        assert!(!satisfies_correlation_bounds(&rho).unwrap().is_satisfied());

        let rho2 = ab_violation();
        assert_eq!(weak_correlation_value(&rho2, &p1).unwrap(), ratio(11, 9));
        let degenerate = PreferenceDistribution::degenerate(&alt, p1.clone()).aggregate();
        assert_eq!(
            weak_correlation_value(&degenerate, &p1).unwrap(),
            ratio(4, 3)
        );
    }

    #[test]
    fn decomposition() {
        let alt = csf();
        let rho = dual(&alt, "c>s>f", "s>c>f", ratio(1, 2)).aggregate();
        let c1 = crate::choice::ChoiceFunction::from_pairs(
            &alt,
            &[
                (alt.parse_menu("csf").unwrap(), alt.index_of("s").unwrap()),
                (alt.parse_menu("cs").unwrap(), alt.index_of("c").unwrap()),
                (alt.parse_menu("cf").unwrap(), alt.index_of("c").unwrap()),
                (alt.parse_menu("sf").unwrap(), alt.index_of("s").unwrap()),
            ],
        )
        .unwrap();
        let d = correlation_decomposition(&rho, &c1).unwrap();
        assert_eq!(d.concordant, int(1));
        assert_eq!(d.discordant, int(0));
        assert_eq!(d.kendall, int(1));
        assert!(!d.exceeds_one);

        let uniform = StochasticChoiceFunction::uniform(&alt);
        let d = correlation_decomposition(&uniform, &c1).unwrap();
        assert_eq!(d.concordant, ratio(11, 18));
        assert_eq!(d.discordant, ratio(7, 18));

        let point = RandomChoiceModel::degenerate(&alt, c1.clone()).aggregate();
        let d = correlation_decomposition(&point, &c1).unwrap();
        assert_eq!(d.concordant, ratio(4, 3));
        assert!(d.exceeds_one);
    }
}
