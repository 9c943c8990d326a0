//! Fully and partially irrational representations of random utility models.

use num_traits::{One, Signed, Zero};

use crate::bm::is_rum;
use crate::bounds::{
    agreement, correlation_from_distribution, satisfies_correlation_bounds, MAX_BOUNDS_N,
};
use crate::choice::{
    is_rational, menus_excluding_worst_pair, rational_choice_function, AlternativeSet,
    ChoiceFunction, Menu, Preference, PreferenceDistribution, RandomChoiceModel,
    StochasticChoiceFunction, MAX_CHOICE_FUNCTION_N,
};
use crate::error::{Error, Result};
use crate::lp;
use crate::rational::{int, ratio, Rational};

/// Every choice function that no preference rationalises.
pub fn irrational_choice_functions(alt: &AlternativeSet) -> Result<Vec<ChoiceFunction>> {
    Ok(alt
        .choice_functions()?
        .into_iter()
        .filter(|c| is_rational(alt, c).is_none())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrumVerdict {
    pub is_rum: bool,
    pub bounds_ok: bool,
    /// `is_rum && bounds_ok`.
    pub is_irum: bool,
    /// An all-irrational representation; only built for `n <= 4`.
    pub witness: Option<RandomChoiceModel>,
    pub violators: Vec<Preference>,
    pub note: Option<String>,
}

fn irum_verdict(rho: &StochasticChoiceFunction, build_witness: bool) -> Result<IrumVerdict> {
    let alt = rho.alternatives();
    let rum = is_rum(rho).is_rum;
    if alt.n() == 2 {
        return Ok(IrumVerdict {
            is_rum: rum,
            bounds_ok: false,
            is_irum: false,
            witness: None,
            violators: Vec::new(),
            note: Some("no irrational choice functions exist at n=2".into()),
        });
    }
    let report = satisfies_correlation_bounds(rho)?;
    let bounds_ok = report.is_satisfied();
    let is_irum = rum && bounds_ok;
    let mut verdict = IrumVerdict {
        is_rum: rum,
        bounds_ok,
        is_irum,
        witness: None,
        violators: report.violators,
        note: None,
    };
    if is_irum && build_witness {
        if alt.n() > MAX_CHOICE_FUNCTION_N {
            verdict.note = Some(format!(
                "witness unavailable: choice functions are enumerated only up to n={MAX_CHOICE_FUNCTION_N}"
            ));
        } else {
            verdict.witness = lp::find_representation(rho, &irrational_choice_functions(alt)?)?;
            if verdict.witness.is_none() {
                verdict.note = Some("no all-irrational representation found".into());
            }
        }
    }
    Ok(verdict)
}

/// Decides whether `rho` is an I-RUM and, for `n <= 4`, returns an
/// all-irrational representation.
pub fn is_irum(rho: &StochasticChoiceFunction) -> Result<IrumVerdict> {
    irum_verdict(rho, true)
}

/// [`is_irum`] without the witness LP.
pub fn irum_decision(rho: &StochasticChoiceFunction) -> Result<IrumVerdict> {
    irum_verdict(rho, false)
}

/// Uniform RCM on swap functions representing the dual RUM
/// `{p1: m1, p2: m2}`, which must meet the correlation bound at `p2` with
/// equality.
///
/// The swap functions follow `c_{p2}` except on one menu of disagreement
/// outside the worst pair of `p2`, where they follow `c_{p1}`. When the two
/// preferences also disagree on that worst pair, the first swap function
/// follows `c_{p1}` there too.
pub fn dual_irum_construction(
    alt: &AlternativeSet,
    p1: &Preference,
    p2: &Preference,
    m1: &Rational,
    m2: &Rational,
) -> Result<RandomChoiceModel> {
    if alt.n() < 3 {
        return Err(Error::TooFewAlternatives {
            operation: "dual_irum_construction",
            n: alt.n(),
            min: 3,
        });
    }
    if p1 == p2 {
        return Err(Error::Precondition("preferences must differ".into()));
    }
    if !(m1 + m2).is_one() {
        return Err(Error::Precondition(format!(
            "weights {m1} and {m2} do not sum to 1"
        )));
    }
    if !m1.is_positive() || m1 > m2 {
        return Err(Error::Precondition(format!(
            "need 0 < m1 <= m2, got m1 = {m1}, m2 = {m2}"
        )));
    }
    let k_menus = alt.k() as i64;
    let n21 = agreement(alt, p2, p1)? as i64;
    if m1 * int(n21) + m2 * int(k_menus - 1) != int(k_menus - 2) {
        return Err(Error::Precondition(format!(
            "correlation bound at {} is not met with equality",
            alt.preference_name(p2)
        )));
    }
    let k = k_menus - 2 - n21;
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let c1 = rational_choice_function(alt, p1);
    let c2 = rational_choice_function(alt, p2);
    let differing: Vec<Menu> = menus_excluding_worst_pair(alt, p2)?
        .into_iter()
        .filter(|&m| c1.choice(alt, m) != c2.choice(alt, m))
        .collect();
    assert_eq!(differing.len() as i64, k + 1);
    let worst = p2.worst_pair();
    let weight = ratio(1, k + 1);
    let support: Vec<(ChoiceFunction, Rational)> = differing
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let mut c = c2.with_choice(alt, m, c1.choice(alt, m));
            if i == 0 && c1.choice(alt, worst) != c2.choice(alt, worst) {
                c = c.with_choice(alt, worst, c1.choice(alt, worst));
            }
            assert!(
                is_rational(alt, &c).is_none(),
                "swap function must be irrational"
            );
            (c, weight.clone())
        })
        .collect();
    let mu = RandomChoiceModel::new(alt, support)?;
    let target = PreferenceDistribution::new(
        alt,
        vec![(p1.clone(), m1.clone()), (p2.clone(), m2.clone())],
    )?;
    assert_eq!(
        mu.aggregate(),
        target.aggregate(),
        "swap functions must reproduce the dual RUM"
    );
    Ok(mu)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualDecomposition {
    pub anchor: Preference,
    /// `(delta_i, mu_i)` with `mu_i` supported on the anchor and `P_i`.
    pub components: Vec<(Rational, PreferenceDistribution)>,
}

/// First preference where the correlation bound of `mu` holds with equality.
pub fn equality_anchor(mu: &PreferenceDistribution) -> Result<Option<Preference>> {
    for p in mu.alternatives().preferences() {
        if correlation_from_distribution(mu, &p)?.is_one() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Writes `mu`, which meets the correlation bound with equality at `anchor`,
/// as a mixture of dual RUMs that each meet the bound with equality there.
pub fn dual_decomposition(
    mu: &PreferenceDistribution,
    anchor: &Preference,
) -> Result<DualDecomposition> {
    let alt = mu.alternatives();
    let c_anchor = correlation_from_distribution(mu, anchor)?;
    if !c_anchor.is_one() {
        return Err(Error::Precondition(format!(
            "correlation bound at {} is {c_anchor}, not 1",
            alt.preference_name(anchor)
        )));
    }
    if alt.n() <= MAX_BOUNDS_N && !satisfies_correlation_bounds(&mu.aggregate())?.is_satisfied() {
        return Err(Error::Precondition(
            "correlation bounds are violated".into(),
        ));
    }
    let k_menus = alt.k() as i64;
    let mut others: Vec<&(Preference, Rational)> =
        mu.support().iter().filter(|(p, _)| p != anchor).collect();
    others.sort_by(|x, y| x.0.cmp(&y.0));
    let mut components = Vec::with_capacity(others.len());
    for (p, w) in others {
        let agree = agreement(alt, anchor, p)? as i64;
        if agree >= k_menus - 2 {
            return Err(Error::DegenerateComponent(format!(
                "n({}, {}) = {agree} leaves no room for a dual component",
                alt.preference_name(anchor),
                alt.preference_name(p)
            )));
        }
        let denom = k_menus - 1 - agree;
        let delta = w * int(denom);
        let component = PreferenceDistribution::new(
            alt,
            vec![
                (anchor.clone(), ratio(k_menus - 2 - agree, denom)),
                (p.clone(), ratio(1, denom)),
            ],
        )?;
        assert!(correlation_from_distribution(&component, anchor)?.is_one());
        components.push((delta, component));
    }
    let total = components
        .iter()
        .fold(Rational::zero(), |acc, (d, _)| acc + d);
    assert!(total.is_one(), "component weights must sum to 1");
    for p in alt.preferences() {
        let mass = components
            .iter()
            .fold(Rational::zero(), |acc, (d, c)| acc + d * c.mass(&p));
        assert_eq!(
            mass,
            mu.mass(&p),
            "components must reproduce the distribution"
        );
    }
    Ok(DualDecomposition {
        anchor: anchor.clone(),
        components,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PirumVerdict {
    pub is_rum: bool,
    pub condition3: bool,
    pub is_pirum: bool,
    /// `(B, A, a, b)`: `B` is the first menu with at least three members that
    /// gives positive probability to both `a` and `b`, `A` the first other
    /// menu doing the same.
    pub witness_menus: Option<(Menu, Menu, usize, usize)>,
}

fn both_positive(rho: &StochasticChoiceFunction, menu: Menu, a: usize, b: usize) -> bool {
    rho.prob_ref(a, menu).is_positive() && rho.prob_ref(b, menu).is_positive()
}

fn condition3_menus(rho: &StochasticChoiceFunction) -> Option<(Menu, Menu, usize, usize)> {
    let menus = rho.alternatives().menus();
    let mut bigs: Vec<Menu> = menus.iter().copied().filter(|m| m.len() >= 3).collect();
    bigs.extend(menus.iter().copied().filter(|m| m.len() < 3));
    for &big in &bigs {
        let members: Vec<usize> = big.members().collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if !both_positive(rho, big, a, b) {
                    continue;
                }
                let other = menus.iter().copied().find(|&m| {
                    m != big && m.contains(a) && m.contains(b) && both_positive(rho, m, a, b)
                });
                if let Some(other) = other {
                    return Some((big, other, a, b));
                }
            }
        }
    }
    None
}

pub fn is_pirum(rho: &StochasticChoiceFunction) -> PirumVerdict {
    let rum = is_rum(rho).is_rum;
    let witness_menus = condition3_menus(rho);
    PirumVerdict {
        is_rum: rum,
        condition3: witness_menus.is_some(),
        is_pirum: rum && witness_menus.is_some(),
        witness_menus,
    }
}

/// A representation of `rho` with exactly two irrational members, built from
/// the RUM distribution `mu`.
pub fn pirum_representation(
    rho: &StochasticChoiceFunction,
    mu: &PreferenceDistribution,
) -> Result<RandomChoiceModel> {
    let alt = rho.alternatives();
    if mu.alternatives() != alt {
        return Err(Error::AlternativeSetMismatch);
    }
    if mu.aggregate() != *rho {
        return Err(Error::Precondition(
            "distribution does not represent the data".into(),
        ));
    }
    let found = alt
        .menus()
        .iter()
        .filter(|m| m.len() >= 3)
        .find_map(|&big| {
            let members: Vec<usize> = big.members().collect();
            members.iter().enumerate().find_map(|(i, &a)| {
                members[i + 1..]
                    .iter()
                    .find(|&&b| both_positive(rho, big, a, b))
                    .map(|&b| (big, a, b))
            })
        });
    let Some((big, a, b)) = found else {
        return Err(Error::Precondition(
            "no menu gives positive probability to two alternatives chosen elsewhere".into(),
        ));
    };
    let mut sorted: Vec<&(Preference, Rational)> = mu.support().iter().collect();
    sorted.sort_by(|x, y| x.0.cmp(&y.0));
    let pick = |x: usize| {
        sorted
            .iter()
            .find(|(p, _)| p.best_in(big) == x)
            .map(|(p, w)| (p.clone(), w.clone()))
            .expect("positive probability implies a supporting preference")
    };
    let (mut p1, mut w1) = pick(a);
    let (mut p2, mut w2) = pick(b);
    if w1 > w2 {
        std::mem::swap(&mut p1, &mut p2);
        std::mem::swap(&mut w1, &mut w2);
    }
    let c1 = rational_choice_function(alt, &p1);
    let c2 = rational_choice_function(alt, &p2);
    let swapped1 = c1.with_choice(alt, big, c2.choice(alt, big));
    let swapped2 = c2.with_choice(alt, big, c1.choice(alt, big));
    let mut weights = vec![
        (swapped1.clone(), w1.clone()),
        (swapped2.clone(), w1.clone()),
    ];
    weights.push((c2, &w2 - &w1));
    for (p, w) in mu.support() {
        if *p != p1 && *p != p2 {
            weights.push((rational_choice_function(alt, p), w.clone()));
        }
    }
    let out = RandomChoiceModel::from_weights(alt, weights)?;
    assert!(is_rational(alt, &swapped1).is_none() && is_rational(alt, &swapped2).is_none());
    assert_eq!(
        &out.aggregate(),
        rho,
        "representation must reproduce the data"
    );
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrumDualSplit {
    /// Mass of the irrational pool.
    pub irrational_weight: Rational,
    /// Normalised all-irrational RCM; `None` when the weight is zero.
    pub irrational_pool: Option<RandomChoiceModel>,
    /// Normalised RUM on at most two preferences.
    pub residual_dual: PreferenceDistribution,
}

impl IrumDualSplit {
    /// `w * pool + (1 - w) * residual`.
    pub fn recombine(&self) -> StochasticChoiceFunction {
        let residual = self.residual_dual.aggregate();
        match &self.irrational_pool {
            Some(pool) => pool
                .aggregate()
                .mix(&self.irrational_weight, &residual)
                .expect("weight lies in [0, 1]"),
            None => residual,
        }
    }
}

/// Splits a RUM into an I-RUM pool and a dual RUM by repeatedly pairing the
/// lightest preference with the heaviest one whose ranking above the worst
/// two differs, and swapping their choices on one three-element menu.
pub fn rum_decompose_irum_dual(mu: &PreferenceDistribution) -> Result<IrumDualSplit> {
    let alt = mu.alternatives();
    if alt.n() < 3 || mu.support().len() <= 2 {
        return Ok(IrumDualSplit {
            irrational_weight: Rational::zero(),
            irrational_pool: None,
            residual_dual: mu.clone(),
        });
    }
    let triples: Vec<Menu> = alt
        .menus()
        .iter()
        .copied()
        .filter(|m| m.len() == 3)
        .collect();
    let mut residual: Vec<(Preference, Rational)> = mu.support().to_vec();
    residual.sort_by(|x, y| x.0.cmp(&y.0));
    let mut pool: Vec<(ChoiceFunction, Rational)> = Vec::new();
    while residual.len() > 2 {
        // Sorted by preference, so the first extremum is the smallest one.
        let light =
            residual.iter().enumerate().fold(
                0,
                |best, (i, (_, w))| if *w < residual[best].1 { i } else { best },
            );
        let p11 = residual[light].0.clone();
        let heavy = residual
            .iter()
            .enumerate()
            .filter(|(_, (p, _))| !p.same_upper_ranking(&p11))
            .fold(None::<usize>, |best, (i, (_, w))| match best {
                Some(b) if residual[b].1 >= *w => Some(b),
                _ => Some(i),
            })
            .expect("support larger than two spans at least two classes");
        let p22 = residual[heavy].0.clone();
        let triple = *triples
            .iter()
            .find(|&&t| p11.best_in(t) != p22.best_in(t))
            .expect("rankings differ above the worst two");
        let mass = residual[light].1.clone();
        let c11 = rational_choice_function(alt, &p11).with_choice(alt, triple, p22.best_in(triple));
        let c22 = rational_choice_function(alt, &p22).with_choice(alt, triple, p11.best_in(triple));
        pool.push((c11, mass.clone()));
        pool.push((c22, mass.clone()));
        residual[heavy].1 -= &mass;
        residual.remove(light);
        residual.retain(|(_, w)| !w.is_zero());
    }
    let w = pool.iter().fold(Rational::zero(), |acc, (_, m)| acc + m);
    let rest = Rational::one() - &w;
    let pool = RandomChoiceModel::from_weights(alt, pool.into_iter().map(|(c, m)| (c, m / &w)))?;
    let residual_dual = PreferenceDistribution::new(
        alt,
        residual.into_iter().map(|(p, m)| (p, m / &rest)).collect(),
    )?;
    let split = IrumDualSplit {
        irrational_weight: w,
        irrational_pool: Some(pool),
        residual_dual,
    };
    assert_eq!(
        split.recombine(),
        mu.aggregate(),
        "split must reproduce the input"
    );
    let pool = split.irrational_pool.as_ref().expect("pool is present");
    assert!(pool.is_all_irrational());
    if alt.n() <= MAX_BOUNDS_N {
        let pooled = pool.aggregate();
        assert!(is_rum(&pooled).is_rum);
        assert!(satisfies_correlation_bounds(&pooled)?.is_satisfied());
    }
    Ok(split)
}

fn require_three(operation: &'static str, alt: &AlternativeSet) -> Result<()> {
    if alt.n() < 3 {
        return Err(Error::TooFewAlternatives {
            operation,
            n: alt.n(),
            min: 3,
        });
    }
    Ok(())
}

/// `true` when every preference has mass at most 1/4, which suffices for an
/// I-RUM.
pub fn sufficient_quarter(mu: &PreferenceDistribution) -> Result<bool> {
    require_three("sufficient_quarter", mu.alternatives())?;
    let quarter = ratio(1, 4);
    Ok(mu.support().iter().all(|(_, w)| *w <= quarter))
}

/// A preference with mass above `(K - 2) / (K - 1)`, which rules out an
/// I-RUM.
pub fn necessary_mass_cap(mu: &PreferenceDistribution) -> Result<Option<Preference>> {
    let alt = mu.alternatives();
    require_three("necessary_mass_cap", alt)?;
    let k = alt.k() as i64;
    let cap = ratio(k - 2, k - 1);
    let mut sorted: Vec<&(Preference, Rational)> = mu.support().iter().collect();
    sorted.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(sorted
        .into_iter()
        .find(|(_, w)| *w > cap)
        .map(|(p, _)| p.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csf() -> AlternativeSet {
        AlternativeSet::new(["c", "s", "f"]).unwrap()
    }

    fn dist(alt: &AlternativeSet, parts: &[(&str, Rational)]) -> PreferenceDistribution {
        PreferenceDistribution::new(
            alt,
            parts
                .iter()
                .map(|(p, w)| (alt.parse_preference(p).unwrap(), w.clone()))
                .collect(),
        )
        .unwrap()
    }

    fn cf(alt: &AlternativeSet, table: &[(&str, &str)]) -> ChoiceFunction {
        let pairs: Vec<_> = table
            .iter()
            .map(|(m, a)| (alt.parse_menu(m).unwrap(), alt.index_of(a).unwrap()))
            .collect();
        ChoiceFunction::from_pairs(alt, &pairs).unwrap()
    }

    fn c1(alt: &AlternativeSet) -> ChoiceFunction {
        cf(alt, &[("csf", "s"), ("cs", "c"), ("cf", "c"), ("sf", "s")])
    }

    fn c2(alt: &AlternativeSet) -> ChoiceFunction {
        cf(alt, &[("csf", "c"), ("cs", "s"), ("cf", "c"), ("sf", "s")])
    }

    #[test]
    fn csf_dual_verdict() {
        let alt = csf();
        let rho = dist(&alt, &[("c>s>f", ratio(1, 2)), ("s>c>f", ratio(1, 2))]).aggregate();
        let v = is_irum(&rho).unwrap();
        assert!(v.is_rum && v.bounds_ok && v.is_irum);
        let w = v.witness.unwrap();
        assert!(w.is_all_irrational());
        assert_eq!(w.aggregate(), rho);

        let rho = dist(
            &alt,
            &[("c>s>f", ratio(51, 100)), ("s>c>f", ratio(49, 100))],
        )
        .aggregate();
        let v = is_irum(&rho).unwrap();
        assert!(v.is_rum && !v.is_irum);
        assert!(v.violators.contains(&alt.parse_preference("c>s>f").unwrap()));
        assert!(v.witness.is_none());
    }

    #[test]
    fn dual_interval() {
        let alt = csf();
        for (m1, expected) in [
            (ratio(1, 4), false),
            (ratio(1, 3), true),
            (ratio(1, 2), true),
            (ratio(2, 3), true),
            (ratio(3, 4), false),
        ] {
            let m3 = Rational::one() - &m1;
            let rho = dist(&alt, &[("c>s>f", m1), ("f>s>c", m3)]).aggregate();
            assert_eq!(irum_decision(&rho).unwrap().is_irum, expected);
        }
    }

    #[test]
    fn two_alternatives() {
        let alt = AlternativeSet::with_size(2).unwrap();
        let v = is_irum(&StochasticChoiceFunction::uniform(&alt)).unwrap();
        assert!(v.is_rum && !v.is_irum);
        assert!(v.note.unwrap().contains("n=2"));
    }

    #[test]
    fn dual_construction_csf_dual() {
        let alt = csf();
        let p1 = alt.parse_preference("c>s>f").unwrap();
        let p2 = alt.parse_preference("s>c>f").unwrap();
        let mu = dual_irum_construction(&alt, &p1, &p2, &ratio(1, 2), &ratio(1, 2)).unwrap();
        assert_eq!(mu.support().len(), 2);
        assert_eq!(mu.weight_of(&c1(&alt)), ratio(1, 2));
        assert_eq!(mu.weight_of(&c2(&alt)), ratio(1, 2));
        assert!(dual_irum_construction(&alt, &p1, &p2, &ratio(51, 100), &ratio(49, 100)).is_err());
    }

    #[test]
    fn dual_construction_disjoint_pair() {
        let alt = csf();
        let p1 = alt.parse_preference("c>s>f").unwrap();
        let p3 = alt.parse_preference("f>s>c").unwrap();
        let mu = dual_irum_construction(&alt, &p1, &p3, &ratio(1, 3), &ratio(2, 3)).unwrap();
        assert_eq!(mu.support().len(), 3);
        assert!(mu.support().iter().all(|(_, w)| *w == ratio(1, 3)));
        assert!(mu.is_all_irrational());
        assert!(dual_irum_construction(&alt, &p1, &p3, &ratio(1, 2), &ratio(1, 2)).is_err());
    }

    #[test]
    fn dual_decomposition_cases() {
        let alt = csf();
        let mu = dist(&alt, &[("c>s>f", ratio(1, 2)), ("s>c>f", ratio(1, 2))]);
        let p1 = alt.parse_preference("c>s>f").unwrap();
        let d = dual_decomposition(&mu, &p1).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].0, int(1));
        assert_eq!(d.components[0].1, mu);

        let uniform = PreferenceDistribution::uniform(&alt);
        assert_eq!(equality_anchor(&uniform).unwrap(), None);
        assert!(dual_decomposition(&uniform, &p1).is_err());

        // The worst-two swap of the anchor agrees with it on every counted menu.
        let mu = dist(
            &alt,
            &[
                ("c>s>f", ratio(1, 3)),
                ("c>f>s", ratio(1, 3)),
                ("f>s>c", ratio(1, 3)),
            ],
        );
        assert!(correlation_from_distribution(&mu, &p1).unwrap().is_one());
        assert!(matches!(
            dual_decomposition(&mu, &p1),
            Err(Error::DegenerateComponent(_))
        ));
        let mu = dist(&alt, &[("c>s>f", ratio(1, 2)), ("c>f>s", ratio(1, 2))]);
        assert!(matches!(
            dual_decomposition(&mu, &p1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pirum_cases() {
        let alt = csf();
        let mu = dist(&alt, &[("c>s>f", ratio(1, 2)), ("s>c>f", ratio(1, 2))]);
        let rho = mu.aggregate();
        let v = is_pirum(&rho);
        assert!(v.is_pirum);
        let menu = |s| alt.parse_menu(s).unwrap();
        let idx = |s| alt.index_of(s).unwrap();
        assert_eq!(
            v.witness_menus,
            Some((menu("csf"), menu("cs"), idx("c"), idx("s")))
        );
        let rep = pirum_representation(&rho, &mu).unwrap();
        assert_eq!(rep.support().len(), 2);
        assert_eq!(rep.weight_of(&c1(&alt)), ratio(1, 2));
        assert_eq!(rep.weight_of(&c2(&alt)), ratio(1, 2));

        let mu = dist(
            &alt,
            &[("c>s>f", ratio(51, 100)), ("s>c>f", ratio(49, 100))],
        );
        let rep = pirum_representation(&mu.aggregate(), &mu).unwrap();
        let p1 = rational_choice_function(&alt, &alt.parse_preference("c>s>f").unwrap());
        assert_eq!(rep.weight_of(&p1), ratio(2, 100));
        assert_eq!(rep.irrational_members().count(), 2);
        assert!(rep.irrational_members().all(|(_, w)| *w == ratio(49, 100)));

        let degenerate = PreferenceDistribution::degenerate(&alt, alt.preferences()[2].clone());
        assert!(!is_pirum(&degenerate.aggregate()).condition3);
        assert!(pirum_representation(&degenerate.aggregate(), &degenerate).is_err());
        assert!(is_pirum(&StochasticChoiceFunction::uniform(&alt)).is_pirum);
    }

    #[test]
    fn split_cases() {
        let alt = csf();
        let mu = dist(&alt, &[("c>s>f", ratio(1, 2)), ("s>c>f", ratio(1, 2))]);
        let split = rum_decompose_irum_dual(&mu).unwrap();
        assert!(split.irrational_weight.is_zero());
        assert_eq!(split.residual_dual, mu);

        let uniform = PreferenceDistribution::uniform(&alt);
        let split = rum_decompose_irum_dual(&uniform).unwrap();
        assert!(split.irrational_weight.is_positive());
        assert!(split.residual_dual.support().len() <= 2);
        assert_eq!(split.recombine(), uniform.aggregate());

        let mu = dist(
            &alt,
            &[
                ("c>s>f", ratio(1, 2)),
                ("s>c>f", ratio(1, 4)),
                ("f>s>c", ratio(1, 4)),
            ],
        );
        assert_eq!(
            rum_decompose_irum_dual(&mu).unwrap().recombine(),
            mu.aggregate()
        );
    }

    #[test]
    fn screens() {
        let alt = csf();
        let uniform = PreferenceDistribution::uniform(&alt);
        assert!(sufficient_quarter(&uniform).unwrap());
        assert!(irum_decision(&uniform.aggregate()).unwrap().is_irum);
        let mu = dist(&alt, &[("c>s>f", ratio(7, 10)), ("f>s>c", ratio(3, 10))]);
        assert_eq!(
            necessary_mass_cap(&mu).unwrap(),
            Some(alt.parse_preference("c>s>f").unwrap())
        );
        assert!(!irum_decision(&mu.aggregate()).unwrap().is_irum);
        let mu = dist(&alt, &[("c>s>f", ratio(2, 3)), ("f>s>c", ratio(1, 3))]);
        assert_eq!(necessary_mass_cap(&mu).unwrap(), None);
    }
}
