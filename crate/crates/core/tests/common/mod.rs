#![allow(dead_code)]

use std::collections::BTreeSet;

use irum_core::choice::{AlternativeSet, Preference, PreferenceDistribution, StochasticChoiceFunction};
use irum_core::rational::{ratio, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Every distribution over the 6 preferences on three alternatives whose
/// weights share a denominator of at most `max_den`, without repeats.
pub fn grid3(max_den: usize) -> Vec<PreferenceDistribution> {
    let alt = AlternativeSet::with_size(3).unwrap();
    let prefs = alt.preferences();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for d in 1..=max_den {
        let mut comps = Vec::new();
        compositions(d, prefs.len(), &mut Vec::new(), &mut comps);
        for c in comps {
            let weights: Vec<Rational> = c.iter().map(|&k| ratio(k as i64, d as i64)).collect();
            if seen.insert(weights.clone()) {
                let support = prefs.iter().cloned().zip(weights).collect();
                out.push(PreferenceDistribution::new(&alt, support).unwrap());
            }
        }
    }
    out
}

/// A random distribution over `support_size` distinct preferences with
/// integer weights in `1..=max_weight`.
pub fn random_distribution(
    alt: &AlternativeSet,
    support_size: usize,
    max_weight: i64,
    rng: &mut impl Rng,
) -> PreferenceDistribution {
    let mut prefs: Vec<Preference> = alt.preferences();
    prefs.shuffle(rng);
    prefs.truncate(support_size);
    let raw: Vec<i64> = prefs.iter().map(|_| rng.random_range(1..=max_weight)).collect();
    let total: i64 = raw.iter().sum();
    let support = prefs
        .into_iter()
        .zip(raw)
        .map(|(p, w)| (p, ratio(w, total)))
        .collect();
    PreferenceDistribution::new(alt, support).unwrap()
}

/// Random distributions whose support sizes cycle through `1..=n!`.
pub fn random_distributions(n: usize, count: usize, seed: u64) -> Vec<PreferenceDistribution> {
    let alt = AlternativeSet::with_size(n).unwrap();
    let total = alt.preferences().len();
    let mut rng = rng(seed);
    (0..count)
        .map(|i| random_distribution(&alt, 1 + i % total, 10, &mut rng))
        .collect()
}

/// A random stochastic choice function with small integer weights per menu;
/// usually not a RUM.
pub fn random_scf(alt: &AlternativeSet, rng: &mut impl Rng) -> StochasticChoiceFunction {
    let rows = alt
        .menus()
        .iter()
        .map(|m| {
            let raw: Vec<i64> = m.members().map(|_| rng.random_range(0..=4)).collect();
            let total: i64 = raw.iter().sum();
            if total == 0 {
                let mut row = vec![ratio(0, 1); m.len()];
                row[0] = ratio(1, 1);
                row
            } else {
                raw.into_iter().map(|w| ratio(w, total)).collect()
            }
        })
        .collect();
    StochasticChoiceFunction::new(alt, rows).unwrap()
}
