//! Block-Marschak polynomials and the tests built on them.

use num_traits::{Signed, Zero};

use crate::choice::{
    rational_choice_function, AlternativeSet, Menu, RandomChoiceModel, StochasticChoiceFunction,
};
use crate::error::{Error, Result};
use crate::lp;
use crate::rational::Rational;

/// Largest alternative set for [`rum_representation`] (one LP column per
/// preference).
pub const MAX_RUM_REPRESENTATION_N: usize = 6;

/// `BM(a, A)` for every nonempty `A` and every `a` in `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BMTable {
    alt: AlternativeSet,
    /// Indexed by `a * 2^n + bits(A)`; entries with `a` outside `A` are zero.
    values: Vec<Rational>,
}

impl BMTable {
    /// Computes the whole table by a superset Moebius transform, one
    /// alternative at a time.
    pub fn new(rho: &StochasticChoiceFunction) -> Self {
        let alt = rho.alternatives().clone();
        let n = alt.n();
        let size = 1usize << n;
        let mut values = Vec::with_capacity(n * size);
        for a in 0..n {
            let mut f: Vec<Rational> = (0..size)
                .map(|bits| {
                    let menu = Menu::from_bits(bits as u32);
                    if menu.contains(a) {
                        rho.prob_extended(a, menu)
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            for i in (0..n).filter(|&i| i != a) {
                let bit = 1usize << i;
                for bits in 0..size {
                    if bits & bit == 0 {
                        let upper = f[bits | bit].clone();
                        f[bits] -= upper;
                    }
                }
            }
            values.extend(f);
        }
        BMTable { alt, values }
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alt
    }

    pub fn get(&self, a: usize, menu: Menu) -> Option<&Rational> {
        if a >= self.alt.n() || !menu.contains(a) || menu.bits() >> self.alt.n() != 0 {
            return None;
        }
        Some(&self.values[(a << self.alt.n()) + menu.bits() as usize])
    }

    /// `(a, A, BM(a, A))` over nonempty `A` in ascending bitset order, members
    /// ascending within each set.
    pub fn entries(&self) -> impl Iterator<Item = (usize, Menu, &Rational)> {
        let n = self.alt.n();
        (1u32..1 << n).flat_map(move |bits| {
            let menu = Menu::from_bits(bits);
            menu.members()
                .map(move |a| (a, menu, &self.values[(a << n) + bits as usize]))
        })
    }

    pub fn min(&self) -> (usize, Menu, &Rational) {
        self.entries()
            .min_by(|x, y| x.2.cmp(y.2))
            .expect("table is nonempty")
    }
}

/// `BM(a, A)` by the alternating superset sum. `A` may be a singleton.
pub fn bm_polynomial(rho: &StochasticChoiceFunction, a: usize, menu: Menu) -> Result<Rational> {
    let alt = rho.alternatives();
    if a >= alt.n() || !menu.contains(a) || !menu.is_subset_of(alt.grand_menu()) {
        return Err(Error::NotAMember {
            alternative: if a < alt.n() {
                alt.label(a).to_string()
            } else {
                a.to_string()
            },
            menu: alt.menu_key(Menu::from_bits(menu.bits() & alt.grand_menu().bits())),
        });
    }
    let outside = alt.grand_menu().bits() & !menu.bits();
    let mut total = Rational::zero();
    // Walk every subset of the complement.
    let mut extra = outside;
    loop {
        let term = rho.prob_extended(a, Menu::from_bits(menu.bits() | extra));
        if extra.count_ones().is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
        if extra == 0 {
            break;
        }
        extra = (extra - 1) & outside;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RumVerdict {
    pub is_rum: bool,
    /// Every `(a, A, BM(a, A))` with a negative value.
    pub violations: Vec<(usize, Menu, Rational)>,
}

pub fn is_rum(rho: &StochasticChoiceFunction) -> RumVerdict {
    let table = BMTable::new(rho);
    let violations: Vec<_> = table
        .entries()
        .filter(|(_, _, v)| v.is_negative())
        .map(|(a, m, v)| (a, m, v.clone()))
        .collect();
    RumVerdict {
        is_rum: violations.is_empty(),
        violations,
    }
}

pub fn is_full_support_rum(rho: &StochasticChoiceFunction) -> bool {
    BMTable::new(rho).entries().all(|(_, _, v)| v.is_positive())
}

/// A distribution over rational choice functions reproducing `rho`, found
/// by LP over all `n!` preferences.
pub fn rum_representation(rho: &StochasticChoiceFunction) -> Result<Option<RandomChoiceModel>> {
    let alt = rho.alternatives();
    if alt.n() > MAX_RUM_REPRESENTATION_N {
        return Err(Error::TooManyAlternatives {
            operation: "rum_representation",
            n: alt.n(),
            max: MAX_RUM_REPRESENTATION_N,
        });
    }
    let candidates: Vec<_> = alt
        .preferences()
        .iter()
        .map(|p| rational_choice_function(alt, p))
        .collect();
    lp::find_representation(rho, &candidates)
}

/// Triples `(a, A, B)` with `a` in `A`, `A` a proper subset of `B` and
/// `rho(a, B) > rho(a, A)`.
pub fn check_regularity(rho: &StochasticChoiceFunction) -> Vec<(usize, Menu, Menu)> {
    let menus = rho.alternatives().menus();
    let mut out = Vec::new();
    for &small in menus {
        for &big in menus {
            if small == big || !small.is_subset_of(big) {
                continue;
            }
            for a in small.members() {
                if rho.prob_ref(a, big) > rho.prob_ref(a, small) {
                    out.push((a, small, big));
                }
            }
        }
    }
    out
}
