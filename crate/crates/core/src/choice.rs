//! Alternatives, menus, preferences, choice functions and their random
//! mixtures.
//!
//! The analysis domain is the collection of all menus with at least two
//! members, enumerated in ascending bitset order. A menu's *position* is its
//! index in that enumeration; a *slot* is a (menu, member) pair, numbered
//! menu by menu with members in ascending index order. Dense vectors over
//! slots back every stochastic choice function.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest alternative set accepted anywhere in the crate.
pub const MAX_ALTERNATIVES: usize = 12;

/// Largest alternative set for which all choice functions are enumerated.
pub const MAX_CHOICE_FUNCTION_N: usize = 4;

const NOT_A_MENU: u32 = u32::MAX;

/// A subset of alternatives encoded as a bitset (bit `i` = alternative `i`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Menu(u32);

impl Menu {
    pub fn from_bits(bits: u32) -> Self {
        Menu(bits)
    }

    pub fn from_members(members: impl IntoIterator<Item = usize>) -> Self {
        Menu(members.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn singleton(a: usize) -> Self {
        Menu(1 << a)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, a: usize) -> bool {
        a < 32 && self.0 & (1 << a) != 0
    }

    pub fn is_subset_of(self, other: Menu) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, a: usize) -> Menu {
        Menu(self.0 | (1 << a))
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// Index of `a` among the members of this menu, in ascending order.
    pub fn rank_of(self, a: usize) -> usize {
        (self.0 & ((1u32 << a) - 1)).count_ones() as usize
    }
}

struct AltInner {
    labels: Vec<String>,
    menus: Vec<Menu>,
    positions: Vec<u32>,
    offsets: Vec<usize>,
    slots: usize,
}

/// A finite set of labelled alternatives together with its menu domain.
///
/// Cheap to clone; the menu tables are shared.
#[derive(Clone)]
pub struct AlternativeSet(Arc<AltInner>);

impl PartialEq for AlternativeSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl Eq for AlternativeSet {}

impl fmt::Debug for AlternativeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("AlternativeSet")
            .field(&self.0.labels)
            .finish()
    }
}

impl AlternativeSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if n < 2 {
            return Err(Error::InvalidAlternatives(format!(
                "need at least 2 alternatives, got {n}"
            )));
        }
        if n > MAX_ALTERNATIVES {
            return Err(Error::InvalidAlternatives(format!(
                "at most {MAX_ALTERNATIVES} alternatives are supported, got {n}"
            )));
        }
        if let Some(bad) = labels.iter().find(|l| l.is_empty() || l.contains('|')) {
            return Err(Error::InvalidAlternatives(format!(
                "label {bad:?} must be nonempty and must not contain '|'"
            )));
        }
        if labels.iter().collect::<HashSet<_>>().len() != n {
            return Err(Error::InvalidAlternatives("labels must be distinct".into()));
        }

        let menus: Vec<Menu> = (0u32..1 << n)
            .filter(|bits| bits.count_ones() >= 2)
            .map(Menu)
            .collect();
        let mut positions = vec![NOT_A_MENU; 1 << n];
        let mut offsets = Vec::with_capacity(menus.len());
        let mut slots = 0;
        for (pos, menu) in menus.iter().enumerate() {
            positions[menu.bits() as usize] = pos as u32;
            offsets.push(slots);
            slots += menu.len();
        }
        Ok(AlternativeSet(Arc::new(AltInner {
            labels,
            menus,
            positions,
            offsets,
            slots,
        })))
    }

    /// Alternatives labelled `a`, `b`, `c`, ...
    pub fn with_size(n: usize) -> Result<Self> {
        if n > 26 {
            return Err(Error::InvalidAlternatives(format!(
                "too many alternatives: {n}"
            )));
        }
        Self::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn n(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.0.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    /// All menus with at least two members, ascending by bitset.
    pub fn menus(&self) -> &[Menu] {
        &self.0.menus
    }

    /// Number of menus in the domain, `2^n - n - 1`.
    pub fn k(&self) -> usize {
        self.0.menus.len()
    }

    pub fn grand_menu(&self) -> Menu {
        Menu((1 << self.n()) - 1)
    }

    pub fn menu_position(&self, menu: Menu) -> Option<usize> {
        match self.0.positions.get(menu.bits() as usize) {
            Some(&pos) if pos != NOT_A_MENU => Some(pos as usize),
            _ => None,
        }
    }

    fn position_unchecked(&self, menu: Menu) -> usize {
        self.menu_position(menu)
            .unwrap_or_else(|| panic!("{menu:?} is not in the menu domain"))
    }

    /// Total number of (menu, member) slots.
    pub fn slot_count(&self) -> usize {
        self.0.slots
    }

    pub fn menu_offset(&self, pos: usize) -> usize {
        self.0.offsets[pos]
    }

    /// Slot index of `a` in the menu at position `pos`.
    pub fn slot(&self, a: usize, pos: usize) -> usize {
        self.0.offsets[pos] + self.0.menus[pos].rank_of(a)
    }

    pub fn menu_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Menu> {
        let mut menu = Menu(0);
        for l in labels {
            let l = l.as_ref();
            let a = self
                .index_of(l)
                .ok_or_else(|| Error::InvalidMenu(format!("unknown label {l:?}")))?;
            if menu.contains(a) {
                return Err(Error::InvalidMenu(format!("label {l:?} listed twice")));
            }
            menu = menu.with(a);
        }
        Ok(menu)
    }

    /// Parses a menu written as a key (`c|f|s`) or, with single-character
    /// labels, as a bare concatenation (`csf`).
    pub fn parse_menu(&self, text: &str) -> Result<Menu> {
        if text.contains('|') {
            let parts: Vec<&str> = text.split('|').collect();
            return self.menu_from_labels(&parts);
        }
        if self.index_of(text).is_some() {
            return self.menu_from_labels(&[text]);
        }
        let parts: Vec<String> = text.chars().map(String::from).collect();
        self.menu_from_labels(&parts)
    }

    /// Sorted member labels joined by `|`.
    pub fn menu_key(&self, menu: Menu) -> String {
        menu.members().map(|a| self.label(a)).sorted().join("|")
    }

    /// Compact name: labels in index order, concatenated when every label is
    /// a single character.
    pub fn menu_name(&self, menu: Menu) -> String {
        let single = self.0.labels.iter().all(|l| l.chars().count() == 1);
        let sep = if single { "" } else { "," };
        menu.members().map(|a| self.label(a)).join(sep)
    }

    /// Parses `c>s>f` (or `c,s,f`) into a preference, best first.
    pub fn parse_preference(&self, text: &str) -> Result<Preference> {
        let sep = if text.contains('>') { '>' } else { ',' };
        let ranking = text
            .split(sep)
            .map(|part| {
                let part = part.trim();
                self.index_of(part).ok_or_else(|| {
                    Error::InvalidPreference(format!("unknown label {part:?} in {text:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Preference::new(self.n(), ranking)
    }

    pub fn preference_name(&self, p: &Preference) -> String {
        p.ranking().iter().map(|&a| self.label(a)).join(">")
    }

    /// All `n!` preferences in lexicographic order of their rankings.
    pub fn preferences(&self) -> Vec<Preference> {
        (0..self.n())
            .permutations(self.n())
            .map(|ranking| Preference { ranking })
            .collect()
    }

    /// Number of choice functions on the menu domain.
    pub fn choice_function_count(&self) -> u128 {
        self.menus()
            .iter()
            .fold(1u128, |acc, m| acc.saturating_mul(m.len() as u128))
    }

    /// Every choice function, in lexicographic order of the per-menu choice
    /// vectors. Refuses alternative sets larger than
    /// [`MAX_CHOICE_FUNCTION_N`].
    pub fn choice_functions(&self) -> Result<Vec<ChoiceFunction>> {
        if self.n() > MAX_CHOICE_FUNCTION_N {
            return Err(Error::TooManyAlternatives {
                operation: "choice function enumeration",
                n: self.n(),
                max: MAX_CHOICE_FUNCTION_N,
            });
        }
        let options: Vec<Vec<u8>> = self
            .menus()
            .iter()
            .map(|m| m.members().map(|a| a as u8).collect())
            .collect();
        Ok(options
            .iter()
            .map(|o| o.iter().copied())
            .multi_cartesian_product()
            .map(|choices| ChoiceFunction { choices })
            .collect())
    }
}

/// Menus of the domain and their count `K`.
pub fn enumerate_menus(alt: &AlternativeSet) -> (Vec<Menu>, usize) {
    (alt.menus().to_vec(), alt.k())
}

/// A strict linear order, best alternative first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Preference {
    ranking: Vec<usize>,
}

impl Preference {
    pub fn new(n: usize, ranking: Vec<usize>) -> Result<Self> {
        if ranking.len() != n {
            return Err(Error::InvalidPreference(format!(
                "ranking has {} entries, expected {n}",
                ranking.len()
            )));
        }
        let mut seen = vec![false; n];
        for &a in &ranking {
            if a >= n || std::mem::replace(&mut seen[a], true) {
                return Err(Error::InvalidPreference(format!(
                    "{ranking:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(Preference { ranking })
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn n(&self) -> usize {
        self.ranking.len()
    }

    /// The maximal member of `menu`.
    pub fn best_in(&self, menu: Menu) -> usize {
        *self
            .ranking
            .iter()
            .find(|&&a| menu.contains(a))
            .expect("menu must be nonempty")
    }

    pub fn position_of(&self, a: usize) -> usize {
        self.ranking
            .iter()
            .position(|&x| x == a)
            .expect("alternative out of range")
    }

    /// The menu of the two worst-ranked alternatives.
    pub fn worst_pair(&self) -> Menu {
        let n = self.n();
        Menu::from_members([self.ranking[n - 2], self.ranking[n - 1]])
    }

    /// The preference that ranks the worst two alternatives the other way.
    pub fn swap_worst_two(&self) -> Preference {
        let mut ranking = self.ranking.clone();
        let n = ranking.len();
        ranking.swap(n - 2, n - 1);
        Preference { ranking }
    }

    /// `true` when both preferences rank everything but their worst two
    /// alternatives identically.
    pub fn same_upper_ranking(&self, other: &Preference) -> bool {
        let n = self.n();
        self.ranking[..n - 2] == other.ranking[..n - 2]
    }
}

/// The worst two alternatives of `p`.
pub fn worst_two(p: &Preference) -> Menu {
    p.worst_pair()
}

/// The domain minus the worst pair of `p` (`K - 1` menus).
pub fn menus_excluding_worst_pair(alt: &AlternativeSet, p: &Preference) -> Result<Vec<Menu>> {
    if alt.n() < 3 {
        return Err(Error::TooFewAlternatives {
            operation: "menus_excluding_worst_pair",
            n: alt.n(),
            min: 3,
        });
    }
    let worst = p.worst_pair();
    Ok(alt
        .menus()
        .iter()
        .copied()
        .filter(|&m| m != worst)
        .collect())
}

/// A deterministic choice from every menu of the domain.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ChoiceFunction {
    choices: Vec<u8>,
}

impl ChoiceFunction {
    /// Builds a choice function from one chosen alternative per menu, in menu
    /// position order.
    pub fn new(alt: &AlternativeSet, choices: Vec<usize>) -> Result<Self> {
        if choices.len() != alt.k() {
            return Err(Error::DimensionMismatch(format!(
                "{} choices for {} menus",
                choices.len(),
                alt.k()
            )));
        }
        for (menu, &a) in alt.menus().iter().zip(&choices) {
            if !menu.contains(a) {
                return Err(Error::NotAMember {
                    alternative: a.to_string(),
                    menu: alt.menu_key(*menu),
                });
            }
        }
        Ok(ChoiceFunction {
            choices: choices.into_iter().map(|a| a as u8).collect(),
        })
    }

    /// Builds a choice function from `(menu, chosen)` pairs covering every
    /// menu exactly once.
    pub fn from_pairs(alt: &AlternativeSet, pairs: &[(Menu, usize)]) -> Result<Self> {
        let mut choices = vec![None; alt.k()];
        for &(menu, a) in pairs {
            let pos = alt
                .menu_position(menu)
                .ok_or_else(|| Error::InvalidMenu(alt.menu_key(menu)))?;
            if choices[pos].replace(a).is_some() {
                return Err(Error::InvalidMenu(format!(
                    "menu {} assigned twice",
                    alt.menu_key(menu)
                )));
            }
        }
        let choices = choices
            .into_iter()
            .enumerate()
            .map(|(pos, c)| {
                c.ok_or_else(|| {
                    Error::InvalidMenu(format!(
                        "menu {} unassigned",
                        alt.menu_key(alt.menus()[pos])
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alt, choices)
    }

    /// Choice at menu position `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.choices[pos] as usize
    }

    pub fn choice(&self, alt: &AlternativeSet, menu: Menu) -> usize {
        self.at(alt.position_unchecked(menu))
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    pub fn choices(&self) -> impl Iterator<Item = usize> + '_ {
        self.choices.iter().map(|&a| a as usize)
    }

    /// Copy with the choice at `menu` replaced by `a`.
    pub fn with_choice(&self, alt: &AlternativeSet, menu: Menu, a: usize) -> ChoiceFunction {
        assert!(menu.contains(a), "choice must be a member of the menu");
        let mut out = self.clone();
        out.choices[alt.position_unchecked(menu)] = a as u8;
        out
    }

    /// Slot indices hit by this choice function, one per menu.
    pub fn slots<'a>(&'a self, alt: &'a AlternativeSet) -> impl Iterator<Item = usize> + 'a {
        self.choices
            .iter()
            .enumerate()
            .map(move |(pos, &a)| alt.slot(a as usize, pos))
    }
}

/// `c_P`: maximise `p` on every menu.
pub fn rational_choice_function(alt: &AlternativeSet, p: &Preference) -> ChoiceFunction {
    ChoiceFunction {
        choices: alt.menus().iter().map(|&m| p.best_in(m) as u8).collect(),
    }
}

/// The preference rationalising `c`, if any.
///
/// Builds the tournament of binary choices; `c` is rational iff that
/// tournament is transitive and its maximiser agrees with `c` everywhere.
pub fn is_rational(alt: &AlternativeSet, c: &ChoiceFunction) -> Option<Preference> {
    let n = alt.n();
    let mut wins = vec![0usize; n];
    for (pos, menu) in alt.menus().iter().enumerate() {
        if menu.len() == 2 {
            wins[c.at(pos)] += 1;
        }
    }
    // A tournament is transitive iff its score sequence is 0, 1, ..., n-1.
    let mut ranking: Vec<usize> = (0..n).collect();
    ranking.sort_by(|&x, &y| wins[y].cmp(&wins[x]));
    if ranking
        .iter()
        .enumerate()
        .any(|(i, &a)| wins[a] != n - 1 - i)
    {
        return None;
    }
    let p = Preference { ranking };
    (rational_choice_function(alt, &p) == *c).then_some(p)
}

/// Exact probabilities over the members of every menu.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StochasticChoiceFunction {
    alt: AlternativeSet,
    probs: Vec<Rational>,
}

impl StochasticChoiceFunction {
    /// `per_menu[pos]` lists probabilities of the members of menu `pos` in
    /// ascending alternative order.
    pub fn new(alt: &AlternativeSet, per_menu: Vec<Vec<Rational>>) -> Result<Self> {
        if per_menu.len() != alt.k() {
            return Err(Error::DimensionMismatch(format!(
                "{} menu rows for {} menus",
                per_menu.len(),
                alt.k()
            )));
        }
        let mut probs = Vec::with_capacity(alt.slot_count());
        for (menu, row) in alt.menus().iter().zip(per_menu) {
            if row.len() != menu.len() {
                return Err(Error::DimensionMismatch(format!(
                    "menu {} has {} members but {} probabilities",
                    alt.menu_key(*menu),
                    menu.len(),
                    row.len()
                )));
            }
            probs.extend(row);
        }
        Self::from_slots(alt, probs)
    }

    /// Builds from a dense slot vector (see module docs for slot order).
    pub fn from_slots(alt: &AlternativeSet, probs: Vec<Rational>) -> Result<Self> {
        if probs.len() != alt.slot_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} slot values for {} slots",
                probs.len(),
                alt.slot_count()
            )));
        }
        for (pos, menu) in alt.menus().iter().enumerate() {
            let offset = alt.menu_offset(pos);
            let row = &probs[offset..offset + menu.len()];
            for (a, value) in menu.members().zip(row) {
                if value.is_negative() {
                    return Err(Error::NegativeProbability {
                        alternative: alt.label(a).to_string(),
                        menu: alt.menu_key(*menu),
                        value: value.to_string(),
                    });
                }
            }
            let total = rational::sum(row);
            if !total.is_one() {
                return Err(Error::NotNormalized {
                    menu: alt.menu_key(*menu),
                    sum: total.to_string(),
                });
            }
        }
        Ok(StochasticChoiceFunction {
            alt: alt.clone(),
            probs,
        })
    }

    pub fn from_fn(
        alt: &AlternativeSet,
        mut f: impl FnMut(usize, Menu) -> Rational,
    ) -> Result<Self> {
        let probs = alt
            .menus()
            .iter()
            .flat_map(|&m| m.members().map(move |a| (a, m)))
            .map(|(a, m)| f(a, m))
            .collect();
        Self::from_slots(alt, probs)
    }

    /// `rho(a, A) = 1/|A|`.
    pub fn uniform(alt: &AlternativeSet) -> Self {
        Self::from_fn(alt, |_, m| rational::ratio(1, m.len() as i64)).expect("uniform is valid")
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alt
    }

    pub fn n(&self) -> usize {
        self.alt.n()
    }

    /// `rho(a, menu)`; zero when `a` is not a member. Panics if `menu` is not
    /// in the domain.
    pub fn prob(&self, a: usize, menu: Menu) -> Rational {
        if !menu.contains(a) {
            return Rational::zero();
        }
        self.probs[self.alt.slot(a, self.alt.position_unchecked(menu))].clone()
    }

    pub fn prob_ref(&self, a: usize, menu: Menu) -> &Rational {
        assert!(menu.contains(a), "alternative must belong to the menu");
        &self.probs[self.alt.slot(a, self.alt.position_unchecked(menu))]
    }

    /// `rho` extended with `rho(x, {x}) = 1` on singletons.
    pub fn prob_extended(&self, a: usize, menu: Menu) -> Rational {
        if menu.len() == 1 {
            return if menu.contains(a) {
                Rational::one()
            } else {
                Rational::zero()
            };
        }
        self.prob(a, menu)
    }

    pub fn slots(&self) -> &[Rational] {
        &self.probs
    }

    /// Probabilities of the members of the menu at `pos`.
    pub fn menu_row(&self, pos: usize) -> &[Rational] {
        let offset = self.alt.menu_offset(pos);
        &self.probs[offset..offset + self.alt.menus()[pos].len()]
    }

    /// `alpha * self + (1 - alpha) * other`.
    pub fn mix(&self, alpha: &Rational, other: &Self) -> Result<Self> {
        if self.alt != other.alt {
            return Err(Error::AlternativeSetMismatch);
        }
        if !rational::is_probability(alpha) {
            return Err(Error::Precondition(format!(
                "mixing weight {alpha} outside [0, 1]"
            )));
        }
        let beta = Rational::one() - alpha;
        let probs = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(x, y)| alpha * x + &beta * y)
            .collect();
        Ok(StochasticChoiceFunction {
            alt: self.alt.clone(),
            probs,
        })
    }
}

/// A probability distribution over choice functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RandomChoiceModel {
    alt: AlternativeSet,
    support: Vec<(ChoiceFunction, Rational)>,
}

impl RandomChoiceModel {
    /// Weights must be strictly positive, sum to one, and the support must
    /// not repeat a choice function.
    pub fn new(alt: &AlternativeSet, support: Vec<(ChoiceFunction, Rational)>) -> Result<Self> {
        validate_weights(support.iter().map(|(_, w)| w))?;
        let mut seen = HashSet::new();
        for (c, _) in &support {
            if c.len() != alt.k() {
                return Err(Error::DimensionMismatch(
                    "choice function does not match the alternative set".into(),
                ));
            }
            if !seen.insert(c) {
                return Err(Error::InvalidWeights(
                    "duplicate choice function in support".into(),
                ));
            }
        }
        Ok(RandomChoiceModel {
            alt: alt.clone(),
            support,
        })
    }

    /// Drops zero weights and merges duplicates before validating.
    pub fn from_weights(
        alt: &AlternativeSet,
        weights: impl IntoIterator<Item = (ChoiceFunction, Rational)>,
    ) -> Result<Self> {
        let mut support: Vec<(ChoiceFunction, Rational)> = Vec::new();
        for (c, w) in weights {
            if w.is_zero() {
                continue;
            }
            match support.iter_mut().find(|(d, _)| *d == c) {
                Some((_, acc)) => *acc += w,
                None => support.push((c, w)),
            }
        }
        Self::new(alt, support)
    }

    pub fn degenerate(alt: &AlternativeSet, c: ChoiceFunction) -> Self {
        RandomChoiceModel {
            alt: alt.clone(),
            support: vec![(c, Rational::one())],
        }
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alt
    }

    pub fn support(&self) -> &[(ChoiceFunction, Rational)] {
        &self.support
    }

    pub fn weight_of(&self, c: &ChoiceFunction) -> Rational {
        self.support
            .iter()
            .find(|(d, _)| d == c)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// The induced stochastic choice function.
    pub fn aggregate(&self) -> StochasticChoiceFunction {
        aggregate(self)
    }

    /// Support members that no preference rationalises.
    pub fn irrational_members(&self) -> impl Iterator<Item = &(ChoiceFunction, Rational)> {
        self.support
            .iter()
            .filter(|(c, _)| is_rational(&self.alt, c).is_none())
    }

    pub fn is_all_irrational(&self) -> bool {
        self.irrational_members().count() == self.support.len()
    }
}

/// `rho_mu(a, A)`: total weight of support members choosing `a` from `A`.
pub fn aggregate(mu: &RandomChoiceModel) -> StochasticChoiceFunction {
    let alt = &mu.alt;
    let mut probs = vec![Rational::zero(); alt.slot_count()];
    for (c, w) in &mu.support {
        for slot in c.slots(alt) {
            probs[slot] += w;
        }
    }
    StochasticChoiceFunction {
        alt: alt.clone(),
        probs,
    }
}

/// A random utility model written as a distribution over preferences.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreferenceDistribution {
    alt: AlternativeSet,
    support: Vec<(Preference, Rational)>,
}

impl PreferenceDistribution {
    /// Zero weights are dropped; remaining weights must be positive, sum to
    /// one and name each preference once.
    pub fn new(alt: &AlternativeSet, weights: Vec<(Preference, Rational)>) -> Result<Self> {
        let support: Vec<_> = weights.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        validate_weights(support.iter().map(|(_, w)| w))?;
        let mut seen = HashSet::new();
        for (p, _) in &support {
            if p.n() != alt.n() {
                return Err(Error::DimensionMismatch(
                    "preference does not match the alternative set".into(),
                ));
            }
            if !seen.insert(p) {
                return Err(Error::InvalidWeights(
                    "duplicate preference in support".into(),
                ));
            }
        }
        Ok(PreferenceDistribution {
            alt: alt.clone(),
            support,
        })
    }

    pub fn uniform(alt: &AlternativeSet) -> Self {
        let prefs = alt.preferences();
        let w = rational::ratio(1, prefs.len() as i64);
        let support = prefs.into_iter().map(|p| (p, w.clone())).collect();
        PreferenceDistribution {
            alt: alt.clone(),
            support,
        }
    }

    pub fn degenerate(alt: &AlternativeSet, p: Preference) -> Self {
        PreferenceDistribution {
            alt: alt.clone(),
            support: vec![(p, Rational::one())],
        }
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alt
    }

    pub fn support(&self) -> &[(Preference, Rational)] {
        &self.support
    }

    pub fn mass(&self, p: &Preference) -> Rational {
        self.support
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn to_rcm(&self) -> RandomChoiceModel {
        RandomChoiceModel {
            alt: self.alt.clone(),
            support: self
                .support
                .iter()
                .map(|(p, w)| (rational_choice_function(&self.alt, p), w.clone()))
                .collect(),
        }
    }

    pub fn aggregate(&self) -> StochasticChoiceFunction {
        aggregate(&self.to_rcm())
    }

    /// Converts an RCM whose support is entirely rational.
    pub fn from_rcm(mu: &RandomChoiceModel) -> Result<Self> {
        let support = mu
            .support()
            .iter()
            .map(|(c, w)| {
                is_rational(&mu.alt, c)
                    .map(|p| (p, w.clone()))
                    .ok_or_else(|| {
                        Error::Precondition("support contains an irrational choice function".into())
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&mu.alt, support)
    }
}

fn validate_weights<'a>(weights: impl Iterator<Item = &'a Rational>) -> Result<()> {
    let mut total = Rational::zero();
    let mut count = 0;
    for w in weights {
        if !w.is_positive() {
            return Err(Error::InvalidWeights(format!(
                "weight {w} is not strictly positive"
            )));
        }
        total += w;
        count += 1;
    }
    if count == 0 {
        return Err(Error::InvalidWeights("empty support".into()));
    }
    if !total.is_one() {
        return Err(Error::InvalidWeights(format!(
            "weights sum to {total}, not 1"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn csf() -> AlternativeSet {
        AlternativeSet::new(["c", "s", "f"]).unwrap()
    }

    fn cf(alt: &AlternativeSet, table: &[(&str, &str)]) -> ChoiceFunction {
        let pairs: Vec<_> = table
            .iter()
            .map(|(m, a)| (alt.parse_menu(m).unwrap(), alt.index_of(a).unwrap()))
            .collect();
        ChoiceFunction::from_pairs(alt, &pairs).unwrap()
    }

    #[test]
    fn menu_counts() {
        for (n, k) in [(2, 1), (3, 4), (4, 11)] {
            let alt = AlternativeSet::with_size(n).unwrap();
            let (menus, count) = enumerate_menus(&alt);
            assert_eq!(count, k);
            assert_eq!(menus.len(), k);
            assert!(menus.windows(2).all(|w| w[0] < w[1]));
        }
        let alt = csf();
        let names: Vec<_> = alt.menus().iter().map(|&m| alt.menu_name(m)).collect();
        assert_eq!(names, ["cs", "cf", "sf", "csf"]);
    }

    #[test]
    fn rejects_bad_alternative_sets() {
        assert!(AlternativeSet::new(["a"]).is_err());
        assert!(AlternativeSet::new(["a", "a"]).is_err());
        assert!(AlternativeSet::with_size(13).is_err());
        assert!(AlternativeSet::new(["a|b", "c"]).is_err());
    }

    #[test]
    fn rational_choices_of_csf_dual() {
        let alt = csf();
        let p1 = alt.parse_preference("c>s>f").unwrap();
        let p2 = alt.parse_preference("s>c>f").unwrap();
        assert_eq!(
            rational_choice_function(&alt, &p1),
            cf(&alt, &[("csf", "c"), ("cs", "c"), ("cf", "c"), ("sf", "s")])
        );
        assert_eq!(
            rational_choice_function(&alt, &p2),
            cf(&alt, &[("csf", "s"), ("cs", "s"), ("cf", "c"), ("sf", "s")])
        );
        let ab = AlternativeSet::with_size(2).unwrap();
        let p = ab.parse_preference("a>b").unwrap();
        assert_eq!(rational_choice_function(&ab, &p).at(0), 0);
    }

    #[test]
    fn rationality_check() {
        let alt = csf();
        let c1 = cf(&alt, &[("csf", "s"), ("cs", "c"), ("cf", "c"), ("sf", "s")]);
        assert_eq!(is_rational(&alt, &c1), None);
        let c = cf(&alt, &[("csf", "c"), ("cs", "c"), ("cf", "c"), ("sf", "s")]);
        assert_eq!(
            is_rational(&alt, &c),
            Some(alt.parse_preference("c>s>f").unwrap())
        );

        let abc = AlternativeSet::with_size(3).unwrap();
        let bad = cf(&abc, &[("abc", "a"), ("ab", "b"), ("ac", "a"), ("bc", "b")]);
        assert_eq!(is_rational(&abc, &bad), None);
    }

    #[test]
    fn rationality_round_trip_exhaustive() {
        for n in 2..=5 {
            let alt = AlternativeSet::with_size(n).unwrap();
            for p in alt.preferences() {
                let c = rational_choice_function(&alt, &p);
                assert_eq!(is_rational(&alt, &c), Some(p));
            }
        }
    }

    #[test]
    fn six_of_twenty_four_are_rational() {
        let alt = csf();
        let all = alt.choice_functions().unwrap();
        assert_eq!(all.len(), 24);
        assert_eq!(
            all.iter()
                .filter(|c| is_rational(&alt, c).is_some())
                .count(),
            6
        );
        let four = AlternativeSet::with_size(4).unwrap();
        assert_eq!(four.choice_function_count(), 20736);
        assert!(AlternativeSet::with_size(5)
            .unwrap()
            .choice_functions()
            .is_err());
    }

    #[test]
    fn aggregate_csf_dual() {
        let alt = csf();
        let c1 = cf(&alt, &[("csf", "s"), ("cs", "c"), ("cf", "c"), ("sf", "s")]);
        let c2 = cf(&alt, &[("csf", "c"), ("cs", "s"), ("cf", "c"), ("sf", "s")]);
        let mu = RandomChoiceModel::new(&alt, vec![(c1, ratio(1, 2)), (c2, ratio(1, 2))]).unwrap();
        let rho = aggregate(&mu);
        let m = |s| alt.parse_menu(s).unwrap();
        let (c, s) = (0, 1);
        assert_eq!(rho.prob(c, m("csf")), ratio(1, 2));
        assert_eq!(rho.prob(c, m("cs")), ratio(1, 2));
        assert_eq!(rho.prob(c, m("cf")), ratio(1, 1));
        assert_eq!(rho.prob(s, m("sf")), ratio(1, 1));
    }

    #[test]
    fn aggregate_degenerate_and_weak_bound_case() {
        let alt = AlternativeSet::with_size(3).unwrap();
        let p = alt.parse_preference("b>c>a").unwrap();
        let rho = PreferenceDistribution::degenerate(&alt, p.clone()).aggregate();
        for &m in alt.menus() {
            assert_eq!(rho.prob(p.best_in(m), m), ratio(1, 1));
        }

        let mu = PreferenceDistribution::new(
            &alt,
            vec![
                (alt.parse_preference("a>b>c").unwrap(), ratio(2, 5)),
                (alt.parse_preference("a>c>b").unwrap(), ratio(2, 5)),
                (alt.parse_preference("b>c>a").unwrap(), ratio(1, 10)),
                (alt.parse_preference("c>b>a").unwrap(), ratio(1, 10)),
            ],
        )
        .unwrap();
        let rho = mu.aggregate();
        let m = |s| alt.parse_menu(s).unwrap();
        assert_eq!(rho.prob(0, m("abc")), ratio(4, 5));
        assert_eq!(rho.prob(0, m("ab")), ratio(4, 5));
        assert_eq!(rho.prob(0, m("ac")), ratio(4, 5));
        assert_eq!(rho.prob(1, m("bc")), ratio(1, 2));
    }

    #[test]
    fn worst_pairs() {
        let alt = csf();
        let p = alt.parse_preference("c>s>f").unwrap();
        assert_eq!(worst_two(&p), alt.parse_menu("sf").unwrap());
        let rest: Vec<_> = menus_excluding_worst_pair(&alt, &p)
            .unwrap()
            .into_iter()
            .map(|m| alt.menu_name(m))
            .collect();
        assert_eq!(rest, ["cs", "cf", "csf"]);
        assert_eq!(
            worst_two(&alt.parse_preference("s>c>f").unwrap()),
            alt.parse_menu("cf").unwrap()
        );

        let four = AlternativeSet::with_size(4).unwrap();
        let p = four.parse_preference("a>b>c>d").unwrap();
        assert_eq!(worst_two(&p), four.parse_menu("cd").unwrap());
        assert_eq!(menus_excluding_worst_pair(&four, &p).unwrap().len(), 10);

        let two = AlternativeSet::with_size(2).unwrap();
        let p = two.parse_preference("a>b").unwrap();
        assert!(matches!(
            menus_excluding_worst_pair(&two, &p),
            Err(Error::TooFewAlternatives { .. })
        ));
    }

    #[test]
    fn scf_validation() {
        let alt = AlternativeSet::with_size(2).unwrap();
        let err = StochasticChoiceFunction::new(&alt, vec![vec![ratio(1, 2), ratio(49, 100)]]);
        assert!(matches!(err, Err(Error::NotNormalized { .. })));
        let err = StochasticChoiceFunction::new(&alt, vec![vec![ratio(3, 2), ratio(-1, 2)]]);
        assert!(matches!(err, Err(Error::NegativeProbability { .. })));
    }

    #[test]
    fn rcm_validation() {
        let alt = AlternativeSet::with_size(2).unwrap();
        let c = ChoiceFunction::new(&alt, vec![0]).unwrap();
        assert!(RandomChoiceModel::new(&alt, vec![(c.clone(), ratio(1, 2))]).is_err());
        assert!(RandomChoiceModel::new(
            &alt,
            vec![(c.clone(), ratio(1, 2)), (c.clone(), ratio(1, 2))]
        )
        .is_err());
        assert!(RandomChoiceModel::new(&alt, vec![(c.clone(), ratio(0, 1))]).is_err());
        assert!(ChoiceFunction::new(&alt, vec![2]).is_err());
    }
}
