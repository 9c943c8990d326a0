//! Exact linear feasibility: `A x = b, x >= 0` over the rationals.
//!
//! The solver is a revised Phase-I simplex. It prices by the largest
//! coefficient and breaks ratio ties lexicographically, which rules out
//! cycling. Columns are stored sparse and scaled to
//! integers, so pricing runs on machine integers whenever the dual vector
//! fits; every pivot is exact.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::choice::{ChoiceFunction, RandomChoiceModel, StochasticChoiceFunction};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest candidate list accepted by [`find_representation`].
pub const MAX_CANDIDATES: usize = 25_000;

/// Equality constraints over nonnegative variables.
#[derive(Clone, Debug, Default)]
pub struct FeasibilitySystem {
    variables: usize,
    equalities: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }
}

impl FeasibilitySystem {
    pub fn new(variables: usize) -> Self {
        FeasibilitySystem {
            variables,
            equalities: Vec::new(),
        }
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn equalities(&self) -> &[(Vec<Rational>, Rational)] {
        &self.equalities
    }

    pub fn add_equality(&mut self, coefficients: Vec<Rational>, rhs: Rational) -> Result<()> {
        if coefficients.len() != self.variables {
            return Err(Error::DimensionMismatch(format!(
                "equality has {} coefficients, system has {} variables",
                coefficients.len(),
                self.variables
            )));
        }
        self.equalities.push((coefficients, rhs));
        Ok(())
    }

    pub fn with_equality(mut self, coefficients: Vec<Rational>, rhs: Rational) -> Result<Self> {
        self.add_equality(coefficients, rhs)?;
        Ok(self)
    }
}

/// Decides feasibility exactly; on success the witness satisfies every
/// equality and is componentwise nonnegative.
pub fn solve_feasibility(sys: &FeasibilitySystem) -> Result<Feasibility> {
    if let Some((row, _)) = sys
        .equalities
        .iter()
        .find(|(r, _)| r.len() != sys.variables)
    {
        return Err(Error::DimensionMismatch(format!(
            "equality has {} coefficients, system has {} variables",
            row.len(),
            sys.variables
        )));
    }
    let Some(independent) = independent_rows(sys) else {
        return Ok(Feasibility::Infeasible);
    };
    let mut columns = vec![Vec::new(); sys.variables];
    let mut rhs = Vec::with_capacity(independent.len());
    for (r, &orig) in independent.iter().enumerate() {
        let (coeffs, b) = &sys.equalities[orig];
        for (j, v) in coeffs.iter().enumerate() {
            if !v.is_zero() {
                columns[j].push((r, v.clone()));
            }
        }
        rhs.push(b.clone());
    }
    let solution = SparseSystem::new(independent.len(), columns, rhs).solve();
    if let Some(x) = &solution {
        verify(sys, x);
    }
    Ok(match solution {
        Some(x) => Feasibility::Feasible(x),
        None => Feasibility::Infeasible,
    })
}

fn verify(sys: &FeasibilitySystem, x: &[Rational]) {
    assert!(
        x.iter().all(|v| !v.is_negative()),
        "witness has a negative entry"
    );
    for (coeffs, b) in &sys.equalities {
        let lhs = coeffs
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (a, v)| acc + a * v);
        assert_eq!(&lhs, b, "witness violates an equality");
    }
}

/// Exact Gaussian elimination on the augmented rows. Returns the indices of
/// a maximal independent subset of equalities, or `None` when some
/// combination reads `0 = nonzero`.
fn independent_rows(sys: &FeasibilitySystem) -> Option<Vec<usize>> {
    // Reduced rows kept in reduced echelon form: (pivot column, row, rhs).
    let mut basis: Vec<(usize, Vec<Rational>, Rational)> = Vec::new();
    let mut kept = Vec::new();
    for (idx, (coeffs, b)) in sys.equalities.iter().enumerate() {
        let mut row = coeffs.clone();
        let mut rhs = b.clone();
        for (pivot, brow, brhs) in &basis {
            if row[*pivot].is_zero() {
                continue;
            }
            let factor = row[*pivot].clone();
            for (x, y) in row.iter_mut().zip(brow) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
            rhs -= &factor * brhs;
        }
        match row.iter().position(|v| !v.is_zero()) {
            None if rhs.is_zero() => {}
            None => return None,
            Some(pivot) => {
                let scale = row[pivot].recip();
                for v in row.iter_mut() {
                    *v *= &scale;
                }
                rhs *= &scale;
                for (_, brow, brhs) in basis.iter_mut() {
                    if brow[pivot].is_zero() {
                        continue;
                    }
                    let factor = brow[pivot].clone();
                    for (x, y) in brow.iter_mut().zip(&row) {
                        if !y.is_zero() {
                            *x -= &factor * y;
                        }
                    }
                    *brhs -= &factor * &rhs;
                }
                basis.push((pivot, row, rhs));
                kept.push(idx);
            }
        }
    }
    Some(kept)
}

struct Column {
    /// Integer coefficients of `scale * a_j`.
    entries: Vec<(usize, BigInt)>,
    scale: BigInt,
}

/// All columns packed contiguously as `i64`, when every entry fits.
struct SmallColumns {
    start: Vec<usize>,
    entries: Vec<(usize, i64)>,
}

/// Sparse column-major system solved by Phase I. Rows may be linearly
/// dependent; dependent rows are detected when an artificial variable cannot
/// be driven out of the basis.
pub(crate) struct SparseSystem {
    rows: usize,
    columns: Vec<Column>,
    small: Option<SmallColumns>,
    rhs: Vec<Rational>,
}

impl SparseSystem {
    pub(crate) fn new(
        rows: usize,
        columns: Vec<Vec<(usize, Rational)>>,
        rhs: Vec<Rational>,
    ) -> Self {
        assert_eq!(rhs.len(), rows);
        let columns = columns
            .into_iter()
            .map(|col| {
                let scale = col
                    .iter()
                    .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                let entries: Vec<(usize, BigInt)> = col
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(r, v)| {
                        assert!(r < rows, "row index out of range");
                        (r, v.numer() * (&scale / v.denom()))
                    })
                    .collect();
                Column { entries, scale }
            })
            .collect::<Vec<_>>();
        let small = pack_small(&columns);
        SparseSystem {
            rows,
            columns,
            small,
            rhs,
        }
    }

    /// A nonnegative solution, or `None` if the system is infeasible.
    pub(crate) fn solve(&self) -> Option<Vec<Rational>> {
        let scaled = PhaseOne::new(self).run()?;
        let x: Vec<Rational> = scaled
            .into_iter()
            .zip(&self.columns)
            .map(|(v, col)| v * Rational::from_integer(col.scale.clone()))
            .collect();
        self.check(&x);
        Some(x)
    }

    fn check(&self, x: &[Rational]) {
        let mut lhs = vec![Rational::zero(); self.rows];
        for (col, v) in self.columns.iter().zip(x) {
            assert!(!v.is_negative(), "witness has a negative entry");
            if v.is_zero() {
                continue;
            }
            let unscaled = v / Rational::from_integer(col.scale.clone());
            for (r, a) in &col.entries {
                lhs[*r] += &unscaled * Rational::from_integer(a.clone());
            }
        }
        assert_eq!(lhs, self.rhs, "witness violates an equality");
    }
}

struct PhaseOne<'a> {
    sys: &'a SparseSystem,
    /// Row sign flips so that every right-hand side is nonnegative.
    flip: Vec<bool>,
    binv: Vec<Vec<Rational>>,
    basic: Vec<usize>,
    is_basic: Vec<bool>,
    values: Vec<Rational>,
}

impl<'a> PhaseOne<'a> {
    fn new(sys: &'a SparseSystem) -> Self {
        let m = sys.rows;
        let n = sys.columns.len();
        let flip: Vec<bool> = sys.rhs.iter().map(|b| b.is_negative()).collect();
        let values = sys.rhs.iter().map(|b| b.abs()).collect();
        let binv = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut is_basic = vec![false; n + m];
        for r in 0..m {
            is_basic[n + r] = true;
        }
        PhaseOne {
            sys,
            flip,
            binv,
            basic: (n..n + m).collect(),
            is_basic,
            values,
        }
    }

    fn n(&self) -> usize {
        self.sys.columns.len()
    }

    fn is_artificial(&self, var: usize) -> bool {
        var >= self.n()
    }

    fn run(mut self) -> Option<Vec<Rational>> {
        while let Some(j) = self.entering() {
            let u = self.ftran(j);
            let r = self.leaving(&u).expect("phase one cannot be unbounded");
            self.pivot(r, j, &u);
        }
        let infeasibility = self
            .basic
            .iter()
            .zip(&self.values)
            .filter(|(&v, _)| self.is_artificial(v))
            .fold(Rational::zero(), |acc, (_, x)| acc + x);
        if infeasibility.is_positive() {
            return None;
        }
        self.drive_out_artificials();
        let mut x = vec![Rational::zero(); self.n()];
        for (&var, value) in self.basic.iter().zip(&self.values) {
            if !self.is_artificial(var) {
                x[var] = value.clone();
            }
        }
        Some(x)
    }

    /// Phase-I duals scaled to a common integer denominator. Their signs are
    /// all Bland's rule needs.
    fn scaled_duals(&self) -> Vec<BigInt> {
        let m = self.sys.rows;
        let mut y = vec![Rational::zero(); m];
        for (r, &var) in self.basic.iter().enumerate() {
            if self.is_artificial(var) {
                for (yi, b) in y.iter_mut().zip(&self.binv[r]) {
                    *yi += b;
                }
            }
        }
        for (i, yi) in y.iter_mut().enumerate() {
            if self.flip[i] {
                *yi = -yi.clone();
            }
        }
        let denom = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        y.into_iter()
            .map(|v| v.numer() * (&denom / v.denom()))
            .collect()
    }

    /// The nonbasic structural column with the most negative reduced cost.
    fn entering(&self) -> Option<usize> {
        let y = self.scaled_duals();
        // reduced cost = -(y . a_j); negative iff y . a_j > 0
        match self.small_dots(&y) {
            Some(dots) => pick(dots),
            None => {
                let dots = (0..self.n()).filter(|&j| !self.is_basic[j]).map(|j| {
                    let d = self.sys.columns[j]
                        .entries
                        .iter()
                        .fold(BigInt::zero(), |acc, (r, a)| acc + &y[*r] * a);
                    (j, d)
                });
                pick(dots)
            }
        }
    }

    /// `y . a_j` for every nonbasic column, if all of them fit in `i128`.
    fn small_dots(&self, y: &[BigInt]) -> Option<Vec<(usize, i128)>> {
        let packed = self.sys.small.as_ref()?;
        let ys: Vec<i128> = y.iter().map(|v| v.to_i128()).collect::<Option<_>>()?;
        let mut out = Vec::new();
        for j in (0..self.n()).filter(|&j| !self.is_basic[j]) {
            let mut acc: i128 = 0;
            for &(r, a) in &packed.entries[packed.start[j]..packed.start[j + 1]] {
                acc = acc.checked_add(ys[r].checked_mul(a as i128)?)?;
            }
            out.push((j, acc));
        }
        Some(out)
    }

    /// `B^-1 a_j` for the sign-adjusted column.
    fn ftran(&self, j: usize) -> Vec<Rational> {
        let col = &self.sys.columns[j];
        self.binv
            .iter()
            .map(|row| {
                col.entries.iter().fold(Rational::zero(), |acc, (r, a)| {
                    let a = Rational::from_integer(a.clone());
                    let a = if self.flip[*r] { -a } else { a };
                    acc + &row[*r] * a
                })
            })
            .collect()
    }

    /// Minimum-ratio row. Ties are broken by comparing the rows of `B^-1`
    /// scaled by `1 / u_r` lexicographically; these rows start as the identity
    /// and stay distinct, so the choice is unique.
    fn leaving(&self, u: &[Rational]) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (r, ur) in u.iter().enumerate() {
            if !ur.is_positive() {
                continue;
            }
            let ratio = &self.values[r] / ur;
            let better = match &best {
                None => true,
                Some((br, b)) => match ratio.cmp(b) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => self.lex_less(r, ur, *br, &u[*br]),
                },
            };
            if better {
                best = Some((r, ratio));
            }
        }
        best.map(|(r, _)| r)
    }

    fn lex_less(&self, r: usize, ur: &Rational, s: usize, us: &Rational) -> bool {
        for (x, y) in self.binv[r].iter().zip(&self.binv[s]) {
            match (x / ur).cmp(&(y / us)) {
                Ordering::Less => return true,
                Ordering::Greater => return false,
                Ordering::Equal => {}
            }
        }
        unreachable!("rows of the basis inverse are distinct")
    }

    fn pivot(&mut self, r: usize, j: usize, u: &[Rational]) {
        let inv = u[r].recip();
        for v in self.binv[r].iter_mut() {
            *v *= &inv;
        }
        self.values[r] *= &inv;
        let pivot_row = self.binv[r].clone();
        let pivot_value = self.values[r].clone();
        for (i, ui) in u.iter().enumerate() {
            if i == r || ui.is_zero() {
                continue;
            }
            for (x, p) in self.binv[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= ui * p;
                }
            }
            self.values[i] -= ui * &pivot_value;
        }
        let leaving = std::mem::replace(&mut self.basic[r], j);
        self.is_basic[leaving] = false;
        self.is_basic[j] = true;
    }

    /// Replaces zero-level artificials by structural columns where possible.
    /// Rows where no structural column has a nonzero entry are redundant.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.sys.rows {
            if !self.is_artificial(self.basic[r]) {
                continue;
            }
            let candidate = (0..self.n()).find(|&j| {
                !self.is_basic[j]
                    && self.sys.columns[j]
                        .entries
                        .iter()
                        .any(|(i, _)| !self.binv[r][*i].is_zero())
                    && !self.row_times_column(r, j).is_zero()
            });
            if let Some(j) = candidate {
                let u = self.ftran(j);
                self.pivot(r, j, &u);
            }
        }
    }

    fn row_times_column(&self, r: usize, j: usize) -> Rational {
        self.sys.columns[j]
            .entries
            .iter()
            .fold(Rational::zero(), |acc, (i, a)| {
                let a = Rational::from_integer(a.clone());
                let a = if self.flip[*i] { -a } else { a };
                acc + &self.binv[r][*i] * a
            })
    }
}

fn pack_small(columns: &[Column]) -> Option<SmallColumns> {
    let mut start = vec![0];
    let mut entries = Vec::new();
    for col in columns {
        for (r, v) in &col.entries {
            entries.push((*r, v.to_i64()?));
        }
        start.push(entries.len());
    }
    Some(SmallColumns { start, entries })
}

fn pick<T: Ord + Signed>(dots: impl IntoIterator<Item = (usize, T)>) -> Option<usize> {
    dots.into_iter()
        .filter(|(_, d)| d.is_positive())
        .fold(None, |best: Option<(usize, T)>, (j, d)| match best {
            Some((_, ref b)) if *b >= d => best,
            _ => Some((j, d)),
        })
        .map(|(j, _)| j)
}

/// Rows used when matching a stochastic choice function: every slot of the
/// first menu and all but the last slot of each other menu. The dropped rows
/// follow from the kept ones because every choice function picks exactly one
/// member per menu.
fn retained_rows(rho: &StochasticChoiceFunction) -> (Vec<Option<usize>>, Vec<usize>) {
    let alt = rho.alternatives();
    let mut row_of_slot = vec![None; alt.slot_count()];
    let mut slots = Vec::new();
    for (pos, menu) in alt.menus().iter().enumerate() {
        let offset = alt.menu_offset(pos);
        let keep = if pos == 0 { menu.len() } else { menu.len() - 1 };
        for (s, row) in row_of_slot.iter_mut().enumerate().skip(offset).take(keep) {
            *row = Some(slots.len());
            slots.push(s);
        }
    }
    (row_of_slot, slots)
}

fn check_candidates(rho: &StochasticChoiceFunction, candidates: &[ChoiceFunction]) -> Result<()> {
    if candidates.is_empty() {
        return Err(Error::Precondition("candidate list is empty".into()));
    }
    if candidates.len() > MAX_CANDIDATES {
        return Err(Error::CandidateLimit {
            count: candidates.len(),
            limit: MAX_CANDIDATES,
        });
    }
    let k = rho.alternatives().k();
    if candidates.iter().any(|c| c.len() != k) {
        return Err(Error::DimensionMismatch(
            "candidate does not match the alternative set".into(),
        ));
    }
    Ok(())
}

fn candidate_column(
    rho: &StochasticChoiceFunction,
    c: &ChoiceFunction,
    row_of_slot: &[Option<usize>],
) -> Vec<(usize, Rational)> {
    c.slots(rho.alternatives())
        .filter_map(|s| row_of_slot[s])
        .map(|r| (r, Rational::one()))
        .collect()
}

/// An RCM supported on `candidates` that aggregates to `rho`, if one exists.
pub fn find_representation(
    rho: &StochasticChoiceFunction,
    candidates: &[ChoiceFunction],
) -> Result<Option<RandomChoiceModel>> {
    check_candidates(rho, candidates)?;
    let (row_of_slot, slots) = retained_rows(rho);
    let columns = candidates
        .iter()
        .map(|c| candidate_column(rho, c, &row_of_slot))
        .collect();
    let rhs = slots.iter().map(|&s| rho.slots()[s].clone()).collect();
    let Some(x) = SparseSystem::new(slots.len(), columns, rhs).solve() else {
        return Ok(None);
    };
    let mu =
        RandomChoiceModel::from_weights(rho.alternatives(), candidates.iter().cloned().zip(x))?;
    assert_eq!(
        &mu.aggregate(),
        rho,
        "representation does not reproduce rho"
    );
    Ok(Some(mu))
}

/// An RCM supported on `candidates` that aggregates to `rho` and gives
/// strictly positive total weight to the candidates selected by `marked`.
///
/// Solved as the homogeneous system `sum_c mu_c a_c = t rho`,
/// `sum_{marked} mu_c = 1`, `mu, t >= 0`: every candidate column has unit
/// mass per menu, so any solution has `t > 0` and `mu / t` is the witness.
pub fn find_marked_representation(
    rho: &StochasticChoiceFunction,
    candidates: &[ChoiceFunction],
    marked: impl Fn(&ChoiceFunction) -> bool,
) -> Result<Option<RandomChoiceModel>> {
    check_candidates(rho, candidates)?;
    let (row_of_slot, slots) = retained_rows(rho);
    let mass_row = slots.len();
    let mut columns: Vec<Vec<(usize, Rational)>> = candidates
        .iter()
        .map(|c| {
            let mut col = candidate_column(rho, c, &row_of_slot);
            if marked(c) {
                col.push((mass_row, Rational::one()));
            }
            col
        })
        .collect();
    columns.push(
        slots
            .iter()
            .enumerate()
            .map(|(r, &s)| (r, -rho.slots()[s].clone()))
            .collect(),
    );
    let mut rhs = vec![Rational::zero(); slots.len()];
    rhs.push(Rational::one());
    let Some(mut x) = SparseSystem::new(slots.len() + 1, columns, rhs).solve() else {
        return Ok(None);
    };
    let t = x.pop().expect("homogenising variable");
    assert!(t.is_positive(), "homogenising variable must be positive");
    let mu = RandomChoiceModel::from_weights(
        rho.alternatives(),
        candidates
            .iter()
            .cloned()
            .zip(x.into_iter().map(|v| v / &t)),
    )?;
    assert_eq!(
        &mu.aggregate(),
        rho,
        "representation does not reproduce rho"
    );
    Ok(Some(mu))
}
