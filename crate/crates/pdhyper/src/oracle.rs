//! Ground-truth engine: the Taylor complex of a square-free monomial
//! ideal, minimized by exact Gaussian cancellation of unit entries, gives
//! the total Betti numbers of R/I and hence the projective dimension. A
//! branch-and-bound minimum face cover gives the grade.
//!
//! Every entry of a differential is homogeneous for the multidegrees of
//! its row and column, so its monomial part is implicit (the quotient of
//! the two lcms) and only a field scalar is stored. An entry is cancellable
//! exactly when the two multidegrees agree.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ideal::{Monomial, MonomialIdeal};

pub const DEFAULT_MU_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{mu} generators exceed the complex size cap of {cap}")]
    TooLarge { mu: usize, cap: usize },
    #[error("generators are not inclusion-minimal")]
    NonMinimalGenerators,
    #[error("the zero ideal has no grade")]
    EmptyIdeal,
    #[error("{0} is not a prime at most 97")]
    BadPrime(u64),
}

/// Coefficient arithmetic for the minimization. Implemented for exact
/// rationals and for small prime fields.
pub trait Field: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Debug, Clone, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a.clone()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
}

#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, OracleError> {
        let is_prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !is_prime || p > 97 {
            return Err(OracleError::BadPrime(p));
        }
        Ok(PrimeField { p })
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
}

/// Sparse scalar matrix with rows and columns keyed by subset bitmasks.
#[derive(Debug, Clone)]
struct SparseMat<E> {
    cols: BTreeMap<u32, BTreeMap<u32, E>>,
    rows: BTreeMap<u32, BTreeSet<u32>>,
}

impl<E> Default for SparseMat<E> {
    fn default() -> Self {
        SparseMat {
            cols: BTreeMap::new(),
            rows: BTreeMap::new(),
        }
    }
}

impl<E: Clone> SparseMat<E> {
    fn set(&mut self, row: u32, col: u32, value: E) {
        self.cols.entry(col).or_default().insert(row, value);
        self.rows.entry(row).or_default().insert(col);
    }

    fn get(&self, row: u32, col: u32) -> Option<&E> {
        self.cols.get(&col)?.get(&row)
    }

    fn unset(&mut self, row: u32, col: u32) {
        if let Some(c) = self.cols.get_mut(&col) {
            c.remove(&row);
            if c.is_empty() {
                self.cols.remove(&col);
            }
        }
        if let Some(r) = self.rows.get_mut(&row) {
            r.remove(&col);
            if r.is_empty() {
                self.rows.remove(&row);
            }
        }
    }

    fn remove_row(&mut self, row: u32) {
        if let Some(cols) = self.rows.remove(&row) {
            for col in cols {
                if let Some(c) = self.cols.get_mut(&col) {
                    c.remove(&row);
                    if c.is_empty() {
                        self.cols.remove(&col);
                    }
                }
            }
        }
    }

    fn remove_col(&mut self, col: u32) {
        if let Some(c) = self.cols.remove(&col) {
            for row in c.keys() {
                if let Some(r) = self.rows.get_mut(row) {
                    r.remove(&col);
                    if r.is_empty() {
                        self.rows.remove(row);
                    }
                }
            }
        }
    }
}

/// The Taylor complex of an ideal over a chosen coefficient field. Basis
/// elements are subsets of the generators (as bitmasks), graded by subset
/// size, with multidegree the lcm of the chosen generators.
#[derive(Debug, Clone)]
pub struct Complex<F: Field> {
    field: F,
    mu: usize,
    mdeg: Vec<Monomial>,
    live: Vec<BTreeSet<u32>>,
    /// diffs[i] maps homological degree i to i - 1, for 1 <= i <= mu
    diffs: Vec<SparseMat<F::Elem>>,
}

pub type TaylorComplex = Complex<Rationals>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub beta: Vec<usize>,
}

impl BettiTable {
    pub fn pd(&self) -> usize {
        self.beta
            .iter()
            .rposition(|&b| b != 0)
            .unwrap_or(0)
    }
}

pub fn build_taylor(ideal: &MonomialIdeal) -> Result<TaylorComplex, OracleError> {
    build_taylor_with_cap(ideal, DEFAULT_MU_CAP)
}

pub fn build_taylor_with_cap(
    ideal: &MonomialIdeal,
    cap: usize,
) -> Result<TaylorComplex, OracleError> {
    build_complex(ideal, Rationals, cap)
}

pub fn build_complex<F: Field>(
    ideal: &MonomialIdeal,
    field: F,
    cap: usize,
) -> Result<Complex<F>, OracleError> {
    let mu = ideal.num_gens();
    if mu > cap || mu > 31 {
        return Err(OracleError::TooLarge { mu, cap });
    }
    if !ideal.is_minimal() {
        return Err(OracleError::NonMinimalGenerators);
    }
    let gens = ideal.gens();
    let size = 1usize << mu;
    let mut mdeg = vec![Monomial::one(); size];
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        mdeg[mask] = mdeg[mask & (mask - 1)].lcm(&gens[low]);
    }
    let mut live = vec![BTreeSet::new(); mu + 1];
    for mask in 0..size {
        live[(mask as u32).count_ones() as usize].insert(mask as u32);
    }
    let mut diffs: Vec<SparseMat<F::Elem>> = (0..=mu).map(|_| SparseMat::default()).collect();
    for mask in 1..size as u32 {
        let degree = mask.count_ones() as usize;
        let mut sign_flip = false;
        for j in 0..mu as u32 {
            if mask >> j & 1 == 0 {
                continue;
            }
            let value = if sign_flip {
                field.neg(&field.one())
            } else {
                field.one()
            };
            diffs[degree].set(mask & !(1 << j), mask, value);
            sign_flip = !sign_flip;
        }
    }
    let complex = Complex {
        field,
        mu,
        mdeg,
        live,
        diffs,
    };
    #[cfg(debug_assertions)]
    complex.check_composition_zero();
    Ok(complex)
}

impl<F: Field> Complex<F> {
    pub fn rank(&self, degree: usize) -> usize {
        self.live.get(degree).map_or(0, |s| s.len())
    }

    pub fn max_degree(&self) -> usize {
        self.mu
    }

    /// Entries of the differential from degree `i`, as
    /// (row mask, column mask, monomial part) triples. The monomial part
    /// is the quotient of the column lcm by the row lcm.
    pub fn differential_monomials(&self, i: usize) -> Vec<(u32, u32, Monomial)> {
        let mut out = Vec::new();
        if let Some(d) = self.diffs.get(i) {
            for (&col, rows) in &d.cols {
                for &row in rows.keys() {
                    let q = self.mdeg[col as usize].quotient(&self.mdeg[row as usize]);
                    out.push((row, col, q));
                }
            }
        }
        out
    }

    #[cfg(debug_assertions)]
    fn check_composition_zero(&self) {
        for i in 2..=self.mu {
            let hi = &self.diffs[i];
            let lo = &self.diffs[i - 1];
            let mut acc: BTreeMap<(u32, u32), F::Elem> = BTreeMap::new();
            for (&col, rows) in &hi.cols {
                for (&mid, a) in rows {
                    if let Some(mid_rows) = lo.cols.get(&mid) {
                        for (&row, b) in mid_rows {
                            let term = self.field.mul(a, b);
                            let entry =
                                acc.entry((row, col)).or_insert_with(|| self.field.zero());
                            *entry = self.field.add(entry, &term);
                        }
                    }
                }
            }
            for ((row, col), v) in acc {
                assert!(
                    self.field.is_zero(&v),
                    "composition not zero at ({row:b}, {col:b}) in degree {i}"
                );
            }
        }
    }

    fn find_pivot_deterministic(&self) -> Option<(usize, u32, u32)> {
        for i in 1..=self.mu {
            let d = &self.diffs[i];
            for (&col, rows) in &d.cols {
                for &row in rows.keys() {
                    if self.mdeg[row as usize] == self.mdeg[col as usize] {
                        return Some((i, row, col));
                    }
                }
            }
        }
        None
    }

    fn all_pivots(&self) -> Vec<(usize, u32, u32)> {
        let mut out = Vec::new();
        for i in 1..=self.mu {
            let d = &self.diffs[i];
            for (&col, rows) in &d.cols {
                for &row in rows.keys() {
                    if self.mdeg[row as usize] == self.mdeg[col as usize] {
                        out.push((i, row, col));
                    }
                }
            }
        }
        out
    }

    fn eliminate(&mut self, i: usize, row: u32, col: u32) {
        let u = self
            .diffs[i]
            .get(row, col)
            .expect("pivot entry present")
            .clone();
        let u_inv = self.field.inv(&u);
        let other_cols: Vec<u32> = self.diffs[i]
            .rows
            .get(&row)
            .map(|cs| cs.iter().copied().filter(|&c| c != col).collect())
            .unwrap_or_default();
        let other_rows: Vec<(u32, F::Elem)> = self.diffs[i]
            .cols
            .get(&col)
            .map(|rs| {
                rs.iter()
                    .filter(|&(&r, _)| r != row)
                    .map(|(&r, v)| (r, v.clone()))
                    .collect()
            })
            .unwrap_or_default();
        for &c2 in &other_cols {
            let a = self.diffs[i].get(row, c2).expect("row entry").clone();
            let scale = self.field.mul(&u_inv, &a);
            for (r2, b) in &other_rows {
                let delta = self.field.neg(&self.field.mul(b, &scale));
                let next = match self.diffs[i].get(*r2, c2) {
                    Some(old) => self.field.add(old, &delta),
                    None => delta,
                };
                if self.field.is_zero(&next) {
                    self.diffs[i].unset(*r2, c2);
                } else {
                    self.diffs[i].set(*r2, c2, next);
                }
            }
        }
        self.diffs[i].remove_row(row);
        self.diffs[i].remove_col(col);
        if i + 1 <= self.mu {
            self.diffs[i + 1].remove_row(col);
        }
        if i >= 2 {
            self.diffs[i - 1].remove_col(row);
        }
        self.live[i].remove(&col);
        self.live[i - 1].remove(&row);
    }

    fn betti(&self) -> BettiTable {
        let mut beta: Vec<usize> = self.live.iter().map(|s| s.len()).collect();
        while beta.len() > 1 && *beta.last().unwrap() == 0 {
            beta.pop();
        }
        BettiTable { beta }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotOrder {
    Deterministic,
    Seeded(u64),
}

pub fn minimize<F: Field>(complex: Complex<F>) -> BettiTable {
    minimize_with(complex, PivotOrder::Deterministic)
}

pub fn minimize_with<F: Field>(mut complex: Complex<F>, order: PivotOrder) -> BettiTable {
    match order {
        PivotOrder::Deterministic => {
            while let Some((i, r, c)) = complex.find_pivot_deterministic() {
                complex.eliminate(i, r, c);
            }
        }
        PivotOrder::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let pivots = complex.all_pivots();
                if pivots.is_empty() {
                    break;
                }
                let (i, r, c) = pivots[rng.gen_range(0..pivots.len())];
                complex.eliminate(i, r, c);
            }
        }
    }
    complex.betti()
}

pub fn pd_oracle(ideal: &MonomialIdeal) -> Result<usize, OracleError> {
    Ok(minimize(build_taylor(ideal)?).pd())
}

pub fn pd_oracle_with_cap(ideal: &MonomialIdeal, cap: usize) -> Result<usize, OracleError> {
    Ok(minimize(build_taylor_with_cap(ideal, cap)?).pd())
}

pub fn betti_mod_p(ideal: &MonomialIdeal, p: u64) -> Result<BettiTable, OracleError> {
    let field = PrimeField::new(p)?;
    Ok(minimize(build_complex(ideal, field, DEFAULT_MU_CAP)?))
}

/// Exact grade: the minimum number of variables needed to divide every
/// generator (a minimum hitting set over the supports), by
/// branch-and-bound on the first unhit generator.
pub fn grade_oracle(ideal: &MonomialIdeal) -> Result<usize, OracleError> {
    if ideal.num_gens() == 0 {
        return Err(OracleError::EmptyIdeal);
    }
    if !ideal.is_minimal() {
        return Err(OracleError::NonMinimalGenerators);
    }
    fn search(
        gens: &[Monomial],
        hit: &mut BTreeSet<crate::ideal::VarId>,
        best: &mut usize,
    ) {
        if hit.len() >= *best {
            return;
        }
        let unhit = gens.iter().find(|m| m.vars().all(|v| !hit.contains(&v)));
        let Some(m) = unhit else {
            *best = hit.len();
            return;
        };
        for v in m.vars().collect::<Vec<_>>() {
            hit.insert(v);
            search(gens, hit, best);
            hit.remove(&v);
        }
    }
    let mut best = ideal
        .gens()
        .iter()
        .flat_map(|m| m.vars())
        .collect::<BTreeSet<_>>()
        .len();
    // the full alphabet always hits everything, so `best` starts feasible
    let mut hit = BTreeSet::new();
    search(ideal.gens(), &mut hit, &mut best);
    Ok(best)
}
