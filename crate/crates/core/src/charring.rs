//! The representation ring `R(T)`: Laurent polynomials in `e^lambda` with
//! `lambda` in the weight lattice (fundamental-weight coordinates).
//!
//! Exponents are packed into a `u64` with nine biased bits per coordinate,
//! most significant coordinate first. Integer order on the packed key is then
//! lexicographic order on exponents, which is a group order, and multiplying
//! monomials is a single addition. Coefficients are `i64` with checked
//! arithmetic; an overflow is reported, never wrapped.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{KqError, Result};
use crate::root_system::{RootSystem, Weight};

pub const MAX_RANK: usize = 7;
const LANE: u32 = 9;
const LANE_MASK: u64 = (1 << LANE) - 1;
const BIAS: i64 = 1 << (LANE - 1);
/// Largest exponent magnitude accepted at construction; sums of two such
/// exponents still fit a lane.
pub const EXPONENT_LIMIT: i64 = (1 << (LANE - 2)) - 1;

/// Coefficient type of [`LaurentPoly`].
pub type Coeff = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u64);

const fn zero_key() -> u64 {
    let mut k = 0u64;
    let mut i = 0;
    while i < MAX_RANK {
        k |= (BIAS as u64) << (LANE * (MAX_RANK - 1 - i) as u32);
        i += 1;
    }
    k
}

const ZERO_KEY: u64 = zero_key();

impl Monomial {
    pub const ONE: Monomial = Monomial(ZERO_KEY);

    pub fn from_exponents(exps: &[i64]) -> Result<Self> {
        if exps.len() > MAX_RANK {
            return Err(KqError::Unsupported(format!(
                "character ring supports rank at most {MAX_RANK}"
            )));
        }
        let mut k = 0u64;
        for i in 0..MAX_RANK {
            let e = exps.get(i).copied().unwrap_or(0);
            if e.abs() > EXPONENT_LIMIT {
                return Err(KqError::Overflow);
            }
            k |= ((e + BIAS) as u64) << (LANE * (MAX_RANK - 1 - i) as u32);
        }
        Ok(Monomial(k))
    }

    pub fn exponents(self, rank: usize) -> Vec<i64> {
        (0..rank)
            .map(|i| ((self.0 >> (LANE * (MAX_RANK - 1 - i) as u32)) & LANE_MASK) as i64 - BIAS)
            .collect()
    }

    fn max_abs(self) -> i64 {
        (0..MAX_RANK)
            .map(|i| ((((self.0 >> (LANE * i as u32)) & LANE_MASK) as i64) - BIAS).abs())
            .max()
            .unwrap_or(0)
    }

    #[inline]
    fn mul(self, other: Monomial) -> Monomial {
        Monomial(self.0.wrapping_add(other.0).wrapping_sub(ZERO_KEY))
    }

    #[inline]
    fn div(self, other: Monomial) -> Monomial {
        Monomial(self.0.wrapping_add(ZERO_KEY).wrapping_sub(other.0))
    }
}

/// An element of `Z[Lambda]`, kept in canonical sorted form.
///
/// `bound` is an upper bound for the largest exponent magnitude, kept so
/// that range checks before monomial arithmetic cost nothing in the common
/// case; it is recomputed exactly whenever it gets close to the limit.
#[derive(Debug, Clone)]
pub struct LaurentPoly {
    rank: usize,
    terms: Vec<(Monomial, Coeff)>,
    bound: i64,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl std::hash::Hash for LaurentPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.terms.hash(state);
    }
}

fn checked_add(a: Coeff, b: Coeff) -> Result<Coeff> {
    a.checked_add(b).ok_or(KqError::Overflow)
}

fn checked_mul(a: Coeff, b: Coeff) -> Result<Coeff> {
    a.checked_mul(b).ok_or(KqError::Overflow)
}

fn exact_bound(terms: &[(Monomial, Coeff)]) -> i64 {
    terms.iter().map(|t| t.0.max_abs()).max().unwrap_or(0)
}

/// Sorts and merges duplicate monomials, dropping zeros.
fn canonicalize(mut terms: Vec<(Monomial, Coeff)>) -> Result<Vec<(Monomial, Coeff)>> {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = checked_add(last.1, c)?,
            _ => {
                if out.last().is_some_and(|t| t.1 == 0) {
                    out.pop();
                }
                out.push((m, c));
            }
        }
    }
    if out.last().is_some_and(|t| t.1 == 0) {
        out.pop();
    }
    Ok(out)
}

/// Merges two sorted term lists as `a + sign * b`, where `b` is first
/// multiplied by the monomial `shift`.
fn merge_shifted(
    a: &[(Monomial, Coeff)],
    b: &[(Monomial, Coeff)],
    shift: Monomial,
    sign: Coeff,
) -> Result<Vec<(Monomial, Coeff)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bk = b[j].0.mul(shift);
        match a[i].0.cmp(&bk) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push((bk, checked_mul(sign, b[j].1)?));
                j += 1;
            }
            Ordering::Equal => {
                let c = checked_add(a[i].1, checked_mul(sign, b[j].1)?)?;
                if c != 0 {
                    out.push((bk, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push((t.0.mul(shift), checked_mul(sign, t.1)?));
    }
    Ok(out)
}

fn merge(a: &[(Monomial, Coeff)], b: &[(Monomial, Coeff)], sign: Coeff) -> Result<Vec<(Monomial, Coeff)>> {
    merge_shifted(a, b, Monomial::ONE, sign)
}

/// Merges sorted runs pairwise until one remains.
fn merge_runs(mut runs: Vec<Vec<(Monomial, Coeff)>>) -> Result<Vec<(Monomial, Coeff)>> {
    if runs.is_empty() {
        return Ok(Vec::new());
    }
    while runs.len() > 1 {
        let mut next = Vec::with_capacity(runs.len().div_ceil(2));
        let mut it = runs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(merge(&a, &b, 1)?),
                None => next.push(a),
            }
        }
        runs = next;
    }
    Ok(runs.pop().expect("one run left"))
}

impl LaurentPoly {
    fn from_sorted(rank: usize, terms: Vec<(Monomial, Coeff)>, bound: i64) -> Self {
        LaurentPoly { rank, terms, bound }
    }

    fn from_sorted_exact(rank: usize, terms: Vec<(Monomial, Coeff)>) -> Self {
        let bound = exact_bound(&terms);
        LaurentPoly { rank, terms, bound }
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_sorted(rank, Vec::new(), 0)
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, 1)
    }

    pub fn constant(rank: usize, c: Coeff) -> Self {
        let terms = if c == 0 { Vec::new() } else { vec![(Monomial::ONE, c)] };
        Self::from_sorted(rank, terms, 0)
    }

    /// `coeff * e^weight`.
    pub fn monomial(weight: &Weight, coeff: Coeff) -> Result<Self> {
        let m = Monomial::from_exponents(&weight.0)?;
        let terms = if coeff == 0 { Vec::new() } else { vec![(m, coeff)] };
        Ok(Self::from_sorted_exact(weight.rank(), terms))
    }

    /// `1 - e^weight`.
    pub fn one_minus(weight: &Weight) -> Result<Self> {
        Self::one(weight.rank()).sub(&Self::monomial(weight, 1)?)
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, Coeff)>>(rank: usize, terms: I) -> Result<Self> {
        let mut raw = Vec::new();
        for (w, c) in terms {
            if w.rank() != rank {
                return Err(KqError::RankMismatch { expected: rank, got: w.rank() });
            }
            raw.push((Monomial::from_exponents(&w.0)?, c));
        }
        Ok(Self::from_sorted_exact(rank, canonicalize(raw)?))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (Monomial::ONE, 1)
    }

    /// Terms as `(weight, coefficient)` in ascending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Weight, Coeff)> + '_ {
        self.terms.iter().map(move |&(m, c)| (Weight(m.exponents(self.rank)), c))
    }

    /// Largest exponent magnitude.
    pub fn max_abs_exponent(&self) -> i64 {
        exact_bound(&self.terms)
    }

    fn check_rank(&self, other: &LaurentPoly) -> Result<()> {
        if self.rank != other.rank {
            return Err(KqError::RankMismatch { expected: self.rank, got: other.rank });
        }
        Ok(())
    }

    /// A bound for the exponents after adding `extra` to every exponent
    /// magnitude, or an overflow error.
    fn range_after(&self, extra: i64) -> Result<i64> {
        if self.bound + extra <= EXPONENT_LIMIT {
            return Ok(self.bound + extra);
        }
        let exact = self.max_abs_exponent();
        if exact + extra <= EXPONENT_LIMIT {
            Ok(exact + extra)
        } else {
            Err(KqError::Overflow)
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<Self> {
        self.check_rank(other)?;
        let terms = merge(&self.terms, &other.terms, 1)?;
        Ok(Self::from_sorted(self.rank, terms, self.bound.max(other.bound)))
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<Self> {
        self.check_rank(other)?;
        let terms = merge(&self.terms, &other.terms, -1)?;
        Ok(Self::from_sorted(self.rank, terms, self.bound.max(other.bound)))
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|&(m, c)| (m, -c)).collect();
        Self::from_sorted(self.rank, terms, self.bound)
    }

    /// `e^weight * self`.
    pub fn shift(&self, weight: &Weight) -> Result<Self> {
        let m = Monomial::from_exponents(&weight.0)?;
        self.shift_monomial(m)
    }

    fn shift_monomial(&self, m: Monomial) -> Result<Self> {
        let bound = self.range_after(m.max_abs())?;
        let terms = self.terms.iter().map(|&(t, c)| (t.mul(m), c)).collect();
        Ok(Self::from_sorted(self.rank, terms, bound))
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<Self> {
        self.check_rank(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let small_bound = small.max_abs_exponent();
        let bound = big.range_after(small_bound)?;
        if small.len() == 1 {
            let (m, c) = small.terms[0];
            let terms = big
                .terms
                .iter()
                .map(|&(t, d)| Ok((t.mul(m), checked_mul(c, d)?)))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::from_sorted(self.rank, terms, bound));
        }
        if small.len() <= 8 {
            let runs = small
                .terms
                .iter()
                .map(|&(m, c)| {
                    big.terms
                        .iter()
                        .map(|&(t, d)| Ok((t.mul(m), checked_mul(c, d)?)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let mut terms = merge_runs(runs)?;
            terms.retain(|t| t.1 != 0);
            return Ok(Self::from_sorted(self.rank, terms, bound));
        }
        let mut raw = Vec::with_capacity(small.len() * big.len());
        for &(m, c) in &small.terms {
            for &(t, d) in &big.terms {
                raw.push((t.mul(m), checked_mul(c, d)?));
            }
        }
        Ok(Self::from_sorted(self.rank, canonicalize(raw)?, bound))
    }

    pub fn scale(&self, k: Coeff) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero(self.rank));
        }
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| Ok((m, checked_mul(c, k)?)))
            .collect::<Result<_>>()?;
        Ok(Self::from_sorted(self.rank, terms, self.bound))
    }

    /// `self * (1 - e^weight)`.
    pub fn mul_one_minus(&self, weight: &Weight) -> Result<Self> {
        let g = Monomial::from_exponents(&weight.0)?;
        let bound = self.range_after(g.max_abs())?;
        let terms = merge_shifted(&self.terms, &self.terms, g, -1)?;
        Ok(Self::from_sorted(self.rank, terms, bound))
    }

    /// Exact quotient by `1 - e^weight`.
    pub fn div_one_minus(&self, weight: &Weight) -> Result<Self> {
        if weight.rank() != self.rank {
            return Err(KqError::RankMismatch { expected: self.rank, got: weight.rank() });
        }
        let g = Monomial::from_exponents(&weight.0)?;
        // Carries stay inside the box of the dividend plus one step.
        self.range_after(g.max_abs())?;
        match g.cmp(&Monomial::ONE) {
            Ordering::Equal => Err(KqError::NonExactDivision("division by zero".into())),
            Ordering::Greater => self.div_one_minus_positive(g),
            Ordering::Less => {
                // 1 - e^g = -e^g (1 - e^-g)
                let inv = Monomial::ONE.div(g);
                let q = self.div_one_minus_positive(inv)?;
                Ok(q.shift_monomial(inv)?.neg())
            }
        }
    }

    /// Solves `q - q e^g = self` for `g` lexicographically positive:
    /// `q[m] = self[m] + q[m - g]`, swept in ascending order. The quotient's
    /// Newton polytope lies inside the dividend's, so `bound` carries over.
    fn div_one_minus_positive(&self, g: Monomial) -> Result<Self> {
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(self.terms.len());
        let mut carry: VecDeque<(Monomial, Coeff)> = VecDeque::new();
        let mut i = 0;
        while i < self.terms.len() {
            let pm = self.terms[i].0;
            let key = match carry.front() {
                Some(&(cm, _)) if cm < pm => cm,
                _ => pm,
            };
            let mut c: Coeff = 0;
            if key == pm {
                c = self.terms[i].1;
                i += 1;
            }
            if carry.front().is_some_and(|&(cm, _)| cm == key) {
                c = checked_add(c, carry.pop_front().expect("front exists").1)?;
            }
            if c != 0 {
                out.push((key, c));
                carry.push_back((key.mul(g), c));
            }
        }
        if !carry.is_empty() {
            return Err(KqError::NonExactDivision(format!(
                "not divisible by 1 - e^{:?}",
                g.exponents(self.rank)
            )));
        }
        Ok(Self::from_sorted(self.rank, out, self.bound))
    }

    /// Exact quotient `self / q`; fails when `q` does not divide `self`.
    pub fn exact_div(&self, q: &LaurentPoly) -> Result<Self> {
        self.check_rank(q)?;
        match q.terms.as_slice() {
            [] => Err(KqError::NonExactDivision("division by zero".into())),
            &[(m, c)] => {
                let inv = Monomial::ONE.div(m);
                let bound = self.range_after(m.max_abs())?;
                let mut terms = Vec::with_capacity(self.len());
                for &(t, d) in &self.terms {
                    if d % c != 0 {
                        return Err(KqError::NonExactDivision(format!("coefficient {d} by {c}")));
                    }
                    terms.push((t.mul(inv), d / c));
                }
                Ok(Self::from_sorted(self.rank, terms, bound))
            }
            &[(m1, c1), (m2, c2)] if c1 == -c2 => {
                // c1 e^m1 (1 - e^(m2 - m1))
                let g = Weight(m2.div(m1).exponents(self.rank));
                let unit = Self::from_sorted_exact(self.rank, vec![(m1, c1)]);
                self.div_one_minus(&g)?.exact_div(&unit)
            }
            _ => self.long_division(q),
        }
    }

    /// Leading-term elimination from the top; the quotient support is bounded
    /// below by `lo(self) - lo(q)`, which makes the loop terminate.
    fn long_division(&self, q: &LaurentPoly) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        self.range_after(q.max_abs_exponent())?;
        let (q_lo, _) = q.terms[0];
        let (q_hi, q_lc) = *q.terms.last().expect("nonempty");
        let floor = self.terms[0].0.div(q_lo);
        let mut rem: BTreeMap<Monomial, Coeff> = self.terms.iter().copied().collect();
        let mut quot = Vec::new();
        while let Some((&top, &c)) = rem.iter().next_back() {
            let m = top.div(q_hi);
            if m < floor || c % q_lc != 0 {
                return Err(KqError::NonExactDivision("long division leaves a remainder".into()));
            }
            let k = c / q_lc;
            quot.push((m, k));
            for &(t, d) in &q.terms {
                let key = t.mul(m);
                let entry = rem.entry(key).or_insert(0);
                *entry = checked_add(*entry, -checked_mul(k, d)?)?;
                if *entry == 0 {
                    rem.remove(&key);
                }
            }
        }
        quot.reverse();
        Ok(Self::from_sorted_exact(self.rank, quot))
    }

    /// Sum of the coefficients (the non-equivariant specialisation).
    pub fn evaluate_at_one(&self) -> Result<i128> {
        Ok(self.terms.iter().map(|t| t.1 as i128).sum())
    }

    /// Image under the simple reflection `s_i`, `lambda -> lambda - lambda_i alpha_i`.
    ///
    /// Terms sharing the coordinate `lambda_i` are translated by the same
    /// monomial, which preserves their order; the reflection is therefore a
    /// merge of sorted runs rather than a full sort.
    pub fn reflect(&self, rs: &RootSystem, i: usize) -> Result<Self> {
        if i >= self.rank || rs.rank() != self.rank {
            return Err(KqError::RankMismatch { expected: self.rank, got: rs.rank() });
        }
        let alpha: Vec<i64> = rs.root_to_weight(&rs.simple_root(i)).0;
        let alpha_max = alpha.iter().map(|a| a.abs()).max().unwrap_or(0);
        let spread = self.max_abs_exponent();
        if spread * (1 + alpha_max) > EXPONENT_LIMIT {
            return Err(KqError::Overflow);
        }
        let lane = LANE * (MAX_RANK - 1 - i) as u32;
        let mut runs: BTreeMap<i64, Vec<(Monomial, Coeff)>> = BTreeMap::new();
        for &(m, c) in &self.terms {
            let k = ((m.0 >> lane) & LANE_MASK) as i64 - BIAS;
            runs.entry(k).or_default().push((m, c));
        }
        let mut shifted = Vec::with_capacity(runs.len());
        for (k, mut run) in runs {
            if k != 0 {
                let step: Vec<i64> = alpha.iter().map(|a| -k * a).collect();
                let shift = Monomial::from_exponents(&step)?;
                for t in run.iter_mut() {
                    t.0 = t.0.mul(shift);
                }
            }
            shifted.push(run);
        }
        let terms = merge_runs(shifted)?;
        Ok(Self::from_sorted(self.rank, terms, spread * (1 + alpha_max)))
    }

    /// Image under a Weyl group element given by a word (applied right to left).
    pub fn act(&self, rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut p = self.clone();
        for &i in word.iter().rev() {
            p = p.reflect(rs, i)?;
        }
        Ok(p)
    }

    /// `e^lambda -> e^-lambda`.
    pub fn dual(&self) -> Self {
        let terms = self.terms.iter().rev().map(|&(m, c)| (Monomial::ONE.div(m), c)).collect();
        Self::from_sorted(self.rank, terms, self.bound)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(w, c)| {
                if w.is_zero() {
                    format!("{c}")
                } else {
                    format!("{c}*e^{:?}", w.0)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn basic_identities() {
        let a = w(&[2, -1]);
        let one_minus = LaurentPoly::one_minus(&a).unwrap();
        let one_plus = LaurentPoly::one(2).add(&LaurentPoly::monomial(&a, 1).unwrap()).unwrap();
        let prod = one_minus.mul(&one_plus).unwrap();
        assert_eq!(prod, LaurentPoly::one_minus(&a.scale(2)).unwrap());
        assert_eq!(prod.div_one_minus(&a).unwrap(), one_plus);
        assert_eq!(prod.exact_div(&one_minus).unwrap(), one_plus);
        assert_eq!(prod.exact_div(&LaurentPoly::one(2)).unwrap(), prod);
        assert_eq!(prod.mul(&LaurentPoly::one(2)).unwrap(), prod);
        assert_eq!(one_minus.evaluate_at_one().unwrap(), 0);
        assert!(LaurentPoly::one(2).add(&LaurentPoly::zero(3)).is_err());
    }

    #[test]
    fn negative_direction_division() {
        let a = w(&[-1, 3]);
        let p = LaurentPoly::monomial(&w(&[4, 4]), 5).unwrap().mul_one_minus(&a).unwrap();
        assert_eq!(p.div_one_minus(&a).unwrap(), LaurentPoly::monomial(&w(&[4, 4]), 5).unwrap());
        let not_divisible = LaurentPoly::monomial(&w(&[1, 0]), 1).unwrap();
        assert!(not_divisible.div_one_minus(&a).is_err());
        assert!(LaurentPoly::one(2).div_one_minus(&w(&[0, 0])).is_err());
    }

    #[test]
    fn long_division_detects_remainder() {
        let q = LaurentPoly::from_terms(2, [(w(&[0, 0]), 1), (w(&[1, 0]), 2), (w(&[0, 1]), 3)]).unwrap();
        let p = LaurentPoly::from_terms(2, [(w(&[2, 0]), 1), (w(&[-1, 1]), 1)]).unwrap();
        let prod = p.mul(&q).unwrap();
        assert_eq!(prod.exact_div(&q).unwrap(), p);
        let off = prod.add(&LaurentPoly::one(2)).unwrap();
        assert!(matches!(off.exact_div(&q), Err(KqError::NonExactDivision(_))));
    }

    #[test]
    fn d4_half_spin_square() {
        // Half-spin weights of D4 in fundamental coordinates: the W-orbit of varpi_4.
        let rs = RootSystem::new('D', 4).unwrap();
        let orbit = weyl_orbit(&rs, &w(&[0, 0, 0, 1]));
        assert_eq!(orbit.len(), 8);
        let chi = LaurentPoly::from_terms(4, orbit.iter().map(|x| (x.clone(), 1))).unwrap();
        assert_eq!(chi.evaluate_at_one().unwrap(), 8);
        // Oracle: the square is the multiset of pairwise weight sums.
        let mut counts: std::collections::BTreeMap<Vec<i64>, Coeff> = Default::default();
        for a in &orbit {
            for b in &orbit {
                *counts.entry(a.add(b).0).or_default() += 1;
            }
        }
        let oracle = LaurentPoly::from_terms(4, counts.into_iter().map(|(k, v)| (Weight(k), v))).unwrap();
        assert_eq!(chi.mul(&chi).unwrap(), oracle);
        // S^2 + L^2 of the half-spin: 2*varpi_4 (35-dim) + varpi_2 (28) + 1... as dimensions.
        assert_eq!(oracle.evaluate_at_one().unwrap(), 64);
    }

    /// Weight multiset of the irreducible module with minuscule highest weight.
    fn weyl_orbit(rs: &RootSystem, hw: &Weight) -> Vec<Weight> {
        let mut seen = std::collections::BTreeSet::from([hw.clone()]);
        let mut stack = vec![hw.clone()];
        while let Some(x) = stack.pop() {
            for i in 0..rs.rank() {
                let y = rs.reflect_weight(i, &x);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    #[test]
    fn e6_minuscule_character_has_dimension_27() {
        let rs = RootSystem::new('E', 6).unwrap();
        let orbit = weyl_orbit(&rs, &w(&[1, 0, 0, 0, 0, 0]));
        let chi = LaurentPoly::from_terms(6, orbit.into_iter().map(|x| (x, 1))).unwrap();
        assert_eq!(chi.evaluate_at_one().unwrap(), 27);
    }

    #[test]
    fn reflection_action() {
        let rs = RootSystem::new('A', 2).unwrap();
        let p = LaurentPoly::monomial(&w(&[1, 0]), 1).unwrap();
        assert_eq!(p.reflect(&rs, 0).unwrap(), LaurentPoly::monomial(&w(&[-1, 1]), 1).unwrap());
        assert_eq!(p.reflect(&rs, 0).unwrap().reflect(&rs, 0).unwrap(), p);
    }

    fn arb_poly(rank: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-4i64..=4, rank), -5i64..=5), 0..8).prop_map(
            move |terms| LaurentPoly::from_terms(rank, terms.into_iter().map(|(e, c)| (Weight(e), c))).unwrap(),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a.clone());
        }

        #[test]
        fn division_round_trip(a in arb_poly(3), b in arb_poly(3)) {
            prop_assume!(!b.is_zero());
            let p = a.mul(&b).unwrap();
            prop_assert_eq!(p.exact_div(&b).unwrap(), a);
        }

        #[test]
        fn specialisation_is_a_homomorphism(a in arb_poly(2), b in arb_poly(2)) {
            let ea = a.evaluate_at_one().unwrap();
            let eb = b.evaluate_at_one().unwrap();
            prop_assert_eq!(a.mul(&b).unwrap().evaluate_at_one().unwrap(), ea * eb);
            prop_assert_eq!(a.add(&b).unwrap().evaluate_at_one().unwrap(), ea + eb);
        }
    }
}
