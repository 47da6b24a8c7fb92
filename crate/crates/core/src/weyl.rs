//! Weyl group elements, Bruhat order and minimal coset representatives.
//!
//! An element `w` is stored through `w(rho)`, which determines it uniquely
//! since `rho` is regular. The left descents of `w` are read off the
//! negative coordinates of `w(rho)`, so reduced words come for free.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{KqError, Result};
use crate::root_system::{CartanType, RootSystem, Weight};

/// Default cap on the size of enumerated coset spaces.
pub const DEFAULT_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    cartan_type: CartanType,
    rho_image: Vec<i64>,
    word: Vec<usize>,
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElement {
    /// Length first, then the canonical reduced word.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.word.cmp(&other.word))
    }
}

/// Which coset a representative is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `w W_J`
    Right,
    /// `W_J w`
    Left,
}

/// Reduces a weight to the dominant chamber through simple reflections,
/// returning the word `i_1 i_2 ... i_k` with `weight = s_i1 ... s_ik (dominant)`.
fn descend(rs: &RootSystem, weight: &Weight) -> (Weight, Vec<usize>) {
    let mut w = weight.clone();
    let mut word = Vec::new();
    while let Some(i) = w.0.iter().position(|&c| c < 0) {
        w = rs.reflect_weight(i, &w);
        word.push(i);
    }
    (w, word)
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement {
            cartan_type: rs.cartan_type,
            rho_image: rs.rho().0,
            word: Vec::new(),
        }
    }

    /// Element from the image of `rho`.
    pub fn from_rho_image(rs: &RootSystem, image: Weight) -> Result<Self> {
        if image.rank() != rs.rank() {
            return Err(KqError::RankMismatch {
                expected: rs.rank(),
                got: image.rank(),
            });
        }
        let (dominant, word) = descend(rs, &image);
        if dominant != rs.rho() {
            return Err(KqError::InvalidArgument(format!(
                "{:?} is not in the Weyl orbit of rho",
                image.0
            )));
        }
        Ok(WeylElement {
            cartan_type: rs.cartan_type,
            rho_image: image.0,
            word,
        })
    }

    /// Element `s_{w[0]} s_{w[1]} ...` from a zero-based word (not necessarily reduced).
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut w = rs.rho();
        for &i in word.iter().rev() {
            if i >= rs.rank() {
                return Err(KqError::InvalidArgument(format!(
                    "simple reflection s{} does not exist in {}",
                    i + 1,
                    rs.cartan_type
                )));
            }
            w = rs.reflect_weight(i, &w);
        }
        let (_, canonical) = descend(rs, &w);
        Ok(WeylElement {
            cartan_type: rs.cartan_type,
            rho_image: w.0,
            word: canonical,
        })
    }

    pub fn simple(rs: &RootSystem, i: usize) -> Result<Self> {
        Self::from_word(rs, &[i])
    }

    /// Longest element of the full Weyl group.
    pub fn longest(rs: &RootSystem) -> Self {
        let all: Vec<usize> = (0..rs.rank()).collect();
        Self::longest_of(rs, &all)
    }

    /// Longest element of the subgroup generated by `nodes`.
    pub fn longest_of(rs: &RootSystem, nodes: &[usize]) -> Self {
        let mut w = rs.rho();
        while let Some(&i) = nodes.iter().find(|&&i| w.0[i] > 0) {
            w = rs.reflect_weight(i, &w);
        }
        let (_, word) = descend(rs, &w);
        WeylElement {
            cartan_type: rs.cartan_type,
            rho_image: w.0,
            word,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    /// Canonical reduced word, zero-based.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn rho_image(&self) -> Weight {
        Weight(self.rho_image.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    fn check(&self, rs: &RootSystem) -> Result<()> {
        if self.cartan_type != rs.cartan_type {
            return Err(KqError::SystemMismatch);
        }
        Ok(())
    }

    /// `w(lambda)` for a weight.
    pub fn act_on_weight(&self, rs: &RootSystem, weight: &Weight) -> Weight {
        let mut w = weight.clone();
        for &i in self.word.iter().rev() {
            w = rs.reflect_weight(i, &w);
        }
        w
    }

    /// `w(v)` for an element of the root lattice, on simple-root coordinates.
    pub fn act_on_root(&self, rs: &RootSystem, root: &[i64]) -> Vec<i64> {
        let mut r = root.to_vec();
        for &i in self.word.iter().rev() {
            r = rs.reflect_root(i, &r);
        }
        r
    }

    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        Self::from_word(rs, &rev).expect("word indices are valid")
    }

    /// Group law.
    pub fn multiply(&self, rs: &RootSystem, other: &WeylElement) -> Result<Self> {
        self.check(rs)?;
        other.check(rs)?;
        let image = self.act_on_weight(rs, &other.rho_image());
        Self::from_rho_image(rs, image)
    }

    /// `s_i w`.
    pub fn left_mul_simple(&self, rs: &RootSystem, i: usize) -> Self {
        let image = rs.reflect_weight(i, &self.rho_image());
        Self::from_rho_image(rs, image).expect("reflection stays in the orbit")
    }

    /// `w s_i`.
    pub fn right_mul_simple(&self, rs: &RootSystem, i: usize) -> Self {
        let mut word = self.word.clone();
        word.push(i);
        Self::from_word(rs, &word).expect("valid index")
    }

    pub fn has_left_descent(&self, i: usize) -> bool {
        self.rho_image[i] < 0
    }

    /// Whether `w(alpha_i)` is negative.
    pub fn has_right_descent(&self, rs: &RootSystem, i: usize) -> bool {
        self.act_on_root(rs, &rs.simple_root(i))
            .iter()
            .any(|&c| c < 0)
    }

    /// Bruhat order through the left-descent recursion.
    pub fn bruhat_leq(&self, rs: &RootSystem, other: &WeylElement) -> Result<bool> {
        self.check(rs)?;
        other.check(rs)?;
        let mut u = self.clone();
        let mut v = other.clone();
        loop {
            if u.length() > v.length() {
                return Ok(false);
            }
            if v.is_identity() {
                return Ok(u.is_identity());
            }
            let s = v
                .rho_image
                .iter()
                .position(|&c| c < 0)
                .expect("non-identity elements have a left descent");
            if u.has_left_descent(s) {
                u = u.left_mul_simple(rs, s);
            }
            v = v.left_mul_simple(rs, s);
        }
    }

    /// Minimal-length representative of `w W_L` (right) or `W_L w` (left),
    /// where `L` is the Levi of `parabolic`.
    pub fn min_coset_rep(&self, rs: &RootSystem, parabolic: &ParabolicSubset, side: Side) -> Self {
        let levi = parabolic.levi_nodes(rs.rank());
        match side {
            Side::Left => {
                let mut w = self.clone();
                while let Some(&i) = levi.iter().find(|&&i| w.has_left_descent(i)) {
                    w = w.left_mul_simple(rs, i);
                }
                w
            }
            Side::Right => {
                // w W_L is read off w(varpi_P), whose stabiliser is W_L.
                let image = self.act_on_weight(rs, &parabolic.weight(rs.rank()));
                coset_rep_from_weight(rs, &image)
            }
        }
    }

    pub fn is_min_coset_rep(&self, rs: &RootSystem, parabolic: &ParabolicSubset) -> bool {
        parabolic
            .levi_nodes(rs.rank())
            .iter()
            .all(|&j| !self.has_right_descent(rs, j))
    }

    /// One-based dotted word, `s1.s3.s4`, or `e`.
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "e".to_string();
        }
        self.word
            .iter()
            .map(|i| format!("s{}", i + 1))
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

/// The minimal representative `w` of the coset with `w(varpi_P) = image`.
pub fn coset_rep_from_weight(rs: &RootSystem, image: &Weight) -> WeylElement {
    let (_, word) = descend(rs, image);
    WeylElement::from_word(rs, &word).expect("valid word")
}

/// Parses `s1.s3.s4` (one-based) or `e` into a zero-based word.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s == "e" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(['.', '*', ' '])
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let digits = tok
                .strip_prefix('s')
                .ok_or_else(|| KqError::InvalidArgument(format!("bad reflection `{tok}`")))?;
            let k: usize = digits
                .parse()
                .map_err(|_| KqError::InvalidArgument(format!("bad reflection `{tok}`")))?;
            if k == 0 {
                return Err(KqError::InvalidArgument("reflections are numbered from 1".into()));
            }
            Ok(k - 1)
        })
        .collect()
}

/// The set of crossed simple roots defining a parabolic, zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSubset {
    pub marked: BTreeSet<usize>,
}

impl ParabolicSubset {
    pub fn new(marked: impl IntoIterator<Item = usize>) -> Self {
        ParabolicSubset {
            marked: marked.into_iter().collect(),
        }
    }

    /// From one-based node labels.
    pub fn from_one_based(rank: usize, nodes: &[usize]) -> Result<Self> {
        let mut marked = BTreeSet::new();
        for &k in nodes {
            if k == 0 || k > rank {
                return Err(KqError::InvalidArgument(format!(
                    "node {k} outside 1..={rank}"
                )));
            }
            marked.insert(k - 1);
        }
        Ok(ParabolicSubset { marked })
    }

    pub fn all(rank: usize) -> Self {
        Self::new(0..rank)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.marked.iter().map(|i| i + 1).collect()
    }

    pub fn levi_nodes(&self, rank: usize) -> Vec<usize> {
        (0..rank).filter(|i| !self.marked.contains(i)).collect()
    }

    /// `varpi_P`, the sum of the fundamental weights of the marked nodes.
    pub fn weight(&self, rank: usize) -> Weight {
        Weight((0..rank).map(|i| i64::from(self.marked.contains(&i))).collect())
    }

    pub fn is_subset_of(&self, other: &ParabolicSubset) -> bool {
        self.marked.is_subset(&other.marked)
    }

    pub fn image(&self, perm: &[usize]) -> ParabolicSubset {
        ParabolicSubset::new(self.marked.iter().map(|&i| perm[i]))
    }
}

/// Size of `W^P`, from the order formula.
pub fn coset_count(rs: &RootSystem, parabolic: &ParabolicSubset) -> u128 {
    rs.cartan_type.weyl_order() / rs.subsystem_weyl_order(&parabolic.levi_nodes(rs.rank()))
}

/// All minimal-length representatives of `W / W_L`, sorted by length then word.
pub fn enumerate_wp(rs: &RootSystem, parabolic: &ParabolicSubset, cap: u128) -> Result<Vec<WeylElement>> {
    let required = coset_count(rs, parabolic);
    if required > cap {
        return Err(KqError::ResourceCap {
            what: format!("W^P for {} with Sigma(P) = {:?}", rs.cartan_type, parabolic.one_based()),
            required,
            cap,
        });
    }
    let start = parabolic.weight(rs.rank());
    let mut seen: HashMap<Weight, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(mu) = queue.pop_front() {
        for i in 0..rs.rank() {
            if mu.0[i] > 0 {
                let next = rs.reflect_weight(i, &mu);
                if seen.insert(next.clone(), ()).is_none() {
                    queue.push_back(next);
                }
            }
        }
        out.push(coset_rep_from_weight(rs, &mu));
    }
    out.sort();
    debug_assert_eq!(out.len() as u128, required);
    Ok(out)
}

/// `Sigma(P)` and `i(Sigma(Q))` are disjoint.
pub fn codim_two_criterion(rs: &RootSystem, p: &ParabolicSubset, q: &ParabolicSubset) -> bool {
    let inv = rs.weyl_involution();
    p.marked.is_disjoint(&q.image(&inv).marked)
}
