//! Torus-equivariant K-theory of `G/P` by fixed-point localization.
//!
//! Conventions. The Schubert variety `X(w)` is the closure of `B w P / P`,
//! of dimension `l(w)`. The tangent weights at the fixed point `v` are
//! `v(-beta)` for `beta` a positive root outside the Levi of `P`, and
//!
//! ```text
//! chi(f) = sum_v f(v) / prod_{tangent weights t at v} (1 - e^{-t}).
//! ```
//!
//! The point class at `e` is `prod_beta (1 - e^beta)`, and the other
//! Schubert classes are produced by the left Demazure recursion
//! `[O_{X(s_i w)}] = d_i [O_{X(w)}]` whenever `s_i w > w`, with
//!
//! ```text
//! (d_i f)(z) = (f(z) - e^{alpha_i} s_i(f(s_i z))) / (1 - e^{alpha_i}).
//! ```

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::charring::LaurentPoly;
use crate::error::{KqError, Result};
use crate::root_system::{pairing, RootSystem, Weight};
use crate::weyl::{enumerate_wp, ParabolicSubset, Side, WeylElement};

/// Enumeration cap for the fixed-point sets handled here.
pub const FIXED_POINT_CAP: u128 = 100_000;

/// A tangent weight at a fixed point, as a signed positive root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct SignedRoot {
    root: usize,
    negative: bool,
}

/// The homogeneous space `G/P` with its fixed points and tangent data.
#[derive(Debug)]
pub struct HomSpace {
    rs: RootSystem,
    parabolic: ParabolicSubset,
    fixed_points: Vec<WeylElement>,
    /// `v(varpi_P)` for each fixed point; this identifies the coset.
    keys: Vec<Weight>,
    index: HashMap<Weight, usize>,
    /// Positive roots as weights.
    root_weights: Vec<Weight>,
    /// Indices of the positive roots outside the Levi.
    unipotent: Vec<usize>,
    /// `v(beta)` for `beta` in `unipotent`, for every fixed point `v`.
    moved: Vec<Vec<SignedRoot>>,
    /// `left[i][v]`: the fixed point `s_i v`.
    left: Vec<Vec<usize>>,
}

impl HomSpace {
    pub fn new(rs: &RootSystem, parabolic: &ParabolicSubset) -> Result<Arc<Self>> {
        Self::with_cap(rs, parabolic, FIXED_POINT_CAP)
    }

    pub fn with_cap(rs: &RootSystem, parabolic: &ParabolicSubset, cap: u128) -> Result<Arc<Self>> {
        let rank = rs.rank();
        if let Some(&bad) = parabolic.marked.iter().find(|&&i| i >= rank) {
            return Err(KqError::InvalidArgument(format!(
                "node {} outside 1..={rank}",
                bad + 1
            )));
        }
        let fixed_points = enumerate_wp(rs, parabolic, cap)?;
        let varpi = parabolic.weight(rank);
        let keys: Vec<Weight> = fixed_points.iter().map(|v| v.act_on_weight(rs, &varpi)).collect();
        let index: HashMap<Weight, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let root_index: HashMap<&[i64], usize> = rs
            .positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.as_slice(), i))
            .collect();
        let root_weights = rs.positive_roots.iter().map(|r| rs.root_to_weight(r)).collect();
        let unipotent: Vec<usize> = (0..rs.positive_roots.len())
            .filter(|&i| parabolic.marked.iter().any(|&m| rs.positive_roots[i][m] != 0))
            .collect();
        let moved = fixed_points
            .iter()
            .map(|v| {
                unipotent
                    .iter()
                    .map(|&b| {
                        let img = v.act_on_root(rs, &rs.positive_roots[b]);
                        let negative = img.iter().any(|&c| c < 0);
                        let pos: Vec<i64> = if negative { img.iter().map(|c| -c).collect() } else { img };
                        SignedRoot {
                            root: root_index[pos.as_slice()],
                            negative,
                        }
                    })
                    .collect()
            })
            .collect();
        let left = (0..rank)
            .map(|i| keys.iter().map(|k| index[&rs.reflect_weight(i, k)]).collect())
            .collect();
        Ok(Arc::new(HomSpace {
            rs: rs.clone(),
            parabolic: parabolic.clone(),
            fixed_points,
            keys,
            index,
            root_weights,
            unipotent,
            moved,
            left,
        }))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.parabolic
    }

    pub fn fixed_points(&self) -> &[WeylElement] {
        &self.fixed_points
    }

    pub fn len(&self) -> usize {
        self.fixed_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixed_points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.unipotent.len()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Position of the coset `w P` among the fixed points.
    pub fn coset_index(&self, w: &WeylElement) -> usize {
        let key = w.act_on_weight(&self.rs, &self.parabolic.weight(self.rank()));
        self.index[&key]
    }

    /// Position of `w`, which must be a minimal coset representative.
    pub fn index_of(&self, w: &WeylElement) -> Result<usize> {
        if w.cartan_type() != self.rs.cartan_type {
            return Err(KqError::SystemMismatch);
        }
        let i = self.coset_index(w);
        if &self.fixed_points[i] != w {
            return Err(KqError::InvalidArgument(format!(
                "{w} is not a minimal coset representative for Sigma(P) = {:?}",
                self.parabolic.one_based()
            )));
        }
        Ok(i)
    }

    /// The fixed point `s_i v`.
    pub fn left_neighbor(&self, i: usize, v: usize) -> usize {
        self.left[i][v]
    }

    /// Index of the longest element of `W^P`.
    pub fn top(&self) -> usize {
        self.fixed_points.len() - 1
    }

    /// Tangent weights at fixed point `v`.
    pub fn tangent_weights(&self, v: usize) -> Vec<Weight> {
        self.moved[v]
            .iter()
            .map(|s| {
                let w = &self.root_weights[s.root];
                if s.negative {
                    w.clone()
                } else {
                    w.neg()
                }
            })
            .collect()
    }

    /// `prod_t (1 - e^{-t})` over the tangent weights at `v`.
    pub fn euler_class(&self, v: usize) -> Result<LaurentPoly> {
        let mut e = LaurentPoly::one(self.rank());
        for t in self.tangent_weights(v) {
            e = e.mul_one_minus(&t.neg())?;
        }
        Ok(e)
    }

    /// Indices `v` with `v <= w` in the Bruhat order.
    pub fn lower_interval(&self, w: usize) -> Vec<bool> {
        let mut below = vec![false; self.len()];
        below[w] = true;
        let mut by_length: Vec<usize> = (0..self.len()).collect();
        by_length.sort_by_key(|&v| std::cmp::Reverse(self.fixed_points[v].length()));
        for &v in &by_length {
            if !below[v] {
                continue;
            }
            // Bruhat order on W^P is generated by length-decreasing
            // reflections, so walking down along them sweeps the interval.
            for s in &self.moved[v] {
                let u = self.reflect_by_root(v, s.root);
                if self.fixed_points[u].length() < self.fixed_points[v].length() {
                    below[u] = true;
                }
            }
        }
        below
    }

    /// The fixed point `s_gamma v` for a positive root `gamma`.
    fn reflect_by_root(&self, v: usize, gamma: usize) -> usize {
        let key = &self.keys[v];
        let coroot = self.rs.coroot(&self.rs.positive_roots[gamma]);
        let k = pairing(key, &coroot).expect("ranks agree");
        let image = key.sub(&self.root_weights[gamma].scale(k));
        self.index[&image]
    }

    /// Bruhat comparison of two fixed points.
    pub fn bruhat_leq(&self, u: usize, w: usize) -> bool {
        self.fixed_points[u]
            .bruhat_leq(&self.rs, &self.fixed_points[w])
            .expect("same root system")
    }
}

/// An equivariant K-class, given by its restrictions to the fixed points.
#[derive(Debug, Clone)]
pub struct KClass {
    space: Arc<HomSpace>,
    values: Vec<LaurentPoly>,
}

impl PartialEq for KClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) && self.values == other.values
    }
}

impl KClass {
    pub fn from_values(space: &Arc<HomSpace>, values: Vec<LaurentPoly>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(KqError::Shape(format!(
                "{} values for {} fixed points",
                values.len(),
                space.len()
            )));
        }
        if let Some(p) = values.iter().find(|p| p.rank() != space.rank()) {
            return Err(KqError::RankMismatch {
                expected: space.rank(),
                got: p.rank(),
            });
        }
        Ok(KClass {
            space: space.clone(),
            values,
        })
    }

    /// The structure sheaf of the whole space.
    pub fn one(space: &Arc<HomSpace>) -> Self {
        KClass {
            space: space.clone(),
            values: vec![LaurentPoly::one(space.rank()); space.len()],
        }
    }

    pub fn space(&self) -> &Arc<HomSpace> {
        &self.space
    }

    pub fn values(&self) -> &[LaurentPoly] {
        &self.values
    }

    pub fn value(&self, v: usize) -> &LaurentPoly {
        &self.values[v]
    }

    fn same_space(&self, other: &KClass) -> Result<()> {
        if !Arc::ptr_eq(&self.space, &other.space) {
            return Err(KqError::SpaceMismatch);
        }
        Ok(())
    }

    pub fn multiply(&self, other: &KClass) -> Result<KClass> {
        self.same_space(other)?;
        let values = self
            .values
            .par_iter()
            .zip(other.values.par_iter())
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(KClass {
            space: self.space.clone(),
            values,
        })
    }

    pub fn add(&self, other: &KClass) -> Result<KClass> {
        self.same_space(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(KClass {
            space: self.space.clone(),
            values,
        })
    }

    /// Multiplies every value by a scalar from `R(T)`.
    pub fn scale(&self, c: &LaurentPoly) -> Result<KClass> {
        let values = self.values.iter().map(|a| a.mul(c)).collect::<Result<Vec<_>>>()?;
        Ok(KClass {
            space: self.space.clone(),
            values,
        })
    }

    /// The left Demazure operator `d_i`.
    pub fn demazure(&self, i: usize) -> Result<KClass> {
        let sp = &self.space;
        let rs = &sp.rs;
        let alpha = rs.root_to_weight(&rs.simple_root(i));
        let e_alpha = LaurentPoly::monomial(&alpha, 1)?;
        let rank = sp.rank();
        let values = (0..sp.len())
            .into_par_iter()
            .map(|z| {
                let f = &self.values[z];
                let g = &self.values[sp.left[i][z]];
                if f.is_zero() && g.is_zero() {
                    return Ok(LaurentPoly::zero(rank));
                }
                let num = f.sub(&g.reflect(rs, i)?.mul(&e_alpha)?)?;
                num.div_one_minus(&alpha)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KClass {
            space: sp.clone(),
            values,
        })
    }

    /// Checks the GKM divisibility condition along every T-stable curve.
    pub fn check_gkm(&self) -> Result<()> {
        let sp = &self.space;
        (0..sp.len()).into_par_iter().try_for_each(|v| {
            for s in &sp.moved[v] {
                let u = sp.reflect_by_root(v, s.root);
                if u <= v {
                    continue;
                }
                let diff = self.values[v].sub(&self.values[u])?;
                if diff.is_zero() {
                    continue;
                }
                diff.div_one_minus(&sp.root_weights[s.root]).map_err(|_| {
                    KqError::Consistency(format!(
                        "GKM condition fails on the curve {} -- {}",
                        sp.fixed_points[v], sp.fixed_points[u]
                    ))
                })?;
            }
            Ok(())
        })
    }

    /// Non-equivariant restriction values.
    pub fn specialize(&self) -> Result<Vec<i128>> {
        self.values.iter().map(LaurentPoly::evaluate_at_one).collect()
    }

    /// Pullback along `G/R -> G/P`, where `Sigma(R)` contains `Sigma(P)`.
    pub fn pullback(&self, finer: &Arc<HomSpace>) -> Result<KClass> {
        let sp = &self.space;
        if finer.rs != sp.rs {
            return Err(KqError::SystemMismatch);
        }
        if !sp.parabolic.is_subset_of(&finer.parabolic) {
            return Err(KqError::InvalidArgument(format!(
                "Sigma(R) = {:?} does not contain Sigma(P) = {:?}",
                finer.parabolic.one_based(),
                sp.parabolic.one_based()
            )));
        }
        let values = finer
            .fixed_points
            .iter()
            .map(|v| self.values[sp.coset_index(v)].clone())
            .collect();
        Ok(KClass {
            space: finer.clone(),
            values,
        })
    }

    /// The equivariant Euler characteristic.
    pub fn euler_char(&self) -> Result<LaurentPoly> {
        euler_char(self)
    }
}

/// The point class `[O_{X(e)}]`.
pub fn point_class(space: &Arc<HomSpace>) -> Result<KClass> {
    let rank = space.rank();
    let mut values = vec![LaurentPoly::zero(rank); space.len()];
    values[0] = space.euler_class(0)?;
    Ok(KClass {
        space: space.clone(),
        values,
    })
}

/// `[O_{X(w)}]` for `w` in `W^P`.
pub fn schubert_class(space: &Arc<HomSpace>, w: &WeylElement) -> Result<KClass> {
    let mut idx = space.index_of(w)?;
    // Peel left descents: w = s_{i_1} ... s_{i_k} with each prefix in W^P.
    let mut path = Vec::new();
    while let Some((i, parent)) = demazure_parent(space, idx) {
        path.push(i);
        idx = parent;
    }
    let mut class = point_class(space)?;
    for &i in path.iter().rev() {
        class = class.demazure(i)?;
    }
    Ok(class)
}

/// The parent of `w` in the Demazure tree: `s_i w` for the first left descent `i`.
fn demazure_parent(space: &HomSpace, w: usize) -> Option<(usize, usize)> {
    let v = &space.fixed_points[w];
    (0..space.rank())
        .find(|&i| v.has_left_descent(i))
        .map(|i| (i, space.left[i][w]))
}

/// Visits every Schubert class of the space, walking the Demazure tree
/// (each class is `d_i` of its parent) depth first, so only one class per
/// level of the current branch is held in memory.
pub fn for_each_schubert_class<F>(space: &Arc<HomSpace>, mut visit: F) -> Result<()>
where
    F: FnMut(usize, &KClass) -> Result<()>,
{
    let mut children: Vec<Vec<(usize, usize)>> = vec![Vec::new(); space.len()];
    for w in 1..space.len() {
        let (i, parent) = demazure_parent(space, w).expect("non-identity elements have a left descent");
        children[parent].push((i, w));
    }
    let mut stack: Vec<(usize, KClass, usize)> = vec![(0, point_class(space)?, 0)];
    visit(0, &stack[0].1)?;
    while let Some(top) = stack.last_mut() {
        let (w, _, next) = *top;
        if next == children[w].len() {
            stack.pop();
            continue;
        }
        top.2 += 1;
        let (i, child) = children[w][next];
        let class = top.1.demazure(i)?;
        visit(child, &class)?;
        stack.push((child, class, 0));
    }
    Ok(())
}

/// A partial localization sum `numerator / prod_{gamma in denom} (1 - e^gamma)`
/// over the fixed points in `members`, `gamma` ranging over positive roots.
struct Fraction {
    numerator: LaurentPoly,
    denom: Vec<bool>,
    members: Vec<usize>,
}

/// Node order used for the nested Levi orbits in `euler_char`: farthest
/// from the marked nodes first, so the early orbits stay small.
fn node_order(rs: &RootSystem, parabolic: &ParabolicSubset) -> Vec<usize> {
    let n = rs.rank();
    let mut dist = vec![usize::MAX; n];
    let mut queue: std::collections::VecDeque<usize> = parabolic.marked.iter().copied().collect();
    for &m in &queue {
        dist[m] = 0;
    }
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && rs.cartan[i][j] != 0 && dist[j] == usize::MAX {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(dist[i]), i));
    order
}

/// The summand at `v`, reduced by every Euler-class factor it is known to
/// cancel: along a T-stable curve `v -- s_gamma v` whose other end carries
/// the value zero, the GKM condition makes `f(v)` divisible by that factor.
fn initial_fraction(class: &KClass, v: usize) -> Result<Option<Fraction>> {
    let sp = &*class.space;
    let f = &class.values[v];
    if f.is_zero() {
        return Ok(None);
    }
    let mut numerator = f.clone();
    let mut denom = vec![false; sp.root_weights.len()];
    let mut negatives = 0usize;
    let mut shift = Weight::zero(sp.rank());
    for s in &sp.moved[v] {
        // The factor is 1 - e^{v(beta)}, with v(beta) = +-gamma.
        let gamma = &sp.root_weights[s.root];
        let partner = sp.reflect_by_root(v, s.root);
        if class.values[partner].is_zero() {
            let t = if s.negative { gamma.neg() } else { gamma.clone() };
            numerator = numerator.div_one_minus(&t).map_err(|_| {
                KqError::Consistency(format!(
                    "GKM condition fails on the curve {} -- {}",
                    sp.fixed_points[v], sp.fixed_points[partner]
                ))
            })?;
        } else {
            denom[s.root] = true;
            if s.negative {
                // 1 - e^{-gamma} = -e^{-gamma} (1 - e^{gamma})
                negatives += 1;
                shift = shift.add(gamma);
            }
        }
    }
    numerator = numerator.shift(&shift)?;
    if negatives % 2 == 1 {
        numerator = numerator.neg();
    }
    Ok(Some(Fraction {
        numerator,
        denom,
        members: vec![v],
    }))
}

fn merge_fractions(sp: &HomSpace, parts: Vec<Fraction>) -> Result<Fraction> {
    let mut denom = vec![false; sp.root_weights.len()];
    for p in &parts {
        for (d, &x) in denom.iter_mut().zip(&p.denom) {
            *d |= x;
        }
    }
    let mut numerator = LaurentPoly::zero(sp.rank());
    let mut members = Vec::new();
    for p in parts {
        let mut scaled = p.numerator;
        for (g, (&have, &want)) in p.denom.iter().zip(&denom).enumerate() {
            if want && !have {
                scaled = scaled.mul_one_minus(&sp.root_weights[g])?;
            }
        }
        numerator = numerator.add(&scaled)?;
        members.extend(p.members);
    }
    Ok(Fraction {
        numerator,
        denom,
        members,
    })
}

/// Divides out every pole whose cancelling partners all lie in the group:
/// the residues along `gamma` at `v` and `s_gamma v` are opposite.
fn cancel_closed_poles(sp: &HomSpace, class: &KClass, frac: &mut Fraction, inside: &[bool]) -> Result<()> {
    for g in 0..frac.denom.len() {
        if !frac.denom[g] {
            continue;
        }
        let closed = frac.members.iter().all(|&v| {
            let partner = sp.reflect_by_root(v, g);
            partner == v || inside[partner] || class.values[partner].is_zero()
        });
        if closed {
            frac.numerator = frac.numerator.div_one_minus(&sp.root_weights[g]).map_err(|_| {
                KqError::Consistency(format!(
                    "pole along {:?} does not cancel in the localization sum",
                    sp.rs.positive_roots[g]
                ))
            })?;
            frac.denom[g] = false;
        }
    }
    Ok(())
}

/// `sum_v f(v) / prod_t (1 - e^{-t})`, evaluated exactly.
///
/// Summands are merged along the orbits of growing Levi subgroups `W_J`
/// acting on the left, and a pole along `gamma` is divided out as soon as
/// the merged group is closed under `v -> s_gamma v`, where the GKM
/// condition makes the residues cancel. Denominators therefore stay as
/// small as the grouping allows; any pole left at the end is reported as an
/// invalid class.
pub fn euler_char(class: &KClass) -> Result<LaurentPoly> {
    let sp = &*class.space;
    let rank = sp.rank();
    let mut groups: Vec<Fraction> = (0..sp.len())
        .into_par_iter()
        .map(|v| initial_fraction(class, v))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut nodes: Vec<usize> = Vec::new();
    for node in node_order(&sp.rs, &sp.parabolic) {
        nodes.push(node);
        // Orbits of W_J by flood fill along the left neighbours.
        let mut orbit = vec![usize::MAX; sp.len()];
        for start in 0..sp.len() {
            if orbit[start] != usize::MAX {
                continue;
            }
            orbit[start] = start;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &i in &nodes {
                    let u = sp.left[i][v];
                    if orbit[u] == usize::MAX {
                        orbit[u] = start;
                        stack.push(u);
                    }
                }
            }
        }
        // Group label of every fixed point: the first index of its W_J-orbit.
        let label = orbit;
        let mut buckets: HashMap<usize, Vec<Fraction>> = HashMap::new();
        for g in groups {
            buckets.entry(label[g.members[0]]).or_default().push(g);
        }
        let mut jobs: Vec<(usize, Vec<Fraction>)> = buckets.into_iter().collect();
        jobs.sort_by_key(|j| j.0);
        groups = jobs
            .into_par_iter()
            .map(|(lab, parts)| {
                let mut merged = if parts.len() == 1 {
                    parts.into_iter().next().expect("one part")
                } else {
                    merge_fractions(sp, parts)?
                };
                let inside: Vec<bool> = label.iter().map(|&l| l == lab).collect();
                cancel_closed_poles(sp, class, &mut merged, &inside)?;
                Ok(merged)
            })
            .collect::<Result<Vec<_>>>()?;
    }
    let mut total = LaurentPoly::zero(rank);
    for g in groups {
        if g.denom.iter().any(|&d| d) {
            return Err(KqError::Consistency("denominators of the localization sum do not clear".into()));
        }
        total = total.add(&g.numerator)?;
    }
    Ok(total)
}

/// Data of the incidence `Z_d` between `X = G/P` and `Y_d = G/Q_d`.
#[derive(Debug, Clone)]
pub struct Incidence {
    /// `w_d`, in `W^P`.
    pub w_d: WeylElement,
    /// `Sigma(Q_d)`.
    pub sigma_q: ParabolicSubset,
    /// Whether `Z_d = G / (P cap Q_d)`.
    pub homogeneous: bool,
}

/// The label `u''` with `q_* p^* [O_{X(u)}] = [O_{Y(u'')}]`.
///
/// `Y(u'')` is the set of translates `mu X(w_d)` meeting `X(u)`. A translate
/// by a fixed point `mu` of `Y_d` is T-stable, so it meets the B-stable
/// `X(u)` iff one of its fixed points `mu z` (`z <= w_d`) lies in `X(u)`.
pub fn pushforward_qp(space_x: &HomSpace, u: &WeylElement, inc: &Incidence) -> Result<WeylElement> {
    let rs = &space_x.rs;
    let u_idx = space_x.index_of(u)?;
    let wd_idx = space_x.index_of(&inc.w_d)?;
    let below_u = space_x.lower_interval(u_idx);
    let below_wd = space_x.lower_interval(wd_idx);
    let cell: Vec<usize> = (0..space_x.len()).filter(|&z| below_wd[z]).collect();
    // X(w_d) must be stable under the Levi of Q_d for Y_d to parametrize its translates.
    for i in inc.sigma_q.levi_nodes(rs.rank()) {
        if cell.iter().any(|&z| !below_wd[space_x.left[i][z]]) {
            return Err(KqError::Consistency(format!(
                "X({}) is not stable under s{}, a Levi reflection of Q_d",
                inc.w_d,
                i + 1
            )));
        }
    }
    let y_points = enumerate_wp(rs, &inc.sigma_q, FIXED_POINT_CAP)?;
    let hits: Vec<&WeylElement> = y_points
        .par_iter()
        .filter(|mu| {
            cell.iter().any(|&z| {
                let key = mu.act_on_weight(rs, &space_x.keys[z]);
                below_u[space_x.index[&key]]
            })
        })
        .collect();
    let top = bruhat_max(rs, &hits)?;
    if inc.homogeneous {
        let w0_levi = WeylElement::longest_of(rs, &space_x.parabolic.levi_nodes(rs.rank()));
        let closed = u.multiply(rs, &w0_levi)?.min_coset_rep(rs, &inc.sigma_q, Side::Right);
        if closed != top {
            return Err(KqError::Consistency(format!(
                "pushforward rules disagree for u = {u}: incidence gives {top}, closed form gives {closed}"
            )));
        }
    }
    Ok(top)
}

/// The unique Bruhat-maximal element of a lower order ideal.
fn bruhat_max(rs: &RootSystem, set: &[&WeylElement]) -> Result<WeylElement> {
    let top = set
        .iter()
        .max_by_key(|w| w.length())
        .ok_or_else(|| KqError::Consistency("empty image in the incidence".into()))?;
    let count = set.iter().filter(|w| w.length() == top.length()).count();
    if count != 1 || !set.iter().all(|w| w.bruhat_leq(rs, top).unwrap_or(false)) {
        return Err(KqError::Consistency("image of the incidence is not a Schubert variety".into()));
    }
    Ok((*top).clone())
}

/// Coefficients `c_w` in `R(T)` with `class = sum_w c_w [O_{X(w)}]`, by a
/// triangular solve from the top of `W^P` down.
pub fn expand_in_schubert_basis(class: &KClass) -> Result<Vec<LaurentPoly>> {
    let sp = class.space.clone();
    let mut basis: Vec<Option<KClass>> = vec![None; sp.len()];
    for_each_schubert_class(&sp, |w, c| {
        basis[w] = Some(c.clone());
        Ok(())
    })?;
    let basis: Vec<KClass> = basis.into_iter().map(|c| c.expect("every class visited")).collect();
    let mut order: Vec<usize> = (0..sp.len()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(sp.fixed_points[v].length()));
    let mut coeffs = vec![LaurentPoly::zero(sp.rank()); sp.len()];
    let mut done: HashSet<usize> = HashSet::new();
    for v in order {
        let mut rest = class.values[v].clone();
        for &w in &done {
            if !coeffs[w].is_zero() {
                rest = rest.sub(&coeffs[w].mul(&basis[w].values[v])?)?;
            }
        }
        coeffs[v] = rest.exact_div(&basis[v].values[v])?;
        done.insert(v);
    }
    Ok(coeffs)
}
