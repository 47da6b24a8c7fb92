//! Independent oracles for type-A Grassmannians, written against subsets and
//! partitions only: torus-fixed points of `G(k, n)` are `k`-subsets of
//! `{0, .., n-1}`, those of the two-step flag variety `Fl(a, b; n)` are
//! nested pairs `A ⊂ B`, and Bruhat order is the componentwise order of the
//! sorted subsets (the tableau criterion).

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

pub type Subset = Vec<usize>;

/// The permutation `s_{i1} ... s_{ik}` of `{0, .., n-1}`, with node `i`
/// (zero-based) swapping `i` and `i + 1`.
pub fn permutation(word: &[usize], n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for &i in word.iter().rev() {
        for v in perm.iter_mut() {
            if *v == i {
                *v = i + 1;
            } else if *v == i + 1 {
                *v = i;
            }
        }
    }
    perm
}

/// `w({0, .., k-1})`, sorted.
pub fn subset_of(word: &[usize], k: usize, n: usize) -> Subset {
    let perm = permutation(word, n);
    let mut s: Subset = perm[..k].to_vec();
    s.sort_unstable();
    s
}

pub fn subset_leq(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn subsets(n: usize, k: usize) -> Vec<Subset> {
    (0..n).combinations(k).collect()
}

/// Fixed points `(A, B)` of `Fl(a, b; n)` whose fiber
/// `{V : A ⊂ V ⊂ B, |V| = k}` meets the Schubert variety `X(top)` of
/// `G(k, n)`: the fixed points of `q(p^{-1}(X(top)))`.
pub fn incidence_image(n: usize, k: usize, a: usize, b: usize, top: &[usize]) -> BTreeSet<(Subset, Subset)> {
    let mut out = BTreeSet::new();
    for big in subsets(n, b) {
        for small in big.iter().copied().combinations(a) {
            let rest: Vec<usize> = big.iter().copied().filter(|x| !small.contains(x)).collect();
            let meets = rest.into_iter().combinations(k - a).any(|extra| {
                let mut v: Subset = small.iter().copied().chain(extra).collect();
                v.sort_unstable();
                subset_leq(&v, top)
            });
            if meets {
                out.insert((small, big.clone()));
            }
        }
    }
    out
}

/// Fixed points of the Schubert variety of `Fl(a, b; n)` with top `(A, B)`.
pub fn flag_interval(n: usize, a: usize, b: usize, top: &(Subset, Subset)) -> BTreeSet<(Subset, Subset)> {
    let mut out = BTreeSet::new();
    for big in subsets(n, b) {
        if !subset_leq(&big, &top.1) {
            continue;
        }
        for small in big.iter().copied().combinations(a) {
            if subset_leq(&small, &top.0) {
                out.insert((small, big.clone()));
            }
        }
    }
    out
}

/// The partition `lambda_j = n - k + j - i_j` (one-based `j`, `i_j`) of the
/// codimension-`|lambda|` Schubert variety with top fixed point `I`.
pub fn partition_of(top: &[usize], k: usize, n: usize) -> Vec<usize> {
    (0..k).map(|j| n - k + j - top[j]).collect()
}

pub fn subset_of_partition(lambda: &[usize], k: usize, n: usize) -> Subset {
    (0..k).map(|j| n - k + j - lambda[j]).collect()
}

/// A polynomial in `k` variables, by exponent vector.
pub type Poly = BTreeMap<Vec<usize>, i64>;

fn add_into(target: &mut Poly, other: &Poly, scale: i64) {
    for (e, c) in other {
        let entry = target.entry(e.clone()).or_insert(0);
        *entry += scale * c;
        if *entry == 0 {
            target.remove(e);
        }
    }
}

fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p {
        for (f, d) in q {
            let g: Vec<usize> = e.iter().zip(f).map(|(x, y)| x + y).collect();
            add_into(&mut out, &Poly::from([(g, c * d)]), 1);
        }
    }
    out
}

/// The stable Grothendieck polynomial `G_lambda(x_1, .., x_k)` as the signed
/// sum over set-valued tableaux of shape `lambda`: boxes hold nonempty
/// subsets of `{1, .., k}`, rows increase weakly (`max` of a box at most
/// `min` of its right neighbour) and columns strictly; the sign is
/// `(-1)^{|T| - |lambda|}`.
pub fn grothendieck(lambda: &[usize], k: usize) -> Poly {
    let boxes: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let choices: Vec<Vec<usize>> = (1..(1usize << k)).map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect()).collect();
    let mut out = Poly::new();
    let mut filling: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    fn go(
        idx: usize,
        boxes: &[(usize, usize)],
        choices: &[Vec<usize>],
        filling: &mut BTreeMap<(usize, usize), usize>,
        k: usize,
        size: usize,
        out: &mut Poly,
    ) {
        if idx == boxes.len() {
            let mut exps = vec![0; k];
            let mut entries = 0;
            for &ch in filling.values() {
                for &i in &choices[ch] {
                    exps[i] += 1;
                    entries += 1;
                }
            }
            let sign = if (entries - size) % 2 == 0 { 1 } else { -1 };
            add_into(out, &Poly::from([(exps, sign)]), 1);
            return;
        }
        let (r, c) = boxes[idx];
        for (ch, set) in choices.iter().enumerate() {
            let lo = *set.first().expect("nonempty");
            let left_ok = c == 0 || *choices[filling[&(r, c - 1)]].last().expect("nonempty") <= lo;
            let up_ok = r == 0 || *choices[filling[&(r - 1, c)]].last().expect("nonempty") < lo;
            if left_ok && up_ok {
                filling.insert((r, c), ch);
                go(idx + 1, boxes, choices, filling, k, size, out);
                filling.remove(&(r, c));
            }
        }
    }
    let size = boxes.len();
    go(0, &boxes, &choices, &mut filling, k, size, &mut out);
    out
}

/// Expansion of a symmetric polynomial in the Grothendieck basis: the
/// lowest-degree part's lex-largest monomial `x^lambda` is the leading term
/// of `G_lambda`, which has coefficient one.
pub fn expand_grothendieck(mut f: Poly, k: usize) -> BTreeMap<Vec<usize>, i64> {
    let mut out = BTreeMap::new();
    while !f.is_empty() {
        let low = f.keys().map(|e| e.iter().sum::<usize>()).min().expect("nonempty");
        let lead = f
            .keys()
            .filter(|e| e.iter().sum::<usize>() == low)
            .max()
            .expect("nonempty")
            .clone();
        assert!(lead.windows(2).all(|w| w[0] >= w[1]), "leading exponent {lead:?} is not a partition");
        let c = f[&lead];
        add_into(&mut f, &grothendieck(&lead, k), -c);
        out.insert(lead, c);
    }
    out
}

/// `[O_lambda] [O_mu] = sum_nu c_nu [O_nu]` in `K(G(k, n))`: the product of
/// Grothendieck polynomials in `k` variables, with the partitions that do
/// not fit in the `k x (n - k)` box dropped.
pub fn k_product(lambda: &[usize], mu: &[usize], k: usize, n: usize) -> BTreeMap<Vec<usize>, i64> {
    let product = poly_mul(&grothendieck(lambda, k), &grothendieck(mu, k));
    expand_grothendieck(product, k)
        .into_iter()
        .filter(|(nu, _)| nu[0] <= n - k)
        .collect()
}

/// All partitions in the `k x (n - k)` box, as length-`k` vectors.
pub fn box_partitions(k: usize, n: usize) -> Vec<Vec<usize>> {
    subsets(n, k).into_iter().map(|s| partition_of(&s, k, n)).collect()
}

/// Engine-side comparisons against the oracles above.
pub mod engine {
    use super::*;
    use kq_core::catalog::default_catalog;
    use kq_core::ktheory::{expand_in_schubert_basis, pushforward_qp, schubert_class, FIXED_POINT_CAP};
    use kq_core::qc_evaluator::space_of;
    use kq_core::catalog::Family;

    fn grassmannian(name: &str) -> (kq_core::catalog::SpaceDescriptor, usize, usize) {
        let desc = default_catalog().expect("catalog").space(name).expect("space");
        match desc.family {
            Family::Grassmannian { k, n } => (desc, k, n),
            _ => panic!("{name} is not a Grassmannian"),
        }
    }

    /// Compares the engine's image label `u''` with the incidence oracle for
    /// every `u` and every degree the catalog covers. Returns the number of
    /// `(u, d)` cases, or a description of the first mismatch.
    pub fn check_pushforward(name: &str) -> Result<usize, String> {
        let (desc, k, n) = grassmannian(name);
        let x = space_of(&desc, FIXED_POINT_CAP).map_err(|e| e.to_string())?;
        let mut cases = 0;
        for d in 0..=desc.d_max_three + 1 {
            let Ok(data) = desc.degree(d) else { continue };
            let (a, b) = (k.saturating_sub(d as usize), (k + d as usize).min(n));
            for u in x.fixed_points() {
                let image = pushforward_qp(&x, u, &data.incidence()).map_err(|e| e.to_string())?;
                let top = (subset_of(image.word(), a, n), subset_of(image.word(), b, n));
                let engine = flag_interval(n, a, b, &top);
                let oracle = incidence_image(n, k, a, b, &subset_of(u.word(), k, n));
                if engine != oracle {
                    return Err(format!("{name}, d = {d}, u = {u}: engine {engine:?}, oracle {oracle:?}"));
                }
                cases += 1;
            }
        }
        Ok(cases)
    }

    /// Compares every product `[O_u] [O_v]` expanded in the Schubert basis
    /// with the set-valued-tableau rule, and checks the sign pattern
    /// `(-1)^{|nu| - |lambda| - |mu|}`. Returns the number of products.
    pub fn check_products(name: &str) -> Result<usize, String> {
        let (desc, k, n) = grassmannian(name);
        let x = space_of(&desc, FIXED_POINT_CAP).map_err(|e| e.to_string())?;
        let points = x.fixed_points().to_vec();
        let part = |i: usize| partition_of(&subset_of(points[i].word(), k, n), k, n);
        let classes: Vec<_> = points
            .iter()
            .map(|w| schubert_class(&x, w))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let mut count = 0;
        for i in 0..points.len() {
            for j in 0..points.len() {
                let product = classes[i].multiply(&classes[j]).map_err(|e| e.to_string())?;
                let coeffs = expand_in_schubert_basis(&product).map_err(|e| e.to_string())?;
                let mut engine = BTreeMap::new();
                for (v, c) in coeffs.iter().enumerate() {
                    let c = c.evaluate_at_one().map_err(|e| e.to_string())?;
                    if c != 0 {
                        engine.insert(part(v), c as i64);
                    }
                }
                let (lambda, mu) = (part(i), part(j));
                let oracle = k_product(&lambda, &mu, k, n);
                if engine != oracle {
                    return Err(format!("{name}: {lambda:?} * {mu:?}: engine {engine:?}, oracle {oracle:?}"));
                }
                let base: usize = lambda.iter().sum::<usize>() + mu.iter().sum::<usize>();
                for (nu, c) in &engine {
                    let excess = nu.iter().sum::<usize>() - base;
                    if (*c > 0) != (excess % 2 == 0) {
                        return Err(format!("{name}: sign of {nu:?} in {lambda:?} * {mu:?} is {c}"));
                    }
                }
                count += 1;
            }
        }
        Ok(count)
    }
}
