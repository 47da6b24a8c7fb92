//! Weight-level data of the open-cell fibrations `Z -> Y` of a homogeneous
//! space `G/P` defined by a second maximal parabolic `Q`: the base `Y`, the
//! T-weights of the bundle `E`, pairings with curve cocharacters, the E6/P4
//! cell computation and the adjoint towers.
//!
//! Roots are on simple-root coordinates, parabolics contain the positive
//! Borel, and `Q^{w0}` has root set `w0(R(Q))`. A homogeneous bundle on `Y`
//! whose fiber has weights `lambda_j` at the base point has first Chern
//! class `-sum_j <lambda_j, alpha_m^vee>` on the generator of `Pic(Y)`,
//! `m` the marked node of `Y`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{KqError, Result};
use crate::root_system::{pairing, CartanType, Coweight, RootSystem, Weight};
use crate::weyl::{codim_two_criterion, ParabolicSubset, WeylElement};

fn is_positive(root: &[i64]) -> bool {
    root.iter().all(|&c| c >= 0)
}

/// Roots of the standard parabolic with marked nodes `marked`.
fn in_parabolic(root: &[i64], marked: &BTreeSet<usize>) -> bool {
    is_positive(root) || marked.iter().all(|&i| root[i] == 0)
}

fn all_roots(rs: &RootSystem) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = rs.positive_roots.clone();
    out.extend(rs.positive_roots.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
    out
}

/// Orderings of the component nodes that reproduce the standard Cartan
/// matrix of its type.
fn standard_orderings(rs: &RootSystem, nodes: &[usize], ty: CartanType) -> Result<Vec<Vec<usize>>> {
    let std = RootSystem::from_type(ty)?.cartan;
    let n = nodes.len();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn go(
        rs: &RootSystem,
        nodes: &[usize],
        std: &[Vec<i64>],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = current.len();
        if k == nodes.len() {
            out.push(current.clone());
            return;
        }
        for &v in nodes {
            if current.contains(&v) {
                continue;
            }
            let fits = (0..k).all(|j| {
                rs.cartan[v][current[j]] == std[k][j] && rs.cartan[current[j]][v] == std[j][k]
            });
            if fits {
                current.push(v);
                go(rs, nodes, std, current, out);
                current.pop();
            }
        }
    }
    go(rs, nodes, &std, &mut current, &mut out);
    if out.is_empty() {
        return Err(KqError::Consistency(format!("no standard ordering for a {ty} component")));
    }
    Ok(out)
}

/// One simple factor of `Y`: a Levi component and its marked nodes in
/// Bourbaki numbering of the component (one-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YFactor {
    pub cartan_type: String,
    /// Ambient zero-based nodes in Bourbaki order of the component.
    pub nodes: Vec<usize>,
    pub marked: Vec<usize>,
    pub name: String,
}

fn factor_name(ty: CartanType, marked: &[usize]) -> String {
    let m = ty.rank;
    match (ty.letter, marked) {
        ('A', [1]) => format!("P{m}"),
        ('A', [k]) => format!("G({k},{})", m + 1),
        ('B', [1]) => format!("Q{}", 2 * m - 1),
        ('B', [k]) => format!("OG({k},{})", 2 * m + 1),
        ('C', [1]) => format!("P{}", 2 * m - 1),
        ('C', [k]) if *k == m => format!("LG({m},{})", 2 * m),
        ('C', [k]) => format!("IG({k},{})", 2 * m),
        ('D', [1]) => format!("Q{}", 2 * m - 2),
        ('D', [k]) if *k + 1 >= m => format!("OG({m},{})", 2 * m),
        ('D', [k]) => format!("OG({k},{})", 2 * m),
        (_, ks) => {
            let list: Vec<String> = ks.iter().map(ToString::to_string).collect();
            format!("{ty}/P{}", list.join(","))
        }
    }
}

/// The factors of `L / (L cap P)` for the Levi on `levi_nodes` and the
/// parabolic marked at `marked` (ambient, zero-based); components without
/// marked nodes are points and omitted.
pub fn quotient_factors(rs: &RootSystem, levi_nodes: &[usize], marked: &BTreeSet<usize>) -> Result<Vec<YFactor>> {
    let mut out = Vec::new();
    for comp in rs.components(levi_nodes) {
        if !comp.nodes.iter().any(|v| marked.contains(v)) {
            continue;
        }
        let ty = comp.cartan_type;
        // Among diagram symmetries pick the smallest marked positions.
        let (nodes, positions) = standard_orderings(rs, &comp.nodes, ty)?
            .into_iter()
            .map(|ord| {
                let mut pos: Vec<usize> = ord
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| marked.contains(v))
                    .map(|(k, _)| k + 1)
                    .collect();
                pos.sort_unstable();
                (ord, pos)
            })
            .min_by(|a, b| a.1.cmp(&b.1))
            .expect("at least one ordering");
        out.push(YFactor {
            cartan_type: ty.to_string(),
            name: factor_name(ty, &positions),
            nodes,
            marked: positions,
        });
    }
    out.sort_by(|a, b| (a.nodes.len(), &a.name).cmp(&(b.nodes.len(), &b.name)));
    Ok(out)
}

fn join_names(factors: &[YFactor]) -> String {
    if factors.is_empty() {
        "pt".into()
    } else {
        factors.iter().map(|f| f.name.as_str()).collect::<Vec<_>>().join(" x ")
    }
}

/// `dim G/P` and the first Chern class on the generator when `P` is maximal.
fn dim_and_c1(rs: &RootSystem, levi_nodes: &[usize], marked: &BTreeSet<usize>) -> (usize, Option<i64>) {
    let inside = |r: &[i64]| r.iter().enumerate().all(|(i, &c)| c == 0 || levi_nodes.contains(&i));
    let unipotent: Vec<&Vec<i64>> = rs
        .positive_roots
        .iter()
        .filter(|r| inside(r) && marked.iter().any(|&m| r[m] != 0))
        .collect();
    let c1 = match marked.iter().collect::<Vec<_>>()[..] {
        [&m] => Some(unipotent.iter().map(|r| rs.root_to_weight(r).0[m]).sum()),
        _ => None,
    };
    (unipotent.len(), c1)
}

/// `-sum <lambda, alpha_m^vee>`.
fn c1_from_weights(rs: &RootSystem, roots: &[Vec<i64>], m: usize) -> i64 {
    -roots.iter().map(|r| rs.root_to_weight(r).0[m]).sum::<i64>()
}

#[derive(Debug, Clone, Serialize)]
pub struct FibrationData {
    pub group: String,
    pub sigma_p: Vec<usize>,
    pub sigma_q: Vec<usize>,
    pub x_dim: usize,
    pub y: String,
    pub y_factors: Vec<YFactor>,
    pub y_dim: usize,
    /// Weights of `U_Q^{w0} / (U_Q^{w0} cap P)`, as roots.
    pub e_weights: Vec<Vec<i64>>,
    pub fiber_rank: usize,
    /// `c_1(E)`, when `Y` has Picard rank one; computed from the
    /// determinant weight and checked against `c_1(X) - c_1(Y)`.
    pub c1_e: Option<i64>,
    pub codim2_ok: bool,
}

/// The pieces of the unipotent radical of `Q^{w0}` modulo `P`, graded by
/// the (negative) coefficient of the node `i(Sigma(Q))`.
struct Tower {
    factors: Vec<YFactor>,
    y_dim: usize,
    y_c1: Option<i64>,
    x_dim: usize,
    x_c1: Option<i64>,
    layers: Vec<Vec<Vec<i64>>>,
    marked_in_y: Option<usize>,
}

fn tower(rs: &RootSystem, p: &ParabolicSubset, q: &ParabolicSubset) -> Result<Tower> {
    let n = rs.rank();
    if q.marked.len() != 1 {
        return Err(KqError::InvalidArgument("Sigma(Q) must be a single node".into()));
    }
    if p.marked.is_empty() || p.marked.iter().chain(&q.marked).any(|&i| i >= n) {
        return Err(KqError::InvalidArgument("parabolic nodes out of range".into()));
    }
    let inv = rs.weyl_involution();
    let iq = inv[*q.marked.iter().next().expect("one node")];
    let levi_nodes: Vec<usize> = (0..n).filter(|&i| i != iq).collect();
    let factors = quotient_factors(rs, &levi_nodes, &p.marked)?;
    let y_marked: BTreeSet<usize> = p.marked.iter().copied().filter(|&i| i != iq).collect();
    let (y_dim, y_c1) = dim_and_c1(rs, &levi_nodes, &y_marked);
    let all: Vec<usize> = (0..n).collect();
    let (x_dim, x_c1) = dim_and_c1(rs, &all, &p.marked);
    let depth = rs.highest_root[iq] as usize;
    let mut layers = vec![Vec::new(); depth];
    for r in all_roots(rs) {
        // U_Q^{w0}: negative roots meeting i(Sigma(Q)); modulo P.
        if r[iq] < 0 && !in_parabolic(&r, &p.marked) {
            layers[(-r[iq]) as usize - 1].push(r);
        }
    }
    for layer in &mut layers {
        layer.sort();
    }
    let marked_in_y = match y_marked.iter().collect::<Vec<_>>()[..] {
        [&m] => Some(m),
        _ => None,
    };
    let total: usize = layers.iter().map(Vec::len).sum();
    if y_dim + total != x_dim {
        return Err(KqError::Consistency(format!(
            "dim Y + fiber = {} + {total} differs from dim X = {x_dim}",
            y_dim
        )));
    }
    Ok(Tower {
        factors,
        y_dim,
        y_c1,
        x_dim,
        x_c1,
        layers,
        marked_in_y,
    })
}

/// Whether the node is cominuscule: coefficient one in the highest root.
pub fn is_cominuscule(rs: &RootSystem, node: usize) -> bool {
    rs.highest_root.get(node) == Some(&1)
}

/// `Z = Q^{w0} P / P` as a vector bundle over `Y = L_Q^{w0} / (L_Q^{w0} cap P)`.
pub fn fibration_data(rs: &RootSystem, p: &ParabolicSubset, q: &ParabolicSubset) -> Result<FibrationData> {
    if q.marked.len() != 1 || !is_cominuscule(rs, *q.marked.iter().next().expect("one node")) {
        return Err(KqError::InvalidArgument(
            "Sigma(Q) must be a single cominuscule node (abelian unipotent radical)".into(),
        ));
    }
    let t = tower(rs, p, q)?;
    let e = t.layers.into_iter().next().unwrap_or_default();
    let c1_e = match (t.marked_in_y, t.x_c1, t.y_c1) {
        (Some(m), Some(cx), Some(cy)) if p.marked.len() == 1 => {
            let c = c1_from_weights(rs, &e, m);
            if c != cx - cy {
                return Err(KqError::Consistency(format!(
                    "c1(E) = {c} from the determinant weight but c1(X) - c1(Y) = {}",
                    cx - cy
                )));
            }
            Some(c)
        }
        _ => None,
    };
    Ok(FibrationData {
        group: rs.cartan_type.to_string(),
        sigma_p: p.one_based(),
        sigma_q: q.one_based(),
        x_dim: t.x_dim,
        y: join_names(&t.factors),
        y_factors: t.factors,
        y_dim: t.y_dim,
        fiber_rank: e.len(),
        e_weights: e,
        c1_e,
        codim2_ok: codim_two_criterion(rs, p, q),
    })
}

/// `{ <lambda, h> }` over the weights.
pub fn degree_pairing(weights: &[Weight], h: &Coweight) -> Result<Vec<i64>> {
    weights.iter().map(|w| pairing(w, h)).collect()
}

/// The highest root's coroot plus `alpha_1^vee`: the cocharacter of the
/// `SL_2` whose orbit through the base point of the quadric is a conic.
pub fn conic_cocharacter(rs: &RootSystem) -> Coweight {
    rs.coroot(&rs.highest_root).add(&rs.simple_coroot(0))
}

/// Fiber weights of the spinor bundle on the quadric `Q^{2 delta}`, the
/// homogeneous space `D_{delta+1} / P_1`: the half-spin weights of
/// `D_{delta+1}` whose central coordinate `<lambda, varpi_1^vee>` is `+1/2`,
/// i.e. the half-spin weights of the Levi factor `D_delta` shifted by the
/// central character. Returned with the root system and the conic
/// cocharacter `theta^vee + alpha_1^vee = 2 epsilon_1`.
pub fn spinor_configuration(delta: usize) -> Result<(RootSystem, Vec<Weight>, Coweight)> {
    if delta < 3 {
        return Err(KqError::InvalidArgument("delta must be at least 3".into()));
    }
    let rs = RootSystem::new('D', delta + 1)?;
    let top = rs.fundamental_weight(delta);
    // Minuscule: the weights form one Weyl orbit.
    let mut orbit = vec![top.clone()];
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::from([top.0.clone()]);
    let mut k = 0;
    while k < orbit.len() {
        for i in 0..rs.rank() {
            let w = rs.reflect_weight(i, &orbit[k]);
            if seen.insert(w.0.clone()) {
                orbit.push(w);
            }
        }
        k += 1;
    }
    let half = crate::root_system::Rational::new(1, 2);
    let mut fiber: Vec<Weight> = orbit
        .into_iter()
        .filter(|w| rs.weight_to_root_coords(w)[0] == half)
        .collect();
    fiber.sort();
    let h = conic_cocharacter(&rs);
    Ok((rs, fiber, h))
}

/// Pairing degrees of a bundle along a curve and along its double cover,
/// with the numerical form of `H^1(P^1, f^*E (-3)) = 0`: every degree of
/// the doubled curve is at least 2.
#[derive(Debug, Clone, Serialize)]
pub struct CurveDegrees {
    pub degrees: Vec<i64>,
    pub doubled: Vec<i64>,
    pub h1_vanishes_on_double: bool,
}

pub fn curve_degrees(weights: &[Weight], h: &Coweight) -> Result<CurveDegrees> {
    let degrees = degree_pairing(weights, h)?;
    let doubled: Vec<i64> = degrees.iter().map(|d| 2 * d).collect();
    let ok = doubled.iter().all(|&d| d >= 2);
    Ok(CurveDegrees {
        degrees,
        doubled,
        h1_vanishes_on_double: ok,
    })
}

/// The vanishing flag per degree: once it holds at `threshold`, it holds in
/// every larger degree.
pub fn vanishing_by_degree(holds_at_threshold: bool, threshold: u32, max_degree: u32) -> Vec<(u32, bool)> {
    (0..=max_degree)
        .map(|d| (d, holds_at_threshold && d >= threshold))
        .collect()
}

/// The cell computation for `E6/P4`: `P_4^w / (P_1 cap P_4^w)` over
/// `L_4^w / (P_1 cap L_4^w)` with `w = s1 s3 s4 s5 s6 s2`.
#[derive(Debug, Clone, Serialize)]
pub struct CellData {
    pub word: String,
    /// Types of the simple factors of `L_4^w`, sorted.
    pub levi_types: Vec<String>,
    /// Dimension of each factor's quotient, in the order of `levi_types`.
    pub quotient_dims: Vec<usize>,
    pub quotient: String,
    /// Roots `alpha` of `R_u(P_4)` with `s1 s3 s4 (alpha)` outside `P_1`.
    pub bundle_roots: Vec<Vec<i64>>,
}

/// `(alpha_1, alpha_3, alpha_4, alpha_5, alpha_6; alpha_2)` layout of an E6
/// root, used in the displayed formulas.
pub fn e6_six_tuple(root: &[i64]) -> [i64; 6] {
    [root[0], root[2], root[3], root[4], root[5], root[1]]
}

pub fn e6_p4_cell_data() -> Result<CellData> {
    let rs = RootSystem::new('E', 6)?;
    let p1 = BTreeSet::from([0usize]);
    let p4 = BTreeSet::from([3usize]);
    let w = WeylElement::from_word(&rs, &[0, 2, 3, 4, 5, 1])?;
    let short = WeylElement::from_word(&rs, &[0, 2, 3])?;
    let roots = all_roots(&rs);
    let conj = |x: &WeylElement, set: &dyn Fn(&Vec<i64>) -> bool| -> BTreeSet<Vec<i64>> {
        roots.iter().filter(|r| set(r)).map(|r| x.act_on_root(&rs, r)).collect()
    };
    // P_4 is stable under s2, s6, s5, so conjugating by w or s1 s3 s4 agrees.
    let in_p4 = |r: &Vec<i64>| in_parabolic(r, &p4);
    if conj(&w, &in_p4) != conj(&short, &in_p4) {
        return Err(KqError::Consistency("P_4^w differs from P_4^{s1 s3 s4}".into()));
    }
    // Levi L_4^w: alpha with zero alpha_4 coefficient.
    let levi_nodes: Vec<usize> = (0..6).filter(|&i| i != 3).collect();
    let mut factors = Vec::new();
    for comp in rs.components(&levi_nodes) {
        let inside = |r: &[i64]| r.iter().enumerate().all(|(i, &c)| c == 0 || comp.nodes.contains(&i));
        let moved = roots
            .iter()
            .filter(|r| inside(r))
            .map(|r| short.act_on_root(&rs, r))
            .filter(|b| !in_parabolic(b, &p1))
            .count();
        factors.push((comp.cartan_type.to_string(), moved));
    }
    factors.sort();
    let names: Vec<String> = factors
        .iter()
        .filter(|(_, d)| *d > 0)
        .map(|(ty, d)| match ty.as_str() {
            "A1" | "A2" => format!("P{d}"),
            _ => format!("{ty}[{d}]"),
        })
        .collect();
    let mut bundle_roots: Vec<Vec<i64>> = rs
        .positive_roots
        .iter()
        .filter(|r| r[3] > 0 && !in_parabolic(&short.act_on_root(&rs, r), &p1))
        .cloned()
        .collect();
    bundle_roots.sort_by_key(|r| e6_six_tuple(r));
    let mut sorted_names = names.clone();
    sorted_names.sort();
    Ok(CellData {
        word: w.word_string(),
        levi_types: factors.iter().map(|(t, _)| t.clone()).collect(),
        quotient_dims: factors.iter().map(|(_, d)| *d).collect(),
        quotient: sorted_names.join(" x "),
        bundle_roots,
    })
}

/// Ranks and first Chern classes of the layers `E` (and `F`) of the tower
/// over `Y` for an adjoint variety.
#[derive(Debug, Clone, Serialize)]
pub struct TowerData {
    pub group: String,
    pub sigma_p: Vec<usize>,
    pub sigma_q: Vec<usize>,
    pub y: String,
    pub y_dim: usize,
    pub x_dim: usize,
    /// `(rank, c_1)` of each layer, `E` first.
    pub layers: Vec<(usize, i64)>,
}

/// The adjoint variety of an exceptional group and the parabolic `Q` used
/// for its tower: cominuscule for E6 and E7, the first (resp. fourth) node
/// for E8 (resp. F4).
pub fn adjoint_tower_data(letter: char, rank: usize) -> Result<TowerData> {
    let (p, q) = match (letter, rank) {
        ('E', 6) => (2, 1),
        ('E', 7) => (1, 7),
        ('E', 8) => (8, 1),
        ('F', 4) => (1, 4),
        _ => {
            return Err(KqError::InvalidArgument(format!(
                "adjoint towers are tabulated for E6, E7, E8 and F4, not {letter}{rank}"
            )))
        }
    };
    let rs = RootSystem::new(letter, rank)?;
    let pp = ParabolicSubset::from_one_based(rank, &[p])?;
    let qq = ParabolicSubset::from_one_based(rank, &[q])?;
    let t = tower(&rs, &pp, &qq)?;
    let m = t
        .marked_in_y
        .ok_or_else(|| KqError::Consistency("the base of an adjoint tower has Picard rank one".into()))?;
    let layers: Vec<(usize, i64)> = t
        .layers
        .iter()
        .filter(|l| !l.is_empty())
        .map(|l| (l.len(), c1_from_weights(&rs, l, m)))
        .collect();
    let total_c1: i64 = layers.iter().map(|l| l.1).sum();
    if let (Some(cx), Some(cy)) = (t.x_c1, t.y_c1) {
        if cx != cy + total_c1 {
            return Err(KqError::Consistency(format!(
                "c1(X) = {cx} but c1(Y) + sum c1(layers) = {}",
                cy + total_c1
            )));
        }
    }
    Ok(TowerData {
        group: rs.cartan_type.to_string(),
        sigma_p: pp.one_based(),
        sigma_q: qq.one_based(),
        y: join_names(&t.factors),
        y_dim: t.y_dim,
        x_dim: t.x_dim,
        layers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(l: char, n: usize) -> RootSystem {
        RootSystem::new(l, n).unwrap()
    }

    fn par(n: usize, nodes: &[usize]) -> ParabolicSubset {
        ParabolicSubset::from_one_based(n, nodes).unwrap()
    }

    #[test]
    fn spinor_variety_over_projective_space() {
        for n in 4..=7 {
            let g = rs('D', n);
            // Q with i(Sigma(Q)) = {n-1}.
            let inv = g.weyl_involution();
            let q = (0..n).find(|&i| inv[i] == n - 2).unwrap() + 1;
            let f = fibration_data(&g, &par(n, &[n]), &par(n, &[q])).unwrap();
            assert_eq!(f.y, format!("P{}", n - 1));
            assert_eq!(f.fiber_rank, (n - 1) * (n - 2) / 2);
            // Lambda^2 of T(-1), a rank n-1 bundle with c1 = 1.
            assert_eq!(f.c1_e, Some(n as i64 - 2));
            assert!(f.codim2_ok);
        }
    }

    #[test]
    fn cayley_plane_over_quadric() {
        let g = rs('E', 6);
        let f = fibration_data(&g, &par(6, &[1]), &par(6, &[1])).unwrap();
        assert_eq!((f.y.as_str(), f.y_dim, f.fiber_rank), ("Q8", 8, 8));
        assert_eq!(f.c1_e, Some(4));
        assert!(f.codim2_ok);
        // Along the conic of the D5 Levi every fiber weight has degree one.
        // Highest root of the D5 Levi on nodes 1..5.
        let theta: Vec<i64> = (0..6).map(|i| [1, 1, 2, 2, 1, 0][i]).collect();
        assert!(g.is_positive_root(&theta));
        let h = g.coroot(&theta).add(&g.simple_coroot(0));
        let weights: Vec<Weight> = f.e_weights.iter().map(|r| g.root_to_weight(r)).collect();
        let degrees: Vec<i64> = degree_pairing(&weights, &h).unwrap().into_iter().map(|d| -d).collect();
        assert_eq!(degrees, vec![1; 8]);
    }

    #[test]
    fn orthogonal_grassmannians_over_smaller_ones() {
        for (letter, n, p) in [('B', 4, 2), ('B', 5, 3), ('D', 5, 2), ('D', 6, 3)] {
            let g = rs(letter, n);
            let big_n = if letter == 'B' { 2 * n + 1 } else { 2 * n };
            let f = fibration_data(&g, &par(n, &[p]), &par(n, &[1])).unwrap();
            let y = if p == 2 { format!("Q{}", big_n - 4) } else { format!("OG({},{})", p - 1, big_n - 2) };
            assert_eq!(f.y, y);
            // The tautological quotient on Y.
            assert_eq!(f.fiber_rank, big_n - p - 1);
            assert_eq!(f.c1_e, Some(1));
        }
    }

    #[test]
    fn rejects_non_cominuscule_q() {
        assert!(fibration_data(&rs('E', 8), &par(8, &[8]), &par(8, &[1])).is_err());
        assert!(fibration_data(&rs('E', 6), &par(6, &[1]), &par(6, &[2])).is_err());
    }

    #[test]
    fn pairing_examples() {
        let g = rs('D', 5);
        let theta = g.highest_root.clone();
        let h = conic_cocharacter(&g);
        assert_eq!(degree_pairing(&[g.root_to_weight(&theta)], &h).unwrap(), vec![2]);
        assert_eq!(degree_pairing(&[Weight::zero(5)], &h).unwrap(), vec![0]);
        assert!(degree_pairing(&[Weight::zero(4)], &h).is_err());
        // Without the central shift the D5 half-spin weights split evenly.
        let top = g.fundamental_weight(4);
        let mut orbit = vec![top];
        let mut k = 0;
        while k < orbit.len() {
            for i in 0..5 {
                let w = g.reflect_weight(i, &orbit[k]);
                if !orbit.contains(&w) {
                    orbit.push(w);
                }
            }
            k += 1;
        }
        let mut values = degree_pairing(&orbit, &h).unwrap();
        values.sort_unstable();
        assert_eq!(values, [vec![-1; 8], vec![1; 8]].concat());
    }

    #[test]
    fn spinor_pairing() {
        for delta in 3..=6 {
            let (_, weights, h) = spinor_configuration(delta).unwrap();
            let c = curve_degrees(&weights, &h).unwrap();
            assert_eq!(c.degrees, vec![1; 1 << (delta - 1)]);
            assert!(c.doubled.iter().all(|&d| d >= 2) && c.h1_vanishes_on_double);
        }
        assert_eq!(vanishing_by_degree(true, 4, 6).iter().filter(|x| x.1).count(), 3);
    }

    #[test]
    fn cell_data() {
        let c = e6_p4_cell_data().unwrap();
        assert_eq!(c.levi_types, vec!["A1", "A2", "A2"]);
        assert_eq!(c.quotient, "P1 x P2");
        let tuples: Vec<[i64; 6]> = c.bundle_roots.iter().map(|r| e6_six_tuple(r)).collect();
        assert_eq!(tuples, vec![[0, 0, 1, 0, 0, 0], [0, 1, 1, 0, 0, 0], [1, 1, 1, 0, 0, 0]]);
    }

    #[test]
    fn conjugation_formula() {
        // s1 s3 s4 (a,b,c,d,e;f) = (d+f-c, a+d+f-c, b+d+f-c, d, e; f).
        let g = rs('E', 6);
        let w = WeylElement::from_word(&g, &[0, 2, 3]).unwrap();
        for r in all_roots(&g) {
            let [a, b, c, d, e, f] = e6_six_tuple(&r);
            let image = e6_six_tuple(&w.act_on_root(&g, &r));
            assert_eq!(image, [d + f - c, a + d + f - c, b + d + f - c, d, e, f]);
        }
    }

    #[test]
    fn adjoint_towers() {
        let e8 = adjoint_tower_data('E', 8).unwrap();
        assert_eq!((e8.y.as_str(), e8.layers.clone()), ("Q12", vec![(32, 16), (13, 1)]));
        let f4 = adjoint_tower_data('F', 4).unwrap();
        assert_eq!((f4.y.as_str(), f4.layers.clone()), ("Q5", vec![(4, 2), (6, 1)]));
        let e7 = adjoint_tower_data('E', 7).unwrap();
        assert_eq!((e7.y.as_str(), e7.layers.clone()), ("E6/P1", vec![(17, 5)]));
        let e6 = adjoint_tower_data('E', 6).unwrap();
        assert_eq!((e6.y.as_str(), e6.layers.clone()), ("OG(5,10)", vec![(11, 3)]));
        assert!(adjoint_tower_data('G', 2).is_err());
    }

    #[test]
    fn codim_two_for_the_configurations_used() {
        let cases: [(char, usize, usize, usize); 6] =
            [('D', 6, 6, 5), ('E', 6, 1, 1), ('B', 5, 3, 1), ('E', 6, 2, 1), ('E', 7, 1, 7), ('E', 8, 8, 1)];
        for (l, n, p, q) in cases {
            assert!(codim_two_criterion(&rs(l, n), &par(n, &[p]), &par(n, &[q])), "{l}{n}");
        }
    }
}
