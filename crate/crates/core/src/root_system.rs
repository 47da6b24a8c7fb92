//! Root data for the simple types A–G.
//!
//! Nodes are numbered as in Bourbaki's plates, starting at 1 in the public
//! API and at 0 internally. Roots are stored by their coefficients on the
//! simple roots, weights by their coordinates on the fundamental weights,
//! coroots by their coefficients on the simple coroots. With these bases the
//! pairing of a weight with a coroot is the plain dot product.
//!
//! `cartan[i][j] = <alpha_i^vee, alpha_j>`, so that
//! `s_i(alpha_j) = alpha_j - cartan[i][j] alpha_i`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{KqError, Result};

pub type Rational = Ratio<i64>;

/// A simple type letter together with its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub letter: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(letter: char, rank: usize) -> Result<Self> {
        let letter = letter.to_ascii_uppercase();
        let bad = |reason: &str| KqError::InvalidRootSystem {
            letter,
            rank,
            reason: reason.to_string(),
        };
        match letter {
            'A' if rank >= 1 => {}
            'B' if rank >= 2 => {}
            'C' if rank >= 2 => {}
            'D' if rank >= 3 => {}
            'E' if (6..=8).contains(&rank) => {}
            'F' if rank == 4 => {}
            'G' if rank == 2 => {}
            'A' | 'B' | 'C' | 'D' | 'E' | 'F' | 'G' => {
                return Err(bad("rank not allowed for this letter"))
            }
            _ => return Err(bad("unknown type letter")),
        }
        Ok(CartanType { letter, rank })
    }

    /// Order of the Weyl group, from the product-of-degrees formula.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.letter {
            'A' => fact(n + 1),
            'B' | 'C' => (1u128 << n) * fact(n),
            'D' => (1u128 << (n - 1)) * fact(n),
            'E' => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            'F' => 1152,
            _ => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// A weight, by its coordinates on the fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

/// A coweight or coroot, by its coefficients on the simple coroots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl Coweight {
    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// `<weight, coweight>`.
pub fn pairing(weight: &Weight, coweight: &Coweight) -> Result<i64> {
    if weight.rank() != coweight.0.len() {
        return Err(KqError::RankMismatch {
            expected: weight.rank(),
            got: coweight.0.len(),
        });
    }
    Ok(weight.0.iter().zip(&coweight.0).map(|(a, b)| a * b).sum())
}

/// A connected piece of a Dynkin subdiagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Component {
    pub cartan_type: CartanType,
    /// Zero-based node indices of the ambient diagram.
    pub nodes: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub cartan: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i) / 2`, normalised so the short roots have 1.
    pub symmetrizer: Vec<i64>,
    /// Positive roots on the simple roots, sorted by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    /// Fundamental weights expressed on the simple roots.
    pub fundamental_weights: Vec<Vec<Rational>>,
    pub highest_root: Vec<i64>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan_type == other.cartan_type
    }
}

impl Eq for RootSystem {}

fn cartan_matrix(t: CartanType) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t.letter {
        'A' | 'B' | 'C' | 'F' | 'G' => {
            for i in 1..n {
                link(i - 1, i);
            }
        }
        'D' => {
            for i in 1..n - 1 {
                link(i - 1, i);
            }
            link(n - 3, n - 1);
        }
        _ => {
            link(0, 2);
            link(2, 3);
            link(1, 3);
            for i in 4..n {
                link(i - 1, i);
            }
        }
    }
    let mut d = vec![1i64; n];
    match t.letter {
        'B' => {
            a[n - 1][n - 2] = -2;
            for x in d.iter_mut().take(n - 1) {
                *x = 2;
            }
        }
        'C' => {
            a[n - 2][n - 1] = -2;
            d[n - 1] = 2;
        }
        'F' => {
            a[2][1] = -2;
            d[0] = 2;
            d[1] = 2;
        }
        'G' => {
            a[0][1] = -3;
            d[1] = 3;
        }
        _ => {}
    }
    (a, d)
}

fn invert_rational(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = m[i].iter().map(|&x| Rational::from_integer(x)).collect();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("Cartan matrices are invertible");
        aug.swap(col, piv);
        let p = aug[col][col];
        for x in aug[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col];
                let pivot_row = aug[col].clone();
                for (x, y) in aug[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

impl RootSystem {
    pub fn new(letter: char, rank: usize) -> Result<Self> {
        Self::from_type(CartanType::new(letter, rank)?)
    }

    pub fn from_type(cartan_type: CartanType) -> Result<Self> {
        let (cartan, symmetrizer) = cartan_matrix(cartan_type);
        let positive_roots = reflection_closure(&cartan);
        let highest_root = positive_roots
            .last()
            .cloned()
            .expect("a root system has roots");
        // Fundamental weights: columns of the inverse Cartan matrix.
        let inv = invert_rational(&cartan);
        let n = cartan_type.rank;
        let fundamental_weights = (0..n)
            .map(|k| (0..n).map(|j| inv[j][k]).collect())
            .collect();
        Ok(RootSystem {
            cartan_type,
            cartan,
            symmetrizer,
            positive_roots,
            fundamental_weights,
            highest_root,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut r = vec![0; self.rank()];
        r[i] = 1;
        r
    }

    /// Weight-lattice coordinates of an element of the root lattice.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|i| (0..n).map(|j| self.cartan[i][j] * root[j]).sum())
                .collect(),
        )
    }

    /// Simple-root coefficients of a weight (rational in general).
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Rational> {
        let n = self.rank();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| self.fundamental_weights[k][j] * Rational::from_integer(w.0[k]))
                    .sum()
            })
            .collect()
    }

    /// `(x, x) / 2`-style norm helper: `(root, root)` with short simple roots of length 2.
    pub fn root_norm(&self, root: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += root[i] * root[j] * self.symmetrizer[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// The coroot of a root, on the simple coroots.
    pub fn coroot(&self, root: &[i64]) -> Coweight {
        // alpha_j = d_j alpha_j^vee in the normalisation (alpha_j, alpha_j) = 2 d_j.
        let half_norm = self.root_norm(root) / 2;
        Coweight(
            root.iter()
                .zip(&self.symmetrizer)
                .map(|(&c, &d)| {
                    debug_assert_eq!((c * d) % half_norm, 0);
                    c * d / half_norm
                })
                .collect(),
        )
    }

    pub fn simple_coroot(&self, i: usize) -> Coweight {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        Coweight(c)
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = vec![0; self.rank()];
        w[i] = 1;
        Weight(w)
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.positive_roots.iter().any(|r| r == v || *r == neg)
    }

    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        self.positive_roots.iter().any(|r| r == v)
    }

    /// Simple reflection `s_i` acting on root-lattice coordinates.
    pub fn reflect_root(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let p: i64 = (0..self.rank()).map(|j| self.cartan[i][j] * v[j]).sum();
        let mut out = v.to_vec();
        out[i] -= p;
        out
    }

    /// Simple reflection `s_i` acting on weight coordinates.
    pub fn reflect_weight(&self, i: usize, w: &Weight) -> Weight {
        let c = w.0[i];
        let mut out = w.0.clone();
        if c != 0 {
            for (j, x) in out.iter_mut().enumerate() {
                // alpha_i has weight coordinates cartan[j][i].
                *x -= c * self.cartan[j][i];
            }
        }
        Weight(out)
    }

    /// Whether `big - small` is a non-negative combination of simple roots.
    pub fn dominates(&self, big: &[i64], small: &[i64]) -> bool {
        big.iter().zip(small).all(|(a, b)| a >= b)
    }

    /// The Weyl involution `i -> sigma(i)` with `-w0(alpha_i) = alpha_sigma(i)`.
    pub fn weyl_involution(&self) -> Vec<usize> {
        let word = crate::weyl::WeylElement::longest(self).word().to_vec();
        (0..self.rank())
            .map(|i| {
                let mut r = self.simple_root(i);
                for &s in word.iter().rev() {
                    r = self.reflect_root(s, &r);
                }
                let neg: Vec<i64> = r.iter().map(|x| -x).collect();
                neg.iter()
                    .position(|&x| x == 1)
                    .expect("-w0 permutes the simple roots")
            })
            .collect()
    }

    /// Splits the subdiagram on `nodes` (zero-based) into connected components
    /// and identifies the type of each.
    pub fn components(&self, nodes: &[usize]) -> Vec<Component> {
        let mut seen = vec![false; self.rank()];
        let inside: Vec<bool> = (0..self.rank()).map(|i| nodes.contains(&i)).collect();
        let mut out = Vec::new();
        for &start in nodes {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..self.rank() {
                    if inside[j] && !seen[j] && self.cartan[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            let cartan_type = self.classify(&comp);
            out.push(Component {
                cartan_type,
                nodes: comp,
            });
        }
        out.sort();
        out
    }

    fn classify(&self, comp: &[usize]) -> CartanType {
        let n = comp.len();
        let ty = |letter| CartanType { letter, rank: n };
        if n == 1 {
            return ty('A');
        }
        let a = |x: usize, y: usize| self.cartan[comp[x]][comp[y]];
        let degree = |x: usize| (0..n).filter(|&y| y != x && a(x, y) != 0).count();
        let mut max_bond = 1;
        let mut bond = None;
        for x in 0..n {
            for y in 0..n {
                if x != y && a(x, y) * a(y, x) > max_bond {
                    max_bond = a(x, y) * a(y, x);
                    bond = Some((x, y));
                }
            }
        }
        match max_bond {
            3 => ty('G'),
            2 => {
                let (x, y) = bond.expect("bond recorded");
                if n == 2 {
                    return ty('B');
                }
                if degree(x) == 2 && degree(y) == 2 {
                    return ty('F');
                }
                let (end, inner) = if degree(x) == 1 { (x, y) } else { (y, x) };
                if self.symmetrizer[comp[end]] < self.symmetrizer[comp[inner]] {
                    ty('B')
                } else {
                    ty('C')
                }
            }
            _ => {
                let Some(branch) = (0..n).find(|&x| degree(x) == 3) else {
                    return ty('A');
                };
                let mut arms: Vec<usize> = (0..n)
                    .filter(|&y| y != branch && a(branch, y) != 0)
                    .map(|first| {
                        let (mut prev, mut cur, mut len) = (branch, first, 1);
                        loop {
                            let next = (0..n).find(|&z| z != prev && z != cur && a(cur, z) != 0);
                            match next {
                                Some(z) => {
                                    prev = cur;
                                    cur = z;
                                    len += 1;
                                }
                                None => break len,
                            }
                        }
                    })
                    .collect();
                arms.sort_unstable();
                if arms[0] == 1 && arms[1] == 1 {
                    ty('D')
                } else {
                    ty('E')
                }
            }
        }
    }

    /// Ambient (Bourbaki epsilon-basis) coordinates of the simple roots.
    pub fn ambient_simple_roots(&self) -> Vec<Vec<Rational>> {
        let n = self.rank();
        let int = |v: Vec<i64>| v.into_iter().map(Rational::from_integer).collect::<Vec<_>>();
        let eps = |dim: usize, i: usize, j: usize, sj: i64| {
            let mut v = vec![0i64; dim];
            v[i] += 1;
            v[j] += sj;
            v
        };
        match self.cartan_type.letter {
            'A' => (0..n).map(|i| int(eps(n + 1, i, i + 1, -1))).collect(),
            'B' | 'C' | 'D' => {
                let mut out: Vec<Vec<Rational>> =
                    (0..n - 1).map(|i| int(eps(n, i, i + 1, -1))).collect();
                let last = match self.cartan_type.letter {
                    'B' => {
                        let mut v = vec![0; n];
                        v[n - 1] = 1;
                        v
                    }
                    'C' => {
                        let mut v = vec![0; n];
                        v[n - 1] = 2;
                        v
                    }
                    _ => eps(n, n - 2, n - 1, 1),
                };
                out.push(int(last));
                out
            }
            'E' => {
                let half = Rational::new(1, 2);
                let mut out = Vec::new();
                let mut a1 = vec![-half; 8];
                a1[0] = half;
                a1[7] = half;
                out.push(a1);
                out.push(int(eps(8, 0, 1, 1)));
                out.push(int(eps(8, 1, 0, -1)));
                for i in 3..n {
                    out.push(int(eps(8, i - 1, i - 2, -1)));
                }
                out
            }
            'F' => {
                let half = Rational::new(1, 2);
                vec![
                    int(eps(4, 1, 2, -1)),
                    int(eps(4, 2, 3, -1)),
                    int(vec![0, 0, 0, 1]),
                    vec![half, -half, -half, -half],
                ]
            }
            _ => vec![int(vec![1, -1, 0]), int(vec![-2, 1, 1])],
        }
    }

    /// Number of positive roots of the subsystem spanned by `nodes`.
    pub fn subsystem_positive_count(&self, nodes: &[usize]) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| r.iter().enumerate().all(|(i, &c)| c == 0 || nodes.contains(&i)))
            .count()
    }

    /// Order of the Weyl group of the subsystem spanned by `nodes`.
    pub fn subsystem_weyl_order(&self, nodes: &[usize]) -> u128 {
        self.components(nodes)
            .iter()
            .map(|c| c.cartan_type.weyl_order())
            .product()
    }
}

/// Positive roots generated from the simple roots by reflection closure.
pub fn reflection_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut set: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            for i in 0..n {
                let p: i64 = (0..n).map(|j| cartan[i][j] * r[j]).sum();
                let mut s = r.clone();
                s[i] -= p;
                if s.iter().all(|&x| x >= 0) && set.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        roots.extend(next.iter().cloned());
        frontier = next;
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    roots
}
