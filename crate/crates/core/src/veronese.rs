//! The models `X(n, a)` for `a` in {1, 2, 4} as generalised Veronese curves:
//! the maps `nu_i` (minors, symmetric minors, Pfaffians), the membership
//! criterion on the chart `v_{-n} = 1`, the dimension identities behind
//! the rationality statements, and splitting types of curves in
//! Grassmannians computed from section counts.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{KqError, Result};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Dense row-major matrix of rationals.
pub type Matrix = Vec<Vec<Q>>;

pub fn matrix_from_ints(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
}

/// `X(n, a)`: `LG(n, 2n)` for `a = 1`, `G(n, 2n)` for `a = 2`, the spinor
/// variety `OG(2n, 4n)` for `a = 4`. The tangent space at the base point is
/// symmetric `n x n` matrices, all `n x n` matrices, or skew `2n x 2n`
/// matrices respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VeroneseModel {
    pub a: u32,
    pub n: usize,
}

impl VeroneseModel {
    pub fn new(a: u32, n: usize) -> Result<Self> {
        match a {
            1 | 2 | 4 => {}
            8 => {
                return Err(KqError::InvalidArgument(
                    "a = 8 (the E7/P7 case, n = 3) has no matrix model here; only a in {1, 2, 4} is supported".into(),
                ))
            }
            _ => return Err(KqError::InvalidArgument(format!("a = {a} is not one of 1, 2, 4"))),
        }
        if n < 2 {
            return Err(KqError::InvalidArgument(format!("n = {n} must be at least 2")));
        }
        Ok(VeroneseModel { a, n })
    }

    /// Side length of the tangent-space matrices.
    pub fn matrix_size(&self) -> usize {
        if self.a == 4 {
            2 * self.n
        } else {
            self.n
        }
    }

    pub fn dimension(&self) -> usize {
        dimension(self.a as i64, self.n as i64) as usize
    }

    /// Index sets labelling the coordinates of `V_{-n+2i}`, in lexicographic
    /// order: pairs (rows, columns) of `i`-subsets for `a = 2`, the pairs with
    /// rows <= columns for `a = 1`, and `2i`-subsets for `a = 4`.
    pub fn coordinate_labels(&self, i: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let m = self.matrix_size();
        match self.a {
            4 => (0..m).combinations(2 * i).map(|s| (s.clone(), s)).collect(),
            a => {
                let sets: Vec<Vec<usize>> = (0..m).combinations(i).collect();
                let mut out = Vec::new();
                for (x, r) in sets.iter().enumerate() {
                    for (y, c) in sets.iter().enumerate() {
                        if a == 2 || x <= y {
                            out.push((r.clone(), c.clone()));
                        }
                    }
                }
                out
            }
        }
    }

    /// Dimension of `V_{-n+2i}` in the coordinates above.
    pub fn component_dim(&self, i: usize) -> usize {
        if i == 0 {
            return 1;
        }
        let m = self.matrix_size();
        match self.a {
            4 => binomial(m, 2 * i),
            2 => binomial(m, i).pow(2),
            _ => {
                let b = binomial(m, i);
                b * (b + 1) / 2
            }
        }
    }

    pub fn check_matrix(&self, x: &Matrix) -> Result<()> {
        let m = self.matrix_size();
        if x.len() != m || x.iter().any(|r| r.len() != m) {
            return Err(KqError::InvalidArgument(format!("expected a {m}x{m} matrix")));
        }
        let ok = match self.a {
            1 => (0..m).all(|i| (0..m).all(|j| x[i][j] == x[j][i])),
            4 => (0..m).all(|i| (0..m).all(|j| x[i][j] == -x[j][i].clone())),
            _ => true,
        };
        if !ok {
            let shape = if self.a == 1 { "symmetric" } else { "skew-symmetric" };
            return Err(KqError::InvalidArgument(format!("matrix is not {shape}")));
        }
        Ok(())
    }

    fn coordinates(&self, i: usize, x: &Matrix) -> Vec<Q> {
        self.coordinate_labels(i)
            .into_iter()
            .map(|(r, c)| {
                if self.a == 4 {
                    pfaffian(&submatrix(x, &r, &r))
                } else {
                    determinant(&submatrix(x, &r, &c))
                }
            })
            .collect()
    }

    /// `nu_i(x)` for `2 <= i <= n`.
    pub fn nu(&self, i: usize, x: &Matrix) -> Result<Vec<Q>> {
        if !(2..=self.n).contains(&i) {
            return Err(KqError::InvalidArgument(format!("nu_{i} is defined for 2 <= i <= {}", self.n)));
        }
        self.check_matrix(x)?;
        Ok(self.coordinates(i, x))
    }

    /// Rebuilds the tangent vector from the coordinates of `V_{-n+2}`.
    pub fn matrix_from_tangent(&self, v1: &[Q]) -> Result<Matrix> {
        if v1.len() != self.component_dim(1) {
            return Err(KqError::InvalidArgument("tangent component has the wrong length".into()));
        }
        let m = self.matrix_size();
        let mut x = vec![vec![Q::zero(); m]; m];
        for ((r, c), val) in self.coordinate_labels(1).into_iter().zip(v1) {
            let (i, j) = if self.a == 4 { (r[0], r[1]) } else { (r[0], c[0]) };
            x[i][j] = val.clone();
            match self.a {
                1 => x[j][i] = val.clone(),
                4 => x[j][i] = -val.clone(),
                _ => {}
            }
        }
        Ok(x)
    }

    /// The point `(1, x, nu_2(x), ..., nu_n(x))` of `X(n, a)`.
    pub fn point(&self, x: &Matrix) -> Result<GradedVector> {
        self.check_matrix(x)?;
        let components = (0..=self.n)
            .map(|i| if i == 0 { vec![Q::one()] } else { self.coordinates(i, x) })
            .collect();
        Ok(GradedVector { components })
    }

    pub fn check_vector(&self, v: &GradedVector) -> Result<()> {
        if v.components.len() != self.n + 1 {
            return Err(KqError::InvalidArgument(format!("expected {} graded components", self.n + 1)));
        }
        for (i, c) in v.components.iter().enumerate() {
            if c.len() != self.component_dim(i) {
                return Err(KqError::InvalidArgument(format!(
                    "component {i} has {} coordinates, expected {}",
                    c.len(),
                    self.component_dim(i)
                )));
            }
        }
        Ok(())
    }

    /// Whether `[v]` lies on `X(n, a)`, for `v` on the chart `v_{-n} = 1`:
    /// `v_{-n+2i} = nu_i(v_{-n+2})` for `2 <= i <= n`.
    pub fn membership(&self, v: &GradedVector) -> Result<bool> {
        self.check_vector(v)?;
        if !v.components[0][0].is_one() {
            return Err(KqError::InvalidArgument(
                "membership is only decided on the chart v_{-n} = 1".into(),
            ));
        }
        let x = self.matrix_from_tangent(&v.components[1])?;
        Ok((2..=self.n).all(|i| v.components[i] == self.coordinates(i, &x)))
    }
}

/// `v = (v_{-n}, v_{-n+2}, ..., v_n)`; component `i` holds the coordinates of
/// `V_{-n+2i}` in [`VeroneseModel::coordinate_labels`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVector {
    pub components: Vec<Vec<Q>>,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn submatrix(x: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    rows.iter().map(|&r| cols.iter().map(|&c| x[r][c].clone()).collect()).collect()
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(x: &Matrix) -> Q {
    let n = x.len();
    let mut a = x.clone();
    let mut det = Q::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Q::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &pivot;
            for c in k..n {
                let t = &f * &a[k][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Pfaffian of a skew matrix by congruence elimination: each step clears
/// the first two rows against the pivot `a[k][k+1]`.
pub fn pfaffian(x: &Matrix) -> Q {
    let n = x.len();
    if n % 2 == 1 {
        return Q::zero();
    }
    let mut a = x.clone();
    // col_i += c col_src and row_i += c row_src, a congruence of determinant 1.
    let add_multiple = |a: &mut Matrix, i: usize, src: usize, c: &Q| {
        for r in 0..n {
            let t = c * &a[r][src];
            a[r][i] += t;
        }
        for col in 0..n {
            let t = c * &a[src][col];
            a[i][col] += t;
        }
    };
    let mut pf = Q::one();
    for k in (0..n).step_by(2) {
        let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
            return Q::zero();
        };
        if j != k + 1 {
            a.swap(j, k + 1);
            for row in a.iter_mut() {
                row.swap(j, k + 1);
            }
            pf = -pf;
        }
        let p = a[k][k + 1].clone();
        for i in k + 2..n {
            if !a[k][i].is_zero() {
                let c = -(&a[k][i] / &p);
                add_multiple(&mut a, i, k + 1, &c);
            }
            if !a[k + 1][i].is_zero() {
                let c = &a[k + 1][i] / &p;
                add_multiple(&mut a, i, k, &c);
            }
        }
        pf *= p;
    }
    pf
}

/// `dim X(n, a) = (a n^2 + 2n - a n) / 2`.
pub fn dimension(a: i64, n: i64) -> i64 {
    dimension_twice(a, n) / 2
}

/// `c_1(X(n, a)) = a n + 2 - a`.
pub fn first_chern(a: i64, n: i64) -> i64 {
    a * n + 2 - a
}

/// Checks, in exact integers, the dimension count for curves of degree
/// `d >= n` on `X(n, a)`: the curves of degree `d - n + 1` in the projective
/// osculating space `P T^1 = P^{dim X}` through `d - n` points of the
/// codimension `n - 1 + (n-1)(n-2)a/2` subvariety `Y` form a family of
/// dimension
/// `(d-n+1)(dim X + 1) + dim X - 3 - (d-n) codim Y`
/// `= (d-n+2)(dim X + 1) - 4 - (d-n) codim Y`,
/// which must equal `d c_1(X) - 2 = d(an + 2 - a) - 2`. Every quantity is
/// doubled to stay integral.
pub fn dim_identity_check(a: i64, n: i64, d: i64) -> bool {
    let dim2 = dimension_twice(a, n);
    let codim2 = 2 * (n - 1) + (n - 1) * (n - 2) * a;
    let count2 = (d - n + 1) * (dim2 + 2) + dim2 - 6 - (d - n) * codim2;
    let regrouped2 = (d - n + 2) * (dim2 + 2) - 8 - (d - n) * codim2;
    let expected2 = 2 * (d * first_chern(a, n) - 2);
    count2 == regrouped2 && regrouped2 == expected2
}

/// `2 dim X(n, a)`, integral for every `a`.
fn dimension_twice(a: i64, n: i64) -> i64 {
    a * n * n + 2 * n - a * n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Emptiness {
    Empty,
    NonemptyRational,
}

/// Status of the variety of degree-`d` curves through three general points
/// of `X(n, a)`: empty below degree `n`, rational from degree `n` on.
pub fn emptiness(a: u32, n: usize, d: usize) -> Result<Emptiness> {
    if n == 2 {
        if a == 0 {
            return Err(KqError::InvalidArgument("a must be positive".into()));
        }
    } else {
        VeroneseModel::new(a, n)?;
    }
    Ok(if d < n { Emptiness::Empty } else { Emptiness::NonemptyRational })
}

/// Homogeneous binary form `sum_j c_j s^{deg-j} t^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub coeffs: Vec<Q>,
}

impl BinaryForm {
    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![Q::zero(); degree + 1],
        }
    }

    /// `c s^{degree-j} t^j`.
    pub fn monomial(degree: usize, j: usize, c: i64) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[j] = q(c);
        f
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        BinaryForm {
            coeffs: coeffs.iter().map(|&c| q(c)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = Self::zero(self.degree() + other.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    fn add_assign(&mut self, other: &BinaryForm, sign: bool) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if sign {
                *a += b;
            } else {
                *a -= b;
            }
        }
    }

    /// Substitutes `(s, t) -> (s^e, t^e)`: composition with the degree-`e`
    /// self-map of the line.
    pub fn compose_power(&self, e: usize) -> BinaryForm {
        let mut out = Self::zero(self.degree() * e);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[j * e] = c.clone();
        }
        out
    }
}

impl BinaryForm {
    /// Value at `(1, x)`.
    fn eval_affine(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }
}

/// Determinant of a square matrix of binary forms, row `r` homogeneous of
/// degree `degrees[r]`: evaluated on the chart `s = 1` at `deg + 1` points
/// and recovered by Newton interpolation.
fn form_determinant(m: &[Vec<BinaryForm>], degrees: &[usize]) -> BinaryForm {
    let total: usize = degrees.iter().sum();
    let xs: Vec<Q> = (0..=total as i64).map(q).collect();
    let mut dd: Vec<Q> = xs
        .iter()
        .map(|x| determinant(&m.iter().map(|row| row.iter().map(|f| f.eval_affine(x)).collect()).collect()))
        .collect();
    // Divided differences in place: dd[i] = f[x_0, ..., x_i].
    for level in 1..=total {
        for i in (level..=total).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form, lowest coefficient first.
    let mut poly = vec![Q::zero(); total + 1];
    for i in (0..=total).rev() {
        // poly <- poly * (x - x_i) + dd[i]
        let mut next = vec![Q::zero(); total + 1];
        for (j, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j + 1 <= total {
                next[j + 1] += c;
            }
            next[j] -= c * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    BinaryForm { coeffs: poly }
}

/// Dense univariate polynomial, lowest degree first.
fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty") / lead;
        for (i, c) in b.iter().enumerate() {
            let t = &f * c;
            r[shift + i] -= t;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: Vec<Q>, b: Vec<Q>) -> Vec<Q> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Whether the forms have no common zero on the projective line. Stops
/// drawing forms once the running gcd is constant.
fn no_common_zero(forms: impl Iterator<Item = BinaryForm>) -> bool {
    let (mut infinity_ok, mut g): (bool, Vec<Q>) = (false, Vec::new());
    for f in forms.filter(|f| !f.is_zero()) {
        // The point [1:0] is a zero iff the s^deg coefficient vanishes.
        infinity_ok |= !f.coeffs[0].is_zero();
        // Affine zeros t = 1: f(s, 1) = sum_j c_j s^{deg-j}.
        g = poly_gcd(g, f.coeffs.iter().rev().cloned().collect());
        if infinity_ok && g.len() == 1 {
            return true;
        }
    }
    false
}

/// Rank over the rationals.
pub fn rank(rows: Vec<Vec<Q>>) -> usize {
    let mut a = rows;
    let mut r = 0;
    let cols = a.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][c].clone();
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
    }
    r
}

/// `h^0(S(m))` for the subsheaf `S` of `O^N` spanned by the rows: the rank
/// of `(g_r) -> sum_r g_r row_r` on forms of degree `m - deg row_r`.
pub fn section_count(rows: &[Vec<BinaryForm>], m: usize) -> usize {
    let mut vectors = Vec::new();
    for row in rows {
        let e = row[0].degree();
        if m < e {
            continue;
        }
        for l in 0..=m - e {
            let g = BinaryForm::monomial(m - e, l, 1);
            vectors.push(row.iter().flat_map(|f| g.mul(f).coeffs).collect());
        }
    }
    if vectors.is_empty() {
        0
    } else {
        rank(vectors)
    }
}

/// Splitting type of the rank-`k` subbundle of the trivial bundle `O^N` on
/// the projective line spanned by the rows of a `k x N` matrix of binary
/// forms (each row homogeneous). The summands `O(a_i)` are recovered from
/// the section counts `h^0(S(m)) = sum_i max(0, m + a_i + 1)` and returned
/// in non-increasing order.
pub fn splitting_type(rows: &[Vec<BinaryForm>]) -> Result<Vec<i64>> {
    let k = rows.len();
    if k == 0 {
        return Err(KqError::InvalidArgument("no rows".into()));
    }
    let n = rows[0].len();
    if n < k || rows.iter().any(|r| r.len() != n) {
        return Err(KqError::InvalidArgument("rows must have a common length of at least the row count".into()));
    }
    let degrees: Vec<usize> = rows
        .iter()
        .map(|r| {
            let e = r[0].degree();
            if r.iter().any(|f| f.degree() != e) {
                Err(KqError::InvalidArgument("each row must be homogeneous of one degree".into()))
            } else {
                Ok(e)
            }
        })
        .collect::<Result<_>>()?;
    // Cauchy-Binet: det(M C) is a combination of the maximal minors of M,
    // so two such determinants with no common zero already certify full
    // rank everywhere; the minors themselves are the fallback.
    let combined = (1..=2i64).map(|seed| {
        let mixed: Vec<Vec<BinaryForm>> = rows
            .iter()
            .map(|r| {
                (0..k)
                    .map(|c| {
                        let mut f = BinaryForm::zero(r[0].degree());
                        for (j, g) in r.iter().enumerate() {
                            let w = q((seed + j as i64).pow(c as u32) * if (j + c) % 3 == 0 { -1 } else { 1 });
                            for (a, b) in f.coeffs.iter_mut().zip(&g.coeffs) {
                                *a += &w * b;
                            }
                        }
                        f
                    })
                    .collect()
            })
            .collect();
        form_determinant(&mixed, &degrees)
    });
    let minors = (0..n).combinations(k).map(|cols| {
        let sub: Vec<Vec<BinaryForm>> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        form_determinant(&sub, &degrees)
    });
    if !no_common_zero(combined.clone()) && !no_common_zero(minors) {
        return Err(KqError::InvalidArgument(
            "the rows drop rank somewhere on the line: not a subbundle".into(),
        ));
    }
    let top: usize = degrees.iter().sum();
    let mut out = Vec::with_capacity(k);
    let (mut h_prev, mut step_prev) = (0usize, 0usize);
    for m in 0..=top {
        let h = section_count(rows, m);
        // Number of summands O(a) with -a <= m.
        let step = h - h_prev;
        for _ in step_prev..step {
            out.push(-(m as i64));
        }
        if step == k {
            break;
        }
        h_prev = h;
        step_prev = step;
    }
    let degree: i64 = out.iter().sum();
    if out.len() != k || degree != -(top as i64) {
        return Err(KqError::Consistency(format!(
            "section counts give {out:?}, which does not match the determinant degree -{top}"
        )));
    }
    Ok(out)
}

/// The tautological subbundle of `G_Q(2, 4)`, a line, along the degree-`e`
/// map `[s:t] -> [s^e:t^e]`: in `C^4 = C^2 (x) C^2` with the determinant
/// quadric the isotropic plane over `[u:v]` is `(u, v) (x) C^2`.
pub fn gq24_block(e: usize) -> Vec<Vec<BinaryForm>> {
    let s = BinaryForm::monomial(e, 0, 1);
    let t = BinaryForm::monomial(e, e, 1);
    let z = BinaryForm::zero(e);
    vec![
        vec![s.clone(), z.clone(), t.clone(), z.clone()],
        vec![z.clone(), s, z, t],
    ]
}

/// Orthogonal direct sum of blocks: block-diagonal row matrix.
pub fn direct_sum(blocks: &[Vec<Vec<BinaryForm>>]) -> Vec<Vec<BinaryForm>> {
    let width: usize = blocks.iter().map(|b| b[0].len()).sum();
    let mut out = Vec::new();
    let mut offset = 0;
    for b in blocks {
        for row in b {
            let e = row[0].degree();
            let mut full = vec![BinaryForm::zero(e); width];
            for (j, f) in row.iter().enumerate() {
                full[offset + j] = f.clone();
            }
            out.push(full);
        }
        offset += b[0].len();
    }
    out
}

/// The degree `n - a` curve in `G_Q(n, 2n)` built from orthogonal
/// `G_Q(2, 4)` blocks: `a` blocks of degree 1 on `C^{4a}` and
/// `(n - 2a)/2` blocks of degree 2 on the complement. Requires `n` even.
pub fn gq_block_curve(n: usize, a: usize) -> Result<Vec<Vec<BinaryForm>>> {
    if n % 2 == 1 || 2 * a > n {
        return Err(KqError::InvalidArgument(format!(
            "block curve needs n even and 2a <= n (got n = {n}, a = {a})"
        )));
    }
    let mut blocks = vec![gq24_block(1); a];
    blocks.extend(std::iter::repeat_n(gq24_block(2), (n - 2 * a) / 2));
    Ok(direct_sum(&blocks))
}

/// Whether a binary-form row vector is isotropic for the split form
/// `x1 x4 - x2 x3` on each `C^4` block, i.e. the curve lands in `G_Q`.
pub fn rows_isotropic(rows: &[Vec<BinaryForm>]) -> bool {
    let width = rows[0].len();
    if width % 4 != 0 {
        return false;
    }
    let pair = |u: &[BinaryForm], v: &[BinaryForm]| -> bool {
        (0..width / 4).all(|b| {
            let o = 4 * b;
            let mut f = u[o].mul(&v[o + 3]);
            f.add_assign(&u[o + 3].mul(&v[o]), true);
            f.add_assign(&u[o + 1].mul(&v[o + 2]), false);
            f.add_assign(&u[o + 2].mul(&v[o + 1]), false);
            f.is_zero()
        })
    };
    rows.iter().all(|u| rows.iter().all(|v| pair(u, v)))
}

impl std::fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d = self.degree();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let mono = match (d - j, j) {
                    (0, 0) => String::new(),
                    (a, 0) => format!("s^{a}"),
                    (0, b) => format!("t^{b}"),
                    (a, b) => format!("s^{a}t^{b}"),
                };
                if mono.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    mono
                } else if (-c.clone()).is_one() {
                    format!("-{mono}")
                } else {
                    format!("{c}{mono}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
