//! The catalog of cominuscule spaces: degree bounds `d_max`, `D_max` and the
//! per-degree data `(w_d, Sigma(Q_d))` of the quantum-to-classical principle.
//!
//! The source tables are stored verbatim in the catalog file together with a
//! SHA-256 checksum; every numerical entry is re-derived from the table rows
//! and from root-system data when the file is loaded.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{KqError, Result};
use crate::ktheory::Incidence;
use crate::root_system::{RootSystem, Weight};
use crate::weyl::{coset_rep_from_weight, ParabolicSubset, Side, WeylElement};

/// The catalog shipped with the crate.
pub const DEFAULT_CATALOG: &str = include_str!("../data/catalog.json");

pub const SCHEMA: &str = "kq-catalog/1";

/// Where a catalog value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Printed in the source tables.
    #[serde(rename = "PAPER-TABLE")]
    PaperTable,
    /// Well-established data from the literature the tables build on.
    #[serde(rename = "EXTERNAL-REF")]
    ExternalRef,
    /// Recomputed from root-system data.
    #[serde(rename = "DERIVED")]
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::PaperTable => "PAPER-TABLE",
            Provenance::ExternalRef => "EXTERNAL-REF",
            Provenance::Derived => "DERIVED",
        })
    }
}

/// The cominuscule families, one per table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `G(k,n)`, type `A_{n-1}`, node `k`.
    Grassmannian { k: usize, n: usize },
    /// `Q^m`: `B_{(m+1)/2}` for odd `m`, `D_{(m+2)/2}` for even `m`, node 1.
    Quadric { m: usize },
    /// `LG(n,2n)`, type `C_n`, node `n`.
    Lagrangian { n: usize },
    /// `OG(n,2n)`, one family of maximal isotropic subspaces, type `D_n`, node `n`.
    Spinor { n: usize },
    E6P1,
    E7P7,
}

impl Family {
    /// Parses `G(k,n)`, `Q(m)`, `LG(n,2n)`, `OG(n,2n)`, `E6/P1`, `E7/P7`.
    pub fn parse(name: &str) -> Result<Self> {
        let s: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || KqError::InvalidArgument(format!("unrecognised space `{name}`"));
        let args = |prefix: &str| -> Option<Vec<usize>> {
            let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            inner.split(',').map(|t| t.parse().ok()).collect()
        };
        let fam = if s.eq_ignore_ascii_case("E6/P1") {
            Family::E6P1
        } else if s.eq_ignore_ascii_case("E7/P7") {
            Family::E7P7
        } else if let Some(a) = args("LG") {
            match a[..] {
                [n, m] if m == 2 * n && n >= 2 => Family::Lagrangian { n },
                _ => return Err(bad()),
            }
        } else if let Some(a) = args("OG") {
            match a[..] {
                [n, m] if m == 2 * n && n >= 4 => Family::Spinor { n },
                _ => return Err(bad()),
            }
        } else if let Some(a) = args("G") {
            match a[..] {
                [k, n] if 1 <= k && k < n => Family::Grassmannian { k, n },
                _ => return Err(bad()),
            }
        } else if let Some(a) = args("Q") {
            match a[..] {
                [m] if m >= 3 => Family::Quadric { m },
                _ => return Err(bad()),
            }
        } else {
            return Err(bad());
        };
        Ok(fam)
    }

    /// Recognises a family from a root-system type and its one marked node.
    pub fn from_type(letter: char, rank: usize, node: usize) -> Option<Self> {
        match (letter, node) {
            ('A', k) if 1 <= k && k <= rank => Some(Family::Grassmannian { k, n: rank + 1 }),
            ('B', 1) if rank >= 2 => Some(Family::Quadric { m: 2 * rank - 1 }),
            ('D', 1) if rank >= 3 => Some(Family::Quadric { m: 2 * rank - 2 }),
            ('C', n) if n == rank && rank >= 2 => Some(Family::Lagrangian { n }),
            ('D', n) if n == rank && rank >= 4 => Some(Family::Spinor { n }),
            ('E', 1) if rank == 6 => Some(Family::E6P1),
            ('E', 7) if rank == 7 => Some(Family::E7P7),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Family::Grassmannian { k, n } => format!("G({k},{n})"),
            Family::Quadric { m } => format!("Q({m})"),
            Family::Lagrangian { n } => format!("LG({n},{})", 2 * n),
            Family::Spinor { n } => format!("OG({n},{})", 2 * n),
            Family::E6P1 => "E6/P1".into(),
            Family::E7P7 => "E7/P7".into(),
        }
    }

    /// Root-system type and the one-based marked node.
    pub fn root_data(&self) -> (char, usize, usize) {
        match *self {
            Family::Grassmannian { k, n } => ('A', n - 1, k),
            Family::Quadric { m } if m % 2 == 1 => ('B', m.div_ceil(2), 1),
            Family::Quadric { m } => ('D', (m + 2) / 2, 1),
            Family::Lagrangian { n } => ('C', n, n),
            Family::Spinor { n } => ('D', n, n),
            Family::E6P1 => ('E', 6, 1),
            Family::E7P7 => ('E', 7, 7),
        }
    }

    /// Index of the data row of the degree table describing this family.
    pub fn table_row(&self) -> usize {
        match *self {
            Family::Grassmannian { .. } => 0,
            Family::Quadric { .. } => 1,
            Family::Lagrangian { .. } => 2,
            Family::Spinor { n } if n % 2 == 0 => 3,
            Family::Spinor { .. } => 4,
            Family::E6P1 => 5,
            Family::E7P7 => 6,
        }
    }

    /// `(d_max, D_max)` as read off the family's table row.
    pub fn table_bounds(&self) -> (u32, u32) {
        let (a, b) = match *self {
            // The row is stated with p for k.
            Family::Grassmannian { k, n } => (k.min(n - k), k.max(n - k)),
            Family::Quadric { .. } => (2, 2),
            Family::Lagrangian { n } => (n + 1, n + 1),
            Family::Spinor { n } if n % 2 == 0 => (n / 2, n / 2),
            Family::Spinor { n } => (n / 2, n / 2 + 1),
            Family::E6P1 => (2, 4),
            Family::E7P7 => (3, 3),
        };
        (a as u32, b as u32)
    }

    /// `(a, n)` when the space is a generalised Veronese curve space
    /// `X(a,n)`, whose general rational normal curves have degree `n`.
    pub fn veronese_parameters(&self) -> Option<(usize, usize)> {
        match *self {
            Family::Quadric { m } => Some((m, 2)),
            Family::Lagrangian { n } => Some((1, n)),
            Family::Grassmannian { k, n } if 2 * k == n => Some((2, k)),
            Family::Spinor { n } if n % 2 == 0 => Some((4, n / 2)),
            Family::E7P7 => Some((8, 3)),
            _ => None,
        }
    }
}

/// The two values of a disputed row: the table's `D_max` and the degree from
/// which the rationality theorem for `X(1,n)` already applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disputed {
    #[serde(rename = "table_D_max")]
    pub table_d_max: u32,
    pub theorem_threshold: u32,
    pub provenance: Provenance,
}

impl Disputed {
    /// Degrees on which the two statements disagree.
    pub fn band(&self) -> std::ops::Range<u32> {
        self.theorem_threshold..self.table_d_max
    }
}

/// Per-degree data: `X(w_d)` and `Y_d = G/Q_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeData {
    pub d: u32,
    pub w_d: WeylElement,
    pub sigma_q: ParabolicSubset,
    pub zd_homogeneous: bool,
    pub provenance: Provenance,
    /// The word as printed in the source table, when it differs from `w_d`.
    pub table_word: Option<String>,
}

impl DegreeData {
    pub fn incidence(&self) -> Incidence {
        Incidence {
            w_d: self.w_d.clone(),
            sigma_q: self.sigma_q.clone(),
            homogeneous: self.zd_homogeneous,
        }
    }

    /// `Y_d` is a point.
    pub fn is_point(&self) -> bool {
        self.sigma_q.marked.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SpaceDescriptor {
    pub name: String,
    pub family: Family,
    pub rs: RootSystem,
    pub sigma_p: ParabolicSubset,
    pub dim_x: usize,
    pub c1: i64,
    pub d_max: u32,
    /// `D_max`.
    pub d_max_three: u32,
    pub degree_data: BTreeMap<u32, DegreeData>,
    pub provenance: BTreeMap<String, Provenance>,
    pub disputed: Option<Disputed>,
}

impl SpaceDescriptor {
    /// Instantiates a space from its family row alone. Type-A spaces get
    /// their complete degree data; the other families only get `Y_d = point`
    /// at `d = D_max`.
    pub fn from_family(family: Family) -> Result<Self> {
        let (letter, rank, node) = family.root_data();
        let rs = RootSystem::new(letter, rank)?;
        let sigma_p = ParabolicSubset::from_one_based(rank, &[node])?;
        let (d_max, d_max_three) = family.table_bounds();
        let mut degree_data = BTreeMap::new();
        match family {
            Family::Grassmannian { k, n } => {
                for d in 1..=d_max_three {
                    let data = grassmannian_degree(&rs, &sigma_p, k, n, d as usize)?;
                    let provenance = if d >= d_max_three || d > d_max {
                        Provenance::PaperTable
                    } else {
                        Provenance::ExternalRef
                    };
                    degree_data.insert(d, DegreeData { provenance, ..data });
                }
            }
            _ => {
                let point = point_degree(&rs, &sigma_p, d_max_three, Provenance::PaperTable);
                degree_data.insert(d_max_three, point);
            }
        }
        let disputed = match family {
            Family::Lagrangian { n } => Some(Disputed {
                table_d_max: d_max_three,
                theorem_threshold: n as u32,
                provenance: Provenance::PaperTable,
            }),
            _ => None,
        };
        let (dim_x, c1) = derived_invariants(&rs, &sigma_p)?;
        Ok(SpaceDescriptor {
            name: family.name(),
            family,
            rs,
            sigma_p,
            dim_x,
            c1,
            d_max,
            d_max_three,
            degree_data,
            provenance: default_provenance(),
            disputed,
        })
    }

    /// Degree data for `d`: stored entries, `Y_0 = X` for `d = 0`, and
    /// `Y_d = point` for `d >= D_max`.
    pub fn degree(&self, d: u32) -> Result<DegreeData> {
        if let Some(disp) = &self.disputed {
            if disp.band().contains(&d) {
                return Err(KqError::DisputedBand {
                    space: self.name.clone(),
                    degree: d,
                    detail: format!(
                        "the table gives D_max = {}, the rationality theorem already applies from d = {}",
                        disp.table_d_max, disp.theorem_threshold
                    ),
                });
            }
        }
        if let Some(data) = self.degree_data.get(&d) {
            return Ok(data.clone());
        }
        if d == 0 {
            return Ok(DegreeData {
                d: 0,
                w_d: WeylElement::identity(&self.rs),
                sigma_q: self.sigma_p.clone(),
                zd_homogeneous: true,
                provenance: Provenance::Derived,
                table_word: None,
            });
        }
        if d >= self.d_max_three {
            return Ok(point_degree(&self.rs, &self.sigma_p, d, Provenance::Derived));
        }
        Err(KqError::CatalogIncomplete(format!(
            "no degree-{d} data for {} (d_max = {}, D_max = {})",
            self.name, self.d_max, self.d_max_three
        )))
    }
}

fn default_provenance() -> BTreeMap<String, Provenance> {
    [
        ("D_max", Provenance::PaperTable),
        ("c1", Provenance::Derived),
        ("d_max", Provenance::PaperTable),
        ("dim_X", Provenance::Derived),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

/// `dim X = |R+| - |R_L+|` and the index `c1`, read off the sum of the
/// tangent weights at the base point, which is `c1 * varpi_P`.
fn derived_invariants(rs: &RootSystem, p: &ParabolicSubset) -> Result<(usize, i64)> {
    let levi = p.levi_nodes(rs.rank());
    let dim = rs.positive_roots.len() - rs.subsystem_positive_count(&levi);
    let mut sum = Weight::zero(rs.rank());
    for root in &rs.positive_roots {
        if p.marked.iter().any(|&i| root[i] != 0) {
            sum = sum.add(&rs.root_to_weight(root));
        }
    }
    let node = match p.marked.iter().collect::<Vec<_>>()[..] {
        [&i] => i,
        _ => return Err(KqError::Catalog("catalog spaces have exactly one marked node".into())),
    };
    if sum.0.iter().enumerate().any(|(i, &c)| i != node && c != 0) {
        return Err(KqError::Catalog("anticanonical weight is not a multiple of varpi_P".into()));
    }
    Ok((dim, sum.0[node]))
}

fn top_of(rs: &RootSystem, p: &ParabolicSubset) -> WeylElement {
    WeylElement::longest(rs).min_coset_rep(rs, p, Side::Right)
}

fn point_degree(rs: &RootSystem, p: &ParabolicSubset, d: u32, provenance: Provenance) -> DegreeData {
    DegreeData {
        d,
        w_d: top_of(rs, p),
        sigma_q: ParabolicSubset::new([]),
        zd_homogeneous: true,
        provenance,
        table_word: None,
    }
}

/// `X(w_d) = { V : E_a ⊂ V ⊂ E_b }` with `a = max(k-d, 0)`, `b = min(k+d, n)`,
/// and `Y_d` the flag variety of the pairs `(E_a, E_b)`. In the middle band
/// this is `G(k, k+d)` inside `G(k,n)` (or its dual), and `Y_d = G(k+d, n)`.
fn grassmannian_degree(rs: &RootSystem, p: &ParabolicSubset, k: usize, n: usize, d: usize) -> Result<DegreeData> {
    let a = k.saturating_sub(d);
    let b = (k + d).min(n);
    // The largest torus-fixed point of X(w_d): E_a plus the top k - a basis
    // vectors of E_b, as a weight in fundamental-weight coordinates.
    let inside = |i: usize| i <= a || (i > b - (k - a) && i <= b);
    let image = Weight(
        (1..n)
            .map(|j| inside(j) as i64 - inside(j + 1) as i64)
            .collect(),
    );
    let w_d = coset_rep_from_weight(rs, &image);
    debug_assert!(w_d.is_min_coset_rep(rs, p));
    let sigma: Vec<usize> = [a, b].into_iter().filter(|&x| 0 < x && x < n).collect();
    Ok(DegreeData {
        d: d as u32,
        w_d,
        sigma_q: ParabolicSubset::from_one_based(rs.rank(), &sigma)?,
        zd_homogeneous: true,
        provenance: Provenance::Derived,
        table_word: None,
    })
}

/// The complement of the nodes whose simple reflections stabilise `X(w)`:
/// `Sigma` of the stabiliser parabolic of the Schubert variety.
pub fn stabilizer_sigma(rs: &RootSystem, p: &ParabolicSubset, w: &WeylElement) -> ParabolicSubset {
    ParabolicSubset::new((0..rs.rank()).filter(|&i| {
        let moved = w.left_mul_simple(rs, i).min_coset_rep(rs, p, Side::Right);
        moved.length() > w.length()
    }))
}

/// Whether `X(w)` is the closed orbit `Q x_P` of its stabiliser `Q`, which
/// makes the incidence `G/(P cap Q)`.
pub fn is_homogeneous_schubert(rs: &RootSystem, p: &ParabolicSubset, w: &WeylElement) -> bool {
    let q = stabilizer_sigma(rs, p, w);
    let orbit_top = WeylElement::longest_of(rs, &q.levi_nodes(rs.rank())).min_coset_rep(rs, p, Side::Right);
    &orbit_top == w
}

/// The whole catalog.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub table: Vec<String>,
    pub middle_table: Vec<String>,
    pub table_checksum: String,
    pub spaces: Vec<SpaceDescriptor>,
}

impl Catalog {
    /// The catalog entry for `name`, or else the space instantiated from its
    /// family row.
    pub fn space(&self, name: &str) -> Result<SpaceDescriptor> {
        let family = Family::parse(name)?;
        match self.spaces.iter().find(|s| s.family == family) {
            Some(s) => Ok(s.clone()),
            None => SpaceDescriptor::from_family(family),
        }
    }

    /// Data rows of the `d_max` / `D_max` table.
    pub fn table_rows(&self) -> Vec<&str> {
        data_rows(&self.table)
    }

    /// Serialises back to the catalog file format (stable key order).
    pub fn to_json(&self) -> String {
        let file = CatalogFile {
            schema: SCHEMA.to_string(),
            table: self.table.clone(),
            middle_table: self.middle_table.clone(),
            table_checksum: self.table_checksum.clone(),
            spaces: self.spaces.iter().map(space_entry).collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("catalog serialises");
        s.push('\n');
        s
    }
}

fn data_rows(block: &[String]) -> Vec<&str> {
    block
        .iter()
        .filter(|l| l.contains('&'))
        .skip(1)
        .map(|l| l.as_str())
        .collect()
}

/// SHA-256 over both table blocks, lines joined by newlines.
pub fn table_checksum(table: &[String], middle_table: &[String]) -> String {
    let text = format!("{}\n{}", table.join("\n"), middle_table.join("\n"));
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    schema: String,
    table: Vec<String>,
    middle_table: Vec<String>,
    table_checksum: String,
    spaces: Vec<SpaceEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct SpaceEntry {
    name: String,
    #[serde(rename = "type")]
    rs_type: (char, usize),
    sigma_P: Vec<usize>,
    row: usize,
    dim_X: usize,
    c1: i64,
    d_max: u32,
    D_max: u32,
    degrees: Vec<DegreeEntry>,
    provenance: BTreeMap<String, Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    disputed: Option<Disputed>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct DegreeEntry {
    d: u32,
    w_d: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table_word: Option<String>,
    sigma_Qd: Vec<usize>,
    zd_homogeneous: bool,
    provenance: Provenance,
}

fn space_entry(s: &SpaceDescriptor) -> SpaceEntry {
    let (letter, rank, _) = s.family.root_data();
    SpaceEntry {
        name: s.name.clone(),
        rs_type: (letter, rank),
        sigma_P: s.sigma_p.one_based(),
        row: s.family.table_row(),
        dim_X: s.dim_x,
        c1: s.c1,
        d_max: s.d_max,
        D_max: s.d_max_three,
        degrees: s
            .degree_data
            .values()
            .map(|d| DegreeEntry {
                d: d.d,
                w_d: d.w_d.word().iter().map(|i| i + 1).collect(),
                table_word: d.table_word.clone(),
                sigma_Qd: d.sigma_q.one_based(),
                zd_homogeneous: d.zd_homogeneous,
                provenance: d.provenance,
            })
            .collect(),
        provenance: s.provenance.clone(),
        disputed: s.disputed.clone(),
    }
}

pub fn load_catalog(path: &Path) -> Result<Catalog> {
    let text = std::fs::read_to_string(path).map_err(|e| KqError::Io(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

pub fn default_catalog() -> Result<Catalog> {
    parse_catalog(DEFAULT_CATALOG)
}

/// Parses and validates a catalog; every failure names the offending entry.
pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let file: CatalogFile = serde_json::from_str(text).map_err(|e| KqError::Catalog(format!("schema violation: {e}")))?;
    if file.schema != SCHEMA {
        return Err(KqError::Catalog(format!("unknown schema `{}`", file.schema)));
    }
    let sum = table_checksum(&file.table, &file.middle_table);
    if sum != file.table_checksum {
        return Err(KqError::Catalog(format!(
            "table checksum mismatch: file says {}, tables hash to {sum}",
            file.table_checksum
        )));
    }
    if data_rows(&file.table).len() != 7 {
        return Err(KqError::Catalog("the degree table must have seven data rows".into()));
    }
    let spaces = file
        .spaces
        .into_iter()
        .map(|e| {
            let name = e.name.clone();
            validate_space(e).map_err(|err| KqError::Catalog(format!("entry {name}: {err}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Catalog {
        table: file.table,
        middle_table: file.middle_table,
        table_checksum: file.table_checksum,
        spaces,
    })
}

fn validate_space(e: SpaceEntry) -> Result<SpaceDescriptor> {
    let fail = |msg: String| Err(KqError::Catalog(msg));
    let (letter, rank) = e.rs_type;
    let node = match e.sigma_P[..] {
        [i] => i,
        _ => return fail("sigma_P must hold exactly one node".into()),
    };
    let family = Family::from_type(letter, rank, node)
        .ok_or_else(|| KqError::Catalog(format!("{letter}{rank} with node {node} is not cominuscule")))?;
    if family.name() != e.name {
        return fail(format!("name should be {}", family.name()));
    }
    if family.table_row() != e.row {
        return fail(format!("belongs to table row {}, not {}", family.table_row(), e.row));
    }
    if family.table_bounds() != (e.d_max, e.D_max) {
        let (a, b) = family.table_bounds();
        return fail(format!("table row gives d_max = {a}, D_max = {b}; entry has {}, {}", e.d_max, e.D_max));
    }
    if e.d_max > e.D_max {
        return fail("d_max exceeds D_max".into());
    }
    let rs = RootSystem::new(letter, rank)?;
    let sigma_p = ParabolicSubset::from_one_based(rank, &e.sigma_P)?;
    let (dim, c1) = derived_invariants(&rs, &sigma_p)?;
    if (dim, c1) != (e.dim_X, e.c1) {
        return fail(format!("root data give dim_X = {dim}, c1 = {c1}; entry has {}, {}", e.dim_X, e.c1));
    }
    for key in ["d_max", "D_max", "dim_X", "c1"] {
        if !e.provenance.contains_key(key) {
            return fail(format!("missing provenance for {key}"));
        }
    }
    let expected_dispute = matches!(family, Family::Lagrangian { .. });
    match (&e.disputed, family) {
        (Some(disp), Family::Lagrangian { n }) => {
            if disp.table_d_max != e.D_max || disp.theorem_threshold != n as u32 {
                return fail(format!("disputed values should be {} and {n}", e.D_max));
            }
        }
        (None, _) if !expected_dispute => {}
        _ => return fail("the disputed record belongs to exactly the C_n row".into()),
    }
    let mut degree_data = BTreeMap::new();
    for deg in e.degrees {
        let d = deg.d;
        let word: Vec<usize> = deg
            .w_d
            .iter()
            .map(|&i| if i >= 1 { Ok(i - 1) } else { Err(KqError::Catalog("words are one-based".into())) })
            .collect::<Result<_>>()?;
        let w_d = WeylElement::from_word(&rs, &word)?;
        if w_d.length() != word.len() {
            return fail(format!("degree {d}: w_d is not reduced"));
        }
        if !w_d.is_min_coset_rep(&rs, &sigma_p) {
            return fail(format!("degree {d}: w_d = {w_d} is not in W^P"));
        }
        let sigma_q = ParabolicSubset::from_one_based(rank, &deg.sigma_Qd)?;
        let stab = stabilizer_sigma(&rs, &sigma_p, &w_d);
        if stab != sigma_q {
            return fail(format!(
                "degree {d}: X({w_d}) is stabilised by Q with Sigma = {:?}, entry has {:?}",
                stab.one_based(),
                deg.sigma_Qd
            ));
        }
        if is_homogeneous_schubert(&rs, &sigma_p, &w_d) != deg.zd_homogeneous {
            return fail(format!("degree {d}: zd_homogeneous is wrong"));
        }
        if d >= e.D_max && !sigma_q.marked.is_empty() {
            return fail(format!("degree {d} >= D_max must have Y_d = point"));
        }
        if degree_data.contains_key(&d) {
            return fail(format!("degree {d} listed twice"));
        }
        degree_data.insert(
            d,
            DegreeData {
                d,
                w_d,
                sigma_q,
                zd_homogeneous: deg.zd_homogeneous,
                provenance: deg.provenance,
                table_word: deg.table_word,
            },
        );
    }
    Ok(SpaceDescriptor {
        name: e.name,
        family,
        rs,
        sigma_p,
        dim_x: dim,
        c1,
        d_max: e.d_max,
        d_max_three: e.D_max,
        degree_data,
        provenance: e.provenance,
        disputed: e.disputed,
    })
}

/// Expected dimension `d c1 - 2 dim X` of the three-point Gromov-Witten
/// variety; negative values predict emptiness.
pub fn gw_dimension(s: &SpaceDescriptor, d: u32) -> i64 {
    d as i64 * s.c1 - 2 * s.dim_x as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportItem {
    pub space: String,
    pub check: String,
    pub flagged: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ConsistencyReport {
    pub items: Vec<ReportItem>,
}

impl ConsistencyReport {
    pub fn flagged(&self) -> Vec<&ReportItem> {
        self.items.iter().filter(|i| i.flagged).collect()
    }
}

/// Cross-checks the degree bounds against the naive dimension count and the
/// Veronese-curve degrees. Discrepancies are listed, never fixed.
pub fn consistency_report(catalog: &Catalog) -> ConsistencyReport {
    consistency_report_for(&catalog.spaces)
}

pub fn consistency_report_for(spaces: &[SpaceDescriptor]) -> ConsistencyReport {
    let mut items = Vec::new();
    let mut c_row_flagged = false;
    for s in spaces {
        let mut item = |check: &str, flagged: bool, detail: String| {
            items.push(ReportItem {
                space: s.name.clone(),
                check: check.to_string(),
                flagged,
                detail,
            })
        };
        // (iii) The C_n row against the rationality theorem for X(1,n).
        if let Some(disp) = &s.disputed {
            let gw = gw_dimension(s, disp.theorem_threshold);
            item(
                "C_n row",
                !c_row_flagged,
                format!(
                    "table gives d_max = D_max = {}; the rationality theorem for X(1,{n}) gives a nonempty rational \
                     Gromov-Witten variety from d = {n} (expected dimension {gw} there); degrees {:?} are refused",
                    disp.table_d_max,
                    disp.band(),
                    n = disp.theorem_threshold
                ),
            );
            c_row_flagged = true;
        }
        // (i)/(ii) Naive dimension count below D_max.
        for d in 1..s.d_max_three {
            if s.disputed.as_ref().is_some_and(|disp| disp.band().contains(&d)) {
                continue;
            }
            let gw = gw_dimension(s, d);
            if gw < 0 {
                continue;
            }
            if s.family == Family::E6P1 && d == 3 {
                item(
                    "dimension count",
                    true,
                    format!(
                        "d = 3: expected dimension {gw} >= 0, yet no degree-3 curve passes through three general points"
                    ),
                );
            } else {
                item(
                    "dimension count",
                    true,
                    format!("d = {d} < D_max: expected dimension {gw} >= 0 predicts curves through three general points"),
                );
            }
        }
        // Veronese degrees.
        if let Some((a, n)) = s.family.veronese_parameters() {
            let ok = s.d_max_three as usize == n || s.disputed.is_some();
            item(
                "Veronese degree",
                !ok,
                format!("X({a},{n}): rational normal curves of degree {n}; D_max = {}", s.d_max_three),
            );
        }
    }
    ConsistencyReport { items }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_loads_and_round_trips() {
        let cat = default_catalog().unwrap();
        assert_eq!(cat.spaces.len(), 11);
        assert_eq!(cat.to_json(), DEFAULT_CATALOG);
    }

    #[test]
    fn family_instantiation_matches_catalog_entries() {
        let cat = default_catalog().unwrap();
        for s in &cat.spaces {
            let fresh = SpaceDescriptor::from_family(s.family).unwrap();
            assert_eq!((fresh.dim_x, fresh.c1, fresh.d_max, fresh.d_max_three), (s.dim_x, s.c1, s.d_max, s.d_max_three));
            for (d, data) in &fresh.degree_data {
                let stored = &s.degree_data[d];
                assert_eq!((&stored.w_d, &stored.sigma_q), (&data.w_d, &data.sigma_q), "{} d={d}", s.name);
            }
        }
    }

    #[test]
    fn parses_space_names() {
        assert_eq!(Family::parse("G(2,5)").unwrap(), Family::Grassmannian { k: 2, n: 5 });
        assert_eq!(Family::parse("LG(3,6)").unwrap(), Family::Lagrangian { n: 3 });
        assert_eq!(Family::parse("OG(5, 10)").unwrap(), Family::Spinor { n: 5 });
        assert_eq!(Family::parse("Q(4)").unwrap().root_data(), ('D', 3, 1));
        assert_eq!(Family::parse("e6/p1").unwrap(), Family::E6P1);
        for bad in ["G(0,3)", "LG(3,7)", "Q(2)", "F4/P1", "G(2)"] {
            assert!(Family::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn edited_values_are_rejected() {
        let edited = DEFAULT_CATALOG.replacen("E_7 & E_7/P_7 & 3 & 3", "E_7 & E_7/P_7 & 3 & 4", 1);
        assert!(matches!(parse_catalog(&edited), Err(KqError::Catalog(m)) if m.contains("checksum")));
        let v: serde_json::Value = serde_json::from_str(DEFAULT_CATALOG).unwrap();
        let mut v2 = v.clone();
        v2["spaces"][10]["D_max"] = 4.into();
        let err = parse_catalog(&v2.to_string()).unwrap_err();
        assert!(err.to_string().contains("E7/P7"), "{err}");
        let mut v3 = v.clone();
        v3["spaces"][9]["degrees"][0]["sigma_Qd"] = serde_json::json!([2]);
        assert!(parse_catalog(&v3.to_string()).is_err());
    }

    #[test]
    fn degree_lookup() {
        let cat = default_catalog().unwrap();
        let lg = cat.space("LG(3,6)").unwrap();
        assert!(matches!(lg.degree(3), Err(KqError::DisputedBand { degree: 3, .. })));
        assert!(matches!(lg.degree(2), Err(KqError::CatalogIncomplete(_))));
        assert!(lg.degree(4).unwrap().is_point());
        assert!(lg.degree(7).unwrap().is_point());
        let e6 = cat.space("E6/P1").unwrap();
        let d3 = e6.degree(3).unwrap();
        assert_eq!(d3.sigma_q.one_based(), vec![4]);
        assert!(!d3.zd_homogeneous);
        assert_eq!(d3.w_d.word_string(), "s2.s6.s5.s4.s3.s1");
        let g = cat.space("G(3,7)").unwrap();
        assert_eq!((g.d_max, g.d_max_three), (3, 4));
        assert_eq!(g.degree(0).unwrap().sigma_q, g.sigma_p);
    }

    #[test]
    fn gw_dimensions() {
        let cat = default_catalog().unwrap();
        assert_eq!(gw_dimension(&cat.space("G(2,4)").unwrap(), 2), 0);
        assert_eq!(gw_dimension(&cat.space("G(2,5)").unwrap(), 3), 3);
        assert_eq!(gw_dimension(&cat.space("E6/P1").unwrap(), 3), 4);
    }

    #[test]
    fn report_flags_exactly_two_items_on_the_shipped_catalog() {
        let report = consistency_report(&default_catalog().unwrap());
        let flagged: Vec<(&str, &str)> = report.flagged().iter().map(|i| (i.space.as_str(), i.check.as_str())).collect();
        assert_eq!(flagged, vec![("LG(3,6)", "C_n row"), ("E6/P1", "dimension count")]);
    }

    #[test]
    fn projective_three_space_exposes_the_type_a_bound() {
        // D_max = max(1, 3) = 3, yet conics already pass through three
        // general points of P^3 (expected dimension 2 at d = 2).
        let p3 = SpaceDescriptor::from_family(Family::parse("G(1,4)").unwrap()).unwrap();
        let report = consistency_report_for(&[p3]);
        let flagged = report.flagged();
        assert_eq!(flagged.len(), 1);
        assert!(flagged[0].detail.starts_with("d = 2 < D_max"));
    }
}
