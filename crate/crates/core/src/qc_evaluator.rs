//! Three-point equivariant K-theoretic Gromov-Witten invariants through the
//! quantum-to-classical principle
//! `I_d(a, b, c) = chi_{Y_d}(q_* p^* a . q_* p^* b . q_* p^* c)`.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::SpaceDescriptor;
use crate::charring::LaurentPoly;
use crate::error::{KqError, Result};
use crate::ktheory::{pushforward_qp, schubert_class, HomSpace, KClass, FIXED_POINT_CAP};
use crate::weyl::{parse_word, ParabolicSubset, Side, WeylElement};

/// Schubert labels of the three insertions.
#[derive(Debug, Clone)]
pub struct InvariantQuery<'a> {
    pub space: &'a SpaceDescriptor,
    pub d: u32,
    pub labels: [WeylElement; 3],
    /// Return the `R(T)`-valued invariant; otherwise its specialisation at 1.
    pub equivariant: bool,
}

/// The fixed-point space of `X`.
pub fn space_of(desc: &SpaceDescriptor, cap: u128) -> Result<Arc<HomSpace>> {
    HomSpace::with_cap(&desc.rs, &desc.sigma_p, cap)
}

/// Parses a Schubert label: `pt`, `X`, or a reduced word such as `s2.s1`
/// naming an element of `W^P`.
pub fn parse_label(desc: &SpaceDescriptor, label: &str) -> Result<WeylElement> {
    let rs = &desc.rs;
    match label.trim() {
        "pt" => Ok(WeylElement::identity(rs)),
        "X" => Ok(WeylElement::longest(rs).min_coset_rep(rs, &desc.sigma_p, Side::Right)),
        word => {
            let w = WeylElement::from_word(rs, &parse_word(word)?)?;
            if w.length() != parse_word(word)?.len() {
                return Err(KqError::InvalidArgument(format!("`{word}` is not a reduced word")));
            }
            if !w.is_min_coset_rep(rs, &desc.sigma_p) {
                return Err(KqError::InvalidArgument(format!(
                    "`{word}` is not a minimal coset representative for {}",
                    desc.name
                )));
            }
            Ok(w)
        }
    }
}

/// `I_d^T` for the three Schubert structure sheaves.
pub fn invariant(q: &InvariantQuery) -> Result<LaurentPoly> {
    invariant_with_cap(q, FIXED_POINT_CAP)
}

pub fn invariant_with_cap(q: &InvariantQuery, cap: u128) -> Result<LaurentPoly> {
    let pipeline = Pipeline::new(q.space, q.d, cap)?;
    let value = pipeline.evaluate(&q.labels)?;
    finish(value, q.equivariant)
}

fn finish(value: LaurentPoly, equivariant: bool) -> Result<LaurentPoly> {
    if equivariant {
        Ok(value)
    } else {
        let c = value.evaluate_at_one()?;
        let c = i64::try_from(c).map_err(|_| KqError::Overflow)?;
        Ok(LaurentPoly::constant(value.rank(), c))
    }
}

/// `chi_X(a) chi_X(b) chi_X(c)`, each factor computed by localization on `X`.
pub fn closed_form(desc: &SpaceDescriptor, labels: &[WeylElement; 3], cap: u128) -> Result<LaurentPoly> {
    let x = space_of(desc, cap)?;
    let mut out = LaurentPoly::one(desc.rs.rank());
    for u in labels {
        out = out.mul(&schubert_class(&x, u)?.euler_char()?)?;
    }
    Ok(out)
}

/// `X`, `Y_d` and the label map `u -> u''` for one degree.
struct Pipeline {
    x: Arc<HomSpace>,
    y: Arc<HomSpace>,
    incidence: crate::ktheory::Incidence,
    classes: std::sync::Mutex<HashMap<WeylElement, KClass>>,
}

impl Pipeline {
    fn new(desc: &SpaceDescriptor, d: u32, cap: u128) -> Result<Self> {
        let data = desc.degree(d)?;
        let x = space_of(desc, cap)?;
        let y = HomSpace::with_cap(&desc.rs, &data.sigma_q, cap)?;
        Ok(Pipeline {
            x,
            y,
            incidence: data.incidence(),
            classes: Default::default(),
        })
    }

    fn image(&self, u: &WeylElement) -> Result<WeylElement> {
        pushforward_qp(&self.x, u, &self.incidence)
    }

    fn class_on_y(&self, u2: &WeylElement) -> Result<KClass> {
        if let Some(c) = self.classes.lock().expect("cache lock").get(u2) {
            return Ok(c.clone());
        }
        let c = schubert_class(&self.y, u2)?;
        self.classes.lock().expect("cache lock").insert(u2.clone(), c.clone());
        Ok(c)
    }

    fn evaluate_images(&self, images: &[WeylElement; 3]) -> Result<LaurentPoly> {
        let mut product = self.class_on_y(&images[0])?;
        for u2 in &images[1..] {
            product = product.multiply(&self.class_on_y(u2)?)?;
        }
        product.euler_char()
    }

    fn evaluate(&self, labels: &[WeylElement; 3]) -> Result<LaurentPoly> {
        let images = [self.image(&labels[0])?, self.image(&labels[1])?, self.image(&labels[2])?];
        self.evaluate_images(&images)
    }
}

/// Options for [`invariant_table`].
#[derive(Debug, Clone)]
pub struct TableOptions {
    pub equivariant: bool,
    /// Largest number of label triples evaluated; larger tables are
    /// subsampled at a fixed stride when `sample` is set, refused otherwise.
    pub limit: usize,
    pub sample: bool,
    pub cap: u128,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            equivariant: true,
            limit: 100_000,
            sample: false,
            cap: FIXED_POINT_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableEntry {
    pub labels: [usize; 3],
    #[serde(serialize_with = "serialize_poly")]
    pub value: LaurentPoly,
}

fn serialize_poly<S: serde::Serializer>(p: &LaurentPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Debug, Clone)]
pub struct InvariantTable {
    /// `W^P` in enumeration order; entries index into it.
    pub labels: Vec<WeylElement>,
    pub entries: Vec<TableEntry>,
    pub complete: bool,
}

/// Invariants over all label triples in lexicographic order (or a strided
/// sample of them). Triples with the same multiset of images on `Y_d` are
/// evaluated once.
pub fn invariant_table(desc: &SpaceDescriptor, d: u32, opts: &TableOptions) -> Result<InvariantTable> {
    let pipeline = Pipeline::new(desc, d, opts.cap)?;
    let labels = pipeline.x.fixed_points().to_vec();
    let n = labels.len();
    let total = (n as u128).pow(3);
    let stride = if total <= opts.limit as u128 {
        1
    } else if opts.sample {
        total.div_ceil(opts.limit.max(1) as u128)
    } else {
        return Err(KqError::ResourceCap {
            what: format!("invariant table of {} ({n}^3 triples)", desc.name),
            required: total,
            cap: opts.limit as u128,
        });
    };
    let images = labels.iter().map(|u| pipeline.image(u)).collect::<Result<Vec<_>>>()?;
    let triples: Vec<[usize; 3]> = (0..total)
        .step_by(stride as usize)
        .map(|t| {
            let t = t as usize;
            [t / (n * n), (t / n) % n, t % n]
        })
        .collect();
    let mut keys: Vec<[usize; 3]> = triples
        .iter()
        .map(|t| {
            let mut k = *t;
            k.sort_by_key(|&i| images[i].clone());
            canonical(&images, k)
        })
        .collect();
    let mut distinct = keys.clone();
    distinct.sort();
    distinct.dedup();
    let values: HashMap<[usize; 3], LaurentPoly> = distinct
        .par_iter()
        .map(|k| {
            let imgs = [images[k[0]].clone(), images[k[1]].clone(), images[k[2]].clone()];
            let v = finish(pipeline.evaluate_images(&imgs)?, opts.equivariant)?;
            Ok((*k, v))
        })
        .collect::<Result<_>>()?;
    let entries = triples
        .iter()
        .zip(keys.drain(..))
        .map(|(t, k)| TableEntry {
            labels: *t,
            value: values[&k].clone(),
        })
        .collect();
    Ok(InvariantTable {
        labels,
        entries,
        complete: stride == 1,
    })
}

/// Replaces each index by the first label with the same image, so triples
/// with equal image multisets share a key.
fn canonical(images: &[WeylElement], k: [usize; 3]) -> [usize; 3] {
    k.map(|i| images.iter().position(|w| w == &images[i]).expect("present"))
}

/// `Y_d` as a parabolic subset, for reporting.
pub fn y_parabolic(desc: &SpaceDescriptor, d: u32) -> Result<ParabolicSubset> {
    Ok(desc.degree(d)?.sigma_q)
}
