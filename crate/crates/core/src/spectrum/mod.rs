//! Primitive-geodesic length spectra of cocompact Fuchsian groups.
//!
//! Enumeration strategy: every conjugacy class of translation length at most
//! L has a representative whose axis crosses the Dirichlet domain, so its
//! displacement of the domain center is at most
//! 2 asinh(cosh(outradius) sinh(L/2)). A displacement-capped orbit ball
//! therefore sees every class; a slack of one domain diameter keeps the
//! conjugation graph inside the ball connected, so conjugacy classes are
//! exactly the components under conjugation by generators and domain face
//! pairings. Classes are oriented: a geodesic and its reverse count
//! separately (in a torsion-free Fuchsian group they are never conjugate).

use crate::hyperbolic::orbit::enumerate_ball;
use crate::hyperbolic::{
    classify_element, dirichlet_domain, ElementClass, FuchsianGroupModel, MoebiusElement,
    CLASSIFY_TOL,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

mod export;
pub use export::{spectrum_to_csv, spectrum_to_json};

/// Equal-length tolerance: classes within 1e-9 share a spectral line.
pub const LENGTH_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("cutoff must be positive, got {0}")]
    InvalidCutoff(f64),
    #[error("group has no Dirichlet domain at the requested center: {0}")]
    DomainFailure(String),
    #[error("resource budget exceeded before certification")]
    Uncertified(Box<LengthSpectrum>),
    #[error("requested point {x} exceeds certified cutoff {cutoff}")]
    OutOfCertifiedRange { x: f64, cutoff: f64 },
    #[error("word image is not hyperbolic")]
    NotHyperbolic,
}

/// One spectral line: all oriented primitive classes sharing a length.
#[derive(Clone, Debug, Serialize)]
pub struct GeodesicClass {
    pub length: f64,
    pub multiplicity: usize,
    pub primitive: bool,
    /// Word over the group alphabet for one member class.
    pub representative_word: Vec<u8>,
}

/// A single oriented primitive conjugacy class.
#[derive(Clone, Debug)]
pub struct ClassMember {
    pub length: f64,
    pub word: Vec<u8>,
    pub matrix: MoebiusElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub word_bound: usize,
    pub displacement_cap: f64,
    pub pruning_radius: f64,
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct LengthSpectrum {
    pub cutoff: f64,
    pub classes: Vec<GeodesicClass>,
    /// Every oriented primitive class individually (classes aggregates these
    /// by length).
    pub members: Vec<ClassMember>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
pub struct SpectrumOptions {
    /// Hard bound on word length during enumeration.
    pub word_bound: usize,
    /// Element budget; exceeding it yields an uncertified spectrum.
    pub max_elements: usize,
    /// Word cutoff for the Dirichlet domain used for pruning bounds.
    pub domain_cutoff: usize,
    /// Base point; defaults to i.
    pub center: Complex64,
    /// Extra displacement slack beyond the provable class-representative cap.
    pub bridge_slack: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            word_bound: 64,
            max_elements: 4_000_000,
            domain_cutoff: 10,
            center: Complex64::new(0.0, 1.0),
            bridge_slack: 0.5,
        }
    }
}

fn key_of(m: &MoebiusElement) -> [i64; 4] {
    let c = m.psl_canonical();
    [
        (c.a * 1e7).round() as i64,
        (c.b * 1e7).round() as i64,
        (c.c * 1e7).round() as i64,
        (c.d * 1e7).round() as i64,
    ]
}

fn axis_key(m: &MoebiusElement) -> Option<[i64; 3]> {
    let n = m.axis_direction()?;
    Some([
        (n[0] * 1e6).round() as i64,
        (n[1] * 1e6).round() as i64,
        (n[2] * 1e6).round() as i64,
    ])
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }
    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[ri.max(rj)] = ri.min(rj);
        }
    }
}

/// Enumerate all oriented primitive classes of length at most `cutoff`.
pub fn enumerate_spectrum(
    group: &FuchsianGroupModel,
    cutoff: f64,
    opts: &SpectrumOptions,
) -> Result<LengthSpectrum, SpectrumError> {
    if !(cutoff > 0.0) {
        return Err(SpectrumError::InvalidCutoff(cutoff));
    }
    let domain = dirichlet_domain(group, opts.center, opts.domain_cutoff)
        .map_err(|e| SpectrumError::DomainFailure(e.to_string()))?;
    // every class of length <= cutoff has a conjugate with displacement at
    // most this at the center
    let cap = displacement_cap_for(domain.outradius, cutoff, opts.bridge_slack);
    build_spectrum(group, cutoff, cap, &domain.face_elements, opts)
}

/// Displacement bound such that every conjugacy class of length at most
/// `cutoff` has a representative within it, plus bridging slack for the
/// conjugation graph.
pub fn displacement_cap_for(outradius: f64, cutoff: f64, bridge_slack: f64) -> f64 {
    let rep_cap = 2.0 * (outradius.cosh() * (cutoff / 2.0).sinh()).asinh();
    rep_cap + 2.0 * outradius + bridge_slack
}

fn build_spectrum(
    group: &FuchsianGroupModel,
    cutoff: f64,
    cap: f64,
    extra_conjugators: &[MoebiusElement],
    opts: &SpectrumOptions,
) -> Result<LengthSpectrum, SpectrumError> {
    let alphabet = group.alphabet();
    let ball = enumerate_ball(
        &alphabet,
        opts.center,
        opts.word_bound,
        cap,
        opts.max_elements,
    );
    let certified = !ball.word_bound_binding && !ball.budget_exhausted;

    // index ball elements
    let index: HashMap<[i64; 4], usize> = ball
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| (key_of(&e.mat), i))
        .collect();

    // conjugacy classes = components under conjugation by the alphabet and
    // the domain face pairings
    let mut conjugators: Vec<MoebiusElement> = alphabet.clone();
    for f in extra_conjugators {
        conjugators.push(*f);
        conjugators.push(f.inverse());
    }
    let neighbor_lists: Vec<Vec<usize>> = ball
        .elements
        .par_iter()
        .map(|e| {
            let mut out = Vec::new();
            for c in &conjugators {
                let g = c.mul(&e.mat).mul(&c.inverse());
                if let Some(&j) = index.get(&key_of(&g)) {
                    out.push(j);
                }
            }
            out
        })
        .collect();
    let mut uf = UnionFind::new(ball.elements.len());
    for (i, ns) in neighbor_lists.iter().enumerate() {
        for &j in ns {
            uf.union(i, j);
        }
    }

    // group members by component; representative = minimal displacement,
    // ties broken by word then key for determinism
    let mut comp_members: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..ball.elements.len() {
        let r = uf.find(i);
        comp_members.entry(r).or_default().push(i);
    }

    // axis lookup for primitivity testing
    let mut by_axis: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
    for (i, e) in ball.elements.iter().enumerate() {
        if let Some(k) = axis_key(&e.mat) {
            by_axis.entry(k).or_default().push(i);
        }
    }

    let mut members: Vec<ClassMember> = Vec::new();
    let mut comp_ids: Vec<usize> = comp_members.keys().copied().collect();
    comp_ids.sort();
    let mut min_length = f64::INFINITY;
    for &cid in &comp_ids {
        let ms = &comp_members[&cid];
        let rep = *ms
            .iter()
            .min_by(|&&i, &&j| {
                let a = &ball.elements[i];
                let b = &ball.elements[j];
                a.displacement
                    .partial_cmp(&b.displacement)
                    .unwrap()
                    .then(a.word.len().cmp(&b.word.len()))
                    .then(a.word.cmp(&b.word))
            })
            .unwrap();
        let e = &ball.elements[rep];
        if let ElementClass::Hyperbolic { length } = classify_element(&e.mat, CLASSIFY_TOL) {
            if length <= cutoff + LENGTH_TOL {
                min_length = min_length.min(length);
                members.push(ClassMember {
                    length,
                    word: e.word.clone(),
                    matrix: e.mat,
                });
            }
        }
    }

    // primitivity: drop classes that are proper powers (their root's axis
    // and matrix power match an enumerated element)
    let is_power = |m: &ClassMember| -> bool {
        if min_length <= 0.0 || !min_length.is_finite() {
            return false;
        }
        let kmax = (m.length / min_length + 0.5).floor() as usize;
        if kmax < 2 {
            return false;
        }
        let Some(ak) = axis_key(&m.matrix) else {
            return false;
        };
        let Some(cands) = by_axis.get(&ak) else {
            return false;
        };
        for k in 2..=kmax {
            let target_len = m.length / (k as f64);
            if target_len < min_length - LENGTH_TOL {
                continue;
            }
            for &ci in cands {
                let h = &ball.elements[ci].mat;
                if let ElementClass::Hyperbolic { length } = classify_element(h, CLASSIFY_TOL) {
                    if (length - target_len).abs() < 1e-7 {
                        let mut p = *h;
                        for _ in 1..k {
                            p = p.mul(h);
                        }
                        if p.frobenius_dist(&m.matrix).min(p.neg().frobenius_dist(&m.matrix))
                            < 1e-6
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    };
    members.retain(|m| !is_power(m));
    members.sort_by(|a, b| {
        a.length
            .partial_cmp(&b.length)
            .unwrap()
            .then(a.word.cmp(&b.word))
    });

    // aggregate into spectral lines
    let mut classes: Vec<GeodesicClass> = Vec::new();
    for m in &members {
        match classes.last_mut() {
            Some(last) if (m.length - last.length).abs() <= LENGTH_TOL => {
                last.multiplicity += 1;
            }
            _ => classes.push(GeodesicClass {
                length: m.length,
                multiplicity: 1,
                primitive: true,
                representative_word: m.word.clone(),
            }),
        }
    }

    let spectrum = LengthSpectrum {
        cutoff,
        classes,
        members,
        certificate: Certificate {
            word_bound: opts.word_bound,
            displacement_cap: cap,
            pruning_radius: cap,
            certified,
        },
    };
    if certified {
        Ok(spectrum)
    } else {
        Err(SpectrumError::Uncertified(Box::new(spectrum)))
    }
}

/// Number of oriented primitive classes of length at most x, with
/// multiplicity.
pub fn counting_function(spec: &LengthSpectrum, x: f64) -> Result<usize, SpectrumError> {
    if x > spec.cutoff + LENGTH_TOL {
        return Err(SpectrumError::OutOfCertifiedRange {
            x,
            cutoff: spec.cutoff,
        });
    }
    Ok(spec
        .classes
        .iter()
        .filter(|c| c.length <= x + LENGTH_TOL)
        .map(|c| c.multiplicity)
        .sum())
}

/// True iff the word maps to a hyperbolic element that is not a proper power
/// up to conjugacy. Decided geometrically: conjugate down to a minimal
/// displacement representative, then search the orbit ball for a root with
/// the same oriented axis.
pub fn is_primitive(
    word: &[usize],
    group: &FuchsianGroupModel,
) -> Result<bool, SpectrumError> {
    let m = group.eval_word(word);
    let length = match classify_element(&m, CLASSIFY_TOL) {
        ElementClass::Hyperbolic { length } => length,
        _ => return Err(SpectrumError::NotHyperbolic),
    };
    let center = Complex64::new(0.0, 1.0);
    let alphabet = group.alphabet();
    // descend to a low-displacement conjugate
    let mut g = m;
    let mut disp = g.displacement(center);
    loop {
        let mut improved = false;
        for c in &alphabet {
            let cand = c.mul(&g).mul(&c.inverse());
            let d = cand.displacement(center);
            if d < disp - 1e-12 {
                g = cand;
                disp = d;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    // any k-th root has the same axis and smaller displacement
    let ball = enumerate_ball(&alphabet, center, 64, disp + 0.1, 4_000_000);
    let Some(gk) = axis_key(&g) else {
        return Err(SpectrumError::NotHyperbolic);
    };
    for e in &ball.elements {
        if axis_key(&e.mat) != Some(gk) {
            continue;
        }
        if let ElementClass::Hyperbolic { length: lr } = classify_element(&e.mat, CLASSIFY_TOL) {
            let ratio = length / lr;
            let k = ratio.round();
            if k >= 2.0 && (ratio - k).abs() < 1e-6 {
                let mut p = e.mat;
                for _ in 1..(k as usize) {
                    p = p.mul(&e.mat);
                }
                if p.frobenius_dist(&g).min(p.neg().frobenius_dist(&g)) < 1e-6 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
