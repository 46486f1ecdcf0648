//! Cocompact Fuchsian group models: canonical generators, relator checks,
//! and the three supported constructions.

use super::bolza;
use super::fenchel;
use super::moebius::{classify_element, ElementClass, MoebiusElement, CLASSIFY_TOL};
use crate::surd::SurdMatrix;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

pub const RELATOR_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    ExplicitMatrices,
    BolzaOctagon,
    FenchelNielsen { lengths: [f64; 3], twists: [f64; 3] },
}

/// How the group was requested.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupSpec {
    Bolza,
    FenchelNielsen { lengths: [f64; 3], twists: [f64; 3] },
    Explicit { matrices: Vec<[f64; 4]> },
}

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("unsupported genus {0}: only genus >= 2 is modelled")]
    UnsupportedGenus(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a surface group: {0}")]
    NotASurfaceGroup(String),
}

/// A genus-g surface group in canonical marking (a1, b1, ..., ag, bg).
#[derive(Clone, Debug)]
pub struct FuchsianGroupModel {
    pub genus: usize,
    /// 2g generators in the order a1, b1, a2, b2, ...
    pub generators: Vec<MoebiusElement>,
    pub provenance: Provenance,
    /// Gauss-Bonnet area 4*pi*(g-1).
    pub area: f64,
    /// Exact matrices when the model supports them (Bolza).
    pub exact_generators: Option<Vec<SurdMatrix>>,
}

impl FuchsianGroupModel {
    /// Product of commutators over consecutive generator pairs, distance to
    /// +/- identity. Uses the exact matrices when the model carries them.
    pub fn relator_defect(&self) -> f64 {
        if let Some(exact) = &self.exact_generators {
            let mut prod = SurdMatrix::identity();
            for pair in exact.chunks(2) {
                let (a, b) = (pair[0], pair[1]);
                prod = prod * a * b * a.inv_unimodular() * b.inv_unimodular();
            }
            if prod.is_plus_minus_identity() {
                return 0.0;
            }
            let f = prod.to_f64();
            let m = MoebiusElement {
                a: f[0][0],
                b: f[0][1],
                c: f[1][0],
                d: f[1][1],
            };
            return m.defect_from_identity();
        }
        relator_defect(&self.generators)
    }

    /// Generators followed by their inverses: the alphabet for word
    /// enumeration, indexed so that letter `i + 2g` is the inverse of `i`.
    pub fn alphabet(&self) -> Vec<MoebiusElement> {
        let mut v = self.generators.clone();
        for g in &self.generators {
            v.push(g.inverse());
        }
        v
    }

    /// Exact alphabet in the same order, if available.
    pub fn exact_alphabet(&self) -> Option<Vec<SurdMatrix>> {
        let gens = self.exact_generators.as_ref()?;
        let mut v = gens.clone();
        for g in gens {
            v.push(g.inv_unimodular());
        }
        Some(v)
    }

    /// Evaluate a word given as letter indices into `alphabet()`.
    pub fn eval_word(&self, word: &[usize]) -> MoebiusElement {
        let alpha = self.alphabet();
        let mut m = MoebiusElement::identity();
        for &l in word {
            m = m.mul(&alpha[l]);
        }
        m
    }

    fn validate(self) -> Result<Self, GroupError> {
        if self.genus < 2 {
            return Err(GroupError::UnsupportedGenus(self.genus));
        }
        for (i, g) in self.generators.iter().enumerate() {
            match classify_element(g, CLASSIFY_TOL) {
                ElementClass::Hyperbolic { .. } => {}
                other => {
                    return Err(GroupError::NotASurfaceGroup(format!(
                        "generator {i} is {other:?}, all generators must be hyperbolic"
                    )))
                }
            }
        }
        let defect = self.relator_defect();
        if defect > RELATOR_TOL {
            return Err(GroupError::NotASurfaceGroup(format!(
                "relator defect {defect:.3e} exceeds {RELATOR_TOL:.0e}"
            )));
        }
        Ok(self)
    }
}

/// ||prod [a_i, b_i] - I|| with the sign ambiguity of SL2 absorbed.
pub fn relator_defect(generators: &[MoebiusElement]) -> f64 {
    assert!(generators.len() % 2 == 0 && !generators.is_empty());
    let mut prod = MoebiusElement::identity();
    for pair in generators.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        prod = prod
            .mul(a)
            .mul(b)
            .mul(&a.inverse())
            .mul(&b.inverse());
    }
    prod.defect_from_identity()
}

/// Build a group model from a spec.
pub fn build_group(spec: &GroupSpec) -> Result<FuchsianGroupModel, GroupError> {
    match spec {
        GroupSpec::Bolza => {
            let exact = bolza::canonical_generators();
            let rel = bolza::canonical_relator();
            debug_assert!(rel.is_plus_minus_identity());
            let generators: Vec<MoebiusElement> = exact
                .iter()
                .map(|m| {
                    let f = m.to_f64();
                    MoebiusElement::new(f[0][0], f[0][1], f[1][0], f[1][1])
                })
                .collect();
            FuchsianGroupModel {
                genus: 2,
                generators,
                provenance: Provenance::BolzaOctagon,
                area: 4.0 * PI,
                exact_generators: Some(exact.to_vec()),
            }
            .validate()
        }
        GroupSpec::FenchelNielsen { lengths, twists } => {
            for &l in lengths {
                if !(l > 0.0) || !l.is_finite() {
                    return Err(GroupError::InvalidParameter(format!(
                        "pants curve lengths must be positive, got {l}"
                    )));
                }
            }
            for &t in twists {
                if !t.is_finite() {
                    return Err(GroupError::InvalidParameter(format!(
                        "twist must be finite, got {t}"
                    )));
                }
            }
            let generators = fenchel::genus2_generators(lengths, twists)?;
            FuchsianGroupModel {
                genus: 2,
                generators,
                provenance: Provenance::FenchelNielsen {
                    lengths: *lengths,
                    twists: *twists,
                },
                area: 4.0 * PI,
                exact_generators: None,
            }
            .validate()
        }
        GroupSpec::Explicit { matrices } => {
            if matrices.len() % 2 != 0 || matrices.len() < 4 {
                return Err(GroupError::InvalidParameter(format!(
                    "explicit model needs 2g >= 4 matrices, got {}",
                    matrices.len()
                )));
            }
            let genus = matrices.len() / 2;
            let mut generators = Vec::with_capacity(matrices.len());
            for (i, m) in matrices.iter().enumerate() {
                let det = m[0] * m[3] - m[1] * m[2];
                if det <= 0.0 {
                    return Err(GroupError::InvalidParameter(format!(
                        "matrix {i} has determinant {det}, must be positive"
                    )));
                }
                generators.push(MoebiusElement::new(m[0], m[1], m[2], m[3]));
            }
            FuchsianGroupModel {
                genus,
                generators,
                provenance: Provenance::ExplicitMatrices,
                area: 4.0 * PI * (genus as f64 - 1.0),
                exact_generators: None,
            }
            .validate()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bolza_model_is_valid() {
        let g = build_group(&GroupSpec::Bolza).unwrap();
        assert_eq!(g.genus, 2);
        assert_eq!(g.generators.len(), 4);
        assert!(g.relator_defect() < 1e-12);
        assert!((g.area - 4.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn identity_matrices_rejected() {
        let spec = GroupSpec::Explicit {
            matrices: vec![[1.0, 0.0, 0.0, 1.0]; 4],
        };
        match build_group(&spec) {
            Err(GroupError::NotASurfaceGroup(_)) => {}
            other => panic!("expected not-a-surface-group, got {other:?}"),
        }
    }

    #[test]
    fn fn_equal_lengths_valid() {
        let g = build_group(&GroupSpec::FenchelNielsen {
            lengths: [2.0, 2.0, 2.0],
            twists: [0.0, 0.0, 0.0],
        })
        .unwrap();
        assert!(g.relator_defect() < 1e-9, "defect {}", g.relator_defect());
    }

    #[test]
    fn fn_rejects_nonpositive_length() {
        let r = build_group(&GroupSpec::FenchelNielsen {
            lengths: [2.0, -1.0, 2.0],
            twists: [0.0, 0.0, 0.0],
        });
        assert!(matches!(r, Err(GroupError::InvalidParameter(_))));
    }

    #[test]
    fn relator_defect_conjugation_invariant() {
        let g = build_group(&GroupSpec::Bolza).unwrap();
        let r = MoebiusElement::new(1.3, 0.4, 0.2, 1.0);
        let conj: Vec<MoebiusElement> = g
            .generators
            .iter()
            .map(|m| r.mul(m).mul(&r.inverse()))
            .collect();
        assert!((relator_defect(&conj) - g.relator_defect()).abs() < 1e-9);
    }
}
