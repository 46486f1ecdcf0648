//! Breadth-first enumeration of group elements by orbit displacement.
//!
//! Elements are deduplicated as PSL(2,R) matrices; each element keeps one
//! witness word over the generator alphabet. The ball is grown by right
//! multiplication, keeping elements whose displacement of the base point
//! stays below a cap. A buffer above the target radius keeps the BFS
//! connected through intermediate elements (any element with small
//! displacement is reachable through elements of displacement at most
//! two domain diameters larger).

use super::moebius::MoebiusElement;
use num_complex::Complex64;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct OrbitElement {
    pub mat: MoebiusElement,
    /// Letter indices into the alphabet that was enumerated.
    pub word: Vec<u8>,
    pub displacement: f64,
}

#[derive(Clone, Debug)]
pub struct OrbitBall {
    /// Non-identity elements with displacement at most the cap.
    pub elements: Vec<OrbitElement>,
    pub word_bound: usize,
    pub displacement_cap: f64,
    /// True when the word bound cut off nodes that were still inside the
    /// displacement cap: deeper words could add elements.
    pub word_bound_binding: bool,
    /// True when the element budget stopped enumeration early.
    pub budget_exhausted: bool,
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

/// Enumerate the orbit ball of `center` under words in `alphabet`.
pub fn enumerate_ball(
    alphabet: &[MoebiusElement],
    center: Complex64,
    max_word_len: usize,
    displacement_cap: f64,
    max_elements: usize,
) -> OrbitBall {
    let mut seen: HashMap<[i64; 4], ()> = HashMap::new();
    let id = MoebiusElement::identity();
    seen.insert(key_of(&id), ());

    let mut elements: Vec<OrbitElement> = Vec::new();
    let mut frontier: Vec<OrbitElement> = vec![OrbitElement {
        mat: id,
        word: Vec::new(),
        displacement: 0.0,
    }];
    let mut word_bound_binding = false;
    let mut budget_exhausted = false;

    'depth: for _depth in 1..=max_word_len {
        let mut next = Vec::new();
        for el in &frontier {
            for (li, g) in alphabet.iter().enumerate() {
                let m = el.mat.mul(g);
                let k = key_of(&m);
                if seen.contains_key(&k) {
                    continue;
                }
                let disp = m.displacement(center);
                if disp > displacement_cap {
                    continue;
                }
                seen.insert(k, ());
                let mut word = el.word.clone();
                word.push(li as u8);
                let oe = OrbitElement {
                    mat: m,
                    word,
                    displacement: disp,
                };
                elements.push(oe.clone());
                next.push(oe);
                if elements.len() >= max_elements {
                    budget_exhausted = true;
                    break 'depth;
                }
            }
        }
        if next.is_empty() {
            frontier = next;
            break;
        }
        frontier = next;
    }
    // if the last processed frontier is nonempty at the word bound, deeper
    // words could still satisfy the displacement cap
    if !frontier.is_empty() && !budget_exhausted {
        word_bound_binding = frontier
            .iter()
            .any(|e| e.word.len() == max_word_len && e.displacement <= displacement_cap);
    }
    OrbitBall {
        elements,
        word_bound: max_word_len,
        displacement_cap,
        word_bound_binding: word_bound_binding || budget_exhausted,
        budget_exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{build_group, GroupSpec};

    #[test]
    fn ball_is_word_order_independent() {
        let g = build_group(&GroupSpec::Bolza).unwrap();
        let center = Complex64::new(0.0, 1.0);
        let b1 = enumerate_ball(&g.alphabet(), center, 8, 5.0, 100_000);
        let b2 = enumerate_ball(&g.alphabet(), center, 10, 5.0, 100_000);
        assert_eq!(b1.elements.len(), b2.elements.len());
        assert!(!b1.elements.is_empty());
    }

    #[test]
    fn deduplicates_inverse_paths() {
        let g = build_group(&GroupSpec::Bolza).unwrap();
        let center = Complex64::new(0.0, 1.0);
        let ball = enumerate_ball(&g.alphabet(), center, 4, 8.0, 100_000);
        // a b b^{-1} a^{-1}-type words must not duplicate: all elements distinct
        let mut keys: Vec<[i64; 4]> = ball.elements.iter().map(|e| key_of(&e.mat)).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), ball.elements.len());
    }
}
