//! Genus-2 groups from Fenchel-Nielsen data via right-angled hexagon
//! trigonometry.
//!
//! Decomposition: two one-holed tori glued along the separating curve.
//! Lengths l1, l2 are the handle curves, l3 the separating curve; twists
//! tau1, tau2 act along the handle curves, tau3 along the gluing.
//!
//! Each one-holed torus piece <A, B> has tr A = 2 cosh(l/2) and boundary
//! [A, B] of trace -2 cosh(l3/2); the hexagon relation fixes the symmetric
//! zero-twist B up to the twist translation along the axis of A.

use super::group::GroupError;
use super::moebius::MoebiusElement;

/// One-holed torus piece: A is the diagonal translation of length `l` along
/// the imaginary axis, B crosses it so that the boundary commutator has
/// length `boundary`. The twist translates B along the axis of A.
fn one_holed_torus(l: f64, twist: f64, boundary: f64) -> (MoebiusElement, MoebiusElement) {
    let a_half = l / 2.0;
    let a = MoebiusElement {
        a: a_half.exp(),
        b: 0.0,
        c: 0.0,
        d: (-a_half).exp(),
    };
    // tr [A,B] = 2 p s - 2 (p s - 1) cosh(2 a_half)  with B = (p q; r s),
    // forcing p s = (cosh(l) + cosh(boundary/2)) / (cosh(l) - 1).
    let ps = ((l).cosh() + (boundary / 2.0).cosh()) / ((l).cosh() - 1.0);
    let p = ps.sqrt();
    let q = (ps - 1.0).sqrt();
    // symmetric B: axis crosses the imaginary axis orthogonally at i
    let b0 = MoebiusElement {
        a: p,
        b: q,
        c: q,
        d: p,
    };
    let tw = MoebiusElement {
        a: (twist / 2.0).exp(),
        b: 0.0,
        c: 0.0,
        d: (-twist / 2.0).exp(),
    };
    (a, tw.mul(&b0))
}

fn commutator(x: &MoebiusElement, y: &MoebiusElement) -> MoebiusElement {
    x.mul(y).mul(&x.inverse()).mul(&y.inverse())
}

/// Eigenvector matrix P with M = P diag(mu1, mu2) P^{-1}, columns ordered as
/// (expanding, contracting) eigenvectors, normalized to det 1.
fn diagonalizer(m: &MoebiusElement) -> MoebiusElement {
    let tr = m.trace();
    let disc = (tr * tr - 4.0).sqrt();
    // eigenvalues (tr +/- disc)/2 ordered by |mu| descending
    let mu1 = (tr + disc.copysign(tr)) / 2.0;
    let mu2 = (tr - disc.copysign(tr)) / 2.0;
    let col = |mu: f64| -> (f64, f64) {
        // (M - mu I) v = 0: v = (b, mu - a) or (mu - d, c)
        let v1 = (m.b, mu - m.a);
        let v2 = (mu - m.d, m.c);
        if v1.0.hypot(v1.1) >= v2.0.hypot(v2.1) {
            v1
        } else {
            v2
        }
    };
    let (e1, e2) = (col(mu1), col(mu2));
    let det = e1.0 * e2.1 - e2.0 * e1.1;
    assert!(det.abs() > 1e-14, "degenerate eigenvectors");
    let s = det.abs().sqrt();
    let sign = if det < 0.0 { -1.0 } else { 1.0 };
    MoebiusElement {
        a: e1.0 / s,
        b: sign * e2.0 / s,
        c: e1.1 / s,
        d: sign * e2.1 / s,
    }
}

/// Canonical generators (a1, b1, a2, b2) for the genus-2 group.
pub fn genus2_generators(
    lengths: &[f64; 3],
    twists: &[f64; 3],
) -> Result<Vec<MoebiusElement>, GroupError> {
    let (a1, b1) = one_holed_torus(lengths[0], twists[0], lengths[2]);
    let (a2, b2) = one_holed_torus(lengths[1], twists[1], lengths[2]);
    let k1 = commutator(&a1, &b1);
    let k2 = commutator(&a2, &b2);

    // conjugate the second piece so its boundary matches the inverse of the
    // first one's: C k2 C^{-1} = k1^{-1}; eigenvalue matching forces the
    // eigenvector order, the residual freedom is the twist
    let k1_inv = k1.inverse();
    let p_target = diagonalizer(&k1_inv);
    let p_source = diagonalizer(&k2);
    let mut c = p_target.mul(&p_source.inverse());

    // twist along the separating curve
    if twists[2] != 0.0 {
        let t = k1_inv
            .axis_translation(twists[2])
            .ok_or_else(|| GroupError::InvalidParameter("separating curve not hyperbolic".into()))?;
        c = t.mul(&c);
    }

    let a2c = c.mul(&a2).mul(&c.inverse());
    let b2c = c.mul(&b2).mul(&c.inverse());
    Ok(vec![a1, b1, a2c, b2c])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn torus_piece_traces() {
        let (a, b) = one_holed_torus(2.0, 0.0, 2.0);
        assert_relative_eq!(a.trace(), 2.0 * 1.0_f64.cosh(), epsilon = 1e-12);
        let k = commutator(&a, &b);
        assert_relative_eq!(k.trace(), -2.0 * 1.0_f64.cosh(), epsilon = 1e-10);
        assert!(b.trace().abs() > 2.0);
    }

    #[test]
    fn twist_preserves_boundary_trace() {
        let (a, b) = one_holed_torus(2.0, 0.7, 2.4);
        let k = commutator(&a, &b);
        assert_relative_eq!(k.trace(), -2.0 * 1.2_f64.cosh(), epsilon = 1e-10);
    }

    #[test]
    fn glued_relator_vanishes() {
        let gens = genus2_generators(&[2.0, 2.0, 2.0], &[0.0, 0.0, 0.0]).unwrap();
        let r = commutator(&gens[0], &gens[1]).mul(&commutator(&gens[2], &gens[3]));
        assert!(r.defect_from_identity() < 1e-10);
        // asymmetric parameters and twists
        let gens = genus2_generators(&[1.7, 2.3, 2.9], &[0.3, -0.8, 1.1]).unwrap();
        let r = commutator(&gens[0], &gens[1]).mul(&commutator(&gens[2], &gens[3]));
        assert!(r.defect_from_identity() < 1e-9);
    }
}
