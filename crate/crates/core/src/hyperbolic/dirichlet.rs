//! Dirichlet fundamental domains via half-plane clipping in the Klein model.
//!
//! Centered at the base point, the perpendicular bisector of the center and
//! its image g(center) is the Klein chord {k : k.u <= tanh(d/2)} where u is
//! the unit direction of g(center) and d its displacement. Intersecting these
//! half-planes over an orbit ball yields the domain; geodesic edges are
//! straight chords, so clipping and exact angle-defect areas are elementary.

use super::group::FuchsianGroupModel;
use super::moebius::MoebiusElement;
use super::orbit::{enumerate_ball, OrbitBall};
use num_complex::Complex64;
use thiserror::Error;

/// Tag for polygon edges: which bisector (orbit element index) cut them, or
/// the initial truncation circle.
const INITIAL_EDGE: usize = usize::MAX;

#[derive(Debug, Error)]
pub enum DomainError {
    #[error("word cutoff {cutoff} too small to close the domain (achieved area {area:.6})")]
    IncompleteDomain { cutoff: usize, area: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Debug)]
pub struct DirichletDomain {
    pub center: Complex64,
    /// Polygon vertices in the Klein model centered at `center`, CCW.
    pub vertices: Vec<[f64; 2]>,
    /// For each edge (i -> i+1), the orbit element whose bisector bounds it.
    pub edge_sources: Vec<usize>,
    /// Group elements whose bisectors were used (indexable by edge_sources).
    pub face_elements: Vec<MoebiusElement>,
    pub area: f64,
    pub inradius: f64,
    pub outradius: f64,
    pub word_cutoff: usize,
}

#[derive(Clone)]
struct Polygon {
    verts: Vec<[f64; 2]>,
    sources: Vec<usize>, // edge i: verts[i] -> verts[i+1]
}

fn regular_polygon(klein_radius: f64, sides: usize) -> Polygon {
    let verts = (0..sides)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * (i as f64) / (sides as f64);
            [klein_radius * t.cos(), klein_radius * t.sin()]
        })
        .collect();
    Polygon {
        verts,
        sources: vec![INITIAL_EDGE; sides],
    }
}

/// Sutherland-Hodgman clip of a convex polygon by {x : x.n <= h}.
fn clip(poly: &Polygon, n: [f64; 2], h: f64, source: usize) -> Polygon {
    let m = poly.verts.len();
    let mut verts = Vec::with_capacity(m + 1);
    let mut sources = Vec::with_capacity(m + 1);
    if m == 0 {
        return poly.clone();
    }
    let side = |v: &[f64; 2]| v[0] * n[0] + v[1] * n[1] - h;
    for i in 0..m {
        let a = poly.verts[i];
        let b = poly.verts[(i + 1) % m];
        let sa = side(&a);
        let sb = side(&b);
        let inter = |a: [f64; 2], b: [f64; 2], sa: f64, sb: f64| -> [f64; 2] {
            let t = sa / (sa - sb);
            [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
        };
        if sa <= 0.0 {
            verts.push(a);
            if sb <= 0.0 {
                sources.push(poly.sources[i]);
            } else {
                // leaving: edge from a to the crossing keeps its source,
                // then the new bisector edge starts
                verts.push(inter(a, b, sa, sb));
                sources.push(poly.sources[i]);
                sources.push(source);
            }
        } else if sb <= 0.0 {
            // entering
            verts.push(inter(a, b, sa, sb));
            sources.push(poly.sources[i]);
        }
    }
    Polygon { verts, sources }
}

fn to_hyperboloid(k: &[f64; 2]) -> [f64; 3] {
    let s = (1.0 - k[0] * k[0] - k[1] * k[1]).max(1e-300).sqrt();
    [k[0] / s, k[1] / s, 1.0 / s]
}

fn mink(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] - x[2] * y[2]
}

fn angle_at(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    let tangent = |p: &[f64; 3], q: &[f64; 3]| -> [f64; 3] {
        let ip = mink(p, q);
        [q[0] + ip * p[0], q[1] + ip * p[1], q[2] + ip * p[2]]
    };
    let u = tangent(a, b);
    let v = tangent(a, c);
    let nu = mink(&u, &u).max(1e-300).sqrt();
    let nv = mink(&v, &v).max(1e-300).sqrt();
    (mink(&u, &v) / (nu * nv)).clamp(-1.0, 1.0).acos()
}

/// Hyperbolic area of a geodesic polygon given by Klein vertices (convex,
/// containing the origin), by fanned angle defects. Consecutive vertices
/// closer than ~1e-9 are merged first: several bisectors meeting at one
/// domain vertex produce such near-duplicates, and their sliver triangles
/// evaluate the defect with catastrophic cancellation.
fn polygon_area(verts: &[[f64; 2]]) -> f64 {
    let mut vs: Vec<[f64; 2]> = Vec::with_capacity(verts.len());
    for v in verts {
        if let Some(last) = vs.last() {
            if (v[0] - last[0]).abs() < 1e-9 && (v[1] - last[1]).abs() < 1e-9 {
                continue;
            }
        }
        vs.push(*v);
    }
    if vs.len() >= 2 {
        let first = vs[0];
        let last = vs[vs.len() - 1];
        if (first[0] - last[0]).abs() < 1e-9 && (first[1] - last[1]).abs() < 1e-9 {
            vs.pop();
        }
    }
    if vs.len() < 3 {
        return 0.0;
    }
    let origin = [0.0, 0.0, 1.0];
    let mut area = 0.0;
    let m = vs.len();
    for i in 0..m {
        let b = to_hyperboloid(&vs[i]);
        let c = to_hyperboloid(&vs[(i + 1) % m]);
        let alpha = angle_at(&origin, &b, &c);
        let beta = angle_at(&b, &c, &origin);
        let gamma = angle_at(&c, &origin, &b);
        area += std::f64::consts::PI - alpha - beta - gamma;
    }
    area
}

/// Map an upper half-plane point to the Poincare disk centered at `p`.
fn to_disk(p: Complex64, z: Complex64) -> Complex64 {
    (z - p) / (z - p.conj())
}

/// Compute the Dirichlet domain of the group at `center`, exploring words up
/// to `word_cutoff` letters.
pub fn dirichlet_domain(
    group: &FuchsianGroupModel,
    center: Complex64,
    word_cutoff: usize,
) -> Result<DirichletDomain, DomainError> {
    if word_cutoff < 1 {
        return Err(DomainError::InvalidParameter(
            "word_cutoff must be at least 1".into(),
        ));
    }
    if center.im <= 0.0 {
        return Err(DomainError::InvalidParameter(
            "center must lie in the upper half-plane".into(),
        ));
    }
    let alphabet = group.alphabet();

    // grow the displacement cap until every element that could cut the
    // current polygon is included
    let mut cap = 6.0;
    let hard_cap = 30.0;
    loop {
        let ball = enumerate_ball(&alphabet, center, word_cutoff, cap, 2_000_000);
        let domain = build_domain(&ball, center, word_cutoff);
        let needed = 2.0 * domain.outradius + 0.2;
        if needed <= cap || cap >= hard_cap {
            let closed = domain.edge_sources.iter().all(|&s| s != INITIAL_EDGE);
            if !closed {
                return Err(DomainError::IncompleteDomain {
                    cutoff: word_cutoff,
                    area: domain.area,
                });
            }
            return Ok(domain);
        }
        cap = (needed + 0.5).min(hard_cap);
    }
}

fn build_domain(ball: &OrbitBall, center: Complex64, word_cutoff: usize) -> DirichletDomain {
    // initial truncation cage: a 1024-gon at hyperbolic radius 14 whose edge
    // chords still dip only to radius ~6.1, so any domain with outradius
    // below ~6 survives uncapped
    let mut poly = regular_polygon(14.0_f64.tanh(), 1024);
    let mut face_elements = Vec::with_capacity(ball.elements.len());
    // clip by bisectors in order of increasing displacement: near elements
    // shrink the polygon fastest
    let mut order: Vec<usize> = (0..ball.elements.len()).collect();
    order.sort_by(|&i, &j| {
        ball.elements[i]
            .displacement
            .partial_cmp(&ball.elements[j].displacement)
            .unwrap()
    });
    for &i in &order {
        let el = &ball.elements[i];
        let w = to_disk(center, el.mat.apply(center));
        let r = w.norm();
        if r < 1e-12 {
            continue; // fixes the center: not expected for surface groups
        }
        let u = [w.re / r, w.im / r];
        let idx = face_elements.len();
        face_elements.push(el.mat);
        poly = clip(&poly, u, r, idx);
        if poly.verts.is_empty() {
            break;
        }
    }
    let area = polygon_area(&poly.verts);
    let mut outradius: f64 = 0.0;
    for v in &poly.verts {
        let kr = (v[0] * v[0] + v[1] * v[1]).sqrt().min(1.0 - 1e-15);
        outradius = outradius.max(kr.atanh());
    }
    // inradius: distance from center to nearest edge chord
    let m = poly.verts.len();
    let mut inradius = f64::INFINITY;
    for i in 0..m {
        let a = poly.verts[i];
        let b = poly.verts[(i + 1) % m];
        let ex = b[0] - a[0];
        let ey = b[1] - a[1];
        let len2 = ex * ex + ey * ey;
        if len2 < 1e-28 {
            continue;
        }
        let t = (-(a[0] * ex + a[1] * ey) / len2).clamp(0.0, 1.0);
        let fx = a[0] + t * ex;
        let fy = a[1] + t * ey;
        let kr = (fx * fx + fy * fy).sqrt().min(1.0 - 1e-15);
        inradius = inradius.min(kr.atanh());
    }
    if !inradius.is_finite() {
        inradius = 0.0;
    }
    DirichletDomain {
        center,
        vertices: poly.verts,
        edge_sources: poly.sources,
        face_elements,
        area,
        inradius,
        outradius,
        word_cutoff,
    }
}

/// Same construction but reporting the possibly-open polygon (used for the
/// incomplete-domain diagnostics and the monotonicity property tests).
pub fn dirichlet_domain_unchecked(
    group: &FuchsianGroupModel,
    center: Complex64,
    word_cutoff: usize,
    displacement_cap: f64,
) -> DirichletDomain {
    let ball = enumerate_ball(&group.alphabet(), center, word_cutoff, displacement_cap, 2_000_000);
    build_domain(&ball, center, word_cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{build_group, GroupSpec};
    use std::f64::consts::PI;

    #[test]
    fn bolza_domain_closes_at_cutoff_8() {
        let g = build_group(&GroupSpec::Bolza).unwrap();
        let d = dirichlet_domain(&g, Complex64::new(0.0, 1.0), 8).unwrap();
        assert!(
            (d.area - 4.0 * PI).abs() / (4.0 * PI) < 1e-6,
            "area {} should be 4pi",
            d.area
        );
        assert!(d.inradius <= d.outradius);
        // regular octagon: circumradius arccosh(3+2sqrt2)... cosh R = 1/(tan(pi/8)tan(pi/8))
        let expect_out = ((3.0 + 2.0 * 2.0_f64.sqrt())).acosh();
        assert!((d.outradius - expect_out).abs() < 1e-6);
    }

    #[test]
    fn bolza_cutoff_1_incomplete() {
        let g = build_group(&GroupSpec::Bolza).unwrap();
        match dirichlet_domain(&g, Complex64::new(0.0, 1.0), 1) {
            Err(DomainError::IncompleteDomain { area, .. }) => {
                assert!(area > 4.0 * PI);
            }
            other => panic!("expected incomplete domain, got {other:?}"),
        }
    }

    #[test]
    fn fn_domain_area() {
        let g = build_group(&GroupSpec::FenchelNielsen {
            lengths: [2.0, 2.0, 2.0],
            twists: [0.0, 0.0, 0.0],
        })
        .unwrap();
        let d = dirichlet_domain(&g, Complex64::new(0.0, 1.0), 12).unwrap();
        assert!(
            (d.area - 4.0 * PI).abs() / (4.0 * PI) < 1e-4,
            "area {} should be 4pi",
            d.area
        );
    }

    #[test]
    fn area_decreases_with_cutoff() {
        let g = build_group(&GroupSpec::Bolza).unwrap();
        let center = Complex64::new(0.0, 1.0);
        let mut last = f64::INFINITY;
        for cutoff in [1usize, 2, 4, 8] {
            let d = dirichlet_domain_unchecked(&g, center, cutoff, 8.0);
            assert!(d.area <= last + 1e-9, "area must shrink toward 4pi");
            assert!(d.area >= 4.0 * PI - 1e-9);
            last = d.area;
        }
        assert!((last - 4.0 * PI).abs() < 1e-6);
    }
}
