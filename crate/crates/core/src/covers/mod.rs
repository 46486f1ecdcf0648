//! Finite unramified covers of a closed surface as permutation
//! representations of the surface group, the directed system they form, and
//! virtual automorphisms of the base group.

pub mod perm;
mod rs;
mod tc;
mod vaut;

pub use rs::{rewrite_in_subgroup, SchreierStructure, SubgroupPresentation};
pub use tc::coset_table;
pub use vaut::{germ_equal, Evaluator, VirtualAutomorphism};

use perm::{intertwiner, symmetric_group, Perm};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet};
use thiserror::Error;

/// Signed generator letters: +k is generator k-1, -k its inverse (k >= 1).
pub type Word = Vec<i32>;

pub fn invert_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if l == 0 {
            continue;
        }
        if let Some(&last) = out.last() {
            if last == -l {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    out
}

pub fn concat_words(ws: &[&[i32]]) -> Word {
    let mut out = Vec::new();
    for w in ws {
        out.extend_from_slice(w);
    }
    free_reduce(&out)
}

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("index {0} exceeds the exhaustive-search budget (max {1})")]
    BudgetExceeded(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cover is not transitive (disconnected total space)")]
    DisconnectedCover,
    #[error("nodes do not share the required base/tower relation: {0}")]
    TowerMismatch(String),
    #[error("coset enumeration did not terminate within the budget")]
    CosetBudget,
}

/// The genus-g surface group in canonical presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceGroupPresentation {
    pub genus: usize,
}

impl SurfaceGroupPresentation {
    pub fn new(genus: usize) -> Result<Self, CoverError> {
        if genus < 2 {
            return Err(CoverError::InvalidParameter(format!(
                "genus must be >= 2, got {genus}"
            )));
        }
        Ok(SurfaceGroupPresentation { genus })
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    /// The canonical relator [a1,b1]...[ag,bg] as signed letters.
    pub fn relator(&self) -> Word {
        let mut w = Vec::with_capacity(4 * self.genus);
        for i in 0..self.genus {
            let a = (2 * i + 1) as i32;
            let b = (2 * i + 2) as i32;
            w.extend_from_slice(&[a, b, -a, -b]);
        }
        w
    }

    /// Abelianized image of a word in Z^{2g}.
    pub fn abelianize(&self, w: &[i32]) -> Vec<i64> {
        let mut v = vec![0i64; self.rank()];
        for &l in w {
            let idx = (l.unsigned_abs() as usize) - 1;
            v[idx] += if l > 0 { 1 } else { -1 };
        }
        v
    }
}

/// A transitive permutation representation satisfying the surface relator;
/// sheets are the fiber points, sheet 0 is the base sheet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoverNode {
    /// One permutation per generator (2g of them).
    pub perms: Vec<Vec<u8>>,
    pub degree: usize,
    pub base_genus: usize,
    /// Genus of the total space, derived from cellular homology of the
    /// covering complex (independently of the degree formula).
    pub cover_genus: usize,
}

impl CoverNode {
    pub fn perm(&self, gen: usize) -> Perm {
        Perm::from_images(self.perms[gen].clone())
    }

    /// Image of a signed word as a permutation.
    pub fn word_perm(&self, w: &[i32]) -> Perm {
        let mut p = Perm::identity(self.degree);
        for &l in w {
            let g = self.perm((l.unsigned_abs() as usize) - 1);
            let g = if l > 0 { g } else { g.inverse() };
            p = p.compose(&g);
        }
        p
    }

    /// Does the word stabilize the given sheet (i.e. lie in that subgroup)?
    pub fn stabilizes(&self, w: &[i32], sheet: usize) -> bool {
        self.word_perm(w).apply(sheet) == sheet
    }

    pub fn is_transitive(&self) -> bool {
        transitive(&self.perms_as_perm())
    }

    fn perms_as_perm(&self) -> Vec<Perm> {
        (0..self.perms.len()).map(|i| self.perm(i)).collect()
    }
}

/// Degree formula: the cover of index n over genus g has genus n(g-1)+1.
pub fn cover_genus(n: usize, g: usize) -> usize {
    n * (g - 1) + 1
}

fn transitive(perms: &[Perm]) -> bool {
    if perms.is_empty() {
        return false;
    }
    let n = perms[0].degree();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(p) = stack.pop() {
        for g in perms {
            for q in [g.apply(p), g.inverse().apply(p)] {
                if !seen[q] {
                    seen[q] = true;
                    count += 1;
                    stack.push(q);
                }
            }
        }
    }
    count == n
}

/// Genus of the covering surface from the cellular chain complex of the
/// lifted one-vertex CW structure: V = E - rank d1 components, b1 from
/// E - V + 1 - rank d2. Exact integer arithmetic throughout.
fn homology_genus(perms: &[Perm], genus: usize) -> usize {
    let n = perms[0].degree();
    let g2 = 2 * genus;
    let edges = g2 * n;
    // boundary of the lifted face at each sheet: trace the relator
    let pres = SurfaceGroupPresentation { genus };
    let relator = pres.relator();
    let mut d2: Vec<Vec<i128>> = Vec::with_capacity(n);
    for sheet in 0..n {
        let mut row = vec![0i128; edges];
        let mut cur = sheet;
        for &l in &relator {
            let gen = (l.unsigned_abs() as usize) - 1;
            if l > 0 {
                row[gen * n + cur] += 1;
                cur = perms[gen].apply(cur);
            } else {
                let pre = perms[gen].inverse().apply(cur);
                row[gen * n + pre] -= 1;
                cur = pre;
            }
        }
        debug_assert_eq!(cur, sheet, "relator must close on every sheet");
        d2.push(row);
    }
    let rank2 = rank_fraction_free(&mut d2);
    let b1 = edges as i64 - n as i64 + 1 - rank2 as i64;
    assert!(b1 >= 0 && b1 % 2 == 0, "first Betti number must be even");
    (b1 / 2) as usize
}

/// Rank over Q by fraction-free elimination.
fn rank_fraction_free(m: &mut [Vec<i128>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let pivot = (rank..rows).find(|&r| m[r][col] != 0);
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        let pv = m[rank][col];
        for r in rank + 1..rows {
            if m[r][col] != 0 {
                let f = m[r][col];
                for c in col..cols {
                    m[r][c] = m[r][c] * pv - m[rank][c] * f;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Census of index-n covers: all transitive relator-respecting tuples up to
/// simultaneous relabeling, plus the count of based covers (subgroups).
#[derive(Clone, Debug, Serialize)]
pub struct CoverCensus {
    pub index: usize,
    pub base_genus: usize,
    /// Number of index-n subgroups (= based covers).
    pub based_count: u64,
    /// Unbased covers: representation classes up to relabeling.
    pub nodes: Vec<CoverNode>,
}

/// Hard cap on the exhaustive census.
pub const CENSUS_MAX_INDEX: usize = 6;

/// Enumerate all transitive index-n covers of the genus-g surface group.
///
/// Tuples are enumerated over free choices of the first 2g-1 generator
/// images; the last one is solved from the relator via cycle matching, so
/// the cost is |S_n|^{2g-1} rather than |S_n|^{2g}.
pub fn enumerate_covers(
    presentation: &SurfaceGroupPresentation,
    n: usize,
) -> Result<CoverCensus, CoverError> {
    if n < 1 {
        return Err(CoverError::InvalidParameter("index must be >= 1".into()));
    }
    if n > CENSUS_MAX_INDEX {
        return Err(CoverError::BudgetExceeded(n, CENSUS_MAX_INDEX));
    }
    let g = presentation.genus;
    let sn = symmetric_group(n);
    // centralizers, precomputed per element
    let centralizers: HashMap<&Perm, Vec<&Perm>> = sn
        .iter()
        .map(|x| {
            let c: Vec<&Perm> = sn.iter().filter(|z| z.compose(x) == x.compose(z)).collect();
            (x, c)
        })
        .collect();

    let mut transitive_count: u64 = 0;
    let mut canonical: HashSet<Vec<Vec<u8>>> = HashSet::new();
    let mut nodes: Vec<CoverNode> = Vec::new();

    // iterate over the first 2g-1 images
    let m = 2 * g - 1;
    let mut idx = vec![0usize; m];
    loop {
        let tuple: Vec<&Perm> = idx.iter().map(|&i| &sn[i]).collect();
        // c = inverse of the partial relator product; need [a_g, b_g] = c
        let mut partial = Perm::identity(n);
        for pair in tuple.chunks(2) {
            if pair.len() == 2 {
                let (a, b) = (pair[0], pair[1]);
                partial = partial
                    .compose(a)
                    .compose(b)
                    .compose(&a.inverse())
                    .compose(&b.inverse());
            }
        }
        let a_last = tuple[m - 1];
        let c = partial.inverse();
        // [a, b] = c  <=>  b * a^{-1} * b^{-1} = a^{-1} * c
        let x = a_last.inverse();
        let y = x.compose(&c);
        if let Some(b0) = intertwiner(&y, &x) {
            // solutions: all b with b x b^{-1} = y; b0 conjugates y to x, so
            // its inverse goes the right way; enumerate via the centralizer
            let b_base = b0.inverse();
            debug_assert_eq!(b_base.compose(&x).compose(&b_base.inverse()), y);
            for z in &centralizers[&x] {
                // right centralizer coset: (b z) x (b z)^{-1} = b x b^{-1}
                let b = b_base.compose(z);
                debug_assert_eq!(b.compose(&x).compose(&b.inverse()), y);
                let mut full: Vec<Perm> = tuple.iter().map(|p| (*p).clone()).collect();
                full.push(b);
                if !transitive(&full) {
                    continue;
                }
                transitive_count += 1;
                // canonical form under simultaneous relabeling
                let canon = canonical_form(&full, &sn);
                if canonical.insert(canon.clone()) {
                    let perms: Vec<Perm> = canon
                        .iter()
                        .map(|v| Perm::from_images(v.clone()))
                        .collect();
                    let cg = homology_genus(&perms, g);
                    nodes.push(CoverNode {
                        perms: canon,
                        degree: n,
                        base_genus: g,
                        cover_genus: cg,
                    });
                }
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == m {
                break;
            }
            idx[k] += 1;
            if idx[k] < sn.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
    }
    // based covers = transitive tuples / (n-1)!
    let fact: u64 = (1..n as u64).product();
    assert!(
        transitive_count % fact == 0,
        "transitive tuple count {transitive_count} not divisible by (n-1)! = {fact}"
    );
    nodes.sort_by(|a, b| a.perms.cmp(&b.perms));
    Ok(CoverCensus {
        index: n,
        base_genus: g,
        based_count: transitive_count / fact,
        nodes,
    })
}

fn canonical_form(perms: &[Perm], sn: &[Perm]) -> Vec<Vec<u8>> {
    let mut best: Option<Vec<Vec<u8>>> = None;
    for s in sn {
        let cand: Vec<Vec<u8>> = perms.iter().map(|p| p.relabel(s).images().to_vec()).collect();
        match &best {
            Some(b) if *b <= cand => {}
            _ => best = Some(cand),
        }
    }
    best.unwrap()
}

/// Containment witness: the unique fiber map from the finer cover's sheets
/// onto the coarser one's, sending base sheet to base sheet and commuting
/// with the action. Exists iff the finer subgroup is contained in the
/// coarser one.
#[derive(Clone, Debug)]
pub struct CoverMorphism {
    pub sheet_map: Vec<usize>,
}

pub fn containment_witness(fine: &CoverNode, coarse: &CoverNode) -> Option<CoverMorphism> {
    if fine.base_genus != coarse.base_genus {
        return None;
    }
    let mut phi = vec![usize::MAX; fine.degree];
    phi[0] = 0;
    let mut stack = vec![0usize];
    while let Some(s) = stack.pop() {
        for gidx in 0..fine.perms.len() {
            let gf = fine.perm(gidx);
            let gc = coarse.perm(gidx);
            for (t, tc) in [
                (gf.apply(s), gc.apply(phi[s])),
                (gf.inverse().apply(s), gc.inverse().apply(phi[s])),
            ] {
                if phi[t] == usize::MAX {
                    phi[t] = tc;
                    stack.push(t);
                } else if phi[t] != tc {
                    return None;
                }
            }
        }
    }
    if phi.iter().any(|&v| v == usize::MAX) {
        return None; // fine cover not transitive
    }
    Some(CoverMorphism { sheet_map: phi })
}

/// Common cover realizing the intersection of two subgroups: the component
/// of the base sheet pair in the product action.
pub fn meet(a: &CoverNode, b: &CoverNode) -> Result<CoverNode, CoverError> {
    if a.base_genus != b.base_genus {
        return Err(CoverError::TowerMismatch(
            "meet requires covers of the same base".into(),
        ));
    }
    let start = (0usize, 0usize);
    let mut index_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    index_of.insert(start, 0);
    let mut order = vec![start];
    let mut head = 0;
    while head < order.len() {
        let (i, j) = order[head];
        head += 1;
        for gidx in 0..a.perms.len() {
            let pa = a.perm(gidx);
            let pb = b.perm(gidx);
            for next in [
                (pa.apply(i), pb.apply(j)),
                (pa.inverse().apply(i), pb.inverse().apply(j)),
            ] {
                if !index_of.contains_key(&next) {
                    index_of.insert(next, order.len());
                    order.push(next);
                }
            }
        }
    }
    let deg = order.len();
    let mut perms = Vec::with_capacity(a.perms.len());
    for gidx in 0..a.perms.len() {
        let pa = a.perm(gidx);
        let pb = b.perm(gidx);
        let mut map = vec![0u8; deg];
        for (k, &(i, j)) in order.iter().enumerate() {
            let next = (pa.apply(i), pb.apply(j));
            map[k] = index_of[&next] as u8;
        }
        perms.push(map);
    }
    let pp: Vec<Perm> = perms
        .iter()
        .map(|v| Perm::from_images(v.clone()))
        .collect();
    let cg = homology_genus(&pp, a.base_genus);
    Ok(CoverNode {
        perms,
        degree: deg,
        base_genus: a.base_genus,
        cover_genus: cg,
    })
}

/// The trivial (index 1) cover.
pub fn trivial_cover(presentation: &SurfaceGroupPresentation) -> CoverNode {
    CoverNode {
        perms: vec![vec![0u8]; presentation.rank()],
        degree: 1,
        base_genus: presentation.genus,
        cover_genus: presentation.genus,
    }
}

/// JSON census export.
pub fn census_to_json(census: &CoverCensus) -> serde_json::Value {
    serde_json::json!({
        "n": census.index,
        "base_genus": census.base_genus,
        "based_count": census.based_count,
        "unbased_count": census.nodes.len(),
        "nodes": census.nodes.iter().map(|n| serde_json::json!({
            "perms": n.perms,
            "genus": n.cover_genus,
        })).collect::<Vec<_>>(),
    })
}

/// DOT export of the containment relation among the given nodes (an edge
/// fine -> coarse whenever the witness exists).
pub fn tower_to_dot(nodes: &[CoverNode]) -> String {
    let mut out = String::from("digraph tower {\n");
    for (i, n) in nodes.iter().enumerate() {
        out.push_str(&format!(
            "  n{i} [label=\"deg {} genus {}\"];\n",
            n.degree, n.cover_genus
        ));
    }
    for (i, a) in nodes.iter().enumerate() {
        for (j, b) in nodes.iter().enumerate() {
            if i != j && a.degree > b.degree && containment_witness(a, b).is_some() {
                out.push_str(&format!("  n{i} -> n{j};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_census() {
        let p = SurfaceGroupPresentation::new(2).unwrap();
        let c = enumerate_covers(&p, 1).unwrap();
        assert_eq!(c.based_count, 1);
        assert_eq!(c.nodes.len(), 1);
        assert_eq!(c.nodes[0].cover_genus, 2);
    }

    #[test]
    fn index_two_census_is_fifteen() {
        let p = SurfaceGroupPresentation::new(2).unwrap();
        let c = enumerate_covers(&p, 2).unwrap();
        // nontrivial homomorphisms to Z/2: 2^4 - 1
        assert_eq!(c.based_count, 15);
        for node in &c.nodes {
            assert_eq!(node.cover_genus, 3);
            assert_eq!(node.cover_genus, cover_genus(2, 2));
        }
    }

    #[test]
    fn degree_formula_exact_for_small_indices() {
        let p = SurfaceGroupPresentation::new(2).unwrap();
        for n in 1..=3 {
            let c = enumerate_covers(&p, n).unwrap();
            for node in &c.nodes {
                assert_eq!(node.degree * (2 - 1), node.cover_genus - 1);
            }
        }
    }

    #[test]
    fn budget_is_all_or_nothing() {
        let p = SurfaceGroupPresentation::new(2).unwrap();
        assert!(matches!(
            enumerate_covers(&p, CENSUS_MAX_INDEX + 1),
            Err(CoverError::BudgetExceeded(_, _))
        ));
    }

    #[test]
    fn meet_idempotent_and_unit() {
        let p = SurfaceGroupPresentation::new(2).unwrap();
        let c = enumerate_covers(&p, 2).unwrap();
        let node = &c.nodes[0];
        let triv = trivial_cover(&p);
        let m1 = meet(node, node).unwrap();
        assert_eq!(m1.degree, node.degree);
        assert!(containment_witness(&m1, node).is_some());
        let m2 = meet(&triv, node).unwrap();
        assert_eq!(m2.degree, node.degree);
        // meet of two distinct index-2 nodes is an index-4 cover below both
        let a = &c.nodes[0];
        let b = &c.nodes[1];
        let m = meet(a, b).unwrap();
        assert_eq!(m.degree, 4);
        assert!(containment_witness(&m, a).is_some());
        assert!(containment_witness(&m, b).is_some());
        assert_eq!(m.cover_genus, cover_genus(4, 2));
    }

    #[test]
    fn witness_detects_noncontainment() {
        let p = SurfaceGroupPresentation::new(2).unwrap();
        let c = enumerate_covers(&p, 2).unwrap();
        // two distinct index-2 subgroups never contain each other
        assert!(containment_witness(&c.nodes[0], &c.nodes[1]).is_none());
    }

    #[test]
    fn relator_closes_on_all_census_nodes() {
        let p = SurfaceGroupPresentation::new(2).unwrap();
        for n in 1..=3 {
            let c = enumerate_covers(&p, n).unwrap();
            for node in &c.nodes {
                assert!(node.word_perm(&p.relator()).is_identity());
                assert!(node.is_transitive());
            }
        }
    }
}
