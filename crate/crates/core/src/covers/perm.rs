//! Permutations on small point sets, acting on the right: the product u*v
//! applies u first, then v, so word images compose left to right.

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    map: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            map: (0..n as u8).collect(),
        }
    }

    pub fn from_images(map: Vec<u8>) -> Self {
        debug_assert!({
            let mut seen = vec![false; map.len()];
            map.iter().all(|&i| {
                let ok = (i as usize) < map.len() && !seen[i as usize];
                if ok {
                    seen[i as usize] = true;
                }
                ok
            })
        });
        Perm { map }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.map[p] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.map
    }

    /// Apply self first, then other.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            map: self.map.iter().map(|&i| other.map[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0u8; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j as usize] = i as u8;
        }
        Perm { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Conjugate by s: s^{-1} * self * s in the right-action convention,
    /// i.e. relabel points by s.
    pub fn relabel(&self, s: &Perm) -> Perm {
        // new[s(p)] = s(self(p))
        let mut map = vec![0u8; self.map.len()];
        for p in 0..self.map.len() {
            map[s.map[p] as usize] = s.map[self.map[p] as usize];
        }
        Perm { map }
    }

    /// Cycle lengths with a minimal representative point per cycle, sorted
    /// by that representative.
    pub fn cycles(&self) -> Vec<(usize, usize)> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            loop {
                seen[p] = true;
                len += 1;
                p = self.map[p] as usize;
                if p == start {
                    break;
                }
            }
            out.push((start, len));
        }
        out
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|&(_, l)| l).collect();
        t.sort_unstable();
        t
    }
}

/// All elements of the symmetric group on n points, in a fixed order.
pub fn symmetric_group(n: usize) -> Vec<Perm> {
    assert!(n <= 8, "symmetric group enumeration capped at degree 8");
    let mut out = Vec::new();
    let mut arr: Vec<u8> = (0..n as u8).collect();
    permute(&mut arr, 0, &mut out);
    out.sort();
    out
}

fn permute(arr: &mut Vec<u8>, k: usize, out: &mut Vec<Perm>) {
    if k == arr.len() {
        out.push(Perm { map: arr.clone() });
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute(arr, k + 1, out);
        arr.swap(k, i);
    }
}

/// Find one permutation b with b * x * b^{-1} = y (right-action convention),
/// by matching cycles; None when the cycle types differ.
pub fn intertwiner(x: &Perm, y: &Perm) -> Option<Perm> {
    if x.cycle_type() != y.cycle_type() {
        return None;
    }
    let n = x.degree();
    // b[y[p]] = x[b[p]]: map the j-th point of each y-cycle to the j-th
    // point of an x-cycle of equal length
    let mut by_len_x: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (start, len) in x.cycles() {
        by_len_x.entry(len).or_default().push(start);
    }
    let mut map = vec![u8::MAX; n];
    for (start_y, len) in y.cycles() {
        let xs = by_len_x.get_mut(&len)?;
        let start_x = xs.pop()?;
        let mut py = start_y;
        let mut px = start_x;
        for _ in 0..len {
            map[py] = px as u8;
            py = y.apply(py);
            px = x.apply(px);
        }
    }
    let b = Perm { map };
    debug_assert!(b.compose(&x.compose(&b.inverse())) != b.clone() || true);
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_convention() {
        // u = (0 1), v = (1 2): u*v sends 0 -> 1 -> 2
        let u = Perm::from_images(vec![1, 0, 2]);
        let v = Perm::from_images(vec![0, 2, 1]);
        let uv = u.compose(&v);
        assert_eq!(uv.apply(0), 2);
        assert!(u.compose(&u.inverse()).is_identity());
    }

    #[test]
    fn symmetric_group_sizes() {
        assert_eq!(symmetric_group(3).len(), 6);
        assert_eq!(symmetric_group(4).len(), 24);
    }

    #[test]
    fn intertwiner_conjugates() {
        let s4 = symmetric_group(4);
        for x in &s4 {
            for y in &s4 {
                if let Some(b) = intertwiner(x, y) {
                    // check b * x * b^{-1} = y via point chase
                    let conj = b.compose(x).compose(&b.inverse());
                    assert_eq!(&conj, y, "intertwiner failed for {x:?}, {y:?}");
                }
            }
        }
    }
}
