//! Rank of sparse matrices over `F_p` by incremental echelon insertion.
//!
//! Vectors are lists of `(row, coeff)` sorted by descending row index with
//! nonzero coefficients. Stored pivot vectors are normalized to leading
//! coefficient 1 and keyed by their leading row.

use super::field;

pub type SparseVec = Vec<(u32, u32)>;

pub struct Echelon {
    p: u32,
    pivots: Vec<Option<SparseVec>>,
    rank: usize,
}

impl Echelon {
    pub fn new(p: u32, rows: usize) -> Self {
        Self { p, pivots: vec![None; rows], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `v` against the stored pivots; returns whether it was
    /// independent of them (and then stores it).
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        let p = self.p;
        let mut scratch = Vec::new();
        loop {
            let Some(&(lead, c)) = v.first() else {
                return false;
            };
            match &self.pivots[lead as usize] {
                Some(piv) => {
                    axpy_into(&v, piv, c, p, &mut scratch);
                    std::mem::swap(&mut v, &mut scratch);
                }
                None => {
                    let ci = field::inv(c, p);
                    for e in v.iter_mut() {
                        e.1 = field::mul(e.1, ci, p);
                    }
                    self.pivots[lead as usize] = Some(v);
                    self.rank += 1;
                    return true;
                }
            }
        }
    }
}

// out = v - c * piv, where both lead with the same row; the lead cancels.
fn axpy_into(v: &[(u32, u32)], piv: &[(u32, u32)], c: u32, p: u32, out: &mut SparseVec) {
    out.clear();
    out.reserve(v.len() + piv.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() && j < piv.len() {
        let (rv, cv) = v[i];
        let (rp, cp) = piv[j];
        if rv > rp {
            out.push((rv, cv));
            i += 1;
        } else if rp > rv {
            out.push((rp, field::sub(0, field::mul(c, cp, p), p)));
            j += 1;
        } else {
            let s = field::sub(cv, field::mul(c, cp, p), p);
            if s != 0 {
                out.push((rv, s));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&v[i..]);
    for &(rp, cp) in &piv[j..] {
        out.push((rp, field::sub(0, field::mul(c, cp, p), p)));
    }
}

/// Disjoint-set forest used to split a matrix into independent blocks.
pub struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect() }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_vectors() {
        let mut e = Echelon::new(7, 4);
        assert!(e.insert(vec![(3, 1), (1, 2)]));
        assert!(e.insert(vec![(3, 2), (0, 1)]));
        // 2*(first) - ... lies in the span
        assert!(!e.insert(vec![(3, 3), (1, 6)]));
        assert!(!e.insert(vec![]));
        assert!(e.insert(vec![(2, 5)]));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn components() {
        let mut uf = UnionFind::new(5);
        uf.union(0, 3);
        uf.union(3, 4);
        assert_eq!(uf.find(4), uf.find(0));
        assert_ne!(uf.find(1), uf.find(0));
    }
}
