//! Small F₂ linear algebra on bit vectors packed in `u32`.

/// Incremental row echelon form keyed by leading bit.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<u32>,
}

impl Echelon {
    /// Reduce `v` against the stored rows.
    pub fn reduce(&self, mut v: u32) -> u32 {
        for &r in &self.rows {
            let lead = 31 - r.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    /// Insert `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: u32) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        // keep rows sorted by descending leading bit
        let pos = self
            .rows
            .partition_point(|&r| r.leading_zeros() < v.leading_zeros());
        self.rows.insert(pos, v);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Rank of a set of vectors over F₂.
pub fn rank(vectors: &[u32]) -> usize {
    let mut e = Echelon::default();
    for &v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// All `2^k` F₂-combinations of `gens`, indexed by the combination mask.
pub fn combinations(gens: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; 1 << gens.len()];
    for w in 1..out.len() {
        let low = w.trailing_zeros() as usize;
        out[w] = out[w & (w - 1)] ^ gens[low];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[0]), 0);
        assert_eq!(rank(&[1, 2, 3]), 2);
        assert_eq!(rank(&[0b1010, 0b0110, 0b1100, 0b0001]), 3);
        assert_eq!(rank(&[1, 2, 4, 8]), 4);
    }

    #[test]
    fn combos() {
        assert_eq!(combinations(&[1, 2]), vec![0, 1, 2, 3]);
        assert_eq!(combinations(&[5, 5]), vec![0, 5, 5, 0]);
    }
}
