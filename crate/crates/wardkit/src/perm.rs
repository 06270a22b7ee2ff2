//! Small permutation helper used by the reordering and equivalence code.

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored as the image vector `i -> images[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// Identity permutation on `n` points.
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from an image vector, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(Error::Parameter(format!(
                    "image vector {images:?} is not a permutation"
                )));
            }
            seen[im] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Composition acting left to right: `(self.then(other))(i) = other(self(i))`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Perm { images }
    }

    /// Nontrivial cycles, each rotated to start at its smallest point and
    /// listed in order of those starting points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.images[cur];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Cycle notation over 1-based point labels, e.g. `(2 3 5 4)`.
    /// The identity renders as `()`.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|cyc| {
                let inner = cyc
                    .iter()
                    .map(|p| (p + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("({inner})")
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let p = Perm::from_images(vec![1, 2, 0]).unwrap();
        let q = p.inverse();
        assert_eq!(p.then(&q), Perm::identity(3));
        assert_eq!(q.then(&p), Perm::identity(3));
        assert_eq!(p.apply(0), 1);
        assert_eq!(q.apply(1), 0);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn cycle_notation_examples() {
        // 1-based images 1->1, 2->3, 3->5, 4->2, 5->4, 6->6.
        let p = Perm::from_images(vec![0, 2, 4, 1, 3, 5]).unwrap();
        assert_eq!(p.cycle_notation(), "(2 3 5 4)");
        assert_eq!(Perm::identity(4).cycle_notation(), "()");
    }
}
