use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use super::NodeId;

/// A bijection of `1..=n` onto itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[k] is the 0-based image of 0-based node k
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// `images[k]` is the 1-based image of node `k + 1`. Returns `None`
    /// unless the images are exactly `1..=n` in some order.
    pub fn from_images(images: Vec<NodeId>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
        }
        Some(Self {
            images: images.into_iter().map(|x| x - 1).collect(),
        })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|x| x + 1).collect()).is_some());
        Self { images }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Self { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, node: NodeId) -> NodeId {
        self.images[node - 1] + 1
    }

    /// 1-based images in node order.
    pub fn images(&self) -> Vec<NodeId> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x] = k;
        }
        Self { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len());
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(k, x)| format!("{}->{}", k + 1, x + 1))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_algebra() {
        assert!(Permutation::from_images(vec![1, 1]).is_none());
        assert!(Permutation::from_images(vec![0, 1]).is_none());
        assert!(Permutation::from_images(vec![1, 3]).is_none());
        let p = Permutation::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(p.image(1), 2);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.compose(&p).images(), vec![3, 1, 2]);
        assert_eq!(p.to_string(), "[1->2, 2->3, 3->1]");
    }
}
