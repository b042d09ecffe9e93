use serde::Serialize;

use crate::error::{Error, Result};

/// Type-A Cartan datum of the given rank: a_{ii} = 2, a_{ij} = -1 for
/// |i-j| = 1, 0 otherwise, with d_i = 1 throughout (simply laced).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CartanData {
    rank: usize,
}

impl CartanData {
    pub fn type_a(rank: usize) -> Result<Self> {
        if rank < 1 {
            return Err(Error::Domain("rank must be at least 1".into()));
        }
        Ok(CartanData { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cartan matrix entry a_{ij}; indices are 0-based.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        debug_assert!(i < self.rank && j < self.rank);
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    }

    /// Bilinear form (alpha_i, alpha_j) = d_i a_{ij} = a_{ij} in type A.
    pub fn bilinear(&self, i: usize, j: usize) -> i64 {
        self.a(i, j)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i + 1, rank: self.rank })
        }
    }
}

/// Element of the root lattice Q = sum Z alpha_i, as coefficients b_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    /// The simple root alpha_i (0-based).
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// i-th height function: the coefficient of alpha_i.
    pub fn height(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&b| b >= 0)
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Pairing (alpha_i, gamma) for the type-A bilinear form.
    pub fn pair_simple(&self, cartan: &CartanData, i: usize) -> i64 {
        (0..cartan.rank()).map(|j| cartan.bilinear(i, j) * self.0[j]).sum()
    }

    /// Membership in Q^+_S: all coefficients nonnegative and supported on S.
    pub fn in_positive_span_of(&self, s: &SubsetS) -> bool {
        self.is_positive() && self.0.iter().enumerate().all(|(i, &b)| b == 0 || s.contains(i))
    }
}

/// Set of pairwise strongly orthogonal simple indices (0-based): a_{ij} = 0
/// for every pair of distinct members, i.e. |i-j| > 1 in type A.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetS {
    indices: Vec<usize>,
}

impl SubsetS {
    pub fn new(cartan: &CartanData, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        for &i in &indices {
            cartan.check_index(i)?;
        }
        for w in indices.windows(2) {
            if cartan.a(w[0], w[1]) != 0 {
                return Err(Error::NotStronglyOrthogonal(w[0] + 1, w[1] + 1));
            }
        }
        Ok(SubsetS { indices })
    }

    pub fn empty() -> Self {
        SubsetS { indices: vec![] }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_matrix_type_a() {
        let c = CartanData::type_a(3).unwrap();
        assert_eq!(c.a(0, 0), 2);
        assert_eq!(c.a(0, 1), -1);
        assert_eq!(c.a(0, 2), 0);
        assert!(CartanData::type_a(0).is_err());
    }

    #[test]
    fn strongly_orthogonal_validation() {
        let c = CartanData::type_a(4).unwrap();
        assert!(SubsetS::new(&c, vec![0, 2]).is_ok());
        assert!(SubsetS::new(&c, vec![0, 1]).is_err());
        assert!(SubsetS::new(&c, vec![0, 7]).is_err());
    }

    #[test]
    fn root_vector_heights() {
        let g = RootVector(vec![1, 0, 2]);
        assert_eq!(g.height(0), 1);
        assert_eq!(g.height(2), 2);
        let c = CartanData::type_a(3).unwrap();
        let s = SubsetS::new(&c, vec![0, 2]).unwrap();
        assert!(g.in_positive_span_of(&s));
        assert!(!RootVector(vec![0, 1, 0]).in_positive_span_of(&s));
    }
}
