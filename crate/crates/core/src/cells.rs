//! Stratification of the closed Weyl chamber into cells.
//!
//! The cell attached to a subset `S` of simple roots consists of the points
//! orthogonal to `S` and strictly positive against the remaining simple roots.
//! Because `(ω_i, α_j) = δ_ij d_j` with `d_j > 0`, membership reduces to the
//! sign pattern of fundamental-weight coordinates: zero on `S`, positive off it.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::root_system::{RootDatum, Weight};

/// A cell of the closed chamber, identified by the pinned simple roots `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    rank: usize,
    pinned: u64,
}

impl Cell {
    /// Builds a cell from a bitmask of pinned roots (bit `i` is label `i + 1`).
    pub fn from_mask(rank: usize, mask: u64) -> Result<Self> {
        let full = full_mask(rank);
        if mask & !full != 0 {
            let label = (64 - (mask & !full).leading_zeros()) as usize;
            return Err(Error::IndexOutOfRange { label, rank });
        }
        Ok(Self { rank, pinned: mask })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mask(&self) -> u64 {
        self.pinned
    }

    /// Dimension `m = n - |S|`.
    pub fn dim(&self) -> usize {
        self.rank - self.pinned.count_ones() as usize
    }

    pub fn is_pinned(&self, index: usize) -> bool {
        self.pinned >> index & 1 == 1
    }

    /// 1-based labels of `S`, ascending.
    pub fn pinned_labels(&self) -> Vec<usize> {
        (0..self.rank)
            .filter(|&i| self.is_pinned(i))
            .map(|i| i + 1)
            .collect()
    }

    /// 0-based indices of the free simple roots, ascending. These order the
    /// coordinates of 𝔞_σ and of moment points.
    pub fn free_indices(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| !self.is_pinned(i)).collect()
    }

    pub fn is_open_chamber(&self) -> bool {
        self.pinned == 0
    }

    pub fn is_zero_cell(&self) -> bool {
        self.pinned == full_mask(self.rank)
    }

    pub fn contains(&self, weight: &Weight) -> bool {
        weight.rank() == self.rank
            && weight.coords().iter().enumerate().all(|(i, c)| {
                if self.is_pinned(i) {
                    c.is_zero()
                } else {
                    c.is_positive()
                }
            })
    }

    pub fn closure_contains(&self, weight: &Weight) -> bool {
        weight.rank() == self.rank
            && weight.coords().iter().enumerate().all(|(i, c)| {
                if self.is_pinned(i) {
                    c.is_zero()
                } else {
                    !c.is_negative()
                }
            })
    }

    /// Whether the weight lies in 𝔱_σ*, i.e. vanishes on every pinned root.
    pub fn spans(&self, weight: &Weight) -> bool {
        weight.rank() == self.rank
            && weight
                .coords()
                .iter()
                .enumerate()
                .all(|(i, c)| !self.is_pinned(i) || c.is_zero())
    }

    /// The cell with `S` replaced by `Δ ∖ S`.
    pub fn complementary(&self) -> Cell {
        Cell {
            rank: self.rank,
            pinned: !self.pinned & full_mask(self.rank),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("S={")?;
        for (i, label) in self.pinned_labels().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{label}")?;
        }
        f.write_str("}")
    }
}

fn full_mask(rank: usize) -> u64 {
    if rank >= 64 {
        u64::MAX
    } else {
        (1u64 << rank) - 1
    }
}

/// The cell pinning the given 1-based simple-root labels.
pub fn cell_of_subset(datum: &RootDatum, labels: &[usize]) -> Result<Cell> {
    let rank = datum.rank();
    let mut mask = 0u64;
    for &label in labels {
        if label == 0 || label > rank {
            return Err(Error::IndexOutOfRange { label, rank });
        }
        mask |= 1 << (label - 1);
    }
    Cell::from_mask(rank, mask)
}

/// The unique cell containing a dominant weight: `S` is its zero set.
pub fn cell_of_weight(datum: &RootDatum, weight: &Weight) -> Result<Cell> {
    let rank = datum.rank();
    if weight.rank() != rank {
        return Err(Error::DimensionMismatch {
            expected: rank,
            got: weight.rank(),
        });
    }
    if !datum.is_dominant(weight) {
        return Err(Error::NotDominant);
    }
    let mask = weight
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_zero())
        .fold(0u64, |m, (i, _)| m | 1 << i);
    Cell::from_mask(rank, mask)
}

/// All `2^n` cells, by subset bitmask ascending.
pub fn enumerate_cells(datum: &RootDatum) -> Vec<Cell> {
    let rank = datum.rank();
    assert!(rank < 32, "enumerating 2^{rank} cells is not supported");
    (0..1u64 << rank)
        .map(|mask| Cell { rank, pinned: mask })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RootDatum {
        RootDatum::from_spec_str("A2").unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_integers(c)
    }

    #[test]
    fn extreme_subsets() {
        let d = a2();
        let open = cell_of_subset(&d, &[]).unwrap();
        assert_eq!(open.dim(), 2);
        assert!(open.is_open_chamber());
        let zero = cell_of_subset(&d, &[1, 2]).unwrap();
        assert_eq!(zero.dim(), 0);
        assert!(zero.is_zero_cell());
        assert!(zero.contains(&Weight::zero(2)));
    }

    #[test]
    fn ray_cell() {
        let d = a2();
        let ray = cell_of_subset(&d, &[2]).unwrap();
        assert_eq!(ray.dim(), 1);
        assert_eq!(ray.free_indices(), vec![0]);
        assert!(ray.contains(&w(&[3, 0])));
        assert!(!ray.contains(&w(&[3, 1])));
        assert!(ray.closure_contains(&w(&[0, 0])));
        assert!(ray.closure_contains(&w(&[2, 0])));
        assert!(!ray.closure_contains(&w(&[0, 1])));
    }

    #[test]
    fn wall_point_not_in_open_cell() {
        let open = cell_of_subset(&a2(), &[]).unwrap();
        assert!(!open.contains(&w(&[0, 5])));
    }

    #[test]
    fn cell_of_weight_reads_zero_pattern() {
        let d = a2();
        assert_eq!(cell_of_weight(&d, &w(&[0, 3])).unwrap().pinned_labels(), vec![1]);
        assert_eq!(cell_of_weight(&d, &w(&[0, 0])).unwrap().pinned_labels(), vec![1, 2]);
        assert!(cell_of_weight(&d, &w(&[2, 3])).unwrap().pinned_labels().is_empty());
        assert_eq!(cell_of_weight(&d, &w(&[-1, 3])), Err(Error::NotDominant));
    }

    #[test]
    fn complements() {
        let d = a2();
        let c = cell_of_subset(&d, &[2]).unwrap().complementary();
        assert_eq!(c.pinned_labels(), vec![1]);
        assert!(cell_of_subset(&d, &[]).unwrap().complementary().is_zero_cell());
        let b2 = RootDatum::from_spec_str("B2").unwrap();
        let s = cell_of_subset(&b2, &[1]).unwrap();
        assert_eq!(s.complementary().pinned_labels(), vec![2]);
        assert_eq!(s.dim() + s.complementary().dim(), 2);
    }

    #[test]
    fn enumeration_sizes() {
        for (spec, count) in [("A1", 2), ("A2", 4), ("A3", 8)] {
            let d = RootDatum::from_spec_str(spec).unwrap();
            let cells = enumerate_cells(&d);
            assert_eq!(cells.len(), count);
            assert!(cells.windows(2).all(|p| p[0].mask() < p[1].mask()));
        }
    }

    #[test]
    fn bad_labels() {
        let d = a2();
        assert_eq!(
            cell_of_subset(&d, &[3]),
            Err(Error::IndexOutOfRange { label: 3, rank: 2 })
        );
        assert!(cell_of_subset(&d, &[0]).is_err());
        assert!(Cell::from_mask(2, 0b100).is_err());
    }

    #[test]
    fn display() {
        let c = cell_of_subset(&a2(), &[1, 2]).unwrap();
        assert_eq!(c.to_string(), "S={1,2}");
    }
}
