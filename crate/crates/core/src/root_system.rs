//! Exact root data for compact semi-simple groups.
//!
//! A [`RootDatum`] is built from the Gram matrix of the simple roots, with the
//! invariant form normalized so that long roots in every simple factor have
//! squared length 2. Simple roots follow Bourbaki numbering; labels exposed to
//! users are 1-based, vectors and matrices are 0-based.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// One simple factor of a semi-simple root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleFactor {
    pub series: char,
    pub rank: usize,
}

impl SimpleFactor {
    pub fn new(series: char, rank: usize) -> Result<Self> {
        let ok = match series {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'C' => rank >= 3,
            'D' => rank >= 4,
            'G' => rank == 2,
            'F' => rank == 4,
            'E' => (6..=8).contains(&rank),
            _ => false,
        };
        if ok {
            Ok(Self { series, rank })
        } else {
            Err(Error::UnsupportedType { series, rank })
        }
    }

    /// Number of positive roots from the classification tables.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            'A' => n * (n + 1) / 2,
            'B' | 'C' => n * n,
            'D' => n * (n - 1),
            'G' => 6,
            'F' => 24,
            'E' => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            _ => unreachable!("validated in SimpleFactor::new"),
        }
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots, long roots normalized to 2.
    fn simple_gram(&self) -> Vec<Vec<Rational64>> {
        let n = self.rank;
        let int = |v: i64| Rational64::from_integer(v);
        let half = Rational64::new(1, 2);
        let mut g = vec![vec![Rational64::zero(); n]; n];
        let link = |g: &mut Vec<Vec<Rational64>>, i: usize, j: usize, v: Rational64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.series {
            'A' => {
                for i in 0..n {
                    g[i][i] = int(2);
                }
                for i in 1..n {
                    link(&mut g, i - 1, i, int(-1));
                }
            }
            'B' => {
                for i in 0..n - 1 {
                    g[i][i] = int(2);
                }
                g[n - 1][n - 1] = int(1);
                for i in 1..n {
                    link(&mut g, i - 1, i, int(-1));
                }
            }
            'C' => {
                for i in 0..n - 1 {
                    g[i][i] = int(1);
                }
                g[n - 1][n - 1] = int(2);
                for i in 1..n - 1 {
                    link(&mut g, i - 1, i, -half);
                }
                link(&mut g, n - 2, n - 1, int(-1));
            }
            'D' => {
                for i in 0..n {
                    g[i][i] = int(2);
                }
                for i in 1..n - 1 {
                    link(&mut g, i - 1, i, int(-1));
                }
                link(&mut g, n - 3, n - 1, int(-1));
            }
            'E' => {
                for i in 0..n {
                    g[i][i] = int(2);
                }
                // Bourbaki: 1-3-4-5-6-7-8 chain with 2 attached to 4.
                link(&mut g, 0, 2, int(-1));
                link(&mut g, 1, 3, int(-1));
                for i in 3..n {
                    link(&mut g, i - 1, i, int(-1));
                }
            }
            'F' => {
                g[0][0] = int(2);
                g[1][1] = int(2);
                g[2][2] = int(1);
                g[3][3] = int(1);
                link(&mut g, 0, 1, int(-1));
                link(&mut g, 1, 2, int(-1));
                link(&mut g, 2, 3, -half);
            }
            'G' => {
                g[0][0] = Rational64::new(2, 3);
                g[1][1] = int(2);
                link(&mut g, 0, 1, int(-1));
            }
            _ => unreachable!("validated in SimpleFactor::new"),
        }
        g
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

/// A product of simple factors, e.g. `A1xA1` or `B3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    factors: Vec<SimpleFactor>,
}

impl RootSystemSpec {
    pub fn new(factors: Vec<SimpleFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::ParseSpec(String::new()));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseSpec(s.to_string());
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(bad());
        }
        let mut factors = Vec::new();
        for part in trimmed.split('x') {
            let mut chars = part.chars();
            let series = chars.next().ok_or_else(bad)?;
            if !series.is_ascii_uppercase() {
                return Err(bad());
            }
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let rank: usize = digits.parse().map_err(|_| bad())?;
            factors.push(SimpleFactor::new(series, rank)?);
        }
        Self::new(factors)
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// A point of 𝔱* in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<Rational64>,
}

impl Weight {
    pub fn new(coords: Vec<Rational64>) -> Self {
        Self { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| Rational64::from_integer(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![Rational64::zero(); rank])
    }

    /// The fundamental weight ω_label (1-based label).
    pub fn fundamental(rank: usize, label: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coords[label - 1] = Rational64::one();
        w
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.is_integral() && self.coords.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Exact root-system data.
#[derive(Debug, Clone, PartialEq)]
pub struct RootDatum {
    spec: RootSystemSpec,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<Rational64>,
    gram_fw: Vec<Vec<Rational64>>,
    pos_roots: Vec<Vec<i64>>,
}

pub fn build_root_datum(spec: &RootSystemSpec) -> Result<RootDatum> {
    let n = spec.rank();
    if n > 64 {
        return Err(Error::DimensionTooLarge { dim: n, max: 64 });
    }

    let mut gram = vec![vec![Rational64::zero(); n]; n];
    let mut offset = 0;
    for factor in spec.factors() {
        let block = factor.simple_gram();
        for (i, row) in block.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                gram[offset + i][offset + j] = *v;
            }
        }
        offset += factor.rank;
    }

    let symmetrizers: Vec<Rational64> = (0..n).map(|j| gram[j][j] / 2).collect();
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = gram[i][j] * 2 / gram[j][j];
                    debug_assert!(a.is_integer());
                    a.to_integer()
                })
                .collect()
        })
        .collect();

    let cartan_q: Vec<Vec<Rational64>> = cartan
        .iter()
        .map(|row| row.iter().map(|&v| Rational64::from_integer(v)).collect())
        .collect();
    let inverse = invert(&cartan_q).expect("Cartan matrices of semi-simple types are invertible");
    let gram_fw: Vec<Vec<Rational64>> = (0..n)
        .map(|i| (0..n).map(|j| inverse[i][j] * symmetrizers[j]).collect())
        .collect();

    let pos_roots = positive_roots(&cartan);

    Ok(RootDatum {
        spec: spec.clone(),
        cartan,
        symmetrizers,
        gram_fw,
        pos_roots,
    })
}

impl RootDatum {
    pub fn from_spec_str(s: &str) -> Result<Self> {
        build_root_datum(&s.parse()?)
    }

    pub fn spec(&self) -> &RootSystemSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `cartan[i][j] = 2(α_i, α_j) / (α_j, α_j)`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `d_j = (α_j, α_j) / 2`.
    pub fn symmetrizers(&self) -> &[Rational64] {
        &self.symmetrizers
    }

    /// `(ω_i, ω_j)`.
    pub fn gram_fw(&self) -> &[Vec<Rational64>] {
        &self.gram_fw
    }

    /// Positive roots in simple-root coordinates, ordered by height then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.pos_roots
    }

    /// `(α_i, α_j) = d_j · A_ij`.
    pub fn simple_root_pairing(&self, i: usize, j: usize) -> Rational64 {
        self.symmetrizers[j] * self.cartan[i][j]
    }

    /// The simple root α_label expanded in fundamental weights (row of the Cartan matrix).
    pub fn simple_root(&self, label: usize) -> Weight {
        Weight::from_integers(&self.cartan[label - 1])
    }

    pub fn inner_product(&self, u: &Weight, v: &Weight) -> Result<Rational64> {
        let n = self.rank();
        for w in [u, v] {
            if w.rank() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: w.rank(),
                });
            }
        }
        let mut acc = Rational64::zero();
        for (i, ui) in u.coords().iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.coords().iter().enumerate() {
                acc += *ui * self.gram_fw[i][j] * *vj;
            }
        }
        Ok(acc)
    }

    /// Dominance only; integrality is the caller's concern.
    pub fn is_dominant(&self, weight: &Weight) -> bool {
        weight.coords().iter().all(|c| !c.is_negative())
    }

    /// Gram of the fundamental weights is positive definite (leading minors).
    pub fn gram_is_positive_definite(&self) -> bool {
        leading_minors(&self.gram_fw).iter().all(|m| m.is_positive())
    }
}

fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut all: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut seen: HashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut layer = all.clone();

    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // p - q = <β, α_i^∨> along the α_i-string through β.
                let pairing: i64 = (0..n).map(|k| beta[k] * cartan[k][i]).sum();
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if seen.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        all.extend(next.iter().cloned());
        layer = next;
    }

    all.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    all
}

/// Gauss-Jordan inverse over the rationals.
pub(crate) fn invert(m: &[Vec<Rational64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m.to_vec();
    let mut inv: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational64::one() } else { Rational64::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col];
            for j in 0..n {
                let (ac, ic) = (a[col][j], inv[col][j]);
                a[r][j] -= factor * ac;
                inv[r][j] -= factor * ic;
            }
        }
    }
    Some(inv)
}

/// Rank of a rational matrix (rows are vectors).
pub(crate) fn rational_rank(rows: &[Vec<Rational64>]) -> usize {
    let mut a: Vec<Vec<Rational64>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col] / a[rank][col];
            for j in col..cols {
                let v = a[rank][j];
                a[r][j] -= factor * v;
            }
        }
        rank += 1;
    }
    rank
}

fn leading_minors(m: &[Vec<Rational64>]) -> Vec<Rational64> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut minors = Vec::with_capacity(n);
    let mut det = Rational64::one();
    // Plain elimination without pivoting: the k-th pivot is minor_k / minor_{k-1}.
    for k in 0..n {
        let p = a[k][k];
        det *= p;
        minors.push(det);
        if p.is_zero() {
            minors.resize(n, Rational64::zero());
            return minors;
        }
        for r in k + 1..n {
            let factor = a[r][k] / p;
            for j in k..n {
                let v = a[k][j];
                a[r][j] -= factor * v;
            }
        }
    }
    minors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn a1_is_the_smallest_case() {
        let d = RootDatum::from_spec_str("A1").unwrap();
        assert_eq!(d.cartan(), &[vec![2]]);
        assert_eq!(d.symmetrizers(), &[q(1, 1)]);
        assert_eq!(d.positive_roots(), &[vec![1]]);
        let w = Weight::fundamental(1, 1);
        assert_eq!(d.inner_product(&w, &w).unwrap(), q(1, 2));
    }

    #[test]
    fn a2_gram_of_fundamental_weights() {
        let d = RootDatum::from_spec_str("A2").unwrap();
        assert_eq!(d.cartan(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(
            d.gram_fw(),
            &[vec![q(2, 3), q(1, 3)], vec![q(1, 3), q(2, 3)]]
        );
        assert_eq!(d.positive_roots().len(), 3);
        let (w1, w2) = (Weight::fundamental(2, 1), Weight::fundamental(2, 2));
        assert_eq!(d.inner_product(&w1, &w2).unwrap(), q(1, 3));
        assert_eq!(d.inner_product(&Weight::zero(2), &w2).unwrap(), q(0, 1));
    }

    #[test]
    fn g2_long_short_ratio() {
        let d = RootDatum::from_spec_str("G2").unwrap();
        assert_eq!(d.positive_roots().len(), 6);
        let s = d.symmetrizers();
        assert_eq!(s[1] / s[0], q(3, 1));
        // highest root 3α_1 + 2α_2
        assert!(d.positive_roots().contains(&vec![3, 2]));
    }

    #[test]
    fn b2_and_c3_conventions() {
        let b2 = RootDatum::from_spec_str("B2").unwrap();
        assert_eq!(b2.cartan(), &[vec![2, -2], vec![-1, 2]]);
        let c3 = RootDatum::from_spec_str("C3").unwrap();
        assert_eq!(c3.cartan()[2], vec![0, -2, 2]);
        assert_eq!(c3.symmetrizers()[2], q(1, 1));
        assert_eq!(c3.symmetrizers()[0], q(1, 2));
    }

    #[test]
    fn products_are_block_diagonal() {
        let d = RootDatum::from_spec_str("A1xA1").unwrap();
        assert_eq!(d.cartan(), &[vec![2, 0], vec![0, 2]]);
        assert_eq!(d.positive_roots().len(), 2);
        assert_eq!(d.spec().to_string(), "A1xA1");
    }

    #[test]
    fn spec_parsing_rejects_out_of_range() {
        assert!(matches!(
            "Z9".parse::<RootSystemSpec>(),
            Err(Error::UnsupportedType { .. })
        ));
        assert!(matches!(
            "C2".parse::<RootSystemSpec>(),
            Err(Error::UnsupportedType { series: 'C', rank: 2 })
        ));
        assert!(matches!(
            "E9".parse::<RootSystemSpec>(),
            Err(Error::UnsupportedType { .. })
        ));
        assert!(matches!("".parse::<RootSystemSpec>(), Err(Error::ParseSpec(_))));
        assert!(matches!("A".parse::<RootSystemSpec>(), Err(Error::ParseSpec(_))));
        assert!(matches!("A1x".parse::<RootSystemSpec>(), Err(Error::ParseSpec(_))));
        assert!(matches!("a2".parse::<RootSystemSpec>(), Err(Error::ParseSpec(_))));
    }

    #[test]
    fn inner_product_dimension_mismatch() {
        let d = RootDatum::from_spec_str("A2").unwrap();
        let err = d
            .inner_product(&Weight::zero(3), &Weight::zero(2))
            .unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, got: 3 });
    }

    #[test]
    fn dominance() {
        let d = RootDatum::from_spec_str("A2").unwrap();
        assert!(d.is_dominant(&Weight::from_integers(&[1, 2])));
        assert!(!d.is_dominant(&Weight::from_integers(&[-1, 0])));
        assert!(d.is_dominant(&Weight::zero(2)));
        assert!(d.is_dominant(&Weight::new(vec![q(1, 2), q(0, 1)])));
        assert!(!Weight::new(vec![q(1, 2), q(0, 1)]).is_dominant_integral());
    }

    #[test]
    fn rational_rank_of_forms() {
        let rows = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert_eq!(rational_rank(&rows), 1);
        let rows = vec![vec![q(1, 1), q(0, 1)], vec![q(1, 2), q(1, 3)]];
        assert_eq!(rational_rank(&rows), 2);
        assert_eq!(rational_rank(&[]), 0);
    }
}
