//! Total Chern classes as truncated series in a [`Ring`], with duals, Whitney
//! products, inverses, and the Porteous degeneracy class.

use thiserror::Error;

use crate::graded_algebra::{AlgebraError, ChowClass, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("degree-0 term of a Chern series must be 1, got {0}")]
    NonUnitLeadingTerm(String),
    #[error("c_{index} is not homogeneous of degree {index}: {class}")]
    Inhomogeneous { index: usize, class: String },
    #[error("bad ranks for a degeneracy locus: need 0 <= k < min(e, f), got e={e}, f={f}, k={k}")]
    BadRanks { e: u32, f: u32, k: u32 },
    #[error("ring truncation {truncation} is below the expected codimension {codim}")]
    TruncationTooSmall { truncation: u32, codim: u32 },
}

/// `c_0 + c_1 + ... + c_T` with `c_0 = 1` and `c_i` homogeneous of degree `i`.
///
/// The rank is bookkeeping only and may be negative for virtual differences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernSeries {
    rank: i64,
    parts: Vec<ChowClass>,
}

impl ChernSeries {
    /// Builds a series from `c_1, c_2, ...`; missing parts are zero and parts
    /// beyond the truncation are dropped.
    pub fn new(ring: &Ring, rank: i64, higher: &[ChowClass]) -> Result<Self, ChernError> {
        let t = ring.truncation() as usize;
        let mut parts = vec![ring.one()];
        for i in 1..=t {
            let c = match higher.get(i - 1) {
                Some(c) => {
                    if c.ring() != ring {
                        return Err(AlgebraError::RingMismatch.into());
                    }
                    c.normalize()
                }
                None => ring.zero(),
            };
            if !c.is_homogeneous_of_degree(i as u32) {
                return Err(ChernError::Inhomogeneous {
                    index: i,
                    class: c.to_string(),
                });
            }
            parts.push(c);
        }
        Ok(Self { rank, parts })
    }

    /// Splits a total class into graded pieces.
    pub fn from_total(rank: i64, total: &ChowClass) -> Result<Self, ChernError> {
        let ring = total.ring();
        let total = total.normalize();
        let c0 = total.graded_part(0)?;
        if c0 != ring.one() {
            return Err(ChernError::NonUnitLeadingTerm(c0.to_string()));
        }
        let higher = (1..=ring.truncation())
            .map(|d| total.graded_part(d))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, rank, &higher)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::new(ring, 0, &[]).expect("unit series")
    }

    pub fn line_bundle(c1: &ChowClass) -> Result<Self, ChernError> {
        Self::new(c1.ring(), 1, std::slice::from_ref(c1))
    }

    pub fn ring(&self) -> &Ring {
        self.parts[0].ring()
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn truncation(&self) -> u32 {
        (self.parts.len() - 1) as u32
    }

    /// `c_i`, zero above the truncation and for negative indices.
    pub fn c(&self, i: i64) -> ChowClass {
        if i < 0 {
            return self.ring().zero();
        }
        self.parts
            .get(i as usize)
            .cloned()
            .unwrap_or_else(|| self.ring().zero())
    }

    pub fn parts(&self) -> &[ChowClass] {
        &self.parts
    }

    pub fn total(&self) -> ChowClass {
        self.parts
            .iter()
            .fold(self.ring().zero(), |acc, c| &acc + c)
    }

    pub fn dual(&self) -> Self {
        Self {
            rank: self.rank,
            parts: self
                .parts
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        }
    }

    /// Cauchy product of the two series.
    pub fn whitney(&self, other: &Self) -> Result<Self, ChernError> {
        if self.ring() != other.ring() {
            return Err(AlgebraError::RingMismatch.into());
        }
        let t = self.parts.len();
        let parts = (0..t)
            .map(|n| {
                (0..=n).try_fold(self.ring().zero(), |acc, i| {
                    acc.try_add(&self.parts[i].try_mul(&other.parts[n - i])?)
                })
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(Self {
            rank: self.rank + other.rank,
            parts,
        })
    }

    /// Multiplicative inverse: `d_0 = 1`, `d_n = -sum_{i=1..n} c_i d_{n-i}`.
    pub fn inverse(&self) -> Self {
        let mut inv: Vec<ChowClass> = vec![self.ring().one()];
        for n in 1..self.parts.len() {
            let mut acc = self.ring().zero();
            for i in 1..=n {
                acc = &acc + &(&self.parts[i] * &inv[n - i]);
            }
            inv.push(acc.neg());
        }
        Self {
            rank: -self.rank,
            parts: inv,
        }
    }

    /// The series of the virtual difference `self - other`.
    pub fn quotient(&self, other: &Self) -> Result<Self, ChernError> {
        self.whitney(&other.inverse())
    }
}

/// Series of a bundle sitting in `0 -> sub -> E -> quot -> 0`.
pub fn chern_of_extension(
    sub: &ChernSeries,
    quot: &ChernSeries,
) -> Result<ChernSeries, ChernError> {
    sub.whitney(quot)
}

fn determinant(m: &[Vec<ChowClass>], ring: &Ring) -> ChowClass {
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = ring.zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<ChowClass>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, c)| c.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(&minor, ring);
                acc = if col % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Class of the locus where a map `E -> F` of ranks `e`, `f` has rank at most
/// `k`: the `(e-k) x (e-k)` determinant of `c(F - E)` with entries
/// `c_{(f-k)+j-i}`. Valid when the locus has the expected codimension
/// `(e-k)(f-k)`.
pub fn porteous(
    c_e: &ChernSeries,
    c_f: &ChernSeries,
    e: u32,
    f: u32,
    k: u32,
) -> Result<ChowClass, ChernError> {
    if k >= e.min(f) {
        return Err(ChernError::BadRanks { e, f, k });
    }
    let ring = c_e.ring();
    let codim = (e - k) * (f - k);
    if ring.truncation() < codim {
        return Err(ChernError::TruncationTooSmall {
            truncation: ring.truncation(),
            codim,
        });
    }
    let virt = c_f.quotient(c_e)?;
    let size = (e - k) as i64;
    let offset = (f - k) as i64;
    let matrix: Vec<Vec<ChowClass>> = (0..size)
        .map(|i| (0..size).map(|j| virt.c(offset + j - i)).collect())
        .collect();
    Ok(determinant(&matrix, ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_algebra::Generator;

    fn free_ring() -> Ring {
        Ring::new(
            vec![
                Generator::new("e1", 1),
                Generator::new("e2", 2),
                Generator::new("f1", 1),
                Generator::new("f2", 2),
            ],
            vec![],
            2,
        )
        .unwrap()
    }

    fn bundles(r: &Ring) -> (ChernSeries, ChernSeries) {
        let g = |n: &str| r.generator(n).unwrap();
        (
            ChernSeries::new(r, 3, &[g("e1"), g("e2")]).unwrap(),
            ChernSeries::new(r, 2, &[g("f1"), g("f2")]).unwrap(),
        )
    }

    #[test]
    fn dual_flips_odd_parts() {
        let r = free_ring();
        let (e, _) = bundles(&r);
        let d = e.dual();
        assert_eq!(d.c(1), r.generator("e1").unwrap().neg());
        assert_eq!(d.c(2), r.generator("e2").unwrap());
        assert_eq!(d.dual(), e);
        assert_eq!(ChernSeries::one(&r).dual(), ChernSeries::one(&r));
    }

    #[test]
    fn inverse_matches_hand_expansion() {
        let r = free_ring();
        let (_, f) = bundles(&r);
        // inverse(1 - c1 + c2) = 1 + c1 + (c1^2 - c2)
        let inv = f.dual().inverse();
        let f1 = r.generator("f1").unwrap();
        let f2 = r.generator("f2").unwrap();
        assert_eq!(inv.c(1), f1);
        assert_eq!(inv.c(2), &(&f1 * &f1) - &f2);
        assert_eq!(f.whitney(&f.inverse()).unwrap(), ChernSeries::one(&r));
        assert_eq!(
            ChernSeries::one(&r).inverse().parts(),
            ChernSeries::one(&r).parts()
        );
    }

    #[test]
    fn quotient_degree_two_is_four_term_expansion() {
        let r = free_ring();
        let (e, f) = bundles(&r);
        let q = e.dual().quotient(&f.dual()).unwrap();
        let expected = r
            .class(&[
                (1, &["e2"]),
                (-1, &["e1", "f1"]),
                (1, &["f1", "f1"]),
                (-1, &["f2"]),
            ])
            .unwrap();
        assert_eq!(q.c(2), expected);
        assert_eq!(
            e.quotient(&e).unwrap().parts(),
            ChernSeries::one(&r).parts()
        );
        assert_eq!(e.quotient(&ChernSeries::one(&r)).unwrap(), e);
    }

    #[test]
    fn porteous_maximal_minor_case_matches_quotient() {
        let r = free_ring();
        let (e, f) = bundles(&r);
        let det = porteous(&e, &f, 3, 2, 1).unwrap();
        let via_quotient = e.dual().quotient(&f.dual()).unwrap().c(2);
        assert_eq!(det, via_quotient);
    }

    #[test]
    fn porteous_line_bundles() {
        let r = free_ring();
        let e1 = r.generator("e1").unwrap();
        let f1 = r.generator("f1").unwrap();
        let e = ChernSeries::line_bundle(&e1).unwrap();
        let f = ChernSeries::line_bundle(&f1).unwrap();
        assert_eq!(porteous(&e, &f, 1, 1, 0).unwrap(), &f1 - &e1);
    }

    #[test]
    fn porteous_rejects_bad_input() {
        let r = free_ring();
        let (e, f) = bundles(&r);
        assert!(matches!(
            porteous(&e, &f, 3, 2, 2),
            Err(ChernError::BadRanks { .. })
        ));
        assert!(matches!(
            porteous(&e, &f, 3, 2, 0),
            Err(ChernError::TruncationTooSmall {
                truncation: 2,
                codim: 6
            })
        ));
    }

    #[test]
    fn from_total_requires_unit() {
        let r = free_ring();
        let e1 = r.generator("e1").unwrap();
        assert!(matches!(
            ChernSeries::from_total(1, &(&e1 + &r.int(2))),
            Err(ChernError::NonUnitLeadingTerm(_))
        ));
        let s = ChernSeries::from_total(1, &(&e1 + &r.one())).unwrap();
        assert_eq!(s.c(1), e1);
        assert_eq!(s.total(), &e1 + &r.one());
    }

    #[test]
    fn extension_is_symmetric() {
        let r = free_ring();
        let a = ChernSeries::line_bundle(&r.generator("e1").unwrap()).unwrap();
        let b = ChernSeries::line_bundle(&r.generator("f1").unwrap()).unwrap();
        assert_eq!(
            chern_of_extension(&a, &b).unwrap(),
            chern_of_extension(&b, &a).unwrap()
        );
        let triv = ChernSeries::one(&r);
        assert_eq!(chern_of_extension(&triv, &b).unwrap().parts(), b.parts());
    }
}
