//! Colength of an ideal of bivariate germs by linear algebra on jets.
//!
//! For a cutoff `T` the quotient `k[x,y] / (I + m^T)` is computed exactly:
//! the space of polynomials of degree `< T` modulo the span of all products
//! `m * g` (`g` a generator, `m` a monomial) truncated below degree `T`.
//! When the dimensions at `T` and `T + 1` agree the ideal contains `m^T`
//! and that dimension is the colength.

use std::collections::HashMap;

use crate::field::Field;

use super::series::{Exp, TruncSeries};
use super::MultiplicityError;

/// Monomial basis of `k[x,y] / (I + m^T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBasis {
    pub cutoff: u32,
    pub basis: Vec<Exp>,
}

impl QuotientBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColengthReport {
    pub colength: usize,
    /// Standard monomials spanning the quotient at the accepted cutoff.
    pub basis: Vec<Exp>,
    pub cutoff: u32,
}

/// Monomials of degree `< cutoff`, lowest degree first. Pivots then sit on
/// the lowest-degree term of each row, as for a local standard basis, and the
/// non-pivot columns are the standard monomials of the local order.
fn column_monomials(cutoff: u32) -> Vec<Exp> {
    let mut cols = Vec::new();
    for d in 0..cutoff {
        for i in (0..=d).rev() {
            cols.push((i, d - i));
        }
    }
    cols
}

pub(crate) fn check_field<F: Field>(field: &F) -> Result<(), MultiplicityError> {
    if field.characteristic() == 2 {
        Err(MultiplicityError::FieldCharTwo)
    } else {
        Ok(())
    }
}

type SparseRow<E> = Vec<(usize, E)>;

/// `x + s * y` on sorted sparse rows.
fn axpy<F: Field>(
    field: &F,
    x: &SparseRow<F::Elem>,
    s: &F::Elem,
    y: &SparseRow<F::Elem>,
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (k, v) = if take_x {
            i += 1;
            (x[i - 1].0, x[i - 1].1.clone())
        } else if take_y {
            j += 1;
            (y[j - 1].0, field.mul(s, &y[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (
                x[i - 1].0,
                field.add(&x[i - 1].1, &field.mul(s, &y[j - 1].1)),
            )
        };
        if !field.is_zero(&v) {
            out.push((k, v));
        }
    }
    out
}

/// Exact quotient at a single cutoff.
pub fn quotient_at_cutoff<F: Field>(
    field: &F,
    gens: &[TruncSeries],
    cutoff: u32,
) -> Result<QuotientBasis, MultiplicityError> {
    check_field(field)?;
    if let Some(g) = gens.iter().find(|g| g.cutoff() < cutoff) {
        return Err(MultiplicityError::InsufficientPrecision {
            series_cutoff: g.cutoff(),
            needed: cutoff,
        });
    }
    let cols = column_monomials(cutoff);
    let col_of: HashMap<Exp, usize> = cols.iter().enumerate().map(|(i, e)| (*e, i)).collect();

    let layer = |k: usize| {
        let (i, j) = cols[k];
        (i + j) as usize
    };

    let mapped: Vec<Vec<(Exp, F::Elem)>> = gens
        .iter()
        .map(|g| {
            g.terms()
                .filter(|((i, j), _)| i + j < cutoff)
                .map(|(e, c)| Ok((*e, field.from_rational(c)?)))
                .filter(|r| !matches!(r, Ok((_, c)) if field.is_zero(c)))
                .collect::<Result<Vec<_>, crate::field::FieldError>>()
        })
        .collect::<Result<_, _>>()?;
    let min_order = mapped
        .iter()
        .filter_map(|t| t.iter().map(|((i, j), _)| i + j).min())
        .min();

    // Echelon form on sparse rows, each sorted by column. A row is reduced
    // only at its leading column, which suffices to find the pivot set.
    // Rows come in order of multiplier degree; reduction only raises a
    // row's leading degree.
    let mut pivots: HashMap<usize, SparseRow<F::Elem>> = HashMap::new();
    let mut pivots_in_layer = vec![0usize; cutoff as usize];
    let mut complete_layer = cutoff;
    for k in 0..cutoff {
        for &(a, b) in cols.iter().filter(|(a, b)| a + b == k) {
            for terms in &mapped {
                let mut row: SparseRow<F::Elem> = terms
                    .iter()
                    .filter(|((i, j), _)| i + j + a + b < cutoff)
                    .map(|((i, j), c)| (col_of[&(i + a, j + b)], c.clone()))
                    .collect();
                row.sort_by_key(|(k, _)| *k);
                while let Some((lead, coeff)) = row.first().cloned() {
                    match pivots.get(&lead) {
                        Some(prow) => row = axpy(field, &row, &field.neg(&coeff), prow),
                        None => {
                            let inv = field.inv(&coeff).expect("nonzero pivot");
                            for (_, x) in row.iter_mut() {
                                *x = field.mul(x, &inv);
                            }
                            pivots.insert(lead, row);
                            pivots_in_layer[layer(lead)] += 1;
                            break;
                        }
                    }
                }
            }
        }
        // If every monomial of degree d leads a member of the ideal, then
        // m^d lies in I + m^T, and rows still to come lead in degree
        // >= k + 1 + min_order, so pivots below such a d are final.
        let Some(o) = min_order else { continue };
        let reach = (k + 1 + o).min(cutoff);
        if let Some(d) = (0..reach).find(|&d| pivots_in_layer[d as usize] == d as usize + 1) {
            complete_layer = d;
            break;
        }
    }
    let mut basis: Vec<Exp> = cols
        .iter()
        .enumerate()
        .filter(|(k, (i, j))| i + j < complete_layer && !pivots.contains_key(k))
        .map(|(_, e)| *e)
        .collect();
    basis.sort_by_key(|(i, j)| (i + j, std::cmp::Reverse(*i)));
    Ok(QuotientBasis { cutoff, basis })
}

/// Colength of the ideal generated by `gens`, accepted once the cutoffs `T`
/// and `T + 1` give the same quotient dimension. Generators must be known to
/// precision `T + 1`.
pub fn colength<F: Field>(
    field: &F,
    gens: &[TruncSeries],
    cutoff: u32,
) -> Result<ColengthReport, MultiplicityError> {
    if cutoff < 2 {
        return Err(MultiplicityError::CutoffTooSmall(cutoff));
    }
    let lower = quotient_at_cutoff(field, gens, cutoff)?;
    let upper = quotient_at_cutoff(field, gens, cutoff + 1)?;
    if lower.dimension() != upper.dimension() {
        return Err(MultiplicityError::UnstableAtCutoff {
            cutoff,
            lower: lower.dimension(),
            upper: upper.dimension(),
        });
    }
    Ok(ColengthReport {
        colength: lower.dimension(),
        basis: lower.basis,
        cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn mono(e: Exp, c: i64, cutoff: u32) -> TruncSeries {
        TruncSeries::monomial(e, q(c), cutoff)
    }

    #[test]
    fn maximal_ideal_has_colength_one() {
        let gens = [mono((0, 1), 1, 10), mono((1, 0), 1, 10)];
        let r = colength(&Rationals, &gens, 4).unwrap();
        assert_eq!(r.colength, 1);
        assert_eq!(r.basis, vec![(0, 0)]);
    }

    #[test]
    fn unit_gives_zero() {
        let gens = [TruncSeries::one(10)];
        assert_eq!(colength(&Rationals, &gens, 3).unwrap().colength, 0);
    }

    #[test]
    fn zero_ideal_is_unstable() {
        let gens = [TruncSeries::zero(10)];
        assert!(matches!(
            colength(&Rationals, &gens, 4),
            Err(MultiplicityError::UnstableAtCutoff {
                lower: 10,
                upper: 15,
                ..
            })
        ));
    }

    #[test]
    fn char_two_is_refused() {
        let gens = [mono((0, 1), 1, 10)];
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(
            colength(&f2, &gens, 4),
            Err(MultiplicityError::FieldCharTwo)
        );
    }

    #[test]
    fn needs_precision_for_next_cutoff() {
        let gens = [mono((0, 1), 1, 4)];
        assert!(matches!(
            colength(&Rationals, &gens, 4),
            Err(MultiplicityError::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn char_three_kills_coefficient_three() {
        // (3u + t^2, t): colength 1 over Q; over F_3 the ideal is (t), not m-primary.
        let gens = [
            TruncSeries::from_terms([((0, 1), q(3)), ((2, 0), q(1))], 10),
            mono((1, 0), 1, 10),
        ];
        assert_eq!(colength(&Rationals, &gens, 5).unwrap().colength, 1);
        let f3 = PrimeField::new(3).unwrap();
        assert!(colength(&f3, &gens, 5).is_err());
    }
}
