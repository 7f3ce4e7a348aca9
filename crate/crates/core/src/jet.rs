//! First-order jets of the canonical differentials of a genus-3 hyperelliptic
//! curve `y^2 = f(x)`, `deg f = 8`.
//!
//! The canonical space is spanned by `dx/y, x dx/y, x^2 dx/y`. At a point `P`
//! each differential is written `g dt` for a local parameter `t`, and the jet
//! matrix records `g(0)` and `g'(0)`. It has rank 2 except at the branch
//! points of `x`, which are the Weierstrass points.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldError, QuadExt};
use crate::upoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JetError {
    #[error("hyperelliptic models need characteristic different from 2")]
    CharTwo,
    #[error("f must have degree exactly 8, got {0:?}")]
    BadDegree(Option<usize>),
    #[error("f is not squarefree")]
    NotSquarefree,
    #[error("point ({x}, {y}) is not on the curve")]
    PointNotOnCurve { x: String, y: String },
    #[error("reparametrization must have nonzero linear coefficient")]
    DegenerateParameter,
    #[error("point enumeration needs a finite field")]
    InfiniteField,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `y^2 = f(x)` with `f` squarefree of degree 8.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperellipticCurve<F: Field> {
    field: F,
    f: Vec<F::Elem>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint<F: Field> {
    pub x: F::Elem,
    pub y: F::Elem,
}

impl<F: Field> CurvePoint<F> {
    pub fn new(x: F::Elem, y: F::Elem) -> Self {
        Self { x, y }
    }

    /// The ramification point `(a, 0)`.
    pub fn branch(field: &F, a: F::Elem) -> Self {
        Self {
            x: a,
            y: field.zero(),
        }
    }

    pub fn is_branch(&self, field: &F) -> bool {
        field.is_zero(&self.y)
    }

    /// Image under the hyperelliptic involution `y -> -y`.
    pub fn conjugate(&self, field: &F) -> Self {
        Self {
            x: self.x.clone(),
            y: field.neg(&self.y),
        }
    }

    pub fn render(&self, field: &F) -> String {
        format!("({}, {})", field.format(&self.x), field.format(&self.y))
    }
}

impl<F: Field> HyperellipticCurve<F> {
    /// `coeffs` from the constant term up.
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Result<Self, JetError> {
        if field.characteristic() == 2 {
            return Err(JetError::CharTwo);
        }
        let mut f = coeffs;
        upoly::trim(&field, &mut f);
        let deg = upoly::degree(&field, &f);
        if deg != Some(8) {
            return Err(JetError::BadDegree(deg));
        }
        let g = upoly::gcd(&field, &f, &upoly::derivative(&field, &f));
        if g.len() != 1 {
            return Err(JetError::NotSquarefree);
        }
        Ok(Self { field, f })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coefficients(&self) -> &[F::Elem] {
        &self.f
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        upoly::eval(&self.field, &self.f, x)
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        self.field.mul(&p.y, &p.y) == self.eval(&p.x)
    }

    fn check_point(&self, p: &CurvePoint<F>) -> Result<(), JetError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(JetError::PointNotOnCurve {
                x: self.field.format(&p.x),
                y: self.field.format(&p.y),
            })
        }
    }

    /// The same curve over a quadratic extension of its field.
    pub fn base_change(&self, ext: &QuadExt<F>) -> HyperellipticCurve<QuadExt<F>> {
        HyperellipticCurve {
            field: ext.clone(),
            f: self.f.iter().map(|c| ext.embed(c)).collect(),
        }
    }

    /// Every affine point over a finite field.
    pub fn affine_points(&self) -> Result<Vec<CurvePoint<F>>, JetError> {
        let k = &self.field;
        let elems = k.elements().ok_or(JetError::InfiniteField)?;
        let mut out = Vec::new();
        for x in elems {
            let fx = self.eval(&x);
            if let Some(y) = k.sqrt(&fx) {
                out.push(CurvePoint::new(x.clone(), y.clone()));
                if !k.is_zero(&y) {
                    out.push(CurvePoint::new(x, k.neg(&y)));
                }
            }
        }
        Ok(out)
    }
}

/// 2x3 matrix over a field: row 0 holds values, row 1 first derivatives of the
/// three canonical differentials in a local parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct JetMatrix<E: Field> {
    pub field: E,
    pub rows: [[E::Elem; 3]; 2],
}

impl<E: Field> JetMatrix<E> {
    pub fn rank(&self) -> usize {
        let k = &self.field;
        let r = &self.rows;
        let minor =
            |a: usize, b: usize| k.sub(&k.mul(&r[0][a], &r[1][b]), &k.mul(&r[0][b], &r[1][a]));
        if [(0, 1), (0, 2), (1, 2)]
            .iter()
            .any(|&(a, b)| !k.is_zero(&minor(a, b)))
        {
            2
        } else if r.iter().flatten().any(|c| !k.is_zero(c)) {
            1
        } else {
            0
        }
    }
}

impl<E: Field> fmt::Display for JetMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| self.field.format(c)).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A jet matrix computed either over the curve's field or, at a branch point
/// whose `f'(a)` is not a square there, over the extension by its root.
#[derive(Debug, Clone, PartialEq)]
pub enum Jet<F: Field> {
    Base(JetMatrix<F>),
    Extended(JetMatrix<QuadExt<F>>),
}

impl<F: Field> Jet<F> {
    pub fn rank(&self) -> usize {
        match self {
            Jet::Base(m) => m.rank(),
            Jet::Extended(m) => m.rank(),
        }
    }
}

impl<F: Field> fmt::Display for Jet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Jet::Base(m) => write!(f, "{m}"),
            Jet::Extended(m) => write!(f, "{m}"),
        }
    }
}

/// Working precision of local expansions; jets only read the first two
/// coefficients but reparametrization needs one more.
const EXPANSION_PRECISION: usize = 4;

/// Local expansions of the three differentials as series `g_k(t)` at a branch
/// point `(a, 0)`, with `x = a + t^2`, `y = t h(t)`, `h^2 = f(a + t^2) / t^2`,
/// inside a field `E` that contains `h(0) = sqrt(f'(a))`.
fn branch_expansions<E: Field>(
    field: &E,
    f: &[E::Elem],
    a: &E::Elem,
    h0: E::Elem,
    n: usize,
) -> Result<[Vec<E::Elem>; 3], JetError> {
    let shifted = upoly::taylor_shift(field, f, a);
    // f(a + t^2) / t^2 = sum_{i >= 1} b_i t^{2(i-1)}
    let mut q = vec![field.zero(); n];
    for (i, b) in shifted.iter().enumerate().skip(1) {
        let pos = 2 * (i - 1);
        if pos < n {
            q[pos] = b.clone();
        }
    }
    let h = upoly::hensel_sqrt(field, &q, h0, n).ok_or(JetError::CharTwo)?;
    let h_inv = upoly::series_inverse(field, &h, n).expect("h(0) is nonzero");
    // dx / y = 2t dt / (t h) = (2 / h) dt
    let mut x_series = vec![field.zero(); n];
    x_series[0] = a.clone();
    if n > 2 {
        x_series[2] = field.one();
    }
    let two = field.from_int(2);
    let base: Vec<E::Elem> = h_inv.iter().map(|c| field.mul(c, &two)).collect();
    let g1 = upoly::mul_trunc(field, &base, &x_series, n);
    let g2 = upoly::mul_trunc(field, &g1, &x_series, n);
    Ok([base, g1, g2])
}

/// Local expansions at an affine point with `y0 != 0`, parameter `s = x - x0`.
fn affine_expansions<F: Field>(
    field: &F,
    f: &[F::Elem],
    p: &CurvePoint<F>,
    n: usize,
) -> Result<[Vec<F::Elem>; 3], JetError> {
    let shifted = upoly::taylor_shift(field, f, &p.x);
    let y = upoly::hensel_sqrt(field, &shifted, p.y.clone(), n).ok_or(JetError::CharTwo)?;
    let y_inv = upoly::series_inverse(field, &y, n).expect("y0 is nonzero");
    let x_series = vec![p.x.clone(), field.one()];
    let g1 = upoly::mul_trunc(field, &y_inv, &x_series, n);
    let g2 = upoly::mul_trunc(field, &g1, &x_series, n);
    Ok([y_inv, g1, g2])
}

/// Rewrites `g(t) dt` in the parameter `t' = lin*t + quad*t^2` and keeps the
/// first two coefficients.
fn reparametrize<E: Field>(
    field: &E,
    series: &[Vec<E::Elem>; 3],
    lin: &E::Elem,
    quad: &E::Elem,
) -> Result<[[E::Elem; 3]; 2], JetError> {
    let n = EXPANSION_PRECISION;
    let forward = vec![field.zero(), lin.clone(), quad.clone()];
    let back = upoly::revert(field, &forward, n).ok_or(JetError::DegenerateParameter)?;
    let back_prime = upoly::derivative(field, &back);
    let transformed: Vec<Vec<E::Elem>> = series
        .iter()
        .map(|g| {
            let composed = upoly::compose(field, g, &back, n);
            upoly::mul_trunc(field, &composed, &back_prime, 2)
        })
        .collect();
    Ok(jets_from_series(&transformed))
}

fn jets_from_series<T: Clone>(series: &[Vec<T>]) -> [[T; 3]; 2] {
    let pick = |k: usize| -> [T; 3] {
        [
            series[0][k].clone(),
            series[1][k].clone(),
            series[2][k].clone(),
        ]
    };
    [pick(0), pick(1)]
}

/// Closed-form jets at an affine point with `y0 != 0`:
/// `x^k / y` and its `x`-derivative `k x^(k-1)/y - x^k f'(x) / (2 y^3)`.
fn affine_closed_form<F: Field>(c: &HyperellipticCurve<F>, p: &CurvePoint<F>) -> JetMatrix<F> {
    let k = &c.field;
    let y_inv = k.inv(&p.y).expect("affine point off the branch locus");
    let fp = upoly::eval(k, &upoly::derivative(k, &c.f), &p.x);
    let two = k.from_int(2);
    let y3_inv = k.mul(&y_inv, &k.mul(&y_inv, &y_inv));
    let correction = k.div(&k.mul(&fp, &y3_inv), &two).expect("char != 2");
    let values: [F::Elem; 3] = [0u64, 1, 2].map(|e| k.mul(&k.pow(&p.x, e), &y_inv));
    let derivs: [F::Elem; 3] = [0u64, 1, 2].map(|e| {
        let leading = if e == 0 {
            k.zero()
        } else {
            k.mul(&k.from_int(e as i64), &k.mul(&k.pow(&p.x, e - 1), &y_inv))
        };
        k.sub(&leading, &k.mul(&k.pow(&p.x, e), &correction))
    });
    JetMatrix {
        field: k.clone(),
        rows: [values, derivs],
    }
}

enum BranchField<F: Field> {
    Base(F::Elem),
    Extended(QuadExt<F>),
}

fn branch_field<F: Field>(
    c: &HyperellipticCurve<F>,
    a: &F::Elem,
) -> Result<BranchField<F>, JetError> {
    let k = &c.field;
    let fpa = upoly::eval(k, &upoly::derivative(k, &c.f), a);
    Ok(match k.sqrt(&fpa) {
        Some(r) => BranchField::Base(r),
        None => BranchField::Extended(QuadExt::new(k.clone(), fpa)?),
    })
}

fn jet_in_parameter<F: Field>(
    c: &HyperellipticCurve<F>,
    p: &CurvePoint<F>,
    reparam: Option<(&F::Elem, &F::Elem)>,
) -> Result<Jet<F>, JetError> {
    c.check_point(p)?;
    let k = &c.field;
    let n = EXPANSION_PRECISION;
    if !p.is_branch(k) {
        return Ok(Jet::Base(match reparam {
            None => affine_closed_form(c, p),
            Some((lin, quad)) => JetMatrix {
                field: k.clone(),
                rows: reparametrize(k, &affine_expansions(k, &c.f, p, n)?, lin, quad)?,
            },
        }));
    }
    match branch_field(c, &p.x)? {
        BranchField::Base(h0) => {
            let series = branch_expansions(k, &c.f, &p.x, h0, n)?;
            let rows = match reparam {
                None => jets_from_series(&series),
                Some((lin, quad)) => reparametrize(k, &series, lin, quad)?,
            };
            Ok(Jet::Base(JetMatrix {
                field: k.clone(),
                rows,
            }))
        }
        BranchField::Extended(ext) => {
            let f_ext: Vec<_> = c.f.iter().map(|x| ext.embed(x)).collect();
            let series = branch_expansions(&ext, &f_ext, &ext.embed(&p.x), ext.generator(), n)?;
            let rows = match reparam {
                None => jets_from_series(&series),
                Some((lin, quad)) => {
                    reparametrize(&ext, &series, &ext.embed(lin), &ext.embed(quad))?
                }
            };
            Ok(Jet::Extended(JetMatrix { field: ext, rows }))
        }
    }
}

/// Jets of the canonical basis at `p`, in the parameter `x - x0` at ordinary
/// points and `t` with `x = a + t^2` at branch points.
pub fn jet_matrix<F: Field>(
    c: &HyperellipticCurve<F>,
    p: &CurvePoint<F>,
) -> Result<Jet<F>, JetError> {
    jet_in_parameter(c, p, None)
}

/// Jets in the parameter `t' = lin*t + quad*t^2`, `t` the default parameter.
pub fn jet_matrix_reparametrized<F: Field>(
    c: &HyperellipticCurve<F>,
    p: &CurvePoint<F>,
    lin: &F::Elem,
    quad: &F::Elem,
) -> Result<Jet<F>, JetError> {
    if c.field.is_zero(lin) {
        return Err(JetError::DegenerateParameter);
    }
    jet_in_parameter(c, p, Some((lin, quad)))
}

/// Rank of the jet evaluation map at `p`; at most 1 exactly at branch points.
pub fn degeneracy_rank<F: Field>(
    c: &HyperellipticCurve<F>,
    p: &CurvePoint<F>,
) -> Result<usize, JetError> {
    let rank = jet_matrix(c, p)?.rank();
    assert!(
        rank > 0,
        "first jet row cannot vanish on a squarefree model"
    );
    Ok(rank)
}

pub fn weierstrass_scan<F: Field>(
    c: &HyperellipticCurve<F>,
    candidates: &[CurvePoint<F>],
) -> Result<Vec<(CurvePoint<F>, usize)>, JetError> {
    candidates
        .iter()
        .map(|p| Ok((p.clone(), degeneracy_rank(c, p)?)))
        .collect()
}

/// Rank at a point with abscissa `x0`, choosing `y0` as a square root of
/// `f(x0)` in the curve's field or, failing that, in the quadratic extension
/// it generates.
pub fn rank_at_abscissa<F: Field>(
    c: &HyperellipticCurve<F>,
    x0: &F::Elem,
) -> Result<usize, JetError> {
    let k = &c.field;
    let fx = c.eval(x0);
    match k.sqrt(&fx) {
        Some(y0) => degeneracy_rank(c, &CurvePoint::new(x0.clone(), y0)),
        None => {
            let ext = QuadExt::new(k.clone(), fx)?;
            let lifted = c.base_change(&ext);
            degeneracy_rank(&lifted, &CurvePoint::new(ext.embed(x0), ext.generator()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// x(x-1)...(x-7), expanded by repeated multiplication.
    fn product_curve() -> HyperellipticCurve<Rationals> {
        let mut f = vec![q(1)];
        for r in 0..8 {
            let mut next = vec![q(0); f.len() + 1];
            for (i, c) in f.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * q(r);
            }
            f = next;
        }
        HyperellipticCurve::new(Rationals, f).unwrap()
    }

    #[test]
    fn rejects_bad_models() {
        let mut f = vec![q(0); 9];
        f[8] = q(1);
        assert_eq!(
            HyperellipticCurve::new(Rationals, f).unwrap_err(),
            JetError::NotSquarefree
        );
        assert!(matches!(
            HyperellipticCurve::new(Rationals, vec![q(1), q(0), q(1)]),
            Err(JetError::BadDegree(Some(2)))
        ));
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(
            HyperellipticCurve::new(f2, vec![1, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap_err(),
            JetError::CharTwo
        );
    }

    #[test]
    fn branch_point_jets_have_zero_derivative_row() {
        let c = product_curve();
        let p = CurvePoint::branch(&Rationals, q(0));
        let jet = jet_matrix(&c, &p).unwrap();
        match &jet {
            Jet::Base(m) => assert!(m.rows[1].iter().all(|x| x == &q(0))),
            Jet::Extended(m) => {
                let k = &m.field;
                assert!(m.rows[1].iter().all(|x| k.is_zero(x)));
            }
        }
        assert_eq!(jet.rank(), 1);
    }

    #[test]
    fn off_curve_point_rejected() {
        let c = product_curve();
        let p = CurvePoint::new(q(9), q(1));
        assert!(matches!(
            degeneracy_rank(&c, &p),
            Err(JetError::PointNotOnCurve { .. })
        ));
    }

    #[test]
    fn ordinary_point_over_extension_has_rank_two() {
        let c = product_curve();
        // f(9) = 9!/1 = 362880 is not a rational square.
        assert_eq!(c.eval(&q(9)), q(362880));
        let ext = QuadExt::new(Rationals, q(362880)).unwrap();
        let lifted = c.base_change(&ext);
        let p = CurvePoint::new(ext.embed(&q(9)), ext.generator());
        let Jet::Base(m) = jet_matrix(&lifted, &p).unwrap() else {
            panic!("ordinary points stay in the base field");
        };
        // Minor of the first two columns is 1/y^2.
        let k = &m.field;
        let minor = k.sub(
            &k.mul(&m.rows[0][0], &m.rows[1][1]),
            &k.mul(&m.rows[0][1], &m.rows[1][0]),
        );
        assert_eq!(minor, k.inv(&k.from_int(362880)).unwrap());
        assert_eq!(m.rank(), 2);
        assert_eq!(rank_at_abscissa(&c, &q(9)).unwrap(), 2);
    }

    #[test]
    fn closed_form_matches_series_at_ordinary_points() {
        let f = PrimeField::new(101).unwrap();
        let mut coeffs = vec![3u64, 1, 4, 1, 5, 9, 2, 6, 1];
        coeffs[0] = 7;
        let c = HyperellipticCurve::new(f, coeffs).unwrap();
        let one = f.one();
        let zero = f.zero();
        let mut checked = 0;
        for p in c.affine_points().unwrap() {
            if p.is_branch(&f) {
                continue;
            }
            let Jet::Base(closed) = jet_matrix(&c, &p).unwrap() else {
                unreachable!()
            };
            let Jet::Base(series) = jet_matrix_reparametrized(&c, &p, &one, &zero).unwrap() else {
                unreachable!()
            };
            assert_eq!(closed, series);
            checked += 1;
        }
        assert!(checked > 10);
    }

    #[test]
    fn hensel_lift_to_order_six() {
        let c = product_curve();
        // a = 1: f'(1) = -(1)(-1)(-2)...(-6)... take the extension route directly.
        let k = Rationals;
        let fpa = upoly::eval(&k, &upoly::derivative(&k, c.coefficients()), &q(1));
        let ext = QuadExt::new(k, fpa.clone()).unwrap();
        let f_ext: Vec<_> = c.coefficients().iter().map(|x| ext.embed(x)).collect();
        let shifted = upoly::taylor_shift(&ext, &f_ext, &ext.embed(&q(1)));
        let n = 7;
        let mut target = vec![ext.zero(); n];
        for (i, b) in shifted.iter().enumerate().skip(1) {
            if 2 * (i - 1) < n {
                target[2 * (i - 1)] = b.clone();
            }
        }
        let h = upoly::hensel_sqrt(&ext, &target, ext.generator(), n).unwrap();
        assert_eq!(upoly::mul_trunc(&ext, &h, &h, n), target);
    }
}
