//! Dense univariate polynomials and truncated power series over a [`Field`].
//! Coefficient vectors are ordered from the constant term up.

use crate::field::Field;

pub fn trim<F: Field>(field: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn degree<F: Field>(field: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|c| !field.is_zero(c))
}

pub fn eval<F: Field>(field: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

pub fn derivative<F: Field>(field: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(&field.from_int(i as i64), c))
        .collect()
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let db = degree(field, b).expect("nonzero divisor");
    let lead_inv = field.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    trim(field, &mut r);
    while let Some(dr) = degree(field, &r) {
        if dr < db {
            break;
        }
        let factor = field.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            r[i + shift] = field.sub(&r[i + shift], &field.mul(&factor, c));
        }
        trim(field, &mut r);
    }
    r
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(field, &mut x);
    trim(field, &mut y);
    while !y.is_empty() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = degree(field, &x) {
        let inv = field.inv(&x[d]).expect("nonzero");
        for c in x.iter_mut() {
            *c = field.mul(c, &inv);
        }
    }
    x
}

/// Coefficients of `p(a + s)` as a polynomial in `s`.
pub fn taylor_shift<F: Field>(field: &F, p: &[F::Elem], a: &F::Elem) -> Vec<F::Elem> {
    // Horner in the shifted variable: q <- q * (s + a) + c.
    let mut q: Vec<F::Elem> = Vec::new();
    for c in p.iter().rev() {
        let mut next = vec![field.zero(); q.len() + 1];
        for (i, qi) in q.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], qi);
            next[i] = field.add(&next[i], &field.mul(qi, a));
        }
        next[0] = field.add(&next[0], c);
        q = next;
    }
    q
}

/// Product truncated to the first `n` coefficients.
pub fn mul_trunc<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    out
}

/// Inverse power series to `n` coefficients; `None` if the constant term is zero.
pub fn series_inverse<F: Field>(field: &F, a: &[F::Elem], n: usize) -> Option<Vec<F::Elem>> {
    let a0_inv = field.inv(a.first()?)?;
    let mut inv = vec![a0_inv.clone()];
    for k in 1..n {
        let mut acc = field.zero();
        for i in 1..=k {
            if let Some(ai) = a.get(i) {
                acc = field.add(&acc, &field.mul(ai, &inv[k - i]));
            }
        }
        inv.push(field.neg(&field.mul(&acc, &a0_inv)));
    }
    Some(inv)
}

/// Square root of the series `q` with prescribed constant term `h0`
/// (`h0^2 = q(0)`), by Newton iteration `h <- (h + q/h) / 2` with doubling
/// precision. Needs characteristic different from 2 and `h0 != 0`.
pub fn hensel_sqrt<F: Field>(
    field: &F,
    q: &[F::Elem],
    h0: F::Elem,
    n: usize,
) -> Option<Vec<F::Elem>> {
    let half = field.inv(&field.from_int(2))?;
    field.inv(&h0)?;
    let mut h = vec![h0];
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let q_over_h = mul_trunc(field, q, &series_inverse(field, &h, prec)?, prec);
        h = (0..prec)
            .map(|i| {
                let hi = h.get(i).cloned().unwrap_or_else(|| field.zero());
                field.mul(&field.add(&hi, &q_over_h[i]), &half)
            })
            .collect();
    }
    h.truncate(n);
    Some(h)
}

/// `g(h(t))` to `n` coefficients, for `h` without constant term.
pub fn compose<F: Field>(field: &F, g: &[F::Elem], h: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); n];
    for c in g.iter().rev() {
        out = mul_trunc(field, &out, h, n);
        out[0] = field.add(&out[0], c);
    }
    out
}

/// Compositional inverse of `h` (with `h(0) = 0`, `h'(0) != 0`) to `n` coefficients.
pub fn revert<F: Field>(field: &F, h: &[F::Elem], n: usize) -> Option<Vec<F::Elem>> {
    let h1_inv = field.inv(h.get(1)?)?;
    // Fixed-point iteration r <- r - (h(r) - t) / h'(0), one coefficient per round.
    let mut r = vec![field.zero(); n];
    if n > 1 {
        r[1] = h1_inv.clone();
    }
    for _ in 2..n {
        let hr = compose(field, h, &r, n);
        for (k, coeff) in hr.iter().enumerate() {
            let target = if k == 1 { field.one() } else { field.zero() };
            let err = field.sub(coeff, &target);
            r[k] = field.sub(&r[k], &field.mul(&err, &h1_inv));
        }
    }
    Some(r)
}
