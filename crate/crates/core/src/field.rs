//! Exact coefficient fields: the rationals, prime fields and formal quadratic
//! extensions of either.
//!
//! Fields are context objects: elements are plain values and every operation
//! goes through the field, so a prime field can carry its modulus at runtime
//! and extensions can be stacked.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("quadratic extension needs characteristic different from 2")]
    CharTwo,
    #[error("{0} is a square in the base field; adjoining its root does not give a field")]
    SquareRadicand(String),
    #[error("rational {0} has a denominator that vanishes in characteristic {1}")]
    DenominatorVanishes(String, u64),
}

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Zero for the rationals.
    fn characteristic(&self) -> u64;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, FieldError>;
    /// A square root inside this field, when one exists.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    /// All elements, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers always embed")
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|b_inv| self.mul(a, &b_inv))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, FieldError> {
        Ok(q.clone())
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        rational_sqrt(a)
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// The prime field F_p for a prime p below 2^32.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        n.mod_floor(&m).to_u64().expect("reduced residue fits")
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn powmod(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        acc
    }

    // Tonelli-Shanks.
    fn sqrt_mod(&self, a: u64) -> Option<u64> {
        let p = self.p;
        if a == 0 {
            return Some(0);
        }
        if p == 2 {
            return Some(a);
        }
        if self.powmod(a, (p - 1) / 2) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2u64;
        while self.powmod(z, (p - 1) / 2) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.powmod(z, q);
        let mut t = self.powmod(a, q);
        let mut r = self.powmod(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mulmod(t2, t2);
                i += 1;
            }
            let b = self.powmod(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mulmod(b, b);
            t = self.mulmod(t, c);
            r = self.mulmod(r, b);
        }
        Some(r)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.powmod(*a, self.p - 2))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64, FieldError> {
        let num = self.reduce_bigint(q.numer());
        let den = self.reduce_bigint(q.denom());
        self.inv(&den)
            .map(|d| self.mulmod(num, d))
            .ok_or_else(|| FieldError::DenominatorVanishes(q.to_string(), self.p))
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        self.sqrt_mod(*a)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
}

/// `base(s)` with `s^2 = radicand`, the radicand a non-square of the base.
/// Elements are pairs `(u, v)` standing for `u + v*s`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadExt<F: Field> {
    base: F,
    radicand: F::Elem,
}

impl<F: Field> QuadExt<F> {
    pub fn new(base: F, radicand: F::Elem) -> Result<Self, FieldError> {
        if base.characteristic() == 2 {
            return Err(FieldError::CharTwo);
        }
        if base.sqrt(&radicand).is_some() {
            return Err(FieldError::SquareRadicand(base.format(&radicand)));
        }
        Ok(Self { base, radicand })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn radicand(&self) -> &F::Elem {
        &self.radicand
    }

    pub fn embed(&self, a: &F::Elem) -> (F::Elem, F::Elem) {
        (a.clone(), self.base.zero())
    }

    /// The adjoined root `s`.
    pub fn generator(&self) -> (F::Elem, F::Elem) {
        (self.base.zero(), self.base.one())
    }

    pub fn norm(&self, a: &(F::Elem, F::Elem)) -> F::Elem {
        let b = &self.base;
        b.sub(
            &b.mul(&a.0, &a.0),
            &b.mul(&self.radicand, &b.mul(&a.1, &a.1)),
        )
    }
}

impl<F: Field> Field for QuadExt<F> {
    type Elem = (F::Elem, F::Elem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        let uu = k.mul(&a.0, &b.0);
        let vv = k.mul(&a.1, &b.1);
        (
            k.add(&uu, &k.mul(&self.radicand, &vv)),
            k.add(&k.mul(&a.0, &b.1), &k.mul(&a.1, &b.0)),
        )
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let n_inv = self.base.inv(&self.norm(a))?;
        Some((
            self.base.mul(&a.0, &n_inv),
            self.base.neg(&self.base.mul(&a.1, &n_inv)),
        ))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, FieldError> {
        Ok(self.embed(&self.base.from_rational(q)?))
    }
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let k = &self.base;
        let (u, v) = a;
        if k.is_zero(v) {
            if let Some(r) = k.sqrt(u) {
                return Some(self.embed(&r));
            }
            // u = d * w^2 gives sqrt(u) = w*s.
            let w = k.sqrt(&k.div(u, &self.radicand)?)?;
            return Some((k.zero(), w));
        }
        // (x + y s)^2 = u + v s  <=>  x^2 + d y^2 = u, 2xy = v.
        let n = k.sqrt(&self.norm(a))?;
        let two = k.from_int(2);
        for root in [n.clone(), k.neg(&n)] {
            let x2 = k.div(&k.add(u, &root), &two)?;
            if let Some(x) = k.sqrt(&x2) {
                if k.is_zero(&x) {
                    continue;
                }
                let y = k.div(v, &k.mul(&two, &x))?;
                return Some((x, y));
            }
        }
        None
    }
    fn format(&self, a: &Self::Elem) -> String {
        let k = &self.base;
        match (k.is_zero(&a.0), k.is_zero(&a.1)) {
            (_, true) => k.format(&a.0),
            (true, false) => format!("({})*w", k.format(&a.1)),
            (false, false) => format!("{} + ({})*w", k.format(&a.0), k.format(&a.1)),
        }
    }
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let base = self.base.elements()?;
        Some(
            base.iter()
                .flat_map(|u| base.iter().map(move |v| (u.clone(), v.clone())))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(101).is_ok());
    }

    #[test]
    fn prime_field_rationals_reduce() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.from_rational(&q(1, 2)).unwrap(), 3);
        assert_eq!(f.from_rational(&q(-3, 1)).unwrap(), 2);
        assert!(f.from_rational(&q(1, 5)).is_err());
    }

    #[test]
    fn tonelli_shanks_finds_every_square() {
        for p in [3u64, 5, 13, 17, 101, 257] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p {
                let sq = f.mul(&a, &a);
                let r = f.sqrt(&sq).expect("square");
                assert_eq!(f.mul(&r, &r), sq);
            }
            let squares = (1..p).filter(|a| f.sqrt(a).is_some()).count() as u64;
            assert_eq!(squares, (p - 1) / 2);
        }
    }

    #[test]
    fn rational_sqrt_exact() {
        assert_eq!(Rationals.sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(Rationals.sqrt(&q(2, 1)), None);
        assert_eq!(Rationals.sqrt(&q(-1, 1)), None);
    }

    #[test]
    fn quadratic_extension_arithmetic() {
        let k = QuadExt::new(Rationals, q(2, 1)).unwrap();
        let s = k.generator();
        assert_eq!(k.mul(&s, &s), k.from_int(2));
        let a = (q(1, 1), q(3, 1));
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
        assert!(QuadExt::new(Rationals, q(4, 1)).is_err());
    }

    #[test]
    fn quadratic_extension_sqrt() {
        let k = QuadExt::new(Rationals, q(2, 1)).unwrap();
        // (1 + s)^2 = 3 + 2s
        let a = (q(3, 1), q(2, 1));
        let r = k.sqrt(&a).unwrap();
        assert_eq!(k.mul(&r, &r), a);
        let r2 = k.sqrt(&k.from_int(8)).unwrap();
        assert_eq!(k.mul(&r2, &r2), k.from_int(8));

        let f7 = PrimeField::new(7).unwrap();
        let e = QuadExt::new(f7, 3).unwrap();
        let all = e.elements().unwrap();
        assert_eq!(all.len(), 49);
        for a in &all {
            let sq = e.mul(a, a);
            let r = e.sqrt(&sq).unwrap();
            assert_eq!(e.mul(&r, &r), sq);
        }
    }
}
