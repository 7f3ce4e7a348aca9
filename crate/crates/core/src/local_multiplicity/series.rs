//! Bivariate power series truncated at a total-degree cutoff.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent pair `(i, j)` for `v0^i v1^j`.
pub type Exp = (u32, u32);

/// Rational power series in two variables modulo all terms of total degree
/// `>= cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    terms: BTreeMap<Exp, BigRational>,
    cutoff: u32,
}

impl TruncSeries {
    pub fn zero(cutoff: u32) -> Self {
        Self {
            terms: BTreeMap::new(),
            cutoff,
        }
    }

    pub fn constant(q: BigRational, cutoff: u32) -> Self {
        Self::from_terms([((0, 0), q)], cutoff)
    }

    pub fn one(cutoff: u32) -> Self {
        Self::constant(BigRational::one(), cutoff)
    }

    pub fn monomial(exp: Exp, coeff: BigRational, cutoff: u32) -> Self {
        Self::from_terms([(exp, coeff)], cutoff)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exp, BigRational)>, cutoff: u32) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if e.0 + e.1 < cutoff {
                *map.entry(e).or_insert_with(BigRational::zero) += c;
            }
        }
        map.retain(|_, c: &mut BigRational| !c.is_zero());
        Self { terms: map, cutoff }
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: Exp) -> BigRational {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree of a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).min()
    }

    pub fn truncate(&self, cutoff: u32) -> Self {
        Self::from_terms(self.terms.clone(), cutoff.min(self.cutoff))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c * q)), self.cutoff)
    }

    /// True iff every term is divisible by one of the monomial generators.
    pub fn lies_in_monomial_ideal(&self, gens: &[Exp]) -> bool {
        self.terms
            .keys()
            .all(|(i, j)| gens.iter().any(|(a, b)| a <= i && b <= j))
    }

    pub fn render(&self, vars: [&str; 2]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|((i, j), _)| (i + j, std::cmp::Reverse(*i)));
        for (k, ((i, j), c)) in sorted.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mono = render_monomial(vars, (*i, *j));
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&mono),
                (false, false) => out.push_str(&format!("{abs}*{mono}")),
            }
        }
        out
    }
}

pub fn render_monomial(vars: [&str; 2], (i, j): Exp) -> String {
    let pow = |v: &str, e: u32| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    [pow(vars[0], i), pow(vars[1], j)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(["x", "y"]))
    }
}

impl std::ops::Add<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(e, c)| (*e, c.clone())),
            self.cutoff.min(rhs.cutoff),
        )
    }
}

impl std::ops::Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.scale(&-BigRational::one())
    }
}

impl std::ops::Sub<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self + &(-rhs)
    }
}

impl std::ops::Mul<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let cutoff = self.cutoff.min(rhs.cutoff);
        let mut out = Vec::new();
        for ((a, b), c) in &self.terms {
            for ((d, e), f) in &rhs.terms {
                if a + b + d + e < cutoff {
                    out.push(((a + d, b + e), c * f));
                }
            }
        }
        TruncSeries::from_terms(out, cutoff)
    }
}
