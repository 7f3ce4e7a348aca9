//! Graded-commutative algebra over the rationals on named generators.
//!
//! A [`Ring`] is a free commutative algebra on weighted generators modulo a
//! set of monomial rewrite rules and modulo everything of degree above the
//! truncation bound. Rules must strictly decrease monomials in the ring's
//! well-order: weighted degree first, then lexicographic comparison of
//! exponent vectors with generators ranked in declaration order (the first
//! declared generator is the largest). That makes normalization terminate.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have positive degree")]
    ZeroDegree(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error(
        "rule `{lhs} -> ...` has right-hand term `{term}` that is not smaller than its left side"
    )]
    NonDecreasingRule { lhs: String, term: String },
    #[error("two rules rewrite `{0}`")]
    DuplicateRule(String),
    #[error("a rule may not rewrite the unit monomial")]
    UnitRule,
    #[error("classes belong to different rings")]
    RingMismatch,
    #[error("degree {degree} outside 0..={truncation}")]
    DegreeOutOfRange { degree: u32, truncation: u32 },
    #[error("rewrite rules are not confluent: {0}")]
    NonConfluent(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Self {
            name: name.into(),
            degree,
        }
    }
}

/// Exponent vector indexed by generator position in the owning ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A relation `lhs = rhs`, given by generator names. The left side is a
/// multiset of factors; the right side a rational combination of such.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Vec<String>,
    pub rhs: Vec<(BigRational, Vec<String>)>,
}

impl RewriteRule {
    pub fn new<S: AsRef<str>>(lhs: &[S], rhs: Vec<(BigRational, Vec<String>)>) -> Self {
        Self {
            lhs: lhs.iter().map(|s| s.as_ref().to_string()).collect(),
            rhs,
        }
    }

    /// Shorthand with integer coefficients: `RewriteRule::int(&["X", "X"], &[(1, &["X", "pd1"]), (-1, &["N"])])`.
    pub fn int(lhs: &[&str], rhs: &[(i64, &[&str])]) -> Self {
        Self::new(
            lhs,
            rhs.iter()
                .map(|(c, m)| {
                    (
                        BigRational::from_integer((*c).into()),
                        m.iter().map(|s| s.to_string()).collect(),
                    )
                })
                .collect(),
        )
    }
}

type Terms = BTreeMap<Monomial, BigRational>;

struct CompiledRule {
    lhs: Monomial,
    rhs: Vec<(Monomial, BigRational)>,
}

struct RingData {
    id: u64,
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    rules: Vec<CompiledRule>,
    truncation: u32,
}

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(0);

/// Shared, immutable ring handle. Cloning is cheap; two handles compare equal
/// iff they come from the same construction.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("id", &self.0.id)
            .field("generators", &self.0.generators)
            .field("truncation", &self.0.truncation)
            .finish()
    }
}

impl Ring {
    pub fn new(
        generators: Vec<Generator>,
        rules: Vec<RewriteRule>,
        truncation: u32,
    ) -> Result<Ring, AlgebraError> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(AlgebraError::ZeroDegree(g.name.clone()));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateGenerator(g.name.clone()));
            }
        }
        let mut data = RingData {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            generators,
            index,
            rules: Vec::new(),
            truncation,
        };
        let mut seen = HashSet::new();
        for rule in &rules {
            let lhs = data.monomial_from_names(&rule.lhs)?;
            if lhs.is_unit() {
                return Err(AlgebraError::UnitRule);
            }
            if !seen.insert(lhs.clone()) {
                return Err(AlgebraError::DuplicateRule(data.render_monomial(&lhs)));
            }
            let mut rhs: Terms = BTreeMap::new();
            for (c, names) in &rule.rhs {
                let m = data.monomial_from_names(names)?;
                *rhs.entry(m).or_insert_with(BigRational::zero) += c;
            }
            rhs.retain(|_, c| !c.is_zero());
            for m in rhs.keys() {
                if data.order_key(m) >= data.order_key(&lhs) {
                    return Err(AlgebraError::NonDecreasingRule {
                        lhs: data.render_monomial(&lhs),
                        term: data.render_monomial(m),
                    });
                }
            }
            data.rules.push(CompiledRule {
                lhs,
                rhs: rhs.into_iter().collect(),
            });
        }
        Ok(Ring(Arc::new(data)))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0.generators
    }

    pub fn truncation(&self) -> u32 {
        self.0.truncation
    }

    pub fn has_generator(&self, name: &str) -> bool {
        self.0.index.contains_key(name)
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        self.0.degree(m)
    }

    pub fn monomial<S: AsRef<str>>(&self, factors: &[S]) -> Result<Monomial, AlgebraError> {
        self.0.monomial_from_names(factors)
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial(vec![0; self.0.generators.len()])
    }

    /// Generator names of `m` with multiplicity, sorted by name.
    pub fn factors(&self, m: &Monomial) -> Vec<String> {
        let mut out = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                out.push(self.0.generators[i].name.clone());
            }
        }
        out.sort();
        out
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        self.0.render_monomial(m)
    }

    /// The well-order used for termination: `Less` means `a` is smaller.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        self.0.order_key(a).cmp(&self.0.order_key(b))
    }

    pub fn zero(&self) -> ChowClass {
        ChowClass {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> ChowClass {
        self.scalar(BigRational::one())
    }

    pub fn scalar(&self, q: BigRational) -> ChowClass {
        self.class_from_terms(vec![(self.unit_monomial(), q)])
    }

    pub fn int(&self, n: i64) -> ChowClass {
        self.scalar(BigRational::from_integer(n.into()))
    }

    /// The normalized class of a single generator.
    pub fn generator(&self, name: &str) -> Result<ChowClass, AlgebraError> {
        let m = self.monomial(&[name])?;
        Ok(self.class_from_terms(vec![(m, BigRational::one())]))
    }

    /// A class built from the given terms without applying the rewrite rules.
    /// Terms above the truncation are still dropped.
    pub fn raw_class(&self, terms: Vec<(Monomial, BigRational)>) -> ChowClass {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if self.0.degree(&m) <= self.0.truncation {
                *map.entry(m).or_insert_with(BigRational::zero) += c;
            }
        }
        map.retain(|_, c: &mut BigRational| !c.is_zero());
        ChowClass {
            ring: self.clone(),
            terms: map,
        }
    }

    /// A normalized class built from the given terms.
    pub fn class_from_terms(&self, terms: Vec<(Monomial, BigRational)>) -> ChowClass {
        ChowClass {
            ring: self.clone(),
            terms: self.0.normal_form(terms),
        }
    }

    /// Convenience: a normalized class from integer coefficients and factor names.
    pub fn class(&self, terms: &[(i64, &[&str])]) -> Result<ChowClass, AlgebraError> {
        let mut out = Vec::with_capacity(terms.len());
        for (c, names) in terms {
            out.push((
                self.monomial(names)?,
                BigRational::from_integer((*c).into()),
            ));
        }
        Ok(self.class_from_terms(out))
    }

    pub fn normalize(&self, c: &ChowClass) -> Result<ChowClass, AlgebraError> {
        if c.ring != *self {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(c.normalize())
    }

    /// Every overlap of two rule left sides, reduced both ways.
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let rules = &self.0.rules;
        let mut out = Vec::new();
        for i in 0..rules.len() {
            for j in i + 1..rules.len() {
                let (a, b) = (&rules[i], &rules[j]);
                if a.lhs.coprime(&b.lhs) {
                    continue;
                }
                let lcm = a.lhs.lcm(&b.lhs);
                let reduce = |r: &CompiledRule| {
                    let q = lcm.div(&r.lhs);
                    self.class_from_terms(
                        r.rhs.iter().map(|(m, c)| (q.mul(m), c.clone())).collect(),
                    )
                };
                out.push(CriticalPair {
                    overlap: lcm.clone(),
                    via_first: reduce(a),
                    via_second: reduce(b),
                });
            }
        }
        out
    }

    /// Checks that every rule overlap reduces to a single normal form.
    /// Only rule/rule overlaps are examined; overlaps with the truncation
    /// ideal are trivially joinable for homogeneous rules.
    pub fn check_confluence(&self) -> Result<(), AlgebraError> {
        let bad: Vec<String> = self
            .critical_pairs()
            .into_iter()
            .filter(|p| p.via_first != p.via_second)
            .map(|p| {
                format!(
                    "{} reduces to {} and {}",
                    self.render_monomial(&p.overlap),
                    p.via_first,
                    p.via_second
                )
            })
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(AlgebraError::NonConfluent(bad.join("; ")))
        }
    }

    /// Canonical text form: generators with degrees, truncation, then rules.
    pub fn to_canonical_text(&self) -> String {
        let mut s = String::from("generators:");
        for g in &self.0.generators {
            s.push_str(&format!(" {}:{}", g.name, g.degree));
        }
        s.push_str(&format!("\ntruncation: {}\n", self.0.truncation));
        for r in &self.0.rules {
            let rhs = self.raw_class(r.rhs.clone());
            s.push_str(&format!(
                "rule: {} -> {}\n",
                self.render_monomial(&r.lhs),
                rhs
            ));
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct CriticalPair {
    pub overlap: Monomial,
    pub via_first: ChowClass,
    pub via_second: ChowClass,
}

impl RingData {
    fn degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(e, g)| e * g.degree)
            .sum()
    }

    fn order_key(&self, m: &Monomial) -> (u32, Monomial) {
        (self.degree(m), m.clone())
    }

    fn monomial_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Monomial, AlgebraError> {
        let mut exps = vec![0; self.generators.len()];
        for n in names {
            let n = n.as_ref();
            let i = self
                .index
                .get(n)
                .ok_or_else(|| AlgebraError::UnknownGenerator(n.to_string()))?;
            exps[*i] += 1;
        }
        Ok(Monomial(exps))
    }

    fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "[C]".to_string();
        }
        let mut parts: Vec<(&str, u32)> =
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (self.generators[i].name.as_str(), e))
                .collect();
        parts.sort();
        parts
            .into_iter()
            .map(|(n, e)| {
                if e == 1 {
                    n.to_string()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }

    fn find_rule(&self, m: &Monomial) -> Option<&CompiledRule> {
        self.rules.iter().find(|r| r.lhs.divides(m))
    }

    fn normal_form(&self, terms: Vec<(Monomial, BigRational)>) -> Terms {
        // Keyed by the well-order so the largest pending monomial is always
        // rewritten first; rewriting only produces smaller monomials.
        let mut pending: BTreeMap<(u32, Monomial), BigRational> = BTreeMap::new();
        let push = |pending: &mut BTreeMap<(u32, Monomial), BigRational>, m: Monomial, c| {
            let d = self.degree(&m);
            if d <= self.truncation {
                *pending.entry((d, m)).or_insert_with(BigRational::zero) += c;
            }
        };
        for (m, c) in terms {
            push(&mut pending, m, c);
        }
        let mut out = BTreeMap::new();
        while let Some(((_, m), c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_rule(&m) {
                Some(rule) => {
                    let q = m.div(&rule.lhs);
                    for (rm, rc) in &rule.rhs {
                        push(&mut pending, q.mul(rm), &c * rc);
                    }
                }
                None => {
                    out.insert(m, c);
                }
            }
        }
        out
    }
}

/// A rational combination of monomials in a [`Ring`]. Classes are "capped with
/// the fundamental class" by convention: the unit monomial stands for it.
#[derive(Clone, PartialEq, Eq)]
pub struct ChowClass {
    ring: Ring,
    terms: Terms,
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChowClass({self})")
    }
}

impl ChowClass {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of the monomial with the given factors (zero if absent).
    pub fn coefficient_of(&self, factors: &[&str]) -> Result<BigRational, AlgebraError> {
        Ok(self.coefficient(&self.ring.monomial(factors)?))
    }

    /// The constant (degree-0) coefficient.
    pub fn constant(&self) -> BigRational {
        self.coefficient(&self.ring.unit_monomial())
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| self.ring.degree_of(m) == d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.degree_of(m)).max()
    }

    pub fn normalize(&self) -> ChowClass {
        self.ring.class_from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    fn check_ring(&self, other: &ChowClass) -> Result<(), AlgebraError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &ChowClass) -> Result<ChowClass, AlgebraError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(BigRational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(ChowClass {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &ChowClass) -> Result<ChowClass, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> ChowClass {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, q: &BigRational) -> ChowClass {
        if q.is_zero() {
            return self.ring.zero();
        }
        ChowClass {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    /// Normalized, truncated product.
    pub fn try_mul(&self, other: &ChowClass) -> Result<ChowClass, AlgebraError> {
        self.check_ring(other)?;
        let mut prod = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                prod.push((a.mul(b), ca * cb));
            }
        }
        Ok(self.ring.class_from_terms(prod))
    }

    pub fn pow(&self, e: u32) -> ChowClass {
        (0..e).fold(self.ring.one(), |acc, _| &acc * self)
    }

    pub fn graded_part(&self, d: u32) -> Result<ChowClass, AlgebraError> {
        let truncation = self.ring.truncation();
        if d > truncation {
            return Err(AlgebraError::DegreeOutOfRange {
                degree: d,
                truncation,
            });
        }
        Ok(ChowClass {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.degree_of(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Image under the algebra map sending the named generators to zero and
    /// fixing the others, renormalized. The caller is responsible for picking
    /// a set compatible with the ring's relations.
    pub fn specialize_to_zero(&self, names: &[&str]) -> Result<ChowClass, AlgebraError> {
        let killed: Vec<usize> = names
            .iter()
            .map(|n| {
                self.ring
                    .0
                    .index
                    .get(*n)
                    .copied()
                    .ok_or_else(|| AlgebraError::UnknownGenerator(n.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(self.ring.class_from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| killed.iter().all(|&i| m.0[i] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        ))
    }

    /// Terms ordered from largest to smallest monomial.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ring.compare(b.0, a.0));
        v
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            if m.is_unit() {
                write!(f, "{abs}·[C]")?;
            } else if abs.is_one() {
                write!(f, "{}", self.ring.render_monomial(m))?;
            } else {
                write!(f, "{abs}·{}", self.ring.render_monomial(m))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&ChowClass> for &ChowClass {
            type Output = ChowClass;
            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &ChowClass) -> ChowClass {
                self.$inner(rhs).expect("operands in the same ring")
            }
        }
        impl std::ops::$tr<ChowClass> for ChowClass {
            type Output = ChowClass;
            fn $method(self, rhs: ChowClass) -> ChowClass {
                (&self).$inner(&rhs).expect("operands in the same ring")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        ChowClass::neg(self)
    }
}

impl std::ops::Neg for ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        ChowClass::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(spec: &[(&str, u32)]) -> Vec<Generator> {
        spec.iter().map(|(n, d)| Generator::new(*n, *d)).collect()
    }

    fn small_ring() -> Ring {
        Ring::new(
            gens(&[("X", 1), ("K", 1), ("N", 2), ("pd1", 1)]),
            vec![RewriteRule::int(
                &["X", "X"],
                &[(1, &["X", "pd1"]), (-1, &["N"])],
            )],
            2,
        )
        .unwrap()
    }

    #[test]
    fn rule_rewrites_square() {
        let r = small_ring();
        let xx = r.raw_class(vec![(r.monomial(&["X", "X"]).unwrap(), BigRational::one())]);
        let expected = r.class(&[(1, &["X", "pd1"]), (-1, &["N"])]).unwrap();
        assert_eq!(xx.normalize(), expected);
        assert_eq!(xx.normalize().to_string(), "X·pd1 - N");
    }

    #[test]
    fn normal_monomial_is_fixed() {
        let r = small_ring();
        let kk = r.class(&[(1, &["K", "K"])]).unwrap();
        assert_eq!(kk.normalize(), kk);
        assert_eq!(r.zero().normalize(), r.zero());
    }

    #[test]
    fn empty_ring_holds_only_scalars() {
        let r = Ring::new(vec![], vec![], 3).unwrap();
        let half = r.scalar(BigRational::new(1.into(), 2.into()));
        assert_eq!(
            (&half * &half).constant(),
            BigRational::new(1.into(), 4.into())
        );
        assert_eq!(half.to_string(), "1/2·[C]");
    }

    #[test]
    fn rejects_bad_rule_sets() {
        let g = gens(&[("X", 1), ("N", 2)]);
        let dup = Ring::new(
            g.clone(),
            vec![
                RewriteRule::int(&["X", "X"], &[(1, &["N"])]),
                RewriteRule::int(&["X", "X"], &[]),
            ],
            2,
        );
        assert!(matches!(dup, Err(AlgebraError::DuplicateRule(_))));

        // N is declared after X, so X·X > N but not the other way round.
        let up = Ring::new(
            g.clone(),
            vec![RewriteRule::int(&["N"], &[(1, &["X", "X"])])],
            2,
        );
        assert!(matches!(up, Err(AlgebraError::NonDecreasingRule { .. })));

        let unknown = Ring::new(g.clone(), vec![RewriteRule::int(&["Q"], &[])], 2);
        assert!(matches!(unknown, Err(AlgebraError::UnknownGenerator(_))));

        let twice = Ring::new(gens(&[("X", 1), ("X", 2)]), vec![], 2);
        assert!(matches!(twice, Err(AlgebraError::DuplicateGenerator(_))));
    }

    #[test]
    fn product_is_truncated() {
        let r = small_ring();
        let k = r.generator("K").unwrap();
        let n = r.generator("N").unwrap();
        assert!((&k * &n).is_zero());
        assert_eq!(&k * &r.one(), k);
    }

    #[test]
    fn graded_part_projects() {
        let r = small_ring();
        let k = r.generator("K").unwrap();
        let total = &(&r.one() + &k) + &(&k * &k);
        assert_eq!(total.graded_part(2).unwrap(), &k * &k);
        assert_eq!(total.graded_part(0).unwrap(), r.one());
        assert!(matches!(
            total.graded_part(3),
            Err(AlgebraError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = small_ring();
        let b = small_ring();
        assert_eq!(a.one().try_mul(&b.one()), Err(AlgebraError::RingMismatch));
    }

    #[test]
    fn detects_non_confluence() {
        // a·b -> c and b·b -> 0: the overlap a·b·b gives c·b one way and 0 the other.
        let r = Ring::new(
            gens(&[("a", 1), ("b", 1), ("c", 1)]),
            vec![
                RewriteRule::int(&["a", "b"], &[(1, &["c", "c"])]),
                RewriteRule::int(&["b", "b"], &[]),
            ],
            3,
        )
        .unwrap();
        assert!(matches!(
            r.check_confluence(),
            Err(AlgebraError::NonConfluent(_))
        ));
    }

    #[test]
    fn canonical_text_lists_rules() {
        let text = small_ring().to_canonical_text();
        assert_eq!(
            text,
            "generators: X:1 K:1 N:2 pd1:1\ntruncation: 2\nrule: X^2 -> X·pd1 - N\n"
        );
    }
}
