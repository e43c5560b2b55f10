//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! The variables are `y` and an integer-indexed family `z{l}`. Monomials are
//! kept in graded lexicographic order with `y` ranking above every `z`, and
//! `z{l}` ranking above `z{l'}` when `l < l'`. Polynomials print highest term
//! first, e.g. `y^3 + 2*y^2 + 2*y`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A polynomial variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Y,
    /// Flatstep marker at the given level; levels may be negative.
    Z(i32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Y => write!(f, "y"),
            Var::Z(level) => write!(f, "z{{{level}}}"),
        }
    }
}

/// A power product of variables. Entries are sorted by variable and carry
/// strictly positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_exponents<I: IntoIterator<Item = (Var, u32)>>(entries: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in entries {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn entries(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Apply `f` to every z-level. Colliding levels merge their exponents.
    pub fn map_levels(&self, f: impl Fn(i32) -> i32) -> Monomial {
        Monomial::from_exponents(self.0.iter().map(|&(v, e)| match v {
            Var::Y => (Var::Y, e),
            Var::Z(l) => (Var::Z(f(l)), e),
        }))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (&(a, ea), &(b, eb)) in self.0.iter().zip(other.0.iter()) {
                if a != b {
                    // The side holding the earlier variable is the larger one.
                    return if a < b { Ordering::Greater } else { Ordering::Less };
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial: a map from monomials to nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn y() -> Self {
        MultiPoly::term(1, Monomial::var(Var::Y))
    }

    pub fn z(level: i32) -> Self {
        MultiPoly::term(1, Monomial::var(Var::Z(level)))
    }

    pub fn term<T: Into<BigInt>>(c: T, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// Accumulate `c * m` into `self`, pruning a cancelled term.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Replace every assigned variable by its integer value; unassigned
    /// variables survive.
    pub fn substitute(&self, assignment: &BTreeMap<Var, BigInt>) -> MultiPoly {
        self.substitute_with(|v| assignment.get(&v).cloned())
    }

    pub fn substitute_with(&self, value: impl Fn(Var) -> Option<BigInt>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = Vec::new();
            for &(v, e) in m.entries() {
                match value(v) {
                    Some(val) => coeff *= num_traits::pow(val, e as usize),
                    None => kept.push((v, e)),
                }
            }
            out.add_term(Monomial(kept), coeff);
        }
        out
    }

    /// True iff every stored coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn involves_any_z(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.entries().iter().any(|(v, _)| matches!(v, Var::Z(_))))
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Shift every z-level by `offset` (`z{l}` becomes `z{l+offset}`).
    pub fn shift_levels(&self, offset: i32) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.map_levels(|l| l + offset), c.clone())),
        )
    }

    /// Coefficients of `y^0, y^1, ...` of a polynomial in `y` alone.
    /// Returns `None` if any z-variable occurs.
    pub fn y_coefficients(&self) -> Option<Vec<BigInt>> {
        if self.involves_any_z() {
            return None;
        }
        let deg = self.degree_in(Var::Y) as usize;
        let mut out = vec![BigInt::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.exponent(Var::Y) as usize] = c.clone();
        }
        if self.is_zero() {
            out.clear();
        }
        Some(out)
    }

    pub fn from_y_coefficients(coeffs: &[BigInt]) -> MultiPoly {
        MultiPoly::from_terms(coeffs.iter().enumerate().map(|(k, c)| {
            (
                Monomial::from_exponents([(Var::Y, k as u32)]),
                c.clone(),
            )
        }))
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<BigInt> for MultiPoly {
    fn from(c: BigInt) -> Self {
        MultiPoly::constant(c)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| AlgebraError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty input"));
        }

        // Split at top-level signs; a sign directly after '^' or '{' belongs
        // to a number.
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            let signed_number = matches!(prev, Some('^') | Some('{'));
            if (ch == '+' || ch == '-') && !signed_number {
                if !current.is_empty() {
                    pieces.push((negative, std::mem::take(&mut current)));
                } else if prev.is_some() {
                    return Err(fail("dangling sign"));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if current.is_empty() {
            return Err(fail("trailing sign"));
        }
        pieces.push((negative, current));

        let mut poly = MultiPoly::zero();
        for (negative, piece) in pieces {
            let mut coeff = BigInt::one();
            let mut exps = Vec::new();
            for factor in piece.split('*') {
                if factor.is_empty() {
                    return Err(fail("empty factor"));
                }
                let (base, exp) = match factor.rsplit_once('^') {
                    Some((b, e)) if !b.is_empty() => {
                        let e: u32 = e.parse().map_err(|_| fail("bad exponent"))?;
                        (b, e)
                    }
                    Some(_) => return Err(fail("missing base")),
                    None => (factor, 1),
                };
                if base == "y" {
                    exps.push((Var::Y, exp));
                } else if let Some(level) =
                    base.strip_prefix("z{").and_then(|r| r.strip_suffix('}'))
                {
                    let level: i32 = level.parse().map_err(|_| fail("bad z level"))?;
                    exps.push((Var::Z(level), exp));
                } else {
                    let c: BigInt = base.parse().map_err(|_| fail("unknown factor"))?;
                    coeff *= num_traits::pow(c, exp as usize);
                }
            }
            if negative {
                coeff = -coeff;
            }
            poly.add_term(Monomial::from_exponents(exps), coeff);
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert!(p("y").add(&p("-y")).is_zero());
        assert_eq!(p("y + 1").add(&p("y^2 - y")), p("y^2 + 1"));
        let sum = p("2*z{0}").add(&p("3*z{0}*y"));
        assert_eq!(sum.num_terms(), 2);
        assert_eq!(sum.to_string(), "3*y*z{0} + 2*z{0}");
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("y").mul(&p("y")), p("y^2"));
        assert_eq!(p("1 + y").mul(&p("1 - y")), p("1 - y^2"));
        assert_eq!(p("y + z{1}").mul(&p("z{1}")), p("y*z{1} + z{1}^2"));
    }

    #[test]
    fn substitute_examples() {
        let y1: BTreeMap<Var, BigInt> = [(Var::Y, BigInt::from(1))].into();
        assert_eq!(p("y^2 + 2*y").substitute(&y1), p("3"));
        let z1: BTreeMap<Var, BigInt> = [(Var::Z(0), BigInt::from(1))].into();
        assert_eq!(p("y*z{0}").substitute(&z1), p("y"));
        assert_eq!(MultiPoly::one().substitute(&y1), MultiPoly::one());
        assert_eq!(MultiPoly::one().substitute(&z1), MultiPoly::one());
    }

    #[test]
    fn nonnegativity_examples() {
        assert!(p("y^2 + y").is_nonnegative());
        assert!(!p("y - 1").is_nonnegative());
        assert!(MultiPoly::zero().is_nonnegative());
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("2*y + y^3 + 2*y^2").to_string(), "y^3 + 2*y^2 + 2*y");
        assert_eq!(p("-y + 4").to_string(), "-y + 4");
        assert_eq!(p("z{-2}^2*y - 1").to_string(), "y*z{-2}^2 - 1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        // y outranks z at equal degree; lower z-levels outrank higher ones.
        assert_eq!(p("z{3} + z{-1} + y").to_string(), "y + z{-1} + z{3}");
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<MultiPoly>().is_err());
        assert!("y +".parse::<MultiPoly>().is_err());
        assert!("x^2".parse::<MultiPoly>().is_err());
        assert!("z{a}".parse::<MultiPoly>().is_err());
        assert!("y**2".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn level_shift_and_y_coefficients() {
        assert_eq!(p("z{0}*z{1} + y").shift_levels(-1), p("z{-1}*z{0} + y"));
        assert_eq!(
            p("y^2 - 3").y_coefficients().unwrap(),
            vec![BigInt::from(-3), BigInt::zero(), BigInt::from(1)]
        );
        assert!(p("y*z{0}").y_coefficients().is_none());
        assert_eq!(MultiPoly::zero().y_coefficients().unwrap(), Vec::<BigInt>::new());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        let var = prop_oneof![Just(Var::Y), (-2i32..3).prop_map(Var::Z)];
        let mono = prop::collection::vec((var, 0u32..3), 0..3).prop_map(Monomial::from_exponents);
        prop::collection::vec((mono, -5i64..6), 0..5)
            .prop_map(|ts| MultiPoly::from_terms(ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&MultiPoly::zero()), a.clone());
            prop_assert_eq!(a.mul(&MultiPoly::one()), a.clone());
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn substitution_is_a_homomorphism(a in arb_poly(), b in arb_poly(), y in -3i64..4, z0 in -2i64..3) {
            let asg: BTreeMap<Var, BigInt> =
                [(Var::Y, BigInt::from(y)), (Var::Z(0), BigInt::from(z0))].into();
            prop_assert_eq!(
                a.mul(&b).substitute(&asg),
                a.substitute(&asg).mul(&b.substitute(&asg))
            );
            prop_assert_eq!(
                a.add(&b).substitute(&asg),
                a.substitute(&asg).add(&b.substitute(&asg))
            );
        }

        #[test]
        fn text_form_is_canonical(a in arb_poly()) {
            let text = a.to_string();
            let back: MultiPoly = text.parse().unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
