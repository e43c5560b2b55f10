//! Power series in `x` truncated modulo `x^(N+1)`, with [`MultiPoly`]
//! coefficients.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{MultiPoly, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(String),
    #[error("inner series has nonzero constant term {0}")]
    NonzeroConstant(String),
    #[error("fixed-point iteration did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("requested order {requested} exceeds available order {available}")]
    OrderTooLarge { requested: usize, available: usize },
}

/// `coeffs[n]` is the coefficient of `x^n`; the series is exact modulo
/// `x^(order+1)`. Series at different orders never compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<MultiPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![MultiPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, MultiPoly::one())
    }

    pub fn constant(order: usize, c: MultiPoly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `c * x^k` (zero if `k > order`).
    pub fn monomial(order: usize, k: usize, c: MultiPoly) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Build from coefficients, padding with zeros or truncating to `order`.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = MultiPoly>) -> Self {
        let mut v: Vec<MultiPoly> = coeffs.into_iter().take(order + 1).collect();
        v.resize(order + 1, MultiPoly::zero());
        TruncatedSeries { coeffs: v }
    }

    pub fn from_integers<T: Into<BigInt> + Clone>(order: usize, seq: &[T]) -> Self {
        Self::from_coeffs(order, seq.iter().map(|c| MultiPoly::constant(c.clone())))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: MultiPoly) {
        self.coeffs[n] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    fn check_orders(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(MultiPoly::neg)
    }

    /// Multiply every coefficient by a polynomial free of `x`.
    pub fn scale(&self, c: &MultiPoly) -> Self {
        self.map_coeffs(|a| a.mul(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiply by `x^k`, dropping what falls beyond the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in k..=n {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<Self, SeriesError> {
        let mut out = Self::one(self.order());
        for _ in 0..e {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    /// Drop to a lower order.
    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::OrderTooLarge {
                requested: order,
                available: self.order(),
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| *c == BigInt::from(1) || *c == BigInt::from(-1))
            .ok_or_else(|| SeriesError::NonUnitConstant(self.coeffs[0].to_string()))?;
        // c0 is its own inverse.
        let unit = MultiPoly::constant(c0);
        let n = self.order();
        let mut inv = Self::zero(n);
        inv.coeffs[0] = unit.clone();
        for k in 1..=n {
            let mut acc = MultiPoly::zero();
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&inv.coeffs[k - i]));
            }
            inv.coeffs[k] = acc.mul(&unit).neg();
        }
        Ok(inv)
    }

    /// `self(inner(x))` by Horner's rule; `inner` must have zero constant
    /// term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.check_orders(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant(inner.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut acc = Self::constant(n, self.coeffs[n].clone());
        for i in (0..n).rev() {
            acc = acc.try_mul(inner)?;
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[i]);
        }
        Ok(acc)
    }

    /// Apply an integer assignment to every coefficient.
    pub fn substitute_with(&self, value: impl Fn(Var) -> Option<BigInt> + Copy) -> Self {
        self.map_coeffs(|c| c.substitute_with(value))
    }

    /// Set `y := 1`.
    pub fn at_y_one(&self) -> Self {
        self.substitute_with(|v| (v == Var::Y).then(|| BigInt::from(1)))
    }

    /// Set `y := 0`.
    pub fn at_y_zero(&self) -> Self {
        self.substitute_with(|v| (v == Var::Y).then(BigInt::default))
    }

    /// Set every `z` to 1.
    pub fn at_z_one(&self) -> Self {
        self.substitute_with(|v| matches!(v, Var::Z(_)).then(|| BigInt::from(1)))
    }

    pub fn shift_levels(&self, offset: i32) -> Self {
        self.map_coeffs(|c| c.shift_levels(offset))
    }

    pub fn involves(&self, v: Var) -> bool {
        self.coeffs.iter().any(|c| c.involves(v))
    }

    /// Constant coefficients, if every coefficient is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(MultiPoly::as_constant).collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// Iterate `step` from `seed` until two successive iterates coincide.
///
/// `step` must determine one more coefficient per round; convergence is
/// declared on full equality, and `order + 2` rounds are allowed.
pub fn fixed_point<F>(seed: TruncatedSeries, mut step: F) -> Result<TruncatedSeries, SeriesError>
where
    F: FnMut(&TruncatedSeries) -> Result<TruncatedSeries, SeriesError>,
{
    let limit = seed.order() + 2;
    let mut current = seed;
    for _ in 0..limit {
        let next = step(&current)?;
        if next == current {
            return Ok(next);
        }
        current = next;
    }
    Err(SeriesError::NoConvergence(limit))
}

/// Joint fixed point of a system of series equations.
pub fn fixed_point_system<F>(
    seeds: Vec<TruncatedSeries>,
    mut step: F,
) -> Result<Vec<TruncatedSeries>, SeriesError>
where
    F: FnMut(&[TruncatedSeries]) -> Result<Vec<TruncatedSeries>, SeriesError>,
{
    let limit = seeds.iter().map(|s| s.order()).max().unwrap_or(0) + 2;
    let mut current = seeds;
    for _ in 0..limit {
        let next = step(&current)?;
        if next == current {
            return Ok(next);
        }
        current = next;
    }
    Err(SeriesError::NoConvergence(limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(order: usize, seq: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_integers(order, seq)
    }

    fn x(order: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(order, 1, MultiPoly::one())
    }

    fn xy(order: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(order, 1, MultiPoly::y())
    }

    #[test]
    fn arithmetic_examples() {
        let a = ints(2, &[1, 1]);
        let b = ints(2, &[1, -1]);
        assert_eq!(a.try_mul(&b).unwrap(), ints(2, &[1, 0, -1]));
        assert_eq!(ints(1, &[1]).try_add(&x(1)).unwrap(), ints(1, &[1, 1]));

        let s = TruncatedSeries::one(2).try_add(&xy(2)).unwrap();
        let sq = s.try_mul(&s).unwrap();
        assert_eq!(sq.coeff(1), &"2*y".parse::<MultiPoly>().unwrap());
        assert_eq!(sq.coeff(2), &"y^2".parse::<MultiPoly>().unwrap());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let err = ints(2, &[1]).try_add(&ints(3, &[1])).unwrap_err();
        assert_eq!(err, SeriesError::OrderMismatch { left: 2, right: 3 });
        assert!(ints(2, &[1]).try_mul(&ints(1, &[1])).is_err());
        assert!(ints(2, &[1]).compose(&x(3)).is_err());
    }

    #[test]
    fn invert_examples() {
        let a = TruncatedSeries::one(3).try_sub(&xy(3)).unwrap();
        let inv = a.invert().unwrap();
        for k in 0..=3 {
            assert_eq!(inv.coeff(k), &MultiPoly::y().pow(k as u32));
        }
        assert_eq!(TruncatedSeries::one(4).invert().unwrap(), TruncatedSeries::one(4));
        assert_eq!(ints(2, &[1, -1]).invert().unwrap(), ints(2, &[1, 1, 1]));
        assert_eq!(ints(2, &[-1, 1]).invert().unwrap(), ints(2, &[-1, -1, -1]));
    }

    #[test]
    fn invert_rejects_non_units() {
        assert!(matches!(ints(2, &[2, 1]).invert(), Err(SeriesError::NonUnitConstant(_))));
        assert!(ints(2, &[0, 1]).invert().is_err());
        let y_const = TruncatedSeries::constant(2, MultiPoly::y());
        assert!(y_const.invert().is_err());
    }

    #[test]
    fn compose_examples() {
        let f = ints(2, &[1, 1]);
        let s = ints(2, &[0, 0, 1]);
        assert_eq!(f.compose(&s).unwrap(), ints(2, &[1, 0, 1]));

        let g = ints(4, &[3, -1, 4, 1, -5]);
        assert_eq!(g.compose(&x(4)).unwrap(), g);

        assert!(matches!(
            g.compose(&ints(4, &[1, 1])),
            Err(SeriesError::NonzeroConstant(_))
        ));
    }

    #[test]
    fn compose_geometric_with_x_minus_x_squared() {
        // Oracle: sum_k (x - x^2)^k = sum_k sum_i binom(k, i) (-1)^i x^(k+i).
        let order = 3;
        let mut expected = vec![0i64; order + 1];
        for k in 0..=order {
            let mut binom = 1i64;
            for i in 0..=k {
                if k + i <= order {
                    expected[k + i] += if i % 2 == 0 { binom } else { -binom };
                }
                binom = binom * (k - i) as i64 / (i + 1) as i64;
            }
        }
        assert_eq!(expected, vec![1, 1, 0, -1]);
        let f = ints(order, &[1, 1, 1, 1]);
        let s = ints(order, &[0, 1, -1]);
        assert_eq!(f.compose(&s).unwrap(), ints(order, &expected));
    }

    #[test]
    fn fixed_point_examples() {
        let geo = fixed_point(TruncatedSeries::zero(3), |f| {
            TruncatedSeries::one(3).try_add(&f.shift(1))
        })
        .unwrap();
        assert_eq!(geo, ints(3, &[1, 1, 1, 1]));

        let cat = fixed_point(TruncatedSeries::zero(4), |f| {
            TruncatedSeries::one(4).try_add(&f.try_mul(f)?.shift(1))
        })
        .unwrap();
        assert_eq!(cat, ints(4, &[1, 1, 2, 5, 14]));
    }

    #[test]
    fn fixed_point_bivariate_catalan() {
        let n = 3;
        let one_minus_x = ints(n, &[1, -1]);
        let base = one_minus_x
            .try_mul(&TruncatedSeries::one(n).try_sub(&xy(n)).unwrap().invert().unwrap())
            .unwrap();
        let c = fixed_point(TruncatedSeries::zero(n), |f| base.try_add(&f.try_mul(f)?.shift(1)))
            .unwrap();
        let rows: Vec<Vec<i64>> = c
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, p)| {
                (0..=i)
                    .map(|k| {
                        i64::try_from(p.coeff(&crate::algebra::Monomial::from_exponents([(
                            Var::Y,
                            k as u32,
                        )])))
                        .unwrap()
                    })
                    .collect()
            })
            .collect();
        assert_eq!(rows, vec![vec![1], vec![0, 1], vec![0, 1, 1], vec![0, 2, 2, 1]]);
    }

    #[test]
    fn fixed_point_detects_non_contraction() {
        // F -> 1 + F never settles.
        let err = fixed_point(TruncatedSeries::zero(3), |f| TruncatedSeries::one(3).try_add(f))
            .unwrap_err();
        assert_eq!(err, SeriesError::NoConvergence(5));
    }

    #[test]
    fn truncate_and_shift() {
        let a = ints(4, &[1, 2, 3, 4, 5]);
        assert_eq!(a.truncate(2).unwrap(), ints(2, &[1, 2, 3]));
        assert!(a.truncate(5).is_err());
        assert_eq!(a.shift(2), ints(4, &[0, 0, 1, 2, 3]));
    }

    fn arb_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((-3i64..4, -3i64..4), order + 1).prop_map(move |cs| {
            TruncatedSeries::from_coeffs(
                order,
                cs.into_iter().map(|(a, b)| {
                    MultiPoly::constant(a).add(&MultiPoly::y().scale(&BigInt::from(b)))
                }),
            )
        })
    }

    fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        (arb_series(order), prop::bool::ANY).prop_map(|(mut s, neg)| {
            s.set_coeff(0, MultiPoly::constant(if neg { -1 } else { 1 }));
            s
        })
    }

    fn inner_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        arb_series(order).prop_map(|mut s| {
            s.set_coeff(0, MultiPoly::zero());
            s
        })
    }

    proptest! {
        #[test]
        fn inverse_postcondition(a in unit_series(6)) {
            let b = a.invert().unwrap();
            prop_assert_eq!(a.try_mul(&b).unwrap(), TruncatedSeries::one(6));
        }

        #[test]
        fn composition_is_associative(f in arb_series(5), s in inner_series(5), t in inner_series(5)) {
            let left = f.compose(&s).unwrap().compose(&t).unwrap();
            let right = f.compose(&s.compose(&t).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn truncation_coherence(a in unit_series(6), b in arb_series(6), s in inner_series(6), m in 0usize..6) {
            let tr = |t: &TruncatedSeries| t.truncate(m).unwrap();
            prop_assert_eq!(tr(&a.try_mul(&b).unwrap()), tr(&a).try_mul(&tr(&b)).unwrap());
            prop_assert_eq!(tr(&a.try_add(&b).unwrap()), tr(&a).try_add(&tr(&b)).unwrap());
            prop_assert_eq!(tr(&a.try_sub(&b).unwrap()), tr(&a).try_sub(&tr(&b)).unwrap());
            prop_assert_eq!(tr(&a.invert().unwrap()), tr(&a).invert().unwrap());
            prop_assert_eq!(tr(&b.compose(&s).unwrap()), tr(&b).compose(&tr(&s)).unwrap());
        }
    }
}
