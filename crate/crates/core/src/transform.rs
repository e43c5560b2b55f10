//! The run transform `f(x) -> (1-x)/(1-xy) * f(x(1-x)/(1-xy))` and the
//! Catalan machinery around it.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::algebra::{Monomial, MultiPoly, Var};
use crate::series::{fixed_point, SeriesError, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("input series involves y at x^{0}")]
    InvolvesY(usize),
    #[error("coefficient of x^{0} involves a z variable")]
    StrayZ(usize),
    #[error("coefficient of x^{n} has y-degree {degree} > {n}")]
    DegreeTooHigh { n: usize, degree: u32 },
}

/// `(1 - x) / (1 - x y)` at the given order.
pub fn prefactor(order: usize) -> TruncatedSeries {
    // (1 - x) * sum_k (xy)^k
    TruncatedSeries::from_coeffs(
        order,
        (0..=order).map(|n| {
            let yn = MultiPoly::y().pow(n as u32);
            if n == 0 {
                yn
            } else {
                yn.sub(&MultiPoly::y().pow(n as u32 - 1))
            }
        }),
    )
}

/// Apply the run transform to `f`, which must be free of `y`.
pub fn run_transform(f: &TruncatedSeries, order: usize) -> Result<TruncatedSeries, TransformError> {
    if let Some(n) = f.coeffs().iter().position(|c| c.involves(Var::Y)) {
        return Err(TransformError::InvolvesY(n));
    }
    let f = f.truncate(order)?;
    // sum_n f_n x^n ((1-x)/(1-xy))^(n+1)
    let pre = prefactor(order);
    let mut coeffs = vec![MultiPoly::zero(); order + 1];
    let mut power = pre.clone();
    for n in 0..=order {
        let fn_ = f.coeff(n);
        if !fn_.is_zero() {
            for t in n..=order {
                let q = power.coeff(t - n);
                if !q.is_zero() {
                    coeffs[t] = coeffs[t].add(&fn_.mul(q));
                }
            }
        }
        if n < order {
            power = power.try_mul(&pre)?;
        }
    }
    Ok(TruncatedSeries::from_coeffs(order, coeffs))
}

/// Lower-triangular coefficient array: entry `(n, k)` is `[x^n y^k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    rows: Vec<Vec<BigInt>>,
}

impl Triangle {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Option<Self> {
        rows.iter()
            .enumerate()
            .all(|(n, r)| r.len() == n + 1)
            .then_some(Triangle { rows })
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, n: usize, k: usize) -> &BigInt {
        &self.rows[n][k]
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn column(&self, k: usize) -> Vec<BigInt> {
        self.rows
            .iter()
            .filter(|r| r.len() > k)
            .map(|r| r[k].clone())
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().flatten().all(|c| !c.is_negative())
    }

    /// Entries read by rows, as one flat sequence.
    pub fn flatten(&self) -> Vec<BigInt> {
        self.rows.iter().flatten().cloned().collect()
    }

    pub fn to_series(&self) -> TruncatedSeries {
        let order = self.rows.len().saturating_sub(1);
        TruncatedSeries::from_coeffs(order, self.rows.iter().map(|r| MultiPoly::from_y_coefficients(r)))
    }

    /// One row per line, entries comma-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(BigInt::to_string).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    /// OEIS b-file lines `index value`, read by rows from index 0.
    pub fn to_bfile(&self) -> String {
        sequence_to_bfile(&self.flatten())
    }

    /// `{"order": N, "entries": {"n,k": value, ...}}`.
    pub fn to_json(&self) -> Value {
        let mut entries = Map::new();
        for (n, row) in self.rows.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                entries.insert(format!("{n},{k}"), big_to_json(c));
            }
        }
        let mut obj = Map::new();
        obj.insert("order".into(), Value::from(self.rows.len().saturating_sub(1)));
        obj.insert("entries".into(), Value::Object(entries));
        Value::Object(obj)
    }

    /// Right-aligned rows for terminal output.
    pub fn to_pretty(&self) -> String {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|c| c.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for (n, row) in self.rows.iter().enumerate() {
            let _ = write!(out, "{n:>3}:");
            for c in row {
                let _ = write!(out, " {:>width$}", c.to_string());
            }
            out.push('\n');
        }
        out
    }
}

pub fn big_to_json(c: &BigInt) -> Value {
    // arbitrary_precision keeps the digits exact
    Value::Number(c.to_string().parse::<Number>().expect("integer literal"))
}

pub fn sequence_to_bfile(seq: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in seq.iter().enumerate() {
        let _ = writeln!(out, "{i} {c}");
    }
    out
}

/// Read off the coefficient array of a series in `x` and `y`.
pub fn to_triangle(f: &TruncatedSeries) -> Result<Triangle, TransformError> {
    let mut rows = Vec::with_capacity(f.order() + 1);
    for (n, c) in f.coeffs().iter().enumerate() {
        if c.involves_any_z() {
            return Err(TransformError::StrayZ(n));
        }
        let degree = c.degree_in(Var::Y);
        if degree as usize > n {
            return Err(TransformError::DegreeTooHigh { n, degree });
        }
        let row = (0..=n)
            .map(|k| c.coeff(&Monomial::from_exponents([(Var::Y, k as u32)])))
            .collect();
        rows.push(row);
    }
    Ok(Triangle { rows })
}

/// Binomial coefficients from Pascal's rule.
#[derive(Debug, Clone)]
pub struct Binomials {
    table: Vec<Vec<BigInt>>,
}

impl Binomials {
    pub fn up_to(n: usize) -> Self {
        let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        for a in 0..=n {
            let mut row = vec![BigInt::one(); a + 1];
            for b in 1..a {
                row[b] = &table[a - 1][b - 1] + &table[a - 1][b];
            }
            table.push(row);
        }
        Binomials { table }
    }

    /// `binom(a, b)`, zero outside `0 <= b <= a`.
    pub fn get(&self, a: i64, b: i64) -> BigInt {
        if a < 0 || b < 0 || b > a {
            return BigInt::zero();
        }
        self.table[a as usize][b as usize].clone()
    }
}

pub fn catalan_numbers(n: usize) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for m in 0..n {
        let next = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
        c.push(next);
    }
    c
}

/// Square upper-triangular integer matrix (the Catalan convolution matrix or
/// its inverse).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalanMatrix {
    entries: Vec<Vec<BigInt>>,
}

impl CatalanMatrix {
    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i]
    }

    pub fn identity(n: usize) -> Self {
        CatalanMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &CatalanMatrix) -> CatalanMatrix {
        let n = self.dimension();
        assert_eq!(n, other.dimension(), "dimension mismatch");
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|t| &self.entries[i][t] * &other.entries[t][j]).sum())
                    .collect()
            })
            .collect();
        CatalanMatrix { entries }
    }

    /// Row vector times matrix; `v` is padded or cut to the dimension.
    pub fn row_vector_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        let n = self.dimension();
        (0..n)
            .map(|j| {
                (0..=j)
                    .filter(|&i| i < v.len())
                    .map(|i| &v[i] * &self.entries[i][j])
                    .sum()
            })
            .collect()
    }
}

/// Entries `binom(2j-i, j-i) - binom(2j-i, j-i-1)` for `j >= i`.
pub fn catalan_matrix(n: usize) -> CatalanMatrix {
    let b = Binomials::up_to(2 * n);
    let entries = (0..n as i64)
        .map(|i| {
            (0..n as i64)
                .map(|j| {
                    if j < i {
                        BigInt::zero()
                    } else {
                        b.get(2 * j - i, j - i) - b.get(2 * j - i, j - i - 1)
                    }
                })
                .collect()
        })
        .collect();
    CatalanMatrix { entries }
}

/// Entries `(-1)^(j-i) binom(i+1, j-i)` for `j >= i`.
pub fn catalan_matrix_inverse(n: usize) -> CatalanMatrix {
    let b = Binomials::up_to(n + 1);
    let entries = (0..n as i64)
        .map(|i| {
            (0..n as i64)
                .map(|j| {
                    if j < i {
                        BigInt::zero()
                    } else {
                        let v = b.get(i + 1, j - i);
                        if (j - i) % 2 == 0 {
                            v
                        } else {
                            -v
                        }
                    }
                })
                .collect()
        })
        .collect();
    CatalanMatrix { entries }
}

/// `a = b C^{-1}`, so that the transform of `b` is `sum_k a_k x^k C(x,y)^(k+1)`.
/// Entry `k` of the result depends only on `b_0..b_k`.
pub fn decompose(b: &[BigInt]) -> Vec<BigInt> {
    catalan_matrix_inverse(b.len()).row_vector_mul(b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegVerdict {
    /// `b C^{-1}` truncated at the order.
    pub a: Vec<BigInt>,
    /// Every entry of `a` is nonnegative.
    pub criterion: bool,
    /// Every coefficient of the transformed series is nonnegative.
    pub direct: bool,
}

impl NonnegVerdict {
    pub fn verdict(&self) -> bool {
        self.criterion
    }
}

/// Decide nonnegativity of the transform of `b` up to `order`, both through
/// `b C^{-1}` and by inspecting the transformed triangle.
pub fn nonneg_criterion(b: &[BigInt], order: usize) -> Result<NonnegVerdict, TransformError> {
    let b_head: Vec<BigInt> = b.iter().take(order + 1).cloned().collect();
    let a = decompose(&b_head);
    let criterion = a.iter().all(|c| !c.is_negative());
    let big = run_transform(&TruncatedSeries::from_integers(order, &b_head), order)?;
    let direct = big.coeffs().iter().all(MultiPoly::is_nonnegative);
    Ok(NonnegVerdict { a, criterion, direct })
}

/// `C(x, y)` as the fixed point of `F -> (1-x)/(1-xy) + x F^2`.
pub fn catalan_bivariate(order: usize) -> Result<TruncatedSeries, TransformError> {
    let base = prefactor(order);
    Ok(fixed_point(TruncatedSeries::zero(order), |f| {
        base.try_add(&f.try_mul(f)?.shift(1))
    })?)
}

/// `sum_k a_k x^k C(x,y)^(k+1)` at the given order.
pub fn reconstruct_from_decomposition(
    a: &[BigInt],
    order: usize,
) -> Result<TruncatedSeries, TransformError> {
    let c = catalan_bivariate(order)?;
    let mut total = TruncatedSeries::zero(order);
    let mut power = c.clone();
    for (k, ak) in a.iter().enumerate().take(order + 1) {
        if !ak.is_zero() {
            total = total.try_add(&power.shift(k).scale(&MultiPoly::constant(ak.clone())))?;
        }
        power = power.try_mul(&c)?;
    }
    Ok(total)
}

/// Check the coefficient form of `x C(x,y)^2 = C(x,y) - (1-x)/(1-xy)` on the
/// computed triangle of `C(x, y)`.
pub fn triangle_recurrence_check(order: usize) -> Result<bool, TransformError> {
    let u = to_triangle(&catalan_bivariate(order)?)?;
    if *u.get(0, 0) != BigInt::one() {
        return Ok(false);
    }
    for n in 1..=order {
        for k in 0..=n {
            let mut conv = BigInt::zero();
            for i in 0..n {
                let i2 = n - 1 - i;
                for j in 0..=i.min(k) {
                    let j2 = k - j;
                    if j2 <= i2 {
                        conv += u.get(i, j) * u.get(i2, j2);
                    }
                }
            }
            let correction = if k == n {
                BigInt::one()
            } else if k + 1 == n {
                -BigInt::one()
            } else {
                BigInt::zero()
            };
            if conv != u.get(n, k) - correction {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn rows(t: &Triangle) -> Vec<Vec<i64>> {
        t.rows()
            .iter()
            .map(|r| r.iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect()
    }

    #[test]
    fn transform_of_constant_one() {
        let f = run_transform(&TruncatedSeries::one(2), 2).unwrap();
        assert_eq!(f.coeff(1), &"y - 1".parse::<MultiPoly>().unwrap());
        assert_eq!(rows(&to_triangle(&f).unwrap()), vec![vec![1], vec![-1, 1], vec![0, -1, 1]]);
    }

    #[test]
    fn transform_of_catalan() {
        let c = TruncatedSeries::from_integers(3, &catalan_numbers(3));
        let t = to_triangle(&run_transform(&c, 3).unwrap()).unwrap();
        assert_eq!(rows(&t), vec![vec![1], vec![0, 1], vec![0, 1, 1], vec![0, 2, 2, 1]]);
        assert_eq!(run_transform(&c, 3).unwrap(), catalan_bivariate(3).unwrap());
    }

    #[test]
    fn transform_rejects_y() {
        let f = TruncatedSeries::monomial(2, 1, MultiPoly::y());
        assert_eq!(run_transform(&f, 2).unwrap_err(), TransformError::InvolvesY(1));
        assert!(matches!(
            run_transform(&TruncatedSeries::one(2), 3),
            Err(TransformError::Series(SeriesError::OrderTooLarge { .. }))
        ));
    }

    #[test]
    fn transform_keeps_z_marks() {
        let f = TruncatedSeries::from_coeffs(2, [MultiPoly::one(), MultiPoly::z(0)]);
        let g = run_transform(&f, 2).unwrap();
        assert_eq!(g.at_y_one(), f);
        assert!(matches!(to_triangle(&g), Err(TransformError::StrayZ(1))));
    }

    #[test]
    fn to_triangle_checks_degree() {
        let f = TruncatedSeries::constant(1, MultiPoly::y());
        assert_eq!(
            to_triangle(&f).unwrap_err(),
            TransformError::DegreeTooHigh { n: 0, degree: 1 }
        );
        let zero = to_triangle(&TruncatedSeries::zero(2)).unwrap();
        assert_eq!(rows(&zero), vec![vec![0], vec![0, 0], vec![0, 0, 0]]);
    }

    #[test]
    fn catalan_number_fixtures() {
        assert_eq!(catalan_numbers(6), big(&[1, 1, 2, 5, 14, 42, 132]));
        assert_eq!(catalan_numbers(0), big(&[1]));
        assert_eq!(catalan_numbers(10)[10], BigInt::from(16796));
    }

    #[test]
    fn catalan_matrix_fixtures() {
        let c = catalan_matrix(7);
        assert_eq!(c.row(0), big(&[1, 1, 2, 5, 14, 42, 132]).as_slice());
        assert_eq!(&c.row(2)[2..], big(&[1, 3, 9, 28, 90]).as_slice());
        assert_eq!(&c.row(3)[3..], big(&[1, 4, 14, 48]).as_slice());
        let inv = catalan_matrix_inverse(7);
        assert_eq!(inv.row(2), big(&[0, 0, 1, -3, 3, -1, 0]).as_slice());
        assert_eq!(inv.row(0), big(&[1, -1, 0, 0, 0, 0, 0]).as_slice());
        assert_eq!(c.mul(&inv), CatalanMatrix::identity(7));
        assert_eq!(inv.mul(&c), CatalanMatrix::identity(7));
    }

    /// Solve `b = a C` by forward substitution, without `C^{-1}`.
    fn solve_against_c(b: &[BigInt]) -> Vec<BigInt> {
        let c = catalan_matrix(b.len());
        let mut a: Vec<BigInt> = Vec::new();
        for j in 0..b.len() {
            let partial: BigInt = (0..j).map(|i| &a[i] * c.get(i, j)).sum();
            // diagonal entries are 1
            a.push(&b[j] - partial);
        }
        a
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&catalan_numbers(7)), big(&[1, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(decompose(&big(&[1, 0, 0, 0])), big(&[1, -1, 0, 0]));
        let bell = big(&[1, 1, 2, 5, 15, 52, 203, 877]);
        let oracle = solve_against_c(&bell);
        assert_eq!(oracle, big(&[1, 0, 0, 0, 1, 5, 21, 91]));
        assert_eq!(decompose(&bell), oracle);
    }

    #[test]
    fn nonneg_criterion_examples() {
        let v = nonneg_criterion(&catalan_numbers(8), 8).unwrap();
        assert!(v.verdict() && v.direct);
        assert_eq!(v.a[0], BigInt::one());
        assert!(v.a[1..].iter().all(Zero::is_zero));

        let v = nonneg_criterion(&big(&[1, 0, 0, 0]), 3).unwrap();
        assert_eq!(v.a, big(&[1, -1, 0, 0]));
        assert!(!v.verdict() && !v.direct);

        let bell = big(&[1, 1, 2, 5, 15, 52, 203, 877, 4140]);
        let v = nonneg_criterion(&bell, 8).unwrap();
        assert!(v.verdict() && v.direct);
    }

    #[test]
    fn catalan_bivariate_specializations() {
        let c = catalan_bivariate(8).unwrap();
        assert_eq!(c.at_y_one().integer_coeffs().unwrap(), catalan_numbers(8));
        assert_eq!(c.at_y_zero(), TruncatedSeries::one(8));
    }

    #[test]
    fn recurrence_check() {
        assert!(triangle_recurrence_check(0).unwrap());
        assert!(triangle_recurrence_check(3).unwrap());
        assert!(triangle_recurrence_check(12).unwrap());
    }

    #[test]
    fn decomposition_reconstructs_transform() {
        let b = big(&[2, 0, 7, 1, 3, 9, 4]);
        let lhs = run_transform(&TruncatedSeries::from_integers(6, &b), 6).unwrap();
        let rhs = reconstruct_from_decomposition(&decompose(&b), 6).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn triangle_exports() {
        let c = TruncatedSeries::from_integers(3, &catalan_numbers(3));
        let t = to_triangle(&run_transform(&c, 3).unwrap()).unwrap();
        assert_eq!(t.to_csv(), "1\n0,1\n0,1,1\n0,2,2,1\n");
        assert_eq!(
            t.to_bfile(),
            "0 1\n1 0\n2 1\n3 0\n4 1\n5 1\n6 0\n7 2\n8 2\n9 1\n"
        );
        let json = t.to_json();
        assert_eq!(json["order"], 3);
        assert_eq!(json["entries"]["3,1"].to_string(), "2");
        assert_eq!(t.row_sums(), catalan_numbers(3));
        assert_eq!(t.column(0), decompose(&catalan_numbers(3)));
        assert_eq!(Triangle::from_rows(t.rows().to_vec()).unwrap().to_series(), run_transform(&c, 3).unwrap());
        assert!(Triangle::from_rows(vec![vec![BigInt::one(), BigInt::one()]]).is_none());
    }

    fn by_composition(f: &TruncatedSeries, order: usize) -> TruncatedSeries {
        let pre = prefactor(order);
        pre.try_mul(&f.compose(&pre.shift(1)).unwrap()).unwrap()
    }

    proptest::proptest! {
        #[test]
        fn direct_sum_matches_composition(
            seq in proptest::collection::vec(-20i64..20, 1..8),
            level in -2i32..3,
        ) {
            let order = seq.len() - 1;
            let mut f = TruncatedSeries::from_integers(order, &seq);
            f.set_coeff(order, f.coeff(order).add(&MultiPoly::z(level)));
            proptest::prop_assert_eq!(run_transform(&f, order).unwrap(), by_composition(&f, order));
        }
    }
}
