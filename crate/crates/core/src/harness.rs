//! Named verification cases. Each pairs a brute-force distribution with the
//! run transform of its `y = 1` specialization (or with a closed form) and
//! reports the first coefficient where they differ.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{Monomial, MultiPoly};
use crate::paths::{path_distribution, path_distribution_filtered, Marks, PathBudget, PathError, PathSpec, PyramidMode, Step};
use crate::series::{fixed_point, fixed_point_system, SeriesError, TruncatedSeries};
use crate::spartitions::{family_distribution, FamilyId, RunMode, SPartitionBudget, SPartitionError};
use crate::transform::{big_to_json, catalan_bivariate, prefactor, run_transform, TransformError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid case parameters: {0}")]
    InvalidCase(String),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    SPartition(#[from] SPartitionError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl HarnessError {
    fn is_budget(&self) -> bool {
        matches!(
            self,
            HarnessError::Path(PathError::BudgetExceeded { .. })
                | HarnessError::SPartition(SPartitionError::BudgetExceeded { .. })
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    CatalanTriangle,
    TheoremNk(u32),
    JDyck(u32),
    Jmd(u32, u32, u32),
    RunClosedFamily(FamilyId),
    BellRemark,
    EvenCycles,
    SchroederBase,
    AmdTheorem(u32, u32),
    /// `flat_width` is the abscissa advance of a flatstep used for niceness.
    Conjecture { j: u32, m: u32, d: u32, flats: bool, flat_width: u32 },
}

impl CaseId {
    /// A conjecture cell with flatsteps of width 2.
    pub fn conjecture(j: u32, m: u32, d: u32) -> Self {
        CaseId::Conjecture { j, m, d, flats: true, flat_width: 2 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CaseId::CatalanTriangle => "catalan",
            CaseId::TheoremNk(_) => "nk",
            CaseId::JDyck(_) => "jdyck",
            CaseId::Jmd(..) => "jmd",
            CaseId::RunClosedFamily(_) => "family",
            CaseId::BellRemark => "bell",
            CaseId::EvenCycles => "even-cycles",
            CaseId::SchroederBase => "schroeder",
            CaseId::AmdTheorem(..) => "amd",
            CaseId::Conjecture { .. } => "conjecture",
        }
    }

    pub fn params(&self) -> Value {
        match self {
            CaseId::TheoremNk(k) => json!({ "k": k }),
            CaseId::JDyck(j) => json!({ "j": j }),
            CaseId::Jmd(j, m, d) => json!({ "j": j, "m": m, "d": d }),
            CaseId::RunClosedFamily(f) => json!({ "family": f.name() }),
            CaseId::AmdTheorem(m, d) => json!({ "m": m, "d": d }),
            CaseId::Conjecture { j, m, d, flats, flat_width } => {
                json!({ "j": j, "m": m, "d": d, "flats": flats, "flat_width": flat_width })
            }
            _ => json!({}),
        }
    }

    /// Largest order that stays inside the enumeration budgets.
    pub fn default_order(&self) -> usize {
        match self {
            CaseId::CatalanTriangle => 10,
            CaseId::TheoremNk(_) => 8,
            CaseId::JDyck(_) | CaseId::Jmd(..) => 6,
            CaseId::RunClosedFamily(FamilyId::SetPartitions) => 8,
            CaseId::RunClosedFamily(FamilyId::JCompatible(j, _)) => 8 / *j as usize,
            CaseId::RunClosedFamily(_) => 7,
            CaseId::BellRemark => 8,
            CaseId::EvenCycles => 4,
            CaseId::SchroederBase => 6,
            CaseId::AmdTheorem(..) => 5,
            CaseId::Conjecture { .. } => 5,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        let obj = params.as_object().expect("params are an object");
        if obj.is_empty() {
            return write!(f, "{}", self.name());
        }
        let parts: Vec<String> = obj.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}({})", self.name(), parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BudgetExceeded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BudgetExceeded => "budget-exceeded",
        })
    }
}

fn big_as_number<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    big_to_json(v).serialize(s)
}

/// The first coefficient where the two sides differ: `[x^x_power] monomial`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub x_power: usize,
    pub monomial: String,
    #[serde(serialize_with = "big_as_number")]
    pub expected: BigInt,
    #[serde(serialize_with = "big_as_number")]
    pub actual: BigInt,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub case: String,
    pub params: Value,
    pub order: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Discrepancy>,
    pub millis: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    fn label(&self) -> String {
        let obj = self.params.as_object();
        match obj.filter(|o| !o.is_empty()) {
            None => self.case.clone(),
            Some(o) => {
                let parts: Vec<String> = o.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!("{}({})", self.case, parts.join(","))
            }
        }
    }
}

/// Compare `expected` (oracle) with `actual` coefficient by coefficient.
pub fn first_discrepancy(expected: &TruncatedSeries, actual: &TruncatedSeries) -> Option<Discrepancy> {
    let order = expected.order().min(actual.order());
    for n in 0..=order {
        let (e, a) = (expected.coeff(n), actual.coeff(n));
        if e == a {
            continue;
        }
        let monos: BTreeSet<&Monomial> = e.terms().chain(a.terms()).map(|(m, _)| m).collect();
        for m in monos {
            let (ce, ca) = (e.coeff(m), a.coeff(m));
            if ce != ca {
                return Some(Discrepancy {
                    x_power: n,
                    monomial: m.to_string(),
                    expected: ce,
                    actual: ca,
                });
            }
        }
    }
    None
}

struct Outcome {
    discrepancy: Option<Discrepancy>,
    note: Option<String>,
}

impl Outcome {
    fn compare(expected: &TruncatedSeries, actual: &TruncatedSeries) -> Self {
        Outcome {
            discrepancy: first_discrepancy(expected, actual),
            note: None,
        }
    }

    /// Run the comparisons in turn and keep the first failure, labelled.
    fn first_of(checks: Vec<(&str, &TruncatedSeries, &TruncatedSeries)>) -> Self {
        for (label, e, a) in checks {
            if let Some(d) = first_discrepancy(e, a) {
                return Outcome {
                    discrepancy: Some(d),
                    note: Some(label.to_string()),
                };
            }
        }
        Outcome {
            discrepancy: None,
            note: None,
        }
    }
}

fn finish(
    case: &str,
    params: Value,
    order: usize,
    start: Instant,
    outcome: Result<Outcome, HarnessError>,
) -> Result<Report, HarnessError> {
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok(o) => Ok(Report {
            case: case.to_string(),
            params,
            order,
            status: if o.discrepancy.is_some() { Status::Fail } else { Status::Pass },
            discrepancy: o.discrepancy,
            millis,
            note: o.note,
        }),
        Err(e) if e.is_budget() => Ok(Report {
            case: case.to_string(),
            params,
            order,
            status: Status::BudgetExceeded,
            discrepancy: None,
            millis,
            note: Some(e.to_string()),
        }),
        Err(e) => Err(e),
    }
}

/// Oracle `G` against the run transform of `G(x, 1, z)`.
fn oracle_against_transform(oracle: &TruncatedSeries, order: usize) -> Result<Outcome, HarnessError> {
    let transformed = run_transform(&oracle.at_y_one(), order)?;
    Ok(Outcome::compare(oracle, &transformed))
}

fn paths_case(spec: PathSpec, marks: Marks, order: usize) -> Result<Outcome, HarnessError> {
    let oracle = path_distribution(&spec, order, marks, &PathBudget::default())?;
    oracle_against_transform(&oracle, order)
}

fn family_case(fam: &FamilyId, order: usize) -> Result<Outcome, HarnessError> {
    let mode = match fam {
        FamilyId::JCompatible(j, _) => RunMode::JRuns(*j),
        _ => RunMode::Runs,
    };
    let oracle = family_distribution(fam, order, mode, &SPartitionBudget::default())?;
    oracle_against_transform(&oracle, order)
}

fn validate(id: &CaseId) -> Result<(), HarnessError> {
    let bad = |msg: &str| Err(HarnessError::InvalidCase(format!("{id}: {msg}")));
    match id {
        CaseId::TheoremNk(0) => bad("k must be positive"),
        CaseId::JDyck(0) | CaseId::Jmd(0, ..) | CaseId::Conjecture { j: 0, .. } => {
            bad("j must be positive")
        }
        CaseId::Conjecture { flat_width: 0, .. } => bad("flat width must be positive"),
        CaseId::RunClosedFamily(FamilyId::Fk(1)) => bad("F_1 is not a built-in family"),
        CaseId::RunClosedFamily(FamilyId::NonnestingPartitions) => bad("family is not run-closed"),
        _ => Ok(()),
    }
}

/// `sum_n B_n x^n ((1-x)/(1-xy))^(n+1)` with `B_n` from the Bell triangle.
pub fn bell_closed_form(order: usize) -> Result<TruncatedSeries, SeriesError> {
    let bell = bell_numbers(order);
    let pre = prefactor(order);
    let mut total = TruncatedSeries::zero(order);
    let mut power = pre.clone();
    for (n, b) in bell.iter().enumerate() {
        total = total.try_add(&power.shift(n).scale(&MultiPoly::constant(b.clone())))?;
        power = power.try_mul(&pre)?;
    }
    Ok(total)
}

/// `B_0..=B_n` via the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(1)];
    let mut row = vec![BigInt::from(1)];
    while out.len() <= n {
        let mut next = vec![row.last().expect("nonempty row").clone()];
        for v in &row {
            let t = next.last().expect("nonempty row") + v;
            next.push(t);
        }
        out.push(next[0].clone());
        row = next;
    }
    out.truncate(n + 1);
    out
}

fn bell_case(order: usize) -> Result<Outcome, HarnessError> {
    let oracle = family_distribution(&FamilyId::SetPartitions, order, RunMode::Runs, &SPartitionBudget::default())?;
    let closed = bell_closed_form(order)?;
    // (1 - x) sum_n B_n (x (1 - x))^n
    let one_minus_x = TruncatedSeries::from_integers(order, &[1, -1]);
    let inner = TruncatedSeries::from_integers(order, &[0, 1, -1]);
    let bell = TruncatedSeries::from_integers(order, &bell_numbers(order));
    let column = one_minus_x.try_mul(&bell.compose(&inner)?)?;
    let oracle_column = oracle.at_y_zero();
    Ok(Outcome::first_of(vec![
        ("series identity", &oracle, &closed),
        ("y^0 column", &oracle_column, &column),
    ]))
}

fn conjecture_case(spec: PathSpec, order: usize) -> Result<Outcome, HarnessError> {
    let (j, flats) = (spec.j, spec.allow_flat);
    let marks = Marks::yz(PyramidMode::AbscissaMod(j));
    let oracle = path_distribution(&spec, order, marks, &PathBudget::default())?;
    let transformed = run_transform(&oracle.at_y_one(), order)?;
    let mut outcome = Outcome::compare(&oracle, &transformed);
    if outcome.discrepancy.is_some() && flats {
        let agree = oracle.at_z_one() == transformed.at_z_one();
        outcome.note = Some(if agree {
            "equal after z := 1".into()
        } else {
            "unequal after z := 1 as well".into()
        });
    }
    Ok(outcome)
}

/// Run one case at `order`.
pub fn run_case(id: &CaseId, order: usize) -> Result<Report, HarnessError> {
    validate(id)?;
    let start = Instant::now();
    let outcome = match id {
        CaseId::CatalanTriangle => paths_case(PathSpec::dyck(), Marks::y(PyramidMode::All), order),
        CaseId::TheoremNk(k) => theorem_nk(*k, order),
        CaseId::JDyck(j) => paths_case(PathSpec::j_dyck(*j), Marks::y(PyramidMode::HeightMod(*j)), order),
        CaseId::Jmd(j, m, d) => paths_case(PathSpec::jmd(*j, *m, *d), Marks::y(PyramidMode::HeightMod(*j)), order),
        CaseId::RunClosedFamily(fam) => family_case(fam, order),
        CaseId::BellRemark => bell_case(order),
        CaseId::EvenCycles => family_case(&even_cycles(), order),
        CaseId::SchroederBase => paths_case(PathSpec::schroeder(), Marks::yz(PyramidMode::All), order),
        CaseId::AmdTheorem(m, d) => paths_case(PathSpec::amd(*m, *d), Marks::yz(PyramidMode::All), order),
        CaseId::Conjecture { j, m, d, flats, flat_width } => {
            conjecture_case(PathSpec::conjecture(*j, *m, *d, *flats).with_flat_width(*flat_width), order)
        }
    };
    finish(id.name(), id.params(), order, start, outcome)
}

pub fn even_cycles() -> FamilyId {
    FamilyId::JCompatible(2, Box::new(FamilyId::PermutationCycles))
}

fn theorem_nk(k: u32, order: usize) -> Result<Outcome, HarnessError> {
    let oracle = path_distribution(&PathSpec::n_k(k), order, Marks::y(PyramidMode::All), &PathBudget::default())?;
    let transformed = run_transform(&oracle.at_y_one(), order)?;
    let closed = catalan_bivariate(order)?.pow(k + 1)?.shift(k as usize);
    Ok(Outcome::first_of(vec![
        ("run transform", &oracle, &transformed),
        ("x^k C(x,y)^(k+1)", &oracle, &closed),
    ]))
}

fn rational_factor(order: usize) -> Result<TruncatedSeries, SeriesError> {
    // (1 - xy) / (1 - x)
    prefactor(order).invert()
}

/// The `j`-Dyck series `F_0(x, y)` solved from
/// `F = (1-x)/(1-xy) + x ((1-xy)/(1-x))^(j-1) F^(j+1)`.
pub fn jdyck_series(j: u32, order: usize) -> Result<TruncatedSeries, SeriesError> {
    let base = prefactor(order);
    let factor = rational_factor(order)?.pow(j - 1)?.shift(1);
    fixed_point(TruncatedSeries::zero(order), |f| base.try_add(&factor.try_mul(&f.pow(j + 1)?)?))
}

/// Closed form of the `(j, m, d)` distribution assembled from `F_0`.
pub fn jmd_closed_form(j: u32, m: u32, d: u32, order: usize) -> Result<TruncatedSeries, SeriesError> {
    let k = m / j;
    let f0 = jdyck_series(j, order)?;
    let factor = rational_factor(order)?.pow(m + j * d - k)?;
    Ok(factor.try_mul(&f0.pow(m + 1 + (j + 1) * d)?)?.shift((k + d) as usize))
}

/// Brute-force `(j, m, d)` distribution against the closed form.
pub fn closed_form_check_jmd(j: u32, m: u32, d: u32, order: usize) -> Result<Report, HarnessError> {
    if j == 0 {
        return Err(HarnessError::InvalidCase("j must be positive".into()));
    }
    let start = Instant::now();
    let outcome = (|| {
        let spec = PathSpec::jmd(j, m, d);
        let oracle = path_distribution(&spec, order, Marks::y(PyramidMode::HeightMod(j)), &PathBudget::default())?;
        Ok(Outcome::compare(&oracle, &jmd_closed_form(j, m, d, order)?))
    })();
    finish("jmd-closed-form", json!({ "j": j, "m": m, "d": d }), order, start, outcome)
}

/// Solve the two-unknown system for `F_0` and `F_i` (`i` not divisible by
/// `j`), with `F = F_0 F_i^(j-1)`:
/// `F_0 = 1 + (y-1) F_0 x/(1-x) + xF/(1-xF)` and `F_i = 1/(1-xF)`.
pub fn jdyck_system(j: u32, order: usize) -> Result<(TruncatedSeries, TruncatedSeries), SeriesError> {
    let one = TruncatedSeries::one(order);
    let geometric = TruncatedSeries::from_integers(order, &vec![1; order + 1]);
    let y_minus_one = MultiPoly::y().sub(&MultiPoly::one());
    let coef = geometric.shift(1).scale(&y_minus_one);
    let sol = fixed_point_system(vec![TruncatedSeries::zero(order), TruncatedSeries::zero(order)], |v| {
        let (f0, fi) = (&v[0], &v[1]);
        let big_f = f0.try_mul(&fi.pow(j - 1)?)?;
        let inv = one.try_sub(&big_f.shift(1))?.invert()?;
        let new_f0 = one.try_add(&coef.try_mul(f0)?)?.try_add(&big_f.shift(1).try_mul(&inv)?)?;
        Ok(vec![new_f0, inv])
    })?;
    Ok((sol[0].clone(), sol[1].clone()))
}

/// The intermediate `j`-Dyck identities: `F_i = ((1-xy)/(1-x)) F_0`, the
/// polynomial equation for `F_0`, and agreement of `F_0` with enumeration.
pub fn jdyck_identities_check(j: u32, order: usize) -> Result<Report, HarnessError> {
    if j == 0 {
        return Err(HarnessError::InvalidCase("j must be positive".into()));
    }
    let start = Instant::now();
    let outcome = (|| {
        let (f0, fi) = jdyck_system(j, order)?;
        let eliminated = rational_factor(order)?.try_mul(&f0)?;
        // (1-x)^j - (1-x)^(j-1) (1-xy) F_0 + x (1-xy)^j F_0^(j+1)
        let one_minus_x = TruncatedSeries::from_integers(order, &[1, -1]);
        let one_minus_xy = TruncatedSeries::from_coeffs(order, [MultiPoly::one(), MultiPoly::y().neg()]);
        let lhs = one_minus_x
            .pow(j)?
            .try_sub(&one_minus_x.pow(j - 1)?.try_mul(&one_minus_xy)?.try_mul(&f0)?)?
            .try_add(&one_minus_xy.pow(j)?.try_mul(&f0.pow(j + 1)?)?.shift(1))?;
        let zero = TruncatedSeries::zero(order);
        let budget = PathBudget::default();
        let checks_f0 = if order <= budget.jmd {
            Some(path_distribution(&PathSpec::j_dyck(j), order, Marks::y(PyramidMode::HeightMod(j)), &budget)?)
        } else {
            None
        };
        let mut checks = vec![
            ("F_i = (1-xy)/(1-x) F_0", &eliminated, &fi),
            ("polynomial equation for F_0", &zero, &lhs),
        ];
        if let Some(oracle) = &checks_f0 {
            checks.push(("F_0 against enumeration", oracle, &f0));
        }
        Ok(Outcome::first_of(checks))
    })();
    finish("jdyck-identities", json!({ "j": j }), order, start, outcome)
}

fn starts_with_pyramid(steps: &[Step]) -> bool {
    let ups = steps.iter().take_while(|&&s| s == Step::Up).count();
    let downs = steps[ups..].iter().take_while(|&&s| s == Step::Down).count();
    ups > 0 && downs >= ups
}

/// Schröder paths beginning with a pyramid, against `xyF/(1-x)`.
pub fn schroeder_pyramid_start_check(order: usize) -> Result<Report, HarnessError> {
    let start = Instant::now();
    let outcome = (|| {
        let spec = PathSpec::schroeder();
        let marks = Marks::yz(PyramidMode::All);
        let budget = PathBudget::default();
        let f = path_distribution(&spec, order, marks, &budget)?;
        let h0 = path_distribution_filtered(&spec, order, marks, &budget, starts_with_pyramid)?;
        let geometric = TruncatedSeries::from_integers(order, &vec![1; order + 1]);
        let closed = f.try_mul(&geometric)?.shift(1).scale(&MultiPoly::y());
        Ok(Outcome::compare(&h0, &closed))
    })();
    finish("schroeder-pyramid-start", json!({}), order, start, outcome)
}

/// The level-shift recursion
/// `(1-xy)/(1-x) F_0 = 1 + sum_r x^r (1 + z_(r-1)) F_(r-1) ... F_0`.
pub fn schroeder_recursion_check(order: usize) -> Result<Report, HarnessError> {
    let start = Instant::now();
    let outcome = (|| {
        let f0 = path_distribution(&PathSpec::schroeder(), order, Marks::yz(PyramidMode::All), &PathBudget::default())?;
        let lhs = rational_factor(order)?.try_mul(&f0)?;
        let mut rhs = TruncatedSeries::one(order);
        let mut product = TruncatedSeries::one(order);
        for r in 1..=order {
            product = product.try_mul(&f0.shift_levels(r as i32 - 1))?;
            let weight = MultiPoly::one().add(&MultiPoly::z(r as i32 - 1));
            rhs = rhs.try_add(&product.shift(r).scale(&weight))?;
        }
        Ok(Outcome::compare(&lhs, &rhs))
    })();
    finish("schroeder-recursion", json!({}), order, start, outcome)
}

/// Anything the suite can run.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Case(CaseId),
    JmdClosedForm(u32, u32, u32),
    JDyckIdentities(u32),
    SchroederPyramidStart,
    SchroederRecursion,
}

impl Check {
    pub fn default_order(&self) -> usize {
        match self {
            Check::Case(id) => id.default_order(),
            Check::JmdClosedForm(..) => 6,
            Check::JDyckIdentities(_) => 8,
            Check::SchroederPyramidStart | Check::SchroederRecursion => 6,
        }
    }

    pub fn run(&self, order: usize) -> Result<Report, HarnessError> {
        match self {
            Check::Case(id) => run_case(id, order),
            Check::JmdClosedForm(j, m, d) => closed_form_check_jmd(*j, *m, *d, order),
            Check::JDyckIdentities(j) => jdyck_identities_check(*j, order),
            Check::SchroederPyramidStart => schroeder_pyramid_start_check(order),
            Check::SchroederRecursion => schroeder_recursion_check(order),
        }
    }
}

/// Every theorem-backed check. Conjecture cells other than the ones that
/// reduce to theorems are left to [`conjecture_scan`].
pub fn full_suite() -> Vec<Check> {
    let mut out = vec![Check::Case(CaseId::CatalanTriangle)];
    out.extend((1..=3).map(|k| Check::Case(CaseId::TheoremNk(k))));
    out.extend([2, 3].map(|j| Check::Case(CaseId::JDyck(j))));
    for j in [2, 3] {
        for m in 0..=3 {
            for d in 0..=2 {
                out.push(Check::Case(CaseId::Jmd(j, m, d)));
            }
            // the closed form undercounts once d >= 2
            for d in 0..=1 {
                out.push(Check::JmdClosedForm(j, m, d));
            }
        }
    }
    for fam in [
        FamilyId::AllSPartitions,
        FamilyId::SetPartitions,
        FamilyId::NoncrossingSPartitions,
        FamilyId::NonoverlappingPartitions,
        FamilyId::PermutationCycles,
        FamilyId::Fk(2),
        FamilyId::Fk(3),
    ] {
        out.push(Check::Case(CaseId::RunClosedFamily(fam)));
    }
    out.push(Check::Case(CaseId::BellRemark));
    out.push(Check::Case(CaseId::EvenCycles));
    out.push(Check::Case(CaseId::SchroederBase));
    for m in 0..=2 {
        for d in 0..=2 {
            out.push(Check::Case(CaseId::AmdTheorem(m, d)));
        }
    }
    out.push(Check::Case(CaseId::conjecture(1, 0, 0)));
    out.extend([2, 3].map(Check::JDyckIdentities));
    out.push(Check::SchroederPyramidStart);
    out.push(Check::SchroederRecursion);
    out.sort();
    out
}

/// Run checks in parallel; results come back in input order. `order`
/// overrides every check's default order.
pub fn run_checks(checks: &[Check], order: Option<usize>) -> Vec<Result<Report, HarnessError>> {
    checks
        .par_iter()
        .map(|c| c.run(order.unwrap_or_else(|| c.default_order())))
        .collect()
}

/// Conjecture cells over the grid, in `(j, m, d)` order.
pub fn conjecture_scan(
    js: &[u32],
    ms: &[u32],
    ds: &[u32],
    flats: bool,
    flat_width: u32,
    order: usize,
) -> Result<Vec<Report>, HarnessError> {
    let mut cells = Vec::new();
    for &j in js {
        for &m in ms {
            for &d in ds {
                cells.push(CaseId::Conjecture { j, m, d, flats, flat_width });
            }
        }
    }
    cells.par_iter().map(|c| run_case(c, order)).collect()
}

/// Plain-text table, one line per report.
pub fn summary_table(reports: &[Report]) -> String {
    let labels: Vec<String> = reports.iter().map(Report::label).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(4).max(4);
    let mut out = format!("{:<width$}  {:>5}  {:<15}  {:>7}  first discrepancy\n", "case", "order", "status", "ms");
    for (r, label) in reports.iter().zip(&labels) {
        let disc = match &r.discrepancy {
            Some(d) => format!("[x^{}] {}: expected {}, got {}", d.x_power, d.monomial, d.expected, d.actual),
            None => String::new(),
        };
        let note = r.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default();
        out.push_str(&format!(
            "{:<width$}  {:>5}  {:<15}  {:>7}  {}{}\n",
            label,
            r.order,
            r.status.to_string(),
            r.millis,
            disc,
            note
        ));
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    out.push_str(&format!("{passed}/{} passed\n", reports.len()));
    out
}
