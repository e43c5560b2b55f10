//! Exhaustive generation of lattice paths with up-, flat- and downsteps,
//! and the statistics the run transform counts.
//!
//! A path family is fixed by a [`PathSpec`]: upsteps advance `(j, j)`,
//! flatsteps `(2, 0)` and downsteps `(1, -1)`. Paths start at `(0, m)`, end on
//! the x-axis and reach minimum level exactly `-d`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{Monomial, MultiPoly, Var};
use crate::series::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("size {size} exceeds the enumeration budget {limit} for this family")]
    BudgetExceeded { size: usize, limit: usize },
    #[error("invalid step character {0:?}")]
    BadStep(char),
    #[error("run of {run} U's is not a multiple of j = {j}")]
    PartialUpstep { run: usize, j: u32 },
    #[error("flatsteps are not allowed in this family")]
    FlatNotAllowed,
    #[error("path ends at height {0}, not on the x-axis")]
    WrongEnd(i64),
    #[error("path reaches level {found}, expected minimum {expected}")]
    WrongMinimum { found: i64, expected: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    /// A j-upstep `(j, j)`.
    Up,
    /// `(2, 0)`.
    Flat,
    /// `(1, -1)`.
    Down,
}

/// How the size of a path is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizeRule {
    /// Number of downsteps.
    Downs,
    /// `floor(#D / j)`.
    DownsOverJ,
    /// `#F + #D`.
    FlatsPlusDowns,
    /// `floor((#D + #F) / j)`.
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathSpec {
    pub j: u32,
    pub start_height: u32,
    pub min_level: u32,
    pub allow_flat: bool,
    pub size_rule: SizeRule,
    /// Abscissa advance of a flatstep.
    pub flat_width: u32,
}

impl PathSpec {
    pub fn dyck() -> Self {
        PathSpec {
            j: 1,
            start_height: 0,
            min_level: 0,
            allow_flat: false,
            size_rule: SizeRule::Downs,
            flat_width: 2,
        }
    }

    /// Nonnegative U-D paths with `k` more downsteps than upsteps.
    pub fn n_k(k: u32) -> Self {
        PathSpec {
            start_height: k,
            ..Self::dyck()
        }
    }

    /// Paths of j-upsteps and downsteps from `(0, m)` with minimum `-d`.
    pub fn jmd(j: u32, m: u32, d: u32) -> Self {
        PathSpec {
            j,
            start_height: m,
            min_level: d,
            allow_flat: false,
            size_rule: SizeRule::DownsOverJ,
            flat_width: 2,
        }
    }

    pub fn j_dyck(j: u32) -> Self {
        Self::jmd(j, 0, 0)
    }

    pub fn schroeder() -> Self {
        Self::amd(0, 0)
    }

    /// U-F-D paths from `(0, m)` with minimum `-d`, size `#F + #D`.
    pub fn amd(m: u32, d: u32) -> Self {
        PathSpec {
            j: 1,
            start_height: m,
            min_level: d,
            allow_flat: true,
            size_rule: SizeRule::FlatsPlusDowns,
            flat_width: 2,
        }
    }

    /// Uj-F-D paths with size `floor((#D + #F) / j)`.
    pub fn conjecture(j: u32, m: u32, d: u32, allow_flat: bool) -> Self {
        PathSpec {
            j,
            start_height: m,
            min_level: d,
            allow_flat,
            size_rule: SizeRule::Conjecture,
            flat_width: 2,
        }
    }

    pub fn with_flat_width(self, flat_width: u32) -> Self {
        PathSpec { flat_width, ..self }
    }

    pub fn size_of(&self, downs: usize, flats: usize) -> usize {
        let j = self.j as usize;
        match self.size_rule {
            SizeRule::Downs => downs,
            SizeRule::DownsOverJ => downs / j,
            SizeRule::FlatsPlusDowns => flats + downs,
            SizeRule::Conjecture => (downs + flats) / j,
        }
    }
}

/// Per-family enumeration limits on the requested size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathBudget {
    pub dyck: usize,
    pub schroeder: usize,
    pub jmd: usize,
}

impl Default for PathBudget {
    fn default() -> Self {
        PathBudget {
            dyck: 12,
            schroeder: 8,
            jmd: 8,
        }
    }
}

impl PathBudget {
    pub fn limit_for(&self, spec: &PathSpec) -> usize {
        if spec.allow_flat {
            self.schroeder
        } else if spec.j == 1 && spec.min_level == 0 {
            self.dyck
        } else {
            self.jmd
        }
    }

    pub fn check(&self, spec: &PathSpec, size: usize) -> Result<(), PathError> {
        let limit = self.limit_for(spec);
        if size > limit {
            return Err(PathError::BudgetExceeded { size, limit });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    spec: PathSpec,
    steps: Vec<Step>,
}

/// A maximal ascent, measured in unit upsteps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AscentInfo {
    pub unit_length: u32,
    pub end_height: i64,
    pub end_abscissa: i64,
    pub following_descent: u32,
}

impl AscentInfo {
    /// First half of a maximal pyramid `U^k D^k`.
    pub fn is_pyramid(&self) -> bool {
        self.following_descent >= self.unit_length
    }
}

/// Which pyramid ascents are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PyramidMode {
    All,
    /// Endpoint height divisible by the modulus.
    HeightMod(u32),
    /// Endpoint abscissa divisible by the modulus.
    AbscissaMod(u32),
}

impl PyramidMode {
    fn accepts(&self, a: &AscentInfo) -> bool {
        match *self {
            PyramidMode::All => true,
            PyramidMode::HeightMod(j) => a.end_height.rem_euclid(j as i64) == 0,
            PyramidMode::AbscissaMod(j) => a.end_abscissa.rem_euclid(j as i64) == 0,
        }
    }
}

impl Path {
    /// Validate a step sequence against the family's shape constraints.
    pub fn new(spec: PathSpec, steps: Vec<Step>) -> Result<Self, PathError> {
        let mut h = spec.start_height as i64;
        let mut low = h;
        for &s in &steps {
            match s {
                Step::Up => h += spec.j as i64,
                Step::Flat if !spec.allow_flat => return Err(PathError::FlatNotAllowed),
                Step::Flat => {}
                Step::Down => h -= 1,
            }
            low = low.min(h);
        }
        if h != 0 {
            return Err(PathError::WrongEnd(h));
        }
        if low != -(spec.min_level as i64) {
            return Err(PathError::WrongMinimum {
                found: low,
                expected: -(spec.min_level as i64),
            });
        }
        Ok(Path { spec, steps })
    }

    /// Parse the `U`/`F`/`D` text form, with `j` letters `U` per upstep.
    pub fn parse(spec: PathSpec, text: &str) -> Result<Self, PathError> {
        let mut steps = Vec::new();
        let mut ups = 0usize;
        let flush = |ups: &mut usize, steps: &mut Vec<Step>| -> Result<(), PathError> {
            if !(*ups).is_multiple_of(spec.j as usize) {
                return Err(PathError::PartialUpstep { run: *ups, j: spec.j });
            }
            steps.extend(std::iter::repeat_n(Step::Up, *ups / spec.j as usize));
            *ups = 0;
            Ok(())
        };
        for ch in text.chars() {
            match ch {
                'U' => ups += 1,
                'F' | 'D' => {
                    flush(&mut ups, &mut steps)?;
                    steps.push(if ch == 'F' { Step::Flat } else { Step::Down });
                }
                c if c.is_whitespace() => {}
                c => return Err(PathError::BadStep(c)),
            }
        }
        flush(&mut ups, &mut steps)?;
        Path::new(spec, steps)
    }

    pub fn spec(&self) -> &PathSpec {
        &self.spec
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    pub fn size(&self) -> usize {
        self.spec.size_of(self.count(Step::Down), self.count(Step::Flat))
    }

    pub fn ascents(&self) -> Vec<AscentInfo> {
        ascent_list(&self.spec, &self.steps)
    }

    pub fn pyramid_ascents(&self, mode: PyramidMode) -> usize {
        pyramid_ascent_count(&self.spec, &self.steps, mode)
    }

    pub fn flat_profile(&self) -> BTreeMap<i64, u32> {
        flat_profile(&self.spec, &self.steps)
    }

    /// Concatenate with `other`, which must start where `self` ends.
    pub fn steps_then(&self, other: &[Step]) -> Vec<Step> {
        let mut v = self.steps.clone();
        v.extend_from_slice(other);
        v
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            match s {
                Step::Up => {
                    for _ in 0..self.spec.j {
                        write!(f, "U")?;
                    }
                }
                Step::Flat => write!(f, "F")?,
                Step::Down => write!(f, "D")?,
            }
        }
        Ok(())
    }
}

/// Call `f` on every maximal ascent, left to right.
fn for_each_ascent(spec: &PathSpec, steps: &[Step], mut f: impl FnMut(AscentInfo)) {
    let j = spec.j as i64;
    let mut h = spec.start_height as i64;
    let mut xpos = 0i64;
    let mut i = 0;
    while i < steps.len() {
        match steps[i] {
            Step::Up => {
                let mut ups = 0u32;
                while i < steps.len() && steps[i] == Step::Up {
                    ups += 1;
                    h += j;
                    xpos += j;
                    i += 1;
                }
                let downs = steps[i..].iter().take_while(|&&s| s == Step::Down).count() as u32;
                f(AscentInfo {
                    unit_length: ups * spec.j,
                    end_height: h,
                    end_abscissa: xpos,
                    following_descent: downs,
                });
            }
            Step::Flat => {
                xpos += spec.flat_width as i64;
                i += 1;
            }
            Step::Down => {
                h -= 1;
                xpos += 1;
                i += 1;
            }
        }
    }
}

/// All maximal ascents of a step sequence, left to right.
pub fn ascent_list(spec: &PathSpec, steps: &[Step]) -> Vec<AscentInfo> {
    let mut out = Vec::new();
    for_each_ascent(spec, steps, |a| out.push(a));
    out
}

pub fn pyramid_ascent_count(spec: &PathSpec, steps: &[Step], mode: PyramidMode) -> usize {
    let mut count = 0;
    for_each_ascent(spec, steps, |a| {
        if a.is_pyramid() && mode.accepts(&a) {
            count += 1;
        }
    });
    count
}

/// Flatstep counts per level.
pub fn flat_profile(spec: &PathSpec, steps: &[Step]) -> BTreeMap<i64, u32> {
    let mut h = spec.start_height as i64;
    let mut out = BTreeMap::new();
    for &s in steps {
        match s {
            Step::Up => h += spec.j as i64,
            Step::Flat => *out.entry(h).or_insert(0) += 1,
            Step::Down => h -= 1,
        }
    }
    out
}

struct Walker<'a, F: FnMut(&[Step], usize)> {
    spec: PathSpec,
    max_size: usize,
    steps: Vec<Step>,
    emit: &'a mut F,
}

impl<F: FnMut(&[Step], usize)> Walker<'_, F> {
    /// Smallest size any completion of the current prefix can reach.
    fn size_lower_bound(&self, h: i64, low: i64, downs: usize, flats: usize) -> usize {
        let d = self.spec.min_level as i64;
        let more_downs = if low > -d { h + d } else { h.max(0) };
        self.spec.size_of(downs + more_downs as usize, flats)
    }

    fn walk(&mut self, h: i64, low: i64, downs: usize, flats: usize) {
        let d = self.spec.min_level as i64;
        if self.size_lower_bound(h, low, downs, flats) > self.max_size {
            return;
        }
        if h == 0 && low == -d {
            (self.emit)(&self.steps, self.spec.size_of(downs, flats));
        }
        // Up, Flat, Down: lexicographic output order.
        self.steps.push(Step::Up);
        self.walk(h + self.spec.j as i64, low, downs, flats);
        self.steps.pop();
        if self.spec.allow_flat {
            self.steps.push(Step::Flat);
            self.walk(h, low, downs, flats + 1);
            self.steps.pop();
        }
        if h > -d {
            self.steps.push(Step::Down);
            self.walk(h - 1, low.min(h - 1), downs + 1, flats);
            self.steps.pop();
        }
    }
}

/// Visit every path of the family with the given size, in lexicographic
/// order of steps (`Up < Flat < Down`).
pub fn for_each_path(spec: &PathSpec, size: usize, mut visit: impl FnMut(&[Step])) {
    for_each_path_up_to(spec, size, |steps, n| {
        if n == size {
            visit(steps)
        }
    });
}

/// Visit every path of size at most `max_size` together with its size, in
/// the same order as [`for_each_path`].
pub fn for_each_path_up_to(spec: &PathSpec, max_size: usize, mut visit: impl FnMut(&[Step], usize)) {
    let mut walker = Walker {
        spec: *spec,
        max_size,
        steps: Vec::new(),
        emit: &mut visit,
    };
    let m = spec.start_height as i64;
    walker.walk(m, m, 0, 0);
}

pub fn enumerate_paths(spec: &PathSpec, size: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for_each_path(spec, size, |steps| {
        out.push(Path {
            spec: *spec,
            steps: steps.to_vec(),
        })
    });
    out
}

/// What `path_distribution` records besides size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Marks {
    pub y_mode: PyramidMode,
    pub track_z: bool,
}

impl Marks {
    pub fn y(mode: PyramidMode) -> Self {
        Marks {
            y_mode: mode,
            track_z: false,
        }
    }

    pub fn yz(mode: PyramidMode) -> Self {
        Marks {
            y_mode: mode,
            track_z: true,
        }
    }
}

/// The monomial `y^pyr * prod z_l^(flats at l)` of one path.
pub fn path_monomial(spec: &PathSpec, steps: &[Step], marks: Marks) -> Monomial {
    let pyr = pyramid_ascent_count(spec, steps, marks.y_mode) as u32;
    let mut exps = vec![(Var::Y, pyr)];
    if marks.track_z {
        exps.extend(
            flat_profile(spec, steps)
                .into_iter()
                .map(|(l, c)| (Var::Z(l as i32), c)),
        );
    }
    Monomial::from_exponents(exps)
}

/// Sum of `x^size * path_monomial` over the family up to `order`, restricted
/// to paths accepted by `keep`.
pub fn path_distribution_filtered(
    spec: &PathSpec,
    order: usize,
    marks: Marks,
    budget: &PathBudget,
    mut keep: impl FnMut(&[Step]) -> bool,
) -> Result<TruncatedSeries, PathError> {
    budget.check(spec, order)?;
    // key: pyramid count, then (level, flats) pairs
    let mut counts: Vec<HashMap<Vec<i64>, u64>> = vec![HashMap::new(); order + 1];
    let mut key = Vec::new();
    let mut per_level = Vec::new();
    for_each_path_up_to(spec, order, |steps, n| {
        if !keep(steps) {
            return;
        }
        key.clear();
        key.push(pyramid_ascent_count(spec, steps, marks.y_mode) as i64);
        if marks.track_z {
            level_counts(spec, steps, &mut per_level);
            let low = -(spec.min_level as i64);
            key.extend(
                per_level
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c > 0)
                    .flat_map(|(i, &c)| [low + i as i64, c as i64]),
            );
        }
        match counts[n].get_mut(key.as_slice()) {
            Some(c) => *c += 1,
            None => {
                counts[n].insert(key.clone(), 1);
            }
        }
    });
    let coeffs = counts.into_iter().map(|c| {
        MultiPoly::from_terms(c.into_iter().map(|(k, count)| {
            let mut exps = vec![(Var::Y, k[0] as u32)];
            exps.extend(k[1..].chunks(2).map(|p| (Var::Z(p[0] as i32), p[1] as u32)));
            (Monomial::from_exponents(exps), BigInt::from(count))
        }))
    });
    Ok(TruncatedSeries::from_coeffs(order, coeffs))
}

/// Flatstep counts indexed by level plus `min_level`.
fn level_counts(spec: &PathSpec, steps: &[Step], out: &mut Vec<u32>) {
    out.clear();
    let mut h = spec.start_height as i64 + spec.min_level as i64;
    for &s in steps {
        match s {
            Step::Up => h += spec.j as i64,
            Step::Flat => {
                let i = h as usize;
                if out.len() <= i {
                    out.resize(i + 1, 0);
                }
                out[i] += 1;
            }
            Step::Down => h -= 1,
        }
    }
}

pub fn path_distribution(
    spec: &PathSpec,
    order: usize,
    marks: Marks,
    budget: &PathBudget,
) -> Result<TruncatedSeries, PathError> {
    path_distribution_filtered(spec, order, marks, budget, |_| true)
}

/// Number of paths of each size `0..=order`.
pub fn path_counts(spec: &PathSpec, order: usize) -> Vec<u64> {
    let mut counts = vec![0u64; order + 1];
    for_each_path_up_to(spec, order, |_, n| counts[n] += 1);
    counts
}
