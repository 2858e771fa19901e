//! Scales: nested families of open sets indexed by a finite dyadic grid in
//! `(0,1]`, the inf-formula function they induce, and the extraction of
//! scale pairs from a separating continuous almost representation.

use std::collections::BTreeSet;

use num::{BigRational, One, Signed, Zero};
use serde::Serialize;

use crate::bits::full_mask;
use crate::error::{Error, Result};
use crate::ratio::{format_ratio, integer, is_dyadic, rational};
use crate::relations::FiniteRelation;
use crate::repcore::{verify_almost_representation, FunctionPair};
use crate::topology::FiniteTopology;

/// Open sets `G(r)` indexed by an ascending dyadic grid ending at 1.
/// Membership is positional over the ambient topology's point list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicScale {
    grid: Vec<BigRational>,
    sets: Vec<u64>,
    num_points: usize,
}

impl DyadicScale {
    pub fn new(grid: Vec<BigRational>, sets: Vec<u64>, num_points: usize) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::Precondition("scale grid is empty".to_string()));
        }
        if grid.len() != sets.len() {
            return Err(Error::Precondition(
                "scale grid and set family have different lengths".to_string(),
            ));
        }
        if num_points == 0 || num_points > 64 {
            return Err(Error::TooManyElements(num_points));
        }
        for w in grid.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Precondition(format!(
                    "scale grid is not strictly ascending at {}",
                    format_ratio(&w[1])
                )));
            }
        }
        for r in &grid {
            if !r.is_positive() || r > &BigRational::one() {
                return Err(Error::Precondition(format!(
                    "grid value {} is outside (0,1]",
                    format_ratio(r)
                )));
            }
            if !is_dyadic(r) {
                return Err(Error::Precondition(format!(
                    "grid value {} is not dyadic",
                    format_ratio(r)
                )));
            }
        }
        if grid.last() != Some(&BigRational::one()) {
            return Err(Error::Precondition(
                "scale grid must end at 1".to_string(),
            ));
        }
        let full = full_mask(num_points);
        if sets.iter().any(|&s| s & !full != 0) {
            return Err(Error::Precondition(
                "scale set mentions a point outside the carrier".to_string(),
            ));
        }
        Ok(DyadicScale {
            grid,
            sets,
            num_points,
        })
    }

    pub fn grid(&self) -> &[BigRational] {
        &self.grid
    }

    pub fn sets(&self) -> &[u64] {
        &self.sets
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    /// Largest gap between consecutive members of `{0} ∪ grid`.
    pub fn mesh(&self) -> BigRational {
        let mut prev = BigRational::zero();
        let mut mesh = BigRational::zero();
        for r in &self.grid {
            let gap = r - &prev;
            if gap > mesh {
                mesh = gap;
            }
            prev = r.clone();
        }
        mesh
    }

    /// The same scale restricted to a subgrid (which must end at 1).
    pub fn restrict(&self, grid: &[BigRational]) -> Result<DyadicScale> {
        let mut sets = Vec::with_capacity(grid.len());
        for r in grid {
            let idx = self
                .grid
                .iter()
                .position(|g| g == r)
                .ok_or_else(|| {
                    Error::Precondition(format!(
                        "grid value {} is not part of the scale",
                        format_ratio(r)
                    ))
                })?;
            sets.push(self.sets[idx]);
        }
        DyadicScale::new(grid.to_vec(), sets, self.num_points)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ScaleViolation {
    PointCountMismatch { scale: usize, topology: usize },
    /// `G(1)` is not the full point set.
    FullSetMissing,
    NotOpen { r: String },
    /// `closure(G(r1)) ⊄ G(r2)` for some `r1 < r2`.
    ClosureEscapes { r1: String, r2: String },
}

impl std::fmt::Display for ScaleViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScaleViolation::PointCountMismatch { scale, topology } => {
                write!(f, "scale covers {scale} points, topology has {topology}")
            }
            ScaleViolation::FullSetMissing => write!(f, "G(1) is not the full point set"),
            ScaleViolation::NotOpen { r } => write!(f, "G({r}) is not open"),
            ScaleViolation::ClosureEscapes { r1, r2 } => {
                write!(f, "closure(G({r1})) is not contained in G({r2})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaleValidation {
    pub valid: bool,
    pub violation: Option<ScaleViolation>,
}

/// Check the three scale invariants against an ambient topology: `G(1) = X`,
/// every `G(r)` open, and `closure(G(r1)) ⊆ G(r2)` whenever `r1 < r2`.
pub fn validate_scale(t: &FiniteTopology, sc: &DyadicScale) -> ScaleValidation {
    let fail = |violation| ScaleValidation {
        valid: false,
        violation: Some(violation),
    };
    if sc.num_points != t.n() {
        return fail(ScaleViolation::PointCountMismatch {
            scale: sc.num_points,
            topology: t.n(),
        });
    }
    if *sc.sets.last().expect("grid nonempty") != t.full() {
        return fail(ScaleViolation::FullSetMissing);
    }
    for (r, &s) in sc.grid.iter().zip(&sc.sets) {
        if !t.contains_open(s) {
            return fail(ScaleViolation::NotOpen {
                r: format_ratio(r),
            });
        }
    }
    for i in 0..sc.grid.len() {
        let closed = t.closure(sc.sets[i]);
        for j in i + 1..sc.grid.len() {
            if !crate::bits::is_subset(closed, sc.sets[j]) {
                return fail(ScaleViolation::ClosureEscapes {
                    r1: format_ratio(&sc.grid[i]),
                    r2: format_ratio(&sc.grid[j]),
                });
            }
        }
    }
    ScaleValidation {
        valid: true,
        violation: None,
    }
}

/// The inf-formula function `f(x) = min{r : x ∈ G(r)}`. Assumes a valid
/// scale, where `G(1) = X` makes the minimum exist at every point.
pub fn scale_to_function(sc: &DyadicScale) -> Vec<BigRational> {
    (0..sc.num_points)
        .map(|i| {
            sc.grid
                .iter()
                .zip(&sc.sets)
                .find(|(_, &s)| s & (1 << i) != 0)
                .map(|(r, _)| r.clone())
                .expect("valid scales contain every point in G(1)")
        })
        .collect()
}

/// Midpoint of `(lo, hi)` nudged upward until it avoids the finite `avoid`
/// set. Stays strictly inside the interval.
fn pick_mid(lo: &BigRational, hi: &BigRational, avoid: &BTreeSet<BigRational>) -> BigRational {
    let two = integer(2);
    let mut m = (lo + hi) / &two;
    while avoid.contains(&m) {
        m = (&m + hi) / &two;
    }
    m
}

/// Strictly increasing map from the dyadic `k/2^depth` grid into `(lo, hi)`,
/// avoiding a finite value set, by binary subdivision of the value interval.
/// The image of a grid point depends only on its value, so deeper grids
/// extend shallower ones.
fn alpha(
    mut num: u64,
    mut den: u64,
    lo: &BigRational,
    hi: &BigRational,
    avoid: &BTreeSet<BigRational>,
) -> BigRational {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    loop {
        let half = den / 2;
        let m = pick_mid(&lo, &hi, avoid);
        match num.cmp(&half) {
            std::cmp::Ordering::Equal => return m,
            std::cmp::Ordering::Less => {
                hi = m;
                den = half;
            }
            std::cmp::Ordering::Greater => {
                lo = m;
                num -= half;
                den = half;
            }
        }
    }
}

/// Build the two scale families of a separating continuous almost
/// representation: thresholds `α(r)` are placed strictly between `v(x)` and
/// `u(y)` (with `α(1)` above every table value), and the sets are the strict
/// sublevel sets `G*(r) = {z : v(z) < α(r)}`, `G**(r) = {z : u(z) < α(r)}`.
pub fn scales_from_almost_representation(
    r: &FiniteRelation,
    t: &FiniteTopology,
    p: &FunctionPair,
    x: &str,
    y: &str,
    depth: u32,
) -> Result<(DyadicScale, DyadicScale)> {
    if depth == 0 || depth > 12 {
        return Err(Error::Precondition(
            "depth must be between 1 and 12".to_string(),
        ));
    }
    t.points_match(r.labels())?;
    p.labels_match(r.labels())?;
    let xi = r.index_of(x)?;
    let yi = r.index_of(y)?;
    let strict = r.strict_part();
    if !strict.related(xi, yi) {
        return Err(Error::Precondition(format!("{x} ≺ {y} is required")));
    }
    if !verify_almost_representation(r, p)?.holds {
        return Err(Error::Precondition(
            "pair does not almost represent the relation".to_string(),
        ));
    }
    if !t.is_continuous(p.u()) || !t.is_continuous(p.v()) {
        return Err(Error::Precondition(
            "pair is not continuous on the topology".to_string(),
        ));
    }
    let lo = p.v()[xi].clone();
    let hi = p.u()[yi].clone();
    if lo >= hi {
        return Err(Error::Precondition(format!(
            "separation v({x}) < u({y}) is required"
        )));
    }
    let avoid: BTreeSet<BigRational> = p.u().iter().chain(p.v().iter()).cloned().collect();
    let top = avoid.iter().next_back().expect("nonempty tables").clone() + integer(1);
    let size = 1u64 << depth;
    let n = r.n();
    let mut grid = Vec::with_capacity(size as usize);
    let mut star_sets = Vec::with_capacity(size as usize);
    let mut dstar_sets = Vec::with_capacity(size as usize);
    for k in 1..=size {
        grid.push(rational(k as i64, size as i64));
        let cut = if k == size {
            top.clone()
        } else {
            alpha(k, size, &lo, &hi, &avoid)
        };
        let star = (0..n)
            .filter(|&z| p.v()[z] < cut)
            .fold(0u64, |m, z| m | (1 << z));
        let dstar = (0..n)
            .filter(|&z| p.u()[z] < cut)
            .fold(0u64, |m, z| m | (1 << z));
        star_sets.push(star);
        dstar_sets.push(dstar);
    }
    let gstar = DyadicScale::new(grid.clone(), star_sets, n)?;
    let gstarstar = DyadicScale::new(grid, dstar_sets, n)?;
    debug_assert!(validate_scale(t, &gstar).valid);
    debug_assert!(validate_scale(t, &gstarstar).valid);
    Ok((gstar, gstarstar))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalePairReport {
    pub a_holds: bool,
    pub b_holds: bool,
    pub c_holds: bool,
    pub violation: Option<String>,
}

/// Check the three conditions tying a scale pair to a relation and a strict
/// pair `(x, y)`:
/// (a) `z ≼ w` and `w ∈ G*(r)` imply `z ∈ G**(r)`;
/// (b) `z ≺ w` and `w ∈ G**(r)` imply `z ∈ G*(r)`;
/// (c) `x ∈ G*(r)` and `y ∉ G**(r)` for every grid value `r ≠ 1`.
pub fn check_scale_pair_conditions(
    r: &FiniteRelation,
    gstar: &DyadicScale,
    gstarstar: &DyadicScale,
    x: &str,
    y: &str,
) -> Result<ScalePairReport> {
    if gstar.grid != gstarstar.grid {
        return Err(Error::Precondition(
            "scales are indexed by different grids".to_string(),
        ));
    }
    if gstar.num_points != r.n() || gstarstar.num_points != r.n() {
        return Err(Error::MismatchedElements(
            "scales cover a different number of points than the relation".to_string(),
        ));
    }
    let xi = r.index_of(x)?;
    let yi = r.index_of(y)?;
    let strict = r.strict_part();
    let n = r.n();
    let mut a_holds = true;
    let mut b_holds = true;
    let mut c_holds = true;
    let mut violation: Option<String> = None;
    let note = |flag: &mut bool, v: &mut Option<String>, msg: String| {
        *flag = false;
        if v.is_none() {
            *v = Some(msg);
        }
    };
    for (idx, rv) in gstar.grid.iter().enumerate() {
        let gs = gstar.sets[idx];
        let gss = gstarstar.sets[idx];
        for z in 0..n {
            for w in 0..n {
                if r.related(z, w) && gs & (1 << w) != 0 && gss & (1 << z) == 0 {
                    note(
                        &mut a_holds,
                        &mut violation,
                        format!(
                            "(a) fails at z={}, w={}, r={}",
                            r.label(z),
                            r.label(w),
                            format_ratio(rv)
                        ),
                    );
                }
                if strict.related(z, w) && gss & (1 << w) != 0 && gs & (1 << z) == 0 {
                    note(
                        &mut b_holds,
                        &mut violation,
                        format!(
                            "(b) fails at z={}, w={}, r={}",
                            r.label(z),
                            r.label(w),
                            format_ratio(rv)
                        ),
                    );
                }
            }
        }
        if !rv.is_one() && (gs & (1 << xi) == 0 || gss & (1 << yi) != 0) {
            note(
                &mut c_holds,
                &mut violation,
                format!("(c) fails at r={}", format_ratio(rv)),
            );
        }
    }
    Ok(ScalePairReport {
        a_holds,
        b_holds,
        c_holds,
        violation,
    })
}
