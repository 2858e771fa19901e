//! Order-theoretic check of the lexicographic plane on rational grids: the
//! first-coordinate projection and the per-threshold utilities are monotone
//! along the lexicographic order, and together they strictly separate every
//! strict pair of grid points.

use num::integer::{gcd, lcm};
use num::{BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// The threshold utility at `r`: 0 left of the threshold, the second
/// coordinate on it, 1 right of it.
pub fn threshold_utility(r: &BigRational, x: &BigRational, y: &BigRational) -> BigRational {
    match x.cmp(r) {
        std::cmp::Ordering::Less => BigRational::zero(),
        std::cmp::Ordering::Equal => y.clone(),
        std::cmp::Ordering::Greater => BigRational::one(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LexDemoReport {
    pub denominator_bound: u32,
    pub grid_values: usize,
    pub grid_points: usize,
    /// The projection plus one threshold utility per grid value.
    pub functions_checked: usize,
    pub weak_implication_pairs: u64,
    pub strict_implication_pairs: u64,
    pub implication_violations: u64,
    pub first_violation: Option<String>,
    pub strict_pairs: u64,
    pub separated_pairs: u64,
    pub full_separation_coverage: bool,
    /// Claims about the full plane that a finite grid cannot decide.
    pub not_machine_checked: Vec<String>,
}

/// Distinct reduced fractions `p/q` with `0 < p/q < 1` and `q ≤ bound`,
/// ascending, as numerator/denominator pairs.
fn grid_values(bound: u32) -> Vec<(i64, i64)> {
    let mut vals: Vec<(i64, i64)> = Vec::new();
    for q in 2..=bound as i64 {
        for p in 1..q {
            if gcd(p, q) == 1 {
                vals.push((p, q));
            }
        }
    }
    vals.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    vals
}

/// First index pair `i < j` with `vals[i] > vals[j]`, scanning with a
/// running maximum; `None` means the table is monotone along the order of
/// the indices, i.e. every ordered index pair satisfies `vals[i] ≤ vals[j]`.
fn first_monotone_violation(vals: &[i64]) -> Option<(usize, usize)> {
    let mut max_idx = 0usize;
    for j in 1..vals.len() {
        if vals[j] < vals[max_idx] {
            return Some((max_idx, j));
        }
        if vals[j] > vals[max_idx] {
            max_idx = j;
        }
    }
    None
}

/// Grid sweep: build all points `(p/q, p'/q')` with denominators up to
/// `bound`, list them in lexicographic order, and check that the projection
/// and every threshold utility are monotone along that order (both
/// almost-representation implications), then that every strict pair is
/// strictly separated by the projection (different first coordinates) or by
/// the threshold utility at the shared first coordinate.
pub fn lexicographic_demo(bound: u32) -> Result<LexDemoReport> {
    if bound < 2 {
        return Err(Error::Precondition(
            "denominator bound must be at least 2".to_string(),
        ));
    }
    let values = grid_values(bound);
    let f = values.len();
    let scale = (1..=bound as i64).fold(1i64, lcm);
    let scaled: Vec<i64> = values.iter().map(|&(p, q)| p * (scale / q)).collect();
    debug_assert!(scaled.windows(2).all(|w| w[0] < w[1]));
    let n = f * f;
    let point_name = |idx: usize| {
        let (a, b) = (idx / f, idx % f);
        format!(
            "({}/{}, {}/{})",
            values[a].0, values[a].1, values[b].0, values[b].1
        )
    };

    // Points in index order (a major, b minor) are exactly in lexicographic
    // order, since the value list is ascending.
    let mut violations = 0u64;
    let mut first_violation = None;
    let mut table = vec![0i64; n];
    let scan = |table: &[i64], name: &str, violations: &mut u64, first: &mut Option<String>| {
        if let Some((i, j)) = first_monotone_violation(table) {
            *violations += 1;
            if first.is_none() {
                *first = Some(format!(
                    "{name} decreases from {} to {}",
                    point_name(i),
                    point_name(j)
                ));
            }
        }
    };
    for idx in 0..n {
        table[idx] = scaled[idx / f];
    }
    scan(&table, "projection", &mut violations, &mut first_violation);
    for k in 0..f {
        for idx in 0..n {
            let (a, b) = (idx / f, idx % f);
            table[idx] = match a.cmp(&k) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Equal => scaled[b],
                std::cmp::Ordering::Greater => scale,
            };
        }
        let name = format!("threshold utility at {}/{}", values[k].0, values[k].1);
        scan(&table, &name, &mut violations, &mut first_violation);
    }
    let functions = 1 + f;
    let pairs_per_function = (n as u64 * (n as u64 - 1)) / 2;
    let weak_pairs = functions as u64 * (pairs_per_function + n as u64);
    let strict_pairs_checked = functions as u64 * pairs_per_function;

    // Separation sweep: projection for pairs with different first
    // coordinates, the threshold utility at the shared value otherwise.
    let mut separated = 0u64;
    for a1 in 0..f {
        for a2 in (a1 + 1)..f {
            if scaled[a1] < scaled[a2] {
                separated += (f * f) as u64;
            }
        }
        for b1 in 0..f {
            for b2 in (b1 + 1)..f {
                if scaled[b1] < scaled[b2] {
                    separated += 1;
                }
            }
        }
    }
    let strict_total = (n as u64 * (n as u64 - 1)) / 2;

    Ok(LexDemoReport {
        denominator_bound: bound,
        grid_values: f,
        grid_points: n,
        functions_checked: functions,
        weak_implication_pairs: weak_pairs,
        strict_implication_pairs: strict_pairs_checked,
        implication_violations: violations,
        first_violation,
        strict_pairs: strict_total,
        separated_pairs: separated,
        full_separation_coverage: separated == strict_total,
        not_machine_checked: vec![
            "continuity of the projection and threshold utilities in the order topology of the full plane".to_string(),
            "non-representability of the full lexicographic plane by a single utility function".to_string(),
        ],
    })
}
