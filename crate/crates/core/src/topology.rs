//! Finite topological spaces stored extensionally as their full family of
//! open sets. Openness tests are set lookups; connectedness is read off the
//! comparability graph of the specialization structure.

use std::collections::BTreeSet;
use std::fmt;

use num::BigRational;
use serde::Serialize;

use crate::bits::{full_mask, is_subset, labels_of, ones, set_notation};
use crate::error::{Error, Result};
use crate::relations::FiniteRelation;

/// Family of open subsets of an ordered point list. The constructor enforces
/// that the empty set and the full set are present and that the family is
/// closed under pairwise union and intersection, which on a finite carrier
/// is the whole topology axiom set.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    points: Vec<String>,
    opens: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Decreasing,
    Increasing,
}

/// Openness of the strict sections of a relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemicontinuityReport {
    pub upper: bool,
    pub lower: bool,
    pub continuous: bool,
}

/// Outcome of the point-wise search for monotone open covers of sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostSemicontinuityReport {
    pub holds: bool,
    /// For each point, the union of all qualifying opens (when `holds`).
    pub witness: Option<Vec<u64>>,
    pub failing_point: Option<String>,
}

impl FiniteTopology {
    pub fn new(points: Vec<String>, opens: Vec<u64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyElementList);
        }
        if points.len() > 64 {
            return Err(Error::TooManyElements(points.len()));
        }
        {
            let mut seen = BTreeSet::new();
            for p in &points {
                if !seen.insert(p) {
                    return Err(Error::DuplicateLabel(p.clone()));
                }
            }
        }
        let n = points.len();
        let full = full_mask(n);
        if opens.iter().any(|&o| o & !full != 0) {
            return Err(Error::InvalidTopology(
                "open set mentions a point outside the carrier".to_string(),
            ));
        }
        let mut sorted = opens.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidTopology(format!(
                    "duplicate open {}",
                    set_notation(w[0], &points)
                )));
            }
        }
        let family: BTreeSet<u64> = sorted.iter().copied().collect();
        if !family.contains(&0) {
            return Err(Error::InvalidTopology("missing ∅ in opens".to_string()));
        }
        if !family.contains(&full) {
            return Err(Error::InvalidTopology("missing X in opens".to_string()));
        }
        for &a in &family {
            for &b in &family {
                if a >= b {
                    continue;
                }
                if !family.contains(&(a | b)) {
                    return Err(Error::InvalidTopology(format!(
                        "missing union of {} and {}",
                        set_notation(a, &points),
                        set_notation(b, &points)
                    )));
                }
                if !family.contains(&(a & b)) {
                    return Err(Error::InvalidTopology(format!(
                        "missing intersection of {} and {}",
                        set_notation(a, &points),
                        set_notation(b, &points)
                    )));
                }
            }
        }
        Ok(FiniteTopology {
            points,
            opens: sorted,
        })
    }

    pub fn discrete(points: &[&str]) -> Result<Self> {
        let n = points.len();
        let opens = (0..(1u64 << n)).collect();
        FiniteTopology::new(points.iter().map(|s| s.to_string()).collect(), opens)
    }

    pub fn indiscrete(points: &[&str]) -> Result<Self> {
        let n = points.len();
        FiniteTopology::new(
            points.iter().map(|s| s.to_string()).collect(),
            vec![0, full_mask(n)],
        )
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> &[u64] {
        &self.opens
    }

    pub fn full(&self) -> u64 {
        full_mask(self.n())
    }

    pub fn contains_open(&self, mask: u64) -> bool {
        self.opens.binary_search(&mask).is_ok()
    }

    pub(crate) fn points_match(&self, labels: &[String]) -> Result<()> {
        if self.points != labels {
            return Err(Error::MismatchedElements(
                "topology points differ from the element list".to_string(),
            ));
        }
        Ok(())
    }

    /// Smallest closed set containing `s` (intersection of the closed
    /// supersets; the complement of every open is closed).
    pub fn closure(&self, s: u64) -> u64 {
        let full = self.full();
        debug_assert!(is_subset(s, full));
        let mut c = full;
        for &o in &self.opens {
            let closed = full & !o;
            if is_subset(s, closed) {
                c &= closed;
            }
        }
        c
    }

    /// Minimal open neighborhood of point `i` (finite families are closed
    /// under intersection, so this intersection is itself open).
    pub fn min_neighborhood(&self, i: usize) -> u64 {
        self.opens
            .iter()
            .filter(|&&o| o & (1 << i) != 0)
            .fold(self.full(), |acc, &o| acc & o)
    }

    /// Connected components of the comparability graph of the
    /// specialization structure, listed by smallest member. A rational
    /// value table is continuous on the space iff it is constant on each
    /// component.
    pub fn components(&self) -> Vec<u64> {
        let n = self.n();
        let nbhd: Vec<u64> = (0..n).map(|i| self.min_neighborhood(i)).collect();
        let mut component = vec![usize::MAX; n];
        let mut out: Vec<u64> = Vec::new();
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let idx = out.len();
            let mut mask = 0u64;
            let mut stack = vec![start];
            component[start] = idx;
            while let Some(i) = stack.pop() {
                mask |= 1 << i;
                for j in 0..n {
                    if component[j] == usize::MAX
                        && (nbhd[i] & (1 << j) != 0 || nbhd[j] & (1 << i) != 0)
                    {
                        component[j] = idx;
                        stack.push(j);
                    }
                }
            }
            out.push(mask);
        }
        out
    }

    /// Component index of every point, aligned with [`components`].
    pub fn component_ids(&self) -> Vec<usize> {
        let comps = self.components();
        let mut ids = vec![0usize; self.n()];
        for (c, &mask) in comps.iter().enumerate() {
            for i in ones(mask) {
                ids[i] = c;
            }
        }
        ids
    }

    /// Continuity of a rational value table: for every threshold strictly
    /// between two consecutive distinct values, both open rays must pull
    /// back to open sets.
    pub fn is_continuous(&self, f: &[BigRational]) -> bool {
        assert_eq!(f.len(), self.n(), "value table must cover every point");
        let mut distinct: Vec<&BigRational> = f.iter().collect();
        distinct.sort();
        distinct.dedup();
        for w in distinct.windows(2) {
            // Any threshold c with w[0] < c < w[1] yields the same preimages.
            let below = f
                .iter()
                .enumerate()
                .filter(|(_, v)| *v <= w[0])
                .fold(0u64, |m, (i, _)| m | (1 << i));
            let above = f
                .iter()
                .enumerate()
                .filter(|(_, v)| *v >= w[1])
                .fold(0u64, |m, (i, _)| m | (1 << i));
            if !self.contains_open(below) || !self.contains_open(above) {
                return false;
            }
        }
        true
    }

    /// Openness of the strict sections of `r`: upper semicontinuity asks for
    /// open strict lower sections, lower semicontinuity for open strict
    /// upper sections.
    pub fn relation_semicontinuity(&self, r: &FiniteRelation) -> Result<SemicontinuityReport> {
        self.points_match(r.labels())?;
        let strict = r.strict_part();
        let n = self.n();
        let upper = (0..n).all(|i| self.contains_open(strict.lower_mask(i)));
        let lower = (0..n).all(|i| self.contains_open(strict.upper_mask(i)));
        Ok(SemicontinuityReport {
            upper,
            lower,
            continuous: upper && lower,
        })
    }

    /// Search, point by point, for an open set that excludes the point,
    /// covers its strict section, and is monotone with respect to the strict
    /// part of `monotone_wrt`. The witness at each point is the union of all
    /// qualifying opens, which qualifies whenever any open does.
    pub fn check_almost_semicontinuity(
        &self,
        r: &FiniteRelation,
        side: Side,
        monotone_wrt: &FiniteRelation,
    ) -> Result<AlmostSemicontinuityReport> {
        self.points_match(r.labels())?;
        self.points_match(monotone_wrt.labels())?;
        let axioms = r.check_axioms();
        if !axioms.total_preorder {
            return Err(Error::NotTotalPreorder(
                "almost semicontinuity is defined for total preorders".to_string(),
            ));
        }
        let strict = r.strict_part();
        let mono = monotone_wrt.strict_part();
        let dir = match side {
            Side::Upper => Direction::Decreasing,
            Side::Lower => Direction::Increasing,
        };
        let n = self.n();
        let mut witness = Vec::with_capacity(n);
        for x in 0..n {
            let section = match side {
                Side::Upper => strict.lower_mask(x),
                Side::Lower => strict.upper_mask(x),
            };
            let mut found = false;
            let mut union = 0u64;
            for &o in &self.opens {
                if o & (1 << x) == 0 && is_subset(section, o) && is_monotone_set(o, &mono, dir) {
                    found = true;
                    union |= o;
                }
            }
            if !found {
                return Ok(AlmostSemicontinuityReport {
                    holds: false,
                    witness: None,
                    failing_point: Some(self.points[x].clone()),
                });
            }
            debug_assert!(self.contains_open(union));
            debug_assert!(is_monotone_set(union, &mono, dir));
            witness.push(union);
        }
        Ok(AlmostSemicontinuityReport {
            holds: true,
            witness: Some(witness),
            failing_point: None,
        })
    }

    /// Opens as membership bitstrings, for reports.
    pub fn to_bitstring_opens(&self) -> Vec<String> {
        self.opens
            .iter()
            .map(|&o| crate::bits::bitstring(o, self.n()))
            .collect()
    }

    pub fn labels_of_mask(&self, mask: u64) -> Vec<String> {
        labels_of(mask, &self.points)
    }
}

impl fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteTopology({:?}, [{}])",
            self.points,
            self.to_bitstring_opens().join(", ")
        )
    }
}

/// `decreasing`: membership propagates downward along the strict relation
/// (`w ∈ S` and `z ≺ w` imply `z ∈ S`); `increasing` is the dual.
pub fn is_monotone_set(set: u64, strict: &FiniteRelation, direction: Direction) -> bool {
    debug_assert!(strict.is_irreflexive());
    let n = strict.n();
    match direction {
        Direction::Decreasing => {
            ones(set).take_while(|&w| w < n).all(|w| is_subset(strict.lower_mask(w), set))
        }
        Direction::Increasing => {
            ones(set).take_while(|&z| z < n).all(|z| is_subset(strict.upper_mask(z), set))
        }
    }
}
