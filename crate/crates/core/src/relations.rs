//! Finite binary relations on labeled element sets: axiom queries, strict
//! parts, composition, traces, sections, and equivalence classes.
//!
//! A relation is stored as one packed bit row per element, so the axiom
//! sweeps used by the exhaustive audits run on whole rows at a time. No
//! axiom is assumed by the type itself; reflexivity, totality, transitivity
//! and the Ferrers condition are always queried, never presumed.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::bits::{full_mask, is_subset, labels_of, ones};
use crate::error::{Error, Result};

/// Largest supported element count (rows are single machine words).
pub const MAX_ELEMENTS: usize = 64;

/// A binary relation on an ordered list of distinct labels. `related(i, j)`
/// reads "element i is below element j" for order-like relations.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRelation {
    labels: Vec<String>,
    rows: Vec<u64>,
}

/// Witness quadruple `(x, z, y, w)` with `x≼z`, `y≼w`, `¬(x≼w)`, `¬(y≼z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FerrersWitness {
    pub x: String,
    pub z: String,
    pub y: String,
    pub w: String,
}

impl fmt::Display for FerrersWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x={}, z={}, y={}, w={})", self.x, self.z, self.y, self.w)
    }
}

/// Result of the axiom sweep over one relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub reflexive: bool,
    pub total: bool,
    pub transitive: bool,
    pub ferrers: bool,
    pub interval_order: bool,
    pub total_preorder: bool,
    pub ferrers_witness: Option<FerrersWitness>,
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::EmptyElementList);
    }
    if labels.len() > MAX_ELEMENTS {
        return Err(Error::TooManyElements(labels.len()));
    }
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl FiniteRelation {
    /// Build from raw bit rows; `rows[i]` bit `j` means element i related to j.
    pub fn new(labels: Vec<String>, rows: Vec<u64>) -> Result<Self> {
        check_labels(&labels)?;
        if rows.len() != labels.len() {
            return Err(Error::MismatchedElements(format!(
                "{} labels but {} incidence rows",
                labels.len(),
                rows.len()
            )));
        }
        let full = full_mask(labels.len());
        let rows = rows.into_iter().map(|r| r & full).collect();
        Ok(FiniteRelation { labels, rows })
    }

    /// Build from `"0"`/`"1"` row strings, row i column j.
    pub fn from_bitstring_rows(labels: &[&str], rows: &[&str]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let mut bit_rows = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != labels.len() {
                return Err(Error::MismatchedElements(format!(
                    "row `{row}` has width {} but there are {} elements",
                    row.len(),
                    labels.len()
                )));
            }
            let mut mask = 0u64;
            for (j, c) in row.chars().enumerate() {
                match c {
                    '1' => mask |= 1 << j,
                    '0' => {}
                    other => {
                        return Err(Error::Precondition(format!(
                            "invalid incidence character `{other}`"
                        )))
                    }
                }
            }
            bit_rows.push(mask);
        }
        FiniteRelation::new(labels, bit_rows)
    }

    /// The identity relation (each element related only to itself).
    pub fn identity(labels: &[&str]) -> Result<Self> {
        let rows = (0..labels.len()).map(|i| 1u64 << i).collect();
        FiniteRelation::new(labels.iter().map(|s| s.to_string()).collect(), rows)
    }

    /// The all-related relation.
    pub fn full(labels: &[&str]) -> Result<Self> {
        let full = full_mask(labels.len());
        FiniteRelation::new(
            labels.iter().map(|s| s.to_string()).collect(),
            vec![full; labels.len()],
        )
    }

    /// Reflexive relation extended by the listed `(below, above)` pairs.
    pub fn reflexive_with(labels: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        let mut rel = FiniteRelation::identity(labels)?;
        for &(a, b) in pairs {
            let i = rel.index_of(a)?;
            let j = rel.index_of(b)?;
            rel.rows[i] |= 1 << j;
        }
        Ok(rel)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.rows[i] & (1 << j) != 0
    }

    /// Upper section `U(x) = {y : x R y}` of element `i`, as a mask.
    pub fn upper_mask(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// Lower section `L(x) = {y : y R x}` of element `j`, as a mask.
    pub fn lower_mask(&self, j: usize) -> u64 {
        let mut mask = 0u64;
        for (i, row) in self.rows.iter().enumerate() {
            if row & (1 << j) != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub(crate) fn labels_match(&self, other: &FiniteRelation) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::MismatchedElements(
                "relations are over different element lists".to_string(),
            ));
        }
        Ok(())
    }

    pub fn is_reflexive(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r & (1 << i) != 0)
    }

    pub fn is_irreflexive(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r & (1 << i) == 0)
    }

    pub fn is_total(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.related(i, j) || self.related(j, i)))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| ones(self.rows[i]).take_while(|&j| j < n).all(|j| is_subset(self.rows[j], self.rows[i])))
    }

    pub fn is_asymmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| !(self.related(i, j) && self.related(j, i))))
    }

    /// First quadruple violating `(x≼z ∧ y≼w) ⇒ (x≼w ∨ y≼z)`, if any.
    ///
    /// The condition fails at `(x, y)` exactly when the upper sections of `x`
    /// and `y` are incomparable under inclusion, so the scan is two nested
    /// loops over rows with word-level set differences.
    pub fn ferrers_violation(&self) -> Option<[usize; 4]> {
        let n = self.n();
        // Witness selection favours z ≠ x and w ≠ y, which keeps reflexive
        // pairs out of the report whenever a non-trivial quadruple exists.
        let pick = |mask: u64, avoid: usize| {
            let preferred = mask & !(1u64 << avoid);
            let m = if preferred != 0 { preferred } else { mask };
            m.trailing_zeros() as usize
        };
        for x in 0..n {
            for y in 0..n {
                let only_x = self.rows[x] & !self.rows[y];
                let only_y = self.rows[y] & !self.rows[x];
                if only_x != 0 && only_y != 0 {
                    let z = pick(only_x, x);
                    let w = pick(only_y, y);
                    return Some([x, z, y, w]);
                }
            }
        }
        None
    }

    /// Query every axiom at once.
    pub fn check_axioms(&self) -> AxiomReport {
        let reflexive = self.is_reflexive();
        let total = self.is_total();
        let transitive = self.is_transitive();
        let violation = self.ferrers_violation();
        let ferrers = violation.is_none();
        let witness = violation.map(|[x, z, y, w]| FerrersWitness {
            x: self.labels[x].clone(),
            z: self.labels[z].clone(),
            y: self.labels[y].clone(),
            w: self.labels[w].clone(),
        });
        AxiomReport {
            reflexive,
            total,
            transitive,
            ferrers,
            interval_order: reflexive && ferrers,
            total_preorder: reflexive && transitive && total,
            ferrers_witness: witness,
        }
    }

    /// Irreflexive part: `x ≺ y` iff `x ≼ y` and not `y ≼ x`.
    pub fn strict_part(&self) -> FiniteRelation {
        let n = self.n();
        let rows = (0..n)
            .map(|i| {
                let mut mask = 0u64;
                for j in 0..n {
                    if self.related(i, j) && !self.related(j, i) {
                        mask |= 1 << j;
                    }
                }
                mask
            })
            .collect();
        FiniteRelation {
            labels: self.labels.clone(),
            rows,
        }
    }

    /// Relational composition: `(i, j)` related iff some `k` has
    /// `self(i, k)` and `other(k, j)`. Both relations must share elements.
    pub fn compose(&self, other: &FiniteRelation) -> Result<FiniteRelation> {
        self.labels_match(other)?;
        let n = self.n();
        let rows = (0..n)
            .map(|i| {
                ones(self.rows[i])
                    .take_while(|&k| k < n)
                    .fold(0u64, |acc, k| acc | other.rows[k])
            })
            .collect();
        Ok(FiniteRelation {
            labels: self.labels.clone(),
            rows,
        })
    }

    /// The two trace preorders.
    ///
    /// The first relates `x` to `y` when the lower section of `x` is included
    /// in the lower section of `y`; the second when the upper section of `y`
    /// is included in the upper section of `x`. Both are reflexive and
    /// transitive for every input, and both are total when the input is an
    /// interval order.
    pub fn traces(&self) -> (FiniteRelation, FiniteRelation) {
        let n = self.n();
        let cols: Vec<u64> = (0..n).map(|j| self.lower_mask(j)).collect();
        let star_rows: Vec<u64> = (0..n)
            .map(|i| {
                let mut mask = 0u64;
                for j in 0..n {
                    if is_subset(cols[i], cols[j]) {
                        mask |= 1 << j;
                    }
                }
                mask
            })
            .collect();
        let dstar_rows: Vec<u64> = (0..n)
            .map(|i| {
                let mut mask = 0u64;
                for j in 0..n {
                    if is_subset(self.rows[j], self.rows[i]) {
                        mask |= 1 << j;
                    }
                }
                mask
            })
            .collect();
        (
            FiniteRelation {
                labels: self.labels.clone(),
                rows: star_rows,
            },
            FiniteRelation {
                labels: self.labels.clone(),
                rows: dstar_rows,
            },
        )
    }

    /// Lower and upper sections of a labeled element.
    pub fn sections(&self, label: &str) -> Result<(Vec<String>, Vec<String>)> {
        let i = self.index_of(label)?;
        Ok((
            labels_of(self.lower_mask(i), &self.labels),
            labels_of(self.upper_mask(i), &self.labels),
        ))
    }

    /// Partition by the symmetric part `x ~ y ⟺ xRy ∧ yRx`.
    ///
    /// The input must be a total preorder (callers typically pass a trace);
    /// classes are listed in order of their smallest element.
    pub fn equivalence_classes(&self) -> Result<Vec<Vec<String>>> {
        let report = self.check_axioms();
        if !report.total_preorder {
            let why = if !report.reflexive {
                "not reflexive"
            } else if !report.transitive {
                "not transitive"
            } else {
                "not total"
            };
            return Err(Error::NotTotalPreorder(why.to_string()));
        }
        let n = self.n();
        let mut seen = 0u64;
        let mut classes = Vec::new();
        for i in 0..n {
            if seen & (1 << i) != 0 {
                continue;
            }
            let mut class = 0u64;
            for j in 0..n {
                if self.related(i, j) && self.related(j, i) {
                    class |= 1 << j;
                }
            }
            seen |= class;
            classes.push(labels_of(class, &self.labels));
        }
        Ok(classes)
    }

    /// Incidence rows as bitstrings (row i column j), for reports.
    pub fn to_bitstring_rows(&self) -> Vec<String> {
        let n = self.n();
        self.rows
            .iter()
            .map(|&r| crate::bits::bitstring(r, n))
            .collect()
    }
}

impl fmt::Debug for FiniteRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteRelation({:?}, [{}])",
            self.labels,
            self.to_bitstring_rows().join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_abc() -> FiniteRelation {
        // Full ≤ order on {a,b,c}.
        FiniteRelation::from_bitstring_rows(&["a", "b", "c"], &["111", "011", "001"]).unwrap()
    }

    /// Interval-order incidence for intervals x=[0,1], y=[1/2,2], z=[3/2,3]
    /// under `left endpoint of the row ≤ right endpoint of the column`,
    /// evaluated pairwise from the endpoints.
    fn three_intervals() -> FiniteRelation {
        let ends = [
            (crate::ratio::rational(0, 1), crate::ratio::rational(1, 1)),
            (crate::ratio::rational(1, 2), crate::ratio::rational(2, 1)),
            (crate::ratio::rational(3, 2), crate::ratio::rational(3, 1)),
        ];
        let labels = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let mut rows = vec![0u64; 3];
        for i in 0..3 {
            for j in 0..3 {
                if ends[i].0 <= ends[j].1 {
                    rows[i] |= 1 << j;
                }
            }
        }
        FiniteRelation::new(labels, rows).unwrap()
    }

    #[test]
    fn singleton_is_interval_order() {
        let r = FiniteRelation::identity(&["a"]).unwrap();
        assert!(r.check_axioms().interval_order);
    }

    #[test]
    fn two_plus_two_fails_ferrers_at_quoted_quadruple() {
        let r =
            FiniteRelation::reflexive_with(&["x", "y", "z", "w"], &[("x", "z"), ("y", "w")])
                .unwrap();
        let report = r.check_axioms();
        assert!(!report.ferrers);
        assert!(!report.interval_order);
        let w = report.ferrers_witness.unwrap();
        assert_eq!((w.x.as_str(), w.z.as_str(), w.y.as_str(), w.w.as_str()), ("x", "z", "y", "w"));
    }

    #[test]
    fn ferrers_witnesses_are_genuine_violations() {
        // Every reported quadruple must satisfy x≼z, y≼w, ¬(x≼w), ¬(y≼z).
        let labels = ["a", "b", "c"];
        for code in 0u32..512 {
            let rows: Vec<u64> = (0..3)
                .map(|i| ((code >> (3 * i)) & 0b111) as u64)
                .collect();
            let r = FiniteRelation::new(labels.iter().map(|s| s.to_string()).collect(), rows)
                .unwrap();
            if let Some([x, z, y, w]) = r.ferrers_violation() {
                assert!(r.related(x, z) && r.related(y, w));
                assert!(!r.related(x, w) && !r.related(y, z));
            }
        }
    }

    #[test]
    fn chain_is_interval_order_and_total_preorder() {
        let report = chain_abc().check_axioms();
        assert!(report.interval_order);
        assert!(report.total_preorder);
    }

    #[test]
    fn strict_part_of_symmetric_relation_is_empty() {
        let r = FiniteRelation::full(&["a", "b"]).unwrap();
        let s = r.strict_part();
        assert!(s.rows().iter().all(|&m| m == 0));
    }

    #[test]
    fn strict_part_of_chain() {
        let s = chain_abc().strict_part();
        assert_eq!(s.to_bitstring_rows(), vec!["011", "001", "000"]);
        assert!(s.is_irreflexive());
        assert!(s.is_asymmetric());
    }

    #[test]
    fn strict_part_of_three_intervals() {
        let r = three_intervals();
        assert!(r.check_axioms().interval_order);
        let s = r.strict_part();
        // Only x ≺ z: 0 ≤ 3 holds one way and 3/2 ≤ 1 fails the other.
        assert_eq!(s.to_bitstring_rows(), vec!["001", "000", "000"]);
    }

    #[test]
    fn compose_identity_and_empty() {
        let id = FiniteRelation::identity(&["a", "b", "c"]).unwrap();
        let chain = chain_abc();
        assert_eq!(id.compose(&chain).unwrap(), chain);
        let empty = FiniteRelation::new(
            chain.labels().to_vec(),
            vec![0, 0, 0],
        )
        .unwrap();
        assert_eq!(empty.compose(&chain).unwrap(), empty);
    }

    #[test]
    fn compose_strict_chain_with_itself() {
        let s = chain_abc().strict_part();
        let ss = s.compose(&s).unwrap();
        // Only a ≺≺ c via the middle element b.
        assert_eq!(ss.to_bitstring_rows(), vec!["001", "000", "000"]);
    }

    #[test]
    fn compose_requires_same_elements() {
        let a = FiniteRelation::identity(&["a", "b"]).unwrap();
        let b = FiniteRelation::identity(&["a", "c"]).unwrap();
        assert!(matches!(a.compose(&b), Err(Error::MismatchedElements(_))));
    }

    /// Definition-level oracle for the traces: direct quantifier expansion.
    fn traces_by_definition(r: &FiniteRelation) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
        let n = r.n();
        let mut star = vec![vec![false; n]; n];
        let mut dstar = vec![vec![false; n]; n];
        for x in 0..n {
            for y in 0..n {
                star[x][y] = (0..n).all(|z| !r.related(z, x) || r.related(z, y));
                dstar[x][y] = (0..n).all(|z| !r.related(y, z) || r.related(x, z));
            }
        }
        (star, dstar)
    }

    #[test]
    fn traces_match_definition_exhaustively_n3() {
        // All 512 relations on 3 elements, axioms irrelevant.
        let labels = ["a", "b", "c"];
        for code in 0u32..512 {
            let rows: Vec<u64> = (0..3)
                .map(|i| ((code >> (3 * i)) & 0b111) as u64)
                .collect();
            let r = FiniteRelation::new(labels.iter().map(|s| s.to_string()).collect(), rows)
                .unwrap();
            let (star, dstar) = r.traces();
            let (star_def, dstar_def) = traces_by_definition(&r);
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(star.related(i, j), star_def[i][j]);
                    assert_eq!(dstar.related(i, j), dstar_def[i][j]);
                }
            }
            // Inclusion-based traces are preorders for every input.
            assert!(star.is_reflexive() && star.is_transitive());
            assert!(dstar.is_reflexive() && dstar.is_transitive());
        }
    }

    #[test]
    fn traces_of_total_preorder_equal_the_relation() {
        let r = chain_abc();
        let (star, dstar) = r.traces();
        assert_eq!(star, r);
        assert_eq!(dstar, r);
    }

    #[test]
    fn traces_of_three_intervals() {
        let r = three_intervals();
        let (star, dstar) = r.traces();
        // x ≺* y, y ~* z; x ~** y, y ≺** z.
        assert!(star.related(0, 1) && !star.related(1, 0));
        assert!(star.related(1, 2) && star.related(2, 1));
        assert!(dstar.related(0, 1) && dstar.related(1, 0));
        assert!(dstar.related(1, 2) && !dstar.related(2, 1));
    }

    #[test]
    fn traces_of_all_related_relation_are_all_related() {
        let r = FiniteRelation::full(&["a", "b", "c"]).unwrap();
        let (star, dstar) = r.traces();
        assert_eq!(star, r);
        assert_eq!(dstar, r);
    }

    #[test]
    fn sections_examples() {
        let id = FiniteRelation::identity(&["a", "b"]).unwrap();
        assert_eq!(
            id.sections("a").unwrap(),
            (vec!["a".to_string()], vec!["a".to_string()])
        );
        let chain = chain_abc();
        assert_eq!(
            chain.sections("b").unwrap(),
            (
                vec!["a".to_string(), "b".to_string()],
                vec!["b".to_string(), "c".to_string()]
            )
        );
        let strict = chain.strict_part();
        assert_eq!(
            strict.sections("b").unwrap(),
            (vec!["a".to_string()], vec!["c".to_string()])
        );
        assert!(matches!(
            chain.sections("q"),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn equivalence_classes_examples() {
        let all = FiniteRelation::full(&["a", "b", "c"]).unwrap();
        assert_eq!(
            all.equivalence_classes().unwrap(),
            vec![vec!["a".to_string(), "b".to_string(), "c".to_string()]]
        );
        let chain = chain_abc();
        assert_eq!(
            chain.equivalence_classes().unwrap(),
            vec![vec!["a".to_string()], vec!["b".to_string()], vec!["c".to_string()]]
        );
        let (star, _) = three_intervals().traces();
        assert_eq!(
            star.equivalence_classes().unwrap(),
            vec![vec!["x".to_string()], vec!["y".to_string(), "z".to_string()]]
        );
        let not_preorder = three_intervals();
        assert!(matches!(
            not_preorder.equivalence_classes(),
            Err(Error::NotTotalPreorder(_))
        ));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(matches!(
            FiniteRelation::identity(&["a", "a"]),
            Err(Error::DuplicateLabel(_))
        ));
    }
}
