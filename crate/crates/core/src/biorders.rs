//! Ferrers relations between two labeled sets: traces, staircase
//! representations with respect to `<` and `≤`, almost representation,
//! joint density, and weak continuity over a pair of topologies.
//!
//! The square case (both sets equal) is the strict part of an interval
//! order, so everything here also backs the interval-order bridge tests.

use num::{BigRational, Zero};
use serde::Serialize;

use crate::bits::{full_mask, is_subset, ones};
use crate::constraints::{ConstraintSystem, Feasibility};
use crate::error::{Error, Result};
use crate::ratio::{format_ratio, integer, pair_to_unit_interval, rational, unit_rescale_ints};
use crate::relations::FiniteRelation;
use crate::repcore::{CertConstraint, CycleCertificate};
use crate::topology::FiniteTopology;

/// A strict relation from row elements `A` to column elements `X`;
/// `strict(a, x)` reads `a ≺ x`, and `x ≼ a` abbreviates `¬(a ≺ x)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteBiorder {
    a_labels: Vec<String>,
    x_labels: Vec<String>,
    rows: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiorderFerrersWitness {
    pub a: String,
    pub b: String,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiorderFerrersReport {
    pub holds: bool,
    pub witness: Option<BiorderFerrersWitness>,
}

/// Value tables of a biorder representation: `v` on the row set, `u` on the
/// column set.
#[derive(Clone, PartialEq, Eq)]
pub struct BiorderPair {
    a_labels: Vec<String>,
    x_labels: Vec<String>,
    v: Vec<BigRational>,
    u: Vec<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReprMode {
    /// `a ≺ x ⟺ v(a) < u(x)`
    Strict,
    /// `a ≺ x ⟺ v(a) ≤ u(x)`
    Weak,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiorderCounterexample {
    pub a: String,
    pub x: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiorderVerifyReport {
    pub holds: bool,
    pub counterexample: Option<BiorderCounterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointDensityReport {
    pub holds: bool,
    pub failing_pair: Option<(String, String)>,
}

#[derive(Debug, Clone)]
pub struct BiorderSeparationWitness {
    pub a: String,
    pub x: String,
    pub pair: BiorderPair,
}

#[derive(Debug, Clone)]
pub struct BiorderWeakContinuityReport {
    pub holds: bool,
    pub witnesses: Vec<BiorderSeparationWitness>,
    pub failing_pair: Option<(String, String)>,
    pub certificate: Option<CycleCertificate>,
}

#[derive(Debug, Clone)]
pub struct BiorderContinuousDecision {
    pub feasible: bool,
    pub pair: Option<BiorderPair>,
    pub certificate: Option<CycleCertificate>,
}

impl BiorderPair {
    pub fn new(
        a_labels: Vec<String>,
        x_labels: Vec<String>,
        v: Vec<BigRational>,
        u: Vec<BigRational>,
    ) -> Result<Self> {
        if a_labels.is_empty() || x_labels.is_empty() {
            return Err(Error::EmptyElementList);
        }
        if v.len() != a_labels.len() || u.len() != x_labels.len() {
            return Err(Error::MismatchedElements(
                "value tables must cover both label lists".to_string(),
            ));
        }
        Ok(BiorderPair {
            a_labels,
            x_labels,
            v,
            u,
        })
    }

    pub fn a_labels(&self) -> &[String] {
        &self.a_labels
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x_labels
    }

    pub fn v(&self) -> &[BigRational] {
        &self.v
    }

    pub fn u(&self) -> &[BigRational] {
        &self.u
    }

    /// Joint normalization of both tables onto `[0,1]` (one affine map).
    pub fn to_unit_interval(&self) -> BiorderPair {
        let (u, v) = pair_to_unit_interval(&self.u, &self.v);
        BiorderPair {
            a_labels: self.a_labels.clone(),
            x_labels: self.x_labels.clone(),
            v,
            u,
        }
    }
}

impl std::fmt::Debug for BiorderPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vs: Vec<String> = self
            .a_labels
            .iter()
            .zip(&self.v)
            .map(|(l, r)| format!("v({l})={}", format_ratio(r)))
            .collect();
        let us: Vec<String> = self
            .x_labels
            .iter()
            .zip(&self.u)
            .map(|(l, r)| format!("u({l})={}", format_ratio(r)))
            .collect();
        write!(f, "BiorderPair[{}; {}]", vs.join(", "), us.join(", "))
    }
}

impl FiniteBiorder {
    pub fn new(a_labels: Vec<String>, x_labels: Vec<String>, rows: Vec<u64>) -> Result<Self> {
        for labels in [&a_labels, &x_labels] {
            if labels.is_empty() {
                return Err(Error::EmptyElementList);
            }
            if labels.len() > 64 {
                return Err(Error::TooManyElements(labels.len()));
            }
            let mut seen = std::collections::BTreeSet::new();
            for l in labels.iter() {
                if !seen.insert(l) {
                    return Err(Error::DuplicateLabel(l.clone()));
                }
            }
        }
        if rows.len() != a_labels.len() {
            return Err(Error::MismatchedElements(format!(
                "{} row labels but {} rows",
                a_labels.len(),
                rows.len()
            )));
        }
        let full = full_mask(x_labels.len());
        let rows = rows.into_iter().map(|r| r & full).collect();
        Ok(FiniteBiorder {
            a_labels,
            x_labels,
            rows,
        })
    }

    pub fn from_bitstring_rows(a: &[&str], x: &[&str], rows: &[&str]) -> Result<Self> {
        let mut bit_rows = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != x.len() {
                return Err(Error::MismatchedElements(format!(
                    "row `{row}` has width {} but there are {} columns",
                    row.len(),
                    x.len()
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
        FiniteBiorder::new(
            a.iter().map(|s| s.to_string()).collect(),
            x.iter().map(|s| s.to_string()).collect(),
            bit_rows,
        )
    }

    pub fn m(&self) -> usize {
        self.a_labels.len()
    }

    pub fn n(&self) -> usize {
        self.x_labels.len()
    }

    pub fn a_labels(&self) -> &[String] {
        &self.a_labels
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x_labels
    }

    pub fn strict(&self, a: usize, x: usize) -> bool {
        self.rows[a] & (1 << x) != 0
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// `L(x) = {a : a ≺ x}` as a mask over the row set.
    pub fn column_mask(&self, x: usize) -> u64 {
        let mut mask = 0u64;
        for (a, row) in self.rows.iter().enumerate() {
            if row & (1 << x) != 0 {
                mask |= 1 << a;
            }
        }
        mask
    }

    pub fn a_index(&self, label: &str) -> Result<usize> {
        self.a_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn x_index(&self, label: &str) -> Result<usize> {
        self.x_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// `(a≺x ∧ b≺y) ⇒ (a≺y ∨ b≺x)` over all quadruples; fails exactly when
    /// two rows are incomparable under inclusion.
    pub fn check_ferrers(&self) -> BiorderFerrersReport {
        for a in 0..self.m() {
            for b in 0..self.m() {
                let only_a = self.rows[a] & !self.rows[b];
                let only_b = self.rows[b] & !self.rows[a];
                if only_a != 0 && only_b != 0 {
                    let x = only_a.trailing_zeros() as usize;
                    let y = only_b.trailing_zeros() as usize;
                    return BiorderFerrersReport {
                        holds: false,
                        witness: Some(BiorderFerrersWitness {
                            a: self.a_labels[a].clone(),
                            b: self.a_labels[b].clone(),
                            x: self.x_labels[x].clone(),
                            y: self.x_labels[y].clone(),
                        }),
                    };
                }
            }
        }
        BiorderFerrersReport {
            holds: true,
            witness: None,
        }
    }

    /// The two weak traces, obtained by composing the strict and weak
    /// rectangular tables and complementing: on the row set,
    /// `a ≼* b ⟺ ¬∃x (b ≺ x ∧ x ≼ a)`; on the column set,
    /// `x ≼** y ⟺ ¬∃a (y ≼ a ∧ a ≺ x)`.
    pub fn traces(&self) -> (FiniteRelation, FiniteRelation) {
        let m = self.m();
        let n = self.n();
        let full_x = full_mask(n);
        // strict∘weak on A: (b, a) related iff ∃x: b ≺ x and x ≼ a.
        let star_rows: Vec<u64> = (0..m)
            .map(|a| {
                let mut mask = 0u64;
                for b in 0..m {
                    let through = self.rows[b] & (full_x & !self.rows[a]);
                    if through == 0 {
                        mask |= 1 << b;
                    }
                }
                mask
            })
            .collect();
        let cols: Vec<u64> = (0..n).map(|x| self.column_mask(x)).collect();
        // weak∘strict on X: (y, x) related iff ∃a: y ≼ a and a ≺ x.
        let dstar_rows: Vec<u64> = (0..n)
            .map(|x| {
                let mut mask = 0u64;
                for y in 0..n {
                    let full_a = full_mask(self.m());
                    let through = (full_a & !cols[y]) & cols[x];
                    if through == 0 {
                        mask |= 1 << y;
                    }
                }
                mask
            })
            .collect();
        (
            FiniteRelation::new(self.a_labels.clone(), star_rows)
                .expect("trace carrier matches row labels"),
            FiniteRelation::new(self.x_labels.clone(), dstar_rows)
                .expect("trace carrier matches column labels"),
        )
    }

    /// Staircase representation of a Ferrers table. The distinct column
    /// sections plus `∅` sort into a chain; `u(x)` is the chain index of
    /// `L(x)` and `v(a)` the first chain index containing `a` (chain length
    /// when none). Weak mode returns those integers; strict mode shifts `v`
    /// down by `1/2`. The biconditional sweep runs before returning.
    pub fn construct_representation(&self, mode: ReprMode) -> Result<BiorderPair> {
        let ferrers = self.check_ferrers();
        if !ferrers.holds {
            let w = ferrers.witness.expect("failing report carries a witness");
            return Err(Error::Precondition(format!(
                "not a biorder: Ferrers fails at (a={}, b={}, x={}, y={})",
                w.a, w.b, w.x, w.y
            )));
        }
        let m = self.m();
        let n = self.n();
        let cols: Vec<u64> = (0..n).map(|x| self.column_mask(x)).collect();
        let mut chain: Vec<u64> = cols.clone();
        chain.push(0);
        chain.sort_by_key(|c| c.count_ones());
        chain.dedup();
        debug_assert!(chain.windows(2).all(|w| is_subset(w[0], w[1])));
        let u: Vec<BigRational> = (0..n)
            .map(|x| {
                let idx = chain.iter().position(|&c| c == cols[x]).expect("own set");
                integer(idx as i64)
            })
            .collect();
        let v: Vec<BigRational> = (0..m)
            .map(|a| {
                let first = chain
                    .iter()
                    .position(|&c| c & (1 << a) != 0)
                    .unwrap_or(chain.len());
                let base = integer(first as i64);
                match mode {
                    ReprMode::Weak => base,
                    ReprMode::Strict => base - rational(1, 2),
                }
            })
            .collect();
        let pair = BiorderPair::new(self.a_labels.clone(), self.x_labels.clone(), v, u)?;
        let sweep = self.verify_representation(&pair, mode)?;
        if !sweep.holds {
            let ce = sweep.counterexample.expect("failing sweep has a witness");
            return Err(Error::Precondition(format!(
                "internal staircase sweep failed at ({}, {}): {}",
                ce.a, ce.x, ce.reason
            )));
        }
        Ok(pair)
    }

    /// Full biconditional sweep of `a ≺ x ⟺ v(a) < u(x)` (strict mode) or
    /// `a ≺ x ⟺ v(a) ≤ u(x)` (weak mode).
    pub fn verify_representation(
        &self,
        pair: &BiorderPair,
        mode: ReprMode,
    ) -> Result<BiorderVerifyReport> {
        self.pair_labels_match(pair)?;
        for a in 0..self.m() {
            for x in 0..self.n() {
                let cmp = match mode {
                    ReprMode::Strict => pair.v[a] < pair.u[x],
                    ReprMode::Weak => pair.v[a] <= pair.u[x],
                };
                if self.strict(a, x) != cmp {
                    let op = match mode {
                        ReprMode::Strict => "<",
                        ReprMode::Weak => "≤",
                    };
                    return Ok(BiorderVerifyReport {
                        holds: false,
                        counterexample: Some(BiorderCounterexample {
                            a: self.a_labels[a].clone(),
                            x: self.x_labels[x].clone(),
                            reason: format!(
                                "a ≺ x is {} but v(a) = {} {op} u(x) = {} is {}",
                                self.strict(a, x),
                                format_ratio(&pair.v[a]),
                                format_ratio(&pair.u[x]),
                                cmp
                            ),
                        }),
                    });
                }
            }
        }
        Ok(BiorderVerifyReport {
            holds: true,
            counterexample: None,
        })
    }

    /// Both almost-representation implications:
    /// `x ≼ a ⇒ u(x) ≤ v(a)` and `a ≺ x ⇒ v(a) ≤ u(x)`.
    pub fn verify_almost_representation(&self, pair: &BiorderPair) -> Result<BiorderVerifyReport> {
        self.pair_labels_match(pair)?;
        for a in 0..self.m() {
            for x in 0..self.n() {
                if !self.strict(a, x) && pair.u[x] > pair.v[a] {
                    return Ok(BiorderVerifyReport {
                        holds: false,
                        counterexample: Some(BiorderCounterexample {
                            a: self.a_labels[a].clone(),
                            x: self.x_labels[x].clone(),
                            reason: format!(
                                "x ≼ a but u(x) = {} > v(a) = {}",
                                format_ratio(&pair.u[x]),
                                format_ratio(&pair.v[a])
                            ),
                        }),
                    });
                }
                if self.strict(a, x) && pair.v[a] > pair.u[x] {
                    return Ok(BiorderVerifyReport {
                        holds: false,
                        counterexample: Some(BiorderCounterexample {
                            a: self.a_labels[a].clone(),
                            x: self.x_labels[x].clone(),
                            reason: format!(
                                "a ≺ x but v(a) = {} > u(x) = {}",
                                format_ratio(&pair.v[a]),
                                format_ratio(&pair.u[x])
                            ),
                        }),
                    });
                }
            }
        }
        Ok(BiorderVerifyReport {
            holds: true,
            counterexample: None,
        })
    }

    /// Does every strict pair `a ≺ x` route through witnesses
    /// `a ≼* b ≺ y ≼** x` with `b` and `y` drawn from the given subsets?
    pub fn check_jointly_dense(&self, d_a: &[String], d_x: &[String]) -> Result<JointDensityReport> {
        let mut da_mask = 0u64;
        for l in d_a {
            da_mask |= 1 << self.a_index(l)?;
        }
        let mut dx_mask = 0u64;
        for l in d_x {
            dx_mask |= 1 << self.x_index(l)?;
        }
        let (star, dstar) = self.traces();
        for a in 0..self.m() {
            for x in 0..self.n() {
                if !self.strict(a, x) {
                    continue;
                }
                let mids = da_mask & star.upper_mask(a);
                let targets = dx_mask & dstar.lower_mask(x);
                let routed = ones(mids)
                    .take_while(|&b| b < self.m())
                    .any(|b| self.rows[b] & targets != 0);
                if !routed {
                    return Ok(JointDensityReport {
                        holds: false,
                        failing_pair: Some((
                            self.a_labels[a].clone(),
                            self.x_labels[x].clone(),
                        )),
                    });
                }
            }
        }
        Ok(JointDensityReport {
            holds: true,
            failing_pair: None,
        })
    }

    fn pair_labels_match(&self, pair: &BiorderPair) -> Result<()> {
        if pair.a_labels != self.a_labels || pair.x_labels != self.x_labels {
            return Err(Error::MismatchedElements(
                "value tables are over different label lists".to_string(),
            ));
        }
        Ok(())
    }

    fn topologies_match(&self, t_a: &FiniteTopology, t_x: &FiniteTopology) -> Result<()> {
        t_a.points_match(&self.a_labels)?;
        t_x.points_match(&self.x_labels)?;
        Ok(())
    }

    /// Base almost-representation constraints over component-merged
    /// variables: `v` per component of the row topology, `u` per component
    /// of the column topology.
    fn base_system(
        &self,
        t_a: &FiniteTopology,
        t_x: &FiniteTopology,
    ) -> (ConstraintSystem, Vec<CertConstraint>, Vec<usize>, Vec<usize>) {
        let a_comps = t_a.components();
        let a_ids = t_a.component_ids();
        let x_comps = t_x.components();
        let x_ids = t_x.component_ids();
        let ca = a_comps.len();
        let a_names: Vec<String> = a_comps
            .iter()
            .map(|&mask| t_a.labels_of_mask(mask).join(","))
            .collect();
        let x_names: Vec<String> = x_comps
            .iter()
            .map(|&mask| t_x.labels_of_mask(mask).join(","))
            .collect();
        let v_var: Vec<usize> = a_ids.clone();
        let u_var: Vec<usize> = x_ids.iter().map(|&c| ca + c).collect();
        let mut sys = ConstraintSystem::new(ca + x_comps.len());
        let mut meta = Vec::new();
        for a in 0..self.m() {
            for x in 0..self.n() {
                if self.strict(a, x) {
                    sys.push(v_var[a], u_var[x], 0);
                    meta.push(CertConstraint {
                        lhs: format!("v({})", a_names[a_ids[a]]),
                        rhs: format!("u({})", x_names[x_ids[x]]),
                        bound: 0,
                        origin: format!("{} ≺ {}", self.a_labels[a], self.x_labels[x]),
                    });
                } else {
                    sys.push(u_var[x], v_var[a], 0);
                    meta.push(CertConstraint {
                        lhs: format!("u({})", x_names[x_ids[x]]),
                        rhs: format!("v({})", a_names[a_ids[a]]),
                        bound: 0,
                        origin: format!("{} ≼ {}", self.x_labels[x], self.a_labels[a]),
                    });
                }
            }
        }
        (sys, meta, v_var, u_var)
    }

    fn potentials_to_pair(&self, v_var: &[usize], u_var: &[usize], pot: &[i64]) -> Result<BiorderPair> {
        let raw: Vec<i64> = v_var
            .iter()
            .map(|&id| pot[id])
            .chain(u_var.iter().map(|&id| pot[id]))
            .collect();
        let scaled = unit_rescale_ints(&raw);
        let (v, u) = (scaled[..self.m()].to_vec(), scaled[self.m()..].to_vec());
        BiorderPair::new(self.a_labels.clone(), self.x_labels.clone(), v, u)
    }

    /// Weak continuity: every strict pair `a ≺ x` admits a pair of tables,
    /// continuous on their respective spaces, that almost represents the
    /// biorder and satisfies `v(a) < u(x)`.
    pub fn is_weakly_continuous(
        &self,
        t_a: &FiniteTopology,
        t_x: &FiniteTopology,
    ) -> Result<BiorderWeakContinuityReport> {
        self.topologies_match(t_a, t_x)?;
        let (mut sys, meta, v_var, u_var) = self.base_system(t_a, t_x);
        let mut witnesses = Vec::new();
        for a in 0..self.m() {
            for x in 0..self.n() {
                if !self.strict(a, x) {
                    continue;
                }
                sys.push(v_var[a], u_var[x], -1);
                let sep = CertConstraint {
                    lhs: format!("v({})", self.a_labels[a]),
                    rhs: format!("u({})", self.x_labels[x]),
                    bound: -1,
                    origin: format!(
                        "separation v({}) < u({})",
                        self.a_labels[a], self.x_labels[x]
                    ),
                };
                let outcome = sys.solve();
                sys.pop();
                match outcome {
                    Feasibility::Feasible(pot) => {
                        let pair = self.potentials_to_pair(&v_var, &u_var, &pot)?;
                        debug_assert!(self.verify_almost_representation(&pair)?.holds);
                        debug_assert!(t_a.is_continuous(pair.v()));
                        debug_assert!(t_x.is_continuous(pair.u()));
                        debug_assert!(pair.v()[a] < pair.u()[x]);
                        witnesses.push(BiorderSeparationWitness {
                            a: self.a_labels[a].clone(),
                            x: self.x_labels[x].clone(),
                            pair,
                        });
                    }
                    Feasibility::Infeasible {
                        cycle,
                        total_weight,
                    } => {
                        let constraints = cycle
                            .iter()
                            .map(|&e| if e < meta.len() { meta[e].clone() } else { sep.clone() })
                            .collect();
                        return Ok(BiorderWeakContinuityReport {
                            holds: false,
                            witnesses: Vec::new(),
                            failing_pair: Some((
                                self.a_labels[a].clone(),
                                self.x_labels[x].clone(),
                            )),
                            certificate: Some(CycleCertificate {
                                constraints,
                                total_weight,
                            }),
                        });
                    }
                }
            }
        }
        Ok(BiorderWeakContinuityReport {
            holds: true,
            witnesses,
            failing_pair: None,
            certificate: None,
        })
    }

    /// Decide whether continuous tables represent the biorder with respect
    /// to `<`: strict pairs demand `v(a) − u(x) ≤ −1`, non-pairs
    /// `u(x) − v(a) ≤ 0`, with component-constancy on each side.
    pub fn decide_continuous_strict_representation(
        &self,
        t_a: &FiniteTopology,
        t_x: &FiniteTopology,
    ) -> Result<BiorderContinuousDecision> {
        self.topologies_match(t_a, t_x)?;
        let a_ids = t_a.component_ids();
        let x_ids = t_x.component_ids();
        let ca = t_a.components().len();
        let v_var: Vec<usize> = a_ids;
        let u_var: Vec<usize> = x_ids.iter().map(|&c| ca + c).collect();
        let mut sys = ConstraintSystem::new(ca + t_x.components().len());
        let mut meta = Vec::new();
        for a in 0..self.m() {
            for x in 0..self.n() {
                if self.strict(a, x) {
                    sys.push(v_var[a], u_var[x], -1);
                    meta.push(CertConstraint {
                        lhs: format!("v({})", self.a_labels[a]),
                        rhs: format!("u({})", self.x_labels[x]),
                        bound: -1,
                        origin: format!("{} ≺ {}", self.a_labels[a], self.x_labels[x]),
                    });
                } else {
                    sys.push(u_var[x], v_var[a], 0);
                    meta.push(CertConstraint {
                        lhs: format!("u({})", self.x_labels[x]),
                        rhs: format!("v({})", self.a_labels[a]),
                        bound: 0,
                        origin: format!("{} ≼ {}", self.x_labels[x], self.a_labels[a]),
                    });
                }
            }
        }
        match sys.solve() {
            Feasibility::Feasible(pot) => {
                let pair = self.potentials_to_pair(&v_var, &u_var, &pot)?;
                debug_assert!(self.verify_representation(&pair, ReprMode::Strict)?.holds);
                debug_assert!(t_a.is_continuous(pair.v()) && t_x.is_continuous(pair.u()));
                Ok(BiorderContinuousDecision {
                    feasible: true,
                    pair: Some(pair),
                    certificate: None,
                })
            }
            Feasibility::Infeasible {
                cycle,
                total_weight,
            } => Ok(BiorderContinuousDecision {
                feasible: false,
                pair: None,
                certificate: Some(CycleCertificate {
                    constraints: cycle.iter().map(|&e| meta[e].clone()).collect(),
                    total_weight,
                }),
            }),
        }
    }

    pub fn to_bitstring_rows(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|&r| crate::bits::bitstring(r, self.n()))
            .collect()
    }
}

impl std::fmt::Debug for FiniteBiorder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteBiorder({:?} ≺ {:?}, [{}])",
            self.a_labels,
            self.x_labels,
            self.to_bitstring_rows().join(", ")
        )
    }
}

/// `u = Σ uₙ/2ⁿ`, `v = Σ vₙ/2ⁿ` over a finite witness family, after the
/// same per-pair `[0,1]` normalization used for interval orders.
pub fn dyadic_combine_biorder(pairs: &[BiorderPair]) -> Result<BiorderPair> {
    let first = pairs.first().ok_or(Error::EmptyPairList)?;
    let a_labels = first.a_labels.clone();
    let x_labels = first.x_labels.clone();
    let mut v_out = vec![BigRational::zero(); a_labels.len()];
    let mut u_out = vec![BigRational::zero(); x_labels.len()];
    let mut weight = rational(1, 2);
    for p in pairs {
        if p.a_labels != a_labels || p.x_labels != x_labels {
            return Err(Error::MismatchedElements(
                "witness pairs are over different label lists".to_string(),
            ));
        }
        let (u, v) = pair_to_unit_interval(&p.u, &p.v);
        for (out, val) in v_out.iter_mut().zip(&v) {
            *out += val * &weight;
        }
        for (out, val) in u_out.iter_mut().zip(&u) {
            *out += val * &weight;
        }
        weight /= integer(2);
    }
    BiorderPair::new(a_labels, x_labels, v_out, u_out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::integer as int;

    fn staircase() -> FiniteBiorder {
        // a ≺ x, a ≺ y, b ≺ y.
        FiniteBiorder::from_bitstring_rows(&["a", "b"], &["x", "y"], &["11", "01"]).unwrap()
    }

    #[test]
    fn ferrers_examples() {
        let full = FiniteBiorder::from_bitstring_rows(&["a", "b"], &["x", "y"], &["11", "11"])
            .unwrap();
        assert!(full.check_ferrers().holds);

        let crossing =
            FiniteBiorder::from_bitstring_rows(&["a", "b"], &["x", "y"], &["10", "01"]).unwrap();
        let report = crossing.check_ferrers();
        assert!(!report.holds);
        let w = report.witness.unwrap();
        assert_eq!(
            (w.a.as_str(), w.b.as_str(), w.x.as_str(), w.y.as_str()),
            ("a", "b", "x", "y")
        );

        assert!(staircase().check_ferrers().holds);
    }

    #[test]
    fn ferrers_iff_nested_columns_exhaustive() {
        for b in crate::enumerate::biorders(3, 3) {
            let cols: Vec<u64> = (0..3).map(|x| b.column_mask(x)).collect();
            let nested = (0..3).all(|i| {
                (0..3).all(|j| is_subset(cols[i], cols[j]) || is_subset(cols[j], cols[i]))
            });
            assert_eq!(b.check_ferrers().holds, nested, "{b:?}");
        }
    }

    /// Definition-level quantifier expansion of the two traces.
    fn traces_by_definition(b: &FiniteBiorder) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
        let m = b.m();
        let n = b.n();
        let mut star = vec![vec![false; m]; m];
        for a in 0..m {
            for bb in 0..m {
                star[a][bb] = !(0..n).any(|x| b.strict(bb, x) && !b.strict(a, x));
            }
        }
        let mut dstar = vec![vec![false; n]; n];
        for x in 0..n {
            for y in 0..n {
                // x ≼** y ⟺ no a has y ≼ a and a ≺ x.
                dstar[x][y] = !(0..m).any(|a| !b.strict(a, y) && b.strict(a, x));
            }
        }
        (star, dstar)
    }

    #[test]
    fn traces_match_definition_exhaustively() {
        for b in crate::enumerate::biorders(2, 3) {
            let (star, dstar) = b.traces();
            let (star_def, dstar_def) = traces_by_definition(&b);
            for i in 0..b.m() {
                for j in 0..b.m() {
                    assert_eq!(star.related(i, j), star_def[i][j], "{b:?}");
                }
            }
            for i in 0..b.n() {
                for j in 0..b.n() {
                    assert_eq!(dstar.related(i, j), dstar_def[i][j], "{b:?}");
                }
            }
        }
    }

    #[test]
    fn traces_of_empty_table_are_all_related() {
        let b = FiniteBiorder::from_bitstring_rows(&["a", "b"], &["x", "y"], &["00", "00"])
            .unwrap();
        let (star, dstar) = b.traces();
        assert_eq!(star, FiniteRelation::full(&["a", "b"]).unwrap());
        assert_eq!(dstar, FiniteRelation::full(&["x", "y"]).unwrap());
    }

    #[test]
    fn singleton_traces() {
        let b = FiniteBiorder::from_bitstring_rows(&["a"], &["x"], &["1"]).unwrap();
        let (star, dstar) = b.traces();
        assert!(star.related(0, 0));
        assert!(dstar.related(0, 0));
    }

    #[test]
    fn staircase_construction_examples() {
        let b = staircase();
        let weak = b.construct_representation(ReprMode::Weak).unwrap();
        assert_eq!(weak.u(), &[int(1), int(2)][..]);
        assert_eq!(weak.v(), &[int(1), int(2)][..]);

        let strict = b.construct_representation(ReprMode::Strict).unwrap();
        assert_eq!(strict.v(), &[rational(1, 2), rational(3, 2)][..]);
        assert_eq!(strict.u(), &[int(1), int(2)][..]);

        let empty = FiniteBiorder::from_bitstring_rows(&["a"], &["x", "y"], &["00"]).unwrap();
        let weak = empty.construct_representation(ReprMode::Weak).unwrap();
        assert_eq!(weak.u(), &[int(0), int(0)][..]);
        assert_eq!(weak.v(), &[int(1)][..]);

        let crossing =
            FiniteBiorder::from_bitstring_rows(&["a", "b"], &["x", "y"], &["10", "01"]).unwrap();
        assert!(crossing.construct_representation(ReprMode::Weak).is_err());
    }

    #[test]
    fn ferrers_iff_construction_succeeds_exhaustive() {
        for b in crate::enumerate::biorders(3, 3) {
            let ferrers = b.check_ferrers().holds;
            for mode in [ReprMode::Weak, ReprMode::Strict] {
                let rep = b.construct_representation(mode);
                assert_eq!(rep.is_ok(), ferrers, "{b:?}");
                if let Ok(pair) = rep {
                    assert!(b.verify_representation(&pair, mode).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn strict_and_weak_modes_agree_after_shift() {
        for b in crate::enumerate::biorders(2, 2) {
            if !b.check_ferrers().holds {
                continue;
            }
            let strict = b.construct_representation(ReprMode::Strict).unwrap();
            let shifted = BiorderPair::new(
                strict.a_labels().to_vec(),
                strict.x_labels().to_vec(),
                strict.v().iter().map(|r| r + rational(1, 2)).collect(),
                strict.u().to_vec(),
            )
            .unwrap();
            assert!(b.verify_representation(&shifted, ReprMode::Weak).unwrap().holds);
        }
    }

    #[test]
    fn almost_representation_examples() {
        let b = staircase();
        let c = BiorderPair::new(
            b.a_labels().to_vec(),
            b.x_labels().to_vec(),
            vec![int(3), int(3)],
            vec![int(3), int(3)],
        )
        .unwrap();
        assert!(b.verify_almost_representation(&c).unwrap().holds);

        // Strict-mode construction output almost represents, exhaustively.
        for bb in crate::enumerate::biorders(3, 3) {
            if !bb.check_ferrers().holds {
                continue;
            }
            let pair = bb.construct_representation(ReprMode::Strict).unwrap();
            assert!(bb.verify_almost_representation(&pair).unwrap().holds);
        }

        // a ≺ x with v(a) = 1 > u(x) = 0 breaks the second implication.
        let one = FiniteBiorder::from_bitstring_rows(&["a"], &["x"], &["1"]).unwrap();
        let bad = BiorderPair::new(
            one.a_labels().to_vec(),
            one.x_labels().to_vec(),
            vec![int(1)],
            vec![int(0)],
        )
        .unwrap();
        let rep = one.verify_almost_representation(&bad).unwrap();
        assert!(!rep.holds);
    }

    #[test]
    fn joint_density_examples() {
        let b = staircase();
        let all_a: Vec<String> = b.a_labels().to_vec();
        let all_x: Vec<String> = b.x_labels().to_vec();
        assert!(b.check_jointly_dense(&all_a, &all_x).unwrap().holds);
        let rep = b.check_jointly_dense(&[], &all_x).unwrap();
        assert!(!rep.holds);
        assert!(rep.failing_pair.is_some());

        // D_A = {a}, D_X = {y}: density holds exactly when every strict pair
        // routes through (a, y), checked here by quantifier expansion. The
        // pair (a, x) fails first, since y ⋠** x.
        let rep = b
            .check_jointly_dense(&["a".to_string()], &["y".to_string()])
            .unwrap();
        let (star, dstar) = b.traces();
        let routes = |a: usize, x: usize| {
            star.related(a, 0) && b.strict(0, 1) && dstar.related(1, x)
        };
        let expansion = (0..b.m()).all(|a| {
            (0..b.n()).all(|x| !b.strict(a, x) || routes(a, x))
        });
        assert_eq!(rep.holds, expansion);
        assert!(!rep.holds);
        assert_eq!(
            rep.failing_pair,
            Some(("a".to_string(), "x".to_string()))
        );
    }

    #[test]
    fn weak_continuity_examples() {
        let b = staircase();
        let disc_a = FiniteTopology::discrete(&["a", "b"]).unwrap();
        let disc_x = FiniteTopology::discrete(&["x", "y"]).unwrap();
        let rep = b.is_weakly_continuous(&disc_a, &disc_x).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.witnesses.len(), 3);

        // Indiscrete on both sides with a mixed column forces a cycle.
        let ind_a = FiniteTopology::indiscrete(&["a", "b"]).unwrap();
        let ind_x = FiniteTopology::indiscrete(&["x", "y"]).unwrap();
        let rep = b.is_weakly_continuous(&ind_a, &ind_x).unwrap();
        assert!(!rep.holds);
        assert!(rep.certificate.unwrap().total_weight < 0);

        let empty = FiniteBiorder::from_bitstring_rows(&["a"], &["x"], &["0"]).unwrap();
        let ind_a1 = FiniteTopology::indiscrete(&["a"]).unwrap();
        let ind_x1 = FiniteTopology::indiscrete(&["x"]).unwrap();
        assert!(empty.is_weakly_continuous(&ind_a1, &ind_x1).unwrap().holds);
    }

    #[test]
    fn dyadic_combination_of_witnesses_represents_strictly() {
        let b = staircase();
        let disc_a = FiniteTopology::discrete(&["a", "b"]).unwrap();
        let disc_x = FiniteTopology::discrete(&["x", "y"]).unwrap();
        let rep = b.is_weakly_continuous(&disc_a, &disc_x).unwrap();
        let pairs: Vec<BiorderPair> = rep.witnesses.into_iter().map(|w| w.pair).collect();
        let combined = dyadic_combine_biorder(&pairs).unwrap();
        assert!(b
            .verify_representation(&combined, ReprMode::Strict)
            .unwrap()
            .holds);
        assert!(disc_a.is_continuous(combined.v()));
        assert!(disc_x.is_continuous(combined.u()));
    }

    #[test]
    fn interval_order_bridge() {
        // The strict part of an interval order, read as a square biorder,
        // reproduces the relation and ranks elements exactly like the
        // interval-order staircase.
        for n in 1..=4usize {
            for io in crate::enumerate::interval_orders(n) {
                let strict = io.strict_part();
                let labels: Vec<&str> = io.labels().iter().map(|s| s.as_str()).collect();
                let b = FiniteBiorder::from_bitstring_rows(
                    &labels,
                    &labels,
                    &strict
                        .to_bitstring_rows()
                        .iter()
                        .map(|s| s.as_str())
                        .collect::<Vec<_>>(),
                )
                .unwrap();
                let pair = b.construct_representation(ReprMode::Strict).unwrap();
                // x ≼ y ⟺ ¬(v(y) < u(x)).
                for x in 0..n {
                    for y in 0..n {
                        assert_eq!(io.related(x, y), !(pair.v()[y] < pair.u()[x]), "{io:?}");
                    }
                }
                // Same ranks as the interval-order staircase.
                let rep = crate::repcore::construct_representation(&io).unwrap();
                for i in 0..n {
                    for j in 0..n {
                        assert_eq!(rep.u()[i] < rep.u()[j], pair.u()[i] < pair.u()[j]);
                        assert_eq!(rep.v()[i] < rep.v()[j], pair.v()[i] < pair.v()[j]);
                    }
                }
            }
        }
    }
}
