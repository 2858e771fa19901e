//! Representations of interval orders by pairs of rational value tables:
//! verification, the staircase construction, the continuous-representation
//! decision via difference constraints, weak continuity, dyadic combination
//! of almost representations, and order-density of subsets.

use num::{BigRational, Zero};
use serde::Serialize;

use crate::bits::{full_mask, labels_of, ones};
use crate::constraints::{ConstraintSystem, Feasibility};
use crate::error::{Error, Result};
use crate::ratio::{format_ratio, integer, pair_to_unit_interval, rational, unit_rescale_ints};
use crate::relations::FiniteRelation;
use crate::topology::FiniteTopology;

/// Two exact-rational value tables over one element list. `u` carries the
/// left-hand side of the defining comparison `x ≼ y ⟺ u(x) ≤ v(y)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FunctionPair {
    labels: Vec<String>,
    u: Vec<BigRational>,
    v: Vec<BigRational>,
}

impl FunctionPair {
    pub fn new(labels: Vec<String>, u: Vec<BigRational>, v: Vec<BigRational>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyElementList);
        }
        if u.len() != labels.len() || v.len() != labels.len() {
            return Err(Error::MismatchedElements(
                "value tables must cover every element".to_string(),
            ));
        }
        Ok(FunctionPair { labels, u, v })
    }

    pub fn constant(labels: &[String], value: BigRational) -> Self {
        FunctionPair {
            labels: labels.to_vec(),
            u: vec![value.clone(); labels.len()],
            v: vec![value; labels.len()],
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn u(&self) -> &[BigRational] {
        &self.u
    }

    pub fn v(&self) -> &[BigRational] {
        &self.v
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Joint affine normalization of both tables onto `[0,1]` (no-op when the
    /// values already lie there; a constant out-of-range pair maps to `1/2`).
    pub fn to_unit_interval(&self) -> FunctionPair {
        let (u, v) = pair_to_unit_interval(&self.u, &self.v);
        FunctionPair {
            labels: self.labels.clone(),
            u,
            v,
        }
    }

    pub(crate) fn labels_match(&self, labels: &[String]) -> Result<()> {
        if self.labels != labels {
            return Err(Error::MismatchedElements(
                "function pair is over a different element list".to_string(),
            ));
        }
        Ok(())
    }
}

impl std::fmt::Debug for FunctionPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .labels
            .iter()
            .zip(self.u.iter().zip(self.v.iter()))
            .map(|(l, (u, v))| format!("{l}: u={} v={}", format_ratio(u), format_ratio(v)))
            .collect();
        write!(f, "FunctionPair[{}]", rows.join(", "))
    }
}

/// First violating ordered pair of a verification sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCounterexample {
    pub x: String,
    pub y: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub holds: bool,
    pub counterexample: Option<PairCounterexample>,
}

impl VerifyReport {
    fn ok() -> Self {
        VerifyReport {
            holds: true,
            counterexample: None,
        }
    }

    fn fail(x: &str, y: &str, reason: String) -> Self {
        VerifyReport {
            holds: false,
            counterexample: Some(PairCounterexample {
                x: x.to_string(),
                y: y.to_string(),
                reason,
            }),
        }
    }
}

/// Check the biconditional `x ≼ y ⟺ u(x) ≤ v(y)` at every ordered pair.
pub fn verify_representation(r: &FiniteRelation, p: &FunctionPair) -> Result<VerifyReport> {
    p.labels_match(r.labels())?;
    let n = r.n();
    for i in 0..n {
        for j in 0..n {
            let le = p.u[i] <= p.v[j];
            if r.related(i, j) && !le {
                return Ok(VerifyReport::fail(
                    r.label(i),
                    r.label(j),
                    format!(
                        "{} ≼ {} but u = {} > v = {}",
                        r.label(i),
                        r.label(j),
                        format_ratio(&p.u[i]),
                        format_ratio(&p.v[j])
                    ),
                ));
            }
            if !r.related(i, j) && le {
                return Ok(VerifyReport::fail(
                    r.label(i),
                    r.label(j),
                    format!(
                        "not ({} ≼ {}) but u = {} ≤ v = {}",
                        r.label(i),
                        r.label(j),
                        format_ratio(&p.u[i]),
                        format_ratio(&p.v[j])
                    ),
                ));
            }
        }
    }
    Ok(VerifyReport::ok())
}

/// Check both one-way implications: `z ≼ w ⇒ u(z) ≤ v(w)` and
/// `z ≺ w ⇒ v(z) ≤ u(w)`.
pub fn verify_almost_representation(r: &FiniteRelation, p: &FunctionPair) -> Result<VerifyReport> {
    p.labels_match(r.labels())?;
    let strict = r.strict_part();
    let n = r.n();
    for i in 0..n {
        for j in 0..n {
            if r.related(i, j) && p.u[i] > p.v[j] {
                return Ok(VerifyReport::fail(
                    r.label(i),
                    r.label(j),
                    format!(
                        "{} ≼ {} but u = {} > v = {}",
                        r.label(i),
                        r.label(j),
                        format_ratio(&p.u[i]),
                        format_ratio(&p.v[j])
                    ),
                ));
            }
            if strict.related(i, j) && p.v[i] > p.u[j] {
                return Ok(VerifyReport::fail(
                    r.label(i),
                    r.label(j),
                    format!(
                        "{} ≺ {} but v = {} > u = {}",
                        r.label(i),
                        r.label(j),
                        format_ratio(&p.v[i]),
                        format_ratio(&p.u[j])
                    ),
                ));
            }
        }
    }
    Ok(VerifyReport::ok())
}

fn require_interval_order(r: &FiniteRelation) -> Result<()> {
    let axioms = r.check_axioms();
    if !axioms.interval_order {
        return Err(Error::NotIntervalOrder {
            witness: axioms.ferrers_witness,
        });
    }
    Ok(())
}

/// Staircase construction: the strict lower sections of an interval order
/// are nested, so sorting the distinct ones into a chain `L_0 ⊊ … ⊊ L_k`
/// yields `u(x) =` chain index of `L_≺(x)` and `v(x) = min{i : x ∈ L_i} − 1`
/// (with `k+1` standing in when `x` lies in no chain set). The output always
/// satisfies the representation biconditional.
pub fn construct_representation(r: &FiniteRelation) -> Result<FunctionPair> {
    require_interval_order(r)?;
    let strict = r.strict_part();
    let n = r.n();
    let lsets: Vec<u64> = (0..n).map(|i| strict.lower_mask(i)).collect();
    let mut chain = lsets.clone();
    chain.sort_by_key(|m| m.count_ones());
    chain.dedup();
    debug_assert!(chain
        .windows(2)
        .all(|w| crate::bits::is_subset(w[0], w[1]) && w[0] != w[1]));
    let u: Vec<BigRational> = (0..n)
        .map(|i| {
            let idx = chain.iter().position(|&c| c == lsets[i]).expect("own set");
            integer(idx as i64)
        })
        .collect();
    let v: Vec<BigRational> = (0..n)
        .map(|i| {
            let first = chain
                .iter()
                .position(|&c| c & (1 << i) != 0)
                .unwrap_or(chain.len());
            integer(first as i64 - 1)
        })
        .collect();
    let pair = FunctionPair::new(r.labels().to_vec(), u, v)?;
    debug_assert!(verify_representation(r, &pair).expect("same labels").holds);
    Ok(pair)
}

/// One constraint of a negative-cycle certificate, in report form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertConstraint {
    pub lhs: String,
    pub rhs: String,
    pub bound: i64,
    pub origin: String,
}

/// A closed chain of difference constraints whose bounds sum below zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCertificate {
    pub constraints: Vec<CertConstraint>,
    pub total_weight: i64,
}

#[derive(Debug, Clone)]
pub struct ContinuousDecision {
    pub feasible: bool,
    pub pair: Option<FunctionPair>,
    pub certificate: Option<CycleCertificate>,
}

/// Variable layout shared by the continuous-representation decision and the
/// weak-continuity search: one `u` node and one `v` node per component of
/// the topology, since a table is continuous exactly when it is constant on
/// each component.
struct ComponentVars {
    ids: Vec<usize>,
    count: usize,
    names: Vec<String>,
}

impl ComponentVars {
    fn new(t: &FiniteTopology) -> Self {
        let comps = t.components();
        let ids = t.component_ids();
        let names = comps
            .iter()
            .map(|&m| t.labels_of_mask(m).join(","))
            .collect();
        ComponentVars {
            ids,
            count: comps.len(),
            names,
        }
    }

    fn u_var(&self, element: usize) -> usize {
        self.ids[element]
    }

    fn v_var(&self, element: usize) -> usize {
        self.count + self.ids[element]
    }

    fn u_name(&self, element: usize) -> String {
        format!("u({})", self.names[self.ids[element]])
    }

    fn v_name(&self, element: usize) -> String {
        format!("v({})", self.names[self.ids[element]])
    }
}

fn potentials_to_pair(
    r: &FiniteRelation,
    vars: &ComponentVars,
    pot: &[i64],
) -> Result<FunctionPair> {
    let n = r.n();
    let raw: Vec<i64> = (0..n)
        .map(|i| pot[vars.u_var(i)])
        .chain((0..n).map(|i| pot[vars.v_var(i)]))
        .collect();
    let scaled = unit_rescale_ints(&raw);
    let (u, v) = (scaled[..n].to_vec(), scaled[n..].to_vec());
    FunctionPair::new(r.labels().to_vec(), u, v)
}

/// Decide whether some pair of continuous tables represents `r` on `t`.
///
/// For `x ≼ y` the system gets `u(x) − v(y) ≤ 0`; for `¬(x ≼ y)` it gets
/// `v(y) − u(x) ≤ −1` (strictness after integer scaling). Feasible
/// potentials are normalized onto `[0,1]`; infeasibility returns the
/// negative cycle.
pub fn decide_continuous_representation(
    r: &FiniteRelation,
    t: &FiniteTopology,
) -> Result<ContinuousDecision> {
    t.points_match(r.labels())?;
    let vars = ComponentVars::new(t);
    let n = r.n();
    let mut sys = ConstraintSystem::new(2 * vars.count);
    let mut meta: Vec<CertConstraint> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if r.related(i, j) {
                sys.push(vars.u_var(i), vars.v_var(j), 0);
                meta.push(CertConstraint {
                    lhs: vars.u_name(i),
                    rhs: vars.v_name(j),
                    bound: 0,
                    origin: format!("{} ≼ {}", r.label(i), r.label(j)),
                });
            } else {
                sys.push(vars.v_var(j), vars.u_var(i), -1);
                meta.push(CertConstraint {
                    lhs: vars.v_name(j),
                    rhs: vars.u_name(i),
                    bound: -1,
                    origin: format!("not ({} ≼ {})", r.label(i), r.label(j)),
                });
            }
        }
    }
    match sys.solve() {
        Feasibility::Feasible(pot) => {
            let pair = potentials_to_pair(r, &vars, &pot)?;
            debug_assert!(verify_representation(r, &pair).expect("same labels").holds);
            debug_assert!(t.is_continuous(pair.u()) && t.is_continuous(pair.v()));
            Ok(ContinuousDecision {
                feasible: true,
                pair: Some(pair),
                certificate: None,
            })
        }
        Feasibility::Infeasible {
            cycle,
            total_weight,
        } => Ok(ContinuousDecision {
            feasible: false,
            pair: None,
            certificate: Some(CycleCertificate {
                constraints: cycle.iter().map(|&e| meta[e].clone()).collect(),
                total_weight,
            }),
        }),
    }
}

/// A continuous almost representation strictly separating one strict pair.
#[derive(Debug, Clone)]
pub struct SeparationWitness {
    pub x: String,
    pub y: String,
    pub pair: FunctionPair,
}

#[derive(Debug, Clone)]
pub struct WeakContinuityReport {
    pub holds: bool,
    pub witnesses: Vec<SeparationWitness>,
    pub failing_pair: Option<(String, String)>,
    pub certificate: Option<CycleCertificate>,
}

/// Weak continuity of an interval order on a topology: every strict pair
/// `x ≺ y` must admit a continuous almost representation with
/// `v(x) < u(y)`. One constraint graph carries the almost-representation
/// inequalities; the separation edge is swapped per strict pair.
pub fn is_weakly_continuous(r: &FiniteRelation, t: &FiniteTopology) -> Result<WeakContinuityReport> {
    require_interval_order(r)?;
    t.points_match(r.labels())?;
    let strict = r.strict_part();
    let vars = ComponentVars::new(t);
    let n = r.n();
    let mut sys = ConstraintSystem::new(2 * vars.count);
    let mut meta: Vec<CertConstraint> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if r.related(i, j) {
                sys.push(vars.u_var(i), vars.v_var(j), 0);
                meta.push(CertConstraint {
                    lhs: vars.u_name(i),
                    rhs: vars.v_name(j),
                    bound: 0,
                    origin: format!("{} ≼ {}", r.label(i), r.label(j)),
                });
            }
            if strict.related(i, j) {
                sys.push(vars.v_var(i), vars.u_var(j), 0);
                meta.push(CertConstraint {
                    lhs: vars.v_name(i),
                    rhs: vars.u_name(j),
                    bound: 0,
                    origin: format!("{} ≺ {}", r.label(i), r.label(j)),
                });
            }
        }
    }
    let mut witnesses = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !strict.related(x, y) {
                continue;
            }
            sys.push(vars.v_var(x), vars.u_var(y), -1);
            meta.push(CertConstraint {
                lhs: vars.v_name(x),
                rhs: vars.u_name(y),
                bound: -1,
                origin: format!("separation v({}) < u({})", r.label(x), r.label(y)),
            });
            let outcome = sys.solve();
            sys.pop();
            let sep_meta = meta.pop().expect("separation entry just pushed");
            match outcome {
                Feasibility::Feasible(pot) => {
                    let pair = potentials_to_pair(r, &vars, &pot)?;
                    debug_assert!(
                        verify_almost_representation(r, &pair).expect("same labels").holds
                    );
                    debug_assert!(t.is_continuous(pair.u()) && t.is_continuous(pair.v()));
                    debug_assert!(pair.v()[x] < pair.u()[y]);
                    witnesses.push(SeparationWitness {
                        x: r.label(x).to_string(),
                        y: r.label(y).to_string(),
                        pair,
                    });
                }
                Feasibility::Infeasible {
                    cycle,
                    total_weight,
                } => {
                    let constraints = cycle
                        .iter()
                        .map(|&e| {
                            if e < meta.len() {
                                meta[e].clone()
                            } else {
                                sep_meta.clone()
                            }
                        })
                        .collect();
                    return Ok(WeakContinuityReport {
                        holds: false,
                        witnesses: Vec::new(),
                        failing_pair: Some((r.label(x).to_string(), r.label(y).to_string())),
                        certificate: Some(CycleCertificate {
                            constraints,
                            total_weight,
                        }),
                    });
                }
            }
        }
    }
    Ok(WeakContinuityReport {
        holds: true,
        witnesses,
        failing_pair: None,
        certificate: None,
    })
}

/// Combine finitely many almost representations into `u = Σ uₙ/2ⁿ`,
/// `v = Σ vₙ/2ⁿ`. Each input pair is first normalized onto `[0,1]` (see
/// [`FunctionPair::to_unit_interval`]); the sums are exact rationals.
pub fn dyadic_combine(pairs: &[FunctionPair]) -> Result<FunctionPair> {
    let first = pairs.first().ok_or(Error::EmptyPairList)?;
    let labels = first.labels().to_vec();
    let n = labels.len();
    let mut u_out = vec![BigRational::zero(); n];
    let mut v_out = vec![BigRational::zero(); n];
    let mut weight = rational(1, 2);
    for p in pairs {
        p.labels_match(&labels)?;
        let (pu, pv) = pair_to_unit_interval(&p.u, &p.v);
        for e in 0..n {
            u_out[e] += &pu[e] * &weight;
            v_out[e] += &pv[e] * &weight;
        }
        weight /= integer(2);
    }
    FunctionPair::new(labels, u_out, v_out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparabilityReport {
    pub holds: bool,
    pub failing_strict_pair: Option<(String, String)>,
    /// Greedily minimized dense subset, grown down from the full set.
    pub minimal_dense: Vec<String>,
}

/// Does `dense` route every strict pair `x ≺ y` through
/// `x ≼* d_m ≺ d_n ≼** y`? Also reports a greedy minimal dense subset.
pub fn check_separability(r: &FiniteRelation, dense: &[String]) -> Result<SeparabilityReport> {
    require_interval_order(r)?;
    let mut d_mask = 0u64;
    for l in dense {
        d_mask |= 1 << r.index_of(l)?;
    }
    let strict = r.strict_part();
    let (star, dstar) = r.traces();
    let n = r.n();
    let first_failure = |d: u64| -> Option<(usize, usize)> {
        for x in 0..n {
            for y in 0..n {
                if !strict.related(x, y) {
                    continue;
                }
                let mids = d & star.upper_mask(x);
                let targets = d & dstar.lower_mask(y);
                let routed = ones(mids)
                    .take_while(|&m| m < n)
                    .any(|m| strict.upper_mask(m) & targets != 0);
                if !routed {
                    return Some((x, y));
                }
            }
        }
        None
    };
    let failing = first_failure(d_mask);
    let mut minimal = full_mask(n);
    for i in 0..n {
        let without = minimal & !(1 << i);
        if first_failure(without).is_none() {
            minimal = without;
        }
    }
    Ok(SeparabilityReport {
        holds: failing.is_none(),
        failing_strict_pair: failing
            .map(|(x, y)| (r.label(x).to_string(), r.label(y).to_string())),
        minimal_dense: labels_of(minimal, r.labels()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{integer as int, rational as rat};

    fn chain_abc() -> FiniteRelation {
        FiniteRelation::from_bitstring_rows(&["a", "b", "c"], &["111", "011", "001"]).unwrap()
    }

    fn three_intervals() -> FiniteRelation {
        FiniteRelation::from_bitstring_rows(&["x", "y", "z"], &["111", "111", "011"]).unwrap()
    }

    fn pair(labels: &[&str], u: &[i64], v: &[i64]) -> FunctionPair {
        FunctionPair::new(
            labels.iter().map(|s| s.to_string()).collect(),
            u.iter().map(|&x| int(x)).collect(),
            v.iter().map(|&x| int(x)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn verify_representation_examples() {
        let r = chain_abc();
        let good = pair(&["a", "b", "c"], &[0, 1, 2], &[0, 1, 2]);
        assert!(verify_representation(&r, &good).unwrap().holds);

        let bad = pair(&["a", "b", "c"], &[0, 1, 2], &[2, 2, 2]);
        let report = verify_representation(&r, &bad).unwrap();
        assert!(!report.holds);
        // The returned counterexample is a genuine violation, and in
        // particular (c, a) violates: c ⋠ a yet u(c) = 2 ≤ v(a) = 2.
        let ce = report.counterexample.unwrap();
        let xi = r.index_of(&ce.x).unwrap();
        let yi = r.index_of(&ce.y).unwrap();
        assert_ne!(r.related(xi, yi), bad.u()[xi] <= bad.v()[yi]);
        assert!(!r.related(2, 0) && bad.u()[2] <= bad.v()[0]);

        let single = FiniteRelation::identity(&["a"]).unwrap();
        assert!(verify_representation(&single, &pair(&["a"], &[0], &[0]))
            .unwrap()
            .holds);
    }

    #[test]
    fn almost_representation_examples() {
        let r = three_intervals();
        // Constant pairs almost represent anything.
        let c = FunctionPair::constant(r.labels(), rat(1, 3));
        assert!(verify_almost_representation(&r, &c).unwrap().holds);

        // A representation is an almost representation (exhaustive at n ≤ 3
        // over the staircase outputs; the n=4 sweep lives in the acceptance
        // suite).
        for n in 1..=3usize {
            for io in crate::enumerate::interval_orders(n) {
                let p = construct_representation(&io).unwrap();
                assert!(verify_almost_representation(&io, &p).unwrap().holds);
            }
        }

        // Reflexive pair breaks the weak implication.
        let two = FiniteRelation::reflexive_with(&["a", "b"], &[("a", "b")]).unwrap();
        let bad = pair(&["a", "b"], &[2, 1], &[0, 0]);
        let report = verify_almost_representation(&two, &bad).unwrap();
        assert!(!report.holds);
        let ce = report.counterexample.unwrap();
        assert_eq!((ce.x.as_str(), ce.y.as_str()), ("a", "a"));
    }

    #[test]
    fn staircase_examples() {
        let p = construct_representation(&chain_abc()).unwrap();
        assert_eq!(p.u(), &[int(0), int(1), int(2)][..]);
        assert_eq!(p.v(), &[int(0), int(1), int(2)][..]);

        let p = construct_representation(&three_intervals()).unwrap();
        assert_eq!(p.u(), &[int(0), int(0), int(1)][..]);
        assert_eq!(p.v(), &[int(0), int(1), int(1)][..]);

        let single = FiniteRelation::identity(&["s"]).unwrap();
        let p = construct_representation(&single).unwrap();
        assert_eq!(p.u(), &[int(0)][..]);
        assert_eq!(p.v(), &[int(0)][..]);

        let bad = FiniteRelation::reflexive_with(
            &["x", "y", "z", "w"],
            &[("x", "z"), ("y", "w")],
        )
        .unwrap();
        assert!(matches!(
            construct_representation(&bad),
            Err(Error::NotIntervalOrder { witness: Some(_) })
        ));
    }

    #[test]
    fn continuous_decision_examples() {
        // All-related relation on the indiscrete space: constant pair.
        let all = FiniteRelation::full(&["a", "b"]).unwrap();
        let indisc = FiniteTopology::indiscrete(&["a", "b"]).unwrap();
        let dec = decide_continuous_representation(&all, &indisc).unwrap();
        assert!(dec.feasible);
        let p = dec.pair.unwrap();
        assert!(verify_representation(&all, &p).unwrap().holds);

        // a ≺ b on the indiscrete space: negative cycle of weight −1.
        let chain = FiniteRelation::reflexive_with(&["a", "b"], &[("a", "b")]).unwrap();
        let dec = decide_continuous_representation(&chain, &indisc).unwrap();
        assert!(!dec.feasible);
        let cert = dec.certificate.unwrap();
        assert!(cert.total_weight < 0);
        assert_eq!(
            cert.total_weight,
            cert.constraints.iter().map(|c| c.bound).sum::<i64>()
        );

        // Same relation on the discrete space: u = v = (0, 1) after rescale.
        let disc = FiniteTopology::discrete(&["a", "b"]).unwrap();
        let dec = decide_continuous_representation(&chain, &disc).unwrap();
        assert!(dec.feasible);
        let p = dec.pair.unwrap();
        assert_eq!(p.u(), &[int(0), int(1)][..]);
        assert_eq!(p.v(), &[int(0), int(1)][..]);
        assert!(disc.is_continuous(p.u()) && disc.is_continuous(p.v()));
    }

    #[test]
    fn weak_continuity_examples() {
        let chain = FiniteRelation::reflexive_with(&["a", "b"], &[("a", "b")]).unwrap();
        let indisc = FiniteTopology::indiscrete(&["a", "b"]).unwrap();
        let rep = is_weakly_continuous(&chain, &indisc).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.failing_pair, Some(("a".to_string(), "b".to_string())));
        assert!(rep.certificate.unwrap().total_weight < 0);

        let disc = FiniteTopology::discrete(&["a", "b"]).unwrap();
        let rep = is_weakly_continuous(&chain, &disc).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.witnesses.len(), 1);
        let w = &rep.witnesses[0];
        assert!(w.pair.v()[0] < w.pair.u()[1]);

        // Empty strict part holds vacuously.
        let all = FiniteRelation::full(&["a", "b"]).unwrap();
        let rep = is_weakly_continuous(&all, &indisc).unwrap();
        assert!(rep.holds && rep.witnesses.is_empty());
    }

    #[test]
    fn weak_continuity_of_continuous_total_preorders() {
        // Exhaustive at n ≤ 3: continuity and weak continuity coincide on
        // total preorders.
        for n in 1..=3usize {
            let tops = crate::enumerate::topologies(n);
            for r in crate::enumerate::total_preorders(n) {
                for t in &tops {
                    let continuous = t.relation_semicontinuity(&r).unwrap().continuous;
                    let weak = is_weakly_continuous(&r, t).unwrap().holds;
                    assert_eq!(continuous, weak, "{r:?} on {t:?}");
                }
            }
        }
    }

    #[test]
    fn dyadic_combine_examples() {
        let labels = ["a", "b"];
        let p = FunctionPair::new(
            vec!["a".to_string(), "b".to_string()],
            vec![rat(1, 4), int(1)],
            vec![int(0), rat(1, 2)],
        )
        .unwrap();
        // One term: halved.
        let one = dyadic_combine(std::slice::from_ref(&p)).unwrap();
        assert_eq!(one.u(), &[rat(1, 8), rat(1, 2)][..]);
        assert_eq!(one.v(), &[int(0), rat(1, 4)][..]);
        // Two identical terms: 3/4 of the pair.
        let two = dyadic_combine(&[p.clone(), p.clone()]).unwrap();
        assert_eq!(two.u(), &[rat(3, 16), rat(3, 4)][..]);
        assert_eq!(two.v(), &[int(0), rat(3, 8)][..]);

        assert!(matches!(dyadic_combine(&[]), Err(Error::EmptyPairList)));
        let _ = labels;
    }

    #[test]
    fn dyadic_combine_of_copies_preserves_almost_representation() {
        for io in crate::enumerate::interval_orders(3) {
            let p = construct_representation(&io).unwrap();
            let combined = dyadic_combine(&[p.clone(), p.clone(), p]).unwrap();
            assert!(verify_almost_representation(&io, &combined).unwrap().holds);
        }
    }

    #[test]
    fn separability_examples() {
        let chain = chain_abc();
        let all: Vec<String> = chain.labels().to_vec();
        let rep = check_separability(&chain, &all).unwrap();
        assert!(rep.holds);
        assert!(rep.minimal_dense.len() <= 3);
        // The minimized subset still certifies density.
        assert!(check_separability(&chain, &rep.minimal_dense).unwrap().holds);

        let rep = check_separability(&chain, &[]).unwrap();
        assert!(!rep.holds);
        assert!(rep.failing_strict_pair.is_some());

        // Finite interval orders are always dense in themselves.
        for io in crate::enumerate::interval_orders(3) {
            let labels = io.labels().to_vec();
            assert!(check_separability(&io, &labels).unwrap().holds);
        }
    }
}
