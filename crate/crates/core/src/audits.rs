//! Exhaustive finite-scale audits of the equivalence between continuous
//! representability and weak continuity, together with every consequence
//! the library asserts along the way. Instances are small enough (four
//! elements, four points) that the sweeps are complete rather than sampled;
//! a seeded random sampler extends the relation audit to the larger level.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::biorders::{dyadic_combine_biorder, BiorderPair, FiniteBiorder, ReprMode};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::ratio::rational;
use crate::relations::FiniteRelation;
use crate::repcore::{
    check_separability, decide_continuous_representation, dyadic_combine, is_weakly_continuous,
    verify_representation, FunctionPair,
};
use crate::topology::{FiniteTopology, Side};

#[derive(Debug, Clone, Serialize)]
pub struct IntervalOrderAuditLevel {
    pub n: usize,
    pub reflexive_relations: usize,
    pub interval_orders: usize,
    pub topologies: usize,
    pub instances: usize,
    pub weakly_continuous: usize,
    pub representable: usize,
    pub total_preorder_instances: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalOrderAudit {
    pub n_max: usize,
    pub levels: Vec<IntervalOrderAuditLevel>,
    pub total_instances: usize,
    pub violations: Vec<String>,
    /// Instances where the two monotonicity readings of almost
    /// semicontinuity disagree; informational, never a failure by itself.
    pub reading_disagreements: Vec<String>,
}

fn instance_id(r: &FiniteRelation, t: &FiniteTopology) -> String {
    format!(
        "rel=[{}] top=[{}]",
        r.to_bitstring_rows().join(","),
        t.to_bitstring_opens().join(",")
    )
}

/// One weakly continuous instance: check everything weak continuity is
/// supposed to imply, recording violations and reading disagreements.
fn check_weakly_continuous_consequences(
    r: &FiniteRelation,
    t: &FiniteTopology,
    witnesses: &[FunctionPair],
    violations: &mut Vec<String>,
    disagreements: &mut Vec<String>,
) -> Result<()> {
    let id = || instance_id(r, t);

    // Order density of the full element set.
    let sep = check_separability(r, r.labels())?;
    if !sep.holds {
        violations.push(format!("{}: full set is not order dense", id()));
    }

    // Weak continuity forces open strict sections.
    let semi = t.relation_semicontinuity(r)?;
    if !semi.continuous {
        violations.push(format!("{}: weakly continuous but not continuous", id()));
    }

    // Almost semicontinuity of the traces. Each side is checked under two
    // readings of the monotonicity requirement: substituting the trace
    // itself, or the literal relation named by the definition (the second
    // trace for the lower side, the ambient order for the upper side).
    let (star, dstar) = r.traces();
    let lower_sub = t
        .check_almost_semicontinuity(&star, Side::Lower, &star)?
        .holds;
    let lower_lit = t
        .check_almost_semicontinuity(&star, Side::Lower, &dstar)?
        .holds;
    if !(lower_sub || lower_lit) {
        violations.push(format!(
            "{}: first trace not almost lower semicontinuous under either reading",
            id()
        ));
    }
    if lower_sub != lower_lit {
        disagreements.push(format!(
            "{}: lower side readings differ (trace={lower_sub}, literal={lower_lit})",
            id()
        ));
    }
    let upper_sub = t
        .check_almost_semicontinuity(&dstar, Side::Upper, &dstar)?
        .holds;
    let upper_lit = t.check_almost_semicontinuity(&dstar, Side::Upper, r)?.holds;
    if !(upper_sub || upper_lit) {
        violations.push(format!(
            "{}: second trace not almost upper semicontinuous under either reading",
            id()
        ));
    }
    if upper_sub != upper_lit {
        disagreements.push(format!(
            "{}: upper side readings differ (trace={upper_sub}, literal={upper_lit})",
            id()
        ));
    }

    // The dyadic sum of the separating witness family is a continuous
    // representation. With no strict pairs the family is empty; a constant
    // almost representation stands in.
    let family: Vec<FunctionPair> = if witnesses.is_empty() {
        vec![FunctionPair::constant(r.labels(), rational(1, 2))]
    } else {
        witnesses.to_vec()
    };
    let combined = dyadic_combine(&family)?;
    if !verify_representation(r, &combined)?.holds {
        violations.push(format!("{}: dyadic sum does not represent", id()));
    }
    if !t.is_continuous(combined.u()) || !t.is_continuous(combined.v()) {
        violations.push(format!("{}: dyadic sum is not continuous", id()));
    }
    Ok(())
}

/// Sweep every interval order and every topology on up to `n_max` points
/// (`n_max ≤ 4`): continuous representability must coincide with weak
/// continuity, weak continuity must deliver its consequences, and on total
/// preorders weak continuity must coincide with continuity.
pub fn audit_interval_orders(n_max: usize) -> Result<IntervalOrderAudit> {
    if n_max == 0 || n_max > 4 {
        return Err(Error::Precondition(
            "audit size must be between 1 and 4".to_string(),
        ));
    }
    let mut levels = Vec::new();
    let mut violations = Vec::new();
    let mut disagreements = Vec::new();
    for n in 1..=n_max {
        let tops = enumerate::topologies(n);
        let mut level = IntervalOrderAuditLevel {
            n,
            reflexive_relations: 0,
            interval_orders: 0,
            topologies: tops.len(),
            instances: 0,
            weakly_continuous: 0,
            representable: 0,
            total_preorder_instances: 0,
        };
        for r in enumerate::reflexive_relations(n) {
            level.reflexive_relations += 1;
            let axioms = r.check_axioms();
            if !axioms.interval_order {
                continue;
            }
            level.interval_orders += 1;
            for t in &tops {
                level.instances += 1;
                let weak = is_weakly_continuous(&r, t)?;
                let decision = decide_continuous_representation(&r, t)?;
                if weak.holds {
                    level.weakly_continuous += 1;
                }
                if decision.feasible {
                    level.representable += 1;
                }
                if weak.holds != decision.feasible {
                    violations.push(format!(
                        "{}: weakly continuous = {} but representable = {}",
                        instance_id(&r, t),
                        weak.holds,
                        decision.feasible
                    ));
                }
                if axioms.total_preorder {
                    level.total_preorder_instances += 1;
                    let continuous = t.relation_semicontinuity(&r)?.continuous;
                    if weak.holds != continuous {
                        violations.push(format!(
                            "{}: total preorder with weakly continuous = {} but continuous = {}",
                            instance_id(&r, t),
                            weak.holds,
                            continuous
                        ));
                    }
                }
                if weak.holds {
                    let witnesses: Vec<FunctionPair> =
                        weak.witnesses.iter().map(|w| w.pair.clone()).collect();
                    check_weakly_continuous_consequences(
                        &r,
                        t,
                        &witnesses,
                        &mut violations,
                        &mut disagreements,
                    )?;
                }
            }
        }
        levels.push(level);
    }
    let total_instances = levels.iter().map(|l| l.instances).sum();
    Ok(IntervalOrderAudit {
        n_max,
        levels,
        total_instances,
        violations,
        reading_disagreements: disagreements,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SampledAudit {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub weakly_continuous: usize,
    pub representable: usize,
    pub violations: Vec<String>,
}

/// Seeded random `(interval order, topology)` instances at one level,
/// checking the representability ⟺ weak continuity equivalence.
pub fn sample_interval_orders(n: usize, count: usize, seed: u64) -> Result<SampledAudit> {
    if n == 0 || n > 4 {
        return Err(Error::Precondition(
            "sample size must be between 1 and 4".to_string(),
        ));
    }
    let orders = enumerate::interval_orders(n);
    let tops = enumerate::topologies(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SampledAudit {
        n,
        samples: count,
        seed,
        weakly_continuous: 0,
        representable: 0,
        violations: Vec::new(),
    };
    for _ in 0..count {
        let r = &orders[rng.random_range(0..orders.len())];
        let t = &tops[rng.random_range(0..tops.len())];
        let weak = is_weakly_continuous(r, t)?;
        let decision = decide_continuous_representation(r, t)?;
        if weak.holds {
            report.weakly_continuous += 1;
        }
        if decision.feasible {
            report.representable += 1;
        }
        if weak.holds != decision.feasible {
            report.violations.push(format!(
                "{}: weakly continuous = {} but representable = {}",
                instance_id(r, t),
                weak.holds,
                decision.feasible
            ));
        }
    }
    Ok(report)
}

/// Which topology pairs the biorder audit sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TopologyPairScope {
    /// Discrete and indiscrete on each side (four combinations).
    Extremes,
    /// Every topology on each side.
    All,
}

#[derive(Debug, Clone, Serialize)]
pub struct BiorderAuditLevel {
    pub rows: usize,
    pub columns: usize,
    pub tables: usize,
    pub ferrers_tables: usize,
    pub topology_pairs: usize,
    pub instances: usize,
    pub weakly_continuous: usize,
    pub representable: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BiorderAudit {
    pub size_max: usize,
    pub scope: TopologyPairScope,
    pub levels: Vec<BiorderAuditLevel>,
    pub total_instances: usize,
    pub violations: Vec<String>,
}

fn biorder_instance_id(b: &FiniteBiorder, ta: &FiniteTopology, tx: &FiniteTopology) -> String {
    format!(
        "table=[{}] top_a=[{}] top_x=[{}]",
        b.to_bitstring_rows().join(","),
        ta.to_bitstring_opens().join(","),
        tx.to_bitstring_opens().join(",")
    )
}

fn extreme_topologies(labels: &[String]) -> Vec<FiniteTopology> {
    let n = labels.len();
    let discrete = FiniteTopology::new(labels.to_vec(), (0..(1u64 << n)).collect())
        .expect("discrete family is a topology");
    let indiscrete = FiniteTopology::new(labels.to_vec(), vec![0, crate::bits::full_mask(n)])
        .expect("indiscrete family is a topology");
    vec![discrete, indiscrete]
}

/// Sweep every strict table at sizes up to `size_max ≤ 3` against topology
/// pairs: a continuous strict representation must exist exactly when the
/// table is weakly continuous (joint density is automatic and re-verified),
/// and the dyadic sum of the witnesses must strictly represent.
pub fn audit_biorders(size_max: usize, scope: TopologyPairScope) -> Result<BiorderAudit> {
    if size_max == 0 || size_max > 3 {
        return Err(Error::Precondition(
            "audit size must be between 1 and 3".to_string(),
        ));
    }
    let mut levels = Vec::new();
    let mut violations = Vec::new();
    for m in 1..=size_max {
        for n in 1..=size_max {
            let (a_labels, x_labels) = enumerate::biorder_labels(m, n);
            let a_tops = match scope {
                TopologyPairScope::Extremes => extreme_topologies(&a_labels),
                TopologyPairScope::All => enumerate::topologies_on(&a_labels),
            };
            let x_tops = match scope {
                TopologyPairScope::Extremes => extreme_topologies(&x_labels),
                TopologyPairScope::All => enumerate::topologies_on(&x_labels),
            };
            let mut level = BiorderAuditLevel {
                rows: m,
                columns: n,
                tables: 0,
                ferrers_tables: 0,
                topology_pairs: a_tops.len() * x_tops.len(),
                instances: 0,
                weakly_continuous: 0,
                representable: 0,
            };
            for b in enumerate::biorders(m, n) {
                level.tables += 1;
                let ferrers = b.check_ferrers().holds;
                if ferrers {
                    level.ferrers_tables += 1;
                }
                for ta in &a_tops {
                    for tx in &x_tops {
                        level.instances += 1;
                        let id = || biorder_instance_id(&b, ta, tx);
                        let weak = b.is_weakly_continuous(ta, tx)?;
                        let decision = b.decide_continuous_strict_representation(ta, tx)?;
                        if weak.holds {
                            level.weakly_continuous += 1;
                        }
                        if decision.feasible {
                            level.representable += 1;
                        }
                        let dense = b
                            .check_jointly_dense(&a_labels, &x_labels)?
                            .holds;
                        if !dense {
                            violations.push(format!("{}: full sets not jointly dense", id()));
                        }
                        if weak.holds != decision.feasible {
                            violations.push(format!(
                                "{}: weakly continuous = {} but representable = {}",
                                id(),
                                weak.holds,
                                decision.feasible
                            ));
                        }
                        let both_discrete = ta.opens().len() == (1usize << m)
                            && tx.opens().len() == (1usize << n);
                        if both_discrete && decision.feasible != ferrers {
                            violations.push(format!(
                                "{}: discrete spaces with representable = {} but Ferrers = {}",
                                id(),
                                decision.feasible,
                                ferrers
                            ));
                        }
                        if weak.holds {
                            let family: Vec<BiorderPair> = if weak.witnesses.is_empty() {
                                vec![BiorderPair::new(
                                    a_labels.clone(),
                                    x_labels.clone(),
                                    vec![rational(1, 2); m],
                                    vec![rational(1, 2); n],
                                )?]
                            } else {
                                weak.witnesses.iter().map(|w| w.pair.clone()).collect()
                            };
                            let combined = dyadic_combine_biorder(&family)?;
                            if !b
                                .verify_representation(&combined, ReprMode::Strict)?
                                .holds
                            {
                                violations.push(format!(
                                    "{}: dyadic sum does not strictly represent",
                                    id()
                                ));
                            }
                            if !ta.is_continuous(combined.v()) || !tx.is_continuous(combined.u())
                            {
                                violations
                                    .push(format!("{}: dyadic sum is not continuous", id()));
                            }
                        }
                    }
                }
            }
            levels.push(level);
        }
    }
    let total_instances = levels.iter().map(|l| l.instances).sum();
    Ok(BiorderAudit {
        size_max,
        scope,
        levels,
        total_instances,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_guards() {
        assert!(audit_interval_orders(0).is_err());
        assert!(audit_interval_orders(5).is_err());
        assert!(audit_biorders(4, TopologyPairScope::Extremes).is_err());
        assert!(sample_interval_orders(5, 1, 0).is_err());
    }

    #[test]
    fn single_point_audit() {
        let report = audit_interval_orders(1).unwrap();
        assert_eq!(report.total_instances, 1);
        assert_eq!(report.levels[0].reflexive_relations, 1);
        assert_eq!(report.levels[0].topologies, 1);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn two_point_audit_counts() {
        let report = audit_interval_orders(2).unwrap();
        let level = &report.levels[1];
        assert_eq!(level.reflexive_relations, 4);
        assert_eq!(level.topologies, 4);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_interval_orders(3, 40, 123).unwrap();
        let b = sample_interval_orders(3, 40, 123).unwrap();
        assert_eq!(a.weakly_continuous, b.weakly_continuous);
        assert!(a.violations.is_empty());
    }

    #[test]
    fn small_biorder_audit_passes() {
        let report = audit_biorders(2, TopologyPairScope::All).unwrap();
        assert!(report.violations.is_empty());
        // 16 tables at the 2×2 level.
        let level = report
            .levels
            .iter()
            .find(|l| l.rows == 2 && l.columns == 2)
            .unwrap();
        assert_eq!(level.tables, 16);
    }
}
