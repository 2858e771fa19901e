//! Exhaustive and randomized generators for the small-instance audits:
//! relations, preorders, topologies (via the finite-space correspondence
//! with preorders), biorders, and valid scales.

use num::BigRational;
use rand::Rng;

use crate::biorders::FiniteBiorder;
use crate::bits::{full_mask, is_subset};
use crate::ratio::rational;
use crate::relations::FiniteRelation;
use crate::scales::DyadicScale;
use crate::topology::FiniteTopology;

/// Default labels for generated carriers.
pub fn letters(n: usize) -> Vec<String> {
    const ABC: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
    (0..n)
        .map(|i| {
            if i < ABC.len() {
                ABC[i].to_string()
            } else {
                format!("p{i}")
            }
        })
        .collect()
}

/// All reflexive relations on `n` labeled elements (`2^(n²−n)` of them).
pub fn reflexive_relations(n: usize) -> impl Iterator<Item = FiniteRelation> {
    let labels = letters(n);
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    let count = 1u64 << cells.len();
    (0..count).map(move |code| {
        let mut rows: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for (bit, &(i, j)) in cells.iter().enumerate() {
            if code & (1 << bit) != 0 {
                rows[i] |= 1 << j;
            }
        }
        FiniteRelation::new(labels.clone(), rows).expect("generated relation is well-formed")
    })
}

/// All relations on `n` labeled elements (`2^(n²)`), reflexive or not.
pub fn all_relations(n: usize) -> impl Iterator<Item = FiniteRelation> {
    let labels = letters(n);
    let count = 1u64 << (n * n);
    (0..count).map(move |code| {
        let rows = (0..n)
            .map(|i| (code >> (n * i)) & full_mask(n))
            .collect();
        FiniteRelation::new(labels.clone(), rows).expect("generated relation is well-formed")
    })
}

/// Reflexive Ferrers relations on `n` elements.
pub fn interval_orders(n: usize) -> Vec<FiniteRelation> {
    reflexive_relations(n)
        .filter(|r| r.ferrers_violation().is_none())
        .collect()
}

/// Reflexive transitive relations on `n` elements.
pub fn preorders(n: usize) -> Vec<FiniteRelation> {
    reflexive_relations(n).filter(|r| r.is_transitive()).collect()
}

/// Reflexive transitive total relations on `n` elements.
pub fn total_preorders(n: usize) -> Vec<FiniteRelation> {
    reflexive_relations(n)
        .filter(|r| r.is_transitive() && r.is_total())
        .collect()
}

fn upset_topology(pre: &FiniteRelation) -> FiniteTopology {
    let n = pre.n();
    let opens: Vec<u64> = (0..(1u64 << n))
        .filter(|&s| {
            (0..n).all(|i| s & (1 << i) == 0 || is_subset(pre.upper_mask(i), s))
        })
        .collect();
    FiniteTopology::new(pre.labels().to_vec(), opens)
        .expect("up-set family of a preorder is a topology")
}

/// Every topology on `n` labeled points, one per preorder (29 on three
/// points, 355 on four).
pub fn topologies(n: usize) -> Vec<FiniteTopology> {
    preorders(n).iter().map(upset_topology).collect()
}

/// Every topology over the given point labels.
pub fn topologies_on(labels: &[String]) -> Vec<FiniteTopology> {
    topologies(labels.len())
        .into_iter()
        .map(|t| {
            FiniteTopology::new(labels.to_vec(), t.opens().to_vec())
                .expect("relabeling preserves the topology axioms")
        })
        .collect()
}

/// Row and column labels used by [`biorders`].
pub fn biorder_labels(m: usize, n: usize) -> (Vec<String>, Vec<String>) {
    (
        (0..m).map(|i| format!("a{i}")).collect(),
        (0..n).map(|j| format!("x{j}")).collect(),
    )
}

/// A uniformly seeded random topology: random reflexive relation, transitive
/// closure, then its up-set family.
pub fn random_topology<R: Rng>(rng: &mut R, n: usize) -> FiniteTopology {
    let labels = letters(n);
    let mut rows: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(0.5) {
                rows[i] |= 1 << j;
            }
        }
    }
    // Transitive closure.
    for k in 0..n {
        for i in 0..n {
            if rows[i] & (1 << k) != 0 {
                rows[i] |= rows[k];
            }
        }
    }
    let pre = FiniteRelation::new(labels, rows).expect("closure is well-formed");
    debug_assert!(pre.is_transitive());
    upset_topology(&pre)
}

/// A random valid scale on the dyadic grid `{k/2^depth}`: sets are chosen
/// top-down so that each level's closure stays inside the next.
pub fn random_scale<R: Rng>(rng: &mut R, t: &FiniteTopology, depth: u32) -> DyadicScale {
    let size = 1usize << depth;
    let grid: Vec<BigRational> = (1..=size as i64)
        .map(|k| rational(k, size as i64))
        .collect();
    let mut sets = vec![0u64; size];
    sets[size - 1] = t.full();
    for idx in (0..size - 1).rev() {
        let above = sets[idx + 1];
        let candidates: Vec<u64> = t
            .opens()
            .iter()
            .copied()
            .filter(|&o| is_subset(t.closure(o), above))
            .collect();
        sets[idx] = candidates[rng.random_range(0..candidates.len())];
    }
    DyadicScale::new(grid, sets, t.n()).expect("constructed scale is well-formed")
}

/// All strict tables from `m` row elements to `n` column elements.
pub fn biorders(m: usize, n: usize) -> impl Iterator<Item = FiniteBiorder> {
    let (a_labels, x_labels) = biorder_labels(m, n);
    let count = 1u64 << (m * n);
    (0..count).map(move |code| {
        let rows = (0..m)
            .map(|i| (code >> (n * i)) & full_mask(n))
            .collect();
        FiniteBiorder::new(a_labels.clone(), x_labels.clone(), rows)
            .expect("generated biorder is well-formed")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn known_counts() {
        assert_eq!(reflexive_relations(2).count(), 4);
        assert_eq!(reflexive_relations(4).count(), 4096);
        assert_eq!(preorders(1).len(), 1);
        assert_eq!(topologies(1).len(), 1);
        assert_eq!(topologies(2).len(), 4);
        assert_eq!(topologies(3).len(), 29);
        assert_eq!(topologies(4).len(), 355);
        assert_eq!(total_preorders(3).len(), 13);
        assert_eq!(biorders(3, 3).count(), 512);
    }

    #[test]
    fn every_total_preorder_is_an_interval_order() {
        for r in total_preorders(3) {
            assert!(r.check_axioms().interval_order);
        }
    }

    #[test]
    fn interval_orders_are_total() {
        for n in 1..=4usize {
            for r in interval_orders(n) {
                assert!(r.is_total(), "{r:?}");
            }
        }
    }

    #[test]
    fn random_topologies_validate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let t = random_topology(&mut rng, 5);
            // Reconstructing through the validating constructor must succeed.
            FiniteTopology::new(t.points().to_vec(), t.opens().to_vec()).unwrap();
        }
    }

    #[test]
    fn random_scales_validate() {
        use crate::scales::validate_scale;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let t = random_topology(&mut rng, 4);
            let depth = rng.random_range(1..=4);
            let sc = random_scale(&mut rng, &t, depth);
            assert!(validate_scale(&t, &sc).valid);
        }
    }
}
