//! Difference-constraint feasibility by single-source shortest paths.
//!
//! A system of constraints `x_l − x_r ≤ c` is feasible exactly when the graph
//! with one edge `r → l` of weight `c` per constraint has no negative cycle;
//! shortest-path distances from a virtual source connected to every vertex
//! with weight 0 (equivalently, all distances initialized to 0) are then a
//! satisfying integer assignment. The bounds used by this crate are always 0
//! or −1, with −1 encoding a strict inequality after integer scaling.

/// One constraint `lhs − rhs ≤ bound`, by variable index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraint {
    pub lhs: usize,
    pub rhs: usize,
    pub bound: i64,
}

#[derive(Debug, Clone, Default)]
pub struct ConstraintSystem {
    num_vars: usize,
    constraints: Vec<Constraint>,
}

/// Either a satisfying integer assignment or a negative cycle, reported as
/// indices into the constraint list (in cycle order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<i64>),
    Infeasible {
        cycle: Vec<usize>,
        total_weight: i64,
    },
}

impl ConstraintSystem {
    pub fn new(num_vars: usize) -> Self {
        ConstraintSystem {
            num_vars,
            constraints: Vec::new(),
        }
    }

    /// Add `lhs − rhs ≤ bound`; returns the constraint's index.
    pub fn push(&mut self, lhs: usize, rhs: usize, bound: i64) -> usize {
        debug_assert!(lhs < self.num_vars && rhs < self.num_vars);
        self.constraints.push(Constraint { lhs, rhs, bound });
        self.constraints.len() - 1
    }

    /// Remove the most recently added constraint.
    pub fn pop(&mut self) {
        self.constraints.pop();
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn solve(&self) -> Feasibility {
        let n = self.num_vars;
        let mut dist = vec![0i64; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut last_changed: Option<usize> = None;
        for pass in 0..=n {
            let mut changed = None;
            for (idx, c) in self.constraints.iter().enumerate() {
                if dist[c.rhs] + c.bound < dist[c.lhs] {
                    dist[c.lhs] = dist[c.rhs] + c.bound;
                    pred[c.lhs] = Some(idx);
                    changed = Some(c.lhs);
                }
            }
            if changed.is_none() {
                return Feasibility::Feasible(dist);
            }
            last_changed = changed;
            if pass == n {
                break;
            }
        }
        // A relaxation survived n+1 passes: walk predecessors back onto the
        // cycle, then collect its edges.
        let mut v = last_changed.expect("a vertex relaxed in the final pass");
        for _ in 0..n {
            v = self.constraints[pred[v].expect("relaxed vertex has a predecessor")].rhs;
        }
        let start = v;
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            let e = pred[cur].expect("cycle vertex has a predecessor");
            cycle.push(e);
            cur = self.constraints[e].rhs;
            if cur == start {
                break;
            }
        }
        cycle.reverse();
        let total_weight: i64 = cycle.iter().map(|&e| self.constraints[e].bound).sum();
        debug_assert!(total_weight < 0);
        Feasibility::Infeasible {
            cycle,
            total_weight,
        }
    }
}
