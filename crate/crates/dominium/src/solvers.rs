//! Exact solvers for γ_k, γ_×k, and ρ.
//!
//! Each parameter gets a branch-and-bound solver and an independent
//! brute-force oracle (plain cardinality-ordered subset enumeration). Both
//! report the same deterministic witness: the lexicographically least optimal
//! set, compared as sorted vertex lists. The solvers reach it in two phases —
//! a value-only search, then a greedy ascending-index rebuild where each
//! tentative inclusion is validated by a constrained feasibility search.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Order guard for the oracles; beyond this the subset enumeration is
/// pointless as a test aid.
pub const ORACLE_MAX_ORDER: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parameter {
    GammaK,
    GammaXk,
    Rho,
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parameter::GammaK => "gamma_k",
            Parameter::GammaXk => "gamma_xk",
            Parameter::Rho => "rho",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BranchAndBound,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BranchAndBound => "branch_and_bound",
            Method::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("gamma_xk is undefined for k={k}: it requires k <= delta+1 and this graph has minimum degree {delta}")]
    UndefinedParameter { k: usize, delta: usize },
    #[error("oracle limited to order <= {ORACLE_MAX_ORDER}, got {n}")]
    OrderAboveOracleGuard { n: usize },
    #[error("parameter {parameter} requires k")]
    MissingK { parameter: Parameter },
}

/// Optimal value, witness, and search statistics for one parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub parameter: Parameter,
    pub k: Option<usize>,
    pub value: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    pub method: Method,
}

/// True iff every vertex outside `d` has at least `k` neighbors in `d`.
pub fn is_k_dominating(g: &Graph, d: &VertexSet, k: usize) -> bool {
    assert!(k >= 1, "k-domination requires k >= 1");
    assert_eq!(d.width(), g.n(), "vertex-set width mismatch");
    let bits = d.bits();
    g.vertices()
        .all(|v| bits >> v & 1 == 1 || (g.row(v) & bits).count_ones() as usize >= k)
}

/// True iff `d` is k-dominating and every member has at least k-1 neighbors
/// inside `d`.
pub fn is_ktuple_dominating(g: &Graph, d: &VertexSet, k: usize) -> bool {
    assert!(k >= 1, "k-tuple domination requires k >= 1");
    assert_eq!(d.width(), g.n(), "vertex-set width mismatch");
    let bits = d.bits();
    is_k_dominating(g, d, k)
        && d.iter()
            .all(|v| (g.row(v) & bits).count_ones() as usize >= k - 1)
}

/// Equivalent closed-neighborhood form: |N[v] ∩ d| >= k for every vertex.
/// Kept separate so the two definitions can be tested against each other.
#[cfg(test)]
fn covers_k_times(g: &Graph, bits: u64, k: u32) -> bool {
    g.vertices()
        .all(|v| (g.closed_row(v) & bits).count_ones() >= k)
}

/// True iff the members of `p` have pairwise disjoint closed neighborhoods.
pub fn is_2_packing(g: &Graph, p: &VertexSet) -> bool {
    assert_eq!(p.width(), g.n(), "vertex-set width mismatch");
    let mut seen = 0u64;
    for v in p.iter() {
        let closed = g.closed_row(v);
        if closed & seen != 0 {
            return false;
        }
        seen |= closed;
    }
    true
}

/// Shared engine for the two covering parameters. `tuple` selects γ_×k
/// (closed neighborhoods, every vertex constrained); otherwise γ_k (open
/// neighborhoods, only vertices decided out of D are constrained).
struct CoverSearch<'a> {
    g: &'a Graph,
    k: u32,
    tuple: bool,
    /// Divisor of the deficiency-sum lower bound: one added vertex removes at
    /// most Δ+1 units of closed-neighborhood deficiency (Δ for the open
    /// form, so Δ+1 is valid for both).
    div: u32,
    full: u64,
    nodes: u64,
    best_value: u32,
    best_bits: u64,
    /// Feasibility mode: succeed as soon as a solution of size <= target is
    /// seen, instead of optimizing.
    target: Option<u32>,
    found: bool,
}

impl<'a> CoverSearch<'a> {
    fn new(g: &'a Graph, k: usize, tuple: bool) -> Self {
        CoverSearch {
            g,
            k: k as u32,
            tuple,
            div: g.max_degree() as u32 + 1,
            full: g.full_mask(),
            nodes: 0,
            best_value: g.n() as u32,
            best_bits: g.full_mask(),
            target: None,
            found: false,
        }
    }

    fn optimize(g: &'a Graph, k: usize, tuple: bool) -> (u32, u64) {
        let mut s = CoverSearch::new(g, k, tuple);
        s.search(0, 0);
        (s.best_value, s.nodes)
    }

    fn feasible(
        g: &'a Graph,
        k: usize,
        tuple: bool,
        in_bits: u64,
        out_bits: u64,
        target: u32,
    ) -> (bool, u64) {
        let mut s = CoverSearch::new(g, k, tuple);
        s.target = Some(target);
        s.search(in_bits, out_bits);
        (s.found, s.nodes)
    }

    fn req_row(&self, v: usize) -> u64 {
        if self.tuple {
            self.g.closed_row(v)
        } else {
            self.g.row(v)
        }
    }

    fn accept(&mut self, bits: u64, count: u32) {
        match self.target {
            Some(t) => {
                if count <= t {
                    self.found = true;
                }
            }
            None => {
                if count < self.best_value {
                    self.best_value = count;
                    self.best_bits = bits;
                }
            }
        }
    }

    fn search(&mut self, in_bits: u64, out_bits: u64) {
        if self.found {
            return;
        }
        self.nodes += 1;
        let undecided = self.full & !in_bits & !out_bits;
        let in_count = in_bits.count_ones();

        // Deficiencies of currently constrained vertices. A vertex that can
        // no longer gather k coverers kills the branch.
        let mut worst_v = 0usize;
        let mut worst_need = 0u32;
        let mut total_deficiency = 0u32;
        for v in self.g.vertices() {
            if !self.tuple && out_bits >> v & 1 == 0 {
                continue;
            }
            let row = self.req_row(v);
            let have = (row & in_bits).count_ones();
            if have >= self.k {
                continue;
            }
            let need = self.k - have;
            if need > (row & undecided).count_ones() {
                return;
            }
            total_deficiency += need;
            if need > worst_need {
                worst_need = need;
                worst_v = v;
            }
        }

        let cutoff = match self.target {
            Some(t) => t + 1,
            None => self.best_value,
        };
        if in_count + total_deficiency.div_ceil(self.div) >= cutoff {
            return;
        }

        if worst_need == 0 {
            if !self.tuple {
                // No decided-out vertex is deficient. An undecided vertex
                // that still lacks k in-neighbors must be branched on by
                // status before the node can close.
                let mut pending = usize::MAX;
                let mut pending_need = 0u32;
                let mut rest = undecided;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let have = (self.g.row(v) & in_bits).count_ones();
                    if have < self.k && self.k - have > pending_need {
                        pending_need = self.k - have;
                        pending = v;
                    }
                }
                if pending != usize::MAX {
                    self.search(in_bits | 1 << pending, out_bits);
                    if self.found {
                        return;
                    }
                    self.search(in_bits, out_bits | 1 << pending);
                    return;
                }
            }
            // Every constraint is met; the undecided vertices stay out.
            self.accept(in_bits, in_count);
            return;
        }

        // The worst vertex needs `worst_need` of its undecided coverers.
        // Branch on which of them (in ascending order) is the first to join:
        // branch j puts candidates 0..j out and candidate j in.
        let candidates = self.req_row(worst_v) & undecided;
        let total = candidates.count_ones();
        let mut rest = candidates;
        let mut excluded = 0u64;
        let mut used = 0u32;
        while rest != 0 {
            if total - used < worst_need {
                break;
            }
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.search(in_bits | 1 << c, out_bits | excluded);
            if self.found {
                return;
            }
            excluded |= 1 << c;
            used += 1;
        }
    }
}

/// Maximum-2-packing search: maximum independent set on the conflict graph
/// whose edges join vertices with intersecting closed neighborhoods. The
/// upper bound is a greedy clique cover of the remaining candidates.
struct PackingSearch {
    /// Conflict row of v, with v's own bit set.
    h_closed: Vec<u64>,
    nodes: u64,
    best_value: u32,
    best_bits: u64,
    target: Option<u32>,
    found: bool,
}

impl PackingSearch {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut h_closed = vec![0u64; n];
        for u in 0..n {
            h_closed[u] |= 1 << u;
            for v in (u + 1)..n {
                if g.closed_row(u) & g.closed_row(v) != 0 {
                    h_closed[u] |= 1 << v;
                    h_closed[v] |= 1 << u;
                }
            }
        }
        PackingSearch {
            h_closed,
            nodes: 0,
            best_value: 0,
            best_bits: 0,
            target: None,
            found: false,
        }
    }

    fn clique_cover(&self, avail: u64) -> u32 {
        let mut cliques = [0u64; 64];
        let mut count = 0usize;
        let mut rest = avail;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let hv = self.h_closed[v];
            match cliques[..count].iter_mut().find(|c| **c & !hv == 0) {
                Some(c) => *c |= 1 << v,
                None => {
                    cliques[count] = 1 << v;
                    count += 1;
                }
            }
        }
        count as u32
    }

    fn search(&mut self, in_bits: u64, avail: u64) {
        if self.found {
            return;
        }
        self.nodes += 1;
        let count = in_bits.count_ones();
        match self.target {
            Some(t) => {
                if count >= t {
                    self.found = true;
                    return;
                }
            }
            None => {
                if count > self.best_value {
                    self.best_value = count;
                    self.best_bits = in_bits;
                }
            }
        }
        if avail == 0 {
            return;
        }
        let goal = match self.target {
            Some(t) => t,
            None => self.best_value + 1,
        };
        if count + self.clique_cover(avail) < goal {
            return;
        }
        let v = avail.trailing_zeros() as usize;
        self.search(in_bits | 1 << v, avail & !self.h_closed[v]);
        if self.found {
            return;
        }
        self.search(in_bits, avail & !(1 << v));
    }

    fn blocked_by(&self, in_bits: u64) -> u64 {
        let mut blocked = 0u64;
        let mut rest = in_bits;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            blocked |= self.h_closed[v];
        }
        blocked
    }
}

/// Lex-least witness rebuild shared by the covering parameters.
fn cover_witness(g: &Graph, k: usize, tuple: bool, value: u32) -> (u64, u64) {
    let mut in_bits = 0u64;
    let mut out_bits = 0u64;
    let mut nodes = 0u64;
    for v in g.vertices() {
        if in_bits.count_ones() == value {
            break;
        }
        let (ok, used) = CoverSearch::feasible(g, k, tuple, in_bits | 1 << v, out_bits, value);
        nodes += used;
        if ok {
            in_bits |= 1 << v;
        } else {
            out_bits |= 1 << v;
        }
    }
    (in_bits, nodes)
}

/// Exact k-domination number with the lexicographically least optimal
/// witness.
pub fn gamma_k(g: &Graph, k: usize) -> SolveResult {
    assert!(k >= 1, "gamma_k requires k >= 1");
    let (value, phase1) = CoverSearch::optimize(g, k, false);
    let (bits, phase2) = cover_witness(g, k, false, value);
    let witness = VertexSet::from_bits(g.n(), bits);
    debug_assert!(is_k_dominating(g, &witness, k));
    debug_assert_eq!(witness.len(), value as usize);
    SolveResult {
        parameter: Parameter::GammaK,
        k: Some(k),
        value: value as usize,
        witness,
        nodes_explored: phase1 + phase2,
        method: Method::BranchAndBound,
    }
}

/// Exact k-tuple domination number. Defined only for k <= δ(G)+1.
pub fn gamma_xk(g: &Graph, k: usize) -> Result<SolveResult, SolverError> {
    assert!(k >= 1, "gamma_xk requires k >= 1");
    let delta = g.min_degree();
    if k > delta + 1 {
        return Err(SolverError::UndefinedParameter { k, delta });
    }
    let (value, phase1) = CoverSearch::optimize(g, k, true);
    let (bits, phase2) = cover_witness(g, k, true, value);
    let witness = VertexSet::from_bits(g.n(), bits);
    debug_assert!(is_ktuple_dominating(g, &witness, k));
    debug_assert_eq!(witness.len(), value as usize);
    Ok(SolveResult {
        parameter: Parameter::GammaXk,
        k: Some(k),
        value: value as usize,
        witness,
        nodes_explored: phase1 + phase2,
        method: Method::BranchAndBound,
    })
}

/// Exact 2-packing number with the lexicographically least maximum witness.
pub fn rho(g: &Graph) -> SolveResult {
    let mut search = PackingSearch::new(g);
    search.search(0, g.full_mask());
    let value = search.best_value;
    let mut nodes = search.nodes;

    let mut in_bits = 0u64;
    let mut out_bits = 0u64;
    for v in g.vertices() {
        if in_bits.count_ones() == value {
            break;
        }
        let mut probe = PackingSearch::new(g);
        probe.target = Some(value);
        let tentative = in_bits | 1 << v;
        if probe.blocked_by(in_bits) >> v & 1 == 1 {
            out_bits |= 1 << v;
            continue;
        }
        let avail = g.full_mask() & !probe.blocked_by(tentative) & !out_bits;
        probe.search(tentative, avail);
        nodes += probe.nodes;
        if probe.found {
            in_bits = tentative;
        } else {
            out_bits |= 1 << v;
        }
    }

    let witness = VertexSet::from_bits(g.n(), in_bits);
    debug_assert!(is_2_packing(g, &witness));
    debug_assert_eq!(witness.len(), value as usize);
    SolveResult {
        parameter: Parameter::Rho,
        k: None,
        value: value as usize,
        witness,
        nodes_explored: nodes,
        method: Method::BranchAndBound,
    }
}

/// Dispatching front end over the three fast solvers.
pub fn solve(
    g: &Graph,
    parameter: Parameter,
    k: Option<usize>,
) -> Result<SolveResult, SolverError> {
    match parameter {
        Parameter::GammaK => {
            let k = k.ok_or(SolverError::MissingK { parameter })?;
            Ok(gamma_k(g, k))
        }
        Parameter::GammaXk => {
            let k = k.ok_or(SolverError::MissingK { parameter })?;
            gamma_xk(g, k)
        }
        Parameter::Rho => Ok(rho(g)),
    }
}

fn oracle_guard(g: &Graph) -> Result<(), SolverError> {
    if g.n() > ORACLE_MAX_ORDER {
        Err(SolverError::OrderAboveOracleGuard { n: g.n() })
    } else {
        Ok(())
    }
}

fn oracle_minimize<F>(g: &Graph, feasible: F) -> (VertexSet, u64)
where
    F: Fn(&VertexSet) -> bool,
{
    let n = g.n();
    let mut tested = 0u64;
    for size in 0..=n {
        for combo in (0..n).combinations(size) {
            tested += 1;
            let set = VertexSet::from_vertices(n, &combo);
            if feasible(&set) {
                return (set, tested);
            }
        }
    }
    unreachable!("the full vertex set is always feasible for the covering parameters");
}

/// Oracle for γ_k: cardinality-ordered subset enumeration, no pruning.
pub fn oracle_gamma_k(g: &Graph, k: usize) -> Result<SolveResult, SolverError> {
    assert!(k >= 1, "gamma_k requires k >= 1");
    oracle_guard(g)?;
    let (witness, tested) = oracle_minimize(g, |set| is_k_dominating(g, set, k));
    Ok(SolveResult {
        parameter: Parameter::GammaK,
        k: Some(k),
        value: witness.len(),
        witness,
        nodes_explored: tested,
        method: Method::Oracle,
    })
}

/// Oracle for γ_×k.
pub fn oracle_gamma_xk(g: &Graph, k: usize) -> Result<SolveResult, SolverError> {
    assert!(k >= 1, "gamma_xk requires k >= 1");
    oracle_guard(g)?;
    let delta = g.min_degree();
    if k > delta + 1 {
        return Err(SolverError::UndefinedParameter { k, delta });
    }
    let (witness, tested) = oracle_minimize(g, |set| is_ktuple_dominating(g, set, k));
    Ok(SolveResult {
        parameter: Parameter::GammaXk,
        k: Some(k),
        value: witness.len(),
        witness,
        nodes_explored: tested,
        method: Method::Oracle,
    })
}

/// Oracle for ρ: subset enumeration by descending cardinality.
pub fn oracle_rho(g: &Graph) -> Result<SolveResult, SolverError> {
    oracle_guard(g)?;
    let n = g.n();
    let mut tested = 0u64;
    for size in (0..=n).rev() {
        for combo in (0..n).combinations(size) {
            tested += 1;
            let set = VertexSet::from_vertices(n, &combo);
            if is_2_packing(g, &set) {
                return Ok(SolveResult {
                    parameter: Parameter::Rho,
                    k: None,
                    value: size,
                    witness: set,
                    nodes_explored: tested,
                    method: Method::Oracle,
                });
            }
        }
    }
    unreachable!("the empty set is always a 2-packing");
}

/// Dispatching front end over the three oracles.
pub fn oracle_solve(
    g: &Graph,
    parameter: Parameter,
    k: Option<usize>,
) -> Result<SolveResult, SolverError> {
    match parameter {
        Parameter::GammaK => {
            let k = k.ok_or(SolverError::MissingK { parameter })?;
            oracle_gamma_k(g, k)
        }
        Parameter::GammaXk => {
            let k = k.ok_or(SolverError::MissingK { parameter })?;
            oracle_gamma_xk(g, k)
        }
        Parameter::Rho => oracle_rho(g),
    }
}
