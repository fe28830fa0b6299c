//! Constructive procedures that turn a k-dominating set into a k-tuple
//! dominating set (with the kγ_k − (k−1)² size guarantee) and a 2-packing
//! into its complementary k-tuple dominating set.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::solvers::{is_2_packing, is_k_dominating, is_ktuple_dominating};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("k must be at least 2, got {k}")]
    KTooSmall { k: usize },
    #[error("minimum degree {delta} is below the required {required}")]
    MinDegreeTooSmall { delta: usize, required: usize },
    #[error("the provided set is not {k}-dominating")]
    NotKDominating { k: usize },
    #[error("the provided set is not a 2-packing")]
    NotAPacking,
}

/// Full record of one augmentation run: the input set d, the seed set u of
/// k−1 outside vertices, d' = d ∪ u, the deficient members d_zero, and the
/// final set. `fallback` marks runs where seeding is pointless or impossible
/// and the whole vertex set is returned instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationTrace {
    pub d: VertexSet,
    pub u: VertexSet,
    pub d_prime: VertexSet,
    pub d_zero: VertexSet,
    pub d_double_prime: VertexSet,
    pub k: usize,
    pub fallback: bool,
}

impl AugmentationTrace {
    /// The guaranteed size bound k|d| − (k−1)². Never underflows: under the
    /// construction's preconditions every k-dominating set has at least k
    /// vertices.
    pub fn size_bound(&self) -> usize {
        self.k * self.d.len() - (self.k - 1) * (self.k - 1)
    }

    /// The counting inequality behind the size guarantee:
    /// Σ_{v∈d_zero} deg_{d'}(v) + |d∖d_zero|·(k−1) ≥ k(k−1).
    /// Vacuously true for fallback runs, which skip the seeding step.
    pub fn counting_inequality_holds(&self, g: &Graph) -> bool {
        if self.fallback {
            return true;
        }
        let sum: usize = self
            .d_zero
            .iter()
            .map(|v| g.degree_in(v, &self.d_prime))
            .sum();
        sum + (self.d.len() - self.d_zero.len()) * (self.k - 1) >= self.k * (self.k - 1)
    }
}

fn check_cover_preconditions(
    g: &Graph,
    d: &VertexSet,
    k: usize,
    min_delta: usize,
) -> Result<(), ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::KTooSmall { k });
    }
    let delta = g.min_degree();
    if delta < min_delta {
        return Err(ConstructionError::MinDegreeTooSmall {
            delta,
            required: min_delta,
        });
    }
    if !is_k_dominating(g, d, k) {
        return Err(ConstructionError::NotKDominating { k });
    }
    Ok(())
}

/// Augments a k-dominating set into a k-tuple dominating set.
///
/// Seeds d with u: the k−1 outside vertices of maximum degree into d (ties
/// by lowest index). Members of d left with fewer than k−1 neighbors in
/// d' = d ∪ u form d_zero and are repaired by a greedy multicover: repeatedly
/// add the outside vertex adjacent to the most still-deficient members.
/// Every helper joins with at least k neighbors already inside, so the
/// result is k-tuple dominating, and the greedy accounting keeps the size
/// within k|d| − (k−1)².
///
/// When that bound exceeds n — or fewer than k−1 vertices sit outside d —
/// seeding is skipped and the whole vertex set is returned.
pub fn augment_to_ktuple(
    g: &Graph,
    d: &VertexSet,
    k: usize,
) -> Result<AugmentationTrace, ConstructionError> {
    check_cover_preconditions(g, d, k, k - 1)?;
    let n = g.n();
    let outside = d.complement();

    let bound_exceeds_n = k * d.len() > (k - 1) * (k - 1) + n;
    if bound_exceeds_n || outside.len() < k - 1 {
        let trace = AugmentationTrace {
            d: *d,
            u: VertexSet::empty(n),
            d_prime: *d,
            d_zero: VertexSet::empty(n),
            d_double_prime: g.vertex_set(),
            k,
            fallback: true,
        };
        debug_assert!(is_ktuple_dominating(g, &trace.d_double_prime, k));
        return Ok(trace);
    }

    let mut by_coverage: Vec<usize> = outside.iter().collect();
    by_coverage.sort_by(|&a, &b| g.degree_in(b, d).cmp(&g.degree_in(a, d)).then(a.cmp(&b)));
    let mut u = VertexSet::empty(n);
    for &v in by_coverage.iter().take(k - 1) {
        u = u.with(v);
    }
    let d_prime = d.union(&u);

    let mut d_zero = VertexSet::empty(n);
    for v in d.iter() {
        if g.degree_in(v, &d_prime) < k - 1 {
            d_zero = d_zero.with(v);
        }
    }

    let mut w = d_prime;
    loop {
        let deficient: Vec<usize> = d_zero
            .iter()
            .filter(|&v| g.degree_in(v, &w) < k - 1)
            .collect();
        if deficient.is_empty() {
            break;
        }
        let mut helper = usize::MAX;
        let mut covered = 0usize;
        for h in w.complement().iter() {
            let c = deficient.iter().filter(|&&v| g.has_edge(h, v)).count();
            if c > covered {
                covered = c;
                helper = h;
            }
        }
        debug_assert!(
            covered >= 1,
            "a deficient member always has a neighbor outside w when delta >= k-1"
        );
        w = w.with(helper);
    }

    let trace = AugmentationTrace {
        d: *d,
        u,
        d_prime,
        d_zero,
        d_double_prime: w,
        k,
        fallback: false,
    };
    debug_assert!(is_ktuple_dominating(g, &trace.d_double_prime, k));
    debug_assert!(trace.counting_inequality_holds(g));
    debug_assert!(trace.d_double_prime.len() <= trace.size_bound());
    debug_assert!(
        trace.d_double_prime.len() + trace.k * (trace.k - 1)
            <= trace.d_prime.len() + (trace.k - 1) * trace.d.len(),
        "greedy repair exceeded the proof's deficiency budget"
    );
    Ok(trace)
}

/// Complements a 2-packing into a k-tuple dominating set (requires δ ≥ k):
/// packing members keep all their neighbors outside the packing, and every
/// other vertex loses at most one closed neighbor to it.
pub fn packing_complement(
    g: &Graph,
    p: &VertexSet,
    k: usize,
) -> Result<VertexSet, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::KTooSmall { k });
    }
    let delta = g.min_degree();
    if delta < k {
        return Err(ConstructionError::MinDegreeTooSmall { delta, required: k });
    }
    if !is_2_packing(g, p) {
        return Err(ConstructionError::NotAPacking);
    }
    let complement = p.complement();
    debug_assert!(is_ktuple_dominating(g, &complement, k));
    Ok(complement)
}

/// Baseline augmentation without the u-seeding: gives every member of d up
/// to k−1 helpers, one lowest-index outside neighbor at a time. Size ≤ k|d|.
pub fn kgamma_trivial_bound(
    g: &Graph,
    d: &VertexSet,
    k: usize,
) -> Result<VertexSet, ConstructionError> {
    check_cover_preconditions(g, d, k, k - 1)?;
    let mut w = *d;
    for v in d.iter() {
        while g.degree_in(v, &w) < k - 1 {
            let candidates = g.row(v) & !w.bits();
            debug_assert!(candidates != 0, "deg(v) >= k-1 guarantees a free neighbor");
            w = w.with(candidates.trailing_zeros() as usize);
        }
    }
    debug_assert!(is_ktuple_dominating(g, &w, k));
    debug_assert!(w.len() <= k * d.len());
    Ok(w)
}
