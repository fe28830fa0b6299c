//! Rational-exact evaluation of every bound on γ_×k, with per-graph
//! holds/tight/violated verdicts.

use std::fmt;

use num_rational::Ratio;

use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::solvers;

pub type Rational = Ratio<i64>;

fn int(v: usize) -> Rational {
    Rational::from_integer(v as i64)
}

/// The six inequalities checked per (graph, k). Order is fixed; reports list
/// entries in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundName {
    Thm22Upper,
    Thm23Lower,
    Thm23Upper,
    Prop24Lower,
    HararyHaynesLower,
    TrivialKgammaUpper,
}

impl BoundName {
    pub const ALL: [BoundName; 6] = [
        BoundName::Thm22Upper,
        BoundName::Thm23Lower,
        BoundName::Thm23Upper,
        BoundName::Prop24Lower,
        BoundName::HararyHaynesLower,
        BoundName::TrivialKgammaUpper,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundName::Thm22Upper => "thm22_upper",
            BoundName::Thm23Lower => "thm23_lower",
            BoundName::Thm23Upper => "thm23_upper",
            BoundName::Prop24Lower => "prop24_lower",
            BoundName::HararyHaynesLower => "harary_haynes_lower",
            BoundName::TrivialKgammaUpper => "trivial_kgamma_upper",
        }
    }

    /// Upper bounds cap γ_×k from above; the rest are lower bounds.
    pub fn is_upper(&self) -> bool {
        matches!(
            self,
            BoundName::Thm22Upper | BoundName::Thm23Upper | BoundName::TrivialKgammaUpper
        )
    }

    /// Degree hypothesis: bounds through the packing or Prop 2.4 need δ ≥ k;
    /// the γ_k-based chain and Harary–Haynes need only δ ≥ k−1 (which is
    /// also what makes γ_×k defined at all).
    pub fn applies(&self, delta: usize, k: usize) -> bool {
        match self {
            BoundName::Thm23Lower | BoundName::Thm23Upper | BoundName::Prop24Lower => delta >= k,
            BoundName::Thm22Upper
            | BoundName::HararyHaynesLower
            | BoundName::TrivialKgammaUpper => delta + 1 >= k,
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Tight,
    Violated,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Tight => "tight",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not_applicable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// kγ_k − (k−1)².
pub fn eval_thm22(gamma_k_value: usize, k: usize) -> Rational {
    Rational::from_integer((k * gamma_k_value) as i64 - ((k - 1) * (k - 1)) as i64)
}

/// (kρ, n − ρ).
pub fn eval_thm23(n: usize, rho_value: usize, k: usize) -> (Rational, Rational) {
    (int(k * rho_value), int(n - rho_value))
}

/// ((δ+k)n − 2m)/(δ+1); None when the hypothesis δ ≥ k fails.
pub fn eval_prop24(n: usize, m: usize, delta: usize, k: usize) -> Option<Rational> {
    if delta < k {
        return None;
    }
    Some(Rational::new(
        ((delta + k) * n) as i64 - (2 * m) as i64,
        (delta + 1) as i64,
    ))
}

/// (2kn − 2m)/(k+1).
pub fn eval_harary_haynes(n: usize, m: usize, k: usize) -> Rational {
    Rational::new((2 * k * n) as i64 - (2 * m) as i64, (k + 1) as i64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactValues {
    pub gamma_k: usize,
    /// None when k > δ+1 makes the parameter undefined.
    pub gamma_xk: Option<usize>,
    pub rho: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: BoundName,
    /// None exactly when the verdict is not_applicable.
    pub value: Option<Rational>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerdictCounts {
    pub holds: usize,
    pub tight: usize,
    pub violated: usize,
    pub not_applicable: usize,
}

impl VerdictCounts {
    pub fn record(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Tight => self.tight += 1,
            Verdict::Violated => self.violated += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
        }
    }

    pub fn absorb(&mut self, other: &VerdictCounts) {
        self.holds += other.holds;
        self.tight += other.tight;
        self.violated += other.violated;
        self.not_applicable += other.not_applicable;
    }
}

/// Every bound evaluated against the exact solver values for one (graph, k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub k: usize,
    pub exact: ExactValues,
    pub bounds: Vec<BoundEntry>,
    pub verdict_summary: VerdictCounts,
}

/// Solves the graph exactly and classifies all six bounds. When γ_×k is
/// undefined (k > δ+1) every entry is not_applicable and the exact value is
/// reported as undefined.
pub fn verify_all(g: &Graph, k: usize) -> BoundReport {
    assert!(k >= 2, "bound verification requires k >= 2");
    let n = g.n();
    let m = g.m();
    let delta = g.min_degree();

    let gamma_k_value = solvers::gamma_k(g, k).value;
    let rho_value = solvers::rho(g).value;
    let gamma_xk_value = if k <= delta + 1 {
        Some(
            solvers::gamma_xk(g, k)
                .expect("defined: k <= delta+1")
                .value,
        )
    } else {
        None
    };

    let exact = ExactValues {
        gamma_k: gamma_k_value,
        gamma_xk: gamma_xk_value,
        rho: rho_value,
    };

    let mut bounds = Vec::with_capacity(BoundName::ALL.len());
    let mut verdict_summary = VerdictCounts::default();
    for name in BoundName::ALL {
        let entry = if !name.applies(delta, k) {
            BoundEntry {
                name,
                value: None,
                verdict: Verdict::NotApplicable,
            }
        } else {
            let value = match name {
                BoundName::Thm22Upper => eval_thm22(exact.gamma_k, k),
                BoundName::Thm23Lower => eval_thm23(n, exact.rho, k).0,
                BoundName::Thm23Upper => eval_thm23(n, exact.rho, k).1,
                BoundName::Prop24Lower => {
                    eval_prop24(n, m, delta, k).expect("applicability checked")
                }
                BoundName::HararyHaynesLower => eval_harary_haynes(n, m, k),
                BoundName::TrivialKgammaUpper => int(k * exact.gamma_k),
            };
            let xk = int(exact.gamma_xk.expect("defined whenever any bound applies"));
            let verdict = if name.is_upper() {
                match xk.cmp(&value) {
                    std::cmp::Ordering::Greater => Verdict::Violated,
                    std::cmp::Ordering::Equal => Verdict::Tight,
                    std::cmp::Ordering::Less => Verdict::Holds,
                }
            } else {
                match xk.cmp(&value) {
                    std::cmp::Ordering::Less => Verdict::Violated,
                    std::cmp::Ordering::Equal => Verdict::Tight,
                    std::cmp::Ordering::Greater => Verdict::Holds,
                }
            };
            BoundEntry {
                name,
                value: Some(value),
                verdict,
            }
        };
        verdict_summary.record(entry.verdict);
        bounds.push(entry);
    }

    BoundReport {
        graph_id: to_graph6(g),
        n,
        m,
        delta,
        k,
        exact,
        bounds,
        verdict_summary,
    }
}

impl BoundReport {
    pub fn entry(&self, name: BoundName) -> &BoundEntry {
        self.bounds
            .iter()
            .find(|entry| entry.name == name)
            .expect("all six bounds are always present")
    }
}
