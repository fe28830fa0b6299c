//! Deterministic graph generators: named families, seeded random graphs, and
//! exhaustive small-order enumeration.

use std::fmt;

use thiserror::Error;

use crate::graph::{low_bits, Graph, MAX_ORDER};

/// Limit for [`enumerate_all`]; 2^21 graphs at order 7 is the most the test
/// corpora should ever chew through.
pub const ENUMERATION_MAX_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("{family} requires {param} >= {min}, got {got}")]
    ParameterBelowMinimum {
        family: &'static str,
        param: &'static str,
        min: usize,
        got: usize,
    },
    #[error("order {n} out of range (supported: 1..={MAX_ORDER})")]
    OrderOutOfRange { n: usize },
    #[error("edge probability {p} out of range (expected 0.0..=1.0)")]
    ProbabilityOutOfRange { p: f64 },
    #[error("exhaustive enumeration limited to order 1..={ENUMERATION_MAX_ORDER}, got {n}")]
    EnumerationOutOfRange { n: usize },
}

fn check_order(n: usize) -> Result<(), FamilyError> {
    if n == 0 || n > MAX_ORDER {
        Err(FamilyError::OrderOutOfRange { n })
    } else {
        Ok(())
    }
}

/// Complete graph K_n.
pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    check_order(n)?;
    let all = low_bits(n);
    let adj = (0..n).map(|v| all & !(1u64 << v)).collect();
    Ok(Graph::from_rows(n, adj))
}

/// Edgeless graph on n vertices.
pub fn empty(n: usize) -> Result<Graph, FamilyError> {
    check_order(n)?;
    Ok(Graph::from_rows(n, vec![0; n]))
}

/// Cycle C_n, n >= 3, edges i ~ i+1 (mod n).
pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(FamilyError::ParameterBelowMinimum {
            family: "cycle",
            param: "n",
            min: 3,
            got: n,
        });
    }
    check_order(n)?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::from_edges(n, &edges).expect("cycle edges are valid"))
}

/// Path P_n on n vertices, edges i ~ i+1.
pub fn path(n: usize) -> Result<Graph, FamilyError> {
    check_order(n)?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Graph::from_edges(n, &edges).expect("path edges are valid"))
}

/// Complete bipartite graph K_{a,b}; the a-side occupies indices 0..a-1.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, FamilyError> {
    for (param, got) in [("a", a), ("b", b)] {
        if got < 1 {
            return Err(FamilyError::ParameterBelowMinimum {
                family: "complete_bipartite",
                param,
                min: 1,
                got,
            });
        }
    }
    let n = a + b;
    check_order(n)?;
    let left = low_bits(a);
    let right = low_bits(n) & !left;
    let adj = (0..n).map(|v| if v < a { right } else { left }).collect();
    Ok(Graph::from_rows(n, adj))
}

/// H_{k,r}: a clique on k·r vertices (indices 0..kr-1) plus r apex vertices
/// (indices kr..kr+r-1), apex i adjacent exactly to clique vertices
/// ki..ki+k-1. Order r(k+1).
pub fn h_family(k: usize, r: usize) -> Result<Graph, FamilyError> {
    if k < 2 {
        return Err(FamilyError::ParameterBelowMinimum {
            family: "h_family",
            param: "k",
            min: 2,
            got: k,
        });
    }
    if r < 1 {
        return Err(FamilyError::ParameterBelowMinimum {
            family: "h_family",
            param: "r",
            min: 1,
            got: r,
        });
    }
    let n = r * (k + 1);
    check_order(n)?;
    let mut edges = Vec::new();
    let kr = k * r;
    for u in 0..kr {
        for v in (u + 1)..kr {
            edges.push((u, v));
        }
    }
    for i in 0..r {
        for j in 0..k {
            edges.push((kr + i, k * i + j));
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("h_family edges are valid"))
}

/// SplitMix64: tiny, well-studied, trivially portable. Fixed forever so that
/// gnp graphs are reproducible across platforms and releases.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1): the top 53 bits scaled by 2^-53.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Erdős–Rényi G(n,p): each unordered pair drawn independently, pairs visited
/// in row-major order (0,1), (0,2), .., (0,n-1), (1,2), .. with one SplitMix64
/// draw per pair.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, FamilyError> {
    check_order(n)?;
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(FamilyError::ProbabilityOutOfRange { p });
    }
    let mut rng = SplitMix64::new(seed);
    let mut adj = vec![0u64; n];
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.next_f64() < p {
                adj[u] |= 1u64 << v;
                adj[v] |= 1u64 << u;
            }
        }
    }
    Ok(Graph::from_rows(n, adj))
}

/// Every labeled graph on n vertices, one per upper-triangle bit mask, masks
/// in increasing numeric order. Mask bit t corresponds to the t-th pair in
/// row-major order, so mask 0 is empty(n).
pub fn enumerate_all(n: usize) -> Result<impl Iterator<Item = Graph>, FamilyError> {
    if n == 0 || n > ENUMERATION_MAX_ORDER {
        return Err(FamilyError::EnumerationOutOfRange { n });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let count = 1u64 << pairs.len();
    Ok((0..count).map(move |mask| {
        let mut adj = vec![0u64; n];
        for (t, &(u, v)) in pairs.iter().enumerate() {
            if mask >> t & 1 == 1 {
                adj[u] |= 1u64 << v;
                adj[v] |= 1u64 << u;
            }
        }
        Graph::from_rows(n, adj)
    }))
}

/// Parsed form of the CLI family syntax, e.g. `h:4,2` or
/// `join:complete:3,cycle:3`.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Complete(usize),
    Empty(usize),
    Cycle(usize),
    Path(usize),
    Bipartite(usize, usize),
    H(usize, usize),
    Join(Box<FamilySpec>, Box<FamilySpec>),
    Gnp(usize, f64, u64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("unknown family kind {kind:?} in {spec:?}")]
    UnknownKind { kind: String, spec: String },
    #[error("bad arguments for {kind} in {spec:?}: expected {expected}")]
    BadArguments {
        kind: &'static str,
        spec: String,
        expected: &'static str,
    },
    #[error("cannot split {spec:?} into two join operands")]
    BadJoin { spec: String },
}

impl FamilySpec {
    /// Parses the CLI syntax. `join` takes two comma-separated operand specs;
    /// since operands contain commas themselves, the split point is the first
    /// comma at which both halves parse.
    pub fn parse(text: &str) -> Result<FamilySpec, SpecError> {
        let bad = |kind: &'static str, expected: &'static str| SpecError::BadArguments {
            kind,
            spec: text.to_string(),
            expected,
        };
        let (kind, rest) = match text.split_once(':') {
            Some((kind, rest)) => (kind, rest),
            None => (text, ""),
        };
        match kind {
            "complete" | "empty" | "cycle" | "path" => {
                let n: usize = rest.parse().map_err(|_| match kind {
                    "complete" => bad("complete", "complete:N"),
                    "empty" => bad("empty", "empty:N"),
                    "cycle" => bad("cycle", "cycle:N"),
                    _ => bad("path", "path:N"),
                })?;
                Ok(match kind {
                    "complete" => FamilySpec::Complete(n),
                    "empty" => FamilySpec::Empty(n),
                    "cycle" => FamilySpec::Cycle(n),
                    _ => FamilySpec::Path(n),
                })
            }
            "bipartite" => {
                let (a, b) = rest
                    .split_once(',')
                    .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                    .ok_or_else(|| bad("bipartite", "bipartite:A,B"))?;
                Ok(FamilySpec::Bipartite(a, b))
            }
            "h" => {
                let (k, r) = rest
                    .split_once(',')
                    .and_then(|(k, r)| Some((k.parse().ok()?, r.parse().ok()?)))
                    .ok_or_else(|| bad("h", "h:K,R"))?;
                Ok(FamilySpec::H(k, r))
            }
            "gnp" => {
                let mut it = rest.splitn(3, ',');
                let parsed = (|| {
                    let n: usize = it.next()?.parse().ok()?;
                    let p: f64 = it.next()?.parse().ok()?;
                    let seed: u64 = it.next()?.parse().ok()?;
                    Some((n, p, seed))
                })();
                let (n, p, seed) = parsed.ok_or_else(|| bad("gnp", "gnp:N,P,SEED"))?;
                Ok(FamilySpec::Gnp(n, p, seed))
            }
            "join" => {
                let positions: Vec<usize> = rest
                    .char_indices()
                    .filter(|&(_, c)| c == ',')
                    .map(|(i, _)| i)
                    .collect();
                for pos in positions {
                    let (left, right) = (&rest[..pos], &rest[pos + 1..]);
                    if let (Ok(l), Ok(r)) = (FamilySpec::parse(left), FamilySpec::parse(right)) {
                        return Ok(FamilySpec::Join(Box::new(l), Box::new(r)));
                    }
                }
                Err(SpecError::BadJoin {
                    spec: text.to_string(),
                })
            }
            _ => Err(SpecError::UnknownKind {
                kind: kind.to_string(),
                spec: text.to_string(),
            }),
        }
    }

    /// Builds the described graph.
    pub fn build(&self) -> Result<Graph, FamilyError> {
        match self {
            FamilySpec::Complete(n) => complete(*n),
            FamilySpec::Empty(n) => empty(*n),
            FamilySpec::Cycle(n) => cycle(*n),
            FamilySpec::Path(n) => path(*n),
            FamilySpec::Bipartite(a, b) => complete_bipartite(*a, *b),
            FamilySpec::H(k, r) => h_family(*k, *r),
            FamilySpec::Join(l, r) => {
                let lg = l.build()?;
                let rg = r.build()?;
                lg.join(&rg)
                    .map_err(|_| FamilyError::OrderOutOfRange { n: lg.n() + rg.n() })
            }
            FamilySpec::Gnp(n, p, seed) => gnp(*n, *p, *seed),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Empty(n) => write!(f, "empty:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Bipartite(a, b) => write!(f, "bipartite:{a},{b}"),
            FamilySpec::H(k, r) => write!(f, "h:{k},{r}"),
            FamilySpec::Join(l, r) => write!(f, "join:{l},{r}"),
            FamilySpec::Gnp(n, p, seed) => write!(f, "gnp:{n},{p},{seed}"),
        }
    }
}
