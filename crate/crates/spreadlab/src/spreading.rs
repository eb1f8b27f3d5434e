//! The (p,q)-spreading color change engine.
//!
//! A white vertex is recolored blue when it has at least `p` blue neighbors
//! and at least one of those blue neighbors has at most `q` white neighbors.
//! The closure of an initial blue set is the unique maximal blue set
//! reachable by repeated application of this rule; the order of application
//! does not matter because the rule is monotone.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The white-neighbor limit `q`: a positive integer or infinity.
///
/// Infinity is an explicit sentinel so that `(p, infinity)` keeps exact
/// percolation semantics on inputs of arbitrary degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Limit {
    Finite(usize),
    Infinite,
}

impl Limit {
    pub fn allows(&self, white_neighbors: usize) -> bool {
        match *self {
            Limit::Finite(q) => white_neighbors <= q,
            Limit::Infinite => true,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Limit::Infinite)
    }

    pub fn finite(&self) -> Option<usize> {
        match *self {
            Limit::Finite(q) => Some(q),
            Limit::Infinite => None,
        }
    }
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(q) => write!(f, "{q}"),
            Limit::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Limit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "oo" => Ok(Limit::Infinite),
            _ => {
                let q: usize = s.parse().map_err(|_| {
                    Error::BadParams(format!(
                        "q must be a positive integer or \"inf\", got {s:?}"
                    ))
                })?;
                if q == 0 {
                    return Err(Error::BadParams("q must be at least 1".into()));
                }
                Ok(Limit::Finite(q))
            }
        }
    }
}

/// The pair `(p, q)` governing the color change rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpreadParams {
    pub p: usize,
    pub q: Limit,
}

impl SpreadParams {
    pub fn new(p: usize, q: Limit) -> Result<Self> {
        if p == 0 {
            return Err(Error::BadParams("p must be at least 1".into()));
        }
        if let Limit::Finite(0) = q {
            return Err(Error::BadParams("q must be at least 1".into()));
        }
        Ok(SpreadParams { p, q })
    }

    /// `(p, q)` with a finite `q`.
    pub fn finite(p: usize, q: usize) -> Result<Self> {
        SpreadParams::new(p, Limit::Finite(q))
    }

    /// `(r, infinity)`: r-neighbor bootstrap percolation.
    pub fn percolation(r: usize) -> Result<Self> {
        SpreadParams::new(r, Limit::Infinite)
    }

    /// `(1, 1)`: zero forcing.
    pub fn zero_forcing() -> Self {
        SpreadParams {
            p: 1,
            q: Limit::Finite(1),
        }
    }

    /// `(1, k)`: k-forcing.
    pub fn k_forcing(k: usize) -> Result<Self> {
        SpreadParams::new(1, Limit::Finite(k))
    }
}

impl fmt::Display for SpreadParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// One recoloring: `vertex` turned blue, justified by the blue neighbor
/// `witness` (which had at most `q` white neighbors at firing time) and by
/// `blue_neighbors >= p` blue neighbors of `vertex` at firing time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadStep {
    pub vertex: usize,
    pub witness: usize,
    pub blue_neighbors: usize,
}

/// Ordered log of recolorings; replaying it from the initial set reproduces
/// the closure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadTrace {
    pub steps: Vec<SpreadStep>,
}

/// Result of running the rule to its fixed point.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub blue: VertexSet,
    pub trace: SpreadTrace,
}

fn blue_flags(g: &Graph, s: &VertexSet) -> Vec<bool> {
    let mut blue = vec![false; g.n()];
    for v in s.iter() {
        blue[v] = true;
    }
    blue
}

fn check_step(g: &Graph, blue: &[bool], params: SpreadParams, w: usize) -> Option<SpreadStep> {
    let mut blue_neighbors = 0;
    let mut witness = None;
    for &u in g.neighbors(w) {
        if blue[u] {
            blue_neighbors += 1;
            if witness.is_none() {
                let white = g.neighbors(u).iter().filter(|&&x| !blue[x]).count();
                if params.q.allows(white) {
                    witness = Some(u);
                }
            }
        }
    }
    match witness {
        Some(witness) if blue_neighbors >= params.p => Some(SpreadStep {
            vertex: w,
            witness,
            blue_neighbors,
        }),
        _ => None,
    }
}

/// Decides whether the white vertex `w` may be recolored under `params`,
/// returning the least-index witness when it may.
pub fn eligible(
    g: &Graph,
    blue: &VertexSet,
    params: SpreadParams,
    w: usize,
) -> Result<Option<SpreadStep>> {
    if w >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: w,
            n: g.n(),
        });
    }
    if blue.contains(w) {
        return Err(Error::AlreadyBlue(w));
    }
    blue.validate_for(g)?;
    Ok(check_step(g, &blue_flags(g, blue), params, w))
}

/// Computes the closure of `s` with the canonical sequential trace: at each
/// step the least-index eligible white vertex fires.
pub fn closure(g: &Graph, s: &VertexSet, params: SpreadParams) -> Result<ClosureResult> {
    s.validate_for(g)?;
    let mut blue = blue_flags(g, s);
    let mut steps = Vec::new();
    loop {
        let next = (0..g.n())
            .filter(|&w| !blue[w])
            .find_map(|w| check_step(g, &blue, params, w));
        match next {
            Some(step) => {
                blue[step.vertex] = true;
                steps.push(step);
            }
            None => break,
        }
    }
    Ok(ClosureResult {
        blue: (0..g.n()).filter(|&v| blue[v]).collect(),
        trace: SpreadTrace { steps },
    })
}

/// Computes the closure with synchronous rounds: every currently eligible
/// white vertex fires simultaneously each round. The final blue set matches
/// `closure` (the rule is confluent); only the round grouping differs.
pub fn closure_rounds(
    g: &Graph,
    s: &VertexSet,
    params: SpreadParams,
) -> Result<(VertexSet, Vec<Vec<SpreadStep>>)> {
    s.validate_for(g)?;
    let mut blue = blue_flags(g, s);
    let mut rounds = Vec::new();
    loop {
        let round: Vec<SpreadStep> = (0..g.n())
            .filter(|&w| !blue[w])
            .filter_map(|w| check_step(g, &blue, params, w))
            .collect();
        if round.is_empty() {
            break;
        }
        for step in &round {
            blue[step.vertex] = true;
        }
        rounds.push(round);
    }
    Ok(((0..g.n()).filter(|&v| blue[v]).collect(), rounds))
}

/// Fixed point of the rule without trace bookkeeping.
pub(crate) fn closure_flags(g: &Graph, start: &[bool], params: SpreadParams) -> Vec<bool> {
    let mut blue = start.to_vec();
    let mut changed = true;
    while changed {
        changed = false;
        for w in 0..g.n() {
            if !blue[w] && check_step(g, &blue, params, w).is_some() {
                blue[w] = true;
                changed = true;
            }
        }
    }
    blue
}

/// True iff the closure of `s` colors every vertex of `g` blue.
pub fn is_spreading_set(g: &Graph, s: &VertexSet, params: SpreadParams) -> bool {
    if s.validate_for(g).is_err() {
        return false;
    }
    let blue = closure_flags(g, &blue_flags(g, s), params);
    blue.iter().all(|&b| b)
}

/// Zero-forcing closure: `(1, 1)`-spreading.
pub fn zero_forcing_closure(g: &Graph, s: &VertexSet) -> Result<ClosureResult> {
    closure(g, s, SpreadParams::zero_forcing())
}

/// k-forcing closure: `(1, k)`-spreading.
pub fn k_forcing_closure(g: &Graph, s: &VertexSet, k: usize) -> Result<ClosureResult> {
    closure(g, s, SpreadParams::k_forcing(k)?)
}

/// r-percolation closure: `(r, infinity)`-spreading.
pub fn r_percolation_closure(g: &Graph, s: &VertexSet, r: usize) -> Result<ClosureResult> {
    closure(g, s, SpreadParams::percolation(r)?)
}
