//! Exact desk-scale solvers for minimum spreading sets, the independence
//! number and the vertex cover number.
//!
//! `sigma_exact` runs iterative deepening on the set size, starting from
//! `lower_bound`, with a lexicographic DFS over candidate vertices. The
//! prunings are necessary conditions only — unit coverage and the
//! dominating-vertex rule for `p = 2`, the vertex-cover condition for
//! `p`-regular graphs, and closure-based dominance — so the search remains
//! an exhaustive oracle: it never assumes the predicted value, and the
//! returned witness is the lexicographically least minimum set.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::decomposition::{self, UnitKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spreading::{Limit, SpreadParams};

/// Tunables for the exact search.
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Abort after exploring this many DFS nodes.
    pub node_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            node_budget: 100_000_000,
        }
    }
}

/// A certified exact value with its witness.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub value: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Outcome of a solve: exact, or an interval when the node budget ran out.
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Exact(SolveResult),
    /// The search was cut off while probing size `lower_bound`; the true
    /// value lies in `[lower_bound, n]`.
    BudgetExceeded {
        lower_bound: usize,
        nodes_explored: u64,
        elapsed: Duration,
    },
}

impl SolveOutcome {
    pub fn exact(self) -> Result<SolveResult> {
        match self {
            SolveOutcome::Exact(r) => Ok(r),
            SolveOutcome::BudgetExceeded { lower_bound, nodes_explored, .. } => {
                Err(Error::Unsupported(format!(
                    "node budget exhausted after {nodes_explored} nodes; value is at least {lower_bound}"
                )))
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SolveOutcome::Exact(_))
    }
}

/// Adjacency as one 64-bit mask per vertex.
struct Bits {
    n: usize,
    adj: Vec<u64>,
    full: u64,
}

impl Bits {
    fn from_graph(g: &Graph) -> Result<Bits> {
        let n = g.n();
        if n > 64 {
            return Err(Error::TooLarge { n });
        }
        let mut adj = vec![0u64; n];
        for (u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(Bits { n, adj, full })
    }

    /// Fixed point of the color change rule. `q` of `None` means no
    /// white-neighbor restriction (infinite, or at least the maximum degree).
    fn closure(&self, mut blue: u64, p: usize, q: Option<usize>) -> u64 {
        loop {
            let ready = match q {
                None => blue,
                Some(qv) => {
                    let mut r = 0u64;
                    let mut rem = blue;
                    while rem != 0 {
                        let u = rem.trailing_zeros() as usize;
                        rem &= rem - 1;
                        if ((self.adj[u] & !blue).count_ones() as usize) <= qv {
                            r |= 1 << u;
                        }
                    }
                    r
                }
            };
            if ready == 0 {
                return blue;
            }
            let new = if p == 1 {
                let mut acc = 0u64;
                let mut rem = ready;
                while rem != 0 {
                    let u = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    acc |= self.adj[u];
                }
                acc & !blue
            } else {
                let mut acc = 0u64;
                let mut rem = self.full & !blue;
                while rem != 0 {
                    let w = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    let a = self.adj[w];
                    if (a & ready) != 0 && (a & blue).count_ones() as usize >= p {
                        acc |= 1 << w;
                    }
                }
                acc
            };
            if new == 0 {
                return blue;
            }
            blue |= new;
        }
    }
}

struct UnitMask {
    mask: u64,
    dominating: u64,
    is_diamond: bool,
}

enum Search {
    Found(Vec<usize>),
    Exhausted,
    Budget,
}

struct Searcher {
    bits: Bits,
    p: usize,
    q: Option<usize>,
    units: Vec<UnitMask>,
    vc_edges: Vec<(usize, usize)>,
    memo: HashMap<(u64, usize), usize>,
    nodes: u64,
    budget: u64,
}

impl Searcher {
    fn new(g: &Graph, params: SpreadParams, budget: u64) -> Result<Searcher> {
        let bits = Bits::from_graph(g)?;
        // q at least the maximum degree never restricts the witness
        let q = match params.q {
            Limit::Infinite => None,
            Limit::Finite(qv) if qv >= g.max_degree() => None,
            Limit::Finite(qv) => Some(qv),
        };
        let units = if params.p >= 2 {
            match decomposition::delta_d_partition(g) {
                Ok(part) => part
                    .units
                    .iter()
                    .map(|unit| {
                        let mask = unit.vertices.iter().fold(0u64, |m, v| m | 1 << v);
                        let dominating = unit.dominating.iter().fold(0u64, |m, v| m | 1 << v);
                        UnitMask {
                            mask,
                            dominating,
                            is_diamond: unit.kind == UnitKind::Diamond,
                        }
                    })
                    .collect(),
                Err(_) => Vec::new(),
            }
        } else {
            Vec::new()
        };
        let vc_edges = if params.p >= 2 && g.is_regular(params.p) {
            g.edges()
        } else {
            Vec::new()
        };
        Ok(Searcher {
            bits,
            p: params.p,
            q,
            units,
            vc_edges,
            memo: HashMap::new(),
            nodes: 0,
            budget,
        })
    }

    /// Lower bound on additional picks, and the restriction mask when that
    /// bound consumes the whole remaining budget. `None` means provably
    /// infeasible.
    fn structural_needs(
        &self,
        chosen_mask: u64,
        next: usize,
        remaining: usize,
    ) -> Option<Option<u64>> {
        let ahead: u64 = if next >= 64 {
            0
        } else {
            self.bits.full & !((1u64 << next) - 1)
        };
        let mut need_total = 0usize;
        let mut tight_mask = 0u64;

        for unit in &self.units {
            let picked = unit.mask & chosen_mask;
            let avail = unit.mask & ahead & !chosen_mask;
            let (need, useful) = if picked == 0 {
                if unit.is_diamond {
                    let dom_avail = unit.dominating & avail;
                    if dom_avail != 0 {
                        (1, dom_avail)
                    } else if avail.count_ones() >= 2 {
                        (2, avail)
                    } else {
                        return None;
                    }
                } else if avail != 0 {
                    (1, avail)
                } else {
                    return None;
                }
            } else if unit.is_diamond && picked.count_ones() == 1 && picked & unit.dominating == 0 {
                // a diamond met by exactly one vertex needs that vertex to
                // dominate it; otherwise a second vertex is required
                if avail != 0 {
                    (1, avail)
                } else {
                    return None;
                }
            } else {
                (0, 0)
            };
            need_total += need;
            if need > 0 {
                tight_mask |= useful;
            }
        }
        if need_total > remaining {
            return None;
        }

        if !self.vc_edges.is_empty() {
            // every spreading set here must be a vertex cover
            let mut matched = 0u64;
            let mut matching = 0usize;
            for &(u, v) in &self.vc_edges {
                let uncovered = chosen_mask & (1 << u) == 0 && chosen_mask & (1 << v) == 0;
                if !uncovered {
                    continue;
                }
                if u.max(v) < next {
                    return None;
                }
                if matched & (1 << u) == 0 && matched & (1 << v) == 0 {
                    matched |= (1 << u) | (1 << v);
                    matching += 1;
                }
            }
            if matching > remaining {
                return None;
            }
        }

        if need_total == remaining && need_total > 0 {
            Some(Some(tight_mask))
        } else {
            Some(None)
        }
    }

    fn dfs(
        &mut self,
        blue: u64,
        chosen: &mut Vec<usize>,
        chosen_mask: u64,
        next: usize,
        remaining: usize,
    ) -> Search {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Search::Budget;
        }
        if blue == self.bits.full {
            return Search::Found(chosen.clone());
        }
        if remaining == 0 {
            return Search::Exhausted;
        }
        if let Some(&failed) = self.memo.get(&(blue, next)) {
            if remaining <= failed {
                return Search::Exhausted;
            }
        }
        let restriction = match self.structural_needs(chosen_mask, next, remaining) {
            None => {
                let slot = self.memo.entry((blue, next)).or_insert(0);
                *slot = (*slot).max(remaining);
                return Search::Exhausted;
            }
            Some(r) => r,
        };

        for v in next..self.bits.n {
            if self.bits.n - v < remaining {
                break;
            }
            if blue & (1 << v) != 0 {
                // already forced by the current picks; a smaller set was
                // already ruled out at earlier depths
                continue;
            }
            if let Some(mask) = restriction {
                if mask & (1 << v) == 0 {
                    continue;
                }
            }
            chosen.push(v);
            let blue_next = self.bits.closure(blue | (1 << v), self.p, self.q);
            match self.dfs(
                blue_next,
                chosen,
                chosen_mask | (1 << v),
                v + 1,
                remaining - 1,
            ) {
                Search::Exhausted => {}
                found_or_budget => return found_or_budget,
            }
            chosen.pop();
        }

        let slot = self.memo.entry((blue, next)).or_insert(0);
        *slot = (*slot).max(remaining);
        Search::Exhausted
    }

    fn search_level(&mut self, k: usize) -> Search {
        if self.memo.len() > 4_000_000 {
            self.memo.clear();
        }
        let mut chosen = Vec::with_capacity(k);
        self.dfs(0, &mut chosen, 0, 0, k)
    }
}

/// Best available lower bound on the `(p,q)`-spreading number.
///
/// Combines the definitional bounds (a set other than the whole vertex set
/// must contain `p` seed neighbors and a witness with enough seeded
/// neighbors; a vertex of degree below `p` can never fire) with the
/// structural bounds available on connected claw-free cubic graphs (one
/// vertex per unit for `p >= 2`, one more when `q = 1`) and the
/// vertex-cover bound on `p`-regular graphs.
pub fn lower_bound(g: &Graph, params: SpreadParams) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let p = params.p;
    let first_fire = match params.q {
        Limit::Finite(qv) => 1 + g.min_degree().saturating_sub(qv),
        Limit::Infinite => 1,
    };
    let mut lb = n.min(p.max(first_fire));
    if p > g.max_degree() {
        return n;
    }
    if p >= 2 {
        if let Ok(part) = decomposition::delta_d_partition(g) {
            let mut unit_bound = part.unit_count();
            if p == 2 && params.q == Limit::Finite(1) {
                unit_bound += 1;
            }
            lb = lb.max(unit_bound);
        }
        if g.is_regular(p) && g.n() <= 64 {
            if let Ok((beta, _)) = vertex_cover_number(g) {
                lb = lb.max(beta);
            }
        }
    }
    lb.min(n)
}

/// Minimum cardinality of a `(p,q)`-spreading set, with the
/// lexicographically least witness of that size.
pub fn sigma_exact(g: &Graph, params: SpreadParams, opts: &SolveOptions) -> Result<SolveOutcome> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let start = Instant::now();
    let mut searcher = Searcher::new(g, params, opts.node_budget)?;
    let lb = lower_bound(g, params);
    for k in lb..=g.n() {
        match searcher.search_level(k) {
            Search::Found(witness) => {
                return Ok(SolveOutcome::Exact(SolveResult {
                    value: witness.len(),
                    witness: witness.into_iter().collect(),
                    nodes_explored: searcher.nodes,
                    elapsed: start.elapsed(),
                }));
            }
            Search::Exhausted => continue,
            Search::Budget => {
                return Ok(SolveOutcome::BudgetExceeded {
                    lower_bound: k,
                    nodes_explored: searcher.nodes,
                    elapsed: start.elapsed(),
                });
            }
        }
    }
    unreachable!("the full vertex set is always a spreading set");
}

/// `m(G, r)`: the r-neighbor bootstrap percolation number.
pub fn percolation_number(g: &Graph, r: usize, opts: &SolveOptions) -> Result<SolveOutcome> {
    sigma_exact(g, SpreadParams::percolation(r)?, opts)
}

/// `alpha(G)` with a witness maximum independent set, by branch and bound
/// on a maximum-degree vertex.
pub fn independence_number(g: &Graph) -> Result<(usize, VertexSet)> {
    let bits = Bits::from_graph(g)?;
    let mut best_size = 0usize;
    let mut best_mask = 0u64;
    mis_branch(&bits, bits.full, 0, 0, &mut best_size, &mut best_mask);
    Ok((best_size, mask_to_set(best_mask)))
}

fn mis_branch(
    bits: &Bits,
    cand: u64,
    picked: u64,
    size: usize,
    best_size: &mut usize,
    best_mask: &mut u64,
) {
    if size + cand.count_ones() as usize <= *best_size && *best_size > 0 {
        return;
    }
    if cand == 0 {
        if size > *best_size || *best_size == 0 {
            *best_size = size;
            *best_mask = picked;
        }
        return;
    }
    // a candidate with at most one candidate neighbor always joins some
    // maximum independent set of the subproblem
    let mut rem = cand;
    while rem != 0 {
        let v = rem.trailing_zeros() as usize;
        rem &= rem - 1;
        if (bits.adj[v] & cand).count_ones() <= 1 {
            mis_branch(
                bits,
                cand & !(bits.adj[v] | (1 << v)),
                picked | (1 << v),
                size + 1,
                best_size,
                best_mask,
            );
            return;
        }
    }
    // branch on a maximum-degree candidate: include it, then exclude it
    let mut pivot = usize::MAX;
    let mut pivot_deg = 0;
    let mut scan = cand;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let d = (bits.adj[v] & cand).count_ones();
        if pivot == usize::MAX || d > pivot_deg {
            pivot = v;
            pivot_deg = d;
        }
    }
    mis_branch(
        bits,
        cand & !(bits.adj[pivot] | (1 << pivot)),
        picked | (1 << pivot),
        size + 1,
        best_size,
        best_mask,
    );
    mis_branch(
        bits,
        cand & !(1 << pivot),
        picked,
        size,
        best_size,
        best_mask,
    );
}

fn mask_to_set(mask: u64) -> VertexSet {
    (0..64).filter(|&v| mask & (1u64 << v) != 0).collect()
}

/// `beta(G) = n - alpha(G)` with the complement witness.
pub fn vertex_cover_number(g: &Graph) -> Result<(usize, VertexSet)> {
    let (alpha, independent) = independence_number(g)?;
    Ok((g.n() - alpha, independent.complement(g.n())))
}
