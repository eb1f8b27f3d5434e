//! Backtracking graph isomorphism for the desk-scale graphs handled by this
//! crate. Vertices are first partitioned by iterated neighborhood
//! refinement; the search then only maps vertices with equal refined colors.

use std::collections::HashMap;

use crate::graph::Graph;

/// Stable vertex colors under iterated neighborhood refinement.
fn refine_colors(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let mut colors: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    for _ in 0..n {
        let mut signatures: Vec<(u64, Vec<u64>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u64> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(u64, Vec<u64>)> = signatures.iter().collect();
        sorted.sort();
        sorted.dedup();
        let lookup: HashMap<&(u64, Vec<u64>), u64> = sorted
            .iter()
            .enumerate()
            .map(|(i, sig)| (*sig, i as u64))
            .collect();
        let next: Vec<u64> = signatures.iter().map(|sig| lookup[sig]).collect();
        if next == colors {
            break;
        }
        colors = next;
        signatures.clear();
    }
    colors
}

fn color_histogram(colors: &[u64]) -> Vec<(u64, usize)> {
    let mut hist: HashMap<u64, usize> = HashMap::new();
    for &c in colors {
        *hist.entry(c).or_default() += 1;
    }
    let mut out: Vec<(u64, usize)> = hist.into_iter().collect();
    out.sort_unstable();
    out
}

/// Decides whether two graphs are isomorphic.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let ca = refine_colors(a);
    let cb = refine_colors(b);
    if color_histogram(&ca) != color_histogram(&cb) {
        return false;
    }

    // Map vertices of `a` in order of rarest color first: fewer candidates
    // near the root of the search tree.
    let hist = color_histogram(&ca);
    let freq: HashMap<u64, usize> = hist.into_iter().collect();
    let mut order: Vec<usize> = (0..a.n()).collect();
    order.sort_by_key(|&v| (freq[&ca[v]], ca[v], v));

    let mut mapping: Vec<Option<usize>> = vec![None; a.n()];
    let mut used: Vec<bool> = vec![false; b.n()];
    backtrack(a, b, &ca, &cb, &order, 0, &mut mapping, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    a: &Graph,
    b: &Graph,
    ca: &[u64],
    cb: &[u64],
    order: &[usize],
    depth: usize,
    mapping: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    'candidates: for w in 0..b.n() {
        if used[w] || cb[w] != ca[v] || b.degree(w) != a.degree(v) {
            continue;
        }
        for &u in a.neighbors(v) {
            if let Some(mapped) = mapping[u] {
                if !b.has_edge(w, mapped) {
                    continue 'candidates;
                }
            }
        }
        // non-edges must also be preserved among mapped vertices
        for (u, slot) in mapping.iter().enumerate() {
            if let Some(mapped) = *slot {
                if !a.has_edge(v, u) && b.has_edge(w, mapped) {
                    continue 'candidates;
                }
            }
        }
        mapping[v] = Some(w);
        used[w] = true;
        if backtrack(a, b, ca, cb, order, depth + 1, mapping, used) {
            return true;
        }
        mapping[v] = None;
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Graph;

    #[test]
    fn detects_relabelings() {
        let g = families::diamond_necklace(3).unwrap().graph;
        let n = g.n();
        // reverse the vertex order
        let edges: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .map(|(u, v)| (n - 1 - u, n - 1 - v))
            .collect();
        let h = Graph::new(n, &edges).unwrap();
        assert!(isomorphic(&g, &h));
    }

    #[test]
    fn distinguishes_nonisomorphic_graphs() {
        assert!(!isomorphic(&Graph::cycle(6), &Graph::path(6)));
        let prism = families::triangle_necklace(1).unwrap().graph;
        let k33 = Graph::new(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        )
        .unwrap();
        // both cubic on six vertices, but only one contains triangles
        assert!(!isomorphic(&prism, &k33));
    }

    #[test]
    fn family_members_of_different_sizes_differ() {
        let f4 = families::triangle_necklace(2).unwrap().graph;
        let n3 = families::diamond_necklace(3).unwrap().graph;
        assert_eq!(f4.n(), n3.n());
        assert!(!isomorphic(&f4, &n3));
    }
}
