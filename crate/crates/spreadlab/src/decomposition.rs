//! The triangle-diamond partition of a connected claw-free cubic graph and
//! the structure derived from it: unit adjacency with multiplicities,
//! double bonds, necklace-family recognition, and the starting pair used by
//! the 2-percolation constructions.
//!
//! Every connected claw-free cubic graph other than `K_4` splits uniquely
//! into vertex sets each inducing a triangle or a diamond; those sets are
//! the units of the partition.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families;
use crate::graph::{Graph, VertexSet};
use crate::iso;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitKind {
    Triangle,
    Diamond,
}

/// One unit of the partition. For diamonds, `dominating` holds the two
/// vertices adjacent to all three other unit vertices; for triangles it is
/// empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unit {
    pub kind: UnitKind,
    pub vertices: VertexSet,
    pub dominating: VertexSet,
}

/// An edge joining two distinct units: `units.0 < units.1` and `edge.0`
/// lies in `units.0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnitEdge {
    pub units: (usize, usize),
    pub edge: (usize, usize),
}

/// The unique triangle-diamond partition, with its unit adjacency multiset.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaDPartition {
    pub units: Vec<Unit>,
    pub unit_of: Vec<usize>,
    pub unit_edges: Vec<UnitEdge>,
}

impl DeltaDPartition {
    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn triangle_unit_count(&self) -> usize {
        self.units
            .iter()
            .filter(|u| u.kind == UnitKind::Triangle)
            .count()
    }

    pub fn diamond_unit_count(&self) -> usize {
        self.units
            .iter()
            .filter(|u| u.kind == UnitKind::Diamond)
            .count()
    }

    /// Connecting edges between units `i` and `j`, as pairs whose first
    /// vertex lies in unit `i`.
    pub fn edges_between(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let (lo, hi) = (i.min(j), i.max(j));
        self.unit_edges
            .iter()
            .filter(|ue| ue.units == (lo, hi))
            .map(|ue| {
                if i == lo {
                    ue.edge
                } else {
                    (ue.edge.1, ue.edge.0)
                }
            })
            .collect()
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.unit_edges.iter().filter(|ue| ue.units == key).count()
    }

    /// Units adjacent to unit `i`, in increasing index order.
    pub fn adjacent_units(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .unit_edges
            .iter()
            .filter_map(|ue| {
                if ue.units.0 == i {
                    Some(ue.units.1)
                } else if ue.units.1 == i {
                    Some(ue.units.0)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Two units joined by at least two edges.
    pub fn double_bonded(&self, i: usize, j: usize) -> bool {
        self.multiplicity(i, j) >= 2
    }
}

fn require_class(g: &Graph) -> Result<()> {
    if !g.is_cubic() {
        return Err(Error::NotCubic);
    }
    if !g.is_claw_free() {
        return Err(Error::NotClawFree);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.n() == 4 && g.is_complete() {
        return Err(Error::NoPartitionForK4);
    }
    Ok(())
}

/// Computes the unique triangle-diamond partition.
///
/// Diamonds are collected first as pairs of triangles sharing an edge
/// (two adjacent vertices with two non-adjacent common neighbors); the
/// remaining vertices then fall into vertex-disjoint triangles. Units are
/// ordered by their smallest vertex.
pub fn delta_d_partition(g: &Graph) -> Result<DeltaDPartition> {
    require_class(g)?;
    let n = g.n();
    let mut assigned: Vec<Option<usize>> = vec![None; n];
    let mut units: Vec<Unit> = Vec::new();

    for (u, v) in g.edges() {
        let common: Vec<usize> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&x| g.has_edge(v, x))
            .collect();
        if common.len() == 2 && !g.has_edge(common[0], common[1]) {
            let members = [u, v, common[0], common[1]];
            if members.iter().any(|&x| assigned[x].is_some()) {
                return Err(Error::Unsupported(
                    "overlapping diamonds; graph is outside the decomposable class".into(),
                ));
            }
            let idx = units.len();
            for &x in &members {
                assigned[x] = Some(idx);
            }
            units.push(Unit {
                kind: UnitKind::Diamond,
                vertices: VertexSet::from_unsorted(members.to_vec()),
                dominating: VertexSet::from_unsorted(vec![u, v]),
            });
        }
    }

    for v in 0..n {
        if assigned[v].is_some() {
            continue;
        }
        let free: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| assigned[w].is_none())
            .collect();
        let mut triangle = None;
        for i in 0..free.len() {
            for &w in &free[(i + 1)..] {
                if g.has_edge(free[i], w) {
                    triangle = Some([v, free[i], w]);
                }
            }
        }
        let members = triangle.ok_or_else(|| {
            Error::Unsupported(format!(
                "vertex {v} lies in no triangle of the residual graph"
            ))
        })?;
        let idx = units.len();
        for &x in &members {
            assigned[x] = Some(idx);
        }
        units.push(Unit {
            kind: UnitKind::Triangle,
            vertices: VertexSet::from_unsorted(members.to_vec()),
            dominating: VertexSet::new(),
        });
    }

    // reorder by smallest vertex
    let mut order: Vec<usize> = (0..units.len()).collect();
    order.sort_by_key(|&i| units[i].vertices.smallest());
    let mut rank = vec![0usize; units.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let units: Vec<Unit> = order.into_iter().map(|i| units[i].clone()).collect();
    let unit_of: Vec<usize> = assigned
        .into_iter()
        .map(|slot| rank[slot.expect("every vertex assigned")])
        .collect();

    let mut unit_edges: Vec<UnitEdge> = Vec::new();
    for (u, v) in g.edges() {
        let (iu, iv) = (unit_of[u], unit_of[v]);
        if iu == iv {
            continue;
        }
        let ue = if iu < iv {
            UnitEdge {
                units: (iu, iv),
                edge: (u, v),
            }
        } else {
            UnitEdge {
                units: (iv, iu),
                edge: (v, u),
            }
        };
        unit_edges.push(ue);
    }
    unit_edges.sort_by_key(|ue| (ue.units, ue.edge));

    Ok(DeltaDPartition {
        units,
        unit_of,
        unit_edges,
    })
}

/// `u(G)`: the number of units in the triangle-diamond partition.
pub fn unit_count(g: &Graph) -> Result<usize> {
    Ok(delta_d_partition(g)?.unit_count())
}

/// Membership of a graph in the necklace families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", content = "size")]
pub enum FamilyClass {
    /// `N_k`: isomorphic to the diamond-necklace with `k` diamonds.
    DiamondNecklace(usize),
    /// `F_{2k}`: isomorphic to the triangle-necklace with `2k` triangles
    /// (the stored value is `2k`).
    TriangleNecklace(usize),
    /// `H_{2k}`: isomorphic to the triangle-diamond-necklace with `k`
    /// diamonds.
    TriangleDiamondNecklace(usize),
    K4,
    Generic,
}

impl FamilyClass {
    pub fn is_diamond_necklace(&self) -> bool {
        matches!(self, FamilyClass::DiamondNecklace(_))
    }
}

/// Classifies a connected claw-free cubic graph against the necklace
/// families, by matching unit counts and then checking isomorphism with the
/// corresponding generator output.
pub fn classify_family(g: &Graph) -> Result<FamilyClass> {
    if g.n() == 4 && g.is_complete() {
        return Ok(FamilyClass::K4);
    }
    let part = delta_d_partition(g)?;
    let ut = part.triangle_unit_count();
    let ud = part.diamond_unit_count();
    let candidate = if ut == 0 && ud >= 2 {
        Some((
            FamilyClass::DiamondNecklace(ud),
            families::diamond_necklace(ud)?,
        ))
    } else if ud == 0 && ut >= 2 && ut % 2 == 0 {
        Some((
            FamilyClass::TriangleNecklace(ut),
            families::triangle_necklace(ut / 2)?,
        ))
    } else if ud >= 2 && ut == 2 * ud {
        Some((
            FamilyClass::TriangleDiamondNecklace(ud),
            families::triangle_diamond_necklace(ud)?,
        ))
    } else {
        None
    };
    match candidate {
        Some((tag, reference)) if iso::isomorphic(g, &reference.graph) => Ok(tag),
        _ => Ok(FamilyClass::Generic),
    }
}

/// Finds a triangle-unit whose removal leaves at most two components,
/// scanning units in index order. Such a unit exists in every connected
/// claw-free cubic graph outside the diamond-necklace family.
pub fn find_special_triangle_unit(g: &Graph, part: &DeltaDPartition) -> Result<usize> {
    let mut saw_triangle = false;
    for (i, unit) in part.units.iter().enumerate() {
        if unit.kind != UnitKind::Triangle {
            continue;
        }
        saw_triangle = true;
        let (rest, _) = g.delete_vertices(&unit.vertices)?;
        if rest.connected_components().len() <= 2 {
            return Ok(i);
        }
    }
    if saw_triangle {
        Err(Error::Unsupported(
            "no triangle-unit leaves at most two components".into(),
        ))
    } else {
        Err(Error::NoTriangleUnit)
    }
}

/// How the starting pair of the 2-percolation construction connects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StartKind {
    /// Partner is a triangle joined by a single non-bridge edge.
    TriangleSingleBond,
    /// Partner is a diamond joined by a single non-bridge edge.
    DiamondSingleBond,
    /// Partner shares at least two edges with the starting triangle.
    DoubleBond,
}

/// The starting triangle-unit, its partner unit, and the two seed vertices
/// used by the 2-percolation construction. `tightening_vertex` is the extra
/// vertex the `(2,2)` variant adds in the single-bond cases.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct StartPlan {
    pub triangle_unit: usize,
    pub partner_unit: usize,
    pub kind: StartKind,
    pub start_vertex: usize,
    pub partner_seed: usize,
    pub tightening_vertex: Option<usize>,
}

fn is_bridge(g: &Graph, u: usize, v: usize) -> bool {
    // BFS from u that avoids the edge uv; the edge is a bridge iff v is no
    // longer reachable.
    let n = g.n();
    let mut seen = vec![false; n];
    let mut stack = vec![u];
    seen[u] = true;
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if (x == u && y == v) || (x == v && y == u) {
                continue;
            }
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    !seen[v]
}

/// Picks the partner unit for the starting triangle-unit `t1`: the first
/// adjacent unit that is double-bonded to it or joined by a non-bridge
/// edge, resolving the seed vertices for each case.
pub fn partner_unit_for_start(g: &Graph, part: &DeltaDPartition, t1: usize) -> Result<StartPlan> {
    if part.units[t1].kind != UnitKind::Triangle {
        return Err(Error::Unsupported(format!(
            "unit {t1} is not a triangle-unit"
        )));
    }
    for partner in part.adjacent_units(t1) {
        let bonds = part.edges_between(t1, partner);
        let unit = &part.units[partner];
        if bonds.len() >= 2 {
            let (tv, _) = bonds[0];
            let second = bonds
                .iter()
                .find(|&&(t, _)| t != tv)
                .expect("double bond uses two distinct triangle vertices");
            let seed = match unit.kind {
                UnitKind::Triangle => second.1,
                // the bond endpoints of a diamond cannot ignite it; a
                // dominating vertex can
                UnitKind::Diamond => unit.dominating.smallest().expect("diamond has dominating"),
            };
            return Ok(StartPlan {
                triangle_unit: t1,
                partner_unit: partner,
                kind: StartKind::DoubleBond,
                start_vertex: tv,
                partner_seed: seed,
                tightening_vertex: None,
            });
        }
        let (tv, uv) = bonds[0];
        if is_bridge(g, tv, uv) {
            continue;
        }
        let plan = match unit.kind {
            UnitKind::Triangle => {
                let far = unit
                    .vertices
                    .iter()
                    .find(|&w| w != uv)
                    .expect("triangle has another vertex");
                StartPlan {
                    triangle_unit: t1,
                    partner_unit: partner,
                    kind: StartKind::TriangleSingleBond,
                    start_vertex: tv,
                    partner_seed: far,
                    tightening_vertex: Some(uv),
                }
            }
            UnitKind::Diamond => {
                let dom = unit.dominating.smallest().expect("diamond has dominating");
                StartPlan {
                    triangle_unit: t1,
                    partner_unit: partner,
                    kind: StartKind::DiamondSingleBond,
                    start_vertex: tv,
                    partner_seed: dom,
                    tightening_vertex: Some(uv),
                }
            }
        };
        return Ok(plan);
    }
    Err(Error::Unsupported(
        "no partner unit with a non-bridge bond".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        diamond_necklace, theta_graph, triangle_diamond_necklace, triangle_necklace,
    };

    #[test]
    fn partition_of_diamond_necklace() {
        let n4 = diamond_necklace(4).unwrap();
        let part = delta_d_partition(&n4.graph).unwrap();
        assert_eq!(part.unit_count(), 4);
        assert_eq!(part.diamond_unit_count(), 4);
        assert_eq!(part.triangle_unit_count(), 0);
        for unit in &part.units {
            assert_eq!(unit.vertices.len(), 4);
            assert_eq!(unit.dominating.len(), 2);
        }
        // dominating vertices of the first diamond are c1 and d1
        assert_eq!(part.units[0].dominating, n4.set(&["c1", "d1"]));
    }

    #[test]
    fn partition_of_triangle_necklace() {
        let f6 = triangle_necklace(3).unwrap();
        let part = delta_d_partition(&f6.graph).unwrap();
        assert_eq!(part.unit_count(), 6);
        assert_eq!(part.triangle_unit_count(), 6);
    }

    #[test]
    fn partition_of_triangle_diamond_necklace() {
        let h6 = triangle_diamond_necklace(3).unwrap();
        let part = delta_d_partition(&h6.graph).unwrap();
        assert_eq!(part.unit_count(), 9);
        assert_eq!(part.triangle_unit_count(), 6);
        assert_eq!(part.diamond_unit_count(), 3);
        // n = 3 u_t + 4 u_d
        assert_eq!(h6.graph.n(), 3 * 6 + 4 * 3);
    }

    #[test]
    fn unit_counts_follow_the_family_formulas() {
        for k in 2..=4 {
            let n = diamond_necklace(k).unwrap().graph;
            assert_eq!(unit_count(&n).unwrap(), k);
            let h = triangle_diamond_necklace(k).unwrap().graph;
            assert_eq!(unit_count(&h).unwrap(), 3 * k);
        }
        for k in 1..=4 {
            let f = triangle_necklace(k).unwrap().graph;
            assert_eq!(unit_count(&f).unwrap(), 2 * k);
        }
    }

    #[test]
    fn k4_has_no_partition() {
        let err = delta_d_partition(&Graph::complete(4)).unwrap_err();
        assert!(matches!(err, Error::NoPartitionForK4));
    }

    #[test]
    fn out_of_class_inputs_are_rejected() {
        assert!(matches!(
            delta_d_partition(&Graph::path(3)),
            Err(Error::NotCubic)
        ));
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
        assert!(matches!(delta_d_partition(&k33), Err(Error::NotClawFree)));
        let two_prisms = {
            let p = triangle_necklace(1).unwrap().graph;
            let mut edges = p.edges();
            let shifted: Vec<_> = p.edges().iter().map(|&(u, v)| (u + 6, v + 6)).collect();
            edges.extend(shifted);
            Graph::new(12, &edges).unwrap()
        };
        assert!(matches!(
            delta_d_partition(&two_prisms),
            Err(Error::NotConnected)
        ));
    }

    #[test]
    fn theta_graph_units() {
        let g = theta_graph();
        let part = delta_d_partition(&g.graph).unwrap();
        assert_eq!(part.unit_count(), 5);
        assert_eq!(part.diamond_unit_count(), 3);
        assert_eq!(part.triangle_unit_count(), 2);
    }

    #[test]
    fn unit_edges_cover_every_crossing_edge() {
        let g = triangle_diamond_necklace(2).unwrap().graph;
        let part = delta_d_partition(&g).unwrap();
        let inside: usize = part
            .units
            .iter()
            .map(|u| match u.kind {
                UnitKind::Triangle => 3,
                UnitKind::Diamond => 5,
            })
            .sum();
        assert_eq!(inside + part.unit_edges.len(), g.m());
    }

    #[test]
    fn family_classification_round_trips() {
        assert_eq!(
            classify_family(&diamond_necklace(5).unwrap().graph).unwrap(),
            FamilyClass::DiamondNecklace(5)
        );
        assert_eq!(
            classify_family(&triangle_necklace(3).unwrap().graph).unwrap(),
            FamilyClass::TriangleNecklace(6)
        );
        assert_eq!(
            classify_family(&triangle_necklace(1).unwrap().graph).unwrap(),
            FamilyClass::TriangleNecklace(2)
        );
        assert_eq!(
            classify_family(&triangle_diamond_necklace(2).unwrap().graph).unwrap(),
            FamilyClass::TriangleDiamondNecklace(2)
        );
        assert_eq!(
            classify_family(&Graph::complete(4)).unwrap(),
            FamilyClass::K4
        );
        assert_eq!(
            classify_family(&theta_graph().graph).unwrap(),
            FamilyClass::Generic
        );
    }

    #[test]
    fn special_triangle_unit_for_triangle_necklace() {
        let f6 = triangle_necklace(3).unwrap().graph;
        let part = delta_d_partition(&f6).unwrap();
        // every triangle-unit qualifies: removal leaves one component
        for (i, unit) in part.units.iter().enumerate() {
            assert_eq!(unit.kind, UnitKind::Triangle);
            let (rest, _) = f6.delete_vertices(&unit.vertices).unwrap();
            assert_eq!(rest.connected_components().len(), 1);
            let _ = i;
        }
        assert_eq!(find_special_triangle_unit(&f6, &part).unwrap(), 0);
    }

    #[test]
    fn special_triangle_unit_fails_on_diamond_necklace() {
        let n4 = diamond_necklace(4).unwrap().graph;
        let part = delta_d_partition(&n4).unwrap();
        assert!(matches!(
            find_special_triangle_unit(&n4, &part),
            Err(Error::NoTriangleUnit)
        ));
    }

    #[test]
    fn special_triangle_unit_on_mixed_necklace() {
        let h6 = triangle_diamond_necklace(3).unwrap().graph;
        let part = delta_d_partition(&h6).unwrap();
        let t1 = find_special_triangle_unit(&h6, &part).unwrap();
        assert_eq!(part.units[t1].kind, UnitKind::Triangle);
        let (rest, _) = h6.delete_vertices(&part.units[t1].vertices).unwrap();
        assert!(rest.connected_components().len() <= 2);
    }

    #[test]
    fn double_bond_start_on_prism() {
        let f2 = triangle_necklace(1).unwrap().graph;
        let part = delta_d_partition(&f2).unwrap();
        let t1 = find_special_triangle_unit(&f2, &part).unwrap();
        let plan = partner_unit_for_start(&f2, &part, t1).unwrap();
        assert_eq!(plan.kind, StartKind::DoubleBond);
        assert!(part.double_bonded(plan.triangle_unit, plan.partner_unit));
    }

    #[test]
    fn start_plan_on_mixed_necklace() {
        let h6 = triangle_diamond_necklace(3).unwrap().graph;
        let part = delta_d_partition(&h6).unwrap();
        let t1 = find_special_triangle_unit(&h6, &part).unwrap();
        let plan = partner_unit_for_start(&h6, &part, t1).unwrap();
        assert!(part.units[plan.triangle_unit]
            .vertices
            .contains(plan.start_vertex));
        assert!(part.units[plan.partner_unit]
            .vertices
            .contains(plan.partner_seed));
    }

    #[test]
    fn all_three_start_kinds_occur_on_the_fixtures() {
        let start_kind = |g: &Graph| {
            let part = delta_d_partition(g).unwrap();
            let t1 = find_special_triangle_unit(g, &part).unwrap();
            partner_unit_for_start(g, &part, t1).unwrap().kind
        };
        // consecutive triangles of the mixed necklace share one edge
        let h6 = triangle_diamond_necklace(3).unwrap().graph;
        assert_eq!(start_kind(&h6), StartKind::TriangleSingleBond);
        // the theta triangles attach only to diamonds
        assert_eq!(
            start_kind(&theta_graph().graph),
            StartKind::DiamondSingleBond
        );
        // paired triangles of a triangle-necklace are double-bonded
        let f6 = triangle_necklace(3).unwrap().graph;
        assert_eq!(start_kind(&f6), StartKind::DoubleBond);
        // the four-triangle mixed necklace double-bonds its odd triangles
        let h4 = triangle_diamond_necklace(2).unwrap().graph;
        assert_eq!(start_kind(&h4), StartKind::DoubleBond);
    }
}
