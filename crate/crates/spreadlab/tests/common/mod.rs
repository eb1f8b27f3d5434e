//! Shared fixtures for the integration suites.
#![allow(dead_code)] // each test target uses a different subset

use spreadlab::families;
use spreadlab::Graph;

/// The named fixtures: diamond-necklaces, triangle-necklaces,
/// triangle-diamond-necklaces, and the theta graph. `K_4` is kept out;
/// suites that can handle it add it explicitly.
pub fn fixtures() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for k in 2..=6 {
        out.push((
            format!("N_{k}"),
            families::diamond_necklace(k).unwrap().graph,
        ));
    }
    for k in 1..=3 {
        out.push((
            format!("F_{}", 2 * k),
            families::triangle_necklace(k).unwrap().graph,
        ));
    }
    for k in 2..=3 {
        out.push((
            format!("H_{}", 2 * k),
            families::triangle_diamond_necklace(k).unwrap().graph,
        ));
    }
    out.push(("theta".into(), families::theta_graph().graph));
    out
}

/// Unit-count profiles for random generation, all of order at most 24.
pub const RANDOM_PROFILES: &[(usize, usize)] = &[
    (2, 0),
    (4, 0),
    (6, 0),
    (8, 0),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (2, 1),
    (2, 2),
    (2, 3),
    (4, 1),
    (4, 2),
    (2, 4),
    (6, 1),
    (0, 6),
    (4, 3),
];

/// `count` random claw-free cubic instances with seeds `0..count`, cycling
/// through the unit-count profiles.
pub fn random_instances(count: usize) -> Vec<(String, Graph)> {
    (0..count)
        .map(|i| {
            let (t, d) = RANDOM_PROFILES[i % RANDOM_PROFILES.len()];
            let seed = i as u64;
            let g = families::random_claw_free_cubic(t, d, seed)
                .expect("profile is feasible")
                .graph;
            (format!("random_t{t}_d{d}_s{seed}"), g)
        })
        .collect()
}
