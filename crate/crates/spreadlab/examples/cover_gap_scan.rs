//! Scans fixtures and random instances for gaps between the plain minimum
//! vertex cover and the minimum cover holding exactly two vertices of
//! every triangle.

use spreadlab::constructions;
use spreadlab::families;
use spreadlab::solver;

fn main() {
    let mut instances = Vec::new();
    for k in 2..=6 {
        instances.push((
            format!("N_{k}"),
            families::diamond_necklace(k).unwrap().graph,
        ));
    }
    for k in 1..=4 {
        instances.push((
            format!("F_{}", 2 * k),
            families::triangle_necklace(k).unwrap().graph,
        ));
    }
    for k in 2..=3 {
        instances.push((
            format!("H_{}", 2 * k),
            families::triangle_diamond_necklace(k).unwrap().graph,
        ));
    }
    instances.push(("theta".into(), families::theta_graph().graph));
    let profiles = [
        (2usize, 0usize),
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
    for seed in 0..400usize {
        let (t, d) = profiles[seed % profiles.len()];
        let g = families::random_claw_free_cubic(t, d, seed as u64)
            .unwrap()
            .graph;
        instances.push((format!("random_t{t}_d{d}_s{seed}"), g));
    }

    let mut gaps = 0usize;
    for (name, g) in &instances {
        let (beta, _) = solver::vertex_cover_number(g).unwrap();
        let (restricted, _) = constructions::min_two_per_triangle_cover(g).unwrap();
        if restricted != beta {
            gaps += 1;
            println!("GAP {name}: beta={beta} restricted={restricted}");
        }
    }
    println!("{} instances scanned, {gaps} gaps", instances.len());
}
