//! Long-running conformance scan, beyond what the test suites cover:
//! solver-versus-enumeration on arbitrary small graphs, and construction
//! plus prediction conformance on larger random class instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spreadlab::solver::{self, SolveOptions};
use spreadlab::spreading::{self, SpreadParams};
use spreadlab::theory::{self, Verdict};
use spreadlab::{constructions, decomposition, families, Graph, Limit, VertexSet};

fn brute_sigma(g: &Graph, params: SpreadParams) -> usize {
    let n = g.n();
    for k in 0..=n {
        for mask in 0u32..(1u32 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let s: VertexSet = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            if spreading::is_spreading_set(g, &s, params) {
                return k;
            }
        }
    }
    unreachable!()
}

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.random_range(1..=9);
    let p_edge = rng.random_range(0.1..0.9);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p_edge) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let opts = SolveOptions::default();
    let params_grid: Vec<SpreadParams> = {
        let mut cells = Vec::new();
        for p in 1..=4 {
            for q in [
                Limit::Finite(1),
                Limit::Finite(2),
                Limit::Finite(3),
                Limit::Infinite,
            ] {
                cells.push(SpreadParams::new(p, q).unwrap());
            }
        }
        cells
    };

    let mut checked = 0usize;
    for _ in 0..300 {
        let g = random_graph(&mut rng);
        for &params in &params_grid {
            let exact = solver::sigma_exact(&g, params, &opts)
                .unwrap()
                .exact()
                .unwrap();
            let brute = brute_sigma(&g, params);
            assert_eq!(
                exact.value,
                brute,
                "solver mismatch on n={} m={} {params}",
                g.n(),
                g.m()
            );
            assert!(spreading::is_spreading_set(&g, &exact.witness, params));
            checked += 1;
        }
    }
    println!("solver vs enumeration: {checked} cells agree");

    let profiles = [
        (2usize, 0usize),
        (4, 0),
        (6, 0),
        (8, 0),
        (10, 0),
        (0, 2),
        (0, 4),
        (0, 6),
        (0, 7),
        (2, 3),
        (2, 5),
        (4, 2),
        (4, 4),
        (6, 2),
        (6, 3),
        (8, 1),
    ];
    let cells: Vec<SpreadParams> = vec![
        SpreadParams::finite(2, 1).unwrap(),
        SpreadParams::finite(2, 2).unwrap(),
        SpreadParams::finite(2, 3).unwrap(),
        SpreadParams::finite(3, 1).unwrap(),
        SpreadParams::finite(3, 2).unwrap(),
    ];
    let mut attained_low = 0usize;
    let mut attained_high = 0usize;
    for seed in 0..500usize {
        let (t, d) = profiles[seed % profiles.len()];
        let g = families::random_claw_free_cubic(t, d, 10_000 + seed as u64)
            .unwrap()
            .graph;
        let part = decomposition::delta_d_partition(&g).unwrap();
        let u = part.unit_count();
        let necklace = part.triangle_unit_count() == 0;
        let (beta, _) = solver::vertex_cover_number(&g).unwrap();

        let perc2 = constructions::percolating_set_2(&g).unwrap();
        assert_eq!(perc2.set.len(), if necklace { u + 1 } else { u });
        let s22 = constructions::spreading_set_22(&g).unwrap();
        assert!(s22.set.len() <= u + 1);
        let s21 = constructions::spreading_set_21(&g).unwrap();
        assert_eq!(s21.set.len(), u + 2);
        let perc3 = constructions::percolating_set_3(&g).unwrap();
        assert_eq!(perc3.set.len(), beta);
        let s31 = constructions::spreading_set_31(&g).unwrap();
        assert!(s31.set.len() >= beta + 1);

        let report = theory::verify(&g, &format!("scan_{seed}"), &cells, &opts).unwrap();
        for cell in &report.cells {
            assert_eq!(
                cell.verdict,
                Verdict::Consistent,
                "seed {seed} cell ({},{:?})",
                cell.params.p,
                cell.params.q
            );
            if let (Some(attained), 2, Some(2)) = (cell.attained, cell.params.p, cell.params.q) {
                if attained == u {
                    attained_low += 1;
                } else {
                    attained_high += 1;
                }
            }
        }
    }
    println!("500 class instances conform; (2,2) attained u: {attained_low}, u+1: {attained_high}");
}
