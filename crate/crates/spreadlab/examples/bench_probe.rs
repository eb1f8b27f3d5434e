use std::time::Instant;

use spreadlab::families;
use spreadlab::solver::{self, SolveOptions};
use spreadlab::spreading::SpreadParams;

fn probe(name: &str, g: &spreadlab::Graph, params: SpreadParams) {
    let start = Instant::now();
    let res = solver::sigma_exact(g, params, &SolveOptions::default())
        .unwrap()
        .exact()
        .unwrap();
    println!(
        "{name} {params}: value={} nodes={} elapsed={:?}",
        res.value,
        res.nodes_explored,
        start.elapsed()
    );
}

fn main() {
    let h6 = families::triangle_diamond_necklace(3).unwrap().graph;
    let h4 = families::triangle_diamond_necklace(2).unwrap().graph;
    let f6 = families::triangle_necklace(3).unwrap().graph;
    let n5 = families::diamond_necklace(5).unwrap().graph;
    let theta = families::theta_graph().graph;

    probe("H6", &h6, SpreadParams::percolation(2).unwrap());
    probe("H6", &h6, SpreadParams::percolation(3).unwrap());
    probe("H6", &h6, SpreadParams::finite(3, 2).unwrap());
    probe("H6", &h6, SpreadParams::finite(2, 2).unwrap());
    probe("H6", &h6, SpreadParams::finite(2, 1).unwrap());
    probe("H6", &h6, SpreadParams::finite(3, 1).unwrap());
    probe("theta", &theta, SpreadParams::finite(2, 2).unwrap());
    probe("theta", &theta, SpreadParams::finite(2, 3).unwrap());
    probe("N5", &n5, SpreadParams::percolation(2).unwrap());
    probe("F6", &f6, SpreadParams::zero_forcing());
    probe("H4", &h4, SpreadParams::zero_forcing());
    probe("N5", &n5, SpreadParams::zero_forcing());
    probe("H6", &h6, SpreadParams::zero_forcing());
}
