//! Computes the area distribution C_n(A) from the multi-sum formula and
//! cross-checks it against the brute-force DP oracle.

use lattice_walks::area_enum::enumerate_areas;
use lattice_walks::walk_oracle::oracle_areas;

fn main() {
    for n in (2..=10u64).step_by(2) {
        let formula = enumerate_areas(n).unwrap();
        let oracle = oracle_areas(n).unwrap();
        assert_eq!(formula, oracle, "formula disagrees with oracle at n = {n}");

        println!("n = {n}: total {} walks", formula.total());
        for (&a, count) in formula.counts() {
            if a >= 0 {
                println!("  C_{n}({a:>2}) = {count}");
            }
        }
    }
    println!("formula == oracle for all n above");
}
