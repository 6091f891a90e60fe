//! Walks the compositions of n/2, printing each rational coefficient and
//! the exact cosine expansion of its shifted product; the coefficient sum
//! reproduces binom(2h, h)/(2h).

use lattice_walks::area_enum::composition_term;
use lattice_walks::combinatorics::{coefficient_sum, compositions};

fn main() {
    for h in 2..=4u64 {
        println!("h = {h}:");
        for c in compositions(h) {
            let term = composition_term(&c);
            let harmonics: Vec<String> = term
                .coefficients()
                .iter()
                .map(|(a, v)| format!("A={a}: {v}"))
                .collect();
            println!(
                "  {:?}  coefficient {}  [{}]",
                c.parts(),
                c.coefficient(),
                harmonics.join(", ")
            );
        }
        println!("  coefficient sum = {}", coefficient_sum(h));
    }
}
