//! Exercises the executable identities: Chu-Vandermonde, the j-block
//! multi-binomial generalization, the paired-sum identity, and the
//! stride-r substitution rule.

use lattice_walks::combinatorics::{compositions, Composition};
use lattice_walks::identities::{chu_vandermonde, multi_binomial_identity, paired_sum_identity};
use lattice_walks::kreft::shifted_product_sum;
use lattice_walks::RationalFlux;

fn main() {
    assert!(chu_vandermonde(6, 3, 4, 2));
    println!("Chu-Vandermonde: binom(9,6) recovered from the A-sum");

    for h in 1..=6u64 {
        for c in compositions(h) {
            let top: Vec<i64> = c.parts().iter().map(|&p| 2 * p as i64).collect();
            let primed: Vec<i64> = c.parts().iter().map(|&p| p as i64).collect();
            assert!(multi_binomial_identity(&top, &primed), "{:?}", c.parts());
        }
    }
    println!("multi-binomial identity: all doubled compositions with sum <= 6");

    let flux = RationalFlux::new(1, 13).unwrap();
    assert!(paired_sum_identity(2, 1, 1, flux));
    println!("paired-sum identity at flux {flux}");

    let c = Composition::new(vec![2, 1]).unwrap();
    for stride in 1..=3u64 {
        let (direct, expansion) = shifted_product_sum(flux, &c, stride);
        assert!((direct - expansion).abs() < 1e-9 * direct.abs().max(1.0));
        println!("stride {stride}: product sum {direct:.6} == dilated expansion {expansion:.6}");
    }
}
