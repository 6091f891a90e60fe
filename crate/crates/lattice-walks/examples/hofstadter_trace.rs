//! Evaluates Tr H^n per site of the Hofstadter Hamiltonian five
//! independent ways at a few rational fluxes and reports the agreement.

use lattice_walks::hofstadter::verify_moment_identity;
use lattice_walks::RationalFlux;

fn main() {
    for (n, p, q) in [(4u64, 1u64, 2u64), (6, 1, 3), (8, 2, 5), (10, 3, 7)] {
        let flux = RationalFlux::new(p, q).unwrap();
        let report = verify_moment_identity(n, flux).unwrap();
        println!(
            "n = {n:>2}, flux {flux}: Z_n = {:.6}, max deviation {:.2e} -> {}",
            report.area_generating,
            report.max_relative_deviation,
            if report.passes() { "agree" } else { "MISMATCH" }
        );
        assert!(report.passes());
    }
}
