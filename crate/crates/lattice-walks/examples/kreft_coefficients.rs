//! Evaluates the Kreft coefficient a_{p,q}(2j) by every applicable
//! method — nested sum (q >= 2j), extrapolation (q < 2j), coalesced
//! series (both regimes), printed closed form (j <= 4) — and shows their
//! agreement.

use lattice_walks::kreft::{
    kreft_closed_form, kreft_direct, kreft_extrapolated, kreft_series, RationalFlux,
};

fn main() {
    for (p, q, j) in [(1u64, 5u64, 1u64), (1, 5, 2), (2, 5, 2), (1, 3, 2), (1, 2, 3), (1, 1, 2)] {
        let flux = RationalFlux::new(p, q).unwrap();
        print!("a_{{{p}/{q}}}({}):", 2 * j);
        if let Ok(v) = kreft_direct(flux, j) {
            print!("  direct {v:.6}");
        }
        if let Ok(v) = kreft_extrapolated(flux, j) {
            print!("  extrapolated {v:.6}");
        }
        let series = kreft_series(flux, j).unwrap();
        print!("  series {series:.6}");
        if let Ok(closed) = kreft_closed_form(j) {
            print!("  closed-form {:.6}", closed.evaluate(flux));
        }
        println!();
    }
}
