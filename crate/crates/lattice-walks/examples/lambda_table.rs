//! Splits C_n(A) by the number m of right/left step pairs via the
//! λ-deformation and checks the table against the step-resolved oracle.

use lattice_walks::area_enum::lambda_area_table;
use lattice_walks::walk_oracle::oracle_areas_by_steps;

fn main() {
    let n = 8u64;
    let table = lambda_area_table(n).unwrap();
    let oracle = oracle_areas_by_steps(n).unwrap();
    assert_eq!(table, oracle, "deformation disagrees with the step oracle");

    println!("C_{{m,m,{0},{0}}}(A) for n = {n} (m + vertical pairs = {0}):", n / 2);
    for (m, row) in table.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|(a, c)| format!("{a}:{c}")).collect();
        println!("  m = {m}: {}", cells.join("  "));
    }
    println!("table matches the step-resolved oracle");
}
