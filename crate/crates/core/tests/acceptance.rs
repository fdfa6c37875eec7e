//! Acceptance criteria 1-12 at their pinned tolerances. Prints one line per
//! criterion, followed by the failing checks of any criterion that fails.

use opuckit::verify::{self, CheckReport};

const SEED: u64 = 7;

const CRITERIA: [(usize, &str); 12] = [
    (1, "dual-path kernel equality"),
    (2, "Lebesgue closed-form kernel"),
    (3, "determinant formula vs oracle, floor vs ceil"),
    (4, "degeneracy at w=0 and the w->0 limit"),
    (5, "confluent double zero"),
    (6, "(c,g) <-> alpha roundtrip"),
    (7, "xi normalization"),
    (8, "Geronimus closed forms"),
    (9, "q-hypergeometric closed forms"),
    (10, "hypergeometric closed forms"),
    (11, "transformed (c,g) vs Levinson"),
    (12, "kernel zero location"),
];

fn main() {
    let mut failed = 0;
    for (k, name) in CRITERIA {
        match verify::criterion(k, SEED) {
            Ok(reports) => {
                let bad: Vec<&CheckReport> = reports.iter().filter(|r| !r.pass).collect();
                let status = if bad.is_empty() { "PASS" } else { "FAIL" };
                println!("criterion {k:>2} {status}  {name} ({}/{} checks pass)", reports.len() - bad.len(), reports.len());
                for r in &bad {
                    println!("    {} [{}]: error {:e} > {:e}", r.check, r.params, r.error, r.threshold);
                }
                if !bad.is_empty() {
                    failed += 1;
                }
            }
            Err(e) => {
                println!("criterion {k:>2} FAIL  {name}: {e}");
                failed += 1;
            }
        }
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
