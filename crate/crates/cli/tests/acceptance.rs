use std::process::ExitCode;

use rcm_cli::suite::run_all;
use rcm_core::{PrimeField, DEFAULT_PRIME};

fn main() -> ExitCode {
    let field = PrimeField::new(DEFAULT_PRIME).expect("default prime");
    let report = run_all(field, 0);
    print!("{}", report.lines());
    let failed: Vec<u32> = report.criteria.iter().filter(|c| !c.passed).map(|c| c.number).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", report.criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
