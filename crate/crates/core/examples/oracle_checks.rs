// Every closed form against its numerical oracle, at the quick level.

use jc_capacity::verify::{run_verify, Level};

pub fn run_example() -> Result<(), String> {
    let reports = run_verify(Level::Quick);
    for r in &reports {
        println!("{r}");
    }
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(format!("suite {} failed", r.name)),
        None => Ok(()),
    }
}

fn main() -> Result<(), String> {
    run_example()
}
