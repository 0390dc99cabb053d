//! A short seeded run of every lemma suite, then a planted defect.

use ramsey_patterns::lemmas::{run_all, run_suite, Mutation, SuiteConfig};
use ramsey_patterns::Result;

pub fn run_example() -> Result<()> {
    let config = SuiteConfig {
        count: Some(300),
        max_size: Some(5),
        ..SuiteConfig::default()
    };
    for r in run_all(&config) {
        println!("{r}");
    }
    let broken = SuiteConfig {
        mutation: Some(Mutation::FlipCase),
        ..config
    };
    println!("{}", run_suite("join-associativity", &broken)?);
    Ok(())
}

fn main() {
    run_example().expect("lemma example");
}
