//! Verdict profiles of the built-in question catalogue, and a failing coloring.

use ramsey_patterns::forcing::{catalogue, evaluate};
use ramsey_patterns::Result;

pub fn run_example() -> Result<()> {
    for inst in catalogue() {
        let profile: String = inst
            .profile(12)?
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        println!("{:<24} {profile}", inst.name);
    }
    let inst = catalogue()
        .into_iter()
        .find(|i| i.name == "omega-pair-zero")
        .expect("catalogue entry");
    let out = evaluate(&inst.f, &inst.x, &inst.question(), 5)?;
    if let Some((g, _)) = out.failing {
        println!("at bound 5 no pair survives g = {}", g.describe());
    }
    Ok(())
}

fn main() {
    run_example().expect("forcing example");
}
