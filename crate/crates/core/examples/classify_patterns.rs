//! Flags and preservation verdicts for a few patterns, then the size-3 census.

use ramsey_patterns::classifier::{census, classify_report};
use ramsey_patterns::realize::EmbeddingMode;
use ramsey_patterns::{Pattern, Result};

pub fn run_example() -> Result<()> {
    for text in ["3:010", "3:000", "4:000101", "5:0111000101"] {
        let p: Pattern = text.parse()?;
        for mode in EmbeddingMode::ALL {
            let r = classify_report(&p, mode);
            println!(
                "{p:<14} {mode:<9} {}  hyp={} one2={} omega2={}",
                r.flags, r.verdict_omega_hyp, r.verdict_one_2dim, r.verdict_omega_2dim
            );
            if let Some(w) = &r.witness_omega_hyp {
                println!("    least witness {} at {}", w.pattern, w.embedding);
            }
        }
    }
    let table = census(3, EmbeddingMode::Injective)?;
    let names: Vec<String> = table
        .divergent_irreducible()
        .iter()
        .map(|p| p.to_string())
        .collect();
    println!("size 3: divergent and irreducible = {}", names.join(", "));
    Ok(())
}

fn main() {
    run_example().expect("classification example");
}
