//! The no-injury construction against an eventually stable enumeration,
//! followed by the trace checks and the realizer probes past the settle stage.

use ramsey_patterns::constructions::dnc::{build_dnc_coloring, oldest_blocks};
use ramsey_patterns::constructions::oracle::StableOracle;
use ramsey_patterns::constructions::priority::{cantor_pair, h_bound, pattern_index};
use ramsey_patterns::constructions::trace::verify_trace;
use ramsey_patterns::realize::realizers;
use ramsey_patterns::{Pattern, Result};

pub fn run_example() -> Result<()> {
    let p: Pattern = "3:000".parse()?;
    let k = cantor_pair(pattern_index(&p)?, 0);
    let count = h_bound(k) as usize + 1;
    let w: Vec<usize> = (1..=2 * count + 2).collect();
    let settle = 20;
    let oracle = StableOracle::new().with_set(0, w.clone(), settle);
    let stages = 60;

    let (f, trace) = build_dnc_coloring(&oracle, stages);
    print!("{}", verify_trace(&trace, &f, &["all"])?);
    println!(
        "requirement {k} needs {count} blocks: {:?}",
        oldest_blocks(&oracle, 0, stages - 1, &p, &f.truncate(stages - 1), count)
    );

    let probes = (settle + 1..stages)
        .filter(|&s| {
            let mut h = w.clone();
            h.push(s);
            realizers(&f, &h, &p).iter().any(|r| r.last() == Some(&s))
        })
        .count();
    println!(
        "{probes} of {} probes past stage {settle} end a realizer of {p}",
        stages - settle - 1
    );
    Ok(())
}

fn main() {
    run_example().expect("construction example");
}
