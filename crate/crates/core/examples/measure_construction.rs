//! The measure-based construction against total prefix functionals, with the
//! final block families and their measures.

use ramsey_patterns::constructions::measure::{
    all_blocks_measure, block_measures, build_measure_coloring,
};
use ramsey_patterns::constructions::oracle::{PrefixFunctional, RuleFunctional};
use ramsey_patterns::constructions::priority::cantor_unpair;
use ramsey_patterns::constructions::trace::verify_trace;
use ramsey_patterns::{Color, Pattern, Result};

pub fn run_example() -> Result<()> {
    let total = RuleFunctional::new(3, |_: &[Color], s| (0..=s).collect());
    // Silent only on oracles starting 1111, so its measure is 15/16.
    let most = RuleFunctional::new(4, |sigma: &[Color], s| {
        if sigma.len() < 4 || sigma.starts_with(&[1, 1, 1, 1]) {
            vec![]
        } else {
            (0..=s).collect()
        }
    });
    let fs: Vec<&dyn PrefixFunctional> = vec![&total, &most];
    let patterns: Vec<Pattern> = vec!["3:010".parse()?, "4:101100".parse()?];
    let stages = 80;

    let (f, trace) = build_measure_coloring(&fs, &patterns, stages);
    print!("{}", verify_trace(&trace, &f, &["all"])?);
    for (req, blocks) in trace.final_states() {
        let (_, e) = cantor_unpair(req as u64);
        let fun = fs[e as usize];
        let per: Vec<String> = block_measures(fun, &blocks, stages - 1)
            .iter()
            .map(|w| format!("{:.3}", w.as_f64()))
            .collect();
        println!(
            "requirement {req}: {} blocks {:?}, block measures [{}], all blocks {:.3}",
            blocks.len(),
            blocks
                .iter()
                .map(|b| (b[0], b[b.len() - 1]))
                .collect::<Vec<_>>(),
            per.join(", "),
            all_blocks_measure(fun, &blocks, stages - 1).as_f64()
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("measure example");
}
