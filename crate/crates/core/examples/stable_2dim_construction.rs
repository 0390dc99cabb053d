//! The stable-coloring construction against total bi-arrays.

use ramsey_patterns::constructions::oracle::{BiArrayFunctional, RuleBiArray};
use ramsey_patterns::constructions::stable2dim::build_stable_2dim_coloring;
use ramsey_patterns::constructions::trace::verify_trace;
use ramsey_patterns::Result;

pub fn run_example() -> Result<()> {
    let singles = RuleBiArray::new(|n| Some((vec![n + 1], n)), |_n, m| Some((vec![m + 1], m)));
    let pairs = RuleBiArray::new(
        |n| Some((vec![2 * n + 1, 2 * n + 2], n)),
        |n, m| Some((vec![m + n + 3], 2 * m)),
    );
    let bs: Vec<&dyn BiArrayFunctional> = vec![&singles, &pairs];
    let (sc, trace) = build_stable_2dim_coloring(&bs, 60);
    print!("{}", verify_trace(&trace, &sc.base, &["all"])?);
    for (req, status) in trace.final_statuses() {
        println!("requirement {req}: {status}");
    }
    println!("limit class 0: {:?}", sc.limit_class(0));
    println!("limit class 1: {:?}", sc.limit_class(1));
    Ok(())
}

fn main() {
    run_example().expect("stable construction example");
}
