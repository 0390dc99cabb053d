//! Realizers, avoidance, the exhaustive avoiding-subset oracle and the greedy
//! split of a set avoiding a join.

use ramsey_patterns::coloring::FiniteColoring;
use ramsey_patterns::realize::{avoids, find_realizer, realizers};
use ramsey_patterns::stabilize::{greedy_avoid_join, max_avoiding_subset};
use ramsey_patterns::{Pattern, Result};

pub fn run_example() -> Result<()> {
    // Edges of color 1 exactly between vertices of different parity.
    let f = FiniteColoring::from_fn(12, |x, y| ((x + y) % 2) as u8);
    let all: Vec<usize> = (0..12).collect();
    let p: Pattern = "3:011".parse()?;
    println!("least realizer of {p}: {:?}", find_realizer(&f, &all, &p));
    println!("{} realizers in total", realizers(&f, &all, &p).len());

    let best = max_avoiding_subset(&f, &all, &p)?;
    println!(
        "largest subset avoiding {p}: {best:?} (avoids: {})",
        avoids(&f, &best, &p)
    );

    let q: Pattern = "2:1".parse()?;
    let r: Pattern = "2:0".parse()?;
    let evens: Vec<usize> = (0..12).step_by(2).collect();
    let out = greedy_avoid_join(&f, &evens, &q, &r)?;
    println!(
        "evens avoid {q} ⊎ {r}; greedy keeps side {} = {:?}, verified {}",
        out.side, out.set, out.verified
    );
    Ok(())
}

fn main() {
    run_example().expect("avoidance example");
}
