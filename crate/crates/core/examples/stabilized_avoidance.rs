//! Stabilizing tails, `(f, g)`-avoidance and extension of finite conditions.

use ramsey_patterns::coloring::FiniteColoring;
use ramsey_patterns::stabilize::{extend_condition, fg_avoids, find_stabilizing_tail, Condition};
use ramsey_patterns::{Pattern, Result};

pub fn run_example() -> Result<()> {
    let f = FiniteColoring::from_fn(16, |x, y| ((x * 3 + y * 5) % 7 < 3) as u8);
    let p: Pattern = "3:010".parse()?;

    let (tail, g) =
        find_stabilizing_tail(&f, &[0, 1], &(2..16).collect::<Vec<_>>()).expect("nonempty tail");
    println!(
        "tail stabilizing {{0,1}}: {tail:?} with g = {}",
        g.describe()
    );
    println!(
        "{{0,1}} (f,g)-avoids {p}: {}",
        fg_avoids(&f, &g, &[0, 1], &p)?
    );

    let mut c = Condition::initial((0..16).collect());
    while let Some(&x) = c.reservoir.first() {
        match extend_condition(&f, &c, x, &p) {
            Ok(next) => c = next,
            Err(err) => {
                println!("stopped at {x}: {err}");
                break;
            }
        }
        println!("stem {:?} reservoir {:?}", c.stem, c.reservoir);
    }
    Ok(())
}

fn main() {
    run_example().expect("stabilization example");
}
