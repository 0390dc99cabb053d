//! Joins, decompositions and the two irreducibility tests.

use ramsey_patterns::algebra::{
    decompositions, is_i_merging, is_irreducible, join, IrreducibilityMethod,
};
use ramsey_patterns::{Pattern, Result};

pub fn run_example() -> Result<()> {
    let p0: Pattern = "3:010".parse()?;
    let p1: Pattern = "3:101".parse()?;
    let hem = join(&p0, &p1);
    println!("{p0} ⊎ {p1} = {hem}");

    let a: Pattern = "2:0".parse()?;
    let b: Pattern = "3:101".parse()?;
    let c: Pattern = "3:010".parse()?;
    let left = join(&join(&a, &b), &c);
    let right = join(&a, &join(&b, &c));
    println!("({a} ⊎ {b}) ⊎ {c} = {left}, {a} ⊎ ({b} ⊎ {c}) = {right}");

    for text in ["4:000101", "3:010", &hem.to_string()] {
        let p: Pattern = text.parse()?;
        let parts: Vec<String> = decompositions(&p)
            .iter()
            .map(|(x, y)| format!("{x} ⊎ {y}"))
            .collect();
        println!(
            "{p}: irreducible {} / {}, merging0 {}, merging1 {}, decompositions [{}]",
            is_irreducible(&p, IrreducibilityMethod::Definitional),
            is_irreducible(&p, IrreducibilityMethod::Criterion),
            is_i_merging(&p, 0),
            is_i_merging(&p, 1),
            parts.join("; ")
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("join example");
}
