//! Leftmost-path colorings of a finite tree and homogeneity for the tree.

use ramsey_patterns::tree::{homogeneous_for_tree, tree_to_coloring, BinaryTree};
use ramsey_patterns::Result;

pub fn run_example() -> Result<()> {
    let paths: [&[u8]; 3] = [
        &[1, 1, 0, 1, 1, 1, 1],
        &[1, 0, 1, 1, 1, 1, 1],
        &[0, 1, 1, 0, 0],
    ];
    let tree = BinaryTree::from_paths(paths);
    let f = tree_to_coloring(&tree, 8)?;
    print!("{}", f.to_file_string());
    for s in 0..8 {
        println!("level {s}: {:?}", tree.leftmost(s));
    }
    println!(
        "{{2,3}} homogeneous at depth 7: {}",
        homogeneous_for_tree(&tree, &[2, 3], 7)?
    );
    Ok(())
}

fn main() {
    run_example().expect("tree example");
}
