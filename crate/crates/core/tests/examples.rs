//! Every runnable example also runs as a test.

#[allow(dead_code)]
#[path = "../examples/avoidance_search.rs"]
mod avoidance_search;
#[allow(dead_code)]
#[path = "../examples/classify_patterns.rs"]
mod classify_patterns;
#[allow(dead_code)]
#[path = "../examples/dnc_construction.rs"]
mod dnc_construction;
#[allow(dead_code)]
#[path = "../examples/forcing_questions.rs"]
mod forcing_questions;
#[allow(dead_code)]
#[path = "../examples/join_algebra.rs"]
mod join_algebra;
#[allow(dead_code)]
#[path = "../examples/lemma_suites.rs"]
mod lemma_suites;
#[allow(dead_code)]
#[path = "../examples/measure_construction.rs"]
mod measure_construction;
#[allow(dead_code)]
#[path = "../examples/stabilized_avoidance.rs"]
mod stabilized_avoidance;
#[allow(dead_code)]
#[path = "../examples/stable_2dim_construction.rs"]
mod stable_2dim_construction;
#[allow(dead_code)]
#[path = "../examples/tree_coloring.rs"]
mod tree_coloring;

#[test]
fn example_avoidance_search() {
    avoidance_search::run_example().unwrap();
}

#[test]
fn example_classify_patterns() {
    classify_patterns::run_example().unwrap();
}

#[test]
fn example_dnc_construction() {
    dnc_construction::run_example().unwrap();
}

#[test]
fn example_forcing_questions() {
    forcing_questions::run_example().unwrap();
}

#[test]
fn example_join_algebra() {
    join_algebra::run_example().unwrap();
}

#[test]
fn example_lemma_suites() {
    lemma_suites::run_example().unwrap();
}

#[test]
fn example_measure_construction() {
    measure_construction::run_example().unwrap();
}

#[test]
fn example_stabilized_avoidance() {
    stabilized_avoidance::run_example().unwrap();
}

#[test]
fn example_stable_2dim_construction() {
    stable_2dim_construction::run_example().unwrap();
}

#[test]
fn example_tree_coloring() {
    tree_coloring::run_example().unwrap();
}
