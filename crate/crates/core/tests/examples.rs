//! Every runnable example also runs as a test.

mod hj_strings_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hj_strings.rs"));
}

#[test]
fn hj_strings_example_runs() {
    hj_strings_example::run_example().expect("example runs");
}

mod t_strings_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/t_strings.rs"));
}

#[test]
fn t_strings_example_runs() {
    t_strings_example::run_example().expect("example runs");
}

mod markov_tree_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/markov_tree.rs"));
}

#[test]
fn markov_tree_example_runs() {
    markov_tree_example::run_example().expect("example runs");
}

mod toric_surfaces_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/toric_surfaces.rs"));
}

#[test]
fn toric_surfaces_example_runs() {
    toric_surfaces_example::run_example().expect("example runs");
}

mod an_table_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/an_table.rs"));
}

#[test]
fn an_table_example_runs() {
    an_table_example::run_example().expect("example runs");
}

mod sporadic_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sporadic.rs"));
}

#[test]
fn sporadic_example_runs() {
    sporadic_example::run_example().expect("example runs");
}

mod lemmas_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lemmas.rs"));
}

#[test]
fn lemmas_example_runs() {
    lemmas_example::run_example().expect("example runs");
}

mod fibres_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fibres.rs"));
}

#[test]
fn fibres_example_runs() {
    fibres_example::run_example().expect("example runs");
}

mod verify_report_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_report.rs"));
}

#[test]
fn verify_report_example_runs() {
    verify_report_example::run_example().expect("example runs");
}
