//! Every example in `examples/` must keep running; each is included here and
//! executed as a test.

mod exp_and_log_example {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exp_and_log.rs"));
}

#[test]
fn exp_and_log_example_runs() {
    exp_and_log_example::run_example().expect("exp_and_log example should run");
}

mod orders_and_milnor_example {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/orders_and_milnor.rs"));
}

#[test]
fn orders_and_milnor_example_runs() {
    orders_and_milnor_example::run_example().expect("orders_and_milnor example should run");
}

mod puiseux_curves_example {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/puiseux_curves.rs"));
}

#[test]
fn puiseux_curves_example_runs() {
    puiseux_curves_example::run_example().expect("puiseux_curves example should run");
}

mod separatrices_and_petals_example {
    #![allow(dead_code)]
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/separatrices_and_petals.rs"
    ));
}

#[test]
fn separatrices_and_petals_example_runs() {
    separatrices_and_petals_example::run_example()
        .expect("separatrices_and_petals example should run");
}

mod blowup_and_pullback_example {
    #![allow(dead_code)]
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/blowup_and_pullback.rs"
    ));
}

#[test]
fn blowup_and_pullback_example_runs() {
    blowup_and_pullback_example::run_example().expect("blowup_and_pullback example should run");
}

mod dicriticality_example {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dicriticality.rs"));
}

#[test]
fn dicriticality_example_runs() {
    dicriticality_example::run_example().expect("dicriticality example should run");
}

mod rp_bound_example {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rp_bound.rs"));
}

#[test]
fn rp_bound_example_runs() {
    rp_bound_example::run_example().expect("rp_bound example should run");
}
