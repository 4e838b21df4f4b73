// Blowing up the origin: lifting vector fields and time-one maps to the
// two standard charts, and checking that lifting commutes with taking the
// time-one map.
//
// Chart U1 covers directions transverse to {x = 0} via π(u, v) = (u, uv),
// with exceptional divisor {u = 0}; chart U2 uses π(u, v) = (uv, v).
//
// ```text
// cargo run --example blowup_and_pullback
// ```

use rpcurves::blowup::{
    blowup_map, exp_pullback_check, pullback_field, saturate, tangentiality, BlowupChart,
};
use rpcurves::parse::parse_field;
use rpcurves::vector_field::exp_flow;
use rpcurves::Result;

pub fn run_example() -> Result<()> {
    let n = 10;

    // ---- lifting a field ---------------------------------------------------
    // X = x²∂/∂x + (xy + y²)∂/∂y pulled back to U1 and saturated: dividing
    // out the largest power of the divisor that divides the lift.
    let x = parse_field("x^2, x*y + y^2", n)?;
    println!("X = {}", x.render_with("x", "y"));
    for chart in [BlowupChart::U1, BlowupChart::U2] {
        let lift = pullback_field(&x, chart)?;
        let (sat, m) = saturate(&lift, &chart.divisor(n))?;
        println!(
            "  {chart:?}: raw lift {},\n       saturated ({} divided out {m} times): {}",
            lift.render_with("u", "v"),
            chart.divisor_name(),
            sat.render_with("u", "v"),
        );
    }
    println!();

    // ---- lifting a map -----------------------------------------------------
    // The time-one map of X lifts to each chart as a map fixing the divisor
    // pointwise or not; `tangentiality` measures the contact.
    let f = exp_flow(&x)?;
    let reliable = n - 2; // lifting a degree-n jet costs two degrees
    for chart in [BlowupChart::U1, BlowupChart::U2] {
        let lift = blowup_map(&f, chart)?;
        let tan = tangentiality(&lift)?;
        println!(
            "  exp(X) lifted to {chart:?} (to degree {reliable}): ({}, {})\n       contact order with divisor t = {}, tangential: {}",
            lift.c1().truncate_to(reliable).render_with("u", "v"),
            lift.c2().truncate_to(reliable).render_with("u", "v"),
            tan.t,
            tan.tangential,
        );
    }
    println!();

    // ---- lifting commutes with the exponential -----------------------------
    // Pulling back X and exponentiating (with the divisor weighting) agrees
    // with lifting exp(X) directly, up to the reliable truncation degree.
    for (label, text) in [
        ("x^2, x*y + y^2", "x^2, x*y + y^2"),
        ("x^2, y^2", "x^2, y^2"),
        ("x^2, x*y", "x^2, x*y"),
    ] {
        let x = parse_field(text, n)?;
        let u1 = exp_pullback_check(&x, BlowupChart::U1)?;
        let u2 = exp_pullback_check(&x, BlowupChart::U2)?;
        println!("  exp commutes with lifting for ({label}): U1 {u1}, U2 {u2}");
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
