// Time-one maps of singular vector fields and their formal logarithms.
//
// ```text
// cargo run --example exp_and_log
// ```

use rpcurves::parse::{parse_field, parse_map};
use rpcurves::vector_field::{exp_flow, log_map};
use rpcurves::Result;

pub fn run_example() -> Result<()> {
    let n = 8; // truncation order (total degree)

    // The flow of x²∂/∂x + y²∂/∂y at time one: every coefficient of the
    // one-variable flows x/(1−x), y/(1−y) equals 1.
    let x = parse_field("x^2, y^2", n)?;
    let f = exp_flow(&x)?;
    println!("X      = {}", x.render_with("x", "y"));
    println!("exp(X) = {}", f.render_with("x", "y"));
    println!();

    // A nilpotent field: y²∂/∂x. The Lie series terminates, so the
    // time-one map is an exact polynomial shear.
    let x = parse_field("y^2, 0", n)?;
    let f = exp_flow(&x)?;
    println!("X      = {}", x.render_with("x", "y"));
    println!("exp(X) = {}  (exact: {})", f.render_with("x", "y"), f.f1().is_exact());
    println!();

    // The logarithm inverts the exponential: recover a field from its
    // time-one map by the correction iteration.
    let x = parse_field("x^2, x*y + y^2", n)?;
    let f = exp_flow(&x)?;
    let back = log_map(&f)?;
    println!("X           = {}", x.render_with("x", "y"));
    println!("log(exp(X)) = {}", back.render_with("x", "y"));
    println!("round trip agrees to degree {}: {}", n, back.eq_to_degree(&x, n));
    println!();

    // And the other way around: start from a map tangent to the identity.
    let f = parse_map("x + x^2 + y^3, y + y^2", n)?;
    let x = log_map(&f)?;
    let again = exp_flow(&x)?;
    println!("f           = {}", f.render_with("x", "y"));
    println!("log(f)      = {}", x.render_with("x", "y"));
    println!("exp(log(f)) agrees to degree {}: {}", n, again.eq_to_degree(&f, n));

    // Fields with a linear part have no time-one map tangent to the
    // identity; the rejection carries the reason.
    let bad = parse_field("x, y^2", n)?;
    match exp_flow(&bad) {
        Err(e) => println!("\nexp(x d/dx + ...) is rejected: {e}"),
        Ok(_) => unreachable!("order-1 fields cannot exponentiate"),
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
