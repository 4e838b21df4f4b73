// Formal separatrices of a singular vector field and the parabolic petal
// data of each one under the time-one map.
//
// A separatrix is an invariant curve germ through the singularity.  On each
// isolated separatrix the time-one map restricts to a one-variable parabolic
// germ z ↦ z + c·z^h + …, which has h − 1 attracting petals; h obeys an
// a-priori upper bound and a finite candidate set determined by the orders
// of the field and the branch exponents.
//
// ```text
// cargo run --example separatrices_and_petals
// ```

use rpcurves::parse::parse_field;
use rpcurves::separatrix::{
    exponent_candidates, invariance_residual, restricted_exponent, separatrices,
};
use rpcurves::Result;

pub fn run_example() -> Result<()> {
    let n = 16;
    let depth = 12;

    // ---- example 1: a field with two separatrices (the axes) -------------
    let x = parse_field("x^2, x*y + y^2", n)?;
    println!("X = {}", x.render_with("x", "y"));
    let set = separatrices(&x, depth)?;
    println!(
        "  invariant axes: {{x = 0}} {}, {{y = 0}} {}",
        set.includes_x_axis, set.includes_y_axis
    );
    for br in &set.isolated {
        let rep = restricted_exponent(&x, br)?;
        let (cands, _) = exponent_candidates(2, rep.branch.p.max(1), rep.branch.q)?;
        println!(
            "  on {}: h = {}, petals = {}, order estimate {}, candidates {:?}",
            rep.branch.describe(),
            rep.h,
            rep.petal_count,
            rep.exponent_estimate,
            cands,
        );
    }
    println!();

    // ---- example 2: a curved separatrix (Hamiltonian of the cusp) --------
    // X = 2y ∂/∂x + 3x² ∂/∂y preserves y² − x³; its zero level is the cusp.
    let x = parse_field("2*y, 3*x^2", n)?;
    println!("X = {}", x.render_with("x", "y"));
    let set = separatrices(&x, depth)?;
    for br in &set.isolated {
        println!("  separatrix: {br}");
        // Certificate of invariance: the residual of the branch under X
        // must vanish identically (here: checked through order 20).
        let res = invariance_residual(&x, br, 20)?;
        println!("    invariance residual (to z^20): {}", res.render_with("z"));
    }
    println!();

    // ---- example 3: a one-parameter family of separatrices ---------------
    // Every line y = c·x/(1 − c·x) through the origin is invariant.
    let x = parse_field("x^2, y^2", n)?;
    println!("X = {}", x.render_with("x", "y"));
    let set = separatrices(&x, depth)?;
    for br in &set.isolated {
        println!("  isolated separatrix: {br}");
    }
    for br in &set.families {
        println!("  family stem: {br}  (one member per value of c)");
    }
    for w in &set.warnings {
        println!("  warning: {w}");
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
