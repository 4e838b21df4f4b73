// Puiseux expansions of plane curve germs f(x, y) = 0 at the origin.
//
// Every branch is written either as y = φ(x) (possibly after the
// substitution x = z^q for ramified branches) or as x = φ(y), and the
// expansion is checked by substituting it back into f.
//
// ```text
// cargo run --example puiseux_curves
// ```

use rpcurves::parse::parse_poly;
use rpcurves::puiseux::{puiseux_branches, Orientation};
use rpcurves::Result;

fn show(label: &str, f: &rpcurves::Series2, depth: usize) -> Result<()> {
    let set = puiseux_branches(f, depth)?;
    println!("{label}");
    for br in &set.branches {
        println!("  {br}");
        // Verify: substituting the parametrization into f gives 0.
        if !br.is_family() {
            let pull = match (br.is_axis(), br.orientation) {
                (true, Orientation::XofY) => f.subst_x_zero(),
                (true, Orientation::YofX) => f.subst_y_zero(),
                // y = φ(z) on x = z^q
                (false, Orientation::YofX) => f.ramified_restrict(&br.phi, br.q)?,
                // x = φ(z) on y = z^q: same restriction after swapping roles
                (false, Orientation::XofY) => {
                    f.swap_vars().ramified_restrict(&br.phi, br.q)?
                }
            };
            println!("    f(parametrization) = {}", pull.render_with("z"));
        }
    }
    for w in &set.warnings {
        println!("  note: {w}");
    }
    println!();
    Ok(())
}

pub fn run_example() -> Result<()> {
    let n = 16;
    let depth = 12;

    // A node: two smooth transverse branches.
    show("f = y^2 - x^2 (node)", &parse_poly("y^2 - x^2", n)?, depth)?;

    // The cusp y² = x³: one branch, ramified of index 2.
    show("f = y^2 - x^3 (cusp)", &parse_poly("y^2 - x^3", n)?, depth)?;

    // A tacnode: two smooth branches tangent to each other.
    show(
        "f = (y - x^2)*(y + x^2)  (tacnode)",
        &parse_poly("y^2 - x^4", n)?,
        depth,
    )?;

    // Branches that are not polynomial: y = x/(1-x) solves y - x - x*y = 0.
    show(
        "f = y - x - x*y  (smooth, full series)",
        &parse_poly("y - x - x*y", n)?,
        depth,
    )?;

    // Mixed: an axis, a smooth branch, and a ramified one.
    show(
        "f = x * (y^2 - x^3) * (y - 2*x)",
        &parse_poly("x*y^3 - 2*x^2*y^2 - x^4*y + 2*x^5", n)?,
        depth,
    )?;
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
