// The upper bound (μ(f) + 1)·(η(f)² − η(f)) on the number of robust
// parabolic curves of a map tangent to the identity, and the lower count
// of parabolic petals found along its separatrices.
//
// Dicritical maps fall outside the bound: they carry infinitely many
// robust parabolic curves, and the diagnosis replaces the formula.
//
// ```text
// cargo run --example rp_bound
// ```

use rpcurves::parse::{parse_field, parse_input_file, parse_map, ParsedInput};
use rpcurves::report::{rp_curve_bound, rp_report, RpBound};
use rpcurves::vector_field::exp_flow;
use rpcurves::Result;

pub fn run_example() -> Result<()> {
    let n = 12;
    let depth = 12;

    // ---- the bound by itself ---------------------------------------------
    for text in ["x^2, x*y + y^2", "x^3, y^3", "x^2, x*y"] {
        let x = parse_field(text, n)?;
        let f = exp_flow(&x)?;
        match rp_curve_bound(&f)? {
            RpBound::Bound { mu, eta, bound } => println!(
                "exp({text}): mu = {mu}, eta = {eta}, at most {bound} robust parabolic curves"
            ),
            RpBound::DicriticalInfinitelyMany => {
                println!("exp({text}): dicritical — infinitely many robust parabolic curves")
            }
        }
    }
    println!();

    // ---- the full report ---------------------------------------------------
    // Everything at once: orders, Milnor number, dicriticality (field and
    // map agree), separatrices, per-branch petal counts, the resulting
    // lower count, and the bound.
    let input = parse_input_file("field: x^2, x*y + y^2", n)?;
    let rep = rp_report(&input, depth)?;
    println!("{}", rep.to_text());

    // The same report serializes to JSON with sorted keys, so the output
    // is byte-for-byte deterministic.
    let json = rep.to_json();
    println!("bound in JSON: {}", json["rp_curves"]["bound"]);
    println!();

    // Reports accept maps directly as well.
    let input = ParsedInput::Map(parse_map("x + x^2 + x*y, y + y^2", n)?);
    let rep = rp_report(&input, depth)?;
    println!("{}", rep.to_text());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
