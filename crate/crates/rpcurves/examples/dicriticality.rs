// Dicriticality: does the exceptional divisor of the blow-up stay invariant?
//
// A singular field is dicritical when, after one blow-up and saturation,
// the exceptional divisor is NOT invariant — generic points of the divisor
// then flow off it, producing infinitely many invariant curves downstairs.
// A map tangent to the identity is dicritical when its lift fails to fix
// the divisor pointwise.  For f = exp(X) the two notions agree.
//
// ```text
// cargo run --example dicriticality
// ```

use rpcurves::blowup::{
    blowup_map, dicritical_field, dicritical_map, pullback_field, saturate, tangentiality,
    BlowupChart,
};
use rpcurves::parse::parse_field;
use rpcurves::vector_field::exp_flow;
use rpcurves::Result;

pub fn run_example() -> Result<()> {
    let n = 10;

    let samples = [
        ("x^2, x*y + y^2", "tangent cone x*y + y^2 - x*y = y^2, not radial"),
        ("x^2, y^2", "cone y*x^2 - x*y^2 vanishes only on three lines"),
        ("x^2, x*y", "cone y*x^2 - x*x*y = 0: radial cone, divisor escapes"),
        ("x^3 + x*y^2, x^2*y + y^3", "radial multiple (x^2+y^2)*(x, y)"),
    ];

    for (text, why) in samples {
        let x = parse_field(text, n)?;
        let dic_x = dicritical_field(&x)?;
        let f = exp_flow(&x)?;
        let dic_f = dicritical_map(&f)?;
        println!("X = ({text})");
        println!("  field dicritical: {dic_x}  ({why})");
        println!("  time-one map dicritical: {dic_f}  — agrees: {}", dic_x == dic_f);

        // Show the mechanism in chart U1: the saturated lift's divisor
        // component, and the lifted map's tangency defect.
        let lift = pullback_field(&x, BlowupChart::U1)?;
        let (sat, _) = saturate(&lift, &BlowupChart::U1.divisor(n))?;
        let a_on_divisor = sat.a().subst_x_zero();
        println!(
            "  U1 saturated lift moves the divisor by: {}",
            a_on_divisor.render_with("v")
        );
        let tan = tangentiality(&blowup_map(&f, BlowupChart::U1)?)?;
        if tan.tangential {
            println!("  lifted map fixes the divisor pointwise");
        } else {
            println!(
                "  lifted map leaves the divisor at order {}: witness {}",
                tan.t,
                tan.witness_on_divisor.render_with("v")
            );
        }
        println!();
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
