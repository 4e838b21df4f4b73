// Order invariants and Milnor numbers of maps tangent to the identity.
//
// For f = (x + f₁, y + f₂) tangent to the identity, ν₁ ≤ ν₂ are the sorted
// vanishing orders of the displacement (f₁, f₂), η = max(ν₁, ν₂), and the
// Milnor number μ(f) = dim ℂ[[x,y]]/(f₁, f₂) counts the fixed point at the
// origin with multiplicity.  μ is finite exactly when the fixed-point set
// is isolated; a curve of fixed points makes it infinite.
//
// ```text
// cargo run --example orders_and_milnor
// ```

use rpcurves::intersection::{milnor_of_map, Multiplicity};
use rpcurves::parse::{parse_field, parse_map};
use rpcurves::vector_field::exp_flow;
use rpcurves::Result;

fn fmt_ord(o: Option<usize>) -> String {
    o.map_or_else(|| "infinite".to_string(), |v| v.to_string())
}

fn show(label: &str, f: &rpcurves::vector_field::TangentMap) -> Result<()> {
    let orders = f.orders()?;
    let mu = milnor_of_map(f)?;
    println!("{label}");
    println!(
        "  nu1 = {}, nu2 = {}, eta = {}",
        fmt_ord(orders.nu1),
        fmt_ord(orders.nu2),
        fmt_ord(orders.eta)
    );
    match mu {
        Multiplicity::Finite(m) => println!("  mu  = {m}"),
        Multiplicity::Infinite => println!("  mu  = infinite (non-isolated fixed point)"),
    }
    Ok(())
}

pub fn run_example() -> Result<()> {
    let n = 12;

    // Exact polynomial maps: μ is computed unconditionally.
    show("f = (x + y^2, y + x^2)", &parse_map("x + y^2, y + x^2", n)?)?;
    show("f = (x + x^2, y + y^3)", &parse_map("x + x^2, y + y^3", n)?)?;
    show(
        "f = (x + x*(x - y^2), y + y*(x - y^2))  — fixed along the curve x = y^2",
        &parse_map("x + x^2 - x*y^2, y + x*y - y^3", n)?,
    )?;
    println!();

    // Time-one maps: the displacement is a truncated jet, so a finite mu is
    // certified only when it is visible below the truncation order.
    let x = parse_field("x^2, x*y + y^2", n)?;
    let f = exp_flow(&x)?;
    show("f = exp(x^2 d/dx + (x*y + y^2) d/dy)", &f)?;

    let x = parse_field("x^3, y^3", n)?;
    let f = exp_flow(&x)?;
    show("f = exp(x^3 d/dx + y^3 d/dy)", &f)?;
    println!();

    // An infinite mu cannot be told apart from "large but finite" by any
    // finite jet, so for inexact input the computation refuses to certify.
    let x = parse_field("x^2, x*y", n)?;
    let f = exp_flow(&x)?;
    match milnor_of_map(&f) {
        Err(e) => println!("exp(x^2 d/dx + x*y d/dy): {e}"),
        Ok(m) => println!("exp(x^2 d/dx + x*y d/dy): mu = {m:?}"),
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
