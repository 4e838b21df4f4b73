//! Local intersection multiplicity of plane curve germs at the origin, and
//! the Milnor numbers of fields and maps built on it.
//!
//! The multiplicity `i₀(F,G) = dim ℂ[[x,y]]/(F,G)` is computed by the
//! axiomatic reduction for plane curves: it is symmetric, additive on
//! products, invariant under `G ← G + H·F`, and `i₀(x,y) = 1`. These rules
//! alone pin the value down and give an exact terminating algorithm on
//! polynomial representatives — no Puiseux expansion and no floating point.

use crate::cpoly::BPoly;
use crate::error::{Error, Result};
use crate::series::Series2;
use crate::vector_field::{TangentMap, VectorField};

/// An intersection multiplicity: a non-negative integer, or infinite when
/// the two germs share a component through the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn is_finite(&self) -> bool {
        matches!(self, Multiplicity::Finite(_))
    }

    /// The finite value, if any.
    pub fn value(&self) -> Option<u64> {
        match self {
            Multiplicity::Finite(v) => Some(*v),
            Multiplicity::Infinite => None,
        }
    }
}

impl std::fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Multiplicity::Finite(v) => write!(f, "{v}"),
            Multiplicity::Infinite => write!(f, "infinite"),
        }
    }
}

/// Exact reduction on polynomial representatives.
///
/// Loop invariant: the answer equals `acc + i₀(F,G)` for the current pair.
/// Each pass runs a Euclidean phase on the restrictions to `y = 0` — the
/// reduction `G ← G − (lc_g/lc_f)·x^{Δdeg}·F` does not change `i₀` and
/// strictly lowers the degree of one restriction — until a restriction
/// vanishes; then `y` divides that germ and splitting it off adds
/// `ord_x` of the other restriction. Every split adds at least 1, and a
/// finite multiplicity cannot exceed `deg F · deg G` (the global count of
/// intersections with multiplicity bounds the local one), so exceeding that
/// bound proves a shared component.
/// Outcome of the reduction: a value, or proof that the running count
/// passed the caller's certification window (only possible with a cutoff).
enum Reduction {
    Done(Multiplicity),
    PastCutoff,
}

fn fulton(mut f: BPoly, mut g: BPoly, cutoff: Option<u64>) -> Reduction {
    let bound: u64 = match (f.total_degree(), g.total_degree()) {
        (Some(df), Some(dg)) => (df as u64) * (dg as u64),
        _ => return Reduction::Done(Multiplicity::Infinite), // a zero germ shares everything
    };
    let mut acc: u64 = 0;
    loop {
        if f.is_zero() || g.is_zero() {
            return Reduction::Done(Multiplicity::Infinite);
        }
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return Reduction::Done(Multiplicity::Finite(acc));
        }
        if acc > bound {
            return Reduction::Done(Multiplicity::Infinite);
        }
        // On jet inputs nothing above the cutoff can be certified, so there
        // is no point grinding the (potentially huge) exact count out.
        if let Some(c) = cutoff {
            if acc > c {
                return Reduction::PastCutoff;
            }
        }
        // Rescaling is free for ideals and keeps the coefficient bit-size
        // from compounding across elimination rounds.
        f = f.normalize_content();
        g = g.normalize_content();
        let mut rf = f.eval_y0();
        let mut rg = g.eval_y0();
        // Euclidean phase on the restrictions.
        while !rf.is_zero() && !rg.is_zero() {
            if rf.deg() > rg.deg() {
                std::mem::swap(&mut f, &mut g);
                std::mem::swap(&mut rf, &mut rg);
            }
            let df = rf.deg().unwrap();
            let dg = rg.deg().unwrap();
            let c = -rg
                .leading()
                .unwrap()
                .div_exact(rf.leading().unwrap())
                .expect("leading coefficients are nonzero");
            g = g.add(&f.mul_monomial(&c, dg - df, 0));
            rg = g.eval_y0();
        }
        // One restriction vanished: y divides that germ. Splitting off the
        // factor y adds ord_x of the other restriction (i₀(y, ·)).
        if rg.is_zero() {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut rf, &mut rg);
        }
        // Now rf ≡ 0, so y | f.
        if rg.is_zero() {
            return Reduction::Done(Multiplicity::Infinite); // both divisible by y
        }
        acc += rg.ord().unwrap() as u64;
        f = f.divide_y_pow(1);
    }
}

/// The intersection multiplicity `i₀(F,G)` at the origin.
///
/// The computation runs on the given coefficients as exact polynomials.
/// When both inputs are exact the answer is unconditional. When an input is
/// a jet, a finite answer `v ≤ N` (the truncation order) is still certified
/// — any extension of the jets past degree `N` leaves it unchanged, because
/// `𝔪^v` already lies in the ideal of the jets — while `v > N` or an
/// infinite answer could be altered by unseen terms and is reported as an
/// explicit uncertified error instead of a guess.
pub fn intersection_multiplicity(f: &Series2, g: &Series2) -> Result<Multiplicity> {
    assert_eq!(
        f.trunc(),
        g.trunc(),
        "intersection operands must share a truncation order"
    );
    let n = f.trunc();
    let exact = f.is_exact() && g.is_exact();
    let cutoff = if exact { None } else { Some(n as u64) };
    let m = match fulton(BPoly::from_series2(f), BPoly::from_series2(g), cutoff) {
        Reduction::Done(m) => m,
        Reduction::PastCutoff => {
            return Err(Error::uncertified(
                "intersection_multiplicity",
                n,
                format!(
                    "the degree-{n} jets meet with multiplicity above the jet order; unseen higher-order terms decide the answer"
                ),
            ));
        }
    };
    if exact {
        return Ok(m);
    }
    match m {
        Multiplicity::Finite(v) if v as usize <= n => Ok(m),
        Multiplicity::Finite(v) => Err(Error::uncertified(
            "intersection_multiplicity",
            n,
            format!(
                "the degree-{n} jets meet with multiplicity {v}, above the jet order; unseen higher-order terms could change the answer"
            ),
        )),
        Multiplicity::Infinite => Err(Error::uncertified(
            "intersection_multiplicity",
            n,
            "the degree-{n} jets share a component; unseen higher-order terms could make the multiplicity finite"
                .replace("{n}", &n.to_string()),
        )),
    }
}

/// The Milnor number `μ₀(X) = i₀(A, B)` of a singular vector field.
pub fn milnor_number(x: &VectorField) -> Result<Multiplicity> {
    intersection_multiplicity(x.a(), x.b())
}

/// The Milnor number `μ(f) = i₀(f₁−x, f₂−y)` of a map tangent to the
/// identity — the intersection multiplicity of its fixed-point equations.
/// Equals `milnor_number(log_map(f))`: the lowest nonzero jets of `f − Id`
/// and of the logarithm agree.
pub fn milnor_of_map(f: &TangentMap) -> Result<Multiplicity> {
    let (d1, d2) = f.displacement();
    intersection_multiplicity(&d1, &d2)
}
