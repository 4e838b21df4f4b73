//! Blow-up of the origin in the two standard charts, for maps and fields.
//!
//! The blow-up replaces the origin by a line of directions (the exceptional
//! divisor). In the first chart `π(u,v) = (u, uv)` the divisor is `{u = 0}`
//! with `v` the direction parameter; in the second `π(u,v) = (uv, v)` the
//! divisor is `{v = 0}` with parameter `u`. A map tangent to the identity
//! lifts to each chart by conjugation `π⁻¹ ∘ f ∘ π`; a vector field pulls
//! back by the same substitution, after which the divisor factor can be
//! divided out (saturation). A singularity is *dicritical* when the divisor
//! is not invariant under the lifted dynamics — the map version (the lift
//! moves points off the divisor to first order) and the field version (the
//! saturated pull-back is transverse to the divisor) agree.

use crate::error::{Error, Result};
use crate::series::{Series1, Series2};
use crate::vector_field::{exp_flow, exp_flow_weighted, TangentMap, VectorField};

/// The two standard affine charts of the blow-up of the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupChart {
    /// `π(u,v) = (u, uv)`; exceptional divisor `{u = 0}`.
    U1,
    /// `π(u,v) = (uv, v)`; exceptional divisor `{v = 0}`.
    U2,
}

impl BlowupChart {
    /// The components of `π` as series in the chart coordinates.
    pub fn projection(&self, trunc: usize) -> (Series2, Series2) {
        let u = Series2::var_x(trunc);
        let v = Series2::var_y(trunc);
        match self {
            BlowupChart::U1 => (u.clone(), u.mul(&v)),
            BlowupChart::U2 => (u.mul(&v), v),
        }
    }

    /// The local defining function of the exceptional divisor.
    pub fn divisor(&self, trunc: usize) -> Series2 {
        match self {
            BlowupChart::U1 => Series2::var_x(trunc),
            BlowupChart::U2 => Series2::var_y(trunc),
        }
    }

    pub fn divisor_name(&self) -> &'static str {
        match self {
            BlowupChart::U1 => "u",
            BlowupChart::U2 => "v",
        }
    }

    /// Divisor-adic order of a series: the largest power of the defining
    /// function dividing it (`None` for the zero series).
    fn divisor_order(&self, s: &Series2) -> Option<usize> {
        match self {
            BlowupChart::U1 => s.x_multiplicity(),
            BlowupChart::U2 => s.y_multiplicity(),
        }
    }

    fn divide_divisor(&self, s: &Series2) -> Result<Series2> {
        match self {
            BlowupChart::U1 => s.divide_x(),
            BlowupChart::U2 => s.divide_y(),
        }
    }

    /// Restrict a series to the divisor, as a series in the direction
    /// parameter (`v` in the first chart, `u` in the second).
    fn restrict_to_divisor(&self, s: &Series2) -> Series1 {
        match self {
            BlowupChart::U1 => s.subst_x_zero(),
            BlowupChart::U2 => s.subst_y_zero(),
        }
    }
}

/// A self-map of a blow-up chart fixing the exceptional divisor pointwise.
/// Unlike [`TangentMap`] it need not be tangent to the identity: the lift
/// of a tangent map can acquire linear off-divisor terms.
#[derive(Debug, Clone)]
pub struct ChartMap {
    c1: Series2,
    c2: Series2,
    chart: BlowupChart,
}

impl ChartMap {
    pub fn c1(&self) -> &Series2 {
        &self.c1
    }

    pub fn c2(&self) -> &Series2 {
        &self.c2
    }

    pub fn chart(&self) -> BlowupChart {
        self.chart
    }

    pub fn trunc(&self) -> usize {
        self.c1.trunc()
    }

    /// `(c1 − u, c2 − v)`.
    pub fn displacement(&self) -> (Series2, Series2) {
        let n = self.trunc();
        (
            self.c1.sub(&Series2::var_x(n)),
            self.c2.sub(&Series2::var_y(n)),
        )
    }

    pub fn render(&self) -> String {
        format!(
            "({}, {})",
            self.c1.render_with("u", "v"),
            self.c2.render_with("u", "v")
        )
    }
}

/// Tangentiality of a chart map along the exceptional divisor.
#[derive(Debug, Clone)]
pub struct TangentialityResult {
    /// Order of the map on the divisor: the least divisor-adic order of a
    /// nonzero displacement component.
    pub t: usize,
    pub tangential: bool,
    /// `(l∘f − l)/l^T` restricted to the divisor, a series in the direction
    /// parameter; zero exactly when the map is tangential.
    pub witness_on_divisor: Series1,
}

/// Lift a map tangent to the identity to a blow-up chart:
/// in the first chart `f̃ = (F₁, (F₂/u)·(F₁/u)⁻¹)` where `F = f∘π`.
/// The lift fixes the divisor pointwise.
pub fn blowup_map(f: &TangentMap, chart: BlowupChart) -> Result<ChartMap> {
    let (px, py) = chart.projection(f.trunc());
    let f1 = f.f1().substitute(&px, &py)?;
    let f2 = f.f2().substitute(&px, &py)?;
    let stage = "blowup_map";
    let bad_division = |_| {
        Error::domain(
            stage,
            "a component of f∘π is not divisible by the divisor; use the other chart",
        )
    };
    let (c1, c2) = match chart {
        BlowupChart::U1 => {
            let q1 = f1.divide_x().map_err(bad_division)?;
            let q2 = f2.divide_x().map_err(bad_division)?;
            let inv = q1.invert_unit().map_err(|_| {
                Error::domain(stage, "f∘π degenerates on the divisor; use the other chart")
            })?;
            (f1, q2.mul(&inv))
        }
        BlowupChart::U2 => {
            let q1 = f1.divide_y().map_err(bad_division)?;
            let q2 = f2.divide_y().map_err(bad_division)?;
            let inv = q2.invert_unit().map_err(|_| {
                Error::domain(stage, "f∘π degenerates on the divisor; use the other chart")
            })?;
            (q1.mul(&inv), f2)
        }
    };
    Ok(ChartMap { c1, c2, chart })
}

/// Pull back a vector field to a blow-up chart — the raw coordinate
/// transform, with no saturation. In the first chart:
/// `u̇ = A(u,uv)`, `v̇ = (B(u,uv) − v·A(u,uv))/u`.
pub fn pullback_field(x: &VectorField, chart: BlowupChart) -> Result<VectorField> {
    let n = x.trunc();
    let (px, py) = chart.projection(n);
    let a = x.a().substitute(&px, &py)?;
    let b = x.b().substitute(&px, &py)?;
    let pole = |_| {
        Error::domain(
            "pullback_field",
            "the field does not vanish at the origin; its pull-back has a pole on the divisor",
        )
    };
    match chart {
        BlowupChart::U1 => {
            let v = Series2::var_y(n);
            let vdot = b.sub(&v.mul(&a)).divide_x().map_err(pole)?;
            Ok(VectorField::new(a, vdot))
        }
        BlowupChart::U2 => {
            let u = Series2::var_x(n);
            let udot = a.sub(&u.mul(&b)).divide_y().map_err(pole)?;
            Ok(VectorField::new(udot, b))
        }
    }
}

/// Divide a chart field by the largest power of the divisor dividing both
/// components; returns the reduced field and that power.
pub fn saturate(xb: &VectorField, divisor: &Series2) -> Result<(VectorField, usize)> {
    let n = xb.trunc();
    let chart = if *divisor == Series2::var_x(n) {
        BlowupChart::U1
    } else if *divisor == Series2::var_y(n) {
        BlowupChart::U2
    } else {
        return Err(Error::domain(
            "saturate",
            "the divisor must be a chart coordinate (u or v)",
        ));
    };
    if xb.is_zero() {
        return Err(Error::domain("saturate", "cannot saturate the zero field"));
    }
    let oa = chart.divisor_order(xb.a());
    let ob = chart.divisor_order(xb.b());
    let m = match (oa, ob) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => unreachable!("nonzero field"),
    };
    let mut a = xb.a().clone();
    let mut b = xb.b().clone();
    for _ in 0..m {
        if !a.is_zero() {
            a = chart.divide_divisor(&a).expect("divisor order");
        }
        if !b.is_zero() {
            b = chart.divide_divisor(&b).expect("divisor order");
        }
    }
    Ok((VectorField::new(a, b), m))
}

/// Check the lift-commutes-with-exponential identity: the lift of `exp(X)`
/// equals the exponential of `π*X`, compared to degree `N − 2` (the chart
/// division and the substitution each cost one degree of certainty).
pub fn exp_pullback_check(x: &VectorField, chart: BlowupChart) -> Result<bool> {
    let n = x.trunc();
    let f = exp_flow(x)?;
    let lifted = blowup_map(&f, chart)?;
    let pulled = pullback_field(x, chart)?;
    let (wx, wy) = match chart {
        BlowupChart::U1 => (2, 1),
        BlowupChart::U2 => (1, 2),
    };
    let (e1, e2) = exp_flow_weighted(&pulled, wx, wy)?;
    let d = n.saturating_sub(2).max(1);
    Ok(lifted.c1.eq_to_degree(&e1, d) && lifted.c2.eq_to_degree(&e2, d))
}

/// Tangentiality of a chart map along the exceptional divisor: with `l`
/// the divisor coordinate and `T` the least divisor-adic order among the
/// nonzero displacement components, the witness is `(l∘f − l)/l^T` on the
/// divisor; the map is tangential when the witness vanishes.
pub fn tangentiality(f: &ChartMap) -> Result<TangentialityResult> {
    let chart = f.chart;
    let (d1, d2) = f.displacement();
    if d1.is_zero() && d2.is_zero() {
        return Err(Error::domain(
            "tangentiality",
            "the identity map is excluded from the tangentiality dichotomy",
        ));
    }
    for d in [&d1, &d2] {
        if !d.is_zero() && chart.divisor_order(d) == Some(0) {
            return Err(Error::domain(
                "tangentiality",
                "the map does not fix the exceptional divisor pointwise",
            ));
        }
    }
    let t = [&d1, &d2]
        .into_iter()
        .filter_map(|d| chart.divisor_order(d))
        .min()
        .expect("some displacement is nonzero");
    // l∘f − l is the displacement of the divisor coordinate itself.
    let along_l = match chart {
        BlowupChart::U1 => &d1,
        BlowupChart::U2 => &d2,
    };
    let witness_on_divisor = if along_l.is_zero() {
        Series1::zero()
    } else {
        let mut q = along_l.clone();
        for _ in 0..t {
            q = chart.divide_divisor(&q).expect("t is the minimal order");
        }
        chart.restrict_to_divisor(&q)
    };
    Ok(TangentialityResult {
        t,
        tangential: witness_on_divisor.is_zero(),
        witness_on_divisor,
    })
}

/// A singular field is dicritical when the exceptional divisor is not
/// invariant for the saturated pull-back, in either chart.
pub fn dicritical_field(x: &VectorField) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::domain(
            "dicritical_field",
            "the zero field has no well-defined blow-up behaviour",
        ));
    }
    if x.order() == Some(0) {
        return Err(Error::domain(
            "dicritical_field",
            "the field must be singular at the origin (order at least 1)",
        ));
    }
    for chart in [BlowupChart::U1, BlowupChart::U2] {
        let pulled = pullback_field(x, chart)?;
        let n = pulled.trunc();
        let (sat, _) = saturate(&pulled, &chart.divisor(n))?;
        // {l = 0} is invariant iff l divides the l-component of the field.
        let along = match chart {
            BlowupChart::U1 => sat.a(),
            BlowupChart::U2 => sat.b(),
        };
        let invariant = along.is_zero() || chart.divisor_order(along).unwrap_or(0) >= 1;
        if !invariant {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A map tangent to the identity is dicritical when its lift is
/// non-tangential on the divisor; both charts together cover the divisor.
pub fn dicritical_map(f: &TangentMap) -> Result<bool> {
    for chart in [BlowupChart::U1, BlowupChart::U2] {
        let lifted = blowup_map(f, chart)?;
        let result = tangentiality(&lifted)?;
        if !result.tangential {
            return Ok(true);
        }
    }
    Ok(false)
}
