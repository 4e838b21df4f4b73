//! Singular vector fields, the derivation action, the time-one exponential
//! of the flow, and the formal logarithm of a map tangent to the identity.
//!
//! A field `X = A ∂/∂x + B ∂/∂y` with `order(X) = min(ord A, ord B) ≥ 2`
//! has a polynomial time-one flow at every jet order: the Lie series
//! `f = (x + Σ Xⁿ.x/n!, y + Σ Xⁿ.y/n!)` terminates degree by degree because
//! `ord(Xⁿ.g) ≥ n·(order(X)−1) + ord(g)`. Conversely every map tangent to
//! the identity is such a time-one flow, and the logarithm is recovered by a
//! jet-order-increasing correction iteration.

use crate::error::{Error, Result};
use crate::series::Series2;

/// A vector field `A ∂/∂x + B ∂/∂y` singular (or not) at the origin.
///
/// Construction is permissive — saturation during blow-up legitimately
/// produces fields of order 0 or 1 — and the operations that need a
/// higher-order singularity check for it themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    a: Series2,
    b: Series2,
}

impl VectorField {
    /// Build a field from its two components. Panics if the truncation
    /// orders disagree (a programming error, as with series arithmetic).
    pub fn new(a: Series2, b: Series2) -> Self {
        assert_eq!(
            a.trunc(),
            b.trunc(),
            "vector field components must share a truncation order"
        );
        VectorField { a, b }
    }

    pub fn zero(trunc: usize) -> Self {
        VectorField {
            a: Series2::zero(trunc),
            b: Series2::zero(trunc),
        }
    }

    /// The `∂/∂x` component.
    pub fn a(&self) -> &Series2 {
        &self.a
    }

    /// The `∂/∂y` component.
    pub fn b(&self) -> &Series2 {
        &self.b
    }

    pub fn trunc(&self) -> usize {
        self.a.trunc()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `min(ord A, ord B)`; `None` for the zero field.
    pub fn order(&self) -> Option<usize> {
        match (self.a.ord(), self.b.ord()) {
            (Some(p), Some(q)) => Some(p.min(q)),
            (Some(p), None) => Some(p),
            (None, q) => q,
        }
    }

    /// The orders of the two components separately (`None` = zero component).
    pub fn component_orders(&self) -> (Option<usize>, Option<usize>) {
        (self.a.ord(), self.b.ord())
    }

    /// The derivation applied to a series: `X.g = A·∂g/∂x + B·∂g/∂y`.
    ///
    /// When `order(X) ≥ 1` the multiplication by `A` and `B` pushes the
    /// unreliable top-degree coefficient of the derivative of an inexact jet
    /// past the truncation order, so iterating the derivation is safe.
    pub fn apply_derivation(&self, g: &Series2) -> Series2 {
        self.a
            .mul(&g.derivative_x())
            .add(&self.b.mul(&g.derivative_y()))
    }

    /// The homogeneous polynomial `x·B_ν − y·A_ν` of degree `ν+1`, where
    /// `ν = order(X)` and the subscript takes the degree-`ν` homogeneous
    /// part. It vanishes identically exactly when the lowest jet of `X` is a
    /// multiple of the radial field — the dicritical case.
    pub fn tangent_cone(&self) -> Result<Series2> {
        let nu = self.order().ok_or_else(|| {
            Error::domain("tangent_cone", "the zero field has no order")
        })?;
        if nu + 1 > self.trunc() {
            return Err(Error::domain(
                "tangent_cone",
                "the cone has degree order+1, beyond the truncation order",
            ));
        }
        let a_nu = self.a.homogeneous_part(nu);
        let b_nu = self.b.homogeneous_part(nu);
        Ok(b_nu
            .mul_monomial(&crate::scalar::Scalar::one(), 1, 0)
            .sub(&a_nu.mul_monomial(&crate::scalar::Scalar::one(), 0, 1)))
    }

    /// Push forward along the variable swap `(x,y) ↦ (y,x)`.
    pub fn swap_vars(&self) -> VectorField {
        VectorField {
            a: self.b.swap_vars(),
            b: self.a.swap_vars(),
        }
    }

    pub fn eq_to_degree(&self, rhs: &VectorField, d: usize) -> bool {
        self.a.eq_to_degree(&rhs.a, d) && self.b.eq_to_degree(&rhs.b, d)
    }

    pub fn render_with(&self, vx: &str, vy: &str) -> String {
        format!(
            "({}) d/d{} + ({}) d/d{}",
            self.a.render_with(vx, vy),
            vx,
            self.b.render_with(vx, vy),
            vy
        )
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render_with("x", "y"))
    }
}

/// A map `(f₁, f₂)` tangent to the identity: `f − Id` has order ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentMap {
    f1: Series2,
    f2: Series2,
}

/// The four order invariants of a map tangent to the identity.
///
/// `None` in a component order means that component of `f − Id` has no terms
/// up to the truncation order. `eta` is `None` when either component order
/// is (the maximum is then unbounded).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orders {
    /// `ord(f₁ − x)`.
    pub nu1: Option<usize>,
    /// `ord(f₂ − y)`.
    pub nu2: Option<usize>,
    /// `ν(f) = min(ν₁, ν₂)`, the order of the first non-vanishing jet of
    /// `f − Id`.
    pub nu: usize,
    /// `η(f) = max(ν₁, ν₂)`.
    pub eta: Option<usize>,
}

impl TangentMap {
    /// Validate tangency to the identity: both components of `f − Id` must
    /// have order ≥ 2 (or vanish).
    pub fn new(f1: Series2, f2: Series2) -> Result<Self> {
        assert_eq!(
            f1.trunc(),
            f2.trunc(),
            "map components must share a truncation order"
        );
        let trunc = f1.trunc();
        let d1 = f1.sub(&Series2::var_x(trunc));
        let d2 = f2.sub(&Series2::var_y(trunc));
        for (name, d) in [("first", &d1), ("second", &d2)] {
            if let Some(o) = d.ord() {
                if o < 2 {
                    return Err(Error::domain(
                        "tangent_map",
                        format!(
                            "the map is not tangent to the identity: its {name} component minus the identity has order {o}"
                        ),
                    ));
                }
            }
        }
        Ok(TangentMap { f1, f2 })
    }

    pub fn identity(trunc: usize) -> Self {
        TangentMap {
            f1: Series2::var_x(trunc),
            f2: Series2::var_y(trunc),
        }
    }

    pub fn f1(&self) -> &Series2 {
        &self.f1
    }

    pub fn f2(&self) -> &Series2 {
        &self.f2
    }

    pub fn trunc(&self) -> usize {
        self.f1.trunc()
    }

    /// The components of `f − Id`.
    pub fn displacement(&self) -> (Series2, Series2) {
        let trunc = self.trunc();
        (
            self.f1.sub(&Series2::var_x(trunc)),
            self.f2.sub(&Series2::var_y(trunc)),
        )
    }

    pub fn is_identity(&self) -> bool {
        let (d1, d2) = self.displacement();
        d1.is_zero() && d2.is_zero()
    }

    /// The order invariants `(ν₁, ν₂, ν, η)`. Errors on the identity map,
    /// for which none of them is defined.
    pub fn orders(&self) -> Result<Orders> {
        let (d1, d2) = self.displacement();
        let nu1 = d1.ord();
        let nu2 = d2.ord();
        let nu = match (nu1, nu2) {
            (Some(p), Some(q)) => p.min(q),
            (Some(p), None) => p,
            (None, Some(q)) => q,
            (None, None) => {
                return Err(Error::domain(
                    "orders",
                    "the identity map has no order invariants",
                ))
            }
        };
        let eta = match (nu1, nu2) {
            (Some(p), Some(q)) => Some(p.max(q)),
            _ => None,
        };
        Ok(Orders { nu1, nu2, nu, eta })
    }

    /// Composition `self ∘ rhs`, truncated at the common order.
    pub fn compose(&self, rhs: &TangentMap) -> Result<TangentMap> {
        let f1 = self.f1.substitute(&rhs.f1, &rhs.f2)?;
        let f2 = self.f2.substitute(&rhs.f1, &rhs.f2)?;
        TangentMap::new(f1, f2)
    }

    /// Conjugate by the variable swap: `σ ∘ f ∘ σ` with `σ(x,y) = (y,x)`.
    pub fn swap_vars(&self) -> TangentMap {
        TangentMap {
            f1: self.f2.swap_vars(),
            f2: self.f1.swap_vars(),
        }
    }

    pub fn eq_to_degree(&self, rhs: &TangentMap, d: usize) -> bool {
        self.f1.eq_to_degree(&rhs.f1, d) && self.f2.eq_to_degree(&rhs.f2, d)
    }

    pub fn render_with(&self, vx: &str, vy: &str) -> String {
        format!(
            "({}, {})",
            self.f1.render_with(vx, vy),
            self.f2.render_with(vx, vy)
        )
    }
}

impl std::fmt::Display for TangentMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render_with("x", "y"))
    }
}

/// Sum the Lie series `g + Σ_{n≥1} Xⁿ.g / n!` for `g = x` and `g = y`.
/// `max_n` is a proven termination bound; the loop normally exits earlier
/// when the iterate truncates to zero.
fn lie_series(x: &VectorField, max_n: usize) -> Result<(Series2, Series2)> {
    let trunc = x.trunc();
    let mut f1 = Series2::var_x(trunc);
    let mut f2 = Series2::var_y(trunc);
    let mut term1 = Series2::var_x(trunc);
    let mut term2 = Series2::var_y(trunc);
    let mut factorial = crate::scalar::Scalar::one();
    let mut n: usize = 0;
    loop {
        term1 = x.apply_derivation(&term1);
        term2 = x.apply_derivation(&term2);
        if term1.is_zero() && term2.is_zero() {
            // Numerically nothing to add, but an iterate that truncated to
            // zero carries an inexactness flag the sum must inherit.
            f1 = f1.add(&term1);
            f2 = f2.add(&term2);
            break;
        }
        n += 1;
        if n > max_n {
            return Err(Error::domain(
                "exp_flow",
                "the Lie series did not terminate within the proven bound",
            ));
        }
        factorial = &factorial * &crate::scalar::Scalar::from_int(n as i64);
        let inv = factorial.inv().expect("factorial is nonzero");
        f1 = f1.add(&term1.scale(&inv));
        f2 = f2.add(&term2.scale(&inv));
    }
    Ok((f1, f2))
}

/// The time-one flow of `X`, as a map tangent to the identity.
///
/// Requires `order(X) ≥ 2`: then `ord(Xⁿ.x) ≥ n(order−1)+1` grows without
/// bound and the Lie series is a finite sum at every jet order, so the
/// result is the exact time-one flow truncated at `N` — not an approximation.
/// The zero field maps to the identity.
pub fn exp_flow(x: &VectorField) -> Result<TangentMap> {
    match x.order() {
        None => return Ok(TangentMap::identity(x.trunc())),
        Some(0) => {
            return Err(Error::domain(
                "exp_flow",
                "the vector field does not vanish at the origin, so its time-one flow is not defined by the jet sum",
            ))
        }
        Some(1) => {
            return Err(Error::domain(
                "exp_flow",
                "exp(X) is not tangent to the identity because the vector field has linear part; the jet sum does not terminate",
            ))
        }
        Some(_) => {}
    }
    let (f1, f2) = lie_series(x, x.trunc() + 1)?;
    TangentMap::new(f1, f2)
}

/// Weighted-order variant used for fields living in a blow-up chart, where
/// tangency to the identity can fail in total degree yet the Lie series
/// still terminates. With weights `(wx, wy)` and the weighted order
/// `ord_w(Σ c·uⁱvʲ) = min(i·wx + j·wy)`, the series terminates whenever
/// `δ = min(ord_w(A) − wx, ord_w(B) − wy) ≥ 1`. Returns the raw component
/// pair: the result need not be tangent to the identity.
pub(crate) fn exp_flow_weighted(
    x: &VectorField,
    wx: usize,
    wy: usize,
) -> Result<(Series2, Series2)> {
    assert!(wx >= 1 && wy >= 1);
    if x.is_zero() {
        return Ok((Series2::var_x(x.trunc()), Series2::var_y(x.trunc())));
    }
    let wo = |s: &Series2| -> Option<usize> {
        s.iter().map(|(e, _)| e.i * wx + e.j * wy).min()
    };
    let da = wo(x.a()).map(|o| o as i64 - wx as i64);
    let db = wo(x.b()).map(|o| o as i64 - wy as i64);
    let delta = match (da, db) {
        (Some(p), Some(q)) => p.min(q),
        (Some(p), None) => p,
        (None, Some(q)) => q,
        (None, None) => unreachable!("nonzero field"),
    };
    if delta < 1 {
        return Err(Error::domain(
            "exp_flow",
            "the field does not raise the weighted order, so the jet sum does not terminate",
        ));
    }
    // A term of total degree ≤ N has weighted degree ≤ N·max(w); once
    // n·δ exceeds that, the iterate truncates to zero.
    let max_n = x.trunc() * wx.max(wy) + 1;
    lie_series(x, max_n)
}

/// The formal logarithm: the unique field `X` with `order(X) ≥ 2` whose
/// time-one flow is `f`, truncated at `N`.
///
/// Computed by correction iteration `X ← X + (f − exp(X))`: each pass fixes
/// at least one more jet degree (the discrepancy order strictly increases),
/// so at most `N` passes are needed. The identity maps to the zero field.
pub fn log_map(f: &TangentMap) -> Result<VectorField> {
    let trunc = f.trunc();
    let (d1, d2) = f.displacement();
    let mut x = VectorField::new(d1, d2);
    if x.is_zero() {
        return Ok(x);
    }
    for _ in 0..=trunc + 1 {
        let g = exp_flow(&x)?;
        let e1 = f.f1().sub(g.f1());
        let e2 = f.f2().sub(g.f2());
        if e1.is_zero() && e2.is_zero() {
            return Ok(x);
        }
        x = VectorField::new(x.a().add(&e1), x.b().add(&e2));
    }
    Err(Error::domain(
        "log_map",
        "the correction iteration did not stabilize within the proven bound",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::series::Series2;

    const N: usize = 12;

    fn s2(terms: &[(usize, usize, i64)]) -> Series2 {
        Series2::from_int_terms(N, terms)
    }

    fn field(a: &[(usize, usize, i64)], b: &[(usize, usize, i64)]) -> VectorField {
        VectorField::new(s2(a), s2(b))
    }

    #[test]
    fn derivation_examples() {
        // X=(x², y²) on x ↦ x²; on xy ↦ x²y + xy² (Leibniz)
        let x = field(&[(2, 0, 1)], &[(0, 2, 1)]);
        assert_eq!(x.apply_derivation(&s2(&[(1, 0, 1)])), s2(&[(2, 0, 1)]));
        assert_eq!(
            x.apply_derivation(&s2(&[(1, 1, 1)])),
            s2(&[(2, 1, 1), (1, 2, 1)])
        );
        // chart field (u², u(v²−v)) on v ↦ u(v²−v)
        let xb = field(&[(2, 0, 1)], &[(1, 2, 1), (1, 1, -1)]);
        assert_eq!(
            xb.apply_derivation(&s2(&[(0, 1, 1)])),
            s2(&[(1, 2, 1), (1, 1, -1)])
        );
    }

    #[test]
    fn exp_of_diagonal_field() {
        // x²∂x + y²∂y → (x + x² + … + x^N, y + y² + … + y^N)
        let x = field(&[(2, 0, 1)], &[(0, 2, 1)]);
        let f = exp_flow(&x).unwrap();
        let expect1: Vec<(usize, usize, i64)> = (1..=N).map(|k| (k, 0, 1)).collect();
        let expect2: Vec<(usize, usize, i64)> = (1..=N).map(|k| (0, k, 1)).collect();
        assert!(f.f1().eq_to_degree(&s2(&expect1), N));
        assert!(f.f2().eq_to_degree(&s2(&expect2), N));
        assert!(!f.f1().is_exact(), "the true flow continues past degree N");
    }

    #[test]
    fn exp_of_zero_and_nilpotent_fields() {
        assert!(exp_flow(&VectorField::zero(N)).unwrap().is_identity());
        // y²∂x: X².x = 0, so exp is exactly (x+y², y)
        let x = field(&[(0, 2, 1)], &[]);
        let f = exp_flow(&x).unwrap();
        assert_eq!(*f.f1(), s2(&[(1, 0, 1), (0, 2, 1)]));
        assert_eq!(*f.f2(), s2(&[(0, 1, 1)]));
        assert!(f.f1().is_exact());
    }

    #[test]
    fn exp_rejects_low_order() {
        let lin = field(&[(1, 0, 1)], &[(0, 2, -1), (0, 1, -1)]);
        let err = exp_flow(&lin).unwrap_err();
        assert!(err
            .to_string()
            .contains("not tangent to the identity because the vector field has linear part"));
        let nonvanishing = field(&[(0, 0, 1)], &[]);
        assert!(exp_flow(&nonvanishing)
            .unwrap_err()
            .to_string()
            .contains("does not vanish at the origin"));
    }

    #[test]
    fn exp_order_matches_field_order() {
        for x in [
            field(&[(2, 0, 1)], &[(1, 1, 1), (0, 2, 1)]),
            field(&[(0, 3, 2)], &[(2, 1, 5)]),
            field(&[(0, 2, 1)], &[]),
        ] {
            let f = exp_flow(&x).unwrap();
            assert_eq!(f.orders().unwrap().nu, x.order().unwrap());
        }
    }

    #[test]
    fn log_examples() {
        assert!(log_map(&TangentMap::identity(N)).unwrap().is_zero());
        let f = TangentMap::new(s2(&[(1, 0, 1), (0, 2, 1)]), s2(&[(0, 1, 1)])).unwrap();
        let x = log_map(&f).unwrap();
        assert_eq!(*x.a(), s2(&[(0, 2, 1)]));
        assert!(x.b().is_zero());
    }

    #[test]
    fn log_exp_round_trip() {
        let x = field(&[(2, 0, 1)], &[(1, 1, 1), (0, 2, 1)]);
        let back = log_map(&exp_flow(&x).unwrap()).unwrap();
        assert!(back.eq_to_degree(&x, N));
        // truncated flow of the diagonal field logs back to the field + nothing below N
        let xd = field(&[(2, 0, 1)], &[(0, 2, 1)]);
        let back = log_map(&exp_flow(&xd).unwrap()).unwrap();
        assert!(back.eq_to_degree(&xd, N));
    }

    #[test]
    fn orders_examples() {
        let f = TangentMap::new(s2(&[(1, 0, 1), (2, 0, 1)]), s2(&[(0, 1, 1), (0, 3, 1)]))
            .unwrap();
        let o = f.orders().unwrap();
        assert_eq!((o.nu1, o.nu2, o.nu, o.eta), (Some(2), Some(3), 2, Some(3)));
        let f = TangentMap::new(s2(&[(1, 0, 1), (5, 0, 1)]), s2(&[(0, 1, 1), (0, 2, 1)]))
            .unwrap();
        let o = f.orders().unwrap();
        assert_eq!((o.nu1, o.nu2, o.nu, o.eta), (Some(5), Some(2), 2, Some(5)));
        assert!(TangentMap::identity(N).orders().is_err());
    }

    #[test]
    fn tangent_map_rejects_nonidentity_linear_part() {
        let err = TangentMap::new(s2(&[(1, 0, 2)]), s2(&[(0, 1, 1)])).unwrap_err();
        assert!(err.to_string().contains("not tangent to the identity"));
        assert!(TangentMap::new(s2(&[(0, 1, 1)]), s2(&[(1, 0, 1)])).is_err());
    }

    #[test]
    fn tangent_cone_examples() {
        // (x², xy): cone cancels identically (dicritical)
        let x = field(&[(2, 0, 1)], &[(1, 1, 1)]);
        assert!(x.tangent_cone().unwrap().is_zero());
        // (x², y²): xy² − x²y
        let x = field(&[(2, 0, 1)], &[(0, 2, 1)]);
        assert_eq!(x.tangent_cone().unwrap(), s2(&[(1, 2, 1), (2, 1, -1)]));
        // (x², xy+y²): xy²
        let x = field(&[(2, 0, 1)], &[(1, 1, 1), (0, 2, 1)]);
        assert_eq!(x.tangent_cone().unwrap(), s2(&[(1, 2, 1)]));
        assert!(VectorField::zero(N).tangent_cone().is_err());
    }

    #[test]
    fn compose_is_flow_semigroup() {
        // exp(X) ∘ exp(X) agrees with the time-2 flow Σ 2ⁿXⁿ.g/n!
        let x = field(&[(2, 0, 1)], &[(1, 1, 1), (0, 2, 1)]);
        let f = exp_flow(&x).unwrap();
        let ff = f.compose(&f).unwrap();
        let mut g1 = Series2::var_x(N);
        let mut g2 = Series2::var_y(N);
        let mut t1 = Series2::var_x(N);
        let mut t2 = Series2::var_y(N);
        let mut fact = Scalar::one();
        for n in 1..=N + 1 {
            t1 = x.apply_derivation(&t1);
            t2 = x.apply_derivation(&t2);
            if t1.is_zero() && t2.is_zero() {
                break;
            }
            fact = &fact * &Scalar::from_int(n as i64);
            let c = Scalar::from_int(2).pow(n).div_exact(&fact).unwrap();
            g1 = g1.add(&t1.scale(&c));
            g2 = g2.add(&t2.scale(&c));
        }
        assert!(ff.f1().eq_to_degree(&g1, N));
        assert!(ff.f2().eq_to_degree(&g2, N));
    }

    #[test]
    fn weighted_exp_handles_low_total_order() {
        // U1 pullback of (y², x²): u²v²∂u + (u − uv³)∂v has total order 1
        // but weighted order (2,1) margin δ ≥ 1, so the sum terminates.
        let x = field(&[(2, 2, 1)], &[(1, 0, 1), (1, 3, -1)]);
        let (g1, g2) = exp_flow_weighted(&x, 2, 1).unwrap();
        assert_eq!(g1.coeff(2, 2), Scalar::one());
        assert_eq!(g2.coeff(1, 0), Scalar::one());
        // and plain exp_flow rejects it
        assert!(exp_flow(&x).is_err());
    }
}
