//! Separatrices of singular vector fields and the dynamics along them.
//!
//! A branch `y = φ(x)` is invariant for `X = A∂/∂x + B∂/∂y` exactly when
//! `B(x,φ) − φ′(x)·A(x,φ) ≡ 0`. The enumeration is Newton-polygon-seeded:
//! substituting `φ = c·x^{p/q} + ⋯` makes a `B`-term `x^i y^j` contribute
//! exponent `i + (p/q)j` and an `A`-term (through `φ′A`) behave like a term
//! at `(i−1, j+1)` with an extra factor `p/q`. The leading equation for each
//! candidate exponent is a polynomial `E(c)`; its nonzero roots seed deeper
//! levels through the same substitution used for curves, and `E ≡ 0` means
//! the coefficient is *free* — a one-parameter family of separatrices,
//! reported as such instead of a finite list.
//!
//! Along an invariant branch `x = z^q, y = φ(z)` the flow restricts to the
//! one-dimensional `ż = A(z^q, φ(z))/(q·z^{q−1})`; its order `h` is the
//! parabolic exponent, giving `h − 1` petals at the origin of the branch.

use crate::cpoly::{BPoly, UPoly};
use crate::error::{Error, Result};
use crate::puiseux::{
    assemble, dedup_conjugates, make_primitive, sort_branches, Orientation, PuiseuxBranch,
    RawBranch, Window,
};
use crate::roots::qi_roots;
use crate::scalar::Scalar;
use crate::series::{Series1, Series2};
use crate::vector_field::VectorField;
use num_rational::Rational64;
use num_traits::Signed;
use std::collections::{BTreeMap, BTreeSet};

/// The separatrices of a singular vector field.
#[derive(Debug, Clone)]
pub struct SeparatrixSet {
    /// Isolated invariant branches (axes included).
    pub isolated: Vec<PuiseuxBranch>,
    /// One-parameter family stems (`family_parameter` marks the free
    /// coefficient); disjoint from the isolated list.
    pub families: Vec<PuiseuxBranch>,
    pub includes_x_axis: bool,
    pub includes_y_axis: bool,
    pub warnings: Vec<String>,
}

impl SeparatrixSet {
    pub fn isolated_count(&self) -> usize {
        self.isolated.len()
    }
}

/// Parabolic data of the flow restricted to one invariant branch.
#[derive(Debug, Clone)]
pub struct PetalReport {
    pub branch: PuiseuxBranch,
    /// Order of the restricted flow `ż = z^h(a + ⋯)`, `a ≠ 0`.
    pub h: usize,
    /// Petals of the time-one map at the branch origin: `h − 1`.
    pub petal_count: usize,
    /// The coefficient `a` of `z^h` (scaled away by a linear change; kept
    /// for transparency).
    pub leading_coefficient: Scalar,
    /// The a-priori order estimate `max(ν₁,ν₂)·p` from the component
    /// orders and the branch exponent (axes count as `p = 1`).  Recorded for
    /// reference next to the enumerated candidate orders of
    /// [`exponent_candidates`]; degenerate coefficient configurations can
    /// push `h` above it.
    pub exponent_estimate: usize,
}

/// The a-priori bounds on separatrix exponents `k = p/q` from the component
/// orders: `k ≤ (ν₂−1)/(ν₁−1)`, `p ≤ ν₂−1`, `q ≤ ν₁−1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PqBounds {
    pub k_max: Rational64,
    pub p_max: usize,
    pub q_max: usize,
}

/// Exponent bounds for branches `y = x^{p/q}(c + ⋯)` of a field whose
/// components have orders `ν₁, ν₂ ≥ 2`.
pub fn pq_bounds(nu1: usize, nu2: usize) -> Result<PqBounds> {
    if nu1 < 2 || nu2 < 2 {
        return Err(Error::domain(
            "pq_bounds",
            "the exponent bounds need both component orders at least 2",
        ));
    }
    Ok(PqBounds {
        k_max: Rational64::new(nu2 as i64 - 1, nu1 as i64 - 1),
        p_max: nu2 - 1,
        q_max: nu1 - 1,
    })
}

/// The candidate orders `{q·i + p·j + 1 − j : i + j = ν₁}` of the restricted
/// flow along a branch with leading exponent `p/q`, and their maximum.
pub fn exponent_candidates(nu1: usize, p: usize, q: usize) -> Result<(BTreeSet<usize>, usize)> {
    use num_integer::Integer;
    if nu1 < 2 {
        return Err(Error::domain(
            "exponent_candidates",
            "the candidate formula needs component order at least 2",
        ));
    }
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(Error::domain(
            "exponent_candidates",
            "the exponent p/q must be a positive fraction in lowest terms",
        ));
    }
    if p < q {
        return Err(Error::domain(
            "exponent_candidates",
            "the exponent p/q must be at least 1; reorient the branch",
        ));
    }
    let set: BTreeSet<usize> = (0..=nu1).map(|j| q * (nu1 - j) + j * (p - 1) + 1).collect();
    let max = *set.iter().next_back().unwrap();
    Ok((set, max))
}

// ---------------------------------------------------------------------------
// leading-equation machinery
// ---------------------------------------------------------------------------

/// The exponent plot of the invariance equation: at each lattice point,
/// the mass contributed directly by `B` and the mass contributed by `A`
/// through the `φ′A` term (an `A`-term `x^i y^j` plots at `(i−1, j+1)`).
fn invariance_plot(a: &BPoly, b: &BPoly) -> BTreeMap<(i64, i64), (Scalar, Scalar)> {
    let mut plot: BTreeMap<(i64, i64), (Scalar, Scalar)> = BTreeMap::new();
    for (e, c) in b.iter() {
        let entry = plot
            .entry((e.i as i64, e.j as i64))
            .or_insert_with(|| (Scalar::zero(), Scalar::zero()));
        entry.0 = &entry.0 + c;
    }
    for (e, c) in a.iter() {
        let entry = plot
            .entry((e.i as i64 - 1, e.j as i64 + 1))
            .or_insert_with(|| (Scalar::zero(), Scalar::zero()));
        entry.1 = &entry.1 + c;
    }
    plot.retain(|_, (f, d)| !f.is_zero() || !d.is_zero());
    plot
}

/// Candidate leading exponents: inclinations of the plot's lower-left hull
/// edges, plus the ratio `f/d` at any point carrying both masses (there the
/// leading equation can vanish identically — the free-coefficient case).
fn candidate_exponents(
    plot: &BTreeMap<(i64, i64), (Scalar, Scalar)>,
    warnings: &mut BTreeSet<String>,
) -> BTreeSet<Rational64> {
    let mut cands: BTreeSet<Rational64> = BTreeSet::new();
    let pts: Vec<(i64, i64)> = plot.keys().copied().collect();
    if pts.is_empty() {
        return cands;
    }
    let hull = crate::newton::lower_left_hull(&pts);
    for w in hull.windows(2) {
        let incl = Rational64::new(w[1].0 - w[0].0, w[0].1 - w[1].1);
        if incl > Rational64::new(0, 1) {
            cands.insert(incl);
        }
    }
    for (f, d) in plot.values() {
        if f.is_zero() || d.is_zero() {
            continue;
        }
        let ratio = f.div_exact(d).expect("nonzero divisor");
        if !ratio.is_real() || !ratio.re().is_positive() {
            continue;
        }
        let to_i64 = |r: &num_bigint::BigInt| -> Option<i64> { i64::try_from(r).ok() };
        match (to_i64(ratio.re().numer()), to_i64(ratio.re().denom())) {
            (Some(n), Some(m)) => {
                cands.insert(Rational64::new(n, m));
            }
            _ => {
                warnings.insert(
                    "a candidate exponent ratio overflowed the working integer range and was skipped"
                        .to_string(),
                );
            }
        }
    }
    cands
}

/// The leading equation `E(c) = Σ c^j (f − μ·d)` over the plot points
/// minimizing `i + μ·j`.
fn leading_equation(
    plot: &BTreeMap<(i64, i64), (Scalar, Scalar)>,
    mu: Rational64,
) -> UPoly {
    let (p, q) = (*mu.numer(), *mu.denom());
    let weight = |&(i, j): &(i64, i64)| q * i + p * j;
    let min = plot.keys().map(weight).min().expect("nonempty plot");
    let mu_scalar = Scalar::from_ratio(p, q);
    let mut coeffs: Vec<Scalar> = Vec::new();
    for (pt, (f, d)) in plot.iter() {
        if weight(pt) != min {
            continue;
        }
        let j = pt.1 as usize;
        if coeffs.len() <= j {
            coeffs.resize(j + 1, Scalar::zero());
        }
        coeffs[j] = &coeffs[j] + &(f - &(&mu_scalar * d));
    }
    UPoly::from_coeffs(coeffs)
}

/// One level of the separatrix recursion on the invariance-equation pair.
/// The pair transforms under `x ↦ x^q, y ↦ x^p(c + y)` as
/// `A₁ = x^p·(A∘T)`, `B₁ = q·x^{q−1}·(B∘T) − p·x^{p−1}·(c+y)·(A∘T)`,
/// after which common `x`-content is dropped.
#[allow(clippy::too_many_arguments)]
fn ode_level(
    a: &BPoly,
    b: &BPoly,
    window: Window,
    q_cap: Option<usize>,
    budget: Rational64,
    levels_left: usize,
    warnings: &mut BTreeSet<String>,
) -> Vec<RawBranch> {
    let mut out: Vec<RawBranch> = Vec::new();
    if a.is_zero() && b.is_zero() {
        return out;
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let content = match (a.x_content(), b.x_content()) {
        (Some(ma), Some(mb)) => ma.min(mb),
        (Some(m), None) | (None, Some(m)) => m,
        (None, None) => 0,
    };
    if content > 0 {
        if !a.is_zero() {
            a = a.divide_x_pow(content);
        }
        if !b.is_zero() {
            b = b.divide_x_pow(content);
        }
    }
    // One joint rescaling per level keeps coefficient growth in check; the
    // invariance locus only sees the pair up to a common nonzero constant.
    let (a, b) = BPoly::normalize_pair_content(&a, &b);
    // φ ≡ 0 ends the expansion exactly when it solves the equation; at the
    // top level this is the axis, handled by divisibility outside.
    let zero_tail_ok =
        matches!(window, Window::AllPositive) && b.eval_y0().is_zero();
    if levels_left == 0 {
        warnings.insert(
            "separatrix expansion stopped at the recursion limit before all branches separated"
                .to_string(),
        );
        if zero_tail_ok {
            out.push(RawBranch {
                q: 1,
                phi: Series1::zero(),
                family: None,
            });
        }
        return out;
    }
    let plot = invariance_plot(&a, &b);
    let mut level_has_family = false;
    for mu in candidate_exponents(&plot, warnings) {
        if !window.admits(mu) {
            continue;
        }
        let (p, q) = (*mu.numer() as usize, *mu.denom() as usize);
        let equation = leading_equation(&plot, mu);
        if equation.is_zero() {
            // Free coefficient at exponent p/q: a one-parameter family.
            level_has_family = true;
            out.push(RawBranch {
                q,
                phi: Series1::jet_from_terms(p, &[]),
                family: Some(p),
            });
            continue;
        }
        if let Some(cap) = q_cap {
            if q > cap {
                warnings.insert(format!(
                    "candidate exponents with ramification above the bound {} from the component orders were dropped",
                    cap
                ));
                continue;
            }
        }
        let stripped = equation
            .divide_z_pow(equation.ord().unwrap_or(0))
            .expect("order strip");
        if stripped.deg() == Some(0) {
            continue; // no nonzero roots
        }
        let report = qi_roots(&stripped);
        if report.nonlinear_factor_remaining {
            warnings.insert(
                "a leading equation has roots outside Q(i); those separatrices need a field extension and are not expanded"
                    .to_string(),
            );
        }
        if report.search_truncated {
            warnings.insert(
                "root search exceeded its factorization budget; some separatrix directions may be missing"
                    .to_string(),
            );
        }
        for (c, _mult) in report.roots.iter() {
            let child_budget = budget * Rational64::from_integer(q as i64)
                - Rational64::from_integer(p as i64);
            if child_budget <= Rational64::new(0, 1) {
                out.push(RawBranch {
                    q,
                    phi: Series1::jet_from_terms(p, &[(p, c.clone())]),
                    family: None,
                });
                continue;
            }
            let at = a.transform(q, p, c);
            let bt = b.transform(q, p, c);
            let c_plus_y = BPoly::monomial(c.clone(), 0, 0).add(&BPoly::monomial(
                Scalar::one(),
                0,
                1,
            ));
            let a1 = at.mul_monomial(&Scalar::one(), p, 0);
            let b1 = bt
                .mul_monomial(&Scalar::from_int(q as i64), q - 1, 0)
                .sub(&c_plus_y.mul(&at).mul_monomial(&Scalar::from_int(p as i64), p - 1, 0));
            let children = ode_level(
                &a1,
                &b1,
                Window::AllPositive,
                None,
                child_budget,
                levels_left - 1,
                warnings,
            );
            for ch in children {
                out.push(assemble(q, p, c, ch));
            }
        }
    }
    // The exact termination φ ≡ 0 is the c = 0 member of any family found
    // at this level; only report it when no family subsumes it.
    if zero_tail_ok && !level_has_family {
        out.push(RawBranch {
            q: 1,
            phi: Series1::zero(),
            family: None,
        });
    }
    out
}

/// Ramification cap for the top-level search, from the a-priori exponent
/// bounds when they apply, and a conservative fallback otherwise.
fn top_q_cap(a_ord: Option<usize>, b_ord: Option<usize>) -> usize {
    match (a_ord, b_ord) {
        (Some(n1), Some(n2)) if n1 >= 2 && n2 >= 2 => n1 - 1,
        _ => a_ord.unwrap_or(0) + b_ord.unwrap_or(0) + 1,
    }
}

/// Enumerate the separatrices of `X` with branch coefficients determined to
/// `z`-order `depth`. Axes are tested by exact divisibility; other branches
/// by the Newton-polygon recursion in both orientations. A level whose
/// leading equation vanishes identically yields a family, not an isolated
/// branch.
pub fn separatrices(x: &VectorField, depth: usize) -> Result<SeparatrixSet> {
    if x.is_zero() {
        return Err(Error::domain(
            "separatrices",
            "the zero field has no well-defined separatrices",
        ));
    }
    if x.order() == Some(0) {
        return Err(Error::domain(
            "separatrices",
            "the field must be singular at the origin (order at least 1)",
        ));
    }
    let a = BPoly::from_series2(x.a());
    let b = BPoly::from_series2(x.b());
    let mut warnings: BTreeSet<String> = BTreeSet::new();
    let mut isolated: Vec<PuiseuxBranch> = Vec::new();
    let mut families: Vec<PuiseuxBranch> = Vec::new();
    // Axes: {x=0} is invariant iff x | A, {y=0} iff y | B.
    let includes_x_axis = x.a().is_zero() || x.a().x_multiplicity().unwrap_or(0) >= 1;
    let includes_y_axis = x.b().is_zero() || x.b().y_multiplicity().unwrap_or(0) >= 1;
    if includes_x_axis {
        isolated.push(PuiseuxBranch::axis_x());
    }
    if includes_y_axis {
        isolated.push(PuiseuxBranch::axis_y());
    }
    let budget = Rational64::from_integer(depth.max(1) as i64);
    let levels = depth + 8;
    for (window, orientation, pa, pb) in [
        (Window::AtLeastOne, Orientation::YofX, a.clone(), b.clone()),
        (
            Window::AboveOne,
            Orientation::XofY,
            b.swap_vars(),
            a.swap_vars(),
        ),
    ] {
        let cap = top_q_cap(pa.ord(), pb.ord());
        let raws = ode_level(&pa, &pb, window, Some(cap), budget, levels, &mut warnings);
        let raws: Vec<RawBranch> = raws.into_iter().map(make_primitive).collect();
        for raw in dedup_conjugates(raws) {
            let branch = PuiseuxBranch {
                orientation,
                q: raw.q,
                p: raw.phi.ord().unwrap_or(0),
                phi: raw.phi,
                family_parameter: raw.family,
            };
            if branch.is_family() {
                families.push(branch);
            } else {
                isolated.push(branch);
            }
        }
    }
    sort_branches(&mut isolated);
    sort_branches(&mut families);
    Ok(SeparatrixSet {
        isolated,
        families,
        includes_x_axis,
        includes_y_axis,
        warnings: warnings.into_iter().collect(),
    })
}

/// Restriction data `(A∘par, B∘par, φ′)` in the branch's own orientation.
fn restriction_parts(x: &VectorField, br: &PuiseuxBranch) -> Result<(Series1, Series1)> {
    let (ca, cb) = match br.orientation {
        Orientation::YofX => (x.a().clone(), x.b().clone()),
        Orientation::XofY => (x.b().swap_vars(), x.a().swap_vars()),
    };
    let apar = ca.ramified_restrict(&br.phi, br.q)?;
    let bpar = cb.ramified_restrict(&br.phi, br.q)?;
    Ok((apar, bpar))
}

/// The invariance residual `B(z^q, φ) − φ′(z)·A(z^q, φ)/(q·z^{q−1})`,
/// truncated to the requested order. It vanishes exactly when the branch is
/// invariant to that order. (For an `x_of_y` branch the roles of `A` and
/// `B` swap.)
pub fn invariance_residual(
    x: &VectorField,
    br: &PuiseuxBranch,
    order: usize,
) -> Result<Series1> {
    let (apar, bpar) = restriction_parts(x, br)?;
    let phi_prime = br.phi.derivative();
    let numerator = bpar
        .mul_z_pow(br.q - 1)
        .scale(&Scalar::from_int(br.q as i64))
        .sub(&phi_prime.mul(&apar));
    let residual = match numerator.divide_z(br.q - 1) {
        Ok(r) => r.scale(&Scalar::from_ratio(1, br.q as i64)),
        // Not divisible: the branch is far from invariant; the undivided
        // numerator is still zero iff the residual is.
        Err(_) => numerator,
    };
    Ok(residual.truncate_to(order))
}

/// The order up to which a branch's data can certify anything: unbounded
/// for exact expansions, else the jet order.
fn certified_order(br: &PuiseuxBranch) -> usize {
    if br.phi.is_exact() {
        usize::MAX / 2
    } else {
        br.phi.trunc()
    }
}

/// Rectify coordinates along an unramified invariant branch: in
/// `u = x, v = y − φ(x)` the field becomes
/// `u̇ = A(u, v+φ(u))`, `v̇ = B(u, v+φ(u)) − φ′(u)·A(u, v+φ(u))`,
/// and `{v = 0}` is invariant (`v` divides the second component). For an
/// `x_of_y` branch the same construction runs with the variables swapped,
/// so `u` is the branch's independent variable.
pub fn rectify(x: &VectorField, br: &PuiseuxBranch) -> Result<VectorField> {
    if br.is_family() {
        return Err(Error::domain(
            "rectify",
            "a family stem does not determine a single branch to rectify along",
        ));
    }
    if br.q != 1 {
        return Err(Error::domain(
            "rectify",
            "rectification needs an unramified branch (q = 1); ramified branches are handled through the restricted flow",
        ));
    }
    let check_to = certified_order(br).min(x.trunc());
    let residual = invariance_residual(x, br, check_to)?;
    if !residual.is_zero() {
        return Err(Error::domain(
            "rectify",
            format!(
                "the branch is not invariant: residual {}",
                residual.render_with("z")
            ),
        ));
    }
    let host = match br.orientation {
        Orientation::YofX => x.clone(),
        Orientation::XofY => x.swap_vars(),
    };
    let n = x.trunc();
    let terms: Vec<(usize, usize, Scalar)> =
        br.phi.iter().map(|(k, c)| (*k, 0usize, c.clone())).collect();
    let mut phi2 = Series2::from_terms(n, &terms);
    if !br.phi.is_exact() {
        phi2 = phi2.with_exactness(false);
    }
    let sy = Series2::var_y(n).add(&phi2);
    let sx = Series2::var_x(n);
    let a_sub = host.a().substitute(&sx, &sy)?;
    let b_sub = host.b().substitute(&sx, &sy)?;
    let v_dot = b_sub.sub(&phi2.derivative_x().mul(&a_sub));
    Ok(VectorField::new(a_sub, v_dot))
}

/// The parabolic exponent of the flow restricted to an invariant branch:
/// `ż = A(z^q, φ(z))/(q·z^{q−1})` has order `h ≥ 2` and the time-one map
/// `z ↦ z + a·z^h + ⋯` has `h − 1` petals.
pub fn restricted_exponent(x: &VectorField, br: &PuiseuxBranch) -> Result<PetalReport> {
    if br.is_family() {
        return Err(Error::domain(
            "restricted_exponent",
            "a family stem has no single restricted dynamics; pick a member",
        ));
    }
    let check_to = certified_order(br).min(x.trunc());
    let residual = invariance_residual(x, br, check_to)?;
    if !residual.is_zero() {
        return Err(Error::domain(
            "restricted_exponent",
            format!(
                "the branch is not invariant: residual {}",
                residual.render_with("z")
            ),
        ));
    }
    let (apar, _) = restriction_parts(x, br)?;
    let flow = apar
        .divide_z(br.q - 1)
        .map_err(|_| {
            Error::domain(
                "restricted_exponent",
                "the restricted flow is not divisible by z^{q-1}; the branch data are inconsistent",
            )
        })?
        .scale(&Scalar::from_ratio(1, br.q as i64));
    if flow.is_zero() {
        return Err(Error::domain(
            "restricted_exponent",
            "the restricted flow vanishes to the computed order: the branch consists of singular points",
        ));
    }
    let h = flow.ord().unwrap();
    if h < 2 {
        return Err(Error::domain(
            "restricted_exponent",
            "the restricted flow has a linear part; the branch dynamics are not parabolic",
        ));
    }
    let (n1, n2) = x.component_orders();
    let nu_max = n1.unwrap_or(0).max(n2.unwrap_or(0));
    Ok(PetalReport {
        branch: br.clone(),
        h,
        petal_count: h - 1,
        leading_coefficient: flow.coeff(h),
        exponent_estimate: nu_max * br.p.max(1),
    })
}
