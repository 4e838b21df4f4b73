//! Puiseux branches of plane curve germs.
//!
//! A branch of `{F = 0}` through the origin is written `y = φ(z)` with
//! `x = z^q` (orientation `y_of_x`) or symmetrically `x = ψ(z)`, `y = z^q`.
//! Branches are found by the classical Newton-polygon iteration: each edge
//! of inclination `p/q` contributes leading terms `c·x^{p/q}` for the
//! nonzero roots `c` of the edge polynomial, and the substitution
//! `x ↦ x^q`, `y ↦ x^p(c + y)` moves the analysis one level deeper. Smooth
//! continuations (unit `∂/∂y` coefficient) are solved coefficient by
//! coefficient instead of recursing.
//!
//! Orientation windows avoid double counting: the `y_of_x` pass takes
//! leading exponents `p/q ≥ 1`, the `x_of_y` pass only `> 1` (an exponent
//! `< 1` in one orientation is `> 1` in the other).

use crate::cpoly::{BPoly, UPoly};
use crate::error::{Error, Result};
use crate::newton::lower_left_hull;
use crate::roots::qi_roots;
use crate::scalar::Scalar;
use crate::series::{Series1, Series2};
use num_integer::Integer;
use num_rational::Rational64;
use std::collections::BTreeSet;

/// Which variable the branch expresses in terms of the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Orientation {
    /// `y = φ(z)` with `x = z^q`.
    YofX,
    /// `x = φ(z)` with `y = z^q`.
    XofY,
}

impl Orientation {
    /// The dependent/independent variable names `(dep, indep)`.
    pub fn variables(&self) -> (&'static str, &'static str) {
        match self {
            Orientation::YofX => ("y", "x"),
            Orientation::XofY => ("x", "y"),
        }
    }
}

/// One Puiseux branch (or a one-parameter family stem).
///
/// Invariants: `phi` has order `p` in `z` (with `p = 0` and `phi ≡ 0` for a
/// coordinate axis); the parametrization is primitive (the exponents of
/// `phi` and `q` have no common factor); the leading exponent `p/q` is `≥ 1`
/// in the chosen orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxBranch {
    pub orientation: Orientation,
    /// Ramification: the independent variable is `z^q`.
    pub q: usize,
    /// Order of `phi` in `z` (0 for an axis branch or a family free from
    /// its first coefficient).
    pub p: usize,
    /// The dependent variable as a series in `z`.
    pub phi: Series1,
    /// For a family stem: the `z`-exponent at which the expansion admits a
    /// free coefficient.
    pub family_parameter: Option<usize>,
}

impl PuiseuxBranch {
    /// The axis `{x = 0}`.
    pub fn axis_x() -> Self {
        PuiseuxBranch {
            orientation: Orientation::XofY,
            q: 1,
            p: 0,
            phi: Series1::zero(),
            family_parameter: None,
        }
    }

    /// The axis `{y = 0}`.
    pub fn axis_y() -> Self {
        PuiseuxBranch {
            orientation: Orientation::YofX,
            q: 1,
            p: 0,
            phi: Series1::zero(),
            family_parameter: None,
        }
    }

    pub fn is_axis(&self) -> bool {
        self.p == 0 && self.phi.is_zero() && self.family_parameter.is_none()
    }

    pub fn is_family(&self) -> bool {
        self.family_parameter.is_some()
    }

    /// Leading exponent `p/q` of the expansion; `None` for an axis or for a
    /// family whose first coefficient is already free.
    pub fn leading_exponent(&self) -> Option<Rational64> {
        if self.p == 0 {
            None
        } else {
            Some(Rational64::new(self.p as i64, self.q as i64))
        }
    }

    /// Human-readable equation/parametrization.
    pub fn describe(&self) -> String {
        let (dep, indep) = self.orientation.variables();
        if self.is_axis() {
            // The parametrization is dep = φ(indep) with φ ≡ 0.
            return format!("{dep} = 0");
        }
        let free = |k: usize| {
            let mono = match k {
                0 => "c".to_string(),
                1 => "c*z".to_string(),
                _ => format!("c*z^{k}"),
            };
            format!(" + {mono} + ...")
        };
        if self.q == 1 {
            let mut s = format!("{dep} = {}", self.phi.render_with(indep));
            if let Some(k) = self.family_parameter {
                s.push_str(&free(k).replace('z', indep));
            }
            s
        } else {
            let mut s = format!(
                "{indep} = z^{}, {dep} = {}",
                self.q,
                self.phi.render_with("z")
            );
            if let Some(k) = self.family_parameter {
                s.push_str(&free(k));
            }
            s
        }
    }
}

impl std::fmt::Display for PuiseuxBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Branches of a curve germ, plus anything the enumeration had to report.
#[derive(Debug, Clone)]
pub struct BranchSet {
    pub branches: Vec<PuiseuxBranch>,
    pub warnings: Vec<String>,
}

// ---------------------------------------------------------------------------
// the level engine (shared with the separatrix enumeration)
// ---------------------------------------------------------------------------

/// A branch as produced by one enumeration pass, before orientation and
/// primitivity bookkeeping.
#[derive(Debug, Clone)]
pub(crate) struct RawBranch {
    pub(crate) q: usize,
    pub(crate) phi: Series1,
    pub(crate) family: Option<usize>,
}

/// Leading-exponent windows for an enumeration pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Window {
    /// Top-level primary orientation: exponents ≥ 1.
    AtLeastOne,
    /// Top-level swapped orientation: exponents > 1.
    AboveOne,
    /// Recursion levels: any positive exponent.
    AllPositive,
}

impl Window {
    pub(crate) fn admits(&self, incl: Rational64) -> bool {
        match self {
            Window::AtLeastOne => incl >= Rational64::new(1, 1),
            Window::AboveOne => incl > Rational64::new(1, 1),
            Window::AllPositive => incl > Rational64::new(0, 1),
        }
    }
}

/// Combine a level's data `(q, p, c)` with a branch of the transformed germ:
/// the parametrization one level up is `z ↦ z^{p·q₁}(c + φ₁(z))` with total
/// ramification `q·q₁`.
pub(crate) fn assemble(q: usize, p: usize, c: &Scalar, child: RawBranch) -> RawBranch {
    let prefix = Series1::monomial(c.clone(), 0).add(&child.phi);
    RawBranch {
        q: q * child.q,
        phi: prefix.mul_z_pow(p * child.q),
        family: child.family.map(|k| k + p * child.q),
    }
}

/// Reduce a parametrization to primitive form: if `q` and every exponent of
/// `phi` (and the family index) share a factor `g`, the same branch is
/// traced by `z ↦ z^{1/g}`.
pub(crate) fn make_primitive(br: RawBranch) -> RawBranch {
    let mut g = br.q;
    for (k, _) in br.phi.iter() {
        g = g.gcd(k);
    }
    if let Some(k) = br.family {
        g = g.gcd(&k);
    }
    if g <= 1 {
        return br;
    }
    let terms: Vec<(usize, Scalar)> = br.phi.iter().map(|(k, c)| (k / g, c.clone())).collect();
    let phi = if br.phi.is_exact() {
        Series1::from_terms(&terms)
    } else {
        Series1::jet_from_terms(br.phi.trunc() / g, &terms)
    };
    RawBranch {
        q: br.q / g,
        phi,
        family: br.family.map(|k| k / g),
    }
}

/// The roots of unity of order dividing `q` that exist in ℚ(i).
pub(crate) fn units_of_order(q: usize) -> Vec<Scalar> {
    let mut units = vec![Scalar::one()];
    if q % 2 == 0 {
        units.push(-Scalar::one());
    }
    if q % 4 == 0 {
        units.push(Scalar::i());
        units.push(-Scalar::i());
    }
    units
}

fn series_agree(a: &Series1, b: &Series1) -> bool {
    let da = if a.is_exact() {
        a.degree().unwrap_or(0)
    } else {
        a.trunc()
    };
    let db = if b.is_exact() {
        b.degree().unwrap_or(0)
    } else {
        b.trunc()
    };
    a.eq_to_degree(b, da.min(db))
}

/// Drop branches that are reparametrizations `z ↦ ζz` (with `ζ^q = 1`) of an
/// earlier one — conjugate expansions of the same ramified branch.
pub(crate) fn dedup_conjugates(mut raws: Vec<RawBranch>) -> Vec<RawBranch> {
    // Sort so that a representative with a positive real leading
    // coefficient is kept when a conjugate class collapses.
    let lead_rank = |br: &RawBranch| -> u8 {
        match br.phi.ord() {
            Some(k) => {
                let c = br.phi.coeff(k);
                let re = c.re().clone();
                if c.is_real() && re > num_rational::BigRational::from_integer(0.into()) {
                    0
                } else {
                    1
                }
            }
            None => 0,
        }
    };
    raws.sort_by(|a, b| {
        (a.q, a.phi.ord().unwrap_or(0), lead_rank(a))
            .cmp(&(b.q, b.phi.ord().unwrap_or(0), lead_rank(b)))
            .then_with(|| a.phi.render_with("z").cmp(&b.phi.render_with("z")))
    });
    let mut kept: Vec<RawBranch> = Vec::new();
    'next: for cand in raws {
        for prev in kept.iter() {
            if prev.q != cand.q || prev.family != cand.family {
                continue;
            }
            for zeta in units_of_order(cand.q) {
                if series_agree(&prev.phi.scale_var(&zeta), &cand.phi) {
                    continue 'next;
                }
            }
        }
        kept.push(cand);
    }
    kept
}

/// Support points of `g` lying on the closed segment between two hull
/// vertices, with their coefficients, as a polynomial in the edge root `c`
/// (exponent = the `j` coordinate).
pub(crate) fn edge_polynomial(g: &BPoly, from: (i64, i64), to: (i64, i64)) -> UPoly {
    let mut coeffs: Vec<Scalar> = Vec::new();
    for (e, coef) in g.iter() {
        let (i, j) = (e.i as i64, e.j as i64);
        let on_line = (to.0 - from.0) * (j - from.1) - (to.1 - from.1) * (i - from.0) == 0;
        if on_line && i >= from.0 && i <= to.0 {
            if coeffs.len() <= e.j {
                coeffs.resize(e.j + 1, Scalar::zero());
            }
            coeffs[e.j] = coef.clone();
        }
    }
    UPoly::from_coeffs(coeffs)
}

/// Solve the unique smooth continuation through a germ with unit linear
/// coefficient in `y` (`u = ∂g/∂y(0,0) ≠ 0`), one coefficient per residual
/// order, up to `x`-exponent `budget`.
fn tail_solve(g: &BPoly, u: &Scalar, budget: usize) -> RawBranch {
    let z = Series1::var();
    let mut tau = Series1::zero();
    loop {
        let residual = g.eval_series(&z, &tau);
        if residual.is_zero() {
            return RawBranch {
                q: 1,
                phi: tau,
                family: None,
            };
        }
        let m = residual.ord().unwrap();
        if m > budget {
            let terms: Vec<(usize, Scalar)> = tau.iter().map(|(k, c)| (*k, c.clone())).collect();
            return RawBranch {
                q: 1,
                phi: Series1::jet_from_terms(budget, &terms),
                family: None,
            };
        }
        let delta = -residual.coeff(m).div_exact(u).expect("unit coefficient");
        tau = tau.add(&Series1::monomial(delta, m));
    }
}

/// Enumerate the branches of the curve germ `g` at one recursion level.
/// `budget` is the exponent range still wanted in the current independent
/// variable; it rescales across ramified levels.
fn curve_level(
    g: &BPoly,
    window: Window,
    budget: Rational64,
    levels_left: usize,
    warnings: &mut BTreeSet<String>,
) -> Vec<RawBranch> {
    let mut out: Vec<RawBranch> = Vec::new();
    if g.is_zero() {
        return out;
    }
    let mut g = g.clone();
    if let Some(a) = g.x_content() {
        if a > 0 {
            g = g.divide_x_pow(a);
        }
    }
    // A dependent-variable factor is the exactly-terminating branch φ = 0.
    if let Some(k) = g.y_content() {
        if k > 0 {
            out.push(RawBranch {
                q: 1,
                phi: Series1::zero(),
                family: None,
            });
            g = g.divide_y_pow(k);
        }
    }
    if g.is_zero() || !g.constant_term().is_zero() {
        return out;
    }
    if levels_left == 0 {
        warnings.insert(
            "branch enumeration stopped at the recursion limit before all branches separated"
                .to_string(),
        );
        return out;
    }
    // Smooth continuation: solve directly instead of recursing.
    let u = g
        .iter()
        .find(|(e, _)| e.i == 0 && e.j == 1)
        .map(|(_, c)| c.clone());
    if let Some(u) = u {
        let floor = budget.floor().to_integer().max(1) as usize;
        let br = tail_solve(&g, &u, floor);
        let incl = Rational64::new(br.phi.ord().unwrap_or(usize::MAX.min(1 << 30)) as i64, 1);
        if window.admits(incl) {
            out.push(br);
        }
        return out;
    }
    let pts: Vec<(i64, i64)> = g.iter().map(|(e, _)| (e.i as i64, e.j as i64)).collect();
    let hull = lower_left_hull(&pts);
    for w in hull.windows(2) {
        let (from, to) = (w[0], w[1]);
        let incl = Rational64::new(to.0 - from.0, from.1 - to.1);
        if !window.admits(incl) {
            continue;
        }
        let p = *incl.numer() as usize;
        let q = *incl.denom() as usize;
        let epoly = edge_polynomial(&g, from, to);
        let stripped = epoly
            .divide_z_pow(epoly.ord().unwrap_or(0))
            .expect("order strip");
        let report = qi_roots(&stripped);
        if report.nonlinear_factor_remaining {
            warnings.insert(
                "an edge polynomial has roots outside Q(i); those branches need a field extension and are not expanded"
                    .to_string(),
            );
        }
        if report.search_truncated {
            warnings.insert(
                "root search exceeded its factorization budget; some branch directions may be missing"
                    .to_string(),
            );
        }
        for (c, _mult) in report.roots.iter() {
            let child_budget = budget * Rational64::from_integer(q as i64)
                - Rational64::from_integer(p as i64);
            if child_budget <= Rational64::new(0, 1) {
                // The wanted range ends inside this term: report the
                // leading coefficient as a jet.
                out.push(RawBranch {
                    q,
                    phi: Series1::jet_from_terms(p, &[(p, c.clone())]),
                    family: None,
                });
                continue;
            }
            let g1 = g.transform(q, p, c);
            let children = curve_level(&g1, Window::AllPositive, child_budget, levels_left - 1, warnings);
            for ch in children {
                out.push(assemble(q, p, c, ch));
            }
        }
    }
    out
}

/// All Puiseux branches of `{F = 0}` through the origin, coefficients
/// determined up to `z`-order `depth` (or exactly, when a branch
/// terminates). Conjugate parametrizations are reported once.
pub fn puiseux_branches(f: &Series2, depth: usize) -> Result<BranchSet> {
    if f.is_zero() {
        return Err(Error::domain(
            "puiseux_branches",
            "the zero series does not define a curve",
        ));
    }
    if !f.coeff(0, 0).is_zero() {
        return Err(Error::domain(
            "puiseux_branches",
            "the curve does not pass through the origin",
        ));
    }
    if !f.is_exact() && depth > f.trunc() {
        return Err(Error::domain(
            "puiseux_branches",
            format!(
                "depth {depth} exceeds what the truncation order {} of an inexact input supports",
                f.trunc()
            ),
        ));
    }
    let mut warnings: BTreeSet<String> = BTreeSet::new();
    let mut branches: Vec<PuiseuxBranch> = Vec::new();
    let mut g = BPoly::from_series2(f);
    if let Some(a) = g.x_content() {
        if a > 0 {
            branches.push(PuiseuxBranch::axis_x());
            g = g.divide_x_pow(a);
        }
    }
    if let Some(b) = g.y_content() {
        if b > 0 {
            branches.push(PuiseuxBranch::axis_y());
            g = g.divide_y_pow(b);
        }
    }
    let budget = Rational64::from_integer(depth.max(1) as i64);
    let levels = depth + 8;
    if !g.is_zero() && g.constant_term().is_zero() {
        for (window, orientation, germ) in [
            (Window::AtLeastOne, Orientation::YofX, g.clone()),
            (Window::AboveOne, Orientation::XofY, g.swap_vars()),
        ] {
            let raws = curve_level(&germ, window, budget, levels, &mut warnings);
            let raws: Vec<RawBranch> = raws.into_iter().map(make_primitive).collect();
            for raw in dedup_conjugates(raws) {
                // φ ≡ 0 at top level would duplicate an axis already found
                // by content division.
                if raw.phi.is_zero() && raw.family.is_none() {
                    continue;
                }
                branches.push(PuiseuxBranch {
                    orientation,
                    q: raw.q,
                    p: raw.phi.ord().unwrap_or(0),
                    phi: raw.phi,
                    family_parameter: raw.family,
                });
            }
        }
    }
    sort_branches(&mut branches);
    Ok(BranchSet {
        branches,
        warnings: warnings.into_iter().collect(),
    })
}

/// Deterministic presentation order: axes first, then by orientation,
/// leading exponent, ramification, and rendered expansion.
pub(crate) fn sort_branches(branches: &mut [PuiseuxBranch]) {
    branches.sort_by(|a, b| {
        let key = |br: &PuiseuxBranch| {
            (
                !br.is_axis(),
                br.orientation,
                br.leading_exponent().unwrap_or_else(|| Rational64::new(0, 1)),
                br.q,
                br.phi.render_with("z"),
            )
        };
        key(a).cmp(&key(b))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Series2;

    const N: usize = 12;

    fn s2(terms: &[(usize, usize, i64)]) -> Series2 {
        Series2::from_int_terms(N, terms)
    }

    /// Substitute the parametrization back into the defining series; the
    /// independent oracle for every enumeration test.
    fn residual(f: &Series2, br: &PuiseuxBranch) -> Series1 {
        let host = match br.orientation {
            Orientation::YofX => f.clone(),
            Orientation::XofY => f.swap_vars(),
        };
        if br.is_axis() {
            return host.ramified_restrict(&Series1::zero(), 1).unwrap();
        }
        host.ramified_restrict(&br.phi, br.q).unwrap()
    }

    #[test]
    fn cusp_single_ramified_branch() {
        let f = s2(&[(0, 2, 1), (3, 0, -1)]); // y² − x³
        let set = puiseux_branches(&f, 10).unwrap();
        assert_eq!(set.branches.len(), 1);
        let br = &set.branches[0];
        assert_eq!(br.orientation, Orientation::YofX);
        assert_eq!((br.q, br.p), (2, 3));
        assert_eq!(br.phi, Series1::from_int_terms(&[(3, 1)]));
        assert!(br.phi.is_exact());
        assert!(residual(&f, br).is_zero());
        assert!(set.warnings.is_empty());
    }

    #[test]
    fn axis_and_parabola() {
        let f = s2(&[(0, 1, 1)]).mul(&s2(&[(0, 1, 1), (2, 0, -1)])); // y(y−x²)
        let set = puiseux_branches(&f, 10).unwrap();
        assert_eq!(set.branches.len(), 2);
        assert!(set.branches[0].is_axis());
        assert_eq!(set.branches[0].orientation, Orientation::YofX);
        let br = &set.branches[1];
        assert_eq!((br.q, br.p), (1, 2));
        assert_eq!(br.phi, Series1::from_int_terms(&[(2, 1)]));
        for b in &set.branches {
            assert!(residual(&f, b).is_zero());
        }
    }

    #[test]
    fn two_transverse_lines() {
        let f = s2(&[(0, 2, 1), (2, 0, -1)]); // y² − x²
        let set = puiseux_branches(&f, 10).unwrap();
        assert_eq!(set.branches.len(), 2);
        let phis: Vec<String> = set
            .branches
            .iter()
            .map(|b| b.phi.render_with("x"))
            .collect();
        assert_eq!(phis, vec!["-x", "x"]);
        for b in &set.branches {
            assert_eq!((b.q, b.p), (1, 1));
            assert!(residual(&f, b).is_zero());
        }
    }

    #[test]
    fn infinite_tail_is_a_sound_jet() {
        // y² − x² + x⁴ = 0: y = ±x·sqrt(1−x²) = ±(x − x³/2 − x⁵/8 − …)
        let f = s2(&[(0, 2, 1), (2, 0, -1), (4, 0, 1)]);
        let set = puiseux_branches(&f, 9).unwrap();
        assert_eq!(set.branches.len(), 2);
        for b in &set.branches {
            assert!(!b.phi.is_exact());
            assert!(b.phi.trunc() >= 9);
            let r = residual(&f, b);
            assert!(r.is_zero(), "residual {} should vanish", r.render_with("z"));
        }
        let plus = set
            .branches
            .iter()
            .find(|b| b.phi.coeff(1) == Scalar::one())
            .unwrap();
        assert_eq!(plus.phi.coeff(3), Scalar::from_ratio(-1, 2));
        assert_eq!(plus.phi.coeff(5), Scalar::from_ratio(-1, 8));
    }

    #[test]
    fn swapped_orientation_branch() {
        let f = s2(&[(0, 2, 1), (1, 0, -1)]); // y² − x: branch x = y²
        let set = puiseux_branches(&f, 10).unwrap();
        assert_eq!(set.branches.len(), 1);
        let br = &set.branches[0];
        assert_eq!(br.orientation, Orientation::XofY);
        assert_eq!((br.q, br.p), (1, 2));
        assert_eq!(br.phi, Series1::from_int_terms(&[(2, 1)]));
        assert!(residual(&f, br).is_zero());
    }

    #[test]
    fn both_axes_of_a_monomial() {
        let set = puiseux_branches(&s2(&[(1, 1, 1)]), 5).unwrap();
        assert_eq!(set.branches.len(), 2);
        assert!(set.branches.iter().all(|b| b.is_axis()));
        assert_eq!(set.branches[0].orientation, Orientation::YofX);
        assert_eq!(set.branches[1].orientation, Orientation::XofY);
    }

    #[test]
    fn double_branch_found_once() {
        // (y − x²)²: one branch (with multiplicity two in the curve)
        let lin = s2(&[(0, 1, 1), (2, 0, -1)]);
        let set = puiseux_branches(&lin.mul(&lin), 8).unwrap();
        assert_eq!(set.branches.len(), 1);
        assert_eq!(set.branches[0].phi, Series1::from_int_terms(&[(2, 1)]));
    }

    #[test]
    fn higher_cusp_and_unit_scaling() {
        // 4y² − x⁵: y = ±x^{5/2}/2, one branch after conjugate dedup
        let f = s2(&[(0, 2, 4), (5, 0, -1)]);
        let set = puiseux_branches(&f, 12).unwrap();
        assert_eq!(set.branches.len(), 1);
        let br = &set.branches[0];
        assert_eq!((br.q, br.p), (2, 5));
        assert!(residual(&f, br).is_zero());
    }

    #[test]
    fn gaussian_coefficient_branches() {
        // y² + x² = (y−ix)(y+ix)
        let f = s2(&[(0, 2, 1), (2, 0, 1)]);
        let set = puiseux_branches(&f, 6).unwrap();
        assert_eq!(set.branches.len(), 2);
        let coeffs: BTreeSet<String> = set
            .branches
            .iter()
            .map(|b| b.phi.coeff(1).render())
            .collect();
        assert_eq!(
            coeffs,
            BTreeSet::from(["i".to_string(), "-i".to_string()])
        );
        for b in &set.branches {
            assert!(residual(&f, b).is_zero());
        }
    }

    #[test]
    fn field_extension_reported_not_expanded() {
        // y² − 2x²: roots ±√2 ∉ ℚ(i)
        let f = s2(&[(0, 2, 1), (2, 0, -2)]);
        let set = puiseux_branches(&f, 6).unwrap();
        assert!(set.branches.is_empty());
        assert!(set.warnings.iter().any(|w| w.contains("field extension")));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(puiseux_branches(&Series2::zero(N), 5).is_err());
        assert!(puiseux_branches(&s2(&[(0, 0, 1), (1, 0, 1)]), 5).is_err());
        let jet = Series2::from_int_terms(N + 1, &[(0, 2, 1), (13, 0, 1)]).truncate_to(N);
        assert!(puiseux_branches(&jet, N + 5).is_err());
    }

    #[test]
    fn primitive_reduction() {
        let raw = RawBranch {
            q: 2,
            phi: Series1::from_int_terms(&[(2, 1), (4, 3)]),
            family: None,
        };
        let red = make_primitive(raw);
        assert_eq!(red.q, 1);
        assert_eq!(red.phi, Series1::from_int_terms(&[(1, 1), (2, 3)]));
    }

    #[test]
    fn conjugate_units() {
        assert_eq!(units_of_order(3).len(), 1);
        assert_eq!(units_of_order(2).len(), 2);
        assert_eq!(units_of_order(4).len(), 4);
        assert_eq!(units_of_order(6).len(), 2);
    }

    #[test]
    fn mixed_branch_bundle() {
        // x·(y² − x³)·(y + x): axis x=0, the cusp, and the line y = −x
        let f = s2(&[(1, 0, 1)])
            .mul(&s2(&[(0, 2, 1), (3, 0, -1)]))
            .mul(&s2(&[(0, 1, 1), (1, 0, 1)]));
        let set = puiseux_branches(&f, 10).unwrap();
        assert_eq!(set.branches.len(), 3);
        assert!(set.branches[0].is_axis());
        assert_eq!(set.branches[0].orientation, Orientation::XofY);
        for b in &set.branches {
            assert!(residual(&f, b).is_zero());
        }
        let qs: Vec<usize> = set.branches.iter().map(|b| b.q).collect();
        assert!(qs.contains(&2));
    }
}
