//! Truncated power series in one and two variables over [`Scalar`].
//!
//! A [`Series2`] stores the jet of a bivariate series up to a fixed total
//! degree `trunc` (inclusive). Canonical form: only nonzero coefficients are
//! stored, keyed by exponent pairs in graded-lexicographic order, so equality
//! and iteration order are stable.
//!
//! Every value additionally carries an `exact` flag. `exact == true` means
//! the stored support is the complete object (a polynomial — no nonzero term
//! was ever discarded on the way to this value); `exact == false` means the
//! value is the jet of some series whose coefficients beyond `trunc` are
//! unknown. Each operation documents how the flag propagates. The flag is
//! what lets downstream consumers (intersection multiplicities, branch
//! enumeration) distinguish "this is the whole polynomial" from "this is a
//! jet" without re-deriving provenance.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent pair `x^i y^j`, ordered by total degree, then by `j` ascending
/// (equivalently `i` descending), i.e. graded-lexicographic with `x` first:
/// `x² < xy < y²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exp2 {
    pub i: usize,
    pub j: usize,
}

impl Exp2 {
    pub fn new(i: usize, j: usize) -> Self {
        Exp2 { i, j }
    }

    pub fn total(&self) -> usize {
        self.i + self.j
    }
}

impl Ord for Exp2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), self.j).cmp(&(other.total(), other.j))
    }
}

impl PartialOrd for Exp2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Bivariate series truncated at total degree `trunc` (inclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series2 {
    trunc: usize,
    exact: bool,
    coeffs: BTreeMap<Exp2, Scalar>,
}

impl Series2 {
    // ---- construction ----

    pub fn zero(trunc: usize) -> Self {
        assert!(trunc >= 1, "truncation order must be at least 1");
        Series2 {
            trunc,
            exact: true,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(trunc: usize) -> Self {
        Series2::monomial(trunc, Scalar::one(), 0, 0)
    }

    pub fn constant(trunc: usize, c: Scalar) -> Self {
        Series2::monomial(trunc, c, 0, 0)
    }

    pub fn var_x(trunc: usize) -> Self {
        Series2::monomial(trunc, Scalar::one(), 1, 0)
    }

    pub fn var_y(trunc: usize) -> Self {
        Series2::monomial(trunc, Scalar::one(), 0, 1)
    }

    /// Jet of the monomial `c·x^i y^j`. If the monomial exceeds the
    /// truncation order the result is the zero jet marked inexact.
    pub fn monomial(trunc: usize, c: Scalar, i: usize, j: usize) -> Self {
        let mut s = Series2::zero(trunc);
        if c.is_zero() {
            return s;
        }
        if i + j > trunc {
            s.exact = false;
            return s;
        }
        s.coeffs.insert(Exp2::new(i, j), c);
        s
    }

    /// Sum of monomials `(i, j, c)`. Terms beyond the truncation order are
    /// dropped and the result is marked inexact.
    pub fn from_terms(trunc: usize, terms: &[(usize, usize, Scalar)]) -> Self {
        let mut s = Series2::zero(trunc);
        for (i, j, c) in terms {
            if c.is_zero() {
                continue;
            }
            if i + j > trunc {
                s.exact = false;
                continue;
            }
            let e = Exp2::new(*i, *j);
            let cur = s.coeff(*i, *j);
            let next = &cur + c;
            if next.is_zero() {
                s.coeffs.remove(&e);
            } else {
                s.coeffs.insert(e, next);
            }
        }
        s
    }

    /// Convenience constructor with small integer coefficients.
    pub fn from_int_terms(trunc: usize, terms: &[(usize, usize, i64)]) -> Self {
        let scaled: Vec<(usize, usize, Scalar)> = terms
            .iter()
            .map(|(i, j, n)| (*i, *j, Scalar::from_int(*n)))
            .collect();
        Series2::from_terms(trunc, &scaled)
    }

    // ---- accessors ----

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// True when the stored support is the complete object (a polynomial).
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        self.coeffs
            .get(&Exp2::new(i, j))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exp2, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Order: minimal total degree of a nonzero term. `None` for the zero
    /// series.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.keys().map(Exp2::total).min()
    }

    /// Maximal total degree of a stored term (`None` for zero). Equals the
    /// true polynomial degree when the series is exact.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Exp2::total).max()
    }

    /// Minimal `x`-exponent over the support (`None` for zero): the largest
    /// power of `x` dividing the series.
    pub fn x_multiplicity(&self) -> Option<usize> {
        self.coeffs.keys().map(|e| e.i).min()
    }

    pub fn y_multiplicity(&self) -> Option<usize> {
        self.coeffs.keys().map(|e| e.j).min()
    }

    fn assert_same_trunc(&self, rhs: &Series2, op: &str) {
        assert!(
            self.trunc == rhs.trunc,
            "{op}: truncation order mismatch ({} vs {})",
            self.trunc,
            rhs.trunc
        );
    }

    fn insert_add(map: &mut BTreeMap<Exp2, Scalar>, e: Exp2, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match map.get_mut(&e) {
            Some(cur) => {
                let next = &*cur + c;
                if next.is_zero() {
                    map.remove(&e);
                } else {
                    *cur = next;
                }
            }
            None => {
                map.insert(e, c.clone());
            }
        }
    }

    // ---- ring operations ----

    /// Coefficient-wise sum. Panics on mismatched truncation orders (all
    /// values in one computation share a single truncation order by
    /// construction). Exact iff both operands are exact.
    pub fn add(&self, rhs: &Series2) -> Series2 {
        self.assert_same_trunc(rhs, "add");
        let mut coeffs = self.coeffs.clone();
        for (e, c) in rhs.coeffs.iter() {
            Self::insert_add(&mut coeffs, *e, c);
        }
        Series2 {
            trunc: self.trunc,
            exact: self.exact && rhs.exact,
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &Series2) -> Series2 {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Series2 {
        Series2 {
            trunc: self.trunc,
            exact: self.exact,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    /// Cauchy product, discarding terms of total degree above the truncation
    /// order. Exact iff both operands are exact and nothing was discarded;
    /// since nonzero polynomials over a field multiply to degree
    /// `deg a + deg b`, the flag is set precisely when that sum fits.
    pub fn mul(&self, rhs: &Series2) -> Series2 {
        self.assert_same_trunc(rhs, "mul");
        let mut coeffs = BTreeMap::new();
        for (ea, ca) in self.coeffs.iter() {
            for (eb, cb) in rhs.coeffs.iter() {
                let i = ea.i + eb.i;
                let j = ea.j + eb.j;
                if i + j > self.trunc {
                    continue;
                }
                Self::insert_add(&mut coeffs, Exp2::new(i, j), &(ca * cb));
            }
        }
        let exact = self.exact
            && rhs.exact
            && match (self.degree(), rhs.degree()) {
                (Some(da), Some(db)) => da + db <= self.trunc,
                _ => true, // a zero factor: the product is exactly zero
            };
        Series2 {
            trunc: self.trunc,
            exact,
            coeffs,
        }
    }

    /// Multiplication by a scalar. Exactness is preserved (scaling by zero
    /// yields the exactly-zero series).
    pub fn scale(&self, c: &Scalar) -> Series2 {
        if c.is_zero() {
            return Series2::zero(self.trunc);
        }
        Series2 {
            trunc: self.trunc,
            exact: self.exact,
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiplication by the monomial `c·x^i y^j` (an exponent shift).
    pub fn mul_monomial(&self, c: &Scalar, i: usize, j: usize) -> Series2 {
        if c.is_zero() {
            return Series2::zero(self.trunc);
        }
        let mut coeffs = BTreeMap::new();
        let mut dropped = false;
        for (e, k) in self.coeffs.iter() {
            let ni = e.i + i;
            let nj = e.j + j;
            if ni + nj > self.trunc {
                dropped = true;
                continue;
            }
            coeffs.insert(Exp2::new(ni, nj), k * c);
        }
        Series2 {
            trunc: self.trunc,
            exact: self.exact && !dropped,
            coeffs,
        }
    }

    pub fn pow(&self, k: usize) -> Series2 {
        let mut acc = Series2::one(self.trunc);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    // ---- calculus ----

    /// Partial derivative in `x`. For inexact jets the degree-`trunc`
    /// coefficients of the result depend on unknown input terms; consumers
    /// that rely on the top degree account for this (see
    /// [`crate::vector_field::VectorField::apply_derivation`], where the
    /// order-≥2 factors push the uncertainty past the truncation order).
    pub fn derivative_x(&self) -> Series2 {
        let mut coeffs = BTreeMap::new();
        for (e, c) in self.coeffs.iter() {
            if e.i == 0 {
                continue;
            }
            let factor = Scalar::from_int(e.i as i64);
            coeffs.insert(Exp2::new(e.i - 1, e.j), c * &factor);
        }
        Series2 {
            trunc: self.trunc,
            exact: self.exact,
            coeffs,
        }
    }

    pub fn derivative_y(&self) -> Series2 {
        let mut coeffs = BTreeMap::new();
        for (e, c) in self.coeffs.iter() {
            if e.j == 0 {
                continue;
            }
            let factor = Scalar::from_int(e.j as i64);
            coeffs.insert(Exp2::new(e.i, e.j - 1), c * &factor);
        }
        Series2 {
            trunc: self.trunc,
            exact: self.exact,
            coeffs,
        }
    }

    // ---- series-specific operations ----

    /// Multiplicative inverse of a unit series (nonzero constant term),
    /// correct up to the truncation order. The result is exact only when the
    /// input is a constant; otherwise the true inverse continues beyond any
    /// finite degree.
    pub fn invert_unit(&self) -> Result<Series2> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() {
            return Err(Error::domain(
                "invert_unit",
                "series has zero constant term and is not a unit",
            ));
        }
        let c0_inv = c0.inv().expect("nonzero scalar");
        if self.num_terms() == 1 {
            return Ok(Series2::constant(self.trunc, c0_inv));
        }
        // Solve (c0 + h)·b = 1 degree by degree: b_n = -c0⁻¹·Σ_{k≥1} h_k·b_{n−k},
        // grouping by homogeneous degree.
        let mut b = Series2::constant(self.trunc, c0_inv.clone());
        for n in 1..=self.trunc {
            // Coefficient of degree n in self·b, using only b's parts < n.
            let mut residue: BTreeMap<Exp2, Scalar> = BTreeMap::new();
            for (ea, ca) in self.coeffs.iter() {
                if ea.total() == 0 || ea.total() > n {
                    continue;
                }
                for (eb, cb) in b.coeffs.iter() {
                    if ea.total() + eb.total() != n {
                        continue;
                    }
                    Self::insert_add(
                        &mut residue,
                        Exp2::new(ea.i + eb.i, ea.j + eb.j),
                        &(ca * cb),
                    );
                }
            }
            for (e, c) in residue {
                let corr = -&(&c * &c0_inv);
                Self::insert_add(&mut b.coeffs, e, &corr);
            }
        }
        b.exact = false;
        Ok(b)
    }

    /// Composition `self(sx, sy)`. Both arguments must have zero constant
    /// term (so the composition is well-defined on jets) and all truncation
    /// orders must agree. The jet up to the truncation order is correct;
    /// exact iff every operand is exact and no product overflowed.
    pub fn substitute(&self, sx: &Series2, sy: &Series2) -> Result<Series2> {
        self.assert_same_trunc(sx, "substitute");
        self.assert_same_trunc(sy, "substitute");
        if !sx.coeff(0, 0).is_zero() || !sy.coeff(0, 0).is_zero() {
            return Err(Error::domain(
                "substitute",
                "substituted series must have zero constant term",
            ));
        }
        let n = self.trunc;
        let mut result = Series2::zero(n);
        let mut exact = self.exact && sx.exact && sy.exact;

        // Group the terms by j so each power of sy is computed once, and
        // powers of sx are built incrementally inside each group.
        let mut by_j: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (e, c) in self.coeffs.iter() {
            by_j.entry(e.j).or_default().push((e.i, c));
        }
        let mut sy_pow = Series2::one(n); // sy^j, updated incrementally
        let mut last_j = 0usize;
        for (j, terms) in by_j.iter() {
            while last_j < *j {
                sy_pow = sy_pow.mul(sy);
                last_j += 1;
            }
            let mut sx_pow = Series2::one(n);
            let mut last_i = 0usize;
            for (i, c) in terms.iter() {
                while last_i < *i {
                    sx_pow = sx_pow.mul(sx);
                    last_i += 1;
                }
                let term = sx_pow.mul(&sy_pow).scale(c);
                exact = exact && term.exact;
                result = result.add(&term);
            }
        }
        result.exact = exact && result.exact;
        Ok(result)
    }

    /// Ramified restriction `self(z^q, phi(z))`: substitute `x = z^q` and
    /// `y = phi(z)`. `phi` must have zero constant term.
    ///
    /// Output reliability: with both inputs exact the result is the exact
    /// polynomial. Otherwise the output truncation order records how far the
    /// coefficients are certain: an inexact `self` at order `N` limits it to
    /// `q·N − (q−1)`, and an inexact `phi` limits it to `phi.trunc()`.
    pub fn ramified_restrict(&self, phi: &Series1, q: usize) -> Result<Series1> {
        if q == 0 {
            return Err(Error::domain("ramified_restrict", "q must be positive"));
        }
        if !phi.coeff(0).is_zero() {
            return Err(Error::domain(
                "ramified_restrict",
                "phi must have zero constant term",
            ));
        }
        let exact = self.exact && phi.is_exact();
        // How far the output coefficients are reliable.
        let mut reliable = usize::MAX;
        if !self.exact {
            reliable = reliable.min(q * self.trunc - (q - 1));
        }
        if !phi.is_exact() {
            reliable = reliable.min(phi.trunc());
        }
        // Capacity to compute: for exact inputs, enough to hold every term.
        let cap = if exact {
            let dself = self.degree().unwrap_or(0);
            let dphi = phi.degree().unwrap_or(0).max(1);
            (dself * q.max(dphi)).max(1)
        } else {
            reliable
        };

        let mut out = Series1::zero_with(cap, exact);
        // Group by j as in substitute: phi^j computed incrementally.
        let mut by_j: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (e, c) in self.coeffs.iter() {
            by_j.entry(e.j).or_default().push((e.i, c));
        }
        let mut phi_pow = Series1::one_with(cap, exact);
        let mut last_j = 0usize;
        for (j, terms) in by_j.iter() {
            while last_j < *j {
                phi_pow = phi_pow.mul_capped(phi, cap);
                last_j += 1;
            }
            for (i, c) in terms.iter() {
                // term: c · z^{q·i} · phi^j
                let shifted = phi_pow.shift(q * i, cap);
                out = out.add_capped(&shifted.scale(c), cap);
            }
        }
        out.set_reliability(cap, exact);
        Ok(out)
    }

    /// The univariate series `self(x, 0)` (terms with `j = 0`).
    pub fn subst_y_zero(&self) -> Series1 {
        let mut out = Series1::zero_with(self.trunc, self.exact);
        for (e, c) in self.coeffs.iter() {
            if e.j == 0 {
                out.coeffs.insert(e.i, c.clone());
            }
        }
        out.normalize();
        out
    }

    /// The univariate series `self(0, y)` (terms with `i = 0`).
    pub fn subst_x_zero(&self) -> Series1 {
        let mut out = Series1::zero_with(self.trunc, self.exact);
        for (e, c) in self.coeffs.iter() {
            if e.i == 0 {
                out.coeffs.insert(e.j, c.clone());
            }
        }
        out.normalize();
        out
    }

    /// Exact division by `x`. Errors when some term is not divisible.
    pub fn divide_x(&self) -> Result<Series2> {
        if self.coeffs.keys().any(|e| e.i == 0) {
            return Err(Error::domain("divide_x", "series is not divisible by x"));
        }
        Ok(Series2 {
            trunc: self.trunc,
            exact: self.exact,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (Exp2::new(e.i - 1, e.j), c.clone()))
                .collect(),
        })
    }

    /// Exact division by `y`. Errors when some term is not divisible.
    pub fn divide_y(&self) -> Result<Series2> {
        if self.coeffs.keys().any(|e| e.j == 0) {
            return Err(Error::domain("divide_y", "series is not divisible by y"));
        }
        Ok(Series2 {
            trunc: self.trunc,
            exact: self.exact,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (Exp2::new(e.i, e.j - 1), c.clone()))
                .collect(),
        })
    }

    /// Swap the two variables: `self(y, x)`.
    pub fn swap_vars(&self) -> Series2 {
        Series2 {
            trunc: self.trunc,
            exact: self.exact,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (Exp2::new(e.j, e.i), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous part of total degree `d` (an exact polynomial).
    pub fn homogeneous_part(&self, d: usize) -> Series2 {
        Series2 {
            trunc: self.trunc,
            exact: true,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| e.total() == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Drop all terms of total degree above `m` and lower the truncation
    /// order to `m`. The result stays exact only if nothing was dropped.
    pub fn truncate_to(&self, m: usize) -> Series2 {
        assert!(m >= 1, "truncation order must be at least 1");
        let mut dropped = false;
        let coeffs: BTreeMap<Exp2, Scalar> = self
            .coeffs
            .iter()
            .filter(|(e, _)| {
                if e.total() <= m {
                    true
                } else {
                    dropped = true;
                    false
                }
            })
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        Series2 {
            trunc: m,
            exact: self.exact && !dropped,
            coeffs,
        }
    }

    /// Override the exactness flag (for constructions whose inputs are
    /// known jets even though the assembled terms look exact).
    pub(crate) fn with_exactness(mut self, exact: bool) -> Series2 {
        self.exact = exact;
        self
    }

    /// Raise the truncation order. Only valid on exact values (on a jet the
    /// added degrees would be unknown).
    pub fn raise_trunc(&self, m: usize) -> Series2 {
        assert!(m >= self.trunc, "raise_trunc lowers the order");
        assert!(
            self.exact,
            "cannot raise the truncation order of an inexact jet"
        );
        Series2 {
            trunc: m,
            exact: true,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Compare all coefficients of total degree ≤ `d`.
    pub fn eq_to_degree(&self, rhs: &Series2, d: usize) -> bool {
        let pick = |s: &Series2| -> BTreeMap<Exp2, Scalar> {
            s.coeffs
                .iter()
                .filter(|(e, _)| e.total() <= d)
                .map(|(e, c)| (*e, c.clone()))
                .collect()
        };
        pick(self) == pick(rhs)
    }

    /// Render with the given variable names; canonical, parseable form.
    pub fn render_with(&self, vx: &str, vy: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.coeffs.iter() {
            let mono = render_monomial_2(e.i, e.j, vx, vy);
            push_term(&mut out, c, &mono);
        }
        out
    }
}

impl fmt::Display for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_with("x", "y"))
    }
}

fn render_monomial_2(i: usize, j: usize, vx: &str, vy: &str) -> String {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push(vx.to_string()),
        _ => parts.push(format!("{vx}^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push(vy.to_string()),
        _ => parts.push(format!("{vy}^{j}")),
    }
    parts.join("*")
}

/// Append `± coefficient*monomial` in canonical, re-parseable form.
fn push_term(out: &mut String, c: &Scalar, mono: &str) {
    use num_traits::{Signed, Zero};
    // Sign handling: pull a leading minus out of purely real or purely
    // imaginary coefficients; mixed coefficients are parenthesized.
    let (neg, abs): (bool, Scalar) = if c.is_real() {
        (c.re().is_negative(), if c.re().is_negative() { -c } else { c.clone() })
    } else if c.re().is_zero() {
        (c.im().is_negative(), if c.im().is_negative() { -c } else { c.clone() })
    } else {
        (false, c.clone())
    };
    let body = if mono.is_empty() {
        if abs.is_real() || abs.re().is_zero() {
            abs.render()
        } else {
            format!("({})", abs.render())
        }
    } else if abs.is_one() {
        mono.to_string()
    } else if abs.is_real() || abs.re().is_zero() {
        format!("{}*{}", abs.render(), mono)
    } else {
        format!("({})*{}", abs.render(), mono)
    };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else if neg {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    out.push_str(&body);
}

/// Univariate series in `z`, truncated at degree `trunc` (inclusive).
///
/// Unlike [`Series2`], binary operations align reliability automatically:
/// an exact value behaves as if reliable to every order, an inexact one is
/// reliable to its `trunc`, and the result carries the minimum. This is the
/// convenient regime for branch expansions and restricted dynamics, where
/// polynomial data and truncated tails mix freely. Exact values keep
/// `trunc` normalized to their degree so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series1 {
    trunc: usize,
    exact: bool,
    coeffs: BTreeMap<usize, Scalar>,
}

impl Series1 {
    // ---- construction ----

    /// The exact zero polynomial.
    pub fn zero() -> Self {
        Series1 {
            trunc: 0,
            exact: true,
            coeffs: BTreeMap::new(),
        }
    }

    pub(crate) fn zero_with(trunc: usize, exact: bool) -> Self {
        Series1 {
            trunc: if exact { 0 } else { trunc },
            exact,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Series1::monomial(Scalar::one(), 0)
    }

    fn one_with(trunc: usize, exact: bool) -> Self {
        let mut s = Series1::zero_with(trunc, exact);
        s.coeffs.insert(0, Scalar::one());
        s.normalize();
        s
    }

    pub fn var() -> Self {
        Series1::monomial(Scalar::one(), 1)
    }

    /// The exact monomial `c·z^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut s = Series1::zero();
        if !c.is_zero() {
            s.coeffs.insert(k, c);
            s.trunc = k;
        }
        s
    }

    /// Exact polynomial from `(exponent, coefficient)` terms.
    pub fn from_terms(terms: &[(usize, Scalar)]) -> Self {
        let mut s = Series1::zero();
        for (k, c) in terms {
            let cur = s.coeff(*k);
            let next = &cur + c;
            if next.is_zero() {
                s.coeffs.remove(k);
            } else {
                s.coeffs.insert(*k, next);
            }
        }
        s.normalize();
        s
    }

    pub fn from_int_terms(terms: &[(usize, i64)]) -> Self {
        let scaled: Vec<(usize, Scalar)> = terms
            .iter()
            .map(|(k, n)| (*k, Scalar::from_int(*n)))
            .collect();
        Series1::from_terms(&scaled)
    }

    /// A jet reliable up to `trunc`, from terms (those beyond are dropped).
    pub fn jet_from_terms(trunc: usize, terms: &[(usize, Scalar)]) -> Self {
        let mut s = Series1::from_terms(terms);
        s.exact = false;
        s.coeffs.retain(|k, _| *k <= trunc);
        s.trunc = trunc;
        s
    }

    /// Restore canonical invariants: drop zero coefficients; for exact
    /// values, normalize `trunc` to the degree.
    pub(crate) fn normalize(&mut self) {
        self.coeffs.retain(|_, c| !c.is_zero());
        if self.exact {
            self.trunc = self.coeffs.keys().max().copied().unwrap_or(0);
        } else {
            let t = self.trunc;
            self.coeffs.retain(|k, _| *k <= t);
        }
    }

    pub(crate) fn set_reliability(&mut self, trunc: usize, exact: bool) {
        self.exact = exact;
        self.trunc = trunc;
        self.normalize();
    }

    // ---- accessors ----

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn ord(&self) -> Option<usize> {
        self.coeffs.keys().min().copied()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().max().copied()
    }

    /// Reliability in the aligned-ops sense: `None` means "every order"
    /// (exact), otherwise coefficients up to the returned order are correct.
    fn reliability(&self) -> Option<usize> {
        if self.exact {
            None
        } else {
            Some(self.trunc)
        }
    }

    fn join_reliability(a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (None, r) | (r, None) => r,
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }

    fn apply_reliability(mut self, r: Option<usize>) -> Series1 {
        match r {
            None => {
                self.exact = true;
                self.normalize();
            }
            Some(t) => {
                self.exact = false;
                self.trunc = t;
                self.normalize();
            }
        }
        self
    }

    // ---- arithmetic (reliability-aligning) ----

    pub fn add(&self, rhs: &Series1) -> Series1 {
        let r = Self::join_reliability(self.reliability(), rhs.reliability());
        let mut coeffs = self.coeffs.clone();
        for (k, c) in rhs.coeffs.iter() {
            let cur = coeffs.get(k).cloned().unwrap_or_else(Scalar::zero);
            let next = &cur + c;
            if next.is_zero() {
                coeffs.remove(k);
            } else {
                coeffs.insert(*k, next);
            }
        }
        Series1 {
            trunc: 0,
            exact: true,
            coeffs,
        }
        .apply_reliability(r)
    }

    fn add_capped(&self, rhs: &Series1, cap: usize) -> Series1 {
        let mut out = self.add(rhs);
        if !out.exact {
            out.trunc = out.trunc.min(cap);
            out.normalize();
        }
        out
    }

    pub fn sub(&self, rhs: &Series1) -> Series1 {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Series1 {
        Series1 {
            trunc: self.trunc,
            exact: self.exact,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Series1) -> Series1 {
        let r = Self::join_reliability(self.reliability(), rhs.reliability());
        let cap = r.unwrap_or(usize::MAX);
        let mut coeffs: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (ka, ca) in self.coeffs.iter() {
            for (kb, cb) in rhs.coeffs.iter() {
                let k = ka + kb;
                if k > cap {
                    continue;
                }
                let cur = coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero);
                let next = &cur + &(ca * cb);
                if next.is_zero() {
                    coeffs.remove(&k);
                } else {
                    coeffs.insert(k, next);
                }
            }
        }
        Series1 {
            trunc: 0,
            exact: true,
            coeffs,
        }
        .apply_reliability(r)
    }

    /// Product computed only up to degree `cap` (keeps exact×exact products
    /// from growing past what a caller will use).
    fn mul_capped(&self, rhs: &Series1, cap: usize) -> Series1 {
        let r = Self::join_reliability(self.reliability(), rhs.reliability());
        let mut out = Series1::zero();
        let mut coeffs: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (ka, ca) in self.coeffs.iter() {
            for (kb, cb) in rhs.coeffs.iter() {
                let k = ka + kb;
                if k > cap {
                    continue;
                }
                let cur = coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero);
                let next = &cur + &(ca * cb);
                if next.is_zero() {
                    coeffs.remove(&k);
                } else {
                    coeffs.insert(k, next);
                }
            }
        }
        out.coeffs = coeffs;
        // If the uncapped product would overflow the cap, the value is a jet.
        let overflow = match (self.degree(), rhs.degree()) {
            (Some(da), Some(db)) => da + db > cap,
            _ => false,
        };
        let r = if overflow {
            Self::join_reliability(r, Some(cap))
        } else {
            r
        };
        out.apply_reliability(r)
    }

    pub fn scale(&self, c: &Scalar) -> Series1 {
        if c.is_zero() {
            return Series1::zero();
        }
        Series1 {
            trunc: self.trunc,
            exact: self.exact,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiply by `z^e`, keeping terms up to `cap`.
    fn shift(&self, e: usize, cap: usize) -> Series1 {
        let mut out = Series1 {
            trunc: if self.exact {
                0
            } else {
                (self.trunc + e).min(cap)
            },
            exact: self.exact,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| *k + e <= cap)
                .map(|(k, c)| (k + e, c.clone()))
                .collect(),
        };
        if self.exact && self.degree().map(|d| d + e > cap).unwrap_or(false) {
            out.exact = false;
            out.trunc = cap;
        }
        out.normalize();
        out
    }

    /// Multiply by `z^e` without a cap (exact values only grow).
    pub fn mul_z_pow(&self, e: usize) -> Series1 {
        let mut out = Series1 {
            trunc: self.trunc.saturating_add(e),
            exact: self.exact,
            coeffs: self.coeffs.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        };
        out.normalize();
        out
    }

    /// Exact division by `z^e`. Errors when `z^e` does not divide the series
    /// (a nonzero term below degree `e`). The zero series divides trivially.
    pub fn divide_z(&self, e: usize) -> Result<Series1> {
        if e == 0 {
            return Ok(self.clone());
        }
        if self.coeffs.keys().any(|k| *k < e) {
            return Err(Error::domain(
                "divide_monomial",
                format!("series is not divisible by z^{e} (its order is below the divisor)"),
            ));
        }
        let mut out = Series1 {
            trunc: self.trunc.saturating_sub(e),
            exact: self.exact,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k - e, c.clone()))
                .collect(),
        };
        out.normalize();
        Ok(out)
    }

    pub fn derivative(&self) -> Series1 {
        let mut out = Series1 {
            trunc: self.trunc.saturating_sub(1),
            exact: self.exact,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| **k >= 1)
                .map(|(k, c)| (k - 1, c * &Scalar::from_int(*k as i64)))
                .collect(),
        };
        out.normalize();
        out
    }

    /// Substitute `z ↦ c·z` (used for conjugate-branch comparison).
    pub fn scale_var(&self, c: &Scalar) -> Series1 {
        let mut out = Series1 {
            trunc: self.trunc,
            exact: self.exact,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (*k, v * &c.pow(*k)))
                .collect(),
        };
        out.normalize();
        out
    }

    /// Drop coefficients above `m`; the result is a jet reliable to `m`
    /// (still exact if nothing could be dropped from an exact value).
    pub fn truncate_to(&self, m: usize) -> Series1 {
        if self.exact && self.degree().map(|d| d <= m).unwrap_or(true) {
            return self.clone();
        }
        let mut out = self.clone();
        out.exact = false;
        out.trunc = if self.exact { m } else { self.trunc.min(m) };
        let t = out.trunc;
        out.coeffs.retain(|k, _| *k <= t);
        out
    }

    pub fn eq_to_degree(&self, rhs: &Series1, d: usize) -> bool {
        let pick = |s: &Series1| -> BTreeMap<usize, Scalar> {
            s.coeffs
                .iter()
                .filter(|(k, _)| **k <= d)
                .map(|(k, c)| (*k, c.clone()))
                .collect()
        };
        pick(self) == pick(rhs)
    }

    pub fn render_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter() {
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            push_term(&mut out, c, &mono);
        }
        out
    }
}

impl fmt::Display for Series1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_with("z"))
    }
}
