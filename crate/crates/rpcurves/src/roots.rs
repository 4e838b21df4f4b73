//! Exact root finding over the Gaussian rationals.
//!
//! The branch recursions need every root in ℚ(i) of small characteristic
//! polynomials. Since ℤ[i] is a Euclidean domain, the rational-root theorem
//! applies verbatim: a root u/v in lowest terms has u dividing the constant
//! term and v dividing the leading term (up to units). We clear denominators,
//! factor the two Gaussian integers by factoring their norms, enumerate
//! divisors up to units, and test candidates by synthetic division.
//!
//! Roots outside ℚ(i) are *reported* (`nonlinear_factor_remaining`), never
//! silently dropped; oversized inputs degrade the same way via
//! `search_truncated` instead of stalling. Internal only.

use crate::cpoly::UPoly;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Outcome of exhaustive ℚ(i)-root search.
#[derive(Debug, Clone)]
pub struct RootReport {
    /// Nonzero roots with multiplicities (roots at zero are the caller's
    /// business — branch seeds always strip the content first).
    pub roots: Vec<(Scalar, usize)>,
    /// After removing all ℚ(i)-linear factors a factor of positive degree
    /// remains: its roots generate a proper field extension.
    pub nonlinear_factor_remaining: bool,
    /// The divisor enumeration was abandoned (norms too large); the root
    /// list may be incomplete.
    pub search_truncated: bool,
}

/// Gaussian integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn new(re: BigInt, im: BigInt) -> Self {
        GInt { re, im }
    }

    fn from_ints(re: i64, im: i64) -> Self {
        GInt::new(BigInt::from(re), BigInt::from(im))
    }

    fn one() -> Self {
        GInt::new(BigInt::one(), BigInt::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn mul(&self, rhs: &GInt) -> GInt {
        GInt::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    fn conj(&self) -> GInt {
        GInt::new(self.re.clone(), -self.im.clone())
    }

    /// Euclidean division with remainder of norm at most half the divisor's:
    /// round the exact quotient to the nearest Gaussian integer.
    fn divmod(&self, rhs: &GInt) -> (GInt, GInt) {
        assert!(!rhs.is_zero(), "division by zero Gaussian integer");
        let n = rhs.norm();
        let num = self.mul(&rhs.conj());
        let round_div = |a: &BigInt, b: &BigInt| -> BigInt {
            // nearest integer to a/b (ties away from zero)
            let (q, r) = a.div_rem(b);
            if r.abs() * 2 >= b.abs() {
                if r.sign() == b.sign() {
                    q + 1
                } else {
                    q - 1
                }
            } else {
                q
            }
        };
        let q = GInt::new(round_div(&num.re, &n), round_div(&num.im, &n));
        let r_full = GInt::new(
            &self.re - &q.mul(rhs).re,
            &self.im - &q.mul(rhs).im,
        );
        (q, r_full)
    }

    fn divides(&self, other: &GInt) -> bool {
        let (_, r) = other.divmod(self);
        r.is_zero()
    }

    fn div_exact(&self, rhs: &GInt) -> GInt {
        let (q, r) = self.divmod(rhs);
        debug_assert!(r.is_zero(), "non-exact Gaussian division");
        q
    }

    /// The associate with re > 0 and im ≥ 0 (unique for nonzero values).
    fn canonical_associate(&self) -> GInt {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.clone();
        for _ in 0..4 {
            if g.re.is_positive() && !g.im.is_negative() {
                return g;
            }
            // multiply by i
            g = GInt::new(-g.im.clone(), g.re.clone());
        }
        unreachable!("some associate satisfies re > 0, im ≥ 0")
    }
}

/// Factor a rational prime over ℤ[i]: 2 = -i(1+i)², p ≡ 1 (mod 4) splits as
/// π·π̄, p ≡ 3 (mod 4) stays prime.
fn gaussian_primes_above(p: &BigInt) -> Vec<GInt> {
    if *p == BigInt::from(2) {
        return vec![GInt::from_ints(1, 1)];
    }
    let four = BigInt::from(4);
    if p % &four == BigInt::from(3) {
        return vec![GInt::new(p.clone(), BigInt::zero())];
    }
    // p ≡ 1 (mod 4): find a² + b² = p by searching a.
    let mut a = BigInt::one();
    loop {
        let rem = p - &a * &a;
        if rem < BigInt::zero() {
            unreachable!("every prime ≡ 1 mod 4 is a sum of two squares");
        }
        let b = rem.sqrt();
        if &b * &b == rem {
            let pi = GInt::new(a.clone(), b);
            return vec![pi.clone(), pi.conj()];
        }
        a += 1;
    }
}

/// Trial-divide `n > 0`; `None` when a cofactor above the budget survives.
fn factor_int(mut n: BigInt, budget: u64) -> Option<Vec<(BigInt, u32)>> {
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    let limit = BigInt::from(budget);
    while &d * &d <= n {
        if d > limit {
            return None;
        }
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    Some(out)
}

/// Prime factorization in ℤ[i] up to units. `None` when the norm resists the
/// trial-division budget.
fn factor_gauss(g: &GInt) -> Option<Vec<(GInt, u32)>> {
    assert!(!g.is_zero());
    if g.is_unit() {
        return Some(Vec::new());
    }
    let norm_factors = factor_int(g.norm(), 1_000_000)?;
    let mut rest = g.clone();
    let mut out: Vec<(GInt, u32)> = Vec::new();
    for (p, _) in norm_factors {
        for pi in gaussian_primes_above(&p) {
            let mut e = 0u32;
            while !rest.is_unit() && pi.divides(&rest) {
                rest = rest.div_exact(&pi);
                e += 1;
            }
            if e > 0 {
                out.push((pi.canonical_associate(), e));
            }
        }
    }
    debug_assert!(rest.is_unit(), "norm factorization covers all primes");
    Some(out)
}

/// All divisors of `g` up to units, as canonical associates. `None` when the
/// factorization fails or the divisor count explodes.
fn divisors_up_to_units(g: &GInt) -> Option<Vec<GInt>> {
    let factors = factor_gauss(g)?;
    let mut count: u64 = 1;
    for (_, e) in &factors {
        count = count.saturating_mul(*e as u64 + 1);
        if count > 4096 {
            return None;
        }
    }
    let mut divs = vec![GInt::one()];
    for (pi, e) in &factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(pi);
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    Some(divs.into_iter().map(|d| d.canonical_associate()).collect())
}

/// Least common multiple of the denominators of all rational parts.
fn denominator_lcm(p: &UPoly) -> BigInt {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.re().denom());
        l = l.lcm(c.im().denom());
    }
    l
}

fn to_gint(c: &Scalar, scale: &BigInt) -> GInt {
    let part = |r: &BigRational| -> BigInt {
        let scaled = r * BigRational::from_integer(scale.clone());
        debug_assert!(scaled.denom().is_one());
        scaled.numer().clone()
    };
    GInt::new(part(c.re()), part(c.im()))
}

/// Every nonzero root of `p` in ℚ(i), with multiplicities.
///
/// The zero polynomial is the caller's precondition to exclude; constants
/// have no roots.
pub fn qi_roots(p: &UPoly) -> RootReport {
    let mut report = RootReport {
        roots: Vec::new(),
        nonlinear_factor_remaining: false,
        search_truncated: false,
    };
    if p.is_zero() {
        return report;
    }
    // Strip roots at zero; they are not reported.
    let ord = p.ord().unwrap();
    let mut work = p.divide_z_pow(ord).expect("order strip");
    if work.deg() == Some(0) {
        return report;
    }

    // A linear polynomial needs no divisor search: its one root is the exact
    // quotient −a₀/a₁, however large the coefficients.
    if work.deg() == Some(1) {
        let root = (-work.coeff(0))
            .div_exact(work.leading().expect("degree one"))
            .expect("nonzero leading coefficient");
        report.roots.push((root, 1));
        return report;
    }

    // Clear denominators to land in ℤ[i][z].
    let scale = denominator_lcm(&work);
    let a0 = to_gint(&work.coeff(0), &scale);
    let ad = to_gint(work.leading().expect("nonzero"), &scale);
    debug_assert!(!a0.is_zero() && !ad.is_zero());

    let (num_divs, den_divs) = match (divisors_up_to_units(&a0), divisors_up_to_units(&ad)) {
        (Some(n), Some(d)) => (n, d),
        _ => {
            report.search_truncated = true;
            report.nonlinear_factor_remaining = work.deg().map(|d| d >= 1).unwrap_or(false);
            return report;
        }
    };

    // Candidates unit · u / v, deduplicated as scalars.
    let units = [
        Scalar::from_parts(1, 0),
        Scalar::from_parts(-1, 0),
        Scalar::from_parts(0, 1),
        Scalar::from_parts(0, -1),
    ];
    let mut candidates: BTreeSet<Scalar> = BTreeSet::new();
    for u in &num_divs {
        let un = Scalar::new(
            BigRational::from_integer(u.re.clone()),
            BigRational::from_integer(u.im.clone()),
        );
        for v in &den_divs {
            let vn = Scalar::new(
                BigRational::from_integer(v.re.clone()),
                BigRational::from_integer(v.im.clone()),
            );
            let base = un.div_exact(&vn).expect("nonzero divisor");
            for unit in &units {
                candidates.insert(unit * &base);
            }
        }
    }

    for cand in candidates {
        if work.deg().map(|d| d == 0).unwrap_or(true) {
            break;
        }
        let mut mult = 0usize;
        while let Some(q) = work.div_by_root(&cand) {
            work = q;
            mult += 1;
        }
        if mult > 0 {
            report.roots.push((cand, mult));
        }
    }
    report.nonlinear_factor_remaining = work.deg().map(|d| d >= 1).unwrap_or(false);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn upoly(coeffs: &[i64]) -> UPoly {
        UPoly::from_coeffs(coeffs.iter().map(|n| Scalar::from_int(*n)).collect())
    }

    #[test]
    fn gaussian_division_and_gcd_structure() {
        let a = GInt::from_ints(7, 3);
        let b = GInt::from_ints(2, -1);
        let (q, r) = a.divmod(&b);
        // a = q·b + r with N(r) < N(b)
        let back = q.mul(&b);
        assert_eq!(GInt::new(&back.re + &r.re, &back.im + &r.im), a);
        assert!(r.norm() < b.norm());
    }

    #[test]
    fn canonical_associates() {
        let g = GInt::from_ints(0, -3);
        assert_eq!(g.canonical_associate(), GInt::from_ints(3, 0));
        let g = GInt::from_ints(-1, 2);
        let c = g.canonical_associate();
        assert!(c.re.is_positive() && !c.im.is_negative());
        assert_eq!(c.norm(), g.norm());
    }

    #[test]
    fn factors_of_small_gaussian_integers() {
        // 5 = (2+i)(2−i) up to units
        let f = factor_gauss(&GInt::from_ints(5, 0)).unwrap();
        assert_eq!(f.len(), 2);
        for (pi, e) in &f {
            assert_eq!(*e, 1);
            assert_eq!(pi.norm(), BigInt::from(5));
        }
        // 2 ramifies: (1+i)²
        let f = factor_gauss(&GInt::from_ints(2, 0)).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].1, 2);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (z−1)²(z+2) = z³ − 3z + 2
        let p = upoly(&[2, -3, 0, 1]);
        let rep = qi_roots(&p);
        assert!(!rep.nonlinear_factor_remaining && !rep.search_truncated);
        let mut roots = rep.roots.clone();
        roots.sort();
        assert_eq!(
            roots,
            vec![(Scalar::from_int(-2), 1), (Scalar::from_int(1), 2)]
        );
    }

    #[test]
    fn gaussian_and_fractional_roots() {
        // (z−i)(z+i) = z²+1
        let rep = qi_roots(&upoly(&[1, 0, 1]));
        let mut roots: Vec<Scalar> = rep.roots.iter().map(|(r, _)| r.clone()).collect();
        roots.sort();
        assert_eq!(roots, vec![-Scalar::i(), Scalar::i()]);
        assert!(!rep.nonlinear_factor_remaining);

        // (2z−1)(z−3) = 2z² − 7z + 3
        let rep = qi_roots(&upoly(&[3, -7, 2]));
        let mut roots: Vec<Scalar> = rep.roots.iter().map(|(r, _)| r.clone()).collect();
        roots.sort();
        assert_eq!(roots, vec![Scalar::from_ratio(1, 2), Scalar::from_int(3)]);

        // (z − (1+i))(z − 2) = z² − (3+i)z + 2+2i
        let p = UPoly::from_coeffs(vec![
            Scalar::from_parts(2, 2),
            Scalar::from_parts(-3, -1),
            Scalar::one(),
        ]);
        let rep = qi_roots(&p);
        let mut roots: Vec<Scalar> = rep.roots.iter().map(|(r, _)| r.clone()).collect();
        roots.sort();
        assert_eq!(roots, vec![Scalar::from_parts(1, 1), Scalar::from_int(2)]);
    }

    #[test]
    fn irreducible_factor_is_reported() {
        // z² − 2 has no ℚ(i) roots
        let rep = qi_roots(&upoly(&[-2, 0, 1]));
        assert!(rep.roots.is_empty());
        assert!(rep.nonlinear_factor_remaining);

        // (z²−2)(z−1): one root found, quadratic factor remains
        let rep = qi_roots(&upoly(&[2, -2, -1, 1]));
        assert_eq!(rep.roots, vec![(Scalar::from_int(1), 1)]);
        assert!(rep.nonlinear_factor_remaining);
    }

    #[test]
    fn zero_roots_are_stripped_not_reported() {
        // z²(z−1)
        let rep = qi_roots(&upoly(&[0, 0, -1, 1]));
        assert_eq!(rep.roots, vec![(Scalar::from_int(1), 1)]);
        assert!(!rep.nonlinear_factor_remaining);
    }
}
