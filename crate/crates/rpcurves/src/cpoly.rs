//! Exact polynomial arithmetic with no truncation.
//!
//! The series kernel ([`crate::series`]) works on jets with a hard degree
//! cap. Intersection multiplicities and branch enumeration instead need
//! honest polynomial arithmetic whose intermediate degrees are allowed to
//! grow (Euclidean reduction, coordinate substitutions `x = z^q,
//! y = x^p(c+y)`), so they run on the types here and convert at the
//! boundary. Internal only.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{Exp2, Series1, Series2};
use std::collections::BTreeMap;

/// Dense univariate polynomial over [`Scalar`].
/// Canonical form: no trailing zero coefficients (zero = empty vec).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly(Vec<Scalar>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn from_coeffs(mut v: Vec<Scalar>) -> Self {
        while v.last().map(Scalar::is_zero).unwrap_or(false) {
            v.pop();
        }
        UPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree of a nonzero polynomial.
    pub fn deg(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    /// Order (lowest nonzero exponent) of a nonzero polynomial.
    pub fn ord(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.0.last()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    #[cfg(test)]
    pub fn eval(&self, z: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// Divide by `z^k`; errors if not divisible.
    pub fn divide_z_pow(&self, k: usize) -> Result<UPoly> {
        if self.0.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::domain("cpoly", "polynomial not divisible by z^k"));
        }
        if self.0.len() <= k {
            return Ok(UPoly::zero());
        }
        Ok(UPoly::from_coeffs(self.0[k..].to_vec()))
    }

    /// Synthetic division by `(z − r)`. Returns the quotient if `r` is a
    /// root (zero remainder), `None` otherwise.
    pub fn div_by_root(&self, r: &Scalar) -> Option<UPoly> {
        if self.is_zero() {
            return None;
        }
        let mut q = vec![Scalar::zero(); self.0.len() - 1];
        let mut carry = Scalar::zero();
        for k in (0..self.0.len()).rev() {
            let val = &self.0[k] + &(&carry * r);
            if k == 0 {
                if val.is_zero() {
                    return Some(UPoly::from_coeffs(q));
                }
                return None;
            }
            q[k - 1] = val.clone();
            carry = val;
        }
        unreachable!()
    }

}

/// Sparse bivariate polynomial over [`Scalar`], no degree cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPoly(BTreeMap<Exp2, Scalar>);

impl BPoly {
    pub fn zero() -> Self {
        BPoly(BTreeMap::new())
    }

    pub fn from_series2(s: &Series2) -> Self {
        BPoly(s.iter().map(|(e, c)| (*e, c.clone())).collect())
    }

    /// Jet of total degree ≤ `trunc`; `exact` says whether the polynomial
    /// fit entirely (callers combine it with the provenance of `self`).
    pub fn to_series2(&self, trunc: usize) -> (Series2, bool) {
        let terms: Vec<(usize, usize, Scalar)> = self
            .0
            .iter()
            .map(|(e, c)| (e.i, e.j, c.clone()))
            .collect();
        let dropped = self.0.keys().any(|e| e.total() > trunc);
        (Series2::from_terms(trunc, &terms), !dropped)
    }

    pub fn monomial(c: Scalar, i: usize, j: usize) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Exp2::new(i, j), c);
        }
        BPoly(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exp2, &Scalar)> {
        self.0.iter()
    }

    pub fn constant_term(&self) -> Scalar {
        self.0
            .get(&Exp2::new(0, 0))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.0.keys().map(Exp2::total).max()
    }

    pub fn ord(&self) -> Option<usize> {
        self.0.keys().map(Exp2::total).min()
    }

    /// Largest power of `x` dividing the polynomial (`None` when zero).
    pub fn x_content(&self) -> Option<usize> {
        self.0.keys().map(|e| e.i).min()
    }

    pub fn y_content(&self) -> Option<usize> {
        self.0.keys().map(|e| e.j).min()
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

    pub fn add(&self, rhs: &BPoly) -> BPoly {
        let mut m = self.0.clone();
        for (e, c) in rhs.0.iter() {
            Self::insert_add(&mut m, *e, c);
        }
        BPoly(m)
    }

    pub fn sub(&self, rhs: &BPoly) -> BPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> BPoly {
        BPoly(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    pub fn mul(&self, rhs: &BPoly) -> BPoly {
        let mut m = BTreeMap::new();
        for (ea, ca) in self.0.iter() {
            for (eb, cb) in rhs.0.iter() {
                Self::insert_add(&mut m, Exp2::new(ea.i + eb.i, ea.j + eb.j), &(ca * cb));
            }
        }
        BPoly(m)
    }

    pub fn mul_monomial(&self, c: &Scalar, i: usize, j: usize) -> BPoly {
        if c.is_zero() {
            return BPoly::zero();
        }
        BPoly(
            self.0
                .iter()
                .map(|(e, k)| (Exp2::new(e.i + i, e.j + j), k * c))
                .collect(),
        )
    }

    /// Restriction to `y = 0` as a univariate polynomial in `x`.
    pub fn eval_y0(&self) -> UPoly {
        let mut v: Vec<Scalar> = Vec::new();
        for (e, c) in self.0.iter() {
            if e.j != 0 {
                continue;
            }
            if v.len() <= e.i {
                v.resize(e.i + 1, Scalar::zero());
            }
            v[e.i] = c.clone();
        }
        UPoly::from_coeffs(v)
    }

    /// Divide by `y^k`; panics if not divisible (call after `y_content`).
    pub fn divide_y_pow(&self, k: usize) -> BPoly {
        BPoly(
            self.0
                .iter()
                .map(|(e, c)| {
                    assert!(e.j >= k, "not divisible by y^{k}");
                    (Exp2::new(e.i, e.j - k), c.clone())
                })
                .collect(),
        )
    }

    pub fn divide_x_pow(&self, k: usize) -> BPoly {
        BPoly(
            self.0
                .iter()
                .map(|(e, c)| {
                    assert!(e.i >= k, "not divisible by x^{k}");
                    (Exp2::new(e.i - k, e.j), c.clone())
                })
                .collect(),
        )
    }

    /// The positive rational that clears every denominator among the given
    /// coefficients and divides out their integer content; `None` when they
    /// are all zero or already reduced.
    fn content_scale<'a>(
        coeffs: impl Iterator<Item = &'a Scalar> + Clone,
    ) -> Option<Scalar> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_rational::BigRational;
        use num_traits::{One, Zero};
        let mut den_lcm = BigInt::one();
        for c in coeffs.clone() {
            for part in [c.re(), c.im()] {
                if !part.is_zero() {
                    den_lcm = den_lcm.lcm(part.denom());
                }
            }
        }
        let mut num_gcd = BigInt::zero();
        for c in coeffs {
            for part in [c.re(), c.im()] {
                if !part.is_zero() {
                    num_gcd = num_gcd.gcd(&(part.numer() * (&den_lcm / part.denom())));
                }
            }
        }
        if num_gcd.is_zero() || (num_gcd.is_one() && den_lcm.is_one()) {
            return None;
        }
        Some(Scalar::new(
            BigRational::new(den_lcm, num_gcd),
            BigRational::zero(),
        ))
    }

    fn scaled(&self, q: &Scalar) -> BPoly {
        BPoly(self.0.iter().map(|(e, c)| (*e, c * q)).collect())
    }

    /// Scale by the positive rational that clears every denominator and
    /// divides out the integer content of the coefficients. Scaling by a
    /// nonzero constant changes neither the zero set nor the ideal, but it
    /// keeps coefficient growth linear across repeated eliminations.
    pub fn normalize_content(&self) -> BPoly {
        match Self::content_scale(self.0.values()) {
            Some(q) => self.scaled(&q),
            None => self.clone(),
        }
    }

    /// Rescale a pair by one common positive rational clearing denominators
    /// and integer content. The joint factor preserves any locus defined by
    /// combining the two (for a vector field: its integral curves), which
    /// per-polynomial scaling would not.
    pub fn normalize_pair_content(a: &BPoly, b: &BPoly) -> (BPoly, BPoly) {
        match Self::content_scale(a.0.values().chain(b.0.values())) {
            Some(q) => (a.scaled(&q), b.scaled(&q)),
            None => (a.clone(), b.clone()),
        }
    }

    pub fn swap_vars(&self) -> BPoly {
        BPoly(
            self.0
                .iter()
                .map(|(e, c)| (Exp2::new(e.j, e.i), c.clone()))
                .collect(),
        )
    }

    /// The substitution at the heart of the branch recursions:
    /// `x ↦ x^q`, `y ↦ x^p·(c + y)`.
    ///
    /// Each term `a·x^i y^j` maps to `a·x^{qi+pj}·(c+y)^j`; the powers
    /// `(c+y)^j` are built incrementally.
    pub fn transform(&self, q: usize, p: usize, c: &Scalar) -> BPoly {
        // Group terms by j.
        let mut by_j: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (e, coef) in self.0.iter() {
            by_j.entry(e.j).or_default().push((e.i, coef));
        }
        let c_plus_y = {
            let mut m = BTreeMap::new();
            if !c.is_zero() {
                m.insert(Exp2::new(0, 0), c.clone());
            }
            m.insert(Exp2::new(0, 1), Scalar::one());
            BPoly(m)
        };
        let mut out = BPoly::zero();
        let mut pow = BPoly::monomial(Scalar::one(), 0, 0); // (c+y)^j
        let mut last_j = 0usize;
        for (j, terms) in by_j.iter() {
            while last_j < *j {
                pow = pow.mul(&c_plus_y);
                last_j += 1;
            }
            for (i, coef) in terms.iter() {
                out = out.add(&pow.mul_monomial(coef, q * i + p * j, 0));
            }
        }
        out
    }

    /// Substitute a univariate series for both variables:
    /// `self(zx(z), zy(z))` computed exactly (inputs are polynomials and
    /// exact `Series1` values).
    pub fn eval_series(&self, zx: &Series1, zy: &Series1) -> Series1 {
        let mut by_j: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (e, coef) in self.0.iter() {
            by_j.entry(e.j).or_default().push((e.i, coef));
        }
        let mut out = Series1::zero();
        let mut ypow = Series1::one();
        let mut last_j = 0usize;
        for (j, terms) in by_j.iter() {
            while last_j < *j {
                ypow = ypow.mul(zy);
                last_j += 1;
            }
            let mut xpow_cache: BTreeMap<usize, Series1> = BTreeMap::new();
            xpow_cache.insert(0, Series1::one());
            for (i, coef) in terms.iter() {
                let xp = Self::series_pow(zx, *i, &mut xpow_cache);
                out = out.add(&xp.mul(&ypow).scale(coef));
            }
        }
        out
    }

    fn series_pow(base: &Series1, k: usize, cache: &mut BTreeMap<usize, Series1>) -> Series1 {
        if let Some(v) = cache.get(&k) {
            return v.clone();
        }
        let prev = Self::series_pow(base, k - 1, cache);
        let v = prev.mul(base);
        cache.insert(k, v.clone());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upoly_basics() {
        let p = UPoly::from_coeffs(vec![
            Scalar::from_int(0),
            Scalar::from_int(2),
            Scalar::from_int(1),
        ]); // 2z + z²
        assert_eq!(p.deg(), Some(2));
        assert_eq!(p.ord(), Some(1));
        let q = p.divide_z_pow(1).unwrap();
        assert_eq!(q.coeff(0), Scalar::from_int(2));
        assert!(p.divide_z_pow(2).is_err());
        assert_eq!(p.eval(&Scalar::from_int(3)), Scalar::from_int(15));
    }

    #[test]
    fn upoly_root_division() {
        // (z−1)(z−2) = z² − 3z + 2
        let p = UPoly::from_coeffs(vec![
            Scalar::from_int(2),
            Scalar::from_int(-3),
            Scalar::from_int(1),
        ]);
        let q = p.div_by_root(&Scalar::from_int(1)).unwrap();
        assert_eq!(q, UPoly::from_coeffs(vec![Scalar::from_int(-2), Scalar::from_int(1)]));
        assert!(p.div_by_root(&Scalar::from_int(5)).is_none());
    }

    #[test]
    fn bpoly_transform_matches_hand_expansion() {
        // F = y² − x³ under x ↦ x², y ↦ x³(1+y): x⁶(2y + y²)
        let f = BPoly::from_series2(&Series2::from_int_terms(8, &[(0, 2, 1), (3, 0, -1)]));
        let t = f.transform(2, 3, &Scalar::one());
        let expected = BPoly::from_series2(&Series2::from_int_terms(8, &[(6, 1, 2), (6, 2, 1)]));
        assert_eq!(t, expected);
        assert_eq!(t.x_content(), Some(6));
        assert_eq!(t.divide_x_pow(6).y_content(), Some(1));
    }

    #[test]
    fn bpoly_eval_series() {
        // F = y² − x³ on (z², z³) vanishes identically.
        let f = BPoly::from_series2(&Series2::from_int_terms(8, &[(0, 2, 1), (3, 0, -1)]));
        let r = f.eval_series(
            &Series1::from_int_terms(&[(2, 1)]),
            &Series1::from_int_terms(&[(3, 1)]),
        );
        assert!(r.is_zero());
    }
}
