//! Deterministic random inputs shared by the integration test targets.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rpcurves::series::Series2;
use rpcurves::vector_field::{TangentMap, VectorField};

pub const N: usize = 12;

/// A random nonzero polynomial with terms of total degree in
/// `min_deg..=max_deg` and integer coefficients in −3..=3.
pub fn random_poly(rng: &mut ChaCha8Rng, min_deg: usize, max_deg: usize) -> Series2 {
    loop {
        let mut terms = Vec::new();
        for d in min_deg..=max_deg {
            for i in 0..=d {
                if rng.gen_range(0..3) == 0 {
                    let c = rng.gen_range(-3..=3i64);
                    if c != 0 {
                        terms.push((i, d - i, c));
                    }
                }
            }
        }
        let s = Series2::from_int_terms(N, &terms);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random field with both components of order ≥ 2 and degree ≤ 3, whose
/// overall order is exactly 2.
pub fn random_order2_field(rng: &mut ChaCha8Rng) -> VectorField {
    loop {
        let x = VectorField::new(random_poly(rng, 2, 3), random_poly(rng, 2, 3));
        if x.order() == Some(2) {
            return x;
        }
    }
}

/// A random map tangent to the identity with polynomial displacement of
/// order ≥ 2 and degree ≤ 3.
pub fn random_tangent_map(rng: &mut ChaCha8Rng) -> TangentMap {
    let p1 = random_poly(rng, 2, 3);
    let p2 = random_poly(rng, 2, 3);
    TangentMap::new(Series2::var_x(N).add(&p1), Series2::var_y(N).add(&p2))
        .expect("displacement of order >= 2 is tangent to the identity")
}
