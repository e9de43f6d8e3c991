//! Deterministic random fixtures for tests and benchmarks.
//!
//! All generators take an explicit RNG; [`default_rng`] seeds a ChaCha stream
//! from the `SELFCOMM_SEED` environment variable (decimal u64) when set, so
//! fixture-driven suites can be replayed.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::distributions::{Distribution, Uniform};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::equiv::AssemblyTuple;
use crate::ii1::SpectralElement;
use crate::matrix::{CMatrix, HermitianMatrix, Unitary};
use crate::spectral::Projection;

const DEFAULT_SEED: u64 = 0x5E1F_C0DE;

/// RNG seeded from `SELFCOMM_SEED` when present, a fixed default otherwise.
pub fn default_rng() -> ChaCha8Rng {
    let seed = std::env::var("SELFCOMM_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(DEFAULT_SEED);
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; avoids the rand_distr dependency for one distribution.
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (-2.0 * u.ln()).sqrt() * v.cos()
}

/// Random matrix with independent complex Gaussian entries.
pub fn random_complex_matrix<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(standard_normal(rng), standard_normal(rng))
    })
}

/// Random Hermitian matrix `(G + G*)/2` with Gaussian `G`.
pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> HermitianMatrix {
    let g = random_complex_matrix(n, rng);
    let h = (&g + g.adjoint()) * Complex64::new(0.5, 0.0);
    HermitianMatrix::from_matrix_unchecked(h)
}

/// Random Hermitian matrix recentered to trace zero.
pub fn random_traceless_hermitian<R: Rng>(n: usize, rng: &mut R) -> HermitianMatrix {
    let h = random_hermitian(n, rng);
    h.shifted(-h.normalized_trace())
}

/// Haar-ish random unitary from the QR factor of a Gaussian matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> Unitary {
    let q = random_complex_matrix(n, rng).qr().q();
    Unitary::from_matrix_unchecked(q)
}

/// Random spectral element with up to `max_atoms` atoms: well-separated
/// values, weights bounded away from zero.
pub fn random_element<R: Rng>(max_atoms: usize, rng: &mut R) -> SpectralElement {
    let m = rng.gen_range(1..=max_atoms.max(1));
    let mut values: Vec<f64> = Vec::with_capacity(m);
    let span = Uniform::new(-2.0, 2.0);
    while values.len() < m {
        let v = span.sample(rng);
        if values.iter().all(|&u| (u - v).abs() > 1e-3) {
            values.push(v);
        }
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut weights: Vec<f64> = (0..m).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    SpectralElement::new(values.into_iter().zip(weights).collect())
        .expect("generated atoms are valid")
}

/// Random element recentered to quasitrace zero.
pub fn random_traceless_element<R: Rng>(max_atoms: usize, rng: &mut R) -> SpectralElement {
    let e = random_element(max_atoms, rng);
    let e = e.shifted(-e.quasitrace());
    e.shifted(-e.quasitrace())
}

/// Random element whose weights are integer multiples of `1/denominator`.
pub fn rational_weight_element<R: Rng>(
    denominator: usize,
    max_atoms: usize,
    rng: &mut R,
) -> SpectralElement {
    let m = rng.gen_range(1..=max_atoms.max(1)).min(denominator);
    // m distinct cut points split `denominator` into m positive integers
    let mut cuts: Vec<usize> = Vec::new();
    while cuts.len() < m - 1 {
        let c = rng.gen_range(1..denominator);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(denominator);
    let mut values: Vec<f64> = Vec::with_capacity(m);
    while values.len() < m {
        let v = rng.gen_range(-2.0..2.0);
        if values.iter().all(|&u| (u - v).abs() > 1e-3) {
            values.push(v);
        }
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let atoms: Vec<(f64, f64)> = values
        .into_iter()
        .zip(cuts.windows(2))
        .map(|(v, w)| (v, (w[1] - w[0]) as f64 / denominator as f64))
        .collect();
    SpectralElement::new(atoms).expect("generated atoms are valid")
}

fn nonzero_value<R: Rng>(rng: &mut R) -> f64 {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    sign * rng.gen_range(0.5..2.0)
}

/// Random valid assembly tuple, built diagonally on disjoint slot blocks.
///
/// The slot layout is shuffled so supports are scattered, not contiguous:
/// `A1`/`B1` share a value multiset on disjoint blocks outside the corner,
/// `B2` extends outside values into the corner by exactly `Y1 + Y2`, `A2`
/// matches `B2`'s full multiset, and the `S` blocks mirror the `Y` blocks
/// with negated values so `S1 + S2` is spectrally symmetric.
pub fn random_assembly_tuple<R: Rng>(rng: &mut R) -> AssemblyTuple {
    let k1 = rng.gen_range(1..=2usize);
    let k2 = rng.gen_range(1..=2usize);
    let y = rng.gen_range(1..=2usize);
    let pad = rng.gen_range(1..=3usize);
    let n = 2 * k1 + 2 * k2 + 6 * y + pad;

    let mut slots: Vec<usize> = (0..n).collect();
    // Fisher-Yates shuffle
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        slots.swap(i, j);
    }
    let mut take = |count: usize| -> Vec<usize> { slots.drain(..count).collect() };

    let a1_slots = take(k1);
    let b1_slots = take(k1);
    let a2_slots = take(k2 + 2 * y);
    let b2_out_slots = take(k2);
    let y1_slots = take(y);
    let y2_slots = take(y);
    let s1_slots = take(y);
    let s2_slots = take(y);
    // corner: the Y/S blocks plus any leftover padding slots
    let mut corner_slots: Vec<usize> = Vec::new();
    corner_slots.extend(&y1_slots);
    corner_slots.extend(&y2_slots);
    corner_slots.extend(&s1_slots);
    corner_slots.extend(&s2_slots);
    corner_slots.extend(slots.iter().copied());

    let va1: Vec<f64> = (0..k1).map(|_| nonzero_value(rng)).collect();
    let vb2: Vec<f64> = (0..k2).map(|_| nonzero_value(rng)).collect();
    let vy: Vec<f64> = (0..y).map(|_| nonzero_value(rng)).collect();

    let place = |pairs: Vec<(usize, f64)>| -> HermitianMatrix {
        let mut diag = vec![0.0; n];
        for (s, v) in pairs {
            diag[s] = v;
        }
        HermitianMatrix::from_real_diagonal(&diag)
    };
    let zip = |slots: &[usize], vals: &[f64]| -> Vec<(usize, f64)> {
        slots.iter().copied().zip(vals.iter().copied()).collect()
    };

    let a1 = place(zip(&a1_slots, &va1));
    let b1 = place(zip(&b1_slots, &va1));
    let y1 = place(zip(&y1_slots, &vy));
    let neg_vy: Vec<f64> = vy.iter().map(|v| -v).collect();
    let y2 = place(zip(&y2_slots, &neg_vy));
    let s1 = place(zip(&s1_slots, &vy));
    let s2 = place(zip(&s2_slots, &neg_vy));

    // B2 = outside block plus (Y1 + Y2) inside the corner
    let mut b2_pairs = zip(&b2_out_slots, &vb2);
    b2_pairs.extend(zip(&y1_slots, &vy));
    b2_pairs.extend(zip(&y2_slots, &neg_vy));
    let b2 = place(b2_pairs);

    // A2 matches B2's full nonzero multiset on its own block
    let mut va2 = vb2.clone();
    va2.extend(vy.iter().copied());
    va2.extend(neg_vy.iter().copied());
    let a2 = place(zip(&a2_slots, &va2));

    AssemblyTuple {
        a1,
        a2,
        b1,
        b2,
        y1,
        y2,
        s1,
        s2,
        corner: Projection::coordinate(n, &corner_slots),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::validate_tuple;
    use crate::tolerance::Tolerances;

    #[test]
    fn hermitian_fixture_is_hermitian_and_traceless() {
        let mut rng = rng_from_seed(1);
        let x = random_traceless_hermitian(8, &mut rng);
        assert!(x.trace().abs() < 1e-12);
        assert!(crate::matrix::hermiticity_deviation(x.matrix()) < 1e-14);
    }

    #[test]
    fn element_fixtures_are_valid() {
        let mut rng = rng_from_seed(2);
        for _ in 0..50 {
            let e = random_traceless_element(10, &mut rng);
            assert!(e.quasitrace().abs() < 1e-12);
            let r = rational_weight_element(64, 6, &mut rng);
            let sum: f64 = r.atoms().iter().map(|a| a.weight).sum();
            assert!((sum - 1.0).abs() < 1e-12);
            for a in r.atoms() {
                let k = a.weight * 64.0;
                assert!((k - k.round()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn generated_tuples_validate() {
        let mut rng = rng_from_seed(3);
        for _ in 0..20 {
            let t = random_assembly_tuple(&mut rng);
            let report = validate_tuple(&t, &Tolerances::default()).unwrap();
            assert!(report.pass, "{report:?}");
        }
    }

    #[test]
    fn seeded_rng_is_reproducible() {
        let a = random_hermitian(4, &mut rng_from_seed(7));
        let b = random_hermitian(4, &mut rng_from_seed(7));
        assert_eq!(a, b);
    }
}
