use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::curve::Curve;
use super::profile::{Functions, MetricProfile};

/// Shape of the randomized profile family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ansatz {
    /// `h1 ≡ 1`, `h12 ≡ 0`.
    #[default]
    Reduced,
    /// Also randomizes `h1` and `h12` within the boundary conditions.
    General,
}

const RETRIES: usize = 30;

/// A polynomial profile meeting every boundary clause by construction.
///
/// In `s = t/L`: `h2 = (1−s²)(1+bs²+cs³)`, `f1 = (√2/d)·t·(1+ps+qs²)`,
/// `f2 = a(1+us+vs²)`, `f12 = w·s²`; the general ansatz adds
/// `h1 = 1+e(3s²−2s³)` and `h12 = w′s²(1−s)²`.
pub fn random_admissible(n: usize, d: u32, seed: u64, ansatz: Ansatz) -> Result<MetricProfile> {
    if d < 3 {
        return Err(Error::Input(format!("random profiles need d ≥ 3 (got {d})")));
    }
    if n < 4 {
        return Err(Error::Input(format!("random profiles need n ≥ 4 (got {n})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u = |lo: f64, hi: f64| rng.random_range(lo..hi);
    let length = u(0.8, 1.6);
    let (b, c) = (u(-0.5, 0.5), u(-0.3, 0.3));
    let (p, q) = (u(-0.3, 0.3), u(-0.3, 0.3));
    let (a0, us, vs) = (u(0.6, 1.4), u(-0.3, 0.3), u(-0.3, 0.3));
    let mut w = u(-0.3, 0.3);
    let (e, mut w2) = (u(-0.3, 0.3), u(-0.2, 0.2));
    let slope = std::f64::consts::SQRT_2 / f64::from(d);

    let in_t = |s_coeffs: &[f64]| -> Curve {
        Curve::poly(s_coeffs.iter().enumerate().map(|(j, c)| c / length.powi(j as i32)).collect())
    };
    let h2 = in_t(&poly_mul(&[1.0, 0.0, -1.0], &[1.0, 0.0, b, c]));
    // f1 = slope·L·s·(1 + ps + qs²)
    let f1 = in_t(&[0.0, slope * length, slope * length * p, slope * length * q]);
    let f2 = in_t(&[a0, a0 * us, a0 * vs]);
    let (h1, general) = match ansatz {
        Ansatz::Reduced => (Curve::constant(1.0), false),
        Ansatz::General => (in_t(&[1.0, 0.0, 3.0 * e, -2.0 * e]), true),
    };

    for _ in 0..RETRIES {
        let f12 = in_t(&[0.0, 0.0, w]);
        let h12 = if general {
            in_t(&poly_mul(&[0.0, 0.0, w2], &[1.0, -2.0, 1.0]))
        } else {
            Curve::constant(0.0)
        };
        let functions = Functions {
            f1: f1.clone(),
            f2: f2.clone(),
            f12,
            h1: h1.clone(),
            h2: h2.clone(),
            h12,
        };
        let profile = MetricProfile::new(n, d, length, functions, !general)?;
        if profile.positive_definite_violation(super::PD_GRID).is_none() {
            return Ok(profile);
        }
        w *= 0.5;
        w2 *= 0.5;
    }
    Err(Error::Generation(format!(
        "seed {seed}: no positive definite profile after {RETRIES} retries"
    )))
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::smoothness_check;

    #[test]
    fn seed_one_passes_smoothness() {
        let p = random_admissible(4, 3, 1, Ansatz::Reduced).unwrap();
        assert!(smoothness_check(&p, 1e-12).passed);
        assert!(p.reduced_model_holds(0.0));
    }

    #[test]
    fn deterministic_and_exact_slope() {
        let a = random_admissible(5, 4, 7, Ansatz::General).unwrap();
        let b = random_admissible(5, 4, 7, Ansatz::General).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.jet(0.0).f1.d1, 2f64.sqrt() / 4.0);
        assert!(smoothness_check(&a, 1e-12).passed);
    }

    #[test]
    fn rejects_small_d() {
        assert!(random_admissible(4, 2, 0, Ansatz::Reduced).is_err());
    }
}
