use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::curve::{Curve, Jet};

/// The six profile functions of an invariant Brieskorn metric,
/// `g_t(X,X) = f1²`, `g_t(Y,Y) = f2²`, `g_t(X,Y) = f12`,
/// `g_t(E_i,E_i) = h1²`, `g_t(F_i,F_i) = h2²`, `g_t(E_i,F_i) = h12`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Functions {
    pub f1: Curve,
    pub f2: Curve,
    pub f12: Curve,
    pub h1: Curve,
    pub h2: Curve,
    pub h12: Curve,
}

impl Functions {
    pub fn map(&self, f: impl Fn(&Curve) -> Curve) -> Self {
        Self {
            f1: f(&self.f1),
            f2: f(&self.f2),
            f12: f(&self.f12),
            h1: f(&self.h1),
            h2: f(&self.h2),
            h12: f(&self.h12),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Curve)> {
        [
            ("f1", &self.f1),
            ("f2", &self.f2),
            ("f12", &self.f12),
            ("h1", &self.h1),
            ("h2", &self.h2),
            ("h12", &self.h12),
        ]
        .into_iter()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricProfile {
    pub family: String,
    pub n: usize,
    pub d: u32,
    #[serde(rename = "L")]
    pub length: f64,
    pub functions: Functions,
    /// Declares the `h1 ≡ 1`, `h12 ≡ 0` model. Defaults to `false` in JSON.
    #[serde(default)]
    pub reduced: bool,
    /// Positive root of `t^d + t² = 1`, carried by presets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
}

/// Values and two derivatives of all six functions at `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricJet {
    pub t: f64,
    pub f1: Jet,
    pub f2: Jet,
    pub f12: Jet,
    pub h1: Jet,
    pub h2: Jet,
    pub h12: Jet,
}

impl MetricJet {
    /// Reduced-model jet (`h1 ≡ 1`, `h12 ≡ 0`).
    pub fn reduced(t: f64, f1: Jet, f2: Jet, f12: Jet, h2: Jet) -> Self {
        Self {
            t,
            f1,
            f2,
            f12,
            h1: Jet::constant(1.0),
            h2,
            h12: Jet::constant(0.0),
        }
    }

    /// `δ = 1 − h2²`.
    pub fn delta(&self) -> f64 {
        1.0 - self.h2.v * self.h2.v
    }

    /// `h1 ≡ 1` and `h12 ≡ 0` to second order at this point.
    pub fn is_reduced(&self, tol: f64) -> bool {
        (self.h1.v - 1.0).abs() <= tol
            && self.h1.d1.abs() <= tol
            && self.h1.d2.abs() <= tol
            && self.h12.v.abs() <= tol
            && self.h12.d1.abs() <= tol
            && self.h12.d2.abs() <= tol
    }

    /// `δ′ = −2 h2 h2′`.
    pub fn delta_prime(&self) -> f64 {
        -2.0 * self.h2.v * self.h2.d1
    }
}

impl MetricProfile {
    pub fn new(n: usize, d: u32, length: f64, functions: Functions, reduced: bool) -> Result<Self> {
        let p = Self {
            family: "brieskorn".into(),
            n,
            d,
            length,
            functions,
            reduced,
            t0: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.family != "brieskorn" {
            return Err(Error::Format(format!("unsupported family {:?}", self.family)));
        }
        if self.n < 4 {
            return Err(Error::Format(format!("n = {} < 4", self.n)));
        }
        if self.d < 1 {
            return Err(Error::Format("d must be ≥ 1".into()));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::Format("L must be positive".into()));
        }
        for (name, c) in self.functions.iter() {
            c.validate().map_err(|e| Error::Format(format!("{name}: {e}")))?;
        }
        Ok(())
    }

    pub fn jet(&self, t: f64) -> MetricJet {
        let f = &self.functions;
        MetricJet {
            t,
            f1: f.f1.jet(t),
            f2: f.f2.jet(t),
            f12: f.f12.jet(t),
            h1: f.h1.jet(t),
            h2: f.h2.jet(t),
            h12: f.h12.jet(t),
        }
    }

    /// Rescales so that `h1(0) = 1`: every `f` becomes `t ↦ a·f(t/a)` with `a = 1/h1(0)`.
    pub fn normalize(&self) -> Result<MetricProfile> {
        let h10 = self.functions.h1.jet(0.0).v;
        if h10 <= 0.0 || !h10.is_finite() {
            return Err(Error::DegenerateMetric(format!("h1(0) = {h10} is not positive")));
        }
        let a = 1.0 / h10;
        // f12 and h12 are inner products, i.e. quadratic in the scale like f1²;
        // they rescale as a²·f(t/a).
        let mut functions = self.functions.map(|c| c.rescaled(a));
        functions.f12 = self.functions.f12.rescaled(a).rescaled_value(a);
        functions.h12 = self.functions.h12.rescaled(a).rescaled_value(a);
        Ok(MetricProfile {
            family: self.family.clone(),
            n: self.n,
            d: self.d,
            length: self.length * a,
            functions,
            reduced: self.reduced,
            t0: self.t0,
        })
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.functions.h1.jet(0.0).v - 1.0).abs() <= tol
    }

    /// Checks `h1 ≡ 1`, `h12 ≡ 0` on a uniform grid.
    pub fn reduced_model_holds(&self, tol: f64) -> bool {
        (0..=200).all(|i| {
            let t = self.length * i as f64 / 200.0;
            let j = self.jet(t);
            (j.h1.v - 1.0).abs() <= tol
                && j.h1.d1.abs() <= tol
                && j.h1.d2.abs() <= tol
                && j.h12.v.abs() <= tol
                && j.h12.d1.abs() <= tol
                && j.h12.d2.abs() <= tol
        })
    }

    /// First interior grid point where `g_t` fails to be positive definite.
    pub fn positive_definite_violation(&self, points: usize) -> Option<f64> {
        (1..points).map(|i| self.length * i as f64 / points as f64).find(|&t| {
            let j = self.jet(t);
            let xy = j.f1.v.powi(2) * j.f2.v.powi(2) - j.f12.v.powi(2);
            let ef = j.h1.v.powi(2) * j.h2.v.powi(2) - j.h12.v.powi(2);
            !(xy > 0.0 && ef > 0.0 && j.f1.v.abs() > 0.0 && j.h1.v.abs() > 0.0)
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: MetricProfile = serde_json::from_str(text)
            .map_err(|e| Error::Format(format!("line {} column {}: {e}", e.line(), e.column())))?;
        p.validate()?;
        Ok(p)
    }
}

impl Curve {
    /// Multiplies values (and derivatives) by `c`.
    pub fn rescaled_value(&self, c: f64) -> Curve {
        match self {
            Curve::Poly { coeffs } => Curve::Poly {
                coeffs: coeffs.iter().map(|x| x * c).collect(),
            },
            Curve::Spline { knots, values, derivs, derivs2 } => Curve::Spline {
                knots: knots.clone(),
                values: values.iter().map(|v| v * c).collect(),
                derivs: derivs.iter().map(|v| v * c).collect(),
                derivs2: derivs2.as_ref().map(|d| d.iter().map(|x| x * c).collect()),
            },
        }
    }
}
