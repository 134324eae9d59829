//! One checker per inequality. Each builds the objects involved, evaluates
//! both sides and returns a [`LemmaReport`].
//!
//! Implicit constants become entries of [`Constants`]; reports record the
//! value used and, where it is meaningful, the smallest value that would
//! have passed. Quantities entering a check as an upper bound use the
//! conservative end of their certificate (and vice versa), so a pass never
//! leans on the certificate radius.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid;
use crate::report::Provenance;
use crate::trigpoly::{min_norm, Coeff, FloatPoly, MinCertificate, TrigPoly, DEFAULT_TOL};

mod calculus;
mod cube;
mod general;
mod structure;
mod xbounds;

pub use calculus::{check_conv_min, check_kconv, check_min_to_l1};
pub use cube::{
    build_ft_gt, check_cube_inequality, check_hh_trick, check_l1_bound, cube_hh_instance, HhInstance,
};
pub use general::{
    build_general_ft, check_general_cube, check_holder_energy, check_vandermonde_extraction,
    GeneralCosinePoly, GeneralFt,
};
pub use structure::{ap_witness, check_ap_bound, check_roth, check_ruzsa_witness};
pub use xbounds::check_x_bounds;

/// Named values for the implicit constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// `‖Q₂‖_∞ ≤ c₂K³`.
    pub c2: f64,
    /// `O(K³)` term of the cube inequality: `c₃K³`.
    pub c3: f64,
    /// Longest progression: `|P| ≤ C_ap·K²`.
    pub c_ap: f64,
    /// `‖1̂_{B_t}‖₁ ≤ C_l1·‖1̂_A‖₁³`.
    pub c_l1: f64,
    /// `‖1̂_{B_t} - 1̂_{-B_t}‖₁, ‖1̂_{C_t} - 1̂_{-C_t}‖₁ ≤ C'_l1·L²`.
    pub c_l1_prime: f64,
    /// Upper bracket for `X`.
    pub c_a: f64,
    /// Lower bracket for `X`.
    pub c_b: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            c2: crate::gridfn::DEFAULT_C2,
            c3: 128.0,
            c_ap: 16.0,
            c_l1: 8.0,
            c_l1_prime: 8.0,
            c_a: 256.0,
            c_b: 256.0,
        }
    }
}

impl Constants {
    pub const NAMES: [&'static str; 7] = ["c2", "c3", "C_ap", "C_l1", "C'_l1", "C_a", "C_b"];

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "c2" => &mut self.c2,
            "c3" => &mut self.c3,
            "C_ap" => &mut self.c_ap,
            "C_l1" => &mut self.c_l1,
            "C'_l1" => &mut self.c_l1_prime,
            "C_a" => &mut self.c_a,
            "C_b" => &mut self.c_b,
            _ => return None,
        })
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Invalid(format!("constant {name} must be positive, got {value}")));
        }
        let slot = self.slot(name).ok_or_else(|| {
            Error::Invalid(format!(
                "unknown constant {name}; expected one of {}",
                Self::NAMES.join(", ")
            ))
        })?;
        *slot = value;
        Ok(())
    }

    pub fn as_map(&self) -> BTreeMap<String, f64> {
        let mut copy = self.clone();
        Self::NAMES
            .iter()
            .map(|n| (n.to_string(), *copy.slot(n).unwrap()))
            .collect()
    }
}

/// Settings shared by all checkers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    /// Certificate tolerance for `min_norm`.
    pub tol: f64,
    /// Grid checks use `grid_factor · degree` points (rounded up to a power of two).
    pub grid_factor: usize,
    pub constants: Constants,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol: DEFAULT_TOL,
            grid_factor: 64,
            constants: Constants::default(),
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if self.grid_factor < 16 {
            return Err(Error::Invalid(format!(
                "grid factor must be at least 16, got {}",
                self.grid_factor
            )));
        }
        Ok(())
    }

    /// Grid size for functions of the given degree.
    pub fn grid_size(&self, degree: u64) -> usize {
        grid::pow2_at_least((self.grid_factor * degree.max(1) as usize).max(1024))
    }
}

pub(crate) fn require_mean_zero<C: Coeff>(f: &TrigPoly<C>) -> Result<()> {
    let mean = f.mean().to_c64().norm();
    if mean > 1e-12 * f.abs_sum().max(1.0) {
        return Err(Error::NotMeanZero(mean));
    }
    Ok(())
}

pub(crate) fn require_real<C: Coeff>(f: &TrigPoly<C>) -> Result<()> {
    if f.is_real() {
        Ok(())
    } else {
        Err(Error::NotRealValued)
    }
}

/// Certified `‖f‖_min` for a real polynomial: `(low, high, cert)` with
/// `low ≤ ‖f‖_min ≤ high`.
pub(crate) fn min_norm_bracket<C: Coeff>(f: &TrigPoly<C>, tol: f64) -> Result<(f64, f64, MinCertificate)> {
    let cert = min_norm(f, tol)?;
    Ok((-cert.upper(), -cert.lower, cert))
}

/// Outcome of certifying `|P₁(x)| ≤ P₂(x) + L` for all `x`.
#[derive(Clone, Debug)]
pub(crate) struct AbsBound {
    /// Certified lower bound for `min_x (P₂ + L - |P₁|)`.
    pub slack: f64,
    pub certificates: Vec<MinCertificate>,
    pub provenance: Provenance,
}

/// When `P₁` is real or purely imaginary, `|P₁| ≤ P₂ + L` is equivalent to
/// `P₂ ± W + L ≥ 0` with `W = P₁` or `W = iP₁` real, and both minima are
/// certified. Otherwise the check is done on a grid with Lipschitz slack.
pub(crate) fn certify_abs_bound(p1: &FloatPoly, p2: &FloatPoly, l: f64, cfg: &Config) -> Result<AbsBound> {
    require_real(p2)?;
    let i = Complex64::new(0.0, 1.0);
    let w = if p1.is_real() {
        Some(p1.clone())
    } else {
        let rotated = p1.scale(i);
        rotated.is_real().then_some(rotated)
    };
    if let Some(w) = w {
        let lo = min_norm(&(p2 - &w), cfg.tol)?;
        let hi = min_norm(&(p2 + &w), cfg.tol)?;
        return Ok(AbsBound {
            slack: l + lo.lower.min(hi.lower),
            certificates: vec![lo, hi],
            provenance: Provenance::Certified,
        });
    }
    let degree = p1.degree().max(p2.degree());
    let size = cfg.grid_size(degree);
    let s1 = p1.samples(size)?;
    let s2 = p2.samples(size)?;
    let grid_min = s1
        .iter()
        .zip(&s2)
        .map(|(a, b)| b.re - a.norm())
        .fold(f64::INFINITY, f64::min);
    let lipschitz = 2.0 * PI * degree as f64 * (p1.abs_sum() + p2.abs_sum());
    Ok(AbsBound {
        slack: l + grid_min - lipschitz / (2.0 * size as f64),
        certificates: Vec::new(),
        provenance: Provenance::Grid,
    })
}
