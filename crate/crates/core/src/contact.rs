//! Toric contact forms `λ = a1(θ) dx + a2(θ) dy` on T³.
//!
//! With `a × a' := a1 a2' − a2 a1'`, the form is a positive contact form iff
//! `a × a' > 0` everywhere, and its Reeb field is
//! `(a2' ∂x − a1' ∂y) / (a × a')`. The quantity `a' × a''` controls the
//! sign of the rotation of the linearized return map along a Morse–Bott
//! torus, through `r = a' × a'' / (a × a')²`.
//!
//! Positivity is certified on a grid: the minimum of `a × a'` over
//! `grid_size` equally spaced points must exceed `(2π / grid_size) · Lip`,
//! where `Lip` bounds `|(a × a')'|` from the coefficients.

use std::f64::consts::PI;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::ContactError;
use crate::trig::{rat, TrigPoly};

pub const DEFAULT_GRID_SIZE: usize = 4096;

/// Relative threshold below which a sampled quantity counts as zero.
pub const SIGN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    /// Sign of `value`, treating `|value| <= SIGN_TOLERANCE · scale` as zero.
    pub fn of(value: f64, scale: f64) -> Sign {
        let tol = SIGN_TOLERANCE * scale.max(f64::MIN_POSITIVE);
        if value > tol {
            Sign::Positive
        } else if value < -tol {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.as_i8())
    }
}

/// Outcome of the grid positivity certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub ok: bool,
    /// Minimum of `a × a'` over the verification grid.
    pub min_cross: f64,
    /// Grid angle where the minimum is attained.
    pub worst_theta: f64,
    /// `(2π / grid_size) · Lip(a × a')`; `min_cross` must exceed this.
    pub margin: f64,
    /// Minimum of `|a|` over the grid.
    pub min_norm: f64,
}

#[derive(Clone)]
pub struct ToricContactForm {
    a1: TrigPoly,
    a2: TrigPoly,
    grid_size: usize,
    da1: TrigPoly,
    da2: TrigPoly,
    dda1: TrigPoly,
    dda2: TrigPoly,
    cross: TrigPoly,
    curvature: TrigPoly,
    report: ValidationReport,
}

impl ToricContactForm {
    /// Builds the form and rejects it unless the positivity certificate holds.
    pub fn new(a1: TrigPoly, a2: TrigPoly) -> Result<Self, ContactError> {
        Self::with_grid_size(a1, a2, DEFAULT_GRID_SIZE)
    }

    pub fn with_grid_size(a1: TrigPoly, a2: TrigPoly, grid_size: usize) -> Result<Self, ContactError> {
        let form = Self::unchecked(a1, a2, grid_size)?;
        if form.report.ok {
            Ok(form)
        } else {
            Err(ContactError::NotContact {
                min_cross: form.report.min_cross,
                theta: form.report.worst_theta,
                margin: form.report.margin,
            })
        }
    }

    /// Builds the pair without rejecting it; [`validate_contact`] reports on
    /// it and every downstream operation refuses a form whose report is not ok.
    pub fn unchecked(a1: TrigPoly, a2: TrigPoly, grid_size: usize) -> Result<Self, ContactError> {
        if grid_size == 0 {
            return Err(ContactError::EmptyGrid);
        }
        let da1 = a1.derivative();
        let da2 = a2.derivative();
        let dda1 = da1.derivative();
        let dda2 = da2.derivative();
        let cross = &(&a1 * &da2) - &(&a2 * &da1);
        let curvature = &(&da1 * &dda2) - &(&da2 * &dda1);
        let mut form = ToricContactForm {
            a1,
            a2,
            grid_size,
            da1,
            da2,
            dda1,
            dda2,
            cross,
            curvature,
            report: ValidationReport {
                ok: false,
                min_cross: f64::NAN,
                worst_theta: 0.0,
                margin: f64::NAN,
                min_norm: f64::NAN,
            },
        };
        form.report = form.certify();
        Ok(form)
    }

    /// The standard form `λ0 = cosθ dx + sinθ dy`.
    pub fn lambda0() -> Self {
        Self::new(TrigPoly::cos(1, rat(1, 1)), TrigPoly::sin(1, rat(1, 1)))
            .expect("λ0 is a contact form")
    }

    /// The elliptical path `a = (p cosθ, q sinθ)`, contact for `p q > 0`.
    pub fn ellipse(p: BigRational, q: BigRational) -> Result<Self, ContactError> {
        Self::new(TrigPoly::cos(1, p), TrigPoly::sin(1, q))
    }

    fn certify(&self) -> ValidationReport {
        let n = self.grid_size;
        let mut min_cross = f64::INFINITY;
        let mut worst_theta = 0.0;
        let mut min_norm = f64::INFINITY;
        for k in 0..n {
            let theta = grid_theta(k, n);
            let c = self.cross.eval(theta);
            if c < min_cross {
                min_cross = c;
                worst_theta = theta;
            }
            min_norm = min_norm.min(self.a1.eval(theta).hypot(self.a2.eval(theta)));
        }
        let margin = 2.0 * PI / n as f64 * self.cross.lipschitz_bound();
        ValidationReport { ok: min_cross > margin && min_norm > 0.0, min_cross, worst_theta, margin, min_norm }
    }

    pub fn a1(&self) -> &TrigPoly {
        &self.a1
    }

    pub fn a2(&self) -> &TrigPoly {
        &self.a2
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    /// Same path certified on a different grid.
    pub fn regridded(&self, grid_size: usize) -> Result<Self, ContactError> {
        Self::unchecked(self.a1.clone(), self.a2.clone(), grid_size)
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    /// `a × a'` as an exact trigonometric polynomial.
    pub fn cross_poly(&self) -> &TrigPoly {
        &self.cross
    }

    /// `a' × a''` as an exact trigonometric polynomial.
    pub fn curvature_poly(&self) -> &TrigPoly {
        &self.curvature
    }

    pub fn a(&self, theta: f64) -> (f64, f64) {
        (self.a1.eval(theta), self.a2.eval(theta))
    }

    pub fn a_prime(&self, theta: f64) -> (f64, f64) {
        (self.da1.eval(theta), self.da2.eval(theta))
    }

    pub fn a_second(&self, theta: f64) -> (f64, f64) {
        (self.dda1.eval(theta), self.dda2.eval(theta))
    }

    pub fn cross(&self, theta: f64) -> f64 {
        self.cross.eval(theta)
    }

    pub fn curvature(&self, theta: f64) -> f64 {
        self.curvature.eval(theta)
    }

    /// Upper bound for `|a'(θ)|` over all θ.
    pub fn speed_bound(&self) -> f64 {
        self.da1.sup_bound().hypot(self.da2.sup_bound())
    }

    /// Certified lower bound for `a × a'` (grid minimum minus margin).
    pub fn cross_lower_bound(&self) -> f64 {
        self.report.min_cross - self.report.margin
    }

    /// Reeb field at θ without the positivity check; callers must hold a
    /// certified form.
    pub(crate) fn reeb_unchecked(&self, theta: f64) -> (f64, f64) {
        let c = self.cross(theta);
        let (d1, d2) = self.a_prime(theta);
        (d2 / c, -d1 / c)
    }

    pub(crate) fn ensure_certified(&self) -> Result<(), ContactError> {
        if self.report.ok {
            Ok(())
        } else {
            Err(ContactError::NotContact {
                min_cross: self.report.min_cross,
                theta: self.report.worst_theta,
                margin: self.report.margin,
            })
        }
    }
}

impl PartialEq for ToricContactForm {
    fn eq(&self, other: &Self) -> bool {
        self.a1 == other.a1 && self.a2 == other.a2 && self.grid_size == other.grid_size
    }
}

impl fmt::Debug for ToricContactForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ToricContactForm")
            .field("a1", &self.a1)
            .field("a2", &self.a2)
            .field("grid_size", &self.grid_size)
            .finish()
    }
}

pub(crate) fn grid_theta(k: usize, n: usize) -> f64 {
    2.0 * PI * k as f64 / n as f64
}

pub fn validate_contact(form: &ToricContactForm) -> ValidationReport {
    form.report.clone()
}

/// Pointwise Reeb data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReebSample {
    pub theta: f64,
    pub vx: f64,
    pub vy: f64,
    /// `a × a'(θ)`
    pub cross_aa_prime: f64,
    /// `r(θ) = a' × a''(θ) / (a × a'(θ))²`
    pub rotation_invariant: f64,
}

pub fn reeb_sample(form: &ToricContactForm, theta: f64) -> Result<ReebSample, ContactError> {
    form.ensure_certified()?;
    let c = form.cross(theta);
    if !(c > 0.0) {
        return Err(ContactError::Degenerate { theta, value: c });
    }
    let (vx, vy) = form.reeb_unchecked(theta);
    Ok(ReebSample { theta, vx, vy, cross_aa_prime: c, rotation_invariant: form.curvature(theta) / (c * c) })
}

/// Reeb data evaluated exactly at `θ = quarter_turns · π/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactReebSample {
    pub quarter_turns: i64,
    pub vx: BigRational,
    pub vy: BigRational,
    pub cross_aa_prime: BigRational,
    pub rotation_invariant: BigRational,
}

pub fn reeb_sample_exact(form: &ToricContactForm, quarter_turns: i64) -> Result<ExactReebSample, ContactError> {
    form.ensure_certified()?;
    let c = form.cross.eval_quarter_turns(quarter_turns);
    if !c.is_positive() {
        return Err(ContactError::Degenerate {
            theta: quarter_turns as f64 * PI / 2.0,
            value: num_traits::ToPrimitive::to_f64(&c).unwrap_or(0.0),
        });
    }
    let d1 = form.da1.eval_quarter_turns(quarter_turns);
    let d2 = form.da2.eval_quarter_turns(quarter_turns);
    let curv = form.curvature.eval_quarter_turns(quarter_turns);
    let rotation_invariant = if curv.is_zero() { curv } else { &curv / (&c * &c) };
    Ok(ExactReebSample { quarter_turns, vx: &d2 / &c, vy: -(&d1 / &c), cross_aa_prime: c, rotation_invariant })
}

/// Sign of `a' × a''` at every verification-grid angle.
pub fn rotation_sign_profile(form: &ToricContactForm) -> Result<Vec<(f64, Sign)>, ContactError> {
    form.ensure_certified()?;
    let scale = form.curvature.sup_bound();
    let n = form.grid_size;
    Ok((0..n)
        .map(|k| {
            let theta = grid_theta(k, n);
            (theta, Sign::of(form.curvature(theta), scale))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig::TermKind;

    fn ellipse() -> ToricContactForm {
        ToricContactForm::ellipse(rat(2, 1), rat(3, 1)).unwrap()
    }

    #[test]
    fn lambda0_certificate() {
        let r = validate_contact(&ToricContactForm::lambda0());
        assert!(r.ok);
        assert_eq!(r.min_cross, 1.0);
        assert_eq!(r.margin, 0.0);
    }

    #[test]
    fn constant_path_is_rejected() {
        let one = TrigPoly::constant(rat(1, 1));
        let form = ToricContactForm::unchecked(one.clone(), one.clone(), DEFAULT_GRID_SIZE).unwrap();
        let r = validate_contact(&form);
        assert!(!r.ok);
        assert_eq!(r.min_cross, 0.0);
        assert!(ToricContactForm::new(one.clone(), one).is_err());
        assert!(reeb_sample(&form, 0.0).is_err());
    }

    #[test]
    fn reversed_orientation_is_rejected() {
        let form = ToricContactForm::unchecked(
            TrigPoly::cos(1, rat(1, 1)),
            TrigPoly::sin(1, rat(-1, 1)),
            DEFAULT_GRID_SIZE,
        )
        .unwrap();
        let r = validate_contact(&form);
        assert!(!r.ok);
        assert_eq!(r.min_cross, -1.0);
        assert!(matches!(rotation_sign_profile(&form), Err(ContactError::NotContact { .. })));
    }

    #[test]
    fn ellipse_cross_is_constant_six() {
        let f = ellipse();
        assert_eq!(f.cross_poly(), &TrigPoly::constant(rat(6, 1)));
        assert_eq!(f.curvature_poly(), &TrigPoly::constant(rat(6, 1)));
        assert_eq!(validate_contact(&f).min_cross, 6.0);
    }

    #[test]
    fn lambda0_samples() {
        let f = ToricContactForm::lambda0();
        let s = reeb_sample(&f, 0.0).unwrap();
        assert_eq!((s.vx, s.vy, s.cross_aa_prime, s.rotation_invariant), (1.0, 0.0, 1.0, 1.0));
        let s = reeb_sample(&f, PI / 2.0).unwrap();
        assert!(s.vx.abs() < 1e-15 && (s.vy - 1.0).abs() < 1e-15);
        let e = reeb_sample_exact(&f, 1).unwrap();
        assert_eq!((e.vx, e.vy), (rat(0, 1), rat(1, 1)));
    }

    #[test]
    fn ellipse_reeb_at_zero() {
        let s = reeb_sample(&ellipse(), 0.0).unwrap();
        assert!((s.vx - 0.5).abs() < 1e-15 && s.vy.abs() < 1e-15);
        let e = reeb_sample_exact(&ellipse(), 0).unwrap();
        assert_eq!((e.vx, e.vy), (rat(1, 2), rat(0, 1)));
        assert_eq!(e.rotation_invariant, rat(1, 6));
    }

    #[test]
    fn sign_profiles() {
        for f in [ToricContactForm::lambda0(), ellipse()] {
            assert!(rotation_sign_profile(&f).unwrap().iter().all(|(_, s)| *s == Sign::Positive));
        }
    }

    #[test]
    fn coarse_grid_still_certifies_lambda0() {
        let f = ToricContactForm::lambda0().regridded(8).unwrap();
        assert!(f.report().ok);
    }

    #[test]
    fn margin_blocks_a_thin_certificate() {
        // a × a' = 21/20 + 3/5 cos4θ; four grid points cannot certify it
        let a1 = TrigPoly::from_terms([(TermKind::Cos, 1, rat(1, 1)), (TermKind::Cos, 5, rat(1, 10))]);
        let a2 = TrigPoly::from_terms([(TermKind::Sin, 1, rat(1, 1)), (TermKind::Sin, 5, rat(1, 10))]);
        let coarse = ToricContactForm::unchecked(a1.clone(), a2.clone(), 4).unwrap();
        assert!(!coarse.report().ok);
        assert!(coarse.report().min_cross > 0.0);
        assert!(ToricContactForm::new(a1, a2).is_ok());
    }
}
