//! Morse–Bott orbit census of a toric contact form below an action cutoff.
//!
//! The torus `T(θ0)` is foliated by closed Reeb orbits in the primitive
//! class `(m,n)` exactly when the Reeb direction `(a2', −a1')(θ0)` is a
//! positive multiple of `(m,n)`, i.e. `θ0` is a root of
//! `g(θ) = m a1'(θ) + n a2'(θ)` with the right orientation. Since
//! `λ(R) = 1` the action of such an orbit equals its period, and
//! integrating λ along the straight orbit gives `2π (m a1(θ0) + n a2(θ0))`.
//!
//! After a Bourgeois perturbation each family becomes one positive
//! hyperbolic and one elliptic orbit; the census records the δ→0 limit,
//! with the elliptic rotation sign equal to the sign of `a' × a''(θ0)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;

use crate::contact::{grid_theta, Sign, ToricContactForm};
use crate::error::CensusError;

/// Relative tolerance for `g' = 0` (resp. `g = 0` at a critical point of `g`).
const DOUBLE_ROOT_TOLERANCE: f64 = 1e-9;
/// Bisection stops once the bracket is this narrow.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// A class `m·x + n·y` in `H1(T³)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitClass {
    pub m: i64,
    pub n: i64,
}

impl OrbitClass {
    pub const fn new(m: i64, n: i64) -> Self {
        OrbitClass { m, n }
    }

    pub fn is_primitive(self) -> bool {
        self.m.gcd(&self.n) == 1
    }

    pub fn norm(self) -> f64 {
        (self.m as f64).hypot(self.n as f64)
    }

    /// Representative of `{v, −v}` with `m > 0`, or `m = 0, n > 0`.
    pub fn canonical(self) -> Self {
        if self.m > 0 || (self.m == 0 && self.n > 0) {
            self
        } else {
            -self
        }
    }
}

impl std::ops::Neg for OrbitClass {
    type Output = OrbitClass;

    fn neg(self) -> OrbitClass {
        OrbitClass { m: -self.m, n: -self.n }
    }
}

impl std::ops::Add for OrbitClass {
    type Output = OrbitClass;

    fn add(self, rhs: OrbitClass) -> OrbitClass {
        OrbitClass { m: self.m + rhs.m, n: self.n + rhs.n }
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MorseBottFamily {
    pub class: OrbitClass,
    /// Root of the slope equation in `[0, 2π)`.
    pub theta0: f64,
    pub action: f64,
    /// `r(θ0) = a' × a''(θ0) / (a × a'(θ0))²`
    pub rotation_invariant: f64,
    pub rotation_sign: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitKind {
    PositiveHyperbolic,
    Elliptic,
}

impl fmt::Display for OrbitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitKind::PositiveHyperbolic => "hyperbolic+",
            OrbitKind::Elliptic => "elliptic",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedOrbit {
    pub kind: OrbitKind,
    pub class: OrbitClass,
    /// Action in the δ→0 limit, equal to the parent family's action.
    pub limit_action: f64,
    /// L-positivity; only meaningful for elliptic orbits.
    pub l_positive: Option<bool>,
    /// Index of the parent family in [`OrbitCensus::families`].
    pub parent: usize,
}

#[derive(Debug, Clone)]
pub struct OrbitCensus {
    form: ToricContactForm,
    cutoff: f64,
    families: Vec<MorseBottFamily>,
    orbits: Vec<PerturbedOrbit>,
    bourgeois_admissible: bool,
}

impl OrbitCensus {
    pub fn form(&self) -> &ToricContactForm {
        &self.form
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn families(&self) -> &[MorseBottFamily] {
        &self.families
    }

    pub fn orbits(&self) -> &[PerturbedOrbit] {
        &self.orbits
    }

    /// Every spawning root has `a' × a'' > 0`.
    pub fn bourgeois_admissible(&self) -> bool {
        self.bourgeois_admissible
    }

    /// L-flatness of the perturbed form is taken from the neighborhood
    /// existence statement and never checked.
    pub fn l_flat_asserted(&self) -> bool {
        true
    }

    pub fn family_of(&self, orbit: &PerturbedOrbit) -> &MorseBottFamily {
        &self.families[orbit.parent]
    }
}

/// A degree-0 ECH generator: the empty orbit set, or `h(v)`, the pair of
/// positive hyperbolic orbits in classes `v` and `−v`.
#[derive(Debug, Clone, PartialEq)]
pub enum DegreeZeroGenerator {
    Empty,
    HPair {
        /// Canonical representative of `±v`.
        v: OrbitClass,
        /// Indices into [`OrbitCensus::orbits`] of the orbits in classes `v`, `−v`.
        orbits: (usize, usize),
        total_action: f64,
    },
}

impl DegreeZeroGenerator {
    pub fn total_action(&self) -> f64 {
        match self {
            DegreeZeroGenerator::Empty => 0.0,
            DegreeZeroGenerator::HPair { total_action, .. } => *total_action,
        }
    }
}

impl fmt::Display for DegreeZeroGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeZeroGenerator::Empty => f.write_str("∅"),
            DegreeZeroGenerator::HPair { v, .. } => write!(f, "h{v}"),
        }
    }
}

/// Radius of the disk of classes that can have action below `cutoff`:
/// the action of class `(m,n)` is `2π |(m,n)| (a × a') / |a'|`.
pub fn enumeration_radius(form: &ToricContactForm, cutoff: f64) -> f64 {
    cutoff * form.speed_bound() / (2.0 * PI * form.cross_lower_bound())
}

/// Precomputed first and second derivatives of `a` on the verification grid.
struct SlopeGrid {
    thetas: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
    dd1: Vec<f64>,
    dd2: Vec<f64>,
}

impl SlopeGrid {
    fn new(form: &ToricContactForm) -> Self {
        let n = form.grid_size();
        let thetas: Vec<f64> = (0..=n).map(|k| grid_theta(k, n)).collect();
        let (d1, d2): (Vec<f64>, Vec<f64>) = thetas.iter().map(|&t| form.a_prime(t)).unzip();
        let (dd1, dd2): (Vec<f64>, Vec<f64>) = thetas.iter().map(|&t| form.a_second(t)).unzip();
        SlopeGrid { thetas, d1, d2, dd1, dd2 }
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Option<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= ROOT_TOLERANCE || mid <= lo || mid >= hi {
            return Some(mid);
        }
        let f_mid = f(mid);
        if f_mid.is_nan() {
            return None;
        }
        if f_mid == 0.0 {
            return Some(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    None
}

/// Roots of `values` sampled on `grid.thetas`: exact zeros at grid points and
/// one bisected root per sign change.
fn scan_roots<F: Fn(f64) -> f64>(
    f: &F,
    thetas: &[f64],
    values: &[f64],
    class: OrbitClass,
) -> Result<Vec<f64>, CensusError> {
    let mut roots = Vec::new();
    for k in 0..thetas.len() - 1 {
        let (t0, t1) = (thetas[k], thetas[k + 1]);
        let (v0, v1) = (values[k], values[k + 1]);
        if v0.is_nan() || v1.is_nan() {
            return Err(CensusError::NoConvergence { class, lo: t0, hi: t1 });
        }
        if v0 == 0.0 {
            roots.push(t0);
        } else if v1 != 0.0 && (v0 > 0.0) != (v1 > 0.0) {
            let root = bisect(f, t0, t1, v0).ok_or(CensusError::NoConvergence { class, lo: t0, hi: t1 })?;
            roots.push(root);
        }
    }
    Ok(roots)
}

fn families_for_class(
    form: &ToricContactForm,
    grid: &SlopeGrid,
    class: OrbitClass,
    cutoff: f64,
) -> Result<Vec<MorseBottFamily>, CensusError> {
    let (m, n) = (class.m as f64, class.n as f64);
    let g = |t: f64| {
        let (d1, d2) = form.a_prime(t);
        m * d1 + n * d2
    };
    let dg = |t: f64| {
        let (dd1, dd2) = form.a_second(t);
        m * dd1 + n * dd2
    };
    let g_scale = m.abs() * form.a1().lipschitz_bound() + n.abs() * form.a2().lipschitz_bound();
    let dg_scale = m.abs() * form.a1().derivative().lipschitz_bound()
        + n.abs() * form.a2().derivative().lipschitz_bound();

    let g_vals: Vec<f64> = grid.d1.iter().zip(&grid.d2).map(|(d1, d2)| m * d1 + n * d2).collect();
    let dg_vals: Vec<f64> = grid.dd1.iter().zip(&grid.dd2).map(|(d1, d2)| m * d1 + n * d2).collect();

    let mut simple = Vec::new();
    let mut degenerate = Vec::new();
    for root in scan_roots(&g, &grid.thetas, &g_vals, class)? {
        if dg(root).abs() <= DOUBLE_ROOT_TOLERANCE * dg_scale {
            degenerate.push(root);
        } else {
            simple.push(root);
        }
    }
    // even-order tangencies do not change sign; look for them at critical points of g
    for crit in scan_roots(&dg, &grid.thetas, &dg_vals, class)? {
        if g(crit).abs() <= DOUBLE_ROOT_TOLERANCE * g_scale {
            degenerate.push(crit);
        }
    }

    let oriented = |t: f64| {
        let (d1, d2) = form.a_prime(t);
        m * d2 - n * d1 > 0.0
    };
    let action_at = |t: f64| {
        let (a1, a2) = form.a(t);
        2.0 * PI * (m * a1 + n * a2)
    };

    for &t in &degenerate {
        if oriented(t) && action_at(t) < cutoff {
            return Err(CensusError::DoubleRoot { class, theta: wrap_angle(t) });
        }
    }

    let curvature_scale = form.curvature_poly().sup_bound();
    let mut out: Vec<MorseBottFamily> = Vec::new();
    for t in simple {
        let theta0 = wrap_angle(t);
        if !oriented(theta0) {
            continue;
        }
        let action = action_at(theta0);
        if !(action < cutoff) {
            continue;
        }
        if out.iter().any(|f| angular_distance(f.theta0, theta0) < 1e-10) {
            continue;
        }
        let c = form.cross(theta0);
        let curvature = form.curvature(theta0);
        out.push(MorseBottFamily {
            class,
            theta0,
            action,
            rotation_invariant: curvature / (c * c),
            rotation_sign: Sign::of(curvature, curvature_scale),
        });
    }
    Ok(out)
}

fn wrap_angle(t: f64) -> f64 {
    let w = t.rem_euclid(2.0 * PI);
    if w >= 2.0 * PI {
        0.0
    } else {
        w
    }
}

fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Orders actions, treating values within a relative 1e-9 as tied so that
/// round-off cannot reorder classes of equal action.
pub(crate) fn cmp_action(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= 1e-9 * a.abs().max(b.abs()) {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

fn canonical_order(a: &MorseBottFamily, b: &MorseBottFamily) -> Ordering {
    cmp_action(a.action, b.action)
        .then(a.class.m.cmp(&b.class.m))
        .then(a.class.n.cmp(&b.class.n))
        .then(a.theta0.total_cmp(&b.theta0))
}

/// All Morse–Bott families with action below `cutoff`, sorted by
/// `(action, m, n)`.
pub fn find_families(form: &ToricContactForm, cutoff: f64) -> Result<Vec<MorseBottFamily>, CensusError> {
    form.ensure_certified()?;
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(CensusError::InvalidCutoff(cutoff));
    }
    let radius = enumeration_radius(form, cutoff) * (1.0 + 1e-12);
    let grid = SlopeGrid::new(form);
    let r = radius.floor() as i64;
    let mut families = Vec::new();
    for m in -r..=r {
        for n in -r..=r {
            let class = OrbitClass::new(m, n);
            if !class.is_primitive() || class.norm() > radius {
                continue;
            }
            families.extend(families_for_class(form, &grid, class, cutoff)?);
        }
    }
    families.sort_by(canonical_order);
    Ok(families)
}

/// The δ→0 limit of the Bourgeois perturbation below `cutoff`.
pub fn bourgeois_census(form: &ToricContactForm, cutoff: f64) -> Result<OrbitCensus, CensusError> {
    let families = match find_families(form, cutoff) {
        Err(CensusError::DoubleRoot { class, theta }) => {
            return Err(CensusError::HypothesisViolation { class, theta, curvature: form.curvature(theta) })
        }
        other => other?,
    };
    if let Some(f) = families.iter().find(|f| f.rotation_sign == Sign::Zero) {
        return Err(CensusError::HypothesisViolation {
            class: f.class,
            theta: f.theta0,
            curvature: form.curvature(f.theta0),
        });
    }
    let mut orbits = Vec::with_capacity(2 * families.len());
    for (i, f) in families.iter().enumerate() {
        orbits.push(PerturbedOrbit {
            kind: OrbitKind::PositiveHyperbolic,
            class: f.class,
            limit_action: f.action,
            l_positive: None,
            parent: i,
        });
        orbits.push(PerturbedOrbit {
            kind: OrbitKind::Elliptic,
            class: f.class,
            limit_action: f.action,
            l_positive: Some(f.rotation_sign == Sign::Positive),
            parent: i,
        });
    }
    let bourgeois_admissible = families.iter().all(|f| f.rotation_sign == Sign::Positive);
    Ok(OrbitCensus { form: form.clone(), cutoff, families, orbits, bourgeois_admissible })
}

/// `∅` followed by every `h(v)` whose classes `v` and `−v` both carry a
/// positive hyperbolic orbit, ordered by `(total action, v)`. When a class
/// has several families the lowest-action orbit represents it.
pub fn degree_zero_generators(census: &OrbitCensus) -> Result<Vec<DegreeZeroGenerator>, CensusError> {
    if !census.bourgeois_admissible() {
        return Err(CensusError::NotAdmissible);
    }
    // orbits are already in (action, m, n) order, so the first hit per class is the cheapest
    let mut cheapest: BTreeMap<OrbitClass, usize> = BTreeMap::new();
    for (i, orbit) in census.orbits().iter().enumerate() {
        if orbit.kind == OrbitKind::PositiveHyperbolic {
            cheapest.entry(orbit.class).or_insert(i);
        }
    }
    let mut pairs: Vec<DegreeZeroGenerator> = cheapest
        .iter()
        .filter(|(class, _)| class.canonical() == **class)
        .filter_map(|(&v, &i)| {
            let j = *cheapest.get(&-v)?;
            let total_action = census.orbits()[i].limit_action + census.orbits()[j].limit_action;
            Some(DegreeZeroGenerator::HPair { v, orbits: (i, j), total_action })
        })
        .collect();
    pairs.sort_by(|a, b| match (a, b) {
        (
            DegreeZeroGenerator::HPair { v: va, total_action: ta, .. },
            DegreeZeroGenerator::HPair { v: vb, total_action: tb, .. },
        ) => cmp_action(*ta, *tb).then(va.cmp(vb)),
        _ => Ordering::Equal,
    });
    let mut out = vec![DegreeZeroGenerator::Empty];
    out.extend(pairs);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig::{rat, TermKind, TrigPoly};
    use num_rational::BigRational;

    fn classes(fams: &[MorseBottFamily]) -> Vec<OrbitClass> {
        let mut v: Vec<_> = fams.iter().map(|f| f.class).collect();
        v.sort();
        v
    }

    /// Polar path `r(θ) = 1 + k cos3θ`, i.e. `a = r·(cosθ, sinθ)`.
    fn trefoil(k: BigRational) -> ToricContactForm {
        let h = k.clone() * rat(1, 2);
        let a1 = TrigPoly::from_terms([
            (TermKind::Cos, 1, rat(1, 1)),
            (TermKind::Cos, 4, h.clone()),
            (TermKind::Cos, 2, h.clone()),
        ]);
        let a2 = TrigPoly::from_terms([
            (TermKind::Sin, 1, rat(1, 1)),
            (TermKind::Sin, 4, h.clone()),
            (TermKind::Sin, 2, -h),
        ]);
        ToricContactForm::new(a1, a2).unwrap()
    }

    #[test]
    fn lambda0_small_cutoff() {
        let f = ToricContactForm::lambda0();
        let axes = vec![OrbitClass::new(-1, 0), OrbitClass::new(0, -1), OrbitClass::new(0, 1), OrbitClass::new(1, 0)];
        let fams = find_families(&f, 2.0 * PI * 1.2).unwrap();
        assert_eq!(classes(&fams), axes);
        for fam in &fams {
            assert!((fam.action - 2.0 * PI).abs() < 1e-12);
            assert_eq!(fam.rotation_sign, Sign::Positive);
        }
        assert!(find_families(&f, 2.0 * PI * 0.5).unwrap().is_empty());
    }

    #[test]
    fn lambda0_diagonals_enter_below_one_and_a_half_turns() {
        // 2π√2 ≈ 8.886 < 2π·1.5 ≈ 9.425
        let fams = find_families(&ToricContactForm::lambda0(), 2.0 * PI * 1.5).unwrap();
        assert_eq!(fams.len(), 8);
        let ordered: Vec<OrbitClass> = fams.iter().map(|f| f.class).collect();
        assert_eq!(
            ordered,
            vec![
                OrbitClass::new(-1, 0),
                OrbitClass::new(0, -1),
                OrbitClass::new(0, 1),
                OrbitClass::new(1, 0),
                OrbitClass::new(-1, -1),
                OrbitClass::new(-1, 1),
                OrbitClass::new(1, -1),
                OrbitClass::new(1, 1),
            ]
        );
        for fam in &fams[4..] {
            assert!((fam.action - 2.0 * PI * 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn negated_classes_sit_half_a_turn_apart() {
        let fams = find_families(&ToricContactForm::lambda0(), 20.0).unwrap();
        for fam in &fams {
            let twin = fams.iter().find(|g| g.class == -fam.class).expect("negated class present");
            assert!((angular_distance(fam.theta0, twin.theta0) - PI).abs() < 1e-10);
        }
    }

    #[test]
    fn census_counts() {
        let c = bourgeois_census(&ToricContactForm::lambda0(), 2.0 * PI * 1.2).unwrap();
        assert_eq!(c.families().len(), 4);
        assert_eq!(c.orbits().len(), 8);
        let elliptic: Vec<_> = c.orbits().iter().filter(|o| o.kind == OrbitKind::Elliptic).collect();
        assert_eq!(elliptic.len(), 4);
        let c = bourgeois_census(&ToricContactForm::lambda0(), 2.0 * PI * 1.5).unwrap();
        assert_eq!((c.families().len(), c.orbits().len()), (8, 16));
        assert!(elliptic.iter().all(|o| o.l_positive == Some(true)));
        assert!(c.bourgeois_admissible());
        assert!(c.l_flat_asserted());

        let empty = bourgeois_census(&ToricContactForm::lambda0(), 2.0 * PI * 0.5).unwrap();
        assert!(empty.orbits().is_empty());
        assert!(empty.bourgeois_admissible());
        assert_eq!(degree_zero_generators(&empty).unwrap(), vec![DegreeZeroGenerator::Empty]);
    }

    #[test]
    fn generators_for_lambda0() {
        let c = bourgeois_census(&ToricContactForm::lambda0(), 2.0 * PI * 1.2).unwrap();
        let gens = degree_zero_generators(&c).unwrap();
        let names: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        assert_eq!(names, vec!["∅", "h(0,1)", "h(1,0)"]);
        assert!((gens[1].total_action() - 4.0 * PI).abs() < 1e-12);

        let c = bourgeois_census(&ToricContactForm::lambda0(), 2.0 * PI * 1.5).unwrap();
        let names: Vec<String> = degree_zero_generators(&c).unwrap().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, vec!["∅", "h(0,1)", "h(1,0)", "h(1,-1)", "h(1,1)"]);

        let c = bourgeois_census(&ToricContactForm::lambda0(), 2.0 * PI * 2.9).unwrap();
        let names: Vec<String> = degree_zero_generators(&c).unwrap().iter().map(|g| g.to_string()).collect();
        assert_eq!(
            names,
            vec!["∅", "h(0,1)", "h(1,0)", "h(1,-1)", "h(1,1)", "h(1,-2)", "h(1,2)", "h(2,-1)", "h(2,1)"]
        );
    }

    #[test]
    fn ellipse_census_is_l_positive() {
        let f = ToricContactForm::ellipse(rat(2, 1), rat(3, 1)).unwrap();
        let c = bourgeois_census(&f, 30.0).unwrap();
        assert!(!c.orbits().is_empty());
        assert!(c
            .orbits()
            .iter()
            .filter(|o| o.kind == OrbitKind::Elliptic)
            .all(|o| o.l_positive == Some(true)));
    }

    #[test]
    fn inflection_at_root_violates_hypothesis() {
        // r = 1 - cos3θ/10: a' = (0, 9/10) and a'×a'' = 0 at θ = 0
        let f = trefoil(rat(-1, 10));
        assert_eq!(f.curvature_poly().eval_quarter_turns(0), rat(0, 1));
        match find_families(&f, 30.0) {
            Err(CensusError::DoubleRoot { class, theta }) => {
                assert_eq!(class, OrbitClass::new(1, 0));
                assert!(angular_distance(theta, 0.0) < 1e-9);
            }
            other => panic!("expected a double root, got {other:?}"),
        }
        assert!(matches!(
            bourgeois_census(&f, 30.0),
            Err(CensusError::HypothesisViolation { class: OrbitClass { m: 1, n: 0 }, .. })
        ));
    }

    #[test]
    fn negative_rotation_is_flagged_not_rejected() {
        // r = 1 - cos3θ/5 has a'×a''(0) < 0 with vertical tangent
        let f = trefoil(rat(-1, 5));
        let c = bourgeois_census(&f, 20.0).unwrap();
        assert!(!c.bourgeois_admissible());
        let bad = c
            .orbits()
            .iter()
            .find(|o| o.kind == OrbitKind::Elliptic && o.l_positive == Some(false))
            .expect("a negatively rotating elliptic orbit");
        assert_eq!(c.family_of(bad).rotation_sign, Sign::Negative);
        assert_eq!(degree_zero_generators(&c), Err(CensusError::NotAdmissible));
    }

    #[test]
    fn invalid_cutoff() {
        let f = ToricContactForm::lambda0();
        assert_eq!(find_families(&f, 0.0), Err(CensusError::InvalidCutoff(0.0)));
        assert!(find_families(&f, f64::NAN).is_err());
    }

    #[test]
    fn rotation_sign_matches_slope_of_g() {
        // at a simple root (m,n) = k(a2',-a1') with k > 0, and g' = -k (a'×a'')
        let f = trefoil(rat(-1, 5));
        for fam in find_families(&f, 20.0).unwrap() {
            let (dd1, dd2) = f.a_second(fam.theta0);
            let dg = fam.class.m as f64 * dd1 + fam.class.n as f64 * dd2;
            assert_eq!(-dg.signum() as i8, fam.rotation_sign.as_i8());
        }
    }
}
