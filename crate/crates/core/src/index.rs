//! Index quantities on intersection-form models of closed 4-manifolds.
//!
//! A model is `H2/torsion` with its integer form `Q`, together with `χ`, `σ`,
//! an optional canonical class `K` and optional lift differences spanning
//! the Mayer–Vietoris ambiguity. All pairings are `uᵀ Q v`.
//!
//! * `d(𝔰) = (c1² − 2χ − 3σ) / 4`
//! * `I(A) = A·A − K·A`, so `I(A + v) − I(A) = v·(v + 2A − K)`
//! * `𝔰_ω + A` has `c1 = 2A − K`

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::IndexError;

/// Absolute wall tolerance for real-valued chamber data.
pub const WALL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourManifoldModel {
    q: Vec<Vec<i64>>,
    euler: i64,
    signature: i64,
    k: Option<Vec<i64>>,
    b2plus: usize,
    mv_image_basis: Vec<Vec<i64>>,
    warnings: Vec<String>,
}

impl FourManifoldModel {
    /// Validates `Q` and the declared `σ`, `b2+`; a non-characteristic `K`
    /// or `K² ≠ 2χ + 3σ` is recorded as a warning.
    pub fn new(
        q: Vec<Vec<i64>>,
        euler: i64,
        signature: i64,
        k: Option<Vec<i64>>,
        b2plus: usize,
        mv_image_basis: Vec<Vec<i64>>,
    ) -> Result<Self, IndexError> {
        let n = q.len();
        for (row, r) in q.iter().enumerate() {
            if r.len() != n {
                return Err(IndexError::RaggedForm { row, len: r.len(), expected: n });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if q[i][j] != q[j][i] {
                    return Err(IndexError::NotSymmetric { row: i, col: j });
                }
            }
        }
        let inertia = inertia(&q);
        if inertia.signature() != signature {
            return Err(IndexError::SignatureMismatch { declared: signature, computed: inertia.signature() });
        }
        if inertia.positive != b2plus {
            return Err(IndexError::B2PlusMismatch { declared: b2plus, computed: inertia.positive });
        }
        if let Some(k) = &k {
            check_len("canonical class", k, n)?;
        }
        for v in &mv_image_basis {
            check_len("lift difference", v, n)?;
        }
        let mut model = FourManifoldModel { q, euler, signature, k, b2plus, mv_image_basis, warnings: Vec::new() };
        if let Some(k) = model.k.clone() {
            if !model.is_characteristic(&k) {
                model.warnings.push("canonical class K is not characteristic for Q".to_string());
            }
            let kk = model.pair(&k, &k)?;
            let expected = 2 * euler as i128 + 3 * signature as i128;
            if kk as i128 != expected {
                model.warnings.push(format!("K·K = {kk} differs from 2χ + 3σ = {expected}"));
            }
        }
        Ok(model)
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.q
    }

    pub fn euler_char(&self) -> i64 {
        self.euler
    }

    pub fn signature(&self) -> i64 {
        self.signature
    }

    pub fn b2plus(&self) -> usize {
        self.b2plus
    }

    pub fn canonical_class(&self) -> Option<&[i64]> {
        self.k.as_deref()
    }

    pub fn mv_image_basis(&self) -> &[Vec<i64>] {
        &self.mv_image_basis
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `uᵀ Q v`.
    pub fn pair(&self, u: &[i64], v: &[i64]) -> Result<i64, IndexError> {
        check_len("vector", u, self.rank())?;
        check_len("vector", v, self.rank())?;
        let mut total: i128 = 0;
        for (i, row) in self.q.iter().enumerate() {
            for (j, &qij) in row.iter().enumerate() {
                let term = (u[i] as i128)
                    .checked_mul(qij as i128)
                    .and_then(|t| t.checked_mul(v[j] as i128))
                    .ok_or(IndexError::Overflow("a pairing"))?;
                total = total.checked_add(term).ok_or(IndexError::Overflow("a pairing"))?;
            }
        }
        i64::try_from(total).map_err(|_| IndexError::Overflow("a pairing"))
    }

    /// `(Q v)_i ≡ Q_ii (mod 2)` for every `i`.
    pub fn is_characteristic(&self, v: &[i64]) -> bool {
        if v.len() != self.rank() {
            return false;
        }
        self.q.iter().enumerate().all(|(i, row)| {
            let qv: i128 = row.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
            (qv - row[i] as i128).rem_euclid(2) == 0
        })
    }

    fn require_k(&self) -> Result<&[i64], IndexError> {
        self.canonical_class().ok_or(IndexError::MissingCanonicalClass)
    }
}

fn check_len(what: &'static str, v: &[i64], expected: usize) -> Result<(), IndexError> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(IndexError::DimensionMismatch { what, got: v.len(), expected })
    }
}

fn combine(u: &[i64], a: i64, v: &[i64], b: i64) -> Result<Vec<i64>, IndexError> {
    u.iter()
        .zip(v)
        .map(|(&x, &y)| {
            x.checked_mul(a)
                .zip(y.checked_mul(b))
                .and_then(|(p, q)| p.checked_add(q))
                .ok_or(IndexError::Overflow("a linear combination"))
        })
        .collect()
}

/// Positive, negative and null index of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub null: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Sylvester inertia by exact congruence diagonalization over `Q`.
///
/// A remaining block with zero diagonal but a nonzero entry `Q_jk` is
/// handled by adding row and column `k` to `j`, which makes `Q_jj = 2 Q_jk`.
/// Rows of a ragged input beyond the first row's length are ignored.
pub fn inertia(q: &[Vec<i64>]) -> Inertia {
    let n = q.len();
    let mut m: Vec<Vec<BigRational>> = q
        .iter()
        .map(|row| (0..n).map(|j| BigRational::from_integer(BigInt::from(*row.get(j).unwrap_or(&0)))).collect())
        .collect();
    let (mut positive, mut negative) = (0, 0);
    let mut i = 0;
    while i < n {
        if let Some(p) = (i..n).find(|&p| !m[p][p].is_zero()) {
            m.swap(i, p);
            for row in m.iter_mut() {
                row.swap(i, p);
            }
            let pivot = m[i][i].clone();
            if pivot.is_positive() {
                positive += 1;
            } else {
                negative += 1;
            }
            for j in i + 1..n {
                if m[j][i].is_zero() {
                    continue;
                }
                let factor = &m[j][i] / &pivot;
                for c in i..n {
                    let delta = &factor * &m[i][c];
                    m[j][c] -= delta;
                }
                for r in i..n {
                    let delta = &factor * &m[r][i];
                    m[r][j] -= delta;
                }
            }
            i += 1;
            continue;
        }
        let Some((j, k)) = (i..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).find(|&(j, k)| !m[j][k].is_zero())
        else {
            break;
        };
        for c in 0..n {
            let add = m[k][c].clone();
            m[j][c] += add;
        }
        for r in 0..n {
            let add = m[r][k].clone();
            m[r][j] += add;
        }
    }
    Inertia { positive, negative, null: n - positive - negative }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinCClass {
    pub c1: Vec<i64>,
}

/// `d(𝔰) = (c1² − 2χ − 3σ) / 4`.
pub fn d_invariant(model: &FourManifoldModel, s: &SpinCClass) -> Result<i64, IndexError> {
    check_len("c1", &s.c1, model.rank())?;
    let c1sq = model.pair(&s.c1, &s.c1)? as i128;
    let numerator = c1sq - 2 * model.euler as i128 - 3 * model.signature as i128;
    let numerator = i64::try_from(numerator).map_err(|_| IndexError::Overflow("d"))?;
    if numerator.rem_euclid(4) != 0 {
        return Err(IndexError::NotDivisible(numerator));
    }
    Ok(numerator / 4)
}

/// `I(A) = A·A − K·A`.
pub fn ech_index_closed(model: &FourManifoldModel, a: &[i64]) -> Result<i64, IndexError> {
    let k = model.require_k()?;
    check_len("class A", a, model.rank())?;
    model.pair(a, a)?.checked_sub(model.pair(k, a)?).ok_or(IndexError::Overflow("I(A)"))
}

/// What a lift difference `v` must leave unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftTarget {
    /// The ECH index of the class `A`; residual `v·(v + 2A − K)`.
    Index(Vec<i64>),
    /// The dimension `d` of the spin-c structure with this `c1`; residual `v·(v + c1)`.
    SpinC(Vec<i64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftCheck {
    pub invariant: bool,
    pub residual: i64,
}

pub fn lift_invariance_check(model: &FourManifoldModel, target: &LiftTarget, v: &[i64]) -> Result<LiftCheck, IndexError> {
    check_len("lift difference", v, model.rank())?;
    let shifted = match target {
        LiftTarget::Index(a) => {
            check_len("class A", a, model.rank())?;
            let k = model.require_k()?;
            let two_a_minus_k = combine(a, 2, k, -1)?;
            combine(v, 1, &two_a_minus_k, 1)?
        }
        LiftTarget::SpinC(c1) => {
            check_len("c1", c1, model.rank())?;
            combine(v, 1, c1, 1)?
        }
    };
    let residual = model.pair(v, &shifted)?;
    Ok(LiftCheck { invariant: residual == 0, residual })
}

/// Runs the lift check on every supplied Mayer–Vietoris difference.
pub fn check_mv_image(model: &FourManifoldModel, target: &LiftTarget) -> Result<Vec<LiftCheck>, IndexError> {
    model.mv_image_basis().iter().map(|v| lift_invariance_check(model, target, v)).collect()
}

/// `c1(𝔰_ω + A) = 2A − K`.
pub fn gr_sw_bridge(model: &FourManifoldModel, a: &[i64]) -> Result<SpinCClass, IndexError> {
    let k = model.require_k()?;
    check_len("class A", a, model.rank())?;
    Ok(SpinCClass { c1: combine(a, 2, k, -1)? })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChamberData {
    /// `[ω_g]·c1(𝔰)`
    pub omega_dot_c1: f64,
    /// `∫ ω_g ∧ μ`
    pub mu_term: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChamberSide {
    Negative,
    Wall,
    Positive,
}

impl ChamberSide {
    pub fn as_str(self) -> &'static str {
        match self {
            ChamberSide::Negative => "negative",
            ChamberSide::Wall => "wall",
            ChamberSide::Positive => "positive",
        }
    }

    /// Report label; the negative side is the symplectic chamber.
    pub fn label(self) -> &'static str {
        match self {
            ChamberSide::Negative => "negative (symplectic chamber)",
            other => other.as_str(),
        }
    }
}

impl fmt::Display for ChamberSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Side of the wall `2π [ω]·c1 + ∫ω∧μ = 0`.
pub fn chamber_side(c: &ChamberData) -> ChamberSide {
    chamber_side_with_tolerance(c, WALL_TOLERANCE)
}

pub fn chamber_side_with_tolerance(c: &ChamberData, tolerance: f64) -> ChamberSide {
    let value = 2.0 * PI * c.omega_dot_c1 + c.mu_term;
    if value.abs() <= tolerance {
        ChamberSide::Wall
    } else if value < 0.0 {
        ChamberSide::Negative
    } else {
        ChamberSide::Positive
    }
}

/// Exact side for rational data, bracketing π by Machin's formula.
/// With `ω·c1 ≠ 0` the value is irrational, so refinement always terminates
/// in practice; `Undecided` is returned only past the refinement budget.
pub fn chamber_side_exact(omega_dot_c1: &BigRational, mu_term: &BigRational) -> Result<ChamberSide, IndexError> {
    let side = |v: &BigRational| {
        if v.is_zero() {
            ChamberSide::Wall
        } else if v.is_negative() {
            ChamberSide::Negative
        } else {
            ChamberSide::Positive
        }
    };
    if omega_dot_c1.is_zero() {
        return Ok(side(mu_term));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    for terms in (4..=128).step_by(4) {
        let (lo, hi) = pi_bounds(terms);
        let a = &two * omega_dot_c1 * &lo + mu_term;
        let b = &two * omega_dot_c1 * &hi + mu_term;
        let (sa, sb) = (side(&a), side(&b));
        if sa == sb && sa != ChamberSide::Wall {
            return Ok(sa);
        }
    }
    Err(IndexError::Undecided)
}

/// Partial sums of `arctan(1/q)` with `terms` and `terms + 1` terms, ordered.
fn arctan_inv_bounds(q: i64, terms: usize) -> (BigRational, BigRational) {
    let q = BigInt::from(q);
    let mut sum = BigRational::zero();
    let mut power = q.clone();
    let mut prev = BigRational::zero();
    for k in 0..=terms {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * k + 1) * &power);
        prev = sum.clone();
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &q * &q;
    }
    if prev < sum {
        (prev, sum)
    } else {
        (sum, prev)
    }
}

/// Rational `lo < π < hi` from `π = 16 arctan(1/5) − 4 arctan(1/239)`.
fn pi_bounds(terms: usize) -> (BigRational, BigRational) {
    let (a_lo, a_hi) = arctan_inv_bounds(5, terms);
    let (b_lo, b_hi) = arctan_inv_bounds(239, terms);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    (&sixteen * &a_lo - &four * &b_hi, &sixteen * &a_hi - &four * &b_lo)
}

/// Standard test models.
pub mod models {
    use super::FourManifoldModel;

    /// `H = [[0,1],[1,0]]`
    pub fn hyperbolic() -> Vec<Vec<i64>> {
        vec![vec![0, 1], vec![1, 0]]
    }

    /// `−E8`
    pub fn minus_e8() -> Vec<Vec<i64>> {
        let mut q = vec![vec![0i64; 8]; 8];
        for (i, row) in q.iter_mut().enumerate() {
            row[i] = -2;
        }
        // Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 attached to 4
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
            q[a][b] = 1;
            q[b][a] = 1;
        }
        q
    }

    pub fn direct_sum(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut q = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for block in blocks {
            for (i, row) in block.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    q[offset + i][offset + j] = x;
                }
            }
            offset += block.len();
        }
        q
    }

    /// K3: `2(−E8) ⊕ 3H`, `χ = 24`, `σ = −16`, `K = 0`.
    pub fn k3() -> FourManifoldModel {
        let h = hyperbolic();
        let q = direct_sum(&[minus_e8(), minus_e8(), h.clone(), h.clone(), h]);
        FourManifoldModel::new(q, 24, -16, Some(vec![0; 22]), 3, Vec::new()).expect("K3 model is consistent")
    }

    /// T⁴: `3H`, `χ = σ = 0`, `K = 0`.
    pub fn four_torus() -> FourManifoldModel {
        let h = hyperbolic();
        let q = direct_sum(&[h.clone(), h.clone(), h]);
        FourManifoldModel::new(q, 0, 0, Some(vec![0; 6]), 3, Vec::new()).expect("T⁴ model is consistent")
    }

    /// `S² × S²`: `H`, `χ = 4`, `σ = 0`, `K = (−2, −2)`.
    pub fn s2_times_s2() -> FourManifoldModel {
        FourManifoldModel::new(hyperbolic(), 4, 0, Some(vec![-2, -2]), 1, Vec::new()).expect("S²×S² model is consistent")
    }
}

#[cfg(test)]
mod tests {
    use super::models::*;
    use super::*;
    use crate::trig::rat;

    #[test]
    fn d_examples() {
        assert_eq!(d_invariant(&k3(), &SpinCClass { c1: vec![0; 22] }), Ok(0));
        assert_eq!(d_invariant(&four_torus(), &SpinCClass { c1: vec![0; 6] }), Ok(0));
        assert_eq!(d_invariant(&s2_times_s2(), &SpinCClass { c1: vec![2, 2] }), Ok(0));
        assert_eq!(d_invariant(&s2_times_s2(), &SpinCClass { c1: vec![1, 0] }), Ok(-2));
        assert_eq!(d_invariant(&s2_times_s2(), &SpinCClass { c1: vec![1, 1] }), Err(IndexError::NotDivisible(-6)));
    }

    #[test]
    fn inertia_of_standard_forms() {
        assert_eq!(inertia(&hyperbolic()), Inertia { positive: 1, negative: 1, null: 0 });
        assert_eq!(inertia(&minus_e8()), Inertia { positive: 0, negative: 8, null: 0 });
        assert_eq!(k3().signature(), -16);
        assert_eq!(inertia(&[vec![1, 1], vec![1, 1]]), Inertia { positive: 1, negative: 0, null: 1 });
        assert_eq!(inertia(&[vec![0, 0], vec![0, 0]]).null, 2);
    }

    #[test]
    fn model_validation() {
        assert_eq!(
            FourManifoldModel::new(vec![vec![0, 1], vec![2, 0]], 0, 0, None, 1, vec![]),
            Err(IndexError::NotSymmetric { row: 1, col: 0 })
        );
        assert_eq!(
            FourManifoldModel::new(hyperbolic(), 4, 2, None, 1, vec![]),
            Err(IndexError::SignatureMismatch { declared: 2, computed: 0 })
        );
        assert_eq!(
            FourManifoldModel::new(hyperbolic(), 4, 0, None, 2, vec![]),
            Err(IndexError::B2PlusMismatch { declared: 2, computed: 1 })
        );
        let m = FourManifoldModel::new(hyperbolic(), 4, 0, Some(vec![1, 0]), 1, vec![]).unwrap();
        assert_eq!(m.warnings().len(), 2);
        assert!(s2_times_s2().warnings().is_empty());
        assert!(k3().warnings().is_empty());
    }

    #[test]
    fn ech_index_examples() {
        let t4 = four_torus();
        assert_eq!(ech_index_closed(&t4, &[0; 6]), Ok(0));
        assert_eq!(ech_index_closed(&t4, &[1, 1, 0, 0, 0, 0]), Ok(2));
        let no_k = FourManifoldModel::new(hyperbolic(), 4, 0, None, 1, vec![]).unwrap();
        assert_eq!(ech_index_closed(&no_k, &[0, 0]), Err(IndexError::MissingCanonicalClass));
    }

    #[test]
    fn lift_examples() {
        let t4 = FourManifoldModel::new(
            direct_sum(&[hyperbolic(), hyperbolic(), hyperbolic()]),
            0,
            0,
            Some(vec![0; 6]),
            3,
            vec![vec![0, 0, 1, 0, 0, 0]],
        )
        .unwrap();
        let a = vec![1, 1, 0, 0, 0, 0];
        let v = vec![0, 0, 1, 0, 0, 0];
        assert_eq!(
            lift_invariance_check(&t4, &LiftTarget::Index(a.clone()), &v),
            Ok(LiftCheck { invariant: true, residual: 0 })
        );
        assert_eq!(
            lift_invariance_check(&t4, &LiftTarget::Index(a.clone()), &a),
            Ok(LiftCheck { invariant: false, residual: 6 })
        );
        assert!(lift_invariance_check(&t4, &LiftTarget::SpinC(vec![0; 6]), &[0; 6]).unwrap().invariant);
        assert_eq!(check_mv_image(&t4, &LiftTarget::Index(a)).unwrap().len(), 1);
    }

    #[test]
    fn bridge_examples() {
        let s = s2_times_s2();
        assert_eq!(gr_sw_bridge(&s, &[0, 0]).unwrap().c1, vec![2, 2]);
        let t4 = four_torus();
        assert_eq!(gr_sw_bridge(&t4, &[1, 0, 0, 0, 0, 0]).unwrap().c1, vec![2, 0, 0, 0, 0, 0]);
        let a = [1, -1];
        let c1 = gr_sw_bridge(&s, &a).unwrap();
        assert!(s.is_characteristic(&c1.c1));
        assert_eq!(d_invariant(&s, &c1), ech_index_closed(&s, &a));
    }

    #[test]
    fn chamber_examples() {
        assert_eq!(chamber_side(&ChamberData { omega_dot_c1: -1.0, mu_term: 0.0 }), ChamberSide::Negative);
        assert_eq!(chamber_side(&ChamberData { omega_dot_c1: 0.0, mu_term: 0.0 }), ChamberSide::Wall);
        assert_eq!(chamber_side(&ChamberData { omega_dot_c1: 1.0, mu_term: 1.0 }), ChamberSide::Positive);
        assert_eq!(ChamberSide::Negative.label(), "negative (symplectic chamber)");
    }

    #[test]
    fn exact_chamber_near_the_wall() {
        // 355/113 exceeds π by about 2.7e-7, 333/106 falls short by about 8.3e-5
        assert_eq!(chamber_side_exact(&rat(1, 1), &rat(-710, 113)), Ok(ChamberSide::Negative));
        assert_eq!(chamber_side_exact(&rat(1, 1), &rat(-666, 106)), Ok(ChamberSide::Positive));
        assert_eq!(chamber_side_exact(&rat(-3, 1), &rat(2130, 113)), Ok(ChamberSide::Positive));
        assert_eq!(chamber_side_exact(&rat(0, 1), &rat(0, 1)), Ok(ChamberSide::Wall));
        assert_eq!(chamber_side_exact(&rat(0, 1), &rat(-1, 3)), Ok(ChamberSide::Negative));
    }

    #[test]
    fn pi_brackets() {
        let (lo, hi) = pi_bounds(8);
        let to_f = |r: &BigRational| r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap();
        assert!(to_f(&lo) <= PI && PI <= to_f(&hi));
        assert!(to_f(&hi) - to_f(&lo) < 1e-10);
    }
}
