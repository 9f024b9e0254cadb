//! Trigonometric polynomials with rational coefficients.
//!
//! A [`TrigPoly`] is `c0 + sum_k (c_k cos kθ + s_k sin kθ)` with `k >= 1`.
//! The rational coefficients are the source of truth; an `f64` shadow of
//! them is kept for fast numeric evaluation. Values at `θ = q·π/2` are
//! rational and can be computed exactly with [`TrigPoly::eval_quarter_turns`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Which basis function a coefficient multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermKind {
    Const,
    Cos,
    Sin,
}

impl TermKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TermKind::Const => "const",
            TermKind::Cos => "cos",
            TermKind::Sin => "sin",
        }
    }
}

impl std::str::FromStr for TermKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "const" => Ok(TermKind::Const),
            "cos" => Ok(TermKind::Cos),
            "sin" => Ok(TermKind::Sin),
            other => Err(format!("unknown term kind `{other}` (expected const, cos or sin)")),
        }
    }
}

/// One nonzero monomial of a [`TrigPoly`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub kind: TermKind,
    pub frequency: u32,
    pub coefficient: BigRational,
}

/// Convenience constructor for a rational `num/den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone)]
pub struct TrigPoly {
    constant: BigRational,
    // index k-1 holds the coefficient of frequency k; both vectors have
    // length max_frequency and the top entry of at least one is nonzero
    cos: Vec<BigRational>,
    sin: Vec<BigRational>,
    f_constant: f64,
    f_cos: Vec<f64>,
    f_sin: Vec<f64>,
}

impl TrigPoly {
    fn from_parts(constant: BigRational, mut cos: Vec<BigRational>, mut sin: Vec<BigRational>) -> Self {
        let n = cos.len().max(sin.len());
        cos.resize(n, BigRational::zero());
        sin.resize(n, BigRational::zero());
        while let (Some(c), Some(s)) = (cos.last(), sin.last()) {
            if c.is_zero() && s.is_zero() {
                cos.pop();
                sin.pop();
            } else {
                break;
            }
        }
        let to_f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        TrigPoly {
            f_constant: to_f(&constant),
            f_cos: cos.iter().map(to_f).collect(),
            f_sin: sin.iter().map(to_f).collect(),
            constant,
            cos,
            sin,
        }
    }

    pub fn zero() -> Self {
        Self::from_parts(BigRational::zero(), Vec::new(), Vec::new())
    }

    pub fn constant(value: BigRational) -> Self {
        Self::from_parts(value, Vec::new(), Vec::new())
    }

    /// `value · cos(frequency·θ)`; frequency 0 gives a constant.
    pub fn cos(frequency: u32, value: BigRational) -> Self {
        Self::from_terms([(TermKind::Cos, frequency, value)])
    }

    /// `value · sin(frequency·θ)`; frequency 0 gives zero.
    pub fn sin(frequency: u32, value: BigRational) -> Self {
        Self::from_terms([(TermKind::Sin, frequency, value)])
    }

    /// Sums the given monomials. Repeated `(kind, frequency)` pairs add up,
    /// `cos 0θ` is folded into the constant and `sin 0θ` vanishes.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (TermKind, u32, BigRational)>,
    {
        let mut constant = BigRational::zero();
        let mut cos: Vec<BigRational> = Vec::new();
        let mut sin: Vec<BigRational> = Vec::new();
        for (kind, k, value) in terms {
            let k = k as usize;
            match kind {
                TermKind::Const => constant += value,
                TermKind::Cos if k == 0 => constant += value,
                TermKind::Sin if k == 0 => {}
                TermKind::Cos => {
                    if cos.len() < k {
                        cos.resize(k, BigRational::zero());
                    }
                    cos[k - 1] += value;
                }
                TermKind::Sin => {
                    if sin.len() < k {
                        sin.resize(k, BigRational::zero());
                    }
                    sin[k - 1] += value;
                }
            }
        }
        Self::from_parts(constant, cos, sin)
    }

    pub fn max_frequency(&self) -> u32 {
        self.cos.len() as u32
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.cos.is_empty()
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.constant
    }

    /// Coefficient of `cos kθ` (`k >= 1`), zero beyond the max frequency.
    pub fn cos_coefficient(&self, k: u32) -> BigRational {
        coefficient_at(&self.cos, k)
    }

    /// Coefficient of `sin kθ` (`k >= 1`), zero beyond the max frequency.
    pub fn sin_coefficient(&self, k: u32) -> BigRational {
        coefficient_at(&self.sin, k)
    }

    /// Nonzero monomials in canonical `(kind, frequency)` order.
    pub fn terms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        if !self.constant.is_zero() {
            out.push(Term { kind: TermKind::Const, frequency: 0, coefficient: self.constant.clone() });
        }
        for (kind, coeffs) in [(TermKind::Cos, &self.cos), (TermKind::Sin, &self.sin)] {
            for (i, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    out.push(Term { kind, frequency: i as u32 + 1, coefficient: c.clone() });
                }
            }
        }
        out
    }

    pub fn derivative(&self) -> Self {
        let mut cos = Vec::with_capacity(self.cos.len());
        let mut sin = Vec::with_capacity(self.sin.len());
        for (i, (c, s)) in self.cos.iter().zip(&self.sin).enumerate() {
            let k = BigRational::from_integer(BigInt::from(i + 1));
            // d/dθ (c cos kθ + s sin kθ) = k s cos kθ - k c sin kθ
            cos.push(&k * s);
            sin.push(-(&k * c));
        }
        Self::from_parts(BigRational::zero(), cos, sin)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::from_parts(
            &self.constant * factor,
            self.cos.iter().map(|c| c * factor).collect(),
            self.sin.iter().map(|s| s * factor).collect(),
        )
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut acc = self.f_constant;
        for (i, (c, s)) in self.f_cos.iter().zip(&self.f_sin).enumerate() {
            let (sn, cs) = ((i + 1) as f64 * theta).sin_cos();
            acc += c * cs + s * sn;
        }
        acc
    }

    /// Exact value at `θ = quarter_turns · π/2`.
    pub fn eval_quarter_turns(&self, quarter_turns: i64) -> BigRational {
        let mut acc = self.constant.clone();
        for (i, (c, s)) in self.cos.iter().zip(&self.sin).enumerate() {
            let phase = ((i as i64 + 1) * quarter_turns.rem_euclid(4)).rem_euclid(4);
            match phase {
                0 => acc += c,
                1 => acc += s,
                2 => acc -= c,
                _ => acc -= s,
            }
        }
        acc
    }

    /// `|c0| + Σ (|c_k| + |s_k|)`, an upper bound for `|p(θ)|` over all θ.
    pub fn sup_bound(&self) -> f64 {
        let mut total = self.constant.abs();
        for (c, s) in self.cos.iter().zip(&self.sin) {
            total += c.abs() + s.abs();
        }
        round_up(&total)
    }

    /// `Σ k (|c_k| + |s_k|)`, an upper bound for `|p'(θ)|`, i.e. a Lipschitz
    /// constant for `p`.
    pub fn lipschitz_bound(&self) -> f64 {
        self.derivative().sup_bound()
    }

    fn dense(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut a = Vec::with_capacity(self.cos.len() + 1);
        a.push(self.constant.clone());
        a.extend(self.cos.iter().cloned());
        let mut b = Vec::with_capacity(self.sin.len() + 1);
        b.push(BigRational::zero());
        b.extend(self.sin.iter().cloned());
        (a, b)
    }

    fn from_dense(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Self {
        if a.is_empty() {
            a.push(BigRational::zero());
        }
        if b.is_empty() {
            b.push(BigRational::zero());
        }
        let constant = a.remove(0);
        b.remove(0);
        Self::from_parts(constant, a, b)
    }
}

fn coefficient_at(coeffs: &[BigRational], k: u32) -> BigRational {
    if k == 0 {
        return BigRational::zero();
    }
    coeffs.get(k as usize - 1).cloned().unwrap_or_else(BigRational::zero)
}

// f64 conversion rounds to nearest; nudge up so bounds stay bounds
fn round_up(q: &BigRational) -> f64 {
    let x = q.to_f64().unwrap_or(f64::INFINITY);
    if x == 0.0 {
        0.0
    } else {
        x * (1.0 + 4.0 * f64::EPSILON)
    }
}

impl PartialEq for TrigPoly {
    fn eq(&self, other: &Self) -> bool {
        self.constant == other.constant && self.cos == other.cos && self.sin == other.sin
    }
}

impl Eq for TrigPoly {}

impl fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrigPoly({self})")
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in terms.iter().enumerate() {
            let neg = t.coefficient.is_negative();
            let mag = t.coefficient.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_one = mag == BigRational::from_integer(BigInt::from(1));
            match t.kind {
                TermKind::Const => write!(f, "{mag}")?,
                kind => {
                    if !is_one {
                        write!(f, "{mag}·")?;
                    }
                    if t.frequency == 1 {
                        write!(f, "{}θ", kind.as_str())?;
                    } else {
                        write!(f, "{}{}θ", kind.as_str(), t.frequency)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;

    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let n = self.cos.len().max(rhs.cos.len());
        let pick = |v: &[BigRational], i: usize| v.get(i).cloned().unwrap_or_else(BigRational::zero);
        TrigPoly::from_parts(
            &self.constant + &rhs.constant,
            (0..n).map(|i| pick(&self.cos, i) + pick(&rhs.cos, i)).collect(),
            (0..n).map(|i| pick(&self.sin, i) + pick(&rhs.sin, i)).collect(),
        )
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;

    fn neg(self) -> TrigPoly {
        TrigPoly::from_parts(
            -self.constant.clone(),
            self.cos.iter().map(|c| -c.clone()).collect(),
            self.sin.iter().map(|s| -s.clone()).collect(),
        )
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;

    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &(-rhs)
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;

    /// Exact product via the product-to-sum identities.
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let (a1, b1) = self.dense();
        let (a2, b2) = rhs.dense();
        let n = a1.len() + a2.len() - 1;
        let mut a = vec![BigRational::zero(); n];
        let mut b = vec![BigRational::zero(); n];
        let half = rat(1, 2);
        for j in 0..a1.len() {
            for k in 0..a2.len() {
                let sum = j + k;
                let diff = j.abs_diff(k);
                // cos j cos k = ½[cos(j+k) + cos(j-k)]
                let cc = &a1[j] * &a2[k] * &half;
                // sin j sin k = ½[cos(j-k) - cos(j+k)]
                let ss = &b1[j] * &b2[k] * &half;
                // cos j sin k = ½[sin(j+k) + sin(k-j)]
                let cs = &a1[j] * &b2[k] * &half;
                // sin j cos k = ½[sin(j+k) + sin(j-k)]
                let sc = &b1[j] * &a2[k] * &half;
                a[sum] += &cc - &ss;
                a[diff] += &cc + &ss;
                b[sum] += &cs + &sc;
                match j.cmp(&k) {
                    Ordering::Less => b[diff] += &cs - &sc,
                    Ordering::Greater => b[diff] += &sc - &cs,
                    Ordering::Equal => {}
                }
            }
        }
        TrigPoly::from_dense(a, b)
    }
}
