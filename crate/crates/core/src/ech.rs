//! Degree-0 embedded contact homology of `(T³, ξ0)` with `Z/2` coefficients,
//! identified with `H2(T³; Z/2)` in the basis `(x, y, θ̄)`.

use std::fmt;
use std::ops::Add;

use crate::census::OrbitClass;
use crate::conventions::HIdentification;
use crate::error::EchError;
use crate::surgery::{is_luttinger, mod2, TorusDiffeo};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EchZeroClass {
    pub x: bool,
    pub y: bool,
    pub theta_bar: bool,
}

impl EchZeroClass {
    pub const ZERO: EchZeroClass = EchZeroClass { x: false, y: false, theta_bar: false };

    pub fn new(x: bool, y: bool, theta_bar: bool) -> Self {
        EchZeroClass { x, y, theta_bar }
    }

    /// From integer coordinates, reduced mod 2.
    pub fn from_ints(x: i64, y: i64, theta_bar: i64) -> Self {
        EchZeroClass::new(x.rem_euclid(2) == 1, y.rem_euclid(2) == 1, theta_bar.rem_euclid(2) == 1)
    }

    pub fn bits(&self) -> [bool; 3] {
        [self.x, self.y, self.theta_bar]
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    /// `x + θ̄` style rendering; `0` for the zero class.
    pub fn formal_sum(&self) -> String {
        let names = ["x", "y", "θ̄"];
        let parts: Vec<&str> = self.bits().iter().zip(names).filter(|(b, _)| **b).map(|(_, n)| n).collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl Add for EchZeroClass {
    type Output = EchZeroClass;

    fn add(self, rhs: EchZeroClass) -> EchZeroClass {
        EchZeroClass::new(self.x ^ rhs.x, self.y ^ rhs.y, self.theta_bar ^ rhs.theta_bar)
    }
}

impl fmt::Display for EchZeroClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, t] = self.bits().map(u8::from);
        write!(f, "({x},{y},{t})")
    }
}

/// `Gr_L(A) = (a, b, Gr_X(A))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrTriple {
    pub a: bool,
    pub b: bool,
    pub gr_x: bool,
}

impl GrTriple {
    pub fn as_class(&self) -> EchZeroClass {
        EchZeroClass::new(self.a, self.b, self.gr_x)
    }
}

impl From<GrTriple> for EchZeroClass {
    fn from(g: GrTriple) -> Self {
        g.as_class()
    }
}

/// `h(v)` under the default identification `h(e1) ↔ x`.
pub fn h_class(v: OrbitClass) -> EchZeroClass {
    h_class_with(v, HIdentification::E1ToX)
}

pub fn h_class_with(v: OrbitClass, ident: HIdentification) -> EchZeroClass {
    let c = EchZeroClass::from_ints(v.m, v.n, 0);
    match ident {
        HIdentification::E1ToX => c,
        HIdentification::E1ToY => EchZeroClass::new(c.y, c.x, false),
    }
}

/// The class of the empty orbit set.
pub fn contact_invariant() -> EchZeroClass {
    EchZeroClass::new(false, false, true)
}

/// Image of `c` under a Luttinger contactomorphism `f_{1,r,s}`.
pub fn act_contactomorphism(f: &TorusDiffeo, c: EchZeroClass) -> Result<EchZeroClass, EchError> {
    if f.p() != 1 {
        return Err(EchError::NotContactomorphism { p: f.p(), r: f.r(), s: f.s() });
    }
    if !is_luttinger(f) {
        return Err(EchError::NotLuttinger { r: f.r(), s: f.s() });
    }
    Ok(apply_mod2(f, c))
}

fn apply_mod2(f: &TorusDiffeo, c: EchZeroClass) -> EchZeroClass {
    let m = mod2(f.h2());
    let v = c.bits();
    let row = |i: usize| (0..3).fold(false, |acc, j| acc ^ (m[i][j] && v[j]));
    EchZeroClass::new(row(0), row(1), row(2))
}

/// The θ̄ coordinate, i.e. the cobordism map of the torus neighborhood mod 2.
pub fn phi_n_mod2(c: EchZeroClass) -> bool {
    c.theta_bar
}

/// `(Gr_{f_{1,1,0}} − Gr_X, Gr_{f_{1,0,1}} − Gr_X, Gr_X)` over `Z/2`.
pub fn gr_from_surgeries(gr_x: bool, gr_110: bool, gr_101: bool) -> GrTriple {
    GrTriple { a: gr_110 ^ gr_x, b: gr_101 ^ gr_x, gr_x }
}
