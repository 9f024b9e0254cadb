//! Torus surgeries `f_{p,r,s}` and the product formula along T³.
//!
//! Homology of T³ uses the ordered basis `(x, y, θ̄)`. A surgery acts on
//! `H2(T³) ≅ Z³` by an `SL3(Z)` matrix that multiplies coordinate columns;
//! its θ̄ row is `(r, s, p)`, so the θ̄ coordinate of `f_* (a, b, c)` is
//! `p c + r a + s b`. The action on `H1` is the inverse transpose.
//!
//! The cobordism map of the torus neighborhood is the projection onto the
//! θ̄ coordinate ([`phi_n`]), which turns the local invariant
//! `(a, b, SW_X)` into the Seiberg–Witten invariant of every surgery.

use std::fmt;

use num_integer::Integer;

use crate::error::SurgeryError;

pub type Mat3 = [[i64; 3]; 3];
pub type Vec3 = [i64; 3];

pub const IDENTITY: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer matrix entry overflowed i64")
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = narrow((0..3).map(|k| a[i][k] as i128 * b[k][j] as i128).sum());
        }
    }
    out
}

pub fn mat_apply(m: &Mat3, v: &Vec3) -> Vec3 {
    let mut out = [0; 3];
    for i in 0..3 {
        out[i] = narrow((0..3).map(|k| m[i][k] as i128 * v[k] as i128).sum());
    }
    out
}

pub fn transpose(m: &Mat3) -> Mat3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i];
        }
    }
    out
}

fn minor(m: &Mat3, row: usize, col: usize) -> i128 {
    let rows: Vec<usize> = (0..3).filter(|&i| i != row).collect();
    let cols: Vec<usize> = (0..3).filter(|&j| j != col).collect();
    let e = |i: usize, j: usize| m[rows[i]][cols[j]] as i128;
    e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0)
}

pub fn det(m: &Mat3) -> i64 {
    narrow((0..3).map(|j| if j % 2 == 0 { 1 } else { -1 } * m[0][j] as i128 * minor(m, 0, j)).sum())
}

/// Classical adjugate; equals the inverse when `det = 1`.
pub fn adjugate(m: &Mat3) -> Mat3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            out[j][i] = narrow(sign * minor(m, i, j));
        }
    }
    out
}

/// Reduction mod 2, entries in `{0, 1}`.
pub fn mod2(m: &Mat3) -> [[bool; 3]; 3] {
    let mut out = [[false; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[i][j].rem_euclid(2) == 1;
        }
    }
    out
}

/// A diffeomorphism class of T³ through its action on homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusDiffeo {
    h2: Mat3,
    h1: Mat3,
}

impl TorusDiffeo {
    /// Wraps an `H2` matrix, deriving the `H1` action as its inverse transpose.
    pub fn from_h2(h2: Mat3) -> Result<Self, SurgeryError> {
        let d = det(&h2);
        if d != 1 {
            return Err(SurgeryError::NotUnimodular(d));
        }
        Ok(TorusDiffeo { h2, h1: transpose(&adjugate(&h2)) })
    }

    pub fn identity() -> Self {
        TorusDiffeo { h2: IDENTITY, h1: IDENTITY }
    }

    /// The Luttinger map `(x, y, θ) ↦ (x + rθ, y + sθ, θ)`.
    pub fn luttinger(r: i64, s: i64) -> Self {
        complete_sl3(1, r, s).expect("(1, r, s) is primitive")
    }

    pub fn h2(&self) -> &Mat3 {
        &self.h2
    }

    pub fn h1(&self) -> &Mat3 {
        &self.h1
    }

    pub fn p(&self) -> i64 {
        self.h2[2][2]
    }

    pub fn r(&self) -> i64 {
        self.h2[2][0]
    }

    pub fn s(&self) -> i64 {
        self.h2[2][1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &TorusDiffeo) -> TorusDiffeo {
        TorusDiffeo { h2: mat_mul(&self.h2, &other.h2), h1: mat_mul(&self.h1, &other.h1) }
    }
}

impl fmt::Display for TorusDiffeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f_{{{},{},{}}}", self.p(), self.r(), self.s())
    }
}

/// `(g, x, y)` with `g = gcd(a, b) >= 0` and `a x + b y = g`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_x, mut x) = (1i128, 0i128);
    let (mut old_y, mut y) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    if old_r < 0 {
        (old_r, old_x, old_y) = (-old_r, -old_x, -old_y);
    }
    (narrow(old_r), narrow(old_x), narrow(old_y))
}

/// Bézout pair `(x, y)` with `x u + y w = gcd(u, w)`, normalized so that
/// `0 <= x < |w / g|` (or `x = sign(u)`, `y = 0` when `w = 0`).
fn bezout(u: i64, w: i64) -> (i64, i64, i64) {
    let (g, x, _) = ext_gcd(u, w);
    if w == 0 {
        return (g, u.signum(), 0);
    }
    let period = (w / g).abs();
    let x = x.rem_euclid(period);
    let y = narrow((g as i128 - x as i128 * u as i128) / w as i128);
    (g, x, y)
}

/// Column operation on columns `j < k` of `c` that sends the row-vector
/// entries `(u, w)` in those columns to `(0, gcd(u, w))`.
fn combine_columns(c: &mut Mat3, v: &mut Vec3, j: usize, k: usize) {
    let (u, w) = (v[j], v[k]);
    let (g, x, y) = bezout(u, w);
    if g == 0 {
        return;
    }
    let (wg, ug) = (w / g, u / g);
    for row in c.iter_mut() {
        let (cj, ck) = (row[j], row[k]);
        row[j] = narrow(wg as i128 * cj as i128 - ug as i128 * ck as i128);
        row[k] = narrow(x as i128 * cj as i128 + y as i128 * ck as i128);
    }
    v[j] = 0;
    v[k] = g;
}

/// Deterministic `SL3(Z)` representative of `f_{p,r,s}`: an `H2` matrix with
/// θ̄ row `(r, s, p)`. Column operations from two extended-gcd stages reduce
/// `(r, s, p)` to `(0, 0, 1)`; the `H2` matrix is their inverse and the `H1`
/// matrix their transpose. For `p = 1` this is the Luttinger normal form
/// `[[1,0,0],[0,1,0],[r,s,1]]`.
pub fn complete_sl3(p: i64, r: i64, s: i64) -> Result<TorusDiffeo, SurgeryError> {
    let gcd = r.gcd(&s).gcd(&p);
    if gcd != 1 {
        return Err(SurgeryError::NotPrimitive { p, r, s, gcd });
    }
    let mut ops = IDENTITY;
    let mut row = [r, s, p];
    combine_columns(&mut ops, &mut row, 1, 2);
    combine_columns(&mut ops, &mut row, 0, 2);
    debug_assert_eq!(row, [0, 0, 1]);
    let h2 = adjugate(&ops);
    Ok(TorusDiffeo { h2, h1: transpose(&ops) })
}

/// The cobordism map of the torus neighborhood: projection onto θ̄.
pub fn phi_n(v: &Vec3) -> i64 {
    v[2]
}

/// `SW_L(𝔰) = (a, b, c)` in coordinates `(x, y, θ̄)`, with `c = SW_X(𝔰)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LocalTorusInvariant {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl LocalTorusInvariant {
    pub fn as_vec(&self) -> Vec3 {
        [self.a, self.b, self.c]
    }
}

impl fmt::Display for LocalTorusInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// `Φ_N ∘ f_* ∘ SW_L`, computed through the matrix.
pub fn predict_surgery(swl: &LocalTorusInvariant, f: &TorusDiffeo) -> i64 {
    phi_n(&mat_apply(f.h2(), &swl.as_vec()))
}

/// Places the invariants of `X`, `X_{f_{0,1,0}}` and `X_{f_{0,0,1}}`.
pub fn assemble_swl(sw_x: i64, sw_010: i64, sw_001: i64) -> LocalTorusInvariant {
    LocalTorusInvariant { a: sw_010, b: sw_001, c: sw_x }
}

/// Closed form `p·SW_X + r·SW_{f_{0,1,0}} + s·SW_{f_{0,0,1}}`.
pub fn product_formula(swl: &LocalTorusInvariant, p: i64, r: i64, s: i64) -> i64 {
    narrow(p as i128 * swl.c as i128 + r as i128 * swl.a as i128 + s as i128 * swl.b as i128)
}

/// Whether some diffeomorphism realizes `(p, r, s)`.
pub fn is_realizable(p: i64, r: i64, s: i64) -> bool {
    r.gcd(&s).gcd(&p) == 1
}

/// Luttinger surgeries are the `p = 1` maps acting trivially on `H1(T²)`.
pub fn is_luttinger(f: &TorusDiffeo) -> bool {
    let h1 = f.h1();
    f.p() == 1 && (0..3).all(|i| h1[i][0] == IDENTITY[i][0] && h1[i][1] == IDENTITY[i][1])
}

/// One observation `Gr_{X_{f_{1,r,s}}}(A)` (mod 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GromovEquation {
    pub r: i64,
    pub s: i64,
    pub gr_value: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GromovSolution {
    Unique { a: bool, b: bool },
    /// Solutions are `particular + span(directions)` over GF(2).
    Underdetermined { particular: (bool, bool), directions: Vec<(bool, bool)> },
}

/// Solves `r a + s b ≡ gr − base (mod 2)` for the pair `(a, b)`.
///
/// With two unknowns the solution set is read off by checking the four
/// points of GF(2)²; an inconsistent system reports a smallest conflicting
/// subset of equation indices (at most three equations).
pub fn solve_gromov(base: bool, eqs: &[GromovEquation]) -> Result<GromovSolution, SurgeryError> {
    if eqs.is_empty() {
        return Err(SurgeryError::NoEquations);
    }
    let holds = |e: &GromovEquation, a: bool, b: bool| {
        let lhs = (e.r.rem_euclid(2) == 1 && a) ^ (e.s.rem_euclid(2) == 1 && b);
        lhs == (e.gr_value ^ base)
    };
    let points = [(false, false), (true, false), (false, true), (true, true)];
    let solutions: Vec<(bool, bool)> =
        points.iter().copied().filter(|&(a, b)| eqs.iter().all(|e| holds(e, a, b))).collect();
    match solutions.len() {
        0 => Err(SurgeryError::Inconsistent(minimal_conflict(eqs, &points, holds))),
        1 => Ok(GromovSolution::Unique { a: solutions[0].0, b: solutions[0].1 }),
        2 => {
            let (p, q) = (solutions[0], solutions[1]);
            Ok(GromovSolution::Underdetermined { particular: p, directions: vec![(p.0 ^ q.0, p.1 ^ q.1)] })
        }
        _ => Ok(GromovSolution::Underdetermined {
            particular: (false, false),
            directions: vec![(true, false), (false, true)],
        }),
    }
}

fn minimal_conflict<F>(eqs: &[GromovEquation], points: &[(bool, bool)], holds: F) -> Vec<usize>
where
    F: Fn(&GromovEquation, bool, bool) -> bool,
{
    let inconsistent =
        |idx: &[usize]| !points.iter().any(|&(a, b)| idx.iter().all(|&i| holds(&eqs[i], a, b)));
    let n = eqs.len();
    for i in 0..n {
        if inconsistent(&[i]) {
            return vec![i];
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if inconsistent(&[i, j]) {
                return vec![i, j];
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if inconsistent(&[i, j, k]) {
                    return vec![i, j, k];
                }
            }
        }
    }
    (0..n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(r: i64, s: i64, gr: u8) -> GromovEquation {
        GromovEquation { r, s, gr_value: gr == 1 }
    }

    #[test]
    fn luttinger_normal_form() {
        let f = complete_sl3(1, 3, -2).unwrap();
        assert_eq!(f.h2(), &[[1, 0, 0], [0, 1, 0], [3, -2, 1]]);
        assert_eq!(f.h1(), &[[1, 0, -3], [0, 1, 2], [0, 0, 1]]);
        assert_eq!(complete_sl3(1, 0, 0).unwrap(), TorusDiffeo::identity());
    }

    #[test]
    fn permutation_type_completion() {
        let f = complete_sl3(0, 1, 0).unwrap();
        assert_eq!(det(f.h2()), 1);
        assert_eq!(f.h2()[2], [1, 0, 0]);
        assert_eq!(f.h1(), &transpose(&adjugate(f.h2())));
    }

    #[test]
    fn rejects_non_primitive() {
        assert_eq!(complete_sl3(2, 4, 6), Err(SurgeryError::NotPrimitive { p: 2, r: 4, s: 6, gcd: 2 }));
        assert!(matches!(complete_sl3(0, 0, 0), Err(SurgeryError::NotPrimitive { gcd: 0, .. })));
    }

    #[test]
    fn completion_sweep() {
        for p in -6..=6 {
            for r in -6..=6 {
                for s in -6..=6 {
                    if !is_realizable(p, r, s) {
                        continue;
                    }
                    let f = complete_sl3(p, r, s).unwrap();
                    assert_eq!(det(f.h2()), 1);
                    assert_eq!(f.h2()[2], [r, s, p]);
                    assert_eq!(mat_mul(&transpose(f.h1()), f.h2()), IDENTITY);
                }
            }
        }
    }

    #[test]
    fn predict_examples() {
        let swl = LocalTorusInvariant { a: 2, b: -1, c: 3 };
        let f = complete_sl3(5, 4, 7).unwrap();
        assert_eq!(predict_surgery(&swl, &f), 16);
        assert_eq!(product_formula(&swl, 5, 4, 7), 16);
        assert_eq!(predict_surgery(&swl, &complete_sl3(1, 0, 0).unwrap()), 3);
        assert_eq!(predict_surgery(&swl, &complete_sl3(0, 1, 0).unwrap()), 2);
        assert_eq!(product_formula(&LocalTorusInvariant { a: 1, b: 1, c: 1 }, 2, 3, 4), 9);
    }

    #[test]
    fn phi_n_examples() {
        assert_eq!(phi_n(&[0, 0, 1]), 1);
        assert_eq!(phi_n(&[1, 0, 0]), 0);
        assert_eq!(phi_n(&[3, -2, 5]), 5);
    }

    #[test]
    fn assemble_examples() {
        assert_eq!(assemble_swl(7, 0, 0), LocalTorusInvariant { a: 0, b: 0, c: 7 });
        assert_eq!(assemble_swl(1, 2, 3), LocalTorusInvariant { a: 2, b: 3, c: 1 });
    }

    #[test]
    fn gromov_examples() {
        assert_eq!(
            solve_gromov(true, &[eq(1, 0, 1), eq(0, 1, 0)]),
            Ok(GromovSolution::Unique { a: false, b: true })
        );
        assert_eq!(
            solve_gromov(false, &[eq(1, 0, 0)]),
            Ok(GromovSolution::Underdetermined { particular: (false, false), directions: vec![(false, true)] })
        );
        assert_eq!(solve_gromov(false, &[eq(1, 0, 0), eq(1, 0, 1)]), Err(SurgeryError::Inconsistent(vec![0, 1])));
        assert_eq!(solve_gromov(false, &[]), Err(SurgeryError::NoEquations));
    }

    #[test]
    fn gromov_three_way_conflict() {
        let eqs = [eq(1, 0, 0), eq(0, 1, 0), eq(1, 1, 1)];
        assert_eq!(solve_gromov(false, &eqs), Err(SurgeryError::Inconsistent(vec![0, 1, 2])));
        // even (r, s) with a nonzero right side is contradictory on its own
        assert_eq!(solve_gromov(false, &[eq(1, 0, 1), eq(2, 4, 1)]), Err(SurgeryError::Inconsistent(vec![1])));
    }

    #[test]
    fn luttinger_detection() {
        assert!(is_luttinger(&complete_sl3(1, 5, -2).unwrap()));
        assert!(!is_luttinger(&complete_sl3(0, 1, 0).unwrap()));
        assert!(is_luttinger(&TorusDiffeo::identity()));
        // p = 1 but swapping x and y on the torus factor
        let twisted = TorusDiffeo::from_h2([[0, 1, 0], [-1, 0, 0], [0, 0, 1]]).unwrap();
        assert!(!is_luttinger(&twisted));
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -20..20 {
            for b in -20..20 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g, a.gcd(&b));
            }
        }
    }
}
