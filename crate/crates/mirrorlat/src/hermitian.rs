//! The monodromy-invariant Hermitian form `h(κ)` on `ℂ^{n+1}`, the reflection representation of
//! the affine Artin group, determinant formulas and the hyperbolic region.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::connection::Kappa;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, qi, to_f64, Q};
use crate::rootsystem::{Family, RootSystem};

pub type CMat = DMatrix<Complex64>;

/// Relative zero threshold for eigenvalues.
pub const ZERO_THRESHOLD: f64 = 1e-8;

/// Gram matrix of `h(κ)` in the basis `e_0, …, e_n`; node 0 is `−α̃`.
#[derive(Clone, Debug)]
pub struct HermitianGram {
    pub family: Family,
    pub rank: usize,
    pub kappa: Kappa,
    pub entries: CMat,
    /// `q_j^{1/2} = exp(−πi k_j)`.
    pub q_half: Vec<Complex64>,
    /// `q'^{1/2}` for type `A`, otherwise `1`.
    pub qp_half: Complex64,
    pub coxeter: Vec<Vec<u32>>,
}

impl HermitianGram {
    pub fn dim(&self) -> usize {
        self.rank + 1
    }

    pub fn hermitian_defect(&self) -> f64 {
        max_abs(&(&self.entries - self.entries.adjoint()))
    }

    pub fn det(&self) -> f64 {
        self.entries.determinant().re
    }

    /// Largest absolute eigenvalue.
    pub fn norm(&self) -> f64 {
        eigenvalues(&self.entries).iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn c_pairs(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect()
}

impl Serialize for HermitianGram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HermitianGram", 6)?;
        st.serialize_field("n_plus_1", &self.dim())?;
        st.serialize_field("k", &fmt_q(&self.kappa.k))?;
        st.serialize_field("kp", &fmt_q(&self.kappa.kp))?;
        st.serialize_field("entries", &c_pairs(&self.entries))?;
        st.serialize_field("q_half", &self.q_half.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())?;
        st.serialize_field("qp_half", &[self.qp_half.re, self.qp_half.im])?;
        st.end()
    }
}

fn unit_phase(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, -PI * x)
}

/// `h(κ)` with `q'^{1/2} = exp(−πi k')` for type `A`.
pub fn gram(rs: &RootSystem, kappa: &Kappa) -> Result<HermitianGram> {
    gram_with_qprime(rs, kappa, unit_phase(to_f64(&kappa.kp)))
}

/// `h(κ)` with an explicit `q'^{1/2}` (type `A` only; ignored otherwise).
pub fn gram_with_qprime(rs: &RootSystem, kappa: &Kappa, qp_half: Complex64) -> Result<HermitianGram> {
    kappa.check_restricted(rs)?;
    let family = rs.family();
    let n1 = rs.rank() + 1;
    let weights: Vec<f64> =
        rs.affine_orbits().into_iter().map(|o| to_f64(&kappa.orbit_weight(family, o))).collect();
    let q_half: Vec<Complex64> = weights.iter().map(|&k| unit_phase(k)).collect();
    let m = rs.affine_coxeter_matrix();
    let qp_half = if family == Family::A { qp_half } else { Complex64::one() };
    let entries = CMat::from_fn(n1, n1, |i, j| {
        if i == j {
            return Complex64::new(2.0 * (PI * weights[i]).cos(), 0.0);
        }
        if family == Family::A {
            return if (i + 1) % n1 == j {
                -qp_half.inv()
            } else if (j + 1) % n1 == i {
                -qp_half
            } else {
                Complex64::zero()
            };
        }
        let s = match m[i][j] {
            2 => 0.0,
            3 => 1.0,
            mij => (2.0 * (PI * (weights[i] - weights[j])).cos() + 2.0 * (2.0 * PI / mij as f64).cos()).sqrt(),
        };
        Complex64::new(-s, 0.0)
    });
    Ok(HermitianGram { family, rank: rs.rank(), kappa: kappa.clone(), entries, q_half, qp_half, coxeter: m.to_vec() })
}

/// Which coefficient multiplies `h_ij` in `T_j(e_i) = e_i − c·h_ij e_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `c = q_j^{1/2}`; preserves `h`.
    Invariant,
    /// `c = q_i^{1/2}`.
    AsPrinted,
}

#[derive(Clone, Debug)]
pub struct ReflectionRep {
    pub generators: Vec<CMat>,
    pub gram: HermitianGram,
    pub convention: Convention,
}

pub fn reflection_matrices(g: &HermitianGram) -> ReflectionRep {
    reflection_matrices_with(g, Convention::Invariant)
}

pub fn reflection_matrices_with(g: &HermitianGram, convention: Convention) -> ReflectionRep {
    let n1 = g.dim();
    let generators = (0..n1)
        .map(|j| {
            CMat::from_fn(n1, n1, |r, i| {
                let mut v = if r == i { Complex64::one() } else { Complex64::zero() };
                if r == j {
                    let c = match convention {
                        Convention::Invariant => g.q_half[j],
                        Convention::AsPrinted => g.q_half[i],
                    };
                    v -= c * g.entries[(i, j)];
                }
                v
            })
        })
        .collect();
    ReflectionRep { generators, gram: g.clone(), convention }
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidDefect {
    pub i: usize,
    pub j: usize,
    pub m: u32,
    pub defect: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub braid: Vec<BraidDefect>,
    /// `‖(T_j − 1)(T_j + q_j)‖_∞` per generator.
    pub quadratic: Vec<f64>,
    /// `‖T_jᵀ h T̄_j − h‖_∞` per generator.
    pub invariance: Vec<f64>,
    /// `|det T_j + q_j|` per generator.
    pub determinant: Vec<f64>,
}

impl RelationReport {
    pub fn max_braid(&self) -> f64 {
        self.braid.iter().fold(0.0, |m, b| m.max(b.defect))
    }

    pub fn max_quadratic(&self) -> f64 {
        self.quadratic.iter().fold(0.0, |m, &v| m.max(v))
    }

    pub fn max_invariance(&self) -> f64 {
        self.invariance.iter().fold(0.0, |m, &v| m.max(v))
    }

    pub fn max_determinant(&self) -> f64 {
        self.determinant.iter().fold(0.0, |m, &v| m.max(v))
    }

    pub fn passes(&self, tol: f64) -> bool {
        [self.max_braid(), self.max_quadratic(), self.max_invariance(), self.max_determinant()]
            .iter()
            .all(|&v| v < tol)
    }
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `T_i T_j T_i ⋯` with `m` factors.
pub fn alternating_product(a: &CMat, b: &CMat, m: u32) -> CMat {
    let mut out = CMat::identity(a.nrows(), a.ncols());
    for step in 0..m {
        out *= if step % 2 == 0 { a } else { b };
    }
    out
}

pub fn braids(a: &CMat, b: &CMat, m: u32) -> f64 {
    max_abs(&(alternating_product(a, b, m) - alternating_product(b, a, m)))
}

pub fn relation_checks(rep: &ReflectionRep) -> RelationReport {
    let g = &rep.gram;
    let n1 = g.dim();
    let m = &g.coxeter;
    let id = CMat::identity(n1, n1);
    let mut braid = Vec::new();
    for i in 0..n1 {
        for j in i + 1..n1 {
            let defect = braids(&rep.generators[i], &rep.generators[j], m[i][j]);
            braid.push(BraidDefect { i, j, m: m[i][j], defect });
        }
    }
    let qs: Vec<Complex64> = g.q_half.iter().map(|z| z * z).collect();
    let quadratic = rep
        .generators
        .iter()
        .zip(&qs)
        .map(|(t, qj)| max_abs(&((t - &id) * (t + &id * *qj))))
        .collect();
    let invariance =
        rep.generators.iter().map(|t| max_abs(&(t.transpose() * &g.entries * t.conjugate() - &g.entries))).collect();
    let determinant = rep.generators.iter().zip(&qs).map(|(t, qj)| (t.determinant() + qj).norm()).collect();
    RelationReport { braid, quadratic, invariance, determinant }
}

/// The pair `((−q₁, d₁), (0, 1))`, `((1, 0), (d₂, −q₂))` of 2×2 complex reflections.
pub fn two_by_two(q1: Complex64, q2: Complex64, d1: Complex64, d2: Complex64) -> (CMat, CMat) {
    let o = Complex64::one();
    let z = Complex64::zero();
    (CMat::from_row_slice(2, 2, &[-q1, d1, z, o]), CMat::from_row_slice(2, 2, &[o, z, d2, -q2]))
}

/// The algebraic criterion for a braid relation of length `m` between the 2×2 reflections of
/// [`two_by_two`], tested over all primitive `ξ` with `ξ^m = 1`.
pub fn braid_criterion(m: u32, q1: Complex64, q2: Complex64, d1: Complex64, d2: Complex64, tol: f64) -> bool {
    if m == 2 {
        return d1.norm() < tol && d2.norm() < tol;
    }
    let xis = (1..m).map(|r| Complex64::from_polar(1.0, 2.0 * PI * r as f64 / m as f64));
    let dd = d1 * d2;
    if m % 2 == 1 {
        (q1 - q2).norm() < tol && xis.into_iter().any(|xi| (dd - (2.0 + xi + xi.inv()) * q1).norm() < tol)
    } else {
        let root = q1.sqrt() * q2.sqrt();
        xis.into_iter()
            .filter(|xi| (xi * xi - 1.0).norm() > tol)
            .any(|xi| (dd - (q1 + q2 + (xi + xi.inv()) * root)).norm() < tol)
    }
}

/// `(x, y)` of the determinant formula for types `ABCFG`.
pub fn xy(rs: &RootSystem, kappa: &Kappa) -> Option<(Q, Q)> {
    let n = rs.rank() as i64;
    let (k, kp) = (&kappa.k, &kappa.kp);
    let two = qi(2);
    Some(match rs.family() {
        Family::A => (q(n + 1, 2) * (k + kp), q(n + 1, 2) * (k - kp)),
        Family::B => (qi(n - 2) * k + kp, &two * k),
        Family::C => (qi(n - 2) * k + &two * kp, k.clone()),
        Family::F => (k + kp, &two * k + kp),
        Family::G => ((k + qi(3) * kp) / &two, (k + kp) / &two),
        Family::D | Family::E => return None,
    })
}

pub fn det_closed_form(rs: &RootSystem, kappa: &Kappa) -> f64 {
    if let Some((x, y)) = xy(rs, kappa) {
        return -4.0 * (PI * to_f64(&x)).sin() * (PI * to_f64(&y)).sin();
    }
    let (h, ms) = rs.de_exponents().expect("D or E");
    let ck = (PI * to_f64(&kappa.k)).cos();
    let n1 = rs.rank() as i32 + 1;
    ms.iter().fold(2f64.powi(n1), |acc, &m| acc * (ck - (PI * m as f64 / h as f64).cos()))
}

/// `|det h(κ) − closed form|`.
pub fn det_compare(rs: &RootSystem, kappa: &Kappa) -> Result<f64> {
    let g = gram(rs, kappa)?;
    Ok((g.det() - det_closed_form(rs, kappa)).abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

pub fn eigenvalues(m: &CMat) -> Vec<f64> {
    let mut v: Vec<f64> = hermitian_part(m).symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

pub fn matrix_signature(m: &CMat) -> Signature {
    let ev = eigenvalues(m);
    let scale = ev.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let tol = ZERO_THRESHOLD * scale.max(f64::MIN_POSITIVE);
    Signature {
        pos: ev.iter().filter(|&&v| v > tol).count(),
        neg: ev.iter().filter(|&&v| v < -tol).count(),
        zero: ev.iter().filter(|&&v| v.abs() <= tol).count(),
    }
}

pub fn signature(g: &HermitianGram) -> Signature {
    matrix_signature(&g.entries)
}

/// `h* = det(h)·h⁻¹`.
pub fn dual_form(g: &HermitianGram) -> Result<CMat> {
    let det = g.det();
    let scale = g.norm().powi(g.dim() as i32);
    if det.abs() <= ZERO_THRESHOLD * scale.max(1.0) {
        return Err(Error::SingularForm { det: det.abs() });
    }
    let inv = g.entries.clone().try_inverse().ok_or(Error::SingularForm { det: det.abs() })?;
    Ok(inv.scale(det))
}

pub fn dual_form_signature(g: &HermitianGram) -> Result<Signature> {
    Ok(matrix_signature(&dual_form(g)?))
}

/// Membership in `K'_hyp`, decided exactly.
pub fn in_hyperbolic_region(rs: &RootSystem, kappa: &Kappa) -> bool {
    if !kappa.in_restricted_region(rs) {
        return false;
    }
    let open = |v: &Q, hi: &Q| v > &Q::zero() && v < hi;
    match xy(rs, kappa) {
        Some((x, y)) => open(&x, &Q::one()) && open(&y, &Q::one()),
        None => {
            let n = rs.rank() as i64;
            let hi = if rs.family() == Family::D { q(1, n - 2) } else { q(1, n - 3) };
            kappa.kp.is_zero() && open(&kappa.k, &hi)
        }
    }
}

fn random_rational<R: Rng>(rng: &mut R, lo: &Q, hi: &Q) -> Q {
    let den: i64 = rng.random_range(2..=97);
    let span = (hi - lo) * qi(den);
    let lo_num = (lo * qi(den)).floor().to_integer();
    let steps = span.ceil().to_integer();
    let steps: i64 = steps.try_into().unwrap_or(i64::MAX).max(1);
    let off: i64 = rng.random_range(0..=steps);
    Q::new(lo_num + off, den.into())
}

/// A random rational point of `K'` (with `k' = 0` for `D`/`E`).
pub fn random_restricted_kappa<R: Rng>(rs: &RootSystem, rng: &mut R) -> Kappa {
    sample_until(rs, rng, |kappa| kappa.in_restricted_region(rs))
}

/// A random rational point of `K'_hyp`.
pub fn random_hyperbolic_kappa<R: Rng>(rs: &RootSystem, rng: &mut R) -> Kappa {
    sample_until(rs, rng, |kappa| in_hyperbolic_region(rs, kappa))
}

fn sample_until<R: Rng>(rs: &RootSystem, rng: &mut R, accept: impl Fn(&Kappa) -> bool) -> Kappa {
    let (lo, hi) = (q(-1, 2), q(1, 2));
    loop {
        let k = random_rational(rng, &lo, &hi);
        let kp = if rs.family().uses_kprime() { random_rational(rng, &lo, &hi) } else { Q::zero() };
        let kappa = Kappa::new(k, kp);
        if accept(&kappa) {
            return kappa;
        }
    }
}

/// Rational points of `K'` on the parabolic boundary: `x ∈ {0, 1}` with `0 < y < 1`
/// (types `ABCFG`), or `k = 0` and the right end of the `D`/`E` interval when it lies in `K'`.
pub fn parabolic_samples(rs: &RootSystem, count: usize) -> Vec<Kappa> {
    let n = rs.rank() as i64;
    let end = match rs.family() {
        Family::D => Some(q(1, n - 2)),
        Family::E => Some(q(1, n - 3)),
        _ => None,
    };
    if let Some(end) = end {
        let ends = [Kappa::zero(), Kappa::new(end, Q::zero())];
        return ends.into_iter().filter(|kappa| kappa.in_restricted_region(rs)).take(count).collect();
    }
    let mut out = Vec::new();
    for den in 2..60i64 {
        for num in -den / 2..=den / 2 {
            let k = q(num, den);
            for target in [Q::zero(), Q::one()] {
                // x is affine in k' with nonzero slope for every ABCFG type
                let x0 = xy(rs, &Kappa::new(k.clone(), Q::zero())).unwrap().0;
                let x1 = xy(rs, &Kappa::new(k.clone(), Q::one())).unwrap().0;
                let kp = (&target - &x0) / (x1 - &x0);
                let kappa = Kappa::new(k.clone(), kp);
                let (_, y) = xy(rs, &kappa).unwrap();
                if kappa.in_restricted_region(rs) && y > Q::zero() && y < Q::one() && !out.contains(&kappa) {
                    out.push(kappa);
                    if out.len() == count {
                        return out;
                    }
                }
            }
        }
    }
    out
}
