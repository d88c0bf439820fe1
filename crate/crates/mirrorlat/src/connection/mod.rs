//! Multiplicity data, Dunkl-type endomorphisms and flatness checks for the connection
//! `∇̃^κ` on `H° × ℂ^×`.

mod flatness;
pub mod lauricella;
mod numeric;

pub use flatness::{
    flatness_conditions_check, flatness_conditions_check_with, ConditionReport, ConditionResult, FlatnessChecker,
};
pub use numeric::{
    a_is_root_square_sum, curvature_check, dilatation_check, random_regular_point, wronskian_check, Christoffel,
    CurvatureOptions, CurvatureReport, DilatationReport, Point, WronskianReport, REGULARITY_MARGIN,
};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, Mat, Ring};
use crate::poly::ScalarPoly;
use crate::rational::{fmt_q, q, qi, Q};
use crate::rootsystem::{Family, Orbit, Root, RootSystem};

/// Multiplicity parameter `(k, k')`. For `A_n` the second entry is the parameter of `b^κ`;
/// for `D`/`E` it must vanish.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Kappa<T = Q> {
    pub k: T,
    pub kp: T,
}

impl<T: Clone> Kappa<T> {
    /// `k_α`: the first-orbit weight is `k`, the second-orbit weight `k'`.
    pub fn root_weight(&self, family: Family, root: &Root) -> T {
        if family.has_two_orbits() && root.orbit == Orbit::Second {
            self.kp.clone()
        } else {
            self.k.clone()
        }
    }

    pub fn orbit_weight(&self, family: Family, orbit: Orbit) -> T {
        if family.has_two_orbits() && orbit == Orbit::Second {
            self.kp.clone()
        } else {
            self.k.clone()
        }
    }
}

impl Kappa<Q> {
    pub fn new(k: Q, kp: Q) -> Self {
        Self { k, kp }
    }

    pub fn zero() -> Self {
        Self::new(Q::zero(), Q::zero())
    }

    pub fn symbolic() -> Kappa<ScalarPoly> {
        Kappa { k: ScalarPoly::k(), kp: ScalarPoly::kp() }
    }

    pub fn lift<T: From<Q>>(&self) -> Kappa<T> {
        Kappa { k: self.k.clone().into(), kp: self.kp.clone().into() }
    }

    /// Rejects a nonzero `k'` for the simply-laced families without a `b`-term.
    pub fn validate(&self, family: Family) -> Result<()> {
        if !family.uses_kprime() && !self.kp.is_zero() {
            return Err(Error::InvalidArgument(format!("k' must be 0 for type {family}, got {}", fmt_q(&self.kp))));
        }
        Ok(())
    }

    /// Membership in the restricted region `K'`.
    pub fn in_restricted_region(&self, rs: &RootSystem) -> bool {
        self.restricted_violation(rs).is_none()
    }

    pub fn check_restricted(&self, rs: &RootSystem) -> Result<()> {
        match self.restricted_violation(rs) {
            None => Ok(()),
            Some(detail) => Err(Error::SpecializationDomain { k: fmt_q(&self.k), kp: fmt_q(&self.kp), detail }),
        }
    }

    fn restricted_violation(&self, rs: &RootSystem) -> Option<String> {
        let half = q(1, 2);
        let inside = |x: &Q| x > &-half.clone() && x < &half;
        if !inside(&self.k) {
            return Some(format!("k = {} not in (-1/2, 1/2)", fmt_q(&self.k)));
        }
        if (rs.family() == Family::A || rs.family().has_two_orbits()) && !inside(&self.kp) {
            return Some(format!("k' = {} not in (-1/2, 1/2)", fmt_q(&self.kp)));
        }
        if rs.family() == Family::A {
            return None;
        }
        let m = rs.affine_coxeter_matrix();
        let orbits = rs.affine_orbits();
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if m[i][j] >= 4 && m[i][j].is_multiple_of(2) {
                    let d = self.orbit_weight(rs.family(), orbits[i]) - self.orbit_weight(rs.family(), orbits[j]);
                    let bound = Q::one() - q(2, m[i][j] as i64);
                    if d.abs() >= bound {
                        return Some(format!("|k_{i} - k_{j}| = {} not below {}", fmt_q(&d.abs()), fmt_q(&bound)));
                    }
                }
            }
        }
        None
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (crate::rational::to_f64(&self.k), crate::rational::to_f64(&self.kp))
    }
}

/// Scalar `c` with `a^κ(u,v) = c·(u,v)`, as a polynomial in `(k, k')`.
pub fn a_form_poly(family: Family, rank: usize) -> ScalarPoly {
    let k = ScalarPoly::k;
    let kp = ScalarPoly::kp;
    let c = |x: i64| ScalarPoly::constant(qi(x));
    let n = rank as i64;
    match family {
        Family::A => (k() * k() - kp() * kp()).scale(&q(n + 1, 4)),
        Family::B => c(n - 2) * k() * k() + k() * kp(),
        Family::C => c(n - 2) * k() * k() + c(2) * k() * kp(),
        Family::D => c(n - 2) * k() * k(),
        Family::E => c([6, 12, 30][rank - 6]) * k() * k(),
        Family::F => (k() + kp()) * (c(2) * k() + kp()),
        Family::G => ((k() + c(3) * kp()) * (k() + kp())).scale(&q(3, 4)),
    }
}

pub fn a_form(rs: &RootSystem, kappa: &Kappa) -> Q {
    a_form_poly(rs.family(), rs.rank()).eval(&kappa.k, &kappa.kp)
}

/// `γ_R` with `Σ_{α>0} α(u)α(v) = γ_R·(u,v)`, found by summing over the positive roots.
pub fn gamma_r(rs: &RootSystem) -> Q {
    let n = rs.rank();
    let s = Mat::from_fn(n, n, |i, j| {
        rs.positive_roots().iter().fold(Q::zero(), |acc, r| acc + qi(r.pairing[i] * r.pairing[j]))
    });
    let g = rs.coroot_gram();
    let gamma = &s[(0, 0)] / &g[(0, 0)];
    assert!(s == g.scale(&gamma), "Σ α⊗α is not proportional to the inner product");
    gamma
}

/// Per-type scalar data of the connection.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectionData {
    pub family: Family,
    pub rank: usize,
    #[serde(serialize_with = "ser_display")]
    pub a_coeff: ScalarPoly,
    #[serde(serialize_with = "ser_display")]
    pub c_kappa: ScalarPoly,
    #[serde(serialize_with = "ser_q")]
    pub gamma_r: Q,
    pub has_b: bool,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_q<S: serde::Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(v))
}

impl ConnectionData {
    pub fn new(rs: &RootSystem) -> Self {
        let a_coeff = a_form_poly(rs.family(), rs.rank());
        let gamma = gamma_r(rs);
        let c_kappa = a_coeff.scale(&gamma.recip());
        Self {
            family: rs.family(),
            rank: rs.rank(),
            a_coeff,
            c_kappa,
            gamma_r: gamma,
            has_b: rs.family() == Family::A,
        }
    }
}

/// `α' = ε_i + ε_j − (2/(n+1)) Σ ε_l` for `α = ε_i − ε_j`, in the coroot basis.
fn alpha_prime(rs: &RootSystem, root: &Root) -> Vec<Q> {
    let dim = rs.ambient_dim();
    let lead = root.ambient.iter().position(|x| !x.is_zero()).unwrap();
    let tail = root.ambient.iter().rposition(|x| !x.is_zero()).unwrap();
    let shift = q(2, dim as i64);
    let v: Vec<Q> = (0..dim)
        .map(|l| if l == lead || l == tail { Q::one() - &shift } else { -shift.clone() })
        .collect();
    rs.from_ambient(&v)
}

/// `b^κ(u, v) = ½ k' Σ_{α>0} α(u)α(v) α'`; zero outside type `A`.
pub fn b_map(rs: &RootSystem, u: &[Q], v: &[Q], kappa: &Kappa) -> Vec<Q> {
    Dunkl::new(rs, kappa, Q::zero()).b(u, v)
}

/// The endomorphisms `u_α`, `U_p`, `b_p` and the form `a` over a coefficient ring `T`
/// (exact rationals, or `ScalarPoly` for symbolic `(k, k')`).
///
/// Matrices act on `𝔥` in the simple-coroot basis.
#[derive(Clone, Debug)]
pub struct Dunkl<'a, T> {
    rs: &'a RootSystem,
    weights: Vec<T>,
    half_kp: T,
    /// `Σ_{α>0} α(α_i∨)α(α_j∨) α'` at index `i·n + j`; empty outside type `A`.
    b_basis: Arc<Vec<Vec<Q>>>,
    a_matrix: Mat<T>,
}

/// `Σ_{α>0} α(α_i∨)α(α_j∨) α'` for type `A_n`, computed once per rank.
fn b_basis(rs: &RootSystem) -> Arc<Vec<Vec<Q>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Vec<Q>>>>>> = OnceLock::new();
    let n = rs.rank();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("cache lock").get(&n) {
        return b.clone();
    }
    let mut acc = vec![vec![Q::zero(); n]; n * n];
    for r in rs.positive_roots() {
        let prime = alpha_prime(rs, r);
        for i in 0..n {
            for j in 0..n {
                let c = r.pairing[i] * r.pairing[j];
                if c != 0 {
                    for (a, p) in acc[i * n + j].iter_mut().zip(&prime) {
                        *a += qi(c) * p;
                    }
                }
            }
        }
    }
    let b = Arc::new(acc);
    cache.lock().expect("cache lock").insert(n, b.clone());
    b
}

impl<'a, T: Ring + From<Q>> Dunkl<'a, T> {
    pub fn new(rs: &'a RootSystem, kappa: &Kappa<T>, a_coeff: T) -> Self {
        let weights = rs.positive_roots().iter().map(|r| kappa.root_weight(rs.family(), r)).collect();
        let b_basis = if rs.family() == Family::A { b_basis(rs) } else { Arc::new(Vec::new()) };
        let half_kp = if rs.family() == Family::A { kappa.kp.clone() * T::from(q(1, 2)) } else { T::zero() };
        let a_matrix = rs.coroot_gram().map(|g| a_coeff.clone() * T::from(g.clone()));
        Self { rs, weights, half_kp, b_basis, a_matrix }
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    pub fn weight(&self, i: usize) -> &T {
        &self.weights[i]
    }

    /// `u_α = k_α α∨ ⊗ α` for the `i`-th positive root.
    pub fn u_alpha(&self, i: usize) -> Mat<T> {
        let r = &self.rs.positive_roots()[i];
        let x: Vec<T> = r.coroot.iter().map(|c| self.weights[i].clone() * T::from(c.clone())).collect();
        let y: Vec<T> = r.pairing.iter().map(|&p| T::from(qi(p))).collect();
        Mat::outer(&x, &y)
    }

    /// `U_x = −½ Σ_{α>0} |α(x)| u_α`.
    pub fn big_u(&self, x: &[Q]) -> Mat<T> {
        let n = self.rs.rank();
        let mut out = Mat::zeros(n, n);
        for (i, r) in self.rs.positive_roots().iter().enumerate() {
            let v = r.eval(x).abs();
            if v.is_zero() || self.weights[i].is_zero() {
                continue;
            }
            out = out + self.u_alpha(i).scale(&T::from(-v / qi(2)));
        }
        out
    }

    /// `b(u, v)` in the coroot basis.
    pub fn b(&self, u: &[Q], v: &[Q]) -> Vec<T> {
        let n = self.rs.rank();
        if self.b_basis.is_empty() || self.half_kp.is_zero() {
            return vec![T::zero(); n];
        }
        let mut acc = vec![Q::zero(); n];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let c = ui * vj;
                for (a, p) in acc.iter_mut().zip(&self.b_basis[i * n + j]) {
                    *a += &c * p;
                }
            }
        }
        acc.into_iter().map(|x| self.half_kp.clone() * T::from(x)).collect()
    }

    /// `b_p = b(p, ·)` as a matrix.
    pub fn b_matrix(&self, p: &[Q]) -> Mat<T> {
        let n = self.rs.rank();
        let cols: Vec<Vec<T>> = (0..n).map(|c| self.b(p, &unit(n, c))).collect();
        Mat::from_fn(n, n, |r, c| cols[c][r].clone())
    }

    /// Gram matrix of `a^κ` in the coroot basis.
    pub fn a_matrix(&self) -> &Mat<T> {
        &self.a_matrix
    }

    pub fn a(&self, u: &[T], v: &[T]) -> T {
        dot(u, &self.a_matrix.apply(v))
    }

    /// The covector `a(p, ·)`.
    pub fn a_covector(&self, p: &[T]) -> Vec<T> {
        self.a_matrix.apply_left(p)
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

pub(crate) fn lift<T: From<Q>>(v: &[Q]) -> Vec<T> {
    v.iter().map(|x| T::from(x.clone())).collect()
}
