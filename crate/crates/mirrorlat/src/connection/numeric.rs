use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use super::{a_form, Dunkl, Kappa};
use crate::error::{Error, Result};
use crate::rational::{to_f64, Q};
use crate::rootsystem::{Root, RootSystem};

type C = Complex64;

/// Minimum allowed `|e^α(h) − 1|`.
pub const REGULARITY_MARGIN: f64 = 1e-8;

/// A point of `H°` given by the torus coordinates `z_i = e^{α_i}(h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    z: Vec<C>,
}

impl Point {
    pub fn new(rs: &RootSystem, z: Vec<C>) -> Result<Self> {
        if z.len() != rs.rank() {
            return Err(Error::InvalidArgument(format!("expected {} coordinates, got {}", rs.rank(), z.len())));
        }
        if let Some(i) = z.iter().position(|w| w.norm() == 0.0 || !w.is_finite()) {
            return Err(Error::InvalidArgument(format!("coordinate z{} = {} is not in C^x", i + 1, z[i])));
        }
        let p = Self { z };
        for r in rs.positive_roots() {
            let distance = (p.exp_root(r) - 1.0).norm();
            if distance < REGULARITY_MARGIN {
                return Err(Error::SingularPoint { root: r.coeffs.clone(), distance });
            }
        }
        Ok(p)
    }

    pub fn coords(&self) -> &[C] {
        &self.z
    }

    /// `e^α(h)` as a monomial in the simple coordinates.
    pub fn exp_root(&self, r: &Root) -> C {
        r.coeffs.iter().zip(&self.z).fold(C::new(1.0, 0.0), |acc, (&c, z)| acc * z.powi(c as i32))
    }
}

/// Random point with `|e^α − 1| ≥ 10⁻³` for all roots.
pub fn random_regular_point<R: Rng>(rs: &RootSystem, rng: &mut R) -> Point {
    loop {
        let z: Vec<C> = (0..rs.rank())
            .map(|_| C::from_polar(rng.random_range(-0.8f64..0.8).exp(), rng.random_range(-3.1f64..3.1)))
            .collect();
        let p = Point { z };
        if rs.positive_roots().iter().all(|r| (p.exp_root(r) - 1.0).norm() > 1e-3) {
            return p;
        }
    }
}

/// Christoffel symbols `Γ^k_ij` of `Ω̃^κ` at a point, in the coordinates `(α₁, …, α_n, log t)`,
/// together with the closed-form derivatives of the `𝔥` block.
#[derive(Clone, Debug)]
pub struct Christoffel {
    n: usize,
    g: Vec<C>,
    dg: Vec<C>,
    /// `a^κ(ϖ_i∨, ϖ_j∨)`.
    a: Vec<f64>,
}

impl Christoffel {
    /// `dt_sign = −1` flips the sign of the `−ζ ⊗ dt/t` coupling (a negative control).
    pub fn new(rs: &RootSystem, kappa: &Kappa, a_coeff: &Q, point: &Point, dt_sign: f64) -> Self {
        let n = rs.rank();
        let big = n + 1;
        let mut g = vec![C::zero(); big * big * big];
        let mut dg = vec![C::zero(); n * n * n * n];
        let idx = |k: usize, i: usize, j: usize| (k * big + i) * big + j;
        let didx = |a: usize, k: usize, i: usize, j: usize| ((a * n + k) * n + i) * n + j;
        let cartan = rs.cartan();
        for r in rs.positive_roots() {
            let w = to_f64(&kappa.root_weight(rs.family(), r));
            if w == 0.0 {
                continue;
            }
            let ea = point.exp_root(r);
            let f = (ea + 1.0) / (ea - 1.0);
            let df = -2.0 * ea / ((ea - 1.0) * (ea - 1.0));
            // α_k(α∨)
            let ak: Vec<f64> = (0..n)
                .map(|k| r.coroot.iter().enumerate().map(|(l, c)| to_f64(c) * cartan[k][l] as f64).sum())
                .collect();
            let c: Vec<f64> = r.coeffs.iter().map(|&x| x as f64).collect();
            for k in 0..n {
                if ak[k] == 0.0 {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        let base = 0.5 * w * ak[k] * c[i] * c[j];
                        if base == 0.0 {
                            continue;
                        }
                        g[idx(k, i, j)] += f * base;
                        for a in 0..n {
                            dg[didx(a, k, i, j)] += df * base * c[a];
                        }
                    }
                }
            }
        }
        let dunkl = Dunkl::new(rs, kappa, a_coeff.clone());
        let cw = rs.fundamental_coweights();
        for i in 0..n {
            for j in 0..n {
                let b = dunkl.b(&cw[i], &cw[j]);
                for k in 0..n {
                    let v: Q = (0..n).fold(Q::zero(), |acc, l| acc + &b[l] * Q::from_integer(cartan[k][l].into()));
                    g[idx(k, i, j)] += to_f64(&v);
                }
            }
        }
        let a: Vec<f64> = (0..n * n).map(|x| to_f64(&dunkl.a(&cw[x / n], &cw[x % n]))).collect();
        let t = n;
        for i in 0..n {
            g[idx(i, i, t)] = C::new(-dt_sign, 0.0);
            g[idx(i, t, i)] = C::new(-dt_sign, 0.0);
            for j in 0..n {
                g[idx(t, i, j)] = C::new(a[i * n + j], 0.0);
            }
        }
        g[idx(t, t, t)] = C::new(-1.0, 0.0);
        Self { n, g, dg, a }
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// `Γ^k_ij`; index `n` is the `log t` direction.
    pub fn get(&self, k: usize, i: usize, j: usize) -> C {
        let big = self.n + 1;
        self.g[(k * big + i) * big + j]
    }

    /// `∂_a Γ^k_ij`, which vanishes whenever an index is `n`.
    pub fn derivative(&self, a: usize, k: usize, i: usize, j: usize) -> C {
        let n = self.n;
        if a >= n || k >= n || i >= n || j >= n {
            return C::zero();
        }
        self.dg[((a * n + k) * n + i) * n + j]
    }

    /// `max |Γ^k_ij − Γ^k_ji|`.
    pub fn symmetry_defect(&self) -> f64 {
        let big = self.dim();
        let mut m = 0.0f64;
        for k in 0..big {
            for i in 0..big {
                for j in 0..big {
                    m = m.max((self.get(k, i, j) - self.get(k, j, i)).norm());
                }
            }
        }
        m
    }

    /// `R^k_{l,ab} = ∂_aΓ^k_{bl} − ∂_bΓ^k_{al} + Σ_m (Γ^k_{bm}Γ^m_{al} − Γ^k_{am}Γ^m_{bl})`
    /// over indices `< dim`.
    fn curvature_entry(&self, dim: usize, k: usize, l: usize, a: usize, b: usize) -> C {
        let mut v = self.derivative(a, k, b, l) - self.derivative(b, k, a, l);
        for m in 0..dim {
            v += self.get(k, b, m) * self.get(m, a, l) - self.get(k, a, m) * self.get(m, b, l);
        }
        v
    }
}

#[derive(Clone, Debug, Default)]
pub struct CurvatureOptions {
    /// Replaces the closed-form `a^κ` scalar.
    pub a_coeff: Option<Q>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport {
    /// `max |R̃|` over all entries of the curvature of `∇̃^κ`.
    pub residual: f64,
    /// `max |∇∇(ζ) + ζ ∧ A^κ|` for the projective connection on `H°`.
    pub projective_residual: f64,
    pub symmetry_defect: f64,
}

/// Evaluates the curvature of `∇̃^κ` at a point; `t` only enters through `t ∂/∂t`, on which the
/// coefficients do not depend.
pub fn curvature_check(rs: &RootSystem, kappa: &Kappa, point: &Point, opts: &CurvatureOptions) -> CurvatureReport {
    let a_coeff = opts.a_coeff.clone().unwrap_or_else(|| a_form(rs, kappa));
    let g = Christoffel::new(rs, kappa, &a_coeff, point, 1.0);
    let n = rs.rank();
    let big = n + 1;
    let mut residual = 0.0f64;
    let mut projective = 0.0f64;
    for k in 0..big {
        for l in 0..big {
            for a in 0..big {
                for b in 0..big {
                    residual = residual.max(g.curvature_entry(big, k, l, a, b).norm());
                    if k < n && l < n && a < n && b < n {
                        let mut v = g.curvature_entry(n, k, l, a, b);
                        if k == a {
                            v += g.a[b * n + l];
                        }
                        if k == b {
                            v -= g.a[a * n + l];
                        }
                        projective = projective.max(v.norm());
                    }
                }
            }
        }
    }
    CurvatureReport { residual, projective_residual: projective, symmetry_defect: g.symmetry_defect() }
}

#[derive(Clone, Debug, Serialize)]
pub struct WronskianReport {
    pub finite_difference: [f64; 2],
    pub closed_form: [f64; 2],
    pub relative_error: f64,
}

/// Compares the central-difference logarithmic derivative of
/// `J = Π_{α>0} (e^{α/2} − e^{−α/2})^{−2k_α}` along `ξ` with `−Σ k_α f_α α(ξ)`.
/// `direction` holds the values `α_i(ξ)`.
pub fn wronskian_check(
    rs: &RootSystem,
    kappa: &Kappa,
    point: &Point,
    direction: &[f64],
    step: f64,
) -> Result<WronskianReport> {
    if direction.len() != rs.rank() {
        return Err(Error::InvalidArgument(format!("direction needs {} entries", rs.rank())));
    }
    let mut closed = C::zero();
    let mut diff = C::zero();
    for r in rs.positive_roots() {
        let w = to_f64(&kappa.root_weight(rs.family(), r));
        let ea = point.exp_root(r);
        let a: f64 = r.coeffs.iter().zip(direction).map(|(&c, d)| c as f64 * d).sum();
        closed -= w * (ea + 1.0) / (ea - 1.0) * a;
        // sinh-type factor at ±step along the principal branch of e^{α/2} at the base point
        let half = ea.sqrt();
        let e = C::new(0.5 * step * a, 0.0).exp();
        let plus = half * e - 1.0 / (half * e);
        let minus = half / e - e / half;
        diff -= 2.0 * w * (plus / minus).ln();
    }
    let fd = diff / (2.0 * step);
    let relative_error = (fd - closed).norm() / closed.norm().max(1.0);
    Ok(WronskianReport { finite_difference: [fd.re, fd.im], closed_form: [closed.re, closed.im], relative_error })
}

#[derive(Clone, Debug, Serialize)]
pub struct DilatationReport {
    pub passes: bool,
    pub residual: f64,
}

/// Checks `∇̃_ṽ (t∂/∂t) = ṽ` on the coordinate basis, with connection matrix `−(Ω̃^κ)*`.
pub fn dilatation_check(rs: &RootSystem, kappa: &Kappa, point: &Point, dt_sign: f64) -> DilatationReport {
    let g = Christoffel::new(rs, kappa, &a_form(rs, kappa), point, dt_sign);
    let big = g.dim();
    let t = big - 1;
    let mut residual = 0.0f64;
    for i in 0..big {
        for k in 0..big {
            let got = -g.get(k, i, t);
            let want = if i == k { 1.0 } else { 0.0 };
            residual = residual.max((got - want).norm());
        }
    }
    DilatationReport { passes: residual < 1e-12, residual }
}

/// Exact check that `A^κ` equals `Σ_{α>0} dα ⊗ dα` at `κ`.
pub fn a_is_root_square_sum(rs: &RootSystem, kappa: &Kappa) -> bool {
    let d = Dunkl::new(rs, kappa, a_form(rs, kappa));
    let cw = rs.fundamental_coweights();
    let n = rs.rank();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let s: i64 = rs.positive_roots().iter().map(|r| r.coeffs[i] * r.coeffs[j]).sum();
            d.a(&cw[i], &cw[j]).to_i64() == Some(s) && d.a(&cw[i], &cw[j]).is_integer()
        })
    })
}
