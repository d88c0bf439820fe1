//! Residues of the dual connection along mirrors, toric boundary divisors and `t ∈ {0, ∞}`,
//! with exact eigenvalue spectra as affine forms in `(k, k')`.

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::connection::{a_form_poly, lift, Dunkl, Kappa};
use crate::error::{Error, Result};
use crate::linalg::{charpoly, solve, Mat, Ring};
use crate::poly::{LinForm, ScalarPoly};
use crate::rational::{q, Q};
use crate::rootsystem::{Family, RootSystem};

/// Interpolation nodes for `(k, k')`; the last one is held out for verification.
pub const SAMPLES: [(i64, i64, i64, i64); 4] = [(1, 5, 1, 7), (1, 3, 1, 11), (2, 7, 1, 13), (3, 11, 2, 15)];

/// Replacements for nodes where two eigenvalues collide (e.g. `A₆`, `ϖ₁∨` at `k/k' = 7/5`).
pub const FALLBACK_SAMPLES: [(i64, i64, i64, i64); 3] = [(5, 17, 1, 19), (3, 23, 4, 29), (7, 31, 2, 37)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Divisor {
    /// Mirror of the root with the given simple-root coefficients.
    Mirror { root: Vec<i64> },
    /// Toric divisor of the fundamental coweight `ϖ_node∨`.
    Boundary { node: usize },
    TZero,
    TInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eigenvalue {
    pub value: LinForm,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueSpectrum {
    pub divisor: Divisor,
    /// Sorted by value.
    pub eigenvalues: Vec<Eigenvalue>,
    /// Eigenvalue of `U_p + b_p` on `ℂp` (boundary divisors only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<LinForm>,
    /// `a(p, p)` (boundary divisors only).
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_poly")]
    pub app: Option<ScalarPoly>,
}

fn ser_opt_poly<S: Serializer>(v: &Option<ScalarPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(p) => s.collect_str(p),
        None => s.serialize_none(),
    }
}

impl ResidueSpectrum {
    pub fn dimension(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    pub fn multiplicity_of(&self, value: &LinForm) -> usize {
        self.eigenvalues.iter().find(|e| &e.value == value).map_or(0, |e| e.multiplicity)
    }

    /// `|λ₁ − λ₂|` at generic positive `κ`, normalized so the `k` coefficient (or else `k'`) is positive.
    pub fn gap(&self) -> Option<LinForm> {
        match self.eigenvalues.as_slice() {
            [a, b] => {
                let d = a.value.clone() - b.value.clone();
                let lead = if d.k.is_zero() { &d.kp } else { &d.k };
                Some(if lead < &Q::zero() { -d } else { d })
            }
            _ => None,
        }
    }
}

/// Evaluates a polynomial in `(k, k')` over another coefficient ring.
pub fn eval_poly<T: Ring + From<Q>>(p: &ScalarPoly, k: &T, kp: &T) -> T {
    let pow = |x: &T, e: u32| (0..e).fold(T::one(), |acc, _| acc * x.clone());
    p.terms().fold(T::zero(), |acc, (&(i, j), c)| acc + T::from(c.clone()) * pow(k, i) * pow(kp, j))
}

fn dunkl<'a, T: Ring + From<Q>>(rs: &'a RootSystem, kappa: &Kappa<T>) -> Dunkl<'a, T> {
    let a = eval_poly(&a_form_poly(rs.family(), rs.rank()), &kappa.k, &kappa.kp);
    Dunkl::new(rs, kappa, a)
}

/// `u_α` extended by zero to `𝔥 ⊕ ℂ`.
pub fn mirror_residue_matrix<T: Ring + From<Q>>(rs: &RootSystem, root: &[i64], kappa: &Kappa<T>) -> Result<Mat<T>> {
    let (idx, _) = rs.find_root(root).ok_or_else(|| Error::InvalidRoot(root.to_vec()))?;
    let n = rs.rank();
    let u = dunkl(rs, kappa).u_alpha(idx);
    Ok(Mat::from_fn(n + 1, n + 1, |r, c| if r < n && c < n { u[(r, c)].clone() } else { T::zero() }))
}

/// `σ = U_p + b_p + t∂/∂t ⊗ a(p, ·) − p ⊗ dt/t` at `p = ϖ_m∨`, in the basis
/// `(α₁∨, …, α_n∨, t∂/∂t)`.
pub fn boundary_residue_matrix<T: Ring + From<Q>>(rs: &RootSystem, m: usize, kappa: &Kappa<T>) -> Result<Mat<T>> {
    let p = rs.coweight(m)?.to_vec();
    let n = rs.rank();
    let d = dunkl(rs, kappa);
    let block = d.big_u(&p) + d.b_matrix(&p);
    let ap = d.a_covector(&lift(&p));
    Ok(Mat::from_fn(n + 1, n + 1, |r, c| match (r < n, c < n) {
        (true, true) => block[(r, c)].clone(),
        (true, false) => -T::from(p[r].clone()),
        (false, true) => ap[c].clone(),
        (false, false) => T::zero(),
    }))
}

/// Residue at `t = 0`.
pub fn t_zero_residue(rs: &RootSystem) -> Mat<Q> {
    -Mat::identity(rs.rank() + 1)
}

/// Residue at `t = ∞`.
pub fn t_infinity_residue(rs: &RootSystem) -> Mat<Q> {
    Mat::identity(rs.rank() + 1)
}

pub fn mirror_spectrum(rs: &RootSystem, root: &[i64]) -> Result<ResidueSpectrum> {
    rs.find_root(root).ok_or_else(|| Error::InvalidRoot(root.to_vec()))?;
    let eigenvalues = interpolate(0, |kappa| mirror_residue_matrix(rs, root, kappa))?;
    Ok(ResidueSpectrum { divisor: Divisor::Mirror { root: root.to_vec() }, eigenvalues, phi: None, app: None })
}

pub fn t_zero_spectrum(rs: &RootSystem) -> ResidueSpectrum {
    constant_spectrum(Divisor::TZero, &t_zero_residue(rs))
}

pub fn t_infinity_spectrum(rs: &RootSystem) -> ResidueSpectrum {
    constant_spectrum(Divisor::TInfinity, &t_infinity_residue(rs))
}

fn constant_spectrum(divisor: Divisor, m: &Mat<Q>) -> ResidueSpectrum {
    let eigenvalues = charpoly(m)
        .rational_roots()
        .expect("scalar matrix")
        .into_iter()
        .map(|(v, multiplicity)| Eigenvalue { value: LinForm::constant(v), multiplicity })
        .collect();
    ResidueSpectrum { divisor, eigenvalues, phi: None, app: None }
}

/// Symbolic spectrum of the boundary residue at `ϖ_m∨`.
///
/// Eigenvalues are computed exactly at three rational samples, interpolated as affine forms,
/// and confirmed at a fourth sample and against `λ² − φλ + a(p,p) = 0`.
pub fn boundary_spectrum(rs: &RootSystem, m: usize) -> Result<ResidueSpectrum> {
    let p = rs.coweight(m)?.to_vec();
    let eigenvalues = interpolate(m, |kappa| boundary_residue_matrix(rs, m, kappa))?;

    let sym = Kappa::symbolic();
    let d = dunkl(rs, &sym);
    let image = (d.big_u(&p) + d.b_matrix(&p)).apply(&lift(&p));
    let lead = p.iter().position(|x| !x.is_zero()).expect("nonzero coweight");
    let phi_poly = image[lead].scale(&p[lead].recip());
    let inconsistent = |detail: String| Error::SpectralInconsistency { node: m, detail };
    if image.iter().zip(&p).any(|(v, x)| *v != phi_poly.scale(x)) {
        return Err(inconsistent("p is not an eigenvector of U_p + b_p".into()));
    }
    let phi = phi_poly.to_linform().ok_or_else(|| inconsistent(format!("phi = {phi_poly} is not affine")))?;
    let app = d.a(&lift(&p), &lift(&p));

    for e in &eigenvalues {
        let l = e.value.to_poly();
        let r = l.clone() * l.clone() - phi_poly.clone() * l + app.clone();
        if !r.is_zero() {
            return Err(inconsistent(format!("{} does not solve x^2 - ({phi})x + {app}", e.value)));
        }
    }
    if let [a, b] = eigenvalues.as_slice() {
        if a.value.clone() + b.value.clone() != phi {
            return Err(inconsistent(format!("eigenvalue sum differs from phi = {phi}")));
        }
    }
    Ok(ResidueSpectrum { divisor: Divisor::Boundary { node: m }, eigenvalues, phi: Some(phi), app: Some(app) })
}

/// `σ² − φσ + a(p,p)·Id` as a symbolic matrix; zero when the quadratic relation holds.
pub fn quadratic_defect(rs: &RootSystem, m: usize, phi: &LinForm, app: &ScalarPoly) -> Result<Mat<ScalarPoly>> {
    let s = boundary_residue_matrix(rs, m, &Kappa::symbolic())?;
    let n1 = s.rows;
    let phi = phi.to_poly();
    Ok(s.matmul(&s) - s.scale(&phi) + Mat::identity(n1).scale(app))
}

/// Boundary spectra at every fundamental coweight of an `E`-type system.
pub fn e_table(rs: &RootSystem) -> Result<Vec<ResidueSpectrum>> {
    if rs.family() != Family::E {
        return Err(Error::InvalidFamily { expected: 'E', got: rs.family() });
    }
    (1..=rs.rank()).map(|m| boundary_spectrum(rs, m)).collect()
}

fn to_kappa((a, b, c, d): (i64, i64, i64, i64)) -> Kappa {
    Kappa::new(q(a, b), q(c, d))
}

/// Exact spectrum at a rational `κ`, sorted by eigenvalue.
pub fn spectrum_at(m: &Mat<Q>) -> std::result::Result<Vec<(Q, usize)>, String> {
    let mut roots = charpoly(m).rational_roots()?;
    roots.sort();
    Ok(roots)
}

fn interpolate(node: usize, build: impl Fn(&Kappa) -> Result<Mat<Q>>) -> Result<Vec<Eigenvalue>> {
    let inconsistent = |detail: String| Error::SpectralInconsistency { node, detail };
    let at = |kappa: Kappa| -> Result<(Kappa, Vec<(Q, usize)>)> {
        let s = spectrum_at(&build(&kappa)?).map_err(inconsistent)?;
        Ok((kappa, s))
    };
    let mut points = SAMPLES.into_iter().map(|s| at(to_kappa(s))).collect::<Result<Vec<_>>>()?;
    let count = |pts: &[(Kappa, Vec<(Q, usize)>)]| pts.iter().map(|p| p.1.len()).max().unwrap_or(0);
    let mut fallback = FALLBACK_SAMPLES.into_iter();
    loop {
        let target = count(&points);
        points.retain(|p| p.1.len() == target);
        if points.len() >= 4 {
            break;
        }
        match fallback.next() {
            Some(s) => points.push(at(to_kappa(s))?),
            None => return Err(inconsistent("too many degenerate samples".into())),
        }
        if count(&points) != target {
            points = SAMPLES.into_iter().chain(FALLBACK_SAMPLES).map(|s| at(to_kappa(s))).collect::<Result<_>>()?;
        }
    }
    let (kappas, spectra): (Vec<Kappa>, Vec<Vec<(Q, usize)>>) = points.into_iter().take(4).unzip();
    let count = spectra[0].len();
    let mults = |s: &[(Q, usize)]| {
        let mut v: Vec<usize> = s.iter().map(|e| e.1).collect();
        v.sort();
        v
    };
    if spectra.iter().any(|s| mults(s) != mults(&spectra[0])) {
        return Err(inconsistent("multiplicities vary between samples".into()));
    }

    // Match eigenvalues of samples 1 and 2 to those of sample 0 by any multiplicity-preserving
    // permutation whose interpolant reproduces sample 3.
    let perms = permutations(count);
    for p1 in &perms {
        for p2 in &perms {
            let ok = |p: &Vec<usize>, s: &[(Q, usize)]| (0..count).all(|i| s[p[i]].1 == spectra[0][i].1);
            if !ok(p1, &spectra[1]) || !ok(p2, &spectra[2]) {
                continue;
            }
            let forms: Option<Vec<LinForm>> = (0..count)
                .map(|i| fit(&kappas[..3], [&spectra[0][i].0, &spectra[1][p1[i]].0, &spectra[2][p2[i]].0]))
                .collect();
            let Some(forms) = forms else { continue };
            let held = &kappas[3];
            let mut predicted: Vec<(Q, usize)> =
                forms.iter().zip(&spectra[0]).map(|(f, e)| (f.eval(&held.k, &held.kp), e.1)).collect();
            predicted.sort();
            if predicted == spectra[3] {
                let mut out: Vec<Eigenvalue> = forms
                    .into_iter()
                    .zip(&spectra[0])
                    .map(|(value, e)| Eigenvalue { value, multiplicity: e.1 })
                    .collect();
                out.sort_by(|a, b| a.value.cmp(&b.value));
                return Ok(out);
            }
        }
    }
    Err(inconsistent("no affine interpolation reproduces the held-out sample".into()))
}

/// Affine form through three sample values.
fn fit(kappas: &[Kappa], values: [&Q; 3]) -> Option<LinForm> {
    let m = Mat::from_fn(3, 3, |r, c| match c {
        0 => Q::one(),
        1 => kappas[r].k.clone(),
        _ => kappas[r].kp.clone(),
    });
    let rhs: Vec<Q> = values.iter().map(|v| (*v).clone()).collect();
    let x = solve(&m, &rhs)?;
    Some(LinForm::new(x[0].clone(), x[1].clone(), x[2].clone()))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}
