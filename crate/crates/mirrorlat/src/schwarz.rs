//! Relative exponents, Schwarz conditions and the enumeration of ball-quotient parameters.

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::connection::Kappa;
use crate::error::{Error, Result};
use crate::hermitian::in_hyperbolic_region;
use crate::poly::LinForm;
use crate::rational::{fmt_q, q, qi, unit_fraction_denominator, Q};
use crate::rootsystem::{Family, RootSystem};

/// Default bound on `p` and `p'`.
pub const SCAN_CAP: u64 = 100;

/// Relative exponents as affine forms in `(k, k')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentRecord {
    pub toric: Vec<LinForm>,
    pub mirror: Vec<LinForm>,
    pub identity: LinForm,
}

fn lf(c: Q, k: Q, kp: Q) -> LinForm {
    LinForm::new(c, k, kp)
}

/// The row of the relative-exponent table for the type of `rs`.
pub fn exponent_record(rs: &RootSystem) -> ExponentRecord {
    let n = rs.rank() as i64;
    let z = Q::zero;
    let half = || q(1, 2);
    let mirror_k = lf(half(), qi(-1), z());
    let mirror_kp = lf(half(), z(), qi(-1));
    let (toric, mirror, identity) = match rs.family() {
        Family::A => (
            vec![lf(z(), q(n - 1, 2), q(-(n + 1), 2)), lf(z(), q(n - 1, 2), q(n + 1, 2))],
            vec![mirror_k],
            lf(-half(), q(n + 1, 2), z()),
        ),
        Family::B => (
            vec![lf(z(), qi(n - 3), qi(1)), lf(z(), qi(2), qi(-1))],
            vec![mirror_k, mirror_kp],
            lf(-half(), qi(n - 1), qi(1)),
        ),
        Family::C => (
            vec![lf(z(), qi(n - 3), qi(2)), lf(z(), qi(1), qi(-1))],
            vec![mirror_k, mirror_kp],
            lf(-half(), qi(n - 1), qi(1)),
        ),
        Family::D => (vec![lf(z(), qi(n - 3), z()), lf(z(), qi(1), z())], vec![mirror_k], lf(-half(), qi(n - 1), z())),
        Family::E => {
            let h = rs.coxeter_number() as i64;
            (
                vec![lf(z(), qi(1), z()), lf(z(), qi(2), z()), lf(z(), qi(n - 4), z())],
                vec![mirror_k],
                lf(-half(), q(h, 2), z()),
            )
        }
        Family::F => (vec![lf(z(), z(), qi(1)), lf(z(), qi(2), z())], vec![mirror_k, mirror_kp], lf(-half(), qi(3), qi(3))),
        Family::G => (
            vec![lf(z(), q(-1, 2), q(3, 2)), lf(z(), q(1, 2), q(-1, 2))],
            vec![mirror_k, mirror_kp],
            lf(-half(), q(3, 2), q(3, 2)),
        ),
    };
    ExponentRecord { toric, mirror, identity }
}

/// `(1/n) Σ_{α>0} k_α − 1/2`, summed over the positive roots.
pub fn identity_exponent(rs: &RootSystem) -> LinForm {
    let sym = Kappa::symbolic();
    let total = rs
        .positive_roots()
        .iter()
        .fold(LinForm::default(), |acc, r| acc + sym.root_weight(rs.family(), r).to_linform().expect("linear"));
    total.scale(&q(1, rs.rank() as i64)) - LinForm::constant(q(1, 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stratum {
    Toric,
    Mirror,
    Identity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentCheck {
    pub stratum: Stratum,
    pub form: LinForm,
    #[serde(serialize_with = "ser_q")]
    pub value: Q,
    /// `value ≤ 0`, or `value = 1/m` for a positive integer `m`.
    pub ok: bool,
}

fn ser_q<S: Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchwarzReport {
    pub satisfied: bool,
    pub exponents: Vec<ExponentCheck>,
}

pub fn relative_exponents(rs: &RootSystem, kappa: &Kappa) -> Vec<(Stratum, LinForm, Q)> {
    let rec = exponent_record(rs);
    let eval = |f: &LinForm| f.eval(&kappa.k, &kappa.kp);
    let mut out: Vec<(Stratum, LinForm, Q)> = Vec::new();
    out.extend(rec.toric.iter().map(|f| (Stratum::Toric, f.clone(), eval(f))));
    out.extend(rec.mirror.iter().map(|f| (Stratum::Mirror, f.clone(), eval(f))));
    out.push((Stratum::Identity, rec.identity.clone(), eval(&rec.identity)));
    out
}

fn admissible(v: &Q) -> bool {
    !v.is_positive() || unit_fraction_denominator(v).is_some()
}

pub fn schwarz_satisfied(rs: &RootSystem, kappa: &Kappa) -> SchwarzReport {
    let exponents: Vec<ExponentCheck> = relative_exponents(rs, kappa)
        .into_iter()
        .map(|(stratum, form, value)| {
            let ok = admissible(&value);
            ExponentCheck { stratum, form, value, ok }
        })
        .collect();
    SchwarzReport { satisfied: exponents.iter().all(|e| e.ok), exponents }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallQuotientEntry {
    pub family: char,
    pub rank: usize,
    #[serde(serialize_with = "ser_q")]
    pub k: Q,
    pub p: u64,
    /// Second parameter for types `A`, `B`, `C`, `F`, `G`.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_q")]
    pub kp: Option<Q>,
    /// `k' = 1/2 − 1/p'` for types `B`, `C`, `F`, `G`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pp: Option<u64>,
}

fn ser_opt_q<S: Serializer>(v: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&fmt_q(x)),
        None => s.serialize_none(),
    }
}

impl BallQuotientEntry {
    pub fn kappa(&self) -> Kappa {
        Kappa::new(self.k.clone(), self.kp.clone().unwrap_or_else(Q::zero))
    }
}

fn from_p(p: u64) -> Q {
    q(1, 2) - q(1, p as i64)
}

/// All `(k, k')` with `k = 1/2 − 1/p` (`3 ≤ p ≤ cap`) inside `K'_hyp` that satisfy the Schwarz
/// conditions, sorted by `p` and then by `k'`.
pub fn enumerate_with_cap(rs: &RootSystem, cap: u64) -> Vec<BallQuotientEntry> {
    let family = rs.family();
    let mut out = Vec::new();
    for p in 3..=cap {
        let k = from_p(p);
        let entry = |kp: Option<Q>, pp: Option<u64>| BallQuotientEntry {
            family: family.letter(),
            rank: rs.rank(),
            k: k.clone(),
            p,
            kp,
            pp,
        };
        let admit = |kappa: &Kappa| in_hyperbolic_region(rs, kappa) && schwarz_satisfied(rs, kappa).satisfied;
        match family {
            Family::D | Family::E => {
                if admit(&Kappa::new(k.clone(), Q::zero())) {
                    out.push(entry(None, None));
                }
            }
            Family::A => {
                let mut kps = a_type_candidates(rs.rank(), &k);
                kps.sort();
                kps.dedup();
                for kp in kps {
                    if admit(&Kappa::new(k.clone(), kp.clone())) {
                        out.push(entry(Some(kp), None));
                    }
                }
            }
            _ => {
                for pp in 3..=cap {
                    let kp = from_p(pp);
                    if admit(&Kappa::new(k.clone(), kp.clone())) {
                        out.push(entry(Some(kp), Some(pp)));
                    }
                }
            }
        }
    }
    out
}

pub fn enumerate_ball_quotients(rs: &RootSystem) -> Vec<BallQuotientEntry> {
    enumerate_with_cap(rs, SCAN_CAP)
}

/// Whether doubling the scan bound leaves the enumeration unchanged.
pub fn completeness_guard(rs: &RootSystem) -> bool {
    enumerate_with_cap(rs, SCAN_CAP) == enumerate_with_cap(rs, 2 * SCAN_CAP)
}

/// Every `k'` for which both toric exponents `e_± = (n−1)k/2 ± (n+1)k'/2` are admissible
/// (a finite set; hyperbolicity is checked by the caller).
pub fn a_type_candidates(n: usize, k: &Q) -> Vec<Q> {
    let n = n as i64;
    let s = qi(n - 1) * k;
    if !s.is_positive() {
        return Vec::new();
    }
    // e_+ = 1/q gives k' = (2/q − (n−1)k)/(n+1); e_− = 1/q gives its negative
    let kp_of = |e_plus: &Q| (qi(2) * e_plus - &s) / qi(n + 1);
    let mut out = Vec::new();
    // both positive: 1/q₁ + 1/q₂ = s, the larger term is at least s/2
    let max_q = (qi(2) / &s).floor().to_integer();
    let mut qd = 1i64;
    while qi(qd) <= Q::from_integer(max_q.clone()) {
        let a = q(1, qd);
        let b = &s - &a;
        if b.is_positive() && unit_fraction_denominator(&b).is_some() {
            out.push(kp_of(&a));
            out.push(kp_of(&b));
        }
        // one positive term 1/q ≥ s, the other ≤ 0
        if a >= s {
            out.push(kp_of(&a));
            out.push(-kp_of(&a));
        }
        qd += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub name: String,
    #[serde(serialize_with = "ser_q")]
    pub lhs: Q,
    #[serde(serialize_with = "ser_q")]
    pub rhs: Q,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeligneMostowReport {
    pub rank: usize,
    #[serde(serialize_with = "ser_q")]
    pub k: Q,
    #[serde(serialize_with = "ser_vec_q")]
    pub mu: Vec<Q>,
    #[serde(serialize_with = "ser_q")]
    pub mu_sum: Q,
    pub identities: Vec<Identity>,
    pub half_integral: bool,
}

fn ser_vec_q<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

/// The weight vector `μ = (μ₀, k, …, k, μ_{n+2})` with `μ₀ = μ_{n+2} = (2 − (n+1)k)/2`.
pub fn mu_vector(n: usize, k: &Q) -> Vec<Q> {
    let end = (qi(2) - qi(n as i64 + 1) * k) / qi(2);
    let mut mu = vec![end.clone()];
    mu.extend(std::iter::repeat_n(k.clone(), n + 1));
    mu.push(end);
    mu
}

/// `1 − μ_i − μ_j ∈ 1/ℕ` (or `2/ℕ` when `μ_i = μ_j`) whenever `μ_i + μ_j < 1`.
pub fn half_integrality(mu: &[Q]) -> bool {
    for i in 0..mu.len() {
        for j in i + 1..mu.len() {
            let d = Q::one() - &mu[i] - &mu[j];
            if !d.is_positive() {
                continue;
            }
            let target = if mu[i] == mu[j] { d / qi(2) } else { d };
            if unit_fraction_denominator(&target).is_none() {
                return false;
            }
        }
    }
    true
}

pub fn deligne_mostow_check(n: usize, k: &Q) -> Result<DeligneMostowReport> {
    let mu = mu_vector(n, k);
    for (i, m) in mu.iter().enumerate() {
        if !m.is_positive() || m >= &Q::one() {
            return Err(Error::DomainViolation { name: format!("mu_{i}"), value: fmt_q(m) });
        }
    }
    let ni = n as i64;
    let half = q(1, 2);
    let id = |name: &str, lhs: Q, rhs: Q| Identity { name: name.into(), holds: lhs == rhs, lhs, rhs };
    let identities = vec![
        id("toric", qi(ni - 1) * k / qi(2), Q::one() - &mu[0] - &mu[1]),
        id("mirror", (Q::one() - qi(2) * k) / qi(2), (Q::one() - &mu[1] - &mu[n + 1]) * &half),
        id("identity", (qi(ni + 1) * k - Q::one()) / qi(2), (Q::one() - &mu[0] - &mu[n + 2]) * &half),
    ];
    let mu_sum = mu.iter().fold(Q::zero(), |a, b| a + b);
    let half_integral = half_integrality(&mu);
    Ok(DeligneMostowReport { rank: n, k: k.clone(), mu, mu_sum, identities, half_integral })
}
