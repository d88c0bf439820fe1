use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{a_form, unit, Dunkl, Kappa};
use crate::linalg::Mat;
use crate::rational::{fmt_q, qi, Q};
use crate::rootsystem::{Family, Orbit, RootSystem};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionResult {
    pub condition: String,
    pub holds: bool,
    /// Number of individual identities tested.
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub root_system: String,
    pub k: String,
    pub kp: String,
    pub a_coeff: String,
    pub conditions: Vec<ConditionResult>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.condition == name)
    }
}

/// Checks conditions (1)–(5b) of the flatness lemma with `a^κ` from the closed form.
pub fn flatness_conditions_check(rs: &RootSystem, kappa: &Kappa) -> ConditionReport {
    FlatnessChecker::new(rs).check(kappa)
}

/// As [`flatness_conditions_check`] with `a^κ = a_coeff·(·,·)`.
pub fn flatness_conditions_check_with(rs: &RootSystem, kappa: &Kappa, a_coeff: &Q) -> ConditionReport {
    FlatnessChecker::new(rs).check_with(kappa, a_coeff)
}

/// `κ`-independent data for repeated flatness checks on one root system.
///
/// Every endomorphism involved is linear in `(k, k')`, so it is stored as its first-orbit and
/// second-orbit parts (for `b`, the `k'` coefficient).
pub struct FlatnessChecker<'a> {
    rs: &'a RootSystem,
    orbit_of: Vec<usize>,
    coroots: Vec<Vec<Q>>,
    pairings: Vec<Vec<Q>>,
    /// Per fundamental coweight: the two orbit parts of `U_p`, and `b_p` at `k' = 1`.
    u_parts: Vec<[Mat<Q>; 2]>,
    b_unit: Vec<Mat<Q>>,
    /// `(b(e_i, e_j), e_k)` at `k' = 1`, flattened.
    b_form: Vec<Q>,
    rank2_terms: Vec<Rank2Term>,
}

/// For a term `u_β` of a rank-two sum `X`: the orbit parts of `X β∨ = Σ k_α α(β∨) α∨` and of
/// `β X = Σ k_α β(α∨) α`, as integer vectors.
struct Rank2Term {
    subsystem: usize,
    beta: usize,
    x_coroot: [Vec<i64>; 2],
    x_root: [Vec<i64>; 2],
}

impl<'a> FlatnessChecker<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        let n = rs.rank();
        let roots = rs.positive_roots();
        let orbit_of: Vec<usize> = roots
            .iter()
            .map(|r| usize::from(rs.family().has_two_orbits() && r.orbit == Orbit::Second))
            .collect();
        let coroots: Vec<Vec<Q>> = roots.iter().map(|r| r.coroot.clone()).collect();
        let pairings: Vec<Vec<Q>> = roots.iter().map(|r| r.pairing.iter().map(|&p| qi(p)).collect()).collect();

        let first = Dunkl::new(rs, &Kappa::new(qi(1), qi(0)), Q::zero());
        let second = Dunkl::new(rs, &Kappa::new(qi(0), qi(1)), Q::zero());
        let u_parts = rs
            .fundamental_coweights()
            .iter()
            .map(|p| {
                if rs.family().has_two_orbits() {
                    [first.big_u(p), second.big_u(p)]
                } else {
                    [first.big_u(p), Mat::zeros(n, n)]
                }
            })
            .collect();
        let b_unit = rs.fundamental_coweights().iter().map(|p| second.b_matrix(p)).collect();
        let b_form = if rs.family() == Family::A {
            let g = rs.coroot_gram();
            let mut out = Vec::with_capacity(n * n * n);
            for i in 0..n {
                for j in 0..n {
                    let bg = g.apply_left(&second.b(&unit(n, i), &unit(n, j)));
                    out.extend(bg);
                }
            }
            out
        } else {
            Vec::new()
        };

        let cartan = rs.root_pairings();
        let int_coroots: Vec<Vec<i64>> =
            roots.iter().map(|r| r.coroot.iter().map(|c| c.to_integer().to_i64().unwrap()).collect()).collect();
        let mut rank2_terms = Vec::new();
        for (si, s) in rs.rank2_subsystems().iter().enumerate() {
            for &b in s {
                let mut x_coroot = [vec![0; n], vec![0; n]];
                let mut x_root = [vec![0; n], vec![0; n]];
                for &a in s {
                    let o = orbit_of[a];
                    for l in 0..n {
                        x_coroot[o][l] += cartan[a][b] * int_coroots[a][l];
                        x_root[o][l] += cartan[b][a] * roots[a].pairing[l];
                    }
                }
                rank2_terms.push(Rank2Term { subsystem: si, beta: b, x_coroot, x_root });
            }
        }
        Self { rs, orbit_of, coroots, pairings, u_parts, b_unit, b_form, rank2_terms }
    }

    pub fn check(&self, kappa: &Kappa) -> ConditionReport {
        self.check_with(kappa, &a_form(self.rs, kappa))
    }

    pub fn check_with(&self, kappa: &Kappa, a_coeff: &Q) -> ConditionReport {
        let ctx = Ctx::new(self, kappa, a_coeff);
        let conditions = vec![
            ctx.condition1(),
            ctx.condition2(),
            ctx.condition3(),
            ctx.condition4(false),
            ctx.condition4(true),
            ctx.condition5a(),
            ctx.condition5b(),
        ];
        ConditionReport {
            root_system: self.rs.label(),
            k: fmt_q(&kappa.k),
            kp: fmt_q(&kappa.kp),
            a_coeff: fmt_q(a_coeff),
            conditions,
        }
    }
}

struct Ctx<'c, 'a> {
    base: &'c FlatnessChecker<'a>,
    rs: &'a RootSystem,
    /// Orbit weights `(k_first, k_second)`.
    orbit_weights: [Q; 2],
    half_kp: Q,
    a_coeff: Q,
    a_matrix: Mat<Q>,
    u_p: Vec<Mat<Q>>,
    b_p: Vec<Mat<Q>>,
}

fn result(name: &str, checked: usize, witness: Option<String>) -> ConditionResult {
    ConditionResult { condition: name.to_string(), holds: witness.is_none(), checked, witness }
}

/// Whether `X` commutes with the rank-one map `c ⊗ π` (`c`, `π` nonzero): this holds
/// exactly when `X c = λ c` and `π X = λ π` for a common `λ`.
fn commutes_with_rank_one(x: &Mat<Q>, c: &[Q], pi: &[Q]) -> bool {
    let xc = x.apply(c);
    let pix = x.apply_left(pi);
    let i = c.iter().position(|v| !v.is_zero()).expect("nonzero vector");
    let lambda = &xc[i] / &c[i];
    xc.iter().zip(c).all(|(a, b)| *a == &lambda * b) && pix.iter().zip(pi).all(|(a, b)| *a == &lambda * b)
}

/// Same test for integer data: `xc ∥ c` and `pix ∥ π` with a common factor.
fn proportional_pair(xc: &[i128], c: &[i128], pix: &[i128], pi: &[i128]) -> bool {
    let i = c.iter().position(|&v| v != 0).expect("nonzero vector");
    xc.iter().zip(c).all(|(&a, &b)| a * c[i] == xc[i] * b) && pix.iter().zip(pi).all(|(&a, &b)| a * c[i] == xc[i] * b)
}

impl<'c, 'a> Ctx<'c, 'a> {
    fn new(base: &'c FlatnessChecker<'a>, kappa: &Kappa, a_coeff: &Q) -> Self {
        let rs = base.rs;
        let orbit_weights = [kappa.k.clone(), if rs.family().has_two_orbits() { kappa.kp.clone() } else { kappa.k.clone() }];
        let half_kp = if rs.family() == Family::A { &kappa.kp / qi(2) } else { Q::zero() };
        let a_matrix = rs.coroot_gram().scale(a_coeff);
        let u_p = base.u_parts.iter().map(|[u1, u2]| u1.scale(&orbit_weights[0]) + u2.scale(&orbit_weights[1])).collect();
        let b_p = base.b_unit.iter().map(|b| b.scale(&(qi(2) * &half_kp))).collect();
        Self { base, rs, orbit_weights, half_kp, a_coeff: a_coeff.clone(), a_matrix, u_p, b_p }
    }

    fn root_name(&self, i: usize) -> String {
        format!("{:?}", self.rs.positive_roots()[i].coeffs)
    }

    fn weight(&self, i: usize) -> &Q {
        &self.orbit_weights[self.base.orbit_of[i]]
    }

    /// Orbit weights scaled to coprime integers, when they fit in `i64`.
    fn integer_weights(&self) -> Option<[i128; 2]> {
        let [w1, w2] = &self.orbit_weights;
        let l = w1.denom().lcm(w2.denom());
        let s1 = (w1 * Q::from_integer(l.clone())).to_integer().to_i64()?;
        let s2 = (w2 * Q::from_integer(l)).to_integer().to_i64()?;
        Some([s1.into(), s2.into()])
    }

    /// `Σ_{α∈R∩L} u_α` commutes with each of its terms.
    fn condition1(&self) -> ConditionResult {
        let terms = &self.base.rank2_terms;
        let subs = self.rs.rank2_subsystems();
        let name_of = |t: &Rank2Term| {
            let members: Vec<String> = subs[t.subsystem].iter().map(|&i| self.root_name(i)).collect();
            format!("subsystem {{{}}} fails to commute with u_{}", members.join(", "), self.root_name(t.beta))
        };
        let witness = match self.integer_weights() {
            Some(w) => terms.par_iter().find_map_first(|t| {
                if w[self.base.orbit_of[t.beta]] == 0 {
                    return None;
                }
                let comb = |v: &[Vec<i64>; 2]| -> Vec<i128> {
                    v[0].iter().zip(&v[1]).map(|(&a, &b)| w[0] * a as i128 + w[1] * b as i128).collect()
                };
                let r = &self.rs.positive_roots()[t.beta];
                let c: Vec<i128> = r.coroot.iter().map(|x| x.to_integer().to_i128().unwrap()).collect();
                let pi: Vec<i128> = r.pairing.iter().map(|&x| x.into()).collect();
                (!proportional_pair(&comb(&t.x_coroot), &c, &comb(&t.x_root), &pi)).then(|| name_of(t))
            }),
            None => terms.par_iter().find_map_first(|t| {
                if self.weight(t.beta).is_zero() {
                    return None;
                }
                let comb = |v: &[Vec<i64>; 2]| -> Vec<Q> {
                    v[0].iter()
                        .zip(&v[1])
                        .map(|(&a, &b)| &self.orbit_weights[0] * qi(a) + &self.orbit_weights[1] * qi(b))
                        .collect()
                };
                let (xc, pix) = (comb(&t.x_coroot), comb(&t.x_root));
                let (c, pi) = (&self.base.coroots[t.beta], &self.base.pairings[t.beta]);
                let i = c.iter().position(|v| !v.is_zero()).unwrap();
                let lambda = &xc[i] / &c[i];
                let ok = xc.iter().zip(c).all(|(x, y)| *x == &lambda * y)
                    && pix.iter().zip(pi).all(|(x, y)| *x == &lambda * y);
                (!ok).then(|| name_of(t))
            }),
        };
        result("1", terms.len(), witness)
    }

    /// Each `u_α` is self-adjoint for `a`.
    fn condition2(&self) -> ConditionResult {
        let n = self.rs.rank();
        let count = self.rs.positive_roots().len();
        let witness = (0..count).find_map(|i| {
            // a(u_α x, y) is the matrix k_α π ⊗ (A α∨)
            let ac = self.a_matrix.apply(&self.base.coroots[i]);
            let pi = &self.base.pairings[i];
            let w = self.weight(i);
            let sym = (0..n).all(|r| (r + 1..n).all(|c| w * &pi[r] * &ac[c] == w * &pi[c] * &ac[r]));
            (!sym).then(|| format!("u_{} is not a-self-adjoint", self.root_name(i)))
        });
        result("2", count, witness)
    }

    /// `a(b(z₁,z₂),z₃)` is fully symmetric.
    fn condition3(&self) -> ConditionResult {
        if self.rs.family() != Family::A {
            return result("3", 0, None);
        }
        let n = self.rs.rank();
        let scale = qi(2) * &self.half_kp * &self.a_coeff;
        let t = |i: usize, j: usize, k: usize| &scale * &self.base.b_form[(i * n + j) * n + k];
        let mut checked = 0;
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    checked += 1;
                    let v = t(i, j, k);
                    if v != t(i, k, j) || v != t(j, k, i) {
                        return result("3", checked, Some(format!("a(b(e{i}, e{j}), e{k}) is not symmetric")));
                    }
                }
            }
        }
        result("3", checked, None)
    }

    /// `[u_α, U_p] = 0` (or `[u_α, b_p] = 0`) whenever `α(p) = 0`.
    fn condition4(&self, b_side: bool) -> ConditionResult {
        let name = if b_side { "4b" } else { "4a" };
        let mats = if b_side { &self.b_p } else { &self.u_p };
        let mut checked = 0;
        for (m, p) in self.rs.fundamental_coweights().iter().enumerate() {
            if mats[m].is_zero() {
                checked += self.rs.positive_roots().iter().filter(|r| r.eval(p).is_zero()).count();
                continue;
            }
            for (i, r) in self.rs.positive_roots().iter().enumerate() {
                if !r.eval(p).is_zero() || self.weight(i).is_zero() {
                    continue;
                }
                checked += 1;
                if !commutes_with_rank_one(&mats[m], &self.base.coroots[i], &self.base.pairings[i]) {
                    let op = if b_side { "b" } else { "U" };
                    return result(name, checked, Some(format!("[u_{}, {op}_p] != 0 for p = coweight {}", self.root_name(i), m + 1)));
                }
            }
        }
        result(name, checked, None)
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rs.rank();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
    }

    /// `[U_p, b_q] = [U_q, b_p]`.
    fn condition5a(&self) -> ConditionResult {
        let pairs = self.pairs();
        let witness = pairs.par_iter().find_map_first(|&(i, j)| {
            let lhs = self.u_p[i].commutator(&self.b_p[j]);
            let rhs = self.u_p[j].commutator(&self.b_p[i]);
            (lhs != rhs).then(|| format!("coweights ({}, {})", i + 1, j + 1))
        });
        result("5a", pairs.len(), witness)
    }

    /// `[U_p, U_q] + [b_p, b_q] = p ⊗ a_q − q ⊗ a_p`.
    fn condition5b(&self) -> ConditionResult {
        let pairs = self.pairs();
        let cw = self.rs.fundamental_coweights();
        let witness = pairs.par_iter().find_map_first(|&(i, j)| {
            let lhs = self.u_p[i].commutator(&self.u_p[j]) + self.b_p[i].commutator(&self.b_p[j]);
            let (p, q) = (&cw[i], &cw[j]);
            let rhs = Mat::outer(p, &self.a_matrix.apply_left(q)) - Mat::outer(q, &self.a_matrix.apply_left(p));
            (lhs != rhs).then(|| format!("coweights ({}, {})", i + 1, j + 1))
        });
        result("5b", pairs.len(), witness)
    }
}
