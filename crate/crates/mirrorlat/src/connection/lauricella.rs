//! The toric Lauricella model with all weights `μ_i = 1`, in the coordinates of `ℚ^{n+1}`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{Dunkl, Kappa};
use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::rational::{q, qi, Q};
use crate::rootsystem::{Family, RootSystem};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LauricellaCheck {
    pub identity: String,
    pub holds: bool,
}

struct Model {
    dim: usize,
}

impl Model {
    fn eps(&self, i: usize) -> Vec<Q> {
        (0..self.dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
    }

    /// `p_I = (|I'|/N) ε_I − (|I|/N) ε_{I'}`.
    fn p(&self, set: &[bool]) -> Vec<Q> {
        let size = set.iter().filter(|&&x| x).count() as i64;
        let n = self.dim as i64;
        set.iter().map(|&x| if x { q(n - size, n) } else { q(-size, n) }).collect()
    }

    /// `U_I(z) = Σ_{i∈I, j∈I'} (z_i − z_j)(ε_i − ε_j)`.
    fn big_u(&self, set: &[bool], z: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for i in (0..self.dim).filter(|&i| set[i]) {
            for j in (0..self.dim).filter(|&j| !set[j]) {
                let c = &z[i] - &z[j];
                out[i] += &c;
                out[j] -= &c;
            }
        }
        out
    }

    fn project(&self, v: Vec<Q>) -> Vec<Q> {
        let mean = v.iter().fold(Q::zero(), |a, b| a + b) / qi(self.dim as i64);
        v.into_iter().map(|x| x - &mean).collect()
    }

    /// `b(z, w) = π(Σ z_i w_i ε_i)`.
    fn b(&self, z: &[Q], w: &[Q]) -> Vec<Q> {
        self.project(z.iter().zip(w).map(|(a, b)| a * b).collect())
    }

    /// A basis `ε_i − ε_{i+1}` of the hyperplane.
    fn h_basis(&self) -> Vec<Vec<Q>> {
        (0..self.dim - 1)
            .map(|i| {
                let mut v = self.eps(i);
                v[i + 1] = -Q::one();
                v
            })
            .collect()
    }
}

fn combo(a: &Q, x: &[Q], b: &Q, y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

/// Verifies the displayed identities of the toric Lauricella example for `N = n + 1`, and that
/// the `A_n` endomorphisms specialize to them: `U_p = −(k/2)·U_I` and `b^κ = (k'N/2)·b`.
pub fn lauricella_checks(rs: &RootSystem) -> Result<Vec<LauricellaCheck>> {
    if rs.family() != Family::A {
        return Err(Error::InvalidFamily { expected: 'A', got: rs.family() });
    }
    let n = rs.rank();
    let model = Model { dim: n + 1 };
    let big_n = qi(model.dim as i64);
    let initial = |m: usize| -> Vec<bool> { (0..model.dim).map(|i| i < m).collect() };
    let basis = model.h_basis();
    let mut out = Vec::new();
    let mut push = |identity: &str, holds: bool| out.push(LauricellaCheck { identity: identity.to_string(), holds });

    push(
        "U_I(p_I) = mu_N p_I",
        (1..=n).all(|m| {
            let s = initial(m);
            let p = model.p(&s);
            model.big_u(&s, &p) == p.iter().map(|x| &big_n * x).collect::<Vec<_>>()
        }),
    );

    let mut nested = true;
    let mut a_values = true;
    let mut commutators = true;
    for i in 1..=n {
        for j in i + 1..=n {
            let (si, sj) = (initial(i), initial(j));
            let (pi, pj) = (model.p(&si), model.p(&sj));
            let expected = combo(&qi((model.dim - j) as i64), &pi, &qi(i as i64), &pj);
            nested &= model.big_u(&sj, &pi) == expected && model.big_u(&si, &pj) == expected;
            a_values &= dot(&pi, &pj) == q((i * (model.dim - j)) as i64, model.dim as i64);
            for z in &basis {
                let lhs: Vec<Q> = model
                    .big_u(&si, &model.big_u(&sj, z))
                    .iter()
                    .zip(model.big_u(&sj, &model.big_u(&si, z)))
                    .map(|(a, b)| a - b)
                    .collect();
                let rhs = combo(&(&big_n * dot(z, &pj)), &pi, &(-&big_n * dot(z, &pi)), &pj);
                commutators &= lhs == rhs;
            }
        }
    }
    push("U_J(p_I) = U_I(p_J) = mu_J' p_I + mu_I p_J", nested);
    push("a(p_I, p_J) = mu_I mu_J' / mu_N", a_values);
    push("[U_I, U_J](z) = mu_N (a(z, p_J) p_I - a(z, p_I) p_J)", commutators);

    let inv_n = big_n.recip();
    let b_comm = basis.iter().all(|z| {
        basis.iter().all(|w| {
            basis.iter().all(|x| {
                let lhs: Vec<Q> =
                    model.b(z, &model.b(w, x)).iter().zip(model.b(w, &model.b(z, x))).map(|(a, b)| a - b).collect();
                let rhs = combo(&(-&inv_n * dot(w, x)), z, &(&inv_n * dot(z, x)), w);
                lhs == rhs
            })
        })
    });
    push("[b_z, b_w] = -mu_N^-1 (z (x) a_w - w (x) a_z)", b_comm);

    let k = q(2, 7);
    let kp = q(-3, 11);
    let dunkl = Dunkl::new(rs, &Kappa::new(k.clone(), kp.clone()), Q::zero());
    let u_spec = (1..=n).all(|m| {
        let p = rs.coweight(m).unwrap();
        let u = dunkl.big_u(p);
        basis.iter().all(|z| {
            let ours = rs.to_ambient(&u.apply(&rs.from_ambient(z)));
            let theirs: Vec<Q> = model.big_u(&initial(m), z).iter().map(|x| -&k / qi(2) * x).collect();
            ours == theirs
        }) && rs.to_ambient(p) == model.p(&initial(m))
    });
    push("U_p = -(k/2) U_I with p_I the coweight", u_spec);
    let scale = &kp * &big_n / qi(2);
    let b_spec = basis.iter().all(|z| {
        basis.iter().all(|w| {
            let ours = rs.to_ambient(&dunkl.b(&rs.from_ambient(z), &rs.from_ambient(w)));
            ours == model.b(z, w).iter().map(|x| &scale * x).collect::<Vec<_>>()
        })
    });
    push("b^kappa = (k' mu_N / 2) b", b_spec);
    Ok(out)
}
