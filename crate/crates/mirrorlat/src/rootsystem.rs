//! Reduced irreducible root systems in Bourbaki coordinates.
//!
//! Vectors of 𝔥 are stored in the simple-coroot basis `(α₁∨, …, α_n∨)`; roots are stored by
//! their integer coefficients over the simple roots. The ambient Euclidean model is only used
//! to derive pairings and for display.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, inverse, Mat};
use crate::rational::{q, qi, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.letter() == c.to_ascii_uppercase())
    }

    pub fn supported_ranks(self) -> std::ops::RangeInclusive<usize> {
        match self {
            Family::A => 2..=9,
            Family::B | Family::C => 2..=7,
            Family::D => 4..=8,
            Family::E => 6..=8,
            Family::F => 4..=4,
            Family::G => 2..=2,
        }
    }

    /// B, C, F and G carry a second multiplicity `k'` on a second Weyl orbit.
    pub fn has_two_orbits(self) -> bool {
        matches!(self, Family::B | Family::C | Family::F | Family::G)
    }

    /// Whether `k'` is meaningful at all (second orbit, or the `b`-map parameter for A).
    pub fn uses_kprime(self) -> bool {
        self.has_two_orbits() || self == Family::A
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Which multiplicity a root carries: `k` on the first orbit, `k'` on the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orbit {
    First,
    Second,
}

#[derive(Clone, Debug)]
pub struct Root {
    /// Coefficients over the simple roots.
    pub coeffs: Vec<i64>,
    pub ambient: Vec<Q>,
    /// `α∨` in the simple-coroot basis.
    pub coroot: Vec<Q>,
    /// `α(α_j∨)` for each simple coroot.
    pub pairing: Vec<i64>,
    pub norm2: Q,
    pub orbit: Orbit,
}

impl Root {
    /// `α(x)` for `x` in simple-coroot coordinates.
    pub fn eval(&self, x: &[Q]) -> Q {
        self.pairing
            .iter()
            .zip(x)
            .filter(|(p, _)| **p != 0)
            .fold(Q::zero(), |acc, (p, xi)| acc + xi * Q::from_integer((*p).into()))
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    ambient_dim: usize,
    simple_roots: Vec<Vec<Q>>,
    positive_roots: Vec<Root>,
    cartan: Vec<Vec<i64>>,
    coroot_gram: Mat<Q>,
    coweights: Vec<Vec<Q>>,
    highest: usize,
    coxeter: Vec<Vec<u32>>,
    rank2: OnceLock<Vec<Vec<usize>>>,
    root_pairings: OnceLock<Vec<Vec<i64>>>,
}

fn e(dim: usize, i: usize, c: Q) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = c;
    v
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(c: &Q, v: &[Q]) -> Vec<Q> {
    v.iter().map(|x| c * x).collect()
}

fn simple_roots(family: Family, n: usize) -> Vec<Vec<Q>> {
    let diff = |d: usize, i: usize, j: usize| add(&e(d, i, qi(1)), &e(d, j, qi(-1)));
    match family {
        Family::A => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        Family::B | Family::C | Family::D => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(match family {
                Family::B => e(n, n - 1, qi(1)),
                Family::C => e(n, n - 1, qi(2)),
                _ => add(&e(n, n - 2, qi(1)), &e(n, n - 1, qi(1))),
            });
            s
        }
        Family::E => {
            let h = q(1, 2);
            let mut a1 = vec![-h.clone(); 8];
            a1[0] = h.clone();
            a1[7] = h;
            let mut s = vec![a1, add(&e(8, 0, qi(1)), &e(8, 1, qi(1)))];
            s.extend((3..=8).map(|k| diff(8, k - 2, k - 3)));
            s.truncate(n);
            s
        }
        Family::F => {
            let h = q(1, 2);
            vec![diff(4, 1, 2), diff(4, 2, 3), e(4, 3, qi(1)), vec![h.clone(), -h.clone(), -h.clone(), -h]]
        }
        Family::G => vec![vec![qi(1), qi(-1), qi(0)], vec![qi(-2), qi(1), qi(1)]],
    }
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        if !family.supported_ranks().contains(&rank) {
            return Err(Error::UnsupportedType { family: family.letter(), rank });
        }
        let n = rank;
        let simple = simple_roots(family, n);
        let ambient_dim = simple[0].len();
        let ip = |a: &[Q], b: &[Q]| dot(a, b);
        let norms: Vec<Q> = simple.iter().map(|s| ip(s, s)).collect();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = qi(2) * ip(&simple[i], &simple[j]) / &norms[j];
                        v.to_integer().to_i64().expect("cartan integer")
                    })
                    .collect()
            })
            .collect();

        // positive roots: closure of the simple roots under simple reflections
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut frontier: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        seen.extend(frontier.iter().cloned());
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in &frontier {
                for i in 0..n {
                    let c: i64 = (0..n).map(|j| r[j] * cartan[j][i]).sum();
                    let mut t = r.clone();
                    t[i] -= c;
                    if t.iter().all(|&x| x >= 0) && seen.insert(t.clone()) {
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
        let mut coeff_list: Vec<Vec<i64>> = seen.into_iter().collect();
        coeff_list.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));

        let max_norm = coeff_list
            .iter()
            .map(|c| {
                let v = combine(&simple, c);
                ip(&v, &v)
            })
            .max()
            .unwrap();
        let positive_roots: Vec<Root> = coeff_list
            .into_iter()
            .map(|coeffs| {
                let ambient = combine(&simple, &coeffs);
                let norm2 = ip(&ambient, &ambient);
                let coroot = (0..n).map(|j| qi(coeffs[j]) * &norms[j] / &norm2).collect();
                let pairing = (0..n).map(|j| (0..n).map(|i| coeffs[i] * cartan[i][j]).sum()).collect();
                let long = norm2 == max_norm;
                let orbit = match family {
                    Family::B | Family::F if !long => Orbit::Second,
                    Family::C | Family::G if long => Orbit::Second,
                    _ => Orbit::First,
                };
                Root { coeffs, ambient, coroot, pairing, norm2, orbit }
            })
            .collect();

        let coroot_gram = Mat::from_fn(n, n, |i, j| qi(4) * ip(&simple[i], &simple[j]) / (&norms[i] * &norms[j]));
        let pairing_mat = Mat::from_fn(n, n, |j, i| qi(cartan[j][i]));
        let inv = inverse(&pairing_mat).expect("Cartan matrix is invertible");
        let coweights = (0..n).map(|m| (0..n).map(|i| inv[(i, m)].clone()).collect()).collect();
        let highest = (0..positive_roots.len()).max_by_key(|&i| positive_roots[i].height()).unwrap();

        let mut rs = RootSystem {
            family,
            rank,
            ambient_dim,
            simple_roots: simple,
            positive_roots,
            cartan,
            coroot_gram,
            coweights,
            highest,
            coxeter: vec![],
            rank2: OnceLock::new(),
            root_pairings: OnceLock::new(),
        };
        rs.coxeter = rs.compute_affine_coxeter();
        Ok(rs)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn simple_roots(&self) -> &[Vec<Q>] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// `cartan()[i][j] = α_i(α_j∨)`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Gram matrix `(α_i∨, α_j∨)` of the inner product in the coroot basis.
    pub fn coroot_gram(&self) -> &Mat<Q> {
        &self.coroot_gram
    }

    pub fn inner(&self, u: &[Q], v: &[Q]) -> Q {
        dot(u, &self.coroot_gram.apply(v))
    }

    /// Fundamental coweights in the simple-coroot basis; index 0 is `ϖ₁∨`.
    pub fn fundamental_coweights(&self) -> &[Vec<Q>] {
        &self.coweights
    }

    pub fn coweight(&self, m: usize) -> Result<&[Q]> {
        if m == 0 || m > self.rank {
            return Err(Error::InvalidNode { node: m, rank: self.rank });
        }
        Ok(&self.coweights[m - 1])
    }

    /// Ambient coordinates of a vector given in the coroot basis.
    pub fn to_ambient(&self, x: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.ambient_dim];
        for (i, c) in x.iter().enumerate() {
            let s = &self.simple_roots[i];
            let f = qi(2) * c / dot(s, s);
            out = add(&out, &scale(&f, s));
        }
        out
    }

    /// Coroot-basis coordinates of an ambient vector lying in the span of the roots.
    pub fn from_ambient(&self, v: &[Q]) -> Vec<Q> {
        // pair with the simple roots, then invert the pairing matrix
        let pairings: Vec<Q> = self
            .simple_roots
            .iter()
            .map(|s| dot(s, v))
            .collect();
        let pm = Mat::from_fn(self.rank, self.rank, |j, i| {
            let s = &self.simple_roots[i];
            qi(2) * dot(&self.simple_roots[j], s) / dot(s, s)
        });
        inverse(&pm).expect("invertible").apply(&pairings)
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest]
    }

    pub fn coxeter_number(&self) -> usize {
        2 * self.positive_roots.len() / self.rank
    }

    pub fn find_root(&self, coeffs: &[i64]) -> Option<(usize, bool)> {
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        self.positive_roots.iter().enumerate().find_map(|(i, r)| {
            if r.coeffs == coeffs {
                Some((i, true))
            } else if r.coeffs == neg {
                Some((i, false))
            } else {
                None
            }
        })
    }

    /// Affine Coxeter matrix on nodes `(−α̃, α₁, …, α_n)`.
    pub fn affine_coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    /// Ambient vectors of the affine nodes; node 0 is `−α̃`.
    pub fn affine_nodes(&self) -> Vec<Vec<Q>> {
        let mut nodes = vec![scale(&qi(-1), &self.highest_root().ambient)];
        nodes.extend(self.simple_roots.iter().cloned());
        nodes
    }

    /// Orbit of each affine node.
    pub fn affine_orbits(&self) -> Vec<Orbit> {
        let mut out = vec![self.highest_root().orbit];
        for i in 0..self.rank {
            let unit: Vec<i64> = (0..self.rank).map(|j| i64::from(i == j)).collect();
            out.push(self.positive_roots[self.find_root(&unit).unwrap().0].orbit);
        }
        out
    }

    fn compute_affine_coxeter(&self) -> Vec<Vec<u32>> {
        let nodes = self.affine_nodes();
        let n = nodes.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            return 1;
                        }
                        let (a, b) = (&nodes[i], &nodes[j]);
                        let ab = dot(a, b);
                        let prod = qi(4) * &ab * &ab / (dot(a, a) * dot(b, b));
                        match prod.to_integer().to_i64() {
                            Some(0) => 2,
                            Some(1) => 3,
                            Some(2) => 4,
                            Some(3) => 6,
                            other => panic!("unexpected angle product {other:?}"),
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `(h̃, {m̃_j})` of the determinant formula, for D and E.
    pub fn de_exponents(&self) -> Option<(u32, Vec<u32>)> {
        let n = self.rank as u32;
        match self.family {
            Family::D => {
                let mut m: Vec<u32> = (0..=n - 2).map(|j| 2 * j).collect();
                m.extend([n - 2, n - 2]);
                m.sort_unstable();
                Some((2 * (n - 2), m))
            }
            Family::E => Some(match n {
                6 => (6, vec![0, 2, 2, 3, 4, 4, 6]),
                7 => (12, vec![0, 3, 4, 6, 6, 8, 9, 12]),
                _ => (30, vec![0, 6, 10, 12, 15, 18, 20, 24, 30]),
            }),
            _ => None,
        }
    }

    /// All `R ∩ span(α, β)` for non-proportional roots, as sorted sets of positive-root indices
    /// (the subsystem itself is these roots together with their negatives).
    pub fn rank2_subsystems(&self) -> &[Vec<usize>] {
        self.rank2.get_or_init(|| self.compute_rank2_subsystems())
    }

    fn compute_rank2_subsystems(&self) -> Vec<Vec<usize>> {
        let roots = &self.positive_roots;
        let n = self.rank;
        let mut covered: HashSet<(usize, usize)> = HashSet::new();
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if covered.contains(&(i, j)) {
                    continue;
                }
                let (a, b) = (&roots[i].coeffs, &roots[j].coeffs);
                let Some((r, s)) = independent_coords(a, b) else { continue };
                let det = a[r] * b[s] - a[s] * b[r];
                let members: Vec<usize> = (0..roots.len())
                    .filter(|&l| {
                        let g = &roots[l].coeffs;
                        // Cramer: g = x a + y b on coordinates r, s, then check the rest
                        let xn = g[r] * b[s] - g[s] * b[r];
                        let yn = a[r] * g[s] - a[s] * g[r];
                        (0..n).all(|t| xn * a[t] + yn * b[t] == det * g[t])
                    })
                    .collect();
                for (x, &p) in members.iter().enumerate() {
                    for &q in &members[x + 1..] {
                        covered.insert((p, q));
                    }
                }
                out.insert(members);
            }
        }
        out.into_iter().collect()
    }

    /// `root_pairings()[a][b] = α_a(α_b∨)` over the positive roots.
    pub fn root_pairings(&self) -> &[Vec<i64>] {
        self.root_pairings.get_or_init(|| {
            let coroots: Vec<Vec<i64>> = self
                .positive_roots
                .iter()
                .map(|r| r.coroot.iter().map(|c| c.to_integer().to_i64().expect("integral coroot")).collect())
                .collect();
            self.positive_roots
                .iter()
                .map(|a| coroots.iter().map(|c| a.pairing.iter().zip(c).map(|(x, y)| x * y).sum()).collect())
                .collect()
        })
    }

    /// Reflection `s_α(β) = β − β(α∨) α` on coefficient vectors.
    pub fn reflect(&self, alpha: &Root, beta: &[i64]) -> Vec<i64> {
        let pairing = self.pair_coeffs_with_coroot(beta, alpha);
        beta.iter().zip(&alpha.coeffs).map(|(b, a)| b - pairing * a).collect()
    }

    /// `β(α∨)` for `β` given by simple-root coefficients.
    pub fn pair_coeffs_with_coroot(&self, beta: &[i64], alpha: &Root) -> i64 {
        let v: Q = (0..self.rank)
            .map(|i| {
                let row: Q = (0..self.rank).map(|j| &alpha.coroot[j] * qi(self.cartan[i][j])).fold(Q::zero(), |a, b| a + b);
                qi(beta[i]) * row
            })
            .fold(Q::zero(), |a, b| a + b);
        debug_assert!(v.is_integer());
        v.to_integer().to_i64().unwrap()
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

fn combine(simple: &[Vec<Q>], coeffs: &[i64]) -> Vec<Q> {
    let mut v = vec![Q::zero(); simple[0].len()];
    for (c, s) in coeffs.iter().zip(simple) {
        if *c != 0 {
            v = add(&v, &scale(&qi(*c), s));
        }
    }
    v
}

fn independent_coords(a: &[i64], b: &[i64]) -> Option<(usize, usize)> {
    let n = a.len();
    (0..n).flat_map(|r| (r + 1..n).map(move |s| (r, s))).find(|&(r, s)| a[r] * b[s] != a[s] * b[r])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::fmt_q;

    fn all_supported() -> Vec<RootSystem> {
        Family::ALL
            .into_iter()
            .flat_map(|f| f.supported_ranks().map(move |n| RootSystem::build(f, n).unwrap()))
            .collect()
    }

    #[test]
    fn positive_root_counts_match_coxeter_numbers() {
        // |R+| = n h / 2 with the standard Coxeter numbers
        let h = |f: Family, n: usize| match f {
            Family::A => n + 1,
            Family::B | Family::C => 2 * n,
            Family::D => 2 * n - 2,
            Family::E => [12, 18, 30][n - 6],
            Family::F => 12,
            Family::G => 6,
        };
        for rs in all_supported() {
            assert_eq!(rs.positive_roots().len(), rs.rank() * h(rs.family(), rs.rank()) / 2, "{}", rs.label());
        }
    }

    #[test]
    fn unsupported_types_rejected() {
        for (f, n) in [(Family::A, 1), (Family::A, 10), (Family::D, 3), (Family::E, 5), (Family::F, 3), (Family::G, 3)] {
            assert_eq!(RootSystem::build(f, n).unwrap_err(), Error::UnsupportedType { family: f.letter(), rank: n });
        }
    }

    #[test]
    fn crystallographic_and_coroot_pairing() {
        for rs in all_supported() {
            for a in rs.positive_roots() {
                assert_eq!(a.eval(&a.coroot), qi(2));
                for b in rs.positive_roots() {
                    let c = qi(2) * dot(&a.ambient, &b.ambient) / &b.norm2;
                    assert!(c.is_integer());
                }
            }
        }
    }

    #[test]
    fn coweight_duality() {
        for rs in all_supported() {
            let n = rs.rank();
            for i in 0..n {
                let unit: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
                let (idx, _) = rs.find_root(&unit).unwrap();
                for (m, w) in rs.fundamental_coweights().iter().enumerate() {
                    assert_eq!(rs.positive_roots()[idx].eval(w), qi(i64::from(i == m)));
                }
            }
        }
    }

    #[test]
    fn a3_coweight_in_ambient_coordinates() {
        let rs = RootSystem::build(Family::A, 3).unwrap();
        let w: Vec<String> = rs.to_ambient(rs.coweight(2).unwrap()).iter().map(fmt_q).collect();
        assert_eq!(w, ["1/2", "1/2", "-1/2", "-1/2"]);
        // ((n+1-m)/(n+1)) on the first m coordinates, -(m/(n+1)) after
        for n in 2..=9 {
            let rs = RootSystem::build(Family::A, n).unwrap();
            for m in 1..=n {
                let w = rs.to_ambient(rs.coweight(m).unwrap());
                for (i, x) in w.iter().enumerate() {
                    let expect = if i < m { q((n + 1 - m) as i64, (n + 1) as i64) } else { q(-(m as i64), (n + 1) as i64) };
                    assert_eq!(*x, expect);
                }
            }
        }
    }

    #[test]
    fn bcd_coweights_are_epsilon_sums() {
        for n in 2..=7 {
            let rs = RootSystem::build(Family::B, n).unwrap();
            for m in 1..=n {
                let w = rs.to_ambient(rs.coweight(m).unwrap());
                assert!(w.iter().enumerate().all(|(i, x)| *x == qi(i64::from(i < m))));
            }
            let rs = RootSystem::build(Family::C, n).unwrap();
            let w = rs.to_ambient(rs.coweight(n).unwrap());
            assert!(w.iter().all(|x| *x == q(1, 2)));
        }
        let rs = RootSystem::build(Family::D, 5).unwrap();
        let spin = rs.to_ambient(rs.coweight(5).unwrap());
        assert!(spin.iter().all(|x| *x == q(1, 2)));
        let spin = rs.to_ambient(rs.coweight(4).unwrap());
        assert_eq!(spin[4], q(-1, 2));
    }

    #[test]
    fn a2_roots_sum_to_zero() {
        let rs = RootSystem::build(Family::A, 2).unwrap();
        let r = rs.positive_roots();
        assert_eq!(r.len(), 3);
        let (a, b) = (&r[0].ambient, &r[1].ambient);
        let gamma: Vec<Q> = add(a, b).iter().map(|x| -x).collect();
        assert!(add(&add(a, b), &gamma).iter().all(Zero::is_zero));
        assert!(rs.find_root(&[-1, -1]).is_some());
    }

    #[test]
    fn highest_roots() {
        let hr = |f, n| RootSystem::build(f, n).unwrap().highest_root().coeffs.clone();
        assert_eq!(hr(Family::E, 6), vec![1, 2, 2, 3, 2, 1]);
        assert_eq!(hr(Family::E, 7), vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(hr(Family::E, 8), vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(hr(Family::F, 4), vec![2, 3, 4, 2]);
        assert_eq!(hr(Family::G, 2), vec![3, 2]);
        assert_eq!(hr(Family::B, 4), vec![1, 2, 2, 2]);
        assert_eq!(hr(Family::C, 4), vec![2, 2, 2, 1]);
    }

    #[test]
    fn e7_printed_vector_is_a_root_at_level_four() {
        // α₁+2α₂+3α₃+4α₄+3α₅+2α₆+α₇ is a root with α(ϖ₄∨)=4, but not the highest one
        let rs = RootSystem::build(Family::E, 7).unwrap();
        let printed = [1, 2, 3, 4, 3, 2, 1];
        let (idx, positive) = rs.find_root(&printed).unwrap();
        assert!(positive);
        assert_eq!(rs.positive_roots()[idx].eval(rs.coweight(4).unwrap()), qi(4));
        assert_ne!(rs.highest_root().coeffs, printed);
    }

    #[test]
    fn highest_root_dominates_coweights() {
        for rs in all_supported() {
            let hr = rs.highest_root();
            assert!(hr.coeffs.iter().all(|&c| c >= 1));
            for w in rs.fundamental_coweights() {
                assert!(hr.eval(w) >= qi(1));
            }
        }
    }

    #[test]
    fn affine_coxeter_matrices() {
        for rs in all_supported() {
            let m = rs.affine_coxeter_matrix();
            for i in 0..m.len() {
                assert_eq!(m[i][i], 1);
                for j in 0..m.len() {
                    assert_eq!(m[i][j], m[j][i]);
                }
            }
        }
        for n in 2..=9 {
            let rs = RootSystem::build(Family::A, n).unwrap();
            let m = rs.affine_coxeter_matrix();
            for i in 0..=n {
                for j in 0..=n {
                    let adjacent = (i + 1) % (n + 1) == j || (j + 1) % (n + 1) == i;
                    let expect = if i == j { 1 } else if adjacent { 3 } else { 2 };
                    assert_eq!(m[i][j], expect, "A{n} ({i},{j})");
                }
            }
        }
        let g2 = RootSystem::build(Family::G, 2).unwrap();
        assert_eq!(g2.affine_coxeter_matrix(), &[vec![1, 2, 3], vec![2, 1, 6], vec![3, 6, 1]]);
    }

    #[test]
    fn orbit_tags() {
        let tags = |f, n| {
            let rs = RootSystem::build(f, n).unwrap();
            let second = rs.positive_roots().iter().filter(|r| r.orbit == Orbit::Second).count();
            (rs.positive_roots().len() - second, second)
        };
        assert_eq!(tags(Family::B, 3), (6, 3));
        assert_eq!(tags(Family::C, 3), (6, 3));
        assert_eq!(tags(Family::F, 4), (12, 12));
        assert_eq!(tags(Family::G, 2), (3, 3));
        assert_eq!(tags(Family::E, 6), (36, 0));
        // α₄ of F₄ and α₂ of G₂ carry k'
        let f4 = RootSystem::build(Family::F, 4).unwrap();
        assert_eq!(f4.affine_orbits()[4], Orbit::Second);
        let g2 = RootSystem::build(Family::G, 2).unwrap();
        assert_eq!(g2.affine_orbits(), vec![Orbit::Second, Orbit::First, Orbit::Second]);
    }

    #[test]
    fn every_root_is_conjugate_to_a_simple_root_with_its_tag() {
        for rs in all_supported() {
            for r in rs.positive_roots() {
                // descend by simple reflections until a simple root is reached
                let mut c = r.coeffs.clone();
                while c.iter().sum::<i64>() > 1 {
                    let i = (0..rs.rank())
                        .find(|&i| {
                            let s = &rs.positive_roots()[rs.find_root(&unit(rs.rank(), i)).unwrap().0];
                            rs.pair_coeffs_with_coroot(&c, s) > 0
                        })
                        .unwrap();
                    let s = &rs.positive_roots()[rs.find_root(&unit(rs.rank(), i)).unwrap().0];
                    c = rs.reflect(s, &c);
                }
                let simple = &rs.positive_roots()[rs.find_root(&c).unwrap().0];
                assert_eq!(simple.orbit, r.orbit);
            }
        }
    }

    fn unit(n: usize, i: usize) -> Vec<i64> {
        (0..n).map(|j| i64::from(i == j)).collect()
    }

    #[test]
    fn root_pairings_match_reflection_formula() {
        for rs in all_supported() {
            let m = rs.root_pairings();
            for (a, ra) in rs.positive_roots().iter().enumerate() {
                for (b, rb) in rs.positive_roots().iter().enumerate() {
                    assert_eq!(m[a][b], rs.pair_coeffs_with_coroot(&ra.coeffs, rb));
                }
            }
        }
    }

    #[test]
    fn reflection_closure() {
        for rs in all_supported() {
            for a in rs.positive_roots() {
                for b in rs.positive_roots() {
                    assert!(rs.find_root(&rs.reflect(a, &b.coeffs)).is_some());
                }
            }
        }
    }

    #[test]
    fn rank2_subsystems_small_cases() {
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        assert_eq!(a2.rank2_subsystems(), [vec![0, 1, 2]]);
        let g2 = RootSystem::build(Family::G, 2).unwrap();
        assert_eq!(g2.rank2_subsystems().len(), 1);
        assert_eq!(g2.rank2_subsystems()[0].len(), 6);
    }

    #[test]
    fn rank2_subsystems_match_brute_force() {
        for (f, n) in [(Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::F, 4)] {
            let rs = RootSystem::build(f, n).unwrap();
            let subs = rs.rank2_subsystems();
            let amb: Vec<&Vec<Q>> = rs.positive_roots().iter().map(|r| &r.ambient).collect();
            // independent oracle: Gram-determinant span test in ambient coordinates
            let in_span = |a: &Vec<Q>, b: &Vec<Q>, c: &Vec<Q>| {
                let v = [a, b, c];
                let g = |i: usize, j: usize| dot(v[i], v[j]);
                let det3 = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
                    - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                    + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
                det3.is_zero()
            };
            let mut expected = BTreeSet::new();
            for i in 0..amb.len() {
                for j in i + 1..amb.len() {
                    let s: Vec<usize> = (0..amb.len()).filter(|&l| in_span(amb[i], amb[j], amb[l])).collect();
                    expected.insert(s);
                }
            }
            assert_eq!(subs, expected.into_iter().collect::<Vec<_>>(), "{}", rs.label());
            let sizes: BTreeSet<usize> = subs.iter().map(Vec::len).collect();
            if f == Family::B {
                assert_eq!(sizes, BTreeSet::from([2, 3, 4]));
            }
        }
    }

    #[test]
    fn sum_of_positive_roots_on_coweights() {
        for rs in all_supported() {
            for w in rs.fundamental_coweights() {
                let s: Q = rs.positive_roots().iter().map(|r| r.eval(w)).fold(Q::zero(), |a, b| a + b);
                assert!(s.is_integer() && s > Q::zero());
            }
        }
    }

    #[test]
    fn de_exponent_lists() {
        let rs = RootSystem::build(Family::D, 6).unwrap();
        assert_eq!(rs.de_exponents(), Some((8, vec![0, 2, 4, 4, 4, 6, 8])));
        for n in 6..=8 {
            let rs = RootSystem::build(Family::E, n).unwrap();
            let (h, m) = rs.de_exponents().unwrap();
            assert_eq!(m.len(), n + 1);
            assert_eq!(*m.last().unwrap(), h);
        }
        assert!(RootSystem::build(Family::B, 3).unwrap().de_exponents().is_none());
    }
}
