//! Small dense matrices over exact rings, plus rational polynomial helpers.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{sqrt_exact, Q};

pub trait Ring:
    Clone + Zero + One + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// `x ⊗ y`: the endomorphism `w ↦ (y·w) x`.
    pub fn outer(x: &[T], y: &[T]) -> Self {
        Self::from_fn(x.len(), y.len(), |r, c| x[r].clone() * y[c].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|r| (0..self.cols).fold(T::zero(), |acc, c| acc + self[(r, c)].clone() * v[c].clone()))
            .collect()
    }

    /// `v ↦ vᵀ M`, i.e. the covector `v ∘ M`.
    pub fn apply_left(&self, v: &[T]) -> Vec<T> {
        (0..self.cols)
            .map(|c| (0..self.rows).fold(T::zero(), |acc, r| acc + v[r].clone() * self[(r, c)].clone()))
            .collect()
    }

    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(r, l)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(l, c)];
                    if !b.is_zero() {
                        out[(r, c)] = out[(r, c)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.matmul(o) - o.matmul(self)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        self.data.iter().enumerate().map(move |(i, v)| ((i / self.cols, i % self.cols), v))
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        (0..self.cols).map(|c| self[(r, c)].clone()).collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Ring> Add for Mat<T> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (a, b) in self.data.iter_mut().zip(o.data) {
            *a = a.clone() + b;
        }
        self
    }
}

impl<T: Ring> Sub for Mat<T> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for (a, b) in self.data.iter_mut().zip(o.data) {
            *a = a.clone() - b;
        }
        self
    }
}

impl<T: Ring> Neg for Mat<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|x| -x.clone())
    }
}

pub fn dot<T: Ring>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// Inverse of a rational matrix by Gauss-Jordan; `None` if singular.
pub fn inverse(m: &Mat<Q>) -> Option<Mat<Q>> {
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = Mat::<Q>::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
        if p != c {
            for j in 0..n {
                let (x, y) = (a[(p, j)].clone(), inv[(p, j)].clone());
                a[(p, j)] = a[(c, j)].clone();
                inv[(p, j)] = inv[(c, j)].clone();
                a[(c, j)] = x;
                inv[(c, j)] = y;
            }
        }
        let piv = a[(c, c)].clone();
        for j in 0..n {
            a[(c, j)] = &a[(c, j)] / &piv;
            inv[(c, j)] = &inv[(c, j)] / &piv;
        }
        for r in 0..n {
            if r == c || a[(r, c)].is_zero() {
                continue;
            }
            let f = a[(r, c)].clone();
            for j in 0..n {
                a[(r, j)] = &a[(r, j)] - &f * &a[(c, j)];
                inv[(r, j)] = &inv[(r, j)] - &f * &inv[(c, j)];
            }
        }
    }
    Some(inv)
}

/// Solves `m x = b` for square invertible `m`.
pub fn solve(m: &Mat<Q>, b: &[Q]) -> Option<Vec<Q>> {
    inverse(m).map(|inv| inv.apply(b))
}

/// Rational polynomial, coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(pub Vec<Q>);

impl QPoly {
    fn trimmed(mut v: Vec<Q>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Self(v)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    fn monic(&self) -> Self {
        match self.0.last() {
            Some(lead) => Self(self.0.iter().map(|c| c / lead).collect()),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::trimmed(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer((i as i64).into())).collect())
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let mut quo = vec![Q::zero(); self.0.len().saturating_sub(dd)];
        let lead = d.0[dd].clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lead;
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &f * c;
            }
            quo[shift] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Self::trimmed(quo), Self::trimmed(r))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while b.degree().is_some() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Distinct rational roots with multiplicity, provided the squarefree part has degree ≤ 2
    /// and splits over Q. `Err` carries a description otherwise.
    pub fn rational_roots(&self) -> Result<Vec<(Q, usize)>, String> {
        let g = self.gcd(&self.derivative());
        let sf = self.div_rem(&g).0.monic();
        let roots: Vec<Q> = match sf.degree() {
            None | Some(0) => vec![],
            Some(1) => vec![-sf.0[0].clone()],
            Some(2) => {
                let (c, b) = (&sf.0[0], &sf.0[1]);
                let disc = b * b - c * Q::from_integer(4.into());
                let s = sqrt_exact(&disc).ok_or_else(|| "irrational eigenvalues".to_string())?;
                let two = Q::from_integer(2.into());
                vec![(-b - &s) / &two, (-b + s) / two]
            }
            Some(d) => return Err(format!("{d} distinct eigenvalues")),
        };
        let mut out = Vec::new();
        for r in roots {
            let lin = QPoly(vec![-r.clone(), Q::one()]);
            let mut p = self.clone();
            let mut mult = 0;
            loop {
                let (quo, rem) = p.div_rem(&lin);
                if rem.degree().is_some() {
                    break;
                }
                mult += 1;
                p = quo;
            }
            out.push((r, mult));
        }
        Ok(out)
    }
}

/// Characteristic polynomial `det(x·I − m)` by Faddeev–LeVerrier.
pub fn charpoly(m: &Mat<Q>) -> QPoly {
    let n = m.rows;
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut am = Mat::<Q>::zeros(n, n);
    for k in 1..=n {
        let mut mk = am;
        for i in 0..n {
            mk[(i, i)] = &mk[(i, i)] + &coeffs[n + 1 - k];
        }
        am = m.matmul(&mk);
        let tr = (0..n).fold(Q::zero(), |acc, i| acc + &am[(i, i)]);
        coeffs[n - k] = -tr / Q::from_integer((k as i64).into());
    }
    QPoly::trimmed(coeffs)
}
