//! Polynomials in the multiplicity parameters `(k, k')`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{fmt_q, parse_q, Q};

/// Sparse polynomial in `k, k'` with rational coefficients, keyed by exponent pairs.
///
/// The carrier for `a^κ`, residue matrices and eigenvalue forms. Most values have
/// degree at most two, but products (e.g. `σ²`) are kept exact at any degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl ScalarPoly {
    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn k() -> Self {
        Self::monomial(Q::one(), 1, 0)
    }

    pub fn kp() -> Self {
        Self::monomial(Q::one(), 0, 1)
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn eval(&self, k: &Q, kp: &Q) -> Q {
        self.terms
            .iter()
            .fold(Q::zero(), |acc, (&(i, j), c)| acc + c * pow(k, i) * pow(kp, j))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn to_linform(&self) -> Option<LinForm> {
        (self.degree().unwrap_or(0) <= 1).then(|| LinForm {
            c: self.coeff(0, 0),
            k: self.coeff(1, 0),
            kp: self.coeff(0, 1),
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: (u32, u32), c: Q) {
        let v = self.terms.entry(e).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }
}

fn pow(x: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

impl From<Q> for ScalarPoly {
    fn from(c: Q) -> Self {
        Self::constant(c)
    }
}

impl Zero for ScalarPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ScalarPoly {
    fn one() -> Self {
        Self::constant(Q::one())
    }
}

impl Add for ScalarPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl AddAssign for ScalarPoly {
    fn add_assign(&mut self, rhs: Self) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Sub for ScalarPoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ScalarPoly {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul for ScalarPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (&(i, j), c) in self.terms.iter().rev() {
            let var = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let p = |name: &str, e: u32| match e {
                        0 => String::new(),
                        1 => name.to_string(),
                        _ => format!("{name}^{e}"),
                    };
                    format!("{}{}", p("k", i), p("k'", j))
                }
            };
            parts.push((c.clone(), var));
        }
        write_terms(f, &parts)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, parts: &[(Q, String)]) -> fmt::Result {
    if parts.is_empty() {
        return write!(f, "0");
    }
    for (idx, (c, var)) in parts.iter().enumerate() {
        let neg = c < &Q::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        match (idx, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if var.is_empty() {
            write!(f, "{}", fmt_q(&a))?;
        } else if a.is_one() {
            write!(f, "{var}")?;
        } else {
            write!(f, "{}{var}", fmt_q(&a))?;
        }
    }
    Ok(())
}

/// Affine form `c + k·k + kp·k'`; residue eigenvalues and relative exponents live here.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinForm {
    pub c: Q,
    pub k: Q,
    pub kp: Q,
}

impl LinForm {
    pub fn new(c: Q, k: Q, kp: Q) -> Self {
        Self { c, k, kp }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(c, Q::zero(), Q::zero())
    }

    pub fn eval(&self, k: &Q, kp: &Q) -> Q {
        &self.c + &self.k * k + &self.kp * kp
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::new(&self.c * s, &self.k * s, &self.kp * s)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.k.is_zero() && self.kp.is_zero()
    }

    pub fn to_poly(&self) -> ScalarPoly {
        ScalarPoly::constant(self.c.clone())
            + ScalarPoly::monomial(self.k.clone(), 1, 0)
            + ScalarPoly::monomial(self.kp.clone(), 0, 1)
    }
}

impl Add for LinForm {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.c + r.c, self.k + r.k, self.kp + r.kp)
    }
}

impl Sub for LinForm {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.c - r.c, self.k - r.k, self.kp - r.kp)
    }
}

impl Neg for LinForm {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c, -self.k, -self.kp)
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(Q, String)> = [(&self.k, "k"), (&self.kp, "k'"), (&self.c, "")]
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| (c.clone(), v.to_string()))
            .collect();
        write_terms(f, &parts)
    }
}

#[derive(Serialize, Deserialize)]
struct LinFormRepr {
    #[serde(rename = "const")]
    c: String,
    k: String,
    kp: String,
}

impl Serialize for LinForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LinFormRepr { c: fmt_q(&self.c), k: fmt_q(&self.k), kp: fmt_q(&self.kp) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LinFormRepr::deserialize(d)?;
        let p = |s: &str| parse_q(s).map_err(serde::de::Error::custom);
        Ok(LinForm::new(p(&r.c)?, p(&r.k)?, p(&r.kp)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn ring_identities() {
        let k = ScalarPoly::k();
        let kp = ScalarPoly::kp();
        let lhs = (k.clone() + kp.clone()) * (k.clone() - kp.clone());
        let rhs = k.clone() * k.clone() - kp.clone() * kp.clone();
        assert_eq!(lhs, rhs);
        assert!((k.clone() - k).is_zero());
        assert_eq!(lhs.degree(), Some(2));
    }

    #[test]
    fn eval_matches_hand_value() {
        // (3/4)(k+3k')(k+k') at (1/4, 1/6)
        let p = (ScalarPoly::k() + ScalarPoly::kp().scale(&qi(3)))
            * (ScalarPoly::k() + ScalarPoly::kp());
        let v = p.scale(&q(3, 4)).eval(&q(1, 4), &q(1, 6));
        assert_eq!(v, q(3, 4) * q(3, 4) * q(5, 12));
    }

    #[test]
    fn linform_json_shape() {
        let l = LinForm::new(qi(0), qi(-12), qi(0));
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"const":"0","k":"-12","kp":"0"}"#);
        let back: LinForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn display() {
        assert_eq!(LinForm::new(q(-1, 2), qi(1), q(-3, 2)).to_string(), "k - 3/2k' - 1/2");
        assert_eq!(LinForm::default().to_string(), "0");
        let p = ScalarPoly::k() * ScalarPoly::kp() - ScalarPoly::constant(qi(2));
        assert_eq!(p.to_string(), "kk' - 2");
    }
}
