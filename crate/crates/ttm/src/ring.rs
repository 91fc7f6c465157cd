//! Exact arithmetic in the coefficient ring R = C x Z, the bracket on R^n,
//! the two partial orders, and numeric evaluation of g^mu.
//!
//! An element mu = (b + c i, v) is stored with exact rational b, c and exact
//! integer v. The product is the noncommutative one
//! `mu1 mu2 = (b1 b2 + i (b1 c2 + c1 v2), v1 v2)`, matching the 2x2 matrix
//! picture `[b 0; c v]` up to order reversal (the bijection to matrices is an
//! anti-homomorphism of multiplication; see `exponent_law` in the tests for
//! the numerically validated convention).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rat, parse_rat, rat_i, Rat};

/// Element of R = C x Z: exact rational real/imaginary parts plus an integer
/// winding exponent.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct RingElem {
    pub b: Rat,
    pub c: Rat,
    pub v: BigInt,
}

impl RingElem {
    pub fn new(b: Rat, c: Rat, v: BigInt) -> Self {
        RingElem { b, c, v }
    }

    /// (b + c i, v) from small integers, c = 0 unless given.
    pub fn from_ints(b: i64, c: i64, v: i64) -> Self {
        RingElem::new(rat_i(b), rat_i(c), BigInt::from(v))
    }

    /// The additive identity (0 + 0i, 0).
    pub fn zero() -> Self {
        RingElem::new(Rat::zero(), Rat::zero(), BigInt::zero())
    }

    /// The multiplicative identity 1 = (1 + 0i, 1).
    pub fn one() -> Self {
        RingElem::new(Rat::one(), Rat::zero(), BigInt::one())
    }

    /// The diagonal element (v + 0i, v).
    pub fn diag(v: i64) -> Self {
        RingElem::new(rat_i(v), Rat::zero(), BigInt::from(v))
    }

    pub fn is_zero(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_one() && self.c.is_zero() && self.v.is_one()
    }

    /// Diagonal elements (v, v) are the holomorphic locus.
    pub fn is_diag(&self) -> bool {
        self.c.is_zero() && self.b.denom().is_one() && *self.b.numer() == self.v
    }

    /// mu >= 0 in the continuous order: b > 0, or b = c = v = 0.
    pub fn geq_c_zero(&self) -> bool {
        self.b.is_positive() || self.is_zero()
    }

    /// mu >= 0 in the smooth order: c = 0, b a nonnegative integer, and both
    /// b + v and b - v nonnegative even integers.
    pub fn geq_s_zero(&self) -> bool {
        if !self.c.is_zero() || !self.b.denom().is_one() {
            return false;
        }
        let b = self.b.numer();
        if b.is_negative() {
            return false;
        }
        let plus = b + &self.v;
        let minus = b - &self.v;
        !plus.is_negative() && !minus.is_negative() && plus.is_even() && minus.is_even()
    }

    /// Binary continuous order: self >= other.
    pub fn geq_c(&self, other: &RingElem) -> bool {
        (self.clone() - other.clone()).geq_c_zero()
    }

    /// Binary smooth order: self >= other.
    pub fn geq_s(&self, other: &RingElem) -> bool {
        (self.clone() - other.clone()).geq_s_zero()
    }

    pub fn geq(&self, other: &RingElem, flavor: OrderFlavor) -> bool {
        match flavor {
            OrderFlavor::Continuous => self.geq_c(other),
            OrderFlavor::Smooth => self.geq_s(other),
        }
    }

    /// Numeric g^mu = |g|^{b+ci} (g/|g|)^v for nonzero g.
    pub fn power_eval(&self, g: Complex64) -> Result<Complex64> {
        if g.norm() == 0.0 {
            return Err(Error::Domain("g^mu is undefined at g = 0".into()));
        }
        let ln_r = g.norm().ln();
        let bc = Complex64::new(rat_f64(&self.b), rat_f64(&self.c));
        let radial = (bc * ln_r).exp();
        let angular = Complex64::from_polar(
            1.0,
            g.arg() * self.v.to_f64().expect("winding exponent fits in f64"),
        );
        Ok(radial * angular)
    }
}

/// Which partial order a statement is taken in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderFlavor {
    Continuous,
    Smooth,
}

impl fmt::Display for OrderFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderFlavor::Continuous => write!(f, "continuous"),
            OrderFlavor::Smooth => write!(f, "smooth"),
        }
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        RingElem::new(self.b + rhs.b, self.c + rhs.c, self.v + rhs.v)
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        RingElem::new(self.b - rhs.b, self.c - rhs.c, self.v - rhs.v)
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::new(-self.b, -self.c, -self.v)
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    /// mu1 mu2 = (b1 b2 + i (b1 c2 + c1 v2), v1 v2). Not commutative.
    fn mul(self, rhs: RingElem) -> RingElem {
        let c = &self.b * &rhs.c + &self.c * Rat::from_integer(rhs.v.clone());
        RingElem::new(self.b * rhs.b, c, self.v * rhs.v)
    }
}

impl<'a> Mul<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        self.clone() * rhs.clone()
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}+{}i,{})",
            format_rat(&self.b),
            format_rat(&self.c),
            self.v
        )
    }
}

impl Serialize for RingElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RingElem", 3)?;
        st.serialize_field("b", &format_rat(&self.b))?;
        st.serialize_field("c", &format_rat(&self.c))?;
        st.serialize_field(
            "v",
            &self
                .v
                .to_i64()
                .ok_or_else(|| serde::ser::Error::custom("winding exponent exceeds i64"))?,
        )?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RingElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            b: String,
            c: String,
            v: i64,
        }
        let raw = Raw::deserialize(d)?;
        let b = parse_rat(&raw.b).map_err(serde::de::Error::custom)?;
        let c = parse_rat(&raw.c).map_err(serde::de::Error::custom)?;
        Ok(RingElem::new(b, c, BigInt::from(raw.v)))
    }
}

/// Element of R^n.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RVector {
    pub components: Vec<RingElem>,
}

impl RVector {
    pub fn new(components: Vec<RingElem>) -> Self {
        RVector { components }
    }

    pub fn zero(n: usize) -> Self {
        RVector::new(vec![RingElem::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RingElem::is_zero)
    }

    /// The bracket <alpha, beta> = sum_k alpha^k beta^k.
    pub fn bracket(&self, other: &RVector) -> Result<RingElem> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "bracket of vectors of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        let mut acc = RingElem::zero();
        for (a, b) in self.components.iter().zip(&other.components) {
            acc = acc + a * b;
        }
        Ok(acc)
    }

    /// Left scalar multiple: (mu alpha)^k = mu * alpha^k.
    pub fn scale_left(&self, mu: &RingElem) -> RVector {
        RVector::new(self.components.iter().map(|a| mu * a).collect())
    }

    pub fn add(&self, other: &RVector) -> RVector {
        RVector::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &RVector) -> RVector {
        RVector::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    /// Every component lies in diag(Z).
    pub fn is_diag(&self) -> bool {
        self.components.iter().all(RingElem::is_diag)
    }

    /// Flatten to (b_1..b_n, c_1..c_n, v_1..v_n) rational coordinates.
    pub fn flatten(&self) -> Vec<Rat> {
        let n = self.len();
        let mut out = Vec::with_capacity(3 * n);
        out.extend(self.components.iter().map(|e| e.b.clone()));
        out.extend(self.components.iter().map(|e| e.c.clone()));
        out.extend(
            self.components
                .iter()
                .map(|e| Rat::from_integer(e.v.clone())),
        );
        out
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Exact rational to f64, used only in numeric (sampled) verification.
pub fn rat_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational fits in f64")
}
