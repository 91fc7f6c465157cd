//! Exact scalar fields: the rationals and the Gaussian rationals.
//!
//! Everything downstream (echelon forms, subspace lattices, fan data) is
//! computed over one of these two fields, selected through the [`Scalar`]
//! trait. No floating point enters any exact check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational number.
pub type Rat = BigRational;

/// Field operations needed by the generic linear algebra.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn neg(&self) -> Self;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Element of the Gaussian rationals Q(i).
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct Gauss {
    pub re: Rat,
    pub im: Rat,
}

impl Gauss {
    pub fn new(re: Rat, im: Rat) -> Self {
        Gauss { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        Gauss {
            re,
            im: Zero::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Gauss::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn conj(&self) -> Self {
        Gauss {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    /// |z|^2 as a rational.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Scalar for Gauss {
    fn zero() -> Self {
        Gauss::default()
    }
    fn one() -> Self {
        Gauss::from_rat(One::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, other: &Self) -> Self {
        Gauss {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Gauss {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Gauss {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let n = self.norm_sq();
        Some(Gauss {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }
    fn neg(&self) -> Self {
        Gauss {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", format_rat(&self.re))
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}i", format_rat(&self.im))
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", format_rat(&self.re), format_rat(&(-&self.im)))
        } else {
            write!(f, "{}+{}i", format_rat(&self.re), format_rat(&self.im))
        }
    }
}

/// Canonical text form of a rational: "p" or "p/q", ASCII minus.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `RAT ::= '-'? digits ('/' digits)?`. A leading U+2212 minus is
/// tolerated on input.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim().replace('\u{2212}', "-");
    let (num_str, den_str) = match s.split_once('/') {
        Some((a, b)) => (a.to_string(), Some(b.to_string())),
        None => (s.clone(), None),
    };
    let numer = BigInt::from_str(num_str.trim())
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let denom = match den_str {
        Some(d) => BigInt::from_str(d.trim())
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        None => One::one(),
    };
    if Zero::is_zero(&denom) {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(numer, denom))
}

/// Parse `GAUSS ::= RAT | RAT ('+'|'-') RAT 'i' | RAT 'i'`.
pub fn parse_gauss(s: &str) -> Result<Gauss, Error> {
    let s = s.trim().replace('\u{2212}', "-");
    let body = s.as_str();
    if let Some(stripped) = body.strip_suffix('i') {
        // Split a trailing imaginary part from an optional real part. Scan for
        // a '+'/'-' that is not the leading sign and not inside "p/q".
        let mut split_at = None;
        for (idx, ch) in stripped.char_indices().skip(1) {
            if ch == '+' || ch == '-' {
                split_at = Some(idx);
            }
        }
        match split_at {
            Some(idx) => {
                let (re_part, im_part) = stripped.split_at(idx);
                let sign = if im_part.starts_with('-') { -1 } else { 1 };
                let im_body = &im_part[1..];
                let im_mag = if im_body.is_empty() {
                    rat_i(1)
                } else {
                    parse_rat(im_body)?
                };
                let im = if sign < 0 { -im_mag } else { im_mag };
                Ok(Gauss::new(parse_rat(re_part)?, im))
            }
            None => {
                let im = if stripped.is_empty() || stripped == "-" {
                    if stripped == "-" {
                        rat_i(-1)
                    } else {
                        rat_i(1)
                    }
                } else {
                    parse_rat(stripped)?
                };
                Ok(Gauss::new(Zero::zero(), im))
            }
        }
    } else {
        Ok(Gauss::from_rat(parse_rat(body)?))
    }
}

/// Numeric view of an exact scalar, used only in sampled verification.
pub trait ToC64 {
    fn to_c64(&self) -> num_complex::Complex64;
}

impl ToC64 for Rat {
    fn to_c64(&self) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        num_complex::Complex64::new(self.to_f64().expect("rational fits in f64"), 0.0)
    }
}

impl ToC64 for Gauss {
    fn to_c64(&self) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        num_complex::Complex64::new(
            self.re.to_f64().expect("rational fits in f64"),
            self.im.to_f64().expect("rational fits in f64"),
        )
    }
}

/// Convenience: rational from an integer pair.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience: rational from an integer.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["3", "-3", "1/2", "-7/3", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(parse_rat("\u{2212}5").unwrap(), rat_i(-5));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn gauss_grammar() {
        assert_eq!(parse_gauss("2").unwrap(), Gauss::from_int(2));
        assert_eq!(
            parse_gauss("1/2i").unwrap(),
            Gauss::new(rat_i(0), rat(1, 2))
        );
        assert_eq!(
            parse_gauss("1+2i").unwrap(),
            Gauss::new(rat_i(1), rat_i(2))
        );
        assert_eq!(
            parse_gauss("-1/3-2/5i").unwrap(),
            Gauss::new(rat(-1, 3), rat(-2, 5))
        );
        assert_eq!(parse_gauss("i").unwrap(), Gauss::new(rat_i(0), rat_i(1)));
        assert_eq!(parse_gauss("-i").unwrap(), Gauss::new(rat_i(0), rat_i(-1)));
    }

    #[test]
    fn gauss_field_ops() {
        let z = Gauss::new(rat_i(3), rat_i(4));
        let w = Scalar::mul(&z, &z.inv().unwrap());
        assert_eq!(w, Scalar::one());
        assert_eq!(z.conj().norm_sq(), z.norm_sq());
    }
}
