//! Exact numbers of the form `Σ a_k √k` with rational `a_k` and squarefree
//! integer `k`. A negative `k` stands for `i√|k|`, and `k = 1` is the
//! rational part.
//!
//! Enough arithmetic for character values of alternating groups, where every
//! value lies in some `ℚ(√D)`, and for orthogonality sums that mix them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    /// No zero coefficients are stored.
    terms: BTreeMap<i64, BigRational>,
}

/// Splits `k ≠ 0` as `s² · r` with `r` squarefree and carrying the sign.
fn squarefree_split(k: i64) -> (i64, i64) {
    debug_assert!(k != 0);
    let mut rem = k.unsigned_abs();
    let mut square = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p * p <= rem {
        let mut e = 0;
        while rem.is_multiple_of(p) {
            rem /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
        p += 1;
    }
    core *= rem;
    (
        square as i64,
        if k < 0 { -(core as i64) } else { core as i64 },
    )
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn one() -> Self {
        Surd::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut s = Surd::zero();
        s.add_term(1, r);
        s
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Surd::from_rational(BigRational::from_integer(n.into()))
    }

    /// `√d`, or `i√|d|` for negative `d`.
    pub fn sqrt(d: i64) -> Self {
        if d == 0 {
            return Surd::zero();
        }
        let (s, r) = squarefree_split(d);
        let mut out = Surd::zero();
        out.add_term(r, BigRational::from_integer(s.into()));
        out
    }

    /// `a + b√d`.
    pub fn quadratic(a: BigRational, b: BigRational, d: i64) -> Self {
        Surd::from_rational(a) + Surd::sqrt(d) * Surd::from_rational(b)
    }

    fn add_term(&mut self, k: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// The value if it is an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    pub fn rational_part(&self) -> BigRational {
        self.terms
            .get(&1)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The single irrational term `(b, d)` when the value is `a + b√d`.
    pub fn quadratic_parts(&self) -> Option<(BigRational, BigRational, i64)> {
        let mut irr = self.terms.iter().filter(|(&k, _)| k != 1);
        match (irr.next(), irr.next()) {
            (None, _) => Some((self.rational_part(), BigRational::zero(), 1)),
            (Some((&d, b)), None) => Some((self.rational_part(), b.clone(), d)),
            _ => None,
        }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Surd {
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, if k < 0 { -c.clone() } else { c.clone() }))
            .collect();
        Surd { terms }
    }

    /// Real and imaginary parts in floating point.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (&k, c) in &self.terms {
            let v = c.to_f64().unwrap_or(f64::NAN) * (k.unsigned_abs() as f64).sqrt();
            if k < 0 {
                im += v;
            } else {
                re += v;
            }
        }
        (re, im)
    }

    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }

    pub fn pow(&self, e: u32) -> Surd {
        (0..e).fold(Surd::one(), |acc, _| acc * self)
    }
}

impl From<i64> for Surd {
    fn from(n: i64) -> Self {
        Surd::from_int(n)
    }
}

impl From<BigInt> for Surd {
    fn from(n: BigInt) -> Self {
        Surd::from_int(n)
    }
}

impl From<BigRational> for Surd {
    fn from(r: BigRational) -> Self {
        Surd::from_rational(r)
    }
}

impl Add<&Surd> for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(mut self, rhs: Surd) -> Surd {
        self += &rhs;
        self
    }
}

impl AddAssign<&Surd> for Surd {
    fn add_assign(&mut self, rhs: &Surd) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, c.clone());
        }
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

impl Sub<&Surd> for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        self + &(-rhs)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        &self - &rhs
    }
}

impl Mul<&Surd> for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                let c = ca * cb;
                if a == 1 {
                    out.add_term(b, c);
                } else if b == 1 {
                    out.add_term(a, c);
                } else {
                    // i√|a| · i√|b| = −√|ab|
                    let sign = if a < 0 && b < 0 { -1 } else { 1 };
                    let (s, r) = squarefree_split(a * b);
                    out.add_term(r, c * BigRational::from_integer((s * sign).into()));
                }
            }
        }
        out
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        &self * &rhs
    }
}

impl Mul<&Surd> for Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        &self * rhs
    }
}

impl Div<&BigRational> for &Surd {
    type Output = Surd;
    fn div(self, rhs: &BigRational) -> Surd {
        assert!(!rhs.is_zero(), "division by zero");
        Surd {
            terms: self.terms.iter().map(|(&k, c)| (k, c / rhs)).collect(),
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if !first {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k < 0 {
                    write!(f, "i*")?;
                }
                write!(f, "sqrt({})", k.unsigned_abs())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integers that fit in `i64` serialize as JSON numbers, other rationals
/// as strings. A quadratic value `a + b√D` becomes `{a, b, D}` with
/// `a`, `b` as rational strings.
impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if let Some(r) = self.as_rational() {
            if let Some(i) = r.is_integer().then(|| r.to_integer().to_i64()).flatten() {
                return serializer.serialize_i64(i);
            }
            return serializer.serialize_str(&r.to_string());
        }
        match self.quadratic_parts() {
            Some((a, b, d)) => {
                let mut st = serializer.serialize_struct("Surd", 3)?;
                st.serialize_field("a", &a.to_string())?;
                st.serialize_field("b", &b.to_string())?;
                st.serialize_field("D", &d)?;
                st.end()
            }
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn golden_ratio_identities() {
        let phi = Surd::quadratic(q(1, 2), q(1, 2), 5);
        let psi = Surd::quadratic(q(1, 2), q(-1, 2), 5);
        assert_eq!(&phi + &psi, Surd::one());
        assert_eq!(&phi * &psi, Surd::from_int(-1));
        assert_eq!(&phi * &phi, &phi + &Surd::one());
    }

    #[test]
    fn cube_roots_of_unity() {
        let w = Surd::quadratic(q(-1, 2), q(1, 2), -3);
        assert_eq!(w.pow(3), Surd::one());
        assert_eq!(w.conj(), w.pow(2));
        assert_eq!(&w * &w.conj(), Surd::one());
        assert!((w.abs_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn square_extraction() {
        assert_eq!(Surd::sqrt(12), Surd::sqrt(3) * Surd::from_int(2));
        assert_eq!(Surd::sqrt(-4), Surd::sqrt(-1) * Surd::from_int(2));
        assert_eq!(Surd::sqrt(-1) * Surd::sqrt(-1), Surd::from_int(-1));
        assert_eq!(
            Surd::sqrt(-3) * Surd::sqrt(-15),
            Surd::sqrt(5) * Surd::from_int(-3)
        );
        assert_eq!(
            Surd::sqrt(2) * Surd::sqrt(-6),
            Surd::sqrt(-3) * Surd::from_int(2)
        );
    }

    #[test]
    fn serialization() {
        assert_eq!(serde_json::to_string(&Surd::from_int(-3)).unwrap(), "-3");
        assert_eq!(
            serde_json::to_string(&Surd::from_rational(q(1, 2))).unwrap(),
            "\"1/2\""
        );
        let phi = Surd::quadratic(q(1, 2), q(1, 2), 5);
        assert_eq!(
            serde_json::to_string(&phi).unwrap(),
            r#"{"a":"1/2","b":"1/2","D":5}"#
        );
    }

    fn arb_surd() -> impl Strategy<Value = Surd> {
        prop::collection::vec((-3i64..4, -20i64..20, 1i64..6), 0..4).prop_map(|ts| {
            ts.into_iter().fold(Surd::zero(), |acc, (k, n, d)| {
                let k = [1, 2, 3, -1, -3, 5, -5][(k + 3) as usize];
                acc + Surd::sqrt(k) * Surd::from_rational(q(n, d))
            })
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_surd(), b in arb_surd(), c in arb_surd()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
        }

        #[test]
        fn float_image_is_a_homomorphism(a in arb_surd(), b in arb_surd()) {
            let (ar, ai) = a.to_complex();
            let (br, bi) = b.to_complex();
            let (pr, pi) = (&a * &b).to_complex();
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-6);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-6);
        }
    }
}
