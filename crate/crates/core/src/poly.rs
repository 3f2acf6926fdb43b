//! Exact Laurent polynomials in one variable and Gaussian integers.
//!
//! [`LaurentPoly`] stores only nonzero coefficients, keyed by exponent, so
//! two polynomials are equal exactly when their term maps are equal. The
//! variable is conventionally the Kauffman variable `A`; the Jones polynomial
//! reuses the type with the variable rendered as `q`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// `δ = −A² − A⁻²`, the value of an extra state circle.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Adds `c·A^e` in place, keeping the canonical form.
    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient_at(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Substitutes `A ↦ A^k` (so `k = −1` mirrors).
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution A -> A^0 collapses the polynomial");
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Divides every exponent by `d`, failing if some exponent is not a
    /// multiple of `d`. Used to rewrite a polynomial in `A^d`.
    pub fn compress_exponents(&self, d: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e.rem_euclid(d) != 0 {
                return Err(Error::Precondition(format!(
                    "exponent {e} is not a multiple of {d}"
                )));
            }
            out.add_term(e / d, c.clone());
        }
        Ok(out)
    }

    /// If `self` is `±A^k`, returns `(±1, k)`.
    pub fn as_unit_monomial(&self) -> Option<(i8, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((1, *e))
        } else if (-c).is_one() {
            Some((-1, *e))
        } else {
            None
        }
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            let (s, k) = self.as_unit_monomial().ok_or(Error::NonUnitInverse)?;
            let n = exp.unsigned_abs();
            let sign = if s < 0 && n % 2 == 1 { -1 } else { 1 };
            return Ok(Self::monomial(sign, -k * n as i64));
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut n = exp as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Evaluates exactly at an integer value of `A^step`; every exponent must
    /// be a multiple of `step`. Negative powers give rational values.
    pub fn eval_rational(&self, step: i64, at: &BigInt) -> Result<num_rational::BigRational> {
        use num_rational::BigRational;
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            if e.rem_euclid(step) != 0 {
                return Err(Error::Precondition(format!(
                    "exponent {e} is not a multiple of {step}"
                )));
            }
            let k = e / step;
            let base = BigRational::from_integer(at.clone());
            let v = if k >= 0 {
                num_traits::pow::Pow::pow(&base, k as u64)
            } else {
                if at.is_zero() {
                    return Err(Error::Precondition("negative power at zero".to_string()));
                }
                num_traits::pow::Pow::pow(&base.recip(), k.unsigned_abs())
            };
            acc += v * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Writes `p = A^parity · q(A²)` and evaluates `q` at `A² := z` exactly.
    ///
    /// Negative powers of `z` are only defined when `z` is a Gaussian unit.
    pub fn factor_and_eval_a2(&self, z: &GaussianInt) -> Result<(u8, GaussianInt)> {
        let Some(first) = self.min_exponent() else {
            return Ok((0, GaussianInt::zero()));
        };
        let parity = first.rem_euclid(2);
        let offending: Vec<i64> = self
            .terms
            .keys()
            .filter(|e| e.rem_euclid(2) != parity)
            .copied()
            .collect();
        if !offending.is_empty() {
            return Err(Error::MixedParity(offending));
        }
        let mut acc = GaussianInt::zero();
        for (e, c) in &self.terms {
            let k = (e - parity) / 2;
            let zk = z.pow(k)?;
            acc = acc + zk.scale(c);
        }
        Ok((parity as u8, acc))
    }

    /// Renders with the given variable name, ascending exponents:
    /// `-A^-7 + A^-3 + A^5`.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if *e == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(var);
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out
    }

    /// Inverse of [`render`](Self::render). Also accepts `A` for `A^1`,
    /// juxtaposition `3A^2`, and arbitrary whitespace.
    pub fn parse(text: &str, var: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".to_string()));
        }
        if s == "0" {
            return Ok(Self::zero());
        }
        // Split into signed terms; a sign directly after '^' belongs to the exponent.
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        pieces.push(&s[start..]);
        let mut out = Self::zero();
        for piece in pieces {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            let bad = || Error::Parse(format!("bad term {piece:?}"));
            let (coeff, exp) = match body.find(var) {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let cpart = body[..pos].trim_end_matches('*');
                    let coeff = if cpart.is_empty() {
                        BigInt::one()
                    } else {
                        cpart.parse::<BigInt>().map_err(|_| bad())?
                    };
                    let rest = &body[pos + var.len()..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i64>()
                            .map_err(|_| bad())?
                    };
                    (coeff, exp)
                }
            };
            out.add_term(exp, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("A"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render("A"))
    }
}

impl core::str::FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, "A")
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// `re + im·i` with arbitrary-precision parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            re: &self.re * c,
            im: &self.im * c,
        }
    }

    /// Integer power; negative exponents only for units (`u⁻¹ = ū`).
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 {
            if !self.is_unit() {
                return Err(Error::Precondition(format!(
                    "negative power of the non-unit {self}"
                )));
            }
            self.conj()
        } else {
            self.clone()
        };
        let mut n = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// `|z|` when the norm is a perfect square.
    pub fn exact_abs(&self) -> Option<BigInt> {
        let n = self.norm();
        let r = n.sqrt();
        (&r * &r == n).then_some(r)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Mul<&GaussianInt> for &GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        &self * &rhs
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Binomial coefficient with `C(n, k) = 0` outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc = acc.div_floor(&BigInt::from(i + 1));
    }
    acc
}
