//! Sparse Laurent polynomials in one variable `t` with integer coefficients.
//!
//! A polynomial carries a `modulus`: `0` means the ordinary ring
//! `Z[t, t^-1]`, while `m >= 1` means `Z[t]/(t^m - 1)` and every exponent is
//! stored as its residue in `0..m`. Mixing moduli is always an error, never a
//! silent coercion. Zero coefficients are never stored, so structural
//! equality is semantic equality.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Error raised by binary operations on polynomials from different rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
}

/// Laurent polynomial over the integers, optionally with exponents modulo `m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    modulus: u32,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial of the given ring.
    pub fn zero(modulus: u32) -> Self {
        LaurentPoly {
            modulus,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one(modulus: u32) -> Self {
        Self::monomial(1, 0, modulus)
    }

    /// `coeff * t^exp`, already reduced; a zero coefficient gives zero.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64, modulus: u32) -> Self {
        let mut p = Self::zero(modulus);
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, accumulating
    /// duplicates and dropping anything that cancels.
    pub fn from_terms<I, C>(modulus: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(modulus);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `t^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        let e = self.reduce_exp(exp);
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn reduce_exp(&self, exp: i64) -> i64 {
        if self.modulus == 0 {
            exp
        } else {
            exp.rem_euclid(self.modulus as i64)
        }
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let e = self.reduce_exp(exp);
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn check_modulus(&self, other: &Self) -> Result<(), LaurentError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(LaurentError::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_modulus(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_modulus(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_modulus(other)?;
        let mut out = Self::zero(self.modulus);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies by `t^k` (exponents wrap when a modulus is set).
    pub fn shift(&self, k: i64) -> Self {
        let mut out = Self::zero(self.modulus);
        for (e, c) in &self.terms {
            out.add_term(e + k, c.clone());
        }
        out
    }

    /// Substitutes `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        let mut out = Self::zero(self.modulus);
        for (e, c) in &self.terms {
            out.add_term(-e, c.clone());
        }
        out
    }

    /// Sum of coefficients, i.e. the evaluation at `t = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Sum of absolute values of the coefficients.
    pub fn coeff_abs_sum(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Re-reduces into `Z[t]/(t^m - 1)`; `m == 0` returns the polynomial
    /// unchanged.
    pub fn reduce(&self, m: u32) -> Self {
        if m == 0 {
            return self.clone();
        }
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    /// If `self == other * t^k` for some `k`, returns that `k` (the smallest
    /// non-negative one when a modulus is set). Two zeros are equivalent with
    /// `k = 0`.
    pub fn shift_equivalent(&self, other: &Self) -> Result<Option<i64>, LaurentError> {
        self.check_modulus(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(if self.is_zero() && other.is_zero() {
                Some(0)
            } else {
                None
            });
        }
        if self.modulus == 0 {
            let k = self.min_exp().unwrap() - other.min_exp().unwrap();
            return Ok(if *self == other.shift(k) {
                Some(k)
            } else {
                None
            });
        }
        for k in 0..self.modulus as i64 {
            if *self == other.shift(k) {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Coefficients of `t^0 .. t^(m-1)` as a dense vector; only defined when a
    /// modulus is set.
    pub fn dense_coeffs(&self) -> Vec<BigInt> {
        assert!(self.modulus >= 1, "dense_coeffs needs a modulus");
        let mut v = vec![BigInt::zero(); self.modulus as usize];
        for (e, c) in &self.terms {
            v[*e as usize] = c.clone();
        }
        v
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs)
            .expect("polynomial addition across moduli")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs)
            .expect("polynomial subtraction across moduli")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs)
            .expect("polynomial multiplication across moduli")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::zero(self.modulus).try_sub(self).unwrap()
    }
}

/// Serializes as `{"modulus": m, "terms": [[exp, coeff], ...]}` with terms in
/// ascending exponent order, matching the CLI's JSON schema.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(i64, i64)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let c = i64::try_from(c).expect("coefficient exceeds i64 in JSON output");
                (*e, c)
            })
            .collect();
        let mut s = serializer.serialize_struct("LaurentPoly", 2)?;
        s.serialize_field("modulus", &self.modulus)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let one = mag == BigInt::from(1);
            match (*e, one) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{}t", mag)?,
                (_, true) => write!(f, "t^{}", e)?,
                (_, false) => write!(f, "{}t^{}", mag, e)?,
            }
        }
        Ok(())
    }
}
