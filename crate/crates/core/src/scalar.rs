//! Coefficient ring `Q[q^(±1/2), gam^(±1/2)]`.
//!
//! A [`Scalar`] is a finite sum of terms `c * q^(a/2) * gam^(b/2)` with
//! `c` a big rational. Exponents are stored as integers counting half steps,
//! so `q` itself is the key `(2, 0)` and `gam^(1/2)` is `(0, 1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact element of the two-variable Laurent ring. No stored coefficient is zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<(i64, i64), Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(int(n))
    }

    pub fn from_rational(c: Rational) -> Self {
        Scalar::monomial(c, 0, 0)
    }

    /// `c * q^(q_half/2) * gam^(gamma_half/2)`.
    pub fn monomial(c: Rational, q_half: i64, gamma_half: i64) -> Self {
        let mut s = Scalar::zero();
        s.add_term(q_half, gamma_half, c);
        s
    }

    /// `q^n` for an integer power `n`.
    pub fn q_pow(n: i64) -> Self {
        Scalar::monomial(Rational::one(), 2 * n, 0)
    }

    /// `gam^n` for an integer power `n`.
    pub fn gamma_pow(n: i64) -> Self {
        Scalar::monomial(Rational::one(), 0, 2 * n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: ascending `(q_half, gamma_half)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Rational)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, q_half: i64, gamma_half: i64) -> Rational {
        self.terms
            .get(&(q_half, gamma_half))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, q_half: i64, gamma_half: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (q_half, gamma_half);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiply by `q^(q_half/2) * gam^(gamma_half/2)`.
    pub fn shift(&self, q_half: i64, gamma_half: i64) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + q_half, b + gamma_half), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Set `gam = 1`.
    pub fn at_gamma_one(&self) -> Scalar {
        let mut out = Scalar::zero();
        for (&(a, _), c) in &self.terms {
            out.add_term(a, 0, c.clone());
        }
        out
    }

    /// Set `q = 1` (and hence `q^(1/2) = 1`), keeping `gam`.
    pub fn at_q_one(&self) -> Scalar {
        let mut out = Scalar::zero();
        for (&(_, b), c) in &self.terms {
            out.add_term(0, b, c.clone());
        }
        out
    }

    /// Evaluate at a rational `q` with `gam = 1`. Fails on half-integer powers of `q`.
    pub fn eval_at(&self, q: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (&(a, _), c) in &self.terms {
            if a % 2 != 0 {
                return Err(Error::HalfIntegerPower(a));
            }
            let p = a / 2;
            let qp = if p >= 0 {
                num_traits::pow(q.clone(), p as usize)
            } else {
                if q.is_zero() {
                    return Err(Error::domain("negative power of q evaluated at 0"));
                }
                num_traits::pow(q.recip(), (-p) as usize)
            };
            acc += c * qp;
        }
        Ok(acc)
    }

    /// Exact quotient `self / d` in the Laurent ring.
    ///
    /// `d` must carry a single power of `gam`; the quotient must be a Laurent
    /// polynomial, otherwise [`Error::InexactDivision`] is returned.
    pub fn div_exact(&self, d: &Scalar) -> Result<Scalar> {
        if d.is_zero() {
            return Err(Error::domain("division by zero scalar"));
        }
        let d_gamma = d.terms.keys().next().unwrap().1;
        if d.terms.keys().any(|&(_, b)| b != d_gamma) {
            return Err(Error::domain(
                "divisor must be homogeneous in gam for exact division",
            ));
        }
        // divisor as polynomial in x = q^(1/2) with nonzero constant term
        let d_low = d.terms.keys().map(|&(a, _)| a).min().unwrap();
        let divisor: BTreeMap<i64, Rational> = d
            .terms
            .iter()
            .map(|(&(a, _), c)| (a - d_low, c.clone()))
            .collect();
        let deg = *divisor.keys().next_back().unwrap();
        let lead = divisor[&deg].clone();

        let mut slices: BTreeMap<i64, BTreeMap<i64, Rational>> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            slices.entry(b).or_default().insert(a, c.clone());
        }

        let mut out = Scalar::zero();
        for (b, mut rem) in slices {
            let floor = *rem.keys().next().unwrap();
            while let Some((&top, c)) = rem.iter().next_back() {
                let e = top - deg;
                if e < floor {
                    return Err(Error::InexactDivision);
                }
                let qc = c / &lead;
                for (&k, dc) in &divisor {
                    let key = e + k;
                    let v = rem.remove(&key).unwrap_or_else(Rational::zero) - &qc * dc;
                    if !v.is_zero() {
                        rem.insert(key, v);
                    }
                }
                out.add_term(e - d_low, b - d_gamma, qc);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| json!({"qHalf": a, "gammaHalf": b, "coeff": c.to_string()}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Scalar> {
        let bad = || Error::domain("malformed scalar JSON");
        let mut s = Scalar::zero();
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(bad)? {
            let a = t.get("qHalf").and_then(Value::as_i64).ok_or_else(bad)?;
            let b = t.get("gammaHalf").and_then(Value::as_i64).ok_or_else(bad)?;
            let c: Rational = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?;
            s.add_term(a, b, c);
        }
        Ok(s)
    }
}

/// `q^(half/2)` written with the exponent reduced to an integer when possible.
pub(crate) fn fmt_q_exp(half: i64) -> String {
    if half % 2 == 0 {
        format!("q^({})", half / 2)
    } else {
        format!("q^({}/2)", half)
    }
}

pub(crate) fn fmt_gamma_exp(half: i64) -> String {
    if half % 2 == 0 {
        format!("gam^({})", half / 2)
    } else {
        format!("gam^({}/2)", half)
    }
}

/// Canonical text: `c*q^(a/2)*gam^(b/2)` terms in ascending `(a, b)`, unit
/// factors suppressed, exponents and coefficients reduced.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut parts = Vec::new();
            if !abs.is_one() || (a == 0 && b == 0) {
                parts.push(abs.to_string());
            }
            if a != 0 {
                parts.push(fmt_q_exp(a));
            }
            if b != 0 {
                parts.push(fmt_gamma_exp(b));
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, -c.clone());
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(c: Rational) -> Self {
        Scalar::from_rational(c)
    }
}

/// `q - q^(-1)`.
pub fn q_minus_qinv() -> Scalar {
    Scalar::q_pow(1) - Scalar::q_pow(-1)
}

/// Quantum integer `[n] = (q^n - q^-n)/(q - q^-1)`, expanded as
/// `q^(n-1) + q^(n-3) + ... + q^(1-n)`.
pub fn q_integer(n: i64) -> Scalar {
    let mut s = Scalar::zero();
    let m = n.abs();
    let sign = if n < 0 { -1 } else { 1 };
    for i in 0..m {
        s.add_term(2 * (m - 1 - 2 * i), 0, int(sign));
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GVariant {
    /// Coefficients of `g_q(t)`, the expansion of `(q^2 t - 1)/(t - q^2)`.
    Plain,
    /// Coefficients of `g_{q^-1}(t) = g_q(t)^-1`.
    Bar,
}

/// `p`-th Taylor coefficient of the g-series.
pub fn g_coeff(p: i64, variant: GVariant) -> Result<Scalar> {
    if p < 0 {
        return Err(Error::NegativeIndex(p));
    }
    let s = match (variant, p) {
        (GVariant::Plain, 0) => Scalar::q_pow(-2),
        (GVariant::Bar, 0) => Scalar::q_pow(2),
        (GVariant::Plain, _) => &(Scalar::one() - Scalar::q_pow(4)) * &Scalar::q_pow(-2 * p - 2),
        (GVariant::Bar, _) => &(Scalar::one() - Scalar::q_pow(-4)) * &Scalar::q_pow(2 * p + 2),
    };
    Ok(s)
}

/// `g(p)` for `p >= 0`; panics on negative `p`, used where `p` is a loop counter.
pub(crate) fn g(p: i64) -> Scalar {
    g_coeff(p, GVariant::Plain).expect("non-negative index")
}

pub(crate) fn g_bar(p: i64) -> Scalar {
    g_coeff(p, GVariant::Bar).expect("non-negative index")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::q_pow(n)
    }

    #[test]
    fn q_integer_small_values() {
        assert!(q_integer(0).is_zero());
        assert_eq!(q_integer(1), Scalar::one());
        assert_eq!(q_integer(3), q(2) + Scalar::one() + q(-2));
        assert_eq!(q_integer(-3), -q_integer(3));
    }

    #[test]
    fn q_integer_times_t_is_difference_of_powers() {
        for n in -8..=8 {
            assert_eq!(&q_integer(n) * &q_minus_qinv(), q(n) - q(-n), "n = {n}");
        }
    }

    #[test]
    fn g_coefficients() {
        assert_eq!(g_coeff(0, GVariant::Plain).unwrap(), q(-2));
        assert_eq!(
            g_coeff(1, GVariant::Plain).unwrap(),
            &(Scalar::one() - q(4)) * &q(-4)
        );
        assert_eq!(g_coeff(1, GVariant::Bar).unwrap(), q(4) - Scalar::one());
        assert_eq!(g_coeff(-1, GVariant::Bar), Err(Error::NegativeIndex(-1)));
    }

    #[test]
    fn rendering_is_canonical() {
        let s = q(-2) - Scalar::one();
        assert_eq!(s.to_string(), "q^(-2) - 1");
        let t = Scalar::monomial(rat(-3, 6), 1, 2) + Scalar::monomial(int(2), 1, -1);
        assert_eq!(t.to_string(), "2*q^(1/2)*gam^(-1/2) - 1/2*q^(1/2)*gam^(1)");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((-Scalar::one()).to_string(), "-1");
    }

    #[test]
    fn exact_division() {
        let t = q_minus_qinv();
        let num = q(3) - q(-3);
        assert_eq!(num.div_exact(&t).unwrap(), q_integer(3));
        assert_eq!(
            (Scalar::one() - q(4)).div_exact(&t).unwrap(),
            -(&q(2) * &q_integer(2))
        );
        assert_eq!(Scalar::one().div_exact(&t), Err(Error::InexactDivision));
        let with_gamma = &(q(2) - q(-2)) * &Scalar::gamma_pow(3);
        assert_eq!(
            with_gamma.div_exact(&t).unwrap(),
            &(q(1) + q(-1)) * &Scalar::gamma_pow(3)
        );
    }

    #[test]
    fn evaluation() {
        let s = q(2) + q(-1);
        assert_eq!(s.eval_at(&rat(7, 5)).unwrap(), rat(49, 25) + rat(5, 7));
        assert_eq!(
            Scalar::monomial(int(1), 1, 0).eval_at(&rat(7, 5)),
            Err(Error::HalfIntegerPower(1))
        );
    }

    #[test]
    fn json_round_trip() {
        let s = Scalar::monomial(rat(3, 4), -3, 2) + q(5);
        assert_eq!(Scalar::from_json(&s.to_json()).unwrap(), s);
    }
}
