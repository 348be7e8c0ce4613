//! Truncated formal power series in `z^-1` over [`Scalar`].

use std::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::scalar::{g, q_integer, q_minus_qinv, rat, Scalar};

/// `sum_{j=0..=order} c_j z^-j`; anything beyond `order` is discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = Scalar::one();
        s
    }

    /// Builds a series from coefficients, padding with zeros or dropping the tail.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Scalar>) -> Self {
        let mut s = TruncatedSeries::zero(order);
        for (j, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[j] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &Scalar {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Scalar) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `exp(self)`, computed as `sum_j self^j / j!` through the truncation order.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut acc = TruncatedSeries::one(n);
        let mut power = TruncatedSeries::one(n);
        // self has no constant term, so self^j vanishes through order n once j > n
        for j in 1..=n {
            power = (&power * self).scale(&Scalar::from_rational(rat(1, j as i64)));
            acc = &acc + &power;
        }
        Ok(acc)
    }
}

impl Add<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "series orders differ");
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "series orders differ");
        let n = self.order();
        let mut out = TruncatedSeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out.coeffs[i + j] += &(a * b);
            }
        }
        out
    }
}

/// Free function form of [`TruncatedSeries::exp`].
pub fn series_exp(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.exp()
}

/// `g_q(t)` or `g_{q^-1}(t)` truncated at `order`, in the variable `t = z^-1`.
pub fn g_series(order: usize, variant: crate::scalar::GVariant) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(
        order,
        (0..=order as i64).map(|p| crate::scalar::g_coeff(p, variant).expect("p >= 0")),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity18Report {
    pub order: usize,
    pub equal: bool,
    pub first_mismatch: Option<usize>,
    /// `exp((q - q^-1) sum_k -[2k]/k z^-k)` through `order`.
    pub exponential: TruncatedSeries,
    /// `1 + (1 - q^4) sum_r q^(-2r) z^-r`.
    pub closed_form: TruncatedSeries,
}

/// Compares the exponential of the `a`-eigenvalue series with its closed form
/// `1 + (1-q^4) sum_r (z q^2)^-r = q^2 g(1/z)`, coefficient by coefficient.
pub fn check_identity_18(order: usize) -> Result<Identity18Report> {
    if order == 0 {
        return Err(Error::domain("identity check needs order >= 1"));
    }
    let t = q_minus_qinv();
    let exponent = TruncatedSeries::from_coeffs(
        order,
        std::iter::once(Scalar::zero()).chain((1..=order as i64).map(|k| {
            (&t * &q_integer(2 * k)).scale(&-rat(1, k))
        })),
    );
    let exponential = exponent.exp()?;

    let one_minus_q4 = Scalar::one() - Scalar::q_pow(4);
    let closed_form = TruncatedSeries::from_coeffs(
        order,
        std::iter::once(Scalar::one())
            .chain((1..=order as i64).map(|r| &one_minus_q4 * &Scalar::q_pow(-2 * r))),
    );
    // third route: q^2 g(1/z)
    let q2g = TruncatedSeries::from_coeffs(order, (0..=order as i64).map(|p| &Scalar::q_pow(2) * &g(p)));

    let first_mismatch = (0..=order).find(|&j| {
        exponential.coeff(j) != closed_form.coeff(j) || closed_form.coeff(j) != q2g.coeff(j)
    });
    Ok(Identity18Report {
        order,
        equal: first_mismatch.is_none(),
        first_mismatch,
        exponential,
        closed_form,
    })
}
