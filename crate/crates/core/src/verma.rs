//! The reduced imaginary Verma module at level zero (`gam = 1`).
//!
//! A vector is a payload `P` in the negative subalgebra, read as `P v`, where
//! `x+(s) v = a(k) v = 0`, `K v = q^lam v`, `psi(0) v = q^lam v`,
//! `phi(0) v = q^-lam v` and every other `psi(j) v`, `phi(j) v` vanishes.

use std::cell::RefCell;
use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{rank_laurent, rank_rational};
use crate::nq::{basis_enum, normal_form, Element, Monomial};
use crate::omega::{omega_phi, omega_psi};
use crate::scalar::{g, g_bar, q_integer, q_minus_qinv, rat, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HighestWeight {
    pub lambda_h: i64,
}

impl HighestWeight {
    pub fn new(lambda_h: i64) -> Self {
        HighestWeight { lambda_h }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaElement {
    pub weight: HighestWeight,
    payload: Element,
}

impl VermaElement {
    /// `payload v`, with `gam` set to 1 in the payload.
    pub fn new(weight: HighestWeight, payload: &Element) -> Self {
        VermaElement {
            weight,
            payload: payload.at_gamma_one(),
        }
    }

    pub fn highest(weight: HighestWeight) -> Self {
        VermaElement::new(weight, &Element::one())
    }

    pub fn payload(&self) -> &Element {
        &self.payload
    }

    pub fn is_zero(&self) -> bool {
        self.payload.is_zero()
    }

    fn with(&self, payload: Element) -> Self {
        VermaElement {
            weight: self.weight,
            payload,
        }
    }

    pub fn act(&self, op: VermaOp) -> Result<VermaElement> {
        let lam = self.weight.lambda_h;
        let p = &self.payload;
        let out = match op {
            VermaOp::A(k) => act_a(k, p)?,
            VermaOp::Psi(j) => act_psi(lam, j, p),
            VermaOp::Phi(j) => act_phi(lam, j, p),
            VermaOp::K => act_k(lam, p),
            VermaOp::XPlus(s) => act_xplus(lam, s, p)?,
            VermaOp::XMinus(n) => p.left_mul_generator(n),
        };
        Ok(self.with(out))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VermaOp {
    A(i64),
    Psi(i64),
    Phi(i64),
    K,
    XPlus(i64),
    XMinus(i64),
}

type Memo = HashMap<(u8, i64, i64, Monomial), Element>;

thread_local! {
    static MEMO: RefCell<Memo> = RefCell::new(HashMap::new());
}

fn memo(tag: u8, lam: i64, idx: i64, m: &Monomial, f: impl FnOnce() -> Result<Element>) -> Result<Element> {
    let key = (tag, lam, idx, m.clone());
    if let Some(hit) = MEMO.with(|c| c.borrow().get(&key).cloned()) {
        return Ok(hit);
    }
    let v = f()?;
    MEMO.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= 1 << 18 {
            c.clear();
        }
        c.insert(key, v.clone());
    });
    Ok(v)
}

fn linear(p: &Element, mut f: impl FnMut(&Monomial) -> Result<Element>) -> Result<Element> {
    let mut out = Element::zero();
    for (m, c) in p.terms() {
        out.add_scaled(&f(m)?, c);
    }
    Ok(out)
}

/// `a(k)`: each factor `x-(n)` becomes `-([2k]/k) x-(n+k)`.
pub fn act_a(k: i64, p: &Element) -> Result<Element> {
    if k == 0 {
        return Err(Error::domain("a(k) needs k != 0"));
    }
    let c = q_integer(2 * k).scale(&-rat(1, k));
    linear(p, |m| {
        let mut out = Element::zero();
        let modes = m.modes();
        for i in 0..modes.len() {
            let mut w = modes.to_vec();
            w[i] += k;
            out.add_scaled(&normal_form(&w), &c);
        }
        Ok(out)
    })
}

/// `K = q^(lam - 2 len)` on each monomial.
pub fn act_k(lam: i64, p: &Element) -> Element {
    let mut out = Element::zero();
    for (m, c) in p.terms() {
        out.add_term(m.clone(), c * &Scalar::q_pow(lam - 2 * m.len() as i64));
    }
    out
}

/// `psi(j) x-(n) = sum_r g(r) x-(n+r) psi(j-r)`.
pub fn act_psi(lam: i64, j: i64, p: &Element) -> Element {
    linear(p, |m| Ok(psi_monomial(lam, j, m))).expect("infallible")
}

fn psi_monomial(lam: i64, j: i64, m: &Monomial) -> Element {
    if j < 0 {
        return Element::zero();
    }
    if m.is_empty() {
        return if j == 0 {
            Element::from_scalar(Scalar::q_pow(lam))
        } else {
            Element::zero()
        };
    }
    memo(0, lam, j, m, || {
        let first = m.modes()[0];
        let rest = m.tail();
        let mut out = Element::zero();
        for r in 0..=j {
            let inner = psi_monomial(lam, j - r, &rest);
            if !inner.is_zero() {
                out.add_scaled(&inner.left_mul_generator(first + r), &g(r));
            }
        }
        Ok(out)
    })
    .expect("infallible")
}

/// `phi(j) x-(n) = sum_r gbar(r) x-(n-r) phi(j+r)`.
pub fn act_phi(lam: i64, j: i64, p: &Element) -> Element {
    linear(p, |m| Ok(phi_monomial(lam, j, m))).expect("infallible")
}

fn phi_monomial(lam: i64, j: i64, m: &Monomial) -> Element {
    if j > 0 {
        return Element::zero();
    }
    if m.is_empty() {
        return if j == 0 {
            Element::from_scalar(Scalar::q_pow(-lam))
        } else {
            Element::zero()
        };
    }
    memo(1, lam, j, m, || {
        let first = m.modes()[0];
        let rest = m.tail();
        let mut out = Element::zero();
        for r in 0..=-j {
            let inner = phi_monomial(lam, j + r, &rest);
            if !inner.is_zero() {
                out.add_scaled(&inner.left_mul_generator(first - r), &g_bar(r));
            }
        }
        Ok(out)
    })
    .expect("infallible")
}

fn div_t(e: &Element) -> Result<Element> {
    let t = q_minus_qinv();
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        out.add_term(m.clone(), c.div_exact(&t)?);
    }
    Ok(out)
}

/// `x+(s) x-(n) P v = (psi(s+n) - phi(s+n)) P v / (q - q^-1) + x-(n) x+(s) P v`.
pub fn act_xplus(lam: i64, s: i64, p: &Element) -> Result<Element> {
    linear(p, |m| xplus_monomial(lam, s, m))
}

fn xplus_monomial(lam: i64, s: i64, m: &Monomial) -> Result<Element> {
    if m.is_empty() {
        return Ok(Element::zero());
    }
    memo(2, lam, s, m, || {
        let first = m.modes()[0];
        let rest = Element::monomial(m.tail());
        let diff = &act_psi(lam, s + first, &rest) - &act_phi(lam, s + first, &rest);
        let mut out = div_t(&diff)?;
        out += &xplus_monomial(lam, s, &m.tail())?.left_mul_generator(first);
        Ok(out)
    })
}

/// `psi(j) P v` through `K exp((q - q^-1) sum_k a(k) z^-k)`: a sum over
/// ordered compositions of `j`, each weighted by `t^n / n!`.
pub fn psi_expansion_oracle(lam: i64, j: i64, p: &Element) -> Result<Element> {
    if j <= 0 {
        return Err(Error::domain("expansion oracle needs j >= 1"));
    }
    let t = q_minus_qinv();
    // by_parts[n] = sum over compositions of j into n parts of a(k1)...a(kn) P
    let mut total = Element::zero();
    let mut frontier: Vec<(i64, Element)> = vec![(0, p.clone())];
    let mut n: i64 = 0;
    let mut factorial = Rational::from_integer(1.into());
    let mut t_pow = Scalar::one();
    while !frontier.is_empty() {
        n += 1;
        factorial *= Rational::from_integer(n.into());
        t_pow = &t_pow * &t;
        let mut next: Vec<(i64, Element)> = Vec::new();
        let mut finished = Element::zero();
        for (used, e) in &frontier {
            for k in 1..=(j - used) {
                let applied = act_a(k, e)?;
                if applied.is_zero() {
                    continue;
                }
                if used + k == j {
                    finished += &applied;
                } else {
                    next.push((used + k, applied));
                }
            }
        }
        let weight = t_pow.scale(&(Rational::from_integer(1.into()) / &factorial));
        total.add_scaled(&finished, &weight);
        frontier = merge_frontier(next);
    }
    Ok(act_k(lam, &total))
}

fn merge_frontier(items: Vec<(i64, Element)>) -> Vec<(i64, Element)> {
    let mut by_used: std::collections::BTreeMap<i64, Element> = Default::default();
    for (u, e) in items {
        *by_used.entry(u).or_insert_with(Element::zero) += &e;
    }
    by_used.into_iter().filter(|(_, e)| !e.is_zero()).collect()
}

/// `x+(m) P v` assembled from the `Omega` operators:
/// `(sum_{k>=0} psi(k) Omega_psi(m-k) P - sum_{p<=0} phi(p) Omega_phi(m-p) P) v / (q - q^-1)`.
pub fn xplus_via_omega(lam: i64, m: i64, p: &Element) -> Result<Element> {
    let p = p.at_gamma_one();
    let Some(hi) = p.max_mode() else {
        return Ok(Element::zero());
    };
    let lo = p.min_mode().expect("nonempty");
    let mut acc = Element::zero();
    for k in 0..=(m + hi).max(0) {
        let inner = omega_psi(m - k, &p).at_gamma_one();
        acc += &act_psi(lam, k, &inner);
    }
    for q in (m + lo).min(0)..=0 {
        let inner = omega_phi(m - q, &p).at_gamma_one();
        acc -= &act_phi(lam, q, &inner);
    }
    div_t(&acc)
}

/// Two generic sample points for `q`, with `gam = 1`.
pub fn default_eval_points() -> Vec<Rational> {
    vec![rat(7, 5), rat(11, 3)]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularReport {
    pub lambda_h: i64,
    pub length: usize,
    pub delta_sum: i64,
    pub window: (i64, i64),
    pub basis: Vec<Monomial>,
    pub s_range: (i64, i64),
    pub ranks: Vec<(Rational, usize)>,
    pub symbolic_rank: Option<usize>,
    pub kernel_dim: usize,
    /// Spot checks at larger `|s|` add no new constraints.
    pub stationary: bool,
    pub certified: Vec<Monomial>,
}

impl SingularReport {
    pub fn to_json(&self) -> Value {
        json!({
            "lambdaH": self.lambda_h,
            "length": self.length,
            "deltaSum": self.delta_sum,
            "window": [self.window.0, self.window.1],
            "basis": self.basis.iter().map(|m| m.modes().to_vec()).collect::<Vec<_>>(),
            "sRange": [self.s_range.0, self.s_range.1],
            "ranks": self.ranks.iter()
                .map(|(p, r)| json!({"q": p.to_string(), "rank": r}))
                .collect::<Vec<_>>(),
            "symbolicRank": self.symbolic_rank,
            "kernelDim": self.kernel_dim,
            "stationary": self.stationary,
            "certifiedVectors": self.certified.iter().map(|m| m.modes().to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// Rows `(s, output monomial)`, columns the basis.
fn constraint_rows(lam: i64, basis: &[Monomial], ss: impl Iterator<Item = i64>) -> Result<Vec<Vec<Scalar>>> {
    let mut rows = Vec::new();
    for s in ss {
        let images: Vec<Element> = basis
            .iter()
            .map(|b| act_xplus(lam, s, &Element::monomial(b.clone())))
            .collect::<Result<_>>()?;
        let mut keys: Vec<&Monomial> = images.iter().flat_map(|e| e.terms().map(|(m, _)| m)).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            rows.push(images.iter().map(|e| e.coeff(k)).collect());
        }
    }
    Ok(rows)
}

fn numeric_rank(rows: &[Vec<Scalar>], q: &Rational) -> Result<usize> {
    let vals: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|e| e.eval_at(q)).collect())
        .collect::<Result<_>>()?;
    Ok(rank_rational(&vals))
}

pub fn singular_probe(lam: i64, length: usize, delta_sum: i64, lo: i64, hi: i64) -> Result<SingularReport> {
    if length == 0 {
        return Err(Error::domain("singular probe needs length >= 1"));
    }
    if lo > hi {
        return Err(Error::domain(format!("empty window {lo}..{hi}")));
    }
    let n = length as i64;
    let spread = hi - lo;
    let s_range = (-hi - n * spread - 2, -lo + n * spread + 2);
    let basis = basis_enum(length, delta_sum, lo, hi);
    let points = default_eval_points();
    let rows = constraint_rows(lam, &basis, s_range.0..=s_range.1)?;

    let mut ranks = Vec::new();
    for p in &points {
        ranks.push((p.clone(), numeric_rank(&rows, p)?));
    }
    let symbolic_rank = if length <= 2 && !rows.is_empty() {
        Some(rank_laurent(&rows)?)
    } else if rows.is_empty() {
        Some(0)
    } else {
        None
    };
    let best = symbolic_rank.unwrap_or_else(|| ranks.iter().map(|(_, r)| *r).max().unwrap_or(0));
    let kernel_dim = basis.len() - best;

    let spots = [s_range.1 + 3, s_range.1 + 7, s_range.0 - 5];
    let mut extended = rows.clone();
    extended.extend(constraint_rows(lam, &basis, spots.into_iter())?);
    let mut stationary = true;
    for (p, r) in &ranks {
        if numeric_rank(&extended, p)? != *r {
            stationary = false;
        }
    }

    // For a single factor x-(m), x+(s) x-(m) v is a multiple of
    // (psi(s+m) - phi(s+m)) v, which vanishes for s != -m; only s = -m needs checking.
    let mut certified = Vec::new();
    if length == 1 && kernel_dim > 0 {
        for b in &basis {
            let m = b.modes()[0];
            if act_xplus(lam, -m, &Element::monomial(b.clone()))?.is_zero() {
                certified.push(b.clone());
            }
        }
    }

    Ok(SingularReport {
        lambda_h: lam,
        length,
        delta_sum,
        window: (lo, hi),
        basis,
        s_range,
        ranks,
        symbolic_rank,
        kernel_dim,
        stationary,
        certified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma62Row {
    pub s: i64,
    pub threshold_met: bool,
    pub value: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma62Report {
    pub lambda_h: i64,
    pub m: i64,
    pub l_from: i64,
    pub coeffs: Vec<Rational>,
    /// Smallest `s` past which only the terminal `psi` term survives.
    pub threshold: i64,
    pub rows: Vec<Lemma62Row>,
    /// `w_l` normalized to `w_{l_from} = 1`; the constraint is `sum_l w_l A_l = 0`.
    pub weights: Vec<(i64, Scalar)>,
    pub s_independent: bool,
    pub constraint_holds: bool,
    pub vanishes: bool,
}

impl Lemma62Report {
    pub fn to_json(&self) -> Value {
        json!({
            "lambdaH": self.lambda_h,
            "m": self.m,
            "lFrom": self.l_from,
            "A": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "threshold": self.threshold,
            "rows": self.rows.iter().map(|r| json!({
                "s": r.s,
                "thresholdMet": r.threshold_met,
                "value": r.value.to_string(),
            })).collect::<Vec<_>>(),
            "weights": self.weights.iter()
                .map(|(l, w)| json!({"l": l, "weight": w.to_string()}))
                .collect::<Vec<_>>(),
            "sIndependent": self.s_independent,
            "constraintHolds": self.constraint_holds,
            "vanishes": self.vanishes,
        })
    }
}

/// Applies `x+(s)` to `sum_l A_l x-(l) x-(m-l) v` for `s` in `[s_from, s_to]`,
/// and derives the linear constraint on `(A_l)` from the large-`s` coefficients.
pub fn lemma62_scan(lam: i64, coeffs: &[Rational], l_from: i64, m: i64, s_from: i64, s_to: i64) -> Result<Lemma62Report> {
    if coeffs.is_empty() {
        return Err(Error::domain("lemma62 scan needs at least one coefficient"));
    }
    if s_from > s_to {
        return Err(Error::domain(format!("empty s range {s_from}..{s_to}")));
    }
    let ls: Vec<i64> = (0..coeffs.len() as i64).map(|i| l_from + i).collect();
    let threshold = ls.iter().map(|&l| (-l).max(l - m)).max().expect("nonempty") + 1;
    let pieces: Vec<Element> = ls.iter().map(|&l| normal_form(&[l, m - l])).collect();
    let mut v = Element::zero();
    for (piece, a) in pieces.iter().zip(coeffs) {
        v.add_scaled(piece, &Scalar::from_rational(a.clone()));
    }

    let mut rows = Vec::new();
    for s in s_from..=s_to {
        rows.push(Lemma62Row {
            s,
            threshold_met: s >= threshold,
            value: act_xplus(lam, s, &v)?,
        });
    }

    // per-l coefficient on x-(s+m) at a reference s past the threshold
    let s_ref = s_from.max(threshold);
    let target = |s: i64| Monomial::new(vec![s + m]);
    let coeff_at = |l_idx: usize, s: i64| -> Result<Scalar> {
        Ok(act_xplus(lam, s, &pieces[l_idx])?.coeff(&target(s)))
    };
    let base = coeff_at(0, s_ref)?;
    let mut weights = Vec::new();
    for (i, &l) in ls.iter().enumerate() {
        weights.push((l, coeff_at(i, s_ref)?.div_exact(&base)?));
    }
    let mut s_independent = true;
    for s in s_ref..s_ref + 5 {
        let b0 = coeff_at(0, s)?;
        let b1 = coeff_at(0, s + 1)?;
        for i in 0..ls.len() {
            let lhs = &coeff_at(i, s)? * &b1;
            let rhs = &coeff_at(i, s + 1)? * &b0;
            if lhs != rhs {
                s_independent = false;
            }
        }
        // nothing other than x-(s+m) may appear past the threshold
        for piece in &pieces {
            if act_xplus(lam, s, piece)?.terms().any(|(k, _)| *k != target(s)) {
                s_independent = false;
            }
        }
    }
    let mut constraint = Scalar::zero();
    for ((_, w), a) in weights.iter().zip(coeffs) {
        constraint += &w.scale(a);
    }
    let constraint_holds = constraint.is_zero();
    let vanishes = rows.iter().filter(|r| r.threshold_met).all(|r| r.value.is_zero());

    Ok(Lemma62Report {
        lambda_h: lam,
        m,
        l_from,
        coeffs: coeffs.to_vec(),
        threshold,
        rows,
        weights,
        s_independent,
        constraint_holds,
        vanishes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(modes: &[i64]) -> Element {
        Element::monomial(Monomial::new(modes.to_vec()))
    }

    #[test]
    fn ideal_generators_kill_v() {
        let one = Element::one();
        for s in -3..=3 {
            assert!(act_xplus(2, s, &one).unwrap().is_zero());
            if s != 0 {
                assert!(act_a(s, &one).unwrap().is_zero());
            }
        }
        assert_eq!(act_k(3, &one), Element::from_scalar(Scalar::q_pow(3)));
        assert!(act_a(0, &one).is_err());
    }

    #[test]
    fn a_on_products() {
        let got = act_a(1, &x(&[0, 0])).unwrap();
        let expected = x(&[0, 1]).scale(&-(&q_integer(2) * &(Scalar::one() + Scalar::q_pow(-2))));
        assert_eq!(got, expected);
    }

    #[test]
    fn psi_on_one_factor() {
        let lam = 3;
        let expected = x(&[1]).scale(&(&(Scalar::q_pow(-4) - Scalar::one()) * &Scalar::q_pow(lam)));
        assert_eq!(act_psi(lam, 1, &x(&[0])), expected);
        assert_eq!(psi_expansion_oracle(lam, 1, &x(&[0])).unwrap(), expected);
        assert_eq!(
            psi_expansion_oracle(lam, 2, &x(&[0])).unwrap(),
            act_psi(lam, 2, &x(&[0]))
        );
        assert!(psi_expansion_oracle(lam, 4, &Element::one()).unwrap().is_zero());
    }

    #[test]
    fn xplus_on_single_factor() {
        for lam in 0..=2 {
            for m in -3..=3 {
                assert_eq!(
                    act_xplus(lam, -m, &x(&[m])).unwrap(),
                    Element::from_scalar(q_integer(lam))
                );
                assert!(act_xplus(lam, 1 - m, &x(&[m])).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn xplus_matches_omega_route() {
        for p in [x(&[0]), normal_form(&[1, -1]), normal_form(&[2, 0, -1])] {
            for s in -4..=4 {
                assert_eq!(
                    act_xplus(1, s, &p).unwrap(),
                    xplus_via_omega(1, s, &p).unwrap(),
                    "s = {s}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn singular_length_one() {
        let r = singular_probe(0, 1, 1, -2, 2).unwrap();
        assert_eq!(r.kernel_dim, 1);
        assert_eq!(r.certified, vec![Monomial::new(vec![1])]);
        let r = singular_probe(2, 1, 1, -2, 2).unwrap();
        assert_eq!(r.kernel_dim, 0);
    }

    #[test]
    fn lemma62_weights() {
        let r = lemma62_scan(0, &[rat(1, 1), rat(-1, 1)], 0, 1, 3, 8).unwrap();
        assert!(r.s_independent);
        assert_eq!(r.weights[1].1, Scalar::q_pow(-2));
        assert!(!r.vanishes);
        let r = lemma62_scan(0, &[rat(1, 1), rat(-1, 1)], 0, 1, -3, 0).unwrap();
        assert!(r.rows.iter().all(|row| !row.threshold_met));
    }
}
