//! The negative subalgebra generated by `x-(n)` and `gam^(±1/2)`.
//!
//! Elements are stored on the PBW basis of monomials `x-(n1)...x-(nk)` with
//! `n1 <= ... <= nk`. Products of generators are brought to that basis by the
//! quadratic relation
//!
//! ```text
//! x-(a) x-(b) = q^-2 x-(b) x-(a) + q^-2 x-(a-1) x-(b+1) - x-(b+1) x-(a-1)   (a > b + 1)
//! x-(b+1) x-(b) = q^-2 x-(b) x-(b+1)
//! ```
//!
//! Every rewrite replaces a word by words that are lexicographically smaller
//! at the rewritten position and keeps all modes inside `[b, a]`, so only
//! finitely many words are reachable and rewriting terminates.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{fmt_q_exp, Scalar};

/// A product `x-(n1) ... x-(nk)`. Keys of an [`Element`] are always nondecreasing.
///
/// Ordered by length first, then lexicographically by modes.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Wraps a mode sequence. Panics unless the sequence is nondecreasing.
    pub fn new(modes: Vec<i64>) -> Self {
        assert!(
            is_sorted(&modes),
            "monomial modes must be nondecreasing: {modes:?}"
        );
        Monomial(modes)
    }

    pub fn modes(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_mode(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn max_mode(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn weight(&self) -> Weight {
        weight_of(self)
    }

    /// Drops the first (smallest) factor.
    pub fn tail(&self) -> Monomial {
        Monomial(self.0[1..].to_vec())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|n| format!("xm({n})")).collect();
        f.write_str(&parts.join("*"))
    }
}

fn is_sorted(modes: &[i64]) -> bool {
    modes.windows(2).all(|w| w[0] <= w[1])
}

/// Weight `-length * alpha + delta_sum * delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight {
    pub length: usize,
    pub delta_sum: i64,
}

impl Weight {
    pub fn new(length: usize, delta_sum: i64) -> Self {
        Weight { length, delta_sum }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight::new(self.length + rhs.length, self.delta_sum + rhs.delta_sum)
    }
}

pub fn weight_of(m: &Monomial) -> Weight {
    Weight::new(m.len(), m.0.iter().sum())
}

/// Finite linear combination of PBW monomials with [`Scalar`] coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::from_scalar(Scalar::one())
    }

    pub fn from_scalar(c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(Monomial::one(), c);
        e
    }

    /// The generator `x-(n)`.
    pub fn generator(n: i64) -> Self {
        Element::monomial(Monomial(vec![n]))
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut e = Element::zero();
        e.add_term(m, Scalar::one());
        e
    }

    /// The product `x-(w1)...x-(wk)` in PBW form.
    pub fn word(word: &[i64]) -> Self {
        normal_form(word)
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

    /// Terms in canonical order (length, then modes lexicographically).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(is_sorted(&m.0));
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        let mut out = Element::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), f(v));
        }
        out
    }

    pub fn at_gamma_one(&self) -> Element {
        self.map_scalars(Scalar::at_gamma_one)
    }

    pub fn at_q_one(&self) -> Element {
        self.map_scalars(Scalar::at_q_one)
    }

    /// Set of weights carried by the terms.
    pub fn weights(&self) -> BTreeSet<Weight> {
        self.terms.keys().map(weight_of).collect()
    }

    /// The common weight of all terms, if there is exactly one.
    pub fn homogeneous_weight(&self) -> Option<Weight> {
        let w = self.weights();
        if w.len() == 1 {
            w.into_iter().next()
        } else {
            None
        }
    }

    pub fn max_mode(&self) -> Option<i64> {
        self.terms.keys().filter_map(Monomial::max_mode).max()
    }

    pub fn min_mode(&self) -> Option<i64> {
        self.terms.keys().filter_map(Monomial::min_mode).min()
    }

    /// `x-(n) * self`.
    pub fn left_mul_generator(&self, n: i64) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            let mut w = Vec::with_capacity(m.len() + 1);
            w.push(n);
            w.extend_from_slice(&m.0);
            out.add_scaled(&normal_form(&w), c);
        }
        out
    }

    /// `self * x-(n)`.
    pub fn right_mul_generator(&self, n: i64) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&insert_right(m, n), c);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| json!({"modes": m.0, "coeff": c.to_json()}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Element> {
        let bad = || Error::domain("malformed element JSON");
        let mut e = Element::zero();
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(bad)? {
            let modes: Vec<i64> = t
                .get("modes")
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_i64().ok_or_else(bad))
                .collect::<Result<_>>()?;
            let c = Scalar::from_json(t.get("coeff").ok_or_else(bad)?)?;
            e.add_scaled(&normal_form(&modes), &c);
        }
        Ok(e)
    }
}

/// Canonical text, parseable by [`crate::parse::parse_element`]: every scalar
/// term of every coefficient becomes one summand `c*q^(a/2)*gam^(b/2)*xm(..)..`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            for (a, b, r) in c.terms() {
                let neg = r < &num_traits::Zero::zero();
                match (first, neg) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                first = false;
                let abs = if neg { -r.clone() } else { r.clone() };
                let mut parts = Vec::new();
                let bare = a == 0 && b == 0 && m.is_empty();
                if !num_traits::One::is_one(&abs) || bare {
                    parts.push(abs.to_string());
                }
                if a != 0 {
                    parts.push(fmt_q_exp(a));
                }
                if b != 0 {
                    parts.push(crate::scalar::fmt_gamma_exp(b));
                }
                if !m.is_empty() {
                    parts.push(m.to_string());
                }
                f.write_str(&parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self)
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= &rhs;
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.map_scalars(|c| -c)
    }
}

impl Mul<&Element> for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        multiply(self, rhs)
    }
}

const CACHE_LIMIT: usize = 1 << 18;

thread_local! {
    static INSERT_CACHE: RefCell<HashMap<(Monomial, i64), Element>> = RefCell::new(HashMap::new());
}

/// PBW form of `m * x-(b)` for a normal-form monomial `m`.
fn insert_right(m: &Monomial, b: i64) -> Element {
    match m.max_mode() {
        None => return Element::monomial(Monomial(vec![b])),
        Some(last) if last <= b => {
            let mut v = m.0.clone();
            v.push(b);
            return Element::monomial(Monomial(v));
        }
        _ => {}
    }
    let key = (m.clone(), b);
    if let Some(hit) = INSERT_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }

    let a = m.max_mode().unwrap();
    let prefix = Monomial(m.0[..m.len() - 1].to_vec());
    let qm2 = Scalar::q_pow(-2);
    let mut out = Element::zero();
    // prefix * x(b) * x(a)
    out.add_scaled(&insert_right(&prefix, b).right_mul_generator(a), &qm2);
    if a != b + 1 {
        // prefix * x(a-1) * x(b+1)
        out.add_scaled(
            &insert_right(&prefix, a - 1).right_mul_generator(b + 1),
            &qm2,
        );
        // prefix * x(b+1) * x(a-1)
        out.add_scaled(
            &insert_right(&prefix, b + 1).right_mul_generator(a - 1),
            &-Scalar::one(),
        );
    }

    INSERT_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= CACHE_LIMIT {
            c.clear();
        }
        c.insert(key, out.clone());
    });
    out
}

/// The PBW form of the product `x-(w1) ... x-(wk)`.
pub fn normal_form(word: &[i64]) -> Element {
    if is_sorted(word) {
        return Element::monomial(Monomial(word.to_vec()));
    }
    let mut acc = Element::one();
    for &n in word {
        acc = acc.right_mul_generator(n);
    }
    acc
}

/// Algebra product of two elements.
pub fn multiply(a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for (mb, cb) in &b.terms {
        let mut partial = a.scale(cb);
        for &n in mb.modes() {
            partial = partial.right_mul_generator(n);
        }
        out += &partial;
    }
    out
}

/// One rewrite of the inverted adjacent pair at `pos` (requires `word[pos] > word[pos+1]`).
pub fn rewrite_pair(word: &[i64], pos: usize) -> Vec<(Vec<i64>, Scalar)> {
    let (a, b) = (word[pos], word[pos + 1]);
    assert!(a > b, "pair at {pos} is not inverted");
    let splice = |x: i64, y: i64| {
        let mut w = word.to_vec();
        w[pos] = x;
        w[pos + 1] = y;
        w
    };
    let qm2 = Scalar::q_pow(-2);
    if a == b + 1 {
        vec![(splice(b, a), qm2)]
    } else {
        vec![
            (splice(b, a), qm2.clone()),
            (splice(a - 1, b + 1), qm2),
            (splice(b + 1, a - 1), -Scalar::one()),
        ]
    }
}

/// Rewrites a linear combination of words to PBW form, letting `choose` pick
/// which inverted adjacent pair of a word to rewrite next.
///
/// Independent of the cached insertion path used by [`normal_form`]; the
/// confluence checks compare the two.
pub fn normal_form_by_strategy(
    word: &[i64],
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Element {
    let mut pending: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
    pending.insert(word.to_vec(), Scalar::one());
    let mut out = Element::zero();
    while let Some((w, c)) = pending.pop_last() {
        let inversions: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| w[i] > w[i + 1])
            .collect();
        if inversions.is_empty() {
            out.add_term(Monomial(w), c);
            continue;
        }
        let pos = inversions[choose(&inversions) % inversions.len()];
        for (nw, k) in rewrite_pair(&w, pos) {
            let mut acc = pending.remove(&nw).unwrap_or_default();
            acc += &(&k * &c);
            if !acc.is_zero() {
                pending.insert(nw, acc);
            }
        }
    }
    out
}

/// All nondecreasing `length`-tuples with entries in `[lo, hi]` summing to
/// `delta_sum`, in lexicographic order.
pub fn basis_enum(length: usize, delta_sum: i64, lo: i64, hi: i64) -> Vec<Monomial> {
    fn go(
        remaining: usize,
        sum: i64,
        from: i64,
        hi: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            if sum == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let r = remaining as i64;
        for n in from..=hi {
            // remaining entries are all >= n and <= hi
            if n * r > sum {
                break;
            }
            if hi * r < sum {
                return;
            }
            cur.push(n);
            go(remaining - 1, sum - n, n, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    go(length, delta_sum, lo, hi, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn x(modes: &[i64]) -> Element {
        Element::monomial(Monomial::new(modes.to_vec()))
    }

    fn q(n: i64) -> Scalar {
        Scalar::q_pow(n)
    }

    #[test]
    fn swap_rule() {
        assert_eq!(normal_form(&[1, 0]), x(&[0, 1]).scale(&q(-2)));
        assert_eq!(normal_form(&[0, 1]), x(&[0, 1]));
        assert_eq!(normal_form(&[]), Element::one());
    }

    #[test]
    fn gap_two_rewrite() {
        let expected = &x(&[0, 2]).scale(&q(-2)) + &x(&[1, 1]).scale(&(q(-2) - Scalar::one()));
        assert_eq!(normal_form(&[2, 0]), expected);
    }

    #[test]
    fn unit_and_associativity_of_small_products() {
        assert_eq!(multiply(&Element::one(), &x(&[5])), x(&[5]));
        assert_eq!(multiply(&x(&[1]), &x(&[0])), x(&[0, 1]).scale(&q(-2)));
        let lhs = multiply(&x(&[0]), &multiply(&x(&[1]), &x(&[0])));
        let rhs = multiply(&multiply(&x(&[0]), &x(&[1])), &x(&[0]));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, normal_form(&[0, 1, 0]));
    }

    #[test]
    fn weights() {
        assert_eq!(weight_of(&Monomial::new(vec![0, 1])), Weight::new(2, 1));
        assert_eq!(weight_of(&Monomial::one()), Weight::new(0, 0));
        assert_eq!(weight_of(&Monomial::new(vec![-3, -3, 7])), Weight::new(3, 1));
    }

    #[test]
    fn basis_enumeration() {
        let b = basis_enum(2, 0, -2, 2);
        let modes: Vec<&[i64]> = b.iter().map(Monomial::modes).collect();
        assert_eq!(modes, vec![&[-2, 2][..], &[-1, 1], &[0, 0]]);
        assert!(basis_enum(1, 5, -2, 2).is_empty());
        assert_eq!(basis_enum(0, 0, -2, 2), vec![Monomial::one()]);
        assert!(basis_enum(0, 1, -2, 2).is_empty());
    }

    #[test]
    fn strategies_agree_with_insertion() {
        for w in [vec![2, 0], vec![3, -1, 2], vec![1, 1, 0, -2]] {
            let left = normal_form_by_strategy(&w, |_| 0);
            let right = normal_form_by_strategy(&w, |inv| inv.len() - 1);
            assert_eq!(left, right);
            assert_eq!(left, normal_form(&w));
        }
    }

    #[test]
    fn render_element() {
        let e = normal_form(&[2, 0]);
        assert_eq!(
            e.to_string(),
            "q^(-2)*xm(0)*xm(2) + q^(-2)*xm(1)*xm(1) - xm(1)*xm(1)"
        );
        assert_eq!(Element::one().to_string(), "1");
        assert_eq!(Element::zero().to_string(), "0");
        let g = Element::from_scalar(Scalar::monomial(int(-2), 0, 1));
        assert_eq!(g.to_string(), "-2*gam^(1/2)");
    }

    #[test]
    fn q_one_specialization_commutes() {
        assert_eq!(normal_form(&[3, -1]).at_q_one(), x(&[-1, 3]));
    }
}
