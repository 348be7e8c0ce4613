//! Free words in `x-(n)`, `Omega_psi(k)` and `gam^(±1/2)` acting on the
//! negative subalgebra.
//!
//! Words are never reduced; two words are compared only through their action.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::nq::Element;
use crate::omega::omega_psi;
use crate::scalar::{int, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KGen {
    Xm(i64),
    Wpsi(i64),
    /// `gam^(half/2)`.
    Gamma(i64),
}

impl fmt::Display for KGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KGen::Xm(n) => write!(f, "xm({n})"),
            KGen::Wpsi(k) => write!(f, "Wpsi({k})"),
            KGen::Gamma(h) => f.write_str(&crate::scalar::fmt_gamma_exp(*h)),
        }
    }
}

pub type KWord = Vec<KGen>;

#[derive(Clone, Default, PartialEq, Eq)]
pub struct KElement {
    terms: BTreeMap<KWord, Scalar>,
}

impl KElement {
    pub fn zero() -> Self {
        KElement::default()
    }

    pub fn one() -> Self {
        KElement::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut k = KElement::zero();
        k.add_term(Vec::new(), c);
        k
    }

    pub fn word(w: KWord) -> Self {
        let mut k = KElement::zero();
        k.add_term(w, Scalar::one());
        k
    }

    pub fn gen(g: KGen) -> Self {
        KElement::word(vec![g])
    }

    pub fn xm(n: i64) -> Self {
        KElement::gen(KGen::Xm(n))
    }

    pub fn wpsi(k: i64) -> Self {
        KElement::gen(KGen::Wpsi(k))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: KWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, c: &Scalar) -> KElement {
        let mut out = KElement::zero();
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d * c);
        }
        out
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let word = w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*");
            let coeff = c.to_string();
            let (neg, body) = match coeff.strip_prefix('-') {
                Some(rest) if c.len() == 1 => (true, rest.to_string()),
                _ if c.len() > 1 => (false, format!("({coeff})")),
                _ => (false, coeff),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (body.as_str(), word.is_empty()) {
                (b, true) => f.write_str(b)?,
                ("1", false) => f.write_str(&word)?,
                (b, false) => write!(f, "{b}*{word}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&KElement> for &KElement {
    type Output = KElement;
    fn add(self, rhs: &KElement) -> KElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub<&KElement> for &KElement {
    type Output = KElement;
    fn sub(self, rhs: &KElement) -> KElement {
        self + &(-rhs)
    }
}

impl Neg for &KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        self.scale(&-Scalar::one())
    }
}

/// Word concatenation, extended bilinearly.
impl Mul<&KElement> for &KElement {
    type Output = KElement;
    fn mul(self, rhs: &KElement) -> KElement {
        let mut out = KElement::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, c * d);
            }
        }
        out
    }
}

/// Acts by the rightmost generator first.
pub fn k_act(w: &KElement, e: &Element) -> Element {
    let mut out = Element::zero();
    for (word, c) in w.terms() {
        let mut cur = e.clone();
        for g in word.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = match *g {
                KGen::Xm(n) => cur.left_mul_generator(n),
                KGen::Wpsi(k) => omega_psi(k, &cur),
                KGen::Gamma(h) => cur.scale(&Scalar::monomial(int(1), 0, h)),
            };
        }
        out.add_scaled(&cur, c);
    }
    out
}

/// Memoizes the images of word suffixes on one fixed element, so that many
/// words sharing letters are applied cheaply.
pub struct ActionCache {
    base: Element,
    images: HashMap<KWord, Element>,
}

impl ActionCache {
    pub fn new(base: &Element) -> Self {
        ActionCache {
            base: base.clone(),
            images: HashMap::new(),
        }
    }

    pub fn act(&mut self, w: &KElement) -> Element {
        let mut out = Element::zero();
        for (word, c) in w.terms() {
            let img = self.word_image(word);
            out.add_scaled(&img, c);
        }
        out
    }

    fn word_image(&mut self, word: &[KGen]) -> Element {
        if word.is_empty() {
            return self.base.clone();
        }
        if let Some(hit) = self.images.get(word) {
            return hit.clone();
        }
        let inner = self.word_image(&word[1..]);
        let single = KElement::gen(word[0]);
        let img = k_act(&single, &inner);
        self.images.insert(word.to_vec(), img.clone());
        img
    }
}

/// The involutive anti-automorphism `x-(m) <-> Omega_psi(-m)` fixing `gam`.
pub fn alpha_bar(w: &KElement) -> KElement {
    let mut out = KElement::zero();
    for (word, c) in w.terms() {
        let image = word
            .iter()
            .rev()
            .map(|g| match *g {
                KGen::Xm(m) => KGen::Wpsi(-m),
                KGen::Wpsi(m) => KGen::Xm(-m),
                KGen::Gamma(h) => KGen::Gamma(h),
            })
            .collect();
        out.add_term(image, c.clone());
    }
    out
}

fn w(a: KGen, b: KGen) -> KElement {
    KElement::word(vec![a, b])
}

/// `q^2 gam W(m) x(n+1) - W(m+1) x(n) - delta - gam x(n+1) W(m) + q^2 x(n) W(m+1)`
/// with the constant `delta = (q^2 - 1) gam^(m+1) delta_{m,-n-1}` produced by
/// the action.
pub fn mixed_relation(m: i64, n: i64) -> KElement {
    mixed_with_constant(m, n, &(&(Scalar::q_pow(2) - Scalar::one()) * &Scalar::gamma_pow(m + 1)))
}

/// The same relation with the constant `(q^2 gam - 1) delta_{m,-n-1}`. It agrees
/// with [`mixed_relation`] only at `gam = 1`.
pub fn mixed_relation_literal(m: i64, n: i64) -> KElement {
    let c = &Scalar::q_pow(2) * &Scalar::gamma_pow(1) - Scalar::one();
    mixed_with_constant(m, n, &c)
}

fn mixed_with_constant(m: i64, n: i64, constant: &Scalar) -> KElement {
    let q2 = Scalar::q_pow(2);
    let g = Scalar::gamma_pow(1);
    let mut r = w(KGen::Wpsi(m), KGen::Xm(n + 1)).scale(&(&q2 * &g));
    r = &r - &w(KGen::Wpsi(m + 1), KGen::Xm(n));
    if m == -n - 1 {
        r = &r - &KElement::scalar(constant.clone());
    }
    r = &r - &w(KGen::Xm(n + 1), KGen::Wpsi(m)).scale(&g);
    &r + &w(KGen::Xm(n), KGen::Wpsi(m + 1)).scale(&q2)
}

/// `q^2 W(k+1)W(l) - W(l)W(k+1) - W(k)W(l+1) + q^2 W(l+1)W(k)`.
pub fn psi_psi_relation(k: i64, l: i64) -> KElement {
    let q2 = Scalar::q_pow(2);
    let mut r = w(KGen::Wpsi(k + 1), KGen::Wpsi(l)).scale(&q2);
    r = &r - &w(KGen::Wpsi(l), KGen::Wpsi(k + 1));
    r = &r - &w(KGen::Wpsi(k), KGen::Wpsi(l + 1));
    &r + &w(KGen::Wpsi(l + 1), KGen::Wpsi(k)).scale(&q2)
}

/// `x(k+1)x(l) - q^-2 x(l)x(k+1) - q^-2 x(k)x(l+1) + x(l+1)x(k)`.
pub fn x_x_relation(k: i64, l: i64) -> KElement {
    let qm2 = Scalar::q_pow(-2);
    let mut r = w(KGen::Xm(k + 1), KGen::Xm(l));
    r = &r - &w(KGen::Xm(l), KGen::Xm(k + 1)).scale(&qm2);
    r = &r - &w(KGen::Xm(k), KGen::Xm(l + 1)).scale(&qm2);
    &r + &w(KGen::Xm(l + 1), KGen::Xm(k))
}

/// Result of comparing `k_act(w, 1)` with `k_act(w + u*Omega_psi(k), 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCase {
    pub word: KElement,
    pub shifted: KElement,
    pub holds: bool,
}

/// Adds `u * Omega_psi(k)` to `w` and checks the action on `1` is unchanged.
pub fn quotient_case(w: &KElement, u: &KElement, k: i64) -> QuotientCase {
    let shifted = w + &(u * &KElement::wpsi(k));
    let one = Element::one();
    QuotientCase {
        holds: k_act(w, &one) == k_act(&shifted, &one),
        word: w.clone(),
        shifted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nq::normal_form;

    #[test]
    fn left_multiplication() {
        assert_eq!(k_act(&KElement::xm(0), &Element::one()), Element::generator(0));
    }

    #[test]
    fn omega_after_x() {
        let w = KElement::word(vec![KGen::Wpsi(-3), KGen::Xm(3)]);
        assert_eq!(
            k_act(&w, &Element::one()),
            Element::from_scalar(Scalar::gamma_pow(-3))
        );
    }

    #[test]
    fn mixed_relation_on_one() {
        // the operator terms on the right kill 1
        let lhs = &w(KGen::Wpsi(-1), KGen::Xm(1)).scale(&(&Scalar::q_pow(2) * &Scalar::gamma_pow(1)))
            - &w(KGen::Wpsi(0), KGen::Xm(0));
        let got = k_act(&lhs, &Element::one());
        let expected = &(Scalar::q_pow(2) - Scalar::one()) * &Scalar::gamma_pow(0);
        assert_eq!(got, Element::from_scalar(expected));
        assert_eq!(got.at_gamma_one(), Element::from_scalar(Scalar::q_pow(2) - Scalar::one()));
    }

    #[test]
    fn relations_kill_samples() {
        let samples = [Element::one(), normal_form(&[1, -1]), normal_form(&[0, 2, -2])];
        for e in &samples {
            for a in -2..=2 {
                for b in -2..=2 {
                    assert!(k_act(&mixed_relation(a, b), e).is_zero(), "mixed {a} {b} on {e}");
                    assert!(k_act(&psi_psi_relation(a, b), e).is_zero());
                    assert!(k_act(&x_x_relation(a, b), e).is_zero());
                }
            }
        }
    }

    #[test]
    fn literal_mixed_constant_needs_gamma_one() {
        let e = Element::one();
        let r = k_act(&mixed_relation_literal(-1, 0), &e);
        assert!(!r.is_zero());
        assert!(r.at_gamma_one().is_zero());
    }

    #[test]
    fn alpha_bar_examples() {
        assert_eq!(alpha_bar(&KElement::xm(4)), KElement::wpsi(-4));
        let w = KElement::word(vec![KGen::Xm(1), KGen::Wpsi(2)]);
        assert_eq!(alpha_bar(&w), KElement::word(vec![KGen::Xm(-2), KGen::Wpsi(-1)]));
        assert_eq!(alpha_bar(&alpha_bar(&w)), w);
    }

    #[test]
    fn quotient_examples() {
        assert!(k_act(&KElement::wpsi(5), &Element::one()).is_zero());
        let w = KElement::word(vec![KGen::Xm(2), KGen::Wpsi(0)]);
        assert!(k_act(&w, &Element::one()).is_zero());
        let u = KElement::word(vec![KGen::Xm(1), KGen::Wpsi(-1), KGen::Xm(0)]);
        assert!(quotient_case(&KElement::xm(0), &u, 3).holds);
    }

    #[test]
    fn rendering() {
        let w = &KElement::word(vec![KGen::Wpsi(-3), KGen::Xm(3)])
            - &KElement::scalar(Scalar::q_pow(2));
        assert_eq!(w.to_string(), "-q^(2) + Wpsi(-3)*xm(3)");
    }
}
