//! Component actions of `Omega_psi(k)` and `Omega_phi(k)` on the negative subalgebra.
//!
//! Both operators kill `1` and are determined by their commutation with a
//! left factor `x-(m)`:
//!
//! ```text
//! Omega_psi(k) x-(m) = delta_{k,-m} gam^k + sum_{r>=0} gbar(r) gam^r x-(m+r) Omega_psi(k-r)
//! Omega_phi(k) x-(m) = delta_{k,-m} gam^m + sum_{r>=0} g(r)    gam^r x-(m-r) Omega_phi(k+r)
//! ```
//!
//! On a monomial `M`, `Omega_psi(j) M = 0` for `j < -max(M)` and
//! `Omega_phi(j) M = 0` for `j > -min(M)` (induction on the length of `M`),
//! which makes both sums finite.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::nq::{Element, Monomial};
use crate::scalar::{g, g_bar, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaKind {
    Psi,
    Phi,
}

impl fmt::Display for OmegaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaKind::Psi => "psi",
            OmegaKind::Phi => "phi",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OmegaOp {
    pub kind: OmegaKind,
    pub index: i64,
}

impl OmegaOp {
    pub fn psi(index: i64) -> Self {
        OmegaOp { kind: OmegaKind::Psi, index }
    }

    pub fn phi(index: i64) -> Self {
        OmegaOp { kind: OmegaKind::Phi, index }
    }

    pub fn apply(&self, e: &Element) -> Element {
        match self.kind {
            OmegaKind::Psi => omega_psi(self.index, e),
            OmegaKind::Phi => omega_phi(self.index, e),
        }
    }
}

thread_local! {
    static CACHE: RefCell<HashMap<(OmegaKind, i64, Monomial), Element>> = RefCell::new(HashMap::new());
}

pub fn omega_psi(k: i64, e: &Element) -> Element {
    apply_linear(e, |m| on_monomial(OmegaKind::Psi, k, m, 0))
}

pub fn omega_phi(k: i64, e: &Element) -> Element {
    apply_linear(e, |m| on_monomial(OmegaKind::Phi, k, m, 0))
}

/// Same recursion with every `r`-sum extended `slack` steps past the
/// vanishing bound. Agreement with the cut recursion certifies the bound.
pub fn omega_with_slack(kind: OmegaKind, k: i64, e: &Element, slack: i64) -> Element {
    apply_linear(e, |m| on_monomial(kind, k, m, slack))
}

/// Largest index with `Omega_psi(index) M = 0` guaranteed below it: `-max(M)`.
pub fn psi_lower_bound(m: &Monomial) -> Option<i64> {
    m.max_mode().map(|x| -x)
}

/// `-min(M)`: `Omega_phi(j) M = 0` for all `j` above it.
pub fn phi_upper_bound(m: &Monomial) -> Option<i64> {
    m.min_mode().map(|x| -x)
}

fn apply_linear(e: &Element, f: impl Fn(&Monomial) -> Element) -> Element {
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        out.add_scaled(&f(m), c);
    }
    out
}

fn on_monomial(kind: OmegaKind, k: i64, m: &Monomial, slack: i64) -> Element {
    if m.is_empty() {
        return Element::zero();
    }
    let cacheable = slack == 0;
    let key = (kind, k, m.clone());
    if cacheable {
        if let Some(hit) = CACHE.with(|c| c.borrow().get(&key).cloned()) {
            return hit;
        }
    }

    let first = m.modes()[0];
    let rest = m.tail();
    let mut out = Element::zero();
    if k == -first {
        let gamma = match kind {
            OmegaKind::Psi => Scalar::gamma_pow(k),
            OmegaKind::Phi => Scalar::gamma_pow(first),
        };
        out.add_term(rest.clone(), gamma);
    }
    if !rest.is_empty() {
        match kind {
            OmegaKind::Psi => {
                let r_max = k + rest.max_mode().unwrap() + slack;
                for r in 0..=r_max {
                    let inner = on_monomial(kind, k - r, &rest, slack);
                    if inner.is_zero() {
                        continue;
                    }
                    let c = &g_bar(r) * &Scalar::gamma_pow(r);
                    out.add_scaled(&inner.left_mul_generator(first + r), &c);
                }
            }
            OmegaKind::Phi => {
                let r_max = -rest.min_mode().unwrap() - k + slack;
                for r in 0..=r_max {
                    let inner = on_monomial(kind, k + r, &rest, slack);
                    if inner.is_zero() {
                        continue;
                    }
                    let c = &g(r) * &Scalar::gamma_pow(r);
                    out.add_scaled(&inner.left_mul_generator(first - r), &c);
                }
            }
        }
    }

    if cacheable {
        CACHE.with(|c| {
            let mut c = c.borrow_mut();
            if c.len() >= 1 << 18 {
                c.clear();
            }
            c.insert(key, out.clone());
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nq::{normal_form, Weight};

    fn x(modes: &[i64]) -> Element {
        Element::monomial(Monomial::new(modes.to_vec()))
    }

    #[test]
    fn kills_one() {
        for k in -3..=3 {
            assert!(omega_psi(k, &Element::one()).is_zero());
            assert!(omega_phi(k, &Element::one()).is_zero());
        }
    }

    #[test]
    fn psi_delta_term() {
        assert_eq!(
            omega_psi(-3, &x(&[3])),
            Element::from_scalar(Scalar::gamma_pow(-3))
        );
    }

    #[test]
    fn psi_two_unfoldings() {
        // only r = 1 survives, with coefficient gbar(1) = q^4 - 1
        let expected = x(&[0]).scale(&(Scalar::q_pow(4) - Scalar::one()));
        assert_eq!(omega_psi(0, &x(&[-1, 1])), expected);
    }

    #[test]
    fn phi_delta_terms() {
        for m in -3..=3 {
            assert_eq!(
                omega_phi(-m, &x(&[m])),
                Element::from_scalar(Scalar::gamma_pow(m))
            );
        }
        assert_eq!(
            omega_phi(1, &x(&[-1, 1])),
            x(&[1]).scale(&Scalar::gamma_pow(-1))
        );
    }

    #[test]
    fn grading() {
        let e = normal_form(&[2, -1, 0]);
        for k in -4..=4 {
            for out in [omega_psi(k, &e), omega_phi(k, &e)] {
                if !out.is_zero() {
                    assert_eq!(out.homogeneous_weight(), Some(Weight::new(2, 1 + k)));
                }
            }
        }
    }

    #[test]
    fn slack_agrees_with_cut_recursion() {
        let e = normal_form(&[1, -2, 0]);
        for k in -5..=5 {
            for kind in [OmegaKind::Psi, OmegaKind::Phi] {
                let cut = OmegaOp { kind, index: k }.apply(&e);
                assert_eq!(omega_with_slack(kind, k, &e, 3), cut);
            }
        }
    }
}
