//! The symmetric bilinear form with `(1,1) = 1` and
//! `(x-(m) a, b) = (a, Omega_psi(-m) b)`, and Gram matrices on truncated
//! weight spaces.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{det_cofactor, rank_laurent, rank_rational, COFACTOR_LIMIT};
use crate::nq::{basis_enum, Element, Monomial};
use crate::omega::omega_psi;
use crate::scalar::{Rational, Scalar};

/// `(a, b)`, peeling the left factors of each monomial of `a` onto `b`.
pub fn pair(a: &Element, b: &Element) -> Scalar {
    let mut acc = Scalar::zero();
    for (m, c) in a.terms() {
        acc += &(c * &pair_monomial(m, b));
    }
    acc
}

fn pair_monomial(m: &Monomial, b: &Element) -> Scalar {
    let mut cur = b.clone();
    for &n in m.modes() {
        if cur.is_zero() {
            return Scalar::zero();
        }
        cur = omega_psi(-n, &cur);
    }
    cur.constant_term()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub length: usize,
    pub delta_sum: i64,
    pub window: (i64, i64),
    pub basis: Vec<Monomial>,
    pub entries: Vec<Vec<Scalar>>,
}

pub fn gram(length: usize, delta_sum: i64, lo: i64, hi: i64) -> Result<GramMatrix> {
    if lo > hi {
        return Err(Error::domain(format!("empty window {lo}..{hi}")));
    }
    let basis = basis_enum(length, delta_sum, lo, hi);
    let n = basis.len();
    let mut entries = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            entries[i][j] = pair_monomial(&basis[i], &Element::monomial(basis[j].clone()));
        }
    }
    Ok(GramMatrix {
        length,
        delta_sum,
        window: (lo, hi),
        basis,
        entries,
    })
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "length": self.length,
            "deltaSum": self.delta_sum,
            "window": [self.window.0, self.window.1],
            "basis": self.basis.iter().map(|m| m.modes().to_vec()).collect::<Vec<_>>(),
            "entries": self.entries.iter()
                .map(|row| row.iter().map(Scalar::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "gram length={} dsum={} window={}..{} size={}\n",
            self.length,
            self.delta_sum,
            self.window.0,
            self.window.1,
            self.size()
        ));
        for (i, m) in self.basis.iter().enumerate() {
            out.push_str(&format!("basis[{i}] = {m}\n"));
        }
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out.push_str(&format!("[{i},{j}] = {e}\n"));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramRankReport {
    pub size: usize,
    /// `None` when the matrix is too large for cofactor expansion.
    pub symbolic_det: Option<Scalar>,
    /// Rank over the Laurent ring at `gam = 1`.
    pub symbolic_rank: Option<usize>,
    pub ranks: Vec<(Rational, usize)>,
}

impl GramRankReport {
    pub fn symbolic_det_nonzero(&self) -> Option<bool> {
        self.symbolic_det.as_ref().map(|d| !d.is_zero())
    }

    pub fn full_rank_everywhere(&self) -> bool {
        self.ranks.iter().all(|(_, r)| *r == self.size)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "size": self.size,
            "symbolicDet": self.symbolic_det.as_ref().map(Scalar::to_json),
            "symbolicDetNonzero": self.symbolic_det_nonzero(),
            "symbolicRank": self.symbolic_rank,
            "ranks": self.ranks.iter()
                .map(|(p, r)| json!({"q": p.to_string(), "rank": r}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Evaluates every entry at `gam = 1` and the given `q`.
pub fn eval_matrix(m: &[Vec<Scalar>], q: &Rational) -> Result<Vec<Vec<Rational>>> {
    m.iter()
        .map(|row| row.iter().map(|e| e.at_gamma_one().eval_at(q)).collect())
        .collect()
}

pub fn check_eval_point(p: &Rational) -> Result<()> {
    let a = num_traits::Signed::abs(p);
    if a == Rational::from_integer(0.into()) || a == Rational::from_integer(1.into()) {
        return Err(Error::domain(format!("degenerate evaluation point q = {p}")));
    }
    Ok(())
}

pub fn gram_rank_report(g: &GramMatrix, points: &[Rational]) -> Result<GramRankReport> {
    for p in points {
        check_eval_point(p)?;
    }
    let size = g.size();
    let small = size <= COFACTOR_LIMIT;
    let symbolic_det = small.then(|| det_cofactor(&g.entries));
    let symbolic_rank = if small {
        let at_one: Vec<Vec<Scalar>> = g
            .entries
            .iter()
            .map(|r| r.iter().map(Scalar::at_gamma_one).collect())
            .collect();
        Some(rank_laurent(&at_one)?)
    } else {
        None
    };
    let mut ranks = Vec::new();
    for p in points {
        ranks.push((p.clone(), rank_rational(&eval_matrix(&g.entries, p)?)));
    }
    Ok(GramRankReport {
        size,
        symbolic_det,
        symbolic_rank,
        ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nq::normal_form;
    use crate::scalar::rat;

    fn x(modes: &[i64]) -> Element {
        Element::monomial(Monomial::new(modes.to_vec()))
    }

    #[test]
    fn unit_pairing() {
        assert_eq!(pair(&Element::one(), &Element::one()), Scalar::one());
        assert!(pair(&Element::one(), &x(&[0])).is_zero());
    }

    #[test]
    fn length_one() {
        for n in -3..=3 {
            for m in -3..=3 {
                let expected = if n == m { Scalar::gamma_pow(-n) } else { Scalar::zero() };
                assert_eq!(pair(&x(&[n]), &x(&[m])), expected);
            }
        }
    }

    #[test]
    fn length_two_values() {
        assert_eq!(pair(&x(&[0, 0]), &x(&[0, 0])), Scalar::one() + Scalar::q_pow(2));
        let e = x(&[-1, 1]);
        assert_eq!(
            pair(&e, &e),
            Scalar::one() - Scalar::q_pow(2) + Scalar::q_pow(6)
        );
    }

    #[test]
    fn symmetric_on_products() {
        let a = normal_form(&[1, -1, 0]);
        let b = normal_form(&[0, 1, -1]);
        assert_eq!(pair(&a, &b), pair(&b, &a));
    }

    #[test]
    fn gram_small_cases() {
        let g0 = gram(0, 0, -2, 2).unwrap();
        assert_eq!(g0.entries, vec![vec![Scalar::one()]]);
        let g1 = gram(1, 2, -2, 2).unwrap();
        assert_eq!(g1.entries, vec![vec![Scalar::gamma_pow(-2)]]);
        let g2 = gram(2, 0, -2, 2).unwrap();
        assert!(g2.is_symmetric());
        let r = gram_rank_report(&g2, &[rat(7, 5), rat(11, 3)]).unwrap();
        assert_eq!(r.symbolic_det_nonzero(), Some(true));
        assert!(r.full_rank_everywhere());
        assert_eq!(r.symbolic_rank, Some(3));
    }

    #[test]
    fn rejects_degenerate_points() {
        let g = gram(1, 0, 0, 0).unwrap();
        assert!(gram_rank_report(&g, &[rat(-1, 1)]).is_err());
    }
}
