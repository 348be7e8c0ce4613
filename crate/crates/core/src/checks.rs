//! Randomized and exhaustive relation checks. Every check compares two exact
//! values and records the first few disagreements.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::form::{gram, gram_rank_report, pair};
use crate::kashiwara::{
    alpha_bar, k_act, mixed_relation, mixed_relation_literal, ActionCache, psi_psi_relation, quotient_case, x_x_relation, KElement, KGen,
};
use crate::nq::{basis_enum, multiply, normal_form, normal_form_by_strategy, Element, Monomial};
use crate::omega::{omega_phi, omega_psi, omega_with_slack, OmegaKind};
use crate::parse::parse_element;
use crate::scalar::{g, g_bar, q_integer, q_minus_qinv, rat, Rational, Scalar};
use crate::series::check_identity_18;
use crate::verma::{
    act_a, act_k, act_phi, act_psi, act_xplus, default_eval_points, lemma62_scan, psi_expansion_oracle,
    singular_probe, xplus_via_omega,
};

/// Failures kept per check; the count is always exact.
const KEEP: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            cases: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// Records one case comparing two displayable values.
    pub fn compare<T: PartialEq + std::fmt::Display>(&mut self, case: impl FnOnce() -> String, lhs: &T, rhs: &T) {
        self.cases += 1;
        if lhs != rhs {
            self.fail(case(), lhs.to_string(), rhs.to_string());
        }
    }

    pub fn expect(&mut self, case: impl FnOnce() -> String, ok: bool, detail: impl FnOnce() -> (String, String)) {
        self.cases += 1;
        if !ok {
            let (l, r) = detail();
            self.fail(case(), l, r);
        }
    }

    fn fail(&mut self, case: String, lhs: String, rhs: String) {
        self.failed += 1;
        if self.failures.len() < KEEP {
            self.failures.push(Failure { case, lhs, rhs });
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "cases": self.cases,
            "failed": self.failed,
            "failures": self.failures.iter()
                .map(|f| json!({"case": f.case, "lhs": f.lhs, "rhs": f.rhs}))
                .collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub samples: usize,
    pub max_len: usize,
    pub mode_window: (i64, i64),
    pub idx_window: (i64, i64),
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(samples: usize, seed: u64) -> Self {
        SampleSpec {
            samples,
            max_len: 3,
            mode_window: (-3, 3),
            idx_window: (-4, 4),
            seed,
        }
    }

    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }

    fn idx(&self) -> std::ops::RangeInclusive<i64> {
        self.idx_window.0..=self.idx_window.1
    }

    fn modes(&self) -> std::ops::RangeInclusive<i64> {
        self.mode_window.0..=self.mode_window.1
    }
}

pub fn random_word(rng: &mut impl Rng, max_len: usize, window: (i64, i64)) -> Vec<i64> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(window.0..=window.1)).collect()
}

pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    let mut c = rng.gen_range(-3i64..=3);
    if c == 0 {
        c = 1;
    }
    Scalar::monomial(rat(c, 1), rng.gen_range(-4..=4), rng.gen_range(-2..=2))
}

/// Sum of one to three normal-ordered random words with random coefficients.
pub fn random_element(rng: &mut impl Rng, max_len: usize, window: (i64, i64)) -> Element {
    let terms = rng.gen_range(1..=3);
    let mut e = Element::zero();
    for _ in 0..terms {
        let c = random_scalar(rng);
        e.add_scaled(&normal_form(&random_word(rng, max_len, window)), &c);
    }
    e
}

pub fn random_monomial(rng: &mut impl Rng, max_len: usize, window: (i64, i64)) -> Monomial {
    let mut w = random_word(rng, max_len, window);
    w.sort();
    Monomial::new(w)
}

pub fn random_kword(rng: &mut impl Rng, max_len: usize, window: (i64, i64)) -> KElement {
    let len = rng.gen_range(0..=max_len);
    let word = (0..len)
        .map(|_| {
            let n = rng.gen_range(window.0..=window.1);
            match rng.gen_range(0..5) {
                0 | 1 => KGen::Xm(n),
                2 | 3 => KGen::Wpsi(n),
                _ => KGen::Gamma(if rng.gen_bool(0.5) { 1 } else { -1 }),
            }
        })
        .collect();
    KElement::word(word).scale(&random_scalar(rng))
}

// ---------------------------------------------------------------- PBW

pub fn check_confluence(spec: &SampleSpec) -> CheckReport {
    let mut rep = CheckReport::new("pbw.confluence");
    let mut rng = spec.rng(1);
    for _ in 0..spec.samples {
        let w = random_word(&mut rng, spec.max_len, spec.mode_window);
        let reference = normal_form(&w);
        let leftmost = normal_form_by_strategy(&w, |_| 0);
        let mut pick = spec.rng(1000 + rep.cases as u64);
        let random = normal_form_by_strategy(&w, |inv| pick.gen_range(0..inv.len()));
        rep.compare(|| format!("leftmost {w:?}"), &leftmost, &reference);
        rep.compare(|| format!("random {w:?}"), &random, &reference);
    }
    rep
}

pub fn check_idempotence(spec: &SampleSpec) -> CheckReport {
    let mut rep = CheckReport::new("pbw.idempotence");
    let mut rng = spec.rng(2);
    for _ in 0..spec.samples {
        let w = random_word(&mut rng, spec.max_len, spec.mode_window);
        let nf = normal_form(&w);
        let again = match parse_element(&nf.to_string()) {
            Ok(e) => normal_form_of(&e),
            Err(e) => {
                rep.expect(|| format!("{w:?}"), false, || (e.to_string(), nf.to_string()));
                continue;
            }
        };
        rep.compare(|| format!("{w:?}"), &again, &nf);
    }
    rep
}

/// Renormalizes every key of an element (keys are already sorted, so this
/// must be the identity).
fn normal_form_of(e: &Element) -> Element {
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        out.add_scaled(&normal_form(m.modes()), c);
    }
    out
}

pub fn check_associativity(spec: &SampleSpec) -> CheckReport {
    let mut rep = CheckReport::new("pbw.associativity");
    let mut rng = spec.rng(3);
    for _ in 0..spec.samples {
        let a = normal_form(&random_word(&mut rng, 2, spec.mode_window));
        let b = normal_form(&random_word(&mut rng, 2, spec.mode_window));
        let c = normal_form(&random_word(&mut rng, 2, spec.mode_window));
        let left = multiply(&multiply(&a, &b), &c);
        let right = multiply(&a, &multiply(&b, &c));
        rep.compare(|| format!("a={a} b={b} c={c}"), &left, &right);
    }
    rep
}

// ---------------------------------------------------------------- Omega

/// Every sorted mode tuple of length `0..=max_len` in the window.
pub fn all_monomials(max_len: usize, window: (i64, i64)) -> Vec<Monomial> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        let lo = window.0 * len as i64;
        let hi = window.1 * len as i64;
        for m in lo..=hi {
            out.extend(basis_enum(len, m, window.0, window.1));
        }
    }
    out
}

/// Below (psi) or above (phi) the bound, an extended-range evaluation must
/// still give zero; at the bound some index must give a nonzero value.
pub fn check_vanishing(max_len: usize, window: (i64, i64)) -> CheckReport {
    const SLACK: i64 = 4;
    const DEPTH: i64 = 6;
    let mut rep = CheckReport::new("omega.vanishing");
    for m in all_monomials(max_len, window) {
        let (Some(lo), Some(hi)) = (m.min_mode(), m.max_mode()) else {
            continue;
        };
        let e = Element::monomial(m.clone());
        for d in 1..=DEPTH {
            let s = -hi - d;
            let v = omega_with_slack(OmegaKind::Psi, s, &e, SLACK);
            rep.compare(|| format!("psi({s}) on {m}"), &v, &Element::zero());
            let s = -lo + d;
            let v = omega_with_slack(OmegaKind::Phi, s, &e, SLACK);
            rep.compare(|| format!("phi({s}) on {m}"), &v, &Element::zero());
        }
        let psi_hit = (-hi..=-hi + 2 * (hi - lo) + 2).any(|s| !omega_psi(s, &e).is_zero());
        rep.expect(|| format!("psi nonzero at or above bound on {m}"), psi_hit, || ("all zero".into(), "some nonzero".into()));
        let phi_hit = (-lo - 2 * (hi - lo) - 2..=-lo).any(|s| !omega_phi(s, &e).is_zero());
        rep.expect(|| format!("phi nonzero at or below bound on {m}"), phi_hit, || ("all zero".into(), "some nonzero".into()));
    }
    rep
}

pub fn check_omega_grading(spec: &SampleSpec) -> CheckReport {
    let mut rep = CheckReport::new("omega.grading");
    let mut rng = spec.rng(4);
    for _ in 0..spec.samples {
        let m = random_monomial(&mut rng, spec.max_len, spec.mode_window);
        let w = m.weight();
        let e = Element::monomial(m.clone());
        for k in spec.idx() {
            for (name, out) in [("psi", omega_psi(k, &e)), ("phi", omega_phi(k, &e))] {
                let ok = out.weights().iter().all(|x| x.length + 1 == w.length && x.delta_sum == w.delta_sum + k);
                rep.expect(|| format!("{name}({k}) on {m}"), ok, || (out.to_string(), "weight (n-1, m+k)".into()));
            }
        }
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaRelation {
    Eq26,
    Eq27,
    Eq28,
    Eq29,
    Eq30,
    /// `Omega_psi(k) Omega_phi(m) = sum_r g(r) gam^(2r) Omega_phi(m+r) Omega_psi(k-r)`.
    Eq38,
}

impl OmegaRelation {
    pub const ALL: [OmegaRelation; 6] = [
        OmegaRelation::Eq26,
        OmegaRelation::Eq27,
        OmegaRelation::Eq28,
        OmegaRelation::Eq29,
        OmegaRelation::Eq30,
        OmegaRelation::Eq38,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OmegaRelation::Eq26 => "eq26",
            OmegaRelation::Eq27 => "eq27",
            OmegaRelation::Eq28 => "eq28",
            OmegaRelation::Eq29 => "eq29",
            OmegaRelation::Eq30 => "eq30",
            OmegaRelation::Eq38 => "eq38",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        OmegaRelation::ALL.into_iter().find(|r| r.name() == s)
    }

    fn stream(&self) -> u64 {
        10 + OmegaRelation::ALL.iter().position(|r| r == self).unwrap() as u64
    }
}

fn psi(k: i64, e: &Element) -> Element {
    omega_psi(k, e)
}

fn phi(k: i64, e: &Element) -> Element {
    omega_phi(k, e)
}

/// Both sides of one component of `rel` on `e`.
pub fn relation_sides(rel: OmegaRelation, k: i64, l: i64, e: &Element) -> (Element, Element) {
    let q2 = Scalar::q_pow(2);
    let gam = Scalar::gamma_pow(1);
    match rel {
        OmegaRelation::Eq26 => {
            // k: Omega index, l: mode of x-
            let lhs = psi(k, &e.left_mul_generator(l));
            let mut rhs = Element::zero();
            if k == -l {
                rhs.add_scaled(e, &Scalar::gamma_pow(k));
            }
            if let Some(hi) = e.max_mode() {
                for r in 0..=(k + hi) {
                    let c = &g_bar(r) * &Scalar::gamma_pow(r);
                    rhs.add_scaled(&psi(k - r, e).left_mul_generator(l + r), &c);
                }
            }
            (lhs, rhs)
        }
        OmegaRelation::Eq27 => {
            let lhs = phi(k, &e.left_mul_generator(l));
            let mut rhs = Element::zero();
            if k == -l {
                rhs.add_scaled(e, &Scalar::gamma_pow(l));
            }
            if let Some(lo) = e.min_mode() {
                for r in 0..=(-lo - k) {
                    let c = &g(r) * &Scalar::gamma_pow(r);
                    rhs.add_scaled(&phi(k + r, e).left_mul_generator(l - r), &c);
                }
            }
            (lhs, rhs)
        }
        OmegaRelation::Eq28 | OmegaRelation::Eq29 => {
            let w = if rel == OmegaRelation::Eq28 { psi } else { phi };
            let lhs = &w(k + 1, &w(l, e)).scale(&q2) - &w(k, &w(l + 1, e));
            let rhs = &w(l, &w(k + 1, e)) - &w(l + 1, &w(k, e)).scale(&q2);
            (lhs, rhs)
        }
        OmegaRelation::Eq30 => {
            let q2g2 = &q2 * &(&gam * &gam);
            let lhs = &phi(k + 1, &psi(l, e)).scale(&q2g2) - &phi(k, &psi(l + 1, e));
            let rhs = &psi(l, &phi(k + 1, e)).scale(&(&gam * &gam)) - &psi(l + 1, &phi(k, e)).scale(&q2);
            (lhs, rhs)
        }
        OmegaRelation::Eq38 => {
            let lhs = psi(k, &phi(l, e));
            let mut rhs = Element::zero();
            if let Some(hi) = e.max_mode() {
                for r in 0..=(k + hi) {
                    let c = &g(r) * &Scalar::gamma_pow(2 * r);
                    rhs.add_scaled(&phi(l + r, &psi(k - r, e)), &c);
                }
            }
            (lhs, rhs)
        }
    }
}

pub fn check_omega_relation(rel: OmegaRelation, spec: &SampleSpec) -> CheckReport {
    let mut rep = CheckReport::new(format!("omega.{}", rel.name()));
    let mut rng = spec.rng(rel.stream());
    let second: Vec<i64> = match rel {
        OmegaRelation::Eq26 | OmegaRelation::Eq27 => spec.modes().collect(),
        _ => spec.idx().collect(),
    };
    for _ in 0..spec.samples {
        let e = random_element(&mut rng, spec.max_len, spec.mode_window);
        for k in spec.idx() {
            for &l in &second {
                let (lhs, rhs) = relation_sides(rel, k, l, &e);
                rep.compare(|| format!("({k},{l}) on {e}"), &lhs, &rhs);
            }
        }
    }
    rep
}

// ---------------------------------------------------------------- Kashiwara

pub fn check_kashiwara_relations(spec: &SampleSpec) -> Vec<CheckReport> {
    let mut mixed = CheckReport::new("kashiwara.mixed");
    let mut pp = CheckReport::new("kashiwara.psi_psi");
    let mut xx = CheckReport::new("kashiwara.x_x");
    let rels: Vec<(i64, i64, KElement, KElement, KElement)> = spec
        .idx()
        .flat_map(|a| spec.idx().map(move |b| (a, b)))
        .map(|(a, b)| (a, b, mixed_relation(a, b), psi_psi_relation(a, b), x_x_relation(a, b)))
        .collect();
    let mut rng = spec.rng(20);
    let zero = Element::zero();
    for _ in 0..spec.samples {
        let e = random_element(&mut rng, spec.max_len, spec.mode_window);
        let mut cache = ActionCache::new(&e);
        for (a, b, m, p, x) in &rels {
            mixed.compare(|| format!("({a},{b}) on {e}"), &cache.act(m), &zero);
            pp.compare(|| format!("({a},{b}) on {e}"), &cache.act(p), &zero);
            xx.compare(|| format!("({a},{b}) on {e}"), &cache.act(x), &zero);
        }
    }
    vec![mixed, pp, xx]
}

/// The mixed relation with the constant `q^2 gam - 1`. Fails off `gam = 1`;
/// kept as a diagnostic, not part of any suite.
pub fn check_mixed_literal(spec: &SampleSpec) -> CheckReport {
    let mut rep = CheckReport::new("kashiwara.mixed_literal");
    let rels: Vec<(i64, i64, KElement)> = spec
        .idx()
        .flat_map(|a| spec.idx().map(move |b| (a, b, mixed_relation_literal(a, b))))
        .collect();
    let mut rng = spec.rng(23);
    for _ in 0..spec.samples {
        let e = random_element(&mut rng, spec.max_len, spec.mode_window);
        let mut cache = ActionCache::new(&e);
        for (a, b, r) in &rels {
            rep.compare(|| format!("({a},{b}) on {e}"), &cache.act(r), &Element::zero());
        }
    }
    rep
}

pub fn check_alpha_bar(spec: &SampleSpec) -> Vec<CheckReport> {
    let mut inv = CheckReport::new("kashiwara.alpha_bar_involution");
    let mut anti = CheckReport::new("kashiwara.alpha_bar_anti_homomorphism");
    let mut rng = spec.rng(21);
    for _ in 0..spec.samples {
        let w1 = random_kword(&mut rng, 4, spec.mode_window);
        let w2 = random_kword(&mut rng, 4, spec.mode_window);
        inv.compare(|| w1.to_string(), &alpha_bar(&alpha_bar(&w1)), &w1);
        anti.compare(
            || format!("{w1} ; {w2}"),
            &alpha_bar(&(&w1 * &w2)),
            &(&alpha_bar(&w2) * &alpha_bar(&w1)),
        );
    }
    vec![inv, anti]
}

pub fn check_quotient(spec: &SampleSpec) -> CheckReport {
    let mut rep = CheckReport::new("kashiwara.quotient");
    let mut rng = spec.rng(22);
    for _ in 0..spec.samples {
        let w = random_kword(&mut rng, 3, spec.mode_window);
        let u = random_kword(&mut rng, 3, spec.mode_window);
        let k = rng.gen_range(spec.idx_window.0..=spec.idx_window.1);
        let case = quotient_case(&w, &u, k);
        rep.expect(
            || format!("w={w} u={u} k={k}"),
            case.holds,
            || (k_act(&case.shifted, &Element::one()).to_string(), k_act(&w, &Element::one()).to_string()),
        );
    }
    rep
}

// ---------------------------------------------------------------- form

pub fn check_form(spec: &SampleSpec) -> Vec<CheckReport> {
    let mut sym = CheckReport::new("form.symmetry");
    let mut adj = CheckReport::new("form.adjointness");
    let mut orth = CheckReport::new("form.weight_orthogonality");
    let mut rng = spec.rng(30);
    for _ in 0..spec.samples {
        let a = random_element(&mut rng, spec.max_len, spec.mode_window);
        let b = random_element(&mut rng, spec.max_len, spec.mode_window);
        sym.compare(|| format!("a={a} b={b}"), &pair(&a, &b), &pair(&b, &a));

        let m = rng.gen_range(spec.mode_window.0..=spec.mode_window.1);
        let a2 = random_element(&mut rng, spec.max_len - 1, spec.mode_window);
        let b2 = random_element(&mut rng, spec.max_len, spec.mode_window);
        adj.compare(
            || format!("m={m} a={a2} b={b2}"),
            &pair(&a2.left_mul_generator(m), &b2),
            &pair(&a2, &omega_psi(-m, &b2)),
        );

        let x = random_monomial(&mut rng, spec.max_len, spec.mode_window);
        let mut y = random_monomial(&mut rng, spec.max_len, spec.mode_window);
        while y.weight() == x.weight() {
            y = random_monomial(&mut rng, spec.max_len, spec.mode_window);
        }
        let cx = random_scalar(&mut rng);
        let cy = random_scalar(&mut rng);
        let v = pair(
            &Element::monomial(x.clone()).scale(&cx),
            &Element::monomial(y.clone()).scale(&cy),
        );
        orth.compare(|| format!("{x} ; {y}"), &v, &Scalar::zero());
    }
    vec![sym, adj, orth]
}

pub fn check_length_one_pairing(window: (i64, i64)) -> CheckReport {
    let mut rep = CheckReport::new("form.length_one");
    for n in window.0..=window.1 {
        for m in window.0..=window.1 {
            let expected = if n == m { Scalar::gamma_pow(-n) } else { Scalar::zero() };
            let got = pair(&Element::generator(n), &Element::generator(m));
            rep.compare(|| format!("({n},{m})"), &got, &expected);
        }
    }
    rep
}

pub fn check_gram_probes() -> CheckReport {
    let mut rep = CheckReport::new("form.nondegeneracy");
    for n in -2..=2 {
        match gram(1, n, -2, 2) {
            Ok(gm) => {
                let expected = vec![vec![Scalar::gamma_pow(-n)]];
                rep.expect(|| format!("gram(1,{n})"), gm.entries == expected, || (gm.to_text(), format!("[{}]", expected[0][0])))
            }
            Err(e) => rep.expect(|| format!("gram(1,{n})"), false, || (e.to_string(), String::new())),
        }
    }
    let points = default_eval_points();
    let result = gram(2, 0, -2, 2).and_then(|gm| gram_rank_report(&gm, &points));
    match result {
        Ok(r) => {
            rep.expect(
                || "gram(2,0,-2..2) det".into(),
                r.symbolic_det_nonzero() == Some(true),
                || (format!("{:?}", r.symbolic_det), "nonzero".into()),
            );
            for (p, rank) in &r.ranks {
                rep.compare(|| format!("gram(2,0,-2..2) rank at q={p}"), rank, &3);
            }
        }
        Err(e) => rep.expect(|| "gram(2,0,-2..2)".into(), false, || (e.to_string(), String::new())),
    }
    rep
}

// ---------------------------------------------------------------- identity

pub fn check_identity(order: usize) -> CheckReport {
    let mut rep = CheckReport::new("series.identity");
    match check_identity_18(order) {
        Ok(r) => {
            rep.expect(|| format!("order {order}"), r.equal, || {
                (format!("first mismatch {:?}", r.first_mismatch), "none".into())
            });
            for k in 1..=order {
                let expected = &(Scalar::one() - Scalar::q_pow(4)) * &Scalar::q_pow(-2 * k as i64);
                rep.compare(|| format!("coefficient {k}"), r.exponential.coeff(k), &expected);
            }
        }
        Err(e) => rep.expect(|| format!("order {order}"), false, || (e.to_string(), String::new())),
    }
    rep
}

// ---------------------------------------------------------------- Verma

pub fn check_verma_ideal(spec: &SampleSpec) -> CheckReport {
    let mut rep = CheckReport::new("verma.ideal");
    let one = Element::one();
    for lam in -2..=2 {
        for s in spec.idx() {
            let v = act_xplus(lam, s, &one);
            rep.expect(|| format!("x+({s}) v, lam={lam}"), matches!(&v, Ok(x) if x.is_zero()), || (format!("{v:?}"), "0".into()));
            if s != 0 {
                let v = act_a(s, &one);
                rep.expect(|| format!("a({s}) v, lam={lam}"), matches!(&v, Ok(x) if x.is_zero()), || (format!("{v:?}"), "0".into()));
            }
        }
        rep.compare(|| format!("K v, lam={lam}"), &act_k(lam, &one), &Element::from_scalar(Scalar::q_pow(lam)));
    }
    rep
}

pub fn check_xplus_single(lams: &[i64], window: (i64, i64)) -> CheckReport {
    let mut rep = CheckReport::new("verma.xplus_single");
    for &lam in lams {
        for m in window.0..=window.1 {
            let got = act_xplus(lam, -m, &Element::generator(m)).unwrap_or_else(|_| Element::zero());
            rep.compare(|| format!("lam={lam} m={m}"), &got, &Element::from_scalar(q_integer(lam)));
        }
    }
    rep
}

pub fn check_dual_path(lams: &[i64], js: (i64, i64), max_len: usize, window: (i64, i64)) -> CheckReport {
    let mut rep = CheckReport::new("verma.dual_path");
    let monomials = all_monomials(max_len, window);
    for &lam in lams {
        for m in &monomials {
            let p = Element::monomial(m.clone());
            for j in js.0..=js.1 {
                let direct = act_psi(lam, j, &p);
                match psi_expansion_oracle(lam, j, &p) {
                    Ok(oracle) => rep.compare(|| format!("lam={lam} j={j} on {m}"), &direct, &oracle),
                    Err(e) => rep.expect(|| format!("lam={lam} j={j} on {m}"), false, || (e.to_string(), String::new())),
                }
            }
        }
    }
    rep
}

/// Commutators on sampled payloads at level zero, and the `Omega` route to `x+`.
pub fn check_drinfeld(spec: &SampleSpec) -> Vec<CheckReport> {
    let mut aa = CheckReport::new("verma.a_a_commute");
    let mut ax = CheckReport::new("verma.a_x_commutator");
    let mut xx = CheckReport::new("verma.xplus_xminus_commutator");
    let mut om = CheckReport::new("verma.xplus_via_omega");
    let mut rng = spec.rng(40);
    let t = q_minus_qinv();
    let nonzero = |r: &mut ChaCha8Rng| loop {
        let k = r.gen_range(-3i64..=3);
        if k != 0 {
            return k;
        }
    };
    for _ in 0..spec.samples {
        let lam = rng.gen_range(-2i64..=2);
        let p = random_element(&mut rng, 2, (-2, 2)).at_gamma_one();
        let k = nonzero(&mut rng);
        let l = nonzero(&mut rng);
        let n = rng.gen_range(-2i64..=2);
        let s = rng.gen_range(-3i64..=3);

        let kl = act_a(k, &act_a(l, &p).unwrap()).unwrap();
        let lk = act_a(l, &act_a(k, &p).unwrap()).unwrap();
        aa.compare(|| format!("k={k} l={l} on {p}"), &kl, &lk);

        let comm = &act_a(k, &p.left_mul_generator(n)).unwrap() - &act_a(k, &p).unwrap().left_mul_generator(n);
        let expected = p.left_mul_generator(n + k).scale(&q_integer(2 * k).scale(&-rat(1, k)));
        ax.compare(|| format!("k={k} n={n} on {p}"), &comm, &expected);

        let comm = &act_xplus(lam, s, &p.left_mul_generator(n)).unwrap()
            - &act_xplus(lam, s, &p).unwrap().left_mul_generator(n);
        let diff = &act_psi(lam, s + n, &p) - &act_phi(lam, s + n, &p);
        let lhs = comm.map_scalars(|c| c * &t);
        xx.compare(|| format!("lam={lam} s={s} n={n} on {p}"), &lhs, &diff);

        om.compare(
            || format!("lam={lam} s={s} on {p}"),
            &act_xplus(lam, s, &p).unwrap(),
            &xplus_via_omega(lam, s, &p).unwrap(),
        );
    }
    vec![aa, ax, xx, om]
}

pub fn check_singular() -> CheckReport {
    let mut rep = CheckReport::new("verma.singular");
    for m in -2..=2 {
        match singular_probe(0, 1, m, -2, 2) {
            Ok(r) => rep.expect(
                || format!("lam=0 n=1 m={m}"),
                r.kernel_dim == 1 && r.certified == vec![Monomial::new(vec![m])],
                || (r.to_json().to_string(), "certified x-(m) v".into()),
            ),
            Err(e) => rep.expect(|| format!("lam=0 n=1 m={m}"), false, || (e.to_string(), String::new())),
        }
    }
    for lam in [1, 2] {
        for n in [1usize, 2] {
            for m in [-1, 0, 1] {
                match singular_probe(lam, n, m, -2, 2) {
                    Ok(r) => rep.expect(
                        || format!("lam={lam} n={n} m={m}"),
                        r.kernel_dim == 0 && r.stationary,
                        || (r.to_json().to_string(), "kernelDim 0".into()),
                    ),
                    Err(e) => rep.expect(|| format!("lam={lam} n={n} m={m}"), false, || (e.to_string(), String::new())),
                }
            }
        }
    }
    rep
}

/// The large-`s` constraint has weights `q^(-2(l - l0))` for every tested
/// `m`, window of `l` and weight, and is `s`-independent.
pub fn check_lemma62() -> CheckReport {
    let mut rep = CheckReport::new("verma.lemma62");
    for lam in [0, 1, 2] {
        for m in -2..=2 {
            for l_from in -2..=1 {
                let coeffs: Vec<Rational> = vec![rat(1, 1), rat(-1, 1), rat(2, 1)];
                match lemma62_scan(lam, &coeffs, l_from, m, 0, 12) {
                    Ok(r) => {
                        let expected: Vec<(i64, Scalar)> = (0..3)
                            .map(|i| (l_from + i, Scalar::q_pow(-2 * i)))
                            .collect();
                        rep.expect(
                            || format!("lam={lam} m={m} l_from={l_from}"),
                            r.s_independent && r.weights == expected,
                            || (r.to_json().to_string(), "weights q^(-2i), s-independent".into()),
                        );
                    }
                    Err(e) => rep.expect(|| format!("lam={lam} m={m}"), false, || (e.to_string(), String::new())),
                }
            }
        }
    }
    // A_l proportional to q^(2l) on l = 0, 1 satisfies the constraint
    let a = [Scalar::one(), -Scalar::q_pow(2)];
    let v = &normal_form(&[0, 1]).scale(&a[0]) + &normal_form(&[1, 0]).scale(&a[1]);
    for s in 2..=8 {
        let got = act_xplus(1, s, &v).unwrap_or_else(|_| Element::generator(0));
        rep.compare(|| format!("weighted vector s={s}"), &got, &Element::zero());
    }
    rep
}
