//! The crossed product of truncated series with monomial automorphisms, and
//! the R-operators built in it.
//!
//! An element is a finite sum `Σ u_g · g` with the rule `g · v = g(v) · g`, so
//! `(u g)(v h) = u g(v) (g∘h)`. The outer generator `F` of the tetrahedral
//! automorphism lives here as the group element `F_ijk`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::autom::{make_f, w_monomial, wt_monomial, AutKey, MonomialAut};
use crate::coeff::{Params, QContext, Scalar, LAMBDA, MU, NU};
use crate::report::{CheckReport, Checker, Mutation};
use crate::series::{dilog_of_monomial, invert_unital, DilogSpec};
use crate::torus::{a, b, make_qweyl, TorusAlgebra, TorusElement};
use crate::Error;

type El<K> = TorusElement<K>;

#[derive(Clone)]
pub struct CrossedElement<K: Scalar> {
    alg: Arc<TorusAlgebra<K>>,
    terms: BTreeMap<AutKey, (MonomialAut<K>, El<K>)>,
    order: Option<u32>,
}

impl<K: Scalar> std::fmt::Debug for CrossedElement<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .terms
            .values()
            .map(|(g, u)| format!("[{}]·{}", u, g.label()))
            .collect();
        write!(
            f,
            "{}",
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        )
    }
}

impl<K: Scalar> PartialEq for CrossedElement<K> {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl<K: Scalar> CrossedElement<K> {
    pub fn zero(alg: &Arc<TorusAlgebra<K>>, order: Option<u32>) -> Self {
        CrossedElement {
            alg: alg.clone(),
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn from_series(u: &El<K>) -> Self {
        Self::term(u, &MonomialAut::identity(u.algebra()))
    }

    pub fn from_aut(g: &MonomialAut<K>, order: Option<u32>) -> Self {
        Self::term(&El::one(g.algebra(), order), g)
    }

    /// `u · g`.
    pub fn term(u: &El<K>, g: &MonomialAut<K>) -> Self {
        let mut out = Self::zero(u.algebra(), u.order());
        if !u.is_zero() {
            out.terms.insert(g.key(), (g.clone(), u.clone()));
        }
        out
    }

    pub fn one(alg: &Arc<TorusAlgebra<K>>, order: Option<u32>) -> Self {
        Self::from_series(&El::one(alg, order))
    }

    pub fn algebra(&self) -> &Arc<TorusAlgebra<K>> {
        &self.alg
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn components(&self) -> impl Iterator<Item = (&MonomialAut<K>, &El<K>)> {
        self.terms.values().map(|(g, u)| (g, u))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(|(_, u)| u.len()).sum()
    }

    fn insert(&mut self, g: &MonomialAut<K>, u: El<K>) -> Result<(), Error> {
        let key = g.key();
        match self.terms.remove(&key) {
            Some((g0, v)) => {
                let s = v.add(&u)?;
                if !s.is_zero() {
                    self.terms.insert(key, (g0, s));
                }
            }
            None => {
                if !u.is_zero() {
                    self.terms.insert(key, (g.clone(), u));
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if !TorusAlgebra::same(&self.alg, &other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.clone();
        out.order = match (self.order, other.order) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        for (g, u) in other.components() {
            out.insert(g, u.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for (_, u) in out.terms.values_mut() {
            *u = u.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    /// `(u g)(v h) = u g(v) (g∘h)`.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if !TorusAlgebra::same(&self.alg, &other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let order = match (self.order, other.order) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        let mut out = Self::zero(&self.alg, order);
        for (g, u) in self.components() {
            for (h, v) in other.components() {
                let gv = g.apply(v)?;
                let prod = u.truncate(order).mul(&gv)?;
                out.insert(&g.compose(h)?, prod)?;
            }
        }
        Ok(out)
    }

    /// Left multiplication by a plain series.
    pub fn lmul_series(&self, u: &El<K>) -> Result<Self, Error> {
        Self::from_series(u).mul(self)
    }

    /// Right multiplication by a plain series.
    pub fn rmul_series(&self, u: &El<K>) -> Result<Self, Error> {
        self.mul(&Self::from_series(u))
    }

    /// First differing (automorphism, term) in key order.
    pub fn first_difference(&self, other: &Self) -> Option<(String, crate::torus::Key, K, K)> {
        let mut keys: Vec<&AutKey> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        let mut best: Option<(String, crate::torus::Key, K, K)> = None;
        for key in keys {
            let zero_a;
            let zero_b;
            let (label, x) = match self.terms.get(key) {
                Some((g, u)) => (g.label().to_string(), u),
                None => {
                    zero_a = El::zero(&self.alg, self.order);
                    (other.terms[key].0.label().to_string(), &zero_a)
                }
            };
            let y = match other.terms.get(key) {
                Some((_, v)) => v,
                None => {
                    zero_b = El::zero(&self.alg, other.order);
                    &zero_b
                }
            };
            if let Some((k, l, r)) = x.first_difference(y) {
                let better = best.as_ref().is_none_or(|(_, bk, _, _)| k.degree() < bk.degree());
                if better {
                    best = Some((label, k, l, r));
                }
            }
        }
        best
    }
}

/// Records a crossed-product comparison in a checker.
pub fn crossed_eq<K: Scalar>(c: &mut Checker, label: &str, lhs: &CrossedElement<K>, rhs: &CrossedElement<K>) -> bool {
    crossed_eq_at(c, label, "", lhs, rhs)
}

/// As [`crossed_eq`], prefixing the witness key with a location such as a matrix entry.
pub fn crossed_eq_at<K: Scalar>(
    c: &mut Checker,
    label: &str,
    at: &str,
    lhs: &CrossedElement<K>,
    rhs: &CrossedElement<K>,
) -> bool {
    c.add_terms(lhs.num_terms() + rhs.num_terms());
    match lhs.first_difference(rhs) {
        None => {
            c.assert(label, true, "", "");
            true
        }
        Some((key, k, l, r)) => {
            let alg = lhs.algebra();
            let mut x = El::monomial(alg, l, k.p, k.e, None);
            let mut y = El::monomial(alg, r, k.p, k.e, None);
            if x.is_zero() {
                x = El::zero(alg, None);
            }
            if y.is_zero() {
                y = El::zero(alg, None);
            }
            let key = if at.is_empty() { key } else { format!("{at} {key}") };
            c.torus_eq_keyed(label, &key, &x, &y);
            false
        }
    }
}

/// Instances for the arbitrary series slot `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FChoice {
    /// `f = 1`.
    Const,
    /// `f(t) = t^p`.
    Power(i32),
    /// `f(t) = ⟨τ t; q⟩`.
    TauDilog,
    /// `f(t) = ⟨q^{-(r+1)m(m+1)/2} λ^l t^m; q^{-(r+1)m^2}⟩`.
    Ru3 { mhat: u32, l: i32 },
}

impl FChoice {
    pub const MENU: [FChoice; 4] = [FChoice::Const, FChoice::Power(1), FChoice::Power(2), FChoice::TauDilog];

    pub fn name(&self) -> String {
        match self {
            FChoice::Const => "1".into(),
            FChoice::Power(1) => "wt".into(),
            FChoice::Power(p) => format!("wt^{p}"),
            FChoice::TauDilog => "dilog(tau*wt)".into(),
            FChoice::Ru3 { mhat, l } => format!("ru3(mhat={mhat},l={l})"),
        }
    }

    pub fn parse(s: &str) -> Option<FChoice> {
        match s {
            "1" | "one" | "const" => Some(FChoice::Const),
            "wt" | "w" => Some(FChoice::Power(1)),
            "wt^2" | "wt2" | "w2" => Some(FChoice::Power(2)),
            "dilog" | "dilog(tau*wt)" | "tau" => Some(FChoice::TauDilog),
            _ => None,
        }
    }

    /// Evaluates `f(t)` for the monomial `t`, with spectral slot `slot`.
    pub fn eval<K: Scalar>(&self, t: &El<K>, slot: Params, r: i32, order: Option<u32>) -> Result<El<K>, Error> {
        let alg = t.algebra();
        match *self {
            FChoice::Const => Ok(El::one(alg, order)),
            FChoice::Power(p) => Ok(t.monomial_pow(p)?.truncate(order)),
            FChoice::TauDilog => dilog_of_monomial(&t.scale_params(Params::tau(1)), 1, order),
            FChoice::Ru3 { mhat, l } => {
                let d = -((r + 1) as i64);
                let m = mhat as i64;
                let spec = DilogSpec::new(mhat, l, slot, 1);
                let tau = spec.tau_per_unit() * slot.degree() as i32;
                let arg = t
                    .monomial_pow_params(mhat as i32, slot.scale(l) + Params::tau(tau * mhat as i32))?
                    .scale(&alg.ctx().q_pow(d * m * (m + 1) / 2));
                dilog_of_monomial(&arg, d * m * m, order)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RForm {
    /// `f(w~) ⟨λw; q^{r+1}⟩ F` (left) or `F f(w) ⟨λw~; q^{r+1}⟩` (right).
    Rffs { s: i32, r: i32, f: FChoice, left: bool },
    /// `F g(q^{-α1β1} a^α b^β)` with `Q = q^{-(α1+α3)β1}`.
    Rgl {
        alpha: [i32; 3],
        beta: [i32; 3],
        m: u32,
        k: i32,
    },
    /// `F g(q^{-αβ} a1^α a2^-α a3^δ b1^β b3^-β) f(same with hats)`.
    Rgfl {
        g: [i32; 3],
        f: [i32; 3],
        m: u32,
        k: i32,
        mhat: u32,
        l: i32,
    },
    /// `± ⟨λw; q^{r+1}⟩ F ⟨λw; q^{r+1}⟩^{-1}`.
    Rfss { s: i32, r: i32, sign: i8 },
}

/// A template for one R-operator, instantiated on a triple with a spectral slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RSpec {
    pub triple: (usize, usize, usize),
    pub spectral: Params,
    pub form: RForm,
    pub mutation: Option<Mutation>,
}

impl RForm {
    /// The general form at the specialization matching `w~^{(s)}` and `q^{-(r+1)} w^{(s)}`.
    pub fn wwab(s: i32, r: i32, m: u32, k: i32, mhat: u32, l: i32) -> RForm {
        RForm::Rgfl {
            g: [-s - 1, 1, s - r],
            f: [r - s, 1, s + 1],
            m,
            k,
            mhat,
            l,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            RForm::Rffs { r, .. } | RForm::Rfss { r, .. } => {
                if r == -1 {
                    return Err(Error::DegenerateBase);
                }
            }
            RForm::Rgl { alpha, beta, m, .. } => {
                if alpha[0] + alpha[1] != 0 || beta[1] != 0 || beta[0] + beta[2] != 0 {
                    return Err(Error::Invalid("need α1 + α2 = 0, β2 = 0, β1 + β3 = 0".into()));
                }
                if m == 0 {
                    return Err(Error::Invalid("m must be positive".into()));
                }
                if (alpha[0] + alpha[2]) * beta[0] == 0 {
                    return Err(Error::DegenerateBase);
                }
            }
            RForm::Rgfl { g, f, m, mhat, .. } => {
                let (al, be, de) = (g[0], g[1], g[2]);
                let (ah, bh, dh) = (f[0], f[1], f[2]);
                if al * bh + dh * be != 0 || ah * be + de * bh != 0 {
                    return Err(Error::Invalid("need αβ^ + δ^β = 0 and α^β + δβ^ = 0".into()));
                }
                if m == 0 || mhat == 0 {
                    return Err(Error::Invalid("m and m^ must be positive".into()));
                }
                if (al + de) * be == 0 || (ah + dh) * bh == 0 {
                    return Err(Error::DegenerateBase);
                }
            }
        }
        Ok(())
    }
}

/// `q^{-α1β1} a_i^α1 a_j^α2 a_k^α3 b_i^β1 b_j^β2 b_k^β3` in written order.
fn general_argument<K: Scalar>(
    alg: &Arc<TorusAlgebra<K>>,
    (i, j, k): (usize, usize, usize),
    alpha: [i32; 3],
    beta: [i32; 3],
) -> El<K> {
    let word = El::word(
        alg,
        &[
            (a(i), alpha[0]),
            (a(j), alpha[1]),
            (a(k), alpha[2]),
            (b(i), beta[0]),
            (b(j), beta[1]),
            (b(k), beta[2]),
        ],
    );
    word.scale(&alg.ctx().q_pow(-(alpha[0] as i64) * beta[0] as i64))
}

/// `⟨Q^{m(m-1)/2} slot^k t^m; Q^{m^2}⟩` with τ lifting for `k <= 0`,
/// weighted by the slot degree.
fn graded_family<K: Scalar>(
    t: &El<K>,
    base_d: i64,
    m: u32,
    k: i32,
    slot: Params,
    mutation: Option<Mutation>,
    order: Option<u32>,
) -> Result<El<K>, Error> {
    let mut spec = DilogSpec::new(m, k, slot, base_d);
    match mutation {
        Some(Mutation::BaseTimesTwo) => spec.base_d = 2 * base_d,
        Some(Mutation::BasePlusOne) => spec.base_override = Some(base_d * (m * m) as i64 + 1),
        _ => {}
    }
    let tau = spec.tau_per_unit() * slot.degree() as i32;
    let lifted = t.scale_params(Params::tau(tau));
    dilog_of_monomial(&spec.argument(&lifted)?, spec.base_exponent(), order)
}

fn dil_w<K: Scalar>(
    t: &El<K>,
    slot: Params,
    r: i32,
    mutation: Option<Mutation>,
    order: Option<u32>,
) -> Result<El<K>, Error> {
    let base = match mutation {
        Some(Mutation::BaseR) => r as i64,
        _ => (r + 1) as i64,
    };
    dilog_of_monomial(&t.scale_params(slot), base, order)
}

impl RSpec {
    pub fn new(triple: (usize, usize, usize), spectral: Params, form: RForm) -> Self {
        RSpec {
            triple,
            spectral,
            form,
            mutation: None,
        }
    }

    pub fn at(&self, triple: (usize, usize, usize), spectral: Params) -> Self {
        RSpec {
            triple,
            spectral,
            ..*self
        }
    }

    fn f_aut<K: Scalar>(&self, alg: &Arc<TorusAlgebra<K>>) -> Result<MonomialAut<K>, Error> {
        let (i, j, k) = self.triple;
        make_f(alg, i, j, k)
    }

    /// The series `S` with `R = F · S`.
    pub fn series_right<K: Scalar>(&self, alg: &Arc<TorusAlgebra<K>>, order: Option<u32>) -> Result<El<K>, Error> {
        self.form.validate()?;
        let t = self.triple;
        let lam = self.spectral;
        match self.form {
            RForm::Rffs { s, r, f, .. } => {
                let w = w_monomial(alg, t, r, s);
                let wt = wt_monomial(alg, t, r, s);
                f.eval(&w, lam, r, order)?
                    .mul(&dil_w(&wt, lam, r, self.mutation, order)?)
            }
            RForm::Rgl { alpha, beta, m, k } => {
                let arg = general_argument(alg, t, alpha, beta);
                let d = -((alpha[0] + alpha[2]) as i64) * beta[0] as i64;
                graded_family(&arg, d, m, k, lam, self.mutation, order)
            }
            RForm::Rgfl { g, f, m, k, mhat, l } => {
                let ga = general_argument(alg, t, [g[0], -g[0], g[2]], [g[1], 0, -g[1]]);
                let fa = general_argument(alg, t, [f[0], -f[0], f[2]], [f[1], 0, -f[1]]);
                let dg = -((g[0] + g[2]) as i64) * g[1] as i64;
                let df = -((f[0] + f[2]) as i64) * f[1] as i64;
                let gs = graded_family(&ga, dg, m, k, lam, self.mutation, order)?;
                let fs = graded_family(&fa, df, mhat, l, lam, None, order)?;
                gs.mul(&fs)
            }
            RForm::Rfss { s, r, sign } => {
                let w = w_monomial(alg, t, r, s);
                let wt = wt_monomial(alg, t, r, s);
                let dw = dil_w(&w, lam, r, None, order)?;
                let dwt = dil_w(&wt, lam, r, None, order)?;
                let inv = if self.mutation == Some(Mutation::FOne) {
                    El::one(alg, order)
                } else {
                    invert_unital(&dw, order)?
                };
                Ok(dwt.mul(&inv)?.scale(&K::from_int(sign as i64)))
            }
        }
    }

    /// The operator itself, built literally in the displayed form.
    pub fn build<K: Scalar>(&self, alg: &Arc<TorusAlgebra<K>>, order: Option<u32>) -> Result<CrossedElement<K>, Error> {
        self.form.validate()?;
        let f = self.f_aut(alg)?;
        let fe = CrossedElement::from_aut(&f, order);
        let t = self.triple;
        let lam = self.spectral;
        match self.form {
            RForm::Rffs {
                s,
                r,
                f: fc,
                left: true,
            } => {
                let (mut w, mut wt) = (w_monomial(alg, t, r, s), wt_monomial(alg, t, r, s));
                if self.mutation == Some(Mutation::SwapW) {
                    std::mem::swap(&mut w, &mut wt);
                }
                let series = fc
                    .eval(&wt, lam, r, order)?
                    .mul(&dil_w(&w, lam, r, self.mutation, order)?)?;
                CrossedElement::from_series(&series).mul(&fe)
            }
            RForm::Rfss { s, r, sign } => {
                let w = w_monomial(alg, t, r, s);
                let dw = dil_w(&w, lam, r, None, order)?;
                let inv = if self.mutation == Some(Mutation::FOne) {
                    El::one(alg, order)
                } else {
                    invert_unital(&dw, order)?
                };
                let left = dw.scale(&K::from_int(sign as i64));
                CrossedElement::from_series(&left).mul(&fe)?.rmul_series(&inv)
            }
            _ => fe.rmul_series(&self.series_right(alg, order)?),
        }
    }
}

type Positions = [((usize, usize, usize), Params); 4];

fn tetra_positions() -> (Positions, Positions) {
    let l = Params::single(LAMBDA, 1);
    let m = Params::single(MU, 1);
    let n = Params::single(NU, 1);
    (
        [((1, 2, 3), l), ((1, 4, 5), l + m), ((2, 4, 6), n), ((3, 5, 6), m)],
        [((3, 5, 6), n), ((2, 4, 6), m), ((1, 4, 5), l + n), ((1, 2, 3), l)],
    )
}

fn product<K: Scalar>(xs: &[CrossedElement<K>]) -> Result<CrossedElement<K>, Error> {
    let mut acc = xs[0].clone();
    for x in &xs[1..] {
        acc = acc.mul(x)?;
    }
    Ok(acc)
}

/// Tetrahedron equation `R123(λ) R145(λμ) R246(ν) R356(μ) = R356(ν) R246(μ) R145(λν) R123(λ)`
/// on `Q_q(6)`, plus the group part and the series identity left after
/// pulling every `F` to the left.
pub fn verify_tetrahedron<K: Scalar>(ctx: &Arc<QContext<K>>, name: &str, template: RSpec, order: u32) -> CheckReport {
    let mut c = Checker::new(name, Some(order));
    c.param("q", ctx.mode().to_string())
        .param("form", format!("{:?}", template.form));
    if let Some(mu) = template.mutation {
        c.param("mutate", mu.tag());
    }
    if let Err(e) = tetra_body(&mut c, ctx, template, order) {
        c.error("construction", &e);
    }
    c.finish()
}

fn tetra_body<K: Scalar>(c: &mut Checker, ctx: &Arc<QContext<K>>, template: RSpec, n: u32) -> Result<(), Error> {
    let alg = make_qweyl(ctx.clone(), 6)?;
    let ord = Some(n);
    let (lhs_pos, rhs_pos) = tetra_positions();
    let build = |pos: &[((usize, usize, usize), Params); 4]| -> Result<Vec<CrossedElement<K>>, Error> {
        pos.iter().map(|&(t, p)| template.at(t, p).build(&alg, ord)).collect()
    };
    let lhs = product(&build(&lhs_pos)?)?;
    let rhs = product(&build(&rhs_pos)?)?;
    c.param("lhs_terms", lhs.num_terms());
    crossed_eq(c, "tetrahedron", &lhs, &rhs);

    // group components
    let fs = |pos: &[((usize, usize, usize), Params); 4]| -> Result<MonomialAut<K>, Error> {
        let mut acc = MonomialAut::identity(&alg);
        for &((i, j, k), _) in pos {
            acc = acc.compose(&make_f(&alg, i, j, k)?)?;
        }
        Ok(acc)
    };
    let (phi, phi2) = (fs(&lhs_pos)?, fs(&rhs_pos)?);
    c.assert(
        "group_part",
        phi.equals(&phi2),
        format!("{:?}", phi2.key()),
        format!("{:?}", phi.key()),
    );

    // pulled through: R = F S, so F1 S1 F2 S2 F3 S3 F4 S4 = Φ · (F4F3F2)(S1) (F4F3)(S2) F4(S3) S4
    let pulled = |pos: &[((usize, usize, usize), Params); 4]| -> Result<Vec<El<K>>, Error> {
        let fs: Vec<MonomialAut<K>> = pos
            .iter()
            .map(|&((i, j, k), _)| make_f(&alg, i, j, k))
            .collect::<Result<_, _>>()?;
        let mut out = Vec::new();
        for (idx, &(t, p)) in pos.iter().enumerate() {
            let mut s = template.at(t, p).series_right(&alg, ord)?;
            for f in fs[idx + 1..].iter() {
                s = f.apply(&s)?;
            }
            out.push(s);
        }
        Ok(out)
    };
    let ls = pulled(&lhs_pos)?;
    let rs = pulled(&rhs_pos)?;
    let mut lp = ls[0].clone();
    for s in &ls[1..] {
        lp = lp.mul(s)?;
    }
    let mut rp = rs[0].clone();
    for s in &rs[1..] {
        rp = rp.mul(s)?;
    }
    c.torus_eq("pulled_series", &lp, &rp);

    // structure of the pulled arguments for the general forms
    type Pulled = Vec<([i32; 3], [i32; 3], &'static str)>;
    let args: Option<Pulled> = match template.form {
        RForm::Rgl { alpha, beta, .. } => Some(vec![(alpha, beta, "")]),
        RForm::Rgfl { g, f, .. } => Some(vec![
            ([g[0], -g[0], g[2]], [g[1], 0, -g[1]], ""),
            ([f[0], -f[0], f[2]], [f[1], 0, -f[1]], "~"),
        ]),
        _ => None,
    };
    if let Some(args) = args {
        let mut triples = Vec::new();
        for (al, be, tag) in &args {
            let pull = |pos: &[((usize, usize, usize), Params); 4]| -> Result<Vec<El<K>>, Error> {
                let fs: Vec<MonomialAut<K>> = pos
                    .iter()
                    .map(|&((i, j, k), _)| make_f(&alg, i, j, k))
                    .collect::<Result<_, _>>()?;
                let mut out = Vec::new();
                for (idx, &(t, _)) in pos.iter().enumerate() {
                    let mut s = general_argument(&alg, t, *al, *be);
                    for f in fs[idx + 1..].iter() {
                        s = f.apply(&s)?;
                    }
                    out.push(s);
                }
                Ok(out)
            };
            let l = pull(&lhs_pos)?;
            let r = pull(&rhs_pos)?;
            let (x, t, z, y) = (&l[0], &l[1], &l[2], &l[3]);
            let (z2, y2, t2, x2) = (&r[0], &r[1], &r[2], &r[3]);
            c.torus_eq(&format!("X{tag}=X{tag}'"), x, x2);
            c.torus_eq(&format!("Y{tag}=Y{tag}'"), y, y2);
            c.torus_eq(&format!("Z{tag}=Z{tag}'"), z, z2);
            c.torus_eq(&format!("T{tag}=X{tag}Y{tag}"), t, &x.mul(y)?);
            c.torus_eq(&format!("T{tag}'=Z{tag}X{tag}"), t2, &z.mul(x)?);
            let lq = -((al[0] + al[2]) as i64) * be[0] as i64;
            // YX = Q XY, XZ = Q ZX, ZY = Q YZ
            let yx = y.commute_qpower(x)?;
            let xz = x.commute_qpower(z)?;
            let zy = z.commute_qpower(y)?;
            c.assert(
                &format!("XYZ{tag}_relations"),
                yx == lq && xz == lq && zy == lq,
                format!("({lq},{lq},{lq})"),
                format!("({yx},{xz},{zy})"),
            );
            triples.push([x.clone(), y.clone(), z.clone()]);
        }
        if triples.len() == 2 {
            let mut ok = true;
            for u in &triples[0] {
                for v in &triples[1] {
                    ok &= u.commute_qpower(v)? == 0;
                }
            }
            c.assert("triples_commute", ok, true, ok);
        }
    }
    Ok(())
}

/// `f(w~)⟨λw⟩F = F f(w)⟨λw~⟩`, plus `F w = w~ F` and `w w~ = w~ w`.
pub fn verify_left_right_forms<K: Scalar>(
    ctx: &Arc<QContext<K>>,
    s: i32,
    r: i32,
    f: FChoice,
    order: u32,
    mutation: Option<Mutation>,
) -> CheckReport {
    let mut c = Checker::new("left_right_forms", Some(order));
    c.param("s", s)
        .param("r", r)
        .param("f", f.name())
        .param("q", ctx.mode().to_string());
    let body = |c: &mut Checker| -> Result<(), Error> {
        let alg = make_qweyl(ctx.clone(), 3)?;
        let ord = Some(order);
        let lam = Params::single(LAMBDA, 1);
        let mut left = RSpec::new((1, 2, 3), lam, RForm::Rffs { s, r, f, left: true });
        left.mutation = mutation;
        let right = RSpec::new((1, 2, 3), lam, RForm::Rffs { s, r, f, left: false });
        crossed_eq(c, "left=right", &left.build(&alg, ord)?, &right.build(&alg, ord)?);
        let fa = make_f(&alg, 1, 2, 3)?;
        let fe = CrossedElement::from_aut(&fa, ord);
        let w = w_monomial(&alg, (1, 2, 3), r, s);
        let wt = wt_monomial(&alg, (1, 2, 3), r, s);
        crossed_eq(c, "Fw=wtF", &fe.rmul_series(&w)?, &fe.lmul_series(&wt)?);
        let cw = w.commute_qpower(&wt)?;
        c.assert("w_wt_commute", cw == 0, 0, cw);
        Ok(())
    };
    if let Err(e) = body(&mut c) {
        c.error("construction", &e);
    }
    c.finish()
}

/// `R^2 = 1` for the involutive operator, its tetrahedron equation, and the
/// identification `1/⟨λt; q^{r+1}⟩ = ⟨q^{-r-1}λt; q^{-(r+1)}⟩`.
pub fn verify_involution_and_tetra<K: Scalar>(
    ctx: &Arc<QContext<K>>,
    s: i32,
    r: i32,
    sign: i8,
    order: u32,
    mutation: Option<Mutation>,
) -> CheckReport {
    let mut c = Checker::new("involution", Some(order));
    c.param("s", s)
        .param("r", r)
        .param("sign", sign)
        .param("q", ctx.mode().to_string());
    if let Some(mu) = mutation {
        c.param("mutate", mu.tag());
    }
    let body = |c: &mut Checker| -> Result<(), Error> {
        let alg = make_qweyl(ctx.clone(), 3)?;
        let ord = Some(order);
        let lam = Params::single(LAMBDA, 1);
        let mut spec = RSpec::new((1, 2, 3), lam, RForm::Rfss { s, r, sign });
        spec.mutation = mutation;
        let rr = spec.build(&alg, ord)?;
        crossed_eq(c, "R^2=1", &rr.mul(&rr)?, &CrossedElement::one(&alg, ord));
        crossed_eq(
            c,
            "displayed_forms",
            &rr,
            &CrossedElement::from_aut(&make_f(&alg, 1, 2, 3)?, ord).rmul_series(&spec.series_right(&alg, ord)?)?,
        );
        // f(t) = ±1/⟨λt; q^{r+1}⟩ against the reflected dilogarithm and the f-family at m^ = l = 1
        let w = w_monomial(&alg, (1, 2, 3), r, s);
        let inv = invert_unital(&dil_w(&w, lam, r, None, ord)?, ord)?;
        let refl = dilog_of_monomial(
            &w.scale_params(lam).scale(&ctx.q_pow(-(r as i64) - 1)),
            -(r as i64) - 1,
            ord,
        )?;
        c.torus_eq("inverse_dilog", &inv, &refl);
        let fam = FChoice::Ru3 { mhat: 1, l: 1 }.eval(&w, lam, r, ord)?;
        c.torus_eq("matches_f_family", &fam, &refl);
        Ok(())
    };
    if let Err(e) = body(&mut c) {
        c.error("construction", &e);
    }
    let mut spec = RSpec::new((1, 2, 3), Params::ONE, RForm::Rfss { s, r, sign });
    spec.mutation = mutation;
    let tetra = verify_tetrahedron(ctx, "involution_tetra", spec, order);
    merge(&mut c, "tetrahedron", &tetra);
    c.finish()
}

/// Folds a nested report into a checker as one subcheck.
pub fn merge(c: &mut Checker, label: &str, rep: &CheckReport) {
    c.add_terms(rep.terms);
    if rep.passed() {
        c.assert(label, true, "", "");
    } else if let Some(w) = &rep.witness {
        c.assert(
            label,
            false,
            format!("{} [{} {} {}] {}", w.label, w.key, w.param, w.gen, w.expected),
            w.actual.clone(),
        );
    } else {
        c.assert(label, false, "PASS", rep.status);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RationalQ;
    use num_rational::BigRational;

    fn sym() -> Arc<QContext<RationalQ>> {
        QContext::symbolic()
    }

    #[test]
    fn twisted_multiplication_rules() {
        let ctx = sym();
        let alg = make_qweyl(ctx, 3).unwrap();
        let f = make_f(&alg, 1, 2, 3).unwrap();
        let fe = CrossedElement::from_aut(&f, None);
        let a2 = El::gen(&alg, a(2), 1);
        let lhs = fe.rmul_series(&a2).unwrap();
        let rhs = CrossedElement::term(&El::word(&alg, &[(a(1), 1), (a(3), 1)]), &f);
        assert_eq!(lhs, rhs);
        assert_eq!(fe.mul(&fe).unwrap(), CrossedElement::one(&alg, None));
        let one = CrossedElement::one(&alg, None);
        assert_eq!(one.mul(&lhs).unwrap(), lhs);
        assert_eq!(lhs.mul(&one).unwrap(), lhs);
    }

    #[test]
    fn constraint_violations_are_errors() {
        let bad = RForm::Rgl {
            alpha: [-1, 2, 0],
            beta: [1, 0, -1],
            m: 1,
            k: 1,
        };
        assert!(bad.validate().is_err());
        let degenerate = RForm::Rgl {
            alpha: [1, -1, -1],
            beta: [1, 0, -1],
            m: 1,
            k: 1,
        };
        assert_eq!(degenerate.validate(), Err(Error::DegenerateBase));
        assert!(RForm::wwab(0, 1, 1, 1, 1, 1).validate().is_ok());
        let bad = RForm::Rgfl {
            g: [-1, 1, 1],
            f: [1, 1, 1],
            m: 1,
            k: 1,
            mhat: 1,
            l: 1,
        };
        assert!(bad.validate().is_err());
        assert!(RForm::Rffs {
            s: 0,
            r: -1,
            f: FChoice::Const,
            left: false
        }
        .validate()
        .is_err());
    }

    #[test]
    fn rgl_argument_is_wt_at_r0() {
        let ctx = sym();
        let alg = make_qweyl(ctx, 3).unwrap();
        let arg = general_argument(&alg, (1, 2, 3), [-1, 1, 0], [1, 0, -1]);
        assert_eq!(arg, wt_monomial(&alg, (1, 2, 3), 0, 0));
        // the wwab specialization reproduces w~^{(s)} and q^{-(r+1)} w^{(s)}
        for (s, r) in [(0, 1), (1, 0), (-1, 2)] {
            let ga = general_argument(&alg, (1, 2, 3), [-s - 1, s + 1, s - r], [1, 0, -1]);
            assert_eq!(ga, wt_monomial(&alg, (1, 2, 3), r, s));
            let fa = general_argument(&alg, (1, 2, 3), [r - s, s - r, s + 1], [1, 0, -1]);
            let w = w_monomial(&alg, (1, 2, 3), r, s);
            assert_eq!(fa, w.scale(&RationalQ::q_pow(-(r as i64) - 1)));
        }
    }

    #[test]
    fn left_right_forms_agree() {
        let ctx = sym();
        for f in FChoice::MENU {
            assert!(verify_left_right_forms(&ctx, 0, 1, f, 4, None).passed());
        }
        assert!(verify_left_right_forms(&ctx, 2, 0, FChoice::TauDilog, 4, None).passed());
        let bad = verify_left_right_forms(&ctx, 0, 1, FChoice::Const, 4, Some(Mutation::SwapW));
        assert!(!bad.passed());
        assert_eq!(bad.witness.unwrap().degree, Some(1));
    }

    #[test]
    fn rgl_tetrahedron_small_order() {
        let ctx = QContext::numeric(BigRational::from_integer(2.into())).unwrap();
        let form = RForm::Rgl {
            alpha: [-1, 1, 0],
            beta: [1, 0, -1],
            m: 1,
            k: 1,
        };
        let rep = verify_tetrahedron(&ctx, "tetra_Rgl", RSpec::new((1, 2, 3), Params::ONE, form), 2);
        assert!(rep.passed(), "{rep:?}");
        let mut spec = RSpec::new((1, 2, 3), Params::ONE, form);
        spec.mutation = Some(Mutation::BaseTimesTwo);
        let bad = verify_tetrahedron(&ctx, "tetra_Rgl", spec, 2);
        assert!(!bad.passed());
        assert_eq!(bad.witness.unwrap().degree, Some(2));
    }

    #[test]
    fn involution_small_order() {
        let ctx = sym();
        assert!(verify_involution_and_tetra(&ctx, 0, 1, 1, 2, None).passed());
        let bad = verify_involution_and_tetra(&ctx, 0, 1, 1, 2, Some(Mutation::FOne));
        assert!(!bad.passed());
        assert_eq!(bad.witness.unwrap().degree, Some(1));
    }

    #[test]
    fn associativity_on_samples() {
        let ctx = sym();
        let alg = make_qweyl(ctx, 3).unwrap();
        let lam = Params::single(LAMBDA, 1);
        let x = RSpec::new(
            (1, 2, 3),
            lam,
            RForm::Rffs {
                s: 0,
                r: 1,
                f: FChoice::Const,
                left: true,
            },
        )
        .build(&alg, Some(3))
        .unwrap();
        let y = CrossedElement::from_series(&El::gen(&alg, b(1), 1).add(&El::gen(&alg, a(2), -1)).unwrap());
        let z = CrossedElement::from_aut(&crate::autom::make_psi(&alg, 1).unwrap(), Some(3))
            .add(&x)
            .unwrap();
        let lhs = x.mul(&y).unwrap().mul(&z).unwrap();
        let rhs = x.mul(&y.mul(&z).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
