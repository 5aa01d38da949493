//! Truncated quantum dilogarithms and the identities they satisfy.
//!
//! `⟨u; Q⟩ = Σ_n (-u)^n / ((1-Q)…(1-Q^n))` with `Q = q^d`. Every argument has
//! grading degree at least one, so the sum is finite below the order `N`.

use std::sync::Arc;

use crate::coeff::{Params, QContext, Scalar, LAMBDA, MU, NU};
use crate::report::{CheckReport, Checker, Mutation};
use crate::torus::{make_xyz, TorusAlgebra, TorusElement};
use crate::Error;

type El<K> = TorusElement<K>;

fn need_order<K: Scalar>(u: &El<K>, order: Option<u32>) -> Result<u32, Error> {
    match (order, u.order()) {
        (Some(n), Some(m)) => Ok(n.min(m)),
        (Some(n), None) | (None, Some(n)) => Ok(n),
        (None, None) => Err(Error::NeedsTruncation),
    }
}

/// `⟨u; q^d⟩` for a monomial `u`.
pub fn dilog_of_monomial<K: Scalar>(u: &El<K>, base_d: i64, order: Option<u32>) -> Result<El<K>, Error> {
    if base_d == 0 {
        return Err(Error::DegenerateBase);
    }
    let n = need_order(u, order)?;
    let alg = u.algebra().clone();
    let mut out = El::one(&alg, Some(n));
    if u.is_zero() {
        return Ok(out);
    }
    let (key, _) = u.single_term().ok_or(Error::NotMonomial)?;
    let deg = key.degree();
    if deg < 1 {
        return Err(Error::DegreeTooLow(deg));
    }
    let u = u.truncate(Some(n));
    let ctx = alg.ctx();
    let mut denom = K::one();
    for j in 1..=(n as i64 / deg) {
        denom = denom.mul(&K::one().sub(&ctx.q_pow(base_d * j)));
        let term = u.neg().monomial_pow(j as i32)?.scale(&denom.inv()?);
        out = out.add(&term)?;
    }
    Ok(out)
}

/// `⟨u; q^d⟩` for a general element whose terms all have degree at least one.
pub fn dilog_general<K: Scalar>(u: &El<K>, base_d: i64, order: Option<u32>) -> Result<El<K>, Error> {
    if base_d == 0 {
        return Err(Error::DegenerateBase);
    }
    if u.single_term().is_some() {
        return dilog_of_monomial(u, base_d, order);
    }
    let n = need_order(u, order)?;
    let alg = u.algebra().clone();
    let mut out = El::one(&alg, Some(n));
    if u.is_zero() {
        return Ok(out);
    }
    let deg = u.min_degree().unwrap_or(1);
    if deg < 1 {
        return Err(Error::DegreeTooLow(deg));
    }
    let mu = u.neg().truncate(Some(n));
    let ctx = alg.ctx();
    let mut denom = K::one();
    let mut power = El::one(&alg, Some(n));
    for j in 1..=(n as i64 / deg) {
        denom = denom.mul(&K::one().sub(&ctx.q_pow(base_d * j)));
        power = power.mul(&mu)?;
        out = out.add(&power.scale(&denom.inv()?))?;
    }
    Ok(out)
}

/// One member of the family `⟨Q^{m(m-1)/2} λ^k t^m; Q^{m^2}⟩`, `Q = q^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DilogSpec {
    pub m: u32,
    pub k: i32,
    /// Parameter monomial raised to the power `k` (for example `λμ`).
    pub slot: Params,
    pub base_d: i64,
    /// Replaces the base exponent `d m^2` when set.
    pub base_override: Option<i64>,
}

impl DilogSpec {
    pub fn new(m: u32, k: i32, slot: Params, base_d: i64) -> Self {
        DilogSpec {
            m,
            k,
            slot,
            base_d,
            base_override: None,
        }
    }

    pub fn base_exponent(&self) -> i64 {
        self.base_override
            .unwrap_or(self.base_d * (self.m as i64) * (self.m as i64))
    }

    /// The series argument for a given `t`.
    pub fn argument<K: Scalar>(&self, t: &El<K>) -> Result<El<K>, Error> {
        let m = self.m as i64;
        let pre = t.ctx().q_pow(self.base_d * m * (m - 1) / 2);
        Ok(t.monomial_pow_params(self.m as i32, self.slot.scale(self.k))?
            .scale(&pre))
    }

    /// τ exponent per unit of `t` that lifts every argument to degree >= 1
    /// when the slot has degree one.
    pub fn tau_per_unit(&self) -> i32 {
        let m = self.m as i32;
        if self.k >= 1 {
            0
        } else {
            (1 - self.k + m - 1) / m
        }
    }
}

pub fn dilog_family<K: Scalar>(spec: &DilogSpec, t: &El<K>, order: Option<u32>) -> Result<El<K>, Error> {
    if spec.m == 0 {
        return Err(Error::Invalid("dilogarithm family needs m >= 1".into()));
    }
    if spec.base_exponent() == 0 {
        return Err(Error::DegenerateBase);
    }
    dilog_of_monomial(&spec.argument(t)?, spec.base_exponent(), order)
}

/// Inverse of `u = u0 + (terms of degree >= 1)` with `u0` a single
/// degree-zero term: `u^{-1} = (Σ_n (-y)^n) u0^{-1}`, `y = u0^{-1}(u - u0)`.
pub fn invert_unital<K: Scalar>(u: &El<K>, order: Option<u32>) -> Result<El<K>, Error> {
    let n = need_order(u, order)?;
    let u = u.truncate(Some(n));
    let u0 = u.degree_part(0);
    if u0.single_term().is_none() {
        return Err(Error::NotInvertible);
    }
    if u.min_degree().is_some_and(|d| d < 0) {
        return Err(Error::NotInvertible);
    }
    let inv0 = u0.monomial_pow(-1)?;
    let y = inv0.mul(&u.sub(&u0)?)?;
    let alg = u.algebra().clone();
    let mut acc = El::one(&alg, Some(n));
    let mut term = El::one(&alg, Some(n));
    let my = y.neg();
    for _ in 0..n {
        term = term.mul(&my)?;
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
    }
    acc.mul(&inv0)
}

/// `⟨X⟩, ⟨Y⟩, ⟨Z⟩` generators of the three-variable torus, each carrying τ.
fn xyz_setup<K: Scalar>(ctx: &Arc<QContext<K>>, order: u32) -> (Arc<TorusAlgebra<K>>, [El<K>; 3]) {
    let alg = make_xyz(ctx.clone());
    let g = |i| El::gen(&alg, i, 1).scale_params(Params::tau(1)).truncate(Some(order));
    let gens = [g(0), g(1), g(2)];
    (alg, gens)
}

fn prod<K: Scalar>(fs: &[&El<K>]) -> Result<El<K>, Error> {
    let mut acc = fs[0].clone();
    for f in &fs[1..] {
        acc = acc.mul(f)?;
    }
    Ok(acc)
}

/// Functional equation, inverse, both pentagon forms and the four-term
/// identity in the torus `YX = qXY, XZ = qZX, ZY = qYZ`.
pub fn verify_dilog_basics<K: Scalar>(ctx: &Arc<QContext<K>>, order: u32, mutation: Option<Mutation>) -> CheckReport {
    let mut c = Checker::new("dilog_basics", Some(order));
    c.param("q", ctx.mode().to_string());
    if let Some(m) = mutation {
        c.param("mutate", m.tag());
    }
    if let Err(e) = dilog_basics_body(&mut c, ctx, order, mutation) {
        c.error("construction", &e);
    }
    c.finish()
}

fn dilog_basics_body<K: Scalar>(
    c: &mut Checker,
    ctx: &Arc<QContext<K>>,
    n: u32,
    mutation: Option<Mutation>,
) -> Result<(), Error> {
    let (alg, [x, y, z]) = xyz_setup(ctx, n);
    let ord = Some(n);
    let base = match mutation {
        Some(Mutation::BasePlusOne) => 2,
        _ => 1,
    };
    let dl = |u: &El<K>| dilog_general(u, base, ord);
    let one = El::one(&alg, ord);
    // functional relation ⟨qx⟩ = (1+x)⟨x⟩
    let lhs = dl(&x.scale(ctx.q()))?;
    let rhs = one.add(&x)?.mul(&dl(&x)?)?;
    c.torus_eq("functional", &lhs, &rhs);
    // inverse ⟨x;q⟩⟨q^{-1}x;q^{-1}⟩ = 1
    let inv = dilog_of_monomial(&x.scale(&ctx.q_pow(-1)), -1, ord)?;
    c.torus_eq("inverse", &dl(&x)?.mul(&inv)?, &one);
    c.torus_eq("inverse_unital", &invert_unital(&dl(&x)?, ord)?, &inv);
    let mut fx = dl(&x)?;
    if mutation == Some(Mutation::Perturb) {
        fx = fx.add(&x)?;
    }
    let xy = x.mul(&y)?;
    // ⟨X⟩⟨Y⟩ = ⟨X+Y⟩
    c.torus_eq("sum", &fx.mul(&dl(&y)?)?, &dl(&x.add(&y)?)?);
    // ⟨X⟩⟨XY⟩⟨Y⟩ = ⟨Y⟩⟨X⟩
    let lhs = prod(&[&fx, &dl(&xy)?, &dl(&y)?])?;
    let rhs = prod(&[&dl(&y)?, &fx])?;
    c.torus_eq("pentagon", &lhs, &rhs);
    // ⟨X⟩⟨XY⟩⟨Z⟩⟨Y⟩ = ⟨Z⟩⟨ZX⟩⟨Y⟩⟨X⟩
    let zx = z.mul(&x)?;
    let lhs = prod(&[&fx, &dl(&xy)?, &dl(&z)?, &dl(&y)?])?;
    let rhs = prod(&[&dl(&z)?, &dl(&zx)?, &dl(&y)?, &fx])?;
    c.torus_eq("four_term", &lhs, &rhs);
    Ok(())
}

/// The pentagon and tetrahedral relations for the family `S`, `U = κS`,
/// plus the functional recursion `S(q^m X) = S(X)(1 + q^{m(m-1)/2} λ^k X^m)`.
pub fn verify_pent_tetr_family<K: Scalar>(
    ctx: &Arc<QContext<K>>,
    m: u32,
    k: i32,
    order: u32,
    kappa: i64,
    mutation: Option<Mutation>,
) -> CheckReport {
    let mut c = Checker::new("pent_tetr_family", Some(order));
    c.param("q", ctx.mode().to_string())
        .param("m", m)
        .param("k", k)
        .param("kappa", kappa);
    if let Some(mu) = mutation {
        c.param("mutate", mu.tag());
    }
    if m == 0 {
        c.error("construction", &Error::Invalid("m must be positive".into()));
        return c.finish();
    }
    if let Err(e) = pent_tetr_body(&mut c, ctx, m, k, order, kappa, mutation) {
        c.error("construction", &e);
    }
    c.finish()
}

fn pent_tetr_body<K: Scalar>(
    c: &mut Checker,
    ctx: &Arc<QContext<K>>,
    m: u32,
    k: i32,
    n: u32,
    kappa: i64,
    mutation: Option<Mutation>,
) -> Result<(), Error> {
    let alg = make_xyz(ctx.clone());
    let ord = Some(n);
    let probe = DilogSpec::new(m, k, Params::lambda(1), 1);
    let tau = probe.tau_per_unit();
    c.param("tau_per_unit", tau);
    // exact monomials; negative λ-degrees bring high τ-degrees back into range
    let g = |i| El::gen(&alg, i, 1).scale_params(Params::tau(tau));
    let (x, y, z) = (g(0), g(1), g(2));
    let lam = Params::single(LAMBDA, 1);
    let mu = Params::single(MU, 1);
    let nu = Params::single(NU, 1);
    let mk = |slot: Params| {
        let mut s = DilogSpec::new(m, k, slot, 1);
        match mutation {
            Some(Mutation::BasePlusOne) => s.base_override = Some((m * m) as i64 + 1),
            Some(Mutation::BaseTimesTwo) => s.base_override = Some(2 * (m * m) as i64),
            _ => {}
        }
        s
    };
    let s = |slot: Params, t: &El<K>| dilog_family(&mk(slot), t, ord);
    let kap = K::from_int(kappa);
    let u = |slot: Params, t: &El<K>| -> Result<El<K>, Error> { Ok(s(slot, t)?.scale(&kap)) };
    let xy = x.mul(&y)?;
    let zx = z.mul(&x)?;
    let lhs = prod(&[&s(lam, &x)?, &s(lam + mu, &xy)?, &s(mu, &y)?])?;
    let rhs = prod(&[&s(mu, &y)?, &s(lam, &x)?])?;
    c.torus_eq("pent", &lhs, &rhs);
    let lhs = prod(&[&u(lam, &x)?, &u(lam + mu, &xy)?, &u(nu, &z)?, &u(mu, &y)?])?;
    let rhs = prod(&[&u(nu, &z)?, &u(lam + nu, &zx)?, &u(mu, &y)?, &u(lam, &x)?])?;
    c.torus_eq("tetr", &lhs, &rhs);
    // S(q^m X) = S(X) (1 + q^{m(m-1)/2} λ^k X^m)
    let mi = m as i64;
    let shifted = s(lam, &x.scale(&ctx.q_pow(mi)))?;
    let factor = El::one(&alg, ord).add(
        &x.monomial_pow_params(m as i32, lam.scale(k))?
            .scale(&ctx.q_pow(mi * (mi - 1) / 2)),
    )?;
    c.torus_eq("recursion", &shifted, &s(lam, &x)?.mul(&factor)?);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RationalQ;
    use crate::lattice::ExpVec;
    use crate::torus::{a, b, make_qweyl};
    use proptest::prelude::*;

    fn sym() -> Arc<QContext<RationalQ>> {
        QContext::symbolic()
    }

    #[test]
    fn family_holds_at_every_truncation_order() {
        let ctx = sym();
        for n in 0..=6 {
            for (m, k) in [(1, -1), (3, -1), (2, 2)] {
                let rep = verify_pent_tetr_family(&ctx, m, k, n, 2, None);
                assert!(rep.passed(), "order {n} m={m} k={k}: {:?}", rep.witness);
            }
        }
    }

    #[test]
    fn central_dilog_to_order_two() {
        let ctx = sym();
        let alg = make_qweyl(ctx.clone(), 1).unwrap();
        // a1 alone generates a commutative subalgebra
        let x = El::gen(&alg, a(1), 1);
        let lx = x.scale_params(Params::lambda(1));
        let got = dilog_of_monomial(&lx, 1, Some(2)).unwrap();
        let d1 = ctx.q_pochhammer(1, 1).unwrap();
        let d2 = ctx.q_pochhammer(1, 2).unwrap();
        let expect = El::one(&alg, Some(2))
            .sub(&lx.scale(&d1.inv().unwrap()))
            .unwrap()
            .add(&lx.mul(&lx).unwrap().scale(&d2.inv().unwrap()))
            .unwrap();
        assert_eq!(got, expect);
        let zero = El::zero(&alg, Some(2));
        assert_eq!(dilog_of_monomial(&zero, 1, Some(2)).unwrap(), El::one(&alg, Some(2)));
    }

    #[test]
    fn dilog_of_w_uses_the_monomial_square() {
        let ctx = sym();
        let alg = make_qweyl(ctx.clone(), 3).unwrap();
        let r = 1;
        let w = El::word(&alg, &[(a(1), r), (a(2), -r), (b(1), 1), (b(3), -1), (a(3), 1)]);
        let lw = w.scale_params(Params::lambda(1));
        let got = dilog_of_monomial(&lw, r as i64 + 1, Some(2)).unwrap();
        let (key, cw) = lw.single_term().unwrap();
        let th = alg.theta(&key.e, &key.e);
        let sq = El::monomial(
            &alg,
            cw.mul(cw).mul(&RationalQ::q_pow(th)),
            Params::lambda(2),
            key.e.scale(2),
            Some(2),
        );
        let expect = El::one(&alg, Some(2))
            .sub(&lw.scale(&ctx.q_pochhammer(2, 1).unwrap().inv().unwrap()))
            .unwrap()
            .add(&sq.scale(&ctx.q_pochhammer(2, 2).unwrap().inv().unwrap()))
            .unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn argument_degree_and_base_are_checked() {
        let ctx = sym();
        let alg = make_qweyl(ctx, 1).unwrap();
        let x = El::gen(&alg, a(1), 1);
        assert_eq!(dilog_of_monomial(&x, 1, Some(3)), Err(Error::DegreeTooLow(0)));
        let lx = x.scale_params(Params::lambda(1));
        assert_eq!(dilog_of_monomial(&lx, 0, Some(3)), Err(Error::DegenerateBase));
        assert_eq!(dilog_of_monomial(&lx, 1, None), Err(Error::NeedsTruncation));
    }

    #[test]
    fn family_members() {
        let ctx = sym();
        let alg = make_qweyl(ctx.clone(), 1).unwrap();
        let t = El::gen(&alg, a(1), 1).truncate(Some(4));
        let lam = Params::lambda(1);
        let got = dilog_family(&DilogSpec::new(1, 1, lam, 1), &t, Some(4)).unwrap();
        assert_eq!(got, dilog_of_monomial(&t.scale_params(lam), 1, Some(4)).unwrap());
        let got = dilog_family(&DilogSpec::new(2, 1, lam, 1), &t, Some(4)).unwrap();
        let arg = t.monomial_pow(2).unwrap().scale(ctx.q()).scale_params(lam);
        assert_eq!(got, dilog_of_monomial(&arg, 4, Some(4)).unwrap());
        let spec = DilogSpec::new(1, 0, lam, 1);
        assert_eq!(spec.tau_per_unit(), 1);
        let tt = t.scale_params(Params::tau(1));
        let arg = spec.argument(&tt).unwrap();
        assert_eq!(arg.single_term().unwrap().0.p, Params::tau(1));
        assert_eq!(DilogSpec::new(2, -1, lam, 1).tau_per_unit(), 1);
        assert_eq!(DilogSpec::new(1, -1, lam, 1).tau_per_unit(), 2);
    }

    #[test]
    fn invert_unital_examples() {
        let ctx = sym();
        let alg = make_qweyl(ctx.clone(), 3).unwrap();
        let w = El::word(&alg, &[(a(1), 1), (a(2), -1), (b(1), 1), (b(3), -1), (a(3), 1)]);
        let lw = w.scale_params(Params::lambda(1)).truncate(Some(2));
        let one = El::one(&alg, Some(2));
        let u = one.add(&lw).unwrap();
        let inv = invert_unital(&u, Some(2)).unwrap();
        assert_eq!(u.mul(&inv).unwrap(), one);
        assert_eq!(inv.mul(&u).unwrap(), one);
        let expect = one.sub(&lw).unwrap().add(&lw.monomial_pow(2).unwrap()).unwrap();
        assert_eq!(inv, expect);
        assert_eq!(invert_unital(&one, Some(2)).unwrap(), one);
        // (1 + a1) has no degree-zero single term inverse
        let bad = one.add(&El::gen(&alg, a(1), 1)).unwrap();
        assert_eq!(invert_unital(&bad, Some(2)), Err(Error::NotInvertible));
    }

    #[test]
    fn basics_pass_and_perturbation_fails() {
        let ctx = sym();
        assert!(verify_dilog_basics(&ctx, 6, None).passed());
        let bad = verify_dilog_basics(&ctx, 6, Some(Mutation::Perturb));
        assert!(!bad.passed());
        assert!(bad.witness.unwrap().degree.unwrap() <= 2);
        assert!(verify_dilog_basics(&ctx, 0, None).passed());
    }

    #[test]
    fn family_pass_and_wrong_base_fails() {
        let ctx = sym();
        assert!(verify_pent_tetr_family(&ctx, 1, 1, 6, 1, None).passed());
        assert!(verify_pent_tetr_family(&ctx, 2, -1, 6, 3, None).passed());
        let bad = verify_pent_tetr_family(&ctx, 1, 1, 6, 1, Some(Mutation::BasePlusOne));
        assert!(!bad.passed());
        assert_eq!(bad.witness.unwrap().degree, Some(2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn functional_relation_for_monomials(d in prop::sample::select(vec![-2i64, -1, 1, 2, 3]), ex in -2i32..3, l in 1i32..3) {
            let ctx = sym();
            let alg = make_qweyl(ctx.clone(), 1).unwrap();
            let u = El::monomial(&alg, RationalQ::from_int(3), Params::lambda(l), ExpVec::from_slice(&[ex, 0]), Some(6));
            let lhs = dilog_of_monomial(&u.scale(&ctx.q_pow(d)), d, Some(6)).unwrap();
            let rhs = El::one(&alg, Some(6)).add(&u).unwrap().mul(&dilog_of_monomial(&u, d, Some(6)).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let inv = dilog_of_monomial(&u.scale(&ctx.q_pow(-d)), -d, Some(6)).unwrap();
            prop_assert_eq!(dilog_of_monomial(&u, d, Some(6)).unwrap().mul(&inv).unwrap(), El::one(&alg, Some(6)));
        }
    }

    #[test]
    fn coefficients_times_pochhammer_alternate() {
        let ctx = sym();
        let alg = make_qweyl(ctx.clone(), 1).unwrap();
        let u = El::gen(&alg, a(1), 1).scale_params(Params::lambda(1));
        let s = dilog_of_monomial(&u, 1, Some(8)).unwrap();
        for n in 0..=8 {
            let c = s.coeff(Params::lambda(n), &ExpVec::from_slice(&[n, 0])).unwrap();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                c.mul(&ctx.q_pochhammer(1, n as u32).unwrap()),
                RationalQ::from_int(sign)
            );
        }
    }
}
