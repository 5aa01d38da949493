//! Monomial automorphisms of quantum tori.
//!
//! An automorphism is stored by the images of the generators, each a signed
//! `q`-power times a parameter monomial times a torus monomial. Composition
//! and application reduce to integer bookkeeping on that data.

use std::fmt;
use std::sync::Arc;

use crate::coeff::{Params, Scalar};
use crate::lattice::{omega, ExpVec};
use crate::report::{CheckReport, Checker, Mutation};
use crate::torus::{a, b, make_qweyl, TorusAlgebra, TorusElement};
use crate::Error;

type El<K> = TorusElement<K>;

/// `sign · q^qpow · params · x^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Image {
    pub sign: i8,
    pub qpow: i64,
    pub params: Params,
    pub exp: ExpVec,
}

impl Image {
    pub fn gen(m: usize, i: usize) -> Self {
        Image {
            sign: 1,
            qpow: 0,
            params: Params::ONE,
            exp: ExpVec::unit(m, i),
        }
    }

    /// Reads a monomial element whose coefficient is `±q^k`.
    fn from_word<K: Scalar>(alg: &TorusAlgebra<K>, letters: &[(usize, i32)], sign: i8) -> Self {
        let mut e = ExpVec::zero(alg.dim());
        let mut qpow = 0i64;
        for &(i, k) in letters {
            let mut f = ExpVec::zero(alg.dim());
            f.set(i, k);
            qpow += alg.theta(&e, &f);
            e = e.add(&f);
        }
        Image {
            sign,
            qpow,
            params: Params::ONE,
            exp: e,
        }
    }

    pub fn to_element<K: Scalar>(&self, alg: &Arc<TorusAlgebra<K>>) -> El<K> {
        let c = K::from_int(self.sign as i64).mul(&alg.ctx().q_pow(self.qpow));
        El::monomial(alg, c, self.params, self.exp, None)
    }
}

/// Canonical identity of an automorphism: its generator images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutKey(pub Vec<Image>);

#[derive(Clone)]
pub struct MonomialAut<K: Scalar> {
    alg: Arc<TorusAlgebra<K>>,
    images: Vec<Image>,
    /// `θ(f_i, f_j)` for the image exponents.
    theta: Vec<i64>,
    label: String,
}

impl<K: Scalar> fmt::Debug for MonomialAut<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

impl<K: Scalar> PartialEq for MonomialAut<K> {
    fn eq(&self, other: &Self) -> bool {
        TorusAlgebra::same(&self.alg, &other.alg) && self.images == other.images
    }
}

impl<K: Scalar> Eq for MonomialAut<K> {}

impl<K: Scalar> MonomialAut<K> {
    /// Builds an automorphism, checking that the images satisfy the
    /// commutation relations of the generators.
    pub fn new(alg: &Arc<TorusAlgebra<K>>, images: Vec<Image>, label: &str) -> Result<Self, Error> {
        let m = alg.dim();
        if images.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if img.exp.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: img.exp.len(),
                });
            }
            if img.sign != 1 && img.sign != -1 {
                return Err(Error::Invalid(format!("image {i} has sign {}", img.sign)));
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if omega(&images[i].exp, &images[j].exp, alg.omega())? != alg.omega().get(i, j) {
                    return Err(Error::RelationViolated(i, j));
                }
            }
        }
        let mut theta = vec![0i64; m * m];
        for i in 0..m {
            for j in 0..m {
                theta[i * m + j] = alg.theta(&images[i].exp, &images[j].exp);
            }
        }
        Ok(MonomialAut {
            alg: alg.clone(),
            images,
            theta,
            label: label.to_string(),
        })
    }

    pub fn identity(alg: &Arc<TorusAlgebra<K>>) -> Self {
        let m = alg.dim();
        Self::new(alg, (0..m).map(|i| Image::gen(m, i)).collect(), "id").expect("identity")
    }

    pub fn algebra(&self) -> &Arc<TorusAlgebra<K>> {
        &self.alg
    }

    pub fn images(&self) -> &[Image] {
        &self.images
    }

    pub fn key(&self) -> AutKey {
        AutKey(self.images.clone())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn is_identity(&self) -> bool {
        let m = self.alg.dim();
        self.images.iter().enumerate().all(|(i, img)| *img == Image::gen(m, i))
    }

    /// Image of the normal-ordered monomial `sign·q^c·p·x^e`.
    pub fn apply_image(&self, img: &Image) -> Image {
        let m = self.alg.dim();
        let e = &img.exp;
        let mut sign = img.sign as i64;
        let mut qpow = img.qpow;
        let mut params = img.params;
        let mut exp = ExpVec::zero(m);
        for i in 0..m {
            let ei = e.get(i) as i64;
            if ei == 0 {
                continue;
            }
            let f = &self.images[i];
            if f.sign < 0 && ei % 2 != 0 {
                sign = -sign;
            }
            qpow += f.qpow * ei + self.theta[i * m + i] * ei * (ei - 1) / 2;
            for j in i + 1..m {
                let ej = e.get(j) as i64;
                if ej != 0 {
                    qpow += ei * ej * self.theta[i * m + j];
                }
            }
            params = params + f.params.scale(ei as i32);
            exp = exp.add(&f.exp.scale(ei as i32));
        }
        Image {
            sign: sign as i8,
            qpow,
            params,
            exp,
        }
    }

    pub fn apply(&self, u: &El<K>) -> Result<El<K>, Error> {
        if !TorusAlgebra::same(&self.alg, u.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let ctx = self.alg.ctx().clone();
        Ok(u.map_terms(&self.alg, |k, c| {
            let img = self.apply_image(&Image {
                sign: 1,
                qpow: 0,
                params: k.p,
                exp: k.e,
            });
            let coeff = c.mul(&ctx.q_pow(img.qpow));
            let coeff = if img.sign < 0 { coeff.neg() } else { coeff };
            (
                crate::torus::Key {
                    p: img.params,
                    e: img.exp,
                },
                coeff,
            )
        }))
    }

    /// `self ∘ h`.
    pub fn compose(&self, h: &Self) -> Result<Self, Error> {
        if !TorusAlgebra::same(&self.alg, &h.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let images = h.images.iter().map(|img| self.apply_image(img)).collect();
        let label = if self.is_identity() {
            h.label.clone()
        } else if h.is_identity() {
            self.label.clone()
        } else {
            format!("{}∘{}", self.label, h.label)
        };
        Self::new(&self.alg, images, &label)
    }

    pub fn equals(&self, h: &Self) -> bool {
        self == h
    }
}

fn check_qweyl<K: Scalar>(alg: &Arc<TorusAlgebra<K>>, size: usize) -> Result<usize, Error> {
    let n = alg.dim() / 2;
    let reference = make_qweyl(alg.ctx().clone(), n.max(1))?;
    if !alg.dim().is_multiple_of(2) || reference.omega() != alg.omega() || n < size {
        return Err(Error::AlgebraMismatch);
    }
    Ok(n)
}

fn triple_ok(n: usize, i: usize, j: usize, k: usize) -> Result<(), Error> {
    if !(1 <= i && i < j && j < k && k <= n) {
        return Err(Error::Invalid(format!("need 1 <= i < j < k <= {n}, got ({i},{j},{k})")));
    }
    Ok(())
}

/// Sign choices for the tetrahedral automorphism and its variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FVariant {
    Plus,
    /// `a_i -> -a_i` with the remaining images forced by the defining relations.
    Minus(i32),
    /// Deliberately broken `b_j -> b_j`.
    BrokenB2,
}

fn build_f<K: Scalar>(
    alg: &Arc<TorusAlgebra<K>>,
    i: usize,
    j: usize,
    k: usize,
    v: FVariant,
) -> Result<MonomialAut<K>, Error> {
    let n = check_qweyl(alg, k)?;
    triple_ok(n, i, j, k)?;
    let m = alg.dim();
    let mut images: Vec<Image> = (0..m).map(|g| Image::gen(m, g)).collect();
    let w = |letters: &[(usize, i32)], sign: i8| Image::from_word(alg, letters, sign);
    let (s1, s3, sb1, sb2, sb3) = match v {
        FVariant::Plus | FVariant::BrokenB2 => (1, 1, 1, 1, 1),
        FVariant::Minus(r) => {
            let odd = if r.rem_euclid(2) == 1 { -1 } else { 1 };
            (-1, -1, odd, odd, -1)
        }
    };
    images[a(i)] = w(&[(a(i), 1)], s1);
    images[a(j)] = w(&[(a(i), 1), (a(k), 1)], 1);
    images[a(k)] = w(&[(a(i), -1), (a(j), 1)], s3);
    images[b(i)] = w(&[(b(i), 1), (b(j), 1), (b(k), -1)], sb1);
    images[b(j)] = match v {
        FVariant::BrokenB2 => w(&[(b(j), 1)], 1),
        _ => w(&[(b(k), 1)], sb2),
    };
    images[b(k)] = w(&[(b(j), 1)], sb3);
    MonomialAut::new(alg, images, &format!("F{i}{j}{k}"))
}

/// `F_ijk`: `a_j -> a_i a_k`, `a_k -> a_i^{-1} a_j`, `b_i -> b_i b_j b_k^{-1}`,
/// `b_j <-> b_k`, identity elsewhere.
pub fn make_f<K: Scalar>(alg: &Arc<TorusAlgebra<K>>, i: usize, j: usize, k: usize) -> Result<MonomialAut<K>, Error> {
    build_f(alg, i, j, k, FVariant::Plus)
}

/// The variant with `F(a_1) = -a_1`; an involution only for odd `r`.
pub fn make_f_minus<K: Scalar>(alg: &Arc<TorusAlgebra<K>>, r: i32) -> Result<MonomialAut<K>, Error> {
    build_f(alg, 1, 2, 3, FVariant::Minus(r)).map(|f| f.with_label("F-"))
}

/// `F` with `b_2 -> b_2`; violates the commutation relations.
pub fn make_f_broken<K: Scalar>(alg: &Arc<TorusAlgebra<K>>) -> Result<MonomialAut<K>, Error> {
    build_f(alg, 1, 2, 3, FVariant::BrokenB2)
}

/// `ψ_s` on the triple `(i,j,k)`: `b_i -> a_j^s a_k^s b_i`, `b_j -> a_i^s b_j`,
/// `b_k -> a_i^s b_k`.
pub fn make_psi_triple<K: Scalar>(
    alg: &Arc<TorusAlgebra<K>>,
    (i, j, k): (usize, usize, usize),
    s: i32,
) -> Result<MonomialAut<K>, Error> {
    let n = check_qweyl(alg, k)?;
    triple_ok(n, i, j, k)?;
    let m = alg.dim();
    let mut images: Vec<Image> = (0..m).map(|g| Image::gen(m, g)).collect();
    images[b(i)] = Image::from_word(alg, &[(a(j), s), (a(k), s), (b(i), 1)], 1);
    images[b(j)] = Image::from_word(alg, &[(a(i), s), (b(j), 1)], 1);
    images[b(k)] = Image::from_word(alg, &[(a(i), s), (b(k), 1)], 1);
    MonomialAut::new(alg, images, &format!("psi{s}_{i}{j}{k}"))
}

/// `ψ_s` on `Q_q(3)`.
pub fn make_psi<K: Scalar>(alg: &Arc<TorusAlgebra<K>>, s: i32) -> Result<MonomialAut<K>, Error> {
    if alg.dim() != 6 {
        return Err(Error::AlgebraMismatch);
    }
    make_psi_triple(alg, (1, 2, 3), s).map(|p| p.with_label(&format!("psi{s}")))
}

/// `w^{(s)}_{ijk} = a_i^{r-s} a_j^{s-r} b_i b_k^{-1} a_k^{s+1}` (written order).
pub fn w_monomial<K: Scalar>(alg: &Arc<TorusAlgebra<K>>, (i, j, k): (usize, usize, usize), r: i32, s: i32) -> El<K> {
    El::word(
        alg,
        &[(a(i), r - s), (a(j), s - r), (b(i), 1), (b(k), -1), (a(k), s + 1)],
    )
}

/// `w~^{(s)}_{ijk} = a_k^{s-r} b_i b_k^{-1} a_i^{-s-1} a_j^{s+1}` (written order).
pub fn wt_monomial<K: Scalar>(alg: &Arc<TorusAlgebra<K>>, (i, j, k): (usize, usize, usize), r: i32, s: i32) -> El<K> {
    El::word(
        alg,
        &[(a(k), s - r), (b(i), 1), (b(k), -1), (a(i), -s - 1), (a(j), s + 1)],
    )
}

/// Tetrahedron equation for `F` on `Q_q(6)` and its defining properties on `Q_q(3)`.
pub fn verify_f_suite<K: Scalar>(
    ctx: &Arc<crate::coeff::QContext<K>>,
    r: i32,
    mutation: Option<Mutation>,
) -> CheckReport {
    let mut c = Checker::new("F_suite", None);
    c.param("r", r).param("q", ctx.mode().to_string());
    if let Some(mu) = mutation {
        c.param("mutate", mu.tag());
    }
    if let Err(e) = f_suite_body(&mut c, ctx, r, mutation) {
        c.error("construction", &e);
    }
    c.finish()
}

fn f_suite_body<K: Scalar>(
    c: &mut Checker,
    ctx: &Arc<crate::coeff::QContext<K>>,
    r: i32,
    mutation: Option<Mutation>,
) -> Result<(), Error> {
    let q6 = make_qweyl(ctx.clone(), 6)?;
    let q3 = make_qweyl(ctx.clone(), 3)?;
    let f3 = |alg: &Arc<TorusAlgebra<K>>, i, j, k| -> Result<MonomialAut<K>, Error> {
        match mutation {
            Some(Mutation::FB2) if (i, j, k) == (1, 2, 3) => make_f_broken(alg),
            Some(Mutation::FMinus) if (i, j, k) == (1, 2, 3) && alg.dim() == 6 => make_f_minus(alg, r),
            _ => make_f(alg, i, j, k),
        }
    };
    let chain = |fs: &[MonomialAut<K>]| -> Result<MonomialAut<K>, Error> {
        let mut acc = fs[0].clone();
        for f in &fs[1..] {
            acc = acc.compose(f)?;
        }
        Ok(acc)
    };
    let t = [(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6)];
    let fs: Vec<MonomialAut<K>> = t.iter().map(|&(i, j, k)| f3(&q6, i, j, k)).collect::<Result<_, _>>()?;
    let lhs = chain(&fs)?;
    let rev: Vec<_> = fs.iter().rev().cloned().collect();
    let rhs = chain(&rev)?;
    c.assert(
        "tetrahedron",
        lhs.equals(&rhs),
        format!("{:?}", rhs.key()),
        format!("{:?}", lhs.key()),
    );

    let f = f3(&q3, 1, 2, 3)?;
    let id = MonomialAut::identity(&q3);
    let ff = f.compose(&f)?;
    c.assert("involution", ff.equals(&id), "identity", format!("{:?}", ff.key()));
    let word = |letters: &[(usize, i32)]| El::word(&q3, letters);
    // relations at λ = 0
    let pairs = [
        ("a1a3->a2", word(&[(a(1), 1), (a(3), 1)]), word(&[(a(2), 1)])),
        ("a2->a1a3", word(&[(a(2), 1)]), word(&[(a(1), 1), (a(3), 1)])),
        (
            "b1b2->b1b2",
            word(&[(b(1), 1), (b(2), 1)]),
            word(&[(b(1), 1), (b(2), 1)]),
        ),
        (
            "a1^-r b2->a1^-r b3",
            word(&[(a(1), -r), (b(2), 1)]),
            word(&[(a(1), -r), (b(3), 1)]),
        ),
        (
            "a1b3->a1b2",
            word(&[(a(1), 1), (b(3), 1)]),
            word(&[(a(1), 1), (b(2), 1)]),
        ),
    ];
    for (label, x, y) in &pairs {
        let fx = f.apply(x)?;
        c.torus_eq(label, &fx, y);
    }
    let w = w_monomial(&q3, (1, 2, 3), r, 0);
    let wt = wt_monomial(&q3, (1, 2, 3), r, 0);
    c.torus_eq("F(w)=wt", &f.apply(&w)?, &wt);
    c.torus_eq("F(wt)=w", &f.apply(&wt)?, &w);
    for s in -2..=2 {
        let psi = make_psi(&q3, s)?;
        let lhs = psi.compose(&f)?;
        let rhs = f.compose(&psi)?;
        c.assert(
            &format!("psi{s}F=Fpsi{s}"),
            lhs.equals(&rhs),
            format!("{:?}", rhs.key()),
            format!("{:?}", lhs.key()),
        );
        let back = psi.compose(&make_psi(&q3, -s)?)?;
        c.assert(
            &format!("psi{s}psi{}=id", -s),
            back.is_identity(),
            "identity",
            format!("{:?}", back.key()),
        );
    }
    // the sign-flipped solution of the λ = 0 relations is an involution only for odd r
    let fm = make_f_minus(&q3, r)?;
    let inv = fm.compose(&fm)?.is_identity();
    let odd = r.rem_euclid(2) == 1;
    c.assert("minus_variant_involution_iff_odd_r", inv == odd, odd, inv);
    c.param("minus_variant_involution", inv);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{QContext, RationalQ};
    use proptest::prelude::*;

    fn q(n: usize) -> Arc<TorusAlgebra<RationalQ>> {
        make_qweyl(QContext::symbolic(), n).unwrap()
    }

    #[test]
    fn f_images() {
        let alg = q(3);
        let f = make_f(&alg, 1, 2, 3).unwrap();
        let a2 = El::gen(&alg, a(2), 1);
        assert_eq!(f.apply(&a2).unwrap(), El::word(&alg, &[(a(1), 1), (a(3), 1)]));
        let b1 = El::gen(&alg, b(1), 1);
        assert_eq!(
            f.apply(&b1).unwrap(),
            El::word(&alg, &[(b(1), 1), (b(2), 1), (b(3), -1)])
        );
        let q6 = q(6);
        let f = make_f(&q6, 2, 4, 6).unwrap();
        assert_eq!(
            f.apply(&El::gen(&q6, b(2), 1)).unwrap(),
            El::word(&q6, &[(b(2), 1), (b(4), 1), (b(6), -1)])
        );
        assert_eq!(f.apply(&El::gen(&q6, a(1), 1)).unwrap(), El::gen(&q6, a(1), 1));
        assert_eq!(f.apply(&El::gen(&q6, b(1), 1)).unwrap(), El::gen(&q6, b(1), 1));
        assert!(make_f(&q6, 3, 2, 4).is_err());
        assert!(make_f(&alg, 1, 2, 4).is_err());
    }

    #[test]
    fn broken_f_is_rejected() {
        let alg = q(3);
        assert!(matches!(make_f_broken(&alg), Err(Error::RelationViolated(_, _))));
    }

    #[test]
    fn psi_properties() {
        let alg = q(3);
        assert!(make_psi(&alg, 0).unwrap().is_identity());
        let p1 = make_psi(&alg, 1).unwrap();
        assert_eq!(
            p1.apply(&El::gen(&alg, b(2), 1)).unwrap(),
            El::word(&alg, &[(a(1), 1), (b(2), 1)])
        );
        for s in -3..=3 {
            let p = make_psi(&alg, s).unwrap();
            let back = p.compose(&make_psi(&alg, -s).unwrap()).unwrap();
            assert!(back.is_identity());
        }
        assert!(make_psi(&q(6), 1).is_err());
    }

    #[test]
    fn f_maps_w_and_psi_twists_w() {
        let alg = q(3);
        let f = make_f(&alg, 1, 2, 3).unwrap();
        for r in [0, 1, 2] {
            let w = w_monomial(&alg, (1, 2, 3), r, 0);
            let wt = wt_monomial(&alg, (1, 2, 3), r, 0);
            assert_eq!(f.apply(&w).unwrap(), wt);
            for s in -1..=2 {
                let p = make_psi(&alg, s).unwrap();
                assert_eq!(p.apply(&w).unwrap(), w_monomial(&alg, (1, 2, 3), r, s));
                assert_eq!(p.apply(&wt).unwrap(), wt_monomial(&alg, (1, 2, 3), r, s));
            }
        }
        let id = MonomialAut::identity(&alg);
        let w = w_monomial(&alg, (1, 2, 3), 1, 0);
        assert_eq!(id.apply(&w).unwrap(), w);
        assert!(id.compose(&f).unwrap().equals(&f));
        assert!(f.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn suite_passes_and_negative_controls_fail() {
        let ctx = QContext::symbolic();
        for r in [0, 1, 2] {
            let rep = verify_f_suite(&ctx, r, None);
            assert!(rep.passed(), "{rep:?}");
        }
        assert!(!verify_f_suite(&ctx, 1, Some(Mutation::FB2)).passed());
        let even = verify_f_suite(&ctx, 2, Some(Mutation::FMinus));
        assert!(!even.passed());
        let m = make_f_minus(&q(3), 2).unwrap();
        assert!(!m.compose(&m).unwrap().is_identity());
        let m = make_f_minus(&q(3), 1).unwrap();
        assert!(m.compose(&m).unwrap().is_identity());
    }

    fn arb_el(alg: Arc<TorusAlgebra<RationalQ>>) -> impl Strategy<Value = El<RationalQ>> {
        prop::collection::vec((prop::collection::vec(-2i32..3, 6), -3i64..4), 1..4).prop_map(move |ts| {
            let mut u = El::zero(&alg, None);
            for (e, c) in ts {
                let t = El::monomial(&alg, RationalQ::from_int(c), Params::ONE, ExpVec::from_slice(&e), None);
                u = u.add(&t).unwrap();
            }
            u
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn automorphisms_are_multiplicative(u in arb_el(q(3)), v in arb_el(q(3)), s in -2i32..3, r in -1i32..3) {
            let alg = u.algebra().clone();
            let g = make_psi(&alg, s).unwrap().compose(&make_f(&alg, 1, 2, 3).unwrap()).unwrap();
            let lhs = g.apply(&u.mul(&v).unwrap()).unwrap();
            let rhs = g.apply(&u).unwrap().mul(&g.apply(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let fm = make_f_minus(&alg, r).unwrap();
            let lhs = fm.apply(&u.mul(&v).unwrap()).unwrap();
            let rhs = fm.apply(&u).unwrap().mul(&fm.apply(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn equality_matches_generator_action(s in -2i32..3, t in -2i32..3) {
            let alg = q(3);
            let g = make_psi(&alg, s).unwrap();
            let h = make_psi(&alg, t).unwrap();
            let agree = (0..6).all(|i| {
                let x = El::gen(&alg, i, 1);
                g.apply(&x).unwrap() == h.apply(&x).unwrap()
            });
            prop_assert_eq!(g.equals(&h), agree);
        }
    }
}
