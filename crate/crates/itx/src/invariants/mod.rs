//! Invariant rings of the additive group acting on an irreducible affine
//! variety: complete in characteristic 0 (and whenever the characteristic
//! does not divide the t-degree of the chosen moving element), and up to the
//! resultant subalgebra otherwise. The connected-unipotent recursion lives in
//! the `unipotent` submodule.

pub mod unipotent;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::colonalg::{colon_saturation, GenStream};
use crate::error::{Error, Result};
use crate::groebner::{extended_normal_form, groebner_basis, normal_form};
use crate::idealops::{localize, PresentedRing};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{coefficients_wrt, substitute, Poly, Ring};
use crate::scalar::Scalar;

/// An additive-group action given by its comorphism: mu(x_j) in K[x][t] with
/// mu(h)(sigma, x) = h(sigma . x).
pub struct GaAction {
    pub x: Arc<PresentedRing>,
    pub param: String,
    /// K[x_1..x_n, t]
    pub ext_ring: Arc<Ring>,
    /// mu(x_j), coefficients reduced mod I
    pub images: Vec<Poly>,
}

fn strip_trailing_zeros(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.last().map(|p| p.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

impl GaAction {
    /// Validates the co-action identities: mu(x_j)|_{t=0} = x_j mod I and
    /// mu_u(mu_t(x_j)) = mu_{t+u}(x_j) mod I.
    pub fn new(x: Arc<PresentedRing>, param: String, images: Vec<Poly>) -> Result<GaAction> {
        let mut vars = x.ring.vars.clone();
        vars.push(param.clone());
        let ext_ring = Ring::new(vars, x.ring.field.clone());
        let action = GaAction { x, param, ext_ring, images };
        action.validate()?;
        Ok(action)
    }

    fn validate(&self) -> Result<()> {
        let n = self.x.nvars();
        let ord = MonomialOrder::GrevLex;
        // evaluation at t = 0 returns the variable
        for (j, img) in self.images.iter().enumerate() {
            let coeffs = self.reduce_coeffs(img);
            let c0 = coeffs.first().cloned().unwrap_or_else(Poly::zero);
            if c0 != self.x.nf(&self.x.ring.var_poly(j)) {
                return Err(Error::GroupData(format!(
                    "mu({})|_(t=0) differs from the variable",
                    self.x.ring.vars[j]
                )));
            }
        }
        // coassociativity in K[x.., t, u]
        let mut vars = self.x.ring.vars.clone();
        vars.push(self.param.clone());
        vars.push(self.x.ring.fresh_name("#u"));
        let big = Ring::new(vars, self.x.ring.field.clone());
        let emb_ext: Vec<usize> = (0..=n).collect();
        let t = big.var_poly(n);
        let u = big.var_poly(n + 1);
        // images with x_k replaced by mu_u(x_k), keeping t
        let mut subst_u: Vec<Poly> = (0..n)
            .map(|k| self.images[k].embed(&emb_ext, n + 2))
            .collect();
        for img in subst_u.iter_mut() {
            // rename the parameter to u
            *img = img
                .project(
                    &(0..n + 2)
                        .map(|i| if i == n { Some(n + 1) } else { Some(i) })
                        .collect::<Vec<_>>(),
                    n + 2,
                )
                .expect("parameter rename");
        }
        subst_u.push(t.clone());
        let t_plus_u = t.add(&u, &ord);
        for (j, img) in self.images.iter().enumerate() {
            let img_big = img.embed(&emb_ext, n + 2);
            let lhs = substitute(&img_big, &subst_u, &ord);
            let mut shift: Vec<Poly> = (0..n).map(|k| big.var_poly(k)).collect();
            shift.push(t_plus_u.clone());
            let rhs = substitute(&img_big, &shift, &ord);
            let diff = lhs.sub(&rhs, &ord);
            if !self.coeffs_vanish_mod_i(&diff, &[n, n + 1], n) {
                return Err(Error::GroupData(format!(
                    "co-action identity fails for {}",
                    self.x.ring.vars[j]
                )));
            }
        }
        Ok(())
    }

    fn coeffs_vanish_mod_i(&self, p: &Poly, params: &[usize], n: usize) -> bool {
        let ord = MonomialOrder::GrevLex;
        for (_, coeff) in coefficients_wrt(p, params, &ord) {
            let proj: Vec<Option<usize>> = (0..coeff.terms.first().map(|(_, m)| m.0.len()).unwrap_or(n + params.len()))
                .map(|i| if i < n { Some(i) } else { None })
                .collect();
            let c = coeff.project(&proj, n).expect("parameter-free coefficient");
            if !self.x.is_zero_mod(&c) {
                return false;
            }
        }
        true
    }

    /// NF the t-coefficients of an extended-ring polynomial mod I; entry i is
    /// the coefficient of t^i, trailing zeros stripped.
    fn reduce_coeffs(&self, p: &Poly) -> Vec<Poly> {
        let n = self.x.nvars();
        let ord = MonomialOrder::GrevLex;
        let mut by_deg: BTreeMap<u32, Poly> = BTreeMap::new();
        for (key, val) in coefficients_wrt(p, &[n], &ord) {
            let proj: Vec<Option<usize>> =
                (0..n).map(Some).chain(std::iter::once(None)).collect();
            let v = val.project(&proj, n).expect("t-free coefficient");
            by_deg.insert(key.0[n], self.x.nf(&v));
        }
        let max = by_deg.keys().max().copied().unwrap_or(0);
        let out: Vec<Poly> =
            (0..=max).map(|d| by_deg.remove(&d).unwrap_or_else(Poly::zero)).collect();
        strip_trailing_zeros(out)
    }

    /// mu(h) as the coefficient list h_0..h_l (mod I, trailing zeros dropped).
    pub fn mu_expand(&self, h: &Poly) -> Vec<Poly> {
        let n = self.x.nvars();
        let ord = MonomialOrder::GrevLex;
        let emb: Vec<usize> = (0..n).collect();
        let mut images: Vec<Poly> = self.images.clone();
        images.push(self.ext_ring.var_poly(n));
        let img = substitute(&h.embed(&emb, n + 1), &images, &ord);
        self.reduce_coeffs(&img)
    }

    pub fn is_invariant(&self, h: &Poly) -> bool {
        let coeffs = self.mu_expand(h);
        coeffs.len() <= 1
    }

    /// The moving element of minimal (t-degree, variable index) among the
    /// variable classes; None when the action is trivial.
    pub fn pick_moving_generator(&self) -> Option<MovingElement> {
        let mut best: Option<MovingElement> = None;
        for j in 0..self.x.nvars() {
            let coeffs = self.mu_expand(&self.x.ring.var_poly(j));
            if coeffs.len() <= 1 {
                continue;
            }
            let r = (coeffs.len() - 1) as u32;
            if best.as_ref().map(|b| r < b.r).unwrap_or(true) {
                let f_r = coeffs.last().unwrap().clone();
                best = Some(MovingElement {
                    f: self.x.ring.var_poly(j),
                    var: j,
                    r,
                    coeffs,
                    f_r,
                });
            }
        }
        best
    }
}

/// A chosen f with mu(f) != f, together with its mu-coefficients.
#[derive(Clone, Debug)]
pub struct MovingElement {
    pub f: Poly,
    pub var: usize,
    pub r: u32,
    pub coeffs: Vec<Poly>,
    pub f_r: Poly,
}

/// The van den Essen slice data: generators u_1..u_m of R with
/// K[X]^Ga_{f_r} = K[u_1, .., u_m, 1/f_r] and the saturating element f_r.
pub struct GaLocalData {
    pub moving: MovingElement,
    /// cleared slice images of the ambient variables, zero entries dropped,
    /// primitive-normalized
    pub u_gens: Vec<Poly>,
    /// generators of R: the u's plus f_r (deduplicated)
    pub r_gens: Vec<Poly>,
    /// index of f_r inside r_gens
    pub fr_index: usize,
}

/// Clear gamma(h) = mu(h)|_{t = -s} by the minimal power of f_r, where
/// s = f_{r-1}/(r f_r). Returns None when gamma(h) = 0.
fn cleared_slice_image(
    x: &Arc<PresentedRing>,
    moving: &MovingElement,
    h_coeffs: &[Poly],
) -> Option<Poly> {
    let ord = MonomialOrder::GrevLex;
    let n = x.nvars();
    let l = h_coeffs.len().saturating_sub(1) as u32;
    let r = moving.r;
    let f_r = &moving.f_r;
    let s_num = if r >= 1 { moving.coeffs[(r - 1) as usize].clone() } else { Poly::zero() };
    let r_scalar = x.ring.field.from_i64(r as i64);
    // numerator of gamma(h) * (r f_r)^l
    let mut acc = Poly::zero();
    for (k, hk) in h_coeffs.iter().enumerate() {
        let k = k as u32;
        let minus_snum = s_num.neg().pow(k, &ord);
        let rf = f_r.scale(&r_scalar).pow(l - k, &ord);
        let term = if k == 0 {
            // (-s_num)^0 is 1; avoid pow-of-zero pitfalls
            hk.mul(&rf, &ord)
        } else {
            hk.mul(&minus_snum, &ord).mul(&rf, &ord)
        };
        acc = acc.add(&term, &ord);
    }
    let num = x.nf(&acc);
    if num.is_zero() {
        return None;
    }
    // minimal clearing exponent: the largest d <= l with num ∈ I + (f_r^d)
    let mut best = num.clone();
    for d in (1..=l).rev() {
        let frd = f_r.pow(d, &ord);
        let mut gens = x.ideal.clone();
        gens.push(frd.clone());
        let gb = groebner_basis(&gens, &ord);
        if normal_form(&num, &gb).is_zero() {
            let (cof, rem) = extended_normal_form(&num, &gens, &ord);
            debug_assert!(rem.is_zero());
            let w = x.nf(&cof[gens.len() - 1]);
            if !w.is_zero() {
                best = w;
                break;
            }
        }
        let _ = n;
    }
    Some(best.normalize_primitive())
}

/// The characteristic gate: the slice needs char = 0 or char not dividing r.
fn slice_allowed(x: &PresentedRing, r: u32, strict_char0: bool) -> bool {
    let p = x.ring.field.characteristic();
    if p == 0 {
        return true;
    }
    if strict_char0 {
        return false;
    }
    (r as u64) % p != 0
}

/// Generators of the localized invariant ring: g_i = mu(h_i)|_{t=-s} cleared
/// into K[X]. Requires a characteristic not dividing r.
pub fn ga_local_invariants(
    action: &GaAction,
    moving: &MovingElement,
    strict_char0: bool,
) -> Result<GaLocalData> {
    if !slice_allowed(&action.x, moving.r, strict_char0) {
        return Err(Error::SliceUnavailable { char_p: action.x.ring.field.characteristic() });
    }
    let x = &action.x;
    let mut u_gens = vec![];
    for j in 0..x.nvars() {
        let coeffs = action.mu_expand(&x.ring.var_poly(j));
        if let Some(u) = cleared_slice_image(x, moving, &coeffs) {
            if u.as_constant().is_none() && !u_gens.contains(&u) {
                u_gens.push(u);
            }
        }
    }
    let f_r_norm = moving.f_r.normalize_primitive();
    let mut r_gens = u_gens.clone();
    let fr_index = match r_gens.iter().position(|g| g == &f_r_norm) {
        Some(i) => i,
        None => {
            r_gens.push(f_r_norm);
            r_gens.len() - 1
        }
    };
    Ok(GaLocalData { moving: moving.clone(), u_gens, r_gens, fr_index })
}

/// The full invariant stream K[X]^Ga = (K[u_1..u_m, f_r] : (f_r)^inf)_K[X].
pub struct GaInvariantStream {
    pub local: Option<GaLocalData>,
    pub stream: GenStream,
    pub trivial: bool,
}

pub fn ga_invariant_stream(
    action: &GaAction,
    cap: usize,
    strict_char0: bool,
) -> Result<GaInvariantStream> {
    if !action.x.domain {
        return Err(Error::MissingAssertion("domain"));
    }
    match action.pick_moving_generator() {
        None => {
            // trivial action: the whole coordinate ring is invariant
            let gens: Vec<Poly> = (0..action.x.nvars()).map(|i| action.x.ring.var_poly(i)).collect();
            let tag_one = Poly::constant_in(action.x.ring.field.one(), gens.len());
            let stream = colon_saturation(&action.x, gens, vec![tag_one], cap)?;
            Ok(GaInvariantStream { local: None, stream, trivial: true })
        }
        Some(moving) => {
            let local = ga_local_invariants(action, &moving, strict_char0)?;
            let ntags = local.r_gens.len();
            let a_tag = Poly {
                terms: vec![(
                    action.x.ring.field.one(),
                    Monomial::var(ntags, local.fr_index),
                )],
            };
            let stream =
                colon_saturation(&action.x, local.r_gens.clone(), vec![a_tag], cap)?;
            Ok(GaInvariantStream { local: Some(local), stream, trivial: false })
        }
    }
}

/// Localize at f_r and extend the action; the moving element f/f_r then has a
/// monic mu-expansion. The identity transformation when f_r is constant.
pub struct Monicized {
    pub x_loc: Arc<PresentedRing>,
    pub action: GaAction,
    /// the monic moving element f/f_r (ambient in the localized ring)
    pub f_monic: Poly,
}

pub fn monicize(action: &GaAction, moving: &MovingElement) -> Result<Monicized> {
    let ord = MonomialOrder::GrevLex;
    let x = &action.x;
    let n = x.nvars();
    if let Some(c) = moving.f_r.as_constant() {
        let f_monic = moving.f.scale(&c.inv());
        let act = GaAction::new(x.clone(), action.param.clone(), action.images.clone())?;
        return Ok(Monicized { x_loc: x.clone(), action: act, f_monic });
    }
    let (x_loc, zi) = localize(x, &moving.f_r)?;
    // extend the images: old variables keep their images, the Rabinowitsch
    // variable is invariant because f_r is
    let emb_img: Vec<usize> = (0..n).chain(std::iter::once(n + 1)).collect();
    let mut images: Vec<Poly> = action.images.iter().map(|p| p.embed(&emb_img, n + 2)).collect();
    images.push(x_loc.ring.var_poly(zi).embed(&(0..n + 1).collect::<Vec<_>>(), n + 2));
    let act = GaAction::new(x_loc.clone(), action.param.clone(), images)?;
    let emb: Vec<usize> = (0..n).collect();
    let f_monic = x_loc.nf(&moving.f.embed(&emb, n + 1).mul(&x_loc.ring.var_poly(zi), &ord));
    Ok(Monicized { x_loc, action: act, f_monic })
}

/// Determinant by first-column Laplace expansion with memoized minors.
fn determinant(mat: &[Vec<Poly>], ord: &MonomialOrder, nvars: usize, one: &Scalar) -> Poly {
    let n = mat.len();
    let mut memo: BTreeMap<u64, Poly> = BTreeMap::new();
    fn minor(
        mat: &[Vec<Poly>],
        rows: u64,
        col: usize,
        ord: &MonomialOrder,
        nvars: usize,
        one: &Scalar,
        memo: &mut BTreeMap<u64, Poly>,
    ) -> Poly {
        let n = mat.len();
        if col == n {
            return Poly::constant_in(one.clone(), nvars);
        }
        if let Some(p) = memo.get(&rows) {
            return p.clone();
        }
        let mut acc = Poly::zero();
        let mut sign = false;
        for i in 0..n {
            if rows & (1 << i) == 0 {
                continue;
            }
            if !mat[i][col].is_zero() {
                let sub = minor(mat, rows & !(1 << i), col + 1, ord, nvars, one, memo);
                let term = mat[i][col].mul(&sub, ord);
                acc = if sign { acc.sub(&term, ord) } else { acc.add(&term, ord) };
            }
            sign = !sign;
        }
        memo.insert(rows, acc.clone());
        acc
    }
    minor(mat, (1u64 << n) - 1, 0, ord, nvars, one, &mut memo)
}

/// The resultant characteristic polynomial P(s) = Res_t(mu(u) - s, mu(f)) for
/// a monic mu(f): sign-normalized monic, all coefficients invariant, and
/// P(u) ≡ 0 mod (f). Returned as the coefficient list P_0..P_r of s^0..s^r.
pub fn resultant_charpoly(
    action: &GaAction,
    f_monic: &Poly,
    u_elem: &Poly,
) -> Result<Vec<Poly>> {
    let x = &action.x;
    let ord = MonomialOrder::GrevLex;
    let n = x.nvars();
    let f_coeffs = action.mu_expand(f_monic);
    let r = f_coeffs.len().saturating_sub(1);
    if r == 0 {
        return Err(Error::NonMonicResultant);
    }
    let lead_const = f_coeffs
        .last()
        .and_then(|c| c.as_constant().cloned())
        .ok_or(Error::NonMonicResultant)?;
    let f_coeffs: Vec<Poly> =
        f_coeffs.iter().map(|c| x.nf(&c.scale(&lead_const.inv()))).collect();
    let u_coeffs = action.mu_expand(u_elem);
    let l = u_coeffs.len().saturating_sub(1);

    // work in K[x.., s]
    let mut vars = x.ring.vars.clone();
    let sname = x.ring.fresh_name("#s");
    vars.push(sname);
    let sring = Ring::new(vars, x.ring.field.clone());
    let emb: Vec<usize> = (0..n).collect();
    let s = sring.var_poly(n);
    let one = sring.field.one();
    let mut a: Vec<Poly> = u_coeffs.iter().map(|c| c.embed(&emb, n + 1)).collect();
    a[0] = a[0].sub(&s, &ord);
    let b: Vec<Poly> = f_coeffs.iter().map(|c| c.embed(&emb, n + 1)).collect();

    let p_in_s = if l == 0 {
        // resultant of a t-constant with F: the constant to the deg(F)-th power
        a[0].pow(r as u32, &ord)
    } else {
        // Sylvester matrix: r rows of A (degree l), l rows of B (degree r)
        let size = l + r;
        let mut mat = vec![vec![Poly::zero(); size]; size];
        for row in 0..r {
            for (k, ak) in a.iter().enumerate() {
                mat[row][row + (l - k)] = ak.clone();
            }
        }
        for row in 0..l {
            for (k, bk) in b.iter().enumerate() {
                mat[r + row][row + (r - k)] = bk.clone();
            }
        }
        determinant(&mat, &ord, n + 1, &one)
    };

    // collect coefficients of s^0..s^r and sign-normalize to a monic P
    let proj: Vec<Option<usize>> = (0..n).map(Some).chain(std::iter::once(None)).collect();
    let mut by_deg: BTreeMap<u32, Poly> = BTreeMap::new();
    for (key, val) in coefficients_wrt(&p_in_s, &[n], &ord) {
        by_deg.insert(key.0[n], x.nf(&val.project(&proj, n).expect("s-free")));
    }
    let mut coeffs: Vec<Poly> =
        (0..=r as u32).map(|d| by_deg.remove(&d).unwrap_or_else(Poly::zero)).collect();
    let top = coeffs
        .last()
        .and_then(|c| c.as_constant().cloned())
        .ok_or_else(|| Error::Internal("resultant is not monic in s".into()))?;
    if !top.is_one() {
        if !top.neg().is_one() {
            return Err(Error::Internal("resultant lead is not a unit sign".into()));
        }
        coeffs = coeffs.iter().map(|c| c.neg()).collect();
    }

    // the coefficients are invariants, and P(u) lies in (f)
    for c in &coeffs {
        if !action.is_invariant(c) {
            return Err(Error::Internal("resultant coefficient is not invariant".into()));
        }
    }
    let mut pu = Poly::zero();
    for (d, c) in coeffs.iter().enumerate() {
        pu = pu.add(&c.mul(&u_elem.pow(d as u32, &ord), &ord), &ord);
    }
    let mut gens = x.ideal.clone();
    gens.push(f_monic.clone());
    let gb = groebner_basis(&gens, &ord);
    if !normal_form(&pu, &gb).is_zero() {
        return Err(Error::Internal("P(u) is not in (f)".into()));
    }
    Ok(coeffs)
}

/// The characteristic-p fallback: monicize the action at f_r and emit the
/// resultant subalgebra (the coefficients of the characteristic polynomials
/// of all coordinates). Completing these generators to the full invariant
/// ring needs integral closure, which is outside this library.
pub struct ResultantSubalgebra {
    pub x_loc: Arc<PresentedRing>,
    pub gens: Vec<Poly>,
}

pub fn ga_resultant_subalgebra(action: &GaAction) -> Result<ResultantSubalgebra> {
    let moving = action
        .pick_moving_generator()
        .ok_or_else(|| Error::GroupData("trivial action has no moving element".into()))?;
    let mon = monicize(action, &moving)?;
    let mut gens: Vec<Poly> = vec![];
    for j in 0..mon.x_loc.nvars() {
        let u = mon.x_loc.ring.var_poly(j);
        for c in resultant_charpoly(&mon.action, &mon.f_monic, &u)? {
            let c = c.normalize_primitive();
            if c.as_constant().is_none() && !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
    Ok(ResultantSubalgebra { x_loc: mon.x_loc, gens })
}
