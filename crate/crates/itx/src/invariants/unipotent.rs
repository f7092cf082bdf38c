//! Invariant rings of connected unipotent groups in filtered coordinates:
//! the group is given by a coordinate chain N_j = {t_{j+1} = ... = t_k = 0}
//! with each quotient N_j/N_{j-1} the additive group in the t_j coordinate.
//! The recursion peels off N_1, passes to the orbit algebra of the slice
//! generators, and descends to N/N_1; the output (T, d) presents the full
//! invariant ring as K[X]^N = (T : d^infinity)_K[X].

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::colonalg::codim2_presentation;
use crate::error::{Error, Result};
use crate::idealops::{module_cap_subalgebra, PresentedRing, Subalgebra};
use crate::invariants::{ga_local_invariants, GaAction};
use crate::linalg::{express_in_span, first_kernel_vector, independent_subset, linear_combination};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{coefficients_wrt, substitute, Poly, Ring};
use crate::scalar::Scalar;

pub struct UnipotentAction {
    pub x: Arc<PresentedRing>,
    /// group coordinates in chain order: N_j = {t_{j+1} = ... = t_k = 0}
    pub params: Vec<String>,
    /// K[x_1..x_n, t_1..t_k]
    pub ext_ring: Arc<Ring>,
    /// mu(x_j) in the extended ring
    pub images: Vec<Poly>,
    /// K[s_1..s_k, t_1..t_k]; component j of the product s*t
    pub law_ring: Arc<Ring>,
    pub law: Vec<Poly>,
    /// coordinates of t^{-1}, solved from the law
    pub inverse: Vec<Poly>,
}

fn zero_out(p: &Poly, vars: &[usize], ring: &Ring, ord: &MonomialOrder) -> Poly {
    let n = ring.nvars();
    let images: Vec<Poly> = (0..n)
        .map(|i| if vars.contains(&i) { Poly::zero() } else { ring.var_poly(i) })
        .collect();
    substitute(p, &images, ord)
}

impl UnipotentAction {
    pub fn new(
        x: Arc<PresentedRing>,
        params: Vec<String>,
        images: Vec<Poly>,
        law: Vec<Poly>,
    ) -> Result<UnipotentAction> {
        let k = params.len();
        let n = x.nvars();
        let mut ext_vars = x.ring.vars.clone();
        ext_vars.extend(params.iter().cloned());
        let ext_ring = Ring::new(ext_vars, x.ring.field.clone());
        let mut law_vars: Vec<String> = params.iter().map(|p| format!("{p}&1")).collect();
        law_vars.extend(params.iter().map(|p| format!("{p}&2")));
        let law_ring = Ring::new(law_vars, x.ring.field.clone());
        if images.len() != n || law.len() != k {
            return Err(Error::GroupData("image or law count mismatch".into()));
        }
        let mut action =
            UnipotentAction { x, params, ext_ring, images, law_ring, law, inverse: vec![] };
        action.validate_law()?;
        action.inverse = action.solve_inverse()?;
        action.validate_chain()?;
        action.validate_action()?;
        Ok(action)
    }

    /// m(s, 0) = s, m(0, t) = t, and associativity.
    fn validate_law(&self) -> Result<()> {
        let k = self.params.len();
        let ord = MonomialOrder::GrevLex;
        let lr = &self.law_ring;
        for j in 0..k {
            let m_s0 = zero_out(&self.law[j], &(k..2 * k).collect::<Vec<_>>(), lr, &ord);
            if m_s0 != lr.var_poly(j) {
                return Err(Error::GroupData("identity law m(s, 0) = s fails".into()));
            }
            let m_0t = zero_out(&self.law[j], &(0..k).collect::<Vec<_>>(), lr, &ord);
            if m_0t != lr.var_poly(k + j) {
                return Err(Error::GroupData("identity law m(0, t) = t fails".into()));
            }
        }
        // associativity over K[a_1..k, b_1..k, c_1..k]
        let mut vars: Vec<String> = (0..3)
            .flat_map(|blk| self.params.iter().map(move |p| format!("{p}&{blk}a")))
            .collect();
        let big = Ring::new(std::mem::take(&mut vars), lr.field.clone());
        let a: Vec<Poly> = (0..k).map(|i| big.var_poly(i)).collect();
        let b: Vec<Poly> = (0..k).map(|i| big.var_poly(k + i)).collect();
        let c: Vec<Poly> = (0..k).map(|i| big.var_poly(2 * k + i)).collect();
        let m = |s: &[Poly], t: &[Poly]| -> Vec<Poly> {
            let mut images = s.to_vec();
            images.extend(t.to_vec());
            self.law.iter().map(|l| substitute(l, &images, &ord)).collect()
        };
        let ab = m(&a, &b);
        let bc = m(&b, &c);
        let lhs = m(&ab, &c);
        let rhs = m(&a, &bc);
        if lhs != rhs {
            return Err(Error::GroupData("group law is not associative".into()));
        }
        Ok(())
    }

    /// Fixed-point solve of m(t, inv) = 0 starting from -t; verified on both
    /// sides afterwards.
    fn solve_inverse(&self) -> Result<Vec<Poly>> {
        let k = self.params.len();
        let ord = MonomialOrder::GrevLex;
        let pr = Ring::new(self.params.clone(), self.law_ring.field.clone());
        let t: Vec<Poly> = (0..k).map(|i| pr.var_poly(i)).collect();
        let m_in_pr = |s: &[Poly], w: &[Poly]| -> Vec<Poly> {
            let mut images = s.to_vec();
            images.extend(w.to_vec());
            self.law.iter().map(|l| substitute(l, &images, &ord)).collect()
        };
        let mut inv: Vec<Poly> = t.iter().map(|p| p.neg()).collect();
        for _ in 0..k + 2 {
            let err = m_in_pr(&t, &inv);
            if err.iter().all(|e| e.is_zero()) {
                break;
            }
            inv = inv.iter().zip(&err).map(|(i, e)| i.sub(e, &ord)).collect();
        }
        let right = m_in_pr(&t, &inv);
        let left = m_in_pr(&inv, &t);
        if right.iter().any(|e| !e.is_zero()) || left.iter().any(|e| !e.is_zero()) {
            return Err(Error::GroupData("could not solve for the group inverse".into()));
        }
        Ok(inv)
    }

    /// Filtered-coordinate checks: every N_j is closed under the law, each
    /// quotient coordinate adds, and right multiplication by N_1 leaves the
    /// trailing coordinates unchanged.
    fn validate_chain(&self) -> Result<()> {
        let k = self.params.len();
        let ord = MonomialOrder::GrevLex;
        let lr = &self.law_ring;
        for j in 1..=k {
            // both factors in N_j: zero the coordinates above j on both sides
            let kill: Vec<usize> =
                (j..k).chain(k + j..2 * k).collect();
            for (comp, l) in self.law.iter().enumerate() {
                let restricted = zero_out(l, &kill, lr, &ord);
                if comp >= j {
                    if !restricted.is_zero() {
                        return Err(Error::GroupData(format!(
                            "N_{j} is not closed under the law (component {})",
                            comp + 1
                        )));
                    }
                } else if comp + 1 == j {
                    let expect = lr.var_poly(comp).add(&lr.var_poly(k + comp), &ord);
                    if restricted != expect {
                        return Err(Error::GroupData(format!(
                            "N_{j}/N_{} is not the additive group in {}",
                            j - 1,
                            self.params[comp]
                        )));
                    }
                }
            }
        }
        // right cosets of N_1 project to the trailing coordinates
        if k >= 2 {
            let kill: Vec<usize> = (k + 1..2 * k).collect();
            for comp in 1..k {
                let restricted = zero_out(&self.law[comp], &kill, lr, &ord);
                if restricted != lr.var_poly(comp) {
                    return Err(Error::GroupData(
                        "right multiplication by N_1 moves a trailing coordinate".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// g_j(s, g(t, x)) = g_j(m(s, t), x) mod I, plus the identity at t = 0.
    fn validate_action(&self) -> Result<()> {
        let n = self.x.nvars();
        let k = self.params.len();
        let ord = MonomialOrder::GrevLex;
        for (j, img) in self.images.iter().enumerate() {
            let at0 = zero_out(img, &(n..n + k).collect::<Vec<_>>(), &self.ext_ring, &ord);
            let proj: Vec<Option<usize>> =
                (0..n).map(Some).chain((0..k).map(|_| None)).collect();
            let at0 = at0.project(&proj, n).map_err(|_| {
                Error::GroupData("image at t = 0 still contains a parameter".into())
            })?;
            if !self.x.is_zero_mod(&at0.sub(&self.x.ring.var_poly(j), &ord)) {
                return Err(Error::GroupData(format!(
                    "mu({})|_(t=0) differs from the variable",
                    self.x.ring.vars[j]
                )));
            }
        }
        // big ring K[x.., s.., t..]
        let mut vars = self.x.ring.vars.clone();
        vars.extend(self.params.iter().map(|p| format!("{p}&s")));
        vars.extend(self.params.iter().cloned());
        let big = Ring::new(vars, self.x.ring.field.clone());
        let nv = n + 2 * k;
        // images with the parameter block at the t-slots
        let emb_t: Vec<usize> = (0..n).chain(n + k..nv).collect();
        let img_t: Vec<Poly> = self.images.iter().map(|p| p.embed(&emb_t, nv)).collect();
        // images with the parameter block at the s-slots
        let emb_s: Vec<usize> = (0..n).chain(n..n + k).collect();
        let img_s: Vec<Poly> = self.images.iter().map(|p| p.embed(&emb_s, nv)).collect();
        // law components embedded: s-block then t-block
        let emb_law: Vec<usize> = (n..n + k).chain(n + k..nv).collect();
        let law_big: Vec<Poly> = self.law.iter().map(|l| l.embed(&emb_law, nv)).collect();

        for j in 0..n {
            // lhs: substitute x_i -> g_i(t, x) into g_j(s, x)
            let mut images = img_t.clone();
            for i in 0..2 * k {
                images.push(big.var_poly(n + i));
            }
            let lhs = substitute(&img_s[j], &images, &ord);
            // rhs: substitute the s-parameters of g_j(s, x) by the law
            let mut images = (0..n).map(|i| big.var_poly(i)).collect::<Vec<_>>();
            images.extend(law_big.iter().cloned());
            for i in 0..k {
                images.push(big.var_poly(n + k + i));
            }
            let rhs = substitute(&img_s[j], &images, &ord);
            let diff = lhs.sub(&rhs, &ord);
            for (_, coeff) in coefficients_wrt(&diff, &(n..nv).collect::<Vec<_>>(), &ord) {
                let proj: Vec<Option<usize>> =
                    (0..n).map(Some).chain((0..2 * k).map(|_| None)).collect();
                let c = coeff.project(&proj, n).expect("parameter-free");
                if !self.x.is_zero_mod(&c) {
                    return Err(Error::GroupData(format!(
                        "action axiom g(s, g(t, x)) = g(s*t, x) fails for {}",
                        self.x.ring.vars[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The restriction of the action to N_1 (all trailing parameters zero).
    pub fn restrict_to_n1(&self) -> Result<GaAction> {
        let n = self.x.nvars();
        let k = self.params.len();
        let ord = MonomialOrder::GrevLex;
        let kill: Vec<usize> = (n + 1..n + k).collect();
        let proj: Vec<Option<usize>> = (0..n + 1)
            .map(Some)
            .chain((0..k - 1).map(|_| None))
            .collect();
        let images: Vec<Poly> = self
            .images
            .iter()
            .map(|img| {
                zero_out(img, &kill, &self.ext_ring, &ord)
                    .project(&proj, n + 1)
                    .expect("trailing parameters are zeroed")
            })
            .collect();
        GaAction::new(self.x.clone(), self.params[0].clone(), images)
    }

    /// Coefficient expansion of mu(h) by group-coordinate monomials,
    /// in increasing key order, coefficients reduced mod I.
    pub fn mu_coefficients(&self, h: &Poly) -> Vec<(Monomial, Poly)> {
        let n = self.x.nvars();
        let k = self.params.len();
        let ord = MonomialOrder::GrevLex;
        let emb: Vec<usize> = (0..n).collect();
        let mut images = self.images.clone();
        for i in 0..k {
            images.push(self.ext_ring.var_poly(n + i));
        }
        let img = substitute(&h.embed(&emb, n + k), &images, &ord);
        let proj: Vec<Option<usize>> =
            (0..n).map(Some).chain((0..k).map(|_| None)).collect();
        coefficients_wrt(&img, &(n..n + k).collect::<Vec<_>>(), &ord)
            .into_iter()
            .map(|(key, val)| (key, self.x.nf(&val.project(&proj, n).expect("t-free"))))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    pub fn is_invariant(&self, h: &Poly) -> bool {
        self.mu_coefficients(h).iter().all(|(key, _)| key.is_one())
    }
}

/// A K-basis of the span of all group translates of the seeds: over an
/// infinite field the translates span exactly the coefficient span of mu,
/// scanned greedily in deterministic generation order.
pub fn orbit_algebra(action: &UnipotentAction, seeds: &[Poly]) -> Vec<Poly> {
    let mut cands = vec![];
    for s in seeds {
        for (_, c) in action.mu_coefficients(s) {
            cands.push(c);
        }
    }
    let kept = independent_subset(&cands, &action.x.ring.field);
    kept.into_iter().map(|i| cands[i].clone()).collect()
}

/// Output of the unipotent recursion: K[X]^N = (T : d^infinity)_K[X], with d
/// given over the tags of the T-generators.
pub struct UnipotentPresentation {
    pub t_gens: Vec<Poly>,
    pub d_tags: Vec<Poly>,
}

pub fn unipotent_invariants(
    action: &UnipotentAction,
    strict_char0: bool,
) -> Result<UnipotentPresentation> {
    if !action.x.domain {
        return Err(Error::MissingAssertion("domain"));
    }
    let (t_gens, d_tags) = recurse(action, strict_char0, 0)?;
    Ok(UnipotentPresentation { t_gens, d_tags })
}

/// The additive-group base data: generators of R and the ideal a (as ambient
/// polynomials) with S^{N_1} = (R : a^infinity)_S.
fn ga_base(
    action: &UnipotentAction,
    strict_char0: bool,
) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let ga = action.restrict_to_n1()?;
    match ga.pick_moving_generator() {
        None => {
            let x = &action.x;
            let gens: Vec<Poly> = (0..x.nvars()).map(|i| x.ring.var_poly(i)).collect();
            let one = Poly::constant_in(x.ring.field.one(), x.nvars());
            Ok((gens, vec![one]))
        }
        Some(moving) => {
            let local = ga_local_invariants(&ga, &moving, strict_char0)?;
            let f_r = local.r_gens[local.fr_index].clone();
            Ok((local.r_gens, vec![f_r]))
        }
    }
}

fn recurse(
    action: &UnipotentAction,
    strict_char0: bool,
    depth: usize,
) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let x = &action.x;
    let n = x.nvars();
    let k = action.params.len();
    let ord = MonomialOrder::GrevLex;
    if depth > 64 {
        return Err(Error::Internal("recursion deeper than the chain length".into()));
    }
    if k == 0 {
        let gens: Vec<Poly> = (0..n).map(|i| x.ring.var_poly(i)).collect();
        return Ok((gens, vec![Poly::constant_in(x.ring.field.one(), n)]));
    }
    if k == 1 {
        let (r_gens, a_amb) = ga_base(action, strict_char0)?;
        let sub = Subalgebra::new(x.clone(), r_gens.clone());
        let mut d_tags = vec![];
        for a in &a_amb {
            d_tags.push(sub.represent_in_generators(a)?);
        }
        return Ok((r_gens, d_tags));
    }

    // step 2: the N_1 base pair (R, a)
    let (r_gens, a_amb) = ga_base(action, strict_char0)?;

    // step 3: orbit algebra R' of the R-generators
    let w_basis = orbit_algebra(action, &r_gens);
    if w_basis.is_empty() {
        return Err(Error::Internal("orbit algebra of the base is empty".into()));
    }
    // step 4: the orbit ideal a' of the a-generators
    let v_basis = orbit_algebra(action, &a_amb);
    if v_basis.is_empty() {
        return Err(Error::ZeroSaturatingIdeal);
    }

    // step 5: present R' and push the action to the quotient N' = N/N_1
    let sub_w = Subalgebra::new(x.clone(), w_basis.clone());
    let xp = PresentedRing::with_flags(
        sub_w.tag_ring.clone(),
        sub_w.kernel_presentation().to_vec(),
        true,
        false,
        false,
    );
    let m = w_basis.len();
    let kp = k - 1;
    let mut ext_vars = xp.ring.vars.clone();
    ext_vars.extend(action.params[1..].iter().cloned());
    let ext_p = Ring::new(ext_vars, xp.ring.field.clone());
    let mut images_p = vec![];
    for b in &w_basis {
        let mut img = Poly::zero();
        for (key, val) in action.mu_coefficients(b) {
            if key.0[n] != 0 {
                // the section sets t_1 = 0
                continue;
            }
            let lambda = express_in_span(&val, &w_basis, &x.ring.field).ok_or_else(|| {
                Error::GroupData(
                    "orbit coefficient leaves the coefficient span; the chain is not \
                     in filtered coordinates"
                        .into(),
                )
            })?;
            let mut term = Poly::zero();
            for (beta, l) in lambda.iter().enumerate() {
                if !l.is_zero() {
                    term = term.add(&ext_p.var_poly(beta).scale(l), &ord);
                }
            }
            let key_mono = Monomial(
                (0..m + kp)
                    .map(|i| if i >= m { key.0[n + 1 + (i - m)] } else { 0 })
                    .collect(),
            );
            img = img.add(&term.mul_term(&xp.ring.field.one(), &key_mono), &ord);
        }
        images_p.push(img);
    }
    // quotient law: components 2..k with both first coordinates zero
    let lr = &action.law_ring;
    let kill: Vec<usize> = vec![0, k];
    let proj_law: Vec<Option<usize>> = (0..2 * k)
        .map(|i| {
            if i == 0 || i == k {
                None
            } else if i < k {
                Some(i - 1)
            } else {
                Some(kp + (i - k - 1))
            }
        })
        .collect();
    let law_p: Vec<Poly> = action.law[1..]
        .iter()
        .map(|l| {
            zero_out(l, &kill, lr, &ord)
                .project(&proj_law, 2 * kp)
                .expect("first coordinates are zeroed")
        })
        .collect();
    let action_p =
        UnipotentAction::new(xp.clone(), action.params[1..].to_vec(), images_p, law_p)?;

    // step 5 continued: recurse on (R', N')
    let (t_z, c_tags) = recurse(&action_p, strict_char0, depth + 1)?;
    let mut t_amb: Vec<Poly> = t_z.iter().map(|p| sub_w.tags_to_ambient(p)).collect();

    // step 6: a nonzero invariant a in (a')^{N'}: solve mu'(w) = w on the
    // coefficient span of the a-generators
    let mut keys: BTreeSet<Monomial> = BTreeSet::new();
    let mut expansions: Vec<Vec<(Monomial, Vec<Scalar>)>> = vec![];
    for v in &v_basis {
        let mut rows = vec![];
        for (key, val) in action.mu_coefficients(v) {
            if key.0[n] != 0 {
                continue;
            }
            if key.is_one() {
                continue;
            }
            let lambda = express_in_span(&val, &v_basis, &x.ring.field).ok_or_else(|| {
                Error::GroupData("a-orbit coefficient leaves its span".into())
            })?;
            keys.insert(key.clone());
            rows.push((key, lambda));
        }
        expansions.push(rows);
    }
    let alpha = if keys.is_empty() {
        // every v is already N'-invariant: take the first
        let mut a = vec![x.ring.field.zero(); v_basis.len()];
        a[0] = x.ring.field.one();
        a
    } else {
        let mut mat: Vec<Vec<Scalar>> = vec![];
        for key in &keys {
            for jp in 0..v_basis.len() {
                let mut row = vec![];
                for rows in &expansions {
                    let coef = rows
                        .iter()
                        .find(|(kk, _)| kk == key)
                        .map(|(_, l)| l[jp].clone())
                        .unwrap_or_else(|| x.ring.field.zero());
                    row.push(coef);
                }
                mat.push(row);
            }
        }
        first_kernel_vector(&mut mat, v_basis.len(), &x.ring.field).ok_or_else(|| {
            Error::InvariantSearchFailed(format!(
                "no nonzero invariant in the orbit span of the saturating ideal \
                 at recursion depth {depth} (span dimension {})",
                v_basis.len()
            ))
        })?
    };
    let a_elem = x.nf(&linear_combination(&alpha, &v_basis, &ord));
    if a_elem.is_zero() {
        return Err(Error::InvariantSearchFailed("kernel vector gave zero".into()));
    }
    let t_sub_check = Subalgebra::new(x.clone(), t_amb.clone());
    let appended_a = if a_elem.as_constant().is_some() {
        false
    } else if t_sub_check.membership(&a_elem).is_some() {
        false
    } else {
        t_amb.push(a_elem.clone());
        true
    };
    let _ = appended_a;

    // step 7: d = c * (a' ∩ T), both sides over the tags of T
    let mut a_in_z = vec![];
    for v in &v_basis {
        a_in_z.push(sub_w.represent_in_generators(v)?);
    }
    let mut t_in_z: Vec<Poly> = t_z.clone();
    if t_in_z.len() < t_amb.len() {
        // the appended invariant, expressed over the orbit generators
        let a_z = {
            let mut acc = Poly::zero();
            for (alpha_j, vz) in alpha.iter().zip(&a_in_z) {
                if !alpha_j.is_zero() {
                    acc = acc.add(&vz.scale(alpha_j), &ord);
                }
            }
            acc
        };
        t_in_z.push(a_z);
    }
    let mut m_gens: Vec<Vec<Poly>> = a_in_z.iter().map(|p| vec![p.clone()]).collect();
    for jgen in &xp.ideal {
        m_gens.push(vec![jgen.clone()]);
    }
    let cap = module_cap_subalgebra(&m_gens, 1, &t_in_z, &xp.ring, false);
    let mut cap_tags: Vec<Poly> = vec![];
    for comps in &cap.tag_gens {
        let c = &comps[0];
        if !c.is_zero() && !cap_tags.contains(c) {
            cap_tags.push(c.clone());
        }
    }
    if cap_tags.is_empty() {
        return Err(Error::Internal("a' ∩ T is zero despite the invariant element".into()));
    }
    let ntags_t = t_amb.len();
    let emb_old: Vec<usize> = (0..t_z.len()).collect();
    let mut d_tags = vec![];
    for c in &c_tags {
        let c_emb = c.embed(&emb_old, ntags_t);
        for e in &cap_tags {
            let prod = c_emb.mul(e, &ord);
            if !d_tags.contains(&prod) {
                d_tags.push(prod);
            }
        }
    }
    Ok((t_amb, d_tags))
}

/// The factorial pipeline: unipotent recursion followed by the codimension-2
/// presentation. Requires a factorial (hence normal) coordinate ring.
pub struct FactorialResult {
    pub presentation: UnipotentPresentation,
    pub codim2: crate::colonalg::Codim2Result,
}

pub fn factorial_invariants(
    action: &UnipotentAction,
    cap: usize,
    strict_char0: bool,
) -> Result<FactorialResult> {
    if !action.x.factorial {
        return Err(Error::MissingAssertion("factorial"));
    }
    let pres = unipotent_invariants(action, strict_char0)?;
    let codim2 = codim2_presentation(
        &action.x,
        pres.t_gens.clone(),
        pres.d_tags.clone(),
        cap,
    )?;
    Ok(FactorialResult { presentation: pres, codim2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colonalg::{colon_saturation, in_generated_algebra, StreamStatus};
    use crate::parse::{parse_poly, poly_to_string};
    use crate::scalar::FieldCtx;

    fn free(vars: &[&str]) -> Arc<PresentedRing> {
        PresentedRing::free(Ring::new(
            vars.iter().map(|s| s.to_string()).collect(),
            FieldCtx::Rat,
        ))
    }

    fn gstr(p: &Poly, r: &Ring) -> String {
        poly_to_string(p, r, &MonomialOrder::GrevLex)
    }

    /// G_a^2 on A^3: x -> x + t1 y + t2 z, y -> y, z -> z.
    fn ga2_action() -> UnipotentAction {
        let x = free(&["x", "y", "z"]);
        let mut ext_vars = x.ring.vars.clone();
        ext_vars.extend(["t1".to_string(), "t2".to_string()]);
        let ext = Ring::new(ext_vars, x.ring.field.clone());
        let images = vec![
            parse_poly("x + t1*y + t2*z", &ext).unwrap(),
            parse_poly("y", &ext).unwrap(),
            parse_poly("z", &ext).unwrap(),
        ];
        let lr = Ring::new(
            vec!["s1".into(), "s2".into(), "u1".into(), "u2".into()],
            x.ring.field.clone(),
        );
        let law = vec![
            parse_poly("s1 + u1", &lr).unwrap(),
            parse_poly("s2 + u2", &lr).unwrap(),
        ];
        UnipotentAction::new(x, vec!["t1".into(), "t2".into()], images, law).unwrap()
    }

    /// The Heisenberg group in filtered coordinates (c, b, a): the center
    /// comes first, m((c,b,a),(c',b',a')) = (c + c' + a b', b + b', a + a'),
    /// acting by x -> x + a y + c z, y -> y + b z, z -> z.
    fn heisenberg_action() -> UnipotentAction {
        let x = free(&["x", "y", "z"]);
        let mut ext_vars = x.ring.vars.clone();
        ext_vars.extend(["c".to_string(), "b".to_string(), "a".to_string()]);
        let ext = Ring::new(ext_vars, x.ring.field.clone());
        let images = vec![
            parse_poly("x + a*y + c*z", &ext).unwrap(),
            parse_poly("y + b*z", &ext).unwrap(),
            parse_poly("z", &ext).unwrap(),
        ];
        let lr = Ring::new(
            vec!["c1".into(), "b1".into(), "a1".into(), "c2".into(), "b2".into(), "a2".into()],
            x.ring.field.clone(),
        );
        let law = vec![
            parse_poly("c1 + c2 + a1*b2", &lr).unwrap(),
            parse_poly("b1 + b2", &lr).unwrap(),
            parse_poly("a1 + a2", &lr).unwrap(),
        ];
        UnipotentAction::new(x, vec!["c".into(), "b".into(), "a".into()], images, law).unwrap()
    }

    #[test]
    fn group_validation_accepts_fixtures() {
        let a = ga2_action();
        assert_eq!(a.inverse.len(), 2);
        let h = heisenberg_action();
        // inverse of (c,b,a) is (ab - c, -b, -a)
        let pr = Ring::new(h.params.clone(), FieldCtx::Rat);
        assert_eq!(gstr(&h.inverse[0], &pr), "b*a - c");
        assert_eq!(gstr(&h.inverse[1], &pr), "-b");
        assert_eq!(gstr(&h.inverse[2], &pr), "-a");
    }

    #[test]
    fn group_validation_rejects_bad_chain() {
        // Heisenberg with the center last: N_1 = {b = c = 0} is the a-axis,
        // which is closed but the quotient-coset check fails
        let x = free(&["x", "y", "z"]);
        let mut ext_vars = x.ring.vars.clone();
        ext_vars.extend(["a".to_string(), "b".to_string(), "c".to_string()]);
        let ext = Ring::new(ext_vars, x.ring.field.clone());
        let images = vec![
            parse_poly("x + a*y + c*z", &ext).unwrap(),
            parse_poly("y + b*z", &ext).unwrap(),
            parse_poly("z", &ext).unwrap(),
        ];
        let lr = Ring::new(
            vec!["a1".into(), "b1".into(), "c1".into(), "a2".into(), "b2".into(), "c2".into()],
            x.ring.field.clone(),
        );
        let law = vec![
            parse_poly("a1 + a2", &lr).unwrap(),
            parse_poly("b1 + b2", &lr).unwrap(),
            parse_poly("c1 + c2 + a1*b2", &lr).unwrap(),
        ];
        let err = UnipotentAction::new(x, vec!["a".into(), "b".into(), "c".into()], images, law);
        assert!(matches!(err, Err(Error::GroupData(_))));
    }

    #[test]
    fn invariance_under_the_full_group() {
        let h = heisenberg_action();
        assert!(h.is_invariant(&parse_poly("z", &h.x.ring).unwrap()));
        assert!(!h.is_invariant(&parse_poly("y", &h.x.ring).unwrap()));
        assert!(!h.is_invariant(&parse_poly("x", &h.x.ring).unwrap()));
        let g = ga2_action();
        assert!(g.is_invariant(&parse_poly("y*z", &g.x.ring).unwrap()));
        assert!(!g.is_invariant(&parse_poly("x", &g.x.ring).unwrap()));
    }

    #[test]
    fn orbit_algebra_examples() {
        let g = ga2_action();
        let seeds = vec![parse_poly("x", &g.x.ring).unwrap()];
        let orb = orbit_algebra(&g, &seeds);
        let mut strs: Vec<String> = orb.iter().map(|p| gstr(p, &g.x.ring)).collect();
        strs.sort();
        assert_eq!(strs, vec!["x", "y", "z"]);

        let h = heisenberg_action();
        let orb = orbit_algebra(&h, &[parse_poly("x", &h.x.ring).unwrap()]);
        let mut strs: Vec<String> = orb.iter().map(|p| gstr(p, &h.x.ring)).collect();
        strs.sort();
        assert_eq!(strs, vec!["x", "y", "z"]);

        let orb = orbit_algebra(&h, &[parse_poly("z", &h.x.ring).unwrap()]);
        let strs: Vec<String> = orb.iter().map(|p| gstr(p, &h.x.ring)).collect();
        assert_eq!(strs, vec!["z"]);
    }

    #[test]
    fn ga2_invariants() {
        let g = ga2_action();
        let pres = unipotent_invariants(&g, false).unwrap();
        // every generator of T and every d-image is invariant
        let sub = Subalgebra::new(g.x.clone(), pres.t_gens.clone());
        for t in &pres.t_gens {
            assert!(g.is_invariant(t), "T-generator not invariant");
        }
        for d in &pres.d_tags {
            let img = sub.tags_to_ambient(d);
            assert!(g.is_invariant(&img), "d-generator not invariant");
        }
        // the saturation stream terminates with K[y, z]
        let mut st =
            colon_saturation(&g.x, pres.t_gens.clone(), pres.d_tags.clone(), 16).unwrap();
        st.run(|_, _| {}).unwrap();
        assert_eq!(st.status(), StreamStatus::Terminated);
        for v in ["y", "z"] {
            assert!(in_generated_algebra(&g.x, &st.f_gens, &parse_poly(v, &g.x.ring).unwrap()));
        }
        for gen in &st.f_gens {
            assert!(g.is_invariant(gen));
        }
    }

    #[test]
    fn heisenberg_invariants() {
        let h = heisenberg_action();
        let pres = unipotent_invariants(&h, false).unwrap();
        for t in &pres.t_gens {
            assert!(h.is_invariant(t));
        }
        let mut st =
            colon_saturation(&h.x, pres.t_gens.clone(), pres.d_tags.clone(), 16).unwrap();
        st.run(|_, _| {}).unwrap();
        assert_eq!(st.status(), StreamStatus::Terminated);
        assert!(in_generated_algebra(&h.x, &st.f_gens, &parse_poly("z", &h.x.ring).unwrap()));
        for gen in &st.f_gens {
            assert!(h.is_invariant(gen), "emitted generator must be z-polynomial");
        }
    }

    #[test]
    fn single_parameter_reduces_to_ga() {
        // N = G_a (k = 1): identical output to the additive assembly
        let x = free(&["x", "y"]);
        let mut ext_vars = x.ring.vars.clone();
        ext_vars.push("t".to_string());
        let ext = Ring::new(ext_vars, x.ring.field.clone());
        let images =
            vec![parse_poly("x + t*y", &ext).unwrap(), parse_poly("y", &ext).unwrap()];
        let lr = Ring::new(vec!["s1".into(), "u1".into()], x.ring.field.clone());
        let law = vec![parse_poly("s1 + u1", &lr).unwrap()];
        let act = UnipotentAction::new(x.clone(), vec!["t".into()], images, law).unwrap();
        let pres = unipotent_invariants(&act, false).unwrap();
        assert_eq!(pres.t_gens.len(), 1);
        assert_eq!(gstr(&pres.t_gens[0], &x.ring), "y");
        assert_eq!(pres.d_tags.len(), 1);
    }

    #[test]
    fn factorial_pipeline_on_finitely_generated_fixtures() {
        // G_a on A^2: the invariant ring K[y] is finitely generated, the
        // locus is everything
        let x = free(&["x", "y"]);
        let mut ext_vars = x.ring.vars.clone();
        ext_vars.push("t".to_string());
        let ext = Ring::new(ext_vars, x.ring.field.clone());
        let images =
            vec![parse_poly("x + t*y", &ext).unwrap(), parse_poly("y", &ext).unwrap()];
        let lr = Ring::new(vec!["s1".into(), "u1".into()], x.ring.field.clone());
        let law = vec![parse_poly("s1 + u1", &lr).unwrap()];
        let act = UnipotentAction::new(x.clone(), vec!["t".into()], images, law).unwrap();
        let out = factorial_invariants(&act, 16, false).unwrap();
        assert!(out.codim2.g_tags.iter().any(|t| t.as_constant().is_some()));

        // G_a^2 on A^3 likewise ends with the unit locus
        let g = ga2_action();
        let out = factorial_invariants(&g, 16, false).unwrap();
        assert!(out.codim2.g_tags.iter().any(|t| t.as_constant().is_some()));

        // trivial action: T = K[X], locus (1)
        let xt = free(&["x", "y"]);
        let mut ext_vars = xt.ring.vars.clone();
        ext_vars.push("t".to_string());
        let ext = Ring::new(ext_vars, xt.ring.field.clone());
        let images = vec![parse_poly("x", &ext).unwrap(), parse_poly("y", &ext).unwrap()];
        let lr = Ring::new(vec!["s1".into(), "u1".into()], xt.ring.field.clone());
        let law = vec![parse_poly("s1 + u1", &lr).unwrap()];
        let act = UnipotentAction::new(xt.clone(), vec!["t".into()], images, law).unwrap();
        let out = factorial_invariants(&act, 16, false).unwrap();
        assert_eq!(out.presentation.t_gens.len(), 2);
        assert!(out.codim2.g_tags.iter().any(|t| t.as_constant().is_some()));
    }
}
