//! Constructive generic freeness and the intersection Q(R) ∩ S.
//!
//! The freeness witness is found by presenting S over Q(R) with the same
//! generators as over K, computing a monic reduced Groebner basis over the
//! fraction field, and clearing every denominator that appears: for the
//! product f of the distinct denominators, S_f is a free R_f-module on the
//! standard monomials, with R_f a direct summand (1 is always standard).

use std::sync::Arc;

use crate::colonalg::{colon_saturation, GenStream};
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, normal_form, GroebnerBasis};
use crate::idealops::{PresentedRing, Subalgebra};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Poly, Ring};
use crate::scalar::{FieldCtx, QuotientCtx, Scalar};

pub struct FreenessResult {
    /// The clearing element in the tag ring K[g_1..g_r].
    pub f_tags: Poly,
    /// Its image in S.
    pub f_ambient: Poly,
    /// Reduced monic basis of the presentation ideal over Q(R)[x].
    pub monic_basis: Vec<Poly>,
    /// The distinct (monic-normalized) denominators cleared into f.
    pub denominators: Vec<Poly>,
    /// The ring Q(R)[x] the basis lives in.
    pub frac_ring: Arc<Ring>,
    pub quot_ctx: Arc<QuotientCtx>,
}

/// Lift a base-coefficient polynomial into Q(R)[x] coefficients.
fn lift_to_frac(p: &Poly, ctx: &Arc<QuotientCtx>) -> Poly {
    let nv = ctx.ring.nvars();
    let one = Poly::constant_in(ctx.ring.field.one(), nv);
    Poly {
        terms: p
            .terms
            .iter()
            .map(|(c, m)| {
                (
                    Scalar::frac(Poly::constant_in(c.clone(), nv), one.clone(), ctx.clone()),
                    m.clone(),
                )
            })
            .collect(),
    }
}

/// Find f in R \ {0} with S_f free over R_f and R_f a direct summand.
pub fn generic_freeness(s: &Arc<PresentedRing>, r: &Subalgebra) -> Result<FreenessResult> {
    if !s.domain {
        return Err(Error::MissingAssertion("domain"));
    }
    let ntags = r.tag_ring.nvars();
    let ctx = Arc::new(QuotientCtx {
        ring: r.tag_ring.clone(),
        basis: r.kernel_gb().clone(),
    });
    let frac_field = FieldCtx::Frac(ctx.clone());
    let frac_ring = Ring::new(s.ring.vars.clone(), frac_field.clone());
    let ord = MonomialOrder::GrevLex;

    // presentation of S over Q(R): the same generators as over K, plus the
    // graph relations f_i(x) - g_i with g_i a Q(R)-constant
    let mut gens: Vec<Poly> = s.ideal.iter().map(|p| lift_to_frac(p, &ctx)).collect();
    let one_tag = Poly::constant_in(ctx.ring.field.one(), ntags);
    for (i, f) in r.gens.iter().enumerate() {
        let tag_const = Scalar::frac(
            Poly { terms: vec![(ctx.ring.field.one(), Monomial::var(ntags, i))] },
            one_tag.clone(),
            ctx.clone(),
        );
        let lifted = lift_to_frac(f, &ctx);
        let tag_poly = Poly::constant_in(tag_const, s.nvars());
        gens.push(lifted.sub(&tag_poly, &ord));
    }
    let gb = groebner_basis(&gens, &ord);
    if gb.is_trivial() {
        return Err(Error::Internal("presentation over Q(R) collapsed to the unit ideal".into()));
    }

    // distinct denominators up to unit: monic in the tag ring, first-seen order
    let mut denominators: Vec<Poly> = vec![];
    for b in &gb.gens {
        for (c, _) in &b.terms {
            if let Scalar::Frac(e) = c {
                if e.den.as_constant().is_none() {
                    let d = e.den.make_monic();
                    if !denominators.contains(&d) {
                        denominators.push(d);
                    }
                }
            }
        }
    }
    let mut f_tags = Poly::constant_in(r.tag_ring.field.one(), ntags);
    for d in &denominators {
        f_tags = r.nf_tags(&f_tags.mul(d, &ord));
    }
    if f_tags.is_zero() {
        return Err(Error::Internal("denominator product vanished mod J".into()));
    }
    let f_ambient = r.tags_to_ambient(&f_tags);
    if s.is_zero_mod(&f_ambient) {
        return Err(Error::Internal("freeness witness is zero in S".into()));
    }
    Ok(FreenessResult {
        f_tags,
        f_ambient,
        monic_basis: gb.gens,
        denominators,
        frac_ring,
        quot_ctx: ctx,
    })
}

impl FreenessResult {
    /// Check that f*h lies in R_f[x] with denominator 1 for every basis
    /// element h: each coefficient (f*n)/d satisfies f*n ∈ (d) + J.
    pub fn clears_into_rf(&self, r: &Subalgebra) -> bool {
        let ord = MonomialOrder::GrevLex;
        for b in &self.monic_basis {
            for (c, _) in &b.terms {
                if let Scalar::Frac(e) = c {
                    let fn_ = self.f_tags.mul(&e.num, &ord);
                    let mut gens = vec![e.den.clone()];
                    gens.extend(r.kernel_presentation().to_vec());
                    let gb = groebner_basis(&gens, &ord);
                    if !normal_form(&fn_, &gb).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The standard monomials are the basis of S_f over R_f; 1 must be among
    /// them, which holds whenever the basis has no constant element.
    pub fn one_is_standard(&self) -> bool {
        !self.monic_basis.iter().any(|b| b.lead().map(|(_, m)| m.is_one()).unwrap_or(false))
    }

    /// Normal form of a lifted ambient element against the monic basis.
    pub fn nf_over_qr(&self, p: &Poly) -> Poly {
        let lifted = lift_to_frac(p, &self.quot_ctx);
        let gb = GroebnerBasis {
            gens: self.monic_basis.clone(),
            order: MonomialOrder::GrevLex,
            reduced: true,
        };
        normal_form(&lifted, &gb)
    }

    /// True when `d` divides f^k modulo J for some k <= bound.
    pub fn denominator_divides_f_power(&self, d: &Poly, r: &Subalgebra, bound: u32) -> bool {
        let ord = MonomialOrder::GrevLex;
        let ntags = r.tag_ring.nvars();
        let mut gens = vec![d.clone()];
        gens.extend(r.kernel_presentation().to_vec());
        let gb = groebner_basis(&gens, &ord);
        let mut fp = Poly::constant_in(r.tag_ring.field.one(), ntags);
        for _ in 0..=bound {
            if normal_form(&fp, &gb).is_zero() {
                return true;
            }
            fp = r.nf_tags(&fp.mul(&self.f_tags, &ord));
        }
        false
    }
}

/// Q(R) ∩ S by generic freeness followed by the saturation stream for
/// (R : f^infinity)_S.
pub fn field_intersection(
    s: &Arc<PresentedRing>,
    r_gens: Vec<Poly>,
    cap: usize,
) -> Result<(FreenessResult, GenStream)> {
    let r = Subalgebra::new(s.clone(), r_gens.clone());
    let fr = generic_freeness(s, &r)?;
    let stream = colon_saturation(s, r_gens, vec![fr.f_tags.clone()], cap)?;
    Ok((fr, stream))
}
