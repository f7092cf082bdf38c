//! The colon operations at the center of the library: one certified module
//! colon step (R : a)_S, the saturation generator stream (R : a^infinity)_S,
//! coordinate rings of quasi-affine varieties, the finite-generation-locus
//! stream, and the codimension-2 presentation loop.
//!
//! Nontermination of the saturation stream is expected behavior whenever the
//! target algebra is not finitely generated; every stream therefore carries an
//! iteration cap and a distinct `Capped` status.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{
    eliminate, extended_normal_form_pre, groebner_basis, groebner_basis_with_reps,
    intersect_ideals, normal_form,
};
use crate::idealops::{
    dim_of_quotient, ideal_colon, localize, reduce_tag_set, PresentedRing, SubIdeal, Subalgebra,
};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{substitute, Poly};

/// Certificate for one emitted colon generator: v lives in the tag ring and
/// satisfies phi(v) = phi(u) * (h + I).
#[derive(Clone, Debug)]
pub struct ColonCert {
    pub v_tags: Poly,
    pub h: Poly,
}

#[derive(Clone, Debug)]
pub struct ColonStepResult {
    /// Ambient representatives h with (R : a)_S = R*1 + sum R*(h + I).
    pub h: Vec<Poly>,
    /// The chosen u from the saturating set (first with nonzero image).
    pub u_tags: Poly,
    pub certs: Vec<ColonCert>,
}

/// One step of the colon computation, with certificates re-verified before
/// returning. `H` is empty exactly when (R : a)_S = R.
pub fn colon_step(r: &Subalgebra, a: &SubIdeal) -> Result<ColonStepResult> {
    if !r.ambient.domain {
        return Err(Error::MissingAssertion("domain"));
    }
    let s = &r.ambient;
    let ord = MonomialOrder::GrevLex;
    let ntags = r.tag_ring.nvars();

    // step 2: the first generator with nonzero image; a unit image means
    // a = R, so the colon is R and H is empty
    let mut u_tags: Option<Poly> = None;
    let mut unit = false;
    for g in &a.gens {
        let nf = r.nf_tags(g);
        if nf.is_zero() {
            continue;
        }
        if u_tags.is_none() {
            u_tags = Some(g.clone());
        }
        if nf.as_constant().is_some() {
            unit = true;
            break;
        }
    }
    let u = u_tags.ok_or(Error::ZeroSaturatingIdeal)?;
    if unit {
        return Ok(ColonStepResult { h: vec![], u_tags: u, certs: vec![] });
    }

    let j = r.kernel_presentation().to_vec();

    // step 3: c = (J + (u)) : (J + A)
    let mut ju = j.clone();
    ju.push(u.clone());
    let mut d_gens = j.clone();
    d_gens.extend(a.gens.iter().cloned());
    let c = ideal_colon(&ju, &d_gens, ntags);

    // step 4: u_ideal = <I, u, g_i - f_i> ∩ K[tags]
    let n = s.nvars();
    let big_n = n + ntags;
    let emb: Vec<usize> = (0..n).collect();
    let tag_emb: Vec<usize> = (n..big_n).collect();
    let mut v_gens: Vec<Poly> = s.ideal.iter().map(|p| p.embed(&emb, big_n)).collect();
    v_gens.push(u.embed(&tag_emb, big_n));
    for (i, f) in r.gens.iter().enumerate() {
        let tag = Poly { terms: vec![(s.ring.field.one(), Monomial::var(big_n, n + i))] };
        v_gens.push(tag.sub(&f.embed(&emb, big_n), &ord));
    }
    let keep: Vec<usize> = (n..big_n).collect();
    let proj: Vec<Option<usize>> = (0..n).map(|_| None).chain((0..ntags).map(Some)).collect();
    let u_ideal: Vec<Poly> = eliminate(&v_gens, big_n, &keep)
        .into_iter()
        .map(|g| g.project(&proj, ntags).expect("tag-supported"))
        .collect();

    // step 5: q = u_ideal ∩ c
    let q = intersect_ideals(&u_ideal, &c, ntags);
    let gq = groebner_basis(&q, &ord).gens;

    // step 6/7: drop the elements of G_q that reduce to zero modulo J + (u)
    let gp = groebner_basis(&ju, &ord);
    let survivors: Vec<Poly> =
        gq.into_iter().filter(|v| !normal_form(v, &gp).is_zero()).collect();

    if survivors.is_empty() {
        return Ok(ColonStepResult { h: vec![], u_tags: u, certs: vec![] });
    }

    // step 8: express each v over <I, u, g_i - f_i> and read off the cofactor
    // of u to get h with phi(v) = phi(u) (h + I)
    let (tracked, reps) = groebner_basis_with_reps(&v_gens, &ord);
    let u_pos = s.ideal.len();
    let u_img = s.nf(&r.tags_to_ambient(&u));
    let mut images: Vec<Poly> = (0..n).map(|i| s.ring.var_poly(i)).collect();
    images.extend(r.gens.iter().cloned());

    let mut h_out = vec![];
    let mut certs = vec![];
    for v in survivors {
        let v_emb = v.embed(&tag_emb, big_n);
        let (cof, rem) = extended_normal_form_pre(&v_emb, &v_gens, &tracked, &reps, &ord);
        if !rem.is_zero() {
            return Err(Error::Internal("colon-step element fails ideal membership".into()));
        }
        let b = &cof[u_pos];
        let h = s.nf(&substitute(b, &images, &ord));
        // re-verify the certificate identity phi(v) = phi(u) (h + I)
        let v_img = s.nf(&r.tags_to_ambient(&v));
        let rhs = s.nf(&u_img.mul(&h, &ord));
        if v_img != rhs {
            return Err(Error::Internal("colon certificate identity failed".into()));
        }
        if h.is_zero() {
            return Err(Error::Internal("colon generator is zero in S".into()));
        }
        if !h_out.contains(&h) {
            h_out.push(h.clone());
            certs.push(ColonCert { v_tags: v, h });
        }
    }
    Ok(ColonStepResult { h: h_out, u_tags: u, certs })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StreamStatus {
    Running,
    Terminated,
    Capped,
}

impl StreamStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            StreamStatus::Running => "running",
            StreamStatus::Terminated => "terminated",
            StreamStatus::Capped => "capped",
        }
    }
}

/// Data retained from one stream iteration.
#[derive(Debug)]
pub struct IterationRecord {
    pub batch: Vec<Poly>,
    pub step: Option<ColonStepResult>,
}

/// The possibly infinite generator stream of (R : a^infinity)_S, one batch per
/// iteration of the underlying while loop. Single consumer.
pub struct GenStream {
    pub s: Arc<PresentedRing>,
    orig_gens: Vec<Poly>,
    orig_a: Vec<Poly>,
    a_ambient: Vec<Poly>,
    /// accumulated generators (the set F)
    pub f_gens: Vec<Poly>,
    pending: Vec<Poly>,
    iteration: usize,
    cap: usize,
    status: StreamStatus,
    pub records: Vec<IterationRecord>,
    /// the subalgebra of the most recent colon step, for certificate checks
    pub last_sub: Option<Subalgebra>,
}

impl GenStream {
    /// `gens` generate R inside S; `a_tags` generate the ideal a over the tags
    /// g1..gr of those generators.
    pub fn new(
        s: Arc<PresentedRing>,
        gens: Vec<Poly>,
        a_tags: Vec<Poly>,
        cap: usize,
    ) -> Result<GenStream> {
        if !s.domain {
            return Err(Error::MissingAssertion("domain"));
        }
        let mut f0: Vec<Poly> = vec![];
        for g in &gens {
            let r = s.nf(g);
            if !r.is_zero() && !f0.contains(&r) {
                f0.push(r);
            }
        }
        let tmp = Subalgebra::new(s.clone(), gens.clone());
        let a_ambient: Vec<Poly> =
            a_tags.iter().map(|a| s.nf(&tmp.tags_to_ambient(a))).collect();
        Ok(GenStream {
            s,
            orig_gens: gens,
            orig_a: a_tags,
            a_ambient,
            f_gens: vec![],
            pending: f0,
            iteration: 0,
            cap,
            status: StreamStatus::Running,
            records: vec![],
            last_sub: None,
        })
    }

    pub fn status(&self) -> StreamStatus {
        self.status
    }

    pub fn iterations(&self) -> usize {
        self.iteration
    }

    /// Run one iteration: emit the pending batch, extend F, and compute the
    /// next batch by a colon step against the enlarged algebra.
    pub fn next_batch(&mut self) -> Result<Option<Vec<Poly>>> {
        if self.status != StreamStatus::Running {
            return Ok(None);
        }
        if self.pending.is_empty() {
            self.status = StreamStatus::Terminated;
            return Ok(None);
        }
        if self.iteration >= self.cap {
            self.status = StreamStatus::Capped;
            return Ok(None);
        }
        self.iteration += 1;
        let batch = std::mem::take(&mut self.pending);
        self.f_gens.extend(batch.iter().cloned());

        let rt = Subalgebra::new(self.s.clone(), self.f_gens.clone());
        let a_tags = if self.iteration == 1 && self.f_gens == self.orig_gens {
            self.orig_a.clone()
        } else {
            let mut out = vec![];
            for img in &self.a_ambient {
                out.push(rt.represent_in_generators(img).map_err(|e| {
                    Error::Internal(format!("saturating ideal left the algebra: {e}"))
                })?);
            }
            out
        };
        let a_red = reduce_tag_set(&rt, &a_tags);
        let a = SubIdeal { gens: if a_red.is_empty() { a_tags.clone() } else { a_red } };
        let step = colon_step(&rt, &a)?;
        self.pending = step.h.clone();
        self.records.push(IterationRecord { batch: batch.clone(), step: Some(step) });
        self.last_sub = Some(rt);
        Ok(Some(batch))
    }

    /// Drain the stream, invoking `sink` per batch.
    pub fn run(&mut self, mut sink: impl FnMut(usize, &[Poly])) -> Result<()> {
        while let Some(batch) = self.next_batch()? {
            sink(self.iteration, &batch);
        }
        Ok(())
    }
}

/// Build the stream for (R : a^infinity)_S.
pub fn colon_saturation(
    s: &Arc<PresentedRing>,
    r_gens: Vec<Poly>,
    a_tags: Vec<Poly>,
    cap: usize,
) -> Result<GenStream> {
    GenStream::new(s.clone(), r_gens, a_tags, cap)
}

/// The ring of regular functions on U = X \ V(a): localize at the first
/// nonzero generator f of a and saturate inside S = R_f. Emitted elements are
/// ambient polynomials of the localized presentation (f-power denominators
/// appear through the Rabinowitsch variable).
pub struct QuasiAffine {
    pub localized: Arc<PresentedRing>,
    pub inv_var: usize,
    pub stream: GenStream,
}

pub fn quasi_affine_ring(
    x: &Arc<PresentedRing>,
    a_gens: &[Poly],
    cap: usize,
) -> Result<QuasiAffine> {
    if !x.domain {
        return Err(Error::MissingAssertion("domain"));
    }
    let f = a_gens
        .iter()
        .find(|g| !x.is_zero_mod(g))
        .ok_or(Error::ZeroSaturatingIdeal)?;
    let (loc, inv_var) = localize(x, f)?;
    let n = x.nvars();
    let emb: Vec<usize> = (0..n).collect();
    let gens: Vec<Poly> = (0..n).map(|i| loc.ring.var_poly(i)).collect();
    // subalgebra generators are exactly the old coordinates, so ideal
    // generators over the tags are the same polynomials reindexed
    let a_tags: Vec<Poly> = a_gens
        .iter()
        .map(|g| Poly { terms: g.terms.clone() })
        .collect();
    let _ = emb;
    let stream = GenStream::new(loc.clone(), gens, a_tags, cap)?;
    Ok(QuasiAffine { localized: loc, inv_var, stream })
}

/// Per-iteration record of the finite-generation-locus stream: the enlarged
/// algebra and the un-radicaled colon ideal h~ = (f R~ : f (R~ : a)_S)_R~.
/// The true locus ideal is the radical of the union; radicals are not
/// computed, so results are "up to radical".
#[derive(Debug)]
pub struct FgliIteration {
    pub batch: Vec<Poly>,
    pub rtilde_gens: Vec<Poly>,
    pub h_tags: Vec<Poly>,
    pub h_ambient: Vec<Poly>,
}

#[derive(Debug)]
pub struct FgliRun {
    pub iterations: Vec<FgliIteration>,
    pub status: StreamStatus,
}

/// Compute h~ for the subalgebra of a finished colon step.
fn fgli_ideal(rt: &Subalgebra, step: &ColonStepResult) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let s = &rt.ambient;
    let ord = MonomialOrder::GrevLex;
    let ntags = rt.tag_ring.nvars();
    let u_img = s.nf(&rt.tags_to_ambient(&step.u_tags));
    let mut module_tags = vec![rt.nf_tags(&step.u_tags)];
    for h in &step.h {
        let prod = s.nf(&u_img.mul(h, &ord));
        let w = rt.represent_in_generators(&prod).map_err(|e| {
            Error::Internal(format!("f*h left the algebra in the fgli colon: {e}"))
        })?;
        module_tags.push(rt.nf_tags(&w));
    }
    let j = rt.kernel_presentation().to_vec();
    let mut lifted = vec![module_tags[0].clone()];
    lifted.extend(j.iter().cloned());
    let colon = ideal_colon(&lifted, &module_tags, ntags);
    let h_tags = reduce_tag_set(rt, &colon);
    let h_ambient: Vec<Poly> = {
        let mut out = vec![];
        for t in &h_tags {
            let img = s.nf(&rt.tags_to_ambient(t));
            if !img.is_zero() && !out.contains(&img) {
                out.push(img);
            }
        }
        out
    };
    Ok((h_tags, h_ambient))
}

/// The finite-generation-locus stream: per iteration the pair
/// (generators of R~_i, generators of h~_i), up to radical.
pub fn fgli_stream(
    s: &Arc<PresentedRing>,
    r_gens: Vec<Poly>,
    a_tags: Vec<Poly>,
    cap: usize,
) -> Result<FgliRun> {
    let mut stream = GenStream::new(s.clone(), r_gens, a_tags, cap)?;
    let mut iterations = vec![];
    while let Some(batch) = stream.next_batch()? {
        let rt = stream.last_sub.as_ref().expect("subalgebra of the step");
        let step = stream.records.last().unwrap().step.as_ref().unwrap();
        let (h_tags, h_ambient) = fgli_ideal(rt, step)?;
        iterations.push(FgliIteration {
            batch,
            rtilde_gens: stream.f_gens.clone(),
            h_tags,
            h_ambient,
        });
    }
    Ok(FgliRun { iterations, status: stream.status() })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StopReason {
    /// The colon step returned H = ∅: the algebra is finitely generated.
    Exhausted,
    /// codim(g~ S) >= 2.
    CodimAtLeastTwo,
    /// g~ S = S.
    UnitIdeal,
    /// Iteration cap reached first.
    Capped,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::Exhausted => "exhausted",
            StopReason::CodimAtLeastTwo => "codim2",
            StopReason::UnitIdeal => "unit",
            StopReason::Capped => "capped",
        }
    }
}

#[derive(Debug)]
pub struct Codim2Result {
    pub rtilde: Vec<Poly>,
    pub g_tags: Vec<Poly>,
    pub g_ambient: Vec<Poly>,
    pub dim_s: i64,
    pub dim_quotient: i64,
    pub codim: i64,
    pub iterations: usize,
    pub status: StreamStatus,
    pub stop: StopReason,
    pub batches: Vec<Vec<Poly>>,
}

/// The codimension-2 presentation loop: run fgli iterations until the locus
/// ideal cuts out codimension >= 2 (or becomes the unit ideal, or the colon
/// stabilizes). On success (R : a^infinity)_S = (R~ : g~^infinity)_{Q(R~)}.
pub fn codim2_presentation(
    s: &Arc<PresentedRing>,
    r_gens: Vec<Poly>,
    a_tags: Vec<Poly>,
    cap: usize,
) -> Result<Codim2Result> {
    // factorial rings are normal, so either assertion admits the loop
    if !s.normal && !s.factorial {
        return Err(Error::MissingAssertion("normal"));
    }
    let dim_s = s.dim();
    let mut stream = GenStream::new(s.clone(), r_gens, a_tags, cap)?;
    let mut g_tags: Vec<Poly> = vec![];
    let mut g_ambient: Vec<Poly> = vec![];
    let mut dim_quotient = dim_s;
    let mut codim: i64 = 0;
    let mut batches = vec![];
    let stop;
    loop {
        // loop condition, evaluated on the previous iteration's locus ideal
        if !g_ambient.is_empty() {
            dim_quotient = dim_of_quotient(s, &g_ambient);
            codim = dim_s - dim_quotient;
            if dim_quotient == -1 {
                stop = StopReason::UnitIdeal;
                break;
            }
            if codim >= 2 {
                stop = StopReason::CodimAtLeastTwo;
                break;
            }
        }
        match stream.next_batch()? {
            None => {
                stop = match stream.status() {
                    StreamStatus::Capped => StopReason::Capped,
                    _ => StopReason::Exhausted,
                };
                break;
            }
            Some(batch) => {
                batches.push(batch);
                let rt = stream.last_sub.as_ref().unwrap();
                let step = stream.records.last().unwrap().step.as_ref().unwrap();
                let (ht, ha) = fgli_ideal(rt, step)?;
                g_tags = ht;
                g_ambient = ha;
                if step.h.is_empty() {
                    // H = ∅: the full algebra is reached and h~ is the
                    // unit ideal; the next loop test reports it
                }
            }
        }
    }
    let status = match stop {
        StopReason::Capped => StreamStatus::Capped,
        _ => StreamStatus::Terminated,
    };
    // final codimension bookkeeping for the unit ideal
    if stop == StopReason::UnitIdeal {
        codim = dim_s - dim_quotient;
    }
    if stop == StopReason::Exhausted {
        // report the locus data of the last completed iteration
        if !g_ambient.is_empty() {
            dim_quotient = dim_of_quotient(s, &g_ambient);
            codim = dim_s - dim_quotient;
        }
    }
    Ok(Codim2Result {
        rtilde: stream.f_gens.clone(),
        g_tags,
        g_ambient,
        dim_s,
        dim_quotient,
        codim,
        iterations: stream.iterations(),
        status,
        stop,
        batches,
    })
}

/// Test-support oracle: does `g` lie in the subalgebra generated by `gens`
/// (ambient polynomials) of the presented ring?
pub fn in_generated_algebra(s: &Arc<PresentedRing>, gens: &[Poly], g: &Poly) -> bool {
    Subalgebra::new(s.clone(), gens.to_vec()).membership(g).is_some()
}
