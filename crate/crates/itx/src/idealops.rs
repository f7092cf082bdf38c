//! Ideal- and subalgebra-level operations on the Groebner engine: tag-variable
//! presentations, membership with witnesses, colon and saturation of ideals,
//! intersection of a submodule with a subalgebra, Krull dimension, and
//! localization presentations.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::module::{module_groebner, ModElem};
use crate::groebner::{groebner_basis, intersect_ideals, normal_form, GroebnerBasis};
use crate::monomial::{BaseOrder, Monomial, ModuleOrder, MonomialOrder, OrderBlock};
use crate::parse::poly_to_string;
use crate::poly::{substitute, Poly, Ring};

/// S = K[x_1..x_n]/I with cached reduced Groebner data. The domain / normal /
/// factorial flags are assertions trusted from the input; no primality test
/// is run.
#[derive(Debug)]
pub struct PresentedRing {
    pub ring: Arc<Ring>,
    pub ideal: Vec<Poly>,
    pub domain: bool,
    pub normal: bool,
    pub factorial: bool,
    gb: OnceLock<GroebnerBasis>,
}

impl PresentedRing {
    pub fn new(ring: Arc<Ring>, ideal: Vec<Poly>) -> Arc<PresentedRing> {
        Arc::new(PresentedRing {
            ring,
            ideal,
            domain: false,
            normal: false,
            factorial: false,
            gb: OnceLock::new(),
        })
    }

    pub fn with_flags(
        ring: Arc<Ring>,
        ideal: Vec<Poly>,
        domain: bool,
        normal: bool,
        factorial: bool,
    ) -> Arc<PresentedRing> {
        Arc::new(PresentedRing { ring, ideal, domain, normal, factorial, gb: OnceLock::new() })
    }

    /// Polynomial ring K[vars] with no relations, flagged as a domain.
    pub fn free(ring: Arc<Ring>) -> Arc<PresentedRing> {
        Arc::new(PresentedRing {
            ring,
            ideal: vec![],
            domain: true,
            normal: true,
            factorial: true,
            gb: OnceLock::new(),
        })
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| groebner_basis(&self.ideal, &MonomialOrder::GrevLex))
    }

    pub fn nf(&self, p: &Poly) -> Poly {
        normal_form(p, self.gb())
    }

    pub fn is_zero_mod(&self, p: &Poly) -> bool {
        self.nf(p).is_zero()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Krull dimension of the presented ring itself.
    pub fn dim(&self) -> i64 {
        krull_dimension(&self.ideal, self.ring.nvars())
    }
}

/// Internal tag names for graph rings; '#' keeps them out of the text grammar.
fn graph_tag(i: usize) -> String {
    format!("#g{}", i + 1)
}

#[derive(Debug)]
struct GraphData {
    ring: Arc<Ring>,
    order: MonomialOrder,
    basis: GroebnerBasis,
    /// J = kernel of g_i -> f_i + I, inside the tag ring, with its own basis.
    kernel: Vec<Poly>,
    kernel_gb: GroebnerBasis,
}

/// R = K[f_1 + I, ..., f_r + I] inside a presented ring, with the tag-variable
/// presentation K[g_1..g_r]/J ≅ R computed lazily and cached.
#[derive(Debug)]
pub struct Subalgebra {
    pub ambient: Arc<PresentedRing>,
    pub gens: Vec<Poly>,
    pub tag_ring: Arc<Ring>,
    graph: OnceLock<GraphData>,
}

impl Subalgebra {
    pub fn new(ambient: Arc<PresentedRing>, gens: Vec<Poly>) -> Subalgebra {
        let tags: Vec<String> = (0..gens.len()).map(|i| format!("g{}", i + 1)).collect();
        let tag_ring = Ring::new(tags, ambient.ring.field.clone());
        Subalgebra { ambient, gens, tag_ring, graph: OnceLock::new() }
    }

    fn graph(&self) -> &GraphData {
        self.graph.get_or_init(|| {
            let n = self.ambient.nvars();
            let r = self.gens.len();
            let mut vars = self.ambient.ring.vars.clone();
            vars.extend((0..r).map(graph_tag));
            let ring = Ring::new(vars, self.ambient.ring.field.clone());
            let order = MonomialOrder::Block {
                blocks: vec![
                    OrderBlock { vars: (0..n).collect(), order: BaseOrder::GrevLex },
                    OrderBlock { vars: (n..n + r).collect(), order: BaseOrder::GrevLex },
                ],
            };
            let emb: Vec<usize> = (0..n).collect();
            let mut gens: Vec<Poly> =
                self.ambient.ideal.iter().map(|p| p.embed(&emb, n + r)).collect();
            for (i, f) in self.gens.iter().enumerate() {
                let tag = Poly {
                    terms: vec![(self.ambient.ring.field.one(), Monomial::var(n + r, n + i))],
                };
                gens.push(tag.sub(&f.embed(&emb, n + r), &order));
            }
            let basis = groebner_basis(&gens, &order);
            let proj: Vec<Option<usize>> =
                (0..n).map(|_| None).chain((0..r).map(Some)).collect();
            let tag_idx: Vec<usize> = (n..n + r).collect();
            let kernel: Vec<Poly> = basis
                .gens
                .iter()
                .filter(|g| g.terms.iter().all(|(_, m)| m.supported_in(&tag_idx)))
                .map(|g| g.project(&proj, r).expect("kernel element is tag-supported"))
                .collect();
            // restriction of a reduced elimination basis is the reduced basis
            // of the contraction
            let kernel_gb = GroebnerBasis {
                gens: kernel.clone(),
                order: MonomialOrder::GrevLex,
                reduced: true,
            };
            GraphData { ring, order, basis, kernel, kernel_gb }
        })
    }

    /// Generators of J = ker(K[g] -> S), the full contraction of
    /// ⟨I, g_i - f_i⟩ to the tag ring.
    pub fn kernel_presentation(&self) -> &[Poly] {
        &self.graph().kernel
    }

    pub fn kernel_gb(&self) -> &GroebnerBasis {
        &self.graph().kernel_gb
    }

    /// Normal form in the tag ring modulo J.
    pub fn nf_tags(&self, p: &Poly) -> Poly {
        normal_form(p, self.kernel_gb())
    }

    /// Membership of an ambient element in the subalgebra. On success the
    /// witness w satisfies substitute(w, g -> f) ≡ element mod I; it is the
    /// normal form under the elimination order, so it is deterministic.
    pub fn membership(&self, g: &Poly) -> Option<Poly> {
        let data = self.graph();
        let n = self.ambient.nvars();
        let r = self.gens.len();
        let emb: Vec<usize> = (0..n).collect();
        let nf = normal_form(&g.embed(&emb, n + r), &data.basis);
        let tag_idx: Vec<usize> = (n..n + r).collect();
        if nf.terms.iter().all(|(_, m)| m.supported_in(&tag_idx)) {
            let proj: Vec<Option<usize>> =
                (0..n).map(|_| None).chain((0..r).map(Some)).collect();
            Some(nf.project(&proj, r).expect("tag-supported"))
        } else {
            None
        }
    }

    /// Membership that errors with the offending normal form.
    pub fn represent_in_generators(&self, g: &Poly) -> Result<Poly> {
        self.membership(g).ok_or_else(|| {
            let data = self.graph();
            let n = self.ambient.nvars();
            let emb: Vec<usize> = (0..n).collect();
            let nf = normal_form(&g.embed(&emb, n + self.gens.len()), &data.basis);
            Error::NotInSubalgebra {
                element: poly_to_string(g, &self.ambient.ring, &MonomialOrder::GrevLex),
                normal_form: poly_to_string(&nf, &data.ring, &data.order),
            }
        })
    }

    /// Image of a tag polynomial in the ambient presented ring (reduced mod I).
    pub fn tags_to_ambient(&self, p: &Poly) -> Poly {
        if self.gens.is_empty() {
            // R = K: tag polynomials are constants
            return match p.as_constant() {
                Some(c) => Poly::constant_in(c.clone(), self.ambient.nvars()),
                None => Poly::zero(),
            };
        }
        let img = substitute(p, &self.gens, &MonomialOrder::GrevLex);
        self.ambient.nf(&img)
    }
}

/// An ideal of a subalgebra, given by polynomials in the tag variables.
#[derive(Clone, Debug)]
pub struct SubIdeal {
    pub gens: Vec<Poly>,
}

/// Generator set of (a : b) inside K[x_1..x_n]; returned as the reduced
/// Groebner basis so that results are canonical.
pub fn ideal_colon(a: &[Poly], b: &[Poly], nvars: usize) -> Vec<Poly> {
    let b_nonzero: Vec<&Poly> = b.iter().filter(|p| !p.is_zero()).collect();
    if b_nonzero.is_empty() {
        // (a : 0) is the whole ring
        let one = a
            .iter()
            .chain(b.iter())
            .flat_map(|p| p.terms.first())
            .map(|(c, _)| c.mul(&c.inv()))
            .next();
        return match one {
            Some(c) => vec![Poly { terms: vec![(c, Monomial::one(nvars))] }],
            None => vec![],
        };
    }
    let ord = MonomialOrder::GrevLex;
    let mut acc: Option<Vec<Poly>> = None;
    for bi in b_nonzero {
        // (a : bi) = (a ∩ (bi)) / bi
        let inter = intersect_ideals(a, std::slice::from_ref(bi), nvars);
        let mut quot = vec![];
        for g in inter {
            let (q, rem) = div_exact(&g, bi, &ord);
            debug_assert!(rem.is_zero(), "intersection element must be divisible");
            quot.push(q);
        }
        acc = Some(match acc {
            None => quot,
            Some(prev) => intersect_ideals(&prev, &quot, nvars),
        });
    }
    let out = acc.unwrap_or_default();
    groebner_basis(&out, &ord).gens
}

fn div_exact(p: &Poly, d: &Poly, ord: &MonomialOrder) -> (Poly, Poly) {
    let mut q = Poly::zero();
    let mut work = p.resort(ord);
    let d = d.resort(ord);
    let (dc, dm) = d.lead().expect("nonzero divisor").clone();
    loop {
        let Some((c, m)) = work.lead().cloned() else { break };
        match dm.div(&m) {
            Some(f) => {
                let fc = c.div(&dc);
                let t = Poly { terms: vec![(fc, f)] };
                work = work.sub(&t.mul(&d, ord), ord);
                q = q.add(&t, ord);
            }
            None => break,
        }
    }
    (q, work)
}

/// (a : b^infinity) by iterating the colon to stabilization; also returns the
/// stabilization index k with (a : b^k) = (a : b^(k+1)).
pub fn ideal_saturation(a: &[Poly], b: &[Poly], nvars: usize) -> (Vec<Poly>, usize) {
    let ord = MonomialOrder::GrevLex;
    let mut cur = groebner_basis(a, &ord).gens;
    let mut k = 0;
    loop {
        let next = ideal_colon(&cur, b, nvars);
        if next == cur {
            return (cur, k);
        }
        cur = next;
        k += 1;
    }
}

/// Colon of ideals inside a presented ring K[x]/I, computed by lifting and
/// reducing: ((a + I) : (b + I)) in K[x], generators reduced mod I.
pub fn colon_in_quotient(pr: &PresentedRing, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut lifted = a.to_vec();
    lifted.extend(pr.ideal.iter().cloned());
    let out = ideal_colon(&lifted, b, pr.nvars());
    let mut reduced: Vec<Poly> = vec![];
    for g in out {
        let r = pr.nf(&g);
        if !r.is_zero() && !reduced.contains(&r) {
            reduced.push(r);
        }
    }
    reduced
}

/// Krull dimension of K[x_1..x_n]/ideal via maximal independent variable sets
/// modulo the lead-term ideal; the unit ideal reports the empty-variety
/// sentinel -1.
pub fn krull_dimension(ideal: &[Poly], nvars: usize) -> i64 {
    let gb = groebner_basis(ideal, &MonomialOrder::GrevLex);
    if gb.is_trivial() {
        return -1;
    }
    let leads: Vec<&Monomial> = gb.gens.iter().map(|g| &g.lead().unwrap().1).collect();
    if leads.is_empty() {
        return nvars as i64;
    }
    for size in (0..=nvars).rev() {
        if independent_set_exists(&leads, nvars, size) {
            return size as i64;
        }
    }
    0
}

fn independent_set_exists(leads: &[&Monomial], nvars: usize, size: usize) -> bool {
    // enumerate subsets of the given size
    let mut subset: Vec<usize> = (0..size).collect();
    if size > nvars {
        return false;
    }
    loop {
        if !leads.iter().any(|m| m.supported_in(&subset)) {
            return true;
        }
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if subset[i] != i + nvars - size {
                subset[i] += 1;
                for j in i + 1..size {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Dimension of S/(extra) for a presented ring S.
pub fn dim_of_quotient(pr: &PresentedRing, extra: &[Poly]) -> i64 {
    let mut gens = pr.ideal.clone();
    gens.extend(extra.iter().cloned());
    krull_dimension(&gens, pr.nvars())
}

/// The Rabinowitsch presentation of S_f: one fresh variable z and the relation
/// z*f - 1. Errors when f ≡ 0 mod I.
pub fn localize(pr: &Arc<PresentedRing>, f: &Poly) -> Result<(Arc<PresentedRing>, usize)> {
    if pr.is_zero_mod(f) {
        return Err(Error::LocalizeAtZero);
    }
    let n = pr.nvars();
    let mut vars = pr.ring.vars.clone();
    let zname = pr.ring.fresh_name("z");
    vars.push(zname);
    let ring = Ring::new(vars, pr.ring.field.clone());
    let emb: Vec<usize> = (0..n).collect();
    let ord = MonomialOrder::GrevLex;
    let mut ideal: Vec<Poly> = pr.ideal.iter().map(|p| p.embed(&emb, n + 1)).collect();
    let z = ring.var_poly(n);
    let one = Poly::constant_in(ring.field.one(), n + 1);
    ideal.push(z.mul(&f.embed(&emb, n + 1), &ord).sub(&one, &ord));
    Ok((
        PresentedRing::with_flags(ring, ideal, pr.domain, pr.normal, pr.factorial),
        n,
    ))
}

/// Output of the submodule-with-subalgebra intersection.
pub struct ModuleCap {
    /// Generators in tag coordinates: each is an element of K[g_1..g_m]^r.
    pub tag_gens: Vec<Vec<Poly>>,
    /// The same generators with g_i -> f_i substituted (ambient coordinates).
    pub ambient_gens: Vec<Vec<Poly>>,
    /// Row i expresses ambient_gens[i] as sum_j matrix[i][j] * m_gens[j].
    pub expressing_matrix: Option<Vec<Vec<Poly>>>,
}

/// Intersection of the submodule M = ⟨m_gens⟩ ⊆ K[x]^rank with A^rank for the
/// subalgebra A = K[sub_gens], as an A-module. Uses the dominant-variable
/// module order so that the pure-tag Groebner elements generate the
/// intersection.
pub fn module_cap_subalgebra(
    m_gens: &[Vec<Poly>],
    rank: usize,
    sub_gens: &[Poly],
    ring: &Ring,
    want_matrix: bool,
) -> ModuleCap {
    let n = ring.nvars();
    let m = sub_gens.len();
    let mut vars = ring.vars.clone();
    vars.extend((0..m).map(graph_tag));
    let ord = ModuleOrder::x_dominant(n + m, &(0..n).collect::<Vec<_>>());
    let emb: Vec<usize> = (0..n).collect();

    let mut gens: Vec<ModElem> = vec![];
    for comps in m_gens {
        let embedded: Vec<Poly> = comps.iter().map(|p| p.embed(&emb, n + m)).collect();
        gens.push(ModElem::from_components(&embedded, &ord));
    }
    let n_m = gens.len();
    for (j, f) in sub_gens.iter().enumerate() {
        let tag = Poly { terms: vec![(ring.field.one(), Monomial::var(n + m, n + j))] };
        let fy = f.embed(&emb, n + m).sub(&tag, &ord.ring);
        for k in 0..rank {
            let mut comps = vec![Poly::zero(); rank];
            comps[k] = fy.clone();
            gens.push(ModElem::from_components(&comps, &ord));
        }
    }
    let (basis, reps) = module_groebner(&gens, &ord, want_matrix);
    let tag_idx: Vec<usize> = (n..n + m).collect();
    let proj: Vec<Option<usize>> = (0..n).map(|_| None).chain((0..m).map(Some)).collect();

    let mut tag_gens = vec![];
    let mut ambient_gens = vec![];
    let mut matrix = vec![];
    for (bi, b) in basis.iter().enumerate() {
        if b.is_zero() || !b.terms.iter().all(|(_, mono, _)| mono.supported_in(&tag_idx)) {
            continue;
        }
        let tag_comps: Vec<Poly> = (0..rank)
            .map(|k| b.component(k).project(&proj, m).expect("tag-supported"))
            .collect();
        let amb_comps: Vec<Poly> = tag_comps
            .iter()
            .map(|p| substitute(p, sub_gens, &MonomialOrder::GrevLex))
            .collect();
        if want_matrix {
            // coefficients on the original m_gens, with tags substituted away
            let row: Vec<Poly> = (0..n_m)
                .map(|j| {
                    let mut images: Vec<Poly> = ring
                        .vars
                        .iter()
                        .enumerate()
                        .map(|(i, _)| ring.var_poly(i))
                        .collect();
                    images.extend(sub_gens.iter().cloned());
                    substitute(&reps[bi][j], &images, &MonomialOrder::GrevLex)
                })
                .collect();
            matrix.push(row);
        }
        tag_gens.push(tag_comps);
        ambient_gens.push(amb_comps);
    }
    ModuleCap {
        tag_gens,
        ambient_gens,
        expressing_matrix: if want_matrix { Some(matrix) } else { None },
    }
}

/// J-reduced, deduplicated, zero-free list of tag polynomials.
pub fn reduce_tag_set(sub: &Subalgebra, polys: &[Poly]) -> Vec<Poly> {
    let mut out: Vec<Poly> = vec![];
    for p in polys {
        let r = sub.nf_tags(p);
        if !r.is_zero() && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// Subalgebra membership by the auxiliary-variable criterion (the reduced
/// basis contains an element with lead monomial exactly t). This is the
/// second route to membership; the cached elimination normal form is the
/// production route, and the two must agree.
pub fn membership_via_lead_t(sub: &Subalgebra, g: &Poly) -> Option<Poly> {
    let amb = &sub.ambient;
    let n = amb.nvars();
    let r = sub.gens.len();
    // ring K[x.., t, g..] with blocks [x] >> [t] >> [g]
    let mut vars = amb.ring.vars.clone();
    let tname = amb.ring.fresh_name("#t");
    vars.push(tname);
    vars.extend((0..r).map(graph_tag));
    let ring = Ring::new(vars, amb.ring.field.clone());
    let order = MonomialOrder::Block {
        blocks: vec![
            OrderBlock { vars: (0..n).collect(), order: BaseOrder::GrevLex },
            OrderBlock { vars: vec![n], order: BaseOrder::Lex },
            OrderBlock { vars: (n + 1..n + 1 + r).collect(), order: BaseOrder::GrevLex },
        ],
    };
    let emb: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Poly> = amb.ideal.iter().map(|p| p.embed(&emb, n + 1 + r)).collect();
    let t = ring.var_poly(n);
    gens.push(g.embed(&emb, n + 1 + r).sub(&t, &order));
    for (i, f) in sub.gens.iter().enumerate() {
        let tag = ring.var_poly(n + 1 + i);
        gens.push(f.embed(&emb, n + 1 + r).sub(&tag, &order));
    }
    let gb = groebner_basis(&gens, &order);
    let t_mono = Monomial::var(n + 1 + r, n);
    for b in &gb.gens {
        if b.lead().map(|(_, m)| m == &t_mono).unwrap_or(false) {
            // b = t - w(g); the witness is w
            let w = t.sub(b, &order);
            let proj: Vec<Option<usize>> = (0..n + 1)
                .map(|_| None)
                .chain((0..r).map(Some))
                .collect();
            return Some(w.project(&proj, r).expect("witness is tag-supported"));
        }
    }
    None
}
