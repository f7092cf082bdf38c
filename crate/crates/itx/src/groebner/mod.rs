//! Buchberger's algorithm for ideals, normal forms, cofactor-tracking
//! (extended) reduction, and elimination. Pair selection is the normal
//! strategy (minimal lcm degree, ties by input index) so that every run is
//! deterministic and certificates are reproducible.

pub mod module;

use std::collections::BTreeSet;

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub gens: Vec<Poly>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn is_trivial(&self) -> bool {
        self.gens.iter().any(|g| g.lead().map(|(_, m)| m.is_one()).unwrap_or(false))
    }
}

/// One full division: returns (quotients per divisor, remainder). No monomial
/// of the remainder is divisible by any divisor's lead monomial.
fn divide(p: &Poly, divisors: &[Poly], ord: &MonomialOrder) -> (Vec<Poly>, Poly) {
    let mut quotients = vec![Poly::zero(); divisors.len()];
    let mut rem_terms: Vec<(Scalar, Monomial)> = vec![];
    let mut work = p.clone();
    'outer: while let Some((c, m)) = work.lead().cloned() {
        for (i, g) in divisors.iter().enumerate() {
            if let Some((gc, gm)) = g.lead() {
                if let Some(q) = gm.div(&m) {
                    let qc = c.div(gc);
                    work = work.sub(&g.mul_term(&qc, &q), ord);
                    quotients[i] =
                        quotients[i].add(&Poly { terms: vec![(qc, q)] }, ord);
                    continue 'outer;
                }
            }
        }
        rem_terms.push((c.clone(), m.clone()));
        work = work.sub(&Poly { terms: vec![(c, m)] }, ord);
    }
    (quotients, Poly::from_terms(rem_terms, ord))
}

/// Full normal form of `p` against the basis.
pub fn normal_form(p: &Poly, basis: &GroebnerBasis) -> Poly {
    divide(p, &basis.gens, &basis.order).1
}

/// Normal form against an arbitrary generator list under `ord`.
pub fn normal_form_vs(p: &Poly, gens: &[Poly], ord: &MonomialOrder) -> Poly {
    divide(p, gens, ord).1
}

fn s_poly(f: &Poly, g: &Poly, ord: &MonomialOrder) -> Poly {
    let (fc, fm) = f.lead().unwrap();
    let (gc, gm) = g.lead().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fc.inv(), &fm.div(&l).unwrap());
    let b = g.mul_term(&gc.inv(), &gm.div(&l).unwrap());
    a.sub(&b, ord)
}

struct PairQueue {
    /// (lcm total degree, i, j) with i < j; BTreeSet pops the minimum.
    pending: BTreeSet<(u64, usize, usize)>,
}

impl PairQueue {
    fn key(basis: &[Poly], i: usize, j: usize) -> (u64, usize, usize) {
        let l = basis[i].lead().unwrap().1.lcm(&basis[j].lead().unwrap().1);
        (l.total_degree(), i, j)
    }

    fn contains(&self, basis: &[Poly], i: usize, j: usize) -> bool {
        let (a, b) = (i.min(j), i.max(j));
        self.pending.contains(&Self::key(basis, a, b))
    }
}

/// Buchberger with the product and chain criteria, then inter-reduction to
/// the unique reduced basis (lead coefficients 1, sorted by decreasing lead
/// monomial).
pub fn groebner_basis(gens: &[Poly], order: &MonomialOrder) -> GroebnerBasis {
    let (basis, _) = buchberger(gens, order, false);
    GroebnerBasis { gens: basis, order: order.clone(), reduced: true }
}

/// As `groebner_basis` but also returns, for each basis element, its
/// representation as a combination of the input generators.
pub fn groebner_basis_with_reps(
    gens: &[Poly],
    order: &MonomialOrder,
) -> (GroebnerBasis, Vec<Vec<Poly>>) {
    let (basis, reps) = buchberger(gens, order, true);
    (GroebnerBasis { gens: basis, order: order.clone(), reduced: true }, reps)
}

fn buchberger(gens: &[Poly], ord: &MonomialOrder, track: bool) -> (Vec<Poly>, Vec<Vec<Poly>>) {
    let n_in = gens.len();
    let unit_rep = |i: usize, c: &Scalar| -> Vec<Poly> {
        let mut r = vec![Poly::zero(); n_in];
        if let Some((_, m)) = gens[i].lead() {
            r[i] = Poly { terms: vec![(c.clone(), Monomial::one(m.0.len()))] };
        }
        r
    };

    let mut basis: Vec<Poly> = vec![];
    let mut reps: Vec<Vec<Poly>> = vec![];
    for (i, g) in gens.iter().enumerate() {
        let g = g.resort(ord);
        if g.is_zero() {
            continue;
        }
        let lc = g.lead().unwrap().0.clone();
        basis.push(g.make_monic());
        if track {
            reps.push(unit_rep(i, &lc.inv()));
        }
    }

    let mut queue = PairQueue { pending: BTreeSet::new() };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            queue.pending.insert(PairQueue::key(&basis, i, j));
        }
    }

    while let Some(&(d, i, j)) = queue.pending.iter().next() {
        queue.pending.remove(&(d, i, j));
        let lmi = &basis[i].lead().unwrap().1;
        let lmj = &basis[j].lead().unwrap().1;
        let lcm = lmi.lcm(lmj);
        // product criterion
        if lcm == lmi.mul(lmj) {
            continue;
        }
        // chain criterion
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            if basis[k].lead().unwrap().1.divides(&lcm)
                && !queue.contains(&basis, i, k)
                && !queue.contains(&basis, j, k)
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], ord);
        let (q, rem) = divide(&s, &basis, ord);
        if rem.is_zero() {
            continue;
        }
        if track {
            // rep of s-poly, minus the quotient contributions
            let (fc, fm) = basis[i].lead().unwrap();
            let (gc, gm) = basis[j].lead().unwrap();
            let mi = fm.div(&lcm).unwrap();
            let mj = gm.div(&lcm).unwrap();
            let mut rep = vec![Poly::zero(); n_in];
            for t in 0..n_in {
                let a = reps[i][t].mul_term(&fc.inv(), &mi);
                let b = reps[j][t].mul_term(&gc.inv(), &mj);
                let mut r = a.sub(&b, ord);
                for (k, qk) in q.iter().enumerate() {
                    if !qk.is_zero() && !reps[k][t].is_zero() {
                        r = r.sub(&qk.mul(&reps[k][t], ord), ord);
                    }
                }
                rep[t] = r;
            }
            let lc = rem.lead().unwrap().0.clone();
            reps.push(rep.into_iter().map(|r| r.scale(&lc.inv())).collect());
        }
        let new = rem.make_monic();
        basis.push(new);
        let j_new = basis.len() - 1;
        for i2 in 0..j_new {
            queue.pending.insert(PairQueue::key(&basis, i2, j_new));
        }
    }

    inter_reduce(basis, reps, ord, track)
}

fn inter_reduce(
    mut basis: Vec<Poly>,
    mut reps: Vec<Vec<Poly>>,
    ord: &MonomialOrder,
    track: bool,
) -> (Vec<Poly>, Vec<Vec<Poly>>) {
    // minimal: drop any element whose lead monomial is divisible by another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lmi = &basis[i].lead().unwrap().1;
            let lmj = &basis[j].lead().unwrap().1;
            if lmj.divides(lmi) && (lmj != lmi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut kept: Vec<Poly> = vec![];
    let mut kept_reps: Vec<Vec<Poly>> = vec![];
    for (i, b) in basis.drain(..).enumerate() {
        if keep[i] {
            kept.push(b);
            if track {
                kept_reps.push(std::mem::take(&mut reps[i]));
            }
        }
    }
    // tail-reduce every element against the others
    for i in 0..kept.len() {
        let others: Vec<Poly> =
            kept.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        let (q, rem) = divide(&kept[i], &others, ord);
        if track {
            // adjust the representation by the reduction quotients
            let mut rep = std::mem::take(&mut kept_reps[i]);
            let mut oi = 0;
            for j in 0..kept.len() {
                if j == i {
                    continue;
                }
                if !q[oi].is_zero() {
                    for t in 0..rep.len() {
                        if !kept_reps[j][t].is_zero() {
                            let delta = q[oi].mul(&kept_reps[j][t], ord);
                            rep[t] = rep[t].sub(&delta, ord);
                        }
                    }
                }
                oi += 1;
            }
            let lc = rem.lead().map(|(c, _)| c.clone());
            kept_reps[i] = match lc {
                Some(c) => rep.into_iter().map(|r| r.scale(&c.inv())).collect(),
                None => rep,
            };
        }
        kept[i] = rem.make_monic();
    }
    // deterministic final layout: decreasing lead monomial
    let mut idx: Vec<usize> = (0..kept.len()).collect();
    idx.sort_by(|&a, &b| ord.compare(&kept[b].lead().unwrap().1, &kept[a].lead().unwrap().1));
    let basis: Vec<Poly> = idx.iter().map(|&i| kept[i].clone()).collect();
    let reps: Vec<Vec<Poly>> =
        if track { idx.iter().map(|&i| kept_reps[i].clone()).collect() } else { vec![] };
    (basis, reps)
}

/// Cofactor-tracking reduction: `p = sum_i cofactors[i] * gens[i] + remainder`,
/// the remainder being the normal form against the Groebner basis of `gens`.
pub fn extended_normal_form(
    p: &Poly,
    gens: &[Poly],
    ord: &MonomialOrder,
) -> (Vec<Poly>, Poly) {
    let (gb, reps) = groebner_basis_with_reps(gens, ord);
    extended_normal_form_pre(p, gens, &gb, &reps, ord)
}

/// As `extended_normal_form` with a precomputed tracked basis, so one basis
/// serves many reductions.
pub fn extended_normal_form_pre(
    p: &Poly,
    gens: &[Poly],
    gb: &GroebnerBasis,
    reps: &[Vec<Poly>],
    ord: &MonomialOrder,
) -> (Vec<Poly>, Poly) {
    let (q, rem) = divide(p, &gb.gens, ord);
    let mut cof = vec![Poly::zero(); gens.len()];
    for (k, qk) in q.iter().enumerate() {
        if qk.is_zero() {
            continue;
        }
        for t in 0..gens.len() {
            if !reps[k][t].is_zero() {
                cof[t] = cof[t].add(&qk.mul(&reps[k][t], ord), ord);
            }
        }
    }
    #[cfg(debug_assertions)]
    {
        let mut acc = rem.clone();
        for (c, g) in cof.iter().zip(gens) {
            acc = acc.add(&c.mul(&g.resort(ord), ord), ord);
        }
        debug_assert_eq!(acc, p.resort(ord), "extended reduction identity violated");
    }
    (cof, rem)
}

/// Generators of `ideal ∩ K[keep]`, computed with an elimination order. The
/// result stays in the ambient ring (exponents vanish off `keep`).
pub fn eliminate(gens: &[Poly], nvars: usize, keep: &[usize]) -> Vec<Poly> {
    let eliminated: Vec<usize> = (0..nvars).filter(|i| !keep.contains(i)).collect();
    let ord = MonomialOrder::elimination(nvars, &eliminated);
    let gb = groebner_basis(gens, &ord);
    gb.gens.into_iter().filter(|g| g.terms.iter().all(|(_, m)| m.supported_in(keep))).collect()
}

/// Ideal intersection via the single-tag construction:
/// `a ∩ b = ⟨t·a, (1-t)·b⟩ ∩ K[x]`.
pub fn intersect_ideals(a: &[Poly], b: &[Poly], nvars: usize) -> Vec<Poly> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    // tag variable appended at index nvars
    let embed_map: Vec<usize> = (0..nvars).collect();
    let t = Monomial::var(nvars + 1, nvars);
    let one_s = a
        .iter()
        .chain(b.iter())
        .flat_map(|p| p.terms.first())
        .map(|(c, _)| c.mul(&c.inv()))
        .next()
        .expect("nonzero generator");
    let tpoly = Poly { terms: vec![(one_s.clone(), t)] };
    let one = Poly { terms: vec![(one_s, Monomial::one(nvars + 1))] };
    let ord = MonomialOrder::GrevLex;
    let mut gens = vec![];
    for p in a {
        gens.push(tpoly.mul(&p.embed(&embed_map, nvars + 1), &ord));
    }
    let omt = one.sub(&tpoly, &ord);
    for p in b {
        gens.push(omt.mul(&p.embed(&embed_map, nvars + 1), &ord));
    }
    let keep: Vec<usize> = (0..nvars).collect();
    eliminate(&gens, nvars + 1, &keep)
        .into_iter()
        .map(|g| g.project(&(0..nvars + 1).map(|i| if i < nvars { Some(i) } else { None }).collect::<Vec<_>>(), nvars).unwrap())
        .collect()
}
