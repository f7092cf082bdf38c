//! Sparse exact multivariate polynomials. Terms are kept strictly decreasing
//! under the order supplied at construction; operations never round.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::{FieldCtx, Scalar};

/// A variable context: names plus the coefficient field.
#[derive(Clone, Debug)]
pub struct Ring {
    pub vars: Vec<String>,
    pub field: FieldCtx,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.field == other.field
    }
}

impl Ring {
    pub fn new(vars: Vec<String>, field: FieldCtx) -> Arc<Ring> {
        Arc::new(Ring { vars, field })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The variable x_i as a polynomial.
    pub fn var_poly(&self, i: usize) -> Poly {
        Poly { terms: vec![(self.field.one(), Monomial::var(self.nvars(), i))] }
    }

    /// A name not colliding with any declared variable: `base`, then `base1`, ...
    pub fn fresh_name(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        for k in 1.. {
            let cand = format!("{base}{k}");
            if self.var_index(&cand).is_none() {
                return cand;
            }
        }
        unreachable!()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    /// (coefficient, monomial), coefficients nonzero, monomials strictly
    /// decreasing under the active order.
    pub terms: Vec<(Scalar, Monomial)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: vec![] }
    }

    pub fn constant(c: Scalar) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(c, Monomial(vec![]))] }
        }
    }

    /// Constant in an n-variable ring.
    pub fn constant_in(c: Scalar, nvars: usize) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(c, Monomial::one(nvars))] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(coefficient) when the polynomial is a constant (or zero-variable) term.
    pub fn as_constant(&self) -> Option<&Scalar> {
        match self.terms.len() {
            0 => None,
            1 if self.terms[0].1.is_one() => Some(&self.terms[0].0),
            _ => None,
        }
    }

    pub fn lead(&self) -> Option<&(Scalar, Monomial)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(_, m)| m.total_degree()).max().unwrap_or(0)
    }

    /// Collapse duplicate monomials, drop zeros, sort decreasing under `ord`.
    pub fn from_terms(terms: Vec<(Scalar, Monomial)>, ord: &MonomialOrder) -> Poly {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (c, m) in terms {
            match map.remove(&m) {
                Some(prev) => {
                    let s = prev.add(&c);
                    if !s.is_zero() {
                        map.insert(m, s);
                    }
                }
                None => {
                    if !c.is_zero() {
                        map.insert(m, c);
                    }
                }
            }
        }
        let mut out: Vec<(Scalar, Monomial)> = map.into_iter().map(|(m, c)| (c, m)).collect();
        out.sort_by(|a, b| ord.compare(&b.1, &a.1));
        Poly { terms: out }
    }

    /// Re-sort an existing polynomial under a different order.
    pub fn resort(&self, ord: &MonomialOrder) -> Poly {
        let mut out = self.terms.clone();
        out.sort_by(|a, b| ord.compare(&b.1, &a.1));
        Poly { terms: out }
    }

    pub fn add(&self, o: &Poly, ord: &MonomialOrder) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            match ord.compare(&self.terms[i].1, &o.terms[j].1) {
                std::cmp::Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    terms.push(o.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.terms[i].0.add(&o.terms[j].0);
                    if !c.is_zero() {
                        terms.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&o.terms[j..]);
        Poly { terms }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(c, m)| (c.neg(), m.clone())).collect() }
    }

    pub fn sub(&self, o: &Poly, ord: &MonomialOrder) -> Poly {
        self.add(&o.neg(), ord)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(a, m)| (a.mul(c), m.clone())).collect() }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(a, t)| (a.mul(c), t.mul(m))).collect() }
    }

    pub fn mul(&self, o: &Poly, ord: &MonomialOrder) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (a, m) in &self.terms {
            for (b, n) in &o.terms {
                let mono = m.mul(n);
                let prod = a.mul(b);
                match map.remove(&mono) {
                    Some(prev) => {
                        let s = prev.add(&prod);
                        if !s.is_zero() {
                            map.insert(mono, s);
                        }
                    }
                    None => {
                        if !prod.is_zero() {
                            map.insert(mono, prod);
                        }
                    }
                }
            }
        }
        let mut out: Vec<(Scalar, Monomial)> = map.into_iter().map(|(m, c)| (c, m)).collect();
        out.sort_by(|a, b| ord.compare(&b.1, &a.1));
        Poly { terms: out }
    }

    pub fn pow(&self, k: u32, ord: &MonomialOrder) -> Poly {
        let mut acc: Option<Poly> = None;
        let mut base = self.clone();
        let mut e = k;
        if e == 0 {
            // caller must put the result in the right ring; exponent 0 of the
            // zero polynomial is taken as 1 as well
            let one = match self.terms.first() {
                Some((c, m)) => (c.mul(&c.inv()), Monomial::one(m.0.len())),
                None => return Poly { terms: vec![] },
            };
            return Poly { terms: vec![one] };
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base, ord),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ord);
            }
        }
        acc.unwrap()
    }

    /// Divide by the leading coefficient.
    pub fn make_monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some((c, _)) => {
                if c.is_one() {
                    self.clone()
                } else {
                    self.scale(&c.inv())
                }
            }
        }
    }

    /// Normalize for emission: over Q clear denominators and divide by the
    /// numerator gcd with a positive leading coefficient; over other fields
    /// make monic.
    pub fn normalize_primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        match &self.terms[0].0 {
            Scalar::Rat(_) => {
                let mut den_lcm = BigInt::one();
                let mut num_gcd = BigInt::zero();
                for (c, _) in &self.terms {
                    let r = c.as_rat().unwrap();
                    den_lcm = den_lcm.lcm(r.denom());
                    num_gcd = num_gcd.gcd(r.numer());
                }
                let mut factor = BigRational::new(den_lcm, num_gcd);
                let lead = self.terms[0].0.as_rat().unwrap();
                if (lead * &factor).is_negative() {
                    factor = -factor;
                }
                self.scale(&Scalar::Rat(factor))
            }
            _ => self.make_monic(),
        }
    }

    /// Map variables through an injective index map into a larger ring
    /// (`map[i]` is the target index of source variable i).
    pub fn embed(&self, map: &[usize], target_nvars: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(c, m)| {
                    let mut e = vec![0u32; target_nvars];
                    for (i, &exp) in m.0.iter().enumerate() {
                        e[map[i]] = exp;
                    }
                    (c.clone(), Monomial(e))
                })
                .collect(),
        }
    }

    /// Restrict to a smaller ring; `map[i] = Some(j)` sends source variable i to
    /// target j, `None` requires that the variable does not occur.
    pub fn project(&self, map: &[Option<usize>], target_nvars: usize) -> Result<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let mut e = vec![0u32; target_nvars];
            for (i, &exp) in m.0.iter().enumerate() {
                if exp > 0 {
                    match map[i] {
                        Some(j) => e[j] = exp,
                        None => {
                            return Err(Error::Internal(format!(
                                "projection drops an occurring variable (index {i})"
                            )))
                        }
                    }
                }
            }
            terms.push((c.clone(), Monomial(e)));
        }
        Ok(Poly { terms })
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let n = self.terms.first().map(|(_, m)| m.0.len()).unwrap_or(0);
        (0..n).filter(|&i| self.terms.iter().any(|(_, m)| m.0[i] > 0)).collect()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(_, m)| m.0[var]).max().unwrap_or(0)
    }
}

/// Ring-homomorphic substitution: every variable i of `p` is replaced by
/// `images[i]`, which live in a common target ring sorted under `ord`.
pub fn substitute(p: &Poly, images: &[Poly], ord: &MonomialOrder) -> Poly {
    let mut acc = Poly::zero();
    // cache variable powers per term lazily; desk-scale inputs keep this simple
    for (c, m) in &p.terms {
        let mut term: Option<Poly> = None;
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                let pw = images[i].pow(e, ord);
                term = Some(match term {
                    None => pw,
                    Some(t) => t.mul(&pw, ord),
                });
            }
        }
        let contrib = match term {
            None => {
                // constant term of the source: promote into the target ring;
                // the arity comes from any nonzero image
                let n = images
                    .iter()
                    .find_map(|q| q.terms.first().map(|(_, m)| m.0.len()))
                    .unwrap_or(0);
                Poly::constant_in(c.clone(), n)
            }
            Some(t) => t.scale(c),
        };
        acc = acc.add(&contrib, ord);
    }
    acc
}

/// Checked substitution for the public operation: every occurring variable
/// must have an image.
pub fn substitute_checked(
    p: &Poly,
    ring: &Ring,
    images: &[Option<Poly>],
    ord: &MonomialOrder,
) -> Result<Poly> {
    let mut full = Vec::with_capacity(images.len());
    for (i, im) in images.iter().enumerate() {
        match im {
            Some(q) => full.push(q.clone()),
            None => {
                if p.degree_in(i) > 0 {
                    return Err(Error::MissingImage(ring.vars[i].clone()));
                }
                full.push(Poly::zero());
            }
        }
    }
    Ok(substitute(p, &full, ord))
}

/// Collect `p` by the monomials in the `params` variables. Keys are monomials
/// supported in `params`; values contain no `params` variables. Returned in
/// increasing (total degree, exponent) order of the key for determinism.
pub fn coefficients_wrt(p: &Poly, params: &[usize], ord: &MonomialOrder) -> Vec<(Monomial, Poly)> {
    let mut map: BTreeMap<Monomial, Vec<(Scalar, Monomial)>> = BTreeMap::new();
    for (c, m) in &p.terms {
        let mut key = vec![0u32; m.0.len()];
        let mut rest = m.0.clone();
        for &i in params {
            key[i] = m.0[i];
            rest[i] = 0;
        }
        map.entry(Monomial(key)).or_default().push((c.clone(), Monomial(rest)));
    }
    let mut out: Vec<(Monomial, Poly)> =
        map.into_iter().map(|(k, terms)| (k, Poly::from_terms(terms, ord))).collect();
    out.sort_by(|a, b| (a.0.total_degree(), &a.0).cmp(&(b.0.total_degree(), &b.0)));
    out
}

/// The arithmetic dispatcher of the public surface.
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow(i64),
}

pub fn poly_arith(op: ArithOp, a: &Poly, b: Option<&Poly>, ring_a: &Ring, ring_b: &Ring, ord: &MonomialOrder) -> Result<Poly> {
    if ring_a != ring_b {
        return Err(Error::MixedRings);
    }
    match op {
        ArithOp::Add => Ok(a.add(b.expect("add needs two operands"), ord)),
        ArithOp::Sub => Ok(a.sub(b.expect("sub needs two operands"), ord)),
        ArithOp::Mul => Ok(a.mul(b.expect("mul needs two operands"), ord)),
        ArithOp::Pow(e) => {
            if e < 0 {
                return Err(Error::NegativePow);
            }
            let mut p = a.pow(e as u32, ord);
            if e == 0 && p.is_zero() {
                p = Poly::constant_in(ring_a.field.one(), ring_a.nvars());
            }
            Ok(p)
        }
    }
}
