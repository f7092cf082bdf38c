//! Coefficient fields: exact rationals, prime fields F_p, and fraction fields
//! of presented domains K[y]/J (the latter only for the generic-freeness path).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::groebner::GroebnerBasis;
use crate::poly::{Poly, Ring};

/// Context of a fraction field Q(K[y]/J): the tag ring and a cached reduced
/// Groebner basis of the defining ideal J. J is trusted to be prime.
#[derive(Debug)]
pub struct QuotientCtx {
    pub ring: Arc<Ring>,
    pub basis: GroebnerBasis,
}

impl QuotientCtx {
    pub fn nf(&self, p: &Poly) -> Poly {
        crate::groebner::normal_form(p, &self.basis)
    }
}

impl PartialEq for QuotientCtx {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.ring == other.ring && self.basis.gens == other.basis.gens)
    }
}

/// Which field coefficients of a ring live in.
#[derive(Clone, Debug)]
pub enum FieldCtx {
    Rat,
    Fp(u64),
    Frac(Arc<QuotientCtx>),
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldCtx::Rat, FieldCtx::Rat) => true,
            (FieldCtx::Fp(p), FieldCtx::Fp(q)) => p == q,
            (FieldCtx::Frac(a), FieldCtx::Frac(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl FieldCtx {
    pub fn zero(&self) -> Scalar {
        match self {
            FieldCtx::Rat => Scalar::Rat(BigRational::zero()),
            FieldCtx::Fp(p) => Scalar::Fp { val: 0, p: *p },
            FieldCtx::Frac(ctx) => Scalar::frac(Poly::zero(), ctx.one_poly(), ctx.clone()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldCtx::Rat => Scalar::Rat(BigRational::one()),
            FieldCtx::Fp(p) => Scalar::Fp { val: 1 % p, p: *p },
            FieldCtx::Frac(ctx) => Scalar::frac(ctx.one_poly(), ctx.one_poly(), ctx.clone()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldCtx::Rat => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldCtx::Fp(p) => Scalar::Fp { val: n.rem_euclid(*p as i64) as u64, p: *p },
            FieldCtx::Frac(ctx) => {
                let base = ctx.ring.field.from_i64(n);
                Scalar::frac(Poly::constant_in(base, ctx.ring.nvars()), ctx.one_poly(), ctx.clone())
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Rat => 0,
            FieldCtx::Fp(p) => *p,
            FieldCtx::Frac(ctx) => ctx.ring.field.characteristic(),
        }
    }
}

impl QuotientCtx {
    fn one_poly(&self) -> Poly {
        Poly::constant_in(self.ring.field.one(), self.ring.nvars())
    }
}

/// One element of the active coefficient field.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Fp { val: u64, p: u64 },
    Frac(Box<FracElem>),
}

/// Fraction of two J-normal-form polynomials of the tag ring.
#[derive(Clone, Debug)]
pub struct FracElem {
    pub num: Poly,
    pub den: Poly,
    pub ctx: Arc<QuotientCtx>,
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime and a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "fp_inv of a non-unit");
    t.rem_euclid(p as i128) as u64
}

impl Scalar {
    pub fn frac(num: Poly, den: Poly, ctx: Arc<QuotientCtx>) -> Scalar {
        let mut e = FracElem { num, den, ctx };
        e.normalize();
        Scalar::Frac(Box::new(e))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::Frac(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
            Scalar::Frac(f) => !f.num.is_zero() && f.num == f.den,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => {
                assert_eq!(p, q);
                Scalar::Fp { val: (a + b) % p, p: *p }
            }
            (Scalar::Frac(a), Scalar::Frac(b)) => {
                let ord = &a.ctx.basis.order;
                let n = a.num.mul(&b.den, ord).add(&b.num.mul(&a.den, ord), ord);
                let d = a.den.mul(&b.den, ord);
                Scalar::frac(n, d, a.ctx.clone())
            }
            _ => panic!("scalar variant mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { val, p } => Scalar::Fp { val: (p - val) % p, p: *p },
            Scalar::Frac(a) => {
                let mut e = (**a).clone();
                e.num = e.num.neg();
                Scalar::Frac(Box::new(e))
            }
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => {
                assert_eq!(p, q);
                Scalar::Fp { val: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            (Scalar::Frac(a), Scalar::Frac(b)) => {
                let ord = &a.ctx.basis.order;
                let n = a.num.mul(&b.num, ord);
                let d = a.den.mul(&b.den, ord);
                Scalar::frac(n, d, a.ctx.clone())
            }
            _ => panic!("scalar variant mismatch"),
        }
    }

    /// Multiplicative inverse; the element must be nonzero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { val, p } => Scalar::Fp { val: fp_inv(*val, *p), p: *p },
            Scalar::Frac(a) => {
                assert!(!a.num.is_zero(), "inverse of zero");
                Scalar::frac(a.den.clone(), a.num.clone(), a.ctx.clone())
            }
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    /// For rationals: (numerator, denominator) as big integers.
    pub fn as_rat(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }
}

impl FracElem {
    fn normalize(&mut self) {
        self.num = self.ctx.nf(&self.num);
        self.den = self.ctx.nf(&self.den);
        assert!(!self.den.is_zero(), "fraction denominator is 0 mod J");
        let nv = self.ctx.ring.nvars();
        if self.num.is_zero() {
            self.den = Poly::constant_in(self.ctx.ring.field.one(), nv);
            return;
        }
        // fold constant denominators into the numerator
        if let Some(c) = self.den.as_constant() {
            self.num = self.num.scale(&c.inv());
            self.den = Poly::constant_in(self.ctx.ring.field.one(), nv);
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => p == q && a == b,
            (Scalar::Frac(a), Scalar::Frac(b)) => {
                // cross difference reduces to 0 mod J
                let ord = &a.ctx.basis.order;
                let d = a.num.mul(&b.den, ord).sub(&b.num.mul(&a.den, ord), ord);
                a.ctx.nf(&d).is_zero()
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
            Scalar::Frac(e) => {
                let ord = &e.ctx.basis.order;
                let n = crate::parse::poly_to_string(&e.num, &e.ctx.ring, ord);
                if e.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
                    write!(f, "({n})")
                } else {
                    let d = crate::parse::poly_to_string(&e.den, &e.ctx.ring, ord);
                    write!(f, "({n})/({d})")
                }
            }
        }
    }
}

/// Rational scalar helpers used by the printer and normalizers.
pub fn rat_sign_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rat(r) => r.is_negative(),
        _ => false,
    }
}

/// Deterministic Miller-Rabin for u64 moduli.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow = |mut b: u128, mut e: u64, m: u128| -> u128 {
        let mut acc: u128 = 1;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a as u128, d, n as u128);
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x % n as u128;
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
