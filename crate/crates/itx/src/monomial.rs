//! Monomials and monomial orders, including block (elimination) orders and
//! the module orders used for submodule-with-subalgebra intersections.

use std::cmp::Ordering;

/// Exponent vector; length is fixed per ring.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), o.0.len(), "monomial arity mismatch");
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        debug_assert_eq!(self.0.len(), o.0.len(), "monomial arity mismatch");
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if self.divides(o) {
            Some(Monomial(o.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// True if every variable with a positive exponent lies in `vars`.
    pub fn supported_in(&self, vars: &[usize]) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e == 0 || vars.contains(&i))
    }

    /// True if some variable of `vars` has a positive exponent.
    pub fn touches(&self, vars: &[usize]) -> bool {
        vars.iter().any(|&i| self.0[i] > 0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BaseOrder {
    Lex,
    GrevLex,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderBlock {
    /// Variable indices of the block, in comparison order.
    pub vars: Vec<usize>,
    pub order: BaseOrder,
}

/// A multiplicative total order on monomials with 1 minimal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Weighted degree (nonnegative weights) with grevlex tiebreak.
    Weighted { weights: Vec<u64> },
    /// Blocks compared left to right; earlier blocks dominate (elimination order).
    Block { blocks: Vec<OrderBlock> },
}

fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    // Equal degree: the one whose last nonzero entry of a-b is negative is larger.
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_cmp(&a.0, &b.0),
            MonomialOrder::GrevLex => grevlex_cmp(&a.0, &b.0),
            MonomialOrder::Weighted { weights } => {
                let wa: u64 = a.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum();
                let wb: u64 = b.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum();
                match wa.cmp(&wb) {
                    Ordering::Equal => grevlex_cmp(&a.0, &b.0),
                    o => o,
                }
            }
            MonomialOrder::Block { blocks } => {
                for blk in blocks {
                    let ea: Vec<u32> = blk.vars.iter().map(|&i| a.0[i]).collect();
                    let eb: Vec<u32> = blk.vars.iter().map(|&i| b.0[i]).collect();
                    let c = match blk.order {
                        BaseOrder::Lex => lex_cmp(&ea, &eb),
                        BaseOrder::GrevLex => grevlex_cmp(&ea, &eb),
                    };
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Elimination order: variables of `eliminate` dominate the rest.
    pub fn elimination(nvars: usize, eliminate: &[usize]) -> MonomialOrder {
        let rest: Vec<usize> = (0..nvars).filter(|i| !eliminate.contains(i)).collect();
        MonomialOrder::Block {
            blocks: vec![
                OrderBlock { vars: eliminate.to_vec(), order: BaseOrder::GrevLex },
                OrderBlock { vars: rest, order: BaseOrder::GrevLex },
            ],
        }
    }
}

/// How a ring order extends to a free module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModuleExt {
    TermOverPosition,
    PositionOverTerm,
    /// Any monomial touching a dominant variable, in any component, exceeds any
    /// monomial free of them, in any component.
    XDominant { dominant: Vec<usize> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleOrder {
    pub ring: MonomialOrder,
    pub ext: ModuleExt,
}

impl ModuleOrder {
    /// Lower component index wins ties, so e_0 > e_1 > ...
    fn pos_cmp(c1: usize, c2: usize) -> Ordering {
        c2.cmp(&c1)
    }

    pub fn compare(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        match &self.ext {
            ModuleExt::TermOverPosition => match self.ring.compare(a.0, b.0) {
                Ordering::Equal => Self::pos_cmp(a.1, b.1),
                o => o,
            },
            ModuleExt::PositionOverTerm => match Self::pos_cmp(a.1, b.1) {
                Ordering::Equal => self.ring.compare(a.0, b.0),
                o => o,
            },
            ModuleExt::XDominant { dominant } => {
                let ta = a.0.touches(dominant);
                let tb = b.0.touches(dominant);
                match ta.cmp(&tb) {
                    Ordering::Equal => match self.ring.compare(a.0, b.0) {
                        Ordering::Equal => Self::pos_cmp(a.1, b.1),
                        o => o,
                    },
                    o => o,
                }
            }
        }
    }

    /// The order required by the submodule-with-subalgebra intersection: the
    /// ring order is the elimination order for the dominant variables, so the
    /// dominance flag is compatible with multiplication.
    pub fn x_dominant(nvars: usize, dominant: &[usize]) -> ModuleOrder {
        ModuleOrder {
            ring: MonomialOrder::elimination(nvars, dominant),
            ext: ModuleExt::XDominant { dominant: dominant.to_vec() },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_monomials(nvars: usize, maxdeg: u32) -> Vec<Monomial> {
        let mut out = vec![];
        let mut cur = vec![0u32; nvars];
        loop {
            if cur.iter().sum::<u32>() <= maxdeg {
                out.push(Monomial(cur.clone()));
            }
            let mut i = 0;
            loop {
                if i == nvars {
                    return out;
                }
                cur[i] += 1;
                if cur[i] > maxdeg {
                    cur[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    fn orders_under_test() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::Weighted { weights: vec![2, 1, 3] },
            MonomialOrder::elimination(3, &[0]),
            MonomialOrder::Block {
                blocks: vec![
                    OrderBlock { vars: vec![2], order: BaseOrder::Lex },
                    OrderBlock { vars: vec![0, 1], order: BaseOrder::GrevLex },
                ],
            },
        ]
    }

    /// Exhaustive on degree <= 4 monomials in 3 variables: totality,
    /// multiplicativity, and minimality of 1.
    #[test]
    fn order_axioms_exhaustive() {
        let monos = all_monomials(3, 4);
        let one = Monomial::one(3);
        for ord in orders_under_test() {
            for a in &monos {
                if !a.is_one() {
                    assert_eq!(ord.compare(a, &one), Ordering::Greater, "{ord:?} {a:?}");
                }
                for b in &monos {
                    let c = ord.compare(a, b);
                    assert_eq!(ord.compare(b, a), c.reverse());
                    if a == b {
                        assert_eq!(c, Ordering::Equal);
                    } else {
                        assert_ne!(c, Ordering::Equal, "total order: {a:?} vs {b:?}");
                    }
                    if c == Ordering::Greater {
                        // u > v implies uw > vw; degree-2 multipliers suffice here
                        for w in all_monomials(3, 2) {
                            assert_eq!(
                                ord.compare(&a.mul(&w), &b.mul(&w)),
                                Ordering::Greater,
                                "multiplicativity fails for {ord:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    /// The module order condition for the intersection algorithm:
    /// x_i e_j > y^d e_j' for every component pair.
    #[test]
    fn x_dominant_condition() {
        // variables: x0, x1 dominant; y2, y3 not
        let ord = ModuleOrder::x_dominant(4, &[0, 1]);
        for i in 0..2 {
            let xi = Monomial::var(4, i);
            for d2 in 0..4u32 {
                for d3 in 0..4u32 {
                    let y = Monomial(vec![0, 0, d2, d3]);
                    for j in 0..3 {
                        for jp in 0..3 {
                            assert_eq!(
                                ord.compare((&xi, j), (&y, jp)),
                                Ordering::Greater,
                                "x{i} e{j} must exceed y^({d2},{d3}) e{jp}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn grevlex_classic() {
        // x*z vs y^2 in grevlex x>y>z: both degree 2, last nonzero of a-b is
        // negative for x*z - y^2 = (1,-2,1): last nonzero is +1 at z, so y^2 > x*z.
        let ord = MonomialOrder::GrevLex;
        let xz = Monomial(vec![1, 0, 1]);
        let y2 = Monomial(vec![0, 2, 0]);
        assert_eq!(ord.compare(&y2, &xz), Ordering::Greater);
        // and lex says x*z > y^2
        assert_eq!(MonomialOrder::Lex.compare(&xz, &y2), Ordering::Greater);
    }
}
