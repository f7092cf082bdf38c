//! Small exact linear algebra over the active coefficient field: row
//! reduction, linear expression in a spanning set, and kernel vectors.
//! Used by the orbit-coefficient machinery of the invariants module.

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::scalar::{FieldCtx, Scalar};

/// Column support of a family of polynomials: all monomials, sorted.
fn column_index(polys: &[&Poly]) -> Vec<Monomial> {
    let mut cols: Vec<Monomial> = vec![];
    for p in polys {
        for (_, m) in &p.terms {
            if !cols.contains(m) {
                cols.push(m.clone());
            }
        }
    }
    cols.sort();
    cols
}

fn to_row(p: &Poly, cols: &[Monomial], field: &FieldCtx) -> Vec<Scalar> {
    let mut row = vec![field.zero(); cols.len()];
    for (c, m) in &p.terms {
        let j = cols.binary_search(m).expect("monomial in column index");
        row[j] = c.clone();
    }
    row
}

/// Reduced row echelon form in place; returns the pivot column of each row.
pub fn rref(mat: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return vec![];
    }
    let cols = mat[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        let mut pivot = None;
        for i in r..rows {
            if !mat[i][c].is_zero() {
                pivot = Some(i);
                break;
            }
        }
        let Some(pi) = pivot else { continue };
        mat.swap(r, pi);
        let inv = mat[r][c].inv();
        for j in c..cols {
            mat[r][j] = mat[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..cols {
                    let delta = mat[r][j].mul(&f);
                    mat[i][j] = mat[i][j].sub(&delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Greedy scan keeping a maximal linearly independent subset, in input order.
/// Returns the kept indices.
pub fn independent_subset(cands: &[Poly], field: &FieldCtx) -> Vec<usize> {
    let refs: Vec<&Poly> = cands.iter().collect();
    let cols = column_index(&refs);
    let mut echelon: Vec<Vec<Scalar>> = vec![];
    let mut kept = vec![];
    for (i, p) in cands.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let mut row = to_row(p, &cols, field);
        reduce_row(&mut row, &echelon);
        if row.iter().any(|x| !x.is_zero()) {
            normalize_row(&mut row);
            insert_sorted(&mut echelon, row);
            kept.push(i);
        }
    }
    kept
}

fn reduce_row(row: &mut [Scalar], echelon: &[Vec<Scalar>]) {
    for e in echelon {
        let lead = e.iter().position(|x| !x.is_zero()).unwrap();
        if !row[lead].is_zero() {
            let f = row[lead].clone();
            for j in lead..row.len() {
                let delta = e[j].mul(&f);
                row[j] = row[j].sub(&delta);
            }
        }
    }
}

fn normalize_row(row: &mut [Scalar]) {
    let lead = row.iter().position(|x| !x.is_zero()).unwrap();
    let inv = row[lead].inv();
    for x in row.iter_mut() {
        *x = x.mul(&inv);
    }
}

fn insert_sorted(echelon: &mut Vec<Vec<Scalar>>, row: Vec<Scalar>) {
    let lead = row.iter().position(|x| !x.is_zero()).unwrap();
    let at = echelon
        .iter()
        .position(|e| e.iter().position(|x| !x.is_zero()).unwrap() > lead)
        .unwrap_or(echelon.len());
    echelon.insert(at, row);
}

/// Express `target` as a K-linear combination of `basis`; None if impossible.
pub fn express_in_span(target: &Poly, basis: &[Poly], field: &FieldCtx) -> Option<Vec<Scalar>> {
    let mut refs: Vec<&Poly> = basis.iter().collect();
    refs.push(target);
    let cols = column_index(&refs);
    // solve basis^T x = target by row-reducing the augmented transpose
    let n = basis.len();
    let mut mat: Vec<Vec<Scalar>> = vec![];
    for (ci, _) in cols.iter().enumerate() {
        let mut row = Vec::with_capacity(n + 1);
        for b in basis {
            row.push(to_row(b, &cols, field)[ci].clone());
        }
        row.push(to_row(target, &cols, field)[ci].clone());
        mat.push(row);
    }
    let pivots = rref(&mut mat);
    if pivots.contains(&n) {
        return None; // inconsistent: pivot in the augmented column
    }
    let mut x = vec![field.zero(); n];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = mat[ri][n].clone();
    }
    Some(x)
}

/// The lexicographically first reduced kernel basis vector of the matrix
/// (columns = unknowns): the free column with the smallest index gets 1.
pub fn first_kernel_vector(mat: &mut Vec<Vec<Scalar>>, ncols: usize, field: &FieldCtx) -> Option<Vec<Scalar>> {
    let pivots = rref(mat);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let &f = free.first()?;
    let mut v = vec![field.zero(); ncols];
    v[f] = field.one();
    for (ri, &pc) in pivots.iter().enumerate() {
        // pivot value = -(coefficient of the free column in that row)
        v[pc] = mat[ri][f].neg();
    }
    Some(v)
}

/// Combine polynomials with scalar weights under `ord`.
pub fn linear_combination(weights: &[Scalar], polys: &[Poly], ord: &MonomialOrder) -> Poly {
    let mut acc = Poly::zero();
    for (w, p) in weights.iter().zip(polys) {
        if !w.is_zero() {
            acc = acc.add(&p.scale(w), ord);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::Ring;

    #[test]
    fn independence_and_expression() {
        let r = Ring::new(vec!["x".into(), "y".into()], FieldCtx::Rat);
        let cands = vec![
            parse_poly("x + y", &r).unwrap(),
            parse_poly("2*x + 2*y", &r).unwrap(),
            parse_poly("x - y", &r).unwrap(),
            parse_poly("y", &r).unwrap(),
        ];
        let kept = independent_subset(&cands, &r.field);
        assert_eq!(kept, vec![0, 2]);
        let basis = vec![cands[0].clone(), cands[2].clone()];
        let target = parse_poly("3*x + y", &r).unwrap();
        let x = express_in_span(&target, &basis, &r.field).unwrap();
        let back = linear_combination(&x, &basis, &MonomialOrder::GrevLex);
        assert_eq!(back, target.resort(&MonomialOrder::GrevLex));
        assert!(express_in_span(&parse_poly("x^2", &r).unwrap(), &basis, &r.field).is_none());
    }

    #[test]
    fn kernel_vector() {
        let f = FieldCtx::Rat;
        // x0 + x1 = 0, so kernel = span{(1, -1)}; first free column is x1
        let mut mat = vec![vec![f.from_i64(1), f.from_i64(1)]];
        let v = first_kernel_vector(&mut mat, 2, &f).unwrap();
        assert_eq!(v[1], f.from_i64(1));
        assert_eq!(v[0], f.from_i64(-1));
    }
}
