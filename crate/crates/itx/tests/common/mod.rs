#![allow(dead_code)]

//! Shared oracles for the integration and acceptance suites. These stay
//! independent of the code paths they check: the invariant-space oracle is
//! plain linear algebra on the coefficient equations of mu(h) - h = 0, and
//! membership brute force enumerates degree-bounded monomials.

use std::sync::Arc;

use itx::linalg::rref;
use itx::monomial::{Monomial, MonomialOrder};
use itx::poly::{substitute, Poly, Ring};
use itx::scalar::Scalar;

/// All monomials of total degree <= maxdeg in nvars variables, in a fixed
/// deterministic order.
pub fn monomials_up_to(nvars: usize, maxdeg: u32) -> Vec<Monomial> {
    let mut out = vec![];
    let mut cur = vec![0u32; nvars];
    loop {
        if cur.iter().sum::<u32>() <= maxdeg {
            out.push(Monomial(cur.clone()));
        }
        let mut i = 0;
        loop {
            if i == nvars {
                out.sort_by_key(|m| (m.total_degree(), m.0.clone()));
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

/// A K-basis of { h in K[x], deg h <= maxdeg : mu(h) = h } for the action
/// whose comorphism images (in K[x.., params..]) are given. Pure linear
/// algebra; valid for polynomial coordinate rings (no relations).
pub fn invariant_space_le(
    ring: &Arc<Ring>,
    images: &[Poly],
    nparams: usize,
    maxdeg: u32,
) -> Vec<Poly> {
    let n = ring.nvars();
    let nv = n + nparams;
    let ord = MonomialOrder::GrevLex;
    let monos = monomials_up_to(n, maxdeg);
    let emb: Vec<usize> = (0..n).collect();
    let mut full_images: Vec<Poly> = images.to_vec();
    let ext_ring_one = {
        let mut vars = ring.vars.clone();
        for i in 0..nparams {
            vars.push(format!("#p{i}"));
        }
        Ring::new(vars, ring.field.clone())
    };
    for i in 0..nparams {
        full_images.push(ext_ring_one.var_poly(n + i));
    }
    // difference mu(m) - m per candidate monomial
    let diffs: Vec<Poly> = monos
        .iter()
        .map(|m| {
            let p = Poly { terms: vec![(ring.field.one(), m.clone())] };
            let mu = substitute(&p.embed(&emb, nv), &full_images, &ord);
            mu.sub(&p.embed(&emb, nv), &ord)
        })
        .collect();
    // columns of the linear system: every extended monomial that appears
    let mut support: Vec<Monomial> = vec![];
    for d in &diffs {
        for (_, m) in &d.terms {
            if !support.contains(m) {
                support.push(m.clone());
            }
        }
    }
    support.sort();
    if support.is_empty() {
        // everything is invariant
        return monos
            .iter()
            .map(|m| Poly { terms: vec![(ring.field.one(), m.clone())] })
            .collect();
    }
    let mut mat: Vec<Vec<Scalar>> = vec![];
    for row_mono in &support {
        let mut row = vec![];
        for d in &diffs {
            let c = d
                .terms
                .iter()
                .find(|(_, m)| m == row_mono)
                .map(|(c, _)| c.clone())
                .unwrap_or_else(|| ring.field.zero());
            row.push(c);
        }
        mat.push(row);
    }
    let pivots = rref(&mut mat);
    let free: Vec<usize> = (0..monos.len()).filter(|c| !pivots.contains(c)).collect();
    let mut basis = vec![];
    for f in free {
        let mut coeffs = vec![ring.field.zero(); monos.len()];
        coeffs[f] = ring.field.one();
        for (ri, &pc) in pivots.iter().enumerate() {
            coeffs[pc] = mat[ri][f].neg();
        }
        let terms: Vec<(Scalar, Monomial)> = coeffs
            .into_iter()
            .zip(monos.iter())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| (c, m.clone()))
            .collect();
        basis.push(Poly::from_terms(terms, &ord));
    }
    basis
}

/// Exit-code-and-stdout run of the installed binary on a fixture file.
pub fn run_binary(args: &[&str]) -> (String, String, i32) {
    let exe = env!("CARGO_BIN_EXE_itx");
    let out = std::process::Command::new(exe)
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().unwrap_or(-1),
    )
}

pub fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}
