//! The line-oriented problem file: section keywords `field`, `vars`,
//! `ideal:`, `assert`, `subalgebra:`, `saturating:`, `action param`, `mu`,
//! `group params`, `law`, `chain`. Comments start with `#`; polynomial text
//! follows the shared grammar.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::idealops::PresentedRing;
use crate::invariants::unipotent::UnipotentAction;
use crate::invariants::GaAction;
use crate::parse::parse_poly_at;
use crate::poly::{Poly, Ring};
use crate::scalar::{is_prime_u64, FieldCtx};

#[derive(Clone, Debug)]
struct RawList {
    items: Vec<(String, usize)>,
}

#[derive(Debug)]
pub struct ProblemFile {
    pub field: FieldCtx,
    pub vars: Vec<String>,
    pub ring: Arc<Ring>,
    pub ideal: Vec<Poly>,
    pub assert_domain: bool,
    pub assert_normal: bool,
    pub assert_factorial: bool,
    subalgebra_raw: Option<RawList>,
    saturating_raw: Option<RawList>,
    pub action_param: Option<String>,
    mu_raw: Vec<(String, String, usize)>,
    pub group_params: Option<Vec<String>>,
    law_raw: Vec<(String, String, usize)>,
    pub chain: Option<Vec<String>>,
}

fn split_idents(rest: &str, line: usize) -> Result<Vec<String>> {
    let mut out = vec![];
    for part in rest.split(',') {
        let name = part.trim();
        if name.is_empty() {
            return Err(Error::Syntax { line, col: 1, msg: "empty name in list".into() });
        }
        if !name.chars().next().unwrap().is_ascii_alphabetic() && !name.starts_with('_') {
            return Err(Error::Syntax {
                line,
                col: 1,
                msg: format!("invalid identifier `{name}`"),
            });
        }
        if out.contains(&name.to_string()) {
            return Err(Error::Syntax { line, col: 1, msg: format!("duplicate name `{name}`") });
        }
        out.push(name.to_string());
    }
    Ok(out)
}

fn split_polys(rest: &str, line: usize) -> RawList {
    let rest = rest.trim();
    if rest.is_empty() {
        return RawList { items: vec![] };
    }
    RawList {
        items: rest.split(',').map(|s| (s.trim().to_string(), line)).collect(),
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut field: Option<FieldCtx> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut ideal_raw: Option<RawList> = None;
    let mut assert_domain = false;
    let mut assert_normal = false;
    let mut assert_factorial = false;
    let mut subalgebra_raw = None;
    let mut saturating_raw = None;
    let mut action_param = None;
    let mut mu_raw: Vec<(String, String, usize)> = vec![];
    let mut group_params: Option<Vec<String>> = None;
    let mut law_raw: Vec<(String, String, usize)> = vec![];
    let mut chain: Option<Vec<String>> = None;

    for (i, raw_line) in text.lines().enumerate() {
        let lno = i + 1;
        let line = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Syntax { line: lno, col: 1, msg };
        if let Some(rest) = line.strip_prefix("field ") {
            let rest = rest.trim();
            if rest == "rational" {
                field = Some(FieldCtx::Rat);
            } else if let Some(p) = rest.strip_prefix("prime ") {
                let p: u64 = p
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad modulus `{}`", p.trim())))?;
                if !is_prime_u64(p) {
                    return Err(Error::NonPrimeModulus(p));
                }
                field = Some(FieldCtx::Fp(p));
            } else {
                return Err(err(format!("unknown field `{rest}`")));
            }
        } else if let Some(rest) = line.strip_prefix("vars ") {
            vars = Some(split_idents(rest, lno)?);
        } else if let Some(rest) = line.strip_prefix("ideal:") {
            ideal_raw = Some(split_polys(rest, lno));
        } else if let Some(rest) = line.strip_prefix("assert ") {
            match rest.trim() {
                "domain" => assert_domain = true,
                "normal" => assert_normal = true,
                "factorial" => assert_factorial = true,
                other => return Err(err(format!("unknown assertion `{other}`"))),
            }
        } else if let Some(rest) = line.strip_prefix("subalgebra:") {
            subalgebra_raw = Some(split_polys(rest, lno));
        } else if let Some(rest) = line.strip_prefix("saturating:") {
            saturating_raw = Some(split_polys(rest, lno));
        } else if let Some(rest) = line.strip_prefix("action param ") {
            let names = split_idents(rest, lno)?;
            if names.len() != 1 {
                return Err(err("action param takes exactly one name".into()));
            }
            action_param = Some(names[0].clone());
        } else if let Some(rest) = line.strip_prefix("group params ") {
            group_params = Some(split_idents(rest, lno)?);
        } else if let Some(rest) = line.strip_prefix("chain ") {
            chain = Some(split_idents(rest, lno)?);
        } else if let Some(rest) = line.strip_prefix("mu ") {
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| err("mu line needs `mu <var> = <poly>`".into()))?;
            mu_raw.push((lhs.trim().to_string(), rhs.trim().to_string(), lno));
        } else if let Some(rest) = line.strip_prefix("law ") {
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| err("law line needs `law <param> = <poly>`".into()))?;
            law_raw.push((lhs.trim().to_string(), rhs.trim().to_string(), lno));
        } else {
            return Err(err(format!("unknown section `{line}`")));
        }
    }

    let field = field.unwrap_or(FieldCtx::Rat);
    let vars = vars.ok_or(Error::MissingBlock("vars"))?;
    let ring = Ring::new(vars.clone(), field.clone());
    let mut ideal = vec![];
    if let Some(raw) = &ideal_raw {
        for (txt, lno) in &raw.items {
            ideal.push(parse_poly_at(txt, &ring, *lno)?);
        }
    }
    Ok(ProblemFile {
        field,
        vars,
        ring,
        ideal,
        assert_domain,
        assert_normal,
        assert_factorial,
        subalgebra_raw,
        saturating_raw,
        action_param,
        mu_raw,
        group_params,
        law_raw,
        chain,
    })
}

impl ProblemFile {
    pub fn presented_ring(&self) -> Arc<PresentedRing> {
        PresentedRing::with_flags(
            self.ring.clone(),
            self.ideal.clone(),
            self.assert_domain,
            self.assert_normal,
            self.assert_factorial,
        )
    }

    pub fn subalgebra_gens(&self) -> Result<Vec<Poly>> {
        let raw = self.subalgebra_raw.as_ref().ok_or(Error::MissingBlock("subalgebra"))?;
        let mut out = vec![];
        for (txt, lno) in &raw.items {
            out.push(parse_poly_at(txt, &self.ring, *lno)?);
        }
        Ok(out)
    }

    /// The saturating polynomials over the generator tags g1..gr.
    pub fn saturating_tags(&self, ntags: usize) -> Result<Vec<Poly>> {
        let raw = self.saturating_raw.as_ref().ok_or(Error::MissingBlock("saturating"))?;
        let tag_ring = Ring::new(
            (1..=ntags).map(|i| format!("g{i}")).collect(),
            self.field.clone(),
        );
        let mut out = vec![];
        for (txt, lno) in &raw.items {
            out.push(parse_poly_at(txt, &tag_ring, *lno)?);
        }
        Ok(out)
    }

    /// The saturating polynomials in the ambient variables (quasi-affine use).
    pub fn saturating_ambient(&self) -> Result<Vec<Poly>> {
        let raw = self.saturating_raw.as_ref().ok_or(Error::MissingBlock("saturating"))?;
        let mut out = vec![];
        for (txt, lno) in &raw.items {
            out.push(parse_poly_at(txt, &self.ring, *lno)?);
        }
        Ok(out)
    }

    pub fn ga_action(&self) -> Result<GaAction> {
        let param = self.action_param.clone().ok_or(Error::MissingBlock("action param"))?;
        let pr = self.presented_ring();
        let mut ext_vars = self.vars.clone();
        ext_vars.push(param.clone());
        let ext = Ring::new(ext_vars, self.field.clone());
        let images = self.mu_images(&ext)?;
        GaAction::new(pr, param, images)
    }

    fn mu_images(&self, ext: &Arc<Ring>) -> Result<Vec<Poly>> {
        let mut images: Vec<Option<Poly>> = vec![None; self.vars.len()];
        for (var, rhs, lno) in &self.mu_raw {
            let j = self
                .ring
                .var_index(var)
                .ok_or_else(|| Error::Undeclared { line: *lno, name: var.clone() })?;
            if images[j].is_some() {
                return Err(Error::Syntax {
                    line: *lno,
                    col: 1,
                    msg: format!("duplicate mu line for `{var}`"),
                });
            }
            images[j] = Some(parse_poly_at(rhs, ext, *lno)?);
        }
        images
            .into_iter()
            .enumerate()
            .map(|(j, im)| {
                im.ok_or_else(|| Error::MissingBlock("mu")).or_else(|e| {
                    let _ = e;
                    Err(Error::Syntax {
                        line: 1,
                        col: 1,
                        msg: format!("no mu line for variable `{}`", self.vars[j]),
                    })
                })
            })
            .collect()
    }

    /// Chain-ordered group parameters: the `chain` line reorders the declared
    /// parameters; without it the declaration order is the filtration.
    pub fn chain_params(&self) -> Result<Vec<String>> {
        let params = self.group_params.clone().ok_or(Error::MissingBlock("group params"))?;
        match &self.chain {
            None => Ok(params),
            Some(chain) => {
                let mut sorted_a: Vec<&String> = params.iter().collect();
                let mut sorted_b: Vec<&String> = chain.iter().collect();
                sorted_a.sort();
                sorted_b.sort();
                if sorted_a != sorted_b {
                    return Err(Error::Syntax {
                        line: 1,
                        col: 1,
                        msg: "chain must be a permutation of the group params".into(),
                    });
                }
                Ok(chain.clone())
            }
        }
    }

    pub fn unipotent_action(&self) -> Result<UnipotentAction> {
        let params = self.chain_params()?;
        let pr = self.presented_ring();
        let mut ext_vars = self.vars.clone();
        ext_vars.extend(params.iter().cloned());
        let ext = Ring::new(ext_vars, self.field.clone());
        let images = self.mu_images(&ext)?;
        // the law ring: p1.. for the first factor, p2.. for the second
        let mut law_vars: Vec<String> = params.iter().map(|p| format!("{p}1")).collect();
        law_vars.extend(params.iter().map(|p| format!("{p}2")));
        let law_ring = Ring::new(law_vars, self.field.clone());
        let mut law: Vec<Option<Poly>> = vec![None; params.len()];
        for (pname, rhs, lno) in &self.law_raw {
            let j = params
                .iter()
                .position(|p| p == pname)
                .ok_or_else(|| Error::Undeclared { line: *lno, name: pname.clone() })?;
            if law[j].is_some() {
                return Err(Error::Syntax {
                    line: *lno,
                    col: 1,
                    msg: format!("duplicate law line for `{pname}`"),
                });
            }
            law[j] = Some(parse_poly_at(rhs, &law_ring, *lno)?);
        }
        let law: Result<Vec<Poly>> = law
            .into_iter()
            .enumerate()
            .map(|(j, l)| {
                l.ok_or_else(|| Error::Syntax {
                    line: 1,
                    col: 1,
                    msg: format!("no law line for parameter `{}`", params[j]),
                })
            })
            .collect();
        UnipotentAction::new(pr, params, images, law?)
    }
}
