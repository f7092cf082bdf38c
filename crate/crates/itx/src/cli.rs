//! Subcommand dispatch, streaming line output, JSON mode, and exit codes:
//! 0 = terminated, 2 = capped (partial output), 1 = error. Streams flush per
//! batch so nonterminating runs remain observable; wall time goes to stderr
//! so stdout stays byte-identical across runs.

use std::io::Write;
use std::time::Instant;

use serde_json::{json, Value};

use crate::colonalg::{
    codim2_presentation, colon_saturation, colon_step, quasi_affine_ring, GenStream,
    StreamStatus,
};
use crate::error::{Error, Result};
use crate::freeness::{field_intersection, generic_freeness};
use crate::groebner::groebner_basis;
use crate::idealops::{SubIdeal, Subalgebra};
use crate::invariants::unipotent::{factorial_invariants, unipotent_invariants};
use crate::invariants::{ga_invariant_stream, ga_resultant_subalgebra};
use crate::monomial::MonomialOrder;
use crate::parse::poly_to_string;
use crate::poly::{Poly, Ring};
use crate::problem::{parse_problem, ProblemFile};

pub const SUBCOMMANDS: &[&str] = &[
    "gb",
    "colon",
    "saturate",
    "quasi-affine",
    "fgli",
    "codim2",
    "generic-freeness",
    "field-intersect",
    "ga-invariants",
    "unipotent-invariants",
    "factorial-qa",
];

#[derive(Clone, Debug)]
pub struct Options {
    pub max_iter: usize,
    pub order: MonomialOrder,
    pub json: bool,
    pub strict_char0: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_iter: 32,
            order: MonomialOrder::GrevLex,
            json: false,
            strict_char0: false,
        }
    }
}

struct Emitter<'a> {
    out: &'a mut dyn Write,
    json: bool,
    order: MonomialOrder,
    doc: Value,
    batches: Vec<Value>,
    gen_count: usize,
}

impl<'a> Emitter<'a> {
    fn new(out: &'a mut dyn Write, opts: &Options, subcommand: &str) -> Emitter<'a> {
        Emitter {
            out,
            json: opts.json,
            order: opts.order.clone(),
            doc: json!({ "subcommand": subcommand }),
            batches: vec![],
            gen_count: 0,
        }
    }

    fn poly(&self, p: &Poly, ring: &Ring) -> String {
        poly_to_string(p, ring, &self.order)
    }

    fn line(&mut self, s: &str) {
        if !self.json {
            writeln!(self.out, "{s}").expect("stdout write");
            self.out.flush().ok();
        }
    }

    fn field(&mut self, key: &str, value: Value) {
        if let Some(s) = value.as_str() {
            let line = format!("{key}: {s}");
            self.line(&line);
        } else {
            let line = format!("{key}: {value}");
            self.line(&line);
        }
        self.doc[key] = value;
    }

    fn list(&mut self, key: &str, polys: &[Poly], ring: &Ring) {
        let strs: Vec<String> = polys.iter().map(|p| self.poly(p, ring)).collect();
        for (k, s) in strs.iter().enumerate() {
            let line = format!("{key}[{k}]: {s}");
            self.line(&line);
        }
        self.doc[key] = json!(strs);
    }

    fn batch(&mut self, iteration: usize, polys: &[Poly], ring: &Ring) {
        let strs: Vec<String> = polys.iter().map(|p| self.poly(p, ring)).collect();
        for (k, s) in strs.iter().enumerate() {
            let line = format!("gen[{iteration}][{k}]: {s}");
            self.line(&line);
        }
        self.gen_count += strs.len();
        self.batches.push(json!({ "iteration": iteration, "generators": strs }));
    }

    fn status(&mut self, status: StreamStatus, iterations: usize) -> i32 {
        let line = format!("status: {} iterations={}", status.as_str(), iterations);
        self.line(&line);
        self.doc["status"] = json!(status.as_str());
        self.doc["iterations"] = json!(iterations);
        self.doc["generator_count"] = json!(self.gen_count);
        if !self.batches.is_empty() {
            self.doc["batches"] = Value::Array(std::mem::take(&mut self.batches));
        }
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string_pretty(&self.doc).unwrap())
                .expect("stdout write");
        }
        match status {
            StreamStatus::Capped => 2,
            _ => 0,
        }
    }
}

fn drain_stream(em: &mut Emitter, stream: &mut GenStream, ring: &Ring) -> Result<i32> {
    while let Some(batch) = stream.next_batch()? {
        em.batch(stream.iterations(), &batch, ring);
    }
    Ok(em.status(stream.status(), stream.iterations()))
}

fn require_domain(p: &ProblemFile) -> Result<()> {
    if !p.assert_domain {
        return Err(Error::MissingAssertion("domain"));
    }
    Ok(())
}

fn run_subcommand(
    subcommand: &str,
    problem: &ProblemFile,
    opts: &Options,
    out: &mut dyn Write,
) -> Result<i32> {
    let mut em = Emitter::new(out, opts, subcommand);
    match subcommand {
        "gb" => {
            let gb = groebner_basis(&problem.ideal, &opts.order);
            em.batch(1, &gb.gens, &problem.ring);
            Ok(em.status(StreamStatus::Terminated, 1))
        }
        "colon" => {
            require_domain(problem)?;
            let s = problem.presented_ring();
            let gens = problem.subalgebra_gens()?;
            let r = Subalgebra::new(s.clone(), gens);
            let a = SubIdeal { gens: problem.saturating_tags(r.gens.len())? };
            let step = colon_step(&r, &a)?;
            em.field("u", json!(em.poly(&step.u_tags, &r.tag_ring)));
            em.batch(1, &step.h, &s.ring);
            let certs: Vec<Value> = step
                .certs
                .iter()
                .map(|c| {
                    json!({
                        "v": em.poly(&c.v_tags, &r.tag_ring),
                        "h": em.poly(&c.h, &s.ring),
                    })
                })
                .collect();
            em.doc["certificates"] = Value::Array(certs);
            Ok(em.status(StreamStatus::Terminated, 1))
        }
        "saturate" => {
            require_domain(problem)?;
            let s = problem.presented_ring();
            let gens = problem.subalgebra_gens()?;
            let ntags = gens.len();
            let a = problem.saturating_tags(ntags)?;
            let mut stream = colon_saturation(&s, gens, a, opts.max_iter)?;
            drain_stream(&mut em, &mut stream, &s.ring.clone())
        }
        "quasi-affine" => {
            require_domain(problem)?;
            let x = problem.presented_ring();
            let a = problem.saturating_ambient()?;
            let mut qa = quasi_affine_ring(&x, &a, opts.max_iter)?;
            em.field("localized-vars", json!(qa.localized.ring.vars.join(", ")));
            let rel_strs: Vec<String> = qa
                .localized
                .ideal
                .iter()
                .map(|p| em.poly(p, &qa.localized.ring))
                .collect();
            em.field("localized-relations", json!(rel_strs.join(", ")));
            let ring = qa.localized.ring.clone();
            drain_stream(&mut em, &mut qa.stream, &ring)
        }
        "fgli" => {
            require_domain(problem)?;
            let s = problem.presented_ring();
            let gens = problem.subalgebra_gens()?;
            let ntags = gens.len();
            let a = problem.saturating_tags(ntags)?;
            let run = crate::colonalg::fgli_stream(&s, gens, a, opts.max_iter)?;
            em.field("radical-status", json!("up to radical"));
            let mut fgli_json = vec![];
            for (i, it) in run.iterations.iter().enumerate() {
                em.batch(i + 1, &it.batch, &s.ring);
                let strs: Vec<String> =
                    it.h_ambient.iter().map(|p| em.poly(p, &s.ring)).collect();
                for (k, h) in strs.iter().enumerate() {
                    let line = format!("fgli[{}][{k}]: {h}", i + 1);
                    em.line(&line);
                }
                fgli_json.push(json!(strs));
            }
            em.doc["fgli"] = json!(fgli_json);
            Ok(em.status(run.status, run.iterations.len()))
        }
        "codim2" => {
            require_domain(problem)?;
            let s = problem.presented_ring();
            let gens = problem.subalgebra_gens()?;
            let ntags = gens.len();
            let a = problem.saturating_tags(ntags)?;
            let out = codim2_presentation(&s, gens, a, opts.max_iter)?;
            for (i, batch) in out.batches.iter().enumerate() {
                em.batch(i + 1, batch, &s.ring);
            }
            em.list("rtilde", &out.rtilde, &s.ring);
            em.list("gtilde", &out.g_ambient, &s.ring);
            em.field("dim", json!(out.dim_s));
            em.field("dim-quotient", json!(out.dim_quotient));
            em.field("codim", json!(out.codim));
            em.field("stop", json!(out.stop.as_str()));
            Ok(em.status(out.status, out.iterations))
        }
        "generic-freeness" => {
            require_domain(problem)?;
            let s = problem.presented_ring();
            let gens = problem.subalgebra_gens()?;
            let r = Subalgebra::new(s.clone(), gens);
            let fr = generic_freeness(&s, &r)?;
            em.field("f", json!(em.poly(&fr.f_tags, &r.tag_ring)));
            em.field("f-ambient", json!(em.poly(&fr.f_ambient, &s.ring)));
            em.list("denominator", &fr.denominators, &r.tag_ring);
            let basis_strs: Vec<String> =
                fr.monic_basis.iter().map(|b| em.poly(b, &fr.frac_ring)).collect();
            for (k, b) in basis_strs.iter().enumerate() {
                let line = format!("basis[{k}]: {b}");
                em.line(&line);
            }
            em.doc["basis"] = json!(basis_strs);
            Ok(em.status(StreamStatus::Terminated, 0))
        }
        "field-intersect" => {
            require_domain(problem)?;
            let s = problem.presented_ring();
            let gens = problem.subalgebra_gens()?;
            let (fr, mut stream) = field_intersection(&s, gens, opts.max_iter)?;
            let tag_ring = Ring::new(
                (1..=fr.f_tags.terms.first().map(|(_, m)| m.0.len()).unwrap_or(0))
                    .map(|i| format!("g{i}"))
                    .collect(),
                s.ring.field.clone(),
            );
            em.field("f", json!(em.poly(&fr.f_tags, &tag_ring)));
            em.field("f-ambient", json!(em.poly(&fr.f_ambient, &s.ring)));
            drain_stream(&mut em, &mut stream, &s.ring.clone())
        }
        "ga-invariants" => {
            require_domain(problem)?;
            let action = problem.ga_action()?;
            match ga_invariant_stream(&action, opts.max_iter, opts.strict_char0) {
                Ok(mut ga) => {
                    if let Some(local) = &ga.local {
                        em.list("rgen", &local.r_gens, &action.x.ring);
                        em.field(
                            "saturating-element",
                            json!(em.poly(&local.r_gens[local.fr_index], &action.x.ring)),
                        );
                    }
                    let code = drain_stream(&mut em, &mut ga.stream, &action.x.ring.clone())?;
                    // exact invariance of everything emitted
                    for g in &ga.stream.f_gens {
                        if !action.is_invariant(g) {
                            return Err(Error::Internal(
                                "emitted generator is not invariant".into(),
                            ));
                        }
                    }
                    Ok(code)
                }
                Err(Error::SliceUnavailable { char_p }) => {
                    em.field(
                        "note",
                        json!(format!(
                            "characteristic {char_p} divides deg_t mu(f) for every moving \
                             variable; emitting the resultant subalgebra only (completion \
                             needs integral closure)"
                        )),
                    );
                    let rs = ga_resultant_subalgebra(&action)?;
                    em.batch(1, &rs.gens, &rs.x_loc.ring);
                    Ok(em.status(StreamStatus::Capped, 0))
                }
                Err(e) => Err(e),
            }
        }
        "unipotent-invariants" => {
            require_domain(problem)?;
            let action = problem.unipotent_action()?;
            let pres = unipotent_invariants(&action, opts.strict_char0)?;
            em.list("tgen", &pres.t_gens, &action.x.ring);
            let dt_ring = Ring::new(
                (1..=pres.t_gens.len()).map(|i| format!("g{i}")).collect(),
                action.x.ring.field.clone(),
            );
            em.list("dgen", &pres.d_tags, &dt_ring);
            let mut stream =
                colon_saturation(&action.x, pres.t_gens.clone(), pres.d_tags.clone(), opts.max_iter)?;
            let code = drain_stream(&mut em, &mut stream, &action.x.ring.clone())?;
            for g in &stream.f_gens {
                if !action.is_invariant(g) {
                    return Err(Error::Internal("emitted generator is not invariant".into()));
                }
            }
            Ok(code)
        }
        "factorial-qa" => {
            require_domain(problem)?;
            let action = problem.unipotent_action()?;
            let out = factorial_invariants(&action, opts.max_iter, opts.strict_char0)?;
            em.list("tgen", &out.presentation.t_gens, &action.x.ring);
            let dt_ring = Ring::new(
                (1..=out.presentation.t_gens.len()).map(|i| format!("g{i}")).collect(),
                action.x.ring.field.clone(),
            );
            em.list("dgen", &out.presentation.d_tags, &dt_ring);
            em.list("rtilde", &out.codim2.rtilde, &action.x.ring);
            em.list("gtilde", &out.codim2.g_ambient, &action.x.ring);
            em.field("dim", json!(out.codim2.dim_s));
            em.field("dim-quotient", json!(out.codim2.dim_quotient));
            em.field("codim", json!(out.codim2.codim));
            em.field("stop", json!(out.codim2.stop.as_str()));
            Ok(em.status(out.codim2.status, out.codim2.iterations))
        }
        other => Err(Error::Syntax {
            line: 0,
            col: 0,
            msg: format!("unknown subcommand `{other}`"),
        }),
    }
}

/// Entry point shared by the binary and the tests; returns the exit code.
pub fn run_cli(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let usage = || {
        format!(
            "usage: itx <subcommand> <file> [--max-iter N] [--order lex|grevlex] [--json] \
             [--strict-char0]\nsubcommands: {}",
            SUBCOMMANDS.join(", ")
        )
    };
    if args.len() < 2 {
        writeln!(err, "{}", usage()).ok();
        return 1;
    }
    let subcommand = args[0].as_str();
    if !SUBCOMMANDS.contains(&subcommand) {
        writeln!(err, "error: unknown subcommand `{subcommand}`\n{}", usage()).ok();
        return 1;
    }
    let path = &args[1];
    let mut opts = Options::default();
    let mut i = 2;
    while i < args.len() {
        match args[i].as_str() {
            "--max-iter" => {
                i += 1;
                match args.get(i).and_then(|v| v.parse::<usize>().ok()) {
                    Some(n) => opts.max_iter = n,
                    None => {
                        writeln!(err, "error: --max-iter needs a number").ok();
                        return 1;
                    }
                }
            }
            "--order" => {
                i += 1;
                match args.get(i).map(|s| s.as_str()) {
                    Some("lex") => opts.order = MonomialOrder::Lex,
                    Some("grevlex") => opts.order = MonomialOrder::GrevLex,
                    _ => {
                        writeln!(err, "error: --order must be lex or grevlex").ok();
                        return 1;
                    }
                }
            }
            "--json" => opts.json = true,
            "--strict-char0" => opts.strict_char0 = true,
            other => {
                writeln!(err, "error: unknown flag `{other}`").ok();
                return 1;
            }
        }
        i += 1;
    }
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: cannot read `{path}`: {e}").ok();
            return 1;
        }
    };
    let started = Instant::now();
    let code = match parse_problem(&text).and_then(|p| run_subcommand(subcommand, &p, &opts, out))
    {
        Ok(code) => code,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            1
        }
    };
    // wall time stays off stdout so reruns are byte-identical
    writeln!(err, "# wall_ms={}", started.elapsed().as_millis()).ok();
    code
}

/// Run a problem from text, capturing stdout; used by the tests and the
/// Python bindings.
pub fn run_to_string(
    subcommand: &str,
    text: &str,
    opts: &Options,
) -> std::result::Result<(String, i32), String> {
    let problem = parse_problem(text).map_err(|e| e.to_string())?;
    let mut buf: Vec<u8> = vec![];
    match run_subcommand(subcommand, &problem, opts, &mut buf) {
        Ok(code) => Ok((String::from_utf8(buf).expect("utf8 output"), code)),
        Err(e) => Err(e.to_string()),
    }
}
