//! Executes parsed jobs and renders text and structured reports.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::parse::{resolve_ideal, Command, JobSpec};
use crate::corpus;
use crate::dg::verify_phi_chain_map;
use crate::error::{Error, Result};
use crate::golod::{
    golod_verdict_with, koszul_homology_algebra_bounded, product_triviality_seeded, tor_invariants_of, MasseyOutcome, Verdict,
    VerdictOptions,
};
use crate::groebner::Ideal;
use crate::homology::default_strand_bound;
use crate::resolutions::{betti_table, minimal_free_resolution, BettiTable};
use crate::trimming::{build_trimming_complex, degree3_product_check, nongolod_witness_product, product_ci_resolution_bounded, resolves_quotient};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub strand_bound: Option<i64>,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct JobOutput {
    pub text: String,
    pub structured: Value,
}

fn betti_json(t: &BettiTable) -> Value {
    let entries: Vec<Value> = t.entries.iter().map(|(&(i, d), &b)| json!({"i": i, "degree": d, "rank": b})).collect();
    json!({"totals": t.totals(), "entries": entries})
}

fn ideal_json(i: &Ideal) -> Value {
    json!(i.minimal_generators().iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

fn context(cmd: &str, e: Error) -> Error {
    match e {
        Error::Precondition(m) => Error::Precondition(format!("{cmd}: {m}")),
        Error::Internal(m) => Error::Internal(format!("{cmd}: {m}")),
        other => other,
    }
}

pub fn run_job(spec: &JobSpec, opts: &RunOptions) -> Result<JobOutput> {
    let mut text = String::new();
    let mut results = Vec::new();
    for cmd in &spec.commands {
        let (t, v) = run_command(spec, cmd, opts).map_err(|e| context(cmd.name(), e))?;
        text.push_str(&t);
        results.push(v);
    }
    let ring = &spec.ring;
    let structured = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": "golod-forge",
        "ring": {"variables": ring.variables, "characteristic": ring.characteristic, "order": ring.order.name()},
        "results": results,
    });
    Ok(JobOutput { text, structured })
}

fn run_command(spec: &JobSpec, cmd: &Command, opts: &RunOptions) -> Result<(String, Value)> {
    let mut t = String::new();
    match cmd {
        Command::Resolve { ideal } => {
            let i = resolve_ideal(spec, ideal)?;
            let f = minimal_free_resolution(&i)?;
            let b = betti_table(&f)?;
            writeln!(t, "== resolve {ideal} = ({})", gens(&i)).unwrap();
            writeln!(t, "ranks: {:?}", f.ranks()).unwrap();
            write!(t, "{b}").unwrap();
            Ok((t, json!({"command": "resolve", "ideal": ideal, "generators": ideal_json(&i), "ranks": f.ranks(), "betti": betti_json(&b)})))
        }
        Command::Koszul { ideal } => {
            let i = resolve_ideal(spec, ideal)?;
            let alg = koszul_homology_algebra_bounded(&i, opts.strand_bound)?;
            let prods = product_triviality_seeded(&alg, opts.seed)?;
            writeln!(t, "== koszul {ideal} = ({})", gens(&i)).unwrap();
            writeln!(t, "dim H_i: {:?}", alg.dims()).unwrap();
            for (&(h, d), s) in &alg.strands {
                writeln!(t, "  H_{h} degree {d}: {}", s.dimension).unwrap();
            }
            writeln!(t, "pairs checked: {}, nonzero products: {}", prods.pairs_checked, prods.nonzero.len()).unwrap();
            for p in prods.nonzero.iter().take(10) {
                writeln!(t, "  {p} = {:?}", p.coordinates).unwrap();
            }
            writeln!(t, "products {}", if prods.trivial() { "TRIVIAL" } else { "NONTRIVIAL" }).unwrap();
            let mut v = json!({
                "command": "koszul",
                "ideal": ideal,
                "dims": alg.dims(),
                "pairs_checked": prods.pairs_checked,
                "representative_independent": prods.representative_independent,
                "nonzero_products": prods.nonzero.iter().map(|p| json!({
                    "left": p.left.to_string(), "right": p.right.to_string(),
                    "target": [p.target.0, p.target.1], "coordinates": p.coordinates,
                })).collect::<Vec<_>>(),
            });
            if alg.betti.length() == 3 {
                let inv = tor_invariants_of(&alg)?;
                writeln!(t, "Tor algebra ranks p={} q={} r={} class {}", inv.p, inv.q, inv.r, inv.class_name()).unwrap();
                v["tor_invariants"] = json!({"p": inv.p, "q": inv.q, "r": inv.r, "class": inv.class_name()});
            }
            Ok((t, v))
        }
        Command::Trim { ideal, sigma, a } => {
            let i = resolve_ideal(spec, ideal)?;
            if sigma.iter().any(|&s| s == 0) {
                return Err(Error::precondition("sigma positions are 1-based"));
            }
            let zero_based: Vec<usize> = sigma.iter().map(|s| s - 1).collect();
            let a_ideals = a.as_ref().map(|names| names.iter().map(|n| resolve_ideal(spec, n)).collect::<Result<Vec<_>>>()).transpose()?;
            let (data, minimal) = build_trimming_complex(&i, &zero_based, a_ideals.as_deref())?;
            let bound = opts.strand_bound.unwrap_or_else(|| default_strand_bound(&data.trimmed_ideal, data.cone.len()));
            let exact = resolves_quotient(&data.cone, &data.trimmed_ideal, bound)?;
            if !exact {
                return Err(Error::internal("trimming cone is not a resolution of R/J"));
            }
            let b = betti_table(&minimal)?;
            writeln!(t, "== trim {ideal} sigma={sigma:?}").unwrap();
            writeln!(t, "trimmed ideal J = ({})", gens(&data.trimmed_ideal)).unwrap();
            for (s, a) in data.sigma.iter().zip(&data.a_ideals) {
                writeln!(t, "  a_{} = ({})", s + 1, gens(a)).unwrap();
            }
            writeln!(t, "cone ranks: {:?} (exact through degree {bound})", data.cone.ranks()).unwrap();
            writeln!(t, "minimal ranks: {:?}", minimal.ranks()).unwrap();
            write!(t, "{b}").unwrap();
            Ok((
                t,
                json!({
                    "command": "trim", "ideal": ideal, "sigma": sigma,
                    "a_ideals": data.a_ideals.iter().map(ideal_json).collect::<Vec<_>>(),
                    "trimmed_ideal": ideal_json(&data.trimmed_ideal),
                    "cone_ranks": data.cone.ranks(), "minimal_ranks": minimal.ranks(), "betti": betti_json(&b),
                }),
            ))
        }
        Command::ProductResolution { a, ideal } => {
            let ai = resolve_ideal(spec, a)?;
            let i = resolve_ideal(spec, ideal)?;
            let pr = product_ci_resolution_bounded(&ai, &i, opts.strand_bound)?;
            let chain = verify_phi_chain_map(&pr.maps);
            if !chain {
                return Err(Error::internal("Φ fails the chain-map identity"));
            }
            let b = betti_table(&pr.minimal)?;
            writeln!(t, "== product-resolution {a} {ideal}: R/aI with aI = ({})", gens(&pr.product_ideal)).unwrap();
            writeln!(t, "cone ranks: {:?}", pr.cone.ranks()).unwrap();
            if pr.was_minimal {
                writeln!(t, "minimal as built (a ⊆ mI: {})", pr.a_in_m_i).unwrap();
            } else {
                writeln!(t, "minimalized ranks: {:?}", pr.minimal.ranks()).unwrap();
            }
            write!(t, "{b}").unwrap();
            let mut v = json!({
                "command": "product-resolution", "a": a, "ideal": ideal,
                "product_ideal": ideal_json(&pr.product_ideal),
                "cone_ranks": pr.cone.ranks(), "minimal_ranks": pr.minimal.ranks(),
                "was_minimal": pr.was_minimal, "a_in_m_i": pr.a_in_m_i, "phi_chain_map": chain, "betti": betti_json(&b),
            });
            if pr.m() >= 4 && pr.a_in_m_i {
                let w = nongolod_witness_product(&ai, &i, [1, 2, 3, 4])?;
                if w.nontrivial {
                    writeln!(t, "NON-GOLOD (witness: H_2·H_2 product {w})").unwrap();
                } else {
                    writeln!(t, "witness product {w} is trivial").unwrap();
                }
                v["witness"] = json!({"indices": w.indices, "nontrivial": w.nontrivial, "element": w.element.iter().map(|(s, p)| json!([s, p.to_string()])).collect::<Vec<_>>()});
            }
            if spec.ring.variables.len() == 3 && pr.a_in_m_i {
                let rep = degree3_product_check(&ai, &i)?;
                writeln!(t, "degree-3 products {} ({}; {} pairs)", if rep.trivial { "trivial" } else { "NONTRIVIAL" }, rep.case, rep.pairs_checked)
                    .unwrap();
                v["degree3"] = json!({"trivial": rep.trivial, "case": rep.case.to_string(), "pairs_checked": rep.pairs_checked});
            }
            Ok((t, v))
        }
        Command::Golod { ideal, n, factors } => {
            let j = resolve_ideal(spec, ideal)?;
            let f = match factors {
                Some((a, b)) => Some((resolve_ideal(spec, a)?, resolve_ideal(spec, b)?)),
                None => None,
            };
            let vo = VerdictOptions { strand_bound: opts.strand_bound, seed: opts.seed };
            let rep = golod_verdict_with(&j, *n, f.as_ref().map(|(a, b)| (a, b)), &vo)?;
            let p = &rep.poincare;
            writeln!(t, "== golod {ideal} = ({})", gens(&j)).unwrap();
            write!(t, "{}", rep.betti).unwrap();
            writeln!(t, "P(t) through t^{n}: {:?}", p.betti_of_k).unwrap();
            writeln!(t, "Serre bound:       {:?}", p.serre_bound_coeffs).unwrap();
            writeln!(t, "codepth {}, complete intersection: {}", rep.codepth, rep.complete_intersection).unwrap();
            writeln!(
                t,
                "products: {} pairs, {}",
                rep.product_triviality.pairs_checked,
                if rep.product_triviality.trivial() { "all trivial".to_string() } else { format!("{} nonzero", rep.product_triviality.nonzero.len()) }
            )
            .unwrap();
            if let Some(s) = &rep.split_injection {
                writeln!(t, "split injection ranks (k, rank Q_k⊗k, rank F_k+1): {:?}", s.ranks).unwrap();
            }
            if let Some(m) = &rep.massey {
                match m {
                    MasseyOutcome::Certificate(c) => writeln!(
                        t,
                        "Massey: basis of {} classes, (∗) {}, recursion {} to depth {}",
                        c.basis_used.len(),
                        c.verified_condition_star,
                        c.recursion_holds,
                        c.depth_checked
                    )
                    .unwrap(),
                    MasseyOutcome::Inapplicable(why) => writeln!(t, "Massey: inapplicable ({why})").unwrap(),
                }
            }
            writeln!(t, "{}", rep.verdict).unwrap();
            let verdict = match &rep.verdict {
                Verdict::NonGolod { deficit, product } => json!({
                    "kind": "non_golod",
                    "deficit": deficit.map(|(i, b, s)| json!({"degree": i, "betti": b, "serre": s.to_string()})),
                    "product": product.as_ref().map(|p| json!({"left": p.left.to_string(), "right": p.right.to_string(), "coordinates": p.coordinates})),
                }),
                Verdict::GolodCertified(r) => json!({"kind": "golod_certified", "reason": r.to_string()}),
                Verdict::GolodEvidenceUpTo(n) => json!({"kind": "golod_evidence_up_to", "n": n}),
            };
            Ok((
                t,
                json!({
                    "command": "golod", "ideal": ideal, "generators": ideal_json(&j), "n": n,
                    "betti": betti_json(&rep.betti),
                    "poincare": p.betti_of_k,
                    "serre": p.serre_bound_coeffs.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "codepth": rep.codepth,
                    "complete_intersection": rep.complete_intersection,
                    "products_trivial": rep.product_triviality.trivial(),
                    "pairs_checked": rep.product_triviality.pairs_checked,
                    "verdict_text": rep.verdict.to_string(),
                    "verdict": verdict,
                }),
            ))
        }
        Command::Corpus => {
            let reports = corpus::run_all();
            writeln!(t, "== corpus").unwrap();
            for r in &reports {
                writeln!(t, "  [{}] {:>2}. {} ({})", if r.passed { "PASS" } else { "FAIL" }, r.id, r.title, r.detail).unwrap();
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            writeln!(t, "{passed}/{} criteria pass", reports.len()).unwrap();
            Ok((
                t,
                json!({"command": "corpus", "criteria": reports.iter().map(|r| json!({"id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail})).collect::<Vec<_>>()}),
            ))
        }
    }
}

fn gens(i: &Ideal) -> String {
    i.minimal_generators().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}
