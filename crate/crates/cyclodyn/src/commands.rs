//! One function per subcommand, each producing a `Report`.

use std::fs;
use std::path::Path;

use cyclodyn_core::arith::Embedding;
use cyclodyn_core::bounds::{bounds_report, verify_loxton_bound, BoundsError, LoxtonParams};
use cyclodyn_core::canonical::{fz_bound_check, is_special_set, SpecialVerdict};
use cyclodyn_core::dynamics::{
    build_tree, detect_pi, detect_pibar, growth_check_arch, growth_check_padic, prefix_house_bound,
    prefix_integrality, scan_sa, sigma_members, verify_sigma_bounds, DynamicsError, PolySystem,
    ScanConfig, SigmaOutcome, TreeBudget, Verdict, Word,
};
use cyclodyn_core::poly::RootCluster;
use cyclodyn_core::{CycloNum, Rational};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::*;
use crate::dto::{self, BoxDto, Certificate, FindingDto};
use crate::env::EnvConfig;
use crate::error::{CliError, ConfigError};
use crate::report::{Outcome, Report};

pub fn read_json(path: &Path, field: &str) -> Result<Value, CliError> {
    let raw = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&raw)
        .map_err(|e| ConfigError::new(field, format!("malformed JSON: {e}")).into())
}

/// Reads a file, or takes the argument itself when it already looks like JSON.
fn json_arg(arg: &str, field: &str) -> Result<Value, CliError> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        serde_json::from_str(arg)
            .map_err(|e| ConfigError::new(field, format!("malformed JSON: {e}")).into())
    } else {
        read_json(Path::new(arg), field)
    }
}

pub fn load_system(path: &Path) -> Result<PolySystem, CliError> {
    let v = read_json(path, "system")?;
    Ok(dto::system_from_value(&v, "system")?)
}

fn parse_list(s: &str, field: &str) -> Result<Vec<CycloNum>, ConfigError> {
    s.split(',')
        .enumerate()
        .map(|(i, t)| dto::parse_elem_at(t, &format!("{field}[{i}]")))
        .collect()
}

pub fn parse_word(s: &str, sys: &PolySystem, field: &str) -> Result<Word, ConfigError> {
    let ix = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| ConfigError::new(field, format!("{t:?} is not an index")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    dto::word_from(&ix, sys.len(), field)
}

fn budget(b: &BudgetArgs) -> Result<TreeBudget, ConfigError> {
    if b.max_nodes == 0 {
        return Err(ConfigError::new("max-nodes", "must be positive"));
    }
    if b.max_words == 0 {
        return Err(ConfigError::new("max-words", "must be positive"));
    }
    Ok(TreeBudget {
        max_nodes: b.max_nodes,
        max_words: b.max_words,
    })
}

fn positive(v: usize, field: &str) -> Result<usize, ConfigError> {
    if v == 0 {
        Err(ConfigError::new(field, "must be positive"))
    } else {
        Ok(v)
    }
}

fn loxton_params(a: &LoxtonArgs) -> Result<LoxtonParams, ConfigError> {
    let p = LoxtonParams {
        e_size: a.e_size,
        b: dto::parse_rat_at(&a.b, "b")?,
        r_scale: dto::parse_rat_at(&a.r_scale, "r-scale")?,
        r_exponent: dto::parse_rat_at(&a.r_exp, "r-exp")?,
    };
    p.validate()
        .map_err(|e| ConfigError::new("loxton parameters", e.to_string()))?;
    Ok(p)
}

fn params_json(p: &LoxtonParams) -> Value {
    json!({
        "e_size": p.e_size,
        "b": dto::rat(&p.b),
        "r_scale": dto::rat(&p.r_scale),
        "r_exponent": dto::rat(&p.r_exponent),
    })
}

fn bigint_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn bound_json(b: &cyclodyn_core::bounds::CertifiedBound) -> Value {
    json!({ "value": dto::rat(&b.value), "exact": b.exact })
}

fn cluster_json(c: &RootCluster) -> Value {
    json!({ "region": BoxDto::from(&c.region), "count": c.count })
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Pass => json!({ "verdict": "pass" }),
        Verdict::Fail => json!({ "verdict": "fail" }),
        Verdict::Inconclusive(why) => json!({ "verdict": "inconclusive", "reason": why }),
    }
}

fn is_budget(e: &DynamicsError) -> bool {
    matches!(
        e,
        DynamicsError::TreeBudgetExceeded { .. } | DynamicsError::PrecisionExhausted
    )
}

fn outcome_of(exhausted: bool) -> Outcome {
    if exhausted {
        Outcome::BudgetExhausted
    } else {
        Outcome::Completed
    }
}

fn budget_json(b: &TreeBudget) -> Value {
    json!({ "max_nodes": b.max_nodes, "max_words": b.max_words })
}

/// A core error that is neither a budget nor a bad input still ends the run
/// normally: it is recorded as the result.
fn error_result(e: &impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

fn report(
    command: &str,
    config: Value,
    outcome: Outcome,
    result: Value,
    certificates: Vec<Certificate>,
) -> Report {
    Report {
        command: command.into(),
        config,
        outcome,
        result,
        certificates,
    }
}

fn config_with(mut config: Value, env: &EnvConfig, sys: Option<&PolySystem>) -> Value {
    let obj = config.as_object_mut().expect("args serialize to an object");
    obj.insert("precision_bits".into(), json!(env.precision_bits));
    if let Some(s) = sys {
        obj.insert("system_parsed".into(), json!(dto::system(s)));
    }
    config
}

pub fn orbit(a: &OrbitArgs, env: &EnvConfig) -> Result<Report, CliError> {
    let sys = load_system(&a.system)?;
    let alpha = dto::parse_elem_at(&a.alpha, "alpha")?;
    let b = budget(&a.budget)?;
    let config = config_with(serde_json::to_value(a).expect("args"), env, Some(&sys));
    let (outcome, result) = match build_tree(&sys, &alpha, a.depth, b) {
        Ok(t) => {
            let levels: Vec<Value> = t
                .levels
                .iter()
                .map(|lv| {
                    Value::Array(
                        lv.iter()
                            .map(|n| json!({ "value": dto::elem(&n.value), "words": n.words.iter().map(dto::word).collect::<Vec<_>>() }))
                            .collect(),
                    )
                })
                .collect();
            let sizes: Vec<usize> = t.levels.iter().map(Vec::len).collect();
            (
                Outcome::Completed,
                json!({ "alpha": dto::elem(&alpha), "depth": a.depth, "level_sizes": sizes, "levels": levels }),
            )
        }
        Err(e) if is_budget(&e) => (
            Outcome::BudgetExhausted,
            json!({ "alpha": dto::elem(&alpha), "depth": a.depth, "budget": budget_json(&b), "error": e.to_string() }),
        ),
        Err(e) => (Outcome::Completed, error_result(&e)),
    };
    Ok(report("orbit", config, outcome, result, Vec::new()))
}

pub fn preperiodic(a: &PreperArgs, env: &EnvConfig) -> Result<Report, CliError> {
    let sys = load_system(&a.system)?;
    let alphas = parse_list(&a.alpha_set, "alpha-set")?;
    let b = budget(&a.budget)?;
    let config = config_with(serde_json::to_value(a).expect("args"), env, Some(&sys));
    let per: Vec<(Value, Option<Certificate>, bool)> = alphas
        .par_iter()
        .map(|alpha| {
            let found = match a.kind {
                PreperKind::Pi => Ok(detect_pi(&sys, alpha, a.depth, a.loop_depth)),
                PreperKind::Pibar => detect_pibar(&sys, alpha, a.depth, b),
            };
            match found {
                Ok(Some(c)) => {
                    let v = json!({
                        "alpha": dto::elem(alpha),
                        "status": "found",
                        "collision": dto::CollisionDto::from(&c.collision),
                        "witness_value": dto::elem(&c.witness_value),
                    });
                    (v, Some(Certificate::collision(&sys, alpha, &c)), false)
                }
                Ok(None) => (json!({ "alpha": dto::elem(alpha), "status": "none_within_bounds" }), None, false),
                Err(e) => {
                    let status = if is_budget(&e) { "budget_exhausted" } else { "error" };
                    (json!({ "alpha": dto::elem(alpha), "status": status, "error": e.to_string() }), None, is_budget(&e))
                }
            }
        })
        .collect();
    let exhausted = per.iter().any(|p| p.2);
    let mut certs = Vec::new();
    let mut rows = Vec::new();
    for (mut v, c, _) in per {
        if let Some(c) = c {
            v["certificate"] = json!(certs.len());
            certs.push(c);
        }
        rows.push(v);
    }
    let search = match a.kind {
        PreperKind::Pi => json!({ "base_depth": a.depth, "loop_depth": a.loop_depth }),
        PreperKind::Pibar => json!({ "depth": a.depth, "budget": budget_json(&b) }),
    };
    let result = json!({ "kind": a.kind.name(), "search": search, "points": rows });
    Ok(report(
        "preperiodic",
        config,
        outcome_of(exhausted),
        result,
        certs,
    ))
}

pub fn scan(a: &ScanArgs, env: &EnvConfig) -> Result<Report, CliError> {
    let sys = load_system(&a.system)?;
    let bound = dto::parse_rat_at(&a.a, "A")?;
    if bound <= Rational::from_integer(0.into()) {
        return Err(ConfigError::new("A", "must be positive").into());
    }
    let cfg = ScanConfig {
        a: bound.clone(),
        conductor_max: positive(a.conductor_max as usize, "conductor-max")? as u64,
        height_max: positive(a.height_max as usize, "height-max")? as u64,
        depth: a.depth,
        budget: budget(&a.budget)?,
        max_candidates: Some(positive(a.max_candidates, "max-candidates")?),
        precision: env.precision_bits,
    };
    let config = config_with(serde_json::to_value(a).expect("args"), env, Some(&sys));
    let r = scan_sa(&sys, &cfg);
    let exhausted = r.truncated || r.skipped.iter().any(|s| is_budget(&s.reason));
    let mut certs = Vec::new();
    let hits: Vec<Value> = r
        .hits
        .iter()
        .map(|h| {
            certs.push(Certificate::OrbitValue {
                system: dto::system(&sys),
                alpha: dto::elem(&h.alpha),
                word: dto::word(&h.word),
                value: dto::elem(&h.value),
                bound: dto::rat(&bound),
            });
            json!({
                "alpha": dto::elem(&h.alpha),
                "word": dto::word(&h.word),
                "value": dto::elem(&h.value),
                "certificate": certs.len() - 1,
            })
        })
        .collect();
    let skipped: Vec<Value> = r
        .skipped
        .iter()
        .map(|s| json!({ "alpha": dto::elem(&s.alpha), "reason": s.reason.to_string() }))
        .collect();
    let result = json!({
        "candidates": r.candidates,
        "truncated": r.truncated,
        "hits": hits,
        "skipped": skipped,
    });
    Ok(report(
        "scan-sa",
        config,
        outcome_of(exhausted),
        result,
        certs,
    ))
}

/// Body and certificates of a Sigma search over every word of length `1..=n`.
pub fn sigma_body(
    sys: &PolySystem,
    bound: &Rational,
    n: usize,
    pool: &[CycloNum],
    cap: usize,
    prec: u32,
) -> Result<(Value, Vec<Certificate>, bool), DynamicsError> {
    let words: Vec<Word> = (1..=n)
        .flat_map(|l| Word::all_of_length(sys.len(), l))
        .collect();
    let mut certs = Vec::new();
    let mut per_word = Vec::new();
    let (mut fails, mut inconclusive, mut candidates) = (0usize, 0usize, 0usize);
    let mut exhausted = false;
    for w in &words {
        let search = sigma_members(sys, bound, pool, w, cap)?;
        let checked: Vec<Option<Result<_, DynamicsError>>> = search
            .outcomes
            .par_iter()
            .map(|o| match o {
                SigmaOutcome::Candidate(c) => Some(verify_sigma_bounds(c, sys, bound, prec)),
                SigmaOutcome::Degenerate { .. } => None,
            })
            .collect();
        let mut rows = Vec::new();
        let mut degenerate = 0usize;
        for (o, chk) in search.outcomes.iter().zip(checked) {
            let (SigmaOutcome::Candidate(c), Some(chk)) = (o, chk) else {
                degenerate += 1;
                continue;
            };
            candidates += 1;
            let combination: Vec<(Vec<usize>, String)> = c
                .combination
                .iter()
                .map(|(u, g)| (dto::word(u), dto::elem(g)))
                .collect();
            certs.push(Certificate::SigmaCombination {
                system: dto::system(sys),
                word: dto::word(&c.word),
                combination: combination.clone(),
                defining_poly: dto::poly(&c.defining_poly),
            });
            let mut row = json!({
                "defining_poly": dto::poly(&c.defining_poly),
                "combination": combination,
                "roots": c.roots.iter().map(cluster_json).collect::<Vec<_>>(),
                "certificate": certs.len() - 1,
            });
            match chk {
                Ok(r) => {
                    fails += usize::from(r.house == Verdict::Fail)
                        + usize::from(r.integrality == Verdict::Fail);
                    inconclusive += usize::from(matches!(r.house, Verdict::Inconclusive(_)))
                        + usize::from(matches!(r.integrality, Verdict::Inconclusive(_)));
                    row["k_bound"] = bound_json(&r.k_bound);
                    row["d"] = bigint_json(&r.d);
                    row["max_modulus_hi"] = json!(dto::dyadic(&r.max_modulus_hi));
                    row["house"] = verdict_json(&r.house);
                    row["integrality"] = verdict_json(&r.integrality);
                }
                Err(e) => {
                    exhausted |= is_budget(&e);
                    inconclusive += 1;
                    row["house"] = json!({ "verdict": "inconclusive", "reason": e.to_string() });
                }
            }
            rows.push(row);
        }
        per_word.push(json!({
            "word": dto::word(w),
            "enumerated": search.enumerated,
            "truncated": search.truncated,
            "degenerate": degenerate,
            "candidates": rows,
        }));
    }
    let body = json!({
        "A": dto::rat(bound),
        "n": n,
        "pool": pool.iter().map(dto::elem).collect::<Vec<_>>(),
        "words": per_word,
        "summary": { "candidates": candidates, "failures": fails, "inconclusive": inconclusive },
    });
    Ok((body, certs, exhausted))
}

pub fn sigma(a: &SigmaArgs, env: &EnvConfig) -> Result<Report, CliError> {
    let sys = load_system(&a.system)?;
    let bound = dto::parse_rat_at(&a.a, "A")?;
    let pool = parse_list(&a.pool, "pool")?;
    positive(a.n, "n")?;
    let cap = positive(a.max_assignments, "max-assignments")?;
    let config = config_with(serde_json::to_value(a).expect("args"), env, Some(&sys));
    Ok(
        match sigma_body(&sys, &bound, a.n, &pool, cap, env.precision_bits) {
            Ok((body, certs, exhausted)) => {
                report("sigma", config, outcome_of(exhausted), body, certs)
            }
            Err(e) if is_budget(&e) => report(
                "sigma",
                config,
                Outcome::BudgetExhausted,
                error_result(&e),
                Vec::new(),
            ),
            Err(e) => report(
                "sigma",
                config,
                Outcome::Completed,
                error_result(&e),
                Vec::new(),
            ),
        },
    )
}

pub fn special(a: &SpecialArgs, env: &EnvConfig) -> Result<Report, CliError> {
    let sys = load_system(&a.system)?;
    if a.max_conductor == 0 {
        return Err(ConfigError::new("max-conductor", "must be positive").into());
    }
    let config = config_with(serde_json::to_value(a).expect("args"), env, Some(&sys));
    let r = is_special_set(&sys, a.max_conductor);
    let mut certs = Vec::new();
    let findings: Vec<Value> = r
        .findings
        .iter()
        .map(|f| {
            let dto = FindingDto::from(f);
            certs.push(Certificate::Speciality {
                system: dto::system(&sys),
                max_conductor: a.max_conductor,
                finding: dto.clone(),
            });
            let mut v = serde_json::to_value(&dto).expect("finding");
            v["certificate"] = json!(certs.len() - 1);
            v
        })
        .collect();
    let verdict = match r.verdict {
        SpecialVerdict::Special => "special",
        SpecialVerdict::NonSpecial => "non_special",
    };
    let result = json!({ "verdict": verdict, "findings": findings });
    Ok(report("special", config, Outcome::Completed, result, certs))
}

pub fn bounds(a: &BoundsArgs, env: &EnvConfig) -> Result<Report, CliError> {
    let sys = load_system(&a.system)?;
    let bound = dto::parse_rat_at(&a.a, "A")?;
    let params = loxton_params(&a.loxton)?;
    let config = config_with(serde_json::to_value(a).expect("args"), env, Some(&sys));
    let r = match bounds_report(&sys, &bound, &params, env.precision_bits) {
        Ok(r) => r,
        Err(BoundsError::PrecisionExhausted) => {
            return Ok(report(
                "bounds",
                config,
                Outcome::BudgetExhausted,
                error_result(&BoundsError::PrecisionExhausted),
                Vec::new(),
            ))
        }
        Err(e @ BoundsError::InvalidParameter(_)) => {
            return Err(ConfigError::new("loxton parameters", e.to_string()).into())
        }
        Err(e) => {
            return Ok(report(
                "bounds",
                config,
                Outcome::Completed,
                error_result(&e),
                Vec::new(),
            ))
        }
    };
    let result = json!({
        "A": dto::rat(&r.a),
        "params": params_json(&r.params),
        "L": dto::rat(&r.l.value),
        "L_exact": r.l.exact,
        "D": bigint_json(&r.d),
        "m": r.m_const,
        "K": r.k.as_ref().map(|k| dto::rat(&k.value)),
        "K_exact": r.k.as_ref().map(|k| k.exact),
        "K_note": r.k_note.as_ref().map(ToString::to_string),
        "LK_at_DL": r.lk_at_dl.as_ref().map(dto::rat),
        "M": r.m_big,
    });
    Ok(report(
        "bounds",
        config,
        Outcome::Completed,
        result,
        Vec::new(),
    ))
}

pub fn loxton(a: &LoxtonCmdArgs, env: &EnvConfig) -> Result<Report, CliError> {
    let alpha = dto::parse_elem_at(&a.alpha, "alpha")?;
    let params = loxton_params(&a.loxton)?;
    positive(a.max_b, "max-b")?;
    let config = config_with(serde_json::to_value(a).expect("args"), env, None);
    let r = match verify_loxton_bound(&alpha, &params, a.max_b, a.order_bound, env.precision_bits) {
        Ok(r) => r,
        Err(
            e @ (BoundsError::OrderBound { .. }
            | BoundsError::NotIntegral
            | BoundsError::InvalidParameter(_)),
        ) => return Err(ConfigError::new("alpha", e.to_string()).into()),
        Err(e) => {
            return Ok(report(
                "loxton",
                config,
                Outcome::Completed,
                error_result(&e),
                Vec::new(),
            ))
        }
    };
    let mut certs = Vec::new();
    let decomposition = r.certificate.as_ref().map(|c| {
        certs.push(Certificate::Loxton {
            target: dto::elem(&c.target),
            order_bound: c.order_bound,
            exponents: c.exponents.clone(),
            coefficients: c.coefficients.iter().map(ToString::to_string).collect(),
        });
        json!({
            "b": c.b(),
            "terms": c
                .exponents
                .iter()
                .zip(&c.coefficients)
                .map(|(e, k)| format!("{k}*z({})^{e}", c.order_bound))
                .collect::<Vec<_>>(),
            "certificate": 0,
        })
    });
    let result = json!({
        "alpha": dto::elem(&alpha),
        "params": params_json(&params),
        "max_b": a.max_b,
        "order_bound": a.order_bound,
        "decomposition": decomposition,
        "house": [dto::dyadic(&r.house.lo), dto::dyadic(&r.house.hi)],
        "lk_at_house_hi": r.lk_at_house_hi.as_ref().map(dto::rat),
        "pass": r.pass,
        "certified": r.certified,
    });
    Ok(report("loxton", config, Outcome::Completed, result, certs))
}

pub fn fz(a: &FzArgs, env: &EnvConfig) -> Result<Report, CliError> {
    let g = dto::poly_from_value(&json_arg(&a.g, "g")?, "g")?;
    let q = dto::laurent_from_value(&json_arg(&a.q, "q")?, "q")?;
    let config = config_with(serde_json::to_value(a).expect("args"), env, None);
    let h = cyclodyn_core::canonical::laurent_compose(&g, &q);
    let result = match fz_bound_check(&g, &q) {
        Ok(r) => json!({
            "g": dto::poly(&g),
            "q": dto::laurent(&q),
            "h": dto::laurent(&h),
            "ell": r.ell,
            "deg_g": r.deg_g,
            "bound": r.bound,
            "pass": r.pass,
        }),
        Err(e) => error_result(&e),
    };
    Ok(report(
        "fz-check",
        config,
        Outcome::Completed,
        result,
        Vec::new(),
    ))
}

pub fn growth(a: &GrowthArgs, env: &EnvConfig) -> Result<Report, CliError> {
    let sys = load_system(&a.system)?;
    let w = parse_word(&a.word, &sys, "word")?;
    let config = config_with(serde_json::to_value(a).expect("args"), env, Some(&sys));
    let prec = env.precision_bits;
    let r: Result<Value, DynamicsError> = match a.kind {
        GrowthKind::Arch => {
            let alpha = dto::parse_elem_at(&a.alpha, "alpha")?;
            growth_check_arch(&sys, &alpha, &w, Embedding(a.embedding), prec)
                .map(|ok| json!({ "embedding": a.embedding, "strictly_increasing": ok }))
        }
        GrowthKind::Padic => {
            let alpha = dto::parse_rat_at(&a.alpha, "alpha")?;
            let p = a
                .prime
                .ok_or_else(|| ConfigError::new("prime", "required for --kind padic"))?;
            growth_check_padic(&sys, &alpha, p, &w).map(|g| {
                json!({
                    "prime": p,
                    "valuations": g.valuations,
                    "increasing": g.increasing,
                    "recurrence_exact": g.recurrence_exact,
                    "holds": g.holds(),
                })
            })
        }
        GrowthKind::House => {
            let alpha = dto::parse_elem_at(&a.alpha, "alpha")?;
            let bound = dto::parse_rat_at(&a.a, "A")?;
            prefix_house_bound(&sys, &alpha, &w, &bound, prec).map(|r| {
                json!({
                    "L": bound_json(&r.l),
                    "prefixes": r.prefixes.iter().map(|p| json!({
                        "word": dto::word(&p.word),
                        "value": dto::elem(&p.value),
                        "house": [dto::dyadic(&p.house.lo), dto::dyadic(&p.house.hi)],
                        "within": format!("{:?}", p.within).to_lowercase(),
                    })).collect::<Vec<_>>(),
                    "pass": r.pass,
                })
            })
        }
        GrowthKind::Integrality => {
            let alpha = dto::parse_elem_at(&a.alpha, "alpha")?;
            prefix_integrality(&sys, &alpha, &w).map(|r| {
                json!({
                    "D": bigint_json(&r.d),
                    "prefixes": r.prefixes.iter().map(|(u, ok)| json!({ "word": dto::word(u), "integral": ok })).collect::<Vec<_>>(),
                    "pass": r.pass,
                })
            })
        }
    };
    let (outcome, result) = match r {
        Ok(v) => (Outcome::Completed, v),
        Err(e) if is_budget(&e) => (Outcome::BudgetExhausted, error_result(&e)),
        Err(e) => (Outcome::Completed, error_result(&e)),
    };
    Ok(report("growth", config, outcome, result, Vec::new()))
}
