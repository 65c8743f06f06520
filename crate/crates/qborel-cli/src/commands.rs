use std::sync::atomic::{AtomicUsize, Ordering};

use qborel::coideal::{
    build_presentation, conj_a_sweep, conj_b_candidates, graded_algebra, lambda_prime, quantum_weyl_identity, sl2_borel,
    sl3_type1_borel, sl3_type2_borel, verify_coideal, Character, CoidealError, CoidealPresentation, CoidealVerdict,
    GradedReport, Sl3RelationCheck, TriangularData,
};
use qborel::linalg::Matrix;
use qborel::qfield::RatFunc;
use qborel::repthy::{
    induced_sl2, induced_sl3, nonbasic_witness, sl2_quotient_hom, sl2_submodule_test, InducedModule, InducedSpec, RepError,
    Sl3BorelType, Sl3InducedSpec, DEFAULT_DIM_CAP,
};
use qborel::rootsys::{integer_kernel, LatVec, RootDatum, WeylElt};
use qborel::uqalg::Uq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Report;
use crate::{BorelArgs, Cli, Command, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("{0}")]
    Failure(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Constraint(_) => 3,
            CliError::Failure(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<CoidealError> for CliError {
    fn from(e: CoidealError) -> Self {
        match e {
            CoidealError::Algebra(_) => CliError::Failure(e.to_string()),
            other => CliError::Constraint(other.to_string()),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::ConstraintViolation(msg) => CliError::Constraint(msg),
            RepError::Coideal(inner) => inner.into(),
            RepError::NotDominant(_) | RepError::CapExceeded { .. } => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<qborel::uqalg::UqError> for CliError {
    fn from(e: qborel::uqalg::UqError) -> Self {
        CliError::Failure(e.to_string())
    }
}

/// Exit status of a completed run: success, or a mathematical mismatch.
pub enum Outcome {
    Success,
    Mismatch,
}

impl From<Outcome> for std::process::ExitCode {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Success => std::process::ExitCode::SUCCESS,
            Outcome::Mismatch => std::process::ExitCode::from(1),
        }
    }
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Success
    } else {
        Outcome::Mismatch
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = &cli.config;
    if cfg.bound <= 0 {
        return Err(CliError::Usage("--bound must be positive".into()));
    }
    if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let datum = resolve_datum(cfg)?;
    let uq = Uq::new(datum, cfg.bound);
    let mut report = Report::open(cfg.out.as_deref(), cfg.format)?;
    match &cli.command {
        Command::SweepConja { max_shift } => sweep(cfg, &uq, *max_shift, &mut report),
        Command::Catalog => catalog(cfg, &uq, &mut report),
        Command::Induce { borel, e, f, k, lambda, lambda_prime } => {
            let values = CharacterArgs { e, f: f.as_deref(), k, lambda, lambda_prime: lambda_prime.as_deref() };
            induce(cfg, &uq, borel, &values, &mut report)
        }
        Command::VerifyCoideal { borel, length } => verify(cfg, &uq, borel, *length, &mut report),
        Command::Graded { word, support, max_shift } => graded(cfg, &uq, word, support, *max_shift, &mut report),
        Command::NonbasicWitness { borel, weights } => witness(cfg, &uq, borel, weights.as_deref(), &mut report),
    }
}

fn resolve_datum(cfg: &RunConfig) -> Result<RootDatum, CliError> {
    let name = if cfg.kind.chars().any(|c| c.is_ascii_digit()) {
        cfg.kind.clone()
    } else {
        let rank = cfg.rank.ok_or_else(|| CliError::Usage(format!("type {} needs --rank", cfg.kind)))?;
        format!("{}{rank}", cfg.kind)
    };
    name.to_uppercase().parse().map_err(|e| CliError::Usage(format!("unsupported datum {name}: {e}")))
}

fn config_json(cfg: &RunConfig, uq: &Uq) -> Value {
    json!({
        "datum": uq.datum().name(),
        "bound": cfg.bound,
        "window": cfg.window,
        "seed": cfg.seed,
    })
}

fn parse_value(text: &str) -> Result<RatFunc, CliError> {
    text.parse().map_err(|_| CliError::Usage(format!("cannot parse {text:?} as an element of Q(q)")))
}

fn weyl_from_word(datum: &RootDatum, word: &[usize]) -> Result<WeylElt, CliError> {
    let zero_based = one_based(datum, word)?;
    datum.from_reduced_word(&zero_based).map_err(|e| CliError::Usage(e.to_string()))
}

fn one_based(datum: &RootDatum, indices: &[usize]) -> Result<Vec<usize>, CliError> {
    indices
        .iter()
        .map(|&i| {
            if (1..=datum.rank()).contains(&i) {
                Ok(i - 1)
            } else {
                Err(CliError::Usage(format!("index {i} outside 1..={}", datum.rank())))
            }
        })
        .collect()
}

fn strip_timing(cfg: &RunConfig, mut value: Value) -> Value {
    if !cfg.timing {
        if let Value::Object(map) = &mut value {
            map.remove("elapsed_ms");
        }
    }
    value
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn sweep(cfg: &RunConfig, uq: &Uq, max_shift: u32, report: &mut Report) -> Result<Outcome, CliError> {
    let datum = uq.datum();
    if datum.rank() > 4 {
        return Err(CliError::Usage(format!("sweep supports rank at most 4, not {}", datum.name())));
    }
    report.header("sweep-conja", config_json(cfg, uq))?;
    let total: usize = datum.weyl_group().iter().map(|w| datum.valid_supports(w).iter().filter(|s| !s.is_empty()).count()).sum();
    let done = AtomicUsize::new(0);
    let progress = |r: &GradedReport| {
        let k = done.fetch_add(1, Ordering::Relaxed) + 1;
        eprintln!("[{k}/{total}] {} {} {}", r.w, r.support, if r.is_confirmed() { "confirmed" } else { "NOT confirmed" });
    };
    let reports = conj_a_sweep(uq, max_shift, &progress)?;
    let confirmed = reports.iter().filter(|r| r.is_confirmed()).count();
    for r in &reports {
        report.record(strip_timing(cfg, to_json(r)))?;
    }
    report.footer(json!({ "cases": reports.len(), "confirmed": confirmed, "mismatches": reports.len() - confirmed }))?;
    Ok(outcome(confirmed == reports.len()))
}

fn generators_json(c: &CoidealPresentation) -> Value {
    c.generators.iter().map(|g| json!({ "name": g.name, "element": g.element.to_string() })).collect()
}

fn triangular(uq: &Uq, minus: &WeylElt, plus: &WeylElt, support: &[usize], lambda: &RatFunc, lambda_p: &RatFunc) -> Result<CoidealPresentation, CliError> {
    let datum = uq.datum();
    let rows: Vec<LatVec> = support.iter().map(|&i| (0..datum.rank()).map(|j| datum.form_simple(j, i)).collect()).collect();
    let lattice = integer_kernel(&rows, datum.rank());
    let minus_values: Vec<(usize, RatFunc)> = support.iter().map(|&i| (i, lambda_p.clone())).collect();
    let plus_values: Vec<(usize, RatFunc)> = support.iter().map(|&i| (i, lambda.clone())).collect();
    Ok(build_presentation(
        uq,
        TriangularData {
            phi_minus: Character::new(datum, minus, &minus_values)?,
            phi_plus: Character::new(datum, plus, &plus_values)?,
            w_minus: minus.clone(),
            lattice,
            w_plus: plus.clone(),
        },
    )?)
}

fn presentation(uq: &Uq, args: &BorelArgs) -> Result<CoidealPresentation, CliError> {
    let datum = uq.datum();
    let lambda = parse_value(&args.lambda)?;
    let lambda_p = match &args.lambda_prime {
        Some(text) => parse_value(text)?,
        None => lambda_prime().try_div(&lambda).map_err(|_| CliError::Constraint("λ must be nonzero".into()))?,
    };
    let need = |name: &str| {
        if datum.name() == name {
            Ok(())
        } else {
            Err(CliError::Usage(format!("--borel {} needs --type {name}", args.borel)))
        }
    };
    let w0 = datum.longest_element();
    let one = datum.identity();
    match args.borel.as_str() {
        "weyl" => {
            need("A1")?;
            Ok(sl2_borel(uq, &lambda, &lambda_p)?)
        }
        "sl3-type1" => {
            need("A2")?;
            Ok(sl3_type1_borel(uq)?)
        }
        "sl3-type2" => {
            need("A2")?;
            Ok(sl3_type2_borel(uq)?)
        }
        "standard" => triangular(uq, &w0, &one, &[], &lambda, &lambda_p),
        "whole" => triangular(uq, &w0, &w0, &[], &lambda, &lambda_p),
        "custom" => {
            let minus = weyl_from_word(datum, &args.w_minus)?;
            let plus = weyl_from_word(datum, &args.w_plus)?;
            let support = one_based(datum, &args.support)?;
            triangular(uq, &minus, &plus, &support, &lambda, &lambda_p)
        }
        other => Err(CliError::Usage(format!("unknown --borel {other}"))),
    }
}

/// Whether the data of `c` matches one of the enumerated Borel candidates.
fn conj_b_status(datum: &RootDatum, c: &CoidealPresentation) -> Option<bool> {
    let data = c.data.as_ref()?;
    let support: Vec<LatVec> = data.phi_minus.support().iter().map(|&i| datum.simple_root(i)).collect();
    Some(conj_b_candidates(datum).iter().any(|cand| {
        cand.w_minus == data.w_minus && cand.w_plus == data.w_plus && {
            let mut a = cand.support.clone();
            a.sort();
            let mut b = support.clone();
            b.sort();
            a == b
        }
    }))
}

fn catalog(cfg: &RunConfig, uq: &Uq, report: &mut Report) -> Result<Outcome, CliError> {
    let datum = uq.datum();
    let (entries, length): (Vec<(&str, CoidealPresentation)>, usize) = match datum.name().as_str() {
        "A1" => {
            let w = datum.longest_element();
            let one = datum.identity();
            let unit = RatFunc::one();
            (
                vec![
                    ("standard lower U^0 U^-", triangular(uq, &w, &one, &[], &unit, &unit)?),
                    ("standard upper U^0 S(U^+)", triangular(uq, &one, &w, &[], &unit, &unit)?),
                    ("Weyl algebra B(lambda, lambda')", sl2_borel(uq, &unit, &lambda_prime())?),
                ],
                2,
            )
        }
        "A2" => {
            let w0 = datum.longest_element();
            let one = datum.identity();
            let unit = RatFunc::one();
            (
                vec![
                    ("standard k[K1,K2] S(U^+[w0])", triangular(uq, &one, &w0, &[], &unit, &unit)?),
                    ("type 1 U^-[s1] k[K1K2^2] S(U^+[w0])", sl3_type1_borel(uq)?),
                    ("type 2 U^-[s1s2] k[K1K2^2] S(U^+[s1s2])", sl3_type2_borel(uq)?),
                ],
                1,
            )
        }
        other => return Err(CliError::Usage(format!("catalog covers A1 and A2, not {other}"))),
    };
    report.header("catalog", config_json(cfg, uq))?;
    let mut all_coideal = true;
    for (name, c) in &entries {
        let verdict = verify_coideal(uq, c, length)?;
        all_coideal &= verdict == CoidealVerdict::True;
        report.record(json!({
            "kind": "entry",
            "name": name,
            "generators": generators_json(c),
            "coideal": to_json(&verdict),
            "conj_b_candidate": conj_b_status(datum, c),
        }))?;
    }
    let mut stated_failures = Vec::new();
    if datum.name() == "A1" {
        let (lhs, rhs) = quantum_weyl_identity(uq)?;
        report.record(json!({
            "kind": "identity",
            "label": "[Ē,F̄]_{q^2}",
            "value": lhs.to_string(),
            "expected": rhs.to_string(),
            "holds": lhs == rhs,
        }))?;
        if lhs != rhs {
            stated_failures.push("[Ē,F̄]_{q^2}".to_string());
        }
    } else {
        for check in Sl3RelationCheck::all(uq)? {
            if check.stated && !check.holds {
                stated_failures.push(check.label.clone());
            }
            let mut value = to_json(&check);
            value["kind"] = json!("identity");
            report.record(value)?;
        }
    }
    report.footer(json!({
        "entries": entries.len(),
        "all_coideal": all_coideal,
        "stated_identity_failures": stated_failures,
    }))?;
    Ok(outcome(all_coideal && stated_failures.is_empty()))
}

struct CharacterArgs<'a> {
    e: &'a str,
    f: Option<&'a str>,
    k: &'a str,
    lambda: &'a str,
    lambda_prime: Option<&'a str>,
}

fn matrix_json(name: String, m: &Matrix) -> Value {
    let mut entries = Vec::new();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let v = m.get(r, c);
            if !v.is_zero() {
                entries.push(json!([r, c, v.to_string()]));
            }
        }
    }
    json!({ "kind": "matrix", "generator": name, "entries": entries })
}

fn module_records(module: &InducedModule, uq: &Uq, report: &mut Report) -> Result<Vec<String>, CliError> {
    let w = &module.module;
    report.record(json!({
        "kind": "basis",
        "labels": module.labels,
        "names": w.labels(),
        "boundary": w.boundary(),
    }))?;
    for i in 0..w.rank() {
        report.record(matrix_json(format!("E{}", i + 1), w.e(i)))?;
        report.record(matrix_json(format!("F{}", i + 1), w.f(i)))?;
        report.record(matrix_json(format!("K{}", i + 1), w.k(i)))?;
        report.record(matrix_json(format!("K{}^-1", i + 1), w.k_inv(i)))?;
    }
    let failures = w.relation_failures(uq);
    report.record(json!({ "kind": "relations", "interior_failures": failures }))?;
    Ok(failures)
}

fn induce(cfg: &RunConfig, uq: &Uq, borel: &str, values: &CharacterArgs, report: &mut Report) -> Result<Outcome, CliError> {
    let lambda = parse_value(values.lambda)?;
    let lambda_p = match values.lambda_prime {
        Some(t) => parse_value(t)?,
        None => lambda_prime().try_div(&lambda).map_err(|_| CliError::Constraint("λ must be nonzero".into()))?,
    };
    let e = parse_value(values.e)?;
    let f = match values.f {
        Some(t) => parse_value(t)?,
        None => (&lambda * &lambda_p).try_div(&e).map_err(|_| CliError::Constraint("χ(Ē) must be nonzero".into()))?,
    };
    match borel {
        "weyl" => {
            if uq.rank() != 1 {
                return Err(CliError::Usage("--borel weyl needs --type A1".into()));
            }
            let spec = InducedSpec { lambda, lambda_prime: lambda_p, e, f, radius: cfg.window };
            let module = induced_sl2(uq, &spec)?;
            report.header("induce", config_json(cfg, uq))?;
            let failures = module_records(&module, uq, report)?;
            let mut summary = json!({ "dim": module.labels.len(), "interior_relations_hold": failures.is_empty() });
            match sl2_submodule_test(&spec.e, &spec.lambda) {
                None => {
                    report.record(json!({ "kind": "submodule", "verdict": "irreducible" }))?;
                    summary["verdict"] = json!("irreducible");
                    report.footer(summary)?;
                    Ok(outcome(failures.is_empty()))
                }
                Some((n, sign)) => {
                    report.record(json!({
                        "kind": "submodule",
                        "verdict": "reducible",
                        "n": n,
                        "sign": sign.to_string(),
                        "codimension": n + 1,
                    }))?;
                    let hom = sl2_quotient_hom(&module, &spec)?;
                    report.record(json!({
                        "kind": "quotient",
                        "dim": n + 1,
                        "image_of_generator": hom.image_of_generator.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "surjective": hom.is_surjective(),
                        "intertwines": hom.intertwines(),
                        "window_kernel_dim": hom.kernel_dim(),
                    }))?;
                    summary["verdict"] = json!("reducible");
                    summary["quotient_dim"] = json!(n + 1);
                    report.footer(summary)?;
                    Ok(outcome(failures.is_empty() && hom.is_surjective() && hom.intertwines()))
                }
            }
        }
        "sl3-type1" | "sl3-type2" => {
            if uq.datum().name() != "A2" {
                return Err(CliError::Usage(format!("--borel {borel} needs --type A2")));
            }
            let kind = if borel == "sl3-type1" { Sl3BorelType::Type1 } else { Sl3BorelType::Type2 };
            let spec = Sl3InducedSpec { borel: kind, e1: e, f1: f, k: parse_value(values.k)?, radius: cfg.window };
            let module = induced_sl3(uq, &spec)?;
            report.header("induce", config_json(cfg, uq))?;
            let failures = module_records(&module, uq, report)?;
            report.footer(json!({ "dim": module.labels.len(), "interior_relations_hold": failures.is_empty() }))?;
            Ok(outcome(failures.is_empty()))
        }
        other => Err(CliError::Usage(format!("unknown --borel {other} for induce"))),
    }
}

fn verify(cfg: &RunConfig, uq: &Uq, args: &BorelArgs, length: usize, report: &mut Report) -> Result<Outcome, CliError> {
    let c = presentation(uq, args)?;
    report.header("verify-coideal", config_json(cfg, uq))?;
    let verdict = verify_coideal(uq, &c, length)?;
    report.record(json!({ "generators": generators_json(&c), "length": length, "verdict": to_json(&verdict) }))?;
    report.footer(json!({ "verdict": to_json(&verdict) }))?;
    Ok(outcome(verdict != CoidealVerdict::False))
}

fn graded(cfg: &RunConfig, uq: &Uq, word: &[usize], support: &[usize], max_shift: u32, report: &mut Report) -> Result<Outcome, CliError> {
    let datum = uq.datum();
    let w = weyl_from_word(datum, word)?;
    let support = one_based(datum, support)?;
    let values: Vec<(usize, RatFunc)> = match cfg.seed {
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            support
                .iter()
                .map(|&i| {
                    let v: i64 = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    (i, RatFunc::from_int(v))
                })
                .collect()
        }
        None => support.iter().map(|&i| (i, RatFunc::one())).collect(),
    };
    let phi = Character::new(datum, &w, &values)?;
    report.header("graded", config_json(cfg, uq))?;
    let result = graded_algebra(uq, &w, &phi, max_shift)?;
    let mut record = strip_timing(cfg, to_json(&result));
    record["character_values"] = values.iter().map(|(i, v)| json!([i + 1, v.to_string()])).collect();
    report.record(record)?;
    report.footer(json!({ "confirmed": result.is_confirmed() }))?;
    Ok(outcome(result.is_confirmed()))
}

fn parse_weights(datum: &RootDatum, text: Option<&str>) -> Result<Vec<LatVec>, CliError> {
    let Some(text) = text else {
        let n = datum.rank();
        let mut out: Vec<LatVec> = (0..n).map(|i| (0..n).map(|j| i32::from(i == j)).collect()).collect();
        if n > 1 {
            out.push(vec![1; n]);
        }
        return Ok(out);
    };
    text.split(';')
        .map(|w| {
            let v: Vec<i32> = w
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad weight {w:?}"))))
                .collect::<Result<_, _>>()?;
            if v.len() != datum.rank() {
                return Err(CliError::Usage(format!("weight {w:?} needs {} entries", datum.rank())));
            }
            Ok(v)
        })
        .collect()
}

fn witness(cfg: &RunConfig, uq: &Uq, args: &BorelArgs, weights: Option<&str>, report: &mut Report) -> Result<Outcome, CliError> {
    let c = presentation(uq, args)?;
    let weights = parse_weights(uq.datum(), weights)?;
    report.header("nonbasic-witness", config_json(cfg, uq))?;
    let result = nonbasic_witness(uq, &c, &weights, DEFAULT_DIM_CAP)?;
    report.record(json!({ "generators": generators_json(&c), "weights": weights, "result": to_json(&result) }))?;
    report.footer(json!({ "found": result.is_found() }))?;
    Ok(Outcome::Success)
}
