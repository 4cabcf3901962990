use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use oligoforge::codegen::{
    build_dna_code, simplex_code, verify_code, CodeBounds, CodeMetadata, DnaCode,
    VerificationReport,
};
use oligoforge::enumeration::{
    self, count_mu1, count_predicate, dominant_root, g_series, g_table, gj_coefficients,
    growth_check, oracle_cap_from_env, Predicate,
};
use oligoforge::folding::{
    self, linear_energy, EnergyParams, LinearEnergyModel, Rational, DEFAULT_STRUCTURE_THRESHOLD,
};
use oligoforge::io::{read_sequences, Record};
use oligoforge::seq::{gc_content, shift_profile};
use oligoforge::{exec, BitString, Strategy};

use crate::config::Config;
use crate::{
    Cli, CliError, Command, ConstructArgs, CountArgs, EnergyArgs, EnumerateArgs, FoldArgs,
    GfArgs, ScreenArgs, VerifyArgs,
};

type CmdResult = Result<(), CliError>;

struct Ctx {
    config: Config,
    strategy: Strategy,
}

pub fn run(cli: Cli) -> CmdResult {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let ctx = Ctx {
        config,
        strategy: if cli.sequential {
            Strategy::Sequential
        } else {
            Strategy::default()
        },
    };
    match cli.command {
        Command::Fold(a) => cmd_fold(&ctx, a),
        Command::Screen(a) => cmd_screen(&ctx, a),
        Command::Enumerate(a) => cmd_enumerate(&ctx, a),
        Command::Gf(a) => cmd_gf(&ctx, a),
        Command::Count(a) => cmd_count(&ctx, a),
        Command::Construct(a) => cmd_construct(&ctx, a),
        Command::Verify(a) => cmd_verify(&ctx, a),
    }
}

fn map_err(e: oligoforge::Error) -> CliError {
    use oligoforge::Error as E;
    match e {
        E::NotSimplex(_) => CliError::Verification(e.to_string()),
        E::InvalidBits(_) => CliError::Usage(e.to_string()),
        other => other.into(),
    }
}

fn emit(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Data(format!("cannot write stdout: {e}")))
        }
    }
}

fn input_path(ctx: &Ctx, flag: Option<PathBuf>) -> Result<PathBuf, CliError> {
    ctx.config
        .pick(flag, "input")?
        .ok_or_else(|| CliError::Usage("--input is required".into()))
}

fn read_input(ctx: &Ctx, flag: Option<PathBuf>) -> Result<Vec<Record>, CliError> {
    let path = input_path(ctx, flag)?;
    read_sequences(&path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn energy_params(ctx: &Ctx, a: &EnergyArgs) -> Result<EnergyParams, CliError> {
    let defaults = EnergyParams::default();
    let at = ctx.config.pick_or(a.alpha_at, "alpha-at", defaults.at())?;
    let gc = ctx.config.pick_or(a.alpha_gc, "alpha-gc", defaults.gc())?;
    EnergyParams::new(at, gc).map_err(map_err)
}

fn format_of(ctx: &Ctx, flag: Option<String>, default: &str, allowed: &[&str]) -> Result<String, CliError> {
    let f = ctx.config.pick_or(flag, "format", default.to_string())?;
    if allowed.contains(&f.as_str()) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!(
            "unsupported format {f:?}; expected one of {}",
            allowed.join(", ")
        )))
    }
}

fn parse_ratio(text: &str, what: &str) -> Result<Rational, CliError> {
    text.trim()
        .parse::<Ratio<i64>>()
        .map_err(|_| CliError::Usage(format!("{what}: {text:?} is not a rational number")))
}

fn cmd_fold(ctx: &Ctx, a: FoldArgs) -> CmdResult {
    let format = format_of(ctx, a.format, "text", &["text", "csv", "json"])?;
    let threshold = ctx.config.pick_or(a.threshold, "threshold", DEFAULT_STRUCTURE_THRESHOLD)?;
    let params = energy_params(ctx, &a.energy)?;
    let output = ctx.config.pick(a.output, "output")?;
    let records = read_input(ctx, a.input)?;

    let folds = exec::map(ctx.strategy, &records, |r| folding::fold(&r.sequence, &params));
    let mut out = String::new();
    match format.as_str() {
        "json" => {
            let items: Vec<Value> = records
                .iter()
                .zip(&folds)
                .map(|(r, f)| {
                    json!({
                        "line": r.line,
                        "sequence": r.sequence,
                        "energy": f.energy(),
                        "threshold": threshold,
                        "has_structure": f.energy() <= threshold,
                        "dot_bracket": f.structure.dot_bracket(),
                        "pairs": f.structure.pairs_one_based(),
                        "table": f.table.grid(),
                    })
                })
                .collect();
            out = to_json(&items)?;
        }
        fmt => {
            for (idx, (r, f)) in records.iter().zip(&folds).enumerate() {
                if idx > 0 {
                    out.push('\n');
                }
                let verdict = if f.energy() <= threshold { "yes" } else { "no" };
                if fmt == "csv" {
                    let _ = writeln!(
                        out,
                        "# {} energy={} structure={verdict} pairs={}",
                        r.sequence,
                        f.energy(),
                        f.structure.pair_list()
                    );
                    out.push_str(&f.table.render_csv(&r.sequence));
                } else {
                    let _ = writeln!(out, "# {} (line {})", r.sequence, r.line);
                    let _ = writeln!(out, "energy\t{}", f.energy());
                    let _ = writeln!(out, "structure\t{verdict} (threshold {threshold})");
                    let _ = writeln!(out, "dot-bracket\t{}", f.structure.dot_bracket());
                    let _ = writeln!(out, "pairs\t{}", f.structure.pair_list());
                    out.push_str(&f.table.render_text(&r.sequence));
                }
            }
        }
    }
    emit(output.as_deref(), &out)
}

fn cmd_screen(ctx: &Ctx, a: ScreenArgs) -> CmdResult {
    let cfg = &ctx.config;
    let depth = cfg.pick(a.s, "s")?;
    let max_mu = cfg.pick(a.max_mu, "max-mu")?;
    let exact_gc = cfg.pick(a.w, "w")?;
    let gc_min = cfg.pick(a.gc_min, "gc-min")?.or(exact_gc);
    let gc_max = cfg.pick(a.gc_max, "gc-max")?.or(exact_gc);
    let threshold = cfg.pick(a.threshold, "threshold")?;
    let linear_threshold = cfg
        .pick(a.linear_threshold, "linear-threshold")?
        .map(|t: String| parse_ratio(&t, "--linear-threshold"))
        .transpose()?;
    let model = {
        let kappa = match cfg.pick(a.kappa, "kappa")? {
            Some(k) => parse_ratio(&k, "--kappa")?,
            None => Rational::from_integer(0),
        };
        match cfg.pick::<String>(a.gammas, "gammas")? {
            Some(g) => {
                let gammas = g
                    .split(',')
                    .map(|x| parse_ratio(x, "--gammas"))
                    .collect::<Result<Vec<_>, _>>()?;
                LinearEnergyModel::new(kappa, gammas).map_err(map_err)?
            }
            None => LinearEnergyModel::new(kappa, LinearEnergyModel::default().gammas().to_vec())
                .map_err(map_err)?,
        }
    };
    let params = energy_params(ctx, &a.energy)?;
    let output = cfg.pick(a.output, "output")?;
    let rejects_path = cfg.pick(a.rejects, "rejects")?;
    let records = read_input(ctx, a.input)?;

    let verdicts = exec::map(ctx.strategy, &records, |r| {
        let q = &r.sequence;
        let mut reasons = Vec::new();
        if let Some(limit) = max_mu {
            let profile = shift_profile(q);
            let top = depth.unwrap_or(q.len()).min(q.len() - 1);
            if let Some((i, v)) = (1..=top)
                .map(|i| (i, profile.values()[i]))
                .find(|&(_, v)| v > limit)
            {
                reasons.push(format!("mu_{i} {v} > {limit}"));
            }
        }
        let gc = gc_content(q);
        if gc_min.is_some_and(|lo| gc < lo) || gc_max.is_some_and(|hi| gc > hi) {
            let lo = gc_min.map_or("-".into(), |v| v.to_string());
            let hi = gc_max.map_or("-".into(), |v| v.to_string());
            reasons.push(format!("GC {gc} outside [{lo},{hi}]"));
        }
        if let Some(t) = threshold {
            let e = folding::min_free_energy(q, &params);
            if e <= t {
                reasons.push(format!("energy {e} <= {t}"));
            }
        }
        if let Some(t) = linear_threshold {
            match linear_energy(q, &model, &params) {
                Ok(e) if e <= t => reasons.push(format!("linear energy {e} <= {t}")),
                Ok(_) => {}
                Err(e) => reasons.push(format!("linear energy undefined: {e}")),
            }
        }
        reasons
    });

    let mut accepted = String::new();
    let mut rejected = String::new();
    for (r, reasons) in records.iter().zip(&verdicts) {
        if reasons.is_empty() {
            let _ = writeln!(accepted, "{}", r.sequence);
        } else {
            let _ = writeln!(rejected, "{}\t{}\t{}", r.line, r.sequence, reasons.join("; "));
        }
    }
    emit(output.as_deref(), &accepted)?;
    match rejects_path {
        Some(p) => emit(Some(&p), &rejected),
        None => {
            eprint!("{rejected}");
            Ok(())
        }
    }
}

/// Rows of string cells rendered as TSV or a JSON array of objects.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self, format: &str) -> Result<String, CliError> {
        if format == "json" {
            let items: Vec<Value> = self
                .rows
                .iter()
                .map(|row| {
                    Value::Object(
                        self.header
                            .iter()
                            .zip(row)
                            .map(|(k, v)| (k.to_string(), cell_value(v)))
                            .collect(),
                    )
                })
                .collect();
            return to_json(&items);
        }
        let mut out = self.header.join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        Ok(out)
    }
}

fn cell_value(v: &str) -> Value {
    if let Ok(n) = v.parse::<u64>() {
        return json!(n);
    }
    match v {
        "true" => Value::Bool(true),
        "false" => Value::Bool(false),
        _ => Value::String(v.to_string()),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Data(format!("cannot serialise: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn oracle_cap() -> Result<usize, CliError> {
    oracle_cap_from_env().map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_enumerate(ctx: &Ctx, a: EnumerateArgs) -> CmdResult {
    let cfg = &ctx.config;
    let s = cfg.pick_or(a.s, "s", 2)?;
    let n = cfg.pick_or(a.n, "n", 10)?;
    let oracle = cfg.flag(a.oracle, "oracle")?;
    let mu1 = cfg.flag(a.mu1, "mu1")?;
    let gc = cfg.flag(a.gc, "gc")?;
    let w_filter = cfg.pick(a.w, "w")?;
    let format = format_of(ctx, a.format, "tsv", &["tsv", "json"])?;
    let output = cfg.pick(a.output, "output")?;
    if n == 0 {
        return Err(CliError::Usage("-n must be at least 1".into()));
    }
    if mu1 && gc {
        return Err(CliError::Usage("--mu1 and --gc are exclusive".into()));
    }
    let cap = oracle_cap()?;
    let brute = |len: usize, pred: Predicate| count_predicate(len, cap, ctx.strategy, pred).map_err(map_err);

    let mut table = if mu1 {
        let mut t = Table { header: vec!["n", "m", "count"], rows: vec![] };
        for m in 0..n {
            t.rows.push(vec![n.to_string(), m.to_string(), count_mu1(n, m).map_err(map_err)?.to_string()]);
        }
        t
    } else if gc {
        let coeffs = gj_coefficients(n).map_err(map_err)?;
        let mut t = Table { header: vec!["n", "w", "count"], rows: vec![] };
        for len in 1..=n {
            for w in (0..=len).filter(|w| w_filter.is_none_or(|f| f == *w)) {
                t.rows.push(vec![len.to_string(), w.to_string(), coeffs.get(len, w).to_string()]);
            }
        }
        t
    } else {
        let counts = g_table(s, n).map_err(map_err)?;
        Table {
            header: vec!["n", "g"],
            rows: counts.iter().map(|(len, v)| vec![len.to_string(), v.to_string()]).collect(),
        }
    };

    if oracle {
        table.header.extend(["oracle", "equal"]);
        for row in &mut table.rows {
            let len: usize = row[0].parse().expect("numeric cell");
            let pred = if mu1 {
                Predicate::Mu1Equals(row[1].parse().expect("numeric cell"))
            } else if gc {
                Predicate::Mu1ZeroGc(row[1].parse().expect("numeric cell"))
            } else {
                Predicate::ShiftFree { depth: s }
            };
            let count = brute(len, pred)?.to_string();
            let equal = (count == *row.last().expect("non-empty row")).to_string();
            row.push(count);
            row.push(equal);
        }
    }
    let text = table.render(&format)?;
    emit(output.as_deref(), &text)?;
    if oracle && table.rows.iter().any(|r| r.last().map(String::as_str) == Some("false")) {
        return Err(CliError::Verification("oracle disagrees with the closed form".into()));
    }
    Ok(())
}

fn cmd_gf(ctx: &Ctx, a: GfArgs) -> CmdResult {
    let cfg = &ctx.config;
    let s = cfg.pick_or(a.s, "s", 2)?;
    let n = cfg.pick_or(a.n, "n", 10)?;
    let growth = cfg.flag(a.growth, "growth")?;
    let tol = cfg.pick_or(a.tol, "tol", 1e-9)?;
    let format = format_of(ctx, a.format, "tsv", &["tsv", "json"])?;
    let output = cfg.pick(a.output, "output")?;
    if n == 0 {
        return Err(CliError::Usage("-n must be at least 1".into()));
    }
    if !growth {
        let counts = g_series(s, n).map_err(map_err)?;
        let table = Table {
            header: vec!["n", "g"],
            rows: counts.iter().map(|(len, v)| vec![len.to_string(), v.to_string()]).collect(),
        };
        return emit(output.as_deref(), &table.render(&format)?);
    }

    let ratio = growth_check(s, n).map_err(map_err)?;
    let (analysis, rho) = if s == 1 {
        // psi_1(z) = z - 3
        (None, 3.0)
    } else {
        let g = dominant_root(s, tol).map_err(map_err)?;
        let rho = g.rho;
        (Some(g), rho)
    };
    let beta = enumeration::beta_estimate(s, n, rho).map_err(map_err)?;
    let text = if format == "json" {
        to_json(&json!({
            "s": s,
            "rho": rho,
            "analysis": analysis,
            "n": n,
            "ratio": ratio,
            "beta_estimate": beta,
        }))?
    } else {
        let mut out = match &analysis {
            Some(g) => g.report(),
            None => format!("s\t{s}\nrho\t3 (exact root of z - 3)\n"),
        };
        let _ = writeln!(out, "n\t{n}");
        let _ = writeln!(out, "ratio\t{ratio:.12}");
        let _ = writeln!(out, "ratio_minus_rho\t{:.3e}", ratio - rho);
        let _ = writeln!(out, "beta_estimate\t{beta:.12}");
        out
    };
    emit(output.as_deref(), &text)
}

fn cmd_count(ctx: &Ctx, a: CountArgs) -> CmdResult {
    let cfg = &ctx.config;
    let n = cfg.pick_or(a.n, "n", 8)?;
    let name = cfg.pick_or(a.predicate, "predicate", "shift".to_string())?;
    let s = cfg.pick_or(a.s, "s", 1)?;
    let m = cfg.pick_or(a.m, "m", 0)?;
    let w = cfg.pick_or(a.w, "w", 0)?;
    let output = cfg.pick(a.output, "output")?;
    let (pred, label) = match name.as_str() {
        "shift" => (Predicate::ShiftFree { depth: s }, format!("mu_1..mu_{s} = 0")),
        "mu1" => (Predicate::Mu1Equals(m), format!("mu_1 = {m}")),
        "gc" => (Predicate::GcContent(w), format!("GC = {w}")),
        "gc-mu1" => (Predicate::Mu1ZeroGc(w), format!("mu_1 = 0, GC = {w}")),
        "boundary" => (Predicate::NoComplementaryPair, "no complementary pair".to_string()),
        other => {
            return Err(CliError::Usage(format!(
                "unknown predicate {other:?}; expected shift, mu1, gc, gc-mu1 or boundary"
            )))
        }
    };
    let count = count_predicate(n, oracle_cap()?, ctx.strategy, pred).map_err(map_err)?;
    emit(output.as_deref(), &format!("n\tpredicate\tcount\n{n}\t{label}\t{count}\n"))
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn check_report(report: &VerificationReport) -> CmdResult {
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        Err(CliError::Verification(format!("failed checks: {}", failed.join(", "))))
    }
}

fn cmd_construct(ctx: &Ctx, a: ConstructArgs) -> CmdResult {
    let cfg = &ctx.config;
    let m = cfg.pick_or(a.m, "m", 3)?;
    let generator = cfg
        .pick::<String>(a.generator, "generator")?
        .map(|g| g.parse::<BitString>())
        .transpose()
        .map_err(map_err)?;
    let threshold = cfg.pick_or(a.threshold, "threshold", DEFAULT_STRUCTURE_THRESHOLD)?;
    let params = energy_params(ctx, &a.energy)?;
    let output = cfg.pick(a.output, "output")?;

    let simplex = simplex_code(m, generator).map_err(map_err)?;
    let code = build_dna_code(&simplex, ctx.strategy);
    let report = verify_code(&code, &CodeBounds::simplex(m), &params, threshold, ctx.strategy);
    match &output {
        Some(path) => {
            emit(Some(path), &code.to_text())?;
            emit(Some(&sidecar(path, ".json")), &to_json(&CodeMetadata::from_report(&report))?)?;
            emit(Some(&sidecar(path, ".report.txt")), &report.render_text())?;
        }
        None => emit(None, &code.to_text())?,
    }
    check_report(&report)
}

fn cmd_verify(ctx: &Ctx, a: VerifyArgs) -> CmdResult {
    let cfg = &ctx.config;
    let m: Option<usize> = cfg.pick(a.m, "m")?;
    let mut bounds = match m {
        Some(m) if (2..=oligoforge::codegen::MAX_DIMENSION).contains(&m) => CodeBounds::simplex(m),
        Some(m) => return Err(CliError::Usage(format!("-m {m} out of range"))),
        None => CodeBounds::default(),
    };
    if let Some(v) = cfg.pick(a.max_mu, "max-mu")? {
        bounds.max_shift_match = Some(v);
    }
    if let Some(v) = cfg.pick(a.w, "w")? {
        bounds.gc_content = Some(v);
    }
    if let Some(v) = cfg.pick(a.min_distance, "min-distance")? {
        bounds.min_distance = Some(v);
    }
    let threshold = cfg.pick_or(a.threshold, "threshold", DEFAULT_STRUCTURE_THRESHOLD)?;
    let params = energy_params(ctx, &a.energy)?;
    let format = format_of(ctx, a.format, "text", &["text", "json"])?;
    let output = cfg.pick(a.output, "output")?;
    let records = read_input(ctx, a.input)?;

    let words = records.into_iter().map(|r| r.sequence).collect();
    let code = DnaCode::from_codewords(words, ctx.strategy).map_err(|e| CliError::Data(e.to_string()))?;
    let report = verify_code(&code, &bounds, &params, threshold, ctx.strategy);
    let text = if format == "json" {
        to_json(&report)?
    } else {
        report.render_text()
    };
    emit(output.as_deref(), &text)?;
    check_report(&report)
}
