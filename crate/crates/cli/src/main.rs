//! `agprop`: construct, verify and inspect AG-code Boolean functions.

mod error;

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use agprop::boolfn::{
    anf, anf_to_string, check_budget, combination, max_pc_degree_of_order, read_bftt, resiliency_order,
    write_bftt, VectorialFunction, Verdict, DEFAULT_MAT_BUDGET,
};
use agprop::codes::LinearCode;
use agprop::curve::backend_by_name;
use agprop::field::BinaryField;
use agprop::pipeline::{
    build_theorem1, certify, claimed_parameters, conventions_hash, kurosawa_satoh, preset, validate_params,
    Certificate, Claimed, ParamsFile, Preset, Theorem1Params, Verified, DEFAULT_ENUM_BUDGET,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "agprop", version, about = "Vectorial Boolean functions from algebraic-geometric codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest truth table materialized, in bits per output.
    #[arg(long, global = true, default_value_t = DEFAULT_MAT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget_mat: u64,
    /// Largest enumeration (code messages or fixed subfunctions).
    #[arg(long, global = true, default_value_t = DEFAULT_ENUM_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget_enum: u64,
    /// Worker threads for verification kernels (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a function, writing <name>.bftt and <name>.cert.json.
    Construct {
        #[arg(long, required_unless_present = "params", conflicts_with = "params")]
        preset: Option<String>,
        /// JSON parameter file for the AG construction.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Check a truth-table file exhaustively, optionally against a certificate.
    Verify {
        input: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Claimed PC degree (overrides the certificate).
        #[arg(long)]
        l: Option<u32>,
        /// Claimed order (overrides the certificate).
        #[arg(long)]
        k: Option<u32>,
        /// Claimed resiliency (overrides the certificate).
        #[arg(long)]
        t: Option<u32>,
    },
    Inspect {
        #[command(subcommand)]
        what: Inspect,
    },
}

#[derive(Subcommand, Debug)]
enum Inspect {
    /// GF(2^w): modulus, trace and self-dual basis.
    Field {
        w: u32,
        #[arg(long)]
        self_dual_basis: bool,
        /// Multiplication table (w <= 4).
        #[arg(long)]
        table: bool,
    },
    /// Places of a curve backend.
    Curve {
        name: String,
        /// Also list places of this degree (1 or 2).
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Parameters of a code file.
    Code {
        file: PathBuf,
        #[arg(long)]
        min_distance: bool,
        #[arg(long)]
        dual: bool,
    },
    /// Algebraic normal form of each output of a truth-table file.
    Anf { file: PathBuf },
    /// Parameters, hypothesis checks and claims of a preset.
    Preset { name: String },
}

struct Report {
    json: Value,
    text: String,
    /// Non-zero when the report records a failed comparison.
    exit: u8,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, exit: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("json value")),
                Format::Text => print!("{}", report.text),
            }
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Construct { preset, params, out } => construct(cli, preset.as_deref(), params.as_deref(), out),
        Command::Verify { input, cert, l, k, t } => verify(cli, input, cert.as_deref(), [*l, *k, *t]),
        Command::Inspect { what } => match what {
            Inspect::Field { w, self_dual_basis, table } => inspect_field(*w, *self_dual_basis, *table),
            Inspect::Curve { name, degree } => inspect_curve(name, *degree),
            Inspect::Code { file, min_distance, dual } => inspect_code(cli, file, *min_distance, *dual),
            Inspect::Anf { file } => inspect_anf(cli, file),
            Inspect::Preset { name } => inspect_preset(cli, name),
        },
    }
}

/// File stem for a preset or parameter-file name: `example2(7,1,2,2)`
/// becomes `example2-7-1-2-2`.
fn stem(name: &str) -> String {
    let mut s = String::new();
    for c in name.chars() {
        if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
            s.push(c);
        } else if !s.ends_with('-') {
            s.push('-');
        }
    }
    s.trim_matches('-').to_string()
}

fn read_params(path: &Path) -> Result<Theorem1Params, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let file: ParamsFile = serde_json::from_str(&text)?;
    Ok(Theorem1Params::from_file(&file)?)
}

fn build(cli: &Cli, preset_name: Option<&str>, params: Option<&Path>) -> Result<(String, VectorialFunction, Certificate), CliError> {
    match (preset_name, params) {
        (Some(name), None) => match preset(name)? {
            Preset::Theorem1(p) => {
                let c = build_theorem1(&p, name, cli.budget_enum)?;
                Ok((name.to_string(), c.function, c.certificate))
            }
            Preset::KurosawaSatoh(c1, c2) => {
                let (f, cert) = kurosawa_satoh(&c1, &c2, name, cli.budget_enum)?;
                Ok((name.to_string(), f, cert))
            }
        },
        (None, Some(path)) => {
            let p = read_params(path)?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "params".into());
            let c = build_theorem1(&p, &name, cli.budget_enum)?;
            Ok((name, c.function, c.certificate))
        }
        _ => Err(CliError::Usage("give exactly one of --preset and --params".into())),
    }
}

fn construct(cli: &Cli, preset_name: Option<&str>, params: Option<&Path>, out: &Path) -> Result<Report, CliError> {
    let (name, f, mut cert) = build(cli, preset_name, params)?;
    // construction records only what the structure gives; `verify` runs the
    // exhaustive checks
    cert.verified = certify(&f, &cert.claimed, 0, cli.budget_enum)?;
    fs::create_dir_all(out)?;
    let base = stem(&name);
    let cert_path = out.join(format!("{base}.cert.json"));
    let table_path = out.join(format!("{base}.bftt"));
    let table_written = match check_budget(f.inputs(), cli.budget_mat) {
        Ok(()) => {
            let tables = f.materialize(cli.budget_mat)?;
            let mut w = BufWriter::new(File::create(&table_path)?);
            write_bftt(&mut w, &tables)?;
            w.flush()?;
            true
        }
        Err(_) => false,
    };
    fs::write(&cert_path, cert.to_json()?)?;

    let json = json!({
        "construction": name,
        "variables": f.inputs(),
        "outputs": f.outputs(),
        "claimed": cert.claimed,
        "verified": cert.verified,
        "audits": cert.audits,
        "certificate": cert_path.display().to_string(),
        "table": table_written.then(|| table_path.display().to_string()),
    });
    let mut text = format!(
        "construction {name}: {} variables, {} outputs\nclaimed {}\n",
        f.inputs(),
        f.outputs(),
        claims_text(&cert.claimed)
    );
    text += &format!("verified {} ({})\n", verified_text(&cert.verified), cert.verified.method);
    for a in &cert.audits {
        text += &format!("audit {}: {}{}\n", a.name, verdict_text(a.verdict), audit_values(a.value, a.required));
    }
    text += &format!("certificate {}\n", cert_path.display());
    if table_written {
        text += &format!("table {}\n", table_path.display());
    } else {
        text += &format!(
            "table not written: 2^{} bits exceed --budget-mat {}\n",
            f.inputs(),
            cli.budget_mat
        );
    }
    Ok(Report::ok(json, text))
}

fn claims_text(c: &Claimed) -> String {
    let show = |x: Option<u32>| x.map_or("-".to_string(), |v| v.to_string());
    format!("l={} k={} t={}", show(c.l), show(c.k), show(c.t))
}

fn verified_text(v: &Verified) -> String {
    let show = |x: Option<i64>| x.map_or("unknown".to_string(), |v| v.to_string());
    format!(
        "l={} k={} t={}",
        show(v.l.map(i64::from)),
        show(v.k.map(i64::from)),
        show(v.t.map(i64::from))
    )
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::Unknown => "unknown",
    }
}

fn audit_values(value: Option<i64>, required: Option<i64>) -> String {
    match (value, required) {
        (Some(v), Some(r)) => format!(" ({v}, need {r})"),
        (None, Some(r)) => format!(" (need {r})"),
        _ => String::new(),
    }
}

fn read_tables(path: &Path) -> Result<Vec<agprop::boolfn::TruthTable>, CliError> {
    let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(read_bftt(BufReader::new(file))?)
}

fn verify(cli: &Cli, input: &Path, cert_path: Option<&Path>, overrides: [Option<u32>; 3]) -> Result<Report, CliError> {
    if cert_path == Some(input) {
        return Err(CliError::Usage("the certificate and the table must be different files".into()));
    }
    let tables = read_tables(input)?;
    let n = tables[0].n();
    check_budget(n, cli.budget_mat)?;
    let cert: Option<Certificate> = match cert_path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Some(serde_json::from_str(&text)?)
        }
        None => None,
    };
    let mut notes = Vec::new();
    if let Some(c) = &cert {
        if c.dimensions.variables != n as usize || c.dimensions.m != tables.len() {
            return Err(CliError::Validation(format!(
                "certificate describes {} variables and {} outputs, table has {n} and {}",
                c.dimensions.variables,
                c.dimensions.m,
                tables.len()
            )));
        }
        if c.conventions_hash != conventions_hash() {
            notes.push("certificate was written under different conventions".to_string());
        }
    }
    let base = cert.as_ref().map(|c| c.claimed).unwrap_or(Claimed { l: None, k: None, t: None });
    let claimed = Claimed {
        l: overrides[0].or(base.l),
        k: overrides[1].or(base.k),
        t: overrides[2].or(base.t),
    };
    let m = tables.len();
    let f = VectorialFunction::from_tables(tables.clone())?;
    let verified = certify(&f, &claimed, cli.budget_mat, cli.budget_enum)?;

    // per combination: resiliency and the exact PC degree at each order
    let top = claimed.k.unwrap_or(0).min(n);
    let mut combos = Vec::new();
    for a in 1..1u64 << m {
        let g = combination(&tables, a);
        let levels: Vec<Option<u32>> = (0..=top).map(|k| max_pc_degree_of_order(&g, k, cli.budget_enum)).collect();
        combos.push((a, resiliency_order(&g), levels));
    }

    let cmp = |claim: Option<u32>, got: Option<i64>| match (claim, got) {
        (None, _) => None,
        (Some(_), None) => Some(Verdict::Unknown),
        (Some(c), Some(g)) => Some(Verdict::from_bool(g >= c as i64)),
    };
    let comparison: Vec<(&str, Verdict)> = [
        ("l", cmp(claimed.l, verified.l.map(i64::from))),
        ("k", cmp(claimed.k, verified.k.map(i64::from))),
        ("t", cmp(claimed.t, verified.t.map(i64::from))),
    ]
    .into_iter()
    .filter_map(|(p, v)| v.map(|v| (p, v)))
    .collect();
    let verdict = comparison.iter().fold(Verdict::Pass, |acc, (_, v)| acc.and(*v));
    let has_claims = !comparison.is_empty();

    let json = json!({
        "variables": n,
        "outputs": m,
        "claimed": claimed,
        "verified": verified,
        "combinations": combos.iter().map(|(a, r, levels)| json!({
            "a": a,
            "resiliency": r,
            "pc_degree_by_order": levels,
        })).collect::<Vec<_>>(),
        "comparison": comparison.iter().map(|(p, v)| json!({"parameter": p, "verdict": v})).collect::<Vec<_>>(),
        "verdict": has_claims.then_some(verdict),
        "notes": notes.iter().chain(&verified.notes).collect::<Vec<_>>(),
    });
    let mut text = format!("{n} variables, {m} outputs\n");
    for (a, r, levels) in &combos {
        let lv: Vec<String> = levels
            .iter()
            .enumerate()
            .map(|(k, l)| format!("k={k}:{}", l.map_or("unknown".into(), |x| x.to_string())))
            .collect();
        text += &format!("combination {a:#b}: resiliency {r}, PC degree {}\n", lv.join(" "));
    }
    text += &format!("verified {}\n", verified_text(&verified));
    if has_claims {
        text += &format!("claimed {}\n", claims_text(&claimed));
        for (p, v) in &comparison {
            text += &format!("{p}: {}\n", verdict_text(*v));
        }
        text += &format!("verdict: {}\n", verdict_text(verdict));
    }
    for note in notes.iter().chain(&verified.notes) {
        text += &format!("note: {note}\n");
    }
    Ok(Report {
        json,
        text,
        exit: if verdict == Verdict::Fail { 2 } else { 0 },
    })
}

fn inspect_field(w: u32, sdb: bool, table: bool) -> Result<Report, CliError> {
    let f = BinaryField::new(w).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut json = json!({
        "w": w,
        "order": f.order(),
        "modulus": format!("{:#b}", f.modulus()),
    });
    let mut text = format!("GF(2^{w}): order {}, modulus {:#b}\n", f.order(), f.modulus());
    if sdb {
        let e = f.self_dual_basis();
        let els = e.elements();
        let gram: Vec<Vec<u32>> = els
            .iter()
            .map(|&a| els.iter().map(|&b| f.trace(f.mul(a, b))).collect())
            .collect();
        json["self_dual_basis"] = json!(els.iter().map(|&a| f.to_hex(a)).collect::<Vec<_>>());
        json["trace_gram"] = json!(gram);
        text += &format!(
            "self-dual basis: {}\n",
            els.iter().map(|&a| f.to_hex(a)).collect::<Vec<_>>().join(" ")
        );
        text += "Tr(e_i e_j):\n";
        for row in &gram {
            text += &format!("  {}\n", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        }
    }
    if table {
        if w > 4 {
            return Err(CliError::Usage("multiplication tables are printed for w <= 4".into()));
        }
        let rows: Vec<Vec<u32>> = f.elements().map(|a| f.elements().map(|b| f.mul(a, b)).collect()).collect();
        text += "multiplication:\n";
        for row in &rows {
            text += &format!("  {}\n", row.iter().map(|&x| f.to_hex(x)).collect::<Vec<_>>().join(" "));
        }
        json["multiplication"] = json!(rows);
    }
    Ok(Report::ok(json, text))
}

fn inspect_curve(name: &str, degree: Option<u32>) -> Result<Report, CliError> {
    let b = backend_by_name(name).map_err(|e| CliError::Usage(e.to_string()))?;
    let rational: Vec<String> = b.rational_places().iter().map(|p| b.place_to_string(p)).collect();
    let quadratic = b.places_of_degree(2).map_err(|e| CliError::Validation(e.to_string()))?;
    let mut json = json!({
        "curve": b.name(),
        "field_degree": b.field().degree(),
        "genus": b.genus(),
        "rational_places": rational,
        "degree_2_places": quadratic.len(),
    });
    let mut text = format!(
        "{}: genus {}, {} rational places, {} places of degree 2\n",
        b.name(),
        b.genus(),
        rational.len(),
        quadratic.len()
    );
    text += &format!("rational: {}\n", rational.join(" "));
    match degree {
        None | Some(1) => {}
        Some(2) => {
            let names: Vec<String> = quadratic.iter().map(|p| b.place_to_string(p)).collect();
            text += &format!("degree 2: {}\n", names.join(" "));
            json["degree_2"] = json!(names);
        }
        Some(d) => return Err(CliError::Usage(format!("places of degree {d} are not listed"))),
    }
    Ok(Report::ok(json, text))
}

fn inspect_code(cli: &Cli, path: &Path, min_distance: bool, dual: bool) -> Result<Report, CliError> {
    let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let c = LinearCode::read_from(BufReader::new(file))?;
    let describe = |c: &LinearCode| -> Result<(Value, String), CliError> {
        let mut j = json!({ "n": c.len(), "k": c.dim(), "w": c.field().degree() });
        let mut t = format!("[{}, {}] over GF(2^{})", c.len(), c.dim(), c.field().degree());
        if min_distance {
            match c.min_distance(cli.budget_enum) {
                Ok(d) => {
                    j["d"] = json!(d);
                    t += &format!(", d = {}", d.map_or("none (zero code)".into(), |d| d.to_string()));
                }
                Err(agprop::codes::CodeError::BudgetExceeded { .. }) => {
                    j["d"] = json!("unknown");
                    t += ", d unknown (over --budget-enum)";
                }
                Err(e) => return Err(e.into()),
            }
        }
        Ok((j, t))
    };
    let (mut json, mut text) = describe(&c)?;
    text.push('\n');
    if dual {
        let (j, t) = describe(&c.dual())?;
        json["dual"] = j;
        text += &format!("dual {t}\n");
    }
    Ok(Report::ok(json, text))
}

fn inspect_anf(cli: &Cli, path: &Path) -> Result<Report, CliError> {
    let tables = read_tables(path)?;
    check_budget(tables[0].n(), cli.budget_mat)?;
    let forms: Vec<String> = tables.iter().map(|t| anf_to_string(&anf(t))).collect();
    let text = forms
        .iter()
        .enumerate()
        .map(|(j, s)| format!("f{} = {s}\n", j + 1))
        .collect();
    Ok(Report::ok(json!({ "variables": tables[0].n(), "anf": forms }), text))
}

fn inspect_preset(cli: &Cli, name: &str) -> Result<Report, CliError> {
    match preset(name)? {
        Preset::Theorem1(p) => {
            let report = validate_params(&p);
            let claimed = claimed_parameters(&p).ok();
            let file = p.to_file();
            let mut text = format!("{name}: {} on {}, m = {}\n", file.curve, file.places.join(" "), p.m());
            for c in &report.checks {
                let status = if c.passed {
                    "pass"
                } else if c.informational {
                    "note"
                } else {
                    "FAIL"
                };
                if c.detail.is_empty() {
                    text += &format!("check {}: {status}\n", c.name);
                } else {
                    text += &format!("check {}: {status} ({})\n", c.name, c.detail);
                }
            }
            if let Some(c) = &claimed {
                text += &format!("claimed {}\n", claims_text(c));
            }
            Ok(Report::ok(
                json!({ "preset": name, "params": file, "validation": report.checks, "claimed": claimed }),
                text,
            ))
        }
        Preset::KurosawaSatoh(c1, c2) => {
            let (f, cert) = kurosawa_satoh(&c1, &c2, name, cli.budget_enum)?;
            let text = format!(
                "{name}: Kurosawa-Satoh from [{}, {}] and [{}, {}] binary codes, {} variables\nclaimed {}\n",
                c1.len(),
                c1.dim(),
                c2.len(),
                c2.dim(),
                f.inputs(),
                claims_text(&cert.claimed)
            );
            Ok(Report::ok(
                json!({ "preset": name, "params": cert.params, "codes": cert.codes, "claimed": cert.claimed }),
                text,
            ))
        }
    }
}
