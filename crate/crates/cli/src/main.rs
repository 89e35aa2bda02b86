//! `cgsig`: command-line access to the signature and obstruction engines.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};

use cgsig_core::exact_algebra::{group_from_presentation, is_prime, AlgebraError, IntMatrix};
use cgsig_core::gilmer::{
    check_certificate, certificate_problems, prove_genus_exceeds, GenusCertificate, GilmerError,
    ObstructionInstance, Outcome, ProveOptions,
};
use cgsig_core::json::format_rational;
use cgsig_core::knot_model::{
    build_family_with, knot_sum_from_json, preset_seifert, torus_2_5, FamilySpec, HopfSurgery, KnotError,
    KnotSum, SeifertMatrix,
};
use cgsig_core::reproduce::{
    analytic_lower_bound, figure_eight_report, independence_report, family_report, FigureEightParams, Report,
    VerifyError,
};
use cgsig_core::signatures::{cf_hopf_signature, character_table, tristram_levine, SignatureError};

#[derive(Parser)]
#[command(name = "cgsig", version, about = "Casson-Gordon and Tristram-Levine signatures, 4-genus obstructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tristram-Levine signature of #^m J at exp(2πik/q).
    TlSig(TlSigArgs),
    /// Invariant factors of the group presented by an integer matrix.
    CoverHomology(CoverArgs),
    /// Casson-Gordon signature of surgery on a Hopf link.
    CfSig(CfArgs),
    /// Every character's signature estimate for a knot sum.
    CgTable(CgTableArgs),
    /// Try to certify g4(K) > g.
    GilmerCheck(GilmerArgs),
    /// Re-validate a certificate produced by gilmer-check.
    CheckCert(CheckCertArgs),
    /// Run the reproduction suites.
    #[command(visible_alias = "paper-verify")]
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct TlSigArgs {
    /// figure-eight, torus-2-5, unknot or two-bridge:<a>
    #[arg(long, conflicts_with = "knot", required_unless_present = "knot")]
    preset: Option<String>,
    /// Seifert matrix as a JSON array of rows (inline or a file path)
    #[arg(long)]
    knot: Option<String>,
    #[arg(long)]
    q: u64,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long, default_value = "1")]
    multiplicity: String,
}

#[derive(Args)]
struct CoverArgs {
    /// Relation matrix as a JSON array of rows (inline or a file path)
    #[arg(long)]
    matrix: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CfArgs {
    #[arg(short = 'a')]
    a: i64,
    #[arg(short = 'b')]
    b: i64,
    #[arg(short = 'q')]
    q: u64,
    #[arg(long)]
    n1: i64,
    #[arg(long)]
    n2: i64,
}

#[derive(Args, Clone)]
struct KnotSource {
    /// Knot sum JSON (inline or a file path)
    #[arg(long, conflicts_with_all = ["family_g", "family_k"])]
    knot: Option<String>,
    /// Family genus g (builds the sum of K^k over --family-k)
    #[arg(long)]
    family_g: Option<u32>,
    /// Comma-separated strictly increasing family indices
    #[arg(long, value_delimiter = ',')]
    family_k: Vec<u64>,
    /// Replace every companion by the unknot
    #[arg(long)]
    unknot_companions: bool,
}

#[derive(Args)]
struct CgTableArgs {
    #[command(flatten)]
    source: KnotSource,
    #[arg(long, default_value_t = 5)]
    q: u32,
}

#[derive(Args)]
struct GilmerArgs {
    #[command(flatten)]
    source: KnotSource,
    /// Genus to beat; defaults to the family genus
    #[arg(long)]
    genus: Option<u32>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the certificate JSON here
    #[arg(long)]
    emit_cert: Option<String>,
    #[arg(long, default_value_t = ProveOptions::default().max_sweep)]
    max_sweep: u64,
}

#[derive(Args)]
struct CheckCertArgs {
    /// Certificate JSON (inline or a file path)
    cert: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Section {
    #[value(alias = "example2")]
    FigureEight,
    #[value(alias = "proposition")]
    Family,
    Independence,
    All,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ReproduceArgs {
    #[arg(long, value_enum, default_value = "all")]
    section: Section,
    #[arg(long, default_value_t = 1)]
    g: u32,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    k: Vec<u64>,
    /// Surgery framings for the figure-eight check
    #[arg(short = 'a', default_value_t = -2)]
    a: i64,
    #[arg(short = 'b', default_value_t = 2)]
    b: i64,
    #[arg(short = 'q', default_value_t = 5)]
    q: u64,
    /// Write the machine-readable report here
    #[arg(long)]
    json: Option<String>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Append wall-clock timings to the human-readable report
    #[arg(long)]
    meta: bool,
}

enum CliError {
    Failure(String),
    Parse(String),
    Precondition(String),
    Unsupported(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Unsupported(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Failure(m) | CliError::Parse(m) | CliError::Precondition(m) | CliError::Unsupported(m) => m,
        }
    }
}

impl From<KnotError> for CliError {
    fn from(e: KnotError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<SignatureError> for CliError {
    fn from(e: SignatureError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<GilmerError> for CliError {
    fn from(e: GilmerError) -> Self {
        match e {
            GilmerError::UnsupportedGroup(_) | GilmerError::UnsupportedModulus(_) | GilmerError::TooLarge { .. } => {
                CliError::Unsupported(e.to_string())
            }
            GilmerError::MalformedCertificate(_) => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Mismatch { .. } => CliError::Failure(e.to_string()),
            VerifyError::Gilmer(g) => g.into(),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

/// Inline JSON when the argument starts with `[` or `{`, otherwise a path.
fn read_source(arg: &str) -> Result<String, CliError> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| CliError::Parse(format!("cannot read {arg}: {e}")))
}

fn parse_matrix(text: &str) -> Result<IntMatrix, CliError> {
    let rows: Vec<Vec<serde_json::Value>> =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("matrix: {e}")))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| {
                    let s = match v {
                        serde_json::Value::Number(n) => n.to_string(),
                        serde_json::Value::String(s) => s.clone(),
                        _ => return Err(CliError::Parse("matrix entries must be integers".into())),
                    };
                    s.parse::<BigInt>()
                        .map_err(|_| CliError::Parse(format!("not an integer: {s}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    IntMatrix::from_rows(&rows).map_err(|e| CliError::Parse(e.to_string()))
}

fn load_knot(src: &KnotSource) -> Result<(KnotSum, Option<u32>), CliError> {
    let companion = if src.unknot_companions {
        SeifertMatrix::unknot()
    } else {
        torus_2_5()
    };
    match (&src.knot, src.family_g) {
        (Some(k), _) => {
            let text = read_source(k)?;
            let sum = knot_sum_from_json(&text).map_err(|e| CliError::Parse(format!("knot: {e}")))?;
            Ok((if src.unknot_companions { strip_companions(&sum)? } else { sum }, None))
        }
        (None, Some(g)) => {
            let ks = if src.family_k.is_empty() { vec![0] } else { src.family_k.clone() };
            let spec = FamilySpec::new(g, ks)?;
            Ok((build_family_with(&spec, &companion)?, Some(g)))
        }
        (None, None) => Err(CliError::Parse("give --knot or --family-g".into())),
    }
}

fn strip_companions(sum: &KnotSum) -> Result<KnotSum, CliError> {
    let text = serde_json::to_string(sum).expect("knot serializes");
    let mut v: serde_json::Value = serde_json::from_str(&text).expect("round trip");
    for s in v.as_array_mut().expect("array") {
        for inf in s["infections"].as_array_mut().expect("infections") {
            inf["companion_seifert"] = serde_json::json!([]);
        }
    }
    knot_sum_from_json(&v.to_string()).map_err(|e| CliError::Parse(e.to_string()))
}

fn cmd_tl_sig(a: &TlSigArgs) -> Result<String, CliError> {
    let seifert = match (&a.preset, &a.knot) {
        (Some(p), _) => preset_seifert(p).map_err(|e| CliError::Parse(e.to_string()))?,
        (None, Some(k)) => SeifertMatrix::new(parse_matrix(&read_source(k)?)?)?,
        (None, None) => unreachable!("clap enforces a source"),
    };
    if !is_prime(a.q) {
        return Err(CliError::Precondition(format!("q = {} is not prime", a.q)));
    }
    let m: BigUint = a
        .multiplicity
        .parse()
        .map_err(|_| CliError::Parse(format!("bad multiplicity {:?}", a.multiplicity)))?;
    Ok(format!("{}\n", tristram_levine(&seifert, &m, a.q, a.k)?))
}

fn cmd_cover(a: &CoverArgs) -> Result<String, CliError> {
    let m = parse_matrix(&read_source(&a.matrix)?)?;
    let pres = group_from_presentation(&m)?;
    let factors: Vec<String> = pres.group.invariant_factors().iter().map(|d| d.to_string()).collect();
    let images: Vec<Vec<String>> = pres
        .generator_images
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    // on a cyclic group generated by e1, express every generator as a multiple of e1
    let multiples: Option<Vec<BigInt>> = cyclic_multiples(pres.group.invariant_factors(), &pres.generator_images);
    if a.json {
        let v = serde_json::json!({
            "invariant_factors": factors,
            "order": pres.group.order().to_string(),
            "generator_images": images,
            "multiples_of_first_generator": multiples.as_ref().map(|m| m.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        });
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v).expect("json")));
    }
    let mut out = format!("group: {}\norder: {}\n", pres.group, pres.group.order());
    for (j, r) in images.iter().enumerate() {
        out.push_str(&format!("e{} -> ({})\n", j + 1, r.join(", ")));
    }
    if let Some(ms) = multiples {
        for (j, m) in ms.iter().enumerate().skip(1) {
            out.push_str(&format!("[e{}] = {}[e1]\n", j + 1, m));
        }
    }
    Ok(out)
}

fn cyclic_multiples(factors: &[BigInt], images: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    use num_integer::Integer;
    if factors.len() != 1 || images.is_empty() {
        return None;
    }
    let d = &factors[0];
    let g = &images[0][0];
    let e = g.extended_gcd(d);
    if e.gcd != BigInt::from(1) {
        return None;
    }
    Some(images.iter().map(|r| (&r[0] * &e.x).mod_floor(d)).collect())
}

fn cmd_cf(a: &CfArgs) -> Result<String, CliError> {
    let surgery = HopfSurgery::new(a.a, a.b)?;
    let s = cf_hopf_signature(&surgery, a.q, a.n1, a.n2)?;
    Ok(format!("{}\n", format_rational(&s)))
}

fn cmd_cg_table(a: &CgTableArgs) -> Result<String, CliError> {
    let (knot, _) = load_knot(&a.source)?;
    let table = character_table(&knot, a.q)?;
    Ok(format!("{}\n", serde_json::to_string_pretty(&table).expect("json")))
}

fn cmd_gilmer(a: &GilmerArgs) -> Result<String, CliError> {
    let (knot, family_g) = load_knot(&a.source)?;
    let genus = a
        .genus
        .or(family_g)
        .ok_or_else(|| CliError::Parse("--genus is required with --knot".into()))?;
    let inst = ObstructionInstance::new(knot, genus)?;
    let opts = ProveOptions {
        jobs: a.jobs,
        max_sweep: a.max_sweep,
    };
    match prove_genus_exceeds(&inst, &opts)? {
        Outcome::Proved(cert) => {
            if let Some(path) = &a.emit_cert {
                fs::write(path, cert.to_json() + "\n")
                    .map_err(|e| CliError::Precondition(format!("cannot write {path}: {e}")))?;
            }
            let mut out = format!("PROVED g4 > {genus}\n");
            match &cert.universal {
                Some(u) => out.push_str(&format!(
                    "every one of {} nonzero characters is a witness; min bound {}\n",
                    u.characters_checked,
                    format_rational(&u.min_bound)
                )),
                None => out.push_str(&format!(
                    "{} subspaces, min witness bound {}\n",
                    cert.records.len(),
                    cert.min_bound().map(|b| format_rational(&b)).unwrap_or_default()
                )),
            }
            Ok(out)
        }
        Outcome::Inconclusive { subspace } => Err(CliError::Failure(format!(
            "INCONCLUSIVE at subspace {:?}",
            subspace.basis()
        ))),
    }
}

fn cmd_check_cert(a: &CheckCertArgs) -> Result<String, CliError> {
    let cert = GenusCertificate::from_json(&read_source(&a.cert)?)?;
    let problems = certificate_problems(&cert)?;
    debug_assert_eq!(problems.is_empty(), check_certificate(&cert)?);
    if problems.is_empty() {
        return Ok(format!("VALID g4 > {}\n", cert.genus));
    }
    let mut msg = String::from("INVALID");
    for p in problems {
        msg.push_str(&format!("\n  {p}"));
    }
    Err(CliError::Failure(msg))
}

fn cmd_reproduce(a: &ReproduceArgs) -> Result<String, CliError> {
    let opts = ProveOptions {
        jobs: a.jobs,
        ..Default::default()
    };
    let mut reports: Vec<Report> = Vec::new();
    let mut timings: Vec<(String, f64)> = Vec::new();
    let want = |s: Section| a.section == s || a.section == Section::All;
    if want(Section::FigureEight) {
        let t = Instant::now();
        let params = FigureEightParams {
            surgery: HopfSurgery::new(a.a, a.b)?,
            q: a.q,
        };
        reports.push(figure_eight_report(&params)?);
        timings.push(("figure-eight".into(), t.elapsed().as_secs_f64()));
    }
    let mut analytic = Vec::new();
    if want(Section::Family) {
        let t = Instant::now();
        reports.push(family_report(a.g, &a.k, &opts)?);
        for ell in 2 * a.g + 3..=2 * a.g + 8 {
            analytic.push(analytic_lower_bound(a.g, ell)?);
        }
        timings.push(("family".into(), t.elapsed().as_secs_f64()));
    }
    if want(Section::Independence) {
        let t = Instant::now();
        reports.push(independence_report(1, &[0, 1], &opts)?);
        timings.push(("independence".into(), t.elapsed().as_secs_f64()));
    }
    let mut out = String::new();
    for r in &reports {
        out.push_str(&r.render());
    }
    if !analytic.is_empty() {
        out.push_str("== analytic bound ==\n");
        for r in &analytic {
            out.push_str(&format!(
                "g={} l={}: (*) = {} > {} > {} > {} > {} (printed closed form {})\n",
                r.g,
                r.ell,
                r.star,
                format_rational(&r.relaxed),
                r.power_gap,
                r.two_ell,
                r.four_g_plus_four,
                format_rational(&r.closed_form_printed)
            ));
        }
    }
    let passed: usize = reports.iter().map(Report::passed).sum();
    let total: usize = reports.iter().map(|r| r.assertions.len()).sum();
    out.push_str(&format!("TOTAL {passed}/{total} assertions pass\n"));
    if a.meta {
        for (s, secs) in &timings {
            out.push_str(&format!("# {s}: {secs:.3}s\n"));
        }
    }
    if let Some(path) = &a.json {
        let v = serde_json::json!({ "reports": reports, "analytic": analytic });
        fs::write(path, serde_json::to_string_pretty(&v).expect("json") + "\n")
            .map_err(|e| CliError::Precondition(format!("cannot write {path}: {e}")))?;
    }
    if passed == total {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::Failure(format!("{} assertion(s) failed", total - passed)))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::TlSig(a) => cmd_tl_sig(a),
        Command::CoverHomology(a) => cmd_cover(a),
        Command::CfSig(a) => cmd_cf(a),
        Command::CgTable(a) => cmd_cg_table(a),
        Command::GilmerCheck(a) => cmd_gilmer(a),
        Command::CheckCert(a) => cmd_check_cert(a),
        Command::Reproduce(a) => cmd_reproduce(a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Failure(m) => println!("{m}"),
                other => eprintln!("error: {}", other.message()),
            }
            ExitCode::from(e.code())
        }
    }
}
