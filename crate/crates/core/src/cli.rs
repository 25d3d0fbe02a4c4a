//! Command-line front end.
//!
//! Every flag can also be set through an environment variable named
//! `INVCLOSED_<FLAG>` (upper case, dashes as underscores); flags win.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, GaloisField};
use crate::subgroup::{enumerate_subspaces, AdditiveSubgroup, Budget};
use crate::verifier::{self, classify, hua_exhaustive, hua_random_rationals, HuaTally, VerificationReport};
use crate::zp::{is_prime, prime_power};

/// Largest order in the default field list of `verify`.
pub const DEFAULT_VERIFY_LIMIT: u64 = 512;
/// Largest order in the default field list of `hua`.
pub const DEFAULT_HUA_LIMIT: u64 = 128;

#[derive(Parser, Debug)]
#[command(name = "invclosed", version, about = "Inverse-closed additive subgroups of finite fields")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Field as `p^f` or as its order; repeatable.
    #[arg(long = "field", global = true, env = "INVCLOSED_FIELD", value_delimiter = ' ')]
    pub fields: Vec<String>,
    /// Explicit modulus `c0,c1,...,1` for the single given field.
    #[arg(long, global = true, env = "INVCLOSED_MODULUS")]
    pub modulus: Option<String>,
    #[arg(long, global = true, env = "INVCLOSED_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for the subspace sweep; defaults to all cores.
    #[arg(long, global = true, env = "INVCLOSED_WORKERS", value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    #[arg(long, global = true, env = "INVCLOSED_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = "INVCLOSED_MAX_FIELD_SIZE", default_value_t = Budget::default().max_field_size,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_field_size: u64,
    #[arg(long, global = true, env = "INVCLOSED_MAX_SUBSPACES", default_value_t = Budget::default().max_subspaces,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_subspaces: u64,
    /// Output location: a directory of per-field reports for `verify`, a
    /// file for the other commands.
    #[arg(long, global = true, env = "INVCLOSED_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Table => "txt",
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Enumerate every subspace of each field and classify the inverse-closed ones.
    Verify,
    /// Classify one subgroup given by basis rows.
    Classify(BasisArg),
    /// Check Hua's identity exhaustively over fields or on random rationals.
    Hua(HuaArgs),
    /// Show the subspace polynomial of one subgroup and its reciprocal test.
    Poly(BasisArg),
    /// List every subspace (of one dimension, or all), one per line.
    Enumerate(EnumerateArgs),
}

#[derive(Args, Debug, Clone)]
pub struct BasisArg {
    /// Rows separated by `;`, coordinates by `,`; empty for the trivial subgroup.
    #[arg(long, env = "INVCLOSED_BASIS", allow_hyphen_values = true)]
    pub basis: String,
}

#[derive(Args, Debug, Clone)]
pub struct HuaArgs {
    /// Use seeded random rational pairs instead of field elements.
    #[arg(long, env = "INVCLOSED_RATIONALS")]
    pub rationals: bool,
    #[arg(long, env = "INVCLOSED_TRIALS", default_value_t = 10_000)]
    pub trials: u64,
    /// Scan all pairs of each field (the default for fields).
    #[arg(long, conflicts_with = "rationals")]
    pub exhaustive: bool,
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    #[arg(long, env = "INVCLOSED_DIM")]
    pub dim: Option<usize>,
}

/// Result of one invocation: text for stdout and whether every check passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
    /// Set when checks ran but failed; goes to stderr as the error object.
    pub failure: Option<Value>,
}

/// Parses `p^f` or a prime power `q`.
pub fn parse_field(s: &str) -> Result<(u32, u32)> {
    let s = s.trim();
    let bad = || Error::Parse(format!("field {s:?} is not p^f or a prime power"));
    if let Some((p, f)) = s.split_once('^') {
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let f: u32 = f.trim().parse().map_err(|_| bad())?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::ZeroDegree);
        }
        let p32 = u32::try_from(p).map_err(|_| Error::OrderTooLarge { p, f })?;
        return Ok((p32, f));
    }
    let q: u64 = s.parse().map_err(|_| bad())?;
    let (p, f) = prime_power(q).ok_or_else(bad)?;
    let p32 = u32::try_from(p).map_err(|_| Error::OrderTooLarge { p, f })?;
    Ok((p32, f))
}

/// Comma-separated integers, e.g. a modulus or one basis row.
pub fn parse_coeffs(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("{c:?} is not a nonnegative integer")))
        })
        .collect()
}

/// Rows separated by `;`.
pub fn parse_basis(s: &str) -> Result<Vec<Vec<u32>>> {
    s.split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(parse_coeffs)
        .collect()
}

/// Every prime power up to `limit`, ordered by size.
pub fn default_fields(limit: u64) -> Vec<(u32, u32)> {
    (2..=limit)
        .filter_map(prime_power)
        .map(|(p, f)| (p as u32, f))
        .collect()
}

fn budget(opts: &GlobalOpts) -> Budget {
    Budget {
        max_field_size: opts.max_field_size,
        max_subspaces: opts.max_subspaces,
    }
}

fn field_specs(opts: &GlobalOpts, default_limit: Option<u64>) -> Result<Vec<FieldSpec>> {
    let pairs = if opts.fields.is_empty() {
        match default_limit {
            Some(limit) => default_fields(limit),
            None => return Err(Error::Parse("--field is required".into())),
        }
    } else {
        opts.fields.iter().map(|s| parse_field(s)).collect::<Result<Vec<_>>>()?
    };
    match &opts.modulus {
        None => pairs.iter().map(|&(p, f)| crate::field::find_irreducible(p, f)).collect(),
        Some(m) => {
            if pairs.len() != 1 || opts.fields.is_empty() {
                return Err(Error::Parse("--modulus needs exactly one --field".into()));
            }
            let (p, f) = pairs[0];
            Ok(vec![FieldSpec {
                p,
                f,
                modulus: parse_coeffs(m)?,
            }])
        }
    }
}

fn single_field(opts: &GlobalOpts) -> Result<GaloisField> {
    let specs = field_specs(opts, None)?;
    if specs.len() != 1 {
        return Err(Error::Parse("exactly one --field is required".into()));
    }
    GaloisField::new(specs.into_iter().next().expect("one spec"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn field_name(spec: &FieldSpec) -> String {
    if spec.f == 1 {
        format!("GF({})", spec.p)
    } else {
        format!("GF({}^{})", spec.p, spec.f)
    }
}

fn basis_text(basis: &[Vec<u32>]) -> String {
    basis
        .iter()
        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_output(opts: &GlobalOpts, text: String) -> Result<String> {
    match &opts.out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

const CSV_HEADER: &str = "p,f,dim,kind,r,basis\n";

fn verify_csv_rows(report: &VerificationReport) -> String {
    let mut s = String::new();
    for c in &report.inverse_closed {
        writeln!(
            s,
            "{},{},{},{},{},{}",
            report.p,
            report.f,
            c.dim,
            c.kind,
            c.r,
            csv_quote(&basis_text(&c.basis))
        )
        .expect("string write");
    }
    s
}

fn verify_table(report: &VerificationReport) -> String {
    let mut s = String::new();
    let spec = report.spec();
    writeln!(
        s,
        "{} modulus {:?}: {} subspaces, {} non-trivial inverse-closed (predicted {}), {} violations",
        field_name(&spec),
        report.modulus,
        report.subspaces_scanned,
        report.found,
        report.predicted,
        report.violations.len()
    )
    .expect("string write");
    for c in &report.inverse_closed {
        let kind = if c.r > 0 { format!("{}({})", c.kind, c.r) } else { c.kind.to_string() };
        writeln!(s, "  dim {:<3} {:<20} [{}]", c.dim, kind, basis_text(&c.basis)).expect("string write");
    }
    for v in &report.violations {
        writeln!(s, "  VIOLATION {}: {}", v.kind, v.detail).expect("string write");
    }
    s
}

fn render_reports(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => to_json(&reports),
        Format::Csv => {
            let mut s = CSV_HEADER.to_string();
            for r in reports {
                s.push_str(&verify_csv_rows(r));
            }
            s
        }
        Format::Table => reports.iter().map(verify_table).collect(),
    }
}

fn cmd_verify(opts: &GlobalOpts, pool: &rayon::ThreadPool, log: &mut dyn Write) -> Result<Outcome> {
    let b = budget(opts);
    let specs = field_specs(opts, Some(DEFAULT_VERIFY_LIMIT))?;
    let mut reports = Vec::with_capacity(specs.len());
    for spec in specs {
        let field = GaloisField::new(spec)?;
        let report = pool.install(|| verifier::verify_theorem_finite(&field, &b))?;
        // timing goes to stderr only, so that reports stay reproducible
        let _ = writeln!(
            log,
            "{}: {} subspaces, found {} / predicted {}, {:.3}s",
            field_name(field.spec()),
            report.subspaces_scanned,
            report.found,
            report.predicted,
            report.wall_time.as_secs_f64()
        );
        reports.push(report);
    }
    let failing: Vec<Value> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| json!({"p": r.p, "f": r.f, "violations": r.violations}))
        .collect();
    let stdout = match &opts.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("cannot create {}: {e}", dir.display())))?;
            for r in &reports {
                let path = dir.join(format!("gf_{}_{}.{}", r.p, r.f, opts.format.extension()));
                write_file(&path, &render_reports(std::slice::from_ref(r), opts.format))?;
            }
            let mut s = String::new();
            for r in &reports {
                writeln!(
                    s,
                    "{} found={} predicted={} violations={}",
                    field_name(&r.spec()),
                    r.found,
                    r.predicted,
                    r.violations.len()
                )
                .expect("string write");
            }
            s
        }
        None => render_reports(&reports, opts.format),
    };
    let passed = failing.is_empty();
    Ok(Outcome {
        stdout,
        passed,
        failure: (!passed).then(|| {
            json!({"error": "verification_failed", "message": "census mismatch or oracle disagreement", "fields": failing})
        }),
    })
}

fn subgroup_json(a: &AdditiveSubgroup<'_>, b: &Budget) -> Result<Value> {
    let fa = a.subspace_polynomial(b)?;
    let dense = fa.to_dense();
    Ok(json!({
        "field": a.field().spec(),
        "subgroup": a,
        "subspace_polynomial": {
            "text": dense.to_string(),
            "linearized": fa,
            "dense": dense,
        },
    }))
}

fn cmd_classify(opts: &GlobalOpts, basis: &str) -> Result<Outcome> {
    let b = budget(opts);
    let field = single_field(opts)?;
    let a = AdditiveSubgroup::from_rows(&field, &parse_basis(basis)?)?;
    let kind = classify(&a, &b)?;
    let mut v = subgroup_json(&a, &b)?;
    v["kind"] = json!(kind.name());
    v["r"] = json!(kind.r());
    let text = match opts.format {
        Format::Json => to_json(&v),
        Format::Csv => format!(
            "{CSV_HEADER}{},{},{},{},{},{}\n",
            field.p(),
            field.f(),
            a.dim(),
            kind.name(),
            kind.r(),
            csv_quote(&basis_text(&a.basis()))
        ),
        Format::Table => format!(
            "{} modulus {:?}\nsubgroup  dim {} [{}]\nkind      {kind}\nf_A       {}\n",
            field_name(field.spec()),
            field.modulus(),
            a.dim(),
            basis_text(&a.basis()),
            v["subspace_polynomial"]["text"].as_str().unwrap_or_default()
        ),
    };
    Ok(Outcome {
        stdout: write_output(opts, text)?,
        passed: true,
        failure: None,
    })
}

fn cmd_poly(opts: &GlobalOpts, basis: &str) -> Result<Outcome> {
    let b = budget(opts);
    let field = single_field(opts)?;
    let a = AdditiveSubgroup::from_rows(&field, &parse_basis(basis)?)?;
    let dense = a.subspace_polynomial(&b)?.to_dense();
    let quotient = dense.divide_by_x()?;
    let reciprocal = quotient.reciprocal()?;
    let self_reciprocal = quotient.is_self_reciprocal()?;
    let mut v = subgroup_json(&a, &b)?;
    v["quotient"] = json!({"text": quotient.to_string(), "dense": quotient});
    v["reciprocal"] = json!({"text": reciprocal.to_string(), "dense": reciprocal});
    v["self_reciprocal"] = json!(self_reciprocal);
    let text = match opts.format {
        Format::Json => to_json(&v),
        Format::Csv => format!(
            "f_A,f_A/x,reciprocal,self_reciprocal\n{},{},{},{self_reciprocal}\n",
            csv_quote(&dense.to_string()),
            csv_quote(&quotient.to_string()),
            csv_quote(&reciprocal.to_string())
        ),
        Format::Table => format!(
            "f_A             {dense}\nf_A/x           {quotient}\nreciprocal      {reciprocal}\nself-reciprocal {self_reciprocal}\n"
        ),
    };
    Ok(Outcome {
        stdout: write_output(opts, text)?,
        passed: true,
        failure: None,
    })
}

#[derive(Serialize)]
struct HuaSummary {
    target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(flatten)]
    tally: HuaTally,
}

fn cmd_hua(opts: &GlobalOpts, args: &HuaArgs) -> Result<Outcome> {
    let mut summaries = Vec::new();
    if args.rationals {
        summaries.push(HuaSummary {
            target: "rationals".into(),
            seed: Some(opts.seed),
            tally: hua_random_rationals(args.trials, opts.seed),
        });
    } else {
        let b = budget(opts);
        for spec in field_specs(opts, Some(DEFAULT_HUA_LIMIT))? {
            let field = GaloisField::new(spec)?;
            summaries.push(HuaSummary {
                target: field_name(field.spec()),
                seed: None,
                tally: hua_exhaustive(&field, &b)?,
            });
        }
    }
    let text = match opts.format {
        Format::Json => to_json(&summaries),
        Format::Csv | Format::Table => {
            let sep = if opts.format == Format::Csv { "," } else { "\t" };
            let mut s = ["target", "pairs", "holds", "degenerate", "failures"].join(sep);
            s.push('\n');
            for h in &summaries {
                let t = &h.tally;
                let row = [h.target.clone(), t.pairs.to_string(), t.holds.to_string(), t.degenerate.to_string(), t.failures.to_string()];
                s.push_str(&row.join(sep));
                s.push('\n');
            }
            s
        }
    };
    let failing: Vec<&HuaSummary> = summaries.iter().filter(|h| h.tally.failures > 0).collect();
    let passed = failing.is_empty();
    let failure = (!passed).then(|| {
        json!({"error": "hua_failure", "message": "identity failed on non-degenerate pairs", "targets": failing})
    });
    Ok(Outcome {
        stdout: write_output(opts, text)?,
        passed,
        failure,
    })
}

fn cmd_enumerate(opts: &GlobalOpts, dim: Option<usize>) -> Result<Outcome> {
    let b = budget(opts);
    let field = single_field(opts)?;
    let f = field.f() as usize;
    let dims = match dim {
        Some(d) if d > f => return Err(Error::Precondition(format!("dimension {d} exceeds degree {f}"))),
        Some(d) => d..=d,
        None => 0..=f,
    };
    let mut text = match opts.format {
        Format::Json => String::new(),
        Format::Csv => "dim,basis\n".to_string(),
        Format::Table => String::new(),
    };
    for d in dims {
        for a in enumerate_subspaces(&field, d, &b)? {
            match opts.format {
                Format::Json => {
                    text.push_str(&serde_json::to_string(&a).expect("serializable"));
                    text.push('\n');
                }
                Format::Csv => writeln!(text, "{},{}", a.dim(), csv_quote(&basis_text(&a.basis()))).expect("string write"),
                Format::Table => writeln!(text, "dim {:<3} [{}]", a.dim(), basis_text(&a.basis())).expect("string write"),
            }
        }
    }
    Ok(Outcome {
        stdout: write_output(opts, text)?,
        passed: true,
        failure: None,
    })
}

/// Runs an already-parsed command; the sweep uses a pool of `--workers`
/// threads.
/// Progress lines go to `log`.
pub fn execute(cli: &Cli, log: &mut dyn Write) -> Result<Outcome> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.opts.workers {
        pool = pool.num_threads(w as usize);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    let opts = &cli.opts;
    match &cli.command {
        Command::Verify => cmd_verify(opts, &pool, log),
        Command::Classify(a) => cmd_classify(opts, &a.basis),
        Command::Poly(a) => cmd_poly(opts, &a.basis),
        Command::Hua(h) => cmd_hua(opts, h),
        Command::Enumerate(e) => cmd_enumerate(opts, e.dim),
    }
}

/// Machine-readable error object for stderr.
pub fn error_object(kind: &str, message: &str) -> Value {
    json!({"error": kind, "message": message})
}

/// Full entry point: parse `args`, run, print, and return the exit code.
/// Exit 0 means every check passed, 1 a failed check, 2 a usage, input or
/// budget error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let _ = writeln!(stderr, "{}", error_object("usage", msg.trim()));
            return 2;
        }
    };
    match execute(&cli, stderr) {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            if let Some(f) = outcome.failure {
                let _ = writeln!(stderr, "{f}");
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_object(e.kind(), &e.to_string()));
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_syntax() {
        assert_eq!(parse_field("3^2").unwrap(), (3, 2));
        assert_eq!(parse_field("9").unwrap(), (3, 2));
        assert_eq!(parse_field("512").unwrap(), (2, 9));
        assert_eq!(parse_field("7").unwrap(), (7, 1));
        assert!(matches!(parse_field("6"), Err(Error::Parse(_))));
        assert!(matches!(parse_field("4^2"), Err(Error::NotPrime(4))));
        assert!(matches!(parse_field("3^0"), Err(Error::ZeroDegree)));
        assert!(parse_field("x").is_err());
    }

    #[test]
    fn basis_syntax() {
        assert_eq!(parse_basis("1,0;0,1").unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(parse_basis("").unwrap(), Vec::<Vec<u32>>::new());
        assert!(parse_basis("1,a").is_err());
    }

    #[test]
    fn default_field_list() {
        let fields = default_fields(512);
        assert_eq!(fields.iter().filter(|(_, f)| *f > 1).count(), 20);
        assert_eq!(fields.iter().filter(|(_, f)| *f == 1).count(), 97);
        assert_eq!(fields.last(), Some(&(2, 9)));
    }
}
