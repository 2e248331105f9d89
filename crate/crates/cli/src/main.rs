//! Command-line front end for the `twistclass` library.
//!
//! Every command prints a human-readable report by default and a
//! machine-readable JSON document with `--json`; `--out FILE` additionally
//! writes the JSON document to a file.  Exit codes: `0` on success, `1` on
//! usage errors (bad syntax, invalid partitions, exceeded enumeration
//! bounds), `2` when an exhaustive check falsifies a property the library
//! asserts, and `2` when `verify-all` runs out of budget before every
//! suite has finished.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twistclass::classmaps::{
    exceptional_phi_table, exceptional_table_checksum, length_dimension_identity,
    phi_char2_elliptic, phi_prime, pinned_table_checksum, psi_prime, ExceptionalCase,
};
use twistclass::field::Field;
use twistclass::matrix::{Mat, Subspace};
use twistclass::oracle::{elliptic_shapes, enumerate_classes, sigma_for_w, verify_theorem};
use twistclass::semilinear::{class_invariant, jordan_type, standard_g};
use twistclass::varieties::{count_dl, enumerate_x_g};
use twistclass::verify::{suite_names, suites, CriterionReport};
use twistclass::weyl::{mu_of_class, z_perm, z_perm_degree, z_perm_twist_cycles, TwistedClassLabel};
use twistclass::{Bounds, Error, Partition, Perm, Result};

#[derive(Parser)]
#[command(
    name = "twistclass",
    version,
    about = "Exact maps from twisted symmetric-group classes to bilinear-form \
             classes, with brute-force finite-field verification"
)]
struct Cli {
    /// Print a machine-readable JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the JSON document to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Worker-pool size; defaults to the available parallelism.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Largest matrix-group scan attempted by exhaustive commands.
    #[arg(long, global = true, value_name = "N")]
    max_group: Option<u64>,

    /// Largest flag / line enumeration attempted by exhaustive commands.
    #[arg(long, global = true, value_name = "N")]
    max_flags: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

fn partition_arg(s: &str) -> Result<Partition> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Split every even part 2a of a partition into a,a.
    PhiPrime {
        /// Partition as a comma-separated list, e.g. 5,4,3,3,2,2,1,1.
        #[arg(value_parser = partition_arg)]
        partition: Partition,
    },

    /// Invert the splitting: among all ways of fusing pairs back into
    /// doubled parts, print the unique class with minimal mu.
    PsiPrime {
        /// Partition in the image of phi-prime (even values need even
        /// multiplicity).
        #[arg(value_parser = partition_arg)]
        partition: Partition,
    },

    /// Map a shape p to the decorated partition with parts 2p_r - 1 and
    /// every marking 1.
    PhiElliptic {
        /// Shape as a comma-separated list, e.g. 2,1.
        #[arg(value_parser = partition_arg)]
        partition: Partition,
    },

    /// Tabulate the closed forms for length and dimension over all shapes
    /// up to a given rank and check that every row agrees.
    IdentityCheck {
        /// Largest symmetric-group rank to cover.
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },

    /// Print one of the two frozen exceptional correspondence tables.
    Table {
        /// Which table to print.
        which: WhichTable,
    },

    /// Print the standard element of a shape: its matrix, adjoint,
    /// cosquare, and class invariant.
    StandardModel {
        /// Shape as a comma-separated list.
        #[arg(short = 'p', long = "shape", value_parser = partition_arg)]
        shape: Partition,
        /// Field size (a prime power), e.g. 2, 3, 4, 9.
        #[arg(long, value_name = "SIZE")]
        field: u32,
    },

    /// Count the unitary variety for a shape in the flag, line, and
    /// vector models over a range of field degrees.
    CountDl {
        /// Expected ambient dimension (must equal sum of 2p_r - 1).
        #[arg(short = 'n', long)]
        n: Option<usize>,
        /// Base prime power q of the hermitian structure.
        #[arg(short = 'q', long, default_value_t = 2)]
        q: u32,
        /// Shape as a comma-separated list.
        #[arg(short = 'p', long = "shape", value_parser = partition_arg)]
        shape: Partition,
        /// Degrees m to test; the working field has q^(2m) elements.
        #[arg(short = 'm', long, value_delimiter = ',', default_value = "1,2")]
        m: Vec<u32>,
    },

    /// Enumerate the flags in the distinguished relative position with
    /// their image under the standard element of a shape.
    EnumerateXg {
        /// Shape as a comma-separated list.
        #[arg(short = 'p', long = "shape", value_parser = partition_arg)]
        shape: Partition,
        /// Field size (a prime power).
        #[arg(long, value_name = "SIZE")]
        field: u32,
    },

    /// Print the distinguished minimal-length permutation of a shape.
    ZPerm {
        /// Shape as a comma-separated list.
        #[arg(value_parser = partition_arg)]
        partition: Partition,
        /// Optional rank check: error unless the permutation lives in S_n.
        #[arg(short = 'n', long)]
        n: Option<usize>,
    },

    /// Brute-force commands over whole matrix groups.
    Oracle {
        #[command(subcommand)]
        sub: OracleCommand,
    },

    /// Run the complete verification suite, optionally under a wall-clock
    /// budget.
    VerifyAll {
        /// Abort suites that have not finished after this many seconds and
        /// exit with status 2.
        #[arg(long, value_name = "SECONDS")]
        budget_secs: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichTable {
    /// 25 classes onto 17 targets.
    E6,
    /// 7 classes onto 5 targets.
    D4,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Classes attained by flags in position w with their twisted image,
    /// reported per field degree with the union across degrees.
    Sigma {
        /// Matrix rank n.
        #[arg(short = 'n', long)]
        n: usize,
        /// Field characteristic.
        #[arg(long = "char")]
        char_p: u32,
        /// Twist exponent; only the plain (q = 1) case is implemented.
        #[arg(short = 'q', long, default_value_t = 1)]
        q: u32,
        /// Field degrees m to scan (fields with char^m elements).
        #[arg(short = 'm', long, value_delimiter = ',', default_value = "1,2")]
        m: Vec<u32>,
        /// Position: either `z:PARTITION` for the distinguished element of
        /// a shape, or comma-separated one-based images like `2,1,3`.
        #[arg(short = 'w', long)]
        w: String,
    },

    /// Check that the predicted class is the unique minimum attained by
    /// every elliptic shape of a rank, across field degrees.
    Verify {
        /// Matrix rank n.
        #[arg(short = 'n', long)]
        n: usize,
        /// Field characteristic.
        #[arg(long = "char")]
        char_p: u32,
        /// Field degrees m to scan.
        #[arg(short = 'm', long, value_delimiter = ',', default_value = "1,2")]
        m: Vec<u32>,
    },
}

/// What a command hands back to `main`: the text report, the JSON
/// document, and the exit code.
struct Outcome {
    text: String,
    json: Value,
    code: i32,
}

/// Print a line to stdout, exiting quietly if the consumer closed the pipe.
fn print_stdout(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{s}").and_then(|()| out.flush()).is_err() {
        std::process::exit(0);
    }
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, code: 0 }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Some(threads) = cli.threads {
        // Ignore failure: the global pool can only be configured once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let mut bounds = Bounds::default();
    if let Some(g) = cli.max_group {
        bounds.max_group = g;
    }
    if let Some(fl) = cli.max_flags {
        bounds.max_flags = fl;
    }

    match dispatch(&cli.command, &bounds) {
        Ok(outcome) => {
            if cli.json {
                print_stdout(&serde_json::to_string_pretty(&outcome.json).expect("JSON serializes"));
            } else {
                print_stdout(&outcome.text);
            }
            if let Some(path) = &cli.out {
                let doc =
                    serde_json::to_string_pretty(&outcome.json).expect("JSON serializes");
                if let Err(e) = std::fs::write(path, doc) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(1);
                }
            }
            std::process::exit(outcome.code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::TheoremFalsified(_) => 2,
                _ => 1,
            };
            std::process::exit(code);
        }
    }
}

fn dispatch(command: &Command, bounds: &Bounds) -> Result<Outcome> {
    match command {
        Command::PhiPrime { partition } => phi_prime_cmd(partition, bounds),
        Command::PsiPrime { partition } => psi_prime_cmd(partition, bounds),
        Command::PhiElliptic { partition } => phi_elliptic_cmd(partition, bounds),
        Command::IdentityCheck { max_n } => identity_check_cmd(*max_n),
        Command::Table { which } => table_cmd(*which),
        Command::StandardModel { shape, field } => standard_model_cmd(shape, *field),
        Command::CountDl { n, q, shape, m } => count_dl_cmd(*n, *q, shape, m, bounds),
        Command::EnumerateXg { shape, field } => enumerate_xg_cmd(shape, *field, bounds),
        Command::ZPerm { partition, n } => z_perm_cmd(partition, *n),
        Command::Oracle { sub } => match sub {
            OracleCommand::Sigma { n, char_p, q, m, w } => {
                oracle_sigma_cmd(*n, *char_p, *q, m, w, bounds)
            }
            OracleCommand::Verify { n, char_p, m } => {
                oracle_verify_cmd(*n, *char_p, m, bounds)
            }
        },
        Command::VerifyAll { budget_secs } => {
            Ok(verify_all_cmd(bounds, budget_secs.map(Duration::from_secs)))
        }
    }
}

/// Factor a prime power `size = p^m`; error for 0, 1, and mixed numbers.
fn factor_prime_power(size: u32) -> Result<(u32, u32)> {
    if size < 2 {
        return Err(Error::UnsupportedField(format!(
            "{size} is not a prime power"
        )));
    }
    let mut p = 2;
    while p * p <= size && !size.is_multiple_of(p) {
        p += 1;
    }
    if !size.is_multiple_of(p) {
        p = size; // size itself is prime
    }
    let mut m = 0;
    let mut rest = size;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::UnsupportedField(format!(
            "{size} is not a prime power"
        )));
    }
    Ok((p, m))
}

/// `mu` of the twisted class labeled by `label`, when the rank is within
/// the exhaustive range; `null` otherwise.
fn mu_value(label: &TwistedClassLabel, bounds: &Bounds) -> Value {
    let n = label.0.total() as usize;
    match mu_of_class(label, n, bounds) {
        Ok(mu) => json!(mu),
        Err(_) => Value::Null,
    }
}

fn phi_prime_cmd(lambda: &Partition, bounds: &Bounds) -> Result<Outcome> {
    let gamma = phi_prime(lambda);
    let mu = mu_value(&TwistedClassLabel(lambda.clone()), bounds);
    Ok(Outcome::ok(
        gamma.to_string(),
        json!({
            "command": "phi-prime",
            "input": lambda.to_string(),
            "output": gamma.to_string(),
            "mu": mu,
        }),
    ))
}

fn psi_prime_cmd(gamma: &Partition, bounds: &Bounds) -> Result<Outcome> {
    let (label, mu) = psi_prime(gamma, bounds)?;
    Ok(Outcome::ok(
        format!("{label} (mu = {mu})"),
        json!({
            "command": "psi-prime",
            "input": gamma.to_string(),
            "output": label.to_string(),
            "mu": mu,
        }),
    ))
}

fn phi_elliptic_cmd(p: &Partition, bounds: &Bounds) -> Result<Outcome> {
    let decorated = phi_char2_elliptic(p)?;
    let mu = mu_value(&TwistedClassLabel(decorated.jordan_type().clone()), bounds);
    Ok(Outcome::ok(
        decorated.to_string(),
        json!({
            "command": "phi-elliptic",
            "input": p.to_string(),
            "output": decorated.to_string(),
            "mu": mu,
        }),
    ))
}

fn identity_check_cmd(max_n: usize) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut text = format!("{:<16} {:>4} {:>8} {:>10}\n", "shape", "n", "length", "dimension");
    for n in 1..=max_n {
        for p in elliptic_shapes(n) {
            let ld = length_dimension_identity(&p)?;
            let inversions = z_perm(&p).length();
            if inversions != ld.ell {
                return Err(Error::TheoremFalsified(format!(
                    "z_{p} has {inversions} inversions but the closed form gives {}",
                    ld.ell
                )));
            }
            let _ = writeln!(text, "{:<16} {:>4} {:>8} {:>10}", p.to_string(), n, ld.ell, ld.dim);
            rows.push(json!({
                "shape": p.to_string(),
                "n": n,
                "length": ld.ell,
                "dimension": ld.dim,
            }));
        }
    }
    let _ = write!(text, "all {} rows agree", rows.len());
    Ok(Outcome::ok(
        text,
        json!({
            "command": "identity-check",
            "input": { "max_n": max_n },
            "output": { "rows": rows, "all_agree": true },
        }),
    ))
}

fn table_cmd(which: WhichTable) -> Result<Outcome> {
    let (case, name) = match which {
        WhichTable::E6 => (ExceptionalCase::E6P2, "e6"),
        WhichTable::D4 => (ExceptionalCase::D4P3, "d4"),
    };
    let computed = exceptional_table_checksum(case);
    let pinned = pinned_table_checksum(case);
    if computed != pinned {
        return Err(Error::TheoremFalsified(format!(
            "table {name} checksum drift: computed {computed}, pinned {pinned}"
        )));
    }
    let entries = exceptional_phi_table(case);
    let mut text = String::new();
    for e in entries {
        let _ = writeln!(
            text,
            "{:<12} -> {:<8}{}",
            e.source,
            e.target,
            if e.distinguished { "  [dist]" } else { "" }
        );
    }
    let _ = write!(text, "sha256 = {computed}");
    Ok(Outcome::ok(
        text,
        json!({
            "command": "table",
            "input": name,
            "output": {
                "entries": serde_json::to_value(entries).expect("entries serialize"),
                "sha256": computed,
            },
        }),
    ))
}

/// Row-major integer entries of a matrix, for the JSON document.
fn mat_entries(m: &Mat) -> Vec<u32> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.push(u32::from(m.get(r, c)));
        }
    }
    out
}

fn standard_model_cmd(shape: &Partition, field: u32) -> Result<Outcome> {
    let (p, m) = factor_prime_power(field)?;
    let f = Field::new(p, m)?;
    let g = standard_g(shape, &f);
    let adjoint = g.adjoint();
    let cosquare = g.cosquare();
    let jordan = jordan_type(cosquare.matrix(), &f)?;
    let invariant = if p == 2 {
        Some(class_invariant(&g)?)
    } else {
        None
    };

    let mut text = format!("field {}\ng =\n{}\n", f.header(), g.matrix());
    let _ = write!(text, "adjoint =\n{}\n", adjoint.matrix());
    let _ = write!(text, "cosquare =\n{}\n", cosquare.matrix());
    let _ = write!(text, "jordan type = {jordan}");
    if let Some(inv) = &invariant {
        let _ = write!(text, "\ninvariant = {inv}");
    }
    Ok(Outcome::ok(
        text,
        json!({
            "command": "standard-model",
            "input": { "shape": shape.to_string(), "field": f.header() },
            "output": {
                "g": mat_entries(g.matrix()),
                "adjoint": mat_entries(adjoint.matrix()),
                "cosquare": mat_entries(cosquare.matrix()),
                "jordan_type": jordan.to_string(),
                "invariant": invariant.as_ref().map(|d| d.to_string()),
            },
        }),
    ))
}

fn count_dl_cmd(
    n: Option<usize>,
    q: u32,
    shape: &Partition,
    degrees: &[u32],
    bounds: &Bounds,
) -> Result<Outcome> {
    let ambient = z_perm_degree(shape);
    if let Some(n) = n {
        if n != ambient {
            return Err(Error::MismatchedTotals(
                format!("shape {shape} ambient"),
                ambient as u64,
                "-n".into(),
                n as u64,
            ));
        }
    }
    let (char_p, q_exp) = factor_prime_power(q)?;
    let mut rows = Vec::new();
    let mut text = format!(
        "{:>3} {:>8} {:>8} {:>8} {:>8} {:>6} {:>10}\n",
        "m", "flags", "lines", "vectors", "lambda", "free", "surjective"
    );
    for &m in degrees {
        let report = count_dl(shape, char_p, q_exp, m, bounds)?;
        let _ = writeln!(
            text,
            "{:>3} {:>8} {:>8} {:>8} {:>8} {:>6} {:>10}",
            m,
            report.flag_points,
            report.line_points,
            report.vector_points,
            report.lambda_order,
            report.free,
            report.surjective
        );
        rows.push(json!({
            "m": m,
            "report": serde_json::to_value(&report).expect("report serializes"),
        }));
    }
    text.pop();
    Ok(Outcome::ok(
        text,
        json!({
            "command": "count-dl",
            "input": { "shape": shape.to_string(), "q": q, "m": degrees },
            "output": rows,
        }),
    ))
}

/// Rows of a subspace basis as `[a b c]` chunks on one line.
fn subspace_str(s: &Subspace) -> String {
    let b = s.basis();
    (0..b.rows())
        .map(|r| {
            let coords: Vec<String> =
                (0..b.cols()).map(|c| b.get(r, c).to_string()).collect();
            format!("[{}]", coords.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn enumerate_xg_cmd(shape: &Partition, field: u32, bounds: &Bounds) -> Result<Outcome> {
    let (p, m) = factor_prime_power(field)?;
    let f = Field::new(p, m)?;
    let g = standard_g(shape, &f);
    let n = z_perm_degree(shape);
    let flags = enumerate_x_g(&g, shape, bounds)?;

    let mut text = format!(
        "field {}, shape {}, {} point{}",
        f.header(),
        shape,
        flags.len(),
        if flags.len() == 1 { "" } else { "s" }
    );
    let mut points = Vec::new();
    for (idx, flag) in flags.iter().enumerate() {
        let _ = write!(text, "\npoint {}:", idx + 1);
        let mut steps = Vec::new();
        for i in 1..n {
            let _ = write!(text, "\n  V{i}: {}", subspace_str(flag.step(i)));
            let basis = flag.step(i).basis();
            let rows: Vec<Vec<u32>> = (0..basis.rows())
                .map(|r| (0..basis.cols()).map(|c| u32::from(basis.get(r, c))).collect())
                .collect();
            steps.push(json!(rows));
        }
        points.push(json!(steps));
    }
    Ok(Outcome::ok(
        text,
        json!({
            "command": "enumerate-xg",
            "input": { "shape": shape.to_string(), "field": f.header() },
            "output": { "count": flags.len(), "points": points },
        }),
    ))
}

fn z_perm_cmd(shape: &Partition, n: Option<usize>) -> Result<Outcome> {
    let degree = z_perm_degree(shape);
    if let Some(n) = n {
        if n != degree {
            return Err(Error::MismatchedTotals(
                format!("shape {shape} degree"),
                degree as u64,
                "-n".into(),
                n as u64,
            ));
        }
    }
    let z = z_perm(shape);
    let cycles = z_perm_twist_cycles(shape);
    let label: Partition =
        Partition::new(shape.parts().iter().map(|&pi| 2 * pi - 1).collect())?;
    Ok(Outcome::ok(
        z.to_string(),
        json!({
            "command": "z-perm",
            "input": { "shape": shape.to_string(), "n": degree },
            "output": {
                "images": z.one_based_images(),
                "length": z.length(),
                "label": label.to_string(),
                "twist_cycles": cycles,
            },
        }),
    ))
}

/// Parse `-w`: either `z:PARTITION` or explicit one-based images.
fn parse_position(w: &str, n: usize) -> Result<Perm> {
    let perm = if let Some(shape) = w.strip_prefix("z:") {
        z_perm(&Partition::from_str(shape)?)
    } else {
        Perm::from_str(w)?
    };
    if perm.n() != n {
        return Err(Error::MismatchedTotals(
            format!("position {w}"),
            perm.n() as u64,
            "-n".into(),
            n as u64,
        ));
    }
    Ok(perm)
}

fn oracle_sigma_cmd(
    n: usize,
    char_p: u32,
    q: u32,
    degrees: &[u32],
    w: &str,
    bounds: &Bounds,
) -> Result<Outcome> {
    if q != 1 {
        return Err(Error::Incompatible(
            "only the plain q = 1 twisted-conjugation oracle is implemented".into(),
        ));
    }
    let position = parse_position(w, n)?;
    let mut per_m = Vec::new();
    let mut union: std::collections::BTreeSet<String> = std::collections::BTreeSet::new();
    let mut sets = Vec::new();
    let mut text = String::new();
    for &m in degrees {
        let f = Field::new(char_p, m)?;
        let inv = enumerate_classes(n, &f, bounds)?;
        let sigma = sigma_for_w(&position, &inv, bounds)?;
        let keys: Vec<String> = sigma.iter().map(|k| k.to_string()).collect();
        let _ = writeln!(text, "m = {} ({}): {{{}}}", m, f.header(), keys.join(", "));
        union.extend(keys.iter().cloned());
        per_m.push(json!({ "m": m, "field": f.header(), "sigma": keys }));
        sets.push(sigma);
    }
    let stabilized = sets.windows(2).all(|w| w[0] == w[1]);
    let union_keys: Vec<String> = union.into_iter().collect();
    let _ = writeln!(text, "union: {{{}}}", union_keys.join(", "));
    let _ = write!(text, "stabilized: {stabilized}");
    Ok(Outcome::ok(
        text,
        json!({
            "command": "oracle sigma",
            "input": { "n": n, "char": char_p, "q": q, "m": degrees, "w": position.to_string() },
            "output": { "per_m": per_m, "union": union_keys, "stabilized": stabilized },
        }),
    ))
}

fn oracle_verify_cmd(
    n: usize,
    char_p: u32,
    degrees: &[u32],
    bounds: &Bounds,
) -> Result<Outcome> {
    let report = verify_theorem(n, char_p, degrees, bounds)?;
    let mut text = String::new();
    for shape in &report.shapes {
        let sigma: Vec<String> = shape.sigma.iter().map(|k| k.to_string()).collect();
        let _ = writeln!(
            text,
            "shape {}: expected {}; attained {{{}}}; present {}; minimum {}; dims {}",
            shape.shape,
            shape.expected,
            sigma.join(", "),
            shape.expected_present,
            shape.expected_is_minimum,
            shape.dim_bounds_hold
        );
    }
    let holds = report.holds();
    let _ = write!(
        text,
        "stabilized: {}; distinct minima: {}; holds: {holds}",
        report.sigma_stabilized, report.distinct_minima
    );
    Ok(Outcome {
        text,
        json: json!({
            "command": "oracle verify",
            "input": { "n": n, "char": char_p, "m": degrees },
            "output": serde_json::to_value(&report).expect("report serializes"),
        }),
        code: if holds { 0 } else { 2 },
    })
}

fn verify_all_cmd(bounds: &Bounds, budget: Option<Duration>) -> Outcome {
    let list = Vec::from(suites());
    let names = suite_names();
    let total = list.len();
    let (tx, rx) = mpsc::channel();
    let owned_bounds = *bounds;
    rayon::spawn(move || {
        use rayon::prelude::*;
        list.into_par_iter().enumerate().for_each_with(tx, |tx, (idx, suite)| {
            let report = suite(&owned_bounds);
            let _ = tx.send((idx, report));
        });
    });

    let deadline = budget.map(|d| Instant::now() + d);
    let mut slots: Vec<Option<CriterionReport>> = vec![None; total];
    let mut received = 0;
    while received < total {
        let result = match deadline {
            Some(deadline) => {
                let now = Instant::now();
                if now >= deadline {
                    break;
                }
                rx.recv_timeout(deadline - now)
            }
            None => rx.recv().map_err(|_| mpsc::RecvTimeoutError::Disconnected),
        };
        match result {
            Ok((idx, report)) => {
                slots[idx] = Some(report);
                received += 1;
            }
            Err(mpsc::RecvTimeoutError::Timeout) => break,
            Err(mpsc::RecvTimeoutError::Disconnected) => break,
        }
    }

    let mut text = String::new();
    let mut criteria = Vec::new();
    let mut unfinished = Vec::new();
    let mut all_passed = true;
    for (idx, slot) in slots.iter().enumerate() {
        match slot {
            Some(report) => {
                let _ = writeln!(text, "{report}");
                if !report.passed {
                    all_passed = false;
                }
                criteria.push(serde_json::to_value(report).expect("report serializes"));
            }
            None => {
                let _ = writeln!(text, "SKIP {} — not finished within budget", names[idx]);
                unfinished.push(names[idx]);
            }
        }
    }
    let completed = unfinished.is_empty();
    let _ = write!(
        text,
        "{} of {total} suites finished; {}",
        received,
        if all_passed && completed {
            "all passed".to_string()
        } else if !all_passed {
            "FAILURES above".to_string()
        } else {
            "budget exhausted".to_string()
        }
    );
    Outcome {
        text,
        json: json!({
            "command": "verify-all",
            "input": { "budget_secs": budget.map(|d| d.as_secs()) },
            "output": {
                "criteria": criteria,
                "unfinished": unfinished,
                "completed": completed,
                "all_passed": all_passed,
            },
        }),
        code: if all_passed && completed { 0 } else { 2 },
    }
}
