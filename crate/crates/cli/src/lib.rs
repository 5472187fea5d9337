//! The `kosrec` command line: session files in, canonical JSON out.
//!
//! Exit status is 0 on success (or a valid certificate), 1 on a
//! computational error (or an invalid certificate) and 2 on a parse error.

pub mod corpus;
pub mod output;
pub mod session;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use kosrec_core::balls::{ball_from_reconstruction, encode_ball, finite_length_ball, BallCertificate};
use kosrec_core::cert::{
    encode_reconstruction, to_canonical_json, verify_document, ComplexDoc, DimDoc, Decoder, MatrixDoc, ModuleDoc,
    ReconstructionDoc, RingDoc, SesDoc, VerifyReport,
};
use kosrec_core::complexes::{homology, koszul, Verdict};
use kosrec_core::fpmod::{ext, free_resolution, syzygy, Dimension};
use kosrec_core::reconstruct::{
    extension_tower, reconstruct, reconstruct_with_power, PowerSearch, ReconstructionCertificate, DEFAULT_K_MAX,
};
use kosrec_core::Error;

use output::{ExtDoc, GbDoc, HomologyEntry, KoszulDoc, ResolutionDoc, SyzygyDoc, TowerDoc};
use session::Session;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("Parse: {0}")]
    Parse(String),
    #[error("{0}")]
    Core(Error),
    #[error("Io: {0}")]
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => CliError::Parse(m),
            e => CliError::Core(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) => 1,
            CliError::Parse(_) | CliError::Io(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "kosrec", version, about = "Koszul homology reconstruction with verifiable certificates")]
pub struct Cli {
    /// Session file declaring the ring, modules and sequences.
    #[arg(short, long, global = true)]
    pub session: Option<PathBuf>,
    /// Output file (a directory for `demo`).
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis of the ideal, or of a module's relations.
    Gb { module: Option<String> },
    /// Free resolution up to the given length.
    Resolve { module: String, len: usize },
    /// The n-th syzygy module.
    Syzygy { module: String, n: usize },
    /// Ext^i(M, N).
    Ext { m: String, n: String, i: usize },
    /// Koszul complex and its homology.
    Koszul { seq: String, module: String },
    /// Reconstruct M from Koszul homology and emit a certificate.
    Reconstruct {
        module: String,
        seq: String,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: u32,
    },
    /// Extension tower of a reconstruction certificate.
    Tower { cert: PathBuf },
    /// Ball certificate built from a reconstruction certificate.
    Ball { cert: PathBuf },
    /// Ball certificate over the finite-length modules.
    Flball {
        module: String,
        seq: String,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: u32,
    },
    /// Verify a certificate file.
    Verify { cert: PathBuf },
    /// Run a bundled demo session.
    Demo { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gb { .. } => "gb",
            Command::Resolve { .. } => "resolve",
            Command::Syzygy { .. } => "syzygy",
            Command::Ext { .. } => "ext",
            Command::Koszul { .. } => "koszul",
            Command::Reconstruct { .. } => "reconstruct",
            Command::Tower { .. } => "tower",
            Command::Ball { .. } => "ball",
            Command::Flball { .. } => "flball",
            Command::Verify { .. } => "verify",
            Command::Demo { .. } => "demo",
        }
    }
}

/// Runs one invocation and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_session(cli: &Cli) -> Result<Session, CliError> {
    let path = cli.session.as_ref().ok_or_else(|| CliError::Parse("this command needs --session".into()))?;
    Session::parse(&read(path)?)
}

fn dims(ds: impl IntoIterator<Item = Dimension>) -> String {
    ds.into_iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn emit<T: Serialize>(doc: &T, path: &Path, summary: String, out: &mut dyn Write) -> Result<i32, CliError> {
    write_file(path, &to_canonical_json(doc))?;
    let _ = writeln!(out, "{summary}");
    let _ = writeln!(out, "wrote {}", path.display());
    Ok(0)
}

fn reconstruction_summary(cert: &ReconstructionCertificate) -> String {
    let report = &cert.homology_report;
    let status = if report.verdict >= Verdict::HomologyMatch { "MATCH" } else { "MISMATCH" };
    let n = cert.n();
    format!(
        "k={}, n={}, radius≤{}, homology: {} ({})",
        cert.k,
        n,
        n + 1,
        status,
        dims(report.degrees.iter().map(|d| d.left))
    )
}

fn ball_summary(ball: &BallCertificate, valid: bool) -> String {
    format!(
        "radius {} (EXT={}, SYZ={}, SUMMAND={}), {}",
        ball.radius,
        ball.tree.count("EXT"),
        ball.tree.count("SYZ"),
        ball.tree.count("SUMMAND"),
        if valid { "valid" } else { "INVALID" }
    )
}

fn print_failures(report: &VerifyReport, out: &mut dyn Write) {
    for f in &report.failures {
        let _ = writeln!(out, "  {f}");
    }
}

/// Reads a reconstruction certificate, verifies it and rebuilds it.
fn load_reconstruction(path: &Path, out: &mut dyn Write) -> Result<Option<ReconstructionCertificate>, CliError> {
    let text = read(path)?;
    let report = verify_document(&text);
    if report.failures.iter().any(|f| f.code == "PARSE") {
        return Err(CliError::Parse(report.failures[0].to_string()));
    }
    if report.kind != "reconstruction" {
        return Err(CliError::Parse(format!("{} is not a reconstruction certificate", path.display())));
    }
    if !report.valid {
        let _ = writeln!(out, "invalid reconstruction certificate");
        print_failures(&report, out);
        return Ok(None);
    }
    let doc: ReconstructionDoc = serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
    let bad = |f: kosrec_core::cert::Failure| CliError::Parse(f.to_string());
    let dec = Decoder::new(&doc.ring, "$.ring").map_err(bad)?;
    let m = dec.module(&doc.module, "$.module").map_err(bad)?;
    let xs = dec.polys(&doc.xs, "$.xs").map_err(bad)?;
    let search = PowerSearch { k: doc.k, per_variable: doc.per_variable.clone() };
    Ok(Some(reconstruct_with_power(&m, &xs, search)?))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let default_out = PathBuf::from(format!("{}.json", cli.command.name()));
    let path = cli.out.clone().unwrap_or(default_out);
    match &cli.command {
        Command::Gb { module } => {
            let s = load_session(cli)?;
            let ring = &s.ring;
            let doc = match module {
                None => GbDoc {
                    kind: "gb",
                    ring: RingDoc::encode(ring),
                    target: "ideal".into(),
                    rank: 1,
                    basis: ring.ideal().iter().map(|g| vec![g.to_canonical(ring)]).collect(),
                },
                Some(name) => {
                    let m = s.module(name)?;
                    GbDoc {
                        kind: "gb",
                        ring: RingDoc::encode(ring),
                        target: name.clone(),
                        rank: m.rank(),
                        basis: m.canonical_relations(),
                    }
                }
            };
            let summary = format!("reduced Gröbner basis of {}: {} elements", doc.target, doc.basis.len());
            emit(&doc, &path, summary, out)
        }
        Command::Resolve { module, len } => {
            let s = load_session(cli)?;
            let m = s.module(module)?;
            let res = free_resolution(&m, *len);
            let doc = ResolutionDoc {
                kind: "resolution",
                ring: RingDoc::encode(&s.ring),
                module: ModuleDoc::encode(&m),
                length: *len,
                betti: res.betti()[..=*len].to_vec(),
                differentials: (1..=*len).map(|i| MatrixDoc::encode(&s.ring, res.differential(i))).collect(),
            };
            let betti: Vec<String> = doc.betti.iter().map(usize::to_string).collect();
            emit(&doc, &path, format!("betti numbers: {}", betti.join(" ")), out)
        }
        Command::Syzygy { module, n } => {
            let s = load_session(cli)?;
            let m = s.module(module)?;
            let z = syzygy(&m, *n);
            let dim = z.dimension();
            let summary = format!("Ω^{n} {module}: rank {}, {} relations, dimension {dim}", z.rank(), z.relations().len());
            let doc = SyzygyDoc {
                kind: "syzygy",
                ring: RingDoc::encode(&s.ring),
                module: ModuleDoc::encode(&m),
                n: *n,
                syzygy: ModuleDoc::encode(&z),
                dimension: dim.into(),
            };
            emit(&doc, &path, summary, out)
        }
        Command::Ext { m, n, i } => {
            let s = load_session(cli)?;
            let (a, b) = (s.module(m)?, s.module(n)?);
            let e = ext(&a, &b, *i);
            let dim = e.dimension();
            let doc = ExtDoc {
                kind: "ext",
                ring: RingDoc::encode(&s.ring),
                m: ModuleDoc::encode(&a),
                n: ModuleDoc::encode(&b),
                i: *i,
                ext: ModuleDoc::encode(&e),
                dimension: dim.into(),
            };
            emit(&doc, &path, format!("Ext^{i}({m}, {n}): dimension {dim}"), out)
        }
        Command::Koszul { seq, module } => {
            let s = load_session(cli)?;
            let m = s.module(module)?;
            let xs = s.sequence(seq)?;
            let k = koszul(&xs, &m);
            let homology: Vec<HomologyEntry> = (0..=xs.len() as i32)
                .map(|i| {
                    let h = homology(&k, i).module;
                    HomologyEntry { degree: i, dimension: h.dimension().into(), module: ModuleDoc::encode(&h) }
                })
                .collect();
            let ds: Vec<String> = homology
                .iter()
                .map(|h| match &h.dimension {
                    DimDoc::Finite(n) => n.to_string(),
                    DimDoc::Infinite(_) => "inf".into(),
                })
                .collect();
            let doc = KoszulDoc {
                kind: "koszul",
                ring: RingDoc::encode(&s.ring),
                module: ModuleDoc::encode(&m),
                xs: xs.iter().map(|x| x.to_canonical(&s.ring)).collect(),
                complex: ComplexDoc::encode(&k),
                homology,
            };
            emit(&doc, &path, format!("Koszul homology dimensions: ({})", ds.join(",")), out)
        }
        Command::Reconstruct { module, seq, kmax } => {
            let s = load_session(cli)?;
            let m = s.module(module)?;
            let xs = s.sequence(seq)?;
            let cert = reconstruct(&m, &xs, *kmax)?;
            emit(&encode_reconstruction(&cert), &path, reconstruction_summary(&cert), out)
        }
        Command::Tower { cert } => {
            let Some(rc) = load_reconstruction(cert, out)? else { return Ok(1) };
            let tower = extension_tower(&rc)?;
            let ring = rc.ring();
            let exact = tower.sequences.iter().all(|s| s.check().holds());
            let split = tower.retraction.compose(&tower.section).is_ok_and(|c| c.is_identity());
            let doc = TowerDoc {
                kind: "tower",
                ring: RingDoc::encode(ring),
                stages: tower.stages.iter().map(ModuleDoc::encode).collect(),
                homology: tower.homology.iter().map(ModuleDoc::encode).collect(),
                sequences: tower.sequences.iter().map(SesDoc::encode).collect(),
                section: MatrixDoc::encode(ring, tower.section.matrix()),
                retraction: MatrixDoc::encode(ring, tower.retraction.matrix()),
            };
            let summary = format!(
                "{} stages, {} extensions, all exact: {}, r∘s = id: {}",
                doc.stages.len(),
                doc.sequences.len(),
                if exact { "yes" } else { "no" },
                if split { "yes" } else { "no" }
            );
            emit(&doc, &path, summary, out)
        }
        Command::Ball { cert } => {
            let Some(rc) = load_reconstruction(cert, out)? else { return Ok(1) };
            let ball = ball_from_reconstruction(&rc)?;
            let valid = kosrec_core::balls::verify_ball(&ball).valid;
            emit(&encode_ball(&ball), &path, ball_summary(&ball, valid), out)
        }
        Command::Flball { module, seq, kmax } => {
            let s = load_session(cli)?;
            let m = s.module(module)?;
            let xs = s.sequence(seq)?;
            let fl = finite_length_ball(&m, &xs, *kmax)?;
            let valid = kosrec_core::balls::verify_ball(&fl.certificate).valid;
            let summary = format!(
                "{}, finite colength of the sequence: {}",
                ball_summary(&fl.certificate, valid),
                if fl.sop_finite_colength { "yes" } else { "no" }
            );
            emit(&encode_ball(&fl.certificate), &path, summary, out)
        }
        Command::Verify { cert } => {
            let text = read(cert)?;
            let report = verify_document(&text);
            if report.valid {
                let radius = report.radius.map(|r| format!(", radius {r}")).unwrap_or_default();
                let _ = writeln!(out, "valid {} certificate{radius}", report.kind);
                Ok(0)
            } else {
                let _ = writeln!(out, "invalid {} certificate", report.kind);
                print_failures(&report, out);
                let parse = serde_json::from_str::<Value>(&text).is_err()
                    || report.failures.iter().all(|f| f.code == "PARSE" && f.path == "$");
                Ok(if parse { 2 } else { 1 })
            }
        }
        Command::Demo { name } => {
            let text = corpus::demo(name).ok_or_else(|| {
                let names: Vec<&str> = corpus::DEMOS.iter().map(|(n, _)| *n).collect();
                CliError::Parse(format!("unknown demo `{name}` (available: {})", names.join(", ")))
            })?;
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from(format!("demo-{name}")));
            std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            let session = Session::parse(text)?;
            let session_path = dir.join(format!("{name}.session"));
            write_file(&session_path, &session.serialize())?;
            let _ = writeln!(out, "wrote {}", session_path.display());
            let mut status = 0;
            for (i, args) in session.commands.iter().enumerate() {
                let file = dir.join(format!("{}-{}.json", i + 1, args[0]));
                let mut argv: Vec<OsString> = vec!["kosrec".into(), "--session".into(), session_path.clone().into()];
                argv.extend(["--out".into(), file.into()]);
                argv.extend(args.iter().map(OsString::from));
                let _ = writeln!(out, "$ {}", args.join(" "));
                let sub = Cli::try_parse_from(argv).map_err(|e| CliError::Parse(e.to_string()))?;
                let code = match execute(&sub, out) {
                    Ok(c) => c,
                    Err(e) => {
                        let _ = writeln!(out, "error: {e}");
                        e.exit_code()
                    }
                };
                status = status.max(code);
            }
            Ok(status)
        }
    }
}
