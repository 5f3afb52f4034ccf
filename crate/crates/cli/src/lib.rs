//! Command dispatch for the `bicomplex` binary. All logic lives in the
//! library; this crate parses arguments, reads documents, formats reports
//! and maps errors onto exit codes (0 success, 1 validation/comparison
//! failure, 2 usage errors).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bicomplex::doc::{ComplexDocument, HodgeDocument, LieDocument, MultsDocument};
use bicomplex::models;
use bicomplex::multiplicity::{er_equivalent, multiplicities, MultiplicityVector};
use bicomplex::ring::{normal_form, Level, RingClass};
use bicomplex::shape::{PageBound, Shape};
use bicomplex::spectral;
use bicomplex::{DoubleComplex, FieldSpec, SsSide};

pub struct Outcome {
    pub report: String,
    pub code: i32,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome { report, code: 0 }
    }
}

#[derive(Parser)]
#[command(
    name = "bicomplex",
    version,
    about = "Decompose bounded double complexes into squares and zigzags, \
             compute their cohomology tables and spectral sequences, and \
             calculate in the Grothendieck ring of complexes"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the double-complex identities of a document.
    Validate { file: PathBuf },
    /// The multiplicity of every square and zigzag shape.
    Mults { file: PathBuf },
    /// One cohomology table of the complex.
    Cohomology {
        file: PathBuf,
        #[arg(long, value_enum)]
        theory: Theory,
    },
    /// Frölicher spectral sequence pages with differential ranks.
    Pages {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        side: u8,
        #[arg(long, default_value_t = 3)]
        max_page: u32,
    },
    /// Non-∂₁∂₂ degrees Δ^k.
    Delta { file: PathBuf },
    /// Degeneration, purity and ∂₁∂₂ predicates.
    Predicates { file: PathBuf },
    /// Are two complexes E_r-isomorphic? Exits 1 when they are not.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "1")]
        r: String,
    },
    /// Evaluate a formal class, optionally multiplying two of them, and
    /// print the normal form.
    Ring {
        expr: String,
        #[arg(long)]
        times: Option<String>,
        #[arg(long, default_value = "r1")]
        level: String,
    },
    /// Construct model complexes and write their JSON documents.
    #[command(subcommand)]
    Build(BuildCommand),
    /// ASCII diagram of a complex (or multiplicity file), optional SVG.
    Render {
        file: PathBuf,
        /// Treat the input as a multiplicity document instead of a complex.
        #[arg(long)]
        mults: bool,
        /// Write an SVG diagram here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theory {
    Derham,
    Dolbeault1,
    Dolbeault2,
    Bc,
    Aeppli,
}

#[derive(Args)]
struct FieldArg {
    /// Coefficient field: Q, Q(i) or F<p>.
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Subcommand)]
enum BuildCommand {
    /// Elementary square S^{p,q}.
    Square {
        #[arg(long)]
        p: i32,
        #[arg(long)]
        q: i32,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Elementary complex of any shape label.
    Zigzag {
        #[arg(long)]
        shape: String,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Tensor product of two complex documents.
    Tensor { a: PathBuf, b: PathBuf },
    /// Direct sum of two complex documents.
    Sum { a: PathBuf, b: PathBuf },
    /// Dual complex reflected at p+q = n.
    Dual {
        file: PathBuf,
        #[arg(long)]
        n: i32,
    },
    /// Shift by (i, i).
    Shift {
        file: PathBuf,
        #[arg(long)]
        i: i32,
    },
    /// Nilmanifold Dolbeault model from Lie-algebra data.
    Lie { file: PathBuf },
    /// Zero-differential complex from a Hodge table.
    Hodge {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArg,
    },
    /// The 8-dimensional Hopf-surface model.
    Hopf,
    /// The Calabi-Eckmann model M_{u,v}, u < v.
    CalabiEckmann {
        #[arg(long)]
        u: u32,
        #[arg(long)]
        v: u32,
    },
    /// Blowup class: mults(X) + Σ_{i=1}^{r-1} mults(Z)[i].
    BlowupClass {
        x: PathBuf,
        z: PathBuf,
        #[arg(long)]
        r: u32,
    },
    /// Projective bundle class: Σ_{i=0}^{m} mults(X)[i].
    PbClass {
        x: PathBuf,
        #[arg(long)]
        m: u32,
    },
}

/// Runs the CLI on the given arguments (`argv[0]` is the binary name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version output is a successful exit
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            return Outcome {
                report: e.to_string(),
                code: if benign { 0 } else { 2 },
            };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            let code = match &e {
                bicomplex::Error::InvalidComplex(_) => 1,
                _ => 2,
            };
            Outcome {
                report: format!("error: {e}"),
                code,
            }
        }
    }
}

fn read(path: &Path) -> bicomplex::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| bicomplex::Error::Parse(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> bicomplex::Result<DoubleComplex> {
    ComplexDocument::from_json(&read(path)?)?.to_complex()
}

fn load_mults(path: &Path) -> bicomplex::Result<MultiplicityVector> {
    MultsDocument::from_json(&read(path)?)?.to_mults()
}

#[derive(Serialize)]
struct TableReport<K: Serialize, V: Serialize> {
    entries: Vec<(K, V)>,
}

fn dispatch(cli: &Cli) -> bicomplex::Result<Outcome> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Validate { file } => {
            let a = load_complex(file)?;
            let violations = a.validate();
            let report = if json {
                #[derive(Serialize)]
                struct V {
                    valid: bool,
                    violations: Vec<String>,
                }
                serde_json::to_string_pretty(&V {
                    valid: violations.is_empty(),
                    violations: violations.iter().map(|v| v.to_string()).collect(),
                })
                .unwrap()
            } else if violations.is_empty() {
                format!(
                    "valid double complex over {}, total dimension {}",
                    a.field(),
                    a.total_dim()
                )
            } else {
                let mut s = String::from("invalid double complex:\n");
                for v in &violations {
                    let _ = writeln!(s, "  {v}");
                }
                s
            };
            Ok(Outcome {
                code: i32::from(!violations.is_empty()),
                report,
            })
        }
        Command::Mults { file } => {
            let a = load_complex(file)?;
            let m = multiplicities(&a)?;
            let report = if json {
                MultsDocument::from_mults(&m).to_json()
            } else {
                let mut s = String::new();
                for (shape, count) in sorted_shapes(&m) {
                    let _ = writeln!(s, "{shape}  x{count}");
                }
                if m.is_empty() {
                    s.push_str("(zero complex)\n");
                }
                s
            };
            Ok(Outcome::ok(report))
        }
        Command::Cohomology { file, theory } => {
            let a = load_complex(file)?;
            cohomology_report(&a, *theory, json)
        }
        Command::Pages {
            file,
            side,
            max_page,
        } => {
            let a = load_complex(file)?;
            let side = SsSide::from_index(*side)?;
            pages_report(&a, side, *max_page, json)
        }
        Command::Delta { file } => {
            let a = load_complex(file)?;
            let delta = spectral::delta_degrees(&a)?;
            let report = if json {
                serde_json::to_string_pretty(&TableReport {
                    entries: delta.iter().map(|(&k, &v)| (k, v)).collect(),
                })
                .unwrap()
            } else {
                let mut s = String::new();
                for (k, v) in &delta {
                    let _ = writeln!(s, "Δ^{k} = {v}");
                }
                if delta.is_empty() {
                    s.push_str("Δ ≡ 0 (empty complex)\n");
                }
                s
            };
            Ok(Outcome::ok(report))
        }
        Command::Predicates { file } => {
            let a = load_complex(file)?;
            let p = spectral::predicates(&a)?;
            let report = if json {
                #[derive(Serialize)]
                struct P {
                    ddbar: bool,
                    degeneration_stage: u32,
                    pure_hodge: Vec<(i32, bool)>,
                }
                serde_json::to_string_pretty(&P {
                    ddbar: p.ddbar,
                    degeneration_stage: p.degeneration_stage,
                    pure_hodge: p.pure_hodge.iter().map(|(&k, &v)| (k, v)).collect(),
                })
                .unwrap()
            } else {
                let mut s = String::new();
                let _ = writeln!(s, "ddbar lemma: {}", p.ddbar);
                let _ = writeln!(s, "degenerates at page: {}", p.degeneration_stage);
                for (k, pure) in &p.pure_hodge {
                    let _ = writeln!(s, "pure Hodge structure on H^{k} (weight {k}): {pure}");
                }
                s
            };
            Ok(Outcome::ok(report))
        }
        Command::Compare { a, b, r } => {
            let r: PageBound = r.parse()?;
            let ma = multiplicities(&load_complex(a)?)?;
            let mb = multiplicities(&load_complex(b)?)?;
            let equivalent = er_equivalent(&ma, &mb, r);
            let report = if json {
                format!("{{\n  \"r\": \"{r}\",\n  \"equivalent\": {equivalent}\n}}")
            } else if equivalent {
                format!("equivalent at E_{r}")
            } else {
                format!("not equivalent at E_{r}")
            };
            Ok(Outcome {
                report,
                code: i32::from(!equivalent),
            })
        }
        Command::Ring { expr, times, level } => {
            let level: Level = level.parse()?;
            let mut class = RingClass::parse(expr, level)?;
            if let Some(other) = times {
                class = class.mul(&RingClass::parse(other, level)?)?;
            }
            let nf = if level == Level::R0 {
                None
            } else {
                Some(normal_form(&class)?)
            };
            let report = if json {
                #[derive(Serialize)]
                struct R {
                    level: String,
                    class: String,
                    normal_form: Option<String>,
                    first_quadrant: bool,
                }
                serde_json::to_string_pretty(&R {
                    level: level.to_string(),
                    class: class.to_string(),
                    normal_form: nf.as_ref().map(|n| n.to_string()),
                    first_quadrant: class.is_first_quadrant(),
                })
                .unwrap()
            } else {
                let mut s = String::new();
                let _ = writeln!(s, "class in {level}: {class}");
                if let Some(n) = nf {
                    let _ = writeln!(s, "normal form: {n}");
                }
                let _ = writeln!(s, "first quadrant: {}", class.is_first_quadrant());
                s
            };
            Ok(Outcome::ok(report))
        }
        Command::Build(b) => build(b),
        Command::Render { file, mults, svg } => {
            let (text, m) = if *mults {
                let m = load_mults(file)?;
                (bicomplex::render::ascii_of_mults(&m), m)
            } else {
                let a = load_complex(file)?;
                let m = multiplicities(&a)?;
                (bicomplex::render::ascii_of_complex(&a, Some(&m)), m)
            };
            if let Some(path) = svg {
                std::fs::write(path, bicomplex::render::render_svg(&m))
                    .map_err(|e| bicomplex::Error::Parse(format!("{}: {e}", path.display())))?;
            }
            Ok(Outcome::ok(text))
        }
    }
}

fn sorted_shapes(m: &MultiplicityVector) -> Vec<(Shape, usize)> {
    let mut v: Vec<(Shape, usize)> = m.iter().map(|(s, c)| (*s, c)).collect();
    v.sort_by_key(|(s, _)| s.render_key());
    v
}

fn cohomology_report(a: &DoubleComplex, theory: Theory, json: bool) -> bicomplex::Result<Outcome> {
    let bidegree_table = |t: BTreeMap<(i32, i32), usize>, name: &str| -> Outcome {
        let report = if json {
            serde_json::to_string_pretty(&TableReport {
                entries: t.iter().map(|(&k, &v)| (k, v)).collect(),
            })
            .unwrap()
        } else {
            let mut s = format!("{name}:\n");
            for (&(p, q), &dim) in &t {
                let _ = writeln!(s, "  ({p},{q}): {dim}");
            }
            if t.is_empty() {
                s.push_str("  0 everywhere\n");
            }
            s
        };
        Outcome::ok(report)
    };
    match theory {
        Theory::Derham => {
            let h = spectral::de_rham(a)?;
            let report = if json {
                serde_json::to_string_pretty(&TableReport {
                    entries: h.iter().map(|(&k, (d, _))| (k, *d)).collect::<Vec<_>>(),
                })
                .unwrap()
            } else {
                let mut s = String::from("de Rham Betti numbers:\n");
                for (k, (d, _)) in &h {
                    let _ = writeln!(s, "  b_{k} = {d}");
                }
                s
            };
            Ok(Outcome::ok(report))
        }
        Theory::Dolbeault1 => Ok(bidegree_table(spectral::dolbeault(a, SsSide::One)?, "H_d1")),
        Theory::Dolbeault2 => Ok(bidegree_table(spectral::dolbeault(a, SsSide::Two)?, "H_d2")),
        Theory::Bc => {
            let t = spectral::bott_chern_aeppli(a)?;
            Ok(bidegree_table(
                t.into_iter()
                    .filter(|(_, v)| v.0 > 0)
                    .map(|(k, v)| (k, v.0))
                    .collect(),
                "Bott-Chern",
            ))
        }
        Theory::Aeppli => {
            let t = spectral::bott_chern_aeppli(a)?;
            Ok(bidegree_table(
                t.into_iter()
                    .filter(|(_, v)| v.1 > 0)
                    .map(|(k, v)| (k, v.1))
                    .collect(),
                "Aeppli",
            ))
        }
    }
}

fn pages_report(
    a: &DoubleComplex,
    side: SsSide,
    max_page: u32,
    json: bool,
) -> bicomplex::Result<Outcome> {
    let pages = spectral::ss_pages(a, side, max_page)?;
    if json {
        #[derive(Serialize)]
        struct PageOut {
            r: u32,
            entries: Vec<((i32, i32), usize)>,
            differential_ranks: Vec<((i32, i32), usize)>,
        }
        let out: Vec<PageOut> = pages
            .iter()
            .map(|p| PageOut {
                r: p.r,
                entries: p.entries.iter().map(|(&k, e)| (k, e.dim)).collect(),
                differential_ranks: p
                    .differentials
                    .iter()
                    .map(|(&k, m)| (k, m.rank()))
                    .collect(),
            })
            .collect();
        return Ok(Outcome::ok(serde_json::to_string_pretty(&out).unwrap()));
    }
    let mut s = String::new();
    for page in &pages {
        let _ = writeln!(
            s,
            "side {side}, page {} (total dim {}):",
            page.r,
            page.total_dim()
        );
        for (&(p, q), e) in &page.entries {
            let _ = writeln!(s, "  E^({p},{q}) = {}", e.dim);
        }
        for (&(p, q), m) in &page.differentials {
            let (tp, tq) = match side {
                SsSide::One => (p + page.r as i32, q - page.r as i32 + 1),
                SsSide::Two => (p - page.r as i32 + 1, q + page.r as i32),
            };
            let _ = writeln!(
                s,
                "  d_{} : ({p},{q}) -> ({tp},{tq}), rank {}",
                page.r,
                m.rank()
            );
        }
    }
    Ok(Outcome::ok(s))
}

fn build(cmd: &BuildCommand) -> bicomplex::Result<Outcome> {
    let complex_json = |a: &DoubleComplex| ComplexDocument::from_complex(a).to_json();
    let mults_json = |m: &MultiplicityVector| MultsDocument::from_mults(m).to_json();
    let report = match cmd {
        BuildCommand::Square { p, q, field } => {
            let f = FieldSpec::parse(&field.field)?;
            complex_json(&DoubleComplex::elementary(
                Shape::Square { p: *p, q: *q },
                f,
            ))
        }
        BuildCommand::Zigzag { shape, field } => {
            let f = FieldSpec::parse(&field.field)?;
            let s: Shape = shape.parse()?;
            complex_json(&DoubleComplex::elementary(s, f))
        }
        BuildCommand::Tensor { a, b } => complex_json(&load_complex(a)?.tensor(&load_complex(b)?)?),
        BuildCommand::Sum { a, b } => {
            complex_json(&load_complex(a)?.direct_sum(&load_complex(b)?)?)
        }
        BuildCommand::Dual { file, n } => complex_json(&load_complex(file)?.dual(*n)),
        BuildCommand::Shift { file, i } => complex_json(&load_complex(file)?.shift(*i)),
        BuildCommand::Lie { file } => {
            let data = LieDocument::from_json(&read(file)?)?.to_lie_data()?;
            complex_json(&models::lie_complex(&data)?)
        }
        BuildCommand::Hodge { file, field } => {
            let f = FieldSpec::parse(&field.field)?;
            let table = HodgeDocument::from_json(&read(file)?)?.to_table();
            complex_json(&models::hodge_complex(&table, f))
        }
        BuildCommand::Hopf => complex_json(&models::hopf_model()),
        BuildCommand::CalabiEckmann { u, v } => {
            complex_json(&models::calabi_eckmann_model(*u, *v)?)
        }
        BuildCommand::BlowupClass { x, z, r } => {
            mults_json(&models::blowup_class(&load_mults(x)?, &load_mults(z)?, *r)?)
        }
        BuildCommand::PbClass { x, m } => {
            mults_json(&models::projective_bundle_class(&load_mults(x)?, *m))
        }
    };
    Ok(Outcome::ok(report))
}
