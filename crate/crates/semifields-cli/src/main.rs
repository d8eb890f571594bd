//! Command-line front end: construct objects, apply operations, run the
//! verification suite, and emit reproducible reports.
//!
//! Reports go to standard output and are byte-identical across runs for
//! fixed inputs and seed; wall-clock timing goes to standard error. Exit
//! codes: 0 success, 1 mathematical falsification (a check came out false),
//! 2 usage errors (bad parameters, malformed encodings, exceeded budgets).

use clap::{Args, Parser, Subcommand};
use semifields::bel;
use semifields::gf::{Aut, FieldCtx};
use semifields::gtf::GtfParams;
use semifields::io as sio;
use semifields::isotopy;
use semifields::rank2;
use semifields::semifield::{KnuthWord, SpreadMember};
use semifields::verify;
use serde::Serialize;
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "semifields",
    version,
    about = "Exact presemifield and BEL-configuration toolkit"
)]
struct Cli {
    /// Emit the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized suites
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for the search/scan commands
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Field-order cap for the brute-force isotopy search
    #[arg(long, global = true, default_value_t = isotopy::DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized twisted fields
    Gtf {
        #[command(subcommand)]
        cmd: GtfCmd,
    },
    /// Cubical presemifield multiplications
    Semifield {
        #[command(subcommand)]
        cmd: SemifieldCmd,
    },
    /// BEL-configurations
    Bel {
        #[command(subcommand)]
        cmd: BelCmd,
    },
    /// r = 2 pairs, the order-8 group and the stabilizer action
    Rank2 {
        #[command(subcommand)]
        cmd: Rank2Cmd,
    },
    /// Isotopy testing
    Iso {
        #[command(subcommand)]
        cmd: IsoCmd,
    },
    /// Verification suites
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Args)]
struct GtfParamsArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    /// Twist coefficient, encoded
    #[arg(long)]
    c: u64,
    /// Exponent of α = x^{q^a}
    #[arg(long)]
    a: i64,
    /// Exponent of β = x^{q^b}
    #[arg(long)]
    b: i64,
}

#[derive(Subcommand)]
enum GtfCmd {
    /// Validate parameters and print the serialized twisted field
    Build(GtfParamsArgs),
    /// Apply a Knuth word to the parameters
    Knuth {
        #[command(flatten)]
        params: GtfParamsArgs,
        #[arg(long)]
        word: String,
    },
    /// Closed-form isotopy test between two parameter triples
    Isotopic {
        #[command(flatten)]
        params: GtfParamsArgs,
        #[arg(long)]
        c2: u64,
        #[arg(long)]
        a2: i64,
        #[arg(long)]
        b2: i64,
    },
}

#[derive(Subcommand)]
enum SemifieldCmd {
    /// Multiply two encoded elements
    Mult {
        #[arg(long)]
        file: String,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
    },
    /// Check the presemifield property
    Check {
        #[arg(long)]
        file: String,
    },
    /// Nucleus and centre orders of the canonical unitalization
    Nuclei {
        #[arg(long)]
        file: String,
    },
    /// Apply a Knuth word to the cubical array
    Knuth {
        #[arg(long)]
        file: String,
        #[arg(long)]
        word: String,
    },
    /// Print the semifield spread
    Spread {
        #[arg(long)]
        file: String,
    },
}

#[derive(Subcommand)]
enum BelCmd {
    /// Check the BEL property (all five characterizations)
    Check {
        #[arg(long)]
        file: String,
    },
    /// Evaluate the configuration multiplication
    Mult {
        #[arg(long)]
        file: String,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
    },
    /// Expand to the cubical array
    Cubical {
        #[arg(long)]
        file: String,
    },
    /// Print the BEL spread
    Spread {
        #[arg(long)]
        file: String,
    },
    /// Reduce r by one when W contains a spread element
    Reduce {
        #[arg(long)]
        file: String,
    },
    /// ⊥-transpose (ĝ, f̂)
    Transpose {
        #[arg(long)]
        file: String,
    },
    /// Symplectic configuration from a symmetric cubical array
    Symplectic {
        #[arg(long)]
        file: String,
    },
}

#[derive(Subcommand)]
enum Rank2Cmd {
    /// Normalize an r = 2 configuration to pair shape
    Normalize {
        #[arg(long)]
        file: String,
    },
    /// Switching s
    S {
        #[arg(long)]
        file: String,
    },
    /// Symplectic move e
    E {
        #[arg(long)]
        file: String,
    },
    /// Transpose t
    T {
        #[arg(long)]
        file: String,
    },
    /// The ≤ 8 distinct pairs of the ⟨s,e⟩ orbit
    Orbit8 {
        #[arg(long)]
        file: String,
    },
    /// Stabilizer action on twisted-field parameters
    Stab {
        #[command(flatten)]
        params: GtfParamsArgs,
        /// Element acting on U, in stab line format
        #[arg(long)]
        phi: String,
        /// Element acting on W, in stab line format
        #[arg(long)]
        phi2: String,
    },
    /// Verify all 24 cells of the Knuth × {id,s,e,es} table
    Table24 {
        #[arg(long)]
        file: String,
    },
}

#[derive(Subcommand)]
enum IsoCmd {
    /// Brute-force isotopy search between two cubical arrays
    Test {
        #[arg(long)]
        file1: String,
        #[arg(long)]
        file2: String,
    },
    /// Isotopy-invariant record (nucleus orders)
    Invariants {
        #[arg(long)]
        file: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run the whole verification suite
    All {
        /// Echoed for interface compatibility; criteria pin their own fields
        #[arg(long)]
        q: Option<u64>,
        /// Echoed for interface compatibility; criteria pin their own fields
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated criterion ids to run (default: all)
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Serialize, Default)]
struct Report {
    command: String,
    context: Option<String>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    checks: Vec<CheckLine>,
    seed: u64,
}

#[derive(Serialize)]
struct CheckLine {
    name: String,
    pass: bool,
    detail: String,
}

impl Report {
    fn set_ctx(&mut self, ctx: &FieldCtx) {
        self.context = Some(format!("p={} e={} n={}", ctx.p(), ctx.e(), ctx.n()));
    }

    fn out(&mut self, line: impl Into<String>) {
        self.outputs.push(line.into());
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckLine {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn failed_checks(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        if let Some(ctx) = &self.context {
            let _ = writeln!(s, "context: {ctx}");
        }
        for i in &self.inputs {
            let _ = writeln!(s, "input: {i}");
        }
        for o in &self.outputs {
            let _ = writeln!(s, "{o}");
        }
        for c in &self.checks {
            let _ = writeln!(
                s,
                "[{}] {} {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        let _ = writeln!(
            s,
            "checks: {} run, {} failed",
            self.checks.len(),
            self.failed_checks()
        );
        s
    }
}

fn read_input(path: &str) -> Result<String, semifields::Error> {
    if path == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| semifields::Error::Parse(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| semifields::Error::Parse(format!("cannot read {path}: {e}")))
    }
}

fn gtf_from_args(args: &GtfParamsArgs) -> Result<(FieldCtx, GtfParams), semifields::Error> {
    let ctx = FieldCtx::from_q(args.q, args.n)?;
    let c = ctx.decode(args.c)?;
    let p = GtfParams::new(c, Aut::new(args.a, ctx.n()), Aut::new(args.b, ctx.n()));
    Ok((ctx, p))
}

fn knuth_word(s: &str) -> Result<KnuthWord, semifields::Error> {
    KnuthWord::parse(s).ok_or_else(|| semifields::Error::Parse(format!("unknown Knuth word {s:?}")))
}

fn spread_lines(report: &mut Report, spread: &semifields::SemifieldSpread, ctx: &FieldCtx) {
    report.out(format!(
        "spread q={} n={} size={}",
        ctx.q(),
        ctx.n(),
        spread.len()
    ));
    for m in &spread.members {
        match m {
            SpreadMember::Graph(f) => report.out(sio::write_linpoly(f, ctx)),
            SpreadMember::Infinity => report.out("infinity"),
        }
    }
}

/// Run one command; returns the process exit code.
fn run(cli: &Cli, report: &mut Report) -> Result<i32, semifields::Error> {
    let mut falsified = false;
    match &cli.command {
        Command::Gtf { cmd } => match cmd {
            GtfCmd::Build(args) => {
                let (ctx, p) = gtf_from_args(args)?;
                report.set_ctx(&ctx);
                let valid = p.valid(&ctx);
                report.out(sio::write_gtf(&p, &ctx));
                report.check(
                    "gtf-valid",
                    valid,
                    if valid {
                        ""
                    } else {
                        "improper or c in product set"
                    },
                );
                falsified = !valid;
            }
            GtfCmd::Knuth { params, word } => {
                let (ctx, p) = gtf_from_args(params)?;
                report.set_ctx(&ctx);
                let w = knuth_word(word)?;
                let out = p.knuth(w, &ctx)?;
                report.out(sio::write_gtf(&out, &ctx));
            }
            GtfCmd::Isotopic { params, c2, a2, b2 } => {
                let (ctx, p1) = gtf_from_args(params)?;
                report.set_ctx(&ctx);
                let p2 = GtfParams::new(
                    ctx.decode(*c2)?,
                    Aut::new(*a2, ctx.n()),
                    Aut::new(*b2, ctx.n()),
                );
                report.out(format!("isotopic: {}", p1.isotopic(&p2, &ctx)?));
            }
        },
        Command::Semifield { cmd } => match cmd {
            SemifieldCmd::Mult { file, x, y } => {
                let (ctx, c) = sio::parse_cubical(&read_input(file)?)?;
                report.set_ctx(&ctx);
                report.inputs.push(format!("semifield from {file}"));
                let xe = ctx.decode(*x)?;
                let ye = ctx.decode(*y)?;
                report.out(sio::write_elem(c.mult(xe, ye, &ctx), &ctx));
            }
            SemifieldCmd::Check { file } => {
                let (ctx, c) = sio::parse_cubical(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let ok = c.is_presemifield(&ctx);
                report.out(format!("presemifield: {ok}"));
                report.check("presemifield", ok, "");
                falsified = !ok;
            }
            SemifieldCmd::Nuclei { file } => {
                let (ctx, c) = sio::parse_cubical(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let nu = c.nuclei(&ctx)?;
                report.out(format!(
                    "nuclei: left={} middle={} right={} centre={}",
                    nu.left, nu.middle, nu.right, nu.centre
                ));
            }
            SemifieldCmd::Knuth { file, word } => {
                let (ctx, c) = sio::parse_cubical(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let out = c.knuth(knuth_word(word)?, &ctx)?;
                for line in sio::write_cubical(&out, &ctx).lines() {
                    report.out(line);
                }
            }
            SemifieldCmd::Spread { file } => {
                let (ctx, c) = sio::parse_cubical(&read_input(file)?)?;
                report.set_ctx(&ctx);
                spread_lines(report, &c.spread_of(&ctx)?, &ctx);
            }
        },
        Command::Bel { cmd } => match cmd {
            BelCmd::Check { file } => {
                let (ctx, b) = sio::parse_bel(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let routes = bel::belprop_routes(&b, &ctx)?;
                let is_bel = b.is_bel(&ctx)?;
                report.out(format!("bel: {is_bel}"));
                report.check("routes-agree", routes.all_agree(), format!("{routes:?}"));
                report.check("bel", is_bel, "");
                falsified = !is_bel || !routes.all_agree();
            }
            BelCmd::Mult { file, x, y } => {
                let (ctx, b) = sio::parse_bel(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let xe = ctx.decode(*x)?;
                let ye = ctx.decode(*y)?;
                report.out(sio::write_elem(b.mult(xe, ye, &ctx), &ctx));
            }
            BelCmd::Cubical { file } => {
                let (ctx, b) = sio::parse_bel(&read_input(file)?)?;
                report.set_ctx(&ctx);
                for line in sio::write_cubical(&b.to_cubical(&ctx), &ctx).lines() {
                    report.out(line);
                }
            }
            BelCmd::Spread { file } => {
                let (ctx, b) = sio::parse_bel(&read_input(file)?)?;
                report.set_ctx(&ctx);
                spread_lines(report, &b.bel_spread(&ctx)?, &ctx);
            }
            BelCmd::Reduce { file } => {
                let (ctx, b) = sio::parse_bel(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let red = b.reduce_r(&ctx)?;
                for line in sio::write_bel(&red, &ctx).lines() {
                    report.out(line);
                }
            }
            BelCmd::Transpose { file } => {
                let (ctx, b) = sio::parse_bel(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let t = b.perp_transpose(&ctx)?;
                for line in sio::write_bel(&t, &ctx).lines() {
                    report.out(line);
                }
            }
            BelCmd::Symplectic { file } => {
                let (ctx, c) = sio::parse_cubical(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let cfg = bel::symplectic_config(&c, &ctx)?;
                for line in sio::write_bel(&cfg, &ctx).lines() {
                    report.out(line);
                }
            }
        },
        Command::Rank2 { cmd } => match cmd {
            Rank2Cmd::Normalize { file } => {
                let (ctx, b) = sio::parse_bel(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let norm = rank2::normalize(&b, &ctx)?;
                report.out(format!(
                    "move: lambda={} nu={}",
                    sio::write_elem(norm.lambda, &ctx),
                    sio::write_elem(norm.nu, &ctx)
                ));
                for line in sio::write_rank2(&norm.pair, &ctx).lines() {
                    report.out(line);
                }
            }
            Rank2Cmd::S { file } | Rank2Cmd::E { file } | Rank2Cmd::T { file } => {
                let (ctx, p) = sio::parse_rank2(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let out = match cmd {
                    Rank2Cmd::S { .. } => p.op_s(&ctx)?,
                    Rank2Cmd::E { .. } => p.op_e(&ctx)?,
                    _ => p.op_t(&ctx)?,
                };
                for line in sio::write_rank2(&out, &ctx).lines() {
                    report.out(line);
                }
            }
            Rank2Cmd::Orbit8 { file } => {
                let (ctx, p) = sio::parse_rank2(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let orbit = p.orbit8(&ctx)?;
                report.out(format!("orbit size: {}", orbit.len()));
                for (word, pair) in orbit {
                    report.out(format!(
                        "{word}: {} {}",
                        sio::write_linpoly(&pair.a, &ctx),
                        sio::write_linpoly(&pair.b, &ctx)
                    ));
                }
            }
            Rank2Cmd::Stab { params, phi, phi2 } => {
                let (ctx, p) = gtf_from_args(params)?;
                report.set_ctx(&ctx);
                let phi = sio::parse_stab(phi, &ctx)?;
                let phi2 = sio::parse_stab(phi2, &ctx)?;
                let out = rank2::stab_apply(&p, &phi, &phi2, &ctx)?;
                report.out(sio::write_gtf(&out, &ctx));
            }
            Rank2Cmd::Table24 { file } => {
                let (ctx, p) = sio::parse_rank2(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let cells = rank2::table24(&p, &ctx)?;
                for cell in &cells {
                    report.check(
                        format!("cell-{}-{}", cell.row, cell.col),
                        cell.matches_closed_form,
                        "",
                    );
                }
                let bad = cells.iter().filter(|c| !c.matches_closed_form).count();
                report.out(format!(
                    "table24: {} cells, {} mismatching",
                    cells.len(),
                    bad
                ));
                falsified = bad > 0;
            }
        },
        Command::Iso { cmd } => match cmd {
            IsoCmd::Test { file1, file2 } => {
                let (ctx, c1) = sio::parse_cubical(&read_input(file1)?)?;
                let (ctx2, c2) = sio::parse_cubical(&read_input(file2)?)?;
                if (ctx.p(), ctx.e(), ctx.n()) != (ctx2.p(), ctx2.e(), ctx2.n()) {
                    return Err(semifields::Error::InvalidArgument(
                        "the two inputs live in different fields".into(),
                    ));
                }
                report.set_ctx(&ctx);
                match isotopy::isotopic_bruteforce(&c1, &c2, &ctx, cli.budget, cli.jobs)? {
                    Some(iso) => {
                        report.out("isotopic: true");
                        for line in sio::write_isotopism(&iso, &ctx).lines() {
                            report.out(line);
                        }
                    }
                    None => report.out("isotopic: false"),
                }
            }
            IsoCmd::Invariants { file } => {
                let (ctx, c) = sio::parse_cubical(&read_input(file)?)?;
                report.set_ctx(&ctx);
                let rec = isotopy::invariants(&c, &ctx)?;
                report.out(format!(
                    "invariants: q={} n={} left={} middle={} right={} centre={}",
                    rec.q,
                    rec.n,
                    rec.nuclei.left,
                    rec.nuclei.middle,
                    rec.nuclei.right,
                    rec.nuclei.centre
                ));
            }
        },
        Command::Verify { cmd } => match cmd {
            VerifyCmd::All { q, n, only } => {
                if let (Some(q), Some(n)) = (q, n) {
                    report.context =
                        Some(format!("echo q={q} n={n} (criteria pin their own fields)"));
                }
                let ids: Vec<usize> = match only {
                    Some(list) => list
                        .split(',')
                        .map(|t| {
                            t.trim().parse().map_err(|_| {
                                semifields::Error::Parse(format!("bad criterion id {t:?}"))
                            })
                        })
                        .collect::<Result<_, _>>()?,
                    None => (1..=12).collect(),
                };
                for id in ids {
                    let outcome = verify::run_one(id, cli.seed, cli.jobs);
                    eprintln!("criterion {} took {} ms", outcome.id, outcome.millis);
                    report.check(
                        format!("criterion-{:02}-{}", outcome.id, outcome.name),
                        outcome.pass,
                        outcome.detail.clone(),
                    );
                }
                falsified = report.failed_checks() > 0;
            }
        },
    }
    Ok(if falsified { 1 } else { 0 })
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = Report {
        command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
        seed: cli.seed,
        ..Report::default()
    };
    let code = match run(&cli, &mut report) {
        Ok(code) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string(&report).expect("report serializes")
                );
            } else {
                print!("{}", report.render_text());
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    eprintln!("wall_ms: {}", start.elapsed().as_millis());
    std::process::exit(code);
}
