//! The `quandle` command line tool.

pub mod corpus;
pub mod report;

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use quandle_core::cocycle::check_2cocycle;
use quandle_core::constructions::{alexander, build_rtilde, conj, dihedral, ConjDirection, LaurentQuotient};
use quandle_core::homology::{cocycle_space, cohomology, is_coboundary, ChainComplex, Theory, DEFAULT_MAX_DIM};
use quandle_core::io::{parse_cyc, parse_grp, parse_qnd, write_cyc, write_qnd, QuandleFile};
use quandle_core::knots::{
    cocycle_invariant_2, cocycle_invariant_3, colorings, parse_diagram, shadow_colorings, write_diagram, KnotDiagram,
};
use quandle_core::{check_3cocycle, inner_group, is_connected, orbits, verify_good_involution, Cochain};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_MAX_ORDER: usize = 1000;

#[derive(Parser, Debug)]
#[command(name = "quandle", version, about = "Finite quandles, their homology, and knot invariants")]
pub struct Cli {
    /// Largest chain-group basis a homology computation may build
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Largest quandle order accepted or constructed
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    /// Seed for every randomised check
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a standard quandle (or braid-closure diagram) and print it
    #[command(subcommand)]
    Make(Make),
    /// Validate a .qnd file and print its basic properties
    Check { file: PathBuf },
    /// Integral homology of a quandle
    Homology {
        #[arg(long, default_value = "quandle", value_parser = parse_theory)]
        theory: Theory,
        #[arg(long)]
        degree: usize,
        file: PathBuf,
    },
    /// Cohomology with Z_m coefficients (m = 0 for the integers)
    Cohomology {
        #[arg(long)]
        degree: usize,
        #[arg(long = "mod")]
        modulus: u64,
        file: PathBuf,
    },
    /// Generators of the quandle cocycle group, as .cyc files
    Cocycles {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=3))]
        degree: u64,
        #[arg(long = "mod")]
        modulus: u64,
        /// Write cocycle-<i>.cyc files here instead of printing them
        #[arg(long)]
        out: Option<PathBuf>,
        file: PathBuf,
    },
    /// Check the 2- or 3-cocycle condition and whether the class is zero
    CheckCocycle { cochain: PathBuf, quandle: PathBuf },
    /// Colorings and state sums of knot diagrams
    #[command(subcommand)]
    Knot(Knot),
    /// Recompute the published results and print one line per check
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = Scope::Quick)]
        scope: Scope,
        /// Read the corpus from this directory instead of the built-in copy
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Append wall-clock times (makes output nondeterministic)
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum Make {
    /// R_n: i ◁ j = 2j − i mod n
    Dihedral { n: usize },
    /// Z_n[t, 1/t]/(h) with a ◁ b = ta + (1 − t)b
    Alexander {
        n: u64,
        /// e.g. `t^2+t+1` or `1,1,1`
        h: String,
    },
    /// Closure of group elements under k-fold conjugation
    Conj {
        group: PathBuf,
        /// Element indices or labels
        #[arg(required = true)]
        seeds: Vec<String>,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
        /// Use a ◁ b = b^k a b^-k
        #[arg(long)]
        left: bool,
    },
    /// R̃_{2n+1} with its good involution
    Rtilde { n: usize },
    /// Closure of a braid word such as `1,-2,1,-2`, as a .pdq diagram
    Braid {
        strands: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Knot {
    /// Count (or list) the colorings of a diagram
    Colorings {
        diagram: PathBuf,
        quandle: PathBuf,
        #[arg(long)]
        list: bool,
        /// Count shadow colorings instead
        #[arg(long)]
        shadow: bool,
    },
    /// State-sum invariant of a 2-cocycle, or of a 3-cocycle with --shadow
    Invariant {
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        shadow: bool,
        diagram: PathBuf,
        quandle: PathBuf,
    },
    /// Print the mirror image
    Mirror { diagram: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Quick,
    Full,
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    s.parse().map_err(|e: quandle_core::homology::HomologyError| e.to_string())
}

/// Exit status 1 with a message.
#[derive(Debug)]
pub struct Failure(pub String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn with_path<T, E: Display>(path: &Path, r: Result<T, E>) -> Res<T> {
    r.map_err(|e| Failure(format!("{}: {e}", path.display())))
}

struct Ctx {
    max_dim: usize,
    max_order: usize,
}

impl Ctx {
    fn quandle(&self, path: &Path) -> Res<QuandleFile> {
        let q = with_path(path, parse_qnd(&read(path)?))?;
        self.order_ok(q.quandle.order())?;
        Ok(q)
    }

    fn order_ok(&self, n: usize) -> Res<()> {
        if n > self.max_order {
            return Err(Failure(format!("quandle of order {n} exceeds --max-order {}", self.max_order)));
        }
        Ok(())
    }

    fn complex(&self, q: &QuandleFile, theory: Theory) -> Res<ChainComplex> {
        let c = if theory.is_symmetric() {
            let rho = q.rho.as_deref().ok_or_else(|| Failure(format!("the {theory} theory needs a `rho` line")))?;
            let s = verify_good_involution(&q.quandle, rho).map_err(|v| Failure(v[0].to_string()))?;
            ChainComplex::symmetric(&s, theory)
        } else {
            ChainComplex::new(&q.quandle, theory)?
        };
        Ok(c.with_max_dim(self.max_dim))
    }
}

fn yes(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit status: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Res<i32> {
    let ctx = Ctx { max_dim: cli.max_dim, max_order: cli.max_order };
    match cli.command {
        Command::Make(m) => make(&ctx, m, out)?,
        Command::Check { file } => {
            let q = ctx.quandle(&file)?;
            let x = &q.quandle;
            writeln!(out, "order {}", x.order())?;
            writeln!(out, "involutory {}", yes(x.is_involutory()))?;
            writeln!(out, "connected {}", yes(is_connected(x)))?;
            writeln!(out, "orbits {}", orbits(x).len())?;
            writeln!(out, "inner group order {}", inner_group(x).order())?;
            if q.rho.is_some() {
                writeln!(out, "rho good involution")?;
            }
        }
        Command::Homology { theory, degree, file } => {
            let q = ctx.quandle(&file)?;
            writeln!(out, "{}", ctx.complex(&q, theory)?.homology(degree)?)?;
        }
        Command::Cohomology { degree, modulus, file } => {
            let q = ctx.quandle(&file)?;
            writeln!(out, "{}", cohomology(&ctx.complex(&q, Theory::Quandle)?, degree, modulus)?)?;
        }
        Command::Cocycles { degree, modulus, out: dir, file } => {
            let q = ctx.quandle(&file)?;
            let basis = cocycle_space(&ctx.complex(&q, Theory::Quandle)?, degree as usize, modulus)?;
            match dir {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)?;
                    for (i, f) in basis.iter().enumerate() {
                        let path = dir.join(format!("cocycle-{i}.cyc"));
                        std::fs::write(&path, write_cyc(f))?;
                        writeln!(out, "{}", path.display())?;
                    }
                }
                None => {
                    for (i, f) in basis.iter().enumerate() {
                        writeln!(out, "# cocycle {i} of {}", basis.len())?;
                        write!(out, "{}", write_cyc(f))?;
                    }
                }
            }
        }
        Command::CheckCocycle { cochain, quandle } => {
            let f = with_path(&cochain, parse_cyc(&read(&cochain)?))?;
            let q = ctx.quandle(&quandle)?;
            match f.arity() {
                2 => check_2cocycle(&q.quandle, &f).map_err(|e| Failure(format!("not a cocycle: {e}")))?,
                3 => check_3cocycle(&q.quandle, &f).map_err(|e| Failure(format!("not a cocycle: {e}")))?,
                k => return Err(Failure(format!("only 2- and 3-cocycles can be checked, got arity {k}"))),
            }
            writeln!(out, "{}-cocycle mod {}", f.arity(), f.modulus())?;
            let c = is_coboundary(&ctx.complex(&q, Theory::Quandle)?, &f)?;
            writeln!(out, "coboundary {}", yes(c.is_coboundary))?;
        }
        Command::Knot(k) => knot(&ctx, k, out)?,
        Command::VerifyPaper { scope, corpus, timings } => {
            let corpus = match corpus {
                Some(dir) => corpus::Corpus::from_dir(&dir),
                None => corpus::Corpus::builtin(),
            };
            let report = report::verify_paper(scope, &corpus, cli.seed);
            write!(out, "{}", report.render(timings))?;
            return Ok(if report.all_passed() { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn make(ctx: &Ctx, m: Make, out: &mut dyn Write) -> Res<()> {
    let text = match m {
        Make::Dihedral { n } => {
            ctx.order_ok(n)?;
            if n == 0 {
                return Err(Failure("dihedral quandle needs n >= 1".into()));
            }
            write_qnd(&dihedral(n), None)
        }
        Make::Alexander { n, h } => {
            let h = LaurentQuotient::parse_polynomial(&h)?;
            let size = LaurentQuotient::new(n, &h)?.size();
            ctx.order_ok(size)?;
            write_qnd(&alexander(n, &h)?.quandle, None)
        }
        Make::Conj { group, seeds, k, left } => {
            let g = with_path(&group, parse_grp(&read(&group)?))?;
            let seeds = seeds
                .iter()
                .map(|s| {
                    if let Ok(i) = s.parse::<usize>() {
                        return Ok(i);
                    }
                    g.labels().and_then(|l| l.iter().position(|x| x == s)).ok_or_else(|| Failure(format!("no element {s:?}")))
                })
                .collect::<Res<Vec<usize>>>()?;
            let direction = if left { ConjDirection::Left } else { ConjDirection::Right };
            let q = conj(&g, k, &seeds, direction)?;
            ctx.order_ok(q.quandle.order())?;
            write_qnd(&q.quandle, None)
        }
        Make::Rtilde { n } => {
            if n == 0 || n > 3 {
                return Err(Failure("rtilde supports n = 1, 2, 3".into()));
            }
            let r = build_rtilde(n)?;
            ctx.order_ok(r.symmetric.quandle().order())?;
            write_qnd(r.symmetric.quandle(), Some(r.symmetric.rho()))
        }
        Make::Braid { strands, word } => {
            let word: Vec<i32> = if word.trim().is_empty() {
                Vec::new()
            } else {
                word.split(',').map(|g| g.trim().parse::<i32>()).collect::<Result<_, _>>()?
            };
            write_diagram(&KnotDiagram::braid_closure(strands, &word)?)
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn knot(ctx: &Ctx, k: Knot, out: &mut dyn Write) -> Res<()> {
    let diagram = |path: &Path| -> Res<KnotDiagram> { with_path(path, parse_diagram(&read(path)?)) };
    match k {
        Knot::Colorings { diagram: d, quandle, list, shadow } => {
            let d = diagram(&d)?;
            let q = ctx.quandle(&quandle)?;
            if shadow {
                let all = shadow_colorings(&d, &q.quandle);
                writeln!(out, "{}", all.len())?;
                if list {
                    for s in all {
                        writeln!(out, "{} | {}", join(&s.coloring.arc_colors), join(&s.region_colors))?;
                    }
                }
            } else {
                let all = colorings(&d, &q.quandle);
                writeln!(out, "{}", all.len())?;
                if list {
                    for c in all {
                        writeln!(out, "{}", join(&c.arc_colors))?;
                    }
                }
            }
        }
        Knot::Invariant { cocycle, shadow, diagram: d, quandle } => {
            let f: Cochain = with_path(&cocycle, parse_cyc(&read(&cocycle)?))?;
            let d = diagram(&d)?;
            let q = ctx.quandle(&quandle)?;
            let v = match (shadow, f.arity()) {
                (false, 2) => cocycle_invariant_2(&d, &q.quandle, &f)?,
                (true, 3) => cocycle_invariant_3(&d, &q.quandle, &f)?,
                (false, k) => return Err(Failure(format!("arc colorings need a 2-cocycle, got arity {k}; use --shadow for 3-cocycles"))),
                (true, k) => return Err(Failure(format!("--shadow needs a 3-cocycle, got arity {k}"))),
            };
            writeln!(out, "{v}")?;
        }
        Knot::Mirror { diagram: d } => {
            write!(out, "{}", write_diagram(&diagram(&d)?.mirror()))?;
        }
    }
    Ok(())
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}
