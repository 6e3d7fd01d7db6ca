//! `topcoh` command line: one JSON report on stdout, a human summary on stderr.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
//! 3 resource guard or overflow.

pub mod instance;
pub mod wire;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::annihilator::{ann_bounds, gamma, height_report};
use crate::cech::{annihilation_check, cech_ranks, DegreeBox, Verdict};
use crate::cohomdim::cd;
use crate::error::{invalid, Error, Result};
use crate::linalg::FieldSpec;
use crate::lynch::{bahmanpour, build_instance, search_family, singh_walther, verify_instance, LynchReport};
use crate::monomial::{Monomial, VarSet};
use crate::sr_complex::{QuotientIdeal, QuotientRing};

use instance::{parse_monomial, read_instance, Instance};
use wire::{AnnBoundsWire, AnnCheckWire, CdWire, CechRanksWire, GammaWire, LynchWire, SearchWire};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "topcoh", version, about = "Top local cohomology of squarefree monomial quotients")]
struct Cli {
    /// Coefficient field: `Q` or `Fp:<prime>`; overrides the instance file.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    /// Suppress the human summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cohomological dimension with its per-prime breakdown.
    Cd { instance: PathBuf },
    /// Lower and upper bounds for the annihilator of the top local cohomology.
    AnnBounds { instance: PathBuf },
    /// The torsion submodule, as a lift to the polynomial ring.
    Gamma { instance: PathBuf },
    /// The three-prime counterexample family.
    Lynch {
        #[command(subcommand)]
        command: LynchCommand,
    },
    /// Brute-force Čech complex checks in a box of degrees.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
enum LynchCommand {
    /// Verify one instance; sets are comma-separated 1-based indices.
    Verify {
        #[arg(long)]
        d: usize,
        #[arg(long = "X", value_delimiter = ',', required = true)]
        x: Vec<usize>,
        #[arg(long = "Y", value_delimiter = ',', required = true)]
        y: Vec<usize>,
        #[arg(long = "Z", value_delimiter = ',', required = true)]
        z: Vec<usize>,
        #[arg(long = "Xp", value_delimiter = ',', required = true)]
        xp: Vec<usize>,
        #[arg(long = "Yp", value_delimiter = ',', required = true)]
        yp: Vec<usize>,
    },
    /// `singh-walther`, or `bahmanpour` with `--d` (default 7) and `--l` (default d).
    Fixture {
        name: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Verify every canonical instance with 3 <= d <= max-d.
    Search {
        #[arg(long = "max-d")]
        max_d: usize,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Ranks of every `H^i` in every degree of the box.
    Ranks { instance: PathBuf },
    /// Whether a monomial kills `H^i` throughout the box.
    Ann {
        instance: PathBuf,
        /// `x*y^2`, `x·y^2` or `1`.
        #[arg(long)]
        monomial: String,
        /// Cohomological degree; defaults to the cohomological dimension.
        #[arg(long)]
        i: Option<usize>,
    },
}

struct Outcome {
    json: String,
    summary: String,
    ok: bool,
}

/// Runs the CLI with process stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(args, &mut out, &mut err);
    let _ = std::io::stdout().write_all(&out);
    let _ = std::io::stderr().write_all(&err);
    code
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_INVALID
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.json);
            if !cli.quiet {
                let _ = err.write_all(o.summary.as_bytes());
            }
            if o.ok {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidInput(_) => EXIT_INVALID,
                Error::Guard(_) | Error::Overflow(_) => EXIT_GUARD,
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T, pretty: bool) -> String {
    let r = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    r.expect("report types serialize")
}

struct Loaded {
    inst: Instance,
    ring: QuotientRing,
    field: FieldSpec,
}

impl Loaded {
    fn load(path: &Path, flag: Option<FieldSpec>) -> Result<Self> {
        let inst = read_instance(path)?;
        let ring = QuotientRing::new(inst.j.clone())?;
        let field = flag.or(inst.field).unwrap_or_default();
        Ok(Loaded { inst, ring, field })
    }

    fn ideal(&self) -> Result<QuotientIdeal<'_>> {
        QuotientIdeal::new(&self.ring, self.inst.a.clone())
    }

    fn names(&self) -> &[String] {
        &self.inst.names
    }

    fn degree_box(&self) -> DegreeBox {
        self.inst.degree_box.clone().unwrap_or_else(|| DegreeBox::default_for(self.names().len()))
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Cd { instance } => {
            let l = Loaded::load(instance, cli.field)?;
            let rep = cd(&l.ideal()?, l.field)?;
            let mut s = format!("cd(a, R) = {} over {}\n", rep.c, rep.field);
            for &(p, c) in &rep.per_prime {
                let _ = writeln!(s, "  R/{}: cd = {c}", p.render(l.names()));
            }
            Ok(Outcome { json: to_json(&CdWire::from_core(&rep, l.names()), pretty), summary: s, ok: true })
        }
        Command::AnnBounds { instance } => {
            let l = Loaded::load(instance, cli.field)?;
            let a = l.ideal()?;
            let rep = ann_bounds(&a, l.field)?;
            let h = height_report(&rep, &a)?;
            let (names, j) = (l.names(), l.ring.j());
            let mut s = format!("c = {} over {}\n", rep.c, rep.field);
            let _ = writeln!(s, "  lower = {}", rep.lower.render_mod(j, names));
            match &rep.upper {
                Some(u) => {
                    let _ = writeln!(s, "  upper = {}", u.render_mod(j, names));
                }
                None => s.push_str("  upper: no monomial witness found\n"),
            }
            let _ = writeln!(
                s,
                "  {} ({})",
                if rep.exact { "exact" } else { "not certified exact" },
                rep.exactness_reason.as_str()
            );
            for c in h.corollary_checks.iter().filter(|c| c.applicable) {
                let _ = writeln!(s, "  [{}] {}: {}", if c.holds { "ok" } else { "FAIL" }, c.name, c.detail);
            }
            Ok(Outcome {
                json: to_json(&AnnBoundsWire::from_core(&rep, &h, names), pretty),
                summary: s,
                ok: h.all_hold(),
            })
        }
        Command::Gamma { instance } => {
            let l = Loaded::load(instance, cli.field)?;
            let g = gamma(&l.ideal()?)?;
            let s = format!("Γ_a(R) = {}\n", g.render_mod(l.ring.j(), l.names()));
            Ok(Outcome { json: to_json(&GammaWire::from_core(&g, l.ring.j(), l.names()), pretty), summary: s, ok: true })
        }
        Command::Lynch { command } => lynch(command, cli.field.unwrap_or_default(), pretty),
        Command::Oracle { command } => oracle(command, cli.field, pretty),
    }
}

fn one_based(indices: &[usize], d: usize, label: &str) -> Result<VarSet> {
    let mut out = VarSet::empty();
    for &k in indices {
        if k == 0 || k > d {
            return invalid(format!("{label} index {k} is outside 1..{d}"));
        }
        out = out.with(k - 1);
    }
    Ok(out)
}

fn lynch_summary(rep: &LynchReport) -> String {
    let inst = &rep.instance;
    let n = &inst.names;
    let mut s = format!(
        "d = {}, X = {}, Y = {}, Z = {}, X' = {}, Y' = {} over {}\n",
        inst.d,
        inst.x.render(n),
        inst.y.render(n),
        inst.z.render(n),
        inst.xp.render(n),
        inst.yp.render(n),
        rep.field
    );
    for c in &rep.checklist {
        let _ = writeln!(s, "  [{}] ({}) {}", if c.pass { "ok" } else { "FAIL" }, c.id, c.computed);
        if !c.pass {
            let _ = writeln!(s, "         expected {}", c.expected);
        }
    }
    let ann = rep.ann_lift.as_ref().map_or("uncertified".to_string(), |a| a.render_mod(&inst.j, n));
    let dim_ann = rep.dim_r_mod_ann.map_or("?".to_string(), |v| v.to_string());
    let _ = writeln!(
        s,
        "  c = {}, ann = {ann}, dim R/Γ = {}, dim R/ann = {dim_ann}, gap = {}, violated = {}",
        rep.c, rep.dim_r_mod_gamma, rep.gap, rep.conjecture_violated
    );
    s
}

fn lynch(command: &LynchCommand, field: FieldSpec, pretty: bool) -> Result<Outcome> {
    let rep = match command {
        LynchCommand::Verify { d, x, y, z, xp, yp } => {
            let d = *d;
            let inst = build_instance(
                d,
                one_based(x, d, "X")?,
                one_based(y, d, "Y")?,
                one_based(z, d, "Z")?,
                one_based(xp, d, "Xp")?,
                one_based(yp, d, "Yp")?,
            )?;
            verify_instance(&inst, field)?
        }
        LynchCommand::Fixture { name, d, l } => {
            let inst = match name.as_str() {
                "singh-walther" => {
                    if d.is_some() || l.is_some() {
                        return invalid("singh-walther takes no parameters");
                    }
                    singh_walther()
                }
                "bahmanpour" => {
                    let d = d.unwrap_or(7);
                    bahmanpour(d, l.unwrap_or(d))?
                }
                other => return invalid(format!("unknown fixture {other:?}; try singh-walther or bahmanpour")),
            };
            verify_instance(&inst, field)?
        }
        LynchCommand::Search { max_d } => {
            let found = search_family(*max_d, field)?;
            let mismatched = found
                .reports
                .iter()
                .filter(|r| r.conjecture_violated != (r.gap > 0))
                .count();
            let summary = format!(
                "{} instances with d <= {}: {} checklist failures, {} violate the conjecture, {} where violation differs from |Z| > |X|\n",
                found.total(),
                max_d,
                found.failures(),
                found.violated(),
                mismatched
            );
            return Ok(Outcome {
                json: to_json(&SearchWire::from_core(&found, field), pretty),
                summary,
                ok: found.failures() == 0 && mismatched == 0,
            });
        }
    };
    Ok(Outcome { json: to_json(&LynchWire::from_core(&rep), pretty), summary: lynch_summary(&rep), ok: rep.all_pass() })
}

fn oracle(command: &OracleCommand, flag: Option<FieldSpec>, pretty: bool) -> Result<Outcome> {
    match command {
        OracleCommand::Ranks { instance } => {
            let l = Loaded::load(instance, flag)?;
            let bx = l.degree_box();
            let rep = cech_ranks(&l.ideal()?, &bx, l.field)?;
            let gens: Vec<String> = rep.generators.iter().map(|g| g.render(l.names())).collect();
            let summary = format!(
                "Čech complex on [{}] over {}: {} degrees, top nonvanishing H^i at i = {}\n",
                gens.join(", "),
                rep.field,
                rep.ranks.len(),
                rep.top_nonvanishing.map_or("none".to_string(), |i| i.to_string())
            );
            Ok(Outcome { json: to_json(&CechRanksWire::from_core(&rep, l.names()), pretty), summary, ok: true })
        }
        OracleCommand::Ann { instance, monomial, i } => {
            let l = Loaded::load(instance, flag)?;
            let a = l.ideal()?;
            let m: Monomial = parse_monomial(monomial, l.names())?;
            let i = match i {
                Some(i) => *i,
                None => cd(&a, l.field)?.c,
            };
            let bx = l.degree_box();
            let rep = annihilation_check(&m, &a, i, &bx, l.field)?;
            let verdict = match &rep.verdict {
                Verdict::AnnihilatesInBox => "annihilates H^i throughout the box".to_string(),
                Verdict::ActsNonzero { witness } => format!("acts nonzero on H^i from degree {witness:?}"),
            };
            let summary = format!(
                "{} {} (i = {i}, {} degrees checked, {} coverage gaps)\n",
                m.render(l.names()),
                verdict,
                rep.degrees_checked,
                rep.coverage_gaps
            );
            Ok(Outcome { json: to_json(&AnnCheckWire::from_core(&rep, &bx, l.names()), pretty), summary, ok: true })
        }
    }
}
