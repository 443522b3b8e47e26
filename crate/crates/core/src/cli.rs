//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the rendered report together with an exit code:
//! 0 on success, 1 for malformed input or usage, 2 when a mathematical
//! precondition fails.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::braid::PureBraidGroup;
use crate::character::{abelianize, Basis, Character};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::loop_braid::PureLoopBraidGroup;
use crate::projection::{
    format_strands, Obstruction, ObstructionReport, SigmaVerdict, WitnessPair,
};
use crate::raag::{self, RaagOut, RaagVerdict, SplitVerdict};
use crate::text;
use crate::words::F2ZElement;

/// Largest strand count accepted on the command line.
pub const MAX_STRANDS: usize = 16;

#[derive(Parser, Debug)]
#[command(
    name = "bns",
    version,
    about = "Σ¹ membership oracles and splitting certificates"
)]
struct Cli {
    /// Print sorted key=value lines instead of the human report.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graph invariants.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Right-angled Artin groups.
    #[command(subcommand)]
    Raag(RaagCommand),
    /// Pure braid groups PB_n.
    #[command(subcommand)]
    Braid(StrandCommand),
    /// Pure loop braid groups PLB_n.
    #[command(subcommand)]
    Loop(StrandCommand),
}

#[derive(Subcommand, Debug)]
enum GraphCommand {
    /// Separating cliques, connectivity and the Out-finiteness predicates.
    Analyze { graph: PathBuf },
}

#[derive(Subcommand, Debug)]
enum RaagCommand {
    /// Σ¹ membership of a character.
    Sigma { graph: PathBuf, character: PathBuf },
    /// Kill a commuting subgroup and test both signs.
    Kill { graph: PathBuf, words: PathBuf },
    /// Minimal dead sets forcing a character out of Σ¹.
    Complement { graph: PathBuf },
    /// Virtual splitting certificates over ℤ^k for k up to --max-k.
    SplitReport {
        #[arg(long)]
        max_k: usize,
        graph: PathBuf,
    },
    /// Compare the smallest-separating-clique invariant of two graphs.
    Compare { first: PathBuf, second: PathBuf },
}

#[derive(Args, Debug)]
struct StrandArgs {
    /// Number of strands.
    #[arg(short = 'n')]
    n: usize,
    file: PathBuf,
}

#[derive(Subcommand, Debug)]
enum StrandCommand {
    /// Σ¹ membership of a character.
    Sigma(StrandArgs),
    /// Witness pair for a dead character.
    Witness(StrandArgs),
    /// Obstruction pipeline for the subgroup generated by the given words.
    Obstruct(StrandArgs),
}

/// Output of one invocation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RenderedReport {
    pub text: String,
    /// Sorted `key=value` lines.
    pub porcelain: String,
    pub exit_code: i32,
}

#[derive(Default)]
struct Report {
    text: Vec<String>,
    fields: Vec<(String, String)>,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn field(&mut self, k: impl Into<String>, v: impl ToString) {
        self.fields.push((k.into(), v.to_string()));
    }

    fn finish(mut self, exit_code: i32) -> RenderedReport {
        self.fields.sort();
        let porcelain = self
            .fields
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect();
        let mut text = self.text.join("\n");
        text.push('\n');
        RenderedReport {
            text,
            porcelain,
            exit_code,
        }
    }
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
}

impl Inputs<'_> {
    fn read(&mut self, path: &PathBuf) -> Result<String> {
        if path.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
        }
    }

    fn graph(&mut self, path: &PathBuf) -> Result<Graph> {
        text::parse_graph(&self.read(path)?).map_err(|e| in_file(path, e))
    }

    fn character(&mut self, path: &PathBuf, basis: &Basis) -> Result<Character> {
        text::parse_character(&self.read(path)?, basis).map_err(|e| in_file(path, e))
    }

    fn words(&mut self, path: &PathBuf, basis: &Basis) -> Result<Vec<crate::words::Word>> {
        text::parse_words(&self.read(path)?, basis).map_err(|e| in_file(path, e))
    }
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { .. } => Error::InvalidInput(format!("{}: {e}", path.display())),
        other => other,
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> RenderedReport
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            let mut r = Report::default();
            r.line(rendered.trim_end());
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                r.field("info", e.kind().as_str().unwrap_or("help"));
                return r.finish(0);
            }
            r.field("error.kind", "usage");
            let summary: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            r.field(
                "error.message",
                summary.join(" ").trim_start_matches("error: "),
            );
            return r.finish(1);
        }
    };
    let mut inputs = Inputs { stdin };
    let mut r = Report::default();
    match dispatch(&cli.command, &mut inputs, &mut r) {
        Ok(()) => r.finish(0),
        Err(e) => {
            let mut r = Report::default();
            let (kind, code) = if e.is_input_error() {
                ("input", 1)
            } else {
                ("precondition", 2)
            };
            r.line(format!("error: {e}"));
            r.field("error.kind", kind);
            r.field("error.message", e.to_string().replace('\n', " "));
            r.finish(code)
        }
    }
}

fn dispatch(cmd: &Command, io: &mut Inputs<'_>, r: &mut Report) -> Result<()> {
    match cmd {
        Command::Graph(GraphCommand::Analyze { graph }) => graph_analyze(&io.graph(graph)?, r),
        Command::Raag(c) => raag_command(c, io, r),
        Command::Braid(c) => braid_command(c, io, r),
        Command::Loop(c) => loop_command(c, io, r),
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "absent".to_owned(), |v| v.to_string())
}

fn graph_analyze(g: &Graph, r: &mut Report) -> Result<()> {
    let witness = g.min_separating_clique_witness();
    let out = g.out_finiteness_predicates();
    r.field("vertices", g.vertex_count());
    r.field("edges", g.edge_count());
    r.field("connected", g.is_connected());
    r.field("clique", g.is_complete());
    r.field("min_separating_clique", opt(witness.map(|w| w.len())));
    r.field(
        "min_separating_clique.witness",
        opt(witness.map(|w| g.format_set(w))),
    );
    let star = out.separating_closed_star.map(|v| g.label(v).to_owned());
    let link = out
        .link_in_star
        .map(|(v, w)| format!("{},{}", g.label(v), g.label(w)));
    r.field("out.separating_closed_star", opt(star.clone()));
    r.field("out.link_in_star", opt(link.clone()));
    r.field("out.finite_criterion", out.criterion_holds());

    r.line(format!(
        "graph with {} vertices and {} edges ({}{})",
        g.vertex_count(),
        g.edge_count(),
        if g.is_connected() {
            "connected"
        } else {
            "disconnected"
        },
        if g.is_complete() { ", complete" } else { "" }
    ));
    r.line(match witness {
        Some(w) => format!(
            "smallest separating clique: {} of size {}",
            g.format_set(w),
            w.len()
        ),
        None => "no separating clique".into(),
    });
    r.line(format!("separating closed star: {}", opt(star)));
    r.line(format!("link inside another star: {}", opt(link)));
    r.line(format!(
        "out-finiteness criterion: {}",
        if out.criterion_holds() {
            "holds"
        } else {
            "fails"
        }
    ));
    Ok(())
}

fn raag_verdict_fields(r: &mut Report, prefix: &str, g: &Graph, v: &RaagVerdict) {
    let key = |s: &str| {
        if prefix.is_empty() {
            s.to_owned()
        } else {
            format!("{prefix}.{s}")
        }
    };
    match v {
        RaagVerdict::In => r.field(key("verdict"), "IN"),
        RaagVerdict::Out(out) => {
            r.field(key("verdict"), "OUT");
            let (reason, set) = match out {
                RaagOut::ZeroCharacter => ("zero-character", None),
                RaagOut::LivingDisconnected(s) => ("living-disconnected", Some(*s)),
                RaagOut::NotDominating(s) => ("not-dominating", Some(*s)),
            };
            r.field(key("reason"), reason);
            if let Some(s) = set {
                r.field(key("set"), g.format_set(s));
            }
        }
    }
}

fn raag_command(cmd: &RaagCommand, io: &mut Inputs<'_>, r: &mut Report) -> Result<()> {
    match cmd {
        RaagCommand::Sigma { graph, character } => {
            let g = io.graph(graph)?;
            let c = io.character(character, &raag::vertex_basis(&g))?;
            let v = raag::sigma_membership(&g, &c)?;
            r.field("character", &c);
            raag_verdict_fields(r, "", &g, &v);
            r.line(v.render(&g));
        }
        RaagCommand::Kill { graph, words } => {
            let g = io.graph(graph)?;
            let gens = io.words(words, &raag::vertex_basis(&g))?;
            let k = raag::kill_and_test(&g, &gens)?;
            r.field("generators", gens.len());
            r.field("lattice.rank", k.lattice.rank());
            for (i, row) in k.lattice.rows().iter().enumerate() {
                let row: Vec<String> = row.iter().map(ToString::to_string).collect();
                r.field(format!("lattice.row.{i}"), format!("[{}]", row.join(",")));
            }
            r.field("kernel.rank", k.kernel.rank());
            for i in 0..k.kernel.rank() {
                r.field(format!("kernel.row.{i}"), k.kernel.row(i));
            }
            r.field("dead", g.format_set(k.dead));
            r.field("specialized", &k.specialized);
            raag_verdict_fields(r, "plus", &g, &k.plus);
            raag_verdict_fields(r, "minus", &g, &k.minus);
            r.line(format!("saturated lattice rank {}", k.lattice.rank()));
            r.line(format!("dead clique {}", g.format_set(k.dead)));
            r.line(format!("killing character {}", k.specialized));
            r.line(format!("+chi: {}", k.plus.render(&g)));
            r.line(format!("-chi: {}", k.minus.render(&g)));
        }
        RaagCommand::Complement { graph } => {
            let g = io.graph(graph)?;
            let supports = raag::sigma_complement_supports(&g)?;
            r.field("count", supports.len());
            for (i, s) in supports.iter().enumerate() {
                r.field(format!("support.{i}"), g.format_set(*s));
            }
            if supports.is_empty() {
                r.line("every nonzero character lies in the invariant");
            }
            for s in &supports {
                r.line(g.format_set(*s));
            }
        }
        RaagCommand::SplitReport { max_k, graph } => {
            let g = io.graph(graph)?;
            let rep = raag::virtual_split_report(&g, *max_k);
            r.field("vertices", rep.vertices);
            r.field("edges", rep.edges);
            r.field("clique", rep.is_clique);
            r.field(
                "min_separating_clique",
                opt(rep.min_separating_clique.map(|w| w.len())),
            );
            r.field(
                "min_separating_clique.witness",
                opt(rep.min_separating_clique.map(|w| g.format_set(w))),
            );
            r.field("nf_certificate", rep.nf_certificate);
            r.field("invariant", rep.invariant);
            if rep.is_clique {
                r.line("complete graph: Z^n splits over Z^(n-1) as an HNN extension, no claims");
            }
            for (k, v) in rep.verdicts.iter().enumerate() {
                let (key, line) = match v {
                    SplitVerdict::NoVirtualSplit => (
                        "no-virtual-split".to_owned(),
                        format!("k={k}: not commensurable to any group splitting over Z^{k}"),
                    ),
                    SplitVerdict::SplitWitness(c) => (
                        format!("splits {}", g.format_set(*c)),
                        format!(
                            "k={k}: splits over Z^{} along separating clique {}",
                            c.len(),
                            g.format_set(*c)
                        ),
                    ),
                    SplitVerdict::NoClaim => ("no-claim".to_owned(), format!("k={k}: no claim")),
                };
                r.field(format!("k.{k}"), key);
                if !rep.is_clique {
                    r.line(line);
                }
            }
            if rep.nf_certificate {
                r.line("not commensurable to any group splitting over an NF subgroup");
            }
        }
        RaagCommand::Compare { first, second } => {
            let (g1, g2) = (io.graph(first)?, io.graph(second)?);
            let c = raag::commensurability_compare(&g1, &g2);
            r.field("first", c.first);
            r.field("second", c.second);
            r.field("verdict", c.verdict);
            r.line(format!("invariants: {} vs {}", c.first, c.second));
            r.line(c.verdict.to_string());
        }
    }
    Ok(())
}

fn check_strands(n: usize) -> Result<()> {
    if n > MAX_STRANDS {
        return Err(Error::Unsupported(format!(
            "at most {MAX_STRANDS} strands on the command line"
        )));
    }
    Ok(())
}

fn strand_verdict_fields<B: std::fmt::Display>(r: &mut Report, prefix: &str, v: &SigmaVerdict<B>) {
    let key = |s: &str| {
        if prefix.is_empty() {
            s.to_owned()
        } else {
            format!("{prefix}.{s}")
        }
    };
    match v {
        SigmaVerdict::In => r.field(key("verdict"), "IN"),
        SigmaVerdict::Out(_) => {
            r.field(key("verdict"), "OUT");
            match v.dead_projection() {
                Some(p) => {
                    r.field(key("base"), &p.base);
                    r.field(key("kept"), format_strands(&p.kept));
                }
                None => r.field(key("base"), "zero-character"),
            }
        }
    }
}

fn witness_fields(r: &mut Report, basis: &Basis, w: &WitnessPair, red: &(F2ZElement, F2ZElement)) {
    r.field("witness.first", w.first.display(basis));
    r.field("witness.second", w.second.display(basis));
    r.field("witness.designated", format_strands(&w.designated));
    r.field("witness.reduced.first", &red.0);
    r.field("witness.reduced.second", &red.1);
    r.field(
        "witness.generate_free",
        red.0.generates_free_group_with(&red.1),
    );
    r.line(format!(
        "witness pair ({}, {}) on strands {}",
        w.first.display(basis),
        w.second.display(basis),
        format_strands(&w.designated)
    ));
    r.line(format!(
        "reduced to {} and {} (free pair: {})",
        red.0,
        red.1,
        red.0.generates_free_group_with(&red.1)
    ));
}

fn obstruction_fields<B: std::fmt::Display>(
    r: &mut Report,
    basis: &Basis,
    rep: &ObstructionReport<B>,
) {
    r.field("lattice.rank", rep.lattice.rank());
    r.field("killing.rank", rep.killing.rank());
    r.line(format!(
        "saturated lattice rank {}, killing characters {}",
        rep.lattice.rank(),
        rep.killing.rank()
    ));
    match &rep.outcome {
        Obstruction::Certificate {
            character,
            plus,
            minus,
        } => {
            r.field("branch", "certificate");
            r.field("character", character);
            strand_verdict_fields(r, "plus", plus);
            strand_verdict_fields(r, "minus", minus);
            r.line(format!("certificate: character {character}"));
            r.line(format!("+chi: {plus}"));
            r.line(format!("-chi: {minus}"));
        }
        Obstruction::Covered {
            locus,
            character,
            witness,
            reduced,
        } => {
            r.field("branch", "covered");
            r.field("character", character);
            r.field("locus.base", &locus.base);
            r.field("locus.kept", format_strands(&locus.kept));
            r.line(format!(
                "covered by dead locus {} {}; generic killing character {character}",
                locus.base,
                format_strands(&locus.kept)
            ));
            witness_fields(r, basis, witness, reduced);
        }
    }
}

fn braid_command(cmd: &StrandCommand, io: &mut Inputs<'_>, r: &mut Report) -> Result<()> {
    let (StrandCommand::Sigma(a) | StrandCommand::Witness(a) | StrandCommand::Obstruct(a)) = cmd;
    check_strands(a.n)?;
    let group = PureBraidGroup::new(a.n)?;
    let basis = group.basis().clone();
    r.field("n", a.n);
    match cmd {
        StrandCommand::Sigma(_) => {
            let c = io.character(&a.file, &basis)?;
            let v = group.sigma_membership(&c)?;
            r.field("character", &c);
            strand_verdict_fields(r, "", &v);
            r.line(v.to_string());
        }
        StrandCommand::Witness(_) => {
            let c = io.character(&a.file, &basis)?;
            let w = group.witness_pair(&c)?;
            let red = group.reduce_witness(&w)?;
            witness_fields(r, &basis, &w, &red);
        }
        StrandCommand::Obstruct(_) => {
            let words = io.words(&a.file, &basis)?;
            let gens = words
                .iter()
                .map(|w| abelianize(&basis, w))
                .collect::<Result<Vec<_>>>()?;
            let rep = group.nf_obstruction_demo(&gens)?;
            obstruction_fields(r, &basis, &rep);
        }
    }
    Ok(())
}

fn loop_command(cmd: &StrandCommand, io: &mut Inputs<'_>, r: &mut Report) -> Result<()> {
    let (StrandCommand::Sigma(a) | StrandCommand::Witness(a) | StrandCommand::Obstruct(a)) = cmd;
    check_strands(a.n)?;
    let group = PureLoopBraidGroup::new(a.n)?;
    let basis = group.basis().clone();
    r.field("n", a.n);
    match cmd {
        StrandCommand::Sigma(_) => {
            let c = io.character(&a.file, &basis)?;
            let v = group.sigma_membership(&c)?;
            r.field("character", &c);
            strand_verdict_fields(r, "", &v);
            r.line(v.to_string());
        }
        StrandCommand::Witness(_) => {
            let c = io.character(&a.file, &basis)?;
            let w = group.witness_pair(&c)?;
            let red = group.reduce_witness(&w)?;
            witness_fields(r, &basis, &w, &red);
        }
        StrandCommand::Obstruct(_) => {
            let words = io.words(&a.file, &basis)?;
            let gens = words
                .iter()
                .map(|w| abelianize(&basis, w))
                .collect::<Result<Vec<_>>>()?;
            let rep = group.nf_obstruction_demo(&gens)?;
            obstruction_fields(r, &basis, &rep);
        }
    }
    Ok(())
}
