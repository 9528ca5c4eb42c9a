//! Command implementations for the `arboreal` binary.
//!
//! Every command returns its stdout text and an exit code; `main` only does
//! argument parsing and printing, so the commands are testable in-process.

use std::path::{Path, PathBuf};

use arboreal_core::dot::{graph_to_dot, tree_ball_to_dot};
use arboreal_core::format::{
    format_normal_form, normal_form_json, parse_tree_vertex, parse_word, PresentationFile,
};
use arboreal_core::tree::AuditConfig;
use arboreal_core::{
    classify, AuditReport, BallPolicy, BassSerreTree, CertificateKind, Error, GroupOrder, PresentationGraph,
    Verdict, Word,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATIONS: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;
pub const EXIT_NO_SPLITTING: u8 = 4;
pub const EXIT_RESOURCE: u8 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "arboreal",
    version,
    about = "Acylindrical arboreality for graph products of cyclic groups"
)]
pub struct Cli {
    /// TOML file with default bounds; command-line flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide acylindrical arboreality and print the certificate.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Canonical form of a word (`a^2 b c^-1`, or `@name` for a word stored in the file).
    Nf {
        file: PathBuf,
        word: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Canonical form of a product of words.
    Mul {
        file: PathBuf,
        #[arg(required = true, num_args = 1..)]
        words: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Distance between two Bass-Serre tree vertices written `A:word` / `B:word`.
    TreeDist {
        file: PathBuf,
        from: String,
        to: String,
        /// Split over this non-adjacent pair instead of the classifier's witness.
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(String, String)>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the acylindricity bound on an explicit ball of the tree.
    TreeAudit {
        file: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(String, String)>,
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Graphviz DOT for the graph, its complement, or a ball of the tree.
    ExportDot {
        file: PathBuf,
        target: DotTarget,
        /// Ball radius for `tree-ball`.
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(String, String)>,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DotTarget {
    Graph,
    Complement,
    TreeBall,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Print JSON instead of the human-readable report.
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON report to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct BoundArgs {
    /// Path length k for the audit.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub tree_radius: Option<usize>,
    #[arg(long)]
    pub element_radius: Option<usize>,
    /// Generator radius inside a vertex group when listing tree edges.
    #[arg(long)]
    pub local_radius: Option<usize>,
    /// Maximum number of group elements or tree vertices in any ball.
    #[arg(long)]
    pub ball_cap: Option<usize>,
    /// Largest |exponent| used for infinite-order generators.
    #[arg(long)]
    pub exp_bound: Option<u64>,
}

/// Defaults read from `--config`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub k: Option<usize>,
    pub tree_radius: Option<usize>,
    pub element_radius: Option<usize>,
    pub local_radius: Option<usize>,
    pub ball_cap: Option<usize>,
    pub exp_bound: Option<u64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = read(path)?;
        toml::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }

    /// Merges flags over file values over built-in defaults.
    pub fn audit_config(&self, flags: &BoundArgs) -> Result<AuditConfig, Failure> {
        let base = AuditConfig::default();
        let config = AuditConfig {
            k: flags.k.or(self.k).unwrap_or(base.k),
            tree_radius: flags.tree_radius.or(self.tree_radius).unwrap_or(base.tree_radius),
            element_radius: flags
                .element_radius
                .or(self.element_radius)
                .unwrap_or(base.element_radius),
            local_radius: flags
                .local_radius
                .or(self.local_radius)
                .unwrap_or(base.local_radius),
            policy: BallPolicy {
                exp_bound: flags
                    .exp_bound
                    .or(self.exp_bound)
                    .unwrap_or(base.policy.exp_bound),
                cap: flags.ball_cap.or(self.ball_cap).unwrap_or(base.policy.cap),
            },
        };
        for (name, value) in [
            ("k", config.k as u64),
            ("tree-radius", config.tree_radius as u64),
            ("element-radius", config.element_radius as u64),
            ("local-radius", config.local_radius as u64),
            ("ball-cap", config.policy.cap as u64),
            ("exp-bound", config.policy.exp_bound),
        ] {
            if value == 0 {
                return Err(Failure::input(format!("--{name} must be positive")));
            }
        }
        Ok(config)
    }
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    Ok((a.trim().to_string(), b.trim().to_string()))
}

/// A failed command: message for stderr plus exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn no_splitting(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_NO_SPLITTING,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownVertex(_) | Error::Input(_) | Error::Parse { .. } => EXIT_INPUT,
            Error::Degenerate(_) => EXIT_DEGENERATE,
            Error::Resource { .. } => EXIT_RESOURCE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Successful command output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

struct Loaded {
    pres: PresentationGraph,
    file: PresentationFile,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = read(path)?;
    let file = PresentationFile::parse(&text)?;
    let pres = file.presentation()?;
    Ok(Loaded { pres, file })
}

impl Loaded {
    /// A word in compact syntax, or `@name` for one of the file's words.
    fn word(&self, text: &str) -> Result<Word, Failure> {
        let body = match text.strip_prefix('@') {
            Some(name) => self
                .file
                .words
                .get(name)
                .ok_or_else(|| Failure::input(format!("no word named `{name}` in the file")))?,
            None => text,
        };
        Ok(parse_word(self.pres.graph(), body)?)
    }

    fn tree(&self, pair: Option<&(String, String)>) -> Result<BassSerreTree, Failure> {
        let graph = self.pres.graph();
        if let Some((a, b)) = pair {
            return Ok(BassSerreTree::from_pair(
                &self.pres,
                graph.index_of(a)?,
                graph.index_of(b)?,
            )?);
        }
        let verdict = classify(&self.pres)?;
        match verdict.certificate.splitting {
            Some(split) => Ok(BassSerreTree::new(&self.pres, &split)?),
            None => Err(Failure::no_splitting(format!(
                "no splitting to use: {}",
                decisive_condition(&verdict)
            ))),
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Prints JSON or the human report, and persists the JSON if asked.
fn emit(output: &OutputArgs, json: String, human: String) -> Result<String, Failure> {
    if let Some(path) = &output.out {
        write(path, &json)?;
    }
    Ok(if output.json { json } else { human })
}

/// The condition that settled the verdict, in words.
pub fn decisive_condition(verdict: &Verdict) -> String {
    match &verdict.certificate.kind {
        CertificateKind::SeparatedPair(p) => format!(
            "separated pair found: ({}, {}) at edge distance {}, common link {{{}}} generating a group of order {}",
            p.a_name,
            p.b_name,
            p.distance,
            p.link_names.join(", "),
            p.link_order
        ),
        CertificateKind::NoSeparatedPair { checked_pairs } => format!(
            "no separated pair: all {checked_pairs} non-adjacent pairs have a common link generating an infinite group"
        ),
        CertificateKind::VirtuallyCyclicWitness { missing_edge } => match missing_edge {
            Some([u, v]) => format!(
                "virtually cyclic: complete graph minus the edge {u}-{v}, finite vertex groups, both endpoints of order 2"
            ),
            None => "virtually cyclic".to_string(),
        },
        CertificateKind::CompleteGraphCase { reason } => format!("complete graph: {reason}"),
    }
}

fn classify_report(verdict: &Verdict) -> String {
    let mut out = String::new();
    out.push_str(&format!("arboreality:      {:?}\n", verdict.arboreality));
    out.push_str(&format!("virtually cyclic: {:?}\n", verdict.virtually_cyclic));
    out.push_str(&format!("AH criterion:     {:?}\n", verdict.ah_criterion));
    out.push_str(&format!("diameter:         {}\n", verdict.diameter));
    out.push_str(&format!("decided by:       {}\n", decisive_condition(verdict)));
    if let Some(split) = &verdict.certificate.splitting {
        out.push_str(&format!(
            "splitting:        G_A *_G_C G_B with A = {{{}}}, B = {{{}}}, C = {{{}}}\n",
            split.side_a_names.join(", "),
            split.side_b_names.join(", "),
            split.core_names.join(", ")
        ));
        out.push_str(&format!(
            "acylindricity:    ({}, {})\n",
            split.acyl_k, split.acyl_c
        ));
    }
    out
}

fn audit_report(report: &AuditReport) -> String {
    let mut out = String::new();
    let s = &report.splitting;
    out.push_str(&format!(
        "splitting over ({}, {}), bound |G_N| = {}\n",
        s.pair[0], s.pair[1], report.bound
    ));
    out.push_str(&format!(
        "radii: k = {}, tree {}, elements {}, local {}; exponent bound {}\n",
        report.k, report.tree_radius, report.element_radius, report.local_radius, report.exp_bound
    ));
    out.push_str(&format!(
        "tree ball: {} vertices, {} edges{}\n",
        report.tree_vertices,
        report.tree_edges,
        if report.tree_truncated { " (truncated)" } else { "" }
    ));
    out.push_str(&format!("group ball: {} elements\n", report.group_ball_size));
    out.push_str(&format!(
        "paths checked: {}, max pointwise stabiliser: {}\n",
        report.paths_checked, report.max_stabilizer_size
    ));
    if !report.bound_applies {
        out.push_str(&format!(
            "note: k < {}, the bound is not claimed for these paths\n",
            s.acyl_k
        ));
    }
    out.push_str(&format!("evidence: {}\n", report.evidence));
    if report.violations.is_empty() {
        out.push_str("violations: none\n");
    } else {
        out.push_str(&format!("violations: {}\n", report.violations.len()));
        for v in &report.violations {
            out.push_str(&format!(
                "  from {} along [{}]: {} elements\n",
                v.start,
                v.edges.join(", "),
                v.stabilizer_size
            ));
        }
    }
    out
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    match &cli.command {
        Command::Classify { file, output } => {
            let loaded = load(file)?;
            let verdict = classify(&loaded.pres)?;
            let stdout = emit(output, to_json(&verdict), classify_report(&verdict))?;
            Ok(Outcome::ok(stdout))
        }
        Command::Nf { file, word, output } => {
            let loaded = load(file)?;
            let g = loaded.pres.canonical_form(&loaded.word(word)?)?;
            let graph = loaded.pres.graph();
            let text = format_normal_form(graph, &g);
            let json = to_json(
                &serde_json::json!({ "normal_form": text, "syllables": normal_form_json(graph, &g) }),
            );
            Ok(Outcome::ok(emit(output, json, format!("{text}\n"))?))
        }
        Command::Mul { file, words, output } => {
            let loaded = load(file)?;
            let mut product = loaded.pres.identity();
            for w in words {
                let g = loaded.pres.canonical_form(&loaded.word(w)?)?;
                product = loaded.pres.multiply(&product, &g)?;
            }
            let graph = loaded.pres.graph();
            let text = format_normal_form(graph, &product);
            let json = to_json(
                &serde_json::json!({ "normal_form": text, "syllables": normal_form_json(graph, &product) }),
            );
            Ok(Outcome::ok(emit(output, json, format!("{text}\n"))?))
        }
        Command::TreeDist {
            file,
            from,
            to,
            pair,
            output,
        } => {
            let loaded = load(file)?;
            let tree = loaded.tree(pair.as_ref())?;
            let graph = loaded.pres.graph();
            let vertex = |text: &str| -> Result<_, Failure> {
                let (side, w) = parse_tree_vertex(graph, text)?;
                Ok(tree.vertex(side, &loaded.pres.canonical_form(&w)?))
            };
            let (u, v) = (vertex(from)?, vertex(to)?);
            let d = tree.distance(&u, &v);
            let label = |x: &arboreal_core::TreeVertex| {
                format!("{}:{}", x.side(), format_normal_form(graph, x.rep()))
            };
            let json = to_json(&serde_json::json!({
                "pair": tree.splitting().pair,
                "from": label(&u),
                "to": label(&v),
                "distance": d,
            }));
            Ok(Outcome::ok(emit(output, json, format!("{d}\n"))?))
        }
        Command::TreeAudit {
            file,
            pair,
            bounds,
            output,
        } => {
            let audit = config.audit_config(bounds)?;
            let loaded = load(file)?;
            let tree = loaded.tree(pair.as_ref())?;
            if tree.splitting().acyl_c == GroupOrder::Infinite {
                let s = tree.splitting();
                return Err(Failure::no_splitting(format!(
                    "({}, {}) is not a separated pair: its common link generates an infinite group",
                    s.pair[0], s.pair[1]
                )));
            }
            let report = tree.audit(&audit)?;
            let stdout = emit(output, to_json(&report), audit_report(&report))?;
            let code = if report.violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_VIOLATIONS
            };
            Ok(Outcome { stdout, code })
        }
        Command::ExportDot {
            file,
            target,
            radius,
            pair,
            bounds,
            out,
        } => {
            let loaded = load(file)?;
            let graph = loaded.pres.graph();
            let dot = match target {
                DotTarget::Graph => graph_to_dot(graph, "graph"),
                DotTarget::Complement => graph_to_dot(&graph.complement(), "complement"),
                DotTarget::TreeBall => {
                    let audit = config.audit_config(bounds)?;
                    let tree = loaded.tree(pair.as_ref())?;
                    let ball = tree.ball(*radius, audit.local_radius, &audit.policy)?;
                    tree_ball_to_dot(&tree, &ball)
                }
            };
            match out {
                Some(path) => {
                    write(path, &dot)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(dot)),
            }
        }
    }
}
