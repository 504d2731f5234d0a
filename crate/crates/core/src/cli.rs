//! The `spanfact` command line: instance loading, the per-command analyses, and the
//! config-driven pipeline. Output is a deterministic stream of [`ReportRecord`]s.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::blocks::{
    atoms, block_construction, difference_class_orbits, invariant_refinements, invariant_transversal, phase_offsets,
    phase_profile, position_system, relative_block_permutation, BlockSystem,
};
use crate::config::{Budgets, ExperimentConfig, Source};
use crate::digraph::{
    build_toy, classify_factorizations, cycle_type_families, enumerate_with_reference, initial_factorization,
    AltCycleDecomposition, CosetDigraph, Digraph2, Factorization, FactorizationClass,
};
use crate::fixtures::Fixture;
use crate::group::Presentation;
use crate::perm::{Permutation, Word};
use crate::report::{emit_table, Format, ReportRecord};
use crate::spanning::{
    check_reloc_tree, max_relocatable_tree, phase_addressing, search_sharply_transitive, splice_generators,
    verify_sharply_transitive, PrefixConvention, SharpSearch, SharpSearchBudget, TreeBudget, WordSet,
};
use crate::{exit, Error};

#[derive(Debug, Parser)]
#[command(
    name = "spanfact",
    version,
    about = "Degree-2 vertex-transitive digraphs: factorizations, blocks and spanning sets"
)]
pub struct Cli {
    /// JSON experiment config (presentation or toy, toggles, budgets).
    #[arg(long, global = true, conflicts_with = "fixture")]
    pub config: Option<PathBuf>,
    /// Built-in instance: a5-ex2, a5-ex3, morris or toy:<m>.
    #[arg(long, global = true)]
    pub fixture: Option<Fixture>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Recorded in the build record; the tool itself uses no randomness.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Node budget for tree and sharply-transitive searches.
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    /// Suppress diagnostics on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Digraph report: order, edges, strong connectivity, alternating cycles.
    Build,
    /// One record per factorization, plus class and cycle-type summaries.
    Enumerate {
        #[arg(long)]
        classify: bool,
        /// Also identify (F1, F2) with (F2, F1) when classifying.
        #[arg(long)]
        swap: bool,
    },
    /// Position system, phases, atoms, refinements and relative block permutations.
    Blocks {
        #[arg(long, default_value_t = 0)]
        bitmask: u64,
    },
    /// Largest relocatable tree of one factorization or of every class.
    TreeSearch {
        #[arg(long, default_value_t = 0)]
        bitmask: u64,
        #[arg(long)]
        all_classes: bool,
    },
    /// Sharply transitive word set containing the empty word and both factors.
    Spanning {
        #[arg(long, default_value_t = 0)]
        bitmask: u64,
        #[arg(long, value_enum, default_value_t = Method::Blocks)]
        method: Method,
    },
    /// Presentation conditions, or a word set given with --words.
    Verify {
        #[arg(long, default_value_t = 0)]
        bitmask: u64,
        /// Comma-separated walk strings, e.g. "e,1,2,12".
        #[arg(long)]
        words: Option<String>,
        /// Check the words as a relocatable tree instead of a sharply transitive set.
        #[arg(long)]
        tree: bool,
        #[arg(long, value_enum, default_value_t = Prefix::Last)]
        prefix: Prefix,
    },
    /// Every analysis enabled in the config, in pipeline order.
    Run,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// The block-derangement construction on the position system.
    Blocks,
    /// Phase-corrected addressing followed by splicing in the generators.
    Addressing,
    /// Direct backtracking search.
    Search,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Prefix {
    Last,
    First,
}

/// A loaded instance: the digraph and what classification needs.
pub struct Instance {
    pub name: String,
    pub digraph: Digraph2,
    pub presentation: Option<Presentation>,
    pub reference: Factorization,
    pub automorphisms: Vec<Permutation>,
}

impl Instance {
    pub fn load(source: &Source, name: &str) -> Result<Self, Error> {
        match source {
            Source::Toy(m) => {
                let (digraph, base) = build_toy(*m)?;
                // the toy covering group is abelian and regular, so it acts by automorphisms
                let automorphisms = vec![base.f1.clone(), base.f2.clone()];
                Ok(Instance {
                    name: name.to_string(),
                    digraph,
                    presentation: None,
                    reference: base,
                    automorphisms,
                })
            }
            Source::Presentation(p) => {
                let cd = CosetDigraph::build(p)?;
                let automorphisms = cd.default_automorphisms();
                let reference = initial_factorization(&cd.digraph);
                Ok(Instance {
                    name: name.to_string(),
                    digraph: cd.digraph,
                    presentation: Some((**p).clone()),
                    reference,
                    automorphisms,
                })
            }
        }
    }

    pub fn enumerate(&self, cap: usize) -> Result<(AltCycleDecomposition, Vec<Factorization>), Error> {
        Ok(enumerate_with_reference(&self.digraph, &self.reference, cap)?)
    }

    pub fn factorization(&self, bitmask: u64, cap: usize) -> Result<(AltCycleDecomposition, Factorization), Error> {
        let (alt, _) = self.enumerate(cap)?;
        if alt.r() < 64 && bitmask >> alt.r() != 0 {
            return Err(Error::Usage(format!(
                "bitmask {bitmask} needs more than r = {} bits",
                alt.r()
            )));
        }
        let f = alt.factorization(bitmask);
        Ok((alt, f))
    }
}

/// Records produced so far, and the error (if any) that decides the exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub records: Vec<ReportRecord>,
    pub error: Option<Error>,
}

impl Outcome {
    fn fail(mut self, e: impl Into<Error>) -> Self {
        self.error = Some(e.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(exit::OK, Error::exit_code)
    }
}

fn perm_json(p: &Permutation) -> Value {
    Value::String(p.to_cycle_string())
}

fn words_json(ws: &[Word]) -> Value {
    Value::Array(ws.iter().map(|w| Value::String(w.to_walk_string())).collect())
}

fn generators() -> [Word; 3] {
    [Word::empty(), Word::from_indices(&[1]), Word::from_indices(&[2])]
}

pub fn build_records(inst: &Instance, budgets: &Budgets, seed: Option<u64>) -> Outcome {
    let d = &inst.digraph;
    let mut rec = ReportRecord::new(&inst.name, "build")
        .with("n", d.n())
        .with("edge_count", 2 * d.n())
        .with("edges", json!(d.edges()))
        .with("strongly_connected", d.is_strongly_connected());
    if let Some(p) = &inst.presentation {
        rec.set("group_order", p.group.order());
        rec.set("subgroup_order", p.subgroup().len());
    }
    if let Some(s) = seed {
        rec.set("seed", s);
    }
    let out = Outcome::default();
    match inst.enumerate(budgets.cycle_cap) {
        Ok((alt, _)) => {
            rec.set("r", alt.r());
            rec.set(
                "alt_cycle_lengths",
                json!(alt.cycles.iter().map(Vec::len).collect::<Vec<_>>()),
            );
            Outcome {
                records: vec![rec],
                ..out
            }
        }
        Err(e) => {
            rec.set("r", Value::Null);
            Outcome {
                records: vec![rec],
                ..out
            }
            .fail(e)
        }
    }
}

/// Factorization records (with class ids when classifying), class records, and the
/// distribution of classes and factorizations over cycle types.
pub fn enumerate_records(inst: &Instance, budgets: &Budgets, classify: bool, swap: bool) -> Outcome {
    let out = Outcome::default();
    let (alt, facs) = match inst.enumerate(budgets.cycle_cap) {
        Ok(v) => v,
        Err(e) => return out.fail(e),
    };
    let classes = if classify {
        match classify_factorizations(&alt, &facs, &inst.automorphisms, swap) {
            Ok(c) => Some(c),
            Err(e) => return out.fail(e),
        }
    } else {
        None
    };
    let mut class_of = vec![None; facs.len()];
    if let Some(cs) = &classes {
        for c in cs {
            for &m in &c.members {
                class_of[m as usize] = Some(c.id);
            }
        }
    }
    let mut records = Vec::new();
    for f in &facs {
        let (t1, t2) = f.cycle_types();
        let mut r = ReportRecord::new(&inst.name, "enumerate")
            .with("kind", "factorization")
            .with("bitmask", f.orientation)
            .with("f1_type", t1.to_string())
            .with("f2_type", t2.to_string());
        if let Some(c) = class_of[f.orientation as usize] {
            r.set("class", c);
        }
        records.push(r);
    }
    if let Some(cs) = &classes {
        for c in cs {
            records.push(
                ReportRecord::new(&inst.name, "enumerate")
                    .with("kind", "class")
                    .with("class", c.id)
                    .with("bitmask", c.representative)
                    .with("f1_type", c.f1_type.to_string())
                    .with("f2_type", c.f2_type.to_string())
                    .with("size", c.size()),
            );
        }
    }
    for ((t1, t2), members) in cycle_type_families(&facs) {
        let mut r = ReportRecord::new(&inst.name, "enumerate")
            .with("kind", "family")
            .with("f1_type", t1.to_string())
            .with("f2_type", t2.to_string())
            .with("factorizations", members.len());
        if let Some(cs) = &classes {
            let n = cs.iter().filter(|c| c.f1_type == t1 && c.f2_type == t2).count();
            r.set("classes", n);
        }
        records.push(r);
    }
    let mut summary = ReportRecord::new(&inst.name, "enumerate")
        .with("kind", "summary")
        .with("r", alt.r())
        .with("factorizations", facs.len());
    if let Some(cs) = &classes {
        summary.set("classes", cs.len());
        summary.set("swap", swap);
        summary.set(
            "class_size_total",
            cs.iter().map(FactorizationClass::size).sum::<usize>(),
        );
    }
    records.push(summary);
    Outcome { records, error: None }
}

fn block_system_record(exp: &str, label: &str, f: &Factorization, bs: &BlockSystem) -> ReportRecord {
    let mut r = ReportRecord::new(exp, "blocks")
        .with("kind", "block-system")
        .with("bitmask", f.orientation)
        .with("system", label)
        .with("blocks", bs.len())
        .with("block_size", bs.blocks[0].len());
    match relative_block_permutation(f, bs) {
        Ok(rel) => {
            r.set("invariant", true);
            r.set("tau", perm_json(&rel.tau));
            r.set("derangement", rel.derangement);
        }
        Err(e) => {
            r.set("invariant", false);
            r.set("note", e.to_string());
        }
    }
    r
}

/// The block/phase report of one factorization. Non-constant phases are reported
/// with the raw offsets and returned as the outcome's error.
pub fn blocks_records(exp: &str, f: &Factorization) -> Outcome {
    let out = Outcome::default();
    let ps = match position_system(f) {
        Ok(ps) => ps,
        Err(e) => return out.fail(e),
    };
    let mut records = Vec::new();
    let mut head = ReportRecord::new(exp, "blocks")
        .with("kind", "position-system")
        .with("bitmask", f.orientation)
        .with("m", ps.m)
        .with("r", ps.r)
        .with("x", perm_json(&f.x()))
        .with("x_cycles", json!(ps.cycles));
    let phases = phase_profile(f, &ps);
    match &phases {
        Ok(pp) => {
            head.set("delta", json!(pp.delta));
            head.set("phase_counts", json!(pp.phase_counts));
        }
        Err(e) => {
            head.set("phase_error", e.to_string());
            head.set("phase_offsets", json!(phase_offsets(f, &ps)));
        }
    }
    let at = atoms(f, &ps);
    let sizes: Vec<Vec<usize>> = (0..ps.m)
        .map(|j| (0..ps.m).map(|d| at.class_size(j, d)).collect())
        .collect();
    head.set("atom_sizes", json!(sizes));
    head.set("atom_sizes_uniform", at.sizes_uniform());
    let pi = difference_class_orbits(f, &ps);
    let refs = invariant_refinements(f, &ps, &pi);
    head.set("pi", json!(pi));
    head.set("refinements", refs.len());
    head.set("invariant_refinements", refs.iter().filter(|r| r.invariant).count());
    let adapted = invariant_transversal(f, &ps);
    head.set(
        "invariant_transversal",
        adapted.as_ref().map_or(Value::Null, |q| json!(q.blocks[0])),
    );
    records.push(head);

    records.push(block_system_record(exp, "position", f, &ps.block_system()));
    if let Some(q) = adapted.filter(|q| q.blocks != ps.blocks) {
        records.push(block_system_record(
            exp,
            "position (invariant transversal)",
            f,
            &q.block_system(),
        ));
    }
    records.push(block_system_record(exp, "x-cycles", f, &ps.cycle_block_system()));
    for r in &refs {
        let label = format!("refinement {:?}", r.classes);
        match r.block_system(f.n()) {
            Some(bs) if bs.blocks != ps.blocks => records.push(block_system_record(exp, &label, f, &bs)),
            Some(_) => {}
            None => records.push(
                ReportRecord::new(exp, "blocks")
                    .with("kind", "block-system")
                    .with("bitmask", f.orientation)
                    .with("system", label)
                    .with("block_sizes", json!(r.block_sizes()))
                    .with("invariant", r.invariant)
                    .with("note", "blocks do not partition V"),
            ),
        }
    }
    Outcome {
        records,
        error: phases.err().map(Error::from),
    }
}

pub fn tree_record(
    exp: &str,
    f: &Factorization,
    class: Option<&FactorizationClass>,
    budget: &TreeBudget,
) -> (ReportRecord, bool) {
    let mut r = ReportRecord::new(exp, "tree-search").with("bitmask", f.orientation);
    if let Some(c) = class {
        r.set("class", c.id);
    }
    let (t1, t2) = f.cycle_types();
    r.set("f1_type", t1.to_string());
    r.set("f2_type", t2.to_string());
    match max_relocatable_tree(f, budget) {
        Ok(out) => {
            let checked = check_reloc_tree(
                &out.tree.words.words,
                f.f1.images(),
                f.f2.images(),
                PrefixConvention::LastApplied,
            );
            r.set("max_size", out.size());
            r.set("certified", out.certified);
            r.set(
                "spanning_tree_exists",
                if out.certified {
                    json!(out.size() == f.n())
                } else {
                    Value::Null
                },
            );
            r.set("nodes", out.nodes);
            r.set("checker", checked.err().unwrap_or_else(|| "ok".into()));
            r.set("witness", words_json(&out.tree.words.words));
            (r, out.certified)
        }
        Err(e) => {
            r.set("note", e.to_string());
            (r, false)
        }
    }
}

fn word_set_record(exp: &str, method: &str, f: &Factorization, ws: &WordSet) -> ReportRecord {
    let v = verify_sharply_transitive(ws, f);
    let has_gens = generators().iter().all(|w| ws.contains(w));
    ReportRecord::new(exp, "spanning")
        .with("bitmask", f.orientation)
        .with("method", method)
        .with("size", ws.len())
        .with("positive", ws.is_positive())
        .with("contains_generators", has_gens)
        .with("sharply_transitive", v.passes)
        .with("pairwise_relocatable", v.pairwise_relocatable)
        .with("pair_count_exact", v.pair_count_exact)
        .with("violation", v.violation.map_or(Value::Null, Value::String))
        .with("words", words_json(&ws.words))
}

pub fn spanning_records(exp: &str, f: &Factorization, method: Method, budgets: &Budgets) -> Outcome {
    let sharp = SharpSearchBudget {
        max_word_len: budgets.max_word_len,
        max_candidates: budgets.max_candidates,
        max_nodes: budgets.max_nodes,
    };
    let failure = |m: &str, e: &Error| {
        ReportRecord::new(exp, "spanning")
            .with("bitmask", f.orientation)
            .with("method", m)
            .with("error", e.to_string())
    };
    let result: Result<(String, WordSet), Error> = match method {
        Method::Blocks => position_system(f)
            .and_then(|ps| block_construction(f, &ps.block_system(), 4 * f.n(), &sharp))
            .map(|ws| ("blocks".to_string(), ws))
            .map_err(Error::from),
        Method::Addressing => position_system(f)
            .map_err(Error::from)
            .and_then(|ps| phase_addressing(f, &ps).map_err(Error::from))
            .and_then(|s0| splice_generators(&s0, f).map_err(Error::from))
            .map(|ws| ("addressing".to_string(), ws)),
        Method::Search => match search_sharply_transitive(f, &generators(), &sharp) {
            SharpSearch::Found(ws) => Ok(("search".to_string(), ws)),
            SharpSearch::Exhausted { candidates } => Err(Error::Span(crate::spanning::SpanError::Precondition(
                format!("no sharply transitive set containing e, 1, 2 among {candidates} candidate elements"),
            ))),
            SharpSearch::BudgetExceeded { nodes } => Err(Error::Budget(format!("search stopped after {nodes} nodes"))),
        },
    };
    let name = format!("{method:?}").to_lowercase();
    match result {
        Ok((m, ws)) => Outcome {
            records: vec![word_set_record(exp, &m, f, &ws)],
            error: None,
        },
        Err(e) => Outcome {
            records: vec![failure(&name, &e)],
            error: Some(e),
        },
    }
}

pub fn verify_presentation_records(exp: &str, p: &Presentation) -> Outcome {
    let mut records: Vec<ReportRecord> = p
        .validate()
        .checks
        .iter()
        .map(|c| {
            ReportRecord::new(exp, "verify")
                .with("kind", "condition")
                .with("condition", c.condition)
                .with("statement", c.statement)
                .with("holds", c.holds)
                .with("detail", c.detail.clone())
        })
        .collect();
    match p.local_action_kernel() {
        Ok(k) => records.push(
            ReportRecord::new(exp, "verify")
                .with("kind", "local-action-kernel")
                .with("order", k.order())
                .with("normal", k.normal_in_group)
                .with(
                    "elements",
                    Value::Array(k.elements.iter().map(|&i| perm_json(p.group.element(i))).collect()),
                ),
        ),
        Err(e) => {
            return Outcome {
                records,
                error: Some(e.into()),
            }
        }
    }
    Outcome { records, error: None }
}

fn parse_words(text: &str) -> Result<Vec<Word>, Error> {
    text.split(',')
        .map(|t| Word::parse_walk(t).map_err(|e| Error::Usage(format!("--words: bad token `{}`: {e}", t.trim()))))
        .collect()
}

/// Everything enabled in the config: build, enumerate (and classify), then blocks,
/// tree search and spanning for each class representative. Per-item analysis
/// failures are recorded in the stream; only budget exhaustion sets the error.
pub fn run_pipeline(cfg: &ExperimentConfig) -> Outcome {
    let inst = match Instance::load(&cfg.source, &cfg.name) {
        Ok(i) => i,
        Err(e) => return Outcome::default().fail(e),
    };
    let b = &cfg.budgets;
    let mut out = build_records(&inst, b, None);
    if out.error.is_some() {
        return out;
    }
    let a = &cfg.analysis;
    let en = enumerate_records(&inst, b, a.classify, a.swap);
    out.records.extend(en.records);
    if en.error.is_some() {
        out.error = en.error;
        return out;
    }
    let (alt, facs) = match inst.enumerate(b.cycle_cap) {
        Ok(v) => v,
        Err(e) => return out.fail(e),
    };
    let reps: Vec<(Option<FactorizationClass>, &Factorization)> = if a.classify {
        match classify_factorizations(&alt, &facs, &inst.automorphisms, a.swap) {
            Ok(cs) => cs
                .into_iter()
                .map(|c| {
                    let f = &facs[c.representative as usize];
                    (Some(c), f)
                })
                .collect(),
            Err(e) => return out.fail(e),
        }
    } else {
        facs.iter().map(|f| (None, f)).collect()
    };
    let tree_budget = TreeBudget {
        max_nodes: b.max_nodes,
        closure_cap: b.closure_cap,
    };
    for (class, f) in &reps {
        if a.blocks {
            out.records.extend(blocks_records(&cfg.name, f).records);
        }
        if a.tree_search {
            let (r, certified) = tree_record(&cfg.name, f, class.as_ref(), &tree_budget);
            out.records.push(r);
            if !certified && out.error.is_none() {
                out.error = Some(Error::Budget(format!(
                    "tree search for bitmask {} not certified",
                    f.orientation
                )));
            }
        }
        if a.spanning {
            for m in [Method::Blocks, Method::Addressing] {
                out.records.extend(spanning_records(&cfg.name, f, m, b).records);
            }
        }
    }
    out
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let mut cfg = match (&cli.config, &cli.fixture) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.display().to_string(),
                reason: e.to_string(),
            })?;
            ExperimentConfig::parse(&text)?
        }
        (None, Some(fx)) => {
            let source = match fx.presentation() {
                Some(p) => Source::Presentation(Box::new(p?)),
                None => match fx {
                    Fixture::Toy(m) => Source::Toy(*m),
                    _ => unreachable!("only toy fixtures lack a presentation"),
                },
            };
            ExperimentConfig::from_source(fx.to_string(), source)
        }
        (None, None) => return Err(Error::Usage("one of --config or --fixture is required".into())),
    };
    if let Some(n) = cli.max_nodes {
        cfg.budgets.max_nodes = n;
    }
    Ok(cfg)
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> (Outcome, Format) {
    let cfg = match load_config(cli) {
        Ok(c) => c,
        Err(e) => return (Outcome::default().fail(e), cli.format.unwrap_or_default()),
    };
    let format = cli.format.or(cfg.format).unwrap_or_default();
    let b = &cfg.budgets;
    if let Command::Run = cli.command {
        return (run_pipeline(&cfg), format);
    }
    let inst = match Instance::load(&cfg.source, &cfg.name) {
        Ok(i) => i,
        Err(e) => return (Outcome::default().fail(e), format),
    };
    let exp = cfg.name.as_str();
    let one = |bitmask: u64| inst.factorization(bitmask, b.cycle_cap).map(|(_, f)| f);
    let outcome = match &cli.command {
        Command::Build => build_records(&inst, b, cli.seed),
        Command::Enumerate { classify, swap } => enumerate_records(&inst, b, *classify, *swap),
        Command::Blocks { bitmask } => match one(*bitmask) {
            Ok(f) => blocks_records(exp, &f),
            Err(e) => Outcome::default().fail(e),
        },
        Command::TreeSearch { bitmask, all_classes } => {
            let budget = TreeBudget {
                max_nodes: b.max_nodes,
                closure_cap: b.closure_cap,
            };
            let mut out = Outcome::default();
            let targets: Result<Vec<(Option<FactorizationClass>, Factorization)>, Error> = if *all_classes {
                inst.enumerate(b.cycle_cap).and_then(|(alt, facs)| {
                    let cs = classify_factorizations(&alt, &facs, &inst.automorphisms, true)?;
                    Ok(cs
                        .into_iter()
                        .map(|c| {
                            let f = facs[c.representative as usize].clone();
                            (Some(c), f)
                        })
                        .collect())
                })
            } else {
                one(*bitmask).map(|f| vec![(None, f)])
            };
            match targets {
                Ok(ts) => {
                    for (c, f) in &ts {
                        let (r, certified) = tree_record(exp, f, c.as_ref(), &budget);
                        out.records.push(r);
                        if !certified && out.error.is_none() {
                            out.error = Some(Error::Budget(format!(
                                "tree search for bitmask {} stopped after {} nodes",
                                f.orientation, b.max_nodes
                            )));
                        }
                    }
                    out
                }
                Err(e) => out.fail(e),
            }
        }
        Command::Spanning { bitmask, method } => match one(*bitmask) {
            Ok(f) => spanning_records(exp, &f, *method, b),
            Err(e) => Outcome::default().fail(e),
        },
        Command::Verify {
            bitmask,
            words,
            tree,
            prefix,
        } => match words {
            None => match &inst.presentation {
                Some(p) => verify_presentation_records(exp, p),
                None => {
                    Outcome::default().fail(Error::Usage("the toy family has no presentation; pass --words".into()))
                }
            },
            Some(text) => match (parse_words(text), one(*bitmask)) {
                (Ok(ws), Ok(f)) => {
                    let rec = if *tree {
                        let conv = match prefix {
                            Prefix::Last => PrefixConvention::LastApplied,
                            Prefix::First => PrefixConvention::FirstApplied,
                        };
                        let res = check_reloc_tree(&ws, f.f1.images(), f.f2.images(), conv);
                        ReportRecord::new(exp, "verify")
                            .with("kind", "tree")
                            .with("bitmask", f.orientation)
                            .with("size", ws.len())
                            .with("prefix", format!("{prefix:?}").to_lowercase())
                            .with("valid", res.is_ok())
                            .with("violation", res.err().map_or(Value::Null, Value::String))
                    } else {
                        let set = WordSet::new(ws, &f);
                        let mut r = word_set_record(exp, "given", &f, &set);
                        r.command = "verify".into();
                        r.schema = "spanfact.verify/1".into();
                        r
                    };
                    Outcome {
                        records: vec![rec],
                        error: None,
                    }
                }
                (Err(e), _) | (_, Err(e)) => Outcome::default().fail(e),
            },
        },
        Command::Run => unreachable!("handled above"),
    };
    (outcome, format)
}

/// Parses `args`, runs, and returns `(exit code, stdout, stderr)`.
pub fn run_to_strings<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::CONFIG } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK {
                (code, text, String::new())
            } else {
                (code, String::new(), text)
            };
        }
    };
    let (outcome, format) = execute(&cli);
    let stdout = if outcome.records.is_empty() && outcome.error.is_some() {
        String::new()
    } else {
        emit_table(&outcome.records, format)
    };
    let stderr = match (&outcome.error, cli.quiet) {
        (Some(e), false) => format!("spanfact: {e}\n"),
        _ => String::new(),
    };
    (outcome.exit_code(), stdout, stderr)
}
