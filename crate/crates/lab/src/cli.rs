//! The `pwa` command line. Exit codes: 0 accept or success, 1 reject or
//! disagreement, 2 usage, 3 invalid input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use pwa_core::constructions::alternating_to_cover;
use pwa_core::gallery::{self, complement_max, FReading};
use pwa_core::semantics::{
    build_arena, extract_branch, find_pumping_pairs, pump_branch, replay, solve, Arena, Branch, NodeKind, PumpingPair,
    WinningSet,
};
use pwa_core::{classify, validate_automaton, Alphabet, Automaton, Cell, Domain, Effective};
use serde_json::{json, Value};

use crate::harness::{self, Decider, Exec, Instances, Oracle, Plan, Sampling};
use crate::io::{self, Grid};
use crate::report::{Record, Reporter};
use crate::{load_automaton, read_file, LabError};

#[derive(Parser, Debug)]
#[command(name = "pwa", version, about = "Alternating plane-walking automata on tori and finite patterns")]
pub struct Cli {
    /// Print one JSON record per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Report 0 for every `millis` field.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check an automaton file.
    Validate { automaton: String },
    /// Quantifier-alternation level.
    Classify { automaton: String },
    /// Decide acceptance of one torus or pattern.
    Accepts {
        automaton: String,
        #[command(flatten)]
        input: GridInput,
        /// Strategy on acceptance, attractor depth per rejecting cell otherwise.
        #[arg(long)]
        witness: bool,
    },
    /// Compare two deciders on enumerated or sampled instances.
    Compare {
        a: String,
        /// Second automaton; omit when `--oracle` is given.
        b: Option<String>,
        #[arg(long, conflicts_with = "b")]
        oracle: Option<String>,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// One verdict per enumerated or sampled instance.
    Enum {
        automaton: String,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Size and clauses of the powerset cover.
    Cover {
        automaton: String,
        /// Forbidden windows to list.
        #[arg(long, default_value_t = 8)]
        windows: usize,
    },
    /// Extract a branch, replay it and list its pumping pairs.
    Pump {
        automaton: String,
        #[command(flatten)]
        input: GridInput,
        /// Start cell; defaults to the first rejecting start, else the first start.
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_hyphen_values = true)]
        start: Option<Vec<i32>>,
        #[arg(long, default_value_t = 64)]
        steps: usize,
        /// Repeat the segment of pair I J K times and replay the result.
        #[arg(long, num_args = 3, value_names = ["I", "J", "K"])]
        repeat: Option<Vec<usize>>,
    },
    /// Print a grid in the text format.
    Render(RenderArgs),
    /// Built-in automata and families.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct GridInput {
    #[arg(long)]
    pub torus: Option<PathBuf>,
    #[arg(long)]
    pub pattern: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PlanArgs {
    /// Every torus up to P x Q.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub max_torus: Option<Vec<u32>>,
    /// Every full rectangular pattern up to W x H.
    #[arg(long, value_name = "WxH", value_parser = parse_wxh)]
    pub patterns: Option<(u32, u32)>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random tori bounded by `--sample-max`.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, value_name = "WxH", value_parser = parse_wxh, default_value = "3x3")]
    pub sample_max: (u32, u32),
    /// Planted cone labyrinths.
    #[arg(long)]
    pub planted: Option<u64>,
    /// Worker threads; 1 is sequential, 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct RenderArgs {
    /// Re-print a grid file.
    pub file: Option<PathBuf>,
    /// The labyrinth without exit of order N.
    #[arg(long, value_name = "N")]
    pub xn: Option<u32>,
    /// Its periodic version: width N+2, height H.
    #[arg(long, num_args = 2, value_names = ["N", "H"])]
    pub xn_torus: Option<Vec<u32>>,
    /// The rectangle family with N and K.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    pub kari_moore: Option<Vec<u32>>,
    /// A planted labyrinth from this seed.
    #[arg(long, value_name = "SEED")]
    pub planted: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum GalleryAction {
    List,
    Show {
        name: String,
    },
    /// Automaton JSON, to stdout or a file.
    Export {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest element outside the counting set under both readings.
    KariMooreAudit {
        #[arg(long, default_value_t = 8)]
        max_n: u64,
    },
}

fn parse_wxh(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w = w.trim().parse::<u32>().map_err(|e| e.to_string())?;
    let h = h.trim().parse::<u32>().map_err(|e| e.to_string())?;
    Ok((w, h))
}

/// Parses `args` (program name first) and runs; errors are written to `err`.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mut rep = Reporter::new(out, cli.json, !cli.no_timing);
    match run(cli.command, &mut rep) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

type Rep<'a> = Reporter<&'a mut dyn Write>;

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn w<T>(r: std::io::Result<T>) -> Result<T, LabError> {
    r.map_err(|source| LabError::Io { path: "<stdout>".into(), source })
}

pub fn run(cmd: Command, rep: &mut Rep<'_>) -> Result<u8, LabError> {
    match cmd {
        Command::Validate { automaton } => validate(&automaton, rep),
        Command::Classify { automaton } => {
            let t = Instant::now();
            let a = load_automaton(&automaton)?;
            let level = classify(&a)?;
            w(rep.emit(Record::new(automaton, level.to_string()), ms(t), &level.to_string()))?;
            Ok(0)
        }
        Command::Accepts { automaton, input, witness } => accepts_cmd(&automaton, &input, witness, rep),
        Command::Compare { a, b, oracle, plan } => compare_cmd(&a, b.as_deref(), oracle.as_deref(), &plan, rep),
        Command::Enum { automaton, plan } => enum_cmd(&automaton, &plan, rep),
        Command::Cover { automaton, windows } => cover_cmd(&automaton, windows, rep),
        Command::Pump { automaton, input, start, steps, repeat } => {
            pump_cmd(&automaton, &input, start, steps, repeat, rep)
        }
        Command::Render(r) => render_cmd(&r, rep),
        Command::Gallery { action } => gallery_cmd(action, rep),
    }
}

fn validate(arg: &str, rep: &mut Rep<'_>) -> Result<u8, LabError> {
    let t = Instant::now();
    let def = match arg.strip_prefix("gallery:") {
        Some(_) => load_automaton(arg)?.to_def(),
        None => io::parse_automaton_def(&read_file(Path::new(arg))?)?,
    };
    let violations: Vec<String> = validate_automaton(&def).iter().map(ToString::to_string).collect();
    let verdict = if violations.is_empty() { "valid" } else { "invalid" };
    let mut text = verdict.to_string();
    for v in &violations {
        text.push_str(&format!("\n  {v}"));
    }
    let rec = Record::new(arg, verdict).with_witness(json!({ "violations": violations }));
    w(rep.emit(rec, ms(t), &text))?;
    Ok(if violations.is_empty() { 0 } else { 3 })
}

fn load_grid(input: &GridInput, alphabet: &Alphabet) -> Result<(String, Grid), LabError> {
    match (&input.torus, &input.pattern) {
        (Some(p), _) => Ok((p.display().to_string(), Grid::Torus(io::parse_torus(&read_file(p)?, alphabet)?))),
        (_, Some(p)) => Ok((p.display().to_string(), Grid::Pattern(io::parse_pattern(&read_file(p)?, alphabet)?))),
        _ => Err(LabError::Usage("give --torus or --pattern".into())),
    }
}

fn domain(g: &Grid) -> Domain<'_> {
    match g {
        Grid::Torus(t) => Domain::Torus(t),
        Grid::Pattern(p) => Domain::Pattern(p),
    }
}

fn cell_json(c: Cell) -> Value {
    json!([c.x, c.y])
}

fn node_cell(ar: &Arena, n: u32) -> Option<(Cell, pwa_core::StateId)> {
    match ar.kind(n) {
        NodeKind::Position { cell, state } => Some((cell, state)),
        NodeKind::Exterior => None,
    }
}

/// Existential choices on the part of the arena the strategy can reach
/// from the starts, universal nodes following all their moves.
fn strategy_json(a: &Automaton, ar: &Arena, win: &WinningSet) -> Value {
    let mut seen = vec![false; ar.node_count()];
    let mut todo: Vec<u32> = ar.starts().to_vec();
    let mut out = Vec::new();
    while let Some(n) = todo.pop() {
        if std::mem::replace(&mut seen[n as usize], true) {
            continue;
        }
        let Some((cell, state)) = node_cell(ar, n) else { continue };
        if ar.owner(n) == Effective::Forall {
            todo.extend(ar.moves(n).iter().map(|m| m.to));
        } else if let Some(m) = win.choice(n) {
            let e = a.edge(m.edge);
            out.push((
                (cell.y, cell.x, state.0),
                json!({
                    "cell": cell_json(cell),
                    "state": a.state(state).id,
                    "edge": m.edge.0,
                    "to": a.state(e.to).id,
                    "dir": [e.dir.dx, e.dir.dy],
                }),
            ));
            todo.push(m.to);
        }
    }
    out.sort_by_key(|(k, _)| *k);
    Value::Array(out.into_iter().map(|(_, v)| v).collect())
}

fn depths_json(ar: &Arena, win: &WinningSet) -> Value {
    let cells: Vec<Value> = ar
        .rejecting_starts(win)
        .into_iter()
        .filter_map(|i| {
            let n = ar.starts()[i];
            let (cell, _) = node_cell(ar, n)?;
            Some(json!({ "cell": cell_json(cell), "depth": win.rank(n) }))
        })
        .collect();
    Value::Array(cells)
}

fn accepts_cmd(arg: &str, input: &GridInput, witness: bool, rep: &mut Rep<'_>) -> Result<u8, LabError> {
    let t = Instant::now();
    let a = load_automaton(arg)?;
    let (name, g) = load_grid(input, a.alphabet())?;
    let ar = build_arena(&a, domain(&g))?;
    let win = solve(&ar);
    let ok = ar.accepted(&win);
    let verdict = if ok { "accept" } else { "reject" };
    let mut rec = Record::new(name, verdict);
    let mut text = verdict.to_string();
    if witness {
        let wj = if ok {
            json!({ "strategy": strategy_json(&a, &ar, &win) })
        } else {
            json!({ "depths": depths_json(&ar, &win) })
        };
        text.push('\n');
        text.push_str(&serde_json::to_string_pretty(&wj).expect("json"));
        rec = rec.with_witness(wj);
    }
    w(rep.emit(rec, ms(t), &text))?;
    Ok(if ok { 0 } else { 1 })
}

fn plan_of(p: &PlanArgs) -> Result<Plan, LabError> {
    let tori = p.max_torus.as_ref().map(|v| (v[0], v[1]));
    let samples = p.samples.map(|count| Sampling { count, seed: p.seed, max: p.sample_max });
    let planted = p.planted.map(|n| (n, p.seed));
    let plan = Plan { tori, patterns: p.patterns, samples, planted };
    if plan == Plan::default() {
        return Err(LabError::Usage("give --max-torus, --patterns, --samples or --planted".into()));
    }
    Ok(plan)
}

fn compare_cmd(
    a_arg: &str,
    b_arg: Option<&str>,
    oracle: Option<&str>,
    p: &PlanArgs,
    rep: &mut Rep<'_>,
) -> Result<u8, LabError> {
    let t = Instant::now();
    let a = load_automaton(a_arg)?;
    let (b, b_name) = match (b_arg, oracle) {
        (Some(b), None) => {
            let bb = load_automaton(b)?;
            if !bb.alphabet().same_set(a.alphabet()) {
                return Err(LabError::Usage("the two automata have different alphabets".into()));
            }
            (Decider::Automaton(bb), b.to_string())
        }
        (None, Some(o)) => (Decider::Oracle(Oracle::by_name(o, &a)?), format!("oracle:{o}")),
        _ => return Err(LabError::Usage("give a second automaton or --oracle".into())),
    };
    let inst = Instances::new(&plan_of(p)?, a.alphabet())?;
    let exec = Exec::new(p.jobs)?;
    let c = harness::compare(&Decider::Automaton(a), &b, &inst, &exec)?;
    let name = format!("{a_arg} vs {b_name}");
    match c.disagreement {
        None => {
            let rec = Record::new(name, "equivalent").with_witness(json!({ "instances": c.examined }));
            let text = format!("equivalent at this scale ({} instances)", c.examined);
            w(rep.emit(rec, ms(t), &text))?;
            Ok(0)
        }
        Some(d) => {
            let grid = io::print_grid(&d.grid);
            let rec = Record::new(name, "disagree").with_witness(json!({
                "instances": c.examined,
                "index": d.index,
                "instance": d.label,
                "left": d.left,
                "right": d.right,
                "grid": grid,
            }));
            let text = format!("disagree on {} (left {}, right {})\n{}", d.label, d.left, d.right, grid.trim_end());
            w(rep.emit(rec, ms(t), &text))?;
            Ok(1)
        }
    }
}

fn enum_cmd(arg: &str, p: &PlanArgs, rep: &mut Rep<'_>) -> Result<u8, LabError> {
    let t = Instant::now();
    let a = load_automaton(arg)?;
    let inst = Instances::new(&plan_of(p)?, a.alphabet())?;
    let exec = Exec::new(p.jobs)?;
    let mut accepted = 0u64;
    harness::enumerate(&Decider::Automaton(a), &inst, &exec, |_, label, v| {
        accepted += u64::from(v);
        let verdict = if v { "accept" } else { "reject" };
        w(rep.emit(Record::new(label, verdict), 0, &format!("{label}: {verdict}")))
    })?;
    let summary = Record::new(arg, "done").with_witness(json!({ "instances": inst.len(), "accepted": accepted }));
    w(rep.emit(summary, ms(t), &format!("{accepted} of {} accepted", inst.len())))?;
    Ok(0)
}

fn clause_name(c: pwa_core::constructions::Clause) -> &'static str {
    use pwa_core::constructions::Clause::*;
    match c {
        WrongSymbol => "wrong-symbol",
        NoInitial => "no-initial",
        Quantifier => "quantifier",
    }
}

fn cover_cmd(arg: &str, cap: usize, rep: &mut Rep<'_>) -> Result<u8, LabError> {
    let t = Instant::now();
    let a = load_automaton(arg)?;
    let cover = alternating_to_cover(&a)?;
    let (wrong, no_init, rest) = cover.centre_statistics();
    let names = cover.sft.alphabet();
    let windows: Vec<Value> = cover
        .forbidden_windows(cap)
        .into_iter()
        .map(|(win, c)| {
            let toks: Vec<&str> = win.iter().map(|&s| names.name(s)).collect();
            json!({ "window": toks, "clause": clause_name(c) })
        })
        .collect();
    let shape: Vec<Value> = cover.shape.iter().map(|d| json!([d.dx, d.dy])).collect();
    let wj = json!({
        "base_symbols": cover.base.len(),
        "states": cover.state_count,
        "product_size": cover.product_size(),
        "shape": shape,
        "centre": { "wrong_symbol": wrong, "no_initial": no_init, "other": rest },
        "forbidden_windows": windows,
    });
    let mut text = format!(
        "product alphabet: {} = {} x 2^{}\nwindow offsets: {}\ncentre symbols: {} wrong symbol, {} no initial, {} other",
        cover.product_size(),
        cover.base.len(),
        cover.state_count,
        cover.shape.iter().map(|d| format!("({},{})", d.dx, d.dy)).collect::<Vec<_>>().join(" "),
        wrong,
        no_init,
        rest,
    );
    for v in wj["forbidden_windows"].as_array().expect("array") {
        text.push_str(&format!("\nforbidden {} ({})", v["window"], v["clause"].as_str().unwrap_or("")));
    }
    w(rep.emit(Record::new(arg, "cover").with_witness(wj), ms(t), &text))?;
    Ok(0)
}

fn branch_json(a: &Automaton, b: &Branch) -> Value {
    let steps: Vec<Value> = b
        .steps
        .iter()
        .map(|s| json!({ "cell": cell_json(s.cell), "state": a.state(s.state).id, "edge": s.edge.map(|e| e.0) }))
        .collect();
    let cycle = b.cycle.map(|l| json!({ "start": l.start, "shift": [l.shift.dx, l.shift.dy] }));
    json!({ "steps": steps, "cycle": cycle })
}

fn pairs_json(pairs: &[PumpingPair]) -> Value {
    Value::Array(pairs.iter().map(|p| json!({ "i": p.i, "j": p.j, "vector": [p.vector.dx, p.vector.dy] })).collect())
}

fn pump_cmd(
    arg: &str,
    input: &GridInput,
    start: Option<Vec<i32>>,
    steps: usize,
    repeat: Option<Vec<usize>>,
    rep: &mut Rep<'_>,
) -> Result<u8, LabError> {
    let t = Instant::now();
    let a = load_automaton(arg)?;
    let (name, g) = load_grid(input, a.alphabet())?;
    let ar = build_arena(&a, domain(&g))?;
    let win = solve(&ar);
    let starts = ar.starts();
    let idx = match start {
        Some(v) => {
            let want = Cell::new(v[0], v[1]);
            starts
                .iter()
                .position(|&n| node_cell(&ar, n).is_some_and(|(c, _)| c == want))
                .ok_or_else(|| LabError::Usage(format!("({}, {}) is not a start cell", v[0], v[1])))?
        }
        None => ar.rejecting_starts(&win).first().copied().unwrap_or(0),
    };
    let node = *starts.get(idx).ok_or_else(|| LabError::Usage("the domain has no start".into()))?;
    let branch = extract_branch(&ar, &win, node, steps);
    let mismatches = replay(&a, domain(&g), &branch)?;
    let pairs = find_pumping_pairs(&branch);
    let won = win.contains(node);
    let mut wj = json!({
        "start": node_cell(&ar, node).map(|(c, _)| cell_json(c)),
        "branch": branch_json(&a, &branch),
        "replay_mismatches": mismatches.len(),
        "pairs": pairs_json(&pairs),
    });
    let mut text = format!(
        "start {:?} {}: {} steps, {} replay mismatches, {} pumping pairs",
        node_cell(&ar, node).map(|(c, _)| (c.x, c.y)).unwrap_or_default(),
        if won { "wins" } else { "loses" },
        branch.steps.len(),
        mismatches.len(),
        pairs.len()
    );
    for p in pairs.iter().take(16) {
        text.push_str(&format!("\n  {} {} ({}, {})", p.i, p.j, p.vector.dx, p.vector.dy));
    }
    if let Some(r) = repeat {
        let pair = pairs
            .iter()
            .copied()
            .find(|p| p.i == r[0] && p.j == r[1])
            .ok_or_else(|| LabError::Usage(format!("{} {} is not a pumping pair", r[0], r[1])))?;
        let pumped = pump_branch(&branch, pair, r[2]);
        let pm = replay(&a, domain(&g), &pumped)?;
        text.push_str(&format!("\npumped x{}: {} steps, {} replay mismatches", r[2], pumped.steps.len(), pm.len()));
        wj["pumped"] = json!({ "branch": branch_json(&a, &pumped), "replay_mismatches": pm.len() });
    }
    let verdict = if won { "accept" } else { "reject" };
    w(rep.emit(Record::new(name, verdict).with_witness(wj), ms(t), &text))?;
    Ok(0)
}

/// Tokens in order of first appearance, headers skipped.
fn infer_alphabet(text: &str) -> Result<Alphabet, LabError> {
    let mut toks: Vec<&str> = Vec::new();
    for line in text.lines() {
        let first = line.split_whitespace().next();
        if matches!(first, Some("torus") | Some("origin")) {
            continue;
        }
        for t in line.split_whitespace() {
            if t != "." && !toks.contains(&t) {
                toks.push(t);
            }
        }
    }
    Ok(Alphabet::new(toks)?)
}

fn render_cmd(r: &RenderArgs, rep: &mut Rep<'_>) -> Result<u8, LabError> {
    let t = Instant::now();
    let (name, g) = if let Some(path) = &r.file {
        let text = read_file(path)?;
        (path.display().to_string(), io::parse_grid(&text, &infer_alphabet(&text)?)?)
    } else if let Some(n) = r.xn {
        (format!("xn {n}"), Grid::Pattern(gallery::labyrinth_xn(n)))
    } else if let Some(v) = &r.xn_torus {
        (format!("xn-torus {} {}", v[0], v[1]), Grid::Torus(gallery::labyrinth_xn_torus(v[0], v[1])?))
    } else if let Some(v) = &r.kari_moore {
        (format!("kari-moore {} {}", v[0], v[1]), Grid::Pattern(gallery::kari_moore_rectangle(v[0], v[1])))
    } else if let Some(seed) = r.planted {
        (format!("planted {seed}"), Grid::Torus(gallery::planted_labyrinth(crate::rng::pick_stream(seed, 0))))
    } else {
        return Err(LabError::Usage("nothing to render".into()));
    };
    let text = io::print_grid(&g);
    let rec = Record::new(name, "rendered").with_witness(Value::String(text.clone()));
    w(rep.emit(rec, ms(t), text.trim_end()))?;
    Ok(0)
}

/// One line per built-in.
pub const DESCRIPTIONS: [(&str, &str); 4] = [
    ("even-runs", "horizontal and vertical runs of 1s are even or infinite"),
    ("ssu", "sunny side up: at most one 1 in the whole configuration"),
    ("cone-labyrinth", "cone labyrinths: walker plus forbidden-pattern guard"),
    ("cone-labyrinth-core", "the cone walker alone, without the forbidden-pattern guard"),
];

fn gallery_cmd(action: GalleryAction, rep: &mut Rep<'_>) -> Result<u8, LabError> {
    let t = Instant::now();
    match action {
        GalleryAction::List => {
            for (name, what) in DESCRIPTIONS {
                let a = gallery::by_name(name).expect("listed built-in exists");
                let level = classify(&a)?;
                let rec = Record::new(name, level.to_string()).with_witness(json!({
                    "description": what,
                    "states": a.states().len(),
                    "edges": a.edges().len(),
                }));
                w(rep.emit(rec, ms(t), &format!("{name:<20} {level:<10} {what}")))?;
            }
        }
        GalleryAction::Show { name } => {
            let a = gallery::by_name(&name).ok_or_else(|| LabError::Usage(format!("no built-in named {name:?}")))?;
            let level = classify(&a)?;
            let what = DESCRIPTIONS.iter().find(|(n, _)| *n == name).map_or("", |(_, d)| d);
            let text = format!(
                "{name}: {what}\nlevel {level}, {} states, {} edges, alphabet {}",
                a.states().len(),
                a.edges().len(),
                a.alphabet().tokens().join(" ")
            );
            let rec = Record::new(&name, level.to_string()).with_witness(json!({
                "description": what,
                "states": a.states().len(),
                "edges": a.edges().len(),
                "alphabet": a.alphabet().tokens(),
            }));
            w(rep.emit(rec, ms(t), &text))?;
        }
        GalleryAction::Export { name, out } => {
            let a = gallery::by_name(&name).ok_or_else(|| LabError::Usage(format!("no built-in named {name:?}")))?;
            let text = io::print_automaton(&a);
            match out {
                Some(p) => std::fs::write(&p, &text)
                    .map_err(|source| LabError::Io { path: p.display().to_string(), source })?,
                None => w(rep.note(&text))?,
            }
            if rep.json {
                w(rep.emit(Record::new(&name, "exported"), ms(t), ""))?;
            }
        }
        GalleryAction::KariMooreAudit { max_n } => {
            for n in 2..=max_n {
                let strict = complement_max(n, FReading::Strict)?;
                let inclusive = complement_max(n, FReading::Inclusive)?;
                let closed = n * n - n - 1;
                let rec = Record::new(format!("kari-moore n={n}"), "reported").with_witness(json!({
                    "n": n,
                    "strict": strict,
                    "inclusive": inclusive,
                    "closed_form": closed,
                    "strict_matches": strict == closed,
                    "inclusive_matches": inclusive == closed,
                }));
                let text = format!("n={n}: j<i -> {strict}, j<=i -> {inclusive}, n^2-n-1 = {closed}");
                w(rep.emit(rec, ms(t), &text))?;
            }
        }
    }
    Ok(0)
}
