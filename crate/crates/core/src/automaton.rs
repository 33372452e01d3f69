//! Automata: a finite graph of states labelled by symbols, with lattice
//! displacements on the edges and one initial state per symbol.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::{valid_token, Alphabet, Sym};
use crate::geometry::Direction;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// Quantifier as seen by the classifier and the solver. Deterministic states
/// are `Wildcard`: whichever quantifier they carry makes no difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Effective {
    Exists,
    Forall,
    Wildcard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

impl StateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// String-keyed description of an automaton, as found in files.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AutomatonDef {
    pub alphabet: Vec<String>,
    pub states: Vec<StateDef>,
    pub edges: Vec<EdgeDef>,
    /// `(symbol, state id)` pairs.
    pub initial: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateDef {
    pub id: String,
    pub symbol: String,
    pub quant: Option<Quantifier>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDef {
    pub from: String,
    pub to: String,
    pub dir: Direction,
}

/// One broken invariant of an automaton description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyAlphabet,
    BadSymbolToken(String),
    DuplicateSymbol(String),
    DuplicateState(String),
    UnknownStateSymbol { state: String, symbol: String },
    UnknownEdgeEndpoint { edge: usize, state: String },
    MissingInitial(String),
    DuplicateInitial(String),
    InitialUnknownSymbol(String),
    InitialUnknownState { symbol: String, state: String },
    InitialSymbolMismatch { symbol: String, state: String },
    InitialNotInjective { state: String },
    NondeterministicUnquantified(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            EmptyAlphabet => write!(f, "alphabet is empty"),
            BadSymbolToken(s) => write!(f, "symbol {s:?} is not a valid token"),
            DuplicateSymbol(s) => write!(f, "symbol {s:?} is declared twice"),
            DuplicateState(s) => write!(f, "state {s:?} is declared twice"),
            UnknownStateSymbol { state, symbol } => {
                write!(f, "state {state:?} has symbol {symbol:?} outside the alphabet")
            }
            UnknownEdgeEndpoint { edge, state } => {
                write!(f, "edge #{edge} references undeclared state {state:?}")
            }
            MissingInitial(s) => write!(f, "no initial state for symbol {s:?}"),
            DuplicateInitial(s) => write!(f, "symbol {s:?} has several initial entries"),
            InitialUnknownSymbol(s) => write!(f, "initial map names unknown symbol {s:?}"),
            InitialUnknownState { symbol, state } => {
                write!(f, "initial state {state:?} for symbol {symbol:?} is undeclared")
            }
            InitialSymbolMismatch { symbol, state } => {
                write!(f, "initial state {state:?} for symbol {symbol:?} reads another symbol")
            }
            InitialNotInjective { state } => {
                write!(f, "state {state:?} is initial for several symbols")
            }
            NondeterministicUnquantified(s) => {
                write!(f, "state {s:?} is nondeterministic but has no quantifier")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub id: String,
    pub symbol: Sym,
    pub quant: Option<Quantifier>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: StateId,
    pub to: StateId,
    pub dir: Direction,
}

/// A validated automaton `(V, E, Σ, D, I, Q)`.
///
/// Structural invariants (declared endpoints, a total and injective initial
/// map with `D(i_a) = a`) always hold. Quantifier consistency is checked
/// separately; see [`Automaton::quantifier_violations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Alphabet,
    states: Vec<State>,
    edges: Vec<Edge>,
    initial: Vec<StateId>,
    out: Vec<Vec<EdgeId>>,
}

/// Lists every broken invariant of `def`, including nondeterministic states
/// that lack a quantifier. Empty iff the automaton is fully valid.
pub fn validate_automaton(def: &AutomatonDef) -> Vec<Violation> {
    match Automaton::from_def(def) {
        Ok(a) => a.quantifier_violations(),
        Err(Error::InvalidAutomaton(v)) => v,
        Err(_) => unreachable!("from_def only reports violations"),
    }
}

impl Automaton {
    /// Builds an automaton, checking the structural invariants only.
    pub fn from_def(def: &AutomatonDef) -> Result<Automaton, Error> {
        let mut violations = Vec::new();
        if def.alphabet.is_empty() {
            violations.push(Violation::EmptyAlphabet);
        }
        for (i, s) in def.alphabet.iter().enumerate() {
            if !valid_token(s) {
                violations.push(Violation::BadSymbolToken(s.clone()));
            } else if def.alphabet[..i].contains(s) {
                violations.push(Violation::DuplicateSymbol(s.clone()));
            }
        }
        let mut state_index: BTreeMap<&str, StateId> = BTreeMap::new();
        for (i, st) in def.states.iter().enumerate() {
            if state_index.insert(&st.id, StateId(i as u32)).is_some() {
                violations.push(Violation::DuplicateState(st.id.clone()));
            }
            if !def.alphabet.contains(&st.symbol) {
                violations.push(Violation::UnknownStateSymbol { state: st.id.clone(), symbol: st.symbol.clone() });
            }
        }
        for (i, e) in def.edges.iter().enumerate() {
            for end in [&e.from, &e.to] {
                if !state_index.contains_key(end.as_str()) {
                    violations.push(Violation::UnknownEdgeEndpoint { edge: i, state: end.clone() });
                }
            }
        }
        let mut init_of: BTreeMap<&str, &str> = BTreeMap::new();
        for (sym, st) in &def.initial {
            if !def.alphabet.contains(sym) {
                violations.push(Violation::InitialUnknownSymbol(sym.clone()));
                continue;
            }
            if init_of.insert(sym, st).is_some() {
                violations.push(Violation::DuplicateInitial(sym.clone()));
                continue;
            }
            match state_index.get(st.as_str()) {
                None => violations.push(Violation::InitialUnknownState { symbol: sym.clone(), state: st.clone() }),
                Some(id) => {
                    if def.states[id.index()].symbol != *sym {
                        violations.push(Violation::InitialSymbolMismatch { symbol: sym.clone(), state: st.clone() });
                    }
                }
            }
        }
        let mut seen = BTreeSet::new();
        for (_, st) in &def.initial {
            if !seen.insert(st.as_str()) {
                violations.push(Violation::InitialNotInjective { state: st.clone() });
            }
        }
        for sym in &def.alphabet {
            if !init_of.contains_key(sym.as_str()) {
                violations.push(Violation::MissingInitial(sym.clone()));
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidAutomaton(violations));
        }

        let alphabet = Alphabet::new(def.alphabet.iter().cloned())?;
        let states = def
            .states
            .iter()
            .map(|s| State { id: s.id.clone(), symbol: alphabet.lookup(&s.symbol).expect("checked"), quant: s.quant })
            .collect();
        let edges = def
            .edges
            .iter()
            .map(|e| Edge { from: state_index[e.from.as_str()], to: state_index[e.to.as_str()], dir: e.dir })
            .collect();
        let initial = alphabet.tokens().iter().map(|t| state_index[init_of[t.as_str()]]).collect();
        Ok(Automaton::from_parts(alphabet, states, edges, initial))
    }

    /// Assembles an automaton from already-consistent parts.
    pub(crate) fn from_parts(
        alphabet: Alphabet,
        states: Vec<State>,
        edges: Vec<Edge>,
        initial: Vec<StateId>,
    ) -> Automaton {
        debug_assert_eq!(initial.len(), alphabet.len());
        debug_assert!(initial.iter().enumerate().all(|(i, v)| states[v.index()].symbol == Sym(i as u16)));
        let mut out = vec![Vec::new(); states.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.from.index()].push(EdgeId(i as u32));
        }
        Automaton { alphabet, states, edges, initial, out }
    }

    pub fn to_def(&self) -> AutomatonDef {
        AutomatonDef {
            alphabet: self.alphabet.tokens().to_vec(),
            states: self
                .states
                .iter()
                .map(|s| StateDef { id: s.id.clone(), symbol: self.alphabet.name(s.symbol).to_owned(), quant: s.quant })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDef {
                    from: self.states[e.from.index()].id.clone(),
                    to: self.states[e.to.index()].id.clone(),
                    dir: e.dir,
                })
                .collect(),
            initial: self
                .alphabet
                .iter()
                .map(|s| (self.alphabet.name(s).to_owned(), self.states[self.initial[s.index()].index()].id.clone()))
                .collect(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, v: StateId) -> &State {
        &self.states[v.index()]
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len() as u32).map(StateId)
    }

    pub fn state_by_id(&self, id: &str) -> Option<StateId> {
        self.states.iter().position(|s| s.id == id).map(|i| StateId(i as u32))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e.index()]
    }

    /// Outgoing edges of `v`, in increasing edge id order.
    pub fn out_edges(&self, v: StateId) -> &[EdgeId] {
        &self.out[v.index()]
    }

    pub fn initial(&self, s: Sym) -> StateId {
        self.initial[s.index()]
    }

    pub fn initial_states(&self) -> &[StateId] {
        &self.initial
    }

    pub fn symbol(&self, v: StateId) -> Sym {
        self.states[v.index()].symbol
    }

    pub fn directions(&self) -> BTreeSet<Direction> {
        self.edges.iter().map(|e| e.dir).collect()
    }

    /// All outgoing edges share one direction and reach pairwise distinct
    /// symbols, or there is at most one outgoing edge.
    pub fn is_syntactically_deterministic(&self, v: StateId) -> bool {
        let out = self.out_edges(v);
        if out.len() <= 1 {
            return true;
        }
        let dir = self.edge(out[0]).dir;
        let mut syms = BTreeSet::new();
        out.iter().all(|&e| {
            let e = self.edge(e);
            e.dir == dir && syms.insert(self.symbol(e.to))
        })
    }

    pub fn effective_quantifier(&self, v: StateId) -> Result<Effective, Error> {
        if self.is_syntactically_deterministic(v) {
            return Ok(Effective::Wildcard);
        }
        match self.state(v).quant {
            Some(Quantifier::Exists) => Ok(Effective::Exists),
            Some(Quantifier::Forall) => Ok(Effective::Forall),
            None => Err(Error::NondeterministicUnquantified { state: self.state(v).id.clone() }),
        }
    }

    pub fn effective_quantifiers(&self) -> Result<Vec<Effective>, Error> {
        self.state_ids().map(|v| self.effective_quantifier(v)).collect()
    }

    pub fn quantifier_violations(&self) -> Vec<Violation> {
        self.state_ids()
            .filter(|&v| self.effective_quantifier(v).is_err())
            .map(|v| Violation::NondeterministicUnquantified(self.state(v).id.clone()))
            .collect()
    }

    /// No state carries a quantifier and every edge goes `→` or `↑`.
    pub fn check_recognising_mode(&self) -> Result<(), Error> {
        if let Some(s) = self.states.iter().find(|s| s.quant.is_some()) {
            return Err(Error::NotRecognisingMode(format!("state {:?} has a quantifier", s.id)));
        }
        if let Some(e) = self.edges.iter().find(|e| e.dir != Direction::RIGHT && e.dir != Direction::UP) {
            return Err(Error::NotRecognisingMode(format!("edge with direction {}", e.dir)));
        }
        Ok(())
    }

    /// States reachable from the initial states along edges.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut stack: Vec<StateId> = Vec::new();
        for &i in &self.initial {
            if !seen[i.index()] {
                seen[i.index()] = true;
                stack.push(i);
            }
        }
        while let Some(v) = stack.pop() {
            for &e in self.out_edges(v) {
                let t = self.edge(e).to;
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Splits every non-unit edge into unit steps through fresh states.
    ///
    /// The fresh states are deterministic: one copy per symbol at each
    /// intermediate cell, since the head must read whatever lies there. A
    /// deterministic source shares one chain per direction. Chains out of a
    /// universal source fall back to an accepting sink when the final target
    /// does not match, and the source gains a deterministic scan that rejects
    /// when no original edge is applicable. Unit automata come back unchanged.
    pub fn normalize_directions(&self) -> Automaton {
        if self.edges.iter().all(|e| e.dir.is_unit()) {
            return self.clone();
        }
        Normalizer::new(self).run()
    }
}

struct Normalizer<'a> {
    src: &'a Automaton,
    states: Vec<State>,
    edges: Vec<Edge>,
    taken: BTreeSet<String>,
    sinks: Vec<Option<StateId>>,
}

impl<'a> Normalizer<'a> {
    fn new(src: &'a Automaton) -> Self {
        Normalizer {
            src,
            states: src.states.clone(),
            edges: Vec::new(),
            taken: src.states.iter().map(|s| s.id.clone()).collect(),
            sinks: vec![None; src.alphabet.len()],
        }
    }

    fn fresh(&mut self, base: String, symbol: Sym) -> StateId {
        let mut id = base.clone();
        let mut k = 1;
        while self.taken.contains(&id) {
            id = format!("{base}'{k}");
            k += 1;
        }
        self.taken.insert(id.clone());
        self.states.push(State { id, symbol, quant: None });
        StateId(self.states.len() as u32 - 1)
    }

    fn sink(&mut self, s: Sym) -> StateId {
        if let Some(v) = self.sinks[s.index()] {
            return v;
        }
        let name = format!("~sink/{}", self.src.alphabet.name(s));
        let v = self.fresh(name, s);
        self.edges.push(Edge { from: v, to: v, dir: Direction::STAY });
        self.sinks[s.index()] = Some(v);
        v
    }

    /// One layer of per-symbol copies for each intermediate cell of `dir`,
    /// returning the last layer (or `None` when `dir` is a unit step) and the
    /// final unit step.
    fn chain(&mut self, from: StateId, tag: &str, dir: Direction) -> (Vec<StateId>, Direction) {
        let steps: Vec<Direction> = dir.unit_path().collect();
        let (last_step, inner) = steps.split_last().expect("non-unit");
        let syms: Vec<Sym> = self.src.alphabet.iter().collect();
        let from_name = self.src.state(from).id.clone();
        let mut prev: Vec<StateId> = vec![from];
        for (k, &step) in inner.iter().enumerate() {
            let layer: Vec<StateId> = syms
                .iter()
                .map(|&s| {
                    let name = format!("~{from_name}/{tag}/{k}/{}", self.src.alphabet.name(s));
                    self.fresh(name, s)
                })
                .collect();
            for &p in &prev {
                for &q in &layer {
                    self.edges.push(Edge { from: p, to: q, dir: step });
                }
            }
            prev = layer;
        }
        (prev, *last_step)
    }

    fn run(mut self) -> Automaton {
        let src = self.src;
        let eff: Vec<Option<Effective>> = src.state_ids().map(|v| src.effective_quantifier(v).ok()).collect();
        for v in src.state_ids() {
            let out: Vec<Edge> = src.out_edges(v).iter().map(|&e| src.edge(e)).collect();
            if out.iter().all(|e| e.dir.is_unit()) {
                self.edges.extend(out);
                continue;
            }
            match eff[v.index()] {
                Some(Effective::Wildcard) => {
                    // all edges share one direction
                    let dir = out[0].dir;
                    let (last, step) = self.chain(v, "d", dir);
                    for &p in &last {
                        for e in &out {
                            self.edges.push(Edge { from: p, to: e.to, dir: step });
                        }
                    }
                }
                other => {
                    let universal = other == Some(Effective::Forall);
                    for (k, e) in out.iter().enumerate() {
                        if e.dir.is_unit() {
                            self.edges.push(*e);
                            continue;
                        }
                        let (last, step) = self.chain(v, &format!("e{k}"), e.dir);
                        for &p in &last {
                            self.edges.push(Edge { from: p, to: e.to, dir: step });
                            if universal {
                                let target_sym = src.symbol(e.to);
                                for s in src.alphabet.iter().filter(|&s| s != target_sym) {
                                    let sink = self.sink(s);
                                    self.edges.push(Edge { from: p, to: sink, dir: step });
                                }
                            }
                        }
                    }
                    if universal {
                        self.nonempty_scan(v, &out);
                    }
                }
            }
        }
        let mut edges = self.edges;
        edges.sort_by_key(|e| e.from);
        Automaton::from_parts(src.alphabet.clone(), self.states, edges, src.initial.clone())
    }

    /// Deterministic walk over the target cells of `out`; accepts at the
    /// first cell holding the symbol some edge expects there, dies otherwise.
    fn nonempty_scan(&mut self, v: StateId, out: &[Edge]) {
        let src = self.src;
        let here = src.symbol(v);
        let mut targets: Vec<(Direction, BTreeSet<Sym>)> = Vec::new();
        for e in out {
            let s = src.symbol(e.to);
            match targets.iter_mut().find(|(d, _)| *d == e.dir) {
                Some((_, set)) => {
                    set.insert(s);
                }
                None => targets.push((e.dir, [s].into_iter().collect())),
            }
        }
        if targets.iter().any(|(d, set)| *d == Direction::STAY && set.contains(&here)) {
            return;
        }
        let name = src.state(v).id.clone();
        let start = self.fresh(format!("~{name}/scan"), here);
        self.edges.push(Edge { from: v, to: start, dir: Direction::STAY });
        let syms: Vec<Sym> = src.alphabet.iter().collect();
        let mut pos = Direction::STAY;
        let mut prev: Vec<StateId> = vec![start];
        let mut n = 0;
        for (target, accepting) in targets.into_iter().filter(|(d, _)| *d != Direction::STAY) {
            let path: Vec<Direction> = (target + -pos).unit_path().collect();
            for (k, &step) in path.iter().enumerate() {
                let at_target = k + 1 == path.len();
                let layer: Vec<StateId> = syms
                    .iter()
                    .map(|&s| {
                        if at_target && accepting.contains(&s) {
                            self.sink(s)
                        } else {
                            let tag = format!("~{name}/scan/{n}/{}", src.alphabet.name(s));
                            n += 1;
                            self.fresh(tag, s)
                        }
                    })
                    .collect();
                for &p in &prev {
                    for &q in &layer {
                        self.edges.push(Edge { from: p, to: q, dir: step });
                    }
                }
                let sinks: Vec<StateId> = self.sinks.iter().flatten().copied().collect();
                prev = layer.into_iter().filter(|q| !sinks.contains(q)).collect();
            }
            pos = target;
        }
    }
}

/// Convenience builder over [`AutomatonDef`].
#[derive(Clone, Debug, Default)]
pub struct AutomatonBuilder {
    def: AutomatonDef,
}

impl AutomatonBuilder {
    pub fn new<I, S>(alphabet: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        AutomatonBuilder {
            def: AutomatonDef { alphabet: alphabet.into_iter().map(Into::into).collect(), ..Default::default() },
        }
    }

    pub fn state(mut self, id: &str, symbol: &str, quant: Option<Quantifier>) -> Self {
        self.def.states.push(StateDef { id: id.to_string(), symbol: symbol.to_string(), quant });
        self
    }

    pub fn edge(mut self, from: &str, to: &str, dx: i32, dy: i32) -> Self {
        self.def.edges.push(EdgeDef { from: from.to_string(), to: to.to_string(), dir: Direction::new(dx, dy) });
        self
    }

    pub fn initial(mut self, symbol: &str, state: &str) -> Self {
        self.def.initial.push((symbol.to_string(), state.to_string()));
        self
    }

    pub fn def(&self) -> &AutomatonDef {
        &self.def
    }

    pub fn into_def(self) -> AutomatonDef {
        self.def
    }

    pub fn build(self) -> Result<Automaton, Error> {
        Automaton::from_def(&self.def)
    }
}
