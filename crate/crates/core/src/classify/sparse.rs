//! Sparseness of automatic sequences: tied vertices, rank and the
//! decomposition of the support into simple sparse sets.

use std::collections::VecDeque;
use std::fmt;

use petgraph::algo::kosaraju_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::dfao::{Dfao, SupportPattern};
use crate::error::{Error, Result};

/// Evidence that an automaton is not sparse: an accessible, co-accessible
/// vertex with two different closed walks of equal length. Words are digit
/// sequences in reading order (least significant digit first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiedWitness {
    /// Path from the start state to the tied vertex.
    pub path: Vec<u32>,
    /// Path from the tied vertex to a state with nonzero output.
    pub to_nonzero: Vec<u32>,
    /// Two different closed walks of the same length at the tied vertex.
    pub loops: (Vec<u32>, Vec<u32>),
}

impl TiedWitness {
    /// Replays the witness on `a`.
    pub fn verify(&self, a: &Dfao) -> bool {
        let v = a.walk(a.start(), &self.path);
        let (l1, l2) = &self.loops;
        l1.len() == l2.len()
            && l1 != l2
            && a.walk(v, l1) == v
            && a.walk(v, l2) == v
            && a.label(a.walk(v, &self.to_nonzero)) != 0
    }
}

/// Result of the sparseness decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sparseness {
    /// The support is a finite union of simple sparse sets of at most this
    /// rank (the rank is exact: some set of that rank is needed).
    Sparse { rank: usize },
    NotSparse(TiedWitness),
}

impl Sparseness {
    pub fn is_sparse(&self) -> bool {
        matches!(self, Sparseness::Sparse { .. })
    }
}

impl fmt::Display for Sparseness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sparseness::Sparse { rank } => write!(f, "sparse of rank {rank}"),
            Sparseness::NotSparse(w) => write!(
                f,
                "not sparse: tied vertex at {} with loops ({}, {})",
                word(&w.path),
                word(&w.loops.0),
                word(&w.loops.1)
            ),
        }
    }
}

/// Digits written in reading order, `ε` for the empty word.
pub fn word(w: &[u32]) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        w.iter().map(|d| char::from_digit(*d, 36).unwrap()).collect()
    }
}

/// Parses a digit word in reading order (`ε` or empty for the empty word).
pub fn parse_word(s: &str) -> Option<Vec<u32>> {
    if s == "ε" {
        return Some(Vec::new());
    }
    s.chars().map(|c| c.to_digit(36)).collect()
}

/// States from which a state with nonzero output is reachable.
pub fn co_accessible(a: &Dfao) -> Vec<bool> {
    let n = a.num_states();
    let mut preds = vec![Vec::new(); n];
    for s in 0..n {
        for r in 0..a.p() {
            preds[a.next(s, r)].push(s);
        }
    }
    let mut seen: Vec<bool> = (0..n).map(|s| a.label(s) != 0).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&s| seen[s]).collect();
    while let Some(s) = queue.pop_front() {
        for &q in &preds[s] {
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    seen
}

/// Shortest word from `from` to a state satisfying `goal`.
pub(crate) fn path_to(a: &Dfao, from: usize, goal: impl Fn(usize) -> bool) -> Option<Vec<u32>> {
    let n = a.num_states();
    let mut prev: Vec<Option<(usize, u32)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(s) = queue.pop_front() {
        if goal(s) {
            let mut w = Vec::new();
            let mut cur = s;
            while let Some((q, r)) = prev[cur] {
                w.push(r);
                cur = q;
            }
            w.reverse();
            return Some(w);
        }
        for r in 0..a.p() {
            let t = a.next(s, r);
            if !seen[t] {
                seen[t] = true;
                prev[t] = Some((s, r));
                queue.push_back(t);
            }
        }
    }
    None
}

/// The pair graph on accessible, co-accessible states: `(u, v) → (δ(u,a), δ(v,b))`.
struct PairGraph {
    n: usize,
    p: u32,
    comp: Vec<u32>,
    /// Components containing an internal edge with `a ≠ b`.
    split: Vec<bool>,
}

impl PairGraph {
    fn build(a: &Dfao, keep: &[bool]) -> PairGraph {
        let n = a.num_states();
        let p = a.p();
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n * n, n * n * (p * p) as usize);
        for _ in 0..n * n {
            g.add_node(());
        }
        for u in (0..n).filter(|&u| keep[u]) {
            for v in (0..n).filter(|&v| keep[v]) {
                for ra in 0..p {
                    let x = a.next(u, ra);
                    if !keep[x] {
                        continue;
                    }
                    for rb in 0..p {
                        let y = a.next(v, rb);
                        if keep[y] {
                            g.add_edge(NodeIndex::new(u * n + v), NodeIndex::new(x * n + y), ());
                        }
                    }
                }
            }
        }
        let sccs = kosaraju_scc(&g);
        let mut comp = vec![0u32; n * n];
        for (c, nodes) in sccs.iter().enumerate() {
            for &x in nodes {
                comp[x.index()] = c as u32;
            }
        }
        let mut split = vec![false; sccs.len()];
        for u in (0..n).filter(|&u| keep[u]) {
            for v in (0..n).filter(|&v| keep[v]) {
                let c = comp[u * n + v];
                for ra in 0..p {
                    for rb in (0..p).filter(|&rb| rb != ra) {
                        let (x, y) = (a.next(u, ra), a.next(v, rb));
                        if keep[x] && keep[y] && comp[x * n + y] == c {
                            split[c as usize] = true;
                        }
                    }
                }
            }
        }
        PairGraph { n, p, comp, split }
    }

    fn is_tied(&self, v: usize) -> bool {
        self.split[self.comp[v * self.n + v] as usize]
    }

    /// BFS inside the component of `from`, from `from` to `to`, returning
    /// the two digit words.
    fn path(&self, a: &Dfao, from: (usize, usize), goal: impl Fn(usize, usize) -> bool) -> Option<(Vec<u32>, Vec<u32>, (usize, usize))> {
        let n = self.n;
        let c = self.comp[from.0 * n + from.1];
        let mut prev: std::collections::HashMap<(usize, usize), ((usize, usize), u32, u32)> = Default::default();
        let mut queue = VecDeque::from([from]);
        let mut seen = std::collections::HashSet::from([from]);
        while let Some((u, v)) = queue.pop_front() {
            if goal(u, v) {
                let (mut w1, mut w2) = (Vec::new(), Vec::new());
                let mut cur = (u, v);
                while let Some(&(q, ra, rb)) = prev.get(&cur) {
                    w1.push(ra);
                    w2.push(rb);
                    cur = q;
                }
                w1.reverse();
                w2.reverse();
                return Some((w1, w2, (u, v)));
            }
            for ra in 0..self.p {
                for rb in 0..self.p {
                    let t = (a.next(u, ra), a.next(v, rb));
                    if self.comp[t.0 * n + t.1] == c && seen.insert(t) {
                        prev.insert(t, ((u, v), ra, rb));
                        queue.push_back(t);
                    }
                }
            }
        }
        None
    }

    /// Two different closed walks of equal length at the tied vertex `v`.
    fn loops(&self, a: &Dfao, v: usize) -> (Vec<u32>, Vec<u32>) {
        let n = self.n;
        let c = self.comp[v * n + v];
        // Walk to the source of a splitting edge, take it, walk back.
        let is_split_source = |u: usize, w: usize| {
            (0..self.p).any(|ra| {
                (0..self.p).any(|rb| rb != ra && self.comp[a.next(u, ra) * n + a.next(w, rb)] == c)
            })
        };
        let (mut l1, mut l2, (u, w)) = self.path(a, (v, v), is_split_source).expect("tied component");
        let (ra, rb) = (0..self.p)
            .flat_map(|ra| (0..self.p).map(move |rb| (ra, rb)))
            .find(|&(ra, rb)| ra != rb && self.comp[a.next(u, ra) * n + a.next(w, rb)] == c)
            .expect("splitting edge");
        l1.push(ra);
        l2.push(rb);
        let (b1, b2, _) = self
            .path(a, (a.next(u, ra), a.next(w, rb)), |x, y| x == v && y == v)
            .expect("strongly connected");
        l1.extend(b1);
        l2.extend(b2);
        (l1, l2)
    }
}

/// Accessible, co-accessible vertices with two different closed walks of
/// the same length (decided exactly on the pair graph).
pub fn tied_vertices(a: &Dfao) -> Vec<usize> {
    let keep = trim_flags(a);
    let pg = PairGraph::build(a, &keep);
    (0..a.num_states()).filter(|&v| keep[v] && pg.is_tied(v)).collect()
}

fn trim_flags(a: &Dfao) -> Vec<bool> {
    let acc = a.accessible();
    let co = co_accessible(a);
    acc.iter().zip(&co).map(|(&x, &y)| x && y).collect()
}

/// A tied-vertex witness for `a`, if one exists.
pub fn tied_witness(a: &Dfao) -> Option<TiedWitness> {
    let keep = trim_flags(a);
    let pg = PairGraph::build(a, &keep);
    let v = (0..a.num_states()).find(|&v| keep[v] && pg.is_tied(v))?;
    Some(TiedWitness {
        path: path_to(a, a.start(), |s| s == v).expect("accessible"),
        to_nonzero: path_to(a, v, |s| a.label(s) != 0).expect("co-accessible"),
        loops: pg.loops(a, v),
    })
}

/// Tied flags for every state (accessibility from the start is ignored, so
/// the flags serve all start states at once); co-accessibility is required.
pub(crate) fn tied_flags_any_start(a: &Dfao) -> Vec<bool> {
    let co = co_accessible(a);
    let pg = PairGraph::build(a, &co);
    (0..a.num_states()).map(|v| co[v] && pg.is_tied(v)).collect()
}

/// Automaton on `(state, last digit nonzero)` accepting exactly the
/// canonical digit words (no trailing zero) of indices with nonzero
/// coefficient, trimmed. Node 0 is the start.
struct WordGraph {
    /// `(target, digit)` edges per node.
    edges: Vec<Vec<(usize, u32)>>,
    accepting: Vec<bool>,
}

impl WordGraph {
    fn new(a: &Dfao) -> WordGraph {
        let n = a.num_states();
        let p = a.p();
        let id = |s: usize, f: bool| 2 * s + usize::from(f);
        let mut edges = vec![Vec::new(); 2 * n];
        let mut accepting = vec![false; 2 * n];
        for s in 0..n {
            for f in [false, true] {
                accepting[id(s, f)] = f && a.label(s) != 0;
                for r in 0..p {
                    edges[id(s, f)].push((id(a.next(s, r), r != 0), r));
                }
            }
        }
        let start = id(a.start(), true);
        // Trim: forward from start, backward from accepting nodes.
        let m = 2 * n;
        let mut fwd = vec![false; m];
        fwd[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &edges[x] {
                if !fwd[y] {
                    fwd[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let mut preds = vec![Vec::new(); m];
        for x in 0..m {
            for &(y, _) in &edges[x] {
                preds[y].push(x);
            }
        }
        let mut bwd: Vec<bool> = accepting.clone();
        let mut queue: VecDeque<usize> = (0..m).filter(|&x| bwd[x]).collect();
        while let Some(x) = queue.pop_front() {
            for &q in &preds[x] {
                if !bwd[q] {
                    bwd[q] = true;
                    queue.push_back(q);
                }
            }
        }
        // Renumber with the start first.
        let keep: Vec<bool> = (0..m).map(|x| fwd[x] && bwd[x]).collect();
        let mut index = vec![usize::MAX; m];
        let mut order = Vec::new();
        if keep[start] {
            index[start] = 0;
            order.push(start);
        }
        for x in 0..m {
            if keep[x] && x != start {
                index[x] = order.len();
                order.push(x);
            }
        }
        WordGraph {
            edges: order
                .iter()
                .map(|&x| {
                    edges[x]
                        .iter()
                        .filter(|(y, _)| keep[*y])
                        .map(|&(y, r)| (index[y], r))
                        .collect()
                })
                .collect(),
            accepting: order.iter().map(|&x| accepting[x]).collect(),
        }
    }

    fn len(&self) -> usize {
        self.edges.len()
    }

    /// SCC index per node, SCC members, and SCCs in topological order.
    fn sccs(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let mut g: DiGraph<(), ()> = DiGraph::new();
        for _ in 0..self.len() {
            g.add_node(());
        }
        for (x, es) in self.edges.iter().enumerate() {
            for &(y, _) in es {
                g.add_edge(NodeIndex::new(x), NodeIndex::new(y), ());
            }
        }
        // kosaraju_scc lists components in reverse topological order.
        let mut comps: Vec<Vec<usize>> = kosaraju_scc(&g)
            .into_iter()
            .map(|c| c.into_iter().map(|x| x.index()).collect())
            .collect();
        comps.reverse();
        let mut comp = vec![0usize; self.len()];
        for (c, nodes) in comps.iter().enumerate() {
            for &x in nodes {
                comp[x] = c;
            }
        }
        (comp, comps)
    }

    /// The cycle of a nontrivial component, as `(node, digit to next)` in
    /// walking order starting at `entry`; `None` for a trivial component.
    /// Fails if the component is not a simple cycle.
    fn cycle(&self, comp: &[usize], entry: usize) -> Result<Option<Vec<(usize, u32)>>> {
        let c = comp[entry];
        let inner = |x: usize| -> Vec<(usize, u32)> {
            self.edges[x].iter().copied().filter(|&(y, _)| comp[y] == c).collect()
        };
        let first = inner(entry);
        match first.len() {
            0 => return Ok(None),
            1 => {}
            _ => return Err(not_simple()),
        }
        let mut out = Vec::new();
        let mut x = entry;
        loop {
            let es = inner(x);
            if es.len() != 1 {
                return Err(not_simple());
            }
            out.push((x, es[0].1));
            x = es[0].0;
            if x == entry {
                return Ok(Some(out));
            }
            if out.len() > self.len() {
                return Err(not_simple());
            }
        }
    }
}

fn not_simple() -> Error {
    Error::CertificationFailed("sparse automaton has a strongly connected component that is not a simple cycle".into())
}

/// Decides sparseness; for sparse automata also computes the rank.
pub fn is_sparse(a: &Dfao) -> Result<Sparseness> {
    if let Some(w) = tied_witness(a) {
        return Ok(Sparseness::NotSparse(w));
    }
    Ok(Sparseness::Sparse { rank: rank(a)? })
}

/// Maximum number of nontrivial components along a path of the condensation
/// of the canonical-word automaton.
fn rank(a: &Dfao) -> Result<usize> {
    let g = WordGraph::new(a);
    if g.len() == 0 {
        return Ok(0);
    }
    let (comp, comps) = g.sccs();
    let mut nontrivial = vec![false; comps.len()];
    for (c, nodes) in comps.iter().enumerate() {
        nontrivial[c] = g.cycle(&comp, nodes[0])?.is_some();
    }
    // Longest path in the DAG, processing components in reverse topological
    // order.
    let mut best = vec![0usize; comps.len()];
    for c in (0..comps.len()).rev() {
        let mut tail = 0;
        for &x in &comps[c] {
            for &(y, _) in &g.edges[x] {
                if comp[y] != c {
                    tail = tail.max(best[comp[y]]);
                }
            }
        }
        best[c] = tail + usize::from(nontrivial[c]);
    }
    Ok(best[comp[0]])
}

/// Cap on the number of emitted patterns.
pub const PATTERN_CAP: usize = 100_000;

/// The support of a sparse automaton as a union of simple sparse sets (the
/// sets may overlap). Fails if `a` is not sparse.
pub fn decompose_sparse(a: &Dfao) -> Result<Vec<SupportPattern>> {
    if let Some(_w) = tied_witness(a) {
        return Err(Error::Precondition("automaton is not sparse".into()));
    }
    let g = WordGraph::new(a);
    let mut out = Vec::new();
    if g.len() == 0 {
        return Ok(out);
    }
    let (comp, _) = g.sccs();
    let mut segs = Segments::default();
    enter(&g, &comp, 0, &mut segs, a.p(), &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Literal and loop words collected so far, in reading order.
#[derive(Clone, Default)]
struct Segments {
    lits: Vec<Vec<u8>>,
    loops: Vec<Vec<u8>>,
    current: Vec<u8>,
}

impl Segments {
    fn pattern(&self, p: u32) -> SupportPattern {
        // Reading order is least significant first; patterns are written
        // most significant first.
        let rev = |w: &Vec<u8>| w.iter().rev().copied().collect::<Vec<u8>>();
        let mut v: Vec<Vec<u8>> = self.lits.iter().map(rev).collect();
        v.push(rev(&self.current));
        SupportPattern::new(p, v, self.loops.iter().map(rev).collect())
    }
}

fn enter(g: &WordGraph, comp: &[usize], x: usize, segs: &mut Segments, p: u32, out: &mut Vec<SupportPattern>) -> Result<()> {
    if out.len() > PATTERN_CAP {
        return Err(Error::CapsExhausted(format!("more than {PATTERN_CAP} patterns")));
    }
    match g.cycle(comp, x)? {
        None => {
            if g.accepting[x] {
                out.push(segs.pattern(p));
            }
            for &(y, r) in &g.edges[x] {
                let mut next = segs.clone();
                next.current.push(r as u8);
                enter(g, comp, y, &mut next, p, out)?;
            }
        }
        Some(cycle) => {
            let mut base = segs.clone();
            base.lits.push(std::mem::take(&mut base.current));
            base.loops.push(cycle.iter().map(|&(_, r)| r as u8).collect());
            let mut partial = Vec::new();
            for &(node, digit) in &cycle {
                let mut here = base.clone();
                here.current = partial.clone();
                if g.accepting[node] {
                    out.push(here.pattern(p));
                }
                for &(y, r) in &g.edges[node] {
                    if comp[y] != comp[node] {
                        let mut next = here.clone();
                        next.current.push(r as u8);
                        enter(g, comp, y, &mut next, p, out)?;
                    }
                }
                partial.push(digit as u8);
            }
        }
    }
    Ok(())
}
