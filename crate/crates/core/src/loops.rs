//! Positive dependency graph and loop enumeration.
//!
//! A loop is a non-empty set of ground literals such that every member
//! reaches every other member through a path of positive dependencies that
//! stays inside the set. Singletons are loops by the empty path.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::grounder::GroundProgram;
use crate::model::{Interpretation, Literal};

pub const DEFAULT_LOOP_CAP: usize = 10_000;

/// Upper bound on connected vertex sets visited while enumerating loops.
const ENUMERATION_BUDGET: usize = 1 << 22;

/// Edge `(a, b)` iff some ground rule has `a` in its head and `b` in its
/// positive body.
#[derive(Clone, Debug, Default)]
pub struct DepGraph {
    vertices: Vec<Literal>,
    index: HashMap<Literal, usize>,
    succ: Vec<BTreeSet<usize>>,
}

impl DepGraph {
    pub fn vertices(&self) -> &[Literal] {
        &self.vertices
    }

    pub fn contains(&self, l: &Literal) -> bool {
        self.index.contains_key(l)
    }

    pub fn has_edge(&self, a: &Literal, b: &Literal) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&a), Some(&b)) => self.succ[a].contains(&b),
            _ => false,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Literal, &Literal)> {
        self.succ.iter().enumerate().flat_map(move |(a, bs)| {
            bs.iter()
                .map(move |&b| (&self.vertices[a], &self.vertices[b]))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(BTreeSet::len).sum()
    }

    /// Strong connectivity of the subgraph induced by `members`.
    fn strongly_connected(&self, members: &[usize]) -> bool {
        let inside: BTreeSet<usize> = members.iter().copied().collect();
        let Some(&root) = members.first() else {
            return false;
        };
        let reach = |forward: bool| {
            let mut seen = BTreeSet::from([root]);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in &inside {
                    let edge = if forward {
                        self.succ[v].contains(&w)
                    } else {
                        self.succ[w].contains(&v)
                    };
                    if edge && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            seen.len() == inside.len()
        };
        reach(true) && reach(false)
    }
}

pub fn dep_graph(g: &GroundProgram, i: &Interpretation) -> DepGraph {
    let vertices: Vec<Literal> = g
        .literals()
        .into_iter()
        .chain(i.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: HashMap<Literal, usize> = vertices
        .iter()
        .enumerate()
        .map(|(k, l)| (l.clone(), k))
        .collect();
    let mut succ = vec![BTreeSet::new(); vertices.len()];
    for r in &g.rules {
        for h in &r.head {
            for b in &r.pos {
                succ[index[h]].insert(index[b]);
            }
        }
    }
    DepGraph {
        vertices,
        index,
        succ,
    }
}

/// A non-empty set of ground literals forming a loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loop(BTreeSet<Literal>);

impl Loop {
    pub fn literals(&self) -> &BTreeSet<Literal> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> BTreeSet<Literal> {
        self.0
    }
}

impl fmt::Display for Loop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

pub fn is_loop(set: &BTreeSet<Literal>, g: &DepGraph) -> bool {
    match set.len() {
        0 => false,
        1 => true,
        _ => {
            let Some(members) = set
                .iter()
                .map(|l| g.index.get(l).copied())
                .collect::<Option<Vec<_>>>()
            else {
                return false;
            };
            g.strongly_connected(&members)
        }
    }
}

/// Tarjan's algorithm on the subgraph induced by `members`.
fn components(g: &DepGraph, members: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    struct State<'a> {
        g: &'a DepGraph,
        members: &'a BTreeSet<usize>,
        counter: usize,
        index: HashMap<usize, usize>,
        low: HashMap<usize, usize>,
        stack: Vec<usize>,
        on_stack: BTreeSet<usize>,
        out: Vec<Vec<usize>>,
    }

    fn visit(s: &mut State<'_>, v: usize) {
        s.index.insert(v, s.counter);
        s.low.insert(v, s.counter);
        s.counter += 1;
        s.stack.push(v);
        s.on_stack.insert(v);
        let succ: Vec<usize> = s.g.succ[v]
            .iter()
            .copied()
            .filter(|w| s.members.contains(w))
            .collect();
        for w in succ {
            if !s.index.contains_key(&w) {
                visit(s, w);
                let lw = s.low[&w];
                let lv = s.low.get_mut(&v).unwrap();
                *lv = (*lv).min(lw);
            } else if s.on_stack.contains(&w) {
                let iw = s.index[&w];
                let lv = s.low.get_mut(&v).unwrap();
                *lv = (*lv).min(iw);
            }
        }
        if s.low[&v] == s.index[&v] {
            let mut comp = Vec::new();
            loop {
                let w = s.stack.pop().unwrap();
                s.on_stack.remove(&w);
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            s.out.push(comp);
        }
    }

    let mut s = State {
        g,
        members,
        counter: 0,
        index: HashMap::new(),
        low: HashMap::new(),
        stack: Vec::new(),
        on_stack: BTreeSet::new(),
        out: Vec::new(),
    };
    for &v in members {
        if !s.index.contains_key(&v) {
            visit(&mut s, v);
        }
    }
    s.out.sort();
    s.out
}

/// Strongly connected components of the subgraph induced by `i`.
pub fn induced_components(i: &Interpretation, g: &DepGraph) -> Vec<BTreeSet<Literal>> {
    let members: BTreeSet<usize> = i.iter().filter_map(|l| g.index.get(l).copied()).collect();
    components(g, &members)
        .into_iter()
        .map(|c| c.into_iter().map(|v| g.vertices[v].clone()).collect())
        .collect()
}

struct Enumerator<'a> {
    g: &'a DepGraph,
    neighbours: HashMap<usize, BTreeSet<usize>>,
    visited: usize,
    found: Vec<Vec<usize>>,
    cap: usize,
}

impl Enumerator<'_> {
    /// Enumerates every weakly connected vertex set whose least element is
    /// `root` (Wernicke's ESU scheme without a size bound) and keeps the
    /// strongly connected ones.
    fn extend(&mut self, sub: &mut Vec<usize>, mut ext: Vec<usize>, root: usize) -> Result<()> {
        self.visited += 1;
        if self.visited > ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded(format!(
                "loop enumeration visited more than {ENUMERATION_BUDGET} candidate sets"
            )));
        }
        if self.g.strongly_connected(sub) {
            self.found.push(sub.clone());
            if self.found.len() > self.cap {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} loops are contained in the interpretation",
                    self.cap
                )));
            }
        }
        while let Some(w) = ext.pop() {
            let closed: BTreeSet<usize> = sub
                .iter()
                .flat_map(|v| self.neighbours[v].iter().copied().chain([*v]))
                .collect();
            let mut next = ext.clone();
            for &u in &self.neighbours[&w] {
                if u > root && !closed.contains(&u) && !next.contains(&u) {
                    next.push(u);
                }
            }
            sub.push(w);
            self.extend(sub, next, root)?;
            sub.pop();
        }
        Ok(())
    }
}

/// Every loop contained in `i`, ordered by size and then by members.
pub fn loops_within(i: &Interpretation, g: &DepGraph, cap: usize) -> Result<Vec<Loop>> {
    let mut all = Vec::new();
    for comp in induced_components(i, g) {
        let idx: Vec<usize> = comp.iter().map(|l| g.index[l]).collect();
        let inside: BTreeSet<usize> = idx.iter().copied().collect();
        let neighbours: HashMap<usize, BTreeSet<usize>> = idx
            .iter()
            .map(|&v| {
                let n = inside
                    .iter()
                    .copied()
                    .filter(|&w| w != v && (g.succ[v].contains(&w) || g.succ[w].contains(&v)))
                    .collect();
                (v, n)
            })
            .collect();
        let mut e = Enumerator {
            g,
            neighbours,
            visited: 0,
            found: Vec::new(),
            cap: cap.saturating_sub(all.len()),
        };
        for &root in &idx {
            let ext: Vec<usize> = e.neighbours[&root].iter().copied().filter(|&u| u > root).collect();
            e.extend(&mut vec![root], ext, root)?;
        }
        all.extend(
            e.found
                .into_iter()
                .map(|vs| Loop(vs.into_iter().map(|v| g.vertices[v].clone()).collect())),
        );
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(all)
}
