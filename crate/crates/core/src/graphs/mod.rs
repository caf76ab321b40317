//! Countable graphs with the extension property and back-and-forth
//! isomorphisms between them.
//!
//! Vertices are natural numbers ([`BigUint`]) with decimal tokens. Graph
//! values are shared as `Arc<dyn CountableGraph>`, so combinators such as
//! [`Complement`] nest freely.

mod derived;
mod instances;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::engine::GenericBuilder;
use crate::partialiso::{
    domain_dense_set, generic_query, generic_query_inverse, image_dense_set, BackAndForth,
    CountableCarrier, FinitePartialFunction, FnPoset,
};
use crate::report::{Check, Report};
use crate::token::Token;

pub use derived::{Complement, DeleteVertices, ToggleEdges};
pub use instances::{BitGraph, CompleteGraph, HfGraph, RandomGraph, DEFAULT_BIT_BUDGET, DEFAULT_SEARCH_CAP};

pub type Vertex = BigUint;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("no witness for A = {a}, B = {b} among {searched} candidates (failure bound {failure_bound:e})")]
    NoWitness {
        a: String,
        b: String,
        searched: u64,
        failure_bound: f64,
    },
    /// The witness needs a set bit at an index that is `index_bits` binary
    /// digits long and at least `budget`.
    #[error("witness overflow: needs a set bit at a {index_bits}-digit binary index, the budget allows indices below {budget}")]
    WitnessOverflow { index_bits: u64, budget: u64 },
    #[error("witness {vertex} breaks the extension contract: {reason}")]
    BadWitness { vertex: String, reason: String },
    #[error("unknown graph {0:?}")]
    UnknownGraph(String),
}

/// Vertices the witness must not be, beyond `A ∪ B`.
pub type Avoid<'a> = &'a dyn Fn(&Vertex) -> bool;

/// A countable simple graph with an enumerated vertex set.
pub trait CountableGraph: Send + Sync {
    /// Registry name; parsing it with [`parse_graph`] rebuilds the graph.
    fn name(&self) -> String;

    fn vertex(&self, n: usize) -> Vertex;
    fn vertex_index(&self, v: &Vertex) -> Option<usize>;
    fn has_vertex(&self, v: &Vertex) -> bool;

    /// Number of vertices, `None` when infinite.
    fn order(&self) -> Option<usize> {
        None
    }

    fn adjacent(&self, x: &Vertex, y: &Vertex) -> bool;

    /// A vertex outside `A ∪ B`, adjacent to all of `A` and to none of `B`,
    /// for which `avoid` is false. `bound` overrides the candidate limit of
    /// search-based graphs and is ignored by closed-form witnesses.
    fn witness_avoiding(&self, a: &[Vertex], b: &[Vertex], avoid: Avoid<'_>, bound: Option<u64>)
        -> Result<Vertex, GraphError>;

    fn witness(&self, a: &[Vertex], b: &[Vertex]) -> Result<Vertex, GraphError> {
        self.witness_avoiding(a, b, &|_| false, None)
    }

    /// `(1 − 2^−(|A|+|B|))^k` for graphs whose witnesses come from a bounded
    /// search over `k` candidates; `None` for closed-form witnesses.
    fn failure_bound(&self, _constraints: usize) -> Option<f64> {
        None
    }
}

/// `(1 − 2^−m)^k`.
pub fn search_failure_bound(m: usize, k: u64) -> f64 {
    let miss = -(0.5f64.powi(m as i32));
    (k as f64 * miss.ln_1p()).exp()
}

/// Checks the witness contract directly against `adjacent`.
pub fn witness_violation(g: &dyn CountableGraph, a: &[Vertex], b: &[Vertex], v: &Vertex) -> Option<String> {
    if !g.has_vertex(v) {
        return Some("not a vertex".into());
    }
    if a.contains(v) || b.contains(v) {
        return Some("lies in A ∪ B".into());
    }
    if let Some(x) = a.iter().find(|x| !g.adjacent(v, x)) {
        return Some(format!("not adjacent to {x} in A"));
    }
    if let Some(y) = b.iter().find(|y| g.adjacent(v, y)) {
        return Some(format!("adjacent to {y} in B"));
    }
    None
}

/// [`CountableGraph::witness_avoiding`] followed by a direct recheck.
pub fn checked_witness(
    g: &dyn CountableGraph,
    a: &[Vertex],
    b: &[Vertex],
    avoid: Avoid<'_>,
    bound: Option<u64>,
) -> Result<Vertex, GraphError> {
    let v = g.witness_avoiding(a, b, avoid, bound)?;
    let reason = witness_violation(g, a, b, &v).or_else(|| avoid(&v).then(|| "excluded vertex".into()));
    match reason {
        None => Ok(v),
        Some(reason) => Err(GraphError::BadWitness {
            vertex: v.token(),
            reason,
        }),
    }
}

/// Least vertex in the first `bound` of the enumeration satisfying the
/// contract, with the failure bound of the search on error.
pub fn search_witness(
    g: &dyn CountableGraph,
    a: &[Vertex],
    b: &[Vertex],
    avoid: Avoid<'_>,
    bound: u64,
) -> Result<Vertex, GraphError> {
    let limit = g.order().map_or(bound, |n| bound.min(n as u64));
    for i in 0..limit {
        let v = g.vertex(i as usize);
        if a.contains(&v) || b.contains(&v) || avoid(&v) {
            continue;
        }
        if a.iter().all(|x| g.adjacent(&v, x)) && !b.iter().any(|y| g.adjacent(&v, y)) {
            return Ok(v);
        }
    }
    Err(GraphError::NoWitness {
        a: vertex_list(a),
        b: vertex_list(b),
        searched: limit,
        failure_bound: search_failure_bound(a.len() + b.len(), limit),
    })
}

fn vertex_list(vs: &[Vertex]) -> String {
    let items: Vec<String> = vs.iter().map(Token::token).collect();
    format!("{{{}}}", items.join(","))
}

/// Extension property over the first `k` vertices: for every assignment of
/// each vertex to `A`, `B` or neither, a witness exists and rechecks.
pub fn check_extension_property(g: &dyn CountableGraph, k: usize, bound: Option<u64>) -> Report {
    let vertices: Vec<Vertex> = (0..g.order().map_or(k, |n| n.min(k))).map(|i| g.vertex(i)).collect();
    let mut failure = None;
    let mut worst: Option<f64> = None;
    let mut count = 0u64;
    let total = 3u64.pow(vertices.len() as u32);
    for code in 0..total {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let mut c = code;
        for v in &vertices {
            match c % 3 {
                1 => a.push(v.clone()),
                2 => b.push(v.clone()),
                _ => {}
            }
            c /= 3;
        }
        match checked_witness(g, &a, &b, &|_| false, bound) {
            Ok(_) => {
                count += 1;
                if let Some(fb) = g.failure_bound(a.len() + b.len()) {
                    worst = Some(worst.map_or(fb, |w: f64| w.max(fb)));
                }
            }
            Err(e) => {
                failure = Some(format!("A = {}, B = {}: {e}", vertex_list(&a), vertex_list(&b)));
                break;
            }
        }
    }
    let check = Check::from_failure(format!("extension/{}", g.name()), failure);
    let mut report = Report::new();
    report.push(if check.pass {
        let mut w = format!("{count} assignments");
        if let Some(fb) = worst {
            w.push_str(&format!(", failure bound {fb:e}"));
        }
        check.with_witness(w)
    } else {
        check
    });
    report
}

/// The enumerated vertex set of a graph as a carrier.
#[derive(Clone)]
pub struct GraphCarrier(pub Arc<dyn CountableGraph>);

impl CountableCarrier for GraphCarrier {
    type Element = Vertex;

    fn enumerate(&self, n: usize) -> Vertex {
        self.0.vertex(n)
    }

    fn index(&self, x: &Vertex) -> Option<usize> {
        self.0.vertex_index(x)
    }

    fn contains(&self, x: &Vertex) -> bool {
        self.0.has_vertex(x)
    }

    fn len(&self) -> Option<usize> {
        self.0.order()
    }
}

pub type GraphCondition = FinitePartialFunction<Vertex, Vertex>;
pub type GraphFamily = BackAndForth<GraphCarrier, GraphCarrier, GraphCondition>;
pub type GraphBuilder = GenericBuilder<FnPoset<Vertex, Vertex>, GraphFamily>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// The pair added to `p` for `x`: forward, `x` is a source vertex and gets
/// `target.witness(p[N(x) ∩ dom p], p[dom p ∖ N(x)])`; backward, `x` is a
/// target vertex and gets the mirror witness in the source.
pub fn refine_graph_condition(
    source: &dyn CountableGraph,
    target: &dyn CountableGraph,
    p: &GraphCondition,
    x: &Vertex,
    direction: Direction,
    bound: Option<u64>,
) -> Result<GraphCondition, GraphError> {
    let pair = match direction {
        Direction::Forward => {
            let (a, b) = split_by_adjacency(source, p.iter().map(|(k, v)| (k, v)), x);
            (x.clone(), checked_witness(target, &a, &b, &|_| false, bound)?)
        }
        Direction::Backward => {
            let (a, b) = split_by_adjacency(target, p.iter().map(|(k, v)| (v, k)), x);
            (checked_witness(source, &a, &b, &|_| false, bound)?, x.clone())
        }
    };
    let mut q = p.clone();
    q.insert(pair.0, pair.1).expect("new domain element");
    Ok(q)
}

/// For pairs `(here, there)`, the `there` sides of `here`-neighbours of `x`
/// and of non-neighbours.
fn split_by_adjacency<'a>(
    g: &dyn CountableGraph,
    pairs: impl Iterator<Item = (&'a Vertex, &'a Vertex)>,
    x: &Vertex,
) -> (Vec<Vertex>, Vec<Vertex>) {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (here, there) in pairs {
        if g.adjacent(x, here) {
            a.push(there.clone());
        } else {
            b.push(there.clone());
        }
    }
    (a, b)
}

/// A builder over partial isomorphisms `G → H` with the interleaved family
/// `D_x` (even stages) and `D'_y` (odd stages).
pub fn build_graph_iso(source: Arc<dyn CountableGraph>, target: Arc<dyn CountableGraph>, bound: Option<u64>) -> GraphBuilder {
    let (s1, t1) = (Arc::clone(&source), Arc::clone(&target));
    let (s2, t2) = (Arc::clone(&source), Arc::clone(&target));
    let family = BackAndForth::new(
        GraphCarrier(source),
        GraphCarrier(target),
        move |x: &Vertex| {
            let (s, t) = (Arc::clone(&s1), Arc::clone(&t1));
            domain_dense_set(x.clone(), move |p: &GraphCondition, x: &Vertex| {
                let q = refine_graph_condition(&*s, &*t, p, x, Direction::Forward, bound)?;
                Ok(q.get(x).expect("just inserted").clone())
            })
        },
        move |y: &Vertex| {
            let (s, t) = (Arc::clone(&s2), Arc::clone(&t2));
            image_dense_set(y.clone(), move |p: &GraphCondition, y: &Vertex| {
                let q = refine_graph_condition(&*s, &*t, p, y, Direction::Backward, bound)?;
                Ok(q.preimage(y).expect("just inserted").clone())
            })
        },
    );
    GenericBuilder::from_max(FnPoset::new(), family).expect("Fn has a maximum")
}

/// First pair of the domain on which adjacency is not preserved both ways.
pub fn adjacency_violation(
    source: &dyn CountableGraph,
    target: &dyn CountableGraph,
    p: &GraphCondition,
) -> Option<(Vertex, Vertex)> {
    let pairs: Vec<_> = p.iter().collect();
    for (i, (x1, y1)) in pairs.iter().enumerate() {
        for (x2, y2) in &pairs[i + 1..] {
            if source.adjacent(x1, x2) != target.adjacent(y1, y2) {
                return Some(((*x1).clone(), (*x2).clone()));
            }
        }
    }
    None
}

/// Queries the first `n` vertices both ways, then checks the final
/// condition: injective, values are target vertices, the adjacency
/// biconditional on every pair, and every queried target attained.
pub fn verify_graph_iso_prefix(b: &mut GraphBuilder, n: usize) -> Report {
    let mut report = Report::new();
    let source = Arc::clone(&b.family().source().0);
    let target = Arc::clone(&b.family().target().0);
    let n_src = source.order().map_or(n, |k| k.min(n));
    let n_tgt = target.order().map_or(n, |k| k.min(n));

    let mut failure = (0..n_src)
        .map(|i| source.vertex(i))
        .find_map(|x| generic_query(b, &x).err().map(|e| format!("f({x}): {e}")));
    if failure.is_none() {
        failure = (0..n_tgt)
            .map(|j| target.vertex(j))
            .find_map(|y| generic_query_inverse(b, &y).err().map(|e| format!("f^-1({y}): {e}")));
    }
    report.push(Check::from_failure("graph/query", failure));

    let p = b.current().clone();
    report.push(Check::from_failure(
        "graph/injective",
        (!p.is_injective()).then(|| "two vertices share an image".to_string()),
    ));
    let outside = p
        .iter()
        .find(|(x, y)| !source.has_vertex(x) || !target.has_vertex(y))
        .map(|(x, y)| format!("{x} -> {y} leaves the vertex sets"));
    report.push(Check::from_failure("graph/vertices", outside));

    let broken = adjacency_violation(&*source, &*target, &p).map(|(x1, x2)| {
        format!(
            "{x1} ~ {x2} is {} but {} ~ {} is {}",
            source.adjacent(&x1, &x2),
            p.get(&x1).expect("in domain"),
            p.get(&x2).expect("in domain"),
            !source.adjacent(&x1, &x2)
        )
    });
    let pairs = p.len() * p.len().saturating_sub(1) / 2;
    let check = Check::from_failure("graph/adjacency", broken);
    report.push(if check.pass {
        check.with_witness(format!("{pairs} pairs"))
    } else {
        check
    });

    let domain_missing = (0..n_src)
        .map(|i| source.vertex(i))
        .find(|x| !p.contains_key(x))
        .map(|x| format!("{x} not in the domain"));
    let image: BTreeSet<&Vertex> = p.image().collect();
    let missing = domain_missing.or_else(|| {
        (0..n_tgt)
            .map(|j| target.vertex(j))
            .find(|y| !image.contains(y))
            .map(|y| format!("{y} not attained"))
    });
    report.push(Check::from_failure("graph/prefix-covered", missing));
    report
}

fn parse_vertex(text: &str, name: &str) -> Result<Vertex, GraphError> {
    Vertex::from_token(text).map_err(|_| GraphError::UnknownGraph(name.to_string()))
}

/// Builds a graph from its registry name: `bit`, `hf`, `random:<seed>`,
/// `complement:<name>`, `delete:<name>:<v,..>`, `toggle:<name>:<x-y,..>`.
/// `bound` sets the candidate limit of every random graph in the name.
pub fn parse_graph(name: &str, bound: Option<u64>) -> Result<Arc<dyn CountableGraph>, GraphError> {
    let unknown = || GraphError::UnknownGraph(name.to_string());
    if name == "bit" {
        return Ok(Arc::new(BitGraph::new()));
    }
    if name == "hf" {
        return Ok(Arc::new(HfGraph::new()));
    }
    if let Some(seed) = name.strip_prefix("random:") {
        let seed: u64 = seed.parse().map_err(|_| unknown())?;
        if seed.to_string() != name["random:".len()..] {
            return Err(unknown());
        }
        return Ok(Arc::new(RandomGraph::new(seed, bound)));
    }
    if let Some(inner) = name.strip_prefix("complement:") {
        return Ok(Arc::new(Complement::new(parse_graph(inner, bound)?)));
    }
    if let Some(rest) = name.strip_prefix("delete:") {
        let (inner, list) = rest.rsplit_once(':').ok_or_else(unknown)?;
        let vertices = if list.is_empty() {
            Vec::new()
        } else {
            list.split(',').map(|t| parse_vertex(t, name)).collect::<Result<_, _>>()?
        };
        return Ok(Arc::new(DeleteVertices::new(parse_graph(inner, bound)?, vertices)));
    }
    if let Some(rest) = name.strip_prefix("toggle:") {
        let (inner, list) = rest.rsplit_once(':').ok_or_else(unknown)?;
        let mut pairs = Vec::new();
        if !list.is_empty() {
            for item in list.split(',') {
                let (x, y) = item.split_once('-').ok_or_else(unknown)?;
                let (x, y) = (parse_vertex(x, name)?, parse_vertex(y, name)?);
                if x == y {
                    return Err(unknown());
                }
                pairs.push((x, y));
            }
        }
        return Ok(Arc::new(ToggleEdges::new(parse_graph(inner, bound)?, pairs)));
    }
    Err(unknown())
}
