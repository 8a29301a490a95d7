//! Weighted hypergraphs with a boundary colouring and their min-cut entropies.
//!
//! A hyperedge is cut when it has members on both sides of the bipartition.
//! The entropy of a subsystem `I` is the minimum cut weight over all
//! bipartitions whose boundary part is exactly the boundary vertices of `I`;
//! the purifier is always on the excluded side.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Index};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, format_rational, int, Rational};
use crate::subsystem::{check_party_count, party_label, Subsystem, SubsystemIndex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    /// Sorted, distinct vertex indices.
    pub members: Vec<usize>,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    vertices: Vec<String>,
    /// `boundary[p]` is the vertex coloured by party `p`; `boundary[n]` is the purifier.
    boundary: Vec<usize>,
    edges: Vec<Hyperedge>,
}

/// The included side `W` of a bipartition, as vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cut {
    pub included: BTreeSet<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct MinCutOptions {
    /// Graphs with more bulk vertices than this are refused.
    pub bulk_limit: usize,
}

impl Default for MinCutOptions {
    fn default() -> Self {
        MinCutOptions { bulk_limit: 24 }
    }
}

impl Hypergraph {
    /// Validates and assembles a hypergraph. Edge member lists are sorted and
    /// deduplicated.
    pub fn new(
        n: usize,
        vertices: Vec<String>,
        boundary: Vec<usize>,
        edges: Vec<Hyperedge>,
    ) -> Result<Self> {
        check_party_count(n)?;
        if boundary.len() != n + 1 {
            return Err(Error::Dimension { expected: n + 1, found: boundary.len() });
        }
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::input(format!("duplicate vertex `{v}`")));
            }
        }
        let mut used = BTreeSet::new();
        for (p, &b) in boundary.iter().enumerate() {
            if b >= vertices.len() {
                return Err(Error::input(format!("boundary vertex of party {} is out of range", party_label(n, p))));
            }
            if !used.insert(b) {
                return Err(Error::input(format!(
                    "vertex `{}` colours more than one party",
                    vertices[b]
                )));
            }
        }
        let mut clean = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.members.sort_unstable();
            e.members.dedup();
            if e.members.len() < 2 {
                return Err(Error::input("hyperedges need at least two distinct vertices"));
            }
            if let Some(&v) = e.members.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::input(format!("edge refers to unknown vertex index {v}")));
            }
            if e.weight.is_negative() {
                return Err(Error::input(format!("negative weight {}", format_rational(&e.weight))));
            }
            clean.push(e);
        }
        Ok(Hypergraph { n, vertices, boundary, edges: clean })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Party coloured by vertex `v`, if it is a boundary vertex.
    pub fn party_of(&self, v: usize) -> Option<usize> {
        self.boundary.iter().position(|&b| b == v)
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.party_of(v).is_some()
    }

    /// Bulk vertices in vertex order.
    pub fn bulk(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| !self.is_boundary(v)).collect()
    }

    /// Largest cardinality among edges of nonzero weight.
    pub fn rank(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| !e.weight.is_zero())
            .map(|e| e.members.len())
            .max()
            .unwrap_or(0)
    }

    /// Number of nonzero-weight edges incident on `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| !e.weight.is_zero() && e.members.contains(&v))
            .count()
    }

    /// The same graph with every weight multiplied by `c`.
    pub fn scaled(&self, c: &Rational) -> Result<Hypergraph> {
        if c.is_negative() {
            return Err(Error::input("scale factor must be non-negative"));
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            e.weight = &e.weight * c;
        }
        Ok(g)
    }

    /// Disjoint union with boundary vertices merged party by party. Bulk
    /// vertices of `other` are renamed if they clash.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.n != other.n {
            return Err(Error::Dimension { expected: self.n, found: other.n });
        }
        let mut vertices = self.vertices.clone();
        let mut map = vec![usize::MAX; other.vertices.len()];
        for (p, &b) in other.boundary.iter().enumerate() {
            map[b] = self.boundary[p];
        }
        for v in other.bulk() {
            let mut name = other.vertices[v].clone();
            while vertices.contains(&name) {
                name.push('\'');
            }
            map[v] = vertices.len();
            vertices.push(name);
        }
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Hyperedge {
            members: e.members.iter().map(|&v| map[v]).collect(),
            weight: e.weight.clone(),
        }));
        Hypergraph::new(self.n, vertices, self.boundary.clone(), edges)
    }
}

/// Fluent construction by vertex name. Boundary vertices are created up
/// front and named by their party labels.
#[derive(Debug, Clone)]
pub struct HypergraphBuilder {
    n: usize,
    vertices: Vec<String>,
    edges: Vec<(Vec<String>, Rational)>,
}

impl HypergraphBuilder {
    pub fn new(n: usize) -> Self {
        HypergraphBuilder {
            n,
            vertices: (0..=n).map(|p| party_label(n, p)).collect(),
            edges: Vec::new(),
        }
    }

    pub fn bulk(mut self, name: &str) -> Self {
        if !self.vertices.iter().any(|v| v == name) {
            self.vertices.push(name.to_string());
        }
        self
    }

    pub fn edge(mut self, members: &[&str], weight: Rational) -> Self {
        self.edges.push((members.iter().map(|s| s.to_string()).collect(), weight));
        self
    }

    pub fn unit_edge(self, members: &[&str]) -> Self {
        self.edge(members, Rational::one())
    }

    /// Unknown member names are added as bulk vertices.
    pub fn build(self) -> Result<Hypergraph> {
        let mut vertices = self.vertices;
        let mut edges = Vec::with_capacity(self.edges.len());
        for (names, weight) in self.edges {
            let mut members = Vec::with_capacity(names.len());
            for name in names {
                let idx = match vertices.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None => {
                        vertices.push(name);
                        vertices.len() - 1
                    }
                };
                members.push(idx);
            }
            edges.push(Hyperedge { members, weight });
        }
        Hypergraph::new(self.n, vertices, (0..=self.n).collect(), edges)
    }
}

impl Cut {
    pub fn new(included: impl IntoIterator<Item = usize>) -> Self {
        Cut { included: included.into_iter().collect() }
    }

    pub fn from_names(graph: &Hypergraph, names: &[&str]) -> Result<Self> {
        names
            .iter()
            .map(|n| graph.vertex_index(n).ok_or_else(|| Error::input(format!("unknown vertex `{n}`"))))
            .collect::<Result<BTreeSet<_>>>()
            .map(|included| Cut { included })
    }

    pub fn names<'a>(&self, graph: &'a Hypergraph) -> Vec<&'a str> {
        self.included.iter().map(|&v| graph.vertices[v].as_str()).collect()
    }
}

/// Total weight of edges with members on both sides of the cut.
pub fn cut_weight(graph: &Hypergraph, cut: &Cut) -> Result<Rational> {
    if let Some(&v) = cut.included.iter().find(|&&v| v >= graph.vertices.len()) {
        return Err(Error::input(format!("cut refers to unknown vertex index {v}")));
    }
    let mut total = Rational::zero();
    for e in &graph.edges {
        let inside = e.members.iter().filter(|v| cut.included.contains(v)).count();
        if inside > 0 && inside < e.members.len() {
            total += &e.weight;
        }
    }
    Ok(total)
}

/// Exact integer image of the edge weights: `weights[i] = w_i * denominator`.
struct IntegerWeights {
    denominator: BigInt,
    weights: Vec<i128>,
}

fn integer_weights(graph: &Hypergraph) -> Result<IntegerWeights> {
    let denominator = common_denominator(graph.edges.iter().map(|e| &e.weight));
    let weights = graph
        .edges
        .iter()
        .map(|e| {
            (e.weight.numer() * (&denominator / e.weight.denom()))
                .to_i128()
                .filter(|w| *w < i128::MAX / (graph.edges.len() as i128 + 1))
                .ok_or_else(|| Error::resource("edge weights too large for exact cut enumeration"))
        })
        .collect::<Result<_>>()?;
    Ok(IntegerWeights { denominator, weights })
}

/// Whether sorted index set `a` precedes `b` lexicographically.
fn lex_less(a: u64, b: u64) -> bool {
    if a == b {
        return false;
    }
    let d = (a ^ b).trailing_zeros();
    let above = |m: u64| d < 63 && m >> (d + 1) != 0;
    if a >> d & 1 == 1 {
        above(b)
    } else {
        !above(a)
    }
}

struct Enumerator<'g> {
    graph: &'g Hypergraph,
    bulk: Vec<usize>,
    /// Edges incident on each bulk vertex, by position in `bulk`.
    incident: Vec<Vec<usize>>,
    weights: IntegerWeights,
}

impl<'g> Enumerator<'g> {
    fn new(graph: &'g Hypergraph, opts: &MinCutOptions) -> Result<Self> {
        let bulk = graph.bulk();
        if bulk.len() > opts.bulk_limit {
            return Err(Error::resource(format!(
                "{} bulk vertices exceed the limit of {}",
                bulk.len(),
                opts.bulk_limit
            )));
        }
        if graph.vertices.len() > 64 {
            return Err(Error::resource(format!(
                "{} vertices exceed the 64 supported by cut enumeration",
                graph.vertices.len()
            )));
        }
        let mut incident = vec![Vec::new(); bulk.len()];
        for (ei, e) in graph.edges.iter().enumerate() {
            for (j, &b) in bulk.iter().enumerate() {
                if e.members.contains(&b) {
                    incident[j].push(ei);
                }
            }
        }
        let weights = integer_weights(graph)?;
        Ok(Enumerator { graph, bulk, incident, weights })
    }

    /// Minimum over bulk subsets, in Gray-code order, with the boundary part
    /// fixed to the vertices of `subsystem`.
    fn min_cut(&self, subsystem: Subsystem) -> (i128, u64) {
        let g = self.graph;
        let mut base = 0u64;
        for p in subsystem.parties() {
            base |= 1 << g.boundary[p];
        }
        let mut inside: Vec<usize> = g
            .edges
            .iter()
            .map(|e| e.members.iter().filter(|&&v| base >> v & 1 == 1).count())
            .collect();
        let crossing = |e: usize, inside: usize| inside > 0 && inside < g.edges[e].members.len();
        let mut value: i128 = (0..g.edges.len())
            .filter(|&e| crossing(e, inside[e]))
            .map(|e| self.weights.weights[e])
            .sum();
        let mut mask = base;
        let mut best = (value, mask);
        let steps = 1u64 << self.bulk.len();
        for step in 1..steps {
            let j = step.trailing_zeros() as usize;
            let v = self.bulk[j];
            let adding = mask >> v & 1 == 0;
            mask ^= 1 << v;
            for &e in &self.incident[j] {
                let before = crossing(e, inside[e]);
                if adding {
                    inside[e] += 1;
                } else {
                    inside[e] -= 1;
                }
                let after = crossing(e, inside[e]);
                if before != after {
                    let w = self.weights.weights[e];
                    value += if after { w } else { -w };
                }
            }
            if value < best.0 || (value == best.0 && lex_less(mask, best.1)) {
                best = (value, mask);
            }
        }
        best
    }

    fn to_rational(&self, v: i128) -> Rational {
        Rational::new(BigInt::from(v), self.weights.denominator.clone())
    }
}

fn mask_to_cut(mask: u64) -> Cut {
    Cut::new((0..64).filter(|&v| mask >> v & 1 == 1))
}

fn check_subsystem(graph: &Hypergraph, subsystem: Subsystem) -> Result<()> {
    if subsystem.is_empty() {
        return Err(Error::input("empty subsystem"));
    }
    if subsystem.0 >> graph.n != 0 {
        return Err(Error::input(format!("subsystem outside the {} parties", graph.n)));
    }
    Ok(())
}

/// Discrete entropy of `subsystem` with a witnessing minimal cut. Ties are
/// broken towards the lexicographically smallest included vertex set.
pub fn min_cut_entropy(
    graph: &Hypergraph,
    subsystem: Subsystem,
    opts: &MinCutOptions,
) -> Result<(Rational, Cut)> {
    check_subsystem(graph, subsystem)?;
    let en = Enumerator::new(graph, opts)?;
    let (v, mask) = en.min_cut(subsystem);
    Ok((en.to_rational(v), mask_to_cut(mask)))
}

/// Entropies of all `2^n - 1` subsystems in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntropyVector {
    n: usize,
    entries: Vec<Rational>,
}

impl EntropyVector {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        check_party_count(n)?;
        let expected = (1usize << n) - 1;
        if entries.len() != expected {
            return Err(Error::Dimension { expected, found: entries.len() });
        }
        if entries.iter().any(|e| e.is_negative()) {
            return Err(Error::input("entropies must be non-negative"));
        }
        Ok(EntropyVector { n, entries })
    }

    pub fn zeros(n: usize) -> Self {
        EntropyVector { n, entries: vec![Rational::zero(); (1 << n) - 1] }
    }

    pub fn from_integers(n: usize, values: &[i64]) -> Result<Self> {
        EntropyVector::new(n, values.iter().map(|&v| int(v)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, s: Subsystem) -> Option<&Rational> {
        SubsystemIndex::new(self.n).position(s).map(|i| &self.entries[i])
    }

    pub fn scaled(&self, c: &Rational) -> EntropyVector {
        EntropyVector { n: self.n, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// `(label, value)` pairs in canonical order.
    pub fn labelled(&self) -> Vec<(String, Rational)> {
        SubsystemIndex::new(self.n)
            .subsystems()
            .iter()
            .zip(&self.entries)
            .map(|(s, v)| (s.label(self.n), v.clone()))
            .collect()
    }
}

impl Index<usize> for EntropyVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl Add for &EntropyVector {
    type Output = EntropyVector;
    fn add(self, rhs: &EntropyVector) -> EntropyVector {
        assert_eq!(self.n, rhs.n, "adding entropy vectors of different party counts");
        EntropyVector {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Min-cut entropies for every non-empty subsystem, in canonical order.
pub fn entropy_vector(graph: &Hypergraph, opts: &MinCutOptions) -> Result<EntropyVector> {
    Ok(entropy_vector_with_cuts(graph, opts)?.0)
}

fn entropy_vector_with_cuts(
    graph: &Hypergraph,
    opts: &MinCutOptions,
) -> Result<(EntropyVector, Vec<u64>)> {
    let en = Enumerator::new(graph, opts)?;
    let index = SubsystemIndex::new(graph.n);
    let mut entries = Vec::with_capacity(index.len());
    let mut cuts = Vec::with_capacity(index.len());
    for &s in index.subsystems() {
        let (v, mask) = en.min_cut(s);
        entries.push(en.to_rational(v));
        cuts.push(mask);
    }
    Ok((EntropyVector { n: graph.n, entries }, cuts))
}

/// Replaces every edge by parallel unit-weight copies after rescaling all
/// weights by the least common denominator. Returns the scale and the new
/// graph; zero-weight edges disappear.
pub fn expand_to_unit_weights(graph: &Hypergraph) -> Result<(Rational, Hypergraph)> {
    const MAX_COPIES: usize = 1 << 20;
    let weights = integer_weights(graph)?;
    let mut edges = Vec::new();
    for (e, &w) in graph.edges.iter().zip(&weights.weights) {
        let copies = w as usize;
        if w as u128 > MAX_COPIES as u128 || edges.len() + copies > MAX_COPIES {
            return Err(Error::resource("unit-weight expansion would exceed 2^20 edges"));
        }
        for _ in 0..copies {
            edges.push(Hyperedge { members: e.members.clone(), weight: Rational::one() });
        }
    }
    let g = Hypergraph::new(graph.n, graph.vertices.clone(), graph.boundary.clone(), edges)?;
    Ok((Rational::from_integer(weights.denominator), g))
}

#[derive(Debug, Clone, Copy)]
pub struct ReductionOptions {
    /// Largest party count accepted; the result can have `2^(2^n - 1)` vertices.
    pub max_parties: usize,
    pub min_cut: MinCutOptions,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions { max_parties: 3, min_cut: MinCutOptions::default() }
    }
}

/// Collapses the graph onto bit-string vertices: vertex `v` gets the string
/// `x(v)` with `x_I = 1` iff `v` lies in the witnessed minimal cut for `I`.
/// Vertices with equal strings merge and edge weights add up per set of
/// distinct strings; edges inside a single cell vanish. The entropy vector is
/// unchanged.
pub fn universal_reduction(graph: &Hypergraph, opts: &ReductionOptions) -> Result<Hypergraph> {
    let n = graph.n;
    if n > opts.max_parties {
        return Err(Error::resource(format!(
            "universal reduction limited to {} parties, graph has {n}",
            opts.max_parties
        )));
    }
    let (_, cuts) = entropy_vector_with_cuts(graph, &opts.min_cut)?;
    let width = cuts.len();
    let cell = |v: usize| -> u64 {
        cuts.iter().fold(0u64, |acc, &m| acc << 1 | (m >> v & 1))
    };
    let cells: Vec<u64> = (0..graph.vertices.len()).map(cell).collect();

    // Boundary cells first in party order, then the remaining cells ascending.
    let mut names: BTreeMap<u64, String> = BTreeMap::new();
    let mut vertices = Vec::new();
    let mut slot: HashMap<u64, usize> = HashMap::new();
    for (p, &b) in graph.boundary.iter().enumerate() {
        slot.insert(cells[b], vertices.len());
        vertices.push(party_label(n, p));
    }
    let mut bulk_cells: Vec<u64> = cells.iter().copied().filter(|c| !slot.contains_key(c)).collect();
    bulk_cells.sort_unstable();
    bulk_cells.dedup();
    for c in bulk_cells {
        let name = format!("x{:0width$b}", c, width = width);
        names.insert(c, name.clone());
        slot.insert(c, vertices.len());
        vertices.push(name);
    }

    let mut merged: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for e in &graph.edges {
        if e.weight.is_zero() {
            continue;
        }
        let mut members: Vec<usize> = e.members.iter().map(|&v| slot[&cells[v]]).collect();
        members.sort_unstable();
        members.dedup();
        if members.len() < 2 {
            continue;
        }
        *merged.entry(members).or_insert_with(Rational::zero) += &e.weight;
    }
    let edges = merged.into_iter().map(|(members, weight)| Hyperedge { members, weight }).collect();
    Hypergraph::new(n, vertices, (0..=n).collect(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ghz3() -> Hypergraph {
        HypergraphBuilder::new(2).unit_edge(&["A", "B", "O"]).build().unwrap()
    }

    fn star() -> Hypergraph {
        HypergraphBuilder::new(3)
            .unit_edge(&["s", "A"])
            .unit_edge(&["s", "B"])
            .unit_edge(&["s", "C"])
            .unit_edge(&["s", "O"])
            .build()
            .unwrap()
    }

    #[test]
    fn cut_weights_on_small_graphs() {
        let g = ghz3();
        assert_eq!(cut_weight(&g, &Cut::from_names(&g, &["A"]).unwrap()).unwrap(), int(1));
        assert_eq!(cut_weight(&g, &Cut::from_names(&g, &["A", "B", "O"]).unwrap()).unwrap(), int(0));
        let s = star();
        assert_eq!(cut_weight(&s, &Cut::from_names(&s, &["A", "s"]).unwrap()).unwrap(), int(3));
        assert!(cut_weight(&s, &Cut::new([99])).is_err());
    }

    #[test]
    fn min_cuts() {
        let opts = MinCutOptions::default();
        let (v, _) = min_cut_entropy(&ghz3(), Subsystem(0b01), &opts).unwrap();
        assert_eq!(v, int(1));
        let (v, cut) = min_cut_entropy(&star(), Subsystem(0b011), &opts).unwrap();
        assert_eq!(v, int(2));
        // both {A,B} and {A,B,s} cost 2; the smaller set wins
        assert_eq!(cut.names(&star()), ["A", "B"]);
        assert!(min_cut_entropy(&star(), Subsystem(0), &opts).is_err());
    }

    #[test]
    fn lex_order_on_masks() {
        // {0,1} < {0,2}
        assert!(lex_less(0b011, 0b101));
        assert!(!lex_less(0b101, 0b011));
        // {0,2} < {1}
        assert!(lex_less(0b101, 0b010));
        // {0,1} is a prefix of {0,1,2}
        assert!(lex_less(0b011, 0b111));
        assert!(!lex_less(0b111, 0b011));
    }

    #[test]
    fn ghz4_vector_is_all_ones() {
        let g = HypergraphBuilder::new(3).unit_edge(&["A", "B", "C", "O"]).build().unwrap();
        let v = entropy_vector(&g, &MinCutOptions::default()).unwrap();
        assert!(v.entries().iter().all(|e| *e == int(1)));
    }

    #[test]
    fn bell_pair_with_isolated_party() {
        let g = HypergraphBuilder::new(2).unit_edge(&["A", "O"]).build().unwrap();
        let v = entropy_vector(&g, &MinCutOptions::default()).unwrap();
        assert_eq!(v.entries(), &[int(1), int(0), int(1)]);
    }

    #[test]
    fn zero_weight_edge_gives_zero_vector() {
        let g = HypergraphBuilder::new(2).edge(&["A", "B"], int(0)).build().unwrap();
        assert!(entropy_vector(&g, &MinCutOptions::default()).unwrap().is_zero());
    }

    #[test]
    fn unit_expansion_scales_entropies() {
        let g = HypergraphBuilder::new(1).edge(&["A", "O"], ratio(3, 2)).build().unwrap();
        let (scale, e) = expand_to_unit_weights(&g).unwrap();
        assert_eq!(scale, int(2));
        assert_eq!(e.edges().len(), 3);

        let g = HypergraphBuilder::new(2)
            .edge(&["A", "s"], ratio(1, 3))
            .edge(&["s", "B", "O"], ratio(1, 2))
            .build()
            .unwrap();
        let (scale, e) = expand_to_unit_weights(&g).unwrap();
        assert_eq!(scale, int(6));
        assert_eq!(e.edges().len(), 5);
        let opts = MinCutOptions::default();
        assert_eq!(
            entropy_vector(&e, &opts).unwrap(),
            entropy_vector(&g, &opts).unwrap().scaled(&scale)
        );
    }

    #[test]
    fn reduction_preserves_entropies() {
        let opts = MinCutOptions::default();
        for g in [ghz3(), star()] {
            let r = universal_reduction(&g, &ReductionOptions::default()).unwrap();
            assert_eq!(entropy_vector(&r, &opts).unwrap(), entropy_vector(&g, &opts).unwrap());
        }
    }

    #[test]
    fn reduction_refuses_large_party_counts() {
        let g = HypergraphBuilder::new(4).unit_edge(&["A", "O"]).build().unwrap();
        assert!(matches!(
            universal_reduction(&g, &ReductionOptions::default()),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn validation() {
        assert!(HypergraphBuilder::new(2).unit_edge(&["A"]).build().is_err());
        assert!(HypergraphBuilder::new(2).unit_edge(&["A", "A"]).build().is_err());
        assert!(HypergraphBuilder::new(2).edge(&["A", "B"], int(-1)).build().is_err());
        assert!(Hypergraph::new(1, vec!["A".into(), "O".into()], vec![0, 0], vec![]).is_err());
    }

    #[test]
    fn bulk_limit_is_enforced() {
        let mut b = HypergraphBuilder::new(1);
        let names: Vec<String> = (0..5).map(|i| format!("s{i}")).collect();
        for w in names.windows(2) {
            b = b.unit_edge(&[&w[0], &w[1]]);
        }
        let g = b.unit_edge(&["A", "s0"]).build().unwrap();
        let opts = MinCutOptions { bulk_limit: 4 };
        assert!(matches!(entropy_vector(&g, &opts), Err(Error::Resource(_))));
    }
}
