//! Named hypergraph realizations of extreme rays, and checks of
//! proportionality and facet saturation.
//!
//! Expected vectors are computed by the min-cut oracle when the catalog is
//! first built, never hard-coded.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{entropy_vector, EntropyVector, Hypergraph, HypergraphBuilder, MinCutOptions};
use crate::inequality::QVector;
use crate::library::builtin_library;
use crate::rational::Rational;
use crate::subsystem::party_labels;

#[derive(Debug, Clone)]
pub struct RayEntry {
    pub name: String,
    pub n: usize,
    pub hypergraph: Hypergraph,
    pub expected: Option<EntropyVector>,
    pub provenance: String,
}

impl RayEntry {
    /// Builds an entry whose expected vector is the graph's own min-cut vector.
    pub fn derived(name: &str, hypergraph: Hypergraph, provenance: &str) -> Result<RayEntry> {
        let expected = entropy_vector(&hypergraph, &MinCutOptions::default())?;
        Ok(RayEntry {
            name: name.into(),
            n: hypergraph.n(),
            hypergraph,
            expected: Some(expected),
            provenance: provenance.into(),
        })
    }

    pub fn bulk_count(&self) -> usize {
        self.hypergraph.bulk().len()
    }
}

fn ghz(k: usize) -> Hypergraph {
    let labels = party_labels(k - 1);
    let members: Vec<&str> = labels.iter().map(String::as_str).collect();
    HypergraphBuilder::new(k - 1).unit_edge(&members).build().expect("valid GHZ graph")
}

fn star(k: usize) -> Hypergraph {
    let mut b = HypergraphBuilder::new(k - 1);
    for p in party_labels(k - 1) {
        b = b.unit_edge(&["s", &p]);
    }
    b.build().expect("valid star graph")
}

/// Two degree-4 bulk vertices joined by a 2-edge, feeding `{O,A,B}` and
/// `{C,D,E}`.
pub fn r8_graph() -> Hypergraph {
    HypergraphBuilder::new(5)
        .unit_edge(&["s1", "O"])
        .unit_edge(&["s1", "A"])
        .unit_edge(&["s1", "B"])
        .unit_edge(&["s2", "C"])
        .unit_edge(&["s2", "D"])
        .unit_edge(&["s2", "E"])
        .unit_edge(&["s1", "s2"])
        .build()
        .expect("valid graph")
}

/// A central bulk vertex joined to four degree-4 bulk vertices feeding
/// `{A,B,C}`, `{D,E,O}`, `{A,B,C}` and `{D,E,O}`.
pub fn r12_graph() -> Hypergraph {
    let mut b = HypergraphBuilder::new(5);
    for s in ["s1", "s2", "s3", "s4"] {
        b = b.unit_edge(&["s0", s]);
    }
    for (s, parties) in [("s1", ["A", "B", "C"]), ("s2", ["D", "E", "O"]), ("s3", ["A", "B", "C"]), ("s4", ["D", "E", "O"])] {
        for p in parties {
            b = b.unit_edge(&[s, p]);
        }
    }
    b.build().expect("valid graph")
}

/// One bulk vertex on a 5-edge, a 3-edge and a 2-edge.
pub fn clr5_graph() -> Hypergraph {
    HypergraphBuilder::new(5)
        .unit_edge(&["C", "D", "E", "O", "s"])
        .unit_edge(&["s", "B", "O"])
        .unit_edge(&["s", "A"])
        .build()
        .expect("valid graph")
}

fn build() -> Vec<RayEntry> {
    let mut out = Vec::new();
    let bell = |a: &str, b: &str| HypergraphBuilder::new(2).unit_edge(&[a, b]).build().expect("valid graph");
    out.push(RayEntry::derived("Bell_AO", bell("A", "O"), "unit 2-edge between A and the purifier").unwrap());
    out.push(RayEntry::derived("Bell_AB", bell("A", "B"), "unit 2-edge between A and B").unwrap());
    for k in 3..=6 {
        out.push(RayEntry::derived(&format!("GHZ{k}"), ghz(k), &format!("single {k}-edge")).unwrap());
    }
    for k in 3..=6 {
        out.push(
            RayEntry::derived(&format!("Star{k}"), star(k), &format!("bulk vertex with {k} unit 2-edges (AME entropies)"))
                .unwrap(),
        );
    }
    out.push(RayEntry::derived("R8", r8_graph(), "two-vertex 2-graph with 4-qutrit perfect tensors").unwrap());
    out.push(RayEntry::derived("R12", r12_graph(), "five-vertex 2-graph around a central perfect tensor").unwrap());
    out.push(RayEntry::derived("CLR5", clr5_graph(), "one bulk vertex on a 5-edge, a 3-edge and a 2-edge").unwrap());
    out
}

pub fn builtin_rays() -> &'static [RayEntry] {
    static RAYS: OnceLock<Vec<RayEntry>> = OnceLock::new();
    RAYS.get_or_init(build)
}

/// Case-insensitive lookup by name.
pub fn find_ray(name: &str) -> Option<&'static RayEntry> {
    builtin_rays().iter().find(|r| r.name.eq_ignore_ascii_case(name))
}

/// The positive scale `c` with `entropy_vector(graph) = c * target`, if any.
pub fn is_realization(graph: &Hypergraph, target: &EntropyVector) -> Result<Option<Rational>> {
    if graph.n() != target.n() {
        return Err(Error::Dimension { expected: target.n(), found: graph.n() });
    }
    if target.is_zero() {
        return Err(Error::input("target vector is zero"));
    }
    let s = entropy_vector(graph, &MinCutOptions::default())?;
    Ok(proportionality(&s, target))
}

/// The positive `c` with `s = c * target`, if any.
pub fn proportionality(s: &EntropyVector, target: &EntropyVector) -> Option<Rational> {
    let (i, t) = target.entries().iter().enumerate().find(|(_, t)| !t.is_zero())?;
    let c = &s.entries()[i] / t;
    if !c.is_positive() {
        return None;
    }
    let ok = s.entries().iter().zip(target.entries()).all(|(x, t)| *x == &c * t);
    ok.then_some(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Saturation {
    Saturated,
    Strict,
    Violated,
}

impl Saturation {
    pub fn as_str(self) -> &'static str {
        match self {
            Saturation::Saturated => "saturated",
            Saturation::Strict => "strict",
            Saturation::Violated => "violated",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FacetStatus {
    pub name: String,
    pub value: Rational,
    pub status: Saturation,
}

/// Evaluates every named inequality on `s` and classifies it.
pub fn saturated_facets(s: &EntropyVector, library: &[(String, QVector)]) -> Result<Vec<FacetStatus>> {
    library
        .iter()
        .map(|(name, q)| {
            let value = q.evaluate(s)?;
            let status = match value.cmp(&Rational::zero()) {
                Ordering::Equal => Saturation::Saturated,
                Ordering::Greater => Saturation::Strict,
                Ordering::Less => Saturation::Violated,
            };
            Ok(FacetStatus { name: name.clone(), value, status })
        })
        .collect()
}

/// All instances, at `n` parties, of the named built-in inequalities:
/// `sa`, `ssa`, `mmi`, `ingleton`, `q` (the five-party family), `all`, or a
/// single library name. An instance identical to the library entry keeps the
/// entry's name; other instances append their text in brackets.
pub fn inequality_set(name: &str, n: usize) -> Result<Vec<(String, QVector)>> {
    let lower = name.to_ascii_lowercase();
    let selected: Vec<_> = builtin_library()
        .iter()
        .filter(|e| match lower.as_str() {
            "all" => true,
            "q" => e.table.is_some(),
            _ => e.name.eq_ignore_ascii_case(name),
        })
        .collect();
    if selected.is_empty() {
        return Err(Error::input(format!("unknown inequality set `{name}`")));
    }
    let mut out = Vec::new();
    for e in selected {
        if e.inequality.n() > n {
            continue;
        }
        let own = (e.inequality.n() == n).then(|| e.inequality.to_q());
        for inst in e.inequality.instances_in(n)? {
            let q = inst.to_q();
            let name = if own.as_ref() == Some(&q) { e.name.clone() } else { format!("{} [{}]", e.name, inst) };
            out.push((name, q));
        }
    }
    Ok(out)
}

/// Number of entries per bulk-vertex count.
pub fn bulk_census(rays: &[RayEntry]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for r in rays {
        *out.entry(r.bulk_count()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn ghz4_is_all_ones() {
        let r = find_ray("GHZ4").unwrap();
        assert_eq!(r.n, 3);
        assert_eq!(r.expected.as_ref().unwrap(), &EntropyVector::from_integers(3, &[1; 7]).unwrap());
    }

    #[test]
    fn bell_ao() {
        let r = find_ray("Bell_AO").unwrap();
        let v = r.expected.as_ref().unwrap();
        assert_eq!(v.entries(), EntropyVector::from_integers(2, &[1, 0, 1]).unwrap().entries());
    }

    #[test]
    fn realization_scales() {
        let g = find_ray("GHZ4").unwrap().hypergraph.clone();
        let ones = EntropyVector::from_integers(3, &[1; 7]).unwrap();
        assert_eq!(is_realization(&g, &ones).unwrap(), Some(int(1)));
        assert_eq!(is_realization(&g.scaled(&int(2)).unwrap(), &ones).unwrap(), Some(int(2)));
        let star = find_ray("Star4").unwrap().hypergraph.clone();
        assert_eq!(is_realization(&star, &ones).unwrap(), None);
        assert!(is_realization(&g, &EntropyVector::zeros(3)).is_err());
    }

    #[test]
    fn ghz4_facets() {
        let s = find_ray("GHZ4").unwrap().expected.clone().unwrap();
        let mmi = saturated_facets(&s, &inequality_set("mmi", 3).unwrap()).unwrap();
        assert!(!mmi.is_empty());
        assert!(mmi.iter().all(|f| f.status == Saturation::Violated && f.value == int(-1)));
        let sa = saturated_facets(&s, &inequality_set("sa", 3).unwrap()).unwrap();
        assert!(sa.iter().all(|f| f.status == Saturation::Strict));
        let zero = saturated_facets(&EntropyVector::zeros(3), &inequality_set("all", 3).unwrap()).unwrap();
        assert!(zero.iter().all(|f| f.status == Saturation::Saturated));
    }

    #[test]
    fn bell_saturates_purified_sa() {
        let s = find_ray("Bell_AB").unwrap().expected.clone().unwrap();
        let facets = saturated_facets(&s, &inequality_set("sa", 2).unwrap()).unwrap();
        let find = |text: &str| facets.iter().find(|f| f.name.contains(text)).unwrap().clone();
        let direct = facets.iter().find(|f| f.name == "SA").unwrap().clone();
        assert_eq!((direct.status, direct.value), (Saturation::Strict, int(2)));
        assert_eq!(find("[S(A) + S(AB) >= S(B)]").status, Saturation::Saturated);
    }

    #[test]
    fn catalog_obeys_builtin_inequalities() {
        for ray in builtin_rays() {
            let s = ray.expected.as_ref().unwrap();
            let set = if ray.n == 5 { "all" } else { "ingleton" };
            let mut checks = inequality_set(set, ray.n).unwrap();
            checks.extend(inequality_set("ssa", ray.n).unwrap());
            checks.extend(inequality_set("sa", ray.n).unwrap());
            for f in saturated_facets(s, &checks).unwrap() {
                let allowed_violation = f.name.starts_with("MMI");
                assert!(f.status != Saturation::Violated || allowed_violation, "{} violates {}", ray.name, f.name);
            }
        }
    }
}
