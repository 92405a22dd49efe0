use std::collections::BTreeMap;

use num_rational::Ratio;
use petgraph::algo::dinics;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::monoid::{MElement, MSubset};

/// Pairwise disjoint `Z_j ⊆ Y_j` with `(1-ε)|Y_j| ≤ |Z_j|`.
#[derive(Clone, Debug, PartialEq)]
pub struct DisjointCertificate {
    pub parts: Vec<MSubset>,
}

/// `⌈(1-ε)k⌉` for rational `ε`.
fn required(eps: Ratio<u64>, k: usize) -> u64 {
    let one = Ratio::from_integer(1u64);
    if eps >= one {
        return 0;
    }
    ((one - eps) * Ratio::from_integer(k as u64)).ceil().to_integer()
}

/// Decides ε-disjointness by a max-flow on the set-element incidence graph.
pub fn is_eps_disjoint(family: &[MSubset], eps: Ratio<u64>) -> Option<DisjointCertificate> {
    let mut g: DiGraph<(), u64> = DiGraph::new();
    let source = g.add_node(());
    let sink = g.add_node(());
    let sets: Vec<NodeIndex> = family.iter().map(|_| g.add_node(())).collect();
    let mut elems: BTreeMap<&MElement, NodeIndex> = BTreeMap::new();
    let mut demand = 0u64;
    let mut incidence = Vec::new();
    for (j, y) in family.iter().enumerate() {
        let need = required(eps, y.len());
        demand += need;
        g.add_edge(source, sets[j], need);
        for e in y.iter() {
            let node = *elems.entry(e).or_insert_with(|| {
                let v = g.add_node(());
                g.add_edge(v, sink, 1);
                v
            });
            let edge = g.add_edge(sets[j], node, 1);
            incidence.push((j, e, edge));
        }
    }
    let (flow, flows) = dinics(&g, source, sink);
    if flow < demand {
        return None;
    }
    let mut parts: Vec<Vec<MElement>> = vec![Vec::new(); family.len()];
    for (j, e, edge) in incidence {
        if flows[edge.index()] > 0 {
            parts[j].push(e.clone());
        }
    }
    let parts = family
        .iter()
        .zip(parts)
        .map(|(y, p)| MSubset::new(y.monoid(), p).expect("parts are drawn from the family"))
        .collect();
    Some(DisjointCertificate { parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::Monoid;

    #[test]
    fn examples() {
        let z = Monoid::integers(1);
        let a = MSubset::interval(&z, 0, 10).unwrap();
        let b = MSubset::interval(&z, 10, 20).unwrap();
        let cert = is_eps_disjoint(&[a.clone(), b.clone()], Ratio::new(1, 100)).unwrap();
        assert_eq!(cert.parts, vec![a.clone(), b]);
        assert!(is_eps_disjoint(&[a.clone(), a.clone()], Ratio::new(2, 5)).is_none());
        let c = MSubset::interval(&z, 9, 19).unwrap();
        let cert = is_eps_disjoint(&[a.clone(), c], Ratio::new(1, 10)).unwrap();
        assert!(cert.parts[0].intersection(&cert.parts[1]).is_empty());
        assert!(cert.parts.iter().all(|p| p.len() >= 9));
    }
}
