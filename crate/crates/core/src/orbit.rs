//! Partial order of entanglement classes under noninvertible local
//! operations, one DAG per supported format, plus reachability queries and
//! witness operations for every three-party edge.
//!
//! The three-party DAGs are hard-coded from the known conversion facts
//! (GHZ and W are incomparable; both reach every biseparable class; each
//! biseparable class reaches only complete separability). They are kept
//! falsifiable by the fixture witnesses in `edge_witnesses`: each encoded
//! edge ships a concrete noninvertible operation that re-classifies the
//! source representative into the target class.

use std::fmt::Write as _;

use crate::classify::{all_classes, partitions_of, ClassName, EntanglementClass};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::tensor::{LocalOperation, TensorFormat};

/// Direct-degradation graph over the class names of one format.
#[derive(Clone, Debug)]
pub struct ClassDag {
    format: TensorFormat,
    nodes: Vec<ClassName>,
    /// Indices into `nodes`.
    edges: Vec<(usize, usize)>,
}

impl ClassDag {
    pub fn for_format(format: &TensorFormat) -> Result<ClassDag> {
        let nodes = all_classes(format)?;
        let index = |name: &ClassName| -> usize {
            nodes.iter().position(|n| n == name).expect("node exists")
        };
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut edge = |a: ClassName, b: ClassName| {
            edges.push((index(&a), index(&b)));
        };
        match format.dims() {
            [2, 2, 2] => {
                for j in 1..=3 {
                    edge(ClassName::Ghz, ClassName::B(j));
                    edge(ClassName::W, ClassName::B(j));
                    edge(ClassName::B(j), ClassName::Sep);
                }
            }
            [3, 2, 2] => {
                for outer in [ClassName::Gen322, ClassName::Deg322] {
                    edge(outer.clone(), ClassName::Ghz);
                    edge(outer, ClassName::W);
                }
                for j in 1..=3 {
                    edge(ClassName::Ghz, ClassName::B(j));
                    edge(ClassName::W, ClassName::B(j));
                    edge(ClassName::B(j), ClassName::Sep);
                }
            }
            [2, 2, 2, 2] => {
                // Any noninvertible factor on a genuinely four-partite state
                // splits one party off, so the coarse classes feed exactly
                // the patterns with a singleton block of one party.
                for p in partitions_of(4) {
                    if p.blocks().len() == 2 && p.has_singleton() {
                        edge(ClassName::Gen4, ClassName::SepPattern(p.clone()));
                        edge(ClassName::Deg4, ClassName::SepPattern(p));
                    }
                }
                // Pattern classes degrade by splitting one block in two.
                let patterns: Vec<_> =
                    partitions_of(4).into_iter().filter(|p| !p.is_trivial()).collect();
                for a in &patterns {
                    for b in &patterns {
                        if b.blocks().len() == a.blocks().len() + 1 && b.refines(a) {
                            edge(
                                ClassName::SepPattern(a.clone()),
                                ClassName::SepPattern(b.clone()),
                            );
                        }
                    }
                }
            }
            [d1, d2] => {
                let m = *d1.min(d2);
                for j in (2..=m).rev() {
                    edge(ClassName::S(j), ClassName::S(j - 1));
                }
            }
            _ => {
                return Err(Error::FormatMismatch(format!(
                    "no class order for format {format}"
                )))
            }
        }
        Ok(ClassDag {
            format: format.clone(),
            nodes,
            edges,
        })
    }

    pub fn format(&self) -> &TensorFormat {
        &self.format
    }

    pub fn nodes(&self) -> &[ClassName] {
        &self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = (&ClassName, &ClassName)> {
        self.edges
            .iter()
            .map(|&(a, b)| (&self.nodes[a], &self.nodes[b]))
    }

    fn node_index(&self, name: &ClassName) -> Result<usize> {
        self.nodes
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownClass(format!("{name} in format {}", self.format)))
    }

    /// Reflexive-transitive reachability.
    pub fn reachable(&self, from: &ClassName, to: &ClassName) -> Result<bool> {
        let start = self.node_index(from)?;
        let goal = self.node_index(to)?;
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            if v == goal {
                return Ok(true);
            }
            for &(a, b) in &self.edges {
                if a == v && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        Ok(false)
    }

    /// Closure successors including the class itself, in node order.
    pub fn targets(&self, from: &ClassName) -> Result<Vec<ClassName>> {
        self.node_index(from)?;
        Ok(self
            .nodes
            .iter()
            .filter(|to| self.reachable(from, to).unwrap_or(false))
            .cloned()
            .collect())
    }
}

/// True iff `to` is reachable from `from` by (possibly trivial) local
/// degradation. Cross-format queries are rejected.
pub fn can_degrade(from: &EntanglementClass, to: &EntanglementClass) -> Result<bool> {
    if from.format != to.format {
        return Err(Error::CrossFormat(format!(
            "{} vs {}",
            from.format, to.format
        )));
    }
    ClassDag::for_format(&from.format)?.reachable(&from.name, &to.name)
}

/// Plain-text edge list, one "A -> B" per line.
pub fn order_diagram(format: &TensorFormat) -> Result<String> {
    let dag = ClassDag::for_format(format)?;
    let mut out = String::new();
    writeln!(out, "classes ({format}):").expect("write to string");
    for n in dag.nodes() {
        writeln!(out, "  {n}").expect("write to string");
    }
    writeln!(out, "edges:").expect("write to string");
    for (a, b) in dag.edges() {
        writeln!(out, "  {a} -> {b}").expect("write to string");
    }
    Ok(out)
}

/// DOT digraph of the same edge list.
pub fn order_diagram_dot(format: &TensorFormat) -> Result<String> {
    let dag = ClassDag::for_format(format)?;
    let mut out = String::new();
    writeln!(out, "digraph degradation {{").expect("write to string");
    writeln!(out, "  rankdir=TB;").expect("write to string");
    for n in dag.nodes() {
        writeln!(out, "  \"{n}\";").expect("write to string");
    }
    for (a, b) in dag.edges() {
        writeln!(out, "  \"{a}\" -> \"{b}\";").expect("write to string");
    }
    writeln!(out, "}}").expect("write to string");
    Ok(out)
}

/// One concrete noninvertible operation per DAG edge of the three-party
/// formats, taking the source representative into the target class.
pub fn edge_witnesses(format: &TensorFormat) -> Result<Vec<(ClassName, ClassName, LocalOperation)>> {
    let dims = format.dims();
    let collapse2 = || Matrix::from_int_rows(&[&[1, 1], &[0, 0]]);
    let project2 = || Matrix::from_int_rows(&[&[1, 0], &[0, 0]]);
    let id = Matrix::identity;
    let op = |mats: Vec<Matrix>| LocalOperation::new(mats).expect("square factors");
    match dims {
        [2, 2, 2] => {
            let on = |party: usize, m: Matrix| {
                let mut mats = vec![id(2), id(2), id(2)];
                mats[party] = m;
                op(mats)
            };
            let mut out = Vec::new();
            for j in 1..=3 {
                out.push((ClassName::Ghz, ClassName::B(j), on(j - 1, collapse2())));
                out.push((ClassName::W, ClassName::B(j), on(j - 1, collapse2())));
            }
            // project a party inside the entangled pair of each B rep
            out.push((ClassName::B(1), ClassName::Sep, on(1, project2())));
            out.push((ClassName::B(2), ClassName::Sep, on(0, project2())));
            out.push((ClassName::B(3), ClassName::Sep, on(0, project2())));
            Ok(out)
        }
        [3, 2, 2] => {
            let on1 = |m: Matrix| op(vec![m, id(2), id(2)]);
            let on = |party: usize, m: Matrix| {
                let mut mats = vec![id(3), id(2), id(2)];
                mats[party] = m;
                op(mats)
            };
            let pick02 = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
            let keep01 = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
            let mix = Matrix::from_int_rows(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 0]]);
            let collapse3 = Matrix::from_int_rows(&[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
            let keep_row0 = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
            let proj3 = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
            let mut out = vec![
                (ClassName::Gen322, ClassName::Ghz, on1(pick02.clone())),
                (ClassName::Gen322, ClassName::W, on1(keep01)),
                (ClassName::Deg322, ClassName::Ghz, on1(pick02)),
                (ClassName::Deg322, ClassName::W, on1(mix)),
                (ClassName::Ghz, ClassName::B(1), on1(collapse3)),
                (ClassName::Ghz, ClassName::B(2), on(1, collapse2())),
                (ClassName::Ghz, ClassName::B(3), on(2, collapse2())),
                (ClassName::W, ClassName::B(1), on1(keep_row0)),
                (ClassName::W, ClassName::B(2), on(1, collapse2())),
                (ClassName::W, ClassName::B(3), on(2, collapse2())),
            ];
            out.push((ClassName::B(1), ClassName::Sep, on(1, project2())));
            out.push((ClassName::B(2), ClassName::Sep, on1(proj3.clone())));
            out.push((ClassName::B(3), ClassName::Sep, on1(proj3)));
            Ok(out)
        }
        _ => Err(Error::FormatMismatch(format!(
            "no edge witnesses for format {format}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, representative};
    use crate::linalg::local_ranks;
    use crate::singularity::Partition;

    fn cls(format: &TensorFormat, name: ClassName) -> EntanglementClass {
        EntanglementClass::new(format.clone(), name).unwrap()
    }

    #[test]
    fn three_qubit_order_facts() {
        let f = TensorFormat::new(vec![2, 2, 2]).unwrap();
        let dag = ClassDag::for_format(&f).unwrap();
        assert!(!dag.reachable(&ClassName::Ghz, &ClassName::W).unwrap());
        assert!(!dag.reachable(&ClassName::W, &ClassName::Ghz).unwrap());
        assert!(dag.reachable(&ClassName::W, &ClassName::B(2)).unwrap());
        assert!(!dag.reachable(&ClassName::B(1), &ClassName::B(2)).unwrap());
        assert!(dag.reachable(&ClassName::Ghz, &ClassName::Sep).unwrap());
        assert!(dag.reachable(&ClassName::Sep, &ClassName::Sep).unwrap());
        assert_eq!(dag.edges().count(), 9);
    }

    #[test]
    fn three_by_two_by_two_order_facts() {
        let f = TensorFormat::new(vec![3, 2, 2]).unwrap();
        let dag = ClassDag::for_format(&f).unwrap();
        assert!(dag.reachable(&ClassName::Gen322, &ClassName::W).unwrap());
        assert!(dag.reachable(&ClassName::Deg322, &ClassName::Ghz).unwrap());
        assert!(!dag
            .reachable(&ClassName::Gen322, &ClassName::Deg322)
            .unwrap());
        assert!(!dag
            .reachable(&ClassName::Deg322, &ClassName::Gen322)
            .unwrap());
        let targets = dag.targets(&ClassName::Gen322).unwrap();
        assert_eq!(targets.len(), 7); // everything except DEG322
        assert!(!targets.contains(&ClassName::Deg322));
        assert_eq!(dag.targets(&ClassName::Sep).unwrap(), vec![ClassName::Sep]);
    }

    #[test]
    fn four_qubit_order_facts() {
        let f = TensorFormat::new(vec![2, 2, 2, 2]).unwrap();
        let dag = ClassDag::for_format(&f).unwrap();
        let pat = |s: &str| ClassName::SepPattern(Partition::parse(s, 4).unwrap());
        assert!(dag.reachable(&ClassName::Gen4, &pat("1|234")).unwrap());
        assert!(dag.reachable(&ClassName::Gen4, &pat("1|2|3|4")).unwrap());
        assert!(dag.reachable(&ClassName::Deg4, &pat("12|3|4")).unwrap());
        // no singleton block: unreachable from the genuine classes
        assert!(!dag.reachable(&ClassName::Gen4, &pat("12|34")).unwrap());
        assert!(!dag.reachable(&ClassName::Deg4, &pat("12|34")).unwrap());
        assert!(!dag.reachable(&ClassName::Gen4, &ClassName::Deg4).unwrap());
        assert!(!dag.reachable(&ClassName::Deg4, &ClassName::Gen4).unwrap());
        // refinement order among patterns
        assert!(dag.reachable(&pat("12|34"), &pat("1|2|34")).unwrap());
        assert!(!dag.reachable(&pat("1|2|34"), &pat("12|34")).unwrap());
        assert!(dag.reachable(&pat("1|234"), &pat("1|2|3|4")).unwrap());
    }

    #[test]
    fn bipartite_total_order() {
        let f = TensorFormat::new(vec![3, 3]).unwrap();
        let dag = ClassDag::for_format(&f).unwrap();
        for i in 1..=3usize {
            for j in 1..=3usize {
                assert_eq!(
                    dag.reachable(&ClassName::S(i), &ClassName::S(j)).unwrap(),
                    j <= i
                );
            }
        }
    }

    #[test]
    fn cross_format_rejected() {
        let f3 = TensorFormat::new(vec![2, 2, 2]).unwrap();
        let f322 = TensorFormat::new(vec![3, 2, 2]).unwrap();
        let a = cls(&f3, ClassName::Ghz);
        let b = cls(&f322, ClassName::Ghz);
        assert!(matches!(can_degrade(&a, &b), Err(Error::CrossFormat(_))));
        assert!(can_degrade(&a, &cls(&f3, ClassName::Sep)).unwrap());
    }

    #[test]
    fn antisymmetry() {
        for dims in [vec![2, 2, 2], vec![3, 2, 2], vec![2, 2, 2, 2]] {
            let f = TensorFormat::new(dims).unwrap();
            let dag = ClassDag::for_format(&f).unwrap();
            for a in dag.nodes() {
                for b in dag.nodes() {
                    if dag.reachable(a, b).unwrap() && dag.reachable(b, a).unwrap() {
                        assert_eq!(a, b, "cycle {a} <-> {b} in {f}");
                    }
                }
            }
        }
    }

    #[test]
    fn rank_monotonicity_along_closure() {
        for dims in [vec![2, 2, 2], vec![3, 2, 2], vec![2, 2, 2, 2]] {
            let f = TensorFormat::new(dims).unwrap();
            let dag = ClassDag::for_format(&f).unwrap();
            for a in dag.nodes() {
                let ra = local_ranks(&representative(&f, a).unwrap());
                for b in dag.nodes() {
                    if dag.reachable(a, b).unwrap() {
                        let rb = local_ranks(&representative(&f, b).unwrap());
                        assert!(
                            ra.iter().zip(&rb).all(|(x, y)| x >= y),
                            "{a} -> {b} raises a local rank in {f}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn every_edge_is_witnessed() {
        for dims in [vec![2, 2, 2], vec![3, 2, 2]] {
            let f = TensorFormat::new(dims).unwrap();
            let dag = ClassDag::for_format(&f).unwrap();
            let witnesses = edge_witnesses(&f).unwrap();
            assert_eq!(witnesses.len(), dag.edges().count());
            for (from, to, op) in &witnesses {
                assert!(
                    dag.edges().any(|(a, b)| a == from && b == to),
                    "witness for non-edge {from} -> {to}"
                );
                assert!(!op.is_invertible(), "witness {from} -> {to} is invertible");
                let rep = representative(&f, from).unwrap();
                let out = rep.apply_local(op).unwrap();
                assert_eq!(
                    classify(&out).unwrap().class.name,
                    *to,
                    "witness {from} -> {to} in {f} lands in the wrong class"
                );
            }
        }
    }

    #[test]
    fn diagrams_render() {
        let f = TensorFormat::new(vec![2, 2, 2]).unwrap();
        let text = order_diagram(&f).unwrap();
        assert!(text.contains("GHZ -> B1"));
        assert!(text.contains("B3 -> SEP"));
        let dot = order_diagram_dot(&f).unwrap();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("\"W\" -> \"B2\";"));
    }
}
