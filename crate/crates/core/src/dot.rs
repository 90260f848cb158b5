//! Graphviz output for Hasse diagrams.

use std::fmt::Write as _;

use crate::orders::FinitePoset;
use crate::similarity::{diagram_order, HIERARCHY_EDGES, RELATION_COUNT};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Covering edges only, drawn bottom to top, nodes in index order.
pub fn hasse_dot(p: &FinitePoset, name: &str, labels: Option<&[String]>) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", escape(name));
    for x in 0..p.size() {
        let label = labels
            .and_then(|l| l.get(x).cloned())
            .unwrap_or_else(|| x.to_string());
        writeln!(out, "  n{x} [label=\"{}\"];", escape(&label)).unwrap();
    }
    for (a, b) in p.covers() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// The implication diagram of the similarity relations with each class of
/// coinciding relations contracted to one node. `classes` must partition
/// `0..12`; pass singletons for the uncontracted diagram.
pub fn hierarchy_dot(classes: &[Vec<usize>]) -> String {
    let order = diagram_order();
    let k = classes.len();
    let mut class_of = [usize::MAX; RELATION_COUNT];
    for (c, members) in classes.iter().enumerate() {
        for &r in members {
            class_of[r] = c;
        }
    }
    let mut reach = vec![false; k * k];
    for a in 0..RELATION_COUNT {
        for b in 0..RELATION_COUNT {
            if order.le(a, b) {
                reach[class_of[a] * k + class_of[b]] = true;
            }
        }
    }
    for m in 0..k {
        for a in 0..k {
            for b in 0..k {
                if reach[a * k + m] && reach[m * k + b] {
                    reach[a * k + b] = true;
                }
            }
        }
    }
    let below = |a: usize, b: usize| a != b && reach[a * k + b] && !reach[b * k + a];
    let mut out = String::from("digraph similarities {\n  rankdir=BT;\n");
    for (c, members) in classes.iter().enumerate() {
        let label: Vec<String> = members.iter().map(|r| format!("∼{r}")).collect();
        writeln!(out, "  c{c} [label=\"{}\"];", label.join(" = ")).unwrap();
    }
    for a in 0..k {
        for b in 0..k {
            if !below(a, b) || (0..k).any(|m| below(a, m) && below(m, b)) {
                continue;
            }
            let letters: String = HIERARCHY_EDGES
                .iter()
                .filter(|e| class_of[e.lower] == a && class_of[e.upper] == b)
                .map(|e| e.label)
                .collect();
            if letters.is_empty() {
                writeln!(out, "  c{a} -> c{b};").unwrap();
            } else {
                writeln!(out, "  c{a} -> c{b} [label=\"{letters}\"];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("->")).count()
    }

    #[test]
    fn small_posets() {
        let one = hasse_dot(&FinitePoset::chain(1), "p", None);
        assert_eq!(one.lines().filter(|l| l.contains("[label")).count(), 1);
        assert_eq!(edges(&one), 0);
        let diamond = FinitePoset::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let d = hasse_dot(&diamond, "diamond", None);
        assert_eq!(edges(&d), 4);
        assert!(!d.contains("n0 -> n3"));
    }

    #[test]
    fn full_and_collapsed_diagram() {
        let singles: Vec<Vec<usize>> = (0..RELATION_COUNT).map(|r| vec![r]).collect();
        assert_eq!(edges(&hierarchy_dot(&singles)), 15);
        let collapsed = vec![vec![0], vec![1, 2, 3, 5, 7, 9], vec![4, 6, 8, 10, 11]];
        let d = hierarchy_dot(&collapsed);
        assert_eq!(edges(&d), 2);
        assert!(d.contains("c0 -> c1 [label=\"a\"]"));
        assert!(d.contains("c1 -> c2"));
        assert!(!d.contains("c0 -> c2"));
    }
}
