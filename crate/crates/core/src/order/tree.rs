//! Partition-tree embedding: nodes get prefixes of decreasing rationals
//! bounded below by their labels, sibling values ordered by the parity of
//! the position they are appended at.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::Parity;
use crate::rational::{self, midpoint, Q};
use crate::seq::TransfiniteSeq;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledTree {
    #[serde(with = "rational::serde_q")]
    pub label: Q,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<LabeledTree>,
}

impl LabeledTree {
    pub fn leaf(label: Q) -> Self {
        LabeledTree {
            label,
            children: Vec::new(),
        }
    }

    pub fn node(label: Q, children: Vec<LabeledTree>) -> Self {
        LabeledTree { label, children }
    }

    pub fn leaf_count(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(LabeledTree::leaf_count).sum()
        }
    }

    /// Depth of every leaf when all leaves share one depth.
    pub fn uniform_depth(&self) -> Option<usize> {
        if self.children.is_empty() {
            return Some(0);
        }
        let mut depths = self.children.iter().map(LabeledTree::uniform_depth);
        let first = depths.next().unwrap()?;
        for d in depths {
            if d? != first {
                return None;
            }
        }
        Some(first + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.label <= Q::zero() || self.label >= Q::one() {
            return Err(Error::Label(format!(
                "label {} outside (0,1)",
                rational::format(&self.label)
            )));
        }
        if self.children.len() > 2 {
            return Err(Error::Label(format!(
                "node with {} children; at most 2 allowed",
                self.children.len()
            )));
        }
        for c in &self.children {
            if c.label >= self.label {
                return Err(Error::Label(format!(
                    "label {} below {} does not decrease",
                    rational::format(&c.label),
                    rational::format(&self.label)
                )));
            }
            c.validate()?;
        }
        Ok(())
    }
}

/// Node prefix assignment together with the identity of the node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeImage {
    /// Child indices from the root.
    pub path: Vec<usize>,
    pub label: Q,
    pub prefix: Vec<Q>,
    pub is_leaf: bool,
}

fn admissible(lo: &Q, hi: &Q) -> Result<Q> {
    if lo >= hi {
        return Err(Error::EmptyAdmissibleInterval {
            lo: rational::format(lo),
            hi: rational::format(hi),
        });
    }
    Ok(midpoint(lo, hi))
}

/// Prefixes for every node in depth-first order.
pub fn node_images(tree: &LabeledTree) -> Result<Vec<NodeImage>> {
    tree.validate()?;
    let mut out = Vec::new();
    walk(tree, Vec::new(), Vec::new(), &mut out)?;
    Ok(out)
}

fn walk(t: &LabeledTree, path: Vec<usize>, prefix: Vec<Q>, out: &mut Vec<NodeImage>) -> Result<()> {
    let hi = prefix.last().cloned().unwrap_or_else(Q::one);
    let mut child_prefixes = Vec::new();
    match t.children.as_slice() {
        [] => {}
        [only] => {
            let r = admissible(&only.label, &hi)?;
            let mut p = prefix.clone();
            p.push(r);
            child_prefixes.push(p);
        }
        [left, right] => {
            let lo = if left.label > right.label {
                &left.label
            } else {
                &right.label
            };
            let small = admissible(lo, &hi)?;
            let big = admissible(&t.label, &hi)?;
            debug_assert!(small < big);
            let (lv, rv) = match Parity::of(prefix.len() as u64) {
                Parity::Even => (small, big),
                Parity::Odd => (big, small),
            };
            for v in [lv, rv] {
                let mut p = prefix.clone();
                p.push(v);
                child_prefixes.push(p);
            }
        }
        _ => unreachable!("validated"),
    }
    out.push(NodeImage {
        path: path.clone(),
        label: t.label.clone(),
        prefix,
        is_leaf: t.children.is_empty(),
    });
    for (i, (c, p)) in t.children.iter().zip(child_prefixes).enumerate() {
        let mut cp = path.clone();
        cp.push(i);
        walk(c, cp, p, out)?;
    }
    Ok(())
}

/// Image of the `leaf`-th leaf, counted left to right.
pub fn tree_embed(tree: &LabeledTree, leaf: usize) -> Result<TransfiniteSeq> {
    let nodes = node_images(tree)?;
    let node = nodes
        .iter()
        .filter(|n| n.is_leaf)
        .nth(leaf)
        .ok_or_else(|| Error::Shape(format!("leaf {leaf} does not exist")))?;
    let mut values = node.prefix.clone();
    if values.is_empty() {
        // The whole order is one leaf.
        values.push(admissible(&tree.label, &Q::one())?);
    }
    values.push(Q::zero());
    TransfiniteSeq::finite(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::seq::altlex_less;

    fn two_leaf() -> LabeledTree {
        LabeledTree::node(
            q(1, 2),
            vec![LabeledTree::leaf(q(1, 4)), LabeledTree::leaf(q(1, 8))],
        )
    }

    #[test]
    fn two_leaf_example() {
        let t = two_leaf();
        let a = tree_embed(&t, 0).unwrap();
        let b = tree_embed(&t, 1).unwrap();
        assert_eq!(a, TransfiniteSeq::finite(vec![q(5, 8), q(0, 1)]).unwrap());
        assert_eq!(b, TransfiniteSeq::finite(vec![q(3, 4), q(0, 1)]).unwrap());
        assert!(altlex_less(&a, &b).unwrap());
    }

    #[test]
    fn singleton() {
        let t = LabeledTree::leaf(q(1, 2));
        assert_eq!(
            tree_embed(&t, 0).unwrap(),
            TransfiniteSeq::finite(vec![q(3, 4), q(0, 1)]).unwrap()
        );
    }

    #[test]
    fn balanced_four() {
        let t = LabeledTree::node(
            q(7, 8),
            vec![
                LabeledTree::node(q(1, 2), vec![LabeledTree::leaf(q(1, 4)), LabeledTree::leaf(q(1, 5))]),
                LabeledTree::node(q(3, 4), vec![LabeledTree::leaf(q(1, 3)), LabeledTree::leaf(q(1, 6))]),
            ],
        );
        let imgs: Vec<_> = (0..4).map(|i| tree_embed(&t, i).unwrap()).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(altlex_less(&imgs[i], &imgs[j]).unwrap(), "{i} {j}");
            }
        }
        for n in node_images(&t).unwrap() {
            // The prefix of a node stays above its label.
            if let Some(last) = n.prefix.last() {
                assert!(*last > n.label);
            }
        }
    }

    #[test]
    fn rejects_bad_labels() {
        let t = LabeledTree::node(q(1, 4), vec![LabeledTree::leaf(q(1, 2))]);
        assert!(matches!(tree_embed(&t, 0), Err(Error::Label(_))));
        assert!(matches!(tree_embed(&LabeledTree::leaf(q(1, 1)), 0), Err(Error::Label(_))));
        assert!(matches!(tree_embed(&two_leaf(), 2), Err(Error::Shape(_))));
    }
}
