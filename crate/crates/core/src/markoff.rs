//! The Markoff m-equation layer: x² + y² + z² = 3xyz + m over positive
//! integers. Value triples, minimality (z ≥ 3xy), Vieta-jump children, tree
//! generation, and the per-m census of minimal triples.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Ordered positive triple 1 ≤ x ≤ y ≤ z. Unordered inputs are sorted on
/// construction: the equation is symmetric, and canonicalization avoids
/// duplicate solutions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueTriple {
    x: BigUint,
    y: BigUint,
    z: BigUint,
}

impl ValueTriple {
    pub fn new(a: BigUint, b: BigUint, c: BigUint) -> Result<Self> {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::pre("triple components must be positive"));
        }
        let mut v = [a, b, c];
        v.sort();
        let [x, y, z] = v;
        Ok(ValueTriple { x, y, z })
    }

    pub fn from_u64(a: u64, b: u64, c: u64) -> Result<Self> {
        ValueTriple::new(BigUint::from(a), BigUint::from(b), BigUint::from(c))
    }

    pub fn x(&self) -> &BigUint {
        &self.x
    }

    pub fn y(&self) -> &BigUint {
        &self.y
    }

    pub fn z(&self) -> &BigUint {
        &self.z
    }

    /// m = x² + y² + z² − 3xyz, exact; may be negative or zero.
    pub fn m(&self) -> BigInt {
        let x = BigInt::from(self.x.clone());
        let y = BigInt::from(self.y.clone());
        let z = BigInt::from(self.z.clone());
        &x * &x + &y * &y + &z * &z - 3 * x * y * z
    }

    /// Minimality criterion z ≥ 3xy. Minimal triples are the tree roots.
    pub fn is_minimal(&self) -> bool {
        self.z >= 3u32 * &self.x * &self.y
    }

    /// Vieta jumps: canonical orderings of (x, z, 3xz−y) and (y, z, 3yz−x),
    /// deduplicated when x = y. Every child shares the parent's m (asserted).
    pub fn children(&self) -> Vec<ValueTriple> {
        let upper = self.jump(&self.x, &self.y);
        let lower = self.jump(&self.y, &self.x);
        let mut out = vec![upper];
        if lower != out[0] {
            out.push(lower);
        }
        let m = self.m();
        for child in &out {
            assert_eq!(child.m(), m, "Vieta jump must preserve m");
        }
        out
    }

    fn jump(&self, keep: &BigUint, replace: &BigUint) -> ValueTriple {
        // 3·keep·z − replace > 0 always holds for ordered positive triples.
        let new_z = 3u32 * keep * &self.z - replace;
        ValueTriple::new(keep.clone(), self.z.clone(), new_z)
            .expect("jump components are positive")
    }
}

impl fmt::Display for ValueTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// Serialization record with big integers as decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TripleRecord {
    pub x: String,
    pub y: String,
    pub z: String,
}

impl From<&ValueTriple> for TripleRecord {
    fn from(t: &ValueTriple) -> Self {
        TripleRecord {
            x: t.x.to_string(),
            y: t.y.to_string(),
            z: t.z.to_string(),
        }
    }
}

/// Expansion limit for [`generate_tree`].
#[derive(Debug, Clone)]
pub enum TreeLimit {
    /// Expand `depth` levels below the root.
    Depth(usize),
    /// Expand every child whose largest component stays ≤ the bound.
    MaxZ(BigUint),
}

/// Node of a Markoff tree; all nodes share the root's m. The upper child
/// (x, z, 3xz−y) always comes first.
#[derive(Debug, Clone)]
pub struct MarkoffTreeNode {
    pub triple: ValueTriple,
    pub children: Vec<MarkoffTreeNode>,
}

impl MarkoffTreeNode {
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.node_count()).sum::<usize>()
    }

    /// Preorder traversal, upper child first.
    pub fn preorder(&self) -> Vec<&MarkoffTreeNode> {
        let mut out = vec![self];
        for child in &self.children {
            out.extend(child.preorder());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "x": self.triple.x.to_string(),
            "y": self.triple.y.to_string(),
            "z": self.triple.z.to_string(),
            "children": self.children.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph markoff_tree {\n");
        for node in self.preorder() {
            out.push_str(&format!(
                "    \"{t}\" [label=\"{t}\"];\n",
                t = node.triple
            ));
        }
        for node in self.preorder() {
            for child in &node.children {
                out.push_str(&format!(
                    "    \"{}\" -> \"{}\";\n",
                    node.triple, child.triple
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-limited Markoff tree rooted at a minimal triple with m > 0.
/// Note a minimal root always has m ≥ x² + y² > 0, so the m check only fires
/// for roots that are not minimal either; it is kept first so degenerate
/// inputs like (1,1,1) report the more informative error.
pub fn generate_tree(root: ValueTriple, limit: &TreeLimit) -> Result<MarkoffTreeNode> {
    let m = root.m();
    if !m.is_positive() {
        return Err(Error::NonpositiveM(m));
    }
    if !root.is_minimal() {
        return Err(Error::RootNotMinimal);
    }
    Ok(expand(root, limit, 0))
}

fn expand(triple: ValueTriple, limit: &TreeLimit, depth: usize) -> MarkoffTreeNode {
    let expand_children = match limit {
        TreeLimit::Depth(d) => depth < *d,
        TreeLimit::MaxZ(_) => true,
    };
    let mut children = Vec::new();
    if expand_children {
        for child in triple.children() {
            if let TreeLimit::MaxZ(bound) = limit {
                if child.z() > bound {
                    continue;
                }
            }
            children.push(expand(child, limit, depth + 1));
        }
    }
    MarkoffTreeNode { triple, children }
}

/// All minimal triples with the given m ≥ 1, sorted ascending.
///
/// Minimality gives z(z − 3xy) ≥ 0, hence x² + y² ≤ m; for each such pair the
/// quadratic z² − 3xyz + (x² + y² − m) = 0 is solved exactly and only the
/// larger root is kept (the smaller root is a non-minimal ancestor).
pub fn minimal_triples_for_m(m: &BigInt) -> Result<Vec<ValueTriple>> {
    if !m.is_positive() {
        return Err(Error::pre("census requires m >= 1"));
    }
    let mut out = Vec::new();
    let mut x = BigInt::one();
    while 2 * &x * &x <= *m {
        let mut y = x.clone();
        loop {
            let sq = &x * &x + &y * &y;
            if sq > *m {
                break;
            }
            let threexy = 3 * &x * &y;
            let disc: BigInt = &threexy * &threexy - 4 * (&sq - m);
            let s = disc.sqrt();
            if &s * &s == disc {
                // s ≡ 3xy (mod 2) whenever disc is a perfect square.
                let sum: BigInt = &threexy + s;
                debug_assert!(num_integer::Integer::is_even(&sum));
                let z: BigInt = sum / 2;
                if z >= y && z >= threexy {
                    out.push(
                        ValueTriple::new(
                            x.to_biguint().unwrap(),
                            y.to_biguint().unwrap(),
                            z.to_biguint().unwrap(),
                        )
                        .expect("census components are positive"),
                    );
                }
            }
            y += 1;
        }
        x += 1;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(x: u64, y: u64, z: u64) -> ValueTriple {
        ValueTriple::from_u64(x, y, z).unwrap()
    }

    #[test]
    fn m_examples() {
        assert_eq!(t(2, 2, 12).m(), BigInt::from(8));
        assert_eq!(t(1, 1, 1).m(), BigInt::zero());
        assert_eq!(t(2, 12, 70).m(), BigInt::from(8));
    }

    #[test]
    fn minimality_examples() {
        assert!(t(2, 2, 12).is_minimal());
        assert!(!t(2, 12, 70).is_minimal());
        assert!(t(1, 1, 3).is_minimal());
    }

    #[test]
    fn canonical_ordering() {
        assert_eq!(t(12, 2, 2), t(2, 2, 12));
        assert!(ValueTriple::from_u64(0, 1, 2).is_err());
    }

    #[test]
    fn children_examples() {
        assert_eq!(t(2, 2, 12).children(), vec![t(2, 12, 70)]);
        assert_eq!(
            t(2, 12, 70).children(),
            vec![t(2, 70, 408), t(12, 70, 2518)]
        );
        assert_eq!(
            t(2, 70, 408).children(),
            vec![t(2, 408, 2378), t(70, 408, 85678)]
        );
    }

    #[test]
    fn tree_limits() {
        let tree = generate_tree(t(2, 2, 12), &TreeLimit::Depth(2)).unwrap();
        let nodes: Vec<_> = tree.preorder().iter().map(|n| n.triple.clone()).collect();
        assert_eq!(
            nodes,
            vec![t(2, 2, 12), t(2, 12, 70), t(2, 70, 408), t(12, 70, 2518)]
        );

        let tree = generate_tree(t(2, 2, 12), &TreeLimit::MaxZ(BigUint::from(100u32))).unwrap();
        let nodes: Vec<_> = tree.preorder().iter().map(|n| n.triple.clone()).collect();
        assert_eq!(nodes, vec![t(2, 2, 12), t(2, 12, 70)]);

        let tree = generate_tree(t(1, 1, 3), &TreeLimit::Depth(0)).unwrap();
        assert_eq!(tree.node_count(), 1);
    }

    #[test]
    fn tree_errors() {
        assert!(matches!(
            generate_tree(t(2, 12, 70), &TreeLimit::Depth(1)),
            Err(Error::RootNotMinimal)
        ));
        assert!(matches!(
            generate_tree(t(1, 1, 1), &TreeLimit::Depth(1)),
            Err(Error::NonpositiveM(_))
        ));
        assert!(matches!(
            generate_tree(t(1, 2, 2), &TreeLimit::Depth(1)),
            Err(Error::NonpositiveM(_))
        ));
    }

    #[test]
    fn dot_output_shape() {
        let tree = generate_tree(t(2, 2, 12), &TreeLimit::Depth(1)).unwrap();
        let dot = tree.to_dot();
        assert!(dot.starts_with("digraph markoff_tree {"));
        assert!(dot.contains("\"(2,2,12)\" -> \"(2,12,70)\";"));
        assert!(dot.contains("\"(2,12,70)\" [label=\"(2,12,70)\"];"));
    }

    #[test]
    fn census_examples() {
        let m8 = minimal_triples_for_m(&BigInt::from(8)).unwrap();
        assert_eq!(m8, vec![t(2, 2, 12)]);

        let m2180 = minimal_triples_for_m(&BigInt::from(2180)).unwrap();
        assert!(m2180.contains(&t(1, 33, 109)));
        assert!(m2180.contains(&t(3, 10, 109)));
        assert_eq!(m2180.len(), 14);

        assert!(minimal_triples_for_m(&BigInt::from(1)).unwrap().is_empty());
        assert!(minimal_triples_for_m(&BigInt::zero()).is_err());

        // m = 12 has two minimal triples; only (1,1,5) has Pell components.
        let m12 = minimal_triples_for_m(&BigInt::from(12)).unwrap();
        assert_eq!(m12, vec![t(1, 1, 5), t(1, 2, 7)]);
    }
}
