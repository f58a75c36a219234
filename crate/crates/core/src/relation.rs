use crate::error::{Result, SgError};
use serde::{Deserialize, Serialize};

/// What a relation claims to be. The claim is re-checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationKind {
    Raw,
    Preorder,
    Equivalence,
}

/// A binary relation on `{0, .., n-1}` stored as a dense boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
    kind: RelationKind,
}

impl Relation {
    pub fn new_raw(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
            kind: RelationKind::Raw,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::new_raw(n);
        for i in 0..n {
            r.set(i, i, true);
        }
        r.kind = RelationKind::Equivalence;
        r
    }

    pub fn universal(n: usize) -> Self {
        Relation {
            n,
            bits: vec![true; n * n],
            kind: RelationKind::Equivalence,
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Relation::new_raw(n);
        for i in 0..n {
            for j in 0..n {
                r.set(i, j, f(i, j));
            }
        }
        r
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.n + j] = v;
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_witness().is_none()
    }

    /// First (i, j) such that i ~ k ~ j for some k but not i ~ j.
    pub fn transitivity_witness(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for k in 0..self.n {
                if !self.get(i, k) {
                    continue;
                }
                for j in 0..self.n {
                    if self.get(k, j) && !self.get(i, j) {
                        return Some((i, j));
                    }
                }
            }
        }
        None
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || !(self.get(i, j) && self.get(j, i))))
    }

    /// Promote to a verified preorder.
    pub fn into_preorder(mut self) -> Result<Self> {
        if !self.is_reflexive() {
            let i = (0..self.n).find(|&i| !self.get(i, i)).unwrap();
            return Err(SgError::NotKind {
                expected: "preorder",
                check: "reflexivity",
                i,
                j: i,
            });
        }
        if let Some((i, j)) = self.transitivity_witness() {
            return Err(SgError::NotKind {
                expected: "preorder",
                check: "transitivity",
                i,
                j,
            });
        }
        self.kind = RelationKind::Preorder;
        Ok(self)
    }

    /// Promote to a verified equivalence.
    pub fn into_equivalence(self) -> Result<Self> {
        let mut r = self.into_preorder()?;
        if !r.is_symmetric() {
            let (i, j) = (0..r.n)
                .flat_map(|i| (0..r.n).map(move |j| (i, j)))
                .find(|&(i, j)| r.get(i, j) != r.get(j, i))
                .unwrap();
            return Err(SgError::NotKind {
                expected: "equivalence",
                check: "symmetry",
                i,
                j,
            });
        }
        r.kind = RelationKind::Equivalence;
        Ok(r)
    }

    pub fn converse(&self) -> Relation {
        Relation::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn intersect(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation::from_fn(self.n, |i, j| self.get(i, j) && other.get(i, j))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation::from_fn(self.n, |i, j| self.get(i, j) || other.get(i, j))
    }

    /// `self ∘ other`: i related to j iff i ~self~ k ~other~ j for some k.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation::from_fn(self.n, |i, j| {
            (0..self.n).any(|k| self.get(i, k) && other.get(k, j))
        })
    }

    /// Meet with the converse: the equivalence associated with a preorder.
    pub fn symmetrize(&self) -> Result<Relation> {
        self.intersect(&self.converse()).into_equivalence()
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        assert_eq!(self.n, other.n);
        (0..self.n).all(|i| (0..self.n).all(|j| !self.get(i, j) || other.get(i, j)))
    }

    pub fn same_pairs(&self, other: &Relation) -> bool {
        self.n == other.n && self.bits == other.bits
    }

    /// Smallest equivalence containing both: connected components of the union.
    pub fn equivalence_join(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let mut uf = UnionFind::new(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) || other.get(i, j) {
                    uf.union(i, j);
                }
            }
        }
        let mut r = Relation::from_fn(self.n, |i, j| uf.find(i) == uf.find(j));
        r.kind = RelationKind::Equivalence;
        r
    }

    /// Classes of an equivalence, each sorted, ordered by least element.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for i in 0..self.n {
            if seen[i] {
                continue;
            }
            let class: Vec<usize> = (0..self.n).filter(|&j| self.get(i, j)).collect();
            for &j in &class {
                seen[j] = true;
            }
            out.push(class);
        }
        out
    }

    pub fn class_of(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.get(a, j)).collect()
    }

    /// Serialize as n lines of '0'/'1' characters.
    pub fn to_matrix_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn from_matrix_text(text: &str) -> Result<Relation> {
        let rows: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let n = rows.len();
        let mut r = Relation::new_raw(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SgError::Parse {
                    line: i + 1,
                    msg: format!("expected {} characters, got {}", n, row.len()),
                });
            }
            for (j, c) in row.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => r.set(i, j, true),
                    _ => {
                        return Err(SgError::Parse {
                            line: i + 1,
                            msg: format!("unexpected character '{c}'"),
                        })
                    }
                }
            }
        }
        Ok(r)
    }

    /// Partition text: one line of space-separated indices per class,
    /// classes ordered by least element.
    pub fn to_partition_text(&self) -> String {
        let mut s = String::new();
        for class in self.classes() {
            let words: Vec<String> = class.iter().map(|x| x.to_string()).collect();
            s.push_str(&words.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Plain union-find with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_are_verified() {
        let mut r = Relation::new_raw(2);
        r.set(0, 1, true);
        assert!(matches!(
            r.clone().into_preorder(),
            Err(SgError::NotKind { .. })
        ));
        r.set(0, 0, true);
        r.set(1, 1, true);
        let p = r.clone().into_preorder().unwrap();
        assert_eq!(p.kind(), RelationKind::Preorder);
        assert!(r.into_equivalence().is_err());
    }

    #[test]
    fn join_and_classes() {
        // 0~1 and 1~2 in two separate relations; join connects 0,1,2.
        let mut a = Relation::identity(4);
        a.set(0, 1, true);
        a.set(1, 0, true);
        let mut b = Relation::identity(4);
        b.set(1, 2, true);
        b.set(2, 1, true);
        let j = a.equivalence_join(&b);
        assert_eq!(j.classes(), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn matrix_text_round_trip() {
        let r = Relation::from_fn(3, |i, j| i <= j);
        let text = r.to_matrix_text();
        assert_eq!(text, "111\n011\n001\n");
        assert!(Relation::from_matrix_text(&text).unwrap().same_pairs(&r));
    }

    #[test]
    fn compose_order() {
        // 0 -a-> 1 -b-> 2
        let mut a = Relation::new_raw(3);
        a.set(0, 1, true);
        let mut b = Relation::new_raw(3);
        b.set(1, 2, true);
        assert!(a.compose(&b).get(0, 2));
        assert!(!b.compose(&a).get(0, 2));
    }
}
