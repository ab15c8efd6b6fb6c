//! Finite groups given by full multiplication tables.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupTableError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("symmetric groups are supported up to degree 6, got {0}")]
    DegreeTooLarge(usize),
    #[error("cyclic group order must be positive")]
    ZeroOrder,
}

/// A finite group on the elements `0..order`, with `table[x][y] = x*y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupTableError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupTableError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupTableError::NotSquare { row, len: r.len(), expected: n });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupTableError::OutOfRange { row, col, value });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupTableError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or(GroupTableError::NoInverse(x))?;
            inverse.push(y);
        }
        for x in 0..n {
            for y in 0..n {
                let xy = table[x][y];
                for z in 0..n {
                    if table[xy][z] != table[x][table[y][z]] {
                        return Err(GroupTableError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { table, identity, inverse })
    }

    /// Builds the table of a set closed under an associative product with a
    /// known identity; used for groups whose axioms hold by construction.
    fn from_product(n: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| mul(x, y)).collect()).collect();
        let inverse = (0..n).map(|x| (0..n).find(|&y| table[x][y] == identity).unwrap()).collect();
        FiniteGroupTable { table, identity, inverse }
    }

    pub fn trivial() -> Self {
        Self::from_product(1, 0, |_, _| 0)
    }

    /// `Z/n`, element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupTableError> {
        if n == 0 {
            return Err(GroupTableError::ZeroOrder);
        }
        Ok(Self::from_product(n, 0, |x, y| (x + y) % n))
    }

    /// `S_n` on `{0, …, n-1}`. Elements are the permutations in
    /// lexicographic order of their one-line notation (so 0 is the
    /// identity), and `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Result<Self, GroupTableError> {
        if n > 6 {
            return Err(GroupTableError::DegreeTooLarge(n));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        Ok(Self::from_product(perms.len(), 0, |x, y| {
            let comp: Vec<usize> = (0..n).map(|i| perms[x][perms[y][i]]).collect();
            index(&comp)
        }))
    }

    /// Index in [`FiniteGroupTable::symmetric`] of a permutation in one-line
    /// notation.
    pub fn permutation_index(perm: &[usize]) -> Option<usize> {
        let perms = permutations(perm.len());
        perms.binary_search_by(|q| q.as_slice().cmp(perm)).ok()
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// `x y x⁻¹`.
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.inv(x))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        mask[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    /// A small generating set, chosen greedily by decreasing element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = self.elements().collect();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut mask = self.generated(&gens);
        for x in by_order {
            if !mask[x] {
                gens.push(x);
                mask = self.generated(&gens);
            }
        }
        gens
    }

    /// A pair `(x, y)` with `f(xy) != f(x)f(y)`, if any.
    pub fn hom_failure(&self, f: &[usize], target: &FiniteGroupTable) -> Option<(usize, usize)> {
        for x in self.elements() {
            for y in self.elements() {
                if f[self.mul(x, y)] != target.mul(f[x], f[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// A pair of distinct elements with the same image, if any.
    pub fn injectivity_failure(&self, f: &[usize]) -> Option<(usize, usize)> {
        for x in self.elements() {
            for y in 0..x {
                if f[x] == f[y] {
                    return Some((y, x));
                }
            }
        }
        None
    }

    /// The subgroup on the elements of `mask`, as a table on `0..k` together
    /// with the embedding into `self` (increasing).
    pub fn subgroup(&self, mask: &[bool]) -> (FiniteGroupTable, Vec<usize>) {
        let emb: Vec<usize> = self.elements().filter(|&x| mask[x]).collect();
        let mut back = vec![usize::MAX; self.order()];
        for (i, &x) in emb.iter().enumerate() {
            back[x] = i;
        }
        let sub = Self::from_product(emb.len(), back[self.identity], |i, j| back[self.mul(emb[i], emb[j])]);
        (sub, emb)
    }

    /// For each element, the least element of its left coset `xH`.
    pub fn left_coset_reps(&self, subgroup: &[usize]) -> Vec<usize> {
        self.elements()
            .map(|x| subgroup.iter().map(|&h| self.mul(x, h)).min().unwrap())
            .collect()
    }

    /// All isomorphisms `self → other`, each as an element map.
    pub fn isomorphisms(&self, other: &FiniteGroupTable) -> Vec<Vec<usize>> {
        if self.order() != other.order() {
            return Vec::new();
        }
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                other.elements().filter(|&y| other.element_order(y) == k).collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(gens.len());
        self.extend_images(&gens, &candidates, other, &mut images, &mut out);
        out
    }

    fn extend_images(
        &self,
        gens: &[usize],
        candidates: &[Vec<usize>],
        other: &FiniteGroupTable,
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if images.len() == gens.len() {
            if let Some(f) = self.extend_to_hom(gens, images, other) {
                if self.hom_failure(&f, other).is_none() && self.injectivity_failure(&f).is_none() {
                    out.push(f);
                }
            }
            return;
        }
        for &y in &candidates[images.len()] {
            images.push(y);
            self.extend_images(gens, candidates, other, images, out);
            images.pop();
        }
    }

    /// The map determined by `gens ↦ images` along a breadth-first spanning
    /// tree of the Cayley graph; `None` if the tree assignment is
    /// inconsistent on the way.
    fn extend_to_hom(&self, gens: &[usize], images: &[usize], other: &FiniteGroupTable) -> Option<Vec<usize>> {
        let mut f = vec![usize::MAX; self.order()];
        f[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(f[x], h);
                if f[y] == usize::MAX {
                    f[y] = fy;
                    queue.push_back(y);
                } else if f[y] != fy {
                    return None;
                }
            }
        }
        Some(f)
    }
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_basics() {
        let s3 = FiniteGroupTable::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        let t = FiniteGroupTable::permutation_index(&[1, 0, 2]).unwrap();
        let c = FiniteGroupTable::permutation_index(&[1, 2, 0]).unwrap();
        assert_eq!(s3.element_order(t), 2);
        assert_eq!(s3.element_order(c), 3);
        // not abelian
        assert_ne!(s3.mul(t, c), s3.mul(c, t));
        assert!(FiniteGroupTable::from_table(s3.table().to_vec()).is_ok());
        assert_eq!(s3.generators().len(), 2);
    }

    #[test]
    fn rejects_non_groups() {
        assert_eq!(FiniteGroupTable::from_table(vec![]), Err(GroupTableError::Empty));
        assert_eq!(FiniteGroupTable::from_table(vec![vec![0, 1], vec![1, 1]]), Err(GroupTableError::NoInverse(1)));
        assert!(matches!(
            FiniteGroupTable::from_table(vec![vec![0, 2], vec![1, 0]]),
            Err(GroupTableError::OutOfRange { .. })
        ));
        // a Latin square that is not associative
        let quasi = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
        assert!(matches!(FiniteGroupTable::from_table(quasi), Err(GroupTableError::NotAssociative(..))));
    }

    #[test]
    fn automorphism_counts() {
        let s3 = FiniteGroupTable::symmetric(3).unwrap();
        assert_eq!(s3.isomorphisms(&s3).len(), 6);
        let z6 = FiniteGroupTable::cyclic(6).unwrap();
        assert_eq!(z6.isomorphisms(&z6).len(), 2);
        assert!(z6.isomorphisms(&s3).is_empty());
        let z8 = FiniteGroupTable::cyclic(8).unwrap();
        assert_eq!(z8.isomorphisms(&z8).len(), 4);
        let s4 = FiniteGroupTable::symmetric(4).unwrap();
        assert_eq!(s4.isomorphisms(&s4).len(), 24);
    }

    #[test]
    fn subgroups_and_cosets() {
        let s3 = FiniteGroupTable::symmetric(3).unwrap();
        let c = FiniteGroupTable::permutation_index(&[1, 2, 0]).unwrap();
        let mask = s3.generated(&[c]);
        let (a3, emb) = s3.subgroup(&mask);
        assert_eq!(a3.order(), 3);
        assert_eq!(a3.isomorphisms(&FiniteGroupTable::cyclic(3).unwrap()).len(), 2);
        let reps = s3.left_coset_reps(&emb);
        let mut distinct = reps.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 2);
    }
}
