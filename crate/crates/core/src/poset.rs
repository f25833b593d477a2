//! Generic finite posets and the Dedekind-MacNeille completion.
//!
//! The completion of a poset `P` is the smallest lattice containing it,
//! realized as the family of *cuts*: subsets `A` with
//! `lower(upper(A)) = A`, ordered by inclusion. Every cut is an intersection
//! of principal down-sets, so the family is generated by closing the
//! principal down-sets (plus the full set) under pairwise intersection.

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("poset must be non-empty")]
    Empty,
    #[error("relation is not reflexive at element {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric at elements {0} and {1}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive at elements {0} <= {1} <= {2}")]
    NotTransitive(usize, usize, usize),
}

/// An explicit finite poset on elements `0..size` with a dense order
/// relation, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    size: usize,
    rel: Vec<bool>, // rel[i * size + j] == (i <= j)
}

impl FinitePoset {
    /// Materialize and validate the relation given by `leq`.
    pub fn new(size: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Result<Self, PosetError> {
        if size == 0 {
            return Err(PosetError::Empty);
        }
        let mut rel = vec![false; size * size];
        for i in 0..size {
            for j in 0..size {
                rel[i * size + j] = leq(i, j);
            }
        }
        let p = FinitePoset { size, rel };
        for i in 0..size {
            if !p.leq(i, i) {
                return Err(PosetError::NotReflexive(i));
            }
        }
        for i in 0..size {
            for j in 0..size {
                if i != j && p.leq(i, j) && p.leq(j, i) {
                    return Err(PosetError::NotAntisymmetric(i, j));
                }
            }
        }
        for i in 0..size {
            for j in 0..size {
                if !p.leq(i, j) {
                    continue;
                }
                for k in 0..size {
                    if p.leq(j, k) && !p.leq(i, k) {
                        return Err(PosetError::NotTransitive(i, j, k));
                    }
                }
            }
        }
        Ok(p)
    }

    /// A total order on `0..size`.
    pub fn chain(size: usize) -> Self {
        Self::new(size, |i, j| i <= j).expect("chain is a poset")
    }

    /// The discrete order on `0..size`.
    pub fn antichain(size: usize) -> Self {
        Self::new(size, |i, j| i == j).expect("antichain is a poset")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.size + j]
    }

    /// Common upper bounds of the members of `set` (a membership mask).
    fn upper_bounds(&self, set: &[bool]) -> Vec<bool> {
        (0..self.size)
            .map(|u| {
                set.iter()
                    .enumerate()
                    .all(|(a, &inside)| !inside || self.leq(a, u))
            })
            .collect()
    }

    /// Common lower bounds of the members of `set`.
    fn lower_bounds(&self, set: &[bool]) -> Vec<bool> {
        (0..self.size)
            .map(|l| {
                set.iter()
                    .enumerate()
                    .all(|(a, &inside)| !inside || self.leq(l, a))
            })
            .collect()
    }

    /// The cut closure `lower(upper(set))`.
    pub fn cut_closure(&self, set: &[bool]) -> Vec<bool> {
        self.lower_bounds(&self.upper_bounds(set))
    }
}

/// The Dedekind-MacNeille completion of a finite poset: all cuts ordered by
/// inclusion, together with the embedding of the original elements as
/// principal cuts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionLattice {
    poset_size: usize,
    /// Membership masks over the original elements, sorted by (popcount,
    /// lexicographic) so that containment never points backwards.
    cuts: Vec<Vec<bool>>,
    /// `embedding[x]` is the index of the principal cut of element `x`.
    embedding: Vec<usize>,
}

/// Compute the completion by intersection-closing the principal down-sets.
pub fn dedekind_macneille(p: &FinitePoset) -> CompletionLattice {
    use std::collections::HashSet;

    let size = p.size();
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut cuts: Vec<Vec<bool>> = Vec::new();

    let full = vec![true; size];
    // lower(upper(P)) = P and the closure of the empty family is the full
    // set, so it is always a cut.
    for cut in std::iter::once(full).chain((0..size).map(|x| {
        let mut principal = vec![false; size];
        principal[x] = true;
        p.cut_closure(&principal)
    })) {
        if seen.insert(cut.clone()) {
            cuts.push(cut);
        }
    }

    let mut frontier: Vec<Vec<bool>> = cuts.clone();
    while let Some(cut) = frontier.pop() {
        let mut idx = 0;
        while idx < cuts.len() {
            let meet: Vec<bool> = cut.iter().zip(&cuts[idx]).map(|(&a, &b)| a && b).collect();
            if seen.insert(meet.clone()) {
                cuts.push(meet.clone());
                frontier.push(meet);
            }
            idx += 1;
        }
    }

    cuts.sort_by(|a, b| {
        let ka = a.iter().filter(|&&v| v).count();
        let kb = b.iter().filter(|&&v| v).count();
        ka.cmp(&kb).then_with(|| a.cmp(b))
    });

    let embedding = (0..size)
        .map(|x| {
            let mut principal = vec![false; size];
            principal[x] = true;
            let down = p.cut_closure(&principal);
            cuts.iter()
                .position(|c| *c == down)
                .expect("principal cut present")
        })
        .collect();

    CompletionLattice {
        poset_size: size,
        cuts,
        embedding,
    }
}

impl CompletionLattice {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn poset_size(&self) -> usize {
        self.poset_size
    }

    /// Membership mask of cut `i` over the original elements.
    pub fn cut(&self, i: usize) -> &[bool] {
        &self.cuts[i]
    }

    pub fn cuts(&self) -> &[Vec<bool>] {
        &self.cuts
    }

    /// Index of the principal cut of original element `x`.
    pub fn embed(&self, x: usize) -> usize {
        self.embedding[x]
    }

    /// Cut containment, the lattice order.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.cuts[a]
            .iter()
            .zip(&self.cuts[b])
            .all(|(&x, &y)| !x || y)
    }

    /// Greatest lower bound: cuts are intersection-closed.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        let m: Vec<bool> = self.cuts[a]
            .iter()
            .zip(&self.cuts[b])
            .map(|(&x, &y)| x && y)
            .collect();
        self.cuts
            .iter()
            .position(|c| *c == m)
            .expect("closed under intersection")
    }

    /// Least upper bound: the smallest cut containing the union.
    pub fn join(&self, a: usize, b: usize) -> usize {
        // Cuts are sorted by size, so the first superset of the union is the
        // least one.
        self.cuts
            .iter()
            .position(|c| {
                c.iter()
                    .zip(self.cuts[a].iter().zip(&self.cuts[b]))
                    .all(|(&cv, (&av, &bv))| cv || (!av && !bv))
            })
            .expect("full set contains every union")
    }

    /// Index of the minimum (first) and maximum (last) cut.
    pub fn minimum(&self) -> usize {
        0
    }

    pub fn maximum(&self) -> usize {
        self.cuts.len() - 1
    }

    /// Reinterpret the lattice as a plain poset, e.g. to complete it again.
    pub fn as_poset(&self) -> FinitePoset {
        FinitePoset::new(self.len(), |a, b| self.leq(a, b)).expect("containment is a poset")
    }

    /// Structural invariants: intersection-closed, bounded, and the
    /// embedding preserves and reflects the original order.
    pub fn verify_invariants(&self, original: &FinitePoset) -> bool {
        let k = self.len();
        for a in 0..k {
            if !(self.leq(self.minimum(), a) && self.leq(a, self.maximum())) {
                return false;
            }
            for b in 0..k {
                let m = self.meet(a, b);
                if !(self.leq(m, a) && self.leq(m, b)) {
                    return false;
                }
                let j = self.join(a, b);
                if !(self.leq(a, j) && self.leq(b, j)) {
                    return false;
                }
            }
        }
        for x in 0..original.size() {
            for y in 0..original.size() {
                if original.leq(x, y) != self.leq(self.embed(x), self.embed(y)) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two bottoms, two tops, all four cross relations.
    fn bowtie() -> FinitePoset {
        FinitePoset::new(4, |i, j| i == j || (i < 2 && j >= 2)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            FinitePoset::new(0, |_, _| true),
            Err(PosetError::Empty)
        ));
        assert_eq!(
            FinitePoset::new(2, |_, _| false),
            Err(PosetError::NotReflexive(0))
        );
        assert_eq!(
            FinitePoset::new(2, |_, _| true),
            Err(PosetError::NotAntisymmetric(0, 1))
        );
        // 0 <= 1 <= 2 without 0 <= 2.
        assert_eq!(
            FinitePoset::new(3, |i, j| i == j || (i == 0 && j == 1) || (i == 1 && j == 2)),
            Err(PosetError::NotTransitive(0, 1, 2))
        );
    }

    #[test]
    fn bowtie_completes_to_seven() {
        let p = bowtie();
        let lat = dedekind_macneille(&p);
        assert_eq!(lat.len(), 7);
        assert!(lat.verify_invariants(&p));

        // New bottom, new top, and the middle {0, 1} between the two layers.
        assert_eq!(lat.cut(lat.minimum()), &[false; 4]);
        assert_eq!(lat.cut(lat.maximum()), &[true; 4]);
        let middle = vec![true, true, false, false];
        let mid = lat.cuts().iter().position(|c| *c == middle).unwrap();
        for x in 0..2 {
            assert!(lat.leq(lat.embed(x), mid));
        }
        for x in 2..4 {
            assert!(lat.leq(mid, lat.embed(x)));
        }
        // The three added cuts are exactly bottom, middle, top.
        let added: Vec<usize> = (0..lat.len())
            .filter(|&c| !(0..4).any(|x| lat.embed(x) == c))
            .collect();
        assert_eq!(added, vec![lat.minimum(), mid, lat.maximum()]);
    }

    #[test]
    fn chain_completes_to_itself() {
        for k in 1..=6 {
            let p = FinitePoset::chain(k);
            let lat = dedekind_macneille(&p);
            assert_eq!(lat.len(), k);
            assert!(lat.verify_invariants(&p));
        }
    }

    #[test]
    fn two_antichain_completes_to_diamond() {
        let p = FinitePoset::antichain(2);
        let lat = dedekind_macneille(&p);
        assert_eq!(lat.len(), 4);
        assert!(lat.verify_invariants(&p));
        assert_eq!(lat.meet(lat.embed(0), lat.embed(1)), lat.minimum());
        assert_eq!(lat.join(lat.embed(0), lat.embed(1)), lat.maximum());
    }

    #[test]
    fn completion_is_idempotent() {
        for p in [bowtie(), FinitePoset::chain(4), FinitePoset::antichain(3)] {
            let lat = dedekind_macneille(&p);
            let again = dedekind_macneille(&lat.as_poset());
            assert_eq!(again.len(), lat.len());
            assert!(again.verify_invariants(&lat.as_poset()));
            // For a lattice input every cut is principal.
            let mut embeds: Vec<usize> = (0..lat.len()).map(|x| again.embed(x)).collect();
            embeds.sort_unstable();
            embeds.dedup();
            assert_eq!(embeds.len(), again.len());
        }
    }

    #[test]
    fn meet_and_join_agree_with_bounds() {
        let p = bowtie();
        let lat = dedekind_macneille(&p);
        let (a, b) = (lat.embed(2), lat.embed(3));
        let m = lat.meet(a, b);
        assert_eq!(lat.cut(m), &[true, true, false, false]);
        assert_eq!(lat.join(a, b), lat.maximum());
        assert_eq!(lat.join(lat.embed(0), lat.embed(1)), m);
    }
}
