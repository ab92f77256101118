//! Khovanov homology tables with stored representatives.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::braid::{BraidWord, Writhe};
use crate::cube::{Bidegree, KhComplex};
use crate::error::Result;
use crate::f2::{homology_sparse, SparseMatrix, SubquotientBasis};
use crate::poly::LaurentPoly;

/// Dimensions of a bigraded vector space; only nonzero entries are kept.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BettiTable(BTreeMap<Bidegree, usize>);

impl BettiTable {
    pub fn from_dims(dims: impl IntoIterator<Item = (Bidegree, usize)>) -> Self {
        let mut map = BTreeMap::new();
        for (b, d) in dims {
            if d > 0 {
                *map.entry(b).or_insert(0) += d;
            }
        }
        Self(map)
    }

    pub fn get(&self, b: Bidegree) -> usize {
        self.0.get(&b).copied().unwrap_or(0)
    }

    /// Nonzero entries sorted by `(i, j)`.
    pub fn iter(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.0.iter().map(|(&b, &d)| (b, d))
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The table with every bidegree negated.
    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|(b, &d)| (Bidegree::new(-b.i, -b.j), d)).collect())
    }

    /// `Σ (-1)^i q^j dim`.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (b, d) in self.iter() {
            let sign = if b.i.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(sign * d as i64, b.j);
        }
        p
    }
}

/// `Kh(σ̂)` with a representative basis at every populated bidegree.
#[derive(Debug, Clone)]
pub struct HomologyTable {
    word: BraidWord,
    writhe: Writhe,
    components: usize,
    betti: BettiTable,
    groups: BTreeMap<Bidegree, SubquotientBasis>,
}

impl HomologyTable {
    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn writhe(&self) -> Writhe {
        self.writhe
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn betti(&self) -> &BettiTable {
        &self.betti
    }

    pub fn dim(&self, b: Bidegree) -> usize {
        self.betti.get(b)
    }

    pub fn total_dim(&self) -> usize {
        self.betti.total()
    }

    /// Homology data at `b`, present whenever the chain group is nonzero.
    pub fn group(&self, b: Bidegree) -> Option<&SubquotientBasis> {
        self.groups.get(&b)
    }

    pub fn groups(&self) -> impl Iterator<Item = (Bidegree, &SubquotientBasis)> {
        self.groups.iter().map(|(&b, g)| (b, g))
    }
}

/// Homology of the complex at a single bidegree.
pub fn homology_at(c: &KhComplex, b: Bidegree) -> Result<SubquotientBasis> {
    let zero_in;
    let d_in = match c.differential_ref(b.shift(-1, 0)) {
        Some(d) => d,
        None => {
            zero_in = SparseMatrix::zeros(c.dim(b), 0);
            &zero_in
        }
    };
    let zero_out;
    let d_out = match c.differential_ref(b) {
        Some(d) => d,
        None => {
            zero_out = SparseMatrix::zeros(0, c.dim(b));
            &zero_out
        }
    };
    homology_sparse(d_in, d_out)
}

pub fn betti_table(c: &KhComplex) -> Result<HomologyTable> {
    let degrees: Vec<Bidegree> = c.bidegrees().collect();
    let groups: BTreeMap<Bidegree, SubquotientBasis> = degrees
        .par_iter()
        .map(|&b| homology_at(c, b).map(|h| (b, h)))
        .collect::<Result<_>>()?;
    let betti = BettiTable::from_dims(groups.iter().map(|(&b, h)| (b, h.dim())));
    let word = c.word().clone();
    Ok(HomologyTable {
        writhe: word.writhe(),
        components: word.component_count(),
        word,
        betti,
        groups,
    })
}

pub fn graded_euler_characteristic(t: &HomologyTable) -> LaurentPoly {
    t.betti().euler_characteristic()
}

/// Whether `dim Kh^{i,j}(σ̂) = dim Kh^{-i,-j}(m(σ)^)` for every bidegree.
pub fn mirror_table_check(w: &BraidWord, max_crossings: usize) -> Result<bool> {
    let table = betti_table(&KhComplex::from_word(w, max_crossings)?)?;
    let mirror = betti_table(&KhComplex::from_word(&w.mirror(), max_crossings)?)?;
    Ok(table.betti() == &mirror.betti().negated())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(s: &str) -> HomologyTable {
        betti_table(&KhComplex::from_word(&s.parse().unwrap(), 16).unwrap()).unwrap()
    }

    fn dims(pairs: &[((i32, i32), usize)]) -> BettiTable {
        BettiTable::from_dims(pairs.iter().map(|&((i, j), d)| (Bidegree::new(i, j), d)))
    }

    #[test]
    fn two_component_unlink() {
        let t = table("2:");
        assert_eq!(t.betti(), &dims(&[((0, -2), 1), ((0, 0), 2), ((0, 2), 1)]));
        assert_eq!(t.total_dim(), 4);
    }

    #[test]
    fn right_trefoil() {
        let t = table("2: 1 1 1");
        assert_eq!(
            t.betti(),
            &dims(&[
                ((0, 1), 1),
                ((0, 3), 1),
                ((2, 5), 1),
                ((2, 7), 1),
                ((3, 7), 1),
                ((3, 9), 1)
            ])
        );
        assert_eq!(
            graded_euler_characteristic(&t),
            LaurentPoly::from_terms([(1, 1), (3, 1), (5, 1), (9, -1)])
        );
    }

    #[test]
    fn positive_hopf_link() {
        let t = table("2: 1 1");
        assert_eq!(t.betti(), &dims(&[((0, 0), 1), ((0, 2), 1), ((2, 4), 1), ((2, 6), 1)]));
    }

    #[test]
    fn euler_characteristic_of_unlinks() {
        let q = LaurentPoly::from_terms([(-1, 1), (1, 1)]);
        assert_eq!(graded_euler_characteristic(&table("1:")), q);
        assert_eq!(graded_euler_characteristic(&table("2:")), q.pow(2));
    }

    #[test]
    fn mirror_symmetry() {
        for s in ["3:", "2: 1 1 1", "3: 1 -2 1 1", "3: 1 2 -1 2"] {
            assert!(mirror_table_check(&s.parse().unwrap(), 16).unwrap(), "{s}");
        }
    }

    #[test]
    fn representatives_are_cycles_and_independent() {
        let w: BraidWord = "3: 1 -2 1 -2".parse().unwrap();
        let c = KhComplex::from_word(&w, 16).unwrap();
        let t = betti_table(&c).unwrap();
        for (b, g) in t.groups() {
            let d = c.differential(b);
            for z in g.cycle_reps() {
                use crate::f2::LinearMap;
                assert!(d.apply(z).is_zero());
                assert!(!g.is_boundary(z));
            }
            assert_eq!(g.dim(), t.dim(b));
        }
    }
}
