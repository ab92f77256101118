//! Slow, independent recomputations used to cross-check the main pipeline.
//!
//! Both share the diagram and cube front end with the rest of the crate but
//! none of the packed linear algebra.

use std::collections::BTreeMap;

use crate::braid::BraidWord;
use crate::cube::{resolve, Bidegree, CubeVertex, KhComplex};
use crate::error::{Error, Result};
use crate::homology::BettiTable;
use crate::poly::LaurentPoly;

/// Generator limit for [`dense_homology_oracle`].
pub const ORACLE_MAX_GENERATORS: usize = 4096;

/// `(-1)^{n₋} q^{n₊-2n₋} Σ_v (-1)^{|v|} q^{|v|} (q + q⁻¹)^{c(v)}`, from
/// circle counts alone.
pub fn kauffman_state_sum(w: &BraidWord, max_crossings: usize) -> Result<LaurentPoly> {
    let d = w.closure_diagram();
    let c = d.crossing_count();
    if c > max_crossings {
        return Err(Error::CapExceeded {
            crossings: c,
            cap: max_crossings,
        });
    }
    let circle = LaurentPoly::from_terms([(-1, 1), (1, 1)]);
    let mut powers = vec![LaurentPoly::one()];
    let mut body = LaurentPoly::zero();
    for idx in 0..1u64 << c {
        let v = CubeVertex::from_index(idx, c);
        let circles = resolve(&d, v)?.circle_count();
        while powers.len() <= circles {
            let next = powers.last().unwrap() * &circle;
            powers.push(next);
        }
        let r = v.weight() as i32;
        let sign = if r % 2 == 0 { 1 } else { -1 };
        body = &body + &(&powers[circles] * &LaurentPoly::monomial(sign, r));
    }
    let (np, nn) = (d.positive_crossings() as i32, d.negative_crossings() as i32);
    let sign = if nn % 2 == 0 { 1 } else { -1 };
    Ok(&body * &LaurentPoly::monomial(sign, np - 2 * nn))
}

/// Textbook Gaussian elimination on a row list of booleans.
pub fn dense_rank(rows: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<bool>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col]) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][col] {
                let pivot = m[rank].clone();
                for (a, b) in m[r].iter_mut().zip(pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers from dense rank computations:
/// `dim H^b = dim C^b - rank d^b - rank d^{b-(1,0)}`.
pub fn dense_homology_oracle(w: &BraidWord, max_crossings: usize) -> Result<BettiTable> {
    let c = KhComplex::from_word(w, max_crossings)?;
    let total = c.total_generators();
    if total > ORACLE_MAX_GENERATORS {
        return Err(Error::OracleTooLarge(total));
    }
    let mut ranks: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for b in c.bidegrees() {
        let d = c.differential(b);
        let mut dense = vec![vec![false; d.cols()]; d.rows()];
        #[allow(clippy::needless_range_loop)]
        for col in 0..d.cols() {
            for &r in d.column(col) {
                dense[r][col] = true;
            }
        }
        ranks.insert(b, dense_rank(&dense));
    }
    Ok(BettiTable::from_dims(c.bidegrees().map(|b| {
        let incoming = ranks.get(&b.shift(-1, 0)).copied().unwrap_or(0);
        (b, c.dim(b) - ranks[&b] - incoming)
    })))
}
