//! The `A_n = F[x₁,…,x_n]/(x₁²,…,x_n²)` action on Khovanov homology
//! coming from one basepoint per closure strand.
//!
//! At chain level `x_i` changes the label of the circle through `p_i` from
//! `1` to `x` and kills generators where it is already `x`. It lowers `j`
//! by 2 and preserves `i`.

use std::collections::BTreeMap;

use crate::cube::{Bidegree, EnhancedState, KhComplex, Label};
use crate::error::{Error, Result};
use crate::f2::{induced_map_on_cycles, BitVector, F2Matrix, LinearMap, SparseMatrix};
use crate::homology::HomologyTable;

/// Chain-level `x_i`, one sparse block per source bidegree.
#[derive(Debug, Clone)]
pub struct ChainAction {
    basepoint: usize,
    blocks: BTreeMap<Bidegree, SparseMatrix>,
}

/// Shift of the quantum grading under any `x_i`.
pub const ACTION_J_SHIFT: i32 = -2;

impl ChainAction {
    /// 1-based basepoint index.
    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Block `C^b → C^{b + (0,-2)}`.
    pub fn block(&self, b: Bidegree) -> Option<&SparseMatrix> {
        self.blocks.get(&b)
    }

    pub fn apply(&self, b: Bidegree, v: &BitVector) -> BitVector {
        match self.blocks.get(&b) {
            Some(m) => m.apply(v),
            None => BitVector::zeros(0),
        }
    }
}

/// `x_i` on a single generator; `None` when the image is zero.
pub fn act_on_state(c: &KhComplex, i: usize, s: &EnhancedState) -> Result<Option<EnhancedState>> {
    let n = c.diagram().n_strands();
    if i == 0 || i > n {
        return Err(Error::BasepointOutOfRange { index: i, n });
    }
    let circle = c.resolution(s.vertex()).basepoint_circle(i - 1);
    Ok(match s.label(circle) {
        Label::One => Some(s.with_label(circle, Label::X)),
        Label::X => None,
    })
}

pub fn chain_action(c: &KhComplex, i: usize) -> Result<ChainAction> {
    let n = c.diagram().n_strands();
    if i == 0 || i > n {
        return Err(Error::BasepointOutOfRange { index: i, n });
    }
    let mut blocks = BTreeMap::new();
    for b in c.bidegrees() {
        let target = b.shift(0, ACTION_J_SHIFT);
        let columns = c.group(b).iter().map(|s| {
            let circle = c.resolution(s.vertex()).basepoint_circle(i - 1);
            match s.label(circle) {
                Label::One => {
                    let img = s.with_label(circle, Label::X);
                    vec![c.slot(img.vertex(), img.raw_labels())]
                }
                Label::X => vec![],
            }
        });
        blocks.insert(b, SparseMatrix::from_columns(c.dim(target), columns));
    }
    Ok(ChainAction { basepoint: i, blocks })
}

/// Checks `d ∘ x_i = x_i ∘ d` block by block, exactly.
pub fn check_commutes(c: &KhComplex, a: &ChainAction) -> Result<()> {
    for b in c.bidegrees() {
        let zero = |rows, cols| SparseMatrix::zeros(rows, cols);
        let down = b.shift(0, ACTION_J_SHIFT);
        let x_here = a.block(b).cloned().unwrap_or_else(|| zero(c.dim(down), c.dim(b)));
        let x_next = a
            .block(b.shift(1, 0))
            .cloned()
            .unwrap_or_else(|| zero(c.dim(down.shift(1, 0)), c.dim(b.shift(1, 0))));
        let lhs = c.differential(down).compose(&x_here)?;
        let rhs = x_next.compose(&c.differential(b))?;
        if lhs != rhs {
            return Err(Error::Consistency(format!(
                "x_{} does not commute with the differential at {b}",
                a.basepoint
            )));
        }
    }
    Ok(())
}

/// Induced action of one `x_i` on homology: matrices `H^b → H^{b+(0,-2)}`
/// keyed by source bidegree, for every `b` with `H^b ≠ 0`.
#[derive(Debug, Clone)]
pub struct HomologyAction {
    basepoint: usize,
    matrices: BTreeMap<Bidegree, F2Matrix>,
}

impl HomologyAction {
    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn matrices(&self) -> impl Iterator<Item = (Bidegree, &F2Matrix)> {
        self.matrices.iter().map(|(&b, m)| (b, m))
    }

    /// The matrix at `b`, zero if either side has no homology.
    pub fn matrix_at(&self, t: &HomologyTable, b: Bidegree) -> F2Matrix {
        self.matrices
            .get(&b)
            .cloned()
            .unwrap_or_else(|| F2Matrix::zeros(t.dim(b.shift(0, ACTION_J_SHIFT)), t.dim(b)))
    }
}

pub fn homology_action(t: &HomologyTable, c: &KhComplex, i: usize) -> Result<HomologyAction> {
    let a = chain_action(c, i)?;
    check_commutes(c, &a)?;
    let mut matrices = BTreeMap::new();
    for (b, source) in t.groups() {
        if source.dim() == 0 {
            continue;
        }
        let target_degree = b.shift(0, ACTION_J_SHIFT);
        let m = match t.group(target_degree) {
            Some(target) => induced_map_on_cycles(a.block(b).expect("block for populated degree"), source, target)
                .map_err(|e| Error::Consistency(format!("x_{i} on homology at {b}: {e}")))?,
            None => F2Matrix::zeros(0, source.dim()),
        };
        matrices.insert(b, m);
    }
    Ok(HomologyAction { basepoint: i, matrices })
}

/// All `n` basepoint actions with the relations of `A_n` checked.
#[derive(Debug, Clone)]
pub struct ModuleStructure {
    n: usize,
    chain: Vec<ChainAction>,
    actions: Vec<HomologyAction>,
    squares_vanish: bool,
    commute: bool,
}

impl ModuleStructure {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `actions()[i-1]` is `x_i`.
    pub fn actions(&self) -> &[HomologyAction] {
        &self.actions
    }

    pub fn chain_actions(&self) -> &[ChainAction] {
        &self.chain
    }

    pub fn squares_vanish(&self) -> bool {
        self.squares_vanish
    }

    pub fn commute(&self) -> bool {
        self.commute
    }

    /// Matrix of `x_{i_1} ⋯ x_{i_k}` on `H^b` (rightmost applied first).
    pub fn product_at(&self, t: &HomologyTable, indices: &[usize], b: Bidegree) -> F2Matrix {
        let mut m = F2Matrix::identity(t.dim(b));
        let mut cur = b;
        for &i in indices.iter().rev() {
            m = self.actions[i - 1]
                .matrix_at(t, cur)
                .mul(&m)
                .expect("composable by grading");
            cur = cur.shift(0, ACTION_J_SHIFT);
        }
        m
    }
}

pub fn module_structure(t: &HomologyTable, c: &KhComplex) -> Result<ModuleStructure> {
    let n = c.diagram().n_strands();
    let chain = (1..=n).map(|i| chain_action(c, i)).collect::<Result<Vec<_>>>()?;
    let actions = (1..=n).map(|i| homology_action(t, c, i)).collect::<Result<Vec<_>>>()?;
    let mut m = ModuleStructure {
        n,
        chain,
        actions,
        squares_vanish: true,
        commute: true,
    };
    let degrees: Vec<Bidegree> = t.betti().iter().map(|(b, _)| b).collect();
    for &b in &degrees {
        for i in 1..=n {
            if !m.product_at(t, &[i, i], b).is_zero() {
                m.squares_vanish = false;
            }
            for j in i + 1..=n {
                if m.product_at(t, &[i, j], b) != m.product_at(t, &[j, i], b) {
                    m.commute = false;
                }
            }
        }
    }
    Ok(m)
}

/// A homology class `g` with `x₁⋯x_n·g ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub bidegree: Bidegree,
    /// Index into the cycle representatives at `bidegree`.
    pub index: usize,
    pub cycle: BitVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessTest {
    pub free_rank_one: bool,
    pub total_dim: usize,
    pub expected_dim: usize,
    pub top_product_nonzero: bool,
    pub witness: Option<Witness>,
}

/// Decides whether `Kh ≅ A_n` as an `A_n`-module: the total dimension
/// must be `2ⁿ` and `x₁⋯x_n` must be nonzero on homology. A nonzero
/// `x₁⋯x_n·g` makes `a ↦ a·g` injective on `A_n`, so with the dimension
/// count the two checks suffice.
pub fn is_free_rank_one(t: &HomologyTable, m: &ModuleStructure) -> FreenessTest {
    let n = m.n();
    let expected_dim = 1usize.checked_shl(n as u32).unwrap_or(usize::MAX);
    let all: Vec<usize> = (1..=n).collect();
    let top = Bidegree::new(0, (t.writhe().writhe + n as i64) as i32);
    let order = std::iter::once(top).chain(t.betti().iter().map(|(b, _)| b).filter(|&b| b != top));
    let mut witness = None;
    for b in order {
        if t.dim(b) == 0 {
            continue;
        }
        let p = m.product_at(t, &all, b);
        if let Some(index) = (0..p.cols()).find(|&k| !p.column(k).is_zero()) {
            let cycle = t.group(b).expect("nonzero homology").cycle_reps()[index].clone();
            witness = Some(Witness {
                bidegree: b,
                index,
                cycle,
            });
            break;
        }
    }
    let total_dim = t.total_dim();
    let top_product_nonzero = witness.is_some();
    let free_rank_one = total_dim == expected_dim && top_product_nonzero;
    FreenessTest {
        free_rank_one,
        total_dim,
        expected_dim,
        top_product_nonzero,
        witness: if free_rank_one { witness } else { None },
    }
}
