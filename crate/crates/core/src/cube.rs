//! The cube of resolutions of a closed braid diagram and the Khovanov chain
//! complex over GF(2).
//!
//! Smoothing convention: at a positive crossing the 0-smoothing is the
//! braid-like (oriented) one, at a negative crossing the 1-smoothing is.
//! Bigradings are `i = r - n₋` and `j = θ + r + n₊ - 2n₋`, with `r` the
//! number of 1-smoothings and `θ = #1 - #x` over the circles.

use std::collections::BTreeMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::braid::{ArcId, BraidWord, ClosureDiagram, Sign};
use crate::error::{Error, Result};
use crate::f2::{BitVector, SparseMatrix};

/// Default cap on the number of crossings accepted by [`build_complex`].
pub const DEFAULT_MAX_CROSSINGS: usize = 16;

/// Homological and quantum degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub i: i32,
    pub j: i32,
}

impl Bidegree {
    pub const fn new(i: i32, j: i32) -> Self {
        Self { i, j }
    }

    pub fn shift(self, di: i32, dj: i32) -> Self {
        Self {
            i: self.i + di,
            j: self.j + dj,
        }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// A vertex of `{0,1}^c`. Bit `k` is the smoothing at crossing `k`.
///
/// Stored with crossing 0 as the most significant bit, so the numeric
/// [`CubeVertex::index`] orders vertices lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeVertex {
    len: u8,
    bits: u64,
}

impl CubeVertex {
    pub fn from_bits(bits: &[bool]) -> Self {
        assert!(bits.len() <= 63, "at most 63 crossings");
        let index = bits.iter().fold(0u64, |acc, &b| acc << 1 | b as u64);
        Self {
            len: bits.len() as u8,
            bits: index,
        }
    }

    pub fn from_index(index: u64, len: usize) -> Self {
        assert!(len <= 63 && (len == 63 || index < 1 << len));
        Self {
            len: len as u8,
            bits: index,
        }
    }

    pub fn zero(len: usize) -> Self {
        Self::from_index(0, len)
    }

    pub fn index(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn mask(&self, k: usize) -> u64 {
        1 << (self.len as usize - 1 - k)
    }

    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len());
        self.bits & self.mask(k) != 0
    }

    pub fn with(&self, k: usize, value: bool) -> Self {
        assert!(k < self.len());
        let bits = if value {
            self.bits | self.mask(k)
        } else {
            self.bits & !self.mask(k)
        };
        Self { len: self.len, bits }
    }

    /// Number of 1-smoothings.
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len()).map(|k| self.get(k)).collect()
    }
}

impl fmt::Debug for CubeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubeVertex(")?;
        for b in self.to_bits() {
            write!(f, "{}", b as u8)?;
        }
        write!(f, ")")
    }
}

/// The vertex whose smoothings are all braid-like: bit `k` is set exactly
/// at the negative letters.
pub fn braid_like_vertex(word: &BraidWord) -> CubeVertex {
    let bits: Vec<bool> = word.letters().iter().map(|&k| k < 0).collect();
    CubeVertex::from_bits(&bits)
}

fn is_braid_like(sign: Sign, bit: bool) -> bool {
    (sign == Sign::Positive) != bit
}

/// Circles of a complete resolution, numbered by their smallest arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    vertex: CubeVertex,
    circle_of_arc: Vec<u32>,
    circle_count: usize,
    basepoint_circle: Vec<usize>,
}

impl Resolution {
    pub fn vertex(&self) -> CubeVertex {
        self.vertex
    }

    pub fn circle_count(&self) -> usize {
        self.circle_count
    }

    pub fn circle_of_arc(&self, arc: ArcId) -> usize {
        self.circle_of_arc[arc] as usize
    }

    /// Circle containing basepoint `p_{i+1}` (0-based `i`).
    pub fn basepoint_circle(&self, i: usize) -> usize {
        self.basepoint_circle[i]
    }

    pub fn basepoint_circles(&self) -> &[usize] {
        &self.basepoint_circle
    }

    /// Arcs of each circle, in ascending order.
    pub fn circles(&self) -> Vec<Vec<ArcId>> {
        let mut out = vec![Vec::new(); self.circle_count];
        for (arc, &c) in self.circle_of_arc.iter().enumerate() {
            out[c as usize].push(arc);
        }
        out
    }
}

/// Smooths every crossing of `d` according to `v` and traces the circles.
pub fn resolve(d: &ClosureDiagram, v: CubeVertex) -> Result<Resolution> {
    if v.len() != d.crossing_count() {
        return Err(Error::VertexLength {
            got: v.len(),
            expected: d.crossing_count(),
        });
    }
    let mut uf = UnionFind::<usize>::new(d.arc_count());
    for (top, closure) in d.top_joins() {
        uf.union(top, closure);
    }
    for (k, c) in d.crossings().iter().enumerate() {
        if is_braid_like(c.sign, v.get(k)) {
            uf.union(c.below[0], c.above[0]);
            uf.union(c.below[1], c.above[1]);
        } else {
            uf.union(c.below[0], c.below[1]);
            uf.union(c.above[0], c.above[1]);
        }
    }
    let mut id_of_root = vec![u32::MAX; d.arc_count()];
    let mut circle_of_arc = Vec::with_capacity(d.arc_count());
    let mut circle_count = 0;
    for arc in 0..d.arc_count() {
        let root = uf.find(arc);
        if id_of_root[root] == u32::MAX {
            id_of_root[root] = circle_count;
            circle_count += 1;
        }
        circle_of_arc.push(id_of_root[root]);
    }
    let basepoint_circle = d.basepoint_arcs().iter().map(|&a| circle_of_arc[a] as usize).collect();
    Ok(Resolution {
        vertex: v,
        circle_of_arc,
        circle_count: circle_count as usize,
        basepoint_circle,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    One,
    X,
}

/// A circle labelling at a cube vertex. `labels` holds one bit per circle
/// (set = `x`), circle 0 most significant, so numeric order is the
/// lexicographic order with `1 < x`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EnhancedState {
    vertex: CubeVertex,
    circles: u8,
    labels: u64,
}

impl EnhancedState {
    pub fn new(vertex: CubeVertex, labels: &[Label]) -> Result<Self> {
        if labels.len() > 63 {
            return Err(Error::TooManyCircles(labels.len()));
        }
        let bits = labels.iter().fold(0u64, |acc, &l| acc << 1 | (l == Label::X) as u64);
        Ok(Self {
            vertex,
            circles: labels.len() as u8,
            labels: bits,
        })
    }

    fn from_raw(vertex: CubeVertex, circles: usize, labels: u64) -> Self {
        Self {
            vertex,
            circles: circles as u8,
            labels,
        }
    }

    /// All circles labelled `label`.
    pub fn uniform(vertex: CubeVertex, circles: usize, label: Label) -> Result<Self> {
        Self::new(vertex, &vec![label; circles])
    }

    pub fn vertex(&self) -> CubeVertex {
        self.vertex
    }

    pub fn circle_count(&self) -> usize {
        self.circles as usize
    }

    pub fn raw_labels(&self) -> u64 {
        self.labels
    }

    #[inline]
    fn mask(&self, c: usize) -> u64 {
        1 << (self.circles as usize - 1 - c)
    }

    pub fn label(&self, c: usize) -> Label {
        if self.labels & self.mask(c) != 0 {
            Label::X
        } else {
            Label::One
        }
    }

    pub fn with_label(&self, c: usize, label: Label) -> Self {
        let labels = match label {
            Label::X => self.labels | self.mask(c),
            Label::One => self.labels & !self.mask(c),
        };
        Self { labels, ..*self }
    }

    pub fn labels(&self) -> Vec<Label> {
        (0..self.circle_count()).map(|c| self.label(c)).collect()
    }

    /// `#1 - #x`.
    pub fn theta(&self) -> i32 {
        self.circles as i32 - 2 * self.labels.count_ones() as i32
    }
}

impl fmt::Debug for EnhancedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.vertex)?;
        for (idx, l) in self.labels().iter().enumerate() {
            if idx > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "{}", if *l == Label::X { "x" } else { "1" })?;
        }
        write!(f, "]")
    }
}

/// Bigrading of an enhanced state in the complex of `d`.
pub fn gradings(s: &EnhancedState, d: &ClosureDiagram) -> Bidegree {
    grading_of(s.vertex.weight(), s.theta(), d)
}

fn grading_of(weight: usize, theta: i32, d: &ClosureDiagram) -> Bidegree {
    let r = weight as i32;
    let (np, nn) = (d.positive_crossings() as i32, d.negative_crossings() as i32);
    Bidegree {
        i: r - nn,
        j: theta + r + np - 2 * nn,
    }
}

/// How the circles change along one edge of the cube.
#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeTransition {
    target: CubeVertex,
    target_circles: usize,
    /// New circle of every old circle not touched by the crossing.
    carried: Vec<(usize, usize)>,
    kind: EdgeKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeKind {
    Merge { a: usize, b: usize, into: usize },
    Split { from: usize, left: usize, right: usize },
}

impl EdgeTransition {
    fn new(d: &ClosureDiagram, from: &Resolution, to: &Resolution, crossing: usize) -> Self {
        let c = &d.crossings()[crossing];
        let arcs = [c.below[0], c.below[1], c.above[0], c.above[1]];
        let distinct = |res: &Resolution| {
            let mut v: Vec<usize> = arcs.iter().map(|&a| res.circle_of_arc(a)).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let (old, new) = (distinct(from), distinct(to));
        let kind = match (old.as_slice(), new.as_slice()) {
            (&[a, b], &[into]) => EdgeKind::Merge { a, b, into },
            (&[from], &[left, right]) => EdgeKind::Split { from, left, right },
            _ => unreachable!("a single smoothing change must merge or split circles"),
        };
        let mut rep = vec![usize::MAX; from.circle_count()];
        for arc in (0..d.arc_count()).rev() {
            rep[from.circle_of_arc(arc)] = arc;
        }
        let carried = (0..from.circle_count())
            .filter(|c| !old.contains(c))
            .map(|c| (c, to.circle_of_arc(rep[c])))
            .collect();
        Self {
            target: to.vertex(),
            target_circles: to.circle_count(),
            carried,
            kind,
        }
    }

    /// Frobenius rules: `m(1⊗1)=1, m(1⊗x)=m(x⊗1)=x, m(x⊗x)=0`,
    /// `Δ(1)=1⊗x+x⊗1, Δ(x)=x⊗x`.
    fn apply(&self, s: &EnhancedState) -> Vec<EnhancedState> {
        let mut base = EnhancedState::from_raw(self.target, self.target_circles, 0);
        for &(old, new) in &self.carried {
            if s.label(old) == Label::X {
                base = base.with_label(new, Label::X);
            }
        }
        match self.kind {
            EdgeKind::Merge { a, b, into } => match (s.label(a), s.label(b)) {
                (Label::X, Label::X) => vec![],
                (Label::One, Label::One) => vec![base],
                _ => vec![base.with_label(into, Label::X)],
            },
            EdgeKind::Split { from, left, right } => match s.label(from) {
                Label::X => vec![base.with_label(left, Label::X).with_label(right, Label::X)],
                Label::One => vec![base.with_label(right, Label::X), base.with_label(left, Label::X)],
            },
        }
    }
}

/// Image of `from` under the edge of the cube that changes crossing
/// `crossing` from the 0- to the 1-smoothing.
pub fn edge_map(d: &ClosureDiagram, from: &EnhancedState, crossing: usize) -> Result<Vec<EnhancedState>> {
    let v = from.vertex();
    if crossing >= v.len() || v.get(crossing) {
        return Err(Error::DimensionMismatch(format!(
            "crossing {crossing} is not a 0-bit of {v:?}"
        )));
    }
    let src = resolve(d, v)?;
    if src.circle_count() != from.circle_count() {
        return Err(Error::DimensionMismatch(format!(
            "state labels {} circles, resolution has {}",
            from.circle_count(),
            src.circle_count()
        )));
    }
    let dst = resolve(d, v.with(crossing, true))?;
    Ok(EdgeTransition::new(d, &src, &dst, crossing).apply(from))
}

/// The Khovanov chain complex of a closed braid diagram.
#[derive(Debug, Clone)]
pub struct KhComplex {
    diagram: ClosureDiagram,
    resolutions: Vec<Resolution>,
    /// Per vertex, index of each labelling within its bidegree group.
    slot: Vec<Vec<u32>>,
    groups: BTreeMap<Bidegree, Vec<EnhancedState>>,
    /// `d^{i,j}` from `(i,j)` to `(i+1,j)`, one per populated `(i,j)`.
    differentials: BTreeMap<Bidegree, SparseMatrix>,
}

const HARD_CROSSING_LIMIT: usize = 40;

fn check_cap(d: &ClosureDiagram, max_crossings: usize) -> Result<usize> {
    let c = d.crossing_count();
    if c > max_crossings || c > HARD_CROSSING_LIMIT {
        return Err(Error::CapExceeded {
            crossings: c,
            cap: max_crossings.min(HARD_CROSSING_LIMIT),
        });
    }
    Ok(c)
}

/// Chain group dimensions from circle counts alone, without building any
/// generators. Counts are exact in `u64` for every diagram within the cap.
pub fn chain_group_sizes(d: &ClosureDiagram, max_crossings: usize) -> Result<BTreeMap<Bidegree, u64>> {
    let c = check_cap(d, max_crossings)?;
    let (np, nn) = (d.positive_crossings() as i32, d.negative_crossings() as i32);
    let mut sizes = BTreeMap::new();
    for idx in 0..1u64 << c {
        let v = CubeVertex::from_index(idx, c);
        let ell = resolve(d, v)?.circle_count();
        let r = v.weight() as i32;
        let mut binom = 1u64;
        for k in 0..=ell {
            let b = Bidegree::new(r - nn, ell as i32 - 2 * k as i32 + r + np - 2 * nn);
            *sizes.entry(b).or_insert(0u64) += binom;
            binom = binom * (ell - k) as u64 / (k as u64 + 1);
        }
    }
    Ok(sizes)
}

/// Builds the complex, refusing diagrams with more than `max_crossings`
/// crossings.
pub fn build_complex(d: &ClosureDiagram, max_crossings: usize) -> Result<KhComplex> {
    let c = check_cap(d, max_crossings)?;
    let vertex_count = 1u64 << c;
    let resolutions: Vec<Resolution> = (0..vertex_count)
        .into_par_iter()
        .map(|idx| resolve(d, CubeVertex::from_index(idx, c)))
        .collect::<Result<_>>()?;
    if let Some(r) = resolutions.iter().find(|r| r.circle_count() > 63) {
        return Err(Error::TooManyCircles(r.circle_count()));
    }

    let mut groups: BTreeMap<Bidegree, Vec<EnhancedState>> = BTreeMap::new();
    let mut slot = Vec::with_capacity(resolutions.len());
    for res in &resolutions {
        let ell = res.circle_count();
        let mut slots = Vec::with_capacity(1 << ell);
        for labels in 0..1u64 << ell {
            let s = EnhancedState::from_raw(res.vertex(), ell, labels);
            let group = groups.entry(gradings(&s, d)).or_default();
            slots.push(u32::try_from(group.len()).expect("bidegree group exceeds u32 indexing"));
            group.push(s);
        }
        slot.push(slots);
    }

    // Outgoing edges of each vertex.
    let transitions: Vec<Vec<EdgeTransition>> = resolutions
        .par_iter()
        .map(|res| {
            let v = res.vertex();
            (0..c)
                .filter(|&k| !v.get(k))
                .map(|k| {
                    let to = &resolutions[v.with(k, true).index() as usize];
                    EdgeTransition::new(d, res, to, k)
                })
                .collect()
        })
        .collect();

    let differentials = groups
        .par_iter()
        .map(|(&b, gens)| {
            let target = b.shift(1, 0);
            let rows = groups.get(&target).map_or(0, Vec::len);
            let columns = gens.iter().map(|s| {
                transitions[s.vertex().index() as usize]
                    .iter()
                    .flat_map(|t| t.apply(s))
                    .map(|img| {
                        assert_eq!(gradings(&img, d), target, "differential must preserve j");
                        slot[img.vertex().index() as usize][img.raw_labels() as usize] as usize
                    })
                    .collect::<Vec<_>>()
            });
            (b, SparseMatrix::from_columns(rows, columns))
        })
        .collect();

    Ok(KhComplex {
        diagram: d.clone(),
        resolutions,
        slot,
        groups,
        differentials,
    })
}

impl KhComplex {
    pub fn from_word(word: &BraidWord, max_crossings: usize) -> Result<Self> {
        build_complex(&word.closure_diagram(), max_crossings)
    }

    pub fn diagram(&self) -> &ClosureDiagram {
        &self.diagram
    }

    pub fn word(&self) -> &BraidWord {
        self.diagram.word()
    }

    pub fn resolution(&self, v: CubeVertex) -> &Resolution {
        &self.resolutions[v.index() as usize]
    }

    pub fn resolutions(&self) -> &[Resolution] {
        &self.resolutions
    }

    /// Populated bidegrees, ascending.
    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.groups.keys().copied()
    }

    /// Ordered basis of the chain group at `b` (empty if unpopulated).
    pub fn group(&self, b: Bidegree) -> &[EnhancedState] {
        self.groups.get(&b).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, b: Bidegree) -> usize {
        self.group(b).len()
    }

    pub fn total_generators(&self) -> usize {
        self.groups.values().map(Vec::len).sum()
    }

    pub fn bidegree_of(&self, s: &EnhancedState) -> Bidegree {
        gradings(s, &self.diagram)
    }

    /// Position of `s` in its bidegree group.
    pub fn index_of(&self, s: &EnhancedState) -> Option<(Bidegree, usize)> {
        let res = self.resolutions.get(s.vertex().index() as usize)?;
        if res.vertex() != s.vertex() || res.circle_count() != s.circle_count() {
            return None;
        }
        let idx = self.slot[s.vertex().index() as usize][s.raw_labels() as usize] as usize;
        Some((self.bidegree_of(s), idx))
    }

    /// Index of a labelling within its group, without validation.
    pub(crate) fn slot(&self, vertex: CubeVertex, labels: u64) -> usize {
        self.slot[vertex.index() as usize][labels as usize] as usize
    }

    /// `d^{b}: C^b → C^{b+(1,0)}`; zero matrices for unpopulated degrees.
    pub fn differential(&self, b: Bidegree) -> SparseMatrix {
        self.differentials
            .get(&b)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(b.shift(1, 0)), self.dim(b)))
    }

    pub fn differential_ref(&self, b: Bidegree) -> Option<&SparseMatrix> {
        self.differentials.get(&b)
    }

    /// Coordinate vector of a single generator.
    pub fn basis_vector(&self, s: &EnhancedState) -> Option<(Bidegree, BitVector)> {
        let (b, idx) = self.index_of(s)?;
        Some((b, BitVector::unit(self.dim(b), idx)))
    }

    /// Applies `d` to a chain at `b`.
    pub fn apply_differential(&self, b: Bidegree, v: &BitVector) -> BitVector {
        use crate::f2::LinearMap;
        self.differential(b).apply(v)
    }
}
