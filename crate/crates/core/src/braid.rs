//! Braid words and the marked diagram of their closure.
//!
//! Conventions used throughout the crate:
//!
//! * `σ_k` (letter `k > 0`) is the positive Artin generator: the strand at
//!   position `k` crosses over the strand at position `k + 1`. Letter `-k`
//!   is its inverse.
//! * Letters are read bottom to top.
//! * The closure joins the top of position `p` to the bottom of position `p`
//!   by a closure arc; basepoint `p_{p+1}` sits on that arc and never moves.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A word in the Artin generators of `B_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n_strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n_strands: usize, letters: Vec<i32>) -> Result<Self> {
        if n_strands < 1 {
            return Err(Error::NoStrands);
        }
        for &letter in &letters {
            let k = letter.unsigned_abs() as usize;
            if k == 0 || k >= n_strands {
                return Err(Error::LetterOutOfRange { letter, n_strands });
            }
        }
        Ok(Self { n_strands, letters })
    }

    /// The identity braid on `n_strands` strands.
    pub fn trivial(n_strands: usize) -> Result<Self> {
        Self::new(n_strands, Vec::new())
    }

    pub fn n_strands(&self) -> usize {
        self.n_strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The permutation `τ_{k₁} ∘ τ_{k₂} ∘ ⋯` of the transpositions `(k, k+1)`
    /// named by the letters; signs are ignored.
    pub fn closure_permutation(&self) -> Permutation {
        let mut image: Vec<usize> = (0..self.n_strands).collect();
        // Right-most letter acts first: walk the word backwards, relabelling
        // positions as each transposition is applied.
        for p in image.iter_mut() {
            for &letter in self.letters.iter().rev() {
                let k = letter.unsigned_abs() as usize;
                if *p == k - 1 {
                    *p = k;
                } else if *p == k {
                    *p = k - 1;
                }
            }
        }
        Permutation(image)
    }

    pub fn component_count(&self) -> usize {
        self.closure_permutation().cycle_count()
    }

    pub fn writhe(&self) -> Writhe {
        let positive = self.letters.iter().filter(|&&k| k > 0).count();
        let negative = self.letters.len() - positive;
        Writhe {
            writhe: positive as i64 - negative as i64,
            positive,
            negative,
        }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.writhe().writhe
    }

    /// Every letter negated; the closure is the mirror image of this closure.
    pub fn mirror(&self) -> Self {
        Self {
            n_strands: self.n_strands,
            letters: self.letters.iter().map(|&k| -k).collect(),
        }
    }

    /// The group inverse: reversed order, negated letters.
    pub fn inverse(&self) -> Self {
        Self {
            n_strands: self.n_strands,
            letters: self.letters.iter().rev().map(|&k| -k).collect(),
        }
    }

    /// Concatenation `self · other`.
    ///
    /// # Panics
    ///
    /// Panics if the strand counts differ.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.n_strands, other.n_strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self {
            n_strands: self.n_strands,
            letters,
        }
    }

    /// `τ · self · τ⁻¹`.
    pub fn conjugate_by(&self, tau: &Self) -> Self {
        tau.then(self).then(&tau.inverse())
    }

    /// Markov stabilization: append `σ_n^{±1}` as a new strand is added.
    pub fn stabilize(&self, positive: bool) -> Self {
        let n = self.n_strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        Self {
            n_strands: self.n_strands + 1,
            letters,
        }
    }

    /// Cancels adjacent `k, -k` pairs until none remain.
    pub fn free_reduction(&self) -> Self {
        let mut stack: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &k in &self.letters {
            if stack.last() == Some(&-k) {
                stack.pop();
            } else {
                stack.push(k);
            }
        }
        Self {
            n_strands: self.n_strands,
            letters: stack,
        }
    }

    pub fn closure_diagram(&self) -> ClosureDiagram {
        ClosureDiagram::new(self)
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses `<n> ":" { <signed-int> }`, e.g. `"3: 1 -2 1"` or `"4:"`.
    fn from_str(text: &str) -> Result<Self> {
        let (head, tail) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in {text:?}")))?;
        let head = head.trim();
        let n_strands: usize = head
            .parse()
            .map_err(|_| Error::Parse(format!("bad strand count {head:?}")))?;
        if n_strands < 1 {
            return Err(Error::NoStrands);
        }
        let letters = tail
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad letter {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.contains(&0) {
            return Err(Error::Parse("letter 0 is not a generator".into()));
        }
        Self::new(n_strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n_strands)?;
        for k in &self.letters {
            write!(f, " {k}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Writhe {
    pub writhe: i64,
    pub positive: usize,
    pub negative: usize,
}

/// A permutation of `{0, …, n-1}`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// 1-based image of 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] + 1
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut cycles = 0;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.0[p];
            }
        }
        cycles
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

pub type ArcId = usize;

/// One crossing of the closed braid diagram with its four incident arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// 1-based generator index `k` of `σ_k^{±1}`.
    pub generator: usize,
    pub sign: Sign,
    /// Arcs entering from below at positions `k-1` and `k` (0-based).
    pub below: [ArcId; 2],
    /// Arcs leaving upwards at positions `k-1` and `k`.
    pub above: [ArcId; 2],
}

/// The diagram `D(σ̂)` with one basepoint on each closure arc.
///
/// Arcs are the segments between crossings and the top edge of the braid
/// box. They are numbered by a sweep over positions, left to right, and
/// bottom to top within a position: at position `p` arc `0` is the closure
/// arc (from the top edge, around the closure, up to the first crossing
/// touching `p`) and arc `s + 1` leaves the `s`-th such crossing upwards.
/// A position with no crossings carries a single arc, a full circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureDiagram {
    word: BraidWord,
    n_strands: usize,
    crossings: Vec<Crossing>,
    arc_count: usize,
    closure_arcs: Vec<ArcId>,
    top_arcs: Vec<ArcId>,
    positive: usize,
    negative: usize,
}

impl ClosureDiagram {
    fn new(word: &BraidWord) -> Self {
        let n = word.n_strands;
        // Crossings touching each position, in word order.
        let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (idx, &letter) in word.letters.iter().enumerate() {
            let k = letter.unsigned_abs() as usize;
            touching[k - 1].push(idx);
            touching[k].push(idx);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for list in &touching {
            offsets.push(offsets.last().unwrap() + list.len() + 1);
        }
        let arc_count = offsets[n];
        let arc = |p: usize, s: usize| offsets[p] + s;

        let mut crossings = Vec::with_capacity(word.letters.len());
        for (idx, &letter) in word.letters.iter().enumerate() {
            let k = letter.unsigned_abs() as usize;
            let level = |p: usize| touching[p].iter().position(|&c| c == idx).unwrap();
            let (l, r) = (level(k - 1), level(k));
            crossings.push(Crossing {
                generator: k,
                sign: if letter > 0 { Sign::Positive } else { Sign::Negative },
                below: [arc(k - 1, l), arc(k, r)],
                above: [arc(k - 1, l + 1), arc(k, r + 1)],
            });
        }
        let w = word.writhe();
        Self {
            word: word.clone(),
            n_strands: n,
            crossings,
            arc_count,
            closure_arcs: (0..n).map(|p| arc(p, 0)).collect(),
            top_arcs: (0..n).map(|p| arc(p, touching[p].len())).collect(),
            positive: w.positive,
            negative: w.negative,
        }
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn n_strands(&self) -> usize {
        self.n_strands
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// The closure arc carrying basepoint `p_{i+1}`, for 0-based `i`.
    pub fn basepoint_arc(&self, i: usize) -> ArcId {
        self.closure_arcs[i]
    }

    pub fn basepoint_arcs(&self) -> &[ArcId] {
        &self.closure_arcs
    }

    /// Pairs of arcs that meet at the top edge of the braid box.
    pub fn top_joins(&self) -> impl Iterator<Item = (ArcId, ArcId)> + '_ {
        self.top_arcs.iter().copied().zip(self.closure_arcs.iter().copied())
    }

    /// `n₊`
    pub fn positive_crossings(&self) -> usize {
        self.positive
    }

    /// `n₋`
    pub fn negative_crossings(&self) -> usize {
        self.negative
    }

    pub fn writhe(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}
