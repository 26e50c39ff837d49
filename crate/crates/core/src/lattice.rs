//! Integral intersection lattices and exact bilinear-form arithmetic.
//!
//! An [`IntersectionLattice`] is a rank-n free abelian group with a symmetric
//! integer Gram matrix; a [`CohomClass`] is a rational coefficient vector over
//! its basis. All pairings, squares and signatures are computed exactly over
//! the rationals — there is no floating point anywhere in this crate.

// congruence transforms update rows and columns in lockstep; indexed loops
// are the readable form here
#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat;
use crate::rational::{serialize_bigint, BigIntVisitor, Rational};

/// Stable identity of a lattice, derived from its content (rank, labels,
/// Gram entries). Used to detect classes applied to the wrong lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeId(u64);

impl LatticeId {
    fn from_content(rank: usize, labels: &[String], gram: &[Vec<BigInt>]) -> Self {
        // FNV-1a over a canonical byte rendering; stable across runs.
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        eat(&(rank as u64).to_le_bytes());
        for l in labels {
            eat(l.as_bytes());
            eat(&[0xff]);
        }
        for row in gram {
            for v in row {
                eat(v.to_string().as_bytes());
                eat(&[0xfe]);
            }
        }
        LatticeId(h)
    }
}

/// Rank-n free abelian group with an integral symmetric pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    rank: usize,
    labels: Vec<String>,
    gram: Vec<Vec<BigInt>>,
    id: LatticeId,
}

impl IntersectionLattice {
    /// Builds a lattice, checking the Gram matrix is square, symmetric, and
    /// the labels are distinct and as many as the rank.
    pub fn new(labels: Vec<String>, gram: Vec<Vec<BigInt>>) -> Result<Self> {
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::InvariantViolation {
                invariant: "positive-rank",
                detail: "lattice must have rank >= 1".into(),
            });
        }
        if gram.len() != rank || gram.iter().any(|row| row.len() != rank) {
            return Err(Error::InvariantViolation {
                invariant: "gram-shape",
                detail: format!("gram must be {rank}x{rank}"),
            });
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvariantViolation {
                        invariant: "symmetry",
                        detail: format!("gram[{i}][{j}] != gram[{j}][{i}]"),
                    });
                }
            }
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if labels[i] == labels[j] {
                    return Err(Error::InvariantViolation {
                        invariant: "distinct-labels",
                        detail: format!("label `{}` repeats", labels[i]),
                    });
                }
            }
        }
        let id = LatticeId::from_content(rank, &labels, &gram);
        Ok(IntersectionLattice { rank, labels, gram, id })
    }

    pub fn from_i64(labels: &[&str], gram: &[&[i64]]) -> Result<Self> {
        IntersectionLattice::new(
            labels.iter().map(|s| s.to_string()).collect(),
            gram.iter()
                .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn id(&self) -> LatticeId {
        self.id
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Same Gram matrix under new labels.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        IntersectionLattice::new(labels, self.gram.clone())
    }

    fn check_member(&self, a: &CohomClass) -> Result<()> {
        if a.lattice_id != self.id || a.coeffs.len() != self.rank {
            return Err(Error::MismatchedLattice);
        }
        Ok(())
    }

    /// Evaluates the pairing a^T . gram . b exactly.
    pub fn pair(&self, a: &CohomClass, b: &CohomClass) -> Result<Rational> {
        self.check_member(a)?;
        self.check_member(b)?;
        let mut acc = BigRational::zero();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut row = BigRational::zero();
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                row += BigRational::from_integer(self.gram[i][j].clone()) * bj.as_big();
            }
            acc += ai.as_big() * row;
        }
        Ok(acc.into())
    }

    /// Self-pairing a . a.
    pub fn square(&self, a: &CohomClass) -> Result<Rational> {
        self.pair(a, a)
    }

    /// Inertia (b+, b-, b0) of the Gram matrix by exact symmetric Gaussian
    /// elimination over the rationals. Pivot rule: first nonzero diagonal
    /// entry of the remaining block; if the remaining diagonal is zero but
    /// some off-diagonal entry q_ij is not, apply e_i -> e_i + e_j first.
    pub fn signature(&self) -> Signature {
        let n = self.rank;
        let mut w: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| BigRational::from_integer(v.clone()))
                    .collect()
            })
            .collect();
        let mut b_plus = 0usize;
        let mut b_minus = 0usize;
        let mut b_zero = 0usize;
        let mut k = 0usize;
        while k < n {
            if w[k][k].is_zero() {
                if let Some(i) = (k..n).find(|&i| !w[i][i].is_zero()) {
                    sym_swap(&mut w, k, i);
                } else {
                    // remaining diagonal is zero; look for an off-diagonal entry
                    let mut found = None;
                    'scan: for i in k..n {
                        for j in i + 1..n {
                            if !w[i][j].is_zero() {
                                found = Some((i, j));
                                break 'scan;
                            }
                        }
                    }
                    match found {
                        Some((i, j)) => {
                            // e_i -> e_i + e_j turns the (i,i) entry into 2 q_ij
                            sym_add(&mut w, i, j);
                            sym_swap(&mut w, k, i);
                        }
                        None => {
                            b_zero += n - k;
                            break;
                        }
                    }
                }
            }
            let d = w[k][k].clone();
            if d.is_positive() {
                b_plus += 1;
            } else {
                b_minus += 1;
            }
            for r in k + 1..n {
                if w[r][k].is_zero() {
                    continue;
                }
                let f = &w[r][k] / &d;
                for c in k..n {
                    let s = &w[k][c] * &f;
                    w[r][c] -= s;
                }
                for c in k..n {
                    w[c][r] = w[r][c].clone();
                }
            }
            k += 1;
        }
        Signature {
            b_plus,
            b_minus,
            b_zero,
        }
    }

    /// Congruent lattice gram' = U^T . gram . U for a unimodular integer U.
    /// Labels are kept; rename with [`IntersectionLattice::with_labels`].
    pub fn change_basis(&self, u: &[Vec<BigInt>]) -> Result<IntersectionLattice> {
        let n = self.rank;
        if u.len() != n || u.iter().any(|row| row.len() != n) {
            return Err(Error::InvariantViolation {
                invariant: "basis-change-shape",
                detail: format!("U must be {n}x{n}"),
            });
        }
        let det = intmat::int_det(u);
        if det.abs() != BigInt::from(1) {
            return Err(Error::NotUnimodular {
                det: det.to_string(),
            });
        }
        // gram' = U^T G U
        let mut gu = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    if !self.gram[i][k].is_zero() && !u[k][j].is_zero() {
                        acc += &self.gram[i][k] * &u[k][j];
                    }
                }
                gu[i][j] = acc;
            }
        }
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    if !u[k][i].is_zero() && !gu[k][j].is_zero() {
                        acc += &u[k][i] * &gu[k][j];
                    }
                }
                out[i][j] = acc;
            }
        }
        IntersectionLattice::new(self.labels.clone(), out)
    }

    /// Renders a class as "2*f + G - 1/2*x1" over this lattice's labels.
    pub fn render_class(&self, a: &CohomClass) -> String {
        if a.coeffs.iter().all(|c| c.is_zero()) {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if mag == Rational::one() {
                out.push_str(&self.labels[i]);
            } else {
                out.push_str(&format!("{}*{}", mag, self.labels[i]));
            }
        }
        out
    }
}

fn sym_swap(w: &mut [Vec<BigRational>], a: usize, b: usize) {
    if a == b {
        return;
    }
    w.swap(a, b);
    for row in w.iter_mut() {
        row.swap(a, b);
    }
}

/// Basis move e_a -> e_a + e_b applied symmetrically.
fn sym_add(w: &mut [Vec<BigRational>], a: usize, b: usize) {
    let n = w.len();
    for c in 0..n {
        let s = w[b][c].clone();
        w[a][c] += s;
    }
    for r in 0..n {
        let s = w[r][b].clone();
        w[r][a] += s;
    }
}

/// Eigenvalue-sign counts of an intersection form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub b_plus: usize,
    pub b_minus: usize,
    pub b_zero: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.b_plus, self.b_minus, self.b_zero)
    }
}

/// Rational cohomology class over a fixed lattice basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomClass {
    lattice_id: LatticeId,
    coeffs: Vec<Rational>,
}

impl CohomClass {
    pub fn new(lattice: &IntersectionLattice, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != lattice.rank() {
            return Err(Error::MismatchedLattice);
        }
        Ok(CohomClass {
            lattice_id: lattice.id(),
            coeffs,
        })
    }

    pub fn zero(lattice: &IntersectionLattice) -> Self {
        CohomClass {
            lattice_id: lattice.id(),
            coeffs: vec![Rational::zero(); lattice.rank()],
        }
    }

    pub fn basis(lattice: &IntersectionLattice, index: usize) -> Result<Self> {
        if index >= lattice.rank() {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for rank {}",
                lattice.rank()
            )));
        }
        let mut coeffs = vec![Rational::zero(); lattice.rank()];
        coeffs[index] = Rational::one();
        Ok(CohomClass {
            lattice_id: lattice.id(),
            coeffs,
        })
    }

    pub fn from_i64(lattice: &IntersectionLattice, coeffs: &[i64]) -> Result<Self> {
        CohomClass::new(
            lattice,
            coeffs.iter().map(|&c| Rational::from_int(c)).collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn lattice_id(&self) -> LatticeId {
        self.lattice_id
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &CohomClass) -> Result<CohomClass> {
        if self.lattice_id != other.lattice_id {
            return Err(Error::MismatchedLattice);
        }
        Ok(CohomClass {
            lattice_id: self.lattice_id,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CohomClass) -> Result<CohomClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CohomClass {
        CohomClass {
            lattice_id: self.lattice_id,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> CohomClass {
        CohomClass {
            lattice_id: self.lattice_id,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Rebinds raw coefficients to a lattice (used when loading JSON).
    pub fn from_raw(lattice: &IntersectionLattice, raw: Vec<Rational>) -> Result<Self> {
        CohomClass::new(lattice, raw)
    }
}

/// JSON view of a lattice: {"rank", "labels", "gram"}. Deserializing through
/// this raw form keeps invariant failures typed instead of stringified.
#[derive(Serialize, Deserialize)]
pub(crate) struct LatticeJson {
    rank: usize,
    labels: Vec<String>,
    gram: Vec<Vec<GramEntry>>,
}

impl LatticeJson {
    pub(crate) fn build(self) -> Result<IntersectionLattice> {
        if self.rank != self.labels.len() {
            return Err(Error::SchemaError(format!(
                "declared rank {} does not match {} labels",
                self.rank,
                self.labels.len()
            )));
        }
        IntersectionLattice::new(
            self.labels,
            self.gram
                .into_iter()
                .map(|row| row.into_iter().map(|e| e.0).collect())
                .collect(),
        )
    }
}

pub(crate) struct GramEntry(BigInt);

impl Serialize for GramEntry {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint(&self.0, ser)
    }
}

impl<'de> Deserialize<'de> for GramEntry {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        de.deserialize_any(BigIntVisitor).map(GramEntry)
    }
}

impl Serialize for IntersectionLattice {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeJson {
            rank: self.rank,
            labels: self.labels.clone(),
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(|v| GramEntry(v.clone())).collect())
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntersectionLattice {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        LatticeJson::deserialize(de)?
            .build()
            .map_err(de::Error::custom)
    }
}

/// The rank-2 hyperbolic Gram block `[[0,1],[1,0]]`.
pub fn hyperbolic_block() -> Vec<Vec<BigInt>> {
    vec![
        vec![BigInt::zero(), BigInt::from(1)],
        vec![BigInt::from(1), BigInt::zero()],
    ]
}

/// Block-diagonal assembly of Gram blocks.
pub fn block_diag(blocks: &[Vec<Vec<BigInt>>]) -> Vec<Vec<BigInt>> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    let mut off = 0usize;
    for b in blocks {
        let k = b.len();
        for i in 0..k {
            for j in 0..k {
                out[off + i][off + j] = b[i][j].clone();
            }
        }
        off += k;
    }
    out
}

/// Gram matrix of the positive-definite E8 root lattice (diagonal 2, with
/// -1 at the Dynkin-diagram adjacencies 1-3, 3-4, 4-5, 5-6, 6-7, 7-8, 2-4).
pub fn e8_block() -> Vec<Vec<BigInt>> {
    let mut g = vec![vec![BigInt::zero(); 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = BigInt::from(2);
    }
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    for (a, b) in edges {
        g[a][b] = BigInt::from(-1);
        g[b][a] = BigInt::from(-1);
    }
    g
}

/// -E8: the negative-definite form of the E8 lattice.
pub fn minus_e8_block() -> Vec<Vec<BigInt>> {
    e8_block()
        .into_iter()
        .map(|row| row.into_iter().map(|v| -v).collect())
        .collect()
}
