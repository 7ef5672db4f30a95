//! Singularity conditions stratifying the zero set of Det: critical points
//! of the multilinear form, distinguished sections, the Hessian (cusp)
//! determinant, per-format node tests, and separability patterns.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::GaussianRational;
use crate::tensor::{PartyVectorTuple, Tensor, TensorFormat};

/// A set partition of the parties (0-based internally, displayed 1-based).
/// Blocks are sorted by smallest element, elements sorted within blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        Partition { blocks }
    }

    /// Everything in one block.
    pub fn trivial(n: usize) -> Self {
        Partition {
            blocks: vec![(0..n).collect()],
        }
    }

    /// Every party in its own block.
    pub fn discrete(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|p| vec![p]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn n_parties(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn has_singleton(&self) -> bool {
        self.blocks.iter().any(|b| b.len() == 1)
    }

    pub fn block_of(&self, party: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&party))
    }

    /// Every block of self fits inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            coarser
                .blocks
                .iter()
                .any(|c| b.iter().all(|p| c.contains(p)))
        })
    }
}

/// 1-based, e.g. "1|23" for {{1},{2,3}}.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|p| (p + 1).to_string()).collect::<String>())
            .collect();
        write!(f, "{}", rendered.join("|"))
    }
}

impl Partition {
    /// Inverse of Display: "1|23" with 1-based single-digit parties.
    pub fn parse(text: &str, n_parties: usize) -> Result<Partition> {
        let mut seen = vec![false; n_parties];
        let mut blocks = Vec::new();
        for chunk in text.split('|') {
            if chunk.is_empty() {
                return Err(Error::InvalidIndexSet(format!(
                    "empty block in partition {text:?}"
                )));
            }
            let mut block = Vec::new();
            for ch in chunk.chars() {
                let p = ch
                    .to_digit(10)
                    .map(|d| d as usize)
                    .filter(|&d| d >= 1 && d <= n_parties)
                    .ok_or_else(|| {
                        Error::InvalidIndexSet(format!(
                            "bad party {ch:?} in partition {text:?}"
                        ))
                    })?
                    - 1;
                if seen[p] {
                    return Err(Error::InvalidIndexSet(format!(
                        "party {} repeated in partition {text:?}",
                        p + 1
                    )));
                }
                seen[p] = true;
                block.push(p);
            }
            blocks.push(block);
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidIndexSet(format!(
                "partition {text:?} does not cover all {n_parties} parties"
            )));
        }
        Ok(Partition::new(blocks))
    }
}

/// The distinguished point whose j-th vector is e_0 for j in the label set
/// and e_{k_j} (the last coordinate) otherwise. The empty label gives the
/// all-last-coordinate point.
pub fn xo_point(format: &TensorFormat, label: &[usize]) -> Result<PartyVectorTuple> {
    let n = format.n_parties();
    for &j in label {
        if j >= n {
            return Err(Error::InvalidIndexSet(format!("party {j} out of range")));
        }
    }
    Ok(PartyVectorTuple::new(
        format
            .dims()
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let hot = if label.contains(&j) { 0 } else { d - 1 };
                let mut v = vec![GaussianRational::zero(); d];
                v[hot] = GaussianRational::one();
                v
            })
            .collect(),
    ))
}

/// The basis index of `xo_point`.
fn xo_index(format: &TensorFormat, label: &[usize]) -> Vec<usize> {
    format
        .dims()
        .iter()
        .enumerate()
        .map(|(j, &d)| if label.contains(&j) { 0 } else { d - 1 })
        .collect()
}

/// True iff F(A,x) = 0 and every first partial vanishes, exactly.
/// Zero party vectors are rejected (the trivial solution is excluded).
pub fn is_critical_point(a: &Tensor, x: &PartyVectorTuple) -> Result<bool> {
    x.check_format(a.format())?;
    if x.has_zero_vector() {
        return Err(Error::ZeroVector);
    }
    Ok(a.multilinear_eval(x)?.is_zero() && a.gradient(x)?.all_zero())
}

/// True iff every coefficient whose multi-index differs from the index of
/// xo_point(label) in at most one position vanishes. This is exactly the
/// linear condition making that point a critical point of A.
pub fn xo_section_member(a: &Tensor, label: &[usize]) -> Result<bool> {
    for &j in label {
        if j >= a.format().n_parties() {
            return Err(Error::InvalidIndexSet(format!("party {j} out of range")));
        }
    }
    let base = xo_index(a.format(), label);
    for idx in a.format().indices() {
        let differs = idx.iter().zip(&base).filter(|(x, y)| x != y).count();
        if differs <= 1 && !a.get(&idx).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matrix of second partials of F(A, .) at a critical point x, indexed by
/// (party j, coordinate i_j) with 1 <= i_j <= k_j in party order. Diagonal
/// blocks (j = j') vanish identically by multilinearity. Rejects x that is
/// not critical.
pub fn hessian_matrix(a: &Tensor, x: &PartyVectorTuple) -> Result<Matrix> {
    if !is_critical_point(a, x)? {
        return Err(Error::NotCritical);
    }
    let dims = a.format().dims();
    let n = dims.len();
    // flattened row index for (party j, coordinate i), i in 1..d_j
    let mut offsets = vec![0usize; n];
    let mut size = 0usize;
    for j in 0..n {
        offsets[j] = size;
        size += dims[j] - 1;
    }
    let mut h = Matrix::zeros(size, size);
    for j in 0..n {
        for jp in (j + 1)..n {
            for i in 1..dims[j] {
                for ip in 1..dims[jp] {
                    // contract A with x over every party except j, jp
                    let mut acc = GaussianRational::zero();
                    for idx in a.format().indices() {
                        if idx[j] != i || idx[jp] != ip {
                            continue;
                        }
                        let coeff = a.get(&idx);
                        if coeff.is_zero() {
                            continue;
                        }
                        let mut term = coeff.clone();
                        for (q, &iq) in idx.iter().enumerate() {
                            if q != j && q != jp {
                                term = &term * &x.vectors()[q][iq];
                            }
                        }
                        acc = &acc + &term;
                    }
                    let r = offsets[j] + i - 1;
                    let c = offsets[jp] + ip - 1;
                    h.set(r, c, acc.clone());
                    h.set(c, r, acc);
                }
            }
        }
    }
    Ok(h)
}

/// det of `hessian_matrix`; zero signals a cusp-type (non-quadratic)
/// critical point.
pub fn hessian_det(a: &Tensor, x: &PartyVectorTuple) -> Result<GaussianRational> {
    hessian_matrix(a, x)?.determinant()
}

/// Three-qubit node test at party j: the 2x4 flattening has rank <= 1,
/// i.e. party j splits off as a tensor factor.
pub fn node_membership_3qubit(a: &Tensor, j: usize) -> Result<bool> {
    if a.format().dims() != [2, 2, 2] {
        return Err(Error::FormatMismatch(format!(
            "expected format 2x2x2, got {}",
            a.format()
        )));
    }
    if j >= 3 {
        return Err(Error::InvalidIndexSet(format!("party {j} out of range")));
    }
    Ok(a.flatten(&[j])?.rank() <= 1)
}

/// 3x2x2 singular-stratum test: the 3x4 qutrit flattening has rank <= 2,
/// equivalently all four of its 3x3 minors vanish.
pub fn node1_membership_3x2x2(a: &Tensor) -> Result<bool> {
    if a.format().dims() != [3, 2, 2] {
        return Err(Error::FormatMismatch(format!(
            "expected format 3x2x2, got {}",
            a.format()
        )));
    }
    Ok(a.flatten(&[0])?.rank() <= 2)
}

/// The finest partition of the parties across which A factors as a tensor
/// product: a proper cut splits iff its flattening has rank 1, and parties
/// end up in the same block iff no splitting cut separates them.
pub fn separability_pattern(a: &Tensor) -> Result<Partition> {
    if a.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let n = a.format().n_parties();
    if n == 1 {
        return Ok(Partition::trivial(1));
    }
    // Collect splitting cuts as bitmasks containing party 0 (each cut and
    // its complement split identically).
    let mut splits: Vec<u32> = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let cut = mask << 1 | 1; // always contains party 0
        if cut == (1 << n) - 1 {
            continue;
        }
        let parties: Vec<usize> = (0..n).filter(|&p| cut >> p & 1 == 1).collect();
        if a.flatten(&parties)?.rank() == 1 {
            splits.push(cut);
        }
    }
    // Same block <=> same side of every splitting cut.
    let signature = |p: usize| -> Vec<bool> { splits.iter().map(|&s| s >> p & 1 == 1).collect() };
    let mut blocks: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    for p in 0..n {
        let sig = signature(p);
        match blocks.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, b)) => b.push(p),
            None => blocks.push((sig, vec![p])),
        }
    }
    Ok(Partition::new(blocks.into_iter().map(|(_, b)| b).collect()))
}
