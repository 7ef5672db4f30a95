//! SLOCC orbit classification decision trees per format, with class
//! metadata (stable name, projective orbit dimension, representative).
//!
//! Supported formats: any bipartite d1 x d2 (onion classes S_j by local
//! rank), 2x2x2, 3x2x2 in any party order (canonicalized, permutation
//! recorded), and 2x2x2x2 (coarse: GEN4 / DEG4 / separability patterns).

use std::fmt;

use crate::error::{Error, Result};
use crate::hyperdet::{det_2x2x2, det_2x2x2x2, det_3x2x2, generic_four_qubit};
use crate::linalg::local_ranks;
use crate::scalar::GaussianRational;
use crate::singularity::{separability_pattern, Partition};
use crate::tensor::{Tensor, TensorFormat};

/// Stable class identifier within a format.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassName {
    /// Genuinely tripartite, Det != 0 (2x2x2 and the inner 3x2x2 classes).
    Ghz,
    /// Genuinely tripartite, Det = 0.
    W,
    /// Biseparable: party j (1-based) splits off.
    B(usize),
    /// Completely separable (three-party formats).
    Sep,
    /// 3x2x2 full qutrit rank, Det != 0.
    Gen322,
    /// 3x2x2 full qutrit rank, Det = 0.
    Deg322,
    /// 2x2x2x2 genuinely four-partite, Det != 0.
    Gen4,
    /// 2x2x2x2 genuinely four-partite, Det = 0.
    Deg4,
    /// 2x2x2x2 with a nontrivial separability pattern.
    SepPattern(Partition),
    /// Bipartite onion class of local rank j.
    S(usize),
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassName::Ghz => write!(f, "GHZ"),
            ClassName::W => write!(f, "W"),
            ClassName::B(j) => write!(f, "B{j}"),
            ClassName::Sep => write!(f, "SEP"),
            ClassName::Gen322 => write!(f, "GEN322"),
            ClassName::Deg322 => write!(f, "DEG322"),
            ClassName::Gen4 => write!(f, "GEN4"),
            ClassName::Deg4 => write!(f, "DEG4"),
            ClassName::SepPattern(p) => {
                if p.is_discrete() {
                    write!(f, "SEP")
                } else {
                    write!(f, "SEP[{p}]")
                }
            }
            ClassName::S(j) => write!(f, "S{j}"),
        }
    }
}

/// Parses a class name in the context of a format (needed because "SEP"
/// means a partition class in 2x2x2x2 but a plain class in 3-party formats).
pub fn parse_class_name(text: &str, format: &TensorFormat) -> Result<ClassName> {
    let n = format.n_parties();
    let four_qubit = format.dims() == [2, 2, 2, 2];
    let unknown = || Error::UnknownClass(text.to_string());
    match text {
        "GHZ" if n == 3 => return Ok(ClassName::Ghz),
        "W" if n == 3 => return Ok(ClassName::W),
        "SEP" if n == 3 => return Ok(ClassName::Sep),
        "SEP" if four_qubit => return Ok(ClassName::SepPattern(Partition::discrete(4))),
        "GEN322" => return Ok(ClassName::Gen322),
        "DEG322" => return Ok(ClassName::Deg322),
        "GEN4" if four_qubit => return Ok(ClassName::Gen4),
        "DEG4" if four_qubit => return Ok(ClassName::Deg4),
        _ => {}
    }
    if let Some(rest) = text.strip_prefix('B') {
        if n == 3 {
            if let Ok(j) = rest.parse::<usize>() {
                if (1..=3).contains(&j) {
                    return Ok(ClassName::B(j));
                }
            }
        }
        return Err(unknown());
    }
    if let Some(rest) = text.strip_prefix('S') {
        if n == 2 {
            if let Ok(j) = rest.parse::<usize>() {
                let max = format.dims().iter().min().copied().unwrap_or(0);
                if (1..=max).contains(&j) {
                    return Ok(ClassName::S(j));
                }
            }
            return Err(unknown());
        }
    }
    if four_qubit {
        if let Some(body) = text.strip_prefix("SEP[").and_then(|t| t.strip_suffix(']')) {
            let p = Partition::parse(body, 4)?;
            if p.is_trivial() {
                return Err(unknown());
            }
            return Ok(ClassName::SepPattern(p));
        }
    }
    Err(unknown())
}

/// A class with its metadata; the nodes of the degradation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntanglementClass {
    pub format: TensorFormat,
    pub name: ClassName,
    pub dimension: usize,
    pub representative: Tensor,
}

impl EntanglementClass {
    pub fn new(format: TensorFormat, name: ClassName) -> Result<Self> {
        let dimension = class_dimension(&format, &name)?;
        let representative = representative(&format, &name)?;
        Ok(EntanglementClass {
            format,
            name,
            dimension,
            representative,
        })
    }
}

impl fmt::Display for EntanglementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dimension)
    }
}

/// Projective orbit(-closure) dimension.
pub fn class_dimension(format: &TensorFormat, name: &ClassName) -> Result<usize> {
    let dims = format.dims();
    let unknown = || Error::UnknownClass(format!("{name} in format {format}"));
    match (dims, name) {
        ([2, 2, 2], ClassName::Ghz) => Ok(7),
        ([2, 2, 2], ClassName::W) => Ok(6),
        ([2, 2, 2], ClassName::B(j)) if (1..=3).contains(j) => Ok(4),
        ([2, 2, 2], ClassName::Sep) => Ok(3),
        ([3, 2, 2], ClassName::Gen322) => Ok(11),
        ([3, 2, 2], ClassName::Deg322) => Ok(10),
        ([3, 2, 2], ClassName::Ghz) => Ok(9),
        ([3, 2, 2], ClassName::W) => Ok(8),
        ([3, 2, 2], ClassName::B(1)) => Ok(5),
        ([3, 2, 2], ClassName::B(j)) if *j == 2 || *j == 3 => Ok(6),
        ([3, 2, 2], ClassName::Sep) => Ok(4),
        ([2, 2, 2, 2], ClassName::Gen4) => Ok(15),
        ([2, 2, 2, 2], ClassName::Deg4) => Ok(14),
        ([2, 2, 2, 2], ClassName::SepPattern(p)) if !p.is_trivial() && p.n_parties() == 4 => {
            // join of the full block state spaces
            Ok(p.blocks().iter().map(|b| (1usize << b.len()) - 1).sum())
        }
        ([d1, d2], ClassName::S(j)) if *j >= 1 && j <= d1.min(d2) => {
            // projective dimension of the rank <= j determinantal variety
            Ok(j * (d1 + d2 - j) - 1)
        }
        _ => Err(unknown()),
    }
}

/// The canonical representative state of a class.
pub fn representative(format: &TensorFormat, name: &ClassName) -> Result<Tensor> {
    let dims = format.dims();
    let unknown = || Error::UnknownClass(format!("{name} in format {format}"));
    let b = |dims: &[usize], idx: &[&[usize]]| Tensor::basis_state(dims, idx);
    match (dims, name) {
        ([2, 2, 2], ClassName::Ghz) => Ok(Tensor::ghz3()),
        ([2, 2, 2], ClassName::W) => Ok(Tensor::w3()),
        ([2, 2, 2], ClassName::B(1)) => Ok(b(dims, &[&[0, 0, 1], &[0, 1, 0]])),
        ([2, 2, 2], ClassName::B(2)) => Ok(b(dims, &[&[0, 0, 1], &[1, 0, 0]])),
        ([2, 2, 2], ClassName::B(3)) => Ok(b(dims, &[&[0, 1, 0], &[1, 0, 0]])),
        ([2, 2, 2], ClassName::Sep) => Ok(b(dims, &[&[0, 0, 0]])),
        ([3, 2, 2], ClassName::Gen322) => Ok(b(
            dims,
            &[&[0, 0, 0], &[1, 0, 1], &[1, 1, 0], &[2, 1, 1]],
        )),
        ([3, 2, 2], ClassName::Deg322) => {
            Ok(b(dims, &[&[0, 0, 0], &[1, 0, 1], &[2, 1, 1]]))
        }
        ([3, 2, 2], ClassName::Ghz) => Ok(b(dims, &[&[0, 0, 0], &[1, 1, 1]])),
        ([3, 2, 2], ClassName::W) => {
            Ok(b(dims, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]))
        }
        ([3, 2, 2], ClassName::B(1)) => Ok(b(dims, &[&[0, 0, 1], &[0, 1, 0]])),
        ([3, 2, 2], ClassName::B(2)) => Ok(b(dims, &[&[0, 0, 0], &[1, 0, 1]])),
        ([3, 2, 2], ClassName::B(3)) => Ok(b(dims, &[&[0, 0, 0], &[1, 1, 0]])),
        ([3, 2, 2], ClassName::Sep) => Ok(b(dims, &[&[0, 0, 0]])),
        ([2, 2, 2, 2], ClassName::Gen4) => {
            let i = GaussianRational::from_int;
            Ok(generic_four_qubit(&i(1), &i(2), &i(3), &i(5)))
        }
        ([2, 2, 2, 2], ClassName::Deg4) => Ok(Tensor::ghz_n(4)),
        ([2, 2, 2, 2], ClassName::SepPattern(p)) if !p.is_trivial() && p.n_parties() == 4 => {
            // per block: GHZ on the block's parties (or e_0 for singletons)
            let mut t = Tensor::zeros(format.clone());
            for idx in format.indices() {
                let ok = p.blocks().iter().all(|block| {
                    let vals: Vec<usize> = block.iter().map(|&q| idx[q]).collect();
                    vals.iter().all(|&v| v == vals[0])
                        && (block.len() > 1 || vals[0] == 0)
                });
                if ok {
                    t.set(&idx, GaussianRational::one());
                }
            }
            Ok(t)
        }
        ([d1, d2], ClassName::S(j)) if *j >= 1 && j <= d1.min(d2) => {
            let mut t = Tensor::zeros(format.clone());
            for i in 0..*j {
                t.set(&[i, i], GaussianRational::one());
            }
            Ok(t)
        }
        _ => Err(unknown()),
    }
}

/// Full classification report.
#[derive(Clone, Debug)]
pub struct Classification {
    pub class: EntanglementClass,
    pub local_ranks: Vec<usize>,
    pub pattern: Partition,
    /// Det of the (canonicalized) tensor, when the format has one.
    pub det: Option<GaussianRational>,
    pub det_degree: Option<usize>,
    /// Party permutation applied to reach the canonical format, if any:
    /// entry i is the original position of canonical party i.
    pub permutation: Option<Vec<usize>>,
}

fn reject_zero(a: &Tensor) -> Result<()> {
    if a.is_zero() {
        Err(Error::ZeroTensor)
    } else {
        Ok(())
    }
}

/// 2x2x2 decision tree: separability pattern for the B/S tail, Det for
/// GHZ vs W.
pub fn classify_2x2x2(a: &Tensor) -> Result<Classification> {
    if a.format().dims() != [2, 2, 2] {
        return Err(Error::FormatMismatch(format!(
            "expected format 2x2x2, got {}",
            a.format()
        )));
    }
    reject_zero(a)?;
    let ranks = local_ranks(a);
    let pattern = separability_pattern(a)?;
    let det = det_2x2x2(a)?;
    let name = if pattern.is_discrete() {
        ClassName::Sep
    } else if !pattern.is_trivial() {
        // exactly one singleton: that party splits off
        let j = (0..3)
            .find(|&p| pattern.blocks().iter().any(|b| b == &vec![p]))
            .expect("nontrivial non-discrete pattern on 3 parties has a singleton");
        ClassName::B(j + 1)
    } else if !det.is_zero() {
        ClassName::Ghz
    } else {
        ClassName::W
    };
    Ok(Classification {
        class: EntanglementClass::new(a.format().clone(), name)?,
        local_ranks: ranks,
        pattern,
        det: Some(det),
        det_degree: Some(4),
        permutation: None,
    })
}

/// Selects two independent qutrit slices of a rank-2 flattening and returns
/// the compressed 2x2x2 tensor. Any two choices of basis differ by an
/// invertible 2x2 factor, so the inner class is well-defined.
fn compress_qutrit(a: &Tensor) -> Tensor {
    let m = a.flatten(&[0]).expect("3x2x2 flattening");
    let rows: Vec<usize> = {
        let mut picked = Vec::new();
        for r in 0..3 {
            let mut trial = picked.clone();
            trial.push(r);
            if m.submatrix(&trial, &[0, 1, 2, 3]).rank() == trial.len() {
                picked = trial;
            }
            if picked.len() == 2 {
                break;
            }
        }
        picked
    };
    debug_assert_eq!(rows.len(), 2);
    let mut out = Tensor::zeros(TensorFormat::new(vec![2, 2, 2]).expect("valid"));
    for (i, &r) in rows.iter().enumerate() {
        for j in 0..2 {
            for k in 0..2 {
                out.set(&[i, j, k], a.get(&[r, j, k]).clone());
            }
        }
    }
    out
}

/// 3x2x2 decision tree: qutrit rank 3 -> GEN322/DEG322 by Det; qutrit rank
/// 2 with entangled qubits -> compress to 2x2x2 and reuse its tree; any
/// rank-1 party -> B/S by the separability pattern.
pub fn classify_3x2x2(a: &Tensor) -> Result<Classification> {
    if a.format().dims() != [3, 2, 2] {
        return Err(Error::FormatMismatch(format!(
            "expected format 3x2x2, got {}",
            a.format()
        )));
    }
    reject_zero(a)?;
    let ranks = local_ranks(a);
    let pattern = separability_pattern(a)?;
    let det = det_3x2x2(a)?;
    let name = if ranks[0] == 3 {
        if !det.is_zero() {
            ClassName::Gen322
        } else {
            ClassName::Deg322
        }
    } else if ranks == [2, 2, 2] {
        match classify_2x2x2(&compress_qutrit(a))?.class.name {
            ClassName::Ghz => ClassName::Ghz,
            ClassName::W => ClassName::W,
            other => unreachable!("ranks (2,2,2) compress to GHZ or W, got {other}"),
        }
    } else if pattern.is_discrete() {
        ClassName::Sep
    } else {
        let j = (0..3)
            .find(|&p| pattern.blocks().iter().any(|b| b == &vec![p]))
            .expect("biseparable 3-party pattern has a singleton");
        ClassName::B(j + 1)
    };
    Ok(Classification {
        class: EntanglementClass::new(a.format().clone(), name)?,
        local_ranks: ranks,
        pattern,
        det: Some(det),
        det_degree: Some(6),
        permutation: None,
    })
}

/// Coarse 2x2x2x2 tree: a nontrivial separability pattern wins; otherwise
/// Det != 0 -> GEN4, Det = 0 -> DEG4. No finer strata are claimed.
pub fn classify_2x2x2x2(a: &Tensor) -> Result<Classification> {
    if a.format().dims() != [2, 2, 2, 2] {
        return Err(Error::FormatMismatch(format!(
            "expected format 2x2x2x2, got {}",
            a.format()
        )));
    }
    reject_zero(a)?;
    let ranks = local_ranks(a);
    let pattern = separability_pattern(a)?;
    let det = det_2x2x2x2(a)?;
    let name = if !pattern.is_trivial() {
        ClassName::SepPattern(pattern.clone())
    } else if !det.is_zero() {
        ClassName::Gen4
    } else {
        ClassName::Deg4
    };
    Ok(Classification {
        class: EntanglementClass::new(a.format().clone(), name)?,
        local_ranks: ranks,
        pattern,
        det: Some(det),
        det_degree: Some(24),
        permutation: None,
    })
}

/// Bipartite onion classification by local rank.
pub fn classify_bipartite(a: &Tensor) -> Result<Classification> {
    if a.format().n_parties() != 2 {
        return Err(Error::FormatMismatch(format!(
            "expected a two-party format, got {}",
            a.format()
        )));
    }
    reject_zero(a)?;
    let ranks = local_ranks(a);
    let pattern = separability_pattern(a)?;
    let j = ranks[0];
    let det = if a.format().dims() == [2, 2] {
        Some(crate::hyperdet::det_2x2(a)?)
    } else {
        None
    };
    Ok(Classification {
        class: EntanglementClass::new(a.format().clone(), ClassName::S(j))?,
        local_ranks: ranks,
        pattern,
        det_degree: det.as_ref().map(|_| 2),
        det,
        permutation: None,
    })
}

/// Dispatcher: routes by format, canonicalizing party order for permuted
/// 3x2x2 inputs (the permutation is recorded in the report).
pub fn classify(a: &Tensor) -> Result<Classification> {
    let dims = a.format().dims();
    match a.format().n_parties() {
        2 => classify_bipartite(a),
        3 if dims == [2, 2, 2] => classify_2x2x2(a),
        3 => {
            let mut sorted = dims.to_vec();
            sorted.sort_unstable_by(|x, y| y.cmp(x));
            if sorted != [3, 2, 2] {
                return Err(Error::FormatMismatch(format!(
                    "classification not supported for format {}",
                    a.format()
                )));
            }
            if dims == [3, 2, 2] {
                classify_3x2x2(a)
            } else {
                let perm = a.format().canonical_permutation();
                let mut report = classify_3x2x2(&a.permute_parties(&perm))?;
                report.permutation = Some(perm);
                Ok(report)
            }
        }
        4 if dims == [2, 2, 2, 2] => classify_2x2x2x2(a),
        _ => Err(Error::FormatMismatch(format!(
            "classification not supported for format {}",
            a.format()
        ))),
    }
}

/// All classes of a supported format, outermost first.
pub fn all_classes(format: &TensorFormat) -> Result<Vec<ClassName>> {
    match format.dims() {
        [2, 2, 2] => Ok(vec![
            ClassName::Ghz,
            ClassName::W,
            ClassName::B(1),
            ClassName::B(2),
            ClassName::B(3),
            ClassName::Sep,
        ]),
        [3, 2, 2] => Ok(vec![
            ClassName::Gen322,
            ClassName::Deg322,
            ClassName::Ghz,
            ClassName::W,
            ClassName::B(1),
            ClassName::B(2),
            ClassName::B(3),
            ClassName::Sep,
        ]),
        [2, 2, 2, 2] => {
            let mut out = vec![ClassName::Gen4, ClassName::Deg4];
            for p in partitions_of(4) {
                if !p.is_trivial() {
                    out.push(ClassName::SepPattern(p));
                }
            }
            Ok(out)
        }
        [d1, d2] => Ok((1..=*d1.min(d2)).rev().map(ClassName::S).collect()),
        _ => Err(Error::FormatMismatch(format!(
            "no class list for format {format}"
        ))),
    }
}

/// All set partitions of {0..n-1}, coarsest-to-finest-ish enumeration order
/// (deterministic).
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(n: usize, next: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Partition>) {
        if next == n {
            out.push(Partition::new(blocks.clone()));
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].push(next);
            rec(n, next + 1, blocks, out);
            blocks[i].pop();
        }
        blocks.push(vec![next]);
        rec(n, next + 1, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(n, 0, &mut Vec::new(), &mut out);
    // sort by block count so coarser partitions come first
    out.sort_by_key(|p| p.blocks().len());
    out
}
