//! The state/tensor data model: formats, dense coefficient arrays,
//! flattenings, local (SLOCC) actions, the pairing F and the multilinear
//! form with its gradient.
//!
//! Party order is significant and preserved; entries are stored in row-major
//! lexicographic order of the multi-index.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::GaussianRational;

/// Format (d1,...,dn) with dj = kj + 1 >= 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorFormat {
    dims: Vec<usize>,
}

impl TensorFormat {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidFormat("no parties".to_string()));
        }
        if dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidFormat(format!(
                "every party dimension must be >= 2, got {dims:?}"
            )));
        }
        Ok(TensorFormat { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_size(&self) -> usize {
        self.dims.iter().product()
    }

    fn k_split(&self) -> (usize, usize) {
        // (max k_j, sum of the other k_j)
        let ks: Vec<usize> = self.dims.iter().map(|d| d - 1).collect();
        let max = *ks.iter().max().unwrap();
        let sum: usize = ks.iter().sum();
        (max, sum - max)
    }

    /// k1 = k2 + ... + kn (with k1 the largest).
    pub fn is_boundary(&self) -> bool {
        let (max, rest) = self.k_split();
        max == rest
    }

    /// k1 < k2 + ... + kn.
    pub fn is_interior(&self) -> bool {
        let (max, rest) = self.k_split();
        max < rest
    }

    /// The polygon inequality k1 <= k2 + ... + kn; Det exists iff it holds.
    pub fn hyperdet_exists(&self) -> bool {
        let (max, rest) = self.k_split();
        max <= rest
    }

    /// Permutation sorting the parties into descending dimension order.
    /// `perm[i]` is the original position of canonical party i.
    pub fn canonical_permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.dims.len()).collect();
        perm.sort_by_key(|&i| (std::cmp::Reverse(self.dims[i]), i));
        perm
    }

    pub fn is_canonical(&self) -> bool {
        self.dims.windows(2).all(|w| w[0] >= w[1])
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        strides
    }

    pub fn offset_of(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.dims.len());
        self.strides()
            .iter()
            .zip(index)
            .map(|(s, i)| s * i)
            .sum()
    }

    /// All multi-indices in lexicographic order.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for &d in &self.dims {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |i| {
                        let mut v = prefix.clone();
                        v.push(i);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for TensorFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("x")
        )
    }
}

impl fmt::Debug for TensorFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Dense coefficient tensor a_{i1..in}; the (unnormalized) pure state.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    format: TensorFormat,
    entries: Vec<GaussianRational>,
}

impl Tensor {
    pub fn new(format: TensorFormat, entries: Vec<GaussianRational>) -> Result<Self> {
        if entries.len() != format.total_size() {
            return Err(Error::ShapeMismatch(format!(
                "format {} needs {} entries, got {}",
                format,
                format.total_size(),
                entries.len()
            )));
        }
        Ok(Tensor { format, entries })
    }

    pub fn zeros(format: TensorFormat) -> Self {
        let n = format.total_size();
        Tensor {
            format,
            entries: vec![GaussianRational::zero(); n],
        }
    }

    /// Sum of the listed basis states with coefficient 1.
    pub fn basis_state(dims: &[usize], indices: &[&[usize]]) -> Self {
        let format = TensorFormat::new(dims.to_vec()).expect("valid dims");
        let mut t = Tensor::zeros(format);
        for idx in indices {
            t.set(idx, GaussianRational::one());
        }
        t
    }

    /// |000> + |111> on three qubits.
    pub fn ghz3() -> Self {
        Tensor::basis_state(&[2, 2, 2], &[&[0, 0, 0], &[1, 1, 1]])
    }

    /// |001> + |010> + |100> on three qubits.
    pub fn w3() -> Self {
        Tensor::basis_state(&[2, 2, 2], &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])
    }

    /// GHZ on n qubits.
    pub fn ghz_n(n: usize) -> Self {
        let dims = vec![2; n];
        let zeros = vec![0; n];
        let ones = vec![1; n];
        Tensor::basis_state(&dims, &[&zeros, &ones])
    }

    /// W on n qubits.
    pub fn w_n(n: usize) -> Self {
        let dims = vec![2; n];
        let format = TensorFormat::new(dims).unwrap();
        let mut t = Tensor::zeros(format);
        for j in 0..n {
            let mut idx = vec![0; n];
            idx[j] = 1;
            t.set(&idx, GaussianRational::one());
        }
        t
    }

    pub fn format(&self) -> &TensorFormat {
        &self.format
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn get(&self, index: &[usize]) -> &GaussianRational {
        &self.entries[self.format.offset_of(index)]
    }

    pub fn set(&mut self, index: &[usize], v: GaussianRational) {
        let off = self.format.offset_of(index);
        self.entries[off] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scale(&self, s: &GaussianRational) -> Tensor {
        Tensor {
            format: self.format.clone(),
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn add(&self, rhs: &Tensor) -> Result<Tensor> {
        if self.format != rhs.format {
            return Err(Error::FormatMismatch(format!(
                "{} vs {}",
                self.format, rhs.format
            )));
        }
        Ok(Tensor {
            format: self.format.clone(),
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Flattening across the cut J | complement: rows indexed by the
    /// multi-indices over J (lexicographic in party order), columns by the
    /// complement.
    pub fn flatten(&self, parties: &[usize]) -> Result<Matrix> {
        let n = self.format.n_parties();
        let mut in_j = vec![false; n];
        for &p in parties {
            if p >= n {
                return Err(Error::InvalidIndexSet(format!("party {p} out of range")));
            }
            in_j[p] = true;
        }
        let j: Vec<usize> = (0..n).filter(|&p| in_j[p]).collect();
        let comp: Vec<usize> = (0..n).filter(|&p| !in_j[p]).collect();
        if j.is_empty() || comp.is_empty() {
            return Err(Error::InvalidIndexSet(
                "flattening subset must be nonempty and proper".to_string(),
            ));
        }
        let row_dim: usize = j.iter().map(|&p| self.format.dims()[p]).product();
        let col_dim: usize = comp.iter().map(|&p| self.format.dims()[p]).product();
        let mut m = Matrix::zeros(row_dim, col_dim);
        for (off, idx) in self.format.indices().iter().enumerate() {
            let mut row = 0usize;
            for &p in &j {
                row = row * self.format.dims()[p] + idx[p];
            }
            let mut col = 0usize;
            for &p in &comp {
                col = col * self.format.dims()[p] + idx[p];
            }
            m.set(row, col, self.entries[off].clone());
        }
        Ok(m)
    }

    /// (G.A)_{i1..in} = sum G^(1)_{i1 i'1} ... G^(n)_{in i'n} A_{i'1..i'n}.
    pub fn apply_local(&self, op: &LocalOperation) -> Result<Tensor> {
        op.check_format(&self.format)?;
        // Contract one party at a time.
        let mut current = self.clone();
        for (party, g) in op.matrices().iter().enumerate() {
            let mut next = Tensor::zeros(self.format.clone());
            for idx in self.format.indices() {
                let mut acc = GaussianRational::zero();
                let mut src = idx.clone();
                for ip in 0..self.format.dims()[party] {
                    src[party] = ip;
                    let w = g.get(idx[party], ip);
                    if !w.is_zero() {
                        acc = &acc + &(w * current.get(&src));
                    }
                }
                next.set(&idx, acc);
            }
            current = next;
        }
        Ok(current)
    }

    /// F(A,B) = sum a_{i1..in} b_{i1..in}, no complex conjugation.
    pub fn pairing(&self, rhs: &Tensor) -> Result<GaussianRational> {
        if self.format != rhs.format {
            return Err(Error::FormatMismatch(format!(
                "{} vs {}",
                self.format, rhs.format
            )));
        }
        let mut acc = GaussianRational::zero();
        for (a, b) in self.entries.iter().zip(&rhs.entries) {
            acc = &acc + &(a * b);
        }
        Ok(acc)
    }

    /// F(A,x) = sum a_{i1..in} x^(1)_{i1} ... x^(n)_{in}.
    pub fn multilinear_eval(&self, x: &PartyVectorTuple) -> Result<GaussianRational> {
        x.check_format(&self.format)?;
        let mut acc = GaussianRational::zero();
        for (off, idx) in self.format.indices().iter().enumerate() {
            if self.entries[off].is_zero() {
                continue;
            }
            let mut term = self.entries[off].clone();
            for (j, &i) in idx.iter().enumerate() {
                term = &term * &x.vectors()[j][i];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// All first partials of F(A,x): component (j, i_j) is the contraction of
    /// A with x^(j') for every j' != j, at index i_j.
    pub fn gradient(&self, x: &PartyVectorTuple) -> Result<PartyVectorTuple> {
        x.check_format(&self.format)?;
        let mut out: Vec<Vec<GaussianRational>> = self
            .format
            .dims()
            .iter()
            .map(|&d| vec![GaussianRational::zero(); d])
            .collect();
        for (off, idx) in self.format.indices().iter().enumerate() {
            if self.entries[off].is_zero() {
                continue;
            }
            for j in 0..self.format.n_parties() {
                let mut term = self.entries[off].clone();
                for (jp, &i) in idx.iter().enumerate() {
                    if jp != j {
                        term = &term * &x.vectors()[jp][i];
                    }
                }
                out[j][idx[j]] = &out[j][idx[j]] + &term;
            }
        }
        Ok(PartyVectorTuple::new(out))
    }

    pub fn permute_parties(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.format.n_parties());
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.format.dims()[p]).collect();
        let new_format = TensorFormat::new(new_dims).expect("permutation keeps dims valid");
        let mut out = Tensor::zeros(new_format);
        for idx in self.format.indices() {
            let new_idx: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            out.set(&new_idx, self.get(&idx).clone());
        }
        out
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor[{}] {{", self.format)?;
        let mut first = true;
        for (off, idx) in self.format.indices().iter().enumerate() {
            if self.entries[off].is_zero() {
                continue;
            }
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(
                f,
                " {}: {}",
                idx.iter().map(|i| i.to_string()).collect::<String>(),
                self.entries[off]
            )?;
        }
        write!(f, " }}")
    }
}

/// One square matrix per party; the SLOCC action G.
#[derive(Clone, Debug)]
pub struct LocalOperation {
    matrices: Vec<Matrix>,
}

impl LocalOperation {
    pub fn new(matrices: Vec<Matrix>) -> Result<Self> {
        for m in &matrices {
            if m.rows() != m.cols() {
                return Err(Error::NotSquare {
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        Ok(LocalOperation { matrices })
    }

    pub fn identity(format: &TensorFormat) -> Self {
        LocalOperation {
            matrices: format.dims().iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn check_format(&self, format: &TensorFormat) -> Result<()> {
        if self.matrices.len() != format.n_parties()
            || self
                .matrices
                .iter()
                .zip(format.dims())
                .any(|(m, &d)| m.rows() != d)
        {
            return Err(Error::ShapeMismatch(format!(
                "operation shapes do not match format {format}"
            )));
        }
        Ok(())
    }

    /// Every factor has a nonzero determinant.
    pub fn is_invertible(&self) -> bool {
        self.matrices
            .iter()
            .all(|m| !m.determinant().expect("factors are square").is_zero())
    }

    /// Transposes every factor.
    pub fn transpose(&self) -> LocalOperation {
        LocalOperation {
            matrices: self.matrices.iter().map(|m| m.transpose()).collect(),
        }
    }
}

/// The tuple x = (x^(1),...,x^(n)), one vector per party.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartyVectorTuple {
    vectors: Vec<Vec<GaussianRational>>,
}

impl PartyVectorTuple {
    pub fn new(vectors: Vec<Vec<GaussianRational>>) -> Self {
        PartyVectorTuple { vectors }
    }

    pub fn from_ints(vectors: &[&[i64]]) -> Self {
        PartyVectorTuple::new(
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| GaussianRational::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn vectors(&self) -> &[Vec<GaussianRational>] {
        &self.vectors
    }

    pub fn check_format(&self, format: &TensorFormat) -> Result<()> {
        if self.vectors.len() != format.n_parties()
            || self
                .vectors
                .iter()
                .zip(format.dims())
                .any(|(v, &d)| v.len() != d)
        {
            return Err(Error::ShapeMismatch(format!(
                "party vectors do not match format {format}"
            )));
        }
        Ok(())
    }

    pub fn has_zero_vector(&self) -> bool {
        self.vectors
            .iter()
            .any(|v| v.iter().all(|e| e.is_zero()))
    }

    pub fn all_zero(&self) -> bool {
        self.vectors
            .iter()
            .all(|v| v.iter().all(|e| e.is_zero()))
    }
}

/// Segre embedding: b_{i1..in} = prod_j x^(j)_{ij}, a completely separable
/// tensor. Every vector must be nonzero.
pub fn segre_product(x: &PartyVectorTuple) -> Result<Tensor> {
    if x.has_zero_vector() {
        return Err(Error::ZeroVector);
    }
    let dims: Vec<usize> = x.vectors().iter().map(|v| v.len()).collect();
    let format = TensorFormat::new(dims)?;
    let mut t = Tensor::zeros(format.clone());
    for idx in format.indices() {
        let mut term = GaussianRational::one();
        for (j, &i) in idx.iter().enumerate() {
            term = &term * &x.vectors()[j][i];
        }
        t.set(&idx, term);
    }
    Ok(t)
}
