//! Hyperdeterminant engines.
//!
//! Explicit polynomials for the 2x2, 2x2x2 (Cayley) and 3x2x2 (boundary)
//! formats, and the Schlafli lift for 2x2x2x2: form the pencil over the
//! first party, recover the binary form of its inner Det by exact
//! interpolation, and take the discriminant via the Sylvester matrix of the
//! form and its derivative.
//!
//! Normalization is pinned once: det_2x2x2 is the literal 12-term polynomial,
//! the discriminant convention reproduces c1^2 - 4 c0 c2 for quadratics, and
//! with that convention the lift from det_2x2 reproduces det_2x2x2 exactly
//! (kappa = 1) while the 2x2x2x2 lift needs kappa = 256, fixed so that the
//! factorized product for the generic four-qubit family carries a plus sign.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{rational, GaussianRational, Rational};
use crate::tensor::{Tensor, TensorFormat};

/// Normalization constant of the 2x2x2x2 Schlafli lift over det_2x2x2.
/// Derived once by comparing the raw discriminant against the factorized
/// degree-24 product on the generic four-qubit family, then frozen.
const KAPPA_4: i64 = 256;

/// Homogeneous binary polynomial sum_j c_j x0^(l-j) x1^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<GaussianRational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<GaussianRational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::ShapeMismatch(
                "binary form needs degree >= 1".to_string(),
            ));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
            .expect("literal coefficients")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// f(U x) for U = [[a,b],[c,d]]: x0 -> a x0 + b x1, x1 -> c x0 + d x1.
    pub fn substitute(&self, a: i64, b: i64, c: i64, d: i64) -> BinaryForm {
        let l = self.degree();
        // (a x0 + b x1)^(l-j) (c x0 + d x1)^j, expanded via repeated
        // multiplication of linear factors.
        let mut out = vec![GaussianRational::zero(); l + 1];
        for (j, cj) in self.coeffs.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let mut poly = vec![cj.clone()];
            for _ in 0..(l - j) {
                poly = mul_linear(&poly, a, b);
            }
            for _ in 0..j {
                poly = mul_linear(&poly, c, d);
            }
            for (m, v) in poly.into_iter().enumerate() {
                out[m] = &out[m] + &v;
            }
        }
        BinaryForm { coeffs: out }
    }
}

/// Multiplies a coefficient vector by (p x0 + q x1).
fn mul_linear(poly: &[GaussianRational], p: i64, q: i64) -> Vec<GaussianRational> {
    let p = GaussianRational::from_int(p);
    let q = GaussianRational::from_int(q);
    let mut out = vec![GaussianRational::zero(); poly.len() + 1];
    for (m, c) in poly.iter().enumerate() {
        out[m] = &out[m] + &(c * &p);
        out[m + 1] = &out[m + 1] + &(c * &q);
    }
    out
}

/// Value and homogeneity degree of Det for one of the supported formats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperdetResult {
    pub value: GaussianRational,
    pub format: TensorFormat,
    pub degree: usize,
}

fn check_dims(a: &Tensor, dims: &[usize]) -> Result<()> {
    if a.format().dims() != dims {
        return Err(Error::FormatMismatch(format!(
            "expected format {}, got {}",
            dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("x"),
            a.format()
        )));
    }
    Ok(())
}

/// Det for 2x2: the ordinary determinant a00 a11 - a01 a10.
pub fn det_2x2(a: &Tensor) -> Result<GaussianRational> {
    check_dims(a, &[2, 2])?;
    Ok(&(a.get(&[0, 0]) * a.get(&[1, 1])) - &(a.get(&[0, 1]) * a.get(&[1, 0])))
}

/// Cayley's 2x2x2 hyperdeterminant, the full 12-term degree-4 polynomial.
pub fn det_2x2x2(a: &Tensor) -> Result<GaussianRational> {
    check_dims(a, &[2, 2, 2])?;
    let e = |i: usize, j: usize, k: usize| a.get(&[i, j, k]);
    let sq = |x: &GaussianRational| x * x;

    let plus = &(&sq(&(e(0, 0, 0) * e(1, 1, 1))) + &sq(&(e(0, 0, 1) * e(1, 1, 0))))
        + &(&sq(&(e(0, 1, 0) * e(1, 0, 1))) + &sq(&(e(1, 0, 0) * e(0, 1, 1))));

    let pairs = [
        [(0, 0, 0), (0, 0, 1), (1, 1, 0), (1, 1, 1)],
        [(0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1)],
        [(0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 1, 1)],
        [(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)],
        [(0, 0, 1), (1, 0, 0), (0, 1, 1), (1, 1, 0)],
        [(0, 1, 0), (1, 0, 0), (0, 1, 1), (1, 0, 1)],
    ];
    let mut cross = GaussianRational::zero();
    for p in pairs {
        let mut term = GaussianRational::one();
        for (i, j, k) in p {
            term = &term * e(i, j, k);
        }
        cross = &cross + &term;
    }

    let quad = &(&(&(e(0, 0, 0) * e(0, 1, 1)) * e(1, 0, 1)) * e(1, 1, 0))
        + &(&(&(e(0, 0, 1) * e(0, 1, 0)) * e(1, 0, 0)) * e(1, 1, 1));

    let two = GaussianRational::from_int(2);
    let four = GaussianRational::from_int(4);
    Ok(&(&plus - &(&two * &cross)) + &(&four * &quad))
}

/// Boundary-format Det for 3x2x2: m1 m4 - m2 m3, where m_j drops column j
/// of the 3x4 qutrit flattening. Homogeneous of degree 6.
pub fn det_3x2x2(a: &Tensor) -> Result<GaussianRational> {
    check_dims(a, &[3, 2, 2])?;
    let m = a.flatten(&[0])?;
    let minor = |drop: usize| m.minor(&[], &[drop]);
    let (m1, m2, m3, m4) = (minor(0)?, minor(1)?, minor(2)?, minor(3)?);
    Ok(&(&m1 * &m4) - &(&m2 * &m3))
}

/// Discriminant of a binary form via the Sylvester matrix of f and its
/// x1-derivative, normalized so that quadratics give c1^2 - 4 c0 c2.
///
/// A zero leading coefficient is handled by a bounded sequence of
/// deterministic unimodular shears, under which the discriminant is
/// invariant (asserted by tests, not assumed silently).
pub fn binary_discriminant(f: &BinaryForm) -> Result<GaussianRational> {
    let l = f.degree();
    if l < 2 {
        return Err(Error::ShapeMismatch(
            "discriminant needs degree >= 2".to_string(),
        ));
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if !f.coeffs[l].is_zero() {
        return discriminant_with_leading(f);
    }
    // c_l = 0: shear x0 -> x0 + s x1 (det 1). The new leading coefficient is
    // f(s, 1), a nonzero polynomial in s of degree <= l, so one of eight
    // distinct shears must work for every supported degree.
    for s in [1, -1, 2, -2, 3, -3, 4, -4] {
        let g = f.substitute(1, s, 0, 1);
        if !g.coeffs[l].is_zero() {
            return discriminant_with_leading(&g);
        }
    }
    Err(Error::ZeroForm)
}

fn discriminant_with_leading(f: &BinaryForm) -> Result<GaussianRational> {
    let l = f.degree();
    let n = 2 * l - 1;
    let mut m = Matrix::zeros(n, n);
    // l-1 rows of f, then l rows of its x1-derivative.
    for r in 0..(l - 1) {
        for j in 0..=l {
            m.set(r, r + j, f.coeffs[j].clone());
        }
    }
    for r in 0..l {
        for j in 1..=l {
            let d = &GaussianRational::from_int(j as i64) * &f.coeffs[j];
            m.set(l - 1 + r, r + j - 1, d);
        }
    }
    let det = m.determinant()?;
    let raw = det.div(&f.coeffs[l])?;
    if (l * (l - 1) / 2) % 2 == 1 {
        Ok(-&raw)
    } else {
        Ok(raw)
    }
}

/// Schlafli's construction: the pencil over the first party (which must have
/// dimension 2) has an inner Det that is a binary form of degree
/// `inner_degree` in the pencil variable; its coefficients are recovered by
/// exact interpolation and the lift is the discriminant of that form.
///
/// Returns 0 for an identically degenerate pencil. The inner evaluator stays
/// opaque, so the lift works for any inner Det of known degree.
pub fn schlafli_lift<F>(
    a: &Tensor,
    inner_degree: usize,
    inner_det: F,
    parallel: bool,
) -> Result<GaussianRational>
where
    F: Fn(&Tensor) -> Result<GaussianRational> + Sync,
{
    if a.format().dims().first() != Some(&2) {
        return Err(Error::FormatMismatch(format!(
            "pencil party must have dimension 2, got {}",
            a.format()
        )));
    }
    let slice0 = first_party_slice(a, 0);
    let slice1 = first_party_slice(a, 1);

    let l = inner_degree;
    // Det of the pencil at x = (1, t) for t = 0..l, plus (0, 1) for the
    // leading coefficient.
    let pencil_at = |t: i64| -> Result<GaussianRational> {
        let scaled = slice1.scale(&GaussianRational::from_int(t));
        inner_det(&slice0.add(&scaled)?)
    };
    let sample_ts: Vec<i64> = (0..=l as i64).collect();
    let values: Vec<GaussianRational> = if parallel {
        let results: Vec<Result<GaussianRational>> =
            sample_ts.par_iter().map(|&t| pencil_at(t)).collect();
        results.into_iter().collect::<Result<Vec<_>>>()?
    } else {
        sample_ts
            .iter()
            .map(|&t| pencil_at(t))
            .collect::<Result<Vec<_>>>()?
    };

    // Vandermonde solve for c_0..c_l.
    let mut v = Matrix::zeros(l + 1, l + 1);
    for (row, &t) in sample_ts.iter().enumerate() {
        let t = GaussianRational::from_int(t);
        for j in 0..=l {
            v.set(row, j, t.pow(j as u32));
        }
    }
    let coeffs = v.solve(&values)?;
    debug_assert_eq!(coeffs[l], inner_det(&slice1)?, "leading coefficient check");

    let form = BinaryForm::new(coeffs)?;
    if form.is_zero() {
        return Ok(GaussianRational::zero());
    }
    binary_discriminant(&form)
}

fn first_party_slice(a: &Tensor, i0: usize) -> Tensor {
    let inner_format =
        TensorFormat::new(a.format().dims()[1..].to_vec()).expect("inner format valid");
    let mut t = Tensor::zeros(inner_format.clone());
    for idx in inner_format.indices() {
        let mut full = Vec::with_capacity(idx.len() + 1);
        full.push(i0);
        full.extend_from_slice(&idx);
        t.set(&idx, a.get(&full).clone());
    }
    t
}

/// Degree-24 hyperdeterminant of format 2x2x2x2 via the Schlafli lift over
/// det_2x2x2, divided by the pinned constant.
pub fn det_2x2x2x2(a: &Tensor) -> Result<GaussianRational> {
    det_2x2x2x2_impl(a, false)
}

/// Same value, with the interpolation points evaluated concurrently.
/// Output is bit-identical to the sequential engine.
pub fn det_2x2x2x2_parallel(a: &Tensor) -> Result<GaussianRational> {
    det_2x2x2x2_impl(a, true)
}

fn det_2x2x2x2_impl(a: &Tensor, parallel: bool) -> Result<GaussianRational> {
    check_dims(a, &[2, 2, 2, 2])?;
    let raw = schlafli_lift(a, 4, det_2x2x2, parallel)?;
    Ok(raw.scale(&rational(1, KAPPA_4)))
}

/// Dispatcher over the format-specific engines. Formats that fail the
/// polygon inequality report "does not exist"; other unsupported formats
/// report "not implemented".
pub fn hyperdet(a: &Tensor) -> Result<HyperdetResult> {
    let format = a.format().clone();
    let mut sorted = format.dims().to_vec();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    let (value, degree) = match sorted.as_slice() {
        [2, 2] => (det_2x2(a)?, 2),
        [2, 2, 2] => (det_2x2x2(a)?, 4),
        [3, 2, 2] => {
            let canonical = a.permute_parties(&format.canonical_permutation());
            (det_3x2x2(&canonical)?, 6)
        }
        [2, 2, 2, 2] => (det_2x2x2x2(a)?, 24),
        _ => {
            return if format.hyperdet_exists() {
                Err(Error::HyperdetNotImplemented(format.to_string()))
            } else {
                Err(Error::HyperdetDoesNotExist(format.to_string()))
            }
        }
    };
    Ok(HyperdetResult {
        value,
        format,
        degree,
    })
}

/// alpha(|0000>+|1111>) + beta(|0011>+|1100>) + gamma(|0101>+|1010>)
/// + delta(|0110>+|1001>): the symmetric four-qubit family whose
/// hyperdeterminant factorizes completely.
pub fn generic_four_qubit(
    alpha: &GaussianRational,
    beta: &GaussianRational,
    gamma: &GaussianRational,
    delta: &GaussianRational,
) -> Tensor {
    let mut t = Tensor::zeros(TensorFormat::new(vec![2, 2, 2, 2]).expect("valid"));
    t.set(&[0, 0, 0, 0], alpha.clone());
    t.set(&[1, 1, 1, 1], alpha.clone());
    t.set(&[0, 0, 1, 1], beta.clone());
    t.set(&[1, 1, 0, 0], beta.clone());
    t.set(&[0, 1, 0, 1], gamma.clone());
    t.set(&[1, 0, 1, 0], gamma.clone());
    t.set(&[0, 1, 1, 0], delta.clone());
    t.set(&[1, 0, 0, 1], delta.clone());
    t
}

/// The closed-form value of det_2x2x2x2 on `generic_four_qubit`:
/// (abgd)^2 times the squared product of the eight signed sums.
pub fn factorized_det4(
    alpha: &GaussianRational,
    beta: &GaussianRational,
    gamma: &GaussianRational,
    delta: &GaussianRational,
) -> GaussianRational {
    let signs: [[i64; 4]; 8] = [
        [1, 1, 1, 1],
        [1, 1, 1, -1],
        [1, 1, -1, 1],
        [1, -1, 1, 1],
        [-1, 1, 1, 1],
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
    ];
    let mut acc = &(&(alpha * beta) * gamma) * delta;
    for s in signs {
        let mut f = GaussianRational::zero();
        for (v, &sg) in [alpha, beta, gamma, delta].iter().zip(&s) {
            let term = if sg > 0 { (*v).clone() } else { -*v };
            f = &f + &term;
        }
        acc = &acc * &f;
    }
    &acc * &acc
}

/// Squared concurrence C^2 = 4 |Det A_2|^2, exact.
pub fn concurrence_sq(a: &Tensor) -> Result<Rational> {
    Ok(rational(4, 1) * det_2x2(a)?.abs_squared())
}

/// Squared 3-tangle tau^2 = 16 |Det A_3|^2, exact.
pub fn tangle_sq(a: &Tensor) -> Result<Rational> {
    Ok(rational(16, 1) * det_2x2x2(a)?.abs_squared())
}

/// Display-only modulus C = 2 |Det A_2|.
pub fn concurrence_f64(a: &Tensor) -> Result<f64> {
    Ok(2.0 * det_2x2(a)?.abs_f64())
}

/// Display-only modulus tau = 4 |Det A_3|.
pub fn tangle_f64(a: &Tensor) -> Result<f64> {
    Ok(4.0 * det_2x2x2(a)?.abs_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_invertible_op, random_tensor, SplitMix64};
    use crate::tensor::{PartyVectorTuple, Tensor};

    fn int(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn det_2x2_examples() {
        let ghz2 = Tensor::basis_state(&[2, 2], &[&[0, 0], &[1, 1]]);
        assert_eq!(det_2x2(&ghz2).unwrap(), int(1));
        let prod = crate::tensor::segre_product(&PartyVectorTuple::from_ints(&[
            &[1, 2],
            &[1, 3],
        ]))
        .unwrap();
        assert_eq!(det_2x2(&prod).unwrap(), int(0));
        let mut m = Tensor::zeros(TensorFormat::new(vec![2, 2]).unwrap());
        m.set(&[0, 0], int(1));
        m.set(&[0, 1], int(2));
        m.set(&[1, 0], int(3));
        m.set(&[1, 1], int(4));
        assert_eq!(det_2x2(&m).unwrap(), int(-2));
        assert!(det_2x2(&Tensor::ghz3()).is_err());
    }

    #[test]
    fn det_2x2x2_examples() {
        assert_eq!(det_2x2x2(&Tensor::ghz3()).unwrap(), int(1));
        assert_eq!(det_2x2x2(&Tensor::w3()).unwrap(), int(0));
        let four = Tensor::basis_state(
            &[2, 2, 2],
            &[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]],
        );
        assert_eq!(det_2x2x2(&four).unwrap(), int(4));
    }

    #[test]
    fn det_3x2x2_examples() {
        let gen = Tensor::basis_state(
            &[3, 2, 2],
            &[&[0, 0, 0], &[1, 0, 1], &[1, 1, 0], &[2, 1, 1]],
        );
        assert!(!det_3x2x2(&gen).unwrap().is_zero());
        let deg = Tensor::basis_state(&[3, 2, 2], &[&[0, 0, 0], &[1, 0, 1], &[2, 1, 1]]);
        assert_eq!(det_3x2x2(&deg).unwrap(), int(0));
        let ghz_embedded = Tensor::basis_state(&[3, 2, 2], &[&[0, 0, 0], &[1, 1, 1]]);
        assert_eq!(det_3x2x2(&ghz_embedded).unwrap(), int(0));
    }

    #[test]
    fn quadratic_discriminant_matches_closed_form() {
        // Oracle: disc(c0 x0^2 + c1 x0 x1 + c2 x1^2) = c1^2 - 4 c0 c2.
        let mut rng = SplitMix64::new(31);
        for _ in 0..30 {
            let c: Vec<GaussianRational> = (0..3).map(|_| rng.gaussian_int(4)).collect();
            let closed =
                &(&c[1] * &c[1]) - &(&int(4) * &(&c[0] * &c[2]));
            let form = match BinaryForm::new(c) {
                Ok(f) if !f.is_zero() => f,
                _ => continue,
            };
            assert_eq!(binary_discriminant(&form).unwrap(), closed);
        }
        // (0,1,0): zero leading coefficient exercises the shear path.
        assert_eq!(
            binary_discriminant(&BinaryForm::from_ints(&[0, 1, 0])).unwrap(),
            int(1)
        );
    }

    #[test]
    fn repeated_root_has_zero_discriminant() {
        assert_eq!(
            binary_discriminant(&BinaryForm::from_ints(&[1, -2, 1])).unwrap(),
            int(0)
        );
    }

    #[test]
    fn quartic_discriminant_against_resultant_oracle() {
        // x0^3 x1 - x0 x1^3 has four distinct roots.
        let f = BinaryForm::from_ints(&[0, 1, 0, -1, 0]);
        let d = binary_discriminant(&f).unwrap();
        assert!(!d.is_zero());
        // Independent oracle: direct 7x7 Sylvester determinant of f and
        // f' = x0^3 - 3 x0 x1^2 in the standard descending layout, with
        // disc = (-1)^(l(l-1)/2) Res / c_l after shearing to c_l != 0.
        // Sheared form g(x0,x1) = f(x0 + x1, x1): coefficients of
        // (x0+x1)^3 x1 - (x0+x1) x1^3 = x0^3 x1 + 3 x0^2 x1^2 + 2 x0 x1^3.
        let g = f.substitute(1, 1, 0, 1);
        assert_eq!(
            g.coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
            vec!["0", "1", "3", "2", "0"]
        );
        // Forms with c_l = 0 after one shear still shear again internally;
        // the value must match the direct closed form for this quartic:
        // disc(x^3 - x over the roots {0,1,-1,inf}) via the product of
        // squared root differences. For f = x0^3 x1 - x0 x1^3 written in
        // t = x0/x1: roots t in {0, 1, -1} and one root at infinity; the
        // degree-4 discriminant with leading coefficient 0 is handled by
        // the substitution, and equality with the substituted form's
        // discriminant is the invariance assertion below.
        assert_eq!(binary_discriminant(&g).unwrap(), d);
    }

    #[test]
    fn discriminant_invariant_under_unimodular_substitution() {
        let mut rng = SplitMix64::new(32);
        for _ in 0..20 {
            let c: Vec<GaussianRational> = (0..5).map(|_| rng.gaussian_int(3)).collect();
            let form = match BinaryForm::new(c) {
                Ok(f) if !f.is_zero() => f,
                _ => continue,
            };
            let d = binary_discriminant(&form).unwrap();
            // dets of [[1,2],[1,3]] and [[0,-1],[1,0]] are 1
            for (a, b, cc, dd) in [(1, 2, 1, 3), (0, -1, 1, 0), (1, 0, 5, 1)] {
                let sub = form.substitute(a, b, cc, dd);
                assert_eq!(binary_discriminant(&sub).unwrap(), d);
            }
        }
    }

    #[test]
    fn lift_from_2x2_matches_cayley_polynomial() {
        // kappa_3 = 1: the lift equals Eq-10-style det_2x2x2 exactly.
        let mut rng = SplitMix64::new(33);
        let f = TensorFormat::new(vec![2, 2, 2]).unwrap();
        for _ in 0..100 {
            let a = random_tensor(&f, &mut rng, 3);
            let lifted = schlafli_lift(&a, 2, det_2x2, false).unwrap();
            assert_eq!(lifted, det_2x2x2(&a).unwrap());
        }
    }

    #[test]
    fn lift_on_ghz3_is_one() {
        // Pencil det is x0 x1; the discriminant of the split quadratic is 1.
        let lifted = schlafli_lift(&Tensor::ghz3(), 2, det_2x2, false).unwrap();
        assert_eq!(lifted, int(1));
    }

    #[test]
    fn det4_on_ghz4_and_w4_is_zero() {
        assert_eq!(det_2x2x2x2(&Tensor::ghz_n(4)).unwrap(), int(0));
        assert_eq!(det_2x2x2x2(&Tensor::w_n(4)).unwrap(), int(0));
    }

    #[test]
    fn det4_matches_factorized_product() {
        let (a, b, g, d) = (int(1), int(2), int(3), int(5));
        let state = generic_four_qubit(&a, &b, &g, &d);
        assert_eq!(
            det_2x2x2x2(&state).unwrap(),
            factorized_det4(&a, &b, &g, &d)
        );
        assert!(!det_2x2x2x2(&state).unwrap().is_zero());
        // (1,2,3,4) hits the zero factor alpha-beta-gamma+delta.
        let degenerate = generic_four_qubit(&int(1), &int(2), &int(3), &int(4));
        assert_eq!(det_2x2x2x2(&degenerate).unwrap(), int(0));
    }

    #[test]
    fn parallel_engine_is_bit_identical() {
        let mut rng = SplitMix64::new(34);
        let f = TensorFormat::new(vec![2, 2, 2, 2]).unwrap();
        for _ in 0..5 {
            let a = random_tensor(&f, &mut rng, 3);
            assert_eq!(det_2x2x2x2(&a).unwrap(), det_2x2x2x2_parallel(&a).unwrap());
        }
    }

    #[test]
    fn homogeneity_degrees() {
        let mut rng = SplitMix64::new(35);
        let cases: [(&[usize], usize); 4] =
            [(&[2, 2], 2), (&[2, 2, 2], 4), (&[3, 2, 2], 6), (&[2, 2, 2, 2], 24)];
        for (dims, degree) in cases {
            let f = TensorFormat::new(dims.to_vec()).unwrap();
            let a = random_tensor(&f, &mut rng, 2);
            let lambda = GaussianRational::from_parts(2, 3, 1, 2);
            let scaled = a.scale(&lambda);
            assert_eq!(
                hyperdet(&scaled).unwrap().value,
                &lambda.pow(degree as u32) * &hyperdet(&a).unwrap().value,
                "degree {degree} on {}",
                f
            );
        }
    }

    #[test]
    fn slice_swap_sign_rule() {
        let mut rng = SplitMix64::new(36);
        let f = TensorFormat::new(vec![2, 2, 2]).unwrap();
        for _ in 0..10 {
            let a = random_tensor(&f, &mut rng, 3);
            let d = det_2x2x2(&a).unwrap();
            for party in 0..3 {
                let mut swapped = Tensor::zeros(f.clone());
                for idx in f.indices() {
                    let mut src = idx.clone();
                    src[party] = 1 - src[party];
                    swapped.set(&idx, a.get(&src).clone());
                }
                let ds = det_2x2x2(&swapped).unwrap();
                assert!(ds == d || ds == -&d);
            }
        }
    }

    #[test]
    fn zero_set_slocc_invariance() {
        let mut rng = SplitMix64::new(37);
        let f = TensorFormat::new(vec![2, 2, 2]).unwrap();
        for _ in 0..20 {
            let a = random_tensor(&f, &mut rng, 3);
            let g = random_invertible_op(&f, &mut rng, 2);
            let d1 = det_2x2x2(&a).unwrap();
            let d2 = det_2x2x2(&a.apply_local(&g).unwrap()).unwrap();
            assert_eq!(d1.is_zero(), d2.is_zero());
        }
    }

    #[test]
    fn rank_deficient_qutrit_flattening_kills_det() {
        // X_sing = node(1) lies in X_dual for the 3x2x2 format.
        let mut rng = SplitMix64::new(38);
        for _ in 0..10 {
            // rows 2 = row0 + row1 forces rank <= 2
            let f = TensorFormat::new(vec![3, 2, 2]).unwrap();
            let mut a = random_tensor(&f, &mut rng, 3);
            for j in 0..2 {
                for k in 0..2 {
                    let v = &a.get(&[0, j, k]).clone() + a.get(&[1, j, k]);
                    a.set(&[2, j, k], v);
                }
            }
            assert!(a.flatten(&[0]).unwrap().rank() <= 2);
            assert_eq!(det_3x2x2(&a).unwrap(), int(0));
        }
    }

    #[test]
    fn dispatcher_behaviour() {
        let ghz2 = Tensor::basis_state(&[2, 2], &[&[0, 0], &[1, 1]]);
        let r = hyperdet(&ghz2).unwrap();
        assert_eq!((r.value, r.degree), (int(1), 2));

        let mut rng = SplitMix64::new(39);
        let f = TensorFormat::new(vec![2, 2, 2]).unwrap();
        assert_eq!(hyperdet(&random_tensor(&f, &mut rng, 3)).unwrap().degree, 4);

        let bad = Tensor::basis_state(&[4, 2, 2], &[&[0, 0, 0]]);
        assert!(matches!(
            hyperdet(&bad),
            Err(Error::HyperdetDoesNotExist(_))
        ));
        let unsupported = Tensor::basis_state(&[3, 3], &[&[0, 0]]);
        assert!(matches!(
            hyperdet(&unsupported),
            Err(Error::HyperdetNotImplemented(_))
        ));
        // permuted boundary format goes through the canonical permutation
        let permuted = Tensor::basis_state(&[2, 2, 3], &[&[0, 0, 0], &[1, 1, 2]]);
        assert_eq!(hyperdet(&permuted).unwrap().degree, 6);
    }

    #[test]
    fn measures() {
        assert_eq!(tangle_sq(&Tensor::ghz3()).unwrap(), rational(16, 1));
        assert_eq!(tangle_sq(&Tensor::w3()).unwrap(), rational(0, 1));
        let ghz2 = Tensor::basis_state(&[2, 2], &[&[0, 0], &[1, 1]]);
        assert_eq!(concurrence_sq(&ghz2).unwrap(), rational(4, 1));
        assert!((concurrence_f64(&ghz2).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_scaling_weights() {
        // Relative-invariance weights per party, recovered by a scaling
        // oracle with t = 2 and frozen: (2,2,2) for 2^3, (2,3,3) for 3x2x2,
        // (12,12,12,12) for 2^4.
        let mut rng = SplitMix64::new(40);
        let cases: [(&[usize], &[u32]); 3] = [
            (&[2, 2, 2], &[2, 2, 2]),
            (&[3, 2, 2], &[2, 3, 3]),
            (&[2, 2, 2, 2], &[12, 12, 12, 12]),
        ];
        for (dims, weights) in cases {
            let f = TensorFormat::new(dims.to_vec()).unwrap();
            let a = loop {
                let t = random_tensor(&f, &mut rng, 2);
                if !hyperdet(&t).unwrap().value.is_zero() {
                    break t;
                }
            };
            let base = hyperdet(&a).unwrap().value;
            for (party, &w) in weights.iter().enumerate() {
                let mut diag = Matrix::identity(dims[party]);
                diag.set(0, 0, int(2));
                let mut mats: Vec<Matrix> =
                    dims.iter().map(|&d| Matrix::identity(d)).collect();
                mats[party] = diag;
                let g = crate::tensor::LocalOperation::new(mats).unwrap();
                let scaled = hyperdet(&a.apply_local(&g).unwrap()).unwrap().value;
                assert_eq!(scaled, &int(2).pow(w) * &base, "party {party} on {f}");
            }
        }
    }
}
