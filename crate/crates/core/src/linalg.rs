//! Small dense complex linear-algebra helpers on top of `nalgebra`.
//!
//! Eigendecompositions of Hermitian matrices go through a real symmetric
//! fast path whenever the imaginary parts vanish exactly, which is the case
//! for every sampled tensor.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Deterministic generator for `(seed, stream)`; independent streams share a seed.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A child seed for substream `stream` of `seed`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    seeded_rng(seed, stream).random::<u64>()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are returned in ascending order; column `m` of the returned
/// matrix is the eigenvector for eigenvalue `m`. Only the Hermitian part of
/// the input is used.
pub fn hermitian_eigh(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "hermitian_eigh needs a square matrix");
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let (values, vectors) = if m.iter().all(|z| z.im == 0.0) {
        let re = DMatrix::<f64>::from_fn(n, n, |i, j| 0.5 * (m[(i, j)].re + m[(j, i)].re));
        let eig = re.symmetric_eigen();
        let vecs = eig.eigenvectors.map(|x| C64::new(x, 0.0));
        (eig.eigenvalues.iter().copied().collect::<Vec<_>>(), vecs)
    } else {
        let h = (m + m.adjoint()).scale(0.5);
        let eig = h.symmetric_eigen();
        (eig.eigenvalues.iter().copied().collect::<Vec<_>>(), eig.eigenvectors)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted_values = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors = CMat::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    (sorted_values, sorted_vectors)
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise deviation from Hermitian symmetry.
pub fn hermitian_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn kron3(a: &CMat, b: &CMat, c: &CMat) -> CMat {
    a.kronecker(b).kronecker(c)
}

/// `Tr(A B)` without forming the product.
pub fn trace_product(a: &CMat, b: &CMat) -> C64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVec {
    loop {
        let v = CVec::from_fn(dim, |_, _| {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let norm = v.norm();
        if norm > 1e-300 {
            return v.unscale(norm);
        }
    }
}

/// Sample from the Gaussian unitary ensemble (unnormalized).
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMat {
    let g = CMat::from_fn(dim, dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    (&g + g.adjoint()).scale(0.5)
}

/// `U sign(Λ) U†` for a Hermitian matrix; zero eigenvalues map to `+1`.
pub fn matrix_sign(h: &CMat) -> CMat {
    let (values, vectors) = hermitian_eigh(h);
    let n = h.nrows();
    let mut out = CMat::zeros(n, n);
    for (m, &lambda) in values.iter().enumerate() {
        let s = if lambda >= 0.0 { 1.0 } else { -1.0 };
        let u = vectors.column(m);
        out += (u * u.adjoint()).scale(s);
    }
    out
}

/// Orthogonal projector onto the span of `vectors` together with its rank.
///
/// Directions whose Gram-Schmidt residual falls below `tol` are dropped.
pub fn span_projector(vectors: &[CVec], dim: usize, tol: f64) -> (CMat, usize) {
    let mut basis: Vec<CVec> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for b in &basis {
            let c = b.dotc(&r);
            r -= b * c;
        }
        let norm = r.norm();
        if norm > tol {
            basis.push(r.unscale(norm));
        }
    }
    let mut p = CMat::zeros(dim, dim);
    for b in &basis {
        p += b * b.adjoint();
    }
    (p, basis.len())
}

/// Checks `O = O†` and `O² = I` to `tol`.
pub fn is_observable(o: &CMat, tol: f64) -> bool {
    let n = o.nrows();
    if n != o.ncols() || hermitian_defect(o) > tol {
        return false;
    }
    let sq = o * o;
    let id = CMat::identity(n, n);
    (sq - id).iter().all(|z| z.norm() <= tol)
}

/// Top eigenpair by absolute value: `(signed eigenvalue, unit eigenvector)`.
pub fn dominant_eigenpair(m: &CMat) -> (f64, CVec) {
    let (values, vectors) = hermitian_eigh(m);
    let n = values.len();
    let (lo, hi) = (values[0], values[n - 1]);
    // ties prefer the positive end
    let idx = if hi.abs() >= lo.abs() { n - 1 } else { 0 };
    (values[idx], vectors.column(idx).into_owned())
}
