//! The `N²×N²×N²` complex 3-tensor and its two norms.
//!
//! A [`Tensor3`] is stored as its `N³×N³` matrix view: row `(i,j,k)` and
//! column `(i',j',k')`, both flattened as `(i·N + j)·N + k`. The entry at
//! that position is `T_{(i,i'),(j,j'),(k,k')}`.

mod io;
mod trilinear;

pub use io::{read_tensor, read_tensor_file, write_tensor, write_tensor_file, TENSOR_MAGIC};
pub use trilinear::{
    trilinear_eval, trilinear_norm_lower, trilinear_norm_upper_net, trilinear_norm_upper_with,
    AlsOptions, TrilinearLower, TrilinearWitness,
};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec, C64, ZERO};
use rand::Rng;
use rand_distr::StandardNormal;

pub const MAX_QUBITS: u32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Gaussian,
    Bernoulli,
    /// Use this vector as `g` verbatim; its length must be `N³`.
    Override(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub distribution: Distribution,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn gaussian(seed: u64) -> Self {
        Self { distribution: Distribution::Gaussian, seed }
    }

    pub fn bernoulli(seed: u64) -> Self {
        Self { distribution: Distribution::Bernoulli, seed }
    }

    pub fn with_vector(g: Vec<f64>) -> Self {
        Self { distribution: Distribution::Override(g), seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    qubits: u32,
    dim: usize,
    matrix: CMat,
    raw: Option<Vec<f64>>,
}

pub(crate) fn check_qubits(n: u32) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitRange(n))
    }
}

impl Tensor3 {
    pub fn zeros(qubits: u32) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1usize << qubits;
        let side = dim * dim * dim;
        Ok(Self { qubits, dim, matrix: CMat::zeros(side, side), raw: None })
    }

    /// Wrap an `N³×N³` matrix.
    pub fn from_matrix(qubits: u32, matrix: CMat) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1usize << qubits;
        let side = dim * dim * dim;
        if matrix.nrows() != side || matrix.ncols() != side {
            return Err(Error::Dimension { expected: side, got: matrix.nrows().max(matrix.ncols()) });
        }
        Ok(Self { qubits, dim, matrix, raw: None })
    }

    pub fn identity(qubits: u32) -> Result<Self> {
        check_qubits(qubits)?;
        let side = 1usize << (3 * qubits);
        Self::from_matrix(qubits, CMat::identity(side, side))
    }

    /// `A⊗B⊗C` for `N×N` factors.
    pub fn from_product(a: &CMat, b: &CMat, c: &CMat) -> Result<Self> {
        let dim = a.nrows();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::InvalidParameter(format!("local dimension {dim} is not a power of two")));
        }
        for m in [a, b, c] {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::Dimension { expected: dim, got: m.nrows() });
            }
        }
        Self::from_matrix(dim.trailing_zeros(), linalg::kron3(a, b, c))
    }

    /// The full rank-one matrix `|g⟩⟨g|`, without the zero pattern of [`sample_tensor`].
    pub fn rank_one(qubits: u32, g: &[f64]) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1usize << qubits;
        let side = dim * dim * dim;
        if g.len() != side {
            return Err(Error::Dimension { expected: side, got: g.len() });
        }
        let matrix = CMat::from_fn(side, side, |r, c| C64::new(g[r] * g[c], 0.0));
        Ok(Self { qubits, dim, matrix, raw: Some(g.to_vec()) })
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    /// Local dimension `N = 2^n`.
    pub fn local_dim(&self) -> usize {
        self.dim
    }

    /// Side of the matrix view, `N³`.
    pub fn side(&self) -> usize {
        self.dim * self.dim * self.dim
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    /// The raw vector `g` this tensor was sampled from, when known.
    pub fn raw(&self) -> Option<&[f64]> {
        self.raw.as_deref()
    }

    pub(crate) fn with_raw(mut self, raw: Option<Vec<f64>>) -> Self {
        self.raw = raw;
        self
    }

    pub fn entry(&self, (i, ip): (usize, usize), (j, jp): (usize, usize), (k, kp): (usize, usize)) -> C64 {
        let n = self.dim;
        self.matrix[((i * n + j) * n + k, (ip * n + jp) * n + kp)]
    }

    pub fn frobenius_norm(&self) -> f64 {
        linalg::frobenius(&self.matrix)
    }

    pub fn hermitian_defect(&self) -> f64 {
        linalg::hermitian_defect(&self.matrix)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|z| *z == ZERO)
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self { qubits: self.qubits, dim: self.dim, matrix: self.matrix.map(|z| z * c), raw: None }
    }

    pub fn adjoint(&self) -> Self {
        Self { qubits: self.qubits, dim: self.dim, matrix: self.matrix.adjoint(), raw: None }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: C64, other: &Tensor3, b: C64) -> Result<Self> {
        if other.qubits != self.qubits {
            return Err(Error::Dimension { expected: self.side(), got: other.side() });
        }
        let matrix = self.matrix.map(|z| z * a) + other.matrix.map(|z| z * b);
        Ok(Self { qubits: self.qubits, dim: self.dim, matrix, raw: None })
    }

    /// Entries re-indexed as a cube `[a][b][c]` with `a = i·N + i'` etc.
    pub fn pair_layout(&self) -> Vec<C64> {
        let n = self.dim;
        let s = n * n;
        let mut out = vec![ZERO; s * s * s];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let row = (i * n + j) * n + k;
                    for ip in 0..n {
                        for jp in 0..n {
                            for kp in 0..n {
                                let col = (ip * n + jp) * n + kp;
                                let a = i * n + ip;
                                let b = j * n + jp;
                                let c = k * n + kp;
                                out[(a * s + b) * s + c] = self.matrix[(row, col)];
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Inverse of [`Tensor3::pair_layout`].
    pub fn from_pair_layout(qubits: u32, cube: &[C64]) -> Result<Self> {
        check_qubits(qubits)?;
        let n = 1usize << qubits;
        let s = n * n;
        if cube.len() != s * s * s {
            return Err(Error::Dimension { expected: s * s * s, got: cube.len() });
        }
        let side = n * n * n;
        let matrix = CMat::from_fn(side, side, |row, col| {
            let (i, j, k) = (row / s, (row / n) % n, row % n);
            let (ip, jp, kp) = (col / s, (col / n) % n, col % n);
            let a = i * n + ip;
            let b = j * n + jp;
            let c = k * n + kp;
            cube[(a * s + b) * s + c]
        });
        Ok(Self { qubits, dim: n, matrix, raw: None })
    }
}

/// Sample `g` and build `T = Σ_{i≠i', j≠j', k≠k'} g_{ijk} g_{i'j'k'} |ijk⟩⟨i'j'k'|`.
///
/// The same `(distribution, seed, n)` always yields bit-identical `g` and `T`.
pub fn sample_tensor(qubits: u32, cfg: &SamplerConfig) -> Result<Tensor3> {
    check_qubits(qubits)?;
    let n = 1usize << qubits;
    let side = n * n * n;
    let g: Vec<f64> = match &cfg.distribution {
        Distribution::Gaussian => {
            let mut rng = linalg::seeded_rng(cfg.seed, 0);
            (0..side).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
        }
        Distribution::Bernoulli => {
            let mut rng = linalg::seeded_rng(cfg.seed, 0);
            (0..side).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect()
        }
        Distribution::Override(v) => {
            if v.len() != side {
                return Err(Error::Dimension { expected: side, got: v.len() });
            }
            v.clone()
        }
    };
    let matrix = CMat::from_fn(side, side, |row, col| {
        let (i, j, k) = (row / (n * n), (row / n) % n, row % n);
        let (ip, jp, kp) = (col / (n * n), (col / n) % n, col % n);
        if i != ip && j != jp && k != kp {
            C64::new(g[row] * g[col], 0.0)
        } else {
            ZERO
        }
    });
    Ok(Tensor3 { qubits, dim: n, matrix, raw: Some(g) })
}

#[derive(Debug, Clone)]
pub struct SpectralNorm {
    pub value: f64,
    /// Signed eigenvalue of largest modulus; present for Hermitian inputs.
    pub eigenvalue: Option<f64>,
    /// Unit eigenvector for `eigenvalue`.
    pub eigenvector: Option<CVec>,
}

const HERMITIAN_TOL: f64 = 1e-12;

/// `‖T‖₃,₃`, the largest singular value of the matrix view.
///
/// Hermitian inputs go through an eigendecomposition and keep the dominant
/// eigenpair; anything else falls back to singular values.
pub fn spectral_norm(t: &Tensor3) -> SpectralNorm {
    let scale = t.matrix.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if scale == 0.0 {
        let mut v = CVec::zeros(t.side());
        v[0] = linalg::ONE;
        return SpectralNorm { value: 0.0, eigenvalue: Some(0.0), eigenvector: Some(v) };
    }
    if t.hermitian_defect() <= HERMITIAN_TOL * scale {
        let (lambda, v) = linalg::dominant_eigenpair(&t.matrix);
        SpectralNorm { value: lambda.abs(), eigenvalue: Some(lambda), eigenvector: Some(v) }
    } else {
        let sv = t.matrix.clone().singular_values();
        let value = sv.iter().fold(0.0f64, |m, &x| m.max(x));
        SpectralNorm { value, eigenvalue: None, eigenvector: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HermitianPart {
    /// `(T + T†)/2`
    Symmetric,
    /// `i(T − T†)/2`
    Antisymmetric,
}

#[derive(Debug, Clone)]
pub struct Hermitized {
    pub tensor: Tensor3,
    pub part: HermitianPart,
    pub spectral_before: f64,
    pub spectral_after: f64,
}

impl Hermitized {
    /// `‖T‖₃,₃ / ‖T_herm‖₃,₃`; at most 2 in theory, reported per instance.
    pub fn loss_factor(&self) -> f64 {
        if self.spectral_after == 0.0 {
            f64::INFINITY
        } else {
            self.spectral_before / self.spectral_after
        }
    }
}

/// Replace `T` by the Hermitian candidate with the larger spectral norm.
pub fn hermitize(t: &Tensor3) -> Tensor3 {
    hermitize_report(t).tensor
}

pub fn hermitize_report(t: &Tensor3) -> Hermitized {
    let before = spectral_norm(t).value;
    let adj = t.adjoint();
    let half = C64::new(0.5, 0.0);
    let sym = t.combine(half, &adj, half).expect("same shape");
    let anti = t.combine(C64::new(0.0, 0.5), &adj, C64::new(0.0, -0.5)).expect("same shape");
    let s_norm = spectral_norm(&sym).value;
    let a_norm = spectral_norm(&anti).value;
    if s_norm >= a_norm {
        // Already-Hermitian input: keep the sampled vector alongside.
        let raw = if t.is_hermitian(HERMITIAN_TOL) { t.raw.clone() } else { None };
        Hermitized { tensor: sym.with_raw(raw), part: HermitianPart::Symmetric, spectral_before: before, spectral_after: s_norm }
    } else {
        Hermitized { tensor: anti, part: HermitianPart::Antisymmetric, spectral_before: before, spectral_after: a_norm }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, I};

    fn all_ones(qubits: u32) -> Tensor3 {
        let n = 1usize << qubits;
        sample_tensor(qubits, &SamplerConfig::with_vector(vec![1.0; n * n * n])).unwrap()
    }

    #[test]
    fn gaussian_zero_pattern() {
        let t = sample_tensor(1, &SamplerConfig::gaussian(42)).unwrap();
        for i in 0..2 {
            for ip in 0..2 {
                for j in 0..2 {
                    for jp in 0..2 {
                        for k in 0..2 {
                            for kp in 0..2 {
                                let e = t.entry((i, ip), (j, jp), (k, kp));
                                if i == ip || j == jp || k == kp {
                                    assert_eq!(e, ZERO);
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(t.is_hermitian(0.0));
    }

    #[test]
    fn sampled_tensor_is_masked_outer_product() {
        let t = sample_tensor(1, &SamplerConfig::gaussian(9)).unwrap();
        let g = t.raw().unwrap().to_vec();
        let full = Tensor3::rank_one(1, &g).unwrap();
        for r in 0..8 {
            for c in 0..8 {
                let (i, j, k) = (r / 4, (r / 2) % 2, r % 2);
                let (ip, jp, kp) = (c / 4, (c / 2) % 2, c % 2);
                let expected = if i != ip && j != jp && k != kp { full.matrix()[(r, c)] } else { ZERO };
                assert_eq!(t.matrix()[(r, c)], expected);
            }
        }
    }

    #[test]
    fn bernoulli_entries_are_signs() {
        let t = sample_tensor(1, &SamplerConfig::bernoulli(7)).unwrap();
        assert!(t.raw().unwrap().iter().all(|&x| x == 1.0 || x == -1.0));
        for z in t.matrix().iter() {
            assert!(*z == ZERO || *z == ONE || *z == -ONE);
        }
    }

    #[test]
    fn same_seed_same_tensor() {
        let a = sample_tensor(2, &SamplerConfig::gaussian(5)).unwrap();
        let b = sample_tensor(2, &SamplerConfig::gaussian(5)).unwrap();
        assert_eq!(a, b);
        let c = sample_tensor(2, &SamplerConfig::gaussian(6)).unwrap();
        assert_ne!(a.raw(), c.raw());
    }

    #[test]
    fn override_length_is_checked() {
        let err = sample_tensor(1, &SamplerConfig::with_vector(vec![1.0; 7])).unwrap_err();
        assert!(matches!(err, Error::Dimension { expected: 8, got: 7 }));
    }

    #[test]
    fn all_ones_is_cube_of_j_minus_i() {
        // J − I on C² is the Pauli X matrix.
        let x = CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let expected = linalg::kron3(&x, &x, &x);
        assert_eq!(all_ones(1).matrix(), &expected);
    }

    #[test]
    fn spectral_norm_examples() {
        assert_eq!(spectral_norm(&Tensor3::zeros(1).unwrap()).value, 0.0);
        assert!((spectral_norm(&all_ones(1)).value - 1.0).abs() < 1e-12);
        assert!((spectral_norm(&all_ones(2)).value - 27.0).abs() < 27e-9);
        let t = sample_tensor(1, &SamplerConfig::gaussian(3)).unwrap();
        let g = t.raw().unwrap();
        let full = Tensor3::rank_one(1, g).unwrap();
        let g2: f64 = g.iter().map(|x| x * x).sum();
        assert!((spectral_norm(&full).value - g2).abs() < 1e-9 * g2);
    }

    #[test]
    fn spectral_norm_bounded_by_frobenius_and_homogeneous() {
        for seed in 0..5 {
            let t = sample_tensor(1, &SamplerConfig::gaussian(seed)).unwrap();
            let s = spectral_norm(&t).value;
            assert!(s <= t.frobenius_norm() * (1.0 + 1e-12));
            let scaled = spectral_norm(&t.scaled(C64::new(2.5, 0.0))).value;
            assert!((scaled - 2.5 * s).abs() < 1e-9 * scaled.max(1.0));
        }
    }

    #[test]
    fn non_hermitian_uses_singular_values() {
        let mut m = CMat::zeros(8, 8);
        m[(0, 1)] = C64::new(3.0, 0.0);
        let t = Tensor3::from_matrix(1, m).unwrap();
        let s = spectral_norm(&t);
        assert!((s.value - 3.0).abs() < 1e-12);
        assert!(s.eigenvector.is_none());
    }

    #[test]
    fn hermitize_keeps_hermitian_input() {
        let t = sample_tensor(1, &SamplerConfig::gaussian(1)).unwrap();
        let h = hermitize_report(&t);
        assert_eq!(h.part, HermitianPart::Symmetric);
        assert_eq!(h.tensor.matrix(), t.matrix());
        assert!(h.tensor.raw().is_some());
    }

    #[test]
    fn hermitize_anti_hermitian_branch() {
        let t = sample_tensor(1, &SamplerConfig::gaussian(2)).unwrap();
        let norm = spectral_norm(&t).value;
        let skew = t.scaled(I);
        let h = hermitize_report(&skew);
        assert_eq!(h.part, HermitianPart::Antisymmetric);
        assert!((h.spectral_after - norm).abs() < 1e-9 * norm);
    }

    #[test]
    fn hermitize_random_complex() {
        let mut rng = linalg::seeded_rng(11, 0);
        let m = CMat::from_fn(8, 8, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        let t = Tensor3::from_matrix(1, m).unwrap();
        let h = hermitize(&t);
        assert!(h.hermitian_defect() < 1e-12);
    }

    #[test]
    fn pair_layout_round_trip() {
        let t = sample_tensor(1, &SamplerConfig::gaussian(8)).unwrap();
        let cube = t.pair_layout();
        let back = Tensor3::from_pair_layout(1, &cube).unwrap();
        assert_eq!(back.matrix(), t.matrix());
        // cube[(a,b,c)] with a=(i,i')
        assert_eq!(cube[(2 * 4 + 2) * 4 + 1], t.entry((1, 0), (1, 0), (0, 1)));
    }
}
