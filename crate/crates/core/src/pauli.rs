//! The n-qubit Pauli observables and the Fourier transform they induce on
//! 3-tensors.
//!
//! Basis order is lexicographic over `I < X < Y < Z` per qubit with the
//! leftmost qubit most significant, so index 0 is the identity and index 1
//! at `n = 2` is `IX`.

use crate::error::{Error, Result};
use crate::linalg::{CMat, C64, I, ONE, ZERO};
use crate::tensor::{check_qubits, Tensor3};
use rayon::prelude::*;
use std::io::Write;

const LETTERS: [char; 4] = ['I', 'X', 'Y', 'Z'];

fn single_qubit(letter: usize) -> CMat {
    match letter {
        0 => CMat::identity(2, 2),
        1 => CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        2 => CMat::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        _ => CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    }
}

#[derive(Debug, Clone)]
pub struct PauliBasis {
    qubits: u32,
    dim: usize,
    elements: Vec<CMat>,
    labels: Vec<String>,
}

pub fn build_basis(qubits: u32) -> Result<PauliBasis> {
    check_qubits(qubits)?;
    let dim = 1usize << qubits;
    let count = dim * dim;
    let mut elements = Vec::with_capacity(count);
    let mut labels = Vec::with_capacity(count);
    for p in 0..count {
        let digits: Vec<usize> = (0..qubits).rev().map(|q| (p >> (2 * q)) & 3).collect();
        let mut m = CMat::identity(1, 1);
        for &d in &digits {
            m = m.kronecker(&single_qubit(d));
        }
        elements.push(m);
        labels.push(digits.iter().map(|&d| LETTERS[d]).collect());
    }
    Ok(PauliBasis { qubits, dim, elements, labels })
}

impl PauliBasis {
    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of elements, `N²`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CMat] {
        &self.elements
    }

    pub fn element(&self, p: usize) -> &CMat {
        &self.elements[p]
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Row `p`, column `a = i·N + i'` holds `conj(P_p)_{i,i'}`.
    fn analysis_matrix(&self) -> CMat {
        let s = self.len();
        let n = self.dim;
        CMat::from_fn(s, s, |p, a| self.elements[p][(a / n, a % n)].conj())
    }

    /// Row `a`, column `p` holds `(P_p)_{i,i'}`.
    fn synthesis_matrix(&self) -> CMat {
        let s = self.len();
        let n = self.dim;
        CMat::from_fn(s, s, |a, p| self.elements[p][(a / n, a % n)])
    }
}

/// `T̂(P_p, Q_q, R_r)` stored at `(p·N² + q)·N² + r`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierTable {
    qubits: u32,
    coefficients: Vec<C64>,
}

impl FourierTable {
    pub fn zeros(qubits: u32) -> Result<Self> {
        check_qubits(qubits)?;
        let s = 1usize << (2 * qubits);
        Ok(Self { qubits, coefficients: vec![ZERO; s * s * s] })
    }

    pub fn from_coefficients(qubits: u32, coefficients: Vec<C64>) -> Result<Self> {
        check_qubits(qubits)?;
        let s = 1usize << (2 * qubits);
        if coefficients.len() != s * s * s {
            return Err(Error::Dimension { expected: s * s * s, got: coefficients.len() });
        }
        Ok(Self { qubits, coefficients })
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    /// Questions per player, `N²`.
    pub fn side(&self) -> usize {
        1usize << (2 * self.qubits)
    }

    pub fn index(&self, p: usize, q: usize, r: usize) -> usize {
        let s = self.side();
        (p * s + q) * s + r
    }

    pub fn get(&self, p: usize, q: usize, r: usize) -> C64 {
        self.coefficients[self.index(p, q, r)]
    }

    pub fn set(&mut self, p: usize, q: usize, r: usize, value: C64) {
        let idx = self.index(p, q, r);
        self.coefficients[idx] = value;
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.coefficients
    }

    /// `Σ |T̂|²`.
    pub fn squared_norm(&self) -> f64 {
        self.coefficients.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn write_csv<W: Write>(&self, w: W, basis: &PauliBasis) -> Result<()> {
        if basis.qubits() != self.qubits {
            return Err(Error::Dimension { expected: self.side(), got: basis.len() });
        }
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["p_index", "q_index", "r_index", "pauli_p_label", "pauli_q_label", "pauli_r_label", "re", "im"])?;
        let s = self.side();
        for p in 0..s {
            for q in 0..s {
                for r in 0..s {
                    let z = self.get(p, q, r);
                    out.write_record([
                        p.to_string(),
                        q.to_string(),
                        r.to_string(),
                        basis.label(p).to_string(),
                        basis.label(q).to_string(),
                        basis.label(r).to_string(),
                        format!("{:e}", z.re),
                        format!("{:e}", z.im),
                    ])?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }
}

/// Multiply the last axis of an `s×s×s` cube by `m` and rotate it to the front:
/// `[a][b][c] ↦ [r][a][b]` with `out[r][a][b] = Σ_c m[r][c]·in[a][b][c]`.
fn transform_last_and_rotate(cube: &[C64], s: usize, m: &CMat) -> Vec<C64> {
    let cols = s * s;
    // column-major s × s² view: column `ab` is the fibre over c
    const BLOCK: usize = 256;
    let blocks: Vec<CMat> = (0..cols.div_ceil(BLOCK))
        .into_par_iter()
        .map(|blk| {
            let start = blk * BLOCK;
            let len = BLOCK.min(cols - start);
            let v = CMat::from_column_slice(s, len, &cube[start * s..(start + len) * s]);
            m * v
        })
        .collect();
    let mut out = vec![ZERO; s * cols];
    for (blk, prod) in blocks.iter().enumerate() {
        let start = blk * BLOCK;
        for j in 0..prod.ncols() {
            for r in 0..s {
                out[r * cols + start + j] = prod[(r, j)];
            }
        }
    }
    out
}

fn transform_all_modes(mut cube: Vec<C64>, s: usize, m: &CMat) -> Vec<C64> {
    for _ in 0..3 {
        cube = transform_last_and_rotate(&cube, s, m);
    }
    cube
}

/// `T̂(P,Q,R) = ⟨T, P⊗Q⊗R⟩ = Σ T_{(i,i'),(j,j'),(k,k')} conj(P)_{ii'} conj(Q)_{jj'} conj(R)_{kk'}`.
pub fn fourier(t: &Tensor3) -> FourierTable {
    let basis = build_basis(t.qubits()).expect("tensor qubit count already validated");
    fourier_with(t, &basis).expect("basis built for this tensor")
}

pub fn fourier_with(t: &Tensor3, basis: &PauliBasis) -> Result<FourierTable> {
    if basis.qubits() != t.qubits() {
        return Err(Error::Dimension { expected: t.local_dim(), got: basis.dim() });
    }
    let s = basis.len();
    let coefficients = transform_all_modes(t.pair_layout(), s, &basis.analysis_matrix());
    FourierTable::from_coefficients(t.qubits(), coefficients)
}

/// `T = N⁻³ Σ T̂(P,Q,R) P⊗Q⊗R`.
pub fn inverse_fourier(f: &FourierTable) -> Tensor3 {
    let basis = build_basis(f.qubits()).expect("table qubit count already validated");
    let s = basis.len();
    let n3 = (basis.dim() as f64).powi(3);
    let cube = transform_all_modes(f.coefficients.clone(), s, &basis.synthesis_matrix());
    let cube: Vec<C64> = cube.into_iter().map(|z| z / n3).collect();
    Tensor3::from_pair_layout(f.qubits(), &cube).expect("table side matches basis")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, trace_product};
    use crate::tensor::{sample_tensor, SamplerConfig};

    #[test]
    fn single_qubit_order_and_labels() {
        let b = build_basis(1).unwrap();
        assert_eq!(b.len(), 4);
        let labels: Vec<&str> = (0..4).map(|p| b.label(p)).collect();
        assert_eq!(labels, ["I", "X", "Y", "Z"]);
        assert_eq!(b.element(2)[(0, 1)], -I);
        assert_eq!(b.element(3)[(1, 1)], -ONE);
    }

    #[test]
    fn two_qubit_labels_leftmost_most_significant() {
        let b = build_basis(2).unwrap();
        assert_eq!(b.label(1), "IX");
        assert_eq!(b.label(4), "XI");
        assert_eq!(b.label(15), "ZZ");
        assert_eq!(b.element(4), &single_qubit(1).kronecker(&CMat::identity(2, 2)));
    }

    #[test]
    fn elements_are_observables_and_orthogonal() {
        for q in 1..=3 {
            let b = build_basis(q).unwrap();
            let n = b.dim();
            assert_eq!(b.element(0), &CMat::identity(n, n));
            for p in b.elements() {
                assert!(linalg::is_observable(p, 1e-14));
                let unitary = p * p.adjoint();
                assert!(linalg::frobenius(&(unitary - CMat::identity(n, n))) < 1e-14);
            }
            if q <= 2 {
                for (x, p) in b.elements().iter().enumerate() {
                    for (y, r) in b.elements().iter().enumerate() {
                        let ip = trace_product(p, &r.adjoint());
                        let expected = if x == y { n as f64 } else { 0.0 };
                        assert!((ip - C64::new(expected, 0.0)).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_qubit_count() {
        assert!(build_basis(0).is_err());
        assert!(build_basis(5).is_err());
    }

    #[test]
    fn identity_tensor_has_single_coefficient() {
        let t = Tensor3::identity(1).unwrap();
        let f = fourier(&t);
        for (idx, z) in f.coefficients().iter().enumerate() {
            let expected = if idx == 0 { 8.0 } else { 0.0 };
            assert!((z - C64::new(expected, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn product_of_basis_elements() {
        let b = build_basis(1).unwrap();
        let t = Tensor3::from_product(b.element(1), b.element(2), b.element(3)).unwrap();
        let f = fourier_with(&t, &b).unwrap();
        for p in 0..4 {
            for q in 0..4 {
                for r in 0..4 {
                    let expected = if (p, q, r) == (1, 2, 3) { 8.0 } else { 0.0 };
                    assert!((f.get(p, q, r) - C64::new(expected, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    fn direct_coefficient(t: &Tensor3, b: &PauliBasis, p: usize, q: usize, r: usize) -> C64 {
        let k = linalg::kron3(b.element(p), b.element(q), b.element(r));
        // ⟨T, K⟩ over the pair indices: Σ T_{(i,i'),(j,j'),(k,k')} conj(K)_{(ijk),(i'j'k')}
        t.matrix().iter().zip(k.iter()).map(|(a, c)| a * c.conj()).sum()
    }

    #[test]
    fn spot_checks_against_direct_inner_products() {
        let t = sample_tensor(2, &SamplerConfig::gaussian(3)).unwrap();
        let b = build_basis(2).unwrap();
        let f = fourier_with(&t, &b).unwrap();
        let mut rng = linalg::seeded_rng(1, 0);
        use rand::Rng;
        for _ in 0..20 {
            let (p, q, r) = (rng.random_range(0..16), rng.random_range(0..16), rng.random_range(0..16));
            let direct = direct_coefficient(&t, &b, p, q, r);
            assert!((f.get(p, q, r) - direct).norm() <= 1e-9 * direct.norm().max(1.0));
        }
    }

    #[test]
    fn parseval_and_round_trip() {
        let t = sample_tensor(1, &SamplerConfig::gaussian(42)).unwrap();
        let f = fourier(&t);
        let fro2 = t.frobenius_norm().powi(2);
        assert!((f.squared_norm() - 8.0 * fro2).abs() <= 1e-8 * 8.0 * fro2);
        let back = inverse_fourier(&f);
        let err = (back.matrix() - t.matrix()).iter().fold(0.0f64, |m, z| m.max(z.norm()));
        assert!(err < 1e-9);
    }

    #[test]
    fn inverse_of_trivial_tables() {
        let zero = FourierTable::zeros(1).unwrap();
        assert!(inverse_fourier(&zero).is_zero());
        let mut f = FourierTable::zeros(1).unwrap();
        f.set(0, 0, 0, C64::new(8.0, 0.0));
        let t = inverse_fourier(&f);
        assert!(linalg::frobenius(&(t.matrix() - CMat::identity(8, 8))) < 1e-12);
    }

    #[test]
    fn sampled_tensor_coefficients_are_real() {
        let t = sample_tensor(2, &SamplerConfig::gaussian(4)).unwrap();
        let f = fourier(&t);
        let scale = f.coefficients().iter().fold(0.0f64, |m, z| m.max(z.norm()));
        assert!(f.coefficients().iter().all(|z| z.im.abs() <= 1e-10 * scale));
    }

    #[test]
    fn csv_has_header_and_all_rows() {
        let t = sample_tensor(1, &SamplerConfig::gaussian(1)).unwrap();
        let b = build_basis(1).unwrap();
        let mut buf = Vec::new();
        fourier_with(&t, &b).unwrap().write_csv(&mut buf, &b).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "p_index,q_index,r_index,pauli_p_label,pauli_q_label,pauli_r_label,re,im");
        assert_eq!(lines.count(), 64);
    }
}
