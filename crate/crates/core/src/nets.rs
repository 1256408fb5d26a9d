//! Constructive ε-nets over the complex unit sphere and over normalized
//! projectors, the product net over projector triples, and the telescoping
//! decomposition of a Hermitian matrix into normalized projectors.
//!
//! A normalized projector is an orthogonal projector divided by the square
//! root of its rank, so it has Frobenius norm 1.

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec, C64};
use rand::Rng;
use rayon::prelude::*;
use std::io::{Read, Write};

/// Consecutive rejected candidates after which the greedy packing stops.
pub const PACKING_PATIENCE: usize = 10_000;
/// Candidates per completion round after the greedy stage.
pub const COMPLETION_DRAWS: usize = 1 << 20;
pub const COMPLETION_ROUNDS: usize = 4;
pub const DEFAULT_NET_SEED: u64 = 0x6e6574;
pub const MAX_SPHERE_DIM: usize = 4;
pub const NET_MAGIC: &[u8; 4] = b"XGN1";

const RANK_TOL: f64 = 1e-9;
const DEDUP_TOL: f64 = 1e-9;

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1], got {eps}")))
    }
}

fn check_projector_dim(dim: usize) -> Result<()> {
    if dim == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedScale(format!("projector nets are only built at N = 2 (got N = {dim})")))
    }
}

#[derive(Debug, Clone)]
pub struct SphereNet {
    dim: usize,
    eps: f64,
    points: Vec<CVec>,
}

/// Greedy maximal ε-packing of the unit sphere in `C^dim`.
///
/// Seeded uniform candidates are kept when they lie farther than `eps` from
/// every kept point; construction stops after [`PACKING_PATIENCE`]
/// consecutive rejections. That leaves an uncovered set of measure about
/// `1/PACKING_PATIENCE`, so completion rounds of [`COMPLETION_DRAWS`]
/// parallel candidates follow, keeping any still uncovered, until a whole
/// round adds nothing or [`COMPLETION_ROUNDS`] have run. A maximal packing is a net.
pub fn sphere_net(dim: usize, eps: f64, seed: u64) -> Result<SphereNet> {
    if dim == 0 || dim > MAX_SPHERE_DIM {
        return Err(Error::UnsupportedScale(format!("sphere nets need 1 <= N <= {MAX_SPHERE_DIM}, got {dim}")));
    }
    check_eps(eps)?;
    let mut rng = linalg::seeded_rng(seed, 0);
    let mut points: Vec<CVec> = Vec::new();
    // For unit vectors ‖u − v‖² = 2 − 2 Re⟨u,v⟩, so "farther than eps" is Re⟨u,v⟩ < 1 − eps²/2.
    let cutoff = 1.0 - 0.5 * eps * eps;
    let mut misses = 0;
    while misses < PACKING_PATIENCE {
        let v = linalg::random_unit_vector(&mut rng, dim);
        if points.iter().all(|p| p.dotc(&v).re < cutoff) {
            points.push(v);
            misses = 0;
        } else {
            misses += 1;
        }
    }
    const BATCH: usize = 1 << 14;
    let mut stream = 1u64;
    for _ in 0..COMPLETION_ROUNDS {
        let before = points.len();
        for _ in 0..COMPLETION_DRAWS / BATCH {
            let fresh: Vec<CVec> = (0..BATCH as u64)
                .into_par_iter()
                .filter_map(|i| {
                    let mut r = linalg::seeded_rng(seed, stream + i);
                    let v = linalg::random_unit_vector(&mut r, dim);
                    points.iter().all(|p| p.dotc(&v).re < cutoff).then_some(v)
                })
                .collect();
            stream += BATCH as u64;
            for v in fresh {
                if points.iter().all(|p| p.dotc(&v).re < cutoff) {
                    points.push(v);
                }
            }
        }
        if points.len() == before {
            break;
        }
    }
    Ok(SphereNet { dim, eps, points })
}

impl SphereNet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn points(&self) -> &[CVec] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn nearest(&self, v: &CVec) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (i, p) in self.points.iter().enumerate() {
            let d = (p - v).norm();
            if d < best.1 {
                best = (i, d);
            }
        }
        best
    }

    /// The volumetric cardinality bound `(1 + 2/ε)^N`, for comparison only.
    pub fn volume_bound(&self) -> f64 {
        (1.0 + 2.0 / self.eps).powi(self.dim as i32)
    }

    /// Monte-Carlo covering check with uniformly random unit vectors.
    pub fn check_covering(&self, samples: usize, seed: u64) -> CoveringReport<CVec> {
        covering(samples, seed, self.eps, |rng| {
            let v = linalg::random_unit_vector(rng, self.dim);
            let d = self.nearest(&v).1;
            (d, v)
        })
    }
}

/// Result of a Monte-Carlo covering check.
#[derive(Debug, Clone)]
pub struct CoveringReport<W> {
    pub samples: usize,
    pub radius: f64,
    pub max_distance: f64,
    /// Sample points farther than `radius` from the net.
    pub failures: Vec<(W, f64)>,
}

impl<W> CoveringReport<W> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn covering<W: Send>(
    samples: usize,
    seed: u64,
    radius: f64,
    probe: impl Fn(&mut rand_chacha::ChaCha8Rng) -> (f64, W) + Sync,
) -> CoveringReport<W> {
    let results: Vec<(f64, W)> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = linalg::seeded_rng(seed, s as u64);
            probe(&mut rng)
        })
        .collect();
    let max_distance = results.iter().fold(0.0f64, |m, r| m.max(r.0));
    let failures = results.into_iter().filter(|r| r.0 > radius).map(|(d, w)| (w, d)).collect();
    CoveringReport { samples, radius, max_distance, failures }
}

/// A normalized projector together with its rank.
#[derive(Debug, Clone)]
pub struct NetProjector {
    pub matrix: CMat,
    pub rank: usize,
}

/// Random normalized projector of rank `rank` (span of Haar-random vectors).
pub fn random_normalized_projector<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> CMat {
    loop {
        let vs: Vec<CVec> = (0..rank).map(|_| linalg::random_unit_vector(rng, dim)).collect();
        let (p, r) = linalg::span_projector(&vs, dim, RANK_TOL);
        if r == rank {
            return p.unscale((r as f64).sqrt());
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProjectorNet {
    dim: usize,
    k: usize,
    eps: f64,
    elements: Vec<NetProjector>,
}

/// Normalized projectors onto spans of `k`-subsets of an `ε/√2`-net of the sphere.
pub fn projector_net(dim: usize, k: usize, eps: f64, seed: u64) -> Result<ProjectorNet> {
    check_projector_dim(dim)?;
    check_eps(eps)?;
    let sphere = sphere_net(dim, eps / std::f64::consts::SQRT_2, seed)?;
    ProjectorNet::from_sphere(&sphere, k, eps)
}

fn push_unique(out: &mut Vec<NetProjector>, p: NetProjector) {
    let dup = out
        .iter()
        .any(|q| q.rank == p.rank && linalg::frobenius(&(&q.matrix - &p.matrix)) < DEDUP_TOL);
    if !dup {
        out.push(p);
    }
}

impl ProjectorNet {
    /// Build `Z^k` from an existing sphere net, which should have radius `eps/√2`.
    pub fn from_sphere(sphere: &SphereNet, k: usize, eps: f64) -> Result<Self> {
        let dim = sphere.dim();
        check_projector_dim(dim)?;
        check_eps(eps)?;
        if k == 0 || k > dim {
            return Err(Error::InvalidParameter(format!("projector rank must lie in 1..={dim}, got {k}")));
        }
        let pts = sphere.points();
        let mut elements = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        if pts.len() < k {
            return Ok(Self { dim, k, eps, elements });
        }
        loop {
            let vs: Vec<CVec> = idx.iter().map(|&i| pts[i].clone()).collect();
            let (p, rank) = linalg::span_projector(&vs, dim, RANK_TOL);
            push_unique(&mut elements, NetProjector { matrix: p.unscale((rank as f64).sqrt()), rank });
            // next k-subset in lexicographic order
            let mut pos = k;
            while pos > 0 && idx[pos - 1] == pts.len() - k + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for j in pos..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        Ok(Self { dim, k, eps, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_rank(&self) -> usize {
        self.k
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn elements(&self) -> &[NetProjector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The cardinality bound `2 (5/ε)^{kN}`, for comparison only.
    pub fn size_bound(&self) -> f64 {
        2.0 * (5.0 / self.eps).powi((self.k * self.dim) as i32)
    }

    pub fn nearest(&self, x: &CMat) -> (usize, f64) {
        nearest_in(self.elements.iter().map(|e| &e.matrix), x)
    }

    /// Monte-Carlo covering check with random normalized projectors of rank `k`.
    pub fn check_covering(&self, samples: usize, seed: u64) -> CoveringReport<CMat> {
        covering(samples, seed, self.eps, |rng| {
            let x = random_normalized_projector(rng, self.dim, self.k);
            (self.nearest(&x).1, x)
        })
    }

    /// Write the elements in the `XGN1` format: magic, `u32` N, `u32` count,
    /// then each `N×N` matrix row-major as little-endian `f64` pairs.
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        let mats: Vec<&CMat> = self.elements.iter().map(|e| &e.matrix).collect();
        write_matrices(w, self.dim, &mats)
    }
}

fn nearest_in<'a>(candidates: impl Iterator<Item = &'a CMat>, x: &CMat) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (i, c) in candidates.enumerate() {
        let d = linalg::frobenius(&(c - x));
        if d < best.1 {
            best = (i, d);
        }
    }
    best
}

pub fn write_matrices(w: &mut impl Write, dim: usize, mats: &[&CMat]) -> Result<()> {
    w.write_all(NET_MAGIC)?;
    w.write_all(&(dim as u32).to_le_bytes())?;
    w.write_all(&(mats.len() as u32).to_le_bytes())?;
    for m in mats {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::Dimension { expected: dim, got: m.nrows() });
        }
        for r in 0..dim {
            for c in 0..dim {
                w.write_all(&m[(r, c)].re.to_le_bytes())?;
                w.write_all(&m[(r, c)].im.to_le_bytes())?;
            }
        }
    }
    Ok(())
}

pub fn read_matrices(r: &mut impl Read) -> Result<(usize, Vec<CMat>)> {
    let eof = |e: std::io::Error| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            Error::Format("net file is truncated".into())
        } else {
            Error::Io(e)
        }
    };
    let mut head = [0u8; 12];
    r.read_exact(&mut head).map_err(eof)?;
    if &head[..4] != NET_MAGIC {
        return Err(Error::Format("bad magic, expected XGN1".into()));
    }
    let dim = u32::from_le_bytes(head[4..8].try_into().unwrap()) as usize;
    let count = u32::from_le_bytes(head[8..12].try_into().unwrap()) as usize;
    let mut mats = Vec::with_capacity(count);
    let mut buf = vec![0u8; dim * dim * 16];
    for _ in 0..count {
        r.read_exact(&mut buf).map_err(eof)?;
        let entries: Vec<C64> = buf
            .chunks_exact(16)
            .map(|b| C64::new(f64::from_le_bytes(b[..8].try_into().unwrap()), f64::from_le_bytes(b[8..].try_into().unwrap())))
            .collect();
        mats.push(CMat::from_row_slice(dim, dim, &entries));
    }
    Ok((dim, mats))
}

/// The union over `(k, ℓ, m) ∈ [N]³` of `Z^k × Z^ℓ × Z^m`, kept as its factors.
#[derive(Debug, Clone)]
pub struct TripleNet {
    dim: usize,
    eps: f64,
    levels: Vec<ProjectorNet>,
}

/// One element of a [`TripleNet`]: references to the three factors and the
/// levels `(k, ℓ, m)` they come from.
#[derive(Debug, Clone, Copy)]
pub struct TripleElement<'a> {
    pub x: &'a NetProjector,
    pub y: &'a NetProjector,
    pub z: &'a NetProjector,
    pub levels: (usize, usize, usize),
}

impl TripleElement<'_> {
    /// `X⊗Y⊗Z` as an `N³×N³` matrix.
    pub fn product(&self) -> CMat {
        linalg::kron3(&self.x.matrix, &self.y.matrix, &self.z.matrix)
    }
}

pub fn triple_net(dim: usize, eps: f64, seed: u64) -> Result<TripleNet> {
    check_projector_dim(dim)?;
    check_eps(eps)?;
    let sphere = sphere_net(dim, eps / std::f64::consts::SQRT_2, seed)?;
    let levels = (1..=dim).map(|k| ProjectorNet::from_sphere(&sphere, k, eps)).collect::<Result<_>>()?;
    Ok(TripleNet { dim, eps, levels })
}

impl TripleNet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `Z^k` for `k = 1..=N`.
    pub fn level(&self, k: usize) -> &ProjectorNet {
        &self.levels[k - 1]
    }

    /// `Σ_{k,ℓ,m} |Z^k| |Z^ℓ| |Z^m|`.
    pub fn count(&self) -> usize {
        let per: usize = self.levels.iter().map(|l| l.len()).sum();
        per * per * per
    }

    /// Streams every triple without materializing products.
    pub fn iter(&self) -> impl Iterator<Item = TripleElement<'_>> + '_ {
        let ks = 1..=self.dim;
        ks.clone().flat_map(move |k| {
            ks.clone().flat_map(move |l| {
                (1..=self.dim).flat_map(move |m| {
                    let (zk, zl, zm) = (self.level(k), self.level(l), self.level(m));
                    zk.elements().iter().flat_map(move |x| {
                        zl.elements().iter().flat_map(move |y| {
                            zm.elements().iter().map(move |z| TripleElement { x, y, z, levels: (k, l, m) })
                        })
                    })
                })
            })
        })
    }

    /// Distinct factor matrices across all levels.
    pub fn factors(&self) -> Vec<&CMat> {
        let mut out: Vec<&CMat> = Vec::new();
        for e in self.levels.iter().flat_map(|l| l.elements()) {
            if !out.iter().any(|m| linalg::frobenius(&(*m - &e.matrix)) < DEDUP_TOL) {
                out.push(&e.matrix);
            }
        }
        out
    }

    /// A net element close to `X⊗Y⊗Z` for normalized projectors of ranks
    /// `(k, ℓ, m)`, and its Frobenius distance.
    ///
    /// Factors are matched independently; for unit-norm factors the distance is
    /// `√(2 − 2 Re(⟨X,X̃⟩⟨Y,Ỹ⟩⟨Z,Z̃⟩))`.
    pub fn nearest(&self, x: &NetProjector, y: &NetProjector, z: &NetProjector) -> (TripleElement<'_>, f64) {
        let pick = |p: &NetProjector| {
            let level = self.level(p.rank.clamp(1, self.dim));
            &level.elements()[level.nearest(&p.matrix).0]
        };
        let (nx, ny, nz) = (pick(x), pick(y), pick(z));
        let inner = |a: &CMat, b: &CMat| linalg::trace_product(&a.adjoint(), b);
        let overlap = inner(&x.matrix, &nx.matrix) * inner(&y.matrix, &ny.matrix) * inner(&z.matrix, &nz.matrix);
        let d2 = (2.0 - 2.0 * overlap.re).max(0.0);
        (TripleElement { x: nx, y: ny, z: nz, levels: (nx.rank, ny.rank, nz.rank) }, d2.sqrt())
    }

    /// Monte-Carlo covering of random normalized projector triples at radius `3ε`.
    pub fn check_covering(&self, samples: usize, seed: u64) -> CoveringReport<[CMat; 3]> {
        covering(samples, seed, 3.0 * self.eps, |rng| {
            let mut draw = || {
                let rank = rng.random_range(1..=self.dim);
                NetProjector { matrix: random_normalized_projector(rng, self.dim, rank), rank }
            };
            let (x, y, z) = (draw(), draw(), draw());
            let d = self.nearest(&x, &y, &z).1;
            (d, [x.matrix, y.matrix, z.matrix])
        })
    }
}

#[derive(Debug, Clone)]
pub struct HermTerm {
    /// Signed coefficient.
    pub lambda: f64,
    /// Normalized projector onto the top (or bottom) eigenspace.
    pub projector: CMat,
    pub rank: usize,
}

#[derive(Debug, Clone, Default)]
pub struct HermDecomposition {
    pub terms: Vec<HermTerm>,
}

impl HermDecomposition {
    pub fn l1_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.lambda.abs()).sum()
    }

    pub fn reconstruct(&self, dim: usize) -> CMat {
        let mut out = CMat::zeros(dim, dim);
        for t in &self.terms {
            out += t.projector.scale(t.lambda);
        }
        out
    }

    /// Columns `term_index, lambda, rank`, then `re_r_c, im_r_c` per entry, row-major.
    pub fn write_csv<W: Write>(&self, w: W, dim: usize) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["term_index".to_string(), "lambda".into(), "rank".into()];
        for r in 0..dim {
            for c in 0..dim {
                header.push(format!("re_{r}_{c}"));
                header.push(format!("im_{r}_{c}"));
            }
        }
        out.write_record(&header)?;
        for (i, t) in self.terms.iter().enumerate() {
            let mut row = vec![i.to_string(), format!("{:e}", t.lambda), t.rank.to_string()];
            for r in 0..dim {
                for c in 0..dim {
                    row.push(format!("{:e}", t.projector[(r, c)].re));
                    row.push(format!("{:e}", t.projector[(r, c)].im));
                }
            }
            out.write_record(&row)?;
        }
        out.flush()?;
        Ok(())
    }
}

const GAP_TOL: f64 = 1e-12;
const ZERO_EIG: f64 = 1e-14;

/// Write a Hermitian `X` with `‖X‖_F ≤ 1` as `Σ λ_x X_x` over normalized projectors.
///
/// Positive and negative eigenvalues are handled separately. For the positive
/// ones sorted as `λ₁ ≥ … ≥ λ_p`, term `m` is `(λ_m − λ_{m+1})·√m` times the
/// normalized projector onto the top `m` eigenvectors, with `λ_{p+1} = 0`.
pub fn lorentz_decompose(x: &CMat) -> Result<HermDecomposition> {
    let n = x.nrows();
    if n != x.ncols() {
        return Err(Error::Dimension { expected: n, got: x.ncols() });
    }
    if n < 2 {
        return Err(Error::InvalidParameter("decomposition needs N > 1".into()));
    }
    let scale = x.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(1.0);
    if linalg::hermitian_defect(x) > 1e-10 * scale {
        return Err(Error::InvalidParameter("matrix is not Hermitian".into()));
    }
    let fro = linalg::frobenius(x);
    if fro > 1.0 + 1e-12 {
        return Err(Error::RescaleRequired(fro));
    }
    let (values, vectors) = linalg::hermitian_eigh(x);
    let mut terms = Vec::new();
    for sign in [1.0, -1.0] {
        // eigen-indices of this sign, largest magnitude first
        let mut idx: Vec<usize> = (0..n).filter(|&i| sign * values[i] > ZERO_EIG).collect();
        idx.sort_by(|&a, &b| (sign * values[b]).total_cmp(&(sign * values[a])));
        let mut proj = CMat::zeros(n, n);
        for (m, &i) in idx.iter().enumerate() {
            let u = vectors.column(i);
            proj += u * u.adjoint();
            let here = sign * values[i];
            let next = idx.get(m + 1).map_or(0.0, |&j| sign * values[j]);
            let gap = here - next;
            if gap < GAP_TOL {
                continue;
            }
            let rank = m + 1;
            let root = (rank as f64).sqrt();
            terms.push(HermTerm { lambda: sign * gap * root, projector: proj.unscale(root), rank });
        }
    }
    Ok(HermDecomposition { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{seeded_rng, ONE, ZERO};

    #[test]
    fn circle_net_has_unit_points_and_covers() {
        let net = sphere_net(1, 1.0, 3).unwrap();
        assert!(net.points().iter().all(|p| (p.norm() - 1.0).abs() < 1e-12));
        // a maximal 1-packing of the circle has at least 4 points
        assert!(net.len() >= 4);
        assert!(net.check_covering(2000, 1).passed());
    }

    #[test]
    fn sphere_net_scale_guard() {
        assert!(matches!(sphere_net(5, 0.5, 0), Err(Error::UnsupportedScale(_))));
        assert!(sphere_net(2, 0.0, 0).is_err());
        assert!(sphere_net(2, 1.5, 0).is_err());
    }

    #[test]
    fn sphere_net_points_are_separated() {
        let net = sphere_net(2, 0.5, 1).unwrap();
        for (i, a) in net.points().iter().enumerate() {
            for b in &net.points()[..i] {
                assert!((a - b).norm() > 0.5 - 1e-12);
            }
        }
    }

    #[test]
    fn rank_one_net_elements() {
        let net = projector_net(2, 1, 0.5, 0).unwrap();
        for e in net.elements() {
            assert_eq!(e.rank, 1);
            assert!((linalg::frobenius(&e.matrix) - 1.0).abs() < 1e-12);
            assert!(linalg::hermitian_defect(&e.matrix) < 1e-12);
        }
        let (_, d) = net.nearest(&net.elements()[3].matrix);
        assert_eq!(d, 0.0);
    }

    #[test]
    fn full_rank_level_is_scaled_identity() {
        let net = projector_net(2, 2, 0.5, 0).unwrap();
        let target = CMat::identity(2, 2).unscale(2f64.sqrt());
        assert!(net.elements().iter().any(|e| e.rank == 2 && linalg::frobenius(&(&e.matrix - &target)) < 1e-9));
    }

    #[test]
    fn projector_net_rejects_other_dims() {
        assert!(matches!(projector_net(4, 1, 0.5, 0), Err(Error::UnsupportedScale(_))));
        assert!(projector_net(2, 3, 0.5, 0).is_err());
    }

    #[test]
    fn normalized_projector_elements_are_idempotent_after_rescaling() {
        let tn = triple_net(2, 0.5, 0).unwrap();
        for k in 1..=2 {
            for e in tn.level(k).elements() {
                let root = (e.rank as f64).sqrt();
                let p = e.matrix.scale(root);
                assert!(linalg::frobenius(&(&p * &p - &p)) < 1e-10);
            }
        }
    }

    #[test]
    fn triple_net_count_and_norms() {
        let tn = triple_net(2, 0.8, 2).unwrap();
        let per: usize = (1..=2).map(|k| tn.level(k).len()).sum();
        assert_eq!(tn.count(), per * per * per);
        let mut seen = 0;
        for e in tn.iter() {
            if seen % 97 == 0 {
                assert!((linalg::frobenius(&e.product()) - 1.0).abs() < 1e-12);
            }
            seen += 1;
        }
        assert_eq!(seen, tn.count());
    }

    #[test]
    fn factorized_distance_matches_kronecker() {
        let tn = triple_net(2, 0.5, 0).unwrap();
        let mut rng = seeded_rng(5, 0);
        for _ in 0..20 {
            let mut draw = |rank| NetProjector { matrix: random_normalized_projector(&mut rng, 2, rank), rank };
            let (x, y, z) = (draw(1), draw(2), draw(1));
            let (e, d) = tn.nearest(&x, &y, &z);
            let direct = linalg::frobenius(&(linalg::kron3(&x.matrix, &y.matrix, &z.matrix) - e.product()));
            assert!((d - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn net_file_round_trip() {
        let net = projector_net(2, 1, 0.8, 0).unwrap();
        let mut buf = Vec::new();
        net.write_to(&mut buf).unwrap();
        let (dim, mats) = read_matrices(&mut buf.as_slice()).unwrap();
        assert_eq!(dim, 2);
        assert_eq!(mats.len(), net.len());
        assert_eq!(mats[0], net.elements()[0].matrix);
    }

    #[test]
    fn lorentz_on_projector_is_single_term() {
        let p = CMat::from_diagonal(&CVec::from_vec(vec![ONE, ONE, ZERO])).unscale(2f64.sqrt());
        let d = lorentz_decompose(&p).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert!((d.terms[0].lambda - 1.0).abs() < 1e-12);
        assert_eq!(d.terms[0].rank, 2);
    }

    #[test]
    fn lorentz_on_signed_diagonal() {
        let h = 1.0 / 2f64.sqrt();
        let x = CMat::from_diagonal(&CVec::from_vec(vec![C64::new(h, 0.0), C64::new(-h, 0.0)]));
        let d = lorentz_decompose(&x).unwrap();
        assert_eq!(d.terms.len(), 2);
        let mut lambdas: Vec<f64> = d.terms.iter().map(|t| t.lambda).collect();
        lambdas.sort_by(f64::total_cmp);
        assert!((lambdas[0] + h).abs() < 1e-12 && (lambdas[1] - h).abs() < 1e-12);
        assert!((d.l1_norm() - 2f64.sqrt()).abs() < 1e-12);
        assert!(d.l1_norm() <= 4.0 * 2f64.ln().sqrt());
    }

    #[test]
    fn lorentz_zero_and_errors() {
        assert!(lorentz_decompose(&CMat::zeros(3, 3)).unwrap().terms.is_empty());
        assert!(matches!(lorentz_decompose(&CMat::identity(2, 2)), Err(Error::RescaleRequired(_))));
        assert!(lorentz_decompose(&CMat::identity(1, 1)).is_err());
    }

    #[test]
    fn lorentz_reconstructs_random_inputs() {
        let mut rng = seeded_rng(9, 0);
        for n in [2, 4, 8, 16] {
            for _ in 0..50 {
                let h = linalg::random_hermitian(&mut rng, n);
                let x = h.unscale(linalg::frobenius(&h) * (1.0 + rng.random::<f64>()));
                let d = lorentz_decompose(&x).unwrap();
                assert!(linalg::frobenius(&(d.reconstruct(n) - &x)) < 1e-10);
                let ln = (n as f64).ln();
                assert!(d.l1_norm() <= 4.0 * ln.sqrt());
                assert!(d.l1_norm() <= 2.0 * (2.0 + (ln / 2.0).sqrt()));
            }
        }
    }

    #[test]
    fn decomposition_csv_columns() {
        let x = CMat::from_diagonal(&CVec::from_vec(vec![C64::new(0.6, 0.0), C64::new(-0.3, 0.0)]));
        let mut buf = Vec::new();
        lorentz_decompose(&x).unwrap().write_csv(&mut buf, 2).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("term_index,lambda,rank,re_0_0,im_0_0,"));
        assert_eq!(text.lines().count(), 3);
    }
}
