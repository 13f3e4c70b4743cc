//! Seedable random generation of states, observables and separable mixtures.
//!
//! Every generator is a pure function of a [`SampleConfig`]: the same config
//! always produces bit-identical output. Stream splitting for concurrent or
//! per-trial use goes through [`SampleConfig::split`], which derives an
//! independent sub-seed with a SplitMix64 round; distinct stream indices under
//! one seed never share a generator state.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::matrix::ComplexMatrix;
use crate::observable::Observable;
use crate::state::QuantumState;
use crate::triple::ObservableTriple;

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("invalid sample config: {reason}")]
    ConfigInvalid { reason: String },
}

/// Seed, dimension and shape parameters for one sampling stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    seed: u64,
    dim: usize,
    rank: usize,
    scale: f64,
}

impl SampleConfig {
    pub fn new(seed: u64, dim: usize) -> Result<Self, SampleError> {
        if dim == 0 {
            return Err(SampleError::ConfigInvalid {
                reason: "dimension must be positive".into(),
            });
        }
        Ok(Self {
            seed,
            dim,
            rank: dim,
            scale: 1.0,
        })
    }

    pub fn with_rank(mut self, rank: usize) -> Result<Self, SampleError> {
        if rank == 0 || rank > self.dim {
            return Err(SampleError::ConfigInvalid {
                reason: format!("rank {rank} must be in 1..={}", self.dim),
            });
        }
        self.rank = rank;
        Ok(self)
    }

    pub fn with_scale(mut self, scale: f64) -> Result<Self, SampleError> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(SampleError::ConfigInvalid {
                reason: format!("scale {scale} must be positive and finite"),
            });
        }
        self.scale = scale;
        Ok(self)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Derive the config for an independent stream. Injective in `stream`
    /// for a fixed seed, so concurrent trials never collide.
    pub fn split(&self, stream: u64) -> Self {
        let mixed = splitmix64(
            self.seed
                .wrapping_add((stream.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        );
        Self {
            seed: mixed,
            ..*self
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn gaussian_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-distributed pure state: a normalized vector of independent complex
/// Gaussians.
pub fn haar_pure_with(rng: &mut ChaCha8Rng, dim: usize) -> QuantumState {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
        if let Ok(state) = QuantumState::pure_normalized(v) {
            return state;
        }
    }
}

pub fn haar_pure(cfg: &SampleConfig) -> QuantumState {
    haar_pure_with(&mut cfg.rng(), cfg.dim)
}

/// rho = G G^dagger / Tr(G G^dagger) with G a dim x rank complex Gaussian
/// matrix. Rank-1 draws are pure states in density form.
pub fn ginibre_with(rng: &mut ChaCha8Rng, dim: usize, rank: usize) -> QuantumState {
    loop {
        let g: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| (0..rank).map(|_| gaussian_complex(rng)).collect())
            .collect();
        let mut rho = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..rank {
                    acc += g[i][k] * g[j][k].conj();
                }
                rho.set(i, j, acc);
            }
        }
        let trace = rho.trace().re;
        if trace <= 1e-12 {
            continue;
        }
        let rho = rho.scale_re(1.0 / trace).hermitized();
        if let Ok(state) = QuantumState::mixed(rho) {
            return state;
        }
    }
}

pub fn ginibre_density(cfg: &SampleConfig) -> QuantumState {
    ginibre_with(&mut cfg.rng(), cfg.dim, cfg.rank)
}

/// Haar unitary via modified Gram-Schmidt on a Ginibre matrix.
pub fn haar_unitary_with(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    'draw: loop {
        let mut cols: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| (0..dim).map(|_| gaussian_complex(rng)).collect())
            .collect();
        for k in 0..dim {
            for prev in 0..k {
                let overlap: Complex64 = cols[prev]
                    .iter()
                    .zip(&cols[k])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                for i in 0..dim {
                    let correction = overlap * cols[prev][i];
                    cols[k][i] -= correction;
                }
            }
            let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                continue 'draw;
            }
            for z in &mut cols[k] {
                *z /= norm;
            }
        }
        let mut u = ComplexMatrix::zeros(dim);
        for (k, col) in cols.iter().enumerate() {
            for i in 0..dim {
                u.set(i, k, col[i]);
            }
        }
        return u;
    }
}

/// Generic Hermitian observable: (G + G^dagger) / 2, scaled.
pub fn random_hermitian_with(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> Observable {
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g.set(i, j, gaussian_complex(rng));
        }
    }
    Observable::new(g.hermitized().scale_re(scale)).expect("symmetrized matrix is Hermitian")
}

pub fn random_hermitian(cfg: &SampleConfig) -> Observable {
    random_hermitian_with(&mut cfg.rng(), cfg.dim, cfg.scale)
}

pub fn random_triple_with(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> ObservableTriple {
    let a = random_hermitian_with(rng, dim, scale);
    let b = random_hermitian_with(rng, dim, scale);
    let c = random_hermitian_with(rng, dim, scale);
    ObservableTriple::new([a, b, c]).expect("common dimension by construction")
}

pub fn random_triple(cfg: &SampleConfig) -> ObservableTriple {
    random_triple_with(&mut cfg.rng(), cfg.dim, cfg.scale)
}

/// H = U D U^dagger with U Haar and D diagonal +-1, so H^2 = I exactly up to
/// round-off. For dim >= 2 at least one eigenvalue of each sign is enforced
/// (an all-equal draw has its first sign flipped).
pub fn random_involutive_with(rng: &mut ChaCha8Rng, dim: usize) -> Observable {
    let u = haar_unitary_with(rng, dim);
    let mut signs: Vec<f64> = (0..dim)
        .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
        .collect();
    if dim >= 2 && signs.iter().all(|&s| s == signs[0]) {
        signs[0] = -signs[0];
    }
    let mut d = ComplexMatrix::zeros(dim);
    for (i, &s) in signs.iter().enumerate() {
        d.set(i, i, Complex64::new(s, 0.0));
    }
    let h = u.matmul(&d).matmul(&u.adjoint()).hermitized();
    Observable::new(h).expect("conjugated real diagonal is Hermitian")
}

pub fn random_involutive_triple_with(rng: &mut ChaCha8Rng, dim: usize) -> ObservableTriple {
    let a = random_involutive_with(rng, dim);
    let b = random_involutive_with(rng, dim);
    let c = random_involutive_with(rng, dim);
    ObservableTriple::new([a, b, c]).expect("common dimension by construction")
}

pub fn random_involutive_triple(cfg: &SampleConfig) -> ObservableTriple {
    random_involutive_triple_with(&mut cfg.rng(), cfg.dim)
}

/// Convex combination of `components` random pure product states with
/// uniform-simplex (Dirichlet(1, ..., 1)) weights. Lives on dim^2.
pub fn random_separable_with(
    rng: &mut ChaCha8Rng,
    dim: usize,
    components: usize,
) -> QuantumState {
    assert!(components >= 1, "at least one component required");
    let mut weights: Vec<f64> = (0..components)
        .map(|_| {
            let u: f64 = rng.gen_range(f64::EPSILON..1.0);
            -u.ln()
        })
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }

    let mut rho = ComplexMatrix::zeros(dim * dim);
    for &w in &weights {
        let mu = haar_pure_with(rng, dim);
        let nu = haar_pure_with(rng, dim);
        let product = mu.density_matrix().kron(&nu.density_matrix());
        rho = rho.add(&product.scale_re(w));
    }
    QuantumState::mixed(rho.hermitized()).expect("convex mix of products is a state")
}

pub fn random_separable(cfg: &SampleConfig, components: usize) -> QuantumState {
    random_separable_with(&mut cfg.rng(), cfg.dim, components)
}
