//! Free-space dyadic Green's tensor and the pairwise coherent (J) and
//! dissipative (Γ) coupling matrices.
//!
//! The closed-form tensor for a point dipole at the origin is
//!
//! ```text
//! G(r, ω0) = e^{ik0 r} / (4π k0² r³) ·
//!     [ (k0²r² + i k0 r − 1) 1₃ − (k0²r² + 3 i k0 r − 3) r̂⊗r̂ ]
//! ```
//!
//! and the projected coupling between emitters n, m with dipole
//! orientations p_n, p_m is `G_nm = p_n† · G(r_nm) · p_m`, giving
//! `J_nm = −(3πΓ0/k0) Re G_nm` and `Γ_nm = (6πΓ0/k0) Im G_nm`.

use ndarray::Array2;
use ndarray_linalg::Eigh;
use num_complex::Complex64 as C64;

use crate::error::{Result, RingsimError};
use crate::geometry::{EmitterEnsemble, K0};

/// Separations below this (in λ0) raise an error instead of returning
/// huge finite values.
pub const MIN_SEPARATION: f64 = 1e-6;

/// The 3x3 dyadic Green's tensor at displacement `r` from the source.
pub fn green_tensor(r: [f64; 3], k0: f64) -> Result<[[C64; 3]; 3]> {
    let r_norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if r_norm < MIN_SEPARATION {
        return Err(RingsimError::SingularSeparation(r_norm));
    }
    let kr = k0 * r_norm;
    let kr2 = kr * kr;
    let phase = C64::new(0.0, kr).exp();
    let prefactor = phase / (4.0 * std::f64::consts::PI * k0 * k0 * r_norm.powi(3));
    let iso = C64::new(kr2 - 1.0, kr);
    let dyad = C64::new(kr2 - 3.0, 3.0 * kr);
    let rhat = [r[0] / r_norm, r[1] / r_norm, r[2] / r_norm];
    let mut g = [[C64::new(0.0, 0.0); 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            let delta = if a == b { 1.0 } else { 0.0 };
            g[a][b] = prefactor * (iso * delta - dyad * rhat[a] * rhat[b]);
        }
    }
    Ok(g)
}

/// Projected Green's function `p_n† · G(r_nm) · p_m`.
pub fn green_projected(r_nm: [f64; 3], p_n: &[C64; 3], p_m: &[C64; 3]) -> Result<C64> {
    let g = green_tensor(r_nm, K0)?;
    let mut acc = C64::new(0.0, 0.0);
    for a in 0..3 {
        for b in 0..3 {
            acc += p_n[a].conj() * g[a][b] * p_m[b];
        }
    }
    Ok(acc)
}

/// Coherent coupling J_nm in Γ0 units between two emitters.
pub fn coherent_coupling(r_nm: [f64; 3], p_n: &[C64; 3], p_m: &[C64; 3]) -> Result<f64> {
    Ok(-3.0 * std::f64::consts::PI / K0 * green_projected(r_nm, p_n, p_m)?.re)
}

/// Dissipative coupling Γ_nm in Γ0 units between two emitters.
pub fn dissipative_coupling(r_nm: [f64; 3], p_n: &[C64; 3], p_m: &[C64; 3]) -> Result<f64> {
    Ok(6.0 * std::f64::consts::PI / K0 * green_projected(r_nm, p_n, p_m)?.im)
}

/// Pairwise coupling matrices for an ensemble. Computed once per geometry;
/// disorder only touches the Hamiltonian diagonal downstream.
#[derive(Clone, Debug)]
pub struct CouplingMatrices {
    /// Coherent couplings, real symmetric, zero diagonal.
    pub j: Array2<f64>,
    /// Dissipative couplings, real symmetric, diagonal = per-emitter Γ0.
    pub gamma: Array2<f64>,
    pub k0: f64,
}

impl CouplingMatrices {
    pub fn len(&self) -> usize {
        self.j.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.j.nrows() == 0
    }

    /// Minimum eigenvalue of Γ; physical dissipation requires this to be
    /// non-negative up to roundoff.
    pub fn min_gamma_eigenvalue(&self) -> Result<f64> {
        let (vals, _) = self
            .gamma
            .eigh(ndarray_linalg::UPLO::Lower)
            .map_err(|e| RingsimError::Eigensolver(e.to_string()))?;
        Ok(vals.iter().cloned().fold(f64::INFINITY, f64::min))
    }
}

/// Assemble J and Γ for the whole ensemble. The diagonal shift J_nn is
/// set to zero (it only renormalizes ω0) and Γ_nn is the vacuum decay
/// rate of each emitter.
pub fn coupling_matrices(ensemble: &EmitterEnsemble) -> Result<CouplingMatrices> {
    let n = ensemble.len();
    let mut j = Array2::<f64>::zeros((n, n));
    let mut gamma = Array2::<f64>::zeros((n, n));
    for a in 0..n {
        j[[a, a]] = 0.0;
        gamma[[a, a]] = ensemble.emitters[a].decay_rate;
        for b in (a + 1)..n {
            let pa = ensemble.emitters[a].position;
            let pb = ensemble.emitters[b].position;
            let r = [pa[0] - pb[0], pa[1] - pb[1], pa[2] - pb[2]];
            let g = match green_projected(r, &ensemble.emitters[a].polarization, &ensemble.emitters[b].polarization) {
                Err(RingsimError::SingularSeparation(s)) => {
                    return Err(RingsimError::Overlap(a, b, s))
                }
                other => other?,
            };
            let jv = -3.0 * std::f64::consts::PI / K0 * g.re;
            let gv = 6.0 * std::f64::consts::PI / K0 * g.im;
            j[[a, b]] = jv;
            j[[b, a]] = jv;
            gamma[[a, b]] = gv;
            gamma[[b, a]] = gv;
        }
    }
    Ok(CouplingMatrices { j, gamma, k0: K0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_geometry, build_ring, circular_polarization, GeometrySpec};
    use approx::assert_relative_eq;

    /// Hand-expanded small-argument series for the dissipative coupling.
    ///
    /// With x = k0·r and q = |p†·r̂|² the imaginary part of the projected
    /// tensor expands to Im[...] = (2/3)x³ + (q−2)/15·x⁵ + O(x⁷), so
    /// Γ(x) = 1 + (q−2)/10·x² + O(x⁴). Derived independently of the
    /// closed-form implementation above.
    fn gamma_series_oracle(kr: f64, parallel_frac: f64) -> f64 {
        1.0 + (parallel_frac - 2.0) / 10.0 * kr * kr
    }

    #[test]
    fn small_separation_limit_reproduces_vacuum_rate() {
        let p = circular_polarization();
        // series accuracy O(kr^4) at small separations along x, q = 1/2
        for r in [1e-2, 1e-3] {
            let g = dissipative_coupling([r, 0.0, 0.0], &p, &p).unwrap();
            let kr = K0 * r;
            assert_relative_eq!(g, gamma_series_oracle(kr, 0.5), epsilon = 10.0 * kr.powi(4));
        }
        let g = dissipative_coupling([1e-4, 0.0, 0.0], &p, &p).unwrap();
        assert_relative_eq!(g, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn coherent_coupling_at_d006_is_minus_8p4() {
        let p = circular_polarization();
        let j = coherent_coupling([0.06, 0.0, 0.0], &p, &p).unwrap();
        assert!((j + 8.4).abs() / 8.4 < 0.03, "J = {j}");
    }

    #[test]
    fn far_field_falloff() {
        let p = circular_polarization();
        let near = green_projected([0.1, 0.0, 0.0], &p, &p).unwrap().norm();
        let far = green_projected([100.0, 0.0, 0.0], &p, &p).unwrap().norm();
        assert!(far < 1e-2 * near);
    }

    #[test]
    fn near_field_one_over_r_cubed_scaling() {
        let p = circular_polarization();
        let j1 = coherent_coupling([0.01, 0.0, 0.0], &p, &p).unwrap();
        let j2 = coherent_coupling([0.02, 0.0, 0.0], &p, &p).unwrap();
        let ratio = (j1 / j2).abs();
        assert!((ratio - 8.0).abs() / 8.0 < 0.15, "ratio = {ratio}");
    }

    #[test]
    fn singular_separation_guard() {
        let p = circular_polarization();
        assert!(matches!(
            green_projected([1e-8, 0.0, 0.0], &p, &p),
            Err(RingsimError::SingularSeparation(_))
        ));
    }

    #[test]
    fn single_emitter_matrices() {
        let ens = build_geometry(&GeometrySpec::FreePair { d: 0.06 }).unwrap();
        let single = EmitterEnsemble {
            emitters: vec![ens.emitters[0].clone()],
            ring_index: vec![None],
            metadata: ens.metadata.clone(),
        };
        let c = coupling_matrices(&single).unwrap();
        assert_eq!(c.j[[0, 0]], 0.0);
        assert_eq!(c.gamma[[0, 0]], 1.0);
    }

    use crate::geometry::EmitterEnsemble;

    #[test]
    fn matrices_symmetric_and_bounded() {
        let ring = build_ring(9, 0.05, [0.0; 3], 0.0).unwrap();
        let c = coupling_matrices(&ring).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_relative_eq!(c.j[[a, b]], c.j[[b, a]], epsilon = 1e-12);
                assert_relative_eq!(c.gamma[[a, b]], c.gamma[[b, a]], epsilon = 1e-12);
                assert!(c.gamma[[a, b]] >= -1.0 - 1e-9 && c.gamma[[a, b]] <= 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn gamma_positive_semidefinite_random_cloud() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        let emitters: Vec<_> = (0..20)
            .map(|_| {
                let p = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
                crate::geometry::DipoleEmitter::new(p, crate::geometry::Role::Lattice)
            })
            .collect();
        let ring = build_ring(3, 0.1, [0.0; 3], 0.0).unwrap();
        let cloud = EmitterEnsemble {
            emitters,
            ring_index: vec![None; 20],
            metadata: ring.metadata.clone(),
        };
        let c = coupling_matrices(&cloud).unwrap();
        assert!(c.min_gamma_eigenvalue().unwrap() >= -1e-9);
    }

    #[test]
    fn ring_coupling_is_circulant() {
        let ring = build_ring(9, 0.05, [0.0; 3], 0.0).unwrap();
        let c = coupling_matrices(&ring).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                let shift = (b + 9 - a) % 9;
                assert_relative_eq!(c.j[[a, b]], c.j[[0, shift]], epsilon = 1e-12);
                assert_relative_eq!(c.gamma[[a, b]], c.gamma[[0, shift]], epsilon = 1e-12);
            }
        }
    }
}
