//! Assembly of the non-Hermitian effective Hamiltonian and the coherent
//! drive vector.
//!
//! In the rotating frame at ω0 the single-excitation generator is
//! `H_nm = J_nm − (i/2)Γ_nm` for n ≠ m and
//! `H_nn = Δ_n − (i/2)(Γ0_n + Γ_T,n)` on the diagonal, where Δ_n is the
//! donor/acceptor detuning or the lattice disorder offset.

use ndarray::{Array1, Array2};
use ndarray_linalg::Eigh;
use num_complex::Complex64 as C64;

use crate::coupling::CouplingMatrices;
use crate::error::{Result, RingsimError};
use crate::geometry::EmitterEnsemble;

#[derive(Clone, Debug)]
pub struct EffectiveHamiltonian {
    pub matrix: Array2<C64>,
    /// Per-emitter trapping rates (zero everywhere except the acceptor).
    pub trap_rates: Array1<f64>,
    pub donor: Option<usize>,
    pub acceptor: Option<usize>,
    pub has_trap: bool,
    pub has_disorder: bool,
}

impl EffectiveHamiltonian {
    pub fn len(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.nrows() == 0
    }

    /// Total dissipation matrix `Γ_tot = −2 · Im H` (vacuum plus trap).
    pub fn dissipation_matrix(&self) -> Array2<f64> {
        self.matrix.mapv(|h| -2.0 * h.im)
    }

    /// Radiative dissipation matrix: `Γ_tot` with the trap diagonal removed.
    pub fn radiative_dissipation_matrix(&self) -> Array2<f64> {
        let mut g = self.dissipation_matrix();
        for (i, t) in self.trap_rates.iter().enumerate() {
            g[[i, i]] -= t;
        }
        g
    }

    /// Minimum eigenvalue of the dissipation matrix; must be ≥ −1e-9 for a
    /// physical decay operator (this guarantees monotone norm decay).
    pub fn min_dissipation_eigenvalue(&self) -> Result<f64> {
        let (vals, _) = self
            .dissipation_matrix()
            .eigh(ndarray_linalg::UPLO::Lower)
            .map_err(|e| RingsimError::Eigensolver(e.to_string()))?;
        Ok(vals.iter().cloned().fold(f64::INFINITY, f64::min))
    }
}

/// Assemble the effective Hamiltonian from an ensemble and its coupling
/// matrices. Donor/acceptor rows use the same Green's-function couplings
/// as the lattice (each pair counted once).
pub fn assemble_effective(
    ensemble: &EmitterEnsemble,
    couplings: &CouplingMatrices,
) -> Result<EffectiveHamiltonian> {
    let n = ensemble.len();
    if couplings.len() != n {
        return Err(RingsimError::DimensionMismatch(format!(
            "ensemble has {n} emitters but couplings are {}x{}",
            couplings.len(),
            couplings.len()
        )));
    }
    let mut matrix = Array2::<C64>::zeros((n, n));
    for a in 0..n {
        for b in 0..n {
            if a == b {
                let e = &ensemble.emitters[a];
                matrix[[a, a]] = C64::new(e.detuning, -0.5 * (e.decay_rate + e.trap_rate));
            } else {
                matrix[[a, b]] = C64::new(couplings.j[[a, b]], -0.5 * couplings.gamma[[a, b]]);
            }
        }
    }
    let trap_rates: Array1<f64> = ensemble.emitters.iter().map(|e| e.trap_rate).collect();
    let has_trap = trap_rates.iter().any(|&t| t > 0.0);
    let has_disorder = ensemble
        .emitters
        .iter()
        .any(|e| e.role == crate::geometry::Role::Lattice && e.detuning != 0.0);
    Ok(EffectiveHamiltonian {
        matrix,
        trap_rates,
        donor: ensemble.donor_index(),
        acceptor: ensemble.acceptor_index(),
        has_trap,
        has_disorder,
    })
}

/// Gaussian coherent drive amplitudes, `Ω_i = Ω0 exp(−|r_c − r_i|²/2w²)`.
#[derive(Clone, Debug)]
pub struct DriveVector {
    pub amplitudes: Array1<f64>,
    pub rabi: f64,
    pub waist: f64,
    pub center: [f64; 3],
}

impl DriveVector {
    pub fn as_complex(&self) -> Array1<C64> {
        self.amplitudes.mapv(|a| C64::new(a, 0.0))
    }
}

/// Build the drive vector for a Gaussian beam of waist `w` centered at
/// `center`. The weak-drive model assumes Ω0 ≪ Γ0; a warning is printed
/// above 0.1Γ0.
pub fn gaussian_drive(
    ensemble: &EmitterEnsemble,
    rabi: f64,
    waist: f64,
    center: [f64; 3],
) -> Result<DriveVector> {
    if rabi <= 0.0 || waist <= 0.0 {
        return Err(RingsimError::InvalidArgument(format!(
            "drive needs rabi > 0 and waist > 0, got rabi={rabi}, waist={waist}"
        )));
    }
    if rabi > 0.1 {
        eprintln!("warning: rabi = {rabi} exceeds 0.1 Γ0; the single-excitation model may not hold");
    }
    let amplitudes = ensemble
        .emitters
        .iter()
        .map(|e| {
            let dx = e.position[0] - center[0];
            let dy = e.position[1] - center[1];
            let dz = e.position[2] - center[2];
            rabi * (-(dx * dx + dy * dy + dz * dz) / (2.0 * waist * waist)).exp()
        })
        .collect::<Array1<f64>>();
    Ok(DriveVector {
        amplitudes,
        rabi,
        waist,
        center,
    })
}

/// Test-oracle Hamiltonian for the ideal Dicke limit: `J_nm = 0` and
/// `Γ_nm = Γ0` for every pair, including the diagonal.
pub fn ideal_dicke_hamiltonian(n: usize) -> EffectiveHamiltonian {
    let matrix = Array2::from_shape_fn((n, n), |_| C64::new(0.0, -0.5));
    EffectiveHamiltonian {
        matrix,
        trap_rates: Array1::zeros(n),
        donor: None,
        acceptor: None,
        has_trap: false,
        has_disorder: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::coupling_matrices;
    use crate::geometry::{build_geometry, DipoleEmitter, EmitterEnsemble, GeometrySpec, Role};
    use approx::assert_relative_eq;
    use ndarray_linalg::Eig;

    fn lone(role: Role, detuning: f64, trap: f64) -> EmitterEnsemble {
        let meta = build_geometry(&GeometrySpec::FreePair { d: 0.06 })
            .unwrap()
            .metadata;
        let mut e = DipoleEmitter::new([0.0; 3], role);
        e.detuning = detuning;
        e.trap_rate = trap;
        EmitterEnsemble {
            emitters: vec![e],
            ring_index: vec![None],
            metadata: meta,
        }
    }

    #[test]
    fn single_donor_diagonal() {
        let ens = lone(Role::Donor, 0.5, 0.0);
        let h = assemble_effective(&ens, &coupling_matrices(&ens).unwrap()).unwrap();
        assert_eq!(h.matrix[[0, 0]], C64::new(0.5, -0.5));
    }

    #[test]
    fn single_acceptor_with_trap() {
        let ens = lone(Role::Acceptor, 0.0, 2.0);
        let h = assemble_effective(&ens, &coupling_matrices(&ens).unwrap()).unwrap();
        assert_eq!(h.matrix[[0, 0]], C64::new(0.0, -1.5));
        assert!(h.has_trap);
    }

    #[test]
    fn off_diagonal_matches_coupling_module() {
        let ens = build_geometry(&GeometrySpec::FreePair { d: 0.06 }).unwrap();
        let c = coupling_matrices(&ens).unwrap();
        let h = assemble_effective(&ens, &c).unwrap();
        assert_eq!(h.matrix[[0, 1]], C64::new(c.j[[0, 1]], -0.5 * c.gamma[[0, 1]]));
        assert_eq!(h.matrix[[1, 0]], h.matrix[[0, 1]]);
    }

    #[test]
    fn dissipation_matrix_psd_for_ring_chain() {
        let ens = build_geometry(&GeometrySpec::RingChain {
            n_ring: 9,
            rings: 3,
            d: 0.05,
            d_r: 0.045,
            rotations: None,
        })
        .unwrap()
        .with_trap_rate(2.0)
        .unwrap();
        let h = assemble_effective(&ens, &coupling_matrices(&ens).unwrap()).unwrap();
        assert!(h.min_dissipation_eigenvalue().unwrap() >= -1e-9);
    }

    #[test]
    fn disorder_touches_only_real_diagonal() {
        let ens = build_geometry(&GeometrySpec::RingChain {
            n_ring: 9,
            rings: 2,
            d: 0.05,
            d_r: 0.045,
            rotations: None,
        })
        .unwrap();
        let c = coupling_matrices(&ens).unwrap();
        let clean = assemble_effective(&ens, &c).unwrap();
        let noisy = assemble_effective(
            &crate::geometry::apply_frequency_disorder(&ens, 1.0, 3).unwrap(),
            &c,
        )
        .unwrap();
        assert!(noisy.has_disorder);
        for a in 0..ens.len() {
            assert_eq!(clean.matrix[[a, a]].im, noisy.matrix[[a, a]].im);
            for b in 0..ens.len() {
                if a != b {
                    assert_eq!(clean.matrix[[a, b]], noisy.matrix[[a, b]]);
                }
            }
        }
    }

    #[test]
    fn gaussian_drive_profile() {
        let ens = build_geometry(&GeometrySpec::FreePair { d: 1.0 }).unwrap();
        // emitter at beam center gets the full Rabi frequency
        let d = gaussian_drive(&ens, 1e-3, 0.3, [0.0; 3]).unwrap();
        assert_relative_eq!(d.amplitudes[0], 1e-3, epsilon = 1e-18);
        // at distance λ0 with w = 0.3: exp(−1/0.18) ≈ 3.9e-3 of Ω0
        assert_relative_eq!(
            d.amplitudes[1],
            1e-3 * (-1.0f64 / 0.18).exp(),
            epsilon = 1e-18
        );
        assert!((d.amplitudes[1] / 1e-3 - 3.9e-3).abs() < 1e-4);
        // flat-beam limit
        let flat = gaussian_drive(&ens, 1e-3, 1e3, [0.0; 3]).unwrap();
        for a in flat.amplitudes.iter() {
            assert_relative_eq!(*a, 1e-3, epsilon = 1e-7);
        }
    }

    #[test]
    fn dicke_pair_decay_rates() {
        let h = ideal_dicke_hamiltonian(2);
        let (vals, _) = h.matrix.eig().unwrap();
        let mut decays: Vec<f64> = vals.iter().map(|l| -2.0 * l.im).collect();
        decays.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_relative_eq!(decays[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(decays[1], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let pair = build_geometry(&GeometrySpec::FreePair { d: 0.06 }).unwrap();
        let ring = crate::geometry::build_ring(5, 0.05, [0.0; 3], 0.0).unwrap();
        let c = coupling_matrices(&ring).unwrap();
        assert!(assemble_effective(&pair, &c).is_err());
    }
}
