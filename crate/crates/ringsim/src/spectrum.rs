//! Collective eigenmodes: dense diagonalization, spin-wave states of a
//! single ring, and the closed-form two-mode analytics for a ring with a
//! central emitter.

use ndarray::{Array1, Array2};
use ndarray_linalg::Eig;
use num_complex::Complex64 as C64;

use crate::coupling::coupling_matrices;
use crate::error::{Result, RingsimError};
use crate::geometry::{EmitterEnsemble, GeometryKind};
use crate::hamiltonian::EffectiveHamiltonian;

/// Full eigendecomposition of an effective Hamiltonian, sorted by
/// ascending collective shift Re(λ). Eigenvectors are unit-normalized
/// columns.
#[derive(Clone, Debug)]
pub struct ModeSet {
    pub eigenvalues: Vec<C64>,
    /// Column `j` is the eigenvector of `eigenvalues[j]`.
    pub eigenvectors: Array2<C64>,
}

impl ModeSet {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Collective shift of mode `j`.
    pub fn shift(&self, j: usize) -> f64 {
        self.eigenvalues[j].re
    }

    /// Collective decay rate of mode `j`, `Γ_mode = −2 Im λ`.
    pub fn decay(&self, j: usize) -> f64 {
        -2.0 * self.eigenvalues[j].im
    }

    pub fn mode(&self, j: usize) -> Array1<C64> {
        self.eigenvectors.column(j).to_owned()
    }

    /// Largest eigen-residual `‖Hv − λv‖` over all modes.
    pub fn max_residual(&self, h: &EffectiveHamiltonian) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.len() {
            let v = self.eigenvectors.column(j);
            let hv = h.matrix.dot(&v);
            let res = hv
                .iter()
                .zip(v.iter())
                .map(|(a, b)| (a - self.eigenvalues[j] * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(res);
        }
        worst
    }
}

/// Dense complex eigendecomposition of `h`, modes sorted by Re(λ).
pub fn diagonalize(h: &EffectiveHamiltonian) -> Result<ModeSet> {
    if h.matrix.iter().any(|x| !x.is_finite()) {
        return Err(RingsimError::NonFinite("Hamiltonian entries".into()));
    }
    let (values, vectors) = h
        .matrix
        .eig()
        .map_err(|e| RingsimError::Eigensolver(format!("{e} (N = {})", h.len())))?;
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].re.partial_cmp(&values[b].re).unwrap());
    let eigenvalues: Vec<C64> = order.iter().map(|&j| values[j]).collect();
    let mut eigenvectors = Array2::<C64>::zeros((n, n));
    for (col, &j) in order.iter().enumerate() {
        let v = vectors.column(j);
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for a in 0..n {
            eigenvectors[[a, col]] = v[a] / norm;
        }
    }
    Ok(ModeSet {
        eigenvalues,
        eigenvectors,
    })
}

/// Angular momentum labels of an N_R-fold ring, `m ∈ (−N_R/2, N_R/2]`.
pub fn angular_momenta(n_ring: usize) -> Vec<i32> {
    let n = n_ring as i32;
    // even n: −(n/2 − 1) ..= n/2; odd n: −(n−1)/2 ..= (n−1)/2
    let lo = if n % 2 == 0 { -(n / 2 - 1) } else { -(n - 1) / 2 };
    (lo..=n / 2).collect()
}

/// A spin-wave eigenmode of a rotationally symmetric ring.
#[derive(Clone, Debug)]
pub struct SpinWaveState {
    pub m: i32,
    /// `e^{imφ_j}/√N_R` amplitudes over the ring emitters.
    pub amplitudes: Array1<C64>,
    /// Collective shift J̃_m.
    pub shift: f64,
    /// Collective decay Γ̃_m.
    pub decay: f64,
}

/// Spin-wave amplitude vector for angular momentum `m` on `n_ring` sites.
pub fn spin_wave_amplitudes(n_ring: usize, m: i32) -> Array1<C64> {
    let norm = 1.0 / (n_ring as f64).sqrt();
    (0..n_ring)
        .map(|j| {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / n_ring as f64;
            C64::from_polar(norm, m as f64 * phi)
        })
        .collect()
}

fn check_circulant(mat: &ndarray::Array2<f64>, n: usize, tol: f64) -> Result<()> {
    for a in 0..n {
        for b in 0..n {
            let shift = (b + n - a) % n;
            if (mat[[a, b]] - mat[[0, shift]]).abs() > tol {
                return Err(RingsimError::Symmetry(format!(
                    "coupling matrix is not circulant at ({a},{b}): {} vs {}",
                    mat[[a, b]],
                    mat[[0, shift]]
                )));
            }
        }
    }
    Ok(())
}

/// Exact spin-wave spectrum of a single rotationally symmetric ring from
/// the circulant sums `J̃_m = Σ_j e^{imφ_j} J_{1j}` and
/// `Γ̃_m = Σ_j e^{imφ_j} Γ_{1j}`.
pub fn spin_wave_spectrum(ring: &EmitterEnsemble) -> Result<Vec<SpinWaveState>> {
    if ring.metadata.kind != GeometryKind::SingleRing {
        return Err(RingsimError::WrongGeometry(ring.metadata.kind.to_string()));
    }
    let n = ring.metadata.n_ring;
    let ring_only: Vec<usize> = ring.lattice_indices();
    if ring_only.len() != n {
        return Err(RingsimError::WrongGeometry(
            "spin waves are defined on the bare ring (strip the center emitter first)".into(),
        ));
    }
    let couplings = coupling_matrices(ring)?;
    check_circulant(&couplings.j, n, 1e-10)?;
    check_circulant(&couplings.gamma, n, 1e-10)?;
    angular_momenta(n)
        .into_iter()
        .map(|m| {
            let mut shift = C64::new(0.0, 0.0);
            let mut decay = C64::new(0.0, 0.0);
            for j in 0..n {
                let phi = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                let phase = C64::from_polar(1.0, m as f64 * phi);
                shift += phase * couplings.j[[0, j]];
                decay += phase * couplings.gamma[[0, j]];
            }
            if shift.im.abs() > 1e-10 || decay.im.abs() > 1e-10 {
                return Err(RingsimError::Symmetry(format!(
                    "collective rates for m={m} are not real: Im J̃ = {:.2e}, Im Γ̃ = {:.2e}",
                    shift.im, decay.im
                )));
            }
            Ok(SpinWaveState {
                m,
                amplitudes: spin_wave_amplitudes(n, m),
                shift: shift.re,
                decay: decay.re,
            })
        })
        .collect()
}

/// Closed-form two-mode analytics for a ring with a central donor.
///
/// The center couples only to the symmetric (m = 0) ring mode; in the
/// basis {donor, symmetric mode} the effective Hamiltonian reduces to
/// the 2x2 matrix
///
/// ```text
/// [ Δ − iΓ0/2              √N_R (J_d − iΓ_d/2) ]
/// [ √N_R (J_d − iΓ_d/2)    J̃_0 − iΓ̃_0/2        ]
/// ```
///
/// whose subradiant branch λ_− carries the majority of the excitation on
/// the donor for d ≤ λ0/3.
#[derive(Clone, Debug)]
pub struct SingleRingAnalytics {
    pub n_ring: usize,
    /// Collective shift of the symmetric ring mode.
    pub ring_shift: f64,
    /// Collective decay of the symmetric ring mode.
    pub ring_decay: f64,
    /// Donor-to-ring-emitter coherent coupling J_d.
    pub donor_coupling_j: f64,
    /// Donor-to-ring-emitter dissipative coupling Γ_d.
    pub donor_coupling_gamma: f64,
    /// Detuning minimizing the subradiant decay, from the scan.
    pub delta_sub: f64,
    /// Approximation `J_d (Γ̃_0 − Γ0) − J̃_0`.
    pub delta_sub_approx: f64,
    /// Effective decay `−2 Im λ_−` at `delta_sub`.
    pub gamma_eff: f64,
    /// Donor excitation fraction of the subradiant eigenstate at
    /// `delta_sub`.
    pub donor_fraction: f64,
    /// Set when d > λ0/3 and the branch identification is unreliable.
    pub branch_warning: bool,
}

impl SingleRingAnalytics {
    /// Both eigenvalues `(λ_−, λ_+)` of the 2x2 matrix at detuning Δ,
    /// with λ_− the donor-dominated (subradiant) branch.
    pub fn eigenvalues(&self, delta: f64) -> (C64, C64) {
        let (minus, plus, _) = self.branches(delta);
        (minus, plus)
    }

    /// Decay rate `−2 Im λ_−` of the subradiant branch at detuning Δ.
    pub fn subradiant_decay(&self, delta: f64) -> f64 {
        -2.0 * self.branches(delta).0.im
    }

    /// Donor weight of the subradiant branch at detuning Δ.
    pub fn subradiant_donor_fraction(&self, delta: f64) -> f64 {
        self.branches(delta).2
    }

    fn branches(&self, delta: f64) -> (C64, C64, f64) {
        let a = C64::new(delta, -0.5);
        let b = C64::new(self.ring_shift, -0.5 * self.ring_decay);
        let c = (self.n_ring as f64).sqrt()
            * C64::new(self.donor_coupling_j, -0.5 * self.donor_coupling_gamma);
        let mean = 0.5 * (a + b);
        let disc = (0.25 * (a - b) * (a - b) + c * c).sqrt();
        let l1 = mean + disc;
        let l2 = mean - disc;
        // donor weight of eigenvector (c, λ−a) in the {donor, ring} basis
        let weight = |l: C64| {
            let w = c.norm_sqr();
            w / (w + (l - a).norm_sqr())
        };
        let (w1, w2) = (weight(l1), weight(l2));
        if w1 >= w2 {
            (l1, l2, w1)
        } else {
            (l2, l1, w2)
        }
    }
}

/// Analyze a single ring with a central donor: collective parameters,
/// the optimal subradiant detuning Δ_sub within `delta_range`, and the
/// effective decay there.
pub fn ring_center_analytics(
    ring: &EmitterEnsemble,
    delta_range: (f64, f64),
) -> Result<SingleRingAnalytics> {
    if ring.metadata.kind != GeometryKind::SingleRing {
        return Err(RingsimError::WrongGeometry(ring.metadata.kind.to_string()));
    }
    let donor = ring
        .donor_index()
        .ok_or_else(|| RingsimError::InvalidArgument("ring has no central donor".into()))?;
    let n = ring.metadata.n_ring;
    let couplings = coupling_matrices(ring)?;
    // ring-only circulant sums for m = 0
    let mut ring_shift = 0.0;
    let mut ring_decay = 0.0;
    for j in 0..n {
        ring_shift += couplings.j[[0, j]];
        ring_decay += couplings.gamma[[0, j]];
    }
    let donor_coupling_j = couplings.j[[donor, 0]];
    let donor_coupling_gamma = couplings.gamma[[donor, 0]];
    for j in 1..n {
        if (couplings.j[[donor, j]] - donor_coupling_j).abs() > 1e-10 {
            return Err(RingsimError::Symmetry(
                "donor does not couple equally to all ring emitters".into(),
            ));
        }
    }
    let branch_warning = ring.metadata.d > 1.0 / 3.0;
    if branch_warning {
        eprintln!(
            "warning: d = {} > λ0/3, the subradiant branch identification may be unreliable",
            ring.metadata.d
        );
    }
    let mut analytics = SingleRingAnalytics {
        n_ring: n,
        ring_shift,
        ring_decay,
        donor_coupling_j,
        donor_coupling_gamma,
        delta_sub: 0.0,
        delta_sub_approx: donor_coupling_j * (ring_decay - 1.0) - ring_shift,
        gamma_eff: 0.0,
        donor_fraction: 0.0,
        branch_warning,
    };
    let (delta_sub, neg_decay) = crate::dynamics::maximize_scalar(
        |delta| -analytics.subradiant_decay(delta),
        delta_range.0,
        delta_range.1,
        201,
        1e-6,
    );
    analytics.delta_sub = delta_sub;
    analytics.gamma_eff = -neg_decay;
    analytics.donor_fraction = analytics.subradiant_donor_fraction(delta_sub);
    Ok(analytics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_geometry, build_ring, GeometrySpec};
    use crate::hamiltonian::{assemble_effective, ideal_dicke_hamiltonian};
    use approx::assert_relative_eq;

    #[test]
    fn diagonal_hamiltonian_eigenvalues() {
        let mut h = ideal_dicke_hamiltonian(3);
        h.matrix = Array2::zeros((3, 3));
        h.matrix[[0, 0]] = C64::new(0.3, -0.5);
        h.matrix[[1, 1]] = C64::new(-1.0, -0.5);
        h.matrix[[2, 2]] = C64::new(2.0, -1.5);
        let modes = diagonalize(&h).unwrap();
        assert_relative_eq!(modes.eigenvalues[0].re, -1.0, epsilon = 1e-12);
        assert_relative_eq!(modes.eigenvalues[1].re, 0.3, epsilon = 1e-12);
        assert_relative_eq!(modes.eigenvalues[2].re, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn ideal_dicke_degeneracy() {
        let h = ideal_dicke_hamiltonian(9);
        let modes = diagonalize(&h).unwrap();
        let mut decays: Vec<f64> = (0..9).map(|j| modes.decay(j)).collect();
        decays.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for d in &decays[..8] {
            assert!(d.abs() < 1e-10);
        }
        assert_relative_eq!(decays[8], 9.0, epsilon = 1e-10);
    }

    #[test]
    fn angular_momentum_ranges() {
        assert_eq!(angular_momenta(9), (-4..=4).collect::<Vec<_>>());
        assert_eq!(angular_momenta(8), (-3..=4).collect::<Vec<_>>());
        assert_eq!(angular_momenta(3), (-1..=1).collect::<Vec<_>>());
    }

    #[test]
    fn spin_waves_match_exact_diagonalization() {
        let ring = build_ring(9, 0.05, [0.0; 3], 0.0).unwrap();
        let waves = spin_wave_spectrum(&ring).unwrap();
        let h = assemble_effective(&ring, &coupling_matrices(&ring).unwrap()).unwrap();
        // every spin wave is an exact eigenvector: ‖H S_m − λ_m S_m‖ < 1e-10
        for w in &waves {
            let lambda = C64::new(w.shift, -0.5 * w.decay);
            let hv = h.matrix.dot(&w.amplitudes);
            let res = hv
                .iter()
                .zip(w.amplitudes.iter())
                .map(|(a, b)| (a - lambda * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-10, "residual {res} for m = {}", w.m);
        }
        // exact spectrum matches the spin-wave values
        let modes = diagonalize(&h).unwrap();
        let mut exact: Vec<f64> = (0..9).map(|j| modes.shift(j)).collect();
        let mut analytic: Vec<f64> = waves.iter().map(|w| w.shift).collect();
        exact.sort_by(|a, b| a.partial_cmp(b).unwrap());
        analytic.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (e, a) in exact.iter().zip(analytic.iter()) {
            assert_relative_eq!(e, a, epsilon = 1e-10);
        }
    }

    #[test]
    fn symmetric_mode_shift_near_n_minus_one_jd() {
        // J̃_0 ≈ (N_R − 1) J_d for N_R = 9
        let ring = build_geometry(&GeometrySpec::SingleRing {
            n_ring: 9,
            d: 0.05,
            rotation: 0.0,
            center_donor: true,
        })
        .unwrap();
        let analytics = ring_center_analytics(&ring, (-10.0, 10.0)).unwrap();
        let ratio = analytics.ring_shift / (8.0 * analytics.donor_coupling_j);
        assert!((ratio - 1.0).abs() < 0.1, "ratio = {ratio}");
    }

    #[test]
    fn dicke_limit_donor_fraction() {
        // ideal Dicke: J = 0, Γ_nm = Γ0 ⇒ donor fraction N/(N+1)
        let analytics = SingleRingAnalytics {
            n_ring: 9,
            ring_shift: 0.0,
            ring_decay: 9.0,
            donor_coupling_j: 0.0,
            donor_coupling_gamma: 1.0,
            delta_sub: 0.0,
            delta_sub_approx: 0.0,
            gamma_eff: 0.0,
            donor_fraction: 0.0,
            branch_warning: false,
        };
        let (minus, _) = analytics.eigenvalues(0.0);
        assert!(minus.im.abs() < 1e-12, "dark state decay {}", -2.0 * minus.im);
        assert_relative_eq!(
            analytics.subradiant_donor_fraction(0.0),
            0.9,
            epsilon = 1e-10
        );
    }

    #[test]
    fn two_by_two_eigenvalue_identity() {
        let ring = build_geometry(&GeometrySpec::SingleRing {
            n_ring: 9,
            d: 0.05,
            rotation: 0.0,
            center_donor: true,
        })
        .unwrap();
        let a = ring_center_analytics(&ring, (-5.0, 5.0)).unwrap();
        // λ_± are the eigenvalues of the documented 2x2 matrix
        for delta in [-2.0, 0.0, 1.5] {
            let (minus, plus) = a.eigenvalues(delta);
            let m00 = C64::new(delta, -0.5);
            let m11 = C64::new(a.ring_shift, -0.5 * a.ring_decay);
            let m01 = 3.0 * C64::new(a.donor_coupling_j, -0.5 * a.donor_coupling_gamma);
            let trace = m00 + m11;
            let det = m00 * m11 - m01 * m01;
            assert!((minus + plus - trace).norm() < 1e-12);
            assert!((minus * plus - det).norm() < 1e-12);
        }
    }

    #[test]
    fn subradiant_ring_nine() {
        let ring = build_geometry(&GeometrySpec::SingleRing {
            n_ring: 9,
            d: 0.05,
            rotation: 0.0,
            center_donor: true,
        })
        .unwrap();
        let a = ring_center_analytics(&ring, (-10.0, 10.0)).unwrap();
        // Δ_sub ≈ 0 on the scale of the collective shifts: the leading
        // terms J_d Γ̃_0 and J̃_0 ≈ (N_R−1) J_d nearly cancel
        assert!(
            a.delta_sub.abs() < 0.05 * a.ring_shift.abs(),
            "Δ_sub = {} vs J̃_0 = {}",
            a.delta_sub,
            a.ring_shift
        );
        assert!(a.gamma_eff <= 1e-3, "Γ_eff = {}", a.gamma_eff);
        // subradiant branch concentrates ≈ N_R/(N_R+1) on the donor
        assert!((a.donor_fraction - 0.9).abs() < 0.02);
        assert!(!a.branch_warning);
    }
}
