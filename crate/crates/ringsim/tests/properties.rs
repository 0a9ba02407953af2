//! Randomized structural invariants of the coupling kernel, the
//! effective Hamiltonian, and the steady-state solver.

use ndarray::Array1;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use ringsim::coupling::{coherent_coupling, coupling_matrices, dissipative_coupling};
use ringsim::geometry::{build_geometry, circular_polarization, GeometrySpec};
use ringsim::hamiltonian::{assemble_effective, gaussian_drive};
use ringsim::steady::solve_steady_state;

fn separation() -> impl Strategy<Value = [f64; 3]> {
    // keep |r| well away from zero and within a few wavelengths
    ([-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64])
        .prop_filter("separation must not vanish", |r: &[f64; 3]| {
            (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt() > 0.02
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Green's-function reciprocity: swapping the two emitters leaves
    /// both coupling rates unchanged for identical polarizations.
    #[test]
    fn coupling_is_reciprocal(r in separation()) {
        let p = circular_polarization();
        let neg = [-r[0], -r[1], -r[2]];
        let j_ab = coherent_coupling(r, &p, &p).unwrap();
        let j_ba = coherent_coupling(neg, &p, &p).unwrap();
        let g_ab = dissipative_coupling(r, &p, &p).unwrap();
        let g_ba = dissipative_coupling(neg, &p, &p).unwrap();
        prop_assert!((j_ab - j_ba).abs() < 1e-10);
        prop_assert!((g_ab - g_ba).abs() < 1e-10);
    }

    /// The far-field decay kernel is bounded by the single-emitter rate.
    #[test]
    fn dissipative_coupling_is_bounded(r in separation()) {
        let p = circular_polarization();
        let g = dissipative_coupling(r, &p, &p).unwrap();
        prop_assert!(g.abs() <= 1.0 + 1e-9);
    }

    /// The collective decay matrix of a random ring is positive
    /// semidefinite (no gain from pure dissipation).
    #[test]
    fn decay_matrix_is_positive(n_ring in 3usize..10, d in 0.03f64..0.2) {
        let ring = build_geometry(&GeometrySpec::SingleRing {
            n_ring,
            d,
            rotation: 0.0,
            center_donor: false,
        }).unwrap();
        let c = coupling_matrices(&ring).unwrap();
        prop_assert!(c.min_gamma_eigenvalue().unwrap() > -1e-9);
    }

    /// Steady-state linearity: scaling the drive scales the solution.
    #[test]
    fn steady_state_is_linear_in_drive(
        n_ring in 3usize..8,
        d in 0.04f64..0.1,
        scale in 0.1f64..10.0,
    ) {
        let ens = build_geometry(&GeometrySpec::SingleRing {
            n_ring,
            d,
            rotation: 0.0,
            center_donor: true,
        }).unwrap();
        let c = coupling_matrices(&ens).unwrap();
        let h = assemble_effective(&ens, &c).unwrap();
        let drive = gaussian_drive(&ens, 1e-3, 1.0, [0.0; 3]).unwrap();
        let psi: Array1<C64> = solve_steady_state(&h, &drive).unwrap();
        let scaled_drive = gaussian_drive(&ens, 1e-3 * scale, 1.0, [0.0; 3]).unwrap();
        let psi_scaled = solve_steady_state(&h, &scaled_drive).unwrap();
        for (a, b) in psi.iter().zip(psi_scaled.iter()) {
            prop_assert!((a * C64::new(scale, 0.0) - b).norm() < 1e-9 * scale);
        }
    }
}
