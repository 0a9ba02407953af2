//! Time propagation of single-excitation amplitudes under the
//! non-Hermitian Schrödinger equation `i∂_t ψ = Hψ (+ drive)` and the
//! derived transport observables.
//!
//! Propagation is spectral: H is diagonalized once and every time point
//! is evaluated analytically. The cumulative trapped and radiated
//! fractions are likewise evaluated as closed-form sums of exponentials
//! in the eigenbasis, so no time-step error enters the efficiency
//! integral. A step-doubling Runge-Kutta integrator is kept as an
//! independent oracle in the test suite only.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Solve};
use num_complex::Complex64 as C64;

use crate::error::{Result, RingsimError};
use crate::hamiltonian::{DriveVector, EffectiveHamiltonian};

/// Single-excitation amplitude vector at one instant.
#[derive(Clone, Debug)]
pub struct AmplitudeState {
    pub amplitudes: Array1<C64>,
    /// Time in Γ0⁻¹ units.
    pub time: f64,
}

impl AmplitudeState {
    /// All excitation on emitter `index`.
    pub fn excited(n: usize, index: usize) -> Self {
        let mut amplitudes = Array1::zeros(n);
        amplitudes[index] = C64::new(1.0, 0.0);
        AmplitudeState { amplitudes, time: 0.0 }
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Amplitude time series with derived populations and excitation budget.
#[derive(Clone, Debug)]
pub struct TransportTrace {
    pub times: Vec<f64>,
    /// Row `i` holds ψ(times[i]).
    pub amplitudes: Array2<C64>,
    pub donor_pop: Vec<f64>,
    pub acceptor_pop: Vec<f64>,
    pub norm2: Vec<f64>,
    /// Cumulative trapped fraction `Γ_T ∫₀ᵗ |ψ_a|² dt'` (the transport
    /// efficiency η_t when the initial norm is 1).
    pub eta: Vec<f64>,
    /// Cumulative radiated fraction `∫₀ᵗ ψ†Γψ dt'` with Γ the radiative
    /// dissipation matrix (trap channel excluded).
    pub radiated: Vec<f64>,
    pub initial_norm2: f64,
    pub driven: bool,
}

impl TransportTrace {
    pub fn final_eta(&self) -> f64 {
        *self.eta.last().unwrap_or(&0.0)
    }

    /// ψ at grid point `i`.
    pub fn state_at(&self, i: usize) -> AmplitudeState {
        AmplitudeState {
            amplitudes: self.amplitudes.row(i).to_owned(),
            time: self.times[i],
        }
    }
}

/// `∫₀ᵗ e^{−iλt'} dt' = (1 − e^{−iλt}) / (iλ)`, with a series fallback
/// for |λt| ≪ 1 (extremely subradiant modes).
fn zeta(lambda: C64, t: f64) -> C64 {
    let x = lambda * t;
    if x.norm() < 1e-6 {
        // t (1 − ix/2 − x²/6 + ix³/24)
        let i = C64::new(0.0, 1.0);
        t * (C64::new(1.0, 0.0) - i * x / 2.0 - x * x / 6.0 + i * x * x * x / 24.0)
    } else {
        let i_lambda = C64::new(0.0, 1.0) * lambda;
        (C64::new(1.0, 0.0) - (-i_lambda * t).exp()) / i_lambda
    }
}

struct Spectral {
    values: Array1<C64>,
    vectors: Array2<C64>,
    /// Expansion coefficients of ψ0 − ψ_ss in the eigenbasis.
    coeffs: Array1<C64>,
    /// Constant (steady-state) part; zero without drive.
    steady: Array1<C64>,
}

fn decompose(
    h: &EffectiveHamiltonian,
    psi0: &AmplitudeState,
    drive: Option<&DriveVector>,
) -> Result<Spectral> {
    let (values, vectors) = h
        .matrix
        .eig()
        .map_err(|e| RingsimError::Eigensolver(format!("{e} (N = {})", h.len())))?;
    let steady = match drive {
        Some(d) => {
            if d.amplitudes.len() != h.len() {
                return Err(RingsimError::DimensionMismatch(
                    "drive length does not match Hamiltonian".into(),
                ));
            }
            let rhs = d.as_complex().mapv(|x| -x);
            h.matrix
                .solve(&rhs)
                .map_err(|e| RingsimError::LinearSolve(e.to_string()))?
        }
        None => Array1::zeros(h.len()),
    };
    let transient = &psi0.amplitudes - &steady;
    let coeffs = vectors
        .solve(&transient)
        .map_err(|e| RingsimError::LinearSolve(format!("eigenvector matrix: {e}")))?;
    Ok(Spectral {
        values,
        vectors,
        coeffs,
        steady,
    })
}

/// Cumulative `∫₀ᵗ ψ†Mψ dt'` for Hermitian M, evaluated in closed form
/// for every grid time. `w[l][j] = u_l† M u_j` and `sm_u[j] = s† M u_j`.
fn cumulative_quadratic(
    spectral: &Spectral,
    w: &Array2<C64>,
    sm_u: &Array1<C64>,
    sms: f64,
    times: &[f64],
) -> Vec<f64> {
    let n = spectral.values.len();
    times
        .iter()
        .map(|&t| {
            let mut acc = sms * t;
            for j in 0..n {
                let bj = spectral.coeffs[j];
                if bj.norm_sqr() == 0.0 && sm_u[j].norm_sqr() == 0.0 {
                    continue;
                }
                acc += 2.0 * (sm_u[j] * bj * zeta(spectral.values[j], t)).re;
                for l in 0..n {
                    let bl = spectral.coeffs[l];
                    let mu = spectral.values[j] - spectral.values[l].conj();
                    acc += (bl.conj() * bj * w[[l, j]] * zeta(mu, t)).re;
                }
            }
            acc
        })
        .collect()
}

/// Propagate `psi0` under `h` (optionally with a constant coherent
/// drive) and evaluate populations, the trapped-fraction integral and
/// the radiated-fraction integral at every grid time.
pub fn evolve(
    h: &EffectiveHamiltonian,
    psi0: &AmplitudeState,
    times: &[f64],
    drive: Option<&DriveVector>,
) -> Result<TransportTrace> {
    let n = h.len();
    if psi0.amplitudes.len() != n {
        return Err(RingsimError::DimensionMismatch(format!(
            "state of length {} vs Hamiltonian of size {n}",
            psi0.amplitudes.len()
        )));
    }
    if times.is_empty() || times[0] < 0.0 || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(RingsimError::InvalidArgument(
            "times must be non-empty, non-negative and strictly increasing".into(),
        ));
    }
    let spectral = decompose(h, psi0, drive)?;

    let mut amplitudes = Array2::<C64>::zeros((times.len(), n));
    for (i, &t) in times.iter().enumerate() {
        for j in 0..n {
            let phase = (C64::new(0.0, -1.0) * spectral.values[j] * t).exp();
            let bj = spectral.coeffs[j] * phase;
            for a in 0..n {
                amplitudes[[i, a]] += bj * spectral.vectors[[a, j]];
            }
        }
        for a in 0..n {
            amplitudes[[i, a]] += spectral.steady[a];
            if !amplitudes[[i, a]].is_finite() {
                return Err(RingsimError::NonFinite(format!("t = {t}, emitter {a}")));
            }
        }
    }

    // trapped fraction: M = diag(trap_rates), nonzero on the acceptor only
    let trap = &h.trap_rates;
    let mut w_trap = Array2::<C64>::zeros((n, n));
    let mut su_trap = Array1::<C64>::zeros(n);
    let mut ss_trap = 0.0;
    for a in 0..n {
        if trap[a] == 0.0 {
            continue;
        }
        ss_trap += trap[a] * spectral.steady[a].norm_sqr();
        for j in 0..n {
            su_trap[j] += trap[a] * spectral.steady[a].conj() * spectral.vectors[[a, j]];
            for l in 0..n {
                w_trap[[l, j]] +=
                    trap[a] * spectral.vectors[[a, l]].conj() * spectral.vectors[[a, j]];
            }
        }
    }
    let eta = cumulative_quadratic(&spectral, &w_trap, &su_trap, ss_trap, times);

    // radiated fraction: M = radiative dissipation matrix
    let gamma_rad = h.radiative_dissipation_matrix().mapv(|x| C64::new(x, 0.0));
    let gv = gamma_rad.dot(&spectral.vectors);
    let w_rad = spectral.vectors.t().mapv(|x| x.conj()).dot(&gv);
    let su_rad = spectral.steady.mapv(|x| x.conj()).dot(&gv);
    let ss_rad = spectral
        .steady
        .mapv(|x| x.conj())
        .dot(&gamma_rad.dot(&spectral.steady))
        .re;
    let radiated = cumulative_quadratic(&spectral, &w_rad, &su_rad, ss_rad, times);

    let donor_pop = match h.donor {
        Some(d) => (0..times.len()).map(|i| amplitudes[[i, d]].norm_sqr()).collect(),
        None => vec![0.0; times.len()],
    };
    let acceptor_pop = match h.acceptor {
        Some(a) => (0..times.len()).map(|i| amplitudes[[i, a]].norm_sqr()).collect(),
        None => vec![0.0; times.len()],
    };
    let norm2 = (0..times.len())
        .map(|i| amplitudes.row(i).iter().map(|x| x.norm_sqr()).sum())
        .collect();

    Ok(TransportTrace {
        times: times.to_vec(),
        amplitudes,
        donor_pop,
        acceptor_pop,
        norm2,
        eta,
        radiated,
        initial_norm2: psi0.norm_squared(),
        driven: drive.is_some(),
    })
}

/// Transport efficiency η at time `t`, linearly interpolated on the
/// trace grid.
pub fn transport_efficiency(trace: &TransportTrace, t: f64) -> Result<f64> {
    let t_max = *trace.times.last().unwrap();
    if t < 0.0 || t > t_max {
        return Err(RingsimError::OutOfWindow(t, t_max));
    }
    if t <= trace.times[0] {
        return Ok(if trace.times[0] == 0.0 { 0.0 } else { trace.eta[0] });
    }
    let i = trace.times.partition_point(|&x| x < t);
    if (trace.times[i] - t).abs() < 1e-12 {
        return Ok(trace.eta[i]);
    }
    let (t0, t1) = (trace.times[i - 1], trace.times[i]);
    let frac = (t - t0) / (t1 - t0);
    Ok(trace.eta[i - 1] * (1.0 - frac) + trace.eta[i] * frac)
}

/// Final excitation budget `(remaining, radiated, trapped)` as fractions
/// of the initial norm². For undriven traces the triple must sum to one;
/// a violation beyond 1e-4 is an integration-accuracy error.
pub fn excitation_budget(trace: &TransportTrace) -> Result<(f64, f64, f64)> {
    let n0 = trace.initial_norm2;
    if n0 == 0.0 {
        return Ok((0.0, 0.0, 0.0));
    }
    let remaining = trace.norm2.last().unwrap() / n0;
    let radiated = trace.radiated.last().unwrap() / n0;
    let trapped = trace.eta.last().unwrap() / n0;
    if !trace.driven {
        let violation = (remaining + radiated + trapped - 1.0).abs();
        if violation > 1e-4 {
            return Err(RingsimError::IntegrationAccuracy(format!(
                "budget violation {violation:.3e}"
            )));
        }
    }
    Ok((remaining, radiated, trapped))
}

/// Per-time overlap fidelity `|⟨ψ(t)|Ψ_eig⟩|²` with a unit-normalized
/// eigenvector.
pub fn eigenstate_fidelity(trace: &TransportTrace, mode: &Array1<C64>) -> Vec<f64> {
    (0..trace.times.len())
        .map(|i| {
            trace
                .amplitudes
                .row(i)
                .iter()
                .zip(mode.iter())
                .map(|(a, m)| a.conj() * m)
                .sum::<C64>()
                .norm_sqr()
        })
        .collect()
}

/// Uniform time grid `0..=t_max` with `n` points (n ≥ 2).
pub fn uniform_grid(t_max: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n).map(|i| t_max * i as f64 / (n - 1) as f64).collect()
}

/// Maximize a scalar function on [a, b] by coarse scan plus
/// golden-section refinement around the best sample.
pub fn maximize_scalar<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    coarse: usize,
    tol: f64,
) -> (f64, f64) {
    let coarse = coarse.max(3);
    let mut best_x = a;
    let mut best_f = f64::NEG_INFINITY;
    let step = (b - a) / (coarse - 1) as f64;
    for i in 0..coarse {
        let x = a + step * i as f64;
        let fx = f(x);
        if fx > best_f {
            best_f = fx;
            best_x = x;
        }
    }
    let mut lo = (best_x - step).max(a);
    let mut hi = (best_x + step).min(b);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = f(mid);
    if fm >= best_f {
        (mid, fm)
    } else {
        (best_x, best_f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::coupling_matrices;
    use crate::geometry::{build_geometry, DipoleEmitter, EmitterEnsemble, GeometrySpec, Role};
    use crate::hamiltonian::{assemble_effective, ideal_dicke_hamiltonian};
    use approx::assert_relative_eq;

    fn single_emitter(trap: f64) -> EffectiveHamiltonian {
        let meta = build_geometry(&GeometrySpec::FreePair { d: 0.06 })
            .unwrap()
            .metadata;
        let mut e = DipoleEmitter::new([0.0; 3], Role::Acceptor);
        e.trap_rate = trap;
        let ens = EmitterEnsemble {
            emitters: vec![e],
            ring_index: vec![None],
            metadata: meta,
        };
        assemble_effective(&ens, &coupling_matrices(&ens).unwrap()).unwrap()
    }

    #[test]
    fn single_emitter_exponential_decay() {
        let h = single_emitter(0.0);
        let times = uniform_grid(10.0, 101);
        let trace = evolve(&h, &AmplitudeState::excited(1, 0), &times, None).unwrap();
        for (i, &t) in times.iter().enumerate() {
            assert_relative_eq!(trace.norm2[i], (-t).exp(), epsilon = 1e-10);
        }
    }

    #[test]
    fn dicke_superradiance_norm() {
        let h = ideal_dicke_hamiltonian(6);
        let psi0 = AmplitudeState {
            amplitudes: Array1::from_elem(6, C64::new(1.0 / 6f64.sqrt(), 0.0)),
            time: 0.0,
        };
        let times = uniform_grid(2.0, 41);
        let trace = evolve(&h, &psi0, &times, None).unwrap();
        for (i, &t) in times.iter().enumerate() {
            assert_relative_eq!(trace.norm2[i], (-6.0 * t).exp(), epsilon = 1e-9);
        }
    }

    #[test]
    fn trap_branching_ratio() {
        // donor == acceptor: η_∞ = Γ_T / (Γ0 + Γ_T)
        for trap in [0.5, 1.0, 2.0] {
            let h = single_emitter(trap);
            let times = uniform_grid(80.0, 161);
            let trace = evolve(&h, &AmplitudeState::excited(1, 0), &times, None).unwrap();
            assert_relative_eq!(trace.final_eta(), trap / (1.0 + trap), epsilon = 1e-8);
            let (rem, rad, trapped) = excitation_budget(&trace).unwrap();
            assert!(rem < 1e-10);
            assert_relative_eq!(rad, 1.0 / (1.0 + trap), epsilon = 1e-8);
            assert_relative_eq!(trapped, trap / (1.0 + trap), epsilon = 1e-8);
        }
    }

    #[test]
    fn budget_closes_on_ring_chain() {
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
        let psi0 = AmplitudeState::excited(ens.len(), ens.donor_index().unwrap());
        let times = uniform_grid(150.0, 151);
        let trace = evolve(&h, &psi0, &times, None).unwrap();
        for i in 0..times.len() {
            let total = trace.norm2[i] + trace.radiated[i] + trace.eta[i];
            assert!((total - 1.0).abs() < 1e-6, "budget at t={}: {total}", times[i]);
        }
        // norm non-increasing, eta monotone
        for i in 1..times.len() {
            assert!(trace.norm2[i] <= trace.norm2[i - 1] + 1e-9);
            assert!(trace.eta[i] + 1e-12 >= trace.eta[i - 1]);
        }
    }

    #[test]
    fn no_trap_conserves_norm_plus_radiated() {
        let ens = build_geometry(&GeometrySpec::RingChain {
            n_ring: 6,
            rings: 2,
            d: 0.06,
            d_r: 0.054,
            rotations: None,
        })
        .unwrap();
        let h = assemble_effective(&ens, &coupling_matrices(&ens).unwrap()).unwrap();
        let psi0 = AmplitudeState::excited(ens.len(), ens.donor_index().unwrap());
        let times = uniform_grid(30.0, 61);
        let trace = evolve(&h, &psi0, &times, None).unwrap();
        for i in 0..times.len() {
            assert!(trace.eta[i].abs() < 1e-14);
            assert!((trace.norm2[i] + trace.radiated[i] - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn time_translation_composition() {
        let ens = build_geometry(&GeometrySpec::FreePair { d: 0.06 })
            .unwrap()
            .with_trap_rate(1.0)
            .unwrap();
        let h = assemble_effective(&ens, &coupling_matrices(&ens).unwrap()).unwrap();
        let psi0 = AmplitudeState::excited(2, 0);
        let direct = evolve(&h, &psi0, &[1.0, 3.0], None).unwrap();
        let first = evolve(&h, &psi0, &[1.0], None).unwrap();
        let second = evolve(&h, &first.state_at(0), &[2.0], None).unwrap();
        for a in 0..2 {
            let d = direct.amplitudes[[1, a]];
            let c = second.amplitudes[[0, a]];
            assert!((d - c).norm() < 1e-10);
        }
    }

    #[test]
    fn eta_against_trapezoid_oracle() {
        let ens = build_geometry(&GeometrySpec::RingChain {
            n_ring: 5,
            rings: 2,
            d: 0.05,
            d_r: 0.045,
            rotations: None,
        })
        .unwrap()
        .with_trap_rate(2.0)
        .unwrap();
        let h = assemble_effective(&ens, &coupling_matrices(&ens).unwrap()).unwrap();
        let psi0 = AmplitudeState::excited(ens.len(), ens.donor_index().unwrap());
        // trapezoid quadrature converges to the analytic integral at
        // second order in the step; check the refined grid stays within
        // its discretization error bound
        let times = uniform_grid(20.0, 8001);
        let trace = evolve(&h, &psi0, &times, None).unwrap();
        let mut trapz = 0.0;
        for i in 1..times.len() {
            let dt = times[i] - times[i - 1];
            trapz += 0.5 * dt * 2.0 * (trace.acceptor_pop[i] + trace.acceptor_pop[i - 1]);
            let analytic = trace.eta[i];
            assert!((trapz - analytic).abs() < 2e-5, "t={} trapz={trapz} analytic={analytic}", times[i]);
        }
    }

    #[test]
    fn fidelity_self_and_orthogonal() {
        let h = single_emitter(0.0);
        let trace = evolve(&h, &AmplitudeState::excited(1, 0), &[0.0], None).unwrap();
        let mode = Array1::from_elem(1, C64::new(1.0, 0.0));
        assert_relative_eq!(eigenstate_fidelity(&trace, &mode)[0], 1.0, epsilon = 1e-12);
        let ens = build_geometry(&GeometrySpec::FreePair { d: 0.06 }).unwrap();
        let h2 = assemble_effective(&ens, &coupling_matrices(&ens).unwrap()).unwrap();
        let trace2 = evolve(&h2, &AmplitudeState::excited(2, 0), &[0.0], None).unwrap();
        let ortho = Array1::from_vec(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
        assert_relative_eq!(eigenstate_fidelity(&trace2, &ortho)[0], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn efficiency_window_checks() {
        let h = single_emitter(1.0);
        let trace = evolve(&h, &AmplitudeState::excited(1, 0), &uniform_grid(5.0, 11), None).unwrap();
        assert_relative_eq!(transport_efficiency(&trace, 0.0).unwrap(), 0.0);
        assert!(transport_efficiency(&trace, 6.0).is_err());
        let mid = transport_efficiency(&trace, 2.75).unwrap();
        assert!(mid > 0.0 && mid < trace.final_eta());
    }

    #[test]
    fn maximize_scalar_quadratic() {
        let (x, fx) = maximize_scalar(|x| -(x - 1.3).powi(2), -5.0, 5.0, 21, 1e-6);
        assert!((x - 1.3).abs() < 1e-4);
        assert!(fx > -1e-8);
    }
}
