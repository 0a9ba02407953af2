//! Band structure of ring chains: momentum-space ansatz states, band
//! classification with edge-state detection, the Zak phase of the
//! infinite chain, and group-velocity-based trapping-rate design.
//!
//! Eigenmodes of a chain of rotationally symmetric rings are labeled by
//! a quasi-momentum pair `(m, k)`: `m` is the angular momentum of the
//! spin wave on each ring and `k` the linear momentum along the chain,
//! `Ŝ_{m,k} = (1/√N) Σ_{j,j′} e^{imφ_j} e^{ikd̃j′} σ_{j+j′N_R}` with
//! ring-center spacing `d̃ = 2R + d_R`.

use ndarray::{Array1, Array2};
use ndarray_linalg::Eig;
use num_complex::Complex64 as C64;

use crate::coupling::green_projected;
use crate::error::{Result, RingsimError};
use crate::geometry::{build_ring, ring_radius, EmitterEnsemble, GeometryKind};
use crate::spectrum::{angular_momenta, ModeSet};

/// Number of neighbor unit cells kept on each side when truncating the
/// infinite-chain Bloch Hamiltonian. The Green's function decays as 1/r,
/// so 50 cells bound the truncation error well below the band scales.
const BLOCH_CELLS: usize = 50;

/// Discrete linear momenta of an M-ring chain with center spacing d̃:
/// `k_n = 2πn/(M d̃)` for `n = −⌈M/2⌉+1, …, ⌊M/2⌋`.
pub fn allowed_momenta(rings: usize, ring_spacing: f64) -> Vec<f64> {
    let m = rings as i32;
    let lo = -(m + 1) / 2 + 1;
    (lo..=m / 2)
        .map(|n| 2.0 * std::f64::consts::PI * n as f64 / (rings as f64 * ring_spacing))
        .collect()
}

/// Normalized `(m, k)` ansatz amplitudes over a ring-chain ensemble.
/// Donor/acceptor entries (if present) are zero; the state is
/// normalized over the lattice emitters.
pub fn ansatz_state(chain: &EmitterEnsemble, m: i32, k: f64) -> Result<Array1<C64>> {
    if !chain.metadata.kind.is_ring_based() {
        return Err(RingsimError::WrongGeometry(chain.metadata.kind.to_string()));
    }
    let lattice = chain.lattice_indices();
    let norm = 1.0 / (lattice.len() as f64).sqrt();
    let mut amps = Array1::<C64>::zeros(chain.len());
    for &i in &lattice {
        let ring = chain.ring_index[i].ok_or_else(|| {
            RingsimError::WrongGeometry("lattice emitter without ring membership".into())
        })?;
        let center = chain.metadata.ring_centers[ring];
        let p = chain.emitters[i].position;
        let phi = (p[1] - center[1]).atan2(p[0] - center[0]);
        amps[i] = C64::from_polar(norm, m as f64 * phi + k * center[0]);
    }
    Ok(amps)
}

/// One eigenmode classified against the `(m, k)` ansatz family.
#[derive(Clone, Debug)]
pub struct BandPoint {
    /// Index into the `ModeSet` this point was classified from.
    pub mode_index: usize,
    /// |m| of the best-overlap ansatz (±m contributions are summed).
    pub m_abs: usize,
    /// |k| of the best-overlap ansatz (±k contributions are summed).
    pub k: f64,
    /// Collective shift Re(λ).
    pub shift: f64,
    /// Collective decay −2 Im(λ).
    pub decay: f64,
    /// Summed ansatz fidelity `Σ_{±m,±k} |⟨S_{m,k}|v⟩|²`.
    pub fidelity: f64,
    /// Excitation fraction on the first and last rings.
    pub edge_weight: f64,
}

/// Band classification of a finite ring chain.
#[derive(Clone, Debug)]
pub struct BandStructure {
    /// One entry per eigenmode, ordered like the `ModeSet`.
    pub points: Vec<BandPoint>,
    /// Mode indices localized on the boundary rings (edge weight > 0.5)
    /// with energy inside the m=0 / |m|=1 gap window.
    pub edge_modes: Vec<usize>,
    /// Energy window (lower band edge, upper band edge) between the
    /// m = 0 and |m| = 1 bands of the corresponding infinite chain.
    pub gap_window: Option<(f64, f64)>,
    /// `min(Δ_gap^{(0)}, Δ_gap^{(1)})`: smallest distance of any edge
    /// state to the nearest band edge.
    pub min_gap: Option<f64>,
    /// Modes whose best fidelity is below 0.5 and whose (m, k) label is
    /// therefore unreliable.
    pub low_confidence: Vec<usize>,
}

/// Classify every eigenmode of a ring chain by its best-overlap
/// `(|m|, k)` label, locate edge states, and measure the band gap.
pub fn classify_bands(modes: &ModeSet, chain: &EmitterEnsemble) -> Result<BandStructure> {
    if chain.metadata.kind != GeometryKind::RingChain {
        return Err(RingsimError::WrongGeometry(chain.metadata.kind.to_string()));
    }
    if modes.len() != chain.len() {
        return Err(RingsimError::DimensionMismatch(format!(
            "{} modes vs {} emitters",
            modes.len(),
            chain.len()
        )));
    }
    let n_ring = chain.metadata.n_ring;
    let rings = chain.metadata.rings;
    let momenta = allowed_momenta(rings, chain.metadata.ring_spacing);
    let m_values = angular_momenta(n_ring);
    // distinct |m| labels and their member m's
    let mut m_abs_groups: Vec<(usize, Vec<i32>)> = Vec::new();
    for &m in &m_values {
        let key = m.unsigned_abs() as usize;
        match m_abs_groups.iter_mut().find(|(a, _)| *a == key) {
            Some((_, v)) => v.push(m),
            None => m_abs_groups.push((key, vec![m])),
        }
    }
    // precompute all ansatz states, keyed by (|m|, |k|): eigenmodes of
    // the open chain are standing waves, superpositions of ±k (and the
    // ±m ring modes are degenerate), so fidelities are summed over both
    // signs
    let mut ansatz: Vec<(usize, f64, Array1<C64>)> = Vec::new();
    for &(m_abs, ref members) in &m_abs_groups {
        for &k in &momenta {
            for &m in members {
                ansatz.push((m_abs, k.abs(), ansatz_state(chain, m, k)?));
            }
        }
    }
    let edge_rings: Vec<usize> = vec![0, rings - 1];
    let edge_emitters: Vec<usize> = edge_rings
        .iter()
        .flat_map(|&r| chain.ring_members(r))
        .collect();
    let lattice = chain.lattice_indices();

    let mut points = Vec::with_capacity(modes.len());
    let mut low_confidence = Vec::new();
    for j in 0..modes.len() {
        let v = modes.mode(j);
        // best (|m|, |k|) by summed fidelity over ±m and ±k
        let mut best = (0usize, 0.0f64, -1.0f64);
        let mut grouped: std::collections::HashMap<(usize, u64), f64> =
            std::collections::HashMap::new();
        for (m_abs, k, s) in &ansatz {
            let overlap: C64 = s.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            *grouped.entry((*m_abs, k.to_bits())).or_insert(0.0) += overlap.norm_sqr();
        }
        for ((m_abs, kb), f) in &grouped {
            if *f > best.2 {
                best = (*m_abs, f64::from_bits(*kb), *f);
            }
        }
        let lattice_weight: f64 = lattice.iter().map(|&i| v[i].norm_sqr()).sum();
        let edge_weight = if lattice_weight > 0.0 {
            edge_emitters.iter().map(|&i| v[i].norm_sqr()).sum::<f64>() / lattice_weight
        } else {
            0.0
        };
        if best.2 < 0.5 {
            low_confidence.push(j);
        }
        points.push(BandPoint {
            mode_index: j,
            m_abs: best.0,
            k: best.1,
            shift: modes.shift(j),
            decay: modes.decay(j),
            fidelity: best.2,
            edge_weight,
        });
    }

    // gap between the m = 0 and |m| = 1 bands of the infinite chain;
    // the finite-chain mode energies spread beyond the Bloch bands, so
    // the gap window is taken from the Bloch dispersion itself
    let disp = bloch_dispersion(n_ring, chain.metadata.d, chain.metadata.d_r, 33)?;
    let band_range = |m_abs: usize| -> Option<(f64, f64)> {
        disp.bands
            .iter()
            .find(|b| b.m_abs == m_abs)
            .map(|b| minmax(&b.shift))
    };
    let gap_window = match (band_range(0), band_range(1)) {
        (Some((max0, min0)), Some((max1, min1))) => {
            if max0 <= min1 {
                Some((max0, min1))
            } else if max1 <= min0 {
                Some((max1, min0))
            } else {
                None // bands overlap, no gap
            }
        }
        _ => None,
    };
    let mut edge_modes = Vec::new();
    let mut min_gap: Option<f64> = None;
    if let Some((lo, hi)) = gap_window {
        for p in &points {
            if p.edge_weight > 0.5 && p.shift > lo && p.shift < hi {
                edge_modes.push(p.mode_index);
                let gap = (p.shift - lo).min(hi - p.shift);
                min_gap = Some(min_gap.map_or(gap, |g: f64| g.min(gap)));
            }
        }
    }
    Ok(BandStructure {
        points,
        edge_modes,
        gap_window,
        min_gap,
        low_confidence,
    })
}

fn minmax(xs: &[f64]) -> (f64, f64) {
    let max = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    (max, min)
}

/// Per-mode localization report for ring-based geometries.
#[derive(Clone, Debug)]
pub struct EdgeLocalization {
    pub mode_index: usize,
    pub shift: f64,
    pub decay: f64,
    /// Excitation fraction on boundary rings.
    pub edge_weight: f64,
    /// Excitation fraction on interior rings.
    pub bulk_weight: f64,
    /// Excitation fraction on corner rings (equals the boundary rings
    /// for a 1D chain).
    pub corner_weight: f64,
    /// Mode decays faster than a single emitter (Γ_mode > Γ0).
    pub superradiant: bool,
}

/// Classify boundary/corner rings by neighbor count: rings with fewer
/// nearest-neighbor rings than the interior maximum are boundary rings,
/// rings with the minimum count are corner rings.
fn boundary_rings(centers: &[[f64; 3]]) -> (Vec<usize>, Vec<usize>) {
    let n = centers.len();
    if n < 2 {
        return ((0..n).collect(), (0..n).collect());
    }
    let mut min_dist = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dist(centers[i], centers[j]);
            min_dist = min_dist.min(d);
        }
    }
    let counts: Vec<usize> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && dist(centers[i], centers[j]) < 1.01 * min_dist)
                .count()
        })
        .collect();
    let max = *counts.iter().max().unwrap();
    let min = *counts.iter().min().unwrap();
    let edge: Vec<usize> = (0..n).filter(|&i| counts[i] < max).collect();
    let corner: Vec<usize> = (0..n).filter(|&i| counts[i] == min).collect();
    if edge.is_empty() {
        // all rings equivalent (e.g. two rings): everything is boundary
        ((0..n).collect(), corner)
    } else {
        (edge, corner)
    }
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Measure edge, bulk and corner localization of every eigenmode of a
/// ring-based geometry (chain or 2D ring lattice).
pub fn edge_localization(
    modes: &ModeSet,
    ensemble: &EmitterEnsemble,
) -> Result<Vec<EdgeLocalization>> {
    if !ensemble.metadata.kind.is_ring_based()
        || ensemble.metadata.kind == GeometryKind::SingleRing
    {
        return Err(RingsimError::WrongGeometry(ensemble.metadata.kind.to_string()));
    }
    if modes.len() != ensemble.len() {
        return Err(RingsimError::DimensionMismatch(format!(
            "{} modes vs {} emitters",
            modes.len(),
            ensemble.len()
        )));
    }
    let (edge_rings, corner_rings) = boundary_rings(&ensemble.metadata.ring_centers);
    let edge_emitters: Vec<usize> = edge_rings
        .iter()
        .flat_map(|&r| ensemble.ring_members(r))
        .collect();
    let corner_emitters: Vec<usize> = corner_rings
        .iter()
        .flat_map(|&r| ensemble.ring_members(r))
        .collect();
    let lattice = ensemble.lattice_indices();
    Ok((0..modes.len())
        .map(|j| {
            let v = modes.mode(j);
            let total: f64 = lattice.iter().map(|&i| v[i].norm_sqr()).sum();
            let edge: f64 = edge_emitters.iter().map(|&i| v[i].norm_sqr()).sum();
            let corner: f64 = corner_emitters.iter().map(|&i| v[i].norm_sqr()).sum();
            let decay = modes.decay(j);
            EdgeLocalization {
                mode_index: j,
                shift: modes.shift(j),
                decay,
                edge_weight: if total > 0.0 { edge / total } else { 0.0 },
                bulk_weight: if total > 0.0 { 1.0 - edge / total } else { 0.0 },
                corner_weight: if total > 0.0 { corner / total } else { 0.0 },
                superradiant: decay > 1.0,
            }
        })
        .collect())
}

/// Ring-to-ring coupling block of the infinite chain: entry `[a, b]` is
/// the effective coupling `J − iΓ/2` between emitter `a` of the ring at
/// the origin and emitter `b` of the ring displaced by `offset · d̃ x̂`.
fn coupling_block(ring0: &EmitterEnsemble, ring_spacing: f64, offset: i64) -> Result<Array2<C64>> {
    let n = ring0.len();
    let mut block = Array2::<C64>::zeros((n, n));
    let shift = offset as f64 * ring_spacing;
    for a in 0..n {
        for b in 0..n {
            if offset == 0 && a == b {
                block[[a, a]] = C64::new(0.0, -0.5);
                continue;
            }
            let pa = ring0.emitters[a].position;
            let pb = ring0.emitters[b].position;
            let r = [pa[0] - pb[0] - shift, pa[1] - pb[1], pa[2] - pb[2]];
            let g = green_projected(
                r,
                &ring0.emitters[a].polarization,
                &ring0.emitters[b].polarization,
            )?;
            let j = -3.0 * std::f64::consts::PI / crate::geometry::K0 * g.re;
            let gamma = 6.0 * std::f64::consts::PI / crate::geometry::K0 * g.im;
            block[[a, b]] = C64::new(j, -0.5 * gamma);
        }
    }
    Ok(block)
}

/// Bloch Hamiltonian of the infinite ring chain in the unit-cell
/// convention, `H(k) = Σ_{j} B_j e^{ikd̃j}` truncated at 50 neighbor
/// cells per side. Periodic in k with period `2π/d̃`.
pub fn bloch_hamiltonian(n_ring: usize, d: f64, d_r: f64, k: f64) -> Result<Array2<C64>> {
    let ring0 = build_ring(n_ring, d, [0.0; 3], 0.0)?;
    let ring_spacing = 2.0 * ring_radius(n_ring, d) + d_r;
    let mut h = coupling_block(&ring0, ring_spacing, 0)?;
    for j in 1..=BLOCH_CELLS as i64 {
        let b = coupling_block(&ring0, ring_spacing, j)?;
        let phase = C64::from_polar(1.0, k * ring_spacing * j as f64);
        // B_{−j} = B_j^T by reciprocity of the Green's function
        for a in 0..n_ring {
            for c in 0..n_ring {
                h[[a, c]] += b[[a, c]] * phase + b[[c, a]] * phase.conj();
            }
        }
    }
    Ok(h)
}

fn normalized_eig(h: &Array2<C64>) -> Result<(Vec<C64>, Array2<C64>)> {
    let (vals, vecs) = h
        .eig()
        .map_err(|e| RingsimError::Eigensolver(e.to_string()))?;
    let n = vals.len();
    let mut out = Array2::<C64>::zeros((n, n));
    for j in 0..n {
        let col = vecs.column(j);
        let norm = col.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for a in 0..n {
            out[[a, j]] = col[a] / norm;
        }
    }
    Ok((vals.to_vec(), out))
}

fn overlap(a: &Array1<C64>, b: &Array1<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Track one band through a sequence of Bloch Hamiltonians by
/// eigenvector continuity, starting from the vector closest to `seed`.
/// Returns `(eigenvalue, eigenvector)` per k point.
fn track_band(
    hs: &[Array2<C64>],
    seed: &Array1<C64>,
) -> Result<Vec<(C64, Array1<C64>)>> {
    let mut out = Vec::with_capacity(hs.len());
    let mut reference = seed.clone();
    for h in hs.iter() {
        let (vals, vecs) = normalized_eig(h)?;
        let mut best = (0usize, -1.0f64);
        for j in 0..vals.len() {
            let o = overlap(&vecs.column(j).to_owned(), &reference).norm();
            if o > best.1 {
                best = (j, o);
            }
        }
        if best.1 < 0.1 {
            return Err(RingsimError::IllConditionedLoop(best.1));
        }
        reference = vecs.column(best.0).to_owned();
        out.push((vals[best.0], reference.clone()));
    }
    Ok(out)
}

/// Zak phase of the m = 0 band of the infinite ring chain, from a
/// discrete Wilson loop over a closed k path through the Brillouin
/// zone. Needs at least 64 k points; the band is followed by
/// eigenvector continuity starting from the uniform (m = 0) spin wave.
pub fn zak_phase(n_ring: usize, d: f64, d_r: f64, n_k: usize) -> Result<f64> {
    if n_k < 64 {
        return Err(RingsimError::InvalidArgument(format!(
            "Zak phase needs at least 64 k points, got {n_k}"
        )));
    }
    let ring_spacing = 2.0 * ring_radius(n_ring, d) + d_r;
    let g = 2.0 * std::f64::consts::PI / ring_spacing;
    let ks: Vec<f64> = (0..n_k)
        .map(|i| -0.5 * g + g * i as f64 / n_k as f64)
        .collect();
    let hs: Vec<Array2<C64>> = ks
        .iter()
        .map(|&k| bloch_hamiltonian(n_ring, d, d_r, k))
        .collect::<Result<_>>()?;
    let seed = crate::spectrum::spin_wave_amplitudes(n_ring, 0);
    let band = track_band(&hs, &seed)?;
    // Wilson loop with wrap-around; the unit-cell convention makes
    // H(k + G) = H(k), so the loop closes on the first vector.
    let mut product = C64::new(1.0, 0.0);
    for i in 0..n_k {
        let a = &band[i].1;
        let b = &band[(i + 1) % n_k].1;
        let o = overlap(a, b);
        if o.norm() < 0.1 {
            return Err(RingsimError::IllConditionedLoop(o.norm()));
        }
        product *= o / o.norm();
    }
    Ok(-product.arg())
}

/// Bloch band curves of the infinite ring chain over half the Brillouin
/// zone, tracked by eigenvector continuity and labeled by |m|.
#[derive(Clone, Debug)]
pub struct BlochBands {
    pub k: Vec<f64>,
    pub bands: Vec<BlochBandCurve>,
    pub ring_spacing: f64,
}

#[derive(Clone, Debug)]
pub struct BlochBandCurve {
    pub m_abs: usize,
    pub shift: Vec<f64>,
    pub decay: Vec<f64>,
}

/// Compute all N_R Bloch bands on a uniform grid over `k ∈ [0, π/d̃]`.
pub fn bloch_dispersion(n_ring: usize, d: f64, d_r: f64, n_k: usize) -> Result<BlochBands> {
    if n_k < 2 {
        return Err(RingsimError::InvalidArgument("need n_k >= 2".into()));
    }
    let ring_spacing = 2.0 * ring_radius(n_ring, d) + d_r;
    let k_max = std::f64::consts::PI / ring_spacing;
    let ks: Vec<f64> = (0..n_k)
        .map(|i| k_max * i as f64 / (n_k - 1) as f64)
        .collect();
    let hs: Vec<Array2<C64>> = ks
        .iter()
        .map(|&k| bloch_hamiltonian(n_ring, d, d_r, k))
        .collect::<Result<_>>()?;
    let spin_waves: Vec<(usize, Array1<C64>)> = angular_momenta(n_ring)
        .into_iter()
        .map(|m| (m.unsigned_abs() as usize, crate::spectrum::spin_wave_amplitudes(n_ring, m)))
        .collect();
    let mut bands = Vec::with_capacity(n_ring);
    for (m_abs, seed) in &spin_waves {
        let curve = track_band(&hs, seed)?;
        bands.push(BlochBandCurve {
            m_abs: *m_abs,
            shift: curve.iter().map(|(l, _)| l.re).collect(),
            decay: curve.iter().map(|(l, _)| -2.0 * l.im).collect(),
        });
    }
    Ok(BlochBands {
        k: ks,
        bands,
        ring_spacing,
    })
}

/// Result of matching a band to a target energy and reading off the
/// group velocity there.
#[derive(Clone, Debug)]
pub struct TrapDesign {
    /// Resonant momentum where `J_{m,k} = Δ`.
    pub k_star: f64,
    /// |m| label of the crossing band.
    pub m_abs: usize,
    /// Group velocity `|∂_k J_{m,k}|` at the crossing.
    pub group_velocity: f64,
    /// Recommended trapping rate `Γ_T ≈ v_g / d̃`.
    pub optimal_trap_rate: f64,
}

/// Find where a Bloch band crosses the detuning Δ and estimate the
/// group velocity there with a five-point stencil of step `π/(64 d̃)`.
/// With `m_filter = Some(m)` only bands labeled |m| are considered;
/// among all crossings the one with the largest group velocity wins.
pub fn optimal_trapping(
    n_ring: usize,
    d: f64,
    d_r: f64,
    delta: f64,
    m_filter: Option<usize>,
) -> Result<TrapDesign> {
    let n_k = 129;
    let disp = bloch_dispersion(n_ring, d, d_r, n_k)?;
    let ring_spacing = disp.ring_spacing;
    let h_step = std::f64::consts::PI / (64.0 * ring_spacing);
    let mut best: Option<TrapDesign> = None;
    for band in &disp.bands {
        if let Some(m) = m_filter {
            if band.m_abs != m {
                continue;
            }
        }
        for i in 0..n_k - 1 {
            let (f0, f1) = (band.shift[i] - delta, band.shift[i + 1] - delta);
            if f0 == 0.0 || f0 * f1 < 0.0 {
                // linear interpolation of the crossing momentum
                let t = f0 / (f0 - f1);
                let k_star = disp.k[i] + t * (disp.k[i + 1] - disp.k[i]);
                // local eigenvector at the crossing, to follow the band
                // through the stencil points
                let h0 = bloch_hamiltonian(n_ring, d, d_r, k_star)?;
                let seed = crate::spectrum::spin_wave_amplitudes(
                    n_ring,
                    band.m_abs as i32,
                )
                ;
                let center = track_band(&[h0], &seed)?;
                let reference = center[0].1.clone();
                let sample = |k: f64| -> Result<f64> {
                    let h = bloch_hamiltonian(n_ring, d, d_r, k)?;
                    let b = track_band(&[h], &reference)?;
                    Ok(b[0].0.re)
                };
                let fm2 = sample(k_star - 2.0 * h_step)?;
                let fm1 = sample(k_star - h_step)?;
                let fp1 = sample(k_star + h_step)?;
                let fp2 = sample(k_star + 2.0 * h_step)?;
                let v_g = ((-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h_step)).abs();
                if best.as_ref().map_or(true, |b| v_g > b.group_velocity) {
                    best = Some(TrapDesign {
                        k_star,
                        m_abs: band.m_abs,
                        group_velocity: v_g,
                        optimal_trap_rate: v_g / ring_spacing,
                    });
                }
            }
        }
    }
    best.ok_or(RingsimError::NoResonantMomentum(delta))
}
