//! Emitter geometries: rings, ring chains, 2D ring lattices and the
//! comparison lattices (linear chain, hexagonal, honeycomb, free pair).
//!
//! Unit conventions used throughout the crate: lengths in units of the
//! transition wavelength `λ0 = 1`, rates in units of the single-emitter
//! decay rate `Γ0 = 1`, `ħ = 1`. The wavenumber is `k0 = 2π`.
//!
//! Index convention (frozen, serialized with every output): lattice
//! emitters come first, ring by ring, then the donor, then the acceptor.
//! Rings lie in the x-y plane and chains extend along +x. The first
//! emitter of a ring sits at angle 0 unless a rotation is applied.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Result, RingsimError};

/// Wavenumber of the emitter transition, `2π/λ0` with `λ0 = 1`.
pub const K0: f64 = 2.0 * std::f64::consts::PI;

/// Circular polarization `(1, i, 0)/√2` used for all emitters.
pub fn circular_polarization() -> [C64; 3] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [C64::new(s, 0.0), C64::new(0.0, s), C64::new(0.0, 0.0)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Lattice,
    Donor,
    Acceptor,
}

impl std::fmt::Display for Role {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Role::Lattice => write!(f, "lattice"),
            Role::Donor => write!(f, "donor"),
            Role::Acceptor => write!(f, "acceptor"),
        }
    }
}

/// A single two-level dipole emitter.
#[derive(Clone, Debug)]
pub struct DipoleEmitter {
    /// Position in units of λ0.
    pub position: [f64; 3],
    /// Complex transition dipole orientation, unit Hermitian norm.
    pub polarization: [C64; 3],
    pub role: Role,
    /// Detuning from ω0 in units of Γ0 (Δ for donor/acceptor, disorder
    /// offset for lattice emitters).
    pub detuning: f64,
    /// Spontaneous decay rate in units of Γ0.
    pub decay_rate: f64,
    /// Trapping rate Γ_T in units of Γ0; nonzero only on the acceptor.
    pub trap_rate: f64,
}

impl DipoleEmitter {
    pub fn new(position: [f64; 3], role: Role) -> Self {
        DipoleEmitter {
            position,
            polarization: circular_polarization(),
            role,
            detuning: 0.0,
            decay_rate: 1.0,
            trap_rate: 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryKind {
    SingleRing,
    RingChain,
    RingLatticeSquare,
    RingLatticeHexagonal,
    LinearChain,
    Hexagonal,
    Honeycomb,
    FreePair,
}

impl GeometryKind {
    pub fn is_ring_based(self) -> bool {
        matches!(
            self,
            GeometryKind::SingleRing
                | GeometryKind::RingChain
                | GeometryKind::RingLatticeSquare
                | GeometryKind::RingLatticeHexagonal
        )
    }
}

impl std::fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GeometryKind::SingleRing => "single_ring",
            GeometryKind::RingChain => "ring_chain",
            GeometryKind::RingLatticeSquare => "ring_lattice_square",
            GeometryKind::RingLatticeHexagonal => "ring_lattice_hexagonal",
            GeometryKind::LinearChain => "linear_chain",
            GeometryKind::Hexagonal => "hexagonal",
            GeometryKind::Honeycomb => "honeycomb",
            GeometryKind::FreePair => "free_pair",
        };
        write!(f, "{s}")
    }
}

/// Declarative geometry description, deserializable from the run
/// configuration file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeometrySpec {
    /// One ring of `n_ring` emitters, optionally with a donor at the center.
    SingleRing {
        n_ring: usize,
        d: f64,
        #[serde(default)]
        rotation: f64,
        #[serde(default)]
        center_donor: bool,
    },
    /// Chain of `rings` rings along +x with donor/acceptor at the centers
    /// of the first and last ring.
    RingChain {
        n_ring: usize,
        rings: usize,
        d: f64,
        d_r: f64,
        /// Per-ring rotation offsets (radians); defaults to all zero.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rotations: Option<Vec<f64>>,
    },
    /// `nx` x `ny` square grid of rings; donor/acceptor at the centers of
    /// the two most distant rings.
    RingLatticeSquare {
        n_ring: usize,
        nx: usize,
        ny: usize,
        d: f64,
        d_r: f64,
    },
    /// `nx` x `ny` triangular (hexagonal) grid of rings; donor/acceptor at
    /// the centers of the two most distant rings.
    RingLatticeHexagonal {
        n_ring: usize,
        nx: usize,
        ny: usize,
        d: f64,
        d_r: f64,
    },
    /// Linear chain of `sites` emitters along x; donor/acceptor substitute
    /// the two sites closest to a λ0-long segment through the chain center.
    LinearChain { sites: usize, d: f64 },
    /// `nx` x `ny` triangular lattice of emitters with the same
    /// substitution rule as the linear chain.
    Hexagonal { nx: usize, ny: usize, d: f64 },
    /// Honeycomb lattice with `nx` x `ny` two-site unit cells and the same
    /// substitution rule.
    Honeycomb { nx: usize, ny: usize, d: f64 },
    /// Donor-acceptor pair at separation `d` with no lattice.
    FreePair { d: f64 },
}

/// Geometry bookkeeping carried along with every ensemble.
#[derive(Clone, Debug, Serialize)]
pub struct GeometryMetadata {
    pub kind: GeometryKind,
    /// Emitters per ring (0 for non-ring lattices).
    pub n_ring: usize,
    /// Number of rings (0 for non-ring lattices).
    pub rings: usize,
    /// Nearest-neighbor spacing d.
    pub d: f64,
    /// Inter-ring surface spacing d_R (ring lattices only).
    pub d_r: f64,
    /// Ring radius R = d / (2 sin(π/N_R)).
    pub radius: f64,
    /// Ring-center spacing d̃ = 2R + d_R.
    pub ring_spacing: f64,
    /// Ring centers, one per ring.
    pub ring_centers: Vec<[f64; 3]>,
}

/// An immutable ordered collection of emitters plus geometry metadata.
#[derive(Clone, Debug)]
pub struct EmitterEnsemble {
    pub emitters: Vec<DipoleEmitter>,
    pub metadata: GeometryMetadata,
    /// Ring membership per emitter; `None` for donor/acceptor and for
    /// emitters of non-ring lattices.
    pub ring_index: Vec<Option<usize>>,
}

impl EmitterEnsemble {
    pub fn len(&self) -> usize {
        self.emitters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.emitters.is_empty()
    }

    pub fn donor_index(&self) -> Option<usize> {
        self.emitters.iter().position(|e| e.role == Role::Donor)
    }

    pub fn acceptor_index(&self) -> Option<usize> {
        self.emitters.iter().position(|e| e.role == Role::Acceptor)
    }

    pub fn lattice_indices(&self) -> Vec<usize> {
        self.emitters
            .iter()
            .enumerate()
            .filter(|(_, e)| e.role == Role::Lattice)
            .map(|(i, _)| i)
            .collect()
    }

    /// Indices of the lattice emitters belonging to ring `ring`.
    pub fn ring_members(&self, ring: usize) -> Vec<usize> {
        self.ring_index
            .iter()
            .enumerate()
            .filter(|(_, r)| **r == Some(ring))
            .map(|(i, _)| i)
            .collect()
    }

    /// Returns a copy with the shared donor/acceptor detuning Δ set.
    pub fn with_donor_acceptor_detuning(&self, delta: f64) -> Self {
        let mut out = self.clone();
        for e in &mut out.emitters {
            if e.role != Role::Lattice {
                e.detuning = delta;
            }
        }
        out
    }

    /// Returns a copy with the acceptor trapping rate Γ_T set.
    pub fn with_trap_rate(&self, trap_rate: f64) -> Result<Self> {
        if trap_rate < 0.0 {
            return Err(RingsimError::InvalidArgument(format!(
                "trap_rate must be >= 0, got {trap_rate}"
            )));
        }
        let mut out = self.clone();
        let mut found = false;
        for e in &mut out.emitters {
            if e.role == Role::Acceptor {
                e.trap_rate = trap_rate;
                found = true;
            }
        }
        if trap_rate > 0.0 && !found {
            return Err(RingsimError::InvalidArgument(
                "ensemble has no acceptor to carry a trap rate".into(),
            ));
        }
        Ok(out)
    }

    /// Returns a copy with the donor and acceptor removed, keeping only
    /// the lattice emitters. Useful for analyzing the bare band
    /// structure of a geometry that was built with transport terminals.
    pub fn without_donor_acceptor(&self) -> Self {
        let keep: Vec<usize> = self.lattice_indices();
        EmitterEnsemble {
            emitters: keep.iter().map(|&i| self.emitters[i].clone()).collect(),
            ring_index: keep.iter().map(|&i| self.ring_index[i]).collect(),
            metadata: self.metadata.clone(),
        }
    }

    /// Euclidean distance between emitters `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let a = self.emitters[i].position;
        let b = self.emitters[j].position;
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }

    fn check_overlaps(&self) -> Result<()> {
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let r = self.distance(i, j);
                if r < 1e-9 {
                    return Err(RingsimError::Overlap(i, j, r));
                }
            }
        }
        Ok(())
    }
}

/// Ring radius for `n_ring` emitters at nearest-neighbor spacing `d`,
/// from `d = 2R sin(π/N_R)`.
pub fn ring_radius(n_ring: usize, d: f64) -> f64 {
    d / (2.0 * (std::f64::consts::PI / n_ring as f64).sin())
}

fn ring_positions(n_ring: usize, d: f64, center: [f64; 3], rotation: f64) -> Vec<[f64; 3]> {
    let radius = ring_radius(n_ring, d);
    (0..n_ring)
        .map(|j| {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / n_ring as f64 + rotation;
            [
                center[0] + radius * phi.cos(),
                center[1] + radius * phi.sin(),
                center[2],
            ]
        })
        .collect()
}

/// A single ring of `n_ring` emitters with spacing `d` in the x-y plane.
pub fn build_ring(n_ring: usize, d: f64, center: [f64; 3], rotation: f64) -> Result<EmitterEnsemble> {
    if n_ring < 3 {
        return Err(RingsimError::InvalidArgument(format!(
            "a ring needs at least 3 emitters, got {n_ring}"
        )));
    }
    if d <= 0.0 {
        return Err(RingsimError::InvalidArgument(format!(
            "emitter spacing must be positive, got {d}"
        )));
    }
    let emitters = ring_positions(n_ring, d, center, rotation)
        .into_iter()
        .map(|p| DipoleEmitter::new(p, Role::Lattice))
        .collect::<Vec<_>>();
    let radius = ring_radius(n_ring, d);
    let ensemble = EmitterEnsemble {
        ring_index: vec![Some(0); n_ring],
        emitters,
        metadata: GeometryMetadata {
            kind: GeometryKind::SingleRing,
            n_ring,
            rings: 1,
            d,
            d_r: 0.0,
            radius,
            ring_spacing: 2.0 * radius,
            ring_centers: vec![center],
        },
    };
    ensemble.check_overlaps()?;
    Ok(ensemble)
}

fn validate_spacings(d: f64, d_r: f64) -> Result<()> {
    if d <= 0.0 || d_r <= 0.0 {
        return Err(RingsimError::InvalidArgument(format!(
            "spacings must be strictly positive, got d={d}, d_r={d_r}"
        )));
    }
    Ok(())
}

/// Build a multi-ring ensemble from explicit ring centers; donor/acceptor
/// are placed at the centers of rings `donor_ring` and `acceptor_ring`.
fn build_ring_lattice(
    kind: GeometryKind,
    n_ring: usize,
    d: f64,
    d_r: f64,
    centers: Vec<[f64; 3]>,
    rotations: Option<Vec<f64>>,
    donor_ring: usize,
    acceptor_ring: usize,
) -> Result<EmitterEnsemble> {
    if n_ring < 3 {
        return Err(RingsimError::InvalidArgument(format!(
            "a ring needs at least 3 emitters, got {n_ring}"
        )));
    }
    validate_spacings(d, d_r)?;
    let rings = centers.len();
    let rotations = match rotations {
        Some(r) if r.len() != rings => {
            return Err(RingsimError::InvalidArgument(format!(
                "got {} rotation offsets for {} rings",
                r.len(),
                rings
            )))
        }
        Some(r) => r,
        None => vec![0.0; rings],
    };
    let mut emitters = Vec::with_capacity(rings * n_ring + 2);
    let mut ring_index = Vec::with_capacity(rings * n_ring + 2);
    for (j, (&center, &rot)) in centers.iter().zip(rotations.iter()).enumerate() {
        for p in ring_positions(n_ring, d, center, rot) {
            emitters.push(DipoleEmitter::new(p, Role::Lattice));
            ring_index.push(Some(j));
        }
    }
    emitters.push(DipoleEmitter::new(centers[donor_ring], Role::Donor));
    ring_index.push(None);
    emitters.push(DipoleEmitter::new(centers[acceptor_ring], Role::Acceptor));
    ring_index.push(None);
    let radius = ring_radius(n_ring, d);
    let ensemble = EmitterEnsemble {
        emitters,
        ring_index,
        metadata: GeometryMetadata {
            kind,
            n_ring,
            rings,
            d,
            d_r,
            radius,
            ring_spacing: 2.0 * radius + d_r,
            ring_centers: centers,
        },
    };
    ensemble.check_overlaps()?;
    Ok(ensemble)
}

/// Substitute the two lattice sites nearest to the endpoints of a
/// λ0-long segment through the lattice centroid (along x) by donor and
/// acceptor, then reorder to the frozen index convention.
fn substitute_donor_acceptor(
    kind: GeometryKind,
    d: f64,
    positions: Vec<[f64; 3]>,
) -> Result<EmitterEnsemble> {
    let n = positions.len();
    if n < 4 {
        return Err(RingsimError::InvalidArgument(format!(
            "lattice of {n} sites is too small to embed donor and acceptor"
        )));
    }
    let cx = positions.iter().map(|p| p[0]).sum::<f64>() / n as f64;
    let cy = positions.iter().map(|p| p[1]).sum::<f64>() / n as f64;
    let targets = [[cx - 0.5, cy, 0.0], [cx + 0.5, cy, 0.0]];
    let nearest = |t: [f64; 3], skip: Option<usize>| {
        positions
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .min_by(|(_, a), (_, b)| {
                let da = (a[0] - t[0]).powi(2) + (a[1] - t[1]).powi(2);
                let db = (b[0] - t[0]).powi(2) + (b[1] - t[1]).powi(2);
                da.partial_cmp(&db).unwrap()
            })
            .map(|(i, _)| i)
            .unwrap()
    };
    let donor_site = nearest(targets[0], None);
    let acceptor_site = nearest(targets[1], Some(donor_site));

    let mut emitters: Vec<DipoleEmitter> = positions
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != donor_site && *i != acceptor_site)
        .map(|(_, &p)| DipoleEmitter::new(p, Role::Lattice))
        .collect();
    emitters.push(DipoleEmitter::new(positions[donor_site], Role::Donor));
    emitters.push(DipoleEmitter::new(positions[acceptor_site], Role::Acceptor));
    let len = emitters.len();
    let ensemble = EmitterEnsemble {
        emitters,
        ring_index: vec![None; len],
        metadata: GeometryMetadata {
            kind,
            n_ring: 0,
            rings: 0,
            d,
            d_r: 0.0,
            radius: 0.0,
            ring_spacing: 0.0,
            ring_centers: vec![],
        },
    };
    ensemble.check_overlaps()?;
    Ok(ensemble)
}

/// Build the complete ensemble (lattice plus donor/acceptor) for a
/// geometry specification.
pub fn build_geometry(spec: &GeometrySpec) -> Result<EmitterEnsemble> {
    match spec {
        GeometrySpec::SingleRing {
            n_ring,
            d,
            rotation,
            center_donor,
        } => {
            let mut ensemble = build_ring(*n_ring, *d, [0.0; 3], *rotation)?;
            if *center_donor {
                ensemble.emitters.push(DipoleEmitter::new([0.0; 3], Role::Donor));
                ensemble.ring_index.push(None);
            }
            ensemble.check_overlaps()?;
            Ok(ensemble)
        }
        GeometrySpec::RingChain {
            n_ring,
            rings,
            d,
            d_r,
            rotations,
        } => {
            if *rings < 1 {
                return Err(RingsimError::InvalidArgument("ring chain needs rings >= 1".into()));
            }
            validate_spacings(*d, *d_r)?;
            let spacing = 2.0 * ring_radius(*n_ring, *d) + d_r;
            let centers: Vec<[f64; 3]> = (0..*rings)
                .map(|j| [j as f64 * spacing, 0.0, 0.0])
                .collect();
            build_ring_lattice(
                GeometryKind::RingChain,
                *n_ring,
                *d,
                *d_r,
                centers,
                rotations.clone(),
                0,
                *rings - 1,
            )
        }
        GeometrySpec::RingLatticeSquare { n_ring, nx, ny, d, d_r } => {
            if *nx < 1 || *ny < 1 {
                return Err(RingsimError::InvalidArgument(
                    "ring lattice extents must be >= 1".into(),
                ));
            }
            validate_spacings(*d, *d_r)?;
            let spacing = 2.0 * ring_radius(*n_ring, *d) + d_r;
            let mut centers = Vec::new();
            for j in 0..*ny {
                for i in 0..*nx {
                    centers.push([i as f64 * spacing, j as f64 * spacing, 0.0]);
                }
            }
            let (donor, acceptor) = most_distant_pair(&centers);
            build_ring_lattice(
                GeometryKind::RingLatticeSquare,
                *n_ring,
                *d,
                *d_r,
                centers,
                None,
                donor,
                acceptor,
            )
        }
        GeometrySpec::RingLatticeHexagonal { n_ring, nx, ny, d, d_r } => {
            if *nx < 1 || *ny < 1 {
                return Err(RingsimError::InvalidArgument(
                    "ring lattice extents must be >= 1".into(),
                ));
            }
            validate_spacings(*d, *d_r)?;
            let spacing = 2.0 * ring_radius(*n_ring, *d) + d_r;
            let mut centers = Vec::new();
            for j in 0..*ny {
                for i in 0..*nx {
                    let offset = if j % 2 == 1 { 0.5 * spacing } else { 0.0 };
                    centers.push([
                        i as f64 * spacing + offset,
                        j as f64 * spacing * 3f64.sqrt() / 2.0,
                        0.0,
                    ]);
                }
            }
            let (donor, acceptor) = most_distant_pair(&centers);
            build_ring_lattice(
                GeometryKind::RingLatticeHexagonal,
                *n_ring,
                *d,
                *d_r,
                centers,
                None,
                donor,
                acceptor,
            )
        }
        GeometrySpec::LinearChain { sites, d } => {
            if *d <= 0.0 {
                return Err(RingsimError::InvalidArgument("spacing must be positive".into()));
            }
            let positions: Vec<[f64; 3]> =
                (0..*sites).map(|i| [i as f64 * d, 0.0, 0.0]).collect();
            substitute_donor_acceptor(GeometryKind::LinearChain, *d, positions)
        }
        GeometrySpec::Hexagonal { nx, ny, d } => {
            if *d <= 0.0 {
                return Err(RingsimError::InvalidArgument("spacing must be positive".into()));
            }
            let mut positions = Vec::new();
            for j in 0..*ny {
                for i in 0..*nx {
                    let offset = if j % 2 == 1 { 0.5 * d } else { 0.0 };
                    positions.push([i as f64 * d + offset, j as f64 * d * 3f64.sqrt() / 2.0, 0.0]);
                }
            }
            substitute_donor_acceptor(GeometryKind::Hexagonal, *d, positions)
        }
        GeometrySpec::Honeycomb { nx, ny, d } => {
            if *d <= 0.0 {
                return Err(RingsimError::InvalidArgument("spacing must be positive".into()));
            }
            // Two-site basis; nearest-neighbor distance d.
            let a1 = [3f64.sqrt() * d, 0.0];
            let a2 = [3f64.sqrt() * d / 2.0, 1.5 * d];
            let mut positions = Vec::new();
            for j in 0..*ny {
                for i in 0..*nx {
                    let base = [i as f64 * a1[0] + j as f64 * a2[0], j as f64 * a2[1]];
                    positions.push([base[0], base[1], 0.0]);
                    positions.push([base[0], base[1] + d, 0.0]);
                }
            }
            substitute_donor_acceptor(GeometryKind::Honeycomb, *d, positions)
        }
        GeometrySpec::FreePair { d } => {
            if *d <= 0.0 {
                return Err(RingsimError::InvalidArgument("spacing must be positive".into()));
            }
            let ensemble = EmitterEnsemble {
                emitters: vec![
                    DipoleEmitter::new([0.0; 3], Role::Donor),
                    DipoleEmitter::new([*d, 0.0, 0.0], Role::Acceptor),
                ],
                ring_index: vec![None, None],
                metadata: GeometryMetadata {
                    kind: GeometryKind::FreePair,
                    n_ring: 0,
                    rings: 0,
                    d: *d,
                    d_r: 0.0,
                    radius: 0.0,
                    ring_spacing: 0.0,
                    ring_centers: vec![],
                },
            };
            ensemble.check_overlaps()?;
            Ok(ensemble)
        }
    }
}

fn most_distant_pair(centers: &[[f64; 3]]) -> (usize, usize) {
    let mut best = (0, 0);
    let mut best_d = -1.0;
    for i in 0..centers.len() {
        for j in (i + 1)..centers.len() {
            let d = (centers[i][0] - centers[j][0]).powi(2)
                + (centers[i][1] - centers[j][1]).powi(2)
                + (centers[i][2] - centers[j][2]).powi(2);
            if d > best_d {
                best_d = d;
                best = (i, j);
            }
        }
    }
    best
}

/// Rotate every ring independently about its own center by a uniform
/// random angle in `[0, 2π/N_R)`. Pure in `(ensemble, seed)`.
pub fn apply_rotational_disorder(ensemble: &EmitterEnsemble, seed: u64) -> Result<EmitterEnsemble> {
    if !ensemble.metadata.kind.is_ring_based() {
        return Err(RingsimError::WrongGeometry(ensemble.metadata.kind.to_string()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let sector = 2.0 * std::f64::consts::PI / ensemble.metadata.n_ring as f64;
    let mut out = ensemble.clone();
    for ring in 0..ensemble.metadata.rings {
        let angle: f64 = rng.gen::<f64>() * sector;
        let center = ensemble.metadata.ring_centers[ring];
        let (s, c) = angle.sin_cos();
        for i in out.ring_members(ring) {
            let p = out.emitters[i].position;
            let (x, y) = (p[0] - center[0], p[1] - center[1]);
            out.emitters[i].position = [
                center[0] + c * x - s * y,
                center[1] + s * x + c * y,
                p[2],
            ];
        }
    }
    Ok(out)
}

/// Draw i.i.d. Gaussian(0, sigma²) detuning offsets for the lattice
/// emitters; donor/acceptor detunings are untouched. Pure in
/// `(ensemble, sigma, seed)`.
pub fn apply_frequency_disorder(
    ensemble: &EmitterEnsemble,
    sigma: f64,
    seed: u64,
) -> Result<EmitterEnsemble> {
    if sigma < 0.0 {
        return Err(RingsimError::InvalidArgument(format!(
            "disorder sigma must be >= 0, got {sigma}"
        )));
    }
    let mut out = ensemble.clone();
    if sigma == 0.0 {
        return Ok(out);
    }
    let normal = Normal::new(0.0, sigma)
        .map_err(|e| RingsimError::InvalidArgument(e.to_string()))?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for e in &mut out.emitters {
        if e.role == Role::Lattice {
            e.detuning = normal.sample(&mut rng);
        }
    }
    Ok(out)
}
