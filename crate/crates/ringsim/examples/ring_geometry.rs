//! Build the supported lattice geometries and print a short summary of
//! each: emitter count, donor/acceptor placement, and extent.

use ringsim::geometry::{build_geometry, GeometrySpec};

fn main() -> ringsim::Result<()> {
    let specs: Vec<(&str, GeometrySpec)> = vec![
        (
            "single ring + center donor",
            GeometrySpec::SingleRing {
                n_ring: 9,
                d: 0.05,
                rotation: 0.0,
                center_donor: true,
            },
        ),
        (
            "ring chain",
            GeometrySpec::RingChain {
                n_ring: 9,
                rings: 10,
                d: 0.05,
                d_r: 0.045,
                rotations: None,
            },
        ),
        (
            "square ring lattice",
            GeometrySpec::RingLatticeSquare {
                n_ring: 8,
                nx: 3,
                ny: 3,
                d: 0.05,
                d_r: 0.045,
            },
        ),
        (
            "hexagonal ring lattice",
            GeometrySpec::RingLatticeHexagonal {
                n_ring: 9,
                nx: 3,
                ny: 3,
                d: 0.06,
                d_r: 0.054,
            },
        ),
        ("linear chain", GeometrySpec::LinearChain { sites: 72, d: 0.06 }),
        ("hexagonal lattice", GeometrySpec::Hexagonal { nx: 20, ny: 10, d: 0.06 }),
        ("honeycomb lattice", GeometrySpec::Honeycomb { nx: 13, ny: 5, d: 0.06 }),
        ("free donor-acceptor pair", GeometrySpec::FreePair { d: 0.06 }),
    ];
    for (name, spec) in specs {
        let ens = build_geometry(&spec)?;
        let donor = ens.donor_index();
        let acceptor = ens.acceptor_index();
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for e in &ens.emitters {
            for a in 0..2 {
                lo[a] = lo[a].min(e.position[a]);
                hi[a] = hi[a].max(e.position[a]);
            }
        }
        println!(
            "{name:28} N = {:4}  extent = {:.3} x {:.3} λ0  donor = {:?}  acceptor = {:?}",
            ens.len(),
            hi[0] - lo[0],
            hi[1] - lo[1],
            donor,
            acceptor,
        );
    }
    Ok(())
}
