//! Zak phase of the m = 0 band of an infinite ring chain, computed as
//! a discrete Wilson loop over the Brillouin zone. The phase is
//! nonzero in the dimerized regime and converges with the k grid.

use ringsim::bands::zak_phase;

fn main() -> ringsim::Result<()> {
    let (n_ring, d) = (9, 0.05);
    println!("N_R = {n_ring}, d = {d} λ0");
    println!("{:>8} {:>10} {:>12}", "d_R/d", "n_k", "Zak phase");
    for ratio in [0.34, 0.6, 0.9, 1.5] {
        for n_k in [64usize, 128, 256] {
            let phi = zak_phase(n_ring, d, ratio * d, n_k)?;
            println!("{ratio:>8.2} {n_k:>10} {phi:>12.6}");
        }
    }
    println!();
    println!("The dimerized chain (d_R/d < 1) carries a nontrivial Wilson-loop");
    println!("phase; long-range and non-Hermitian couplings shift it away from");
    println!("the quantized 0/π values of a nearest-neighbor SSH chain.");
    Ok(())
}
