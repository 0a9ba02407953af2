//! Donor-to-acceptor transport through a chain of rings: efficiency
//! versus the number of emitters per ring. Efficient transport only
//! emerges above a threshold ring size.

use ringsim::runner::config::ScenarioConfig;
use ringsim::runner::scenario::transport_table;

fn main() -> ringsim::Result<()> {
    println!("chain of 10 rings, d = 0.05 λ0, d_R/d = 0.9, Γ_T = 2 Γ0, t Γ0 = 150");
    println!("{:>7} {:>8}", "N_R", "η_t");
    for n_ring in 3..=12 {
        let cfg = ScenarioConfig::from_toml_str(&format!(
            r#"
[geometry]
kind = "ring_chain"
n_ring = {n_ring}
rings = 10
d = 0.05
d_r = 0.045

[physics]
delta = 0.0
trap_rate = 2.0
t_max = 150.0
time_points = 151

[analysis]
kind = "transport"
"#
        ))?;
        let (_, eta) = transport_table(&cfg, None)?;
        let bar: String = std::iter::repeat('#').take((eta * 40.0) as usize).collect();
        println!("{n_ring:>7} {eta:>8.3} {bar}");
    }
    Ok(())
}
