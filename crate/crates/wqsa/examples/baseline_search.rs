//! Plain amplitude amplification from a uniform start: find one marked item
//! among 2^n with ~ (pi/4) sqrt(N) oracle calls.
//!
//!     cargo run --release --example baseline_search

use wqsa::{rotation_angles, run_search, SearchConfig, SearchVariant};

fn main() -> wqsa::Result<()> {
    let n = 10;
    let target = 700;

    let config = SearchConfig::new(n, target, SearchVariant::Grover)?.with_trace(true);
    let trace = run_search(&config)?;

    println!("searching {} items for index {target}", 1u64 << n);
    println!("optimal stop m* = {} oracle calls, p(target) = {:.6}", trace.m_star, trace.p_star);
    println!();
    println!("  m     p(target)");
    for entry in trace.entries.iter().step_by(5) {
        let bar = "#".repeat((entry.p_target * 40.0).round() as usize);
        println!("{:>3}  {:>10.6}  {bar}", entry.m, entry.p_target);
    }

    // The whole trajectory is a two-level rotation, so the peak location is
    // known in closed form before the first oracle call.
    let angles = rotation_angles(1u64 << n, 1, 1)?;
    println!();
    println!(
        "closed form: theta = {:.6}, phi = {:.6}, predicted m* = {}",
        angles.theta,
        angles.phi,
        wqsa::optimal_iterations(&angles)
    );
    Ok(())
}
