//! The success probability follows cos^2(m theta - phi) exactly, with theta
//! and phi fixed by the block size and two signs read off the initial state.
//! This example overlays the simulation on the prediction and prints the
//! residual, which sits at floating-point noise.
//!
//!     cargo run --release --example closed_form_check

use wqsa::{
    angles_for_target, index_to_scale, predicted_probability, run_search, scale_to_index,
    theory_residual, SearchConfig, SearchVariant,
};

fn main() -> wqsa::Result<()> {
    let n = 12;
    let lambda = 6;
    let j = 3;
    let k = scale_to_index(lambda, j)?;
    let idx = index_to_scale(n, k)?;

    // A target in the negative half of the block, so eps_w = -1 and the
    // offset phi flips sign relative to the positive half.
    let target = idx.support_hi;
    let angles = angles_for_target(&idx, target).expect("target chosen inside the block");
    println!(
        "n = {n}, scale {lambda}, shift {j}: block [{}, {}], N1 = {}",
        idx.support_lo, idx.support_hi, idx.n1
    );
    println!(
        "eps_w = {:+}, eps_r = {:+}, theta = {:.6}, phi = {:.6}",
        angles.eps_w, angles.eps_r, angles.theta, angles.phi
    );
    println!();

    let config = SearchConfig::new(n, target, SearchVariant::Wqsa { k })?.with_trace(true);
    let trace = run_search(&config)?;

    println!("  m   simulated     predicted      |difference|");
    for entry in &trace.entries {
        let predicted = predicted_probability(entry.m, &angles);
        println!(
            "{:>3}   {:.9}   {:.9}   {:.3e}",
            entry.m,
            entry.p_target,
            predicted,
            (entry.p_target - predicted).abs()
        );
        if entry.m >= 12 {
            break;
        }
    }
    println!("  ...");
    println!();
    println!(
        "worst residual over the full {}-step trace: {:.3e}",
        trace.oracle_calls,
        theory_residual(&trace, &angles)
    );
    println!(
        "optimal stop from the angles alone: m* = {} (simulation found {})",
        wqsa::optimal_iterations(&angles),
        trace.m_star
    );
    Ok(())
}
