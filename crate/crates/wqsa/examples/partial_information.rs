//! The headline effect: knowing one digit of the target's hierarchical code
//! confines the search to a block of N1 = 2^(n - lambda + 1) items, and the
//! oracle count drops from ~ sqrt(N) to ~ sqrt(N1). Trusting a wrong digit
//! is safe in a perverse way: the target probability stays exactly zero.
//!
//!     cargo run --release --example partial_information

use wqsa::{choose_k, decode_digit, encode, run_search, SearchConfig, SearchVariant};

fn main() -> wqsa::Result<()> {
    let n = 10;
    let target = 12;

    // Some outside party leaks digit lambda = 5 of the target's code.
    let lambda = 5;
    let digit = encode(n, target)?.digits[lambda as usize - 1];
    let block = decode_digit(n, lambda, digit)?;
    println!(
        "target {target} of {}; leaked digit {digit} at scale {lambda} pins block [{}, {}]",
        1u64 << n,
        block.lo,
        block.hi
    );

    let baseline = run_search(&SearchConfig::new(n, target, SearchVariant::Grover)?)?;
    let k = choose_k(n, lambda, digit)?;
    let informed = run_search(&SearchConfig::new(n, target, SearchVariant::Wqsa { k })?)?;

    println!();
    println!("uninformed: m* = {:>3}, p = {:.6}", baseline.m_star, baseline.p_star);
    println!("informed:   m* = {:>3}, p = {:.6}  (wavelet index k = {k})", informed.m_star, informed.p_star);
    println!(
        "speedup: {:.2}x fewer oracle calls (sqrt(L) = {:.2} predicted)",
        baseline.m_star as f64 / informed.m_star as f64,
        ((1u64 << (lambda - 1)) as f64).sqrt()
    );

    // Now trust a wrong digit. The prepared state has no overlap with the
    // target, and the iteration never leaks amplitude across block lines.
    let wrong_k = choose_k(n, lambda, digit + 1)?;
    let misled = run_search(
        &SearchConfig::new(n, target, SearchVariant::Wqsa { k: wrong_k })?.with_trace(true),
    )?;
    let flat = misled.entries.iter().all(|e| e.p_target == 0.0);
    println!();
    println!(
        "wrong digit {}: p(target) stays {} through all {} iterations (exactly zero: {flat})",
        digit + 1,
        misled.p_star,
        misled.oracle_calls
    );
    Ok(())
}
