//! Anatomy of the transform: what the basis functions look like, how index k
//! splits into scale and shift, and why inverting e_k yields a block-shaped
//! state. Run with a small n and read the signs directly.
//!
//!     cargo run --release --example wavelet_blocks

use wqsa::{haar_forward, haar_inverse, index_to_scale, StateVector};

fn glyph(x: f64) -> char {
    if x > 1e-12 {
        '+'
    } else if x < -1e-12 {
        '-'
    } else {
        '.'
    }
}

fn main() -> wqsa::Result<()> {
    let n = 4;
    println!("wavelet basis functions at n = {n} (rows of the inverse transform)");
    println!();
    println!("  k  scale shift  signs over 0..{}", (1u32 << n) - 1);
    for k in 0..1usize << n {
        let idx = index_to_scale(n, k)?;
        let basis = haar_inverse(&StateVector::basis_state(n, k)?);
        let signs: String = basis.amplitudes().iter().map(|a| glyph(a.re)).collect();
        let (lambda, j) = match (idx.lambda, idx.j) {
            (Some(l), Some(j)) => (l.to_string(), j.to_string()),
            _ => ("-".into(), "-".into()),
        };
        println!(" {k:>2}  {lambda:>5} {j:>5}  {signs}  block [{}, {}]", idx.support_lo, idx.support_hi);
    }

    // The forward transform sends the uniform state to e_0: all detail
    // coefficients vanish, only the global average survives.
    let uniform = StateVector::uniform(n)?;
    let spectrum = haar_forward(&uniform);
    let nonzero: Vec<usize> = spectrum
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 1e-12)
        .map(|(i, _)| i)
        .collect();
    println!();
    println!("forward(uniform) has support {nonzero:?} (a single coefficient)");

    // Round trip sanity: inverse . forward is the identity.
    let back = haar_inverse(&spectrum);
    let dev: f64 = back
        .amplitudes()
        .iter()
        .zip(uniform.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("round-trip deviation {dev:.3e}");
    Ok(())
}
