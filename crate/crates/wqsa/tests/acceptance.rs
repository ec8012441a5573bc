//! End-to-end acceptance checks. Each test covers one advertised guarantee
//! at its stated tolerance and prints a single PASS/FAIL line with the worst
//! observed deviation, so a log scrape shows the whole scorecard.

use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use wqsa::{
    angles_for_target, choose_k, decode_digit, encode, haar_forward, haar_inverse, haar_matrix,
    index_to_scale, optimal_iterations, predicted_probability, rotation_angles, run_search,
    scale_to_index, speedup_table, validate, wavelet_initial_state, SearchConfig, SearchVariant,
    StateVector, Verdict,
};

fn check(name: &str, ok: bool, detail: &str) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn random_state(n: u32, rng: &mut ChaCha8Rng) -> StateVector {
    let size = 1usize << n;
    let mut amps: Vec<Complex64> = (0..size)
        .map(|_| {
            let u1: f64 = rng.gen::<f64>().max(1e-12);
            let u2: f64 = rng.gen();
            let r = (-2.0 * u1.ln()).sqrt();
            Complex64::new(
                r * (std::f64::consts::TAU * u2).cos(),
                r * (std::f64::consts::TAU * u2).sin(),
            )
        })
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::new(amps).unwrap()
}

fn apply_dense(m: &Array2<f64>, s: &StateVector) -> Vec<Complex64> {
    let amps = s.amplitudes();
    (0..amps.len())
        .map(|r| (0..amps.len()).map(|c| amps[c] * m[[r, c]]).sum())
        .collect()
}

/// The transform is orthogonal: dense Gram matrix against the identity, and
/// the fast kernels against the dense product on 200 random states.
#[test]
fn unitarity_dense_and_kernels() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst_gram = 0.0f64;
    let mut worst_kernel = 0.0f64;
    let mut states = 0u32;
    for n in 1..=10u32 {
        let w = haar_matrix(n).unwrap();
        let gram = w.dot(&w.t());
        let size = 1usize << n;
        for r in 0..size {
            for c in 0..size {
                let want = if r == c { 1.0 } else { 0.0 };
                worst_gram = worst_gram.max((gram[[r, c]] - want).abs());
            }
        }
        let wt = w.t().to_owned();
        for _ in 0..20 {
            let s = random_state(n, &mut rng);
            let fwd = haar_forward(&s);
            let inv = haar_inverse(&s);
            let fwd_dense = apply_dense(&w, &s);
            let inv_dense = apply_dense(&wt, &s);
            for i in 0..size {
                worst_kernel = worst_kernel.max((fwd.amplitudes()[i] - fwd_dense[i]).norm());
                worst_kernel = worst_kernel.max((inv.amplitudes()[i] - inv_dense[i]).norm());
            }
            states += 1;
        }
    }
    check(
        "unitarity",
        worst_gram <= 1e-12 && worst_kernel <= 1e-12 && states == 200,
        &format!(
            "n <= 10 dense gram deviation {worst_gram:.3e}, kernel vs dense {worst_kernel:.3e} \
             over {states} random states (bound 1e-12)"
        ),
    );
}

/// Every prepared state is flat on a contiguous block: magnitude 1/sqrt(N1),
/// positive first half, negative second half, zero outside.
#[test]
fn support_law_exhaustive() {
    let mut worst = 0.0f64;
    let mut cases = 0u64;
    for n in 1..=10u32 {
        for k in 2..1usize << n {
            let idx = index_to_scale(n, k).unwrap();
            let state = wavelet_initial_state(n, k).unwrap();
            let mag = 1.0 / (idx.n1 as f64).sqrt();
            for (i, a) in state.amplitudes().iter().enumerate() {
                let dev = match idx.sign_at(i) {
                    None => a.norm(),
                    Some(sign) => (a.re - sign as f64 * mag).abs().max(a.im.abs()),
                };
                worst = worst.max(dev);
            }
            cases += 1;
        }
    }
    check(
        "support-law",
        worst <= 1e-12 && cases > 0,
        &format!("exhaustive n <= 10, {cases} wavelet indices, worst deviation {worst:.3e} (bound 1e-12)"),
    );
}

/// Simulated success probability follows cos^2(m*theta - phi) through four
/// optimal periods, every scale up to n = 14, targets in both sign halves.
/// The naive offset acos(eps_w / N1), without the square root, is shown to
/// miss by a wide margin; only the sqrt form tracks the dynamics.
#[test]
fn closed_form_probability_tracks_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut worst = 0.0f64;
    let mut runs = 0u64;
    for n in 2..=14u32 {
        for lambda in 2..=n {
            let j = rng.gen_range(1..=1usize << (lambda - 1));
            let k = scale_to_index(lambda, j).unwrap();
            let idx = index_to_scale(n, k).unwrap();
            let half = idx.n1 / 2;
            let targets = [
                idx.support_lo + rng.gen_range(0..half),
                idx.support_lo + half + rng.gen_range(0..half),
            ];
            for target in targets {
                let config = SearchConfig::new(n, target, SearchVariant::Wqsa { k })
                    .unwrap()
                    .with_trace(true);
                let trace = run_search(&config).unwrap();
                let angles = angles_for_target(&idx, target).unwrap();
                let window = 4 * optimal_iterations(&angles);
                for entry in trace.entries.iter().filter(|e| e.m <= window) {
                    let dev = (entry.p_target - predicted_probability(entry.m, &angles)).abs();
                    worst = worst.max(dev);
                }
                runs += 1;
            }
        }
    }

    // Negative control: drop the square root from the offset. The curve
    // departs from the simulation by orders of magnitude beyond the bound.
    let idx = index_to_scale(8, 8).unwrap();
    let target = idx.support_lo;
    let config = SearchConfig::new(8, target, SearchVariant::Wqsa { k: 8 })
        .unwrap()
        .with_trace(true);
    let trace = run_search(&config).unwrap();
    let good = angles_for_target(&idx, target).unwrap();
    let skewed_phi = (good.eps_w as f64 / idx.n1 as f64).acos();
    let mut naive_worst = 0.0f64;
    for entry in trace.entries.iter().take(4 * optimal_iterations(&good) as usize + 1) {
        let predicted = (entry.m as f64 * good.theta - skewed_phi).cos().powi(2);
        naive_worst = naive_worst.max((entry.p_target - predicted).abs());
    }
    println!(
        "note closed-form: offset without the square root misses by {naive_worst:.3e} at N1 = {} \
         (documented failure; the sqrt(N1) form is the one verified above)",
        idx.n1
    );

    check(
        "closed-form",
        worst <= 1e-10 && naive_worst > 1e-3 && runs > 0,
        &format!(
            "residual {worst:.3e} over {runs} runs, m through four optimal periods (bound 1e-10)"
        ),
    );
}

fn fitted_m_star(t: u32) -> (f64, f64) {
    // One decade point per block size 2^t: scale-2 runs while the block is a
    // strict subrange, the full-width detail index for the largest sizes.
    let (n, k) = if t <= 16 { (t + 1, 3) } else { (t, 1) };
    let idx = index_to_scale(n, k).unwrap();
    let n1 = idx.n1 as f64;
    assert_eq!(idx.n1, 1usize << t);
    let cap = (std::f64::consts::FRAC_PI_2 * n1.sqrt()).ceil() as u64 + 2;
    let config = SearchConfig::new(n, idx.support_lo, SearchVariant::Wqsa { k })
        .unwrap()
        .with_max_iterations(cap);
    let trace = run_search(&config).unwrap();
    (n1.sqrt().ln(), (trace.m_star as f64).ln())
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Knowing one of L = 2^(lambda-1) blocks cuts the query count by sqrt(L):
/// measured ratios at n = 16 sit within 10% of sqrt(L), and the iteration
/// count scales linearly in sqrt(N1) across fourteen octaves.
#[test]
fn speedup_ratio_and_scaling_slope() {
    let lambdas: Vec<u32> = (4..=9).collect();
    let rows = speedup_table(16, &lambdas).unwrap();
    let mut worst_rel = 0.0f64;
    for row in &rows {
        worst_rel = worst_rel.max((row.ratio / row.sqrt_l - 1.0).abs());
    }

    let points: Vec<(f64, f64)> = (4..=18u32).into_par_iter().map(fitted_m_star).collect();
    let slope = least_squares_slope(&points);

    check(
        "speedup",
        rows.len() == 6 && worst_rel <= 0.10 && (0.98..=1.02).contains(&slope),
        &format!(
            "n = 16 ratio within {:.2}% of sqrt(L) for lambda 4..9; log-log slope {slope:.4} \
             over N1 = 2^4..2^18 (window [0.98, 1.02])",
            worst_rel * 100.0
        ),
    );
}

/// With no usable side information (k = 0 or 1) the wavelet run collapses to
/// the plain baseline: same optimal iteration count to within one step, same
/// peak probability to 1e-6.
#[test]
fn full_support_runs_match_the_baseline() {
    let mut worst_dm = 0u64;
    let mut worst_dp = 0.0f64;
    for n in [8u32, 10, 12] {
        for target in [0usize, (1 << n) / 3, (1 << n) - 1] {
            let base =
                run_search(&SearchConfig::new(n, target, SearchVariant::Grover).unwrap()).unwrap();
            for k in [0usize, 1] {
                let wq =
                    run_search(&SearchConfig::new(n, target, SearchVariant::Wqsa { k }).unwrap())
                        .unwrap();
                worst_dm = worst_dm.max(base.m_star.abs_diff(wq.m_star));
                worst_dp = worst_dp.max((base.p_star - wq.p_star).abs());
            }
        }
    }
    check(
        "degenerate-blocks",
        worst_dm <= 1 && worst_dp <= 1e-6,
        &format!(
            "k in {{0, 1}} vs baseline at n in {{8, 10, 12}}: max |m* difference| {worst_dm} \
             (bound 1), max |p* difference| {worst_dp:.3e} (bound 1e-6)"
        ),
    );
}

/// A target outside the prepared block is never amplified, and the zero is
/// exact in floating point, not merely small: the iteration never writes a
/// nonzero value into the complement of the block.
#[test]
fn wrong_block_stationarity_is_exact() {
    let grid: Vec<(u32, usize)> = (2..=8u32)
        .flat_map(|n| (2..1usize << n).map(move |k| (n, k)))
        .collect();
    let (worst, runs) = grid
        .par_iter()
        .map(|&(n, k)| {
            let idx = index_to_scale(n, k).unwrap();
            let mut worst = 0.0f64;
            let mut runs = 0u64;
            for target in (0..1usize << n).filter(|&w| idx.sign_at(w).is_none()) {
                let config = SearchConfig::new(n, target, SearchVariant::Wqsa { k })
                    .unwrap()
                    .with_trace(true);
                let trace = run_search(&config).unwrap();
                for entry in &trace.entries {
                    worst = worst.max(entry.p_target.abs());
                }
                runs += 1;
            }
            (worst, runs)
        })
        .reduce(|| (0.0, 0), |a, b| (a.0.max(b.0), a.1 + b.1));
    check(
        "stationarity",
        worst == 0.0 && runs > 0,
        &format!("exhaustive n <= 8, {runs} wrong-block runs, worst probability {worst:e} (bound: exactly zero)"),
    );
}

/// Digit codes are consistent with the block geometry: encode/decode round
/// trip, digits at one scale partition the index range, and the block named
/// by a digit is exactly the support of the search state for that digit.
#[test]
fn codebook_round_trip_partition_and_support() {
    let mut violations = 0u64;
    let mut cases = 0u64;

    for n in 1..=12u32 {
        for z in 0..1usize << n {
            let label = encode(n, z).unwrap();
            if !matches!(validate(&label), Verdict::Accept) {
                violations += 1;
            }
            for (lambda, &digit) in (1..=n).zip(label.digits.iter()) {
                let block = decode_digit(n, lambda, digit).unwrap();
                if z < block.lo || z > block.hi {
                    violations += 1;
                }
                cases += 1;
            }
        }
        // Partition: at every scale the blocks tile 0..2^n without overlap.
        for lambda in 1..=n {
            let mut next = 0usize;
            for j in 1..=1usize << (lambda - 1) {
                let block = decode_digit(n, lambda, j).unwrap();
                if block.lo != next {
                    violations += 1;
                }
                next = block.hi + 1;
                cases += 1;
            }
            if next != 1usize << n {
                violations += 1;
            }
        }
    }

    for n in 1..=10u32 {
        for lambda in 2..=n {
            for j in 1..=1usize << (lambda - 1) {
                let k = choose_k(n, lambda, j).unwrap();
                let idx = index_to_scale(n, k).unwrap();
                let block = decode_digit(n, lambda, j).unwrap();
                let state = wavelet_initial_state(n, k).unwrap();
                let support_matches = idx.support_lo == block.lo && idx.support_hi == block.hi;
                let amps_match = state
                    .amplitudes()
                    .iter()
                    .enumerate()
                    .all(|(i, a)| (a.norm() > 0.0) == (i >= block.lo && i <= block.hi));
                if !(support_matches && amps_match) {
                    violations += 1;
                }
                cases += 1;
            }
        }
    }

    check(
        "codebook",
        violations == 0 && cases > 0,
        &format!("round trip and partition n <= 12, support equality n <= 10: {cases} cases, {violations} violations"),
    );
}

/// Stopping at the optimum succeeds with probability at least 1 - 1/N1, both
/// in the closed form (every block size 2..2^20, all sign combinations) and
/// in simulation (n <= 16).
#[test]
fn success_threshold_at_the_optimum() {
    let mut worst_margin = f64::INFINITY;
    for t in 1..=20u32 {
        let n1 = 1u64 << t;
        let bound = 1.0 - 1.0 / n1 as f64;
        for eps_w in [1, -1] {
            for eps_r in [1, -1] {
                let angles = rotation_angles(n1, eps_w, eps_r).unwrap();
                let p = predicted_probability(optimal_iterations(&angles), &angles);
                worst_margin = worst_margin.min(p - bound);
            }
        }
    }

    let mut worst_sim_margin = f64::INFINITY;
    let mut runs = 0u64;
    for n in 2..=16u32 {
        let mut ks = vec![scale_to_index(2, 1).unwrap(), scale_to_index(n, 1).unwrap()];
        if n >= 8 {
            ks.push(1); // full-width detail index, N1 = 2^n
        }
        for k in ks {
            let idx = index_to_scale(n, k).unwrap();
            let config =
                SearchConfig::new(n, idx.support_lo, SearchVariant::Wqsa { k }).unwrap();
            let trace = run_search(&config).unwrap();
            let bound = 1.0 - 1.0 / idx.n1 as f64;
            worst_sim_margin = worst_sim_margin.min(trace.p_star - bound);
            runs += 1;
        }
    }

    // The N1 = 2 case meets the bound with equality, so exact arithmetic
    // would give margin 0; the slack only absorbs floating-point rounding.
    check(
        "success-threshold",
        worst_margin >= -1e-12 && worst_sim_margin >= -1e-9 && runs > 0,
        &format!(
            "closed form margin {worst_margin:.3e} over N1 = 2..2^20 (all sign pairs), \
             simulated margin {worst_sim_margin:.3e} over {runs} runs at n <= 16"
        ),
    );
}
