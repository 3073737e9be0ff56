//! End-to-end acceptance run. Prints one `PASS`/`FAIL` line per criterion and
//! exits non-zero if any fails.

use std::f64::consts::SQRT_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cohomone::diagram::{check_theorem31_conditions, harmonic_dimension, harmonic_rep};
use cohomone::metric::{preset_round, preset_stiefel, random_admissible, smoothness_check, Ansatz, Curve};
use cohomone::obstruction::{bound_analysis, find_witness, second_variation_check, BoundVerdict, SearchParams, Tolerances, Verdict};
use cohomone::verify::{run_suite, Fault, Suite};

type Outcome = Result<String, String>;

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{out}; took {took:.1?}, limit {limit:?}"));
    }
    Ok(format!("{out} in {took:.1?}"))
}

fn suites(list: &[Suite]) -> Outcome {
    let mut lines = Vec::new();
    for &s in list {
        let r = run_suite(s, 20240601, Fault::None).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(r.to_string());
        }
        lines.push(format!("{} {} cases", s.name(), r.cases));
    }
    Ok(lines.join(", "))
}

fn engine_oracles() -> Outcome {
    timed(Duration::from_secs(30), || suites(&[Suite::BiInvariant, Suite::Sphere]))
}

fn closed_forms() -> Outcome {
    suites(&[Suite::ClosedForm, Suite::Brackets])
}

fn smoothness_gate() -> Outcome {
    let mut checked = 0;
    for n in 4..=6 {
        for (p, d) in [(preset_round(n), 1), (preset_stiefel(n), 2)] {
            let p = p.map_err(|e| e.to_string())?;
            let r = smoothness_check(&p, 1e-8);
            let slope = p.jet(0.0).f1.d1;
            if p.d != d || !r.passed || (slope - SQRT_2 / d as f64).abs() > 1e-8 || p.jet(p.length).h2.v.abs() > 1e-8 {
                return Err(format!("preset n = {n}, d = {d}: {:?}", r.failed().map(|c| &c.name).collect::<Vec<_>>()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} presets pass with f1'(0) = sqrt2/d and h2(L) = 0"))
}

fn separation() -> Outcome {
    timed(Duration::from_secs(300), || {
        let params = SearchParams::default();
        let mut worst = f64::NEG_INFINITY;
        let mut count = 0;
        for n in 4..=6 {
            for d in 3..=5 {
                for seed in 0..20 {
                    let p = random_admissible(n, d, seed, Ansatz::Reduced).map_err(|e| e.to_string())?;
                    let r = find_witness(&p, &params).map_err(|e| e.to_string())?;
                    let c = r.certificate.ok_or(format!("no witness for n = {n}, d = {d}, seed {seed}"))?;
                    let v = c.replay(&p).map_err(|e| e.to_string())?;
                    if r.verdict != Verdict::Witness || v >= -1e-9 {
                        return Err(format!("n = {n}, d = {d}, seed {seed}: replay {v:e}"));
                    }
                    worst = worst.max(v);
                    count += 1;
                }
            }
        }
        for n in 4..=6 {
            for p in [preset_round(n), preset_stiefel(n)] {
                let p = p.map_err(|e| e.to_string())?;
                let r = find_witness(&p, &params).map_err(|e| e.to_string())?;
                if r.verdict != Verdict::None {
                    return Err(format!("preset n = {n}, d = {} gave {:?}", p.d, r.verdict));
                }
            }
        }
        Ok(format!("{count} witnesses replay below {worst:.3e}, 6 presets clean"))
    })
}

fn endgame() -> Outcome {
    let target = SQRT_2 / 3.0 + 0.05;
    let mut lowest = f64::INFINITY;
    for n in 4..=6 {
        for seed in 0..5 {
            let p = random_admissible(n, 3, seed, Ansatz::Reduced).map_err(|e| e.to_string())?;
            let b = bound_analysis(&p, Tolerances::default().eps_for(p.length), 1e-7);
            if b.verdict != BoundVerdict::Contradiction || b.implied_bound <= target {
                return Err(format!("n = {n}, seed {seed}: bound {} ({:?})", b.implied_bound, b.verdict));
            }
            lowest = lowest.min(b.implied_bound);
        }
    }
    Ok(format!("15 profiles, smallest implied f1'(0) bound {lowest:.4} > {target:.4}"))
}

fn representations() -> Outcome {
    timed(Duration::from_secs(120), || {
        for (l, m, k) in [(3, 2, 5), (3, 3, 7), (4, 2, 9)] {
            let rep = harmonic_rep(l, m).map_err(|e| e.to_string())?;
            if rep.k != k || harmonic_dimension(l, m) != k {
                return Err(format!("({l},{m}): k = {}", rep.k));
            }
            let c = check_theorem31_conditions(&rep, k + 2);
            if !c.all_pass() || c.cond_a.fixed_dim != 1 || c.cond_c.multiplicity != 0 {
                return Err(format!("({l},{m}): conditions {:?}", c.failures()));
            }
        }
        for l in [3, 4] {
            let rep = harmonic_rep(l, 1).map_err(|e| e.to_string())?;
            let c = check_theorem31_conditions(&rep, rep.k + 2);
            if c.cond_b.passes {
                return Err(format!("({l},1): condition b passed"));
            }
        }
        Ok("k = 5, 7, 9 satisfy (a)-(d); m = 1 fails (b)".into())
    })
}

fn second_variation() -> Outcome {
    let tol = Tolerances::default();
    let mut max_integral: f64 = 0.0;
    for seed in 0..6 {
        let p = random_admissible(4 + seed as usize % 3, 3 + seed as u32 % 3, seed, Ansatz::Reduced).map_err(|e| e.to_string())?;
        let r = second_variation_check(&p, &tol).map_err(|e| e.to_string())?;
        if !r.passed || r.integral.abs() > 1e-7 {
            return Err(format!("reduced seed {seed}: integral {:e}", r.integral));
        }
        max_integral = max_integral.max(r.integral.abs());

        let l = p.length;
        let window = |s: f64| vec![0.0, 0.0, s / (l * l), -2.0 * s / l.powi(3), s / l.powi(4)];
        let mut h1 = window(-1.6);
        h1[0] = 1.0;
        for (h1, h12) in [(Curve::poly(h1), Curve::constant(0.0)), (Curve::constant(1.0), Curve::poly(window(0.8)))] {
            let mut q = p.clone();
            q.functions.h1 = h1;
            q.functions.h12 = h12;
            q.reduced = false;
            let r = second_variation_check(&q, &tol).map_err(|e| e.to_string())?;
            let localized = r.witness.as_ref().is_some_and(|w| w.interval.is_some() || w.plane.is_some());
            if r.passed || !localized {
                return Err(format!("perturbed seed {seed} not caught"));
            }
        }
    }
    Ok(format!("6 reduced profiles with |integral| <= {max_integral:.1e}, 12 perturbations caught"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("engine oracles", engine_oracles),
        ("closed forms and brackets", closed_forms),
        ("smoothness gate", smoothness_gate),
        ("obstruction separation", separation),
        ("endgame bound", endgame),
        ("representation theory", representations),
        ("second variation", second_variation),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
