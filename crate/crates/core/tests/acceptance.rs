//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero if any fail.

use std::f64::consts::FRAC_1_SQRT_2;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hsproof::algebra::ZqVec;
use hsproof::checks::{run_check, FourierCheck};
use hsproof::games::ghz::{
    ghz4_closed_form, ghz_strategy_value, ghz_value_bruteforce, reduce_ghz4_to_ghz3, single_bit_strategy, Repetition,
};
use hsproof::games::jgame::{j_bias_fourier_identity, j_score_mask};
use hsproof::games::parity::max_eta_parity_balanced;
use hsproof::games::strategy::{DependentFamily, DeterministicStrategy};
use hsproof::lattice::{decrypt, encrypt, gen_trap, invert};
use hsproof::protocol::attack::{best_score, sampling_check};
use hsproof::protocol::experiments::{all_challenges, run_experiment_e};
use hsproof::protocol::game_j::{run_game_j, JPlayer};
use hsproof::protocol::game_r::{run_game_r, Prover};
use hsproof::protocol::provers::{BlindProver, TrapdoorLeakProver};
use hsproof::{BitString, Params, Rational};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn c1_honest_j() -> Outcome {
    let start = Instant::now();
    let r = run_game_j(JPlayer::Honest, 4, 200_000, 1, false).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let wins = r.transcripts.iter().filter(|t| t.score == 1).count() as f64 / r.transcripts.len() as f64;
    let target_win = 0.5 * (1.0 + FRAC_1_SQRT_2);
    let msg = format!(
        "mean {:.4} (target {:.4} ± 0.01), win rate {:.4} (target {:.4} ± 0.005), {:.1}s",
        r.stats.mean,
        FRAC_1_SQRT_2,
        wins,
        target_win,
        elapsed.as_secs_f64()
    );
    ensure((r.stats.mean - FRAC_1_SQRT_2).abs() <= 0.01, msg.clone())?;
    ensure((wins - target_win).abs() <= 0.005, msg.clone())?;
    ensure(elapsed < Duration::from_secs(10), msg.clone())?;
    Ok(msg)
}

fn c2_honest_game_r() -> Outcome {
    let p = Params::desk_default();
    let v = p.verdicts();
    ensure(v.tau_positive && v.gadget_margin, format!("desk preset not validated: {:?}", v.failures()))?;
    let start = Instant::now();
    let r = run_game_r(&Prover::Honest, &p, 10_000, 1, false).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let (m, sigma, tau, q, d) = (p.m as f64, p.sigma, p.tau as f64, p.q as f64, p.d as f64);
    let e_floor = 1.0 - m * sigma / (2.0 * tau + 1.0) - 0.02;
    let f_floor = 1.0 - (2.0 * sigma + d + m) / q - 0.02;
    let (pe, pf) = (r.e_rate.unwrap_or(0.0), r.f_rate.unwrap_or(0.0));
    let cond = r.conditional.ok_or("no conditional score")?;
    let msg = format!(
        "P(E) {pe:.4} >= {e_floor:.4}, P(F) {pf:.4} >= {f_floor:.4}, score|E,F {:.4} ± {:.4} over {} trials (target {:.4} ± 0.02), {:.1}s",
        cond.mean,
        cond.stderr,
        cond.trials,
        FRAC_1_SQRT_2,
        elapsed.as_secs_f64()
    );
    ensure(pe >= e_floor && pf >= f_floor, msg.clone())?;
    ensure((cond.mean - FRAC_1_SQRT_2).abs() <= 0.02, msg.clone())?;
    ensure(elapsed < Duration::from_secs(300), msg.clone())?;
    ensure(r.transcripts.iter().all(|t| t.is_consistent()), "transcript re-scoring mismatch".into())?;
    Ok(msg)
}

fn c3_bruteforce() -> Outcome {
    let three_quarters = Rational::new(3, 4);
    let g4 = ghz_value_bruteforce(4, Repetition::Single).map_err(|e| e.to_string())?;
    let g3 = ghz_value_bruteforce(3, Repetition::Single).map_err(|e| e.to_string())?;
    ensure(g4 == three_quarters && g3 == three_quarters, format!("GHZ_4 {g4}, GHZ_3 {g3}"))?;

    for t in 0..256u32 {
        let tables = [t as u8 & 3, (t >> 2) as u8 & 3, (t >> 4) as u8 & 3, (t >> 6) as u8 & 3];
        let strategies: Vec<DeterministicStrategy> = tables.iter().map(|&x| single_bit_strategy(x)).collect();
        let direct = ghz_strategy_value(&strategies).map_err(|e| e.to_string())?;
        ensure(direct == ghz4_closed_form(tables), format!("closed form differs on tuple {tables:?}"))?;
    }

    let reduction_holds = |s: &[DeterministicStrategy; 4], d: usize| -> Result<bool, String> {
        let four = ghz_strategy_value(s).map_err(|e| e.to_string())?;
        let mut total = Rational::from_integer(0);
        for t in 0..1u64 << d {
            let three = reduce_ghz4_to_ghz3(&s[0], &s[1], &s[2], &s[3], t);
            total += ghz_strategy_value(&three).map_err(|e| e.to_string())?;
        }
        Ok(total / Rational::from_integer(1 << d) == four)
    };
    let mut checked = 0;
    for idx in 0..256u32 {
        let s = [0, 2, 4, 6].map(|sh| single_bit_strategy((idx >> sh) as u8 & 3));
        ensure(reduction_holds(&s, 1)?, format!("reduction changes the score at d=1, tuple {idx}"))?;
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let fam = DependentFamily::unrestricted(2, 2);
    for _ in 0..2000 {
        let s = [(); 4].map(|_| fam.nth(rng.gen_range(0..fam.count())));
        ensure(reduction_holds(&s, 2)?, "reduction changes the score at d=2".into())?;
        checked += 1;
    }
    Ok(format!(
        "omega(GHZ_4) = omega(GHZ_3) = 3/4, closed form = enumeration on 256 tuples, reduction exact on {checked} strategy tuples (all at d=1, 2000 random at d=2)"
    ))
}

fn c4_eta_ceilings() -> Outcome {
    let mut parts = Vec::new();
    for d in 1..=2 {
        let v = max_eta_parity_balanced(d, true).map_err(|e| e.to_string())?;
        let bound = Rational::new(3i128.pow(d as u32), 4i128.pow(d as u32));
        ensure(v <= bound, format!("time-ordered d={d}: {v} > {bound}"))?;
        parts.push(format!("time-ordered d={d}: {v} <= {bound}"));
    }
    let v = max_eta_parity_balanced(1, false).map_err(|e| e.to_string())?;
    let ghz = ghz_value_bruteforce(4, Repetition::Single).map_err(|e| e.to_string())?;
    ensure(v <= ghz, format!("unrestricted d=1: {v} > {ghz}"))?;
    parts.push(format!("unrestricted d=1: {v} <= omega(GHZ_4) = {ghz}"));
    Ok(parts.join(", "))
}

fn c5_fourier_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    let mut check = |a: &DeterministicStrategy, b: &DeterministicStrategy, d: usize| -> Result<(), String> {
        let id = j_bias_fourier_identity(a, b, d).map_err(|e| e.to_string())?;
        worst = worst.max(id.identity_error());
        pairs += 1;
        ensure(id.identity_error() <= 1e-9, format!("identity off by {:e} at d={d}", id.identity_error()))?;
        ensure(id.chain_holds(), format!("bound chain fails at d={d}: {id:?}"))
    };
    let fam1 = DependentFamily::unrestricted(1, 2);
    for a in fam1.iter() {
        for b in fam1.iter() {
            check(&a, &b, 1)?;
        }
    }
    let fam2 = DependentFamily::unrestricted(2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let a = fam2.nth(rng.gen_range(0..fam2.count()));
        let b = fam2.nth(rng.gen_range(0..fam2.count()));
        check(&a, &b, 2)?;
    }
    Ok(format!("{pairs} strategy pairs (256 exhaustive at d=1, 1000 random at d=2), worst identity error {worst:.2e}, chain never fails"))
}

fn c6_uncertainty() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut parts = Vec::new();
    for check in [FourierCheck::Parseval, FourierCheck::Convolution, FourierCheck::Donoho, FourierCheck::Uncertainty] {
        let r = run_check(check, 4, 3, 1000, &mut rng).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{check}: {} violations, worst margin {:e}", r.violations(), r.worst_margin))?;
        match check {
            FourierCheck::Parseval | FourierCheck::Convolution => {
                ensure(r.worst_margin < 1e-9, format!("{check} deviation {:e}", r.worst_margin))?;
                parts.push(format!("{check} max dev {:.1e}", r.worst_margin));
            }
            FourierCheck::Donoho => {
                let product = r.worst_product.unwrap_or(0.0);
                ensure(product >= 1.0 - 1e-9, format!("product {product}"))?;
                ensure(!r.equality_cases.is_empty(), "no Donoho-Stark equality case".into())?;
                parts.push(format!(
                    "donoho min ratio {:.3}, min product {:.6}, {} coset equalities",
                    r.worst_margin,
                    product,
                    r.equality_cases.len()
                ));
            }
            FourierCheck::Uncertainty => {
                ensure(!r.equality_cases.is_empty(), "no equality case for the bound".into())?;
                parts.push(format!(
                    "bound min slack {:.2e}, {} coset equalities",
                    r.worst_margin,
                    r.equality_cases.len()
                ));
            }
        }
    }
    Ok(parts.join("; "))
}

fn c7_lattice() -> Outcome {
    let p = Params::desk_default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let two_tau = 2 * p.tau as i64;
    let mut inverted = 0;
    for _ in 0..20 {
        let (a, key) = gen_trap(&p, &mut rng);
        for _ in 0..50 {
            let s = ZqVec::random(p.n, p.q, &mut rng);
            let e: Vec<i64> = (0..p.m).map(|_| rng.gen_range(-two_tau..=two_tau)).collect();
            let v = a.mul_vec(&s).unwrap().add(&ZqVec::from_signed(&e, p.q)).unwrap();
            let got = invert(&a, &key, &v, p.tau).map_err(|e| e.to_string())?;
            ensure(got.as_ref() == Some(&s), format!("inversion failed after {inverted} successes"))?;
            inverted += 1;
        }
    }
    let mut decrypted = 0;
    for _ in 0..500 {
        let h = BitString::random(p.d, &mut rng);
        let enc = encrypt(&h, &p, &mut rng).map_err(|e| e.to_string())?;
        let got = decrypt(&enc.ciphertext, &enc.trapdoor, &p).map_err(|e| e.to_string())?;
        ensure(got.as_ref() == Some(&h), format!("decryption failed after {decrypted} successes"))?;
        decrypted += 1;
    }
    Ok(format!("invert 1000/1000 with ||e|| <= 2 tau = {two_tau}, encrypt/decrypt 500/500"))
}

fn direct_max(x: u64, d: usize, pairs: &[(u64, u64)]) -> Rational {
    (0..1u64 << (d + 1))
        .map(|a| {
            let s: i128 = pairs.iter().map(|&(y, b)| j_score_mask(x, y, a, b) as i128).sum();
            Rational::new(s, pairs.len() as i128)
        })
        .max()
        .unwrap()
}

fn c8_attack() -> Outcome {
    let p = Params::desk_default();
    assert_eq!(p.d, 6);
    let leak = run_experiment_e(&TrapdoorLeakProver, &p, Some(64), 2000, 8).map_err(|e| e.to_string())?;
    let blind = run_experiment_e(&BlindProver, &p, Some(64), 2000, 8).map_err(|e| e.to_string())?;
    let msg = format!(
        "leak advantage {:.4} ± {:.4} (>= 0.3), blind advantage {:.4} ± {:.4} (|.| <= 3 sigma)",
        leak.advantage, leak.stderr, blind.advantage, blind.stderr
    );
    ensure(leak.advantage >= 0.3, msg.clone())?;
    ensure(blind.advantage.abs() <= 3.0 * blind.stderr, msg.clone())?;

    // BestScore against the direct maximum over a
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut cases = 0;
    for d in 1..=3usize {
        let ys = all_challenges(d);
        let tables: Vec<Vec<u64>> = if d <= 2 {
            let fam = DependentFamily::unrestricted(d, d + 1);
            fam.iter().map(|s| s.table().to_vec()).collect()
        } else {
            (0..4096).map(|_| (0..1 << d).map(|_| rng.gen_range(0..1u64 << (d + 1))).collect()).collect()
        };
        for table in &tables {
            for xs in 0..1u64 << d {
                let x = xs | 1 << d;
                let pairs: Vec<(u64, u64)> =
                    ys.iter().map(|y| (y.to_mask(), table[(y.to_mask() & ((1 << d) - 1)) as usize])).collect();
                let bits: Vec<(BitString, BitString)> = pairs
                    .iter()
                    .map(|&(y, b)| (BitString::from_mask(y, d + 1), BitString::from_mask(b, d + 1)))
                    .collect();
                let got = best_score(&BitString::from_mask(x, d + 1), &bits).map_err(|e| e.to_string())?;
                let want = direct_max(x, d, &pairs);
                let got_exact = Rational::new(pairs.len() as i128 - 2 * got.errors as i128, pairs.len() as i128);
                ensure(got_exact == want, format!("best_score {got_exact} vs direct {want} at d={d}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{msg}; BestScore = direct max over all a on {cases} (x, answer table) cases, d <= 3"))
}

fn c9_sampling() -> Outcome {
    let (s_count, t_count, alpha, reps) = (1usize << 8, 1usize << 10, 64usize, 200usize);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = (0.0f64, 0.0f64);
    for table_no in 0..10 {
        // rows with different win rates, entries +-1
        let table: Vec<f64> = (0..s_count)
            .flat_map(|_| {
                let p: f64 = rng.gen();
                (0..t_count).map(|_| if rng.gen::<f64>() < p { 1.0 } else { -1.0 }).collect::<Vec<_>>()
            })
            .collect();
        let table = if table_no % 2 == 0 {
            table
        } else {
            (0..s_count * t_count).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect()
        };
        let c = sampling_check(&table, t_count, alpha, reps, false, &mut rng);
        ensure(c.holds(), format!("table {table_no}: gap {:.4} > bound {:.4}", c.gap, c.bound))?;
        if c.gap > worst.0 {
            worst = (c.gap, c.bound);
        }
    }
    Ok(format!("10 tables, largest |E[L'] - L| = {:.4} <= bound {:.4} (natural log)", worst.0, worst.1))
}

fn field(out: &str, prefix: &str) -> Option<f64> {
    out.lines()
        .find(|l| l.trim_start().starts_with(prefix))
        .and_then(|l| l.split('=').nth(1))
        .and_then(|v| v.split_whitespace().next())
        .and_then(|v| v.parse().ok())
}

fn c10_plan_arithmetic() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_hsproof"))
        .args(["--log2-mode", "--out"])
        .arg(dir.path())
        .args(["attack", "--experiment", "plan", "--d", "40", "--epsilon", "0.05", "--alpha", "400000"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    let ceiling = field(&text, "classical ceiling").ok_or("no ceiling line")?;
    let slack = field(&text, "sampling slack").ok_or("no slack line")?;
    let threshold = field(&text, "threshold ceiling + epsilon").ok_or("no threshold line")?;
    let msg = format!(
        "ceiling {ceiling:.6} (< 0.1127: {}), threshold {threshold:.4} (expected 0.1617), slack {slack:.5} (expected 0.01886)",
        ceiling < 0.1127
    );
    let r4 = |x: f64| (x * 1e4).round() / 1e4;
    ensure(ceiling < 0.1127, msg.clone())?;
    ensure(r4(slack) == r4(0.01886), msg.clone())?;
    ensure(r4(threshold) == 0.1617, msg.clone())?;
    Ok(msg)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 honest J-game score", c1_honest_j),
        ("2 honest Game R pipeline", c2_honest_game_r),
        ("3 brute-force exactness", c3_bruteforce),
        ("4 parity-balanced eta ceilings", c4_eta_ceilings),
        ("5 Fourier identity for J bias", c5_fourier_identity),
        ("6 uncertainty suite", c6_uncertainty),
        ("7 lattice contract", c7_lattice),
        ("8 attack machinery", c8_attack),
        ("9 sampling proposition", c9_sampling),
        ("10 attack-plan arithmetic", c10_plan_arithmetic),
    ];
    let mut failures = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
