use hsproof::protocol::experiments::{experiment_s1, experiment_s2, experiment_s3, run_experiment_e};
use hsproof::protocol::provers::{BlindProver, ClassicalProver, HashedProver, TrapdoorLeakProver};
use hsproof::Params;

fn small() -> Params {
    Params::desk_default().with_d(4).unwrap()
}

#[test]
fn sampled_challenges_converge_to_full_set() {
    let p = small();
    for prover in [&TrapdoorLeakProver as &dyn ClassicalProver, &HashedProver] {
        let full = run_experiment_e(prover, &p, None, 600, 2).unwrap();
        // 256 draws over 16 challenges miss one with probability about 2e-6
        let sampled = run_experiment_e(prover, &p, Some(256), 600, 3).unwrap();
        let se = |r: &hsproof::protocol::experiments::EReport| r.stderr * 2.0;
        assert!((full.advantage - sampled.advantage).abs() <= 3.0 * (se(&full).powi(2) + se(&sampled).powi(2)).sqrt());
        assert!((full.rho1 - sampled.rho1).abs() < 0.05, "{} vs {}", full.rho1, sampled.rho1);
    }
}

#[test]
fn few_samples_overfit() {
    // with alpha = 2^d the draws repeat, so the best fit scores higher than on the full set
    let p = small();
    let full = run_experiment_e(&HashedProver, &p, None, 600, 4).unwrap();
    let sampled = run_experiment_e(&HashedProver, &p, Some(16), 600, 4).unwrap();
    assert!(sampled.rho0 > full.rho0 + 0.05);
}

#[test]
fn leak_needs_a_real_ciphertext() {
    let p = small();
    let s2 = experiment_s2(Box::new(TrapdoorLeakProver), &p, 200, 5).unwrap();
    let s3 = experiment_s3(Box::new(TrapdoorLeakProver), &p, 200, 5).unwrap();
    assert_eq!(s2.stats.mean, 1.0);
    assert!(s3.stats.mean < 0.7, "{}", s3.stats);
}

#[test]
fn s1_blind_prover_scores_near_zero() {
    let r = experiment_s1(Box::new(BlindProver), &small(), 2000, 6).unwrap();
    assert!(r.stats.within(0.0, 4.0), "{}", r.stats);
    assert_eq!(r.invert_fail_rate, 1.0);
}
