//! Classical provers in the soundness experiments: plain play, rewinding on a real
//! ciphertext, rewinding on a uniform one, and the distinguishing experiment.

use hsproof::protocol::experiments::{experiment_s1, experiment_s2, experiment_s3, run_experiment_e};
use hsproof::protocol::provers::classical_prover;
use hsproof::Params;

fn main() -> hsproof::Result<()> {
    let p = Params::desk_default().with_d(4)?;
    for name in ["blind", "hashed", "leak"] {
        let s1 = experiment_s1(classical_prover(name)?, &p, 300, 2)?;
        let s2 = experiment_s2(classical_prover(name)?, &p, 100, 2)?;
        let s3 = experiment_s3(classical_prover(name)?, &p, 100, 2)?;
        println!("{name:<7} S1 {:+.3}  S2 {:+.3}  S3 {:+.3}", s1.stats.mean, s2.stats.mean, s3.stats.mean);
    }

    for (name, alpha) in [("leak", None), ("leak", Some(64)), ("hashed", Some(64))] {
        let prover = classical_prover(name)?;
        let e = run_experiment_e(prover.as_ref(), &p, alpha, 800, 9)?;
        let (lo, hi) = e.ci95();
        println!(
            "{name:<7} alpha {:>4}: rho real {:.3}, rho uniform {:.3}, advantage {:+.3} [{lo:+.3}, {hi:+.3}]",
            alpha.map_or("all".to_string(), |a| a.to_string()),
            e.rho0,
            e.rho1,
            e.advantage
        );
    }
    Ok(())
}
