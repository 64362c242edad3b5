//! A two-branch claw state measured the way the honest prover does in round two.

use hsproof::games::jgame::j_score;
use hsproof::quantum::{build_claw_state, honest_second_round, ClawDescription};
use hsproof::rng::stream;
use hsproof::BitString;

fn main() -> hsproof::Result<()> {
    let d = 3;
    let a: BitString = "1010".parse()?;
    let x: BitString = "0111".parse()?;
    let claw = ClawDescription {
        branch0: Some(a.prefix(d)),
        branch1: Some(a.prefix(d).xor(&x.prefix(d))),
        phase: if a.get(d) == 0 { 1 } else { -1 },
    };
    let psi = build_claw_state(&claw)?;
    for (i, amp) in psi.amplitudes().iter().enumerate().filter(|(_, a)| a.norm() > 0.0) {
        println!("|{i:04b}>  {amp:.4}");
    }
    println!("hidden xor {}", claw.hidden_xor().unwrap());

    let mut rng = stream(5, "claw-example", 0);
    let trials = 20_000;
    let mut total = 0i64;
    for t in 0..trials {
        let mut y = BitString::random(d, &mut stream(5, "claw-y", t));
        y.push(1);
        let b = honest_second_round(&claw, &y, &mut rng)?;
        total += j_score(&x, &y, &a, &b)? as i64;
    }
    println!("mean score {:.4} over {trials} trials", total as f64 / trials as f64);
    Ok(())
}
