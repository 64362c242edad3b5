//! The two-player game J_d: exact classical bias for small d, against the honest
//! quantum strategy played through the sampler.

use hsproof::games::jgame::{j_bias_bruteforce, to_f64};
use hsproof::protocol::attack::classical_ceiling;
use hsproof::protocol::game_j::{run_game_j, JPlayer};

fn main() -> hsproof::Result<()> {
    for d in 1..=2 {
        let full = j_bias_bruteforce(d, false)?;
        let seq = j_bias_bruteforce(d, true)?;
        println!(
            "d={d}: best classical bias {full} ({:.4}), time-ordered {seq} ({:.4}), ceiling {:.4}",
            to_f64(full),
            to_f64(seq),
            classical_ceiling(d)
        );
    }

    for d in [2, 4, 8] {
        let honest = run_game_j(JPlayer::Honest, d, 20_000, 7, false)?;
        let blind = run_game_j(JPlayer::Blind, d, 20_000, 7, false)?;
        println!("d={d}: honest {}  |  blind {}", honest.stats, blind.stats);
    }
    println!("cos(pi/4) = {:.4}", std::f64::consts::FRAC_1_SQRT_2);
    Ok(())
}
