//! Exact classical values of GHZ games by enumerating every deterministic strategy.

use hsproof::games::ghz::{
    ghz4_closed_form, ghz_strategy_value, ghz_value_bruteforce, single_bit_strategy, Repetition,
};

fn main() -> hsproof::Result<()> {
    for k in [3, 4] {
        println!("omega(GHZ_{k}) = {}", ghz_value_bruteforce(k, Repetition::Single)?);
    }
    for d in 1..=2 {
        let v = ghz_value_bruteforce(3, Repetition::Sequential(d))?;
        println!("GHZ_3, {d} sequential rounds: {v}");
    }

    // the four-player value of single-bit strategies has a closed form
    let mut best = None;
    for t in 0..256u32 {
        let tables = [0, 2, 4, 6].map(|s| (t >> s) as u8 & 3);
        let strategies: Vec<_> = tables.iter().map(|&x| single_bit_strategy(x)).collect();
        let v = ghz_strategy_value(&strategies)?;
        assert_eq!(v, ghz4_closed_form(tables));
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, tables));
        }
    }
    let (v, tables) = best.unwrap();
    println!("best single-bit GHZ_4 strategy {tables:?} scores {v}");
    Ok(())
}
