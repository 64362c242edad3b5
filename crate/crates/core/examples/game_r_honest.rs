//! The full referee protocol against the honest prover, with transcripts written to disk
//! and re-scored.

use std::fs::File;
use std::io::{BufReader, BufWriter};

use hsproof::protocol::game_r::{run_game_r, Prover};
use hsproof::protocol::transcript::{read_transcripts, summary_row, write_transcripts, SUMMARY_HEADER};
use hsproof::Params;

fn main() -> hsproof::Result<()> {
    let p = Params::desk_default();
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let r = run_game_r(&Prover::Honest, &p, trials, 1, false)?;
    println!("score            {}", r.stats);
    if let Some(c) = &r.conditional {
        println!("score given E, F {c}");
    }
    println!("P(E) {:.4}  P(F) {:.4}", r.e_rate.unwrap_or(f64::NAN), r.f_rate.unwrap_or(f64::NAN));

    let path = std::env::temp_dir().join("hsproof-transcript-R.txt");
    write_transcripts(&mut BufWriter::new(File::create(&path)?), &r.transcripts)?;
    let back = read_transcripts(BufReader::new(File::open(&path)?))?;
    let bad = back.iter().filter(|t| !t.is_consistent()).count();
    println!("{} records in {}, {bad} fail re-scoring", back.len(), path.display());
    println!("{SUMMARY_HEADER}\n{}", summary_row("R", &r.stats));
    Ok(())
}
