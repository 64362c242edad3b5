//! Transcript and summary text formats.
//!
//! A transcript file holds one record per line: space-separated `key=value` fields in the
//! fixed order
//!
//! ```text
//! game=R trial=0 x=1011 y=0111 a=0010 b=1101 w=17,4,... ells=0110... score=1 e_flag=1 f_flag=1 seed=7 invert_fail=0
//! ```
//!
//! Bit strings are written first bit first. `w` is a comma-separated list of residues and
//! `ells` holds the round-one bits over the measured positions only. A field that does not
//! apply to the game (for example `w` in game `J`) is written as `-`. Flags are `1`, `0`
//! or `-`.
//!
//! A summary file is CSV with header [`SUMMARY_HEADER`].

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::games::jgame::j_score;
use crate::protocol::stats::ScoreStats;

pub const SUMMARY_HEADER: &str = "experiment,trials,mean,stderr,ci95_lo,ci95_hi";

const FIELDS: [&str; 13] =
    ["game", "trial", "x", "y", "a", "b", "w", "ells", "score", "e_flag", "f_flag", "seed", "invert_fail"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub game: String,
    pub trial: u64,
    pub x: BitString,
    pub y: BitString,
    pub a: BitString,
    pub b: BitString,
    pub w: Option<Vec<u64>>,
    pub ells: Option<BitString>,
    pub score: i8,
    pub e_flag: Option<bool>,
    pub f_flag: Option<bool>,
    pub seed: u64,
    pub invert_fail: Option<bool>,
}

fn flag(f: Option<bool>) -> &'static str {
    match f {
        Some(true) => "1",
        Some(false) => "0",
        None => "-",
    }
}

fn parse_flag(s: &str) -> Result<Option<bool>> {
    match s {
        "1" => Ok(Some(true)),
        "0" => Ok(Some(false)),
        "-" => Ok(None),
        other => Err(Error::Parse(format!("bad flag {other:?}"))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("bad {key} value {s:?}")))
}

impl Transcript {
    /// Recomputes the score from `(x, y, a, b)`.
    pub fn rescore(&self) -> Result<i8> {
        j_score(&self.x, &self.y, &self.a, &self.b)
    }

    pub fn is_consistent(&self) -> bool {
        self.rescore() == Ok(self.score)
    }

    pub fn to_line(&self) -> String {
        let mut s = String::new();
        let w = match &self.w {
            Some(w) => w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
            None => "-".into(),
        };
        let ells = self.ells.as_ref().map_or("-".to_string(), |e| e.to_string());
        write!(
            s,
            "game={} trial={} x={} y={} a={} b={} w={} ells={} score={} e_flag={} f_flag={} seed={} invert_fail={}",
            self.game,
            self.trial,
            self.x,
            self.y,
            self.a,
            self.b,
            w,
            ells,
            self.score,
            flag(self.e_flag),
            flag(self.f_flag),
            self.seed,
            flag(self.invert_fail)
        )
        .expect("writing to a String");
        s
    }

    pub fn parse(line: &str) -> Result<Transcript> {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != FIELDS.len() {
            return Err(Error::Parse(format!("expected {} fields, found {}", FIELDS.len(), parts.len())));
        }
        let mut vals = Vec::with_capacity(FIELDS.len());
        for (part, key) in parts.iter().zip(FIELDS) {
            match part.split_once('=') {
                Some((k, v)) if k == key => vals.push(v),
                _ => return Err(Error::Parse(format!("expected field {key}, found {part:?}"))),
            }
        }
        let bits = |s: &str| s.parse::<BitString>();
        let w = match vals[6] {
            "-" => None,
            "" => Some(Vec::new()),
            s => Some(s.split(',').map(|v| parse_num("w", v)).collect::<Result<Vec<u64>>>()?),
        };
        let ells = match vals[7] {
            "-" => None,
            s => Some(bits(s)?),
        };
        let score: i8 = parse_num("score", vals[8])?;
        if score != 1 && score != -1 {
            return Err(Error::Parse(format!("score must be 1 or -1, found {score}")));
        }
        Ok(Transcript {
            game: vals[0].to_string(),
            trial: parse_num("trial", vals[1])?,
            x: bits(vals[2])?,
            y: bits(vals[3])?,
            a: bits(vals[4])?,
            b: bits(vals[5])?,
            w,
            ells,
            score,
            e_flag: parse_flag(vals[9])?,
            f_flag: parse_flag(vals[10])?,
            seed: parse_num("seed", vals[11])?,
            invert_fail: parse_flag(vals[12])?,
        })
    }
}

pub fn write_transcripts<W: Write>(out: &mut W, records: &[Transcript]) -> Result<()> {
    for r in records {
        writeln!(out, "{}", r.to_line())?;
    }
    Ok(())
}

pub fn read_transcripts<R: BufRead>(input: R) -> Result<Vec<Transcript>> {
    input
        .lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|l| Transcript::parse(&l?))
        .collect()
}

pub fn summary_row(experiment: &str, stats: &ScoreStats) -> String {
    format!("{experiment},{}", stats.csv_fields())
}
