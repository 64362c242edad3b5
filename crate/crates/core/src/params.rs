//! Protocol parameters `(n, m, q, Q, sigma, tau, d)`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{bit_width, find_prime, is_prime};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `n = lambda`, `q` the first prime above `lambda^3`, `d = floor(log2 lambda)`,
    /// `sigma = sqrt(lambda)`.
    Asymptotic,
    /// Explicit `n, q, d, sigma`, validated so that the honest prover succeeds with
    /// high probability.
    Desk,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Asymptotic => "asymptotic",
            Preset::Desk => "desk",
        })
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "asymptotic" => Ok(Preset::Asymptotic),
            "desk" => Ok(Preset::Desk),
            other => Err(Error::InvalidConfig(format!("unknown preset {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub lambda: u64,
    pub n: usize,
    pub q: u64,
    /// Bit length of `q`.
    pub big_q: usize,
    pub m: usize,
    pub sigma: f64,
    pub tau: u64,
    pub d: usize,
    pub preset: Preset,
}

/// Individual validity verdicts, reported by the `params` command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdicts {
    pub q_odd_prime: bool,
    pub d_le_n: bool,
    pub tau_positive: bool,
    pub sigma_le_tau: bool,
    /// Combined gadget error `2 tau (1 + (Q+1) n)` stays below `q/6`, the decoding radius of
    /// the gadget decoder for odd `q`.
    pub gadget_margin: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.q_odd_prime && self.d_le_n && self.tau_positive && self.sigma_le_tau && self.gadget_margin
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.q_odd_prime {
            out.push("q is not an odd prime");
        }
        if !self.d_le_n {
            out.push("d > n");
        }
        if !self.tau_positive {
            out.push("tau=0");
        }
        if !self.sigma_le_tau {
            out.push("sigma > tau");
        }
        if !self.gadget_margin {
            out.push("gadget error margin exceeds q/6");
        }
        out
    }
}

fn tau_for(q: u64, m: usize, big_q: usize) -> u64 {
    q / (4 * m as u64 * big_q as u64)
}

impl Params {
    /// The asymptotic schedule for security parameter `lambda`. Never fails validation;
    /// use [`Params::verdicts`] to see whether the result can drive Game R.
    pub fn asymptotic(lambda: u64) -> Result<Params> {
        if lambda < 2 {
            return Err(Error::InvalidConfig(format!("lambda must be at least 2, got {lambda}")));
        }
        let cube = lambda
            .checked_pow(3)
            .and_then(|c| c.checked_mul(2).map(|c2| (c, c2)))
            .ok_or_else(|| Error::InvalidConfig(format!("lambda = {lambda} overflows")))?;
        let q = find_prime(cube.0, cube.1)?;
        let n = lambda as usize;
        let big_q = bit_width(q) as usize;
        let m = (2 * big_q + 1) * n;
        Ok(Params {
            lambda,
            n,
            q,
            big_q,
            m,
            sigma: (lambda as f64).sqrt(),
            tau: tau_for(q, m, big_q),
            d: lambda.ilog2() as usize,
            preset: Preset::Asymptotic,
        })
    }

    /// Explicit parameters; rejected unless every verdict holds.
    pub fn desk(n: usize, q: u64, d: usize, sigma: f64) -> Result<Params> {
        if n == 0 || q < 3 {
            return Err(Error::InvalidDeskParams(format!("n = {n}, q = {q}")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidDeskParams(format!("sigma must be positive, got {sigma}")));
        }
        let big_q = bit_width(q) as usize;
        let m = (2 * big_q + 1) * n;
        let p = Params { lambda: n as u64, n, q, big_q, m, sigma, tau: tau_for(q, m, big_q), d, preset: Preset::Desk };
        let v = p.verdicts();
        if !v.all() {
            return Err(Error::InvalidDeskParams(v.failures().join(", ")));
        }
        Ok(p)
    }

    /// The default desk configuration: `n = 8`, `d = 6`, `q` the first prime above `2^32`,
    /// `sigma = 2`. This gives `tau = 60704` and `m = 536`.
    pub fn desk_default() -> Params {
        let q = find_prime(1 << 32, 1 << 33).expect("a prime exists in [2^32, 2^33]");
        Params::desk(8, q, 6, 2.0).expect("default desk parameters are valid")
    }

    /// Same parameters with a different secret length `d`.
    pub fn with_d(&self, d: usize) -> Result<Params> {
        let mut p = self.clone();
        p.d = d;
        if d > p.n {
            return Err(Error::InvalidDeskParams(format!("d = {d} exceeds n = {}", p.n)));
        }
        Ok(p)
    }

    pub fn derive(lambda: u64, preset: Preset) -> Result<Params> {
        match preset {
            Preset::Asymptotic => Params::asymptotic(lambda),
            Preset::Desk => {
                let p = Params::desk_default();
                if lambda as usize == p.n {
                    Ok(p)
                } else {
                    Err(Error::InvalidConfig(
                        "the desk preset takes explicit n, q, d, sigma; lambda is not used".into(),
                    ))
                }
            }
        }
    }

    /// Largest combined error the gadget decoder sees when `||e||_inf <= 2 tau`.
    pub fn gadget_error_bound(&self) -> u128 {
        2 * self.tau as u128 * (1 + (self.big_q as u128 + 1) * self.n as u128)
    }

    pub fn verdicts(&self) -> Verdicts {
        Verdicts {
            q_odd_prime: self.q % 2 == 1 && is_prime(self.q),
            d_le_n: self.d <= self.n,
            tau_positive: self.tau >= 1,
            sigma_le_tau: self.sigma <= self.tau as f64,
            gadget_margin: 6 * self.gadget_error_bound() < self.q as u128,
        }
    }

    /// Checks the conditions Game R needs: `tau >= 1`, `d >= 1`, `d <= n` and a sound
    /// gadget margin.
    pub fn check_runnable(&self) -> Result<()> {
        let v = self.verdicts();
        let mut problems = Vec::new();
        if !v.tau_positive {
            problems.push("tau=0".to_string());
        }
        if !v.gadget_margin {
            problems.push("gadget error margin exceeds q/6".to_string());
        }
        if !v.d_le_n {
            problems.push("d > n".to_string());
        }
        if self.d == 0 {
            problems.push("d = 0".to_string());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::ParamsInvalid(problems.join(", ")))
        }
    }

    /// Index of the first of the last `d` secret coordinates.
    pub fn message_offset(&self) -> usize {
        self.n - self.d
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "preset  {}", self.preset)?;
        writeln!(f, "lambda  {}", self.lambda)?;
        writeln!(f, "n       {}", self.n)?;
        writeln!(f, "q       {}", self.q)?;
        writeln!(f, "Q       {}", self.big_q)?;
        writeln!(f, "m       {}", self.m)?;
        writeln!(f, "sigma   {}", self.sigma)?;
        writeln!(f, "tau     {}", self.tau)?;
        write!(f, "d       {}", self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_64() {
        let p = Params::asymptotic(64).unwrap();
        assert_eq!(p.q, find_prime(262_144, 524_288).unwrap());
        assert_eq!(p.big_q, 19);
        assert_eq!(p.m, 39 * 64);
        assert_eq!(p.d, 6);
        assert_eq!(p.sigma, 8.0);
    }

    #[test]
    fn lambda_4_not_runnable() {
        let p = Params::asymptotic(4).unwrap();
        assert_eq!((p.q, p.big_q, p.m), (67, 7, 60));
        assert_eq!(p.tau, 0);
        assert!(matches!(p.check_runnable(), Err(Error::ParamsInvalid(_))));
    }

    #[test]
    fn desk_accepts_and_rejects() {
        let p = Params::desk(64, 524_309, 6, 2.0).unwrap();
        assert_eq!(p.tau, 524_309 / (4 * 2624 * 20));
        assert!(p.tau >= 1);
        assert!(matches!(Params::desk(64, 524_309, 6, 5.0), Err(Error::InvalidDeskParams(_))));
        assert!(matches!(Params::desk(4, 67, 2, 1.0), Err(Error::InvalidDeskParams(_))));
    }

    #[test]
    fn default_desk() {
        let p = Params::desk_default();
        assert_eq!(p.q, 4_294_967_311);
        assert_eq!(p.big_q, 33);
        assert_eq!(p.m, 536);
        assert_eq!(p.tau, 60_704);
        p.check_runnable().unwrap();
    }
}
