//! Randomized and exhaustive checks of the Fourier identities and uncertainty bounds.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fourier::{element, index, uncertainty_bound_check, GroupFunction, SUPPORT_EPS};

/// Largest group the checks accept.
pub const MAX_GROUP: usize = 1 << 24;
/// Tolerance for identities and for "equality" in the bound checks.
pub const TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourierCheck {
    Parseval,
    Convolution,
    Donoho,
    Uncertainty,
}

impl FromStr for FourierCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parseval" => Ok(FourierCheck::Parseval),
            "convolution" => Ok(FourierCheck::Convolution),
            "donoho" => Ok(FourierCheck::Donoho),
            "uncertainty" => Ok(FourierCheck::Uncertainty),
            other => Err(Error::InvalidConfig(format!("unknown Fourier check {other:?}"))),
        }
    }
}

impl fmt::Display for FourierCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FourierCheck::Parseval => "parseval",
            FourierCheck::Convolution => "convolution",
            FourierCheck::Donoho => "donoho",
            FourierCheck::Uncertainty => "uncertainty",
        })
    }
}

/// Parses a group spec `Z_m^n` (also accepted: `m^n`).
pub fn parse_group(spec: &str) -> Result<(usize, usize)> {
    let s = spec.trim().trim_start_matches("Z_").trim_start_matches('Z');
    let (m, n) = s.split_once('^').ok_or_else(|| Error::InvalidConfig(format!("bad group spec {spec:?}")))?;
    let m: usize = m.parse().map_err(|_| Error::InvalidConfig(format!("bad modulus in {spec:?}")))?;
    let n: usize = n.parse().map_err(|_| Error::InvalidConfig(format!("bad arity in {spec:?}")))?;
    check_group(m, n)?;
    Ok((m, n))
}

pub fn check_group(m: usize, n: usize) -> Result<()> {
    if m < 2 || n == 0 {
        return Err(Error::InvalidConfig(format!("group Z_{m}^{n} is trivial")));
    }
    match m.checked_pow(n as u32) {
        Some(size) if size <= MAX_GROUP => Ok(()),
        _ => Err(Error::InvalidConfig(format!("group Z_{m}^{n} exceeds {MAX_GROUP} elements"))),
    }
}

fn gaussian_pair<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    // Box-Muller
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    let r = (-2.0 * u.ln()).sqrt();
    let t = 2.0 * std::f64::consts::PI * v;
    Complex64::new(r * t.cos(), r * t.sin())
}

pub fn random_function<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> GroupFunction {
    let size = m.pow(n as u32);
    GroupFunction::new(m, n, (0..size).map(|_| gaussian_pair(rng)).collect()).expect("sized")
}

/// Random values on a random support of size `1..=max_support`.
pub fn random_sparse<R: Rng + ?Sized>(m: usize, n: usize, max_support: usize, rng: &mut R) -> GroupFunction {
    let size = m.pow(n as u32);
    let k = rng.gen_range(1..=max_support.clamp(1, size));
    let mut values = vec![Complex64::new(0.0, 0.0); size];
    for idx in rand::seq::index::sample(rng, size, k) {
        let mut v = gaussian_pair(rng);
        if v.norm() < 1e-3 {
            v = Complex64::new(1.0, 0.0);
        }
        values[idx] = v;
    }
    GroupFunction::new(m, n, values).expect("sized")
}

pub fn normalize(f: &GroupFunction) -> GroupFunction {
    f.scale(Complex64::new(1.0 / f.l2_norm(), 0.0))
}

/// Subgroups of `Z_m^n`: products `d_1 Z_m x ... x d_n Z_m` over divisors `d_i` of `m`,
/// and every cyclic subgroup. Each is a sorted list of element indices.
pub fn subgroups(m: usize, n: usize) -> Vec<Vec<usize>> {
    let size = m.pow(n as u32);
    let divisors: Vec<usize> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    let combos = divisors.len().pow(n as u32);
    for c in 0..combos {
        let ds: Vec<usize> = element(divisors.len(), n, c).into_iter().map(|i| divisors[i]).collect();
        let members: Vec<usize> =
            (0..size).filter(|&i| element(m, n, i).iter().zip(&ds).all(|(x, d)| x % d == 0)).collect();
        out.insert(members);
    }
    for g in 0..size {
        let gen = element(m, n, g);
        let mut members: Vec<usize> =
            (0..m).map(|k| index(m, &gen.iter().map(|x| x * k % m).collect::<Vec<_>>())).collect();
        members.sort_unstable();
        members.dedup();
        out.insert(members);
    }
    out.into_iter().collect()
}

/// Normalized indicator of `H + c`.
pub fn coset_indicator(m: usize, n: usize, subgroup: &[usize], shift: &[usize]) -> GroupFunction {
    let size = m.pow(n as u32);
    let mut values = vec![Complex64::new(0.0, 0.0); size];
    let amp = 1.0 / (subgroup.len() as f64).sqrt();
    for &h in subgroup {
        let x: Vec<usize> = element(m, n, h).iter().zip(shift).map(|(a, b)| (a + b) % m).collect();
        values[index(m, &x)] = Complex64::new(amp, 0.0);
    }
    GroupFunction::new(m, n, values).expect("sized")
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check: FourierCheck,
    pub m: usize,
    pub n: usize,
    pub cases: usize,
    pub passes: usize,
    /// Parseval / convolution: largest deviation. Donoho: smallest
    /// `|Supp f| |Supp f^| / |G|`. Uncertainty: smallest `rhs - lhs`.
    pub worst_margin: f64,
    /// Smallest `|Supp f| |Supp f^| nu eta / |G|` seen (Donoho only).
    pub worst_product: Option<f64>,
    /// Structured cases meeting the bound with equality.
    pub equality_cases: Vec<String>,
}

impl CheckReport {
    pub fn violations(&self) -> usize {
        self.cases - self.passes
    }

    pub fn passed(&self) -> bool {
        self.passes == self.cases
    }
}

fn describe(m: usize, n: usize, subgroup: &[usize], shift: &[usize]) -> String {
    let gens: Vec<String> = subgroup.iter().map(|&i| format!("{:?}", element(m, n, i))).collect();
    format!("H = {{{}}} + {:?}", gens.join(" "), shift)
}

/// Runs `check` on `samples` random cases over `Z_m^n`, plus (for the two bounds) every
/// subgroup coset through the origin and one shifted coset per subgroup.
pub fn run_check<R: Rng + ?Sized>(
    check: FourierCheck,
    m: usize,
    n: usize,
    samples: usize,
    rng: &mut R,
) -> Result<CheckReport> {
    check_group(m, n)?;
    let size = m.pow(n as u32);
    let mut report = CheckReport {
        check,
        m,
        n,
        cases: 0,
        passes: 0,
        worst_margin: match check {
            FourierCheck::Parseval | FourierCheck::Convolution => 0.0,
            _ => f64::INFINITY,
        },
        worst_product: None,
        equality_cases: Vec::new(),
    };
    match check {
        FourierCheck::Parseval => {
            for _ in 0..samples {
                let f = random_function(m, n, rng);
                let dev = (f.dft().l2_norm() - f.l2_norm()).abs() / f.l2_norm();
                report.cases += 1;
                report.passes += (dev < TOL) as usize;
                report.worst_margin = report.worst_margin.max(dev);
            }
        }
        FourierCheck::Convolution => {
            for _ in 0..samples {
                let f = random_function(m, n, rng);
                let g = random_function(m, n, rng);
                let lhs = f.convolve(&g)?.dft();
                let (fh, gh) = (f.dft(), g.dft());
                let rhs = GroupFunction::new(m, n, fh.values().iter().zip(gh.values()).map(|(a, b)| a * b).collect())?;
                let scale = f.l2_norm() * g.l2_norm();
                let dev = lhs.max_abs_diff(&rhs)? / scale;
                report.cases += 1;
                report.passes += (dev < TOL) as usize;
                report.worst_margin = report.worst_margin.max(dev);
            }
        }
        FourierCheck::Donoho => {
            let mut worst_product = f64::INFINITY;
            let mut record = |f: &GroupFunction, report: &mut CheckReport| -> Result<(f64, f64)> {
                let ratio = f.support_size(SUPPORT_EPS) as f64 * f.dft().support_size(SUPPORT_EPS) as f64 / size as f64;
                let product = f.uncertainty_product(SUPPORT_EPS)?;
                report.cases += 1;
                report.passes += (ratio >= 1.0 && product >= 1.0 - TOL) as usize;
                report.worst_margin = report.worst_margin.min(ratio);
                worst_product = worst_product.min(product);
                Ok((ratio, product))
            };
            for _ in 0..samples {
                let f = random_sparse(m, n, (size / 4).max(1), rng);
                record(&f, &mut report)?;
            }
            for h in subgroups(m, n) {
                let shift = element(m, n, rng.gen_range(0..size));
                let f = coset_indicator(m, n, &h, &shift);
                let (ratio, product) = record(&f, &mut report)?;
                if (ratio - 1.0).abs() < TOL && (product - 1.0).abs() < TOL {
                    report.equality_cases.push(describe(m, n, &h, &shift));
                }
            }
            report.worst_product = Some(worst_product);
        }
        FourierCheck::Uncertainty => {
            let record = |f: &GroupFunction, g: &GroupFunction, report: &mut CheckReport| -> Result<f64> {
                let c = uncertainty_bound_check(f, g)?;
                report.cases += 1;
                report.passes += c.holds as usize;
                report.worst_margin = report.worst_margin.min(c.rhs - c.lhs);
                Ok(c.rhs - c.lhs)
            };
            for _ in 0..samples {
                let f = normalize(&random_sparse(m, n, size, rng));
                let g = normalize(&random_sparse(m, n, size, rng));
                record(&f, &g, &mut report)?;
            }
            for h in subgroups(m, n) {
                let shift = element(m, n, rng.gen_range(0..size));
                let f = coset_indicator(m, n, &h, &shift);
                let g = f.dft();
                if record(&f, &g, &mut report)?.abs() < TOL {
                    report.equality_cases.push(describe(m, n, &h, &shift));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_specs() {
        assert_eq!(parse_group("Z_4^3").unwrap(), (4, 3));
        assert_eq!(parse_group("2^5").unwrap(), (2, 5));
        assert!(parse_group("Z_4^13").is_err());
        assert!(parse_group("Z_4").is_err());
    }

    #[test]
    fn subgroups_of_z4() {
        // {0}, {0,2}, Z_4
        assert_eq!(subgroups(4, 1), vec![vec![0], vec![0, 1, 2, 3], vec![0, 2]]);
        assert!(subgroups(4, 2).len() >= 11);
    }

    #[test]
    fn small_suite_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for check in
            [FourierCheck::Parseval, FourierCheck::Convolution, FourierCheck::Donoho, FourierCheck::Uncertainty]
        {
            let r = run_check(check, 4, 2, 30, &mut rng).unwrap();
            assert!(r.passed(), "{check}: {r:?}");
        }
    }
}
