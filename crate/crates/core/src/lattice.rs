//! Discrete Gaussians, gadget trapdoors and the trapdoor encryption scheme.
//!
//! `gen_trap` returns `A = [Abar; G - R Abar]` where `Abar` is uniform with `(Q+1) n` rows,
//! `R` has entries in `{-1, 0, 1}` and `G = I_n (x) (1, 2, ..., 2^{Q-1})^T` is the gadget.
//! Given `v = A s + e`, `y = v_bottom + R v_top = G s + (e_bottom + R e_top)`, and each
//! coordinate of `s` is recovered from its `Q` gadget rows.

use rand::Rng;

use crate::algebra::{from_signed, sub_mod, to_signed, ZqMat, ZqVec};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::params::Params;

/// Discrete Gaussian `P(j) ~ exp(-j^2 / (2 sigma^2))`, optionally restricted to `[-tau, tau]`.
#[derive(Clone, Debug)]
pub struct GaussianSampler {
    sigma: f64,
    tau: Option<u64>,
    bound: i64,
    cdf: Vec<f64>,
}

impl GaussianSampler {
    pub fn new(sigma: f64, tau: Option<u64>) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidConfig(format!("sigma must be positive, got {sigma}")));
        }
        let bound = (8.0 * sigma).ceil() as i64;
        let weight = |j: i64| (-((j * j) as f64) / (2.0 * sigma * sigma)).exp();
        let mut pmf: Vec<f64> = (-bound..=bound).map(weight).collect();
        // fold the (negligible) mass beyond the table into its two ends
        let mut tail = 0.0;
        let mut j = bound + 1;
        loop {
            let w = weight(j);
            if w < 1e-300 || j > bound + 1_000_000 {
                break;
            }
            tail += w;
            j += 1;
        }
        let last = pmf.len() - 1;
        pmf[0] += tail;
        pmf[last] += tail;
        let total: f64 = pmf.iter().sum();
        let mut acc = 0.0;
        let cdf = pmf
            .iter()
            .map(|p| {
                acc += p / total;
                acc
            })
            .collect();
        Ok(GaussianSampler { sigma, tau, bound, cdf })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn tau(&self) -> Option<u64> {
        self.tau
    }

    /// Probability of `j` before truncation.
    pub fn pmf(&self, j: i64) -> f64 {
        if j.abs() > self.bound {
            return 0.0;
        }
        let i = (j + self.bound) as usize;
        if i == 0 {
            self.cdf[0]
        } else {
            self.cdf[i] - self.cdf[i - 1]
        }
    }

    fn draw_untruncated<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let u: f64 = rng.gen();
        let i = self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1);
        i as i64 - self.bound
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        match self.tau {
            None => self.draw_untruncated(rng),
            Some(t) => loop {
                let j = self.draw_untruncated(rng);
                if j.unsigned_abs() <= t {
                    return j;
                }
            },
        }
    }

    pub fn sample_vec<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> Vec<i64> {
        (0..len).map(|_| self.sample(rng)).collect()
    }
}

/// Convenience wrapper around [`GaussianSampler`].
pub fn sample_gaussian<R: Rng + ?Sized>(sigma: f64, tau: Option<u64>, rng: &mut R) -> Result<i64> {
    Ok(GaussianSampler::new(sigma, tau)?.sample(rng))
}

/// Uniform values in `{-1, 0, 1}`, five per random byte.
fn ternary<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<i8> {
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        let mut b: u8 = rng.gen();
        if b >= 243 {
            continue;
        }
        for _ in 0..5 {
            if out.len() == len {
                break;
            }
            out.push((b % 3) as i8 - 1);
            b /= 3;
        }
    }
    out
}

/// The secret that makes `invert` possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrapdoorKey {
    /// `(Q+1) n x n`, uniform.
    pub abar: ZqMat,
    /// `Q n x (Q+1) n`, row-major, entries in `{-1, 0, 1}`.
    pub r: Vec<i8>,
    pub n: usize,
    pub big_q: usize,
}

impl TrapdoorKey {
    fn top_rows(&self) -> usize {
        (self.big_q + 1) * self.n
    }

    fn bottom_rows(&self) -> usize {
        self.big_q * self.n
    }

    fn r_row(&self, i: usize) -> &[i8] {
        let w = self.top_rows();
        &self.r[i * w..(i + 1) * w]
    }
}

/// Gadget matrix: row `i Q + k` is `2^k e_i`.
pub fn gadget(n: usize, big_q: usize, q: u64) -> ZqMat {
    let mut g = ZqMat::zeros(n * big_q, n, q);
    for i in 0..n {
        for k in 0..big_q {
            g.set(i * big_q + k, i, (1u64 << k) % q);
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext {
    pub a: ZqMat,
    pub v: ZqVec,
}

pub fn gen_trap<R: Rng + ?Sized>(params: &Params, rng: &mut R) -> (ZqMat, TrapdoorKey) {
    let (n, big_q, q) = (params.n, params.big_q, params.q);
    let top = (big_q + 1) * n;
    let bottom = big_q * n;
    let abar = ZqMat::random(top, n, q, rng);
    let r = ternary(bottom * top, rng);
    let mut lower = ZqMat::zeros(bottom, n, q);
    let mut acc = vec![0i128; n];
    for i in 0..bottom {
        acc.iter_mut().for_each(|a| *a = 0);
        for (k, &rk) in r[i * top..(i + 1) * top].iter().enumerate() {
            if rk != 0 {
                let row = abar.row(k);
                if rk > 0 {
                    acc.iter_mut().zip(row).for_each(|(a, &x)| *a += x as i128);
                } else {
                    acc.iter_mut().zip(row).for_each(|(a, &x)| *a -= x as i128);
                }
            }
        }
        for (c, a) in acc.iter().enumerate() {
            let ra = a.rem_euclid(q as i128) as u64;
            let g = if i / big_q == c { (1u64 << (i % big_q)) % q } else { 0 };
            lower.set(i, c, sub_mod(g, ra, q));
        }
    }
    let a = abar.vstack(&lower).expect("matching shapes");
    (a, TrapdoorKey { abar, r, n, big_q })
}

/// Distance from `a` to `b` on the cycle of length `modulus`.
fn circ_dist(a: u128, b: u128, modulus: u128) -> u128 {
    let d = a.abs_diff(b);
    d.min(modulus - d)
}

/// Recovers `s` from `Q` noisy rows `y_k ~ 2^k s (mod q)`.
///
/// Walking down from the top row, the current estimate `x` of `2^{k+1} s` has two halves,
/// `x/2` and `x/2 + q/2`; the one nearer `y_k` is kept. Estimates are exact rationals with
/// denominator `2^j`. The estimate error halves at every step, so the walk is correct whenever
/// the row error is below `q/6`.
pub fn gadget_decode(rows: &[u64], q: u64) -> u64 {
    let big_q = rows.len();
    let q = q as u128;
    let mut num = rows[big_q - 1] as u128;
    let mut j = 0u32;
    for k in (0..big_q - 1).rev() {
        j += 1;
        let modulus = q << j;
        let c0 = num;
        let c1 = num + (q << (j - 1));
        let target = (rows[k] as u128) << j;
        num = if circ_dist(c0, target, modulus) <= circ_dist(c1, target, modulus) { c0 } else { c1 };
    }
    // round num / 2^j to the nearest integer
    let half = if j == 0 { 0 } else { 1u128 << (j - 1) };
    (((num + half) >> j) % q) as u64
}

/// Returns the `s` with `||v - A s||_inf <= 2 tau`, or `None` when decoding fails that test.
pub fn invert(a: &ZqMat, key: &TrapdoorKey, v: &ZqVec, tau: u64) -> Result<Option<ZqVec>> {
    let q = a.modulus();
    let (top, bottom) = (key.top_rows(), key.bottom_rows());
    if v.len() != top + bottom || a.rows() != top + bottom {
        return Err(Error::DimensionMismatch { expected: top + bottom, got: v.len() });
    }
    if v.modulus() != q {
        return Err(Error::ModulusMismatch(q, v.modulus()));
    }
    let vt = &v.entries()[..top];
    let y: Vec<u64> = (0..bottom)
        .map(|i| {
            let mut acc = 0i128;
            for (&r, &x) in key.r_row(i).iter().zip(vt) {
                match r {
                    1 => acc += x as i128,
                    -1 => acc -= x as i128,
                    _ => {}
                }
            }
            ((v.get(top + i) as i128 + acc).rem_euclid(q as i128)) as u64
        })
        .collect();
    let s: Vec<u64> = (0..key.n).map(|i| gadget_decode(&y[i * key.big_q..(i + 1) * key.big_q], q)).collect();
    let s = ZqVec::new(s, q);
    let resid = v.sub(&a.mul_vec(&s)?)?;
    Ok(if resid.norminf() <= 2 * tau { Some(s) } else { None })
}

/// Everything `encrypt` produces. Only `ciphertext` is sent to the prover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encryption {
    pub ciphertext: Ciphertext,
    pub trapdoor: TrapdoorKey,
    /// `gamma = 2 s + (0^{n-d} || h)`.
    pub gamma: ZqVec,
    pub noise: ZqVec,
}

fn message_vector(h: &BitString, params: &Params) -> Result<Vec<i64>> {
    if h.len() != params.d {
        return Err(Error::LengthMismatch(format!("message has {} bits, d = {}", h.len(), params.d)));
    }
    let mut msg = vec![0i64; params.n];
    for (j, bit) in h.iter().enumerate() {
        msg[params.message_offset() + j] = bit as i64;
    }
    Ok(msg)
}

pub fn encrypt<R: Rng + ?Sized>(h: &BitString, params: &Params, rng: &mut R) -> Result<Encryption> {
    let v = params.verdicts();
    if !(v.tau_positive && v.gadget_margin && v.d_le_n) {
        return Err(Error::ParamsInvalid(v.failures().join(", ")));
    }
    let msg = message_vector(h, params)?;
    let (a, trapdoor) = gen_trap(params, rng);
    let sampler = GaussianSampler::new(params.sigma, Some(params.tau))?;
    let s = sampler.sample_vec(params.n, rng);
    let e = sampler.sample_vec(params.m, rng);
    let gamma: Vec<i64> = s.iter().zip(&msg).map(|(si, mi)| 2 * si + mi).collect();
    let gamma = ZqVec::from_signed(&gamma, params.q);
    let noise = ZqVec::from_signed(&e, params.q);
    let v = a.mul_vec(&gamma)?.add(&noise)?;
    Ok(Encryption { ciphertext: Ciphertext { a, v }, trapdoor, gamma, noise })
}

/// Parity of the balanced representatives of the last `d` coordinates of `invert(A, t, v)`.
pub fn decrypt(ct: &Ciphertext, key: &TrapdoorKey, params: &Params) -> Result<Option<BitString>> {
    let gamma = match invert(&ct.a, key, &ct.v, params.tau)? {
        Some(g) => g,
        None => return Ok(None),
    };
    let off = params.message_offset();
    Ok(Some(BitString::from_bits((0..params.d).map(|j| to_signed(gamma.get(off + j), params.q).rem_euclid(2) as u8))))
}

/// Same shape as `encrypt`, but `A` is uniform and no trapdoor exists; noise is untruncated.
pub fn fake_encrypt<R: Rng + ?Sized>(h: &BitString, params: &Params, rng: &mut R) -> Result<Ciphertext> {
    let msg = message_vector(h, params)?;
    let a = ZqMat::random(params.m, params.n, params.q, rng);
    let sampler = GaussianSampler::new(params.sigma, None)?;
    let s = sampler.sample_vec(params.n, rng);
    let e = sampler.sample_vec(params.m, rng);
    let gamma: Vec<i64> = s.iter().zip(&msg).map(|(si, mi)| 2 * si + mi).collect();
    let v = a.mul_vec(&ZqVec::from_signed(&gamma, params.q))?.add(&ZqVec::from_signed(&e, params.q))?;
    Ok(Ciphertext { a, v })
}

/// A uniformly random `(A, v)` of ciphertext shape.
pub fn uniform_ciphertext<R: Rng + ?Sized>(params: &Params, rng: &mut R) -> Ciphertext {
    Ciphertext { a: ZqMat::random(params.m, params.n, params.q, rng), v: ZqVec::random(params.m, params.q, rng) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LweKind {
    Real,
    Uniform,
}

/// A stream of LWE samples `(a, a.s + e)` for a hidden uniform `s`, or uniform pairs.
pub struct LweOracle<R: Rng> {
    kind: LweKind,
    q: u64,
    n: usize,
    secret: Option<ZqVec>,
    sampler: GaussianSampler,
    rng: R,
}

impl<R: Rng> LweOracle<R> {
    pub fn new(kind: LweKind, n: usize, q: u64, sigma: f64, mut rng: R) -> Result<Self> {
        let sampler = GaussianSampler::new(sigma, None)?;
        let secret = match kind {
            LweKind::Real => Some(ZqVec::random(n, q, &mut rng)),
            LweKind::Uniform => None,
        };
        Ok(LweOracle { kind, q, n, secret, sampler, rng })
    }

    pub fn from_params(kind: LweKind, params: &Params, rng: R) -> Result<Self> {
        LweOracle::new(kind, params.n, params.q, params.sigma, rng)
    }

    pub fn kind(&self) -> LweKind {
        self.kind
    }

    /// The hidden secret of a real oracle, for tests.
    pub fn secret(&self) -> Option<&ZqVec> {
        self.secret.as_ref()
    }

    pub fn sample(&mut self) -> (ZqVec, u64) {
        let a = ZqVec::random(self.n, self.q, &mut self.rng);
        let b = match &self.secret {
            Some(s) => {
                let e = from_signed(self.sampler.sample(&mut self.rng), self.q);
                (a.dot(s).expect("same shape") + e) % self.q
            }
            None => self.rng.gen_range(0..self.q),
        };
        (a, b)
    }
}

impl<R: Rng> Iterator for LweOracle<R> {
    type Item = (ZqVec, u64);

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.sample())
    }
}

/// Maps `(a, b)` to `(a / 2, b)`. A sample with secret `s` becomes one with secret `2 s`.
pub fn halve_sample(a: &ZqVec, b: u64) -> (ZqVec, u64) {
    let q = a.modulus();
    let half = q.div_ceil(2);
    (a.scale(half), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn tiny_sigma_is_almost_always_zero() {
        let s = GaussianSampler::new(0.1, None).unwrap();
        assert!(s.pmf(0) > 0.9999);
        let mut r = rng();
        assert!((0..10_000).filter(|_| s.sample(&mut r) == 0).count() >= 9_990);
    }

    #[test]
    fn truncation() {
        let s = GaussianSampler::new(5.0, Some(2)).unwrap();
        let mut r = rng();
        assert!((0..10_000).all(|_| s.sample(&mut r).abs() <= 2));
    }

    #[test]
    fn ternary_is_balanced() {
        let t = ternary(30_000, &mut rng());
        for v in -1..=1 {
            let c = t.iter().filter(|&&x| x == v).count();
            assert!((9_500..10_500).contains(&c), "{v}: {c}");
        }
    }

    #[test]
    fn gadget_decode_exact_rows() {
        let q = 4_294_967_311u64;
        for s in [0u64, 1, 2, 12345, q - 1, q / 2, q / 2 + 1] {
            let rows: Vec<u64> = (0..33).map(|k| crate::algebra::mul_mod(s, 1 << k, q)).collect();
            assert_eq!(gadget_decode(&rows, q), s);
        }
    }

    #[test]
    fn dims_and_noiseless_inversion() {
        let p = Params::desk_default();
        let mut r = rng();
        let (a, key) = gen_trap(&p, &mut r);
        assert_eq!((a.rows(), a.cols()), ((2 * p.big_q + 1) * p.n, p.n));
        for _ in 0..20 {
            let s = ZqVec::random(p.n, p.q, &mut r);
            let v = a.mul_vec(&s).unwrap();
            assert_eq!(invert(&a, &key, &v, p.tau).unwrap(), Some(s));
        }
    }

    #[test]
    fn uniform_v_is_rejected() {
        let p = Params::desk_default();
        let mut r = rng();
        let (a, key) = gen_trap(&p, &mut r);
        for _ in 0..20 {
            let v = ZqVec::random(p.m, p.q, &mut r);
            assert_eq!(invert(&a, &key, &v, p.tau).unwrap(), None);
        }
    }

    #[test]
    fn zero_message_gives_even_gamma() {
        let p = Params::desk_default();
        let enc = encrypt(&BitString::zeros(p.d), &p, &mut rng()).unwrap();
        assert!(enc.gamma.signed().iter().all(|g| g % 2 == 0));
    }

    #[test]
    fn wrong_dimension_is_an_error() {
        let p = Params::desk_default();
        let mut r = rng();
        let (a, key) = gen_trap(&p, &mut r);
        let v = ZqVec::zeros(p.m - 1, p.q);
        assert!(invert(&a, &key, &v, p.tau).is_err());
    }
}
