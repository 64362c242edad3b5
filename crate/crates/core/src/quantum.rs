//! Dense statevector simulation and the honest quantum prover.
//!
//! Qubit 0 is the most significant bit of the amplitude index. Measurement in basis `W`
//! yields outcome 0 with probability `<psi| (I + W)/2 |psi>`, where `W` is one of
//! `X = [[0,1],[1,0]]`, `Y = [[0,i],[-i,0]]` or `(X + Y)/sqrt 2`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{balanced_abs, ZqVec};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::games::jgame::uv_mod4;
use crate::lattice::{invert, Ciphertext, Encryption, TrapdoorKey};
use crate::params::Params;

pub const MAX_QUBITS: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    X,
    Y,
    /// `(X + Y) / sqrt 2`.
    XY,
}

impl Basis {
    pub fn observable(self) -> [[Complex64; 2]; 2] {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Basis::X => [[z, one], [one, z]],
            Basis::Y => [[z, i], [-i, z]],
            Basis::XY => [[z, (one + i) * FRAC_1_SQRT_2], [(one - i) * FRAC_1_SQRT_2, z]],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>`.
    pub fn zero(qubits: usize) -> Result<Self> {
        StateVector::basis(qubits, 0)
    }

    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        if qubits > MAX_QUBITS {
            return Err(Error::IndexOutOfRange { index: qubits, qubits: MAX_QUBITS });
        }
        if index >= 1 << qubits {
            return Err(Error::IndexOutOfRange { index, qubits });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { qubits, amps })
    }

    /// Normalizes the given amplitudes.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let qubits = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << qubits || qubits > MAX_QUBITS {
            return Err(Error::DimensionMismatch { expected: 1 << qubits, got: amps.len() });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroFunction);
        }
        Ok(StateVector { qubits, amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest amplitude difference to `other`.
    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    fn mask(&self, qubit: usize) -> Result<usize> {
        if qubit >= self.qubits {
            return Err(Error::IndexOutOfRange { index: qubit, qubits: self.qubits });
        }
        Ok(1 << (self.qubits - 1 - qubit))
    }

    pub fn apply_1q(&mut self, qubit: usize, u: [[Complex64; 2]; 2]) -> Result<()> {
        let bit = self.mask(qubit)?;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[i | bit] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
        Ok(())
    }

    pub fn hadamard(&mut self, qubit: usize) -> Result<()> {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        self.apply_1q(qubit, [[h, h], [h, -h]])
    }

    pub fn pauli_x(&mut self, qubit: usize) -> Result<()> {
        let (z, o) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        self.apply_1q(qubit, [[z, o], [o, z]])
    }

    /// `Z^c`: multiplies the `|1>` component of `qubit` by `e^{i pi c}`.
    pub fn apply_zc(&mut self, qubit: usize, c: f64) -> Result<()> {
        let bit = self.mask(qubit)?;
        let phase = Complex64::from_polar(1.0, PI * c);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit != 0 {
                *a *= phase;
            }
        }
        Ok(())
    }

    /// Probability of outcome 0 when measuring `qubit` in `basis`.
    pub fn prob_zero(&self, qubit: usize, basis: Basis) -> Result<f64> {
        let bit = self.mask(qubit)?;
        let w = basis.observable();
        // <psi| W |psi> restricted to the qubit
        let mut expect = Complex64::new(0.0, 0.0);
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                expect += a0.conj() * (w[0][0] * a0 + w[0][1] * a1) + a1.conj() * (w[1][0] * a0 + w[1][1] * a1);
            }
        }
        Ok(((1.0 + expect.re) / 2.0).clamp(0.0, 1.0))
    }

    /// Projective measurement; the state collapses to the post-measurement state.
    pub fn measure<R: Rng + ?Sized>(&mut self, qubit: usize, basis: Basis, rng: &mut R) -> Result<u8> {
        let p0 = self.prob_zero(qubit, basis)?;
        let outcome = if rng.gen::<f64>() < p0 { 0u8 } else { 1 };
        let bit = self.mask(qubit)?;
        let w = basis.observable();
        let sign = if outcome == 0 { 1.0 } else { -1.0 };
        let half = Complex64::new(0.5, 0.0);
        // projector (I + sign W) / 2
        let p = [
            [half * (1.0 + sign * w[0][0]), half * sign * w[0][1]],
            [half * sign * w[1][0], half * (1.0 + sign * w[1][1])],
        ];
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = p[0][0] * a0 + p[0][1] * a1;
                self.amps[i | bit] = p[1][0] * a0 + p[1][1] * a1;
            }
        }
        let norm = self.norm();
        for a in &mut self.amps {
            *a /= norm;
        }
        Ok(outcome)
    }
}

/// The residual two-branch state `(|c, 0> + phase |c', 1>) / sqrt 2` on `d` data qubits and a
/// trailing coin qubit. When one branch is missing the state is the surviving basis state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClawDescription {
    pub branch0: Option<BitString>,
    pub branch1: Option<BitString>,
    /// `+1` or `-1`.
    pub phase: i8,
}

impl ClawDescription {
    pub fn is_degenerate(&self) -> bool {
        self.branch0.is_none() || self.branch1.is_none()
    }

    pub fn data_len(&self) -> usize {
        self.branch0.as_ref().or(self.branch1.as_ref()).map_or(0, |b| b.len())
    }

    /// `c xor c'`, when both branches exist.
    pub fn hidden_xor(&self) -> Option<BitString> {
        match (&self.branch0, &self.branch1) {
            (Some(a), Some(b)) => Some(a.xor(b)),
            _ => None,
        }
    }
}

fn basis_index(bits: &BitString, coin: u8) -> usize {
    bits.iter().fold(0usize, |acc, b| (acc << 1) | b as usize) << 1 | coin as usize
}

pub fn build_claw_state(claw: &ClawDescription) -> Result<StateVector> {
    let d = claw.data_len();
    if d + 1 > MAX_QUBITS {
        return Err(Error::IndexOutOfRange { index: d + 1, qubits: MAX_QUBITS });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << (d + 1)];
    match (&claw.branch0, &claw.branch1) {
        (Some(c0), Some(c1)) => {
            if c0.len() != c1.len() {
                return Err(Error::LengthMismatch("claw branches differ in length".into()));
            }
            amps[basis_index(c0, 0)] += FRAC_1_SQRT_2;
            amps[basis_index(c1, 1)] += claw.phase as f64 * FRAC_1_SQRT_2;
        }
        (Some(c0), None) => amps[basis_index(c0, 0)] = Complex64::new(1.0, 0.0),
        (None, Some(c1)) => amps[basis_index(c1, 1)] = Complex64::new(1.0, 0.0),
        (None, None) => return Err(Error::ZeroFunction),
    }
    StateVector::from_amplitudes(amps)
}

/// Measures data qubit `j` in `X` (`y_j = 0`) or `Y` (`y_j = 1`) and the coin in `(X+Y)/sqrt 2`.
pub fn honest_second_round<R: Rng + ?Sized>(claw: &ClawDescription, y: &BitString, rng: &mut R) -> Result<BitString> {
    let d = claw.data_len();
    if y.len() != d + 1 {
        return Err(Error::LengthMismatch(format!("y has {} bits, expected {}", y.len(), d + 1)));
    }
    let mut state = build_claw_state(claw)?;
    let mut b = BitString::zeros(d + 1);
    for j in 0..d {
        let basis = if y.get(j) == 0 { Basis::X } else { Basis::Y };
        b.set(j, state.measure(j, basis, rng)?);
    }
    b.set(d, state.measure(d, Basis::XY, rng)?);
    Ok(b)
}

/// The honest `J_d` strategy through the statevector: `a` uniform, claw
/// `(|a, 0> + (-1)^{a_{d+1}} |a xor x, 1>) / sqrt 2`, then [`honest_second_round`].
pub fn honest_j_statevector<R: Rng + ?Sized>(
    d: usize,
    x: &BitString,
    y: &BitString,
    rng: &mut R,
) -> Result<(BitString, BitString)> {
    check_j_inputs(d, x, y)?;
    let a = BitString::random(d + 1, rng);
    let data = a.prefix(d);
    let claw = ClawDescription {
        branch0: Some(data.clone()),
        branch1: Some(data.xor(&x.prefix(d))),
        phase: if a.get(d) == 0 { 1 } else { -1 },
    };
    let b = honest_second_round(&claw, y, rng)?;
    Ok((a, b))
}

fn check_j_inputs(d: usize, x: &BitString, y: &BitString) -> Result<()> {
    if x.len() != d + 1 || y.len() != d + 1 {
        return Err(Error::LengthMismatch(format!("x and y need {} bits", d + 1)));
    }
    if x.get(d) != 1 || y.get(d) != 1 {
        return Err(Error::InvalidConfig("x_{d+1} and y_{d+1} must be 1".into()));
    }
    Ok(())
}

/// Probability of winning one round of the honest `J_d` strategy, `(1 + 1/sqrt 2) / 2`.
pub fn honest_win_probability() -> f64 {
    0.5 * (1.0 + FRAC_1_SQRT_2)
}

/// Samples `(a, b)` from the honest joint distribution
/// `P(a, b) = 2^{-2(d+1)} (1 +- 1/sqrt 2)`, `+` exactly when `u.v mod 4` is 0 or 1.
///
/// Up to `d = 10` the outcome is found by inverse sampling over all `4^{d+1}` pairs. Beyond
/// that `a` is drawn uniformly, the round is won with probability `(1 + 1/sqrt 2)/2`, and `b`
/// is uniform among the answers with the chosen outcome.
pub fn honest_j_sample<R: Rng + ?Sized>(
    d: usize,
    x: &BitString,
    y: &BitString,
    rng: &mut R,
) -> Result<(BitString, BitString)> {
    check_j_inputs(d, x, y)?;
    let (xm, ym) = (x.to_mask(), y.to_mask());
    if d <= 10 {
        let scale = 0.25f64.powi(d as i32 + 1);
        let (hi, lo) = (scale * (1.0 + FRAC_1_SQRT_2), scale * (1.0 - FRAC_1_SQRT_2));
        let target: f64 = rng.gen();
        let mut acc = 0.0;
        let mut last = (0, 0);
        for a in 0..1u64 << (d + 1) {
            for b in 0..1u64 << (d + 1) {
                acc += if uv_mod4(xm, ym, a, b) <= 1 { hi } else { lo };
                last = (a, b);
                if acc > target {
                    return Ok((BitString::from_mask(a, d + 1), BitString::from_mask(b, d + 1)));
                }
            }
        }
        return Ok((BitString::from_mask(last.0, d + 1), BitString::from_mask(last.1, d + 1)));
    }
    let a = BitString::random(d + 1, rng);
    let win = rng.gen::<f64>() < honest_win_probability();
    let mut b = BitString::random(d, rng);
    b.push(0);
    // x_{d+1} = y_{d+1} = 1, so flipping b_{d+1} moves u.v by 2 and toggles the outcome
    let ok = uv_mod4(xm, ym, a.to_mask(), b.to_mask()) <= 1;
    if ok != win {
        b.set(d, 1);
    }
    Ok((a, b))
}

/// Round-one output of the honest prover in Game R, plus diagnostics the prover itself
/// could not compute.
#[derive(Clone, Debug, PartialEq)]
pub struct HonestFirstRound {
    pub w: ZqVec,
    /// `ells[j]` for positions `j` in [`measured_positions`]; other entries are zero.
    pub ells: BitString,
    pub claw: ClawDescription,
    /// Both preimages exist within the noise box.
    pub e_held: bool,
    /// A preimage `z` exists and `|z_j| > |gamma_j|` for every coordinate.
    pub f_held: bool,
}

/// 0-based positions (in the `nQ`-bit big-endian representation of the secret register)
/// measured in round one: everything except the low bit of each of the last `d` coordinates.
pub fn measured_positions(params: &Params) -> Vec<usize> {
    let data = data_positions(params);
    (0..params.n * params.big_q).filter(|p| !data.contains(p)).collect()
}

/// 0-based positions of the `d` claw data qubits.
pub fn data_positions(params: &Params) -> Vec<usize> {
    (0..params.d).map(|j| (params.message_offset() + j + 1) * params.big_q - 1).collect()
}

/// Inverts `target` and keeps the preimage only if it lies within `tau` (box) of `target`.
fn box_preimage(ct: &Ciphertext, key: &TrapdoorKey, target: &ZqVec, tau: u64) -> Result<Option<ZqVec>> {
    Ok(match invert(&ct.a, key, target, tau)? {
        Some(z) if target.sub(&ct.a.mul_vec(&z)?)?.norminf() <= tau => Some(z),
        _ => None,
    })
}

/// Simulates round one of the honest prover.
///
/// The prover's physical state after measuring `w` is fixed by `w`; the simulator describes
/// it by inverting `w` and `w + v` with the trapdoor, which is never revealed to anyone. The
/// `X` measurements on positions outside the claw are uniform bits that multiply the
/// surviving branch difference into a phase.
pub fn honest_first_round<R: Rng + ?Sized>(enc: &Encryption, params: &Params, rng: &mut R) -> Result<HonestFirstRound> {
    params.check_runnable()?;
    let ct = &enc.ciphertext;
    let q = params.q;
    let r = ZqVec::random(params.n, q, rng);
    let coin: u8 = rng.gen_range(0..2);
    let tau = params.tau as i64;
    let noise: Vec<i64> = (0..params.m).map(|_| rng.gen_range(-tau..=tau)).collect();
    let mut w = ct.a.mul_vec(&r)?.add(&ZqVec::from_signed(&noise, q))?;
    if coin == 1 {
        w = w.sub(&ct.v)?;
    }
    let w_plus_v = w.add(&ct.v)?;
    let z = box_preimage(ct, &enc.trapdoor, &w, params.tau)?;
    let z1 = box_preimage(ct, &enc.trapdoor, &w_plus_v, params.tau)?;

    let positions = measured_positions(params);
    let mut ells = BitString::zeros(params.n * params.big_q);
    for &p in &positions {
        ells.set(p, rng.gen_range(0..2));
    }
    let data = data_positions(params);
    let bits = |v: &ZqVec| v.binary_repr();
    let (b0, b1) = (z.as_ref().map(bits), z1.as_ref().map(bits));
    let phase = match (&b0, &b1) {
        (Some(p0), Some(p1)) => {
            let flips = positions.iter().filter(|&&p| ells.get(p) & (p0.get(p) ^ p1.get(p)) == 1).count();
            if flips % 2 == 0 {
                1
            } else {
                -1
            }
        }
        _ => 1,
    };
    let pick = |b: &BitString| BitString::from_bits(data.iter().map(|&p| b.get(p)));
    let claw = ClawDescription { branch0: b0.as_ref().map(pick), branch1: b1.as_ref().map(pick), phase };

    let e_held = z.is_some() && z1.is_some();
    let referee_z = invert(&ct.a, &enc.trapdoor, &w, params.tau)?;
    let f_held =
        referee_z.is_some_and(|z| (0..params.n).all(|j| balanced_abs(z.get(j), q) > balanced_abs(enc.gamma.get(j), q)));
    Ok(HonestFirstRound { w, ells, claw, e_held, f_held })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zc_examples() {
        let mut s = StateVector::basis(1, 1).unwrap();
        s.apply_zc(0, 1.0).unwrap();
        assert!((s.amplitudes()[1] - c(-1.0, 0.0)).norm() < 1e-12);

        let mut plus = StateVector::zero(1).unwrap();
        plus.hadamard(0).unwrap();
        plus.apply_zc(0, 0.5).unwrap();
        assert!((plus.amplitudes()[1] - c(0.0, FRAC_1_SQRT_2)).norm() < 1e-12);

        let mut a = StateVector::zero(1).unwrap();
        a.hadamard(0).unwrap();
        let mut b = a.clone();
        a.apply_zc(0, 0.25).unwrap();
        a.apply_zc(0, 0.25).unwrap();
        b.apply_zc(0, 0.5).unwrap();
        assert!(a.distance(&b) < 1e-12);
        assert!(a.apply_zc(1, 0.5).is_err());
    }

    #[test]
    fn eigenstates_measure_deterministically() {
        let mut r = ChaCha8Rng::seed_from_u64(3);
        let mut plus = StateVector::zero(1).unwrap();
        plus.hadamard(0).unwrap();
        assert!((plus.prob_zero(0, Basis::X).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(plus.measure(0, Basis::X, &mut r).unwrap(), 0);
        let zero = StateVector::zero(1).unwrap();
        assert!((zero.prob_zero(0, Basis::XY).unwrap() - 0.5).abs() < 1e-12);
        assert!((zero.prob_zero(0, Basis::Y).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn claw_examples() {
        let zero = BitString::zeros(3);
        let s =
            build_claw_state(&ClawDescription { branch0: Some(zero.clone()), branch1: Some(zero), phase: 1 }).unwrap();
        assert!((s.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((s.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-12);

        let b: BitString = "101".parse().unwrap();
        let s = build_claw_state(&ClawDescription { branch0: Some(b), branch1: None, phase: 1 }).unwrap();
        assert_eq!(s.amplitudes()[0b1010], c(1.0, 0.0));
    }

    #[test]
    fn half_of_answers_win() {
        let x: BitString = "1011".parse().unwrap();
        let y: BitString = "0111".parse().unwrap();
        let (xm, ym) = (x.to_mask(), y.to_mask());
        let wins = (0..16u64)
            .flat_map(|a| (0..16u64).map(move |b| (a, b)))
            .filter(|&(a, b)| uv_mod4(xm, ym, a, b) <= 1)
            .count();
        assert_eq!(wins, 128);
    }

    /// Cell index `(uv mod 4, a_{d+1}, b_{d+1})`.
    fn cell(d: usize, x: u64, y: u64, a: u64, b: u64) -> usize {
        (uv_mod4(x, y, a, b) as usize) << 2 | ((a >> d & 1) as usize) << 1 | (b >> d & 1) as usize
    }

    #[test]
    fn statevector_matches_sampler_histogram() {
        let (d, trials) = (3usize, 100_000u64);
        let mut exact = [0.0f64; 16];
        let scale = 0.25f64.powi(d as i32 + 1) / (1u64 << (2 * d)) as f64;
        for x in 0..1u64 << d {
            for y in 0..1u64 << d {
                let (x, y) = (x | 1 << d, y | 1 << d);
                for a in 0..1u64 << (d + 1) {
                    for b in 0..1u64 << (d + 1) {
                        let p = if uv_mod4(x, y, a, b) <= 1 { 1.0 + FRAC_1_SQRT_2 } else { 1.0 - FRAC_1_SQRT_2 };
                        exact[cell(d, x, y, a, b)] += scale * p;
                    }
                }
            }
        }
        assert!((exact.iter().sum::<f64>() - 1.0).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut sv = [0.0f64; 16];
        let mut cf = [0.0f64; 16];
        for _ in 0..trials {
            let (mut x, mut y) = (BitString::random(d, &mut rng), BitString::random(d, &mut rng));
            x.push(1);
            y.push(1);
            let (a, b) = honest_j_statevector(d, &x, &y, &mut rng).unwrap();
            sv[cell(d, x.to_mask(), y.to_mask(), a.to_mask(), b.to_mask())] += 1.0 / trials as f64;
            let (a, b) = honest_j_sample(d, &x, &y, &mut rng).unwrap();
            cf[cell(d, x.to_mask(), y.to_mask(), a.to_mask(), b.to_mask())] += 1.0 / trials as f64;
        }
        let tv = |p: &[f64; 16], q: &[f64; 16]| 0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>();
        assert!(tv(&sv, &cf) < 0.02, "statevector vs sampler {}", tv(&sv, &cf));
        assert!(tv(&sv, &exact) < 0.02, "statevector vs exact {}", tv(&sv, &exact));
        assert!(tv(&cf, &exact) < 0.02, "sampler vs exact {}", tv(&cf, &exact));
    }
}
