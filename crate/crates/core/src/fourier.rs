//! Complex functions on `Z_m^n`.
//!
//! Group elements are stored at index `x_0 + x_1 m + ... + x_{n-1} m^{n-1}` (little-endian
//! mixed radix). The transform is unitary,
//! `f^(x') = |G|^{-1/2} sum_x f(x) zeta^{x.x'}` with `zeta = exp(2 pi i / m)`,
//! and the dual group is identified with `Z_m^n` through the same index space.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::Rational;

/// Magnitudes at or below this count as zero when measuring supports of floating data.
pub const SUPPORT_EPS: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction {
    m: usize,
    n: usize,
    values: Vec<Complex64>,
}

fn group_size(m: usize, n: usize) -> usize {
    m.checked_pow(n as u32).expect("group too large")
}

/// Decodes an index into its group element.
pub fn element(m: usize, n: usize, mut idx: usize) -> Vec<usize> {
    let mut x = Vec::with_capacity(n);
    for _ in 0..n {
        x.push(idx % m);
        idx /= m;
    }
    x
}

/// Encodes a group element as an index; coordinates are reduced mod `m`.
pub fn index(m: usize, x: &[usize]) -> usize {
    x.iter().rev().fold(0, |acc, &xi| acc * m + xi % m)
}

/// Index of `x + y`.
fn add_index(m: usize, n: usize, mut a: usize, mut b: usize) -> usize {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..n {
        out += ((a % m + b % m) % m) * place;
        a /= m;
        b /= m;
        place *= m;
    }
    out
}

/// Index of `x - y`.
fn sub_index(m: usize, n: usize, mut a: usize, mut b: usize) -> usize {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..n {
        out += ((a % m + m - b % m) % m) * place;
        a /= m;
        b /= m;
        place *= m;
    }
    out
}

fn neg_index(m: usize, n: usize, a: usize) -> usize {
    sub_index(m, n, 0, a)
}

impl GroupFunction {
    pub fn new(m: usize, n: usize, values: Vec<Complex64>) -> Result<Self> {
        if m < 2 || n < 1 {
            return Err(Error::InvalidConfig(format!("group Z_{m}^{n} is not supported")));
        }
        let size = group_size(m, n);
        if values.len() != size {
            return Err(Error::DimensionMismatch { expected: size, got: values.len() });
        }
        Ok(GroupFunction { m, n, values })
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        GroupFunction { m, n, values: vec![Complex64::zero(); group_size(m, n)] }
    }

    pub fn from_real(m: usize, n: usize, values: &[f64]) -> Result<Self> {
        GroupFunction::new(m, n, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn from_fn(m: usize, n: usize, f: impl Fn(&[usize]) -> Complex64) -> Self {
        let values = (0..group_size(m, n)).map(|i| f(&element(m, n, i))).collect();
        GroupFunction { m, n, values }
    }

    /// Point mass at `x`.
    pub fn delta(m: usize, n: usize, x: &[usize]) -> Self {
        let mut f = GroupFunction::zeros(m, n);
        f.values[index(m, x)] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn modulus(&self) -> usize {
        self.m
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, x: &[usize]) -> Complex64 {
        self.values[index(self.m, x)]
    }

    pub fn set(&mut self, x: &[usize], v: Complex64) {
        let i = index(self.m, x);
        self.values[i] = v;
    }

    pub fn scale(&self, c: Complex64) -> Self {
        GroupFunction { m: self.m, n: self.n, values: self.values.iter().map(|v| v * c).collect() }
    }

    fn same_group(&self, other: &GroupFunction) -> Result<()> {
        if self.m == other.m && self.n == other.n {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum()
    }

    /// `sum_x f(x) conj(g(x))`.
    pub fn inner(&self, other: &GroupFunction) -> Result<Complex64> {
        self.same_group(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum())
    }

    pub fn max_abs_diff(&self, other: &GroupFunction) -> Result<f64> {
        self.same_group(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Number of points with `|f(x)| > eps`.
    pub fn support_size(&self, eps: f64) -> usize {
        self.values.iter().filter(|v| v.norm() > eps).count()
    }

    /// `x -> f(-x)`.
    pub fn reflect(&self) -> Self {
        let mut out = GroupFunction::zeros(self.m, self.n);
        for (i, v) in self.values.iter().enumerate() {
            out.values[neg_index(self.m, self.n, i)] = *v;
        }
        out
    }

    fn transform(&self, sign: f64) -> Self {
        let m = self.m;
        let roots: Vec<Complex64> = (0..m)
            .map(|k| Complex64::from_polar(1.0, sign * 2.0 * std::f64::consts::PI * k as f64 / m as f64))
            .collect();
        let norm = 1.0 / (m as f64).sqrt();
        let mut cur = self.values.clone();
        let mut buf = vec![Complex64::zero(); m];
        let mut stride = 1;
        for _ in 0..self.n {
            let block = stride * m;
            for base in (0..cur.len()).step_by(block) {
                for off in 0..stride {
                    for (k, slot) in buf.iter_mut().enumerate() {
                        let mut acc = Complex64::zero();
                        for j in 0..m {
                            acc += cur[base + off + j * stride] * roots[(j * k) % m];
                        }
                        *slot = acc * norm;
                    }
                    for (k, v) in buf.iter().enumerate() {
                        cur[base + off + k * stride] = *v;
                    }
                }
            }
            stride = block;
        }
        GroupFunction { m, n: self.n, values: cur }
    }

    /// Unitary Fourier transform.
    pub fn dft(&self) -> Self {
        self.transform(1.0)
    }

    pub fn inverse_dft(&self) -> Self {
        self.transform(-1.0)
    }

    /// `(f * g)(x) = |G|^{-1/2} sum_y f(x - y) g(y)`, evaluated directly.
    pub fn convolve(&self, other: &GroupFunction) -> Result<Self> {
        self.same_group(other)?;
        let (m, n) = (self.m, self.n);
        let norm = 1.0 / (self.size() as f64).sqrt();
        let support: Vec<(usize, Complex64)> =
            other.values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, *v)).collect();
        let values = (0..self.size())
            .map(|x| support.iter().map(|&(y, gy)| self.values[sub_index(m, n, x, y)] * gy).sum::<Complex64>() * norm)
            .collect();
        Ok(GroupFunction { m, n, values })
    }

    fn probabilities(&self) -> Result<Vec<(usize, f64)>> {
        let total = self.l1_norm();
        if total <= 0.0 {
            return Err(Error::ZeroFunction);
        }
        Ok(self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() > SUPPORT_EPS)
            .map(|(i, v)| (i, v.norm() / total))
            .collect())
    }

    /// Uniformity coefficient `1 / (|Supp p| sum p(x)^2)` of `p = |f| / ||f||_1`.
    pub fn uniformity_nu(&self) -> Result<f64> {
        let p = self.probabilities()?;
        let collision: f64 = p.iter().map(|(_, px)| px * px).sum();
        Ok(1.0 / (p.len() as f64 * collision))
    }

    /// Linearity coefficient `P[x + y = z + w] / P[x = y]` with all draws from
    /// `p = |f| / ||f||_1`.
    pub fn linearity_eta(&self) -> Result<f64> {
        let p = self.probabilities()?;
        let mut sums = vec![0.0; self.size()];
        for &(x, px) in &p {
            for &(y, py) in &p {
                sums[add_index(self.m, self.n, x, y)] += px * py;
            }
        }
        let num: f64 = sums.iter().map(|s| s * s).sum();
        let den: f64 = p.iter().map(|(_, px)| px * px).sum();
        Ok(num / den)
    }

    /// `|Supp h| |Supp h^| nu(h) eta(h) / |G|`, which is at least one.
    pub fn uncertainty_product(&self, eps: f64) -> Result<f64> {
        let supp = self.support_size(eps);
        if supp == 0 {
            return Err(Error::ZeroFunction);
        }
        let supp_hat = self.dft().support_size(eps);
        Ok(supp as f64 * supp_hat as f64 * self.uniformity_nu()? * self.linearity_eta()? / self.size() as f64)
    }

    /// `|Supp h| |Supp h^| >= |G|`.
    pub fn donoho_stark_check(&self, eps: f64) -> Result<bool> {
        let supp = self.support_size(eps);
        if supp == 0 {
            return Err(Error::ZeroFunction);
        }
        Ok(supp * self.dft().support_size(eps) >= self.size())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UncertaintyCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Compares `|<f^, g>|` with `(|Supp f| |Supp g| nu(f) eta(f) / |G|)^{1/4}` for unit vectors
/// `f` and `g`.
pub fn uncertainty_bound_check(f: &GroupFunction, g: &GroupFunction) -> Result<UncertaintyCheck> {
    f.same_group(g)?;
    for h in [f, g] {
        let norm = h.l2_norm();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(norm));
        }
    }
    let lhs = f.dft().inner(g)?.norm();
    let rhs = (f.support_size(SUPPORT_EPS) as f64
        * g.support_size(SUPPORT_EPS) as f64
        * f.uniformity_nu()?
        * f.linearity_eta()?
        / f.size() as f64)
        .powf(0.25);
    Ok(UncertaintyCheck { lhs, rhs, holds: lhs <= rhs + 1e-9 })
}

/// Exact uniformity coefficient of the distribution proportional to `weights`.
pub fn nu_exact(weights: &[i128]) -> Result<Rational> {
    let support = weights.iter().filter(|w| **w != 0).count() as i128;
    if support == 0 {
        return Err(Error::ZeroFunction);
    }
    let total: i128 = weights.iter().map(|w| w.abs()).sum();
    let sq: i128 = weights.iter().map(|w| w * w).sum();
    Ok(Rational::new(total * total, support * sq))
}

/// Exact linearity coefficient of the distribution on `Z_m^n` proportional to `|weights|`.
pub fn eta_exact(m: usize, n: usize, weights: &[i128]) -> Result<Rational> {
    let size = group_size(m, n);
    if weights.len() != size {
        return Err(Error::DimensionMismatch { expected: size, got: weights.len() });
    }
    let nz: Vec<(usize, i128)> =
        weights.iter().enumerate().filter(|(_, w)| **w != 0).map(|(i, w)| (i, w.abs())).collect();
    if nz.is_empty() {
        return Err(Error::ZeroFunction);
    }
    let mut sums = vec![0i128; size];
    for &(x, wx) in &nz {
        for &(y, wy) in &nz {
            sums[add_index(m, n, x, y)] += wx * wy;
        }
    }
    let total: i128 = nz.iter().map(|(_, w)| w).sum();
    let sq: i128 = nz.iter().map(|(_, w)| w * w).sum();
    let num: i128 = sums.iter().map(|s| s * s).sum();
    Ok(Rational::new(num, total * total * sq))
}

/// A subset of `Z_m^n` stored as a membership bitmap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetOfGroup {
    m: usize,
    n: usize,
    members: Vec<bool>,
}

impl SubsetOfGroup {
    pub fn empty(m: usize, n: usize) -> Self {
        SubsetOfGroup { m, n, members: vec![false; group_size(m, n)] }
    }

    pub fn from_elements<'a, I>(m: usize, n: usize, elements: I) -> Self
    where
        I: IntoIterator<Item = &'a [usize]>,
    {
        let mut s = SubsetOfGroup::empty(m, n);
        for x in elements {
            s.insert(x);
        }
        s
    }

    pub fn insert(&mut self, x: &[usize]) {
        let i = index(self.m, x);
        self.members[i] = true;
    }

    pub fn contains(&self, x: &[usize]) -> bool {
        self.members[index(self.m, x)]
    }

    pub fn modulus(&self) -> usize {
        self.m
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> Vec<Vec<usize>> {
        self.members.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| element(self.m, self.n, i)).collect()
    }

    pub fn indicator(&self) -> GroupFunction {
        let values = self.members.iter().map(|&b| Complex64::new(if b { 1.0 } else { 0.0 }, 0.0)).collect();
        GroupFunction { m: self.m, n: self.n, values }
    }

    pub fn weights(&self) -> Vec<i128> {
        self.members.iter().map(|&b| b as i128).collect()
    }

    pub fn eta(&self) -> Result<Rational> {
        eta_exact(self.m, self.n, &self.weights())
    }

    pub fn nu(&self) -> Result<Rational> {
        nu_exact(&self.weights())
    }

    /// Image of the set under deletion of the last coordinate.
    pub fn drop_last_coordinate(&self) -> Result<SubsetOfGroup> {
        if self.n < 2 {
            return Err(Error::InvalidConfig("cannot drop the only coordinate".into()));
        }
        let mut out = SubsetOfGroup::empty(self.m, self.n - 1);
        for x in self.elements() {
            out.insert(&x[..self.n - 1]);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn index_round_trip() {
        for i in 0..64 {
            assert_eq!(index(4, &element(4, 3, i)), i);
        }
        assert_eq!(index(4, &[1, 2, 3]), 1 + 2 * 4 + 3 * 16);
    }

    #[test]
    fn delta_and_constant() {
        let d = GroupFunction::delta(4, 1, &[0]).dft();
        assert!(d.values().iter().all(|v| (v - c(0.5)).norm() < 1e-12));
        let one = GroupFunction::from_real(4, 1, &[1.0; 4]).unwrap().dft();
        assert!((one.values()[0] - c(2.0)).norm() < 1e-12);
        assert!(one.values()[1..].iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn double_transform_reflects_exhaustively_on_z4() {
        for a in 0..4 {
            let f = GroupFunction::delta(4, 1, &[a]);
            let ff = f.dft().dft();
            assert!(ff.max_abs_diff(&f.reflect()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn delta_convolution() {
        for a in 0..4 {
            for b in 0..4 {
                let h = GroupFunction::delta(4, 1, &[a]).convolve(&GroupFunction::delta(4, 1, &[b])).unwrap();
                let want = GroupFunction::delta(4, 1, &[(a + b) % 4]).scale(c(0.5));
                assert!(h.max_abs_diff(&want).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn nu_examples() {
        let f = GroupFunction::from_real(2, 1, &[2.0, 1.0]).unwrap();
        assert!((f.uniformity_nu().unwrap() - 0.9).abs() < 1e-12);
        assert_eq!(nu_exact(&[2, 1]).unwrap(), Rational::new(9, 10));
        assert_eq!(GroupFunction::zeros(2, 1).uniformity_nu(), Err(Error::ZeroFunction));
    }

    #[test]
    fn eta_examples() {
        let s = SubsetOfGroup::from_elements(4, 1, [&[0usize][..], &[1]]);
        assert_eq!(s.eta().unwrap(), Rational::new(3, 4));
        assert!((s.indicator().linearity_eta().unwrap() - 0.75).abs() < 1e-12);
        let single = SubsetOfGroup::from_elements(4, 2, [&[3usize, 1][..]]);
        assert_eq!(single.eta().unwrap(), Rational::from_integer(1));
    }

    #[test]
    fn donoho_equality_on_subgroup() {
        let h = SubsetOfGroup::from_elements(4, 1, [&[0usize][..], &[2]]).indicator();
        assert_eq!(h.support_size(SUPPORT_EPS) * h.dft().support_size(SUPPORT_EPS), 4);
        assert!(h.donoho_stark_check(SUPPORT_EPS).unwrap());
    }

    #[test]
    fn uncertainty_equality_cases() {
        let d = GroupFunction::delta(4, 1, &[0]);
        assert!((d.uncertainty_product(SUPPORT_EPS).unwrap() - 1.0).abs() < 1e-12);
        let full = GroupFunction::from_real(4, 1, &[1.0; 4]).unwrap();
        assert!((full.uncertainty_product(SUPPORT_EPS).unwrap() - 1.0).abs() < 1e-12);
        let chk = uncertainty_bound_check(&d, &d.dft()).unwrap();
        assert!((chk.lhs - 1.0).abs() < 1e-12 && (chk.rhs - 1.0).abs() < 1e-12 && chk.holds);
    }

    #[test]
    fn unnormalized_rejected() {
        let f = GroupFunction::from_real(4, 1, &[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(uncertainty_bound_check(&f, &f), Err(Error::NotNormalized(_))));
    }
}
