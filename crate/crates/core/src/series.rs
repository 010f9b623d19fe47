//! Truncated formal power series over exact rationals.
//!
//! `QSeries` is a univariate series in q with integer internal exponents
//! 0..=N and an exact rational global exponent offset (a prefactor
//! q^offset carrying fractional conformal weights). `BivariateSeries` is
//! the (t, q) analogue with the offset on q only.
//!
//! Truncation is a hard contract: every operation records the valid
//! coefficient range of its result, and coefficient access beyond the
//! truncation is a panic, not a silent zero.

use crate::partition::{enumerate_partitions, in_p};
use crate::rational::{int, is_zero, Rat};
use crate::CoreError;
use num::{One, Zero};
use std::fmt;

#[derive(Clone, Debug)]
pub struct QSeries {
    trunc: u32,
    coeffs: Vec<Rat>, // length trunc + 1
    offset: Rat,
}

impl QSeries {
    pub fn zero(trunc: u32) -> Self {
        Self {
            trunc,
            coeffs: vec![Rat::zero(); trunc as usize + 1],
            offset: Rat::zero(),
        }
    }

    pub fn one(trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = Rat::one();
        s
    }

    /// c * q^k, truncated.
    pub fn monomial(c: Rat, k: u32, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k as usize] = c;
        }
        s
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn with_offset(mut self, offset: Rat) -> Self {
        self.offset = offset;
        self
    }

    /// Coefficient of q^n (relative to the offset). Panics beyond the
    /// truncation: coefficients there are unknown, not zero.
    pub fn coeff(&self, n: u32) -> &Rat {
        assert!(n <= self.trunc, "coefficient q^{n} beyond truncation {}", self.trunc);
        &self.coeffs[n as usize]
    }

    pub fn coeff_mut(&mut self, n: u32) -> &mut Rat {
        assert!(n <= self.trunc);
        &mut self.coeffs[n as usize]
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries, CoreError> {
        if self.offset != other.offset {
            return Err(CoreError::IncompatibleSeries(
                "cannot add series with different offsets".into(),
            ));
        }
        let trunc = self.trunc.min(other.trunc);
        let mut out = QSeries::zero(trunc).with_offset(self.offset.clone());
        for n in 0..=trunc as usize {
            out.coeffs[n] = &self.coeffs[n] + &other.coeffs[n];
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        let mut out = self.clone();
        for e in out.coeffs.iter_mut() {
            *e *= c;
        }
        out
    }

    /// Truncated Cauchy product; result truncation is the minimum of the
    /// inputs and offsets add.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut out = QSeries::zero(trunc).with_offset(&self.offset + &other.offset);
        for a in 0..=trunc as usize {
            if is_zero(&self.coeffs[a]) {
                continue;
            }
            for b in 0..=(trunc as usize - a) {
                if !is_zero(&other.coeffs[b]) {
                    let delta = &self.coeffs[a] * &other.coeffs[b];
                    out.coeffs[a + b] += delta;
                }
            }
        }
        out
    }

    /// Multiplicative inverse up to the truncation; the offset negates.
    pub fn inverse(&self) -> Result<QSeries, CoreError> {
        if is_zero(&self.coeffs[0]) {
            return Err(CoreError::NonUnitSeries);
        }
        let mut out = QSeries::zero(self.trunc).with_offset(-self.offset.clone());
        let c0_inv = Rat::one() / self.coeffs[0].clone();
        out.coeffs[0] = c0_inv.clone();
        for n in 1..=self.trunc as usize {
            let mut acc = Rat::zero();
            for k in 1..=n {
                if !is_zero(&self.coeffs[k]) {
                    acc += &self.coeffs[k] * &out.coeffs[n - k];
                }
            }
            out.coeffs[n] = -acc * &c0_inv;
        }
        Ok(out)
    }

    /// First exponent (relative to offset) where the two series differ
    /// through their common truncation, if any. Offset mismatch reports
    /// a difference at exponent 0.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<u32> {
        if self.offset != other.offset {
            return Some(0);
        }
        let trunc = self.trunc.min(other.trunc);
        (0..=trunc).find(|&n| self.coeffs[n as usize] != other.coeffs[n as usize])
    }
}

/// Equality through the common truncation, offsets included.
impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.offset.is_zero() {
            write!(f, "q^({}) * (", self.offset)?;
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "q")?,
                1 => write!(f, "{c}*q")?,
                _ if c.is_one() => write!(f, "q^{n}")?,
                _ => write!(f, "{c}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc + 1)?;
        if !self.offset.is_zero() {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// The polynomial (q)_k = prod_{j=1..k} (1 - q^j), truncated.
pub fn pochhammer(k: u32, trunc: u32) -> QSeries {
    let mut out = QSeries::one(trunc);
    for j in 1..=k {
        if j > trunc {
            break; // remaining factors are 1 + O(q^{trunc+1})
        }
        let mut factor = QSeries::one(trunc);
        *factor.coeff_mut(j) = -Rat::one();
        out = out.mul(&factor);
    }
    out
}

/// (q)_infinity truncated: factors (1 - q^j) for j <= trunc.
pub fn pochhammer_inf(trunc: u32) -> QSeries {
    pochhammer(trunc, trunc)
}

/// prod over n <= trunc with n != 0, +-i mod 2s+1 of (1 - q^n)^{-1}.
pub fn restricted_product(s: u32, i: u32, trunc: u32) -> QSeries {
    assert!(1 <= i && i <= s);
    let m = 2 * s + 1;
    let mut out = QSeries::one(trunc);
    for n in 1..=trunc {
        let r = n % m;
        if r == 0 || r == i % m || r == (m - i) % m {
            continue;
        }
        // (1 - q^n)^{-1} = sum_j q^{jn}
        let mut geom = QSeries::zero(trunc);
        let mut e = 0;
        while e <= trunc {
            *geom.coeff_mut(e) = Rat::one();
            e += n;
        }
        out = out.mul(&geom);
    }
    out
}

/// Bivariate series in (t, q) with truncations (T, N) and a q-offset.
#[derive(Clone, Debug)]
pub struct BivariateSeries {
    t_trunc: u32,
    q_trunc: u32,
    coeffs: Vec<Rat>, // (T+1) x (N+1), row-major in t
    offset: Rat,
}

impl BivariateSeries {
    pub fn zero(t_trunc: u32, q_trunc: u32) -> Self {
        Self {
            t_trunc,
            q_trunc,
            coeffs: vec![Rat::zero(); (t_trunc as usize + 1) * (q_trunc as usize + 1)],
            offset: Rat::zero(),
        }
    }

    pub fn one(t_trunc: u32, q_trunc: u32) -> Self {
        let mut s = Self::zero(t_trunc, q_trunc);
        s.coeffs[0] = Rat::one();
        s
    }

    pub fn t_trunc(&self) -> u32 {
        self.t_trunc
    }

    pub fn q_trunc(&self) -> u32 {
        self.q_trunc
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn with_offset(mut self, offset: Rat) -> Self {
        self.offset = offset;
        self
    }

    pub fn coeff(&self, t: u32, q: u32) -> &Rat {
        assert!(
            t <= self.t_trunc && q <= self.q_trunc,
            "coefficient t^{t} q^{q} beyond truncation ({}, {})",
            self.t_trunc,
            self.q_trunc
        );
        &self.coeffs[t as usize * (self.q_trunc as usize + 1) + q as usize]
    }

    pub fn coeff_mut(&mut self, t: u32, q: u32) -> &mut Rat {
        assert!(t <= self.t_trunc && q <= self.q_trunc);
        &mut self.coeffs[t as usize * (self.q_trunc as usize + 1) + q as usize]
    }

    pub fn add_assign(&mut self, other: &BivariateSeries) {
        assert_eq!(self.offset, other.offset, "offset mismatch in add");
        assert!(self.t_trunc <= other.t_trunc && self.q_trunc <= other.q_trunc);
        for t in 0..=self.t_trunc {
            for q in 0..=self.q_trunc {
                let delta = other.coeff(t, q).clone();
                *self.coeff_mut(t, q) += delta;
            }
        }
    }

    pub fn mul(&self, other: &BivariateSeries) -> BivariateSeries {
        let tt = self.t_trunc.min(other.t_trunc);
        let qt = self.q_trunc.min(other.q_trunc);
        let mut out = BivariateSeries::zero(tt, qt).with_offset(&self.offset + &other.offset);
        for ta in 0..=tt {
            for qa in 0..=qt {
                let ca = self.coeff(ta, qa);
                if is_zero(ca) {
                    continue;
                }
                for tb in 0..=(tt - ta) {
                    for qb in 0..=(qt - qa) {
                        let cb = other.coeff(tb, qb);
                        if !is_zero(cb) {
                            let delta = ca * cb;
                            *out.coeff_mut(ta + tb, qa + qb) += delta;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<BivariateSeries, CoreError> {
        if is_zero(&self.coeffs[0]) {
            return Err(CoreError::NonUnitSeries);
        }
        // invert by graded recursion on total (t, q) degree
        let mut out =
            BivariateSeries::zero(self.t_trunc, self.q_trunc).with_offset(-self.offset.clone());
        let c0_inv = Rat::one() / self.coeffs[0].clone();
        out.coeffs[0] = c0_inv.clone();
        for d in 1..=(self.t_trunc + self.q_trunc) {
            for t in 0..=self.t_trunc.min(d) {
                let q = d - t;
                if q > self.q_trunc {
                    continue;
                }
                let mut acc = Rat::zero();
                for ta in 0..=t {
                    for qa in 0..=q {
                        if ta == 0 && qa == 0 {
                            continue;
                        }
                        let a = self.coeff(ta, qa);
                        if !is_zero(a) {
                            acc += a * out.coeff(t - ta, q - qa);
                        }
                    }
                }
                *out.coeff_mut(t, q) = -acc * &c0_inv;
            }
        }
        Ok(out)
    }

    /// Specialize t = 1.
    pub fn at_t_one(&self) -> QSeries {
        let mut out = QSeries::zero(self.q_trunc).with_offset(self.offset.clone());
        for q in 0..=self.q_trunc {
            let mut acc = Rat::zero();
            for t in 0..=self.t_trunc {
                acc += self.coeff(t, q);
            }
            *out.coeff_mut(q) = acc;
        }
        out
    }

    /// First (t, q) exponent pair where the series differ through the
    /// common truncation, scanned q-major.
    pub fn first_mismatch(&self, other: &BivariateSeries) -> Option<(u32, u32)> {
        if self.offset != other.offset {
            return Some((0, 0));
        }
        let tt = self.t_trunc.min(other.t_trunc);
        let qt = self.q_trunc.min(other.q_trunc);
        for q in 0..=qt {
            for t in 0..=tt {
                if self.coeff(t, q) != other.coeff(t, q) {
                    return Some((t, q));
                }
            }
        }
        None
    }
}

impl PartialEq for BivariateSeries {
    fn eq(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

/// Generating series of the Gordon ideal by exhaustive enumeration:
/// sum over partitions in P^{s,i} of weight <= N of t^len q^weight.
pub fn gordon_ideal_series(s: u32, i: u32, t_trunc: u32, q_trunc: u32) -> BivariateSeries {
    let mut out = BivariateSeries::zero(t_trunc, q_trunc);
    for n in 0..=q_trunc {
        for lambda in enumerate_partitions(n) {
            if lambda.len() as u32 <= t_trunc && in_p(s, i, &lambda) {
                *out.coeff_mut(lambda.len() as u32, n) += int(1);
            }
        }
    }
    out
}
