//! Closed-form character series: Andrews-Gordon sum and product sides,
//! the length-refined Nahm sum, Feigin-Fuchs minimal-model characters,
//! and a handful of closed refined characters with known product or
//! fermionic forms.

use crate::rational::{int, rat, Rat};
use crate::series::{pochhammer, pochhammer_inf, restricted_product, BivariateSeries, QSeries};
use crate::CoreError;
use num::Zero;

/// Minimal-model labels (p, q) with a highest weight indexed by (m, n),
/// and the derived exact central charge and conformal weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    pub p: u32,
    pub q: u32,
    pub m: u32,
    pub n: u32,
    pub c: Rat,
    pub h: Rat,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl ModelParams {
    pub fn new(p: u32, q: u32, m: u32, n: u32) -> Result<Self, CoreError> {
        if p < 2 || q < 2 {
            return Err(CoreError::InvalidParams(format!("p={p}, q={q}: both must be >= 2")));
        }
        if gcd(p, q) != 1 {
            return Err(CoreError::InvalidParams(format!("p={p}, q={q} are not coprime")));
        }
        if m == 0 || m >= p || n == 0 || n >= q {
            return Err(CoreError::InvalidParams(format!(
                "indices (m,n)=({m},{n}) out of range for (p,q)=({p},{q})"
            )));
        }
        let (pi, qi, mi, ni) = (p as i64, q as i64, m as i64, n as i64);
        let c = int(1) - rat(6 * (pi - qi) * (pi - qi), pi * qi);
        let h = rat(
            (ni * pi - mi * qi).pow(2) - (pi - qi).pow(2),
            4 * pi * qi,
        );
        Ok(Self { p, q, m, n, c, h })
    }

    /// The (2, 2s+1) family member with highest weight indexed by (1, i).
    pub fn boundary(s: u32, i: u32) -> Result<Self, CoreError> {
        if i == 0 || i > s {
            return Err(CoreError::InvalidParams(format!("need 1 <= i <= s, got i={i}, s={s}")));
        }
        Self::new(2, 2 * s + 1, 1, i)
    }
}

/// B^{(s)}_j = (0,...,0,1,2,...,j) as a length s-1 vector.
fn b_vec(s: u32, j: u32) -> Vec<u32> {
    let len = (s - 1) as usize;
    (1..=len as u32)
        .map(|a| a.saturating_sub(s - 1 - j))
        .collect()
}

/// (1/2) k G k^T with G_{ab} = 2 min(a,b): equals sum_m N_m^2 where
/// N_m = k_m + ... + k_{s-1}.
fn quad_form(k: &[u32]) -> u64 {
    let mut total = 0u64;
    let mut tail = 0u64;
    for &kj in k.iter().rev() {
        tail += kj as u64;
        total += tail * tail;
    }
    total
}

fn dot(k: &[u32], b: &[u32]) -> u64 {
    k.iter().zip(b).map(|(&a, &c)| a as u64 * c as u64).sum()
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64 + 2;
    while r * r > n {
        r -= 1;
    }
    r
}

/// All tuples in N^dim with entries <= cap.
fn tuples(dim: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=cap).map(move |v| {
                    let mut t2 = t.clone();
                    t2.push(v);
                    t2
                })
            })
            .collect();
    }
    out
}

/// Sum side of the Andrews-Gordon identity:
/// sum over k in N^{s-1} of q^{(1/2)kGk^T + kB_{s-i}} / prod (q)_{k_j}.
pub fn gordon_lhs(s: u32, i: u32, trunc: u32) -> QSeries {
    assert!(1 <= i && i <= s);
    let b = b_vec(s, s - i);
    // quad_form >= sum k_j^2, so each k_j <= sqrt(N) on the support
    let cap = isqrt(trunc as u64) as u32;
    let inv_poch: Vec<QSeries> = (0..=cap)
        .map(|k| pochhammer(k, trunc).inverse().unwrap())
        .collect();
    let mut out = QSeries::zero(trunc);
    for k in tuples((s - 1) as usize, cap) {
        let e = quad_form(&k) + dot(&k, &b);
        if e > trunc as u64 {
            continue;
        }
        let mut term = QSeries::monomial(int(1), e as u32, trunc);
        for &kj in &k {
            term = term.mul(&inv_poch[kj as usize]);
        }
        out = out.add(&term).unwrap();
    }
    out
}

/// Product side: parts not congruent to 0, +-i mod 2s+1.
pub fn gordon_rhs(s: u32, i: u32, trunc: u32) -> QSeries {
    restricted_product(s, i, trunc)
}

/// Length-refined Nahm sum with the t-exponent kB_{s-1} (the number of
/// parts in the fermionic-form partition), carried on q^{h_{1,i}}.
pub fn nahm_refined(s: u32, i: u32, t_trunc: u32, q_trunc: u32) -> BivariateSeries {
    assert!(1 <= i && i <= s);
    let h = ModelParams::boundary(s, i).unwrap().h;
    let b_lin = b_vec(s, s - i);
    let b_t = b_vec(s, s - 1);
    let cap = isqrt(q_trunc as u64) as u32;
    let inv_poch: Vec<QSeries> = (0..=cap)
        .map(|k| pochhammer(k, q_trunc).inverse().unwrap())
        .collect();
    let mut out = BivariateSeries::zero(t_trunc, q_trunc).with_offset(h);
    for k in tuples((s - 1) as usize, cap) {
        let e = quad_form(&k) + dot(&k, &b_lin);
        let t_deg = dot(&k, &b_t);
        if e > q_trunc as u64 || t_deg > t_trunc as u64 {
            continue;
        }
        let mut term = QSeries::monomial(int(1), e as u32, q_trunc);
        for &kj in &k {
            term = term.mul(&inv_poch[kj as usize]);
        }
        for n in 0..=q_trunc {
            let c = term.coeff(n);
            if !c.is_zero() {
                *out.coeff_mut(t_deg as u32, n) += c;
            }
        }
    }
    out
}

/// Minimal-model character of L(c_{p,q}, h_{m,n}) as an alternating theta
/// sum over 1/(q)_infinity, with offset q^{h_{m,n}}.
pub fn feigin_fuchs(p: u32, q: u32, m: u32, n: u32, trunc: u32) -> Result<QSeries, CoreError> {
    let params = ModelParams::new(p, q, m, n)?;
    let (pi, qi, mi, ni) = (p as i64, q as i64, m as i64, n as i64);
    let pq = pi * qi;
    let mut numer = QSeries::zero(trunc);
    // exponents grow like pq k^2, so this range is far past the truncation
    let kmax = 2 + isqrt(trunc as u64) as i64;
    for k in -kmax..=kmax {
        let e1 = k * k * pq + k * (mi * qi - ni * pi);
        debug_assert!(e1 >= 0);
        if e1 <= trunc as i64 {
            *numer.coeff_mut(e1 as u32) += int(1);
        }
        let e2 = k * k * pq + k * (mi * qi + ni * pi) + mi * ni;
        debug_assert!(e2 >= 0);
        if e2 <= trunc as i64 {
            *numer.coeff_mut(e2 as u32) -= int(1);
        }
    }
    let inv = pochhammer_inf(trunc).inverse()?;
    Ok(numer.mul(&inv).with_offset(params.h))
}

/// Closed refined characters with known product or fermionic expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedKind {
    /// q^h / prod_{k>=1} (1 - t q^k), t marking PBW length.
    VermaPbw,
    /// q^h / ((1 - t q) prod_{k>=2} (1 - t^2 q^k)), t marking clen.
    VermaStandard,
    /// Fermionic form for the (3,4) vacuum module with t marking clen.
    IsingPbw,
    /// 1 / prod_{k>=2} (1 - t^{k-2} q^k), t marking Li-degree.
    GrUniversalVacuum,
    /// q^h / ((1 - q) prod_{k>=2} (1 - t^{k-2} q^k)).
    GrVerma,
}

impl ClosedKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "verma-pbw" => Some(Self::VermaPbw),
            "verma-standard" => Some(Self::VermaStandard),
            "ising-pbw" => Some(Self::IsingPbw),
            "grF-universal-vacuum" => Some(Self::GrUniversalVacuum),
            "grF-verma" => Some(Self::GrVerma),
            _ => None,
        }
    }
}

/// (1 - t^a q^b)^{-1} truncated, b >= 1.
fn geom_factor(a: u32, b: u32, t_trunc: u32, q_trunc: u32) -> BivariateSeries {
    let mut out = BivariateSeries::zero(t_trunc, q_trunc);
    let mut j = 0u32;
    while j * b <= q_trunc && j * a <= t_trunc {
        *out.coeff_mut(j * a, j * b) = int(1);
        j += 1;
        if b == 0 {
            break;
        }
    }
    out
}

pub fn closed_refined(kind: ClosedKind, h: &Rat, t_trunc: u32, q_trunc: u32) -> BivariateSeries {
    let mut out = BivariateSeries::one(t_trunc, q_trunc);
    match kind {
        ClosedKind::VermaPbw => {
            for k in 1..=q_trunc {
                out = out.mul(&geom_factor(1, k, t_trunc, q_trunc));
            }
            out = out.with_offset(h.clone());
        }
        ClosedKind::VermaStandard => {
            out = out.mul(&geom_factor(1, 1, t_trunc, q_trunc));
            for k in 2..=q_trunc {
                out = out.mul(&geom_factor(2, k, t_trunc, q_trunc));
            }
            out = out.with_offset(h.clone());
        }
        ClosedKind::IsingPbw => {
            let cap = isqrt(q_trunc as u64) as u32;
            let inv_poch: Vec<QSeries> = (0..=cap)
                .map(|k| pochhammer(k, q_trunc).inverse().unwrap())
                .collect();
            out = BivariateSeries::zero(t_trunc, q_trunc);
            for k1 in 0..=cap {
                for k2 in 0..=cap {
                    let t_deg = 2 * k1 + k2;
                    let e = 4 * (k1 as u64).pow(2)
                        + 3 * k1 as u64 * k2 as u64
                        + (k2 as u64).pow(2);
                    if t_deg > t_trunc || e > q_trunc as u64 {
                        continue;
                    }
                    // q^e (1 - q^{k1} + q^{k1+k2}), taken literally: at
                    // k1 = 0 the factor collapses to q^{k2}
                    let poly = QSeries::monomial(int(1), e as u32, q_trunc)
                        .add(&QSeries::monomial(int(-1), e as u32 + k1, q_trunc))
                        .unwrap()
                        .add(&QSeries::monomial(int(1), e as u32 + k1 + k2, q_trunc))
                        .unwrap();
                    let term = poly.mul(&inv_poch[k1 as usize]).mul(&inv_poch[k2 as usize]);
                    for n in 0..=q_trunc {
                        let c = term.coeff(n);
                        if !c.is_zero() {
                            *out.coeff_mut(t_deg, n) += c;
                        }
                    }
                }
            }
        }
        ClosedKind::GrUniversalVacuum => {
            for k in 2..=q_trunc {
                out = out.mul(&geom_factor(k - 2, k, t_trunc, q_trunc));
            }
        }
        ClosedKind::GrVerma => {
            out = out.mul(&geom_factor(0, 1, t_trunc, q_trunc));
            for k in 2..=q_trunc {
                out = out.mul(&geom_factor(k - 2, k, t_trunc, q_trunc));
            }
            out = out.with_offset(h.clone());
        }
    }
    out
}
