//! Mode actions of vacuum-module states on highest-weight modules.
//!
//! A vacuum state L_{-n_1-2}...L_{-n_k-2}vac acts through the normal-
//! ordered product of the derivative fields d^{n_j}L(z)/n_j!, nested
//! right to left. A single factor has modes
//! (d^n L / n!)_{(j)} = (-1)^n C(j, n) L_{j-n-1}, and nested products are
//! unwound by the two-sum recursion
//! (:a b:)_{(j)} c = sum_{n <= -1} a_{(n)} b_{(j-n-1)} c
//!                 + sum_{n >= 0} b_{(j-n-1)} a_{(n)} c,
//! with both infinite sums truncated exactly by the weight grading of the
//! target module.

use crate::characters::ModelParams;
use crate::matrix::RationalMatrix;
use crate::partition::Partition;
use crate::rational::{binomial, int, is_zero, Rat};
use crate::verma::{
    gram, singular_space, vacuum_level_basis, ModeContext, ModuleKind, PbwVector,
};
use crate::CoreError;
use num::Zero;

/// (d^{n} L / n!)_{(j)} applied to v.
fn factor_mode(n: u32, j: i64, v: &PbwVector, ctx: &ModeContext) -> PbwVector {
    let coeff = binomial(j, n);
    if is_zero(&coeff) {
        return ctx.zero_vector();
    }
    let sign = if n % 2 == 0 { coeff } else { -coeff };
    ctx.apply(j - n as i64 - 1, v).scale(&sign)
}

/// Conformal weight of the vacuum factor list (each factor n has weight n+2).
fn factors_weight(factors: &[u32]) -> i64 {
    factors.iter().map(|&n| n as i64 + 2).sum()
}

fn nop_mode(factors: &[u32], j: i64, v: &PbwVector, ctx: &ModeContext) -> PbwVector {
    if v.is_zero() {
        return ctx.zero_vector();
    }
    match factors {
        [] => {
            if j == -1 {
                v.clone()
            } else {
                ctx.zero_vector()
            }
        }
        [n] => factor_mode(*n, j, v, ctx),
        [n1, rest @ ..] => {
            let w = v.weight().expect("homogeneous vector") as i64;
            let mut out = ctx.zero_vector();
            // lower sum: a_{(n)} b_{(j-n-1)} v, n <= -1; the inner mode
            // must land at weight >= 0
            let lo = j - factors_weight(rest) - w;
            for n in lo..=-1 {
                let inner = nop_mode(rest, j - n - 1, v, ctx);
                out = out.add(&factor_mode(*n1, n, &inner, ctx));
            }
            // upper sum: b_{(j-n-1)} a_{(n)} v, n >= 0; a_{(n)} = +-C(n,n1)
            // L_{n-n1-1} annihilates v once n - n1 - 1 > w
            for n in 0..=(w + *n1 as i64 + 1) {
                let t = factor_mode(*n1, n, v, ctx);
                out = out.add(&nop_mode(rest, j - n - 1, &t, ctx));
            }
            out
        }
    }
}

/// a_{(l)} u for a vacuum state a acting on u, by linearity over the PBW
/// terms of a.
pub fn mode_with_context(
    a: &PbwVector,
    l: i64,
    u: &PbwVector,
    ctx: &ModeContext,
) -> Result<PbwVector, CoreError> {
    if a.kind != ModuleKind::Vacuum {
        return Err(CoreError::InvalidParams("mode action needs a vacuum state".into()));
    }
    if a.c != u.c {
        return Err(CoreError::InvalidParams(format!(
            "central charge mismatch: state at c={}, module at c={}",
            a.c, u.c
        )));
    }
    let mut out = ctx.zero_vector();
    for (lambda, coeff) in &a.terms {
        let factors: Vec<u32> = lambda.parts().iter().map(|&p| p - 2).collect();
        out = out.add(&nop_mode(&factors, l, u, ctx).scale(coeff));
    }
    Ok(out)
}

pub fn mode(a: &PbwVector, l: i64, u: &PbwVector) -> Result<PbwVector, CoreError> {
    let ctx = ModeContext::new(u.c.clone(), u.h.clone(), u.kind);
    mode_with_context(a, l, u, &ctx)
}

/// (L_{-2}^s vac)_{(l)} u evaluated by the direct multi-sum over ordered
/// splittings of the s-1 outer factors into lowering and raising groups:
/// for each subset I of {1..s-1} (|I| = k, complement J) and each
/// n: {1..s-1} -> N, the word
///   L_{-n_j-2} (j in J, ascending) . L_{p-1} . L_{n_i-1} (i in I, descending)
/// with p = l - k - sum_I n + sum_J n, applied right to left. Independent
/// of the nested two-sum recursion.
pub fn power_mode_expansion(s: u32, l: i64, u: &PbwVector) -> PbwVector {
    assert!(s >= 2);
    let ctx = ModeContext::new(u.c.clone(), u.h.clone(), u.kind);
    let w = match u.weight() {
        Some(w) => w as i64,
        None => {
            assert!(u.is_zero(), "inhomogeneous input");
            return ctx.zero_vector();
        }
    };
    let m = (s - 1) as usize;
    // raising modes L_{n-1} with n >= 0: after at most k of them the
    // weight is at most w + k, so any single n > w + s annihilates
    let raise_cap = w + s as i64;
    let mut out = ctx.zero_vector();
    for mask in 0u32..(1 << m) {
        let k = mask.count_ones() as i64;
        let raised: Vec<usize> = (0..m).filter(|r| mask & (1 << r) != 0).collect();
        let lowered: Vec<usize> = (0..m).filter(|r| mask & (1 << r) == 0).collect();
        // enumerate raising orders, each 0..=raise_cap
        let mut raise_tuples = vec![Vec::new()];
        for _ in 0..raised.len() {
            raise_tuples = raise_tuples
                .into_iter()
                .flat_map(|t: Vec<i64>| {
                    (0..=raise_cap).map(move |v| {
                        let mut t2 = t.clone();
                        t2.push(v);
                        t2
                    })
                })
                .collect();
        }
        for raise_n in &raise_tuples {
            let sum_i: i64 = raise_n.iter().sum();
            // middle mode L_{p-1} must not annihilate: the weight after
            // the raisers is at most w + k, so p - 1 <= w + k, giving
            // sum_J n <= w + 2k - l + sum_I n + 1
            let low_budget = w + 2 * k - l + sum_i + 1;
            if low_budget < 0 && !lowered.is_empty() {
                continue;
            }
            let budget = low_budget.max(0);
            let mut low_tuples: Vec<Vec<i64>> = vec![Vec::new()];
            for _ in 0..lowered.len() {
                low_tuples = low_tuples
                    .into_iter()
                    .flat_map(|t: Vec<i64>| {
                        let used: i64 = t.iter().sum();
                        (0..=(budget - used)).map(move |v| {
                            let mut t2 = t.clone();
                            t2.push(v);
                            t2
                        })
                    })
                    .collect();
            }
            for low_n in &low_tuples {
                let sum_j: i64 = low_n.iter().sum();
                let p = l - k - sum_i + sum_j;
                if p - 1 > w + k {
                    continue;
                }
                // apply right to left: raising modes with descending
                // index position outermost-last
                let mut v = u.clone();
                for &n in raise_n.iter() {
                    // i_1 < ... < i_k applied innermost-first in index order
                    v = ctx.apply(n - 1, &v);
                    if v.is_zero() {
                        break;
                    }
                }
                if v.is_zero() {
                    continue;
                }
                v = ctx.apply(p - 1, &v);
                if v.is_zero() {
                    continue;
                }
                for &n in low_n.iter().rev() {
                    v = ctx.apply(-n - 2, &v);
                }
                out = out.add(&v);
            }
        }
    }
    out
}

/// The generating singular vector of the maximal ideal of the universal
/// vacuum algebra at c_{p,q}: the unique weight-(p-1)(q-1) vacuum vector
/// killed by L_1 and L_2, with the coefficient of L_{-2}^{(p-1)(q-1)/2}
/// normalized to 1.
pub fn vacuum_singular(p: u32, q: u32) -> Result<PbwVector, CoreError> {
    let params = ModelParams::new(p, q, 1, 1)?;
    let n = (p - 1) * (q - 1);
    let ctx = ModeContext::new(params.c.clone(), Rat::zero(), ModuleKind::Vacuum);
    let basis = vacuum_level_basis(n);
    let t1 = vacuum_level_basis(n - 1);
    let t2 = vacuum_level_basis(n - 2);
    let mut stacked = RationalMatrix::zeros(t1.len() + t2.len(), basis.len());
    for (j, mu) in basis.iter().enumerate() {
        let v = ctx.monomial(mu.clone());
        let l1v = ctx.apply(1, &v);
        for (r, tau) in t1.iter().enumerate() {
            *stacked.get_mut(r, j) = l1v.coeff(tau);
        }
        let l2v = ctx.apply(2, &v);
        for (r, tau) in t2.iter().enumerate() {
            *stacked.get_mut(t1.len() + r, j) = l2v.coeff(tau);
        }
    }
    let kernel = stacked.kernel_basis();
    if kernel.len() != 1 {
        return Err(CoreError::SingularSpaceDimension {
            level: n as usize,
            dim: kernel.len(),
        });
    }
    let mut u = ctx.zero_vector();
    for (j, coeff) in kernel.into_iter().next().unwrap().into_iter().enumerate() {
        u.add_term(basis[j].clone(), coeff);
    }
    let pivot = Partition::new(vec![2; (n / 2) as usize]);
    let lead = u.coeff(&pivot);
    if is_zero(&lead) {
        return Err(CoreError::ZeroVector);
    }
    Ok(u.scale(&(int(1) / lead)))
}

/// True iff u pairs to zero under the contravariant form against every
/// basis vector at its level, i.e. u represents 0 in L(c, h).
pub fn in_radical(u: &PbwVector) -> bool {
    let Some(n) = u.weight() else {
        return u.is_zero();
    };
    let g = gram(&u.c, &u.h, n);
    let coords: Vec<Rat> = g.basis.iter().map(|l| u.coeff(l)).collect();
    g.matrix.mul_vec(&coords).iter().all(is_zero)
}

/// The descendant (a_{2,2s+1})_{(s - s*a + d - 1)} v in M(c_{2,2s+1}, h_{1,i}),
/// together with its degrevlex leading power and its radical membership.
pub fn singular_descendant(
    s: u32,
    i: u32,
    a: u32,
    d: u32,
) -> Result<(PbwVector, Partition, bool), CoreError> {
    assert!(1 <= d && d <= s && a >= 1);
    let params = ModelParams::boundary(s, i)?;
    let sing = vacuum_singular(2, 2 * s + 1)?;
    let ctx = ModeContext::new(params.c.clone(), params.h.clone(), ModuleKind::Verma);
    let v = ctx.monomial(Partition::empty());
    let l = s as i64 - (s * a) as i64 + d as i64 - 1;
    let u = mode_with_context(&sing, l, &v, &ctx)?;
    let lp = u.leading_power()?;
    let rad = in_radical(&u);
    Ok((u, lp, rad))
}

/// The level-i singular vector of M(c_{2,2s+1}, h_{1,i}), normalized so
/// the coefficient of L_{-1}^i is 1.
pub fn benoit_singular(s: u32, i: u32) -> Result<PbwVector, CoreError> {
    let params = ModelParams::boundary(s, i)?;
    let space = singular_space(&params.c, &params.h, i);
    if space.len() != 1 {
        return Err(CoreError::SingularSpaceDimension {
            level: i as usize,
            dim: space.len(),
        });
    }
    let u = space.into_iter().next().unwrap();
    let ones = Partition::new(vec![1; i as usize]);
    let lead = u.coeff(&ones);
    if is_zero(&lead) {
        return Err(CoreError::ZeroVector);
    }
    Ok(u.scale(&(int(1) / lead)))
}

/// Delete every term containing a part >= 3: the image in the quotient
/// polynomial ring on the classes of L_{-1} and L_{-2}.
pub fn reduce_mod_c2(u: &PbwVector) -> PbwVector {
    let mut out = PbwVector::zero(u.c.clone(), u.h.clone(), u.kind);
    for (lambda, coeff) in &u.terms {
        if lambda.max_part() <= 2 {
            out.add_term(lambda.clone(), coeff.clone());
        }
    }
    out
}

/// The reduced generator classes u_1, ..., u_i of the jet-side module
/// ideal: u_k (k < i) is the C2 reduction of (a_{2,2s+1})_{(k-1)} v, and
/// u_i comes from the level-i singular vector.
pub fn module_generators(s: u32, i: u32) -> Result<Vec<PbwVector>, CoreError> {
    let params = ModelParams::boundary(s, i)?;
    let sing = vacuum_singular(2, 2 * s + 1)?;
    let ctx = ModeContext::new(params.c.clone(), params.h.clone(), ModuleKind::Verma);
    let v = ctx.monomial(Partition::empty());
    let mut out = Vec::new();
    for k in 1..i {
        let u = mode_with_context(&sing, k as i64 - 1, &v, &ctx)?;
        out.push(reduce_mod_c2(&u));
    }
    out.push(reduce_mod_c2(&benoit_singular(s, i)?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn prt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn hw(c: Rat, h: Rat) -> PbwVector {
        PbwVector::monomial(c, h, ModuleKind::Verma, Partition::empty())
    }

    #[test]
    fn vacuum_singular_examples() {
        let a23 = vacuum_singular(2, 3).unwrap();
        assert_eq!(a23.terms.len(), 1);
        assert_eq!(a23.coeff(&prt(&[2])), int(1));

        let a25 = vacuum_singular(2, 5).unwrap();
        assert_eq!(a25.coeff(&prt(&[2, 2])), int(1));
        assert_eq!(a25.coeff(&prt(&[4])), rat(-3, 5));
        assert_eq!(a25.terms.len(), 2);

        let a34 = vacuum_singular(3, 4).unwrap();
        assert_eq!(a34.weight(), Some(6));
        assert_eq!(a34.coeff(&prt(&[2, 2, 2])), int(1));
        // killed by L_1 and L_2 at c = 1/2
        let ctx = ModeContext::new(rat(1, 2), int(0), ModuleKind::Vacuum);
        assert!(ctx.apply(1, &a34).is_zero());
        assert!(ctx.apply(2, &a34).is_zero());
    }

    #[test]
    fn mode_single_factor() {
        let c = rat(-22, 5);
        let h = rat(-1, 5);
        let omega = PbwVector::monomial(c.clone(), int(0), ModuleKind::Vacuum, prt(&[2]));
        let v = hw(c.clone(), h.clone());
        // omega_{(1)} = L_0
        let r = mode(&omega, 1, &v).unwrap();
        assert_eq!(r, v.scale(&h));

        // (d^2 L / 2)_{(0)} carries C(0,2) = 0
        let l4 = PbwVector::monomial(c.clone(), int(0), ModuleKind::Vacuum, prt(&[4]));
        assert!(mode(&l4, 0, &v).unwrap().is_zero());
    }

    #[test]
    fn mode_of_weight4_singular_state() {
        let c = rat(-22, 5);
        let h = rat(-1, 5);
        let a = vacuum_singular(2, 5).unwrap();
        let v = hw(c.clone(), h.clone());
        let r = mode(&a, 0, &v).unwrap();
        assert_eq!(r.coeff(&prt(&[2, 1])), int(2));
        assert_eq!(r.coeff(&prt(&[3])), int(2) * &h);
        assert_eq!(r.terms.len(), 2);
    }

    #[test]
    fn mode_rejects_mismatches() {
        let v = hw(int(0), int(0));
        let a = PbwVector::monomial(int(1), int(0), ModuleKind::Vacuum, prt(&[2]));
        assert!(mode(&a, 0, &v).is_err());
        assert!(mode(&v.clone(), 0, &v).is_err());
    }

    #[test]
    fn power_expansion_examples() {
        let c = rat(-22, 5);
        let h = rat(-1, 5);
        let v = hw(c.clone(), h.clone());

        let r = power_mode_expansion(2, 0, &v);
        assert_eq!(r.coeff(&prt(&[2, 1])), int(2));
        assert_eq!(r.coeff(&prt(&[3])), int(2) * &h);
        assert_eq!(r.terms.len(), 2);

        let r = power_mode_expansion(2, 1, &v);
        assert_eq!(r.coeff(&prt(&[1, 1])), int(1));
        assert_eq!(r.coeff(&prt(&[2])), int(2) * &h);
        assert_eq!(r.terms.len(), 2);

        // result weight 2s - l - 1 < 0
        assert!(power_mode_expansion(2, 5, &v).is_zero());
    }

    #[test]
    fn power_expansion_matches_mode_engine() {
        let c = rat(-22, 5);
        let h = rat(-1, 5);
        let v = hw(c.clone(), h.clone());
        let s = 2u32;
        let state = PbwVector::monomial(c.clone(), int(0), ModuleKind::Vacuum, prt(&[2, 2]));
        for l in -4i64..=(2 * s as i64 - 1) {
            let lhs = mode(&state, l, &v).unwrap();
            let rhs = power_mode_expansion(s, l, &v);
            assert_eq!(lhs, rhs, "l={l}");
        }
    }

    #[test]
    fn translation_covariance() {
        use crate::verma::vacuum_straighten;
        let c = rat(1, 2);
        let h = rat(1, 16);
        let v = hw(c.clone(), h.clone());
        for parts in [vec![2u32], vec![3], vec![2, 2]] {
            let a = PbwVector::monomial(c.clone(), int(0), ModuleKind::Vacuum, prt(&parts));
            // T a = L_{-1} a in the vacuum module
            let mut word = vec![-1i64];
            word.extend(parts.iter().map(|&p| -(p as i64)));
            let ta = vacuum_straighten(&word, &c);
            for l in -3i64..=4 {
                let lhs = mode(&ta, l, &v).unwrap();
                let rhs = mode(&a, l - 1, &v).unwrap().scale(&int(-l));
                assert_eq!(lhs, rhs, "parts={parts:?}, l={l}");
            }
        }
    }

    #[test]
    fn weight_bookkeeping() {
        let c = rat(-22, 5);
        let h = rat(-1, 5);
        let a = vacuum_singular(2, 5).unwrap();
        let v = hw(c.clone(), h.clone());
        for l in -3i64..=3 {
            let r = mode(&a, l, &v).unwrap();
            if !r.is_zero() {
                assert_eq!(r.weight(), Some((4 - l - 1) as u32), "l={l}");
            }
        }
    }

    #[test]
    fn descendant_examples() {
        let (u, lp, rad) = singular_descendant(2, 2, 1, 1).unwrap();
        assert_eq!(u.coeff(&prt(&[2, 1])), int(2));
        assert_eq!(u.coeff(&prt(&[3])), rat(-2, 5));
        assert_eq!(lp, prt(&[2, 1]));
        assert!(rad);

        let (u, lp, rad) = singular_descendant(2, 1, 1, 2).unwrap();
        assert_eq!(u.coeff(&prt(&[1, 1])), int(1));
        assert_eq!(u.terms.len(), 1);
        assert_eq!(lp, prt(&[1, 1]));
        assert!(rad);

        let (u, lp, rad) = singular_descendant(2, 2, 1, 2).unwrap();
        assert_eq!(u.coeff(&prt(&[1, 1])), int(1));
        assert_eq!(u.coeff(&prt(&[2])), rat(-2, 5));
        assert_eq!(lp, prt(&[1, 1]));
        assert!(rad);
    }

    #[test]
    fn benoit_examples() {
        let b = benoit_singular(2, 1).unwrap();
        assert_eq!(b.terms.len(), 1);
        assert_eq!(b.coeff(&prt(&[1])), int(1));

        let b = benoit_singular(2, 2).unwrap();
        assert_eq!(b.coeff(&prt(&[1, 1])), int(1));
        assert_eq!(b.coeff(&prt(&[2])), rat(-2, 5));

        let b = benoit_singular(3, 1).unwrap();
        assert_eq!(b.coeff(&prt(&[1])), int(1));
        assert_eq!(b.terms.len(), 1);
    }

    #[test]
    fn generator_examples() {
        let gens = module_generators(2, 2).unwrap();
        assert_eq!(gens.len(), 2);
        // u_1 = s L_{-2}^{s-1} L_{-1} with s = 2
        assert_eq!(gens[0].coeff(&prt(&[2, 1])), int(2));
        assert_eq!(gens[0].terms.len(), 1);
        assert_eq!(gens[1].coeff(&prt(&[1, 1])), int(1));
        assert_eq!(gens[1].coeff(&prt(&[2])), rat(-2, 5));

        let gens = module_generators(2, 1).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].coeff(&prt(&[1])), int(1));
    }

    #[test]
    fn first_generator_shape() {
        for s in 2..=3u32 {
            let gens = module_generators(s, s).unwrap();
            let mut parts = vec![2u32; (s - 1) as usize];
            parts.push(1);
            assert_eq!(gens[0].coeff(&prt(&parts)), int(s as i64), "s={s}");
            assert_eq!(gens[0].terms.len(), 1, "s={s}");
        }
    }
}
