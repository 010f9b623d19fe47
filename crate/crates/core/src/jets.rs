//! Jet-algebra quotients, Zhu-algebra data, and classical-freeness
//! verdicts.
//!
//! The polynomial model: one variable x_j for each j >= 2 with weight j
//! and Li-degree j - 2, and the derivation d(x_j) = (j-1) x_{j+1}.
//! Monomials are encoded as partitions with parts >= 2. Components of a
//! differential ideal are computed exactly as spans of ordinary monomial
//! multiples of iterated derivatives of the generators, which is finite
//! per bidegree.

use crate::characters::ModelParams;
use crate::filtration::{li_refined_irr, li_refined_vacuum, BigradedTable, FiltrationTag};
use crate::matrix::RationalMatrix;
use crate::partition::{enumerate_partitions_min, in_p, Partition};
use crate::rational::{int, rat, Rat};
use crate::verma::{gram, level_basis};
use crate::CoreError;
use num::Zero;
use std::collections::BTreeMap;

/// Exact polynomial in the jet variables; keys are monomials.
pub type JetPoly = BTreeMap<Partition, Rat>;

pub fn jet_monomial(parts: &[u32]) -> JetPoly {
    let mut p = JetPoly::new();
    p.insert(Partition::new(parts.to_vec()), int(1));
    p
}

fn jet_add_term(p: &mut JetPoly, key: Partition, delta: Rat) {
    if delta.is_zero() {
        return;
    }
    let e = p.entry(key.clone()).or_insert_with(Rat::zero);
    *e += delta;
    if e.is_zero() {
        p.remove(&key);
    }
}

/// The derivation with d(x_j) = (j-1) x_{j+1}, extended by the product
/// rule: weight +1, Li-degree +1 on homogeneous input.
pub fn jet_derivative(p: &JetPoly) -> JetPoly {
    let mut out = JetPoly::new();
    for (mono, coeff) in p {
        let parts = mono.parts();
        let mut seen = Vec::new();
        for (idx, &j) in parts.iter().enumerate() {
            if seen.contains(&j) {
                continue; // handle each distinct part once, via multiplicity
            }
            seen.push(j);
            let mult = mono.multiplicity(j) as i64;
            let mut new_parts = parts.to_vec();
            new_parts[idx] = j + 1;
            jet_add_term(
                &mut out,
                Partition::new(new_parts),
                coeff * int(mult * (j as i64 - 1)),
            );
        }
    }
    out
}

fn jet_mul_monomial(p: &JetPoly, m: &Partition) -> JetPoly {
    p.iter().map(|(k, v)| (k.product(m), v.clone())).collect()
}

fn jet_scale(p: &JetPoly, c: &Rat) -> JetPoly {
    p.iter().map(|(k, v)| (k.clone(), v * c)).collect()
}

fn jet_add(a: &JetPoly, b: &JetPoly) -> JetPoly {
    let mut out = a.clone();
    for (k, v) in b {
        jet_add_term(&mut out, k.clone(), v.clone());
    }
    out
}

/// Monomials of the given weight and Li-degree (parts >= 2).
fn bidegree_monomials(li: u32, weight: u32) -> Vec<Partition> {
    enumerate_partitions_min(weight, 2)
        .into_iter()
        .filter(|l| l.li_degree() == li)
        .collect()
}

/// Dimension of the span of the given polynomials inside the coordinate
/// space of `monomials`.
fn span_rank(polys: &[JetPoly], monomials: &[Partition]) -> usize {
    if polys.is_empty() || monomials.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rat>> = polys
        .iter()
        .map(|p| {
            monomials
                .iter()
                .map(|m| p.get(m).cloned().unwrap_or_else(Rat::zero))
                .collect()
        })
        .collect();
    RationalMatrix::from_rows(rows).rank()
}

/// All elements m * d^j(gen) of the differential ideal of `gens` landing
/// in bidegree (li, weight). Generators must be bihomogeneous with the
/// given bidegrees.
fn ideal_component(gens: &[(JetPoly, u32, u32)], li: u32, weight: u32) -> Vec<JetPoly> {
    let mut out = Vec::new();
    for (gen, gli, gwt) in gens {
        let mut der = gen.clone();
        let mut j = 0u32;
        loop {
            let dli = gli + j;
            let dwt = gwt + j;
            if dli > li || dwt > weight {
                break;
            }
            if li - dli <= weight - dwt {
                for m in bidegree_monomials(li - dli, weight - dwt) {
                    out.push(jet_mul_monomial(&der, &m));
                }
            }
            der = jet_derivative(&der);
            j += 1;
        }
    }
    out
}

/// Zhu algebra data of the simple vertex algebra at c_{p,q}: the
/// nilpotency exponent t and the graded dimensions of C[x]/(x^t) with
/// wt(x) = 2 (dimension 1 at the even weights 0, 2, ..., 2(t-1)).
pub fn zhu_algebra(p: u32, q: u32) -> Result<(u32, Vec<usize>), CoreError> {
    ModelParams::new(p, q, 1, 1)?;
    let t = (p - 1) * (q - 1) / 2;
    let top = if t == 0 { 0 } else { 2 * (t - 1) };
    let dims = (0..=top)
        .map(|w| usize::from(w % 2 == 0 && w / 2 < t))
        .collect();
    Ok((t, dims))
}

/// Bigraded dimensions of the jet quotient by the differential ideal of
/// x_2^t.
pub fn jet_quotient_bigraded(t: u32, t_trunc: u32, q_trunc: u32) -> BigradedTable {
    let gen = jet_monomial(&vec![2; t as usize]);
    let gens = [(gen, 0u32, 2 * t)];
    let mut table = BigradedTable::new(FiltrationTag::Li, Rat::zero(), t_trunc, q_trunc);
    for n in 0..=q_trunc {
        for d in 0..=t_trunc {
            let ambient = bidegree_monomials(d, n);
            if ambient.is_empty() {
                continue;
            }
            let ideal = ideal_component(&gens, d, n);
            let dim = ambient.len() - span_rank(&ideal, &ambient);
            table.set(d, n, dim);
        }
    }
    table
}

/// Graded dimensions of the Zhu module of L(c,h): the level-n quotient of
/// M(c,h) by (partitions containing a part >= 3) + J(c,h).
pub fn zhu_module_dims(c: &Rat, h: &Rat, q_trunc: u32) -> Vec<usize> {
    (0..=q_trunc)
        .map(|n| {
            let basis = level_basis(n);
            let g = gram(c, h, n);
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            for (j, lambda) in basis.iter().enumerate() {
                if lambda.max_part() >= 3 {
                    let mut e = vec![Rat::zero(); basis.len()];
                    e[j] = int(1);
                    rows.push(e);
                }
            }
            rows.extend(g.matrix.kernel_basis());
            if rows.is_empty() {
                basis.len()
            } else {
                basis.len() - RationalMatrix::from_rows(rows).rank()
            }
        })
        .collect()
}

/// Jet-side refined module character for the boundary model (s, i):
/// entry (d, n) counts locally admissible partitions of n with Li-degree
/// d; the offset carries h_{1,i}.
pub fn jet_module_bigraded(
    s: u32,
    i: u32,
    t_trunc: u32,
    q_trunc: u32,
) -> Result<BigradedTable, CoreError> {
    let params = ModelParams::boundary(s, i)?;
    let mut table = BigradedTable::new(FiltrationTag::Li, params.h, t_trunc, q_trunc);
    for n in 0..=q_trunc {
        for lambda in crate::partition::enumerate_partitions(n) {
            if in_p(s, i, &lambda) {
                let d = lambda.li_degree();
                if d <= t_trunc {
                    let cur = table.get(d, n);
                    table.set(d, n, cur + 1);
                }
            }
        }
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessScope {
    VertexAlgebra { p: u32, q: u32 },
    Module { s: u32, i: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deficit {
    pub li_degree: u32,
    pub weight: u32,
    pub jet_dim: usize,
    pub gr_dim: usize,
}

/// Whether the jet-side surjection onto the associated graded is an
/// isomorphism within the truncation, with the first failure if not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessVerdict {
    pub scope: FreenessScope,
    pub t_trunc: u32,
    pub q_trunc: u32,
    pub is_free: bool,
    pub first_deficit: Option<Deficit>,
}

fn compare_tables(
    scope: FreenessScope,
    jet: &BigradedTable,
    gr: &BigradedTable,
    t_trunc: u32,
    q_trunc: u32,
) -> FreenessVerdict {
    let mut first = None;
    'outer: for n in 0..=q_trunc {
        for d in 0..=t_trunc {
            let j = jet.get(d, n);
            let g = gr.get(d, n);
            assert!(j >= g, "surjectivity violated at (li={d}, n={n}): jet {j} < gr {g}");
            if j != g {
                first = Some(Deficit {
                    li_degree: d,
                    weight: n,
                    jet_dim: j,
                    gr_dim: g,
                });
                break 'outer;
            }
        }
    }
    FreenessVerdict {
        scope,
        t_trunc,
        q_trunc,
        is_free: first.is_none(),
        first_deficit: first,
    }
}

pub fn freeness_vertexalg(
    p: u32,
    q: u32,
    t_trunc: u32,
    q_trunc: u32,
) -> Result<FreenessVerdict, CoreError> {
    let t = (p - 1) * (q - 1) / 2;
    let jet = jet_quotient_bigraded(t, t_trunc, q_trunc);
    let gr = li_refined_vacuum(p, q, t_trunc, q_trunc)?;
    Ok(compare_tables(
        FreenessScope::VertexAlgebra { p, q },
        &jet,
        &gr,
        t_trunc,
        q_trunc,
    ))
}

pub fn freeness_module(
    s: u32,
    i: u32,
    t_trunc: u32,
    q_trunc: u32,
) -> Result<FreenessVerdict, CoreError> {
    let params = ModelParams::boundary(s, i)?;
    let jet = jet_module_bigraded(s, i, t_trunc, q_trunc)?;
    let gr = li_refined_irr(&params.c, &params.h, t_trunc, q_trunc);
    Ok(compare_tables(
        FreenessScope::Module { s, i },
        &jet,
        &gr,
        t_trunc,
        q_trunc,
    ))
}

/// Bigraded dimensions of the differential ideal generated by
/// b = x_4 x_3 x_2 + (1/6) x_5 x_2^2 inside C[x_2, x_3, ...]/(x_2^3)_d:
/// rank(ambient-ideal rows + b rows) - rank(ambient-ideal rows).
pub fn ising_kernel_profile(t_trunc: u32, q_trunc: u32) -> BigradedTable {
    let b = jet_add(
        &jet_monomial(&[4, 3, 2]),
        &jet_scale(&jet_monomial(&[5, 2, 2]), &rat(1, 6)),
    );
    let ambient_gens = [(jet_monomial(&[2, 2, 2]), 0u32, 6u32)];
    let b_gens = [(b, 3u32, 9u32)];
    let mut table = BigradedTable::new(FiltrationTag::Li, Rat::zero(), t_trunc, q_trunc);
    for n in 0..=q_trunc {
        for d in 0..=t_trunc {
            let monomials = bidegree_monomials(d, n);
            if monomials.is_empty() {
                continue;
            }
            let mut rows = ideal_component(&ambient_gens, d, n);
            let base = span_rank(&rows, &monomials);
            rows.extend(ideal_component(&b_gens, d, n));
            let dim = span_rank(&rows, &monomials) - base;
            table.set(d, n, dim);
        }
    }
    table
}
