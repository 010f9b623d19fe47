//! Exact Virasoro module arithmetic: PBW straightening of mode words,
//! Shapovalov Gram matrices, irreducible-quotient dimensions, singular
//! vectors, and degrevlex leading powers.
//!
//! Vectors live either in the Verma module M(c, h) (PBW basis indexed by
//! all partitions) or in the universal vacuum module (partitions with all
//! parts >= 2, and L_n annihilates the vacuum for n >= -1).

use crate::matrix::RationalMatrix;
use crate::partition::{enumerate_partitions, enumerate_partitions_min, Partition};
use crate::rational::{int, is_zero, rat, Rat};
use crate::CoreError;
use num::Zero;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Verma,
    Vacuum,
}

type Terms = BTreeMap<Partition, Rat>;

/// A vector in M(c,h) or the vacuum module, as an exact combination of
/// PBW basis monomials L_{-lambda_1} ... L_{-lambda_m} applied to the
/// highest-weight vector. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct PbwVector {
    pub c: Rat,
    pub h: Rat,
    pub kind: ModuleKind,
    pub terms: Terms,
}

impl PbwVector {
    pub fn zero(c: Rat, h: Rat, kind: ModuleKind) -> Self {
        Self {
            c,
            h,
            kind,
            terms: Terms::new(),
        }
    }

    pub fn monomial(c: Rat, h: Rat, kind: ModuleKind, lambda: Partition) -> Self {
        if kind == ModuleKind::Vacuum {
            assert!(lambda.parts().iter().all(|&p| p >= 2), "vacuum monomials need parts >= 2");
        }
        let mut v = Self::zero(c, h, kind);
        v.terms.insert(lambda, int(1));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> Rat {
        self.terms.get(lambda).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: Rat) {
        if is_zero(&coeff) {
            return;
        }
        let entry = self.terms.entry(lambda).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            // re-fetch key to remove; simplest is retain
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if is_zero(c) {
            return Self::zero(self.c.clone(), self.h.clone(), self.kind);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.c == other.c && self.h == other.h && self.kind == other.kind);
        let mut out = self.clone();
        for (l, v) in &other.terms {
            out.add_term(l.clone(), v.clone());
        }
        out
    }

    /// Common conformal-weight offset of all terms, when homogeneous.
    pub fn weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|l| l.weight());
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// The degrevlex-largest monomial with nonzero coefficient.
    pub fn leading_power(&self) -> Result<Partition, CoreError> {
        self.terms
            .keys()
            .max_by(|a, b| a.pbw_cmp(b))
            .cloned()
            .ok_or(CoreError::ZeroVector)
    }
}

/// Straightening engine for a fixed (c, h, module kind), with a memo
/// cache of single-mode actions on basis monomials.
pub struct ModeContext {
    c: Rat,
    h: Rat,
    kind: ModuleKind,
    cache: RefCell<HashMap<(i64, Partition), Terms>>,
}

impl ModeContext {
    pub fn new(c: Rat, h: Rat, kind: ModuleKind) -> Self {
        if kind == ModuleKind::Vacuum {
            assert!(h.is_zero(), "vacuum module has h = 0");
        }
        Self {
            c,
            h,
            kind,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }

    pub fn h(&self) -> &Rat {
        &self.h
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn monomial(&self, lambda: Partition) -> PbwVector {
        PbwVector::monomial(self.c.clone(), self.h.clone(), self.kind, lambda)
    }

    pub fn zero_vector(&self) -> PbwVector {
        PbwVector::zero(self.c.clone(), self.h.clone(), self.kind)
    }

    /// Act by the mode L_k and return the straightened result.
    pub fn apply(&self, k: i64, u: &PbwVector) -> PbwVector {
        assert!(u.c == self.c && u.h == self.h && u.kind == self.kind);
        let mut out = self.zero_vector();
        for (lambda, coeff) in &u.terms {
            for (mu, c2) in self.apply_monomial(k, lambda) {
                out.add_term(mu, coeff * &c2);
            }
        }
        out
    }

    /// Straighten a whole word of modes applied to the highest-weight
    /// vector; word[0] is the outermost (last-applied) mode.
    pub fn straighten_word(&self, word: &[i64]) -> PbwVector {
        let mut v = self.monomial(Partition::empty());
        for &k in word.iter().rev() {
            v = self.apply(k, &v);
        }
        v
    }

    fn apply_monomial(&self, k: i64, lambda: &Partition) -> Terms {
        let key = (k, lambda.clone());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return hit.clone();
        }
        let result = self.compute(k, lambda);
        self.cache.borrow_mut().insert(key, result.clone());
        result
    }

    fn compute(&self, k: i64, lambda: &Partition) -> Terms {
        let mut out = Terms::new();
        if lambda.is_empty() {
            match self.kind {
                ModuleKind::Verma => {
                    if k == 0 {
                        if !self.h.is_zero() {
                            out.insert(Partition::empty(), self.h.clone());
                        }
                    } else if k < 0 {
                        out.insert(Partition::new(vec![(-k) as u32]), int(1));
                    }
                }
                ModuleKind::Vacuum => {
                    if k <= -2 {
                        out.insert(Partition::new(vec![(-k) as u32]), int(1));
                    }
                }
            }
            return out;
        }
        let l1 = lambda.parts()[0] as i64;
        let rest = Partition::new(lambda.parts()[1..].to_vec());
        if k < 0 && -k >= l1 {
            // already in PBW order: prepend
            let mut parts = vec![(-k) as u32];
            parts.extend_from_slice(lambda.parts());
            out.insert(Partition::new(parts), int(1));
            return out;
        }
        // L_k L_{-l1} = L_{-l1} L_k + (k + l1) L_{k - l1}
        //              + delta_{k,l1} (k^3 - k)/12 * c
        for (mu, coeff) in self.apply_monomial(k, &rest) {
            for (nu, c2) in self.apply_monomial(-l1, &mu) {
                merge(&mut out, nu, &coeff * &c2);
            }
        }
        let factor = k + l1;
        if factor != 0 {
            for (mu, coeff) in self.apply_monomial(k - l1, &rest) {
                merge(&mut out, mu, int(factor) * coeff);
            }
        }
        if k == l1 {
            let central = rat(k * k * k - k, 12) * &self.c;
            if !central.is_zero() {
                merge(&mut out, rest, central);
            }
        }
        out
    }
}

fn merge(out: &mut Terms, key: Partition, delta: Rat) {
    if is_zero(&delta) {
        return;
    }
    let entry = out.entry(key.clone()).or_insert_with(Rat::zero);
    *entry += delta;
    if entry.is_zero() {
        out.remove(&key);
    }
}

/// One-off mode action without an explicit context.
pub fn apply_mode(k: i64, u: &PbwVector) -> PbwVector {
    ModeContext::new(u.c.clone(), u.h.clone(), u.kind).apply(k, u)
}

/// Straighten a word of modes applied to the vacuum of the universal
/// vacuum module at central charge c.
pub fn vacuum_straighten(word: &[i64], c: &Rat) -> PbwVector {
    ModeContext::new(c.clone(), Rat::zero(), ModuleKind::Vacuum).straighten_word(word)
}

/// Level-n partitions in degrevlex-descending order.
pub fn level_basis(n: u32) -> Vec<Partition> {
    enumerate_partitions(n)
}

/// Level-n vacuum basis (parts >= 2) in degrevlex-descending order.
pub fn vacuum_level_basis(n: u32) -> Vec<Partition> {
    enumerate_partitions_min(n, 2)
}

/// The contravariant (Shapovalov) form at level n, in the given basis.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub level: u32,
    pub basis: Vec<Partition>,
    pub matrix: RationalMatrix,
}

fn gram_in_basis(ctx: &ModeContext, level: u32, basis: Vec<Partition>) -> GramMatrix {
    let dim = basis.len();
    let mut matrix = RationalMatrix::zeros(dim, dim);
    let columns: Vec<PbwVector> = basis.iter().map(|mu| ctx.monomial(mu.clone())).collect();
    for i in 0..dim {
        for j in i..dim {
            // raising modes of basis[i], largest first, against column j
            let mut v = columns[j].clone();
            for &part in basis[i].parts() {
                v = ctx.apply(part as i64, &v);
            }
            let entry = v.coeff(&Partition::empty());
            *matrix.get_mut(i, j) = entry.clone();
            if i != j {
                *matrix.get_mut(j, i) = entry;
            }
        }
    }
    GramMatrix {
        level,
        basis,
        matrix,
    }
}

pub fn gram_with_context(ctx: &ModeContext, n: u32) -> GramMatrix {
    let basis = match ctx.kind() {
        ModuleKind::Verma => level_basis(n),
        ModuleKind::Vacuum => vacuum_level_basis(n),
    };
    gram_in_basis(ctx, n, basis)
}

pub fn gram(c: &Rat, h: &Rat, n: u32) -> GramMatrix {
    gram_with_context(&ModeContext::new(c.clone(), h.clone(), ModuleKind::Verma), n)
}

pub fn gram_vacuum(c: &Rat, n: u32) -> GramMatrix {
    gram_with_context(&ModeContext::new(c.clone(), Rat::zero(), ModuleKind::Vacuum), n)
}

/// Dimension of the level-n graded piece of L(c, h) = rank of the form.
pub fn irr_dim(c: &Rat, h: &Rat, n: u32) -> usize {
    gram(c, h, n).matrix.rank()
}

/// Basis of singular vectors at level n: the joint kernel of L_1 and L_2
/// (which generate the raising subalgebra). Each vector is normalized so
/// its degrevlex-leading coefficient is 1.
pub fn singular_space(c: &Rat, h: &Rat, n: u32) -> Vec<PbwVector> {
    assert!(n >= 1);
    let ctx = ModeContext::new(c.clone(), h.clone(), ModuleKind::Verma);
    singular_space_with_context(&ctx, n)
}

pub fn singular_space_with_context(ctx: &ModeContext, n: u32) -> Vec<PbwVector> {
    let basis = level_basis(n);
    let target1 = level_basis(n - 1);
    let target2 = if n >= 2 { level_basis(n - 2) } else { Vec::new() };
    let nrows = target1.len() + target2.len();
    let mut stacked = RationalMatrix::zeros(nrows, basis.len());
    for (j, mu) in basis.iter().enumerate() {
        let v = ctx.monomial(mu.clone());
        let l1v = ctx.apply(1, &v);
        for (r, tau) in target1.iter().enumerate() {
            *stacked.get_mut(r, j) = l1v.coeff(tau);
        }
        if n >= 2 {
            let l2v = ctx.apply(2, &v);
            for (r, tau) in target2.iter().enumerate() {
                *stacked.get_mut(target1.len() + r, j) = l2v.coeff(tau);
            }
        }
    }
    stacked
        .kernel_basis()
        .into_iter()
        .map(|coords| {
            let mut u = ctx.zero_vector();
            for (j, coeff) in coords.into_iter().enumerate() {
                u.add_term(basis[j].clone(), coeff);
            }
            let lead = u.leading_power().expect("kernel vector is nonzero");
            let inv = int(1) / u.coeff(&lead);
            u.scale(&inv)
        })
        .collect()
}
