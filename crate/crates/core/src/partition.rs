//! Partitions, compositions and the Gordon partition ideals.
//!
//! A partition is stored as its nonincreasing part list. The statistics
//! `len`, `weight`, `clen` (conformal length) and `li_degree` are derived
//! on demand. The PBW monomial encoding maps a partition to the monomial
//! `prod_j x_j^{f_j}` with variables `x_j = L_{-j}` ordered
//! `x_1 > x_2 > ...`; `pbw_cmp` implements degree reverse lexicographic
//! order on these monomials.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>, // nonincreasing, all positive
}

impl Partition {
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Sorts the given parts (the `prt` map on compositions).
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// 2 * (#parts >= 2) + (#parts == 1)
    pub fn clen(&self) -> u32 {
        self.parts
            .iter()
            .map(|&p| if p >= 2 { 2 } else { 1 })
            .sum()
    }

    /// weight - clen = sum over parts >= 2 of (part - 2)
    pub fn li_degree(&self) -> u32 {
        self.weight() - self.clen()
    }

    /// Multiplicity f_n = number of parts equal to n.
    pub fn multiplicity(&self, n: u32) -> usize {
        self.parts.iter().filter(|&&p| p == n).count()
    }

    pub fn max_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn min_part(&self) -> u32 {
        self.parts.last().copied().unwrap_or(0)
    }

    /// Multiset union of parts (product of the monomial encodings).
    pub fn product(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// Degrevlex comparison of monomial encodings with x_1 > x_2 > ...:
    /// higher total degree (length) wins; on equal length, the partition
    /// with the smaller exponent at the largest-index differing variable
    /// is the larger monomial.
    pub fn pbw_cmp(&self, other: &Partition) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let top = self.max_part().max(other.max_part());
        for n in (1..=top).rev() {
            let (fa, fb) = (self.multiplicity(n), other.multiplicity(n));
            match fa.cmp(&fb) {
                Ordering::Equal => continue,
                // smaller exponent at the largest differing index => larger
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A composition: positive parts in arbitrary order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0));
        Self { parts }
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The sorted partition `prt(self)`.
    pub fn prt(&self) -> Partition {
        Partition::new(self.parts.clone())
    }
}

/// All partitions of `n` with parts at least `min_part`, sorted by
/// `pbw_cmp` descending (the canonical enumeration order).
pub fn enumerate_partitions_min(n: u32, min_part: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, min: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition {
                parts: stack.clone(),
            });
            return;
        }
        let hi = max.min(n);
        for p in (min..=hi).rev() {
            stack.push(p);
            rec(n - p, p, min, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    rec(n, n.max(1), min_part.max(1), &mut stack, &mut out);
    out.sort_by(|a, b| b.pbw_cmp(a));
    out
}

pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    enumerate_partitions_min(n, 1)
}

/// True iff `eta` occurs as a consecutive window of `lambda`'s part list.
pub fn contains(lambda: &Partition, eta: &Partition) -> bool {
    let (l, e) = (lambda.parts(), eta.parts());
    if e.is_empty() {
        return true;
    }
    if e.len() > l.len() {
        return false;
    }
    l.windows(e.len()).any(|w| w == e)
}

/// Monomial divisibility p_eta | p_lambda: every multiplicity of `eta`
/// is at most the matching multiplicity of `lambda`.
pub fn divides(eta: &Partition, lambda: &Partition) -> bool {
    (1..=eta.max_part()).all(|n| eta.multiplicity(n) <= lambda.multiplicity(n))
}

/// Membership in the forbidden set R^{s,i}: length-s partitions with
/// largest minus smallest part at most 1, together with [1^i].
pub fn in_r(s: u32, i: u32, eta: &Partition) -> bool {
    assert!(1 <= i && i <= s);
    if eta.len() == s as usize && eta.max_part() - eta.min_part() <= 1 {
        return true;
    }
    eta.len() == i as usize && eta.parts().iter().all(|&p| p == 1)
}

/// Gordon ideal membership via the local multiplicity criterion:
/// f_1 <= i - 1 and f_a + f_{a+1} <= s - 1 for all a.
pub fn in_p(s: u32, i: u32, lambda: &Partition) -> bool {
    assert!(1 <= i && i <= s);
    if lambda.multiplicity(1) > (i - 1) as usize {
        return false;
    }
    (1..=lambda.max_part())
        .all(|a| lambda.multiplicity(a) + lambda.multiplicity(a + 1) <= (s - 1) as usize)
}

/// Gordon ideal membership by the definition: no member of R^{s,i} is a
/// consecutive window of `lambda`.
pub fn in_p_by_containment(s: u32, i: u32, lambda: &Partition) -> bool {
    assert!(1 <= i && i <= s);
    if lambda.multiplicity(1) >= i as usize {
        return false; // contains [1^i]
    }
    // Any R-member contained in lambda is a length-s window drawn from
    // lambda's own parts, so scanning windows suffices.
    let parts = lambda.parts();
    if parts.len() >= s as usize {
        for w in parts.windows(s as usize) {
            if w[0] - w[s as usize - 1] <= 1 {
                return false;
            }
        }
    }
    true
}

/// Gordon ideal membership via monomial divisibility: no R-member of
/// weight at most `weight(lambda)` divides p_lambda.
pub fn in_p_by_divisibility(s: u32, i: u32, lambda: &Partition) -> bool {
    assert!(1 <= i && i <= s);
    if lambda.multiplicity(1) >= i as usize {
        return false;
    }
    // R-members other than [1^i] are the multisets [a^d, (a+1)^{s-d}].
    for a in 1..=lambda.max_part() {
        for d in 1..=s as usize {
            if lambda.multiplicity(a) >= d && lambda.multiplicity(a + 1) >= s as usize - d {
                return false;
            }
        }
    }
    true
}

/// Number of partitions of `n` with every part not congruent to
/// 0, +i or -i mod 2s+1, by dynamic programming over allowed parts.
pub fn count_a(s: u32, i: u32, n: u32) -> u64 {
    assert!(1 <= i && i <= s);
    let m = 2 * s + 1;
    let allowed: Vec<u32> = (1..=n)
        .filter(|&p| {
            let r = p % m;
            r != 0 && r != i % m && r != (m - i) % m
        })
        .collect();
    let mut dp = vec![0u64; n as usize + 1];
    dp[0] = 1;
    for p in allowed {
        for k in p as usize..=n as usize {
            dp[k] += dp[k - p as usize];
        }
    }
    dp[n as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn statistics() {
        let l = p(&[4, 2, 1, 1]);
        assert_eq!(l.len(), 4);
        assert_eq!(l.weight(), 8);
        assert_eq!(l.clen(), 6);
        assert_eq!(l.li_degree(), 2);
        assert_eq!(l.multiplicity(1), 2);
        assert_eq!(Partition::empty().clen(), 0);
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let all4 = enumerate_partitions(4);
        assert_eq!(all4.len(), 5); // p(4) = 5
        let set: Vec<_> = all4.iter().map(|x| x.parts().to_vec()).collect();
        for target in [
            vec![1, 1, 1, 1],
            vec![2, 1, 1],
            vec![2, 2],
            vec![3, 1],
            vec![4],
        ] {
            assert!(set.contains(&target));
        }
        let even4 = enumerate_partitions_min(4, 2);
        assert_eq!(
            even4.iter().map(|x| x.parts().to_vec()).collect::<Vec<_>>(),
            vec![vec![2, 2], vec![4]]
        );
    }

    #[test]
    fn enumeration_is_pbw_descending() {
        let all = enumerate_partitions(5);
        for w in all.windows(2) {
            assert_eq!(w[0].pbw_cmp(&w[1]), std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn pbw_order() {
        // length dominates
        assert_eq!(p(&[2, 1]).pbw_cmp(&p(&[3])), std::cmp::Ordering::Greater);
        // equal length: [3,3] > [4,2] (smaller exponent at the largest index)
        assert_eq!(p(&[3, 3]).pbw_cmp(&p(&[4, 2])), std::cmp::Ordering::Greater);
        // x_1 > x_2
        assert_eq!(p(&[1]).pbw_cmp(&p(&[2])), std::cmp::Ordering::Greater);
    }

    #[test]
    fn containment_windows() {
        assert!(contains(&p(&[4, 3, 2]), &p(&[3, 2])));
        assert!(!contains(&p(&[4, 3, 2]), &p(&[4, 2])));
        assert!(contains(&p(&[4, 3, 2]), &Partition::empty()));
    }

    #[test]
    fn divisibility() {
        assert!(divides(&p(&[4, 2]), &p(&[4, 3, 2])));
        assert!(!divides(&p(&[2, 2]), &p(&[2])));
        assert!(divides(&Partition::empty(), &p(&[5])));
    }

    #[test]
    fn r_membership() {
        assert!(in_r(2, 2, &p(&[2, 1])));
        assert!(in_r(2, 1, &p(&[1])));
        assert!(!in_r(2, 1, &p(&[3, 1])));
        // [1^s] lies in both clauses; membership is still just a bool
        assert!(in_r(3, 3, &p(&[1, 1, 1])));
    }

    #[test]
    fn p_membership() {
        assert!(in_p(2, 2, &p(&[3, 1])));
        assert!(!in_p(2, 2, &p(&[2, 2])));
        assert!(!in_p(2, 1, &p(&[1])));
        assert!(in_p(1, 1, &Partition::empty()));
        assert!(!in_p(1, 1, &p(&[7])));
    }

    #[test]
    fn p_implementations_agree() {
        for n in 0..=20u32 {
            for lambda in enumerate_partitions(n) {
                for s in 1..=4u32 {
                    for i in 1..=s {
                        let a = in_p(s, i, &lambda);
                        assert_eq!(a, in_p_by_containment(s, i, &lambda), "{lambda} {s} {i}");
                        assert_eq!(a, in_p_by_divisibility(s, i, &lambda), "{lambda} {s} {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn gordon_count_equivalence() {
        // #A^{s,i}-partitions of n equals #P^{s,i}-partitions of n
        for n in 0..=30u32 {
            let all = enumerate_partitions(n);
            for s in 1..=4u32 {
                for i in 1..=s {
                    let via_p = all.iter().filter(|l| in_p(s, i, l)).count() as u64;
                    assert_eq!(count_a(s, i, n), via_p, "n={n} s={s} i={i}");
                }
            }
        }
    }

    #[test]
    fn count_a_examples() {
        assert_eq!(count_a(2, 2, 4), 2); // [4], [1,1,1,1]
        assert_eq!(count_a(2, 1, 4), 1); // [2,2]
        assert_eq!(count_a(3, 2, 0), 1);
    }
}
