//! Canonical bases of exterior and symmetric powers.
//!
//! Exterior basis elements are bitmasks of generator indices, ordered
//! lexicographically by their increasing index tuples. Symmetric basis
//! elements are exponent vectors, ordered lexicographically descending
//! (so `x0^2` precedes `x0 x1`).

use std::collections::HashMap;

/// Number of set bits in `mask` strictly below bit `j`.
pub fn bits_below(mask: u32, j: usize) -> u32 {
    (mask & ((1u32 << j) - 1)).count_ones()
}

/// Sign of `e^j ∧ e^I` relative to `e^{I ∪ j}`, or `None` if `j ∈ I`.
pub fn wedge_sign(j: usize, mask: u32) -> Option<(u32, i64)> {
    if mask & (1 << j) != 0 {
        return None;
    }
    let s = if bits_below(mask, j).is_multiple_of(2) { 1 } else { -1 };
    Some((mask | (1 << j), s))
}

/// Sign of `e^I ∧ e^J` relative to `e^{I ∪ J}`, or `None` if they overlap.
pub fn wedge_masks(a: u32, b: u32) -> Option<(u32, i64)> {
    if a & b != 0 {
        return None;
    }
    // Count pairs (i ∈ a, j ∈ b) with j < i.
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inv += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    Some((a | b, if inv.is_multiple_of(2) { 1 } else { -1 }))
}

/// Left contraction `i_{e_j} e^I`.
pub fn contract_sign(j: usize, mask: u32) -> Option<(u32, i64)> {
    if mask & (1 << j) == 0 {
        return None;
    }
    let s = if bits_below(mask, j).is_multiple_of(2) { 1 } else { -1 };
    Some((mask & !(1 << j), s))
}

pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// All `k`-subsets of `{0..n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, cur: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, cur | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut out);
    out
}

/// Exterior algebra basis on `n` generators, graded by degree.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    n: usize,
    by_degree: Vec<Vec<u32>>,
    index: HashMap<u32, usize>,
}

impl ExteriorBasis {
    pub fn new(n: usize) -> Self {
        assert!(n < 32, "at most 31 generators");
        let by_degree: Vec<Vec<u32>> = (0..=n).map(|k| subsets(n, k)).collect();
        let mut index = HashMap::new();
        for list in &by_degree {
            for (p, &m) in list.iter().enumerate() {
                index.insert(m, p);
            }
        }
        ExteriorBasis { n, by_degree, index }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn degree(&self, k: usize) -> &[u32] {
        self.by_degree.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, k: usize) -> usize {
        self.degree(k).len()
    }

    /// Position of `mask` within its degree.
    pub fn pos(&self, mask: u32) -> usize {
        self.index[&mask]
    }

    pub fn top(&self) -> usize {
        self.n
    }
}

/// Monomials of degree `d` in `n` variables, lexicographically descending.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, n: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n - 1 {
            cur.push(left as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u32);
            rec(i + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// Symmetric algebra basis on `n` generators in degrees `0..=cap`.
#[derive(Clone, Debug)]
pub struct SymmetricBasis {
    n: usize,
    by_degree: Vec<Vec<Vec<u32>>>,
    index: HashMap<Vec<u32>, usize>,
}

impl SymmetricBasis {
    pub fn new(n: usize, cap: usize) -> Self {
        let by_degree: Vec<Vec<Vec<u32>>> = (0..=cap).map(|d| monomials(n, d)).collect();
        let mut index = HashMap::new();
        for list in &by_degree {
            for (p, m) in list.iter().enumerate() {
                index.insert(m.clone(), p);
            }
        }
        SymmetricBasis { n, by_degree, index }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn degree(&self, d: usize) -> &[Vec<u32>] {
        self.by_degree.get(d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, d: usize) -> usize {
        self.degree(d).len()
    }

    pub fn pos(&self, m: &[u32]) -> usize {
        self.index[m]
    }

    pub fn try_pos(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_subsets() {
        let s = subsets(3, 2);
        assert_eq!(s.iter().map(|&m| mask_indices(m)).collect::<Vec<_>>(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(5, 3).len(), binomial(5, 3));
    }

    #[test]
    fn wedge_signs() {
        // e^1 ∧ e^0 = -e^0 ∧ e^1
        assert_eq!(wedge_sign(1, 0b01), Some((0b11, -1)));
        assert_eq!(wedge_sign(0, 0b10), Some((0b11, 1)));
        assert_eq!(wedge_masks(0b010, 0b101), Some((0b111, -1)));
        assert_eq!(wedge_masks(0b001, 0b110), Some((0b111, 1)));
        assert_eq!(contract_sign(1, 0b111), Some((0b101, -1)));
        assert_eq!(wedge_masks(0b11, 0b01), None);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(3, 2)[0], vec![2, 0, 0]);
        assert_eq!(monomials(1, 4), vec![vec![4]]);
        let b = SymmetricBasis::new(3, 4);
        assert_eq!(b.dim(4), 15);
        assert_eq!(b.pos(&[0, 0, 2]), 5);
    }
}
