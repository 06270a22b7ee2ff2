//! Constructors for the stock groups used across the crate, plus a small
//! named catalogue of everything up to order 24.

use super::{FiniteGroup, Magma};
use crate::error::{Error, Result};

/// Cyclic group of order `n`; label `k` is the residue `k - 1`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs order >= 1");
    let m = Magma::from_fn(n, |a, b| (a + b - 2) % n + 1);
    FiniteGroup::from_magma(m).expect("cyclic table is a group")
}

/// Dihedral group of the given (even) order `2n`.
///
/// Labels `1..=n` are the rotations `r^i` and `n+1..=2n` the reflections
/// `f·r^i`, multiplied by `(e1, i1)(e2, i2) = (e1+e2, (-1)^{e2} i1 + i2)`.
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "dihedral group needs a positive even order, got {order}"
        )));
    }
    let n = order / 2;
    let enc = |e: usize, i: usize| e * n + i + 1;
    let m = Magma::from_fn(order, |a, b| {
        let (e1, i1) = ((a - 1) / n, (a - 1) % n);
        let (e2, i2) = ((b - 1) / n, (b - 1) % n);
        let i = if e2 == 0 { i1 + i2 } else { (n - i1) + i2 };
        enc((e1 + e2) % 2, i % n)
    });
    Ok(FiniteGroup::from_magma(m).expect("dihedral table is a group"))
}

/// The symmetric group on three points, realised as the dihedral group of
/// order six (labels: identity, two rotations, three reflections).
pub fn symmetric3() -> FiniteGroup {
    dihedral(6).expect("order six is even")
}

/// Dicyclic group of order `4n`; order 8 gives the quaternion group.
///
/// Labels `1..=2n` are `a^i` and `2n+1..=4n` are `x·a^i`, with
/// `x² = aⁿ` and `x a x⁻¹ = a⁻¹`.
pub fn dicyclic(order: usize) -> Result<FiniteGroup> {
    if order < 4 || !order.is_multiple_of(4) {
        return Err(Error::Parameter(format!(
            "dicyclic group needs order divisible by four, got {order}"
        )));
    }
    let n = order / 4;
    let h = 2 * n;
    let enc = |e: usize, i: usize| e * h + i + 1;
    let m = Magma::from_fn(order, |a, b| {
        let (e1, i1) = ((a - 1) / h, (a - 1) % h);
        let (e2, i2) = ((b - 1) / h, (b - 1) % h);
        match (e1, e2) {
            (0, 0) => enc(0, (i1 + i2) % h),
            (0, 1) => enc(1, (h - i1 + i2) % h),
            (1, 0) => enc(1, (i1 + i2) % h),
            (1, 1) => enc(0, (n + h - i1 + i2) % h),
            _ => unreachable!(),
        }
    });
    Ok(FiniteGroup::from_magma(m).expect("dicyclic table is a group"))
}

/// The Frobenius group of order 21: `⟨a, b | a⁷ = b³ = e, b a b⁻¹ = a²⟩`.
///
/// Label `7j + i + 1` is `b^j a^i`, so `1..=7` are the powers of `a`,
/// `8..=14` the coset `b⟨a⟩` and `15..=21` the coset `b²⟨a⟩`.
pub fn frobenius21() -> FiniteGroup {
    let pow2 = [1usize, 2, 4];
    let m = Magma::from_fn(21, |a, b| {
        let (j1, i1) = ((a - 1) / 7, (a - 1) % 7);
        let (j2, i2) = ((b - 1) / 7, (b - 1) % 7);
        let j = (j1 + j2) % 3;
        let i = (i1 * pow2[j2] + i2) % 7;
        7 * j + i + 1
    });
    FiniteGroup::from_magma(m).expect("frobenius table is a group")
}

/// Elementary abelian 2-group of order `2^k`; label `m+1` is the bitmask `m`.
pub fn elementary_abelian2(k: u32) -> FiniteGroup {
    let n = 1usize << k;
    let m = Magma::from_fn(n, |a, b| ((a - 1) ^ (b - 1)) + 1);
    FiniteGroup::from_magma(m).expect("xor table is a group")
}

/// Direct product with labels `(g, h) -> (g-1)·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (ng, nh) = (g.order(), h.order());
    let m = Magma::from_fn(ng * nh, |a, b| {
        let (g1, h1) = ((a - 1) / nh + 1, (a - 1) % nh + 1);
        let (g2, h2) = ((b - 1) / nh + 1, (b - 1) % nh + 1);
        (g.op(g1, g2) - 1) * nh + h.op(h1, h2)
    });
    FiniteGroup::from_magma(m).expect("product of groups is a group")
}

/// The alternating group on four points: the twelve even permutations of
/// `{1,2,3,4}` sorted lexicographically by image vector, composed as
/// `(p·q)(x) = p(q(x))`.
pub fn alternating4() -> FiniteGroup {
    let mut perms: Vec<[usize; 4]> = Vec::new();
    let mut items = [1usize, 2, 3, 4];
    permute_collect(&mut items, 0, &mut perms);
    perms.retain(is_even);
    perms.sort_unstable();
    let index_of = |p: &[usize; 4]| perms.iter().position(|q| q == p).unwrap() + 1;
    let m = Magma::from_fn(12, |a, b| {
        let (p, q) = (perms[a - 1], perms[b - 1]);
        let composed = [
            p[q[0] - 1],
            p[q[1] - 1],
            p[q[2] - 1],
            p[q[3] - 1],
        ];
        index_of(&composed)
    });
    FiniteGroup::from_magma(m).expect("even permutations form a group")
}

fn permute_collect(items: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == 4 {
        out.push(*items);
        return;
    }
    for i in k..4 {
        items.swap(k, i);
        permute_collect(items, k + 1, out);
        items.swap(k, i);
    }
}

fn is_even(p: &[usize; 4]) -> bool {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// A named group in the stock catalogue.
pub struct CatalogueEntry {
    pub name: String,
    pub group: FiniteGroup,
}

/// Every stock group up to order 24: cyclic, dihedral, dicyclic, elementary
/// abelian, the alternating group on four points, the Frobenius group of
/// order 21 and a handful of direct products.
pub fn catalogue() -> Vec<CatalogueEntry> {
    let mut out = Vec::new();
    let mut push = |name: String, group: FiniteGroup| out.push(CatalogueEntry { name, group });
    for n in 1..=24 {
        push(format!("C{n}"), cyclic(n));
    }
    for order in (4..=24).step_by(2) {
        push(format!("D{order}"), dihedral(order).unwrap());
    }
    for order in (8..=24).step_by(4) {
        let name = if order == 8 {
            "Q8".to_string()
        } else {
            format!("Dic{order}")
        };
        push(name, dicyclic(order).unwrap());
    }
    for k in [2u32, 3, 4] {
        push(format!("EA{}", 1usize << k), elementary_abelian2(k));
    }
    push("A4".into(), alternating4());
    push("F21".into(), frobenius21());
    for (a, b) in [(4, 2), (6, 2), (8, 2), (3, 3), (4, 4), (7, 3)] {
        push(
            format!("C{a}xC{b}"),
            direct_product(&cyclic(a), &cyclic(b)),
        );
    }
    out
}
