//! The division quasigroup of a group and its axiomatic characterisations.
//!
//! For a group `G` put `x ∘ y = x · y⁻¹`.  The result is a quasigroup
//! satisfying the transitive identity
//!
//! ```text
//! (x ∘ y) ∘ (z ∘ y) = x ∘ z                                (1)
//! ```
//!
//! and every quasigroup satisfying (1) arises this way.  [`check_axiom_set`]
//! verifies four equivalent axiom systems on a raw table; [`wa`] and [`gr`]
//! move between a group and its division quasigroup.

use crate::algebra::{FiniteGroup, Magma};
use crate::error::{Error, Result};

/// A validated division quasigroup with its constant square `e = a ∘ a`
/// and the inversion bijection `a ↦ a' = e ∘ a` cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WardQuasigroup {
    magma: Magma,
    square: usize,
    prime: Vec<usize>,
}

impl WardQuasigroup {
    /// Accepts any table satisfying axiom set (i): latin plus identity (1).
    pub fn from_magma(magma: Magma) -> Result<Self> {
        if !check_axiom_set(&magma, AxiomSet::Quasigroup) {
            return Err(Error::Structure(
                "table is not a quasigroup satisfying (x∘y)∘(z∘y) = x∘z".into(),
            ));
        }
        let square = magma.op(1, 1);
        let prime = (1..=magma.order()).map(|a| magma.op(square, a)).collect();
        Ok(WardQuasigroup {
            magma,
            square,
            prime,
        })
    }

    pub fn magma(&self) -> &Magma {
        &self.magma
    }

    pub fn order(&self) -> usize {
        self.magma.order()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.magma.op(a, b)
    }

    /// The constant square `e = a ∘ a`.
    pub fn square(&self) -> usize {
        self.square
    }

    /// The bijection `a' = e ∘ a`, which is inversion in the recovered group.
    pub fn prime(&self, a: usize) -> usize {
        self.prime[a - 1]
    }

    /// The associator `[x,y,z]`: the unique `w` with
    /// `(x ∘ (y ∘ z)) ∘ w = (x ∘ y) ∘ z`.  In a division quasigroup it
    /// simplifies to `z ∘ ((y ∘ z) ∘ y)` and does not depend on `x`.
    pub fn associator(&self, x: usize, y: usize, z: usize) -> usize {
        let lhs = self.op(x, self.op(y, z));
        let rhs = self.op(self.op(x, y), z);
        self.magma
            .solve_left(lhs, rhs)
            .expect("quasigroup equations are solvable")
    }
}

/// The division quasigroup of a group: `x ∘ y = x · y⁻¹`.
pub fn wa(g: &FiniteGroup) -> WardQuasigroup {
    let magma = Magma::from_fn(g.order(), |a, b| g.op(a, g.inv(b)));
    WardQuasigroup::from_magma(magma).expect("division table of a group satisfies (1)")
}

/// The group recovered from a division quasigroup: `a · b = a ∘ ((b∘b) ∘ b)`.
///
/// This inverts [`wa`] exactly: `gr(wa(G)) = G` and `wa(gr(Q)) = Q`, label
/// for label.
pub fn gr(q: &WardQuasigroup) -> FiniteGroup {
    let magma = Magma::from_fn(q.order(), |a, b| q.op(a, q.prime(b)));
    FiniteGroup::from_magma(magma).expect("recovered multiplication is a group")
}

/// Four equivalent axiom systems for division quasigroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomSet {
    /// Latin square satisfying (1).
    Quasigroup,
    /// Identity (1) plus surjectivity of every row map `a ∘ G = G`
    /// (nothing is assumed about columns).
    RowSurjective,
    /// Constant square `a ∘ a = e`, the identity
    /// `(a ∘ b) ∘ c = a ∘ (c ∘ (e ∘ b))`, and left cancellation of `e`.
    LeftCancellation,
    /// Constant square `a ∘ a = e`; with `a' = e ∘ a`, the involution
    /// `a'' = a` and the identity `(a ∘ b') ∘ c' = a ∘ (b ∘ c')'`.
    PrimeInvolution,
}

/// Exhaustively checks one axiom system on a raw table.
pub fn check_axiom_set(m: &Magma, axioms: AxiomSet) -> bool {
    let n = m.order();
    let all = 1..=n;
    let eq1 = || {
        all.clone().all(|x| {
            (1..=n).all(|y| (1..=n).all(|z| m.op(m.op(x, y), m.op(z, y)) == m.op(x, z)))
        })
    };
    let constant_square = || {
        let e = m.op(1, 1);
        (1..=n).all(|a| m.op(a, a) == e)
    };
    match axioms {
        AxiomSet::Quasigroup => m.is_latin() && eq1(),
        AxiomSet::RowSurjective => {
            let rows_onto = (1..=n).all(|a| {
                let mut hit = vec![false; n];
                for b in 1..=n {
                    hit[m.op(a, b) - 1] = true;
                }
                hit.into_iter().all(|h| h)
            });
            rows_onto && eq1()
        }
        AxiomSet::LeftCancellation => {
            if !constant_square() {
                return false;
            }
            let e = m.op(1, 1);
            let eq2 = (1..=n).all(|a| {
                (1..=n).all(|b| (1..=n).all(|c| m.op(m.op(a, b), c) == m.op(a, m.op(c, m.op(e, b)))))
            });
            let mut seen = vec![false; n];
            let cancels = (1..=n).all(|a| {
                let v = m.op(e, a) - 1;
                !std::mem::replace(&mut seen[v], true)
            });
            eq2 && cancels
        }
        AxiomSet::PrimeInvolution => {
            if !constant_square() {
                return false;
            }
            let e = m.op(1, 1);
            let prime = |a: usize| m.op(e, a);
            let involution = (1..=n).all(|a| prime(prime(a)) == a);
            let eq3 = (1..=n).all(|a| {
                (1..=n).all(|b| {
                    (1..=n)
                        .all(|c| m.op(m.op(a, prime(b)), prime(c)) == m.op(a, prime(m.op(b, prime(c)))))
                })
            });
            involution && eq3
        }
    }
}

/// The set `Y(Q)` of right quasiunits: elements `y` with
/// `(x ∘ y) ∘ (z ∘ y) = x ∘ z` for all `x`, `z`.  If nonempty it is closed
/// under the operation, and `Y(Q) = Q` exactly when (1) holds everywhere.
pub fn right_quasiunits(m: &Magma) -> Vec<usize> {
    let n = m.order();
    (1..=n)
        .filter(|&y| (1..=n).all(|x| (1..=n).all(|z| m.op(m.op(x, y), m.op(z, y)) == m.op(x, z))))
        .collect()
}

/// The right semimedial law `(x ∘ y) ∘ (z ∘ y) = (x ∘ z) ∘ (y ∘ y)`,
/// a consequence of (1).
pub fn is_right_semimedial(m: &Magma) -> bool {
    let n = m.order();
    (1..=n).all(|x| {
        (1..=n).all(|y| (1..=n).all(|z| m.op(m.op(x, y), m.op(z, y)) == m.op(m.op(x, z), m.op(y, y))))
    })
}

/// Structural facts about a division quasigroup and its recovered group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralReport {
    /// `a ∘ b = b ∘ a` everywhere; holds exactly when the recovered group
    /// is an elementary abelian 2-group.
    pub is_commutative: bool,
    /// `(a ∘ b)' = a' ∘ b'`; equivalent to the next flag.
    pub prime_is_automorphism: bool,
    pub gr_is_commutative: bool,
    /// Always true for a division quasigroup; reported for raw-table use.
    pub is_right_semimedial: bool,
}

pub fn structural_predicates(q: &WardQuasigroup) -> StructuralReport {
    let n = q.order();
    let pairs = |f: &dyn Fn(usize, usize) -> bool| (1..=n).all(|a| (1..=n).all(|b| f(a, b)));
    StructuralReport {
        is_commutative: pairs(&|a, b| q.op(a, b) == q.op(b, a)),
        prime_is_automorphism: pairs(&|a, b| {
            q.prime(q.op(a, b)) == q.op(q.prime(a), q.prime(b))
        }),
        gr_is_commutative: gr(q).is_abelian(),
        is_right_semimedial: is_right_semimedial(q.magma()),
    }
}
