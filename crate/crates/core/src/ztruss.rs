//! Truss structures on the heap of integers and on `ℤₙ`.
//!
//! A commutative structure is `m·n = amn + b(m+n) + c` with `ac = b(b−1)`;
//! the only other structures are the two projections. Heap automorphisms
//! `φₖ^± : n ↦ k ± n` act on triples, and a triple corresponds to the
//! trace-one idempotent matrix `[[b, a], [−c, 1−b]]`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::config::Limits;
use crate::heap::{FiniteHeap, HeapError};
use crate::truss::{FiniteTruss, TrussError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZError {
    #[error("constraint ac = b(b-1) fails for ({a}, {b}, {c})")]
    ConstraintViolated { a: BigInt, b: BigInt, c: BigInt },
    #[error("matrix is not a trace-one idempotent")]
    NotIdempotentTraceOne,
    #[error("a projection structure has no commutative parameters")]
    NotCommutative,
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error(transparent)]
    Heap(#[from] HeapError),
    #[error(transparent)]
    Truss(#[from] TrussError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZTrussParams {
    Commutative { a: BigInt, b: BigInt, c: BigInt },
    /// `m·n = m`.
    LeftProjection,
    /// `m·n = n`.
    RightProjection,
}

fn constraint_holds(a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
    a * c == b * (b - 1)
}

impl ZTrussParams {
    pub fn commutative(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self, ZError> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if !constraint_holds(&a, &b, &c) {
            return Err(ZError::ConstraintViolated { a, b, c });
        }
        Ok(ZTrussParams::Commutative { a, b, c })
    }

    pub fn validate(&self) -> Result<(), ZError> {
        match self {
            ZTrussParams::Commutative { a, b, c } if !constraint_holds(a, b, c) => Err(ZError::ConstraintViolated {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
            }),
            _ => Ok(()),
        }
    }

    pub fn triple(&self) -> Option<(&BigInt, &BigInt, &BigInt)> {
        match self {
            ZTrussParams::Commutative { a, b, c } => Some((a, b, c)),
            _ => None,
        }
    }
}

impl fmt::Display for ZTrussParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZTrussParams::Commutative { a, b, c } => write!(f, "({a},{b},{c})"),
            ZTrussParams::LeftProjection => f.write_str("left projection"),
            ZTrussParams::RightProjection => f.write_str("right projection"),
        }
    }
}

/// Product without revalidating the constraint.
pub fn zmul(p: &ZTrussParams, m: &BigInt, n: &BigInt) -> BigInt {
    match p {
        ZTrussParams::Commutative { a, b, c } => a * m * n + b * (m + n) + c,
        ZTrussParams::LeftProjection => m.clone(),
        ZTrussParams::RightProjection => n.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdempotentMatrix {
    pub entries: [[BigInt; 2]; 2],
}

impl IdempotentMatrix {
    pub fn new(entries: [[BigInt; 2]; 2]) -> Result<Self, ZError> {
        let m = IdempotentMatrix { entries };
        if m.trace() != BigInt::one() || m.square() != m.entries {
            return Err(ZError::NotIdempotentTraceOne);
        }
        Ok(m)
    }

    pub fn trace(&self) -> BigInt {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn square(&self) -> [[BigInt; 2]; 2] {
        mat_mul(&self.entries, &self.entries)
    }
}

fn mat_mul(x: &[[BigInt; 2]; 2], y: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
    let cell = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
}

/// `(a,b,c) ↦ [[b, a], [−c, 1−b]]`.
pub fn to_matrix(p: &ZTrussParams) -> Result<IdempotentMatrix, ZError> {
    p.validate()?;
    let (a, b, c) = p.triple().ok_or(ZError::NotCommutative)?;
    Ok(IdempotentMatrix {
        entries: [[b.clone(), a.clone()], [-c, BigInt::one() - b]],
    })
}

pub fn from_matrix(m: &IdempotentMatrix) -> Result<ZTrussParams, ZError> {
    let m = IdempotentMatrix::new(m.entries.clone())?;
    let [[b, a], [neg_c, _]] = m.entries;
    ZTrussParams::commutative(a, b, -neg_c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AutoSign {
    Plus,
    Minus,
}

/// The heap automorphism `n ↦ k ± n` of `ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZAuto {
    pub k: BigInt,
    pub sign: AutoSign,
}

impl ZAuto {
    pub fn new(k: impl Into<BigInt>, sign: AutoSign) -> Self {
        ZAuto { k: k.into(), sign }
    }

    pub fn identity() -> Self {
        ZAuto::new(0, AutoSign::Plus)
    }

    pub fn apply(&self, n: &BigInt) -> BigInt {
        match self.sign {
            AutoSign::Plus => &self.k + n,
            AutoSign::Minus => &self.k - n,
        }
    }

    pub fn inverse(&self) -> ZAuto {
        match self.sign {
            AutoSign::Plus => ZAuto::new(-&self.k, AutoSign::Plus),
            AutoSign::Minus => self.clone(),
        }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &ZAuto) -> ZAuto {
        let k = self.apply(&inner.k);
        let sign = if self.sign == inner.sign { AutoSign::Plus } else { AutoSign::Minus };
        ZAuto { k, sign }
    }

    /// The conjugating matrix `[[1, 0], [k, ±1]]`.
    pub fn matrix(&self) -> [[BigInt; 2]; 2] {
        let s = match self.sign {
            AutoSign::Plus => BigInt::one(),
            AutoSign::Minus => -BigInt::one(),
        };
        [[BigInt::one(), BigInt::zero()], [self.k.clone(), s]]
    }
}

impl fmt::Display for ZAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            AutoSign::Plus => '+',
            AutoSign::Minus => '-',
        };
        write!(f, "({},{s})", self.k)
    }
}

/// The word `[g₁, g₂, …]` applied left to right, as one automorphism.
pub fn compose_word(word: &[ZAuto]) -> ZAuto {
    word.iter().fold(ZAuto::identity(), |acc, g| g.after(&acc))
}

/// Transports `p` along `g`, so that `g` becomes an isomorphism from `p` to the result.
pub fn apply_auto(p: &ZTrussParams, g: &ZAuto) -> Result<ZTrussParams, ZError> {
    p.validate()?;
    let Some((a, b, c)) = p.triple() else {
        return Ok(p.clone());
    };
    let k = &g.k;
    let two = BigInt::from(2);
    let (na, nb, nc) = match g.sign {
        AutoSign::Plus => (a.clone(), b - a * k, c + a * k * k - &two * b * k + k),
        AutoSign::Minus => (-a, b + a * k, -(c + a * k * k) - &two * b * k + k),
    };
    Ok(ZTrussParams::Commutative { a: na, b: nb, c: nc })
}

pub fn apply_word(p: &ZTrussParams, word: &[ZAuto]) -> Result<ZTrussParams, ZError> {
    word.iter().try_fold(p.clone(), |acc, g| apply_auto(&acc, g))
}

/// Orbit representative: `a ≥ 0`, then `b ∈ [0, a)` for `a > 0`, or `c = 0`
/// for `a = 0`. The word carries `p` to the representative.
pub fn canonicalize(p: &ZTrussParams) -> Result<(ZTrussParams, Vec<ZAuto>), ZError> {
    p.validate()?;
    let mut word = Vec::new();
    let Some((a, _, _)) = p.triple() else {
        return Ok((p.clone(), word));
    };
    let mut cur = p.clone();
    if a.is_negative() {
        word.push(ZAuto::new(0, AutoSign::Minus));
        cur = apply_auto(&cur, word.last().unwrap())?;
    }
    let (a, b, c) = cur.triple().unwrap();
    let k = if a.is_zero() {
        if b.is_zero() {
            -c
        } else {
            c.clone()
        }
    } else {
        b.div_floor(a)
    };
    if !k.is_zero() {
        word.push(ZAuto::new(k, AutoSign::Plus));
        cur = apply_auto(&cur, word.last().unwrap())?;
    }
    Ok((cur, word))
}

/// A word carrying `p` to `q` when the two structures are isomorphic.
pub fn are_isomorphic(p: &ZTrussParams, q: &ZTrussParams) -> Result<Option<Vec<ZAuto>>, ZError> {
    let (cp, mut wp) = canonicalize(p)?;
    let (cq, wq) = canonicalize(q)?;
    if cp != cq {
        return Ok(None);
    }
    wp.extend(wq.iter().rev().map(ZAuto::inverse));
    Ok(Some(wp))
}

/// All `(b, c)` with `2 ≤ b ≤ a−1`, `ac = b(b−1)`.
pub fn type3_structures(a: u64) -> Vec<(u64, u64)> {
    (2..a)
        .filter_map(|b| {
            let prod = b as u128 * (b as u128 - 1);
            (prod % a as u128 == 0).then(|| (b, (prod / a as u128) as u64))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpecialZ {
    pub identity: Option<BigInt>,
    pub absorber: Option<BigInt>,
}

impl SpecialZ {
    pub fn unital(&self) -> bool {
        self.identity.is_some()
    }

    pub fn ring_type(&self) -> bool {
        self.absorber.is_some()
    }
}

/// Identity `u` solves `au = 1−b, c = u(au−1)`; absorber `z` solves
/// `az = −b, c = z(az+1)`.
pub fn classify_special(p: &ZTrussParams) -> Result<SpecialZ, ZError> {
    p.validate()?;
    let Some((a, b, c)) = p.triple() else {
        return Ok(SpecialZ::default());
    };
    let one = BigInt::one();
    let identity = if a.is_zero() {
        b.is_one().then(|| -c)
    } else {
        let (u, r) = (&one - b).div_rem(a);
        (r.is_zero() && *c == &u * (a * &u - &one)).then_some(u)
    };
    let absorber = if a.is_zero() {
        b.is_zero().then(|| c.clone())
    } else {
        let (z, r) = (-b).div_rem(a);
        (r.is_zero() && *c == &z * (a * &z + &one)).then_some(z)
    };
    Ok(SpecialZ { identity, absorber })
}

/// Carries a unital structure to `(|a|, 1, 0)` with identity `0`.
pub fn unital_normal_form(p: &ZTrussParams) -> Result<Option<(ZTrussParams, Vec<ZAuto>)>, ZError> {
    let Some(u) = classify_special(p)?.identity else {
        return Ok(None);
    };
    Ok(Some(point_to_zero(p, &u)?))
}

/// Carries a ring-type structure to `(|a|, 0, 0)` with absorber `0`.
pub fn ring_normal_form(p: &ZTrussParams) -> Result<Option<(ZTrussParams, Vec<ZAuto>)>, ZError> {
    let Some(z) = classify_special(p)?.absorber else {
        return Ok(None);
    };
    Ok(Some(point_to_zero(p, &z)?))
}

fn point_to_zero(p: &ZTrussParams, point: &BigInt) -> Result<(ZTrussParams, Vec<ZAuto>), ZError> {
    let mut word = vec![ZAuto::new(-point, AutoSign::Plus)];
    let mut q = apply_auto(p, &word[0])?;
    if q.triple().is_some_and(|(a, _, _)| a.is_negative()) {
        word.push(ZAuto::new(0, AutoSign::Minus));
        q = apply_auto(&q, &word[1])?;
    }
    Ok((q, word))
}

fn residue(v: i64, n: u64) -> usize {
    v.rem_euclid(n as i64) as usize
}

/// `(ℤₙ, amn + b(m+n) + c)` for residues satisfying `ac ≡ b(b−1)`.
pub fn zn_truss(n: u64, a: i64, b: i64, c: i64, limits: &Limits) -> Result<FiniteTruss, ZError> {
    if n == 0 {
        return Err(ZError::ZeroModulus);
    }
    let m = n as i128;
    let (a, b, c) = (a as i128, b as i128, c as i128);
    if (a * c - b * (b - 1)).rem_euclid(m) != 0 {
        return Err(ZError::ConstraintViolated {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        });
    }
    let heap = FiniteHeap::build(&crate::heap::HeapSource::Cyclic(vec![n as usize]), limits)?;
    let f = |x: usize, y: usize| {
        let (x, y) = (x as i128, y as i128);
        (a * x * y + b * (x + y) + c).rem_euclid(m) as usize
    };
    Ok(FiniteTruss::from_fn(heap, f)?)
}

/// Flat table of `δmn − γm(n−1) − β(m−1)n + α(m−1)(n−1) mod n`.
fn affine_table(n: usize, alpha: usize, beta: usize, gamma: usize, delta: usize) -> Vec<usize> {
    let nn = n as i64;
    let (al, be, ga, de) = (alpha as i64, beta as i64, gamma as i64, delta as i64);
    let mut t = Vec::with_capacity(n * n);
    for x in 0..nn {
        for y in 0..nn {
            let v = de * x * y - ga * x * (y - 1) - be * (x - 1) * y + al * (x - 1) * (y - 1);
            t.push(residue(v, n as u64));
        }
    }
    t
}

fn associative(n: usize, t: &[usize]) -> bool {
    for x in 0..n {
        for y in 0..n {
            let xy = t[x * n + y];
            for z in 0..n {
                if t[xy * n + z] != t[x * n + t[y * n + z]] {
                    return false;
                }
            }
        }
    }
    true
}

/// Every truss product on the `ℤₙ` heap, by exhaustive scan of the values of
/// `0·0, 0·1, 1·0, 1·1`; deduplicated and sorted by table.
pub fn zn_enumerate_all(n: u64, limits: &Limits) -> Result<Vec<FiniteTruss>, ZError> {
    if n == 0 {
        return Err(ZError::ZeroModulus);
    }
    let heap = FiniteHeap::build(&crate::heap::HeapSource::Cyclic(vec![n as usize]), limits)?;
    let n = n as usize;
    let tables: BTreeSet<Vec<usize>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|alpha| {
            let mut found = Vec::new();
            for beta in 0..n {
                for gamma in 0..n {
                    for delta in 0..n {
                        let t = affine_table(n, alpha, beta, gamma, delta);
                        if associative(n, &t) {
                            found.push(t);
                        }
                    }
                }
            }
            found
        })
        .collect();
    tables
        .into_iter()
        .map(|t| {
            let rows: Vec<Vec<usize>> = t.chunks(n).map(<[_]>::to_vec).collect();
            FiniteTruss::build(heap.clone(), &rows).map_err(ZError::from)
        })
        .collect()
}

/// `(a, b, c)` of a product on `ℤₙ` read from `0·0, 0·1, 1·1`: `c = α`,
/// `b = β − α`, `a = δ − 2β + α`, reduced mod `n`.
pub fn zn_params_of(t: &FiniteTruss) -> (usize, usize, usize) {
    let n = t.size() as i64;
    let (alpha, beta, delta) = if n == 1 {
        (0, 0, 0)
    } else {
        (t.mul(0, 0) as i64, t.mul(0, 1) as i64, t.mul(1, 1) as i64)
    };
    let r = |v: i64| v.rem_euclid(n) as usize;
    (r(delta - 2 * beta + alpha), r(beta - alpha), r(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64, c: i64) -> ZTrussParams {
        ZTrussParams::commutative(a, b, c).unwrap()
    }

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn products() {
        assert_eq!(zmul(&p(0, 1, 0), &bi(3), &bi(5)), bi(8));
        assert_eq!(zmul(&p(1, 0, 0), &bi(3), &bi(5)), bi(15));
        assert_eq!(zmul(&p(6, 3, 1), &bi(1), &bi(1)), bi(13));
        assert_eq!(zmul(&ZTrussParams::LeftProjection, &bi(3), &bi(5)), bi(3));
        assert!(matches!(ZTrussParams::commutative(1, 1, 1), Err(ZError::ConstraintViolated { .. })));
    }

    #[test]
    fn bridge() {
        let m = to_matrix(&p(1, 0, 0)).unwrap();
        assert_eq!(m.entries, [[bi(0), bi(1)], [bi(0), bi(1)]]);
        let m = to_matrix(&p(0, 1, 0)).unwrap();
        assert_eq!(m.entries, [[bi(1), bi(0)], [bi(0), bi(0)]]);
        let m = to_matrix(&p(6, 3, 1)).unwrap();
        assert_eq!(m.entries, [[bi(3), bi(6)], [bi(-1), bi(-2)]]);
        assert_eq!(m.square(), m.entries);
        assert_eq!(from_matrix(&m).unwrap(), p(6, 3, 1));
        let bad = IdempotentMatrix {
            entries: [[bi(1), bi(1)], [bi(0), bi(1)]],
        };
        assert_eq!(from_matrix(&bad), Err(ZError::NotIdempotentTraceOne));
    }

    #[test]
    fn automorphisms() {
        assert_eq!(apply_auto(&p(1, 3, 6), &ZAuto::new(3, AutoSign::Plus)).unwrap(), p(1, 0, 0));
        assert_eq!(apply_auto(&p(2, -1, 1), &ZAuto::new(-1, AutoSign::Plus)).unwrap(), p(2, 1, 0));
        assert_eq!(apply_auto(&p(6, 3, 1), &ZAuto::identity()).unwrap(), p(6, 3, 1));
    }

    #[test]
    fn automorphism_is_isomorphism() {
        let params = [p(1, 3, 6), p(6, 3, 1), p(-6, 4, -2), p(0, 1, 7), p(0, 0, -3), p(2, -1, 1)];
        let autos = [
            ZAuto::new(3, AutoSign::Plus),
            ZAuto::new(-2, AutoSign::Minus),
            ZAuto::new(0, AutoSign::Minus),
            ZAuto::new(5, AutoSign::Plus),
        ];
        for q in &params {
            for g in &autos {
                let r = apply_auto(q, g).unwrap();
                for m in -4..=4 {
                    for n in -4..=4 {
                        let (m, n) = (bi(m), bi(n));
                        assert_eq!(g.apply(&zmul(q, &m, &n)), zmul(&r, &g.apply(&m), &g.apply(&n)));
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_matches_matrix_action() {
        // g p g⁻¹ with g = [[1,0],[k,±1]] gives the transported matrix.
        for (q, g) in [
            (p(6, 3, 1), ZAuto::new(2, AutoSign::Plus)),
            (p(6, 3, 1), ZAuto::new(-3, AutoSign::Minus)),
            (p(1, 0, 0), ZAuto::new(7, AutoSign::Minus)),
        ] {
            let m = to_matrix(&q).unwrap().entries;
            let gm = g.matrix();
            let ginv = g.inverse().matrix();
            let conj = mat_mul(&mat_mul(&gm, &m), &ginv);
            let direct = to_matrix(&apply_auto(&q, &g).unwrap()).unwrap().entries;
            assert_eq!(conj, direct, "{q} {g}");
        }
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonicalize(&p(0, 1, 7)).unwrap().0, p(0, 1, 0));
        assert_eq!(canonicalize(&p(1, 3, 6)).unwrap().0, p(1, 0, 0));
        assert_eq!(canonicalize(&p(6, 4, 2)).unwrap().0, p(6, 4, 2));
        assert_eq!(canonicalize(&p(1, 1, 0)).unwrap().0, p(1, 0, 0));
        assert_eq!(canonicalize(&p(0, 0, 5)).unwrap().0, p(0, 0, 0));
        let (c, w) = canonicalize(&p(-6, 3, -1)).unwrap();
        assert_eq!(apply_word(&p(-6, 3, -1), &w).unwrap(), c);
        assert_eq!(c.triple().unwrap().0, &bi(6));
        assert_eq!(canonicalize(&ZTrussParams::RightProjection).unwrap().0, ZTrussParams::RightProjection);
    }

    #[test]
    fn isomorphism_tests() {
        let w = are_isomorphic(&p(1, 3, 6), &p(1, 0, 0)).unwrap().unwrap();
        assert_eq!(compose_word(&w), ZAuto::new(3, AutoSign::Plus));
        assert!(are_isomorphic(&p(6, 3, 1), &p(6, 4, 2)).unwrap().is_none());
        assert!(are_isomorphic(&ZTrussParams::LeftProjection, &ZTrussParams::RightProjection)
            .unwrap()
            .is_none());
        let w = are_isomorphic(&p(-6, 9, -12), &p(6, 3, 1)).unwrap().unwrap();
        assert_eq!(apply_word(&p(-6, 9, -12), &w).unwrap(), p(6, 3, 1));
    }

    #[test]
    fn type3() {
        assert_eq!(type3_structures(6), vec![(3, 1), (4, 2)]);
        assert!(type3_structures(8).is_empty());
        assert!(type3_structures(2).is_empty());
        assert_eq!(type3_structures(15), vec![(6, 2), (10, 6)]);
    }

    #[test]
    fn specials() {
        let s = classify_special(&p(1, 1, 0)).unwrap();
        assert_eq!((s.identity, s.absorber), (Some(bi(0)), Some(bi(-1))));
        let s = classify_special(&p(0, 0, 5)).unwrap();
        assert_eq!((s.identity.clone(), s.absorber.clone()), (None, Some(bi(5))));
        assert!(s.ring_type() && !s.unital());
        let s = classify_special(&p(6, 3, 1)).unwrap();
        assert_eq!(s, SpecialZ::default());
        assert_eq!(classify_special(&ZTrussParams::LeftProjection).unwrap(), SpecialZ::default());
        let s = classify_special(&p(0, 1, 4)).unwrap();
        assert_eq!(s.identity, Some(bi(-4)));
    }

    #[test]
    fn normal_forms() {
        let (q, w) = unital_normal_form(&p(-3, 7, -14)).unwrap().unwrap();
        assert_eq!(q, p(3, 1, 0));
        let u = classify_special(&p(-3, 7, -14)).unwrap().identity.unwrap();
        assert_eq!(compose_word(&w).apply(&u), bi(0));
        let (q, _) = unital_normal_form(&p(1, 1, 0)).unwrap().unwrap();
        assert_eq!(q, p(1, 1, 0));
        let (q, _) = ring_normal_form(&p(0, 0, 5)).unwrap().unwrap();
        assert_eq!(q, p(0, 0, 0));
        assert!(ring_normal_form(&p(6, 3, 1)).unwrap().is_none());
    }

    #[test]
    fn zn_examples() {
        let limits = Limits::default();
        let t = zn_truss(4, 1, 0, 0, &limits).unwrap();
        assert_eq!(t, FiniteTruss::from_fn(FiniteHeap::cyclic(&[4]).unwrap(), |x, y| x * y % 4).unwrap());
        assert!(zn_truss(4, 2, 3, 3, &limits).is_ok());
        assert!(matches!(zn_truss(4, 1, 1, 1, &limits), Err(ZError::ConstraintViolated { .. })));
    }

    #[test]
    fn zn_oracle_small() {
        let limits = Limits::default();
        assert_eq!(zn_enumerate_all(1, &limits).unwrap().len(), 1);
        let two = zn_enumerate_all(2, &limits).unwrap();
        for t in &two {
            if t.is_commutative() {
                let (a, b, c) = zn_params_of(t);
                assert_eq!((a * c) % 2, (b * b + 2 - b) % 2);
            }
        }
        let four = zn_enumerate_all(4, &limits).unwrap();
        let z4 = FiniteHeap::cyclic(&[4]).unwrap();
        assert!(four.contains(&FiniteTruss::from_fn(z4.clone(), |x, _| x).unwrap()));
        assert!(four.contains(&FiniteTruss::from_fn(z4, |_, y| y).unwrap()));
    }

    #[test]
    fn oracle_table_matches_recurrence() {
        // The affine formula reproduces the four seed values.
        for (al, be, ga, de) in [(1, 2, 3, 4), (0, 0, 0, 0), (4, 1, 1, 0)] {
            let t = affine_table(5, al, be, ga, de);
            assert_eq!((t[0], t[1], t[5], t[6]), (al, be, ga, de));
        }
    }
}
