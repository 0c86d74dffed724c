//! Finite trusses: validation, special elements, paragons and ideals,
//! quotients, associated rings and braces, isomorphisms.

use thiserror::Error;

use crate::config::Limits;
use crate::heap::{Element, FiniteHeap, HeapError, HeapMorphism, SubHeap};
use crate::hom::group_isos;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrussError {
    #[error(transparent)]
    Heap(#[from] HeapError),
    #[error("multiplication table is not {0}×{0}")]
    MalformedTable(usize),
    #[error("not associative at {witness:?}")]
    NotAssociative { witness: Vec<Element> },
    #[error("not left distributive at (w,x,y,z) = {witness:?}")]
    NotLeftDistributive { witness: Vec<Element> },
    #[error("not right distributive at (w,x,y,z) = {witness:?}")]
    NotRightDistributive { witness: Vec<Element> },
    #[error("not a {side} paragon: (x,p,p') = {witness:?}")]
    NotParagon { side: Side, witness: Vec<Element> },
    #[error("element {0} is not central")]
    NotCentral(Element),
    #[error("carrier of size {size} exceeds the enumeration cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTruss {
    heap: FiniteHeap,
    mul: Vec<Element>,
}

pub(crate) fn ensure_cap(size: usize, cap: usize) -> Result<(), TrussError> {
    if size > cap {
        Err(TrussError::CarrierTooLarge { size, cap })
    } else {
        Ok(())
    }
}

impl FiniteTruss {
    /// Validates associativity, then left and then right distributivity.
    pub fn build(heap: FiniteHeap, table: &[Vec<Element>]) -> Result<Self, TrussError> {
        let n = heap.size();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(TrussError::MalformedTable(n));
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in table {
            for &v in row {
                heap.check_index(v)?;
                mul.push(v);
            }
        }
        Self::from_flat(heap, mul)
    }

    pub fn from_fn(heap: FiniteHeap, f: impl Fn(Element, Element) -> Element) -> Result<Self, TrussError> {
        let n = heap.size();
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                heap.check_index(v)?;
                mul.push(v);
            }
        }
        Self::from_flat(heap, mul)
    }

    fn from_flat(heap: FiniteHeap, mul: Vec<Element>) -> Result<Self, TrussError> {
        let t = FiniteTruss { heap, mul };
        t.check_associative()?;
        t.check_distributive(Side::Left)?;
        t.check_distributive(Side::Right)?;
        Ok(t)
    }

    fn check_associative(&self) -> Result<(), TrussError> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(TrussError::NotAssociative {
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Each translation by `w` must be a heap endomorphism; the least failing
    /// `w` is then scanned for the first `(w,x,y,z)` violation.
    fn check_distributive(&self, side: Side) -> Result<(), TrussError> {
        let h = &self.heap;
        let n = self.size();
        let act = |w: Element, x: Element| match side {
            Side::Left => self.mul(w, x),
            Side::Right => self.mul(x, w),
        };
        for w in 0..n {
            let translation = HeapMorphism::new((0..n).map(|x| act(w, x)).collect());
            if translation.is_morphism(h, h) {
                continue;
            }
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if act(w, h.br(x, y, z)) != h.br(act(w, x), act(w, y), act(w, z)) {
                            let witness = vec![w, x, y, z];
                            return Err(match side {
                                Side::Left => TrussError::NotLeftDistributive { witness },
                                Side::Right => TrussError::NotRightDistributive { witness },
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn heap(&self) -> &FiniteHeap {
        &self.heap
    }

    pub fn size(&self) -> usize {
        self.heap.size()
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        self.heap.elements()
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul[x * self.heap.size() + y]
    }

    #[inline]
    pub fn br(&self, x: Element, y: Element, z: Element) -> Element {
        self.heap.br(x, y, z)
    }

    pub fn mul_table(&self) -> Vec<Vec<Element>> {
        self.mul.chunks(self.size()).map(<[_]>::to_vec).collect()
    }

    pub fn opposite(&self) -> FiniteTruss {
        let n = self.size();
        let mul = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        FiniteTruss {
            heap: self.heap.clone(),
            mul,
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_central(&self, e: Element) -> bool {
        self.elements().all(|x| self.mul(x, e) == self.mul(e, x))
    }

    pub fn special_elements(&self) -> SpecialElements {
        let all = |pred: &dyn Fn(Element) -> bool| self.elements().filter(|&e| pred(e)).collect::<Vec<_>>();
        let left_identities = all(&|e| self.elements().all(|x| self.mul(e, x) == x));
        let right_identities = all(&|e| self.elements().all(|x| self.mul(x, e) == x));
        let left_absorbers = all(&|e| self.elements().all(|x| self.mul(e, x) == e));
        let right_absorbers = all(&|e| self.elements().all(|x| self.mul(x, e) == e));
        let both = |a: &[Element], b: &[Element]| a.iter().copied().find(|e| b.contains(e));
        SpecialElements {
            identity: both(&left_identities, &right_identities),
            absorber: both(&left_absorbers, &right_absorbers),
            central: all(&|e| self.is_central(e)),
            idempotents: all(&|e| self.mul(e, e) == e),
            left_identities,
            right_identities,
            left_absorbers,
            right_absorbers,
        }
    }

    /// Table of `λᵉ(x,y) = [e, xe, xy]` (left) or `ρᵉ(x,y) = [e, ey, xy]` (right).
    pub fn canonical_action(&self, e: Element, side: Side) -> Result<Vec<Vec<Element>>, TrussError> {
        self.heap.check_index(e)?;
        Ok(self
            .elements()
            .map(|x| {
                self.elements()
                    .map(|y| match side {
                        Side::Left => self.br(e, self.mul(x, e), self.mul(x, y)),
                        Side::Right => self.br(e, self.mul(e, y), self.mul(x, y)),
                    })
                    .collect()
            })
            .collect())
    }

    /// Single-witness test at `e = min P`: `[xp, xe, e] ∈ P` (left) or
    /// `[px, ex, e] ∈ P` (right).
    pub fn paragon_at(&self, sub: &SubHeap, e: Element, side: Side) -> bool {
        let mask = sub.mask();
        self.elements().all(|x| {
            sub.members().iter().all(|&p| {
                mask[match side {
                    Side::Left => self.br(self.mul(x, p), self.mul(x, e), e),
                    Side::Right => self.br(self.mul(p, x), self.mul(e, x), e),
                }]
            })
        })
    }

    /// Lexicographically first `(x, p, p')` with `[xp, xp', p'] ∉ P` (left) or
    /// `[px, p'x, p'] ∉ P` (right).
    pub fn paragon_violation(&self, sub: &SubHeap, side: Side) -> Option<Vec<Element>> {
        let mask = sub.mask();
        for x in self.elements() {
            for &p in sub.members() {
                for &q in sub.members() {
                    let v = match side {
                        Side::Left => self.br(self.mul(x, p), self.mul(x, q), q),
                        Side::Right => self.br(self.mul(p, x), self.mul(q, x), q),
                    };
                    if !mask[v] {
                        return Some(vec![x, p, q]);
                    }
                }
            }
        }
        None
    }

    pub fn check_paragon(&self, sub: &SubHeap, side: Side) -> Result<(), TrussError> {
        if self.paragon_at(sub, sub.least(), side) {
            return Ok(());
        }
        let witness = self
            .paragon_violation(sub, side)
            .expect("single-witness failure implies a universal violation");
        Err(TrussError::NotParagon { side, witness })
    }

    pub fn is_paragon(&self, sub: &SubHeap) -> bool {
        self.paragon_at(sub, sub.least(), Side::Left) && self.paragon_at(sub, sub.least(), Side::Right)
    }

    fn ideal_violation(&self, sub: &SubHeap, side: Side) -> Option<Vec<Element>> {
        let mask = sub.mask();
        for x in self.elements() {
            for &s in sub.members() {
                let v = match side {
                    Side::Left => self.mul(x, s),
                    Side::Right => self.mul(s, x),
                };
                if !mask[v] {
                    return Some(vec![x, s]);
                }
            }
        }
        None
    }

    fn sub_truss_violation(&self, sub: &SubHeap) -> Option<Vec<Element>> {
        let mask = sub.mask();
        for &s in sub.members() {
            for &t in sub.members() {
                if !mask[self.mul(s, t)] {
                    return Some(vec![s, t]);
                }
            }
        }
        None
    }

    pub fn classify_subheap(&self, sub: &SubHeap) -> Result<SubStructureReport, TrussError> {
        // Revalidates membership and closure against this carrier.
        let sub = SubHeap::new(&self.heap, sub.members().iter().copied())?;
        let flag = |v: Option<Vec<Element>>| Flag {
            holds: v.is_none(),
            witness: v,
        };
        let left = self.paragon_violation(&sub, Side::Left);
        let right = self.paragon_violation(&sub, Side::Right);
        let single_witness_agrees = self.paragon_at(&sub, sub.least(), Side::Left) == left.is_none()
            && self.paragon_at(&sub, sub.least(), Side::Right) == right.is_none();
        let left_ideal = self.ideal_violation(&sub, Side::Left);
        let right_ideal = self.ideal_violation(&sub, Side::Right);
        let normal = self.heap.is_normal(&sub);
        Ok(SubStructureReport {
            flags: SubStructureFlags {
                sub_heap: flag(None),
                normal: Flag {
                    holds: normal,
                    witness: None,
                },
                paragon: flag(left.clone().or_else(|| right.clone())),
                left_paragon: flag(left),
                right_paragon: flag(right),
                ideal: flag(left_ideal.clone().or_else(|| right_ideal.clone())),
                left_ideal: flag(left_ideal),
                right_ideal: flag(right_ideal),
                sub_truss: flag(self.sub_truss_violation(&sub)),
            },
            single_witness_agrees,
            subject: sub,
        })
    }

    pub fn enumerate_substructures(&self, kind: SubstructureKind, limits: &Limits) -> Result<Vec<SubHeap>, TrussError> {
        ensure_cap(self.size(), limits.enumeration_cap)?;
        Ok(self
            .heap
            .subheaps()
            .into_iter()
            .filter(|s| match kind {
                SubstructureKind::SubHeaps => true,
                SubstructureKind::Paragons => self.is_paragon(s),
                SubstructureKind::Ideals => {
                    self.ideal_violation(s, Side::Left).is_none() && self.ideal_violation(s, Side::Right).is_none()
                }
            })
            .collect())
    }

    /// Smallest paragon containing `xs`.
    pub fn generated_paragon(&self, xs: &[Element]) -> Result<SubHeap, TrussError> {
        self.close(xs, |sub, out| {
            for x in self.elements() {
                for &p in sub.members() {
                    for &q in sub.members() {
                        out.push(self.br(self.mul(x, p), self.mul(x, q), q));
                        out.push(self.br(self.mul(p, x), self.mul(q, x), q));
                    }
                }
            }
        })
    }

    /// Smallest ideal containing `e`.
    pub fn principal_ideal(&self, e: Element) -> Result<SubHeap, TrussError> {
        self.close(&[e], |sub, out| {
            for x in self.elements() {
                for &s in sub.members() {
                    out.push(self.mul(x, s));
                    out.push(self.mul(s, x));
                }
            }
        })
    }

    /// Alternates sub-heap closure with `step` until nothing new appears.
    fn close(&self, xs: &[Element], step: impl Fn(&SubHeap, &mut Vec<Element>)) -> Result<SubHeap, TrussError> {
        let mut current = self.heap.subheap_generated(xs)?;
        loop {
            let mut more = Vec::new();
            step(&current, &mut more);
            let mask = current.mask();
            more.retain(|&v| !mask[v]);
            if more.is_empty() {
                return Ok(current);
            }
            let mut gens = current.members().to_vec();
            gens.extend(more);
            current = self.heap.subheap_generated(&gens)?;
        }
    }

    /// `T/P` with its projection; the product is computed on least representatives.
    pub fn quotient_truss(&self, sub: &SubHeap) -> Result<(FiniteTruss, HeapMorphism), TrussError> {
        let sub = SubHeap::new(&self.heap, sub.members().iter().copied())?;
        self.check_paragon(&sub, Side::Left)?;
        self.check_paragon(&sub, Side::Right)?;
        let (qheap, pi) = self.heap.quotient(&sub)?;
        let m = qheap.size();
        let mut reps = vec![usize::MAX; m];
        for x in self.elements() {
            let c = pi.apply(x);
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        let mul = (0..m * m)
            .map(|i| pi.apply(self.mul(reps[i / m], reps[i % m])))
            .collect();
        Ok((FiniteTruss { heap: qheap, mul }, pi))
    }

    /// The universal ring-type quotient `T/⟨e⟩`.
    pub fn ringify(&self, e: Element) -> Result<(SubHeap, FiniteTruss, HeapMorphism), TrussError> {
        self.heap.check_index(e)?;
        let ideal = self.principal_ideal(e)?;
        let (q, pi) = self.quotient_truss(&ideal)?;
        Ok((ideal, q, pi))
    }

    pub fn ring_at(&self, e: Element) -> Result<RingTable, TrussError> {
        self.heap.check_index(e)?;
        if !self.is_central(e) {
            return Err(TrussError::NotCentral(e));
        }
        let n = self.size();
        let add = (0..n * n).map(|i| self.br(i / n, e, i % n)).collect();
        let mul = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                self.br(self.mul(x, y), self.mul(self.br(x, e, y), e), e)
            })
            .collect();
        Ok(RingTable { size: n, zero: e, add, mul })
    }

    pub fn brace_view(&self) -> Option<BraceView> {
        let one = self.special_elements().identity?;
        let n = self.size();
        let plus: Vec<Element> = (0..n * n).map(|i| self.br(i / n, one, i % n)).collect();
        let minus: Vec<Element> = (0..n * n).map(|i| self.br(i / n, i % n, one)).collect();
        let p = |x: Element, y: Element| plus[x * n + y];
        let m = |x: Element, y: Element| minus[x * n + y];
        let mut left = true;
        let mut right = true;
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    left &= self.mul(x, p(y, z)) == p(m(self.mul(x, y), x), self.mul(x, z));
                    right &= self.mul(p(y, z), x) == p(m(self.mul(y, x), x), self.mul(z, x));
                }
            }
        }
        let is_group = self
            .elements()
            .all(|x| self.elements().any(|y| self.mul(x, y) == one && self.mul(y, x) == one));
        Some(BraceView {
            identity: one,
            plus,
            mul: self.mul.clone(),
            size: n,
            left_brace_law: left,
            right_brace_law: right,
            is_group,
        })
    }

    /// Truss morphism test: heap morphism that also preserves the product.
    pub fn is_morphism_to(&self, cod: &FiniteTruss, f: &HeapMorphism) -> bool {
        f.is_morphism(&self.heap, &cod.heap)
            && self
                .elements()
                .all(|x| self.elements().all(|y| f.apply(self.mul(x, y)) == cod.mul(f.apply(x), f.apply(y))))
    }

    /// All truss isomorphisms `self → other`, sorted by image.
    pub fn isomorphisms(&self, other: &FiniteTruss, limits: &Limits) -> Result<Vec<HeapMorphism>, TrussError> {
        ensure_cap(self.size(), limits.enumeration_cap)?;
        ensure_cap(other.size(), limits.enumeration_cap)?;
        let mut out = Vec::new();
        for alpha in group_isos(&self.heap, &other.heap) {
            for x in other.elements() {
                let f = HeapMorphism::new(self.elements().map(|h| other.heap.add(x, alpha.apply(h))).collect());
                let preserves = self
                    .elements()
                    .all(|a| self.elements().all(|b| f.apply(self.mul(a, b)) == other.mul(f.apply(a), f.apply(b))));
                if preserves {
                    out.push(f);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

pub fn truss_isomorphisms(t1: &FiniteTruss, t2: &FiniteTruss, limits: &Limits) -> Result<Vec<HeapMorphism>, TrussError> {
    t1.isomorphisms(t2, limits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstructureKind {
    SubHeaps,
    Paragons,
    Ideals,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialElements {
    pub identity: Option<Element>,
    pub absorber: Option<Element>,
    pub central: Vec<Element>,
    pub idempotents: Vec<Element>,
    pub left_identities: Vec<Element>,
    pub right_identities: Vec<Element>,
    pub left_absorbers: Vec<Element>,
    pub right_absorbers: Vec<Element>,
}

impl SpecialElements {
    /// A right identity exists.
    pub fn right_braceable(&self) -> bool {
        !self.right_identities.is_empty()
    }

    pub fn left_braceable(&self) -> bool {
        !self.left_identities.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub holds: bool,
    pub witness: Option<Vec<Element>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubStructureFlags {
    pub sub_heap: Flag,
    pub normal: Flag,
    pub left_paragon: Flag,
    pub right_paragon: Flag,
    pub paragon: Flag,
    pub left_ideal: Flag,
    pub right_ideal: Flag,
    pub ideal: Flag,
    pub sub_truss: Flag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubStructureReport {
    pub subject: SubHeap,
    pub flags: SubStructureFlags,
    /// The single-witness paragon test at `min S` agreed with the universal one.
    pub single_witness_agrees: bool,
}

/// A ring on the carrier of a truss; `zero` is the additive neutral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingTable {
    pub size: usize,
    pub zero: Element,
    pub add: Vec<Element>,
    pub mul: Vec<Element>,
}

impl RingTable {
    #[inline]
    pub fn add(&self, x: Element, y: Element) -> Element {
        self.add[x * self.size + y]
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul[x * self.size + y]
    }

    /// First failing ring axiom, if any.
    pub fn verify(&self) -> Result<(), (&'static str, Vec<Element>)> {
        let n = self.size;
        for x in 0..n {
            if self.add(x, self.zero) != x || self.add(self.zero, x) != x {
                return Err(("additive identity", vec![x]));
            }
            if !(0..n).any(|y| self.add(x, y) == self.zero) {
                return Err(("additive inverse", vec![x]));
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return Err(("additive commutativity", vec![x, y]));
                }
                for z in 0..n {
                    let w = vec![x, y, z];
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return Err(("additive associativity", w));
                    }
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return Err(("multiplicative associativity", w));
                    }
                    if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z)) {
                        return Err(("left distributivity", w));
                    }
                    if self.mul(self.add(y, z), x) != self.add(self.mul(y, x), self.mul(z, x)) {
                        return Err(("right distributivity", w));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_ideal(&self, members: &[Element], side: Side) -> bool {
        members.iter().all(|&p| {
            (0..self.size).all(|x| {
                let v = match side {
                    Side::Left => self.mul(x, p),
                    Side::Right => self.mul(p, x),
                };
                members.contains(&v)
            })
        })
    }
}

/// The retract at the identity together with the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceView {
    pub identity: Element,
    pub size: usize,
    pub plus: Vec<Element>,
    pub mul: Vec<Element>,
    /// `x(y +₁ z) = xy −₁ x +₁ xz` for all elements.
    pub left_brace_law: bool,
    /// `(y +₁ z)x = yx −₁ x +₁ zx` for all elements.
    pub right_brace_law: bool,
    pub is_group: bool,
}

impl BraceView {
    pub fn is_two_sided_brace(&self) -> bool {
        self.is_group && self.left_brace_law && self.right_brace_law
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteHeap {
        FiniteHeap::cyclic(&[n]).unwrap()
    }

    fn z4(f: impl Fn(usize, usize) -> usize) -> FiniteTruss {
        FiniteTruss::from_fn(z(4), f).unwrap()
    }

    fn sub(t: &FiniteTruss, xs: &[usize]) -> SubHeap {
        SubHeap::new(t.heap(), xs.iter().copied()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(FiniteTruss::from_fn(z(4), |x, y| x * y % 4).is_ok());
        assert!(FiniteTruss::from_fn(z(4), |x, y| (x + y) % 4).is_ok());
        assert!(matches!(
            FiniteTruss::from_fn(z(4), |x, y| (x + 2 * y) % 4),
            Err(TrussError::NotAssociative { .. })
        ));
        assert_eq!(
            FiniteTruss::build(z(2), &[vec![0, 1]]),
            Err(TrussError::MalformedTable(2))
        );
    }

    #[test]
    fn one_sided_distributivity_is_reported() {
        // xy = f(y) with f idempotent but not affine.
        let f = [0, 0, 2];
        assert!(matches!(
            FiniteTruss::from_fn(z(3), |_, y| f[y]),
            Err(TrussError::NotLeftDistributive { .. })
        ));
        assert!(matches!(
            FiniteTruss::from_fn(z(3), |x, _| f[x]),
            Err(TrussError::NotRightDistributive { .. })
        ));
    }

    #[test]
    fn opposite_of_projection() {
        let left = z4(|x, _| x);
        let right = z4(|_, y| y);
        assert_eq!(left.opposite(), right);
        let comm = z4(|x, y| x * y % 4);
        assert_eq!(comm.opposite(), comm);
    }

    #[test]
    fn special_elements_examples() {
        let s = z4(|x, y| x * y % 4).special_elements();
        assert_eq!((s.identity, s.absorber), (Some(1), Some(0)));
        let s = z4(|x, y| (x + y) % 4).special_elements();
        assert_eq!((s.identity, s.absorber), (Some(0), None));
        let s = z4(|_, _| 2).special_elements();
        assert_eq!((s.identity, s.absorber), (None, Some(2)));
    }

    #[test]
    fn canonical_actions() {
        let t = FiniteTruss::from_fn(z(5), |x, y| x * y % 5).unwrap();
        let a = t.canonical_action(0, Side::Left).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(a[x][y], x * y % 5);
            }
        }
        let plus = z4(|x, y| (x + y) % 4);
        let a = plus.canonical_action(0, Side::Left).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(a[x][y], y);
            }
        }
        for t in [plus, z4(|x, y| x * y % 4), z4(|x, _| x)] {
            for e in 0..4 {
                for side in [Side::Left, Side::Right] {
                    let a = t.canonical_action(e, side).unwrap();
                    for x in 0..4 {
                        let fixed = match side {
                            Side::Left => a[x][e],
                            Side::Right => a[e][x],
                        };
                        assert_eq!(fixed, e);
                    }
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let t = z4(|x, y| x * y % 4);
        for e in 0..4 {
            assert!(t.classify_subheap(&sub(&t, &[e])).unwrap().flags.paragon.holds);
        }
        let r = t.classify_subheap(&sub(&t, &[1, 3])).unwrap();
        assert!(r.flags.paragon.holds);
        assert!(!r.flags.ideal.holds);
        assert!(r.single_witness_agrees);
        let r = t.classify_subheap(&sub(&t, &[0, 2])).unwrap();
        assert!(r.flags.ideal.holds);
    }

    #[test]
    fn enumeration() {
        let t = z4(|x, y| x * y % 4);
        let limits = Limits::default();
        assert_eq!(t.enumerate_substructures(SubstructureKind::SubHeaps, &limits).unwrap().len(), 7);
        let paragons = t.enumerate_substructures(SubstructureKind::Paragons, &limits).unwrap();
        for e in 0..4 {
            assert!(paragons.contains(&sub(&t, &[e])));
        }
        assert!(paragons.contains(&sub(&t, &[1, 3])));
        let zero = z4(|_, _| 0);
        let ideals = zero.enumerate_substructures(SubstructureKind::Ideals, &limits).unwrap();
        let with_zero: Vec<_> = zero
            .enumerate_substructures(SubstructureKind::SubHeaps, &limits)
            .unwrap()
            .into_iter()
            .filter(|s| s.contains(0))
            .collect();
        assert_eq!(ideals, with_zero);
        let big = FiniteTruss::from_fn(z(13), |x, y| x * y % 13).unwrap();
        assert!(matches!(
            big.enumerate_substructures(SubstructureKind::SubHeaps, &limits),
            Err(TrussError::CarrierTooLarge { size: 13, cap: 12 })
        ));
    }

    #[test]
    fn quotients() {
        let t = z4(|x, y| x * y % 4);
        let (q, pi) = t.quotient_truss(&sub(&t, &[1, 3])).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(pi.image, vec![0, 1, 0, 1]);
        assert!(t.is_morphism_to(&q, &pi));
        assert_eq!(t.heap().kernel(&pi, 1).unwrap(), sub(&t, &[1, 3]));
        let (q, _) = t.quotient_truss(&sub(&t, &[2])).unwrap();
        assert_eq!(q, t);
        assert!(matches!(
            t.quotient_truss(&SubHeap::from_closed(4, vec![1, 2])),
            Err(TrussError::Heap(HeapError::NotSubHeap { .. }))
        ));
    }

    #[test]
    fn non_paragon_witness_breaks_congruence() {
        // On ℤ₂×ℤ₂, (a,b)·y = (a,a).
        let v4 = FiniteHeap::cyclic(&[2, 2]).unwrap();
        let t = FiniteTruss::from_fn(v4, |x, _| {
            let a = x & 1;
            a | (a << 1)
        })
        .unwrap();
        let s = sub(&t, &[0, 1]);
        let err = t.quotient_truss(&s).unwrap_err();
        let TrussError::NotParagon { side, witness } = err else {
            panic!("expected NotParagon")
        };
        let (x, p, q) = (witness[0], witness[1], witness[2]);
        let (_, pi) = t.heap().quotient(&s).unwrap();
        let (a, b) = match side {
            Side::Left => (t.mul(x, p), t.mul(x, q)),
            Side::Right => (t.mul(p, x), t.mul(q, x)),
        };
        assert_eq!(pi.apply(p), pi.apply(q));
        assert_ne!(pi.apply(a), pi.apply(b));
    }

    #[test]
    fn principal_ideals() {
        assert_eq!(z4(|x, y| x * y % 4).principal_ideal(2).unwrap().members(), &[0, 2]);
        assert_eq!(z4(|x, y| (x + y) % 4).principal_ideal(0).unwrap().len(), 4);
        assert_eq!(z4(|_, _| 3).principal_ideal(3).unwrap().members(), &[3]);
    }

    #[test]
    fn ringify_examples() {
        let t = z4(|x, y| x * y % 4);
        let (i, q, _) = t.ringify(0).unwrap();
        assert_eq!(i.members(), &[0]);
        assert_eq!(q, t);
        let (_, q, _) = z4(|x, y| (x + y) % 4).ringify(0).unwrap();
        assert_eq!(q.size(), 1);
        let (i, q, pi) = t.ringify(2).unwrap();
        assert_eq!(i.members(), &[0, 2]);
        assert_eq!(q.size(), 2);
        assert_eq!(q.special_elements().absorber, Some(pi.apply(2)));
    }

    #[test]
    fn rings() {
        let t = z4(|x, y| (x + y + x * y) % 4);
        let r = t.ring_at(0).unwrap();
        r.verify().unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(r.mul(x, y), x * y % 4);
            }
        }
        let r = z4(|x, y| (x + y) % 4).ring_at(0).unwrap();
        assert!(r.mul.iter().all(|&v| v == 0));
        let r = z4(|x, y| x * y % 4).ring_at(0).unwrap();
        r.verify().unwrap();
        assert_eq!(r.mul, z4(|x, y| x * y % 4).mul);
        let left = z4(|x, _| x);
        assert_eq!(left.ring_at(1), Err(TrussError::NotCentral(1)));
    }

    #[test]
    fn braces() {
        let b = z4(|x, y| (x + y) % 4).brace_view().unwrap();
        assert!(b.is_two_sided_brace());
        assert_eq!(b.plus, b.mul);
        let b = z4(|x, y| x * y % 4).brace_view().unwrap();
        assert!(b.left_brace_law && b.right_brace_law);
        assert!(!b.is_group);
        assert!(z4(|_, _| 1).brace_view().is_none());
    }

    #[test]
    fn isomorphisms() {
        let limits = Limits::default();
        let t = z4(|x, y| x * y % 4);
        let isos = t.isomorphisms(&t, &limits).unwrap();
        assert!(isos.contains(&HeapMorphism::identity(4)));
        assert!(t.isomorphisms(&z4(|x, y| (x + y) % 4), &limits).unwrap().is_empty());
        let l = FiniteTruss::from_fn(z(3), |x, _| x).unwrap();
        let r = FiniteTruss::from_fn(z(3), |_, y| y).unwrap();
        assert!(l.isomorphisms(&r, &limits).unwrap().is_empty());
        // mn and mn+m+n on ℤ₄ are isomorphic via x ↦ x − 1.
        let shifted = z4(|x, y| (x * y + x + y) % 4);
        let isos = t.isomorphisms(&shifted, &limits).unwrap();
        assert_eq!(isos, vec![HeapMorphism::new(vec![3, 0, 1, 2])]);
    }

    #[test]
    fn generated_paragons() {
        let t = z4(|x, y| x * y % 4);
        for e in 0..4 {
            assert_eq!(t.generated_paragon(&[e]).unwrap().members(), &[e]);
        }
        let p = t.generated_paragon(&[1, 3]).unwrap();
        assert_eq!(p.members(), &[1, 3]);
        assert!(t.is_paragon(&t.generated_paragon(&[0, 1]).unwrap()));
    }
}
