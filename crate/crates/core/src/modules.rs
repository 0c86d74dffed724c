//! Modules over finite trusses.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::config::Limits;
use crate::heap::{Element, FiniteHeap, HeapError, HeapMorphism, SubHeap};
use crate::hom::group_homs;
use crate::truss::{ensure_cap, FiniteTruss, Side, TrussError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Heap(#[from] HeapError),
    #[error(transparent)]
    Truss(#[from] TrussError),
    #[error("action table must be {rows}×{cols}")]
    MalformedTable { rows: usize, cols: usize },
    #[error("(xy)▷m ≠ x▷(y▷m) at (x,y,m) = {witness:?}")]
    NotAssociativeAction { witness: Vec<Element> },
    #[error("x▷[m,m',m''] ≠ [x▷m, x▷m', x▷m''] at {witness:?}")]
    NotHeapDistributive { witness: Vec<Element> },
    #[error("[x,y,z]▷m ≠ [x▷m, y▷m, z▷m] at {witness:?}")]
    NotTrussDistributive { witness: Vec<Element> },
    #[error("not an induced submodule: (x,n) = {witness:?} at basepoint {basepoint}")]
    NotInducedSubmodule { basepoint: Element, witness: Vec<Element> },
    #[error("bimodule law fails at (x,m,y) = {witness:?}")]
    NotBimodule { witness: Vec<Element> },
    #[error("modules are over different trusses")]
    DifferentTruss,
    #[error("map is not idempotent at {0}")]
    NotIdempotent(Element),
    #[error("map is not a heap endomorphism")]
    NotEndomorphism,
    #[error("ε∘ι = ι∘ε = ε fails at {0}")]
    CompositionLawViolated(Element),
    #[error("hom-set is not closed under the pointwise bracket")]
    NotClosed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrussModule {
    truss: FiniteTruss,
    heap: FiniteHeap,
    action: Vec<Element>,
}

fn first_violation(n: usize, bad: impl Fn(usize, usize, usize) -> bool) -> Option<[usize; 3]> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bad(a, b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

impl TrussModule {
    pub fn build(truss: &FiniteTruss, heap: &FiniteHeap, table: &[Vec<Element>]) -> Result<Self, ModuleError> {
        let (t, m) = (truss.size(), heap.size());
        if table.len() != t || table.iter().any(|r| r.len() != m) {
            return Err(ModuleError::MalformedTable { rows: t, cols: m });
        }
        let mut action = Vec::with_capacity(t * m);
        for row in table {
            for &v in row {
                heap.check_index(v)?;
                action.push(v);
            }
        }
        Self::from_flat(truss.clone(), heap.clone(), action)
    }

    pub fn from_fn(truss: &FiniteTruss, heap: &FiniteHeap, f: impl Fn(Element, Element) -> Element) -> Result<Self, ModuleError> {
        let mut action = Vec::with_capacity(truss.size() * heap.size());
        for x in truss.elements() {
            for m in heap.elements() {
                let v = f(x, m);
                heap.check_index(v)?;
                action.push(v);
            }
        }
        Self::from_flat(truss.clone(), heap.clone(), action)
    }

    fn from_flat(truss: FiniteTruss, heap: FiniteHeap, action: Vec<Element>) -> Result<Self, ModuleError> {
        let module = TrussModule { truss, heap, action };
        module.validate()?;
        Ok(module)
    }

    fn validate(&self) -> Result<(), ModuleError> {
        let (t, h) = (&self.truss, &self.heap);
        for x in t.elements() {
            for y in t.elements() {
                let xy = t.mul(x, y);
                for m in h.elements() {
                    if self.act(xy, m) != self.act(x, self.act(y, m)) {
                        return Err(ModuleError::NotAssociativeAction {
                            witness: vec![x, y, m],
                        });
                    }
                }
            }
        }
        for x in t.elements() {
            let row = HeapMorphism::new(h.elements().map(|m| self.act(x, m)).collect());
            if row.is_morphism(h, h) {
                continue;
            }
            let w = first_violation(h.size(), |a, b, c| self.act(x, h.br(a, b, c)) != h.br(row.apply(a), row.apply(b), row.apply(c)))
                .expect("non-morphism has a violating triple");
            return Err(ModuleError::NotHeapDistributive {
                witness: vec![x, w[0], w[1], w[2]],
            });
        }
        for m in h.elements() {
            let col = HeapMorphism::new(t.elements().map(|x| self.act(x, m)).collect());
            if col.is_morphism(t.heap(), h) {
                continue;
            }
            let w = first_violation(t.size(), |a, b, c| self.act(t.br(a, b, c), m) != h.br(col.apply(a), col.apply(b), col.apply(c)))
                .expect("non-morphism has a violating triple");
            return Err(ModuleError::NotTrussDistributive {
                witness: vec![w[0], w[1], w[2], m],
            });
        }
        Ok(())
    }

    pub fn truss(&self) -> &FiniteTruss {
        &self.truss
    }

    pub fn heap(&self) -> &FiniteHeap {
        &self.heap
    }

    #[inline]
    pub fn act(&self, x: Element, m: Element) -> Element {
        self.action[x * self.heap.size() + m]
    }

    pub fn action_table(&self) -> Vec<Vec<Element>> {
        self.action.chunks(self.heap.size()).map(<[_]>::to_vec).collect()
    }

    /// The truss is unital and its identity acts trivially.
    pub fn is_normalised(&self) -> bool {
        self.truss
            .special_elements()
            .identity
            .is_some_and(|one| self.heap.elements().all(|m| self.act(one, m) == m))
    }

    pub fn is_absorber(&self, e: Element) -> bool {
        self.truss.elements().all(|x| self.act(x, e) == e)
    }

    pub fn absorbers(&self) -> Vec<Element> {
        self.heap.elements().filter(|&e| self.is_absorber(e)).collect()
    }

    pub fn regular(truss: &FiniteTruss) -> TrussModule {
        TrussModule {
            truss: truss.clone(),
            heap: truss.heap().clone(),
            action: truss.mul_table().concat(),
        }
    }

    /// `x ▷ h = e` on an arbitrary heap.
    pub fn trivial(truss: &FiniteTruss, heap: &FiniteHeap, e: Element) -> Result<TrussModule, ModuleError> {
        heap.check_index(e)?;
        Ok(TrussModule {
            truss: truss.clone(),
            heap: heap.clone(),
            action: vec![e; truss.size() * heap.size()],
        })
    }

    /// `x ▷ₑ p = [e, xe, xp]` on a left paragon `P ∋ e`; index `i` is `members[i]`.
    pub fn paragon(truss: &FiniteTruss, sub: &SubHeap, e: Element) -> Result<TrussModule, ModuleError> {
        let sub = SubHeap::new(truss.heap(), sub.members().iter().copied())?;
        truss.check_paragon(&sub, Side::Left)?;
        if !sub.contains(e) {
            return Err(HeapError::IndexOutOfRange {
                index: e,
                size: truss.size(),
            }
            .into());
        }
        let heap = sub.as_heap(truss.heap());
        let members = sub.members();
        let index = |v: Element| members.binary_search(&v).expect("paragon is closed");
        TrussModule::from_fn(truss, &heap, |x, i| {
            index(truss.br(e, truss.mul(x, e), truss.mul(x, members[i])))
        })
    }

    pub fn is_morphism_to(&self, cod: &TrussModule, f: &HeapMorphism) -> bool {
        self.truss == cod.truss
            && f.is_morphism(&self.heap, &cod.heap)
            && self
                .truss
                .elements()
                .all(|x| self.heap.elements().all(|m| f.apply(self.act(x, m)) == cod.act(x, f.apply(m))))
    }

    /// `x ▷ᵉ m = [x▷m, x▷e, e]`.
    pub fn induced_action(&self, e: Element) -> Result<TrussModule, ModuleError> {
        self.heap.check_index(e)?;
        let h = &self.heap;
        let action = self
            .truss
            .elements()
            .flat_map(|x| h.elements().map(move |m| h.br(self.act(x, m), self.act(x, e), e)))
            .collect();
        Self::from_flat(self.truss.clone(), h.clone(), action)
    }

    /// First `(x, n)` with `[x▷n, x▷e, e] ∉ N`.
    pub fn induced_violation(&self, sub: &SubHeap, e: Element) -> Option<Vec<Element>> {
        let mask = sub.mask();
        for x in self.truss.elements() {
            for &n in sub.members() {
                if !mask[self.heap.br(self.act(x, n), self.act(x, e), e)] {
                    return Some(vec![x, n]);
                }
            }
        }
        None
    }

    pub fn classify_submodule(&self, sub: &SubHeap) -> Result<SubmoduleReport, ModuleError> {
        let sub = SubHeap::new(&self.heap, sub.members().iter().copied())?;
        let mask = sub.mask();
        let mut plain = None;
        'outer: for x in self.truss.elements() {
            for &n in sub.members() {
                if !mask[self.act(x, n)] {
                    plain = Some(vec![x, n]);
                    break 'outer;
                }
            }
        }
        let induced = self.induced_violation(&sub, sub.least());
        Ok(SubmoduleReport {
            submodule: plain.is_none(),
            submodule_witness: plain,
            induced_submodule: induced.is_none(),
            induced_witness: induced,
            contains_absorber: sub.members().iter().any(|&e| self.is_absorber(e)),
            subject: sub,
        })
    }

    /// `M/N` with `x ▷ [m] = [x▷m]`, for an induced submodule `N`.
    pub fn quotient(&self, sub: &SubHeap) -> Result<(TrussModule, HeapMorphism), ModuleError> {
        let sub = SubHeap::new(&self.heap, sub.members().iter().copied())?;
        let e = sub.least();
        if let Some(witness) = self.induced_violation(&sub, e) {
            return Err(ModuleError::NotInducedSubmodule { basepoint: e, witness });
        }
        let (qheap, pi) = self.heap.quotient(&sub)?;
        let k = qheap.size();
        let mut reps = vec![usize::MAX; k];
        for m in self.heap.elements() {
            let c = pi.apply(m);
            if reps[c] == usize::MAX {
                reps[c] = m;
            }
        }
        let pi_ref = &pi;
        let action = self
            .truss
            .elements()
            .flat_map(|x| reps.iter().map(move |&r| pi_ref.apply(self.act(x, r))))
            .collect();
        Ok((
            TrussModule {
                truss: self.truss.clone(),
                heap: qheap,
                action,
            },
            pi,
        ))
    }

    /// Smallest submodule containing `e`.
    pub fn cyclic_submodule(&self, e: Element) -> Result<SubHeap, ModuleError> {
        let mut current = self.heap.subheap_generated(&[e])?;
        loop {
            let mask = current.mask();
            let more: Vec<Element> = self
                .truss
                .elements()
                .flat_map(|x| current.members().iter().map(move |&n| self.act(x, n)))
                .filter(|&v| !mask[v])
                .collect();
            if more.is_empty() {
                return Ok(current);
            }
            let mut gens = current.members().to_vec();
            gens.extend(more);
            current = self.heap.subheap_generated(&gens)?;
        }
    }

    /// `(Tₑ, M/Tₑ, π)`; the class of `e` is an absorber of the quotient.
    pub fn absorber_quotient(&self, e: Element) -> Result<(SubHeap, TrussModule, HeapMorphism), ModuleError> {
        let te = self.cyclic_submodule(e)?;
        let (q, pi) = self.quotient(&te)?;
        Ok((te, q, pi))
    }

    /// Componentwise action on `M × N`; `(a, b)` has index `a + |M|·b`.
    pub fn product(&self, other: &TrussModule) -> Result<TrussModule, ModuleError> {
        if self.truss != other.truss {
            return Err(ModuleError::DifferentTruss);
        }
        let n = self.heap.size();
        let heap = self.heap.product(&other.heap);
        Self::from_fn(&self.truss, &heap, |x, v| self.act(x, v % n) + n * other.act(x, v / n))
    }

    /// Functions `{0..x_size} → M` with the pointwise action.
    pub fn function_module(&self, x_size: usize, limits: &Limits) -> Result<TrussModule, ModuleError> {
        if x_size == 0 {
            return Err(HeapError::EmptyCarrier.into());
        }
        let size = (self.heap.size() as u128).checked_pow(x_size as u32).unwrap_or(u128::MAX);
        ensure_cap(size.min(usize::MAX as u128) as usize, limits.max_carrier)?;
        let mut acc = self.clone();
        for _ in 1..x_size {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleReport {
    pub subject: SubHeap,
    pub submodule: bool,
    pub submodule_witness: Option<Vec<Element>>,
    pub induced_submodule: bool,
    pub induced_witness: Option<Vec<Element>>,
    pub contains_absorber: bool,
}

/// `φ⁻¹(e)` for a module morphism out of `dom`.
pub fn module_kernel(dom: &TrussModule, phi: &HeapMorphism, e: Element) -> Result<SubHeap, ModuleError> {
    Ok(dom.heap().kernel(phi, e)?)
}

/// Module morphisms `M → N` with the pointwise heap structure.
#[derive(Clone, Debug)]
pub struct HomSet {
    pub maps: Vec<HeapMorphism>,
    pub heap: FiniteHeap,
    index: HashMap<Vec<Element>, usize>,
}

impl HomSet {
    pub fn index_of(&self, f: &HeapMorphism) -> Option<usize> {
        self.index.get(&f.image).copied()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

/// All module morphisms `M → N`, sorted by image.
pub fn hom_set(m: &TrussModule, n: &TrussModule, limits: &Limits) -> Result<HomSet, ModuleError> {
    if m.truss != n.truss {
        return Err(ModuleError::DifferentTruss);
    }
    ensure_cap(m.heap.size(), limits.enumeration_cap)?;
    ensure_cap(n.heap.size(), limits.enumeration_cap)?;
    let (mh, nh) = (&m.heap, &n.heap);
    let mut maps: Vec<HeapMorphism> = group_homs(mh, nh, None)
        .iter()
        .flat_map(|alpha| nh.elements().map(move |x| HeapMorphism::new(mh.elements().map(|h| nh.add(x, alpha.apply(h))).collect())))
        .filter(|f| {
            m.truss
                .elements()
                .all(|x| mh.elements().all(|v| f.apply(m.act(x, v)) == n.act(x, f.apply(v))))
        })
        .collect();
    maps.sort();
    let index: HashMap<Vec<Element>, usize> = maps.iter().enumerate().map(|(i, f)| (f.image.clone(), i)).collect();
    let bracket = |a: usize, b: usize, c: usize| {
        let img: Vec<Element> = mh
            .elements()
            .map(|h| nh.br(maps[a].apply(h), maps[b].apply(h), maps[c].apply(h)))
            .collect();
        index.get(&img).copied()
    };
    let k = maps.len();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if bracket(a, b, c).is_none() {
                    return Err(ModuleError::NotClosed);
                }
            }
        }
    }
    let heap = FiniteHeap::from_bracket_unchecked(k, |a, b, c| bracket(a, b, c).expect("closed"));
    Ok(HomSet { maps, heap, index })
}

/// A left `T`-module and a right `S`-module on one heap with
/// `x ▷ (m ◁ y) = (x ▷ m) ◁ y`. The right action is stored as a left
/// action of `Sᵒᵖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodulePair {
    pub left: TrussModule,
    pub right_truss: FiniteTruss,
    pub right: TrussModule,
}

impl BimodulePair {
    /// `right_table[m][y] = m ◁ y`.
    pub fn new(left: TrussModule, right_truss: &FiniteTruss, right_table: &[Vec<Element>]) -> Result<Self, ModuleError> {
        let heap = left.heap().clone();
        let (mc, sc) = (heap.size(), right_truss.size());
        if right_table.len() != mc || right_table.iter().any(|r| r.len() != sc) {
            return Err(ModuleError::MalformedTable { rows: mc, cols: sc });
        }
        let transposed: Vec<Vec<Element>> = (0..sc).map(|y| (0..mc).map(|m| right_table[m][y]).collect()).collect();
        let right = TrussModule::build(&right_truss.opposite(), &heap, &transposed)?;
        for x in left.truss().elements() {
            for m in heap.elements() {
                for y in right_truss.elements() {
                    if left.act(x, right.act(y, m)) != right.act(y, left.act(x, m)) {
                        return Err(ModuleError::NotBimodule {
                            witness: vec![x, m, y],
                        });
                    }
                }
            }
        }
        Ok(BimodulePair {
            left,
            right_truss: right_truss.clone(),
            right,
        })
    }

    pub fn regular(truss: &FiniteTruss) -> Self {
        let left = TrussModule::regular(truss);
        let right = TrussModule::regular(&truss.opposite());
        BimodulePair {
            left,
            right_truss: truss.clone(),
            right,
        }
    }

    /// `m ◁ y`.
    pub fn act_right(&self, m: Element, y: Element) -> Element {
        self.right.act(y, m)
    }
}

/// `Hom_T(M, N)` as a left `S`-module: `(x ▷ φ)(m) = φ(m ◁ x)`.
pub fn hom_module_left(m: &BimodulePair, n: &TrussModule, limits: &Limits) -> Result<(HomSet, TrussModule), ModuleError> {
    let homs = hom_set(&m.left, n, limits)?;
    let s = &m.right_truss;
    let lookup = |f: HeapMorphism| homs.index_of(&f).ok_or(ModuleError::NotClosed);
    let mut table = Vec::with_capacity(s.size());
    for x in s.elements() {
        let row = homs
            .maps
            .iter()
            .map(|phi| lookup(HeapMorphism::new(m.left.heap().elements().map(|v| phi.apply(m.act_right(v, x))).collect())))
            .collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    let module = TrussModule::build(s, &homs.heap, &table)?;
    Ok((homs, module))
}

/// `Hom_T(N, M)` as a right `S`-module, `(φ ◁ x)(n) = φ(n) ◁ x`, returned as
/// a left module over `Sᵒᵖ`.
pub fn hom_module_right(n: &TrussModule, m: &BimodulePair, limits: &Limits) -> Result<(HomSet, TrussModule), ModuleError> {
    let homs = hom_set(n, &m.left, limits)?;
    let sop = m.right_truss.opposite();
    let lookup = |f: HeapMorphism| homs.index_of(&f).ok_or(ModuleError::NotClosed);
    let mut table = Vec::with_capacity(sop.size());
    for x in sop.elements() {
        let row = homs
            .maps
            .iter()
            .map(|phi| lookup(HeapMorphism::new(n.heap().elements().map(|v| m.act_right(phi.apply(v), x)).collect())))
            .collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    let module = TrussModule::build(&sop, &homs.heap, &table)?;
    Ok((homs, module))
}

/// A heap with a pair of idempotent endomorphisms `ε, ι` satisfying
/// `ε∘ι = ι∘ε = ε`, acted on by the integers with their usual product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZActionModule {
    heap: FiniteHeap,
    eps: HeapMorphism,
    iota: HeapMorphism,
}

impl ZActionModule {
    pub fn new(heap: &FiniteHeap, eps: &HeapMorphism, iota: &HeapMorphism) -> Result<Self, ModuleError> {
        for f in [eps, iota] {
            if !f.is_morphism(heap, heap) {
                return Err(ModuleError::NotEndomorphism);
            }
            if let Some(x) = heap.elements().find(|&x| f.apply(f.apply(x)) != f.apply(x)) {
                return Err(ModuleError::NotIdempotent(x));
            }
        }
        if let Some(x) = heap
            .elements()
            .find(|&x| eps.apply(iota.apply(x)) != eps.apply(x) || iota.apply(eps.apply(x)) != eps.apply(x))
        {
            return Err(ModuleError::CompositionLawViolated(x));
        }
        Ok(ZActionModule {
            heap: heap.clone(),
            eps: eps.clone(),
            iota: iota.clone(),
        })
    }

    pub fn heap(&self) -> &FiniteHeap {
        &self.heap
    }

    /// `n ▷ x = n·ι(x) − (n−1)·ε(x)` in the retract at 0.
    pub fn act(&self, n: &BigInt, x: Element) -> Element {
        let size = BigInt::from(self.heap.size());
        let r = n.mod_floor(&size).to_i64().expect("reduced modulo the carrier");
        let h = &self.heap;
        h.sub(h.scalar(r, self.iota.apply(x)), h.scalar(r - 1, self.eps.apply(x)))
    }

    /// The alternating multibracket `[[ι,ε,ι,…,ι]]` or `[[ε,ι,ε,…,ε]]`.
    pub fn act_multibracket(&self, n: i64, x: Element) -> Element {
        let (i, e) = (self.iota.apply(x), self.eps.apply(x));
        let items: Vec<Element> = if n > 0 {
            (0..2 * n - 1).map(|j| if j % 2 == 0 { i } else { e }).collect()
        } else {
            (0..2 * n.unsigned_abs() + 1).map(|j| if j % 2 == 0 { e } else { i }).collect()
        };
        self.heap.multibracket(&items).expect("odd length")
    }
}
