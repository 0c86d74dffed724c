//! Truss constructions: constant, idempotent-endomorphism, endomorphism,
//! semidirect, endomorphism-pair, mapping and matrix trusses.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::config::Limits;
use crate::heap::{Element, FiniteHeap, HeapError, HeapMorphism, SubHeap};
use crate::hom::{group_homs, is_additive};
use crate::truss::{ensure_cap, FiniteTruss, TrussError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Heap(#[from] HeapError),
    #[error(transparent)]
    Truss(#[from] TrussError),
    #[error("map is not idempotent at {0}")]
    NotIdempotent(Element),
    #[error("map is not a heap endomorphism at {0:?}")]
    NotEndomorphism([Element; 3]),
    #[error("map is not additive at basepoint 0")]
    NotAdditive,
    #[error("element {0} is not in the kernel")]
    NotInKernel(Element),
    #[error("matrix is not idempotent modulo {0}")]
    NotIdempotentMatrix(u64),
    #[error("bad matrix shape: expected {0}×{0}")]
    BadDimension(usize),
    #[error("endomorphism set is not closed under {0}")]
    NotClosed(&'static str),
    #[error("modulus must be at least 1")]
    ZeroModulus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    First,
    Second,
}

fn check_idempotent(alpha: &HeapMorphism) -> Result<(), ConstructionError> {
    match (0..alpha.image.len()).find(|&x| alpha.apply(alpha.apply(x)) != alpha.apply(x)) {
        Some(x) => Err(ConstructionError::NotIdempotent(x)),
        None => Ok(()),
    }
}

/// `x·y = e` for all `x, y`.
pub fn constant_truss(heap: &FiniteHeap, e: Element) -> Result<FiniteTruss, ConstructionError> {
    heap.check_index(e)?;
    Ok(FiniteTruss::from_fn(heap.clone(), |_, _| e)?)
}

/// `x·y = [x, α(x), y]` (first) or `[x, α(y), y]` (second) for an idempotent
/// heap endomorphism `α`.
pub fn alpha_truss(heap: &FiniteHeap, alpha: &HeapMorphism, variant: Variant) -> Result<FiniteTruss, ConstructionError> {
    let report = alpha.check(heap, heap)?;
    if let Some(w) = report.witness {
        return Err(ConstructionError::NotEndomorphism(w));
    }
    check_idempotent(alpha)?;
    let t = match variant {
        Variant::First => FiniteTruss::from_fn(heap.clone(), |x, y| heap.br(x, alpha.apply(x), y)),
        Variant::Second => FiniteTruss::from_fn(heap.clone(), |x, y| heap.br(x, alpha.apply(y), y)),
    };
    Ok(t?)
}

/// `x·y = x + y − α(y) − a` (first) or `x + y − α(x) − a` (second) for an
/// idempotent additive `α` with `α(a) = 0`.
pub fn endo_pair_truss(
    group: &FiniteHeap,
    alpha: &HeapMorphism,
    a: Element,
    variant: Variant,
) -> Result<FiniteTruss, ConstructionError> {
    group.check_index(a)?;
    if !is_additive(group, group, alpha) {
        return Err(ConstructionError::NotAdditive);
    }
    check_idempotent(alpha)?;
    if alpha.apply(a) != 0 {
        return Err(ConstructionError::NotInKernel(a));
    }
    let g = group;
    Ok(FiniteTruss::from_fn(g.clone(), |x, y| {
        let shifted = match variant {
            Variant::First => alpha.apply(y),
            Variant::Second => alpha.apply(x),
        };
        g.sub(g.sub(g.add(x, y), shifted), a)
    })?)
}

/// An element `(x, α)` of `H × End(H,+₀)`, standing for `h ↦ x + α(h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndoElement {
    pub x: Element,
    /// Position of `α` in the generator-image ordering of `End(H,+₀)`.
    pub alpha_index: usize,
    pub alpha: HeapMorphism,
    pub generator_images: Vec<Element>,
}

impl EndoElement {
    pub fn as_map(&self, heap: &FiniteHeap) -> HeapMorphism {
        HeapMorphism::new(heap.elements().map(|h| heap.add(self.x, self.alpha.apply(h))).collect())
    }
}

impl fmt::Display for EndoElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.generator_images.iter().map(ToString::to_string).collect();
        write!(f, "({},[{}])", self.x, imgs.join(" "))
    }
}

/// Heap on `maps` (closed under the pointwise bracket) and the lookup table
/// from image vectors to indices.
fn pointwise_heap(heap: &FiniteHeap, maps: &[HeapMorphism]) -> Result<(FiniteHeap, HashMap<Vec<Element>, usize>), ConstructionError> {
    let index: HashMap<Vec<Element>, usize> = maps.iter().enumerate().map(|(i, m)| (m.image.clone(), i)).collect();
    let bracket = |a: usize, b: usize, c: usize| -> Option<usize> {
        let img: Vec<Element> = heap
            .elements()
            .map(|h| heap.br(maps[a].apply(h), maps[b].apply(h), maps[c].apply(h)))
            .collect();
        index.get(&img).copied()
    };
    let n = maps.len();
    for a in 0..n {
        for c in 0..n {
            if bracket(a, 0, c).is_none() || bracket(a, c, 0).is_none() {
                return Err(ConstructionError::NotClosed("the pointwise bracket"));
            }
        }
    }
    Ok((FiniteHeap::from_bracket_unchecked(n, |a, b, c| bracket(a, b, c).expect("closed")), index))
}

fn composition_table(maps: &[HeapMorphism], index: &HashMap<Vec<Element>, usize>) -> Result<Vec<Vec<Element>>, ConstructionError> {
    maps.iter()
        .map(|f| {
            maps.iter()
                .map(|g| index.get(&f.compose(g).image).copied().ok_or(ConstructionError::NotClosed("composition")))
                .collect()
        })
        .collect()
}

pub fn endomorphism_labels(heap: &FiniteHeap) -> Vec<EndoElement> {
    let gens = heap.generators();
    let homs = group_homs(heap, heap, None);
    let mut out = Vec::with_capacity(heap.size() * homs.len());
    for x in heap.elements() {
        for (j, alpha) in homs.iter().enumerate() {
            out.push(EndoElement {
                x,
                alpha_index: j,
                generator_images: gens.iter().map(|&g| alpha.apply(g)).collect(),
                alpha: alpha.clone(),
            });
        }
    }
    out
}

/// `E(H)`: heap endomorphisms under the pointwise bracket and composition.
/// Element `x·|End(H,+₀)| + j` is `h ↦ x + αⱼ(h)`.
pub fn endomorphism_truss(heap: &FiniteHeap, limits: &Limits) -> Result<(FiniteTruss, Vec<EndoElement>), ConstructionError> {
    let end_count = group_homs(heap, heap, Some(limits.construction_cap() + 1)).len();
    ensure_cap(heap.size().saturating_mul(end_count), limits.construction_cap())?;
    let labels = endomorphism_labels(heap);
    let maps: Vec<HeapMorphism> = labels.iter().map(|l| l.as_map(heap)).collect();
    let (eh, index) = pointwise_heap(heap, &maps)?;
    let table = composition_table(&maps, &index)?;
    Ok((FiniteTruss::build(eh, &table)?, labels))
}

/// `End(H,+ₑ)` as a truss; each map fixes `e`.
pub fn end_at(heap: &FiniteHeap, e: Element, limits: &Limits) -> Result<(FiniteTruss, Vec<HeapMorphism>), ConstructionError> {
    heap.check_index(e)?;
    let bound = limits.construction_cap();
    ensure_cap(group_homs(heap, heap, Some(bound + 1)).len(), bound)?;
    let maps: Vec<HeapMorphism> = group_homs(heap, heap, None)
        .iter()
        .map(|alpha| shift_endo(heap, alpha, 0, e))
        .collect();
    let (h, index) = pointwise_heap(heap, &maps)?;
    let table = composition_table(&maps, &index)?;
    Ok((FiniteTruss::build(h, &table)?, maps))
}

/// Transports an endomorphism of `(H,+ₑ)` to one of `(H,+_f)`:
/// `x ↦ α(x −ₑ f) +ₑ f`, written as `τₑᶠ ∘ α ∘ τ_fᵉ`.
pub fn shift_endo(heap: &FiniteHeap, alpha: &HeapMorphism, e: Element, f: Element) -> HeapMorphism {
    HeapMorphism::new(
        heap.elements()
            .map(|x| heap.br(alpha.apply(heap.br(x, f, e)), e, f))
            .collect(),
    )
}

/// The index map `End(H,+ₑ) → End(H,+_f)` induced by [`shift_endo`], with the
/// numbering of [`end_at`].
pub fn basepoint_conjugation(heap: &FiniteHeap, e: Element, f: Element, limits: &Limits) -> Result<HeapMorphism, ConstructionError> {
    let (_, from) = end_at(heap, e, limits)?;
    let (_, to) = end_at(heap, f, limits)?;
    let index: HashMap<&[Element], usize> = to.iter().enumerate().map(|(i, m)| (m.image.as_slice(), i)).collect();
    Ok(HeapMorphism::new(
        from.iter()
            .map(|alpha| index[shift_endo(heap, alpha, e, f).image.as_slice()])
            .collect(),
    ))
}

/// `H ⋊ End(H,+ₑ)` with `(x,α)(y,β) = (x +ₑ α(y), α∘β)`.
#[derive(Clone, Debug)]
pub struct SemidirectTruss {
    pub truss: FiniteTruss,
    pub basepoint: Element,
    /// `(x, α)` for each carrier element; index is `x·|End| + j`.
    pub pairs: Vec<(Element, HeapMorphism)>,
    /// Carrier map into the numbering of [`endomorphism_truss`].
    pub theta: HeapMorphism,
}

impl SemidirectTruss {
    /// The sub-truss `{(e, α)}`, i.e. `End(H,+ₑ)`.
    pub fn slice(&self) -> SubHeap {
        let members = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(_, (x, _))| *x == self.basepoint)
            .map(|(i, _)| i)
            .collect();
        SubHeap::from_closed(self.truss.size(), members)
    }
}

pub fn semidirect_truss(heap: &FiniteHeap, e: Element, limits: &Limits) -> Result<SemidirectTruss, ConstructionError> {
    let (eh, labels) = endomorphism_truss(heap, limits)?;
    let (_, ends) = end_at(heap, e, limits)?;
    let k = ends.len();
    let end_index: HashMap<&[Element], usize> = ends.iter().enumerate().map(|(i, m)| (m.image.as_slice(), i)).collect();
    let idx = |x: Element, a: &HeapMorphism| x * k + end_index[a.image.as_slice()];
    let pairs: Vec<(Element, HeapMorphism)> = heap
        .elements()
        .flat_map(|x| ends.iter().map(move |a| (x, a.clone())))
        .collect();
    let n = pairs.len();
    let carrier = FiniteHeap::from_bracket_unchecked(n, |i, j, l| {
        let (x, a) = &pairs[i];
        let (y, b) = &pairs[j];
        let (z, c) = &pairs[l];
        let abc = HeapMorphism::new(heap.elements().map(|h| heap.br(a.apply(h), b.apply(h), c.apply(h))).collect());
        idx(heap.br(*x, *y, *z), &abc)
    });
    let truss = FiniteTruss::from_fn(carrier, |i, j| {
        let (x, a) = &pairs[i];
        let (y, b) = &pairs[j];
        idx(heap.plus_at(e, *x, a.apply(*y)), &a.compose(b))
    })?;
    let eh_index: HashMap<Vec<Element>, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_map(heap).image, i)).collect();
    let theta = HeapMorphism::new(
        pairs
            .iter()
            .map(|(x, a)| {
                let img: Vec<Element> = heap.elements().map(|h| heap.plus_at(e, *x, a.apply(h))).collect();
                eh_index[&img]
            })
            .collect(),
    );
    if !theta.is_bijective() || !truss.is_morphism_to(&eh, &theta) {
        return Err(ConstructionError::NotClosed("the decomposition map"));
    }
    Ok(SemidirectTruss {
        truss,
        basepoint: e,
        pairs,
        theta,
    })
}

/// `H × S` for a set `S` of additive maps closed under composition and the
/// pointwise bracket; element `x·|S| + j` is `(x, Sⱼ)`.
pub fn subset_semidirect_truss(group: &FiniteHeap, subset: &[HeapMorphism]) -> Result<FiniteTruss, ConstructionError> {
    if subset.is_empty() {
        return Err(ConstructionError::NotClosed("the pointwise bracket"));
    }
    if subset.iter().any(|s| !is_additive(group, group, s)) {
        return Err(ConstructionError::NotAdditive);
    }
    let (sheap, index) = pointwise_heap(group, subset)?;
    let comp = composition_table(subset, &index)?;
    let k = subset.len();
    let carrier = FiniteHeap::from_bracket_unchecked(group.size() * k, |i, j, l| {
        group.br(i / k, j / k, l / k) * k + sheap.br(i % k, j % k, l % k)
    });
    Ok(FiniteTruss::from_fn(carrier, |i, j| {
        let (x, s) = (i / k, i % k);
        let (y, t) = (j / k, j % k);
        group.add(x, subset[s].apply(y)) * k + comp[s][t]
    })?)
}

/// Componentwise bracket and product; `(a, b)` has index `a + |T₁|·b`.
pub fn product_truss(t1: &FiniteTruss, t2: &FiniteTruss) -> Result<FiniteTruss, ConstructionError> {
    let n = t1.size();
    let heap = t1.heap().product(t2.heap());
    Ok(FiniteTruss::from_fn(heap, |x, y| {
        t1.mul(x % n, y % n) + n * t2.mul(x / n, y / n)
    })?)
}

/// Functions `{0..x_size} → T` with pointwise operations; the value at point
/// `i` is base-`|T|` digit `i`.
pub fn mapping_truss(t: &FiniteTruss, x_size: usize, limits: &Limits) -> Result<FiniteTruss, ConstructionError> {
    if x_size == 0 {
        return Err(HeapError::EmptyCarrier.into());
    }
    let size = (t.size() as u128).checked_pow(x_size as u32).unwrap_or(u128::MAX);
    ensure_cap(size.min(usize::MAX as u128) as usize, limits.construction_cap())?;
    let mut acc = t.clone();
    for _ in 1..x_size {
        acc = product_truss(&acc, t)?;
    }
    Ok(acc)
}

/// `(ℤ_m)^k` with `r·s = r + sE` for an idempotent `E` over `ℤ_m`.
pub fn matrix_truss(m: u64, k: usize, e: &[Vec<u64>], limits: &Limits) -> Result<FiniteTruss, ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::ZeroModulus);
    }
    if k == 0 || e.len() != k || e.iter().any(|r| r.len() != k) {
        return Err(ConstructionError::BadDimension(k));
    }
    let e: Vec<Vec<u64>> = e.iter().map(|r| r.iter().map(|v| v % m).collect()).collect();
    for i in 0..k {
        for j in 0..k {
            let sq = (0..k).fold(0u128, |acc, l| acc + e[i][l] as u128 * e[l][j] as u128) % m as u128;
            if sq as u64 != e[i][j] {
                return Err(ConstructionError::NotIdempotentMatrix(m));
            }
        }
    }
    let size = (m as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > limits.max_carrier as u128 {
        return Err(HeapError::CarrierTooLarge {
            size: size.min(usize::MAX as u128) as usize,
            cap: limits.max_carrier,
        }
        .into());
    }
    let heap = FiniteHeap::build(&crate::heap::HeapSource::Cyclic(vec![m as usize; k]), limits)?;
    let m = m as usize;
    let digits = |mut x: usize| -> Vec<usize> {
        (0..k)
            .map(|_| {
                let d = x % m;
                x /= m;
                d
            })
            .collect()
    };
    let encode = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * m + d);
    Ok(FiniteTruss::from_fn(heap.clone(), |r, s| {
        let s = digits(s);
        let se: Vec<usize> = (0..k)
            .map(|j| (0..k).fold(0, |acc, i| (acc + s[i] * e[i][j] as usize) % m))
            .collect();
        heap.add(r, encode(&se))
    })?)
}
