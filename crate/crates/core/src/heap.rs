//! Finite Abelian heaps.
//!
//! A heap is stored through its retract group at basepoint `0`: the table
//! `x ⋄ y = [x, 0, y]` together with inverses. The ternary bracket is then
//! `[x, y, z] = x ⋄ inv(y) ⋄ z`, and it does not depend on the basepoint used
//! to store it.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::config::Limits;

/// Elements of a finite carrier are the indices `0..n`.
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeapError {
    #[error("carrier must be non-empty")]
    EmptyCarrier,
    #[error("carrier of size {size} exceeds the cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("not a group: {axiom} fails at {witness:?}")]
    NotAGroup {
        axiom: &'static str,
        witness: Vec<Element>,
    },
    #[error("Mal'cev identity fails at {witness:?}")]
    NotMalcev { witness: Vec<Element> },
    #[error("not Abelian at {witness:?}")]
    NotAbelian { witness: Vec<Element> },
    #[error("ternary table differs from the retract bracket at {witness:?}")]
    Inconsistent { witness: Vec<Element> },
    #[error("element {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: Element, size: usize },
    #[error("multibracket needs an odd number of arguments, got {0}")]
    EvenLength(usize),
    #[error("generator set is empty")]
    EmptyGenerator,
    #[error("not a sub-heap: the bracket of {witness:?} leaves the set")]
    NotSubHeap { witness: Vec<Element> },
    #[error("element {0} is not in the image")]
    NotInImage(Element),
    #[error("map has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Input accepted by [`FiniteHeap::build`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeapSource {
    /// Product of cyclic groups `ℤ_{n1} × … × ℤ_{ng}`; element index is the
    /// mixed-radix number with the first factor as least significant digit.
    Cyclic(Vec<usize>),
    /// An Abelian group table (row `x`, column `y` holds `x·y`).
    GroupTable(Vec<Vec<Element>>),
    /// A raw ternary table indexed `[x][y][z]`.
    Ternary(Vec<Vec<Vec<Element>>>),
}

#[derive(Clone, Debug)]
pub struct FiniteHeap {
    size: usize,
    add: Vec<Element>,
    neg: Vec<Element>,
    factor_shape: Option<Vec<usize>>,
}

impl PartialEq for FiniteHeap {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.add == other.add
    }
}

impl Eq for FiniteHeap {}

fn check_cap(size: usize, limits: &Limits) -> Result<(), HeapError> {
    if size == 0 {
        return Err(HeapError::EmptyCarrier);
    }
    if size > limits.max_carrier {
        return Err(HeapError::CarrierTooLarge {
            size,
            cap: limits.max_carrier,
        });
    }
    Ok(())
}

fn square_table(table: &[Vec<Element>]) -> Result<(usize, Vec<Element>), HeapError> {
    let n = table.len();
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(HeapError::MalformedTable(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for &v in row {
            if v >= n {
                return Err(HeapError::IndexOutOfRange { index: v, size: n });
            }
            flat.push(v);
        }
    }
    Ok((n, flat))
}

impl FiniteHeap {
    pub fn build(source: &HeapSource, limits: &Limits) -> Result<Self, HeapError> {
        match source {
            HeapSource::Cyclic(orders) => Self::cyclic_with(orders, limits),
            HeapSource::GroupTable(t) => Self::group_table_with(t, limits),
            HeapSource::Ternary(t) => Self::ternary_with(t, limits),
        }
    }

    /// `ℤ_{n1} × … × ℤ_{ng}` under the default limits.
    pub fn cyclic(orders: &[usize]) -> Result<Self, HeapError> {
        Self::cyclic_with(orders, &Limits::default())
    }

    pub fn from_group_table(table: &[Vec<Element>]) -> Result<Self, HeapError> {
        Self::group_table_with(table, &Limits::default())
    }

    pub fn from_ternary_table(table: &[Vec<Vec<Element>>]) -> Result<Self, HeapError> {
        Self::ternary_with(table, &Limits::default())
    }

    fn cyclic_with(orders: &[usize], limits: &Limits) -> Result<Self, HeapError> {
        if orders.is_empty() {
            return Err(HeapError::MalformedTable("empty cyclic factor list".into()));
        }
        if let Some(&z) = orders.iter().find(|&&o| o == 0) {
            return Err(HeapError::MalformedTable(format!(
                "cyclic factor of order {z}"
            )));
        }
        let size = orders
            .iter()
            .try_fold(1usize, |acc, &o| acc.checked_mul(o))
            .unwrap_or(usize::MAX);
        check_cap(size, limits)?;
        Ok(Self::cyclic_unchecked(orders))
    }

    pub(crate) fn cyclic_unchecked(orders: &[usize]) -> Self {
        let size: usize = orders.iter().product();
        let digits = |mut x: usize| {
            orders
                .iter()
                .map(|&o| {
                    let d = x % o;
                    x /= o;
                    d
                })
                .collect::<Vec<_>>()
        };
        let encode = |ds: &[usize]| {
            ds.iter()
                .zip(orders)
                .rev()
                .fold(0usize, |acc, (&d, &o)| acc * o + d)
        };
        let mut add = vec![0; size * size];
        for x in 0..size {
            let dx = digits(x);
            for y in 0..size {
                let dy = digits(y);
                let s: Vec<usize> = dx
                    .iter()
                    .zip(&dy)
                    .zip(orders)
                    .map(|((a, b), o)| (a + b) % o)
                    .collect();
                add[x * size + y] = encode(&s);
            }
        }
        let mut heap = Self::from_retract_unchecked(size, add);
        heap.factor_shape = Some(orders.to_vec());
        heap
    }

    /// Builds from a retract table at basepoint 0 that is already known to be
    /// an Abelian group with neutral element 0.
    pub(crate) fn from_retract_unchecked(size: usize, add: Vec<Element>) -> Self {
        let mut neg = vec![0; size];
        for x in 0..size {
            neg[x] = (0..size)
                .find(|&y| add[x * size + y] == 0)
                .expect("retract table has inverses");
        }
        FiniteHeap {
            size,
            add,
            neg,
            factor_shape: None,
        }
    }

    /// Builds from a bracket known to be an Abelian heap operation.
    pub(crate) fn from_bracket_unchecked(
        size: usize,
        bracket: impl Fn(Element, Element, Element) -> Element,
    ) -> Self {
        let mut add = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                add[x * size + y] = bracket(x, 0, y);
            }
        }
        Self::from_retract_unchecked(size, add)
    }

    fn group_table_with(table: &[Vec<Element>], limits: &Limits) -> Result<Self, HeapError> {
        check_cap(table.len(), limits)?;
        let (n, t) = square_table(table)?;
        let op = |x: usize, y: usize| t[x * n + y];
        let unit = (0..n)
            .find(|&u| (0..n).all(|x| op(u, x) == x && op(x, u) == x))
            .ok_or(HeapError::NotAGroup {
                axiom: "identity",
                witness: vec![],
            })?;
        let mut inv = vec![0; n];
        for x in 0..n {
            inv[x] = (0..n)
                .find(|&y| op(x, y) == unit && op(y, x) == unit)
                .ok_or(HeapError::NotAGroup {
                    axiom: "inverse",
                    witness: vec![x],
                })?;
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if op(op(x, y), z) != op(x, op(y, z)) {
                        return Err(HeapError::NotAGroup {
                            axiom: "associativity",
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if op(x, y) != op(y, x) {
                    return Err(HeapError::NotAbelian {
                        witness: vec![x, y],
                    });
                }
            }
        }
        // Retract at 0 of the bracket x·y⁻¹·z.
        let mut add = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                add[x * n + y] = op(op(x, inv[0]), y);
            }
        }
        Ok(Self::from_retract_unchecked(n, add))
    }

    fn ternary_with(table: &[Vec<Vec<Element>>], limits: &Limits) -> Result<Self, HeapError> {
        let n = table.len();
        check_cap(n, limits)?;
        let mut t = Vec::with_capacity(n * n * n);
        for (x, plane) in table.iter().enumerate() {
            if plane.len() != n {
                return Err(HeapError::MalformedTable(format!(
                    "plane {x} has {} rows, expected {n}",
                    plane.len()
                )));
            }
            let (_, flat) = square_table(plane).map_err(|e| match e {
                HeapError::MalformedTable(m) => HeapError::MalformedTable(format!("plane {x}: {m}")),
                other => other,
            })?;
            t.extend(flat);
        }
        let tern = |x: usize, y: usize, z: usize| t[(x * n + y) * n + z];

        for x in 0..n {
            for y in 0..n {
                if tern(x, x, y) != y {
                    return Err(HeapError::NotMalcev {
                        witness: vec![x, x, y],
                    });
                }
                if tern(y, x, x) != y {
                    return Err(HeapError::NotMalcev {
                        witness: vec![y, x, x],
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in (x + 1)..n {
                    if tern(x, y, z) != tern(z, y, x) {
                        return Err(HeapError::NotAbelian {
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        // Candidate retract at 0; Mal'cev already makes 0 neutral.
        let add: Vec<Element> = (0..n * n).map(|i| tern(i / n, 0, i % n)).collect();
        let op = |x: usize, y: usize| add[x * n + y];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if op(op(x, y), z) != op(x, op(y, z)) {
                        return Err(HeapError::NotAGroup {
                            axiom: "associativity",
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        let mut neg = vec![0; n];
        for x in 0..n {
            neg[x] = (0..n)
                .find(|&y| op(x, y) == 0)
                .ok_or(HeapError::NotAGroup {
                    axiom: "inverse",
                    witness: vec![x],
                })?;
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if tern(x, y, z) != op(op(x, neg[y]), z) {
                        return Err(HeapError::Inconsistent {
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        Ok(FiniteHeap {
            size: n,
            add,
            neg,
            factor_shape: None,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    pub fn factor_shape(&self) -> Option<&[usize]> {
        self.factor_shape.as_deref()
    }

    pub(crate) fn with_factor_shape(mut self, shape: Option<Vec<usize>>) -> Self {
        self.factor_shape = shape;
        self
    }

    pub fn contains(&self, x: Element) -> bool {
        x < self.size
    }

    pub fn check_index(&self, x: Element) -> Result<(), HeapError> {
        if x < self.size {
            Ok(())
        } else {
            Err(HeapError::IndexOutOfRange {
                index: x,
                size: self.size,
            })
        }
    }

    /// Retract addition at basepoint 0.
    #[inline]
    pub fn add(&self, x: Element, y: Element) -> Element {
        self.add[x * self.size + y]
    }

    #[inline]
    pub fn neg(&self, x: Element) -> Element {
        self.neg[x]
    }

    #[inline]
    pub fn sub(&self, x: Element, y: Element) -> Element {
        self.add(x, self.neg[y])
    }

    /// `[x, y, z]`. Panics if an argument is out of range; see [`Self::bracket`].
    #[inline]
    pub fn br(&self, x: Element, y: Element, z: Element) -> Element {
        self.add(self.sub(x, y), z)
    }

    pub fn bracket(&self, x: Element, y: Element, z: Element) -> Result<Element, HeapError> {
        self.check_index(x)?;
        self.check_index(y)?;
        self.check_index(z)?;
        Ok(self.br(x, y, z))
    }

    /// Left-nested `[[…[[x1,x2,x3],x4,x5]…]]`.
    pub fn multibracket(&self, items: &[Element]) -> Result<Element, HeapError> {
        if items.len() % 2 == 0 {
            return Err(HeapError::EvenLength(items.len()));
        }
        for &x in items {
            self.check_index(x)?;
        }
        Ok(items[1..]
            .chunks(2)
            .fold(items[0], |acc, pair| self.br(acc, pair[0], pair[1])))
    }

    /// `x +_e y = [x, e, y]`.
    #[inline]
    pub fn plus_at(&self, e: Element, x: Element, y: Element) -> Element {
        self.br(x, e, y)
    }

    /// `-_e x = [e, x, e]`.
    #[inline]
    pub fn neg_at(&self, e: Element, x: Element) -> Element {
        self.br(e, x, e)
    }

    /// `k·x` in the retract at 0.
    pub fn scalar(&self, k: i64, x: Element) -> Element {
        let ord = self.order_of(x) as i64;
        let k = k.rem_euclid(ord);
        let mut acc = 0;
        for _ in 0..k {
            acc = self.add(acc, x);
        }
        acc
    }

    /// Order of `x` in the retract at 0.
    pub fn order_of(&self, x: Element) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    pub fn add_table(&self) -> Vec<Vec<Element>> {
        self.add.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub fn ternary_table(&self) -> Vec<Vec<Vec<Element>>> {
        let n = self.size;
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (0..n).map(|z| self.br(x, y, z)).collect())
                    .collect()
            })
            .collect()
    }

    /// Generators of the retract at 0: the unit vectors of the factor shape
    /// when there is one, otherwise a greedy generating set.
    pub fn generators(&self) -> Vec<Element> {
        if let Some(shape) = &self.factor_shape {
            let mut stride = 1;
            let mut gens = Vec::new();
            for &o in shape {
                if o > 1 {
                    gens.push(stride);
                }
                stride *= o;
            }
            return gens;
        }
        let mut span = vec![false; self.size];
        span[0] = true;
        let mut members = vec![0];
        let mut gens = Vec::new();
        for g in 0..self.size {
            if span[g] {
                continue;
            }
            gens.push(g);
            self.extend_subgroup(&mut span, &mut members, g);
        }
        gens
    }

    /// Grows the subgroup `members` (with indicator `span`) by `g`.
    pub(crate) fn extend_subgroup(&self, span: &mut [bool], members: &mut Vec<Element>, g: Element) {
        let mut frontier: Vec<Element> = members.clone();
        while let Some(s) = frontier.pop() {
            let t = self.add(s, g);
            if !span[t] {
                span[t] = true;
                members.push(t);
                frontier.push(t);
            }
        }
    }

    pub fn swap_automorphism(&self, e: Element, f: Element) -> Result<HeapMorphism, HeapError> {
        self.check_index(e)?;
        self.check_index(f)?;
        Ok(HeapMorphism::new(
            self.elements().map(|x| self.br(x, e, f)).collect(),
        ))
    }

    /// Smallest sub-heap containing `xs`.
    pub fn subheap_generated(&self, xs: &[Element]) -> Result<SubHeap, HeapError> {
        let &e = xs.first().ok_or(HeapError::EmptyGenerator)?;
        for &x in xs {
            self.check_index(x)?;
        }
        // The sub-heap is the coset e + ⟨x - e : x ∈ X⟩.
        let mut span = vec![false; self.size];
        span[0] = true;
        let mut members = vec![0];
        for &x in xs {
            let d = self.sub(x, e);
            if !span[d] {
                self.extend_subgroup(&mut span, &mut members, d);
            }
        }
        let mut coset: Vec<Element> = members.iter().map(|&h| self.add(e, h)).collect();
        coset.sort_unstable();
        Ok(SubHeap {
            parent_size: self.size,
            members: coset,
        })
    }

    /// Normality per the displayed condition `[[x,e,s],x,e] ∈ S` with `e = min S`.
    pub fn is_normal(&self, sub: &SubHeap) -> bool {
        let e = sub.members[0];
        let mask = sub.mask();
        self.elements().all(|x| {
            sub.members
                .iter()
                .all(|&s| mask[self.br(self.br(x, e, s), x, e)])
        })
    }

    /// Class index of every element under `∼_S`; classes are numbered by
    /// least representative, ascending.
    pub fn classes(&self, sub: &SubHeap) -> Vec<Element> {
        let mask = sub.mask();
        let s0 = sub.members[0];
        let mut class = vec![usize::MAX; self.size];
        let mut next = 0;
        for x in self.elements() {
            if class[x] != usize::MAX {
                continue;
            }
            for y in x..self.size {
                if class[y] == usize::MAX && mask[self.br(y, x, s0)] {
                    class[y] = next;
                }
            }
            next += 1;
        }
        class
    }

    /// Quotient `H/S` together with the canonical projection.
    pub fn quotient(&self, sub: &SubHeap) -> Result<(FiniteHeap, HeapMorphism), HeapError> {
        sub.check_parent(self)?;
        let class = self.classes(sub);
        let count = class.iter().max().map_or(0, |m| m + 1);
        let mut reps = vec![usize::MAX; count];
        for (x, &c) in class.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        let mut add = vec![0; count * count];
        for i in 0..count {
            for j in 0..count {
                add[i * count + j] = class[self.add(reps[i], reps[j])];
            }
        }
        Ok((
            FiniteHeap::from_retract_unchecked(count, add),
            HeapMorphism::new(class),
        ))
    }

    /// The `e`-kernel `φ⁻¹(e)` of a morphism out of this heap.
    pub fn kernel(&self, phi: &HeapMorphism, e: Element) -> Result<SubHeap, HeapError> {
        if phi.image.len() != self.size {
            return Err(HeapError::LengthMismatch {
                expected: self.size,
                got: phi.image.len(),
            });
        }
        let members: Vec<Element> = self.elements().filter(|&x| phi.image[x] == e).collect();
        if members.is_empty() {
            return Err(HeapError::NotInImage(e));
        }
        SubHeap::new(self, members)
    }

    /// All subgroups of the retract at 0, each sorted; the list is sorted.
    pub fn subgroups(&self) -> Vec<Vec<Element>> {
        let mut seen: BTreeSet<Vec<Element>> = BTreeSet::new();
        let mut stack = vec![vec![0]];
        seen.insert(vec![0]);
        while let Some(group) = stack.pop() {
            let mut span = vec![false; self.size];
            for &g in &group {
                span[g] = true;
            }
            for g in self.elements() {
                if span[g] {
                    continue;
                }
                let mut s = span.clone();
                let mut m = group.clone();
                self.extend_subgroup(&mut s, &mut m, g);
                m.sort_unstable();
                if seen.insert(m.clone()) {
                    stack.push(m);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Every sub-heap, as the cosets of every subgroup; sorted by member list.
    pub fn subheaps(&self) -> Vec<SubHeap> {
        let mut all: BTreeSet<Vec<Element>> = BTreeSet::new();
        for group in self.subgroups() {
            for x in self.elements() {
                let mut coset: Vec<Element> = group.iter().map(|&h| self.add(x, h)).collect();
                coset.sort_unstable();
                all.insert(coset);
            }
        }
        all.into_iter()
            .map(|members| SubHeap {
                parent_size: self.size,
                members,
            })
            .collect()
    }

    /// Cartesian product with componentwise bracket; `(a, b)` has index `a + |self|·b`.
    pub fn product(&self, other: &FiniteHeap) -> FiniteHeap {
        let (n, m) = (self.size, other.size);
        let size = n * m;
        let mut add = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                let a = self.add(x % n, y % n);
                let b = other.add(x / n, y / n);
                add[x * size + y] = a + n * b;
            }
        }
        let shape = match (&self.factor_shape, &other.factor_shape) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        FiniteHeap::from_retract_unchecked(size, add).with_factor_shape(shape)
    }
}

/// A bracket-closed, non-empty subset of a heap, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubHeap {
    parent_size: usize,
    members: Vec<Element>,
}

impl SubHeap {
    pub fn new(parent: &FiniteHeap, members: impl IntoIterator<Item = Element>) -> Result<Self, HeapError> {
        let mut members: Vec<Element> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(HeapError::EmptyGenerator);
        }
        for &x in &members {
            parent.check_index(x)?;
        }
        let mut mask = vec![false; parent.size()];
        for &x in &members {
            mask[x] = true;
        }
        for &x in &members {
            for &y in &members {
                for &z in &members {
                    if !mask[parent.br(x, y, z)] {
                        return Err(HeapError::NotSubHeap {
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        Ok(SubHeap {
            parent_size: parent.size(),
            members,
        })
    }

    /// Trusted constructor for sets produced by closure computations.
    pub(crate) fn from_closed(parent_size: usize, mut members: Vec<Element>) -> Self {
        members.sort_unstable();
        members.dedup();
        SubHeap {
            parent_size,
            members,
        }
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn parent_size(&self) -> usize {
        self.parent_size
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn least(&self) -> Element {
        self.members[0]
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.parent_size];
        for &x in &self.members {
            mask[x] = true;
        }
        mask
    }

    pub(crate) fn check_parent(&self, parent: &FiniteHeap) -> Result<(), HeapError> {
        if self.parent_size != parent.size() {
            return Err(HeapError::LengthMismatch {
                expected: parent.size(),
                got: self.parent_size,
            });
        }
        Ok(())
    }

    /// The sub-heap as a heap in its own right; index `i` stands for `members[i]`.
    pub fn as_heap(&self, parent: &FiniteHeap) -> FiniteHeap {
        let index = |x: Element| self.members.binary_search(&x).expect("closed sub-heap");
        let m = &self.members;
        FiniteHeap::from_bracket_unchecked(m.len(), |i, j, k| index(parent.br(m[i], m[j], m[k])))
    }
}

/// An element map between two heaps; validity is checked against explicit
/// domain and codomain with [`HeapMorphism::check`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeapMorphism {
    pub image: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub valid: bool,
    /// A triple `(x, y, z)` with `φ[x,y,z] ≠ [φx,φy,φz]`.
    pub witness: Option<[Element; 3]>,
}

impl HeapMorphism {
    pub fn new(image: Vec<Element>) -> Self {
        HeapMorphism { image }
    }

    pub fn identity(size: usize) -> Self {
        HeapMorphism::new((0..size).collect())
    }

    pub fn constant(size: usize, c: Element) -> Self {
        HeapMorphism::new(vec![c; size])
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.image[x]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &HeapMorphism) -> HeapMorphism {
        HeapMorphism::new(inner.image.iter().map(|&x| self.image[x]).collect())
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        self.image.iter().all(|&y| y < seen.len() && !std::mem::replace(&mut seen[y], true))
    }

    pub fn inverse(&self) -> Option<HeapMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(HeapMorphism::new(inv))
    }

    /// Checks `φ[x,y,0] = [φx,φy,φ0]` and `φ[x,0,z] = [φx,φ0,φz]`; together
    /// these give the full law since `[x,y,z] = [[x,y,0],0,z]`.
    pub fn check(&self, dom: &FiniteHeap, cod: &FiniteHeap) -> Result<MorphismReport, HeapError> {
        if self.image.len() != dom.size() {
            return Err(HeapError::LengthMismatch {
                expected: dom.size(),
                got: self.image.len(),
            });
        }
        for &y in &self.image {
            cod.check_index(y)?;
        }
        let f = |x: Element| self.image[x];
        let f0 = f(0);
        for x in dom.elements() {
            for y in dom.elements() {
                if f(dom.br(x, y, 0)) != cod.br(f(x), f(y), f0) {
                    return Ok(MorphismReport {
                        valid: false,
                        witness: Some([x, y, 0]),
                    });
                }
                if f(dom.br(x, 0, y)) != cod.br(f(x), f0, f(y)) {
                    return Ok(MorphismReport {
                        valid: false,
                        witness: Some([x, 0, y]),
                    });
                }
            }
        }
        Ok(MorphismReport {
            valid: true,
            witness: None,
        })
    }

    pub fn is_morphism(&self, dom: &FiniteHeap, cod: &FiniteHeap) -> bool {
        self.check(dom, cod).map(|r| r.valid).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteHeap {
        FiniteHeap::cyclic(&[n]).unwrap()
    }

    #[test]
    fn cyclic_add_is_modular() {
        let h = z(4);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(h.add(x, y), (x + y) % 4);
            }
        }
    }

    #[test]
    fn raw_ternary_mod3_is_accepted() {
        let t: Vec<Vec<Vec<usize>>> = (0..3)
            .map(|x| (0..3).map(|y| (0..3).map(|z| (x + 3 - y + z) % 3).collect()).collect())
            .collect();
        let h = FiniteHeap::from_ternary_table(&t).unwrap();
        assert_eq!(h, z(3));
    }

    #[test]
    fn raw_ternary_breaking_idempotency_is_not_malcev() {
        let mut t: Vec<Vec<Vec<usize>>> = (0..2)
            .map(|x| (0..2).map(|y| (0..2).map(|z| x ^ y ^ z).collect()).collect())
            .collect();
        t[0][0][0] = 1;
        assert!(matches!(
            FiniteHeap::from_ternary_table(&t),
            Err(HeapError::NotMalcev { .. })
        ));
    }

    #[test]
    fn group_table_with_nonzero_identity() {
        // ℤ₃ relabelled so that the identity is element 2.
        let relabel = [2, 0, 1];
        let mut t = vec![vec![0; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                t[relabel[a]][relabel[b]] = relabel[(a + b) % 3];
            }
        }
        let h = FiniteHeap::from_group_table(&t).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                for w in 0..3 {
                    let expect = t[t[x][(0..3).find(|&i| t[y][i] == 2).unwrap()]][w];
                    assert_eq!(h.br(x, y, w), expect);
                }
            }
        }
    }

    #[test]
    fn non_abelian_group_table_rejected() {
        // S3 via permutations of {0,1,2}.
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let t: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        assert!(matches!(
            FiniteHeap::from_group_table(&t),
            Err(HeapError::NotAbelian { .. })
        ));
    }

    #[test]
    fn carrier_cap_enforced() {
        let limits = Limits::default().with_max_carrier(8);
        assert!(matches!(
            FiniteHeap::build(&HeapSource::Cyclic(vec![9]), &limits),
            Err(HeapError::CarrierTooLarge { size: 9, cap: 8 })
        ));
        assert!(FiniteHeap::build(&HeapSource::Cyclic(vec![]), &limits).is_err());
        assert!(FiniteHeap::build(&HeapSource::GroupTable(vec![]), &limits).is_err());
    }

    #[test]
    fn trivial_heap() {
        let h = z(1);
        assert_eq!(h.size(), 1);
        assert_eq!(h.br(0, 0, 0), 0);
        assert_eq!(h.subheaps().len(), 1);
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(z(5).bracket(1, 2, 3), Ok(2));
        assert_eq!(z(4).bracket(3, 1, 2), Ok(0));
        assert!(matches!(
            z(4).bracket(4, 0, 0),
            Err(HeapError::IndexOutOfRange { index: 4, size: 4 })
        ));
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(z(6).br(x, x, y), y);
            }
        }
    }

    #[test]
    fn multibracket_examples() {
        let h = z(5);
        assert_eq!(h.multibracket(&[2; 7]), Ok(2));
        assert_eq!(h.multibracket(&[1, 2, 3, 4, 0]), Ok(3));
        assert_eq!(h.multibracket(&[4]), Ok(4));
        assert_eq!(h.multibracket(&[1, 2]), Err(HeapError::EvenLength(2)));
    }

    #[test]
    fn swaps() {
        let h = z(4);
        assert_eq!(h.swap_automorphism(1, 1).unwrap(), HeapMorphism::identity(4));
        assert_eq!(h.swap_automorphism(0, 1).unwrap().image, vec![1, 2, 3, 0]);
        let h6 = z(6);
        for e in 0..6 {
            for f in 0..6 {
                let there = h6.swap_automorphism(e, f).unwrap();
                let back = h6.swap_automorphism(f, e).unwrap();
                assert!(there.is_morphism(&h6, &h6));
                assert_eq!(back.compose(&there), HeapMorphism::identity(6));
            }
        }
    }

    fn full_violation(dom: &FiniteHeap, cod: &FiniteHeap, f: &HeapMorphism, w: [usize; 3]) -> bool {
        f.apply(dom.br(w[0], w[1], w[2])) != cod.br(f.apply(w[0]), f.apply(w[1]), f.apply(w[2]))
    }

    #[test]
    fn morphism_checks() {
        let h = z(4);
        assert!(HeapMorphism::constant(4, 2).check(&h, &h).unwrap().valid);
        assert!(HeapMorphism::new(vec![1, 2, 3, 0]).check(&h, &h).unwrap().valid);
        let square = HeapMorphism::new((0..4).map(|x| x * x % 4).collect());
        let report = square.check(&h, &h).unwrap();
        assert!(!report.valid);
        assert!(full_violation(&h, &h, &square, report.witness.unwrap()));
        assert!(full_violation(&h, &h, &square, [1, 2, 3]));
        assert!(HeapMorphism::new(vec![0, 1]).check(&h, &h).is_err());
    }

    #[test]
    fn generated_subheaps() {
        let h = z(6);
        assert_eq!(h.subheap_generated(&[0]).unwrap().members(), &[0]);
        assert_eq!(h.subheap_generated(&[0, 2]).unwrap().members(), &[0, 2, 4]);
        assert_eq!(h.subheap_generated(&[1, 2]).unwrap().members(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(h.subheap_generated(&[4, 1]).unwrap().members(), &[1, 4]);
        assert_eq!(h.subheap_generated(&[]), Err(HeapError::EmptyGenerator));
    }

    #[test]
    fn generation_is_order_independent() {
        let h = FiniteHeap::cyclic(&[2, 4]).unwrap();
        let a = h.subheap_generated(&[1, 6, 3]).unwrap();
        let b = h.subheap_generated(&[3, 1, 6]).unwrap();
        let c = h.subheap_generated(&[6, 3, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert!(SubHeap::new(&h, a.members().to_vec()).is_ok());
    }

    #[test]
    fn normality() {
        let h = z(8);
        assert!(h.is_normal(&SubHeap::new(&h, [5]).unwrap()));
        let h6 = z(6);
        assert!(h6.is_normal(&SubHeap::new(&h6, [0, 3]).unwrap()));
        for s in h6.subheaps() {
            assert!(h6.is_normal(&s));
        }
    }

    #[test]
    fn quotients() {
        let h = z(6);
        let (q, pi) = h.quotient(&SubHeap::new(&h, [0, 2, 4]).unwrap()).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(pi.image, vec![0, 1, 0, 1, 0, 1]);
        assert!(pi.is_morphism(&h, &q));

        let h4 = z(4);
        let s = SubHeap::new(&h4, [1, 3]).unwrap();
        let (q, pi) = h4.quotient(&s).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(pi.image, vec![0, 1, 0, 1]);
        assert_eq!(h4.kernel(&pi, 1).unwrap(), s);

        let (q, pi) = h4.quotient(&SubHeap::new(&h4, [2]).unwrap()).unwrap();
        assert_eq!(q, h4);
        assert_eq!(pi, HeapMorphism::identity(4));
    }

    #[test]
    fn kernels() {
        let h4 = z(4);
        let h2 = z(2);
        let pi = HeapMorphism::new(vec![0, 1, 0, 1]);
        assert!(pi.is_morphism(&h4, &h2));
        assert_eq!(h4.kernel(&pi, 0).unwrap().members(), &[0, 2]);
        let shift = HeapMorphism::new(vec![3, 0, 1, 2]);
        assert_eq!(h4.kernel(&shift, 2).unwrap().members(), &[3]);
        assert_eq!(h4.kernel(&HeapMorphism::constant(4, 1), 1).unwrap().len(), 4);
        assert_eq!(h4.kernel(&HeapMorphism::constant(4, 1), 0), Err(HeapError::NotInImage(0)));
    }

    #[test]
    fn not_subheap_witness() {
        let h = z(4);
        let err = SubHeap::new(&h, [1, 2]).unwrap_err();
        assert!(matches!(err, HeapError::NotSubHeap { .. }));
    }

    #[test]
    fn z4_has_seven_subheaps() {
        // Brute force over all non-empty subsets.
        let h = z(4);
        let brute = (1u32..16)
            .filter(|mask| SubHeap::new(&h, (0..4).filter(|i| mask >> i & 1 == 1)).is_ok())
            .count();
        assert_eq!(brute, 7);
        assert_eq!(h.subheaps().len(), 7);
    }

    #[test]
    fn klein_generators_and_product() {
        let v4 = FiniteHeap::cyclic(&[2, 2]).unwrap();
        assert_eq!(v4.generators(), vec![1, 2]);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(v4.add(x, y), x ^ y);
            }
        }
        let z2 = z(2);
        assert_eq!(z2.product(&z2), v4);
        assert_eq!(z(6).generators(), vec![1]);
        assert_eq!(z(4).order_of(2), 2);
        assert_eq!(z(4).scalar(-1, 1), 3);
    }

    #[test]
    fn subheap_as_heap() {
        let h = z(6);
        let s = SubHeap::new(&h, [1, 3, 5]).unwrap();
        let sh = s.as_heap(&h);
        assert_eq!(sh.size(), 3);
        // [1,3,5] = 3 is index 1 in the sub-heap.
        assert_eq!(sh.br(0, 1, 2), 1);
    }
}
