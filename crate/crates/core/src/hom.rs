//! Group homomorphisms between retracts at basepoint 0.

use crate::heap::{Element, FiniteHeap, HeapMorphism};

/// Every additive map `dom → cod` (both read as groups at 0), in
/// lexicographic order of the images of `dom.generators()`.
///
/// Stops after `max_count` results when a bound is given.
pub fn group_homs(dom: &FiniteHeap, cod: &FiniteHeap, max_count: Option<usize>) -> Vec<HeapMorphism> {
    let gens = dom.generators();
    let mut out = Vec::new();
    let mut phi = vec![usize::MAX; dom.size()];
    phi[0] = 0;
    let mut members = vec![0];
    extend(dom, cod, &gens, &mut phi, &mut members, max_count, &mut out);
    out
}

fn extend(
    dom: &FiniteHeap,
    cod: &FiniteHeap,
    gens: &[Element],
    phi: &mut Vec<Element>,
    members: &mut Vec<Element>,
    max_count: Option<usize>,
    out: &mut Vec<HeapMorphism>,
) -> bool {
    if max_count.is_some_and(|m| out.len() >= m) {
        return false;
    }
    let Some((&g, rest)) = gens.split_first() else {
        out.push(HeapMorphism::new(phi.clone()));
        return true;
    };
    if phi[g] != usize::MAX {
        return extend(dom, cod, rest, phi, members, max_count, out);
    }
    // d = least j ≥ 1 with j·g already in the domain of phi.
    let mut d = 1;
    let mut dg = g;
    while phi[dg] == usize::MAX {
        dg = dom.add(dg, g);
        d += 1;
    }
    let target = phi[dg];
    let base = members.len();
    for y in cod.elements() {
        if cod.scalar(d as i64, y) != target {
            continue;
        }
        let mut jg = 0;
        let mut jy = 0;
        for _ in 1..d {
            jg = dom.add(jg, g);
            jy = cod.add(jy, y);
            for i in 0..base {
                let s = members[i];
                let t = dom.add(s, jg);
                phi[t] = cod.add(phi[s], jy);
                members.push(t);
            }
        }
        let keep_going = extend(dom, cod, rest, phi, members, max_count, out);
        for &t in &members[base..] {
            phi[t] = usize::MAX;
        }
        members.truncate(base);
        if !keep_going {
            return false;
        }
    }
    true
}

/// Group isomorphisms `dom → cod` at basepoint 0.
pub fn group_isos(dom: &FiniteHeap, cod: &FiniteHeap) -> Vec<HeapMorphism> {
    if dom.size() != cod.size() {
        return Vec::new();
    }
    group_homs(dom, cod, None)
        .into_iter()
        .filter(HeapMorphism::is_bijective)
        .collect()
}

/// `x ↦ α(x)` is additive at 0.
pub fn is_additive(dom: &FiniteHeap, cod: &FiniteHeap, alpha: &HeapMorphism) -> bool {
    alpha.image.len() == dom.size()
        && alpha.image.iter().all(|&y| y < cod.size())
        && alpha.apply(0) == 0
        && dom
            .elements()
            .all(|x| dom.elements().all(|y| alpha.apply(dom.add(x, y)) == cod.add(alpha.apply(x), alpha.apply(y))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(dom: &FiniteHeap, cod: &FiniteHeap) -> Vec<HeapMorphism> {
        let n = dom.size();
        let m = cod.size();
        let total = m.pow(n as u32);
        let mut found: Vec<HeapMorphism> = (0..total)
            .map(|mut code| {
                HeapMorphism::new(
                    (0..n)
                        .map(|_| {
                            let d = code % m;
                            code /= m;
                            d
                        })
                        .collect(),
                )
            })
            .filter(|f| is_additive(dom, cod, f))
            .collect();
        found.sort();
        found
    }

    #[test]
    fn matches_brute_force() {
        let shapes: &[&[usize]] = &[&[1], &[2], &[3], &[4], &[2, 2], &[6], &[2, 3]];
        for a in shapes {
            for b in shapes {
                let dom = FiniteHeap::cyclic(a).unwrap();
                let cod = FiniteHeap::cyclic(b).unwrap();
                if cod.size().pow(dom.size() as u32) > 50_000 {
                    continue;
                }
                let mut fast = group_homs(&dom, &cod, None);
                fast.sort();
                assert_eq!(fast, brute(&dom, &cod), "{a:?} -> {b:?}");
            }
        }
    }

    #[test]
    fn counts() {
        let z4 = FiniteHeap::cyclic(&[4]).unwrap();
        let v4 = FiniteHeap::cyclic(&[2, 2]).unwrap();
        assert_eq!(group_homs(&z4, &z4, None).len(), 4);
        assert_eq!(group_homs(&v4, &v4, None).len(), 16);
        assert_eq!(group_isos(&v4, &v4).len(), 6);
        assert_eq!(group_isos(&z4, &v4).len(), 0);
        assert_eq!(group_homs(&v4, &v4, Some(3)).len(), 3);
    }

    #[test]
    fn table_built_heap_without_shape() {
        let v4 = FiniteHeap::cyclic(&[2, 2]).unwrap();
        let plain = FiniteHeap::from_group_table(&v4.add_table()).unwrap();
        assert!(plain.factor_shape().is_none());
        let mut fast = group_homs(&plain, &plain, None);
        fast.sort();
        assert_eq!(fast, brute(&plain, &plain));
    }
}
