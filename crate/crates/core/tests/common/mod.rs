//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use zwb_core::category::LinearCategory;
use zwb_core::exact::{Echelon, Scalar, SparseVec};
use zwb_core::thread::Complex;
use zwb_core::zalgebra::{generator, WindowAlgebra};

/// Counts monomials of degree `deg` in `vars` commuting variables by listing
/// sorted index tuples.
pub fn monomial_count(vars: usize, deg: usize) -> usize {
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    set.insert(vec![]);
    for _ in 0..deg {
        set = set
            .iter()
            .flat_map(|m| {
                (0..vars).map(move |v| {
                    let mut n = m.clone();
                    n.push(v);
                    n.sort();
                    n
                })
            })
            .collect();
    }
    set.len()
}

/// Unnormalized Hochschild cohomology over the semisimple subalgebra of
/// identities: cochains on every composable tuple of basis elements,
/// identities included, over weakly increasing chains.
pub fn bar_oracle(cat: &LinearCategory, top: usize) -> Vec<usize> {
    type Tuple = (Vec<i64>, Vec<usize>);
    let tuples = |n: usize| -> Vec<Tuple> {
        let mut out: Vec<Tuple> = cat.objects().map(|x| (vec![x], vec![])).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for (objs, args) in &out {
                let last = *objs.last().unwrap();
                for y in last..=cat.hi {
                    for a in 0..cat.dim(y, last) {
                        let mut o = objs.clone();
                        o.push(y);
                        let mut r = args.clone();
                        r.push(a);
                        next.push((o, r));
                    }
                }
            }
            out = next;
        }
        out
    };
    let index = |n: usize| {
        let mut map = std::collections::HashMap::new();
        let mut off = 0;
        for t in tuples(n) {
            let w = cat.dim(*t.0.last().unwrap(), t.0[0]);
            map.insert(t, off);
            off += w;
        }
        (map, off)
    };
    let idx: Vec<_> = (0..=top + 1).map(index).collect();
    let mut ranks = Vec::new();
    for n in 0..=top {
        let (src, _) = &idx[n];
        let mut ech = Echelon::new(cat.field);
        for (objs, args) in tuples(n + 1) {
            let x = &objs;
            let t = x[n + 1];
            for w in 0..cat.dim(t, x[0]) {
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                let tail = (x[1..].to_vec(), args[1..].to_vec());
                for v in 0..cat.dim(t, x[1]) {
                    if let Some(c) = cat.mul_basis(t, x[1], x[0], args[0], v).get(w) {
                        row.push((src[&tail] + v, c.clone()));
                    }
                }
                for i in 1..=n {
                    let mut o = x.clone();
                    o.remove(i);
                    for (k, c) in cat.mul_basis(x[i + 1], x[i], x[i - 1], args[i - 1], args[i]).iter() {
                        let mut r = args.clone();
                        r.remove(i);
                        r[i - 1] = *k;
                        let c = if i % 2 == 1 { -c } else { c.clone() };
                        row.push((src[&(o.clone(), r)] + w, c));
                    }
                }
                let head = (x[..=n].to_vec(), args[..n].to_vec());
                for v in 0..cat.dim(x[n], x[0]) {
                    if let Some(c) = cat.mul_basis(t, x[n], x[0], v, args[n]).get(w) {
                        let c = if (n + 1) % 2 == 1 { -c } else { c.clone() };
                        row.push((src[&head] + v, c));
                    }
                }
                ech.insert(&SparseVec::from_pairs(row));
            }
        }
        ranks.push(ech.rank());
    }
    (0..=top).map(|n| idx[n].1 - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 }).collect()
}

/// The Koszul complex `Λ^k V ⊗ O(a+k)` for `k` in `ks`, placed so that the
/// term with `k = ks.end()` sits in degree `top`.
pub fn koszul(w: &WindowAlgebra, d: usize, a: i64, ks: std::ops::RangeInclusive<usize>, top: i64) -> Complex {
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        (0u32..1 << (d + 1)).filter(|m| m.count_ones() as usize == k).map(|m| (0..=d).filter(|i| m >> i & 1 == 1).collect()).collect()
    };
    let last = *ks.end() as i64;
    let mut c = Complex::zero();
    for k in ks.clone() {
        let deg = top - (last - k as i64);
        c.terms.insert(deg, vec![-(a + k as i64); subsets(k).len()]);
        if k < *ks.end() {
            let (src, dst) = (subsets(k), subsets(k + 1));
            let base = -(a + k as i64) - 1;
            let mut blocks = vec![vec![SparseVec::new(); src.len()]; dst.len()];
            for (s, set) in src.iter().enumerate() {
                for i in (0..=d).filter(|i| !set.contains(i)) {
                    let mut bigger = set.clone();
                    bigger.push(i);
                    bigger.sort();
                    let u = dst.iter().position(|t| *t == bigger).unwrap();
                    let sign = set.iter().filter(|&&x| x < i).count() % 2;
                    let x = generator(w, &format!("x{i}"), base).unwrap().coords;
                    blocks[u][s] = if sign == 1 { x.iter().map(|(j, v)| (*j, -v)).collect() } else { x };
                }
            }
            c.diffs.insert(deg, blocks);
        }
    }
    c
}

