//! Box tensor products.
//!
//! `box_ad` pairs a type-A table with a type-D structure. `box_graph_d` does the
//! same for a graph-presented module and never needs the full (possibly infinite)
//! table. `box_a_dd` feeds a type-A module into the left side of a DD bimodule and
//! returns a left type-D structure, turning the right side into a left one through
//! the anti-automorphism exchanging `r1` and `r3`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::f2core::{ChainComplex, F2Vector};
use crate::structures::{
    expand_graph_truncated, push_regrouped, DDBimodule, GraphTypeA, TypeA, TypeD,
};
use crate::torus_algebra::{mul, AlgebraElement, Basis, Idem};

/// Name of the generator `x (x) p`.
pub fn tensor_name(x: &str, p: &str) -> String {
    format!("{x}*{p}")
}

struct PairIndex {
    names: Vec<String>,
    index: BTreeMap<(usize, usize), usize>,
}

fn pair_index(
    na: usize,
    nd: usize,
    a_name: impl Fn(usize) -> String,
    d_name: impl Fn(usize) -> String,
    ok: impl Fn(usize, usize) -> bool,
) -> PairIndex {
    let mut names = Vec::new();
    let mut index = BTreeMap::new();
    for x in 0..na {
        for p in 0..nd {
            if ok(x, p) {
                index.insert((x, p), names.len());
                names.push(tensor_name(&a_name(x), &d_name(p)));
            }
        }
    }
    PairIndex { names, index }
}

/// Box tensor product of a type-A table with a type-D structure.
pub fn box_ad(m: &TypeA, d: &TypeD) -> Result<ChainComplex> {
    if d.has_idempotent_cycle() {
        return Err(Error::NonTerminating(format!(
            "`{}` has a cycle of idempotent arrows; reduce it first",
            d.name
        )));
    }
    let depth = match m.horizon() {
        None => m.max_len(),
        Some(h) => match d.longest_path() {
            Some(l) if l <= h => l,
            _ => {
                return Err(Error::NonTerminating(format!(
                    "`{}` is known only up to {h} inputs but `{}` has longer (or cyclic) paths",
                    m.name, d.name
                )))
            }
        },
    };
    let idx = pair_index(
        m.len(),
        d.len(),
        |x| m.gen_name(x).to_string(),
        |p| d.gen_name(p).to_string(),
        |x, p| m.idem(x) == d.idem(p),
    );
    let adj = d.adjacency();
    let mut diff = vec![F2Vector::new(); idx.names.len()];
    for (&(x, p), &src) in &idx.index {
        let prefixes: HashSet<&[Basis]> = m
            .words_from(x)
            .flat_map(|w| (1..=w.len()).map(move |k| &w[..k]))
            .collect();
        for &(a, q) in &adj[p] {
            if a.is_idempotent() {
                diff[src].toggle(idx.index[&(x, q)]);
            }
        }
        let mut stack: Vec<(Vec<Basis>, usize)> = vec![(Vec::new(), p)];
        while let Some((word, v)) = stack.pop() {
            if word.len() >= depth {
                continue;
            }
            for &(a, q) in &adj[v] {
                if a.is_idempotent() {
                    continue;
                }
                let mut w = word.clone();
                w.push(a);
                if !prefixes.contains(w.as_slice()) {
                    continue;
                }
                for y in m.m(x, &w).iter() {
                    diff[src].toggle(idx.index[&(y, q)]);
                }
                stack.push((w, q));
            }
        }
    }
    ChainComplex::new(idx.names, diff)
}

/// Box tensor product of a graph-presented type-A module with a type-D structure.
///
/// Uses the full table when the graph is acyclic, a truncated table when the
/// type-D structure is acyclic, and otherwise walks graph paths lazily while
/// tracking which type-D endpoints the already fixed part of the word reaches.
pub fn box_graph_d(g: &GraphTypeA, d: &TypeD) -> Result<ChainComplex> {
    if g.is_acyclic() {
        return box_ad(&crate::structures::expand_graph(g)?, d);
    }
    if let Some(l) = d.longest_path() {
        return box_ad(&expand_graph_truncated(g, l.max(1))?, d);
    }
    if d.has_idempotent_cycle() {
        return Err(Error::NonTerminating(format!(
            "`{}` has a cycle of idempotent arrows; reduce it first",
            d.name
        )));
    }
    let idx = pair_index(
        g.len(),
        d.len(),
        |x| g.gen_name(x).to_string(),
        |p| d.gen_name(p).to_string(),
        |x, p| g.idem(x) == d.idem(p),
    );
    let d_adj = d.adjacency();
    let g_adj = g.out_edges();
    let advance = |set: &F2Vector, a: Basis| -> F2Vector {
        let mut out = F2Vector::new();
        for s in set.iter() {
            for &(b, q) in &d_adj[s] {
                if b == a {
                    out.toggle(q);
                }
            }
        }
        out
    };
    let cap = 8 * (g.len() * d.len() + 2);
    let mut diff = vec![F2Vector::new(); idx.names.len()];
    for (&(x, p), &src) in &idx.index {
        for &(a, q) in &d_adj[p] {
            if a.is_idempotent() {
                diff[src].toggle(idx.index[&(x, q)]);
            }
        }
        // (graph vertex, endpoints after the fixed entries, open last entry, fixed length)
        let mut stack: Vec<(usize, F2Vector, Option<Basis>, usize)> =
            vec![(x, F2Vector::singleton(p), None, 0)];
        while let Some((v, fixed, open, len)) = stack.pop() {
            for &(label, t) in &g_adj[v] {
                let mut fixed = fixed.clone();
                let mut open = open;
                let mut len = len;
                for &b in label {
                    let mut w: Vec<Basis> = open.into_iter().collect();
                    push_regrouped(&mut w, b);
                    if w.len() == 2 {
                        fixed = advance(&fixed, w[0]);
                        len += 1;
                    }
                    open = w.last().copied();
                    if fixed.is_zero() {
                        break;
                    }
                }
                if fixed.is_zero() {
                    continue;
                }
                if len > cap {
                    return Err(Error::NonTerminating(format!(
                        "pairing `{}` with `{}` produces unbounded operations (parallel curves?)",
                        g.name, d.name
                    )));
                }
                let ends = advance(&fixed, open.expect("nonempty label"));
                for q in ends.iter() {
                    if d.idem(q) == g.idem(t) {
                        diff[src].toggle(idx.index[&(t, q)]);
                    }
                }
                stack.push((t, fixed, open, len));
            }
        }
    }
    ChainComplex::new(idx.names, diff)
}

/// Pairs a type-A module with the left side of a DD bimodule.
///
/// The result is a left type-D structure: each emitted right-side product
/// `b_k ... b_1` is carried to `sigma(b_1) ... sigma(b_k)`, and the generator
/// `x (x) g` gets idempotent `sigma(R(g))`.
pub fn box_a_dd(m: &TypeA, p: &DDBimodule) -> Result<TypeD> {
    let depth = p.longest_path().ok_or_else(|| {
        Error::NonTerminating(format!("DD bimodule `{}` has a directed cycle", p.name))
    })?;
    if let Some(h) = m.horizon() {
        if h < depth {
            return Err(Error::NonTerminating(format!(
                "`{}` is known only up to {h} inputs but `{}` has paths of length {depth}",
                m.name, p.name
            )));
        }
    }
    let idx = pair_index(
        m.len(),
        p.len(),
        |x| m.gen_name(x).to_string(),
        |g| p.gen_name(g).to_string(),
        |x, g| m.idem(x) == p.idems(g).0,
    );
    let mut out = TypeD::new(&format!("{}*{}", m.name, p.name));
    for (&(_, g), &k) in &idx.index {
        let id = out.add_gen(&idx.names[k], p.idems(g).1.other())?;
        debug_assert_eq!(id, k);
    }
    let adj = p.adjacency();
    for (&(x, g), &src) in &idx.index {
        // (consumed word, emitted product so far, current DD generator)
        let mut stack: Vec<(Vec<Basis>, AlgebraElement, usize)> =
            vec![(Vec::new(), AlgebraElement::one(), g)];
        while let Some((word, emitted, v)) = stack.pop() {
            for &(a, b, h) in &adj[v] {
                let e = mul(emitted, b.opposite().into());
                if e.is_zero() {
                    continue;
                }
                if a.is_idempotent() {
                    if word.is_empty() && m.idem(x) == a.as_idem().unwrap() {
                        for label in e.terms() {
                            out.toggle_arrow(src, label, idx.index[&(x, h)]);
                        }
                    }
                    continue;
                }
                let mut w = word.clone();
                w.push(a);
                for y in m.m(x, &w).iter() {
                    for label in e.terms() {
                        out.toggle_arrow(src, label, idx.index[&(y, h)]);
                    }
                }
                stack.push((w, e, h));
            }
        }
    }
    Ok(out)
}

/// The idempotent truncation: generators of `m` in idempotent `i`, zero differential.
pub fn truncate(m: &TypeA, i: Idem) -> ChainComplex {
    let names: Vec<String> = m
        .gens_in(i)
        .into_iter()
        .map(|g| m.gen_name(g).to_string())
        .collect();
    let n = names.len();
    ChainComplex::new(names, vec![F2Vector::new(); n]).expect("generator names are unique")
}

/// `m1 (x) p (x) m2`: `m1` feeds the left side of `p`, `m2` the right side.
/// Generators are named `y*x*g` for `x` in `m1`, `g` in `p`, `y` in `m2`.
pub fn triple_pair(m1: &TypeA, p: &DDBimodule, m2: &TypeA) -> Result<ChainComplex> {
    box_ad(m2, &box_a_dd(m1, p)?)
}

/// Homology rank of a pairing, convenience wrapper.
pub fn pairing_rank(m: &TypeA, d: &TypeD) -> Result<usize> {
    box_ad(m, d)?.homology_rank()
}

/// All generators of a complex whose names lie in `names`, as a vector.
pub fn vector_of(c: &ChainComplex, names: &BTreeSet<String>) -> Result<F2Vector> {
    let mut v = F2Vector::new();
    for n in names {
        v.toggle(
            c.index_of(n)
                .ok_or_else(|| Error::UnknownGenerator(n.clone()))?,
        );
    }
    Ok(v)
}
