//! Type-D structures, type-A modules, DD bimodules and string-labelled graphs
//! presenting type-A modules, all over the torus algebra.

mod text;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::f2core::F2Vector;
use crate::torus_algebra::{mul_basis, AlgebraElement, Basis, Idem};

pub use text::{parse_document, print_document, Structure};

/// Outcome of a validator: empty `failures` means the object is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub failures: Vec<String>,
}

impl Validation {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Named generators with idempotents, shared by every structure type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators<T> {
    names: Vec<String>,
    data: Vec<T>,
    index: HashMap<String, usize>,
}

impl<T> Default for Generators<T> {
    fn default() -> Self {
        Generators {
            names: Vec::new(),
            data: Vec::new(),
            index: HashMap::new(),
        }
    }
}

impl<T: Copy> Generators<T> {
    fn push(&mut self, name: &str, data: T) -> Result<usize> {
        if name.is_empty() || name.chars().any(char::is_whitespace) || name == "|" || name == "->" {
            return Err(Error::Structure(format!("invalid generator name `{name}`")));
        }
        if self.index.contains_key(name) {
            return Err(Error::Structure(format!("duplicate generator `{name}`")));
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        self.data.push(data);
        Ok(self.names.len() - 1)
    }

    fn lookup(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A type-D structure: `x -a-> y` means `delta(x)` contains `a (x) y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeD {
    pub name: String,
    gens: Generators<Idem>,
    arrows: BTreeSet<(usize, Basis, usize)>,
}

impl TypeD {
    pub fn new(name: &str) -> Self {
        TypeD {
            name: name.to_string(),
            gens: Generators::default(),
            arrows: BTreeSet::new(),
        }
    }

    pub fn add_gen(&mut self, name: &str, idem: Idem) -> Result<usize> {
        self.gens.push(name, idem)
    }

    /// Adds an arrow over F2: adding the same arrow twice removes it.
    pub fn toggle_arrow(&mut self, src: usize, label: Basis, tgt: usize) {
        let key = (src, label, tgt);
        if !self.arrows.remove(&key) {
            self.arrows.insert(key);
        }
    }

    pub fn add_arrow(&mut self, src: &str, label: Basis, tgt: &str) -> Result<()> {
        let (s, t) = (self.gens.lookup(src)?, self.gens.lookup(tgt)?);
        self.toggle_arrow(s, label, t);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen_name(&self, i: usize) -> &str {
        &self.gens.names[i]
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gens.names
    }

    pub fn idem(&self, i: usize) -> Idem {
        self.gens.data[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.gens.lookup(name)
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, Basis, usize)> + '_ {
        self.arrows.iter().copied()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn has_arrow(&self, src: usize, label: Basis, tgt: usize) -> bool {
        self.arrows.contains(&(src, label, tgt))
    }

    /// Outgoing arrows per generator, in sorted order.
    pub fn adjacency(&self) -> Vec<Vec<(Basis, usize)>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(s, a, t) in &self.arrows {
            adj[s].push((a, t));
        }
        adj
    }

    /// Length of the longest directed path, or `None` when a directed cycle exists.
    pub fn longest_path(&self) -> Option<usize> {
        longest_path(self.len(), self.arrows.iter().map(|&(s, _, t)| (s, t)))
    }

    pub fn has_idempotent_cycle(&self) -> bool {
        let edges = self
            .arrows
            .iter()
            .filter(|(_, a, _)| a.is_idempotent())
            .map(|&(s, _, t)| (s, t));
        longest_path(self.len(), edges).is_none()
    }

    /// Copy with generators renamed by `f`.
    pub fn renamed(&self, name: &str, f: impl Fn(&str) -> String) -> Result<TypeD> {
        let mut out = TypeD::new(name);
        for i in 0..self.len() {
            out.add_gen(&f(self.gen_name(i)), self.idem(i))?;
        }
        out.arrows = self.arrows.clone();
        Ok(out)
    }
}

/// Longest path length in a directed graph, `None` if it has a cycle.
pub(crate) fn longest_path(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Option<usize> {
    let mut adj = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (s, t) in edges {
        adj[s].push(t);
        indeg[t] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut depth = vec![0usize; n];
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &w in &adj[v] {
            depth[w] = depth[w].max(depth[v] + 1);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    (seen == n).then(|| depth.into_iter().max().unwrap_or(0))
}

/// Checks idempotent compatibility of every arrow and `delta^2 = 0`.
pub fn validate_typed(d: &TypeD) -> Validation {
    let mut failures = Vec::new();
    for (s, a, t) in d.arrows() {
        let (l, r) = a.idempotents();
        if d.idem(s) != l || d.idem(t) != r {
            failures.push(format!(
                "arrow {} -{a}-> {} joins {} to {} but {a} runs {l} to {r}",
                d.gen_name(s),
                d.gen_name(t),
                d.idem(s),
                d.idem(t)
            ));
        }
    }
    let adj = d.adjacency();
    for x in 0..d.len() {
        let mut sum: BTreeMap<usize, AlgebraElement> = BTreeMap::new();
        for &(a, y) in &adj[x] {
            for &(b, z) in &adj[y] {
                if let Some(p) = mul_basis(a, b) {
                    *sum.entry(z).or_default() += p.into();
                }
            }
        }
        for (z, coeff) in sum {
            if !coeff.is_zero() {
                failures.push(format!(
                    "delta^2({}) contains ({coeff}) {}",
                    d.gen_name(x),
                    d.gen_name(z)
                ));
            }
        }
    }
    Validation { failures }
}

/// Cancels every idempotent arrow between distinct generators, lexicographically.
pub fn reduce_typed(d: &TypeD) -> Result<TypeD> {
    reduce_typed_keeping(d, &[])
}

/// Like [`reduce_typed`] but never cancels an arrow touching a generator in `keep`.
pub fn reduce_typed_keeping(d: &TypeD, keep: &[&str]) -> Result<TypeD> {
    let v = validate_typed(d);
    if !v.ok() {
        return Err(Error::Structure(v.failures.join("; ")));
    }
    for k in keep {
        d.index_of(k)?;
    }
    let mut cur = d.clone();
    loop {
        let names = cur.gen_names();
        let pick = cur
            .arrows()
            .filter(|&(s, a, t)| a.is_idempotent() && s != t)
            .filter(|&(s, _, t)| {
                !keep.contains(&names[s].as_str()) && !keep.contains(&names[t].as_str())
            })
            .min_by(|p, q| (&names[p.0], &names[p.2]).cmp(&(&names[q.0], &names[q.2])));
        match pick {
            None => return Ok(cur),
            Some((x, _, y)) => cur = cancel_typed(&cur, x, y),
        }
    }
}

/// Removes the idempotent arrow `x -> y`, adding the zig-zag compositions.
fn cancel_typed(d: &TypeD, x: usize, y: usize) -> TypeD {
    let mut loop_sum = AlgebraElement::ZERO;
    for (s, a, t) in d.arrows() {
        if s == x && t == y && !a.is_idempotent() {
            loop_sum += a.into();
        }
    }
    // 1 + S + S^2 + ...; S is nilpotent since it consists of chords.
    let mut series = AlgebraElement::one();
    let mut power = AlgebraElement::one();
    for _ in 0..4 {
        power = crate::torus_algebra::mul(power, loop_sum);
        series += power;
    }
    let incoming: Vec<(usize, Basis)> = d
        .arrows()
        .filter(|&(s, _, t)| t == y && s != x && s != y)
        .map(|(s, a, _)| (s, a))
        .collect();
    let outgoing: Vec<(Basis, usize)> = d
        .arrows()
        .filter(|&(s, _, t)| s == x && t != x && t != y)
        .map(|(_, b, t)| (b, t))
        .collect();

    let mut arrows: BTreeSet<(usize, Basis, usize)> = d
        .arrows()
        .filter(|&(s, _, t)| s != x && s != y && t != x && t != y)
        .collect();
    for &(w, a) in &incoming {
        for &(b, z) in &outgoing {
            let prod =
                crate::torus_algebra::mul(crate::torus_algebra::mul(a.into(), series), b.into());
            for p in prod.terms() {
                let key = (w, p, z);
                if !arrows.remove(&key) {
                    arrows.insert(key);
                }
            }
        }
    }
    let mut out = TypeD::new(&d.name);
    let mut remap = vec![usize::MAX; d.len()];
    for (i, slot) in remap.iter_mut().enumerate() {
        if i != x && i != y {
            *slot = out
                .add_gen(d.gen_name(i), d.idem(i))
                .expect("names stay unique");
        }
    }
    out.arrows = arrows
        .into_iter()
        .map(|(s, a, t)| (remap[s], a, remap[t]))
        .collect();
    out
}

/// A (strictly unital, `m_1 = 0`) type-A module given by its operation table.
///
/// `horizon = None` means the table is complete. `Some(h)` means every operation
/// with at most `h` algebra inputs is listed, longer ones were not computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeA {
    pub name: String,
    gens: Generators<Idem>,
    ops: BTreeMap<(usize, Vec<Basis>), F2Vector>,
    horizon: Option<usize>,
}

impl TypeA {
    pub fn new(name: &str) -> Self {
        TypeA {
            name: name.to_string(),
            gens: Generators::default(),
            ops: BTreeMap::new(),
            horizon: None,
        }
    }

    pub fn add_gen(&mut self, name: &str, idem: Idem) -> Result<usize> {
        self.gens.push(name, idem)
    }

    /// Adds `y` to `m(x, inputs)` over F2.
    pub fn toggle_op(&mut self, x: usize, inputs: Vec<Basis>, y: usize) {
        let key = (x, inputs);
        let entry = self.ops.entry(key.clone()).or_default();
        entry.toggle(y);
        if entry.is_zero() {
            self.ops.remove(&key);
        }
    }

    pub fn add_op(&mut self, x: &str, inputs: &[Basis], y: &str) -> Result<()> {
        if inputs.is_empty() {
            return Err(Error::Structure(
                "operations need at least one algebra input".into(),
            ));
        }
        let (s, t) = (self.gens.lookup(x)?, self.gens.lookup(y)?);
        self.toggle_op(s, inputs.to_vec(), t);
        Ok(())
    }

    pub fn set_horizon(&mut self, h: Option<usize>) {
        self.horizon = h;
    }

    pub fn horizon(&self) -> Option<usize> {
        self.horizon
    }

    pub fn is_complete(&self) -> bool {
        self.horizon.is_none()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen_name(&self, i: usize) -> &str {
        &self.gens.names[i]
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gens.names
    }

    pub fn idem(&self, i: usize) -> Idem {
        self.gens.data[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.gens.lookup(name)
    }

    /// `m(x, inputs)` as a vector of generators. Unital: `m_2(x, i) = x` when idempotents match.
    pub fn m(&self, x: usize, inputs: &[Basis]) -> F2Vector {
        if let [b] = inputs {
            if let Some(i) = b.as_idem() {
                return if self.idem(x) == i {
                    F2Vector::singleton(x)
                } else {
                    F2Vector::new()
                };
            }
        }
        self.ops
            .get(&(x, inputs.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// `m(v, inputs)` extended linearly over a vector of generators.
    pub fn m_vec(&self, v: &F2Vector, inputs: &[Basis]) -> F2Vector {
        let mut out = F2Vector::new();
        for x in v.iter() {
            out.add_assign(&self.m(x, inputs));
        }
        out
    }

    /// Every stored operation as `(source, inputs, target)`.
    pub fn ops(&self) -> impl Iterator<Item = (usize, &[Basis], usize)> + '_ {
        self.ops
            .iter()
            .flat_map(|((x, w), ys)| ys.iter().map(move |y| (*x, w.as_slice(), y)))
    }

    pub fn op_count(&self) -> usize {
        self.ops.values().map(F2Vector::len).sum()
    }

    pub fn max_len(&self) -> usize {
        self.ops.keys().map(|(_, w)| w.len()).max().unwrap_or(0)
    }

    /// Input words of operations starting at `x`.
    pub fn words_from(&self, x: usize) -> impl Iterator<Item = &[Basis]> + '_ {
        self.ops
            .range((x, Vec::new())..)
            .take_while(move |((s, _), _)| *s == x)
            .map(|((_, w), _)| w.as_slice())
    }

    /// Restriction to one idempotent: the generators whose idempotent is `i`.
    pub fn gens_in(&self, i: Idem) -> Vec<usize> {
        (0..self.len()).filter(|&g| self.idem(g) == i).collect()
    }
}

/// Checks idempotent compatibility and the A-infinity relations.
///
/// Only input words that can carry a nonzero term are examined: concatenations of
/// two operation words and words obtained by splitting one input of an operation
/// into a product of two chords. Every other word has all terms zero.
pub fn validate_typea(m: &TypeA) -> Validation {
    let mut failures = Vec::new();
    for (x, w, y) in m.ops() {
        if let Err(e) = check_word_idems(m.idem(x), w, m.idem(y)) {
            failures.push(format!(
                "op {} | {} -> {}: {e}",
                m.gen_name(x),
                word_str(w),
                m.gen_name(y)
            ));
        }
        if w.iter().any(|b| b.is_idempotent()) {
            failures.push(format!(
                "op {} | {} has an idempotent input",
                m.gen_name(x),
                word_str(w)
            ));
        }
    }
    let limit = m.horizon().unwrap_or(usize::MAX);
    let mut candidates: BTreeSet<(usize, Vec<Basis>)> = BTreeSet::new();
    for (x, w, y) in m.ops() {
        for w2 in m.words_from(y) {
            let cat: Vec<Basis> = w.iter().chain(w2.iter()).copied().collect();
            if cat.len() <= limit {
                candidates.insert((x, cat));
            }
        }
        for (k, &b) in w.iter().enumerate() {
            for (p, q) in factorizations(b) {
                if w.len() < limit {
                    let mut split = w[..k].to_vec();
                    split.push(p);
                    split.push(q);
                    split.extend_from_slice(&w[k + 1..]);
                    candidates.insert((x, split));
                }
            }
        }
    }
    for (x, word) in candidates {
        let mut total = F2Vector::new();
        for i in 1..word.len() {
            let inner = m.m(x, &word[..i]);
            total.add_assign(&m.m_vec(&inner, &word[i..]));
        }
        for j in 0..word.len().saturating_sub(1) {
            if let Some(p) = mul_basis(word[j], word[j + 1]) {
                let mut merged = word[..j].to_vec();
                merged.push(p);
                merged.extend_from_slice(&word[j + 2..]);
                total.add_assign(&m.m(x, &merged));
            }
        }
        if !total.is_zero() {
            let names: Vec<&str> = total.iter().map(|g| m.gen_name(g)).collect();
            failures.push(format!(
                "A-infinity relation fails on ({}, {}): leftover {}",
                m.gen_name(x),
                word_str(&word),
                names.join(" + ")
            ));
        }
    }
    Validation { failures }
}

fn factorizations(b: Basis) -> Vec<(Basis, Basis)> {
    Basis::CHORDS
        .iter()
        .flat_map(|&p| Basis::CHORDS.iter().map(move |&q| (p, q)))
        .filter(|&(p, q)| mul_basis(p, q) == Some(b))
        .collect()
}

fn check_word_idems(start: Idem, w: &[Basis], end: Idem) -> std::result::Result<(), String> {
    let mut cur = start;
    for b in w {
        if b.left() != cur {
            return Err(format!("{b} cannot act on idempotent {cur}"));
        }
        cur = b.right();
    }
    if cur != end {
        return Err(format!(
            "word ends at {cur} but target has idempotent {end}"
        ));
    }
    Ok(())
}

pub(crate) fn word_str(w: &[Basis]) -> String {
    w.iter().map(|b| b.token()).collect::<Vec<_>>().join(" ")
}

/// A type-A module presented as a graph whose edges carry strings of chords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphTypeA {
    pub name: String,
    gens: Generators<Idem>,
    edges: Vec<(usize, Vec<Basis>, usize)>,
}

impl GraphTypeA {
    pub fn new(name: &str) -> Self {
        GraphTypeA {
            name: name.to_string(),
            gens: Generators::default(),
            edges: Vec::new(),
        }
    }

    pub fn add_gen(&mut self, name: &str, idem: Idem) -> Result<usize> {
        self.gens.push(name, idem)
    }

    pub fn add_edge(&mut self, src: &str, label: &[Basis], tgt: &str) -> Result<()> {
        let (s, t) = (self.gens.lookup(src)?, self.gens.lookup(tgt)?);
        self.push_edge(s, label.to_vec(), t)
    }

    pub fn push_edge(&mut self, s: usize, label: Vec<Basis>, t: usize) -> Result<()> {
        if label.is_empty() || label.iter().any(|b| b.is_idempotent()) {
            return Err(Error::Structure(format!(
                "edge label `{}` must be a nonempty chord string",
                word_str(&label)
            )));
        }
        check_word_idems(self.idem(s), &label, self.idem(t)).map_err(Error::Structure)?;
        self.edges.push((s, label, t));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen_name(&self, i: usize) -> &str {
        &self.gens.names[i]
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gens.names
    }

    pub fn idem(&self, i: usize) -> Idem {
        self.gens.data[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.gens.lookup(name)
    }

    pub fn edges(&self) -> &[(usize, Vec<Basis>, usize)] {
        &self.edges
    }

    pub fn is_acyclic(&self) -> bool {
        longest_path(self.len(), self.edges.iter().map(|(s, _, t)| (*s, *t))).is_some()
    }

    pub(crate) fn out_edges(&self) -> Vec<Vec<(&[Basis], usize)>> {
        let mut adj = vec![Vec::new(); self.len()];
        for (s, w, t) in &self.edges {
            adj[*s].push((w.as_slice(), *t));
        }
        adj
    }
}

/// Appends a chord to a greedily regrouped word.
pub(crate) fn push_regrouped(word: &mut Vec<Basis>, b: Basis) {
    match word.last().and_then(|&l| mul_basis(l, b)) {
        Some(p) => *word.last_mut().unwrap() = p,
        None => word.push(b),
    }
}

/// Expands a graph into its full operation table.
pub fn expand_graph(g: &GraphTypeA) -> Result<TypeA> {
    if !g.is_acyclic() {
        return Err(Error::NonBoundedModule(format!(
            "`{}` has a directed cycle, so its operations have unbounded length",
            g.name
        )));
    }
    expand_paths(g, None)
}

/// Expands a graph keeping only operations with at most `horizon` inputs.
pub fn expand_graph_truncated(g: &GraphTypeA, horizon: usize) -> Result<TypeA> {
    if g.is_acyclic() {
        return expand_graph(g);
    }
    expand_paths(g, Some(horizon))
}

fn expand_paths(g: &GraphTypeA, horizon: Option<usize>) -> Result<TypeA> {
    let mut m = TypeA::new(&g.name);
    for i in 0..g.len() {
        m.add_gen(g.gen_name(i), g.idem(i))?;
    }
    m.set_horizon(horizon);
    let adj = g.out_edges();
    let limit = horizon.unwrap_or(usize::MAX);
    for start in 0..g.len() {
        let mut stack: Vec<(usize, Vec<Basis>)> = vec![(start, Vec::new())];
        while let Some((v, word)) = stack.pop() {
            for &(label, t) in &adj[v] {
                let mut w = word.clone();
                for &b in label {
                    push_regrouped(&mut w, b);
                }
                if w.len() > limit {
                    continue;
                }
                m.toggle_op(start, w.clone(), t);
                stack.push((t, w));
            }
        }
    }
    Ok(m)
}

/// A DD bimodule: each arrow carries a left and a right algebra label.
///
/// The left side behaves as a left type-D structure. The right side is a right
/// type-D structure, so consecutive right labels multiply in reverse order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DDBimodule {
    pub name: String,
    gens: Generators<(Idem, Idem)>,
    arrows: BTreeSet<(usize, Basis, Basis, usize)>,
}

impl DDBimodule {
    pub fn new(name: &str) -> Self {
        DDBimodule {
            name: name.to_string(),
            gens: Generators::default(),
            arrows: BTreeSet::new(),
        }
    }

    pub fn add_gen(&mut self, name: &str, left: Idem, right: Idem) -> Result<usize> {
        self.gens.push(name, (left, right))
    }

    pub fn add_arrow(&mut self, src: &str, left: Basis, right: Basis, tgt: &str) -> Result<()> {
        let (s, t) = (self.gens.lookup(src)?, self.gens.lookup(tgt)?);
        let key = (s, left, right, t);
        if !self.arrows.remove(&key) {
            self.arrows.insert(key);
        }
        Ok(())
    }

    pub fn remove_arrow(&mut self, arrow: (usize, Basis, Basis, usize)) -> bool {
        self.arrows.remove(&arrow)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen_name(&self, i: usize) -> &str {
        &self.gens.names[i]
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gens.names
    }

    pub fn idems(&self, i: usize) -> (Idem, Idem) {
        self.gens.data[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.gens.lookup(name)
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, Basis, Basis, usize)> + '_ {
        self.arrows.iter().copied()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<(Basis, Basis, usize)>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(s, a, b, t) in &self.arrows {
            adj[s].push((a, b, t));
        }
        adj
    }

    pub fn longest_path(&self) -> Option<usize> {
        longest_path(self.len(), self.arrows.iter().map(|&(s, _, _, t)| (s, t)))
    }
}

/// Checks idempotents on both sides and the DD structure equation.
pub fn validate_dd(p: &DDBimodule) -> Validation {
    let mut failures = Vec::new();
    for (s, a, b, t) in p.arrows() {
        let ((ls, rs), (lt, rt)) = (p.idems(s), p.idems(t));
        let left_ok = ls == a.left() && lt == a.right();
        let right_ok = rs == b.right() && rt == b.left();
        if !left_ok || !right_ok {
            failures.push(format!(
                "arrow {} -({a},{b})-> {} has incompatible idempotents",
                p.gen_name(s),
                p.gen_name(t)
            ));
        }
    }
    let adj = p.adjacency();
    for x in 0..p.len() {
        let mut sum: BTreeMap<(usize, Basis, Basis), u8> = BTreeMap::new();
        for &(a1, b1, y) in &adj[x] {
            for &(a2, b2, z) in &adj[y] {
                if let (Some(l), Some(r)) = (mul_basis(a1, a2), mul_basis(b2, b1)) {
                    *sum.entry((z, l, r)).or_default() ^= 1;
                }
            }
        }
        for ((z, l, r), c) in sum {
            if c == 1 {
                failures.push(format!(
                    "delta^2({}) contains {l} (x) {} (x) {r}",
                    p.gen_name(x),
                    p.gen_name(z)
                ));
            }
        }
    }
    Validation { failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Basis::{R1, R12, R123, R2, R23, R3};
    use Idem::*;

    fn d_from(gens: &[(&str, Idem)], arrows: &[(&str, Basis, &str)]) -> TypeD {
        let mut d = TypeD::new("t");
        for (g, i) in gens {
            d.add_gen(g, *i).unwrap();
        }
        for (s, a, t) in arrows {
            d.add_arrow(s, *a, t).unwrap();
        }
        d
    }

    #[test]
    fn typed_examples() {
        assert!(validate_typed(&d_from(&[("m", I0)], &[])).ok());
        let bad = d_from(
            &[("x", I0), ("y", I1), ("z", I0)],
            &[("x", R1, "y"), ("y", R2, "z"), ("x", R12, "z")],
        );
        assert!(!validate_typed(&bad).ok());
        let twopaths = d_from(
            &[("x", I0), ("y", I1), ("w", I1), ("z", I0)],
            &[
                ("x", R1, "y"),
                ("y", R2, "z"),
                ("x", R3, "w"),
                ("w", R2, "z"),
            ],
        );
        assert!(!validate_typed(&twopaths).ok());
        let dead = d_from(
            &[("x", I1), ("y", I0), ("z", I1)],
            &[("x", R2, "y"), ("y", R1, "z")],
        );
        assert!(validate_typed(&dead).ok());
        let wrong_idem = d_from(&[("x", I1), ("y", I0)], &[("x", R1, "y")]);
        assert!(!validate_typed(&wrong_idem).ok());
    }

    #[test]
    fn reduce_examples() {
        let d = d_from(&[("x", I0), ("y", I0)], &[("x", Basis::I0, "y")]);
        assert!(reduce_typed(&d).unwrap().is_empty());
        // w -r1-> y, x -i1-> y, x -r2-> z  becomes  w -r12-> z.
        let d = d_from(
            &[("w", I0), ("x", I1), ("y", I1), ("z", I0)],
            &[("w", R1, "y"), ("x", Basis::I1, "y"), ("x", R2, "z")],
        );
        assert!(validate_typed(&d).ok());
        let r = reduce_typed(&d).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.has_arrow(r.index_of("w").unwrap(), R12, r.index_of("z").unwrap()));
        assert_eq!(reduce_typed(&r).unwrap(), r);
        let kept = reduce_typed_keeping(&d, &["x"]).unwrap();
        assert_eq!(kept, d);
    }

    #[test]
    fn typea_examples() {
        let mut m = TypeA::new("e");
        m.add_gen("a", I0).unwrap();
        assert!(validate_typea(&m).ok());

        let mut m = TypeA::new("r2");
        m.add_gen("a", I1).unwrap();
        m.add_gen("b", I0).unwrap();
        m.add_op("a", &[R2], "b").unwrap();
        assert!(validate_typea(&m).ok());

        let mut m = TypeA::new("broken");
        m.add_gen("a", I0).unwrap();
        m.add_gen("b", I1).unwrap();
        m.add_gen("c", I0).unwrap();
        m.add_op("a", &[R1], "b").unwrap();
        m.add_op("b", &[R2], "c").unwrap();
        assert!(!validate_typea(&m).ok());
        m.add_op("a", &[R12], "c").unwrap();
        assert!(validate_typea(&m).ok());
    }

    #[test]
    fn expand_examples() {
        let mut g = GraphTypeA::new("g");
        g.add_gen("a", I1).unwrap();
        g.add_gen("b", I0).unwrap();
        g.add_edge("a", &[R2], "b").unwrap();
        let m = expand_graph(&g).unwrap();
        assert_eq!(m.ops().collect::<Vec<_>>(), vec![(0, &[R2][..], 1)]);

        let mut g = GraphTypeA::new("g");
        g.add_gen("a", I1).unwrap();
        g.add_gen("b", I1).unwrap();
        g.add_gen("c", I1).unwrap();
        g.add_edge("a", &[R2, R1], "b").unwrap();
        g.add_edge("b", &[R2, R3], "c").unwrap();
        let m = expand_graph(&g).unwrap();
        assert!(m.m(0, &[R2, R123]).contains(2));
    }

    #[test]
    fn expansion_of_length_one_graph_is_identity() {
        let mut m = TypeA::new("m");
        m.add_gen("a", I1).unwrap();
        m.add_gen("b", I0).unwrap();
        m.add_gen("c", I0).unwrap();
        m.add_op("a", &[R2], "b").unwrap();
        m.add_op("a", &[R2], "c").unwrap();
        let mut g = GraphTypeA::new("m");
        for i in 0..m.len() {
            g.add_gen(m.gen_name(i), m.idem(i)).unwrap();
        }
        for (x, w, y) in m.ops() {
            g.push_edge(x, w.to_vec(), y).unwrap();
        }
        assert_eq!(expand_graph(&g).unwrap(), m);
    }

    #[test]
    fn cyclic_graph_is_unbounded() {
        let mut g = GraphTypeA::new("loop");
        g.add_gen("n", I0).unwrap();
        g.add_edge("n", &[R3, R2], "n").unwrap();
        assert!(matches!(expand_graph(&g), Err(Error::NonBoundedModule(_))));
        let m = expand_graph_truncated(&g, 5).unwrap();
        assert!(m.m(0, &[R3, R23, R23, R2]).contains(0));
        assert!(m.m(0, &[R3, R2]).contains(0));
        assert!(validate_typea(&m).ok(), "{:?}", validate_typea(&m));
    }

    #[test]
    fn dd_examples() {
        let mut p = DDBimodule::new("one");
        p.add_gen("p", I1, I0).unwrap();
        assert!(validate_dd(&p).ok());
    }

    #[test]
    fn longest_path_detects_cycles() {
        assert_eq!(longest_path(3, [(0, 1), (1, 2)].into_iter()), Some(2));
        assert_eq!(longest_path(2, [(0, 1), (1, 0)].into_iter()), None);
    }
}
