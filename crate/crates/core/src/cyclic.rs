//! The simplicial category `Δ` and the cyclic category `ΔC` as rewriting
//! systems, cyclic duality, and a harness that checks the (co)cyclic relations
//! on a concrete realization.
//!
//! Words are written in composition order: the last token acts first.

use std::fmt;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generators of `ΔC`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    /// `δ_i^n : n-1 → n`
    Coface(usize, usize),
    /// `σ_j^n : n+1 → n`
    Codegeneracy(usize, usize),
    /// `τ_n : n → n`
    Cocyclic(usize),
    /// `τ_n^{-1}`
    CocyclicInverse(usize),
}

/// Generators of `ΔC^op`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpGen {
    /// `d_i^n : n → n-1`
    Face(usize, usize),
    /// `s_j^n : n → n+1`
    Degeneracy(usize, usize),
    /// `t_n : n → n`
    Cyclic(usize),
}

pub trait Token: Copy + fmt::Debug + fmt::Display {
    fn src(&self) -> usize;
    fn tgt(&self) -> usize;
    /// Index bounds and `n ≥ 1` for faces.
    fn well_formed(&self) -> bool;
}

impl Token for Gen {
    fn src(&self) -> usize {
        match *self {
            Gen::Coface(_, n) => n - 1,
            Gen::Codegeneracy(_, n) => n + 1,
            Gen::Cocyclic(n) | Gen::CocyclicInverse(n) => n,
        }
    }
    fn tgt(&self) -> usize {
        match *self {
            Gen::Coface(_, n) | Gen::Codegeneracy(_, n) => n,
            Gen::Cocyclic(n) | Gen::CocyclicInverse(n) => n,
        }
    }
    fn well_formed(&self) -> bool {
        match *self {
            Gen::Coface(i, n) => n >= 1 && i <= n,
            Gen::Codegeneracy(j, n) => j <= n,
            _ => true,
        }
    }
}

impl Token for OpGen {
    fn src(&self) -> usize {
        match *self {
            OpGen::Face(_, n) | OpGen::Degeneracy(_, n) | OpGen::Cyclic(n) => n,
        }
    }
    fn tgt(&self) -> usize {
        match *self {
            OpGen::Face(_, n) => n - 1,
            OpGen::Degeneracy(_, n) => n + 1,
            OpGen::Cyclic(n) => n,
        }
    }
    fn well_formed(&self) -> bool {
        match *self {
            OpGen::Face(i, n) => n >= 1 && i <= n,
            OpGen::Degeneracy(j, n) => j <= n,
            OpGen::Cyclic(_) => true,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Coface(i, n) => write!(f, "delta_{i}^{n}"),
            Gen::Codegeneracy(j, n) => write!(f, "sigma_{j}^{n}"),
            Gen::Cocyclic(n) => write!(f, "tau_{n}"),
            Gen::CocyclicInverse(n) => write!(f, "tau_{n}^-1"),
        }
    }
}

impl fmt::Display for OpGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpGen::Face(i, n) => write!(f, "d_{i}^{n}"),
            OpGen::Degeneracy(j, n) => write!(f, "s_{j}^{n}"),
            OpGen::Cyclic(n) => write!(f, "t_{n}"),
        }
    }
}

pub type GeneratorWord = Vec<Gen>;

/// Source and target of a word, checking composability.
pub fn word_levels<G: Token>(w: &[G]) -> Result<Option<(usize, usize)>> {
    for g in w {
        if !g.well_formed() {
            return Err(Error::Index(format!("{g}")));
        }
    }
    for pair in w.windows(2) {
        if pair[0].src() != pair[1].tgt() {
            return Err(Error::Composition(format!(
                "{} has source {} but {} has target {}",
                pair[0],
                pair[0].src(),
                pair[1],
                pair[1].tgt()
            )));
        }
    }
    Ok(match (w.first(), w.last()) {
        (Some(a), Some(b)) => Some((b.src(), a.tgt())),
        _ => None,
    })
}

/// A morphism of `Δ` in epi–mono normal form
/// `δ_{i_1} ⋯ δ_{i_s} σ_{j_1} ⋯ σ_{j_t}` with `i_1 > ⋯ > i_s` and `j_1 < ⋯ < j_t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialMor {
    pub src: usize,
    pub tgt: usize,
    pub cofaces: Vec<usize>,
    pub codegeneracies: Vec<usize>,
}

impl SimplicialMor {
    pub fn identity(n: usize) -> Self {
        SimplicialMor { src: n, tgt: n, cofaces: vec![], codegeneracies: vec![] }
    }

    /// Normal form of an increasing map `[src] → [tgt]` given by its values.
    pub fn from_map(map: &[usize], tgt: usize) -> Self {
        let src = map.len() - 1;
        let cofaces = (0..=tgt).rev().filter(|v| !map.contains(v)).collect();
        let codegeneracies = (0..src).filter(|&j| map[j] == map[j + 1]).collect();
        SimplicialMor { src, tgt, cofaces, codegeneracies }
    }

    pub fn to_map(&self) -> Vec<usize> {
        let mut m: Vec<usize> = (0..=self.src).collect();
        for &j in self.codegeneracies.iter().rev() {
            for x in m.iter_mut() {
                if *x > j {
                    *x -= 1;
                }
            }
        }
        for &i in self.cofaces.iter().rev() {
            for x in m.iter_mut() {
                if *x >= i {
                    *x += 1;
                }
            }
        }
        m
    }

    pub fn word(&self) -> GeneratorWord {
        let mut w = Vec::new();
        let mut level = self.tgt;
        for &i in &self.cofaces {
            w.push(Gen::Coface(i, level));
            level -= 1;
        }
        for &j in &self.codegeneracies {
            w.push(Gen::Codegeneracy(j, level));
            level += 1;
        }
        w
    }
}

/// A morphism of `ΔC` as `φ ∘ τ_src^rot`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicMor {
    pub simplicial: SimplicialMor,
    pub rot: usize,
}

impl CyclicMor {
    pub fn identity(n: usize) -> Self {
        CyclicMor { simplicial: SimplicialMor::identity(n), rot: 0 }
    }

    pub fn src(&self) -> usize {
        self.simplicial.src
    }

    pub fn tgt(&self) -> usize {
        self.simplicial.tgt
    }

    pub fn is_identity(&self) -> bool {
        self.rot == 0 && self.simplicial.cofaces.is_empty() && self.simplicial.codegeneracies.is_empty()
    }

    /// A word whose normal form is `self`.
    pub fn word(&self) -> GeneratorWord {
        let mut w = self.simplicial.word();
        w.extend(std::iter::repeat(Gen::Cocyclic(self.src())).take(self.rot));
        w
    }
}

impl fmt::Display for CyclicMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id_{}", self.src());
        }
        let parts: Vec<String> = self.word().iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn apply_simplicial(g: Gen, map: &mut [usize]) {
    match g {
        Gen::Coface(i, _) => {
            for x in map.iter_mut() {
                if *x >= i {
                    *x += 1;
                }
            }
        }
        Gen::Codegeneracy(j, _) => {
            for x in map.iter_mut() {
                if *x > j {
                    *x -= 1;
                }
            }
        }
        _ => unreachable!(),
    }
}

/// `τ_m ∘ g = g' ∘ τ^e` for a simplicial generator `g` with target `m`.
fn push_tau(g: Gen) -> (Gen, usize) {
    match g {
        Gen::Coface(0, n) => (Gen::Coface(n, n), 0),
        Gen::Coface(i, n) => (Gen::Coface(i - 1, n), 1),
        Gen::Codegeneracy(0, n) => (Gen::Codegeneracy(n, n), 2),
        Gen::Codegeneracy(i, n) => (Gen::Codegeneracy(i - 1, n), 1),
        _ => unreachable!(),
    }
}

/// Rewrites a composable word into its normal form.
pub fn normalize(w: &[Gen]) -> Result<CyclicMor> {
    let Some((_, tgt)) = word_levels(w)? else {
        return Err(Error::Composition("empty word has no level; use CyclicMor::identity".into()));
    };
    // state: φ ∘ τ^k where φ is stored by its values
    let mut map: Vec<usize> = (0..=tgt).collect();
    let mut k = 0usize;
    for &g in w {
        match g {
            Gen::Cocyclic(n) => k = (k + 1) % (n + 1),
            Gen::CocyclicInverse(n) => k = (k + n) % (n + 1),
            _ => {
                let mut cur = g;
                let mut e = 0usize;
                let lo = g.src();
                for _ in 0..k {
                    let (next, extra) = push_tau(cur);
                    cur = next;
                    e += extra;
                }
                // map: values on [level]; precompose with cur: [lo] → [level]
                let mut inner: Vec<usize> = (0..=lo).collect();
                apply_simplicial(cur, &mut inner);
                map = inner.iter().map(|&x| map[x]).collect();
                k = e % (lo + 1);
            }
        }
    }
    Ok(CyclicMor { simplicial: SimplicialMor::from_map(&map, tgt), rot: k })
}

/// Normal form of a possibly empty word at a known level.
pub fn normalize_at(w: &[Gen], level: usize) -> Result<CyclicMor> {
    if w.is_empty() {
        Ok(CyclicMor::identity(level))
    } else {
        normalize(w)
    }
}

pub fn compose(f: &CyclicMor, g: &CyclicMor) -> Result<CyclicMor> {
    if f.src() != g.tgt() {
        return Err(Error::Composition(format!("source {} vs target {}", f.src(), g.tgt())));
    }
    let mut w = f.word();
    w.extend(g.word());
    normalize_at(&w, g.src())
}

/// Cyclic duality `L : ΔC^op → ΔC` on one generator.
pub fn dual_l(g: OpGen) -> GeneratorWord {
    match g {
        OpGen::Face(i, n) if i < n => vec![Gen::Codegeneracy(i, n - 1)],
        OpGen::Face(_, n) => vec![Gen::Codegeneracy(0, n - 1), Gen::CocyclicInverse(n)],
        OpGen::Degeneracy(j, n) => vec![Gen::Coface(j + 1, n + 1)],
        OpGen::Cyclic(n) => vec![Gen::CocyclicInverse(n)],
    }
}

pub fn dual_l_word(w: &[OpGen]) -> GeneratorWord {
    w.iter().flat_map(|&g| dual_l(g)).collect()
}

/// `L^op: ΔC → ΔC^op` on a generator, as a word in composition order.
/// `τ_n^{-1}` has no `ΔC^op` generator of its own and becomes `t_n^n`.
pub fn dual_l_op(g: Gen) -> Vec<OpGen> {
    match g {
        Gen::Coface(i, n) if i < n => vec![OpGen::Degeneracy(i, n - 1)],
        Gen::Coface(_, n) => {
            let mut w = vec![OpGen::Cyclic(n); n];
            w.push(OpGen::Degeneracy(0, n - 1));
            w
        }
        Gen::Codegeneracy(j, n) => vec![OpGen::Face(j + 1, n + 1)],
        Gen::Cocyclic(n) => vec![OpGen::Cyclic(n); n],
        Gen::CocyclicInverse(n) => vec![OpGen::Cyclic(n)],
    }
}

pub fn dual_l_op_word(w: &[Gen]) -> Vec<OpGen> {
    w.iter().flat_map(|&g| dual_l_op(g)).collect()
}

/// One instance of a defining relation, `lhs = rhs` as words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance<G> {
    /// Relation number: 1–8 cocyclic, 9–16 cyclic.
    pub id: u8,
    pub lhs: Vec<G>,
    pub rhs: Vec<G>,
    /// Level of the source object.
    pub level: usize,
}

impl<G: Token> RelationInstance<G> {
    pub fn label(&self) -> String {
        let show = |w: &[G]| {
            if w.is_empty() {
                format!("id_{}", self.level)
            } else {
                w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
            }
        };
        format!("({}) {} = {}", self.id, show(&self.lhs), show(&self.rhs))
    }

    /// Largest level touched by either side.
    pub fn max_level(&self) -> usize {
        self.lhs
            .iter()
            .chain(&self.rhs)
            .flat_map(|g| [g.src(), g.tgt()])
            .chain([self.level])
            .max()
            .unwrap_or(self.level)
    }
}

use Gen::{Codegeneracy as Sg, Coface as Dl, Cocyclic as Tau};

/// All instances of the cocyclic relations touching only levels `≤ n_max`.
pub fn cocyclic_relations(n_max: usize) -> Vec<RelationInstance<Gen>> {
    let mut out = Vec::new();
    let mut push = |id, lhs: Vec<Gen>, rhs: Vec<Gen>, level| {
        let r = RelationInstance { id, lhs, rhs, level };
        if r.max_level() <= n_max {
            out.push(r);
        }
    };
    for n in 0..=n_max {
        // δ_j^{n+1} δ_i^n = δ_i^{n+1} δ_{j-1}^n on n-1 → n+1
        if n >= 1 {
            for j in 1..=n + 1 {
                for i in 0..j {
                    push(1, vec![Dl(j, n + 1), Dl(i, n)], vec![Dl(i, n + 1), Dl(j - 1, n)], n - 1);
                }
            }
        }
        // σ_j^n σ_i^{n+1} = σ_i^n σ_{j+1}^{n+1} on n+2 → n
        for j in 0..=n {
            for i in 0..=j {
                push(2, vec![Sg(j, n), Sg(i, n + 1)], vec![Sg(i, n), Sg(j + 1, n + 1)], n + 2);
            }
        }
        // σ_j^n δ_i^{n+1} on n → n
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = vec![Sg(j, n), Dl(i, n + 1)];
                let rhs = if i < j {
                    vec![Dl(i, n), Sg(j - 1, n - 1)]
                } else if i == j || i == j + 1 {
                    vec![]
                } else {
                    vec![Dl(i - 1, n), Sg(j, n - 1)]
                };
                push(3, lhs, rhs, n);
            }
        }
        if n >= 1 {
            for i in 1..=n {
                push(4, vec![Tau(n), Dl(i, n)], vec![Dl(i - 1, n), Tau(n - 1)], n - 1);
            }
            push(5, vec![Tau(n), Dl(0, n)], vec![Dl(n, n)], n - 1);
            for i in 1..=n {
                push(6, vec![Tau(n), Sg(i, n)], vec![Sg(i - 1, n), Tau(n + 1)], n + 1);
            }
        }
        push(7, vec![Tau(n), Sg(0, n)], vec![Sg(n, n), Tau(n + 1), Tau(n + 1)], n + 1);
        push(8, vec![Tau(n); n + 1], vec![], n);
    }
    out
}

/// All instances of the cyclic relations touching only levels `≤ n_max`.
pub fn cyclic_relations(n_max: usize) -> Vec<RelationInstance<OpGen>> {
    use OpGen::{Cyclic as T, Degeneracy as S, Face as D};
    let mut out = Vec::new();
    let mut push = |id, lhs: Vec<OpGen>, rhs: Vec<OpGen>, level| {
        let r = RelationInstance { id, lhs, rhs, level };
        if r.max_level() <= n_max {
            out.push(r);
        }
    };
    for n in 0..=n_max {
        if n >= 1 {
            for j in 1..=n + 1 {
                for i in 0..j {
                    push(9, vec![D(i, n), D(j, n + 1)], vec![D(j - 1, n), D(i, n + 1)], n + 1);
                }
            }
        }
        for j in 0..=n {
            for i in 0..=j {
                push(10, vec![S(i, n + 1), S(j, n)], vec![S(j + 1, n + 1), S(i, n)], n);
            }
        }
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = vec![D(i, n + 1), S(j, n)];
                let rhs = if i < j {
                    vec![S(j - 1, n - 1), D(i, n)]
                } else if i == j || i == j + 1 {
                    vec![]
                } else {
                    vec![S(j, n - 1), D(i - 1, n)]
                };
                push(11, lhs, rhs, n);
            }
        }
        if n >= 1 {
            for i in 1..=n {
                push(12, vec![D(i, n), T(n)], vec![T(n - 1), D(i - 1, n)], n);
            }
            push(13, vec![D(0, n), T(n)], vec![D(n, n)], n);
            for i in 1..=n {
                push(14, vec![S(i, n), T(n)], vec![T(n + 1), S(i - 1, n)], n);
            }
        }
        push(15, vec![S(0, n), T(n)], vec![T(n + 1), T(n + 1), S(n, n)], n);
        push(16, vec![T(n); n + 1], vec![], n);
    }
    out
}

/// A concrete (co)cyclic set: images of the generators on a carrier.
pub trait Realization<G: Token> {
    type Elem: Clone;

    fn apply(&self, g: G, x: &Self::Elem) -> Result<Self::Elem>;

    /// A random carrier element at `level`.
    fn sample(&self, level: usize, rng: &mut dyn RngCore) -> Self::Elem;

    /// The equality oracle.
    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;

    /// Text shown as a failure witness.
    fn render(&self, _x: &Self::Elem) -> String {
        String::new()
    }

    /// Content hash of what the oracle sees, for failure reports.
    fn digest(&self, _x: &Self::Elem) -> Option<String> {
        None
    }
}

/// Applies a word, last token first.
pub fn act_word<G: Token, R: Realization<G> + ?Sized>(r: &R, w: &[G], x: &R::Elem) -> Result<R::Elem> {
    word_levels(w)?;
    let mut cur = x.clone();
    for &g in w.iter().rev() {
        cur = r.apply(g, &cur)?;
    }
    Ok(cur)
}

/// Action of a normalized morphism of `ΔC`.
pub fn act<R: Realization<Gen> + ?Sized>(r: &R, m: &CyclicMor, x: &R::Elem) -> Result<R::Elem> {
    act_word(r, &m.word(), x)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation: u8,
    pub instance: String,
    pub sample: usize,
    pub witness: String,
    pub lhs_digest: Option<String>,
    pub rhs_digest: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    /// `(instance label, samples checked, samples passed)`
    pub instances: Vec<(String, usize, usize)>,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn checked(&self) -> usize {
        self.instances.iter().map(|x| x.1).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: RelationReport) {
        self.instances.extend(other.instances);
        self.failures.extend(other.failures);
    }

    pub fn failed_relations(&self) -> Vec<u8> {
        let mut ids: Vec<u8> = self.failures.iter().map(|f| f.relation).collect();
        ids.sort();
        ids.dedup();
        ids
    }
}

/// Checks every relation instance against `samples` carrier elements each.
/// Evaluation errors count as failures.
pub fn check_relations<G: Token, R: Realization<G> + ?Sized>(
    r: &R,
    relations: &[RelationInstance<G>],
    samples: usize,
    rng: &mut dyn RngCore,
) -> RelationReport {
    let mut report = RelationReport::default();
    for rel in relations {
        let mut ok = 0;
        for s in 0..samples {
            let x = r.sample(rel.level, rng);
            let verdict = act_word(r, &rel.lhs, &x)
                .and_then(|a| act_word(r, &rel.rhs, &x).map(|b| (a, b)))
                .and_then(|(a, b)| r.same(&a, &b).map(|same| (same, a, b)));
            match verdict {
                Ok((true, ..)) => ok += 1,
                Ok((false, a, b)) => report.failures.push(RelationFailure {
                    relation: rel.id,
                    instance: rel.label(),
                    sample: s,
                    witness: r.render(&x),
                    lhs_digest: r.digest(&a),
                    rhs_digest: r.digest(&b),
                }),
                Err(e) => report.failures.push(RelationFailure {
                    relation: rel.id,
                    instance: rel.label(),
                    sample: s,
                    witness: format!("{e}; input {}", r.render(&x)),
                    ..Default::default()
                }),
            }
        }
        report.instances.push((rel.label(), samples, ok));
    }
    report
}

/// `ΔC` acting on itself: a carrier element at level `n` is a morphism into
/// `n`, and generators act by post-composition.
pub struct Yoneda {
    /// Sampled morphisms have source `≤ max_src`.
    pub max_src: usize,
    pub word_len: usize,
}

impl Realization<Gen> for Yoneda {
    type Elem = CyclicMor;

    fn apply(&self, g: Gen, x: &CyclicMor) -> Result<CyclicMor> {
        let mut w = vec![g];
        w.extend(x.word());
        normalize_at(&w, x.src())
    }

    fn sample(&self, level: usize, rng: &mut dyn RngCore) -> CyclicMor {
        random_word_into(level, self.max_src, self.word_len, rng)
    }

    fn same(&self, a: &CyclicMor, b: &CyclicMor) -> Result<bool> {
        Ok(a == b)
    }

    fn render(&self, x: &CyclicMor) -> String {
        x.to_string()
    }
}

/// A random morphism into `level` built from a random word, levels ≤ `cap`.
pub fn random_word_into(level: usize, cap: usize, len: usize, rng: &mut dyn RngCore) -> CyclicMor {
    let w = random_word(level, cap.max(level), len, rng);
    normalize_at(&w, level).expect("random words are composable")
}

/// A random composable word with target `tgt`, all levels `≤ cap`.
pub fn random_word(tgt: usize, cap: usize, len: usize, rng: &mut dyn RngCore) -> GeneratorWord {
    let mut w = Vec::with_capacity(len);
    let mut level = tgt;
    let pick = |rng: &mut dyn RngCore, k: usize| (rng.next_u32() as usize) % k;
    for _ in 0..len {
        // the next token (acting earlier) has target `level`
        let g = loop {
            match pick(rng, 4) {
                0 if level >= 1 => break Gen::Coface(pick(rng, level + 1), level),
                1 if level < cap => break Gen::Codegeneracy(pick(rng, level + 1), level),
                2 => break Gen::Cocyclic(level),
                3 => break Gen::CocyclicInverse(level),
                _ => {}
            }
        };
        level = g.src();
        w.push(g);
    }
    w
}
