//! The geometric (co)cyclic operators on string links and their cyclic
//! duals, as constructions on event words.
//!
//! A string link at level `n` has `n + 1` upward components, component `k`
//! running from bottom slot `k` to top slot `k`. "Behind" means every
//! crossing with the moved strand has it underneath.

use rand::RngCore;

use crate::cyclic::{act_word, dual_l, dual_l_op, Gen, OpGen, Realization};
use crate::algebra::{text_digest, Laurent, Matrix};
use crate::error::{Error, Result};
use crate::repcat::{evaluate, KauffmanModel};
use crate::tangle::{
    is_string_link, linking_matrix, LinkingMatrix, print, random_string_link, slice_components, DiagramType, Event, Side, SlicedDiagram,
    StringLinkParams,
};

/// A diagram known to be a string link, with its level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringLinkClass {
    pub diagram: SlicedDiagram,
    pub n: usize,
}

impl StringLinkClass {
    pub fn new(diagram: SlicedDiagram) -> Result<Self> {
        let k = diagram.width_in();
        if k == 0 || !is_string_link(&diagram, k) {
            return Err(Error::Boundary("not a string link with at least one component".into()));
        }
        Ok(StringLinkClass { diagram, n: k - 1 })
    }

    pub fn identity(n: usize) -> Self {
        StringLinkClass { diagram: SlicedDiagram::identity(n + 1), n }
    }

    pub fn components(&self) -> usize {
        self.n + 1
    }

    pub fn text(&self) -> String {
        print(DiagramType::StringLink(self.n + 1), &self.diagram)
    }
}

/// Switches for deliberately wrong constructions. The default is the
/// correct build; every other setting is a mutation the relation suites
/// are expected to catch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Conventions {
    /// The rotation detours pass behind instead of in front.
    pub rotate_behind: bool,
    /// The merge arc runs in front.
    pub merge_over: bool,
    /// The merge joins the bottom of the left component to the top of the right.
    pub merge_reversed: bool,
    /// The inserted component runs in front.
    pub insert_over: bool,
    /// The second copy of a duplicated component gets an extra negative curl.
    pub duplicate_twisted: bool,
}

impl Conventions {
    /// Named mutations used by the non-vacuity checks.
    pub fn mutations() -> Vec<(&'static str, Conventions)> {
        let d = Conventions::default();
        vec![
            ("rotation behind", Conventions { rotate_behind: true, ..d }),
            ("merge in front", Conventions { merge_over: true, ..d }),
            ("merge reversed", Conventions { merge_reversed: true, ..d }),
            ("insert in front", Conventions { insert_over: true, ..d }),
            ("twisted duplicate", Conventions { duplicate_twisted: true, ..d }),
        ]
    }
}

fn cross(over_left: bool, p: usize) -> Event {
    if over_left {
        Event::CrossPos(p)
    } else {
        Event::CrossNeg(p)
    }
}

/// Threads a new strand through `d`. It starts in gap `bottom` of the first
/// slice, is pushed right whenever an event straddles it, and is finally
/// carried to gap `top` of the last slice. `over` picks which side of every
/// crossing the new strand takes. Returns the events and the new strand's
/// bottom boundary.
fn thread_strand(d: &SlicedDiagram, bottom: usize, top: usize, up: bool, over: bool) -> Result<SlicedDiagram> {
    if bottom > d.width_in() || top > d.width_out() {
        return Err(Error::Index(format!("gap {bottom}/{top} outside widths {}/{}", d.width_in(), d.width_out())));
    }
    // the new strand moving right is the bottom-left strand of the crossing
    let pass_right = |p: usize| cross(over, p);
    let pass_left = |p: usize| cross(!over, p);
    let mut g = bottom;
    let mut out = Vec::with_capacity(d.events().len() + 8);
    for e in d.events() {
        let p = e.pos();
        match *e {
            Event::CrossPos(_) | Event::CrossNeg(_) => {
                if g == p + 1 {
                    out.push(pass_right(p + 1));
                    g = p + 2;
                }
                out.push(e.with_pos(if g <= p { p + 1 } else { p }));
            }
            Event::Cap(..) => {
                if g == p + 1 {
                    out.push(pass_right(p + 1));
                    g = p + 2;
                }
                if g <= p {
                    out.push(e.with_pos(p + 1));
                } else {
                    out.push(e.with_pos(p));
                    g -= 2;
                }
            }
            Event::Cup(..) => {
                if g <= p {
                    out.push(e.with_pos(p + 1));
                } else {
                    out.push(e.with_pos(p));
                    g += 2;
                }
            }
        }
    }
    while g > top {
        out.push(pass_left(g - 1));
        g -= 1;
    }
    while g < top {
        out.push(pass_right(g));
        g += 1;
    }
    let mut up_in = d.up_in().to_vec();
    up_in.insert(bottom, up);
    SlicedDiagram::new(up_in, out)
}

/// `δ_i^n`: a trivial component inserted from behind between components
/// `i-1` and `i`.
pub fn insert_trivial(t: &StringLinkClass, i: usize) -> Result<StringLinkClass> {
    insert_trivial_with(t, i, Conventions::default())
}

pub fn insert_trivial_with(t: &StringLinkClass, i: usize, c: Conventions) -> Result<StringLinkClass> {
    if i > t.n + 1 {
        return Err(Error::Index(format!("coface index {i} at level {}", t.n + 1)));
    }
    let d = thread_strand(&t.diagram, i, i, true, c.insert_over)?;
    Ok(StringLinkClass { diagram: d, n: t.n + 1 })
}

/// `σ_j^n`: components `j` and `j+1` joined from behind, the top of `j` to
/// the bottom of `j+1`.
pub fn merge_behind(t: &StringLinkClass, j: usize) -> Result<StringLinkClass> {
    merge_behind_with(t, j, Conventions::default())
}

pub fn merge_behind_with(t: &StringLinkClass, j: usize, c: Conventions) -> Result<StringLinkClass> {
    if t.n == 0 || j + 1 > t.n {
        return Err(Error::Index(format!("codegeneracy index {j} at level {}", t.n.saturating_sub(1))));
    }
    let events = if !c.merge_reversed {
        // a down strand in the corridor between j and j+1, cupped onto the
        // bottom of j+1 and capped onto the top of j
        let u = thread_strand(&t.diagram, j + 1, j + 1, false, c.merge_over)?;
        let mut ev = vec![Event::Cup(j + 1, Side::R)];
        ev.extend_from_slice(u.events());
        ev.push(Event::Cap(j, Side::L));
        ev
    } else {
        // the top of j+1 joined to the bottom of j
        let u = thread_strand(&t.diagram, j + 1, j + 2, false, c.merge_over)?;
        let mut ev = vec![Event::Cup(j, Side::L)];
        ev.extend_from_slice(u.events());
        ev.push(Event::Cap(j + 1, Side::L));
        ev
    };
    let up_in = vec![true; t.n];
    let d = SlicedDiagram::new(up_in, events)?;
    StringLinkClass::new(d).map_err(|_| Error::Convention("merge did not produce a string link".into()))
}

/// The braid carrying the strand at slot `from` to slot `to` on `k` upward
/// strands, passing under (or over) the others.
fn carry(from: usize, to: usize, over: bool) -> Vec<Event> {
    if from <= to {
        (from..to).map(|q| cross(over, q)).collect()
    } else {
        (to..from).rev().map(|q| cross(!over, q)).collect()
    }
}

/// `τ_n`: conjugation moving component 0 to slot `n`. The detours pass in
/// front: inserted and merging strands run behind everything, so the
/// rotation arcs must sit on the other side for `τ_n δ_i = δ_{i-1} τ_{n-1}`.
pub fn rotate_back(t: &StringLinkClass) -> Result<StringLinkClass> {
    rotate_back_with(t, Conventions::default())
}

pub fn rotate_back_with(t: &StringLinkClass, c: Conventions) -> Result<StringLinkClass> {
    if t.n == 0 {
        return Ok(t.clone());
    }
    let n = t.n;
    let mut ev = carry(n, 0, !c.rotate_behind);
    ev.extend_from_slice(t.diagram.events());
    ev.extend(carry(0, n, !c.rotate_behind));
    let d = SlicedDiagram::new(vec![true; n + 1], ev)?;
    Ok(StringLinkClass { diagram: d, n })
}

/// `t_n`: the inverse conjugation, component `n` moved to slot 0.
pub fn rotate_front(t: &StringLinkClass) -> Result<StringLinkClass> {
    rotate_front_with(t, Conventions::default())
}

pub fn rotate_front_with(t: &StringLinkClass, c: Conventions) -> Result<StringLinkClass> {
    if t.n == 0 {
        return Ok(t.clone());
    }
    let n = t.n;
    let mut ev = carry(0, n, !c.rotate_behind);
    ev.extend_from_slice(t.diagram.events());
    ev.extend(carry(n, 0, !c.rotate_behind));
    let d = SlicedDiagram::new(vec![true; n + 1], ev)?;
    Ok(StringLinkClass { diagram: d, n })
}

/// `d_i^n`: component `i` removed.
pub fn delete(t: &StringLinkClass, i: usize) -> Result<StringLinkClass> {
    if t.n == 0 || i > t.n {
        return Err(Error::Index(format!("face index {i} at level {}", t.n)));
    }
    let d = delete_component(&t.diagram, i)?;
    Ok(StringLinkClass { diagram: d, n: t.n - 1 })
}

fn delete_component(d: &SlicedDiagram, comp: usize) -> Result<SlicedDiagram> {
    let comps = slice_components(d);
    let shift = |s: usize, p: usize| p - comps[s][..p].iter().filter(|&&c| c == comp).count();
    let mut out = Vec::new();
    for (s, e) in d.events().iter().enumerate() {
        let p = e.pos();
        let on = match e {
            Event::Cup(..) => comps[s + 1][p] == comp,
            _ => comps[s][p] == comp || comps[s][p + 1] == comp,
        };
        if !on {
            out.push(e.with_pos(shift(s, p)));
        }
    }
    let up_in: Vec<bool> = d.up_in().iter().zip(&comps[0]).filter(|(_, &c)| c != comp).map(|(u, _)| *u).collect();
    SlicedDiagram::new(up_in, out)
}

/// `s_j^n`: blackboard 2-cable of component `j`; the left copy becomes `j`.
pub fn duplicate(t: &StringLinkClass, j: usize) -> Result<StringLinkClass> {
    duplicate_with(t, j, Conventions::default())
}

pub fn duplicate_with(t: &StringLinkClass, j: usize, c: Conventions) -> Result<StringLinkClass> {
    if j > t.n {
        return Err(Error::Index(format!("degeneracy index {j} at level {}", t.n)));
    }
    let mut d = cable(&t.diagram, j)?;
    if c.duplicate_twisted {
        let k = t.n + 2;
        let curl = crate::tangle::kink(k, j + 1, false);
        d = d.compose(&curl)?;
    }
    Ok(StringLinkClass { diagram: d, n: t.n + 1 })
}

fn cable(d: &SlicedDiagram, comp: usize) -> Result<SlicedDiagram> {
    let comps = slice_components(d);
    let pos = |s: usize, p: usize| p + comps[s][..p].iter().filter(|&&c| c == comp).count();
    let mut out = Vec::new();
    for (s, e) in d.events().iter().enumerate() {
        let p = e.pos();
        let q = pos(s, p);
        match *e {
            Event::CrossPos(_) | Event::CrossNeg(_) => {
                let (a, b) = (comps[s][p] == comp, comps[s][p + 1] == comp);
                match (a, b) {
                    (false, false) => out.push(e.with_pos(q)),
                    (true, false) => out.extend([e.with_pos(q + 1), e.with_pos(q)]),
                    (false, true) => out.extend([e.with_pos(q), e.with_pos(q + 1)]),
                    (true, true) => {
                        out.extend([e.with_pos(q + 1), e.with_pos(q), e.with_pos(q + 2), e.with_pos(q + 1)])
                    }
                }
            }
            Event::Cap(..) => {
                if comps[s][p] == comp {
                    out.extend([e.with_pos(q + 1), e.with_pos(q)]);
                } else {
                    out.push(e.with_pos(q));
                }
            }
            Event::Cup(..) => {
                if comps[s + 1][p] == comp {
                    out.extend([e.with_pos(q), e.with_pos(q + 1)]);
                } else {
                    out.push(e.with_pos(q));
                }
            }
        }
    }
    let mut up_in = Vec::new();
    for (u, &c) in d.up_in().iter().zip(&comps[0]) {
        up_in.push(*u);
        if c == comp {
            up_in.push(*u);
        }
    }
    SlicedDiagram::new(up_in, out)
}

/// A cocyclic generator applied with the given conventions.
pub fn apply_gen(g: Gen, t: &StringLinkClass, c: Conventions) -> Result<StringLinkClass> {
    match g {
        Gen::Coface(i, _) => insert_trivial_with(t, i, c),
        Gen::Codegeneracy(j, _) => merge_behind_with(t, j, c),
        Gen::Cocyclic(_) => rotate_back_with(t, c),
        Gen::CocyclicInverse(_) => rotate_front_with(t, c),
    }
}

/// A cyclic generator applied with the given conventions.
pub fn apply_opgen(g: OpGen, t: &StringLinkClass, c: Conventions) -> Result<StringLinkClass> {
    match g {
        OpGen::Face(i, _) => delete(t, i),
        OpGen::Degeneracy(j, _) => duplicate_with(t, j, c),
        OpGen::Cyclic(_) => rotate_front_with(t, c),
    }
}

/// Names of the dual operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualOp {
    /// `d̃_i`, from the cocyclic operators through `L`.
    Face,
    Degeneracy,
    Cyclic,
    /// `δ̃_i`, from the cyclic operators through `L^op`.
    Coface,
    Codegeneracy,
    Cocyclic,
}

impl DualOp {
    pub fn all() -> [DualOp; 6] {
        [DualOp::Face, DualOp::Degeneracy, DualOp::Cyclic, DualOp::Coface, DualOp::Codegeneracy, DualOp::Cocyclic]
    }

    pub fn parse(s: &str) -> Option<DualOp> {
        Some(match s {
            "~d" => DualOp::Face,
            "~s" => DualOp::Degeneracy,
            "~t" => DualOp::Cyclic,
            "~delta" => DualOp::Coface,
            "~sigma" => DualOp::Codegeneracy,
            "~tau" => DualOp::Cocyclic,
            _ => return None,
        })
    }

    /// Level of the source for a given input level, and index bounds.
    pub fn valid(self, n: usize, idx: usize) -> bool {
        match self {
            DualOp::Face => n >= 1 && idx <= n,
            DualOp::Degeneracy => idx <= n,
            DualOp::Cyclic | DualOp::Cocyclic => true,
            DualOp::Coface => idx <= n + 1,
            DualOp::Codegeneracy => n >= 1 && idx < n,
        }
    }
}

/// Dual operator through the generic route: `L` (or `L^op`) followed by the
/// primal operators.
pub fn dual_generic(op: DualOp, t: &StringLinkClass, idx: usize) -> Result<StringLinkClass> {
    let n = t.n;
    if !op.valid(n, idx) {
        return Err(Error::Index(format!("{op:?} index {idx} at level {n}")));
    }
    let c = Conventions::default();
    match op {
        DualOp::Face | DualOp::Degeneracy | DualOp::Cyclic => {
            let g = match op {
                DualOp::Face => OpGen::Face(idx, n),
                DualOp::Degeneracy => OpGen::Degeneracy(idx, n),
                _ => OpGen::Cyclic(n),
            };
            act_word(&Cocyclic { conv: c }, &dual_l(g), t)
        }
        _ => {
            let g = match op {
                DualOp::Coface => Gen::Coface(idx, n + 1),
                DualOp::Codegeneracy => Gen::Codegeneracy(idx, n - 1),
                _ => Gen::Cocyclic(n),
            };
            act_word(&Cyclic { conv: c }, &dual_l_op(g), t)
        }
    }
}

/// Dual operator built directly from its own picture.
pub fn dual_direct(op: DualOp, t: &StringLinkClass, idx: usize) -> Result<StringLinkClass> {
    let n = t.n;
    if !op.valid(n, idx) {
        return Err(Error::Index(format!("{op:?} index {idx} at level {n}")));
    }
    match op {
        // joins idx and idx+1 with an arc along the right edge; the last face
        // first rotates n forward by n backward steps
        DualOp::Face if idx < n => merge_along_edge(t, idx),
        DualOp::Face => {
            let r = (0..n).try_fold(t.clone(), |x, _| rotate_back(&x))?;
            merge_along_edge(&r, 0)
        }
        // a trivial component brought in from the right edge
        DualOp::Degeneracy => insert_from_edge(t, idx + 1),
        DualOp::Cyclic => (0..n).try_fold(t.clone(), |x, _| rotate_back(&x)),
        DualOp::Coface if idx <= n => duplicate(t, idx),
        // 2-cable of component 0 whose left copy is rotated to the right end
        DualOp::Coface => rotate_back(&duplicate(t, 0)?),
        DualOp::Codegeneracy => delete(t, idx + 1),
        DualOp::Cocyclic => rotate_back(t),
    }
}

/// Merge whose connecting arc leaves the top of `j`, runs to the right edge
/// at the top, down the right edge, and back under to the bottom of `j+1`.
fn merge_along_edge(t: &StringLinkClass, j: usize) -> Result<StringLinkClass> {
    let k = t.n + 1;
    let u = thread_strand(&t.diagram, k, k, false, false)?;
    let mut ev = vec![Event::Cup(j + 1, Side::R)];
    // carry the down strand from slot j+1 to the right end, under
    ev.extend((j + 1..k).map(|q| Event::CrossNeg(q)));
    ev.extend_from_slice(u.events());
    // and back from the right end to slot j+1 at the top
    ev.extend((j + 1..k).rev().map(|q| Event::CrossPos(q)));
    ev.push(Event::Cap(j, Side::L));
    StringLinkClass::new(SlicedDiagram::new(vec![true; k - 1], ev)?)
}

/// A trivial component at slot `i`, threaded up the right edge.
fn insert_from_edge(t: &StringLinkClass, i: usize) -> Result<StringLinkClass> {
    let k = t.n + 1;
    let u = thread_strand(&t.diagram, k, k, true, false)?;
    let mut ev = carry(i, k, false);
    ev.extend_from_slice(u.events());
    ev.extend(carry(k, i, false));
    StringLinkClass::new(SlicedDiagram::new(vec![true; k + 1], ev)?)
}

/// An equality oracle on string links up to isotopy.
pub trait Observer {
    type Obs: PartialEq + std::fmt::Debug;
    fn observe(&self, t: &StringLinkClass) -> Result<Self::Obs>;

    fn digest(&self, t: &StringLinkClass) -> Option<String> {
        self.observe(t).ok().map(|o| text_digest(&format!("{o:?}")))
    }
}

/// Linking matrix with framings on the diagonal.
pub struct LinkingObserver;

impl Observer for LinkingObserver {
    type Obs = LinkingMatrix;
    fn observe(&self, t: &StringLinkClass) -> Result<LinkingMatrix> {
        linking_matrix(&t.diagram)
    }
}

/// The Kauffman bracket tangle matrix.
pub struct KauffmanObserver;

impl Observer for KauffmanObserver {
    type Obs = Matrix<Laurent>;
    fn observe(&self, t: &StringLinkClass) -> Result<Matrix<Laurent>> {
        evaluate(&KauffmanModel, &t.diagram, &vec![0; t.components()])
    }
}

/// Both classical observers at once.
pub struct ClassicalObserver;

impl Observer for ClassicalObserver {
    type Obs = (LinkingMatrix, Matrix<Laurent>);
    fn observe(&self, t: &StringLinkClass) -> Result<Self::Obs> {
        Ok((LinkingObserver.observe(t)?, KauffmanObserver.observe(t)?))
    }
}

/// Parameters of the random string links fed to the relation harness.
#[derive(Clone, Copy, Debug)]
pub struct Sampler {
    pub max_crossings: usize,
    pub extra_width: usize,
}

impl Sampler {
    pub fn sample(&self, level: usize, rng: &mut dyn RngCore) -> StringLinkClass {
        let d = random_string_link(
            StringLinkParams { strands: level + 1, max_crossings: self.max_crossings, extra_width: self.extra_width },
            rng,
        );
        StringLinkClass { diagram: d, n: level }
    }
}

/// The cocyclic operators without an oracle, for composing words.
pub struct Cocyclic {
    pub conv: Conventions,
}

/// The cyclic operators without an oracle.
pub struct Cyclic {
    pub conv: Conventions,
}

impl Realization<Gen> for Cocyclic {
    type Elem = StringLinkClass;
    fn apply(&self, g: Gen, x: &StringLinkClass) -> Result<StringLinkClass> {
        apply_gen(g, x, self.conv)
    }
    fn sample(&self, level: usize, _rng: &mut dyn RngCore) -> StringLinkClass {
        StringLinkClass::identity(level)
    }
    fn same(&self, a: &StringLinkClass, b: &StringLinkClass) -> Result<bool> {
        Ok(a == b)
    }
}

impl Realization<OpGen> for Cyclic {
    type Elem = StringLinkClass;
    fn apply(&self, g: OpGen, x: &StringLinkClass) -> Result<StringLinkClass> {
        apply_opgen(g, x, self.conv)
    }
    fn sample(&self, level: usize, _rng: &mut dyn RngCore) -> StringLinkClass {
        StringLinkClass::identity(level)
    }
    fn same(&self, a: &StringLinkClass, b: &StringLinkClass) -> Result<bool> {
        Ok(a == b)
    }
}

/// The cocyclic set of string links judged by an observer.
pub struct ObservedCocyclic<'a, O: Observer> {
    pub obs: &'a O,
    pub sampler: Sampler,
    pub conv: Conventions,
}

/// The cyclic set of string links judged by an observer.
pub struct ObservedCyclic<'a, O: Observer> {
    pub obs: &'a O,
    pub sampler: Sampler,
    pub conv: Conventions,
}

impl<O: Observer> Realization<Gen> for ObservedCocyclic<'_, O> {
    type Elem = StringLinkClass;
    fn apply(&self, g: Gen, x: &StringLinkClass) -> Result<StringLinkClass> {
        apply_gen(g, x, self.conv)
    }
    fn sample(&self, level: usize, rng: &mut dyn RngCore) -> StringLinkClass {
        self.sampler.sample(level, rng)
    }
    fn same(&self, a: &StringLinkClass, b: &StringLinkClass) -> Result<bool> {
        Ok(a.n == b.n && self.obs.observe(a)? == self.obs.observe(b)?)
    }
    fn render(&self, x: &StringLinkClass) -> String {
        x.text()
    }
    fn digest(&self, x: &StringLinkClass) -> Option<String> {
        self.obs.digest(x)
    }
}

impl<O: Observer> Realization<OpGen> for ObservedCyclic<'_, O> {
    type Elem = StringLinkClass;
    fn apply(&self, g: OpGen, x: &StringLinkClass) -> Result<StringLinkClass> {
        apply_opgen(g, x, self.conv)
    }
    fn sample(&self, level: usize, rng: &mut dyn RngCore) -> StringLinkClass {
        self.sampler.sample(level, rng)
    }
    fn same(&self, a: &StringLinkClass, b: &StringLinkClass) -> Result<bool> {
        Ok(a.n == b.n && self.obs.observe(a)? == self.obs.observe(b)?)
    }
    fn render(&self, x: &StringLinkClass) -> String {
        x.text()
    }
    fn digest(&self, x: &StringLinkClass) -> Option<String> {
        self.obs.digest(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::cyclic::{check_relations, cocyclic_relations, cyclic_relations};
    use crate::tangle::{kink, validate};
    use rand::SeedableRng;

    fn sl(d: SlicedDiagram) -> StringLinkClass {
        StringLinkClass::new(d).unwrap()
    }

    fn lm(t: &StringLinkClass) -> Vec<Vec<Rational>> {
        linking_matrix(&t.diagram).unwrap().0
    }

    #[test]
    fn identities_map_to_identities() {
        let id1 = StringLinkClass::identity(1);
        assert_eq!(insert_trivial(&StringLinkClass::identity(0), 0).unwrap(), id1);
        assert_eq!(delete(&StringLinkClass::identity(2), 1).unwrap(), id1);
        assert_eq!(duplicate(&StringLinkClass::identity(0), 0).unwrap(), id1);
        let t = sl(kink(1, 0, true));
        assert_eq!(rotate_back(&t).unwrap(), t);
        assert_eq!(rotate_front(&t).unwrap(), t);
    }

    #[test]
    fn duplicated_kink_links_its_copies() {
        let t = sl(kink(1, 0, true));
        let d = duplicate(&t, 0).unwrap();
        let one = Rational::int(1);
        assert_eq!(lm(&d), vec![vec![one.clone(), one.clone()], vec![one.clone(), one]]);
    }

    #[test]
    fn merge_adds_linking_to_framing() {
        let clasp = sl(validate(vec![Event::CrossPos(0), Event::CrossPos(0)], DiagramType::StringLink(2)).unwrap());
        let m = merge_behind(&clasp, 0).unwrap();
        assert_eq!(lm(&m), vec![vec![Rational::int(2)]]);
        let k2 = sl(kink(2, 1, true).compose(&kink(2, 0, false)).unwrap().compose(&kink(2, 1, true)).unwrap());
        assert_eq!(lm(&merge_behind(&k2, 0).unwrap()), vec![vec![Rational::int(1)]]);
    }

    #[test]
    fn rotation_permutes_linking() {
        let d = validate(vec![Event::CrossPos(1), Event::CrossPos(1)], DiagramType::StringLink(3)).unwrap();
        let t = sl(d.compose(&kink(3, 0, true)).unwrap());
        let r = rotate_back(&t).unwrap();
        let l = linking_matrix(&t.diagram).unwrap();
        assert_eq!(linking_matrix(&r.diagram).unwrap(), l.permuted(&[1, 2, 0]));
        let f = rotate_front(&t).unwrap();
        assert_eq!(linking_matrix(&f.diagram).unwrap(), l.permuted(&[2, 0, 1]));
    }

    #[test]
    fn delete_takes_minor() {
        let d = validate(vec![Event::CrossPos(1), Event::CrossPos(1)], DiagramType::StringLink(3)).unwrap();
        let t = sl(d.compose(&kink(3, 2, true)).unwrap());
        let l = linking_matrix(&t.diagram).unwrap();
        for i in 0..3 {
            assert_eq!(linking_matrix(&delete(&t, i).unwrap().diagram).unwrap(), l.minor(i));
        }
    }

    fn sampler() -> Sampler {
        Sampler { max_crossings: 5, extra_width: 1 }
    }

    #[test]
    fn relations_hold_under_classical_observers() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let conv = Conventions::default();
        let co = ObservedCocyclic { obs: &ClassicalObserver, sampler: sampler(), conv };
        let rep = check_relations(&co, &cocyclic_relations(2), 3, &mut rng);
        assert!(rep.failures.is_empty(), "{:?}", rep.failures.first());
        let cy = ObservedCyclic { obs: &ClassicalObserver, sampler: sampler(), conv };
        let rep2 = check_relations(&cy, &cyclic_relations(2), 3, &mut rng);
        assert!(rep.failures.is_empty(), "{:?}", rep.failures.first());
        assert!(rep2.failures.is_empty(), "{:?}", rep2.failures.first());
    }

    #[test]
    fn dual_routes_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 0..3 {
            for _ in 0..3 {
                let t = sampler().sample(n, &mut rng);
                for op in DualOp::all() {
                    for idx in 0..=n + 1 {
                        if !op.valid(n, idx) {
                            continue;
                        }
                        let a = dual_generic(op, &t, idx).unwrap();
                        let b = dual_direct(op, &t, idx).unwrap();
                        assert_eq!(
                            ClassicalObserver.observe(&a).unwrap(),
                            ClassicalObserver.observe(&b).unwrap(),
                            "{op:?} {idx} at level {n}: {}",
                            t.text()
                        );
                    }
                }
            }
        }
    }
}
