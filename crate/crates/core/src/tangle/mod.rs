//! Framed oriented tangle diagrams in blackboard framing, stored as a word of
//! elementary events read from bottom to top.
//!
//! `CrossPos p` swaps the strands at positions `p, p+1`, the one entering from
//! the bottom left passing over. `CrossNeg p` is the same swap with that strand
//! passing under. `Cup p s` inserts two new strands at `p, p+1`; `Cap p s`
//! joins the strands at `p, p+1`. The side token names the leg directed
//! upward.

mod frame;
mod moves;
mod random;
mod text;

pub use frame::{bottom_braid, frame_f, frame_g};
pub use moves::{apply_move, normalize_slides, random_move_sequence, Move};
pub use random::{random_braidlike, random_string_link, StringLinkParams};
pub use text::{parse, print};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Rational, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }

    /// Orientations `(left, right)` of the two legs; `true` is upward.
    pub fn legs(self) -> (bool, bool) {
        match self {
            Side::L => (true, false),
            Side::R => (false, true),
        }
    }

    pub fn of_left_leg(up: bool) -> Side {
        if up {
            Side::L
        } else {
            Side::R
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Event {
    CrossPos(usize),
    CrossNeg(usize),
    Cap(usize, Side),
    Cup(usize, Side),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventKind {
    CrossPos,
    CrossNeg,
    Cap,
    Cup,
}

impl Event {
    pub fn kind(&self) -> EventKind {
        match self {
            Event::CrossPos(_) => EventKind::CrossPos,
            Event::CrossNeg(_) => EventKind::CrossNeg,
            Event::Cap(..) => EventKind::Cap,
            Event::Cup(..) => EventKind::Cup,
        }
    }

    pub fn pos(&self) -> usize {
        match *self {
            Event::CrossPos(p) | Event::CrossNeg(p) | Event::Cap(p, _) | Event::Cup(p, _) => p,
        }
    }

    pub fn with_pos(&self, p: usize) -> Event {
        match *self {
            Event::CrossPos(_) => Event::CrossPos(p),
            Event::CrossNeg(_) => Event::CrossNeg(p),
            Event::Cap(_, s) => Event::Cap(p, s),
            Event::Cup(_, s) => Event::Cup(p, s),
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, Event::CrossPos(_) | Event::CrossNeg(_))
    }

    /// The other crossing type; caps and cups are returned unchanged.
    pub fn mirror(&self) -> Event {
        match *self {
            Event::CrossPos(p) => Event::CrossNeg(p),
            Event::CrossNeg(p) => Event::CrossPos(p),
            e => e,
        }
    }

    /// Width change across the event.
    pub fn delta(&self) -> isize {
        match self {
            Event::Cap(..) => -2,
            Event::Cup(..) => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &Side| if *s == Side::L { "l" } else { "r" };
        match self {
            Event::CrossPos(p) => write!(f, "x+ {p}"),
            Event::CrossNeg(p) => write!(f, "x- {p}"),
            Event::Cap(p, s) => write!(f, "cap {p} {}", side(s)),
            Event::Cup(p, s) => write!(f, "cup {p} {}", side(s)),
        }
    }
}

/// Declared boundary shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagramType {
    /// `k` upward strands at the bottom and at the top.
    StringLink(usize),
    /// `k` components with all ends on the bottom line, pairs `(up, down)`.
    Handle(usize),
}

impl DiagramType {
    pub fn boundary_in(&self) -> Vec<bool> {
        match *self {
            DiagramType::StringLink(k) => vec![true; k],
            DiagramType::Handle(k) => (0..2 * k).map(|i| i % 2 == 0).collect(),
        }
    }

    pub fn boundary_out(&self) -> Vec<bool> {
        match *self {
            DiagramType::StringLink(k) => vec![true; k],
            DiagramType::Handle(_) => vec![],
        }
    }
}

/// A checked diagram. Fields are private so that every value went through
/// [`SlicedDiagram::new`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlicedDiagram {
    up_in: Vec<bool>,
    up_out: Vec<bool>,
    events: Vec<Event>,
}

impl SlicedDiagram {
    /// Checks widths and orientations slice by slice.
    pub fn new(up_in: Vec<bool>, events: Vec<Event>) -> Result<Self> {
        let mut up = up_in.clone();
        for (idx, e) in events.iter().enumerate() {
            step_orientation(&mut up, e).map_err(|msg| Error::Diagram { slice: idx, msg })?;
        }
        Ok(SlicedDiagram { up_in, up_out: up, events })
    }

    pub fn identity(k: usize) -> Self {
        SlicedDiagram { up_in: vec![true; k], up_out: vec![true; k], events: vec![] }
    }

    pub fn width_in(&self) -> usize {
        self.up_in.len()
    }

    pub fn width_out(&self) -> usize {
        self.up_out.len()
    }

    pub fn up_in(&self) -> &[bool] {
        &self.up_in
    }

    pub fn up_out(&self) -> &[bool] {
        &self.up_out
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn into_events(self) -> Vec<Event> {
        self.events
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_crossing()).count()
    }

    /// Largest slice width.
    pub fn max_width(&self) -> usize {
        let mut w = self.width_in() as isize;
        let mut m = w;
        for e in &self.events {
            w += e.delta();
            m = m.max(w);
        }
        m as usize
    }

    /// Orientation flags of every slice; entry `k` is the slice below event `k`.
    pub fn slices(&self) -> Vec<Vec<bool>> {
        let mut out = Vec::with_capacity(self.events.len() + 1);
        let mut up = self.up_in.clone();
        out.push(up.clone());
        for e in &self.events {
            step_orientation(&mut up, e).expect("checked diagram");
            out.push(up.clone());
        }
        out
    }

    pub fn has_type(&self, ty: DiagramType) -> bool {
        self.up_in == ty.boundary_in() && self.up_out == ty.boundary_out()
    }

    /// Stacks `self` on top of `lower`.
    pub fn compose(&self, lower: &SlicedDiagram) -> Result<SlicedDiagram> {
        if lower.up_out != self.up_in {
            return Err(Error::Boundary(format!(
                "lower top {:?} does not match upper bottom {:?}",
                lower.up_out, self.up_in
            )));
        }
        let mut events = lower.events.clone();
        events.extend_from_slice(&self.events);
        Ok(SlicedDiagram { up_in: lower.up_in.clone(), up_out: self.up_out.clone(), events })
    }

    /// Same diagram with a replaced event list, rechecked.
    pub fn with_events(&self, events: Vec<Event>) -> Result<SlicedDiagram> {
        SlicedDiagram::new(self.up_in.clone(), events)
    }

    /// Mirror image: every crossing type flipped.
    pub fn mirror(&self) -> SlicedDiagram {
        SlicedDiagram {
            up_in: self.up_in.clone(),
            up_out: self.up_out.clone(),
            events: self.events.iter().map(|e| e.mirror()).collect(),
        }
    }
}

fn step_orientation(up: &mut Vec<bool>, e: &Event) -> std::result::Result<(), String> {
    let w = up.len();
    match *e {
        Event::CrossPos(p) | Event::CrossNeg(p) => {
            if p + 1 >= w {
                return Err(format!("crossing at {p} needs width > {}, have {w}", p + 1));
            }
            up.swap(p, p + 1);
        }
        Event::Cap(p, s) => {
            if p + 1 >= w {
                return Err(format!("width underflow: cap at {p} on width {w}"));
            }
            if (up[p], up[p + 1]) != s.legs() {
                return Err(format!("orientation clash at cap {p}"));
            }
            up.drain(p..p + 2);
        }
        Event::Cup(p, s) => {
            if p > w {
                return Err(format!("cup at {p} beyond width {w}"));
            }
            let (a, b) = s.legs();
            up.insert(p, b);
            up.insert(p, a);
        }
    }
    Ok(())
}

/// Checks a raw event list against a declared type.
pub fn validate(events: Vec<Event>, ty: DiagramType) -> Result<SlicedDiagram> {
    let d = SlicedDiagram::new(ty.boundary_in(), events)?;
    if d.up_out != ty.boundary_out() {
        return Err(Error::Boundary(format!(
            "top boundary {} does not match {:?}",
            render_orient(&d.up_out),
            ty
        )));
    }
    Ok(d)
}

fn render_orient(up: &[bool]) -> String {
    if up.is_empty() {
        return "(empty)".into();
    }
    up.iter().map(|&u| if u { '^' } else { 'v' }).collect()
}

/// Components of a diagram and what every crossing connects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentStructure {
    pub count: usize,
    /// Component of each bottom endpoint.
    pub bottom: Vec<usize>,
    /// Component of each top endpoint.
    pub top: Vec<usize>,
    /// For every event that is a crossing: `(event index, left comp, right comp, sign)`,
    /// components read at the slice below the crossing.
    pub crossings: Vec<(usize, usize, usize, i32)>,
    /// Number of closed components.
    pub closed: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let n = self.0[c];
            self.0[c] = r;
            c = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Crossing sign from the crossing type and the two strand directions.
pub fn crossing_sign(e: &Event, up_left: bool, up_right: bool) -> i32 {
    let t = match e {
        Event::CrossPos(_) => 1,
        Event::CrossNeg(_) => -1,
        _ => 0,
    };
    if up_left == up_right {
        t
    } else {
        -t
    }
}

/// Components numbered by their first bottom endpoint, then by their first
/// top endpoint, then closed ones in order of appearance.
pub fn trace_components(d: &SlicedDiagram) -> ComponentStructure {
    let mut uf = UnionFind(Vec::new());
    let mut arcs: Vec<usize> = (0..d.width_in()).map(|_| uf.add()).collect();
    let bottom_arcs = arcs.clone();
    let mut raw_cross = Vec::new();
    let mut up = d.up_in.clone();
    for (k, e) in d.events.iter().enumerate() {
        match *e {
            Event::CrossPos(p) | Event::CrossNeg(p) => {
                raw_cross.push((k, arcs[p], arcs[p + 1], crossing_sign(e, up[p], up[p + 1])));
                arcs.swap(p, p + 1);
            }
            Event::Cap(p, _) => {
                uf.union(arcs[p], arcs[p + 1]);
                arcs.drain(p..p + 2);
            }
            Event::Cup(p, _) => {
                let a = uf.add();
                arcs.insert(p, a);
                arcs.insert(p, a);
            }
        }
        step_orientation(&mut up, e).expect("checked diagram");
    }
    let top_arcs = arcs;
    let mut label: Vec<Option<usize>> = vec![None; uf.0.len()];
    let mut count = 0;
    let mut name = |uf: &mut UnionFind, a: usize, label: &mut Vec<Option<usize>>| {
        let r = uf.find(a);
        *label[r].get_or_insert_with(|| {
            count += 1;
            count - 1
        })
    };
    let bottom: Vec<usize> = bottom_arcs.iter().map(|&a| name(&mut uf, a, &mut label)).collect();
    let top: Vec<usize> = top_arcs.iter().map(|&a| name(&mut uf, a, &mut label)).collect();
    let open = bottom.iter().chain(&top).copied().max().map_or(0, |m| m + 1);
    for a in 0..uf.0.len() {
        name(&mut uf, a, &mut label);
    }
    let crossings = raw_cross
        .into_iter()
        .map(|(k, a, b, s)| (k, name(&mut uf, a, &mut label), name(&mut uf, b, &mut label), s))
        .collect();
    ComponentStructure { count, bottom, top, crossings, closed: count - open }
}

/// Component of every strand in every slice, numbered as in
/// [`trace_components`]; entry `k` is the slice below event `k`.
pub fn slice_components(d: &SlicedDiagram) -> Vec<Vec<usize>> {
    let mut uf = UnionFind(Vec::new());
    let mut arcs: Vec<usize> = (0..d.width_in()).map(|_| uf.add()).collect();
    let mut per_slice = vec![arcs.clone()];
    for e in &d.events {
        match *e {
            Event::CrossPos(p) | Event::CrossNeg(p) => arcs.swap(p, p + 1),
            Event::Cap(p, _) => {
                uf.union(arcs[p], arcs[p + 1]);
                arcs.drain(p..p + 2);
            }
            Event::Cup(p, _) => {
                let a = uf.add();
                arcs.insert(p, a);
                arcs.insert(p, a);
            }
        }
        per_slice.push(arcs.clone());
    }
    // same numbering rule as trace_components
    let mut label: Vec<Option<usize>> = vec![None; uf.0.len()];
    let mut count = 0;
    let order: Vec<usize> = per_slice[0]
        .iter()
        .chain(per_slice.last().unwrap())
        .copied()
        .chain(0..uf.0.len())
        .collect();
    for a in order {
        let r = uf.find(a);
        if label[r].is_none() {
            label[r] = Some(count);
            count += 1;
        }
    }
    per_slice
        .into_iter()
        .map(|s| s.into_iter().map(|a| label[uf.find(a)].unwrap()).collect())
        .collect()
}

/// `k` upward strands, component `i` joining bottom `i` to top `i`, no loops.
pub fn is_string_link(d: &SlicedDiagram, k: usize) -> bool {
    if !d.has_type(DiagramType::StringLink(k)) {
        return false;
    }
    let c = trace_components(d);
    c.closed == 0 && c.count == k && (0..k).all(|i| c.bottom[i] == i && c.top[i] == i)
}

/// `k` components, component `i` joining bottom slots `2i` and `2i+1`.
pub fn is_handle(d: &SlicedDiagram, k: usize) -> bool {
    if !d.has_type(DiagramType::Handle(k)) {
        return false;
    }
    let c = trace_components(d);
    c.closed == 0 && c.count == k && (0..2 * k).all(|i| c.bottom[i] == i / 2)
}

/// Symmetric matrix of framings (diagonal) and pairwise linking numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingMatrix(pub Vec<Vec<Rational>>);

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.0[i][j]
    }

    /// Entry `(i, j)` of the result is entry `(perm[i], perm[j])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> LinkingMatrix {
        LinkingMatrix(perm.iter().map(|&a| perm.iter().map(|&b| self.0[a][b].clone()).collect()).collect())
    }

    pub fn minor(&self, drop: usize) -> LinkingMatrix {
        let keep: Vec<usize> = (0..self.size()).filter(|&i| i != drop).collect();
        self.permuted(&keep)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|r| serde_json::Value::Array(r.iter().map(|x| serde_json::Value::String(x.to_string())).collect()))
                .collect(),
        )
    }
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.0.iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub fn linking_matrix(d: &SlicedDiagram) -> Result<LinkingMatrix> {
    let k = d.width_in();
    if !is_string_link(d, k) {
        return Err(Error::Boundary("linking matrix needs a string link".into()));
    }
    Ok(linking_matrix_of(d))
}

/// Linking matrix over all components, including closed ones.
pub fn linking_matrix_of(d: &SlicedDiagram) -> LinkingMatrix {
    let c = trace_components(d);
    let mut m = vec![vec![Rational::zero(); c.count]; c.count];
    let half = Rational::new(1, 2);
    for &(_, a, b, s) in &c.crossings {
        let s = Rational::from_int(s as i64);
        if a == b {
            m[a][a] = m[a][a].clone() + s;
        } else {
            let h = s * half.clone();
            m[a][b] = m[a][b].clone() + h.clone();
            m[b][a] = m[b][a].clone() + h;
        }
    }
    LinkingMatrix(m)
}

/// Positive (`true`) or negative curl on an upward strand, loop to the right.
pub fn kink(k: usize, strand: usize, positive: bool) -> SlicedDiagram {
    let x = if positive { Event::CrossPos(strand) } else { Event::CrossNeg(strand) };
    SlicedDiagram::new(vec![true; k], vec![Event::Cup(strand + 1, Side::L), x, Event::Cap(strand + 1, Side::L)])
        .expect("kink is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_validation_examples() {
        let empty = validate(vec![], DiagramType::StringLink(0)).unwrap();
        assert!(is_string_link(&empty, 0));
        let swap = validate(vec![Event::CrossPos(0)], DiagramType::StringLink(2)).unwrap();
        assert!(!is_string_link(&swap, 2));
        let e = SlicedDiagram::new(vec![true], vec![Event::Cap(0, Side::L)]).unwrap_err();
        assert!(matches!(e, Error::Diagram { slice: 0, .. }));
    }

    #[test]
    fn kinks_and_clasps() {
        let k = kink(1, 0, true);
        assert!(is_string_link(&k, 1));
        assert_eq!(linking_matrix(&k).unwrap().0, vec![vec![Rational::int(1)]]);
        let both = k.compose(&kink(1, 0, false)).unwrap();
        assert_eq!(linking_matrix(&both).unwrap().0, vec![vec![Rational::int(0)]]);
        let clasp = validate(vec![Event::CrossPos(0), Event::CrossPos(0)], DiagramType::StringLink(2)).unwrap();
        let m = linking_matrix(&clasp).unwrap();
        assert_eq!(m.at(0, 1), &Rational::int(1));
        assert_eq!(m.at(0, 0), &Rational::int(0));
    }

    #[test]
    fn compose_with_identity() {
        let k = kink(2, 1, false);
        assert_eq!(SlicedDiagram::identity(2).compose(&k).unwrap(), k);
        assert_eq!(k.compose(&SlicedDiagram::identity(2)).unwrap(), k);
        assert!(k.compose(&SlicedDiagram::identity(3)).is_err());
    }
}
