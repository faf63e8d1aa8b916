//! Ribbon Reidemeister moves on event words, and the level-exchange normal form.

use rand::Rng;

use super::{Event, Side, SlicedDiagram};
use crate::error::{Error, Result};

/// A local rewrite. Moves without parameters act on the events starting at
/// the site and work in both directions; insertion moves put new events
/// before the event at the site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Moves a positive curl to the other side of its strand.
    R1Pos,
    /// Same for a negative curl.
    R1Neg,
    /// Inserts a positive and a negative curl on strand `pos`.
    R1RibbonInsert { pos: usize, positive_first: bool },
    /// Removes a curl followed by an opposite curl.
    R1RibbonRemove,
    R2Insert { pos: usize, positive_first: bool },
    R2Remove,
    R3,
    /// Exchanges the levels of two far-apart events.
    Slide,
    ZigzagInsert { pos: usize, right: bool },
    ZigzagRemove,
    /// A strand passing over or under both legs of a cap, to the cap alone,
    /// or back using crossings of the given type.
    CapSlide { positive: bool },
    /// Same for a cup.
    CupSlide { positive: bool },
}

fn mismatch(m: Move, site: usize) -> Error {
    Error::Pattern(format!("{m:?} does not match at event {site}"))
}

fn same_type(a: &Event, b: &Event) -> bool {
    a.is_crossing() && a.kind() == b.kind()
}

/// A curl on strand `p` with the loop to the right. `o` is the cup side.
fn curl_right(p: usize, o: Side, x: Event) -> [Event; 3] {
    [Event::Cup(p + 1, o), x.with_pos(p), Event::Cap(p + 1, o)]
}

/// Matches `curl_right` at the start of `w`, returning `(p, o, crossing)`.
fn match_curl_right(w: &[Event]) -> Option<(usize, Side, Event)> {
    match w {
        [Event::Cup(q, o), x, Event::Cap(r, o2), ..] if x.is_crossing() && *q >= 1 && x.pos() + 1 == *q && r == q && o == o2 => {
            Some((*q - 1, *o, *x))
        }
        _ => None,
    }
}

/// `[cup p o, x p+1, cap p o]`, the curl with its loop to the left.
fn match_curl_left(w: &[Event]) -> Option<(usize, Side, Event)> {
    match w {
        [Event::Cup(q, o), x, Event::Cap(r, o2), ..] if x.is_crossing() && x.pos() == q + 1 && r == q && o == o2 => {
            Some((*q, *o, *x))
        }
        _ => None,
    }
}

/// Doubled coordinates of the strands an event consumes and produces;
/// a gap before strand `k` sits at `2k - 1`.
fn spans(e: &Event) -> ((isize, isize), (isize, isize)) {
    let p = 2 * e.pos() as isize;
    match e {
        Event::CrossPos(_) | Event::CrossNeg(_) => ((p, p + 2), (p, p + 2)),
        Event::Cap(..) => ((p, p + 2), (p - 1, p - 1)),
        Event::Cup(..) => ((p - 1, p - 1), (p, p + 2)),
    }
}

/// `Some(true)` if `upper` lies strictly right of `lower`, `Some(false)` if
/// strictly left, `None` if they overlap.
fn relative(lower: &Event, upper: &Event) -> Option<bool> {
    let (_, out) = spans(lower);
    let (inp, _) = spans(upper);
    if inp.0 > out.1 {
        Some(true)
    } else if inp.1 < out.0 {
        Some(false)
    } else {
        None
    }
}

/// The pair with levels exchanged, or `None` if the events interact.
pub fn exchange(lower: &Event, upper: &Event) -> Option<(Event, Event)> {
    match relative(lower, upper)? {
        true => {
            let np = upper.pos() as isize - lower.delta();
            Some((upper.with_pos(np as usize), *lower))
        }
        false => {
            let np = lower.pos() as isize + upper.delta();
            Some((*upper, lower.with_pos(np as usize)))
        }
    }
}

pub fn apply_move(d: &SlicedDiagram, m: Move, site: usize) -> Result<SlicedDiagram> {
    let ev = d.events();
    if site > ev.len() {
        return Err(mismatch(m, site));
    }
    let tail = &ev[site..];
    let (take, repl): (usize, Vec<Event>) = match m {
        Move::R1Pos | Move::R1Neg => {
            let want = if m == Move::R1Pos { Event::CrossPos(0) } else { Event::CrossNeg(0) };
            if let Some((p, o, x)) = match_curl_right(tail).filter(|c| same_type(&c.2, &want)) {
                (3, vec![Event::Cup(p, o.flip()), x.with_pos(p + 1), Event::Cap(p, o.flip())])
            } else if let Some((p, o, x)) = match_curl_left(tail).filter(|c| same_type(&c.2, &want)) {
                (3, curl_right(p, o.flip(), x).to_vec())
            } else {
                return Err(mismatch(m, site));
            }
        }
        Move::R1RibbonInsert { pos, positive_first } => {
            let slices = d.slices();
            let up = slices[site].get(pos).copied().ok_or_else(|| mismatch(m, site))?;
            let o = Side::of_left_leg(up);
            let (a, b) = if positive_first {
                (Event::CrossPos(0), Event::CrossNeg(0))
            } else {
                (Event::CrossNeg(0), Event::CrossPos(0))
            };
            let mut v = curl_right(pos, o, a).to_vec();
            v.extend(curl_right(pos, o, b));
            (0, v)
        }
        Move::R1RibbonRemove => {
            let first = match_curl_right(tail).or_else(|| match_curl_left(tail));
            let second = tail.get(3..).and_then(|t| match_curl_right(t).or_else(|| match_curl_left(t)));
            match (first, second) {
                (Some(a), Some(b)) if a.2.kind() != b.2.kind() && strand_of(tail, 0) == strand_of(tail, 3) => (6, vec![]),
                _ => return Err(mismatch(m, site)),
            }
        }
        Move::R2Insert { pos, positive_first } => {
            let a = if positive_first { Event::CrossPos(pos) } else { Event::CrossNeg(pos) };
            (0, vec![a, a.mirror()])
        }
        Move::R2Remove => match tail {
            [a, b, ..] if a.is_crossing() && *b == a.mirror() => (2, vec![]),
            _ => return Err(mismatch(m, site)),
        },
        Move::R3 => match tail {
            [a, b, c, ..]
                if a.is_crossing() && b.is_crossing() && c.is_crossing() && a.pos() == c.pos() && b.pos() == a.pos() + 1 =>
            {
                if a.kind() == c.kind() && a.kind() != b.kind() {
                    return Err(mismatch(m, site));
                }
                let p = a.pos();
                (3, vec![c.with_pos(p + 1), b.with_pos(p), a.with_pos(p + 1)])
            }
            [a, b, c, ..]
                if a.is_crossing() && b.is_crossing() && c.is_crossing() && a.pos() == c.pos() && a.pos() == b.pos() + 1 =>
            {
                if a.kind() == c.kind() && a.kind() != b.kind() {
                    return Err(mismatch(m, site));
                }
                let p = b.pos();
                (3, vec![c.with_pos(p), b.with_pos(p + 1), a.with_pos(p)])
            }
            _ => return Err(mismatch(m, site)),
        },
        Move::Slide => match tail {
            [a, b, ..] => {
                let (x, y) = exchange(a, b).ok_or_else(|| mismatch(m, site))?;
                (2, vec![x, y])
            }
            _ => return Err(mismatch(m, site)),
        },
        Move::ZigzagInsert { pos, right } => {
            let slices = d.slices();
            let up = slices[site].get(pos).copied().ok_or_else(|| mismatch(m, site))?;
            let o = Side::of_left_leg(up);
            let v = if right {
                vec![Event::Cup(pos + 1, o.flip()), Event::Cap(pos, o)]
            } else {
                vec![Event::Cup(pos, o), Event::Cap(pos + 1, o.flip())]
            };
            (0, v)
        }
        Move::ZigzagRemove => match tail {
            [Event::Cup(q, _), Event::Cap(c, _), ..] if *c + 1 == *q || *c == *q + 1 => (2, vec![]),
            _ => return Err(mismatch(m, site)),
        },
        Move::CapSlide { positive } => match tail {
            [a, b, Event::Cap(p, o), ..] if same_type(a, b) && b.pos() == a.pos() + 1 && *p == a.pos() => {
                (3, vec![Event::Cap(p + 1, *o)])
            }
            [Event::Cap(q, o), ..] if *q >= 1 => {
                let x = if positive { Event::CrossPos(0) } else { Event::CrossNeg(0) };
                (1, vec![x.with_pos(q - 1), x.with_pos(*q), Event::Cap(q - 1, *o)])
            }
            _ => return Err(mismatch(m, site)),
        },
        Move::CupSlide { positive } => match tail {
            [Event::Cup(p, o), a, b, ..] if same_type(a, b) && a.pos() == p + 1 && b.pos() == *p => {
                (3, vec![Event::Cup(p + 1, *o)])
            }
            [Event::Cup(q, o), ..] if *q >= 1 => {
                let x = if positive { Event::CrossPos(0) } else { Event::CrossNeg(0) };
                (1, vec![Event::Cup(q - 1, *o), x.with_pos(*q), x.with_pos(q - 1)])
            }
            _ => return Err(mismatch(m, site)),
        },
    };
    if tail.len() < take {
        return Err(mismatch(m, site));
    }
    let mut events = ev[..site].to_vec();
    events.extend(repl);
    events.extend_from_slice(&ev[site + take..]);
    d.with_events(events).map_err(|_| mismatch(m, site))
}

/// Position, below the events, of the strand a curl sits on.
fn strand_of(w: &[Event], at: usize) -> Option<usize> {
    let t = &w[at..];
    match_curl_right(t).map(|c| c.0).or_else(|| match_curl_left(t).map(|c| c.0))
}

/// Bubbles every event that lies strictly left of its predecessor downward.
pub fn normalize_slides(d: &SlicedDiagram) -> SlicedDiagram {
    let mut ev = d.events().to_vec();
    loop {
        let mut changed = false;
        for k in 0..ev.len().saturating_sub(1) {
            if relative(&ev[k], &ev[k + 1]) == Some(false) {
                let (a, b) = exchange(&ev[k], &ev[k + 1]).expect("far apart");
                ev[k] = a;
                ev[k + 1] = b;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    d.with_events(ev).expect("level exchange keeps diagrams valid")
}

/// All move kinds a fuzzer draws from.
pub fn random_move<R: Rng + ?Sized>(d: &SlicedDiagram, rng: &mut R) -> (Move, usize) {
    let n = d.events().len();
    let site = rng.gen_range(0..=n);
    let width = d.slices()[site].len();
    let pos = if width == 0 { 0 } else { rng.gen_range(0..width) };
    let m = match rng.gen_range(0..12) {
        0 => Move::R1Pos,
        1 => Move::R1Neg,
        2 => Move::R1RibbonInsert { pos, positive_first: rng.gen() },
        3 => Move::R1RibbonRemove,
        4 => Move::R2Insert { pos: pos.min(width.saturating_sub(2)), positive_first: rng.gen() },
        5 => Move::R2Remove,
        6 => Move::R3,
        7 => Move::Slide,
        8 => Move::ZigzagInsert { pos, right: rng.gen() },
        9 => Move::ZigzagRemove,
        10 => Move::CapSlide { positive: rng.gen() },
        _ => Move::CupSlide { positive: rng.gen() },
    };
    (m, site)
}

/// Applies `count` successful random moves, keeping the width within `max_width`.
pub fn random_move_sequence<R: Rng + ?Sized>(
    d: &SlicedDiagram,
    count: usize,
    max_width: usize,
    rng: &mut R,
) -> (SlicedDiagram, Vec<(Move, usize)>) {
    let mut cur = d.clone();
    let mut log = Vec::new();
    let mut attempts = 0;
    while log.len() < count && attempts < 200 * (count + 1) {
        attempts += 1;
        let (m, site) = random_move(&cur, rng);
        if let Ok(next) = apply_move(&cur, m, site) {
            if next.max_width() <= max_width {
                cur = next;
                log.push((m, site));
            }
        }
    }
    (cur, log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::{kink, linking_matrix, DiagramType};

    #[test]
    fn r2_round_trip() {
        let d = kink(2, 0, true);
        let up = apply_move(&d, Move::R2Insert { pos: 0, positive_first: true }, 1).unwrap();
        assert_eq!(up.events().len(), 5);
        assert_eq!(apply_move(&up, Move::R2Remove, 1).unwrap(), d);
    }

    #[test]
    fn curl_side_swap() {
        let d = kink(1, 0, true);
        let other = apply_move(&d, Move::R1Pos, 0).unwrap();
        assert_ne!(other, d);
        assert_eq!(linking_matrix(&other).unwrap(), linking_matrix(&d).unwrap());
        assert_eq!(apply_move(&other, Move::R1Pos, 0).unwrap(), d);
        assert!(apply_move(&d, Move::R1Neg, 0).is_err());
    }

    #[test]
    fn slides_normalize() {
        let a = crate::tangle::validate(vec![Event::CrossPos(0), Event::CrossPos(2)], DiagramType::StringLink(4)).unwrap();
        let b = crate::tangle::validate(vec![Event::CrossPos(2), Event::CrossPos(0)], DiagramType::StringLink(4)).unwrap();
        assert_eq!(normalize_slides(&a), normalize_slides(&b));
    }
}
