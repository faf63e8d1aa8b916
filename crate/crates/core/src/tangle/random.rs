//! Seeded generators of string links.

use rand::Rng;

use super::{is_string_link, trace_components, Event, Side, SlicedDiagram};

#[derive(Clone, Copy, Debug)]
pub struct StringLinkParams {
    /// Number of strands.
    pub strands: usize,
    pub max_crossings: usize,
    /// Extra width available for cups above the strand count.
    pub extra_width: usize,
}

/// Sorts the top boundary back into place with crossings of random type.
fn straighten<R: Rng + ?Sized>(events: &mut Vec<Event>, perm: &mut [usize], rng: &mut R) {
    for i in 0..perm.len() {
        for j in 0..perm.len() - 1 - i {
            if perm[j] > perm[j + 1] {
                perm.swap(j, j + 1);
                events.push(if rng.gen() { Event::CrossPos(j) } else { Event::CrossNeg(j) });
            }
        }
    }
}

/// A pure braid with about `crossings` crossings, straightening included.
pub fn random_braidlike<R: Rng + ?Sized>(strands: usize, crossings: usize, rng: &mut R) -> SlicedDiagram {
    if strands < 2 {
        return SlicedDiagram::identity(strands);
    }
    loop {
        let mut events = Vec::new();
        let mut perm: Vec<usize> = (0..strands).collect();
        let body = rng.gen_range(0..=crossings);
        for _ in 0..body {
            let p = rng.gen_range(0..strands - 1);
            perm.swap(p, p + 1);
            events.push(if rng.gen() { Event::CrossPos(p) } else { Event::CrossNeg(p) });
        }
        straighten(&mut events, &mut perm, rng);
        if events.len() <= crossings {
            return SlicedDiagram::new(vec![true; strands], events).expect("braid words are valid");
        }
    }
}

/// A random string link: a random walk over crossings, cups, caps and curls,
/// closed greedily and straightened, rejected if it has closed loops or a
/// component that does not run bottom to top.
pub fn random_string_link<R: Rng + ?Sized>(p: StringLinkParams, rng: &mut R) -> SlicedDiagram {
    let k = p.strands;
    let max_w = k + p.extra_width;
    for _ in 0..10_000 {
        if let Some(d) = attempt(p, max_w, rng) {
            return d;
        }
    }
    random_braidlike(k, p.max_crossings, rng)
}

fn attempt<R: Rng + ?Sized>(p: StringLinkParams, max_w: usize, rng: &mut R) -> Option<SlicedDiagram> {
    let k = p.strands;
    let budget = rng.gen_range(0..=p.max_crossings);
    let mut events = Vec::new();
    let mut up = vec![true; k];
    let mut crossings = 0;
    let cross = |rng: &mut R, q: usize| if rng.gen() { Event::CrossPos(q) } else { Event::CrossNeg(q) };
    let mut steps = 0;
    while crossings < budget && steps < 4 * p.max_crossings + 8 {
        steps += 1;
        let w = up.len();
        let chunk = match rng.gen_range(0..10) {
            0..=4 if w >= 2 => {
                let q = rng.gen_range(0..w - 1);
                vec![cross(rng, q)]
            }
            5 | 6 if w + 2 <= max_w => vec![Event::Cup(rng.gen_range(0..=w), if rng.gen() { Side::L } else { Side::R })],
            7 | 8 if w >= 2 => {
                let q = rng.gen_range(0..w - 1);
                if up[q] == up[q + 1] {
                    continue;
                }
                vec![Event::Cap(q, Side::of_left_leg(up[q]))]
            }
            9 if w > 0 && w + 2 <= max_w => {
                let q = rng.gen_range(0..w);
                let o = Side::of_left_leg(up[q]);
                vec![Event::Cup(q + 1, o), cross(rng, q), Event::Cap(q + 1, o)]
            }
            _ => continue,
        };
        for e in chunk {
            crossings += e.is_crossing() as usize;
            super::step_orientation(&mut up, &e).expect("generator keeps orientations consistent");
            events.push(e);
        }
    }
    // close the extra strands greedily
    while up.len() > k {
        let q = (0..up.len() - 1).find(|&q| up[q] != up[q + 1])?;
        let e = Event::Cap(q, Side::of_left_leg(up[q]));
        super::step_orientation(&mut up, &e).expect("caps match orientations");
        events.push(e);
    }
    let d = SlicedDiagram::new(vec![true; k], events.clone()).ok()?;
    let c = trace_components(&d);
    if c.closed > 0 || c.count != k || c.bottom != (0..k).collect::<Vec<_>>() {
        return None;
    }
    let mut perm = c.top.clone();
    straighten(&mut events, &mut perm, rng);
    let d = SlicedDiagram::new(vec![true; k], events).ok()?;
    if d.crossing_count() > p.max_crossings || !is_string_link(&d, k) {
        return None;
    }
    Some(d)
}
