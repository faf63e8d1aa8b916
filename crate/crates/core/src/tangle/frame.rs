//! Bending string links into handles and back.

use super::{is_handle, is_string_link, Event, Side, SlicedDiagram};
use crate::error::{Error, Result};

/// Bends the top of every component back down behind the diagram, so that
/// component `k` ends on bottom slots `2k` (up) and `2k+1` (down).
///
/// Bottom part: each return strand `k = n-1, …, 0` moves to the far right
/// passing under everything. Then `T` acts on the left block and the returns
/// close up with nested caps.
pub fn frame_f(t: &SlicedDiagram) -> Result<SlicedDiagram> {
    let m = t.width_in();
    if !is_string_link(t, m) {
        return Err(Error::Boundary("frame_f needs a string link".into()));
    }
    let mut events = bottom_braid(m);
    events.extend_from_slice(t.events());
    for k in (0..m).rev() {
        events.push(Event::Cap(k, Side::L));
    }
    let up_in = (0..2 * m).map(|i| i % 2 == 0).collect();
    SlicedDiagram::new(up_in, events)
}

/// Crossings that carry every return strand to the right under everything.
pub fn bottom_braid(m: usize) -> Vec<Event> {
    let mut events = Vec::new();
    for k in (0..m.saturating_sub(1)).rev() {
        for q in 2 * k + 1..2 * m - 1 {
            events.push(Event::CrossNeg(q));
        }
    }
    events
}

/// Re-opens a handle: a cup right of each up leg provides the new top strand,
/// which is carried behind the whole handle to the top.
pub fn frame_g(h: &SlicedDiagram) -> Result<SlicedDiagram> {
    let m = h.width_in() / 2;
    if !is_handle(h, m) {
        return Err(Error::Boundary("frame_g needs a handle".into()));
    }
    let mut events = Vec::new();
    for k in 0..m {
        events.push(Event::Cup(3 * k + 1, Side::R));
    }
    for k in (0..m.saturating_sub(1)).rev() {
        let start = 3 * k + 2;
        for q in start..start + 2 * (m - 1 - k) {
            events.push(Event::CrossNeg(q));
        }
    }
    events.extend_from_slice(h.events());
    SlicedDiagram::new(vec![true; m], events)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::{kink, linking_matrix, trace_components};

    #[test]
    fn bends_identity() {
        let h = frame_f(&SlicedDiagram::identity(1)).unwrap();
        assert_eq!(h.events(), &[Event::Cap(0, Side::L)]);
        let h2 = frame_f(&SlicedDiagram::identity(2)).unwrap();
        assert!(is_handle(&h2, 2));
        assert_eq!(trace_components(&h2).count, 2);
        let g = frame_g(&h2).unwrap();
        assert!(is_string_link(&g, 2));
    }

    #[test]
    fn round_trip_keeps_linking() {
        let t = kink(2, 1, true).compose(&kink(2, 0, false)).unwrap();
        let back = frame_g(&frame_f(&t).unwrap()).unwrap();
        assert_eq!(linking_matrix(&back).unwrap(), linking_matrix(&t).unwrap());
    }
}
