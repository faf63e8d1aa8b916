//! Line-based diagram text format.
//!
//! ```text
//! type stringlink n=2
//! # comment
//! x+ 0
//! cup 1 l
//! cap 1 l
//! ```
//! `n` counts strands for string links and components for handles.

use super::{DiagramType, Event, Side, SlicedDiagram};
use crate::error::{Error, Result};

pub fn parse(src: &str) -> Result<(DiagramType, SlicedDiagram)> {
    let mut ty = None;
    let mut events = Vec::new();
    let mut lines = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}: {line:?}", ln + 1));
        if ty.is_none() {
            if words.len() != 3 || words[0] != "type" {
                return Err(bad("expected `type stringlink n=<k>` or `type handle n=<k>`"));
            }
            let k: usize = words[2]
                .strip_prefix("n=")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad size"))?;
            ty = Some(match words[0..2] {
                [_, "stringlink"] => DiagramType::StringLink(k),
                [_, "handle"] => DiagramType::Handle(k),
                _ => return Err(bad("unknown diagram type")),
            });
            continue;
        }
        let pos = |w: Option<&&str>| -> Result<usize> {
            w.and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad position"))
        };
        let side = |w: Option<&&str>| -> Result<Side> {
            match w.copied() {
                Some("l") => Ok(Side::L),
                Some("r") => Ok(Side::R),
                _ => Err(bad("expected l or r")),
            }
        };
        let e = match words[0] {
            "x+" if words.len() == 2 => Event::CrossPos(pos(words.get(1))?),
            "x-" if words.len() == 2 => Event::CrossNeg(pos(words.get(1))?),
            "cap" if words.len() == 3 => Event::Cap(pos(words.get(1))?, side(words.get(2))?),
            "cup" if words.len() == 3 => Event::Cup(pos(words.get(1))?, side(words.get(2))?),
            _ => return Err(bad("unknown event")),
        };
        events.push(e);
        lines.push(ln + 1);
    }
    let ty = ty.ok_or_else(|| Error::Parse("missing type line".into()))?;
    match super::validate(events, ty) {
        Ok(d) => Ok((ty, d)),
        Err(Error::Diagram { slice, msg }) => {
            Err(Error::Diagram { slice, msg: format!("line {}: {msg}", lines[slice]) })
        }
        Err(e) => Err(e),
    }
}

pub fn print(ty: DiagramType, d: &SlicedDiagram) -> String {
    let mut s = match ty {
        DiagramType::StringLink(k) => format!("type stringlink n={k}\n"),
        DiagramType::Handle(k) => format!("type handle n={k}\n"),
    };
    for e in d.events() {
        s.push_str(&e.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = "type stringlink n=2\n# clasp\nx+ 0\nx+ 0   # again\ncup 2 l\ncap 2 l\n";
        let (ty, d) = parse(src).unwrap();
        let out = print(ty, &d);
        assert_eq!(parse(&out).unwrap(), (ty, d));
        assert_eq!(out, "type stringlink n=2\nx+ 0\nx+ 0\ncup 2 l\ncap 2 l\n");
    }

    #[test]
    fn errors_name_lines() {
        let e = parse("type stringlink n=1\ncap 0 l\n").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = parse("type stringlink n=1\ncup 1 l\n").unwrap_err();
        assert!(matches!(e, Error::Boundary(_)));
        assert!(parse("type blob n=1\n").is_err());
    }
}
