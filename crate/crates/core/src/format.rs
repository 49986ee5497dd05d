use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::block::{Block, GroundSet, Point, Sign};
use crate::error::{Error, Result};
use crate::ingredients::{LargeSet, OneFactorization, STSystem};
use crate::signed::SignedBlockSet;

/// The four document kinds, told apart by the first word of the header line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    /// `SSTS v=.. s=..` followed by signed triples.
    Design(SignedBlockSet),
    /// `TRADE t=.. k=.. v=.. vol=..` followed by signed blocks.
    Trade { t: usize, set: SignedBlockSet },
    /// `LS n=.. classes=..` followed by `C<i> a b c` lines.
    LargeSet(LargeSet),
    /// `FACT v=.. factors=..` followed by `F<i> a b` lines.
    Factorization(OneFactorization),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Design(_) => "SSTS",
            Document::Trade { .. } => "TRADE",
            Document::LargeSet(_) => "LS",
            Document::Factorization(_) => "FACT",
        }
    }
}

fn signed_lines(out: &mut String, set: &SignedBlockSet) {
    for b in set.positive() {
        let _ = writeln!(out, "+ {b}");
    }
    for b in set.negative() {
        let _ = writeln!(out, "- {b}");
    }
}

pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Design(set) => {
            let _ = writeln!(out, "SSTS v={} s={}", set.v(), set.s());
            signed_lines(&mut out, set);
        }
        Document::Trade { t, set } => {
            let _ = writeln!(out, "TRADE t={t} k={} v={} vol={}", set.arity(), set.v(), set.volume());
            signed_lines(&mut out, set);
        }
        Document::LargeSet(ls) => {
            let _ = writeln!(out, "LS n={} classes={}", ls.order(), ls.classes().len());
            for (i, c) in ls.classes().iter().enumerate() {
                for b in c.blocks() {
                    let _ = writeln!(out, "C{} {b}", i + 1);
                }
            }
        }
        Document::Factorization(f) => {
            let _ = writeln!(out, "FACT v={} factors={}", f.ground().order(), f.len());
            for (i, factor) in f.factors().iter().enumerate() {
                for e in factor {
                    let _ = writeln!(out, "F{} {e}", i + 1);
                }
            }
        }
    }
    out
}

pub fn design_text(set: &SignedBlockSet) -> String {
    serialize(&Document::Design(set.clone()))
}

pub fn trade_text(set: &SignedBlockSet, t: usize) -> String {
    serialize(&Document::Trade { t, set: set.clone() })
}

fn blocks_json(blocks: impl Iterator<Item = Block>) -> Value {
    Value::Array(
        blocks.map(|b| Value::Array(b.points().iter().map(|&p| json!(p as usize + 1)).collect())).collect(),
    )
}

/// JSON mirror of the text format; points are 1-based as in the text form.
pub fn to_json(doc: &Document) -> Value {
    match doc {
        Document::Design(set) => json!({
            "v": set.v(),
            "s": set.s(),
            "positive": blocks_json(set.positive()),
            "negative": blocks_json(set.negative()),
        }),
        Document::Trade { t, set } => json!({
            "t": t,
            "k": set.arity(),
            "v": set.v(),
            "vol": set.volume(),
            "positive": blocks_json(set.positive()),
            "negative": blocks_json(set.negative()),
        }),
        Document::LargeSet(ls) => json!({
            "n": ls.order(),
            "classes": ls.classes().iter().map(|c| blocks_json(c.blocks().iter().copied())).collect::<Vec<_>>(),
        }),
        Document::Factorization(f) => json!({
            "v": f.ground().order(),
            "factors": f.factors().iter().map(|x| blocks_json(x.iter().copied())).collect::<Vec<_>>(),
        }),
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn invalid(kind: &'static str, e: Error) -> Error {
    Error::InvalidDocument { kind, message: e.to_string() }
}

struct Header {
    kind: String,
    params: BTreeMap<String, usize>,
}

impl Header {
    fn get(&self, key: &str) -> Result<usize> {
        self.params.get(key).copied().ok_or_else(|| perr(1, format!("header is missing {key}=")))
    }
}

fn parse_header(line: &str, lineno: usize) -> Result<Header> {
    let mut words = line.split_whitespace();
    let kind = words.next().ok_or_else(|| perr(lineno, "empty header"))?.to_string();
    let mut params = BTreeMap::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| perr(lineno, format!("expected key=value, got {w:?}")))?;
        let v: usize = v.parse().map_err(|_| perr(lineno, format!("bad number in {w:?}")))?;
        if params.insert(k.to_string(), v).is_some() {
            return Err(perr(lineno, format!("repeated key {k}")));
        }
    }
    if let Some(&version) = params.get("format") {
        if version != 1 {
            return Err(perr(lineno, format!("unsupported format version {version}")));
        }
    }
    Ok(Header { kind, params })
}

fn parse_points(words: &[&str], v: usize, lineno: usize) -> Result<Block> {
    let mut pts = Vec::with_capacity(words.len());
    for w in words {
        let p: usize = w.parse().map_err(|_| perr(lineno, format!("bad point {w:?}")))?;
        if p == 0 || p > v {
            return Err(perr(lineno, format!("point {p} outside 1..={v}")));
        }
        pts.push((p - 1) as Point);
    }
    Block::new(&pts).map_err(|e| perr(lineno, e.to_string()))
}

/// Index-tagged line such as `C3 1 2 3`; returns the 0-based index and the block.
fn parse_tagged(words: &[&str], tag: char, v: usize, lineno: usize) -> Result<(usize, Block)> {
    let head = words[0];
    let idx: usize = head
        .strip_prefix(tag)
        .and_then(|x| x.parse().ok())
        .filter(|&i| i >= 1)
        .ok_or_else(|| perr(lineno, format!("expected {tag}<index>, got {head:?}")))?;
    Ok((idx - 1, parse_points(&words[1..], v, lineno)?))
}

pub fn parse(text: &str) -> Result<Document> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header_line) = lines.next().ok_or_else(|| perr(1, "empty document"))?;
    let header = parse_header(header_line, hl)?;
    let body: Vec<(usize, Vec<&str>)> = lines.map(|(i, l)| (i, l.split_whitespace().collect())).collect();
    match header.kind.as_str() {
        "SSTS" | "TRADE" => {
            let v = header.get("v")?;
            let ground = GroundSet::new(v).map_err(|e| perr(hl, e.to_string()))?;
            let (k, t) = if header.kind == "SSTS" { (3, 2) } else { (header.get("k")?, header.get("t")?) };
            if !(1..=3).contains(&k) || t == 0 || t > k {
                return Err(perr(hl, "need 1 <= t <= k <= 3"));
            }
            let mut set = SignedBlockSet::new(ground, k)?;
            for (lineno, words) in &body {
                let sign = match words[0] {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    other => return Err(perr(*lineno, format!("expected + or -, got {other:?}"))),
                };
                if words.len() != k + 1 {
                    return Err(perr(*lineno, format!("expected {k} points")));
                }
                let b = parse_points(&words[1..], v, *lineno)?;
                set.insert(b, sign).map_err(|e| perr(*lineno, e.to_string()))?;
            }
            if header.kind == "SSTS" {
                let s = header.get("s")?;
                if s != set.s() {
                    return Err(perr(hl, format!("header says s={s} but body has {} negative blocks", set.s())));
                }
                Ok(Document::Design(set))
            } else {
                let vol = header.get("vol")?;
                if vol != set.volume() {
                    return Err(perr(hl, format!("header says vol={vol} but body has {} positive blocks", set.volume())));
                }
                Ok(Document::Trade { t, set })
            }
        }
        "LS" => {
            let n = header.get("n")?;
            let count = header.get("classes")?;
            let ground = GroundSet::new(n).map_err(|e| perr(hl, e.to_string()))?;
            let mut classes = vec![Vec::new(); count];
            for (lineno, words) in &body {
                let (i, b) = parse_tagged(words, 'C', n, *lineno)?;
                if i >= count || b.arity() != 3 {
                    return Err(perr(*lineno, "class index or arity out of range"));
                }
                classes[i].push(b);
            }
            let systems = classes
                .into_iter()
                .map(|c| STSystem::new(ground, c))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| invalid("LS", e))?;
            let ls = LargeSet::new(ground, systems).map_err(|e| invalid("LS", e))?;
            Ok(Document::LargeSet(ls))
        }
        "FACT" => {
            let v = header.get("v")?;
            let count = header.get("factors")?;
            let ground = GroundSet::new(v).map_err(|e| perr(hl, e.to_string()))?;
            let mut factors = vec![Vec::new(); count];
            for (lineno, words) in &body {
                let (i, b) = parse_tagged(words, 'F', v, *lineno)?;
                if i >= count || b.arity() != 2 {
                    return Err(perr(*lineno, "factor index or arity out of range"));
                }
                factors[i].push(b);
            }
            let f = OneFactorization::new(ground, factors).map_err(|e| invalid("FACT", e))?;
            Ok(Document::Factorization(f))
        }
        other => Err(perr(hl, format!("unknown document kind {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_block_design_round_trips() {
        let ground = GroundSet::new(3).unwrap();
        let set = SignedBlockSet::unsigned(ground, 3, [Block::triple(0, 1, 2)]).unwrap();
        let text = design_text(&set);
        assert_eq!(text, "SSTS v=3 s=0\n+ 1 2 3\n");
        assert_eq!(parse(&text).unwrap(), Document::Design(set));
    }

    #[test]
    fn header_counts_must_match() {
        assert!(parse("SSTS v=3 s=1\n+ 1 2 3\n").is_err());
        assert!(parse("TRADE t=1 k=2 v=4 vol=1\n+ 1 2\n- 1 3\n").is_ok());
        assert!(parse("TRADE t=1 k=2 v=4 vol=2\n+ 1 2\n- 1 3\n").is_err());
    }

    #[test]
    fn malformed_lines_report_their_number() {
        match parse("SSTS v=3 s=0\n\n* 1 2 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse("SSTS v=3 s=0\n+ 1 2 4\n").is_err());
        assert!(parse("SSTS v=3 s=0 format=2\n").is_err());
        assert!(parse("WHAT v=3\n").is_err());
    }

    #[test]
    fn json_mirror_fields() {
        let ground = GroundSet::new(3).unwrap();
        let set = SignedBlockSet::unsigned(ground, 3, [Block::triple(0, 1, 2)]).unwrap();
        let j = to_json(&Document::Design(set));
        assert_eq!(j["v"], 3);
        assert_eq!(j["s"], 0);
        assert_eq!(j["positive"][0], json!([1, 2, 3]));
        assert_eq!(j["negative"], json!([]));
    }

    #[test]
    fn factorization_round_trips() {
        let f = OneFactorization::complete(6).unwrap();
        let doc = Document::Factorization(f);
        assert_eq!(parse(&serialize(&doc)).unwrap(), doc);
    }
}
