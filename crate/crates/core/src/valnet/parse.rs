//! Text descriptions of net monoids.
//!
//! ```text
//! # comments start with '#'
//! indices M1:discrete M2:dense      # a finite index set
//! atom M1:1 M2:1/2
//! atom (0,1)                        # positional form
//! ```
//!
//! ```text
//! indices omega inf:discrete        # naturals plus a point at infinity
//! sequence                          # the sequence domain
//! ```
//!
//! Nets over the omega index set list `n:value` entries plus optional
//! `tail:value` (default 0) and `inf:value` (default: the tail). The names
//! `q`, `q<n>` and `w<n>` stand for the base prime, the prime at `n` and the
//! net `omega_n` of the sequence domain.

use std::collections::BTreeMap;
use std::str::FromStr;

use super::{sequence, IndexSet, MonoidDescription, NetMonoid, ValNet, ValnetError, Value, ValueTag};
use super::Index;

fn parse_value(text: &str) -> Result<Value, String> {
    Value::from_str(text.trim()).map_err(|_| format!("bad value '{text}'"))
}

fn parse_tag(text: &str) -> Result<ValueTag, String> {
    match text {
        "discrete" => Ok(ValueTag::Discrete),
        "dense" => Ok(ValueTag::Dense),
        _ => Err(format!("unknown value tag '{text}'")),
    }
}

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty())
}

/// Parses one net over `index_set`.
pub fn parse_net(index_set: &IndexSet, text: &str) -> Result<ValNet, ValnetError> {
    let invalid = |m: String| ValnetError::InvalidNet(m);
    let text = text.trim();
    let net = if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let values: Vec<Value> = tokens(inner).map(parse_value).collect::<Result<_, _>>().map_err(invalid)?;
        ValNet::finite(values)
    } else if let Some(named) = named_sequence_net(index_set, text) {
        named
    } else {
        match index_set {
            IndexSet::Finite { labels, .. } => {
                let mut values = vec![Value::default(); labels.len()];
                for tok in tokens(text) {
                    let (key, val) = tok.split_once(':').ok_or_else(|| invalid(format!("expected label:value, got '{tok}'")))?;
                    let Some(Index::At(i)) = index_set.index_of(key) else {
                        return Err(invalid(format!("unknown index '{key}'")));
                    };
                    values[i as usize] = parse_value(val).map_err(invalid)?;
                }
                ValNet::finite(values)
            }
            IndexSet::OmegaPlusPoint { .. } => {
                let mut support = BTreeMap::new();
                let (mut tail, mut infinity) = (Value::default(), None);
                for tok in tokens(text) {
                    let (key, val) = tok.split_once(':').ok_or_else(|| invalid(format!("expected index:value, got '{tok}'")))?;
                    let val = parse_value(val).map_err(invalid)?;
                    match key {
                        "tail" => tail = val,
                        "inf" => infinity = Some(val),
                        _ => match index_set.index_of(key) {
                            Some(Index::At(n)) => {
                                support.insert(n, val);
                            }
                            _ => return Err(invalid(format!("unknown index '{key}'"))),
                        },
                    }
                }
                ValNet::eventually_constant(support, tail, infinity.unwrap_or(tail))?
            }
        }
    };
    index_set.check(&net)?;
    Ok(net)
}

fn named_sequence_net(index_set: &IndexSet, text: &str) -> Option<ValNet> {
    if !matches!(index_set, IndexSet::OmegaPlusPoint { .. }) {
        return None;
    }
    if text == "q" {
        return Some(sequence::base());
    }
    let n: u64 = text.get(1..)?.parse().ok().filter(|&n| n >= 1)?;
    match text.as_bytes()[0] {
        b'q' => Some(sequence::prime(n)),
        b'w' => Some(sequence::omega(n)),
        _ => None,
    }
}

/// Parses a monoid description.
pub fn parse_monoid(text: &str) -> Result<NetMonoid, ValnetError> {
    let mut index_set: Option<IndexSet> = None;
    let mut atoms = Vec::new();
    let mut sequence_domain = false;
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let err = |message: String| ValnetError::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match keyword {
            "indices" => {
                if index_set.is_some() {
                    return Err(err("index set declared twice".into()));
                }
                index_set = Some(parse_indices(rest).map_err(err)?);
            }
            "atom" => {
                let set = index_set.as_ref().ok_or_else(|| err("atom before the index set".into()))?;
                atoms.push(parse_net(set, rest).map_err(|e| err(e.to_string()))?);
            }
            "sequence" => sequence_domain = true,
            _ => return Err(err(format!("unknown keyword '{keyword}'"))),
        }
    }
    let index_set = index_set.ok_or(ValnetError::Parse { line: 0, message: "missing 'indices' line".into() })?;
    let description = match (sequence_domain, atoms.is_empty()) {
        (true, true) => MonoidDescription::SequenceDomain,
        (false, false) => MonoidDescription::Generated(atoms),
        (true, false) => return Err(ValnetError::Parse { line: 0, message: "'sequence' takes no atoms".into() }),
        (false, true) => return Err(ValnetError::Parse { line: 0, message: "no atoms given".into() }),
    };
    NetMonoid::from_parts(index_set, description)
}

fn parse_indices(rest: &str) -> Result<IndexSet, String> {
    let mut toks = tokens(rest).peekable();
    if toks.peek() == Some(&"omega") {
        toks.next();
        let tag = match toks.next() {
            None => ValueTag::Discrete,
            Some(t) => parse_tag(t.strip_prefix("inf:").ok_or_else(|| format!("expected inf:<tag>, got '{t}'"))?)?,
        };
        return Ok(IndexSet::omega(tag));
    }
    let entries = toks
        .map(|t| {
            let (label, tag) = t.split_once(':').unwrap_or((t, "discrete"));
            Ok((label.to_string(), parse_tag(tag)?))
        })
        .collect::<Result<Vec<_>, String>>()?;
    IndexSet::finite(entries).map_err(|e| e.to_string())
}
