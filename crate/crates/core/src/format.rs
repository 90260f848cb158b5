//! Plain-text formats for structures and posets.
//!
//! Structures:
//!
//! ```text
//! language 2 1
//! domain 3
//! rel 0 { (0,1) (1,2) }
//! rel 1 { (2) }
//! ```
//!
//! Posets list covering pairs; the reflexive-transitive closure is taken on load:
//!
//! ```text
//! poset 3
//! le 0 2
//! le 1 2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::orders::FinitePoset;
use crate::structure::{Language, Structure, Tuple};

fn perr<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .or_else(|_| perr(line, format!("expected {what}, found `{tok}`")))
}

fn parse_tuples(line: usize, body: &str, arity: usize, size: usize) -> Result<Vec<Tuple>> {
    let mut tuples = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let Some(inner) = rest.strip_prefix('(') else {
            return perr(line, format!("expected `(` at `{rest}`"));
        };
        let Some(close) = inner.find(')') else {
            return perr(line, "unclosed tuple");
        };
        let t: Tuple = inner[..close]
            .split(',')
            .map(|tok| number(line, tok.trim(), "a tuple entry"))
            .collect::<Result<_>>()?;
        if t.len() != arity {
            return perr(line, format!("tuple {t:?} has length {}, expected {arity}", t.len()));
        }
        if let Some(&x) = t.iter().find(|&&x| x >= size) {
            return perr(line, format!("element {x} out of range for domain {size}"));
        }
        tuples.push(t);
        rest = inner[close + 1..].trim_start();
    }
    Ok(tuples)
}

/// Parses every structure stanza in `text`; each stanza starts with `language`.
pub fn parse_structures(text: &str) -> Result<Vec<Structure>> {
    let mut out = Vec::new();
    let mut lines = content_lines(text).peekable();
    while let Some((ln, first)) = lines.next() {
        let mut toks = first.split_whitespace();
        if toks.next() != Some("language") {
            return perr(ln, format!("expected `language`, found `{first}`"));
        }
        let arities: Vec<usize> = toks
            .map(|t| number(ln, t, "an arity"))
            .collect::<Result<_>>()?;
        let language = Language::new(arities).or_else(|e| perr(ln, e.to_string()))?;
        let Some((ln, dline)) = lines.next() else {
            return perr(ln, "missing `domain` line");
        };
        let size = match dline.split_whitespace().collect::<Vec<_>>()[..] {
            ["domain", n] => number(ln, n, "a domain size")?,
            _ => return perr(ln, format!("expected `domain <n>`, found `{dline}`")),
        };
        if size == 0 {
            return perr(ln, "domain must be non-empty");
        }
        let mut relations = Vec::new();
        for (i, &arity) in language.arities().iter().enumerate() {
            let Some((ln, rline)) = lines.next() else {
                return perr(ln, format!("missing `rel {i}` line"));
            };
            let Some(rest) = rline.strip_prefix("rel") else {
                return perr(ln, format!("expected `rel {i}`, found `{rline}`"));
            };
            let rest = rest.trim_start();
            let idx_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let idx = number(ln, &rest[..idx_end], "a symbol index")?;
            if idx != i {
                return perr(ln, format!("expected `rel {i}`, found index {idx}"));
            }
            let body = rest[idx_end..].trim();
            let Some(body) = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')) else {
                return perr(ln, "relation body must be enclosed in `{ }`");
            };
            relations.push(parse_tuples(ln, body, arity, size)?);
        }
        let s = Structure::new(language, size, relations).or_else(|e| perr(ln, e.to_string()))?;
        out.push(s);
        if lines.peek().is_some_and(|(_, l)| !l.starts_with("language")) {
            let (ln, l) = lines.next().unwrap();
            return perr(ln, format!("unexpected line `{l}`"));
        }
    }
    Ok(out)
}

/// Parses exactly one structure.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let mut all = parse_structures(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => perr(1, "no structure found"),
        k => perr(1, format!("expected one structure, found {k}")),
    }
}

pub fn emit_structure(s: &Structure) -> String {
    let mut out = String::new();
    let arities: Vec<String> = s.language().arities().iter().map(|a| a.to_string()).collect();
    writeln!(out, "language {}", arities.join(" ")).unwrap();
    writeln!(out, "domain {}", s.size()).unwrap();
    for i in 0..s.language().symbol_count() {
        let tuples: Vec<String> = s
            .tuples(i)
            .iter()
            .map(|t| {
                let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        if tuples.is_empty() {
            writeln!(out, "rel {i} {{ }}").unwrap();
        } else {
            writeln!(out, "rel {i} {{ {} }}", tuples.join(" ")).unwrap();
        }
    }
    out
}

pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    let mut lines = content_lines(text);
    let Some((ln, header)) = lines.next() else {
        return perr(1, "empty poset file");
    };
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["poset", n] => number(ln, n, "a poset size")?,
        _ => return perr(ln, format!("expected `poset <n>`, found `{header}`")),
    };
    let mut leq = vec![false; n * n];
    for a in 0..n {
        leq[a * n + a] = true;
    }
    for (ln, line) in lines {
        let (a, b) = match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["le", a, b] => (number(ln, a, "an element")?, number(ln, b, "an element")?),
            _ => return perr(ln, format!("expected `le <a> <b>`, found `{line}`")),
        };
        if a >= n || b >= n {
            return perr(ln, format!("element out of range for poset of size {n}"));
        }
        if a != b && leq[b * n + a] {
            return perr(ln, format!("`le {a} {b}` closes a cycle"));
        }
        let below: Vec<usize> = (0..n).filter(|&x| leq[x * n + a]).collect();
        let above: Vec<usize> = (0..n).filter(|&y| leq[b * n + y]).collect();
        for &x in &below {
            for &y in &above {
                leq[x * n + y] = true;
            }
        }
    }
    FinitePoset::new(n, leq).or_else(|e| perr(1, e.to_string()))
}

pub fn emit_poset(p: &FinitePoset) -> String {
    let mut out = format!("poset {}\n", p.size());
    for (a, b) in p.covers() {
        writeln!(out, "le {a} {b}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_round_trip() {
        let text = "language 2 1\ndomain 3\nrel 0 { (0,1) (1,2) }\nrel 1 { (2) }\n";
        let s = parse_structure(text).unwrap();
        assert_eq!(s.tuples(0), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(emit_structure(&s), text);
        let empty = "language 2\ndomain 1\nrel 0 { }\n";
        assert_eq!(emit_structure(&parse_structure(empty).unwrap()), empty);
    }

    #[test]
    fn whitespace_and_comments() {
        let text = "# a comment\n\nlanguage 2\n  domain 2\nrel 0 {(0,1)   ( 1 , 0 )}\n";
        let s = parse_structure(text).unwrap();
        assert_eq!(s.tuple_count(), 2);
    }

    #[test]
    fn out_of_range_reports_line() {
        let text = "language 2\ndomain 2\nrel 0 { (0,2) }\n";
        match parse_structure(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "domain 2\n",
            "language 2\n",
            "language 2\ndomain x\nrel 0 { }\n",
            "language 2\ndomain 2\nrel 1 { }\n",
            "language 2\ndomain 2\nrel 0 { (0,1,1) }\n",
            "language 2\ndomain 2\nrel 0 (0,1)\n",
            "language 2\ndomain 2\nrel 0 { (0,1 }\n",
            "language 0\ndomain 2\nrel 0 { }\n",
            "language 2\ndomain 0\nrel 0 { }\n",
            "language 2\ndomain 2\nrel 0 { }\nextra\n",
        ] {
            assert!(matches!(parse_structure(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn several_stanzas() {
        let text = "language 1\ndomain 1\nrel 0 { }\nlanguage 1\ndomain 2\nrel 0 { (1) }\n";
        assert_eq!(parse_structures(text).unwrap().len(), 2);
        assert!(parse_structure(text).is_err());
    }

    #[test]
    fn poset_round_trip() {
        let p = parse_poset("poset 4\nle 0 1\nle 1 2\nle 0 3\n").unwrap();
        assert!(p.le(0, 2));
        assert_eq!(parse_poset(&emit_poset(&p)).unwrap(), p);
        assert_eq!(emit_poset(&FinitePoset::chain(1)), "poset 1\n");
    }

    #[test]
    fn poset_cycle_reports_line() {
        match parse_poset("poset 3\nle 0 1\nle 1 2\nle 2 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poset("poset 2\nle 0 5\n").is_err());
        assert!(parse_poset("poset 2\nge 0 1\n").is_err());
    }
}
