use std::fmt;

use crate::cellular::{CellSet, HexSpace};
use crate::dominance::DominanceCertificate;
use crate::exactnum::{parse_rational, Rational};
use crate::periodic1d::Atom;
use crate::space::{PeriodicLine, SetSpace};
use crate::szlam::{Coloring, SzlamData};

use super::{Body, CertificateDoc, DocSpace, Document, Kind, FORMAT_TAG};

/// A syntax or semantic error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug)]
struct Tok {
    text: String,
    col: usize,
}

#[derive(Debug)]
struct Line {
    no: usize,
    toks: Vec<Tok>,
    comment: Option<String>,
    end: usize,
}

impl Line {
    fn err<T>(&self, col: usize, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError { line: self.no, column: col, message: msg.into() })
    }

    fn at(&self, i: usize) -> usize {
        self.toks.get(i).map_or(self.end, |t| t.col)
    }
}

const PUNCT: &[char] = &['[', ']', '(', ')', '{', '}', ',', '='];

fn lex(no: usize, raw: &str) -> Line {
    let chars: Vec<char> = raw.chars().collect();
    let mut toks = Vec::new();
    let mut comment = None;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '#' {
            comment = Some(chars[i + 1..].iter().collect::<String>().trim().to_string());
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if PUNCT.contains(&c) {
            toks.push(Tok { text: c.to_string(), col: i + 1 });
            i += 1;
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && !PUNCT.contains(&chars[i]) && chars[i] != '#' {
                i += 1;
            }
            toks.push(Tok { text: chars[start..i].iter().collect(), col: start + 1 });
        }
    }
    let end = chars.iter().take_while(|&&c| c != '#').count() + 1;
    Line { no, toks, comment, end }
}

struct Cursor<'a> {
    line: &'a Line,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: &'a Line, pos: usize) -> Self {
        Cursor { line, pos }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.line.toks.get(self.pos)
    }

    fn col(&self) -> usize {
        self.line.at(self.pos)
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        self.line.err(self.col(), msg)
    }

    fn next(&mut self, what: &str) -> PResult<&'a Tok> {
        match self.line.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t)
            }
            None => self.err(format!("expected {what}, found end of line")),
        }
    }

    fn eat(&mut self, text: &str) -> bool {
        if self.peek().is_some_and(|t| t.text == text) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, text: &str) -> PResult<()> {
        match self.peek() {
            Some(t) if t.text == text => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => self.err(format!("expected `{text}`, found `{}`", t.text)),
            None => self.err(format!("expected `{text}`, found end of line")),
        }
    }

    fn word(&mut self, what: &str) -> PResult<&'a Tok> {
        let t = self.next(what)?;
        if t.text.len() == 1 && PUNCT.contains(&t.text.chars().next().unwrap_or(' ')) {
            self.line.err(t.col, format!("expected {what}, found `{}`", t.text))
        } else {
            Ok(t)
        }
    }

    fn rational(&mut self) -> PResult<Rational> {
        let t = self.word("a rational number")?;
        parse_rational(&t.text).map_or_else(|| self.line.err(t.col, format!("`{}` is not a rational number", t.text)), Ok)
    }

    fn finish(&self) -> PResult<()> {
        match self.peek() {
            Some(t) => self.line.err(t.col, format!("unexpected `{}`", t.text)),
            None => Ok(()),
        }
    }
}

/// Space-specific syntax for sets and shifts.
trait Syntax: DocSpace {
    fn read_set(&self, cur: &mut Cursor) -> PResult<Self::Set>;
    fn read_shift(&self, cur: &mut Cursor) -> PResult<Self::Shift>;
}

impl Syntax for PeriodicLine {
    fn read_set(&self, cur: &mut Cursor) -> PResult<Self::Set> {
        let mut atoms = Vec::new();
        loop {
            let open = cur.next("a set piece")?;
            match open.text.as_str() {
                "{" => {
                    if !cur.eat("}") {
                        atoms.push(Atom::point(cur.rational()?));
                        cur.expect("}")?;
                    }
                }
                "[" | "(" => {
                    let lo = cur.rational()?;
                    cur.expect(",")?;
                    let hi = cur.rational()?;
                    let close_col = cur.col();
                    let hi_closed = match cur.next("`)` or `]`")?.text.as_str() {
                        "]" => true,
                        ")" => false,
                        other => return cur.line.err(close_col, format!("expected `)` or `]`, found `{other}`")),
                    };
                    if lo > hi {
                        return cur.line.err(open.col, format!("interval bounds out of order: {lo} > {hi}"));
                    }
                    atoms.push(Atom::new(lo, hi, open.text == "[", hi_closed));
                }
                other => {
                    return cur.line.err(open.col, format!("expected an interval or `{{x}}`, found `{other}`"))
                }
            }
            if !cur.eat(",") {
                break;
            }
        }
        Ok(self.set(atoms))
    }

    fn read_shift(&self, cur: &mut Cursor) -> PResult<Rational> {
        cur.rational()
    }
}

impl Syntax for HexSpace {
    fn read_set(&self, cur: &mut Cursor) -> PResult<CellSet> {
        let mut members = Vec::new();
        loop {
            cur.expect("{")?;
            if !cur.eat("}") {
                loop {
                    members.push(self.read_shift(cur)?);
                    if cur.eat("}") {
                        break;
                    }
                    cur.expect(",")?;
                }
            }
            if !cur.eat(",") {
                break;
            }
        }
        Ok(CellSet::new(self.order(), members).expect("members are range-checked"))
    }

    fn read_shift(&self, cur: &mut Cursor) -> PResult<usize> {
        let t = cur.word("a cell index")?;
        match t.text.parse::<usize>() {
            Ok(e) if e < self.order() => Ok(e),
            Ok(e) => cur.line.err(t.col, format!("cell {e} out of range 0..{}", self.order())),
            Err(_) => cur.line.err(t.col, format!("`{}` is not a cell index", t.text)),
        }
    }
}

/// Parses a `.szlam` document.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| lex(i + 1, raw))
        .filter(|l| !l.toks.is_empty())
        .collect();
    let last_no = text.lines().count().max(1);
    let Some(header) = lines.first() else {
        return Err(ParseError { line: last_no, column: 1, message: "empty document".into() });
    };
    let mut cur = Cursor::new(header, 0);
    let tag = cur.word("the format tag")?;
    if tag.text != FORMAT_TAG {
        return header.err(tag.col, format!("expected `{FORMAT_TAG}`, found `{}`", tag.text));
    }
    let kind_tok = cur.word("a document kind")?;
    let kind = match kind_tok.text.as_str() {
        "coloring" => Kind::Coloring,
        "szlam" => Kind::Szlam,
        "certificate" => Kind::Certificate,
        other => {
            return header.err(kind_tok.col, format!("unknown document kind `{other}` (coloring, szlam, certificate)"))
        }
    };
    cur.finish()?;

    let Some(space_line) = lines.get(1) else {
        return header.err(header.end, "missing `space` line");
    };
    let mut cur = Cursor::new(space_line, 0);
    cur.expect("space")?;
    let model = cur.word("a space model")?;
    let body = &lines[2..];
    match model.text.as_str() {
        "periodic1d" => {
            cur.expect("period")?;
            let col = cur.col();
            let p = cur.rational()?;
            cur.finish()?;
            let space = PeriodicLine::new(p.clone())
                .or_else(|_| space_line.err(col, format!("period must be positive, got {p}")))?;
            parse_body(space, kind, space_line, body).map(Document::Line)
        }
        "hexquot" => {
            cur.expect("diameter")?;
            let col = cur.col();
            let d = cur.rational()?;
            cur.finish()?;
            let space = HexSpace::hadwiger(d.clone())
                .or_else(|_| space_line.err(col, format!("diameter must be positive, got {d}")))?;
            parse_body(space, kind, space_line, body).map(Document::Hex)
        }
        other => space_line.err(model.col, format!("unknown space `{other}` (periodic1d, hexquot)")),
    }
}

/// Parsed `t` line: values, their raw text, the `given` comment, line number.
type TLine<T> = (Vec<T>, Vec<String>, Option<String>, usize);

struct Collected<S: SetSpace> {
    sets: Vec<(String, S::Set, usize)>,
    shifts: Vec<(S::Shift, usize)>,
    ordering: Option<(Vec<String>, usize)>,
    translaters: Option<TLine<S::Shift>>,
}

fn located<T>(line: usize, message: String) -> PResult<T> {
    Err(ParseError { line, column: 1, message })
}

fn parse_body<S: Syntax>(space: S, kind: Kind, space_line: &Line, body: &[Line]) -> PResult<Body<S>> {
    let mut got = Collected::<S> { sets: Vec::new(), shifts: Vec::new(), ordering: None, translaters: None };
    for line in body {
        let mut cur = Cursor::new(line, 0);
        let key = cur.word("a keyword")?;
        let misplaced = |what: &str| line.err(key.col, format!("`{what}` lines do not belong in a {kind} document"));
        match key.text.as_str() {
            "class" | "set" => {
                if kind == Kind::Szlam && !got.sets.is_empty() {
                    return line.err(key.col, "a szlam document has exactly one set");
                }
                if kind != Kind::Szlam && key.text == "set" {
                    return misplaced("set");
                }
                if kind == Kind::Szlam && key.text == "class" {
                    return misplaced("class");
                }
                let name = cur.word("a name")?;
                if got.sets.iter().any(|(n, _, _)| *n == name.text) {
                    return line.err(name.col, format!("duplicate class `{}`", name.text));
                }
                cur.expect("=")?;
                let set = space.read_set(&mut cur)?;
                cur.finish()?;
                if kind != Kind::Szlam {
                    for (other, earlier, _) in &got.sets {
                        let overlap = space.intersect(earlier, &set);
                        if !space.is_empty(&overlap) {
                            return line.err(
                                name.col,
                                format!("classes overlap on {overlap} (`{other}` and `{}`)", name.text),
                            );
                        }
                    }
                }
                got.sets.push((name.text.clone(), set, line.no));
            }
            "f" => {
                if kind != Kind::Szlam {
                    return misplaced("f");
                }
                let col = cur.col();
                let f = space.read_shift(&mut cur)?;
                cur.finish()?;
                let canon = space.canonical(&f);
                if let Some((g, _)) = got.shifts.iter().find(|(g, _)| space.canonical(g) == canon) {
                    let (fs, gs) = (space.format_shift(&f), space.format_shift(g));
                    let note = if fs == gs { String::new() } else { format!(" ({fs} and {gs} coincide in the space)") };
                    return line.err(col, format!("duplicate F entry {fs}{note}"));
                }
                got.shifts.push((f, line.no));
            }
            "ordering" => {
                if kind != Kind::Certificate {
                    return misplaced("ordering");
                }
                if got.ordering.is_some() {
                    return line.err(key.col, "duplicate `ordering` line");
                }
                cur.eat("=");
                let mut names = Vec::new();
                loop {
                    names.push(cur.word("a color name")?.text.clone());
                    if !cur.eat(",") {
                        break;
                    }
                }
                cur.finish()?;
                got.ordering = Some((names, line.no));
            }
            "t" => {
                if kind != Kind::Certificate {
                    return misplaced("t");
                }
                if got.translaters.is_some() {
                    return line.err(key.col, "duplicate `t` line");
                }
                cur.eat("=");
                let mut ts = Vec::new();
                let mut raw = Vec::new();
                if cur.peek().is_some() {
                    loop {
                        let start = cur.pos;
                        ts.push(space.read_shift(&mut cur)?);
                        raw.push(cur.line.toks[start..cur.pos].iter().map(|t| t.text.as_str()).collect());
                        if !cur.eat(",") {
                            break;
                        }
                    }
                }
                cur.finish()?;
                let given = line.comment.as_deref().and_then(|c| c.strip_prefix("given ")).map(str::to_string);
                got.translaters = Some((ts, raw, given, line.no));
            }
            "space" => return line.err(key.col, "duplicate `space` line"),
            other => return line.err(key.col, format!("unknown keyword `{other}`")),
        }
    }

    let end_line = body.last().unwrap_or(space_line);

    match kind {
        Kind::Szlam => {
            let Some((_, b, b_line)) = got.sets.pop() else {
                return located(end_line.no, "missing `set` line".into());
            };
            if got.shifts.is_empty() {
                return located(end_line.no, "missing `f` lines".into());
            }
            if space.is_empty(&b) {
                return located(b_line, "B must be nonempty".into());
            }
            let f = got.shifts.into_iter().map(|(f, _)| f).collect();
            SzlamData::new(space, b, f).map(Body::Szlam).or_else(|e| located(b_line, e.to_string()))
        }
        Kind::Coloring | Kind::Certificate => {
            if got.sets.is_empty() {
                return located(end_line.no, "missing `class` lines".into());
            }
            let last_class = got.sets.last().map_or(end_line.no, |s| s.2);
            let covered = got.sets.iter().fold(space.empty(), |acc, (_, s, _)| space.union(&acc, s));
            let gap = space.complement(&covered);
            if !space.is_empty(&gap) {
                return located(last_class, format!("classes do not cover {gap}"));
            }
            let (labels, classes) = got.sets.into_iter().map(|(n, s, _)| (n, s)).unzip();
            let coloring = Coloring::new(space, labels, classes).or_else(|e| located(last_class, e.to_string()))?;
            if kind == Kind::Coloring {
                return Ok(Body::Coloring(coloring));
            }
            let Some((ordering, ord_line)) = got.ordering else {
                return located(end_line.no, "missing `ordering` line".into());
            };
            if let Err(e) = coloring.permutation(&ordering) {
                return located(ord_line, e.to_string());
            }
            let (ts, raw, comment_given, t_line) =
                got.translaters.unwrap_or((Vec::new(), Vec::new(), None, end_line.no));
            if ts.len() + 1 != coloring.len() {
                return located(
                    t_line,
                    format!("{} translaters for {} colors (expected {})", ts.len(), coloring.len(), coloring.len() - 1),
                );
            }
            let sp = coloring.space();
            let canon: Vec<S::Shift> = ts.iter().map(|t| sp.canonical(t)).collect();
            let canon_text: Vec<String> = canon.iter().map(|t| sp.format_shift(t)).collect();
            let given = if raw != canon_text { Some(raw.join(", ")) } else { comment_given };
            Ok(Body::Certificate(CertificateDoc {
                coloring,
                certificate: DominanceCertificate { ordering, translaters: canon },
                given,
            }))
        }
    }
}
