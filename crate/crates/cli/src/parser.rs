//! Line-oriented parser for session scripts.

use std::fmt;

use diffleaf::algebra::{parse_fraction, parse_poly, Field, Ring};

use crate::ast::{Command, Expr, FieldSpec, IdealRef, OpenSpec, Statement};

/// A syntax error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
    pub message: Option<String>,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        if let Some(m) = &self.message {
            write!(f, "{m}; ")?;
        }
        write!(f, "expected one of {{{}}}, found {}", self.expected.join(", "), self.found)
    }
}

impl std::error::Error for SyntaxError {}

/// A statement together with the line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub statement: Statement,
}

const STATEMENT_KEYWORDS: &[&str] = &[
    "ring",
    "der",
    "hs",
    "ideal",
    "scheme",
    "open",
    "proj",
    "assert",
    "is_differential",
    "closure",
    "trajectory",
    "is_leaf",
    "udelta",
    "invariant?",
    "invariant_closed",
    "cf_laws",
    "proj_leaves",
    "constant?",
    "extend",
    "compare_constants",
    "verify",
    "functorial",
];

/// Parses a whole script. Blank lines and `#` comments are skipped; every
/// malformed line contributes one error.
pub fn parse_script(src: &str) -> Result<Vec<Located>, Vec<SyntaxError>> {
    let mut out = Vec::new();
    let mut errors = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        match parse_line(raw, line) {
            Ok(Some(statement)) => out.push(Located { line, statement }),
            Ok(None) => {}
            Err(e) => errors.push(e),
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(errors)
    }
}

/// Parses a single line; `Ok(None)` for blank or comment-only lines.
pub fn parse_line(raw: &str, line: usize) -> Result<Option<Statement>, SyntaxError> {
    let chars: Vec<char> = raw.chars().take_while(|&c| c != '#').collect();
    let toks = tokenize(&chars, line)?;
    if toks.is_empty() {
        return Ok(None);
    }
    let mut p = LineParser { chars, toks, pos: 0, line };
    let st = p.statement()?;
    p.end()?;
    Ok(Some(st))
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Word,
    Num,
    Arrow,
    Sym(char),
}

#[derive(Debug, Clone)]
struct Tok {
    kind: Kind,
    text: String,
    start: usize,
    end: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(chars: &[char], line: usize) -> Result<Vec<Tok>, SyntaxError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let kind = if c.is_whitespace() {
            i += 1;
            continue;
        } else if is_ident_start(c) {
            while i < chars.len() && (is_ident_char(chars[i]) || chars[i] == '?') {
                i += 1;
            }
            Kind::Word
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            Kind::Num
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            Kind::Arrow
        } else if "=:,<>()[]{}+-*/^".contains(c) {
            i += 1;
            Kind::Sym(c)
        } else {
            return Err(SyntaxError {
                line,
                column: i + 1,
                expected: vec!["token".into()],
                found: format!("`{c}`"),
                message: Some("unexpected character".into()),
            });
        };
        out.push(Tok { kind, text: chars[start..i].iter().collect(), start, end: i });
    }
    Ok(out)
}

struct LineParser {
    chars: Vec<char>,
    toks: Vec<Tok>,
    pos: usize,
    line: usize,
}

fn quote(s: &str) -> String {
    format!("`{s}`")
}

impl LineParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k)
    }

    fn column(&self) -> usize {
        self.peek().map(|t| t.start).unwrap_or(self.chars.len()) + 1
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => quote(&t.text),
            None => "end of line".into(),
        }
    }

    fn err(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            line: self.line,
            column: self.column(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.found(),
            message: None,
        }
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(t) if t.kind == Kind::Word && t.text == w)
    }

    fn at_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(t) if t.kind == Kind::Sym(c))
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.at_word(w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self, w: &str) -> Result<(), SyntaxError> {
        if self.eat_word(w) {
            Ok(())
        } else {
            Err(self.err(&[&quote(w)]))
        }
    }

    fn sym(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.err(&[&quote(&c.to_string())]))
        }
    }

    fn arrow(&mut self) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(t) if t.kind == Kind::Arrow => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(&["`->`"])),
        }
    }

    fn name(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            Some(t) if t.kind == Kind::Word && !t.text.contains('?') => {
                let s = t.text.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(&["name"])),
        }
    }

    fn number<T: std::str::FromStr>(&mut self) -> Result<T, SyntaxError> {
        match self.peek() {
            Some(t) if t.kind == Kind::Num => {
                let v = t.text.parse().map_err(|_| SyntaxError {
                    message: Some("number out of range".into()),
                    ..self.err(&["number"])
                })?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err(&["number"])),
        }
    }

    fn end(&self) -> Result<(), SyntaxError> {
        if self.peek().is_none() {
            Ok(())
        } else {
            Err(self.err(&["end of line"]))
        }
    }

    fn optional_on(&mut self) -> Result<Option<String>, SyntaxError> {
        if self.eat_word("on") {
            Ok(Some(self.name()?))
        } else {
            Ok(None)
        }
    }

    fn field(&mut self) -> Result<FieldSpec, SyntaxError> {
        if self.eat_word("QQ") {
            return Ok(FieldSpec::Rationals);
        }
        if self.eat_word("GF") {
            self.sym('(')?;
            let col = self.column();
            let p: u64 = self.number()?;
            if Field::prime(p).is_err() {
                return Err(SyntaxError {
                    line: self.line,
                    column: col,
                    expected: vec!["prime".into()],
                    found: quote(&p.to_string()),
                    message: Some("modulus must be prime".into()),
                });
            }
            self.sym(')')?;
            return Ok(FieldSpec::Prime(p));
        }
        Err(self.err(&["`QQ`", "`GF`"]))
    }

    /// Collects the raw text of an expression up to a top-level stop symbol,
    /// or a stop keyword followed by a number, and checks its syntax.
    fn expr_with(&mut self, stops: &[char], keywords: &[&str], fraction: bool) -> Result<Expr, SyntaxError> {
        let first = self.pos;
        let mut depth = 0usize;
        while let Some(t) = self.peek() {
            match t.kind {
                Kind::Sym(c) if depth == 0 && stops.contains(&c) => break,
                Kind::Sym('(') => depth += 1,
                Kind::Sym(')') if depth > 0 => depth -= 1,
                Kind::Sym(')') => break,
                Kind::Word
                    if depth == 0
                        && keywords.contains(&t.text.as_str())
                        && matches!(self.peek_at(1), Some(n) if n.kind == Kind::Num) =>
                {
                    break
                }
                _ => {}
            }
            self.pos += 1;
        }
        if self.pos == first {
            return Err(self.err(&["expression"]));
        }
        let (start, end) = (self.toks[first].start, self.toks[self.pos - 1].end);
        let text: String = self.chars[start..end].iter().collect();
        self.check_expr(&text, start, fraction)?;
        Ok(Expr(text))
    }

    fn expr(&mut self, stops: &[char]) -> Result<Expr, SyntaxError> {
        self.expr_with(stops, &[], false)
    }

    fn check_expr(&self, text: &str, start: usize, fraction: bool) -> Result<(), SyntaxError> {
        let chars: Vec<char> = text.chars().collect();
        let mut idents: Vec<String> = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            if is_ident_start(chars[i]) {
                let s = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                let id: String = chars[s..i].iter().collect();
                if !idents.contains(&id) {
                    idents.push(id);
                }
            } else if chars[i].is_alphanumeric() {
                while i < chars.len() && chars[i].is_alphanumeric() && !is_ident_start(chars[i]) {
                    i += 1;
                }
            } else {
                i += 1;
            }
        }
        let ring = Ring::new(Field::Rationals, idents).expect("distinct identifiers");
        let res = if fraction { parse_fraction(text, &ring).map(|_| ()) } else { parse_poly(text, &ring).map(|_| ()) };
        let Err(e) = res else { return Ok(()) };
        let mut offset = e.offset;
        let mut message = e.message.clone();
        if e.found == "end of input" {
            if let Some(k) = chars.iter().rposition(|c| !c.is_whitespace()) {
                if "+-*/^".contains(chars[k]) {
                    offset = k;
                    message = Some(format!("dangling operator `{}`", chars[k]));
                }
            }
        }
        Err(SyntaxError { line: self.line, column: start + offset + 1, expected: e.expected, found: e.found, message })
    }

    fn expr_list(&mut self, close: char) -> Result<Vec<Expr>, SyntaxError> {
        let mut out = Vec::new();
        if self.eat_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(self.expr(&[',', close])?);
            if self.eat_sym(close) {
                return Ok(out);
            }
            if !self.eat_sym(',') {
                return Err(self.err(&["`,`", &quote(&close.to_string())]));
            }
        }
    }

    fn ideal_ref(&mut self) -> Result<IdealRef, SyntaxError> {
        if self.eat_sym('<') {
            return Ok(IdealRef::Inline(self.expr_list('>')?));
        }
        match self.peek() {
            Some(t) if t.kind == Kind::Word => Ok(IdealRef::Named(self.name()?)),
            _ => Err(self.err(&["`<`", "name"])),
        }
    }

    fn statement(&mut self) -> Result<Statement, SyntaxError> {
        let Some(t) = self.peek() else { return Err(self.err(STATEMENT_KEYWORDS)) };
        if t.kind != Kind::Word {
            return Err(self.err(STATEMENT_KEYWORDS));
        }
        let kw = t.text.clone();
        match kw.as_str() {
            "ring" => {
                self.pos += 1;
                let name = self.name()?;
                self.sym('=')?;
                let field = self.field()?;
                self.sym('[')?;
                let mut vars = Vec::new();
                if !self.eat_sym(']') {
                    loop {
                        let col = self.column();
                        let v = self.name()?;
                        if vars.contains(&v) {
                            return Err(SyntaxError {
                                line: self.line,
                                column: col,
                                expected: vec!["new variable name".into()],
                                found: quote(&v),
                                message: Some("duplicate variable".into()),
                            });
                        }
                        vars.push(v);
                        if self.eat_sym(']') {
                            break;
                        }
                        if !self.eat_sym(',') {
                            return Err(self.err(&["`,`", "`]`"]));
                        }
                    }
                }
                Ok(Statement::Ring { name, field, vars })
            }
            "der" => {
                self.pos += 1;
                let name = self.name()?;
                let ring = self.optional_on()?;
                self.sym(':')?;
                let mut images = Vec::new();
                loop {
                    let v = self.name()?;
                    self.arrow()?;
                    images.push((v, self.expr(&[','])?));
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                Ok(Statement::Der { name, ring, images })
            }
            "hs" => {
                self.pos += 1;
                let name = self.name()?;
                let ring = self.optional_on()?;
                let order = if self.eat_word("order") { Some(self.number()?) } else { None };
                if self.eat_word("from") {
                    let from = self.name()?;
                    return Ok(Statement::HsFrom { name, ring, order, from });
                }
                let Some(order) = order else { return Err(self.err(&["`order`", "`from`"])) };
                if !self.at_sym(':') {
                    return Err(self.err(&["`from`", "`:`"]));
                }
                self.sym(':')?;
                let mut images = Vec::new();
                loop {
                    let v = self.name()?;
                    self.arrow()?;
                    self.sym('[')?;
                    images.push((v, self.expr_list(']')?));
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                Ok(Statement::HsExplicit { name, ring, order, images })
            }
            "ideal" => {
                self.pos += 1;
                let name = self.name()?;
                let ring = self.optional_on()?;
                self.sym('=')?;
                let gens = if self.eat_sym('<') {
                    self.expr_list('>')?
                } else {
                    let mut gens = vec![self.expr(&[','])?];
                    while self.eat_sym(',') {
                        gens.push(self.expr(&[','])?);
                    }
                    gens
                };
                Ok(Statement::Ideal { name, ring, gens })
            }
            "scheme" => {
                self.pos += 1;
                let name = self.name()?;
                self.sym('=')?;
                self.sym('(')?;
                let ring = self.name()?;
                self.sym(',')?;
                let relations = self.ideal_ref()?;
                self.sym(',')?;
                let der = self.name()?;
                self.sym(')')?;
                Ok(Statement::Scheme { name, ring, relations, der })
            }
            "open" => {
                self.pos += 1;
                let name = self.name()?;
                let scheme = self.optional_on()?;
                self.sym('=')?;
                let spec = if self.eat_word("complement") {
                    OpenSpec::Complement(self.ideal_ref()?)
                } else if self.eat_word("D") {
                    OpenSpec::Basic(self.paren_expr()?)
                } else {
                    return Err(self.err(&["`complement`", "`D`"]));
                };
                Ok(Statement::Open { name, scheme, spec })
            }
            "proj" => {
                self.pos += 1;
                let name = self.name()?;
                self.sym('=')?;
                self.word("P")?;
                self.sym('(')?;
                let n = self.number()?;
                self.sym(',')?;
                let field = self.field()?;
                self.sym(',')?;
                self.sym('[')?;
                let mut matrix = Vec::new();
                loop {
                    self.sym('[')?;
                    matrix.push(self.expr_list(']')?);
                    if self.eat_sym(']') {
                        break;
                    }
                    if !self.eat_sym(',') {
                        return Err(self.err(&["`,`", "`]`"]));
                    }
                }
                self.sym(')')?;
                Ok(Statement::Proj { name, n, field, matrix })
            }
            "assert" => {
                self.pos += 1;
                Ok(Statement::Command { assert: true, command: self.command()? })
            }
            _ => Ok(Statement::Command { assert: false, command: self.command()? }),
        }
    }

    fn paren_expr(&mut self) -> Result<Expr, SyntaxError> {
        self.sym('(')?;
        let e = self.expr(&[])?;
        self.sym(')')?;
        Ok(e)
    }

    fn command(&mut self) -> Result<Command, SyntaxError> {
        let kw = match self.peek() {
            Some(t) if t.kind == Kind::Word => t.text.clone(),
            _ => return Err(self.err(&STATEMENT_KEYWORDS[8..])),
        };
        self.pos += 1;
        let cmd = match kw.as_str() {
            "is_differential" => Command::IsDifferential { ideal: self.name()?, der: self.name()? },
            "closure" => Command::Closure { ideal: self.name()?, der: self.name()? },
            "trajectory" => {
                let (ideal, der) = (self.name()?, self.name()?);
                let deg = if self.eat_word("deg") { Some(self.number()?) } else { None };
                let rounds = if self.eat_word("rounds") { Some(self.number()?) } else { None };
                Command::Trajectory { ideal, der, deg, rounds }
            }
            "is_leaf" => Command::IsLeaf { scheme: self.name()?, ideal: self.name()? },
            "udelta" => Command::Udelta { scheme: self.name()?, open: self.name()? },
            "invariant?" => Command::InvariantOpen { scheme: self.name()?, open: self.name()? },
            "invariant_closed" => Command::InvariantClosed { scheme: self.name()?, ideal: self.ideal_ref()? },
            "cf_laws" => {
                let scheme = self.name()?;
                let mut opens = Vec::new();
                while self.peek().is_some() {
                    opens.push(self.name()?);
                }
                Command::CfLaws { scheme, opens }
            }
            "proj_leaves" => Command::ProjLeaves { name: self.name()? },
            "constant?" => {
                let scheme = self.name()?;
                Command::IsConstant { scheme, fraction: self.expr_with(&[], &[], true)? }
            }
            "extend" => {
                let scheme = self.name()?;
                let fraction = self.expr_with(&[], &["order"], true)?;
                let order = if self.eat_word("order") { Some(self.number()?) } else { None };
                Command::Extend { scheme, fraction, order }
            }
            "compare_constants" => {
                let scheme = self.name()?;
                self.word("D")?;
                let base = self.paren_expr()?;
                self.sym('{')?;
                let mut fractions = Vec::new();
                if !self.eat_sym('}') {
                    loop {
                        fractions.push(self.expr_with(&[',', '}'], &[], true)?);
                        if self.eat_sym('}') {
                            break;
                        }
                        if !self.eat_sym(',') {
                            return Err(self.err(&["`,`", "`}`"]));
                        }
                    }
                }
                Command::CompareConstants { scheme, base, fractions }
            }
            "verify" => {
                let what = match self.peek() {
                    Some(t) if t.kind == Kind::Word => t.text.clone(),
                    _ => return Err(self.err(&["`lemma43`", "`prop42`", "`thetalemma`", "`hs`"])),
                };
                self.pos += 1;
                match what.as_str() {
                    "lemma43" => {
                        let order = if self.eat_word("order") { Some(self.number()?) } else { None };
                        Command::VerifyLemma43 { order }
                    }
                    "prop42" => {
                        let n = self.number()?;
                        let order = if self.eat_word("order") { Some(self.number()?) } else { None };
                        Command::VerifyProp42 { n, order }
                    }
                    "thetalemma" => Command::VerifyTheta { n: self.number()? },
                    "hs" => Command::VerifyHs { name: self.name()? },
                    _ => {
                        self.pos -= 1;
                        return Err(self.err(&["`lemma43`", "`prop42`", "`thetalemma`", "`hs`"]));
                    }
                }
            }
            "functorial" => {
                let source = self.name()?;
                self.arrow()?;
                let target = self.name()?;
                self.word("via")?;
                self.sym('[')?;
                let images = self.expr_list(']')?;
                self.word("at")?;
                let ideal = self.name()?;
                Command::Functorial { source, target, images, ideal }
            }
            _ => {
                self.pos -= 1;
                return Err(self.err(STATEMENT_KEYWORDS));
            }
        };
        Ok(cmd)
    }
}
