//! Recursive-descent parser for N-Triples and the Turtle subset found in VoID
//! descriptions. Collections and graph blocks are rejected.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::escape::unescape_string;
use super::iri::{has_scheme, resolve_iri};
use super::prefix::{expand_prefixed_name, is_local_escape, PrefixError};
use super::{
    Format, Graph, Literal, ParseDiagnostic, ParseError, Parsed, Severity, Term, Triple, RDF_TYPE, XSD_BOOLEAN,
    XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER,
};

const GENID_PREFIX: &str = "genid-";

/// Parse `text` into a graph.
///
/// Relative IRIs are resolved against `base` (and any `@base`/`BASE`
/// directive); with no base they are kept as written and a warning is
/// recorded. Parsing stops at the first error.
pub fn parse(text: &str, format: Format, base: Option<&str>) -> Result<Parsed, ParseError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut parser = Parser::new(text, format, base);
    match parser.document() {
        Ok(()) => {
            let mut graph = parser.graph;
            graph.set_prefixes(parser.prefixes);
            Ok(Parsed {
                graph,
                diagnostics: parser.warnings,
            })
        }
        Err(error) => Err(ParseError {
            error,
            warnings: parser.warnings,
        }),
    }
}

type PResult<T> = Result<T, ParseDiagnostic>;

struct Parser {
    chars: Vec<char>,
    line_starts: Vec<usize>,
    pos: usize,
    /// Index just past the last consumed token.
    last_end: usize,
    dialect: Format,
    base: Option<String>,
    prefixes: BTreeMap<String, String>,
    graph: Graph,
    warnings: Vec<ParseDiagnostic>,
    next_genid: u64,
    /// `genid-N` labels written explicitly in the document.
    taken_genids: BTreeSet<u64>,
}

fn line_starts(chars: &[char]) -> Vec<usize> {
    let mut starts = alloc::vec![0];
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            '\n' => starts.push(i + 1),
            '\r' => {
                if chars.get(i + 1) == Some(&'\n') {
                    i += 1;
                }
                starts.push(i + 1);
            }
            _ => {}
        }
        i += 1;
    }
    starts
}

fn scan_taken_genids(text: &str) -> BTreeSet<u64> {
    let needle = "_:genid-";
    let mut taken = BTreeSet::new();
    let mut rest = text;
    while let Some(i) = rest.find(needle) {
        rest = &rest[i + needle.len()..];
        let digits: &str = &rest[..rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len())];
        if let Ok(n) = digits.parse() {
            taken.insert(n);
        }
    }
    taken
}

fn is_pn_chars_base(c: char) -> bool {
    matches!(c,
        'A'..='Z' | 'a'..='z'
        | '\u{00C0}'..='\u{00D6}' | '\u{00D8}'..='\u{00F6}' | '\u{00F8}'..='\u{02FF}'
        | '\u{0370}'..='\u{037D}' | '\u{037F}'..='\u{1FFF}' | '\u{200C}'..='\u{200D}'
        | '\u{2070}'..='\u{218F}' | '\u{2C00}'..='\u{2FEF}' | '\u{3001}'..='\u{D7FF}'
        | '\u{F900}'..='\u{FDCF}' | '\u{FDF0}'..='\u{FFFD}' | '\u{10000}'..='\u{EFFFF}')
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c) || matches!(c, '-' | '0'..='9' | '\u{00B7}' | '\u{0300}'..='\u{036F}' | '\u{203F}'..='\u{2040}')
}

fn is_forbidden_in_iri(c: char) -> bool {
    matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') || c <= ' '
}

fn describe(c: Option<char>) -> String {
    match c {
        None => "end of input".to_string(),
        Some(c) if c.is_control() => format!("{:?}", c),
        Some(c) => format!("'{c}'"),
    }
}

impl Parser {
    fn new(text: &str, dialect: Format, base: Option<&str>) -> Self {
        let chars: Vec<char> = text.chars().collect();
        Parser {
            line_starts: line_starts(&chars),
            chars,
            pos: 0,
            last_end: 0,
            dialect,
            base: base.map(String::from),
            prefixes: BTreeMap::new(),
            graph: Graph::new(),
            warnings: Vec::new(),
            next_genid: 1,
            taken_genids: scan_taken_genids(text),
        }
    }

    fn turtle(&self) -> bool {
        self.dialect == Format::Turtle
    }

    // ---- positions and diagnostics ----

    fn line_col(&self, idx: usize) -> (usize, usize) {
        let line = self.line_starts.partition_point(|&s| s <= idx);
        (line, idx - self.line_starts[line - 1] + 1)
    }

    fn diag(&self, severity: Severity, idx: usize, message: String) -> ParseDiagnostic {
        let (line, column) = self.line_col(idx);
        ParseDiagnostic {
            severity,
            line,
            column,
            message,
        }
    }

    fn error<T>(&self, idx: usize, message: impl Into<String>) -> PResult<T> {
        Err(self.diag(Severity::Error, idx, message.into()))
    }

    fn warn(&mut self, idx: usize, message: String) {
        let d = self.diag(Severity::Warning, idx, message);
        self.warnings.push(d);
    }

    fn unexpected<T>(&self, expected: &str) -> PResult<T> {
        self.error(
            self.pos,
            format!("expected {expected}, found {}", describe(self.peek())),
        )
    }

    // ---- cursor ----

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.chars.get(self.pos + n).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
            self.last_end = self.pos;
        }
        c
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\n' | '\r' => self.pos += 1,
                '#' => {
                    while !matches!(self.peek(), None | Some('\n' | '\r')) {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn text(&self, from: usize, to: usize) -> String {
        self.chars[from..to].iter().collect()
    }

    /// Word made of ASCII letters at the cursor, not consumed.
    fn peek_word(&self) -> String {
        self.chars[self.pos..]
            .iter()
            .take_while(|c| c.is_ascii_alphabetic())
            .collect()
    }

    fn keyword_here(&self, word: &str, ignore_case: bool) -> bool {
        let w = self.peek_word();
        let matches = if ignore_case {
            w.eq_ignore_ascii_case(word)
        } else {
            w == word
        };
        if !matches {
            return false;
        }
        match self.peek_at(w.chars().count()) {
            Some(c) => !(is_pn_chars(c) || c == ':' || c == '.' && self.name_continues(w.len() + 1)),
            None => true,
        }
    }

    /// `true` if the char at offset `n` from the cursor would continue a name.
    fn name_continues(&self, n: usize) -> bool {
        self.peek_at(n).is_some_and(|c| is_pn_chars(c) || c == ':')
    }

    // ---- grammar ----

    fn document(&mut self) -> PResult<()> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> PResult<()> {
        if self.turtle() {
            if self.peek() == Some('@') {
                return self.at_directive();
            }
            if self.keyword_here("prefix", true) {
                self.pos += 6;
                self.last_end = self.pos;
                return self.prefix_body(false);
            }
            if self.keyword_here("base", true) {
                self.pos += 4;
                self.last_end = self.pos;
                return self.base_body(false);
            }
        }
        self.triples()?;
        self.expect_dot()
    }

    fn expect_dot(&mut self) -> PResult<()> {
        self.skip_ws();
        if self.peek() == Some('.') {
            self.bump();
            Ok(())
        } else {
            let found = describe(self.peek());
            self.error(self.last_end, format!("missing terminal '.' (found {found})"))
        }
    }

    fn at_directive(&mut self) -> PResult<()> {
        let start = self.pos;
        self.bump();
        let word = self.peek_word();
        match word.as_str() {
            "prefix" => {
                self.pos += 6;
                self.last_end = self.pos;
                self.prefix_body(true)
            }
            "base" => {
                self.pos += 4;
                self.last_end = self.pos;
                self.base_body(true)
            }
            _ => self.error(start, format!("unknown directive '@{word}'")),
        }
    }

    fn prefix_body(&mut self, needs_dot: bool) -> PResult<()> {
        self.skip_ws();
        let start = self.pos;
        if self.peek().is_some_and(is_pn_chars_base) {
            while self.peek().is_some_and(|c| is_pn_chars(c) || c == '.') {
                self.pos += 1;
            }
        }
        if self.peek() != Some(':') || self.pos > start && self.chars[self.pos - 1] == '.' {
            return self.unexpected("a prefix name followed by ':'");
        }
        let prefix = self.text(start, self.pos);
        self.bump();
        self.skip_ws();
        if self.peek() != Some('<') {
            return self.unexpected("a namespace IRI");
        }
        let namespace = self.iri_ref()?;
        self.prefixes.insert(prefix, namespace);
        if needs_dot {
            self.expect_dot()?;
        }
        Ok(())
    }

    fn base_body(&mut self, needs_dot: bool) -> PResult<()> {
        self.skip_ws();
        if self.peek() != Some('<') {
            return self.unexpected("a base IRI");
        }
        let start = self.pos;
        let iri = self.iri_ref()?;
        if has_scheme(&iri) {
            self.base = Some(iri);
        } else {
            self.warn(
                start,
                format!("relative base IRI <{iri}> ignored (no base to resolve against)"),
            );
        }
        if needs_dot {
            self.expect_dot()?;
        }
        Ok(())
    }

    fn triples(&mut self) -> PResult<()> {
        if self.turtle() && self.peek() == Some('[') {
            let subject = self.blank_node_property_list()?;
            self.skip_ws();
            if self.peek() != Some('.') {
                self.predicate_object_list(&subject)?;
            }
            return Ok(());
        }
        let subject = self.subject()?;
        self.skip_ws();
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => self.blank_label(),
            Some('"') => self.error(self.pos, "literal in subject position"),
            Some('\'') | Some('0'..='9' | '+' | '-') if self.turtle() => {
                self.error(self.pos, "literal in subject position")
            }
            Some('(') if self.turtle() => self.error(self.pos, "collections are not supported"),
            Some('{') if self.turtle() => self.error(self.pos, "graph blocks are not supported"),
            _ if self.turtle() && (self.keyword_here("true", false) || self.keyword_here("false", false)) => {
                self.error(self.pos, "literal in subject position")
            }
            _ if self.turtle() => Ok(Term::Iri(self.prefixed_name("a subject")?)),
            _ => self.unexpected("a subject IRI or blank node"),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> PResult<()> {
        loop {
            let predicate = self.verb()?;
            self.skip_ws();
            self.object_list(subject, &predicate)?;
            self.skip_ws();
            if !self.turtle() || self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), None | Some('.' | ']')) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            _ if !self.turtle() => self.unexpected("a predicate IRI"),
            Some('a') if self.keyword_here("a", false) => {
                self.bump();
                Ok(Term::iri(RDF_TYPE))
            }
            Some('"' | '\'' | '_' | '[' | '(') | Some('0'..='9' | '+' | '-') => self.unexpected("a predicate"),
            _ => Ok(Term::Iri(self.prefixed_name("a predicate")?)),
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Term) -> PResult<()> {
        loop {
            let object = self.object()?;
            self.graph
                .insert(Triple::new(subject.clone(), predicate.clone(), object));
            self.skip_ws();
            if self.turtle() && self.peek() == Some(',') {
                self.bump();
                self.skip_ws();
            } else {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => self.blank_label(),
            Some('"') => self.literal(),
            _ if !self.turtle() => self.unexpected("an IRI, blank node, or literal"),
            Some('\'') => self.literal(),
            Some('[') => self.blank_node_property_list(),
            Some('(') => self.error(self.pos, "collections are not supported"),
            Some('0'..='9' | '+' | '-') => self.numeric(),
            Some('.') if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => self.numeric(),
            _ if self.keyword_here("true", false) => {
                self.pos += 4;
                self.last_end = self.pos;
                Ok(Term::Literal(Literal::typed("true", XSD_BOOLEAN)))
            }
            _ if self.keyword_here("false", false) => {
                self.pos += 5;
                self.last_end = self.pos;
                Ok(Term::Literal(Literal::typed("false", XSD_BOOLEAN)))
            }
            _ => Ok(Term::Iri(self.prefixed_name("an object")?)),
        }
    }

    fn fresh_blank(&mut self) -> Term {
        while self.taken_genids.contains(&self.next_genid) {
            self.next_genid += 1;
        }
        let label = format!("{GENID_PREFIX}{}", self.next_genid);
        self.next_genid += 1;
        Term::Blank(label)
    }

    fn blank_node_property_list(&mut self) -> PResult<Term> {
        let open = self.pos;
        self.bump();
        self.skip_ws();
        let node = self.fresh_blank();
        if self.peek() != Some(']') {
            self.predicate_object_list(&node)?;
            self.skip_ws();
        }
        match self.peek() {
            Some(']') => {
                self.bump();
                Ok(node)
            }
            None => self.error(open, "unterminated blank node property list"),
            _ => self.unexpected("']'"),
        }
    }

    fn blank_label(&mut self) -> PResult<Term> {
        let start = self.pos;
        self.pos += 2;
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => self.pos += 1,
            _ => return self.error(start, "malformed blank node label"),
        }
        while self.peek().is_some_and(|c| is_pn_chars(c) || c == '.') {
            self.pos += 1;
        }
        while self.chars[self.pos - 1] == '.' {
            self.pos -= 1;
        }
        self.last_end = self.pos;
        Ok(Term::Blank(self.text(start + 2, self.pos)))
    }

    fn iri_ref(&mut self) -> PResult<String> {
        let open = self.pos;
        self.bump();
        let body_start = self.pos;
        loop {
            match self.peek() {
                None | Some('\n' | '\r') => return self.error(open, "unterminated IRI"),
                Some('>') => break,
                Some('\\') => {
                    if !matches!(self.peek_at(1), Some('u' | 'U')) {
                        return self.error(self.pos, "malformed escape in IRI: only \\u and \\U are allowed");
                    }
                    self.pos += 2;
                }
                Some(c) if is_forbidden_in_iri(c) => {
                    return self.error(self.pos, format!("invalid character {} in IRI", describe(Some(c))));
                }
                Some(_) => self.pos += 1,
            }
        }
        let raw = self.text(body_start, self.pos);
        self.bump();
        let iri = match unescape_string(&raw) {
            Ok(s) => s,
            Err(e) => return self.error(body_start + e.offset, e.to_string()),
        };
        if let Some(c) = iri.chars().find(|&c| is_forbidden_in_iri(c)) {
            return self.error(
                open,
                format!("escape produces invalid character {} in IRI", describe(Some(c))),
            );
        }
        Ok(self.resolve(open, iri))
    }

    fn resolve(&mut self, at: usize, iri: String) -> String {
        if has_scheme(&iri) {
            return iri;
        }
        match &self.base {
            Some(base) => resolve_iri(base, &iri),
            None => {
                self.warn(at, format!("relative IRI <{iri}> kept unresolved (no base IRI)"));
                iri
            }
        }
    }

    fn prefixed_name(&mut self, expected: &str) -> PResult<String> {
        let start = self.pos;
        if self.peek().is_some_and(is_pn_chars_base) {
            while self.peek().is_some_and(|c| is_pn_chars(c) || c == '.') {
                self.pos += 1;
            }
        }
        if self.peek() != Some(':') || self.pos > start && self.chars[self.pos - 1] == '.' {
            self.pos = start;
            return self.unexpected(expected);
        }
        self.pos += 1;
        // Local part: track where the last character that may legally end
        // the name sits so trailing unescaped dots are left for the parser.
        let mut end = self.pos;
        let mut first = true;
        loop {
            match self.peek() {
                Some('\\') => {
                    match self.peek_at(1) {
                        Some(e) if is_local_escape(e) => {}
                        _ => return self.error(self.pos, "malformed escape in local name"),
                    }
                    self.pos += 2;
                    end = self.pos;
                }
                Some('%') => {
                    let hex = |c: Option<char>| c.is_some_and(|c| c.is_ascii_hexdigit());
                    if !(hex(self.peek_at(1)) && hex(self.peek_at(2))) {
                        return self.error(self.pos, "malformed percent-encoding in local name");
                    }
                    self.pos += 3;
                    end = self.pos;
                }
                Some(c) if is_pn_chars(c) || c == ':' => {
                    self.pos += 1;
                    end = self.pos;
                }
                Some('.') if !first => self.pos += 1,
                _ => break,
            }
            first = false;
        }
        self.pos = end;
        self.last_end = end;
        let pname = self.text(start, end);
        match expand_prefixed_name(&self.prefixes, &pname) {
            Ok(iri) => Ok(iri),
            Err(PrefixError::UndefinedPrefix(p)) => self.error(start, format!("undefined prefix '{p}:'")),
            Err(e) => self.error(start, e.to_string()),
        }
    }

    fn numeric(&mut self) -> PResult<Term> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let from = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos - from
        };
        if matches!(self.peek(), Some('+' | '-')) {
            self.pos += 1;
        }
        let int_digits = digits(self);
        let mut datatype = XSD_INTEGER;
        let exponent_at = |p: &Self, n: usize| {
            matches!(p.peek_at(n), Some('e' | 'E'))
                && match p.peek_at(n + 1) {
                    Some('+' | '-') => p.peek_at(n + 2).is_some_and(|c| c.is_ascii_digit()),
                    Some(c) => c.is_ascii_digit(),
                    None => false,
                }
        };
        if self.peek() == Some('.')
            && (self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) || int_digits > 0 && exponent_at(self, 1))
        {
            self.pos += 1;
            digits(self);
            datatype = XSD_DECIMAL;
        } else if int_digits == 0 {
            self.pos = start;
            return self.unexpected("a number");
        }
        if exponent_at(self, 0) {
            self.pos += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.pos += 1;
            }
            digits(self);
            datatype = XSD_DOUBLE;
        }
        self.last_end = self.pos;
        Ok(Term::Literal(Literal::typed(self.text(start, self.pos), datatype)))
    }

    fn literal(&mut self) -> PResult<Term> {
        let lexical = self.string()?;
        match self.peek() {
            Some('@') => {
                let at = self.pos;
                self.pos += 1;
                let tag_start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                    self.pos += 1;
                }
                if self.pos == tag_start {
                    return self.error(at, "malformed language tag");
                }
                while self.peek() == Some('-') && self.peek_at(1).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                    while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                        self.pos += 1;
                    }
                }
                self.last_end = self.pos;
                let tag = self.text(tag_start, self.pos);
                Ok(Term::Literal(Literal::lang(lexical, &tag)))
            }
            Some('^') if self.peek_at(1) == Some('^') => {
                self.pos += 2;
                self.last_end = self.pos;
                let datatype = match self.peek() {
                    Some('<') => self.iri_ref()?,
                    _ if self.turtle() => self.prefixed_name("a datatype IRI")?,
                    _ => return self.unexpected("a datatype IRI"),
                };
                Ok(Term::Literal(Literal::typed(lexical, datatype)))
            }
            _ => Ok(Term::Literal(Literal::simple(lexical))),
        }
    }

    fn string(&mut self) -> PResult<String> {
        let open = self.pos;
        let quote = self.peek().unwrap_or('"');
        let long = self.turtle() && self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        self.pos += if long { 3 } else { 1 };
        let body_start = self.pos;
        let body_end;
        loop {
            match self.peek() {
                None => return self.error(open, "unterminated string"),
                Some('\n' | '\r') if !long => return self.error(open, "unterminated string"),
                Some('\\') => {
                    if self.peek_at(1).is_none() {
                        return self.error(open, "unterminated string");
                    }
                    self.pos += 2;
                }
                Some(c) if c == quote => {
                    if !long {
                        body_end = self.pos;
                        self.pos += 1;
                        break;
                    }
                    if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                        body_end = self.pos;
                        self.pos += 3;
                        break;
                    }
                    self.pos += 1;
                }
                Some(_) => self.pos += 1,
            }
        }
        self.last_end = self.pos;
        let raw = self.text(body_start, body_end);
        unescape_string(&raw).or_else(|e| self.error(body_start + e.offset, e.to_string()))
    }
}
