use alloc::string::String;
use core::fmt;

/// A bad escape sequence. `offset` counts chars from the start of the body to
/// the offending backslash.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeError {
    pub offset: usize,
    pub kind: EscapeErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapeErrorKind {
    /// Backslash at the very end of the body.
    Truncated,
    UnknownEscape(char),
    /// `\u` or `\U` not followed by enough hex digits.
    BadHex,
    /// Hex digits that name a surrogate or a value above U+10FFFF.
    InvalidCodePoint(u32),
}

impl fmt::Display for EscapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EscapeErrorKind::Truncated => f.write_str("malformed escape: truncated escape sequence"),
            EscapeErrorKind::UnknownEscape(c) => write!(f, "malformed escape: unknown escape '\\{c}'"),
            EscapeErrorKind::BadHex => f.write_str("malformed escape: expected hexadecimal digits"),
            EscapeErrorKind::InvalidCodePoint(v) => {
                write!(f, "malformed escape: U+{v:X} is not a Unicode scalar value")
            }
        }
    }
}

/// Resolve the string escapes shared by Turtle and N-Triples.
pub fn unescape_string(body: &str) -> Result<String, EscapeError> {
    let mut out = String::with_capacity(body.len());
    let mut chars = body.chars().enumerate().peekable();
    while let Some((offset, c)) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        let err = |kind| EscapeError { offset, kind };
        let Some((_, e)) = chars.next() else {
            return Err(err(EscapeErrorKind::Truncated));
        };
        match e {
            't' => out.push('\t'),
            'b' => out.push('\u{8}'),
            'n' => out.push('\n'),
            'r' => out.push('\r'),
            'f' => out.push('\u{c}'),
            '"' => out.push('"'),
            '\'' => out.push('\''),
            '\\' => out.push('\\'),
            'u' | 'U' => {
                let width = if e == 'u' { 4 } else { 8 };
                let mut value = 0u32;
                for _ in 0..width {
                    match chars.peek().and_then(|(_, h)| h.to_digit(16)) {
                        Some(d) => {
                            value = value * 16 + d;
                            chars.next();
                        }
                        None => return Err(err(EscapeErrorKind::BadHex)),
                    }
                }
                match char::from_u32(value) {
                    Some(ch) => out.push(ch),
                    None => return Err(err(EscapeErrorKind::InvalidCodePoint(value))),
                }
            }
            other => return Err(err(EscapeErrorKind::UnknownEscape(other))),
        }
    }
    Ok(out)
}
