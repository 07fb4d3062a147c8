//! Restricted YAML subset used by shape programs, catalogs and style files.
//!
//! Supported: block mappings, block sequences (including the `- key: v`
//! compact form and sequences at the same indentation as their parent key),
//! single-line flow sequences of scalars, `{}` / `[]`, plain scalars, single-
//! and double-quoted strings, `#` comments and a leading `---`. Anchors,
//! aliases, tags, block scalars, directives and multi-document streams are
//! rejected.

use crate::diag::{Code, Diagnostic, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarStyle {
    Plain,
    SingleQuoted,
    DoubleQuoted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scalar {
    pub text: String,
    pub style: ScalarStyle,
    pub span: SourceSpan,
}

impl Scalar {
    pub fn is_quoted(&self) -> bool {
        self.style != ScalarStyle::Plain
    }

    /// Plain empty scalar, i.e. YAML null.
    pub fn is_null(&self) -> bool {
        self.style == ScalarStyle::Plain && (self.text.is_empty() || self.text == "~" || self.text == "null")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Scalar(Scalar),
    Seq(Vec<Node>, SourceSpan),
    Map(Vec<(Scalar, Node)>, SourceSpan),
}

impl Node {
    pub fn span(&self) -> SourceSpan {
        match self {
            Node::Scalar(s) => s.span,
            Node::Seq(_, span) | Node::Map(_, span) => *span,
        }
    }

    pub fn as_scalar(&self) -> Option<&Scalar> {
        match self {
            Node::Scalar(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_seq(&self) -> Option<&[Node]> {
        match self {
            Node::Seq(items, _) => Some(items),
            _ => None,
        }
    }

    pub fn as_map(&self) -> Option<&[(Scalar, Node)]> {
        match self {
            Node::Map(entries, _) => Some(entries),
            _ => None,
        }
    }

    pub fn get(&self, key: &str) -> Option<&Node> {
        self.as_map()?
            .iter()
            .find(|(k, _)| k.text == key)
            .map(|(_, v)| v)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Node::Scalar(_) => "scalar",
            Node::Seq(..) => "sequence",
            Node::Map(..) => "mapping",
        }
    }
}

#[derive(Debug, Clone)]
struct Line<'a> {
    indent: usize,
    content: &'a str,
    /// Byte offset of `content` in the document.
    offset: usize,
}

struct Parser<'a> {
    text: &'a str,
    lines: Vec<Line<'a>>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

/// Parses one document of the supported subset.
pub fn parse(text: &str) -> Result<Node, Vec<Diagnostic>> {
    let lines = split_lines(text).map_err(|d| vec![d])?;
    let mut parser = Parser {
        text,
        lines,
        pos: 0,
    };
    if parser.lines.is_empty() {
        return Ok(Node::Scalar(Scalar {
            text: String::new(),
            style: ScalarStyle::Plain,
            span: SourceSpan::locate(text, 0, 0),
        }));
    }
    let indent = parser.lines[0].indent;
    let node = parser.block(indent).map_err(|d| vec![d])?;
    if parser.pos < parser.lines.len() {
        let line = &parser.lines[parser.pos];
        return Err(vec![parser.err(line.offset, line.content.len(), "unexpected content after document")]);
    }
    Ok(node)
}

fn split_lines(text: &str) -> PResult<Vec<Line<'_>>> {
    let mut lines = Vec::new();
    let mut offset = 0;
    let mut first = true;
    for raw in text.split('\n') {
        let line_offset = offset;
        offset += raw.len() + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let indent = raw.len() - raw.trim_start_matches(' ').len();
        let rest = &raw[indent..];
        if rest.starts_with('\t') {
            return Err(diag_at(text, line_offset + indent, 1, Code::UnsupportedYaml, "tab characters are not allowed in indentation"));
        }
        let content = strip_comment(rest).trim_end();
        if content.is_empty() {
            continue;
        }
        if first && indent == 0 && content == "---" {
            first = false;
            continue;
        }
        first = false;
        if indent == 0 && (content == "---" || content == "...") {
            return Err(diag_at(text, line_offset, 3, Code::UnsupportedYaml, "multi-document streams are not supported"));
        }
        if indent == 0 && content.starts_with('%') {
            return Err(diag_at(text, line_offset, content.len(), Code::UnsupportedYaml, "directives are not supported"));
        }
        lines.push(Line {
            indent,
            content,
            offset: line_offset + indent,
        });
    }
    Ok(lines)
}

/// Drops a trailing `# comment` that is outside quotes.
fn strip_comment(s: &str) -> &str {
    let mut quote: Option<char> = None;
    let mut prev_space = true;
    let mut chars = s.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        match quote {
            Some('"') => {
                if c == '\\' {
                    chars.next();
                } else if c == '"' {
                    quote = None;
                }
            }
            Some(_) => {
                if c == '\'' {
                    if matches!(chars.peek(), Some((_, '\''))) {
                        chars.next();
                    } else {
                        quote = None;
                    }
                }
            }
            None => {
                if c == '#' && prev_space {
                    return &s[..i];
                }
                if (c == '"' || c == '\'') && prev_space_or_indicator(s, i) {
                    quote = Some(c);
                }
            }
        }
        prev_space = c == ' ';
    }
    s
}

/// Quotes only open a string at the start of a scalar position.
fn prev_space_or_indicator(s: &str, i: usize) -> bool {
    let before = s[..i].trim_end_matches(' ');
    before.is_empty() || before.ends_with(':') || before.ends_with('-') || before.ends_with('[') || before.ends_with(',')
}

fn diag_at(text: &str, offset: usize, len: usize, code: Code, message: &str) -> Diagnostic {
    Diagnostic::error(code, message).with_span(SourceSpan::locate(text, offset, len))
}

fn is_seq_item(content: &str) -> bool {
    content == "-" || content.starts_with("- ")
}

impl<'a> Parser<'a> {
    fn err(&self, offset: usize, len: usize, message: &str) -> Diagnostic {
        diag_at(self.text, offset, len, Code::Syntax, message)
    }

    fn unsupported(&self, offset: usize, len: usize, message: &str) -> Diagnostic {
        diag_at(self.text, offset, len, Code::UnsupportedYaml, message)
    }

    fn span(&self, offset: usize, len: usize) -> SourceSpan {
        SourceSpan::locate(self.text, offset, len)
    }

    fn block(&mut self, indent: usize) -> PResult<Node> {
        let line = self.lines[self.pos].clone();
        if is_seq_item(line.content) {
            self.seq(indent)
        } else if split_key(line.content).is_some() {
            self.map(indent)
        } else {
            self.pos += 1;
            self.inline(line.content, line.offset)
        }
    }

    fn seq(&mut self, indent: usize) -> PResult<Node> {
        let start = self.lines[self.pos].offset;
        let mut items = Vec::new();
        while self.pos < self.lines.len() {
            let line = self.lines[self.pos].clone();
            if line.indent < indent {
                break;
            }
            if line.indent > indent {
                return Err(self.err(line.offset, line.content.len(), "unexpected indentation"));
            }
            if !is_seq_item(line.content) {
                break;
            }
            let rest = line.content[1..].trim_start_matches(' ');
            if rest.is_empty() {
                self.pos += 1;
                match self.lines.get(self.pos) {
                    Some(next) if next.indent > indent => {
                        let child = next.indent;
                        items.push(self.block(child)?);
                    }
                    _ => items.push(Node::Scalar(Scalar {
                        text: String::new(),
                        style: ScalarStyle::Plain,
                        span: self.span(line.offset, 1),
                    })),
                }
                continue;
            }
            let shift = line.content.len() - rest.len();
            let child = Line {
                indent: indent + shift,
                content: rest,
                offset: line.offset + shift,
            };
            self.lines[self.pos] = child.clone();
            items.push(self.block(child.indent)?);
        }
        let end = self.end_offset();
        Ok(Node::Seq(items, self.span(start, end.saturating_sub(start))))
    }

    fn map(&mut self, indent: usize) -> PResult<Node> {
        let start = self.lines[self.pos].offset;
        let mut entries: Vec<(Scalar, Node)> = Vec::new();
        while self.pos < self.lines.len() {
            let line = self.lines[self.pos].clone();
            if line.indent < indent {
                break;
            }
            if line.indent > indent {
                return Err(self.err(line.offset, line.content.len(), "unexpected indentation"));
            }
            if is_seq_item(line.content) {
                break;
            }
            let Some((key_text, value_at)) = split_key(line.content) else {
                return Err(self.err(line.offset, line.content.len(), "expected `key: value`"));
            };
            let key = self.key_scalar(key_text, line.offset)?;
            if entries.iter().any(|(k, _)| k.text == key.text) {
                return Err(self.err(line.offset, key_text.len(), &format!("duplicate key `{}`", key.text)));
            }
            let value_text = line.content[value_at..].trim();
            let value_offset = line.offset + line.content.len() - line.content[value_at..].trim_start().len();
            self.pos += 1;
            let value = if !value_text.is_empty() {
                self.inline(value_text, value_offset)?
            } else {
                match self.lines.get(self.pos) {
                    Some(next) if next.indent > indent => {
                        let child = next.indent;
                        self.block(child)?
                    }
                    Some(next) if next.indent == indent && is_seq_item(next.content) => self.seq(indent)?,
                    _ => Node::Scalar(Scalar {
                        text: String::new(),
                        style: ScalarStyle::Plain,
                        span: self.span(line.offset + line.content.len(), 0),
                    }),
                }
            };
            entries.push((key, value));
        }
        let end = self.end_offset();
        Ok(Node::Map(entries, self.span(start, end.saturating_sub(start))))
    }

    fn end_offset(&self) -> usize {
        match self.pos.checked_sub(1).and_then(|i| self.lines.get(i)) {
            Some(l) => l.offset + l.content.len(),
            None => 0,
        }
    }

    fn key_scalar(&self, text: &str, offset: usize) -> PResult<Scalar> {
        let node = self.inline(text, offset)?;
        match node {
            Node::Scalar(s) if !s.text.is_empty() => Ok(s),
            _ => Err(self.err(offset, text.len(), "mapping keys must be non-empty scalars")),
        }
    }

    fn inline(&self, text: &str, offset: usize) -> PResult<Node> {
        let first = text.chars().next().unwrap_or(' ');
        match first {
            '"' | '\'' => {
                let (scalar, used) = self.quoted(text, offset)?;
                if !text[used..].trim().is_empty() {
                    return Err(self.err(offset + used, text.len() - used, "unexpected characters after quoted string"));
                }
                Ok(Node::Scalar(scalar))
            }
            '[' => self.flow_seq(text, offset),
            '{' => {
                if text.trim() == "{}" {
                    Ok(Node::Map(Vec::new(), self.span(offset, text.len())))
                } else {
                    Err(self.unsupported(offset, text.len(), "flow mappings are not supported"))
                }
            }
            '&' => Err(self.unsupported(offset, text.len(), "anchors are not supported")),
            '*' => Err(self.unsupported(offset, text.len(), "aliases are not supported")),
            '!' => Err(self.unsupported(offset, text.len(), "tags are not supported")),
            '|' | '>' => Err(self.unsupported(offset, text.len(), "block scalars are not supported")),
            '@' | '`' | '%' | ']' | '}' | ',' => Err(self.err(offset, 1, "reserved indicator at start of plain scalar")),
            _ => {
                if text.contains(": ") || text.ends_with(':') {
                    return Err(self.err(offset, text.len(), "nested mapping must start on its own line"));
                }
                Ok(Node::Scalar(Scalar {
                    text: text.to_string(),
                    style: ScalarStyle::Plain,
                    span: self.span(offset, text.len()),
                }))
            }
        }
    }

    fn flow_seq(&self, text: &str, offset: usize) -> PResult<Node> {
        let text = text.trim_end();
        if !text.ends_with(']') || text.len() < 2 {
            return Err(self.err(offset, text.len(), "unterminated flow sequence (must fit on one line)"));
        }
        let inner = &text[1..text.len() - 1];
        let mut items = Vec::new();
        if inner.trim().is_empty() {
            return Ok(Node::Seq(items, self.span(offset, text.len())));
        }
        let mut rest = inner;
        let mut at = offset + 1;
        loop {
            let lead = rest.len() - rest.trim_start().len();
            rest = &rest[lead..];
            at += lead;
            if rest.starts_with('"') || rest.starts_with('\'') {
                let (scalar, used) = self.quoted(rest, at)?;
                items.push(Node::Scalar(scalar));
                rest = &rest[used..];
                at += used;
                let lead = rest.len() - rest.trim_start().len();
                rest = &rest[lead..];
                at += lead;
            } else {
                let end = rest.find(',').unwrap_or(rest.len());
                let item = rest[..end].trim_end();
                if item.is_empty() {
                    return Err(self.err(at, 1, "empty flow sequence item"));
                }
                if item.starts_with(['[', '{', '&', '*', '!']) {
                    return Err(self.unsupported(at, item.len(), "nested flow collections, anchors, aliases and tags are not supported"));
                }
                if item.contains(": ") {
                    return Err(self.unsupported(at, item.len(), "flow mappings are not supported"));
                }
                items.push(Node::Scalar(Scalar {
                    text: item.to_string(),
                    style: ScalarStyle::Plain,
                    span: self.span(at, item.len()),
                }));
                rest = &rest[end..];
                at += end;
            }
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with(',') {
                return Err(self.err(at, rest.len(), "expected `,` in flow sequence"));
            }
            rest = &rest[1..];
            at += 1;
        }
        Ok(Node::Seq(items, self.span(offset, text.len())))
    }

    /// Parses a quoted string at the start of `text`; returns the scalar and
    /// the number of bytes consumed.
    fn quoted(&self, text: &str, offset: usize) -> PResult<(Scalar, usize)> {
        let quote = text.chars().next().unwrap_or('"');
        let mut out = String::new();
        let mut chars = text.char_indices().skip(1).peekable();
        while let Some((i, c)) = chars.next() {
            if quote == '"' {
                match c {
                    '"' => {
                        return Ok((
                            Scalar {
                                text: out,
                                style: ScalarStyle::DoubleQuoted,
                                span: self.span(offset, i + 1),
                            },
                            i + 1,
                        ))
                    }
                    '\\' => {
                        let Some((j, e)) = chars.next() else { break };
                        out.push(match e {
                            'n' => '\n',
                            't' => '\t',
                            'r' => '\r',
                            '0' => '\0',
                            '"' => '"',
                            '\\' => '\\',
                            '/' => '/',
                            _ => return Err(self.err(offset + j - 1, 2, "unsupported escape sequence")),
                        });
                    }
                    _ => out.push(c),
                }
            } else if c == '\'' {
                if matches!(chars.peek(), Some((_, '\''))) {
                    chars.next();
                    out.push('\'');
                } else {
                    return Ok((
                        Scalar {
                            text: out,
                            style: ScalarStyle::SingleQuoted,
                            span: self.span(offset, i + 1),
                        },
                        i + 1,
                    ));
                }
            } else {
                out.push(c);
            }
        }
        Err(self.err(offset, text.len(), "unterminated quoted string"))
    }
}

/// Finds `key: value` / `key:`; returns the key text and the byte index just
/// past the colon.
fn split_key(content: &str) -> Option<(&str, usize)> {
    let bytes = content.as_bytes();
    let (key_end, colon) = if bytes.first() == Some(&b'"') || bytes.first() == Some(&b'\'') {
        let q = bytes[0];
        let mut i = 1;
        while i < bytes.len() {
            if bytes[i] == b'\\' && q == b'"' {
                i += 2;
                continue;
            }
            if bytes[i] == q {
                if q == b'\'' && bytes.get(i + 1) == Some(&b'\'') {
                    i += 2;
                    continue;
                }
                break;
            }
            i += 1;
        }
        let after = i + 1;
        let rest = content.get(after..)?;
        let colon = after + (rest.len() - rest.trim_start().len());
        (after, colon)
    } else {
        if content.starts_with('[') || content.starts_with('{') {
            return None;
        }
        let mut found = None;
        for (i, c) in content.char_indices() {
            if c == ':' {
                let next = content[i + 1..].chars().next();
                if next.is_none() || next == Some(' ') {
                    found = Some(i);
                    break;
                }
            }
        }
        let i = found?;
        (i, i)
    };
    if bytes.get(colon) != Some(&b':') {
        return None;
    }
    let next = bytes.get(colon + 1);
    if next.is_some() && next != Some(&b' ') {
        return None;
    }
    Some((content[..key_end].trim_end(), colon + 1))
}

const RESERVED_PLAIN: &[&str] = &[
    "true", "false", "yes", "no", "on", "off", "y", "n", "null", "~", "True", "False", "Yes", "No", "On", "Off", "Y", "N",
    "Null", "NULL", "TRUE", "FALSE", "YES", "NO", "ON", "OFF",
];

/// True when `s` can be emitted as a plain scalar that standard readers load
/// back as the same string.
pub fn is_plain_string_safe(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else { return false };
    first.is_ascii_alphabetic()
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && !RESERVED_PLAIN.contains(&s)
}

/// Renders a string scalar, quoting only when needed.
pub fn string_scalar(s: &str) -> String {
    if is_plain_string_safe(s) {
        s.to_string()
    } else {
        double_quoted(s)
    }
}

pub fn double_quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            '\0' => out.push_str("\\0"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}
