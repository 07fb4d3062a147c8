//! Python-style shape programs.
//!
//! ```text
//! program   := { statement NEWLINE }
//! statement := IDENT "=" call
//! call      := IDENT "(" [ kwarg { "," kwarg } [ "," ] ] ")"
//! kwarg     := IDENT "=" value
//! value     := NUMBER | STRING | IDENT | "(" value { "," value } [ "," ] ")"
//! ```
//!
//! `Box(position=(x, y, z), size=(sx, sy, sz), rotation=r)` defines a box;
//! `Model(id="...", [name="...",] box=<box variable>, KEY=value, ...)` places a
//! primitive. Newlines inside parentheses are ignored and `#` starts a comment.

use super::{build_box, build_params, parse_number, Literal, ParseResult, PrimitiveInstance, RawBox, RawParam, Sink};
use crate::catalog::PrimitiveCatalog;
use crate::diag::{Code, Diagnostic, SourceSpan};
use crate::OrientedBox;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(Literal),
    Str(String),
    LParen,
    RParen,
    Comma,
    Eq,
    Newline,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
    len: usize,
}

fn lex(text: &str, sink: &mut Sink<'_>) -> Vec<Token> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut depth = 0usize;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'\n' => {
                i += 1;
                if depth == 0 && !matches!(tokens.last(), None | Some(Token { tok: Tok::Newline, .. })) {
                    tokens.push(Token { tok: Tok::Newline, offset: start, len: 1 });
                }
            }
            b'(' => {
                depth += 1;
                i += 1;
                tokens.push(Token { tok: Tok::LParen, offset: start, len: 1 });
            }
            b')' => {
                depth = depth.saturating_sub(1);
                i += 1;
                tokens.push(Token { tok: Tok::RParen, offset: start, len: 1 });
            }
            b',' => {
                i += 1;
                tokens.push(Token { tok: Tok::Comma, offset: start, len: 1 });
            }
            b'=' => {
                i += 1;
                tokens.push(Token { tok: Tok::Eq, offset: start, len: 1 });
            }
            b'"' | b'\'' => {
                let (value, end) = lex_string(text, start, sink);
                i = end;
                if let Some(value) = value {
                    tokens.push(Token { tok: Tok::Str(value), offset: start, len: end - start });
                }
            }
            b'-' | b'0'..=b'9' | b'.' => {
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'.' || bytes[i] == b'_') {
                    i += 1;
                }
                let raw = &text[start..i];
                match parse_number(raw) {
                    Some(lit) => tokens.push(Token { tok: Tok::Number(lit), offset: start, len: i - start }),
                    None => sink.error(
                        Diagnostic::error(Code::Syntax, format!("invalid number literal `{raw}`")).with_span(sink.span(start, i - start)),
                    ),
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token { tok: Tok::Ident(text[start..i].to_string()), offset: start, len: i - start });
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                i += ch.len_utf8();
                sink.error(
                    Diagnostic::error(Code::Syntax, format!("unexpected character `{}`", ch.escape_default()))
                        .with_span(sink.span(start, ch.len_utf8())),
                );
            }
        }
    }
    if !matches!(tokens.last(), None | Some(Token { tok: Tok::Newline, .. })) {
        tokens.push(Token { tok: Tok::Newline, offset: text.len(), len: 0 });
    }
    tokens
}

/// Returns the decoded string (or `None` on error) and the end offset.
fn lex_string(text: &str, start: usize, sink: &mut Sink<'_>) -> (Option<String>, usize) {
    let quote = text.as_bytes()[start] as char;
    let mut out = String::new();
    let mut chars = text[start + 1..].char_indices();
    while let Some((j, c)) = chars.next() {
        let at = start + 1 + j;
        match c {
            '\n' => break,
            '\\' => {
                let Some((_, e)) = chars.next() else { break };
                let decoded = match e {
                    'n' => '\n',
                    't' => '\t',
                    'r' => '\r',
                    '0' => '\0',
                    '\\' => '\\',
                    '"' => '"',
                    '\'' => '\'',
                    _ => {
                        sink.error(Diagnostic::error(Code::Syntax, "unsupported escape sequence").with_span(sink.span(at, 1 + e.len_utf8())));
                        continue;
                    }
                };
                out.push(decoded);
            }
            c if c == quote => return (Some(out), at + 1),
            c => out.push(c),
        }
    }
    let end = text[start..].find('\n').map_or(text.len(), |n| start + n);
    sink.error(Diagnostic::error(Code::Syntax, "unterminated string literal").with_span(sink.span(start, end - start)));
    (None, end)
}

#[derive(Debug, Clone)]
enum Value {
    Lit(Literal),
    Name(String),
    Tuple(Vec<Value>),
}

#[derive(Debug, Clone)]
struct Arg {
    name: String,
    name_span: (usize, usize),
    value: Value,
    span: (usize, usize),
}

struct Statement {
    callee: String,
    callee_span: (usize, usize),
    args: Vec<Arg>,
    span: (usize, usize),
}

struct Cursor<'t> {
    tokens: &'t [Token],
    pos: usize,
}

impl<'t> Cursor<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&'t Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn skip_line(&mut self) {
        while let Some(t) = self.next() {
            if t.tok == Tok::Newline {
                break;
            }
        }
    }

    fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(t) => (t.offset, t.len.max(1)),
            None => (self.tokens.last().map_or(0, |t| t.offset + t.len), 0),
        }
    }
}

type Expected = (String, (usize, usize));

fn expect(cur: &mut Cursor<'_>, tok: &Tok, what: &str) -> Result<(usize, usize), Expected> {
    match cur.peek() {
        Some(t) if &t.tok == tok => {
            cur.next();
            Ok((t.offset, t.len))
        }
        _ => Err((format!("expected {what}"), cur.here())),
    }
}

fn parse_statement(cur: &mut Cursor<'_>) -> Result<Statement, Expected> {
    let start = cur.here().0;
    match cur.next() {
        Some(Token { tok: Tok::Ident(_), .. }) => {}
        _ => return Err(("expected an assignment `name = Call(...)`".into(), (start, 1))),
    }
    expect(cur, &Tok::Eq, "`=`")?;
    let (callee, callee_span) = match cur.next() {
        Some(Token { tok: Tok::Ident(name), offset, len }) => (name.clone(), (*offset, *len)),
        Some(t) => return Err(("expected `Box(...)` or `Model(...)`".into(), (t.offset, t.len))),
        None => return Err(("expected `Box(...)` or `Model(...)`".into(), cur.here())),
    };
    expect(cur, &Tok::LParen, "`(`")?;
    let mut args = Vec::new();
    loop {
        if let Some(Token { tok: Tok::RParen, .. }) = cur.peek() {
            break;
        }
        let (name, name_span) = match cur.next() {
            Some(Token { tok: Tok::Ident(n), offset, len }) => (n.clone(), (*offset, *len)),
            Some(t) => return Err(("expected keyword argument `name=value`".into(), (t.offset, t.len))),
            None => return Err(("expected keyword argument".into(), cur.here())),
        };
        expect(cur, &Tok::Eq, "`=` after keyword")?;
        let vstart = cur.here().0;
        let value = parse_value(cur)?;
        let vend = cur.tokens[cur.pos - 1].offset + cur.tokens[cur.pos - 1].len;
        args.push(Arg { name, name_span, value, span: (vstart, vend - vstart) });
        match cur.peek() {
            Some(Token { tok: Tok::Comma, .. }) => {
                cur.next();
            }
            Some(Token { tok: Tok::RParen, .. }) => break,
            _ => return Err(("expected `,` or `)`".into(), cur.here())),
        }
    }
    let (rp, _) = expect(cur, &Tok::RParen, "`)`")?;
    match cur.peek() {
        Some(Token { tok: Tok::Newline, .. }) | None => {
            cur.next();
        }
        _ => return Err(("expected end of statement".into(), cur.here())),
    }
    Ok(Statement { callee, callee_span, args, span: (start, rp + 1 - start) })
}

fn parse_value(cur: &mut Cursor<'_>) -> Result<Value, Expected> {
    match cur.next() {
        Some(Token { tok: Tok::Number(l), .. }) => Ok(Value::Lit(l.clone())),
        Some(Token { tok: Tok::Str(s), .. }) => Ok(Value::Lit(Literal::Str(s.clone()))),
        Some(Token { tok: Tok::Ident(n), .. }) => Ok(Value::Name(n.clone())),
        Some(Token { tok: Tok::LParen, .. }) => {
            let mut items = Vec::new();
            loop {
                if let Some(Token { tok: Tok::RParen, .. }) = cur.peek() {
                    cur.next();
                    break;
                }
                items.push(parse_value(cur)?);
                match cur.next() {
                    Some(Token { tok: Tok::Comma, .. }) => {}
                    Some(Token { tok: Tok::RParen, .. }) => break,
                    Some(t) => return Err(("expected `,` or `)` in tuple".into(), (t.offset, t.len))),
                    None => return Err(("unterminated tuple".into(), cur.here())),
                }
            }
            Ok(Value::Tuple(items))
        }
        Some(t) => Err(("expected a value".into(), (t.offset, t.len))),
        None => Err(("expected a value".into(), cur.here())),
    }
}

struct BoxVar {
    name: String,
    bbox: Option<OrientedBox>,
    span: (usize, usize),
    used: bool,
}

fn number_of(v: &Value) -> Option<(f64, usize)> {
    match v {
        Value::Lit(l) => l.as_number(),
        _ => None,
    }
}

fn vec3(arg: &Arg, sink: &mut Sink<'_>) -> Option<[(f64, usize); 3]> {
    let span = sink.span(arg.span.0, arg.span.1);
    match &arg.value {
        Value::Tuple(items) if items.len() == 3 => {
            let nums: Option<Vec<_>> = items.iter().map(number_of).collect();
            match nums {
                Some(n) => Some([n[0], n[1], n[2]]),
                None => {
                    sink.error(Diagnostic::error(Code::Syntax, format!("`{}` must contain numbers", arg.name)).with_span(span));
                    None
                }
            }
        }
        Value::Tuple(items) => {
            sink.error(
                Diagnostic::error(Code::Arity, format!("`{}` needs 3 components, found {}", arg.name, items.len())).with_span(span),
            );
            None
        }
        _ => {
            sink.error(Diagnostic::error(Code::Syntax, format!("`{}` must be a 3-tuple", arg.name)).with_span(span));
            None
        }
    }
}

fn unique_args<'a>(stmt: &'a Statement, sink: &mut Sink<'_>) -> Vec<&'a Arg> {
    let mut seen: Vec<&Arg> = Vec::new();
    for a in &stmt.args {
        if seen.iter().any(|s| s.name == a.name) {
            sink.error(
                Diagnostic::error(Code::DuplicateArgument, format!("argument `{}` given twice", a.name))
                    .with_span(sink.span(a.name_span.0, a.name_span.1)),
            );
        } else {
            seen.push(a);
        }
    }
    seen
}

fn box_statement(stmt: &Statement, sink: &mut Sink<'_>) -> Option<OrientedBox> {
    let args = unique_args(stmt, sink);
    let (mut position, mut size, mut rotation) = (None, None, Some((0.0, 0)));
    let mut ok = true;
    for a in args {
        match a.name.as_str() {
            "position" => position = vec3(a, sink),
            "size" => size = vec3(a, sink),
            "rotation" => {
                rotation = number_of(&a.value);
                if rotation.is_none() {
                    sink.error(Diagnostic::error(Code::Syntax, "`rotation` must be a number").with_span(sink.span(a.span.0, a.span.1)));
                }
            }
            other => {
                ok = false;
                sink.error(
                    Diagnostic::error(Code::Syntax, format!("unknown Box argument `{other}`"))
                        .with_span(sink.span(a.name_span.0, a.name_span.1)),
                );
            }
        }
    }
    for (name, present) in [("position", stmt.args.iter().any(|a| a.name == "position")), ("size", stmt.args.iter().any(|a| a.name == "size"))] {
        if !present {
            ok = false;
            sink.error(
                Diagnostic::error(Code::MissingArgument, format!("Box needs `{name}`"))
                    .with_span(sink.span(stmt.span.0, stmt.span.1)),
            );
        }
    }
    let raw = RawBox {
        position: position?,
        size: size?,
        rotation: rotation?,
        span: sink.span(stmt.span.0, stmt.span.1),
    };
    if !ok {
        return None;
    }
    build_box(&raw, sink)
}

fn is_param_key(key: &str) -> bool {
    let mut chars = key.chars();
    chars.next().is_some_and(|c| c.is_ascii_uppercase()) && chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit())
}

fn model_statement(
    stmt: &Statement,
    boxes: &mut [BoxVar],
    catalog: &PrimitiveCatalog,
    sink: &mut Sink<'_>,
) -> Option<PrimitiveInstance> {
    let args = unique_args(stmt, sink);
    let mut id: Option<(String, SourceSpan)> = None;
    let mut name = None;
    let mut bbox: Option<Option<OrientedBox>> = None;
    let mut raw_params = Vec::new();
    for a in args {
        let span = sink.span(a.span.0, a.span.1);
        match a.name.as_str() {
            "id" => match &a.value {
                Value::Lit(Literal::Str(s)) => id = Some((s.clone(), span)),
                _ => sink.error(Diagnostic::error(Code::Syntax, "`id` must be a string").with_span(span)),
            },
            "name" => match &a.value {
                Value::Lit(Literal::Str(s)) => name = Some(s.clone()),
                _ => sink.error(Diagnostic::error(Code::Syntax, "`name` must be a string").with_span(span)),
            },
            "box" => match &a.value {
                Value::Name(var) => match boxes.iter_mut().rev().find(|b| &b.name == var) {
                    Some(b) => {
                        b.used = true;
                        bbox = Some(b.bbox);
                    }
                    None => sink.error(Diagnostic::error(Code::UndefinedBox, format!("`{var}` is not a defined Box")).with_span(span)),
                },
                _ => sink.error(Diagnostic::error(Code::Syntax, "`box` must name a Box variable").with_span(span)),
            },
            key if is_param_key(key) => match &a.value {
                Value::Lit(lit) => raw_params.push(RawParam {
                    key: key.to_string(),
                    key_span: sink.span(a.name_span.0, a.name_span.1),
                    value: lit.clone(),
                    value_span: span,
                }),
                Value::Name(n) => raw_params.push(RawParam {
                    key: key.to_string(),
                    key_span: sink.span(a.name_span.0, a.name_span.1),
                    value: Literal::Bare(n.clone()),
                    value_span: span,
                }),
                Value::Tuple(_) => sink.error(Diagnostic::error(Code::Syntax, format!("parameter `{key}` must be a scalar")).with_span(span)),
            },
            other => sink.error(
                Diagnostic::error(Code::Syntax, format!("invalid Model argument `{other}` (parameter keys are upper-case)"))
                    .with_span(sink.span(a.name_span.0, a.name_span.1)),
            ),
        }
    }
    let stmt_span = sink.span(stmt.span.0, stmt.span.1);
    let Some((model_id, id_span)) = id else {
        sink.error(Diagnostic::error(Code::MissingArgument, "Model needs `id`").with_span(stmt_span));
        return None;
    };
    let params = build_params(&model_id, id_span, raw_params, catalog, sink);
    let bbox = match bbox {
        Some(b) => b?,
        None => {
            if !stmt.args.iter().any(|a| a.name == "box") {
                sink.error(Diagnostic::error(Code::MissingArgument, "Model needs `box`").with_span(stmt_span));
            }
            return None;
        }
    };
    Some(PrimitiveInstance { model_id, name, bbox, params })
}

/// Parses a Python-style shape program. Instance order follows the order of
/// `Model(...)` statements.
pub fn parse_python(text: &str, catalog: &PrimitiveCatalog, strict: bool) -> ParseResult {
    let mut sink = Sink::new(text, strict);
    let tokens = lex(text, &mut sink);
    let mut cur = Cursor { tokens: &tokens, pos: 0 };
    let mut boxes: Vec<BoxVar> = Vec::new();
    let mut instances = Vec::new();
    while cur.peek().is_some() {
        let target = match cur.peek() {
            Some(Token { tok: Tok::Ident(n), .. }) => Some(n.clone()),
            _ => None,
        };
        let stmt = match parse_statement(&mut cur) {
            Ok(s) => s,
            Err((message, (offset, len))) => {
                sink.error(Diagnostic::error(Code::Syntax, message).with_span(sink.span(offset, len)));
                // resume after the line holding the offending token
                cur.pos = tokens.iter().position(|t| t.offset >= offset).unwrap_or(tokens.len());
                cur.skip_line();
                continue;
            }
        };
        match stmt.callee.as_str() {
            "Box" => {
                let bbox = box_statement(&stmt, &mut sink);
                boxes.push(BoxVar {
                    name: target.unwrap_or_default(),
                    bbox,
                    span: stmt.span,
                    used: false,
                });
            }
            "Model" => {
                if let Some(inst) = model_statement(&stmt, &mut boxes, catalog, &mut sink) {
                    instances.push(inst);
                }
            }
            other => sink.error(
                Diagnostic::error(Code::Syntax, format!("unknown constructor `{other}` (expected Box or Model)"))
                    .with_span(sink.span(stmt.callee_span.0, stmt.callee_span.1)),
            ),
        }
    }
    for b in boxes.iter().filter(|b| !b.used && b.bbox.is_some()) {
        let d = Diagnostic::warning(Code::UnusedBox, format!("box `{}` is never used", b.name)).with_span(sink.span(b.span.0, b.span.1));
        sink.warn(d);
    }
    if sink.errors.is_empty() && instances.is_empty() {
        sink.error(Diagnostic::error(Code::EmptyModel, "program defines no Model").with_span(sink.span(0, 0)));
    }
    sink.finish(instances)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;
    use crate::program::{ParamValue, Params};

    const EXAMPLE: &str = "b0 = Box(position=(300, 200, 1000), size=(600, 400, 2000), rotation=0)\n\
                           m0 = Model(id=\"M-BB01\", box=b0, N=2, NKA=298, NKB=298, DBXX=1)\n";

    #[test]
    fn parses_two_statement_primitive() {
        let cat = builtin_catalog();
        let parsed = parse_python(EXAMPLE, &cat, true).unwrap();
        assert!(parsed.warnings.is_empty());
        let m = parsed.model;
        assert_eq!(m.len(), 1);
        let inst = &m.instances[0];
        assert_eq!(inst.model_id, "M-BB01");
        assert_eq!(inst.bbox, OrientedBox::new([300.0, 200.0, 1000.0], [600.0, 400.0, 2000.0], 0.0).unwrap());
        let mut expected = Params::new();
        expected.insert("N", ParamValue::Int(2)).unwrap();
        expected.insert("NKA", ParamValue::Real(298.0)).unwrap();
        expected.insert("NKB", ParamValue::Real(298.0)).unwrap();
        expected.insert("DBXX", ParamValue::Enum("1".into())).unwrap();
        assert_eq!(inst.params, expected);
    }

    #[test]
    fn empty_params() {
        let cat = builtin_catalog();
        let text = "b0 = Box(position=(300, 9, 1000), size=(600, 18, 2000))\nm = Model(id=\"M-DOOR\", box=b0)\n";
        let m = parse_python(text, &cat, true).unwrap().model;
        assert!(m.instances[0].params.is_empty());
        assert_eq!(m.instances[0].bbox.rotation_deg(), 0.0);
    }

    #[test]
    fn arity_error_points_at_tuple() {
        let cat = builtin_catalog();
        let text = "b0 = Box(position=(300, 200, 1000), size=(600, 400), rotation=0)\nm0 = Model(id=\"M-DOOR\", box=b0)\n";
        let err = parse_python(text, &cat, true).unwrap_err();
        let d = err.iter().find(|d| d.code == Code::Arity).unwrap();
        let span = d.span.unwrap();
        assert_eq!(&text[span.offset..span.offset + span.len], "(600, 400)");
    }

    #[test]
    fn strict_and_lenient_unknown_model() {
        let cat = builtin_catalog();
        let text = "b = Box(position=(1, 1, 1), size=(2, 2, 2))\nm = Model(id=\"M-NOPE\", box=b, FOO=\"x\", BAR=3.5, BAZ=up)\n";
        let err = parse_python(text, &cat, true).unwrap_err();
        assert!(err.contains(Code::UnknownModel));
        let ok = parse_python(text, &cat, false).unwrap();
        assert!(ok.warnings.iter().any(|d| d.code == Code::UnknownModel));
        let p = &ok.model.instances[0].params;
        assert_eq!(p.get("FOO"), Some(&ParamValue::Text("x".into())));
        assert_eq!(p.get("BAR"), Some(&ParamValue::Real(3.5)));
        assert_eq!(p.get("BAZ"), Some(&ParamValue::Enum("up".into())));
    }

    #[test]
    fn schema_violations() {
        let cat = builtin_catalog();
        let text = "b = Box(position=(300, 200, 1000), size=(600, 400, 2000))\nm = Model(id=\"M-BB01\", box=b, DBXX=\"upper\")\n";
        let err = parse_python(text, &cat, true).unwrap_err();
        assert!(err.contains(Code::ParamDomain));
        let text = "b = Box(position=(300, 200, 1000), size=(600, 400, 2000))\nm = Model(id=\"M-BB01\", box=b, N=2.5)\n";
        let err = parse_python(text, &cat, true).unwrap_err();
        let d = err.iter().find(|d| d.code == Code::ParamType).unwrap();
        assert_eq!(d.span.unwrap().line, 2);
        let lenient = parse_python(text, &cat, false).unwrap();
        assert_eq!(lenient.model.instances[0].params.get("N"), Some(&ParamValue::Real(2.5)));
    }

    #[test]
    fn duplicate_key_is_always_an_error() {
        let cat = builtin_catalog();
        let text = "b = Box(position=(1, 1, 1), size=(2, 2, 2))\nm = Model(id=\"M-X\", box=b, A=1, A=2)\n";
        assert!(parse_python(text, &cat, false).is_err());
    }

    #[test]
    fn comments_and_continuations() {
        let cat = builtin_catalog();
        let text = "# cabinet\nb = Box(\n    position=(1, 1, 1),  # center\n    size=(2, 2, 2),\n)\nm = Model(id=\"M-DOOR\", box=b)\n";
        assert_eq!(parse_python(text, &cat, true).unwrap().model.len(), 1);
    }

    #[test]
    fn reports_several_errors_with_recovery() {
        let cat = builtin_catalog();
        let text = "b = Box(position=(1, 1), size=(2, 2, 2))\nm = Model(id=\"M-DOOR\", box=zz)\nx = = 3\nq = Box(position=(1,1,1), size=(1,1,1e3))\n";
        let err = parse_python(text, &cat, true).unwrap_err();
        let lines: Vec<usize> = err.iter().filter(|d| d.is_error()).map(|d| d.span.unwrap().line).collect();
        for line in [1, 2, 3, 4] {
            assert!(lines.contains(&line), "missing error on line {line}: {err}");
        }
    }

    #[test]
    fn undefined_box_and_empty_program() {
        let cat = builtin_catalog();
        assert!(parse_python("m = Model(id=\"M-DOOR\", box=nope)\n", &cat, true).unwrap_err().contains(Code::UndefinedBox));
        assert!(parse_python("", &cat, true).unwrap_err().contains(Code::EmptyModel));
        assert!(parse_python("# only a comment\n", &cat, false).unwrap_err().contains(Code::EmptyModel));
    }

    #[test]
    fn zero_size_is_an_error() {
        let cat = builtin_catalog();
        let text = "b = Box(position=(1, 1, 1), size=(0, 2, 2))\nm = Model(id=\"M-DOOR\", box=b)\n";
        assert!(parse_python(text, &cat, false).unwrap_err().contains(Code::NonPositiveSize));
    }
}
