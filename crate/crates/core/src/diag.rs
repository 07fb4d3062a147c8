//! Diagnostics shared by the parsers, validators and the codec.

use std::fmt;

use serde::Serialize;

/// Location of a diagnostic inside the source text.
///
/// `line` and `column` are 1-based, `column` counts characters; `offset` and
/// `len` are in bytes and always stay within the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub offset: usize,
    pub len: usize,
}

impl SourceSpan {
    /// Builds a span for `len` bytes starting at byte `offset` of `text`.
    /// Both values are clamped to the text and to char boundaries.
    pub fn locate(text: &str, offset: usize, len: usize) -> Self {
        let mut offset = offset.min(text.len());
        while !text.is_char_boundary(offset) {
            offset -= 1;
        }
        let mut end = (offset + len).min(text.len());
        while !text.is_char_boundary(end) {
            end -= 1;
        }
        let before = &text[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = text[line_start..offset].chars().count() + 1;
        SourceSpan {
            line,
            column,
            offset,
            len: end - offset,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

/// Stable machine-readable diagnostic codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Code {
    Encoding,
    Syntax,
    Arity,
    UnsupportedYaml,
    UndefinedBox,
    UnusedBox,
    DuplicateArgument,
    MissingArgument,
    Precision,
    UnknownModel,
    UnknownParam,
    DuplicateParam,
    MissingParam,
    ParamType,
    ParamDomain,
    DivisionCount,
    DivisionWidth,
    EmptyModel,
    NonFinite,
    NonPositiveSize,
    OutsideOctant,
    SizeFilter,
    CountFilter,
    Clamped,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Encoding => "encoding",
            Code::Syntax => "syntax",
            Code::Arity => "arity",
            Code::UnsupportedYaml => "unsupported-yaml",
            Code::UndefinedBox => "undefined-box",
            Code::UnusedBox => "unused-box",
            Code::DuplicateArgument => "duplicate-argument",
            Code::MissingArgument => "missing-argument",
            Code::Precision => "precision",
            Code::UnknownModel => "unknown-model",
            Code::UnknownParam => "unknown-param",
            Code::DuplicateParam => "duplicate-param",
            Code::MissingParam => "missing-param",
            Code::ParamType => "param-type",
            Code::ParamDomain => "param-domain",
            Code::DivisionCount => "division-count",
            Code::DivisionWidth => "division-width",
            Code::EmptyModel => "empty-model",
            Code::NonFinite => "non-finite",
            Code::NonPositiveSize => "non-positive-size",
            Code::OutsideOctant => "outside-octant",
            Code::SizeFilter => "size-filter",
            Code::CountFilter => "count-filter",
            Code::Clamped => "clamped",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span: Option<SourceSpan>,
    /// Index of the primitive instance the diagnostic refers to, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<usize>,
}

impl Diagnostic {
    pub fn error(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message: message.into(),
            span: None,
            instance: None,
        }
    }

    pub fn warning(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(code, message)
        }
    }

    pub fn with_span(mut self, span: SourceSpan) -> Self {
        self.span = Some(span);
        self
    }

    pub fn with_instance(mut self, index: usize) -> Self {
        self.instance = Some(index);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(span) = &self.span {
            write!(f, "{}:{}: ", span.line, span.column)?;
        }
        let severity = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{severity}[{}]: ", self.code)?;
        if let Some(index) = self.instance {
            write!(f, "instance {index}: ")?;
        }
        f.write_str(&self.message)
    }
}

/// A non-empty list of diagnostics, returned when an operation fails.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn has_errors(&self) -> bool {
        self.0.iter().any(Diagnostic::is_error)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Diagnostic> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, code: Code) -> bool {
        self.0.iter().any(|d| d.code == code)
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostics {}

impl From<Vec<Diagnostic>> for Diagnostics {
    fn from(v: Vec<Diagnostic>) -> Self {
        Diagnostics(v)
    }
}

impl IntoIterator for Diagnostics {
    type Item = Diagnostic;
    type IntoIter = std::vec::IntoIter<Diagnostic>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}
