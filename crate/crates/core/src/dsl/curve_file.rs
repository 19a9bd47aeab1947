//! Curve definition files.
//!
//! A curve file is a small TOML document:
//!
//! ```text
//! name = "helicoid"                     # optional
//! gamma = ["cos(t)", "sin(t)", "t"]     # three expressions in t
//! L = "zero"                            # or three expressions in t
//! interval = [0, "2*pi"]                # numbers or constant expressions
//! ```
//!
//! Unknown keys are rejected. Errors carry the 1-based line and column of
//! the offending text, pointing inside the expression string when the
//! expression itself fails to parse.

use std::ops::Range;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};

use super::expr::Expr;
use super::parser::parse;

/// The normal-derivative field of a curve file.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    /// `L = "zero"`: an exactly vanishing field.
    Zero,
    Exprs([Expr; 3]),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub name: Option<String>,
    pub gamma: [Expr; 3],
    pub field: FieldSpec,
    pub interval: (f64, f64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurveFile {
    name: Option<String>,
    gamma: Spanned<Vec<Spanned<String>>>,
    #[serde(rename = "L")]
    field: Spanned<toml::Value>,
    interval: Spanned<Vec<toml::Value>>,
}

struct Source<'a> {
    path: PathBuf,
    text: &'a str,
}

impl Source<'_> {
    fn line_col(&self, offset: usize) -> (usize, usize) {
        let offset = offset.min(self.text.len());
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rfind('\n').map_or(offset, |nl| offset - nl - 1) + 1;
        (line, col)
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.line_col(offset);
        Error::CurveFile {
            path: self.path.clone(),
            line,
            column,
            message: message.into(),
        }
    }

    /// Parses an expression that sits, quoted, at `span` of the source.
    fn expr_at(&self, text: &str, span: Range<usize>) -> Result<Expr> {
        parse(text).map_err(|e| {
            // Skip the opening quote; exact for strings without escapes.
            let start = span.start + 1 + e.offset();
            self.error(start, e.to_string())
        })
    }

    /// Like [`Self::expr_at`] for strings whose own span is unknown: the
    /// quoted literal is searched for inside `outer`.
    fn expr_within(&self, text: &str, outer: Range<usize>) -> Result<Expr> {
        let hay = &self.text[outer.clone()];
        let start = hay
            .find(&format!("\"{text}\""))
            .or_else(|| hay.find(&format!("'{text}'")))
            .map_or(outer.start, |i| outer.start + i);
        self.expr_at(text, start..start + text.len() + 2)
    }
}

fn three<T>(v: Vec<T>) -> std::result::Result<[T; 3], usize> {
    let n = v.len();
    v.try_into().map_err(|_| n)
}

/// Parses curve file text; `path` is only used for error messages.
pub fn parse_curve_file(text: &str, path: impl AsRef<Path>) -> Result<CurveSpec> {
    let src = Source {
        path: path.as_ref().to_path_buf(),
        text,
    };
    let raw: RawCurveFile = toml::from_str(text).map_err(|e| {
        let at = e.span().map_or(0, |s| s.start);
        src.error(at, e.message().trim().to_string())
    })?;

    let gamma_span = raw.gamma.span();
    let gamma_items = raw.gamma.into_inner();
    let gamma_exprs = gamma_items
        .iter()
        .map(|s| src.expr_at(s.get_ref(), s.span()))
        .collect::<Result<Vec<_>>>()?;
    let gamma = three(gamma_exprs)
        .map_err(|n| src.error(gamma_span.start, format!("`gamma` needs 3 components, found {n}")))?;

    let field_span = raw.field.span();
    let field = match raw.field.into_inner() {
        toml::Value::String(s) if s == "zero" => FieldSpec::Zero,
        toml::Value::String(s) => {
            return Err(src.error(
                field_span.start,
                format!("`L` must be \"zero\" or an array of 3 expressions, found \"{s}\""),
            ))
        }
        toml::Value::Array(items) => {
            let exprs = items
                .iter()
                .map(|v| match v {
                    toml::Value::String(s) => src.expr_within(s, field_span.clone()),
                    other => Err(src.error(
                        field_span.start,
                        format!("`L` components must be strings, found {}", other.type_str()),
                    )),
                })
                .collect::<Result<Vec<_>>>()?;
            FieldSpec::Exprs(
                three(exprs).map_err(|n| src.error(field_span.start, format!("`L` needs 3 components, found {n}")))?,
            )
        }
        other => {
            return Err(src.error(
                field_span.start,
                format!("`L` must be \"zero\" or an array, found {}", other.type_str()),
            ))
        }
    };

    let interval_span = raw.interval.span();
    let ends = raw
        .interval
        .into_inner()
        .iter()
        .map(|v| match v {
            toml::Value::Integer(i) => Ok(*i as f64),
            toml::Value::Float(f) => Ok(*f),
            toml::Value::String(s) => {
                let e = src.expr_within(s, interval_span.clone())?;
                if e.is_constant() {
                    Ok(e.eval(0.0))
                } else {
                    Err(src.error(interval_span.start, format!("interval end `{s}` depends on t")))
                }
            }
            other => Err(src.error(
                interval_span.start,
                format!("interval ends must be numbers, found {}", other.type_str()),
            )),
        })
        .collect::<Result<Vec<f64>>>()?;
    let [a, b]: [f64; 2] = ends.try_into().map_err(|v: Vec<f64>| {
        src.error(
            interval_span.start,
            format!("`interval` needs 2 ends, found {}", v.len()),
        )
    })?;
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(src.error(interval_span.start, format!("interval [{a}, {b}] must satisfy a < b")));
    }

    Ok(CurveSpec {
        name: raw.name,
        gamma,
        field,
        interval: (a, b),
    })
}

pub fn read_curve_file(path: impl AsRef<Path>) -> Result<CurveSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_curve_file(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HELICOID: &str = r#"
name = "helicoid"
gamma = ["cos(t)", "sin(t)", "t"]
L = "zero"
interval = [0, "2*pi"]
"#;

    #[test]
    fn reads_helicoid() {
        let spec = parse_curve_file(HELICOID, "helicoid.curve").unwrap();
        assert_eq!(spec.name.as_deref(), Some("helicoid"));
        assert_eq!(spec.field, FieldSpec::Zero);
        assert_eq!(spec.interval, (0.0, std::f64::consts::TAU));
        assert_eq!(spec.gamma[2], Expr::Var);
    }

    #[test]
    fn expression_error_points_into_string() {
        let text = "gamma = [\"cos(t)\", \"sin(t\", \"t\"]\nL = \"zero\"\ninterval = [0, 1]\n";
        match parse_curve_file(text, "bad.curve") {
            Err(Error::CurveFile { line, column, .. }) => {
                assert_eq!(line, 1);
                // `gamma = ["cos(t)", "` is 20 bytes, then `sin(t` is 5 more.
                assert_eq!(column, 26);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn field_expression_error_line() {
        let text = "gamma = [\"t\", \"0\", \"t\"]\nL = [\"0\", \"tan(t)\", \"0\"]\ninterval = [0, 1]\n";
        match parse_curve_file(text, "bad.curve") {
            Err(Error::CurveFile {
                line, column, message, ..
            }) => {
                assert_eq!(line, 2);
                assert_eq!(column, 12);
                assert!(message.contains("tan"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        let missing = "gamma = [\"t\", \"0\", \"t\"]\ninterval = [0, 1]\n";
        assert!(matches!(parse_curve_file(missing, "x"), Err(Error::CurveFile { .. })));
        let two = "gamma = [\"t\", \"t\"]\nL = \"zero\"\ninterval = [0, 1]\n";
        assert!(matches!(
            parse_curve_file(two, "x"),
            Err(Error::CurveFile { line: 1, .. })
        ));
        let reversed = "gamma = [\"t\", \"0\", \"t\"]\nL = \"zero\"\ninterval = [1, 0]\n";
        assert!(matches!(
            parse_curve_file(reversed, "x"),
            Err(Error::CurveFile { line: 3, .. })
        ));
        let unknown = "gamma = [\"t\", \"0\", \"t\"]\nL = \"zero\"\ninterval = [0, 1]\ncolor = 3\n";
        assert!(matches!(parse_curve_file(unknown, "x"), Err(Error::CurveFile { .. })));
        let bad_zero = "gamma = [\"t\", \"0\", \"t\"]\nL = \"none\"\ninterval = [0, 1]\n";
        assert!(matches!(
            parse_curve_file(bad_zero, "x"),
            Err(Error::CurveFile { line: 2, .. })
        ));
    }
}
