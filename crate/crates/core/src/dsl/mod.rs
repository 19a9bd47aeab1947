//! Curve definitions: expression parsing, lowering to power series and the
//! curve file format.

mod curve_file;
mod expr;
mod parser;

pub use curve_file::{parse_curve_file, read_curve_file, CurveSpec, FieldSpec};
pub use expr::{lower, Expr};
pub use parser::{parse, ParseError};
