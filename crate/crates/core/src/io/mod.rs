//! File formats and report rendering.

mod dot;
mod format;
mod report;
mod table;

pub use dot::trace_to_dot;
pub use format::{canonicalize, parse, parse_file, parse_unchecked, serialize, FormatError};
pub use report::{CertificateBlock, InvariantsBlock, Report};
pub use table::{parse_table, parse_table_file};
