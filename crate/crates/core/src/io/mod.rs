//! File formats: Cremona-style curve lines, eigenform datasets and JSON helpers.

mod curves;
mod forms;
pub mod json;

pub use curves::{parse_curve_file, serialize_curve_file};
pub use forms::{EigenformDataset, FormRecord};
