//! Reading and writing structures, built-in examples, reports and diagram
//! files.

pub mod document;
pub mod export;
pub mod generators;
pub mod report;

pub use document::{parse_structure, serialize_structure, validate, BarRecord, NodeRecord, StructureDocument, STRUCTURE_FORMAT};
pub use export::{export_diagrams, force_obj, form_obj, ExportOptions, ExportedFiles};
pub use generators::{critical_prism_twist, generate_k5, generate_prism, regular_k5, TwistSearch};
pub use report::{AnalysisReport, Counts, StateDocument, REPORT_FORMAT, STATE_FORMAT};
