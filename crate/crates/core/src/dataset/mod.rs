//! Categorical data tables and the Cleveland heart-disease preprocessing
//! pipeline.

mod cleveland;
mod table;

pub use cleveland::{
    clean, discretize, heart_schema, load_raw, CleanRecord, CleanTable, CutpointConfig, RawTable, ThalachBasis,
    COLUMNS, MISSING, RAW_COLUMNS, TARGET,
};
pub use table::DataTable;
