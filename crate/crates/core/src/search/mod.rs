//! Exact maximum cross-free subfamilies and bound tables.

mod bnb;
mod table;

pub use bnb::{max_cross_free, SearchOptions, SearchResult, MAX_UNIVERSE};
pub use table::{
    bound_table, formula, rows_to_csv, rows_to_text, table_row, TableRow, Tightness, Universe, CSV_HEADER, MAX_N_ALL,
    MAX_N_INTERVALS,
};
