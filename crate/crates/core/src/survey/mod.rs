//! The survey of strongly isotropy irreducible pairs: the dimension filter
//! and the case-by-case replays.

mod cases;
mod report;
mod table;

pub use cases::{run_case, type_label, CASE_IDS};
pub use report::{CaseReport, Check, Source};
pub use table::{
    algebra_types, filter_table2, run_table2, table1, table1_entries, table2_records, table2_text, Family, Poly,
    SurveyEntry, SurveyRow, Table2Run, TailCertificate, KNOWN_EQUIGEODESIC, TABLE2, TAIL,
};
