//! Configuration files, time-series emission, and structured reports.

mod config;
mod report;
mod table;

pub use config::{load_config, parse_override, ConfigDocument, ScenarioSection};
pub use report::{
    report_schema, summary_schema, write_json, write_report, Provenance, ReportFormat, ResultBundle,
    EQUILIBRIUM_REPORT_SCHEMA, RESULT_SUMMARY_SCHEMA,
};
pub use table::{write_timeseries, DataFormat, TimeSeriesTable};
