//! Input formats, the binary snapshot and the report tables.

mod long;
mod report;
mod snapshot;
mod wiot;

use std::fs;
use std::path::{Path, PathBuf};

pub use long::{parse_long, parse_long_str, write_labels, write_long};
pub use report::{
    cell_table, correlation_table, dendrogram_table, grid_table, layer_table, parse_partition, partition_table,
    rank_table, report_table, trace_table, Table,
};
pub use snapshot::{read_snapshot, snapshot_from_bytes, snapshot_to_bytes, write_snapshot, SNAPSHOT_MAGIC, SNAPSHOT_VERSION};
pub use wiot::{parse_wiot_wide, parse_wiot_wide_str, write_wiot_wide};

use crate::error::{Error, Result};
use crate::net::MultilayerNetwork;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Long,
    WiotWide,
    Snapshot,
}

impl InputFormat {
    pub fn name(self) -> &'static str {
        match self {
            InputFormat::Long => "long-csv",
            InputFormat::WiotWide => "wiot-wide",
            InputFormat::Snapshot => "snapshot",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IngestSpec {
    pub format: InputFormat,
    pub path: PathBuf,
    /// Optional `kind,label` file fixing the country and sector order of a
    /// long CSV.
    pub labels: Option<PathBuf>,
    pub clamp_negatives: bool,
    pub drop_zero_layers: bool,
    pub year: i32,
}

impl IngestSpec {
    pub fn new(format: InputFormat, path: impl Into<PathBuf>) -> Self {
        IngestSpec {
            format,
            path: path.into(),
            labels: None,
            clamp_negatives: true,
            drop_zero_layers: false,
            year: 2014,
        }
    }
}

pub fn ingest(spec: &IngestSpec) -> Result<MultilayerNetwork> {
    if spec.year < 1900 {
        return Err(Error::InvalidArgument(format!("year {} is before 1900", spec.year)));
    }
    let mut net = match spec.format {
        InputFormat::Long => parse_long(&spec.path, spec.labels.as_deref(), spec.clamp_negatives, spec.year)?,
        InputFormat::WiotWide => parse_wiot_wide(&spec.path, spec.clamp_negatives, spec.year)?,
        InputFormat::Snapshot => read_snapshot(&spec.path)?,
    };
    if spec.drop_zero_layers {
        net = net.drop_zero_layers()?;
    }
    Ok(net)
}

/// `%.12g`-style rendering: 12 significant digits, trailing zeros removed,
/// exponent form outside `1e-4 ..< 1e12`.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes `bytes` to a temporary sibling and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("{} has no file name", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, bytes)?;
    if let Err(e) = fs::rename(&tmp, path) {
        let _ = fs::remove_file(&tmp);
        return Err(e.into());
    }
    Ok(())
}
