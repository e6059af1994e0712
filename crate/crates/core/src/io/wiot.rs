//! WIOT wide tables.
//!
//! Layout: the first header row carries a country code per column, the
//! second a sector code per column; every later row starts with a country
//! and a sector stub. The intermediate block is the leading run of rows and
//! columns whose (country, sector) pair appears on the other axis, ordered
//! country-major. Final-demand columns and value-added rows after it are
//! ignored. Rows are sellers and columns buyers.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use super::long::csv_field;
use crate::error::{Error, Result};
use crate::net::{Meta, MultilayerNetwork};

fn format_err(path: &Path, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

pub fn parse_wiot_wide(path: &Path, clamp_negatives: bool, year: i32) -> Result<MultilayerNetwork> {
    let text = fs::read_to_string(path)?;
    parse_wiot_wide_str(&text, path, clamp_negatives, year)
}

/// Countries and sectors of a country-major key list.
fn grid_labels(keys: &[(String, String)], path: &Path) -> Result<(Vec<String>, Vec<String>)> {
    let mut countries: Vec<String> = Vec::new();
    for (c, _) in keys {
        if countries.last() != Some(c) {
            countries.push(c.clone());
        }
    }
    let n = countries.len();
    let l = keys.len() / n.max(1);
    let sectors: Vec<String> = keys.iter().take(l).map(|(_, s)| s.clone()).collect();
    for (k, (c, s)) in keys.iter().enumerate() {
        if n * l != keys.len() || *c != countries[k / l] || *s != sectors[k % l] {
            return Err(format_err(
                path,
                format!("header {c}/{s} breaks the country-major country x sector grid"),
            ));
        }
    }
    let distinct: HashSet<&String> = countries.iter().collect();
    if distinct.len() != n {
        return Err(format_err(path, "a country appears in two separate runs"));
    }
    Ok((countries, sectors))
}

pub fn parse_wiot_wide_str(text: &str, path: &Path, clamp_negatives: bool, year: i32) -> Result<MultilayerNetwork> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let records: Vec<csv::StringRecord> = rdr.records().collect::<std::result::Result<_, _>>()?;
    if records.len() < 3 {
        return Err(format_err(path, "needs two header rows and at least one data row"));
    }
    let width = records[0].len();
    for (i, rec) in records.iter().enumerate() {
        if rec.len() != width {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: i as u64 + 1,
                message: format!("ragged row: {} fields, header has {width}", rec.len()),
            });
        }
    }
    let col_keys: Vec<(String, String)> = (2..width)
        .map(|j| (records[0][j].to_string(), records[1][j].to_string()))
        .collect();
    let row_keys: Vec<(String, String)> = records[2..]
        .iter()
        .map(|r| (r[0].to_string(), r[1].to_string()))
        .collect();
    let col_set: HashSet<&(String, String)> = col_keys.iter().collect();
    let row_set: HashSet<&(String, String)> = row_keys.iter().collect();
    let rows: Vec<(String, String)> = row_keys.iter().take_while(|k| col_set.contains(k)).cloned().collect();
    let cols: Vec<(String, String)> = col_keys.iter().take_while(|k| row_set.contains(k)).cloned().collect();
    if rows.is_empty() {
        return Err(format_err(path, "no intermediate block: row stubs do not match any column header"));
    }
    if rows.len() != cols.len() {
        return Err(format_err(
            path,
            format!("non-square intermediate block: {} rows, {} columns", rows.len(), cols.len()),
        ));
    }
    if let Some(k) = (0..rows.len()).find(|&k| rows[k] != cols[k]) {
        return Err(format_err(
            path,
            format!(
                "label mismatch at position {}: row {}/{} vs column {}/{}",
                k + 1,
                rows[k].0,
                rows[k].1,
                cols[k].0,
                cols[k].1
            ),
        ));
    }
    let (countries, sectors) = grid_labels(&rows, path)?;
    let (n, l) = (countries.len(), sectors.len());
    let nl = n * l;
    // file order k = country * L + sector; supra order = sector * N + country
    let supra_of = |k: usize| (k % l) * n + k / l;
    let mut supra = DMatrix::zeros(nl, nl);
    let mut clamped = 0u64;
    for (r, rec) in records[2..2 + nl].iter().enumerate() {
        let line = r as u64 + 3;
        for c in 0..nl {
            let raw = &rec[c + 2];
            let mut v: f64 = raw.parse().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line,
                message: format!("cell {raw:?} in column {} is not a number", c + 3),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line,
                    message: format!("cell {raw:?} is not finite"),
                });
            }
            if v < 0.0 {
                if !clamp_negatives {
                    return Err(Error::Parse {
                        path: path.to_path_buf(),
                        line,
                        message: format!("negative intermediate value {raw}"),
                    });
                }
                clamped += 1;
                v = 0.0;
            }
            supra[(supra_of(r), supra_of(c))] = v;
        }
    }
    let meta = Meta {
        year,
        source: "wiot-wide".into(),
        clamped,
        ..Meta::default()
    };
    MultilayerNetwork::new(countries, sectors, supra, meta)
}

/// Writes a network as a wide table with a gross-output column and an
/// intermediate-input total row after the intermediate block.
pub fn write_wiot_wide(net: &MultilayerNetwork) -> String {
    let (n, l) = (net.n_nodes(), net.n_layers());
    let nl = n * l;
    let supra_of = |k: usize| (k % l) * n + k / l;
    let key = |k: usize| (csv_field(&net.node_labels()[k / l]), csv_field(&net.layer_labels()[k % l]));
    let mut out = String::new();
    let (mut h1, mut h2) = (String::from(","), String::from(","));
    for k in 0..nl {
        let (c, s) = key(k);
        let _ = write!(h1, ",{c}");
        let _ = write!(h2, ",{s}");
    }
    let _ = writeln!(out, "{h1},TOT");
    let _ = writeln!(out, "{h2},GO");
    let mut col_totals = vec![0.0; nl];
    for r in 0..nl {
        let (c, s) = key(r);
        let _ = write!(out, "{c},{s}");
        let mut total = 0.0;
        for (col, t) in col_totals.iter_mut().enumerate() {
            let w = net.supra()[(supra_of(r), supra_of(col))];
            total += w;
            *t += w;
            let _ = write!(out, ",{w}");
        }
        let _ = writeln!(out, ",{total}");
    }
    let _ = write!(out, "TOT,II");
    for t in &col_totals {
        let _ = write!(out, ",{t}");
    }
    let _ = writeln!(out, ",{}", col_totals.iter().sum::<f64>());
    out
}
