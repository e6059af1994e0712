//! Long-form edge list:
//! `source_country,source_sector,target_country,target_sector,value`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::net::{Meta, MultilayerNetwork};

const HEADER: [&str; 5] = ["source_country", "source_sector", "target_country", "target_sector", "value"];

/// Label registry in first-appearance order, or frozen to a given list.
struct Labels {
    names: Vec<String>,
    index: HashMap<String, usize>,
    frozen: bool,
}

impl Labels {
    fn open() -> Self {
        Labels {
            names: Vec::new(),
            index: HashMap::new(),
            frozen: false,
        }
    }

    fn frozen(names: Vec<String>) -> Self {
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        Labels {
            names,
            index,
            frozen: true,
        }
    }

    fn get(&mut self, name: &str) -> Option<usize> {
        if let Some(&i) = self.index.get(name) {
            return Some(i);
        }
        if self.frozen {
            return None;
        }
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), self.names.len() - 1);
        Some(self.names.len() - 1)
    }
}

fn parse_err(path: &Path, line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn read_label_file(path: &Path) -> Result<(Vec<String>, Vec<String>)> {
    let text = fs::read_to_string(path)?;
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["kind", "label"] {
        return Err(parse_err(path, 1, "label file header must be `kind,label`"));
    }
    let (mut countries, mut sectors) = (Vec::new(), Vec::new());
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        match (rec.get(0), rec.get(1)) {
            (Some("country"), Some(l)) => countries.push(l.to_string()),
            (Some("sector"), Some(l)) => sectors.push(l.to_string()),
            (Some(k), _) => return Err(parse_err(path, line, format!("unknown label kind {k:?}"))),
            _ => return Err(parse_err(path, line, "expected `kind,label`")),
        }
    }
    Ok((countries, sectors))
}

pub fn parse_long(path: &Path, labels: Option<&Path>, clamp_negatives: bool, year: i32) -> Result<MultilayerNetwork> {
    let text = fs::read_to_string(path)?;
    let labels = labels.map(read_label_file).transpose()?;
    parse_long_str(&text, path, labels, clamp_negatives, year)
}

/// Parses long-form CSV text; `path` is only used in error messages.
pub fn parse_long_str(
    text: &str,
    path: &Path,
    labels: Option<(Vec<String>, Vec<String>)>,
    clamp_negatives: bool,
    year: i32,
) -> Result<MultilayerNetwork> {
    let path: PathBuf = path.to_path_buf();
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != HEADER {
        return Err(parse_err(&path, 1, format!("header must be `{}`", HEADER.join(","))));
    }
    let (mut countries, mut sectors) = match labels {
        Some((c, s)) => (Labels::frozen(c), Labels::frozen(s)),
        None => (Labels::open(), Labels::open()),
    };
    let mut entries: Vec<(usize, usize, usize, usize, f64)> = Vec::new();
    let mut clamped = 0u64;
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 5 {
            return Err(parse_err(&path, line, format!("expected 5 fields, found {}", rec.len())));
        }
        let lookup = |reg: &mut Labels, field: usize, what: &str| {
            let name = &rec[field];
            if name.is_empty() {
                return Err(parse_err(&path, line, format!("empty {what}")));
            }
            reg.get(name)
                .ok_or_else(|| parse_err(&path, line, format!("{what} {name:?} is not in the label file")))
        };
        let sc = lookup(&mut countries, 0, "country")?;
        let ss = lookup(&mut sectors, 1, "sector")?;
        let tc = lookup(&mut countries, 2, "country")?;
        let ts = lookup(&mut sectors, 3, "sector")?;
        let raw = &rec[4];
        let mut value: f64 = raw
            .parse()
            .map_err(|_| parse_err(&path, line, format!("value {raw:?} is not a number")))?;
        if !value.is_finite() {
            return Err(parse_err(&path, line, format!("value {raw:?} is not finite")));
        }
        if value < 0.0 {
            if !clamp_negatives {
                return Err(parse_err(&path, line, format!("negative value {raw}")));
            }
            clamped += 1;
            value = 0.0;
        }
        entries.push((sc, ss, tc, ts, value));
    }
    let (n, l) = (countries.names.len(), sectors.names.len());
    if n == 0 || l == 0 {
        return Err(Error::Format {
            path,
            message: "no rows and no label file: the network has no cells".into(),
        });
    }
    let mut supra = DMatrix::zeros(n * l, n * l);
    for (sc, ss, tc, ts, v) in entries {
        supra[(ss * n + sc, ts * n + tc)] += v;
    }
    let meta = Meta {
        year,
        source: "long-csv".into(),
        clamped,
        ..Meta::default()
    };
    MultilayerNetwork::new(countries.names, sectors.names, supra, meta)
}

/// Long-form CSV of a network. Rows run country-major over sources then
/// targets; with `include_zeros` every pair is written, which makes labels
/// reappear in their original order on re-reading.
pub fn write_long(net: &MultilayerNetwork, include_zeros: bool) -> String {
    let (n, l) = (net.n_nodes(), net.n_layers());
    let (countries, sectors) = (net.node_labels(), net.layer_labels());
    let mut out = HEADER.join(",");
    out.push('\n');
    for sc in 0..n {
        for ss in 0..l {
            for tc in 0..n {
                for ts in 0..l {
                    let w = net.supra()[(ss * n + sc, ts * n + tc)];
                    if include_zeros || w != 0.0 {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{}",
                            csv_field(&countries[sc]),
                            csv_field(&sectors[ss]),
                            csv_field(&countries[tc]),
                            csv_field(&sectors[ts]),
                            w
                        );
                    }
                }
            }
        }
    }
    out
}

/// The `kind,label` file listing a network's countries and sectors.
pub fn write_labels(net: &MultilayerNetwork) -> String {
    let mut out = String::from("kind,label\n");
    for c in net.node_labels() {
        let _ = writeln!(out, "country,{}", csv_field(c));
    }
    for s in net.layer_labels() {
        let _ = writeln!(out, "sector,{}", csv_field(s));
    }
    out
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) || s.trim() != s {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
