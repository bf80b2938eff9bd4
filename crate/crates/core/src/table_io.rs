//! Table rendering (LaTeX, CSV, JSON) and the on-disk result cache.
//!
//! Cache files are line-delimited JSON: one header object, then one payload
//! object per line. Complete files carry a SHA-256 of the payload lines; the
//! append-only progress file used while rows are being computed does not.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::affine_group::{AffineElement, AffineWeylGroup, RightSet, Word};
use crate::bruhat::IdealEnumeration;
use crate::error::{Error, Result};
use crate::ko_analysis::TableRow;
use crate::weights::{format_vector, is_restricted, RankConfig, Weight};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Latex,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "latex" | "tex" => Ok(Format::Latex),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

/// What the second LaTeX column shows.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SecondColumn {
    #[default]
    Epsilon,
    RightSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmitOptions {
    pub format: Format,
    pub restricted_only: bool,
    pub second_column: SecondColumn,
    /// Write `y` as bare subscripts (`0312`) in LaTeX.
    pub compact_words: bool,
}

impl EmitOptions {
    pub fn new(format: Format) -> Self {
        Self {
            format,
            restricted_only: false,
            second_column: SecondColumn::Epsilon,
            compact_words: false,
        }
    }
}

pub const CSV_HEADER: &str = "y_word,epsilon,omega,length,c5,c6,c7,right_set";

/// Rows whose weight is `p`-restricted.
pub fn restricted_rows(rows: &[TableRow], p: u32) -> Vec<&TableRow> {
    rows.iter()
        .filter(|r| is_restricted(&Weight::from_omega(r.omega.clone()), p))
        .collect()
}

pub fn emit(rows: &[TableRow], opts: &EmitOptions, cfg: RankConfig) -> String {
    let selected: Vec<&TableRow> = if opts.restricted_only {
        restricted_rows(rows, cfg.p())
    } else {
        rows.iter().collect()
    };
    match opts.format {
        Format::Csv => emit_csv(&selected),
        Format::Json => emit_json(&selected),
        Format::Latex => emit_latex(&selected, opts, cfg),
    }
}

fn emit_csv(rows: &[&TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(',')).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.y_word.to_string(),
            format_vector(&r.epsilon),
            format_vector(&r.omega),
            r.length.to_string(),
            r.c5.to_string(),
            r.c6.to_string(),
            r.c7.to_string(),
            r.right_set.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn emit_json(rows: &[&TableRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

fn latex_vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("$\\left({}\\right)$", parts.join(",\\,"))
}

fn latex_right_set(r: &RightSet) -> String {
    let parts: Vec<String> = r.indices().map(|i| i.to_string()).collect();
    format!("$\\{{{}\\}}$", parts.join(",\\,"))
}

fn emit_latex(rows: &[&TableRow], opts: &EmitOptions, cfg: RankConfig) -> String {
    let group = AffineWeylGroup::new(cfg);
    let w0_word = group.reduced_word(&group.longest_finite_element());
    let mut out = String::new();
    writeln!(out, "% A_{} with p = {}; w = w_0 y, w_0 = {}", cfg.n(), cfg.p(), w0_word.to_latex()).unwrap();
    out.push_str("\\begin{longtable}{|l|l|l|l|l|l|l|} \\hline\n");
    let second = match opts.second_column {
        SecondColumn::Epsilon => "$w \\cdot (-2\\rho)$",
        SecondColumn::RightSet => "$\\mathcal R(w)$",
    };
    writeln!(
        out,
        "$y \\in W$ & {second} & $\\omega$-coefficients & $l(w)$ & (5) & (6) & (7)\\\\ \\hline \\hline"
    )
    .unwrap();
    out.push_str("\\endhead\n");
    for r in rows {
        let word = if opts.compact_words {
            r.y_word.to_compact()
        } else {
            format!("${}$", r.y_word.to_latex())
        };
        let col2 = match opts.second_column {
            SecondColumn::Epsilon => latex_vector(&r.epsilon),
            SecondColumn::RightSet => latex_right_set(&r.right_set),
        };
        writeln!(
            out,
            "{word} & {col2} & {} & ${}$ & ${}$ & ${}$ & ${}$ \\\\ \\hline",
            latex_vector(&r.omega),
            r.length,
            r.c5,
            r.c6,
            r.c7
        )
        .unwrap();
    }
    out.push_str("\\end{longtable}\n");
    out
}

/// Reads rows back from [`emit`]'s CSV output.
pub fn parse_csv(text: &str) -> Result<Vec<TableRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::CorruptCache(e.to_string()))?;
    if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(Error::CorruptCache(format!("unexpected CSV header {header:?}")));
    }
    reader
        .records()
        .map(|rec| {
            let rec = rec.map_err(|e| Error::CorruptCache(e.to_string()))?;
            parse_csv_record(&rec)
        })
        .collect()
}

fn parse_csv_record(rec: &csv::StringRecord) -> Result<TableRow> {
    let bad = || Error::CorruptCache(format!("bad CSV record {rec:?}"));
    if rec.len() != 8 {
        return Err(bad());
    }
    let vec = |s: &str| crate::weights::parse_vector(s).ok_or_else(bad);
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad());
    let inner = rec[7].trim().strip_prefix('{').and_then(|s| s.strip_suffix('}')).ok_or_else(bad)?;
    let indices = inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    Ok(TableRow {
        y_word: rec[0].parse::<Word>()?,
        epsilon: vec(&rec[1])?,
        omega: vec(&rec[2])?,
        length: num(&rec[3])? as u32,
        c5: num(&rec[4])?,
        c6: num(&rec[5])?,
        c7: num(&rec[6])?,
        right_set: RightSet::from_indices(indices),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CacheKind {
    Rows,
    Ideal,
    RowsPartial,
}

/// First line of every cache file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub kind: CacheKind,
    pub version: u32,
    pub n: usize,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<AffineElement>,
}

impl CacheHeader {
    fn check(&self, kind: CacheKind, cfg: RankConfig) -> Result<()> {
        if self.version != CACHE_VERSION {
            return Err(Error::CacheVersion {
                found: self.version,
                expected: CACHE_VERSION,
            });
        }
        if self.kind != kind {
            return Err(Error::CorruptCache(format!("expected a {kind:?} cache, found {:?}", self.kind)));
        }
        if self.n != cfg.n() || self.p != cfg.p() {
            return Err(Error::CacheMismatch {
                found_n: self.n,
                found_p: self.p,
                n: cfg.n(),
                p: cfg.p(),
            });
        }
        Ok(())
    }
}

fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

fn write_checked<T: Serialize>(path: &Path, mut header: CacheHeader, items: &[T]) -> Result<()> {
    let mut payload = Vec::new();
    for item in items {
        serde_json::to_writer(&mut payload, item)?;
        payload.push(b'\n');
    }
    header.count = Some(items.len());
    header.sha256 = Some(sha256_hex(&payload));
    let tmp = path.with_extension("tmp");
    {
        let mut f = BufWriter::new(File::create(&tmp)?);
        serde_json::to_writer(&mut f, &header)?;
        f.write_all(b"\n")?;
        f.write_all(&payload)?;
        f.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn read_checked<T: for<'de> Deserialize<'de>>(path: &Path, kind: CacheKind, cfg: RankConfig) -> Result<(CacheHeader, Vec<T>)> {
    let text = fs::read_to_string(path)?;
    let (head, payload) = text
        .split_once('\n')
        .ok_or_else(|| Error::CorruptCache("missing header line".into()))?;
    let header: CacheHeader =
        serde_json::from_str(head).map_err(|e| Error::CorruptCache(format!("header: {e}")))?;
    header.check(kind, cfg)?;
    if header.sha256.as_deref() != Some(sha256_hex(payload.as_bytes()).as_str()) {
        return Err(Error::CorruptCache("checksum mismatch".into()));
    }
    let items = payload
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| Error::CorruptCache(e.to_string())))
        .collect::<Result<Vec<T>>>()?;
    if header.count != Some(items.len()) {
        return Err(Error::CorruptCache(format!(
            "header promises {:?} entries, found {}",
            header.count,
            items.len()
        )));
    }
    Ok((header, items))
}

fn header(kind: CacheKind, cfg: RankConfig) -> CacheHeader {
    CacheHeader {
        kind,
        version: CACHE_VERSION,
        n: cfg.n(),
        p: cfg.p(),
        count: None,
        sha256: None,
        root: None,
    }
}

pub fn save_cache(rows: &[TableRow], cfg: RankConfig, path: &Path) -> Result<()> {
    write_checked(path, header(CacheKind::Rows, cfg), rows)
}

/// Loads rows saved by [`save_cache`], rejecting files for another configuration.
pub fn load_cache(path: &Path, cfg: RankConfig) -> Result<Vec<TableRow>> {
    read_checked(path, CacheKind::Rows, cfg).map(|(_, rows)| rows)
}

pub fn save_ideal(ideal: &IdealEnumeration, cfg: RankConfig, path: &Path) -> Result<()> {
    let mut h = header(CacheKind::Ideal, cfg);
    h.root = Some(ideal.root().clone());
    let elements: Vec<&AffineElement> = ideal.elements().collect();
    write_checked(path, h, &elements)
}

pub fn load_ideal(group: &AffineWeylGroup, path: &Path) -> Result<IdealEnumeration> {
    let (h, elements) = read_checked::<AffineElement>(path, CacheKind::Ideal, group.config())?;
    let root = h.root.ok_or_else(|| Error::CorruptCache("ideal cache without root".into()))?;
    if elements.iter().any(|e| e.rank() != group.n()) || root.rank() != group.n() {
        return Err(Error::CorruptCache("element rank does not match header".into()));
    }
    IdealEnumeration::from_elements(group, root, elements)
}

#[derive(Serialize, Deserialize)]
struct IndexedRow {
    index: usize,
    row: TableRow,
}

/// Append-only record of rows computed so far, for resuming long runs.
pub struct PartialRows {
    file: BufWriter<File>,
    path: PathBuf,
}

impl PartialRows {
    /// Opens (or creates) the progress file and returns the rows it already
    /// holds. A truncated trailing line, left by an interrupted write, is dropped.
    pub fn open(path: &Path, cfg: RankConfig) -> Result<(Self, BTreeMap<usize, TableRow>)> {
        let mut done = BTreeMap::new();
        let mut good_len: u64 = 0;
        if path.exists() {
            let mut reader = BufReader::new(File::open(path)?);
            let mut line = String::new();
            let read = reader.read_line(&mut line)?;
            if read > 0 && line.ends_with('\n') {
                let h: CacheHeader = serde_json::from_str(line.trim_end())
                    .map_err(|e| Error::CorruptCache(format!("progress header: {e}")))?;
                h.check(CacheKind::RowsPartial, cfg)?;
                good_len = read as u64;
                loop {
                    line.clear();
                    let read = reader.read_line(&mut line)?;
                    if read == 0 || !line.ends_with('\n') {
                        break;
                    }
                    match serde_json::from_str::<IndexedRow>(line.trim_end()) {
                        Ok(r) => {
                            done.insert(r.index, r.row);
                            good_len += read as u64;
                        }
                        Err(_) => break,
                    }
                }
            }
        }
        let file = if good_len == 0 {
            let mut f = File::create(path)?;
            serde_json::to_writer(&mut f, &header(CacheKind::RowsPartial, cfg))?;
            f.write_all(b"\n")?;
            f
        } else {
            OpenOptions::new().write(true).open(path)?.set_len(good_len)?;
            OpenOptions::new().append(true).open(path)?
        };
        Ok((
            Self {
                file: BufWriter::new(file),
                path: path.to_path_buf(),
            },
            done,
        ))
    }

    pub fn append(&mut self, rows: &[(usize, TableRow)]) -> Result<()> {
        for (index, row) in rows {
            let line = serde_json::to_string(&IndexedRow {
                index: *index,
                row: row.clone(),
            })?;
            self.file.write_all(line.as_bytes())?;
            self.file.write_all(b"\n")?;
        }
        self.file.flush()?;
        Ok(())
    }

    /// Removes the progress file once the complete cache has been written.
    pub fn finish(self) -> Result<()> {
        drop(self.file);
        fs::remove_file(&self.path)?;
        Ok(())
    }
}
