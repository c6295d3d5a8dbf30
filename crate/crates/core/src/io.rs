//! File formats: sample CSV/JSON, resolvent matrices, report export.
//!
//! Sample CSV: one sample per line, `re(z), im(z), re(f), im(f)`, optional
//! header line. Resolvent CSV: one matrix row per line; a cell is a real
//! number or a complex literal such as `1.5-2i`.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::driver::ApproxReport;
use crate::functions::{FunctionDescriptor, Resolvent};
use crate::numerics::ComplexMatrix;
use crate::samples::SampleSet;
use crate::{Error, Result};

type C64 = Complex<f64>;

/// Serde for `f64` that writes non-finite values as `"inf"`, `"-inf"`, `"nan"`.
pub mod ext_f64 {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Repr {
        Num(f64),
        Text(String),
    }

    pub(crate) fn to_repr(x: f64) -> Repr {
        if x.is_finite() {
            Repr::Num(x)
        } else if x.is_nan() {
            Repr::Text("nan".into())
        } else if x > 0.0 {
            Repr::Text("inf".into())
        } else {
            Repr::Text("-inf".into())
        }
    }

    pub(crate) fn from_repr<E: serde::de::Error>(r: Repr) -> Result<f64, E> {
        match r {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(E::custom(format!("expected a number, got {other:?}"))),
            },
        }
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        to_repr(*x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }
}

/// [`ext_f64`] for vectors.
pub mod ext_f64_vec {
    use super::ext_f64::{from_repr, to_repr, Repr};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &[f64], s: S) -> Result<S::Ok, S::Error> {
        x.iter().map(|&v| to_repr(v)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
    }
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
}

/// Rows of numbers; a first row that does not parse is taken as a header.
fn numeric_rows<V>(text: &str, parse: impl Fn(&str) -> Option<V>) -> Result<Vec<(usize, Vec<V>)>> {
    let mut rows = Vec::new();
    for (k, rec) in csv_reader(text).records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = rec.position().map_or(k + 1, |p| p.line() as usize);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let cells: Option<Vec<V>> = rec.iter().map(&parse).collect();
        match cells {
            Some(v) => rows.push((line, v)),
            None if k == 0 => continue,
            None => {
                let bad = rec.iter().find(|c| parse(c).is_none()).unwrap_or("");
                return Err(Error::Parse {
                    line,
                    msg: format!("cannot parse {bad:?} as a number"),
                });
            }
        }
    }
    Ok(rows)
}

/// Points only (2 columns) or points with values (4 columns).
pub fn parse_csv_columns(text: &str) -> Result<(Vec<C64>, Option<Vec<C64>>)> {
    let rows = numeric_rows(text, |s| s.parse::<f64>().ok())?;
    let width = rows.first().map(|r| r.1.len()).ok_or_else(|| Error::Input("no samples in CSV".into()))?;
    if width != 2 && width != 4 {
        return Err(Error::Parse {
            line: rows[0].0,
            msg: format!("expected 2 or 4 columns, got {width}"),
        });
    }
    let mut z = Vec::with_capacity(rows.len());
    let mut f = Vec::with_capacity(rows.len());
    for (line, r) in &rows {
        if r.len() != width {
            return Err(Error::Parse {
                line: *line,
                msg: format!("expected {width} columns, got {}", r.len()),
            });
        }
        if r.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parse {
                line: *line,
                msg: "non-finite entry".into(),
            });
        }
        z.push(C64::new(r[0], r[1]));
        if width == 4 {
            f.push(C64::new(r[2], r[3]));
        }
    }
    Ok((z, (width == 4).then_some(f)))
}

pub fn parse_samples_csv(text: &str, closed_curve: bool) -> Result<SampleSet<f64>> {
    match parse_csv_columns(text)? {
        (z, Some(f)) => SampleSet::new(z, f, closed_curve),
        (_, None) => Err(Error::Input("sample CSV needs 4 columns: re z, im z, re f, im f".into())),
    }
}

/// CSV (open curve) or the JSON sample form, chosen by the first character.
pub fn read_samples(path: &Path) -> Result<SampleSet<f64>> {
    let text = fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(&text)?)
    } else {
        parse_samples_csv(&text, false)
    }
}

pub fn read_points(path: &Path) -> Result<Vec<C64>> {
    let text = fs::read_to_string(path)?;
    Ok(parse_csv_columns(&text)?.0)
}

fn fmt_row(cells: &[f64]) -> String {
    let mut s = cells.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(",");
    s.push('\n');
    s
}

pub fn samples_csv(samples: &SampleSet<f64>) -> String {
    let mut s = String::from("re_z,im_z,re_f,im_f\n");
    for (z, f) in samples.points().iter().zip(samples.values()) {
        s += &fmt_row(&[z.re, z.im, f.re, f.im]);
    }
    s
}

pub fn points_csv(points: &[C64]) -> String {
    let mut s = String::from("re,im\n");
    for z in points {
        s += &fmt_row(&[z.re, z.im]);
    }
    s
}

fn parse_cell(s: &str) -> Option<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    C64::from_str(&t).ok().or_else(|| t.replace('j', "i").parse().ok())
}

/// Dense matrix rows, one per line.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<C64>>> {
    Ok(numeric_rows(text, parse_cell)?.into_iter().map(|r| r.1).collect())
}

/// `cᵀ (zI − A)⁻¹ b` from a matrix file and a two-line vector file (`b`, then `c`).
pub fn load_resolvent(matrix_path: &Path, vectors_path: &Path) -> Result<FunctionDescriptor> {
    let rows = parse_matrix(&fs::read_to_string(matrix_path)?)?;
    let n = rows.len();
    if let Some(k) = rows.iter().position(|r| r.len() != n) {
        return Err(Error::Dimension(format!("matrix row {} has {} entries, expected {n}", k + 1, rows[k].len())));
    }
    let a = ComplexMatrix::new(n, n, rows.into_iter().flatten().collect())?;
    let vecs = parse_matrix(&fs::read_to_string(vectors_path)?)?;
    if vecs.len() != 2 {
        return Err(Error::Dimension(format!("vector file needs 2 lines (b, c), got {}", vecs.len())));
    }
    let mut it = vecs.into_iter();
    let (b, c) = (it.next().expect("b"), it.next().expect("c"));
    Ok(FunctionDescriptor::Resolvent(Resolvent::new(a, b, c)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    ErrorCsv,
    HistoryCsv,
    Svg,
}

impl Format {
    pub const ALL: [Format; 4] = [Format::Json, Format::ErrorCsv, Format::HistoryCsv, Format::Svg];

    fn file_suffix(self) -> &'static str {
        match self {
            Format::Json => "report.json",
            Format::ErrorCsv => "error.csv",
            Format::HistoryCsv => "history.csv",
            Format::Svg => "plot.svg",
        }
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "error_csv" => Ok(Format::ErrorCsv),
            "history_csv" => Ok(Format::HistoryCsv),
            "svg" => Ok(Format::Svg),
            other => Err(Error::Input(format!(
                "unknown format {other:?} (json, error_csv, history_csv, svg)"
            ))),
        }
    }
}

/// Rows `re z, im z, re e, im e, |e|`; infinite errors are written as `inf`.
pub fn error_csv(report: &ApproxReport) -> String {
    let mut s = String::from("re_z,im_z,re_e,im_e,abs_e\n");
    for (z, e) in report.samples.points().iter().zip(&report.errors) {
        let e = e.unwrap_or(C64::new(f64::INFINITY, f64::INFINITY));
        let a = if e.re.is_finite() { e.norm() } else { f64::INFINITY };
        s += &fmt_row(&[z.re, z.im, e.re, e.im, a]);
    }
    s
}

pub fn history_csv(report: &ApproxReport) -> String {
    let mut s = String::from("step,max_error\n");
    for (k, h) in report.history.iter().enumerate() {
        s += &format!("{},{h:e}\n", k + 1);
    }
    s
}

pub fn report_json(report: &ApproxReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)?)
}

fn file_stem(name: &str) -> String {
    let base = Path::new(name)
        .file_stem()
        .map_or(name.to_string(), |s| s.to_string_lossy().into_owned());
    base.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

/// Writes the requested formats into `dir` as `<name>.<suffix>`.
pub fn export(report: &ApproxReport, dir: &Path, formats: &[Format]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let stem = file_stem(&report.name);
    let mut written = Vec::new();
    for &f in formats {
        let body = match f {
            Format::Json => report_json(report)?,
            Format::ErrorCsv => error_csv(report),
            Format::HistoryCsv => history_csv(report),
            Format::Svg => crate::svg::render(report),
        };
        let path = dir.join(format!("{stem}.{}", f.file_suffix()));
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_with_and_without_header() {
        let a = parse_samples_csv("re,im,fr,fi\n0,0,1,0\n1,0,1,0\n", false).unwrap();
        let b = parse_samples_csv("0,0,1,0\n1, 0, 1, 0\n\n", false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        match parse_samples_csv("0,0,1,0\n1,0,x,0\n", false) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_samples_csv("0,0,1,0\n1,0,1\n", false) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_samples_csv("0,0,1,0\n0,0,2,0\n", false), Err(Error::Input(_))));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let z: Vec<C64> = (0..50).map(|k| C64::new((k as f64 * 0.1).sin() / 3.0, 1.0 / (k as f64 + 7.0))).collect();
        let s = SampleSet::from_fn(z, false, |z| Ok(z.exp())).unwrap();
        assert_eq!(parse_samples_csv(&samples_csv(&s), false).unwrap(), s);
    }

    #[test]
    fn matrix_cells() {
        let m = parse_matrix("1, 2.5-1i\n-3e-1, 0+2j\n").unwrap();
        assert_eq!(m[0][1], C64::new(2.5, -1.0));
        assert_eq!(m[1][0], C64::new(-0.3, 0.0));
        assert_eq!(m[1][1], C64::new(0.0, 2.0));
    }

    #[test]
    fn non_finite_json_fields() {
        #[derive(Serialize, Deserialize, PartialEq, Debug)]
        struct T {
            #[serde(with = "ext_f64")]
            x: f64,
            #[serde(with = "ext_f64_vec")]
            v: Vec<f64>,
        }
        let t = T {
            x: f64::INFINITY,
            v: vec![1.5, f64::NEG_INFINITY],
        };
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"x":"inf","v":[1.5,"-inf"]}"#);
        assert_eq!(serde_json::from_str::<T>(&s).unwrap(), t);
    }

    #[test]
    fn formats_parse() {
        assert_eq!("error_csv".parse::<Format>().unwrap(), Format::ErrorCsv);
        assert!("png".parse::<Format>().is_err());
    }
}
