//! Mass table generation, comparison with tabulated masses, and output in
//! CSV, JSON or Markdown.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::spectrum::{Family, FamilyName};

/// (family, n) → mass in GeV.
pub type MassMap = BTreeMap<(FamilyName, u32), f64>;

const EXPERIMENTAL_CSV: &str = include_str!("../data/experimental.csv");
const PRINTED_CSV: &str = include_str!("../data/printed_theoretical.csv");
const MASS_HEADER: [&str; 4] = ["family", "n", "mass_gev", "source"];

/// One cell of the mass table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRow {
    pub family: FamilyName,
    pub n: u32,
    #[serde(rename = "N")]
    pub big_n: i32,
    pub theoretical_mass_gev: Option<f64>,
    /// Set when the cell has no real mass.
    pub note: Option<String>,
    pub experimental_mass_gev: Option<f64>,
    pub abs_dev: Option<f64>,
}

/// Theoretical masses for n = 0..=n_max of each family, h16 with unit scale.
pub fn generate_table(mu2: f64, n_max: u32, families: &[Family]) -> Vec<FamilyRow> {
    let mut rows = Vec::new();
    for fam in families {
        for n in 0..=n_max {
            let (mass, note) = match fam.mass(n, mu2) {
                Ok(m) => (Some(m), None),
                Err(e) => (None, Some(e.to_string())),
            };
            rows.push(FamilyRow {
                family: fam.name,
                n,
                big_n: fam.big_n(n),
                theoretical_mass_gev: mass,
                note,
                experimental_mass_gev: None,
                abs_dev: None,
            });
        }
    }
    rows
}

/// Parses the `family,n,mass_gev,source` schema.
pub fn parse_mass_csv(text: &str) -> Result<MassMap> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).flexible(true).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?.clone();
    let got: Vec<&str> = headers.iter().map(str::trim).collect();
    if got != MASS_HEADER {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected header {:?}, got {:?}", MASS_HEADER.join(","), got.join(",")),
        });
    }
    let mut out = MassMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::Parse { line, msg: e.to_string() }
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() != 4 {
            return Err(Error::Parse { line, msg: format!("expected 4 fields, got {}", record.len()) });
        }
        let name = record[0].trim();
        let family = FamilyName::parse(name).ok_or_else(|| Error::UnknownFamily { line, name: name.to_string() })?;
        let n: u32 =
            record[1].trim().parse().map_err(|_| Error::Parse { line, msg: format!("bad index {:?}", &record[1]) })?;
        let cell = record[2].trim();
        if cell == "---" || cell.is_empty() {
            continue;
        }
        let mass: f64 =
            cell.replace(',', ".").parse().map_err(|_| Error::Parse { line, msg: format!("bad mass {cell:?}") })?;
        if out.insert((family, n), mass).is_some() {
            return Err(Error::DuplicateCell { family: family.label().to_string(), n });
        }
    }
    Ok(out)
}

pub fn ingest_experimental(path: &Path) -> Result<MassMap> {
    parse_mass_csv(&std::fs::read_to_string(path)?)
}

/// The bundled experimental column.
pub fn bundled_experimental() -> MassMap {
    parse_mass_csv(EXPERIMENTAL_CSV).expect("bundled experimental data parses")
}

/// The bundled printed theoretical column.
pub fn bundled_printed() -> MassMap {
    parse_mass_csv(PRINTED_CSV).expect("bundled theoretical data parses")
}

/// Fills the experimental column and |deviation| from a map.
pub fn attach(rows: &[FamilyRow], reference: &MassMap) -> Vec<FamilyRow> {
    rows.iter()
        .map(|r| {
            let mut r = r.clone();
            r.experimental_mass_gev = reference.get(&(r.family, r.n)).copied();
            r.abs_dev = match (r.theoretical_mass_gev, r.experimental_mass_gev) {
                (Some(t), Some(e)) => Some((t - e).abs()),
                _ => None,
            };
            r
        })
        .collect()
}

/// Deviation statistics over joined cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonStats {
    pub count_compared: usize,
    pub mean_abs_dev_gev: Option<f64>,
    pub max_abs_dev_gev: Option<f64>,
    pub worst_cell: Option<(FamilyName, u32)>,
    /// Cells within a chosen tolerance, when one was requested.
    pub within: Option<WithinCount>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WithinCount {
    pub tol_gev: f64,
    pub count: usize,
}

/// Joins on (family, n); only cells present on both sides count.
pub fn compare(rows: &[FamilyRow], reference: &MassMap) -> ComparisonStats {
    let devs: Vec<((FamilyName, u32), f64)> = rows
        .iter()
        .filter_map(|r| Some(((r.family, r.n), (r.theoretical_mass_gev? - reference.get(&(r.family, r.n))?).abs())))
        .collect();
    if devs.is_empty() {
        return ComparisonStats {
            count_compared: 0,
            mean_abs_dev_gev: None,
            max_abs_dev_gev: None,
            worst_cell: None,
            within: None,
        };
    }
    let worst = devs.iter().fold(devs[0], |w, d| if d.1 > w.1 { *d } else { w });
    ComparisonStats {
        count_compared: devs.len(),
        mean_abs_dev_gev: Some(devs.iter().map(|d| d.1).sum::<f64>() / devs.len() as f64),
        max_abs_dev_gev: Some(worst.1),
        worst_cell: Some(worst.0),
        within: None,
    }
}

/// [`compare`] plus the number of cells within `tol_gev`.
pub fn compare_with_tolerance(rows: &[FamilyRow], reference: &MassMap, tol_gev: f64) -> ComparisonStats {
    let mut s = compare(rows, reference);
    s.within = Some(WithinCount { tol_gev, count: count_within(rows, reference, tol_gev) });
    s
}

/// Number of joined cells with |deviation| ≤ tol.
pub fn count_within(rows: &[FamilyRow], reference: &MassMap, tol: f64) -> usize {
    rows.iter()
        .filter(|r| match (r.theoretical_mass_gev, reference.get(&(r.family, r.n))) {
            (Some(t), Some(e)) => (t - e).abs() <= tol,
            _ => false,
        })
        .count()
}

/// Fit quality of the generated table against the printed one at one μ².
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub mu2: f64,
    pub mean_abs_dev_gev: f64,
    pub max_abs_dev_gev: f64,
    pub within_002: usize,
}

/// Compares the regenerated table with the printed column over a μ² grid.
pub fn mu2_sweep(values: &[f64], n_max: u32) -> Vec<SweepPoint> {
    let printed = bundled_printed();
    values
        .iter()
        .map(|&mu2| {
            let rows = generate_table(mu2, n_max, &Family::all());
            let s = compare(&rows, &printed);
            SweepPoint {
                mu2,
                mean_abs_dev_gev: s.mean_abs_dev_gev.unwrap_or(f64::NAN),
                max_abs_dev_gev: s.max_abs_dev_gev.unwrap_or(f64::NAN),
                within_002: count_within(&rows, &printed, 0.02),
            }
        })
        .collect()
}

/// The default sweep grid 0.063, 0.064, ..., 0.069.
pub fn default_sweep_grid() -> Vec<f64> {
    (63..=69).map(|k| k as f64 / 1000.0).collect()
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::InvalidInput(format!("unknown format {other:?}"))),
        }
    }
}

/// Six significant digits, ties to even; positional notation for moderate
/// exponents.
pub fn format_sig6(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci: String = format!("{x:.5e}");
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..=9).contains(&exp) {
        let m = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        return format!("{m}e{exp}");
    }
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut s = if exp >= 0 {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{}{}", digits, "0".repeat(point - digits.len()))
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if neg {
        s.insert(0, '-');
    }
    s
}

fn num(x: Option<f64>) -> Value {
    match x {
        Some(v) if v.is_finite() => format_sig6(v).parse::<f64>().map(|f| json!(f)).unwrap_or(Value::Null),
        _ => Value::Null,
    }
}

fn cell(x: Option<f64>) -> String {
    x.map(format_sig6).unwrap_or_default()
}

fn stats_json(stats: &ComparisonStats) -> Value {
    json!({
        "count_compared": stats.count_compared,
        "mean_abs_dev_gev": num(stats.mean_abs_dev_gev),
        "max_abs_dev_gev": num(stats.max_abs_dev_gev),
        "worst_cell": stats.worst_cell.map(|(f, n)| json!({"family": f.label(), "n": n})),
        "within": stats.within.map(|w| json!({"tol_gev": num(Some(w.tol_gev)), "count": w.count})),
    })
}

/// Renders rows (family-major, then n) in the chosen format.
pub fn render(rows: &[FamilyRow], stats: Option<&ComparisonStats>, mu2: f64, format: Format) -> String {
    let mut rows: Vec<&FamilyRow> = rows.iter().collect();
    rows.sort_by_key(|r| (r.family, r.n));
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("family,n,N,theoretical_gev,experimental_gev,abs_dev\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.family.label(),
                    r.n,
                    r.big_n,
                    cell(r.theoretical_mass_gev),
                    cell(r.experimental_mass_gev),
                    cell(r.abs_dev)
                );
            }
            if let Some(s) = stats {
                let _ = writeln!(out, "# mu2={}", format_sig6(mu2));
                let _ = writeln!(out, "# count_compared={}", s.count_compared);
                let _ = writeln!(out, "# mean_abs_dev_gev={}", cell(s.mean_abs_dev_gev));
                let _ = writeln!(out, "# max_abs_dev_gev={}", cell(s.max_abs_dev_gev));
                if let Some((f, n)) = s.worst_cell {
                    let _ = writeln!(out, "# worst_cell={},{}", f.label(), n);
                }
                if let Some(w) = s.within {
                    let _ = writeln!(out, "# within_{}_gev={}", format_sig6(w.tol_gev), w.count);
                }
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "family": r.family.label(),
                        "n": r.n,
                        "N": r.big_n,
                        "theoretical_gev": num(r.theoretical_mass_gev),
                        "experimental_gev": num(r.experimental_mass_gev),
                        "abs_dev": num(r.abs_dev),
                    })
                })
                .collect();
            let doc = json!({
                "mu2": num(Some(mu2)),
                "rows": rows,
                "stats": stats.map(stats_json).unwrap_or(Value::Null),
            });
            out = serde_json::to_string_pretty(&doc).expect("serializable");
            out.push('\n');
        }
        Format::Markdown => {
            let _ = writeln!(out, "# Bare hadron masses (mu2 = {})\n", format_sig6(mu2));
            let mut current: Option<FamilyName> = None;
            for r in &rows {
                if current != Some(r.family) {
                    if current.is_some() {
                        out.push('\n');
                    }
                    current = Some(r.family);
                    let fam = r.family.family();
                    let _ = writeln!(
                        out,
                        "## {} (F = {}, 2i = {}, Y = {})\n\n| n | N | theor. GeV | exper. GeV | abs dev |\n|---|---|---|---|---|",
                        r.family.symbol(),
                        fam.f,
                        fam.two_i,
                        fam.y
                    );
                }
                let dash = |x: Option<f64>| x.map(format_sig6).unwrap_or_else(|| "---".to_string());
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    r.n,
                    r.big_n,
                    dash(r.theoretical_mass_gev),
                    dash(r.experimental_mass_gev),
                    dash(r.abs_dev)
                );
            }
            if let Some(s) = stats {
                let _ = writeln!(
                    out,
                    "\ncompared {} cells: mean abs dev {} GeV, max {} GeV",
                    s.count_compared,
                    s.mean_abs_dev_gev.map(format_sig6).unwrap_or_else(|| "n/a".into()),
                    s.max_abs_dev_gev.map(format_sig6).unwrap_or_else(|| "n/a".into())
                );
                if let Some(w) = s.within {
                    let _ = writeln!(out, "{} cells within {} GeV", w.count, format_sig6(w.tol_gev));
                }
            }
        }
    }
    out
}

/// Renders a μ² sweep; CSV is the plot-ready form.
pub fn render_sweep(points: &[SweepPoint], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("mu2,mean_abs_dev_gev,max_abs_dev_gev,within_002\n");
            for p in points {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    format_sig6(p.mu2),
                    format_sig6(p.mean_abs_dev_gev),
                    format_sig6(p.max_abs_dev_gev),
                    p.within_002
                );
            }
        }
        Format::Json => {
            let pts: Vec<Value> = points
                .iter()
                .map(|p| {
                    json!({
                        "mu2": num(Some(p.mu2)),
                        "mean_abs_dev_gev": num(Some(p.mean_abs_dev_gev)),
                        "max_abs_dev_gev": num(Some(p.max_abs_dev_gev)),
                        "within_002": p.within_002,
                    })
                })
                .collect();
            out = serde_json::to_string_pretty(&json!({ "sweep": pts })).expect("serializable");
            out.push('\n');
        }
        Format::Markdown => {
            out.push_str("# mu2 sweep against the printed table\n\n| mu2 | mean abs dev | max abs dev | within 0.02 |\n|---|---|---|---|\n");
            for p in points {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} |",
                    format_sig6(p.mu2),
                    format_sig6(p.mean_abs_dev_gev),
                    format_sig6(p.max_abs_dev_gev),
                    p.within_002
                );
            }
        }
    }
    out
}

/// Writes the rendering to a writer.
pub fn emit<W: Write>(
    rows: &[FamilyRow],
    stats: Option<&ComparisonStats>,
    mu2: f64,
    format: Format,
    dest: &mut W,
) -> Result<()> {
    dest.write_all(render(rows, stats, mu2, format).as_bytes())?;
    dest.flush()?;
    Ok(())
}

/// Reads the theoretical column back from an emitted CSV table.
pub fn parse_emitted_csv(text: &str) -> Result<MassMap> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let mut out = MassMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map(|p| p.line() as usize).unwrap_or(0),
            msg: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        let family =
            FamilyName::parse(&record[0]).ok_or_else(|| Error::UnknownFamily { line, name: record[0].to_string() })?;
        let n: u32 = record[1].parse().map_err(|_| Error::Parse { line, msg: "bad index".into() })?;
        if !record[3].is_empty() {
            let v: f64 = record[3].parse().map_err(|_| Error::Parse { line, msg: "bad mass".into() })?;
            out.insert((family, n), v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        let rows = generate_table(0.065, 10, &Family::all());
        assert_eq!(rows.len(), 88);
        let get =
            |f: FamilyName| rows.iter().find(|r| r.family == f && r.n == 0).unwrap().theoretical_mass_gev.unwrap();
        assert!((get(FamilyName::Epsilon) - 0.734).abs() < 2e-3);
        assert!((get(FamilyName::Delta) - 1.340).abs() < 2e-3);
    }

    #[test]
    fn bundled_data() {
        let e = bundled_experimental();
        assert_eq!(e.get(&(FamilyName::N, 0)), Some(&0.94));
        assert!(e.get(&(FamilyName::N, 1)).is_none());
        assert_eq!(bundled_printed().len(), 88);
    }

    #[test]
    fn parse_errors() {
        let bad = "family,n,mass_gev,source\nN,zero,1.0,PDG\n";
        assert!(matches!(parse_mass_csv(bad), Err(Error::Parse { line: 2, .. })));
        let dup = "family,n,mass_gev,source\nN,0,1.0,PDG\nN,0,1.1,PDG\n";
        assert!(matches!(parse_mass_csv(dup), Err(Error::DuplicateCell { .. })));
        let unk = "family,n,mass_gev,source\nOmega,0,1.6,PDG\n";
        assert!(matches!(parse_mass_csv(unk), Err(Error::UnknownFamily { line: 2, .. })));
        let dash = "family,n,mass_gev,source\nN,1,---,PDG\nN,0,\"0,94\",PDG\n";
        let m = parse_mass_csv(dash).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[&(FamilyName::N, 0)], 0.94);
        assert!(parse_mass_csv("a,b\n").is_err());
    }

    #[test]
    fn compare_examples() {
        let rows = generate_table(0.065, 10, &Family::all());
        let s = compare(&rows, &MassMap::new());
        assert_eq!(s.count_compared, 0);
        assert!(s.mean_abs_dev_gev.is_none());
        let one = vec![FamilyRow {
            family: FamilyName::N,
            n: 0,
            big_n: 1,
            theoretical_mass_gev: Some(1.14),
            note: None,
            experimental_mass_gev: None,
            abs_dev: None,
        }];
        let mut m = MassMap::new();
        m.insert((FamilyName::N, 0), 0.94);
        m.insert((FamilyName::N, 5), 1.5);
        let s = compare(&one, &m);
        assert_eq!(s.count_compared, 1);
        assert!((s.mean_abs_dev_gev.unwrap() - 0.2).abs() < 1e-12);
        assert_eq!(s.mean_abs_dev_gev, s.max_abs_dev_gev);
    }

    #[test]
    fn sig6() {
        assert_eq!(format_sig6(1.144383), "1.14438");
        assert_eq!(format_sig6(0.125), "0.125");
        assert_eq!(format_sig6(87618.34), "87618.3");
        assert_eq!(format_sig6(1.0), "1");
        assert_eq!(format_sig6(2.5e-7), "2.5e-7");
        assert_eq!(format_sig6(1.141e11), "1.141e11");
        assert_eq!(format_sig6(-0.0319), "-0.0319");
        // exact binary ties round to even
        assert_eq!(format_sig6(100000.5), "100000");
        assert_eq!(format_sig6(100001.5), "100002");
    }

    #[test]
    fn csv_header_and_round_trip() {
        let rows = generate_table(0.065, 10, &Family::all());
        let text = render(&rows, None, 0.065, Format::Csv);
        assert!(text.starts_with("family,n,N,theoretical_gev,experimental_gev,abs_dev\n"));
        let back = parse_emitted_csv(&text).unwrap();
        for r in &rows {
            let t = r.theoretical_mass_gev.unwrap();
            assert!((back[&(r.family, r.n)] - t).abs() <= 5e-6 * t);
        }
    }

    #[test]
    fn json_shape() {
        let rows = attach(&generate_table(0.065, 2, &Family::all()), &bundled_experimental());
        let stats = compare(&rows, &bundled_experimental());
        let v: Value = serde_json::from_str(&render(&rows, Some(&stats), 0.065, Format::Json)).unwrap();
        assert!(v["mu2"].is_number());
        assert_eq!(v["rows"].as_array().unwrap().len(), 24);
        assert!(v["rows"][0]["theoretical_gev"].is_number());
        assert!(v["stats"]["count_compared"].is_number());
    }

    #[test]
    fn deterministic_markdown() {
        let rows = generate_table(0.065, 10, &Family::all());
        let a = render(&rows, None, 0.065, Format::Markdown);
        let b = render(&generate_table(0.065, 10, &Family::all()), None, 0.065, Format::Markdown);
        assert_eq!(a, b);
        assert_eq!(a.matches("## ").count(), 8);
    }
}
