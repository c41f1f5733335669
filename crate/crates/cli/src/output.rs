//! CSV output: `#` comment header with the resolved parameters, `,`
//! delimiter, floats with 9 significant digits.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

/// C-style `%.9g`.
pub fn fmt_g(x: f64) -> String {
    const PREC: i32 = 9;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (PREC - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PREC).contains(&exp) {
        let m = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (PREC - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Buffered CSV file writer.
pub struct Csv {
    path: PathBuf,
    out: BufWriter<File>,
}

impl Csv {
    pub fn create(path: &Path, title: &str, params: &BTreeMap<String, String>) -> io::Result<Self> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut csv = Csv { path: path.to_path_buf(), out: BufWriter::new(File::create(path)?) };
        csv.comment(title)?;
        for (k, v) in params {
            csv.comment(&format!("{k}={v}"))?;
        }
        Ok(csv)
    }

    pub fn comment(&mut self, text: &str) -> io::Result<()> {
        writeln!(self.out, "# {text}")
    }

    pub fn header(&mut self, columns: &[&str]) -> io::Result<()> {
        writeln!(self.out, "{}", columns.join(","))
    }

    pub fn row_str(&mut self, cells: &[String]) -> io::Result<()> {
        writeln!(self.out, "{}", cells.join(","))
    }

    pub fn row(&mut self, values: &[f64]) -> io::Result<()> {
        let cells: Vec<String> = values.iter().map(|v| fmt_g(*v)).collect();
        self.row_str(&cells)
    }

    pub fn finish(mut self) -> io::Result<PathBuf> {
        self.out.flush()?;
        Ok(self.path)
    }
}

/// `dir/name.csv` → `dir/name.<suffix>.csv`.
pub fn companion(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = path.extension().map(|e| e.to_string_lossy().into_owned()).unwrap_or_else(|| "csv".into());
    path.with_file_name(format!("{stem}.{suffix}.{ext}"))
}

pub fn db20(amplitude: f64) -> f64 {
    20.0 * amplitude.log10()
}

pub fn db10(power: f64) -> f64 {
    10.0 * power.log10()
}
