//! CSV and gnuplot-script emission.
//!
//! Output is RFC-4180 CSV with a mandatory header row, '.' as the decimal
//! separator, and 12 significant digits. The effective configuration is
//! echoed as '#'-prefixed comment lines above the header (gnuplot skips
//! them natively). Schemas are versioned through a `schema=` comment.

use crate::error::Result;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Format with 12 significant digits, trimming trailing zeros; plain
/// notation in a sane exponent window, otherwise scientific. Non-finite
/// values become the empty field (callers warn separately).
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return String::new();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        let trimmed = s.trim_end_matches('0').trim_end_matches('.');
        if trimmed == "-0" {
            "0".to_string()
        } else {
            trimmed.to_string()
        }
    } else {
        format!("{:.11e}", x)
    }
}

/// Join a list with ';' inside one CSV field (keeps the field comma-free).
pub fn join_list<T, F: Fn(&T) -> String>(items: &[T], f: F) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(";")
}

/// A CSV document under construction.
pub struct Csv {
    schema: &'static str,
    comments: Vec<(String, String)>,
    header: &'static str,
    rows: Vec<String>,
}

impl Csv {
    pub fn new(schema: &'static str, header: &'static str) -> Self {
        Self {
            schema,
            comments: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    /// Echo one effective-config entry.
    pub fn config(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.comments.push((key.to_string(), value.into()));
        self
    }

    pub fn row(&mut self, fields: Vec<String>) {
        self.rows.push(fields.join(","));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# schema={}\n", self.schema));
        for (k, v) in &self.comments {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        out
    }

    pub fn write(&self, out: Option<&PathBuf>) -> Result<()> {
        let text = self.render();
        match out {
            Some(path) => std::fs::write(path, text)?,
            None => {
                let stdout = std::io::stdout();
                stdout.lock().write_all(text.as_bytes())?;
            }
        }
        Ok(())
    }
}

/// Write a gnuplot script next to `csv_path` (same stem, `.gp` extension).
pub fn write_plot_script(csv_path: &Path, body: &str) -> Result<PathBuf> {
    let gp_path = csv_path.with_extension("gp");
    let csv_name = csv_path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| csv_path.display().to_string());
    let script = body.replace("{csv}", &csv_name);
    std::fs::write(&gp_path, script)?;
    Ok(gp_path)
}

pub const FIG1A_PLOT: &str = "\
# gnuplot script: throughput vs SNR, variable- vs fixed-length INR HARQ
set datafile separator ','
set key top left
set xlabel 'SNR (dB)'
set ylabel 'Throughput (npcu)'
set grid
plot '{csv}' using 1:2 with linespoints title 'variable-length INR', \\
     '{csv}' using 1:5 with linespoints title 'fixed-length INR'
pause -1
";

pub const FIG1B_PLOT: &str = "\
# gnuplot script: throughput gain of variable-length HARQ over open-loop
set datafile separator ','
set key top left
set xlabel 'SNR (dB)'
set ylabel 'Throughput gain (%)'
set grid
plot '{csv}' using 1:4 with linespoints title 'gain'
pause -1
";

pub const FIG1C_PLOT: &str = "\
# gnuplot script: acceptable relative feedback delay vs SNR, per payload
set datafile separator ','
set key top right
set xlabel 'SNR (dB)'
set ylabel 'Acceptable relative delay r'
set grid
plot '{csv}' using ($2==300?$1:1/0):5 with linespoints title 'r, K=300', \\
     '{csv}' using ($2==300?$1:1/0):6 with lines dashtype 2 title 'bounds, K=300', \\
     '{csv}' using ($2==300?$1:1/0):7 with lines dashtype 2 notitle, \\
     '{csv}' using ($2==600?$1:1/0):5 with linespoints title 'r, K=600', \\
     '{csv}' using ($2==600?$1:1/0):6 with lines dashtype 3 title 'bounds, K=600', \\
     '{csv}' using ($2==600?$1:1/0):7 with lines dashtype 3 notitle
pause -1
";
