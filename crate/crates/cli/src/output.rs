//! Output rendering: 9-significant-digit numeric formatting for CSV,
//! run manifests, and file/stdout emission with CSV manifest sidecars.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

/// Reproducibility record attached to every emitted data set.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub artifact_version: String,
    pub timestamp: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(command: &str, seed: Option<u64>) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: timestamp(),
            seed,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }
}

/// UTC ISO-8601 timestamp; honors SOURCE_DATE_EPOCH so outputs can be
/// made byte-for-byte reproducible.
fn timestamp() -> String {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse::<i64>().ok())
        .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0))
        .unwrap_or_else(chrono::Utc::now)
        .format("%Y-%m-%dT%H:%M:%SZ")
        .to_string()
}

/// Formats with 9 significant digits, plain decimal where readable and
/// scientific notation for extreme magnitudes; locale-independent.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..=14).contains(&mag) {
        let decimals = (8 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.8e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Writes the rendered output. JSON embeds the manifest; CSV written to a
/// file gets a `<file>.manifest.json` sidecar so the data file itself
/// stays byte-identical run to run.
pub fn emit(
    format: Format,
    output: Option<&Path>,
    csv_text: &str,
    json_value: &serde_json::Value,
    manifest: &RunManifest,
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let text = format!("{:#}\n", json_value);
            write_or_print(output, &text)
        }
        Format::Csv => {
            write_or_print(output, csv_text)?;
            if let Some(path) = output {
                let mut sidecar = PathBuf::from(path);
                sidecar.as_mut_os_string().push(".manifest.json");
                let manifest_text =
                    format!("{:#}\n", serde_json::to_value(manifest).expect("serializable"));
                std::fs::write(sidecar, manifest_text)?;
            }
            Ok(())
        }
    }
}

fn write_or_print(output: Option<&Path>, text: &str) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0 / 6.0), "0.166666667");
        assert_eq!(fmt_sig(0.2), "0.200000000");
        assert_eq!(fmt_sig(std::f64::consts::PI), "3.14159265");
        assert_eq!(fmt_sig(-0.5), "-0.500000000");
        assert_eq!(fmt_sig(1.5e-13), "1.50000000e-13");
    }

    #[test]
    fn formatted_values_parse_back() {
        for x in [1.0 / 3.0, 0.225, 2.0 / 9.0, 1e-4, 3.0e-16] {
            let parsed: f64 = fmt_sig(x).parse().unwrap();
            assert!((parsed - x).abs() <= 1e-8 * x.abs().max(1e-300));
        }
    }
}
