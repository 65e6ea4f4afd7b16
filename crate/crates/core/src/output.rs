//! Serialization of sweep records.
//!
//! Numbers are written with 12 significant digits in Rust's own float
//! formatting, so output does not depend on locale or thread scheduling.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::config::OutputFormat;
use crate::error::{Error, Result};
use crate::sweep::SweepRecord;

pub const CSV_HEADER: &str =
    "sigma_x_m,L_km,P_e,P_mu,P_tau,C_l1,C_emu,C_etau,C_mutau,identity_residual";

/// 12 significant digits.
pub fn format_value(x: f64) -> String {
    format!("{x:.11e}")
}

fn rounded(x: f64) -> f64 {
    format_value(x).parse().expect("formatted float parses")
}

fn fields(r: &SweepRecord) -> [f64; 10] {
    [
        r.sigma_x_m,
        r.baseline_km,
        r.p_e,
        r.p_mu,
        r.p_tau,
        r.l1_norm,
        r.c_emu,
        r.c_etau,
        r.c_mutau,
        r.identity_residual,
    ]
}

pub fn emit<W: Write>(
    records: &[SweepRecord],
    format: OutputFormat,
    out: &mut W,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                let line: Vec<String> = fields(r).iter().map(|&x| format_value(x)).collect();
                writeln!(out, "{}", line.join(","))?;
            }
        }
        OutputFormat::Json => {
            let rounded: Vec<SweepRecord> = records
                .iter()
                .map(|r| {
                    let f = fields(r).map(rounded);
                    SweepRecord {
                        sigma_x_m: f[0],
                        baseline_km: f[1],
                        p_e: f[2],
                        p_mu: f[3],
                        p_tau: f[4],
                        l1_norm: f[5],
                        c_emu: f[6],
                        c_etau: f[7],
                        c_mutau: f[8],
                        identity_residual: f[9],
                    }
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rounded)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn emit_to_bytes(records: &[SweepRecord], format: OutputFormat) -> Result<Vec<u8>> {
    if records.is_empty() {
        return Err(Error::EmptyOutput);
    }
    let mut buf = Vec::new();
    emit(records, format, &mut buf).expect("writing to memory cannot fail");
    Ok(buf)
}

pub fn emit_to_path(records: &[SweepRecord], format: OutputFormat, path: &Path) -> Result<()> {
    if records.is_empty() {
        return Err(Error::EmptyOutput);
    }
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io)?;
    let mut writer = BufWriter::new(file);
    emit(records, format, &mut writer).map_err(io)?;
    writer.flush().map_err(io)
}

/// Reads back CSV written by [`emit`].
pub fn parse_csv(text: &str) -> std::result::Result<Vec<SweepRecord>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err("missing or unexpected header".into());
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let v: Vec<f64> = line
                .split(',')
                .map(|s| s.parse::<f64>().map_err(|e| format!("row {}: {e}", i + 1)))
                .collect::<std::result::Result<_, _>>()?;
            if v.len() != 10 {
                return Err(format!(
                    "row {}: expected 10 columns, found {}",
                    i + 1,
                    v.len()
                ));
            }
            Ok(SweepRecord {
                sigma_x_m: v[0],
                baseline_km: v[1],
                p_e: v[2],
                p_mu: v[3],
                p_tau: v[4],
                l1_norm: v[5],
                c_emu: v[6],
                c_etau: v[7],
                c_mutau: v[8],
                identity_residual: v[9],
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn record(x: f64) -> SweepRecord {
        SweepRecord {
            sigma_x_m: 5e-17,
            baseline_km: 1234.5,
            p_e: x,
            p_mu: 0.25,
            p_tau: 0.75 - x,
            l1_norm: 1.0 / 3.0,
            c_emu: 0.1,
            c_etau: 0.2,
            c_mutau: 0.0,
            identity_residual: 2.2e-16,
        }
    }

    #[test]
    fn one_record_csv() {
        let text =
            String::from_utf8(emit_to_bytes(&[record(0.5)], OutputFormat::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("5.00000000000e-17,1.23450000000e3,5.00000000000e-1,"));
        assert!(lines[1].contains(",3.33333333333e-1,"));
    }

    #[test]
    fn json_uses_same_field_names() {
        let bytes = emit_to_bytes(&[record(0.5), record(0.1)], OutputFormat::Json).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        let arr = value.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        let mut keys: Vec<&str> = arr[0]
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        let mut expect: Vec<&str> = CSV_HEADER.split(',').collect();
        keys.sort();
        expect.sort();
        assert_eq!(keys, expect);
        assert_eq!(arr[1]["C_l1"].as_f64().unwrap(), 0.333333333333);
    }

    #[test]
    fn empty_is_an_error() {
        assert!(matches!(
            emit_to_bytes(&[], OutputFormat::Csv),
            Err(Error::EmptyOutput)
        ));
    }

    #[test]
    fn unwritable_path_reports_it() {
        let err = emit_to_path(
            &[record(0.5)],
            OutputFormat::Csv,
            Path::new("/nonexistent/dir/out.csv"),
        )
        .unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/out.csv"));
    }

    proptest! {
        #[test]
        fn csv_round_trip_to_12_digits(x in prop::num::f64::NORMAL, y in 0.0f64..1.0) {
            let mut r = record(y);
            r.l1_norm = x;
            let bytes = emit_to_bytes(&[r], OutputFormat::Csv).unwrap();
            let back = parse_csv(std::str::from_utf8(&bytes).unwrap()).unwrap();
            let rel = |a: f64, b: f64| if a == 0.0 { b.abs() } else { ((a - b) / a).abs() };
            prop_assert!(rel(x, back[0].l1_norm) <= 5e-12);
            prop_assert!(rel(y, back[0].p_e) <= 5e-12);
            let again = emit_to_bytes(&back, OutputFormat::Csv).unwrap();
            prop_assert_eq!(bytes, again);
        }
    }
}
