//! Rendering of command results as JSON, CSV or density samples.

use std::io::Write;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use hkfun::exactnum::rational::to_decimal;
use hkfun::exactnum::{PiecewisePolynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Samples,
}

/// Settings shared by every renderer.
#[derive(Clone, Copy, Debug)]
pub struct Render {
    pub format: Format,
    pub samples: usize,
    pub precision: usize,
}

/// A command result in every representation it supports.
pub struct Output {
    pub json: serde_json::Value,
    pub table: Table,
    /// A density and the interval `[lo, hi]` worth sampling.
    pub curve: Option<(PiecewisePolynomial, Rational, Rational)>,
    /// False when a verification did not meet its tolerance.
    pub ok: bool,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// One row per segment: start, end (empty for an infinite end) and the
    /// ascending coefficients separated by spaces.
    pub fn piecewise(f: &PiecewisePolynomial) -> Self {
        let mut t = Self::new(&["start", "end", "coefficients"]);
        let bps = f.breakpoints();
        for (i, seg) in f.segments().iter().enumerate() {
            let start = if i == 0 { String::new() } else { bps[i - 1].to_string() };
            let end = bps.get(i).map_or(String::new(), |b| b.to_string());
            let coeffs: Vec<String> = seg.coeffs().iter().map(|c| c.to_string()).collect();
            t.push(vec![start, end, coeffs.join(" ")]);
        }
        t
    }
}

impl Output {
    pub fn new(json: serde_json::Value, table: Table) -> Self {
        Self { json, table, curve: None, ok: true }
    }

    pub fn with_curve(mut self, f: PiecewisePolynomial, lo: Rational, hi: Rational) -> Self {
        self.curve = Some((f, lo, hi));
        self
    }

    pub fn write(&self, render: Render, out: &mut dyn Write) -> Result<()> {
        match render.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)?;
            }
            Format::Csv => write_csv(&self.table, out)?,
            Format::Samples => {
                let Some((f, lo, hi)) = &self.curve else {
                    bail!("this command has no density to sample; use --format json or csv");
                };
                write_csv(&samples(f, lo, hi, render.samples, render.precision), out)?;
            }
        }
        Ok(())
    }
}

fn write_csv(table: &Table, out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush().context("writing CSV")?;
    Ok(())
}

/// `n` equally spaced points of `[lo, hi]` (just `lo` when `n = 1`), with
/// exact values and decimal renderings rounded to `precision` digits.
pub fn samples(f: &PiecewisePolynomial, lo: &Rational, hi: &Rational, n: usize, precision: usize) -> Table {
    let mut t = Table::new(&["x", "f", "x_decimal", "f_decimal"]);
    let steps = Rational::from_integer(n.saturating_sub(1).max(1).into());
    for k in 0..n {
        let x = lo + (hi - lo) * Rational::from_integer(k.into()) / &steps;
        let y = f.eval(&x);
        t.push(vec![x.to_string(), y.to_string(), to_decimal(&x, precision), to_decimal(&y, precision)]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use hkfun::exactnum::rational::{int, rat};
    use hkfun::volume::parameter_density;

    #[test]
    fn sample_grid_is_exact() {
        let tent = parameter_density(1, &[1, 1]).unwrap();
        let t = samples(tent.density(), &int(0), &int(2), 5, 3);
        assert_eq!(t.rows.len(), 5);
        assert_eq!(t.rows[1], vec!["1/2", "1/2", "0.500", "0.500"]);
        assert_eq!(t.rows[4][0], "2");
        let one = samples(tent.density(), &rat(1, 3), &int(2), 1, 2);
        assert_eq!(one.rows, vec![vec!["1/3", "1/3", "0.33", "0.33"]]);
    }

    #[test]
    fn piecewise_rows() {
        let tent = parameter_density(1, &[1, 1]).unwrap();
        let t = Table::piecewise(tent.density());
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.rows[0], vec!["", "0", ""]);
        assert_eq!(t.rows[2], vec!["1", "2", "2 -1"]);
        assert_eq!(t.rows[3], vec!["2", "", ""]);
    }
}
