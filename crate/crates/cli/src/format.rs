//! Text output: numbers, series CSV and matrix dumps.

use std::io::{self, Write};

use entdyn_core::dynamics::EnsembleSeries;
use entdyn_core::{ComplexMatrix, C64};

/// Significant digits of every printed number.
pub const DIGITS: usize = 12;

pub const CSV_HEADER: &str = "step,mean_E_nats,mean_E_over_ln2,mean_S,mean_S_A,mean_S_B,std_E,std_S";

/// `x` with [`DIGITS`] significant digits, `%g` style: fixed notation for
/// decimal exponents in `[-5, DIGITS)`, scientific otherwise, trailing zeros
/// dropped. Negative zero prints as `0`.
pub fn number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `re±imj`, e.g. `0.45+0j`, `-0.1-0.2j`.
pub fn complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() && z.im != 0.0 { '-' } else { '+' };
    format!("{}{sign}{}j", number(z.re), number(z.im.abs()))
}

/// Matrix rows, entries separated by two spaces.
pub fn matrix(m: &ComplexMatrix) -> String {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| complex(m[(i, j)])).collect::<Vec<_>>().join("  ")).collect::<Vec<_>>().join("\n")
}

pub fn write_series_csv<W: Write>(mut w: W, series: &EnsembleSeries) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in &series.rows {
        let m = &row.mean;
        let fields = [m.eof_nats, m.eof_rescaled, m.s_total, m.s_a, m.s_b, row.std.eof_nats, row.std.s_total];
        write!(w, "{}", row.step)?;
        for f in fields {
            write!(w, ",{}", number(f))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn series_csv(series: &EnsembleSeries) -> String {
    let mut buf = Vec::new();
    write_series_csv(&mut buf, series).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV is ASCII")
}
