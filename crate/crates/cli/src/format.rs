//! Number formatting and small parsers shared by the commands.

use firstexit::closed_form::ExitTime;
use firstexit::{Chart, Error, Point2, Result};

/// `%.9g`-style: nine significant digits, trailing zeros trimmed,
/// scientific notation outside `[1e-5, 1e9)`.
pub fn g9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn exit_value(t: ExitTime) -> String {
    match t {
        ExitTime::Finite(v) => g9(v),
        ExitTime::Infinite => "inf".into(),
    }
}

/// `u,v` pair.
pub fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let bad = |reason: &str| Error::Parse { token: s.to_string(), reason: reason.into() };
    let (u, v) = s.split_once(',').ok_or_else(|| bad("expected `u,v`"))?;
    let num = |t: &str| {
        t.trim().parse::<f64>().map_err(|_| Error::Parse { token: t.trim().into(), reason: "not a number".into() })
    };
    Ok((num(u)?, num(v)?))
}

/// One `u,v` pair per line; blank lines and `#` comments are skipped.
pub fn parse_points_file(text: &str) -> Result<Vec<(f64, f64)>> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).map(parse_pair).collect()
}

pub fn point(pair: (f64, f64), chart: Chart) -> Result<Point2> {
    Point2::new(pair.0, pair.1, chart)
}
