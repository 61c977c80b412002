//! Strict parsers for flag values.

use std::ops::RangeInclusive;

use zetaflow::Complex64;

const NUMBER_CHARS: &str = "0123456789.eE+-";

fn finite(text: &str) -> Result<f64, String> {
    if text.is_empty() || !text.chars().all(|c| NUMBER_CHARS.contains(c)) {
        return Err(format!("'{text}' is not a number"));
    }
    let v: f64 = text.parse().map_err(|_| format!("'{text}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("'{text}' is not finite"));
    }
    Ok(v)
}

/// A real number flag value; rejects `inf`, `nan` and anything with spaces.
pub fn real(text: &str) -> Result<f64, String> {
    finite(text)
}

/// `a+bi` or `a-bi` with no spaces.
pub fn complex(text: &str) -> Result<Complex64, String> {
    let bad = || format!("'{text}' is not of the form a+bi");
    let body = text.strip_suffix('i').ok_or_else(bad)?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let (re, im) = body.split_at(split);
    if im.len() < 2 {
        return Err(bad());
    }
    Ok(Complex64::new(finite(re).map_err(|_| bad())?, finite(im).map_err(|_| bad())?))
}

/// A comma-separated list of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Reals(pub Vec<f64>);

/// Comma-separated reals with an exact count (`None` for any count ≥ 1).
pub fn real_list(text: &str, count: Option<usize>) -> Result<Reals, String> {
    let values = text.split(',').map(finite).collect::<Result<Vec<_>, _>>()?;
    match count {
        Some(n) if values.len() != n => Err(format!("expected {n} comma-separated values, got {}", values.len())),
        _ => Ok(Reals(values)),
    }
}

/// Zero selection: `all`, `k`, or `a..b` (1-based, inclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selection {
    All,
    Range(RangeInclusive<usize>),
}

impl Selection {
    pub fn upper(&self) -> Option<usize> {
        match self {
            Selection::All => None,
            Selection::Range(r) => Some(*r.end()),
        }
    }
}

pub fn selection(text: &str) -> Result<Selection, String> {
    if text == "all" {
        return Ok(Selection::All);
    }
    let index = |s: &str| -> Result<usize, String> {
        match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(format!("'{s}' is not a zero index (1-based)")),
        }
    };
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (index(a)?, index(b)?),
        None => {
            let k = index(text)?;
            (k, k)
        }
    };
    if a > b {
        return Err(format!("empty zero range {text}"));
    }
    Ok(Selection::Range(a..=b))
}
