use std::path::Path;

use cheby_ramsey_core::format::{parse_copy_hypergraph, parse_plane_coloring, parse_point_set};
use cheby_ramsey_core::{parse_scalar, CopyHypergraph, PlaneColoring, PointSet, Rational, Triangle};

use crate::error::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|err| CliError::Io { path: path.display().to_string(), err })
}

pub fn points(path: &Path) -> Result<PointSet, CliError> {
    parse_point_set(&read(path)?).map_err(|e| CliError::from_format(&path.display().to_string(), e))
}

pub fn plane_coloring(path: &Path) -> Result<PlaneColoring, CliError> {
    parse_plane_coloring(&read(path)?).map_err(|e| CliError::from_format(&path.display().to_string(), e))
}

pub fn hypergraph(path: &Path) -> Result<CopyHypergraph, CliError> {
    parse_copy_hypergraph(&read(path)?).map_err(|e| CliError::from_format(&path.display().to_string(), e))
}

/// Comma-separated rationals; errors point at the offending item.
pub fn rational_list(flag: &str, text: &str) -> Result<Vec<Rational>, CliError> {
    let mut out = Vec::new();
    let mut column = 1;
    for item in text.split(',') {
        let v = parse_scalar(item).map_err(|e| CliError::Parse {
            origin: flag.to_string(),
            line: 1,
            column,
            message: e.to_string(),
        })?;
        out.push(v);
        column += item.chars().count() + 1;
    }
    Ok(out)
}

pub fn rational(flag: &str, text: &str) -> Result<Rational, CliError> {
    let v = rational_list(flag, text)?;
    match <[Rational; 1]>::try_from(v) {
        Ok([x]) => Ok(x),
        Err(_) => Err(CliError::Invalid(format!("{flag} expects one rational"))),
    }
}

pub fn triangle(text: &str) -> Result<Triangle, CliError> {
    let v = rational_list("--triangle", text)?;
    let [a, b, c] = <[Rational; 3]>::try_from(v)
        .map_err(|_| CliError::Invalid("--triangle expects three side lengths a,b,c".into()))?;
    Triangle::new(a, b, c).map_err(CliError::invalid)
}

pub fn dims(flag: &str, text: &str) -> Result<Vec<i64>, CliError> {
    let v: Result<Vec<i64>, _> = text.split(',').map(|s| s.trim().parse::<i64>()).collect();
    match v {
        Ok(d) if (1..=2).contains(&d.len()) && d.iter().all(|&x| x > 0) => Ok(d),
        _ => Err(CliError::Invalid(format!("{flag} expects n or n,m with positive integers"))),
    }
}
