//! Loading TSP cost data and reference fronts from files.
//!
//! Two instance formats are supported: a subset of the classic TSPLIB
//! format (one file per objective), and a native JSON format that bundles
//! all objectives into one document.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::core::{Direction, ObjectiveVector};
use crate::problems::MotspInstance;
use crate::{Error, Result};

/// Parses one TSPLIB file into a symmetric cost matrix.
///
/// Supported: `EDGE_WEIGHT_TYPE: EUC_2D` with a `NODE_COORD_SECTION`
/// (distances rounded to the nearest integer, the TSPLIB convention), and
/// `EDGE_WEIGHT_TYPE: EXPLICIT` with `EDGE_WEIGHT_FORMAT: FULL_MATRIX`.
/// Anything else is rejected rather than silently misread.
pub fn parse_tsplib(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<String> = None;
    let mut weight_format: Option<String> = None;

    let mut lines = text.lines().map(str::trim).peekable();
    while let Some(line) = lines.next() {
        if line.is_empty() || line == "EOF" {
            continue;
        }
        if let Some((key, value)) = split_keyword(line) {
            match key.as_str() {
                "DIMENSION" => {
                    let d: usize = value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad DIMENSION value {value:?}")))?;
                    dimension = Some(d);
                }
                "EDGE_WEIGHT_TYPE" => weight_type = Some(value),
                "EDGE_WEIGHT_FORMAT" => weight_format = Some(value),
                "NODE_COORD_SECTION" => {
                    let d = dimension
                        .ok_or_else(|| Error::Parse("NODE_COORD_SECTION before DIMENSION".into()))?;
                    match weight_type.as_deref() {
                        Some("EUC_2D") => {}
                        other => {
                            return Err(Error::UnsupportedTsplib(format!(
                                "coordinate sections need EDGE_WEIGHT_TYPE EUC_2D, got {other:?}"
                            )))
                        }
                    }
                    let coords = parse_coord_section(&mut lines, d)?;
                    return Ok(euc_2d_matrix(&coords));
                }
                "EDGE_WEIGHT_SECTION" => {
                    let d = dimension
                        .ok_or_else(|| Error::Parse("EDGE_WEIGHT_SECTION before DIMENSION".into()))?;
                    if weight_type.as_deref() != Some("EXPLICIT") {
                        return Err(Error::UnsupportedTsplib(format!(
                            "weight sections need EDGE_WEIGHT_TYPE EXPLICIT, got {:?}",
                            weight_type
                        )));
                    }
                    match weight_format.as_deref() {
                        Some("FULL_MATRIX") => {}
                        other => {
                            return Err(Error::UnsupportedTsplib(format!(
                                "only EDGE_WEIGHT_FORMAT FULL_MATRIX is supported, got {other:?}"
                            )))
                        }
                    }
                    return parse_full_matrix(&mut lines, d);
                }
                // NAME, COMMENT, TYPE, DISPLAY_DATA_TYPE, ... carry no cost data.
                _ => {}
            }
        }
    }
    Err(Error::Parse("no coordinate or weight section found".into()))
}

fn split_keyword(line: &str) -> Option<(String, String)> {
    if let Some((key, value)) = line.split_once(':') {
        Some((key.trim().to_string(), value.trim().to_string()))
    } else {
        let word = line.trim();
        if word.chars().all(|c| c.is_ascii_uppercase() || c == '_') && !word.is_empty() {
            Some((word.to_string(), String::new()))
        } else {
            None
        }
    }
}

fn parse_coord_section<'a>(
    lines: &mut impl Iterator<Item = &'a str>,
    dimension: usize,
) -> Result<Vec<(f64, f64)>> {
    let mut coords = vec![None; dimension];
    let mut filled = 0;
    for line in lines {
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        let mut parts = line.split_whitespace();
        let idx: usize = parts
            .next()
            .ok_or_else(|| Error::Parse("empty coordinate line".into()))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad node index in {line:?}")))?;
        let x: f64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad x coordinate in {line:?}")))?;
        let y: f64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad y coordinate in {line:?}")))?;
        if idx == 0 || idx > dimension {
            return Err(Error::Parse(format!("node index {idx} out of range 1..={dimension}")));
        }
        if coords[idx - 1].replace((x, y)).is_some() {
            return Err(Error::Parse(format!("duplicate node index {idx}")));
        }
        filled += 1;
        if filled == dimension {
            return Ok(coords.into_iter().map(Option::unwrap).collect());
        }
    }
    Err(Error::Parse(format!("coordinate section ended after {filled} of {dimension} nodes")))
}

// TSPLIB EUC_2D: Euclidean distance rounded to the nearest integer.
fn euc_2d_matrix(coords: &[(f64, f64)]) -> Vec<Vec<f64>> {
    let d = coords.len();
    let mut matrix = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in (i + 1)..d {
            let dx = coords[i].0 - coords[j].0;
            let dy = coords[i].1 - coords[j].1;
            let w = ((dx * dx + dy * dy).sqrt() + 0.5).floor();
            matrix[i][j] = w;
            matrix[j][i] = w;
        }
    }
    matrix
}

fn parse_full_matrix<'a>(
    lines: &mut impl Iterator<Item = &'a str>,
    dimension: usize,
) -> Result<Vec<Vec<f64>>> {
    let mut entries = Vec::with_capacity(dimension * dimension);
    for line in lines {
        if line.is_empty() {
            continue;
        }
        if line == "EOF" || line == "DISPLAY_DATA_SECTION" {
            break;
        }
        for token in line.split_whitespace() {
            let w: f64 = token
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight token {token:?}")))?;
            entries.push(w);
            if entries.len() == dimension * dimension {
                let matrix = entries
                    .chunks(dimension)
                    .map(|row| row.to_vec())
                    .collect();
                return Ok(matrix);
            }
        }
    }
    Err(Error::Parse(format!(
        "weight section ended after {} of {} entries",
        entries.len(),
        dimension * dimension
    )))
}

/// Builds a multi-objective instance from one TSPLIB file per objective.
/// All files must describe the same number of cities.
pub fn motsp_from_tsplib_files(paths: &[impl AsRef<Path>]) -> Result<MotspInstance> {
    if paths.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least two TSPLIB files, got {}",
            paths.len()
        )));
    }
    let mut matrices = Vec::with_capacity(paths.len());
    for path in paths {
        let text = fs::read_to_string(path.as_ref())?;
        matrices.push(parse_tsplib(&text)?);
    }
    let cities = matrices[0].len();
    for (i, m) in matrices.iter().enumerate() {
        if m.len() != cities {
            return Err(Error::InvalidParameter(format!(
                "file {i} has {} cities, expected {cities}",
                m.len()
            )));
        }
    }
    MotspInstance::new(matrices)
}

/// One objective of a JSON instance: either a full cost matrix or city
/// coordinates. Coordinate costs are exact Euclidean distances, not the
/// integer-rounded TSPLIB convention.
#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum JsonObjective {
    Matrix(Vec<Vec<f64>>),
    Coords(Vec<(f64, f64)>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonInstance {
    cities: usize,
    objectives: Vec<JsonObjective>,
}

/// Parses the native JSON instance format:
///
/// ```json
/// {
///   "cities": 3,
///   "objectives": [
///     {"matrix": [[0, 1, 2], [1, 0, 3], [2, 3, 0]]},
///     {"coords": [[0.0, 0.0], [3.0, 4.0], [6.0, 0.0]]}
///   ]
/// }
/// ```
pub fn motsp_from_json(text: &str) -> Result<MotspInstance> {
    let parsed: JsonInstance = serde_json::from_str(text)?;
    let mut matrices = Vec::with_capacity(parsed.objectives.len());
    for objective in &parsed.objectives {
        let matrix = match objective {
            JsonObjective::Matrix(m) => m.clone(),
            JsonObjective::Coords(coords) => {
                if coords.len() != parsed.cities {
                    return Err(Error::InvalidParameter(format!(
                        "{} coordinates for {} cities",
                        coords.len(),
                        parsed.cities
                    )));
                }
                exact_euclidean_matrix(coords)
            }
        };
        if matrix.len() != parsed.cities {
            return Err(Error::InvalidParameter(format!(
                "{}-row matrix for {} cities",
                matrix.len(),
                parsed.cities
            )));
        }
        matrices.push(matrix);
    }
    MotspInstance::new(matrices)
}

pub fn motsp_from_json_file(path: impl AsRef<Path>) -> Result<MotspInstance> {
    motsp_from_json(&fs::read_to_string(path.as_ref())?)
}

fn exact_euclidean_matrix(coords: &[(f64, f64)]) -> Vec<Vec<f64>> {
    let d = coords.len();
    let mut matrix = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in (i + 1)..d {
            let dx = coords[i].0 - coords[j].0;
            let dy = coords[i].1 - coords[j].1;
            let w = (dx * dx + dy * dy).sqrt();
            matrix[i][j] = w;
            matrix[j][i] = w;
        }
    }
    matrix
}

/// Reads a reference front from a text file: one objective vector per line,
/// whitespace-separated values; empty lines and `#` comments are skipped.
/// All rows must have one value per direction.
pub fn load_reference_front(
    path: impl AsRef<Path>,
    directions: &[Direction],
) -> Result<Vec<ObjectiveVector>> {
    let text = fs::read_to_string(path.as_ref())?;
    let mut points = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let values: Vec<f64> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("line {}: bad value {t:?}", lineno + 1)))
            })
            .collect::<Result<_>>()?;
        if values.len() != directions.len() {
            return Err(Error::Parse(format!(
                "line {}: {} values for {} objectives",
                lineno + 1,
                values.len(),
                directions.len()
            )));
        }
        points.push(ObjectiveVector::new(values, directions.to_vec())?);
    }
    if points.is_empty() {
        return Err(Error::EmptyInput("reference front file"));
    }
    Ok(points)
}
