//! On-disk matrix format: a JSON document with the algebra parameters,
//! the shape, and the four component planes (`a`, `b`, `c`, `d`) as
//! nested row-major arrays. An optional second quartet (`e`..`h`) marks a
//! generalized matrix. Numbers round-trip exactly (shortest
//! representation that parses back to the same double).

use std::fs;
use std::path::Path;

use abtess::{GTMat, Params, TMat};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error in {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("invalid matrix document: {0}")]
    Validation(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixDoc {
    alpha: f64,
    beta: f64,
    rows: usize,
    cols: usize,
    a: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
    c: Vec<Vec<f64>>,
    d: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    e: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone)]
pub enum LoadedMatrix {
    Plain(TMat),
    Generalized(GTMat),
}

impl LoadedMatrix {
    pub fn params(&self) -> Params {
        match self {
            LoadedMatrix::Plain(x) => x.params(),
            LoadedMatrix::Generalized(x) => x.params(),
        }
    }

    pub fn expect_plain(self) -> Result<TMat, FileError> {
        match self {
            LoadedMatrix::Plain(x) => Ok(x),
            LoadedMatrix::Generalized(_) => Err(FileError::Validation(
                "expected a plain matrix, found a generalized one (e..h planes present)"
                    .to_string(),
            )),
        }
    }
}

fn check_plane(name: &str, plane: &[Vec<f64>], rows: usize, cols: usize) -> Result<(), FileError> {
    if plane.len() != rows {
        return Err(FileError::Validation(format!(
            "plane '{name}' has {} rows, expected {rows}",
            plane.len()
        )));
    }
    for (i, row) in plane.iter().enumerate() {
        if row.len() != cols {
            return Err(FileError::Validation(format!(
                "plane '{name}' row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(FileError::Validation(format!(
                "plane '{name}' row {i} contains a non-finite value"
            )));
        }
    }
    Ok(())
}

fn flat(plane: &[Vec<f64>]) -> Vec<f64> {
    plane.iter().flatten().copied().collect()
}

fn nested(data: &[f64], rows: usize, cols: usize) -> Vec<Vec<f64>> {
    (0..rows)
        .map(|i| data[i * cols..(i + 1) * cols].to_vec())
        .collect()
}

pub fn load_matrix(path: &Path) -> Result<LoadedMatrix, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let doc: MatrixDoc = serde_json::from_str(&text).map_err(|source| FileError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    matrix_from_doc(doc)
}

fn matrix_from_doc(doc: MatrixDoc) -> Result<LoadedMatrix, FileError> {
    let params =
        Params::new(doc.alpha, doc.beta).map_err(|e| FileError::Validation(e.to_string()))?;
    if doc.rows == 0 || doc.cols == 0 {
        return Err(FileError::Validation(format!(
            "degenerate shape {}x{}",
            doc.rows, doc.cols
        )));
    }
    for (name, plane) in [("a", &doc.a), ("b", &doc.b), ("c", &doc.c), ("d", &doc.d)] {
        check_plane(name, plane, doc.rows, doc.cols)?;
    }
    let x1 = TMat::from_planes(
        params,
        doc.rows,
        doc.cols,
        flat(&doc.a),
        flat(&doc.b),
        flat(&doc.c),
        flat(&doc.d),
    )
    .map_err(|e| FileError::Validation(e.to_string()))?;

    let gen_planes = [&doc.e, &doc.f, &doc.g, &doc.h];
    let present = gen_planes.iter().filter(|p| p.is_some()).count();
    match present {
        0 => Ok(LoadedMatrix::Plain(x1)),
        4 => {
            let (e, f, g, h) = (
                doc.e.as_ref().unwrap(),
                doc.f.as_ref().unwrap(),
                doc.g.as_ref().unwrap(),
                doc.h.as_ref().unwrap(),
            );
            for (name, plane) in [("e", e), ("f", f), ("g", g), ("h", h)] {
                check_plane(name, plane, doc.rows, doc.cols)?;
            }
            let x2 = TMat::from_planes(
                params,
                doc.rows,
                doc.cols,
                flat(e),
                flat(f),
                flat(g),
                flat(h),
            )
            .map_err(|err| FileError::Validation(err.to_string()))?;
            Ok(LoadedMatrix::Generalized(GTMat { x1, x2 }))
        }
        _ => Err(FileError::Validation(
            "generalized planes e, f, g, h must all be present or all absent".to_string(),
        )),
    }
}

fn doc_from_tmat(x: &TMat) -> MatrixDoc {
    let (rows, cols) = (x.rows(), x.cols());
    let mut a = vec![0.0; rows * cols];
    let mut b = vec![0.0; rows * cols];
    let mut c = vec![0.0; rows * cols];
    let mut d = vec![0.0; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            let t = x.entry(i, j);
            a[i * cols + j] = t.a;
            b[i * cols + j] = t.b;
            c[i * cols + j] = t.c;
            d[i * cols + j] = t.d;
        }
    }
    MatrixDoc {
        alpha: x.params().alpha(),
        beta: x.params().beta(),
        rows,
        cols,
        a: nested(&a, rows, cols),
        b: nested(&b, rows, cols),
        c: nested(&c, rows, cols),
        d: nested(&d, rows, cols),
        e: None,
        f: None,
        g: None,
        h: None,
    }
}

pub fn save_matrix(x: &TMat, path: &Path) -> Result<(), FileError> {
    let doc = doc_from_tmat(x);
    write_doc(&doc, path)
}

pub fn save_gmatrix(x: &GTMat, path: &Path) -> Result<(), FileError> {
    let mut doc = doc_from_tmat(&x.x1);
    let aux = doc_from_tmat(&x.x2);
    doc.e = Some(aux.a);
    doc.f = Some(aux.b);
    doc.g = Some(aux.c);
    doc.h = Some(aux.d);
    write_doc(&doc, path)
}

fn write_doc(doc: &MatrixDoc, path: &Path) -> Result<(), FileError> {
    let text = serde_json::to_string_pretty(doc).expect("document serializes");
    fs::write(path, text).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Render a matrix as the document JSON (for stdout output).
pub fn matrix_to_json(x: &TMat) -> String {
    serde_json::to_string_pretty(&doc_from_tmat(x)).expect("document serializes")
}

pub fn gmatrix_to_json(x: &GTMat) -> String {
    let mut doc = doc_from_tmat(&x.x1);
    let aux = doc_from_tmat(&x.x2);
    doc.e = Some(aux.a);
    doc.f = Some(aux.b);
    doc.g = Some(aux.c);
    doc.h = Some(aux.d);
    serde_json::to_string_pretty(&doc).expect("document serializes")
}
