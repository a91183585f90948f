//! `RBMAT v1` text format.
//!
//! ```text
//! RBMAT <m> <n>
//! <component 0: m lines of n floats>
//!
//! <component 1>
//!
//! <component 2>
//!
//! <component 3>
//! ```
//!
//! Floats are written in shortest round-trip exponent form, so a write/read
//! cycle is bit-exact.

use std::fmt::Write as _;

use nalgebra::DMatrix;

use super::matrix::RbMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub fn to_rbmat<T: Real>(p: &RbMatrix<T>) -> String {
    let (m, n) = p.shape();
    let mut out = format!("RBMAT {m} {n}\n");
    for (t, comp) in p.components().iter().enumerate() {
        if t > 0 {
            out.push('\n');
        }
        for i in 0..m {
            for j in 0..n {
                if j > 0 {
                    out.push(' ');
                }
                write!(out, "{:e}", comp[(i, j)]).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

pub fn from_rbmat<T: Real>(text: &str) -> Result<RbMatrix<T>> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (m, n) = match fields.as_slice() {
        ["RBMAT", m, n] => (
            m.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad row count {m:?}")))?,
            n.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad column count {n:?}")))?,
        ),
        _ => return Err(Error::Parse(format!("bad header {header:?}"))),
    };
    if m == 0 || n == 0 {
        return Err(Error::Parse("dimensions must be positive".into()));
    }

    let mut blocks: Vec<Vec<&str>> = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            if !current.is_empty() {
                blocks.push(std::mem::take(&mut current));
            }
        } else {
            current.push(line);
        }
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    if blocks.len() != 4 {
        return Err(Error::Parse(format!(
            "expected 4 component blocks, found {}",
            blocks.len()
        )));
    }

    let mut parts: Vec<DMatrix<T>> = Vec::with_capacity(4);
    for (t, block) in blocks.iter().enumerate() {
        if block.len() != m {
            return Err(Error::Parse(format!(
                "component {t}: expected {m} rows, found {}",
                block.len()
            )));
        }
        let mut comp = DMatrix::zeros(m, n);
        for (i, line) in block.iter().enumerate() {
            let vals: Vec<&str> = line.split_whitespace().collect();
            if vals.len() != n {
                return Err(Error::Parse(format!(
                    "component {t}, row {i}: expected {n} values, found {}",
                    vals.len()
                )));
            }
            for (j, v) in vals.iter().enumerate() {
                comp[(i, j)] = v.parse::<T>().map_err(|_| {
                    Error::Parse(format!("component {t}, row {i}: bad number {v:?}"))
                })?;
            }
        }
        parts.push(comp);
    }
    let parts: [DMatrix<T>; 4] = parts.try_into().expect("four blocks");
    RbMatrix::from_components(parts)
}
