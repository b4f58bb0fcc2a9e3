//! Coefficient dump: a `# modulus=<m>` comment line, then `n,coeff` CSV.

use std::io::{BufRead, BufReader, Read, Write};

use num_bigint::BigInt;

use super::{CoefficientRing, TruncatedSeries};
use crate::error::{Error, Result};

pub fn write_csv<W: Write>(series: &TruncatedSeries, mut out: W) -> Result<()> {
    writeln!(out, "# modulus={}", series.ring().modulus())?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "coeff"])?;
    for (n, c) in series.coefficients().iter().enumerate() {
        w.write_record([n.to_string(), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a dump written by [`write_csv`]. Rows must list every exponent from
/// 0 upward exactly once.
pub fn read_csv<R: Read>(input: R) -> Result<TruncatedSeries> {
    let mut reader = BufReader::new(input);
    let mut first = String::new();
    reader.read_line(&mut first)?;
    let modulus = first
        .trim()
        .strip_prefix("# modulus=")
        .ok_or_else(|| Error::Parse(format!("expected '# modulus=<m>' header, got {:?}", first.trim())))?
        .parse::<u64>()
        .map_err(|e| Error::Parse(format!("bad modulus: {e}")))?;
    let ring = CoefficientRing::new(modulus)?;

    let mut rows = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(reader);
    let headers = rows.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["n", "coeff"] {
        return Err(Error::Parse(format!("expected header n,coeff, got {headers:?}")));
    }
    let mut coeffs = Vec::new();
    for (i, record) in rows.records().enumerate() {
        let record = record?;
        let n: usize = record[0].trim().parse().map_err(|e| Error::Parse(format!("row {i}: bad exponent: {e}")))?;
        if n != i {
            return Err(Error::Parse(format!("row {i}: expected exponent {i}, found {n}")));
        }
        let c: BigInt = record[1].trim().parse().map_err(|e| Error::Parse(format!("row {i}: bad coefficient: {e}")))?;
        if !ring.is_exact() && (c < BigInt::from(0) || c >= BigInt::from(ring.modulus())) {
            return Err(Error::Parse(format!("row {i}: residue {c} outside [0, {})", ring.modulus())));
        }
        coeffs.push(c);
    }
    TruncatedSeries::from_coefficients(coeffs, ring)
}
