//! Function files.
//!
//! ```text
//! # comments start with '#'
//! k n b
//! v_0 v_1 ... v_{k^n - 1}
//! ```
//!
//! Values are whitespace separated, in row order (`x1` most significant).
//! For `k = b = 2` the body may instead be one token `hex:<digits>`: the
//! `2^n`-bit truth table as a big-endian hexadecimal number, row 0 in the
//! most significant bit. Exactly `ceil(2^n / 4)` digits are expected and any
//! padding bits above the table must be zero.

use aritygap_core::FiniteFunction;

use crate::error::CliError;

pub fn parse(text: &str) -> Result<FiniteFunction, CliError> {
    let mut lines =
        text.lines().enumerate().map(|(t, l)| (t + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| CliError::parse(1, "missing header \"k n b\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(CliError::parse(header_line, format!("header must be \"k n b\", got {header:?}")));
    }
    let num = |s: &str, what: &str| {
        s.parse::<u64>().map_err(|_| CliError::parse(header_line, format!("{what} is not a number: {s:?}")))
    };
    let (k, n, b) = (num(fields[0], "k")?, num(fields[1], "n")?, num(fields[2], "b")?);
    if k == 0 || b == 0 || k > u64::from(u32::MAX) || b > u64::from(u32::MAX) {
        return Err(CliError::parse(header_line, "k and b must be positive 32-bit values"));
    }
    let (k, n, b) = (k as u32, n as usize, b as u32);

    let body: Vec<(usize, &str)> =
        lines.flat_map(|(line, l)| l.split_whitespace().map(move |tok| (line, tok))).collect();
    let table = match body.as_slice() {
        [(line, tok)] if tok.starts_with("hex:") => {
            if k != 2 || b != 2 {
                return Err(CliError::parse(*line, "hex form needs k = b = 2"));
            }
            parse_hex(&tok[4..], n).map_err(|msg| CliError::parse(*line, msg))?
        }
        _ => body
            .iter()
            .map(|&(line, tok)| tok.parse::<u32>().map_err(|_| CliError::parse(line, format!("not a value: {tok:?}"))))
            .collect::<Result<Vec<u32>, _>>()?,
    };
    let last_line = body.last().map_or(header_line, |&(l, _)| l);
    FiniteFunction::new(k, b, n, table).map_err(|e| CliError::parse(last_line, e.to_string()))
}

fn parse_hex(digits: &str, n: usize) -> Result<Vec<u32>, String> {
    if n > 26 {
        return Err(format!("hex form supports n <= 26, got {n}"));
    }
    let rows = 1usize << n;
    let expected = rows.div_ceil(4);
    if digits.len() != expected {
        return Err(format!("expected {expected} hex digits for n = {n}, got {}", digits.len()));
    }
    let mut bits = Vec::with_capacity(expected * 4);
    for c in digits.chars() {
        let d = c.to_digit(16).ok_or_else(|| format!("not a hex digit: {c:?}"))?;
        bits.extend((0..4).rev().map(|s| (d >> s) & 1));
    }
    let pad = bits.len() - rows;
    if bits[..pad].iter().any(|&bit| bit != 0) {
        return Err("padding bits above the table must be zero".into());
    }
    Ok(bits.split_off(pad))
}

/// Values per line: the largest power of `k` not above 32.
fn line_width(k: u32) -> usize {
    if k < 2 {
        return 32;
    }
    let mut w = 1usize;
    while w * k as usize <= 32 {
        w *= k as usize;
    }
    w
}

pub fn write(f: &FiniteFunction) -> String {
    let mut out = format!("{} {} {}\n", f.domain_size(), f.arity(), f.codomain_size());
    for chunk in f.table().chunks(line_width(f.domain_size())) {
        let row: Vec<String> = chunk.iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Hexadecimal body for a Boolean function, as accepted by [`parse`].
pub fn write_hex(f: &FiniteFunction) -> Option<String> {
    if !f.is_boolean() || f.arity() > 26 {
        return None;
    }
    let rows = f.table().len();
    let pad = rows.div_ceil(4) * 4 - rows;
    let bits: Vec<u32> = std::iter::repeat_n(0, pad).chain(f.table().iter().copied()).collect();
    let digits: String =
        bits.chunks(4).map(|c| char::from_digit(c.iter().fold(0, |acc, &bit| acc << 1 | bit), 16).unwrap()).collect();
    Some(format!("2 {} 2\nhex:{digits}\n", f.arity()))
}
