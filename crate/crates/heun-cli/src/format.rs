//! Complex literal parsing (`RE+IMj`) and CSV rendering.

use heun_core::pathsum::SolutionTable;
use num_complex::Complex64;

/// Parses `RE`, `IMj`, or `RE+IMj` / `RE-IMj` single-token complex literals.
/// Exponent signs (`1e-4`) are not component separators.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(body) = s.strip_suffix('j') {
        // find the separating sign: a '+'/'-' that is neither leading nor
        // part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for (i, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i); // keep the last such sign
            }
        }
        let (re_str, im_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let re: f64 = re_str
            .parse()
            .map_err(|_| format!("bad real part in {s:?}"))?;
        let im: f64 = im_str
            .parse()
            .map_err(|_| format!("bad imaginary part in {s:?}"))?;
        Ok(Complex64::new(re, im))
    } else {
        let re: f64 = s
            .parse()
            .map_err(|_| format!("bad complex literal {s:?} (expected RE+IMj)"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

pub const CSV_HEADER: &str = "z_re,z_im,H_re,H_im,dH_re,dH_im";

fn push_row(out: &mut String, z: Complex64, h: Complex64, hp: Complex64) {
    use std::fmt::Write;
    // `{}` on f64 is the shortest round-trip representation: deterministic
    // and locale-independent
    let _ = write!(out, "{},{},{},{},{},{}", z.re, z.im, h.re, h.im, hp.re, hp.im);
}

pub fn write_csv(table: &SolutionTable) -> String {
    let mut out = String::with_capacity(64 * (table.points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for i in 0..table.points.len() {
        push_row(&mut out, table.points[i], table.h[i], table.hp[i]);
        out.push('\n');
    }
    out
}

/// Two-sided output: left rows first (reversed so z ascends toward 0), then
/// right rows, with a trailing `side` column.
pub fn write_csv_sided(left: &SolutionTable, right: &SolutionTable) -> String {
    let mut out = String::with_capacity(64 * (left.points.len() + right.points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push_str(",side\n");
    for i in (0..left.points.len()).rev() {
        push_row(&mut out, left.points[i], left.h[i], left.hp[i]);
        out.push_str(",left\n");
    }
    for i in 0..right.points.len() {
        push_row(&mut out, right.points[i], right.h[i], right.hp[i]);
        out.push_str(",right\n");
    }
    out
}
