//! The wire encoding of a `QSeries`.
//!
//! ```text
//! {"qorder": N, "pwindow": [lo2, hi2], "coeffs": [[d, [[e2, "num/den"], ...]], ...]}
//! ```
//!
//! `lo2`, `hi2`, `e2` are twice-exponents, coefficients are decimal-string
//! rationals (`"3"`, `"-7/2"`). Ordering is deterministic: `q` ascending,
//! then `p` ascending.

use crate::error::Error;
use crate::halfexp::HalfExp;
use crate::series::{QSeries, Window};
use crate::Rat;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SeriesJson {
    pub qorder: usize,
    pub pwindow: [i64; 2],
    pub coeffs: Vec<(usize, Vec<(i64, String)>)>,
}

/// Encode against an explicit window (the one the caller requested).
pub fn encode_qseries(s: &QSeries<Rat>, window: Window) -> SeriesJson {
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(d, c)| {
            let entries = c
                .iter()
                .filter(|(e, _)| window.contains(*e))
                .map(|(e, v)| (e.twice(), v.to_string()))
                .collect();
            (d, entries)
        })
        .collect();
    SeriesJson {
        qorder: s.order(),
        pwindow: [window.lo().twice(), window.hi().twice()],
        coeffs,
    }
}

pub fn decode_qseries(json: &SeriesJson) -> Result<QSeries<Rat>, Error> {
    let window = Window::new(
        HalfExp::from_twice(json.pwindow[0]),
        HalfExp::from_twice(json.pwindow[1]),
    )?;
    let mut entries = vec![crate::series::PSeries::zero(window); json.qorder + 1];
    for (d, terms) in &json.coeffs {
        if *d > json.qorder {
            return Err(Error::invalid(format!(
                "q-power {d} beyond declared order {}",
                json.qorder
            )));
        }
        let parsed = terms
            .iter()
            .map(|(e2, s)| {
                Rat::from_str(s)
                    .map(|c| (HalfExp::from_twice(*e2), c))
                    .map_err(|e| Error::invalid(format!("bad rational {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        entries[*d] = crate::series::PSeries::from_terms(parsed, window)?;
    }
    Ok(QSeries::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::products;

    #[test]
    fn round_trip_and_key_order() {
        let w = Window::ints(-2, 4);
        let th = products::theta_series::<Rat>(2, Window::ints(-3, 3)).unwrap();
        let enc = encode_qseries(&th, Window::ints(-3, 3));
        let txt = serde_json::to_string(&enc).unwrap();
        // field order is fixed by the struct
        assert!(txt.starts_with("{\"qorder\":"));
        let dec: SeriesJson = serde_json::from_str(&txt).unwrap();
        let back = decode_qseries(&dec).unwrap();
        assert_eq!(back, th);
        let _ = w;
    }
}
