//! Closed-form genus bounds, in exact rational arithmetic.

use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Girth threshold of the class 𝒞(m): 5 for two letters, 4 for three,
/// 3 from four letters on.
pub fn rho(m: u64) -> Result<u64> {
    match m {
        0 | 1 => Err(Error::Domain(format!("ρ(m) needs m ≥ 2, got {m}"))),
        2 => Ok(5),
        3 => Ok(4),
        _ => Ok(3),
    }
}

/// `(j − 2)m − j`, the sign of which decides whether the bound grows with n.
pub fn slope_numerator(m: u64, j: u64) -> i64 {
    (j as i64 - 2) * m as i64 - j as i64
}

/// `1 + ((j − 2)m − j)·n / (2j)`.
///
/// A genus bound only for automata on `m` letters with no simple cycle of
/// length below `j`; callers certify that through the girth.
pub fn genus_lower_bound(m: u64, j: u64, n: u64) -> Rational64 {
    assert!(j > 0, "girth threshold must be positive");
    Rational64::from_integer(1) + Rational64::new(slope_numerator(m, j) * n as i64, 2 * j as i64)
}

/// `1 + (m − 1)·n / 2`, valid for any automaton with `n` states on `m` letters.
pub fn genus_upper_bound(m: u64, n: u64) -> Rational64 {
    Rational64::from_integer(1) + Rational64::new((m as i64 - 1) * n as i64, 2)
}

/// `⌈(2k − 2)(2k − 3)/12⌉`.
pub fn hierarchy_genus(k: u64) -> Result<u64> {
    if k < 4 {
        return Err(Error::Domain(format!("hierarchy formula needs k ≥ 4, got {k}")));
    }
    Ok(((2 * k - 2) * (2 * k - 3)).div_ceil(12))
}

/// `⌈(v − 3)(v − 4)/12⌉`, the genus of the complete graph on `v` vertices.
pub fn complete_graph_genus(v: u64) -> Result<u64> {
    if v < 3 {
        return Err(Error::Domain(format!("formula needs v ≥ 3, got {v}")));
    }
    Ok(((v - 3) * v.saturating_sub(4)).div_ceil(12))
}

/// Sizes `n ≥ size_l` whose lower bound does not exceed `genus_cap`.
pub fn size_set_e(m: u64, j: u64, size_l: u64, genus_cap: u64) -> Result<Vec<u64>> {
    let s = slope_numerator(m, j);
    if s <= 0 || j == 0 {
        return Err(Error::Domain(format!(
            "E not finite under these parameters (m = {m}, j = {j})"
        )));
    }
    // 1 + s·n/(2j) ≤ cap  ⇔  s·n ≤ 2j(cap − 1)
    let Some(room) = (genus_cap as i64 - 1).checked_mul(2 * j as i64) else {
        return Err(Error::Domain("genus cap too large".into()));
    };
    if room < 0 {
        return Ok(Vec::new());
    }
    let max_n = (room / s) as u64;
    Ok((size_l.max(1)..=max_n).collect())
}

/// Largest `n` with `genus_lower_bound(m, j, n) ≤ g`, if the slope is positive.
pub fn max_size_for_genus(m: u64, j: u64, g: u64) -> Option<u64> {
    let s = slope_numerator(m, j);
    if s <= 0 || g == 0 {
        return None;
    }
    Some(((g as i64 - 1) * 2 * j as i64 / s) as u64)
}

pub fn ceil(r: Rational64) -> i64 {
    r.ceil().to_integer()
}

pub fn to_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Renders `5/2`, or `3` for integers.
pub fn fmt_rational(r: Rational64) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ser_rational<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(*r))
}

/// Both bounds for an automaton of `n` states on `m` letters with girth at
/// least `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub m: u64,
    pub j: u64,
    pub n: u64,
    #[serde(serialize_with = "ser_rational")]
    pub lower: Rational64,
    #[serde(serialize_with = "ser_rational")]
    pub upper: Rational64,
}

impl BoundReport {
    pub fn new(m: u64, j: u64, n: u64) -> Result<Self> {
        if m < 1 || j < 1 || n < 1 {
            return Err(Error::Domain("m, j and n must be positive".into()));
        }
        Ok(BoundReport {
            m,
            j,
            n,
            lower: genus_lower_bound(m, j, n),
            upper: genus_upper_bound(m, n),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn rho_table() {
        assert_eq!(rho(2).unwrap(), 5);
        assert_eq!(rho(3).unwrap(), 4);
        for m in 4..=10 {
            assert_eq!(rho(m).unwrap(), 3);
        }
        assert!(rho(1).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(genus_lower_bound(4, 3, 9), r(5, 2));
        assert_eq!(genus_lower_bound(2, 5, 30), r(4, 1));
        assert_eq!(genus_lower_bound(2, 5, 0), r(1, 1));
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(genus_upper_bound(3, 5), r(6, 1));
        assert_eq!(genus_upper_bound(1, 7), r(1, 1));
        assert_eq!(genus_upper_bound(2, 16), r(9, 1));
        assert_eq!(genus_upper_bound(4, 9), r(29, 2));
    }

    #[test]
    fn closed_formulas() {
        assert_eq!(hierarchy_genus(4).unwrap(), 3);
        assert_eq!(hierarchy_genus(5).unwrap(), 5);
        assert_eq!(hierarchy_genus(6).unwrap(), 8);
        assert!(hierarchy_genus(3).is_err());
        assert_eq!(complete_graph_genus(5).unwrap(), 1);
        assert_eq!(complete_graph_genus(4).unwrap(), 0);
        assert_eq!(complete_graph_genus(9).unwrap(), 3);
        assert_eq!(complete_graph_genus(3).unwrap(), 0);
        assert!(complete_graph_genus(2).is_err());
    }

    #[test]
    fn hierarchy_matches_complete_graph_and_bound() {
        for k in 4..=50 {
            let h = hierarchy_genus(k).unwrap();
            assert_eq!(h, complete_graph_genus(2 * k + 1).unwrap());
            assert_eq!(ceil(genus_lower_bound(k, 3, 2 * k + 1)), h as i64);
        }
    }

    #[test]
    fn size_sets() {
        assert_eq!(size_set_e(4, 3, 9, 3).unwrap(), vec![9, 10, 11, 12]);
        assert_eq!(size_set_e(2, 5, 30, 4).unwrap(), vec![30]);
        assert!(size_set_e(3, 4, 1, 1).unwrap().is_empty());
        assert!(size_set_e(2, 3, 1, 5).is_err());
    }

    #[test]
    fn report_prints_fractions() {
        let b = BoundReport::new(4, 3, 9).unwrap();
        assert_eq!(fmt_rational(b.lower), "5/2");
        assert_eq!(fmt_rational(b.upper), "29/2");
        let json = serde_json::to_value(&b).unwrap();
        assert_eq!(json["lower"], "5/2");
    }

    proptest! {
        #[test]
        fn class_bound_exceeds_one(m in 2u64..40, n in 1u64..500) {
            let j = rho(m).unwrap();
            prop_assert!(genus_lower_bound(m, j, n) > r(1, 1));
        }

        #[test]
        fn size_set_contains_size_when_feasible(m in 2u64..12, n in 1u64..60, extra in 0u64..5) {
            let j = rho(m).unwrap();
            let cap = ceil(genus_lower_bound(m, j, n)) as u64 + extra;
            let e = size_set_e(m, j, n, cap).unwrap();
            prop_assert!(e.contains(&n));
            for &x in &e {
                prop_assert!(genus_lower_bound(m, j, x) <= r(cap as i64, 1));
            }
            let past = e.last().unwrap() + 1;
            prop_assert!(genus_lower_bound(m, j, past) > r(cap as i64, 1));
        }

        #[test]
        fn lower_below_upper(m in 2u64..20, n in 1u64..200) {
            let j = rho(m).unwrap();
            prop_assert!(genus_lower_bound(m, j, n) <= genus_upper_bound(m, n));
        }
    }
}
