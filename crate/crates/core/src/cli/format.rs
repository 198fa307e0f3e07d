use num_bigint::BigInt;
use serde_json::Value;

use crate::exactnum::BigRat;

/// `v` with `digits` significant digits, positional when that stays short.
pub fn sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.prec$e}", prec = digits - 1)
    }
}

/// A JSON number carrying every digit of `n`.
pub fn big_json(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

pub fn rat_string(q: &BigRat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(3f64.sqrt() / 2.0, 12), "0.866025403784");
        assert_eq!(sig(1.125, 12), "1.12500000000");
        assert_eq!(sig(-2.0e-9, 3), "-2.00e-9");
        assert_eq!(sig(0.0, 12), "0");
    }

    #[test]
    fn big_numbers_stay_exact() {
        let n: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(serde_json::to_string(&big_json(&n)).unwrap(), n.to_string());
    }
}
