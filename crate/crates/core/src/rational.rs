//! Exact rationals for bound certificates.

use num_rational::Ratio;
use num_traits::ToPrimitive;

pub type Rational = Ratio<i64>;

pub fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(num as i64, den as i64)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `"7"` for integers, `"8/3"` otherwise.
pub fn display(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter rendering a rational as `{"num": .., "den": ..}`.
pub mod num_den {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct NumDen {
        num: i64,
        den: i64,
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        NumDen {
            num: *r.numer(),
            den: *r.denom(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let nd = NumDen::deserialize(d)?;
        if nd.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(nd.num, nd.den))
    }
}
