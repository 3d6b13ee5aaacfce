//! Serde adapters for big integers and rationals encoded as JSON strings.
//!
//! Integers may also be given as plain JSON numbers when they fit in `i64`;
//! output always uses strings.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::exact::{format_rational, parse_rational, Int, IntMatrix, Rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(i64),
    Str(String),
}

fn parse_int_repr<E: de::Error>(r: IntRepr) -> Result<Int, E> {
    match r {
        IntRepr::Num(n) => Ok(Int::from(n)),
        IntRepr::Str(s) => s.trim().parse::<Int>().map_err(|_| E::custom(format!("invalid integer {s:?}"))),
    }
}

fn parse_rat_repr<E: de::Error>(r: IntRepr) -> Result<Rational, E> {
    match r {
        IntRepr::Num(n) => Ok(Rational::from_integer(Int::from(n))),
        IntRepr::Str(s) => parse_rational(&s).ok_or_else(|| E::custom(format!("invalid rational {s:?}"))),
    }
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        parse_int_repr(IntRepr::deserialize(d)?)
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        parse_rat_repr(IntRepr::deserialize(d)?)
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(format_rational).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?.into_iter().map(parse_rat_repr).collect()
    }
}

pub mod int_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntMatrix, D::Error> {
        let rows = Vec::<Vec<IntRepr>>::deserialize(d)?;
        let parsed: Vec<Vec<Int>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(parse_int_repr).collect::<Result<Vec<_>, D::Error>>())
            .collect::<Result<_, _>>()?;
        if let Some(first) = parsed.first() {
            if parsed.iter().any(|r| r.len() != first.len()) {
                return Err(de::Error::custom("ragged matrix"));
            }
        }
        Ok(IntMatrix::from_rows(&parsed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Probe {
        #[serde(with = "rational_vec")]
        h: Vec<Rational>,
        #[serde(with = "int_matrix")]
        m: IntMatrix,
        #[serde(with = "int")]
        n: Int,
    }

    #[test]
    fn round_trip() {
        let p = Probe {
            h: vec![rat(1, 2), rat(-3, 4), rat(5, 1)],
            m: IntMatrix::from_i64(&[vec![1, 0], vec![0, -1]]),
            n: "123456789012345678901234567890".parse().unwrap(),
        };
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"1/2\"") && s.contains("\"-3/4\""));
        let back: Probe = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn accepts_plain_numbers() {
        let p: Probe = serde_json::from_str(r#"{"h":[1,"2/4"],"m":[[1,2],[3,4]],"n":7}"#).unwrap();
        assert_eq!(p.h, vec![rat(1, 1), rat(1, 2)]);
        assert_eq!(p.n, Int::from(7));
    }
}
