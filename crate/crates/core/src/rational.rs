//! Exact rationals and their `"p/q"` string interchange form.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

/// Arbitrary precision rational used everywhere in the engine.
pub type Q = num_rational::BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn half() -> Q {
    q(1, 2)
}

pub fn midpoint(a: &Q, b: &Q) -> Q {
    let num = a.numer() * b.denom() + b.numer() * a.denom();
    Q::new(num, (a.denom() * b.denom()) << 1)
}

/// Equality of normalized rationals by their parts.
pub fn eq(a: &Q, b: &Q) -> bool {
    a.numer() == b.numer() && a.denom() == b.denom()
}

/// `2^-n` as an exact rational.
pub fn pow2_neg(n: u64) -> Q {
    Q::new_raw(BigInt::one(), BigInt::one() << n as usize)
}

/// Order by cross multiplication. `Ratio`'s own `Ord` runs a continued
/// fraction expansion, which is much slower on long dyadic denominators.
pub fn cmp(a: &Q, b: &Q) -> Ordering {
    if a.denom() == b.denom() {
        return a.numer().cmp(b.numer());
    }
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

/// `limit + (start - limit)·2^-n`, normalized once.
pub fn geometric_term(start: &Q, limit: &Q, n: u64) -> Q {
    let (a, b) = (limit.numer(), limit.denom());
    let (c, d) = (start.numer(), start.denom());
    // limit + (c/d - a/b)/2^n = (a·d·2^n + c·b - a·d) / (b·d·2^n)
    let ad = a * d;
    let num = (&ad << n as usize) + c * b - ad;
    Q::new(num, (b * d) << n as usize)
}

pub fn in_unit(v: &Q) -> bool {
    !v.is_negative() && *v <= Q::one()
}

pub fn is_dyadic(v: &Q) -> bool {
    let d = v.denom();
    d.is_positive() && (d & (d - BigInt::one())).is_zero()
}

pub fn parse(s: &str) -> Result<Q, String> {
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad rational {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad rational {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Q::new(n, d))
}

pub fn format(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Smallest `l` and the dyadic `i / 2^l` strictly between `lo < hi`, with
/// `i` the least integer above `lo * 2^l`.
pub fn dyadic_between(lo: &Q, hi: &Q) -> (u64, BigInt) {
    assert!(lo < hi, "empty interval");
    let mut level = 0u64;
    loop {
        let scale = BigInt::one() << level as usize;
        let scaled = lo * Q::from_integer(scale.clone());
        let i = scaled.floor().to_integer() + BigInt::one();
        if Q::new(i.clone(), scale) < *hi {
            return (level, i);
        }
        level += 1;
    }
}

pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_q_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&format(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_q_opt_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Q>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::serde_q_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Q>>, D::Error> {
        let raw = Option::<Vec<String>>::deserialize(d)?;
        raw.map(|r| {
            r.iter()
                .map(|s| parse(s).map_err(serde::de::Error::custom))
                .collect()
        })
        .transpose()
    }
}
