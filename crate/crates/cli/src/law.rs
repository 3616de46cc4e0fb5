//! Parser for textual law expressions.
//!
//! ```text
//! free-poisson:t=<rat> | dirac:c=<rat> | moments:<rat>,<rat>,...
//! y-limit:alpha=<rat>  | s-limit:alpha=<rat>
//! ```
//! where `<rat>` is `int` or `int/int`.

use std::fmt;
use std::str::FromStr;

use freeprob::limits::LawSpec;
use freeprob::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

fn is_int(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `int` or `int/int`.
pub fn parse_rat(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let den_ok = den.map_or(true, |d| !d.starts_with('-') && is_int(d));
    if !is_int(num) || !den_ok {
        return err(format!("'{s}' is not a rational (expected int or int/int)"));
    }
    if den.is_some_and(|d| d.bytes().all(|b| b == b'0')) {
        return err(format!("'{s}' has a zero denominator"));
    }
    s.parse::<Rational>().or_else(|_| err(format!("'{s}' is not a rational")))
}

fn positive(name: &str, v: Rational, constraint: &str) -> Result<Rational, ParseError> {
    if v.is_positive() {
        Ok(v)
    } else {
        err(format!("invalid parameter {name} = {v}: constraint {constraint} violated"))
    }
}

fn keyed(kind: &str, body: &str, key: &str) -> Result<Rational, ParseError> {
    let Some((k, v)) = body.split_once('=') else {
        return err(format!("{kind}: expected '{key}=<rat>', got '{body}'"));
    };
    if k.trim() != key {
        return err(format!("{kind}: unknown parameter '{}', expected '{key}'", k.trim()));
    }
    let v = parse_rat(v)?;
    positive(key, v, &format!("{key} > 0"))
}

/// A parsed law expression; printing gives back the canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct LawExpr(pub LawSpec);

impl FromStr for LawExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let Some((kind, body)) = s.split_once(':') else {
            return err(format!("'{s}' has no ':'; expected e.g. free-poisson:t=1"));
        };
        let spec = match kind.trim() {
            "free-poisson" => LawSpec::FreePoisson { t: keyed(kind, body, "t")? },
            "dirac" => LawSpec::Dirac { c: keyed(kind, body, "c")? },
            "y-limit" => LawSpec::YLimit { alpha: keyed(kind, body, "alpha")? },
            "s-limit" => LawSpec::SLimit { alpha: keyed(kind, body, "alpha")? },
            "moments" => {
                let list = body.split(',').map(parse_rat).collect::<Result<Vec<_>, _>>()?;
                if list.is_empty() {
                    return err("moments: need at least m1");
                }
                positive("m1", list[0].clone(), "m1 > 0")?;
                LawSpec::Moments(list)
            }
            other => {
                return err(format!(
                    "unknown law '{other}'; expected free-poisson, dirac, moments, y-limit or s-limit"
                ))
            }
        };
        Ok(LawExpr(spec))
    }
}

impl fmt::Display for LawExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat_text() -> impl Strategy<Value = String> {
        (1i64..1000, prop::option::of(1i64..50)).prop_map(|(n, d)| match d {
            Some(d) => format!("{n}/{d}"),
            None => n.to_string(),
        })
    }

    proptest! {
        #[test]
        fn arbitrary_input_never_panics(s in "\\PC*") {
            let _ = s.parse::<LawExpr>();
        }

        #[test]
        fn near_miss_input_never_panics(s in "(dirac|moments|free-poisson|y-limit):[-0-9/,=a-z]{0,12}") {
            let _ = s.parse::<LawExpr>();
        }

        #[test]
        fn generated_laws_round_trip(kind in 0usize..5, r in rat_text(), list in prop::collection::vec(rat_text(), 1..6)) {
            let text = match kind {
                0 => format!("free-poisson:t={r}"),
                1 => format!("dirac:c={r}"),
                2 => format!("y-limit:alpha={r}"),
                3 => format!("s-limit:alpha={r}"),
                _ => format!("moments:{}", list.join(",")),
            };
            let law: LawExpr = text.parse().unwrap();
            let again: LawExpr = law.to_string().parse().unwrap();
            prop_assert_eq!(again.to_string(), law.to_string());
            prop_assert_eq!(again, law);
        }
    }

    #[test]
    fn round_trips() {
        for s in ["free-poisson:t=1/2", "dirac:c=3", "moments:1,2,6,24", "y-limit:alpha=3/2", "s-limit:alpha=1", "moments:1/3,-1/9"] {
            let law: LawExpr = s.parse().unwrap();
            assert_eq!(law.to_string(), s);
            assert_eq!(law.to_string().parse::<LawExpr>().unwrap(), law);
        }
        let law: LawExpr = "dirac:c=4/2".parse().unwrap();
        assert_eq!(law.to_string(), "dirac:c=2");
    }

    #[test]
    fn diagnostics_name_the_constraint() {
        let e = "free-poisson:t=0".parse::<LawExpr>().unwrap_err();
        assert!(e.0.contains("t > 0"), "{e}");
        let e = "dirac:c=-1".parse::<LawExpr>().unwrap_err();
        assert!(e.0.contains("c > 0"), "{e}");
        let e = "moments:0,1".parse::<LawExpr>().unwrap_err();
        assert!(e.0.contains("m1 > 0"), "{e}");
        for bad in ["", "poisson:t=1", "dirac:t=1", "dirac:c=1/0", "dirac:c=1.5", "moments:", "dirac:c=1/-2", "y-limit"] {
            assert!(bad.parse::<LawExpr>().is_err(), "{bad}");
        }
    }
}
