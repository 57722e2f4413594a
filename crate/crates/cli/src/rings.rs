//! `--ring` flags.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

/// One member of the ring portfolio, as named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingFlag {
    Q,
    Fp(u64),
    Z,
    /// `Z[1/n]`
    ZLoc(BigInt),
    Qz,
    /// `Q[z][1/f]`, `f` as text
    QzLoc(String),
    QzFrac,
    /// `Q[t]`, the normalization of the cusp
    Qt,
    Qzw,
    QzwLoc(String),
    QzwFrac,
    Zr5,
    Cusp,
}

pub const RING_HELP: &str =
    "Q, Fp:<p>, Z, Z_loc:<n>, Qz, Qz_loc:<poly>, Qz_frac, Qt (alias cusp_norm), \
Qzw, Qzw_loc:<poly>, Qzw_frac, Zr5, cusp";

impl FromStr for RingFlag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.trim())),
            None => (s, None),
        };
        let need = |what: &str| {
            arg.filter(|a| !a.is_empty())
                .ok_or(format!("{head} needs ':{what}'"))
        };
        let flag = match head {
            "Q" => RingFlag::Q,
            "Fp" => {
                let p = need("<p>")?;
                RingFlag::Fp(p.parse().map_err(|_| format!("bad prime '{p}'"))?)
            }
            "Z" => RingFlag::Z,
            "Z_loc" => {
                let n = need("<n>")?;
                RingFlag::ZLoc(n.parse().map_err(|_| format!("bad integer '{n}'"))?)
            }
            "Qz" => RingFlag::Qz,
            "Qz_loc" => RingFlag::QzLoc(need("<poly>")?.to_string()),
            "Qz_frac" => RingFlag::QzFrac,
            "Qt" | "cusp_norm" => RingFlag::Qt,
            "Qzw" => RingFlag::Qzw,
            "Qzw_loc" => RingFlag::QzwLoc(need("<poly>")?.to_string()),
            "Qzw_frac" => RingFlag::QzwFrac,
            "Zr5" => RingFlag::Zr5,
            "cusp" => RingFlag::Cusp,
            _ => return Err(format!("unknown ring '{s}' (expected one of {RING_HELP})")),
        };
        let takes_arg = matches!(
            flag,
            RingFlag::Fp(_) | RingFlag::ZLoc(_) | RingFlag::QzLoc(_) | RingFlag::QzwLoc(_)
        );
        if arg.is_some() && !takes_arg {
            return Err(format!("ring {head} takes no ':' argument"));
        }
        Ok(flag)
    }
}

impl fmt::Display for RingFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingFlag::Q => write!(f, "Q"),
            RingFlag::Fp(p) => write!(f, "Fp:{p}"),
            RingFlag::Z => write!(f, "Z"),
            RingFlag::ZLoc(n) => write!(f, "Z_loc:{n}"),
            RingFlag::Qz => write!(f, "Qz"),
            RingFlag::QzLoc(p) => write!(f, "Qz_loc:{p}"),
            RingFlag::QzFrac => write!(f, "Qz_frac"),
            RingFlag::Qt => write!(f, "Qt"),
            RingFlag::Qzw => write!(f, "Qzw"),
            RingFlag::QzwLoc(p) => write!(f, "Qzw_loc:{p}"),
            RingFlag::QzwFrac => write!(f, "Qzw_frac"),
            RingFlag::Zr5 => write!(f, "Zr5"),
            RingFlag::Cusp => write!(f, "cusp"),
        }
    }
}

/// Bind `$dom` to the ring named by `$flag` and evaluate `$body`. Building a
/// ring can fail (bad modulus, bad multiplier); `$err` maps the message.
macro_rules! with_ring {
    ($flag:expr, $err:expr, |$dom:ident| $body:expr) => {{
        use planetame::coeffring as cr;
        let qz = || cr::QPolyRing::new("z");
        let qzw = || cr::QBivarRing::new("z", "w");
        match $flag {
            $crate::rings::RingFlag::Q => {
                let $dom = cr::Rationals;
                $body
            }
            $crate::rings::RingFlag::Fp(p) => {
                let $dom = cr::PrimeField::new(*p).map_err(|e| $err(e.to_string()))?;
                $body
            }
            $crate::rings::RingFlag::Z => {
                let $dom = cr::Integers;
                $body
            }
            $crate::rings::RingFlag::ZLoc(n) => {
                let $dom = cr::Localized::new(cr::Integers, n).map_err(|e| $err(e.to_string()))?;
                $body
            }
            $crate::rings::RingFlag::Qz => {
                let $dom = qz();
                $body
            }
            $crate::rings::RingFlag::QzLoc(text) => {
                let f = $crate::grammar::parse_coeff(&qz(), text)
                    .map_err(|e| $err(format!("multiplier: {}", e.msg)))?;
                let $dom = cr::Localized::new(qz(), &f).map_err(|e| $err(e.to_string()))?;
                $body
            }
            $crate::rings::RingFlag::QzFrac => {
                let $dom = planetame::Domain::fraction_field(&qz());
                $body
            }
            $crate::rings::RingFlag::Qt => {
                let $dom = cr::QPolyRing::new("t");
                $body
            }
            $crate::rings::RingFlag::Qzw => {
                let $dom = qzw();
                $body
            }
            $crate::rings::RingFlag::QzwLoc(text) => {
                let f = $crate::grammar::parse_coeff(&qzw(), text)
                    .map_err(|e| $err(format!("multiplier: {}", e.msg)))?;
                let $dom = cr::Localized::new(qzw(), &f).map_err(|e| $err(e.to_string()))?;
                $body
            }
            $crate::rings::RingFlag::QzwFrac => {
                let $dom = planetame::Domain::fraction_field(&qzw());
                $body
            }
            $crate::rings::RingFlag::Zr5 => {
                let $dom = cr::QuadImag5;
                $body
            }
            $crate::rings::RingFlag::Cusp => {
                let $dom = cr::CuspidalCubic;
                $body
            }
        }
    }};
}

/// As [`with_ring`] for the principal ideal domains with prime
/// factorization; `$other` is evaluated for every other ring.
macro_rules! with_pid {
    ($flag:expr, $err:expr, |$dom:ident| $body:expr, $other:expr) => {{
        use planetame::coeffring as cr;
        match $flag {
            $crate::rings::RingFlag::Z => {
                let $dom = cr::Integers;
                $body
            }
            $crate::rings::RingFlag::ZLoc(n) => {
                let $dom = cr::Localized::new(cr::Integers, n).map_err(|e| $err(e.to_string()))?;
                $body
            }
            $crate::rings::RingFlag::Qz => {
                let $dom = cr::QPolyRing::new("z");
                $body
            }
            $crate::rings::RingFlag::Qt => {
                let $dom = cr::QPolyRing::new("t");
                $body
            }
            $crate::rings::RingFlag::QzLoc(text) => {
                let base = cr::QPolyRing::new("z");
                let f = $crate::grammar::parse_coeff(&base, text)
                    .map_err(|e| $err(format!("multiplier: {}", e.msg)))?;
                let $dom = cr::Localized::new(base, &f).map_err(|e| $err(e.to_string()))?;
                $body
            }
            _ => $other,
        }
    }};
}

pub(crate) use {with_pid, with_ring};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_round_trip() {
        for s in [
            "Q",
            "Fp:101",
            "Z",
            "Z_loc:6",
            "Qz",
            "Qz_loc:z^2 + 1",
            "Qz_frac",
            "Qt",
            "Qzw",
            "Qzw_loc:z*w",
            "Qzw_frac",
            "Zr5",
            "cusp",
        ] {
            let f: RingFlag = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert_eq!("cusp_norm".parse::<RingFlag>().unwrap(), RingFlag::Qt);
        assert!("Fp".parse::<RingFlag>().is_err());
        assert!("Z:3".parse::<RingFlag>().is_err());
        assert!("R".parse::<RingFlag>().is_err());
    }
}
