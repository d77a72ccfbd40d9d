//! Text encodings for strata and weights.
//!
//! A stratum is a comma separated list of `cycle.pos` tokens; the empty string
//! is `∅` and `all` is the whole embedding set. A weight is a comma separated
//! list of integers or fractions `a/b`, in `(cycle, pos)` order. Parse errors
//! carry the character offset of the offending token.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cone::QVector;
use crate::error::{Error, Result};
use crate::splitting::{EmbeddingId, SplittingConfig, Stratum};

/// Splits on commas, yielding `(offset, trimmed token)`.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    s.split(',').map(move |raw| {
        let lead = raw.len() - raw.trim_start().len();
        let at = offset + lead;
        offset += raw.len() + 1;
        (at, raw.trim())
    })
}

pub fn parse_stratum(config: &SplittingConfig, s: &str) -> Result<Stratum> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(Stratum::empty(config));
    }
    if trimmed == "all" {
        return Ok(Stratum::all(config));
    }
    let err = |position: usize, token: &str, reason: String| Error::StratumEncoding {
        position,
        token: token.to_string(),
        reason,
    };
    let mut seen = BTreeSet::new();
    for (at, tok) in tokens(s) {
        let Some((c, i)) = tok.split_once('.') else {
            return Err(err(at, tok, "expected cycle.pos".into()));
        };
        let cycle: usize = c
            .parse()
            .map_err(|_| err(at, tok, format!("cycle index '{c}' is not a nonnegative integer")))?;
        let pos: usize = i
            .parse()
            .map_err(|_| err(at, tok, format!("position '{i}' is not a nonnegative integer")))?;
        let b = EmbeddingId::new(cycle, pos);
        if cycle >= config.num_cycles() {
            return Err(err(
                at,
                tok,
                format!("cycle {cycle} out of range (there are {})", config.num_cycles()),
            ));
        }
        if pos >= config.cycle_len(cycle) {
            return Err(err(
                at,
                tok,
                format!(
                    "position {pos} out of range for cycle of length {}",
                    config.cycle_len(cycle)
                ),
            ));
        }
        if !seen.insert(b) {
            return Err(err(at, tok, "duplicate embedding".into()));
        }
    }
    Stratum::new(config, seen)
}

pub fn format_stratum(t: &Stratum) -> String {
    t.to_string()
}

/// Parses a weight of dimension `dim`.
pub fn parse_weight(s: &str, dim: usize) -> Result<QVector> {
    let err = |position: usize, token: &str, reason: &str| Error::WeightEncoding {
        position,
        token: token.to_string(),
        reason: reason.to_string(),
    };
    if s.trim().is_empty() {
        if dim == 0 {
            return Ok(QVector::zeros(0));
        }
        return Err(err(0, "", "empty weight"));
    }
    let mut coords = Vec::new();
    for (at, tok) in tokens(s) {
        coords.push(parse_rational(tok).ok_or_else(|| err(at, tok, "expected an integer or a/b"))?);
    }
    let v = QVector::new(coords);
    v.check_dim(dim)?;
    Ok(v)
}

fn parse_rational(tok: &str) -> Option<BigRational> {
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => tok.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn format_weight(v: &QVector) -> String {
    v.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SplittingConfig {
        SplittingConfig::new(2, vec![3, 2]).unwrap()
    }

    #[test]
    fn strata_round_trip() {
        let c = cfg();
        for s in ["", "0.1", "0.0,0.2,1.1"] {
            assert_eq!(format_stratum(&parse_stratum(&c, s).unwrap()), s);
        }
        assert_eq!(parse_stratum(&c, "all").unwrap().len(), 5);
        assert_eq!(parse_stratum(&c, " 1.0 , 0.2").unwrap().to_string(), "0.2,1.0");
    }

    #[test]
    fn stratum_errors_point_at_token() {
        let c = cfg();
        let e = parse_stratum(&c, "0.1,0.5").unwrap_err();
        assert!(matches!(e, Error::StratumEncoding { position: 4, ref token, .. } if token == "0.5"));
        let e = parse_stratum(&c, "0.1,x").unwrap_err();
        assert!(matches!(e, Error::StratumEncoding { position: 4, .. }));
        let e = parse_stratum(&c, "2.0").unwrap_err();
        assert!(matches!(e, Error::StratumEncoding { position: 0, .. }));
        let e = parse_stratum(&c, "0.1,0.1").unwrap_err();
        assert!(matches!(e, Error::StratumEncoding { position: 4, .. }));
        assert!(parse_stratum(&c, "0.1,").is_err());
    }

    #[test]
    fn weights() {
        let v = parse_weight("-1, 0,3/6", 3).unwrap();
        assert_eq!(v[2], BigRational::new(1.into(), 2.into()));
        assert_eq!(format_weight(&v), "-1,0,1/2");
        assert_eq!(
            parse_weight("1,2", 3),
            Err(Error::DimMismatch { expected: 3, found: 2 })
        );
        assert!(matches!(
            parse_weight("1,a,2", 3),
            Err(Error::WeightEncoding { position: 2, .. })
        ));
        assert!(parse_weight("1/0", 1).is_err());
    }
}
