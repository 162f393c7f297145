//! Exact rational scalars for the PL models.

use alloc::string::String;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rat = Ratio<i128>;

pub fn rat(numer: i128, denom: i128) -> Rat {
    Ratio::new(numer, denom)
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Reduce to the half-open unit interval `[0, 1)`.
pub fn mod_one(x: Rat) -> Rat {
    x - x.floor()
}

/// Nearest integer; `None` on an exact half tie.
pub fn round_nearest(x: Rat) -> Option<i128> {
    let fl = x.floor();
    let frac = x - fl;
    let half = rat(1, 2);
    if frac < half {
        Some(fl.to_integer())
    } else if frac > half {
        Some(fl.to_integer() + 1)
    } else {
        None
    }
}

/// Circular distance on the unit circle of rational turns.
pub fn circle_distance(a: Rat, b: Rat) -> Rat {
    let d = mod_one(a - b);
    let alt = one() - d;
    if d <= alt {
        d
    } else {
        alt
    }
}

/// Parse "p/q" or "p" with an optional sign.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i128 = numer
        .parse()
        .map_err(|_| alloc::format!("bad numerator in {s:?}"))?;
    let d: i128 = denom
        .parse()
        .map_err(|_| alloc::format!("bad denominator in {s:?}"))?;
    if d == 0 {
        return Err(alloc::format!("zero denominator in {s:?}"));
    }
    Ok(rat(n, d))
}

pub fn is_positive(x: &Rat) -> bool {
    x.is_positive()
}
