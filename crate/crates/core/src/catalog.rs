//! Floer spectra of the 3-manifolds with closed-form answers: `S³`, the
//! Poincaré sphere, the lens spaces `L(n, 1)` and the Brieskorn spheres
//! `Σ(2, 3, r)` with `r ≡ ±1 mod 6`.
//!
//! Every presentation here is built with [`build_from_morse`] from critical
//! point data. The Brieskorn data is given for `-Σ(2, 3, r)`, and the other
//! orientation is its dual.

use std::fmt;
use std::str::FromStr;

use crate::cells::Rational;
use crate::error::{Error, Result};
use crate::morse::{build_from_morse, CriticalPoint, MorseData};
use crate::spectrum::SpectrumPresentation;

/// The lens space `L(n, 1)` with the spin^c structure `c_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LensParams {
    n: i64,
    k: i64,
}

impl LensParams {
    pub fn new(n: i64, k: i64) -> Result<Self> {
        if n < 1 || k < 0 || k >= n {
            return Err(Error::InvalidLensParameter { n, k });
        }
        Ok(LensParams { n, k })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn k(&self) -> i64 {
        self.k
    }
}

/// `n_k = ((n - 2k)² - n) / 8n`.
pub fn n_invariant_lens(p: LensParams) -> Rational {
    let LensParams { n, k } = p;
    Rational::new((n - 2 * k).pow(2) - n, 8 * n)
}

/// `S^{-n_k C}`, from the single reducible of index `-2 n_k`.
pub fn swf_lens(p: LensParams) -> Result<SpectrumPresentation> {
    let index = n_invariant_lens(p) * -2;
    build_from_morse(&MorseData::new(vec![CriticalPoint::reducible(
        "theta", index,
    )]))
}

pub fn swf_s3() -> SpectrumPresentation {
    swf_lens(LensParams { n: 1, k: 0 }).expect("S^3 data is valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `Σ(2, 3, r)`, oriented as the link of the singularity.
    Positive,
    /// `-Σ(2, 3, r)`.
    Negative,
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pos" | "positive" | "+" => Ok(Orientation::Positive),
            "neg" | "negative" | "-" => Ok(Orientation::Negative),
            other => Err(format!(
                "unknown orientation {other:?} (expected pos or neg)"
            )),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Positive => "pos",
            Orientation::Negative => "neg",
        })
    }
}

/// The four residue classes of `r` mod 12, with their `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BrieskornFamily {
    /// `r = 5`, the Poincaré sphere.
    Poincare,
    MinusOne(i64),
    MinusFive(i64),
    PlusOne(i64),
    PlusFive(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BrieskornParams {
    r: i64,
    orientation: Orientation,
}

impl BrieskornParams {
    pub fn new(r: i64, orientation: Orientation) -> Result<Self> {
        brieskorn_family(r)?;
        Ok(BrieskornParams { r, orientation })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
}

pub fn brieskorn_family(r: i64) -> Result<BrieskornFamily> {
    if r == 5 {
        return Ok(BrieskornFamily::Poincare);
    }
    if r < 5 {
        return Err(Error::InvalidBrieskornParameter(r));
    }
    match r.rem_euclid(12) {
        11 => Ok(BrieskornFamily::MinusOne((r + 1) / 12)),
        7 => Ok(BrieskornFamily::MinusFive((r + 5) / 12)),
        1 => Ok(BrieskornFamily::PlusOne((r - 1) / 12)),
        5 => Ok(BrieskornFamily::PlusFive((r - 5) / 12)),
        _ => Err(Error::InvalidBrieskornParameter(r)),
    }
}

/// Critical points and flow counts of the Seiberg-Witten flow on `-Σ(2, 3, r)`.
///
/// For `r = 12j ± 1` with `j > 1` the irreducibles are separated by levels of
/// the Chern-Simons-Dirac functional, which exceeds all of them on the
/// reducible.
pub fn brieskorn_morse_data(r: i64) -> Result<MorseData> {
    let irreducibles = |count: i64, index: i64, spread: bool| -> Vec<CriticalPoint> {
        (1..=count)
            .map(|i| {
                let level = if spread { i - 1 } else { 0 };
                CriticalPoint::irreducible(format!("x{i}"), index).at_level(level)
            })
            .collect()
    };
    let r_int = Rational::from_integer;
    let data = match brieskorn_family(r)? {
        BrieskornFamily::Poincare => {
            MorseData::new(vec![CriticalPoint::reducible("theta", r_int(-2))])
        }
        BrieskornFamily::MinusOne(j) | BrieskornFamily::MinusFive(j) => {
            let (red, irr) = if matches!(brieskorn_family(r)?, BrieskornFamily::MinusOne(_)) {
                (0, -2)
            } else {
                (2, 0)
            };
            let spread = j > 1;
            let mut points = vec![CriticalPoint::reducible("theta", r_int(red))
                .at_level(if spread { 2 * j } else { 1 })];
            points.extend(irreducibles(2 * j, irr, spread));
            let mut data = MorseData::new(points);
            for i in 1..=2 * j {
                data = data.with_count("theta", &format!("x{i}"), 1);
            }
            data
        }
        BrieskornFamily::PlusOne(j) | BrieskornFamily::PlusFive(j) => {
            let index = if matches!(brieskorn_family(r)?, BrieskornFamily::PlusOne(_)) {
                0
            } else {
                -2
            };
            let mut points = vec![CriticalPoint::reducible("theta", r_int(index)).at_level(1)];
            points.extend(irreducibles(2 * j, index, false));
            MorseData::new(points)
        }
    };
    Ok(data)
}

pub fn swf_brieskorn(p: BrieskornParams) -> Result<SpectrumPresentation> {
    let negative = build_from_morse(&brieskorn_morse_data(p.r)?)?;
    match p.orientation {
        Orientation::Negative => Ok(negative),
        Orientation::Positive => negative.dualize(),
    }
}

/// All Brieskorn parameters `5 <= r <= max` in the supported families.
pub fn supported_brieskorn(max: i64) -> Vec<i64> {
    (5..=max).filter(|&r| brieskorn_family(r).is_ok()).collect()
}
