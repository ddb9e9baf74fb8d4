//! Stable homotopy groups of spheres in stems up to 3, with composition products.
//!
//! | k | π_k(S⁰) | generator |
//! |---|---------|-----------|
//! | <0 | 0      |           |
//! | 0 | Z       | ι         |
//! | 1 | Z/2     | η         |
//! | 2 | Z/2     | η²        |
//! | 3 | Z/24    | ν         |
//!
//! Composition: ι is the unit, η·η = η², and η·η² = η³ = 12ν.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::zlinalg::{FGAbelianGroup, GroupElement};

pub const MAX_STEM: i64 = 3;

/// Order of π_k(S⁰): 0 for Z, 1 for the trivial group.
pub fn stem_order(k: i64) -> Result<i64> {
    match k {
        k if k < 0 => Ok(1),
        0 => Ok(0),
        1 | 2 => Ok(2),
        3 => Ok(24),
        k => Err(Error::UnsupportedStem(k)),
    }
}

fn generator_name(k: i64) -> &'static str {
    match k {
        0 => "iota",
        1 => "eta",
        2 => "eta^2",
        3 => "nu",
        _ => "",
    }
}

pub fn stable_stem(k: i64) -> Result<FGAbelianGroup> {
    let g = FGAbelianGroup::cyclic(stem_order(k)?);
    if g.is_trivial() {
        return Ok(g);
    }
    g.with_labels(vec![generator_name(k).to_string()])
}

/// `coeff` times the generator of π_stem(S⁰).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StemElement {
    stem: i64,
    coeff: i64,
}

impl StemElement {
    pub fn new(stem: i64, coeff: i64) -> Result<Self> {
        let order = stem_order(stem)?;
        let coeff = if order == 0 {
            coeff
        } else {
            coeff.rem_euclid(order)
        };
        Ok(StemElement { stem, coeff })
    }

    pub fn zero(stem: i64) -> Result<Self> {
        Self::new(stem, 0)
    }

    pub fn generator(stem: i64) -> Result<Self> {
        Self::new(stem, 1)
    }

    pub fn stem(&self) -> i64 {
        self.stem
    }

    /// Coefficient of the stem generator (reduced for torsion stems).
    pub fn coeff(&self) -> i64 {
        self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff == 0
    }

    pub fn add(&self, other: &StemElement) -> Result<StemElement> {
        if self.stem != other.stem {
            return Err(Error::DegreeMismatch(format!(
                "cannot add elements of stems {} and {}",
                self.stem, other.stem
            )));
        }
        StemElement::new(self.stem, self.coeff + other.coeff)
    }

    pub fn scale(&self, c: i64) -> StemElement {
        StemElement::new(self.stem, self.coeff * c).expect("stem already validated")
    }

    pub fn to_group_element(&self) -> GroupElement {
        let g = stable_stem(self.stem).expect("stem already validated");
        if g.is_trivial() {
            g.zero()
        } else {
            g.element(vec![BigInt::from(self.coeff)])
                .expect("cyclic group")
        }
    }
}

impl fmt::Display for StemElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.stem {
            k if k < 0 => write!(f, "0"),
            k => write!(f, "{}{}", self.coeff, generator_name(k)),
        }
    }
}

/// Coefficient of (gen_a · gen_b) in terms of gen_{a+b}.
fn generator_product(a: i64, b: i64) -> i64 {
    match (a.min(b), a.max(b)) {
        (0, _) => 1,
        (1, 1) => 1,
        (1, 2) => 12,
        _ => 0,
    }
}

/// Composition product π_a × π_b → π_{a+b}.
///
/// Elements of negative stems are zero, so their products vanish; the result
/// stem must still be within range.
pub fn stem_product(x: &StemElement, y: &StemElement) -> Result<StemElement> {
    let k = x.stem + y.stem;
    stem_order(k)?;
    if x.stem < 0 || y.stem < 0 {
        return StemElement::zero(k);
    }
    let c = generator_product(x.stem, y.stem) * x.coeff * y.coeff;
    StemElement::new(k, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stem_table() {
        assert_eq!(stable_stem(3).unwrap().to_string(), "Z/24");
        assert!(stable_stem(-2).unwrap().is_trivial());
        assert_eq!(
            stable_stem(0).unwrap(),
            FGAbelianGroup::free(1)
                .with_labels(vec!["iota".into()])
                .unwrap()
        );
        assert_eq!(stable_stem(1).unwrap().to_string(), "Z/2");
        assert_eq!(stable_stem(2).unwrap().to_string(), "Z/2");
        assert_eq!(stable_stem(4), Err(Error::UnsupportedStem(4)));
    }

    #[test]
    fn products() {
        let iota = StemElement::generator(0).unwrap();
        let eta = StemElement::generator(1).unwrap();
        let eta2 = StemElement::generator(2).unwrap();
        let nu = StemElement::generator(3).unwrap();
        assert_eq!(stem_product(&iota, &nu).unwrap(), nu);
        assert_eq!(stem_product(&eta, &eta).unwrap(), eta2);
        assert_eq!(
            stem_product(&eta, &eta2).unwrap(),
            StemElement::new(3, 12).unwrap()
        );
        assert_eq!(
            stem_product(&eta2, &eta).unwrap(),
            StemElement::new(3, 12).unwrap()
        );
        assert_eq!(stem_product(&eta, &nu), Err(Error::UnsupportedStem(4)));
        let neg = StemElement::zero(-1).unwrap();
        assert!(stem_product(&neg, &nu).unwrap().is_zero());
    }

    #[test]
    fn bilinear_and_commutative() {
        for a in 0..=3 {
            for b in 0..=(3 - a) {
                let oa = stem_order(a).unwrap().max(3);
                let ob = stem_order(b).unwrap().max(3);
                for x in 0..oa {
                    for y in 0..ob {
                        let ex = StemElement::new(a, x).unwrap();
                        let ey = StemElement::new(b, y).unwrap();
                        let p = stem_product(&ex, &ey).unwrap();
                        let q = stem_product(&ey, &ex).unwrap();
                        assert_eq!(p, q);
                        let g = stem_product(
                            &StemElement::generator(a).unwrap(),
                            &StemElement::generator(b).unwrap(),
                        )
                        .unwrap();
                        assert_eq!(p, g.scale(x * y));
                    }
                }
            }
        }
    }
}
