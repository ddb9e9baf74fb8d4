//! Topological applications: the exotic nucleus obstruction in `K3 # K3 # K3`
//! and the adjunction constraints from embedded spheres.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::catalog::{n_invariant_lens, swf_brieskorn, BrieskornParams, LensParams, Orientation};
use crate::cells::{d2_admissible, trivial_mapping_group_is_torsion, D2Verdict, Rational};
use crate::error::{Error, Result};
use crate::homotopy::{forgetful_on_classes, homotopy_group, HomotopyGroup};
use crate::pairing::{duality_pairing, RelativeInvariantClass};
use crate::stems::StemElement;
use crate::zlinalg::GroupElement;

/// Finitely supported integer Laurent polynomial in `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exponent: i64, coeff: impl Into<BigInt>) -> Self {
        Self::from_terms([(exponent, coeff.into())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: &BigInt) {
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &other.coeffs {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dmin, dmax) = (divisor.min_exponent()?, divisor.max_exponent()?);
        let lead = divisor.coeffs[&dmax].clone();
        let floor = self.min_exponent().map_or(0, |m| m - dmin);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(top) = rem.max_exponent() {
            let e = top - dmax;
            if e < floor {
                return None;
            }
            let (c, r) = rem.coeffs[&top].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (&d, x) in &divisor.coeffs {
                rem.add_term(e + d, &(-&c * x));
            }
            quot.add_term(e, &c);
        }
        Some(quot)
    }

    /// Value at `t = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Invariance under `t ↦ t⁻¹`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(&e, c)| self.coeffs.get(&-e) == Some(c))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                e => format!("t^{e}"),
            };
            match (mag.is_one(), mono.is_empty()) {
                (true, false) => write!(f, "{mono}")?,
                (_, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}{mono}")?,
            }
        }
        Ok(())
    }
}

/// Multiplicities of the two logarithmic transforms on the nucleus `N(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NucleusParams {
    p: i64,
    q: i64,
}

impl NucleusParams {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q < 1 || p.gcd(&q) != 1 {
            return Err(Error::NonCoprimeParameters { p, q });
        }
        Ok(NucleusParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Exponent of the top term, `2pq - p - q`.
    pub fn top_exponent(&self) -> i64 {
        2 * self.p * self.q - self.p - self.q
    }
}

/// `s(k) = t^k - t^{-k}`.
fn s(k: i64) -> LaurentPolynomial {
    LaurentPolynomial::monomial(k, 1).sub(&LaurentPolynomial::monomial(-k, 1))
}

/// The relative Seiberg-Witten series `s(pq)² / (s(p) s(q))` of `N(2)_{p,q}`,
/// in the variable `t = exp(P)`.
pub fn relative_sw_series(params: NucleusParams) -> Result<LaurentPolynomial> {
    let NucleusParams { p, q } = params;
    let num = s(p * q).mul(&s(p * q));
    num.div_exact(&s(p).mul(&s(q)))
        .ok_or(Error::NonCoprimeParameters { p, q })
}

/// Known nonequivariant Bauer-Furuta invariants of `K3 # K3 # K3` in
/// `π_3(S⁰) = Z/24`: twelve for the trivial spin^c structure, zero otherwise
/// (Bauer's connected-sum computation).
pub const K3_CUBED_INVARIANTS: [(&str, i64); 2] = [("c0", 12), ("c1", 0)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObstructionVerdict {
    Contradiction,
    NoObstruction,
}

impl fmt::Display for ObstructionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObstructionVerdict::Contradiction => "Contradiction",
            ObstructionVerdict::NoObstruction => "NoObstruction",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub params: NucleusParams,
    pub x0: i64,
    pub x1: i64,
    /// Required value of the glued invariant for `c0`, in Z/24.
    pub c0_value: i64,
    /// Required value of the glued invariant for `c1`, in Z/24.
    pub c1_value: i64,
    /// Classes of the complement in `π_4(swf(-Y))` meeting every requirement.
    pub solutions: Vec<Vec<i64>>,
    pub verdict: ObstructionVerdict,
}

/// The groups needed to glue along `Y = -Σ(2, 3, 11)`.
#[derive(Clone, Debug)]
pub struct NucleusGluing {
    /// `π_{-1}^T(swf(Y)) = Z`.
    pub equivariant: HomotopyGroup,
    /// `π_{-1}(swf(Y))`.
    pub nonequivariant: HomotopyGroup,
    /// `π_4(swf(-Y))`.
    pub complement: HomotopyGroup,
    /// Forgetful image of the generator of the equivariant group.
    pub generator_image: GroupElement,
    /// Every class of the complement group with its pairing against
    /// `generator_image`. Gluing is bilinear, so these determine all gluings.
    pub pairings: Vec<(GroupElement, StemElement)>,
}

impl NucleusGluing {
    pub fn new() -> Result<Self> {
        let y = swf_brieskorn(BrieskornParams::new(11, Orientation::Negative)?)?;
        let minus_y = swf_brieskorn(BrieskornParams::new(11, Orientation::Positive)?)?;
        let equivariant = homotopy_group(&y, -1, true)?;
        if !equivariant.group().is_free() || equivariant.group().rank() != 1 {
            return Err(Error::AmbiguousExtension(format!(
                "expected Z, found {}",
                equivariant.group()
            )));
        }
        let nonequivariant = homotopy_group(&y, -1, false)?;
        let complement = homotopy_group(&minus_y, 4, false)?;
        let generator_image = forgetful_on_classes(
            &equivariant,
            &equivariant.group().generator(0),
            &nonequivariant,
        )?;
        let psi1 = RelativeInvariantClass::new(nonequivariant.clone(), generator_image.clone())?;
        let pairings = elements(&complement)
            .into_iter()
            .map(|psi2| {
                let value = duality_pairing(
                    &psi1,
                    &RelativeInvariantClass::new(complement.clone(), psi2.clone())?,
                )?;
                Ok((psi2, value))
            })
            .collect::<Result<_>>()?;
        Ok(NucleusGluing {
            equivariant,
            nonequivariant,
            complement,
            generator_image,
            pairings,
        })
    }

    /// The glued invariant for `x` times the generator on the nucleus side,
    /// against the `i`-th complement class.
    pub fn glue_multiple(&self, x: i64, i: usize) -> i64 {
        self.pairings[i].1.scale(x).coeff()
    }
}

/// Every element of a finite homotopy group.
fn elements(g: &HomotopyGroup) -> Vec<GroupElement> {
    let orders: Vec<i64> = g
        .group()
        .orders()
        .iter()
        .map(|o| o.to_i64().unwrap_or(0))
        .collect();
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for &o in &orders {
        out = out
            .into_iter()
            .flat_map(|v| (0..o).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out.iter()
        .map(|c| g.element(c).expect("coordinates in range"))
        .collect()
}

pub fn exotic_nuclei_check(params: NucleusParams) -> Result<ObstructionReport> {
    exotic_nuclei_check_with(&NucleusGluing::new()?, params)
}

/// Runs the obstruction with precomputed gluing groups.
pub fn exotic_nuclei_check_with(
    ctx: &NucleusGluing,
    params: NucleusParams,
) -> Result<ObstructionReport> {
    let series = relative_sw_series(params)?;
    let small = |c: BigInt| {
        c.to_i64()
            .ok_or_else(|| Error::InvalidGroupElement(format!("coefficient {c} too large")))
    };
    let x0 = small(series.coeff(0))?;
    let x1 = small(series.coeff(params.top_exponent()))?;
    let (c0_value, c1_value) = (K3_CUBED_INVARIANTS[0].1, K3_CUBED_INVARIANTS[1].1);
    // when 2pq - p - q = 0 the two spin^c structures coincide
    let distinct = params.top_exponent() != 0;
    let mut solutions = Vec::new();
    for (i, (psi2, _)) in ctx.pairings.iter().enumerate() {
        let ok0 = ctx.glue_multiple(x0, i) == c0_value;
        let ok1 = !distinct || ctx.glue_multiple(x1, i) == c1_value;
        if ok0 && ok1 {
            solutions.push(
                psi2.coords()
                    .iter()
                    .map(|c| c.to_i64().unwrap_or(0))
                    .collect(),
            );
        }
    }
    let verdict = if solutions.is_empty() {
        ObstructionVerdict::Contradiction
    } else {
        ObstructionVerdict::NoObstruction
    };
    Ok(ObstructionReport {
        params,
        x0,
        x1,
        c0_value,
        c1_value,
        solutions,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PositiveVerdict {
    NoBasicClasses,
    /// The hypotheses (`b₂⁺ > 1`, positive square) do not hold.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveAdjunction {
    pub verdict: PositiveVerdict,
    /// The rules the verdict rests on, in order.
    pub chain: Vec<String>,
}

/// A sphere of positive square `N` in a 4-manifold with `b₂⁺ > 1`.
pub fn adjunction_positive_check(
    b_plus_greater_than_one: bool,
    sphere_square: i64,
) -> PositiveAdjunction {
    if !b_plus_greater_than_one || sphere_square <= 0 {
        return PositiveAdjunction {
            verdict: PositiveVerdict::NotApplicable,
            chain: Vec::new(),
        };
    }
    let mut chain = vec![format!(
        "the neighbourhood D({sphere_square}) has b2+ = 1 and boundary -L({sphere_square}, 1), whose spectra are spheres S^{{-n C}}"
    )];
    let mut all_torsion = true;
    for k in 0..sphere_square {
        let n = n_invariant_lens(LensParams::new(sphere_square, k).expect("0 <= k < N"));
        all_torsion &= trivial_mapping_group_is_torsion(n);
    }
    chain.push("the relative invariant lies in pi^1_T(S^{dC}), torsion for every d".into());
    chain.push("gluing: the invariant of the closed manifold is torsion, so SW = 0".into());
    let verdict = if all_torsion {
        PositiveVerdict::NoBasicClasses
    } else {
        PositiveVerdict::NotApplicable
    };
    PositiveAdjunction { verdict, chain }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NegativeVerdict {
    Allowed,
    Excluded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NegativeAdjunction {
    pub j: i64,
    pub k: i64,
    /// Complex index of the disc-bundle invariant, `((N-2k)² - (N-2j)²) / 8N`.
    pub index: Rational,
    pub verdict: NegativeVerdict,
}

/// A basic class `c` of a simple-type manifold with a sphere of square `-N`:
/// `c([Σ]) = -N + 2j`, the boundary spin^c structure is `c_k` with
/// `k ≡ j mod N`, `0 <= k < N`, and the class survives only when the index
/// `i` vanishes.
pub fn adjunction_negative_check(n: i64, pairing: i64) -> Result<NegativeAdjunction> {
    if n < 1 || (pairing - n).rem_euclid(2) != 0 {
        return Err(Error::ParityViolation { n, pairing });
    }
    let j = (pairing + n) / 2;
    let k = j.rem_euclid(n);
    let index = Rational::new((n - 2 * k).pow(2) - (n - 2 * j).pow(2), 8 * n);
    // the invariant is the inclusion class exactly when no complex dimension is gained
    let verdict = if index.is_integer()
        && d2_admissible(0, 0, index.to_integer()) == D2Verdict::IdentityClass
    {
        NegativeVerdict::Allowed
    } else {
        NegativeVerdict::Excluded
    };
    Ok(NegativeAdjunction {
        j,
        k,
        index,
        verdict,
    })
}
