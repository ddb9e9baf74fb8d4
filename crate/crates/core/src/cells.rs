//! Stable cells for a semifree circle action and the morphism calculus between them.
//!
//! A trivial cell is a representation sphere `S^{mR + nC}` (n may be rational
//! because the reducible of a rational homology sphere sits at a rational
//! complex degree). A free cell is `Σ^m(T₊)`; nonequivariantly it splits as
//! `S^m ∨ S^{m+1}` once a basepoint on the circle is chosen.
//!
//! Equivariant morphism groups are reduced to stable stems:
//!
//! * `[Σ^a T₊, Σ^b T₊] = π_{a-b}` and `[Σ^a T₊, S^b] = π_{a-b}` (free-orbit adjunction);
//! * `[S^a, Σ^b T₊] = [D(Σ^b T₊), D(S^a)] = [Σ^{-b-1} T₊, S^{-a}] = π_{a-b-1}`,
//!   using `D(Σ^m T₊) = Σ^{-m-1} T₊`. For `a = -1, b = -2` this is `π_0 = Z`,
//!   the group housing the flow-line counts of the `Σ(2,3,11)` triangle;
//! * trivial to trivial with equal complex parts: the stem of the real difference.
//!
//! Trivial-to-trivial groups with different complex parts are not modelled.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::stems::{stable_stem, stem_order, StemElement};
use crate::zlinalg::{quotient, FGAbelianGroup, IntegerMatrix};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Trivial { real: i64, complex: Rational },
    Free { degree: i64 },
}

impl Cell {
    pub fn sphere(real: i64) -> Cell {
        Cell::Trivial {
            real,
            complex: Rational::zero(),
        }
    }

    pub fn trivial(real: i64, complex: Rational) -> Cell {
        Cell::Trivial { real, complex }
    }

    pub fn free(degree: i64) -> Cell {
        Cell::Free { degree }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Cell::Free { .. })
    }

    /// Nonequivariant dimension of a trivial cell, or bottom degree of a free one.
    pub fn total_dim(&self) -> Result<i64> {
        match *self {
            Cell::Free { degree } => Ok(degree),
            Cell::Trivial { real, complex } => {
                let twice = complex * 2;
                if !twice.is_integer() {
                    return Err(Error::NonIntegralDimension(format!(
                        "{self} has dimension {real} + {twice}"
                    )));
                }
                Ok(real + twice.to_integer())
            }
        }
    }

    /// Suspension by `m` real and `q` complex dimensions.
    pub fn suspend(&self, m: i64, q: Rational) -> Result<Cell> {
        match *self {
            Cell::Trivial { real, complex } => Ok(Cell::Trivial {
                real: real + m,
                complex: complex + q,
            }),
            Cell::Free { degree } => {
                let shift = q * 2;
                if !shift.is_integer() {
                    return Err(Error::NonIntegralDimension(format!(
                        "free cell {self} suspended by {q} complex dimensions"
                    )));
                }
                Ok(Cell::Free {
                    degree: degree + m + shift.to_integer(),
                })
            }
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Cell::Free { degree: 0 } => write!(f, "T+"),
            Cell::Free { degree } => write!(f, "T+[{degree}]"),
            Cell::Trivial { real, complex } if complex.is_zero() => write!(f, "S^{real}"),
            Cell::Trivial { real: 0, complex } => write!(f, "S^{{{}}}", complex_part(complex)),
            Cell::Trivial { real, complex } => {
                if complex < Rational::zero() {
                    write!(f, "S^{{{} - {}}}", real, complex_part(-complex))
                } else {
                    write!(f, "S^{{{} + {}}}", real, complex_part(complex))
                }
            }
        }
    }
}

/// `C`, `-C`, `2C`, `-1/8C`, ...
fn complex_part(q: Rational) -> String {
    match fmt_rational(q).as_str() {
        "1" => "C".to_string(),
        "-1" => "-C".to_string(),
        s => format!("{s}C"),
    }
}

pub(crate) fn fmt_rational(q: Rational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Spanier-Whitehead dual. For free cells this is the Wirthmüller shift.
pub fn dual_cell(c: &Cell) -> Cell {
    match *c {
        Cell::Trivial { real, complex } => Cell::Trivial {
            real: -real,
            complex: -complex,
        },
        Cell::Free { degree } => Cell::Free {
            degree: -degree - 1,
        },
    }
}

/// Nonequivariant sphere degrees of a cell, bottom first for free cells.
pub fn forget_cell(c: &Cell) -> Result<Vec<i64>> {
    match *c {
        Cell::Free { degree } => Ok(vec![degree, degree + 1]),
        Cell::Trivial { .. } => Ok(vec![c.total_dim()?]),
    }
}

/// Stem `k` such that the equivariant group `[src, dst]` is `π_k(S⁰)`.
pub fn morphism_stem(src: &Cell, dst: &Cell) -> Result<i64> {
    match (src, dst) {
        (Cell::Free { degree: a }, Cell::Free { degree: b }) => Ok(a - b),
        (Cell::Free { degree: a }, t @ Cell::Trivial { .. }) => Ok(a - t.total_dim()?),
        (t @ Cell::Trivial { .. }, Cell::Free { degree: b }) => Ok(t.total_dim()? - b - 1),
        (
            Cell::Trivial {
                real: a,
                complex: p,
            },
            Cell::Trivial {
                real: b,
                complex: q,
            },
        ) => {
            if p != q {
                return Err(Error::UnsupportedMorphismGroup(format!(
                    "equivariant maps {src} -> {dst} between spheres with different complex parts"
                )));
            }
            Ok(a - b)
        }
    }
}

/// Group of stable homotopy classes `src -> dst`, equivariant or not.
pub fn morphism_group(src: &Cell, dst: &Cell, equivariant: bool) -> Result<FGAbelianGroup> {
    if equivariant {
        return stable_stem(morphism_stem(src, dst)?);
    }
    let mut orders = Vec::new();
    for s in forget_cell(src)? {
        for t in forget_cell(dst)? {
            orders.push(num_bigint::BigInt::from(stem_order(s - t)?));
        }
    }
    Ok(quotient(&orders, &IntegerMatrix::zeros(orders.len(), 0)).group)
}

/// Splits an equivariant class `src -> dst` into components between the
/// nonequivariant summands, as `(source part, target part, value)`.
///
/// The splitting of `T₊` is fixed so that a class out of a trivial sphere
/// lands on the top summand of a free cell, a class into a trivial sphere
/// comes from the bottom summand, and a free-to-free class acts diagonally.
pub fn forget_class(
    src: &Cell,
    dst: &Cell,
    value: StemElement,
) -> Result<Vec<(usize, usize, StemElement)>> {
    let out = match (src, dst) {
        (Cell::Trivial { .. }, Cell::Trivial { .. }) => vec![(0, 0, value)],
        (Cell::Trivial { .. }, Cell::Free { .. }) => vec![(0, 1, value)],
        (Cell::Free { .. }, Cell::Trivial { .. }) => vec![(0, 0, value)],
        (Cell::Free { .. }, Cell::Free { .. }) => vec![(0, 0, value), (1, 1, value)],
    };
    // validate that the nonequivariant stems agree with the equivariant one
    let s = forget_cell(src)?;
    let t = forget_cell(dst)?;
    for &(i, j, v) in &out {
        if s[i] - t[j] != v.stem() {
            return Err(Error::DegreeMismatch(format!(
                "class of stem {} between {src} and {dst}",
                v.stem()
            )));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D2Verdict {
    NoMap,
    UniqueInclusionClass,
    IdentityClass,
}

/// Equivariant maps `(R^m ⊕ C^{n+d})⁺ → (R^m ⊕ C^n)⁺` of fixed-point degree one
/// exist only for `d <= 0`, and are then homotopic to the inclusion.
pub fn d2_admissible(m: i64, n: i64, d: i64) -> D2Verdict {
    debug_assert!(m >= 0 && n >= 0);
    match d {
        d if d > 0 => D2Verdict::NoMap,
        0 => D2Verdict::IdentityClass,
        _ => D2Verdict::UniqueInclusionClass,
    }
}

/// The groups `π¹_T(S^{dC})` are torsion for every `d`.
pub fn trivial_mapping_group_is_torsion(_d: Rational) -> bool {
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn equivariant_groups() {
        let g = morphism_group(&Cell::free(-2), &Cell::free(-1), true).unwrap();
        assert!(g.is_trivial());
        let g = morphism_group(&Cell::sphere(-1), &Cell::free(-2), true).unwrap();
        assert!(g.is_isomorphic(&FGAbelianGroup::free(1)));
        let g = morphism_group(&Cell::free(0), &Cell::sphere(2), true).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn unequal_complex_parts_unsupported() {
        let a = Cell::trivial(0, q(1, 1));
        let b = Cell::sphere(0);
        assert!(matches!(
            morphism_group(&a, &b, true),
            Err(Error::UnsupportedMorphismGroup(_))
        ));
        // nonequivariantly it is just π_2
        assert_eq!(morphism_group(&a, &b, false).unwrap().to_string(), "Z/2");
    }

    #[test]
    fn duals() {
        assert_eq!(dual_cell(&Cell::free(-2)), Cell::free(1));
        assert_eq!(dual_cell(&Cell::sphere(0)), Cell::sphere(0));
        for c in [Cell::free(3), Cell::trivial(2, q(-1, 8)), Cell::sphere(-4)] {
            assert_eq!(dual_cell(&dual_cell(&c)), c);
        }
    }

    #[test]
    fn forgetting() {
        assert_eq!(forget_cell(&Cell::free(-2)).unwrap(), vec![-2, -1]);
        assert_eq!(forget_cell(&Cell::trivial(1, q(1, 1))).unwrap(), vec![3]);
        assert!(matches!(
            forget_cell(&Cell::trivial(0, q(1, 8))),
            Err(Error::NonIntegralDimension(_))
        ));
    }

    #[test]
    fn d2_admissibility() {
        assert_eq!(d2_admissible(1, 2, 1), D2Verdict::NoMap);
        assert_eq!(d2_admissible(1, 2, 0), D2Verdict::IdentityClass);
        assert_eq!(d2_admissible(1, 2, -2), D2Verdict::UniqueInclusionClass);
    }

    #[test]
    fn torsion_rule() {
        for d in [q(0, 1), q(3, 1), q(-1, 8)] {
            assert!(trivial_mapping_group_is_torsion(d));
        }
    }

    #[test]
    fn free_source_groups_are_stems() {
        for a in -5..=5 {
            for b in -5..=5 {
                for dst in [Cell::free(b), Cell::sphere(b)] {
                    let got = morphism_group(&Cell::free(a), &dst, true);
                    match stable_stem(a - b) {
                        Ok(g) => assert!(got.unwrap().is_isomorphic(&g)),
                        Err(e) => assert_eq!(got.unwrap_err(), e),
                    }
                }
            }
        }
    }

    #[test]
    fn forget_of_dual_is_negated() {
        for c in [
            Cell::free(-2),
            Cell::free(3),
            Cell::sphere(4),
            Cell::trivial(1, q(1, 2)),
        ] {
            let mut d: Vec<i64> = forget_cell(&c).unwrap().iter().map(|x| -x).collect();
            d.reverse();
            // the Wirthmüller shift -m-1 is exactly what makes the split degrees negate
            assert_eq!(forget_cell(&dual_cell(&c)).unwrap(), d);
        }
    }

    #[test]
    fn nonequivariant_group_of_free_cell() {
        // [S^{-1}, Σ^{-2} T+] nonequivariantly: π_1 ⊕ π_0
        let g = morphism_group(&Cell::sphere(-1), &Cell::free(-2), false).unwrap();
        assert_eq!(g.to_string(), "Z/2 + Z");
    }

    #[test]
    fn display() {
        assert_eq!(Cell::sphere(-2).to_string(), "S^-2");
        assert_eq!(Cell::trivial(0, q(-1, 8)).to_string(), "S^{-1/8C}");
        assert_eq!(Cell::trivial(1, q(1, 1)).to_string(), "S^{1 + C}");
        assert_eq!(Cell::free(-2).to_string(), "T+[-2]");
        assert_eq!(Cell::free(0).to_string(), "T+");
    }
}
